//! Finite simplicial graphs with named vertices.
//!
//! Vertices are dense indices `0..n` into the graph's vertex list; names are
//! kept alongside so that derived graphs (induced subgraphs, complements,
//! covers) stay cross-checkable by name.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::{Error, Result};

/// Index of a vertex in its graph's vertex list.
pub type Vertex = usize;

/// A subset of a graph's vertices.
pub type VertexSet = BTreeSet<Vertex>;

/// An undirected, loop-free graph without multi-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    // sorted, symmetric
    adj: Vec<Vec<Vertex>>,
    index: BTreeMap<String, Vertex>,
}

/// The standard families accepted by [`Graph::standard`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
}

impl Graph {
    /// Builds a graph from vertex names and edges given by endpoint names.
    pub fn new<V, E, A, B>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let index = build_index(&names)?;
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index
                .get(a)
                .ok_or_else(|| Error::UnknownEndpoint(a.to_string()))?;
            let v = *index
                .get(b)
                .ok_or_else(|| Error::UnknownEndpoint(b.to_string()))?;
            pairs.push((u, v));
        }
        Self::assemble(names, index, &pairs)
    }

    /// Builds a graph from vertex names and index pairs.
    pub fn from_index_edges(names: Vec<String>, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let index = build_index(&names)?;
        Self::assemble(names, index, edges)
    }

    fn assemble(
        names: Vec<String>,
        index: BTreeMap<String, Vertex>,
        edges: &[(Vertex, Vertex)],
    ) -> Result<Self> {
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownEndpoint(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(Error::LoopEdge(names[u].clone()));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { names, adj, index })
    }

    /// Graph with the given vertices and no edges.
    pub fn edgeless<V>(vertices: V) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
    {
        Self::new(vertices, core::iter::empty::<(&str, &str)>())
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> Range<Vertex> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.index.get(name).copied()
    }

    /// Looks a vertex up by name, failing with [`Error::UnknownVertex`].
    pub fn vertex_checked(&self, name: &str) -> Result<Vertex> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub(crate) fn check(&self, v: Vertex) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    /// Neighbors of `v` in increasing index order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// The link `Lk(v)`: the set of neighbors of `v`.
    pub fn link(&self, v: Vertex) -> Result<VertexSet> {
        self.check(v)?;
        Ok(self.adj[v].iter().copied().collect())
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::assemble(self.names.clone(), self.index.clone(), &edges)
            .expect("complement of a simplicial graph is simplicial")
    }

    /// Induced subgraph on `keep`, together with the parent index of every
    /// vertex of the result. Vertex order is inherited.
    pub fn induced_with_parents(&self, keep: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        for &v in keep {
            self.check(v)?;
        }
        let parents: Vec<Vertex> = keep.iter().copied().collect();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &p) in parents.iter().enumerate() {
            local[p] = i;
        }
        let mut edges = Vec::new();
        for (i, &p) in parents.iter().enumerate() {
            for &q in &self.adj[p] {
                let j = local[q];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let names = parents.iter().map(|&p| self.names[p].clone()).collect();
        let g = Graph::from_index_edges(names, &edges)?;
        Ok((g, parents))
    }

    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph> {
        self.induced_with_parents(keep).map(|(g, _)| g)
    }

    /// `Γ \ A`: the induced subgraph on the complement of `remove`.
    pub fn remove(&self, remove: &VertexSet) -> Result<Graph> {
        self.remove_with_parents(remove).map(|(g, _)| g)
    }

    pub fn remove_with_parents(&self, remove: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        for &v in remove {
            self.check(v)?;
        }
        let keep = self.vertices().filter(|v| !remove.contains(v)).collect();
        self.induced_with_parents(&keep)
    }

    /// Whether `other` is an induced subgraph of `self`, matching vertices by
    /// name. Returns the parent index of each vertex of `other`.
    pub fn embeds_induced(&self, other: &Graph) -> Option<Vec<Vertex>> {
        let parents: Vec<Vertex> = other
            .names
            .iter()
            .map(|n| self.vertex(n))
            .collect::<Option<_>>()?;
        for i in other.vertices() {
            for j in i + 1..other.order() {
                if other.adjacent(i, j) != self.adjacent(parents[i], parents[j]) {
                    return None;
                }
            }
        }
        Some(parents)
    }

    /// Connected components, each listed in increasing vertex order; the
    /// components themselves are ordered by their least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Acyclic: every component with `k` vertices has exactly `k - 1` edges.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.order()
    }

    pub fn is_tree(&self) -> bool {
        self.order() > 0 && self.is_connected() && self.is_forest()
    }

    /// Breadth-first spanning tree of the component of `root`, as parent
    /// pointers (`None` for the root and for vertices outside the component).
    /// Neighbors are visited in increasing index order.
    pub fn bfs_parents(&self, root: Vertex) -> Vec<Option<Vertex>> {
        let mut parent = vec![None; self.order()];
        let mut seen = vec![false; self.order()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    /// Breadth-first visiting order of the component of `root`.
    pub fn bfs_order(&self, root: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.order()];
        seen[root] = true;
        let mut order = vec![root];
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
        order
    }

    pub fn standard(kind: StandardKind) -> Result<Self> {
        match kind {
            StandardKind::Cycle(m) => Self::cycle(m),
            StandardKind::Path(n) => Self::path(n),
            StandardKind::Complete(n) => Self::complete(n),
            StandardKind::CompleteBipartite(a, b) => Self::complete_bipartite(a, b),
        }
    }

    /// Cycle `C_m` on `v0..v{m-1}`.
    pub fn cycle(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::BadParameter(format!("cycle needs m >= 3, got {m}")));
        }
        let edges: Vec<_> = (0..m).map(|i| (i, (i + 1) % m)).collect();
        Self::from_index_edges(indexed_names("v", m), &edges)
    }

    /// Path `P_n` on `v0..v{n-1}`.
    pub fn path(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadParameter("path needs n >= 1".into()));
        }
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_index_edges(indexed_names("v", n), &edges)
    }

    /// Complete graph `K_n` on `v0..v{n-1}`.
    pub fn complete(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadParameter("complete graph needs n >= 1".into()));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_index_edges(indexed_names("v", n), &edges)
    }

    /// Complete bipartite `K_{a,b}` on `v0..v{a+b-1}`.
    ///
    /// The `b`-side is `v1..vb`; the `a`-side is `v0` together with
    /// `v{b+1}..v{a+b-1}`. For `K_{2,3}` this is the labelling with sides
    /// `{v0, v4}` and `{v1, v2, v3}`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        if a < 1 || b < 1 {
            return Err(Error::BadParameter(format!(
                "complete bipartite needs a, b >= 1, got ({a}, {b})"
            )));
        }
        let n = a + b;
        let side_b = 1..=b;
        let side_a = core::iter::once(0).chain(b + 1..n);
        let mut edges = Vec::new();
        for x in side_a {
            for y in side_b.clone() {
                edges.push((x.min(y), x.max(y)));
            }
        }
        Self::from_index_edges(indexed_names("v", n), &edges)
    }

    /// The graph `Γ_m` of the exponential lower bound: vertices `v0`, then
    /// `u_i, v_i` for `1 <= i <= k`, plus `v{k+1}` when `m = 2k + 2`; every pair
    /// of vertices with adjacent indices is joined.
    pub fn lowerbound(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::BadParameter(format!(
                "lower-bound graph needs m >= 3, got {m}"
            )));
        }
        let k = (m - 1) / 2;
        let even = m.is_multiple_of(2);
        let mut names = vec!["v0".to_string()];
        for i in 1..=k {
            names.push(format!("u{i}"));
            names.push(format!("v{i}"));
        }
        if even {
            names.push(format!("v{}", k + 1));
        }
        let mut edges: Vec<(String, String)> =
            vec![("v0".into(), "u1".into()), ("v0".into(), "v1".into())];
        for i in 1..k {
            let j = i + 1;
            edges.push((format!("v{i}"), format!("v{j}")));
            edges.push((format!("u{i}"), format!("u{j}")));
            edges.push((format!("v{i}"), format!("u{j}")));
            edges.push((format!("u{i}"), format!("v{j}")));
        }
        if even {
            edges.push((format!("v{k}"), format!("v{}", k + 1)));
            edges.push((format!("u{k}"), format!("v{}", k + 1)));
        }
        Self::new(names, edges)
    }
}

fn build_index(names: &[String]) -> Result<BTreeMap<String, Vertex>> {
    let mut index = BTreeMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateVertex(n.clone()));
        }
    }
    Ok(index)
}

pub(crate) fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A total order `≺` on the vertices of a graph; earlier means smaller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalOrder {
    seq: Vec<Vertex>,
    rank: Vec<usize>,
}

impl TotalOrder {
    /// Vertex-list order `0 ≺ 1 ≺ … ≺ n-1`.
    pub fn natural(n: usize) -> Self {
        TotalOrder {
            seq: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    pub fn from_sequence(g: &Graph, seq: Vec<Vertex>) -> Result<Self> {
        let n = g.order();
        if seq.len() != n {
            return Err(Error::BadOrder(format!(
                "expected {n} vertices, got {}",
                seq.len()
            )));
        }
        let mut rank = vec![usize::MAX; n];
        for (r, &v) in seq.iter().enumerate() {
            if v >= n {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
            if rank[v] != usize::MAX {
                return Err(Error::BadOrder(format!("`{}` listed twice", g.name(v))));
            }
            rank[v] = r;
        }
        Ok(TotalOrder { seq, rank })
    }

    pub fn from_names<S: AsRef<str>>(g: &Graph, names: &[S]) -> Result<Self> {
        let seq = names
            .iter()
            .map(|s| g.vertex_checked(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_sequence(g, seq)
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn less(&self, a: Vertex, b: Vertex) -> bool {
        self.rank[a] < self.rank[b]
    }

    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v]
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.seq
    }

    /// The order inherited by an induced subgraph whose vertex `i` is
    /// `parents[i]` in the ambient graph.
    pub fn inherit(&self, parents: &[Vertex]) -> TotalOrder {
        let mut seq: Vec<Vertex> = (0..parents.len()).collect();
        seq.sort_by_key(|&i| self.rank[parents[i]]);
        let mut rank = vec![0; parents.len()];
        for (r, &v) in seq.iter().enumerate() {
            rank[v] = r;
        }
        TotalOrder { seq, rank }
    }

    /// Sorts `items` increasingly by this order.
    pub fn sort(&self, items: &mut [Vertex]) {
        items.sort_by_key(|&v| self.rank[v]);
    }
}
