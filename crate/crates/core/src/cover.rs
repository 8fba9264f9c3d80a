//! The universal cover `p: Γ̃ → Γ` of a connected graph, represented lazily
//! by non-backtracking walks from a base vertex, together with deck
//! transformations and the deck enlargement of an embedded forest.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};
use crate::morphism::GraphMap;
use crate::{Error, Result};

/// A vertex of `Γ̃`: a non-backtracking walk `base, steps…` in `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    base: Vertex,
    steps: Vec<Vertex>,
}

impl Walk {
    /// The empty walk at `base`.
    pub fn root(base: Vertex) -> Self {
        Walk {
            base,
            steps: Vec::new(),
        }
    }

    pub fn new(g: &Graph, base: Vertex, steps: Vec<Vertex>) -> Result<Self> {
        g.check(base)?;
        let mut prev = base;
        let mut before: Option<Vertex> = None;
        for &s in &steps {
            g.check(s)?;
            if !g.adjacent(prev, s) {
                return Err(Error::InvalidWalk(format!(
                    "`{}` and `{}` are not adjacent",
                    g.name(prev),
                    g.name(s)
                )));
            }
            if before == Some(s) {
                return Err(Error::InvalidWalk(format!("backtracks at `{}`", g.name(s))));
            }
            before = Some(prev);
            prev = s;
        }
        Ok(Walk { base, steps })
    }

    pub fn from_names<S: AsRef<str>>(g: &Graph, base: &str, steps: &[S]) -> Result<Self> {
        let b = g.vertex_checked(base)?;
        let s = steps
            .iter()
            .map(|x| g.vertex_checked(x.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, b, s)
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn steps(&self) -> &[Vertex] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `p(self)`: the last vertex visited.
    pub fn projection(&self) -> Vertex {
        self.steps.last().copied().unwrap_or(self.base)
    }

    fn previous(&self) -> Option<Vertex> {
        match self.steps.len() {
            0 => None,
            1 => Some(self.base),
            n => Some(self.steps[n - 2]),
        }
    }

    /// The neighbor of `self` in `Γ̃` lying over `x` (which must be adjacent
    /// to the projection).
    pub fn extend(&self, x: Vertex) -> Walk {
        let mut w = self.clone();
        if w.previous() == Some(x) {
            w.steps.pop();
        } else {
            w.steps.push(x);
        }
        w
    }

    /// Checked version of [`Walk::extend`].
    pub fn step(&self, g: &Graph, x: Vertex) -> Result<Walk> {
        g.check(x)?;
        if !g.adjacent(self.projection(), x) {
            return Err(Error::InvalidWalk(format!(
                "`{}` is not adjacent to `{}`",
                g.name(x),
                g.name(self.projection())
            )));
        }
        Ok(self.extend(x))
    }

    /// One step closer to the base, if not the base itself.
    pub fn parent(&self) -> Option<Walk> {
        if self.steps.is_empty() {
            return None;
        }
        let mut w = self.clone();
        w.steps.pop();
        Some(w)
    }

    /// Adjacency in `Γ̃`.
    pub fn adjacent(&self, other: &Walk) -> bool {
        self.base == other.base
            && (self.parent().as_ref() == Some(other) || other.parent().as_ref() == Some(self))
    }

    fn sequence(&self) -> Vec<Vertex> {
        let mut s = Vec::with_capacity(self.steps.len() + 1);
        s.push(self.base);
        s.extend_from_slice(&self.steps);
        s
    }

    /// Name of the form `base/step/step…`.
    pub fn name(&self, g: &Graph) -> String {
        let mut s = String::from(g.name(self.base));
        for &x in &self.steps {
            s.push('/');
            s.push_str(g.name(x));
        }
        s
    }
}

// removes every immediate backtrack x, y, x -> x
fn free_reduce(seq: impl IntoIterator<Item = Vertex>) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::new();
    for y in seq {
        let n = out.len();
        if n >= 2 && out[n - 2] == y {
            out.pop();
        } else {
            out.push(y);
        }
    }
    out
}

/// A deck transformation of `Γ̃`, identified with a reduced closed walk at the
/// base vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Deck {
    lp: Walk,
}

impl Deck {
    pub fn identity(base: Vertex) -> Self {
        Deck {
            lp: Walk::root(base),
        }
    }

    pub fn from_loop(lp: Walk) -> Result<Self> {
        if lp.projection() != lp.base {
            return Err(Error::InvalidWalk("deck loop is not closed".into()));
        }
        Ok(Deck { lp })
    }

    pub fn loop_walk(&self) -> &Walk {
        &self.lp
    }

    pub fn is_identity(&self) -> bool {
        self.lp.is_empty()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Deck) -> Result<Deck> {
        if self.lp.base != other.lp.base {
            return Err(Error::BaseMismatch);
        }
        let seq = self
            .lp
            .sequence()
            .into_iter()
            .chain(other.lp.steps.iter().copied());
        Ok(Deck {
            lp: walk_from_sequence(free_reduce(seq)),
        })
    }

    pub fn inverse(&self) -> Deck {
        let mut seq = self.lp.sequence();
        seq.reverse();
        Deck {
            lp: walk_from_sequence(seq),
        }
    }
}

fn walk_from_sequence(seq: Vec<Vertex>) -> Walk {
    Walk {
        base: seq[0],
        steps: seq[1..].to_vec(),
    }
}

/// The unique deck transformation taking `u` to `t`: the loop
/// `reduce(t · reverse(u))`.
pub fn deck_from_pair(u: &Walk, t: &Walk) -> Result<Deck> {
    if u.base != t.base {
        return Err(Error::BaseMismatch);
    }
    if u.projection() != t.projection() {
        return Err(Error::ProjectionMismatch);
    }
    let mut back = u.sequence();
    back.reverse();
    let seq = t.sequence().into_iter().chain(back.into_iter().skip(1));
    Ok(Deck {
        lp: walk_from_sequence(free_reduce(seq)),
    })
}

pub fn apply_deck(sigma: &Deck, w: &Walk) -> Result<Walk> {
    if sigma.lp.base != w.base {
        return Err(Error::BaseMismatch);
    }
    let seq = sigma
        .lp
        .sequence()
        .into_iter()
        .chain(w.steps.iter().copied());
    Ok(walk_from_sequence(free_reduce(seq)))
}

/// An immersion `f: T → Γ` of a forest realised as an induced subgraph of
/// `Γ̃`, one walk per vertex of `T`.
#[derive(Clone, Debug)]
pub struct CoverEmbedding {
    map: GraphMap,
    walks: Vec<Walk>,
}

impl CoverEmbedding {
    /// The induced subgraph of `Γ̃` on the given walks (duplicates dropped,
    /// first occurrence kept), with `φ = p`. Names are produced by `name`.
    ///
    /// Walks with different bases never touch; for a disconnected `Γ` this
    /// gives a disjoint union of subtrees of the covers of its components.
    pub fn from_walks(
        gamma: &Graph,
        walks: Vec<Walk>,
        mut name: impl FnMut(usize, &Walk) -> String,
    ) -> Result<Self> {
        let mut index: BTreeMap<Walk, Vertex> = BTreeMap::new();
        let mut uniq: Vec<Walk> = Vec::new();
        for w in walks {
            gamma.check(w.projection())?;
            if !index.contains_key(&w) {
                index.insert(w.clone(), uniq.len());
                uniq.push(w);
            }
        }
        let edges: Vec<(Vertex, Vertex)> = uniq
            .iter()
            .enumerate()
            .filter_map(|(i, w)| w.parent().and_then(|p| index.get(&p).map(|&j| (j, i))))
            .collect();
        let names = uniq.iter().enumerate().map(|(i, w)| name(i, w)).collect();
        let domain = Graph::from_index_edges(names, &edges)?;
        let assign = uniq.iter().map(Walk::projection).collect();
        let map = GraphMap::new(domain, gamma.clone(), assign)?;
        Ok(CoverEmbedding { map, walks: uniq })
    }

    pub fn map(&self) -> &GraphMap {
        &self.map
    }

    pub fn into_map(self) -> GraphMap {
        self.map
    }

    pub fn walks(&self) -> &[Walk] {
        &self.walks
    }

    pub fn walk(&self, v: Vertex) -> &Walk {
        &self.walks[v]
    }

    pub fn base(&self) -> Option<Vertex> {
        self.walks.first().map(Walk::base)
    }

    /// The domain vertex sitting at `w`, if any.
    pub fn vertex_at(&self, w: &Walk) -> Option<Vertex> {
        self.walks.iter().position(|x| x == w)
    }
}

/// Embeds a forest immersion into `Γ̃` by sending each root to its root walk
/// and extending along the unique tree paths.
pub fn embed_forest(f: &GraphMap, roots: &[Vertex], root_walks: &[Walk]) -> Result<CoverEmbedding> {
    let t = f.domain();
    let gamma = f.codomain();
    f.require_immersion()?;
    if !t.is_forest() {
        return Err(Error::NotForest);
    }
    if roots.len() != root_walks.len() {
        return Err(Error::BadParameter(
            "one root walk per root is required".into(),
        ));
    }
    let comps = t.components();
    let mut comp_of = vec![0; t.order()];
    for (c, vs) in comps.iter().enumerate() {
        for &v in vs {
            comp_of[v] = c;
        }
    }
    let mut rooted = vec![false; comps.len()];
    for &r in roots {
        t.check(r)?;
        if core::mem::replace(&mut rooted[comp_of[r]], true) {
            return Err(Error::BadParameter(format!(
                "two roots in the component of `{}`",
                t.name(r)
            )));
        }
    }
    if let Some(c) = rooted.iter().position(|r| !r) {
        return Err(Error::BadParameter(format!(
            "no root for the component of `{}`",
            t.name(comps[c][0])
        )));
    }
    let mut walks: Vec<Option<Walk>> = vec![None; t.order()];
    for (&r, w) in roots.iter().zip(root_walks) {
        Walk::new(gamma, w.base, w.steps.clone())?;
        if w.base != root_walks[0].base {
            return Err(Error::BaseMismatch);
        }
        if w.projection() != f.image(r) {
            return Err(Error::RootMismatch(t.name(r).into()));
        }
        let parents = t.bfs_parents(r);
        walks[r] = Some(w.clone());
        for v in t.bfs_order(r).into_iter().skip(1) {
            let p = parents[v].expect("reached vertex has a parent");
            let pw = walks[p].as_ref().expect("parent walk assigned first");
            walks[v] = Some(pw.extend(f.image(v)));
        }
    }
    let walks: Vec<Walk> = walks.into_iter().map(|w| w.expect("all rooted")).collect();
    let set: BTreeSet<&Walk> = walks.iter().collect();
    if set.len() != walks.len() {
        return Err(Error::EmbeddingCollision);
    }
    // the image must be induced: no Γ̃-edge between walks unless a T-edge
    for (v, w) in walks.iter().enumerate() {
        if let Some(p) = w.parent() {
            if let Some(u) = walks.iter().position(|x| *x == p) {
                if !t.adjacent(u, v) {
                    return Err(Error::EmbeddingCollision);
                }
            }
        }
    }
    Ok(CoverEmbedding {
        map: f.clone(),
        walks,
    })
}

/// Walks of a breadth-first spanning tree of `g` rooted at `base`, lifted
/// from the empty walk; entry `v` lies over `v`.
pub fn spanning_tree_lift(g: &Graph, base: Vertex) -> Result<Vec<Walk>> {
    g.check(base)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let parents = g.bfs_parents(base);
    let mut walks: Vec<Option<Walk>> = vec![None; g.order()];
    walks[base] = Some(Walk::root(base));
    for v in g.bfs_order(base).into_iter().skip(1) {
        let p = parents[v].expect("connected");
        walks[v] = Some(walks[p].as_ref().unwrap().extend(v));
    }
    Ok(walks.into_iter().map(Option::unwrap).collect())
}

/// Decks `σ` with `σ(Λ) ∩ F ≠ ∅`, sorted, identity first when present.
pub fn sigma_set(e: &CoverEmbedding, base_set: &[Walk]) -> Result<Vec<Deck>> {
    if base_set.is_empty() {
        return Err(Error::EmptyF);
    }
    let mut out = BTreeSet::new();
    for f in base_set {
        for u in &e.walks {
            if u.projection() == f.projection() {
                out.insert(deck_from_pair(u, f)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `Λ₁`: the induced subgraph of `Γ̃` on `⋃_{σ∈Σ} σ(V(Λ))`.
#[derive(Clone, Debug)]
pub struct Enlargement {
    pub sigma: Vec<Deck>,
    pub embedding: CoverEmbedding,
    /// For each vertex of `Λ₁`, the first `(σ index, Λ vertex)` producing it.
    pub origin: Vec<(usize, Vertex)>,
}

impl Enlargement {
    pub fn map(&self) -> &GraphMap {
        self.embedding.map()
    }
}

/// Builds `Λ₁` from the decks in `Σ`. Vertices are listed by `σ` (identity
/// first) and then by `Λ` order; translates by the identity keep their `Λ`
/// names, the others are named `name@s{k}` after the index `k` of `σ` in `Σ`.
pub fn enlarge(e: &CoverEmbedding, base_set: &[Walk]) -> Result<Enlargement> {
    let sigma = sigma_set(e, base_set)?;
    let lambda = e.map.domain();
    let mut walks = Vec::new();
    let mut origin = Vec::new();
    let mut seen = BTreeSet::new();
    for (k, s) in sigma.iter().enumerate() {
        for (v, w) in e.walks.iter().enumerate() {
            let t = apply_deck(s, w)?;
            if seen.insert(t.clone()) {
                walks.push(t);
                origin.push((k, v));
            }
        }
    }
    let embedding = CoverEmbedding::from_walks(e.map.codomain(), walks, |i, _| {
        let (k, v) = origin[i];
        if sigma[k].is_identity() {
            lambda.name(v).into()
        } else {
            format!("{}@s{k}", lambda.name(v))
        }
    })?;
    Ok(Enlargement {
        sigma,
        embedding,
        origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::cycle_to_path_map;
    use proptest::prelude::*;

    fn c3_walk(steps: &[&str]) -> Walk {
        let c3 = Graph::cycle(3).unwrap();
        Walk::from_names(&c3, "v0", steps).unwrap()
    }

    #[test]
    fn walk_validation() {
        let c3 = Graph::cycle(3).unwrap();
        assert!(Walk::from_names(&c3, "v0", &["v1", "v0"]).is_err());
        assert!(Walk::from_names(&c3, "v0", &["v0"]).is_err());
        let w = c3_walk(&["v1", "v2"]);
        assert_eq!(w.projection(), 2);
        assert_eq!(w.extend(1), c3_walk(&["v1"]));
        assert_eq!(w.extend(0), c3_walk(&["v1", "v2", "v0"]));
        assert_eq!(w.name(&c3), "v0/v1/v2");
        assert!(w.adjacent(&c3_walk(&["v1"])));
        assert!(!w.adjacent(&c3_walk(&["v2"])));
    }

    #[test]
    fn deck_examples() {
        let u = Walk::root(0);
        let t = c3_walk(&["v1", "v2", "v0"]);
        let s = deck_from_pair(&u, &t).unwrap();
        assert_eq!(s.loop_walk(), &t);
        assert_eq!(
            apply_deck(&s, &c3_walk(&["v1"])).unwrap(),
            c3_walk(&["v1", "v2", "v0", "v1"])
        );
        assert!(deck_from_pair(&t, &t).unwrap().is_identity());
        assert_eq!(
            deck_from_pair(&u, &c3_walk(&["v1"])),
            Err(Error::ProjectionMismatch)
        );
        assert_eq!(s.compose(&s.inverse()).unwrap(), Deck::identity(0));
    }

    #[test]
    fn spanning_tree_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let f = spanning_tree_lift(&c5, 0).unwrap();
        assert_eq!(f.len(), 5);
        assert!(f.iter().enumerate().all(|(v, w)| w.projection() == v));
        let one = Graph::path(1).unwrap();
        assert_eq!(spanning_tree_lift(&one, 0).unwrap(), vec![Walk::root(0)]);
        let g9 = Graph::lowerbound(9).unwrap();
        assert_eq!(spanning_tree_lift(&g9, 0).unwrap().len(), 9);
        let two = Graph::edgeless(["a", "b"]).unwrap();
        assert_eq!(spanning_tree_lift(&two, 0), Err(Error::Disconnected));
    }

    #[test]
    fn embed_path_in_line() {
        for m in 3..=8 {
            let n = 2 * m - 3;
            let f = cycle_to_path_map(n, m).unwrap();
            let e = embed_forest(&f, &[0], &[Walk::root(0)]).unwrap();
            let d = f.domain();
            // v0p sits at the root, walks to the right increase the index
            assert_eq!(e.walk(d.vertex("v0p").unwrap()), &Walk::root(0));
            let v1p = d.vertex("v1p").unwrap();
            assert_eq!(e.walk(v1p).steps(), &[1]);
            for (a, b) in d.edges() {
                assert!(e.walk(a).adjacent(e.walk(b)));
            }
            let s = sigma_set(&e, &[Walk::root(0)]).unwrap();
            assert_eq!(s, vec![Deck::identity(0)]);
            let big = enlarge(&e, &[Walk::root(0)]).unwrap();
            assert_eq!(big.map(), &f);
        }
        let f = cycle_to_path_map(8, 5).unwrap();
        let e = embed_forest(&f, &[0], &[Walk::root(0)]).unwrap();
        assert_eq!(sigma_set(&e, &[Walk::root(0)]).unwrap().len(), 1);
    }

    #[test]
    fn embed_errors() {
        let c4 = GraphMap::identity(&Graph::cycle(4).unwrap());
        assert_eq!(
            embed_forest(&c4, &[0], &[Walk::root(0)]).unwrap_err(),
            Error::NotForest
        );
        let f = cycle_to_path_map(5, 3).unwrap();
        assert!(matches!(
            embed_forest(&f, &[0], &[c3_walk(&["v1"])]),
            Err(Error::RootMismatch(_))
        ));
        let one = GraphMap::identity(&Graph::path(1).unwrap());
        let e = embed_forest(&one, &[0], &[Walk::root(0)]).unwrap();
        assert_eq!(e.walks(), &[Walk::root(0)]);
        let fold = GraphMap::new(
            Graph::path(3).unwrap(),
            Graph::path(2).unwrap(),
            vec![0, 1, 0],
        )
        .unwrap();
        assert_eq!(
            embed_forest(&fold, &[0], &[Walk::root(0)]).unwrap_err(),
            Error::NotImmersion
        );
    }

    #[test]
    fn enlargement_size_bound() {
        let g = Graph::cycle(3).unwrap();
        let f = cycle_to_path_map(4, 3).unwrap();
        let e = embed_forest(&f, &[0], &[Walk::root(0)]).unwrap();
        let fset = spanning_tree_lift(&g, 0).unwrap();
        let big = enlarge(&e, &fset).unwrap();
        let n = f.domain().order();
        assert!(big.sigma.len() <= n);
        assert!(big.map().domain().order() <= big.sigma.len() * n);
        assert!(big.map().domain().is_forest());
        assert!(big.map().is_immersion());
        for w in &fset {
            assert!(big.embedding.vertex_at(w).is_some());
        }
    }

    fn arb_walk() -> impl Strategy<Value = Walk> {
        // C_4 plus a chord: a graph with several independent cycles
        prop::collection::vec(0usize..3, 0..10).prop_map(|choices| {
            let g = test_graph();
            let mut w = Walk::root(0);
            for c in choices {
                let p = w.projection();
                let opts: Vec<Vertex> = g
                    .neighbors(p)
                    .iter()
                    .copied()
                    .filter(|&x| w.previous() != Some(x))
                    .collect();
                if opts.is_empty() {
                    break;
                }
                w = w.extend(opts[c % opts.len()]);
            }
            w
        })
    }

    // every vertex of the test graph is adjacent to `a`, so one step closes
    fn close(w: &Walk) -> Deck {
        let mut seq = w.sequence();
        if w.projection() != 0 {
            seq.push(0);
        }
        Deck::from_loop(walk_from_sequence(free_reduce(seq))).unwrap()
    }

    fn test_graph() -> Graph {
        Graph::new(
            ["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")],
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn decks_commute_with_projection(u in arb_walk(), t in arb_walk(), w in arb_walk()) {
            prop_assume!(u.projection() == t.projection());
            let s = deck_from_pair(&u, &t).unwrap();
            prop_assert_eq!(apply_deck(&s, &u).unwrap(), t);
            let sw = apply_deck(&s, &w).unwrap();
            prop_assert_eq!(sw.projection(), w.projection());
            let g = test_graph();
            prop_assert!(Walk::new(&g, sw.base(), sw.steps().to_vec()).is_ok());
        }

        #[test]
        fn decks_compose(a in arb_walk(), b in arb_walk(), w in arb_walk()) {
            let s1 = close(&a);
            let s2 = close(&b);
            let lhs = apply_deck(&s1, &apply_deck(&s2, &w).unwrap()).unwrap();
            let rhs = apply_deck(&s1.compose(&s2).unwrap(), &w).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn decks_preserve_adjacency(a in arb_walk(), w in arb_walk(), k in 0usize..3) {
            let g = test_graph();
            let x = g.neighbors(w.projection())[k % g.neighbors(w.projection()).len()];
            let w2 = w.extend(x);
            let s = close(&a);
            prop_assert!(apply_deck(&s, &w).unwrap().adjacent(&apply_deck(&s, &w2).unwrap()));
        }
    }
}
