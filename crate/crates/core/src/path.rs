//! Paths, induced and semi-induced paths, lifting along immersions, and the
//! path lifting checkers (PL, IPL, SIPL).
//!
//! A path is a sequence of pairwise distinct, consecutively adjacent vertices.
//! It is *induced* when no two non-consecutive vertices are adjacent, and
//! *semi-induced* with respect to `≺` when a chord `{v_i, v_j}` with `j >= i+2`
//! is only forbidden if `v_j ≺ v_{i+1}`.
//!
//! All three conditions are hereditary on prefixes, so maximal paths are
//! detected by checking one-vertex extensions, and a lift of a maximal path
//! restricts to lifts of all of its prefixes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, TotalOrder, Vertex};
use crate::morphism::GraphMap;
use crate::{Error, Result};

/// A path `(v_0, …, v_k)` in some graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("empty vertex sequence".into()));
        }
        let mut seen = vec![false; g.order()];
        for (i, &v) in vertices.iter().enumerate() {
            g.check(v)?;
            if seen[v] {
                return Err(Error::InvalidPath(format!("`{}` repeats", g.name(v))));
            }
            seen[v] = true;
            if i > 0 && !g.adjacent(vertices[i - 1], v) {
                return Err(Error::InvalidPath(format!(
                    "`{}` and `{}` are not adjacent",
                    g.name(vertices[i - 1]),
                    g.name(v)
                )));
            }
        }
        Ok(Path(vertices))
    }

    pub fn from_names<S: AsRef<str>>(g: &Graph, names: &[S]) -> Result<Self> {
        let vs = names
            .iter()
            .map(|s| g.vertex_checked(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, vs)
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(vertices: Vec<Vertex>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn start(&self) -> Vertex {
        self.0[0]
    }

    pub fn end(&self) -> Vertex {
        self.0[self.0.len() - 1]
    }

    pub fn is_induced(&self, g: &Graph) -> bool {
        let p = &self.0;
        (0..p.len()).all(|i| (i + 2..p.len()).all(|j| !g.adjacent(p[i], p[j])))
    }

    pub fn is_semi_induced(&self, g: &Graph, ord: &TotalOrder) -> bool {
        let p = &self.0;
        (0..p.len()).all(|i| {
            (i + 2..p.len()).all(|j| !(g.adjacent(p[i], p[j]) && ord.less(p[j], p[i + 1])))
        })
    }

    pub fn names<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.0.iter().map(|&v| g.name(v)).collect()
    }
}

/// Which family of paths to enumerate or lift.
#[derive(Clone, Copy, Debug)]
pub enum PathKind<'a> {
    /// All paths (the PL property).
    All,
    /// Induced paths (IPL).
    Induced,
    /// Semi-induced paths with respect to an order (SIPL).
    SemiInduced(&'a TotalOrder),
}

/// Depth-first walker over the paths of one kind starting at a vertex.
struct PathDfs<'a> {
    g: &'a Graph,
    kind: PathKind<'a>,
    nbrs: Vec<Vec<Vertex>>,
    on_path: Vec<bool>,
    blocked: Vec<u32>,
    path: Vec<Vertex>,
}

impl<'a> PathDfs<'a> {
    fn new(g: &'a Graph, kind: PathKind<'a>) -> Self {
        let nbrs = g
            .vertices()
            .map(|v| {
                let mut ns = g.neighbors(v).to_vec();
                if let PathKind::SemiInduced(ord) = kind {
                    ord.sort(&mut ns);
                }
                ns
            })
            .collect();
        PathDfs {
            g,
            kind,
            nbrs,
            on_path: vec![false; g.order()],
            blocked: vec![0; g.order()],
            path: Vec::new(),
        }
    }

    fn allowed(&self, x: Vertex) -> bool {
        !self.on_path[x] && self.blocked[x] == 0
    }

    // vertices that may not appear two or more steps after `a` once `b` follows it
    fn chord_block(&mut self, a: Vertex, b: Vertex, delta: i32) {
        let g = self.g;
        match self.kind {
            PathKind::All => {}
            PathKind::Induced => {
                for &u in g.neighbors(a) {
                    self.blocked[u] = (self.blocked[u] as i32 + delta) as u32;
                }
            }
            PathKind::SemiInduced(ord) => {
                for &u in g.neighbors(a) {
                    if ord.less(u, b) {
                        self.blocked[u] = (self.blocked[u] as i32 + delta) as u32;
                    }
                }
            }
        }
    }

    fn push(&mut self, x: Vertex) {
        if let Some(&last) = self.path.last() {
            self.chord_block(last, x, 1);
        }
        self.on_path[x] = true;
        self.path.push(x);
    }

    fn pop(&mut self) {
        let x = self.path.pop().expect("non-empty path");
        self.on_path[x] = false;
        if let Some(&last) = self.path.last() {
            self.chord_block(last, x, -1);
        }
    }

    fn extensions(&self) -> Vec<Vertex> {
        let last = *self.path.last().expect("non-empty path");
        self.nbrs[last]
            .iter()
            .copied()
            .filter(|&x| self.allowed(x))
            .collect()
    }

    /// Calls `visit(path, is_maximal)` for every path from `start` in
    /// depth-first preorder.
    fn run(&mut self, start: Vertex, visit: &mut dyn FnMut(&[Vertex], bool)) {
        self.push(start);
        self.recurse(visit);
        self.pop();
    }

    fn recurse(&mut self, visit: &mut dyn FnMut(&[Vertex], bool)) {
        let ext = self.extensions();
        visit(&self.path, ext.is_empty());
        for x in ext {
            self.push(x);
            self.recurse(visit);
            self.pop();
        }
    }
}

/// Every path of the given kind starting at `v`, maximal or not, in
/// depth-first preorder.
pub fn paths_from(g: &Graph, kind: PathKind<'_>, v: Vertex) -> Result<Vec<Path>> {
    g.check(v)?;
    let mut out = Vec::new();
    PathDfs::new(g, kind).run(v, &mut |p, _| out.push(Path(p.to_vec())));
    Ok(out)
}

/// Maximal paths of the given kind starting at `v`, in depth-first order
/// (neighbors by index, or by the supplied order for semi-induced paths).
pub fn maximal_paths_from(g: &Graph, kind: PathKind<'_>, v: Vertex) -> Result<Vec<Path>> {
    g.check(v)?;
    let mut out = Vec::new();
    PathDfs::new(g, kind).run(v, &mut |p, maximal| {
        if maximal {
            out.push(Path(p.to_vec()));
        }
    });
    Ok(out)
}

pub fn maximal_induced_paths_from(g: &Graph, v: Vertex) -> Result<Vec<Path>> {
    maximal_paths_from(g, PathKind::Induced, v)
}

pub fn maximal_semi_induced_paths_from(
    g: &Graph,
    ord: &TotalOrder,
    v: Vertex,
) -> Result<Vec<Path>> {
    maximal_paths_from(g, PathKind::SemiInduced(ord), v)
}

/// Outcome of lifting a codomain path along an immersion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lift {
    /// The unique lift.
    Lifted(Path),
    /// No lift exists; the longest liftable prefix is given.
    Blocked(Vec<Vertex>),
}

impl Lift {
    pub fn lifted(&self) -> Option<&Path> {
        match self {
            Lift::Lifted(p) => Some(p),
            Lift::Blocked(_) => None,
        }
    }
}

// the neighbor of `at` lying over `target`; unique for an immersion
fn step_over(f: &GraphMap, at: Vertex, target: Vertex) -> Option<Vertex> {
    f.domain()
        .neighbors(at)
        .iter()
        .copied()
        .find(|&x| f.image(x) == target)
}

pub(crate) fn lift_unchecked(f: &GraphMap, alpha: &[Vertex], start: Vertex) -> Lift {
    let mut lifted = Vec::with_capacity(alpha.len());
    lifted.push(start);
    for &next in &alpha[1..] {
        match step_over(f, *lifted.last().unwrap(), next) {
            Some(x) => lifted.push(x),
            None => return Lift::Blocked(lifted),
        }
    }
    Lift::Lifted(Path(lifted))
}

/// Lifts `alpha` (a path in the codomain) to the domain starting at `start`.
pub fn lift_path(f: &GraphMap, alpha: &Path, start: Vertex) -> Result<Lift> {
    f.require_immersion()?;
    f.domain().check(start)?;
    if f.image(start) != alpha.start() {
        return Err(Error::StartMismatch {
            start: f.domain().name(start).into(),
            expected: f.codomain().name(alpha.start()).into(),
        });
    }
    Ok(lift_unchecked(f, alpha.vertices(), start))
}

/// A path from `φ(start)` with no lift from `start`. `path` is minimal: every
/// proper prefix lifts, and `lifted` is the lift of `path` minus its last
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFailure {
    pub path: Path,
    pub lifted: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StartReport {
    pub start: Vertex,
    /// Maximal codomain paths that were lifted completely.
    pub maximal_lifted: usize,
    pub failure: Option<LiftFailure>,
}

/// Result of a PL / IPL / SIPL check over a base set `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub holds: bool,
    pub per_start: Vec<StartReport>,
}

impl LiftReport {
    pub fn failures(&self) -> impl Iterator<Item = (Vertex, &LiftFailure)> {
        self.per_start
            .iter()
            .filter_map(|r| r.failure.as_ref().map(|f| (r.start, f)))
    }
}

fn check_start(f: &GraphMap, kind: PathKind<'_>, start: Vertex) -> StartReport {
    struct Walker<'a, 'b> {
        dfs: PathDfs<'a>,
        f: &'b GraphMap,
        lifted: Vec<Vertex>,
        maximal_lifted: usize,
        failure: Option<LiftFailure>,
    }
    impl Walker<'_, '_> {
        fn recurse(&mut self) {
            let ext = self.dfs.extensions();
            if ext.is_empty() {
                self.maximal_lifted += 1;
                return;
            }
            let at = *self.lifted.last().unwrap();
            for x in ext {
                match step_over(self.f, at, x) {
                    Some(y) => {
                        self.dfs.push(x);
                        self.lifted.push(y);
                        self.recurse();
                        self.lifted.pop();
                        self.dfs.pop();
                    }
                    None => {
                        let mut p = self.dfs.path.clone();
                        p.push(x);
                        self.failure = Some(LiftFailure {
                            path: Path(p),
                            lifted: self.lifted.clone(),
                        });
                    }
                }
                if self.failure.is_some() {
                    return;
                }
            }
        }
    }
    let mut w = Walker {
        dfs: PathDfs::new(f.codomain(), kind),
        f,
        lifted: vec![start],
        maximal_lifted: 0,
        failure: None,
    };
    w.dfs.push(f.image(start));
    w.recurse();
    StartReport {
        start,
        maximal_lifted: w.maximal_lifted,
        failure: w.failure,
    }
}

/// Checks that every path of the given kind from `φ(v')` lifts to a path from
/// `v'`, for each `v'` in `base`. The first failure per start is kept.
pub fn has_lifting_property(
    f: &GraphMap,
    kind: PathKind<'_>,
    base: &[Vertex],
) -> Result<LiftReport> {
    f.require_immersion()?;
    for &v in base {
        f.domain().check(v)?;
    }
    if let PathKind::SemiInduced(ord) = kind {
        if ord.len() != f.codomain().order() {
            return Err(Error::BadOrder("order does not match the codomain".into()));
        }
    }
    let per_start: Vec<StartReport> = base.iter().map(|&v| check_start(f, kind, v)).collect();
    let holds = per_start.iter().all(|r| r.failure.is_none());
    Ok(LiftReport { holds, per_start })
}

pub fn has_pl(f: &GraphMap, base: &[Vertex]) -> Result<LiftReport> {
    has_lifting_property(f, PathKind::All, base)
}

pub fn has_ipl(f: &GraphMap, base: &[Vertex]) -> Result<LiftReport> {
    has_lifting_property(f, PathKind::Induced, base)
}

pub fn has_sipl(f: &GraphMap, ord: &TotalOrder, base: &[Vertex]) -> Result<LiftReport> {
    has_lifting_property(f, PathKind::SemiInduced(ord), base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::cycle_to_path_map;
    use alloc::string::String;

    fn named(g: &Graph, ps: &[Path]) -> Vec<Vec<String>> {
        ps.iter()
            .map(|p| p.vertices().iter().map(|&v| g.name(v).into()).collect())
            .collect()
    }

    fn lists(x: &[&[&str]]) -> Vec<Vec<String>> {
        x.iter()
            .map(|p| p.iter().map(|s| String::from(*s)).collect())
            .collect()
    }

    #[test]
    fn induced_and_semi_induced_predicates() {
        let c5 = Graph::cycle(5).unwrap();
        let ord = TotalOrder::natural(5);
        let a1 = Path::from_names(&c5, &["v0", "v1", "v2", "v3", "v4"]).unwrap();
        assert!(!a1.is_induced(&c5));
        assert!(a1.is_semi_induced(&c5, &ord));
        let a2 = Path::from_names(&c5, &["v0", "v4", "v3", "v2", "v1"]).unwrap();
        assert!(!a2.is_semi_induced(&c5, &ord));
        assert!(Path::from_names(&c5, &["v0", "v2"]).is_err());
        assert!(Path::from_names(&c5, &["v0", "v1", "v0"]).is_err());
    }

    #[test]
    fn c5_maximal_paths() {
        let c5 = Graph::cycle(5).unwrap();
        let ind = maximal_induced_paths_from(&c5, 0).unwrap();
        assert_eq!(
            named(&c5, &ind),
            lists(&[&["v0", "v1", "v2", "v3"], &["v0", "v4", "v3", "v2"]])
        );
        let ord = TotalOrder::natural(5);
        let semi = maximal_semi_induced_paths_from(&c5, &ord, 0).unwrap();
        assert_eq!(
            named(&c5, &semi),
            lists(&[&["v0", "v1", "v2", "v3", "v4"], &["v0", "v4", "v3", "v2"]])
        );
        let semi1 = maximal_semi_induced_paths_from(&c5, &ord, 1).unwrap();
        assert_eq!(
            named(&c5, &semi1),
            lists(&[&["v1", "v0", "v4", "v3", "v2"], &["v1", "v2", "v3", "v4"]])
        );
        assert!(maximal_induced_paths_from(&c5, 9).is_err());
    }

    #[test]
    fn k23_maximal_paths() {
        let k = Graph::complete_bipartite(2, 3).unwrap();
        let ind = maximal_induced_paths_from(&k, 0).unwrap();
        assert_eq!(
            named(&k, &ind),
            lists(&[
                &["v0", "v1", "v4"],
                &["v0", "v2", "v4"],
                &["v0", "v3", "v4"]
            ])
        );
        let ord = TotalOrder::natural(5);
        let semi = maximal_semi_induced_paths_from(&k, &ord, 0).unwrap();
        assert_eq!(
            named(&k, &semi),
            lists(&[
                &["v0", "v1", "v4", "v2"],
                &["v0", "v1", "v4", "v3"],
                &["v0", "v2", "v4", "v3"],
                &["v0", "v3", "v4"],
            ])
        );
        assert_eq!(maximal_paths_from(&k, PathKind::All, 0).unwrap().len(), 6);
    }

    #[test]
    fn complete_graph_semi_induced_count() {
        for n in 3..=8 {
            let g = Graph::complete(n).unwrap();
            let ord = TotalOrder::natural(n);
            assert_eq!(
                maximal_semi_induced_paths_from(&g, &ord, 0).unwrap().len(),
                1 << (n - 2)
            );
        }
    }

    #[test]
    fn enumerations_are_valid_and_maximal() {
        let g = Graph::lowerbound(7).unwrap();
        let ord = TotalOrder::natural(g.order());
        for v in g.vertices() {
            for p in maximal_semi_induced_paths_from(&g, &ord, v).unwrap() {
                assert!(Path::new(&g, p.vertices().to_vec()).is_ok());
                assert!(p.is_semi_induced(&g, &ord));
                for &x in g.neighbors(p.end()) {
                    let mut q = p.vertices().to_vec();
                    if q.contains(&x) {
                        continue;
                    }
                    q.push(x);
                    assert!(!Path::new_unchecked(q).is_semi_induced(&g, &ord));
                }
            }
        }
    }

    #[test]
    fn lift_examples() {
        let f = cycle_to_path_map(8, 5).unwrap();
        let d = f.domain();
        let c = f.codomain();
        let alpha = Path::from_names(c, &["v0", "v1", "v2", "v3"]).unwrap();
        let lift = lift_path(&f, &alpha, d.vertex("v0p").unwrap()).unwrap();
        assert_eq!(
            lift.lifted().unwrap().names(d),
            vec!["v0p", "v1p", "v2p", "v3p"]
        );

        for m in 3..=8 {
            let f = cycle_to_path_map(2 * m - 3, m).unwrap();
            let names: Vec<String> = core::iter::once(0)
                .chain((2..m).rev())
                .map(|i| alloc::format!("v{i}"))
                .collect();
            let alpha = Path::from_names(f.codomain(), &names).unwrap();
            let lift = lift_path(&f, &alpha, f.domain().vertex("v0p").unwrap()).unwrap();
            assert!(lift.lifted().is_none(), "m={m}");
        }

        let id = GraphMap::identity(&Graph::cycle(5).unwrap());
        let alpha = Path::from_names(id.codomain(), &["v2", "v3", "v4", "v0"]).unwrap();
        assert_eq!(
            lift_path(&id, &alpha, 2).unwrap(),
            Lift::Lifted(alpha.clone())
        );
        assert!(matches!(
            lift_path(&id, &alpha, 3),
            Err(Error::StartMismatch { .. })
        ));
    }

    #[test]
    fn lifting_properties_of_phi_8_5() {
        let f = cycle_to_path_map(8, 5).unwrap();
        let d = f.domain();
        let ord = TotalOrder::natural(5);
        let base = [d.vertex("v0p").unwrap(), d.vertex("v1p").unwrap()];
        assert!(has_sipl(&f, &ord, &base).unwrap().holds);
        assert!(has_ipl(&f, &base).unwrap().holds);
        let pl = has_pl(&f, &base[..1]).unwrap();
        assert!(!pl.holds);
        let (_, fail) = pl.failures().next().unwrap();
        assert!(lift_unchecked(&f, fail.path.vertices(), base[0])
            .lifted()
            .is_none());
        assert!(
            lift_unchecked(&f, &fail.path.vertices()[..fail.lifted.len()], base[0])
                .lifted()
                .is_some()
        );
    }

    #[test]
    fn identity_has_all_properties() {
        let g = Graph::lowerbound(6).unwrap();
        let id = GraphMap::identity(&g);
        let all: Vec<Vertex> = g.vertices().collect();
        assert!(has_ipl(&id, &all).unwrap().holds);
        assert!(has_pl(&id, &all).unwrap().holds);
    }

    #[test]
    fn checkers_reject_non_immersions() {
        let fold = GraphMap::new(
            Graph::path(3).unwrap(),
            Graph::path(2).unwrap(),
            vec![0, 1, 0],
        )
        .unwrap();
        assert_eq!(has_ipl(&fold, &[0]), Err(Error::NotImmersion));
    }
}
