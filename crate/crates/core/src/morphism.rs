//! Maps of graphs, immersions and coverings.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::{Error, Result};

/// A map of graphs `φ: Λ → Γ`, stored as its vertex assignment.
///
/// Adjacent vertices go to adjacent vertices; since `Γ` has no loops, no edge
/// is collapsed and every fiber is an independent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    domain: Graph,
    codomain: Graph,
    assign: Vec<Vertex>,
    fibers: Vec<Vec<Vertex>>,
}

/// A restriction `φ(Λ₁, Γ₁)` together with the vertex correspondences back
/// into the original domain and codomain.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub map: GraphMap,
    pub domain_parents: Vec<Vertex>,
    pub codomain_parents: Vec<Vertex>,
}

impl GraphMap {
    pub fn new(domain: Graph, codomain: Graph, assign: Vec<Vertex>) -> Result<Self> {
        if assign.len() != domain.order() {
            return Err(Error::NotAMapOfGraphs(format!(
                "assignment has {} entries for {} domain vertices",
                assign.len(),
                domain.order()
            )));
        }
        for &t in &assign {
            codomain.check(t)?;
        }
        for (u, v) in domain.edges() {
            let (a, b) = (assign[u], assign[v]);
            if a == b || !codomain.adjacent(a, b) {
                return Err(Error::NotAMapOfGraphs(format!(
                    "edge {{{}, {}}} goes to {{{}, {}}}",
                    domain.name(u),
                    domain.name(v),
                    codomain.name(a),
                    codomain.name(b)
                )));
            }
        }
        let mut fibers = vec![Vec::new(); codomain.order()];
        for (v, &t) in assign.iter().enumerate() {
            fibers[t].push(v);
        }
        Ok(GraphMap {
            domain,
            codomain,
            assign,
            fibers,
        })
    }

    /// Builds a map from `(domain name, codomain name)` pairs covering the
    /// whole domain.
    pub fn from_names<A: AsRef<str>, B: AsRef<str>>(
        domain: Graph,
        codomain: Graph,
        pairs: &[(A, B)],
    ) -> Result<Self> {
        let mut assign = vec![usize::MAX; domain.order()];
        for (a, b) in pairs {
            let s = domain.vertex_checked(a.as_ref())?;
            let t = codomain.vertex_checked(b.as_ref())?;
            assign[s] = t;
        }
        if let Some(v) = assign.iter().position(|&t| t == usize::MAX) {
            return Err(Error::NotAMapOfGraphs(format!(
                "no image given for `{}`",
                domain.name(v)
            )));
        }
        Self::new(domain, codomain, assign)
    }

    pub fn identity(g: &Graph) -> Self {
        Self::new(g.clone(), g.clone(), g.vertices().collect()).expect("identity is a map")
    }

    pub fn domain(&self) -> &Graph {
        &self.domain
    }

    pub fn codomain(&self) -> &Graph {
        &self.codomain
    }

    pub fn assignment(&self) -> &[Vertex] {
        &self.assign
    }

    pub fn image(&self, v: Vertex) -> Vertex {
        self.assign[v]
    }

    /// `φ⁻¹(v)` in increasing domain index order.
    pub fn fiber(&self, v: Vertex) -> &[Vertex] {
        &self.fibers[v]
    }

    pub fn is_surjective(&self) -> bool {
        self.fibers.iter().all(|f| !f.is_empty())
    }

    /// First codomain vertex with an empty fiber, if any.
    pub fn missed_vertex(&self) -> Option<Vertex> {
        self.fibers.iter().position(Vec::is_empty)
    }

    /// Locally injective: `φ` restricted to every link is injective.
    pub fn is_immersion(&self) -> bool {
        let mut stamp = vec![usize::MAX; self.codomain.order()];
        for v in self.domain.vertices() {
            for &x in self.domain.neighbors(v) {
                let t = self.assign[x];
                if stamp[t] == v {
                    return false;
                }
                stamp[t] = v;
            }
        }
        true
    }

    pub(crate) fn require_immersion(&self) -> Result<()> {
        if self.is_immersion() {
            Ok(())
        } else {
            Err(Error::NotImmersion)
        }
    }

    /// Whether `φ(Lk(v')) = Lk(φ(v'))`.
    pub fn link_surjective_at(&self, v: Vertex) -> bool {
        let target = self.assign[v];
        let mut hit: Vec<Vertex> = self
            .domain
            .neighbors(v)
            .iter()
            .map(|&x| self.assign[x])
            .collect();
        hit.sort_unstable();
        hit.dedup();
        hit == self.codomain.neighbors(target)
    }

    /// Surjective, with every link restriction a bijection.
    pub fn is_covering(&self) -> bool {
        self.is_surjective()
            && self.is_immersion()
            && self.domain.vertices().all(|v| self.link_surjective_at(v))
    }

    /// The restriction `φ(Λ₁, Γ₁)` to induced subgraphs given by vertex sets.
    pub fn restrict(
        &self,
        domain_keep: &VertexSet,
        codomain_keep: &VertexSet,
    ) -> Result<Restriction> {
        for &v in domain_keep {
            self.domain.check(v)?;
            if !codomain_keep.contains(&self.assign[v]) {
                return Err(Error::ImageEscapesCodomain(self.domain.name(v).to_string()));
            }
        }
        let (dom, domain_parents) = self.domain.induced_with_parents(domain_keep)?;
        let (cod, codomain_parents) = self.codomain.induced_with_parents(codomain_keep)?;
        let mut local = vec![usize::MAX; self.codomain.order()];
        for (i, &p) in codomain_parents.iter().enumerate() {
            local[p] = i;
        }
        let assign = domain_parents
            .iter()
            .map(|&p| local[self.assign[p]])
            .collect();
        let map = GraphMap::new(dom, cod, assign)?;
        Ok(Restriction {
            map,
            domain_parents,
            codomain_parents,
        })
    }

    /// Restriction to graphs given by value; both must be induced subgraphs
    /// (matched by vertex name) of the domain and codomain respectively.
    pub fn restrict_to(&self, sub_domain: &Graph, sub_codomain: &Graph) -> Result<Restriction> {
        let dp = self
            .domain
            .embeds_induced(sub_domain)
            .ok_or_else(|| Error::NotInduced("domain restriction".into()))?;
        let cp = self
            .codomain
            .embeds_induced(sub_codomain)
            .ok_or_else(|| Error::NotInduced("codomain restriction".into()))?;
        self.restrict(&dp.into_iter().collect(), &cp.into_iter().collect())
    }

    /// `Λ \ φ⁻¹(removed)` → `Γ \ removed`.
    pub fn restrict_removing(&self, removed: &VertexSet) -> Result<Restriction> {
        let cod_keep: VertexSet = self
            .codomain
            .vertices()
            .filter(|v| !removed.contains(v))
            .collect();
        let dom_keep: VertexSet = self
            .domain
            .vertices()
            .filter(|&v| cod_keep.contains(&self.assign[v]))
            .collect();
        self.restrict(&dom_keep, &cod_keep)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GraphMap) -> Result<GraphMap> {
        if self.codomain != next.domain {
            return Err(Error::GraphMismatch);
        }
        let assign = self.assign.iter().map(|&t| next.assign[t]).collect();
        GraphMap::new(self.domain.clone(), next.codomain.clone(), assign)
    }
}

/// Name of the `copy`-th lift (1-based) of `base`, written with `p` for each
/// prime: `v2p`, `v2pp`, ….
pub fn primed(base: &str, copy: usize) -> String {
    let mut s = String::from(base);
    for _ in 0..copy {
        s.push('p');
    }
    s
}

/// The immersion `φ_{n,m}: P_n → C_m`, realised as the restriction of the
/// covering of `C_m` by the bi-infinite path.
///
/// Positions of `P_n` are labelled relative to a distinguished vertex `v0p`
/// placed so that `v0p, v1p, …, v{m-1}p` run to its right (when `n >= m`);
/// vertices further left get one extra prime per wrap around the cycle, so
/// `P_8 → C_5` reads `v2pp v3pp v4pp v0p v1p v2p v3p v4p`. Each `v{i}p…` maps
/// to `v{i}`. Walking along `P_n` reads the cycle in increasing index order,
/// so the map agrees with `v_j ↦ v_{j mod m}` up to a rotation of `C_m`.
///
/// The domain's vertex list is sorted by prime count and then by index, which
/// is the order used for products in `φ*`.
pub fn cycle_to_path_map(n: usize, m: usize) -> Result<GraphMap> {
    if m < 3 || n < 1 {
        return Err(Error::BadParameter(format!(
            "cycle_to_path_map needs m >= 3 and n >= 1, got n={n}, m={m}"
        )));
    }
    let anchor = n.saturating_sub(m) as isize;
    // (copies, residue) per path position
    let labels: Vec<(usize, usize)> = (0..n as isize)
        .map(|t| {
            let off = t - anchor;
            let residue = off.rem_euclid(m as isize) as usize;
            let copies = if off >= 0 {
                1 + (off as usize) / m
            } else {
                1 + ((-off) as usize).div_ceil(m)
            };
            (copies, residue)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&t| labels[t]);
    let mut slot = vec![0; n];
    for (i, &t) in order.iter().enumerate() {
        slot[t] = i;
    }
    let names = order
        .iter()
        .map(|&t| primed(&format!("v{}", labels[t].1), labels[t].0))
        .collect();
    let edges: Vec<_> = (1..n).map(|t| (slot[t - 1], slot[t])).collect();
    let domain = Graph::from_index_edges(names, &edges)?;
    let assign = order.iter().map(|&t| labels[t].1).collect();
    GraphMap::new(domain, Graph::cycle(m)?, assign)
}

/// The fold of a path onto the square: `Λ` is the path
/// `v1p - v2p - v3p - v4p - v1pp`, `Γ = C_4` on `v1..v4`, and every `v{i}p…`
/// maps to `v{i}`. The induced `φ*` is not injective.
pub fn folded_square() -> GraphMap {
    let gamma = Graph::new(
        ["v1", "v2", "v3", "v4"],
        [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")],
    )
    .expect("square");
    let lambda = Graph::new(
        ["v1p", "v2p", "v3p", "v4p", "v1pp"],
        [
            ("v1p", "v2p"),
            ("v2p", "v3p"),
            ("v3p", "v4p"),
            ("v4p", "v1pp"),
        ],
    )
    .expect("path");
    GraphMap::from_names(
        lambda,
        gamma,
        &[
            ("v1p", "v1"),
            ("v2p", "v2"),
            ("v3p", "v3"),
            ("v4p", "v4"),
            ("v1pp", "v1"),
        ],
    )
    .expect("fold is a map of graphs")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names<'a>(g: &'a Graph, vs: &[Vertex]) -> Vec<&'a str> {
        vs.iter().map(|&v| g.name(v)).collect()
    }

    #[test]
    fn make_map_examples() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(GraphMap::identity(&c5).is_covering());
        let f = folded_square();
        assert!(f.is_immersion());
        assert_eq!(names(f.domain(), f.fiber(0)), vec!["v1p", "v1pp"]);
        let edge = Graph::path(2).unwrap();
        let point = Graph::path(1).unwrap();
        assert!(matches!(
            GraphMap::new(edge, point, vec![0, 0]),
            Err(Error::NotAMapOfGraphs(_))
        ));
    }

    #[test]
    fn immersion_examples() {
        assert!(cycle_to_path_map(8, 5).unwrap().is_immersion());
        // fold both edges of P_3 onto a single edge at the middle vertex
        let p3 = Graph::path(3).unwrap();
        let p2 = Graph::path(2).unwrap();
        let fold = GraphMap::new(p3, p2, vec![0, 1, 0]).unwrap();
        assert!(!fold.is_immersion());
    }

    #[test]
    fn covering_examples() {
        let c6 = Graph::cycle(6).unwrap();
        let c3 = Graph::cycle(3).unwrap();
        let f = GraphMap::new(c6, c3, (0..6).map(|j| j % 3).collect()).unwrap();
        assert!(f.is_covering());
        assert!(!cycle_to_path_map(8, 5).unwrap().is_covering());
        let bij = cycle_to_path_map(5, 5).unwrap();
        assert!(!bij.is_covering());
        assert!(bij.assignment().iter().enumerate().all(|(i, &t)| i == t));
    }

    #[test]
    fn cycle_to_path_labels() {
        let f = cycle_to_path_map(8, 5).unwrap();
        assert_eq!(
            f.domain().names(),
            &["v0p", "v1p", "v2p", "v3p", "v4p", "v2pp", "v3pp", "v4pp"]
        );
        let d = f.domain();
        let v = |s: &str| d.vertex(s).unwrap();
        assert!(d.adjacent(v("v4pp"), v("v0p")));
        assert!(d.adjacent(v("v2pp"), v("v3pp")));
        assert_eq!(d.degree(v("v2pp")), 1);
        assert_eq!(d.degree(v("v4p")), 1);
        let f = cycle_to_path_map(3, 3).unwrap();
        assert_eq!(f.domain().names(), &["v0p", "v1p", "v2p"]);
        assert_eq!(f.assignment(), &[0, 1, 2]);
        // long paths wrap with further primes
        let f = cycle_to_path_map(13, 3).unwrap();
        assert!(f.is_immersion());
        assert!(f.domain().is_tree());
        assert!(f.domain().vertex("v2pppp").is_some());
        assert!(cycle_to_path_map(4, 2).is_err());
    }

    #[test]
    fn cycle_to_path_always_immersion() {
        for m in 3..=12 {
            for n in m..=3 * m {
                let f = cycle_to_path_map(n, m).unwrap();
                assert!(f.is_immersion(), "n={n} m={m}");
                assert!(f.domain().is_tree());
            }
        }
    }

    #[test]
    fn restrict_examples() {
        let f = cycle_to_path_map(8, 5).unwrap();
        let v0: VertexSet = [0].into_iter().collect();
        let r = f.restrict_removing(&v0).unwrap();
        assert_eq!(r.map.codomain().names(), &["v1", "v2", "v3", "v4"]);
        assert!(!r.map.domain().names().contains(&"v0p".into()));
        assert_eq!(r.map.domain().components().len(), 2);
        assert!(r.map.is_immersion());

        let all_d: VertexSet = f.domain().vertices().collect();
        let all_c: VertexSet = f.codomain().vertices().collect();
        assert_eq!(f.restrict(&all_d, &all_c).unwrap().map, f);

        let escape = f.restrict(&all_d, &f.codomain().vertices().skip(1).collect());
        assert!(matches!(escape, Err(Error::ImageEscapesCodomain(_))));
    }

    #[test]
    fn restrict_to_rejects_non_induced() {
        let f = GraphMap::identity(&Graph::cycle(4).unwrap());
        let non_induced = Graph::new(
            ["v0", "v1", "v2", "v3"],
            [("v0", "v1"), ("v1", "v2"), ("v2", "v3")],
        )
        .unwrap();
        assert!(matches!(
            f.restrict_to(&non_induced, f.codomain()),
            Err(Error::NotInduced(_))
        ));
        let sub = Graph::new(["v0", "v1"], [("v0", "v1")]).unwrap();
        assert!(f.restrict_to(&sub, f.codomain()).is_ok());
    }

    #[test]
    fn composition_is_a_map() {
        let c6 = Graph::cycle(6).unwrap();
        let c3 = Graph::cycle(3).unwrap();
        let cover = GraphMap::new(c6.clone(), c3, (0..6).map(|j| j % 3).collect()).unwrap();
        let p = Graph::path(4).unwrap();
        let into = GraphMap::new(p, c6, vec![2, 3, 4, 5]).unwrap();
        let c = into.then(&cover).unwrap();
        assert_eq!(c.assignment(), &[2, 0, 1, 2]);
        assert!(c.is_immersion());
    }
}
