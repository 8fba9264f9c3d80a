//! Certificates for (non-)injectivity of `φ*`, SIPL tree synthesis, the
//! cycle-into-path decision procedure and the lower-bound count.
//!
//! Injectivity is certified by peeling vertices: if `φ(Lk(v')) = Lk(v)` for
//! `v = φ(v')`, the link is ordered `x_1, …, x_l`, each restriction
//! `φ_i: Λ_i → Γ_i = Γ \ {v, x_1, …, x_{i-1}}` has SIPL for `x_i'`, and
//! `φ_1*` is injective, then `φ*` is injective.
//!
//! Non-injectivity is certified by enlarging a forest embedded in the
//! universal cover by deck translates and finding a vertex of `F` where
//! induced path lifting fails.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cover::{embed_forest, enlarge, spanning_tree_lift, CoverEmbedding, Deck, Walk};
use crate::graph::{Graph, TotalOrder, Vertex, VertexSet};
use crate::hom::{ipl_witness_word, OrderedMap};
use crate::morphism::{cycle_to_path_map, GraphMap};
use crate::path::{has_ipl, has_sipl, maximal_semi_induced_paths_from, paths_from, Path, PathKind};
use crate::word::{self, Word};
use crate::{Error, Result};

/// Links up to this size are tried in every order.
pub const EXHAUSTIVE_LINK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedInjective,
    CertifiedNonInjective,
    Unknown,
}

/// One application of the peeling step, recorded by vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelStep {
    /// `v'` in `Λ`.
    pub vertex: String,
    /// `v = φ(v')`.
    pub image: String,
    /// `x_1, …, x_l` in the order used.
    pub link_order: Vec<String>,
    /// `x_1', …, x_l'`; `φ_i` has SIPL for `x_i'`.
    pub lifts: Vec<String>,
    /// Link orders tried before this one succeeded, plus one.
    pub orders_tried: usize,
    /// Whether all link orders were available to the search.
    pub exhaustive: bool,
}

/// Evidence that `φ*` is not injective, obtained from an IPL failure of the
/// enlarged map `φ₁: Λ₁ → Γ`.
#[derive(Clone, Debug)]
pub struct NonInjectiveEvidence {
    pub base_set: Vec<Walk>,
    pub sigma: Vec<Deck>,
    pub enlarged: GraphMap,
    /// Vertex of `Λ₁` (a member of `F`) where lifting fails.
    pub vertex: Vertex,
    /// Induced path in `Γ` from `φ₁(vertex)` with no lift; minimal.
    pub path: Path,
    /// `v_0 ⋯ v_{k-1} v_k v_{k-1}⁻¹ ⋯ v_0⁻¹`; `vertex` is missing from the
    /// support of `φ₁*(witness)`.
    pub witness: Word,
}

#[derive(Clone, Debug)]
pub enum Evidence {
    Peeling(Vec<PeelStep>),
    /// `φ*` kills the generator `vertex` (its fiber is empty).
    EmptyFiber {
        vertex: String,
    },
    LiftFailure(Box<NonInjectiveEvidence>),
    None,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl Certificate {
    fn unknown() -> Self {
        Certificate {
            verdict: Verdict::Unknown,
            evidence: Evidence::None,
        }
    }
}

/// Tries to certify that `φ*` is injective.
pub fn certify_injective(f: &GraphMap) -> Result<Certificate> {
    f.require_immersion()?;
    if let Some(v) = f.missed_vertex() {
        return Ok(Certificate {
            verdict: Verdict::CertifiedNonInjective,
            evidence: Evidence::EmptyFiber {
                vertex: f.codomain().name(v).into(),
            },
        });
    }
    let mut memo = BTreeMap::new();
    Ok(match peel(f, &VertexSet::new(), &mut memo) {
        Some(steps) => Certificate {
            verdict: Verdict::CertifiedInjective,
            evidence: Evidence::Peeling(steps),
        },
        None => Certificate::unknown(),
    })
}

type Memo = BTreeMap<VertexSet, Option<Vec<PeelStep>>>;

// Certifies injectivity of φ restricted to Γ \ removed.
fn peel(f: &GraphMap, removed: &VertexSet, memo: &mut Memo) -> Option<Vec<PeelStep>> {
    if let Some(r) = memo.get(removed) {
        return r.clone();
    }
    let r = f.restrict_removing(removed).expect("restriction of a map");
    let phi = &r.map;
    let gamma = phi.codomain();
    let out = if phi.missed_vertex().is_some() {
        None
    } else if gamma.order() <= 1 {
        Some(Vec::new())
    } else {
        let mut candidates: Vec<Vertex> = phi
            .domain()
            .vertices()
            .filter(|&v| phi.link_surjective_at(v))
            .collect();
        candidates.sort_by_key(|&v| (phi.fiber(phi.image(v)).len() != 1, v));
        let mut found = None;
        for vp in candidates {
            let v = phi.image(vp);
            let mut next = removed.clone();
            next.insert(r.codomain_parents[v]);
            if memo.get(&next).is_some_and(Option::is_none) {
                continue;
            }
            let Some(step) = peel_step(phi, vp) else {
                continue;
            };
            if let Some(rest) = peel(f, &next, memo) {
                let mut steps = vec![step];
                steps.extend(rest);
                found = Some(steps);
                break;
            }
        }
        found
    };
    memo.insert(removed.clone(), out.clone());
    out
}

// Searches link orders for which every φ_i has SIPL for x_i'.
fn peel_step(phi: &GraphMap, vp: Vertex) -> Option<PeelStep> {
    let lambda = phi.domain();
    let gamma = phi.codomain();
    let v = phi.image(vp);
    let link: Vec<Vertex> = gamma.neighbors(v).to_vec();
    let lift_of = |x: Vertex| {
        *lambda
            .neighbors(vp)
            .iter()
            .find(|&&y| phi.image(y) == x)
            .expect("link surjective")
    };
    let exhaustive = link.len() <= EXHAUSTIVE_LINK;
    let orders: Vec<Vec<Vertex>> = if exhaustive {
        permutations(&link)
    } else {
        let mut rev = link.clone();
        rev.reverse();
        vec![link.clone(), rev]
    };
    let mut cache: BTreeMap<(VertexSet, Vertex), bool> = BTreeMap::new();
    for (tried, ord) in orders.iter().enumerate() {
        let mut removed: VertexSet = [v].into_iter().collect();
        let mut ok = true;
        for &x in ord {
            let key = (removed.clone(), x);
            let good = *cache
                .entry(key)
                .or_insert_with(|| sipl_after_removal(phi, &removed, lift_of(x)));
            if !good {
                ok = false;
                break;
            }
            removed.insert(x);
        }
        if ok {
            return Some(PeelStep {
                vertex: lambda.name(vp).into(),
                image: gamma.name(v).into(),
                link_order: ord.iter().map(|&x| gamma.name(x).to_string()).collect(),
                lifts: ord
                    .iter()
                    .map(|&x| lambda.name(lift_of(x)).to_string())
                    .collect(),
                orders_tried: tried + 1,
                exhaustive,
            });
        }
    }
    None
}

// SIPL of φ restricted to Γ \ removed, for `start`, using the inherited order.
fn sipl_after_removal(phi: &GraphMap, removed: &VertexSet, start: Vertex) -> bool {
    let r = phi
        .restrict_removing(removed)
        .expect("restriction of a map");
    let local = r
        .domain_parents
        .iter()
        .position(|&p| p == start)
        .expect("start survives the removal");
    let ord = TotalOrder::natural(r.map.codomain().order());
    has_sipl(&r.map, &ord, &[local])
        .expect("restriction is an immersion")
        .holds
}

fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut cur = items.to_vec();
    cur.sort_unstable();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Replays a peeling trace: every recorded SIPL confirmation is checked again
/// and the peeled vertices must exhaust `Γ` down to at most one vertex.
pub fn recheck_peeling(f: &GraphMap, steps: &[PeelStep]) -> Result<bool> {
    f.require_immersion()?;
    if f.missed_vertex().is_some() {
        return Ok(false);
    }
    let gamma = f.codomain();
    let mut removed = VertexSet::new();
    for s in steps {
        let r = f.restrict_removing(&removed)?;
        let phi = &r.map;
        let vp = phi.domain().vertex_checked(&s.vertex)?;
        let v = phi.image(vp);
        if phi.codomain().name(v) != s.image || !phi.link_surjective_at(vp) {
            return Ok(false);
        }
        let mut local_removed: VertexSet = [v].into_iter().collect();
        for (x, xp) in s.link_order.iter().zip(&s.lifts) {
            let x = phi.codomain().vertex_checked(x)?;
            let xp = phi.domain().vertex_checked(xp)?;
            if phi.image(xp) != x || !phi.domain().adjacent(vp, xp) {
                return Ok(false);
            }
            if !sipl_after_removal(phi, &local_removed, xp) {
                return Ok(false);
            }
            local_removed.insert(x);
        }
        if s.link_order.len() != phi.codomain().degree(v) {
            return Ok(false);
        }
        removed.insert(gamma.vertex_checked(&s.image)?);
    }
    let r = f.restrict_removing(&removed)?;
    Ok(r.map.codomain().order() <= 1 && r.map.is_surjective())
}

/// Tries to certify that `φ*` is not injective. `f` must be an immersion of a
/// forest onto a connected `Γ`. With `base_set = None`, `F` is first the
/// spanning-tree lift at the first vertex of `Γ` and then each single walk of
/// the embedded forest in turn.
pub fn certify_noninjective(f: &GraphMap, base_set: Option<&[Walk]>) -> Result<Certificate> {
    f.require_immersion()?;
    if !f.domain().is_forest() {
        return Err(Error::NotForest);
    }
    if let Some(v) = f.missed_vertex() {
        return Err(Error::NotSurjective(f.codomain().name(v).into()));
    }
    let gamma = f.codomain();
    if !gamma.is_connected() {
        return Err(Error::Disconnected);
    }
    let tree = spanning_tree_lift(gamma, 0)?;
    let t = f.domain();
    let roots: Vec<Vertex> = t.components().iter().map(|c| c[0]).collect();
    let root_walks: Vec<Walk> = roots.iter().map(|&r| tree[f.image(r)].clone()).collect();
    let e = embed_forest(f, &roots, &root_walks)?;
    certify_noninjective_embedded(&e, base_set)
}

/// [`certify_noninjective`] for an explicit embedding into the universal cover.
pub fn certify_noninjective_embedded(
    e: &CoverEmbedding,
    base_set: Option<&[Walk]>,
) -> Result<Certificate> {
    let f = e.map();
    if let Some(v) = f.missed_vertex() {
        return Err(Error::NotSurjective(f.codomain().name(v).into()));
    }
    let candidates: Vec<Vec<Walk>> = match base_set {
        Some(fs) => vec![fs.to_vec()],
        None => {
            let base = e.base().ok_or(Error::EmptyGraph)?;
            let mut c = vec![spanning_tree_lift(f.codomain(), base)?];
            c.extend(e.walks().iter().map(|w| vec![w.clone()]));
            c
        }
    };
    for fs in candidates {
        if let Some(ev) = ipl_failure_after_enlarging(e, &fs)? {
            return Ok(Certificate {
                verdict: Verdict::CertifiedNonInjective,
                evidence: Evidence::LiftFailure(Box::new(ev)),
            });
        }
    }
    Ok(Certificate::unknown())
}

fn ipl_failure_after_enlarging(
    e: &CoverEmbedding,
    fs: &[Walk],
) -> Result<Option<NonInjectiveEvidence>> {
    let big = enlarge(e, fs)?;
    let phi1 = big.map();
    let starts: Vec<Vertex> = fs
        .iter()
        .map(|w| {
            big.embedding
                .vertex_at(w)
                .expect("F lies in the enlargement")
        })
        .collect();
    let report = has_ipl(phi1, &starts)?;
    let Some((vertex, fail)) = report.failures().next() else {
        return Ok(None);
    };
    let witness = ipl_witness_word(&fail.path);
    Ok(Some(NonInjectiveEvidence {
        base_set: fs.to_vec(),
        sigma: big.sigma.clone(),
        enlarged: phi1.clone(),
        vertex,
        path: fail.path.clone(),
        witness,
    }))
}

/// Checks that the witness word of non-injectivity evidence indeed loses its
/// vertex: `vertex ∉ supp(reduce(φ₁*(witness)))`.
pub fn recheck_noninjective(ev: &NonInjectiveEvidence) -> Result<bool> {
    let om = OrderedMap::with_index_order(ev.enlarged.clone());
    let img = om.phi_star_word(&ev.witness)?;
    Ok(!word::support_elem(om.lambda(), &img).contains(&ev.vertex)
        && ev.path.is_induced(ev.enlarged.codomain()))
}

/// A tree `T`, an immersion into `Γ` of the forest `T` minus its bridge
/// vertices, and a base set `F` with `φ(F) = V(Γ)` for which SIPL holds.
#[derive(Clone, Debug)]
pub struct SynthesizedTree {
    pub tree: Graph,
    /// `φ` on `T` minus the bridges; a tree when `Γ` is connected.
    pub map: GraphMap,
    /// Vertex of `tree` for each vertex of `map.domain()`.
    pub forest_in_tree: Vec<Vertex>,
    /// Bridge vertices of `tree` joining component trees.
    pub bridges: Vec<Vertex>,
    /// `F` as vertices of `map.domain()`.
    pub base_set: Vec<Vertex>,
    pub order: TotalOrder,
}

impl SynthesizedTree {
    /// `m · 2^{m-1}` for `m = |V(Γ)|`.
    pub fn size_bound(&self) -> u128 {
        let m = self.map.codomain().order() as u32;
        (m as u128) << (m - 1)
    }

    /// Re-checks the structural claims and SIPL for `F`.
    pub fn verify(&self) -> Result<bool> {
        let gamma = self.map.codomain();
        let mut hit = vec![false; gamma.order()];
        for &v in &self.base_set {
            hit[self.map.image(v)] = true;
        }
        Ok(self.tree.is_tree()
            && self.map.is_immersion()
            && hit.iter().all(|&h| h)
            && (self.tree.order() as u128) <= self.size_bound()
            && has_sipl(&self.map, &self.order, &self.base_set)?.holds)
    }
}

/// Builds a tree with SIPL for a base set covering `Γ`: the union of the lifts
/// of all maximal semi-induced paths from a spanning-tree lift. Components are
/// handled separately and joined by length-2 paths through fresh vertices.
pub fn synthesize_sipl_tree(gamma: &Graph, ord: &TotalOrder) -> Result<SynthesizedTree> {
    if gamma.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    if ord.len() != gamma.order() {
        return Err(Error::BadOrder("order does not match the graph".into()));
    }
    let mut walks = Vec::new();
    let mut base_walks = Vec::new();
    for comp in gamma.components() {
        let keep: VertexSet = comp.iter().copied().collect();
        let (sub, parents) = gamma.induced_with_parents(&keep)?;
        let sub_ord = ord.inherit(&parents);
        let up = |w: &Walk| {
            Walk::new(
                gamma,
                parents[w.base()],
                w.steps().iter().map(|&s| parents[s]).collect(),
            )
            .expect("walk in an induced subgraph")
        };
        let fs = spanning_tree_lift(&sub, 0)?;
        let mut local = Vec::new();
        for f in &fs {
            local.push(f.clone());
            for p in maximal_semi_induced_paths_from(&sub, &sub_ord, f.projection())? {
                let mut w = f.clone();
                for &x in &p.vertices()[1..] {
                    w = w.extend(x);
                    local.push(w.clone());
                }
            }
        }
        walks.extend(local.iter().map(up));
        base_walks.extend(fs.iter().map(up));
    }
    let emb = CoverEmbedding::from_walks(gamma, walks, |_, w| w.name(gamma))?;
    let forest = emb.map().domain();
    let base_set: Vec<Vertex> = base_walks
        .iter()
        .map(|w| emb.vertex_at(w).expect("F is part of the union"))
        .collect();

    // join the component trees: bridge j links the first vertex of the
    // accumulated tree with the first vertex of component j
    let firsts: Vec<Vertex> = forest.components().iter().map(|c| c[0]).collect();
    let mut names: Vec<String> = forest.names().to_vec();
    let mut edges: Vec<(Vertex, Vertex)> = forest.edges().collect();
    let mut bridges = Vec::new();
    let mut k = 0;
    for &c in firsts.iter().skip(1) {
        let name = loop {
            k += 1;
            let cand = format!("bridge{k}");
            if forest.vertex(&cand).is_none() {
                break cand;
            }
        };
        let b = names.len();
        names.push(name);
        edges.push((firsts[0], b));
        edges.push((b, c));
        bridges.push(b);
    }
    let tree = Graph::from_index_edges(names, &edges)?;
    let order = ord.clone();
    let forest_in_tree = forest.vertices().collect();
    Ok(SynthesizedTree {
        tree,
        map: emb.into_map(),
        forest_in_tree,
        bridges,
        base_set,
        order,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleVerdict {
    Injective,
    NonInjective,
}

/// Outcome of [`decide_cycle_into_path`], with the certificate obtained at
/// the threshold instance it was derived from.
#[derive(Clone, Debug)]
pub struct CycleDecision {
    pub m: usize,
    pub n: usize,
    pub verdict: CycleVerdict,
    /// `2m-2` or `2m-3`: the instance actually certified.
    pub certified_n: usize,
    pub certificate: Certificate,
}

/// Decides whether `φ_{n,m}*: G(C_m) → G(P_n)` is injective. The threshold
/// instances `n = 2m-2` (injective) and `n = 2m-3` (not) are certified; other
/// `n` follow because `P_k` is an induced subgraph of `P_l` for `k ≤ l`.
pub fn decide_cycle_into_path(m: usize, n: usize) -> Result<CycleDecision> {
    if m < 3 || n < 1 {
        return Err(Error::BadParameter(format!(
            "need m >= 3 and n >= 1, got m={m}, n={n}"
        )));
    }
    let (certified_n, certificate, verdict) = if n >= 2 * m - 2 {
        let k = 2 * m - 2;
        let c = certify_injective(&cycle_to_path_map(k, m)?)?;
        (k, c, CycleVerdict::Injective)
    } else {
        let k = 2 * m - 3;
        let c = certify_noninjective(&cycle_to_path_map(k, m)?, Some(&[Walk::root(0)]))?;
        (k, c, CycleVerdict::NonInjective)
    };
    let expected = match verdict {
        CycleVerdict::Injective => Verdict::CertifiedInjective,
        CycleVerdict::NonInjective => Verdict::CertifiedNonInjective,
    };
    if certificate.verdict != expected {
        return Err(Error::CertificateGap { m, n });
    }
    Ok(CycleDecision {
        m,
        n,
        verdict,
        certified_n,
        certificate,
    })
}

/// Distinct endpoints of lifted induced paths from `v0` in `Γ_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundCount {
    pub m: usize,
    /// Number of induced paths from `v0` of each length.
    pub paths_by_length: Vec<usize>,
    pub distinct_endpoints: usize,
    /// `2^{k+1} - 1` for `m = 2k+1`, `3·2^k - 1` for `m = 2k+2`.
    pub closed_form: usize,
    /// `2^{m/2}`: lower bound on the tree over `v0`.
    pub half_bound: f64,
    /// `2^{m/4}`: resulting lower bound on `|V(T)|`.
    pub quarter_bound: f64,
}

impl LowerBoundCount {
    pub fn holds(&self) -> bool {
        self.distinct_endpoints == self.closed_form
            && self.distinct_endpoints as f64 >= self.half_bound
    }
}

pub fn lowerbound_count(m: usize) -> Result<LowerBoundCount> {
    let g = Graph::lowerbound(m)?;
    let paths = paths_from(&g, PathKind::Induced, 0)?;
    let mut by_len = Vec::new();
    let mut ends = alloc::collections::BTreeSet::new();
    for p in &paths {
        let l = p.length();
        if by_len.len() <= l {
            by_len.resize(l + 1, 0);
        }
        by_len[l] += 1;
        let mut w = Walk::root(0);
        for &x in &p.vertices()[1..] {
            w = w.extend(x);
        }
        ends.insert(w);
    }
    let k = (m - 1) / 2;
    let closed_form = if m % 2 == 1 {
        (1 << (k + 1)) - 1
    } else {
        3 * (1 << k) - 1
    };
    Ok(LowerBoundCount {
        m,
        paths_by_length: by_len,
        distinct_endpoints: ends.len(),
        closed_form,
        half_bound: libm_pow2(m as f64 / 2.0),
        quarter_bound: libm_pow2(m as f64 / 4.0),
    })
}

// 2^x without std: integer part by shifting, fractional part by a short series
fn libm_pow2(x: f64) -> f64 {
    let i = x as i32;
    let frac = x - i as f64;
    let ln2 = core::f64::consts::LN_2;
    let y = frac * ln2;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..30 {
        term *= y / n as f64;
        sum += term;
    }
    sum * (1u64 << i) as f64
}
