//! The induced homomorphism `φ*: G(Γ) → G(Λ)`, `φ*(v) = ∏_{v' ∈ φ⁻¹(v)} v'`,
//! and bounded searches around it.
//!
//! The searches are bounded: finding nothing up to a length says nothing
//! about longer words.

use alloc::vec::Vec;

use crate::graph::{Graph, TotalOrder, Vertex};
use crate::morphism::GraphMap;
use crate::path::Path;
use crate::word::{self, can_append, push_reduced, Letter, ReducedWords, Word};
use crate::{Error, Result};

/// A map of graphs together with the order on `V(Λ)` used to write each
/// product `φ*(v)`.
#[derive(Clone, Debug)]
pub struct OrderedMap {
    map: GraphMap,
    order: TotalOrder,
    blocks: Vec<Vec<Vertex>>,
}

impl OrderedMap {
    pub fn new(map: GraphMap, order: TotalOrder) -> Result<Self> {
        if order.len() != map.domain().order() {
            return Err(Error::BadOrder("order does not match the domain".into()));
        }
        let blocks = map
            .codomain()
            .vertices()
            .map(|v| {
                let mut f = map.fiber(v).to_vec();
                order.sort(&mut f);
                f
            })
            .collect();
        Ok(OrderedMap { map, order, blocks })
    }

    /// Products written in increasing domain index order.
    pub fn with_index_order(map: GraphMap) -> Self {
        let n = map.domain().order();
        Self::new(map, TotalOrder::natural(n)).expect("natural order fits")
    }

    pub fn map(&self) -> &GraphMap {
        &self.map
    }

    pub fn order(&self) -> &TotalOrder {
        &self.order
    }

    pub fn gamma(&self) -> &Graph {
        self.map.codomain()
    }

    pub fn lambda(&self) -> &Graph {
        self.map.domain()
    }

    fn block(&self, l: Letter) -> impl Iterator<Item = Letter> + '_ {
        let b = &self.blocks[l.generator];
        let inverse = l.inverse;
        let n = b.len();
        (0..n).map(move |i| {
            if inverse {
                Letter::neg(b[n - 1 - i])
            } else {
                Letter::pos(b[i])
            }
        })
    }

    pub fn phi_star_generator(&self, v: Vertex) -> Result<Word> {
        self.gamma().check(v)?;
        Ok(Word::from_letters(self.block(Letter::pos(v)).collect()))
    }

    /// Letterwise substitution; inverse letters invert and reverse their block.
    pub fn phi_star_word(&self, w: &Word) -> Result<Word> {
        w.check(self.gamma())?;
        Ok(self.phi_star_unchecked(w.letters()))
    }

    fn phi_star_unchecked(&self, w: &[Letter]) -> Word {
        Word::from_letters(w.iter().flat_map(|&l| self.block(l)).collect())
    }

    /// `reduce(φ*(w))`.
    pub fn phi_star_reduced(&self, w: &Word) -> Result<Word> {
        Ok(word::reduce(self.lambda(), &self.phi_star_word(w)?))
    }
}

/// A reduced word `w` over `Γ` whose image has an innermost cancellation of
/// `vertex` coming from the subword `w[span.0..=span.1] = v^{±1} w₁ v^{∓1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurvivingWitness {
    pub word: Word,
    pub span: (usize, usize),
    pub vertex: Vertex,
}

/// Looks for a reduced word of length at most `bound` refuting that `φ` is
/// `v'`-surviving: a span `v^{±1} w₁ v^{∓1}` with `v = φ(v')`, `w₁` free of
/// `v`, and the element-level support of `φ*(w₁)` missing `Lk_Λ(v')`.
///
/// A violation inside a longer word is also a violation of its span, which
/// is itself reduced, so only spans are scanned. The result is the first
/// witness in length-then-lexicographic order over all reduced words.
pub fn surviving_violation_search(
    om: &OrderedMap,
    v_prime: Vertex,
    bound: usize,
) -> Result<Option<SurvivingWitness>> {
    let lambda = om.lambda();
    let gamma = om.gamma();
    lambda.check(v_prime)?;
    let v = om.map.image(v_prime);
    let link_l = lambda.neighbors(v_prime);
    let link_g = gamma.neighbors(v);
    for len in 2..=bound {
        for inverse in [false, true] {
            let inner = ReducedWords::new(gamma, len - 2)
                .min_len(len - 2)
                .generators(|x| x != v);
            for w1 in inner {
                // a span is reduced iff w₁ is and it blocks the v-pair
                if !w1.letters().iter().any(|l| link_g.contains(&l.generator)) {
                    continue;
                }
                let image = word::reduce(lambda, &om.phi_star_unchecked(w1.letters()));
                if image
                    .letters()
                    .iter()
                    .all(|l| !link_l.contains(&l.generator))
                {
                    let a = Letter::new(v, inverse);
                    let mut ls = Vec::with_capacity(len);
                    ls.push(a);
                    ls.extend_from_slice(w1.letters());
                    ls.push(a.inv());
                    return Ok(Some(SurvivingWitness {
                        word: Word::from_letters(ls),
                        span: (0, len - 1),
                        vertex: v_prime,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Checks one word for a `v'`-surviving violation (any innermost `v`-pair of
/// opposite signs whose interior image misses `Lk_Λ(v')`).
pub fn violation_in_word(
    om: &OrderedMap,
    w: &Word,
    v_prime: Vertex,
) -> Result<Option<(usize, usize)>> {
    w.check(om.gamma())?;
    om.lambda().check(v_prime)?;
    let v = om.map.image(v_prime);
    let link_l = om.lambda().neighbors(v_prime);
    let ls = w.letters();
    let mut prev: Option<usize> = None;
    for (j, l) in ls.iter().enumerate() {
        if l.generator != v {
            continue;
        }
        if let Some(i) = prev {
            if ls[i].inverse != l.inverse {
                let image = word::reduce(om.lambda(), &om.phi_star_unchecked(&ls[i + 1..j]));
                if image
                    .letters()
                    .iter()
                    .all(|x| !link_l.contains(&x.generator))
                {
                    return Ok(Some((i, j)));
                }
            }
        }
        prev = Some(j);
    }
    Ok(None)
}

/// The first nontrivial element (as its lexicographically least reduced
/// word, shortest first) of length at most `bound` killed by `φ*`.
pub fn kernel_search(om: &OrderedMap, bound: usize) -> Option<Word> {
    let gamma = om.gamma();
    let alphabet = word::alphabet(gamma);
    for len in 1..=bound {
        let mut prefix = Vec::with_capacity(len);
        let mut images = Vec::with_capacity(len + 1);
        images.push(Vec::new());
        if kernel_dfs(om, &alphabet, len, &mut prefix, &mut images) {
            return Some(Word::from_letters(prefix));
        }
    }
    None
}

fn kernel_dfs(
    om: &OrderedMap,
    alphabet: &[Letter],
    len: usize,
    prefix: &mut Vec<Letter>,
    images: &mut Vec<Vec<Letter>>,
) -> bool {
    for &a in alphabet {
        if !can_append(om.gamma(), prefix, a, true) {
            continue;
        }
        let mut img = images.last().unwrap().clone();
        for x in om.block(a) {
            push_reduced(om.lambda(), &mut img, x);
        }
        prefix.push(a);
        if prefix.len() == len {
            if img.is_empty() {
                return true;
            }
        } else {
            images.push(img);
            if kernel_dfs(om, alphabet, len, prefix, images) {
                return true;
            }
            images.pop();
        }
        prefix.pop();
    }
    false
}

/// Ratios `‖φ*(w)‖ / |w|` over a sample of nonempty reduced words.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistortionStats {
    pub samples: usize,
    pub min: f64,
    pub max: f64,
}

pub fn length_distortion_sample(
    om: &OrderedMap,
    words: &[Word],
) -> Result<Option<DistortionStats>> {
    let mut stats: Option<DistortionStats> = None;
    for w in words {
        if w.is_empty() {
            continue;
        }
        let r = om.phi_star_reduced(w)?.len() as f64 / w.len() as f64;
        stats = Some(match stats {
            None => DistortionStats {
                samples: 1,
                min: r,
                max: r,
            },
            Some(s) => DistortionStats {
                samples: s.samples + 1,
                min: s.min.min(r),
                max: s.max.max(r),
            },
        });
    }
    Ok(stats)
}

/// `v_0 ⋯ v_{k-1} v_k v_{k-1}⁻¹ ⋯ v_0⁻¹` for a path `(v_0, …, v_k)`.
pub fn ipl_witness_word(path: &Path) -> Word {
    let vs = path.vertices();
    let mut ls: Vec<Letter> = vs.iter().map(|&v| Letter::pos(v)).collect();
    ls.extend(vs[..vs.len() - 1].iter().rev().map(|&v| Letter::neg(v)));
    Word::from_letters(ls)
}
