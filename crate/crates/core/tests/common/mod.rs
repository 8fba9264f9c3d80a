//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's algorithms beyond constructing values.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use raagpath_core::cover::Walk;
use raagpath_core::{Graph, GraphMap, Letter, TotalOrder, Vertex, Word};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

pub fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let pairs = pairs(n);
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| *e)
        .collect();
    Graph::from_index_edges(names(n), &edges).unwrap()
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let ps = pairs(n);
    let perms = permutations(n);
    let index_of = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        ps.iter().position(|&e| e == (a, b)).unwrap()
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << ps.len()) {
        let canon = perms
            .iter()
            .map(|p| {
                ps.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(a, b))| acc | 1 << index_of(p[a], p[b]))
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(graph_from_mask(n, mask));
        }
    }
    out
}

fn commute(g: &Graph, a: Vertex, b: Vertex) -> bool {
    a != b && !g.neighbors(a).contains(&b)
}

/// Breadth-first search over the rewriting system {swap adjacent commuting
/// letters, delete adjacent inverse pairs} for the empty word.
pub fn bfs_trivial(g: &Graph, w: &Word) -> bool {
    let start: Vec<Letter> = w.letters().to_vec();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        if x.is_empty() {
            return true;
        }
        for i in 0..x.len().saturating_sub(1) {
            let (a, b) = (x[i], x[i + 1]);
            let mut y = x.clone();
            if a.generator == b.generator && a.inverse != b.inverse {
                y.drain(i..i + 2);
            } else if commute(g, a.generator, b.generator) {
                y.swap(i, i + 1);
            } else {
                continue;
            }
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    false
}

/// All words of exactly `len` letters over the given generators.
pub fn all_words(gens: &[Vertex], len: usize) -> Vec<Word> {
    let mut out = vec![Vec::<Letter>::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                gens.iter().flat_map(move |&g| {
                    let w = w.clone();
                    [false, true].into_iter().map(move |inv| {
                        let mut v = w.clone();
                        v.push(Letter {
                            generator: g,
                            inverse: inv,
                        });
                        v
                    })
                })
            })
            .collect();
    }
    out.into_iter().map(Word::from_letters).collect()
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters(
        (0..len)
            .map(|_| Letter {
                generator: rng.gen_range(0..n),
                inverse: rng.gen_bool(0.5),
            })
            .collect(),
    )
}

/// A word is syntactically reduced iff no pair `v^ε … v^{-ε}` has an
/// interior that commutes letter by letter with `v`.
pub fn brute_is_reduced(g: &Graph, w: &Word) -> bool {
    let ls = w.letters();
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            if ls[i].generator == ls[j].generator
                && ls[i].inverse != ls[j].inverse
                && ls[i + 1..j]
                    .iter()
                    .all(|b| !g.neighbors(ls[i].generator).contains(&b.generator))
            {
                return false;
            }
        }
    }
    true
}

/// Random reduced word by rejection of letters that create a cancellation.
pub fn random_reduced_word<R: Rng>(rng: &mut R, g: &Graph, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    let mut ls: Vec<Letter> = Vec::new();
    let mut attempts = 0;
    while ls.len() < len && attempts < 100 {
        attempts += 1;
        let l = Letter {
            generator: rng.gen_range(0..g.order()),
            inverse: rng.gen_bool(0.5),
        };
        let mut next = ls.clone();
        next.push(l);
        if brute_is_reduced(g, &Word::from_letters(next.clone())) {
            ls = next;
        }
    }
    Word::from_letters(ls)
}

/// Every path (as a vertex list) from `start`, by exhaustive extension.
pub fn brute_paths(g: &Graph, start: Vertex) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![start]];
    while let Some(p) = stack.pop() {
        let last = *p.last().unwrap();
        for &x in g.neighbors(last) {
            if !p.contains(&x) {
                let mut q = p.clone();
                q.push(x);
                stack.push(q);
            }
        }
        out.push(p);
    }
    out
}

pub fn brute_is_induced(g: &Graph, p: &[Vertex]) -> bool {
    (0..p.len()).all(|i| (i + 2..p.len()).all(|j| !g.neighbors(p[i]).contains(&p[j])))
}

pub fn brute_is_semi_induced(g: &Graph, ord: &TotalOrder, p: &[Vertex]) -> bool {
    (0..p.len()).all(|i| {
        (i + 2..p.len())
            .all(|j| !(g.neighbors(p[i]).contains(&p[j]) && ord.rank(p[j]) < ord.rank(p[i + 1])))
    })
}

/// Lifts `alpha` from `start` by brute force over domain neighbors; `None`
/// if some step has no preimage neighbor.
pub fn brute_lift(f: &GraphMap, alpha: &[Vertex], start: Vertex) -> Option<Vec<Vertex>> {
    let mut out = vec![start];
    for &x in &alpha[1..] {
        let at = *out.last().unwrap();
        let cands: Vec<Vertex> = f
            .domain()
            .neighbors(at)
            .iter()
            .copied()
            .filter(|&y| f.image(y) == x)
            .collect();
        match cands.as_slice() {
            [y] => out.push(*y),
            _ => return None,
        }
    }
    Some(out)
}

/// SIPL for `base` checked over every semi-induced path (not only maximal
/// ones).
pub fn brute_sipl(f: &GraphMap, ord: &TotalOrder, base: &[Vertex]) -> bool {
    base.iter().all(|&b| {
        brute_paths(f.codomain(), f.image(b))
            .iter()
            .filter(|p| brute_is_semi_induced(f.codomain(), ord, p))
            .all(|p| brute_lift(f, p, b).is_some())
    })
}

pub fn brute_is_tree(g: &Graph) -> bool {
    if g.order() == 0 {
        return false;
    }
    let edges: usize = g.vertices().map(|v| g.neighbors(v).len()).sum::<usize>() / 2;
    let mut seen = vec![false; g.order()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &x in g.neighbors(v) {
            if !seen[x] {
                seen[x] = true;
                stack.push(x);
            }
        }
    }
    seen.iter().all(|&s| s) && edges + 1 == g.order()
}

pub fn brute_is_immersion(f: &GraphMap) -> bool {
    f.domain().vertices().all(|v| {
        let imgs: Vec<Vertex> = f
            .domain()
            .neighbors(v)
            .iter()
            .map(|&x| f.image(x))
            .collect();
        let set: BTreeSet<Vertex> = imgs.iter().copied().collect();
        set.len() == imgs.len()
            && imgs
                .iter()
                .all(|&t| f.codomain().neighbors(f.image(v)).contains(&t))
    })
}

/// Random connected graph on `n` vertices: a random spanning tree plus
/// random extra edges.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.35) {
                edges.insert((u, v));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::from_index_edges(names(n), &edges).unwrap()
}

/// A random subtree of the universal cover containing the empty walk at 0,
/// grown one leaf at a time.
pub fn random_cover_subtree<R: Rng>(rng: &mut R, g: &Graph, max_size: usize) -> Vec<Walk> {
    let target = rng.gen_range(1..=max_size);
    let mut walks = vec![Walk::root(0)];
    let mut set: BTreeSet<Walk> = walks.iter().cloned().collect();
    let mut attempts = 0;
    while walks.len() < target && attempts < 200 {
        attempts += 1;
        let w = walks.choose(rng).unwrap().clone();
        let ns = g.neighbors(w.projection());
        if ns.is_empty() {
            break;
        }
        let x = *ns.choose(rng).unwrap();
        let next = w.extend(x);
        if set.insert(next.clone()) {
            walks.push(next);
        }
    }
    walks
}

pub fn random_order<R: Rng>(rng: &mut R, g: &Graph) -> TotalOrder {
    let mut seq: Vec<Vertex> = g.vertices().collect();
    seq.shuffle(rng);
    TotalOrder::from_sequence(g, seq).unwrap()
}
