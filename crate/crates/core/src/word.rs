//! Words and the word problem in `G(Γ)`, where generators commute exactly
//! when their vertices are *not* adjacent.
//!
//! A cancellation of `v` in `w` is a subword `v^{±1} w₁ v^{∓1}` whose interior
//! letters all commute with `v`; it is innermost when `w₁` does not contain
//! `v^{±1}`. A word is reduced iff it has no (innermost) cancellation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::Result;

/// `v` or `v⁻¹`. Letters sort by generator index, then `v` before `v⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Vertex,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Vertex, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: Vertex) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: Vertex) -> Self {
        Letter::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A word over the generators of some `G(Γ)`. The graph is supplied to each
/// operation that needs it.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn subword(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Generators occurring in the word as written.
    pub fn support(&self) -> VertexSet {
        self.0.iter().map(|l| l.generator).collect()
    }

    pub fn contains_generator(&self, v: Vertex) -> bool {
        self.0.iter().any(|l| l.generator == v)
    }

    /// Checks every generator against `g`.
    pub fn check(&self, g: &Graph) -> Result<()> {
        for l in &self.0 {
            g.check(l.generator)?;
        }
        Ok(())
    }

    /// Parses whitespace-separated `name` / `name^-1` tokens.
    pub fn parse(g: &Graph, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => match tok.strip_suffix("^1") {
                    Some(n) => (n, false),
                    None => (tok, false),
                },
            };
            letters.push(Letter::new(g.vertex_checked(name)?, inverse));
        }
        Ok(Word(letters))
    }

    /// Text form; `ε` is rendered as the empty string.
    pub fn to_text(&self, g: &Graph) -> String {
        format!("{}", self.display(g))
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> DisplayWord<'a> {
        DisplayWord {
            word: self,
            graph: g,
        }
    }
}

pub struct DisplayWord<'a> {
    word: &'a Word,
    graph: &'a Graph,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.name(l.generator))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// Whether `u` and `v` commute in `G(g)`: distinct and not adjacent.
pub fn commutes(g: &Graph, u: Vertex, v: Vertex) -> Result<bool> {
    g.check(u)?;
    g.check(v)?;
    Ok(commute(g, u, v))
}

#[inline]
fn commute(g: &Graph, u: Vertex, v: Vertex) -> bool {
    u != v && !g.adjacent(u, v)
}

/// The leftmost (by right end) innermost cancellation `(i, j)`.
pub fn find_cancellation(g: &Graph, w: &Word) -> Option<(usize, usize)> {
    let ls = &w.0;
    for j in 0..ls.len() {
        if let Some(i) = partner(g, &ls[..j], ls[j]) {
            return Some((i, j));
        }
    }
    None
}

// index in `prefix` of a letter cancelling with `a` across commuting letters
fn partner(g: &Graph, prefix: &[Letter], a: Letter) -> Option<usize> {
    for i in (0..prefix.len()).rev() {
        let b = prefix[i];
        if b.generator == a.generator {
            return (b.inverse != a.inverse).then_some(i);
        }
        if !commute(g, b.generator, a.generator) {
            return None;
        }
    }
    None
}

pub fn is_reduced(g: &Graph, w: &Word) -> bool {
    find_cancellation(g, w).is_none()
}

/// Every innermost cancellation pair of `w`, ordered by right end.
pub fn all_cancellations(g: &Graph, w: &Word) -> Vec<(usize, usize)> {
    let ls = &w.0;
    (0..ls.len())
        .filter_map(|j| partner(g, &ls[..j], ls[j]).map(|i| (i, j)))
        .collect()
}

/// First innermost cancellation of the generator `v`.
pub fn find_innermost_cancellation(
    g: &Graph,
    w: &Word,
    v: Vertex,
) -> Result<Option<(usize, usize)>> {
    g.check(v)?;
    let ls = &w.0;
    let mut prev: Option<usize> = None;
    for (j, l) in ls.iter().enumerate() {
        if l.generator != v {
            continue;
        }
        if let Some(i) = prev {
            if ls[i].inverse != l.inverse
                && ls[i + 1..j].iter().all(|b| !g.adjacent(b.generator, v))
            {
                return Ok(Some((i, j)));
            }
        }
        prev = Some(j);
    }
    Ok(None)
}

/// Appends `a` to the reduced word `stack`, cancelling it if possible, so
/// that `stack` stays reduced.
pub(crate) fn push_reduced(g: &Graph, stack: &mut Vec<Letter>, a: Letter) {
    match partner(g, stack, a) {
        Some(i) => {
            stack.remove(i);
        }
        None => stack.push(a),
    }
}

/// Reduces `w` by deleting cancellation pairs, leftmost-innermost first.
///
/// Implemented as a single left-to-right pass that keeps the processed
/// prefix reduced; this deletes exactly the pairs the repeated
/// leftmost-innermost strategy deletes.
pub fn reduce(g: &Graph, w: &Word) -> Word {
    let mut stack = Vec::with_capacity(w.len());
    for &a in &w.0 {
        push_reduced(g, &mut stack, a);
    }
    Word(stack)
}

/// Support of the element represented by `w`.
pub fn support_elem(g: &Graph, w: &Word) -> VertexSet {
    reduce(g, w).support()
}

/// Word length of the element represented by `w`.
pub fn length_elem(g: &Graph, w: &Word) -> usize {
    reduce(g, w).len()
}

pub fn is_trivial(g: &Graph, w: &Word) -> bool {
    reduce(g, w).is_empty()
}

pub fn equal_elements(g: &Graph, w1: &Word, w2: &Word) -> bool {
    is_trivial(g, &w1.concat(&w2.inverse()))
}

/// The lexicographically least reduced word representing the same element.
pub fn normal_form(g: &Graph, w: &Word) -> Word {
    let mut rest = reduce(g, w).0;
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // letters that can be commuted to the front of `rest`
        let mut best: Option<usize> = None;
        for j in 0..rest.len() {
            let a = rest[j];
            if rest[..j]
                .iter()
                .all(|b| commute(g, b.generator, a.generator))
                && best.is_none_or(|k| a < rest[k])
            {
                best = Some(j);
            }
        }
        out.push(rest.remove(best.expect("some letter is movable")));
    }
    Word(out)
}

/// Whether appending `a` to the reduced (resp. normal-form) word `prefix`
/// keeps it reduced (resp. in normal form).
pub(crate) fn can_append(g: &Graph, prefix: &[Letter], a: Letter, normal: bool) -> bool {
    for b in prefix.iter().rev() {
        if b.generator == a.generator {
            return b.inverse == a.inverse;
        }
        if !commute(g, b.generator, a.generator) {
            return true;
        }
        if normal && b.generator > a.generator {
            return false;
        }
    }
    true
}

/// The generator alphabet of `g` in letter order.
pub fn alphabet(g: &Graph) -> Vec<Letter> {
    g.vertices()
        .flat_map(|v| [Letter::pos(v), Letter::neg(v)])
        .collect()
}

/// Reduced words in length-then-lexicographic order.
///
/// By default every syntactically reduced word is produced; with
/// [`ReducedWords::normal_forms`] only lexicographically least
/// representatives (one per element) are.
pub struct ReducedWords<'g> {
    g: &'g Graph,
    alphabet: Vec<Letter>,
    normal: bool,
    len: usize,
    max_len: usize,
    word: Vec<Letter>,
    choice: Vec<usize>,
    fresh: bool,
    done: bool,
}

impl<'g> ReducedWords<'g> {
    pub fn new(g: &'g Graph, max_len: usize) -> Self {
        ReducedWords {
            g,
            alphabet: alphabet(g),
            normal: false,
            len: 0,
            max_len,
            word: Vec::new(),
            choice: Vec::new(),
            fresh: true,
            done: false,
        }
    }

    pub fn normal_forms(mut self) -> Self {
        self.normal = true;
        self
    }

    /// Skips words shorter than `min_len`.
    pub fn min_len(mut self, min_len: usize) -> Self {
        self.len = min_len;
        self.done = min_len > self.max_len;
        self
    }

    /// Restricts the alphabet to generators accepted by `keep`.
    pub fn generators(mut self, keep: impl Fn(Vertex) -> bool) -> Self {
        self.alphabet.retain(|l| keep(l.generator));
        self
    }

    fn advance(&mut self) -> bool {
        let mut start = if self.fresh {
            0
        } else {
            match self.choice.pop() {
                None => return false,
                Some(k) => {
                    self.word.pop();
                    k + 1
                }
            }
        };
        loop {
            if self.word.len() == self.len {
                return true;
            }
            let next = (start..self.alphabet.len())
                .find(|&k| can_append(self.g, &self.word, self.alphabet[k], self.normal));
            match next {
                Some(k) => {
                    self.word.push(self.alphabet[k]);
                    self.choice.push(k);
                    start = 0;
                }
                None => match self.choice.pop() {
                    None => return false,
                    Some(k) => {
                        self.word.pop();
                        start = k + 1;
                    }
                },
            }
        }
    }
}

impl Iterator for ReducedWords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while !self.done {
            let found = self.advance();
            self.fresh = false;
            if found {
                return Some(Word(self.word.clone()));
            }
            self.len += 1;
            self.word.clear();
            self.choice.clear();
            self.fresh = true;
            if self.len > self.max_len {
                self.done = true;
            }
        }
        None
    }
}

/// All syntactically reduced words of length at most `max_len`.
pub fn enumerate_reduced_words(g: &Graph, max_len: usize) -> ReducedWords<'_> {
    ReducedWords::new(g, max_len)
}
