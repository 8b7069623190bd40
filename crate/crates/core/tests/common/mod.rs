//! Independent oracles shared by the integration tests.
//!
//! Each one recomputes a library answer by a different, slower route.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use subshift::fingrp::{EvalMap, FiniteGroup};
use subshift::freegrp::{FreeHom, GroupWord, Syllable};
use subshift::images::bar_map;
use subshift::words::{Substitution, Word};
use subshift::Limits;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

pub const SEED: u64 = 2010;

/// Fixed-seed proptest configuration with `cases` cases.
pub fn seeded(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

/// Substitutions on 2 or 3 letters with images of length 1 to `max_image`.
pub fn substitution(max_image: usize) -> impl Strategy<Value = Substitution> {
    (2usize..=3).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(0..n as u8, 1..=max_image), n).prop_map(move |images| {
            let alphabet = subshift::words::Alphabet::new("abc".chars().take(n)).unwrap();
            Substitution::new(alphabet, images.into_iter().map(Word).collect()).unwrap()
        })
    })
}

/// Words of length up to `max_len` over the first `n` letters.
pub fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0..n as u8, 0..=max_len).prop_map(Word)
}

/// Reduced words in `n` free generators, from up to `max_len` random syllables.
pub fn group_word(n: usize, max_len: usize) -> impl Strategy<Value = GroupWord> {
    proptest::collection::vec((0..n, any::<bool>()), 0..=max_len)
        .prop_map(|v| GroupWord::reduce(v.into_iter().map(|(g, inv)| Syllable::new(g, inv))))
}

/// A prefix of `φ^k(a)` of at least `min_len` letters, for `k` large enough.
pub fn iterate_prefix(phi: &Substitution, letter: u8, min_len: usize) -> Vec<u8> {
    let mut w = Word(vec![letter]);
    while w.len() < min_len {
        let next = phi.apply(&w).unwrap();
        assert!(next.len() > w.len(), "iterates do not grow");
        w = next;
    }
    w.0
}

/// Words between consecutive occurrences of `u` in `text`, each starting with `u`.
pub fn gap_words(text: &[u8], u: &[u8]) -> BTreeSet<Vec<u8>> {
    let starts: Vec<usize> = (0..=text.len().saturating_sub(u.len())).filter(|&i| text[i..].starts_with(u)).collect();
    starts.windows(2).map(|p| text[p[0]..p[1]].to_vec()).collect()
}

/// Every factor of length `len` occurring in `text`.
pub fn scanned_factors(text: &[u8], len: usize) -> BTreeSet<Vec<u8>> {
    text.windows(len).map(<[u8]>::to_vec).collect()
}

/// Searches for two distinct factorizations of one word of length at most `max_len`.
///
/// Exhaustive two-row extension with no memoization: one row is ahead of the
/// other by a dangling word, and a hit is a dangling word that becomes empty.
pub fn has_double_factorization(words: &[Vec<u8>], max_len: usize) -> bool {
    fn extend(words: &[Vec<u8>], dangling: &[u8], len: usize, max_len: usize) -> bool {
        for z in words {
            if z.len() <= dangling.len() && dangling.starts_with(z) {
                if z.len() == dangling.len() || extend(words, &dangling[z.len()..], len, max_len) {
                    return true;
                }
            } else if z.starts_with(dangling) {
                let grown = len + z.len() - dangling.len();
                if grown <= max_len && extend(words, &z[dangling.len()..], grown, max_len) {
                    return true;
                }
            }
        }
        false
    }
    for x in words {
        for y in words {
            if x.len() < y.len() && y.starts_with(x) && y.len() <= max_len && extend(words, &y[x.len()..], y.len(), max_len)
            {
                return true;
            }
        }
    }
    false
}

/// Whether the flower automaton of `words` is unambiguous, which holds exactly for codes.
pub fn flower_unambiguous(words: &[Vec<u8>]) -> bool {
    // state 0 is the centre; every proper prefix of a word gets its own state
    let mut edges: Vec<Vec<(u8, usize)>> = vec![Vec::new()];
    for w in words {
        let mut from = 0;
        for (i, &l) in w.iter().enumerate() {
            let to = if i + 1 == w.len() {
                0
            } else {
                edges.push(Vec::new());
                edges.len() - 1
            };
            edges[from].push((l, to));
            from = to;
        }
    }
    let n = edges.len();
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    let mut forward = vec![false; n * n];
    let mut queue = VecDeque::from([0usize]);
    forward[0] = true;
    while let Some(s) = queue.pop_front() {
        let (p, q) = (s / n, s % n);
        for &(a, p2) in &edges[p] {
            for &(b, q2) in &edges[q] {
                if a == b {
                    let t = p2 * n + q2;
                    reverse[t].push(s);
                    if !forward[t] {
                        forward[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
    }
    let mut backward = vec![false; n * n];
    backward[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        for &r in &reverse[s] {
            if !backward[r] {
                backward[r] = true;
                queue.push_back(r);
            }
        }
    }
    (0..n * n).all(|s| s / n == s % n || !(forward[s] && backward[s]))
}

/// Calls `visit` on every nonempty set of distinct binary words with total length at most `total`.
pub fn for_each_binary_set(total: usize, mut visit: impl FnMut(&[Vec<u8>])) -> usize {
    let mut words = Vec::new();
    for len in 1..=total {
        for bits in 0..1u32 << len {
            words.push((0..len).rev().map(|i| (bits >> i & 1) as u8).collect::<Vec<u8>>());
        }
    }
    fn go(words: &[Vec<u8>], from: usize, budget: usize, set: &mut Vec<Vec<u8>>, visit: &mut dyn FnMut(&[Vec<u8>]), count: &mut usize) {
        for i in from..words.len() {
            if words[i].len() > budget {
                break;
            }
            set.push(words[i].clone());
            *count += 1;
            visit(set);
            go(words, i + 1, budget - words[i].len(), set, visit, count);
            set.pop();
        }
    }
    let mut count = 0;
    go(&words, 0, total, &mut Vec::new(), &mut visit, &mut count);
    count
}

/// Points of `S^X` lying on a cycle of the dual map, found by peeling off
/// points of in-degree zero until none remain.
pub fn cyclic_points(phi: &FreeHom, s: &FiniteGroup) -> Vec<EvalMap> {
    let n = phi.rank();
    let base = s.order();
    let total = base.pow(n as u32);
    let decode = |mut code: usize| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = code % base;
            code /= base;
        }
        EvalMap(v)
    };
    let encode = |f: &EvalMap| f.0.iter().fold(0, |acc, &x| acc * base + x);
    let next: Vec<usize> = (0..total).map(|c| encode(&bar_map(phi, s, &decode(c)))).collect();
    let mut indegree = vec![0usize; total];
    for &t in &next {
        indegree[t] += 1;
    }
    let mut alive = vec![true; total];
    let mut queue: Vec<usize> = (0..total).filter(|&c| indegree[c] == 0).collect();
    while let Some(c) = queue.pop() {
        alive[c] = false;
        let t = next[c];
        indegree[t] -= 1;
        if indegree[t] == 0 {
            queue.push(t);
        }
    }
    (0..total).filter(|&c| alive[c]).map(decode).collect()
}

/// Matrix of exponent sums of `Φ` modulo `p`, columns indexed by generators.
pub fn exponent_matrix(phi: &FreeHom, p: u64) -> Vec<Vec<u64>> {
    let n = phi.rank();
    let mut m = vec![vec![0i64; n]; n];
    for (j, w) in phi.images().iter().enumerate() {
        for s in w.syllables() {
            m[s.generator][j] += if s.inverse { -1 } else { 1 };
        }
    }
    m.into_iter().map(|row| row.into_iter().map(|x| x.rem_euclid(p as i64) as u64).collect()).collect()
}

pub fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u64>() % p).collect()).collect()
}

/// The idempotent power of `m`, by walking `m, m², m³, …`.
pub fn idempotent_power(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut power = m.to_vec();
    loop {
        if mat_mul(&power, &power, p) == power {
            return power;
        }
        power = mat_mul(&power, m, p);
    }
}

pub fn rank_mod(m: &[Vec<u64>], p: u64) -> usize {
    let inv = |x: u64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rows: Vec<Vec<u64>> = m.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let k = inv(rows[rank][c]);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|x| x * k % p).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Reduced products of at most `k` generators or inverses.
pub fn short_products(gens: &[GroupWord], k: usize) -> HashSet<GroupWord> {
    let steps: Vec<GroupWord> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut seen: HashSet<GroupWord> = HashSet::from([GroupWord::identity()]);
    let mut layer = vec![GroupWord::identity()];
    for _ in 0..k {
        layer = layer.iter().flat_map(|w| steps.iter().map(move |s| w.mul(s))).filter(|w| seen.insert(w.clone())).collect();
    }
    seen
}

/// Membership in `⟨gens⟩` without folding.
///
/// The bouquet of generator loops is read as an automaton whose edges can also
/// be walked backwards with inverted labels. Silent moves are added for every
/// path spelling a cancelling pair `x·x⁻¹` until nothing changes, after which
/// a reduced word lies in the subgroup exactly when it labels a closed path at
/// the base point.
pub struct BouquetOracle {
    edges: Vec<(usize, Syllable, usize)>,
    silent: Vec<Vec<bool>>,
}

impl BouquetOracle {
    pub fn new(gens: &[GroupWord]) -> Self {
        let mut edges = Vec::new();
        let mut vertices = 1;
        for g in gens {
            let syl = g.syllables();
            let mut from = 0;
            for (i, &s) in syl.iter().enumerate() {
                let to = if i + 1 == syl.len() {
                    0
                } else {
                    vertices += 1;
                    vertices - 1
                };
                edges.push((from, s, to));
                edges.push((to, s.inv(), from));
                from = to;
            }
        }
        let n = vertices;
        let mut silent = vec![vec![false; n]; n];
        for (v, row) in silent.iter_mut().enumerate() {
            row[v] = true;
        }
        loop {
            let mut changed = false;
            for &(p, x, r) in &edges {
                for &(s, y, q) in &edges {
                    if y == x.inv() && silent[r][s] && !silent[p][q] {
                        silent[p][q] = true;
                        changed = true;
                    }
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if silent[i][k] && silent[k][j] && !silent[i][j] {
                            silent[i][j] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        BouquetOracle { edges, silent }
    }

    pub fn contains(&self, w: &GroupWord) -> bool {
        let n = self.silent.len();
        let mut current: Vec<bool> = self.silent[0].clone();
        for &x in w.syllables() {
            let mut next = vec![false; n];
            for &(p, y, r) in &self.edges {
                if y == x && current[p] {
                    for (q, slot) in next.iter_mut().enumerate() {
                        *slot |= self.silent[r][q];
                    }
                }
            }
            current = next;
        }
        current[0]
    }
}

/// Every reduced word of length at most `max_len` over `n` generators.
pub fn reduced_words(n: usize, max_len: usize) -> Vec<GroupWord> {
    let letters: Vec<Syllable> = (0..n).flat_map(|g| [Syllable::new(g, false), Syllable::new(g, true)]).collect();
    let mut out = vec![GroupWord::identity()];
    let mut layer = vec![GroupWord::identity()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().filter_map(move |&s| {
                    let next = w.mul(&GroupWord::reduce([s]));
                    (next.len() == w.len() + 1).then_some(next)
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn limits() -> Limits {
    Limits::default()
}
