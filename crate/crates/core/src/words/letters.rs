//! First/last-letter dynamics, weak primitivity, connections.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{factors, Letter, Substitution, Word};
use crate::omega::{omega_of_map, rho, OmegaPower, Rho};
use crate::{Error, Limits, Result};

/// Total self-map of an alphabet, as an image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LetterMap(pub Vec<usize>);

impl LetterMap {
    pub fn apply(&self, l: Letter) -> Letter {
        self.0[usize::from(l)] as Letter
    }

    /// Least `k ≥ 1` with `f^k(l) = l`, if `l` is periodic.
    pub fn cycle_length(&self, l: Letter) -> Option<usize> {
        let mut x = self.apply(l);
        for k in 1..=self.0.len() {
            if x == l {
                return Some(k);
            }
            x = self.apply(x);
        }
        None
    }
}

/// Letter `ℓ` ↦ first letter of `φ(ℓ)`.
pub fn first_letter_map(phi: &Substitution) -> LetterMap {
    LetterMap(phi.images().iter().map(|w| usize::from(w.0[0])).collect())
}

/// Letter `ℓ` ↦ last letter of `φ(ℓ)`.
pub fn last_letter_map(phi: &Substitution) -> LetterMap {
    LetterMap(phi.images().iter().map(|w| usize::from(*w.0.last().unwrap())).collect())
}

/// Idempotent power of a finite self-map.
pub fn omega_power_function(f: &LetterMap) -> OmegaPower<LetterMap> {
    let w = omega_of_map(&f.0);
    OmegaPower {
        value: LetterMap(w.value),
        exponent: w.exponent,
        preperiod: w.preperiod,
        period: w.period,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "n")]
pub enum WeakPrimitivity {
    /// Least `n` at which every `φⁿ(a)` has length ≥ 2 and all share their 2-factors.
    Yes(usize),
    /// No power can ever satisfy the condition.
    No,
    /// Cap reached without a verdict.
    Inconclusive,
}

type PairSet = BTreeSet<(Letter, Letter)>;

/// Decides weak primitivity without expanding `φⁿ`.
///
/// The 2-factors, first and last letters and the clamped length `min(|φⁿ(a)|, 2)`
/// of every `φⁿ(a)` determine the same data for `φⁿ⁺¹`. That state lives in a
/// finite set, so a repeated state without success proves the answer is no.
pub fn is_weakly_primitive(phi: &Substitution, n_cap: usize) -> WeakPrimitivity {
    let n = phi.size();
    let first = first_letter_map(phi);
    let last = last_letter_map(phi);
    let mut first_n = first.0.clone();
    let mut last_n = last.0.clone();
    let mut len2: Vec<u8> = phi.images().iter().map(|w| w.len().min(2) as u8).collect();
    let mut pairs: Vec<PairSet> = phi
        .images()
        .iter()
        .map(|w| w.0.windows(2).map(|p| (p[0], p[1])).collect())
        .collect();
    let mut seen = HashSet::new();
    for m in 1..=n_cap {
        if len2.iter().all(|&l| l == 2) && pairs.iter().all(|p| *p == pairs[0]) {
            return WeakPrimitivity::Yes(m);
        }
        if !seen.insert((first_n.clone(), last_n.clone(), len2.clone(), pairs.clone())) {
            return WeakPrimitivity::No;
        }
        let mut next_pairs = Vec::with_capacity(n);
        let mut next_len = Vec::with_capacity(n);
        for img in phi.images() {
            let mut set = PairSet::new();
            for &c in &img.0 {
                set.extend(pairs[usize::from(c)].iter().copied());
            }
            for p in img.0.windows(2) {
                set.insert((last_n[usize::from(p[0])] as Letter, first_n[usize::from(p[1])] as Letter));
            }
            next_pairs.push(set);
            let total: u32 = img.0.iter().map(|&c| u32::from(len2[usize::from(c)])).sum();
            next_len.push(total.min(2) as u8);
        }
        first_n = first.0.iter().map(|&c| first_n[c]).collect();
        last_n = last.0.iter().map(|&c| last_n[c]).collect();
        pairs = next_pairs;
        len2 = next_len;
    }
    WeakPrimitivity::Inconclusive
}

/// Letters that occur in some `φ^ω(a)`.
///
/// With `σ(S)` the set of letters of `φ(S)`, this is `⋃ₐ σ^ω({a})`. The ω-power
/// is read off each singleton orbit: every term at an index that is a multiple
/// of the orbit period and past its tail is the same.
pub fn ultimate_alphabet(phi: &Substitution) -> Vec<Letter> {
    let n = phi.size();
    let sigma = |s: &Vec<bool>| {
        let mut out = vec![false; n];
        for (l, &on) in s.iter().enumerate() {
            if on {
                for &c in &phi.image(l as Letter).0 {
                    out[usize::from(c)] = true;
                }
            }
        }
        out
    };
    let mut union = vec![false; n];
    for a in 0..n {
        let mut start = vec![false; n];
        start[a] = true;
        let orbit: Rho<Vec<bool>> = rho(start, sigma);
        let k = crate::omega::omega_exponent(orbit.tail, orbit.period);
        for (u, x) in union.iter_mut().zip(orbit.term(k)) {
            *u |= x;
        }
    }
    (0..n).filter(|&l| union[l]).map(|l| l as Letter).collect()
}

/// A two-letter block `ba` of the language such that `φ^ω(a)` begins with `a`
/// and `φ^ω(b)` ends with `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Connection {
    pub b: Letter,
    pub a: Letter,
}

impl Connection {
    pub fn word(&self) -> Word {
        Word(vec![self.b, self.a])
    }

    /// Parses a connection written as its two-letter word, e.g. `"ba"`.
    pub fn parse(phi: &Substitution, s: &str) -> Result<Self> {
        let w = phi.alphabet().parse(s)?;
        if w.len() != 2 {
            return Err(Error::input(format!("connection '{s}' must have two letters")));
        }
        Ok(Connection { b: w.0[0], a: w.0[1] })
    }

    pub fn render(&self, phi: &Substitution) -> String {
        phi.alphabet().render(&self.word())
    }
}

/// Every connection of a weakly primitive substitution, sorted.
pub fn connections(phi: &Substitution, limits: &Limits) -> Result<Vec<Connection>> {
    let lang = factors(phi, 2, limits)?;
    let first_w = omega_power_function(&first_letter_map(phi)).value;
    let last_w = omega_power_function(&last_letter_map(phi)).value;
    let mut out: Vec<Connection> = lang
        .factors_of_len(2)
        .iter()
        .filter(|w| first_w.apply(w.0[1]) == w.0[1] && last_w.apply(w.0[0]) == w.0[0])
        .map(|w| Connection { b: w.0[0], a: w.0[1] })
        .collect();
    out.sort();
    Ok(out)
}

/// Least `k ≥ 1` such that `φ^k(a)` starts with `a` and `φ^k(b)` ends with `b`.
pub fn tilde_exponent(phi: &Substitution, c: Connection) -> Result<usize> {
    let ca = first_letter_map(phi).cycle_length(c.a).ok_or_else(|| {
        Error::input("first letters of the iterates of the right letter never return to it")
    })?;
    let cb = last_letter_map(phi).cycle_length(c.b).ok_or_else(|| {
        Error::input("last letters of the iterates of the left letter never return to it")
    })?;
    Ok(lcm(ca, cb))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
