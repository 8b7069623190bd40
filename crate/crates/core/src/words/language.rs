//! Finite factor sets of the subshift generated by a substitution.

use std::collections::HashSet;

use serde::Serialize;

use super::{Letter, Substitution, Word};
use crate::{Error, Limits, Result};

/// Why a factor set is believed complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Letter whose iterates were scanned.
    pub seed: Letter,
    /// Iterate `k` such that `φ^(k-1)(seed)` and `φ^k(seed)` have the same factors.
    pub iterate: usize,
    /// `min_a |φ^k(a)|`, at least twice the factor length.
    pub min_image_len: u128,
    /// Number of factors of maximal length.
    pub top_count: usize,
}

/// Factors of every length up to `max_len`, sorted length-lexicographically.
#[derive(Debug, Clone)]
pub struct SubshiftLanguage {
    source: Substitution,
    max_len: usize,
    by_len: Vec<Vec<Word>>,
    certificate: Certificate,
}

impl SubshiftLanguage {
    pub fn source(&self) -> &Substitution {
        &self.source
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// Factors of length exactly `len` (empty past `max_len`).
    pub fn factors_of_len(&self, len: usize) -> &[Word] {
        self.by_len.get(len).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Every stored factor, shortest first.
    pub fn all_factors(&self) -> impl Iterator<Item = &Word> {
        self.by_len.iter().skip(1).flatten()
    }

    /// Membership; words longer than `max_len` are rejected with an error.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        if w.len() > self.max_len {
            return Err(Error::input(format!(
                "word of length {} exceeds the computed factor length {}",
                w.len(),
                self.max_len
            )));
        }
        Ok(w.is_empty() || self.by_len[w.len()].binary_search(w).is_ok())
    }
}

fn length_set(w: &[Letter], len: usize) -> HashSet<&[Letter]> {
    if w.len() < len {
        return HashSet::new();
    }
    w.windows(len).collect()
}

/// Computes all factors of length `≤ max_len` of the subshift of `φ`.
///
/// Iterates `φ` on the first letter until two consecutive iterates share the same
/// factors of length `max_len` and every `φ^k(a)` has length at least `2·max_len`.
/// Shorter factors are the prefixes of longer ones, since every factor of a
/// minimal subshift extends to the right.
pub fn factors(phi: &Substitution, max_len: usize, limits: &Limits) -> Result<SubshiftLanguage> {
    if max_len == 0 {
        return Err(Error::input("factor length must be at least 1"));
    }
    let seed: Letter = 0;
    let mut current = phi.image(seed).clone();
    let mut previous: Option<Vec<Word>> = None;
    for k in 1..=limits.max_iterates {
        let mut top: Vec<Word> = length_set(&current.0, max_len).into_iter().map(|s| Word(s.to_vec())).collect();
        top.sort();
        let min_len = phi.image_lengths(k).into_iter().min().unwrap_or(0);
        if min_len >= 2 * max_len as u128 && previous.as_ref() == Some(&top) && !top.is_empty() {
            let mut by_len = vec![Vec::new(); max_len + 1];
            by_len[0].push(Word::default());
            for (l, slot) in by_len.iter_mut().enumerate().take(max_len).skip(1) {
                let mut set: Vec<Word> = top.iter().map(|w| w.factor(0, l)).collect();
                set.sort();
                set.dedup();
                *slot = set;
            }
            let certificate = Certificate { seed, iterate: k, min_image_len: min_len, top_count: top.len() };
            by_len[max_len] = top;
            return Ok(SubshiftLanguage { source: phi.clone(), max_len, by_len, certificate });
        }
        previous = Some(top);
        if k == limits.max_iterates {
            break;
        }
        current = phi.power_apply(1, &current, limits)?;
    }
    Err(Error::resource(format!(
        "factors of length {max_len} did not stabilize within {} iterates",
        limits.max_iterates
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(phi: &Substitution, ws: &[&str]) -> Vec<Word> {
        let mut v: Vec<Word> = ws.iter().map(|s| phi.alphabet().parse(s).unwrap()).collect();
        v.sort();
        v
    }

    fn brute(phi: &Substitution, k: usize, len: usize) -> Vec<Word> {
        let w = phi.power_apply(k, &Word::letter(0), &Limits::default()).unwrap();
        let mut v: Vec<Word> = w.0.windows(len).map(|s| Word(s.to_vec())).collect();
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn thue_morse_factors() {
        let tau = Substitution::thue_morse();
        let l = factors(&tau, 2, &Limits::default()).unwrap();
        assert_eq!(l.factors_of_len(2), words(&tau, &["aa", "ab", "ba", "bb"]).as_slice());
        assert_eq!(l.factors_of_len(2), brute(&tau, 5, 2).as_slice());
        let l3 = factors(&tau, 3, &Limits::default()).unwrap();
        assert!(!l3.contains(&tau.alphabet().parse("aaa").unwrap()).unwrap());
        assert!(!l3.contains(&tau.alphabet().parse("bbb").unwrap()).unwrap());
        assert_eq!(l3.factors_of_len(3), brute(&tau, 8, 3).as_slice());
    }

    #[test]
    fn matches_long_iterate_for_all_lengths() {
        for phi in [Substitution::thue_morse(), Substitution::ab_a3b(), Substitution::ac_aca2c_ac2ac()] {
            let l = factors(&phi, 8, &Limits::default()).unwrap();
            let k = l.certificate().iterate + 2;
            for len in 1..=8 {
                assert_eq!(l.factors_of_len(len), brute(&phi, k, len).as_slice(), "{phi} len {len}");
            }
        }
    }

    #[test]
    fn ab_a3b_contains_ba() {
        let phi = Substitution::ab_a3b();
        let l = factors(&phi, 2, &Limits::default()).unwrap();
        assert!(l.contains(&phi.alphabet().parse("ba").unwrap()).unwrap());
    }

    #[test]
    fn iterate_cap_is_reported() {
        let limits = Limits { max_iterates: 2, ..Limits::default() };
        let err = factors(&Substitution::thue_morse(), 10, &limits).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }
}
