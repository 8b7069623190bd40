//! Return words of a block and the generator code of a connection.

use std::collections::BTreeSet;

use crate::codes::Code;
use crate::words::{factors, Certificate, Connection, SubshiftLanguage, Substitution, Word};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone)]
pub struct ReturnData {
    pub block: Word,
    /// Every factor of this length contains `block`.
    pub recurrence_bound: usize,
    /// Sorted length-lexicographically.
    pub returns: Vec<Word>,
    /// Length of the factors that were scanned.
    pub window: usize,
    pub certificate: Certificate,
}

fn longest_free_factor(lang: &SubshiftLanguage, u: &Word) -> Option<usize> {
    let mut longest = None;
    for len in 1..=lang.max_len() {
        if lang.factors_of_len(len).iter().any(|f| !f.contains_factor(&u.0)) {
            longest = Some(len);
        } else {
            break;
        }
    }
    longest
}

/// Least `K` such that every factor of length `K` contains `u`.
///
/// The factor length is doubled until some length admits no `u`-free factor.
pub fn recurrence_bound(phi: &Substitution, u: &Word, limits: &Limits) -> Result<usize> {
    phi.check_word(u)?;
    if u.is_empty() {
        return Err(Error::input("block must be nonempty"));
    }
    if !factors(phi, u.len(), limits)?.contains(u)? {
        return Err(Error::input(format!("{} is not a factor of the subshift", phi.alphabet().render(u))));
    }
    let mut len = (2 * u.len()).max(8);
    loop {
        let lang = factors(phi, len, limits)?;
        match longest_free_factor(&lang, u) {
            Some(l) if l == len => {}
            Some(l) => return Ok(l + 1),
            None => return Ok(1),
        }
        if len >= limits.max_recurrence {
            return Err(Error::resource(format!(
                "factors of length {len} still avoid the block; recurrence cap {} reached",
                limits.max_recurrence
            )));
        }
        len = (2 * len).min(limits.max_recurrence);
    }
}

/// `v` is a return word of `u` when `vu` is a factor beginning with `u` and
/// containing `u` only at positions `0` and `|v|`.
pub fn is_return_word(lang: &SubshiftLanguage, u: &Word, v: &Word) -> Result<bool> {
    let vu = v.concat(u);
    Ok(!v.is_empty() && lang.contains(&vu)? && vu.occurrences(&u.0).eq([0, v.len()]))
}

/// Complete set of return words of `u`.
///
/// A return word has length at most `K`, the recurrence bound, so it appears as
/// the gap between consecutive occurrences of `u` inside some factor of length
/// `2K + 2|u|`.
pub fn return_words(phi: &Substitution, u: &Word, limits: &Limits) -> Result<ReturnData> {
    let k = recurrence_bound(phi, u, limits)?;
    let window = 2 * k + 2 * u.len();
    let lang = factors(phi, window, limits)?;
    let mut found = BTreeSet::new();
    for f in lang.factors_of_len(window) {
        let occ: Vec<usize> = f.occurrences(&u.0).collect();
        for pair in occ.windows(2) {
            found.insert(f.factor(pair[0], pair[1] - pair[0]));
        }
    }
    for v in &found {
        if !is_return_word(&lang, u, v)? || v.len() > k {
            return Err(Error::structural(format!(
                "harvested gap {} is not a return word",
                phi.alphabet().render(v)
            )));
        }
    }
    Ok(ReturnData {
        block: u.clone(),
        recurrence_bound: k,
        returns: found.into_iter().collect(),
        window,
        certificate: lang.certificate().clone(),
    })
}

/// `X = b⁻¹R(ba)b` for a connection `ba`.
pub fn x_set(phi: &Substitution, c: Connection, limits: &Limits) -> Result<Code> {
    let data = return_words(phi, &c.word(), limits)?;
    x_set_from_returns(phi, c, &data)
}

pub fn x_set_from_returns(phi: &Substitution, c: Connection, data: &ReturnData) -> Result<Code> {
    let mut out = Vec::with_capacity(data.returns.len());
    for r in &data.returns {
        if r.first() != Some(c.b) {
            return Err(Error::structural(format!(
                "return word {} does not start with {}",
                phi.alphabet().render(r),
                phi.alphabet().symbol(c.b)
            )));
        }
        let mut x = r.0[1..].to_vec();
        x.push(c.b);
        out.push(Word(x));
    }
    Code::new(phi.alphabet().clone(), out)
}
