//! Unique decodability, parsing over a code, bounded-delay checks.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::words::{Alphabet, Letter, SubshiftLanguage, Word};
use crate::{Error, Result};

/// A finite set of nonempty words, kept sorted length-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    alphabet: Alphabet,
    words: Vec<Word>,
}

impl Code {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let set: BTreeSet<Word> = words.into_iter().collect();
        if set.is_empty() {
            return Err(Error::input("a code needs at least one word"));
        }
        if set.iter().any(Word::is_empty) {
            return Err(Error::input("code words must be nonempty"));
        }
        if set.iter().flat_map(|w| &w.0).any(|&l| usize::from(l) >= alphabet.len()) {
            return Err(Error::input("code word uses a letter outside the alphabet"));
        }
        Ok(Code { alphabet, words: set.into_iter().collect() })
    }

    pub fn from_strs(alphabet: &Alphabet, words: &[&str]) -> Result<Self> {
        let ws = words.iter().map(|s| alphabet.parse(s)).collect::<Result<Vec<_>>>()?;
        Code::new(alphabet.clone(), ws)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.words.binary_search(w).ok()
    }

    pub fn total_length(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet.render(w)
    }

    pub fn render_all(&self) -> Vec<String> {
        self.words.iter().map(|w| self.render(w)).collect()
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.render_all().join(", "))
    }
}

/// Two distinct factorizations of one word, as indices into [`Code::words`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub word: Word,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Ambiguity {
    /// Checks that both sides are distinct code-word sequences spelling `word`.
    pub fn replays(&self, code: &Code) -> bool {
        let spell = |ix: &[usize]| -> Option<Word> {
            let parts = ix.iter().map(|&i| code.words.get(i)).collect::<Option<Vec<_>>>()?;
            Some(Word::concat_all(parts))
        };
        self.left != self.right
            && spell(&self.left).as_ref() == Some(&self.word)
            && spell(&self.right).as_ref() == Some(&self.word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeCheck {
    Code,
    Ambiguous(Ambiguity),
}

impl CodeCheck {
    pub fn is_code(&self) -> bool {
        matches!(self, CodeCheck::Code)
    }
}

/// Sardinas–Patterson test, tracking for every dangling suffix `s` a pair of
/// code-word sequences with `top = bottom · s`.
pub fn is_code(code: &Code) -> CodeCheck {
    let ws = &code.words;
    let mut queue: VecDeque<(Vec<Letter>, Vec<usize>, Vec<usize>)> = VecDeque::new();
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    for (i, short) in ws.iter().enumerate() {
        for (j, long) in ws.iter().enumerate() {
            if i != j && long.len() > short.len() && long.starts_with(&short.0) {
                let s = long.0[short.len()..].to_vec();
                if seen.insert(s.clone()) {
                    queue.push_back((s, vec![j], vec![i]));
                }
            }
        }
    }
    while let Some((s, top, bottom)) = queue.pop_front() {
        for (k, c) in ws.iter().enumerate() {
            if c.0 == s {
                let mut right = bottom.clone();
                right.push(k);
                let word = Word::concat_all(top.iter().map(|&i| &ws[i]));
                return CodeCheck::Ambiguous(Ambiguity { word, left: top, right });
            }
            let (next, new_top, new_bottom) = if s.len() > c.len() && s.starts_with(&c.0) {
                let mut b = bottom.clone();
                b.push(k);
                (s[c.len()..].to_vec(), top.clone(), b)
            } else if c.len() > s.len() && c.starts_with(&s) {
                let mut b = bottom.clone();
                b.push(k);
                (c.0[s.len()..].to_vec(), b, top.clone())
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back((next, new_top, new_bottom));
            }
        }
    }
    CodeCheck::Code
}

/// `ok[i]` tells whether `w[i..]` is a concatenation of code words.
fn reachable(code: &Code, w: &[Letter]) -> Vec<bool> {
    let mut ok = vec![false; w.len() + 1];
    ok[w.len()] = true;
    for i in (0..w.len()).rev() {
        ok[i] = code.words.iter().any(|c| w[i..].starts_with(&c.0) && ok[i + c.len()]);
    }
    ok
}

/// Unique factorization of `w` over a code, as indices into [`Code::words`].
///
/// Longest code word first, restricted to positions from which the rest of
/// `w` can still be factored.
pub fn parse_indices(code: &Code, w: &Word) -> Result<Vec<usize>> {
    let ok = reachable(code, &w.0);
    if w.is_empty() || !ok[0] {
        return Err(Error::NoFactorization { word: code.render(w) });
    }
    let mut order: Vec<usize> = (0..code.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(code.words[i].len()));
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < w.len() {
        let i = *order
            .iter()
            .find(|&&i| w.0[pos..].starts_with(&code.words[i].0) && ok[pos + code.words[i].len()])
            .expect("reachable position has a continuing code word");
        out.push(i);
        pos += code.words[i].len();
    }
    if cfg!(debug_assertions) && w.len() <= 24 {
        debug_assert_eq!(factorizations(code, &w.0).len(), 1, "input set is not a code");
    }
    Ok(out)
}

/// Unique factorization of `w` over a code.
pub fn parse(code: &Code, w: &Word) -> Result<Vec<Word>> {
    Ok(parse_indices(code, w)?.into_iter().map(|i| code.words[i].clone()).collect())
}

/// Every factorization of `w` into code words, as index sequences.
pub fn factorizations(code: &Code, w: &[Letter]) -> Vec<Vec<usize>> {
    let ok = reachable(code, w);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(code: &Code, w: &[Letter], ok: &[bool], pos: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == w.len() {
            out.push(stack.clone());
            return;
        }
        for (i, c) in code.words.iter().enumerate() {
            if w[pos..].starts_with(&c.0) && ok[pos + c.len()] {
                stack.push(i);
                go(code, w, ok, pos + c.len(), stack, out);
                stack.pop();
            }
        }
    }
    if ok[0] {
        go(code, w, &ok, 0, &mut stack, &mut out);
    }
    out
}

/// Every word over an alphabet of `size` letters with length in `1..=max_len`,
/// in length-lexicographic order.
pub fn all_words(size: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::default()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..size).map(move |l| {
                    let mut v = w.0.clone();
                    v.push(l as Letter);
                    Word(v)
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Languages a bounded-delay check can range over.
pub trait FiniteLanguage {
    /// Members of length `1..=max_len`, in length-lexicographic order.
    fn words_up_to(&self, max_len: usize) -> Vec<Word>;
}

impl FiniteLanguage for SubshiftLanguage {
    fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        self.all_factors().filter(|w| w.len() <= max_len).cloned().collect()
    }
}

impl FiniteLanguage for [Word] {
    fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let set: BTreeSet<&Word> = self.iter().filter(|w| !w.is_empty() && w.len() <= max_len).collect();
        set.into_iter().cloned().collect()
    }
}

impl FiniteLanguage for Vec<Word> {
    fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        self.as_slice().words_up_to(max_len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityForm {
    /// `u c₁⋯c_m v = c′₁⋯c′_n`
    Framed,
    /// `u c₁⋯c_m = c′₁⋯c′_n v`
    Shifted,
}

/// An equality of one of the two bounded-delay shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayWitness {
    pub form: EqualityForm,
    /// Nonempty suffix of a code word, leading the left side.
    pub u: Word,
    pub left: Vec<Word>,
    pub right: Vec<Word>,
    /// Nonempty prefix of a code word, closing the left side (framed) or the right side (shifted).
    pub v: Word,
}

impl DelayWitness {
    /// The two sides as sequences of factors.
    pub fn sides(&self) -> (Vec<Word>, Vec<Word>) {
        let mut lhs = vec![self.u.clone()];
        lhs.extend(self.left.iter().cloned());
        let mut rhs = self.right.clone();
        match self.form {
            EqualityForm::Framed => lhs.push(self.v.clone()),
            EqualityForm::Shifted => rhs.push(self.v.clone()),
        }
        (lhs, rhs)
    }

    pub fn word(&self) -> Word {
        Word::concat_all(&self.sides().0)
    }

    /// An equality is reducible when both sides can be cut at a common interior position.
    pub fn is_reducible(&self) -> bool {
        let (lhs, rhs) = self.sides();
        let cuts = |parts: &[Word]| -> HashSet<usize> {
            let total: usize = parts.iter().map(Word::len).sum();
            parts
                .iter()
                .scan(0, |acc, p| {
                    *acc += p.len();
                    Some(*acc)
                })
                .filter(|&c| c < total)
                .collect()
        };
        !cuts(&lhs).is_disjoint(&cuts(&rhs))
    }

    /// Re-checks every clause of the definition against `code` and `language`.
    pub fn replays(&self, code: &Code, language: &(impl FiniteLanguage + ?Sized), n: usize) -> bool {
        let (lhs, rhs) = self.sides();
        let w = Word::concat_all(&lhs);
        let in_code = |ws: &[Word]| ws.iter().all(|c| code.index_of(c).is_some());
        let is_suffix = code.words.iter().any(|c| !self.u.is_empty() && c.0.ends_with(&self.u.0));
        let is_prefix = code.words.iter().any(|c| !self.v.is_empty() && c.0.starts_with(&self.v.0));
        w == Word::concat_all(&rhs)
            && in_code(&self.left)
            && in_code(&self.right)
            && is_suffix
            && is_prefix
            && self.left.len() + self.right.len() > n
            && language.words_up_to(w.len()).binary_search(&w).is_ok()
            && !self.is_reducible()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DelayVerdict {
    VerifiedUpToBound,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayReport {
    pub verdict: DelayVerdict,
    pub delay: usize,
    /// Longest word of the language that was examined.
    pub bound: usize,
    pub equalities_checked: u64,
    pub witness: Option<DelayWitness>,
}

/// Searches for an irreducible equality with more than `n` code words among
/// the words of `language` of length at most `len_bound`.
///
/// Words are visited in length-lexicographic order, so the reported witness
/// lives on the least word carrying one.
pub fn bounded_delay_check(
    code: &Code,
    language: &(impl FiniteLanguage + ?Sized),
    n: usize,
    len_bound: usize,
) -> DelayReport {
    let suffixes: BTreeSet<Word> = code
        .words
        .iter()
        .flat_map(|c| (0..c.len()).map(move |i| Word(c.0[i..].to_vec())))
        .collect();
    let prefixes: BTreeSet<Word> = code
        .words
        .iter()
        .flat_map(|c| (1..=c.len()).map(move |i| Word(c.0[..i].to_vec())))
        .collect();
    let mut checked = 0u64;
    let words_of = |ix: Vec<usize>| -> Vec<Word> { ix.into_iter().map(|i| code.words[i].clone()).collect() };
    for w in language.words_up_to(len_bound) {
        let full = factorizations(code, &w.0);
        let len = w.len();
        let us: Vec<&Word> = suffixes.iter().filter(|u| w.starts_with(&u.0)).collect();
        let vs: Vec<&Word> = prefixes.iter().filter(|v| w.0.ends_with(&v.0)).collect();
        for form in [EqualityForm::Framed, EqualityForm::Shifted] {
            for u in &us {
                for v in &vs {
                    let (lefts, rights) = match form {
                        EqualityForm::Framed => {
                            if u.len() + v.len() > len {
                                continue;
                            }
                            (factorizations(code, &w.0[u.len()..len - v.len()]), full.clone())
                        }
                        EqualityForm::Shifted => {
                            (factorizations(code, &w.0[u.len()..]), factorizations(code, &w.0[..len - v.len()]))
                        }
                    };
                    for l in &lefts {
                        for r in &rights {
                            if l.len() + r.len() <= n {
                                continue;
                            }
                            checked += 1;
                            let candidate = DelayWitness {
                                form,
                                u: (*u).clone(),
                                left: words_of(l.clone()),
                                right: words_of(r.clone()),
                                v: (*v).clone(),
                            };
                            if !candidate.is_reducible() {
                                return DelayReport {
                                    verdict: DelayVerdict::Counterexample,
                                    delay: n,
                                    bound: len_bound,
                                    equalities_checked: checked,
                                    witness: Some(candidate),
                                };
                            }
                        }
                    }
                }
            }
        }
    }
    DelayReport {
        verdict: DelayVerdict::VerifiedUpToBound,
        delay: n,
        bound: len_bound,
        equalities_checked: checked,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{factors, Substitution};
    use crate::Limits;

    fn ab() -> Alphabet {
        Alphabet::from_str_letters("ab").unwrap()
    }

    fn rendered(code: &Code, ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| code.render(w)).collect()
    }

    #[test]
    fn code_examples() {
        let x = Code::from_strs(&ab(), &["abba", "ababba", "abbaba", "ababbaba"]).unwrap();
        assert!(is_code(&x).is_code());
        assert!(is_code(&Code::from_strs(&ab(), &["a"]).unwrap()).is_code());
        let bad = Code::from_strs(&ab(), &["a", "ab", "ba"]).unwrap();
        match is_code(&bad) {
            CodeCheck::Ambiguous(amb) => {
                assert!(amb.replays(&bad));
                assert_eq!(bad.render(&amb.word), "aba");
            }
            CodeCheck::Code => panic!("{{a, ab, ba}} is not a code"),
        }
    }

    #[test]
    fn code_rejects_empty_input() {
        assert!(Code::new(ab(), Vec::new()).is_err());
        assert!(Code::new(ab(), vec![Word::default()]).is_err());
    }

    #[test]
    fn parse_examples() {
        let x = Code::from_strs(&ab(), &["abba", "ababba", "abbaba", "ababbaba"]).unwrap();
        let tau = Substitution::thue_morse();
        let l = Limits::default();
        let w = tau.power_apply(2, &ab().parse("abba").unwrap(), &l).unwrap();
        assert_eq!(rendered(&x, &parse(&x, &w).unwrap()), ["abbaba", "abba", "ababba"]);
        let w = tau.power_apply(2, &ab().parse("ababba").unwrap(), &l).unwrap();
        assert_eq!(rendered(&x, &parse(&x, &w).unwrap()), ["abbaba", "ababbaba", "abba", "ababba"]);
        let c = Code::from_strs(&ab(), &["ab", "ba"]).unwrap();
        assert_eq!(rendered(&c, &parse(&c, &ab().parse("ab").unwrap()).unwrap()), ["ab"]);
        assert!(matches!(parse(&c, &ab().parse("aa").unwrap()), Err(Error::NoFactorization { .. })));
    }

    #[test]
    fn parse_needs_lookahead() {
        // greedy longest match would take "ab" and get stuck
        let c = Code::from_strs(&ab(), &["a", "ab", "bb"]).unwrap();
        let w = ab().parse("abbb").unwrap();
        assert_eq!(rendered(&c, &parse(&c, &w).unwrap()), ["ab", "bb"]);
        let w = ab().parse("abb").unwrap();
        assert_eq!(rendered(&c, &parse(&c, &w).unwrap()), ["a", "bb"]);
    }

    #[test]
    fn delay_thue_morse_images() {
        let tau = Substitution::thue_morse();
        let lang = factors(&tau, 16, &Limits::default()).unwrap();
        let c = Code::from_strs(&ab(), &["ab", "ba"]).unwrap();
        let r = bounded_delay_check(&c, &lang, 4, 16);
        assert_eq!(r.verdict, DelayVerdict::VerifiedUpToBound);
        assert!(r.equalities_checked > 0);
    }

    #[test]
    fn delay_counterexample_family() {
        let c = Code::from_strs(&ab(), &["a", "ab", "bb"]).unwrap();
        let all = all_words(2, 12);
        let r = bounded_delay_check(&c, &all, 4, 12);
        assert_eq!(r.verdict, DelayVerdict::Counterexample);
        let w = r.witness.unwrap();
        assert!(w.replays(&c, &all, 4));
        let word = c.render(&w.word());
        assert!(word.starts_with('a') && word[1..].chars().all(|ch| ch == 'b'), "{word}");
    }

    #[test]
    fn delay_singleton() {
        let c = Code::from_strs(&ab(), &["a"]).unwrap();
        let all = all_words(2, 10);
        assert_eq!(bounded_delay_check(&c, &all, 1, 10).verdict, DelayVerdict::VerifiedUpToBound);
    }

    #[test]
    fn reducibility() {
        let a = ab().parse("a").unwrap();
        let bb = ab().parse("bb").unwrap();
        let abw = ab().parse("ab").unwrap();
        let b = ab().parse("b").unwrap();
        let w = DelayWitness {
            form: EqualityForm::Shifted,
            u: a.clone(),
            left: vec![bb.clone(), bb.clone()],
            right: vec![abw.clone(), bb.clone()],
            v: b,
        };
        assert!(!w.is_reducible());
        let w2 = DelayWitness { form: EqualityForm::Framed, u: a.clone(), left: vec![a.clone()], right: vec![a.clone(), a.clone(), a.clone()], v: a };
        assert!(w2.is_reducible());
    }

    #[test]
    fn all_words_counts() {
        assert_eq!(all_words(2, 3).len(), 14);
        assert_eq!(all_words(3, 2).len(), 12);
    }
}
