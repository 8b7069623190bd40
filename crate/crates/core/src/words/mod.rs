//! Alphabets, words and substitutions.

mod language;
mod letters;

pub use language::{factors, Certificate, SubshiftLanguage};
pub use letters::{
    connections, first_letter_map, is_weakly_primitive, last_letter_map, omega_power_function,
    tilde_exponent, ultimate_alphabet, Connection, LetterMap, WeakPrimitivity,
};

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Limits, Result};

/// Index of a letter in its [`Alphabet`].
pub type Letter = u8;

/// Finite ordered alphabet of single-codepoint symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::input("alphabet must be nonempty"));
        }
        if letters.len() > usize::from(Letter::MAX) + 1 {
            return Err(Error::input("alphabet has more than 256 letters"));
        }
        for (i, c) in letters.iter().enumerate() {
            if letters[..i].contains(c) {
                return Err(Error::input(format!("duplicate letter '{c}' in alphabet")));
            }
        }
        Ok(Alphabet { letters })
    }

    pub fn from_str_letters(s: &str) -> Result<Self> {
        Alphabet::new(s.chars())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.letters
    }

    pub fn symbol(&self, letter: Letter) -> char {
        self.letters[usize::from(letter)]
    }

    pub fn index_of(&self, c: char) -> Option<Letter> {
        self.letters.iter().position(|&x| x == c).map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letters.len()).map(|i| i as Letter)
    }

    /// Parses a concatenation of alphabet symbols. The empty string is rejected.
    pub fn parse(&self, s: &str) -> Result<Word> {
        let w = self.parse_allow_empty(s)?;
        if w.is_empty() {
            return Err(Error::input("empty word"));
        }
        Ok(w)
    }

    pub fn parse_allow_empty(&self, s: &str) -> Result<Word> {
        s.chars()
            .map(|c| {
                self.index_of(c)
                    .ok_or_else(|| Error::input(format!("letter '{c}' is not in the alphabet")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, w: &Word) -> String {
        w.0.iter().map(|&l| self.symbol(l)).collect()
    }
}

/// Finite word over an alphabet, stored as letter indices.
///
/// Words are ordered length-lexicographically by letter index, so every
/// `BTreeSet<Word>` iterates in the canonical output order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat_all<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.0);
        }
        Word(v)
    }

    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn starts_with(&self, prefix: &[Letter]) -> bool {
        self.0.starts_with(prefix)
    }

    /// Start positions of every occurrence of `u`.
    pub fn occurrences<'a>(&'a self, u: &'a [Letter]) -> impl Iterator<Item = usize> + 'a {
        let n = u.len();
        (0..(self.len() + 1).saturating_sub(n.max(1)))
            .filter(move |&i| n > 0 && &self.0[i..i + n] == u)
    }

    pub fn contains_factor(&self, u: &[Letter]) -> bool {
        self.occurrences(u).next().is_some()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Endomorphism of the free semigroup `A⁺`, given by its letter images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::input(format!(
                "substitution has {} images for {} letters",
                images.len(),
                alphabet.len()
            )));
        }
        for (l, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::input(format!(
                    "image of '{}' is empty",
                    alphabet.symbol(l as Letter)
                )));
            }
            if img.0.iter().any(|&x| usize::from(x) >= alphabet.len()) {
                return Err(Error::input("image uses a letter outside the alphabet"));
            }
        }
        Ok(Substitution { alphabet, images })
    }

    /// Builds a substitution from `(letter, image)` rules written as strings.
    /// The alphabet is the sequence of rule letters, in order.
    pub fn from_rules(rules: &[(char, &str)]) -> Result<Self> {
        let alphabet = Alphabet::new(rules.iter().map(|r| r.0))?;
        let images = rules
            .iter()
            .map(|(_, img)| alphabet.parse(img))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(alphabet, images)
    }

    /// `a ↦ ab, b ↦ ba`.
    pub fn thue_morse() -> Self {
        Substitution::from_rules(&[('a', "ab"), ('b', "ba")]).expect("valid rules")
    }

    /// `a ↦ ab, b ↦ aaab`.
    pub fn ab_a3b() -> Self {
        Substitution::from_rules(&[('a', "ab"), ('b', "aaab")]).expect("valid rules")
    }

    /// `a ↦ ac, b ↦ acaac, c ↦ accac`.
    pub fn ac_aca2c_ac2ac() -> Self {
        Substitution::from_rules(&[('a', "ac"), ('b', "acaac"), ('c', "accac")])
            .expect("valid rules")
    }

    /// Looks up one of the named substitutions accepted by the command line.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "thue-morse" => Some(Self::thue_morse()),
            "ab-a3b" => Some(Self::ab_a3b()),
            "ac-aca2c-ac2ac" => Some(Self::ac_aca2c_ac2ac()),
            _ => None,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, l: Letter) -> &Word {
        &self.images[usize::from(l)]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if w.0.iter().any(|&l| usize::from(l) >= self.size()) {
            return Err(Error::input("word uses a letter outside the alphabet"));
        }
        Ok(())
    }

    /// `φ(w)`; the empty word maps to itself.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.check_word(w)?;
        Ok(self.apply_unchecked(w))
    }

    fn apply_unchecked(&self, w: &Word) -> Word {
        let len = w.0.iter().map(|&l| self.images[usize::from(l)].len()).sum();
        let mut out = Vec::with_capacity(len);
        for &l in &w.0 {
            out.extend_from_slice(&self.images[usize::from(l)].0);
        }
        Word(out)
    }

    /// `φ^k(w)`, refusing to build words longer than `limits.max_word_len`.
    pub fn power_apply(&self, k: usize, w: &Word, limits: &Limits) -> Result<Word> {
        self.check_word(w)?;
        let mut current = w.clone();
        for step in 0..k {
            let next_len: usize =
                current.0.iter().map(|&l| self.images[usize::from(l)].len()).sum();
            if next_len > limits.max_word_len {
                return Err(Error::resource(format!(
                    "iterate {} would have length {} > cap {}",
                    step + 1,
                    next_len,
                    limits.max_word_len
                )));
            }
            current = self.apply_unchecked(&current);
        }
        Ok(current)
    }

    /// `|φ^k(a)|` for every letter, saturating at `u128::MAX`.
    pub fn image_lengths(&self, k: usize) -> Vec<u128> {
        let mut lens: Vec<u128> = vec![1; self.size()];
        for _ in 0..k {
            lens = self
                .images
                .iter()
                .map(|img| {
                    img.0
                        .iter()
                        .map(|&l| lens[usize::from(l)])
                        .fold(0u128, |s, x| s.saturating_add(x))
                })
                .collect();
        }
        lens
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        if self.alphabet != other.alphabet {
            return Err(Error::input("cannot compose substitutions over different alphabets"));
        }
        let images = other.images.iter().map(|w| self.apply_unchecked(w)).collect();
        Substitution::new(self.alphabet.clone(), images)
    }

    /// `M[i][j]` = number of occurrences of letter `i` in `φ(j)`.
    pub fn incidence_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.size();
        let mut m = vec![vec![0u64; n]; n];
        for (j, img) in self.images.iter().enumerate() {
            for &i in &img.0 {
                m[usize::from(i)][j] += 1;
            }
        }
        m
    }

    /// Positivity of some power `M^k`, `k ≤ n² − 2n + 2` (Wielandt's bound).
    pub fn is_primitive(&self) -> bool {
        let n = self.size();
        let pattern: Vec<Vec<bool>> = self
            .incidence_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(|x| x > 0).collect())
            .collect();
        let bound = (n * n).saturating_sub(2 * n) + 2;
        let mut power = pattern.clone();
        for _ in 0..bound {
            if power.iter().all(|row| row.iter().all(|&x| x)) {
                return true;
            }
            power = bool_mul(&power, &pattern);
        }
        false
    }

    /// Renders the substitution as `a->ab, b->ba`.
    pub fn describe(&self) -> String {
        self.alphabet
            .letters()
            .map(|l| format!("{}->{}", self.alphabet.symbol(l), self.alphabet.render(self.image(l))))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    out[i][j] |= b[k][j];
                }
            }
        }
    }
    out
}
