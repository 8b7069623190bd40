//! Free groups: reduced words, homomorphisms, Stallings graphs, abelianization.

mod abelian;
mod positive;
mod stallings;

pub use abelian::{abelianization_matrix, is_prime, matrix_omega_power, AbelianMatrix};
pub use positive::{code_transform, positive_basis_reduction, CodeTransform, PositiveReduction};
pub use stallings::{fold, fold_with_order, is_automorphism, FoldOrder, StallingsGraph};

use std::fmt;

use crate::codes::Code;
use crate::words::{Substitution, Word};
use crate::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: usize,
    pub inverse: bool,
}

impl Syllable {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Syllable { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Syllable { generator: self.generator, inverse: !self.inverse }
    }
}

/// Freely reduced word in a free group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(Vec<Syllable>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        GroupWord(vec![Syllable::new(g, false)])
    }

    /// Free reduction of an arbitrary sequence of syllables.
    pub fn reduce(raw: impl IntoIterator<Item = Syllable>) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in raw {
            if out.last() == Some(&s.inv()) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        GroupWord(out)
    }

    /// A positive word, reading letter `i` as generator `i`.
    pub fn from_positive(w: &Word) -> Self {
        GroupWord(w.0.iter().map(|&l| Syllable::new(usize::from(l), false)).collect())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        GroupWord::reduce(self.0.iter().chain(&other.0).copied())
    }

    pub fn product<'a>(parts: impl IntoIterator<Item = &'a GroupWord>) -> GroupWord {
        GroupWord::reduce(parts.into_iter().flat_map(|p| p.0.iter().copied()))
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|s| s.inv()).collect())
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|s| !s.inverse)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|s| s.generator).max()
    }

    /// Parses a word over named generators.
    ///
    /// Generator names are matched longest first; a name may be followed by
    /// `^-1` or `⁻¹`. Whitespace and `·` separate tokens and are otherwise ignored.
    pub fn parse(names: &[String], s: &str) -> Result<GroupWord> {
        let mut sorted: Vec<(usize, &str)> = names.iter().enumerate().map(|(i, n)| (i, n.as_str())).collect();
        sorted.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
        let mut raw = Vec::new();
        let mut rest = s;
        loop {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '·' || c == '*');
            if rest.is_empty() {
                break;
            }
            if let Some(r) = rest.strip_prefix('1') {
                rest = r;
                continue;
            }
            let (g, name) = sorted
                .iter()
                .find(|(_, n)| rest.starts_with(n))
                .ok_or_else(|| Error::input(format!("cannot read a generator at '{rest}' in '{s}'")))?;
            rest = &rest[name.len()..];
            let inverse = if let Some(r) = rest.strip_prefix("^-1").or_else(|| rest.strip_prefix("⁻¹")) {
                rest = r;
                true
            } else {
                false
            };
            raw.push(Syllable::new(*g, inverse));
        }
        Ok(GroupWord::reduce(raw))
    }

    /// Names juxtaposed, inverses marked `⁻¹`; the identity prints as `1`.
    /// Syllables are separated by `·` when some name is longer than one character.
    pub fn render(&self, names: &[String]) -> String {
        let sep = if names.iter().all(|n| n.chars().count() == 1) { "" } else { "·" };
        self.render_with(names, sep, "⁻¹")
    }

    /// Whitespace-separated tokens, inverses marked `^-1`.
    pub fn render_tokens(&self, names: &[String]) -> String {
        self.render_with(names, " ", "^-1")
    }

    fn render_with(&self, names: &[String], sep: &str, inv: &str) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|s| if s.inverse { format!("{}{inv}", names[s.generator]) } else { names[s.generator].clone() })
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// Homomorphism between free groups on named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeHom {
    source: Vec<String>,
    target: Vec<String>,
    images: Vec<GroupWord>,
}

impl FreeHom {
    pub fn new(source: Vec<String>, target: Vec<String>, images: Vec<GroupWord>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::input(format!(
                "{} images given for {} generators",
                images.len(),
                source.len()
            )));
        }
        if images.iter().filter_map(GroupWord::max_generator).any(|g| g >= target.len()) {
            return Err(Error::input("image uses a generator outside the target"));
        }
        for names in [&source, &target] {
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != names.len() || names.iter().any(String::is_empty) {
                return Err(Error::input("generator names must be distinct and nonempty"));
            }
        }
        Ok(FreeHom { source, target, images })
    }

    pub fn endo(generators: Vec<String>, images: Vec<GroupWord>) -> Result<Self> {
        FreeHom::new(generators.clone(), generators, images)
    }

    /// Builds an endomorphism from `(name, image)` strings.
    pub fn endo_from_strs(generators: &[&str], images: &[&str]) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let ims = images.iter().map(|s| GroupWord::parse(&names, s)).collect::<Result<Vec<_>>>()?;
        FreeHom::endo(names, ims)
    }

    pub fn identity(generators: Vec<String>) -> Self {
        let images = (0..generators.len()).map(GroupWord::generator).collect();
        FreeHom { source: generators.clone(), target: generators, images }
    }

    /// The endomorphism of the free group on the alphabet induced by `φ`.
    pub fn from_substitution(phi: &Substitution) -> Self {
        let names: Vec<String> = phi.alphabet().symbols().iter().map(|c| c.to_string()).collect();
        let images = phi.images().iter().map(GroupWord::from_positive).collect();
        FreeHom { source: names.clone(), target: names, images }
    }

    /// Sends each code word, as a generator, to its spelling over the alphabet.
    pub fn inclusion(code: &Code) -> Self {
        let source = code.render_all();
        let target: Vec<String> = code.alphabet().symbols().iter().map(|c| c.to_string()).collect();
        let images = code.words().iter().map(GroupWord::from_positive).collect();
        FreeHom { source, target, images }
    }

    pub fn source(&self) -> &[String] {
        &self.source
    }

    pub fn target(&self) -> &[String] {
        &self.target
    }

    pub fn images(&self) -> &[GroupWord] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &GroupWord {
        &self.images[g]
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    pub fn rank(&self) -> usize {
        self.source.len()
    }

    pub fn apply(&self, w: &GroupWord) -> GroupWord {
        GroupWord::reduce(w.0.iter().flat_map(|s| {
            let img = &self.images[s.generator];
            let v: Vec<Syllable> = if s.inverse { img.inverse().0 } else { img.0.clone() };
            v
        }))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FreeHom) -> Result<FreeHom> {
        if other.target != self.source {
            return Err(Error::input("generator sets do not match for composition"));
        }
        Ok(FreeHom {
            source: other.source.clone(),
            target: self.target.clone(),
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        })
    }

    pub fn power(&self, k: usize) -> Result<FreeHom> {
        if !self.is_endo() {
            return Err(Error::input("only endomorphisms have powers"));
        }
        let mut out = FreeHom::identity(self.source.clone());
        for _ in 0..k {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    /// Restriction of an endomorphism to the subgroup on the generators `keep`,
    /// which must be mapped into that subgroup.
    pub fn restrict(&self, keep: &[usize]) -> Result<FreeHom> {
        let mut renumber = vec![None; self.source.len()];
        for (new, &old) in keep.iter().enumerate() {
            renumber[old] = Some(new);
        }
        let mut images = Vec::with_capacity(keep.len());
        for &g in keep {
            let syl = self.images[g]
                .0
                .iter()
                .map(|s| renumber[s.generator].map(|n| Syllable::new(n, s.inverse)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| {
                    Error::input(format!("image of {} leaves the kept generators", self.source[g]))
                })?;
            images.push(GroupWord(syl));
        }
        let names: Vec<String> = keep.iter().map(|&g| self.source[g].clone()).collect();
        FreeHom::endo(names, images)
    }

    /// The same map with generators renumbered by `perm` (old index `i` becomes `perm[i]`).
    pub fn permute(&self, perm: &[usize]) -> Result<FreeHom> {
        if !self.is_endo() || perm.len() != self.source.len() {
            return Err(Error::input("permutation must match the generators of an endomorphism"));
        }
        let n = perm.len();
        let mut names = vec![String::new(); n];
        let mut images = vec![GroupWord::identity(); n];
        for i in 0..n {
            names[perm[i]] = self.source[i].clone();
            images[perm[i]] =
                GroupWord(self.images[i].0.iter().map(|s| Syllable::new(perm[s.generator], s.inverse)).collect());
        }
        FreeHom::endo(names, images)
    }

    pub fn render_image(&self, g: usize) -> String {
        self.images[g].render(&self.target)
    }
}

impl fmt::Display for FreeHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            (0..self.source.len()).map(|g| format!("{} -> {}", self.source[g], self.render_image(g))).collect();
        write!(f, "{}", parts.join(", "))
    }
}
