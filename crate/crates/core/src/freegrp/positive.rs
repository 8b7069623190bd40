//! Positive Nielsen-type reduction and the code transformation `d ↦ cd`.

use std::collections::BTreeSet;

use super::{fold, FreeHom, GroupWord, Syllable};
use crate::codes::Code;
use crate::words::Word;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveReduction {
    /// Irreducible set, sorted length-lexicographically.
    pub words: Vec<Word>,
    /// Whether the reduced set is a free basis of the subgroup it generates.
    pub is_basis: bool,
}

/// Replaces `u = xy` or `u = yx` by `y` while some other member `x` allows it.
///
/// Each step lowers the total length, so the process stops. Members are tried
/// longest first, and for each the shortest usable `x`.
pub fn positive_basis_reduction(xs: &[Word], letters: usize) -> PositiveReduction {
    let mut set: BTreeSet<Word> = xs.iter().filter(|w| !w.is_empty()).cloned().collect();
    'outer: loop {
        let members: Vec<Word> = set.iter().cloned().collect();
        for u in members.iter().rev() {
            for x in &members {
                if x == u || x.len() >= u.len() {
                    continue;
                }
                let y = if u.starts_with(&x.0) {
                    Word(u.0[x.len()..].to_vec())
                } else if u.0.ends_with(&x.0) {
                    Word(u.0[..u.len() - x.len()].to_vec())
                } else {
                    continue;
                };
                set.remove(u);
                set.insert(y);
                continue 'outer;
            }
        }
        break;
    }
    let words: Vec<Word> = set.into_iter().collect();
    let gens: Vec<GroupWord> = words.iter().map(GroupWord::from_positive).collect();
    let is_basis = fold(&gens, letters).rank() == words.len();
    PositiveReduction { words, is_basis }
}

/// Result of replacing `d` by `cd` in a code.
#[derive(Debug, Clone)]
pub struct CodeTransform {
    pub code: Code,
    /// Isomorphism from the free group on the old code to the free group on the new one.
    pub epsilon: FreeHom,
}

/// `D = (C ∖ {d}) ∪ {cd}` and the isomorphism fixing `C ∖ {d}` with `d ↦ c⁻¹·(cd)`.
pub fn code_transform(code: &Code, c: &Word, d: &Word) -> Result<CodeTransform> {
    if c == d {
        return Err(Error::input("the two code words must differ"));
    }
    let (Some(_), Some(di)) = (code.index_of(c), code.index_of(d)) else {
        return Err(Error::input("both words must belong to the code"));
    };
    let cd = c.concat(d);
    if code.index_of(&cd).is_some() {
        return Err(Error::input("the concatenation already belongs to the set, which is then not a code"));
    }
    let new_words: Vec<Word> =
        code.words().iter().enumerate().map(|(i, w)| if i == di { cd.clone() } else { w.clone() }).collect();
    let new_code = Code::new(code.alphabet().clone(), new_words)?;
    let index = |w: &Word| new_code.index_of(w).expect("word kept in the new code");
    let images = code
        .words()
        .iter()
        .map(|w| {
            if w == d {
                GroupWord(vec![Syllable::new(index(c), true), Syllable::new(index(&cd), false)])
            } else {
                GroupWord::generator(index(w))
            }
        })
        .collect();
    let epsilon = FreeHom::new(code.render_all(), new_code.render_all(), images)?;
    Ok(CodeTransform { code: new_code, epsilon })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn ws(ss: &[&str]) -> Vec<Word> {
        let a = Alphabet::from_str_letters("ab").unwrap();
        ss.iter().map(|s| a.parse(s).unwrap()).collect()
    }

    fn gens(words: &[Word]) -> Vec<GroupWord> {
        words.iter().map(GroupWord::from_positive).collect()
    }

    #[test]
    fn thue_morse_code_reduces_to_images() {
        let x = ws(&["abba", "ababba", "abbaba", "ababbaba"]);
        let r = positive_basis_reduction(&x, 2);
        assert_eq!(r.words, ws(&["ab", "ba"]));
        assert!(r.is_basis);
        assert_eq!(fold(&gens(&x), 2), fold(&gens(&r.words), 2));
    }

    #[test]
    fn single_steps() {
        assert_eq!(positive_basis_reduction(&ws(&["a", "ab"]), 2).words, ws(&["a", "b"]));
        assert_eq!(positive_basis_reduction(&ws(&["ab", "b"]), 2).words, ws(&["a", "b"]));
    }

    #[test]
    fn transform_literal() {
        let a = Alphabet::from_str_letters("xy").unwrap();
        let c = Code::from_strs(&a, &["x", "y"]).unwrap();
        let t = code_transform(&c, &a.parse("x").unwrap(), &a.parse("y").unwrap()).unwrap();
        assert_eq!(t.code.render_all(), ["x", "xy"]);
        assert_eq!(t.epsilon.render_image(1), "x⁻¹·xy");
        assert_eq!(t.code.len(), c.len());
        assert!(code_transform(&c, &a.parse("x").unwrap(), &a.parse("x").unwrap()).is_err());
    }

    #[test]
    fn transform_preserves_subgroup() {
        let a = Alphabet::from_str_letters("ab").unwrap();
        let c = Code::from_strs(&a, &["abba", "ababba", "abbaba", "ababbaba"]).unwrap();
        for ci in c.words() {
            for di in c.words() {
                if ci != di {
                    let t = code_transform(&c, ci, di).unwrap();
                    assert_eq!(t.code.len(), c.len());
                    assert_eq!(fold(&gens(c.words()), 2), fold(&gens(t.code.words()), 2));
                }
            }
        }
    }
}
