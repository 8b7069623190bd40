//! Permutations of `{1, …, n}` in cycle notation.

use std::fmt;

use crate::{Error, Result};

/// A bijection of `{0, …, n-1}`, displayed on `{1, …, n}`.
///
/// Products compose left to right: in `p * q`, `p` acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u16).collect())
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(usize::from(i)).ok_or_else(|| Error::input("image out of range"))?;
            if std::mem::replace(slot, true) {
                return Err(Error::input("images do not form a bijection"));
            }
        }
        Ok(Permutation(images))
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` on `{1, …, n}`; `()` is the identity.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self> {
        let mut images: Vec<u16> = (0..n as u16).collect();
        let mut seen = vec![false; n];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::input(format!("malformed cycle notation '{s}'")))?;
            let points = body
                .0
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let p: usize = t.parse().map_err(|_| Error::input(format!("bad point '{t}' in '{s}'")))?;
                    if p == 0 || p > n {
                        return Err(Error::input(format!("point {p} outside 1..{n}")));
                    }
                    Ok(p - 1)
                })
                .collect::<Result<Vec<_>>>()?;
            for (k, &p) in points.iter().enumerate() {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::input(format!("point {} repeated in '{s}'", p + 1)));
                }
                images[p] = points[(k + 1) % points.len()] as u16;
            }
            rest = body.1.trim_start();
        }
        Ok(Permutation(images))
    }

    /// Largest point moved or mentioned in `s`, to size a permutation before parsing.
    pub fn degree_of(s: &str) -> usize {
        s.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse::<usize>().ok()).max().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        usize::from(self.0[point])
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[usize::from(x)]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[usize::from(x)] = i as u16;
        }
        Permutation(inv)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for start in 0..self.0.len() {
            let mut len = 0usize;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = usize::from(self.0[x]);
                len += 1;
            }
            transpositions += len.saturating_sub(1);
        }
        transpositions % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || usize::from(self.0[start]) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = usize::from(self.0[x]);
            }
            write!(f, "({})", cycle.join(" "))?;
            any = true;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse_cycles("(1 3 2 5 4)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 3 2 5 4)");
        assert_eq!(Permutation::parse_cycles("(2 1)(4 5)", 5).unwrap().to_string(), "(1 2)(4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::parse_cycles("(1 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert_eq!(Permutation::degree_of("(1 2)(3 7)"), 7);
    }

    #[test]
    fn left_to_right_product() {
        let a = Permutation::parse_cycles("(1 2 3)", 5).unwrap();
        let b = Permutation::parse_cycles("(3 4 5)", 5).unwrap();
        let abba = a.then(&b).then(&b).then(&a);
        assert_eq!(abba.to_string(), "(1 3 2 5 4)");
        assert_eq!(a.then(&a.inverse()), Permutation::identity(5));
    }

    #[test]
    fn parity() {
        assert!(Permutation::parse_cycles("(1 2 3)", 3).unwrap().is_even());
        assert!(!Permutation::parse_cycles("(1 2)", 3).unwrap().is_even());
    }
}
