//! Abelianization matrices over `Z` and `Z/p`.

use super::FreeHom;
use crate::omega::{omega_power, OmegaPower};
use crate::{Error, Result};

/// Square matrix whose column `j` is the exponent-sum vector of the image of
/// generator `j`. Entries are reduced mod `modulus` unless it is `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianMatrix {
    pub modulus: u64,
    pub rows: Vec<Vec<i64>>,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl AbelianMatrix {
    pub fn identity(n: usize, modulus: u64) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        AbelianMatrix { modulus, rows }.normalized()
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    fn normalized(mut self) -> Self {
        if self.modulus > 0 {
            let m = self.modulus as i64;
            for row in &mut self.rows {
                for x in row.iter_mut() {
                    *x = x.rem_euclid(m);
                }
            }
        }
        self
    }

    pub fn mul(&self, other: &AbelianMatrix) -> AbelianMatrix {
        let n = self.size();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s: i128 = (0..n).map(|k| i128::from(self.rows[i][k]) * i128::from(other.rows[k][j])).sum();
                        if self.modulus > 0 {
                            s.rem_euclid(i128::from(self.modulus)) as i64
                        } else {
                            s as i64
                        }
                    })
                    .collect()
            })
            .collect();
        AbelianMatrix { modulus: self.modulus, rows }
    }

    pub fn minus_identity(&self) -> AbelianMatrix {
        let mut out = self.clone();
        for i in 0..self.size() {
            out.rows[i][i] -= 1;
        }
        out.normalized()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Rank over the prime field `F_p`.
    pub fn rank_mod_p(&self) -> Result<usize> {
        let p = self.modulus;
        if !is_prime(p) {
            return Err(Error::input(format!("rank over F_p needs a prime modulus, got {p}")));
        }
        let p = p as i64;
        let mut m: Vec<Vec<i64>> = self.rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, pivot);
            let inv = mod_pow(m[rank][c], p - 2, p);
            for x in m[rank].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                let f = row[c];
                if r != rank && f != 0 {
                    for (x, &y) in row.iter_mut().zip(&pivot).take(cols) {
                        *x = (*x - f * y).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        Ok(rank)
    }
}

fn mod_pow(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Abelianization of an endomorphism, over `Z` when `p = 0` and over `Z/p` for prime `p`.
pub fn abelianization_matrix(phi: &FreeHom, p: u64) -> Result<AbelianMatrix> {
    if !phi.is_endo() {
        return Err(Error::input("abelianization matrix needs an endomorphism"));
    }
    if p != 0 && !is_prime(p) {
        return Err(Error::input(format!("modulus {p} is not prime")));
    }
    let n = phi.rank();
    let mut rows = vec![vec![0i64; n]; n];
    for (j, img) in phi.images().iter().enumerate() {
        for s in img.syllables() {
            rows[s.generator][j] += if s.inverse { -1 } else { 1 };
        }
    }
    Ok(AbelianMatrix { modulus: p, rows }.normalized())
}

/// Idempotent power of a matrix over `Z/p`.
pub fn matrix_omega_power(m: &AbelianMatrix) -> Result<OmegaPower<AbelianMatrix>> {
    if m.modulus == 0 {
        return Err(Error::input("the idempotent power needs a finite coefficient ring"));
    }
    Ok(omega_power(m, |a, b| a.mul(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi() -> FreeHom {
        FreeHom::endo_from_strs(&["α", "β", "γ"], &["γαβ", "γβα⁻¹γαβ", "γαβα⁻¹γβ"]).unwrap()
    }

    #[test]
    fn psi_over_integers() {
        let m = abelianization_matrix(&psi(), 0).unwrap();
        assert_eq!(m.column(0), [1, 1, 1]);
        assert_eq!(m.column(1), [0, 2, 2]);
        assert_eq!(m.column(2), [0, 2, 2]);
    }

    #[test]
    fn psi_mod_two() {
        let m = abelianization_matrix(&psi(), 2).unwrap();
        assert_eq!(m.column(1), [0, 0, 0]);
        assert_eq!(m.mul(&m), m);
        let w = matrix_omega_power(&m).unwrap();
        assert_eq!(w.value, m);
        assert_eq!(w.value.minus_identity().rank_mod_p().unwrap(), 2);
    }

    #[test]
    fn psi_mod_five() {
        let m = abelianization_matrix(&psi(), 5).unwrap();
        let w = matrix_omega_power(&m).unwrap();
        assert_eq!(w.value, m.mul(&m));
        assert_eq!(w.value.column(1), [0, 3, 3]);
        assert_eq!(w.value.mul(&w.value), w.value);
        assert_eq!(w.value.minus_identity().rank_mod_p().unwrap(), 1);
    }

    #[test]
    fn identity_endo() {
        let id = FreeHom::identity(vec!["x".into(), "y".into(), "z".into()]);
        let m = abelianization_matrix(&id, 7).unwrap();
        assert_eq!(m, AbelianMatrix::identity(3, 7));
        assert_eq!(matrix_omega_power(&m).unwrap().value, m);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(abelianization_matrix(&psi(), 4).is_err());
        assert!(matrix_omega_power(&abelianization_matrix(&psi(), 0).unwrap()).is_err());
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
