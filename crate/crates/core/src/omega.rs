//! Idempotent powers in finite monoids.
//!
//! Every element `x` of a finite monoid has a unique idempotent power `x^ω`.
//! The same bookkeeping serves letter maps, subset maps, matrices mod `p` and
//! orbits of the dual transformation, so it is factored out here.

use std::collections::HashMap;
use std::hash::Hash;

/// Shape of the eventually periodic sequence `x_0, x_1 = step(x_0), ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rho<T> {
    /// Index of the first element that lies on the cycle.
    pub tail: usize,
    /// Cycle length.
    pub period: usize,
    /// `x_0 .. x_{tail + period - 1}`, every distinct element of the sequence.
    pub terms: Vec<T>,
}

impl<T: Clone> Rho<T> {
    /// The element `x_k`, for any `k`.
    pub fn term(&self, k: usize) -> T {
        if k < self.terms.len() {
            self.terms[k].clone()
        } else {
            self.terms[self.tail + (k - self.tail) % self.period].clone()
        }
    }
}

/// Runs `step` from `start` until a term repeats.
pub fn rho<T, F>(start: T, mut step: F) -> Rho<T>
where
    T: Clone + Eq + Hash,
    F: FnMut(&T) -> T,
{
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut terms = Vec::new();
    let mut current = start;
    loop {
        if let Some(&first) = seen.get(&current) {
            let period = terms.len() - first;
            return Rho { tail: first, period, terms };
        }
        seen.insert(current.clone(), terms.len());
        terms.push(current.clone());
        current = step(&current);
    }
}

/// Least `k >= max(tail, 1)` that is a multiple of `period`.
pub fn omega_exponent(tail: usize, period: usize) -> usize {
    let floor = tail.max(1);
    floor.div_ceil(period) * period
}

/// Idempotent power of a monoid element given by its power sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaPower<T> {
    pub value: T,
    /// `value = x^exponent`.
    pub exponent: usize,
    /// Smallest `l` such that `x^l` lies in the cyclic part of the power sequence.
    pub preperiod: usize,
    pub period: usize,
}

/// Computes `x^ω` from `x` and the monoid product.
pub fn omega_power<T, F>(x: &T, mut mul: F) -> OmegaPower<T>
where
    T: Clone + Eq + Hash,
    F: FnMut(&T, &T) -> T,
{
    // powers x^1, x^2, ...; term index i holds x^(i+1)
    let seq = rho(x.clone(), |p| mul(p, x));
    let preperiod = seq.tail + 1;
    let exponent = omega_exponent(preperiod, seq.period);
    OmegaPower { value: seq.term(exponent - 1), exponent, preperiod, period: seq.period }
}

/// Composition `g ∘ f` of self-maps of `0..n` given as image tables.
pub fn compose_maps(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// `f^ω` for a self-map of `0..n`.
pub fn omega_of_map(f: &[usize]) -> OmegaPower<Vec<usize>> {
    omega_power(&f.to_vec(), |p, x| compose_maps(x, p))
}
