//! Finite images of `⟨X | Φ^ω(x) = x⟩` through the dual map on `S^X`.
//!
//! For an endomorphism `Φ` of the free group on `X` and a finite group `S`,
//! the dual map sends `f: X → S` to `x ↦ f̂(Φ(x))`, where `f̂` is the
//! homomorphism extending `f`. It reverses composition order, and `S` is an
//! image of the presented group exactly when the dual map has a periodic point
//! whose values generate `S`.

use rayon::prelude::*;
use serde::Serialize;

use crate::fingrp::{evaluate_group_word, EvalMap, FiniteGroup};
use crate::freegrp::{abelianization_matrix, is_prime, matrix_omega_power, FreeHom};
use crate::omega::{omega_exponent, rho};
use crate::{Error, Limits, Result};

/// `f ↦ f̂ ∘ Φ` restricted to the generators.
pub fn bar_map(phi: &FreeHom, s: &FiniteGroup, f: &EvalMap) -> EvalMap {
    EvalMap(phi.images().iter().map(|w| evaluate_group_word(s, w, f)).collect())
}

/// Idempotent power of the dual map evaluated at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitOmega {
    pub value: EvalMap,
    /// `value` is the image of `f` under this power of the dual map.
    pub exponent: usize,
    /// Number of steps before the orbit enters its cycle.
    pub preperiod: usize,
    pub period: usize,
}

pub fn orbit_omega(phi: &FreeHom, s: &FiniteGroup, f: &EvalMap) -> OrbitOmega {
    let orbit = rho(f.clone(), |g| bar_map(phi, s, g));
    let exponent = omega_exponent(orbit.tail, orbit.period);
    OrbitOmega { value: orbit.term(exponent), exponent, preperiod: orbit.tail, period: orbit.period }
}

/// A generating point fixed by the `period`-th power of the dual map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub f: EvalMap,
    /// Exact period of `f`.
    pub period: usize,
}

impl Witness {
    /// Re-checks that `f` generates and that `period` iterations return to `f`.
    pub fn replays(&self, phi: &FreeHom, s: &FiniteGroup) -> bool {
        let mut g = self.f.clone();
        for _ in 0..self.period {
            g = bar_map(phi, s, &g);
        }
        self.period >= 1 && g == self.f && self.f.is_generating(s)
    }
}

/// Points of `S^X` numbered as an odometer with the first generator most significant.
struct Odometer {
    base: usize,
    digits: usize,
}

impl Odometer {
    fn encode(&self, f: &[usize]) -> usize {
        f.iter().fold(0, |acc, &x| acc * self.base + x)
    }

    fn decode(&self, mut code: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = code % self.base;
            code /= self.base;
        }
    }
}

/// Size of `S^X`, checked against the enumeration cap.
fn space_size(phi: &FreeHom, s: &FiniteGroup, limits: &Limits) -> Result<usize> {
    let size = (s.order() as u128).checked_pow(phi.rank() as u32).unwrap_or(u128::MAX);
    if size > limits.enum_cap as u128 {
        return Err(Error::resource(format!(
            "|S^X| = {}^{} exceeds the enumeration cap {}",
            s.order(),
            phi.rank(),
            limits.enum_cap
        )));
    }
    Ok(size as usize)
}

struct Compiled {
    images: Vec<Vec<(usize, bool)>>,
}

impl Compiled {
    fn new(phi: &FreeHom) -> Self {
        Compiled {
            images: phi
                .images()
                .iter()
                .map(|w| w.syllables().iter().map(|s| (s.generator, s.inverse)).collect())
                .collect(),
        }
    }

    fn step(&self, s: &FiniteGroup, f: &[usize], out: &mut [usize]) {
        for (slot, img) in out.iter_mut().zip(&self.images) {
            *slot = img.iter().fold(0, |acc, &(g, inv)| s.mul(acc, if inv { s.inv(f[g]) } else { f[g] }));
        }
    }
}

fn successor(phi: &Compiled, s: &FiniteGroup, od: &Odometer, code: usize, buf: &mut [usize], out: &mut [usize]) -> usize {
    od.decode(code, buf);
    phi.step(s, buf, out);
    od.encode(out)
}

/// Every periodic point with its exact period, visiting the functional graph
/// of the dual map once. `visit` receives each cycle as a list of codes.
fn scan_cycles(phi: &FreeHom, s: &FiniteGroup, limits: &Limits, mut visit: impl FnMut(&[usize])) -> Result<()> {
    let size = space_size(phi, s, limits)?;
    let n = phi.rank();
    let od = Odometer { base: s.order(), digits: n };
    let compiled = Compiled::new(phi);
    let table: Option<Vec<u32>> = if limits.jobs > 1 && size <= u32::MAX as usize {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(limits.jobs)
            .build()
            .map_err(|e| Error::resource(format!("worker pool: {e}")))?;
        Some(pool.install(|| {
            (0..size)
                .into_par_iter()
                .map_init(
                    || (vec![0; od.digits], vec![0; od.digits]),
                    |(buf, out), code| successor(&compiled, s, &od, code, buf, out) as u32,
                )
                .collect()
        }))
    } else {
        None
    };
    let (mut buf, mut out) = (vec![0; n], vec![0; n]);
    let mut next = |code: usize| match &table {
        Some(t) => t[code] as usize,
        None => successor(&compiled, s, &od, code, &mut buf, &mut out),
    };
    // 0 unseen, 1 on the current path, 2 finished
    let mut state = vec![0u8; size];
    let mut path = Vec::new();
    for start in 0..size {
        if state[start] != 0 {
            continue;
        }
        path.clear();
        let mut x = start;
        while state[x] == 0 {
            state[x] = 1;
            path.push(x);
            x = next(x);
        }
        if state[x] == 1 {
            let from = path.iter().rposition(|&y| y == x).expect("node on the current path");
            visit(&path[from..]);
        }
        for &y in &path {
            state[y] = 2;
        }
    }
    Ok(())
}

/// All periodic points with their periods, in increasing odometer order.
pub fn periodic_points(phi: &FreeHom, s: &FiniteGroup, limits: &Limits) -> Result<Vec<(EvalMap, usize)>> {
    let od = Odometer { base: s.order(), digits: phi.rank() };
    let mut found = Vec::new();
    scan_cycles(phi, s, limits, |cycle| {
        for &c in cycle {
            let mut f = vec![0; od.digits];
            od.decode(c, &mut f);
            found.push((c, EvalMap(f), cycle.len()));
        }
    })?;
    found.sort_by_key(|t| t.0);
    Ok(found.into_iter().map(|(_, f, p)| (f, p)).collect())
}

/// Least generating periodic point of the dual map, if any.
///
/// When present, `S` is a continuous image of `⟨X | Φ^ω(x) = x⟩`.
pub fn is_image(phi: &FreeHom, s: &FiniteGroup, limits: &Limits) -> Result<Option<Witness>> {
    if !phi.is_endo() {
        return Err(Error::input("image test needs an endomorphism"));
    }
    let od = Odometer { base: s.order(), digits: phi.rank() };
    let mut best: Option<(usize, usize)> = None;
    let mut f = vec![0; od.digits];
    scan_cycles(phi, s, limits, |cycle| {
        for &c in cycle {
            if best.is_some_and(|(b, _)| b <= c) {
                continue;
            }
            od.decode(c, &mut f);
            if s.generates(&f) {
                best = Some((c, cycle.len()));
            }
        }
    })?;
    Ok(best.map(|(c, period)| {
        od.decode(c, &mut f);
        Witness { f: EvalMap(f.clone()), period }
    }))
}

/// Rank of the largest elementary abelian `p`-quotient of the presented group,
/// `|X| − rank(M^ω − I)` over `F_p`.
pub fn abelian_rank(phi: &FreeHom, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let m = abelianization_matrix(phi, p)?;
    let e = matrix_omega_power(&m)?.value;
    Ok(phi.rank() - e.minus_identity().rank_mod_p()?)
}

/// Compares `n` iterations of the dual map of the three-generator Thue–Morse
/// endomorphism at `(x, y, y)` in `C_p × C_p` against the closed form
/// `(x·y^(2(4ⁿ−1)/3), y^(4ⁿ), y^(4ⁿ))`.
pub fn kp_iterate_check(p: u64, n: u32) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let g = FiniteGroup::elem_abelian(p as usize, 2, &Limits::default())?;
    let psi = crate::pipeline::reduced_three_generator_endo();
    let elem = |a: u64, b: u64| g.mul(g.pow(g.generators()[0], a), g.pow(g.generators()[1], b));
    let (x, y) = (elem(1, 0), elem(0, 1));
    let mut f = EvalMap(vec![x, y, y]);
    for _ in 0..n {
        f = bar_map(&psi, &g, &f);
    }
    // (4ⁿ − 1)/3 = 1 + 4 + … + 4ⁿ⁻¹
    let geometric = (0..n).fold(0u64, |acc, i| (acc + mod_pow(4, u64::from(i), p)) % p);
    let four_n = mod_pow(4, u64::from(n), p);
    let expected = EvalMap(vec![elem(1, 2 * geometric % p), elem(0, four_n), elem(0, four_n)]);
    Ok(f == expected)
}

fn mod_pow(b: u64, mut e: u64, p: u64) -> u64 {
    let (mut acc, mut base) = (1 % p, b % p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyWitness {
    pub images: Vec<String>,
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyEntry {
    pub group: String,
    /// `image`, `not_image` or `error`.
    pub verdict: String,
    pub witness: Option<SurveyWitness>,
    /// Rank of the group, reported for images.
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub entries: Vec<SurveyEntry>,
    /// Largest rank among the images found, a lower bound for the rank of the presented group.
    pub rank_lower_bound: usize,
}

/// Runs [`is_image`] over a catalog, reporting per-group failures inline.
pub fn image_survey(phi: &FreeHom, catalog: &[FiniteGroup], limits: &Limits) -> SurveyReport {
    let mut entries = Vec::new();
    let mut bound = 0;
    for s in catalog {
        let entry = match is_image(phi, s, limits) {
            Ok(Some(w)) => {
                let rank = s.rank(limits).ok();
                bound = bound.max(rank.unwrap_or(0));
                SurveyEntry {
                    group: s.name().to_string(),
                    verdict: "image".into(),
                    witness: Some(SurveyWitness { images: w.f.render(s), period: w.period }),
                    rank,
                    error: None,
                }
            }
            Ok(None) => SurveyEntry {
                group: s.name().to_string(),
                verdict: "not_image".into(),
                witness: None,
                rank: None,
                error: None,
            },
            Err(e) => SurveyEntry {
                group: s.name().to_string(),
                verdict: "error".into(),
                witness: None,
                rank: None,
                error: Some(e.to_string()),
            },
        };
        entries.push(entry);
    }
    SurveyReport { entries, rank_lower_bound: bound }
}
