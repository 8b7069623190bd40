//! The reproduction table: every worked example, recomputed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::codes::{is_code, parse, Code};
use crate::fingrp::{evaluate, EvalMap, FiniteGroup};
use crate::freegrp::{fold, is_automorphism, FreeHom, GroupWord};
use crate::images::{abelian_rank, bar_map, image_survey, is_image, kp_iterate_check, orbit_omega};
use crate::pipeline::{
    analyze, build_presentation, letter_presentation, restrict_presentation, thue_morse_delta_elimination,
};
use crate::returns::x_set;
use crate::words::{connections, tilde_exponent, ultimate_alphabet, Connection, Substitution, Word};
use crate::{Limits, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Inputs of a reproduction run.
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// The three-generator Thue–Morse endomorphism; replace it to test fault detection.
    pub psi: FreeHom,
    pub seed: u64,
    /// Random instances of the anti-homomorphism law.
    pub random_instances: usize,
    pub limits: Limits,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            psi: crate::pipeline::reduced_three_generator_endo(),
            seed: 2010,
            random_instances: 200,
            limits: Limits::default(),
        }
    }
}

fn row(name: &str, check: impl FnOnce() -> Result<(bool, String)>) -> Row {
    match check() {
        Ok((passed, detail)) => Row { name: name.to_string(), passed, detail },
        Err(e) => Row { name: name.to_string(), passed: false, detail: format!("error: {e}") },
    }
}

fn names_of(code: &Code, ws: &[Word]) -> String {
    ws.iter().map(|w| code.render(w)).collect::<Vec<_>>().join("·")
}

/// Random substitution over `n` letters with images of length 1 to 3.
pub fn random_substitution(rng: &mut impl Rng, n: usize) -> Substitution {
    let letters: Vec<char> = "abcd".chars().take(n).collect();
    let images: Vec<String> = (0..n)
        .map(|_| (0..rng.gen_range(1..=3)).map(|_| letters[rng.gen_range(0..n)]).collect())
        .collect();
    let rules: Vec<(char, &str)> = letters.iter().copied().zip(images.iter().map(String::as_str)).collect();
    Substitution::from_rules(&rules).expect("random images are nonempty")
}

/// `bar(φ∘ψ)(f) = bar(ψ)(bar(φ)(f))` on random instances.
pub fn anti_homomorphism_instances(seed: u64, count: usize, limits: &Limits) -> Result<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let catalog = [
        FiniteGroup::cyclic(5)?,
        FiniteGroup::symmetric(3, limits)?,
        FiniteGroup::h18(),
        FiniteGroup::alternating(5, limits)?,
    ];
    let mut ok = 0;
    for _ in 0..count {
        let n = rng.gen_range(1..=3);
        let phi = FreeHom::from_substitution(&random_substitution(&mut rng, n));
        let psi = FreeHom::from_substitution(&random_substitution(&mut rng, n));
        let s = &catalog[rng.gen_range(0..catalog.len())];
        let f = EvalMap((0..n).map(|_| rng.gen_range(0..s.order())).collect());
        let lhs = bar_map(&phi.compose(&psi)?, s, &f);
        let rhs = bar_map(&psi, s, &bar_map(&phi, s, &f));
        ok += usize::from(lhs == rhs);
    }
    Ok((ok, count))
}

pub fn run(opts: &RunOptions) -> Vec<Row> {
    let l = &opts.limits;
    let psi = &opts.psi;
    let tau = Substitution::thue_morse();
    let phi1 = Substitution::ab_a3b();
    let phi2 = Substitution::ac_aca2c_ac2ac();
    let greek: Vec<String> = psi.source().to_vec();
    let gw = |s: &str| GroupWord::parse(&greek, s);
    let mut rows = Vec::new();

    rows.push(row("generator code of the Thue–Morse connection aa", || {
        let x = x_set(&tau, Connection::parse(&tau, "aa")?, l)?;
        Ok((x.render_all() == ["abba", "ababba", "abbaba", "ababbaba"], x.to_string()))
    }));
    rows.push(row("that generator code is uniquely decodable", || {
        let x = x_set(&tau, Connection::parse(&tau, "aa")?, l)?;
        Ok((is_code(&x).is_code(), String::new()))
    }));
    rows.push(row("factorization of τ² on each Thue–Morse generator", || {
        let x = x_set(&tau, Connection::parse(&tau, "aa")?, l)?;
        let expected = [
            "abbaba·abba·ababba",
            "abbaba·ababbaba·abba·ababba",
            "abbaba·abba·ababbaba·ababba",
            "abbaba·ababbaba·abba·ababbaba·ababba",
        ];
        let got = x
            .words()
            .iter()
            .map(|w| Ok(names_of(&x, &parse(&x, &tau.power_apply(2, w, l)?)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok((got == expected, got.join(", ")))
    }));
    rows.push(row("Thue–Morse connections include aa; τ̃ = τ²", || {
        let cs = connections(&tau, l)?;
        let aa = Connection::parse(&tau, "aa")?;
        let k = tilde_exponent(&tau, aa)?;
        Ok((cs.contains(&aa) && k == 2, format!("tilde exponent {k}")))
    }));
    rows.push(row("a→ab, b→aaab has the unique connection ba", || {
        let cs: Vec<String> = connections(&phi1, l)?.iter().map(|c| c.render(&phi1)).collect();
        Ok((cs == ["ba"], cs.join(",")))
    }));
    rows.push(row("free-group identity ababbaba = ababba·abba⁻¹·abbaba", || {
        let n: Vec<String> = vec!["a".into(), "b".into()];
        let p = |s: &str| GroupWord::parse(&n, s);
        let lhs = GroupWord::product([&p("ababba")?, &p("abba")?.inverse(), &p("abbaba")?]);
        Ok((lhs == p("ababbaba")?, lhs.render(&n)))
    }));
    rows.push(row("eliminating the fourth generator yields the three-generator endomorphism", || {
        let reduced = thue_morse_delta_elimination(l)?;
        Ok((reduced.images() == psi.images(), reduced.to_string()))
    }));
    rows.push(row("Ψ fixes αβ⁻¹αγ⁻¹α", || {
        let w = gw("αβ⁻¹αγ⁻¹α")?;
        let image = psi.apply(&w);
        Ok((image == w, image.render(&greek)))
    }));
    rows.push(row("Ψ(α⁻¹γ) = α⁻¹·Ψ(βα⁻¹)·α", || {
        let a = gw("α")?;
        let lhs = psi.apply(&gw("α⁻¹γ")?);
        let rhs = GroupWord::product([&a.inverse(), &psi.apply(&gw("βα⁻¹")?), &a]);
        Ok((lhs == rhs, format!("{} vs {}", lhs.render(&greek), rhs.render(&greek))))
    }));
    rows.push(row("a→ac, b→acaac, c→accac: b drops out of the ultimate alphabet", || {
        let b = ultimate_alphabet(&phi2);
        Ok((b == [0, 2], format!("{b:?}")))
    }));
    rows.push(row("{ac, acaac, accac} generates the free group on {a, c}", || {
        let n: Vec<String> = vec!["a".into(), "c".into()];
        let gens = ["ac", "acaac", "accac"].iter().map(|s| GroupWord::parse(&n, s)).collect::<Result<Vec<_>>>()?;
        let g = fold(&gens, 2);
        Ok((g.is_whole_group() && g.rank() == 2, format!("rank {}", g.rank())))
    }));
    rows.push(row("a→ac, b→acaac, c→accac is ultimately group invertible, free of rank 2", || {
        let a = analyze(&phi2, l)?;
        let b: Vec<usize> = ultimate_alphabet(&phi2).into_iter().map(usize::from).collect();
        let auto = is_automorphism(&FreeHom::from_substitution(&phi2).restrict(&b)?);
        let restricted = restrict_presentation(&letter_presentation(&phi2, l)?)?;
        let ok = a.ultimately_group_invertible && auto && a.free_rank == Some(2) && restricted.free_rank == Some(2);
        Ok((ok, format!("generators {:?}", restricted.generators())))
    }));
    rows.push(row("Thue–Morse images {ab, ba} do not generate the free group", || {
        let n: Vec<String> = vec!["a".into(), "b".into()];
        let gens = [GroupWord::parse(&n, "ab")?, GroupWord::parse(&n, "ba")?];
        Ok((!fold(&gens, 2).is_whole_group(), String::new()))
    }));
    rows.push(row("the order-18 group: relations hold and its rank is 3", || {
        let h = FiniteGroup::h18();
        let (a, b, c) = (1, 2, 3);
        let rel = h.pow(a, 2) == 0
            && h.pow(b, 3) == 0
            && h.pow(c, 3) == 0
            && h.mul(b, c) == h.mul(c, b)
            && h.mul(h.mul(a, b), a) == h.pow(b, 2)
            && h.mul(h.mul(a, c), a) == h.pow(c, 2);
        let rank = h.rank(l)?;
        Ok((h.order() == 18 && rel && rank == 3, format!("order {}, rank {rank}", h.order())))
    }));
    rows.push(row("dual Thue–Morse map is (x, y) ↦ (xy, yx) on A₅", || {
        let tau_g = FreeHom::from_substitution(&tau);
        let s = FiniteGroup::alternating(5, l)?;
        let ok = (0..s.order())
            .all(|x| (0..s.order()).all(|y| bar_map(&tau_g, &s, &EvalMap(vec![x, y])).0 == [s.mul(x, y), s.mul(y, x)]));
        Ok((ok, String::new()))
    }));
    rows.push(row("six dual Thue–Morse steps fix ((1 2 3), (3 4 5))", || {
        let tau_g = FreeHom::from_substitution(&tau);
        let s = FiniteGroup::alternating(5, l)?;
        let eta = EvalMap(vec![s.element_by_name("(1 2 3)").unwrap_or(0), s.element_by_name("(3 4 5)").unwrap_or(0)]);
        let mut f = eta.clone();
        for _ in 0..6 {
            f = bar_map(&tau_g, &s, &f);
        }
        Ok((f == eta, eta.render(&s).join(", ")))
    }));
    rows.push(row("η(abba) = (1 3 2 5 4), η(ababba) = (1 5 2), and they generate A₅", || {
        let s = FiniteGroup::alternating(5, l)?;
        let eta = EvalMap(vec![s.element_by_name("(1 2 3)").unwrap_or(0), s.element_by_name("(3 4 5)").unwrap_or(0)]);
        let x = evaluate(&s, &tau.alphabet().parse("abba")?, &eta);
        let y = evaluate(&s, &tau.alphabet().parse("ababba")?, &eta);
        let ok = s.element_name(x) == "(1 3 2 5 4)" && s.element_name(y) == "(1 5 2)" && s.generates(&[x, y]);
        Ok((ok, format!("{}, {}", s.element_name(x), s.element_name(y))))
    }));
    rows.push(row("A₅ is an image for a→ab, b→aaab, witness ((1 2 3), (3 4 5)) with period dividing 12", || {
        let s = FiniteGroup::alternating(5, l)?;
        let phi = FreeHom::from_substitution(&phi1);
        let w = is_image(&phi, &s, l)?;
        let Some(w) = w else { return Ok((false, "no witness".into())) };
        let mut f = w.f.clone();
        for _ in 0..12 {
            f = bar_map(&phi, &s, &f);
        }
        let ok = w.f.render(&s) == ["(1 2 3)", "(3 4 5)"] && f == w.f;
        Ok((ok, format!("{} period {}", w.f.render(&s).join(", "), w.period)))
    }));
    rows.push(row("the order-18 group is an image for Ψ at (a, b, c), period dividing 2", || {
        let h = FiniteGroup::h18();
        let Some(w) = is_image(psi, &h, l)? else { return Ok((false, "no witness".into())) };
        let survey = image_survey(psi, std::slice::from_ref(&h), l);
        let ok = w.f.0 == [1, 2, 3] && 2 % w.period == 0 && survey.rank_lower_bound == 3;
        Ok((ok, format!("{} period {}", w.f.render(&h).join(", "), w.period)))
    }));
    rows.push(row("dual Ψ on C₂³ is (h₁, h₂, h₃) ↦ (h₃h₁h₂, 1, 1)", || {
        let c2 = FiniteGroup::cyclic(2)?;
        let mut ok = true;
        for code in 0..8usize {
            let f = EvalMap(vec![code >> 2 & 1, code >> 1 & 1, code & 1]);
            let g = bar_map(psi, &c2, &f);
            ok &= g.0 == [c2.mul(c2.mul(f.0[2], f.0[0]), f.0[1]), 0, 0] && bar_map(psi, &c2, &g) == g;
        }
        Ok((ok, String::new()))
    }));
    rows.push(row("Ψ̄^ω(a, a, 1) = Ψ̄^ω(a, 1, a) = (1, 1, 1), yet C₂ is an image at (a, 1, 1)", || {
        let c2 = FiniteGroup::cyclic(2)?;
        let o1 = orbit_omega(psi, &c2, &EvalMap(vec![1, 1, 0])).value;
        let o2 = orbit_omega(psi, &c2, &EvalMap(vec![1, 0, 1])).value;
        let w = is_image(psi, &c2, l)?;
        let ok = o1.0 == [0, 0, 0] && o2.0 == [0, 0, 0] && w.as_ref().is_some_and(|w| w.f.0 == [1, 0, 0]);
        Ok((ok, format!("{:?}", w.map(|w| w.f.render(&c2)))))
    }));
    rows.push(row("elementary abelian 2-quotient is cyclic, 5-quotient has rank 2", || {
        let (r2, r5) = (abelian_rank(psi, 2)?, abelian_rank(psi, 5)?);
        Ok((r2 == 1 && r5 == 2, format!("ranks {r2}, {r5}")))
    }));
    rows.push(row("closed form of Ψ̄ⁿ(α, β, β) in C_p × C_p for p ∈ {5, 7, 11}, n ≤ 5", || {
        let mut ok = true;
        for p in [5, 7, 11] {
            for n in 0..=5 {
                ok &= kp_iterate_check(p, n)?;
            }
        }
        Ok((ok, String::new()))
    }));
    rows.push(row("every cyclic group C₂ … C₁₂ is an image", || {
        let catalog = (2..=12).map(FiniteGroup::cyclic).collect::<Result<Vec<_>>>()?;
        let r = image_survey(psi, &catalog, l);
        let images = r.entries.iter().filter(|e| e.verdict == "image").count();
        Ok((images == 11, format!("{images} of 11")))
    }));
    rows.push(row("A₅ is an image of the Thue–Morse presentation, rank at least 2", || {
        let r = image_survey(psi, &[FiniteGroup::alternating(5, l)?], l);
        Ok((r.entries[0].verdict == "image" && r.rank_lower_bound >= 2, format!("bound {}", r.rank_lower_bound)))
    }));
    rows.push(row("a→ab, b→aaab yields a presentation with tilde exponent 1", || {
        let p = build_presentation(&phi1, Connection::parse(&phi1, "ba")?, l)?;
        Ok((p.tilde_exponent == Some(1), format!("{} generators", p.generators().len())))
    }));
    rows.push(row("seeded anti-homomorphism law for the dual map", || {
        let (ok, total) = anti_homomorphism_instances(opts.seed, opts.random_instances, l)?;
        Ok((ok == total, format!("{ok}/{total} (seed {})", opts.seed)))
    }));
    rows
}
