mod common;

use subshift::codes::Code;
use subshift::fingrp::FiniteGroup;
use subshift::freegrp::{code_transform, FreeHom, GroupWord};
use subshift::images::is_image;
use subshift::pipeline::{
    build_presentation, letter_presentation, reduced_three_generator_endo, restrict_presentation,
    thue_morse_delta_elimination, Presentation,
};
use subshift::words::{connections, Connection, Substitution};
use subshift::{Error, Limits};

use common::*;

fn tau_presentation(l: &Limits) -> Presentation {
    let tau = Substitution::thue_morse();
    build_presentation(&tau, Connection::parse(&tau, "aa").unwrap(), l).unwrap()
}

/// `Φ` carried to the code `D = (X ∖ {d}) ∪ {cd}` through `ε`.
fn transported(p: &Presentation, c: usize, d: usize) -> FreeHom {
    let x = p.code.as_ref().unwrap();
    let (cw, dw) = (&x.words()[c], &x.words()[d]);
    let t = code_transform(x, cw, dw).unwrap();
    let cd = cw.concat(dw);
    let inverse_images = t
        .code
        .words()
        .iter()
        .map(|w| {
            if *w == cd {
                GroupWord::generator(c).mul(&GroupWord::generator(d))
            } else {
                GroupWord::generator(x.index_of(w).unwrap())
            }
        })
        .collect();
    let eps_inv = FreeHom::new(t.code.render_all(), x.render_all(), inverse_images).unwrap();
    assert_eq!(t.epsilon.compose(&eps_inv).unwrap(), FreeHom::identity(t.code.render_all()));
    t.epsilon.compose(&p.endo.compose(&eps_inv).unwrap()).unwrap()
}

fn catalog(l: &Limits) -> Vec<FiniteGroup> {
    let mut groups: Vec<FiniteGroup> = (2..=6).map(|n| FiniteGroup::cyclic(n).unwrap()).collect();
    groups.push(FiniteGroup::h18());
    groups.push(FiniteGroup::alternating(5, l).unwrap());
    groups
}

#[test]
fn code_transform_keeps_image_verdicts() {
    let mut l = limits();
    l.enum_cap = 13_000_000;
    let p = tau_presentation(&l);
    let groups = catalog(&l);
    let before: Vec<bool> = groups.iter().map(|s| is_image(&p.endo, s, &l).unwrap().is_some()).collect();
    for (c, d) in [(0, 1), (2, 3), (3, 0), (1, 2)] {
        let phi_d = transported(&p, c, d);
        // the alternating group only for the first pair: 60⁴ points per scan
        let n = if (c, d) == (0, 1) { groups.len() } else { groups.len() - 1 };
        let after: Vec<bool> = groups[..n].iter().map(|s| is_image(&phi_d, s, &l).unwrap().is_some()).collect();
        assert_eq!(after, before[..n], "ε for c = {c}, d = {d}");
    }
}

#[test]
fn images_spell_the_tilde_iterate() {
    let l = limits();
    for phi in [Substitution::thue_morse(), Substitution::ab_a3b(), Substitution::ac_aca2c_ac2ac()] {
        for c in connections(&phi, &l).unwrap() {
            let p = build_presentation(&phi, c, &l).unwrap();
            let x = p.code.as_ref().unwrap();
            let spell = FreeHom::inclusion(x);
            let k = p.tilde_exponent.unwrap();
            for (g, w) in x.words().iter().enumerate() {
                assert!(p.endo.image(g).is_positive());
                let iterate = phi.power_apply(k, w, &l).unwrap();
                assert_eq!(spell.apply(p.endo.image(g)), GroupWord::from_positive(&iterate), "{phi} {}", x.render(w));
            }
        }
    }
}

#[test]
fn single_connection_example_uses_the_substitution_itself() {
    let l = limits();
    let phi1 = Substitution::ab_a3b();
    let p = build_presentation(&phi1, Connection::parse(&phi1, "ba").unwrap(), &l).unwrap();
    assert_eq!(p.tilde_exponent, Some(1));
    assert_eq!(p.code.as_ref().unwrap().render_all(), ["ab", "aaab"]);
}

#[test]
fn delta_elimination_commutes_with_the_transport() {
    let l = limits();
    let p = tau_presentation(&l);
    let psi = reduced_three_generator_endo();
    assert_eq!(thue_morse_delta_elimination(&l).unwrap(), psi);
    // ξ: α′, β′, γ′ to α, β, γ and δ′ to βα⁻¹γ
    let greek = psi.source().to_vec();
    let xi_images: Vec<GroupWord> = ["abba", "ababba", "abbaba", "ababbaba"]
        .iter()
        .map(|x| {
            let target = match *x {
                "abba" => "α",
                "ababba" => "β",
                "abbaba" => "γ",
                _ => "βα⁻¹γ",
            };
            GroupWord::parse(&greek, target).unwrap()
        })
        .collect();
    let order: Vec<usize> =
        ["abba", "ababba", "abbaba", "ababbaba"].iter().map(|x| p.generators().iter().position(|g| g == x).unwrap()).collect();
    let mut images = vec![GroupWord::identity(); 4];
    for (i, &g) in order.iter().enumerate() {
        images[g] = xi_images[i].clone();
    }
    let xi = FreeHom::new(p.generators().to_vec(), greek, images).unwrap();
    assert_eq!(xi.compose(&p.endo).unwrap(), psi.compose(&xi).unwrap());
}

#[test]
fn letter_presentations() {
    let l = limits();
    let phi1 = letter_presentation(&Substitution::ab_a3b(), &l).unwrap();
    assert_eq!(phi1.generators(), ["a", "b"]);
    assert_eq!(restrict_presentation(&phi1).unwrap().generators(), ["a", "b"]);
    let phi2 = letter_presentation(&Substitution::ac_aca2c_ac2ac(), &l).unwrap();
    assert_eq!(phi2.generators(), ["a", "b", "c"]);
    let restricted = restrict_presentation(&phi2).unwrap();
    assert_eq!(restricted.generators(), ["a", "c"]);
    assert_eq!(restricted.free_rank, Some(2));
}

#[test]
fn rejected_inputs() {
    let l = limits();
    let tau = Substitution::thue_morse();
    assert!(matches!(letter_presentation(&tau, &l), Err(Error::Input(_))));
    let phi1 = Substitution::ab_a3b();
    assert!(matches!(build_presentation(&phi1, Connection::parse(&phi1, "ab").unwrap(), &l), Err(Error::Input(_))));
    let fixed = Substitution::from_rules(&[('a', "a"), ('b', "ab")]).unwrap();
    assert!(build_presentation(&fixed, Connection::parse(&fixed, "aa").unwrap(), &l).is_err());
    let idle = Substitution::from_rules(&[('a', "a")]).unwrap();
    assert!(letter_presentation(&idle, &l).is_err());
}

#[test]
fn witnesses_are_fixed_by_the_orbit_limit() {
    let l = limits();
    let p = tau_presentation(&l);
    let x: &Code = p.code.as_ref().unwrap();
    assert_eq!(x.len(), 4);
    for s in catalog(&l).iter().take(6) {
        if let Some(w) = is_image(&p.endo, s, &l).unwrap() {
            assert_eq!(subshift::images::orbit_omega(&p.endo, s, &w.f).value, w.f, "{}", s.name());
        }
    }
}
