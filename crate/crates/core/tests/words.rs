mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use subshift::omega::omega_of_map;
use subshift::words::{factors, omega_power_function, LetterMap, Substitution, Word};

use common::*;

fn matrix_product(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn compose(g: &LetterMap, f: &LetterMap) -> LetterMap {
    LetterMap(f.0.iter().map(|&x| g.0[x]).collect())
}

fn power(f: &LetterMap, k: usize) -> LetterMap {
    (0..k).fold(LetterMap((0..f.0.len()).collect()), |acc, _| compose(f, &acc))
}

proptest! {
    #![proptest_config(seeded(256))]

    #[test]
    fn apply_is_a_monoid_homomorphism(phi in substitution(4), u in word(2, 8), v in word(2, 8)) {
        let uv = u.concat(&v);
        prop_assert_eq!(phi.apply(&uv).unwrap(), phi.apply(&u).unwrap().concat(&phi.apply(&v).unwrap()));
    }

    #[test]
    fn powers_compose(phi in substitution(3), w in word(2, 4), j in 0usize..4, k in 0usize..4) {
        let l = limits();
        let direct = phi.power_apply(j + k, &w, &l).unwrap();
        let staged = phi.power_apply(j, &phi.power_apply(k, &w, &l).unwrap(), &l).unwrap();
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn incidence_matrix_of_composition(pair in (2usize..=3).prop_flat_map(|n| {
        let images = proptest::collection::vec(proptest::collection::vec(0..n as u8, 1..=3), n);
        (images.clone(), images)
    })) {
        let n = pair.0.len();
        let alphabet = subshift::words::Alphabet::new("abc".chars().take(n)).unwrap();
        let phi = Substitution::new(alphabet.clone(), pair.0.into_iter().map(Word).collect()).unwrap();
        let psi = Substitution::new(alphabet, pair.1.into_iter().map(Word).collect()).unwrap();
        let composed = phi.compose(&psi).unwrap();
        prop_assert_eq!(composed.incidence_matrix(), matrix_product(&phi.incidence_matrix(), &psi.incidence_matrix()));
    }

    #[test]
    fn omega_power_laws(f in (1usize..=7).prop_flat_map(|n| proptest::collection::vec(0..n, n))) {
        let f = LetterMap(f);
        let w = omega_power_function(&f);
        let g = &w.value;
        prop_assert_eq!(&power(&f, w.exponent), g);
        prop_assert_eq!(&compose(g, &power(&f, w.period)), g);
        prop_assert_eq!(&compose(g, g), g);
        prop_assert!(w.exponent >= 1 && w.exponent.is_multiple_of(w.period));
        prop_assert_eq!(&omega_of_map(&f.0).value, &g.0);
    }

    #[test]
    fn factor_sets_match_a_scan(phi in substitution(3), max_len in 1usize..=6) {
        prop_assume!(phi.is_primitive());
        let l = limits();
        let lang = factors(&phi, max_len, &l).unwrap();
        let k = lang.certificate().iterate + 2;
        let text = phi.power_apply(k, &Word::letter(0), &l).unwrap();
        for len in 1..=max_len {
            let got: BTreeSet<Vec<u8>> = lang.factors_of_len(len).iter().map(|w| w.0.clone()).collect();
            prop_assert_eq!(got, scanned_factors(&text.0, len), "length {}", len);
        }
    }

    #[test]
    fn factor_sets_are_factor_closed(phi in substitution(3), max_len in 1usize..=7) {
        prop_assume!(phi.is_primitive());
        let lang = factors(&phi, max_len, &limits()).unwrap();
        for w in lang.all_factors() {
            for start in 0..w.len() {
                for len in 1..=w.len() - start {
                    prop_assert!(lang.contains(&w.factor(start, len)).unwrap());
                }
            }
        }
    }
}

#[test]
fn builtin_factor_sets_match_long_iterates() {
    let l = limits();
    for phi in [Substitution::thue_morse(), Substitution::ab_a3b(), Substitution::ac_aca2c_ac2ac()] {
        let lang = factors(&phi, 10, &l).unwrap();
        let text = iterate_prefix(&phi, 0, 1 << 16);
        for len in 1..=10 {
            let got: BTreeSet<Vec<u8>> = lang.factors_of_len(len).iter().map(|w| w.0.clone()).collect();
            assert_eq!(got, scanned_factors(&text, len), "{phi} at length {len}");
        }
    }
}
