//! Presentations `⟨X | Φ^ω(x) = x⟩` built from a substitution.

use serde::Serialize;

use crate::codes::{bounded_delay_check, is_code, parse_indices, Code, DelayReport};
use crate::freegrp::{is_automorphism, FreeHom, GroupWord, Syllable};
use crate::returns::x_set;
use crate::words::{
    connections, factors, first_letter_map, is_weakly_primitive, last_letter_map, tilde_exponent,
    ultimate_alphabet, Connection, Substitution, WeakPrimitivity,
};
use crate::{Error, Limits, Result};

/// Generators, the endomorphism `Φ` and how they were obtained.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub source: Substitution,
    /// The code `X` when generators are words; absent for letter presentations.
    pub code: Option<Code>,
    pub endo: FreeHom,
    pub connection: Option<String>,
    pub tilde_exponent: Option<usize>,
    pub is_code: bool,
    /// Bounded-delay search for the letter images over the subshift language.
    pub delay: Option<DelayReport>,
    /// Set when the relations are known to be trivial.
    pub free_rank: Option<usize>,
    pub notes: Vec<String>,
}

impl Presentation {
    pub fn generators(&self) -> &[String] {
        self.endo.source()
    }
}

/// The three-generator endomorphism of the Thue–Morse case:
/// `α ↦ γαβ`, `β ↦ γβα⁻¹γαβ`, `γ ↦ γαβα⁻¹γβ`.
pub fn reduced_three_generator_endo() -> FreeHom {
    FreeHom::endo_from_strs(&["α", "β", "γ"], &["γαβ", "γβα⁻¹γαβ", "γαβα⁻¹γβ"])
        .expect("fixed images are well formed")
}

fn is_thue_morse(phi: &Substitution) -> bool {
    phi.size() == 2 && phi.images()[0].0 == [0, 1] && phi.images()[1].0 == [1, 0]
}

/// Letters `(a, b)` when every image starts with `a` and ends with `b`.
fn shared_ends(phi: &Substitution) -> Option<(u8, u8)> {
    let first = first_letter_map(phi).0;
    let last = last_letter_map(phi).0;
    let same = |m: &[usize]| m.iter().all(|&x| x == m[0]);
    (same(&first) && same(&last)).then(|| (first[0] as u8, last[0] as u8))
}

fn validity_notes(phi: &Substitution, invertible: bool) -> Vec<String> {
    let mut notes = Vec::new();
    if is_thue_morse(phi) {
        notes.push("Thue–Morse substitution: the presentation is known to hold".to_string());
    }
    if invertible {
        notes.push("ultimately group invertible: the presentation is known to hold".to_string());
    }
    if shared_ends(phi).is_some() {
        notes.push(
            "all images share their first and their last letter: the presentation is known to hold \
             under the bounded-delay hypothesis"
                .to_string(),
        );
    }
    notes
}

fn ultimately_group_invertible(phi: &Substitution) -> Result<bool> {
    let b: Vec<usize> = ultimate_alphabet(phi).into_iter().map(usize::from).collect();
    Ok(is_automorphism(&FreeHom::from_substitution(phi).restrict(&b)?))
}

fn delay_report(phi: &Substitution, limits: &Limits) -> Result<DelayReport> {
    let images = Code::new(phi.alphabet().clone(), phi.images().iter().cloned())?;
    let lang = factors(phi, limits.delay_bound, limits)?;
    Ok(bounded_delay_check(&images, &lang, limits.delay_n, limits.delay_bound))
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub substitution: String,
    pub primitive: bool,
    pub weakly_primitive: WeakPrimitivity,
    pub connections: Vec<String>,
    pub ultimate_alphabet: Vec<String>,
    pub ultimately_group_invertible: bool,
    pub same_first_last_letters: bool,
    /// Rank of the presented group when it is known to be free.
    pub free_rank: Option<usize>,
    pub notes: Vec<String>,
}

pub fn analyze(phi: &Substitution, limits: &Limits) -> Result<Analysis> {
    let weak = is_weakly_primitive(phi, limits.max_iterates);
    let conns = if matches!(weak, WeakPrimitivity::Yes(_)) {
        connections(phi, limits)?.iter().map(|c| c.render(phi)).collect()
    } else {
        Vec::new()
    };
    let b = ultimate_alphabet(phi);
    let invertible = matches!(weak, WeakPrimitivity::Yes(_)) && ultimately_group_invertible(phi)?;
    Ok(Analysis {
        substitution: phi.describe(),
        primitive: phi.is_primitive(),
        weakly_primitive: weak,
        connections: conns,
        ultimate_alphabet: b.iter().map(|&l| phi.alphabet().symbol(l).to_string()).collect(),
        ultimately_group_invertible: invertible,
        same_first_last_letters: shared_ends(phi).is_some(),
        free_rank: invertible.then_some(b.len()),
        notes: validity_notes(phi, invertible),
    })
}

fn require_weakly_primitive(phi: &Substitution, limits: &Limits) -> Result<()> {
    match is_weakly_primitive(phi, limits.max_iterates) {
        WeakPrimitivity::Yes(_) => Ok(()),
        WeakPrimitivity::No => Err(Error::input("substitution is not weakly primitive")),
        WeakPrimitivity::Inconclusive => {
            Err(Error::resource("weak primitivity undecided within the iterate cap"))
        }
    }
}

/// `X = b⁻¹R(ba)b` with `Φ_X(x)` the factorization of `φ^k(x)` over `X`,
/// where `k` is the tilde exponent of the connection.
pub fn build_presentation(phi: &Substitution, c: Connection, limits: &Limits) -> Result<Presentation> {
    require_weakly_primitive(phi, limits)?;
    if !connections(phi, limits)?.contains(&c) {
        return Err(Error::input(format!("{} is not a connection", c.render(phi))));
    }
    let x = x_set(phi, c, limits)?;
    if let crate::codes::CodeCheck::Ambiguous(amb) = is_code(&x) {
        return Err(Error::structural(format!("X is not a code: {} factors twice", x.render(&amb.word))));
    }
    let k = tilde_exponent(phi, c)?;
    let mut images = Vec::with_capacity(x.len());
    for w in x.words() {
        let image = phi.power_apply(k, w, limits)?;
        let parts = parse_indices(&x, &image).map_err(|e| match e {
            Error::NoFactorization { .. } => {
                Error::structural(format!("image of {} does not factor over X", x.render(w)))
            }
            other => other,
        })?;
        images.push(GroupWord::reduce(parts.into_iter().map(|i| Syllable::new(i, false))));
    }
    let endo = FreeHom::endo(x.render_all(), images)?;
    let invertible = ultimately_group_invertible(phi)?;
    Ok(Presentation {
        source: phi.clone(),
        code: Some(x),
        endo,
        connection: Some(c.render(phi)),
        tilde_exponent: Some(k),
        is_code: true,
        delay: Some(delay_report(phi, limits)?),
        free_rank: None,
        notes: validity_notes(phi, invertible),
    })
}

/// Removes generator `d` from a word presentation, replacing it by `expr`
/// in the remaining generators.
///
/// Requires `d = expr` in the free group on the alphabet and that the
/// transported endomorphism commutes with the substitution `d ↦ expr`.
pub fn eliminate_generator(p: &Presentation, d: usize, expr: &GroupWord) -> Result<FreeHom> {
    let code = p.code.as_ref().ok_or_else(|| Error::input("generator elimination needs word generators"))?;
    let n = p.endo.rank();
    if d >= n || expr.syllables().iter().any(|s| s.generator == d) {
        return Err(Error::input("replacement must avoid the eliminated generator"));
    }
    let spell = FreeHom::inclusion(code);
    if spell.apply(expr) != spell.apply(&GroupWord::generator(d)) {
        return Err(Error::structural("replacement word differs from the generator in the free group"));
    }
    let xi_images = (0..n).map(|g| if g == d { expr.clone() } else { GroupWord::generator(g) }).collect();
    let xi = FreeHom::endo(p.endo.source().to_vec(), xi_images)?;
    let keep: Vec<usize> = (0..n).filter(|&g| g != d).collect();
    let transported = xi.compose(&p.endo)?;
    let reduced = FreeHom::endo(p.endo.source().to_vec(), {
        let mut ims = transported.images().to_vec();
        ims[d] = GroupWord::generator(d);
        ims
    })?
    .restrict(&keep)?;
    // ξ∘Φ(d) must equal Ψ(ξ(d)), Ψ acting on the kept generators.
    let lifted = reduced_lift(&reduced, &keep, n)?;
    if lifted.apply(expr) != transported.image(d).clone() {
        return Err(Error::structural("eliminated generator is not transported consistently"));
    }
    Ok(reduced)
}

/// The endomorphism on the kept generators, viewed inside the full generator set.
fn reduced_lift(reduced: &FreeHom, keep: &[usize], n: usize) -> Result<FreeHom> {
    let names: Vec<String> = (0..n).map(|g| format!("g{g}")).collect();
    let mut images = vec![GroupWord::identity(); n];
    for (new, &old) in keep.iter().enumerate() {
        images[old] = GroupWord::reduce(
            reduced.image(new).syllables().iter().map(|s| Syllable::new(keep[s.generator], s.inverse)),
        );
    }
    FreeHom::endo(names, images)
}

/// `Φ_X` of the Thue–Morse connection `aa` with `ababbaba = ababba·abba⁻¹·abbaba`
/// eliminated, its generators renamed `α, β, γ`.
pub fn thue_morse_delta_elimination(limits: &Limits) -> Result<FreeHom> {
    let tau = Substitution::thue_morse();
    let p = build_presentation(&tau, Connection::parse(&tau, "aa")?, limits)?;
    let names = p.generators().to_vec();
    let pos = |s: &str| names.iter().position(|n| n == s).ok_or_else(|| Error::structural(format!("{s} missing from X")));
    let (alpha, beta, gamma, delta) = (pos("abba")?, pos("ababba")?, pos("abbaba")?, pos("ababbaba")?);
    let expr = GroupWord::reduce([
        Syllable::new(beta, false),
        Syllable::new(alpha, true),
        Syllable::new(gamma, false),
    ]);
    let reduced = eliminate_generator(&p, delta, &expr)?;
    // kept generators appear in X order; rename them
    let greek = |name: &str| match name {
        "abba" => "α",
        "ababba" => "β",
        _ => "γ",
    };
    let order: Vec<usize> = ["α", "β", "γ"]
        .iter()
        .map(|g| reduced.source().iter().position(|n| greek(n) == *g).expect("three kept generators"))
        .collect();
    let mut perm = vec![0; 3];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let renamed = reduced.permute(&perm)?;
    FreeHom::endo(vec!["α".into(), "β".into(), "γ".into()], renamed.images().to_vec())
}

/// `⟨A | φ_G^ω(a) = a⟩` for a substitution whose images share first and last letters.
pub fn letter_presentation(phi: &Substitution, limits: &Limits) -> Result<Presentation> {
    require_weakly_primitive(phi, limits)?;
    if shared_ends(phi).is_none() {
        let first = first_letter_map(phi).0;
        let last = last_letter_map(phi).0;
        let render = |m: &[usize]| -> String {
            m.iter().map(|&x| phi.alphabet().symbol(x as u8)).collect::<String>()
        };
        return Err(Error::input(format!(
            "images must share first and last letters; first letters {}, last letters {}",
            render(&first),
            render(&last)
        )));
    }
    let invertible = ultimately_group_invertible(phi)?;
    Ok(Presentation {
        source: phi.clone(),
        code: None,
        endo: FreeHom::from_substitution(phi),
        connection: None,
        tilde_exponent: None,
        is_code: true,
        delay: Some(delay_report(phi, limits)?),
        free_rank: None,
        notes: validity_notes(phi, invertible),
    })
}

/// Drops the generators that do not occur in any `φ^ω(a)`.
pub fn restrict_presentation(p: &Presentation) -> Result<Presentation> {
    if p.code.is_some() {
        return Err(Error::input("restriction applies to letter presentations"));
    }
    let b: Vec<usize> = ultimate_alphabet(&p.source).into_iter().map(usize::from).collect();
    let endo = p.endo.restrict(&b)?;
    let free_rank = is_automorphism(&endo).then_some(b.len());
    let mut notes = p.notes.clone();
    if let Some(r) = free_rank {
        notes.push(format!("restriction is an automorphism: the relations are trivial, free of rank {r}"));
    }
    Ok(Presentation { endo, free_rank, notes, ..p.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn analyze_examples() {
        let a = analyze(&Substitution::thue_morse(), &l()).unwrap();
        assert!(a.primitive);
        assert_eq!(a.weakly_primitive, WeakPrimitivity::Yes(3));
        assert_eq!(a.connections, ["aa", "ab", "ba", "bb"]);
        assert_eq!(a.ultimate_alphabet, ["a", "b"]);
        assert!(!a.ultimately_group_invertible);
        let a = analyze(&Substitution::ac_aca2c_ac2ac(), &l()).unwrap();
        assert!(a.ultimately_group_invertible);
        assert_eq!(a.ultimate_alphabet, ["a", "c"]);
        assert_eq!(a.free_rank, Some(2));
        let a = analyze(&Substitution::ab_a3b(), &l()).unwrap();
        assert!(a.same_first_last_letters);
        assert_eq!(a.connections, ["ba"]);
    }

    #[test]
    fn thue_morse_presentation() {
        let tau = Substitution::thue_morse();
        let p = build_presentation(&tau, Connection::parse(&tau, "aa").unwrap(), &l()).unwrap();
        assert_eq!(p.generators(), ["abba", "ababba", "abbaba", "ababbaba"]);
        assert_eq!(p.tilde_exponent, Some(2));
        let shown: Vec<String> = (0..4).map(|g| p.endo.image(g).render_tokens(p.generators())).collect();
        assert_eq!(
            shown,
            [
                "abbaba abba ababba",
                "abbaba ababbaba abba ababba",
                "abbaba abba ababbaba ababba",
                "abbaba ababbaba abba ababbaba ababba",
            ]
        );
        assert!(p.endo.images().iter().all(GroupWord::is_positive));
    }

    #[test]
    fn delta_elimination_matches_fixed_endo() {
        assert_eq!(thue_morse_delta_elimination(&l()).unwrap(), reduced_three_generator_endo());
    }

    #[test]
    fn ab_a3b_presentation() {
        let phi = Substitution::ab_a3b();
        let p = build_presentation(&phi, Connection::parse(&phi, "ba").unwrap(), &l()).unwrap();
        assert_eq!(p.tilde_exponent, Some(1));
        assert!(p.endo.images().iter().all(GroupWord::is_positive));
    }

    #[test]
    fn rejects_non_weakly_primitive() {
        let id = Substitution::from_rules(&[('a', "a")]).unwrap();
        assert!(build_presentation(&id, Connection { b: 0, a: 0 }, &l()).is_err());
        assert!(letter_presentation(&id, &l()).is_err());
    }

    #[test]
    fn letter_presentations() {
        let p = letter_presentation(&Substitution::ab_a3b(), &l()).unwrap();
        assert_eq!(p.generators(), ["a", "b"]);
        assert_eq!(restrict_presentation(&p).unwrap().generators(), ["a", "b"]);
        let p2 = letter_presentation(&Substitution::ac_aca2c_ac2ac(), &l()).unwrap();
        assert_eq!(p2.generators(), ["a", "b", "c"]);
        let r = restrict_presentation(&p2).unwrap();
        assert_eq!(r.generators(), ["a", "c"]);
        assert_eq!(r.free_rank, Some(2));
        let err = letter_presentation(&Substitution::thue_morse(), &l()).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }
}
