//! JSON formats for substitutions, endomorphisms and reports.
//!
//! Substitution: `{"alphabet": ["a","b"], "rules": {"a": "ab", "b": "ba"}}`.
//! Endomorphism: `{"generators": ["α","β"], "images": {"α": "β α^-1", "β": "α"}}`,
//! with whitespace-separated tokens and inverses marked `^-1`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::codes::{DelayReport, DelayWitness};
use crate::fingrp::FiniteGroup;
use crate::freegrp::{FreeHom, GroupWord};
use crate::images::Witness;
use crate::pipeline::{reduced_three_generator_endo, Presentation};
use crate::words::{Alphabet, Substitution};
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct SubstitutionFile {
    alphabet: Vec<String>,
    rules: Map<String, Value>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EndoFile {
    generators: Vec<String>,
    images: Map<String, Value>,
}

fn single_char(s: &str) -> Result<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::input(format!("alphabet entries must be single characters, got '{s}'"))),
    }
}

fn rule_text<'a>(rules: &'a Map<String, Value>, key: &str) -> Result<&'a str> {
    rules
        .get(key)
        .ok_or_else(|| Error::input(format!("no rule for '{key}'")))?
        .as_str()
        .ok_or_else(|| Error::input(format!("rule for '{key}' must be a string")))
}

pub fn substitution_from_json(text: &str) -> Result<Substitution> {
    let file: SubstitutionFile =
        serde_json::from_str(text).map_err(|e| Error::input(format!("substitution file: {e}")))?;
    let alphabet = Alphabet::new(file.alphabet.iter().map(|s| single_char(s)).collect::<Result<Vec<_>>>()?)?;
    if let Some(extra) = file.rules.keys().find(|k| !file.alphabet.contains(k)) {
        return Err(Error::input(format!("rule for '{extra}', which is not in the alphabet")));
    }
    let images = file
        .alphabet
        .iter()
        .map(|l| alphabet.parse(rule_text(&file.rules, l)?))
        .collect::<Result<Vec<_>>>()?;
    Substitution::new(alphabet, images)
}

pub fn substitution_to_json(phi: &Substitution) -> Value {
    let alphabet: Vec<String> = phi.alphabet().symbols().iter().map(|c| c.to_string()).collect();
    let rules: Map<String, Value> = phi
        .alphabet()
        .letters()
        .map(|l| (phi.alphabet().symbol(l).to_string(), Value::String(phi.alphabet().render(phi.image(l)))))
        .collect();
    json!({ "alphabet": alphabet, "rules": rules })
}

pub fn endo_from_json(text: &str) -> Result<FreeHom> {
    let file: EndoFile = serde_json::from_str(text).map_err(|e| Error::input(format!("endomorphism file: {e}")))?;
    if let Some(extra) = file.images.keys().find(|k| !file.generators.contains(k)) {
        return Err(Error::input(format!("image for '{extra}', which is not a generator")));
    }
    let images = file
        .generators
        .iter()
        .map(|g| GroupWord::parse(&file.generators, rule_text(&file.images, g)?))
        .collect::<Result<Vec<_>>>()?;
    FreeHom::endo(file.generators, images)
}

pub fn endo_to_json(phi: &FreeHom) -> Value {
    let images: Map<String, Value> = phi
        .source()
        .iter()
        .zip(phi.images())
        .map(|(g, w)| (g.clone(), Value::String(w.render_tokens(phi.target()))))
        .collect();
    json!({ "generators": phi.source(), "images": images })
}

/// Names accepted in place of a substitution file.
pub const BUILTIN_SUBSTITUTIONS: [&str; 3] = ["thue-morse", "ab-a3b", "ac-aca2c-ac2ac"];

/// Name accepted in place of an endomorphism file.
pub const BUILTIN_ENDO: &str = "thue-morse-reduced";

/// Either kind of input the image commands accept.
#[derive(Debug, Clone)]
pub enum MapInput {
    Substitution(Substitution),
    Endo(FreeHom),
}

impl MapInput {
    pub fn to_endo(&self) -> FreeHom {
        match self {
            MapInput::Substitution(s) => FreeHom::from_substitution(s),
            MapInput::Endo(e) => e.clone(),
        }
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| Error::input(format!("cannot read {path}: {e}")))
}

/// A built-in name or the path of a substitution file.
pub fn load_substitution(arg: &str) -> Result<Substitution> {
    match Substitution::builtin(arg) {
        Some(s) => Ok(s),
        None => substitution_from_json(&read(arg)?),
    }
}

/// A built-in name or the path of an endomorphism file.
pub fn load_endo(arg: &str) -> Result<FreeHom> {
    if arg == BUILTIN_ENDO {
        return Ok(reduced_three_generator_endo());
    }
    endo_from_json(&read(arg)?)
}

/// A substitution or an endomorphism, told apart by the keys of the file.
pub fn load_map(arg: &str) -> Result<MapInput> {
    if let Some(s) = Substitution::builtin(arg) {
        return Ok(MapInput::Substitution(s));
    }
    if arg == BUILTIN_ENDO {
        return Ok(MapInput::Endo(reduced_three_generator_endo()));
    }
    let text = read(arg)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::input(format!("{arg}: {e}")))?;
    if value.get("rules").is_some() {
        Ok(MapInput::Substitution(substitution_from_json(&text)?))
    } else {
        Ok(MapInput::Endo(endo_from_json(&text)?))
    }
}

fn delay_witness_to_json(w: &DelayWitness, alphabet: &Alphabet) -> Value {
    let render = |ws: &[crate::words::Word]| ws.iter().map(|x| alphabet.render(x)).collect::<Vec<_>>();
    json!({
        "form": w.form,
        "u": alphabet.render(&w.u),
        "left": render(&w.left),
        "right": render(&w.right),
        "v": alphabet.render(&w.v),
    })
}

pub fn delay_to_json(r: &DelayReport, alphabet: &Alphabet) -> Value {
    json!({
        "verdict": r.verdict,
        "delay": r.delay,
        "bound": r.bound,
        "equalities_checked": r.equalities_checked,
        "witness": r.witness.as_ref().map(|w| delay_witness_to_json(w, alphabet)),
    })
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    let endo: Map<String, Value> = p
        .endo
        .source()
        .iter()
        .zip(p.endo.images())
        .map(|(g, w)| (g.clone(), Value::String(w.render_tokens(p.endo.target()))))
        .collect();
    json!({
        "generators": p.generators(),
        "endomorphism": endo,
        "connection": p.connection,
        "tilde_exponent": p.tilde_exponent,
        "code": p.is_code,
        "delay": p.delay.as_ref().map(|d| delay_to_json(d, p.source.alphabet())),
        "free_rank": p.free_rank,
        "notes": p.notes,
    })
}

pub fn witness_to_json(group: &FiniteGroup, w: Option<&Witness>) -> Value {
    json!({
        "group": group.name(),
        "verdict": if w.is_some() { "image" } else { "not_image" },
        "witness": w.map(|w| json!({ "images": w.f.render(group), "period": w.period })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_round_trip() {
        let text = r#"{"alphabet": ["a","b"], "rules": {"a": "ab", "b": "ba"}}"#;
        let phi = substitution_from_json(text).unwrap();
        assert_eq!(phi, Substitution::thue_morse());
        let back = substitution_from_json(&substitution_to_json(&phi).to_string()).unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn substitution_errors() {
        for bad in [
            r#"{"alphabet": ["ab"], "rules": {"ab": "ab"}}"#,
            r#"{"alphabet": ["a"], "rules": {}}"#,
            r#"{"alphabet": ["a"], "rules": {"a": ""}}"#,
            r#"{"alphabet": ["a"], "rules": {"a": "ax"}}"#,
            r#"{"alphabet": ["a"], "rules": {"a": "a", "b": "a"}}"#,
            r#"not json"#,
        ] {
            assert!(matches!(substitution_from_json(bad), Err(Error::Input(_))), "{bad}");
        }
    }

    #[test]
    fn endo_round_trip() {
        let text = r#"{"generators": ["α","β","γ"], "images": {"α": "γ α β", "β": "γ β α^-1 γ α β", "γ": "γ α β α^-1 γ β"}}"#;
        let psi = endo_from_json(text).unwrap();
        assert_eq!(psi, reduced_three_generator_endo());
        assert_eq!(endo_from_json(&endo_to_json(&psi).to_string()).unwrap(), psi);
    }
}
