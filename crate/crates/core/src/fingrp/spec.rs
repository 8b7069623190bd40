//! Textual group specifications such as `alt:5` or `perm:(1 2 3);(3 4 5)`.

use super::{FiniteGroup, Permutation};
use crate::{Error, Limits, Result};

fn number(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::input(format!("{what} must be a number, got '{s}'")))
}

/// Parses `cyclic:N`, `elab:P:K`, `sym:N`, `alt:N`, `h18` or `perm:CYCLES;CYCLES;…`.
pub fn parse_group_spec(spec: &str, limits: &Limits) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "cyclic" => FiniteGroup::cyclic(number(rest, "cyclic order")?),
        "elab" => {
            let (p, k) = rest.split_once(':').ok_or_else(|| Error::input("expected elab:P:K"))?;
            FiniteGroup::elem_abelian(number(p, "prime")?, number(k, "rank")?, limits)
        }
        "sym" => FiniteGroup::symmetric(number(rest, "degree")?, limits),
        "alt" => FiniteGroup::alternating(number(rest, "degree")?, limits),
        "h18" if rest.is_empty() => Ok(FiniteGroup::h18()),
        "perm" => {
            let parts: Vec<&str> = rest.split(';').map(str::trim).filter(|p| !p.is_empty()).collect();
            if parts.is_empty() {
                return Err(Error::input("perm: needs at least one generator"));
            }
            let degree = parts.iter().map(|p| Permutation::degree_of(p)).max().unwrap_or(1).max(1);
            let gens = parts.iter().map(|p| Permutation::parse_cycles(p, degree)).collect::<Result<Vec<_>>>()?;
            FiniteGroup::perm_group(spec.to_string(), gens, limits)
        }
        _ => Err(Error::input(format!("unknown group specification '{spec}'"))),
    }
}
