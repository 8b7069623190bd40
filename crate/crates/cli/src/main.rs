//! `subshift`: return words, presentations and finite images of substitutions.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use subshift::codes::{DelayReport, DelayVerdict, EqualityForm};
use subshift::fingrp::parse_group_spec;
use subshift::freegrp::{fold, GroupWord};
use subshift::images::{abelian_rank, image_survey, is_image};
use subshift::io::{load_endo, load_map, load_substitution, presentation_to_json, witness_to_json};
use subshift::pipeline::{analyze, build_presentation, letter_presentation, restrict_presentation, Presentation};
use subshift::reproduce::{run, RunOptions};
use subshift::returns::{return_words, x_set_from_returns};
use subshift::words::{connections, Alphabet, Connection, WeakPrimitivity};
use subshift::{Error, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

/// Settings read from `--config`; command-line flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    format: Option<Format>,
    seed: Option<u64>,
    limits: Option<Limits>,
}

#[derive(Debug, Parser)]
#[command(name = "subshift", version, about = "Return words, presentations and finite images of substitutions")]
struct Cli {
    /// JSON file with `format`, `seed` and `limits` entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Longest word an iterate may produce.
    #[arg(long, global = true)]
    cap_word_len: Option<usize>,
    /// Most substitution iterates tried.
    #[arg(long, global = true)]
    cap_iterates: Option<usize>,
    /// Largest number of maps the image scan may enumerate.
    #[arg(long, global = true)]
    cap_enum: Option<u64>,
    /// Seed for the randomized checks of `verify-paper`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for the image scan.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Primitivity, connections, ultimate alphabet and related flags.
    Analyze {
        /// Substitution file or built-in name.
        substitution: String,
    },
    /// Return words of a block and, for a connection, the generator code.
    Returns {
        substitution: String,
        #[arg(long)]
        block: String,
    },
    /// The presentation attached to a connection.
    Presentation {
        substitution: String,
        /// Two-letter connection `ba`; the first one found is used when omitted.
        #[arg(long, conflicts_with = "letters")]
        connection: Option<String>,
        /// Use the letters as generators (images must share first and last letters).
        #[arg(long)]
        letters: bool,
    },
    /// Decide whether a finite group is a continuous image of the presented group.
    CheckImage {
        /// Substitution file, endomorphism file or built-in name.
        map: String,
        /// cyclic:N, elab:P:K, sym:N, alt:N, h18 or perm:(..);(..)
        #[arg(long)]
        group: String,
    },
    /// Run `check-image` over several groups and report a rank lower bound.
    Survey {
        map: String,
        /// Group specs; repeat the flag or separate with commas.
        #[arg(long = "group", required = true, value_delimiter = ',')]
        groups: Vec<String>,
    },
    /// Rank of the limit of the abelianized endomorphism modulo a prime.
    AbelianRank {
        map: String,
        #[arg(long)]
        prime: u64,
    },
    /// Stallings folding of a finitely generated subgroup.
    Fold {
        /// Comma-separated group words, inverses written `x^-1` or `x⁻¹`.
        #[arg(long, required = true, value_delimiter = ',')]
        generators: Vec<String>,
        /// Names of the free generators; single characters of the input by default.
        #[arg(long, value_delimiter = ',')]
        names: Vec<String>,
    },
    /// Recompute every worked example and print a pass/fail table.
    VerifyPaper {
        /// Replacement for the three-generator Thue–Morse endomorphism.
        #[arg(long)]
        psi_file: Option<String>,
    },
}

/// Output of a command and whether its query was answered positively.
struct Outcome {
    json: Value,
    text: String,
    yes: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, yes: true }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::NoFactorization { .. } => 2,
        Error::Resource(_) => 3,
        Error::Structural(_) => 1,
    }
}

fn settings(cli: &Cli) -> Result<(Format, u64, Limits), Error> {
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<ConfigFile>(&text).map_err(|e| Error::input(format!("config: {e}")))?
        }
        None => ConfigFile::default(),
    };
    let mut limits = file.limits.unwrap_or_default();
    if let Some(v) = cli.cap_word_len {
        limits.max_word_len = v;
    }
    if let Some(v) = cli.cap_iterates {
        limits.max_iterates = v;
    }
    if let Some(v) = cli.cap_enum {
        limits.enum_cap = v;
    }
    if let Some(v) = cli.jobs {
        limits.jobs = v;
    }
    if limits.max_word_len == 0 || limits.max_iterates == 0 || limits.enum_cap == 0 || limits.jobs == 0 {
        return Err(Error::input("caps and --jobs must be positive"));
    }
    let format = cli.format.or(file.format).unwrap_or(Format::Text);
    let seed = cli.seed.or(file.seed).unwrap_or(RunOptions::default().seed);
    Ok((format, seed, limits))
}

fn delay_text(d: &DelayReport, alphabet: &Alphabet) -> String {
    let mut s = format!(
        "bounded delay {}: {} ({} equalities up to length {})",
        d.delay,
        match d.verdict {
            DelayVerdict::VerifiedUpToBound => "verified up to the bound",
            DelayVerdict::Counterexample => "counterexample",
        },
        d.equalities_checked,
        d.bound
    );
    if let Some(w) = &d.witness {
        let join = |ws: &[subshift::words::Word]| ws.iter().map(|x| alphabet.render(x)).collect::<Vec<_>>().join("·");
        s += &format!(
            "\n  {} witness: u={} left={} right={} v={}",
            match w.form {
                EqualityForm::Framed => "framed",
                EqualityForm::Shifted => "shifted",
            },
            alphabet.render(&w.u),
            join(&w.left),
            join(&w.right),
            alphabet.render(&w.v)
        );
    }
    s
}

fn presentation_text(p: &Presentation) -> String {
    let mut lines = vec![format!("generators: {}", p.generators().join(", "))];
    if let Some(c) = &p.connection {
        lines.push(format!("connection: {c}"));
    }
    if let Some(k) = p.tilde_exponent {
        lines.push(format!("tilde exponent: {k}"));
    }
    lines.push(format!("code: {}", p.is_code));
    lines.push("endomorphism:".into());
    for (g, w) in p.endo.source().iter().zip(p.endo.images()) {
        lines.push(format!("  {g} -> {}", w.render(p.endo.target())));
    }
    if let Some(d) = &p.delay {
        lines.push(delay_text(d, p.source.alphabet()));
    }
    if let Some(r) = p.free_rank {
        lines.push(format!("free of rank {r}"));
    }
    lines.extend(p.notes.iter().map(|n| format!("note: {n}")));
    lines.join("\n")
}

fn cmd_analyze(subst: &str, limits: &Limits) -> Result<Outcome, Error> {
    let phi = load_substitution(subst)?;
    let a = analyze(&phi, limits)?;
    let json = serde_json::to_value(&a).expect("analysis serializes");
    let mut text = vec![
        format!("substitution: {}", a.substitution),
        format!("primitive: {}", a.primitive),
        format!(
            "weakly primitive: {}",
            match a.weakly_primitive {
                WeakPrimitivity::Yes(n) => format!("yes (n = {n})"),
                WeakPrimitivity::No => "no".into(),
                WeakPrimitivity::Inconclusive => "inconclusive".into(),
            }
        ),
        format!("connections: {}", a.connections.join(", ")),
        format!("ultimate alphabet: {}", a.ultimate_alphabet.join(", ")),
        format!("ultimately group invertible: {}", a.ultimately_group_invertible),
        format!("same first and last letters: {}", a.same_first_last_letters),
    ];
    if let Some(r) = a.free_rank {
        text.push(format!("free of rank {r}"));
    }
    text.extend(a.notes.iter().map(|n| format!("note: {n}")));
    Ok(Outcome::ok(json, text.join("\n")))
}

fn cmd_returns(subst: &str, block: &str, limits: &Limits) -> Result<Outcome, Error> {
    let phi = load_substitution(subst)?;
    let alphabet = phi.alphabet();
    let u = alphabet.parse(block)?;
    let data = return_words(&phi, &u, limits)?;
    let returns: Vec<String> = data.returns.iter().map(|w| alphabet.render(w)).collect();
    // A two-letter block that is a connection also yields its generator code.
    let x = match Connection::parse(&phi, block) {
        Ok(c) if connections(&phi, limits)?.contains(&c) => Some(x_set_from_returns(&phi, c, &data)?.render_all()),
        _ => None,
    };
    let json = json!({
        "block": block,
        "recurrence_bound": data.recurrence_bound,
        "window": data.window,
        "returns": returns,
        "certificate": data.certificate,
        "x_set": x,
    });
    let mut text = format!(
        "block {block}: recurrence bound {}, window {}\nreturn words: {}",
        data.recurrence_bound,
        data.window,
        returns.join(", ")
    );
    if let Some(x) = &x {
        text += &format!("\ngenerator code: {}", x.join(", "));
    }
    Ok(Outcome::ok(json, text))
}

fn cmd_presentation(subst: &str, connection: Option<&str>, letters: bool, limits: &Limits) -> Result<Outcome, Error> {
    let phi = load_substitution(subst)?;
    let p = if letters {
        restrict_presentation(&letter_presentation(&phi, limits)?)?
    } else {
        let c = match connection {
            Some(s) => Connection::parse(&phi, s)?,
            None => *connections(&phi, limits)?.first().ok_or_else(|| Error::input("no connection"))?,
        };
        build_presentation(&phi, c, limits)?
    };
    Ok(Outcome::ok(presentation_to_json(&p), presentation_text(&p)))
}

fn cmd_check_image(map: &str, group: &str, limits: &Limits) -> Result<Outcome, Error> {
    let phi = load_map(map)?.to_endo();
    let s = parse_group_spec(group, limits)?;
    let w = is_image(&phi, &s, limits)?;
    let text = match &w {
        Some(w) => format!("{}: image, witness ({}) of period {}", s.name(), w.f.render(&s).join(", "), w.period),
        None => format!("{}: not an image", s.name()),
    };
    Ok(Outcome { json: witness_to_json(&s, w.as_ref()), text, yes: w.is_some() })
}

fn cmd_survey(map: &str, groups: &[String], limits: &Limits) -> Result<Outcome, Error> {
    let phi = load_map(map)?.to_endo();
    let catalog = groups.iter().map(|g| parse_group_spec(g, limits)).collect::<Result<Vec<_>, _>>()?;
    let report = image_survey(&phi, &catalog, limits);
    let mut lines: Vec<String> = report
        .entries
        .iter()
        .map(|e| match (&e.witness, &e.error) {
            (Some(w), _) => format!("{}: image ({}), period {}", e.group, w.images.join(", "), w.period),
            (None, Some(err)) => format!("{}: error: {err}", e.group),
            (None, None) => format!("{}: not an image", e.group),
        })
        .collect();
    lines.push(format!("rank lower bound: {}", report.rank_lower_bound));
    let yes = report.entries.iter().all(|e| e.verdict == "image");
    Ok(Outcome { json: serde_json::to_value(&report).expect("report serializes"), text: lines.join("\n"), yes })
}

fn cmd_abelian_rank(map: &str, prime: u64) -> Result<Outcome, Error> {
    let phi = load_map(map)?.to_endo();
    let r = abelian_rank(&phi, prime)?;
    Ok(Outcome::ok(json!({ "prime": prime, "rank": r }), r.to_string()))
}

fn cmd_fold(generators: &[String], names: &[String]) -> Result<Outcome, Error> {
    let names: Vec<String> = if names.is_empty() {
        let mut seen: Vec<String> = generators
            .iter()
            .flat_map(|g| g.chars())
            .filter(|c| c.is_alphabetic())
            .map(String::from)
            .collect();
        seen.sort();
        seen.dedup();
        seen
    } else {
        names.to_vec()
    };
    if names.is_empty() {
        return Err(Error::input("no generator names"));
    }
    let words = generators.iter().map(|g| GroupWord::parse(&names, g)).collect::<Result<Vec<_>, _>>()?;
    let graph = fold(&words, names.len());
    let basis: Vec<String> = graph.basis().iter().map(|w| w.render_tokens(&names)).collect();
    let json = json!({
        "names": names,
        "rank": graph.rank(),
        "whole_group": graph.is_whole_group(),
        "index": graph.index(),
        "vertices": graph.vertex_count(),
        "basis": basis,
    });
    let index = graph.index().map_or("infinite".to_string(), |i| i.to_string());
    let text = format!(
        "rank {}, index {index}, whole group: {}\nbasis: {}",
        graph.rank(),
        graph.is_whole_group(),
        basis.join(", ")
    );
    Ok(Outcome::ok(json, text))
}

fn cmd_verify(psi_file: Option<&str>, seed: u64, limits: &Limits) -> Result<Outcome, Error> {
    let mut opts = RunOptions { seed, limits: *limits, ..RunOptions::default() };
    if let Some(path) = psi_file {
        opts.psi = load_endo(path)?;
    }
    let rows = run(&opts);
    let width = rows.iter().map(|r| r.name.chars().count()).max().unwrap_or(0);
    let mut lines: Vec<String> = rows
        .iter()
        .map(|r| {
            let pad = " ".repeat(width - r.name.chars().count());
            let status = if r.passed { "pass" } else { "FAIL" };
            if r.detail.is_empty() {
                format!("{status}  {}", r.name)
            } else {
                format!("{status}  {}{pad}  {}", r.name, r.detail)
            }
        })
        .collect();
    let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    lines.push(format!("{} of {} rows pass", rows.len() - failed.len(), rows.len()));
    for f in &failed {
        lines.push(format!("failed: {f}"));
    }
    Ok(Outcome {
        json: serde_json::to_value(&rows).expect("rows serialize"),
        text: lines.join("\n"),
        yes: failed.is_empty(),
    })
}

fn dispatch(cli: &Cli, seed: u64, limits: &Limits) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Analyze { substitution } => cmd_analyze(substitution, limits),
        Command::Returns { substitution, block } => cmd_returns(substitution, block, limits),
        Command::Presentation { substitution, connection, letters } => {
            cmd_presentation(substitution, connection.as_deref(), *letters, limits)
        }
        Command::CheckImage { map, group } => cmd_check_image(map, group, limits),
        Command::Survey { map, groups } => cmd_survey(map, groups, limits),
        Command::AbelianRank { map, prime } => cmd_abelian_rank(map, *prime),
        Command::Fold { generators, names } => cmd_fold(generators, names),
        Command::VerifyPaper { psi_file } => cmd_verify(psi_file.as_deref(), seed, limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = settings(&cli).and_then(|(format, seed, limits)| Ok((format, dispatch(&cli, seed, &limits)?)));
    match result {
        Ok((format, out)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json output")),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::from(if out.yes { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("subshift: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
