//! Command line front end. Every verb emits one Report, JSON by default,
//! and the exit code separates parse errors (1), domain errors (2), and
//! failed verifications (3).

use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::borels::{enumerate_borels, transport_weight, TransportMode};
use crate::characters::{typical_character, verma_character, FormalCharacter};
use crate::mates::{
    find_perfect_mate, is_generic, CentralCharacter, MateWitness,
};
use crate::rootdata::{build_root_system, AlgebraId, RootSystem, Weight};
use crate::verify::run_invariant_suite;
use crate::verma::{
    eval_t, is_strongly_typical, is_typical, is_verma_simple,
    vanishing_shapovalov_factors, verma_decomposes_with_witness,
};
use crate::weyl::weyl_group;
use crate::{Error, Result};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "superweyl", version, disable_help_subcommand = true)]
/// Exact root system combinatorics for basic classical Lie superalgebras.
struct Cli {
    /// render reports as plain tables instead of JSON
    #[arg(long, global = true)]
    plain: bool,

    /// add wall-clock milliseconds to each report
    #[arg(long, global = true)]
    timing: bool,

    /// run newline-delimited JSON argument lists from a file
    #[arg(long, value_name = "FILE")]
    batch: Option<String>,

    #[command(subcommand)]
    verb: Option<Verb>,
}

#[derive(Args, Clone)]
struct WeightInput {
    /// algebra name, e.g. "B(2,1)" or "D(2,1,a=3/2)"
    algebra: String,
    /// weight as "k1,..,kn;l1,..,lm" in the (delta; eps) basis
    weight: String,
    /// interpret the weight as lambda + rho instead of lambda
    #[arg(long)]
    rho_shifted: bool,
}

#[derive(Subcommand, Clone)]
enum Verb {
    /// positive roots, simple roots, and the rho vectors of an algebra
    Roots { algebra: String },
    /// typicality, strong typicality, and the value of t at a weight
    Typical(WeightInput),
    /// whether the Verma module with this highest weight is simple
    Simple(WeightInput),
    /// the vanishing Shapovalov factors at a weight
    Factors(WeightInput),
    /// whether the induced module splits over the odd subsets
    Decompose(WeightInput),
    /// all Borel subalgebras with the catalog even part
    Borels { algebra: String },
    /// move a highest weight between Borel subalgebras by odd reflections
    Transport {
        #[command(flatten)]
        input: WeightInput,
        /// index of the source Borel in the `borels` listing
        #[arg(long)]
        from: usize,
        /// index of the target Borel in the `borels` listing
        #[arg(long)]
        to: usize,
        /// transport a simple highest weight (degenerate steps keep lambda)
        #[arg(long)]
        simple: bool,
    },
    /// the perfect mate certificate of a strongly typical central character
    Mate(WeightInput),
    /// formal character coefficients in the simple-root cone
    Character {
        #[command(flatten)]
        input: WeightInput,
        /// truncation depth, the maximal coefficient height
        #[arg(long, default_value_t = 6)]
        depth: u32,
        /// use the alternating-sum typical character instead of the Verma one
        #[arg(long)]
        typical: bool,
        /// heuristic: scan the coefficients for negativity
        #[arg(long)]
        positivity_scan: bool,
    },
    /// run the full invariant suite for one algebra
    Verify { algebra: String },
}

pub fn run<W: Write>(argv: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let kind = e.kind();
            if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion
            {
                let _ = write!(out, "{}", e);
                return 0;
            }
            return emit_error(out, false, &Error::Parse(e.to_string()));
        }
    };
    match (&cli.batch, &cli.verb) {
        (Some(path), None) => run_batch(path, cli.timing, out),
        (None, Some(verb)) => {
            run_verb(verb, cli.plain, cli.timing, out)
        }
        _ => emit_error(
            out,
            cli.plain,
            &Error::Parse(
                "give exactly one of a verb or --batch FILE".into(),
            ),
        ),
    }
}

fn run_verb<W: Write>(
    verb: &Verb,
    plain: bool,
    timing: bool,
    out: &mut W,
) -> i32 {
    let started = Instant::now();
    match dispatch(verb) {
        Ok((mut report, code)) => {
            if timing {
                report["elapsed_ms"] =
                    json!(started.elapsed().as_millis() as u64);
            }
            emit(out, plain, &report);
            code
        }
        Err(e) => emit_error(out, plain, &e),
    }
}

fn run_batch<W: Write>(path: &str, timing: bool, out: &mut W) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return emit_error(
                out,
                false,
                &Error::Parse(format!("cannot read {}: {}", path, e)),
            )
        }
    };
    let mut worst = 0;
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let code = run_batch_line(line, timing, out);
        worst = worst.max(code);
    }
    worst
}

fn run_batch_line<W: Write>(line: &str, timing: bool, out: &mut W) -> i32 {
    let args: Vec<String> = match serde_json::from_str(line) {
        Ok(a) => a,
        Err(e) => {
            return emit_error(
                out,
                false,
                &Error::Parse(format!("batch line is not a JSON array: {}", e)),
            )
        }
    };
    let mut argv = vec!["superweyl".to_string()];
    argv.extend(args);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            return emit_error(out, false, &Error::Parse(e.to_string()))
        }
    };
    match (&cli.batch, &cli.verb) {
        (None, Some(verb)) => run_verb(verb, false, timing, out),
        _ => emit_error(
            out,
            false,
            &Error::Parse("batch lines must hold a single verb".into()),
        ),
    }
}

fn dispatch(verb: &Verb) -> Result<(Value, i32)> {
    match verb {
        Verb::Roots { algebra } => roots_report(algebra),
        Verb::Typical(input) => typical_report(input),
        Verb::Simple(input) => simple_report(input),
        Verb::Factors(input) => factors_report(input),
        Verb::Decompose(input) => decompose_report(input),
        Verb::Borels { algebra } => borels_report(algebra),
        Verb::Transport {
            input,
            from,
            to,
            simple,
        } => transport_report(input, *from, *to, *simple),
        Verb::Mate(input) => mate_report(input),
        Verb::Character {
            input,
            depth,
            typical,
            positivity_scan,
        } => character_report(input, *depth, *typical, *positivity_scan),
        Verb::Verify { algebra } => verify_report(algebra),
    }
}

fn algebra(name: &str) -> Result<RootSystem> {
    build_root_system(AlgebraId::parse(name)?)
}

fn resolve(input: &WeightInput) -> Result<(RootSystem, Weight, Value)> {
    let rs = algebra(&input.algebra)?;
    let given = Weight::parse(&rs.id, &input.weight)?;
    let lambda = if input.rho_shifted {
        &given - &rs.rho
    } else {
        given
    };
    let echo = json!({
        "algebra": input.algebra,
        "weight": input.weight,
        "rho_shifted": input.rho_shifted,
        "lambda": lambda.coord_string(),
    });
    Ok((rs, lambda, echo))
}

fn report(verb: &str, input: Value) -> Value {
    json!({ "version": VERSION, "verb": verb, "input": input })
}

fn root_list(roots: &[Weight]) -> Value {
    Value::Array(
        roots.iter().map(|r| json!(r.root_string())).collect(),
    )
}

fn roots_report(name: &str) -> Result<(Value, i32)> {
    let rs = algebra(name)?;
    let group = weyl_group(&rs);
    let mut v = report("roots", json!({ "algebra": name }));
    v["even_positive"] = root_list(&rs.even_pos);
    v["odd_positive"] = root_list(&rs.odd_pos);
    v["simple"] = root_list(&rs.simple);
    v["rho"] = json!(rs.rho.coord_string());
    v["rho0"] = json!(rs.rho0.coord_string());
    v["rho1"] = json!(rs.rho1.coord_string());
    v["weyl_order"] = json!(group.len());
    Ok((v, 0))
}

fn typical_report(input: &WeightInput) -> Result<(Value, i32)> {
    let (rs, lambda, echo) = resolve(input)?;
    let t = eval_t(&rs, &lambda, &rs.odd_pos)?;
    let mut v = report("typical", echo);
    v["typical"] = json!(is_typical(&rs, &lambda));
    v["strongly_typical"] = json!(is_strongly_typical(&rs, &lambda));
    v["t_value"] = json!(t.to_string());
    Ok((v, 0))
}

fn simple_report(input: &WeightInput) -> Result<(Value, i32)> {
    let (rs, lambda, echo) = resolve(input)?;
    let factors = vanishing_shapovalov_factors(&rs, &lambda);
    let mut v = report("simple", echo);
    v["simple"] = json!(is_verma_simple(&rs, &lambda));
    v["vanishing_factors"] = json!(factors.len());
    Ok((v, 0))
}

fn factors_report(input: &WeightInput) -> Result<(Value, i32)> {
    let (rs, lambda, echo) = resolve(input)?;
    let factors: Vec<Value> = vanishing_shapovalov_factors(&rs, &lambda)
        .iter()
        .map(|f| {
            json!({
                "root": f.root.root_string(),
                "n": f.n.as_ref().map(|n| n.to_string()),
                "kind": f.kind.label(),
            })
        })
        .collect();
    let mut v = report("factors", echo);
    v["simple"] = json!(factors.is_empty());
    v["factors"] = Value::Array(factors);
    Ok((v, 0))
}

fn decompose_report(input: &WeightInput) -> Result<(Value, i32)> {
    let (rs, lambda, echo) = resolve(input)?;
    let (decomposes, conflict) = verma_decomposes_with_witness(&rs, &lambda)?;
    let mut v = report("decompose", echo);
    v["decomposes"] = json!(decomposes);
    v["conflict"] = match conflict {
        Some(c) => json!({
            "gamma": c.gamma.root_strings(&rs),
            "gamma_prime": c.gamma_prime.root_strings(&rs),
            "shifted": c.shifted.coord_string(),
            "shifted_prime": c.shifted_prime.coord_string(),
        }),
        None => Value::Null,
    };
    Ok((v, 0))
}

fn borels_report(name: &str) -> Result<(Value, i32)> {
    let rs = algebra(name)?;
    let borels = enumerate_borels(&rs);
    let list: Vec<Value> = borels
        .iter()
        .enumerate()
        .map(|(i, b)| {
            json!({
                "index": i,
                "odd_roots": b.root_strings(&rs),
                "rho_b": b.rho_b().coord_string(),
            })
        })
        .collect();
    let mut v = report("borels", json!({ "algebra": name }));
    v["count"] = json!(borels.len());
    v["borels"] = Value::Array(list);
    Ok((v, 0))
}

fn transport_report(
    input: &WeightInput,
    from: usize,
    to: usize,
    simple: bool,
) -> Result<(Value, i32)> {
    let (rs, lambda, echo) = resolve(input)?;
    let borels = enumerate_borels(&rs);
    let pick = |i: usize| {
        borels.get(i).ok_or_else(|| {
            Error::Domain(format!(
                "Borel index {} out of range, {} has {}",
                i,
                rs.id,
                borels.len()
            ))
        })
    };
    let source = pick(from)?;
    let target = pick(to)?;
    let mode = if simple {
        TransportMode::Simple
    } else {
        TransportMode::Verma
    };
    let moved = transport_weight(&rs, &lambda, source, target, mode)?;
    let mut v = report("transport", echo);
    v["from"] = json!(from);
    v["to"] = json!(to);
    v["mode"] = json!(if simple { "simple" } else { "verma" });
    v["result"] = json!(moved.coord_string());
    v["shifted_invariant"] =
        json!((&moved + target.rho_b()) == (&lambda + source.rho_b()));
    Ok((v, 0))
}

fn witness_value(w: &MateWitness, rs: &RootSystem) -> Value {
    match w {
        MateWitness::OrbitCollision { gamma_prime, w } => json!({
            "kind": "orbit-collision",
            "gamma_prime": gamma_prime.root_strings(rs),
            "w": w,
        }),
        MateWitness::StabilizerEscape { w } => json!({
            "kind": "stabilizer-escape",
            "w": w,
        }),
    }
}

fn mate_report(input: &WeightInput) -> Result<(Value, i32)> {
    let (rs, lambda, echo) = resolve(input)?;
    let group = weyl_group(&rs);
    let chi = CentralCharacter::new(lambda);
    let generic = if rs.type_i() {
        Value::Null
    } else {
        json!(is_generic(&rs, &chi)?)
    };
    let cert = find_perfect_mate(&rs, &group, &chi)?;
    let mut v = report("mate", echo);
    v["generic"] = generic;
    v["lambda0"] = json!(cert.lambda.coord_string());
    v["gamma"] = json!(cert.gamma.root_strings(&rs));
    v["mate_weight"] = json!(cert.mate_weight.coord_string());
    v["is_mate"] = json!(cert.is_mate);
    v["is_perfect"] = json!(cert.is_perfect);
    v["witnesses"] = Value::Array(
        cert.witnesses
            .iter()
            .map(|w| witness_value(w, &rs))
            .collect(),
    );
    Ok((v, 0))
}

fn character_terms(rs: &RootSystem, ch: &FormalCharacter) -> Value {
    Value::Array(
        ch.terms()
            .into_iter()
            .map(|(nu, c)| {
                json!({
                    "nu": nu,
                    "weight": ch.weight_at(rs, &nu).coord_string(),
                    "coefficient": c,
                })
            })
            .collect(),
    )
}

fn character_report(
    input: &WeightInput,
    depth: u32,
    typical: bool,
    positivity_scan: bool,
) -> Result<(Value, i32)> {
    let (rs, lambda, echo) = resolve(input)?;
    let ch = if typical {
        let group = weyl_group(&rs);
        typical_character(&rs, &group, &lambda, depth)?
    } else {
        verma_character(&rs, &lambda, depth)
    };
    let mut v = report("character", echo);
    v["kind"] = json!(if typical { "typical" } else { "verma" });
    v["depth"] = json!(depth);
    v["terms"] = character_terms(&rs, &ch);
    if positivity_scan {
        let negatives: Vec<Value> = ch
            .terms()
            .into_iter()
            .filter(|(_, c)| *c < 0)
            .map(|(nu, c)| json!({ "nu": nu, "coefficient": c }))
            .collect();
        v["positivity_scan"] = json!({
            "label": "heuristic",
            "nonnegative": negatives.is_empty(),
            "negative_terms": negatives,
        });
    }
    Ok((v, 0))
}

fn verify_report(name: &str) -> Result<(Value, i32)> {
    let rs = algebra(name)?;
    let results = run_invariant_suite(&rs);
    let all_pass = results.iter().all(|r| r.pass);
    let checks: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "pass": r.pass,
                "detail": r.detail,
            })
        })
        .collect();
    let mut v = report("verify", json!({ "algebra": name }));
    v["passed"] = json!(all_pass);
    v["checks"] = Value::Array(checks);
    Ok((v, if all_pass { 0 } else { 3 }))
}

fn emit<W: Write>(out: &mut W, plain: bool, value: &Value) {
    if plain {
        let mut text = String::new();
        render_plain(value, 0, &mut text);
        let _ = out.write_all(text.as_bytes());
    } else {
        let _ = writeln!(out, "{}", value);
    }
}

fn emit_error<W: Write>(out: &mut W, plain: bool, e: &Error) -> i32 {
    let kind = match e {
        Error::Parse(_) => "parse",
        Error::Domain(_) => "domain",
        Error::Verification(_) => "verification",
    };
    let value = json!({
        "version": VERSION,
        "error": { "kind": kind, "message": e.to_string() },
        "code": e.exit_code(),
    });
    emit(out, plain, &value);
    e.exit_code()
}

fn render_plain(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{}{}:\n", pad, k));
                        render_plain(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{}{}: {}\n", pad, k, scalar_text(v))),
                }
            }
        }
        Value::Array(items) => {
            if items.iter().all(|i| !i.is_object() && !i.is_array()) {
                let row: Vec<String> =
                    items.iter().map(scalar_text).collect();
                out.push_str(&format!("{}{}\n", pad, row.join("  ")));
            } else {
                for item in items {
                    render_plain(item, indent, out);
                    out.push('\n');
                }
            }
        }
        _ => out.push_str(&format!("{}{}\n", pad, scalar_text(value))),
    }
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
