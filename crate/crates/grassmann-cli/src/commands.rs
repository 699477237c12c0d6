use std::fs;

use grassmann::groups::{
    decompose_gamma, decompose_layers, decompose_omega_gamma_linear, decompose_sigma_prime, decompose_unipotent,
    dim_by_coordinates, dim_formula, enumerate_generators, generated_lie_rank, jacobian_preimage,
    jacobian_preimage_mod_top, member_with_witness, DimTarget, GroupId,
};
use grassmann::report::{ElementJson, EndoJson, FactorizationReport, SCHEMA_VERSION};
use grassmann::{Coefficient, Endomorphism, Error, GrassmannElement, InverseStrategy, Result};
use serde_json::{json, Value};

use crate::args::{Cli, Command, Mode, Strategy};
use crate::verify;

/// What a subcommand produced: text and JSON renderings plus the exit verdict.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

/// Inline text, or the contents of `path` for `@path`.
fn read_input(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn element<C: Coefficient>(n: usize, arg: &str) -> Result<GrassmannElement<C>> {
    GrassmannElement::parse(n, &read_input(arg)?)
}

fn endo<C: Coefficient>(n: usize, arg: &str) -> Result<Endomorphism<C>> {
    Endomorphism::parse(n, &read_input(arg)?)
}

fn envelope(cli: &Cli, command: &str, body: Value) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "n": cli.n,
        "field": cli.field.to_string(),
        "result": body,
    })
}

fn element_output<C: Coefficient>(cli: &Cli, command: &str, e: &GrassmannElement<C>) -> Output {
    Output::new(e.to_string(), envelope(cli, command, json!(ElementJson::new(e))))
}

fn endo_output<C: Coefficient>(cli: &Cli, command: &str, s: &Endomorphism<C>) -> Output {
    Output::new(s.to_string(), envelope(cli, command, json!(EndoJson::new(s))))
}

pub fn execute<C: Coefficient>(cli: &Cli) -> Result<Output> {
    let n = cli.n;
    grassmann::algebra::check_n(n)?;
    match &cli.command {
        Command::Mul { elements } => {
            let mut acc = GrassmannElement::<C>::one(n);
            for e in elements {
                acc = acc.try_mul(&element(n, e)?)?;
            }
            Ok(element_output(cli, "mul", &acc))
        }
        Command::Apply { endo: s, element: e } => {
            let s = endo::<C>(n, s)?;
            Ok(element_output(cli, "apply", &s.apply(&element(n, e)?)?))
        }
        Command::Jacobian { endo: s } => {
            let j = endo::<C>(n, s)?.jacobian()?;
            let body = json!({
                "det": ElementJson::new(&j.det),
                "valuation": j.valuation,
                "matrix": j.matrix.iter().map(|r| r.iter().map(ElementJson::new).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            Ok(Output::new(j.det.to_string(), envelope(cli, "jacobian", body)))
        }
        Command::Invert { endo: s, strategy } => {
            let s = endo::<C>(n, s)?;
            let inv = match strategy {
                Strategy::Formula => s.inverse(InverseStrategy::Formula)?,
                Strategy::Iteration => s.inverse(InverseStrategy::Iteration)?,
                Strategy::Both => {
                    let a = s.inverse(InverseStrategy::Formula)?;
                    let b = s.inverse(InverseStrategy::Iteration)?;
                    if a != b {
                        return Err(Error::Internal(format!("formula gives {a}, iteration gives {b}")));
                    }
                    a
                }
            };
            Ok(endo_output(cli, "invert", &inv))
        }
        Command::Decompose { endo: s, mode } => {
            let s = endo::<C>(n, s)?;
            let f = match mode {
                Mode::Oga => decompose_omega_gamma_linear(&s)?,
                Mode::Unipotent => decompose_unipotent(&s)?,
                Mode::Gamma => decompose_gamma(&s)?,
                Mode::SigmaPrime => decompose_sigma_prime(&s)?,
                Mode::Layers => decompose_layers(&s)?,
            };
            let report = FactorizationReport::new(&s, &f)?;
            let mut text = format!("kind: {}\n", report.kind);
            for x in &f.factors() {
                let groups: Vec<String> = x.groups.iter().map(|g| g.to_string()).collect();
                text.push_str(&format!("{} [{}]: {}\n", x.label, groups.join(", "), x.map.to_string().replace('\n', "; ")));
            }
            text.push_str(&format!("verified: {}", report.verified));
            let ok = report.verified;
            Ok(Output { text, json: envelope(cli, "decompose", json!(report)), ok })
        }
        Command::Member { endo: s, group } => {
            let g: GroupId = group.parse()?;
            let m = member_with_witness(&endo::<C>(n, s)?, g)?;
            let mut text = m.member.to_string();
            if let Some(w) = &m.witness {
                text.push_str(&format!("\nwitness: {w}"));
            }
            let body = json!({
                "group": g.to_string(),
                "member": m.member,
                "witness": m.witness.as_ref().map(ElementJson::new),
            });
            Ok(Output::new(text, envelope(cli, "member", body)))
        }
        Command::Preimage { element: e, exact } => {
            let u = element::<C>(n, e)?;
            if *exact {
                return Ok(endo_output(cli, "preimage", &jacobian_preimage(&u)?));
            }
            let pre = jacobian_preimage_mod_top(&u)?;
            let text = format!("{}\nforced-top={}", pre.sigma, pre.forced_top);
            let body = json!({ "sigma": EndoJson::new(&pre.sigma), "forced_top": pre.forced_top.to_string() });
            Ok(Output::new(text, envelope(cli, "preimage", body)))
        }
        Command::Dims { group } => {
            let targets = if group.trim() == "all" { DimTarget::all_for(n) } else { vec![group.parse()?] };
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            let mut ok = true;
            for g in targets {
                let (f, c) = (dim_formula(g, n)?, dim_by_coordinates(g, n)?);
                ok &= f == c;
                lines.push(format!("formula={f} coordinates={c}"));
                rows.push(json!({ "group": g.to_string(), "formula": f, "coordinates": c }));
            }
            let text = if lines.len() == 1 {
                lines.remove(0)
            } else {
                rows.iter().zip(&lines).map(|(r, l)| format!("{}: {l}", r["group"].as_str().unwrap_or(""))).collect::<Vec<_>>().join("\n")
            };
            Ok(Output { text, json: envelope(cli, "dims", json!(rows)), ok })
        }
        Command::Generators { group, rank } => {
            let g: GroupId = group.parse()?;
            let gens = enumerate_generators(g, n)?;
            let mut text: Vec<String> = gens.iter().map(|d| d.to_string()).collect();
            let mut body = json!({
                "group": g.to_string(),
                "count": gens.len(),
                "generators": gens.iter().map(|d| json!({ "descriptor": d, "text": d.to_string() })).collect::<Vec<_>>(),
            });
            if *rank {
                let r = generated_lie_rank(&gens, n, None)?;
                text.push(format!("lie-rank={r}"));
                body["lie_rank"] = json!(r);
            }
            Ok(Output::new(text.join("\n"), envelope(cli, "generators", body)))
        }
        Command::Verify { suite, samples } => {
            let report = verify::run::<C>(n, cli.seed, suite, *samples)?;
            let ok = report.ok();
            Ok(Output { text: report.table(), json: envelope(cli, "verify", json!(report)), ok })
        }
    }
}
