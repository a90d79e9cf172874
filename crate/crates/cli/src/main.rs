//! `dua`: command-line front end for the down-up algebra kernel.
//!
//! Exit codes: 0 success or true, 1 property false or none, 2 usage or
//! parse error, 3 unsupported or undecided.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use dua_core::algebra::{confluence_check, spec_load, AlgebraSpec, Element};
use dua_core::coeff::FieldElem;
use dua_core::embeddings::{gwa_iso_check, specialize, specialize_spec, theta, theta_check, SkewLaurentElem};
use dua_core::json::{element_to_json, envelope};
use dua_core::maps::{aut_constraint, aut_images, hom_check, hom_check_json, iso_decide, AutSpec, IsoDecision};
use dua_core::par::Exec;
use dua_core::parse::{parse_expr, parse_poly, parse_scalar};
use dua_core::structure::{
    alternate_basis, center_completeness, center_generators, gk_probe, hk_identities, is_central, normal_search,
    twist_normal_check,
};
use dua_core::verify::verify_all;
use dua_core::DuaError;

#[derive(Parser, Debug)]
#[command(name = "dua", version, about = "Exact computations in down-up algebras A(alpha, beta, phi) over K[t1..tn]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Algebra spec file.
    #[arg(long, global = true)]
    spec: Option<String>,
    /// First spec file for `iso`.
    #[arg(long, global = true)]
    spec1: Option<String>,
    /// Second spec file for `iso`.
    #[arg(long, global = true)]
    spec2: Option<String>,
    /// Algebra expression in u, d, t1..tn, H, K.
    #[arg(long, global = true, allow_hyphen_values = true)]
    expr: Option<String>,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long = "max-degree", global = true)]
    max_degree: Option<u32>,
    /// Comma-separated scalars: the point for `specialize`, or
    /// "lambda1,lambda2,a,b" for `aut-check`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// For `aut-check`: g as a polynomial in t1, where t1 stands for HK.
    #[arg(long, global = true, allow_hyphen_values = true)]
    g: Option<String>,
    /// For `aut-check`: d -> lambda1*u, u -> lambda2*d.
    #[arg(long, global = true)]
    swap: bool,
    /// Run batches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Normal form of --expr.
    Normalize,
    /// Whether --expr commutes with every generator.
    Central,
    /// Whether --expr is normal with a scalar twist.
    NormalCheck,
    /// Generators of the center for the spec's parameter case.
    CenterGens,
    /// H/K commutation identities and the alternate basis.
    Hk,
    /// Growth counts and the inferred GK dimension (--max-degree bounds N).
    Gk,
    /// Checks the embedding into the skew-Laurent ring.
    ThetaCheck,
    /// Checks the generalized Weyl algebra realization.
    GwaCheck,
    /// Specializes t to --lambda.
    Specialize,
    /// Validates an automorphism given by --lambda (and --g, --swap).
    AutCheck,
    /// Decides whether --spec1 and --spec2 are isomorphic.
    Iso,
    /// Normal elements up to --max-degree.
    SearchNormal,
    /// Resolves the overlap dduu both ways.
    Confluence,
    /// Runs the full acceptance suite.
    Verify,
}

enum CliError {
    Usage(String),
    Kernel(DuaError),
}

impl From<DuaError> for CliError {
    fn from(e: DuaError) -> Self {
        CliError::Kernel(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Kernel(e) if e.is_unsupported() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Kernel(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Exit code plus both renderings of the result.
struct Outcome {
    code: u8,
    text: String,
    data: Value,
}

impl Outcome {
    fn new(code: u8, text: impl Into<String>, data: Value) -> Self {
        Outcome {
            code,
            text: text.into(),
            data,
        }
    }

    fn flag(ok: bool, text: impl Into<String>, data: Value) -> Self {
        Outcome::new(if ok { 0 } else { 1 }, text, data)
    }
}

fn load(path: &Option<String>, flag: &str) -> CliResult<Arc<AlgebraSpec>> {
    let path = path.as_ref().ok_or_else(|| CliError::Usage(format!("--{flag} PATH is required")))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    Ok(spec_load(&text)?)
}

fn expr(cli: &Cli, spec: &Arc<AlgebraSpec>) -> CliResult<Element> {
    let text = cli.expr.as_ref().ok_or_else(|| CliError::Usage("--expr STRING is required".into()))?;
    Ok(parse_expr(text, spec)?)
}

fn scalars(cli: &Cli, spec: &AlgebraSpec) -> CliResult<Vec<FieldElem>> {
    let text = cli.lambda.as_ref().ok_or_else(|| CliError::Usage("--lambda \"v1,v2,..\" is required".into()))?;
    text.split(',')
        .map(|v| parse_scalar(v.trim(), spec.field()).map_err(CliError::from))
        .collect()
}

fn spec_json(s: &AlgebraSpec) -> Value {
    let roots = s.roots();
    json!({
        "n": s.n(),
        "field": s.field().to_string(),
        "alpha": s.alpha().to_string(),
        "beta": s.beta().to_string(),
        "phi": s.phi().to_string(),
        "r": roots.map(|(r, _)| r.to_string()),
        "s": roots.map(|(_, s)| s.to_string()),
    })
}

fn skew_json(e: &SkewLaurentElem) -> Value {
    Value::Array(
        e.terms()
            .iter()
            .map(|(z, p)| json!({"z": z, "poly": p.to_string()}))
            .collect(),
    )
}

fn exec(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let ex = exec(cli);
    Ok(match cli.command {
        Command::Normalize => {
            let spec = load(&cli.spec, "spec")?;
            let a = expr(cli, &spec)?;
            Outcome::new(0, a.to_string(), json!({"normal_form": a.to_string(), "terms": element_to_json(&a)}))
        }
        Command::Central => {
            let spec = load(&cli.spec, "spec")?;
            let c = is_central(&expr(cli, &spec)?);
            let witness = c.witness.as_ref().map(|(g, e)| json!({"generator": g, "commutator": e.to_string()}));
            let text = match &c.witness {
                None => "true".to_string(),
                Some((g, e)) => format!("false: [a, {g}] = {e}"),
            };
            Outcome::flag(c.central, text, json!({"central": c.central, "witness": witness}))
        }
        Command::NormalCheck => {
            let spec = load(&cli.spec, "spec")?;
            match twist_normal_check(&expr(cli, &spec)?) {
                Some(t) => Outcome::new(0, format!("true: c_u = {}, c_d = {}", t.c_u, t.c_d), json!({"normal": true, "twist": t})),
                None => Outcome::new(1, "false", json!({"normal": false})),
            }
        }
        Command::CenterGens => {
            let spec = load(&cli.spec, "spec")?;
            let desc = center_generators(&spec)?;
            let mut lines = vec![format!("case {}: {}", desc.case, desc.note)];
            let gens: Vec<Value> = desc
                .generators
                .iter()
                .map(|g| {
                    lines.push(format!("  {} = {} (central: {})", g.name, g.element, g.central));
                    json!({"name": g.name, "element": g.element.to_string(), "central": g.central})
                })
                .collect();
            let mut data = json!({"case": desc.case, "note": desc.note, "generators": gens});
            let mut ok = desc.all_central();
            if let Some(deg) = cli.max_degree {
                let rep = center_completeness(&desc, &spec, deg, ex);
                lines.push(format!(
                    "degree <= {deg}: central dim {}, generated dim {}, complete: {}",
                    rep.central_dim,
                    rep.generated_dim,
                    rep.equal()
                ));
                data["completeness"] = json!({
                    "max_degree": deg,
                    "central_dim": rep.central_dim,
                    "generated_dim": rep.generated_dim,
                    "equal": rep.equal(),
                });
                ok &= rep.equal();
            }
            Outcome::flag(ok, lines.join("\n"), data)
        }
        Command::Hk => {
            let spec = load(&cli.spec, "spec")?;
            let ids = hk_identities(&spec)?;
            let deg = cli.max_degree.unwrap_or(3);
            let basis = alternate_basis(&spec, deg)?;
            let indep = dua_core::linalg::independent(basis.iter().map(|e| e.terms().clone()));
            let text = format!(
                "dH = sHd: {}\nHu = suH: {}\ndK = rKd: {}\nKu = ruK: {}\nHK = KH: {}\nalternate basis (degree <= {deg}, {} elements) independent: {indep}",
                ids.dh,
                ids.hu,
                ids.dk,
                ids.ku,
                ids.hk_commute,
                basis.len()
            );
            let data = json!({"identities": ids, "alternate_basis": {"max_degree": deg, "size": basis.len(), "independent": indep}});
            Outcome::flag(ids.all_hold() && indep, text, data)
        }
        Command::Gk => {
            let spec = load(&cli.spec, "spec")?;
            let rep = gk_probe(&spec, cli.max_degree.unwrap_or(12));
            let text = match rep.inferred_dimension {
                Some(d) => format!("GK dimension {d} ({})\ncounts: {:?}", rep.message, rep.counts),
                None => format!("inconclusive: {}\ncounts: {:?}", rep.message, rep.counts),
            };
            Outcome::new(if rep.conclusive { 0 } else { 3 }, text, serde_json::to_value(&rep).unwrap())
        }
        Command::ThetaCheck => {
            let spec = load(&cli.spec, "spec")?;
            let rep = theta_check(&spec, cli.max_degree.unwrap_or(4), 100, cli.seed, ex)?;
            let mut text = format!(
                "relations vanish: {}\nproducts: {}/{} agree\nspanning set: {} images, rank {}, basis dimension {}\nformula matches: {}",
                rep.relations_vanish,
                rep.pairs_checked - rep.pairs_failed,
                rep.pairs_checked,
                rep.spanning_size,
                rep.image_rank,
                rep.basis_dimension,
                rep.formula_matches
            );
            let mut data = json!({"report": rep, "passed": rep.passed()});
            if cli.expr.is_some() {
                let img = theta(&expr(cli, &spec)?)?;
                text.push_str(&format!("\nimage: {img}"));
                data["image"] = skew_json(&img);
            }
            Outcome::flag(rep.passed(), text, data)
        }
        Command::GwaCheck => {
            let spec = load(&cli.spec, "spec")?;
            let rep = gwa_iso_check(&spec)?;
            let mut lines: Vec<String> = rep
                .trials
                .iter()
                .map(|t| {
                    format!(
                        "{}; {}: relations {}, ud -> {}, du -> {}, passed {}",
                        t.convention, t.assignment, t.relations_vanish, t.ud_image, t.du_image, t.passed
                    )
                })
                .collect();
            let conv = rep.convention();
            lines.push(match conv {
                Some(c) => format!("convention: {c}"),
                None => "no single convention verifies".to_string(),
            });
            let data = json!({"report": rep, "convention": conv.map(|c| c.to_string())});
            Outcome::flag(rep.passed(), lines.join("\n"), data)
        }
        Command::Specialize => {
            let spec = load(&cli.spec, "spec")?;
            let lam = scalars(cli, &spec)?;
            if cli.expr.is_some() {
                let (img, target) = specialize(&expr(cli, &spec)?, &lam)?;
                let text = format!("{target}\n{img}");
                Outcome::new(0, text, json!({"spec": spec_json(&target), "element": element_to_json(&img)}))
            } else {
                let target = specialize_spec(&spec, &lam)?;
                Outcome::new(0, target.to_string(), json!({"spec": spec_json(&target)}))
            }
        }
        Command::AutCheck => {
            let spec = load(&cli.spec, "spec")?;
            let v = scalars(cli, &spec)?;
            if v.len() != 4 {
                return Err(CliError::Usage(format!("aut-check needs --lambda \"lambda1,lambda2,a,b\", got {} values", v.len())));
            }
            let mut p = AutSpec::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
            if let Some(g) = &cli.g {
                p = p.with_g(parse_poly(g, 1, spec.field())?);
            }
            if cli.swap {
                p = p.swapped();
            }
            let images = aut_images(&p, &spec)?;
            let constraint = aut_constraint(&p, &spec)?;
            let hom = hom_check(&images, &spec)?;
            let ok = constraint.is_ok() && hom.holds;
            let text = format!(
                "{}\nconstraint: {}\nhomomorphism: {}",
                images.describe(),
                match &constraint {
                    Ok(()) => "holds".to_string(),
                    Err(m) => format!("fails: {m}"),
                },
                hom.holds
            );
            let data = json!({
                "images": images.to_json(),
                "constraint": constraint.as_ref().err(),
                "hom_check": hom_check_json(&hom),
                "valid": ok,
            });
            Outcome::flag(ok, text, data)
        }
        Command::Iso => {
            let s1 = load(&cli.spec1, "spec1")?;
            let s2 = load(&cli.spec2, "spec2")?;
            match iso_decide(&s1, &s2)? {
                IsoDecision::Isomorphic(w) => Outcome::new(
                    0,
                    format!(
                        "isomorphic (case {}): eta = {}, a = {}, b = {}\n{}",
                        w.case,
                        w.params.eta,
                        w.params.a,
                        w.params.b,
                        w.images.describe()
                    ),
                    json!({"decision": "isomorphic", "witness": w.to_json()}),
                ),
                IsoDecision::NotIsomorphic(why) => {
                    Outcome::new(1, format!("not isomorphic: {why}"), json!({"decision": "not_isomorphic", "reason": why}))
                }
                IsoDecision::Undecided(why) => {
                    Outcome::new(3, format!("undecided: {why}"), json!({"decision": "undecided", "reason": why}))
                }
            }
        }
        Command::SearchNormal => {
            let spec = load(&cli.spec, "spec")?;
            let deg = cli.max_degree.unwrap_or(3);
            let fams = normal_search(&spec, deg, ex)?;
            let mut lines = Vec::new();
            let data: Vec<Value> = fams
                .iter()
                .map(|f| {
                    lines.push(format!("twist c_u = {}, c_d = {}:", f.twist.c_u, f.twist.c_d));
                    lines.extend(f.basis.iter().map(|e| format!("  {e}")));
                    json!({"twist": f.twist, "basis": f.basis.iter().map(|e| e.to_string()).collect::<Vec<_>>()})
                })
                .collect();
            Outcome::new(0, lines.join("\n"), json!({"max_degree": deg, "families": data}))
        }
        Command::Confluence => {
            let spec = load(&cli.spec, "spec")?;
            let rep = confluence_check(&spec);
            let data = json!({
                "confluent": rep.confluent,
                "normal_ddu": rep.normal_ddu.to_string(),
                "normal_duu": rep.normal_duu.to_string(),
                "identity_lhs": rep.identity_lhs.to_string(),
                "identity": format!("{:?}", rep.identity),
            });
            Outcome::flag(rep.confluent, rep.to_string(), data)
        }
        Command::Verify => {
            let results = verify_all(cli.seed, ex);
            let ok = results.iter().all(|r| r.passed);
            let text = results.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            Outcome::flag(ok, text, json!({"seed": cli.seed, "passed": ok, "criteria": results}))
        }
    })
}

fn kind(c: Command) -> &'static str {
    match c {
        Command::Normalize => "normalize",
        Command::Central => "central",
        Command::NormalCheck => "normal-check",
        Command::CenterGens => "center-gens",
        Command::Hk => "hk",
        Command::Gk => "gk",
        Command::ThetaCheck => "theta-check",
        Command::GwaCheck => "gwa-check",
        Command::Specialize => "specialize",
        Command::AutCheck => "aut-check",
        Command::Iso => "iso",
        Command::SearchNormal => "search-normal",
        Command::Confluence => "confluence",
        Command::Verify => "verify",
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&envelope(kind(cli.command), out.data)).unwrap());
            } else {
                emit(&out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                let err = json!({"error": e.to_string(), "exit_code": e.code()});
                emit(&serde_json::to_string_pretty(&envelope(kind(cli.command), err)).unwrap());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsupported_maps_to_three() {
        assert_eq!(CliError::from(DuaError::Unsupported("x".into())).code(), 3);
        assert_eq!(CliError::from(DuaError::MissingRoots).code(), 2);
        assert_eq!(CliError::Usage("x".into()).code(), 2);
    }

    #[test]
    fn global_flags_parse_after_subcommand() {
        let cli = Cli::try_parse_from(["dua", "normalize", "--spec", "a.toml", "--expr", "-u", "--json"]).unwrap();
        assert!(cli.json);
        assert_eq!(cli.expr.as_deref(), Some("-u"));
    }
}
