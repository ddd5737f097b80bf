//! Polynomial subcommands.

use anyhow::{anyhow, bail, Result};
use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sepred_core::bipoly::factor_bi;
use sepred_core::classifier::{
    classify_with, genus0_reduced_check, minimal_reducible_refinement, mn_problem_check, Case, Extensions, Genus0Case,
    Verdict,
};
use sepred_core::decompose::{complete_decompositions, is_indecomposable};
use sepred_core::families::{exceptional_pair, symbolic, verify_family, FamilyReport, FamilyTag, Genus0};
use sepred_core::parse::{parse_bi, parse_uni};
use sepred_core::poly::factor;
use sepred_core::scan::{residual_analysis, scan_red, stability_scan};
use sepred_core::{AlgebraError, Field, UniPoly};

use crate::{Outcome, Status};

fn poly_in(text: &str, field: &Field) -> Result<UniPoly> {
    Ok(parse_uni(text, field)?)
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

pub fn factor_uni(text: &str, field: &Field) -> Result<Outcome> {
    let f = poly_in(text, field)?;
    if f.is_zero() {
        bail!("cannot factor the zero polynomial");
    }
    let fl = factor(&f);
    let factors: Vec<Value> = fl
        .factors
        .iter()
        .map(|(g, m)| json!({ "factor": g.to_string(), "multiplicity": m, "degree": g.degree() }))
        .collect();
    let reducible = fl.count_with_multiplicity() > 1;
    let json = json!({
        "field": field.to_string(),
        "poly": f.to_string(),
        "unit": fl.unit.to_string(),
        "factors": factors,
        "reducible": reducible,
    });
    let status = if reducible { Status::Reducible } else { Status::Ok };
    Ok(Outcome::new(json, fl.to_string(), status))
}

pub fn factor_bivariate(text: &str, field: &Field) -> Result<Outcome> {
    let f = parse_bi(text, field)?;
    if f.is_zero() {
        bail!("cannot factor the zero polynomial");
    }
    let fl = factor_bi(&f)?;
    let factors: Vec<Value> = fl
        .factors
        .iter()
        .map(|(g, m)| json!({ "factor": g.to_string(), "multiplicity": m, "deg_x": g.deg_x(), "deg_y": g.deg_y() }))
        .collect();
    let reducible = !fl.is_irreducible();
    let json = json!({
        "field": field.to_string(),
        "poly": f.to_string(),
        "unit": fl.unit.to_string(),
        "factors": factors,
        "reducible": reducible,
    });
    let status = if reducible { Status::Reducible } else { Status::Ok };
    Ok(Outcome::new(json, fl.to_string(), status))
}

pub fn decompose(text: &str, field: &Field) -> Result<Outcome> {
    let f = poly_in(text, field)?;
    if f.degree() < 1 {
        bail!("cannot decompose a constant");
    }
    let decs = complete_decompositions(&f);
    let mut lines = Vec::new();
    let mut items = Vec::new();
    for d in &decs {
        let parts = strings(&d.factors);
        lines.push(format!(
            "{:?}  {}",
            d.degrees(),
            parts.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join(" ∘ ")
        ));
        items.push(json!({ "degrees": d.degrees(), "factors": parts, "normalization": strings(&d.normalization) }));
    }
    let json = json!({
        "poly": f.to_string(),
        "indecomposable": is_indecomposable(&f),
        "decompositions": items,
    });
    Ok(Outcome::new(json, lines.join("\n"), Status::Ok))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExtensionArg {
    Auto,
    None,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    #[arg(allow_hyphen_values = true)]
    pub g: String,
    /// Retry an irreducible verdict over the listed extension fields.
    #[arg(long, value_enum, default_value = "none")]
    pub extensions: ExtensionArg,
    /// Also descend to a minimally reducible pair of left factors.
    #[arg(long)]
    pub minred: bool,
}

fn case_json(case: &Case) -> Value {
    match case {
        Case::Irreducible => json!({ "name": "Irreducible" }),
        Case::CommonLeftFactor { h, f1, g1 } => {
            json!({ "name": "CommonLeftFactor", "h": h.to_string(), "f1": f1.to_string(), "g1": g1.to_string() })
        }
        Case::DicksonPair {
            mu,
            alpha,
            f1,
            g1,
            swapped,
        } => json!({
            "name": "DicksonPair",
            "mu": mu.to_string(),
            "alpha": alpha.to_string(),
            "f1": f1.to_string(),
            "g1": g1.to_string(),
            "swapped": swapped,
        }),
        Case::ExceptionalPair {
            tag,
            h1,
            h2,
            mu,
            lambda1,
            lambda2,
            f1,
            g1,
            swapped,
        } => json!({
            "name": "ExceptionalPair",
            "tag": tag.to_string(),
            "h1": h1.to_string(),
            "h2": h2.to_string(),
            "mu": mu.to_string(),
            "lambda1": lambda1.to_string(),
            "lambda2": lambda2.to_string(),
            "f1": f1.to_string(),
            "g1": g1.to_string(),
            "swapped": swapped,
        }),
        Case::ExceptionalDegreeFlag { degree, hf, hg } => json!({
            "name": "ExceptionalDegreeFlag",
            "degree": degree,
            "hf": hf.to_string(),
            "hg": hg.to_string(),
        }),
        Case::Inconsistent(why) => json!({ "name": "Inconsistent", "detail": why }),
    }
}

fn verdict_json(v: &Verdict, f: &UniPoly, g: &UniPoly) -> Value {
    json!({
        "field": v.field.to_string(),
        "reducible": v.reducible,
        "case": case_json(&v.case),
        "oracle_factors": v.oracle_factors.to_string(),
        "witness_verified": v.verify_witness(f, g),
        "extension": v.extension.as_ref().map(|e| verdict_json(e, f, g)),
    })
}

pub fn classify(args: &ClassifyArgs, field: &Field) -> Result<Outcome> {
    let f = poly_in(&args.f, field)?;
    let g = poly_in(&args.g, field)?;
    let ext = match args.extensions {
        ExtensionArg::Auto => Extensions::Auto,
        ExtensionArg::None => Extensions::None,
    };
    let v = classify_with(&f, &g, ext)?;
    let mut json = verdict_json(&v, &f, &g);
    let mut text = format!("{v}\nfactors: {}", v.oracle_factors);
    if let Some(c) = case_detail(&v.case) {
        text.push_str(&format!("\n{c}"));
    }
    if let Some(e) = &v.extension {
        text.push_str(&format!("\nover {}: {}", e.field, e.oracle_factors));
        if let Some(c) = case_detail(&e.case) {
            text.push_str(&format!("\n{c}"));
        }
    }
    if args.minred && v.reducible {
        let cert = minimal_reducible_refinement(&f, &g)?;
        let c = cert.as_ref().map(|c| {
            json!({
                "f_tilde": c.f_tilde.to_string(),
                "g_tilde": c.g_tilde.to_string(),
                "f1": c.f1.to_string(),
                "g1": c.g1.to_string(),
                "factors": c.factors.to_string(),
                "equal_degrees": c.equal_degrees,
                "branch_loci_equal": c.branch_loci_equal,
                "irreducible_subpairs": c.irreducible_subpairs.len(),
            })
        });
        if let Some(c) = &cert {
            text.push_str(&format!(
                "\nminimally reducible: ({}, {}), equal degrees {}, equal branch loci {}",
                c.f_tilde, c.g_tilde, c.equal_degrees, c.branch_loci_equal
            ));
        }
        json["certificate"] = c.unwrap_or(Value::Null);
    }
    let status = if v.is_inconsistent() {
        Status::Inconsistent
    } else if v.reducible {
        Status::Reducible
    } else {
        Status::Ok
    };
    Ok(Outcome::new(json, text, status))
}

fn case_detail(case: &Case) -> Option<String> {
    match case {
        Case::CommonLeftFactor { h, f1, g1 } => Some(format!("h = {h}\nf1 = {f1}\ng1 = {g1}")),
        Case::DicksonPair {
            mu,
            alpha,
            f1,
            g1,
            swapped,
        } => Some(format!(
            "alpha = {alpha}, mu = {mu}, swapped = {swapped}\nf1 = {f1}\ng1 = {g1}"
        )),
        Case::ExceptionalPair {
            tag,
            mu,
            lambda1,
            lambda2,
            f1,
            g1,
            ..
        } => Some(format!(
            "{tag}: mu = {mu}, lambda1 = {lambda1}, lambda2 = {lambda2}\nf1 = {f1}\ng1 = {g1}"
        )),
        Case::ExceptionalDegreeFlag { degree, hf, hg } => {
            Some(format!("degree {degree} left factors without stored data:\n{hf}\n{hg}"))
        }
        Case::Inconsistent(why) => Some(why.clone()),
        Case::Irreducible => None,
    }
}

#[derive(Subcommand)]
pub enum FamiliesCommand {
    /// Print the polynomials of a named pair.
    Emit { tag: String },
    /// Run the checks for a named pair or genus-0 family.
    Verify { tag: String },
}

enum Target {
    Pair(FamilyTag),
    Genus0(Genus0Case),
}

fn numbers(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| anyhow!("bad number '{t}'")))
        .collect()
}

/// Named pairs as accepted by FamilyTag, plus `chebyshev:m,n,d`,
/// `p1:a,b`, `p2` and `p3`.
fn target(tag: &str) -> Result<Target> {
    let t = tag.trim().to_ascii_lowercase();
    if let Some(rest) = t.strip_prefix("chebyshev:") {
        let v = numbers(rest)?;
        let [m, n, d] = v[..] else {
            bail!("chebyshev needs m,n,d")
        };
        return Ok(Target::Genus0(Genus0Case::Chebyshev { m, n, d }));
    }
    if let Some(rest) = t.strip_prefix("p1:") {
        let v = numbers(rest)?;
        let [a, b] = v[..] else { bail!("p1 needs a,b") };
        return Ok(Target::Genus0(Genus0Case::Family(Genus0::P1(a as u32, b as u32))));
    }
    match t.as_str() {
        "p2" => return Ok(Target::Genus0(Genus0Case::Family(Genus0::P2))),
        "p3" => return Ok(Target::Genus0(Genus0Case::Family(Genus0::P3))),
        _ => {}
    }
    Ok(Target::Pair(t.parse::<FamilyTag>()?))
}

fn report_outcome(rep: &FamilyReport) -> Outcome {
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    let json = json!({
        "tag": rep.tag,
        "field": rep.field,
        "factor_degrees": rep.factor_degrees,
        "checks": checks,
        "passed": rep.passed(),
    });
    let mut lines = vec![format!(
        "{} over {}: factor degrees {:?}",
        rep.tag, rep.field, rep.factor_degrees
    )];
    for c in &rep.checks {
        let mark = if c.passed { "ok" } else { "FAILED" };
        if c.detail.is_empty() {
            lines.push(format!("  {mark}  {}", c.name));
        } else {
            lines.push(format!("  {mark}  {} ({})", c.name, c.detail));
        }
    }
    let status = if rep.passed() { Status::Ok } else { Status::Inconsistent };
    Outcome::new(json, lines.join("\n"), status)
}

pub fn families(cmd: &FamiliesCommand) -> Result<Outcome> {
    match cmd {
        FamiliesCommand::Emit { tag } => match target(tag)? {
            Target::Pair(FamilyTag::Dickson4Symbolic) => {
                let (l, r) = symbolic::dickson4_identity();
                let json = json!({ "tag": "dickson4", "lhs": l.to_string(), "rhs": r.to_string() });
                Ok(Outcome::new(json, format!("{l}\n= {r}"), Status::Ok))
            }
            Target::Pair(t) => {
                let p = exceptional_pair(&t)?;
                let json = json!({
                    "tag": t.to_string(),
                    "field": p.field.to_string(),
                    "h1": p.h1.to_string(),
                    "h2": p.h2.to_string(),
                    "gamma": p.gamma.to_string(),
                });
                let text = format!("{t} over {}\nh1 = {}\nh2 = {}", p.field, p.h1, p.h2);
                Ok(Outcome::new(json, text, Status::Ok))
            }
            Target::Genus0(Genus0Case::Family(w)) => {
                let p = sepred_core::families::genus0_p(w)?;
                let json = json!({ "tag": format!("{w:?}"), "field": p.field().to_string(), "p": p.to_string() });
                Ok(Outcome::new(json, format!("P = {p}"), Status::Ok))
            }
            Target::Genus0(_) => bail!("emit takes a named pair or p1/p2/p3"),
        },
        FamiliesCommand::Verify { tag } => {
            let rep = match target(tag)? {
                Target::Pair(t) => verify_family(&t),
                Target::Genus0(c) => genus0_reduced_check(&c),
            };
            match rep {
                Ok(r) => Ok(report_outcome(&r)),
                Err(AlgebraError::DataUnavailable(d)) => {
                    let json = json!({ "tag": tag, "data_unavailable": d });
                    Ok(Outcome::new(
                        json,
                        format!("degree {d}: known to exist, no explicit data on file"),
                        Status::InputError,
                    ))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

#[derive(Args)]
pub struct ScanArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    /// Scan a in [-N, N].
    #[arg(long = "bound", short = 'N', default_value_t = 100)]
    pub bound: i64,
    /// Only the exhaustive scan, without prediction.
    #[arg(long)]
    pub no_predict: bool,
}

pub fn scan(args: &ScanArgs, field: &Field, seed: u64) -> Result<Outcome> {
    let f = poly_in(&args.f, field)?;
    if args.no_predict {
        let r = scan_red(&f, args.bound)?;
        let text = format!("Red ∩ [-{0}, {0}] = {1:?}", r.n, r.reducible);
        return Ok(Outcome::new(serde_json::to_value(&r)?, text, Status::Ok));
    }
    let r = residual_analysis(&f, args.bound, seed)?;
    let s = &r.scan;
    let mut lines = vec![
        format!("Red ∩ [-{0}, {0}] = {1:?}", s.n, s.reducible),
        format!("predicted = {:?}", s.predicted.iter().map(|p| p.a).collect::<Vec<_>>()),
        format!("residual = {:?}", s.residual),
    ];
    if r.through_degree_2_or_4 {
        lines.push("f factors through a degree 2 or 4 polynomial; an infinite residual is allowed".into());
    }
    for g in &r.degree5_nonsolvable {
        lines.push(format!("degree-5 left factor with nonsolvable signature: {g}"));
    }
    let status = if s.residual.is_empty() {
        Status::Ok
    } else {
        Status::Reducible
    };
    Ok(Outcome::new(serde_json::to_value(&r)?, lines.join("\n"), status))
}

#[derive(Args)]
pub struct StabilityArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    /// Number of iterations n, compared against f itself.
    #[arg(long, default_value_t = 2)]
    pub iterations: usize,
    #[arg(long = "bound", short = 'N', default_value_t = 100)]
    pub bound: i64,
}

pub fn stability(args: &StabilityArgs, field: &Field) -> Result<Outcome> {
    let f = poly_in(&args.f, field)?;
    let r = stability_scan(&f, args.iterations, args.bound)?;
    let text = format!(
        "Red(f) = {:?}\nRed(f^{}) = {:?}\ndifference = {:?}",
        r.base, r.iterations, r.iterate, r.difference
    );
    let status = if r.difference.is_empty() {
        Status::Ok
    } else {
        Status::Reducible
    };
    Ok(Outcome::new(serde_json::to_value(&r)?, text, status))
}

#[derive(Args)]
pub struct MnArgs {
    /// P, of degree n.
    #[arg(allow_hyphen_values = true)]
    pub p: String,
    /// Q, of degree m <= n.
    #[arg(allow_hyphen_values = true)]
    pub q: String,
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    #[arg(allow_hyphen_values = true)]
    pub g: String,
}

pub fn mn_check(args: &MnArgs, field: &Field) -> Result<Outcome> {
    let [p, q, f, g] = [&args.p, &args.q, &args.f, &args.g].map(|t| poly_in(t, field));
    let (p, q, f, g) = (p?, q?, f?, g?);
    let irreducible = mn_problem_check(&p, &q, &f, &g)?;
    let json = json!({
        "p": p.to_string(),
        "q": q.to_string(),
        "f": f.to_string(),
        "g": g.to_string(),
        "irreducible": irreducible,
    });
    let text = if irreducible {
        "Q(f(X)) - P(g(Y)) is irreducible".to_string()
    } else {
        "Q(f(X)) - P(g(Y)) is reducible".to_string()
    };
    let status = if irreducible { Status::Ok } else { Status::Reducible };
    Ok(Outcome::new(json, text, status))
}
