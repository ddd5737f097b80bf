//! Decides reducibility of f(X) - g(Y), explains it by one of the three
//! structural cases with a witness that re-verifies by composition, and
//! cross-checks against the bivariate factorization.

use std::fmt;

use crate::arith::{nf_automorphism, Field, NFElement};
use crate::bipoly::{factor_bi, is_irreducible_bi, separated, BiFactorList, BiPoly};
use crate::decompose::{left_factors, linearly_related, recognize_dickson, recognize_power, LinearMap};
use crate::error::{AlgebraError, Result};
use crate::families::{
    chebyshev, chebyshev_h, deg13_field, deg7_field, dickson, exceptional_pair, genus0_p, verify_family, FamilyReport,
    FamilyTag, Genus0,
};
use crate::poly::{branch_loci_equal, critical_value_poly, roots, simply_branched, squarefree_part, UniPoly};

/// Which structural case explains a reducible f(X) - g(Y).
#[derive(Clone, Debug)]
pub enum Case {
    Irreducible,
    /// f = h ∘ f1 and g = h ∘ g1.
    CommonLeftFactor {
        h: UniPoly,
        f1: UniPoly,
        g1: UniPoly,
    },
    /// f = μ ∘ D_{4,α} ∘ f1 and g = μ ∘ (-1/4 D_{4,2α}) ∘ g1, or the same
    /// with f and g exchanged when `swapped`.
    DicksonPair {
        mu: LinearMap,
        alpha: NFElement,
        f1: UniPoly,
        g1: UniPoly,
        swapped: bool,
    },
    /// f = μ ∘ h1 ∘ λ1 ∘ f1 and g = μ ∘ h2 ∘ λ2 ∘ g1, where (h1, h2) is the
    /// stored pair `tag` after a field automorphism (exchanged if `swapped`).
    ExceptionalPair {
        tag: FamilyTag,
        h1: UniPoly,
        h2: UniPoly,
        mu: LinearMap,
        lambda1: LinearMap,
        lambda2: LinearMap,
        f1: UniPoly,
        g1: UniPoly,
        swapped: bool,
    },
    /// Reducible left factors of degree 11, 15, 21 or 31; no stored data.
    ExceptionalDegreeFlag {
        degree: usize,
        hf: UniPoly,
        hg: UniPoly,
    },
    /// Reducible with no witness found.
    Inconsistent(String),
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::Irreducible => "Irreducible",
            Case::CommonLeftFactor { .. } => "CommonLeftFactor",
            Case::DicksonPair { .. } => "DicksonPair",
            Case::ExceptionalPair { .. } => "ExceptionalPair",
            Case::ExceptionalDegreeFlag { .. } => "ExceptionalDegreeFlag",
            Case::Inconsistent(_) => "Inconsistent",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub reducible: bool,
    pub case: Case,
    pub oracle_factors: BiFactorList,
    /// Field the computation (and witness) lives in.
    pub field: Field,
    /// For an irreducible verdict: the first listed extension over which
    /// the pair becomes reducible, with the verdict there.
    pub extension: Option<Box<Verdict>>,
}

impl Verdict {
    pub fn is_inconsistent(&self) -> bool {
        matches!(self.case, Case::Inconsistent(_)) || self.extension.as_ref().is_some_and(|v| v.is_inconsistent())
    }

    /// Re-derives f and g from the witness and compares.
    pub fn verify_witness(&self, f: &UniPoly, g: &UniPoly) -> bool {
        let k = &self.field;
        let (Ok(f), Ok(g)) = (f.to_field(k), g.to_field(k)) else {
            return false;
        };
        match &self.case {
            Case::Irreducible => !self.reducible,
            Case::CommonLeftFactor { h, f1, g1 } => h.compose(f1) == f && h.compose(g1) == g,
            Case::DicksonPair {
                mu,
                alpha,
                f1,
                g1,
                swapped,
            } => {
                let (a, b) = dickson_shapes(alpha);
                let fa = mu.apply_left(&a.compose(f1));
                let gb = mu.apply_left(&b.compose(g1));
                if *swapped {
                    fa == g && gb == f
                } else {
                    fa == f && gb == g
                }
            }
            Case::ExceptionalPair {
                h1,
                h2,
                mu,
                lambda1,
                lambda2,
                f1,
                g1,
                swapped,
                ..
            } => {
                let a = mu.apply_left(&lambda1.apply_right(h1)).compose(f1);
                let b = mu.apply_left(&lambda2.apply_right(h2)).compose(g1);
                if *swapped {
                    a == g && b == f
                } else {
                    a == f && b == g
                }
            }
            Case::ExceptionalDegreeFlag { .. } => self.reducible,
            Case::Inconsistent(_) => false,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.case.name(), self.field.label())?;
        if let Some(e) = &self.extension {
            write!(f, "; over {}: {}", e.field.label(), e.case.name())?;
        }
        Ok(())
    }
}

/// D_{4,α} and -1/4 D_{4,2α}.
fn dickson_shapes(alpha: &NFElement) -> (UniPoly, UniPoly) {
    let k = alpha.field();
    let a = dickson(4, alpha);
    let b = dickson(4, &(alpha + alpha)).scale(&k.from_int(-4).inv().expect("nonzero"));
    (a, b)
}

/// Whether to retry an irreducible verdict over a fixed list of extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extensions {
    None,
    Auto,
}

/// ℚ(√2), ℚ(i), ℚ(a) with a² + a + 2 = 0, the quartic ζ13-period field and
/// ℚ(2cos π/d) for d <= 12, deduplicated and ordered by degree.
pub fn extension_fields() -> Vec<Field> {
    let mut out = vec![
        Field::parse("s^2 - 2", "s").expect("irreducible"),
        Field::parse("i^2 + 1", "i").expect("irreducible"),
        deg7_field(),
        deg13_field(),
    ];
    for d in 5..=12 {
        if let Ok(h) = chebyshev_h(d) {
            if !h.field.is_rationals() && !out.iter().any(|k| k.minpoly() == h.field.minpoly()) {
                out.push(h.field);
            }
        }
    }
    out.sort_by_key(|k| k.degree());
    out
}

/// Left factors (h, f1) with deg h >= 2, ordered by increasing deg h.
fn sorted_left_factors(f: &UniPoly) -> Vec<(UniPoly, UniPoly)> {
    let mut v = left_factors(f);
    v.sort_by_key(|(h, _)| h.degree());
    v
}

fn common_left_factor(f: &UniPoly, g: &UniPoly) -> Option<Case> {
    let lf = sorted_left_factors(f);
    let lg = sorted_left_factors(g);
    for (hf, f1) in &lf {
        for (hg, g1) in lg.iter().filter(|(h, _)| h.degree() == hf.degree()) {
            // hg = hf ∘ ν, so g = hf ∘ (ν ∘ g1)
            if let Some((_, nu)) = linearly_related(hg, hf, true) {
                return Some(Case::CommonLeftFactor {
                    h: hf.clone(),
                    f1: f1.clone(),
                    g1: nu.apply_left(g1),
                });
            }
        }
    }
    None
}

/// h = μ ∘ D_{4,α} ∘ ν, including α = 0.
fn dickson4_form(h: &UniPoly) -> Option<(LinearMap, NFElement, LinearMap)> {
    if h.degree() != 4 {
        return None;
    }
    if let Some((mu, _, alpha, nu)) = recognize_dickson(h) {
        return Some((mu, alpha, nu));
    }
    recognize_power(h).map(|(mu, _, nu)| (mu, h.field().zero(), nu))
}

fn dickson_case_oriented(f: &UniPoly, g: &UniPoly, swapped: bool) -> Option<Case> {
    for (hf, f1) in sorted_left_factors(f).iter().filter(|(h, _)| h.degree() == 4) {
        let Some((mu, alpha, nu_f)) = dickson4_form(hf) else {
            continue;
        };
        let (_, b) = dickson_shapes(&alpha);
        let target = mu.apply_left(&b);
        for (hg, g1) in sorted_left_factors(g).iter().filter(|(h, _)| h.degree() == 4) {
            if let Some((_, nu_g)) = linearly_related(hg, &target, true) {
                return Some(Case::DicksonPair {
                    mu: mu.clone(),
                    alpha: alpha.clone(),
                    f1: nu_f.apply_left(f1),
                    g1: nu_g.apply_left(g1),
                    swapped,
                });
            }
        }
    }
    None
}

fn dickson_case(f: &UniPoly, g: &UniPoly) -> Option<Case> {
    dickson_case_oriented(f, g, false).or_else(|| dickson_case_oriented(g, f, true))
}

/// All images of a pair under the automorphisms of its field.
fn conjugate_pairs(h1: &UniPoly, h2: &UniPoly) -> Vec<(UniPoly, UniPoly)> {
    let k = h1.field();
    if k.is_rationals() {
        return vec![(h1.clone(), h2.clone())];
    }
    let Ok(m) = k.minpoly().to_field(k) else {
        return Vec::new();
    };
    roots(&m)
        .into_iter()
        .filter_map(|r| nf_automorphism(k, &r).ok())
        .map(|s| (s.apply_poly(h1), s.apply_poly(h2)))
        .collect()
}

fn match_exceptional(hf: &UniPoly, hg: &UniPoly, tag: &FamilyTag) -> Option<Case> {
    let pair = exceptional_pair(tag).ok()?;
    let l = &pair.field;
    let (hf, hg) = match (hf.to_field(l), hg.to_field(l)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return None,
    };
    for (c1, c2) in conjugate_pairs(&pair.h1, &pair.h2) {
        for (swapped, (a, b)) in [(false, (&hf, &hg)), (true, (&hg, &hf))] {
            let Some((mu, lambda1)) = linearly_related(a, &c1, false) else {
                continue;
            };
            let inner = mu.inverse().apply_left(b);
            if let Some((_, lambda2)) = linearly_related(&inner, &c2, true) {
                return Some(Case::ExceptionalPair {
                    tag: tag.clone(),
                    h1: c1,
                    h2: c2,
                    mu,
                    lambda1,
                    lambda2,
                    f1: UniPoly::x(l),
                    g1: UniPoly::x(l),
                    swapped,
                });
            }
        }
    }
    None
}

fn exceptional_case(f: &UniPoly, g: &UniPoly) -> Result<Option<Case>> {
    let lf = sorted_left_factors(f);
    let lg = sorted_left_factors(g);
    for (hf, f1) in &lf {
        let d = hf.degree();
        if ![7, 11, 13, 15, 21, 31].contains(&d) {
            continue;
        }
        for (hg, g1) in lg.iter().filter(|(h, _)| h.degree() == d) {
            if is_irreducible_bi(&separated(hf, hg)?)? {
                continue;
            }
            let tags: &[FamilyTag] = match d {
                7 => &[FamilyTag::Deg7_237, FamilyTag::Deg7_247],
                13 => &[FamilyTag::Deg13_2313],
                _ => {
                    return Ok(Some(Case::ExceptionalDegreeFlag {
                        degree: d,
                        hf: hf.clone(),
                        hg: hg.clone(),
                    }))
                }
            };
            for tag in tags {
                if let Some(Case::ExceptionalPair {
                    tag,
                    h1,
                    h2,
                    mu,
                    lambda1,
                    lambda2,
                    swapped,
                    ..
                }) = match_exceptional(hf, hg, tag)
                {
                    let l = h1.field().clone();
                    let (f1, g1) = if swapped { (g1, f1) } else { (f1, g1) };
                    return Ok(Some(Case::ExceptionalPair {
                        tag,
                        h1,
                        h2,
                        mu,
                        lambda1,
                        lambda2,
                        f1: f1.to_field(&l)?,
                        g1: g1.to_field(&l)?,
                        swapped,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn unify(f: &UniPoly, g: &UniPoly) -> Result<(UniPoly, UniPoly)> {
    crate::poly::unify_fields(f, g)
        .ok_or_else(|| AlgebraError::FieldMismatch(f.field().label().to_string(), g.field().label().to_string()))
}

/// Classification over the coefficient field of f and g.
pub fn classify(f: &UniPoly, g: &UniPoly) -> Result<Verdict> {
    classify_with(f, g, Extensions::None)
}

pub fn classify_with(f: &UniPoly, g: &UniPoly, ext: Extensions) -> Result<Verdict> {
    let (f, g) = unify(f, g)?;
    if f.degree() < 2 || g.degree() < 2 {
        return Err(AlgebraError::PreconditionViolated(
            "classify needs deg f, deg g >= 2".into(),
        ));
    }
    let k = f.field().clone();
    let fl = factor_bi(&separated(&f, &g)?)?;
    let reducible = !fl.is_irreducible();
    let case = if !reducible {
        Case::Irreducible
    } else if let Some(c) = common_left_factor(&f, &g) {
        c
    } else if let Some(c) = dickson_case(&f, &g) {
        c
    } else if let Some(c) = exceptional_case(&f, &g)? {
        c
    } else {
        Case::Inconsistent(format!(
            "f(X) - g(Y) factors as {fl} but no structural witness was found"
        ))
    };
    let mut verdict = Verdict {
        reducible,
        case,
        oracle_factors: fl,
        field: k.clone(),
        extension: None,
    };
    if !reducible && ext == Extensions::Auto && k.is_rationals() {
        for l in extension_fields() {
            let v = classify_with(&f.to_field(&l)?, &g.to_field(&l)?, Extensions::None)?;
            if v.reducible {
                verdict.extension = Some(Box::new(v));
                break;
            }
        }
    }
    Ok(verdict)
}

/// A reducible pair of left factors all of whose smaller left-factor pairs
/// give irreducible separated polynomials.
#[derive(Clone, Debug)]
pub struct MinRedCertificate {
    pub f_tilde: UniPoly,
    pub g_tilde: UniPoly,
    pub f1: UniPoly,
    pub g1: UniPoly,
    pub factors: BiFactorList,
    /// Strictly smaller left-factor pairs, each checked irreducible.
    pub irreducible_subpairs: Vec<(UniPoly, UniPoly)>,
    pub equal_degrees: bool,
    pub branch_loci_equal: bool,
}

/// Descends the left-factor lattices to a minimally reducible pair.
pub fn minimal_reducible_refinement(f: &UniPoly, g: &UniPoly) -> Result<Option<MinRedCertificate>> {
    let (f, g) = unify(f, g)?;
    let lf = sorted_left_factors(&f);
    let lg = sorted_left_factors(&g);
    let mut pairs: Vec<(usize, usize)> = (0..lf.len()).flat_map(|i| (0..lg.len()).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|&(i, j)| (lf[i].0.degree() + lg[j].0.degree(), lf[i].0.degree()));
    let mut irreducible: Vec<(usize, usize)> = Vec::new();
    for (i, j) in pairs {
        let (hf, f1) = &lf[i];
        let (hg, g1) = &lg[j];
        let fl = factor_bi(&separated(hf, hg)?)?;
        if fl.is_irreducible() {
            irreducible.push((i, j));
            continue;
        }
        // smaller pairs are left factors of (hf, hg) found earlier
        let subs = irreducible
            .iter()
            .filter(|&&(a, b)| {
                let (sa, sb) = (&lf[a].0, &lg[b].0);
                (sa.degree(), sb.degree()) != (hf.degree(), hg.degree())
                    && is_left_factor_of(sa, hf)
                    && is_left_factor_of(sb, hg)
            })
            .map(|&(a, b)| (lf[a].0.clone(), lg[b].0.clone()))
            .collect();
        return Ok(Some(MinRedCertificate {
            f_tilde: hf.clone(),
            g_tilde: hg.clone(),
            f1: f1.clone(),
            g1: g1.clone(),
            factors: fl,
            irreducible_subpairs: subs,
            equal_degrees: hf.degree() == hg.degree(),
            branch_loci_equal: branch_loci_equal(hf, hg),
        }));
    }
    Ok(None)
}

fn is_left_factor_of(a: &UniPoly, h: &UniPoly) -> bool {
    if a.degree() == h.degree() {
        return linearly_related(h, a, true).is_some();
    }
    if !h.degree().is_multiple_of(a.degree()) {
        return false;
    }
    match crate::decompose::right_factor(h, h.degree() / a.degree()) {
        Some((l, _)) => linearly_related(&l, a, true).is_some(),
        None => false,
    }
}

/// The three genus-0 situations with reduced solutions.
#[derive(Clone, Debug)]
pub enum Genus0Case {
    /// T_n(X) ± T_m(Y) with d | gcd(m, n), d >= 3.
    Chebyshev {
        m: usize,
        n: usize,
        d: usize,
    },
    Family(Genus0),
    Exceptional(FamilyTag),
}

pub fn genus0_reduced_check(case: &Genus0Case) -> Result<FamilyReport> {
    match case {
        Genus0Case::Chebyshev { m, n, d } => {
            let (m, n, d) = (*m, *n, *d);
            if d < 3 || m % d != 0 || n % d != 0 {
                return Err(AlgebraError::BadParameters(format!(
                    "need d >= 3 dividing m and n, got (m, n, d) = ({m}, {n}, {d})"
                )));
            }
            let ch = chebyshev_h(d)?;
            let k = &ch.field;
            let tn = chebyshev(n).to_field(k)?;
            let tm = chebyshev(m).to_field(k)?;
            let sub =
                ch.h.substitute(&chebyshev(n / d).to_field(k)?, &chebyshev(m / d).to_field(k)?);
            let plus = crate::bipoly::divides_bi(&sub, &separated(&tn, &tm.scale(&k.from_int(-1)))?);
            let minus = crate::bipoly::divides_bi(&sub, &separated(&tn, &tm)?);
            let mut rep = FamilyReport {
                tag: format!("chebyshev(m={m}, n={n}, d={d})"),
                field: k.to_string(),
                factor_degrees: vec![sub.deg_x()],
                checks: Vec::new(),
            };
            rep.checks.push(crate::families::Check {
                name: "H(T_{n/d}(X), T_{m/d}(Y)) divides T_n(X) + T_m(Y) or T_n(X) - T_m(Y)".into(),
                passed: plus || minus,
                detail: format!("sign +: {plus}, sign -: {minus}"),
            });
            Ok(rep)
        }
        Genus0Case::Family(which) => {
            let p = genus0_p(*which)?;
            let k = p.field().clone();
            let sep = separated(&p, &p)?;
            let diag = BiPoly::new(&k, vec![UniPoly::from_ints(&k, &[0, -1]), UniPoly::one(&k)]);
            let q = sep
                .exact_div(&diag)
                .ok_or_else(|| AlgebraError::PreconditionViolated("X - Y does not divide P(X) - P(Y)".into()))?;
            let fl = factor_bi(&q)?;
            let mut rep = FamilyReport {
                tag: format!("{which:?}"),
                field: k.to_string(),
                factor_degrees: fl.degrees_x(),
                checks: Vec::new(),
            };
            rep.checks.push(crate::families::Check {
                name: "(P(X) - P(Y))/(X - Y) irreducible".into(),
                passed: fl.is_irreducible(),
                detail: format!("{fl}"),
            });
            Ok(rep)
        }
        Genus0Case::Exceptional(tag) => verify_family(tag),
    }
}

/// Checks the hypotheses on (P, Q), then decides irreducibility of
/// Q(f(X)) - P(g(Y)), which the theory predicts for all f, g.
pub fn mn_problem_check(p: &UniPoly, q: &UniPoly, f: &UniPoly, g: &UniPoly) -> Result<bool> {
    let (p, q) = unify(p, q)?;
    let (m, n) = (q.degree(), p.degree());
    let fail = |s: String| Err(AlgebraError::PreconditionViolated(s));
    if m < 2 || n < m.max(3) {
        return fail(format!(
            "need deg Q = m >= 2 and deg P = n >= max(m, 3), got m = {m}, n = {n}"
        ));
    }
    if !simply_branched(&p) {
        return fail(format!("P = {p} is not simply branched"));
    }
    if !simply_branched(&q) {
        return fail(format!("Q = {q} is not simply branched"));
    }
    if m == n && linearly_related(&p, &q, true).is_some() {
        return fail(format!("P = Q ∘ μ for a linear μ (P = {p})"));
    }
    if n == 3 {
        let bp = squarefree_part(&critical_value_poly(&p));
        let bq = squarefree_part(&critical_value_poly(&q));
        if bp.gcd(&bq).degree() > 0 {
            return fail("n = 3 and the branch loci of P and Q meet".into());
        }
    }
    let (qf, pg) = unify(&q.compose(&f.to_field(q.field())?), &p.compose(&g.to_field(p.field())?))?;
    is_irreducible_bi(&separated(&qf, &pg)?)
}
