//! Finite critical values and branch-locus comparisons.

use super::{interpolate, UniPoly};
use crate::arith::NFElement;

/// Res_X(f(X) - T, f'(X)) as a monic polynomial in T; its roots are the
/// finite critical values of f. Requires deg f >= 2.
pub fn critical_value_poly(f: &UniPoly) -> UniPoly {
    assert!(f.degree() >= 2, "critical values need degree >= 2");
    let k = f.field();
    let df = f.derivative();
    let n = f.degree();
    // the resultant has T-degree exactly n - 1
    let ts: Vec<NFElement> = (0..n as i64).map(|i| k.from_int(i)).collect();
    let vals: Vec<NFElement> = ts
        .iter()
        .map(|t| {
            let ft = f - &UniPoly::constant(t.clone());
            ft.resultant(&df)
        })
        .collect();
    interpolate(k, &ts, &vals).monic()
}

/// Monic squarefree part.
pub(crate) fn squarefree_part(f: &UniPoly) -> UniPoly {
    let g = f.gcd(&f.derivative());
    f.exact_div(&g).expect("gcd divides").monic()
}

/// Every finite branch point has a unique ramified preimage, of index 2.
pub fn simply_branched(f: &UniPoly) -> bool {
    let df = f.derivative();
    if !df.is_squarefree() {
        return false;
    }
    squarefree_part(&critical_value_poly(f)).degree() == f.degree() - 1
}

/// Same finite branch locus: equal monic squarefree critical-value polynomials.
pub fn branch_loci_equal(f: &UniPoly, g: &UniPoly) -> bool {
    let (f, g) = match unify(f, g) {
        Some(p) => p,
        None => return false,
    };
    squarefree_part(&critical_value_poly(&f)) == squarefree_part(&critical_value_poly(&g))
}

/// Brings two polynomials to a common field when one of them is rational.
pub(crate) fn unify(f: &UniPoly, g: &UniPoly) -> Option<(UniPoly, UniPoly)> {
    if f.field() == g.field() {
        return Some((f.clone(), g.clone()));
    }
    if let Ok(f2) = f.to_field(g.field()) {
        return Some((f2, g.clone()));
    }
    g.to_field(f.field()).ok().map(|g2| (f.clone(), g2))
}

/// Critical values with their multiplicity pattern, for reports.
#[derive(Debug, Clone)]
pub struct CriticalValues {
    pub poly: UniPoly,
    pub squarefree: UniPoly,
}

impl CriticalValues {
    pub fn of(f: &UniPoly) -> CriticalValues {
        let poly = critical_value_poly(f);
        let squarefree = squarefree_part(&poly);
        CriticalValues { poly, squarefree }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::poly::rational_roots;

    #[test]
    fn examples() {
        assert_eq!(critical_value_poly(&UniPoly::q(&[0, 0, 1])), UniPoly::q(&[0, 1]));
        let t4 = UniPoly::q(&[2, 0, -4, 0, 1]);
        let mut r = rational_roots(&critical_value_poly(&t4));
        r.dedup();
        assert_eq!(r, vec![rat(-2), rat(2)]);
        let c3 = UniPoly::q(&[0, -3, 0, 1]);
        assert_eq!(rational_roots(&critical_value_poly(&c3)), vec![rat(-2), rat(2)]);
    }

    #[test]
    fn simple_branching() {
        assert!(simply_branched(&UniPoly::q(&[0, -3, 0, 1])));
        assert!(!simply_branched(&UniPoly::q(&[0, 0, 0, 1])));
        assert!(!simply_branched(&UniPoly::q(&[2, 0, -4, 0, 1])));
    }

    #[test]
    fn loci() {
        let t4 = UniPoly::q(&[2, 0, -4, 0, 1]);
        assert!(branch_loci_equal(&t4, &-&t4));
        assert!(branch_loci_equal(&UniPoly::q(&[0, 0, 1]), &UniPoly::q(&[0, 0, 0, 1])));
        assert!(!branch_loci_equal(&UniPoly::q(&[0, 0, 1]), &UniPoly::q(&[1, 0, 1])));
    }
}
