//! Dense polynomials over Q as bare coefficient slices (low to high).
//!
//! These helpers sit below `Field` so that number-field arithmetic does not
//! depend on `UniPoly`.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub fn degree(v: &[BigRational]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let c = &r[k] * &inv;
        for j in 0..=db {
            let t = &c * &b[j];
            r[k - db + j] -= t;
        }
        q[k - db] = c;
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    // extended Euclid tracking only the coefficient of `a`
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let mut out: Vec<BigRational> = s0.into_iter().map(|x| x * &c).collect();
    trim(&mut out);
    Some(divrem(&out, m).1)
}

/// Resultant `Res(a, b)` over Q by the Euclidean algorithm.
pub fn resultant(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let (Some(mut da), Some(mut db)) = (degree(a), degree(b)) else {
        return BigRational::zero();
    };
    let mut a = a[..=da].to_vec();
    let mut b = b[..=db].to_vec();
    let mut acc = BigRational::one();
    loop {
        if db == 0 {
            return acc * num_traits::pow(b[0].clone(), da);
        }
        if da < db {
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut da, &mut db);
            continue;
        }
        let (_, r) = divrem(&a, &b);
        let Some(dr) = degree(&r) else {
            return BigRational::zero();
        };
        // Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b[db].clone(), da - dr);
        a = b;
        da = db;
        b = r;
        db = dr;
    }
}
