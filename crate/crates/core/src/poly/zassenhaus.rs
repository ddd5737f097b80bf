//! Factorization of squarefree primitive integer polynomials:
//! modular factorization, quadratic Hensel lifting, subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{self, Fp};

pub type ZPoly = Vec<BigInt>;

fn ztrim(v: &mut ZPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(&mut out);
    out
}

fn modm(v: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = v.iter().map(|c| c.mod_floor(m)).collect();
    ztrim(&mut out);
    out
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    ztrim(&mut out);
    out
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    ztrim(&mut out);
    out
}

/// Division by a monic polynomial modulo m.
fn divrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = modm(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[k - db + j] -= &c * &b[j];
        }
        q[k - db] = c;
    }
    (modm(&q, m), modm(&r, m))
}

/// Symmetric residue in (-m/2, m/2].
fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn content(v: &ZPoly) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

fn primitive(v: &ZPoly) -> ZPoly {
    let mut c = content(v);
    if c.is_zero() {
        return v.clone();
    }
    if v.last().unwrap().is_negative() {
        c = -c;
    }
    v.iter().map(|x| x / &c).collect()
}

/// Exact division over Z; None if `b` does not divide `a`.
pub fn zexact_div(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len() - 1;
    let mut r = a.clone();
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let (c, rr) = r[k].div_rem(lb);
        if !rr.is_zero() {
            return None;
        }
        for j in 0..=db {
            r[k - db + j] -= &c * &b[j];
        }
        q[k - db] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    ztrim(&mut q);
    Some(q)
}

/// One quadratic Hensel step (von zur Gathen and Gerhard, Alg. 15.10).
/// Input congruences hold mod m; output holds mod m^2.
#[allow(clippy::too_many_arguments)]
fn hensel_step(f: &ZPoly, g: &ZPoly, h: &ZPoly, s: &ZPoly, t: &ZPoly, m2: &BigInt) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = modm(&zsub(f, &zmul(g, h)), m2);
    let (q, r) = divrem_monic(&zmul(s, &e), h, m2);
    let g1 = modm(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), m2);
    let h1 = modm(&zadd(h, &r), m2);
    let b = modm(&zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &vec![BigInt::one()]), m2);
    let (c, d) = divrem_monic(&zmul(s, &b), &h1, m2);
    let s1 = modm(&zsub(s, &d), m2);
    let t1 = modm(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), m2);
    (g1, h1, s1, t1)
}

/// Lifts monic modular factors of `f` (lc not divisible by p) to monic
/// factors modulo p^(2^steps).
fn multifactor_lift(f: &ZPoly, factors: &[Fp], p: u64, steps: u32) -> Vec<ZPoly> {
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    for _ in 0..steps {
        modulus = &modulus * &modulus;
    }
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = lc.modinv(&modulus).expect("lc invertible mod p");
        return vec![modm(&f.iter().map(|c| c * &inv).collect(), &modulus)];
    }
    let k = factors.len() / 2;
    let lc_f = f.last().unwrap().clone();
    let lc_p = modp::reduce_big(&lc_f, p);
    let left = factors[..k].iter().fold(vec![lc_p], |acc, u| modp::mul(&acc, u, p));
    let right = factors[k..].iter().fold(vec![1u64], |acc, u| modp::mul(&acc, u, p));
    let (_, s, t) = modp::xgcd(&left, &right, p);
    let mut g = modp::to_bigints(&left);
    let mut h = modp::to_bigints(&right);
    let mut s = modp::to_bigints(&s);
    let mut t = modp::to_bigints(&t);
    let mut m = pb;
    for _ in 0..steps {
        m = &m * &m;
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
    }
    // the lifted g carries lc(f) modulo p^(2^steps)
    let mut out = multifactor_lift(&g, &factors[..k], p, steps);
    out.extend(multifactor_lift(&h, &factors[k..], p, steps));
    out
}

/// Irreducible factors of a squarefree primitive integer polynomial with
/// positive leading coefficient and nonzero constant term.
pub fn factor_squarefree_primitive(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    // choose the good prime with the fewest modular factors
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut p = 2u64;
    let mut good = 0;
    let mut tried = 0;
    while good < 5 && tried < 400 {
        p = modp::next_prime(p);
        tried += 1;
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modp::from_bigints(f, p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        good += 1;
        let facs = modp::factor_squarefree(&modp::monic(&fp, p), p, 0x5eed);
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, facs) = best.expect("a good prime exists for a squarefree polynomial");

    // coefficient bound for lc * (any factor)
    let sumsq: BigInt = f.iter().map(|c| c * c).sum();
    let norm2 = sumsq.sqrt() + 1;
    let bound: BigInt = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm2;
    let pb = BigInt::from(p);
    let mut steps = 0u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = multifactor_lift(f, &facs, p, steps);
    recombine(f, lifted, &modulus)
}

fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut result = Vec::new();
    let mut rem = f.clone();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        let lc = rem.last().unwrap().clone();
        let rem0 = &lc * &rem[0];
        let consts: Vec<BigInt> = lifted.iter().map(|u| u[0].clone()).collect();
        for subset in Combinations::new(lifted.len(), s) {
            let mut c = lc.clone();
            for &i in &subset {
                c = (c * &consts[i]).mod_floor(m);
            }
            let c = symmetric(&c, m);
            if c.is_zero() || !(&rem0 % &c).is_zero() {
                continue;
            }
            let mut g = vec![lc.clone()];
            for &i in &subset {
                g = modm(&zmul(&g, &lifted[i]), m);
            }
            let g: ZPoly = g.iter().map(|c| symmetric(c, m)).collect();
            let g = primitive(&g);
            if let Some(q) = zexact_div(&rem, &g) {
                result.push(g);
                rem = q;
                let mut keep = Vec::new();
                for (i, u) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(u);
                    }
                }
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if rem.len() > 1 {
        result.push(primitive(&rem));
    }
    result
}

/// Lexicographic k-subsets of 0..n.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
pub fn zpoly(v: &[i64]) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}
