//! Polynomials over F_p for word-size odd primes p < 2^31.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Fp = Vec<u64>;

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

pub fn trim(v: &mut Fp) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn reduce_big(c: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let r = ((c % &pb) + &pb) % &pb;
    r.to_u64().unwrap()
}

pub fn from_bigints(v: &[BigInt], p: u64) -> Fp {
    let mut out: Fp = v.iter().map(|c| reduce_big(c, p)).collect();
    trim(&mut out);
    out
}

pub fn deg(v: &Fp) -> usize {
    v.len().saturating_sub(1)
}

pub fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out: Fp = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &Fp, c: u64, p: u64) -> Fp {
    let mut out: Fp = a.iter().map(|&x| x * c % p).collect();
    trim(&mut out);
    out
}

pub fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let db = b.len() - 1;
    let mut r = a.clone();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let li = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for k in (db..r.len()).rev() {
        if r[k] == 0 {
            continue;
        }
        let c = r[k] * li % p;
        for j in 0..=db {
            r[k - db + j] = (r[k - db + j] + p - c * b[j] % p) % p;
        }
        q[k - db] = c;
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

pub fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv(l, p), p),
    }
}

pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// (g, s, t) with s a + t b = g monic.
pub fn xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let l = inv(*r0.last().unwrap(), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(a: &Fp, p: u64) -> Fp {
    let mut out: Fp = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    trim(&mut out);
    out
}

pub fn is_squarefree(a: &Fp, p: u64) -> bool {
    gcd(a, &derivative(a, p), p).len() == 1
}

/// base^e mod m for a big exponent.
pub fn powmod_poly(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    acc = rem(&acc, m, p);
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), m, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = rem(&x, &f, p);
    let pb = BigUint::from(p);
    let mut d = 0;
    while deg(&f) >= 2 * (d + 1) {
        d += 1;
        h = powmod_poly(&h, &pb, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if f.len() > 1 {
        let d = deg(&f);
        out.push((f, d));
    }
    out
}

/// Equal-degree splitting of a product of distinct degree-d monic irreducibles.
pub fn edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = deg(f);
    if n == d {
        out.push(f.clone());
        return;
    }
    let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) >> 1;
    loop {
        let mut a: Fp = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = sub(&powmod_poly(&a, &e, f, p), &vec![1], p);
        let g = gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem(f, &g, p).0;
            edf(&g, d, p, rng, out);
            edf(&monic(&h, p), d, p, rng, out);
            return;
        }
    }
}

/// Complete factorization of a monic squarefree polynomial over F_p.
pub fn factor_squarefree(f: &Fp, p: u64, seed: u64) -> Vec<Fp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut out = Vec::new();
    for (g, d) in ddf(f, p) {
        edf(&g, d, p, &mut rng, &mut out);
    }
    out.sort();
    out
}

/// Degrees of the irreducible factors of a squarefree polynomial (not
/// necessarily monic) over F_p.
pub fn factor_degrees(f: &Fp, p: u64) -> Vec<usize> {
    let m = monic(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&m, p) {
        for _ in 0..deg(&g) / d {
            out.push(d);
        }
    }
    out.sort();
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    // deterministic Miller-Rabin for n < 3.3e24
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = {
            let (mut acc, mut base, mut e) = (1u64, a % n, d);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mm(acc, base);
                }
                base = mm(base, base);
                e >>= 1;
            }
            acc
        };
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mm(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

pub fn to_bigints(v: &Fp) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}
