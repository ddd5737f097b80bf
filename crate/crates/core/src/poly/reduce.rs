//! Images of polynomials under reduction modulo degree-one primes of the
//! coefficient field, used as cheap certificates of coprimality.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modp::{self, Fp};
use super::UniPoly;
use crate::arith::Field;

/// The prime p together with the image of the generator in F_p.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeImage {
    pub p: u64,
    pub root: u64,
}

const FIRST_PRIME: u64 = 1 << 28;

fn rational_mod(c: &BigRational, p: u64) -> Option<u64> {
    let d = modp::reduce_big(c.denom(), p);
    if d == 0 {
        return None;
    }
    Some(modp::reduce_big(c.numer(), p) * modp::inv(d, p) % p)
}

fn find_images(k: &Field, count: usize) -> Vec<PrimeImage> {
    let m = k.minpoly_coeffs();
    let mut out = Vec::new();
    let mut p = FIRST_PRIME;
    while out.len() < count {
        p = modp::next_prime(p);
        let mp: Option<Fp> = m.iter().map(|c| rational_mod(c, p)).collect();
        let Some(mut mp) = mp else { continue };
        modp::trim(&mut mp);
        if mp.len() != m.len() || !modp::is_squarefree(&mp, p) {
            continue;
        }
        let root = modp::factor_squarefree(&modp::monic(&mp, p), p, 0x1dea)
            .into_iter()
            .find(|g| g.len() == 2)
            .map(|g| (p - g[0]) % p);
        if let Some(root) = root {
            out.push(PrimeImage { p, root });
        }
    }
    out
}

/// A few degree-one primes of `k`, cached per field.
pub(crate) fn degree_one_primes(k: &Field) -> Vec<PrimeImage> {
    if k.is_rationals() {
        let mut out = Vec::new();
        let mut p = FIRST_PRIME;
        for _ in 0..3 {
            p = modp::next_prime(p);
            out.push(PrimeImage { p, root: 0 });
        }
        return out;
    }
    static CACHE: OnceLock<Mutex<HashMap<Vec<BigRational>, Vec<PrimeImage>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = k.minpoly_coeffs().to_vec();
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = find_images(k, 3);
    cache.lock().unwrap().insert(key, v.clone());
    v
}

/// Image of f in F_p[x], or None when a denominator vanishes mod p.
pub(crate) fn reduce(f: &UniPoly, pi: PrimeImage) -> Option<Fp> {
    let p = pi.p;
    let mut out = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        let mut acc = 0u64;
        for q in c.coeffs().iter().rev() {
            acc = (acc * pi.root + rational_mod(q, p)?) % p;
        }
        out.push(acc);
    }
    modp::trim(&mut out);
    Some(out)
}

/// True when some prime certifies gcd(a, b) = 1: both images keep their
/// degree and are coprime mod p. False means "unknown".
pub(crate) fn certainly_coprime(a: &UniPoly, b: &UniPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    for pi in degree_one_primes(a.field()) {
        let (Some(ap), Some(bp)) = (reduce(a, pi), reduce(b, pi)) else {
            continue;
        };
        if ap.len() != a.coeffs().len() || bp.len() != b.coeffs().len() {
            continue;
        }
        if modp::gcd(&ap, &bp, pi.p).len() == 1 {
            return true;
        }
    }
    false
}

type SplitPrimes = Vec<(u64, Vec<u64>)>;

/// Primes splitting completely in `k`, with all images of the generator.
fn split_primes(k: &Field, n: usize) -> Vec<(u64, Vec<u64>)> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<BigRational>, SplitPrimes>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = k.minpoly_coeffs().to_vec();
    let mut guard = cache.lock().unwrap();
    let list = guard.entry(key).or_default();
    let m = k.minpoly_coeffs();
    let d = k.degree();
    let mut p = list.last().map_or(FIRST_PRIME, |(p, _)| *p);
    while list.len() < n {
        p = modp::next_prime(p);
        let mp: Option<Fp> = m.iter().map(|c| rational_mod(c, p)).collect();
        let Some(mut mp) = mp else { continue };
        modp::trim(&mut mp);
        if mp.len() != m.len() || !modp::is_squarefree(&mp, p) {
            continue;
        }
        let roots: Vec<u64> = if d == 1 {
            vec![0]
        } else {
            let facs = modp::factor_squarefree(&modp::monic(&mp, p), p, 0x5b1d);
            if facs.iter().any(|g| g.len() != 2) {
                continue;
            }
            facs.iter().map(|g| (p - g[0]) % p).collect()
        };
        list.push((p, roots));
    }
    list[..n].to_vec()
}

/// Inverse of the Vandermonde matrix V[j][i] = r_j^i mod p.
fn vandermonde_inverse(roots: &[u64], p: u64) -> Vec<Vec<u64>> {
    let d = roots.len();
    let mut a: Vec<Vec<u64>> = roots
        .iter()
        .enumerate()
        .map(|(j, &r)| {
            let mut row: Vec<u64> = (0..d).map(|i| modp::powmod(r, i as u64, p)).collect();
            row.extend((0..d).map(|i| u64::from(i == j)));
            row
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| a[r][col] != 0).expect("distinct roots");
        a.swap(col, piv);
        let iv = modp::inv(a[col][col], p);
        for v in a[col].iter_mut() {
            *v = *v * iv % p;
        }
        for r in 0..d {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
    }
    a.into_iter().map(|row| row[d..].to_vec()).collect()
}

/// r/s ≡ u (mod m) with |r|, |s| <= sqrt(m/2).
fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Monic gcd by reduction modulo primes splitting completely in the field,
/// Chinese remaindering and rational reconstruction. The result is checked
/// by exact division; None if no answer is certified within the prime budget.
pub(crate) fn modular_gcd(a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let k = a.field().clone();
    let d = k.degree();
    let mut best_deg = a.degree().min(b.degree()) + 1;
    // per coefficient position and basis index: residue mod `modulus`
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut used = 0;
    let mut next_check = 1;
    for (p, roots) in split_primes(&k, 64).into_iter().chain(std::iter::from_fn({
        let k = k.clone();
        let mut n = 64;
        move || {
            n += 1;
            (n <= 256).then(|| split_primes(&k, n).pop().unwrap())
        }
    })) {
        let mut images = Vec::with_capacity(d);
        let mut ok = true;
        for &r in &roots {
            let pi = PrimeImage { p, root: r };
            let (Some(ap), Some(bp)) = (reduce(a, pi), reduce(b, pi)) else {
                ok = false;
                break;
            };
            if ap.len() != a.coeffs().len() || bp.len() != b.coeffs().len() {
                ok = false;
                break;
            }
            images.push(modp::gcd(&ap, &bp, p));
        }
        if !ok {
            continue;
        }
        let gdeg = images[0].len() - 1;
        if images.iter().any(|g| g.len() - 1 != gdeg) || gdeg > best_deg {
            continue;
        }
        if gdeg == 0 {
            return Some(UniPoly::one(&k));
        }
        if gdeg < best_deg {
            best_deg = gdeg;
            acc = vec![vec![BigInt::zero(); d]; gdeg + 1];
            modulus = BigInt::one();
            used = 0;
            next_check = 1;
        }
        let vinv = vandermonde_inverse(&roots, p);
        let pb = BigInt::from(p);
        let inv_m = BigInt::from(modp::inv(modp::reduce_big(&modulus, p), p));
        for (i, slot) in acc.iter_mut().enumerate() {
            for (e, cur) in slot.iter_mut().enumerate() {
                let mut v = 0u64;
                for (j, g) in images.iter().enumerate() {
                    v = (v + vinv[e][j] * g[i]) % p;
                }
                // CRT: cur + modulus * ((v - cur) / modulus mod p)
                let diff = (BigInt::from(v) - &*cur).mod_floor(&pb);
                let t = (diff * &inv_m).mod_floor(&pb);
                *cur = &*cur + &modulus * t;
            }
        }
        modulus *= &pb;
        used += 1;
        if used < next_check {
            continue;
        }
        next_check = used * 2;
        let coeffs: Option<Vec<_>> = acc
            .iter()
            .map(|slot| {
                let qs: Option<Vec<BigRational>> = slot.iter().map(|u| rational_reconstruct(u, &modulus)).collect();
                qs.map(|qs| k.element(qs))
            })
            .collect();
        let Some(coeffs) = coeffs else { continue };
        let g = UniPoly::new(&k, coeffs);
        if g.degree() == best_deg && g.divides(a) && g.divides(b) {
            return Some(g);
        }
    }
    None
}
