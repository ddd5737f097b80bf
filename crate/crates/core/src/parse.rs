//! Text grammar for rationals, field elements and polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*')? factor)*
//! factor := ('-' | '+') factor | atom ('^' integer)?
//! atom   := number ('/' number)? | identifier | '(' expr ')'
//! ```
//! Identifiers are the polynomial variables and the field generator.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::rational::parse_rational;
use crate::arith::{Field, NFElement};
use crate::bipoly::BiPoly;
use crate::error::{AlgebraError, Result};
use crate::poly::UniPoly;

/// Sparse polynomial in (x, y) over a field, used during parsing.
#[derive(Clone)]
struct Sparse {
    field: Field,
    terms: BTreeMap<(usize, usize), NFElement>,
}

impl Sparse {
    fn constant(c: NFElement) -> Sparse {
        let field = c.field().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Sparse { field, terms }
    }

    fn var(field: &Field, slot: usize) -> Sparse {
        let mut terms = BTreeMap::new();
        let key = if slot == 0 { (1, 0) } else { (0, 1) };
        terms.insert(key, field.one());
        Sparse {
            field: field.clone(),
            terms,
        }
    }

    fn add(&self, o: &Sparse, sign: bool) -> Sparse {
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            let e = terms.entry(*k).or_insert_with(|| self.field.zero());
            if sign {
                *e += v;
            } else {
                *e -= v;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Sparse {
            field: self.field.clone(),
            terms,
        }
    }

    fn mul(&self, o: &Sparse) -> Sparse {
        let mut terms: BTreeMap<(usize, usize), NFElement> = BTreeMap::new();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &o.terms {
                let e = terms.entry((i + k, j + l)).or_insert_with(|| self.field.zero());
                *e += &(a * b);
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Sparse {
            field: self.field.clone(),
            terms,
        }
    }

    fn pow(&self, e: u32) -> Sparse {
        let mut acc = Sparse::constant(self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a Field,
    vars: [&'a [&'a str]; 2],
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> AlgebraError {
        let s: String = self.chars.iter().collect();
        AlgebraError::Parse(format!("{msg} at position {} in {s:?}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t, true);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t, false);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(c) if c == '(' || c.is_alphanumeric() || c == '_' => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                let f = self.factor()?;
                Ok(Sparse::constant(self.field.zero()).add(&f, false))
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let a = self.atom()?;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.skip_ws();
                    let start = self.pos;
                    while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let s: String = self.chars[start..self.pos].iter().collect();
                    let e: u32 = s.parse().map_err(|_| self.err("expected exponent"))?;
                    Ok(a.pow(e))
                } else {
                    Ok(a)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let mut s: String = self.chars[start..self.pos].iter().collect();
                // a fraction binds tighter than multiplication: 1/2*x
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let ds = self.pos;
                    while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if ds == self.pos {
                        return Err(self.err("expected denominator"));
                    }
                    let d: String = self.chars[ds..self.pos].iter().collect();
                    s = format!("{s}/{d}");
                }
                let q: BigRational = parse_rational(&s)?;
                Ok(Sparse::constant(self.field.from_rational(q)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let id: String = self.chars[start..self.pos].iter().collect();
                for slot in 0..2 {
                    if self.vars[slot].contains(&id.as_str()) {
                        return Ok(Sparse::var(self.field, slot));
                    }
                }
                if self.field.degree() > 1 && id == self.field.generator_name() {
                    return Ok(Sparse::constant(self.field.generator()));
                }
                Err(AlgebraError::Parse(format!("unknown symbol {id:?}")))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

fn parse_sparse(s: &str, field: &Field, xs: &[&str], ys: &[&str]) -> Result<Sparse> {
    let mut p = Parser {
        chars: s.chars().collect(),
        pos: 0,
        field,
        vars: [xs, ys],
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a field element such as `"3*a + 1/2"`.
pub fn parse_element(s: &str, field: &Field) -> Result<NFElement> {
    let e = parse_sparse(s, field, &[], &[])?;
    Ok(e.terms.get(&(0, 0)).cloned().unwrap_or_else(|| field.zero()))
}

/// Parses a univariate polynomial in `var`.
pub fn parse_poly(s: &str, field: &Field, var: &str) -> Result<UniPoly> {
    let e = parse_sparse(s, field, &[var], &[])?;
    let n = e.terms.keys().map(|k| k.0).max().unwrap_or(0);
    let mut v = vec![field.zero(); n + 1];
    for ((i, _), c) in e.terms {
        v[i] = c;
    }
    Ok(UniPoly::new(field, v))
}

/// Parses a univariate polynomial in `x` (or `X`).
pub fn parse_uni(s: &str, field: &Field) -> Result<UniPoly> {
    let e = parse_sparse(s, field, &["x", "X"], &[])?;
    let n = e.terms.keys().map(|k| k.0).max().unwrap_or(0);
    let mut v = vec![field.zero(); n + 1];
    for ((i, _), c) in e.terms {
        v[i] = c;
    }
    Ok(UniPoly::new(field, v))
}

/// Parses a bivariate polynomial in `x`/`X` and `y`/`Y`.
pub fn parse_bi(s: &str, field: &Field) -> Result<BiPoly> {
    let e = parse_sparse(s, field, &["x", "X"], &["y", "Y"])?;
    let dx = e.terms.keys().map(|k| k.0).max().unwrap_or(0);
    let dy = e.terms.keys().map(|k| k.1).max().unwrap_or(0);
    let mut rows = vec![vec![field.zero(); dy + 1]; dx + 1];
    for ((i, j), c) in e.terms {
        rows[i][j] = c;
    }
    Ok(BiPoly::new(
        field,
        rows.into_iter().map(|r| UniPoly::new(field, r)).collect(),
    ))
}

/// Parses a rational number that must not involve the generator.
pub fn parse_rational_expr(s: &str) -> Result<BigRational> {
    let q = Field::rationals();
    let e = parse_element(s, &q)?;
    Ok(e.as_rational().unwrap_or_else(BigRational::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, rat2};

    #[test]
    fn univariate() {
        let q = Field::rationals();
        assert_eq!(parse_uni("x^4 - 4*x^2 + 2", &q).unwrap(), UniPoly::q(&[2, 0, -4, 0, 1]));
        assert_eq!(parse_uni("2(x-1)^3+5", &q).unwrap(), UniPoly::q(&[3, 6, -6, 2]));
        assert_eq!(
            parse_uni("-1/4x^4", &q).unwrap(),
            UniPoly::from_rationals(&q, vec![rat(0), rat(0), rat(0), rat(0), rat2(-1, 4)])
        );
        assert!(parse_uni("x^2 + z", &q).is_err());
        assert!(parse_uni("x^2 +", &q).is_err());
    }

    #[test]
    fn with_generator() {
        let k = Field::parse("a^2+a+2", "a").unwrap();
        assert_eq!(k.degree(), 2);
        let e = parse_element("3*a + 1/2", &k).unwrap();
        assert_eq!(e.display(), "3*a + 1/2");
        let p = parse_uni("x^4 - 4*a*x^2 + 2*a^2", &k).unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(p.coeff(0), parse_element("-2*a - 4", &k).unwrap());
    }

    #[test]
    fn bivariate() {
        let q = Field::rationals();
        let f = parse_bi("X^4 + 4*Y^4", &q).unwrap();
        assert_eq!(f.deg_x(), 4);
        assert_eq!(f.deg_y(), 4);
    }
}
