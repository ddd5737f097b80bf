//! Permutations of {0, ..., n-1}. Products act on the left: (a * b)(x) = a(b(x)).

use std::fmt;
use std::ops::Mul;

use crate::error::{GroupError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::Parse(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Product of the given cycles on n points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= n || used[x] {
                    return Err(GroupError::Parse(format!("bad cycle {c:?} on {n} points")));
                }
                used[x] = true;
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Perm::from_images(images)
    }

    /// Parses cycle notation such as "(0 1 2 3)(4 5)"; "()" is the identity.
    pub fn parse(n: usize, text: &str) -> Result<Perm> {
        let text = text.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| GroupError::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| GroupError::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| GroupError::Parse(format!("bad point {s:?}")))
                })
                .collect::<Result<Vec<usize>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut out = Perm::identity(self.degree());
        for _ in 0..e {
            out = self.compose(&out);
        }
        out
    }

    /// g self g^-1.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    /// [a, b] = a b a^-1 b^-1.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.compose(b).compose(&a.inverse()).compose(&b.inverse())
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_full_cycle(&self) -> bool {
        self.degree() > 0 && self.cycles().len() == 1
    }

    /// Restriction to the points of `block`, listed in order, as a
    /// permutation of 0..block.len().
    pub fn restrict(&self, block: &[usize]) -> Option<Perm> {
        let pos = |x: usize| block.iter().position(|&b| b == x);
        let images = block
            .iter()
            .map(|&b| pos(self.apply(b)))
            .collect::<Option<Vec<usize>>>()?;
        Perm::from_images(images).ok()
    }

    /// Moves place[i] to place[self(i)] and fixes every other point of 0..n.
    pub fn embed(&self, n: usize, place: &[usize]) -> Perm {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for (i, &p) in place.iter().enumerate() {
            images[p] = place[self.apply(i)] as u32;
        }
        Perm { images }
    }

    /// Disjoint union of actions: self on 0..n, other on n..n+m.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let n = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&x| x + n));
        Perm { images }
    }

    /// Lehmer rank in 0..n!; only meaningful for n <= 20.
    pub fn rank(&self) -> u64 {
        let n = self.degree();
        let mut rank = 0u64;
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&x| x < self.images[i]).count() as u64;
            rank = rank * (n - i) as u64 + smaller;
        }
        rank
    }

    pub fn unrank(n: usize, mut rank: u64) -> Perm {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = (n - i) as u64;
            digits[i] = (rank % base) as usize;
            rank /= base;
        }
        let mut avail: Vec<u32> = (0..n as u32).collect();
        let images = digits.into_iter().map(|d| avail.remove(d)).collect();
        Perm { images }
    }
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse(6, "(0 1 2 3)(4 5)").unwrap();
        assert_eq!(p.to_string(), "(0 1 2 3)(4 5)");
        assert_eq!(p.order(), 4);
        assert_eq!(p.cycle_type(), vec![2, 4]);
        assert_eq!(Perm::parse(3, "()").unwrap(), Perm::identity(3));
        assert!(Perm::parse(3, "(0 3)").is_err());
        assert!(Perm::parse(3, "(0 1)(1 2)").is_err());
    }

    #[test]
    fn left_action() {
        let a = Perm::parse(3, "(0 1)").unwrap();
        let b = Perm::parse(3, "(1 2)").unwrap();
        // (a b)(1) = a(b(1)) = a(2) = 2
        assert_eq!((&a * &b).apply(1), 2);
        assert!((&a * &a.inverse()).is_identity());
    }

    #[test]
    fn ranks() {
        for r in [0u64, 1, 77, 5039] {
            assert_eq!(Perm::unrank(7, r).rank(), r);
        }
    }
}
