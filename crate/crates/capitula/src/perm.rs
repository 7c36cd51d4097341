//! Permutations on `{1..degree}`, stored 0-based internally.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation of `{0, .., degree-1}` given by its image table.
///
/// The public cycle syntax is 1-based, e.g. `(1,4,7)(2,5,8)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Builds from an image table; checks bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::PointOutOfRange(v + 1, n));
            }
            if seen[v] {
                return Err(Error::BadCycles(
                    format!("{images:?}"),
                    "not a bijection".into(),
                ));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    /// Parses a product of cycles like `(1,4,7)(2,5,8)` on `{1..degree}`.
    ///
    /// Cycles are applied left to right, matching [`Perm::mul`]. The empty
    /// string and `()` denote the identity.
    pub fn parse(degree: usize, s: &str) -> Result<Self> {
        let mut result = Perm::identity(degree);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::BadCycles(s.to_string(), msg.to_string());
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
            let body = &rest[1..close];
            rest = &rest[close + 1..];
            if body.is_empty() {
                continue;
            }
            let mut pts = Vec::new();
            for tok in body.split(',') {
                let v: usize = tok.parse().map_err(|_| bad("bad integer"))?;
                if v == 0 || v > degree {
                    return Err(Error::PointOutOfRange(v, degree));
                }
                pts.push(v - 1);
            }
            let mut dedup = pts.clone();
            dedup.sort_unstable();
            dedup.dedup();
            if dedup.len() != pts.len() {
                return Err(bad("repeated point in cycle"));
            }
            let mut cycle = Perm::identity(degree);
            for w in 0..pts.len() {
                cycle.images[pts[w]] = pts[(w + 1) % pts.len()];
            }
            result = result.mul(&cycle);
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `(self * other)(x) = other(self(x))`: apply `self` first.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    pub fn inv(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn order(&self) -> usize {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// `self^-1 * other^-1 * self * other`.
    pub fn comm(&self, other: &Perm) -> Perm {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }

    /// `other^-1 * self * other`.
    pub fn conj(&self, other: &Perm) -> Perm {
        other.inv().mul(self).mul(other)
    }

    /// Cycle notation, 1-based; identity prints as `()`.
    pub fn cycles(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            loop {
                seen[p] = true;
                out.push_str(&(p + 1).to_string());
                p = self.images[p];
                if p == start {
                    break;
                }
                out.push(',');
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles())
    }
}
