use std::borrow::Cow;
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Ring};

/// Bounded cochain complex of finitely generated free modules,
/// `d^k: A^k -> A^(k+1)`.
///
/// Stored densely from `min_degree`; leading and trailing zero terms are
/// trimmed so that equal complexes compare equal. The zero complex has no
/// terms and `min_degree == 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    min_degree: i64,
    ranks: Vec<usize>,
    differentials: Vec<ExactMatrix>,
    twist_weight: i64,
}

/// First failure found by [`ChainComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: i64,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}: {}", self.degree, self.message)
    }
}

impl ChainComplex {
    /// Builds a complex from `d^k` for `k = min_degree .. min_degree + ranks.len() - 2`
    /// and checks `d o d = 0`.
    pub fn new(ring: Ring, min_degree: i64, ranks: Vec<usize>, differentials: Vec<ExactMatrix>) -> Result<Self> {
        let c = Self::from_raw(ring, min_degree, ranks, differentials, 0)?;
        if let Err(v) = c.validate() {
            return Err(Error::InvalidComplex { degree: v.degree, message: v.message });
        }
        Ok(c)
    }

    /// Like [`ChainComplex::new`] but only checks that the shapes fit; the
    /// result may violate `d o d = 0` (see [`ChainComplex::validate`]).
    pub fn from_raw(
        ring: Ring,
        min_degree: i64,
        ranks: Vec<usize>,
        differentials: Vec<ExactMatrix>,
        twist_weight: i64,
    ) -> Result<Self> {
        let expected = ranks.len().saturating_sub(1);
        if differentials.len() != expected {
            return Err(Error::InvalidComplex {
                degree: min_degree,
                message: format!("{} terms need {expected} differentials, got {}", ranks.len(), differentials.len()),
            });
        }
        for (i, d) in differentials.iter().enumerate() {
            let k = min_degree + i as i64;
            if d.shape() != (ranks[i + 1], ranks[i]) {
                return Err(Error::InvalidComplex {
                    degree: k,
                    message: format!("differential is {:?}, expected {:?}", d.shape(), (ranks[i + 1], ranks[i])),
                });
            }
            if d.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), d.ring().to_string()));
            }
        }
        Ok(Self::trimmed(ring, min_degree, ranks, differentials, twist_weight))
    }

    pub(crate) fn trimmed(
        ring: Ring,
        mut min_degree: i64,
        mut ranks: Vec<usize>,
        mut differentials: Vec<ExactMatrix>,
        twist_weight: i64,
    ) -> Self {
        while ranks.last() == Some(&0) {
            ranks.pop();
            differentials.pop();
        }
        let lead = ranks.iter().take_while(|&&r| r == 0).count();
        if lead > 0 {
            ranks.drain(..lead);
            differentials.drain(..lead.min(differentials.len()));
            min_degree += lead as i64;
        }
        if ranks.is_empty() {
            min_degree = 0;
            differentials.clear();
        }
        ChainComplex { ring, min_degree, ranks, differentials, twist_weight }
    }

    pub fn zero(ring: Ring) -> Self {
        ChainComplex { ring, min_degree: 0, ranks: Vec::new(), differentials: Vec::new(), twist_weight: 0 }
    }

    /// `R^rank` placed in a single degree.
    pub fn concentrated(ring: Ring, degree: i64, rank: usize) -> Self {
        Self::trimmed(ring, degree, vec![rank], Vec::new(), 0)
    }

    /// The two-term complex `d: R^cols -> R^rows` in degrees `degree, degree + 1`.
    pub fn two_term(degree: i64, d: ExactMatrix) -> Self {
        let ring = d.ring();
        Self::trimmed(ring, degree, vec![d.cols(), d.rows()], vec![d], 0)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    /// Degrees with nonzero terms (empty for the zero complex).
    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[ExactMatrix] {
        &self.differentials
    }

    pub fn twist_weight(&self) -> i64 {
        self.twist_weight
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn rank(&self, k: i64) -> usize {
        self.index(k).map_or(0, |i| self.ranks[i])
    }

    fn index(&self, k: i64) -> Option<usize> {
        let i = k.checked_sub(self.min_degree)?;
        (i >= 0 && (i as usize) < self.ranks.len()).then_some(i as usize)
    }

    /// `d^k: A^k -> A^(k+1)`, a zero matrix of the right shape outside the
    /// stored range.
    pub fn d(&self, k: i64) -> Cow<'_, ExactMatrix> {
        match self.index(k) {
            Some(i) if i < self.differentials.len() => Cow::Borrowed(&self.differentials[i]),
            _ => Cow::Owned(ExactMatrix::zeros(self.ring, self.rank(k + 1), self.rank(k))),
        }
    }

    /// Confirms shapes and `d^(k+1) o d^k = 0`; reports the first failing degree.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (i, d) in self.differentials.iter().enumerate() {
            let k = self.min_degree + i as i64;
            if d.shape() != (self.rank(k + 1), self.rank(k)) {
                return Err(Violation { degree: k, message: format!("differential has shape {:?}", d.shape()) });
            }
        }
        for k in self.degrees() {
            if !(&*self.d(k + 1) * &*self.d(k)).is_zero() {
                return Err(Violation { degree: k, message: "d^(k+1) o d^k is not zero".to_string() });
            }
        }
        Ok(())
    }

    /// `(A[m])^k = A^(k+m)` with differential `(-1)^m d`.
    pub fn shift(&self, m: i64) -> ChainComplex {
        let differentials =
            if m % 2 == 0 { self.differentials.clone() } else { self.differentials.iter().map(|d| -d).collect() };
        let min_degree = if self.is_zero() { 0 } else { self.min_degree - m };
        ChainComplex {
            ring: self.ring,
            min_degree,
            ranks: self.ranks.clone(),
            differentials,
            twist_weight: self.twist_weight,
        }
    }

    /// Formal twist `A(w)`: same terms, weight increased by `w`.
    pub fn twist(&self, w: i64) -> ChainComplex {
        ChainComplex { twist_weight: self.twist_weight + w, ..self.clone() }
    }

    /// Same complex with twist weight reset to zero.
    pub fn untwisted(&self) -> ChainComplex {
        ChainComplex { twist_weight: 0, ..self.clone() }
    }

    /// Degreewise direct sum with block diagonal differentials.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        let ranks = (lo..=hi).map(|k| self.rank(k) + other.rank(k)).collect();
        let differentials = (lo..hi).map(|k| self.d(k).block_diag(&other.d(k))).collect();
        Ok(Self::trimmed(self.ring, lo, ranks, differentials, self.twist_weight))
    }
}

impl fmt::Display for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for k in self.degrees() {
            write!(f, "[{k}] R^{}", self.rank(k))?;
            if k < self.max_degree() {
                write!(f, " --{}--> ", self.d(k))?;
            }
        }
        Ok(())
    }
}
