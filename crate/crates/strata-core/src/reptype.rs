//! Representation types: unordered multisets of (dimension, multiplicity)
//! pairs labeling conjugation strata, with the dimension formulas attached to
//! them.

use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepTypeError {
    #[error("pair {index} has a zero component; dimensions and multiplicities must be positive")]
    ZeroComponent { index: usize },
    #[error("a representation type needs at least one pair")]
    Empty,
    #[error("type has total dimension {got}, context expects {expected}")]
    DimensionMismatch { expected: u64, got: u64 },
    #[error("stratum dimensions need at least two matrices, got r = {r}")]
    RankTooSmall { r: u32 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRepTypeError {
    #[error("expected '{expected}' at byte {at}")]
    Expected { expected: char, at: usize },
    #[error("invalid number at byte {at}")]
    Number { at: usize },
    #[error("trailing input at byte {at}")]
    Trailing { at: usize },
    #[error(transparent)]
    Invalid(#[from] RepTypeError),
}

/// Multiset of pairs (d, e) with d, e >= 1, stored canonically:
/// sorted by d descending, then e descending.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct RepType {
    pairs: Vec<(u32, u32)>,
}

impl RepType {
    /// Canonicalize a list of pairs. Rejects empty lists and zero components.
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<Self, RepTypeError> {
        if pairs.is_empty() {
            return Err(RepTypeError::Empty);
        }
        if let Some(index) = pairs.iter().position(|&(d, e)| d == 0 || e == 0) {
            return Err(RepTypeError::ZeroComponent { index });
        }
        let mut pairs = pairs;
        pairs.sort_by(|a, b| b.cmp(a));
        Ok(RepType { pairs })
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Number of pairs (written s elsewhere).
    pub fn parts(&self) -> usize {
        self.pairs.len()
    }

    /// Total dimension sum(d_i * e_i).
    pub fn total_dim(&self) -> u64 {
        self.pairs.iter().map(|&(d, e)| d as u64 * e as u64).sum()
    }

    /// sum(d_i^2), the coefficient of (r - 1) in the stratum dimension.
    pub fn sum_d_squared(&self) -> u64 {
        self.pairs.iter().map(|&(d, _)| (d as u64) * (d as u64)).sum()
    }

    /// Dimension of the stabilizer of a point with this type: sum(e_i^2).
    /// The stabilizer is a product of general linear groups of the sizes
    /// returned by [`RepType::stabilizer_factors`].
    pub fn stabilizer_dim(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| (e as u64) * (e as u64)).sum()
    }

    /// Multiplicities e_1..e_s in canonical pair order.
    pub fn stabilizer_factors(&self) -> Vec<u32> {
        self.pairs.iter().map(|&(_, e)| e).collect()
    }

    /// Swap the roles of dimension and multiplicity in every pair.
    pub fn dual(&self) -> RepType {
        RepType::new(self.pairs.iter().map(|&(d, e)| (e, d)).collect())
            .expect("dual of a valid type is valid")
    }

    /// min(d_i + e_i); always at least 2.
    pub fn m_value(&self) -> u32 {
        self.pairs.iter().map(|&(d, e)| d + e).min().expect("types are nonempty")
    }

    /// Disjoint union of the two multisets.
    pub fn concat(&self, other: &RepType) -> RepType {
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        RepType::new(pairs).expect("concat of valid types is valid")
    }

    pub fn contains_pair(&self, d: u32, e: u32) -> bool {
        self.pairs.contains(&(d, e))
    }

    /// Remove one copy of (d, e), if present.
    pub fn remove_one(&self, d: u32, e: u32) -> Option<RepType> {
        let idx = self.pairs.iter().position(|&p| p == (d, e))?;
        if self.pairs.len() == 1 {
            return None;
        }
        let mut pairs = self.pairs.clone();
        pairs.remove(idx);
        Some(RepType { pairs })
    }

    /// Dimension of the stratum labeled by this type inside the quotient for
    /// `ctx`: (r - 1) * sum(d_i^2) + s + l * r. Requires r >= 2 and total
    /// dimension n.
    pub fn stratum_dim(&self, ctx: &QuotientContext) -> Result<u64, RepTypeError> {
        if ctx.r < 2 {
            return Err(RepTypeError::RankTooSmall { r: ctx.r });
        }
        let total = self.total_dim();
        if total != ctx.n as u64 {
            return Err(RepTypeError::DimensionMismatch { expected: ctx.n as u64, got: total });
        }
        Ok((ctx.r as u64 - 1) * self.sum_d_squared()
            + self.parts() as u64
            + ctx.l as u64 * ctx.r as u64)
    }
}

/// Listing order used everywhere a set of types is printed or indexed:
/// lexicographic on the canonical pair sequence under the pair key
/// (d descending, e ascending). For a fixed total dimension this runs from
/// the principal type [(n,1)] down to [(1,n)].
impl Ord for RepType {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |&(d, e): &(u32, u32)| (std::cmp::Reverse(d), e);
        self.pairs.iter().map(key).cmp(other.pairs.iter().map(key))
    }
}

impl PartialOrd for RepType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (d, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", d, e)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for RepType {
    type Err = ParseRepTypeError;

    /// Accepts the bracketed pair list syntax, e.g. `[(2,1),(1,1)]`, with
    /// whitespace allowed anywhere between tokens.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: Vec<(usize, char)> =
            s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut pos = 0usize;
        let at = |pos: usize| compact.get(pos).map_or_else(|| s.len(), |&(i, _)| i);
        let expect = |pos: &mut usize, want: char| -> Result<(), ParseRepTypeError> {
            match compact.get(*pos) {
                Some(&(_, c)) if c == want => {
                    *pos += 1;
                    Ok(())
                }
                _ => Err(ParseRepTypeError::Expected { expected: want, at: at(*pos) }),
            }
        };
        let number = |pos: &mut usize| -> Result<u32, ParseRepTypeError> {
            let start = *pos;
            let mut value: u64 = 0;
            while let Some(&(_, c)) = compact.get(*pos) {
                if let Some(d) = c.to_digit(10) {
                    value = value * 10 + d as u64;
                    if value > u32::MAX as u64 {
                        return Err(ParseRepTypeError::Number { at: at(start) });
                    }
                    *pos += 1;
                } else {
                    break;
                }
            }
            if *pos == start {
                return Err(ParseRepTypeError::Number { at: at(start) });
            }
            Ok(value as u32)
        };

        expect(&mut pos, '[')?;
        let mut pairs = Vec::new();
        loop {
            expect(&mut pos, '(')?;
            let d = number(&mut pos)?;
            expect(&mut pos, ',')?;
            let e = number(&mut pos)?;
            expect(&mut pos, ')')?;
            pairs.push((d, e));
            match compact.get(pos) {
                Some(&(_, ',')) => pos += 1,
                _ => break,
            }
        }
        expect(&mut pos, ']')?;
        if pos != compact.len() {
            return Err(ParseRepTypeError::Trailing { at: at(pos) });
        }
        Ok(RepType::new(pairs)?)
    }
}

/// Parameters of the ambient quotient: l extra free coordinates, matrices of
/// size n, tuples of length r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientContext {
    pub l: u32,
    pub n: u32,
    pub r: u32,
}

impl QuotientContext {
    pub fn new(l: u32, n: u32, r: u32) -> Self {
        QuotientContext { l, n, r }
    }
}
