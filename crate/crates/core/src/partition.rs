//! Integer partitions: normalization, multiplicities, dominance order,
//! conjugation and the almost-rectangular decomposition number.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition stored with its parts in weakly decreasing order.
///
/// The empty partition (of 0) exists so that U-processes can terminate on it,
/// but [`Partition::from_parts`] never produces it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    mults: BTreeMap<usize, usize>,
}

impl Partition {
    pub fn from_parts<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut parts = Vec::new();
        for x in raw {
            if x < 1 {
                return Err(Error::NonPositivePart(x));
            }
            parts.push(x as usize);
        }
        if parts.is_empty() {
            return Err(Error::EmptyPartition);
        }
        Ok(Self::from_positive(parts))
    }

    /// Builds a partition from parts already known to be positive. Zero parts
    /// are dropped; the result may be empty.
    pub fn from_positive(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut mults = BTreeMap::new();
        for &p in &parts {
            *mults.entry(p).or_insert(0) += 1;
        }
        Partition { parts, mults }
    }

    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            mults: BTreeMap::new(),
        }
    }

    /// Builds a partition from `(part value, multiplicity)` pairs.
    pub fn from_multiplicities<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut parts = Vec::new();
        for (p, m) in pairs {
            parts.extend(std::iter::repeat_n(p, m));
        }
        Self::from_positive(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of `p`; zero for any value that is not a part.
    pub fn mult(&self, p: usize) -> usize {
        self.mults.get(&p).copied().unwrap_or(0)
    }

    pub fn max_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn min_part(&self) -> usize {
        self.parts.last().copied().unwrap_or(0)
    }

    /// Distinct part values in increasing order.
    pub fn distinct_parts(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.mults.keys().copied()
    }

    /// `(value, multiplicity)` pairs in increasing order of value.
    pub fn multiplicities(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mults.iter().map(|(&p, &m)| (p, m))
    }

    fn prefix_sums(&self, len: usize) -> Vec<usize> {
        let mut acc = 0;
        (0..len)
            .map(|i| {
                acc += self.parts.get(i).copied().unwrap_or(0);
                acc
            })
            .collect()
    }

    /// `self ≤ other` in dominance order. Shorter partitions are padded with
    /// zeros.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::UnequalWeight {
                left: self.n(),
                right: other.n(),
            });
        }
        let len = self.len().max(other.len());
        let mine = self.prefix_sums(len);
        let theirs = other.prefix_sums(len);
        Ok(mine.iter().zip(&theirs).all(|(a, b)| a <= b))
    }

    pub fn is_almost_rectangular(&self) -> bool {
        self.max_part() - self.min_part() <= 1
    }

    /// Minimum number of almost rectangular subpartitions whose union is
    /// `self`.
    ///
    /// A block may hold every copy of the values it uses, so only the set of
    /// distinct values matters: the answer is the least number of windows
    /// `{v, v + 1}` covering it. Scanning upward and opening a window at the
    /// smallest uncovered value is optimal.
    pub fn r(&self) -> usize {
        let mut blocks = 0;
        let mut covered_up_to = 0;
        for p in self.distinct_parts() {
            if blocks == 0 || p > covered_up_to {
                blocks += 1;
                covered_up_to = p + 1;
            }
        }
        blocks
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = (1..=self.max_part())
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition::from_positive(cols)
    }
}

impl fmt::Display for Partition {
    /// Exponent notation, e.g. `(5,4,3^2,2,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (p, m)) in self.mults.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{m}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{:?}", self.parts)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts in any order, e.g. `"5,4,3,3,2,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let raw = trimmed
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|e| parse_err(format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_parts(raw)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(deserializer)?;
        if raw.is_empty() {
            return Ok(Partition::empty());
        }
        Partition::from_parts(raw).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse lexicographic order, starting at `(n)`.
pub fn partitions_of(n: usize) -> PartitionIter {
    PartitionIter {
        next: (n > 0).then(|| vec![n]),
    }
}

pub struct PartitionIter {
    next: Option<Vec<usize>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor: strip trailing 1s, decrement the last part > 1, then
        // refill greedily with copies of the new value.
        let mut parts = current.clone();
        let mut ones = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        if let Some(last) = parts.pop() {
            let v = last - 1;
            let mut rest = ones + 1;
            parts.push(v);
            while rest > 0 {
                let take = rest.min(v);
                parts.push(take);
                rest -= take;
            }
            self.next = Some(parts);
        }
        Some(Partition::from_positive(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::from_parts(parts.iter().copied()).unwrap()
    }

    #[test]
    fn from_parts_normalizes() {
        assert_eq!(p(&[3, 1, 2]).parts(), &[3, 2, 1]);
        assert_eq!(p(&[5, 4, 3, 3, 2, 1]).parts(), &[5, 4, 3, 3, 2, 1]);
        assert_eq!(p(&[5, 4, 3, 3, 2, 1]).to_string(), "(5,4,3^2,2,1)");
        assert_eq!(p(&[1]).parts(), &[1]);
        assert_eq!(p(&[3, 1, 2]).n(), 6);
    }

    #[test]
    fn from_parts_errors() {
        assert_eq!(Partition::from_parts(vec![]), Err(Error::EmptyPartition));
        assert_eq!(
            Partition::from_parts(vec![2, 0, 1]),
            Err(Error::NonPositivePart(0))
        );
        assert_eq!(
            Partition::from_parts(vec![-3]),
            Err(Error::NonPositivePart(-3))
        );
    }

    #[test]
    fn parse_text_syntax() {
        let q: Partition = "1, 3,2".parse().unwrap();
        assert_eq!(q.parts(), &[3, 2, 1]);
        assert!(matches!(
            "3,x".parse::<Partition>(),
            Err(Error::Parse { .. })
        ));
        assert_eq!("".parse::<Partition>(), Err(Error::EmptyPartition));
        assert_eq!("2,0".parse::<Partition>(), Err(Error::NonPositivePart(0)));
    }

    #[test]
    fn multiplicity_of_absent_part_is_zero() {
        let q = p(&[6, 6, 5, 4, 3, 2, 2, 1, 1]);
        assert_eq!(q.mult(6), 2);
        assert_eq!(q.mult(7), 0);
        assert_eq!(q.mult(100), 0);
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[1, 1, 1, 1]).dominance_leq(&p(&[4])).unwrap());
        assert!(!p(&[4]).dominance_leq(&p(&[1, 1, 1, 1])).unwrap());
        assert!(p(&[12, 5, 1]).dominance_leq(&p(&[12, 5, 1])).unwrap());
        assert_eq!(
            p(&[2]).dominance_leq(&p(&[3])),
            Err(Error::UnequalWeight { left: 2, right: 3 })
        );
    }

    #[test]
    fn almost_rectangular_examples() {
        assert!(p(&[3, 3, 2, 2, 2]).is_almost_rectangular());
        assert!(!p(&[7, 2, 2, 1]).is_almost_rectangular());
        assert!(p(&[5]).is_almost_rectangular());
    }

    #[test]
    fn r_examples() {
        assert_eq!(p(&[3, 3, 2, 2, 2]).r(), 1);
        assert_eq!(p(&[7, 2, 2, 1]).r(), 2);
        assert_eq!(p(&[5, 3, 1]).r(), 3);
        // runs of consecutive values longer than two need several blocks
        assert_eq!(p(&[3, 2, 1]).r(), 2);
        assert_eq!(p(&[4, 3, 2, 1]).r(), 2);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[4, 2, 2, 1, 1]).conjugate().parts(), &[5, 3, 1, 1]);
        assert_eq!(p(&[6]).conjugate().parts(), &[1; 6]);
    }

    #[test]
    fn enumeration_starts_and_ends_right() {
        let all: Vec<_> = partitions_of(5).collect();
        assert_eq!(all.first().unwrap().parts(), &[5]);
        assert_eq!(all.last().unwrap().parts(), &[1, 1, 1, 1, 1]);
        assert_eq!(all.len(), 7);
        assert_eq!(partitions_of(0).count(), 0);
    }

    #[test]
    fn serde_is_descending_array() {
        let q = p(&[1, 5, 3, 3]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[5,3,3,1]");
        let back: Partition = serde_json::from_str("[1,3,5,3]").unwrap();
        assert_eq!(back, q);
    }
}
