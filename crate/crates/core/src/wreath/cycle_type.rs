//! Partitions used as cycle types.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::WreathError;

/// A partition, parts sorted in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct CycleType(Vec<u64>);

impl CycleType {
    pub fn new(mut parts: Vec<u64>) -> Result<Self, WreathError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(WreathError::InvalidType("parts must be positive and nonempty".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType(parts))
    }

    /// The identity type `1^n`.
    pub fn identity(n: u64) -> Self {
        CycleType(vec![1; n as usize])
    }

    pub fn full_cycle(n: u64) -> Self {
        CycleType(vec![n])
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn order(&self) -> u64 {
        self.0.iter().fold(1, |acc, &x| num_integer::lcm(acc, x))
    }

    pub fn count_of(&self, len: u64) -> usize {
        self.0.iter().filter(|&&x| x == len).count()
    }

    pub fn is_full_cycle(&self) -> bool {
        self.0.len() == 1
    }

    /// Run-length pairs `(part, count)` in descending part order.
    pub fn runs(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((v, c)) if *v == x => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }
}

impl TryFrom<Vec<u64>> for CycleType {
    type Error = WreathError;
    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        CycleType::new(v)
    }
}

impl From<CycleType> for Vec<u64> {
    fn from(c: CycleType) -> Self {
        c.0
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .runs()
            .into_iter()
            .map(|(v, c)| if c == 1 { v.to_string() } else { format!("{v}^{c}") })
            .collect();
        write!(f, "({})", items.join(","))
    }
}

/// Parses `3,3,1x43` (comma list, `kxm` or `k^m` meaning `k` repeated `m` times),
/// optionally wrapped in parentheses as `Display` prints it.
impl FromStr for CycleType {
    type Err = WreathError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WreathError::InvalidType(format!("cannot parse cycle type {s:?}"));
        let body = s.trim();
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let mut parts = Vec::new();
        for item in body.split(',') {
            let item = item.trim();
            let (v, c) = match item.split_once(['x', 'X', '^']) {
                Some((v, c)) => (v.trim(), c.trim()),
                None => (item, "1"),
            };
            let v: u64 = v.parse().map_err(|_| bad())?;
            let c: usize = c.parse().map_err(|_| bad())?;
            if c > 1_000_000 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(v, c));
        }
        CycleType::new(parts)
    }
}
