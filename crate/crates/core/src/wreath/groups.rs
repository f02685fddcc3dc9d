//! Small transitive permutation groups and their cycle indices.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{CycleType, WreathError};
use crate::exactalg::intfactor::is_prime_u64;

/// Enumeration cap for `group_cycle_index`.
pub const MAX_GROUP_ORDER: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDescriptor {
    /// `x ↦ ax + b` on `F_p`.
    Agl1 { p: u64 },
    /// Regular action of `ℤ/n`.
    Cyclic { n: u64 },
    Symmetric { n: u64 },
    /// `x ↦ ax + b` on `ℤ/m` with `a` a unit.
    Holomorph { m: u64 },
    /// Generated by permutations of `0..degree` (images listed in order).
    Explicit { degree: usize, generators: Vec<Vec<usize>> },
}

impl GroupDescriptor {
    /// Checks the size bounds and, for explicit groups, permutation validity and transitivity.
    pub fn validate(&self) -> Result<(), WreathError> {
        let bad = |msg: String| Err(WreathError::InvalidGroup(msg));
        match self {
            GroupDescriptor::Agl1 { p } if !is_prime_u64(*p) || *p > 10_000 => bad(format!("AGL1 needs a prime p ≤ 10^4, got {p}")),
            GroupDescriptor::Cyclic { n } if *n == 0 || *n > 1_000_000 => bad(format!("cyclic degree {n} out of range")),
            GroupDescriptor::Symmetric { n } if *n == 0 || *n > 8 => bad(format!("symmetric degree must be in 1..=8, got {n}")),
            GroupDescriptor::Holomorph { m } if *m == 0 || *m > 64 => bad(format!("holomorph modulus must be in 1..=64, got {m}")),
            GroupDescriptor::Explicit { degree, generators } => {
                if *degree == 0 || *degree > 12 {
                    return bad(format!("explicit degree must be in 1..=12, got {degree}"));
                }
                for g in generators {
                    let mut seen = vec![false; *degree];
                    if g.len() != *degree || g.iter().any(|&x| x >= *degree || std::mem::replace(&mut seen[x], true)) {
                        return bad(format!("{g:?} is not a permutation of 0..{degree}"));
                    }
                }
                if !is_transitive(*degree, generators) {
                    return bad("explicit group is not transitive".into());
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn degree(&self) -> u64 {
        match self {
            GroupDescriptor::Agl1 { p } => *p,
            GroupDescriptor::Cyclic { n } | GroupDescriptor::Symmetric { n } => *n,
            GroupDescriptor::Holomorph { m } => *m,
            GroupDescriptor::Explicit { degree, .. } => *degree as u64,
        }
    }

    /// Group order, when it has a closed form.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupDescriptor::Agl1 { p } => Some(p * (p - 1).max(1)),
            GroupDescriptor::Cyclic { n } => Some(*n),
            GroupDescriptor::Symmetric { n } => Some((1..=*n).product()),
            GroupDescriptor::Holomorph { m } => Some(m * euler_phi(*m)),
            GroupDescriptor::Explicit { .. } => None,
        }
    }

    /// All elements as permutations of `0..degree`.
    pub fn elements(&self) -> Result<Vec<Vec<usize>>, WreathError> {
        self.validate()?;
        let too_large = || WreathError::TooLarge(format!("{self} has more than {MAX_GROUP_ORDER} elements"));
        if self.order().is_some_and(|o| o > MAX_GROUP_ORDER) {
            return Err(too_large());
        }
        Ok(match self {
            GroupDescriptor::Agl1 { p } => affine_maps(*p),
            GroupDescriptor::Holomorph { m } => affine_maps(*m),
            GroupDescriptor::Cyclic { n } => {
                let n = *n as usize;
                (0..n).map(|k| (0..n).map(|x| (x + k) % n).collect()).collect()
            }
            GroupDescriptor::Symmetric { n } => all_permutations(*n as usize),
            GroupDescriptor::Explicit { degree, generators } => closure(*degree, generators).ok_or_else(too_large)?,
        })
    }

    /// Cycle types occurring in the group, each once.
    pub fn types(&self) -> Result<Vec<CycleType>, WreathError> {
        match self {
            GroupDescriptor::Agl1 { p } => {
                self.validate()?;
                Ok(agl1_types(*p).into_iter().map(|(t, _)| t).collect())
            }
            GroupDescriptor::Symmetric { n } => {
                self.validate()?;
                Ok(partitions(*n).into_iter().map(|p| CycleType::new(p).unwrap()).collect())
            }
            _ => Ok(group_cycle_index(self)?.into_iter().map(|(t, _)| t).collect()),
        }
    }

    /// Proportion of elements acting as a single cycle on all points, when it has a closed form.
    pub fn full_cycle_formula(&self) -> Option<(u64, u64)> {
        match self {
            GroupDescriptor::Agl1 { p } => Some((1, *p)),
            GroupDescriptor::Cyclic { n } => Some((euler_phi(*n), *n)),
            GroupDescriptor::Symmetric { n } => Some((1, *n)),
            _ => None,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Agl1 { p } => write!(f, "AGL1({p})"),
            GroupDescriptor::Cyclic { n } => write!(f, "C{n}"),
            GroupDescriptor::Symmetric { n } => write!(f, "S{n}"),
            GroupDescriptor::Holomorph { m } => write!(f, "Hol({m})"),
            GroupDescriptor::Explicit { degree, generators } => write!(f, "<{} generators on {degree} points>", generators.len()),
        }
    }
}

/// Accepts `agl3`, `agl1(3)`, `c3`, `s3`, `sym3`, `hol4`, `hol(4)`.
impl FromStr for GroupDescriptor {
    type Err = WreathError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s.trim().to_ascii_lowercase().chars().filter(|c| !matches!(c, '(' | ')' | ' ' | '_')).collect();
        let split = norm.find(|c: char| c.is_ascii_digit()).unwrap_or(norm.len());
        let (name, num) = norm.split_at(split);
        let (name, num) = match name {
            "agl" if num.starts_with('1') && num.len() > 1 => ("agl", &num[1..]),
            _ => (name, num),
        };
        let n: u64 = num.parse().map_err(|_| WreathError::InvalidGroup(format!("cannot parse group {s:?}")))?;
        let g = match name {
            "agl" => GroupDescriptor::Agl1 { p: n },
            "c" | "cyclic" => GroupDescriptor::Cyclic { n },
            "s" | "sym" | "symmetric" => GroupDescriptor::Symmetric { n },
            "hol" | "holomorph" => GroupDescriptor::Holomorph { m: n },
            _ => return Err(WreathError::InvalidGroup(format!("unknown group name {name:?}"))),
        };
        g.validate()?;
        Ok(g)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Cycle type of a permutation given by its image list.
pub fn cycle_type_of(perm: &[usize]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        parts.push(len);
    }
    CycleType::new(parts).expect("nonempty permutation")
}

/// Exact cycle-type distribution by enumeration.
pub fn group_cycle_index(g: &GroupDescriptor) -> Result<Vec<(CycleType, u64)>, WreathError> {
    let mut counts: BTreeMap<CycleType, u64> = BTreeMap::new();
    for e in g.elements()? {
        *counts.entry(cycle_type_of(&e)).or_default() += 1;
    }
    Ok(counts.into_iter().rev().collect())
}

/// Cycle types of `AGL_1(p)` in closed form: identity, the `p`-cycles, and for
/// each divisor `d > 1` of `p − 1` the type `(d^{(p−1)/d}, 1)` with `p·φ(d)` elements.
pub fn agl1_types(p: u64) -> Vec<(CycleType, u64)> {
    assert!(is_prime_u64(p), "agl1_types needs a prime");
    let mut out = vec![(CycleType::full_cycle(p), p - 1)];
    for d in (2..p).rev().filter(|d| (p - 1).is_multiple_of(*d)) {
        let mut parts = vec![d; ((p - 1) / d) as usize];
        parts.push(1);
        out.push((CycleType::new(parts).unwrap(), p * euler_phi(d)));
    }
    out.push((CycleType::identity(p), 1));
    out
}

/// All partitions of `n`, parts descending.
pub fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn rec(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            rec(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn affine_maps(m: u64) -> Vec<Vec<usize>> {
    let m = m as usize;
    let mut out = Vec::new();
    for a in (1..m.max(2)).filter(|a| a.gcd(&m) == 1 || m == 1) {
        for b in 0..m {
            out.push((0..m).map(|x| (a * x + b) % m).collect());
        }
    }
    out
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    // Heap's algorithm.
    let mut c = vec![0; n];
    out.push(perm.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            out.push(perm.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn is_transitive(degree: usize, gens: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; degree];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for g in gens {
            if !seen[g[x]] {
                seen[g[x]] = true;
                queue.push_back(g[x]);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn closure(degree: usize, gens: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let next: Vec<usize> = e.iter().map(|&x| g[x]).collect();
            if seen.insert(next.clone()) {
                if seen.len() as u64 > MAX_GROUP_ORDER {
                    return None;
                }
                queue.push_back(next);
            }
        }
        out.push(e);
    }
    Some(out)
}
