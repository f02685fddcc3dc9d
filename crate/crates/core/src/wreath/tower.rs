//! Towers, cycle-type trees and the realizability search.
//!
//! An element of `G_r ≀ (G_{r-1} ≀ …)` has a top type `λ` on the blocks; around
//! each cycle of length `ℓ` of `λ` the product of the block components is an
//! arbitrary element of the lower tower, and a lower cycle of length `m` becomes
//! a cycle of length `ℓ·m`. Since the components are unconstrained, each cycle of
//! `λ` may carry any type realizable in the lower tower, independently.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CycleType, GroupDescriptor, WreathError};
use crate::exactalg::intfactor::is_prime_u64;

/// Degree limit for the symbolic search.
pub const MAX_SYMBOLIC_DEGREE: u64 = 1_000_000;

/// Members listed from the top (block) action downward.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tower(pub Vec<GroupDescriptor>);

impl Tower {
    pub fn agl1(primes: &[u64]) -> Self {
        Tower(primes.iter().map(|&p| GroupDescriptor::Agl1 { p }).collect())
    }

    pub fn members(&self) -> &[GroupDescriptor] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(GroupDescriptor::degree).product()
    }

    /// Degree of the tower below level `k` (exclusive of member `k`).
    fn below(&self, k: usize) -> u64 {
        self.0[k + 1..].iter().map(GroupDescriptor::degree).product()
    }

    pub fn validate(&self) -> Result<(), WreathError> {
        if self.0.is_empty() {
            return Err(WreathError::InvalidGroup("empty tower".into()));
        }
        self.0.iter().try_for_each(GroupDescriptor::validate)
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

impl FromStr for Tower {
    type Err = WreathError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = Tower(s.split(',').map(str::parse).collect::<Result<_, _>>()?);
        t.validate()?;
        Ok(t)
    }
}

/// A cycle type of the top group, and for each of its cycles (in the order of
/// `cycle_type.parts()`) the tree it carries in the lower tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeTree {
    pub cycle_type: CycleType,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TypeTree>,
}

impl TypeTree {
    /// The global cycle type: a cycle of length `ℓ` carrying parts `m` yields parts `ℓ·m`.
    pub fn flatten(&self) -> CycleType {
        if self.children.is_empty() {
            return self.cycle_type.clone();
        }
        let parts = self
            .cycle_type
            .parts()
            .iter()
            .zip(&self.children)
            .flat_map(|(&l, child)| child.flatten().parts().iter().map(move |&m| l * m).collect::<Vec<_>>())
            .collect();
        CycleType::new(parts).expect("nonempty")
    }

    /// Every node uses a type of its level's group and the shape matches the tower.
    pub fn is_valid_for(&self, tower: &Tower) -> bool {
        fn check(t: &TypeTree, members: &[GroupDescriptor], types: &[Vec<CycleType>]) -> bool {
            if !types[0].contains(&t.cycle_type) {
                return false;
            }
            if members.len() == 1 {
                return t.children.is_empty();
            }
            t.children.len() == t.cycle_type.parts().len() && t.children.iter().all(|c| check(c, &members[1..], &types[1..]))
        }
        let Ok(types) = tower.0.iter().map(GroupDescriptor::types).collect::<Result<Vec<_>, _>>() else {
            return false;
        };
        check(self, &tower.0, &types)
    }
}

type Runs = Vec<(u64, u64)>;

fn runs_of(t: &CycleType) -> Runs {
    t.runs().into_iter().map(|(v, c)| (v, c as u64)).collect()
}

fn type_of_runs(r: &Runs) -> CycleType {
    CycleType::new(r.iter().flat_map(|&(v, c)| std::iter::repeat_n(v, c as usize)).collect()).expect("nonempty")
}

struct Search<'a> {
    tower: &'a Tower,
    types: Vec<Vec<CycleType>>,
    realized: HashMap<(Runs, usize), Option<TypeTree>>,
    dead: HashSet<(Runs, Vec<u64>, usize)>,
}

impl Search<'_> {
    fn realize(&mut self, tau: &Runs, level: usize) -> Option<TypeTree> {
        let key = (tau.clone(), level);
        if let Some(hit) = self.realized.get(&key) {
            return hit.clone();
        }
        let result = if level + 1 == self.tower.0.len() {
            let t = type_of_runs(tau);
            self.types[level].contains(&t).then(|| TypeTree { cycle_type: t, children: vec![] })
        } else {
            let candidates = self.types[level].clone();
            candidates.into_iter().find_map(|lambda| {
                self.assign(tau, lambda.parts(), level).map(|children| TypeTree { cycle_type: lambda, children })
            })
        };
        self.realized.insert(key, result.clone());
        result
    }

    /// Distributes `rest` over the cycles `cycles` of a top type at `level`.
    fn assign(&mut self, rest: &Runs, cycles: &[u64], level: usize) -> Option<Vec<TypeTree>> {
        let Some((&l, tail)) = cycles.split_first() else {
            return rest.is_empty().then(Vec::new);
        };
        let key = (rest.clone(), cycles.to_vec(), level);
        if self.dead.contains(&key) {
            return None;
        }
        let target = l * self.tower.below(level);
        let mut choices = Vec::new();
        sub_multisets(rest, l, target, 0, &mut vec![0; rest.len()], &mut choices);
        for take in choices {
            let sigma: Runs = rest.iter().zip(&take).filter(|(_, &c)| c > 0).map(|(&(v, _), &c)| (v / l, c)).collect();
            let Some(child) = self.realize(&sigma, level + 1) else { continue };
            let left: Runs = rest.iter().zip(&take).filter(|((_, c), &t)| c > &t).map(|(&(v, c), &t)| (v, c - t)).collect();
            if let Some(mut others) = self.assign(&left, tail, level) {
                others.insert(0, child);
                return Some(others);
            }
        }
        self.dead.insert(key);
        None
    }
}

/// Enumerates counts `take[i] ≤ runs[i].1` over parts divisible by `l` with `Σ take·part = target`,
/// larger parts taken greedily first.
fn sub_multisets(runs: &Runs, l: u64, target: u64, i: usize, take: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if target == 0 {
        out.push(take.clone());
        return;
    }
    if i == runs.len() {
        return;
    }
    let (v, c) = runs[i];
    if v % l != 0 {
        sub_multisets(runs, l, target, i + 1, take, out);
        return;
    }
    let max = c.min(target / v);
    for k in (0..=max).rev() {
        take[i] = k;
        sub_multisets(runs, l, target - k * v, i + 1, take, out);
    }
    take[i] = 0;
}

/// Searches for a cycle-type tree in `tower` flattening to `tau`.
pub fn realizable_in_tower(tau: &CycleType, tower: &Tower) -> Result<Option<TypeTree>, WreathError> {
    tower.validate()?;
    let n = tower.degree();
    if tau.degree() != n {
        return Err(WreathError::DegreeMismatch { expected: n, got: tau.degree() });
    }
    if n > MAX_SYMBOLIC_DEGREE {
        return Err(WreathError::TooLarge(format!("tower degree {n} exceeds {MAX_SYMBOLIC_DEGREE}")));
    }
    let types = tower.0.iter().map(GroupDescriptor::types).collect::<Result<Vec<_>, _>>()?;
    let mut search = Search { tower, types, realized: HashMap::new(), dead: HashSet::new() };
    Ok(search.realize(&runs_of(tau), 0))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All orderings of the prime factors of `n`, without repeats.
pub fn ordered_factorizations(n: u64) -> Vec<Vec<u64>> {
    fn rec(pool: &mut Vec<u64>, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        let mut used = HashSet::new();
        for i in 0..pool.len() {
            if !used.insert(pool[i]) {
                continue;
            }
            let p = pool.remove(i);
            cur.push(p);
            rec(pool, cur, out);
            cur.pop();
            pool.insert(i, p);
        }
    }
    let mut out = Vec::new();
    rec(&mut prime_factors(n), &mut Vec::new(), &mut out);
    out
}

/// True iff `tau` is realizable in no tower `AGL_1(p_r) ≀ … ≀ AGL_1(p_1)` with `Π p_i = n`.
pub fn obstruction_all_towers(tau: &CycleType, n: u64) -> Result<bool, WreathError> {
    Ok(realizing_tower(tau, n)?.is_none())
}

/// First AGL₁ tower of degree `n` (over orderings of the prime factors) realizing `τ`,
/// with its witness tree.
pub fn realizing_tower(tau: &CycleType, n: u64) -> Result<Option<(Tower, TypeTree)>, WreathError> {
    if tau.degree() != n {
        return Err(WreathError::DegreeMismatch { expected: n, got: tau.degree() });
    }
    if n < 2 {
        return Err(WreathError::InvalidType("degree must be at least 2".into()));
    }
    for primes in ordered_factorizations(n) {
        let tower = Tower::agl1(&primes);
        if let Some(tree) = realizable_in_tower(tau, &tower)? {
            return Ok(Some((tower, tree)));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityOutcome {
    Pass,
    Fail,
    Inapplicable,
}

/// For `q` a power of an odd prime with `q ∤ n` and parts of `tau` in `{1, q}`,
/// realizability in an AGL₁ tower over `n` needs an even number of `q`-cycles.
pub fn parity_necessary(tau: &CycleType, n: u64, q: u64) -> ParityOutcome {
    let base = prime_factors(q);
    let odd_prime_power = !base.is_empty() && base[0] != 2 && base.iter().all(|&b| b == base[0]) && is_prime_u64(base[0]);
    if !odd_prime_power || n.is_multiple_of(q) || tau.degree() != n || tau.parts().iter().any(|&x| x != 1 && x != q) {
        return ParityOutcome::Inapplicable;
    }
    if tau.count_of(q) % 2 == 1 {
        ParityOutcome::Fail
    } else {
        ParityOutcome::Pass
    }
}
