//! Full-cycle proportions and brute-force enumeration of small towers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::groups::cycle_type_of;
use super::{CycleType, GroupDescriptor, Tower, WreathError};
use crate::exactalg::Rational;

/// Order cap for `brute_force_tower`.
pub const MAX_BRUTE_ORDER: u64 = 10_000_000;
/// Degree cap for `brute_force_tower`.
pub const MAX_BRUTE_DEGREE: u64 = 12;
/// Modulus cap for `holomorph_full_cycles`.
pub const MAX_HOLOMORPH_MODULUS: u64 = 10_000;

fn frac(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Proportion of `x ↦ ax + b` on `ℤ/m` (`a` a unit) that act as one `m`-cycle.
///
/// Enumerates the multipliers `a`. A non-unit `b` keeps the orbit of 0 inside
/// `bℤ/m`, and for a unit `b` the map is conjugate by `x ↦ bx` to the one with
/// `b = 1`, so only `b = 1` is iterated and the count is scaled by `φ(m)`.
pub fn holomorph_full_cycles(m: u64) -> Result<Rational, WreathError> {
    if m == 0 || m > MAX_HOLOMORPH_MODULUS {
        return Err(WreathError::TooLarge(format!("holomorph modulus {m} outside 1..={MAX_HOLOMORPH_MODULUS}")));
    }
    if m == 1 {
        return Ok(Rational::one());
    }
    let units: Vec<u64> = (1..m).filter(|a| a.gcd(&m) == 1).collect();
    let good = units
        .iter()
        .filter(|&&a| {
            // Orbit of 0 under x ↦ ax + 1.
            let mut x = 1 % m;
            let mut len = 1;
            while x != 0 {
                x = (a * x + 1) % m;
                len += 1;
            }
            len == m
        })
        .count() as u64;
    let phi = units.len() as u64;
    Ok(frac(good * phi, m * phi))
}

fn member_full_cycle_proportion(g: &GroupDescriptor) -> Result<Rational, WreathError> {
    if let Some((n, d)) = g.full_cycle_formula() {
        g.validate()?;
        return Ok(frac(n, d));
    }
    if let GroupDescriptor::Holomorph { m } = g {
        g.validate()?;
        return holomorph_full_cycles(*m);
    }
    let index = super::group_cycle_index(g)?;
    let total: u64 = index.iter().map(|(_, c)| c).sum();
    let full: u64 = index.iter().filter(|(t, _)| t.is_full_cycle()).map(|(_, c)| c).sum();
    Ok(frac(full, total))
}

/// Product of the members' full-cycle proportions.
///
/// An element is a full cycle iff its top component is, and the product of the
/// block components around that cycle is a full cycle of the lower tower; that
/// product is uniformly distributed over the lower group.
pub fn full_cycle_proportion(tower: &Tower) -> Result<Rational, WreathError> {
    tower.validate()?;
    tower.members().iter().map(member_full_cycle_proportion).product()
}

/// Tallies cycle types over every element of the iterated wreath product.
/// Point `(block i, inner j)` is numbered `i·M + j`, `M` the lower degree.
pub fn brute_force_tower(tower: &Tower) -> Result<Vec<(CycleType, u64)>, WreathError> {
    tower.validate()?;
    if tower.degree() > MAX_BRUTE_DEGREE {
        return Err(WreathError::TooLarge(format!("brute force needs degree ≤ {MAX_BRUTE_DEGREE}")));
    }
    let mut counts: BTreeMap<CycleType, u64> = BTreeMap::new();
    for_each_element(tower.members(), &mut |e| *counts.entry(cycle_type_of(e)).or_default() += 1)?;
    Ok(counts.into_iter().rev().collect())
}

fn tower_elements(members: &[GroupDescriptor]) -> Result<Vec<Vec<usize>>, WreathError> {
    let mut out = Vec::new();
    for_each_element(members, &mut |e| out.push(e.to_vec()))?;
    Ok(out)
}

fn for_each_element(members: &[GroupDescriptor], visit: &mut dyn FnMut(&[usize])) -> Result<(), WreathError> {
    let top = members[0].elements()?;
    if members.len() == 1 {
        top.iter().for_each(|e| visit(e));
        return Ok(());
    }
    let lower = tower_elements(&members[1..])?;
    let k = members[0].degree() as usize;
    let m = members[1..].iter().map(|g| g.degree() as usize).product::<usize>();
    let order = (top.len() as u64).saturating_mul((lower.len() as u64).saturating_pow(k as u32));
    if order > MAX_BRUTE_ORDER {
        return Err(WreathError::TooLarge(format!("wreath product order {order} exceeds {MAX_BRUTE_ORDER}")));
    }
    let mut digits = vec![0usize; k];
    let mut perm = vec![0; k * m];
    for pi in &top {
        loop {
            for (i, &d) in digits.iter().enumerate() {
                let sigma = &lower[d];
                for j in 0..m {
                    perm[i * m + j] = pi[i] * m + sigma[j];
                }
            }
            visit(&perm);
            // Mixed-radix increment.
            let mut pos = 0;
            while pos < k {
                digits[pos] += 1;
                if digits[pos] < lower.len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::ratio;

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    #[test]
    fn holomorph_values() {
        assert_eq!(holomorph_full_cycles(3).unwrap(), ratio(1, 3));
        assert_eq!(holomorph_full_cycles(9).unwrap(), ratio(1, 3));
        assert_eq!(holomorph_full_cycles(4).unwrap(), ratio(1, 4));
        for m in 2..=30 {
            let idx = super::super::group_cycle_index(&GroupDescriptor::Holomorph { m }).unwrap();
            let total: u64 = idx.iter().map(|(_, c)| c).sum();
            let full: u64 = idx.iter().filter(|(t, _)| t.is_full_cycle()).map(|(_, c)| c).sum();
            assert_eq!(holomorph_full_cycles(m).unwrap(), frac(full, total), "m = {m}");
        }
    }

    #[test]
    fn dihedral_tower() {
        let t = Tower::agl1(&[2, 2]);
        assert_eq!(brute_force_tower(&t).unwrap(), vec![(ct("4"), 2), (ct("2,2"), 3), (ct("2,1,1"), 2), (ct("1x4"), 1)]);
        let c = Tower(vec![GroupDescriptor::Cyclic { n: 2 }, GroupDescriptor::Cyclic { n: 2 }]);
        assert_eq!(brute_force_tower(&c).unwrap().iter().map(|(_, n)| n).sum::<u64>(), 8);
    }

    #[test]
    fn proportions() {
        let c3 = GroupDescriptor::Cyclic { n: 3 };
        assert_eq!(full_cycle_proportion(&Tower(vec![c3.clone(), c3])).unwrap(), ratio(4, 9));
        assert_eq!(full_cycle_proportion(&Tower::agl1(&[3, 3])).unwrap(), ratio(1, 9));
        assert_eq!(full_cycle_proportion(&Tower(vec![GroupDescriptor::Symmetric { n: 2 }])).unwrap(), ratio(1, 2));
        let counts = brute_force_tower(&Tower::agl1(&[3, 3])).unwrap();
        let total: u64 = counts.iter().map(|(_, c)| c).sum();
        assert_eq!(total, 1296);
        let full = counts.iter().find(|(t, _)| t.is_full_cycle()).unwrap().1;
        assert_eq!(frac(full, total), ratio(1, 9));
    }
}
