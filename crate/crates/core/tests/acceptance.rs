//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.
//!
//! Run a subset with `cargo test -p arbordyn-core --test acceptance -- 4 9`.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arbordyn_core::census::{prime_stream, profile_from_rows, run_census, CensusMode, CensusOptions, PrimeRow, Scenario};
use arbordyn_core::dynamics::linear_shift;
use arbordyn_core::exactalg::rational::{rat, ratio};
use arbordyn_core::exactalg::{parse_poly, PolyQ, Rational};
use arbordyn_core::stability::{
    depth_stable, find_valuation_witnesses, predict_ramification, unicritical_exact_stable, StabilityStatus,
};
use arbordyn_core::wreath::groups::group_cycle_index;
use arbordyn_core::wreath::{
    brute_force_tower, full_cycle_proportion, holomorph_full_cycles, parity_necessary, realizable_in_tower,
    realizing_tower, CycleType, GroupDescriptor, ParityOutcome, Tower,
};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(u32, &str, Check); 13] = [
        (1, "generic density of (1 - X^3, a)", crit_generic_cubic),
        (2, "special value a = -1/7", crit_special_cubic),
        (3, "Chebyshev cubic at its maximum", crit_chebyshev),
        (4, "density decay for X^2 + 1", crit_decay),
        (5, "quadratic maximum X^2 - 2", crit_quadratic_max),
        (6, "exact vs depth-30 engine", crit_cross_engine),
        (7, "shift invariance", crit_shift),
        (8, "tower search vs brute force", crit_tower_search),
        (9, "full-cycle proportions", crit_full_cycles),
        (10, "parity obstruction", crit_parity),
        (11, "holomorph full cycles", crit_holomorph),
        (12, "ramification predictor", crit_ramification),
        (13, "valuation witnesses for X^2 + 1", crit_witnesses),
    ];
    let only: BTreeSet<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for (k, name, check) in criteria {
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let start = Instant::now();
        let out = check();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {k}: {name}: {} [{:.1}s]", out.detail, start.elapsed().as_secs_f64());
        if !out.pass {
            failed.push(k);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}

fn poly(s: &str) -> PolyQ {
    parse_poly(s).expect("valid polynomial")
}

fn within(x: &Rational, target: &Rational, tol: &Rational) -> bool {
    (x - target).abs() <= *tol
}

fn fraction(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den.max(1)))
}

fn f64_of(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

fn density_of(rows: &[PrimeRow], depth: Option<usize>) -> Rational {
    let stable = rows.iter().filter(|r| depth.map_or(r.is_stable(), |n| r.stable_to(n))).count();
    fraction(stable as u64, rows.len() as u64)
}

fn exact_census(f: &str, a: Rational, pmax: u64) -> Vec<PrimeRow> {
    let s = Scenario::new(poly(f), a, pmax, CensusMode::ExactUnicritical);
    run_census(&s, &CensusOptions::default()).expect("census runs").rows
}

fn crit_generic_cubic() -> Outcome {
    let start = Instant::now();
    let tol = ratio(15, 1000);
    let (generic, special) = (ratio(2, 9), ratio(1, 3));
    let mut near_generic = 0;
    let mut notes = Vec::new();
    let mut outliers_ok = true;
    for a in [3, 5, 7] {
        let d = density_of(&exact_census("1 - X^3", rat(a), 100_000), None);
        if within(&d, &generic, &tol) {
            near_generic += 1;
            notes.push(format!("a={a}: {:.4}", f64_of(&d)));
        } else {
            let special_hit = within(&d, &special, &tol);
            outliers_ok &= special_hit;
            notes.push(format!("a={a}: {:.4} (outlier, near 1/3: {special_hit})", f64_of(&d)));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = near_generic >= 2 && outliers_ok && secs <= 60.0;
    Outcome::new(pass, format!("{}; {near_generic}/3 within 0.015 of 2/9; {secs:.1}s of 60s", notes.join(", ")))
}

fn crit_special_cubic() -> Outcome {
    let start = Instant::now();
    let d = density_of(&exact_census("1 - X^3", ratio(-1, 7), 100_000), None);
    let secs = start.elapsed().as_secs_f64();
    let pass = within(&d, &ratio(1, 3), &ratio(15, 1000)) && secs <= 60.0;
    Outcome::new(pass, format!("density {:.4} (target 1/3 ± 0.015); {secs:.1}s of 60s", f64_of(&d)))
}

fn crit_chebyshev() -> Outcome {
    let start = Instant::now();
    let s = Scenario::new(poly("X^3 - 3X"), rat(-1), 100_000, CensusMode::Depth(3));
    let rows = run_census(&s, &CensusOptions::default()).expect("census runs").rows;
    let d1 = density_of(&rows, Some(1));
    let d3 = density_of(&rows, Some(3));
    let secs = start.elapsed().as_secs_f64();
    let pass = within(&d3, &ratio(2, 3), &ratio(15, 1000)) && within(&d1, &d3, &ratio(5, 1000)) && secs <= 300.0;
    Outcome::new(
        pass,
        format!("depth-3 density {:.4} (target 2/3 ± 0.015), depth-1 {:.4}; {secs:.1}s of 300s", f64_of(&d3), f64_of(&d1)),
    )
}

fn crit_decay() -> Outcome {
    let s = Scenario::new(poly("X^2 + 1"), rat(0), 100_000, CensusMode::Depth(8));
    let rows = run_census(&s, &CensusOptions::default()).expect("census runs").rows;
    let profile = profile_from_rows(&rows, 8);
    let ds: Vec<Rational> = profile.iter().map(|e| fraction(e.stable_count, e.primes_tested)).collect();
    // Level 1 is X^2 + 1 itself, irreducible mod p iff p ≡ 3 (mod 4).
    let level_one_oracle = rows.iter().all(|r| (r.prime % 4 == 3) == r.stable_to(1));
    let first_ok = within(&ds[0], &ratio(1, 2), &ratio(1, 100));
    let worst_ratio = ds
        .windows(2)
        .map(|w| if w[0].is_zero() { 0.0 } else { f64_of(&(&w[1] / &w[0])) })
        .fold(0.0f64, f64::max);
    let ratios_ok = ds.windows(2).all(|w| w[1] <= &w[0] * ratio(3, 4));
    let last_ok = ds[7] <= ratio(2, 100);
    let shown: Vec<String> = ds.iter().map(|d| format!("{:.4}", f64_of(d))).collect();
    Outcome::new(
        first_ok && ratios_ok && last_ok && level_one_oracle,
        format!(
            "profile [{}]; max ratio {worst_ratio:.3} (≤ 0.75); level 1 matches p ≡ 3 mod 4: {level_one_oracle}",
            shown.join(", ")
        ),
    )
}

fn crit_quadratic_max() -> Outcome {
    let rows = exact_census("X^2 - 2", rat(0), 100_000);
    let odd_primes: Vec<u64> = prime_stream(100_000).unwrap().into_iter().filter(|&p| p > 2).collect();
    let covered = rows.iter().map(|r| r.prime).eq(odd_primes.iter().copied());
    let mismatches = rows.iter().filter(|r| r.is_stable() != matches!(r.prime % 8, 3 | 5)).count();
    let d = density_of(&rows, None);
    let pass = covered && mismatches == 0 && within(&d, &ratio(1, 2), &ratio(1, 100));
    Outcome::new(
        pass,
        format!(
            "{} odd primes tested (all covered: {covered}), {mismatches} disagreements with p ≡ 3, 5 mod 8; density {:.4}",
            rows.len(),
            f64_of(&d)
        ),
    )
}

fn crit_cross_engine() -> Outcome {
    const DEPTH: usize = 30;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let primes: Vec<u64> = prime_stream(9_999).unwrap().into_iter().collect();
    let (mut agree, mut contradictions, mut unresolved) = (0, Vec::new(), 0);
    let (mut deepest_verified, mut unresolved_stable) = (0, 0);
    for _ in 0..200 {
        let u = rat(*[-3, -2, -1, 1, 2, 3].choose(&mut rng).unwrap());
        let d: usize = rng.gen_range(2..=5);
        let v = rat(rng.gen_range(-6..=6));
        let a = if rng.gen_bool(0.25) {
            ratio(rng.gen_range(-6..=6), rng.gen_range(2..=5))
        } else {
            rat(rng.gen_range(-6..=6))
        };
        let p = *primes.choose(&mut rng).unwrap();
        let f = PolyQ::new(
            std::iter::once(v.clone()).chain(std::iter::repeat_n(rat(0), d - 1)).chain(std::iter::once(u.clone())).collect(),
        );
        let exact = unicritical_exact_stable(&u, d, &v, &a, p).map(|v| v.status);
        let depth = depth_stable(&f, &a, p, DEPTH).map(|v| v.status);
        match (&exact, &depth) {
            (Ok(StabilityStatus::StableExact), Ok(StabilityStatus::StableUpTo { depth: n })) if *n == DEPTH => agree += 1,
            (Ok(StabilityStatus::UnstableAt { level: l, .. }), Ok(StabilityStatus::UnstableAt { level: m, .. })) if l == m => {
                agree += 1
            }
            (Ok(e), Ok(StabilityStatus::Inconclusive { verified_to }))
                if e.fail_level().is_none_or(|l| l > *verified_to) =>
            {
                unresolved += 1;
                unresolved_stable += usize::from(e.is_stable());
                deepest_verified = deepest_verified.max(*verified_to);
            }
            (Err(x), Err(y)) if x == y => agree += 1,
            _ => contradictions.push(format!("({u}X^{d} + {v}, a={a}, p={p}): exact {exact:?}, depth {depth:?}")),
        }
    }
    let mut detail = format!(
        "{agree}/200 agree, {} contradictions, {unresolved} unresolved ({unresolved_stable} exact-stable; \
         depth engine hit its degree cap, deepest level verified {deepest_verified})",
        contradictions.len()
    );
    if let Some(first) = contradictions.first() {
        detail.push_str(&format!("; first contradiction {first}"));
    }
    Outcome::new(agree == 200, detail)
}

fn crit_shift() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let primes: Vec<u64> = prime_stream(60).unwrap().into_iter().collect();
    let mut mismatches = Vec::new();
    let mut unstable = 0;
    for _ in 0..500 {
        let deg: usize = rng.gen_range(2..=4);
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
        if coeffs[deg] == 0 {
            coeffs[deg] = *[-2, -1, 1, 2].choose(&mut rng).unwrap();
        }
        let f = PolyQ::from_ints(&coeffs);
        let a = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        let p = *primes.choose(&mut rng).unwrap();
        let n: usize = rng.gen_range(1..=5);
        let lhs = depth_stable(&f, &a, p, n).map(|v| v.status);
        let rhs = depth_stable(&linear_shift(&f, &a), &rat(0), p, n).map(|v| v.status);
        if matches!(lhs, Ok(StabilityStatus::UnstableAt { .. })) {
            unstable += 1;
        }
        if lhs != rhs {
            mismatches.push(format!("(f={f}, a={a}, p={p}, N={n}): {lhs:?} vs {rhs:?}"));
        }
    }
    let mut detail = format!("{} mismatches in 500 cases ({unstable} unstable verdicts)", mismatches.len());
    if let Some(first) = mismatches.first() {
        detail.push_str(&format!("; first {first}"));
    }
    Outcome::new(mismatches.is_empty(), detail)
}

fn catalog() -> Vec<GroupDescriptor> {
    ["C2", "AGL1(2)", "C3", "AGL1(3)", "S3", "Hol(4)", "S4"].iter().map(|s| s.parse().unwrap()).collect()
}

/// Every sequence of catalog members whose degrees multiply to `n`.
fn catalog_towers(n: u64) -> Vec<Tower> {
    fn go(n: u64, cat: &[GroupDescriptor], prefix: &mut Vec<GroupDescriptor>, out: &mut Vec<Tower>) {
        if n == 1 {
            if !prefix.is_empty() {
                out.push(Tower(prefix.clone()));
            }
            return;
        }
        for g in cat {
            if n.is_multiple_of(g.degree()) {
                prefix.push(g.clone());
                go(n / g.degree(), cat, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &catalog(), &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` as nonincreasing part lists.
fn partitions_of(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=max.min(rest)).rev() {
            prefix.push(k);
            go(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn crit_tower_search() -> Outcome {
    let start = Instant::now();
    let (mut towers, mut checks) = (0, 0);
    let mut problems = Vec::new();
    for n in [4u64, 6, 8, 9, 12] {
        let taus: Vec<CycleType> = partitions_of(n).into_iter().map(|p| CycleType::new(p).unwrap()).collect();
        for tower in catalog_towers(n) {
            towers += 1;
            let seen: HashSet<CycleType> = brute_force_tower(&tower).unwrap().into_iter().map(|(t, _)| t).collect();
            for tau in &taus {
                checks += 1;
                match realizable_in_tower(tau, &tower).unwrap() {
                    Some(tree) if !seen.contains(tau) || tree.flatten() != *tau || !tree.is_valid_for(&tower) => {
                        problems.push(format!("{tau} in {tower}: bad witness"))
                    }
                    None if seen.contains(tau) => problems.push(format!("{tau} in {tower}: missed")),
                    _ => {}
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let mut detail = format!("{checks} (type, tower) pairs over {towers} towers, {} disagreements; {secs:.1}s of 120s", problems.len());
    if let Some(first) = problems.first() {
        detail.push_str(&format!("; first {first}"));
    }
    Outcome::new(problems.is_empty() && secs <= 120.0, detail)
}

fn brute_full_cycle_fraction(tower: &Tower) -> Rational {
    let counts = brute_force_tower(tower).unwrap();
    let total: u64 = counts.iter().map(|(_, c)| c).sum();
    let full: u64 = counts.iter().filter(|(t, _)| t.parts() == [tower.degree()]).map(|(_, c)| c).sum();
    fraction(full, total)
}

fn crit_full_cycles() -> Outcome {
    let cat = catalog();
    let mut pairs = 0;
    let mut problems = Vec::new();
    for g in &cat {
        for h in &cat {
            if g.degree() * h.degree() > 12 {
                continue;
            }
            pairs += 1;
            let tower = Tower(vec![g.clone(), h.clone()]);
            let formula = full_cycle_proportion(&tower).unwrap();
            let brute = brute_full_cycle_fraction(&tower);
            if formula != brute {
                problems.push(format!("{tower}: {formula} vs brute {brute}"));
            }
        }
    }
    let c3c3 = full_cycle_proportion(&"C3,C3".parse().unwrap()).unwrap();
    let agl = full_cycle_proportion(&"AGL1(3),AGL1(3)".parse().unwrap()).unwrap();
    if c3c3 != ratio(4, 9) {
        problems.push(format!("[C3,C3] = {c3c3}"));
    }
    if agl != ratio(1, 9) {
        problems.push(format!("[AGL1(3),AGL1(3)] = {agl}"));
    }
    // Cyclic top over any lower tower: c_U = ((p − 1)/p)·c_V, both sides by enumeration.
    let mut kernel_cases = 0;
    for p in [2u64, 3] {
        for lower in cat.iter().map(|h| vec![h.clone()]).chain(catalog_towers(4).into_iter().map(|t| t.0)) {
            let top = GroupDescriptor::Cyclic { n: p };
            let lower = Tower(lower);
            if p * lower.degree() > 12 {
                continue;
            }
            kernel_cases += 1;
            let whole = Tower(std::iter::once(top).chain(lower.0.iter().cloned()).collect());
            let expected = ratio(p as i64 - 1, p as i64) * brute_full_cycle_fraction(&lower);
            let got = brute_full_cycle_fraction(&whole);
            if got != expected {
                problems.push(format!("{whole}: {got} vs {expected}"));
            }
        }
    }
    let mut detail = format!(
        "{pairs} catalog pairs, {kernel_cases} cyclic-top instances; [C3,C3] = {c3c3}, [AGL1(3),AGL1(3)] = {agl}; {} problems",
        problems.len()
    );
    if let Some(first) = problems.first() {
        detail.push_str(&format!("; first {first}"));
    }
    Outcome::new(problems.is_empty(), detail)
}

fn q_types(n: u64, q: u64) -> Vec<CycleType> {
    (0..=n / q)
        .map(|k| {
            let mut parts = vec![q; k as usize];
            parts.extend(std::iter::repeat_n(1, (n - k * q) as usize));
            CycleType::new(parts).unwrap()
        })
        .collect()
}

fn crit_parity() -> Outcome {
    let mut problems = Vec::new();
    // The required degrees are multiples of 3, so the parity condition never
    // applies to them; further degrees and prime powers exercise the implication.
    let mut required_applicable = 0;
    for n in [9u64, 21] {
        for tau in q_types(n, 3) {
            if parity_necessary(&tau, n, 3) != ParityOutcome::Inapplicable {
                required_applicable += 1;
            }
        }
    }
    let mut fail_cases = 0;
    let mut applicable = 0;
    for (q, n) in [(3u64, 10u64), (3, 14), (3, 25), (3, 49), (5, 12), (5, 14), (5, 49), (9, 20), (9, 25)] {
        for tau in q_types(n, q) {
            match parity_necessary(&tau, n, q) {
                ParityOutcome::Fail => {
                    applicable += 1;
                    fail_cases += 1;
                    if realizing_tower(&tau, n).unwrap().is_some() {
                        problems.push(format!("{tau} (n={n}, q={q}) fails parity but is realizable"));
                    }
                }
                ParityOutcome::Pass => applicable += 1,
                ParityOutcome::Inapplicable => problems.push(format!("{tau} (n={n}, q={q}) should be applicable")),
            }
        }
    }
    let odd: CycleType = "3,1^46".parse().unwrap();
    let even: CycleType = "3^2,1^43".parse().unwrap();
    if parity_necessary(&odd, 49, 3) != ParityOutcome::Fail {
        problems.push("(3,1^46) should fail parity".into());
    }
    if parity_necessary(&even, 49, 3) != ParityOutcome::Pass {
        problems.push("(3,3,1^43) should pass parity".into());
    }
    let witness = match realizing_tower(&even, 49).unwrap() {
        Some((tower, tree)) if tree.flatten() == even && tree.is_valid_for(&tower) => format!("witness in {tower}"),
        Some((tower, _)) => {
            problems.push(format!("invalid witness in {tower}"));
            String::new()
        }
        None => {
            problems.push("(3,3,1^43) not realized".into());
            String::new()
        }
    };
    let mut detail = format!(
        "degrees 9, 21: {required_applicable} applicable types (3 divides both); \
         {applicable} applicable types at other degrees, {fail_cases} parity failures all unrealizable; \
         (3,1^46) Fail, (3,3,1^43) Pass with {witness}"
    );
    if let Some(first) = problems.first() {
        detail.push_str(&format!("; first problem {first}"));
    }
    Outcome::new(problems.is_empty(), detail)
}

fn crit_holomorph() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for (m, expected) in [(3u64, ratio(1, 3)), (9, ratio(1, 3)), (27, ratio(1, 3)), (4, ratio(1, 4))] {
        let formula = holomorph_full_cycles(m).unwrap();
        let index = group_cycle_index(&GroupDescriptor::Holomorph { m }).unwrap();
        let total: u64 = index.iter().map(|(_, c)| c).sum();
        let full: u64 = index.iter().filter(|(t, _)| t.parts() == [m]).map(|(_, c)| c).sum();
        let counted = fraction(full, total);
        pass &= formula == expected && counted == expected;
        notes.push(format!("m={m}: {formula} (enumerated {counted})"));
    }
    Outcome::new(pass, notes.join(", "))
}

/// `ν_p(n)` by repeated division.
fn nu(n: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(&p) {
        n /= &p;
        k += 1;
    }
    k
}

fn crit_ramification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let primes: Vec<u64> = prime_stream(1000).unwrap().into_iter().filter(|&p| p > 2).collect();
    let f = poly("X^2");
    let mut problems = Vec::new();
    let mut ramified = 0;
    for _ in 0..100 {
        let p = *primes.choose(&mut rng).unwrap();
        let k: u32 = rng.gen_range(0..=3);
        let mut s: i64 = rng.gen_range(1..=10_000);
        if rng.gen_bool(0.5) {
            s = -s;
        }
        let mut den: i64 = rng.gen_range(1..=50);
        while (den as u64).is_multiple_of(p) {
            den += 1;
        }
        let num = BigInt::from(s) * BigInt::from(p).pow(k);
        let a = Rational::new(num.clone(), BigInt::from(den));
        let odd_valuation = (nu(&num, p) - nu(&BigInt::from(den), p)) % 2 == 1;
        let predicted = predict_ramification(&f, &a, p)
            .map(|preds| preds.iter().any(|r| r.predicted_index == Some(2)));
        match predicted {
            Ok(two) => {
                ramified += u32::from(two);
                if two != odd_valuation {
                    problems.push(format!("a={a}, p={p}: predicted index 2 {two}, ν_p odd {odd_valuation}"));
                }
            }
            Err(e) => problems.push(format!("a={a}, p={p}: {e}")),
        }
    }
    let mut detail = format!("100 cases, {ramified} predicted ramified, {} disagreements", problems.len());
    if let Some(first) = problems.first() {
        detail.push_str(&format!("; first {first}"));
    }
    Outcome::new(problems.is_empty(), detail)
}

fn crit_witnesses() -> Outcome {
    let search = find_valuation_witnesses(&poly("X^2 + 1"), &rat(1), 2, &BTreeSet::new(), 12, 1_000_000, None).unwrap();
    // Orbit of 1 under X^2 + 1, recomputed with plain integers.
    let mut orbit = vec![BigInt::from(1)];
    for _ in 0..12 {
        let x = orbit.last().unwrap();
        orbit.push(x * x + 1);
    }
    let mut bad = Vec::new();
    for w in &search.witnesses {
        let p = w.p.to_u64();
        let ok = p.is_some_and(|p| {
            let v = nu(&orbit[w.n], p);
            v == w.valuation && v > 0 && v % 2 == 1
        });
        if !ok {
            bad.push(format!("(n={}, p={}, ν={})", w.n, w.p, w.valuation));
        }
    }
    let distinct: BTreeSet<BigUint> = search.distinct_primes();
    let pass = distinct.len() >= 8 && bad.is_empty();
    Outcome::new(
        pass,
        format!(
            "{} witnesses, {} distinct primes (need ≥ 8), {} failed revalidation{}",
            search.witnesses.len(),
            distinct.len(),
            bad.len(),
            bad.first().map(|b| format!("; first {b}")).unwrap_or_default()
        ),
    )
}
