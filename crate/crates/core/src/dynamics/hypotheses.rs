//! Recognition of the structural hypotheses behind the density-zero results.
//!
//! Each criterion is evaluated literally on the rational critical data. A
//! verdict of `Applies` carries a witness that [`Witness::verify`] re-checks
//! from scratch; anything hinging on an untracked irrational orbit is
//! `Undetermined`.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::critical::{critical_structure, ClassStatus, CriticalClass, CriticalReport, PcfClass};
use super::orbit::{orbit_classify, OrbitStatus};
use crate::exactalg::intfactor::is_prime_u64;
use crate::exactalg::rational::{serde_rational, serde_rational_opt, Rational};
use crate::exactalg::{squarefree_decomposition, PolyQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// A wandering critical point whose multiplicity has a prime factor coprime to `deg f`.
    CoprimeMultiplicity,
    /// `deg f` prime and `f` postcritically infinite.
    PrimeDegree,
    /// `f' = h²g`, `g` squarefree of even positive degree with a wandering root.
    EvenSquarefreePart,
    /// `f = g·(X−a)^k + b`, `a` wandering, `g(a) ≠ 0`, `k` has a prime factor coprime to `deg g`.
    CoprimeCofactor,
    /// `f = r(X−a)^d + s(X−a)^k + b`, `d` odd, `1 < k < d`, `gcd(k, d) = 1`, a wandering critical point.
    OddTrinomial,
    /// `f = g·(X−a)^k + b`, `g` separable, `g(a) ≠ 0`, `a` wandering, `k` odd and `k ∤ deg f`.
    OddMultiplicity,
    /// `f = (X−a)^k (X−b)^m g + c` with `(X−a)(X−b)g` separable, `k, m` prime, `k ≤ m − 2`, `c` wandering.
    PrimeFiberPair,
}

impl Criterion {
    pub const ALL: [Criterion; 7] = [
        Criterion::CoprimeMultiplicity,
        Criterion::PrimeDegree,
        Criterion::EvenSquarefreePart,
        Criterion::CoprimeCofactor,
        Criterion::OddTrinomial,
        Criterion::OddMultiplicity,
        Criterion::PrimeFiberPair,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Applies,
    DoesNotApply,
    Undetermined,
}

/// A class of critical points certified wandering through the orbit of `tracked`
/// (the point itself, or its rational image).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WanderingClass {
    pub factor: PolyQ,
    pub mult_under_f: usize,
    #[serde(with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub point: Option<Rational>,
    #[serde(with = "serde_rational")]
    pub tracked: Rational,
    pub certified_at_step: usize,
}

impl WanderingClass {
    fn from_class(c: &CriticalClass) -> Option<Self> {
        let orbit = c.orbit.as_ref()?;
        let OrbitStatus::Wandering { certified_at_step } = orbit.status else { return None };
        Some(WanderingClass {
            factor: c.factor.clone(),
            mult_under_f: c.mult_under_f,
            point: c.point.clone(),
            tracked: orbit.start.clone(),
            certified_at_step,
        })
    }

    fn verify(&self, f: &PolyQ, max_steps: usize) -> bool {
        let fp = f.derivative();
        let e = self.mult_under_f - 1;
        let divides = |k: usize| fp.rem(&self.factor.pow(k as u32)).is_zero();
        if self.factor.deg() == 0 || e == 0 || !divides(e) || divides(e + 1) {
            return false;
        }
        let tracks = match &self.point {
            Some(a) => self.factor.deg() == 1 && self.factor.eval(a).is_zero() && *a == self.tracked,
            None => f.rem(&self.factor) == PolyQ::constant(self.tracked.clone()),
        };
        tracks && wandering(f, &self.tracked, max_steps.max(self.certified_at_step))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    CoprimeMultiplicity {
        class: WanderingClass,
        q: u64,
    },
    PrimeDegree {
        degree: usize,
        /// A unique critical point of full multiplicity: the unicritical family.
        unicritical: bool,
        class: WanderingClass,
    },
    EvenSquarefreePart {
        g: PolyQ,
        class: WanderingClass,
    },
    CoprimeCofactor {
        #[serde(with = "serde_rational")]
        a: Rational,
        k: usize,
        q: u64,
        g: PolyQ,
        #[serde(with = "serde_rational")]
        b: Rational,
        certified_at_step: usize,
    },
    OddTrinomial {
        #[serde(with = "serde_rational")]
        a: Rational,
        d: usize,
        k: usize,
        #[serde(with = "serde_rational")]
        r: Rational,
        #[serde(with = "serde_rational")]
        s: Rational,
        #[serde(with = "serde_rational")]
        b: Rational,
        class: WanderingClass,
    },
    OddMultiplicity {
        #[serde(with = "serde_rational")]
        a: Rational,
        k: usize,
        g: PolyQ,
        #[serde(with = "serde_rational")]
        b: Rational,
        certified_at_step: usize,
    },
    PrimeFiberPair {
        #[serde(with = "serde_rational")]
        c: Rational,
        k: usize,
        m: usize,
        #[serde(with = "serde_rational")]
        root_k: Rational,
        #[serde(with = "serde_rational")]
        root_m: Rational,
        g: PolyQ,
        certified_at_step: usize,
    },
}

fn wandering(f: &PolyQ, x: &Rational, steps: usize) -> bool {
    orbit_classify(f, x, steps).is_wandering()
}

fn coprime_prime_factor(k: usize, n: usize) -> Option<u64> {
    prime_divisors(k as u64).into_iter().find(|&q| (q as usize).gcd(&n) == 1)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn power_of_linear(a: &Rational, k: usize) -> PolyQ {
    PolyQ::linear_root(a).pow(k as u32)
}

fn is_separable(g: &PolyQ) -> bool {
    g.deg() == 0 || g.gcd(&g.derivative()).deg() == 0
}

/// Product of the factors of `f'` occurring to an odd power, made monic.
pub fn odd_multiplicity_part(f: &PolyQ) -> PolyQ {
    squarefree_decomposition(&f.derivative())
        .into_iter()
        .filter(|(_, m)| m % 2 == 1)
        .fold(PolyQ::one(), |acc, (g, _)| &acc * &g)
        .monic()
}

/// `(g, b)` with `f = g·(X − a)^k + b`, when `a` has multiplicity exactly `k` under `f`.
fn cofactor_at(f: &PolyQ, a: &Rational, k: usize) -> Option<(PolyQ, Rational)> {
    let b = f.eval(a);
    let g = (f - &PolyQ::constant(b.clone())).div_exact(&power_of_linear(a, k))?;
    (!g.eval(a).is_zero()).then_some((g, b))
}

/// `(d, k, r, s, b)` with `f(X + a) = r X^d + s X^k + b` and `1 < k < d`.
fn trinomial_at(f: &PolyQ, a: &Rational) -> Option<(usize, usize, Rational, Rational, Rational)> {
    let t = f.taylor_shift(a);
    let d = t.deg();
    let middle: Vec<usize> = (1..d).filter(|&i| !t.coeff(i).is_zero()).collect();
    match middle.as_slice() {
        [k] if *k > 1 => Some((d, *k, t.coeff(d), t.coeff(*k), t.coeff(0))),
        _ => None,
    }
}

impl Witness {
    pub fn criterion(&self) -> Criterion {
        match self {
            Witness::CoprimeMultiplicity { .. } => Criterion::CoprimeMultiplicity,
            Witness::PrimeDegree { .. } => Criterion::PrimeDegree,
            Witness::EvenSquarefreePart { .. } => Criterion::EvenSquarefreePart,
            Witness::CoprimeCofactor { .. } => Criterion::CoprimeCofactor,
            Witness::OddTrinomial { .. } => Criterion::OddTrinomial,
            Witness::OddMultiplicity { .. } => Criterion::OddMultiplicity,
            Witness::PrimeFiberPair { .. } => Criterion::PrimeFiberPair,
        }
    }

    /// Re-checks the criterion's hypotheses for `f` using only the witness data.
    pub fn verify(&self, f: &PolyQ, max_steps: usize) -> bool {
        let d = f.deg();
        match self {
            Witness::CoprimeMultiplicity { class, q } => {
                is_prime_u64(*q) && (class.mult_under_f as u64).is_multiple_of(*q) && (*q as usize).gcd(&d) == 1 && class.verify(f, max_steps)
            }
            Witness::PrimeDegree { degree, class, .. } => *degree == d && is_prime_u64(d as u64) && class.verify(f, max_steps),
            Witness::EvenSquarefreePart { g, class } => {
                *g == odd_multiplicity_part(f)
                    && g.deg() > 0
                    && g.deg() % 2 == 0
                    && g.rem(&class.factor).is_zero()
                    && class.verify(f, max_steps)
            }
            Witness::CoprimeCofactor { a, k, q, g, b, certified_at_step } => {
                *f == &(g * &power_of_linear(a, *k)) + &PolyQ::constant(b.clone())
                    && !g.eval(a).is_zero()
                    && is_prime_u64(*q)
                    && (*k as u64).is_multiple_of(*q)
                    && (*q as usize).gcd(&g.deg()) == 1
                    && wandering(f, a, max_steps.max(*certified_at_step))
            }
            Witness::OddTrinomial { a, d: dd, k, r, s, b, class } => {
                let shifted = &(&PolyQ::monomial(r.clone(), *dd) + &PolyQ::monomial(s.clone(), *k)) + &PolyQ::constant(b.clone());
                f.taylor_shift(a) == shifted
                    && !r.is_zero()
                    && !s.is_zero()
                    && dd % 2 == 1
                    && 1 < *k
                    && k < dd
                    && k.gcd(dd) == 1
                    && class.verify(f, max_steps)
            }
            Witness::OddMultiplicity { a, k, g, b, certified_at_step } => {
                *f == &(g * &power_of_linear(a, *k)) + &PolyQ::constant(b.clone())
                    && is_separable(g)
                    && !g.eval(a).is_zero()
                    && k % 2 == 1
                    && !d.is_multiple_of(*k)
                    && wandering(f, a, max_steps.max(*certified_at_step))
            }
            Witness::PrimeFiberPair { c, k, m, root_k, root_m, g, certified_at_step } => {
                let lhs = f - &PolyQ::constant(c.clone());
                let rhs = &(&power_of_linear(root_k, *k) * &power_of_linear(root_m, *m)) * g;
                let radical = &(&PolyQ::linear_root(root_k) * &PolyQ::linear_root(root_m)) * g;
                lhs == rhs
                    && is_separable(&radical)
                    && is_prime_u64(*k as u64)
                    && is_prime_u64(*m as u64)
                    && k + 2 <= *m
                    && wandering(f, c, max_steps.max(*certified_at_step))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisEntry {
    pub criterion: Criterion,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub entries: Vec<HypothesisEntry>,
}

impl HypothesisReport {
    pub fn get(&self, c: Criterion) -> &HypothesisEntry {
        self.entries.iter().find(|e| e.criterion == c).expect("every criterion is evaluated")
    }

    pub fn verdict(&self, c: Criterion) -> Verdict {
        self.get(c).verdict
    }
}

/// Outcome over a list of shape-matching candidates, given their orbit statuses.
fn decide<W>(candidates: Vec<(ClassStatus, Option<W>)>, none_note: &str) -> (Verdict, Option<W>, String) {
    if candidates.is_empty() {
        return (Verdict::DoesNotApply, None, none_note.to_string());
    }
    let total = candidates.len();
    let mut open = 0;
    for (status, w) in candidates {
        match status {
            ClassStatus::Wandering => {
                return (Verdict::Applies, w, format!("{total} candidate(s); a wandering one certified"));
            }
            ClassStatus::Preperiodic => {}
            ClassStatus::Undetermined | ClassStatus::Unknown => open += 1,
        }
    }
    if open == 0 {
        (Verdict::DoesNotApply, None, format!("all {total} candidate(s) are preperiodic"))
    } else {
        (Verdict::Undetermined, None, format!("{open} of {total} candidate(s) have untracked or uncertified orbits"))
    }
}

fn entry(criterion: Criterion, (verdict, witness, note): (Verdict, Option<Witness>, String)) -> HypothesisEntry {
    HypothesisEntry { criterion, verdict, witness, note }
}

fn class_candidate(c: &CriticalClass, build: impl FnOnce(WanderingClass) -> Witness) -> (ClassStatus, Option<Witness>) {
    (c.status(), WanderingClass::from_class(c).map(build))
}

pub fn check_hypotheses(f: &PolyQ, max_steps: usize) -> HypothesisReport {
    let report = critical_structure(f, max_steps);
    check_with_report(f, &report, max_steps)
}

pub fn check_with_report(f: &PolyQ, report: &CriticalReport, max_steps: usize) -> HypothesisReport {
    let d = f.deg();
    let mut entries = Vec::new();

    let cands = report
        .classes
        .iter()
        .filter_map(|c| {
            let q = coprime_prime_factor(c.mult_under_f, d)?;
            Some(class_candidate(c, |class| Witness::CoprimeMultiplicity { class, q }))
        })
        .collect();
    entries.push(entry(
        Criterion::CoprimeMultiplicity,
        decide(cands, "no critical multiplicity has a prime factor coprime to the degree"),
    ));

    let prime_degree = if !is_prime_u64(d as u64) {
        (Verdict::DoesNotApply, None, format!("degree {d} is not prime"))
    } else {
        let unicritical = report.is_unicritical();
        let route = if unicritical { "unicritical family" } else { "general" };
        match super::critical::classify_report(report) {
            PcfClass::PostcriticallyInfinite => {
                let class = report.classes.iter().find_map(WanderingClass::from_class).expect("a wandering class exists");
                (Verdict::Applies, Some(Witness::PrimeDegree { degree: d, unicritical, class }), format!("postcritically infinite; {route}"))
            }
            PcfClass::Pcf => (Verdict::DoesNotApply, None, "postcritically finite".into()),
            PcfClass::Undetermined => (Verdict::Undetermined, None, "postcritical behaviour undetermined".into()),
        }
    };
    entries.push(entry(Criterion::PrimeDegree, prime_degree));

    let g = odd_multiplicity_part(f);
    let even_part = if g.deg() == 0 || g.deg() % 2 == 1 {
        (Verdict::DoesNotApply, None, format!("odd-multiplicity part of f' has degree {}", g.deg()))
    } else {
        let cands = report
            .classes
            .iter()
            .filter(|c| c.multiplicity_in_derivative % 2 == 1)
            .map(|c| class_candidate(c, |class| Witness::EvenSquarefreePart { g: g.clone(), class }))
            .collect();
        decide(cands, "no root of the odd-multiplicity part")
    };
    entries.push(entry(Criterion::EvenSquarefreePart, even_part));

    let rational: Vec<&CriticalClass> = report.classes.iter().filter(|c| c.point.is_some()).collect();
    let status_and_step = |c: &CriticalClass| {
        let step = match c.orbit.as_ref().map(|o| o.status) {
            Some(OrbitStatus::Wandering { certified_at_step }) => certified_at_step,
            _ => 0,
        };
        (c.status(), step)
    };

    let cands = rational
        .iter()
        .filter_map(|c| {
            let a = c.point.clone().unwrap();
            let k = c.mult_under_f;
            let (g, b) = cofactor_at(f, &a, k)?;
            let q = coprime_prime_factor(k, g.deg())?;
            let (status, step) = status_and_step(c);
            Some((status, Some(Witness::CoprimeCofactor { a, k, q, g, b, certified_at_step: step })))
        })
        .collect();
    entries.push(entry(Criterion::CoprimeCofactor, decide(cands, "no rational critical point has a suitable multiplicity")));

    let trinomial = rational.iter().find_map(|c| {
        let a = c.point.clone().unwrap();
        let (dd, k, r, s, b) = trinomial_at(f, &a)?;
        (dd % 2 == 1 && k.gcd(&dd) == 1).then_some((a, dd, k, r, s, b))
    });
    let trinomial = match trinomial {
        None => (Verdict::DoesNotApply, None, "no matching two-term expansion at a rational critical point".into()),
        Some((a, dd, k, r, s, b)) => {
            let cands = report
                .classes
                .iter()
                .map(|c| {
                    class_candidate(c, |class| Witness::OddTrinomial {
                        a: a.clone(),
                        d: dd,
                        k,
                        r: r.clone(),
                        s: s.clone(),
                        b: b.clone(),
                        class,
                    })
                })
                .collect();
            decide(cands, "no critical points")
        }
    };
    entries.push(entry(Criterion::OddTrinomial, trinomial));

    let cands = rational
        .iter()
        .filter_map(|c| {
            let a = c.point.clone().unwrap();
            let k = c.mult_under_f;
            if k % 2 == 0 || d.is_multiple_of(k) {
                return None;
            }
            let (g, b) = cofactor_at(f, &a, k)?;
            if !is_separable(&g) {
                return None;
            }
            let (status, step) = status_and_step(c);
            Some((status, Some(Witness::OddMultiplicity { a, k, g, b, certified_at_step: step })))
        })
        .collect();
    entries.push(entry(Criterion::OddMultiplicity, decide(cands, "no rational critical point of odd multiplicity prime to the degree with separable cofactor")));

    let cands = report
        .critical_values_rational
        .iter()
        .filter_map(|cv| {
            let parts = cv.fiber_cycle_type.parts();
            let (m, k) = (parts[0] as usize, *parts.get(1)? as usize);
            if parts[2..].iter().any(|&x| x != 1) || !is_prime_u64(k as u64) || !is_prime_u64(m as u64) || k + 2 > m {
                return None;
            }
            let (root_k, root_m, g) = fiber_pair_roots(f, &cv.value, k, m)?;
            let orbit = orbit_classify(f, &cv.value, max_steps);
            let (status, step) = match orbit.status {
                OrbitStatus::Wandering { certified_at_step } => (ClassStatus::Wandering, certified_at_step),
                OrbitStatus::Preperiodic { .. } => (ClassStatus::Preperiodic, 0),
                OrbitStatus::Undetermined { .. } => (ClassStatus::Undetermined, 0),
            };
            let w = Witness::PrimeFiberPair { c: cv.value.clone(), k, m, root_k, root_m, g, certified_at_step: step };
            Some((status, Some(w)))
        })
        .collect();
    entries.push(entry(Criterion::PrimeFiberPair, decide(cands, "no rational critical value with a fiber of type (m, k, 1, …)")));

    HypothesisReport { entries }
}

/// The rational roots of multiplicity `k` and `m` in `f − c`, and the cofactor.
fn fiber_pair_roots(f: &PolyQ, c: &Rational, k: usize, m: usize) -> Option<(Rational, Rational, PolyQ)> {
    let h = f - &PolyQ::constant(c.clone());
    let roots = crate::exactalg::rational_roots(&h);
    let root_k = roots.iter().find(|(_, mult)| *mult == k)?.0.clone();
    let root_m = roots.iter().find(|(_, mult)| *mult == m)?.0.clone();
    let g = h.div_exact(&(&power_of_linear(&root_k, k) * &power_of_linear(&root_m, m)))?;
    Some((root_k, root_m, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn p(s: &str) -> PolyQ {
        parse_poly(s).unwrap()
    }

    fn assert_witnesses_verify(f: &PolyQ, r: &HypothesisReport) {
        for e in &r.entries {
            if e.verdict == Verdict::Applies {
                let w = e.witness.as_ref().expect("applies carries a witness");
                assert_eq!(w.criterion(), e.criterion);
                assert!(w.verify(f, 64), "{:?} witness failed", e.criterion);
            }
        }
    }

    #[test]
    fn quadratic_plus_one() {
        let f = p("x^2+1");
        let r = check_hypotheses(&f, 64);
        assert_eq!(r.verdict(Criterion::CoprimeMultiplicity), Verdict::DoesNotApply);
        assert_eq!(r.verdict(Criterion::PrimeDegree), Verdict::Applies);
        assert!(matches!(r.get(Criterion::PrimeDegree).witness, Some(Witness::PrimeDegree { unicritical: true, .. })));
        assert_witnesses_verify(&f, &r);
    }

    #[test]
    fn chebyshev_cubic_is_excluded() {
        let r = check_hypotheses(&p("x^3-3x"), 64);
        for e in &r.entries {
            assert_eq!(e.verdict, Verdict::DoesNotApply, "{:?}", e.criterion);
        }
    }

    #[test]
    fn odd_multiplicity_example() {
        let f = p("(x^2-2)*(x-1)^3 + 5");
        let r = check_hypotheses(&f, 64);
        assert_eq!(r.verdict(Criterion::OddMultiplicity), Verdict::Applies);
        assert_eq!(r.verdict(Criterion::CoprimeMultiplicity), Verdict::Applies);
        match &r.get(Criterion::OddMultiplicity).witness {
            Some(Witness::OddMultiplicity { a, k, g, .. }) => {
                assert_eq!((a, *k), (&crate::exactalg::rational::rat(1), 3));
                assert_eq!(g, &p("x^2-2"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_witnesses_verify(&f, &r);
    }

    #[test]
    fn trinomial_and_fiber_pair() {
        // x^5 + x^2 + 1 around 0: d = 5, k = 2.
        let f = p("x^5 + x^2 + 1");
        let r = check_hypotheses(&f, 64);
        assert_ne!(r.verdict(Criterion::OddTrinomial), Verdict::DoesNotApply);
        assert_witnesses_verify(&f, &r);

        // (x)^2 (x-1)^5 (x+2) + 3: fiber over 3 has type (5, 2, 1).
        let f = p("x^2*(x-1)^5*(x+2) + 3");
        let r = check_hypotheses(&f, 64);
        assert_eq!(r.verdict(Criterion::PrimeFiberPair), Verdict::Applies);
        assert_witnesses_verify(&f, &r);
    }

    #[test]
    fn even_squarefree_part() {
        // f' = 3x^2 - 3 is squarefree of degree 2; x^3 - 3x + 1 has wandering critical points.
        let f = p("x^3 - 3x + 1");
        let r = check_hypotheses(&f, 64);
        assert_eq!(r.verdict(Criterion::EvenSquarefreePart), Verdict::Applies);
        assert_witnesses_verify(&f, &r);
    }

    #[test]
    fn tampered_witness_fails() {
        let f = p("(x^2-2)*(x-1)^3 + 5");
        let r = check_hypotheses(&f, 64);
        let Some(Witness::OddMultiplicity { a, g, b, certified_at_step, .. }) = r.get(Criterion::OddMultiplicity).witness.clone() else {
            panic!()
        };
        let bad = Witness::OddMultiplicity { a, k: 5, g, b, certified_at_step };
        assert!(!bad.verify(&f, 64));
    }
}
