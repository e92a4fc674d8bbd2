//! Randomized and exhaustive checks of the root operators: inverse pairs,
//! weight shifts, string lengths, the tensor rule, cl-compatibility,
//! integrality and the degree bound.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::crystal::{compatible_lift_check, degree_and_weight_check, NormalizedCrystal};
use crate::error::{Error, Result};
use crate::path::Path;
use crate::root_data::{RootSystem, Weight};
use crate::Q;

const STRING_CAP: usize = 1000;

fn fail(msg: String) -> Result<()> {
    Err(Error::Identity(msg))
}

fn string_len(rs: &RootSystem, p: &Path, i: usize, raise: bool) -> Result<i64> {
    let mut cur = p.clone();
    for n in 0..STRING_CAP {
        match cur.op(rs, i, raise)? {
            Some(q) => cur = q,
            None => return Ok(n as i64),
        }
    }
    Err(Error::IterationCap("string_len"))
}

/// All single-path operator laws for every i ∈ Î.
pub fn check_operators(rs: &RootSystem, p: &Path) -> Result<()> {
    let wt = p.endpoint();
    for i in rs.nodes() {
        let (eps, phi) = p.eps_phi(i)?;
        if Q::from_integer(phi - eps) != wt.pair(i) {
            return fail(format!("φ−ε ≠ ⟨wt, α_{}^∨⟩ for {:?}", i, p));
        }
        if string_len(rs, p, i, true)? != eps || string_len(rs, p, i, false)? != phi {
            return fail(format!(
                "string lengths disagree with (ε, φ) at i={} for {:?}",
                i, p
            ));
        }
        let a = rs.alpha(i, wt.lattice());
        for raise in [false, true] {
            let Some(q) = p.op(rs, i, raise)? else {
                continue;
            };
            let sign = if raise {
                Q::from_integer(1)
            } else {
                Q::from_integer(-1)
            };
            if q.endpoint() != wt.add_scaled(sign, &a) {
                return fail(format!("weight shift fails at i={}", i));
            }
            if !q.is_integral() {
                return fail(format!("integrality lost at i={}", i));
            }
            if q.op(rs, i, !raise)?.as_ref() != Some(p) {
                return fail(format!("inverse pair fails at i={} for {:?}", i, p));
            }
            let (e2, f2) = q.eps_phi(i)?;
            let expect = if raise {
                (eps - 1, phi + 1)
            } else {
                (eps + 1, phi - 1)
            };
            if (e2, f2) != expect {
                return fail(format!("(ε, φ) not shifted by one at i={}", i));
            }
            if wt.lattice().has_delta() && p.cl().op(rs, i, raise)? != Some(q.cl()) {
                return fail(format!("cl does not commute with the operator at i={}", i));
            }
        }
        if p.s(rs, i)?.endpoint() != rs.reflect(i, &wt) {
            return fail(format!("S_{} does not reflect the endpoint", i));
        }
    }
    Ok(())
}

/// Operators on π_1 * π_2 follow the signature rule on (π_1, π_2).
pub fn check_tensor_rule(rs: &RootSystem, p1: &Path, p2: &Path) -> Result<()> {
    let p = p1.concat(p2);
    for i in rs.nodes() {
        let (e1, f1) = p1.eps_phi(i)?;
        let (e2, f2) = p2.eps_phi(i)?;
        let (e, f) = p.eps_phi(i)?;
        if (e, f) != (e1 + (e2 - f1).max(0), f2 + (f1 - e2).max(0)) {
            return fail(format!("(ε, φ) of a concatenation at i={}", i));
        }
        let fx = if f1 > e2 {
            p1.f(rs, i)?.map(|q| q.concat(p2))
        } else {
            p2.f(rs, i)?.map(|q| p1.concat(&q))
        };
        let ex = if f1 >= e2 {
            p1.e(rs, i)?.map(|q| q.concat(p2))
        } else {
            p2.e(rs, i)?.map(|q| p1.concat(&q))
        };
        if p.f(rs, i)? != fx || p.e(rs, i)? != ex {
            return fail(format!("tensor rule fails at i={}", i));
        }
    }
    Ok(())
}

/// Every node of a generated B(λ)_cl, plus the lift and degree checks.
pub fn check_crystal(rs: &RootSystem, nc: &NormalizedCrystal) -> Result<()> {
    for p in nc.graph().nodes() {
        check_operators(rs, p)?;
    }
    compatible_lift_check(rs, nc)?;
    degree_and_weight_check(rs, nc)
}

/// A dominant weight with coefficients in 0..=2 on Λ_0..Λ_n (level ≥ 1), or a
/// dominant classical weight when `level_zero`.
pub fn random_dominant(rs: &RootSystem, rng: &mut impl Rng, level_zero: bool) -> Weight {
    let n = rs.rank();
    let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    let lam = rs.classical(&coeffs);
    if level_zero {
        return lam;
    }
    let k = rng.gen_range(1..=2);
    lam.add_scaled(Q::from_integer(k), &rs.fundamental(0))
}

/// A random walk of f̃/ẽ steps from a straight-line path.
pub fn random_path(rs: &RootSystem, rng: &mut impl Rng) -> Result<Path> {
    let level_zero = rng.gen_bool(0.5);
    let start = random_dominant(rs, rng, level_zero);
    let mut p = Path::straight(start);
    let steps = rng.gen_range(0..=12);
    for _ in 0..steps {
        let i = rng.gen_range(0..=rs.rank());
        // mostly lower, so highest-weight walks make progress
        if let Some(q) = p.op(rs, i, rng.gen_bool(0.25))? {
            p = q;
        }
    }
    Ok(p)
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub system: String,
    pub paths: usize,
    pub pairs: usize,
    pub failures: Vec<String>,
}

/// `n` random paths, each checked alone and concatenated with a second one.
pub fn run_suite(rs: &RootSystem, seed: u64, n: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut pairs = 0;
    for k in 0..n {
        let r = random_path(rs, &mut rng).and_then(|p| {
            check_operators(rs, &p)?;
            let q = random_path(rs, &mut rng)?;
            pairs += 1;
            check_tensor_rule(rs, &p, &q)
        });
        if let Err(e) = r {
            failures.push(format!("sample {}: {}", k, e));
        }
    }
    SuiteReport {
        system: rs.name(),
        paths: n,
        pairs,
        failures,
    }
}
