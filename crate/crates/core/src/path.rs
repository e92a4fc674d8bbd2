//! Piecewise-linear paths with rational breakpoints and the root operators.
//!
//! A path is stored as an expression (μ_1,…,μ_N; σ_0,…,σ_N) meaning
//! π(t) = Σ_{q<p} (σ_q − σ_{q−1}) μ_q + (t − σ_{p−1}) μ_p on [σ_{p−1}, σ_p].
//! Adjacent equal directions are always merged, so derived equality is path
//! equality.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::root_data::{Lattice, RootSystem, Weight, WeylWord};
use crate::Q;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Path {
    dirs: Vec<Weight>,
    sigma: Vec<Q>,
}

/// t ↦ ⟨π(t), α_i^∨⟩ sampled at the breakpoints of π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HProfile {
    pub times: Vec<Q>,
    pub values: Vec<Q>,
    pub min: Q,
}

impl HProfile {
    pub fn end(&self) -> Q {
        *self.values.last().unwrap()
    }

    fn slope(&self, seg: usize) -> Q {
        // segment `seg` spans times[seg-1]..times[seg]
        (self.values[seg] - self.values[seg - 1]) / (self.times[seg] - self.times[seg - 1])
    }

    /// Values of all local minima, with t = 0 always included and t = 1
    /// included when the function is decreasing into it.
    pub fn local_minima(&self) -> Vec<Q> {
        let n = self.times.len() - 1;
        let signs: Vec<Ordering> = (1..=n).map(|s| self.slope(s).cmp(&Q::zero())).collect();
        let mut out = vec![Q::zero()];
        let mut last_nonzero = Ordering::Equal;
        for p in 1..=n {
            if signs[p - 1] != Ordering::Equal {
                last_nonzero = signs[p - 1];
            }
            if last_nonzero != Ordering::Less {
                continue;
            }
            let next = signs[p..].iter().find(|&&s| s != Ordering::Equal);
            match next {
                None | Some(Ordering::Greater) => out.push(self.values[p]),
                _ => {}
            }
        }
        out
    }
}

impl Path {
    /// The straight line π_μ(t) = tμ.
    pub fn straight(mu: Weight) -> Path {
        Path {
            dirs: vec![mu],
            sigma: vec![Q::zero(), Q::one()],
        }
    }

    /// Builds a path from an expression, merging equal neighbours.
    pub fn from_expression(dirs: Vec<Weight>, sigma: Vec<Q>) -> Result<Path> {
        if dirs.is_empty() || sigma.len() != dirs.len() + 1 {
            return Err(Error::Invalid("expression length mismatch".into()));
        }
        if !sigma[0].is_zero() || !sigma.last().unwrap().is_one() {
            return Err(Error::Invalid("breakpoints must run from 0 to 1".into()));
        }
        if sigma.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("breakpoints must increase strictly".into()));
        }
        let lat = dirs[0].lattice();
        let len = dirs[0].len();
        if dirs.iter().any(|d| d.lattice() != lat || d.len() != len) {
            return Err(Error::Invalid("directions from different lattices".into()));
        }
        Ok(Path::canonical(dirs, sigma))
    }

    fn canonical(dirs: Vec<Weight>, sigma: Vec<Q>) -> Path {
        let mut nd: Vec<Weight> = Vec::with_capacity(dirs.len());
        let mut ns = vec![sigma[0]];
        for (d, s) in dirs.into_iter().zip(sigma.into_iter().skip(1)) {
            if nd.last() == Some(&d) {
                *ns.last_mut().unwrap() = s;
            } else {
                nd.push(d);
                ns.push(s);
            }
        }
        Path {
            dirs: nd,
            sigma: ns,
        }
    }

    pub fn directions(&self) -> &[Weight] {
        &self.dirs
    }

    pub fn breakpoints(&self) -> &[Q] {
        &self.sigma
    }

    pub fn lattice(&self) -> Lattice {
        self.dirs[0].lattice()
    }

    /// ι(π) = μ_1.
    pub fn initial_direction(&self) -> &Weight {
        &self.dirs[0]
    }

    /// π(1).
    pub fn endpoint(&self) -> Weight {
        let mut acc = Weight::zero(self.lattice(), self.dirs[0].len());
        for (p, d) in self.dirs.iter().enumerate() {
            acc = acc.add_scaled(self.sigma[p + 1] - self.sigma[p], d);
        }
        acc
    }

    pub fn h_profile(&self, i: usize) -> HProfile {
        let mut values = Vec::with_capacity(self.sigma.len());
        let mut v = Q::zero();
        let mut min = Q::zero();
        values.push(v);
        for (p, d) in self.dirs.iter().enumerate() {
            v += (self.sigma[p + 1] - self.sigma[p]) * d.pair(i);
            if v < min {
                min = v;
            }
            values.push(v);
        }
        HProfile {
            times: self.sigma.clone(),
            values,
            min,
        }
    }

    /// Every local minimum of every H_i is an integer.
    pub fn is_integral(&self) -> bool {
        (0..self.dirs[0].len()).all(|i| {
            self.h_profile(i)
                .local_minima()
                .iter()
                .all(|v| v.is_integer())
        })
    }

    /// cl(π): drop the δ coordinate of every direction.
    pub fn cl(&self) -> Path {
        Path::canonical(
            self.dirs.iter().map(Weight::cl).collect(),
            self.sigma.clone(),
        )
    }

    /// π + π_{kδ}.
    pub fn shift_delta(&self, k: Q) -> Path {
        Path {
            dirs: self.dirs.iter().map(|d| d.shift_delta(k)).collect(),
            sigma: self.sigma.clone(),
        }
    }

    /// Applies `f` to every direction; the result is re-canonicalized.
    pub fn map_directions(&self, f: impl Fn(&Weight) -> Weight) -> Path {
        Path::canonical(self.dirs.iter().map(f).collect(), self.sigma.clone())
    }

    /// Expression refined so that `t` is a breakpoint.
    fn refine(&self, t: Q) -> (Vec<Weight>, Vec<Q>) {
        let mut dirs = self.dirs.clone();
        let mut sigma = self.sigma.clone();
        if let Err(pos) = sigma.binary_search(&t) {
            // t lies strictly inside segment pos (spanning sigma[pos-1]..sigma[pos])
            sigma.insert(pos, t);
            let d = dirs[pos - 1].clone();
            dirs.insert(pos - 1, d);
        }
        (dirs, sigma)
    }

    /// Reflects the directions on [t0, t1] by s_i; t1 must be a breakpoint.
    fn reflect_between(&self, rs: &RootSystem, i: usize, t0: Q, t1: Q) -> Path {
        let (mut dirs, sigma) = self.refine(t0);
        for p in 0..dirs.len() {
            if sigma[p] >= t0 && sigma[p + 1] <= t1 {
                dirs[p] = rs.reflect(i, &dirs[p]);
            }
        }
        Path::canonical(dirs, sigma)
    }

    /// ẽ_i π, or `None` when m_i^π = 0.
    pub fn e(&self, rs: &RootSystem, i: usize) -> Result<Option<Path>> {
        let h = self.h_profile(i);
        let m = h.min;
        if !m.is_integer() {
            return Err(Error::NonIntegral);
        }
        if !m.is_negative() {
            return Ok(None);
        }
        let c = m + Q::one();
        let p1 = h.values.iter().position(|&v| v == m).unwrap();
        let t1 = h.times[p1];
        let mut t0 = None;
        for p in (1..=p1).rev() {
            let (a, b) = (h.values[p - 1], h.values[p]);
            if b == c {
                t0 = Some(h.times[p]);
                break;
            }
            if a == c || (a - c) * (b - c) < Q::zero() {
                t0 = Some(h.times[p - 1] + (c - a) / (b - a) * (h.times[p] - h.times[p - 1]));
                break;
            }
        }
        let t0 = t0.expect("H starts at 0 ≥ m + 1");
        Ok(Some(self.reflect_between(rs, i, t0, t1)))
    }

    /// f̃_i π, or `None` when H_i^π(1) < m_i^π + 1.
    pub fn f(&self, rs: &RootSystem, i: usize) -> Result<Option<Path>> {
        let h = self.h_profile(i);
        let m = h.min;
        if !m.is_integer() {
            return Err(Error::NonIntegral);
        }
        let c = m + Q::one();
        if h.end() < c {
            return Ok(None);
        }
        let p0 = h.values.iter().rposition(|&v| v == m).unwrap();
        let t0 = h.times[p0];
        let mut t1 = None;
        for p in p0 + 1..h.values.len() {
            let (a, b) = (h.values[p - 1], h.values[p]);
            if a == c {
                t1 = Some(h.times[p - 1]);
                break;
            }
            if b == c || (a - c) * (b - c) < Q::zero() {
                t1 = Some(h.times[p - 1] + (c - a) / (b - a) * (h.times[p] - h.times[p - 1]));
                break;
            }
        }
        let t1 = t1.expect("H(1) ≥ m + 1");
        // make t1 a breakpoint first, then reflect [t0, t1]
        let (dirs, sigma) = self.refine(t1);
        let refined = Path { dirs, sigma };
        Ok(Some(refined.reflect_between(rs, i, t0, t1)))
    }

    /// (ε_i, φ_i) = (−m_i, H_i(1) − m_i).
    pub fn eps_phi(&self, i: usize) -> Result<(i64, i64)> {
        let h = self.h_profile(i);
        let (e, p) = (-h.min, h.end() - h.min);
        if !e.is_integer() || !p.is_integer() {
            return Err(Error::NonIntegral);
        }
        Ok((e.to_integer(), p.to_integer()))
    }

    /// Half-speed concatenation π_1 * π_2.
    pub fn concat(&self, other: &Path) -> Path {
        assert_eq!(self.lattice(), other.lattice());
        let two = Q::from_integer(2);
        let half = Q::new(1, 2);
        let mut dirs: Vec<Weight> = self.dirs.iter().map(|d| d.scale(two)).collect();
        dirs.extend(other.dirs.iter().map(|d| d.scale(two)));
        let mut sigma: Vec<Q> = self.sigma.iter().map(|s| s * half).collect();
        sigma.extend(other.sigma[1..].iter().map(|s| half + s * half));
        Path::canonical(dirs, sigma)
    }

    /// S_i: f̃_i^ℓ if ℓ = ⟨π(1), α_i^∨⟩ ≥ 0, else ẽ_i^{−ℓ}.
    pub fn s(&self, rs: &RootSystem, i: usize) -> Result<Path> {
        let l = self.endpoint().pair(i);
        if !l.is_integer() {
            return Err(Error::NonIntegral);
        }
        let l = l.to_integer();
        let mut cur = self.clone();
        for _ in 0..l.abs() {
            let next = if l > 0 { cur.f(rs, i)? } else { cur.e(rs, i)? };
            cur = next.ok_or(Error::NonIntegral)?;
        }
        Ok(cur)
    }

    /// S_w, rightmost letter first.
    pub fn weyl_act(&self, rs: &RootSystem, w: &WeylWord) -> Result<Path> {
        w.0.iter()
            .rev()
            .try_fold(self.clone(), |acc, &i| acc.s(rs, i))
    }

    /// Applies ẽ_i / f̃_i according to `raise`.
    pub fn op(&self, rs: &RootSystem, i: usize, raise: bool) -> Result<Option<Path>> {
        if raise {
            self.e(rs, i)
        } else {
            self.f(rs, i)
        }
    }

    pub fn num_segments(&self) -> usize {
        self.dirs.len()
    }
}
