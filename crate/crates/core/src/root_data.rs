//! Untwisted affine root data, weights in the (Λ_0,…,Λ_n, δ) basis, simple
//! reflections, and the short-root subsystem with its restriction/splitting maps.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Q;

const DOMINANTIZE_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FiniteType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FiniteType {
    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => FiniteType::A,
            'B' => FiniteType::B,
            'C' => FiniteType::C,
            'D' => FiniteType::D,
            'E' => FiniteType::E,
            'F' => FiniteType::F,
            'G' => FiniteType::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            FiniteType::A => 'A',
            FiniteType::B => 'B',
            FiniteType::C => 'C',
            FiniteType::D => 'D',
            FiniteType::E => 'E',
            FiniteType::F => 'F',
            FiniteType::G => 'G',
        }
    }
}

/// Which weight lattice a [`Weight`] lives in. The `Sh` variants belong to the
/// affine algebra generated by the short simple roots and `α_0^sh`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Lattice {
    Phat,
    PhatCl,
    PhatSh,
    PhatShCl,
}

impl Lattice {
    pub fn has_delta(self) -> bool {
        matches!(self, Lattice::Phat | Lattice::PhatSh)
    }

    pub fn cl(self) -> Self {
        match self {
            Lattice::Phat | Lattice::PhatCl => Lattice::PhatCl,
            Lattice::PhatSh | Lattice::PhatShCl => Lattice::PhatShCl,
        }
    }

    pub fn is_short(self) -> bool {
        matches!(self, Lattice::PhatSh | Lattice::PhatShCl)
    }
}

/// Element of P̂ (or a sibling lattice): coefficients on Λ_0..Λ_n plus a δ
/// coefficient, which is always zero on the cl lattices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight {
    lattice: Lattice,
    coords: Vec<Q>,
    delta: Q,
}

impl Weight {
    pub fn new(lattice: Lattice, coords: Vec<Q>, delta: Q) -> Self {
        assert!(
            lattice.has_delta() || delta.is_zero(),
            "cl weights carry no δ coefficient"
        );
        Weight {
            lattice,
            coords,
            delta,
        }
    }

    pub fn from_ints(lattice: Lattice, coords: &[i64], delta: i64) -> Self {
        Weight::new(
            lattice,
            coords.iter().map(|&c| Q::from_integer(c)).collect(),
            Q::from_integer(delta),
        )
    }

    pub fn zero(lattice: Lattice, len: usize) -> Self {
        Weight::new(lattice, vec![Q::zero(); len], Q::zero())
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// ⟨x, α_i^∨⟩.
    pub fn pair(&self, i: usize) -> Q {
        self.coords[i]
    }

    pub fn delta(&self) -> Q {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.delta.is_zero() && self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.delta.is_integer() && self.coords.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: Q) -> Weight {
        Weight {
            lattice: self.lattice,
            coords: self.coords.iter().map(|x| x * c).collect(),
            delta: self.delta * c,
        }
    }

    pub fn cl(&self) -> Weight {
        Weight {
            lattice: self.lattice.cl(),
            coords: self.coords.clone(),
            delta: Q::zero(),
        }
    }

    pub fn shift_delta(&self, k: Q) -> Weight {
        assert!(self.lattice.has_delta());
        Weight {
            lattice: self.lattice,
            coords: self.coords.clone(),
            delta: self.delta + k,
        }
    }

    /// x + c·y without intermediate allocation.
    pub fn add_scaled(&self, c: Q, y: &Weight) -> Weight {
        debug_assert_eq!(self.lattice, y.lattice);
        let coords = self
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| a + c * b)
            .collect();
        let delta = if self.lattice.has_delta() {
            self.delta + c * y.delta
        } else {
            Q::zero()
        };
        Weight {
            lattice: self.lattice,
            coords,
            delta,
        }
    }

    /// Compact text form, e.g. `[1,0,-1|2]` (the part after `|` is δ).
    pub fn fmt_short(&self) -> String {
        let c: Vec<String> = self.coords.iter().map(|q| q.to_string()).collect();
        if self.lattice.has_delta() {
            format!("[{}|{}]", c.join(","), self.delta)
        } else {
            format!("[{}]", c.join(","))
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_short())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.add_scaled(Q::one(), rhs)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.add_scaled(-Q::one(), rhs)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-Q::one())
    }
}

/// A word i_1 … i_k standing for s_{i_1}⋯s_{i_k}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Acts on `x`, rightmost letter first.
    pub fn apply(&self, rs: &RootSystem, x: &Weight) -> Weight {
        self.0
            .iter()
            .rev()
            .fold(x.clone(), |acc, &i| rs.reflect(i, &acc))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: FiniteType,
    rank: usize,
    /// cartan[i][j] = ⟨α_j, α_i^∨⟩ over Î.
    cartan: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    sq_len: Vec<Q>,
    r: i64,
    short_nodes: Vec<usize>,
    lattice: Lattice,
    roots: Vec<Weight>,
    /// Inverse of the finite Cartan matrix (indices shifted by one).
    inv_cartan: Vec<Vec<Q>>,
    short: Option<Box<ShortSubsystem>>,
}

/// The affine algebra attached to the short simple roots together with
/// α_0^sh = δ − θ^sh, modelled as an untwisted affine system of type A.
#[derive(Clone, Debug)]
pub struct ShortSubsystem {
    /// Finite nodes of the ambient system in I^sh, increasing; node `p` of
    /// `sub` corresponds to `nodes[p - 1]`.
    nodes: Vec<usize>,
    sub: RootSystem,
    /// i_sh(ϖ̄_p) for p = 1..=k as level-zero ambient weights.
    varpi_images: Vec<Weight>,
}

fn finite_cartan(ty: FiniteType, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::Unsupported(ty.letter(), n);
    let min = match ty {
        FiniteType::A => 1,
        FiniteType::B | FiniteType::C => 2,
        FiniteType::D => 4,
        FiniteType::E => 6,
        FiniteType::F | FiniteType::G => 0,
    };
    if n < min {
        return Err(bad());
    }
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let bond = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    };
    match ty {
        FiniteType::A => {
            for i in 1..n {
                bond(&mut c, i, i + 1);
            }
        }
        FiniteType::B => {
            for i in 1..n {
                bond(&mut c, i, i + 1);
            }
            // α_n short
            c[n - 1][n - 2] = -2;
        }
        FiniteType::C => {
            for i in 1..n {
                bond(&mut c, i, i + 1);
            }
            // α_n long
            c[n - 2][n - 1] = -2;
        }
        FiniteType::D => {
            for i in 1..n - 1 {
                bond(&mut c, i, i + 1);
            }
            bond(&mut c, n - 2, n);
        }
        FiniteType::E => {
            if n > 8 {
                return Err(bad());
            }
            // chain 1..n-1, node n attached to node 3 (E6), 3 (E7) or 5 (E8)
            for i in 1..n - 1 {
                bond(&mut c, i, i + 1);
            }
            let branch = if n == 8 { 5 } else { 3 };
            bond(&mut c, branch, n);
        }
        FiniteType::F => {
            if n != 4 {
                return Err(bad());
            }
            bond(&mut c, 1, 2);
            bond(&mut c, 2, 3);
            bond(&mut c, 3, 4);
            // α_1, α_2 long; α_3, α_4 short
            c[2][1] = -2;
        }
        FiniteType::G => {
            if n != 2 {
                return Err(bad());
            }
            // α_1 long, α_2 short
            c[0][1] = -1;
            c[1][0] = -3;
        }
    }
    Ok(c)
}

/// Positive roots of the finite system in α-coordinates.
fn positive_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    let mut out = Vec::new();
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let p: i64 = (0..n).map(|k| b[k] * c[i][k]).sum();
            if p == 0 {
                continue;
            }
            let mut nb = b.clone();
            nb[i] -= p;
            if nb.iter().all(|&x| x >= 0) && seen.insert(nb.clone()) {
                queue.push_back(nb);
            }
        }
        out.push(b);
    }
    out
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("finite Cartan matrices are invertible");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl RootSystem {
    pub fn new(ty: FiniteType, rank: usize) -> Result<Self> {
        Self::build(ty, rank, Lattice::Phat)
    }

    pub fn from_letter(letter: char, rank: usize) -> Result<Self> {
        let ty = FiniteType::from_letter(letter).ok_or(Error::Unsupported(letter, rank))?;
        Self::new(ty, rank)
    }

    fn build(ty: FiniteType, n: usize, lattice: Lattice) -> Result<Self> {
        let fc = finite_cartan(ty, n)?;

        // squared lengths from the symmetrizability of the diagram (connected)
        let mut len: Vec<Option<Q>> = vec![None; n];
        len[0] = Some(Q::one());
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if j != i && fc[i][j] != 0 && len[j].is_none() {
                    // (α_i,α_i) C_ij = (α_j,α_j) C_ji
                    len[j] = Some(len[i].unwrap() * Q::new(fc[i][j], fc[j][i]));
                    stack.push(j);
                }
            }
        }
        let len: Vec<Q> = len
            .into_iter()
            .map(|l| l.expect("connected diagram"))
            .collect();
        let long = len.iter().copied().max().unwrap();
        let sq_len_fin: Vec<Q> = len.iter().map(|l| l * Q::from_integer(2) / long).collect();
        let short_len = *sq_len_fin.iter().min().unwrap();
        let r = (Q::from_integer(2) / short_len).to_integer();

        let theta = positive_roots(&fc)
            .into_iter()
            .max_by_key(|b| b.iter().sum::<i64>())
            .unwrap();
        let mut marks = vec![1i64];
        marks.extend(theta.iter().copied());
        let mut comarks = vec![1i64];
        for i in 0..n {
            let a = Q::from_integer(theta[i]) * sq_len_fin[i] / Q::from_integer(2);
            assert!(a.is_integer());
            comarks.push(a.to_integer());
        }

        let mut cartan = vec![vec![0i64; n + 1]; n + 1];
        cartan[0][0] = 2;
        for (row, frow) in cartan[1..].iter_mut().zip(&fc) {
            row[1..].copy_from_slice(frow);
        }
        #[allow(clippy::needless_range_loop)]
        for i in 1..=n {
            // ⟨α_0, α_i^∨⟩ = −⟨θ, α_i^∨⟩
            cartan[i][0] = -(1..=n).map(|j| marks[j] * cartan[i][j]).sum::<i64>();
            // ⟨α_i, α_0^∨⟩ = −⟨α_i, θ^∨⟩
            cartan[0][i] = -(1..=n).map(|k| comarks[k] * cartan[k][i]).sum::<i64>();
        }

        let mut sq_len = vec![Q::from_integer(2)];
        sq_len.extend(sq_len_fin.iter().copied());
        let short_nodes: Vec<usize> = if r == 1 {
            Vec::new()
        } else {
            (1..=n)
                .filter(|&i| sq_len[i] < Q::from_integer(2))
                .collect()
        };

        let roots = (0..=n)
            .map(|j| {
                let coords: Vec<i64> = (0..=n).map(|i| cartan[i][j]).collect();
                let d = if j == 0 && lattice.has_delta() { 1 } else { 0 };
                Weight::from_ints(lattice, &coords, d)
            })
            .collect();

        let mut rs = RootSystem {
            ty,
            rank: n,
            cartan,
            marks,
            comarks,
            sq_len,
            r,
            short_nodes,
            lattice,
            roots,
            inv_cartan: invert(&fc),
            short: None,
        };
        if r > 1 && !lattice.is_short() {
            rs.short = Some(Box::new(ShortSubsystem::build(&rs)?));
        }
        Ok(rs)
    }

    pub fn finite_type(&self) -> FiniteType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.ty.letter(), self.rank)
    }

    pub fn spec_json(&self) -> serde_json::Value {
        serde_json::json!({ "type": self.ty.letter().to_string(), "rank": self.rank })
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    /// Î = {0, …, n}.
    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.rank
    }

    /// I = {1, …, n}.
    pub fn finite_nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// Coefficients a_i of δ = Σ a_i α_i (so θ = Σ_{i∈I} a_i α_i).
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Coefficients a_i^∨ of K = Σ a_i^∨ α_i^∨.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    /// (α_i, α_i) with long roots of squared length 2.
    pub fn squared_length(&self, i: usize) -> Q {
        self.sq_len[i]
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn is_simply_laced(&self) -> bool {
        self.r == 1
    }

    pub fn short_nodes(&self) -> &[usize] {
        &self.short_nodes
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i <= self.rank {
            Ok(())
        } else {
            Err(Error::UnknownNode(i))
        }
    }

    pub fn simple_root(&self, i: usize) -> Result<Weight> {
        self.check_node(i)?;
        Ok(self.roots[i].clone())
    }

    /// α_i on the requested lattice (δ dropped on cl lattices).
    pub fn alpha(&self, i: usize, lattice: Lattice) -> Weight {
        if lattice.has_delta() {
            self.roots[i].clone()
        } else {
            self.roots[i].cl()
        }
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.lattice, self.rank + 1)
    }

    pub fn zero_cl(&self) -> Weight {
        Weight::zero(self.lattice.cl(), self.rank + 1)
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut c = vec![0i64; self.rank + 1];
        c[i] = 1;
        Weight::from_ints(self.lattice, &c, 0)
    }

    pub fn null_root(&self) -> Weight {
        Weight::from_ints(self.lattice, &vec![0; self.rank + 1], 1)
    }

    /// ϖ_i = Λ_i − a_i^∨ Λ_0 for i ∈ I.
    pub fn varpi(&self, i: usize) -> Weight {
        assert!((1..=self.rank).contains(&i));
        let mut c = vec![0i64; self.rank + 1];
        c[i] = 1;
        c[0] = -self.comarks[i];
        Weight::from_ints(self.lattice, &c, 0)
    }

    /// Σ c_i ϖ_i for integer coefficients c_1..c_n.
    pub fn classical(&self, coeffs: &[i64]) -> Weight {
        let q: Vec<Q> = coeffs.iter().map(|&c| Q::from_integer(c)).collect();
        self.classical_q(&q)
    }

    pub fn classical_q(&self, coeffs: &[Q]) -> Weight {
        assert_eq!(coeffs.len(), self.rank);
        let mut c = vec![Q::zero(); self.rank + 1];
        for (i, &x) in coeffs.iter().enumerate() {
            c[i + 1] = x;
            c[0] -= x * Q::from_integer(self.comarks[i + 1]);
        }
        Weight::new(self.lattice, c, Q::zero())
    }

    pub fn level(&self, x: &Weight) -> Q {
        x.coords
            .iter()
            .zip(&self.comarks)
            .map(|(c, &a)| c * Q::from_integer(a))
            .sum()
    }

    /// s_i x = x − ⟨x, α_i^∨⟩ α_i.
    pub fn reflect(&self, i: usize, x: &Weight) -> Weight {
        let p = x.pair(i);
        if p.is_zero() {
            return x.clone();
        }
        let mut out = x.clone();
        for (c, &a) in out
            .coords
            .iter_mut()
            .zip(self.cartan.iter().map(|row| &row[i]))
        {
            *c -= p * Q::from_integer(a);
        }
        if i == 0 && x.lattice.has_delta() {
            out.delta -= p;
        }
        out
    }

    pub fn is_dominant(&self, x: &Weight) -> bool {
        x.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_finite_dominant(&self, x: &Weight) -> bool {
        x.coords[1..].iter().all(|c| !c.is_negative())
    }

    /// Level zero with zero δ coefficient.
    pub fn is_classical(&self, x: &Weight) -> bool {
        self.level(x).is_zero() && x.delta.is_zero()
    }

    /// Returns dominant Λ and a word with x = s_{j_1}⋯s_{j_k} Λ.
    pub fn dominantize(&self, x: &Weight) -> Result<(Weight, WeylWord)> {
        if !self.level(x).is_positive() {
            return Err(Error::Invalid(format!(
                "dominantize needs positive level, got {}",
                x
            )));
        }
        if !x.is_integral() {
            return Err(Error::Invalid(format!("non-integral weight {}", x)));
        }
        let mut cur = x.clone();
        let mut word = Vec::new();
        loop {
            match self.nodes().find(|&i| cur.pair(i).is_negative()) {
                None => return Ok((cur, WeylWord(word))),
                Some(i) => {
                    if word.len() >= DOMINANTIZE_CAP {
                        return Err(Error::IterationCap("dominantize"));
                    }
                    cur = self.reflect(i, &cur);
                    word.push(i);
                }
            }
        }
    }

    /// w_0 λ: reflect at finite nodes with positive pairing until none remain.
    pub fn antidominantize_finite(&self, x: &Weight) -> Weight {
        let mut cur = x.clone();
        while let Some(i) = self.finite_nodes().find(|&i| cur.pair(i).is_positive()) {
            cur = self.reflect(i, &cur);
        }
        cur
    }

    /// The dominant element of the finite orbit Wx.
    pub fn dominantize_finite(&self, x: &Weight) -> Weight {
        let mut cur = x.clone();
        while let Some(i) = self.finite_nodes().find(|&i| cur.pair(i).is_negative()) {
            cur = self.reflect(i, &cur);
        }
        cur
    }

    /// Restriction of x to h_d: subtract level(x)·Λ_0.
    pub fn hd_restrict(&self, x: &Weight) -> Weight {
        let lv = self.level(x);
        if lv.is_zero() {
            return x.clone();
        }
        let mut out = x.clone();
        out.coords[0] -= lv;
        out
    }

    /// α-coordinates (over I) of the finite part of x, read from its pairings.
    pub fn root_coords(&self, x: &Weight) -> Vec<Q> {
        let n = self.rank;
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| self.inv_cartan[j][i] * x.coords[i + 1])
                    .sum()
            })
            .collect()
    }

    /// Whether the finite part of x lies in Q_+ (nonnegative integer root sum).
    pub fn in_q_plus(&self, x: &Weight) -> bool {
        self.root_coords(x)
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Whether the finite part of x lies in Q_+^sh.
    pub fn in_q_plus_sh(&self, x: &Weight) -> bool {
        self.root_coords(x).iter().enumerate().all(|(k, c)| {
            c.is_integer()
                && !c.is_negative()
                && (c.is_zero() || self.short_nodes.contains(&(k + 1)))
        })
    }

    /// Height of the finite part of x in the α-basis.
    pub fn height(&self, x: &Weight) -> Q {
        self.root_coords(x).into_iter().sum()
    }

    /// Finite coordinates ⟨x, α_i^∨⟩, i ∈ I.
    pub fn varpi_coords(&self, x: &Weight) -> Vec<Q> {
        x.coords[1..].to_vec()
    }

    /// ⟨β, α_i^∨⟩ for β given in α-coordinates over Î.
    pub fn pair_root_coords(&self, b: &[i64], i: usize) -> i64 {
        b.iter().zip(&self.cartan[i]).map(|(x, c)| x * c).sum()
    }

    /// s_i on a root written in α-coordinates over Î.
    pub fn reflect_root_coords(&self, i: usize, b: &[i64]) -> Vec<i64> {
        let p = self.pair_root_coords(b, i);
        let mut out = b.to_vec();
        out[i] -= p;
        out
    }

    /// Order of s_i s_j (None for ∞).
    pub fn braid_order(&self, i: usize, j: usize) -> Option<usize> {
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => Some(2),
            1 => Some(3),
            2 => Some(4),
            3 => Some(6),
            _ => None,
        }
    }

    pub fn short(&self) -> Result<&ShortSubsystem> {
        self.short.as_deref().ok_or(Error::SimplyLaced)
    }

    pub fn restrict_sh(&self, x: &Weight) -> Result<Weight> {
        let sh = self.short()?;
        Ok(sh.restrict(self, x))
    }

    pub fn include_sh(&self, y: &Weight) -> Result<Weight> {
        let sh = self.short()?;
        Ok(sh.include(self, y))
    }

    /// λ′ = λ − i_sh(λ̄).
    pub fn lambda_prime(&self, lambda: &Weight) -> Result<Weight> {
        let back = self.include_sh(&self.restrict_sh(lambda)?)?;
        Ok(lambda - &back)
    }

    /// The table word τ and index j with τ(α_j) = α_0^sh.
    pub fn tau_data(&self) -> Result<(WeylWord, usize)> {
        if self.is_simply_laced() || self.lattice.is_short() {
            return Err(Error::SimplyLaced);
        }
        let l = self.rank;
        let (word, j) = match self.ty {
            FiniteType::B => {
                let mut w: Vec<usize> = (2..l).rev().collect();
                w.extend([0, 1]);
                w.extend(2..l);
                (w, l)
            }
            FiniteType::C => {
                let mut w: Vec<usize> = (1..=l).rev().collect();
                w.push(0);
                (w, 1)
            }
            FiniteType::F => (vec![2, 3, 1, 2, 3, 4, 0, 1, 2], 3),
            FiniteType::G => (vec![1, 2, 0, 1], 2),
            _ => return Err(Error::SimplyLaced),
        };
        Ok((WeylWord(word), j))
    }

    /// α_0^sh = δ − θ^sh in α-coordinates over Î.
    pub fn alpha0_sh_root_coords(&self) -> Result<Vec<i64>> {
        let sh = self.short()?;
        let mut b: Vec<i64> = self.marks.clone();
        for &i in &sh.nodes {
            b[i] -= 1;
        }
        Ok(b)
    }

    /// Checks both conditions on (τ, j): τ(α_j) = α_0^sh, and no prefix image
    /// s_{i_1}⋯s_{i_{L−1}}(α_{i_L}) is a short finite root plus a multiple of δ.
    pub fn check_tau(&self) -> Result<()> {
        let (tau, j) = self.tau_data()?;
        let n = self.rank;
        let apply = |word: &[usize], b: Vec<i64>| -> Vec<i64> {
            word.iter()
                .rev()
                .fold(b, |acc, &i| self.reflect_root_coords(i, &acc))
        };
        let mut e = vec![0i64; n + 1];
        e[j] = 1;
        let image = apply(&tau.0, e);
        let target = self.alpha0_sh_root_coords()?;
        if image != target {
            return Err(Error::Identity(format!(
                "τ(α_{}) = {:?}, expected {:?}",
                j, image, target
            )));
        }
        for l in 0..tau.len() {
            let mut e = vec![0i64; n + 1];
            e[tau.0[l]] = 1;
            let beta = apply(&tau.0[..l], e);
            // strip the δ part: β − b_0 δ has α-coords b_k − b_0 a_k on I
            let fin: Vec<i64> = (1..=n).map(|k| beta[k] - beta[0] * self.marks[k]).collect();
            let only_short = fin
                .iter()
                .enumerate()
                .all(|(k, &c)| c == 0 || self.short_nodes.contains(&(k + 1)));
            if only_short {
                return Err(Error::Identity(format!(
                    "prefix {} of τ maps α_{} to {:?}, a short root modulo δ",
                    l, tau.0[l], beta
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl ShortSubsystem {
    fn build(rs: &RootSystem) -> Result<Self> {
        let nodes = rs.short_nodes.clone();
        let k = nodes.len();
        let sub = RootSystem::build(FiniteType::A, k, Lattice::PhatSh)?;
        for p in 0..k {
            for q in 0..k {
                if rs.cartan[nodes[p]][nodes[q]] != sub.cartan[p + 1][q + 1] {
                    return Err(Error::Invalid(format!(
                        "short nodes {:?} of {} do not form an A-chain in order",
                        nodes,
                        rs.name()
                    )));
                }
            }
        }
        let varpi_images = (0..k)
            .map(|p| {
                (0..k).fold(rs.zero(), |acc, q| {
                    acc.add_scaled(sub.inv_cartan[q][p], &rs.roots[nodes[q]])
                })
            })
            .collect();
        Ok(ShortSubsystem {
            nodes,
            sub,
            varpi_images,
        })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// The affine system of type A_k standing for ĝ^sh.
    pub fn sub(&self) -> &RootSystem {
        &self.sub
    }

    /// x ↦ x̄; the Λ^sh_0 coordinate is ⟨x, rK − (θ^sh)^∨⟩.
    pub fn restrict(&self, rs: &RootSystem, x: &Weight) -> Weight {
        assert!(!x.lattice.is_short());
        let k = self.nodes.len();
        let mut coords = vec![Q::zero(); k + 1];
        for p in 0..k {
            coords[p + 1] = x.pair(self.nodes[p]);
        }
        coords[0] = Q::from_integer(rs.r) * rs.level(x) - coords[1..].iter().sum::<Q>();
        let lattice = if x.lattice.has_delta() {
            Lattice::PhatSh
        } else {
            Lattice::PhatShCl
        };
        Weight::new(lattice, coords, x.delta)
    }

    /// The splitting i_sh: ᾱ_i ↦ α_i, Λ̄_0 ↦ Λ_0, δ̄ ↦ δ.
    pub fn include(&self, rs: &RootSystem, y: &Weight) -> Weight {
        assert!(y.lattice.is_short());
        let level_sh = self.sub.level(y);
        let mut out = rs
            .fundamental(0)
            .scale(level_sh / Q::from_integer(rs.r))
            .shift_delta(y.delta);
        for (p, img) in self.varpi_images.iter().enumerate() {
            out = out.add_scaled(y.pair(p + 1), img);
        }
        if y.lattice.has_delta() {
            out
        } else {
            out.cl()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn a1_alpha0() {
        let rs = RootSystem::from_letter('A', 1).unwrap();
        assert_eq!(
            rs.simple_root(0).unwrap(),
            Weight::from_ints(Lattice::Phat, &[2, -2], 1)
        );
        assert!(rs.simple_root(2).is_err());
    }

    #[test]
    fn marks_and_comarks() {
        type Case = (char, usize, &'static [i64], &'static [i64], i64);
        let cases: &[Case] = &[
            ('A', 3, &[1, 1, 1, 1], &[1, 1, 1, 1], 1),
            ('B', 3, &[1, 1, 2, 2], &[1, 1, 2, 1], 2),
            ('C', 3, &[1, 2, 2, 1], &[1, 1, 1, 1], 2),
            ('D', 4, &[1, 1, 2, 1, 1], &[1, 1, 2, 1, 1], 1),
            ('F', 4, &[1, 2, 3, 4, 2], &[1, 2, 3, 2, 1], 2),
            ('G', 2, &[1, 2, 3], &[1, 2, 1], 3),
            ('E', 6, &[1, 1, 2, 3, 2, 1, 2], &[1, 1, 2, 3, 2, 1, 2], 1),
        ];
        for &(t, n, a, av, r) in cases {
            let rs = RootSystem::from_letter(t, n).unwrap();
            assert_eq!(rs.marks(), a, "{}{}", t, n);
            assert_eq!(rs.comarks(), av, "{}{}", t, n);
            assert_eq!(rs.r(), r);
            // δ pairs to zero with every coroot, K with every root
            for i in rs.nodes() {
                let s: i64 = rs.nodes().map(|j| rs.cartan_entry(i, j) * a[j]).sum();
                assert_eq!(s, 0);
                let s: i64 = rs.nodes().map(|j| av[j] * rs.cartan_entry(j, i)).sum();
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn short_nodes_per_type() {
        let sh = |t, n| {
            RootSystem::from_letter(t, n)
                .unwrap()
                .short_nodes()
                .to_vec()
        };
        assert_eq!(sh('B', 3), vec![3]);
        assert_eq!(sh('C', 4), vec![1, 2, 3]);
        assert_eq!(sh('F', 4), vec![3, 4]);
        assert_eq!(sh('G', 2), vec![2]);
        assert!(sh('D', 4).is_empty());
    }

    #[test]
    fn generalized_cartan_shape() {
        for (t, n) in [
            ('A', 1),
            ('A', 4),
            ('B', 2),
            ('C', 3),
            ('D', 4),
            ('F', 4),
            ('G', 2),
        ] {
            let rs = RootSystem::from_letter(t, n).unwrap();
            for i in rs.nodes() {
                assert_eq!(rs.cartan_entry(i, i), 2);
                for j in rs.nodes() {
                    if i != j {
                        assert!(rs.cartan_entry(i, j) <= 0);
                        assert_eq!(rs.cartan_entry(i, j) == 0, rs.cartan_entry(j, i) == 0);
                    }
                    assert_eq!(rs.simple_root(j).unwrap().pair(i), q(rs.cartan_entry(i, j)));
                }
                assert!(rs.level(&rs.simple_root(i).unwrap()).is_zero());
            }
        }
    }

    #[test]
    fn reflections_basic() {
        let rs = RootSystem::from_letter('G', 2).unwrap();
        let l0 = rs.fundamental(0);
        for i in rs.finite_nodes() {
            assert_eq!(rs.reflect(i, &l0), l0);
        }
        assert_eq!(rs.reflect(0, &l0), &l0 - &rs.simple_root(0).unwrap());
        let d = rs.null_root();
        for i in rs.nodes() {
            assert_eq!(rs.reflect(i, &d), d);
        }
        let a0 = rs.simple_root(0).unwrap();
        assert_eq!(a0.delta(), q(1));
        assert!(rs.level(&a0).is_zero());
    }

    #[test]
    fn dominantize_a1() {
        let rs = RootSystem::from_letter('A', 1).unwrap();
        let x = &rs.fundamental(0) - &rs.varpi(1);
        let (lam, w) = rs.dominantize(&x).unwrap();
        assert_eq!(lam, rs.fundamental(1));
        assert_eq!(w, WeylWord(vec![1]));
        assert_eq!(w.apply(&rs, &lam), x);
        assert!(rs.dominantize(&rs.varpi(1)).is_err());
    }

    #[test]
    fn antidominant_a1() {
        let rs = RootSystem::from_letter('A', 1).unwrap();
        assert_eq!(rs.antidominantize_finite(&rs.varpi(1)), -&rs.varpi(1));
        assert_eq!(rs.antidominantize_finite(&rs.zero()), rs.zero());
    }

    #[test]
    fn tau_g2_and_c() {
        let g2 = RootSystem::from_letter('G', 2).unwrap();
        let (tau, j) = g2.tau_data().unwrap();
        assert_eq!(tau, WeylWord(vec![1, 2, 0, 1]));
        assert_eq!(j, 2);
        assert_eq!(g2.alpha0_sh_root_coords().unwrap(), vec![1, 2, 2]);
        let c3 = RootSystem::from_letter('C', 3).unwrap();
        assert_eq!(c3.tau_data().unwrap(), (WeylWord(vec![3, 2, 1, 0]), 1));
        let f4 = RootSystem::from_letter('F', 4).unwrap();
        assert_eq!(f4.alpha0_sh_root_coords().unwrap(), vec![1, 2, 3, 3, 1]);
        assert!(RootSystem::from_letter('A', 2).unwrap().tau_data().is_err());
    }

    #[test]
    fn tau_conditions_hold() {
        for (t, n) in [
            ('B', 2),
            ('B', 3),
            ('B', 4),
            ('C', 2),
            ('C', 3),
            ('C', 4),
            ('F', 4),
            ('G', 2),
        ] {
            RootSystem::from_letter(t, n).unwrap().check_tau().unwrap();
        }
    }

    #[test]
    fn short_maps_roundtrip() {
        for (t, n) in [('B', 3), ('C', 2), ('C', 4), ('F', 4), ('G', 2)] {
            let rs = RootSystem::from_letter(t, n).unwrap();
            let sh = rs.short().unwrap();
            for &i in sh.nodes() {
                let a = rs.simple_root(i).unwrap();
                assert_eq!(rs.include_sh(&rs.restrict_sh(&a).unwrap()).unwrap(), a);
            }
            for j in rs.nodes() {
                let a = rs.simple_root(j).unwrap();
                let bar = rs.restrict_sh(&a).unwrap();
                for (p, &i) in sh.nodes().iter().enumerate() {
                    assert_eq!(bar.pair(p + 1), a.pair(i));
                }
            }
            let y = Weight::from_ints(
                Lattice::PhatSh,
                &{
                    let mut v = vec![0; sh.nodes().len() + 1];
                    v[0] = 2;
                    v[1] = -1;
                    v
                },
                3,
            );
            assert_eq!(rs.restrict_sh(&rs.include_sh(&y).unwrap()).unwrap(), y);
            assert_eq!(
                rs.include_sh(&Weight::from_ints(
                    Lattice::PhatSh,
                    &vec![0; sh.nodes().len() + 1],
                    1
                ))
                .unwrap(),
                rs.null_root()
            );
        }
    }

    #[test]
    fn lambda_prime_kills_short_coroots() {
        let rs = RootSystem::from_letter('C', 2).unwrap();
        let lp = rs.lambda_prime(&rs.varpi(1)).unwrap();
        for &i in rs.short_nodes() {
            assert!(lp.pair(i).is_zero());
        }
        assert!(rs.is_classical(&lp));
    }

    #[test]
    fn alpha0_sh_via_sub_system() {
        // the image of α_0^sh under i_sh is δ − θ^sh
        for (t, n) in [('C', 3), ('F', 4), ('G', 2), ('B', 2)] {
            let rs = RootSystem::from_letter(t, n).unwrap();
            let sub = rs.short().unwrap().sub();
            let img = rs.include_sh(&sub.simple_root(0).unwrap()).unwrap();
            let coords = rs.alpha0_sh_root_coords().unwrap();
            let expect = rs.nodes().fold(rs.zero(), |acc, k| {
                acc.add_scaled(q(coords[k]), &rs.simple_root(k).unwrap())
            });
            assert_eq!(img, expect, "{}{}", t, n);
        }
    }
}
