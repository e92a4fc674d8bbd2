//! Formal characters: finitely supported integer sums of e(weight), their
//! projections, the i_sh pushforward, finite irreducible characters, graded
//! multiplicities and the peeling of Demazure characters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::crystal::generate;
use crate::demazure::{demazure_character, demazure_params};
use crate::error::{Error, Result};
use crate::path::Path;
use crate::root_data::{RootSystem, Weight};
use crate::Q;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    terms: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn new() -> Self {
        Character::default()
    }

    pub fn monomial(w: Weight) -> Self {
        let mut c = Character::new();
        c.add_term(w, 1);
        c
    }

    pub fn from_weights(ws: impl IntoIterator<Item = Weight>) -> Self {
        let mut c = Character::new();
        for w in ws {
            c.add_term(w, 1);
        }
        c
    }

    pub fn add_term(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if *v == 0 {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients (the dimension for a module character).
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Character) -> Character {
        self.add_scaled(1, other)
    }

    pub fn sub(&self, other: &Character) -> Character {
        self.add_scaled(-1, other)
    }

    pub fn add_scaled(&self, c: i64, other: &Character) -> Character {
        let mut out = self.clone();
        for (w, &v) in &other.terms {
            out.add_term(w.clone(), c * v);
        }
        out
    }

    pub fn scale(&self, c: i64) -> Character {
        Character::new().add_scaled(c, self)
    }

    /// e(x)·χ.
    pub fn shift(&self, x: &Weight) -> Character {
        self.map_weights(|w| w + x)
    }

    /// Convolution product.
    pub fn mul(&self, other: &Character) -> Character {
        let mut out = Character::new();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// Pushforward along a map of weights.
    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> Character {
        let mut out = Character::new();
        for (w, &c) in &self.terms {
            out.add_term(f(w), c);
        }
        out
    }

    /// P_S: keep the terms whose weight satisfies `keep`.
    pub fn project(&self, keep: impl Fn(&Weight) -> bool) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, &c)| (w.clone(), c))
                .collect(),
        }
    }

    /// Terms of self − other, for failure reports.
    pub fn diff_report(&self, other: &Character) -> String {
        let d = self.sub(other);
        let mut s = String::new();
        for (w, c) in d.iter().take(20) {
            s.push_str(&format!("{:+} e{}; ", c, w));
        }
        if d.len() > 20 {
            s.push_str(&format!("… ({} terms)", d.len()));
        }
        s
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.iter().map(|(w, c)| format!("{}·e{}", c, w)).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// x ∈ λ − Q_+ (same δ coefficient).
pub fn below(rs: &RootSystem, lambda: &Weight, x: &Weight) -> bool {
    x.delta() == lambda.delta() && rs.in_q_plus(&(lambda - x))
}

/// x ∈ λ − Q_+^sh.
pub fn below_sh(rs: &RootSystem, lambda: &Weight, x: &Weight) -> bool {
    x.delta() == lambda.delta() && rs.in_q_plus_sh(&(lambda - x))
}

/// x ∈ λ − Q_+^sh + Zδ.
pub fn below_sh_mod_delta(rs: &RootSystem, lambda: &Weight, x: &Weight) -> bool {
    (x - lambda).delta().is_integer() && rs.in_q_plus_sh(&(lambda - x))
}

/// λ_1 + m_1δ ⪯ λ_2 + m_2δ: λ_2 − λ_1 ∈ Q_+ and m_1 ≥ m_2.
pub fn preceq(rs: &RootSystem, x: &Weight, y: &Weight) -> bool {
    x.delta() >= y.delta() && rs.in_q_plus(&(y - x))
}

/// Pushforward along i_sh.
pub fn i_sh_char(rs: &RootSystem, chi: &Character) -> Result<Character> {
    let sh = rs.short()?;
    Ok(chi.map_weights(|w| sh.include(rs, w)))
}

/// ch V_g(μ) as the weight sum of the finite path crystal of π_μ.
pub fn finite_char(rs: &RootSystem, mu: &Weight, cap: usize) -> Result<Character> {
    if !rs.is_classical(mu) || !rs.is_finite_dominant(mu) {
        return Err(Error::Invalid(format!(
            "finite_char needs dominant classical μ, got {}",
            mu
        )));
    }
    let ops: Vec<usize> = rs.finite_nodes().collect();
    let g = generate(rs, &[Path::straight(mu.clone())], &ops, cap)?;
    Ok(Character::from_weights(g.weights()))
}

/// Decomposes an h_d-character into Σ_ν Σ_k c_{ν,k} q^k ch V_g(ν) (q = e(δ)).
/// Returns ν ↦ {k ↦ c_{ν,k}}.
pub fn graded_decomposition(
    rs: &RootSystem,
    chi: &Character,
    cap: usize,
) -> Result<BTreeMap<Weight, BTreeMap<i64, i64>>> {
    let mut cache: HashMap<Weight, Character> = HashMap::new();
    let mut residual = chi.clone();
    let mut out: BTreeMap<Weight, BTreeMap<i64, i64>> = BTreeMap::new();
    while !residual.is_zero() {
        // a maximal weight of some δ-slice: greatest height, then greatest weight
        let (top, c) = residual
            .iter()
            .max_by(|(a, _), (b, _)| {
                (-a.delta(), rs.height(a), *a).cmp(&(-b.delta(), rs.height(b), *b))
            })
            .map(|(w, c)| (w.clone(), c))
            .unwrap();
        if c < 0 || !rs.is_finite_dominant(&top) || !top.delta().is_integer() {
            return Err(Error::NegativeCoefficient(format!(
                "maximal term {}·e{} cannot head an irreducible; residual {}",
                c, top, residual
            )));
        }
        let k = top.delta().to_integer();
        let nu = top.shift_delta(-top.delta());
        if !cache.contains_key(&nu) {
            cache.insert(nu.clone(), finite_char(rs, &nu, cap)?);
        }
        let shifted = cache[&nu].map_weights(|w| w.shift_delta(Q::from_integer(k)));
        residual = residual.add_scaled(-c, &shifted);
        *out.entry(nu).or_default().entry(k).or_insert(0) += c;
    }
    Ok(out)
}

/// [χ : V_g(μ)] as a polynomial {exponent of q = e(δ) ↦ coefficient}.
pub fn graded_multiplicity(
    rs: &RootSystem,
    chi: &Character,
    mu: &Weight,
    cap: usize,
) -> Result<BTreeMap<i64, i64>> {
    let all = graded_decomposition(rs, chi, cap)?;
    Ok(all.get(mu).cloned().unwrap_or_default())
}

/// Multiset of (ν, m) with multiplicities; ν is a dominant classical weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiltrationMultiset {
    entries: BTreeMap<(Weight, i64), i64>,
}

impl FiltrationMultiset {
    pub fn new() -> Self {
        FiltrationMultiset::default()
    }

    pub fn add(&mut self, nu: Weight, m: i64, c: i64) {
        assert!(c > 0);
        *self.entries.entry((nu, m)).or_insert(0) += c;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64, i64)> {
        self.entries.iter().map(|((w, m), &c)| (w, *m, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, nu: &Weight, m: i64) -> i64 {
        self.entries.get(&(nu.clone(), m)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> FiltrationMultiset {
        let mut out = FiltrationMultiset::new();
        for ((w, m), &c) in &self.entries {
            out.add(f(w), *m, c);
        }
        out
    }
}

impl fmt::Display for FiltrationMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(w, m, c)| format!("{}×({}, {})", c, w, m))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The ⪯-maximal support weights of χ.
pub fn maximal_weights(rs: &RootSystem, chi: &Character) -> Vec<Weight> {
    let support: Vec<&Weight> = chi.iter().map(|(w, _)| w).collect();
    support
        .iter()
        .filter(|x| !support.iter().any(|y| y != *x && preceq(rs, x, y)))
        .map(|x| (*x).clone())
        .collect()
}

/// Default tie-break among incomparable maxima: δ ascending, then
/// ϖ-coefficients descending.
pub fn tie_break_key(w: &Weight) -> (Q, Vec<Q>) {
    (w.delta(), w.coords()[1..].iter().map(|c| -c).collect())
}

/// Writes χ as Σ c·ch_{h_d} D(level, ν)[m] over `rs` by stripping ⪯-maximal weights.
pub fn peel_demazure(
    rs: &RootSystem,
    chi: &Character,
    level: i64,
    cap: usize,
) -> Result<FiltrationMultiset> {
    peel_demazure_with(rs, chi, level, cap, |cands| {
        (0..cands.len())
            .min_by_key(|&k| tie_break_key(&cands[k]))
            .unwrap()
    })
}

/// Peeling with a caller-chosen pick among the admissible maxima.
pub fn peel_demazure_with(
    rs: &RootSystem,
    chi: &Character,
    level: i64,
    cap: usize,
    mut pick: impl FnMut(&[Weight]) -> usize,
) -> Result<FiltrationMultiset> {
    let mut residual = chi.clone();
    let mut out = FiltrationMultiset::new();
    let mut cache: HashMap<(Weight, i64), Character> = HashMap::new();
    while !residual.is_zero() {
        let maxima = maximal_weights(rs, &residual);
        if let Some(bad) = maxima.iter().find(|w| residual.coeff(w) < 0) {
            return Err(Error::NegativeCoefficient(format!(
                "maximal weight {} has coefficient {}; residual {}",
                bad,
                residual.coeff(bad),
                residual
            )));
        }
        let cands: Vec<Weight> = maxima
            .into_iter()
            .filter(|w| rs.is_finite_dominant(w) && w.delta().is_integer())
            .collect();
        if cands.is_empty() {
            return Err(Error::NegativeCoefficient(format!(
                "no dominant maximal weight; residual {}",
                residual
            )));
        }
        let top = cands[pick(&cands)].clone();
        let c = residual.coeff(&top);
        let m = top.delta().to_integer();
        let nu = top.shift_delta(-top.delta());
        let key = (nu.clone(), m);
        if !cache.contains_key(&key) {
            let spec = demazure_params(rs, level, &nu, m)?;
            cache.insert(key.clone(), demazure_character(rs, &spec, true, cap)?);
        }
        residual = residual.add_scaled(-c, &cache[&key]);
        out.add(nu, m, c);
    }
    Ok(out)
}

/// Σ mult·ch_{h_d} D(level, ν)[m] over the entries of a multiset.
pub fn resum_demazure(
    rs: &RootSystem,
    fm: &FiltrationMultiset,
    level: i64,
    cap: usize,
) -> Result<Character> {
    let mut out = Character::new();
    for (nu, m, c) in fm.iter() {
        let spec = demazure_params(rs, level, nu, m)?;
        out = out.add_scaled(c, &demazure_character(rs, &spec, true, cap)?);
    }
    Ok(out)
}
