//! Decomposition of b_{Λ_0} ⊗ B(λ)_cl into Demazure crystals, the embedding of
//! short path models, and the three-way check of the main character identity.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;

use crate::character::{
    below_sh_mod_delta, graded_decomposition, i_sh_char, peel_demazure, preceq, resum_demazure,
    Character, FiltrationMultiset,
};
use crate::crystal::{generate_b0_normalized, NormalizedCrystal};
use crate::demazure::{demazure_character, demazure_params};
use crate::error::{Error, Result};
use crate::path::Path;
use crate::root_data::{RootSystem, Weight};
use crate::Q;

pub const DEFAULT_RAISE_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub nodes: usize,
    pub raise: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            nodes: crate::crystal::DEFAULT_NODE_CAP,
            raise: DEFAULT_RAISE_CAP,
        }
    }
}

/// Σ_η e(wt_P̂(η)) over B(λ)_cl.
pub fn path_character(nc: &NormalizedCrystal) -> Character {
    Character::from_weights((0..nc.len()).map(|u| nc.wt_phat(u)))
}

/// Normalized representatives π with m_i^π ≥ −⟨Λ, α_i^∨⟩ for all i ∈ Î.
///
/// Shifting by kδ does not change any H_i, so each representative stands for
/// its whole δ-orbit in B₀(λ)^Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestSet {
    pub reps: Vec<usize>,
}

pub fn highest_candidates(
    rs: &RootSystem,
    big_lambda: &Weight,
    nc: &NormalizedCrystal,
) -> Result<HighestSet> {
    if !rs.is_dominant(big_lambda) || rs.level(big_lambda).is_zero() {
        return Err(Error::Invalid(format!(
            "{} is not dominant of positive level",
            big_lambda
        )));
    }
    let reps = (0..nc.len())
        .filter(|&u| {
            let p = nc.path(u);
            rs.nodes()
                .all(|i| p.h_profile(i).min >= -big_lambda.pair(i))
        })
        .collect();
    Ok(HighestSet { reps })
}

/// One component C(π_{Λ_0} * π_0) of the image of b_{Λ_0} ⊗ B(λ)_cl.
#[derive(Clone, Debug)]
pub struct Component {
    /// Node id (in the normalized crystal) of π_0.
    pub highest: usize,
    pub mu: Weight,
    pub n: i64,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DemazureImage {
    pub components: Vec<Component>,
}

impl DemazureImage {
    pub fn multiset(&self) -> FiltrationMultiset {
        let mut fm = FiltrationMultiset::new();
        for c in &self.components {
            fm.add(c.mu.clone(), c.n, 1);
        }
        fm
    }
}

/// Right factor π_2 of a path of the form π_1 * π_2.
fn right_half(p: &Path) -> Result<Path> {
    let half = Q::new(1, 2);
    let s = p.breakpoints();
    let start = s
        .iter()
        .position(|&t| t == half)
        .ok_or_else(|| Error::Invalid("1/2 is not a breakpoint".into()))?;
    let dirs = p.directions()[start..]
        .iter()
        .map(|d| d.scale(half))
        .collect();
    let sigma = s[start..]
        .iter()
        .map(|t| t * Q::from_integer(2) - Q::from_integer(1))
        .collect();
    Path::from_expression(dirs, sigma)
}

/// Applies ẽ_i (smallest applicable i first) until none applies.
pub fn raise_to_highest(rs: &RootSystem, p: &Path, cap: usize) -> Result<Path> {
    let mut cur = p.clone();
    for _ in 0..=cap {
        let mut moved = false;
        for i in rs.nodes() {
            if let Some(next) = cur.e(rs, i)? {
                cur = next;
                moved = true;
                break;
            }
        }
        if !moved {
            return Ok(cur);
        }
    }
    Err(Error::IterationCap("raise_to_highest"))
}

pub fn decompose_tensor_image(
    rs: &RootSystem,
    nc: &NormalizedCrystal,
    caps: Caps,
) -> Result<DemazureImage> {
    let lam0 = rs.fundamental(0);
    let left = Path::straight(lam0.clone());
    let mut by_top: HashMap<usize, usize> = HashMap::new();
    let mut comps: Vec<(usize, Vec<usize>)> = Vec::new();
    for u in 0..nc.len() {
        let top = raise_to_highest(rs, &left.concat(nc.path(u)), caps.raise)?;
        let pi0 = right_half(&top)?;
        if left.concat(&pi0) != top {
            return Err(Error::Identity("left factor moved while raising".into()));
        }
        let h = nc.graph().id_of(&pi0).ok_or_else(|| {
            Error::Identity(format!(
                "highest right factor {:?} is not a normalized node",
                pi0
            ))
        })?;
        let k = *by_top.entry(h).or_insert_with(|| {
            comps.push((h, Vec::new()));
            comps.len() - 1
        });
        comps[k].1.push(u);
    }

    let hs = highest_candidates(rs, &lam0, nc)?;
    let tops: HashSet<usize> = comps.iter().map(|c| c.0).collect();
    if tops != hs.reps.iter().copied().collect::<HashSet<_>>() {
        return Err(Error::Identity(format!(
            "component tops {:?} differ from the highest candidates {:?}",
            tops, hs.reps
        )));
    }

    let mut components = Vec::new();
    for (h, members) in comps {
        let weights: Vec<Weight> = members.iter().map(|&u| nc.wt_phat(u)).collect();
        let maxima: Vec<&Weight> = weights
            .iter()
            .filter(|x| weights.iter().all(|y| preceq(rs, y, x)))
            .collect();
        if maxima.len() != 1 {
            return Err(Error::Identity(format!(
                "component of node {} has {} ⪯-maxima",
                h,
                maxima.len()
            )));
        }
        let top = maxima[0].clone();
        let n = top.delta().to_integer();
        let mu = top.shift_delta(-top.delta());
        // extremal weight w(Λ_0 + π_0(1)) = Λ_0 + w_0μ + nδ must be conjugate to the top
        let ext = rs.antidominantize_finite(&mu).shift_delta(top.delta());
        if weights.iter().filter(|w| **w == ext).count() != 1 {
            return Err(Error::Identity(format!(
                "extremal weight {} not unique in component",
                ext
            )));
        }
        let highest_weight = &lam0 + &nc.wt_phat(h);
        let (dom, _) = rs.dominantize(&(&lam0 + &ext))?;
        if dom != highest_weight {
            return Err(Error::Identity(format!(
                "extremal weight {} is not conjugate to the highest weight {}",
                ext, highest_weight
            )));
        }
        components.push(Component {
            highest: h,
            mu,
            n,
            members,
        });
    }
    Ok(DemazureImage { components })
}

/// For each component, Σ_{η ∈ C} e(wt_P̂ η) against ch_{h_d} D(1, μ_j)[n_j].
pub fn component_characters_ok(
    rs: &RootSystem,
    nc: &NormalizedCrystal,
    image: &DemazureImage,
    caps: Caps,
) -> Result<Vec<bool>> {
    image
        .components
        .iter()
        .map(|c| {
            let chi = Character::from_weights(c.members.iter().map(|&u| nc.wt_phat(u)));
            let spec = demazure_params(rs, 1, &c.mu, c.n)?;
            Ok(chi == demazure_character(rs, &spec, true, caps.nodes)?)
        })
        .collect()
}

/// φ(π) = i_sh(π) + π_{λ′}.
pub fn sh_embed(rs: &RootSystem, pi: &Path, lambda: &Weight) -> Result<Path> {
    let sh = rs.short()?;
    let lp = rs.lambda_prime(lambda)?;
    Ok(pi.map_directions(|d| &sh.include(rs, d) + &lp))
}

/// Checks that φ maps the normalized B₀^sh(λ̄) bijectively onto the normalized
/// nodes of B₀(λ) with weight in λ − Q_+^sh + Zδ, and φ(π_λ̄) = π_λ.
pub fn sh_embed_check(
    rs: &RootSystem,
    lambda: &Weight,
    nc: &NormalizedCrystal,
    caps: Caps,
) -> Result<()> {
    let sh = rs.short()?;
    let bar = rs.restrict_sh(lambda)?;
    let nsh = generate_b0_normalized(sh.sub(), &bar, caps.nodes)?;
    if sh_embed(rs, &Path::straight(bar.clone()), lambda)? != Path::straight(lambda.clone()) {
        return Err(Error::Identity("φ(π_λ̄) ≠ π_λ".into()));
    }
    let lp = rs.lambda_prime(lambda)?;
    let mut image = HashSet::new();
    for u in 0..nsh.len() {
        let p = sh_embed(rs, nsh.path(u), lambda)?;
        let id = nc
            .graph()
            .id_of(&p)
            .ok_or_else(|| Error::Identity(format!("φ of short node {} is not in B₀(λ)", u)))?;
        if nc.wt_phat(id) != &sh.include(rs, &nsh.wt_phat(u)) + &lp {
            return Err(Error::Identity("weight law of φ fails".into()));
        }
        if !image.insert(id) {
            return Err(Error::Identity("φ is not injective".into()));
        }
    }
    let target: HashSet<usize> = (0..nc.len())
        .filter(|&u| below_sh_mod_delta(rs, lambda, &nc.wt_phat(u)))
        .collect();
    if image != target {
        return Err(Error::Identity(format!(
            "φ image has {} nodes, weight window has {}",
            image.len(),
            target.len()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ShortIdentityReport {
    pub restriction_ok: bool,
    /// (m, holds) for the projected Demazure identity.
    pub demazure_ok: Vec<(i64, bool)>,
    pub diff: String,
}

impl ShortIdentityReport {
    pub fn all_ok(&self) -> bool {
        self.restriction_ok && self.demazure_ok.iter().all(|x| x.1)
    }
}

/// h_d-character of D^sh(level, λ̄)[m], pushed to P̂ and multiplied by e(λ′).
fn short_side(
    rs: &RootSystem,
    lambda: &Weight,
    level: i64,
    m: i64,
    cap: usize,
) -> Result<Character> {
    let sh = rs.short()?;
    let bar = rs.restrict_sh(lambda)?;
    let spec = demazure_params(sh.sub(), level, &bar, m)?;
    let chi = demazure_character(sh.sub(), &spec, true, cap)?;
    Ok(i_sh_char(rs, &chi)?.shift(&rs.lambda_prime(lambda)?))
}

pub fn short_restriction_identity(
    rs: &RootSystem,
    lambda: &Weight,
    nc: &NormalizedCrystal,
    ms: &[i64],
    caps: Caps,
) -> Result<ShortIdentityReport> {
    let mut diff = String::new();
    let lhs = path_character(nc).project(|x| below_sh_mod_delta(rs, lambda, x));
    let rhs = short_side(rs, lambda, 1, 0, caps.nodes)?;
    let restriction_ok = lhs == rhs;
    if !restriction_ok {
        diff.push_str(&format!("restriction: {}\n", lhs.diff_report(&rhs)));
    }
    let mut demazure_ok = Vec::new();
    for &m in ms {
        let spec = demazure_params(rs, 1, lambda, m)?;
        let full = demazure_character(rs, &spec, true, caps.nodes)?;
        let lhs = full.project(|x| below_sh_mod_delta(rs, lambda, x));
        let rhs = short_side(rs, lambda, rs.r(), m, caps.nodes)?;
        if lhs != rhs {
            diff.push_str(&format!("demazure m={}: {}\n", m, lhs.diff_report(&rhs)));
        }
        demazure_ok.push((m, lhs == rhs));
    }
    Ok(ShortIdentityReport {
        restriction_ok,
        demazure_ok,
        diff,
    })
}

/// {(μ_i, m_i)}: {(λ, 0)} when simply laced; otherwise the level-r peeling of
/// ch D^sh(1, λ̄)[0] transported by ν ↦ i_sh(ν) + λ′.
pub fn weyl_filtration_multiset(
    rs: &RootSystem,
    lambda: &Weight,
    caps: Caps,
) -> Result<FiltrationMultiset> {
    let mut fm = FiltrationMultiset::new();
    if rs.is_simply_laced() {
        fm.add(lambda.clone(), 0, 1);
        return Ok(fm);
    }
    let sh = rs.short()?;
    let bar = rs.restrict_sh(lambda)?;
    let spec = demazure_params(sh.sub(), 1, &bar, 0)?;
    let chi = demazure_character(sh.sub(), &spec, true, caps.nodes)?;
    let peeled = peel_demazure(sh.sub(), &chi, rs.r(), caps.nodes)?;
    let lp = rs.lambda_prime(lambda)?;
    Ok(peeled.map_weights(|nu| &sh.include(rs, nu) + &lp))
}

#[derive(Clone, Debug)]
pub struct MainReport {
    pub lambda: Weight,
    pub dim: usize,
    pub path_char: Character,
    pub filtration: FiltrationMultiset,
    pub image: FiltrationMultiset,
    pub char_ok: bool,
    pub multiset_ok: bool,
    pub graded_ok: bool,
    /// μ ↦ Σ q^{−Deg η} over classically highest η of weight μ.
    pub graded: BTreeMap<Weight, BTreeMap<i64, i64>>,
    pub diff: String,
}

impl MainReport {
    pub fn all_ok(&self) -> bool {
        self.char_ok && self.multiset_ok && self.graded_ok
    }
}

/// Σ q^{−Deg η} over classically highest η, grouped by cl(η(1)).
pub fn crystal_graded_multiplicities(
    nc: &NormalizedCrystal,
) -> BTreeMap<Weight, BTreeMap<i64, i64>> {
    let mut out: BTreeMap<Weight, BTreeMap<i64, i64>> = BTreeMap::new();
    for u in nc.classically_highest() {
        let w = nc.wt_phat(u);
        let mu = w.shift_delta(-w.delta());
        *out.entry(mu).or_default().entry(-nc.degree(u)).or_insert(0) += 1;
    }
    out
}

pub fn verify_main(rs: &RootSystem, lambda: &Weight, caps: Caps) -> Result<MainReport> {
    let nc = generate_b0_normalized(rs, lambda, caps.nodes)?;
    verify_main_with(rs, &nc, caps)
}

pub fn verify_main_with(rs: &RootSystem, nc: &NormalizedCrystal, caps: Caps) -> Result<MainReport> {
    let lambda = nc.lambda().clone();
    let mut diff = String::new();
    let a = path_character(nc);
    let filtration = weyl_filtration_multiset(rs, &lambda, caps)?;
    let b = resum_demazure(rs, &filtration, 1, caps.nodes)?;
    let image = decompose_tensor_image(rs, nc, caps)?.multiset();
    let char_ok = a == b;
    if !char_ok {
        diff.push_str(&format!("path side vs filtration: {}\n", a.diff_report(&b)));
    }
    let multiset_ok = filtration == image;
    if !multiset_ok {
        diff.push_str(&format!("filtration {} vs image {}\n", filtration, image));
    }
    let graded = crystal_graded_multiplicities(nc);
    let from_char = graded_decomposition(rs, &a, caps.nodes)?;
    let graded_ok = graded == from_char;
    if !graded_ok {
        diff.push_str("graded multiplicities differ\n");
    }
    Ok(MainReport {
        lambda,
        dim: nc.len(),
        path_char: a,
        filtration,
        image,
        char_ok,
        multiset_ok,
        graded_ok,
        graded,
        diff,
    })
}
