//! Demazure crystals B_w(Λ) inside the path model of B(Λ), their characters,
//! and the divided-difference oracle.

use std::collections::HashSet;

use num_traits::Signed;

use crate::character::Character;
use crate::error::{Error, Result};
use crate::path::Path;
use crate::root_data::{RootSystem, Weight, WeylWord};

/// (ℓ, λ, m) resolved to a dominant Λ and a word w with wΛ = w_0λ + ℓΛ_0 + mδ.
///
/// `word` is the reduced expression w = s_{word[0]}⋯s_{word[k−1]}; the
/// Demazure crystal applies F along it from the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemazureSpec {
    pub level: i64,
    pub lambda: Weight,
    pub m: i64,
    pub highest: Weight,
    pub word: WeylWord,
    pub target: Weight,
}

pub fn demazure_params(
    rs: &RootSystem,
    level: i64,
    lambda: &Weight,
    m: i64,
) -> Result<DemazureSpec> {
    if level < 1 {
        return Err(Error::Invalid(format!(
            "level must be positive, got {}",
            level
        )));
    }
    if !rs.is_classical(lambda) || !rs.is_finite_dominant(lambda) || !lambda.is_integral() {
        return Err(Error::Invalid(format!(
            "expected a dominant classical weight, got {}",
            lambda
        )));
    }
    let target = rs
        .antidominantize_finite(lambda)
        .add_scaled(level.into(), &rs.fundamental(0))
        .shift_delta(m.into());
    let (highest, word) = rs.dominantize(&target)?;
    Ok(DemazureSpec {
        level,
        lambda: lambda.clone(),
        m,
        highest,
        word,
        target,
    })
}

/// Spec for an arbitrary dominant Λ and word (not necessarily coming from
/// (ℓ, λ, m)); `lambda`/`m` are filled from the target's classical part.
pub fn spec_from_word(rs: &RootSystem, highest: &Weight, word: &WeylWord) -> Result<DemazureSpec> {
    if !rs.is_dominant(highest) || !rs.level(highest).is_positive() {
        return Err(Error::Invalid(format!(
            "{} is not dominant of positive level",
            highest
        )));
    }
    let target = word.apply(rs, highest);
    let lv = rs.level(highest).to_integer();
    let delta = target.delta();
    let lambda = rs.hd_restrict(&target).shift_delta(-delta);
    Ok(DemazureSpec {
        level: lv,
        lambda: rs.dominantize_finite(&lambda),
        m: delta.to_integer(),
        highest: highest.clone(),
        word: word.clone(),
        target,
    })
}

#[derive(Clone, Debug)]
pub struct DemazureCrystal {
    pub spec: DemazureSpec,
    nodes: Vec<Path>,
    index: HashSet<Path>,
}

impl DemazureCrystal {
    pub fn nodes(&self) -> &[Path] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.index.contains(p)
    }

    pub fn node_set(&self) -> &HashSet<Path> {
        &self.index
    }
}

/// F_{i_1}⋯F_{i_k}{π_Λ} for `word` = (i_1, …, i_k); F_{i_k} acts first.
pub fn demazure_set(
    rs: &RootSystem,
    highest: &Weight,
    word: &WeylWord,
    cap: usize,
) -> Result<Vec<Path>> {
    let mut nodes = vec![Path::straight(highest.clone())];
    let mut seen: HashSet<Path> = nodes.iter().cloned().collect();
    for &i in word.0.iter().rev() {
        if i > rs.rank() {
            return Err(Error::UnknownNode(i));
        }
        // each string is walked to its end, so new nodes need no second pass
        let end = nodes.len();
        for k in 0..end {
            let mut cur = nodes[k].clone();
            while let Some(next) = cur.f(rs, i)? {
                if seen.insert(next.clone()) {
                    if nodes.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    nodes.push(next.clone());
                }
                cur = next;
            }
        }
    }
    Ok(nodes)
}

pub fn demazure_crystal(
    rs: &RootSystem,
    spec: &DemazureSpec,
    cap: usize,
) -> Result<DemazureCrystal> {
    let nodes = demazure_set(rs, &spec.highest, &spec.word, cap)?;
    let index = nodes.iter().cloned().collect();
    Ok(DemazureCrystal {
        spec: spec.clone(),
        nodes,
        index,
    })
}

/// Σ e(wt b) over the Demazure crystal, optionally restricted to h_d.
pub fn demazure_character(
    rs: &RootSystem,
    spec: &DemazureSpec,
    restrict_to_hd: bool,
    cap: usize,
) -> Result<Character> {
    let dc = demazure_crystal(rs, spec, cap)?;
    Ok(Character::from_weights(dc.nodes().iter().map(|p| {
        let w = p.endpoint();
        if restrict_to_hd {
            rs.hd_restrict(&w)
        } else {
            w
        }
    })))
}

/// The Demazure operator D_i: e(μ) ↦ (e(μ) − e(s_iμ − α_i)) / (1 − e(−α_i)).
pub fn demazure_operator(rs: &RootSystem, i: usize, chi: &Character) -> Character {
    let mut out = Character::new();
    for (mu, c) in chi.iter() {
        let n = mu.pair(i);
        assert!(n.is_integer());
        let n = n.to_integer();
        let a = rs.alpha(i, mu.lattice());
        if n >= 0 {
            for k in 0..=n {
                out.add_term(mu.add_scaled((-k).into(), &a), c);
            }
        } else {
            for k in 1..=(-n - 1) {
                out.add_term(mu.add_scaled(k.into(), &a), -c);
            }
        }
    }
    out
}

/// D_{i_1}⋯D_{i_k} e(Λ).
pub fn demazure_character_oracle(
    rs: &RootSystem,
    spec: &DemazureSpec,
    restrict_to_hd: bool,
) -> Character {
    let mut chi = Character::monomial(spec.highest.clone());
    for &i in spec.word.0.iter().rev() {
        chi = demazure_operator(rs, i, &chi);
    }
    if restrict_to_hd {
        chi.map_weights(|w| rs.hd_restrict(w))
    } else {
        chi
    }
}

/// ẽ-stability and the unique extremal node of weight wΛ.
pub fn check_demazure_crystal(rs: &RootSystem, dc: &DemazureCrystal) -> Result<()> {
    for p in dc.nodes() {
        for i in rs.nodes() {
            if let Some(q) = p.e(rs, i)? {
                if !dc.contains(&q) {
                    return Err(Error::Identity(format!(
                        "e_{} leaves the Demazure crystal",
                        i
                    )));
                }
            }
        }
    }
    let ext = dc
        .nodes()
        .iter()
        .filter(|p| p.endpoint() == dc.spec.target)
        .count();
    if ext != 1 {
        return Err(Error::Identity(format!("{} nodes of extremal weight", ext)));
    }
    if !dc.contains(&Path::straight(dc.spec.highest.clone())) {
        return Err(Error::Identity("π_Λ missing".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::finite_char;
    use crate::crystal::DEFAULT_NODE_CAP;
    use crate::Q;

    #[test]
    fn trivial_spec() {
        let rs = RootSystem::from_letter('A', 2).unwrap();
        let spec = demazure_params(&rs, 1, &rs.zero(), 0).unwrap();
        assert_eq!(spec.highest, rs.fundamental(0));
        assert!(spec.word.is_empty());
        let ch = demazure_character(&rs, &spec, false, 10).unwrap();
        assert_eq!(ch, Character::monomial(rs.fundamental(0)));
    }

    #[test]
    fn a1_varpi() {
        let rs = RootSystem::from_letter('A', 1).unwrap();
        let spec = demazure_params(&rs, 1, &rs.varpi(1), 0).unwrap();
        assert_eq!(spec.highest, rs.fundamental(1));
        assert_eq!(spec.word, WeylWord(vec![1]));
        assert_eq!(spec.word.apply(&rs, &spec.highest), spec.target);
        let ch = demazure_character(&rs, &spec, true, 10).unwrap();
        assert_eq!(ch, Character::from_weights([rs.varpi(1), -&rs.varpi(1)]));
    }

    #[test]
    fn operator_on_wall() {
        let rs = RootSystem::from_letter('A', 2).unwrap();
        let mu = rs.classical(&[0, 1]);
        let chi = Character::monomial(mu.clone());
        assert_eq!(demazure_operator(&rs, 1, &chi), chi);
        let neg = Character::monomial(rs.classical(&[-1, 0]));
        assert!(demazure_operator(&rs, 1, &neg).is_zero());
    }

    #[test]
    fn type_a_fundamental_is_irreducible() {
        let rs = RootSystem::from_letter('A', 3).unwrap();
        for i in 1..=3 {
            for level in 1..=2 {
                let spec = demazure_params(&rs, level, &rs.varpi(i), 0).unwrap();
                let ch = demazure_character(&rs, &spec, true, DEFAULT_NODE_CAP).unwrap();
                assert_eq!(
                    ch,
                    finite_char(&rs, &rs.varpi(i), DEFAULT_NODE_CAP).unwrap()
                );
            }
        }
    }

    #[test]
    fn delta_shift_covariance() {
        let rs = RootSystem::from_letter('C', 2).unwrap();
        let lam = rs.classical(&[1, 1]);
        let base = demazure_character(
            &rs,
            &demazure_params(&rs, 1, &lam, 0).unwrap(),
            true,
            DEFAULT_NODE_CAP,
        )
        .unwrap();
        let shifted = demazure_character(
            &rs,
            &demazure_params(&rs, 1, &lam, 2).unwrap(),
            true,
            DEFAULT_NODE_CAP,
        )
        .unwrap();
        assert_eq!(
            shifted,
            base.map_weights(|w| w.shift_delta(Q::from_integer(2)))
        );
    }

    #[test]
    fn crystal_properties_and_oracle() {
        for (t, n, w) in [
            ('A', 2, vec![1, 1]),
            ('C', 2, vec![1, 0]),
            ('G', 2, vec![0, 1]),
        ] {
            let rs = RootSystem::from_letter(t, n).unwrap();
            let spec = demazure_params(&rs, 1, &rs.classical(&w), 0).unwrap();
            let dc = demazure_crystal(&rs, &spec, DEFAULT_NODE_CAP).unwrap();
            check_demazure_crystal(&rs, &dc).unwrap();
            assert_eq!(
                demazure_character(&rs, &spec, false, DEFAULT_NODE_CAP).unwrap(),
                demazure_character_oracle(&rs, &spec, false)
            );
        }
    }
}
