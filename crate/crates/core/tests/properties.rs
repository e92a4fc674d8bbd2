mod common;

use affine_paths::character::{
    finite_char, graded_decomposition, peel_demazure, peel_demazure_with, resum_demazure, Character,
};
use affine_paths::crystal::{degree_and_weight_check, generate_b0_normalized, DEFAULT_NODE_CAP};
use affine_paths::decomposition::{highest_candidates, path_character};
use affine_paths::demazure::{
    check_demazure_crystal, demazure_character, demazure_crystal, demazure_params, spec_from_word,
};
use affine_paths::selftest::{check_operators, check_tensor_rule, random_path};
use affine_paths::{Path, RootSystem, Weight, WeylWord, Q};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TYPES: &[(char, usize)] = &[
    ('A', 2),
    ('B', 2),
    ('C', 2),
    ('G', 2),
    ('B', 3),
    ('C', 3),
    ('A', 3),
];

fn rs_of(k: usize) -> RootSystem {
    let (t, n) = TYPES[k % TYPES.len()];
    RootSystem::from_letter(t, n).unwrap()
}

fn affine_weight(rs: &RootSystem, coeffs: &[i64], delta: i64) -> Weight {
    rs.nodes()
        .fold(rs.zero(), |w, i| {
            w.add_scaled(Q::from_integer(coeffs[i]), &rs.fundamental(i))
        })
        .shift_delta(Q::from_integer(delta))
}

#[test]
fn cartan_and_lengths_match_kac_tables() {
    for &(t, n) in &[
        ('A', 3),
        ('B', 3),
        ('B', 4),
        ('C', 3),
        ('D', 4),
        ('F', 4),
        ('G', 2),
    ] {
        let rs = RootSystem::from_letter(t, n).unwrap();
        let a = common::finite_cartan(t, n);
        let len = common::squared_lengths(t, n);
        for (i, row) in a.iter().enumerate() {
            assert_eq!(
                rs.squared_length(i + 1),
                len[i],
                "{}{} node {}",
                t,
                n,
                i + 1
            );
            for (j, &aij) in row.iter().enumerate() {
                assert_eq!(
                    rs.cartan_entry(i + 1, j + 1),
                    aij,
                    "{}{} ({}, {})",
                    t,
                    n,
                    i + 1,
                    j + 1
                );
            }
        }
    }
}

#[test]
fn weyl_dimension_oracle_sanity() {
    assert_eq!(common::weyl_dim('G', 2, &[1, 0]), 14);
    assert_eq!(common::weyl_dim('G', 2, &[0, 1]), 7);
    assert_eq!(common::weyl_dim('F', 4, &[0, 0, 0, 1]), 26);
    assert_eq!(common::weyl_dim('F', 4, &[1, 0, 0, 0]), 52);
    assert_eq!(common::weyl_dim('B', 3, &[0, 0, 1]), 8);
    assert_eq!(common::weyl_dim('D', 4, &[0, 1, 0, 0]), 28);
}

#[test]
fn d_lambda_matches_orbit_search() {
    let rs = RootSystem::from_letter('A', 1).unwrap();
    let lam = rs.classical(&[2]);
    assert!(!common::orbit_reaches(
        &rs,
        &lam,
        &lam.shift_delta(Q::from_integer(1)),
        12
    ));
    assert!(common::orbit_reaches(
        &rs,
        &lam,
        &lam.shift_delta(Q::from_integer(2)),
        12
    ));
    let nc = generate_b0_normalized(&rs, &lam, DEFAULT_NODE_CAP).unwrap();
    assert_eq!(nc.d_lambda(), 2);

    for (t, n, w) in [
        ('A', 2, vec![1, 0]),
        ('C', 2, vec![1, 0]),
        ('C', 2, vec![0, 1]),
        ('G', 2, vec![0, 1]),
    ] {
        let rs = RootSystem::from_letter(t, n).unwrap();
        let lam = rs.classical(&w);
        let nc = generate_b0_normalized(&rs, &lam, DEFAULT_NODE_CAP).unwrap();
        let d = nc.d_lambda();
        assert!(
            common::orbit_reaches(&rs, &lam, &lam.shift_delta(Q::from_integer(d)), 10),
            "{}{} {:?}",
            t,
            n,
            w
        );
        for k in 1..d {
            assert!(!common::orbit_reaches(
                &rs,
                &lam,
                &lam.shift_delta(Q::from_integer(k)),
                10
            ));
        }
    }
}

#[test]
fn tensor_product_at_q_one() {
    // forgetting δ, the path character of λ is the product over the fundamental ones
    for (t, n, w) in [
        ('A', 2, vec![1, 1]),
        ('C', 2, vec![2, 1]),
        ('G', 2, vec![1, 1]),
    ] {
        let rs = RootSystem::from_letter(t, n).unwrap();
        let at_one = |chi: &Character| chi.map_weights(|x| x.shift_delta(-x.delta()));
        let lam = rs.classical(&w);
        let full = at_one(&path_character(
            &generate_b0_normalized(&rs, &lam, DEFAULT_NODE_CAP).unwrap(),
        ));
        let mut prod = Character::monomial(rs.zero());
        for (i, &k) in w.iter().enumerate() {
            let f = at_one(&path_character(
                &generate_b0_normalized(&rs, &rs.varpi(i + 1), DEFAULT_NODE_CAP).unwrap(),
            ));
            for _ in 0..k {
                prod = prod.mul(&f);
            }
        }
        assert_eq!(full, prod, "{}{} {:?}", t, n, w);
    }
}

#[test]
fn huge_level_admits_every_representative() {
    let rs = RootSystem::from_letter('C', 2).unwrap();
    let nc = generate_b0_normalized(&rs, &rs.classical(&[1, 1]), DEFAULT_NODE_CAP).unwrap();
    let big = rs.nodes().fold(rs.zero(), |acc, i| {
        acc.add_scaled(Q::from_integer(10), &rs.fundamental(i))
    });
    assert_eq!(
        highest_candidates(&rs, &big, &nc).unwrap().reps.len(),
        nc.len()
    );
    let zero = generate_b0_normalized(&rs, &rs.zero(), DEFAULT_NODE_CAP).unwrap();
    assert_eq!(
        highest_candidates(&rs, &rs.fundamental(0), &zero)
            .unwrap()
            .reps,
        vec![0]
    );
}

#[test]
fn peeling_is_independent_of_tie_breaks() {
    for (t, n, w) in [
        ('C', 2, vec![2, 1]),
        ('G', 2, vec![1, 2]),
        ('B', 2, vec![1, 2]),
    ] {
        let rs = RootSystem::from_letter(t, n).unwrap();
        let sh = rs.short().unwrap();
        let bar = rs.restrict_sh(&rs.classical(&w)).unwrap();
        let spec = demazure_params(sh.sub(), 1, &bar, 0).unwrap();
        let chi = demazure_character(sh.sub(), &spec, true, DEFAULT_NODE_CAP).unwrap();
        let base = peel_demazure(sh.sub(), &chi, rs.r(), DEFAULT_NODE_CAP).unwrap();
        assert_eq!(
            resum_demazure(sh.sub(), &base, rs.r(), DEFAULT_NODE_CAP).unwrap(),
            chi
        );
        for seed in 0..8u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let other = peel_demazure_with(sh.sub(), &chi, rs.r(), DEFAULT_NODE_CAP, |c| {
                rand::Rng::gen_range(&mut rng, 0..c.len())
            })
            .unwrap();
            assert_eq!(other, base);
        }
    }
}

#[test]
fn degree_bound_on_generated_crystals() {
    for (t, n, w) in [
        ('A', 2, vec![2, 1]),
        ('B', 2, vec![1, 1]),
        ('G', 2, vec![0, 2]),
    ] {
        let rs = RootSystem::from_letter(t, n).unwrap();
        let nc = generate_b0_normalized(&rs, &rs.classical(&w), DEFAULT_NODE_CAP).unwrap();
        degree_and_weight_check(&rs, &nc).unwrap();
        assert!((0..nc.len()).all(|u| nc.degree(u) <= 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_involutions(k in 0usize..7, c in prop::collection::vec(-3i64..4, 5), d in -3i64..4) {
        let rs = rs_of(k);
        let x = affine_weight(&rs, &c, d);
        for i in rs.nodes() {
            let y = rs.reflect(i, &x);
            prop_assert_eq!(rs.reflect(i, &y), x.clone());
            prop_assert_eq!(rs.level(&y), rs.level(&x));
            prop_assert_eq!(y.pair(i), -x.pair(i));
        }
    }

    #[test]
    fn dominantize_round_trip(k in 0usize..7, c in prop::collection::vec(-3i64..4, 5), d in -3i64..4) {
        let rs = rs_of(k);
        let mut x = affine_weight(&rs, &c, d);
        if rs.level(&x) <= Q::from_integer(0) {
            x = x.add_scaled(Q::from_integer(1) - rs.level(&x), &rs.fundamental(0));
        }
        let (dom, word) = rs.dominantize(&x).unwrap();
        prop_assert!(rs.is_dominant(&dom));
        prop_assert_eq!(word.apply(&rs, &dom), x);
    }

    #[test]
    fn finite_characters_have_weyl_dimension(k in 0usize..7, c in prop::collection::vec(0i64..3, 3)) {
        let (t, n) = TYPES[k];
        let rs = rs_of(k);
        let lam: Vec<i64> = c[..n].to_vec();
        let chi = finite_char(&rs, &rs.classical(&lam), DEFAULT_NODE_CAP).unwrap();
        prop_assert_eq!(chi.mass(), common::weyl_dim(t, n, &lam));
        let dec = graded_decomposition(&rs, &chi, DEFAULT_NODE_CAP).unwrap();
        prop_assert_eq!(dec.len(), 1);
    }

    #[test]
    fn random_paths_obey_operator_laws(k in 0usize..7, seed in any::<u64>()) {
        let rs = rs_of(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_path(&rs, &mut rng).unwrap();
        prop_assert!(p.is_integral());
        check_operators(&rs, &p).unwrap();
        let q = random_path(&rs, &mut rng).unwrap();
        check_tensor_rule(&rs, &p, &q).unwrap();
        prop_assert_eq!(p.concat(&q).endpoint(), &p.endpoint() + &q.endpoint());
    }

    #[test]
    fn canonical_form_absorbs_splits(k in 0usize..7, seed in any::<u64>(), num in 1i64..7) {
        let rs = rs_of(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_path(&rs, &mut rng).unwrap();
        // split the first segment at a fraction of its length
        let s = p.breakpoints();
        let t = s[0] + (s[1] - s[0]) * Q::new(num, 8);
        let mut dirs = p.directions().to_vec();
        dirs.insert(0, dirs[0].clone());
        let mut sigma = s.to_vec();
        sigma.insert(1, t);
        prop_assert_eq!(Path::from_expression(dirs, sigma).unwrap(), p.clone());
        prop_assert_eq!(p.cl().endpoint(), p.endpoint().cl());
    }

    #[test]
    fn character_ring_laws(a in prop::collection::vec((-2i64..3, -2i64..3, -1i64..2, 1i64..3), 0..5),
                           b in prop::collection::vec((-2i64..3, -2i64..3, -1i64..2, 1i64..3), 0..5)) {
        let rs = RootSystem::from_letter('A', 2).unwrap();
        let mk = |v: &[(i64, i64, i64, i64)]| {
            let mut c = Character::new();
            for &(x, y, d, m) in v {
                c.add_term(rs.classical(&[x, y]).shift_delta(Q::from_integer(d)), m);
            }
            c
        };
        let (ca, cb) = (mk(&a), mk(&b));
        prop_assert_eq!(ca.mul(&cb), cb.mul(&ca));
        prop_assert_eq!(ca.add(&cb).sub(&cb), ca.clone());
        prop_assert_eq!(ca.mass() * cb.mass(), ca.mul(&cb).mass());
        let x = rs.classical(&[1, -1]);
        prop_assert_eq!(ca.shift(&x), ca.mul(&Character::monomial(x)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn demazure_crystals_are_raising_closed(k in 0usize..3, c in prop::collection::vec(0i64..2, 3),
                                            word in prop::collection::vec(0usize..3, 0..7)) {
        let (t, n) = [('A', 2), ('C', 2), ('G', 2)][k];
        let rs = RootSystem::from_letter(t, n).unwrap();
        let highest = affine_weight(&rs, &[c[0] + 1, c[1], c[2]], 0);
        let spec = spec_from_word(&rs, &highest, &WeylWord(word)).unwrap();
        let dc = demazure_crystal(&rs, &spec, DEFAULT_NODE_CAP).unwrap();
        // a non-reduced word may land on the same extremal node more than once; only check closure
        for p in dc.nodes() {
            for i in rs.nodes() {
                if let Some(q) = p.e(&rs, i).unwrap() {
                    prop_assert!(dc.contains(&q));
                }
            }
        }
    }

    #[test]
    fn demazure_params_hit_their_target(k in 0usize..3, c in prop::collection::vec(0i64..3, 2),
                                        level in 1i64..3, m in -2i64..3) {
        let (t, n) = [('A', 2), ('C', 2), ('G', 2)][k];
        let rs = RootSystem::from_letter(t, n).unwrap();
        let spec = demazure_params(&rs, level, &rs.classical(&c), m).unwrap();
        prop_assert!(rs.is_dominant(&spec.highest));
        prop_assert_eq!(spec.word.apply(&rs, &spec.highest), spec.target.clone());
        let dc = demazure_crystal(&rs, &spec, DEFAULT_NODE_CAP).unwrap();
        check_demazure_crystal(&rs, &dc).unwrap();
    }
}
