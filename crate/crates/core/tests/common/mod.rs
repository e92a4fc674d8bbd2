#![allow(dead_code)]

use std::collections::HashSet;

use affine_paths::{RootSystem, Weight, Q};

/// Finite Cartan matrix a[i][j] = ⟨α_j, α_i^∨⟩ in Kac labels (0-based here).
pub fn finite_cartan(t: char, n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect())
        .collect();
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t {
        'A' | 'B' | 'C' => {
            for i in 0..n.saturating_sub(1) {
                link(&mut a, i, i + 1);
            }
            if t == 'B' {
                a[n - 1][n - 2] = -2;
            } else if t == 'C' {
                a[n - 2][n - 1] = -2;
            }
        }
        'D' => {
            for i in 0..n - 2 {
                link(&mut a, i, i + 1);
            }
            link(&mut a, n - 3, n - 1);
        }
        'F' => {
            link(&mut a, 0, 1);
            link(&mut a, 1, 2);
            link(&mut a, 2, 3);
            a[2][1] = -2;
        }
        'G' => {
            link(&mut a, 0, 1);
            a[1][0] = -3;
        }
        _ => panic!("no oracle for {}", t),
    }
    a
}

/// (α_i, α_i) with long roots of squared length 2.
pub fn squared_lengths(t: char, n: usize) -> Vec<Q> {
    let short: Vec<usize> = match t {
        'B' => vec![n - 1],
        'C' => (0..n - 1).collect(),
        'F' => vec![2, 3],
        'G' => vec![1],
        _ => vec![],
    };
    let s = if t == 'G' {
        Q::new(2, 3)
    } else {
        Q::from_integer(1)
    };
    (0..n)
        .map(|i| {
            if short.contains(&i) {
                s
            } else {
                Q::from_integer(2)
            }
        })
        .collect()
}

/// Positive roots in α-coordinates, by reflection closure of the simple roots.
pub fn positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut stack: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    while let Some(b) = stack.pop() {
        if !seen.insert(b.clone()) {
            continue;
        }
        for i in 0..n {
            let p: i64 = (0..n).map(|j| b[j] * a[i][j]).sum();
            let mut c = b.clone();
            c[i] -= p;
            if c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0) {
                stack.push(c);
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

/// Weyl dimension formula for V(Σ λ_i ϖ_i).
pub fn weyl_dim(t: char, n: usize, lam: &[i64]) -> i64 {
    let a = finite_cartan(t, n);
    let len = squared_lengths(t, n);
    let ip = |i: usize, j: usize| Q::from_integer(a[i][j]) * len[i] / 2;
    let mut num = Q::from_integer(1);
    for b in positive_roots(&a) {
        let bb: Q = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| Q::from_integer(b[i] * b[j]) * ip(i, j))
            .sum();
        // ⟨x, β^∨⟩ = 2(x, β)/(β, β) with (ϖ_j, α_j) = (α_j, α_j)/2
        let pair = |x: &[i64]| -> Q {
            (0..n)
                .map(|j| Q::from_integer(b[j] * x[j]) * len[j] / 2)
                .sum::<Q>()
                * 2
                / bb
        };
        let rho = vec![1i64; n];
        let shifted: Vec<i64> = lam.iter().map(|x| x + 1).collect();
        num *= pair(&shifted) / pair(&rho);
    }
    assert!(num.is_integer());
    num.to_integer()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| (j + 1 == i) as i64).collect()
}

/// dim W(ϖ_i) from the known decompositions of fundamental KR modules.
pub fn kr_fundamental_dim(t: char, n: usize, i: usize) -> i64 {
    let v = |k: usize| {
        if k == 0 {
            1
        } else {
            weyl_dim(t, n, &unit(n, k))
        }
    };
    match (t, i) {
        ('A', _) | ('C', _) => v(i),
        ('B', _) if i == n => v(i),
        ('B', _) => (0..=i).rev().step_by(2).map(v).sum(),
        ('D', 2) if n == 4 => v(2) + 1,
        ('D', _) => v(i),
        ('G', 1) => v(1) + 1,
        ('G', 2) => v(2),
        ('F', 1) => v(1) + 1,
        ('F', 4) => v(4),
        _ => panic!("no KR oracle for {}{} ϖ_{}", t, n, i),
    }
}

/// Whether `target` lies in the orbit of `x` under words of length ≤ depth.
pub fn orbit_reaches(rs: &RootSystem, x: &Weight, target: &Weight, depth: usize) -> bool {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut layer = vec![x.clone()];
    seen.insert(x.clone());
    for _ in 0..=depth {
        if layer.iter().any(|w| w == target) {
            return true;
        }
        let mut next = Vec::new();
        for w in &layer {
            for i in rs.nodes() {
                let y = rs.reflect(i, w);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    false
}

/// All dominant ϖ-coefficient vectors of length n with sum ≤ max.
pub fn weights_up_to(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                let used: i64 = v.iter().sum();
                (0..=max - used).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}
