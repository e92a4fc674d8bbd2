//! Finite crystals as operator closures of paths, the δ-normalized
//! representatives π_η of B₀(λ), and the degree function.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::path::Path;
use crate::root_data::{RootSystem, Weight};
use crate::Q;

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// Nodes are canonical paths; `f_edges[u][k]` is f̃_{ops[k]} applied to node u.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    nodes: Vec<Path>,
    index: HashMap<Path, usize>,
    ops: Vec<usize>,
    seeds: Vec<usize>,
    f_edges: Vec<Vec<Option<usize>>>,
    e_edges: Vec<Vec<Option<usize>>>,
}

impl CrystalGraph {
    fn empty(ops: &[usize]) -> Self {
        CrystalGraph {
            nodes: Vec::new(),
            index: HashMap::new(),
            ops: ops.to_vec(),
            seeds: Vec::new(),
            f_edges: Vec::new(),
            e_edges: Vec::new(),
        }
    }

    /// Insert-if-absent; returns (id, newly inserted).
    fn insert(&mut self, p: Path, cap: usize) -> Result<(usize, bool)> {
        if let Some(&id) = self.index.get(&p) {
            return Ok((id, false));
        }
        if self.nodes.len() >= cap {
            return Err(Error::CapExceeded(cap));
        }
        let id = self.nodes.len();
        self.index.insert(p.clone(), id);
        self.nodes.push(p);
        self.f_edges.push(vec![None; self.ops.len()]);
        self.e_edges.push(vec![None; self.ops.len()]);
        Ok((id, true))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Path] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &Path {
        &self.nodes[id]
    }

    pub fn id_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.index.contains_key(p)
    }

    pub fn ops(&self) -> &[usize] {
        &self.ops
    }

    pub fn seeds(&self) -> &[usize] {
        &self.seeds
    }

    fn op_slot(&self, i: usize) -> Option<usize> {
        self.ops.iter().position(|&o| o == i)
    }

    pub fn f_edge(&self, u: usize, i: usize) -> Option<usize> {
        self.op_slot(i).and_then(|k| self.f_edges[u][k])
    }

    pub fn e_edge(&self, u: usize, i: usize) -> Option<usize> {
        self.op_slot(i).and_then(|k| self.e_edges[u][k])
    }

    /// All (source, i, target) f̃-edges in node order.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.f_edges.iter().enumerate() {
            for (k, t) in row.iter().enumerate() {
                if let Some(v) = t {
                    out.push((u, self.ops[k], *v));
                }
            }
        }
        out
    }

    pub fn weights(&self) -> impl Iterator<Item = Weight> + '_ {
        self.nodes.iter().map(Path::endpoint)
    }
}

/// Breadth-first closure of `seeds` under ẽ_i, f̃_i for i ∈ `ops`.
pub fn generate(
    rs: &RootSystem,
    seeds: &[Path],
    ops: &[usize],
    cap: usize,
) -> Result<CrystalGraph> {
    generate_with(rs, seeds, ops, cap, |p| Ok((p, 0)), |_, _| Ok(())).map(|(g, _, _)| g)
}

type Offsets = Vec<Vec<Option<i64>>>;

/// Closure where each produced path passes through `norm`, which returns the
/// representative and the removed δ offset.
fn generate_with(
    rs: &RootSystem,
    seeds: &[Path],
    ops: &[usize],
    cap: usize,
    norm: impl Fn(Path) -> Result<(Path, i64)>,
    mut on_offset: impl FnMut(i64, &Path) -> Result<()>,
) -> Result<(CrystalGraph, Offsets, Offsets)> {
    if cap == 0 {
        return Err(Error::Invalid("cap must be positive".into()));
    }
    for &i in ops {
        if i > rs.rank() {
            return Err(Error::UnknownNode(i));
        }
    }
    let mut g = CrystalGraph::empty(ops);
    let mut f_off: Offsets = Vec::new();
    let mut e_off: Offsets = Vec::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if !s.is_integral() {
            return Err(Error::NonIntegral);
        }
        let (p, _) = norm(s.clone())?;
        let (id, new) = g.insert(p, cap)?;
        if new {
            f_off.push(vec![None; ops.len()]);
            e_off.push(vec![None; ops.len()]);
            queue.push_back(id);
        }
        g.seeds.push(id);
    }
    while let Some(u) = queue.pop_front() {
        for (k, &i) in ops.iter().enumerate() {
            for raise in [false, true] {
                let Some(next) = g.nodes[u].op(rs, i, raise)? else {
                    continue;
                };
                let (p, off) = norm(next)?;
                on_offset(off, &p)?;
                let (v, new) = g.insert(p, cap)?;
                if new {
                    f_off.push(vec![None; ops.len()]);
                    e_off.push(vec![None; ops.len()]);
                    queue.push_back(v);
                }
                if raise {
                    g.e_edges[u][k] = Some(v);
                    e_off[u][k] = Some(off);
                } else {
                    g.f_edges[u][k] = Some(v);
                    f_off[u][k] = Some(off);
                }
            }
        }
    }
    Ok((g, f_off, e_off))
}

/// d_λ = gcd_{i∈I} ⟨λ, α_i^∨⟩.
pub fn d_lambda(rs: &RootSystem, lambda: &Weight) -> Result<i64> {
    check_classical_dominant(rs, lambda)?;
    let g = rs
        .finite_nodes()
        .fold(0i64, |g, i| g.gcd(&lambda.pair(i).to_integer()));
    if g == 0 {
        return Err(Error::Invalid("d_λ is undefined for λ = 0".into()));
    }
    Ok(g)
}

fn check_classical_dominant(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    if !rs.is_classical(lambda) || !rs.is_finite_dominant(lambda) || !lambda.is_integral() {
        return Err(Error::Invalid(format!(
            "expected a dominant classical weight, got {}",
            lambda
        )));
    }
    Ok(())
}

/// The representatives {π_η : η ∈ B(λ)_cl}, i.e. the paths of B₀(λ) with
/// ι(π) ∈ Wλ, with the δ offsets removed along each edge.
#[derive(Clone, Debug)]
pub struct NormalizedCrystal {
    lambda: Weight,
    d_lambda: i64,
    graph: CrystalGraph,
    /// f̃_i π_η = π_{f̃_i η} + π_{kδ}; entry [η][i] holds k.
    f_offsets: Offsets,
    e_offsets: Offsets,
    observed_gcd: i64,
}

impl NormalizedCrystal {
    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn d_lambda(&self) -> i64 {
        self.d_lambda
    }

    pub fn graph(&self) -> &CrystalGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn path(&self, id: usize) -> &Path {
        self.graph.node(id)
    }

    /// wt_P̂(η) = π_η(1).
    pub fn wt_phat(&self, id: usize) -> Weight {
        self.graph.node(id).endpoint()
    }

    /// Deg(η) = −(δ coefficient of π_η(1)).
    pub fn degree(&self, id: usize) -> i64 {
        let d = -self.wt_phat(id).delta();
        assert!(d.is_integer());
        d.to_integer()
    }

    /// δ offset removed when normalizing f̃_i π_η (None if f̃_i η = ∅).
    pub fn f_offset(&self, id: usize, i: usize) -> Option<i64> {
        self.f_offsets[id][i]
    }

    pub fn e_offset(&self, id: usize, i: usize) -> Option<i64> {
        self.e_offsets[id][i]
    }

    /// gcd of all nonzero offsets met during generation (0 if none).
    pub fn observed_offset_gcd(&self) -> i64 {
        self.observed_gcd
    }

    /// Classically highest nodes: ẽ_j η = ∅ for all j ∈ I.
    pub fn classically_highest(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| (1..self.graph.ops.len()).all(|j| self.graph.e_edges[u][j].is_none()))
            .collect()
    }
}

/// Shifts π so that ι(π) has zero δ coefficient; checks the shift against d_λ
/// and that ι lands in Wλ.
fn normalize(rs: &RootSystem, w0_lambda: &Weight, d: i64, p: Path) -> Result<(Path, i64)> {
    let k = p.initial_direction().delta();
    if !k.is_integer() {
        return Err(Error::Normalization(format!("non-integral offset {}", k)));
    }
    let k = k.to_integer();
    if (d == 0 && k != 0) || (d != 0 && k % d != 0) {
        return Err(Error::Normalization(format!(
            "offset {} is not a multiple of d_λ = {}",
            k, d
        )));
    }
    let p = if k == 0 {
        p
    } else {
        p.shift_delta(Q::from_integer(-k))
    };
    if rs.antidominantize_finite(p.initial_direction()) != *w0_lambda {
        return Err(Error::Normalization(format!(
            "initial direction {} is not in Wλ",
            p.initial_direction()
        )));
    }
    Ok((p, k))
}

pub fn generate_b0_normalized(
    rs: &RootSystem,
    lambda: &Weight,
    cap: usize,
) -> Result<NormalizedCrystal> {
    check_classical_dominant(rs, lambda)?;
    let d = if lambda.is_zero() {
        0
    } else {
        d_lambda(rs, lambda)?
    };
    let w0l = rs.antidominantize_finite(lambda);
    let ops: Vec<usize> = rs.nodes().collect();
    let mut gcd = 0i64;
    let (graph, f_offsets, e_offsets) = generate_with(
        rs,
        &[Path::straight(lambda.clone())],
        &ops,
        cap,
        |p| normalize(rs, &w0l, d, p),
        |k, _| {
            gcd = gcd.gcd(&k);
            Ok(())
        },
    )?;
    if d != 0 && gcd != d {
        return Err(Error::Normalization(format!(
            "observed δ offsets generate {}Z, expected d_λ = {}",
            gcd, d
        )));
    }
    Ok(NormalizedCrystal {
        lambda: lambda.clone(),
        d_lambda: d,
        graph,
        f_offsets,
        e_offsets,
        observed_gcd: gcd,
    })
}

/// B(λ)_cl generated directly as the closure of cl(π_λ).
pub fn generate_b_cl(rs: &RootSystem, lambda: &Weight, cap: usize) -> Result<CrystalGraph> {
    check_classical_dominant(rs, lambda)?;
    let ops: Vec<usize> = rs.nodes().collect();
    generate(rs, &[Path::straight(lambda.cl())], &ops, cap)
}

/// Lift compatibility: normalizing ẽ_i π_η / f̃_i π_η needs no shift for
/// i ∈ I, and f̃_0 π_η needs none whenever ẽ_0 η ≠ ∅.
pub fn compatible_lift_check(rs: &RootSystem, nc: &NormalizedCrystal) -> Result<()> {
    for u in 0..nc.len() {
        for i in rs.finite_nodes() {
            for (name, off) in [("e", nc.e_offset(u, i)), ("f", nc.f_offset(u, i))] {
                if off.is_some_and(|k| k != 0) {
                    return Err(Error::Identity(format!(
                        "{}_{} on node {} needed a δ shift",
                        name, i, u
                    )));
                }
            }
        }
        if nc.e_offset(u, 0).is_some() && nc.f_offset(u, 0).is_some_and(|k| k != 0) {
            return Err(Error::Identity(format!(
                "f_0 on node {} needed a δ shift although e_0 is defined",
                u
            )));
        }
    }
    Ok(())
}

/// Checks Deg ≤ 0 and that every weight lies in cl(λ − Q_+).
pub fn degree_and_weight_check(rs: &RootSystem, nc: &NormalizedCrystal) -> Result<()> {
    for u in 0..nc.len() {
        if nc.degree(u) > 0 {
            return Err(Error::Identity(format!(
                "Deg = {} > 0 at node {}",
                nc.degree(u),
                u
            )));
        }
        let diff = nc.lambda() - &nc.wt_phat(u);
        if !rs.in_q_plus(&diff) || !rs.level(&diff).is_zero() {
            return Err(Error::Identity(format!(
                "weight of node {} escapes λ − Q_+",
                u
            )));
        }
    }
    let top = nc.path(0);
    if top != &Path::straight(nc.lambda().clone()) || nc.degree(0) != 0 {
        return Err(Error::Identity(
            "π_λ is not the first node with Deg 0".into(),
        ));
    }
    Ok(())
}
