//! Command-line driver. Node labels follow Kac's tables: B_n and C_n end in
//! the special node n (short for B, long for C), D_4 has central node 2, F_4
//! has short nodes 3 and 4, G_2 has long node 1 and short node 2.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::crystal::{generate_b0_normalized, NormalizedCrystal};
use crate::decomposition::{
    component_characters_ok, decompose_tensor_image, sh_embed_check, short_restriction_identity,
    verify_main_with, weyl_filtration_multiset, Caps, DEFAULT_RAISE_CAP,
};
use crate::demazure::{demazure_character, demazure_crystal, demazure_params};
use crate::error::Error;
use crate::export::{
    character_json, character_tsv, filtration_json, filtration_tsv, node_hash,
    normalized_crystal_json, normalized_crystal_tsv, poly_json, varpi_json, weight_json,
};
use crate::root_data::{RootSystem, Weight};
use crate::selftest::{check_crystal, run_suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IDENTITY: i32 = 3;

pub const SUPPORTED: &[(char, usize)] = &[
    ('A', 1),
    ('A', 2),
    ('A', 3),
    ('A', 4),
    ('B', 2),
    ('B', 3),
    ('B', 4),
    ('C', 2),
    ('C', 3),
    ('C', 4),
    ('D', 4),
    ('G', 2),
    ('F', 4),
];

#[derive(Parser, Debug)]
#[command(
    name = "affine-paths",
    version,
    about = "Level-zero path crystals, Demazure crystals and Weyl module characters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Args, Debug, Clone)]
pub struct System {
    /// Type letter (A, B, C, D, F, G).
    #[arg(long = "type")]
    pub ty: char,
    #[arg(long)]
    pub rank: usize,
    #[arg(long, default_value_t = crate::crystal::DEFAULT_NODE_CAP)]
    pub node_cap: usize,
    #[arg(long, default_value_t = DEFAULT_RAISE_CAP)]
    pub raise_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// B(λ)_cl with wt_P̂ and Deg for every node.
    Crystal {
        #[command(flatten)]
        sys: System,
        /// ϖ-coefficients, e.g. 1,0,2 (empty for λ = 0).
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Include each node's path expression.
        #[arg(long)]
        paths: bool,
    },
    /// The Demazure crystal of (level, λ, m) and its character.
    Demazure {
        #[command(flatten)]
        sys: System,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long, default_value_t = 1)]
        level: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        mshift: i64,
    },
    /// Components of b_{Λ_0} ⊗ B(λ)_cl.
    Decompose {
        #[command(flatten)]
        sys: System,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// List node ids per component.
        #[arg(long)]
        nodes: bool,
    },
    /// The Demazure filtration multiset {(μ_i, m_i)}.
    Filtration {
        #[command(flatten)]
        sys: System,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Every identity for each listed λ.
    Verify {
        #[command(flatten)]
        sys: System,
        #[arg(long, required = true, allow_hyphen_values = true)]
        weight: Vec<String>,
    },
    /// Randomized operator properties; every supported type unless --type is given.
    Selftest {
        #[arg(long = "type")]
        ty: Option<char>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Exit status, stdout and stderr of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn config(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_CONFIG,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }

    fn checked(stdout: String, pass: bool, diff: String) -> Self {
        Outcome {
            code: if pass { EXIT_OK } else { EXIT_IDENTITY },
            stdout,
            stderr: diff,
        }
    }
}

fn config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Unsupported(..)
            | Error::UnknownNode(_)
            | Error::SimplyLaced
            | Error::Invalid(_)
            | Error::CapExceeded(_)
    )
}

fn from_error(e: Error) -> Outcome {
    if config_error(&e) {
        Outcome::config(e.to_string())
    } else {
        Outcome {
            code: EXIT_IDENTITY,
            stdout: String::new(),
            stderr: format!("identity failure: {}\n", e),
        }
    }
}

fn system(ty: char, rank: usize) -> Result<RootSystem, Outcome> {
    let ty = ty.to_ascii_uppercase();
    if !SUPPORTED.contains(&(ty, rank)) {
        return Err(Outcome::config(format!(
            "{}{} is not in the supported table",
            ty, rank
        )));
    }
    RootSystem::from_letter(ty, rank).map_err(from_error)
}

pub fn parse_weight(rs: &RootSystem, text: &str) -> Result<Weight, Outcome> {
    let text = text.trim();
    let coeffs: Vec<i64> = if text.is_empty() {
        vec![0; rs.rank()]
    } else {
        text.split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| Outcome::config(format!("bad weight {:?}: {}", text, e)))?
    };
    if coeffs.len() != rs.rank() {
        return Err(Outcome::config(format!(
            "weight {:?} has {} coefficients, {} needs {}",
            text,
            coeffs.len(),
            rs.name(),
            rs.rank()
        )));
    }
    if coeffs.iter().any(|&c| c < 0) {
        return Err(Outcome::config(format!(
            "weight {:?} has a negative coefficient",
            text
        )));
    }
    Ok(rs.classical(&coeffs))
}

fn caps(sys: &System) -> Result<Caps, Outcome> {
    if sys.node_cap == 0 || sys.raise_cap == 0 {
        return Err(Outcome::config("caps must be positive"));
    }
    Ok(Caps {
        nodes: sys.node_cap,
        raise: sys.raise_cap,
    })
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Outcome {
    match run_inner(cli) {
        Ok(o) | Err(o) => o,
    }
}

/// Parses `args` (without the program name) and runs; clap usage errors map
/// to the configuration exit status.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let full = std::iter::once(std::ffi::OsString::from("affine-paths"))
        .chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(full) {
        Ok(cli) => run(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: EXIT_CONFIG,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

fn run_inner(cli: Cli) -> Result<Outcome, Outcome> {
    match cli.command {
        Command::Crystal { sys, weight, paths } => {
            let rs = system(sys.ty, sys.rank)?;
            let lam = parse_weight(&rs, &weight)?;
            let nc = generate_b0_normalized(&rs, &lam, caps(&sys)?.nodes).map_err(from_error)?;
            Ok(Outcome::ok(match sys.format {
                Format::Json => {
                    let mut v = normalized_crystal_json(&nc, paths);
                    v["system"] = rs.spec_json();
                    v["lambda"] = varpi_json(&lam);
                    render(&v)
                }
                Format::Tsv => normalized_crystal_tsv(&nc),
                Format::Dot => {
                    crate::export::graph_dot(nc.graph(), &format!("B({})_cl", lam.fmt_short()))
                }
            }))
        }
        Command::Demazure {
            sys,
            weight,
            level,
            mshift,
        } => {
            let rs = system(sys.ty, sys.rank)?;
            let lam = parse_weight(&rs, &weight)?;
            let cap = caps(&sys)?.nodes;
            let spec = demazure_params(&rs, level, &lam, mshift).map_err(from_error)?;
            let dc = demazure_crystal(&rs, &spec, cap).map_err(from_error)?;
            let chi = demazure_character(&rs, &spec, true, cap).map_err(from_error)?;
            Ok(Outcome::ok(match sys.format {
                Format::Json => render(&json!({
                    "system": rs.spec_json(),
                    "level": level,
                    "lambda": varpi_json(&lam),
                    "m": mshift,
                    "highest": weight_json(&spec.highest),
                    "word": spec.word.0,
                    "size": dc.len(),
                    "character": character_json(&chi),
                })),
                Format::Tsv => format!("# size\t{}\n{}", dc.len(), character_tsv(&chi)),
                Format::Dot => demazure_dot(&rs, &dc).map_err(from_error)?,
            }))
        }
        Command::Decompose { sys, weight, nodes } => {
            let rs = system(sys.ty, sys.rank)?;
            let lam = parse_weight(&rs, &weight)?;
            let caps = caps(&sys)?;
            let nc = generate_b0_normalized(&rs, &lam, caps.nodes).map_err(from_error)?;
            let image = decompose_tensor_image(&rs, &nc, caps).map_err(from_error)?;
            let chars = component_characters_ok(&rs, &nc, &image, caps).map_err(from_error)?;
            let pass = chars.iter().all(|&b| b);
            let out = match sys.format {
                Format::Tsv => {
                    let mut s = String::from("mu\tn\tsize\tdemazure_char\n");
                    for (c, ok) in image.components.iter().zip(&chars) {
                        let _ = writeln!(
                            s,
                            "{}\t{}\t{}\t{}",
                            c.mu.fmt_short(),
                            c.n,
                            c.members.len(),
                            pass_word(*ok)
                        );
                    }
                    s
                }
                _ => {
                    let comps: Vec<Value> = image
                        .components
                        .iter()
                        .zip(&chars)
                        .map(|(c, ok)| {
                            let mut v = json!({
                                "mu": varpi_json(&c.mu),
                                "n": c.n,
                                "size": c.members.len(),
                                "highest": node_hash(nc.path(c.highest)),
                                "demazure_char": ok,
                            });
                            if nodes {
                                v["nodes"] =
                                    c.members.iter().map(|&u| node_hash(nc.path(u))).collect();
                            }
                            v
                        })
                        .collect();
                    render(&json!({
                        "system": rs.spec_json(),
                        "lambda": varpi_json(&lam),
                        "components": comps,
                        "checks": {
                            "partition": true,
                            "unique_maximum": true,
                            "extremal": true,
                            "demazure_characters": pass,
                        },
                    }))
                }
            };
            Ok(Outcome::checked(out, pass, String::new()))
        }
        Command::Filtration { sys, weight } => {
            let rs = system(sys.ty, sys.rank)?;
            let lam = parse_weight(&rs, &weight)?;
            let fm = weyl_filtration_multiset(&rs, &lam, caps(&sys)?).map_err(from_error)?;
            Ok(Outcome::ok(match sys.format {
                Format::Tsv => filtration_tsv(&fm),
                _ => render(&json!({
                    "system": rs.spec_json(),
                    "lambda": varpi_json(&lam),
                    "filtration": filtration_json(&fm),
                })),
            }))
        }
        Command::Verify { sys, weight } => {
            let rs = system(sys.ty, sys.rank)?;
            let caps = caps(&sys)?;
            let lams = weight
                .iter()
                .map(|w| parse_weight(&rs, w))
                .collect::<Result<Vec<_>, _>>()?;
            let mut rows = Vec::new();
            let mut diff = String::new();
            let mut all = true;
            for lam in &lams {
                let row = verify_row(&rs, lam, caps).map_err(from_error)?;
                all &= row.checks.iter().all(|(_, ok)| *ok);
                diff.push_str(&row.diff);
                rows.push((lam.clone(), row));
            }
            let out = match sys.format {
                Format::Tsv => {
                    let mut s = String::from("lambda");
                    for (name, _) in &rows[0].1.checks {
                        s.push('\t');
                        s.push_str(name);
                    }
                    s.push('\n');
                    for (lam, row) in &rows {
                        s.push_str(&lam.fmt_short());
                        for (_, ok) in &row.checks {
                            s.push('\t');
                            s.push_str(pass_word(*ok));
                        }
                        s.push('\n');
                    }
                    s
                }
                _ => {
                    let v: Vec<Value> = rows
                        .iter()
                        .map(|(lam, row)| {
                            let checks: serde_json::Map<String, Value> = row
                                .checks
                                .iter()
                                .map(|(k, ok)| (k.to_string(), json!(ok)))
                                .collect();
                            json!({
                                "lambda": varpi_json(lam),
                                "dim": row.dim,
                                "checks": checks,
                                "graded": row.graded,
                            })
                        })
                        .collect();
                    render(&json!({ "system": rs.spec_json(), "results": v, "pass": all }))
                }
            };
            Ok(Outcome::checked(out, all, diff))
        }
        Command::Selftest {
            ty,
            rank,
            seed,
            samples,
            format,
        } => {
            let systems: Vec<(char, usize)> = match (ty, rank) {
                (Some(t), Some(r)) => vec![(t, r)],
                (None, None) => SUPPORTED.to_vec(),
                _ => return Err(Outcome::config("--type and --rank go together")),
            };
            let mut all = true;
            let mut rows = Vec::new();
            let mut diff = String::new();
            for (t, r) in systems {
                let rs = system(t, r)?;
                let rep = run_suite(&rs, seed, samples);
                all &= rep.failures.is_empty();
                for f in &rep.failures {
                    let _ = writeln!(diff, "{}: {}", rep.system, f);
                }
                rows.push(rep);
            }
            let out = match format {
                Format::Tsv => {
                    let mut s = String::from("system\tpaths\tpairs\tfailures\n");
                    for r in &rows {
                        let _ = writeln!(
                            s,
                            "{}\t{}\t{}\t{}",
                            r.system,
                            r.paths,
                            r.pairs,
                            r.failures.len()
                        );
                    }
                    s
                }
                _ => render(&json!({
                    "seed": seed,
                    "results": rows.iter().map(|r| json!({
                        "system": r.system,
                        "paths": r.paths,
                        "pairs": r.pairs,
                        "failures": r.failures,
                    })).collect::<Vec<_>>(),
                    "pass": all,
                })),
            };
            Ok(Outcome::checked(out, all, diff))
        }
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// Named pass/fail checks for one λ and the accumulated diff text.
pub struct VerifyRow {
    pub checks: Vec<(&'static str, bool)>,
    pub diff: String,
    pub dim: usize,
    pub graded: Value,
}

pub fn verify_row(rs: &RootSystem, lam: &Weight, caps: Caps) -> crate::Result<VerifyRow> {
    let nc = generate_b0_normalized(rs, lam, caps.nodes)?;
    let rep = verify_main_with(rs, &nc, caps)?;
    let mut diff = rep.diff.clone();
    let mut row = vec![
        ("path_vs_filtration", rep.char_ok),
        ("filtration_vs_image", rep.multiset_ok),
        ("graded_multiplicities", rep.graded_ok),
    ];
    let image = decompose_tensor_image(rs, &nc, caps)?;
    row.push((
        "component_characters",
        component_characters_ok(rs, &nc, &image, caps)?
            .iter()
            .all(|&b| b),
    ));
    row.push(("dimension_product", dimension_product(rs, lam, &nc, caps)?));
    let ops = check_crystal(rs, &nc);
    if let Err(e) = &ops {
        let _ = writeln!(diff, "operators: {}", e);
    }
    row.push(("operators", ops.is_ok()));
    if !rs.is_simply_laced() {
        let sr = short_restriction_identity(rs, lam, &nc, &[0, 1], caps)?;
        diff.push_str(&sr.diff);
        row.push(("short_restriction", sr.restriction_ok));
        row.push(("short_demazure", sr.demazure_ok.iter().all(|x| x.1)));
        let emb = sh_embed_check(rs, lam, &nc, caps);
        if let Err(e) = &emb {
            let _ = writeln!(diff, "sh_embed: {}", e);
        }
        row.push(("sh_embed", emb.is_ok()));
    }
    let graded = rep
        .graded
        .iter()
        .map(|(mu, p)| json!({ "mu": varpi_json(mu), "poly": poly_json(p) }))
        .collect();
    Ok(VerifyRow {
        checks: row,
        diff,
        dim: rep.dim,
        graded,
    })
}

/// #B(λ)_cl = Π #B(ϖ_i)_cl^{λ_i}.
pub fn dimension_product(
    rs: &RootSystem,
    lam: &Weight,
    nc: &NormalizedCrystal,
    caps: Caps,
) -> crate::Result<bool> {
    let mut prod: u128 = 1;
    for i in rs.finite_nodes() {
        let k = lam.pair(i).to_integer();
        if k > 0 {
            let size = generate_b0_normalized(rs, &rs.varpi(i), caps.nodes)?.len() as u128;
            prod *= size.pow(k as u32);
        }
    }
    Ok(prod == nc.len() as u128)
}

fn demazure_dot(rs: &RootSystem, dc: &crate::demazure::DemazureCrystal) -> crate::Result<String> {
    let mut out = String::from("digraph \"demazure\" {\n");
    for p in dc.nodes() {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{}\"];",
            node_hash(p),
            p.endpoint().fmt_short()
        );
    }
    for p in dc.nodes() {
        for i in rs.nodes() {
            if let Some(q) = p.f(rs, i)? {
                if dc.contains(&q) {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -> \"{}\" [label=\"{}\"];",
                        node_hash(p),
                        node_hash(&q),
                        i
                    );
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
