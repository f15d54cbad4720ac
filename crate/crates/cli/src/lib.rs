//! Command-line front end: parses input files, dispatches to `eqfix-core`
//! and prints schema-versioned JSON reports.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use eqfix_core::catalog;
use eqfix_core::complex::{homology_integral, homology_mod_p, GCWComplex, Subcomplex};
use eqfix_core::cover::{component_splittings, CoverModel};
use eqfix_core::euler::rebalance_profile;
use eqfix_core::group::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
use eqfix_core::io::{self, ComplexSpec, DeficitSpec, ExtensionSpec, GroupSpec, ProfileSpec, SCHEMA_VERSION};
use eqfix_core::oliver::{classify, degree_zero_solution, effective_modulus, Modulus, OliverClass};
use eqfix_core::pseudo::{smith_conditions, verdict, VerdictContext};
use eqfix_core::trace::{equivariant_euler_rank, compwise_trace_check, cyclic_trace_check};
use eqfix_core::{Error, Int, Rational, Result};
use serde_json::{json, Value};

pub mod schema;

/// Exit code for malformed input or a failed computation.
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "eqfix", version, about = "Euler-characteristic obstructions for fixed sets of finite group actions")]
pub struct Cli {
    /// Single-line JSON output.
    #[arg(long, global = true)]
    pub compact: bool,
    /// Largest group order accepted in any input.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    pub max_order: usize,
    /// Print the JSON schemas of all inputs and reports.
    #[arg(long)]
    pub schema: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether n_G is 0, 1 or neither.
    Classify {
        group: PathBuf,
        /// Externally known n_G, checked against the class.
        #[arg(long)]
        n_g: Option<u64>,
    },
    /// Solve 1 + Σ a_i·|G : N_G(P_i)| = 0 over the Sylow subgroups.
    DegreeZero { group: PathBuf },
    /// Fixed sets and homology of a G-CW complex.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Rebalance an Euler profile by cone moves.
    Rebalance {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        modulus: u64,
    },
    /// Smith, trace and verdict checks.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Equivariant Euler characteristic in the trace group.
    #[command(subcommand)]
    Trace(TraceCommand),
    /// Bundled groups and complexes.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand, Debug)]
pub enum ComplexCommand {
    /// Fixed subcomplex of a subgroup and its components.
    Fixed {
        complex: PathBuf,
        /// Element indices; the whole group by default.
        #[arg(long, value_delimiter = ',')]
        subgroup: Option<Vec<usize>>,
    },
    /// Integral homology, optionally of a fixed subcomplex, plus mod-p Betti numbers.
    Homology {
        complex: PathBuf,
        #[arg(long, value_delimiter = ',')]
        subgroup: Option<Vec<usize>>,
        #[arg(long)]
        prime: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    /// Cover complex with group Γ; `free_kernel` names π.
    #[arg(long)]
    pub cover: PathBuf,
    #[arg(long)]
    pub extension: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Mod-p homology of fixed sets of every p-subgroup.
    Smith { x: PathBuf, y: PathBuf },
    /// Combined obstruction verdict for a deficit vector.
    Verdict {
        #[arg(long)]
        deficits: PathBuf,
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        n_g: Option<u64>,
        #[arg(long, requires = "cover")]
        extension: Option<PathBuf>,
        #[arg(long)]
        cover: Option<PathBuf>,
        /// Normal p-subgroup of G for the componentwise trace check.
        #[arg(long, value_delimiter = ',', requires = "cover")]
        p_subgroup: Option<Vec<usize>>,
    },
    /// Trace identity for one element γ over a cyclic quotient.
    Cyclic {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long)]
        gamma: usize,
        /// χ(F_C) per component of the base's fixed set.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        fixed_euler: Vec<i64>,
    },
    /// Componentwise trace identities for a normal p-subgroup of G.
    Compwise {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long, value_delimiter = ',')]
        p_subgroup: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        fixed_euler: Vec<i64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TraceCommand {
    /// Hattori–Stallings rank of the equivariant Euler characteristic.
    Rank {
        #[command(flatten)]
        cover: CoverArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// Names of the bundled groups and complexes.
    List,
    /// A bundled group as a multiplication table.
    Group { name: String },
    /// A bundled complex or model.
    Complex { name: String },
}

/// Runs one invocation; returns the exit code and the text for stdout.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (EXIT_ERROR, render(&error_value("usage", "UsageError", &e.to_string()), false)),
            };
        }
    };
    let name = cli.command.as_ref().map_or("schema", command_name);
    let outcome = if cli.schema {
        Ok((0, schema::all()))
    } else if let Some(cmd) = &cli.command {
        dispatch(cmd, cli.max_order)
    } else {
        Err(Error::InvalidInput("no command given; see --help".into()))
    };
    match outcome {
        Ok((code, mut body)) => {
            if !cli.schema {
                body["schema_version"] = json!(SCHEMA_VERSION);
                body["command"] = json!(name);
            }
            (code, render(&body, cli.compact))
        }
        Err(e) => (EXIT_ERROR, render(&error_value(name, e.kind(), &e.to_string()), cli.compact)),
    }
}

fn render(v: &Value, compact: bool) -> String {
    let mut s = if compact { serde_json::to_string(v) } else { serde_json::to_string_pretty(v) }.expect("json value");
    s.push('\n');
    s
}

fn error_value(command: &str, kind: &str, message: &str) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": { "kind": kind, "message": message },
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Classify { .. } => "classify",
        Command::DegreeZero { .. } => "degree-zero",
        Command::Complex(ComplexCommand::Fixed { .. }) => "complex fixed",
        Command::Complex(ComplexCommand::Homology { .. }) => "complex homology",
        Command::Rebalance { .. } => "rebalance",
        Command::Check(CheckCommand::Smith { .. }) => "check smith",
        Command::Check(CheckCommand::Verdict { .. }) => "check verdict",
        Command::Check(CheckCommand::Cyclic { .. }) => "check cyclic",
        Command::Check(CheckCommand::Compwise { .. }) => "check compwise",
        Command::Trace(TraceCommand::Rank { .. }) => "trace rank",
        Command::Catalog(_) => "catalog",
    }
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    io::parse(&text)
}

fn load_group(path: &Path, cap: usize) -> Result<FiniteGroup> {
    read::<GroupSpec>(path)?.build_capped(cap)
}

fn check_group_caps(spec: &ComplexSpec, cap: usize) -> Result<()> {
    if let Some(g) = &spec.group {
        g.build_capped(cap)?;
    }
    Ok(())
}

fn load_gcw(path: &Path, cap: usize) -> Result<GCWComplex> {
    let spec: ComplexSpec = read(path)?;
    check_group_caps(&spec, cap)?;
    spec.gcw()
}

fn load_cover(args: &CoverArgs, cap: usize) -> Result<CoverModel> {
    let spec: ComplexSpec = read(&args.cover)?;
    check_group_caps(&spec, cap)?;
    let ext = args.extension.as_deref().map(read::<ExtensionSpec>).transpose()?;
    if let Some(e) = &ext {
        e.gamma.build_capped(cap)?;
    }
    io::cover_model(&spec, ext.as_ref())
}

fn subgroup_or_whole(g: &FiniteGroup, elements: &Option<Vec<usize>>) -> Result<Subgroup> {
    match elements {
        Some(e) => Subgroup::from_elements(g, e),
        None => Ok(Subgroup::whole(g)),
    }
}

fn dispatch(cmd: &Command, cap: usize) -> Result<(i32, Value)> {
    match cmd {
        Command::Classify { group, n_g } => {
            let g = load_group(group, cap)?;
            let class = classify(&g)?;
            let n = effective_modulus(&class, *n_g)?;
            let witness = match &class {
                OliverClass::Zero { p_subgroup } => json!({ "p_subgroup": p_subgroup }),
                OliverClass::NontrivialUnknown { p_subgroup, h_subgroup } => {
                    json!({ "p_subgroup": p_subgroup, "h_subgroup": h_subgroup })
                }
                OliverClass::One => Value::Null,
            };
            Ok((0, json!({ "order": g.order(), "tag": class.name(), "witness": witness, "m_G": class.m_g(), "n_G": n })))
        }
        Command::DegreeZero { group } => {
            let g = load_group(group, cap)?;
            let sol = degree_zero_solution(&g)?;
            let indices: Vec<Value> = sol.indices.iter().map(|&(p, m)| json!({ "p": p, "index": m })).collect();
            Ok((0, json!({ "order": g.order(), "indices": indices, "coefficients": sol.coefficients, "check": sol.check() as i64 })))
        }
        Command::Complex(ComplexCommand::Fixed { complex, subgroup }) => {
            let y = load_gcw(complex, cap)?;
            let h = subgroup_or_whole(y.group(), subgroup)?;
            let fixed = y.fixed_subcomplex(&h);
            let comps: Vec<Value> = fixed
                .components()
                .iter()
                .map(|c| json!({ "cells": c.ids(), "euler_characteristic": c.euler_characteristic() }))
                .collect();
            Ok((
                0,
                json!({
                    "subgroup": h,
                    "cells": fixed.ids(),
                    "euler_characteristic": fixed.euler_characteristic(),
                    "components": comps,
                    "delta": y.delta_invariant(&h),
                }),
            ))
        }
        Command::Complex(ComplexCommand::Homology { complex, subgroup, prime }) => {
            let y = load_gcw(complex, cap)?;
            let cells = match subgroup {
                Some(_) => y.fixed_subcomplex(&subgroup_or_whole(y.group(), subgroup)?),
                None => Subcomplex::whole(y.complex()),
            };
            let c = cells.chain_complex::<Int>();
            let degrees: Vec<Value> = homology_integral(&c)
                .iter()
                .enumerate()
                .map(|(d, h)| {
                    let torsion: Vec<String> = h.torsion.iter().map(|t| t.to_string()).collect();
                    json!({ "degree": d, "betti": h.betti, "torsion": torsion })
                })
                .collect();
            let mut body = json!({ "degrees": degrees, "euler_characteristic": c.euler_characteristic() });
            if let Some(p) = prime {
                if !eqfix_core::group::is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                body["mod_p"] = json!({ "p": p, "betti": homology_mod_p(&c, *p) });
            }
            Ok((0, body))
        }
        Command::Rebalance { profile, modulus } => {
            let spec: ProfileSpec = read(profile)?;
            let p = spec.build()?;
            let r = rebalance_profile(&p, *modulus)?;
            Ok((
                0,
                json!({
                    "modulus": modulus,
                    "chi_source": p.total(),
                    "chi_target": p.target().euler_characteristic(),
                    "moves": r.moves,
                    "profile": r.profile.by_id(),
                }),
            ))
        }
        Command::Check(CheckCommand::Smith { x, y }) => {
            let r = smith_conditions(&load_gcw(x, cap)?, &load_gcw(y, cap)?)?;
            Ok((if r.pass { 0 } else { 1 }, serde_json::to_value(&r)?))
        }
        Command::Check(CheckCommand::Verdict { deficits, group, n_g, extension, cover, p_subgroup }) => {
            let d = read::<DeficitSpec>(deficits)?.build()?;
            let g = group.as_deref().map(|p| load_group(p, cap)).transpose()?;
            let m = match cover {
                Some(c) => Some(load_cover(&CoverArgs { cover: c.clone(), extension: extension.clone() }, cap)?),
                None => None,
            };
            let modulus = n_g.map_or(Modulus::Unknown, Modulus::Known);
            let p = match (p_subgroup, &m) {
                (Some(e), Some(m)) => Some(Subgroup::from_elements(m.extension().quotient(), e)?),
                _ => None,
            };
            let ctx = VerdictContext { group: g.as_ref(), cover: m.as_ref(), p_subgroup: p, smith: None };
            let v = verdict(&d, modulus, &ctx)?;
            let mut body = serde_json::to_value(&v)?;
            body["pseudo_equivalence_level"] = json!("homology");
            Ok((v.conclusion.exit_code(), body))
        }
        Command::Check(CheckCommand::Cyclic { cover, gamma, fixed_euler }) => {
            let m = load_cover(cover, cap)?;
            let r = cyclic_trace_check(&m, *gamma, fixed_euler)?;
            Ok((if r.pass { 0 } else { 1 }, serde_json::to_value(&r)?))
        }
        Command::Check(CheckCommand::Compwise { cover, p_subgroup, fixed_euler }) => {
            let m = load_cover(cover, cap)?;
            let p = Subgroup::from_elements(m.extension().quotient(), p_subgroup)?;
            let r = compwise_trace_check(&m, &p, fixed_euler)?;
            Ok((if r.pass { 0 } else { 1 }, serde_json::to_value(&r)?))
        }
        Command::Trace(TraceCommand::Rank { cover }) => {
            let m = load_cover(cover, cap)?;
            let r = equivariant_euler_rank::<Rational>(m.cover());
            let classes: Vec<Value> = r
                .classes()
                .iter()
                .zip(r.coefficients())
                .map(|(c, q)| json!({ "representative": c[0], "elements": c, "coefficient": io::rational_string(q) }))
                .collect();
            let comps: Vec<Value> = component_splittings(&m)?
                .iter()
                .map(|a| json!({ "cells": a.cells, "stabilizer": a.stabilizer, "class_id": a.class_id }))
                .collect();
            Ok((0, json!({ "classes": classes, "components": comps })))
        }
        Command::Catalog(CatalogCommand::List) => Ok((
            0,
            json!({
                "groups": catalog::non_prime_power_groups().into_iter().map(|(n, _)| n).collect::<Vec<_>>(),
                "complexes": COMPLEXES,
            }),
        )),
        Command::Catalog(CatalogCommand::Group { name }) => {
            let g = catalog::group_by_name(name)?;
            Ok((0, json!({ "name": name, "group": GroupSpec::table_of(&g) })))
        }
        Command::Catalog(CatalogCommand::Complex { name }) => {
            Ok((0, json!({ "name": name, "complex": catalog_complex(name)? })))
        }
    }
}

const COMPLEXES: [&str; 11] = [
    "point",
    "interval",
    "circle",
    "bigon",
    "disk",
    "sphere2",
    "projective_plane",
    "conjugation_circle",
    "free_z2_circle",
    "free_gamma_circles",
    "square_cover",
];

fn catalog_complex(name: &str) -> Result<ComplexSpec> {
    let plain = |x| ComplexSpec::of(&GCWComplex::with_trivial_group(x));
    Ok(match name {
        "point" => plain(catalog::point()),
        "interval" => plain(catalog::interval()),
        "circle" => plain(catalog::circle()),
        "bigon" => plain(catalog::bigon()),
        "disk" => plain(catalog::disk()),
        "sphere2" => plain(catalog::sphere2()),
        "projective_plane" => plain(catalog::projective_plane()),
        "conjugation_circle" => ComplexSpec::of(&catalog::conjugation_circle()),
        "free_z2_circle" => ComplexSpec::of(&catalog::free_z2_circle()),
        "free_gamma_circles" => ComplexSpec::of(&catalog::free_gamma_circles()),
        "square_cover" => {
            let m = catalog::square_cover();
            let mut spec = ComplexSpec::of(m.cover());
            spec.free_kernel = Some(m.extension().kernel().elements().to_vec());
            spec
        }
        _ => return Err(Error::InvalidInput(format!("unknown complex {name:?}"))),
    })
}
