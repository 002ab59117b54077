use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use esakia::birkhoff::{booleanize_bounded, downset_lattice_bounded, patch, spec_unit};
use esakia::dist::{adjoint_to_map, check_adjoint, compose, Mode};
use esakia::io::{self, DomainValue, LoadOptions};
use esakia::karoubi::{coheyting_via_booleanization, p_morphism_check, split_idempotent};
use esakia::verify::{verify_suite_with, VerifyOptions};
use esakia::vietoris::vietoris_bounded;
use esakia::{Error, FinDistLattice, FinitePoset, Result};

#[derive(Parser)]
#[command(name = "esakia", version, about = "Finite posets, distributive lattices and distributors")]
struct Cli {
    /// Override the validation mode of distributor documents.
    #[arg(long, global = true, value_parser = parse_mode)]
    mode: Option<Mode>,
    /// Largest lattice or up-set poset that may be built.
    #[arg(long, global = true, default_value_t = esakia::birkhoff::DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poset of join-irreducibles of a lattice.
    Spec { lattice: PathBuf },
    /// Lattice of down-sets of a poset.
    Downsets { poset: PathBuf },
    /// Powerset embedding of a lattice with its join retraction.
    Booleanize { lattice: PathBuf },
    /// Least z with y <= x v z.
    Subtract { lattice: PathBuf, x: String, y: String },
    /// Relational composite, first argument first.
    Compose { first: PathBuf, second: PathBuf },
    /// Whether the first distributor is left adjoint to the second.
    CheckAdjoint { left: PathBuf, right: PathBuf },
    /// Split an idempotent distributor through a poset.
    Split { idempotent: PathBuf },
    /// Discrete poset on the same points and its inclusion.
    Patch { poset: PathBuf },
    /// Up-sets under reverse inclusion.
    Vietoris { poset: PathBuf },
    /// Whether a monotone map lifts every g(x) <= y.
    Pmorphism { map: PathBuf },
    /// Hasse diagram of a poset or lattice in DOT.
    Dot {
        input: PathBuf,
        #[arg(long, default_value = "hasse")]
        name: String,
    },
    /// Run the property suite.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, hide = true)]
        inject_mutant: bool,
    },
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Outcome {
    Ok(String),
    VerificationFailed(String),
}

fn load(cli: &Cli, path: &PathBuf) -> Result<DomainValue> {
    io::load_with(path, LoadOptions { mode: cli.mode })
}

fn expect_poset(cli: &Cli, path: &PathBuf) -> Result<FinitePoset> {
    match load(cli, path)? {
        DomainValue::Poset(p) => Ok(p),
        DomainValue::Lattice(l) => Ok(l.order().clone()),
        other => Err(wrong_kind("poset", &other)),
    }
}

fn expect_lattice(cli: &Cli, path: &PathBuf) -> Result<FinDistLattice> {
    match load(cli, path)? {
        DomainValue::Lattice(l) => Ok(l),
        DomainValue::Poset(p) => esakia::lattice_from_poset(&p),
        other => Err(wrong_kind("lattice", &other)),
    }
}

fn expect_distributor(cli: &Cli, path: &PathBuf) -> Result<esakia::Distributor> {
    match load(cli, path)? {
        DomainValue::Distributor(d) => Ok(d),
        other => Err(wrong_kind("distributor", &other)),
    }
}

fn wrong_kind(expected: &str, found: &DomainValue) -> Error {
    Error::Parse { location: "kind".into(), message: format!("expected a {expected}, found a {}", found.kind()) }
}

fn doc(value: DomainValue) -> Result<Value> {
    Ok(io::to_json(&io::canonical(&value)?))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let max = cli.max_elements;
    let out = match &cli.command {
        Command::Spec { lattice } => {
            let l = expect_lattice(cli, lattice)?;
            let unit = spec_unit(&l)?;
            doc(DomainValue::Poset(unit.dual.base().clone()))?
        }
        Command::Downsets { poset } => {
            let d = downset_lattice_bounded(&expect_poset(cli, poset)?, max)?;
            doc(DomainValue::Lattice(d.lattice().clone()))?
        }
        Command::Booleanize { lattice } => {
            let b = booleanize_bounded(&expect_lattice(cli, lattice)?, max)?;
            json!({
                "kind": "booleanization",
                "boole": doc(DomainValue::Lattice(b.boole().clone()))?,
                "embed_j": doc(DomainValue::Hemimorphism(b.embed_j.clone()))?,
                "retract_jplus": doc(DomainValue::Hemimorphism(b.retract_jplus.clone()))?,
            })
        }
        Command::Subtract { lattice, x, y } => {
            let l = expect_lattice(cli, lattice)?;
            let (xi, yi) = (l.require(x)?, l.require(y)?);
            let direct = l.coheyting_subtract_bruteforce(xi, yi);
            let split = coheyting_via_booleanization(&booleanize_bounded(&l, max)?, xi, yi);
            let value = json!({"kind": "subtraction", "x": x, "y": y, "result": l.label(direct)});
            if split != direct {
                return Ok(Outcome::VerificationFailed(format!(
                    "subtraction routes disagree: direct {} but through the powerset {}",
                    l.label(direct),
                    l.label(split)
                )));
            }
            value
        }
        Command::Compose { first, second } => {
            let r = compose(&expect_distributor(cli, first)?, &expect_distributor(cli, second)?)?;
            doc(DomainValue::Distributor(r))?
        }
        Command::CheckAdjoint { left, right } => {
            let (phi, psi) = (expect_distributor(cli, left)?, expect_distributor(cli, right)?);
            match check_adjoint(&phi, &psi)? {
                None => json!({
                    "kind": "adjunction",
                    "holds": true,
                    "map": doc(DomainValue::Map(adjoint_to_map(&phi, &psi)?))?,
                }),
                Some(w) => json!({"kind": "adjunction", "holds": false, "witness": w.to_string()}),
            }
        }
        Command::Split { idempotent } => {
            let t = split_idempotent(&expect_distributor(cli, idempotent)?)?;
            json!({
                "kind": "split",
                "mid": doc(DomainValue::Poset(t.mid.clone()))?,
                "forward": doc(DomainValue::Distributor(t.forward.clone()))?,
                "backward": doc(DomainValue::Distributor(t.backward.clone()))?,
            })
        }
        Command::Patch { poset } => {
            let (_, i) = patch(&expect_poset(cli, poset)?);
            doc(DomainValue::Map(i))?
        }
        Command::Vietoris { poset } => {
            let v = vietoris_bounded(&expect_poset(cli, poset)?, max)?;
            doc(DomainValue::Poset(v.poset().clone()))?
        }
        Command::Pmorphism { map } => {
            let g = match load(cli, map)? {
                DomainValue::Map(g) => g,
                other => return Err(wrong_kind("monotone map", &other)),
            };
            match p_morphism_check(&g) {
                None => json!({"kind": "pmorphism", "holds": true}),
                Some((x, y)) => json!({
                    "kind": "pmorphism",
                    "holds": false,
                    "witness": [g.source().label(x), g.target().label(y)],
                }),
            }
        }
        Command::Dot { input, name } => {
            let p = expect_poset(cli, input)?;
            return Ok(Outcome::Ok(esakia::dot::dot_emit(&p, name)));
        }
        Command::Verify { max_size, seed, samples, inject_mutant } => {
            let opts = VerifyOptions { max_size: *max_size, seed: *seed, samples: *samples, inject_mutant: *inject_mutant };
            let report = verify_suite_with(&opts)?;
            let text = report.to_string();
            return Ok(if report.passed() { Outcome::Ok(text) } else { Outcome::VerificationFailed(text) });
        }
    };
    Ok(Outcome::Ok(io::pretty(&out)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::VerificationFailed(text)) => {
            print!("{text}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
