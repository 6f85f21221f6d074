//! `nc`: build non-crossing partition lattices, Hurwitz graphs and building
//! embeddings for Coxeter types A and B, and run the verification suite.
//!
//! Exit codes: 0 all good, 1 usage error, 2 resource budget exceeded,
//! 3 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ncpart::building;
use ncpart::group::{CoxeterSpec, Family};
use ncpart::hurwitz::HurwitzGraph;
use ncpart::lattice::NcLattice;
use ncpart::report;
use ncpart::{Budget, Error};

#[derive(Parser)]
#[command(
    name = "nc",
    about = "Non-crossing partition lattices, Hurwitz graphs, and spherical building embeddings",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Override the enumeration caps (reduced words, maximal chains).
    /// The NC_BUDGET environment variable does the same; the flag wins.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Deterministic output: omit wall-clock times.
    #[arg(long, global = true)]
    stable: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    B,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::B => Family::B,
        }
    }
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, value_enum, ignore_case = true)]
    family: FamilyArg,
    #[arg(long)]
    degree: u8,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build NC(W, c): elements, covers, chain count, supersolvability.
    Lattice(GroupArgs),
    /// Build the Hurwitz graph and its exact BFS metrics.
    Hurwitz {
        #[command(flatten)]
        group: GroupArgs,
        /// Export the chamber graph of the order complex instead of H(W)
        /// (isomorphic; built from the chamber side). DOT format only.
        #[arg(long)]
        chamber_graph: bool,
    },
    /// Verify the F_2 / F_3 embedding of NC(W), or inspect a building
    /// chamber graph with `--building --p P --dim D`.
    Embed {
        #[arg(long, value_enum, ignore_case = true, required_unless_present = "building")]
        family: Option<FamilyArg>,
        #[arg(long, required_unless_present = "building")]
        degree: Option<u8>,
        /// Inspect `L(F_p^d)` instead of an NC embedding.
        #[arg(long)]
        building: bool,
        #[arg(long, requires = "building")]
        p: Option<u8>,
        #[arg(long, requires = "building")]
        dim: Option<u8>,
    },
    /// Run the complete claim suite; nonzero exit on any failure.
    Verify {
        /// Run only the claims whose id contains this string.
        #[arg(long)]
        only: Option<String>,
        /// Corrupt the computed value of one claim (failure-path testing).
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) => ExitCode::from(1),
                Error::Resource(_) => ExitCode::from(2),
                Error::Integrity(_) => ExitCode::from(3),
            }
        }
    }
}

fn budget_for(cli: &Cli) -> ncpart::Result<Budget> {
    let env_limit = match std::env::var("NC_BUDGET") {
        Ok(v) => Some(
            v.parse::<u64>()
                .map_err(|_| Error::Usage(format!("NC_BUDGET must be an integer, got {v:?}")))?,
        ),
        Err(_) => None,
    };
    Ok(match cli.budget.or(env_limit) {
        Some(limit) => Budget::with_limit(limit),
        None => Budget::default(),
    })
}

fn emit(cli: &Cli, content: &str) -> ncpart::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn require_json(cli: &Cli, what: &str) -> ncpart::Result<()> {
    if cli.format != Format::Json {
        return Err(Error::Usage(format!("{what} only supports --format json")));
    }
    Ok(())
}

fn run(cli: &Cli) -> ncpart::Result<ExitCode> {
    let budget = budget_for(cli)?;
    match &cli.cmd {
        Cmd::Lattice(args) => {
            require_json(cli, "lattice")?;
            let spec = CoxeterSpec::new(args.family.into(), args.degree)?;
            let lattice = NcLattice::build(spec, &budget)?;
            let chains = lattice.maximal_chains(&budget)?;
            let (supersolvable, witness) = lattice.is_supersolvable();
            let witness_chain: Option<Vec<Vec<i8>>> = witness.map(|w| {
                w.indices()
                    .iter()
                    .map(|&x| lattice.element(x).images().to_vec())
                    .collect()
            });
            let report = json!({
                "schema_version": 1,
                "lattice": lattice.to_json(),
                "element_count": lattice.len(),
                "chain_count": chains.len(),
                "supersolvable": supersolvable,
                "witness_chain": witness_chain,
            });
            emit(cli, &serde_json::to_string_pretty(&report).expect("serializable"))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hurwitz { group, chamber_graph } => {
            let spec = CoxeterSpec::new(group.family.into(), group.degree)?;
            let graph = HurwitzGraph::build(spec, &budget)?;
            if *chamber_graph {
                if cli.format != Format::Dot {
                    return Err(Error::Usage("--chamber-graph only supports --format dot".into()));
                }
                emit(cli, &ncpart::hurwitz::chamber_graph_dot(graph.lattice(), &budget)?)?;
                return Ok(ExitCode::SUCCESS);
            }
            match cli.format {
                Format::Dot => emit(cli, &graph.to_dot())?,
                Format::Json => {
                    let report = graph.metrics_report()?;
                    emit(cli, &serde_json::to_string_pretty(&report).expect("serializable"))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Embed { family, degree, building, p, dim } => {
            if *building {
                let p = p.ok_or_else(|| Error::Usage("--building needs --p".into()))?;
                let dim = dim.ok_or_else(|| Error::Usage("--building needs --dim".into()))?;
                if !matches!(p, 2 | 3) {
                    return Err(Error::Usage(format!("p must be 2 or 3, got {p}")));
                }
                match cli.format {
                    Format::Dot => {
                        emit(cli, &building::building_chamber_graph_dot(p, dim, &budget)?)?
                    }
                    Format::Json => {
                        let (flags, graph) = building::building_chamber_graph(p, dim, &budget)?;
                        let metrics = graph.metrics()?;
                        let report = json!({
                            "schema_version": 1,
                            "p": p,
                            "dim": dim,
                            "chamber_count": flags.len(),
                            "edge_count": graph.edge_count(),
                            "radius": metrics.radius,
                            "diameter": metrics.diameter,
                        });
                        emit(cli, &serde_json::to_string_pretty(&report).expect("serializable"))?;
                    }
                }
                return Ok(ExitCode::SUCCESS);
            }
            require_json(cli, "embed")?;
            let family = family.ok_or_else(|| Error::Usage("embed needs --family".into()))?;
            let degree = degree.ok_or_else(|| Error::Usage("embed needs --degree".into()))?;
            let spec = CoxeterSpec::new(family.into(), degree)?;
            let lattice = NcLattice::build(spec, &budget)?;
            let embedding = building::verify_embedding(&lattice, &budget)?;
            let apartment_check = building::nc_apartment_check(&lattice, &budget)?;
            let report = json!({
                "schema_version": 1,
                "embedding": embedding.to_json(),
                "apartment_check": apartment_check,
            });
            emit(cli, &serde_json::to_string_pretty(&report).expect("serializable"))?;
            if embedding.all_pass() && apartment_check {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        Cmd::Verify { only, inject_fault } => {
            require_json(cli, "verify")?;
            let results = report::run_all(&budget, only.as_deref(), inject_fault.as_deref())?;
            for r in &results {
                let status = if r.pass { "PASS" } else { "FAIL" };
                eprintln!("{status} {}", r.id);
            }
            let report = report::report_json(&results, cli.stable);
            emit(cli, &serde_json::to_string_pretty(&report).expect("serializable"))?;
            if report::all_pass(&results) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
    }
}
