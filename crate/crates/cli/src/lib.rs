//! Argument model and dispatch for the `sk1` binary.
//!
//! `run` never touches the process: it returns the rendered output and the
//! exit code, so everything short of argument parsing is testable in-process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sk1_core::{
    genetic_basis_abelian, genetic_basis_metacyclic, irrep_counts_metacyclic,
    irrep_counts_square_abelian, predicted_decomposition, rank_metacyclic, rank_square_abelian,
    sk1_metacyclic_with, sk1_with_limit, verify, AbelianPGroup, CyclicDecomposition,
    DeterminantRule, Error, MetacyclicGroup, Strategy, DEFAULT_MAX_ORDER,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_GUARD: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "sk1", version, about = "Compute SK1(ZP) for odd abelian p-groups and M_n(p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// SK1 of an abelian p-group C_{o1} x ... x C_{ok}.
    Abelian {
        #[arg(long)]
        prime: u64,
        /// Cyclic factor orders, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<u64>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// SK1 of the modular group M_n(p).
    Metacyclic {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: u64,
    },
    /// Predicted SK1 of C_{p^n} x C_{p^n}, optionally checked against the computation.
    Conjecture {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Free rank of the Whitehead group.
    Rank {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        n: u32,
    },
    /// List the genetic basis: abelian with --orders, M_n(p) with --n.
    Basis {
        #[arg(long)]
        prime: u64,
        #[arg(long, value_delimiter = ',', conflicts_with = "n", required_unless_present = "n")]
        orders: Option<Vec<u64>>,
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value_t = StrategyArg::Representatives)]
    pub strategy: StrategyArg,
    /// Largest group order enumerated in exhaustive mode.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Representatives,
    Exhaustive,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Representatives => Strategy::Representatives,
            StrategyArg::Exhaustive => Strategy::Exhaustive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Abelian,
    Metacyclic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Abelian { prime: u64, orders: Vec<u64>, strategy: Strategy, max_order: u64 },
    Metacyclic { prime: u64, n: u32, max_order: u64 },
    Conjecture { prime: u64, n: u32, verify: bool, strategy: Strategy, max_order: u64 },
    Rank { family: Family, prime: u64, n: u32 },
    BasisAbelian { prime: u64, orders: Vec<u64> },
    BasisMetacyclic { prime: u64, n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let command = match cli.command {
            CliCommand::Abelian { prime, orders, search } => Command::Abelian {
                prime,
                orders,
                strategy: search.strategy.into(),
                max_order: search.max_order,
            },
            CliCommand::Metacyclic { prime, n, max_order } => {
                Command::Metacyclic { prime, n, max_order }
            }
            CliCommand::Conjecture { prime, n, verify, search } => Command::Conjecture {
                prime,
                n,
                verify,
                strategy: search.strategy.into(),
                max_order: search.max_order,
            },
            CliCommand::Rank { family, prime, n } => Command::Rank { family, prime, n },
            CliCommand::Basis { prime, orders: Some(orders), .. } => {
                Command::BasisAbelian { prime, orders }
            }
            CliCommand::Basis { prime, n, .. } => {
                Command::BasisMetacyclic { prime, n: n.expect("clap requires --orders or --n") }
            }
        };
        RunConfig { command, format: cli.format }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(e: &Error) -> Self {
        let code = if e.is_resource_guard() { EXIT_GUARD } else { EXIT_INVALID };
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

pub fn render_decomposition(d: &CyclicDecomposition, format: Format) -> String {
    match format {
        Format::Human => format!("SK1 = {d}\n"),
        Format::Tsv => d.to_tsv(),
    }
}

/// Parses either rendering back into a decomposition.
pub fn parse_decomposition(s: &str, format: Format) -> Result<CyclicDecomposition, Error> {
    match format {
        Format::Human => {
            let body = s
                .trim()
                .strip_prefix("SK1 = ")
                .ok_or_else(|| Error::BadParams(format!("expected `SK1 = ...`, got {s:?}")))?;
            body.parse()
        }
        Format::Tsv => CyclicDecomposition::from_tsv(s),
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    match dispatch(config) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::error(&e),
    }
}

fn square(prime: u64, n: u32) -> Result<AbelianPGroup, Error> {
    let pn =
        prime.checked_pow(n).ok_or_else(|| Error::BadParams(format!("{prime}^{n} overflows")))?;
    AbelianPGroup::new(prime, &[pn, pn])
}

fn dispatch(config: &RunConfig) -> Result<Outcome, Error> {
    let format = config.format;
    match &config.command {
        Command::Abelian { prime, orders, strategy, max_order } => {
            let g = AbelianPGroup::new(*prime, orders)?;
            let d = sk1_with_limit(&g, *strategy, *max_order)?;
            Ok(Outcome::ok(render_decomposition(&d, format)))
        }
        Command::Metacyclic { prime, n, max_order } => {
            let g = MetacyclicGroup::new(*prime, *n)?;
            let d = sk1_metacyclic_with(&g, DeterminantRule::Tabulated, *max_order)?;
            Ok(Outcome::ok(render_decomposition(&d, format)))
        }
        Command::Conjecture { prime, n, verify: false, .. } => {
            let pred = predicted_decomposition(*prime, *n)?;
            Ok(Outcome::ok(render_decomposition(&pred.to_decomposition(), format)))
        }
        Command::Conjecture { prime, n, verify: true, strategy, max_order } => {
            predicted_decomposition(*prime, *n)?;
            let computed = sk1_with_limit(&square(*prime, *n)?, *strategy, *max_order)?;
            let report = verify(*prime, *n, &computed)?;
            let code = if report.matched { EXIT_OK } else { EXIT_MISMATCH };
            Ok(Outcome { code, stdout: format!("{report}\n"), stderr: String::new() })
        }
        Command::Rank { family, prime, n } => {
            let (rank, counts) = match family {
                Family::Abelian => {
                    (rank_square_abelian(*prime, *n)?, irrep_counts_square_abelian(*prime, *n)?)
                }
                Family::Metacyclic => {
                    (rank_metacyclic(*prime, *n)?, irrep_counts_metacyclic(*prime, *n)?)
                }
            };
            assert_eq!(rank, counts.rank(), "rank formula disagrees with r - q");
            Ok(Outcome::ok(format!("{rank}\n")))
        }
        Command::BasisAbelian { prime, orders } => {
            let g = AbelianPGroup::new(*prime, orders)?;
            let mut out = String::new();
            for (k, s) in genetic_basis_abelian(&g)?.iter().enumerate() {
                match format {
                    Format::Human => {
                        writeln!(out, "S{}\tindex {}\tker {}", k + 1, s.index(), s.hom())
                    }
                    Format::Tsv => writeln!(out, "{}\t{}\t{}", k + 1, s.index(), s.hom()),
                }
                .expect("write to String");
            }
            Ok(Outcome::ok(out))
        }
        Command::BasisMetacyclic { prime, n } => {
            let g = MetacyclicGroup::new(*prime, *n)?;
            if g.order() > DEFAULT_MAX_ORDER {
                return Err(Error::TooLarge { size: g.order(), limit: DEFAULT_MAX_ORDER });
            }
            let mut out = String::new();
            for (k, s) in genetic_basis_metacyclic(&g).iter().enumerate() {
                let q = s.quotient_order();
                match format {
                    Format::Human => {
                        writeln!(
                            out,
                            "S{}\t|N/S| {}\t{}\t{}",
                            k + 1,
                            q,
                            s.label(),
                            s.label().generators(&g)
                        )
                    }
                    Format::Tsv => {
                        writeln!(
                            out,
                            "{}\t{}\t{}\t{}",
                            k + 1,
                            q,
                            s.label(),
                            s.label().generators(&g)
                        )
                    }
                }
                .expect("write to String");
            }
            Ok(Outcome::ok(out))
        }
    }
}
