use clap::{Parser, Subcommand, ValueEnum};
use qtetra_cli::commands::{self, CliError, CliResult};
use qtetra_cli::report::Report;
use serde_json::Value;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qtetra", version, about = "Quantum dilogarithm identities, tetrahedron and reflection equations")]
struct Cli {
    /// write a JSON report here
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// worker threads for the sweeps
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Seed mutation
    Quiver {
        #[command(subcommand)]
        cmd: QuiverCmd,
    },
    /// Tropical sign sequences
    Tropical {
        #[command(subcommand)]
        cmd: TropicalCmd,
    },
    /// Quantum torus identities, truncated at total degree ORDER
    Identity {
        #[arg(value_enum)]
        name: IdentityName,
        #[arg(long, default_value_t = 6)]
        order: i64,
    },
    /// Exact Weyl algebra checks
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Matrix elements of R and K
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Representation-level sweeps and the full acceptance run
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// The noncompact quantum dilogarithm
    Ncqd {
        #[command(subcommand)]
        cmd: NcqdCmd,
    },
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// Mutate a builtin seed or a JSON seed file; prints the new seed
    Mutate {
        #[arg(long)]
        seed: String,
        /// vertex, or a comma separated sequence applied left to right
        #[arg(long)]
        at: String,
        /// relabeling such as "4:7,7:4" applied afterwards
        #[arg(long)]
        perm: Option<String>,
    },
}

#[derive(Subcommand)]
enum TropicalCmd {
    /// Tropical signs along a mutation sequence
    Signs {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        seq: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityName {
    Pentagon,
    AdTau,
    DilogR,
    DilogK,
    TauR,
    TauK,
}

#[derive(Subcommand)]
enum WeylCmd {
    Verify {
        #[arg(value_enum)]
        what: WeylWhat,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WeylWhat {
    PiTetra,
    PiRefl,
    PTetra,
    PRefl,
    Diagrams,
    Chains,
}

#[derive(Subcommand)]
enum RepCmd {
    /// Closed form against the contraction oracle
    Element {
        #[arg(long)]
        op: String,
        #[arg(long)]
        basis: String,
        #[arg(long = "in", allow_hyphen_values = true)]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        out: String,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Tetrahedron equation on a window, at n = 0 and random n
    TetraRep {
        #[arg(long, default_value_t = 1)]
        window: i64,
        #[arg(long, default_value_t = 1)]
        n_range: i64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        rng_seed: u64,
    },
    /// Reflection equation on a window plus range enlargement checks
    ReflRep {
        #[arg(long, default_value_t = 1)]
        window: i64,
        #[arg(long, default_value_t = 20)]
        enlarge: usize,
    },
    /// q-binomial duality on 0..=MAX cubed plus random triples
    Qbinomial {
        #[arg(long, default_value_t = 6)]
        max: i64,
        #[arg(long, default_value_t = 50)]
        random: usize,
    },
    /// All acceptance criteria
    All {
        #[arg(long, default_value = "desk")]
        level: String,
        /// comma separated subset of criteria
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand)]
enum NcqdCmd {
    /// Evaluate φ_b(z)
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value = "0.7")]
        b: String,
    },
    /// Check a functional equation on the default grid or at given arguments
    Check {
        #[arg(long)]
        identity: String,
        #[arg(long, default_value = "0.7")]
        b: String,
        #[arg(long)]
        tol: Option<f64>,
        /// semicolon separated complex arguments
        #[arg(long, allow_hyphen_values = true)]
        args: Option<String>,
    },
}

fn to_usize(v: Vec<i64>) -> CliResult<Vec<usize>> {
    v.into_iter()
        .map(|x| usize::try_from(x).map_err(|_| CliError::Usage(format!("not a vertex: {x}"))))
        .collect()
}

/// Returns the report plus any extra stdout payload.
fn run(cmd: Cmd) -> CliResult<(Report, Option<String>)> {
    let compact = |v: &Value| serde_json::to_string(v).unwrap_or_default();
    Ok(match cmd {
        Cmd::Quiver { cmd: QuiverCmd::Mutate { seed, at, perm } } => {
            let at = to_usize(commands::parse_ints(&at)?)?;
            let (v, r) = commands::quiver_mutate(&seed, &at, perm.as_deref())?;
            (r, Some(compact(&v)))
        }
        Cmd::Tropical { cmd: TropicalCmd::Signs { seed, seq } } => {
            let seq = to_usize(commands::parse_ints(&seq)?)?;
            let (v, r) = commands::tropical_signs(&seed, &seq)?;
            (r, Some(compact(&v)))
        }
        Cmd::Identity { name, order } => {
            let n = match name {
                IdentityName::Pentagon => "pentagon",
                IdentityName::AdTau => "ad-tau",
                IdentityName::DilogR => "dilog-r",
                IdentityName::DilogK => "dilog-k",
                IdentityName::TauR => "tau-r",
                IdentityName::TauK => "tau-k",
            };
            (commands::identity(n, order)?, None)
        }
        Cmd::Weyl { cmd: WeylCmd::Verify { what, alpha, beta, gamma } } => {
            let w = match what {
                WeylWhat::PiTetra => "pi-tetra",
                WeylWhat::PiRefl => "pi-refl",
                WeylWhat::PTetra => "p-tetra",
                WeylWhat::PRefl => "p-refl",
                WeylWhat::Diagrams => "diagrams",
                WeylWhat::Chains => "chains",
            };
            (commands::weyl_verify(w, &alpha, &beta, &gamma)?, None)
        }
        Cmd::Rep { cmd: RepCmd::Element { op, basis, input, out, n } } => {
            (commands::rep_element(&op, &basis, &input, &out, n.as_deref())?, None)
        }
        Cmd::Verify { cmd } => match cmd {
            VerifyCmd::TetraRep { window, n_range, samples, rng_seed } => {
                (commands::verify_tetra_rep(window, n_range, samples, rng_seed)?, None)
            }
            VerifyCmd::ReflRep { window, enlarge } => (commands::verify_refl_rep(window, enlarge)?, None),
            VerifyCmd::Qbinomial { max, random } => (commands::verify_qbinomial(max, random)?, None),
            VerifyCmd::All { level, only } => {
                let only: Vec<u8> = match only {
                    Some(s) => commands::parse_ints(&s)?
                        .into_iter()
                        .map(|x| u8::try_from(x).map_err(|_| CliError::Usage(format!("no criterion {x}"))))
                        .collect::<CliResult<_>>()?,
                    None => vec![],
                };
                let (lines, r) = commands::verify_all(&level, &only)?;
                (r, Some(lines.join("\n")))
            }
        },
        Cmd::Ncqd { cmd } => match cmd {
            NcqdCmd::Eval { z, b } => (commands::ncqd_eval(&z, &b)?, None),
            NcqdCmd::Check { identity, b, tol, args } => (commands::ncqd_check(&identity, &b, tol, args.as_deref())?, None),
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("usage error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let (report, payload) = match run(cli.cmd) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match payload {
        Some(p) => {
            println!("{p}");
            if !report.all_pass() {
                print!("{}", report.render().lines().last().unwrap_or_default());
                println!();
            }
        }
        None => print!("{}", report.render()),
    }
    if let Some(path) = cli.json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        if let Err(e) = std::fs::write(&path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
