mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tgk_core::perm::Pattern;
use tgk_core::seq::Method;
use tgk_core::{Error, LabeledTree, Permutation, PlaneTree};

/// Permutations, trees, pruning lattices and tree games.
#[derive(Parser, Debug)]
#[command(name = "tgk", version, about)]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel enumerations (default: available cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a_1..a_n.
    Seq {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "stirling", value_parser = parse_method)]
        method: Method,
        /// Compute every method and report agreement per n.
        #[arg(long, conflicts_with = "method")]
        all_methods: bool,
    },
    /// Unsigned Stirling numbers of the first kind c(n, k).
    Stirling {
        #[arg(long)]
        n: usize,
        /// Print only c(n, k) instead of the whole row.
        #[arg(long)]
        k: Option<usize>,
    },
    /// First-inversion tree of a permutation fixing 1.
    Gamma {
        #[arg(long, value_parser = parse_perm)]
        perm: Permutation,
    },
    /// Permutation of an increasing labeled tree.
    GammaInv {
        #[arg(long, value_parser = parse_labeled)]
        tree: LabeledTree,
    },
    /// Stack labeling of a plane tree and its permutation.
    Label {
        #[arg(long, value_parser = parse_tree)]
        tree: PlaneTree,
        #[arg(long, value_enum)]
        mode: LabelMode,
    },
    /// Pattern avoidance of one permutation, or every avoider of a size.
    Avoid {
        #[arg(long, value_parser = parse_pattern)]
        pattern: Pattern,
        #[command(flatten)]
        target: AvoidTarget,
    },
    /// The game polynomial of a tree.
    Phi {
        #[arg(long, value_parser = parse_tree)]
        tree: PlaneTree,
        #[arg(long, value_enum, default_value = "recursion")]
        via: PhiMethod,
        /// Evaluate at an integer, fraction (3/4) or decimal (-0.5).
        #[arg(long, value_name = "Q", allow_hyphen_values = true)]
        eval: Option<String>,
    },
    /// Prunings of a tree: count, rank generating function, listing.
    Prunings {
        #[arg(long, value_parser = parse_tree)]
        tree: PlaneTree,
        #[arg(long)]
        rgf: bool,
        #[arg(long)]
        list: bool,
    },
    /// Winner of the tree game and a winning first move.
    Winner {
        #[arg(long, value_parser = parse_tree)]
        tree: PlaneTree,
    },
    /// Permutations whose sorted first-inversion tree is the given tree.
    TamariFiber {
        #[arg(long, value_parser = parse_tree)]
        tree: PlaneTree,
    },
    /// Join of two plane trees in the Tamari lattice.
    TamariJoin {
        #[arg(long, value_parser = parse_tree)]
        a: PlaneTree,
        #[arg(long, value_parser = parse_tree)]
        b: PlaneTree,
    },
    /// Meet of two plane trees in the Tamari lattice.
    TamariMeet {
        #[arg(long, value_parser = parse_tree)]
        a: PlaneTree,
        #[arg(long, value_parser = parse_tree)]
        b: PlaneTree,
    },
    /// Congruence and lattice-operation checks for the quotient at size n.
    TamariVerify {
        #[arg(long)]
        n: usize,
    },
    /// Euler characteristics, Poincaré polynomial and point counts.
    Euler {
        #[arg(long, value_parser = parse_tree)]
        tree: PlaneTree,
        #[arg(long = "q", value_name = "Q", num_args = 1..)]
        qs: Vec<u64>,
        /// Reject q that are not prime powers.
        #[arg(long)]
        strict: bool,
    },
    /// Estimate the probability of the coin-flip event by simulation.
    Montecarlo {
        #[arg(long, value_parser = parse_tree)]
        tree: PlaneTree,
        #[arg(long, allow_hyphen_values = true)]
        q: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the full cross-identity suite at size n.
    Verify {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct AvoidTarget {
    #[arg(long, value_parser = parse_perm)]
    perm: Option<Permutation>,
    /// List every avoider of this size.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LabelMode {
    Eastpush,
    Westpop,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PhiMethod {
    Recursion,
    Prunings,
}

fn parse_perm(s: &str) -> Result<Permutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_tree(s: &str) -> Result<PlaneTree, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_labeled(s: &str) -> Result<LabeledTree, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pattern(s: &str) -> Result<Pattern, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command produced.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    /// False when a verification found a violation.
    pub ok: bool,
    pub warnings: Vec<String>,
}

impl Output {
    pub fn new(text: String, json: serde_json::Value) -> Self {
        Output {
            text,
            json,
            ok: true,
            warnings: Vec::new(),
        }
    }
}

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            let mut stdout = std::io::stdout().lock();
            let printed = if json {
                let mut doc = out.json;
                if let Some(obj) = doc.as_object_mut() {
                    obj.insert("ok".into(), out.ok.into());
                    if !out.warnings.is_empty() {
                        obj.insert("warnings".into(), out.warnings.clone().into());
                    }
                }
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                )
            } else if out.text.is_empty() {
                Ok(())
            } else {
                writeln!(stdout, "{}", out.text)
            };
            if printed.is_err() {
                return ExitCode::from(EXIT_VERIFICATION);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFICATION)
            }
        }
        Err(e) => {
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "ok": false, "error": e.to_string() })
                );
            }
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(EXIT_VERIFICATION),
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}

fn run(cli: Cli) -> Result<Output, Error> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Error::InvalidArgument(
                "--threads must be at least 1".into(),
            ));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::Internal(e.to_string()))?;
    }
    let caps = commands::caps_from_env()?;
    use commands as c;
    match cli.command {
        Command::Seq {
            n,
            method,
            all_methods,
        } => c::seq(n, method, all_methods, caps),
        Command::Stirling { n, k } => c::stirling(n, k),
        Command::Gamma { perm } => Ok(c::gamma(&perm)),
        Command::GammaInv { tree } => c::gamma_inv(&tree),
        Command::Label { tree, mode } => c::label(&tree, matches!(mode, LabelMode::Eastpush)),
        Command::Avoid { pattern, target } => {
            c::avoid(pattern, target.perm.as_ref(), target.n, caps)
        }
        Command::Phi { tree, via, eval } => {
            c::phi(&tree, matches!(via, PhiMethod::Prunings), eval.as_deref())
        }
        Command::Prunings { tree, rgf, list } => c::prunings(&tree, rgf, list),
        Command::Winner { tree } => Ok(c::winner(&tree)),
        Command::TamariFiber { tree } => c::tamari_fiber(&tree, caps),
        Command::TamariJoin { a, b } => c::tamari_binary(&a, &b, true),
        Command::TamariMeet { a, b } => c::tamari_binary(&a, &b, false),
        Command::TamariVerify { n } => c::tamari_verify(n, caps),
        Command::Euler { tree, qs, strict } => c::euler(&tree, &qs, strict),
        Command::Montecarlo {
            tree,
            q,
            trials,
            seed,
        } => c::montecarlo(&tree, q, trials, seed),
        Command::Verify { n } => c::verify(n, caps),
    }
}
