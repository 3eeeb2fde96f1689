use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use forest_shuffle::admissible::admissible_families;
use forest_shuffle::coalgebra::delta;
use forest_shuffle::dual::{dual_combinatorial_weighted, dual_oracle, dual_recursive, DualWeights};
use forest_shuffle::error::{Error, Result};
use forest_shuffle::graft::{graft_leaves, graft_linear};
use forest_shuffle::linear::{coefficient_of, parse_rational, Q};
use forest_shuffle::parse::{parse_forest, parse_tree};
use forest_shuffle::primitives::{enumerate_shapes, is_primitive, primitive_counts};
use forest_shuffle::shuffle::{diamond_product, forest_shuffle, star_product};
use forest_shuffle::verify::{self, SuiteConfig, SuiteReport};

#[derive(Parser)]
#[command(
    name = "forest-shuffle",
    version,
    about = "Shuffles, coproducts and Rota-Baxter checks on decorated rooted forests"
)]
struct Cli {
    /// Weight of the shuffle as p/q.
    #[arg(long, global = true, default_value = "0", allow_hyphen_values = true)]
    lambda: String,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Upper bound for exhaustive verification degrees.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Random sample count per suite.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Product {
    Shuffle,
    Star,
    Diamond,
}

#[derive(Clone, Copy, ValueEnum)]
enum DualMode {
    Recursive,
    Combinatorial,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weights {
    Paper,
    Inverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraftOp {
    /// Graft onto every leaf.
    Leaves,
    /// Graft only onto trees with one leaf.
    Linear,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Backend {
    Words,
    Forests,
    Both,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum RbCheck {
    /// The Rota-Baxter identity, with a corrupted operator as control.
    Identity,
    /// The induced map from forests to words.
    Morphism,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two forests.
    Shuffle {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value = "shuffle")]
        product: Product,
    },
    /// The trunk coproduct of a tree.
    Coproduct { tree: String },
    /// The coproduct dual to the weight-zero shuffle.
    Dual {
        forest: String,
        #[arg(long, value_enum, default_value = "recursive")]
        mode: DualMode,
        /// Coefficient convention of the combinatorial form.
        #[arg(long, value_enum, default_value = "paper")]
        weights: Weights,
    },
    /// Admissible families of a tree.
    Families { tree: String },
    /// The coefficient of a forest in the shuffle of two others.
    Pair {
        forest: String,
        left: String,
        right: String,
    },
    /// Grafting of one tree onto another.
    Graft {
        base: String,
        scion: String,
        #[arg(long, value_enum, default_value = "leaves")]
        op: GraftOp,
    },
    /// Primitive tree counts and shapes.
    Primitives {
        /// Print p_0 up to p_N.
        #[arg(long, value_name = "N", conflicts_with = "list")]
        count: Option<usize>,
        /// CSV rows `n,p_n` for --count.
        #[arg(long, requires = "count")]
        csv: bool,
        /// Print the primitive shapes with n vertices.
        #[arg(long, value_name = "n")]
        list: Option<usize>,
    },
    /// Rota-Baxter identity and quasi-universal checks.
    Rb {
        #[arg(long, value_enum, default_value = "both")]
        backend: Backend,
        #[arg(long, value_enum, default_value = "identity")]
        check: RbCheck,
    },
    /// Run verification suites.
    Verify {
        /// `all`, a module prefix such as `dual`, or a suite name.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Also write the oracle comparison report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
    },
}

const MORPHISM_HEADER: &str = "quasi-universal checks (phi-bar from forests to words)";

enum Outcome {
    Done,
    SuitesFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::SuitesFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() {
                3
            } else if e.is_guard() {
                4
            } else {
                2
            })
        }
    }
}

fn config(cli: &Cli) -> SuiteConfig {
    SuiteConfig {
        max_degree: cli.max_degree,
        seed: cli.seed,
        samples: cli.samples,
    }
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let lambda: Q = parse_rational(&cli.lambda)?;
    match &cli.command {
        Command::Shuffle {
            left,
            right,
            product,
        } => {
            let (f, g) = (parse_forest(left)?, parse_forest(right)?);
            let out = match product {
                Product::Shuffle => forest_shuffle(&f, &g, &lambda),
                Product::Star => star_product(&f, &g, &lambda),
                Product::Diamond => diamond_product(&f, &g, &lambda)?,
            };
            emit(cli.json, out.to_json(), out.to_string());
        }
        Command::Coproduct { tree } => {
            let out = delta(&parse_forest(tree)?)?;
            emit(cli.json, out.to_json(), out.to_string());
        }
        Command::Dual {
            forest,
            mode,
            weights,
        } => {
            let f = parse_forest(forest)?;
            let out = match mode {
                DualMode::Recursive => dual_recursive(&f),
                DualMode::Combinatorial => dual_combinatorial_weighted(
                    &f,
                    match weights {
                        Weights::Paper => DualWeights::Paper,
                        Weights::Inverse => DualWeights::Inverse,
                    },
                )?,
                DualMode::Oracle => dual_oracle(&f)?,
            };
            emit(cli.json, out.to_json(), out.to_string());
        }
        Command::Families { tree } => {
            let families = admissible_families(&parse_tree(tree)?)?;
            let json = serde_json::Value::Array(families.iter().map(|f| f.to_json()).collect());
            let text = families
                .iter()
                .map(|f| {
                    let gamma: Vec<String> = f.gamma.iter().map(ToString::to_string).collect();
                    format!(
                        "c={}  gamma={{{}}}  T_gamma={}  T_rest={}",
                        f.c_gamma,
                        gamma.join(","),
                        f.t_gamma,
                        f.t_complement
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(cli.json, json, text);
        }
        Command::Pair {
            forest,
            left,
            right,
        } => {
            let target = parse_forest(forest)?;
            let product = forest_shuffle(&parse_forest(left)?, &parse_forest(right)?, &lambda);
            let c = coefficient_of(&product, &target);
            let text = if c.is_integer() {
                c.numer().to_string()
            } else {
                c.to_string()
            };
            emit(
                cli.json,
                serde_json::json!({ "coeff": format!("{}/{}", c.numer(), c.denom()) }),
                text,
            );
        }
        Command::Graft { base, scion, op } => {
            let (t, u) = (parse_forest(base)?, parse_forest(scion)?);
            let out = match op {
                GraftOp::Leaves => graft_leaves(&t, &u)?,
                GraftOp::Linear => graft_linear(&t, &u)?,
            };
            emit(cli.json, out.to_json(), out.to_string());
        }
        Command::Primitives { count, csv, list } => primitives(cli.json, *count, *csv, *list)?,
        Command::Rb { backend, check } => {
            let mut identity = Vec::new();
            if matches!(check, RbCheck::Identity | RbCheck::All) {
                if *backend != Backend::Forests {
                    identity.push("rb.words");
                }
                if *backend != Backend::Words {
                    identity.extend(["rb.forests", "rb.negative-control"]);
                }
            }
            let morphism = if matches!(check, RbCheck::Morphism | RbCheck::All) {
                &[
                    "rb.phi-intertwining",
                    "rb.phi-multiplicative",
                    "rb.phi-concatenation",
                ][..]
            } else {
                &[]
            };
            let cfg = config(cli);
            let mut failed = false;
            for (group, header) in [(&identity[..], None), (morphism, Some(MORPHISM_HEADER))] {
                if let (Some(h), false, false) = (header, group.is_empty(), cli.json) {
                    println!("{h}");
                }
                for name in group {
                    let reports = verify::run(name, &cfg)?;
                    failed |= matches!(print_reports(cli.json, &reports), Outcome::SuitesFailed);
                }
            }
            return Ok(if failed {
                Outcome::SuitesFailed
            } else {
                Outcome::Done
            });
        }
        Command::Verify {
            suite,
            report,
            list,
        } => {
            if *list {
                for s in verify::SUITES {
                    let tag = if s.gating {
                        ""
                    } else {
                        " (reported, non-gating)"
                    };
                    println!("{:<28} {}{tag}", s.name, s.about);
                }
                return Ok(Outcome::Done);
            }
            let cfg = config(cli);
            let mut reports = Vec::new();
            for s in verify::select(suite)? {
                let r = verify::run_suite(s, &cfg)?;
                print_reports(cli.json, std::slice::from_ref(&r));
                reports.push(r);
            }
            if let Some(path) = report {
                let text = verify::oracle_comparison(&cfg)?;
                fs::write(path, text).map_err(|e| {
                    Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            return Ok(if reports.iter().any(SuiteReport::blocks_run) {
                Outcome::SuitesFailed
            } else {
                Outcome::Done
            });
        }
    }
    Ok(Outcome::Done)
}

fn primitives(json: bool, count: Option<usize>, csv: bool, list: Option<usize>) -> Result<()> {
    match (count, list) {
        (Some(n), _) => {
            let counts = primitive_counts(n);
            if json {
                let rows: Vec<_> = counts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| serde_json::json!({ "n": i, "p": p.to_string() }))
                    .collect();
                println!("{}", serde_json::Value::Array(rows));
            } else if csv {
                println!("n,p_n");
                for (i, p) in counts.iter().enumerate() {
                    println!("{i},{p}");
                }
            } else {
                for p in &counts {
                    println!("{p}");
                }
            }
        }
        (None, Some(n)) => {
            let shapes: Vec<String> = enumerate_shapes(n)?
                .into_iter()
                .filter(is_primitive)
                .map(|t| t.to_string())
                .collect();
            if json {
                println!("{}", serde_json::json!(shapes));
            } else {
                for s in shapes {
                    println!("{s}");
                }
            }
        }
        (None, None) => {
            return Err(Error::InvalidArgument(
                "primitives needs --count N or --list n".into(),
            ));
        }
    }
    Ok(())
}

fn print_reports(json: bool, reports: &[SuiteReport]) -> Outcome {
    for r in reports {
        if json {
            println!("{}", r.to_json());
        } else {
            print!("{}", r.render_text());
        }
    }
    if reports.iter().any(SuiteReport::blocks_run) {
        Outcome::SuitesFailed
    } else {
        Outcome::Done
    }
}
