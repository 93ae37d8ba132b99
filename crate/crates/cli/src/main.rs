//! Command-line front door for the verification engine: rank tables, Gram
//! matrices, graph exports, cocycle checks, cycles, monodromy images, and
//! the full per-degree verification suite.
//!
//! Exit codes: 0 every verdict passed, 1 a verification failed, 2 usage
//! error.

use clap::{Parser, Subcommand, ValueEnum};
use gkm_motives::cocycle::{verify_cocycle, CyclicAlgebraSpec};
use gkm_motives::cycles::{act, gamma, lift_h, lift_xi, MonodromyElement};
use gkm_motives::equivariant::{certify_torsion_free, chow_ranks, EquivariantClass};
use gkm_motives::graph::{GkmGraph, Variety};
use gkm_motives::motives::{decomposition_report, middle_basis_check, Verdict};
use gkm_motives::verification::verification_suite;
use gkm_motives::linalg::Mat;

const MAX_DEGREE_N: usize = 8;
const EXIT_VERIFICATION: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "gkm-motives",
    about = "Exact fixed-point verification engine for twisted Milnor hypersurfaces and their hyperplane sections",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarietyArg {
    X,
    Y,
}

impl From<VarietyArg> for Variety {
    fn from(v: VarietyArg) -> Variety {
        match v {
            VarietyArg::X => Variety::X,
            VarietyArg::Y => Variety::Y,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum GraphFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum GramFamily {
    /// the full middle-degree Gram of the gammas plus the h-family
    Middle,
    /// the gamma block only
    Gamma,
    /// the h-family block only
    H,
}

#[derive(Subcommand)]
enum Command {
    /// Run every module's verification suite for one degree
    Verify {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        /// worker count hint; output is identical for any value
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Graded fixed-point module ranks and Chow ranks
    Ranks {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long, value_enum)]
        variety: VarietyArg,
        /// cap the computed degree (defaults to the variety dimension)
        #[arg(long)]
        max_degree: Option<usize>,
        /// also certify torsion-freeness per degree via Smith normal form
        #[arg(long, default_value_t = false)]
        certify_snf: bool,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Middle-degree Gram matrices
    Gram {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GramFamily::Middle)]
        family: GramFamily,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Export the fixed-point graph
    Graph {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long, value_enum)]
        variety: VarietyArg,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
    },
    /// ASCII diagram of the motivic decomposition
    Diagram {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Print an explicit cycle (a gamma class or a hyperplane lift)
    Cycle {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        /// index of the gamma class to print
        #[arg(long)]
        gamma: usize,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Apply a monodromy power to a class and print the image
    Monodromy {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        /// exponent of the cyclic generator
        #[arg(long)]
        k: usize,
        /// class to act on: gamma:<l>, h, or xi
        #[arg(long)]
        apply: String,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Verify the splitting-cocycle generator identities
    Cocycle {
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
}

fn parse_n(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("invalid degree '{s}'"))?;
    if !(3..=MAX_DEGREE_N).contains(&n) {
        return Err(format!("degree must be between 3 and {MAX_DEGREE_N}"));
    }
    Ok(n)
}

fn print_verdicts(verdicts: &[Verdict]) -> bool {
    let mut ok = true;
    for v in verdicts {
        let mark = if v.pass { "pass" } else { "FAIL" };
        if v.pass || v.detail.is_empty() {
            println!("[{mark}] {}", v.name);
        } else {
            println!("[{mark}] {} — {}", v.name, v.detail);
        }
        ok &= v.pass;
    }
    ok
}

fn mat_rows(m: &Mat) -> Vec<Vec<i128>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn run() -> anyhow::Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { n, jobs, format } => {
            let verdicts = verification_suite(n, jobs)?;
            let ok = match format {
                TextOrJson::Text => {
                    let ok = print_verdicts(&verdicts);
                    println!(
                        "verify n={n}: {} ({}/{} checks passed)",
                        if ok { "pass" } else { "FAIL" },
                        verdicts.iter().filter(|v| v.pass).count(),
                        verdicts.len()
                    );
                    ok
                }
                TextOrJson::Json => {
                    let ok = verdicts.iter().all(|v| v.pass);
                    let js = serde_json::json!({
                        "schema_version": 1,
                        "n": n,
                        "all_pass": ok,
                        "verdicts": verdicts,
                    });
                    println!("{}", serde_json::to_string_pretty(&js)?);
                    ok
                }
            };
            Ok(if ok { 0 } else { EXIT_VERIFICATION })
        }
        Command::Ranks {
            n,
            variety,
            max_degree,
            certify_snf,
            format,
        } => {
            let g = GkmGraph::build(n, variety.into())?;
            let up_to = max_degree.unwrap_or_else(|| g.dim()).min(3 * g.dim());
            let table = chow_ranks(&g, up_to)?;
            let certificates: Vec<_> = if certify_snf {
                (0..=up_to.min(n)).map(|d| certify_torsion_free(&g, d)).collect()
            } else {
                Vec::new()
            };
            match format {
                TextOrJson::Text => {
                    println!("{table}");
                    for c in &certificates {
                        println!(
                            "  degree {}: torsion-free {}",
                            c.degree, c.torsion_free
                        );
                    }
                }
                TextOrJson::Json => {
                    let mut js = serde_json::to_value(&table)?;
                    js["schema_version"] = 1.into();
                    if certify_snf {
                        js["torsion_certificates"] = serde_json::to_value(&certificates)?;
                    }
                    println!("{}", serde_json::to_string_pretty(&js)?);
                }
            }
            Ok(0)
        }
        Command::Gram { n, family, format } => {
            let report = middle_basis_check(n)?;
            let full = &report.gram;
            let (labels, m): (Vec<String>, Mat) = match family {
                GramFamily::Middle => (
                    (1..=n)
                        .map(|l| format!("gamma_{l}"))
                        .chain((0..=n - 3).map(|i| format!("h^{}*xi^{}", i + 1, n - 3 - i)))
                        .collect(),
                    full.clone(),
                ),
                GramFamily::Gamma => {
                    let mut block = Mat::zero(n, n);
                    for i in 0..n {
                        for j in 0..n {
                            block[(i, j)] = full[(i, j)];
                        }
                    }
                    ((1..=n).map(|l| format!("gamma_{l}")).collect(), block)
                }
                GramFamily::H => {
                    let r = n - 2;
                    let mut block = Mat::zero(r, r);
                    for i in 0..r {
                        for j in 0..r {
                            block[(i, j)] = full[(n + i, n + j)];
                        }
                    }
                    (
                        (0..=n - 3)
                            .map(|i| format!("h^{}*xi^{}", i + 1, n - 3 - i))
                            .collect(),
                        block,
                    )
                }
            };
            match format {
                TextOrJson::Text => {
                    let family_name = match family {
                        GramFamily::Middle => "middle",
                        GramFamily::Gamma => "gamma",
                        GramFamily::H => "h",
                    };
                    println!("gram matrix ({family_name} family, n={n}):");
                    for (i, l) in labels.iter().enumerate() {
                        let row: Vec<String> =
                            (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect();
                        println!("  {l:<14} [ {} ]", row.join(" "));
                    }
                    println!("det = {}", m.det());
                }
                TextOrJson::Json => {
                    let js = serde_json::json!({
                        "schema_version": 1,
                        "n": n,
                        "labels": labels,
                        "entries": mat_rows(&m),
                        "det": m.det().to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&js)?);
                }
            }
            Ok(0)
        }
        Command::Graph { n, variety, format } => {
            let g = GkmGraph::build(n, variety.into())?;
            match format {
                GraphFormat::Dot => print!("{}", g.to_dot()),
                GraphFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&g.to_json())?)
                }
                GraphFormat::Text => {
                    println!(
                        "fixed-point graph of {}({n}): {} vertices, {} edges",
                        g.variety(),
                        g.vertices().len(),
                        g.edges().len()
                    );
                    for e in g.edges() {
                        println!(
                            "  {} -- {}  [{}: {}]",
                            e.first, e.second, e.kind, e.weight
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Diagram { n, format } => {
            let report = decomposition_report(n)?;
            match format {
                TextOrJson::Text => {
                    println!("{}", report.summary);
                    print!("{}", report.diagram);
                }
                TextOrJson::Json => {
                    println!("{}", serde_json::to_string_pretty(&report.to_json())?)
                }
            }
            Ok(0)
        }
        Command::Cycle { n, gamma: ell, format } => {
            let g = GkmGraph::build(n, Variety::Y)?;
            let c = gamma(&g, ell)?;
            print_class(&c, format)?;
            Ok(0)
        }
        Command::Monodromy { n, k, apply, format } => {
            let m = MonodromyElement::power_of_cycle(n, k)?;
            let class = parse_apply(&apply, n)?;
            let image = act(&m, &class)?;
            print_class(&image, format)?;
            Ok(0)
        }
        Command::Cocycle { n, format } => {
            let report = verify_cocycle(CyclicAlgebraSpec::new(n)?);
            match format {
                TextOrJson::Text => println!("{report}"),
                TextOrJson::Json => {
                    println!("{}", serde_json::to_string_pretty(&report.to_json())?)
                }
            }
            Ok(if report.all_pass() { 0 } else { EXIT_VERIFICATION })
        }
    }
}

fn parse_apply(spec: &str, n: usize) -> anyhow::Result<EquivariantClass> {
    let y = GkmGraph::build(n, Variety::Y)?;
    if let Some(rest) = spec.strip_prefix("gamma:") {
        let ell: usize = rest
            .parse()
            .map_err(|_| anyhow::anyhow!("bad gamma index '{rest}'"))?;
        return Ok(gamma(&y, ell)?);
    }
    match spec {
        "h" => Ok(lift_h(&y)),
        "xi" | "H" => Ok(lift_xi(&y)),
        other => anyhow::bail!("unknown class '{other}' (expected gamma:<l>, h, or xi)"),
    }
}

fn print_class(c: &EquivariantClass, format: TextOrJson) -> anyhow::Result<()> {
    match format {
        TextOrJson::Text => print!("{c}"),
        TextOrJson::Json => println!("{}", serde_json::to_string_pretty(&c.to_json())?),
    }
    Ok(())
}

fn main() {
    // downstream consumers like `head` may close the pipe early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_USAGE);
        }
    }
}
