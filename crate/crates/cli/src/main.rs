mod input;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use skein_core::catalog::{StructuralNotes, CATALOG};
use skein_core::random::random_braids;
use skein_core::skein::{SkeinEngine, SkeinError, DEFAULT_MAX_NODES};

use input::{LinkSpec, NamedLink};
use verify::{Target, VerifyOptions};

const EXIT_USAGE: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_FAILED: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn resource(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_RESOURCE,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "skein",
    version,
    about = "Exact HOMFLY-PT polynomials and coefficient identity checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Ceiling on skein recursion nodes per polynomial evaluation.
    #[arg(long, global = true, env = "SKEIN_MAX_NODES", default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: u64,
    /// Worker threads for verification batches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Framed and normalized polynomials with their coefficient table.
    Homfly {
        #[command(flatten)]
        link: LinkSpec,
    },
    /// Check identities on links or counting identities.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        link: LinkSpec,
        /// Single g for thm13 (default: every admissible g).
        #[arg(long)]
        g: Option<u32>,
        /// Crossing id for skeinF (default: every inter-component crossing).
        #[arg(long)]
        crossing: Option<u32>,
        /// Largest m for the decomposition identities.
        #[arg(long, default_value_t = 10)]
        m_max: u32,
        /// Largest n for the binomial identity.
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        /// One identity: log-sum, shifted-sum, alternating-sum, binomial-sum or partition-sum.
        #[arg(long)]
        lemma: Option<String>,
        /// Evaluate --lemma at this parameter only.
        #[arg(long, requires = "lemma")]
        param: Option<u32>,
    },
    /// Seeded pseudo-random braid words, one per line.
    Random {
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Built-in links with recomputed structural data.
    Catalog,
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable output")
    );
}

fn skein_failure(link: &NamedLink, e: SkeinError) -> Failure {
    match e {
        SkeinError::ResourceLimit { .. } => Failure::resource(format!("{}: {e}", link.label)),
        other => Failure::usage(format!("{}: {other}", link.label)),
    }
}

fn cmd_homfly(spec: &LinkSpec, format: Format, max_nodes: u64) -> Result<(), Failure> {
    let link = spec.resolve_one()?;
    let d = &link.diagram;
    let mut engine = SkeinEngine::with_max_nodes(max_nodes);
    let framed = engine
        .check_homfly(d)
        .map_err(|e| skein_failure(&link, e))?;
    let table = engine.coeff_table(d).map_err(|e| skein_failure(&link, e))?;
    let normalized = table.homfly_p();
    let total_lk = d
        .total_linking()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let gs: Vec<u32> = table.max_g().map_or(Vec::new(), |m| (0..=m).collect());
    match format {
        Format::Text => {
            println!("link: {}", link.label);
            println!(
                "components={} crossings={} writhe={} total_lk={}",
                d.component_count(),
                d.crossing_count(),
                d.writhe(),
                total_lk
            );
            println!("framed = {framed}");
            println!("P = {normalized}");
            for g in gs {
                println!("g={g} h_{} = {}", table.h_exponent(g), table.h(g));
                println!("g={g} p_{} = {}", table.p_exponent(g), table.p(g));
            }
        }
        Format::Json => {
            let coefficients: Vec<_> = gs
                .iter()
                .map(|&g| {
                    json!({
                        "g": g,
                        "h_exponent": table.h_exponent(g),
                        "h": table.h(g),
                        "p_exponent": table.p_exponent(g),
                        "p": table.p(g),
                    })
                })
                .collect();
            print_json(&json!({
                "link": link.label,
                "components": d.component_count(),
                "crossings": d.crossing_count(),
                "writhe": d.writhe(),
                "total_lk": total_lk,
                "framed": framed,
                "framed_text": framed.to_string(),
                "P": normalized,
                "P_text": normalized.to_string(),
                "coefficients": coefficients,
            }));
        }
    }
    Ok(())
}

fn cmd_verify(opts: &VerifyOptions, spec: &LinkSpec, format: Format) -> Result<(), Failure> {
    let links = if spec.count() == 0 {
        None
    } else {
        Some(spec.resolve_all()?)
    };
    let (rows, failure) = match verify::run(opts, links) {
        Ok(rows) => (rows, None),
        Err((rows, f)) => (rows, Some(f)),
    };
    let passed = rows.iter().filter(|r| r.passed() == Some(true)).count();
    let failed = rows.iter().filter(|r| r.passed() == Some(false)).count();
    let skipped = rows.len() - passed - failed;
    match format {
        Format::Text => {
            for row in &rows {
                println!("{}", row.text());
            }
            if failure.is_none() {
                println!("summary: passed={passed} failed={failed} skipped={skipped}");
            }
        }
        Format::Json => {
            if failure.is_none() {
                print_json(&json!({
                    "results": rows,
                    "passed": passed,
                    "failed": failed,
                    "skipped": skipped,
                }));
            }
        }
    }
    if let Some(f) = failure {
        return Err(f);
    }
    if failed > 0 {
        return Err(Failure {
            code: EXIT_FAILED,
            message: format!("{failed} check(s) failed"),
        });
    }
    Ok(())
}

fn cmd_random(
    strands: usize,
    length: usize,
    seed: u64,
    count: usize,
    format: Format,
) -> Result<(), Failure> {
    let braids =
        random_braids(strands, length, seed, count).map_err(|e| Failure::usage(e.to_string()))?;
    match format {
        Format::Text => {
            for b in &braids {
                println!("{b}");
            }
        }
        Format::Json => {
            let words: Vec<String> = braids.iter().map(ToString::to_string).collect();
            print_json(&json!({
                "strands": strands,
                "length": length,
                "seed": seed,
                "braids": words,
            }));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CatalogRow {
    name: &'static str,
    braid: &'static str,
    #[serde(flatten)]
    notes: StructuralNotes,
}

fn cmd_catalog(format: Format) {
    match format {
        Format::Text => {
            for e in CATALOG {
                println!("{}", e.listing_line());
            }
        }
        Format::Json => {
            let rows: Vec<CatalogRow> = CATALOG
                .iter()
                .map(|e| CatalogRow {
                    name: e.name,
                    braid: e.braid,
                    notes: e.notes(),
                })
                .collect();
            print_json(&rows);
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    let max_nodes = cli.max_nodes;
    match cli.command {
        Command::Homfly { link } => cmd_homfly(&link, format, max_nodes),
        Command::Verify {
            target,
            link,
            g,
            crossing,
            m_max,
            n_max,
            lemma,
            param,
        } => {
            let opts = VerifyOptions {
                target,
                g,
                crossing,
                m_max,
                n_max,
                lemma,
                param,
                max_nodes,
            };
            cmd_verify(&opts, &link, format)
        }
        Command::Random {
            strands,
            length,
            seed,
            count,
        } => cmd_random(strands, length, seed, count, format),
        Command::Catalog => {
            cmd_catalog(format);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cli.threads {
            builder = builder.num_threads(n);
        }
        builder.build()
    };
    let pool = match pool {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match pool.install(|| dispatch(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
