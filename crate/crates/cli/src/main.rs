use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use liesquare::classify::classify_squares;
use liesquare::corpus::Corpus;
use liesquare::repdims::{dim_irrep_big, enumerate_small_reps, format_eps, parse_weight};
use liesquare::verify;
use liesquare::{Error, FamilyRank, IrrepCache, RootSystem, SquareKind};

/// Dominant-weight count above which `char` wants `--force`.
const CHAR_GUARD: usize = 100_000;

#[derive(Parser)]
#[command(
    name = "liesquare",
    version,
    about = "Characters and tensor squares of simple Lie algebras and osp(1|2m)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sym,
    Alt,
}

impl From<Kind> for SquareKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Sym => SquareKind::Symmetric,
            Kind::Alt => SquareKind::Alternating,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Numerical data of a root system.
    Roots { system: String },
    /// (Super)dimension of an irreducible representation.
    Dim { system: String, weight: String },
    /// Dominant weight multiplicities of an irreducible character.
    Char {
        system: String,
        weight: String,
        /// Print even when the character has more than 100000 dominant weights.
        #[arg(long)]
        force: bool,
    },
    /// Decomposition of S² or Λ².
    Square {
        system: String,
        weight: String,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Irreducible representations of dimension at most dim 𝔤.
    Smallreps { system: String },
    /// Weights whose square is irreducible or irreducible plus trivial.
    Classify {
        system: String,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Compare everything against the golden corpus.
    Verify {
        #[arg(long, default_value_t = 8)]
        rank_bound: usize,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

enum Outcome {
    Ok,
    Diff,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Diff) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn system(s: &str) -> Result<Arc<RootSystem>, Error> {
    let id: FamilyRank = s.to_ascii_uppercase().parse()?;
    Ok(Arc::new(RootSystem::new(id)))
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("plain data")),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let fmt = cli.format;
    match &cli.command {
        Command::Roots { system: s } => {
            let rs = system(s)?;
            let row = rs.table1_row();
            let simple: Vec<String> = rs.simple_roots().iter().map(|w| w.to_string()).collect();
            let fundamental: Vec<String> = rs.fundamental_weights().iter().map(|w| w.to_string()).collect();
            let text = format!(
                "system {}\nrank {}\n|rho|^2 {}\nmax |coroot|^2 {}\ndim g {}\nWeyl group order {}\npositive roots {} even, {} odd\nsimple roots {}\nfundamental weights {}\n",
                rs.id(),
                rs.rank(),
                row.rho_norm_sq,
                row.max_coroot_norm_sq,
                row.dim_g,
                rs.weyl_group_order(),
                rs.positive_even_roots().len(),
                rs.positive_odd_roots().len(),
                simple.join(" | "),
                fundamental.join(" | ")
            );
            let value = json!({
                "system": rs.id(),
                "rank": rs.rank(),
                "table1": row,
                "weyl_group_order": rs.weyl_group_order().to_string(),
                "positive_even_roots": rs.positive_even_roots().len(),
                "positive_odd_roots": rs.positive_odd_roots().len(),
                "simple_roots": simple,
                "fundamental_weights": fundamental,
            });
            emit(fmt, text, value);
        }
        Command::Dim { system: s, weight } => {
            let rs = system(s)?;
            let w = parse_weight(&rs, weight)?;
            let d = dim_irrep_big(&rs, &w)?;
            emit(
                fmt,
                format!("{d}\n"),
                json!({"system": rs.id(), "weight": w.to_string(), "dim": d.to_string()}),
            );
        }
        Command::Char {
            system: s,
            weight,
            force,
        } => {
            let rs = system(s)?;
            let w = parse_weight(&rs, weight)?;
            let cap = if *force { usize::MAX } else { CHAR_GUARD };
            let cache = IrrepCache::new(rs.clone()).with_budget(cap);
            let ch = cache.irrep_character(&w)?;
            let entries: Vec<serde_json::Value> = ch
                .sorted_support()
                .iter()
                .map(|x| {
                    let m = ch.get(x);
                    json!({"weight_e": format_eps(&rs, x), "weight_f": x.to_vec(), "even": m.even, "odd": m.odd})
                })
                .collect();
            emit(
                fmt,
                ch.dump(),
                json!({"system": rs.id(), "weight": w.to_string(), "dominant": entries}),
            );
        }
        Command::Square {
            system: s,
            weight,
            kind,
        } => {
            let rs = system(s)?;
            let w = parse_weight(&rs, weight)?;
            let kind = SquareKind::from(*kind);
            let d = IrrepCache::new(rs.clone()).square(&w, kind)?;
            let mut value = d.to_json();
            value["system"] = json!(rs.id());
            value["weight"] = json!(w.to_string());
            value["kind"] = json!(kind);
            emit(fmt, format!("{d}\n"), value);
        }
        Command::Smallreps { system: s } => {
            let rs = system(s)?;
            let list = enumerate_small_reps(&rs)?;
            let text: String = list.iter().map(|(w, d)| format!("{w} {d}\n")).collect();
            let value: Vec<serde_json::Value> = list
                .iter()
                .map(|(w, d)| json!({"weight": w.to_string(), "dim": d}))
                .collect();
            emit(fmt, text, json!({"system": rs.id(), "small": value}));
        }
        Command::Classify { system: s, kind } => {
            let rs = system(s)?;
            let res = classify_squares(&IrrepCache::new(rs.clone()), SquareKind::from(*kind))?;
            let text: String = res
                .hits
                .iter()
                .map(|h| format!("{} dim {} {}: {}\n", h.weight, h.dim, h.status.status, h.decomposition))
                .collect();
            let hits: Vec<serde_json::Value> = res
                .hits
                .iter()
                .map(|h| {
                    json!({
                        "weight": h.weight.to_string(),
                        "dim": h.dim,
                        "status": h.status.status,
                        "delta": h.status.delta,
                        "decomposition": h.decomposition.to_json(),
                    })
                })
                .collect();
            let classes: Vec<Vec<String>> = res
                .duality_classes
                .iter()
                .map(|c| c.iter().map(|w| w.to_string()).collect())
                .collect();
            emit(
                fmt,
                text,
                json!({"system": rs.id(), "kind": res.kind, "hits": hits, "duality_classes": classes}),
            );
        }
        Command::Verify { rank_bound, corpus } => {
            let corpus = Corpus::load(corpus.as_deref())?;
            let run = verify::run_all(&corpus, *rank_bound)?;
            let ok = run.passed();
            let value = json!({
                "rank_bound": rank_bound,
                "checks": run.reports,
                "classification": run.classification,
                "passed": ok,
            });
            emit(fmt, verify::render_text(&run.reports), value);
            if !ok {
                return Ok(Outcome::Diff);
            }
        }
    }
    Ok(Outcome::Ok)
}
