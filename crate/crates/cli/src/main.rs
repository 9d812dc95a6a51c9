use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spherical_curves::corpus::{self, Filters, Strategy, TableFormat};
use spherical_curves::embedding;
use spherical_curves::invariants::{invariant_vector, InvariantVector};
use spherical_curves::moves::{enumerate_moves, MoveKind};
use spherical_curves::search::bfs_reachable;
use spherical_curves::word::{KeyMode, Word};
use spherical_curves::Error;

#[derive(Parser)]
#[command(name = "sphcurve", version, about = "Spherical curves as decorated Gauss words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Based,
    Unbased,
    UnbasedUnoriented,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Dfs,
    Moves,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical key of a word.
    Normalize {
        #[arg(long, value_enum, default_value = "based")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Counting invariants of a word.
    Invariants {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also report the individual l and r counts.
        #[arg(long)]
        with_lr: bool,
        #[arg(allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Whether a word is realizable on the sphere, with its genus.
    Realizable {
        #[arg(allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Faces of a realizable word.
    Faces {
        #[arg(allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Instances of one move kind on a word.
    Moves {
        #[arg(long)]
        kind: String,
        #[arg(allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Connected sum of two words at the given arcs.
    Sum {
        #[arg(long, default_value_t = 0)]
        arc1: usize,
        #[arg(long, default_value_t = 0)]
        arc2: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(allow_hyphen_values = true)]
        w1: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
    },
    /// All curves up to a number of double points.
    Enumerate {
        #[arg(long)]
        max_crossings: usize,
        #[arg(long)]
        prime: bool,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value = "dfs")]
        strategy: StrategyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariant table of all curves up to a number of double points.
    Table {
        #[arg(long)]
        max_crossings: usize,
        #[arg(long)]
        prime: bool,
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_delimiter = ',', default_value = "n,u,b,lr,x,s,kappa,inv_s3,inv_s2,inv_w3,mu")]
        columns: Vec<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Shortest move sequence between two curves.
    Bfs {
        #[arg(long, default_value = "R1,S2,W2,S3,W3")]
        moves: String,
        #[arg(long)]
        max_crossings: usize,
        #[arg(long)]
        max_steps: usize,
        #[arg(allow_hyphen_values = true)]
        w1: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let report = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{report}");
            ExitCode::from(1)
        }
    }
}

/// The word argument, or one word per nonempty stdin line.
fn words(arg: Option<String>) -> Result<Vec<Word>, Error> {
    match arg {
        Some(text) => Ok(vec![text.parse()?]),
        None => io::stdin()
            .lock()
            .lines()
            .map_while(Result::ok)
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.parse())
            .collect(),
    }
}

fn emit(out: &mut impl Write, value: &impl serde::Serialize) {
    let _ = writeln!(out, "{}", serde_json::to_string(value).expect("output serializes"));
}

fn invariants_json(v: &InvariantVector, with_lr: bool) -> Value {
    let mut value = serde_json::to_value(v).expect("vector serializes");
    if with_lr {
        value["l"] = v.l.into();
        value["r"] = v.r.into();
    }
    value
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Error> {
    match command {
        Command::Normalize { mode, format, word } => {
            let mode = match mode {
                Mode::Based => KeyMode::Based,
                Mode::Unbased => KeyMode::Unbased,
                Mode::UnbasedUnoriented => KeyMode::UnbasedUnoriented,
            };
            for w in words(word)? {
                let key = w.key(mode).to_word();
                match format {
                    Format::Json => emit(out, &key),
                    _ => {
                        let _ = writeln!(out, "{key}");
                    }
                }
            }
        }
        Command::Invariants { format, with_lr, word } => {
            let ws = words(word)?;
            if format == Format::Csv {
                let mut header = InvariantVector::csv_header();
                if with_lr {
                    header.push_str(",l,r");
                }
                let _ = writeln!(out, "{header},realizable");
            }
            for w in ws {
                let v = invariant_vector(&w);
                match format {
                    Format::Json => emit(out, &invariants_json(&v, with_lr)),
                    Format::Csv => {
                        let mut row = v.csv_row(&w.to_string());
                        if with_lr {
                            row.push_str(&format!(",{},{}", v.l, v.r));
                        }
                        let _ = writeln!(out, "{row},{}", v.realizable);
                    }
                    Format::Text => {
                        let mut fields: Vec<String> =
                            InvariantVector::COLUMNS.iter().map(|c| format!("{c}={}", v.get(c).unwrap())).collect();
                        if with_lr {
                            fields.push(format!("l={} r={}", v.l, v.r));
                        }
                        fields.push(format!("realizable={}", v.realizable));
                        let _ = writeln!(out, "{}", fields.join(" "));
                    }
                }
            }
        }
        Command::Realizable { word } => {
            for w in words(word)? {
                let genus = embedding::genus(&w);
                emit(out, &json!({ "realizable": genus == 0, "genus": genus }));
            }
        }
        Command::Faces { word } => {
            for w in words(word)? {
                let faces = embedding::faces(&w)?;
                let rows: Vec<Value> = faces
                    .iter()
                    .map(|f| {
                        json!({
                            "degree": f.degree(),
                            "coherent": f.coherent(),
                            "arcs": f.arcs,
                            "corners": f.corners,
                        })
                    })
                    .collect();
                emit(out, &rows);
            }
        }
        Command::Moves { kind, word } => {
            let kind: MoveKind = kind.parse()?;
            for w in words(word)? {
                emit(out, &enumerate_moves(&w, kind)?);
            }
        }
        Command::Sum { arc1, arc2, format, w1, w2 } => {
            let (w1, w2): (Word, Word) = (w1.parse()?, w2.parse()?);
            let sum = w1.connected_sum(&w2, arc1, arc2)?.canonical();
            match format {
                Format::Json => emit(out, &sum),
                _ => {
                    let _ = writeln!(out, "{sum}");
                }
            }
        }
        Command::Enumerate { max_crossings, prime, reduced, threads, strategy, out: path } => {
            if let Some(t) = threads {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
            let strategy = match strategy {
                StrategyArg::Dfs => Strategy::Diagrams,
                StrategyArg::Moves => Strategy::Moves,
            };
            let classes = corpus::enumerate_curves_with(max_crossings, Filters { prime, reduced }, strategy);
            let text = serde_json::to_string_pretty(&classes).expect("classes serialize");
            match path {
                Some(path) => std::fs::write(&path, text + "\n").map_err(|e| Error::Io(e.to_string()))?,
                None => {
                    let _ = writeln!(out, "{text}");
                }
            }
        }
        Command::Table { max_crossings, prime, reduced, columns, format } => {
            let classes = corpus::enumerate_curves(max_crossings, Filters { prime, reduced });
            let columns: Vec<&str> = columns.iter().map(String::as_str).collect();
            let format = match format {
                Format::Json => TableFormat::Json,
                _ => TableFormat::Csv,
            };
            let _ = write!(out, "{}", corpus::table(&classes, &columns, format)?);
        }
        Command::Bfs { moves, max_crossings, max_steps, w1, w2 } => {
            let kinds = MoveKind::parse_list(&moves)?;
            let (w1, w2): (Word, Word) = (w1.parse()?, w2.parse()?);
            emit(out, &bfs_reachable(&w1, &w2, &kinds, max_crossings, max_steps)?);
        }
    }
    Ok(())
}
