//! `lukas`: enumeration, class counting, canonical maps and series checks
//! for pattern-position equivalence on Lukasiewicz paths.

use std::fmt;
use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lukas_core::canonical::{count_classes_canonical, representative, witness};
use lukas_core::paths::for_each_path;
use lukas_core::quotient::{count_valid_position_sets, CHARACTERIZED};
use lukas_core::report::verify_relations;
use lukas_core::series::expand;
use lukas_core::{
    ClassCount, CountMethod, MapName, Oracle, Path, PathFamily, PatternRelation, SeriesMethod,
    SeriesTag, SubsetTag,
};

#[derive(Parser)]
#[command(name = "lukas", version, about = "Pattern-position equivalence classes of Lukasiewicz paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; plain text when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Largest length the brute-force oracle accepts.
    #[arg(long, global = true, env = "LUKAS_ORACLE_BOUND", default_value_t = 13)]
    oracle_bound: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List every path of a given length.
    Enumerate {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value = "Lukasiewicz")]
        family: PathFamily,
        /// Keep only members of a canonical subset.
        #[arg(long)]
        set: Option<SubsetTag>,
    },
    /// Count equivalence classes.
    Classes {
        #[arg(long)]
        length: usize,
        /// A relation name or `all`.
        #[arg(long)]
        pattern: PatternChoice,
        #[arg(long, default_value = "oracle")]
        method: CountMethod,
        /// Print class sizes and their multiplicities instead of the count.
        #[arg(long)]
        histogram: bool,
    },
    /// Check oracle counts and series against the reference table.
    Verify {
        #[arg(long)]
        pattern: PatternChoice,
        #[arg(long)]
        max_length: usize,
    },
    /// Expand a generating function.
    Series {
        #[arg(long)]
        tag: SeriesTag,
        /// Highest degree printed.
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value = "all")]
        method: MethodChoice,
    },
    /// Print the canonical representative of a path's class.
    Canon {
        #[arg(long)]
        pattern: PatternRelation,
        #[arg(long)]
        path: Path,
    },
    /// Apply one of the constructive maps.
    Map {
        #[arg(long)]
        name: MapName,
        #[arg(long)]
        path: Path,
        /// `FU` or `UF`, needed by `runs`.
        #[arg(long)]
        pattern: Option<PatternRelation>,
    },
    /// Build a path with prescribed occurrence positions.
    Witness {
        #[arg(long)]
        pattern: PatternRelation,
        #[arg(long)]
        length: usize,
        /// Comma-separated 1-based positions; empty for none.
        #[arg(long, default_value = "")]
        positions: Positions,
    },
}

#[derive(Clone, Copy)]
enum PatternChoice {
    All,
    One(PatternRelation),
}

impl PatternChoice {
    fn relations(self) -> Vec<PatternRelation> {
        match self {
            PatternChoice::All => PatternRelation::ALL.to_vec(),
            PatternChoice::One(r) => vec![r],
        }
    }
}

impl FromStr for PatternChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(PatternChoice::All);
        }
        s.parse().map(PatternChoice::One).map_err(|e| format!("{e}"))
    }
}

#[derive(Clone, Copy)]
enum MethodChoice {
    All,
    One(SeriesMethod),
}

impl FromStr for MethodChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(MethodChoice::All);
        }
        s.parse().map(MethodChoice::One)
    }
}

#[derive(Clone)]
struct Positions(Vec<usize>);

impl FromStr for Positions {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| format!("bad position `{t}`")))
            .collect::<Result<_, _>>()
            .map(Positions)
    }
}

impl fmt::Display for Positions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

type CmdResult = Result<bool, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn json_line<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

fn run(cli: &Cli, out: &mut impl Write) -> CmdResult {
    let oracle = Oracle::with_bound(cli.oracle_bound);
    match &cli.command {
        Command::Enumerate { length, family, set } => {
            let mut paths = Vec::new();
            for_each_path(*length, *family, |steps| {
                let p = Path::new(steps.to_vec()).expect("enumerated paths are valid");
                if set.is_none_or(|tag| p.in_subset(tag)) {
                    paths.push(p);
                }
            });
            match cli.format {
                Some(Format::Json) => json_line(out, &paths)?,
                Some(Format::Csv) => {
                    writeln!(out, "path")?;
                    for p in &paths {
                        writeln!(out, "{p}")?;
                    }
                }
                None => {
                    for p in &paths {
                        writeln!(out, "{p}")?;
                    }
                }
            }
            Ok(true)
        }
        Command::Classes {
            length,
            pattern,
            method,
            histogram,
        } => {
            if *histogram {
                let PatternChoice::One(r) = pattern else {
                    return Err("--histogram needs a single --pattern".into());
                };
                let hist = oracle.class_size_histogram(*length, *r)?;
                match cli.format {
                    Some(Format::Json) => {
                        #[derive(Serialize)]
                        struct Entry {
                            size: usize,
                            multiplicity: usize,
                        }
                        let entries: Vec<Entry> = hist
                            .into_iter()
                            .map(|(size, multiplicity)| Entry { size, multiplicity })
                            .collect();
                        json_line(out, &entries)?;
                    }
                    Some(Format::Csv) | None => {
                        writeln!(out, "size,multiplicity")?;
                        for (size, mult) in hist {
                            writeln!(out, "{size},{mult}")?;
                        }
                    }
                }
                return Ok(true);
            }
            let relations = match (pattern, method) {
                (PatternChoice::All, CountMethod::Characterization) => CHARACTERIZED.to_vec(),
                _ => pattern.relations(),
            };
            let counts = relations
                .into_iter()
                .map(|r| class_count(*length, r, *method, &oracle))
                .collect::<Result<Vec<_>, _>>()?;
            match (cli.format, pattern) {
                (Some(Format::Json), PatternChoice::One(_)) => json_line(out, &counts[0])?,
                (Some(Format::Json), PatternChoice::All) => json_line(out, &counts)?,
                (None, PatternChoice::One(_)) => writeln!(out, "{}", counts[0].count)?,
                (Some(Format::Csv), _) | (None, PatternChoice::All) => {
                    writeln!(out, "{}", ClassCount::CSV_HEADER)?;
                    for c in &counts {
                        writeln!(out, "{}", c.csv_row())?;
                    }
                }
            }
            Ok(true)
        }
        Command::Verify {
            pattern,
            max_length,
        } => {
            let report = verify_relations(&pattern.relations(), *max_length, &oracle, |n| {
                eprintln!("verify: length {n}");
            })?;
            match cli.format {
                Some(Format::Json) => json_line(out, &report)?,
                _ => write!(out, "{}", report.to_csv())?,
            }
            let failures = report.failures().count();
            eprintln!("verify: {} rows, {failures} failed", report.rows.len());
            Ok(failures == 0)
        }
        Command::Series { tag, terms, method } => {
            let methods = match method {
                MethodChoice::All => tag.methods(),
                MethodChoice::One(m) => vec![*m],
            };
            #[derive(Serialize)]
            struct Expansion {
                tag: SeriesTag,
                method: SeriesMethod,
                coefficients: Vec<String>,
            }
            let mut expansions = Vec::new();
            for m in methods {
                let coefficients = expand(*tag, m, *terms)?
                    .to_integers()?
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
                expansions.push(Expansion {
                    tag: *tag,
                    method: m,
                    coefficients,
                });
            }
            match cli.format {
                Some(Format::Json) => json_line(out, &expansions)?,
                Some(Format::Csv) => {
                    writeln!(out, "tag,method,n,coefficient")?;
                    for e in &expansions {
                        for (n, c) in e.coefficients.iter().enumerate() {
                            writeln!(out, "{},{},{n},{c}", e.tag, e.method)?;
                        }
                    }
                }
                None => {
                    for e in &expansions {
                        writeln!(out, "{} {}: {}", e.tag, e.method, e.coefficients.join(","))?;
                    }
                }
            }
            let agree = expansions.windows(2).all(|w| w[0].coefficients == w[1].coefficients);
            if !agree {
                eprintln!("series: methods disagree for {tag}");
            }
            Ok(agree)
        }
        Command::Canon { pattern, path } => {
            let form = representative(path, *pattern, oracle.bound())?;
            match cli.format {
                Some(Format::Json) => json_line(out, &form)?,
                Some(Format::Csv) => {
                    writeln!(out, "relation,subset,path")?;
                    writeln!(out, "{},{},{}", form.relation, form.subset, form.path)?;
                }
                None => writeln!(out, "{}", form.path)?,
            }
            Ok(true)
        }
        Command::Map {
            name,
            path,
            pattern,
        } => {
            let image = name.apply(path, *pattern)?;
            match cli.format {
                Some(Format::Json) => json_line(
                    out,
                    &serde_json::json!({ "map": name.name(), "input": path, "output": image }),
                )?,
                Some(Format::Csv) => {
                    writeln!(out, "map,input,output")?;
                    writeln!(out, "{name},{path},{image}")?;
                }
                None => writeln!(out, "{image}")?,
            }
            Ok(true)
        }
        Command::Witness {
            pattern,
            length,
            positions,
        } => {
            let path = witness(*pattern, *length, &positions.0)?;
            match cli.format {
                Some(Format::Json) => json_line(
                    out,
                    &serde_json::json!({
                        "pattern": pattern,
                        "length": length,
                        "positions": positions.0,
                        "path": path,
                    }),
                )?,
                Some(Format::Csv) => {
                    writeln!(out, "pattern,length,positions,path")?;
                    writeln!(out, "{pattern},{length},{positions},{path}")?;
                }
                None => writeln!(out, "{path}")?,
            }
            Ok(true)
        }
    }
}

fn class_count(
    n: usize,
    r: PatternRelation,
    method: CountMethod,
    oracle: &Oracle,
) -> Result<ClassCount, Box<dyn std::error::Error>> {
    Ok(match method {
        CountMethod::Oracle => oracle.count_classes(n, r)?,
        CountMethod::Characterization => count_valid_position_sets(n, r)?,
        CountMethod::Canonical => count_classes_canonical(n, r, oracle)?,
    })
}
