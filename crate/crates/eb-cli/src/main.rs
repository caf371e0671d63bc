//! `eb`: structure reports, Erdős–Burgess and Davenport constants, and CRT
//! lower-bound certificates for finite commutative rings, as deterministic
//! JSON on stdout. Exit codes: 0 success, 1 input error, 2 budget or
//! resource limit, 3 property failure.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use eb_core::dsl::{elaborate, parse, pretty};
use eb_core::ring::prime_power;
use eb_core::semigroup::{abelian_group, DEFAULT_CHECK_SEED};
use eb_core::solver::{davenport, erdos_burgess, EbValue, SearchConfig};
use eb_core::structure::{analyze, claim_b_sequence};
use eb_core::{Error, FiniteRing, Result};

use eb_cli::corpus::{built_in_corpus, load_corpus};
use eb_cli::report::{DavenportSection, LemmaReport, Report, SCHEMA_VERSION};
use eb_cli::suites::{elaborate_corpus, prepare, run_all, SuiteConfig};

const STRUCTURE_CAP: usize = 4096;
const EB_CAP: usize = 128;

#[derive(Parser)]
#[command(
    name = "eb",
    version,
    about = "Structure and Erdős–Burgess constants of finite commutative rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RingInput {
    /// Ring expression, e.g. "Z/12", "GF(9)", "Z/2[x]/(x^2+x+1)", "Z/2 x Z/3"
    ring: Option<String>,

    /// JSON file with raw tables {"order": n, "add": [[..],..], "mul": [[..],..]}
    #[arg(long, value_name = "PATH", conflicts_with = "ring")]
    ring_json: Option<PathBuf>,
}

#[derive(Args)]
struct OutputOpts {
    /// Also write the report to this file
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Include wall-clock timings (makes output nondeterministic)
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct SolveOpts {
    /// Cut the search at this depth; the report then carries a certified bound
    #[arg(long, value_name = "N")]
    depth_budget: Option<usize>,

    /// Worker threads for the root of the search
    #[arg(long, value_name = "N", default_value_t = 1)]
    threads: usize,
}

impl SolveOpts {
    fn search_config(&self) -> SearchConfig {
        SearchConfig {
            depth_budget: self.depth_budget,
            parallel_width: self.threads.max(1),
            ..SearchConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Radicals, maximal ideals, units, and the semisimple decomposition
    Analyze {
        #[command(flatten)]
        input: RingInput,
        /// Largest ring order accepted
        #[arg(long, value_name = "N", default_value_t = STRUCTURE_CAP)]
        cap: usize,
        /// Seed for sampled axiom checks on large raw tables
        #[arg(long, value_name = "N", default_value_t = DEFAULT_CHECK_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutputOpts,
    },

    /// Exact Erdős–Burgess constant of the multiplicative semigroup
    Eb {
        #[command(flatten)]
        input: RingInput,
        /// Largest ring order accepted
        #[arg(long, value_name = "N", default_value_t = EB_CAP)]
        cap: usize,
        /// Seed for sampled axiom checks on large raw tables
        #[arg(long, value_name = "N", default_value_t = DEFAULT_CHECK_SEED)]
        seed: u64,
        #[command(flatten)]
        solve: SolveOpts,
        #[command(flatten)]
        out: OutputOpts,
    },

    /// Davenport constant of the abelian group with the given invariant
    /// factors, e.g. "6" or "2,6"
    Davenport {
        /// Comma-separated invariant factors d1 | d2 | ...
        factors: String,
        /// Largest group order accepted
        #[arg(long, value_name = "N", default_value_t = EB_CAP)]
        cap: usize,
        #[command(flatten)]
        solve: SolveOpts,
        #[command(flatten)]
        out: OutputOpts,
    },

    /// CRT lower-bound certificate, plus the exact constant when feasible
    Certify {
        #[command(flatten)]
        input: RingInput,
        /// Largest ring order accepted
        #[arg(long, value_name = "N", default_value_t = STRUCTURE_CAP)]
        cap: usize,
        /// Seed for sampled axiom checks on large raw tables
        #[arg(long, value_name = "N", default_value_t = DEFAULT_CHECK_SEED)]
        seed: u64,
        #[command(flatten)]
        solve: SolveOpts,
        #[command(flatten)]
        out: OutputOpts,
    },

    /// Run every lemma suite over a corpus of ring expressions
    VerifyLemmas {
        /// Corpus file, one expression per line ("#" comments); built-in
        /// corpus when omitted
        #[arg(long, value_name = "FILE")]
        corpus: Option<PathBuf>,
        /// Largest ring order accepted
        #[arg(long, value_name = "N", default_value_t = STRUCTURE_CAP)]
        cap: usize,
        /// Seed for the randomized suites
        #[arg(long, value_name = "N", default_value_t = DEFAULT_CHECK_SEED)]
        seed: u64,
        /// Worker threads for the solver
        #[arg(long, value_name = "N", default_value_t = 1)]
        threads: usize,
        /// Also write the summary to this file
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(serde::Deserialize)]
struct RawRing {
    order: usize,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
}

fn load_raw_ring(path: &PathBuf, seed: u64) -> Result<(String, FiniteRing)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    let raw: RawRing = serde_json::from_str(&text)
        .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let label = format!("raw:{name}");
    let flatten = |rows: &[Vec<u32>], which: &str| -> Result<Vec<u32>> {
        if rows.len() != raw.order {
            return Err(Error::input(format!(
                "{label}: {which} table has {} rows, expected {}",
                rows.len(),
                raw.order
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != raw.order {
                return Err(Error::input(format!(
                    "{label}: {which} row {i} has {} entries, expected {}",
                    row.len(),
                    raw.order
                )));
            }
        }
        Ok(rows.concat())
    };
    let add = flatten(&raw.add, "addition")?;
    let mul = flatten(&raw.mul, "multiplication")?;
    let ring = FiniteRing::from_tables_seeded(label.clone(), raw.order, add, mul, seed)?;
    Ok((label, ring))
}

fn load_ring(input: &RingInput, cap: usize, seed: u64) -> Result<(String, FiniteRing)> {
    match (&input.ring, &input.ring_json) {
        (Some(text), None) => {
            let expr = parse(text)?;
            let ring = elaborate(&expr, cap)?;
            Ok((pretty(&expr), ring))
        }
        (None, Some(path)) => {
            let (label, ring) = load_raw_ring(path, seed)?;
            if ring.order() > cap {
                return Err(Error::resource(format!(
                    "{label} has order {}, cap is {cap}",
                    ring.order()
                )));
            }
            Ok((label, ring))
        }
        _ => Err(Error::input(
            "provide a ring expression or --ring-json FILE",
        )),
    }
}

fn emit(body: &str, json: &Option<PathBuf>) -> Result<()> {
    print!("{body}");
    if let Some(path) = json {
        std::fs::write(path, body)
            .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

struct Phases {
    enabled: bool,
    start: Instant,
    spans: BTreeMap<&'static str, u128>,
}

impl Phases {
    fn new(enabled: bool) -> Self {
        Phases {
            enabled,
            start: Instant::now(),
            spans: BTreeMap::new(),
        }
    }

    fn mark(&mut self, name: &'static str) {
        if self.enabled {
            self.spans.insert(name, self.start.elapsed().as_millis());
            self.start = Instant::now();
        }
    }

    fn take(self) -> Option<BTreeMap<&'static str, u128>> {
        self.enabled.then_some(self.spans)
    }
}

fn parse_factors(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let d: u64 = part.parse().map_err(|_| {
            Error::input(format!("invariant factor {part:?} is not a positive integer"))
        })?;
        if d == 0 {
            return Err(Error::input("invariant factors must be positive"));
        }
        out.push(d);
    }
    for w in out.windows(2) {
        if w[1] % w[0] != 0 {
            return Err(Error::input(format!(
                "invariant factors must form a divisibility chain: {} does not divide {}",
                w[0], w[1]
            )));
        }
    }
    Ok(out)
}

fn davenport_closed_form(factors: &[u64]) -> Option<usize> {
    let nontrivial: Vec<u64> = factors.iter().copied().filter(|&d| d > 1).collect();
    if nontrivial.is_empty() {
        return Some(1);
    }
    let bases: Vec<u64> = nontrivial
        .iter()
        .filter_map(|&d| prime_power(d).map(|(p, _)| p))
        .collect();
    if bases.len() == nontrivial.len() && bases.windows(2).all(|w| w[0] == w[1]) {
        return Some(1 + nontrivial.iter().map(|&d| d as usize - 1).sum::<usize>());
    }
    if nontrivial.len() <= 2 {
        return Some(nontrivial.iter().map(|&d| d as usize).sum::<usize>() + 1 - nontrivial.len());
    }
    None
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze {
            input,
            cap,
            seed,
            out,
        } => {
            let mut phases = Phases::new(out.timings);
            let (text, ring) = load_ring(&input, cap, seed)?;
            phases.mark("elaborate_ms");
            let structure = analyze(&ring);
            phases.mark("structure_ms");
            let mut report = Report::new(text, ring.order());
            report.structure = Some(structure);
            report.timings = phases.take();
            emit(&report.to_json(), &out.json)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Eb {
            input,
            cap,
            seed,
            solve,
            out,
        } => {
            let mut phases = Phases::new(out.timings);
            let (text, ring) = load_ring(&input, cap, seed)?;
            phases.mark("elaborate_ms");
            let structure = analyze(&ring);
            phases.mark("structure_ms");
            let result = erdos_burgess(&ring.mult_semigroup(), &solve.search_config())?;
            phases.mark("solve_ms");
            let exceeded = matches!(result.value, EbValue::ExceedsBudget { .. });
            let mut report = Report::new(text, ring.order());
            report.structure = Some(structure);
            report.eb = Some(result);
            report.timings = phases.take();
            emit(&report.to_json(), &out.json)?;
            Ok(if exceeded {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }

        Command::Davenport {
            factors,
            cap,
            solve,
            out,
        } => {
            let mut phases = Phases::new(out.timings);
            let factors = parse_factors(&factors)?;
            let order = factors
                .iter()
                .try_fold(1u64, |acc, &d| acc.checked_mul(d))
                .filter(|&o| o <= cap as u64)
                .ok_or_else(|| {
                    Error::resource(format!("group order for {factors:?} exceeds cap {cap}"))
                })?;
            let group = abelian_group(&factors)?;
            phases.mark("elaborate_ms");
            let result = davenport(&group, &solve.search_config())?;
            phases.mark("solve_ms");
            let exceeded = matches!(result.value, EbValue::ExceedsBudget { .. });
            let closed_form = davenport_closed_form(&factors);
            if let (Some(cf), Some(v)) = (closed_form, result.value.exact()) {
                if cf != v {
                    return Err(Error::property(format!(
                        "D({}) = {v} but the closed form gives {cf}",
                        group.label()
                    )));
                }
            }
            let mut report = Report::new(group.label(), order as usize);
            report.eb = Some(result);
            report.davenport = Some(DavenportSection {
                invariant_factors: factors,
                closed_form,
            });
            report.timings = phases.take();
            emit(&report.to_json(), &out.json)?;
            Ok(if exceeded {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }

        Command::Certify {
            input,
            cap,
            seed,
            solve,
            out,
        } => {
            let mut phases = Phases::new(out.timings);
            let (text, ring) = load_ring(&input, cap, seed)?;
            phases.mark("elaborate_ms");
            let structure = analyze(&ring);
            phases.mark("structure_ms");
            let certificate = claim_b_sequence(&ring)?;
            phases.mark("certificate_ms");
            let eb = if ring.order() <= EB_CAP {
                let result = erdos_burgess(&ring.mult_semigroup(), &solve.search_config())?;
                if let Some(v) = result.value.exact() {
                    if v < certificate.lower_bound {
                        return Err(Error::property(format!(
                            "I = {v} below the certified bound {} for {text}",
                            certificate.lower_bound
                        )));
                    }
                }
                Some(result)
            } else {
                None
            };
            phases.mark("solve_ms");
            let mut report = Report::new(text, ring.order());
            report.structure = Some(structure);
            report.eb = eb;
            report.certificates = Some(vec![certificate]);
            report.timings = phases.take();
            emit(&report.to_json(), &out.json)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::VerifyLemmas {
            corpus,
            cap,
            seed,
            threads,
            json,
        } => {
            let parsed = match &corpus {
                Some(path) => load_corpus(path)?,
                None => built_in_corpus(),
            };
            let rings = elaborate_corpus(&parsed, cap)?;
            let cfg = SuiteConfig {
                seed,
                threads,
                ..SuiteConfig::default()
            };
            let entries = prepare(rings, &cfg)?;
            let suites = run_all(&entries, &cfg)?;
            let passed = suites.iter().all(|s| s.passed);
            let summary = LemmaReport {
                schema_version: SCHEMA_VERSION,
                corpus_size: entries.len(),
                passed,
                suites,
            };
            emit(&summary.to_json(), &json)?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
    }
}

fn exit_for(err: &Error) -> ExitCode {
    match err {
        Error::Input(_) => ExitCode::from(1),
        Error::Resource(_) | Error::Budget { .. } => ExitCode::from(2),
        Error::Property(_) => ExitCode::from(3),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_for(&err)
        }
    }
}
