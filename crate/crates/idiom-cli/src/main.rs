//! Command-line surface: load lattices, run individual computations, and
//! execute the per-theorem verification suites over the corpus.
//!
//! Exit codes: 0 when every verdict passes, 1 on computation errors or
//! failed verdicts, 2 on usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use idiom_core::allocation::{check_allocation, check_aspect, xi};
use idiom_core::decomposition::{find_decomposition, support, Decomposition};
use idiom_core::dimension::{boyle_filtration, gabriel_filtration, kpr_filtration};
use idiom_core::error::Error;
use idiom_core::fixtures;
use idiom_core::interval::{
    basic_closure, cng_closure, dvs_closure, is_basic, IntervalSet, Level, SetOperator,
};
use idiom_core::io;
use idiom_core::lattice::{FiniteLattice, Iv};
use idiom_core::nuclei::{all_chi, enumerate_nuclei, quotient};
use idiom_core::suites::{self, Suite, ALL_SUITES};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "idiom", version, about = "computations with finite modular lattices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Print the run report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress the timestamp and zero all durations for byte-identical reruns.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Element cap for exhaustive operations.
    #[arg(long, global = true, default_value_t = 12)]
    max_size: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureKind {
    Basic,
    Cng,
    Dvs,
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorKind {
    Smp,
    Cmp,
    Crt,
    Fll,
    Identity,
}

impl OperatorKind {
    fn to_op(self) -> SetOperator {
        match self {
            OperatorKind::Smp => SetOperator::Smp,
            OperatorKind::Cmp => SetOperator::Cmp,
            OperatorKind::Crt => SetOperator::Crt,
            OperatorKind::Fll => SetOperator::Fll,
            OperatorKind::Identity => SetOperator::Identity,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build and validate a lattice file; optionally export the Hasse diagram.
    Validate {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the modular law.
    Modular {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Check full distributivity and the implication characterization.
    Frame {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// List all intervals.
    Intervals {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Close the file's interval set under the requested level.
    Closures {
        #[arg(value_enum)]
        which: ClosureKind,
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Apply one of the basic-set operators to the file's interval set.
    Operators {
        #[arg(value_enum)]
        which: OperatorKind,
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Enumerate all nuclei; optionally export the nucleus lattice as DOT.
    Nuclei {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Quotient by a nucleus given as a map file.
    Quotient {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        nucleus: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The largest separating nucleus per interval.
    Chi {
        #[arg(long)]
        lattice: PathBuf,
        /// Restrict to one interval, written lo,hi.
        #[arg(long)]
        interval: Option<String>,
    },
    /// The least division set containing each interval.
    Xi {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        interval: Option<String>,
    },
    /// Check the allocation axioms of an interval-valued map file.
    AllocationCheck {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        value_lattice: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Check the aspect axioms of an interval-valued map file.
    AspectCheck {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        value_lattice: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Decompose intervals into independent inert legs (under chi).
    Decompose {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        interval: Option<String>,
    },
    /// Supports of intervals (under chi).
    Support {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        interval: Option<String>,
    },
    /// Gabriel dimension with its filtration trace.
    GabrielDim {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Boyle dimension with its filtration trace.
    BoyleDim {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Division-set filtration under an operator, from the file's set
    /// (default: the trivial division set).
    Filtration {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, value_enum)]
        operator: OperatorKind,
    },
    /// Run a named verification suite over a corpus.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value = "default")]
        corpus: String,
    },
    /// Emit the default corpus manifest, or write it with per-entry files.
    Corpus {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct Verdict {
    check: String,
    pass: bool,
    witness: String,
    millis: u64,
}

#[derive(Serialize)]
struct RunReport {
    schema: u32,
    command: String,
    inputs: Vec<String>,
    verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

struct Output {
    lines: Vec<String>,
    report: RunReport,
}

impl Output {
    fn new(command: &str, inputs: Vec<String>) -> Self {
        Output {
            lines: Vec::new(),
            report: RunReport {
                schema: 1,
                command: command.to_string(),
                inputs,
                verdicts: Vec::new(),
                timestamp: None,
            },
        }
    }

    fn say(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn verdict(&mut self, check: &str, pass: bool, witness: impl Into<String>, millis: u64) {
        self.report.verdicts.push(Verdict {
            check: check.to_string(),
            pass,
            witness: witness.into(),
            millis,
        });
    }

    fn all_pass(&self) -> bool {
        self.report.verdicts.iter().all(|v| v.pass)
    }
}

fn load_lattice(path: &Path) -> Result<(FiniteLattice, Option<IntervalSet>), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    io::parse_lattice(&text)
}

fn parse_interval(l: &FiniteLattice, spec: &str) -> Result<Iv, Error> {
    let (lo, hi) = spec
        .split_once(',')
        .ok_or_else(|| Error::InvalidInput(format!("interval {spec:?} is not of the form lo,hi")))?;
    l.iv(l.el(lo.trim())?, l.el(hi.trim())?)
}

fn intervals_to_report(l: &FiniteLattice, iv: &Option<String>) -> Result<Vec<Iv>, Error> {
    match iv {
        Some(spec) => Ok(vec![parse_interval(l, spec)?]),
        None => Ok(l.intervals().to_vec()),
    }
}

fn level_name(level: Level) -> &'static str {
    match level {
        Level::Raw => "raw",
        Level::Abstract => "abstract",
        Level::Basic => "basic",
        Level::Congruence => "congruence",
        Level::Division => "division",
    }
}

fn set_line(l: &FiniteLattice, s: &IntervalSet) -> String {
    let items: Vec<String> = s
        .iter(l)
        .map(|iv| format!("[{},{}]", l.id(iv.lo), l.id(iv.hi)))
        .collect();
    format!("{{{}}}", items.join(" "))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.cmd {
        Cmd::Validate { lattice, dot } => {
            let mut out = Output::new("validate", vec![lattice.display().to_string()]);
            let (l, set) = load_lattice(lattice)?;
            out.say(format!(
                "{} elements, {} covers, {} intervals; bottom={} top={}",
                l.n(),
                l.covers().len(),
                l.interval_count(),
                l.id(l.bottom()),
                l.id(l.top())
            ));
            if let Some(s) = set {
                out.say(format!("interval payload: {}", set_line(&l, &s)));
            }
            out.verdict("valid-lattice", true, format!("{} elements", l.n()), 0);
            out.verdict("modular", l.is_modular(), "", 0);
            if let Some(path) = dot {
                std::fs::write(path, l.to_dot())
                    .map_err(|e| Error::InvalidInput(format!("cannot write dot: {e}")))?;
                out.say(format!("hasse diagram written to {}", path.display()));
            }
            Ok(out)
        }
        Cmd::Modular { lattice } => {
            let mut out = Output::new("modular", vec![lattice.display().to_string()]);
            let (l, _) = load_lattice(lattice)?;
            let witness = match l.modularity_witness() {
                None => String::new(),
                Some((a, b, c)) => format!(
                    "violated at a={} b={} c={}",
                    l.id(a),
                    l.id(b),
                    l.id(c)
                ),
            };
            out.verdict("modular", l.is_modular(), witness, 0);
            Ok(out)
        }
        Cmd::Frame { lattice } => {
            let mut out = Output::new("frame", vec![lattice.display().to_string()]);
            let (l, _) = load_lattice(lattice)?;
            let frame = l.is_frame();
            let implication = l.implication_table().is_some();
            out.verdict("frame", frame, "full distributivity", 0);
            out.verdict(
                "implication-agrees",
                frame == implication,
                format!("implication exists: {implication}"),
                0,
            );
            Ok(out)
        }
        Cmd::Intervals { lattice } => {
            let mut out = Output::new("intervals", vec![lattice.display().to_string()]);
            let (l, _) = load_lattice(lattice)?;
            for &iv in l.intervals() {
                out.say(format!("[{},{}]", l.id(iv.lo), l.id(iv.hi)));
            }
            out.verdict("intervals", true, format!("{}", l.interval_count()), 0);
            Ok(out)
        }
        Cmd::Closures { which, lattice } => {
            let mut out = Output::new("closures", vec![lattice.display().to_string()]);
            let (l, set) = load_lattice(lattice)?;
            let input = set.unwrap_or_else(|| IntervalSet::empty(&l));
            let (name, result) = match which {
                ClosureKind::Basic => ("basic", basic_closure(&l, &input)),
                ClosureKind::Cng => ("cng", cng_closure(&l, &input)),
                ClosureKind::Dvs => ("dvs", dvs_closure(&l, &input)),
            };
            out.say(set_line(&l, &result));
            let level = result.level(&l);
            out.verdict(
                &format!("{name}-closure"),
                true,
                format!("{} intervals, level {}", result.len(), level_name(level)),
                0,
            );
            let expected = match which {
                ClosureKind::Basic => Level::Basic,
                ClosureKind::Cng => Level::Congruence,
                ClosureKind::Dvs => Level::Division,
            };
            out.verdict("level-reached", level >= expected, level_name(level), 0);
            Ok(out)
        }
        Cmd::Operators { which, lattice } => {
            let mut out = Output::new("operators", vec![lattice.display().to_string()]);
            let (l, set) = load_lattice(lattice)?;
            let input = basic_closure(&l, &set.unwrap_or_else(|| IntervalSet::empty(&l)));
            let result = which.to_op().apply(&l, &input)?;
            out.say(set_line(&l, &result));
            out.verdict(
                "output-basic",
                is_basic(&l, &result),
                format!("{} intervals", result.len()),
                0,
            );
            Ok(out)
        }
        Cmd::Nuclei { lattice, dot } => {
            let mut out = Output::new("nuclei", vec![lattice.display().to_string()]);
            let (l, _) = load_lattice(lattice)?;
            let nl = enumerate_nuclei(&l, cli.max_size)?;
            for i in 0..nl.len() {
                out.say(format!(
                    "n{i:02}: {}",
                    io::emit_element_map(&l, nl.nucleus(i)).replace(['\n', ' '], "")
                ));
            }
            out.verdict("nuclei", true, format!("{}", nl.len()), 0);
            let frame = nl.to_lattice(&l)?;
            out.verdict("frame-law", frame.is_frame(), "full distributivity of the nucleus lattice", 0);
            if let Some(path) = dot {
                std::fs::write(path, frame.to_dot())
                    .map_err(|e| Error::InvalidInput(format!("cannot write dot: {e}")))?;
                out.say(format!("nucleus lattice written to {}", path.display()));
            }
            Ok(out)
        }
        Cmd::Quotient { lattice, nucleus, dot } => {
            let mut out = Output::new(
                "quotient",
                vec![lattice.display().to_string(), nucleus.display().to_string()],
            );
            let (l, _) = load_lattice(lattice)?;
            let text = std::fs::read_to_string(nucleus)
                .map_err(|e| Error::InvalidInput(format!("cannot read map: {e}")))?;
            let j = io::parse_element_map(&l, &text)?;
            let q = quotient(&l, &j)?;
            out.say(io::emit_lattice(&q, None));
            out.verdict("quotient", true, format!("{} fixed elements", q.n()), 0);
            out.verdict("modular-preserved", !l.is_modular() || q.is_modular(), "", 0);
            if let Some(path) = dot {
                std::fs::write(path, q.to_dot())
                    .map_err(|e| Error::InvalidInput(format!("cannot write dot: {e}")))?;
            }
            Ok(out)
        }
        Cmd::Chi { lattice, interval } => {
            let mut out = Output::new("chi", vec![lattice.display().to_string()]);
            let (l, _) = load_lattice(lattice)?;
            let nl = enumerate_nuclei(&l, cli.max_size)?;
            let chi = all_chi(&l, &nl)?;
            for iv in intervals_to_report(&l, interval)? {
                let idx = chi[l.iv_idx(iv)];
                let table: Vec<String> = l
                    .els()
                    .map(|x| format!("{}->{}", l.id(x), l.id(nl.nucleus(idx).apply(x))))
                    .collect();
                out.say(format!(
                    "[{},{}]: n{idx:02} {{{}}}",
                    l.id(iv.lo),
                    l.id(iv.hi),
                    table.join(", ")
                ));
            }
            out.verdict("chi", true, "largest separating nucleus per interval", 0);
            Ok(out)
        }
        Cmd::Xi { lattice, interval } => {
            let mut out = Output::new("xi", vec![lattice.display().to_string()]);
            let (l, _) = load_lattice(lattice)?;
            for iv in intervals_to_report(&l, interval)? {
                let d = xi(&l, iv);
                out.say(format!(
                    "[{},{}]: {}",
                    l.id(iv.lo),
                    l.id(iv.hi),
                    set_line(&l, &d)
                ));
            }
            out.verdict("xi", true, "least division set per interval", 0);
            Ok(out)
        }
        Cmd::AllocationCheck { lattice, value_lattice, map } => {
            let mut out = Output::new(
                "allocation-check",
                vec![
                    lattice.display().to_string(),
                    value_lattice.display().to_string(),
                    map.display().to_string(),
                ],
            );
            let (l, _) = load_lattice(lattice)?;
            let (lambda, _) = load_lattice(value_lattice)?;
            let text = std::fs::read_to_string(map)
                .map_err(|e| Error::InvalidInput(format!("cannot read map: {e}")))?;
            let f = io::parse_interval_map(&l, &lambda, None, &text)?;
            match check_allocation(&l, &lambda, &f) {
                Ok(()) => out.verdict("allocation", true, "", 0),
                Err(e) => out.verdict("allocation", false, e.to_string(), 0),
            }
            Ok(out)
        }
        Cmd::AspectCheck { lattice, value_lattice, map } => {
            let mut out = Output::new(
                "aspect-check",
                vec![
                    lattice.display().to_string(),
                    value_lattice.display().to_string(),
                    map.display().to_string(),
                ],
            );
            let (l, _) = load_lattice(lattice)?;
            let (lambda, _) = load_lattice(value_lattice)?;
            let text = std::fs::read_to_string(map)
                .map_err(|e| Error::InvalidInput(format!("cannot read map: {e}")))?;
            let f = io::parse_interval_map(&l, &lambda, None, &text)?;
            match check_aspect(&l, &lambda, &f) {
                Ok(()) => out.verdict("aspect", true, "", 0),
                Err(e) => out.verdict("aspect", false, e.to_string(), 0),
            }
            Ok(out)
        }
        Cmd::Decompose { lattice, interval } => {
            let mut out = Output::new("decompose", vec![lattice.display().to_string()]);
            let (l, _) = load_lattice(lattice)?;
            let nl = enumerate_nuclei(&l, cli.max_size)?;
            let chi_idx = all_chi(&l, &nl)?;
            let chi = idiom_core::allocation::IntervalValuedMap::from_values(
                chi_idx.iter().map(|&i| idiom_core::lattice::El(i as u16)).collect(),
            );
            let mut all_found = true;
            for iv in intervals_to_report(&l, interval)? {
                if iv.is_trivial() {
                    continue;
                }
                match find_decomposition(&l, &chi, iv)? {
                    Decomposition::Found(family) => {
                        let parts: Vec<String> = family
                            .iter()
                            .map(|(p, x)| format!("\"n{:02}\": \"{}\"", p.0, l.id(*x)))
                            .collect();
                        out.say(format!(
                            "{{\"interval\": [\"{}\", \"{}\"], \"parts\": {{{}}}}}",
                            l.id(iv.lo),
                            l.id(iv.hi),
                            parts.join(", ")
                        ));
                        let legs: Vec<_> = family.values().copied().collect();
                        let join = l.join(l.join_all(legs.iter().copied()), iv.lo);
                        out.say(format!(
                            "  independent over {}: {}; join {} large: {}; legs inert: {}",
                            l.id(iv.lo),
                            l.is_independent_over(iv.lo, &legs).unwrap_or(false),
                            l.id(join),
                            l.is_large(join, iv).unwrap_or(false),
                            family.iter().all(|(&p, &x)| {
                                idiom_core::decomposition::is_p_inertial(
                                    &l,
                                    &chi,
                                    p,
                                    Iv { lo: iv.lo, hi: x },
                                )
                            })
                        ));
                    }
                    other => {
                        all_found = false;
                        out.say(format!(
                            "[{},{}]: {other:?}",
                            l.id(iv.lo),
                            l.id(iv.hi)
                        ));
                    }
                }
            }
            out.verdict("decompositions", all_found, "independent inert legs per interval", 0);
            Ok(out)
        }
        Cmd::Support { lattice, interval } => {
            let mut out = Output::new("support", vec![lattice.display().to_string()]);
            let (l, _) = load_lattice(lattice)?;
            let nl = enumerate_nuclei(&l, cli.max_size)?;
            let chi_idx = all_chi(&l, &nl)?;
            let chi = idiom_core::allocation::IntervalValuedMap::from_values(
                chi_idx.iter().map(|&i| idiom_core::lattice::El(i as u16)).collect(),
            );
            for iv in intervals_to_report(&l, interval)? {
                let sigma = support(&l, &chi, iv);
                let names: Vec<String> = sigma.iter().map(|p| format!("n{:02}", p.0)).collect();
                out.say(format!(
                    "[{},{}]: {{{}}}",
                    l.id(iv.lo),
                    l.id(iv.hi),
                    names.join(", ")
                ));
            }
            out.verdict("support", true, "stable values per interval", 0);
            Ok(out)
        }
        Cmd::GabrielDim { lattice } | Cmd::BoyleDim { lattice } => {
            let gabriel = matches!(cli.cmd, Cmd::GabrielDim { .. });
            let name = if gabriel { "gabriel-dim" } else { "boyle-dim" };
            let mut out = Output::new(name, vec![lattice.display().to_string()]);
            let (l, set) = load_lattice(lattice)?;
            let d = set.unwrap_or_else(|| IntervalSet::trivials(&l));
            let trace = if gabriel {
                gabriel_filtration(&l, &d)?
            } else {
                boyle_filtration(&l, &d)?
            };
            let mut printed = Vec::new();
            for (i, s) in trace.iter().enumerate() {
                if i > 0 && trace[i - 1] == *s {
                    break;
                }
                printed.push(s.clone());
                out.say(format!("{i}: {}", set_line(&l, s)));
            }
            let all = IntervalSet::all(&l);
            match printed.iter().position(|s| *s == all) {
                Some(dim) => out.verdict("dimension", true, format!("{dim}"), 0),
                None => out.verdict("dimension", false, "NoLength", 0),
            }
            Ok(out)
        }
        Cmd::Filtration { lattice, operator } => {
            let mut out = Output::new("filtration", vec![lattice.display().to_string()]);
            let (l, set) = load_lattice(lattice)?;
            let d = set.unwrap_or_else(|| IntervalSet::trivials(&l));
            let trace = kpr_filtration(&l, &d, operator.to_op(), l.interval_count() + 1)?;
            for (i, s) in trace.iter().enumerate() {
                out.say(format!("{i}: {}", set_line(&l, s)));
                if i > 0 && trace[i - 1] == *s {
                    break;
                }
            }
            out.verdict(
                "filtration",
                true,
                format!("operator {}", operator.to_op().name()),
                0,
            );
            Ok(out)
        }
        Cmd::Verify { suite, corpus } => {
            let mut out = Output::new("verify", vec![suite.clone(), corpus.clone()]);
            let entries = if corpus == "default" {
                fixtures::corpus()
            } else {
                let text = std::fs::read_to_string(corpus)
                    .map_err(|e| Error::InvalidInput(format!("cannot read corpus: {e}")))?;
                io::parse_manifest(&text)?
            };
            let selected: Vec<Suite> = if suite == "all" {
                ALL_SUITES.to_vec()
            } else {
                vec![Suite::parse(suite).ok_or_else(|| {
                    Error::InvalidInput(format!("unknown suite {suite:?}"))
                })?]
            };
            let checks = suites::run_suites(&selected, &entries, cli.seed)?;
            for c in checks {
                out.verdict(&c.name, c.pass, c.witness, c.millis);
            }
            Ok(out)
        }
        Cmd::Corpus { out: dir } => {
            let mut out = Output::new("corpus", vec![]);
            let entries = fixtures::corpus();
            let manifest = io::emit_manifest(&entries);
            match dir {
                None => out.say(manifest),
                Some(dir) => {
                    std::fs::create_dir_all(dir)
                        .map_err(|e| Error::InvalidInput(format!("cannot create dir: {e}")))?;
                    std::fs::write(dir.join("manifest.json"), &manifest)
                        .map_err(|e| Error::InvalidInput(format!("cannot write manifest: {e}")))?;
                    for e in &entries {
                        std::fs::write(
                            dir.join(format!("{}.json", e.name)),
                            io::emit_lattice(&e.lattice, None),
                        )
                        .map_err(|e| Error::InvalidInput(format!("cannot write entry: {e}")))?;
                    }
                    out.say(format!(
                        "{} entries written to {}",
                        entries.len(),
                        dir.display()
                    ));
                }
            }
            out.verdict("corpus", true, format!("{} entries", entries.len()), 0);
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut out) => {
            if cli.deterministic {
                for v in &mut out.report.verdicts {
                    v.millis = 0;
                }
            } else {
                out.report.timestamp = Some(
                    std::time::SystemTime::now()
                        .duration_since(std::time::UNIX_EPOCH)
                        .map(|d| d.as_secs())
                        .unwrap_or(0),
                );
            }
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.report).expect("reports serialize")
                );
            } else {
                for line in &out.lines {
                    println!("{line}");
                }
                for v in &out.report.verdicts {
                    let tag = if v.pass { "PASS" } else { "FAIL" };
                    if v.witness.is_empty() {
                        println!("{tag} {}", v.check);
                    } else {
                        println!("{tag} {} — {}", v.check, v.witness);
                    }
                }
            }
            if out.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
