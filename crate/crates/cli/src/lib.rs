//! The `crareach` command line.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the
//! exit code together with everything meant for stdout and stderr, so the
//! binary itself is a thin wrapper and the whole surface can be tested
//! in-process.

use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use crareach::chain::ChainOutcome;
use crareach::oracle::{self, enumerate_reachable, witness_word};
use crareach::sweep::{sweep_exhaustive, sweep_sampled, SweepOptions, SweepSummary};
use crareach::{
    classify, compute_chain, corpus, decide_with, difference_set, parse_dfa, serialize_dfa,
    standardize, synthesize_witness_constructive, BinaryDfa, ChainConfig, DecideOptions, Error,
    Shape, StateSet,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_REACHABLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "crareach",
    version,
    about = "Decide and explain complete reachability of binary automata",
    propagate_version = true
)]
pub struct Cli {
    /// Print witness words and search statistics where available.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    /// Worker threads (selftest defaults to all cores, everything else to 1).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ChainCaps {
    /// Give up after this many chain levels.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_k: u64,
    /// Largest number of word summaries visited per level.
    #[arg(long, default_value_t = 50_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub pair_cap: u64,
}

impl ChainCaps {
    fn config(&self) -> ChainConfig {
        ChainConfig {
            max_k: self.max_k as usize,
            pair_cap: self.pair_cap as usize,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Constructive,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the verdict for an automaton.
    Decide {
        /// BDF file, or `-` for stdin.
        file: PathBuf,
        /// Try every divisor of n instead of only those of gcd(n, 0·a).
        #[arg(long)]
        no_remark9: bool,
        /// Also compute the subgroup chain and print it as a certificate.
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        caps: ChainCaps,
    },
    /// Standardized form, difference set, subgroup H_1 and Rystsov graph.
    Analyze {
        file: PathBuf,
        /// Write the Rystsov graph in DOT syntax to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compute the subgroup chain level by level.
    Chain {
        file: PathBuf,
        #[command(flatten)]
        caps: ChainCaps,
    },
    /// Brute-force search over all subsets.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_STATE_LIMIT as u64,
              value_parser = clap::value_parser!(u64).range(1..=oracle::MAX_ORACLE_STATES as u64))]
        limit_states: u64,
    },
    /// Find a word whose image is the given subset.
    Witness {
        file: PathBuf,
        /// Comma-separated target states, e.g. `1,5,7`.
        #[arg(long)]
        target: String,
        /// Defaults to `oracle` for n <= 22 and `constructive` above.
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[command(flatten)]
        caps: ChainCaps,
    },
    /// Rewrite an automaton into standardized form.
    Standardize {
        file: PathBuf,
        /// Write the BDF here and print the relabeling table on stdout.
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Emit a preset or a random standardized automaton.
    Gen {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        preset: Option<String>,
        #[arg(long, requires = "n")]
        random: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Cross-check decider, chain and oracle over many automata.
    Selftest {
        /// Inclusive range of state counts, e.g. `3..8`.
        #[arg(long, default_value = "3..8", value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
        /// Random samples per n; without it every standardized automaton is checked.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the subgroup chain (useful for large n).
        #[arg(long)]
        no_chain: bool,
        #[command(flatten)]
        caps: ChainCaps,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|e| format!("`{a}`: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("`{b}`: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    out: String,
    code: i32,
}

impl Report {
    fn ok(out: String) -> Self {
        Report { out, code: EXIT_OK }
    }

    fn verdict(out: String, reachable: bool) -> Self {
        let code = if reachable {
            EXIT_OK
        } else {
            EXIT_NOT_REACHABLE
        };
        Report { out, code }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        e if e.is_resource_limit() => EXIT_RESOURCE,
        Error::NotCompletelyReachable | Error::Unreachable(_) => EXIT_NOT_REACHABLE,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let default_jobs = match cli.command {
        Command::Selftest { .. } => 0,
        _ => 1,
    };
    let jobs = cli.jobs.map_or(default_jobs, |j| j as usize);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                code: EXIT_INTERNAL,
                stdout: String::new(),
                stderr: format!("error: cannot start worker threads: {e}\n"),
            }
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(r) => Outcome {
            code: r.code,
            stdout: r.out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cli: &Cli) -> crareach::Result<Report> {
    match &cli.command {
        Command::Decide {
            file,
            no_remark9,
            certify,
            caps,
        } => cmd_decide(&load(file)?, !no_remark9, certify.then(|| caps.config())),
        Command::Analyze { file, dot } => cmd_analyze(&load(file)?, dot.as_deref(), cli.verbose),
        Command::Chain { file, caps } => cmd_chain(&load(file)?, &caps.config(), cli.verbose),
        Command::Oracle { file, limit_states } => cmd_oracle(&load(file)?, *limit_states as usize),
        Command::Witness {
            file,
            target,
            method,
            caps,
        } => cmd_witness(&load(file)?, target, *method, &caps.config()),
        Command::Standardize { file, o } => cmd_standardize(&load(file)?, o.as_deref()),
        Command::Gen {
            preset,
            random,
            n,
            seed,
            o,
        } => {
            let dfa = match preset {
                Some(name) => corpus::preset(name)?.dfa,
                None => {
                    debug_assert!(*random);
                    let n = n.ok_or_else(|| Error::InvalidArgument("--random needs --n".into()))?;
                    corpus::random_standardized(n, *seed)?.dfa().clone()
                }
            };
            write_or_print(&serialize_dfa(&dfa), o.as_deref())
        }
        Command::Selftest {
            n_range,
            samples,
            seed,
            no_chain,
            caps,
        } => {
            let opts = SelftestOptions {
                samples: *samples,
                seed: *seed,
                chain: (!no_chain).then(|| caps.config()),
            };
            cmd_selftest(n_range.clone(), &opts)
        }
    }
}

fn load(path: &Path) -> crareach::Result<BinaryDfa> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?
    };
    parse_dfa(&text)
}

fn write_or_print(text: &str, path: Option<&Path>) -> crareach::Result<Report> {
    match path {
        Some(p) => {
            fs::write(p, text)?;
            Ok(Report::ok(String::new()))
        }
        None => Ok(Report::ok(text.to_string())),
    }
}

fn cmd_decide(
    dfa: &BinaryDfa,
    remark9: bool,
    certify: Option<ChainConfig>,
) -> crareach::Result<Report> {
    let v = decide_with(dfa, &DecideOptions { remark9, certify })?;
    let mut out = format!("{v}\n");
    if let Some(chain) = &v.chain {
        write_chain(&mut out, chain, false);
        if chain.completely_reachable() != v.completely_reachable {
            return Err(Error::Internal(
                "chain certificate contradicts the verdict".into(),
            ));
        }
    }
    Ok(Report::verdict(out, v.completely_reachable))
}

fn cmd_analyze(dfa: &BinaryDfa, dot: Option<&Path>, verbose: bool) -> crareach::Result<Report> {
    let mut out = String::new();
    let class = classify(dfa);
    writeln!(out, "n = {}", dfa.n()).unwrap();
    writeln!(out, "shape: {}", class.verdict).unwrap();
    if class.verdict != Shape::Standardizable {
        writeln!(out, "detail: {}", class.detail).unwrap();
        let v = crareach::decide(dfa);
        writeln!(out, "verdict: {v}").unwrap();
        return Ok(Report::verdict(out, v.completely_reachable));
    }
    let sdfa = standardize(dfa)?;
    let identity = sdfa.relabeling().iter().enumerate().all(|(i, &j)| i == j);
    if !identity || sdfa.letters_swapped() || sdfa.shift() != 0 {
        out.push_str("states below use standardized names (see `standardize`)\n");
    }
    let ana = difference_set(&sdfa);
    writeln!(out, "r = {}", sdfa.r()).unwrap();
    writeln!(out, "dupl(a) = {}", sdfa.dupl_a()).unwrap();
    writeln!(out, "D_1 = {}", ana.d1).unwrap();
    writeln!(out, "H_1 = <{}>", ana.h1_gen).unwrap();
    let yes_no = if ana.strongly_connected { "yes" } else { "no" };
    writeln!(out, "strongly connected: {yes_no}").unwrap();
    writeln!(out, "SCCs: {}", ana.scc_count).unwrap();
    if ana.scc_count <= 16 {
        for (t, scc) in ana.sccs().iter().enumerate() {
            writeln!(out, "  {t} + <{}> = {scc}", ana.h1_gen).unwrap();
        }
    }
    if verbose {
        for (d, w) in ana.d1_witnesses() {
            writeln!(out, "  witness for {d}: {w}").unwrap();
        }
    }
    if let Some(path) = dot {
        crareach::export_dot(&ana, path)?;
        writeln!(out, "wrote {}", path.display()).unwrap();
    }
    let v = crareach::decider::decide_standardized(&sdfa, &DecideOptions::default())?;
    writeln!(out, "verdict: {v}").unwrap();
    Ok(Report::verdict(out, v.completely_reachable))
}

fn write_chain(out: &mut String, chain: &crareach::ChainResult, verbose: bool) {
    for level in &chain.levels {
        writeln!(out, "k={} D_k={} H_k={}", level.k, level.dk, level.hk_gen).unwrap();
        if verbose {
            writeln!(out, "  search nodes: {}", level.pairs_visited).unwrap();
            for (p, w) in &level.witnesses {
                writeln!(out, "  witness for {p}: {w}").unwrap();
            }
        }
    }
    let (l, name) = match chain.outcome {
        ChainOutcome::ReachedFullGroup(l) => (l, "ReachedFullGroup"),
        ChainOutcome::Stabilized(l) => (l, "Stabilized"),
    };
    writeln!(
        out,
        "H_{l} = <{}>; outcome: {name}({l})",
        chain.generator(l)
    )
    .unwrap();
}

fn cmd_chain(dfa: &BinaryDfa, cfg: &ChainConfig, verbose: bool) -> crareach::Result<Report> {
    let sdfa = standardize(dfa)?;
    let chain = compute_chain(&sdfa, cfg)?;
    let mut out = String::new();
    write_chain(&mut out, &chain, verbose);
    Ok(Report::verdict(out, chain.completely_reachable()))
}

fn cmd_oracle(dfa: &BinaryDfa, limit: usize) -> crareach::Result<Report> {
    let rep = enumerate_reachable(dfa, limit)?;
    let total = (1u64 << rep.n) - 1;
    let mut out = format!("reachable subsets: {} of {}\n", rep.reachable_count, total);
    if rep.complete {
        out.push_str("COMPLETELY_REACHABLE\n");
    } else {
        out.push_str("NOT_COMPLETELY_REACHABLE\n");
        for s in &rep.unreachable_sample {
            writeln!(out, "unreachable: {s}").unwrap();
        }
    }
    Ok(Report::verdict(out, rep.complete))
}

fn parse_target(spec: &str, n: usize) -> crareach::Result<StateSet> {
    let mut set = StateSet::empty(n);
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let q: usize = tok
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad state `{tok}` in --target")))?;
        if q >= n {
            return Err(Error::InvalidArgument(format!(
                "state {q} out of range for {n} states"
            )));
        }
        set.insert(q);
    }
    if set.is_empty() {
        return Err(Error::InvalidArgument("--target is empty".into()));
    }
    Ok(set)
}

fn cmd_witness(
    dfa: &BinaryDfa,
    target: &str,
    method: Option<Method>,
    cfg: &ChainConfig,
) -> crareach::Result<Report> {
    let target = parse_target(target, dfa.n())?;
    let method = method.unwrap_or(if dfa.n() <= oracle::DEFAULT_STATE_LIMIT {
        Method::Oracle
    } else {
        Method::Constructive
    });
    let word = match method {
        Method::Oracle => witness_word(
            &enumerate_reachable(dfa, oracle::DEFAULT_STATE_LIMIT)?,
            &target,
        )?,
        Method::Constructive => {
            let sdfa = standardize(dfa)?;
            let chain = compute_chain(&sdfa, cfg)?;
            let w = synthesize_witness_constructive(&sdfa, &chain, &sdfa.to_standard_set(&target))?;
            sdfa.to_original_word(&w)
        }
    };
    if dfa.image(&word) != target {
        return Err(Error::Internal(format!(
            "witness {word} does not replay to {target}"
        )));
    }
    Ok(Report::ok(format!("{word}\nlength: {}\n", word.len())))
}

fn cmd_standardize(dfa: &BinaryDfa, o: Option<&Path>) -> crareach::Result<Report> {
    let sdfa = standardize(dfa)?;
    let mut meta = String::new();
    writeln!(meta, "r = {}", sdfa.r()).unwrap();
    writeln!(meta, "dupl(a) = {}", sdfa.dupl_a()).unwrap();
    if sdfa.letters_swapped() {
        meta.push_str("letters swapped\n");
    }
    let (cyc, def) = if sdfa.letters_swapped() {
        ('a', 'b')
    } else {
        ('b', 'a')
    };
    writeln!(
        meta,
        "a = {cyc}^{} {def} in the input's letters",
        sdfa.shift()
    )
    .unwrap();
    meta.push_str("new old\n");
    for new in 0..sdfa.n() {
        writeln!(meta, "{new} {}", sdfa.to_original_state(new)).unwrap();
    }
    let bdf = serialize_dfa(sdfa.dfa());
    match o {
        Some(path) => {
            fs::write(path, bdf)?;
            Ok(Report::ok(meta))
        }
        None => {
            let mut out = bdf;
            for line in meta.lines() {
                writeln!(out, "# {line}").unwrap();
            }
            Ok(Report::ok(out))
        }
    }
}

struct SelftestOptions {
    samples: Option<usize>,
    seed: u64,
    chain: Option<ChainConfig>,
}

fn cmd_selftest(range: RangeInclusive<usize>, opts: &SelftestOptions) -> crareach::Result<Report> {
    let mut out = format!(
        "{:>4} {:>10} {:>22} {:>14}\n",
        "n", "automata", "completely_reachable", "disagreements"
    );
    let mut bad: Vec<SweepSummary> = Vec::new();
    for n in range {
        let sweep_opts = SweepOptions {
            chain: opts.chain,
            oracle: n <= oracle::DEFAULT_STATE_LIMIT,
            oracle_limit: oracle::DEFAULT_STATE_LIMIT,
        };
        let s = match opts.samples {
            Some(k) => sweep_sampled(n, k, opts.seed, &sweep_opts)?,
            None => sweep_exhaustive(n, &sweep_opts)?,
        };
        writeln!(
            out,
            "{:>4} {:>10} {:>22} {:>14}",
            s.n, s.automata, s.completely_reachable, s.disagreements
        )
        .unwrap();
        if s.disagreements > 0 {
            bad.push(s);
        }
    }
    for s in &bad {
        if let Some(row) = &s.first_disagreement {
            writeln!(out, "first disagreement at n={}: a = {row:?}", s.n).unwrap();
        }
    }
    let code = if bad.is_empty() {
        EXIT_OK
    } else {
        EXIT_NOT_REACHABLE
    };
    Ok(Report { out, code })
}
