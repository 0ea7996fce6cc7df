//! `edgecode` — store bits on the edges of a complete graph so that the
//! loss of any two (or three, with c3) nodes is recoverable.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 the survivors
//! are inconsistent with every codeword, 3 selftest failure.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use edgecode::graph::{constraint_d, constraint_s, constraint_t};
use edgecode::{
    decode_double, decode_erasures, format, is_codeword, min_distance, parity_check_matrix,
    verify_all_patterns, Code, CodeSpec, Gf2Poly, LabeledGraph, RingPoly, SystematicForm,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

#[derive(Parser)]
#[command(
    name = "edgecode",
    version,
    about = "Erasure codes over complete graphs: any 2 (c2) or 3 (c3) node failures are recoverable"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the parameters and redundancy of a code
    Params {
        /// Number of nodes (prime)
        #[arg(long)]
        n: usize,
        /// Code family: c2 or c3
        #[arg(long)]
        code: String,
    },
    /// Encode an information vector into a graph file
    Encode {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        code: String,
        /// Information bits: a 0/1 string of exactly the code dimension,
        /// or 0x-prefixed hex expanded MSB-first (leftmost bit = bit 0)
        #[arg(long)]
        info: String,
        /// Output graph file
        #[arg(long)]
        out: PathBuf,
    },
    /// Zero out the neighborhoods of failed nodes in a graph file
    Erase {
        /// Input graph file
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Failed nodes, comma separated (e.g. 0,3)
        #[arg(long)]
        fail: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover the neighborhoods of failed nodes from the survivors
    Decode {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Failed nodes, comma separated (e.g. 0,3)
        #[arg(long)]
        fail: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report whether a graph file satisfies every parity constraint
    Check {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Print the parity-check matrix dimensions and rank
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        code: String,
    },
    /// Exhaustively enumerate the minimum distance (small codes only)
    Mindist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        code: String,
        /// Refuse enumeration above this code dimension
        #[arg(long, default_value_t = 20)]
        max_dim: usize,
    },
    /// Run the built-in verification suites
    Selftest {
        /// Node counts to exercise, comma separated
        #[arg(long, default_value = "5,7,11,13")]
        n: String,
        /// Random codewords per failure pattern
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0xEDC0DE)]
        seed: u64,
        /// Deliberately corrupt one surviving label; the run must fail
        #[arg(long)]
        inject_fault: bool,
    },
    /// Time the double decoder across sizes and fit the growth exponent
    Bench {
        /// Node counts to time, comma separated (primes, at least two)
        #[arg(long, default_value = "101,211,401")]
        sizes: String,
        /// Fixed repetitions per measurement (default: calibrated)
        #[arg(long)]
        reps: Option<usize>,
    },
}

enum CliError {
    Usage(String),
    Decode(String),
    Selftest(String),
}

impl CliError {
    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Decode(m) | CliError::Selftest(m) => m,
        }
    }

    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Decode(_) => 2,
            CliError::Selftest(_) => 3,
        }
    }
}

fn lib_err(e: edgecode::Error) -> CliError {
    match e {
        edgecode::Error::Inconsistent(_) | edgecode::Error::Undecodable => {
            CliError::Decode(e.to_string())
        }
        other => CliError::Usage(other.to_string()),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli.cmd) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.code());
    }
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Params { n, code } => cmd_params(spec_of(n, &code)?),
        Cmd::Encode { n, code, info, out } => cmd_encode(spec_of(n, &code)?, &info, &out),
        Cmd::Erase { input, fail, out } => cmd_erase(&input, &fail, &out),
        Cmd::Decode { input, fail, out } => cmd_decode(&input, &fail, &out),
        Cmd::Check { input } => cmd_check(&input),
        Cmd::Rank { n, code } => cmd_rank(spec_of(n, &code)?),
        Cmd::Mindist { n, code, max_dim } => cmd_mindist(spec_of(n, &code)?, max_dim),
        Cmd::Selftest { n, trials, seed, inject_fault } => {
            cmd_selftest(&parse_list(&n, "--n")?, trials, seed, inject_fault)
        }
        Cmd::Bench { sizes, reps } => cmd_bench(&parse_list(&sizes, "--sizes")?, reps),
    }
}

fn spec_of(n: usize, code: &str) -> Result<CodeSpec, CliError> {
    let code: Code = code.parse().map_err(usage)?;
    CodeSpec::new(n, code).map_err(lib_err)
}

fn parse_list(s: &str, flag: &str) -> Result<Vec<usize>, CliError> {
    if s.is_empty() {
        return Err(usage(format!("{flag} must not be empty")));
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| usage(format!("{flag}: {tok:?} is not a node count")))
        })
        .collect()
}

fn read_graph(path: &Path) -> Result<(LabeledGraph, CodeSpec), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    format::parse(&text).map_err(lib_err)
}

fn write_graph(path: &Path, g: &LabeledGraph, spec: &CodeSpec) -> Result<(), CliError> {
    std::fs::write(path, format::emit(g, spec))
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_params(spec: CodeSpec) -> Result<(), CliError> {
    let form = SystematicForm::new(spec);
    let (rank, dim) = (form.rank(), form.dimension());
    let bound = spec.singleton_redundancy();
    println!("n={}", spec.n());
    println!("code={}", spec.code());
    println!("radius={}", spec.radius());
    println!("edges={}", spec.edge_count());
    println!("constraint_rows={}", spec.constraint_rows());
    println!("rank={rank}");
    println!("dimension={dim}");
    println!("singleton_bound={bound}");
    println!("gap={}", rank - bound);
    println!();
    if rank == bound {
        println!(
            "{spec} stores {} edge labels, {dim} of them information; redundancy {rank} meets the {}-failure lower bound exactly.",
            spec.edge_count(),
            spec.radius()
        );
    } else {
        println!(
            "{spec} stores {} edge labels, {dim} of them information; redundancy {rank} sits {} above the {}-failure lower bound {bound}.",
            spec.edge_count(),
            rank - bound,
            spec.radius()
        );
    }
    Ok(())
}

/// Expand `--info` into exactly `k` bits. Accepts a bit string of length
/// `k`, or hex (`0x...`) read MSB-first whose length rounds `k` up to
/// whole nibbles — the excess leading bits must be zero.
fn parse_info(s: &str, k: usize) -> Result<Vec<bool>, CliError> {
    if let Some(hex) = s.strip_prefix("0x") {
        let mut bits = Vec::with_capacity(hex.len() * 4);
        for ch in hex.chars() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| usage(format!("bad hex digit {ch:?} in --info")))?;
            for shift in (0..4).rev() {
                bits.push((v >> shift) & 1 == 1);
            }
        }
        let expected = k.div_ceil(4) * 4;
        if bits.len() != expected {
            return Err(usage(format!(
                "--info has {} bits, expected {expected} ({k} rounded up to nibbles)",
                bits.len()
            )));
        }
        let excess = bits.len() - k;
        if bits[..excess].iter().any(|&b| b) {
            return Err(usage(format!(
                "--info exceeds the {k}-bit dimension: leading padding bits must be zero"
            )));
        }
        Ok(bits[excess..].to_vec())
    } else if !s.is_empty() && s.chars().all(|c| c == '0' || c == '1') {
        if s.len() != k {
            return Err(usage(format!("--info has {} bits, dimension is {k}", s.len())));
        }
        Ok(s.chars().map(|c| c == '1').collect())
    } else {
        Err(usage("--info must be a 0/1 string or 0x-prefixed hex".to_string()))
    }
}

fn cmd_encode(spec: CodeSpec, info: &str, out: &Path) -> Result<(), CliError> {
    let form = SystematicForm::new(spec);
    let bits = parse_info(info, form.dimension())?;
    let g = form.encode(&bits).map_err(lib_err)?;
    write_graph(out, &g, &spec)
}

fn cmd_erase(input: &Path, fail: &str, out: &Path) -> Result<(), CliError> {
    let (g, spec) = read_graph(input)?;
    let failed = parse_list(fail, "--fail")?;
    let eg = g.erase(&failed).map_err(lib_err)?;
    write_graph(out, &eg.zero_filled(), &spec)
}

fn cmd_decode(input: &Path, fail: &str, out: &Path) -> Result<(), CliError> {
    let (g, spec) = read_graph(input)?;
    let failed = parse_list(fail, "--fail")?;
    let eg = g.erase(&failed).map_err(lib_err)?;
    let recovered = if eg.failed().len() <= 2 && spec.n() >= 5 {
        decode_double(&eg, &spec)
    } else {
        decode_erasures(&eg, &spec)
    }
    .map_err(lib_err)?;
    write_graph(out, &recovered, &spec)
}

fn cmd_check(input: &Path) -> Result<(), CliError> {
    let (g, spec) = read_graph(input)?;
    let n = spec.n();
    let mut violations = Vec::new();
    for h in 0..n {
        if g.parity(&constraint_s(n, h)) {
            violations.push(format!("s{h}"));
        }
        if g.parity(&constraint_d(n, h)) {
            violations.push(format!("d{h}"));
        }
        if spec.code() == Code::C3 && g.parity(&constraint_t(n, h)) {
            violations.push(format!("t{h}"));
        }
    }
    println!("n={n}");
    println!("code={}", spec.code());
    println!("codeword={}", if violations.is_empty() { "yes" } else { "no" });
    if !violations.is_empty() {
        println!("violations={}", violations.join(","));
    }
    println!();
    let total = spec.constraint_rows();
    if violations.is_empty() {
        println!("all {total} parity constraints hold.");
    } else {
        println!("{} of {total} parity constraints fail.", violations.len());
    }
    Ok(())
}

fn cmd_rank(spec: CodeSpec) -> Result<(), CliError> {
    let h = parity_check_matrix(&spec);
    let rank = h.rank();
    println!("n={}", spec.n());
    println!("code={}", spec.code());
    println!("rows={}", h.rows());
    println!("cols={}", h.cols());
    println!("rank={rank}");
    println!("dimension={}", spec.edge_count() - rank);
    Ok(())
}

fn cmd_mindist(spec: CodeSpec, max_dim: usize) -> Result<(), CliError> {
    let report = min_distance(&spec, max_dim).map_err(lib_err)?;
    let edges: Vec<String> = report
        .witness
        .nonzero_edges()
        .iter()
        .map(|&(i, j)| format!("({i},{j})"))
        .collect();
    println!("n={}", spec.n());
    println!("code={}", spec.code());
    println!("dimension={}", report.dimension);
    println!("min_distance={}", report.min_distance);
    println!("witness_support={}", edges.len());
    println!("witness_edges={}", edges.join(","));
    println!();
    println!(
        "minimum nonzero graph weight {} over {} codewords; {}-failure correction needs at least {}.",
        report.min_distance,
        (1u64 << report.dimension) - 1,
        spec.radius(),
        spec.radius() + 1
    );
    Ok(())
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
}

impl Tally {
    fn record(&mut self, name: &str, n: usize, ok: bool, detail: &str) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
        let sep = if detail.is_empty() { "" } else { " " };
        println!("check={name} n={n}{sep}{detail} status={}", if ok { "pass" } else { "fail" });
    }
}

fn cmd_selftest(ns: &[usize], trials: usize, seed: u64, inject_fault: bool) -> Result<(), CliError> {
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let mut tally = Tally::default();
    let mut fault_pending = inject_fault;

    for &n in ns {
        let c2 = CodeSpec::new(n, Code::C2).map_err(lib_err)?;

        // Ring structure the decoders lean on.
        let one_plus_x = Gf2Poly::binomial(1);
        let gcds_ok = (1..n).all(|l| {
            let xl1 = Gf2Poly::binomial(l);
            Gf2Poly::gcd(&xl1, &Gf2Poly::binomial(n)) == one_plus_x
                && Gf2Poly::gcd(&xl1, &Gf2Poly::all_ones(n)).degree() == Some(0)
        });
        tally.record("ring_gcd", n, gcds_ok, "");
        let mut binomial_ring = RingPoly::monomial(n, 0);
        binomial_ring += &RingPoly::monomial(n, 1);
        let annihilated = (&RingPoly::all_ones(n) * &binomial_ring).is_zero();
        tally.record("ring_annihilator", n, annihilated, "");

        // Redundancy.
        let rank2 = parity_check_matrix(&c2).rank();
        tally.record("rank_c2", n, rank2 == 2 * n - 1, &format!("rank={rank2}"));
        let c3 = CodeSpec::new(n, Code::C3).ok();
        if let Some(c3) = c3 {
            let rank3 = parity_check_matrix(&c3).rank();
            tally.record(
                "rank_c3",
                n,
                rank3 == 3 * n - 3 || rank3 == 3 * n - 2,
                &format!("rank={rank3}"),
            );
        }

        // Every failure pattern, fresh random codewords each trial.
        for rho in 1..=2 {
            let report = verify_all_patterns(&c2, rho, trials, seed ^ ((n as u64) << 8) ^ rho as u64)
                .map_err(lib_err)?;
            tally.record(
                "patterns_c2",
                n,
                report.passed(),
                &format!("rho={rho} decodes={} mismatches={}", report.decodes, report.mismatches),
            );
        }
        if let Some(c3) = c3 {
            let report =
                verify_all_patterns(&c3, 3, trials, seed ^ ((n as u64) << 8) ^ 3).map_err(lib_err)?;
            tally.record(
                "patterns_c3",
                n,
                report.passed(),
                &format!("rho=3 decodes={} mismatches={}", report.decodes, report.mismatches),
            );
        }

        let form = SystematicForm::new(c2);
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0xE0 ^ n as u64);
        let words: Vec<LabeledGraph> = (0..3).map(|_| form.random_codeword(&mut rng)).collect();

        // The structured decoder and the plain linear solver must agree.
        if n >= 5 {
            let mut agree = true;
            let mut instances = 0;
            for g in &words {
                for a in 0..n {
                    for b in (a + 1)..n {
                        let eg = g.erase(&[a, b]).map_err(lib_err)?;
                        let walk = decode_double(&eg, &c2);
                        let solve = decode_erasures(&eg, &c2);
                        agree &= matches!((&walk, &solve), (Ok(x), Ok(y)) if x == y && x == g);
                        instances += 1;
                    }
                }
            }
            tally.record("decoder_equivalence", n, agree, &format!("instances={instances}"));
        }

        // Relabeling nodes cyclically maps the codebook onto itself.
        let mut shifts_ok = true;
        for g in &words {
            for c in 0..n {
                shifts_ok &= is_codeword(&g.shift_labels(c), &c2).map_err(lib_err)?;
            }
        }
        tally.record("shift_invariance", n, shifts_ok, "");

        if fault_pending && n >= 5 {
            fault_pending = false;
            let mut bad = words[0].clone();
            bad.set(3, 2, !bad.get(3, 2));
            let eg = bad.erase(&[0, 1]).map_err(lib_err)?;
            let silent = matches!(decode_double(&eg, &c2), Ok(d) if d == words[0]);
            tally.record("fault_injection", n, silent, "corrupted=<3,2>");
        }
    }

    if fault_pending {
        return Err(usage("--inject-fault needs at least one n >= 5 in the list"));
    }

    println!();
    println!("checks={} failures={}", tally.checks, tally.failures);
    if tally.failures == 0 {
        println!("selftest: pass");
        Ok(())
    } else {
        println!("selftest: fail");
        Err(CliError::Selftest(format!(
            "{} of {} checks failed",
            tally.failures, tally.checks
        )))
    }
}

/// Minimum batch-average time for one decode of a fixed double failure
/// on the all-zero codeword (the decoder's work does not depend on the
/// label values).
fn ns_per_decode(spec: &CodeSpec, reps: Option<usize>) -> Result<(f64, usize), CliError> {
    let g = LabeledGraph::zeros(spec.n());
    let eg = g.erase(&[1, spec.n() / 2]).map_err(lib_err)?;
    for _ in 0..3 {
        decode_double(&eg, spec).map_err(lib_err)?;
    }
    let reps = reps.unwrap_or_else(|| {
        let probe = Instant::now();
        std::hint::black_box(decode_double(&eg, spec)).ok();
        let once = probe.elapsed().as_secs_f64().max(1e-7);
        ((0.02 / once).ceil() as usize).clamp(4, 4096)
    });
    let mut best = f64::INFINITY;
    for _ in 0..5 {
        let t = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(decode_double(std::hint::black_box(&eg), spec))
                .map_err(lib_err)?;
        }
        best = best.min(t.elapsed().as_secs_f64() / reps as f64);
    }
    Ok((best * 1e9, reps))
}

fn cmd_bench(sizes: &[usize], reps: Option<usize>) -> Result<(), CliError> {
    if sizes.len() < 2 {
        return Err(usage("--sizes needs at least two node counts to fit a slope"));
    }
    let mut points = Vec::new();
    for &n in sizes {
        let spec = CodeSpec::new(n, Code::C2).map_err(lib_err)?;
        if n < 5 {
            return Err(usage(format!("--sizes: the double decoder needs n >= 5, got {n}")));
        }
        let (ns, used) = ns_per_decode(&spec, reps)?;
        println!("n={n} reps={used} ns_per_decode={}", ns.round() as u64);
        points.push(((n as f64).ln(), ns.ln()));
    }
    let xbar = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
    let ybar = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
    let slope = points.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum::<f64>()
        / points.iter().map(|p| (p.0 - xbar).powi(2)).sum::<f64>();
    println!("slope={slope:.2}");
    println!();
    println!("decode time grows as ~n^{slope:.2} across {} sizes.", sizes.len());
    Ok(())
}
