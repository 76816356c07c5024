//! Command-line front end for the `thue` binary.
//!
//! Exit status: 0 on success, 1 when a verification fails (the first
//! counterexample goes to stdout), 2 on usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::dirichlet::{
    dirichlet_eval_detailed, dirichlet_zero_scan, ComplexValue, ContinuationParams, GridPoint,
    ScanOptions,
};
use crate::analysis::primes::prime_digit_stats;
use crate::analysis::products::{
    flajolet_martin_phi, product_eval_with_depth, ProductKind, DEFAULT_DEPTH,
};
use crate::bfile::{self, BFile, CompareReport};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::repetition::{
    find_cube, find_overlap, find_square, ternary_squarefree, Repetition, MAX_SCAN_LEN,
    SLOW_SCAN_LEN,
};
use crate::sequence::{period_doubling, tm_bit, tm_sign, ThueMorse};
use crate::series::{
    coefficient_formula_mismatch, lacunary_product, star_check, tm_series, value_set_violation,
};
use crate::shevelev::{
    class_sets, first_members, halving_mismatch, verify_range, verify_theorem, ClassKind,
    DEFAULT_SCAN_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "thue", version, about = "Thue-Morse sequence experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a prefix of a sequence.
    Seq(SeqArgs),
    #[command(subcommand)]
    Shevelev(ShevelevCmd),
    #[command(subcommand)]
    Series(SeriesCmd),
    #[command(subcommand)]
    Products(ProductsCmd),
    #[command(subcommand)]
    Dirichlet(DirichletCmd),
    /// Search a word for a square, cube or overlap.
    Repetition(RepetitionArgs),
    #[command(subcommand)]
    Primes(PrimesCmd),
    #[command(subcommand)]
    Oeis(OeisCmd),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeqKind {
    /// t(n), digit-sum parity
    Tm,
    /// u(n) = (-1)^t(n)
    U,
    /// period-doubling z(n) = u(n) u(n+1)
    Pd,
    /// counts of 1s between consecutive 0s of t
    Ternary,
    /// fixed point of --morphism at --seed
    Fixed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeqFormat {
    /// symbols run together; for +-1 sequences 0 is +1 and 1 is -1
    Bits,
    /// + and -
    Signs,
    /// space separated integers
    Values,
}

#[derive(Debug, Args)]
struct SeqArgs {
    #[arg(value_enum)]
    kind: SeqKind,
    #[arg(long, default_value_t = 32)]
    count: usize,
    #[arg(long, value_enum, default_value_t = SeqFormat::Values)]
    format: SeqFormat,
    /// Rules such as "0->01,1->10" (for `fixed`).
    #[arg(long)]
    morphism: Option<String>,
    #[arg(long)]
    seed: Option<char>,
}

#[derive(Debug, Subcommand)]
enum ShevelevCmd {
    /// Check the period and sign structure of gamma_a and beta_a.
    Verify {
        #[arg(long, default_value_t = 1)]
        a_min: u64,
        #[arg(long)]
        a_max: u64,
        /// Window length in expected periods.
        #[arg(long, default_value_t = 16)]
        periods: usize,
    },
    /// List the members of B_a and C_a below a bound.
    Sets {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Check C_2a = 2 C_a u (2 C_a + 1) below a bound.
    Halving {
        #[arg(long)]
        a: u64,
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
}

#[derive(Debug, Subcommand)]
enum SeriesCmd {
    /// Check the generating-series identities for one shift.
    Check {
        #[arg(long)]
        a: u64,
        #[arg(long, default_value_t = 4096)]
        degree: usize,
    },
}

#[derive(Debug, Subcommand)]
enum ProductsCmd {
    Eval {
        #[arg(long)]
        which: ProductKind,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// The Flajolet-Martin constant.
    Phi {
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
struct ContinuationArgs {
    #[arg(long, default_value_t = 2.0)]
    threshold: f64,
    #[arg(long, default_value_t = 1_000_000)]
    direct_terms: u64,
    #[arg(long, default_value_t = 80)]
    j_truncation: usize,
    #[arg(long, default_value_t = 1e-11)]
    accuracy: f64,
}

impl ContinuationArgs {
    fn params(&self) -> ContinuationParams {
        ContinuationParams {
            direct_threshold: self.threshold,
            direct_terms: self.direct_terms,
            j_truncation: self.j_truncation,
            max_j_truncation: ContinuationParams::default()
                .max_j_truncation
                .max(self.j_truncation),
            target_accuracy: self.accuracy,
            ..ContinuationParams::default()
        }
    }
}

#[derive(Debug, Subcommand)]
enum DirichletCmd {
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        re: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        im: f64,
        #[command(flatten)]
        cont: ContinuationArgs,
    },
    /// Grid scan for zeros; candidates go to stdout and to --out as CSV.
    Zeros {
        #[arg(long, allow_negative_numbers = true)]
        re_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        re_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        im_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        im_max: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, default_value_t = 1e-6)]
        refine_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write every grid value.
        #[arg(long)]
        grid_out: Option<PathBuf>,
        #[command(flatten)]
        cont: ContinuationArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RepetitionKind {
    Square,
    Cube,
    Overlap,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WordSource {
    Tm,
    Pd,
    Ternary,
}

#[derive(Debug, Args)]
struct RepetitionArgs {
    #[arg(value_enum)]
    kind: RepetitionKind,
    /// Literal word; any characters.
    #[arg(long, conflicts_with = "source")]
    word: Option<String>,
    #[arg(long, value_enum)]
    source: Option<WordSource>,
    #[arg(long, default_value_t = 1024)]
    len: usize,
}

#[derive(Debug, Subcommand)]
enum PrimesCmd {
    /// Histogram of prime digit sums modulo `mod`.
    Parity {
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
        #[arg(long, default_value_t = 2)]
        base: u64,
        #[arg(long = "mod", default_value_t = 2)]
        modulus: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SetKind {
    B,
    C,
}

impl From<SetKind> for ClassKind {
    fn from(k: SetKind) -> Self {
        match k {
            SetKind::B => ClassKind::B,
            SetKind::C => ClassKind::C,
        }
    }
}

#[derive(Debug, Subcommand)]
enum OeisCmd {
    /// Compare a local b-file with generated class-set members.
    Compare {
        #[arg(long)]
        id: Option<String>,
        /// Defaults to the b-file for --id in the b-file directory.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        a: u64,
        #[arg(long, value_enum, default_value_t = SetKind::C)]
        set: SetKind,
        /// Index of the first generated member.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        offset: i64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// Write class-set members, or a +-1 sequence, as a b-file.
    Export {
        #[arg(long, conflicts_with = "seq")]
        a: Option<u64>,
        #[arg(long, value_enum, default_value_t = SetKind::C)]
        set: SetKind,
        #[arg(long, value_enum)]
        seq: Option<SeqKind>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, allow_negative_numbers = true)]
        offset: Option<i64>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut out = String::new();
    let status = dispatch(cli.command, &mut out);
    print!("{out}");
    let _ = std::io::stdout().flush();
    match status {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Like [`run`] but collects stdout instead of printing it.
pub fn run_captured<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(code) => (code, out),
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            (EXIT_USAGE, out)
        }
    }
}

/// 15 significant digits, plain decimal where that stays readable.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..15).contains(&e) {
        format!("{:.*}", (14 - e) as usize, x)
    } else {
        format!("{x:.14e}")
    }
}

fn dispatch(cmd: Command, out: &mut String) -> Result<i32> {
    match cmd {
        Command::Seq(args) => cmd_seq(args, out),
        Command::Shevelev(c) => cmd_shevelev(c, out),
        Command::Series(SeriesCmd::Check { a, degree }) => cmd_series(a, degree, out),
        Command::Products(c) => cmd_products(c, out),
        Command::Dirichlet(c) => cmd_dirichlet(c, out),
        Command::Repetition(args) => cmd_repetition(args, out),
        Command::Primes(PrimesCmd::Parity {
            bound,
            base,
            modulus,
        }) => {
            let h = prime_digit_stats(bound, base, modulus)?;
            for (r, (c, f)) in h.counts.iter().zip(h.frequencies()).enumerate() {
                let _ = writeln!(out, "residue={r} count={c} frequency={}", fmt_sig(f));
            }
            let _ = writeln!(
                out,
                "total={} max_relative_deviation={}",
                h.total,
                fmt_sig(h.max_relative_deviation())
            );
            Ok(EXIT_OK)
        }
        Command::Oeis(c) => cmd_oeis(c, out),
    }
}

/// Integer values of a sequence prefix, and whether it is a +-1 sequence.
fn seq_values(args: &SeqArgs) -> Result<(Vec<i64>, bool)> {
    let n = args.count as u64;
    Ok(match args.kind {
        SeqKind::Tm => ((0..n).map(|i| tm_bit(i) as i64).collect(), false),
        SeqKind::U => ((0..n).map(|i| tm_sign(i).to_i64()).collect(), true),
        SeqKind::Pd => ((0..n).map(|i| period_doubling(i).to_i64()).collect(), true),
        SeqKind::Ternary => (
            ternary_squarefree(args.count)
                .into_iter()
                .map(i64::from)
                .collect(),
            false,
        ),
        SeqKind::Fixed => {
            return Err(Error::invalid("fixed points are printed as letters"));
        }
    })
}

fn cmd_seq(args: SeqArgs, out: &mut String) -> Result<i32> {
    if let SeqKind::Fixed = args.kind {
        let literal = args
            .morphism
            .as_deref()
            .ok_or_else(|| Error::invalid("`seq fixed` needs --morphism"))?;
        let m = Morphism::parse(literal)?;
        let seed = match args.seed {
            Some(c) => m
                .alphabet()
                .index_of(c)
                .ok_or_else(|| Error::invalid(format!("seed '{c}' is not in the alphabet")))?,
            None => 0,
        };
        let word = m.fixed_point_prefix(seed, args.count)?;
        let _ = writeln!(out, "{}", m.alphabet().render(&word));
        return Ok(EXIT_OK);
    }
    let (values, signed) = seq_values(&args)?;
    let line = match args.format {
        SeqFormat::Bits => values
            .iter()
            .map(|&v| {
                if signed {
                    if v == 1 {
                        '0'
                    } else {
                        '1'
                    }
                } else {
                    digit(v)
                }
            })
            .collect::<String>(),
        SeqFormat::Signs => {
            if !signed {
                return Err(Error::invalid("--format signs needs a +-1 sequence"));
            }
            values
                .iter()
                .map(|&v| if v == 1 { '+' } else { '-' })
                .collect()
        }
        SeqFormat::Values => values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    };
    let _ = writeln!(out, "{line}");
    Ok(EXIT_OK)
}

fn digit(v: i64) -> char {
    char::from_digit(v as u32, 36).unwrap_or('?')
}

fn join(xs: &[u64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_shevelev(cmd: ShevelevCmd, out: &mut String) -> Result<i32> {
    match cmd {
        ShevelevCmd::Verify {
            a_min,
            a_max,
            periods,
        } => {
            if a_min == 0 || a_min > a_max {
                return Err(Error::invalid("need 1 <= a-min <= a-max"));
            }
            if periods < 4 {
                return Err(Error::invalid("need at least 4 periods"));
            }
            let reports = if a_min == 1 {
                verify_range(a_max, periods)?
            } else {
                (a_min..=a_max)
                    .map(|a| verify_theorem(a, periods << (a.trailing_zeros() + 1)))
                    .collect::<Result<Vec<_>>>()?
            };
            let mut failed = false;
            for r in &reports {
                let observed = r
                    .observed_smallest_period
                    .map_or("short".to_string(), |p| p.to_string());
                let verdict = if r.holds() { "ok" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "a={} v={} period={} observed={} terms={} {verdict}",
                    r.a, r.valuation, r.expected_period, observed, r.window_lengths.1
                );
                if !r.holds() && !failed {
                    failed = true;
                    match r.first_counterexample {
                        Some(n) => {
                            let _ = writeln!(out, "counterexample a={} n={n}", r.a);
                        }
                        None => {
                            let _ = writeln!(
                                out,
                                "counterexample a={} smallest period {observed}",
                                r.a
                            );
                        }
                    }
                }
            }
            Ok(if failed { EXIT_FAILED } else { EXIT_OK })
        }
        ShevelevCmd::Sets { a, bound } => {
            let sets = class_sets(a, bound, &ThueMorse)?;
            let _ = writeln!(out, "B {}", join(&sets.b_members));
            let _ = writeln!(out, "C {}", join(&sets.c_members));
            Ok(EXIT_OK)
        }
        ShevelevCmd::Halving { a, bound } => match halving_mismatch(a, bound)? {
            None => {
                let _ = writeln!(out, "halving a={a} bound={bound} pass");
                Ok(EXIT_OK)
            }
            Some(n) => {
                let _ = writeln!(out, "halving a={a} bound={bound} fail");
                let _ = writeln!(out, "counterexample n={n}");
                Ok(EXIT_FAILED)
            }
        },
    }
}

fn report_line(out: &mut String, name: &str, mismatch: Option<usize>) -> bool {
    match mismatch {
        None => {
            let _ = writeln!(out, "{name} pass");
            true
        }
        Some(k) => {
            let _ = writeln!(out, "{name} fail at coefficient {k}");
            false
        }
    }
}

fn cmd_series(a: u64, degree: usize, out: &mut String) -> Result<i32> {
    let star = star_check(a, degree)?;
    let mut ok = report_line(out, "star", star.identity_mismatch);
    ok &= report_line(out, "decimation", star.decimation_mismatch);
    ok &= report_line(
        out,
        "lacunary",
        tm_series(degree).first_difference(&lacunary_product(degree)),
    );
    if a % 2 == 1 && degree >= a as usize {
        ok &= report_line(
            out,
            "coefficients",
            coefficient_formula_mismatch(a, degree)?,
        );
        ok &= report_line(out, "values", value_set_violation(a, degree)?);
    } else {
        let _ = writeln!(out, "coefficients skipped (needs odd a <= degree)");
        let _ = writeln!(out, "values skipped (needs odd a <= degree)");
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_products(cmd: ProductsCmd, out: &mut String) -> Result<i32> {
    let (name, res) = match cmd {
        ProductsCmd::Eval { which, tol, depth } => (
            which.to_string(),
            product_eval_with_depth(which, tol, depth)?,
        ),
        ProductsCmd::Phi { tol } => ("phi".to_string(), flajolet_martin_phi(tol)?),
    };
    let _ = writeln!(
        out,
        "{name} value={} error_estimate={} terms={}",
        fmt_sig(res.value),
        fmt_sig(res.error_estimate),
        res.terms_used
    );
    Ok(EXIT_OK)
}

fn csv(points: &[GridPoint]) -> String {
    let mut s = String::from("re,im,abs\n");
    for p in points {
        let _ = writeln!(s, "{},{},{}", fmt_sig(p.re), fmt_sig(p.im), fmt_sig(p.abs));
    }
    s
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn cmd_dirichlet(cmd: DirichletCmd, out: &mut String) -> Result<i32> {
    match cmd {
        DirichletCmd::Eval { re, im, cont } => {
            let v = dirichlet_eval_detailed(ComplexValue::new(re, im), &cont.params())?;
            let _ = writeln!(
                out,
                "re={} im={} abs={} error_estimate={}",
                fmt_sig(v.value.re),
                fmt_sig(v.value.im),
                fmt_sig(v.value.norm()),
                fmt_sig(v.error_estimate())
            );
        }
        DirichletCmd::Zeros {
            re_min,
            re_max,
            im_min,
            im_max,
            step,
            refine_tol,
            out: csv_out,
            grid_out,
            cont,
        } => {
            let options = ScanOptions {
                params: cont.params(),
                ..ScanOptions::default()
            };
            let scan = dirichlet_zero_scan(
                (re_min, re_max),
                (im_min, im_max),
                step,
                refine_tol,
                &options,
            )?;
            let text = csv(&scan.candidates);
            out.push_str(&text);
            if let Some(path) = csv_out {
                write_file(&path, &text)?;
            }
            if let Some(path) = grid_out {
                write_file(&path, &csv(&scan.grid))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn describe(
    r: Option<Repetition>,
    len: impl Fn(Repetition) -> usize,
    render: impl Fn(usize, usize) -> String,
) -> String {
    match r {
        None => "none".to_string(),
        Some(r) => format!(
            "position={} period={} factor={}",
            r.position,
            r.period,
            render(r.position, r.position + len(r))
        ),
    }
}

fn cmd_repetition(args: RepetitionArgs, out: &mut String) -> Result<i32> {
    let word: Vec<char> = match (&args.word, args.source) {
        (Some(w), _) => w.chars().collect(),
        (None, Some(src)) => {
            let n = args.len as u64;
            if args.len > MAX_SCAN_LEN {
                return Err(Error::invalid(format!(
                    "length {} exceeds the limit {MAX_SCAN_LEN}",
                    args.len
                )));
            }
            match src {
                WordSource::Tm => (0..n).map(|i| digit(tm_bit(i) as i64)).collect(),
                WordSource::Pd => (0..n).map(|i| period_doubling(i).symbol()).collect(),
                WordSource::Ternary => ternary_squarefree(args.len)
                    .into_iter()
                    .map(|d| digit(d as i64))
                    .collect(),
            }
        }
        (None, None) => return Err(Error::invalid("give --word or --source")),
    };
    if word.len() > MAX_SCAN_LEN {
        return Err(Error::invalid(format!(
            "length {} exceeds the limit {MAX_SCAN_LEN}",
            word.len()
        )));
    }
    if word.len() > SLOW_SCAN_LEN {
        eprintln!(
            "warning: scanning {} letters is quadratic and may be slow",
            word.len()
        );
    }
    let render = |i: usize, j: usize| word[i..j].iter().collect::<String>();
    let line = match args.kind {
        RepetitionKind::Square => describe(find_square(&word), |r| 2 * r.period, render),
        RepetitionKind::Cube => describe(find_cube(&word), |r| 3 * r.period, render),
        RepetitionKind::Overlap => describe(find_overlap(&word), |r| 2 * r.period + 1, render),
    };
    let _ = writeln!(out, "{line}");
    Ok(EXIT_OK)
}

fn class_members(a: u64, set: SetKind, count: usize) -> Result<Vec<i64>> {
    Ok(
        first_members(a, set.into(), count, &ThueMorse, DEFAULT_SCAN_CAP)?
            .into_iter()
            .map(|m| m as i64)
            .collect(),
    )
}

fn cmd_oeis(cmd: OeisCmd, out: &mut String) -> Result<i32> {
    match cmd {
        OeisCmd::Compare {
            id,
            file,
            a,
            set,
            offset,
            count,
        } => {
            let path = match (file, &id) {
                (Some(f), _) => f,
                (None, Some(id)) => bfile::bfile_path(id)?,
                (None, None) => return Err(Error::invalid("give --id or --file")),
            };
            let local = BFile::read(&path)?;
            let wanted = local.len().min(count);
            let generated = class_members(a, set, wanted)?;
            let label = id.unwrap_or_else(|| path.display().to_string());
            let truncated = BFile {
                offset: local.offset,
                entries: local.entries[..wanted].to_vec(),
            };
            match bfile::compare_bfile(&truncated, &generated, offset) {
                CompareReport::Match { compared } => {
                    let _ = writeln!(out, "{label} match compared={compared}");
                    Ok(EXIT_OK)
                }
                CompareReport::Mismatch {
                    index,
                    expected,
                    got,
                } => {
                    let _ = writeln!(
                        out,
                        "{label} mismatch index={index} expected={expected} got={got}"
                    );
                    Ok(EXIT_FAILED)
                }
                CompareReport::OffsetMismatch { local, generated } => {
                    let _ = writeln!(
                        out,
                        "{label} offset mismatch local={local} generated={generated}"
                    );
                    Ok(EXIT_FAILED)
                }
            }
        }
        OeisCmd::Export {
            a,
            set,
            seq,
            count,
            offset,
            out: path,
        } => {
            let (values, default_offset) = match (a, seq) {
                (Some(a), None) => (class_members(a, set, count)?, 1),
                (None, Some(kind)) => {
                    let args = SeqArgs {
                        kind,
                        count,
                        format: SeqFormat::Values,
                        morphism: None,
                        seed: None,
                    };
                    (seq_values(&args)?.0, 0)
                }
                _ => return Err(Error::invalid("give exactly one of --a and --seq")),
            };
            bfile::export_bfile(&values, offset.unwrap_or(default_offset), &path)?;
            let _ = writeln!(out, "wrote {} terms to {}", values.len(), path.display());
            Ok(EXIT_OK)
        }
    }
}
