//! The Thue-Morse Dirichlet series `A(s) = sum_{n>=0} u(n) (n+1)^-s`.
//!
//! For large real part the series is summed directly with Thue-Morse block
//! grouping. Elsewhere it is continued with the shift recursion
//!
//! ```text
//! A(s) = sum_{j>=1} C(s+j-1, j) 2^-(s+j) A(s+j)
//! ```
//!
//! which follows from pairing `n = 2m` with `n = 2m+1` and expanding
//! `(2m+1)^-s = (2m+2)^-s (1 - 1/(2m+2))^-s` binomially. Values at integer
//! shifts `s + k` are computed once per evaluation and reused.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analysis::grouping::{block_size, difference_width};
use crate::error::{Error, Result};
use crate::sequence::tm_bit;

pub type ComplexValue = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuationParams {
    /// Direct summation is used when `Re s >= direct_threshold`.
    pub direct_threshold: f64,
    /// Cap on the number of terms in one direct sum.
    pub direct_terms: u64,
    /// Starting truncation of the shift recursion; raised per level until
    /// the neglected tail is small enough.
    pub j_truncation: usize,
    pub max_j_truncation: usize,
    /// Required bound on the combined truncation error of one evaluation.
    pub target_accuracy: f64,
    /// Grouping depth of the direct sums (blocks of `2^depth` terms).
    pub block_depth: u32,
}

impl Default for ContinuationParams {
    fn default() -> Self {
        ContinuationParams {
            direct_threshold: 2.0,
            direct_terms: 1_000_000,
            j_truncation: 80,
            max_j_truncation: 4096,
            target_accuracy: 1e-11,
            block_depth: 6,
        }
    }
}

impl ContinuationParams {
    fn validate(&self) -> Result<()> {
        if !(self.direct_threshold > 1.0) || !self.direct_threshold.is_finite() {
            return Err(Error::invalid(
                "direct_threshold must be a finite value above 1",
            ));
        }
        if self.j_truncation < 8 || self.max_j_truncation < self.j_truncation {
            return Err(Error::invalid("need 8 <= j_truncation <= max_j_truncation"));
        }
        if !(self.target_accuracy > 0.0) {
            return Err(Error::invalid("target_accuracy must be positive"));
        }
        if self.block_depth == 0 || self.block_depth > 12 {
            return Err(Error::invalid("block_depth must be in 1..=12"));
        }
        Ok(())
    }
}

/// A value together with bounds on what went into it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirichletValue {
    pub value: ComplexValue,
    /// Bound on the error from truncated sums, propagated through the
    /// recursion.
    pub truncation_bound: f64,
    /// Rough floating-point rounding estimate, propagated the same way.
    pub rounding_estimate: f64,
}

impl DirichletValue {
    pub fn error_estimate(&self) -> f64 {
        self.truncation_bound + self.rounding_estimate
    }
}

fn check_finite(s: ComplexValue) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("argument {s}")))
    }
}

fn check_result(v: ComplexValue, s: ComplexValue) -> Result<ComplexValue> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("A({s}) overflowed")))
    }
}

/// `|s (s+1) ... (s+r-1)|`
fn pochhammer_abs(s: ComplexValue, r: u32) -> f64 {
    (0..r).map(|i| (s + i as f64).norm()).product()
}

/// Tail bound of the grouped direct sum after `blocks` blocks.
fn direct_tail_bound(s: ComplexValue, depth: u32, blocks: u64) -> f64 {
    let r = depth as f64;
    let b = block_size(depth) as f64;
    let e = s.re + r;
    // block k is bounded by W |(s)_r| (B k)^-(Re s + r); sum over k > K by
    // the integral from K.
    difference_width(depth) * pochhammer_abs(s, depth) * b.powf(-e) * (blocks as f64).powf(1.0 - e)
        / (e - 1.0)
}

/// Smallest block count whose tail bound is at most `target`.
fn blocks_for(s: ComplexValue, target: f64, params: &ContinuationParams) -> Result<u64> {
    let depth = params.block_depth;
    let e = s.re + depth as f64;
    let max_blocks = (params.direct_terms / block_size(depth))
        .saturating_sub(1)
        .max(1);
    let at_one = direct_tail_bound(s, depth, 1);
    let guess = (at_one / target).powf(1.0 / (e - 1.0)).ceil();
    if !(guess <= max_blocks as f64) {
        return Err(Error::AccuracyNotReached {
            bound: direct_tail_bound(s, depth, max_blocks),
            target,
            context: format!(
                "direct sum at s = {s} capped at {} terms",
                params.direct_terms
            ),
        });
    }
    let mut blocks = (guess as u64).max(1);
    // the float estimate can land one short
    while direct_tail_bound(s, depth, blocks) > target {
        if blocks >= max_blocks {
            return Err(Error::AccuracyNotReached {
                bound: direct_tail_bound(s, depth, blocks),
                target,
                context: format!(
                    "direct sum at s = {s} capped at {} terms",
                    params.direct_terms
                ),
            });
        }
        blocks += 1;
    }
    Ok(blocks)
}

/// Direct sums at `s0, s0 + 1, ..., s0 + targets.len() - 1`, each to its own
/// tail target. Powers for consecutive shifts share one `exp` per index.
fn direct_sums(
    s0: ComplexValue,
    targets: &[f64],
    params: &ContinuationParams,
) -> Result<Vec<DirichletValue>> {
    let b = block_size(params.block_depth);
    let mut lens = Vec::with_capacity(targets.len());
    let mut blocks = Vec::with_capacity(targets.len());
    for (k, &target) in targets.iter().enumerate() {
        let kb = blocks_for(s0 + k as f64, target, params)?;
        blocks.push(kb);
        // head plus blocks 1..=kb; the grouped partial sum is the plain
        // partial sum over these indices
        lens.push(b * (kb + 1));
    }
    let mut acc = vec![ComplexValue::new(0.0, 0.0); targets.len()];
    let n_max = lens.iter().copied().max().unwrap_or(0);
    // shifts still active at index n form a prefix as long as lens is
    // non-increasing; keep a running count from the end
    let mut active = targets.len();
    let minus_s0 = -s0;
    for n in 0..n_max {
        while active > 0 && lens[active - 1] <= n {
            active -= 1;
        }
        let x = (n + 1) as f64;
        let inv = 1.0 / x;
        let mut p = (minus_s0 * x.ln()).exp();
        if tm_bit(n) == 1 {
            p = -p;
        }
        for (k, slot) in acc.iter_mut().enumerate().take(active) {
            if n < lens[k] {
                *slot += p;
            }
            p *= inv;
        }
    }
    acc.into_iter()
        .zip(blocks)
        .zip(lens)
        .enumerate()
        .map(|(k, ((value, kb), len))| {
            let s = s0 + k as f64;
            Ok(DirichletValue {
                value: check_result(value, s)?,
                truncation_bound: direct_tail_bound(s, params.block_depth, kb),
                rounding_estimate: 4.0 * f64::EPSILON * (1.0 + (len as f64).sqrt() + k as f64),
            })
        })
        .collect()
}

/// Direct summation, valid for `Re s > 1`.
pub fn direct_sum(s: ComplexValue, params: &ContinuationParams) -> Result<DirichletValue> {
    check_finite(s)?;
    params.validate()?;
    if !(s.re > 1.0) {
        return Err(Error::invalid(format!(
            "direct summation needs Re s > 1, got {s}"
        )));
    }
    Ok(direct_sums(s, &[params.target_accuracy], params)?[0])
}

/// `A(s)` by direct summation when `Re s` is at or above the threshold,
/// otherwise by the shift recursion.
pub fn dirichlet_eval(s: ComplexValue, params: &ContinuationParams) -> Result<ComplexValue> {
    Ok(dirichlet_eval_detailed(s, params)?.value)
}

pub fn dirichlet_eval_detailed(
    s: ComplexValue,
    params: &ContinuationParams,
) -> Result<DirichletValue> {
    check_finite(s)?;
    params.validate()?;
    if s.re >= params.direct_threshold {
        return direct_sum(s, params);
    }
    recursion(s, params)
}

/// Always goes through at least one level of the shift recursion.
pub fn dirichlet_eval_recursive(
    s: ComplexValue,
    params: &ContinuationParams,
) -> Result<DirichletValue> {
    check_finite(s)?;
    params.validate()?;
    recursion(s, params)
}

/// Most recursion levels accepted before giving up (`Re s` far below 0).
const MAX_LEVELS: usize = 400;

fn recursion(s: ComplexValue, params: &ContinuationParams) -> Result<DirichletValue> {
    // shifts 0..levels use the recursion, shifts >= levels are direct
    let levels = ((params.direct_threshold - s.re).ceil().max(1.0)) as usize;
    if levels > MAX_LEVELS {
        return Err(Error::invalid(format!(
            "Re s = {} is too far left for the shift recursion",
            s.re
        )));
    }

    // Forward pass. weight[k] bounds how much an error in A(s+k) can move
    // A(s); half the target goes to the recursion tails, half to the direct
    // sums.
    let mut weight = vec![0.0f64; levels + 1];
    weight[0] = 1.0;
    let mut plans = Vec::with_capacity(levels);
    for level in 0..levels {
        let w = weight[level];
        let tail_target = if w > 0.0 {
            params.target_accuracy / (2.0 * levels as f64 * w)
        } else {
            f64::INFINITY
        };
        let (coefs, tail) = recursion_terms(s + level as f64, tail_target, params)?;
        let top = level + coefs.len();
        if weight.len() <= top {
            weight.resize(top + 1, 0.0);
        }
        for (j, c) in coefs.iter().enumerate() {
            weight[level + j + 1] += w * c.norm();
        }
        plans.push((coefs, tail));
    }

    let direct_weight: f64 = weight[levels..].iter().sum();
    let direct_target = if direct_weight > 0.0 {
        params.target_accuracy / (2.0 * direct_weight)
    } else {
        params.target_accuracy
    };
    let count = weight.len() - levels;
    let mut values: Vec<DirichletValue> = vec![
        DirichletValue {
            value: ComplexValue::new(0.0, 0.0),
            truncation_bound: 0.0,
            rounding_estimate: 0.0,
        };
        levels
    ];
    values.extend(direct_sums(
        s + levels as f64,
        &vec![direct_target; count],
        params,
    )?);

    for level in (0..levels).rev() {
        let (coefs, tail) = &plans[level];
        let mut value = ComplexValue::new(0.0, 0.0);
        let mut trunc = if weight[level] > 0.0 { *tail } else { 0.0 };
        let mut round = 0.0;
        let mut magnitude = 0.0;
        for (j, coef) in coefs.iter().enumerate() {
            let a = &values[level + j + 1];
            let term = coef * a.value;
            value += term;
            magnitude += term.norm();
            trunc += coef.norm() * a.truncation_bound;
            round += coef.norm() * a.rounding_estimate;
        }
        round += 4.0 * f64::EPSILON * magnitude;
        values[level] = DirichletValue {
            value: check_result(value, s + level as f64)?,
            truncation_bound: trunc,
            rounding_estimate: round,
        };
    }
    let out = values[0];
    if out.truncation_bound > params.target_accuracy {
        return Err(Error::AccuracyNotReached {
            bound: out.truncation_bound,
            target: params.target_accuracy,
            context: format!("shift recursion at s = {s}"),
        });
    }
    Ok(out)
}

/// Coefficients `C(t+j-1, j) 2^-(t+j)` for `j = 1..=J`, with `J` grown from
/// `j_truncation` until the neglected tail is below `target`. Returns the
/// coefficients and the tail bound.
fn recursion_terms(
    t: ComplexValue,
    target: f64,
    params: &ContinuationParams,
) -> Result<(Vec<ComplexValue>, f64)> {
    let ln2 = std::f64::consts::LN_2;
    let mut coefs = Vec::with_capacity(params.j_truncation);
    // binom = C(t+j-1, j); starts at j = 1 with t
    let mut binom = t;
    let mut j = 1usize;
    loop {
        let pow2 = (-(t + j as f64) * ln2).exp();
        coefs.push(binom * pow2);
        if j >= params.j_truncation {
            let tail = recursion_tail(t, j, binom);
            match tail {
                Some(tail) if tail <= target => return Ok((coefs, tail)),
                _ if target.is_infinite() => return Ok((coefs, tail.unwrap_or(0.0))),
                _ => {}
            }
            if j >= params.max_j_truncation {
                return Err(Error::AccuracyNotReached {
                    bound: tail.unwrap_or(f64::INFINITY),
                    target,
                    context: format!("shift recursion at {t} truncated at j = {j}"),
                });
            }
        }
        binom = binom * (t + j as f64) / (j as f64 + 1.0);
        j += 1;
    }
}

/// Bound on `sum_{j > J} |C(t+j-1, j) 2^-(t+j) A(t+j)|` given
/// `binom = C(t+J-1, J)`. `None` when the terms are not yet decreasing
/// geometrically.
fn recursion_tail(t: ComplexValue, big_j: usize, binom: ComplexValue) -> Option<f64> {
    let jf = big_j as f64;
    let x = t.re + jf + 1.0;
    if x <= 1.0 {
        return None;
    }
    // |A(t+j)| <= zeta(Re t + j) <= 1 + 1/(Re t + j - 1)
    let zeta_bound = 1.0 + 1.0 / (x - 1.0);
    // successive ratios |t+j| / (j+1) / 2 are at most (|t|+j)/(j+1)/2,
    // which decreases in j once |t| > 1
    let ratio = ((t.norm() + jf + 1.0) / (jf + 2.0)).max(1.0) * 0.5;
    if ratio >= 1.0 {
        return None;
    }
    let next = (binom * (t + jf)).norm() / (jf + 1.0);
    let first = next * 2f64.powf(-x);
    Some(zeta_bound * first / (1.0 - ratio))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroScan {
    /// `|A|` at every grid node, row by row in increasing `im`.
    pub grid: Vec<GridPoint>,
    /// Refined points with `|A| <= refine_tol`, ordered by `im` then `re`.
    pub candidates: Vec<GridPoint>,
}

/// Real parts below this are rejected by the zero scan.
pub const SCAN_MIN_RE: f64 = -30.0;

#[derive(Clone, Debug, PartialEq)]
pub struct ScanOptions {
    /// Interior grid minima above this are not refined.
    pub minimum_threshold: f64,
    pub params: ContinuationParams,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            minimum_threshold: 1.0,
            params: ContinuationParams::default(),
        }
    }
}

fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    if hi < lo {
        return Vec::new();
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

/// Grid scan of `|A|` over a rectangle. Strict local minima of the grid
/// interior that fall below the threshold are refined by alternating
/// golden-section searches along each coordinate; refined points with
/// `|A| <= refine_tol` are reported. Zeros on the rectangle's edge are not
/// interior minima and are not reported.
pub fn dirichlet_zero_scan(
    re_range: (f64, f64),
    im_range: (f64, f64),
    grid_step: f64,
    refine_tol: f64,
    options: &ScanOptions,
) -> Result<ZeroScan> {
    if !(grid_step > 0.0) || !grid_step.is_finite() {
        return Err(Error::invalid("grid step must be positive"));
    }
    for v in [re_range.0, re_range.1, im_range.0, im_range.1] {
        if !v.is_finite() {
            return Err(Error::invalid("scan rectangle must be bounded"));
        }
    }
    if re_range.0.min(re_range.1) < SCAN_MIN_RE {
        return Err(Error::invalid(format!(
            "scan rectangle reaches Re s < {SCAN_MIN_RE}, where the recursion is unstable"
        )));
    }
    options.params.validate()?;
    let res = axis(re_range.0, re_range.1, grid_step);
    let ims = axis(im_range.0, im_range.1, grid_step);
    let nodes: Vec<(f64, f64)> = ims
        .iter()
        .flat_map(|&im| res.iter().map(move |&re| (re, im)))
        .collect();
    let grid = nodes
        .par_iter()
        .map(|&(re, im)| {
            let v = dirichlet_eval(ComplexValue::new(re, im), &options.params)?;
            Ok(GridPoint {
                re,
                im,
                abs: v.norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let width = res.len();
    let height = ims.len();
    let mut minima = Vec::new();
    for row in 1..height.saturating_sub(1) {
        for col in 1..width.saturating_sub(1) {
            let here = grid[row * width + col].abs;
            if here > options.minimum_threshold {
                continue;
            }
            let is_min = (-1i64..=1).all(|dr| {
                (-1i64..=1).all(|dc| {
                    (dr == 0 && dc == 0)
                        || here
                            < grid[(row as i64 + dr) as usize * width + (col as i64 + dc) as usize]
                                .abs
                })
            });
            if is_min {
                minima.push(grid[row * width + col]);
            }
        }
    }

    let bounds = (re_range, im_range);
    let refined = minima
        .par_iter()
        .map(|p| refine(*p, grid_step, bounds, &options.params))
        .collect::<Result<Vec<_>>>()?;

    let mut candidates: Vec<GridPoint> = Vec::new();
    for p in refined.into_iter().filter(|p| p.abs <= refine_tol) {
        let dup = candidates
            .iter()
            .any(|q| (q.re - p.re).hypot(q.im - p.im) < grid_step * 0.5);
        if !dup {
            candidates.push(p);
        }
    }
    candidates.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
    Ok(ZeroScan { grid, candidates })
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

fn golden_min(lo: f64, hi: f64, f: &dyn Fn(f64) -> Result<f64>) -> Result<(f64, f64)> {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while (b - a).abs() > 1e-14 * (1.0 + a.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

fn refine(
    start: GridPoint,
    step: f64,
    ((re_lo, re_hi), (im_lo, im_hi)): ((f64, f64), (f64, f64)),
    params: &ContinuationParams,
) -> Result<GridPoint> {
    let eval = |re: f64, im: f64| -> Result<f64> {
        Ok(dirichlet_eval(ComplexValue::new(re, im), params)?.norm())
    };
    let mut p = start;
    for _ in 0..40 {
        let before = (p.re, p.im);
        let im = p.im;
        let (re, _) = golden_min((p.re - step).max(re_lo), (p.re + step).min(re_hi), &|x| {
            eval(x, im)
        })?;
        let (im, abs) = golden_min((p.im - step).max(im_lo), (p.im + step).min(im_hi), &|y| {
            eval(re, y)
        })?;
        if abs <= p.abs {
            p = GridPoint { re, im, abs };
        }
        if (p.re - before.0).hypot(p.im - before.1) < 1e-13 {
            break;
        }
    }
    Ok(p)
}

/// `2 i k pi / log 2`
pub fn nontrivial_zero(k: i64) -> ComplexValue {
    ComplexValue::new(
        0.0,
        2.0 * std::f64::consts::PI * k as f64 / std::f64::consts::LN_2,
    )
}
