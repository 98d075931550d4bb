//! Closed forms and exact recursions for decoding delay, overhead and
//! sparse inner codes.
//!
//! Throughout, a receiver that needs `n` outer dimensions and has collected
//! `d` GF(2)-independent combinations out of `n + r` receives an innovative
//! packet with probability `1 - 2^-(n + r - d)`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::param("n must be at least 1"));
    }
    Ok(())
}

/// `2^-e` as f64 for any non-negative `e` (zero once it underflows).
fn pow2_neg(e: usize) -> f64 {
    if e > 1100 {
        0.0
    } else {
        (-(e as f64)).exp2()
    }
}

/// Mean number of received packets an outer or combined decoder needs:
/// `n + sum_{i=r+1}^{n+r} 1 / (2^i - 1)`.
pub fn expected_receptions_outer(n: usize, r: usize) -> Result<f64> {
    check_n(n)?;
    let tail: f64 = (r + 1..=n + r)
        .take_while(|&i| i <= 1100)
        .map(|i| 1.0 / ((i as f64).exp2() - 1.0))
        .sum();
    Ok(n as f64 + tail)
}

/// Mean receptions with the bracket `[n + 2^-r - 2^(-n-r), n + 2^(1-r) - 2^(1-n-r)]`
/// and the variance bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub expectation: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub variance_bound: f64,
}

pub fn reception_bounds(n: usize, r: usize) -> Result<BoundReport> {
    let expectation = expected_receptions_outer(n, r)?;
    let nf = n as f64;
    Ok(BoundReport {
        expectation,
        lower_bound: nf + pow2_neg(r) - pow2_neg(n + r),
        upper_bound: nf + 2.0 * pow2_neg(r) - 2.0 * pow2_neg(n + r),
        variance_bound: variance_bound(n, r)?,
    })
}

/// `(n + 2^(1-r)) / (2^(r+1) - 1)`.
pub fn variance_bound(n: usize, r: usize) -> Result<f64> {
    check_n(n)?;
    let denominator = ((r + 1) as f64).exp2() - 1.0;
    Ok((n as f64 + 2.0 * pow2_neg(r)) / denominator)
}

/// The reception chain for one `(n, r)`: `P_d` for `d = 0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayModel {
    n: usize,
    r: usize,
    /// Innovation probability in state `d`.
    success: Vec<f64>,
}

impl DelayModel {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        check_n(n)?;
        let success = (0..n).map(|d| 1.0 - pow2_neg(n + r - d)).collect();
        Ok(Self { n, r, success })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn success_probability(&self, d: usize) -> f64 {
        self.success[d]
    }

    /// `(cdf, tail)` for `m = 0..=max_m`, where `tail = 1 - cdf` is summed
    /// from the unfinished states so it keeps full relative precision.
    pub fn series(&self, max_m: usize) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut state = vec![0.0f64; n + 1];
        state[0] = 1.0;
        let mut cdf = Vec::with_capacity(max_m + 1);
        let mut tail = Vec::with_capacity(max_m + 1);
        for m in 0..=max_m {
            if m > 0 {
                for d in (0..n).rev() {
                    let moved = state[d] * self.success[d];
                    state[d + 1] += moved;
                    state[d] -= moved;
                }
            }
            cdf.push(state[n]);
            tail.push(state[..n].iter().sum());
        }
        (cdf, tail)
    }

    pub fn cdf(&self, m: usize) -> f64 {
        self.series(m).0[m]
    }

    pub fn tail(&self, m: usize) -> f64 {
        self.series(m).1[m]
    }

    pub fn pmf(&self, m: usize) -> f64 {
        if m == 0 {
            return 0.0;
        }
        let (cdf, _) = self.series(m);
        cdf[m] - cdf[m - 1]
    }
}

/// Probability that an outer or combined decoder has finished after `m` receptions.
pub fn decode_cdf(n: usize, r: usize, m: usize) -> Result<f64> {
    Ok(DelayModel::new(n, r)?.cdf(m))
}

/// `1 - decode_cdf`, computed without cancellation.
pub fn decode_failure(n: usize, r: usize, m: usize) -> Result<f64> {
    Ok(DelayModel::new(n, r)?.tail(m))
}

pub fn decode_pmf(n: usize, r: usize, m: usize) -> Result<f64> {
    Ok(DelayModel::new(n, r)?.pmf(m))
}

/// `prod_{i=r+1}^{n+r} (1 - 2^-i)`, the chance of finishing at exactly `n`.
pub fn decode_at_n(n: usize, r: usize) -> Result<f64> {
    check_n(n)?;
    Ok((r + 1..=n + r).map(|i| 1.0 - pow2_neg(i)).product())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverheadScheme {
    /// Dense RLNC over GF(2^h), one `h`-bit coefficient per source packet.
    RlncHighField,
    /// Fulcrum with an `(n + r)`-bit GF(2) coding vector.
    Fulcrum,
}

/// Coding-vector bits sent per generation.
///
/// The high-field scheme is taken to need exactly `n` packets.
pub fn overhead_bits(n: usize, r: usize, h: u32, scheme: OverheadScheme) -> Result<f64> {
    check_n(n)?;
    Ok(match scheme {
        OverheadScheme::RlncHighField => (h as f64) * (n as f64) * (n as f64),
        OverheadScheme::Fulcrum => expected_receptions_outer(n, r)? * (n + r) as f64,
    })
}

fn check_density(rho: f64) -> Result<()> {
    if rho > 0.0 && rho <= 0.5 {
        Ok(())
    } else {
        Err(Error::param(format!(
            "density rho = {rho} outside (0, 1/2]"
        )))
    }
}

/// Lower bound on the innovation probability of a packet of density `rho`
/// for a receiver holding `i` of `n_total` dimensions: `1 - (1 - rho)^(n_total - i)`.
pub fn sparse_innovation_bound(n_total: usize, i: usize, rho: f64) -> Result<f64> {
    check_density(rho)?;
    if i >= n_total {
        return Err(Error::param(format!(
            "i = {i} must be below n_total = {n_total}"
        )));
    }
    Ok(1.0 - (1.0 - rho).powi((n_total - i) as i32))
}

fn sparse_exponent(n: usize, r: usize, k: usize) -> Result<f64> {
    check_n(n)?;
    if k == 0 || k > n + r {
        return Err(Error::param(format!("k = {k} outside 1..={}", n + r)));
    }
    Ok(k as f64 * (r + 1) as f64 / (n + r) as f64)
}

/// `n + n (exp(k (r+1) / (n+r)) - 1)` for `k` nonzeros per inner vector.
pub fn sparse_expected_bound(n: usize, r: usize, k: usize) -> Result<f64> {
    let x = sparse_exponent(n, r, k)?;
    Ok(n as f64 + n as f64 * x.exp_m1())
}

/// `n e^x / (e^x - 1)` with `x = k (r+1) / (n+r)`, the form the derivation
/// actually reaches. Below [`sparse_expected_bound`] only when `e^x >= 2`.
pub fn sparse_expected_bound_tight(n: usize, r: usize, k: usize) -> Result<f64> {
    let x = sparse_exponent(n, r, k)?;
    Ok(n as f64 * x.exp() / x.exp_m1())
}

/// `1 + 1 / (e^k - 1)`, the per-packet factor of the tight form as `r` grows.
pub fn sparse_limit(k: f64) -> f64 {
    1.0 + 1.0 / k.exp_m1()
}

/// `n + ((1-rho)^(r+1) - (1-rho)^(n+r+1)) / rho^2` for a fixed density.
pub fn sparse_fixed_density_bound(n: usize, r: usize, rho: f64) -> Result<f64> {
    check_n(n)?;
    check_density(rho)?;
    let q = 1.0 - rho;
    Ok(n as f64 + (q.powi((r + 1) as i32) - q.powi((n + r + 1) as i32)) / (rho * rho))
}

/// Options for [`write_report`].
#[derive(Debug, Clone)]
pub struct ReportSpec {
    pub n: Vec<usize>,
    pub r: Vec<usize>,
    /// CDF and PMF rows for `m = n, ..., n + extra`.
    pub extra: usize,
    /// Field degree used for the high-field overhead comparison.
    pub field_bits: u32,
}

/// Writes the `n,r,quantity,value` report.
pub fn write_report<W: Write>(spec: &ReportSpec, out: &mut W) -> Result<()> {
    writeln!(out, "n,r,quantity,value")?;
    for &n in &spec.n {
        for &r in &spec.r {
            let b = reception_bounds(n, r)?;
            let mut row = |q: &str, v: f64| writeln!(out, "{n},{r},{q},{v}");
            row("expected_receptions", b.expectation)?;
            row("receptions_lower_bound", b.lower_bound)?;
            row("receptions_upper_bound", b.upper_bound)?;
            row("variance_bound", b.variance_bound)?;
            row(
                "overhead_bits_fulcrum",
                overhead_bits(n, r, spec.field_bits, OverheadScheme::Fulcrum)?,
            )?;
            row(
                "overhead_bits_rlnc_high_field",
                overhead_bits(n, r, spec.field_bits, OverheadScheme::RlncHighField)?,
            )?;
            let lt_k = ((n + r) as f64).ln();
            row("lt_soliton_k", lt_k)?;
            let x = lt_k * (r + 1) as f64 / (n + r) as f64;
            row("sparse_bound_lt_tight", n as f64 * x.exp() / x.exp_m1())?;
            let model = DelayModel::new(n, r)?;
            let (cdf, tail) = model.series(n + spec.extra);
            for k in 0..=spec.extra {
                let m = n + k;
                row(&format!("cdf@n+{k}"), cdf[m])?;
                row(&format!("pmf@n+{k}"), cdf[m] - cdf[m - 1])?;
                row(&format!("failure@n+{k}"), tail[m])?;
            }
        }
    }
    Ok(())
}

/// Parses `a`, `a..b` (inclusive) or comma-separated lists of either.
pub fn parse_range(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Error::param(format!("bad range element `{part}`"));
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(Error::param(format!("empty range `{text}`")));
    }
    Ok(out)
}
