//! Gowers uniformity norms on `[N]`, multiplicative derivatives,
//! correlation, and the Cauchy-Schwarz additive-quadruple statistic.
//!
//! Functions are finitely supported `[1, N] -> C^D` with the zero
//! extension convention.  Norms embed into the cyclic group of order
//! `Ntilde >= 2^d N` (default exactly `2^d N`) and normalize by the
//! indicator: `|f|_{U^d[N]} = |f~|_{U^d(Z_Ntilde)} / |1_[N]|_{U^d(Z_Ntilde)}`.
//! The base cases are a direct mean (d = 1) and a fourth-moment character
//! sum via the FFT (d = 2); higher orders use the derivative recursion
//! `|f|_{U^d}^{2^d} = E_h |Delta_h f|_{U^{d-1}}^{2^{d-1}}`, skipping
//! shifts with empty support.  Inputs stay exact phases until rendering;
//! accumulation is double precision with fixed-shape pairwise summation,
//! so results are bit-stable regardless of worker count.

pub mod fft;
pub mod reference;

use crate::scalar::{PhaseVector, TorusPoint};
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GowersError {
    #[error("the uniformity order d must be at least 1")]
    ZeroOrder,
    #[error("Ntilde = {given} is below the required 2^d N = {required}")]
    NtildeTooSmall { given: usize, required: usize },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("csv: {0}")]
    Csv(String),
}

/// A finitely supported function `[1, N] -> C^D`, zero outside `[N]`.
#[derive(Clone, Debug)]
pub struct SampledFunction {
    pub n_len: usize,
    pub dim: usize,
    /// `values[i]` is the value at `n = i + 1`.
    pub values: Vec<Vec<Complex64>>,
    /// Recorded bound on the entry magnitudes.
    pub sup_bound: f64,
}

impl SampledFunction {
    pub fn new(values: Vec<Vec<Complex64>>) -> SampledFunction {
        let n_len = values.len();
        let dim = values.first().map(|v| v.len()).unwrap_or(1).max(1);
        let sup = values
            .iter()
            .flat_map(|v| v.iter().map(|z| z.norm()))
            .fold(0.0f64, f64::max);
        SampledFunction { n_len, dim, values, sup_bound: sup }
    }

    pub fn ones(n: usize) -> SampledFunction {
        SampledFunction::new(vec![vec![Complex64::new(1.0, 0.0)]; n])
    }

    /// Renders `n -> e(phase(n))` exactly at the boundary of the float
    /// world.
    pub fn from_phase_fn(n: usize, f: impl Fn(i64) -> TorusPoint) -> SampledFunction {
        SampledFunction::new(
            (1..=n as i64)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * f(k).to_f64();
                    vec![Complex64::new(t.cos(), t.sin())]
                })
                .collect(),
        )
    }

    pub fn from_vector_fn(n: usize, f: impl Fn(i64) -> PhaseVector) -> SampledFunction {
        SampledFunction::new((1..=n as i64).map(|k| f(k).to_complex()).collect())
    }

    pub fn value(&self, n: i64) -> Option<&Vec<Complex64>> {
        if n >= 1 && n <= self.n_len as i64 {
            Some(&self.values[(n - 1) as usize])
        } else {
            None
        }
    }

    /// CSV lines `n,re1,im1,...` per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{}", i + 1));
            for z in v {
                out.push_str(&format!(",{:.15e},{:.15e}", z.re, z.im));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<SampledFunction, GowersError> {
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() < 3 || fields.len() % 2 == 0 {
                return Err(GowersError::Csv(format!(
                    "line {}: expected n,re1,im1,... fields",
                    lineno + 1
                )));
            }
            let mut v = Vec::with_capacity((fields.len() - 1) / 2);
            for pair in fields[1..].chunks(2) {
                let re: f64 = pair[0]
                    .trim()
                    .parse()
                    .map_err(|e| GowersError::Csv(format!("line {}: {e}", lineno + 1)))?;
                let im: f64 = pair[1]
                    .trim()
                    .parse()
                    .map_err(|e| GowersError::Csv(format!("line {}: {e}", lineno + 1)))?;
                v.push(Complex64::new(re, im));
            }
            values.push(v);
        }
        if values.is_empty() {
            return Err(GowersError::Csv("no samples".into()));
        }
        let d = values[0].len();
        if values.iter().any(|v| v.len() != d) {
            return Err(GowersError::Csv("inconsistent dimensions".into()));
        }
        Ok(SampledFunction::new(values))
    }
}

/// `(Delta_h f)(n) = f(n+h) (x) conj(f(n))`, with zero extension.
pub fn mult_derivative(f: &SampledFunction, h: i64) -> SampledFunction {
    let zero = vec![Complex64::new(0.0, 0.0); f.dim * f.dim];
    let values: Vec<Vec<Complex64>> = (1..=f.n_len as i64)
        .map(|n| match (f.value(n + h), f.value(n)) {
            (Some(a), Some(b)) => {
                let mut out = Vec::with_capacity(a.len() * b.len());
                for x in a {
                    for y in b {
                        out.push(x * y.conj());
                    }
                }
                out
            }
            _ => zero.clone(),
        })
        .collect();
    SampledFunction::new(values)
}

/// Fixed-shape pairwise (tree) summation: bit-stable regardless of how
/// the inputs were produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

fn pairwise_sum_c(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum_c(&xs[..mid]) + pairwise_sum_c(&xs[mid..])
        }
    }
}

/// `|f|_{U^d(Z_M)}^{2^d}` of a scalar function on the full cyclic group.
fn group_power(values: &[Complex64], d: u32) -> f64 {
    let m = values.len();
    debug_assert!(m > 0);
    match d {
        1 => {
            let mean = pairwise_sum_c(values) / m as f64;
            mean.norm_sqr()
        }
        2 => {
            let spectrum = fft::dft(values);
            let moments: Vec<f64> = spectrum.iter().map(|z| z.norm_sqr().powi(2)).collect();
            pairwise_sum(&moments) / (m as f64).powi(4)
        }
        d => {
            // E_h |Delta_h f|_{U^{d-1}}^{2^{d-1}}; shifts with empty
            // support contribute zero and are skipped
            let per_h: Vec<f64> = (0..m)
                .into_par_iter()
                .map(|h| {
                    let mut derived = Vec::with_capacity(m);
                    let mut nonzero = false;
                    for x in 0..m {
                        let v = values[(x + h) % m] * values[x].conj();
                        nonzero |= v.norm_sqr() != 0.0;
                        derived.push(v);
                    }
                    if nonzero {
                        group_power(&derived, d - 1)
                    } else {
                        0.0
                    }
                })
                .collect();
            pairwise_sum(&per_h) / m as f64
        }
    }
}

/// `|f|_{U^d(Z_M)}` for a scalar function given on the full group.
pub fn u_norm_group(values: &[Complex64], d: u32) -> Result<f64, GowersError> {
    if d == 0 {
        return Err(GowersError::ZeroOrder);
    }
    Ok(group_power(values, d).max(0.0).powf(1.0 / (1u64 << d) as f64))
}

/// Raw 2^d-fold derivative sum of a compactly supported function on Z:
/// `S_d(f) = sum_{x, h_1..h_d} prod_omega C^{|omega|} f(x + omega . h)`.
/// For `Ntilde >= 2^d N` no cube configuration wraps the cyclic group, so
/// `|f~|_{U^d(Z_Ntilde)}^{2^d} = S_d(f) / Ntilde^{d+1}` — this is why the
/// normalized norm does not depend on the choice of `Ntilde`.  Windows
/// shrink under each derivative, which keeps the recursion cheap.
fn window_power(values: &[Complex64], d: u32) -> f64 {
    // trim zero margins
    let first = values.iter().position(|z| z.norm_sqr() != 0.0);
    let Some(first) = first else { return 0.0 };
    let last = values.iter().rposition(|z| z.norm_sqr() != 0.0).unwrap();
    let w = &values[first..=last];
    let l = w.len();
    match d {
        1 => pairwise_sum_c(w).norm_sqr(),
        2 => {
            // S_2 = sum_s |(f * f)(s)|^2 = (1/M) sum_k |F_k|^4 on any
            // cyclic group of size M >= 2L - 1
            let m = (2 * l - 1).next_power_of_two();
            let mut padded = vec![Complex64::new(0.0, 0.0); m];
            padded[..l].copy_from_slice(w);
            fft::fft_pow2(&mut padded);
            let moments: Vec<f64> = padded.iter().map(|z| z.norm_sqr().powi(2)).collect();
            pairwise_sum(&moments) / m as f64
        }
        d => {
            let per_h: Vec<f64> = (-(l as i64 - 1)..l as i64)
                .into_par_iter()
                .map(|h| {
                    let derived: Vec<Complex64> = (0..l as i64)
                        .map(|x| {
                            let shifted = x + h;
                            if (0..l as i64).contains(&shifted) {
                                w[shifted as usize] * w[x as usize].conj()
                            } else {
                                Complex64::new(0.0, 0.0)
                            }
                        })
                        .collect();
                    window_power(&derived, d - 1)
                })
                .collect();
            pairwise_sum(&per_h)
        }
    }
}

/// `|f|_{U^d[N]}`: zero-embeds into `Z_Ntilde` (default `Ntilde = 2^d N`)
/// and normalizes by the indicator; the ratio
/// `S_d(f) / S_d(1_[N])` is independent of any `Ntilde >= 2^d N` because
/// no cube configuration wraps.  Vector-valued inputs combine
/// componentwise as `(sum_i |f_i|^{2^d})^{1/2^d}`.
pub fn u_norm(f: &SampledFunction, d: u32, ntilde: Option<usize>) -> Result<f64, GowersError> {
    if d == 0 {
        return Err(GowersError::ZeroOrder);
    }
    let required = (1usize << d) * f.n_len;
    let m = ntilde.unwrap_or(required);
    if m < required {
        return Err(GowersError::NtildeTooSmall { given: m, required });
    }
    let indicator = {
        let ones = vec![Complex64::new(1.0, 0.0); f.n_len];
        window_power(&ones, d)
    };
    let mut component_powers = Vec::with_capacity(f.dim);
    for c in 0..f.dim {
        let column: Vec<Complex64> = f.values.iter().map(|v| v[c]).collect();
        component_powers.push(window_power(&column, d) / indicator);
    }
    Ok(pairwise_sum(&component_powers).max(0.0).powf(1.0 / (1u64 << d) as f64))
}

/// The 2^d-power average inside the norm (before the root), normalized.
pub fn u_norm_power(f: &SampledFunction, d: u32, ntilde: Option<usize>) -> Result<f64, GowersError> {
    let norm = u_norm(f, d, ntilde)?;
    Ok(norm.powi((1u64 << d) as i32))
}

/// `|E_n f(n) (x) conj(g(n))|`: Euclidean magnitude of the averaged
/// tensor over `[N]`.
pub fn correlation(f: &SampledFunction, g: &SampledFunction) -> Result<f64, GowersError> {
    if f.n_len != g.n_len {
        return Err(GowersError::LengthMismatch(f.n_len, g.n_len));
    }
    let dim = f.dim * g.dim;
    let mut sums = vec![Complex64::new(0.0, 0.0); dim];
    let mut terms: Vec<Vec<Complex64>> = vec![Vec::with_capacity(f.n_len); dim];
    for (a, b) in f.values.iter().zip(&g.values) {
        let mut idx = 0;
        for x in a {
            for y in b {
                terms[idx].push(x * y.conj());
                idx += 1;
            }
        }
    }
    for (s, t) in sums.iter_mut().zip(&terms) {
        *s = pairwise_sum_c(t) / f.n_len as f64;
    }
    Ok(pairwise_sum(&sums.iter().map(|z| z.norm_sqr()).collect::<Vec<_>>()).sqrt())
}

/// The additive-quadruple statistic
/// `|E_n chi_1(n) (x) chi_2(n + h1 - h4) (x) conj chi_3(n) (x) conj chi_4(n + h1 - h4)|`
/// with the zero-extension convention.
pub fn gcs_statistic(
    chis: [&SampledFunction; 4],
    quad: (i64, i64, i64, i64),
) -> Result<f64, GowersError> {
    let n_len = chis[0].n_len;
    for chi in &chis {
        if chi.n_len != n_len {
            return Err(GowersError::LengthMismatch(chi.n_len, n_len));
        }
    }
    let shift = quad.0 - quad.3;
    let dim = chis.iter().map(|c| c.dim).product();
    let mut terms: Vec<Vec<Complex64>> = vec![Vec::new(); dim];
    for n in 1..=n_len as i64 {
        let (Some(a), Some(b), Some(c), Some(d)) = (
            chis[0].value(n),
            chis[1].value(n + shift),
            chis[2].value(n),
            chis[3].value(n + shift),
        ) else {
            continue;
        };
        let mut idx = 0;
        for x1 in a {
            for x2 in b {
                for x3 in c {
                    for x4 in d {
                        terms[idx].push(x1 * x2 * x3.conj() * x4.conj());
                        idx += 1;
                    }
                }
            }
        }
    }
    let sums: Vec<f64> = terms
        .iter()
        .map(|t| (pairwise_sum_c(t) / n_len as f64).norm_sqr())
        .collect();
    Ok(pairwise_sum(&sums).sqrt())
}

#[cfg(test)]
mod tests;
