//! Independent reference implementations used by the test and acceptance
//! suites: the literal multi-sum definition of the uniformity norms and
//! the closed-form geometric series.  They never share code with the
//! fast paths they check.

use super::SampledFunction;
use num_complex::Complex64;

/// `|f|_{U^d(Z_M)}` by the literal (d+1)-fold average
/// `E_{x, h_1..h_d} prod_omega C^{|omega|} f(x + omega . h)`;
/// cost `M^{d+1}`.
pub fn naive_u_norm_group(values: &[Complex64], d: u32) -> f64 {
    let m = values.len() as i64;
    let mut shifts = vec![0i64; d as usize];
    let mut total = 0f64;
    let mut count = 0u64;
    loop {
        for x in 0..m {
            let mut prod = Complex64::new(1.0, 0.0);
            for omega in 0..(1u32 << d) {
                let mut point = x;
                for (j, h) in shifts.iter().enumerate() {
                    if omega >> j & 1 == 1 {
                        point += h;
                    }
                }
                let v = values[point.rem_euclid(m) as usize];
                if omega.count_ones() % 2 == 0 {
                    prod *= v;
                } else {
                    prod *= v.conj();
                }
            }
            total += prod.re;
            count += 1;
        }
        // odometer over shifts
        let mut j = 0;
        loop {
            if j == shifts.len() {
                break;
            }
            shifts[j] += 1;
            if shifts[j] < m {
                break;
            }
            shifts[j] = 0;
            j += 1;
        }
        if j == shifts.len() {
            break;
        }
    }
    (total / count as f64).max(0.0).powf(1.0 / (1u64 << d) as f64)
}

/// The imaginary part of the averaged 2^d-fold product; should vanish up
/// to rounding, and the real part should be nonnegative.
pub fn naive_u_power_complex(values: &[Complex64], d: u32) -> Complex64 {
    let m = values.len() as i64;
    let mut shifts = vec![0i64; d as usize];
    let mut total = Complex64::new(0.0, 0.0);
    let mut count = 0u64;
    loop {
        for x in 0..m {
            let mut prod = Complex64::new(1.0, 0.0);
            for omega in 0..(1u32 << d) {
                let mut point = x;
                for (j, h) in shifts.iter().enumerate() {
                    if omega >> j & 1 == 1 {
                        point += h;
                    }
                }
                let v = values[point.rem_euclid(m) as usize];
                if omega.count_ones() % 2 == 0 {
                    prod *= v;
                } else {
                    prod *= v.conj();
                }
            }
            total += prod;
            count += 1;
        }
        let mut j = 0;
        loop {
            if j == shifts.len() {
                break;
            }
            shifts[j] += 1;
            if shifts[j] < m {
                break;
            }
            shifts[j] = 0;
            j += 1;
        }
        if j == shifts.len() {
            break;
        }
    }
    total / count as f64
}

/// `|f|_{U^d[N]}` by zero-embedding and the naive group norm.
pub fn naive_u_norm(f: &SampledFunction, d: u32, ntilde: usize) -> f64 {
    assert_eq!(f.dim, 1, "the naive oracle is scalar");
    let mut embedded = vec![Complex64::new(0.0, 0.0); ntilde];
    for (i, v) in f.values.iter().enumerate() {
        embedded[(i + 1) % ntilde] = v[0];
    }
    let mut indicator = vec![Complex64::new(0.0, 0.0); ntilde];
    for i in 0..f.n_len {
        indicator[(i + 1) % ntilde] = Complex64::new(1.0, 0.0);
    }
    naive_u_norm_group(&embedded, d) / naive_u_norm_group(&indicator, d)
}

/// `|E_{n in [N]} e(theta n)|` by the closed-form geometric series.
pub fn geometric_mean_abs(theta: f64, n: usize) -> f64 {
    let frac = theta - theta.round();
    if frac.abs() < 1e-300 {
        return 1.0;
    }
    let num = (std::f64::consts::PI * theta * n as f64).sin().abs();
    let den = (std::f64::consts::PI * theta).sin().abs() * n as f64;
    num / den
}
