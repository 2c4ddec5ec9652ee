//! Discrete Fourier transform: iterative radix-2 with a Bluestein
//! fallback for arbitrary lengths (needed by the `Ntilde`-invariance
//! checks, which use non-power-of-two cyclic groups).

use num_complex::Complex64;

/// In-place forward DFT for power-of-two lengths.
pub fn fft_pow2(buf: &mut [Complex64]) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }
    // bit reversal
    let mut j = 0usize;
    for i in 0..n {
        if i < j {
            buf.swap(i, j);
        }
        let mut mask = n >> 1;
        while mask > 0 && j & mask != 0 {
            j ^= mask;
            mask >>= 1;
        }
        j |= mask;
    }
    let mut len = 2;
    while len <= n {
        let ang = -2.0 * std::f64::consts::PI / len as f64;
        let wlen = Complex64::new(ang.cos(), ang.sin());
        let mut i = 0;
        while i < n {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let u = buf[i + k];
                let v = buf[i + k + len / 2] * w;
                buf[i + k] = u + v;
                buf[i + k + len / 2] = u - v;
                w *= wlen;
            }
            i += len;
        }
        len <<= 1;
    }
}

/// Forward DFT of arbitrary length: radix-2 when possible, otherwise
/// Bluestein's chirp transform on a padded power-of-two convolution.
pub fn dft(input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len();
    if n == 0 {
        return Vec::new();
    }
    if n.is_power_of_two() {
        let mut buf = input.to_vec();
        fft_pow2(&mut buf);
        return buf;
    }
    // chirp[k] = exp(-i pi k^2 / n); indices squared mod 2n to keep the
    // angle exact
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let e = ((k as u64 * k as u64) % (2 * n as u64)) as f64;
            let ang = -std::f64::consts::PI * e / n as f64;
            Complex64::new(ang.cos(), ang.sin())
        })
        .collect();
    let m = (2 * n - 1).next_power_of_two();
    let mut a = vec![Complex64::new(0.0, 0.0); m];
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = input[k] * chirp[k];
        b[k] = chirp[k].conj();
    }
    for k in 1..n {
        b[m - k] = chirp[k].conj();
    }
    fft_pow2(&mut a);
    fft_pow2(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    // inverse transform of the product
    a.iter_mut().for_each(|x| *x = x.conj());
    fft_pow2(&mut a);
    let scale = 1.0 / m as f64;
    (0..n).map(|k| a[k].conj() * scale * chirp[k]).collect()
}
