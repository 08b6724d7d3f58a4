//! Self-convolution of real sequences through a double-precision complex FFT.
//!
//! Two real sequences are packed into one complex buffer as `a + i·b`; their
//! spectra are separated with the conjugate-symmetry relations and recombined
//! as `Â² + i·B̂²`, so a single forward/inverse pair yields both `a * a`
//! (real part) and `b * b` (imaginary part).

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Linear self-convolutions `(a * a)[k]` and `(b * b)[k]` for `k < out_len`.
///
/// `a` and `b` must have the same length `n`; the transform size is the
/// smallest power of two `> 2(n - 1)`, so the whole linear convolution fits
/// without wrap-around.
pub fn self_convolve_pair(a: &[f64], b: &[f64], out_len: usize) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    if n == 0 {
        return (vec![0.0; out_len], vec![0.0; out_len]);
    }
    let size = (2 * n - 1).next_power_of_two();
    let mut buf: Vec<Complex64> = Vec::with_capacity(size);
    buf.extend(a.iter().zip(b).map(|(&x, &y)| Complex64::new(x, y)));
    buf.resize(size, Complex64::new(0.0, 0.0));

    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(size).process(&mut buf);

    let i = Complex64::new(0.0, 1.0);
    let split = |zk: Complex64, zc: Complex64| {
        let a_hat = (zk + zc) * 0.5;
        let b_hat = (zk - zc) * Complex64::new(0.0, -0.5);
        a_hat * a_hat + i * b_hat * b_hat
    };
    for k in 0..=size / 2 {
        let kk = (size - k) % size;
        let zk = buf[k];
        let zkk = buf[kk];
        buf[k] = split(zk, zkk.conj());
        if kk != k {
            buf[kk] = split(zkk, zk.conj());
        }
    }

    planner.plan_fft_inverse(size).process(&mut buf);
    let scale = 1.0 / size as f64;
    let len = out_len.min(size);
    let mut aa = Vec::with_capacity(out_len);
    let mut bb = Vec::with_capacity(out_len);
    for z in &buf[..len] {
        aa.push(z.re * scale);
        bb.push(z.im * scale);
    }
    aa.resize(out_len, 0.0);
    bb.resize(out_len, 0.0);
    (aa, bb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(a: &[f64], out_len: usize) -> Vec<f64> {
        let mut out = vec![0.0; out_len];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in a.iter().enumerate() {
                if i + j < out_len {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    #[test]
    fn matches_naive_convolution() {
        for n in [1usize, 2, 3, 7, 64, 100, 257] {
            let a: Vec<f64> = (0..n).map(|k| ((k * 7 + 3) % 11) as f64 - 5.0).collect();
            let b: Vec<f64> = (0..n).map(|k| ((k * k) % 5) as f64).collect();
            let (aa, bb) = self_convolve_pair(&a, &b, n);
            for (got, want) in aa.iter().zip(naive(&a, n)) {
                assert!((got - want).abs() < 1e-9, "n={n}");
            }
            for (got, want) in bb.iter().zip(naive(&b, n)) {
                assert!((got - want).abs() < 1e-9, "n={n}");
            }
        }
    }

    #[test]
    fn full_length_output_has_no_wraparound() {
        let a = vec![1.0; 9];
        let (aa, _) = self_convolve_pair(&a, &a, 17);
        let want = naive(&a, 17);
        for (got, want) in aa.iter().zip(want) {
            assert!((got - want).abs() < 1e-9);
        }
    }
}
