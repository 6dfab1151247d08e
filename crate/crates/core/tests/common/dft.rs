//! Direct-summation DFT used as a reference for the fast transforms.

use std::f64::consts::TAU;

use num_complex::Complex64;

/// Unitary forward DFT of an uncentered row-major grid, output centred with
/// DC at `(w / 2, h / 2)`.
pub fn centered_dft(data: &[Complex64], w: usize, h: usize) -> Vec<Complex64> {
    let scale = 1.0 / ((w * h) as f64).sqrt();
    let mut out = vec![Complex64::new(0.0, 0.0); w * h];
    for uc in 0..h {
        let u = (uc + h - h / 2) % h;
        for vc in 0..w {
            let v = (vc + w - w / 2) % w;
            let mut acc = Complex64::new(0.0, 0.0);
            for m in 0..h {
                for n in 0..w {
                    // reduce the exponent exactly before converting to radians
                    let frac = ((u * m) % h) as f64 / h as f64 + ((v * n) % w) as f64 / w as f64;
                    acc += data[m * w + n] * Complex64::from_polar(1.0, -TAU * frac);
                }
            }
            out[uc * w + vc] = acc * scale;
        }
    }
    out
}

/// Uncentered unitary forward DFT.
pub fn plain_dft(data: &[Complex64], w: usize, h: usize) -> Vec<Complex64> {
    let c = centered_dft(data, w, h);
    let mut out = vec![Complex64::new(0.0, 0.0); w * h];
    for uc in 0..h {
        for vc in 0..w {
            let u = (uc + h - h / 2) % h;
            let v = (vc + w - w / 2) % w;
            out[u * w + v] = c[uc * w + vc];
        }
    }
    out
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
