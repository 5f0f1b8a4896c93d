//! Type-I discrete sine transform, the spectral backbone of the l = 0 sector.
//!
//! A radial field f on nodes r_j = j h, j = 1..n, h = r_max/n, is carried to
//! u = r f, which vanishes at r = 0 and (for decaying fields) at r = r_max.
//! On the interior samples u_1..u_{n-1} the DST-I basis sin(pi k r / r_max)
//! diagonalizes d_rr exactly, so |grad|^s becomes the multiplier
//! (pi k / r_max)^s.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

fn plan(size: usize) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<HashMap<usize, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut plans = plans.lock().expect("fft plan cache poisoned");
    plans
        .entry(size)
        .or_insert_with(|| FftPlanner::new().plan_fft_forward(size))
        .clone()
}

/// DST-I: out_k = sum_{j=1}^m in_j sin(pi j k / (m+1)), k = 1..m.
///
/// Self-inverse up to the factor 2/(m+1). Computed as the odd extension of the
/// input fed through a complex FFT of length 2(m+1).
pub fn dst1(input: &[Complex64]) -> Vec<Complex64> {
    let m = input.len();
    let size = 2 * (m + 1);
    let fft = plan(size);
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    for (j, &v) in input.iter().enumerate() {
        buf[j + 1] = v;
        buf[size - 1 - j] = -v;
    }
    fft.process(&mut buf);
    // The FFT of the odd extension is -2i times the sine sum.
    (1..=m)
        .map(|k| Complex64::new(0.0, 0.5) * buf[k])
        .collect()
}

/// Inverse of [`dst1`].
pub fn idst1(coeffs: &[Complex64]) -> Vec<Complex64> {
    let m = coeffs.len();
    let scale = 2.0 / (m + 1) as f64;
    dst1(coeffs).into_iter().map(|v| v * scale).collect()
}

/// Cosine evaluation: out_j = sum_{k=1}^m in_k cos(pi j k / (m+1)) for
/// j = 0..=m+1, so both endpoints are included. This is the node evaluation
/// of the derivative of a sine series, computed through the even extension
/// and the same complex FFT.
pub fn cos_eval(coeffs: &[Complex64]) -> Vec<Complex64> {
    let m = coeffs.len();
    let size = 2 * (m + 1);
    let fft = plan(size);
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    for (k, &v) in coeffs.iter().enumerate() {
        buf[k + 1] = v;
        buf[size - 1 - k] = v;
    }
    fft.process(&mut buf);
    (0..=m + 1).map(|j| 0.5 * buf[j]).collect()
}
