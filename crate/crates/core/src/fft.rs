//! FFT helpers with a process-wide plan cache.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

type PlanMap = HashMap<(usize, bool), Arc<dyn Fft<f64>>>;

static PLANS: Lazy<Mutex<PlanMap>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut plans = PLANS.lock().unwrap();
    plans
        .entry((len, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(len)
            } else {
                planner.plan_fft_forward(len)
            }
        })
        .clone()
}

pub fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}

/// Forward FFT of a real signal zero-padded to `n` bins.
pub fn forward_real(samples: &[f64], n: usize) -> Vec<Complex64> {
    assert!(samples.len() <= n, "signal longer than FFT length");
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (b, &s) in buf.iter_mut().zip(samples.iter()) {
        b.re = s;
    }
    plan(n, false).process(&mut buf);
    buf
}

/// Inverse FFT returning the real part, scaled by 1/n.
pub fn inverse_real(mut spectrum: Vec<Complex64>) -> Vec<f64> {
    let n = spectrum.len();
    plan(n, true).process(&mut spectrum);
    let scale = 1.0 / n as f64;
    spectrum.into_iter().map(|c| c.re * scale).collect()
}

/// Linear convolution of two real sequences via FFT.
pub fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let out_len = a.len() + b.len() - 1;
    let n = next_pow2(out_len);
    let fa = forward_real(a, n);
    let fb = forward_real(b, n);
    let prod: Vec<Complex64> = fa.iter().zip(fb.iter()).map(|(x, y)| x * y).collect();
    let mut out = inverse_real(prod);
    out.truncate(out_len);
    out
}

/// Frequency of full-FFT bin `i` at length `n` (mirrored above Nyquist).
pub fn bin_frequency(i: usize, n: usize, sample_rate: f64) -> f64 {
    let i = i.min(n - i);
    i as f64 * sample_rate / n as f64
}
