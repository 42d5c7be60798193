//! Rational-ratio polyphase resampling with a Kaiser-windowed sinc kernel.

use crate::error::{Error, Result};

/// Kaiser window shape parameter. 8.6 gives roughly -90 dB sidelobes.
pub const KAISER_BETA: f64 = 8.6;
/// Taps combined per output sample.
pub const TAPS_PER_PHASE: usize = 64;

/// Zeroth-order modified Bessel function of the first kind (power series).
pub fn bessel_i0(x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..64 {
        term *= (half / k as f64) * (half / k as f64);
        sum += term;
        if term < sum * 1e-18 {
            break;
        }
    }
    sum
}

/// Kaiser window evaluated at `t` for half-width `half`, zero outside.
pub fn kaiser(t: f64, half: f64, beta: f64) -> f64 {
    let r = t / half;
    if r.abs() >= 1.0 {
        return 0.0;
    }
    bessel_i0(beta * (1.0 - r * r).sqrt()) / bessel_i0(beta)
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        let px = std::f64::consts::PI * x;
        px.sin() / px
    }
}

/// Kaiser-windowed sinc interpolation tap at offset `t` (input-sample units)
/// with normalized cutoff `cutoff` (1.0 = input Nyquist).
pub fn windowed_sinc_tap(t: f64, cutoff: f64) -> f64 {
    let half = TAPS_PER_PHASE as f64 / 2.0;
    cutoff * sinc(cutoff * t) * kaiser(t, half, KAISER_BETA)
}

/// Best rational approximation p/q to `x` with `q <= max_den`, by walking the
/// Stern-Brocot tree.
pub fn best_rational(x: f64, max_den: u64) -> Result<(u64, u64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::parameter(format!(
            "ratio must be positive and finite, got {x}"
        )));
    }
    // Bracket [lo_n/lo_d, hi_n/hi_d]; mediants converge to x.
    let (mut lo_n, mut lo_d) = (x.floor() as u64, 1u64);
    let (mut hi_n, mut hi_d) = (lo_n + 1, 1u64);
    let (mut best_n, mut best_d) = (lo_n, lo_d);
    let mut best_err = (x - lo_n as f64 / lo_d as f64).abs();
    let mut consider = |n: u64, d: u64, best_n: &mut u64, best_d: &mut u64, best_err: &mut f64| {
        let err = (x - n as f64 / d as f64).abs();
        if err < *best_err {
            *best_err = err;
            *best_n = n;
            *best_d = d;
        }
    };
    consider(hi_n, hi_d, &mut best_n, &mut best_d, &mut best_err);
    loop {
        let med_n = lo_n + hi_n;
        let med_d = lo_d + hi_d;
        if med_d > max_den {
            break;
        }
        consider(med_n, med_d, &mut best_n, &mut best_d, &mut best_err);
        if (med_n as f64) < x * med_d as f64 {
            lo_n = med_n;
            lo_d = med_d;
        } else if (med_n as f64) > x * med_d as f64 {
            hi_n = med_n;
            hi_d = med_d;
        } else {
            break; // exact
        }
    }
    let g = gcd(best_n.max(1), best_d);
    Ok((best_n / g, best_d / g))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Resamples `input` by the rational factor `up/down`: the output has
/// `ceil(len * up / down)` samples and output index `k` interpolates the
/// input at position `k * down / up`. `up == down` returns a bit-identical
/// copy.
pub fn resample(input: &[f64], up: u64, down: u64) -> Result<Vec<f64>> {
    if up == 0 || down == 0 {
        return Err(Error::parameter("resample factors must be nonzero"));
    }
    if up == down {
        return Ok(input.to_vec());
    }
    let len = input.len() as u128;
    let out_len = ((len * up as u128) + down as u128 - 1) / down as u128;
    let out_len = out_len as usize;
    let cutoff = if up < down {
        up as f64 / down as f64
    } else {
        1.0
    };
    let half = (TAPS_PER_PHASE / 2) as i64;

    // Per-phase tap tables: phase r = (k*down) mod up determines the
    // fractional offset, so taps repeat with period `up` in k.
    let phases = up as usize;
    let mut tables = vec![[0.0f64; TAPS_PER_PHASE]; phases];
    for (r, table) in tables.iter_mut().enumerate() {
        let frac = r as f64 / up as f64;
        for (j, tap) in table.iter_mut().enumerate() {
            let offset = j as f64 - (half - 1) as f64; // n = m0 + offset
            *tap = windowed_sinc_tap(frac - offset, cutoff);
        }
    }

    let mut out = vec![0.0; out_len];
    for (k, o) in out.iter_mut().enumerate() {
        let num = k as u64 * down;
        let m0 = (num / up) as i64;
        let r = (num % up) as usize;
        let table = &tables[r];
        let mut acc = 0.0;
        let start = m0 - half + 1;
        for (j, tap) in table.iter().enumerate() {
            let n = start + j as i64;
            if n >= 0 && (n as usize) < input.len() {
                acc += input[n as usize] * tap;
            }
        }
        *o = acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_ratio_is_bit_exact() {
        let x = vec![0.1, -0.5, 2.0, 3.5];
        assert_eq!(resample(&x, 7, 7).unwrap(), x);
    }

    #[test]
    fn best_rational_known_values() {
        assert_eq!(best_rational(0.5, 1000).unwrap(), (1, 2));
        assert_eq!(best_rational(1.5, 1000).unwrap(), (3, 2));
        let (p, q) = best_rational(std::f64::consts::PI, 1000).unwrap();
        // 355/113 is the famous best approximation below q=1000 territory.
        assert_eq!((p, q), (355, 113));
    }

    #[test]
    fn best_rational_tracks_speed_ratio() {
        let ratio = 0.983_367_f64;
        let (p, q) = best_rational(ratio, 1000).unwrap();
        assert!(q <= 1000);
        assert!((p as f64 / q as f64 - ratio).abs() < 1e-5);
    }

    #[test]
    fn impulse_position_scales_by_ratio() {
        let mut x = vec![0.0; 4000];
        x[1000] = 1.0;
        let y = resample(&x, 983, 1000).unwrap();
        let peak = y
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .unwrap()
            .0;
        assert_eq!(peak, 983);
    }

    #[test]
    fn dc_gain_near_unity() {
        let x = vec![1.0; 2000];
        let y = resample(&x, 983, 1000).unwrap();
        // Interior samples (away from edge transients) should track DC.
        for v in &y[100..y.len() - 100] {
            assert!((v - 1.0).abs() < 1e-3, "dc gain off: {v}");
        }
    }

    #[test]
    fn tone_survives_resampling() {
        let fs = 96000.0;
        let f = 8000.0;
        let n = 4096;
        let x: Vec<f64> = (0..n)
            .map(|i| (2.0 * std::f64::consts::PI * f * i as f64 / fs).sin())
            .collect();
        let (p, q) = (49u64, 50u64);
        let y = resample(&x, p, q).unwrap();
        // Output index k corresponds to input time k*q/p.
        for k in 200..y.len() - 200 {
            let t = k as f64 * q as f64 / p as f64;
            let expect = (2.0 * std::f64::consts::PI * f * t / fs).sin();
            assert!((y[k] - expect).abs() < 2e-3, "k={k} err={}", y[k] - expect);
        }
    }
}
