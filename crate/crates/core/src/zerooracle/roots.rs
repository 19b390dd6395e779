use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) const MAX_SWEEPS: usize = 500;

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn horner_abs(c: &[Complex64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

fn horner_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `|p(z)| / Σ|c_k||z|^k`, the componentwise backward error.
pub(crate) fn backward_error(c: &[Complex64], z: Complex64) -> f64 {
    let s = horner_abs(c, z.norm());
    if s == 0.0 {
        0.0
    } else {
        horner(c, z).norm() / s
    }
}

/// Residual of the monic normalization, relative to `max(1, |z|^deg)`.
pub(crate) fn monic_residual(c: &[Complex64], z: Complex64) -> f64 {
    let lead = *c.last().unwrap();
    let d = c.len() - 1;
    (horner(c, z) / lead).norm() / z.norm().powi(d as i32).max(1.0)
}

fn durand_kerner(c: &[Complex64], start_angle: f64, radius: f64) -> Option<Vec<Complex64>> {
    let d = c.len() - 1;
    let lead = c[d];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    let seed = Complex64::from_polar(1.0, start_angle);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let w = Complex64::from_polar(
                radius,
                std::f64::consts::TAU * k as f64 / d as f64 + start_angle,
            );
            w + seed * 1e-3 * radius * (k as f64 + 1.0) / d as f64
        })
        .collect();
    for _ in 0..MAX_SWEEPS {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-300, 0.0);
            }
            let step = horner(&monic, z[i]) / den;
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    if z.iter()
        .all(|&r| backward_error(c, r) < 1e-10 || monic_residual(c, r) < 1e-10)
    {
        Some(z)
    } else {
        None
    }
}

/// Newton steps that are kept only while they reduce `|p|`.
pub(crate) fn polish(c: &[Complex64], mut z: Complex64) -> Complex64 {
    let mut best = horner(c, z).norm();
    for _ in 0..20 {
        let (p, dp) = horner_with_derivative(c, z);
        if dp.norm() == 0.0 || best == 0.0 {
            break;
        }
        let cand = z - p / dp;
        let v = horner(c, cand).norm();
        if v >= best || v.is_nan() {
            break;
        }
        z = cand;
        best = v;
    }
    z
}

/// All roots, with multiplicity, of `Σ c_k z^k` (trailing zeros in `c`
/// are trimmed first).
pub fn roots_complex(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|a| a.norm() == 0.0) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(Error::ZeroDegree(0));
    }
    // roots at the origin are split off exactly
    let zeros = c.iter().take_while(|a| a.norm() == 0.0).count();
    let c = c.split_off(zeros);
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if c.len() == 1 {
        return Ok(out);
    }
    let d = c.len() - 1;
    let lead = c[d].norm();
    // Fujiwara-type bound
    let bound = (0..d)
        .map(|k| (c[k].norm() / lead).powf(1.0 / (d - k) as f64))
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = bound.max(1e-3) * 0.5;
    let attempts = [
        (0.4, radius),
        (1.3, radius * 0.37),
        (2.2, radius * 1.9),
        (0.9, 1.0),
    ];
    for (angle, r) in attempts {
        if let Some(z) = durand_kerner(&c, angle, r) {
            out.extend(z.into_iter().map(|r| polish(&c, r)));
            return Ok(out);
        }
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}
