//! Floating-point checks of the asymptotic statements about indicators:
//! torus maxima and means, the radial limit defining `ψ`, majorization of
//! `u` by its indicator, and `L¹` convergence of the tangent rescalings.
//!
//! All sampling is deterministic (equi-angular lattices, Halton points), so
//! every reported number is reproducible without a seed.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{check_dim, Error, Result};
use crate::exactpoly::GaussianRational;
use crate::indicator::{majorant_constant, PolyhedralIndicator, UFunctionSpec};

/// Floor applied to `u` before averaging.
pub const MEAN_CLIP: f64 = -1e6;
/// Symmetric clip applied to both integrands of the tangent distance.
pub const TANGENT_CLIP: f64 = 1e3;
/// Radius of the ball sampled by [`majorization_check`].
pub const MAJORIZATION_RADIUS: f64 = 1e3;
/// Default radial schedule for [`psi_estimate`].
pub const DEFAULT_SCHEDULE: [f64; 5] = [1.0, 2.0, 4.0, 8.0, 16.0];

/// The torus `T_t(x) = {z : |z_k − x_k| = e^{t_k}}` sampled on an
/// equi-angular lattice.
#[derive(Clone, Debug)]
pub struct TorusSpec {
    pub center: Vec<Complex64>,
    pub radii_log: Vec<f64>,
    pub samples_per_axis: usize,
}

impl TorusSpec {
    pub fn new(center: Vec<Complex64>, radii_log: Vec<f64>, samples_per_axis: usize) -> Self {
        TorusSpec {
            center,
            radii_log,
            samples_per_axis,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        check_dim(n, self.center.len())?;
        check_dim(n, self.radii_log.len())?;
        if self.samples_per_axis < 8 {
            return Err(Error::InvalidArgument(
                "samples_per_axis must be at least 8".into(),
            ));
        }
        Ok(())
    }

    fn point(&self, angles: &[f64], out: &mut [Complex64]) {
        for k in 0..out.len() {
            out[k] = self.center[k] + Complex64::from_polar(self.radii_log[k].exp(), angles[k]);
        }
    }

    /// Visits every lattice point in a fixed order.
    fn for_each_lattice(&self, mut f: impl FnMut(&[f64])) {
        let n = self.center.len();
        let m = self.samples_per_axis;
        let step = TAU / m as f64;
        let mut idx = vec![0usize; n];
        let mut angles = vec![0.0; n];
        loop {
            for k in 0..n {
                angles[k] = idx[k] as f64 * step;
            }
            f(&angles);
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < m {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                return;
            }
        }
    }
}

/// `g'(u, x, t)`: max of `u` over the torus lattice, then polished by a
/// compass search in the angles started from the best lattice point.
pub fn torus_max(u: &UFunctionSpec, spec: &TorusSpec) -> Result<f64> {
    spec.validate(u.n())?;
    Ok(torus_max_unchecked(u, spec))
}

pub(crate) fn torus_max_unchecked(u: &UFunctionSpec, spec: &TorusSpec) -> f64 {
    let n = u.n();
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    let mut best = f64::NEG_INFINITY;
    let mut best_angles = vec![0.0; n];
    spec.for_each_lattice(|a| {
        spec.point(a, &mut z);
        let v = u.eval(&z);
        if v > best {
            best = v;
            best_angles.copy_from_slice(a);
        }
    });

    let mut step = TAU / spec.samples_per_axis as f64;
    let mut angles = best_angles;
    while step > 1e-10 {
        let mut improved = false;
        for k in 0..n {
            for dir in [1.0, -1.0] {
                let old = angles[k];
                angles[k] = old + dir * step;
                spec.point(&angles, &mut z);
                let v = u.eval(&z);
                if v > best {
                    best = v;
                    improved = true;
                } else {
                    angles[k] = old;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// Equal-weight lattice mean of `max(u, MEAN_CLIP)`; approximates `g(u, x, t)`.
pub fn torus_mean(u: &UFunctionSpec, spec: &TorusSpec) -> Result<f64> {
    spec.validate(u.n())?;
    let mut z = vec![Complex64::new(0.0, 0.0); u.n()];
    let mut sum = 0.0;
    let mut count = 0usize;
    spec.for_each_lattice(|a| {
        spec.point(a, &mut z);
        sum += u.eval(&z).max(MEAN_CLIP);
        count += 1;
    });
    Ok(sum / count as f64)
}

/// The sequence `R ↦ (g'(u, x, R t) − g'(u, x, 0)) / R` over `schedule`.
/// By convexity of `g'` in `t` it is nondecreasing and tends to `ψ_{u,x}(t)`.
pub fn psi_estimate(
    u: &UFunctionSpec,
    x: &[GaussianRational],
    t: &[BigRational],
    schedule: &[f64],
    samples_per_axis: usize,
) -> Result<Vec<f64>> {
    let n = u.n();
    check_dim(n, x.len())?;
    check_dim(n, t.len())?;
    if schedule.len() < 3 || schedule.windows(2).any(|w| w[1] <= w[0]) || schedule[0] <= 0.0 {
        return Err(Error::InvalidArgument(
            "schedule must be increasing, positive, with ≥ 3 entries".into(),
        ));
    }
    let center: Vec<Complex64> = x.iter().map(GaussianRational::to_complex).collect();
    let t: Vec<f64> = t.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect();
    let base = TorusSpec::new(center.clone(), vec![0.0; n], samples_per_axis);
    base.validate(n)?;
    let g0 = torus_max_unchecked(u, &base);
    Ok(schedule
        .iter()
        .map(|&r| {
            let spec = TorusSpec::new(
                center.clone(),
                t.iter().map(|tk| r * tk).collect(),
                samples_per_axis,
            );
            (torus_max_unchecked(u, &spec) - g0) / r
        })
        .collect())
}

/// Outcome of a majorization run.
#[derive(Clone, Debug, PartialEq)]
pub struct MajorizationReport {
    pub points: usize,
    pub constant: f64,
    pub violations: usize,
    /// Largest `u(z) − Ψ(z − x) − C` seen (may be negative).
    pub max_excess: f64,
}

const PRIMES: [u32; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

/// Deterministic points in the ball of radius [`MAJORIZATION_RADIUS`]
/// around `x`; radii are log-uniform on `[1e-3, 1e3]`.
pub fn halton_ball(center: &[Complex64], count: usize) -> Vec<Vec<Complex64>> {
    let n = center.len();
    (1..=count as u64)
        .map(|i| {
            let radius = 10f64.powf(-3.0 + 6.0 * radical_inverse(i, PRIMES[0]));
            let mut w: Vec<Complex64> = (0..n)
                .map(|k| {
                    let m = 0.05 + radical_inverse(i, PRIMES[1 + 2 * k]);
                    let th = TAU * radical_inverse(i, PRIMES[2 + 2 * k]);
                    Complex64::from_polar(m, th)
                })
                .collect();
            let norm = w.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            for v in w.iter_mut() {
                *v *= radius.min(MAJORIZATION_RADIUS) / norm;
            }
            w.iter().zip(center).map(|(v, c)| c + v).collect()
        })
        .collect()
}

fn majorant_samples(n: usize) -> usize {
    match n {
        1 => 4096,
        2 => 64,
        3 => 16,
        _ => 8,
    }
}

/// Checks `u(z) ≤ Ψ_{u,x}(z − x) + C + slack` with `C = g'(u, x, 0)`.
pub fn majorization_check(
    u: &UFunctionSpec,
    x: &[GaussianRational],
    trial_points: usize,
    slack: f64,
) -> Result<MajorizationReport> {
    let phi = u.indicator_at(x)?;
    majorization_check_with(u, x, &phi, trial_points, slack)
}

/// [`majorization_check`] against an arbitrary candidate indicator.
pub fn majorization_check_with(
    u: &UFunctionSpec,
    x: &[GaussianRational],
    phi: &PolyhedralIndicator,
    trial_points: usize,
    slack: f64,
) -> Result<MajorizationReport> {
    check_dim(u.n(), phi.n())?;
    if trial_points == 0 {
        return Err(Error::InvalidArgument(
            "trial_points must be at least 1".into(),
        ));
    }
    let constant = majorant_constant(u, x, majorant_samples(u.n()))?;
    let center: Vec<Complex64> = x.iter().map(GaussianRational::to_complex).collect();
    let mut violations = 0;
    let mut max_excess = f64::NEG_INFINITY;
    for z in halton_ball(&center, trial_points) {
        let uz = u.eval(&z);
        let diff: Vec<Complex64> = z.iter().zip(&center).map(|(a, b)| a - b).collect();
        let bound = phi.eval_big_psi(&diff)? + constant;
        let excess = uz - bound;
        if excess.is_nan() {
            continue;
        }
        if excess > slack {
            violations += 1;
        }
        max_excess = max_excess.max(excess);
    }
    Ok(MajorizationReport {
        points: trial_points,
        constant,
        violations,
        max_excess,
    })
}

/// Polar product grid `{r e^{iθ}}` in each coordinate. Sample radii and
/// angles sit at cell midpoints, so no sample lies on a coordinate axis.
#[derive(Clone, Copy, Debug)]
pub struct PolarGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub radial: usize,
    pub angular: usize,
}

impl PolarGrid {
    /// The annulus `0.5 ≤ |z_k| ≤ 2` used by the tangent checks.
    pub fn annulus() -> Self {
        PolarGrid {
            r_min: 0.5,
            r_max: 2.0,
            radial: 24,
            angular: 48,
        }
    }

    /// The same annulus, coarsened so the product grid over `n`
    /// coordinates stays near 10⁵ points.
    pub fn annulus_for_dim(n: usize) -> Self {
        let (radial, angular) = match n {
            0 | 1 => (24, 48),
            2 => (12, 24),
            3 => (5, 10),
            _ => (3, 6),
        };
        PolarGrid {
            r_min: 0.5,
            r_max: 2.0,
            radial,
            angular,
        }
    }

    fn cells(&self) -> Vec<(Complex64, f64)> {
        let dr = (self.r_max - self.r_min) / self.radial as f64;
        let dth = TAU / self.angular as f64;
        let mut out = Vec::with_capacity(self.radial * self.angular);
        for i in 0..self.radial {
            let r = self.r_min + (i as f64 + 0.5) * dr;
            for j in 0..self.angular {
                let th = (j as f64 + 0.5) * dth;
                out.push((Complex64::from_polar(r, th), r * dr * dth));
            }
        }
        out
    }
}

/// Mean absolute difference, weighted by Lebesgue measure on the grid,
/// between `z ↦ u(x + z^m)/m` and `Ψ_{u,x}(z)`.
pub fn tangent_l1(
    u: &UFunctionSpec,
    x: &[GaussianRational],
    m: u32,
    grid: &PolarGrid,
) -> Result<f64> {
    let n = u.n();
    check_dim(n, x.len())?;
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if grid.radial == 0 || grid.angular == 0 || !(grid.r_min > 0.0 && grid.r_max > grid.r_min) {
        return Err(Error::InvalidArgument(
            "grid must be a nonempty annulus with r_min > 0".into(),
        ));
    }
    let phi = u.indicator_at(x)?;
    let center: Vec<Complex64> = x.iter().map(GaussianRational::to_complex).collect();
    let cells = grid.cells();
    let mut idx = vec![0usize; n];
    let mut z = vec![Complex64::new(0.0, 0.0); n];
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    let mut num = 0.0;
    let mut den = 0.0;
    let inv_m = 1.0 / m as f64;
    loop {
        let mut weight = 1.0;
        for k in 0..n {
            let (zk, wk) = cells[idx[k]];
            z[k] = zk;
            weight *= wk;
            w[k] = center[k] + zk.powu(m);
        }
        let lhs = (u.eval(&w) * inv_m).clamp(-TANGENT_CLIP, TANGENT_CLIP);
        let rhs = phi.eval_big_psi(&z)?.clamp(-TANGENT_CLIP, TANGENT_CLIP);
        num += weight * (lhs - rhs).abs();
        den += weight;

        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < cells.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    Ok(num / den)
}
