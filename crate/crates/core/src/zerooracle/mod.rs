//! Brute-force ground truth: numeric zero counting for planar systems and
//! Monte Carlo volumes.

mod resultant;
mod roots;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, Error, Result};
use crate::exactpoly::{Exponent, FloatPoly, Polynomial};
use crate::polytope::RatPolytope;

pub use resultant::sylvester_resultant;
pub use roots::roots_complex;

/// Residual bound every reported zero satisfies.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Jacobian modulus above which a zero counts as simple.
pub const SIMPLE_TOL: f64 = 1e-6;
/// Distinct zeros are at least this far apart.
pub const DEDUP_RADIUS: f64 = 1e-6;

/// Roots with multiplicity of a univariate polynomial.
pub fn roots_univariate(p: &Polynomial) -> Result<Vec<Complex64>> {
    check_dim(1, p.n())?;
    let d = p.degree_in(0).unwrap_or(0) as usize;
    if p.is_zero() || d == 0 {
        return Err(Error::ZeroDegree(0));
    }
    let mut c = vec![Complex64::new(0.0, 0.0); d + 1];
    for (e, v) in p.terms() {
        c[e.0[0] as usize] = v.to_complex();
    }
    roots_complex(&c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommonZero {
    pub point: Vec<Complex64>,
    /// Sum of the moduli of the equations at `point`.
    pub residual: f64,
    /// Modulus of the Jacobian determinant at `point`.
    pub jacobian_abs: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    pub zeros: Vec<CommonZero>,
    pub count: usize,
    pub certified_simple: bool,
    /// Degree of the univariate eliminant the candidates came from.
    pub eliminant_degree: usize,
}

fn cluster(roots: &[Complex64], radius: f64) -> Vec<Complex64> {
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        match groups
            .iter_mut()
            .find(|(c, k)| (c / *k as f64 - r).norm() < radius)
        {
            Some((c, k)) => {
                *c += r;
                *k += 1;
            }
            None => groups.push((r, 1)),
        }
    }
    groups.into_iter().map(|(c, k)| c / k as f64).collect()
}

/// Roots in `y` of `p(x0, y)`, ignoring leading coefficients that vanish
/// numerically at `x0`.
fn fiber_roots(p: &Polynomial, x0: Complex64) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = p
        .coeffs_in(1)
        .iter()
        .map(|q| q.eval(&[x0, Complex64::new(0.0, 0.0)]).unwrap_or_default())
        .collect();
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut c = coeffs;
    while c.last().is_some_and(|a| a.norm() <= 1e-10 * scale) {
        c.pop();
    }
    if c.len() < 2 {
        return Vec::new();
    }
    roots_complex(&c).unwrap_or_default()
}

fn newton_system(f1: &FloatPoly, f2: &FloatPoly, mut z: [Complex64; 2]) -> [Complex64; 2] {
    let res = |z: &[Complex64; 2]| f1.eval(z).norm() + f2.eval(z).norm();
    let mut best = res(&z);
    for _ in 0..60 {
        let (v1, g1) = f1.eval_grad(&z);
        let (v2, g2) = f2.eval_grad(&z);
        let det = g1[0] * g2[1] - g1[1] * g2[0];
        if det.norm() == 0.0 || best == 0.0 {
            break;
        }
        let dx = (v1 * g2[1] - v2 * g1[1]) / det;
        let dy = (g1[0] * v2 - g2[0] * v1) / det;
        let cand = [z[0] - dx, z[1] - dy];
        let r = res(&cand);
        if r >= best || r.is_nan() {
            break;
        }
        z = cand;
        best = r;
    }
    z
}

/// Isolated common zeros of two polynomials in two variables.
pub fn count_common_zeros_2d(p1: &Polynomial, p2: &Polynomial) -> Result<ZeroSet> {
    check_dim(2, p1.n())?;
    check_dim(2, p2.n())?;
    if p1.is_zero() || p2.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dy1 = p1.degree_in(1).unwrap_or(0);
    let dy2 = p2.degree_in(1).unwrap_or(0);
    let f1 = p1.to_float();
    let f2 = p2.to_float();
    let empty = |d| ZeroSet {
        zeros: Vec::new(),
        count: 0,
        certified_simple: true,
        eliminant_degree: d,
    };
    let eliminant = match (dy1 > 0, dy2 > 0) {
        (true, true) => sylvester_resultant(p1, p2, 1)?,
        (false, _) => p1.clone(),
        (true, false) => p2.clone(),
    };
    let eliminant_degree = eliminant.degree_in(0).unwrap_or(0) as usize;
    if eliminant_degree == 0 {
        // a nonzero constant equation
        return Ok(empty(0));
    }
    let coeffs: Vec<Complex64> = eliminant
        .coeffs_in(0)
        .iter()
        .map(|q| q.coeff(&Exponent(vec![0, 0])).to_complex())
        .collect();
    let xs = cluster(&roots_complex(&coeffs)?, 1e-4);
    if dy1 == 0 && dy2 == 0 {
        // both equations only constrain x: zeros are vertical lines or nothing
        let other = if p2.degree_in(0).unwrap_or(0) == 0 {
            return Ok(empty(eliminant_degree));
        } else {
            &f2
        };
        if xs
            .iter()
            .any(|&x| other.eval(&[x, Complex64::new(0.0, 0.0)]).norm() < RESIDUAL_TOL)
        {
            return Err(Error::CommonComponent);
        }
        return Ok(empty(eliminant_degree));
    }

    let mut zeros: Vec<CommonZero> = Vec::new();
    for x0 in xs {
        let mut ys = fiber_roots(p1, x0);
        ys.extend(fiber_roots(p2, x0));
        for y0 in ys {
            let z = newton_system(&f1, &f2, [x0, y0]);
            let residual = f1.eval(&z).norm() + f2.eval(&z).norm();
            if residual >= RESIDUAL_TOL || residual.is_nan() {
                continue;
            }
            if zeros.iter().any(|w| {
                ((w.point[0] - z[0]).norm_sqr() + (w.point[1] - z[1]).norm_sqr()).sqrt()
                    < DEDUP_RADIUS
            }) {
                continue;
            }
            let (_, g1) = f1.eval_grad(&z);
            let (_, g2) = f2.eval_grad(&z);
            let jacobian_abs = (g1[0] * g2[1] - g1[1] * g2[0]).norm();
            zeros.push(CommonZero {
                point: z.to_vec(),
                residual,
                jacobian_abs,
            });
        }
    }
    zeros.sort_by(|a, b| {
        let k = |z: &CommonZero| (z.point[0].re, z.point[0].im, z.point[1].re, z.point[1].im);
        k(a).partial_cmp(&k(b)).unwrap_or(std::cmp::Ordering::Equal)
    });
    let certified_simple = zeros.iter().all(|z| z.jacobian_abs > SIMPLE_TOL);
    Ok(ZeroSet {
        count: zeros.len(),
        zeros,
        certified_simple,
        eliminant_degree,
    })
}

/// Distinct roots of a univariate polynomial, in the same form as
/// [`count_common_zeros_2d`].
pub fn count_zeros_1d(p: &Polynomial) -> Result<ZeroSet> {
    let roots = roots_univariate(p)?;
    let f = p.to_float();
    let mut zeros: Vec<CommonZero> = Vec::new();
    for z in cluster(&roots, 1e-4) {
        let (v, g) = f.eval_grad(&[z]);
        if v.norm() >= RESIDUAL_TOL
            || v.norm().is_nan()
            || zeros.iter().any(|w| (w.point[0] - z).norm() < DEDUP_RADIUS)
        {
            continue;
        }
        zeros.push(CommonZero {
            point: vec![z],
            residual: v.norm(),
            jacobian_abs: g[0].norm(),
        });
    }
    zeros.sort_by(|a, b| {
        (a.point[0].re, a.point[0].im)
            .partial_cmp(&(b.point[0].re, b.point[0].im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let certified_simple = zeros.iter().all(|z| z.jacobian_abs > SIMPLE_TOL);
    Ok(ZeroSet {
        count: zeros.len(),
        zeros,
        certified_simple,
        eliminant_degree: roots.len(),
    })
}

/// Hit-or-miss volume estimate from `samples` uniform points in the
/// bounding box. Degenerate polytopes give 0.
pub fn monte_carlo_volume(p: &RatPolytope, samples: usize, seed: u64) -> f64 {
    if !p.is_full_dimensional() || samples == 0 {
        return 0.0;
    }
    let (lo, hi) = p.bounding_box();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    if box_volume <= 0.0 || box_volume.is_nan() {
        return 0.0;
    }
    let planes: Vec<(Vec<f64>, f64)> = p
        .facets()
        .iter()
        .map(|h| {
            let n: Vec<f64> = h.normal.iter().map(|v| v.to_f64().unwrap_or(0.0)).collect();
            let o = h.offset.to_f64().unwrap_or(0.0);
            let scale = n.iter().map(|v| v.abs()).sum::<f64>() + o.abs();
            (n, o + 1e-12 * scale)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; lo.len()];
    let mut hits = 0usize;
    for _ in 0..samples {
        for k in 0..x.len() {
            x[k] = rng.gen_range(lo[k]..hi[k]);
        }
        if planes
            .iter()
            .all(|(n, o)| n.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() <= *o)
        {
            hits += 1;
        }
    }
    box_volume * hits as f64 / samples as f64
}
