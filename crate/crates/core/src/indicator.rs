//! Polyhedral indicators `Ψ(y) = max_{g ∈ G} Σ_k g_k log|y_k|` and their
//! convex images `ψ(t) = max_{g ∈ G} ⟨g, t⟩`.
//!
//! For `u = log|P|` (or `(1/q) log Σ|P_k|^q`) the indicator at a point `x`
//! is generated by the Taylor support `ω_x` of `P` at `x`, unioned over the
//! components of a map. Every quantity exposed here (type, multitype,
//! directional Lelong numbers at infinity and at a point) is an evaluation
//! of `ψ` or a min over the generators.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{check_dim, Error, Result};
use crate::exactpoly::{
    check_supported_dim, Exponent, FloatPoly, GaussianRational, PolyMap, Polynomial,
};
use crate::numericlab::{self, TorusSpec};
use crate::polytope::{hull, RatPoint};

/// Finite generator set `G ⊂ Q₊ⁿ`.
#[derive(Clone)]
pub struct PolyhedralIndicator {
    n: usize,
    generators: BTreeSet<RatPoint>,
    float_gens: Vec<Vec<f64>>,
}

impl PartialEq for PolyhedralIndicator {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.generators == other.generators
    }
}

impl Eq for PolyhedralIndicator {}

impl fmt::Debug for PolyhedralIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyhedralIndicator{{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = g.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, "}}")
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn rat_dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

impl PolyhedralIndicator {
    pub fn new<I>(n: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = RatPoint>,
    {
        check_supported_dim(n)?;
        let generators: BTreeSet<RatPoint> = generators.into_iter().collect();
        if generators.is_empty() {
            return Err(Error::EmptyInput);
        }
        for g in &generators {
            check_dim(n, g.len())?;
            if g.iter().any(|v| v.is_negative()) {
                return Err(Error::InvalidArgument(
                    "indicator generators must be nonnegative".into(),
                ));
            }
        }
        let float_gens = generators
            .iter()
            .map(|g| g.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
            .collect();
        Ok(PolyhedralIndicator {
            n,
            generators,
            float_gens,
        })
    }

    /// Indicator generated by integer exponents.
    pub fn from_exponents<'a, I>(n: usize, exps: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Exponent>,
    {
        Self::new(
            n,
            exps.into_iter()
                .map(|e| e.0.iter().map(|&v| rat(v as i64)).collect()),
        )
    }

    /// Convenience constructor from small integer generators.
    pub fn from_int_generators(n: usize, gens: &[&[i64]]) -> Result<Self> {
        Self::new(n, gens.iter().map(|g| g.iter().map(|&v| rat(v)).collect()))
    }

    /// The indicator of `S_a = max_k a_k⁻¹ log|z_k|`, generators `a_k⁻¹ 1_k`.
    pub fn s_a(a: &[BigRational]) -> Result<Self> {
        if a.iter().any(|v| !v.is_positive()) {
            return Err(Error::NonPositiveDirection);
        }
        let n = a.len();
        Self::new(
            n,
            (0..n).map(|k| {
                let mut g = vec![BigRational::zero(); n];
                g[k] = a[k].recip();
                g
            }),
        )
    }

    /// The indicator of `log|z|`, generators `1_k`.
    pub fn log_norm(n: usize) -> Result<Self> {
        Self::new(
            n,
            (0..n).map(|k| {
                let mut g = vec![BigRational::zero(); n];
                g[k] = rat(1);
                g
            }),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &BTreeSet<RatPoint> {
        &self.generators
    }

    /// Keeps only the vertices of `conv(G)`; `ψ` is unchanged.
    pub fn canonical(&self) -> Self {
        let pts: Vec<RatPoint> = self.generators.iter().cloned().collect();
        let h = hull(&pts).expect("generators share a supported dimension");
        Self::new(self.n, h.vertices().iter().cloned()).expect("vertices of a valid generator set")
    }

    /// Same convex image, i.e. same `conv(G)`.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical() == other.canonical()
    }

    /// `ψ(t)` for rational `t`, exact.
    pub fn eval_psi(&self, t: &[BigRational]) -> Result<BigRational> {
        check_dim(self.n, t.len())?;
        Ok(self
            .generators
            .iter()
            .map(|g| rat_dot(g, t))
            .max()
            .expect("nonempty"))
    }

    /// `ψ(t)` in floating point.
    pub fn eval_psi_f64(&self, t: &[f64]) -> Result<f64> {
        check_dim(self.n, t.len())?;
        Ok(self
            .float_gens
            .iter()
            .map(|g| g.iter().zip(t).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// `Ψ(y) = ψ(log|y_1|, …, log|y_n|)`, extended continuously to points
    /// with zero coordinates: a generator contributes `-∞` exactly when it
    /// has a positive entry at a zero coordinate.
    pub fn eval_big_psi(&self, y: &[Complex64]) -> Result<f64> {
        check_dim(self.n, y.len())?;
        let logs: Vec<f64> = y.iter().map(|v| v.norm().ln()).collect();
        Ok(self.big_psi_from_logs(&logs))
    }

    pub(crate) fn big_psi_from_logs(&self, logs: &[f64]) -> f64 {
        let mut best = f64::NEG_INFINITY;
        'gens: for g in &self.float_gens {
            let mut s = 0.0;
            for (gk, lk) in g.iter().zip(logs) {
                if *gk == 0.0 {
                    continue;
                }
                if *lk == f64::NEG_INFINITY {
                    continue 'gens;
                }
                s += gk * lk;
            }
            best = best.max(s);
        }
        best
    }

    /// Logarithmic type `σ = ψ(1, …, 1)`.
    pub fn sigma(&self) -> BigRational {
        self.eval_psi(&vec![rat(1); self.n]).expect("dimension")
    }

    /// Multitype `(ψ(1_1), …, ψ(1_n))`.
    pub fn multitype(&self) -> Vec<BigRational> {
        (0..self.n)
            .map(|k| {
                self.generators
                    .iter()
                    .map(|g| g[k].clone())
                    .max()
                    .expect("nonempty")
            })
            .collect()
    }

    /// Directional Lelong number at infinity `ν(·, a, ∞) = ψ(a)`.
    pub fn directional_lelong_inf(&self, a: &[BigRational]) -> Result<BigRational> {
        check_dim(self.n, a.len())?;
        if a.iter().any(|v| !v.is_positive()) {
            return Err(Error::NonPositiveDirection);
        }
        self.eval_psi(a)
    }

    /// `min_{g ∈ G} ⟨a, g⟩`: the directional Lelong number at the base point.
    pub fn min_weight(&self, a: &[BigRational]) -> Result<BigRational> {
        check_dim(self.n, a.len())?;
        Ok(self
            .generators
            .iter()
            .map(|g| rat_dot(g, a))
            .min()
            .expect("nonempty"))
    }

    /// Whether `Ψ` is locally bounded off the origin: every nonempty proper
    /// coordinate subset `S` admits a generator vanishing on `S`.
    pub fn is_i0(&self) -> bool {
        let full = (1u32 << self.n) - 1;
        (1..full).all(|mask| {
            self.generators
                .iter()
                .any(|g| (0..self.n).all(|k| mask & (1 << k) == 0 || g[k].is_zero()))
        })
    }

    /// Indicator of `Φ` at `x`: each generator also appears with any subset
    /// of the coordinates where `x_k ≠ 0` zeroed. Equals `Φ` at the origin.
    pub fn positive_closure(&self, x: &[GaussianRational]) -> Result<Self> {
        check_dim(self.n, x.len())?;
        let nonzero: Vec<usize> = (0..self.n).filter(|&k| !x[k].is_zero()).collect();
        let mut out = BTreeSet::new();
        for g in &self.generators {
            for mask in 0u32..(1 << nonzero.len()) {
                let mut h = g.clone();
                for (bit, &k) in nonzero.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        h[k] = BigRational::zero();
                    }
                }
                out.insert(h);
            }
        }
        Self::new(self.n, out)
    }
}

/// Union of the generator sets, reduced to the vertices of their hull.
pub fn sup_combine(list: &[PolyhedralIndicator]) -> Result<PolyhedralIndicator> {
    let first = list.first().ok_or(Error::EmptyInput)?;
    for phi in list {
        check_dim(first.n, phi.n)?;
    }
    let all = list.iter().flat_map(|phi| phi.generators.iter().cloned());
    Ok(PolyhedralIndicator::new(first.n, all)?.canonical())
}

/// `Ψ_{log|p|, x}`, generated by `ω_x(p)`.
pub fn from_polynomial_at(p: &Polynomial, x: &[GaussianRational]) -> Result<PolyhedralIndicator> {
    let support = p.support_at(x)?;
    PolyhedralIndicator::from_exponents(p.n(), support.iter())
}

/// `Ψ_{u, x}` of `u = (1/q) log Σ|P_k|^q`, generated by `∪_k ω_x(P_k)`;
/// independent of `q`.
pub fn from_map_at(m: &PolyMap, x: &[GaussianRational]) -> Result<PolyhedralIndicator> {
    let mut all = BTreeSet::new();
    for p in m.components() {
        all.extend(p.support_at(x)?);
    }
    PolyhedralIndicator::from_exponents(m.n(), all.iter())
}

/// Which function of the polynomial data `u` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    /// `u = log|P|`
    LogAbs(Polynomial),
    /// `u = (1/q) log Σ_k |P_k|^q`
    LogSumQ(PolyMap),
}

/// A function `u` in the logarithmic growth class built from polynomial
/// data, together with a base point.
#[derive(Clone, Debug)]
pub struct UFunctionSpec {
    payload: Payload,
    basepoint: Vec<GaussianRational>,
    fields: Vec<FloatPoly>,
    q: f64,
}

impl UFunctionSpec {
    pub fn log_abs(p: Polynomial, basepoint: Vec<GaussianRational>) -> Result<Self> {
        check_supported_dim(p.n())?;
        check_dim(p.n(), basepoint.len())?;
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let fields = vec![p.to_float()];
        Ok(UFunctionSpec {
            payload: Payload::LogAbs(p),
            basepoint,
            fields,
            q: 1.0,
        })
    }

    pub fn log_sum(m: PolyMap, basepoint: Vec<GaussianRational>) -> Result<Self> {
        check_supported_dim(m.n())?;
        check_dim(m.n(), basepoint.len())?;
        if m.components().iter().any(Polynomial::is_zero) {
            return Err(Error::ZeroPolynomial);
        }
        let fields = m.components().iter().map(Polynomial::to_float).collect();
        let q = m.q().to_f64().unwrap_or(2.0);
        Ok(UFunctionSpec {
            payload: Payload::LogSumQ(m),
            basepoint,
            fields,
            q,
        })
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn n(&self) -> usize {
        self.polynomials()[0].n()
    }

    pub fn basepoint(&self) -> &[GaussianRational] {
        &self.basepoint
    }

    pub fn basepoint_f64(&self) -> Vec<Complex64> {
        self.basepoint
            .iter()
            .map(GaussianRational::to_complex)
            .collect()
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        match &self.payload {
            Payload::LogAbs(p) => std::slice::from_ref(p),
            Payload::LogSumQ(m) => m.components(),
        }
    }

    /// Same function, different base point.
    pub fn with_basepoint(&self, basepoint: Vec<GaussianRational>) -> Result<Self> {
        check_dim(self.n(), basepoint.len())?;
        let mut out = self.clone();
        out.basepoint = basepoint;
        Ok(out)
    }

    /// `u(z)`; `-∞` on the common zero set.
    pub fn eval(&self, z: &[Complex64]) -> f64 {
        if self.fields.len() == 1 {
            return self.fields[0].log_abs(z);
        }
        // (1/q) log Σ exp(q log|P_k|), shifted by the largest term
        let logs: Vec<f64> = self.fields.iter().map(|f| f.log_abs(z)).collect();
        let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return top;
        }
        let s: f64 = logs.iter().map(|l| (self.q * (l - top)).exp()).sum();
        top + s.ln() / self.q
    }

    /// `Ψ_{u,x}` at an arbitrary point.
    pub fn indicator_at(&self, x: &[GaussianRational]) -> Result<PolyhedralIndicator> {
        match &self.payload {
            Payload::LogAbs(p) => from_polynomial_at(p, x),
            Payload::LogSumQ(m) => from_map_at(m, x),
        }
    }

    /// `Ψ_{u,x}` at the base point.
    pub fn indicator(&self) -> Result<PolyhedralIndicator> {
        self.indicator_at(&self.basepoint)
    }
}

/// Directional Lelong number of `u` at `x`: `min_{g ∈ G(u,x)} ⟨a, g⟩`,
/// with `a = (1, …, 1)` by default.
pub fn lelong_at_point(
    u: &UFunctionSpec,
    x: &[GaussianRational],
    a: Option<&[BigRational]>,
) -> Result<BigRational> {
    let phi = u.indicator_at(x)?;
    let ones = vec![rat(1); u.n()];
    let a = a.unwrap_or(&ones);
    if a.iter().any(|v| !v.is_positive()) {
        return Err(Error::NonPositiveDirection);
    }
    phi.min_weight(a)
}

/// `Ψ_u`: generators are all `J ≤ K` componentwise for some exponent `K`
/// of some component, i.e. the `J` with `∂^J P ≢ 0`.
pub fn generic_indicator(u: &UFunctionSpec) -> Result<PolyhedralIndicator> {
    let n = u.n();
    let mut tops: BTreeSet<Exponent> = BTreeSet::new();
    for p in u.polynomials() {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        tops.extend(p.support());
    }
    let mut down: BTreeSet<Exponent> = BTreeSet::new();
    for k in &tops {
        if down.contains(k) {
            continue;
        }
        let mut cur = vec![0u32; n];
        loop {
            down.insert(Exponent(cur.clone()));
            // odometer over the box [0, k]
            let mut i = 0;
            while i < n {
                if cur[i] < k.0[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    PolyhedralIndicator::from_exponents(n, down.iter())
}

/// Estimate of `g'(u, x, 0)`, the maximum of `u` on the unit torus
/// centred at `x`, from `samples` lattice points per axis.
pub fn majorant_constant(u: &UFunctionSpec, x: &[GaussianRational], samples: usize) -> Result<f64> {
    check_dim(u.n(), x.len())?;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let spec = TorusSpec {
        center: x.iter().map(GaussianRational::to_complex).collect(),
        radii_log: vec![0.0; u.n()],
        samples_per_axis: samples,
    };
    Ok(numericlab::torus_max_unchecked(u, &spec))
}
