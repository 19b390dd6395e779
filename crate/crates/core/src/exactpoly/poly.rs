use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use crate::error::{check_dim, Error, Result, MAX_DIM};

/// A monomial exponent `J ∈ Z₊ⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    /// The unit exponent `1_k`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        Exponent(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le_all(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl<const N: usize> From<[u32; N]> for Exponent {
    fn from(v: [u32; N]) -> Self {
        Exponent(v.to_vec())
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Sparse polynomial in `n` variables with Gaussian rational coefficients.
///
/// Terms with zero coefficient are never stored, so the zero polynomial is
/// the empty map and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Exponent, GaussianRational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::monomial(Exponent::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussianRational::one())
    }

    pub fn monomial(e: Exponent, c: GaussianRational) -> Self {
        let n = e.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Polynomial { n, terms }
    }

    /// The coordinate function `z_k`.
    pub fn var(n: usize, k: usize) -> Self {
        Self::monomial(Exponent::unit(n, k), GaussianRational::one())
    }

    /// Builds a polynomial from (exponent, coefficient) pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, GaussianRational)>,
    {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            check_dim(n, e.dim())?;
            p.add_term(e, &c);
        }
        Ok(p)
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_terms(n: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        Self::from_terms(
            n,
            terms
                .iter()
                .map(|(e, c)| (Exponent(e.to_vec()), GaussianRational::from_int(*c))),
        )
    }

    fn add_term(&mut self, e: Exponent, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exponent) -> GaussianRational {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn support(&self) -> BTreeSet<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.n, other.n)?;
        let mut out = Polynomial::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.n);
        for _ in 0..e {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// Degree in variable `k`; `None` for the zero polynomial.
    pub fn degree_in(&self, k: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.0[k]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::total).max()
    }

    /// `(d_1, …, d_n)` with `d_k` the degree in `z_k`.
    pub fn partial_degrees(&self) -> Result<Vec<u32>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok((0..self.n)
            .map(|k| self.degree_in(k).unwrap_or(0))
            .collect())
    }

    /// Coefficients of `self` viewed as a polynomial in `z_k`: entry `j` is
    /// the coefficient of `z_k^j`, a polynomial with exponent `k` cleared.
    pub fn coeffs_in(&self, k: usize) -> Vec<Polynomial> {
        let d = self.degree_in(k).unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(self.n); d + 1];
        for (e, c) in &self.terms {
            let j = e.0[k] as usize;
            let mut rest = e.clone();
            rest.0[k] = 0;
            out[j].add_term(rest, c);
        }
        out
    }

    /// Returns `q` with `q(s) = p(x0 + s)`.
    ///
    /// The shift is applied one variable at a time; for each variable the
    /// terms are grouped by their remaining exponents and the dense
    /// univariate coefficient vector is shifted in place by the Horner
    /// (Pascal triangle) scheme.
    pub fn taylor_shift(&self, x0: &[GaussianRational]) -> Result<Polynomial> {
        check_dim(self.n, x0.len())?;
        let mut cur = self.clone();
        for (k, a) in x0.iter().enumerate() {
            if a.is_zero() || cur.is_zero() {
                continue;
            }
            let mut groups: BTreeMap<Exponent, Vec<GaussianRational>> = BTreeMap::new();
            for (e, c) in &cur.terms {
                let j = e.0[k] as usize;
                let mut rest = e.clone();
                rest.0[k] = 0;
                let v = groups.entry(rest).or_default();
                if v.len() <= j {
                    v.resize(j + 1, GaussianRational::zero());
                }
                v[j] = c.clone();
            }
            let mut next = Polynomial::zero(self.n);
            for (rest, mut c) in groups {
                let d = c.len() - 1;
                for i in 0..d {
                    for j in (i..d).rev() {
                        let t = a * &c[j + 1];
                        c[j] += &t;
                    }
                }
                for (j, cj) in c.into_iter().enumerate() {
                    let mut e = rest.clone();
                    e.0[k] = j as u32;
                    next.add_term(e, &cj);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// The set `ω_x` of exponents `J` with `∂^J p(x0) ≠ 0`.
    pub fn support_at(&self, x0: &[GaussianRational]) -> Result<BTreeSet<Exponent>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.taylor_shift(x0)?.support())
    }

    pub fn eval_exact(&self, z: &[GaussianRational]) -> Result<GaussianRational> {
        check_dim(self.n, z.len())?;
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (zk, &ek) in z.iter().zip(&e.0) {
                if ek > 0 {
                    t *= &zk.pow(ek);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        check_dim(self.n, z.len())?;
        Ok(self.to_float().eval(z))
    }

    pub fn to_float(&self) -> FloatPoly {
        FloatPoly::new(self)
    }

    /// Renders the polynomial in the system-file expression syntax using
    /// the given variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(|(k, &d)| {
                        if d == 1 {
                            names[k].to_string()
                        } else {
                            format!("{}^{}", names[k], d)
                        }
                    })
                    .collect();
            if idx > 0 {
                out.push_str(" + ");
            }
            if mono.is_empty() {
                out.push_str(&c.to_string());
            } else if c.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", c, mono.join("*")));
            }
        }
        out
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|k| format!("x{k}")).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.display_with(&refs))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[n={}]({})", self.n, self)
    }
}

/// Floating-point copy of a polynomial for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    n: usize,
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl FloatPoly {
    pub fn new(p: &Polynomial) -> Self {
        FloatPoly {
            n: p.n,
            terms: p
                .terms
                .iter()
                .map(|(e, c)| (e.0.clone(), c.to_complex()))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        debug_assert_eq!(z.len(), self.n);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = *c;
            for (zk, &ek) in z.iter().zip(e) {
                if ek > 0 {
                    t *= zk.powu(ek);
                }
            }
            acc += t;
        }
        acc
    }

    /// Value and gradient at `z`.
    pub fn eval_grad(&self, z: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        let mut val = Complex64::new(0.0, 0.0);
        let mut grad = vec![Complex64::new(0.0, 0.0); self.n];
        for (e, c) in &self.terms {
            let pows: Vec<Complex64> = z.iter().zip(e).map(|(zk, &ek)| zk.powu(ek)).collect();
            val += c * pows.iter().product::<Complex64>();
            for k in 0..self.n {
                if e[k] == 0 {
                    continue;
                }
                let mut t = c * e[k] as f64 * z[k].powu(e[k] - 1);
                for (j, pj) in pows.iter().enumerate() {
                    if j != k {
                        t *= pj;
                    }
                }
                grad[k] += t;
            }
        }
        (val, grad)
    }

    /// `log|p(z)|` evaluated with every term rescaled by the largest
    /// `|c_J z^J|`, so huge `|z|` does not overflow.
    pub fn log_abs(&self, z: &[Complex64]) -> f64 {
        let logs: Vec<f64> = z.iter().map(|v| v.norm().ln()).collect();
        let args: Vec<f64> = z.iter().map(|v| v.arg()).collect();
        let mut top = f64::NEG_INFINITY;
        let mut mags = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut m = c.norm().ln();
            for (lk, &ek) in logs.iter().zip(e) {
                if ek > 0 {
                    m += ek as f64 * lk;
                }
            }
            top = top.max(m);
            mags.push(m);
        }
        if top == f64::NEG_INFINITY {
            return top;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for ((e, c), m) in self.terms.iter().zip(mags) {
            if m == f64::NEG_INFINITY {
                continue;
            }
            let phase: f64 = c.arg()
                + e.iter()
                    .zip(&args)
                    .map(|(&ek, a)| ek as f64 * a)
                    .sum::<f64>();
            acc += Complex64::from_polar((m - top).exp(), phase);
        }
        top + acc.norm().ln()
    }

    /// Sum of `|c_J| |z^J|`; the natural scale for residuals at `z`.
    pub fn abs_scale(&self, z: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                c.norm()
                    * z.iter()
                        .zip(e)
                        .map(|(zk, &ek)| zk.norm().powi(ek as i32))
                        .product::<f64>()
            })
            .sum()
    }
}

/// Checks that an ambient dimension is within `1..=4`.
pub fn check_supported_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(())
}
