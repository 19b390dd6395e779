use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::exactpoly::{Exponent, GaussianRational, Polynomial};

/// Dense univariate polynomial over `Q(i)`, index = degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct UPoly(pub Vec<GaussianRational>);

impl UPoly {
    fn trimmed(mut v: Vec<GaussianRational>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        UPoly(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly(Vec::new());
        }
        let mut out = vec![GaussianRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::trimmed(out)
    }

    fn sub(&self, o: &UPoly) -> UPoly {
        let len = self.0.len().max(o.0.len());
        let z = GaussianRational::zero();
        UPoly::trimmed(
            (0..len)
                .map(|k| self.0.get(k).unwrap_or(&z) - o.0.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    /// Quotient of a division known to be exact.
    fn div_exact(&self, d: &UPoly) -> UPoly {
        if self.is_zero() {
            return UPoly(Vec::new());
        }
        let mut rem = self.0.clone();
        let dl = d.0.len();
        let inv = d.0[dl - 1].inv().expect("nonzero divisor");
        let mut q = vec![GaussianRational::zero(); rem.len() + 1 - dl];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dl - 1] * &inv;
            for (j, dj) in d.0.iter().enumerate() {
                rem[k + j] -= &(&c * dj);
            }
            q[k] = c;
        }
        debug_assert!(rem.iter().all(Zero::is_zero));
        UPoly::trimmed(q)
    }

    fn from_poly(p: &Polynomial, keep: usize) -> UPoly {
        let d = p.degree_in(keep).unwrap_or(0) as usize;
        let mut v = vec![GaussianRational::zero(); d + 1];
        for (e, c) in p.terms() {
            v[e.0[keep] as usize] += c;
        }
        UPoly::trimmed(v)
    }

    pub(crate) fn into_poly(self, n: usize, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(n);
        for (k, c) in self.0.into_iter().enumerate() {
            let mut e = vec![0u32; n];
            e[var] = k as u32;
            out = out
                .add(&Polynomial::monomial(Exponent(e), c))
                .expect("same dimension");
        }
        out
    }
}

/// Fraction-free (Bareiss) determinant of a square matrix over `Q(i)[x]`.
fn bareiss(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let size = m.len();
    let mut sign = false;
    let mut prev = UPoly(vec![GaussianRational::from_int(1)]);
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return UPoly(Vec::new()),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[size - 1][size - 1].clone();
    if sign {
        UPoly(Vec::new()).sub(&d)
    } else {
        d
    }
}

/// `Res_{z_eliminate}(p1, p2)` as a bivariate polynomial that only depends
/// on the remaining variable.
pub fn sylvester_resultant(
    p1: &Polynomial,
    p2: &Polynomial,
    eliminate: usize,
) -> Result<Polynomial> {
    check_dim(2, p1.n())?;
    check_dim(2, p2.n())?;
    if eliminate > 1 {
        return Err(Error::InvalidArgument(format!(
            "variable index {eliminate} out of range"
        )));
    }
    let keep = 1 - eliminate;
    let rows = |p: &Polynomial| -> Result<Vec<UPoly>> {
        let c = p.coeffs_in(eliminate);
        if c.len() < 2 || p.is_zero() {
            return Err(Error::ZeroDegree(eliminate));
        }
        Ok(c.iter().rev().map(|q| UPoly::from_poly(q, keep)).collect())
    };
    let (a, b) = (rows(p1)?, rows(p2)?);
    let (m, k) = (a.len() - 1, b.len() - 1);
    let size = m + k;
    let mut mat = vec![vec![UPoly(Vec::new()); size]; size];
    for r in 0..k {
        for (j, c) in a.iter().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in b.iter().enumerate() {
            mat[k + r][r + j] = c.clone();
        }
    }
    let det = bareiss(mat);
    if det.is_zero() {
        return Err(Error::CommonComponent);
    }
    Ok(det.into_poly(2, keep))
}
