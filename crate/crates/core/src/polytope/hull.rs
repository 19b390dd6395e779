//! Exact convex hulls of rational point sets in dimensions 1 through 4.
//!
//! Full-dimensional inputs go through a dimension-specific path: interval
//! for n = 1, monotone chain for n = 2, and an incremental beneath-beyond
//! construction over a triangulated boundary for n = 3, 4. Lower-dimensional
//! inputs are projected injectively onto coordinates spanning their affine
//! hull and solved there; their volume is 0.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{check_dim, Error, Result, MAX_DIM};

pub type RatPoint = Vec<BigRational>;

/// Closed halfspace `⟨normal, x⟩ ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: RatPoint,
    pub offset: BigRational,
}

impl Halfspace {
    /// Scales so the first nonzero normal entry has absolute value 1.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.normal.iter().find(|v| !v.is_zero()).map(|v| v.abs()) {
            for v in self.normal.iter_mut() {
                *v = &*v / &lead;
            }
            self.offset = &self.offset / &lead;
        }
        self
    }

    pub fn slack(&self, p: &[BigRational]) -> BigRational {
        &self.offset - dot(&self.normal, p)
    }
}

/// Exact convex polytope given by its extreme points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPolytope {
    n: usize,
    vertices: Vec<RatPoint>,
    volume: BigRational,
    facets: Vec<Halfspace>,
}

impl RatPolytope {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Extreme points in lexicographic order.
    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn volume(&self) -> &BigRational {
        &self.volume
    }

    /// Facet halfspaces; empty when the polytope is not full-dimensional.
    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn is_full_dimensional(&self) -> bool {
        !self.facets.is_empty()
    }

    /// Exact membership test (full-dimensional polytopes only).
    pub fn contains(&self, p: &[BigRational]) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|h| !h.slack(p).is_negative())
    }

    /// Axis-aligned bounding box `(lo, hi)` of the vertices.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = vec![f64::INFINITY; self.n];
        let mut hi = vec![f64::NEG_INFINITY; self.n];
        for v in &self.vertices {
            for k in 0..self.n {
                let x = v[k].to_f64().unwrap_or(0.0);
                lo[k] = lo[k].min(x);
                hi[k] = hi[k].max(x);
            }
        }
        (lo, hi)
    }
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn sub(a: &[BigRational], b: &[BigRational]) -> RatPoint {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Determinant by fraction Gaussian elimination.
pub(crate) fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let d = m.len();
    let mut sign = false;
    let mut acc = BigRational::from_integer(1.into());
    for col in 0..d {
        let Some(piv) = (col..d).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            sign = !sign;
        }
        let pv = m[col][col].clone();
        for r in col + 1..d {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= &f * src;
            }
        }
        acc *= pv;
    }
    if sign {
        -acc
    } else {
        acc
    }
}

fn factorial(d: usize) -> BigRational {
    BigRational::from_integer((1..=d as u64).product::<u64>().into())
}

/// Indices of a maximal affinely independent subset (greedy, in input order)
/// and the pivot coordinates of the echelonized direction space.
fn affine_basis(points: &[RatPoint]) -> (Vec<usize>, Vec<usize>) {
    let n = points[0].len();
    let mut rows: Vec<(usize, RatPoint)> = Vec::new();
    let mut idx = vec![0];
    for (i, p) in points.iter().enumerate().skip(1) {
        if rows.len() == n {
            break;
        }
        let mut v = sub(p, &points[0]);
        for (pc, r) in &rows {
            if !v[*pc].is_zero() {
                let f = &v[*pc] / &r[*pc];
                for k in 0..n {
                    let t = &f * &r[k];
                    v[k] -= t;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            rows.push((pc, v));
            idx.push(i);
        }
    }
    let mut pivots: Vec<usize> = rows.iter().map(|(c, _)| *c).collect();
    pivots.sort_unstable();
    (idx, pivots)
}

struct FullHull {
    vertices: Vec<usize>,
    volume: BigRational,
    facets: Vec<Halfspace>,
}

/// Convex hull of a nonempty rational point set, `1 ≤ n ≤ 4`.
pub fn hull(points: &[RatPoint]) -> Result<RatPolytope> {
    build(points, false)
}

/// Same as [`hull`] but always uses the incremental construction for
/// full-dimensional inputs with `n ≥ 2`, bypassing the planar fast path.
pub fn hull_incremental(points: &[RatPoint]) -> Result<RatPolytope> {
    build(points, true)
}

fn build(points: &[RatPoint], force_incremental: bool) -> Result<RatPolytope> {
    let n = points.first().ok_or(Error::EmptyInput)?.len();
    if n == 0 || n > MAX_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    for p in points {
        check_dim(n, p.len())?;
    }
    let pts: Vec<RatPoint> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (basis, pivots) = affine_basis(&pts);
    let k = pivots.len();

    if k == n {
        let fh = full_hull(&pts, &basis, force_incremental);
        let mut vertices: Vec<RatPoint> = fh.vertices.iter().map(|&i| pts[i].clone()).collect();
        vertices.sort();
        return Ok(RatPolytope {
            n,
            vertices,
            volume: fh.volume,
            facets: fh.facets,
        });
    }

    let mut vertices = if k == 0 {
        vec![pts[0].clone()]
    } else {
        let proj: Vec<RatPoint> = pts
            .iter()
            .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
            .collect();
        // projection is injective on the affine hull, so no collisions and
        // the basis indices stay affinely independent
        let fh = full_hull(&proj, &basis, force_incremental);
        fh.vertices.iter().map(|&i| pts[i].clone()).collect()
    };
    vertices.sort();
    Ok(RatPolytope {
        n,
        vertices,
        volume: BigRational::zero(),
        facets: Vec::new(),
    })
}

fn full_hull(pts: &[RatPoint], basis: &[usize], force_incremental: bool) -> FullHull {
    match pts[0].len() {
        1 => interval(pts),
        2 if !force_incremental => monotone_chain(pts),
        _ => beneath_beyond(pts, basis),
    }
}

fn interval(pts: &[RatPoint]) -> FullHull {
    let lo_i = (0..pts.len())
        .min_by(|&a, &b| pts[a][0].cmp(&pts[b][0]))
        .unwrap();
    let hi_i = (0..pts.len())
        .max_by(|&a, &b| pts[a][0].cmp(&pts[b][0]))
        .unwrap();
    let lo = pts[lo_i][0].clone();
    let hi = pts[hi_i][0].clone();
    let one = BigRational::from_integer(1.into());
    FullHull {
        vertices: vec![lo_i, hi_i],
        volume: &hi - &lo,
        facets: vec![
            Halfspace {
                normal: vec![one.clone()],
                offset: hi,
            },
            Halfspace {
                normal: vec![-one],
                offset: -lo,
            },
        ],
    }
}

fn cross(o: &RatPoint, a: &RatPoint, b: &RatPoint) -> BigRational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn monotone_chain(pts: &[RatPoint]) -> FullHull {
    let mut sorted: Vec<usize> = (0..pts.len()).collect();
    sorted.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    let mut hull: Vec<usize> = Vec::with_capacity(pts.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        let order: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(sorted.iter())
        } else {
            Box::new(sorted.iter().rev())
        };
        for &i in order {
            while hull.len() >= start + 2
                && !cross(
                    &pts[hull[hull.len() - 2]],
                    &pts[hull[hull.len() - 1]],
                    &pts[i],
                )
                .is_positive()
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    let m = hull.len();
    let mut twice_area = BigRational::zero();
    let mut facets = Vec::with_capacity(m);
    for j in 0..m {
        let a = &pts[hull[j]];
        let b = &pts[hull[(j + 1) % m]];
        twice_area += &a[0] * &b[1] - &b[0] * &a[1];
        let normal = vec![&b[1] - &a[1], &a[0] - &b[0]];
        let offset = dot(&normal, a);
        facets.push(Halfspace { normal, offset }.normalized());
    }
    FullHull {
        vertices: hull,
        volume: twice_area / BigRational::from_integer(2.into()),
        facets,
    }
}

struct Facet {
    verts: Vec<usize>,
    plane: Halfspace,
}

/// Hyperplane through `d` points of `R^d`, oriented so `interior` lies
/// strictly on the negative side.
fn facet_plane(pts: &[RatPoint], verts: &[usize], interior: &[BigRational]) -> Halfspace {
    let d = interior.len();
    let p0 = &pts[verts[0]];
    let rows: Vec<RatPoint> = verts[1..].iter().map(|&v| sub(&pts[v], p0)).collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let m = det(minor);
        normal.push(if j % 2 == 0 { m } else { -m });
    }
    let mut offset = dot(&normal, p0);
    if dot(&normal, interior) > offset {
        normal.iter_mut().for_each(|v| *v = -v.clone());
        offset = -offset;
    }
    Halfspace { normal, offset }
}

fn beneath_beyond(pts: &[RatPoint], basis: &[usize]) -> FullHull {
    let d = pts[0].len();
    let denom = BigRational::from_integer((d as i64 + 1).into());
    let interior: RatPoint = (0..d)
        .map(|k| {
            basis
                .iter()
                .fold(BigRational::zero(), |acc, &i| acc + &pts[i][k])
                / &denom
        })
        .collect();

    let mut facets: Vec<Facet> = Vec::new();
    for skip in 0..=d {
        let mut verts: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != skip)
            .map(|(_, &i)| i)
            .collect();
        verts.sort_unstable();
        let plane = facet_plane(pts, &verts, &interior);
        facets.push(Facet { verts, plane });
    }

    let in_basis: BTreeSet<usize> = basis.iter().copied().collect();
    for p in (0..pts.len()).filter(|i| !in_basis.contains(i)) {
        let visible: Vec<bool> = facets
            .iter()
            .map(|f| f.plane.slack(&pts[p]).is_negative())
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (f, _) in facets.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..d {
                let r: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *ridges.entry(r).or_insert(0) += 1;
            }
        }
        let mut kept: Vec<Facet> = facets
            .into_iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| f)
            .collect();
        for (ridge, count) in ridges {
            if count != 1 {
                continue;
            }
            let mut verts = ridge;
            verts.push(p);
            verts.sort_unstable();
            let plane = facet_plane(pts, &verts, &interior);
            kept.push(Facet { verts, plane });
        }
        facets = kept;
    }

    // distinct supporting hyperplanes
    let planes: Vec<Halfspace> = facets
        .iter()
        .map(|f| f.plane.clone().normalized())
        .collect();
    let mut distinct: Vec<Halfspace> = Vec::new();
    for h in &planes {
        if !distinct.contains(h) {
            distinct.push(h.clone());
        }
    }

    // a boundary point is extreme iff its incident facet normals span R^d
    let mut incident: BTreeMap<usize, Vec<&Halfspace>> = BTreeMap::new();
    for (f, h) in facets.iter().zip(&planes) {
        for &v in &f.verts {
            let e = incident.entry(v).or_default();
            if !e.contains(&h) {
                e.push(h);
            }
        }
    }
    let vertices: Vec<usize> = incident
        .into_iter()
        .filter(|(_, hs)| {
            let normals: Vec<RatPoint> = hs.iter().map(|h| h.normal.clone()).collect();
            rank(normals) == d
        })
        .map(|(v, _)| v)
        .collect();

    let apex = &pts[vertices[0]];
    let mut volume = BigRational::zero();
    for f in &facets {
        if f.verts.contains(&vertices[0]) {
            continue;
        }
        let m: Vec<RatPoint> = f.verts.iter().map(|&v| sub(&pts[v], apex)).collect();
        volume += det(m).abs();
    }
    FullHull {
        vertices,
        volume: volume / factorial(d),
        facets: distinct,
    }
}

fn rank(mut rows: Vec<RatPoint>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (dst, src) in rows[i][c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *dst -= &f * src;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}
