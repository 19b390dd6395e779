use super::*;
use crate::exactpoly::{origin, PolyMap, Polynomial};
use num_bigint::BigInt;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn i(v: i64) -> BigRational {
    r(v, 1)
}

fn ind(n: usize, gens: &[&[i64]]) -> PolyhedralIndicator {
    PolyhedralIndicator::from_int_generators(n, gens).unwrap()
}

fn poly(n: usize, t: &[(&[u32], i64)]) -> Polynomial {
    Polynomial::from_int_terms(n, t).unwrap()
}

fn dense(n: usize, d: u32) -> Vec<&'static [i64]> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| (0..=d as i64).map(move |k| [v.clone(), vec![k]].concat()))
            .collect();
    }
    out.retain(|v| v.iter().sum::<i64>() <= d as i64);
    out.into_iter()
        .map(|v| &*Box::leak(v.into_boxed_slice()))
        .collect()
}

#[test]
fn theta_plus_examples() {
    let t = theta_plus(&ind(2, &[&[0, 0], &[2, 1], &[1, 2]]));
    assert_eq!(t.vertices().len(), 3);
    assert_eq!(t.volume(), &r(3, 2));
    assert_eq!(theta_plus(&ind(2, &[&[1, 0], &[0, 1]])).volume(), &r(1, 2));
    let s = PolyhedralIndicator::s_a(&[i(2), i(3)]).unwrap();
    let t = theta_plus(&s);
    assert_eq!(t.volume(), &r(1, 12));
    assert!(t.vertices().contains(&vec![r(1, 2), i(0)]));
    assert!(t.vertices().contains(&vec![i(0), r(1, 3)]));
}

#[test]
fn newton_number_examples() {
    for n in 1..=4 {
        assert_eq!(
            newton_number(&PolyhedralIndicator::log_norm(n).unwrap()),
            i(1)
        );
    }
    let s = PolyhedralIndicator::s_a(&[i(2), i(3)]).unwrap();
    assert_eq!(newton_number(&s), r(1, 6));
    assert_eq!(newton_number(&ind(2, &[&[0, 0], &[2, 1], &[1, 2]])), i(3));
}

#[test]
fn dense_newton_number_is_bezout() {
    for n in 1..=4usize {
        for d in 1..=3u32 {
            let phi = ind(n, &dense(n, d));
            assert_eq!(
                newton_number(&phi),
                i((d as i64).pow(n as u32)),
                "n={n} d={d}"
            );
        }
    }
}

#[test]
fn mass_examples() {
    let m = mass_decomposition(&ind(2, &[&[1, 0], &[0, 1]])).unwrap();
    assert_eq!(
        (m.total, m.tau_prime, m.tau_doubleprime),
        (i(1), i(1), i(0))
    );
    let m = mass_decomposition(&ind(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
    assert_eq!(
        (m.total, m.tau_prime, m.tau_doubleprime),
        (i(2), i(0), i(2))
    );
    let m = mass_decomposition(&ind(2, &[&[0, 0]])).unwrap();
    assert_eq!(
        (m.total, m.tau_prime, m.tau_doubleprime),
        (i(0), i(0), i(0))
    );
    assert_eq!(mass_decomposition(&ind(2, &[&[1, 1]])), Err(Error::NotInI0));
}

#[test]
fn directional_examples() {
    let a = [i(2), i(3)];
    let s = PolyhedralIndicator::s_a(&a).unwrap();
    assert_eq!(directional_bound(&s, &a).unwrap(), r(1, 6));
    let phi = ind(2, &[&[0, 0], &[2, 1], &[1, 2]]);
    assert_eq!(directional_bound(&phi, &[i(1), i(1)]).unwrap(), i(9));
    assert_eq!(directional_bound(&phi, &[i(1), i(2)]).unwrap(), r(25, 2));
    assert_eq!(
        directional_bound(&phi, &[i(0), i(1)]),
        Err(Error::NonPositiveDirection)
    );
    assert!(directional_bound(&phi, &[i(1)]).is_err());
}

#[test]
fn multitype_examples() {
    assert_eq!(multitype_bound(&ind(2, &[&[0, 0], &[2, 1], &[1, 2]])), i(8));
    assert_eq!(multitype_bound(&ind(2, &dense(2, 3))), i(18));
    assert_eq!(
        multitype_bound(&PolyhedralIndicator::log_norm(3).unwrap()),
        i(6)
    );
}

#[test]
fn bound_chain_examples() {
    let m = PolyMap::with_default_q(vec![
        poly(2, &[(&[2, 1], 1), (&[0, 0], -1)]),
        poly(2, &[(&[1, 2], 1), (&[0, 0], -1)]),
    ])
    .unwrap();
    let c = bound_chain(&UFunctionSpec::log_sum(m, origin(2)).unwrap()).unwrap();
    // downward closure of {(2,1),(1,2)} has hull area 7/2
    assert_eq!((c.at_basepoint, c.generic, c.multitype), (i(3), i(7), i(8)));

    let m = PolyMap::with_default_q(vec![
        poly(
            2,
            &[
                (&[0, 0], 1),
                (&[1, 0], 2),
                (&[0, 1], -1),
                (&[2, 0], 3),
                (&[1, 1], 1),
                (&[0, 2], -2),
            ],
        ),
        poly(
            2,
            &[
                (&[0, 0], -3),
                (&[1, 0], 1),
                (&[0, 1], 1),
                (&[2, 0], -1),
                (&[1, 1], 2),
                (&[0, 2], 1),
            ],
        ),
    ])
    .unwrap();
    let c = bound_chain(&UFunctionSpec::log_sum(m, origin(2)).unwrap()).unwrap();
    assert_eq!((c.at_basepoint, c.generic, c.multitype), (i(4), i(4), i(8)));

    let m = PolyMap::with_default_q(vec![poly(3, &[(&[1, 2, 0], 1)])]).unwrap();
    let c = bound_chain(&UFunctionSpec::log_sum(m, origin(3)).unwrap()).unwrap();
    assert!(c.is_nondecreasing());
}

fn shoelace(pts: &[RatPoint]) -> BigRational {
    // pts in cyclic order
    let mut s = BigRational::zero();
    for k in 0..pts.len() {
        let (a, b) = (&pts[k], &pts[(k + 1) % pts.len()]);
        s += &a[0] * &b[1] - &a[1] * &b[0];
    }
    s.abs() / i(2)
}

#[test]
fn generic_chain_oracle_shoelace() {
    let ring = vec![
        vec![i(0), i(0)],
        vec![i(2), i(0)],
        vec![i(2), i(1)],
        vec![i(1), i(2)],
        vec![i(0), i(2)],
    ];
    assert_eq!(shoelace(&ring) * i(2), i(7));
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (0i64..=12, 1i64..=4).prop_map(|(p, q)| r(p, q))
}

fn pos_rat() -> impl Strategy<Value = BigRational> {
    (1i64..=12, 1i64..=4).prop_map(|(p, q)| r(p, q))
}

fn indicator_strategy() -> impl Strategy<Value = PolyhedralIndicator> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(small_rat(), n), 1..7)
            .prop_map(move |g| PolyhedralIndicator::new(n, g).unwrap())
    })
}

fn indicator_2d() -> impl Strategy<Value = PolyhedralIndicator> {
    prop::collection::vec(prop::collection::vec(small_rat(), 2), 1..8)
        .prop_map(|g| PolyhedralIndicator::new(2, g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_box(phi in indicator_strategy()) {
        let mt = phi.multitype();
        for v in theta_plus(&phi).vertices() {
            for (a, s) in v.iter().zip(&mt) {
                prop_assert!(!a.is_negative() && a <= s);
            }
        }
    }

    #[test]
    fn volume_monotone(phi in indicator_strategy(), extra in prop::collection::vec(small_rat(), 3)) {
        let n = phi.n();
        let mut g: Vec<RatPoint> = phi.generators().iter().cloned().collect();
        g.push(extra[..n].to_vec());
        let bigger = PolyhedralIndicator::new(n, g).unwrap();
        prop_assert!(theta_plus(&phi).volume() <= theta_plus(&bigger).volume());
    }

    #[test]
    fn directional_dominates_newton(phi in indicator_strategy(), a in prop::collection::vec(pos_rat(), 3)) {
        let a = &a[..phi.n()];
        prop_assert!(directional_bound(&phi, a).unwrap() >= newton_number(&phi));
    }

    #[test]
    fn multitype_dominates_newton(phi in indicator_strategy()) {
        prop_assert!(multitype_bound(&phi) >= newton_number(&phi));
    }

    #[test]
    fn maximum_principle(
        phi in indicator_2d(),
        z0 in prop::collection::vec((1.05f64..20.0, 0.0f64..6.3), 2),
        z in prop::collection::vec((0.01f64..50.0, 0.0f64..6.3), 2),
    ) {
        use num_complex::Complex64;
        let z0: Vec<Complex64> = z0.iter().map(|&(m, a)| Complex64::from_polar(m, a)).collect();
        let z: Vec<Complex64> = z.iter().map(|&(m, a)| Complex64::from_polar(m, a)).collect();
        let sup = z.iter().zip(&z0)
            .map(|(w, w0)| w.norm().ln().max(0.0) / w0.norm().ln())
            .fold(0.0f64, f64::max);
        let lhs = phi.eval_big_psi(&z).unwrap();
        let rhs = phi.eval_big_psi(&z0).unwrap() * sup;
        prop_assert!(lhs <= rhs + 1e-9, "{} > {}", lhs, rhs);
    }

    #[test]
    fn mass_sums_exactly(phi in indicator_strategy()) {
        if phi.is_i0() {
            let m = mass_decomposition(&phi).unwrap();
            prop_assert!(!m.tau_prime.is_negative() && !m.tau_doubleprime.is_negative());
            prop_assert_eq!(&m.tau_prime + &m.tau_doubleprime, newton_number(&phi));
        } else {
            prop_assert_eq!(mass_decomposition(&phi), Err(Error::NotInI0));
        }
    }

    #[test]
    fn theta_plus_is_support_domination(
        phi in indicator_2d(),
        a in prop::collection::vec((-4i64..=40, 1i64..=4).prop_map(|(p, q)| r(p, q)), 2),
        ts in prop::collection::vec(prop::collection::vec((-8i64..=8, 1i64..=3).prop_map(|(p, q)| r(p, q)), 2), 64),
    ) {
        // ⟨a,t⟩ ≤ max(ψ(t), 0) for every t iff a ∈ conv(G ∪ {0}); check one direction
        // on samples and the other on the facet normals.
        let t = theta_plus(&phi);
        let dominated_on_samples = ts.iter().all(|t| {
            let lhs = hull_dot(&a, t);
            let rhs = phi.eval_psi(t).unwrap().max(BigRational::zero());
            lhs <= rhs
        });
        let dominated_on_facets = t.facets().iter().all(|h| {
            let lhs = hull_dot(&a, &h.normal);
            let rhs = phi.eval_psi(&h.normal).unwrap().max(BigRational::zero());
            lhs <= rhs
        });
        if t.contains(&a) {
            prop_assert!(dominated_on_samples && dominated_on_facets);
        } else if t.is_full_dimensional() {
            prop_assert!(!dominated_on_facets);
        }
    }

    #[test]
    fn hull_idempotent(pts in prop::collection::vec(prop::collection::vec(small_rat(), 3), 1..10)) {
        let p = hull(&pts).unwrap();
        let q = hull(p.vertices()).unwrap();
        prop_assert_eq!(p.vertices(), q.vertices());
        prop_assert_eq!(p.volume(), q.volume());
    }

    #[test]
    fn planar_fast_path_matches_incremental(pts in prop::collection::vec(prop::collection::vec(small_rat(), 2), 1..12)) {
        let a = hull(&pts).unwrap();
        let b = hull_incremental(&pts).unwrap();
        prop_assert_eq!(a.vertices(), b.vertices());
        prop_assert_eq!(a.volume(), b.volume());
    }
}

fn hull_dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
