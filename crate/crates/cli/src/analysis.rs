//! Runs the library operations on a parsed system and collects the
//! results in a [`SystemReport`].

use indicatrix::exactpoly::{GaussianRational, PolyMap};
use indicatrix::indicator::{
    generic_indicator, lelong_at_point, PolyhedralIndicator, UFunctionSpec,
};
use indicatrix::numericlab::{
    majorization_check, psi_estimate, tangent_l1, PolarGrid, DEFAULT_SCHEDULE,
};
use indicatrix::polytope::{
    bound_chain, directional_bound, mass_decomposition, newton_number, theta_plus, BoundChain,
    MassReport, RatPolytope,
};
use indicatrix::zerooracle::{count_common_zeros_2d, count_zeros_1d, ZeroSet};
use indicatrix::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::parse::SystemFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Indicator,
    Newton,
    Bounds,
    Zeros,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Indicator => "indicator",
            Command::Newton => "newton",
            Command::Bounds => "bounds",
            Command::Zeros => "zeros",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SystemReport {
    pub file: String,
    pub system: SystemFile,
    pub basepoint: Vec<GaussianRational>,
    pub indicator: PolyhedralIndicator,
    pub theta: Option<RatPolytope>,
    pub newton_number: Option<BigRational>,
    pub mass: Option<MassReport>,
    pub chain: Option<BoundChain>,
    pub directional: Vec<(Vec<BigRational>, BigRational)>,
    pub zeros: Option<ZeroSet>,
    pub checks: Vec<Check>,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Tuning of the numeric checks run by `verify`.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub directions: usize,
    pub majorization_points: usize,
    pub majorization_slack: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 2024,
            directions: 100,
            majorization_points: 10_000,
            majorization_slack: 1e-6,
        }
    }
}

/// The plurisubharmonic function of a system: `log|P|` for one polynomial,
/// the `q`-norm form for several.
pub fn u_function(sys: &SystemFile, at: &[GaussianRational]) -> Result<UFunctionSpec, Error> {
    let polys = sys.polys();
    if polys.len() == 1 {
        UFunctionSpec::log_abs(polys[0].clone(), at.to_vec())
    } else {
        UFunctionSpec::log_sum(PolyMap::new(polys, sys.q.clone())?, at.to_vec())
    }
}

/// Lattice points `p/q`, `p ∈ 1..=12`, `q ∈ 1..=4`.
pub fn random_direction(rng: &mut impl Rng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| {
            BigRational::new(
                BigInt::from(rng.gen_range(1..=12)),
                BigInt::from(rng.gen_range(1..=4)),
            )
        })
        .collect()
}

/// Oracle zero count; `None` when the oracle does not apply.
pub fn zeros_of(sys: &SystemFile) -> Result<Option<ZeroSet>, Error> {
    let polys = sys.polys();
    match (sys.n(), polys.len()) {
        (1, 1) => Ok(Some(count_zeros_1d(&polys[0])?)),
        (2, 2) => Ok(Some(count_common_zeros_2d(&polys[0], &polys[1])?)),
        _ => Ok(None),
    }
}

pub fn psi_samples(n: usize) -> usize {
    match n {
        1 => 64,
        2 => 32,
        3 => 12,
        _ => 8,
    }
}

/// Sum over zeros of `ν(u, a)ⁿ`; `None` if some multiplicity is unknown.
pub fn dyson_sum(sys: &SystemFile, zs: &ZeroSet) -> Result<Option<BigRational>, Error> {
    let n = sys.n();
    let u = u_function(sys, &vec![GaussianRational::zero(); n])?;
    let mut total = BigRational::zero();
    for z in &zs.zeros {
        let mut nu = None;
        for den in 1..=12i64 {
            let exact: Vec<GaussianRational> = z
                .point
                .iter()
                .map(|c| GaussianRational::round_from(*c, den))
                .collect();
            let close = exact
                .iter()
                .zip(&z.point)
                .all(|(e, c)| (e.to_complex() - c).norm() < 1e-9);
            if close
                && u.polynomials()
                    .iter()
                    .all(|p| p.eval_exact(&exact).map(|v| v.is_zero()).unwrap_or(false))
            {
                nu = Some(lelong_at_point(&u, &exact, None)?);
                break;
            }
        }
        let nu = match nu {
            Some(v) => v,
            None if z.jacobian_abs > indicatrix::zerooracle::SIMPLE_TOL => {
                BigRational::from_integer(1.into())
            }
            None => return Ok(None),
        };
        total += num_traits::pow(nu, n);
    }
    Ok(Some(total))
}

/// One ψ cross-check: `(estimate at the largest radius, exact value,
/// estimates nondecreasing)`.
pub fn psi_agreement(
    u: &UFunctionSpec,
    phi: &PolyhedralIndicator,
    t: &[BigRational],
) -> Result<(f64, f64, bool), Error> {
    let est = psi_estimate(u, u.basepoint(), t, &DEFAULT_SCHEDULE, psi_samples(u.n()))?;
    let exact = phi.eval_psi(t)?.to_f64().unwrap_or(f64::NAN);
    let monotone = est.windows(2).all(|w| w[1] >= w[0] - 1e-9);
    Ok((*est.last().expect("nonempty schedule"), exact, monotone))
}

/// Tolerance of the ψ cross-check.
pub fn psi_tolerance(exact: f64) -> f64 {
    (0.02 * exact.abs()).max(0.05)
}

/// `true` if `d` decreases except for at most one step that grows by ≤ 10%.
pub fn nearly_decreasing(d: &[f64]) -> bool {
    let mut bumps = 0;
    for w in d.windows(2) {
        if w[1] > w[0] {
            if w[1] > w[0] * 1.1 + 1e-12 {
                return false;
            }
            bumps += 1;
        }
    }
    bumps <= 1
}

pub fn analyze(
    file: &str,
    sys: &SystemFile,
    cmd: Command,
    at: Option<&[GaussianRational]>,
    dirs: &[Vec<BigRational>],
    cfg: &VerifyConfig,
) -> Result<SystemReport, Error> {
    let n = sys.n();
    let x: Vec<GaussianRational> = at
        .map(<[_]>::to_vec)
        .unwrap_or_else(|| sys.basepoint.clone());
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let u = u_function(sys, &x)?;
    let phi = u.indicator()?;
    let mut rep = SystemReport {
        file: file.to_string(),
        system: sys.clone(),
        basepoint: x.clone(),
        indicator: phi.clone(),
        theta: None,
        newton_number: None,
        mass: None,
        chain: None,
        directional: Vec::new(),
        zeros: None,
        checks: Vec::new(),
    };
    if cmd == Command::Indicator {
        return Ok(rep);
    }
    if matches!(cmd, Command::Newton | Command::Bounds | Command::Verify) {
        rep.theta = Some(theta_plus(&phi));
        rep.newton_number = Some(newton_number(&phi));
        rep.mass = mass_decomposition(&phi).ok();
    }
    if matches!(cmd, Command::Bounds | Command::Verify) {
        for d in dirs {
            rep.directional
                .push((d.clone(), directional_bound(&phi, d)?));
        }
    }
    if cmd == Command::Bounds {
        rep.chain = Some(bound_chain(&u)?);
    }
    if cmd == Command::Zeros {
        rep.zeros = zeros_of(sys)?;
        if rep.zeros.is_none() {
            if n > 2 {
                return Err(Error::UnsupportedDimension(n));
            }
            return Err(Error::InvalidArgument(format!(
                "the zero oracle needs {n} equations in {n} variables"
            )));
        }
    }
    if cmd == Command::Verify {
        verify_into(&mut rep, &u, cfg)?;
    }
    Ok(rep)
}

fn verify_into(rep: &mut SystemReport, u: &UFunctionSpec, cfg: &VerifyConfig) -> Result<(), Error> {
    let sys = rep.system.clone();
    let n = sys.n();
    let phi = rep.indicator.clone();
    let n0 = rep.newton_number.clone().expect("computed for verify");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = Vec::new();

    // chain of mass bounds
    let g = generic_indicator(u)?;
    let chain = BoundChain {
        at_basepoint: n0.clone(),
        generic: newton_number(&g),
        multitype: indicatrix::polytope::multitype_bound(&g),
    };
    checks.push(Check {
        name: "chain",
        passed: chain.is_nondecreasing(),
        detail: format!(
            "{} <= {} <= {}",
            chain.at_basepoint, chain.generic, chain.multitype
        ),
    });

    if let Some(m) = &rep.mass {
        checks.push(Check {
            name: "mass",
            passed: &m.tau_prime + &m.tau_doubleprime == m.total && m.total == n0,
            detail: format!("{} + {} = {}", m.tau_prime, m.tau_doubleprime, m.total),
        });
    }

    let zeros = zeros_of(&sys)?;
    if let Some(zs) = &zeros {
        let count = BigRational::from_integer(zs.count.into());
        checks.push(Check {
            name: "kouchnirenko",
            passed: count <= n0,
            detail: format!(
                "{} zeros{} <= {}",
                zs.count,
                if zs.certified_simple {
                    ""
                } else {
                    " (not all simple)"
                },
                n0
            ),
        });
        match dyson_sum(&sys, zs)? {
            Some(s) => checks.push(Check {
                name: "dyson",
                passed: s <= chain.multitype,
                detail: format!("sum nu^{n} = {s} <= {}", chain.multitype),
            }),
            None => checks.push(Check {
                name: "dyson",
                passed: true,
                detail: "skipped: a non-simple zero has no exact representative".into(),
            }),
        }
    }
    rep.chain = Some(chain);

    let mut worst: Option<(Vec<BigRational>, BigRational)> = None;
    for _ in 0..cfg.directions {
        let a = random_direction(&mut rng, n);
        let b = directional_bound(&phi, &a)?;
        if b < n0 && worst.is_none() {
            worst = Some((a, b));
        }
    }
    for (a, b) in &rep.directional {
        if *b < n0 && worst.is_none() {
            worst = Some((a.clone(), b.clone()));
        }
    }
    checks.push(Check {
        name: "directional",
        passed: worst.is_none(),
        detail: match &worst {
            None => format!(
                "{} directions, all bounds >= {}",
                cfg.directions + rep.directional.len(),
                n0
            ),
            Some((a, b)) => format!("bound {} < {} at {}", b, n0, fmt_rats(a)),
        },
    });

    let maj = majorization_check(
        u,
        &rep.basepoint,
        cfg.majorization_points,
        cfg.majorization_slack,
    )?;
    checks.push(Check {
        name: "majorization",
        passed: maj.violations == 0,
        detail: format!(
            "{} violations in {} points, C = {:.6}, max excess {:.3e}",
            maj.violations, maj.points, maj.constant, maj.max_excess
        ),
    });

    let grid = PolarGrid::annulus_for_dim(n);
    let d = [1u32, 2, 4, 8, 16]
        .iter()
        .map(|&m| tangent_l1(u, &rep.basepoint, m, &grid))
        .collect::<Result<Vec<f64>, _>>()?;
    checks.push(Check {
        name: "tangent",
        passed: nearly_decreasing(&d),
        detail: d
            .iter()
            .map(|v| format!("{v:.4}"))
            .collect::<Vec<_>>()
            .join(" "),
    });

    rep.zeros = zeros;
    rep.checks = checks;
    Ok(())
}

pub fn fmt_rats(v: &[BigRational]) -> String {
    format!(
        "({})",
        v.iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    )
}
