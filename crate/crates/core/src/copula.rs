//! Archimedean generators, their inverses and derivatives, and the grid
//! checks used as theorem hypotheses.
//!
//! A generator `ψ: [0,∞) → (0,1]` is continuous, nonincreasing, `ψ(0)=1`,
//! `ψ(∞)=0`; `φ = ψ^{-1}`. The shipped families are completely monotone on
//! their parameter domains, so the d-monotonicity required for an
//! n-dimensional Archimedean copula holds by construction.
//!
//! Hypothesis checks (log-shape, super-additivity of `φ₂∘ψ₁`, the
//! likelihood-ratio generator conditions) are grid/sample based with a
//! declared slack; they return worst-point reports, not proofs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result, GRID_SLACK};

/// An Archimedean generator family with its dependence parameter.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Generator {
    /// `ψ(t) = e^{−t}`.
    Independence,
    /// `ψ(t) = e^{−t^{1/a}}`, `a ≥ 1`.
    Gumbel { theta: f64 },
    /// `ψ(t) = e^{1−(1+t)^{1/a}}`, `a ≥ 1`.
    GumbelHougaard { theta: f64 },
    /// `ψ(t) = (1+θt)^{−1/θ}`, `θ > 0`.
    Clayton { theta: f64 },
    /// `ψ(t) = (1−θ)/(e^t−θ)`, `θ ∈ [−1, 1)`.
    Amh { theta: f64 },
    /// `ψ(t) = −ln(1−(1−e^{−θ})e^{−t})/θ`, `θ ≠ 0`.
    Frank { theta: f64 },
}

impl Generator {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Generator::Independence => true,
            Generator::Gumbel { theta } | Generator::GumbelHougaard { theta } => theta >= 1.0,
            Generator::Clayton { theta } => theta > 0.0,
            Generator::Amh { theta } => (-1.0..1.0).contains(&theta),
            Generator::Frank { theta } => theta != 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "generator parameter out of domain: {self:?}"
            )))
        }
    }

    /// `ψ(t)`.
    pub fn psi(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        match *self {
            Generator::Independence => (-t).exp(),
            Generator::Gumbel { theta } => (-t.powf(1.0 / theta)).exp(),
            Generator::GumbelHougaard { theta } => (1.0 - (1.0 + t).powf(1.0 / theta)).exp(),
            Generator::Clayton { theta } => (-f64::ln_1p(theta * t) / theta).exp(),
            Generator::Amh { theta } => (1.0 - theta) / (t.exp() - theta),
            Generator::Frank { theta } => {
                let c = -f64::exp_m1(-theta);
                -f64::ln_1p(-c * (-t).exp()) / theta
            }
        }
    }

    /// `φ(v) = ψ^{-1}(v)` for `v ∈ (0, 1]`. `v = 0` is a domain error; the
    /// extremes module short-circuits whole compositions instead of calling
    /// `φ(0)`.
    pub fn phi(&self, v: f64) -> Result<f64> {
        if !(v > 0.0 && v <= 1.0) {
            return Err(Error::Domain(format!("phi requires v in (0,1], got {v}")));
        }
        Ok(self.phi_unchecked(v))
    }

    pub(crate) fn phi_unchecked(&self, v: f64) -> f64 {
        match *self {
            Generator::Independence => -v.ln(),
            Generator::Gumbel { theta } => (-v.ln()).powf(theta),
            Generator::GumbelHougaard { theta } => (1.0 - v.ln()).powf(theta) - 1.0,
            Generator::Clayton { theta } => f64::exp_m1(-theta * v.ln()) / theta,
            Generator::Amh { theta } => f64::ln_1p(-theta * (1.0 - v)) - v.ln(),
            Generator::Frank { theta } => {
                // t = −ln[(1−e^{−θv}) / (1−e^{−θ})]
                -(f64::exp_m1(-theta * v) / f64::exp_m1(-theta)).ln()
            }
        }
    }

    /// First derivative `ψ'(t)`; closed form for every shipped family.
    pub fn psi_d1(&self, t: f64) -> f64 {
        match *self {
            Generator::Independence => -(-t).exp(),
            Generator::Gumbel { theta } => {
                let a = 1.0 / theta;
                -a * t.powf(a - 1.0) * self.psi(t)
            }
            Generator::GumbelHougaard { theta } => {
                let a = 1.0 / theta;
                -a * (1.0 + t).powf(a - 1.0) * self.psi(t)
            }
            Generator::Clayton { theta } => -((-1.0 / theta - 1.0) * f64::ln_1p(theta * t)).exp(),
            Generator::Amh { theta } => {
                let e = t.exp();
                -(1.0 - theta) * e / ((e - theta) * (e - theta))
            }
            Generator::Frank { theta } => {
                let c = -f64::exp_m1(-theta);
                let u = c * (-t).exp();
                -(1.0 / theta) * u / (1.0 - u)
            }
        }
    }

    /// Second derivative `ψ''(t)`.
    pub fn psi_d2(&self, t: f64) -> f64 {
        match *self {
            Generator::Independence => (-t).exp(),
            Generator::Gumbel { theta } => {
                let a = 1.0 / theta;
                self.psi(t) * (a * a * t.powf(2.0 * a - 2.0) - a * (a - 1.0) * t.powf(a - 2.0))
            }
            Generator::GumbelHougaard { theta } => {
                let a = 1.0 / theta;
                let u = 1.0 + t;
                self.psi(t) * (a * a * u.powf(2.0 * a - 2.0) - a * (a - 1.0) * u.powf(a - 2.0))
            }
            Generator::Clayton { theta } => {
                (1.0 + theta) * ((-1.0 / theta - 2.0) * f64::ln_1p(theta * t)).exp()
            }
            Generator::Amh { theta } => {
                let e = t.exp();
                (1.0 - theta) * e * (e + theta) / ((e - theta) * (e - theta) * (e - theta))
            }
            Generator::Frank { theta } => {
                let c = -f64::exp_m1(-theta);
                let u = c * (-t).exp();
                (1.0 / theta) * u / ((1.0 - u) * (1.0 - u))
            }
        }
    }

    /// Central-difference fallback for `ψ'`, step `1e-6·max(1,t)`.
    pub fn psi_d1_fd(&self, t: f64) -> f64 {
        let h = 1e-6 * t.max(1.0);
        let lo = (t - h).max(0.0);
        (self.psi(t + h) - self.psi(lo)) / (t + h - lo)
    }

    /// Second central difference of `ψ` with a wider step; the 1e-6 step of
    /// the first-derivative fallback amplifies rounding past usefulness when
    /// differenced twice.
    pub fn psi_d2_fd(&self, t: f64) -> f64 {
        let h = 1e-4 * t.max(1.0);
        let lo = (t - h).max(0.0);
        let hh = 0.5 * (t + h - lo);
        (self.psi(t + h) - 2.0 * self.psi(0.5 * (t + h + lo)) + self.psi(lo)) / (hh * hh)
    }
}

/// Required sign of the second difference of `ln ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum LogShape {
    Concave,
    Convex,
}

/// Worst point of a grid shape/monotonicity check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ShapeReport {
    pub holds: bool,
    /// Most-violating grid location (triple midpoint or pair left point).
    pub worst_t: f64,
    /// Signed worst violation; positive means the condition was broken.
    pub worst_violation: f64,
}

/// Default log-spaced hypothesis grid: 400 points on `[1e-4, 50]`.
pub fn default_t_grid() -> Vec<f64> {
    log_grid(1e-4, 50.0, 400)
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Chord-based convexity/concavity test of `f` over a strictly increasing
/// grid. For each triple, the middle value is compared against the chord
/// with slack `1e-9 · (1 + local scale)`, which keeps the verdict stable on
/// log-spaced grids where raw second differences amplify rounding noise.
fn chord_shape_check(ts: &[f64], fs: &[f64], shape: LogShape) -> ShapeReport {
    let mut worst = f64::NEG_INFINITY;
    let mut worst_t = ts[0];
    for i in 1..ts.len() - 1 {
        let (t0, t1, t2) = (ts[i - 1], ts[i], ts[i + 1]);
        let (f0, f1, f2) = (fs[i - 1], fs[i], fs[i + 1]);
        if !(f0.is_finite() && f1.is_finite() && f2.is_finite()) {
            continue;
        }
        let chord = f0 + (f2 - f0) * (t1 - t0) / (t2 - t0);
        let slack = GRID_SLACK * (1.0 + f0.abs() + f1.abs() + f2.abs());
        // convex: f1 <= chord; concave: f1 >= chord
        let viol = match shape {
            LogShape::Convex => f1 - chord - slack,
            LogShape::Concave => chord - f1 - slack,
        };
        if viol > worst {
            worst = viol;
            worst_t = t1;
        }
    }
    ShapeReport {
        holds: worst <= 0.0,
        worst_t,
        worst_violation: worst.max(0.0),
    }
}

fn monotone_check(ts: &[f64], fs: &[f64], increasing: bool) -> ShapeReport {
    let mut worst = f64::NEG_INFINITY;
    let mut worst_t = ts[0];
    for i in 0..ts.len() - 1 {
        let (f0, f1) = (fs[i], fs[i + 1]);
        if !(f0.is_finite() && f1.is_finite()) {
            continue;
        }
        let slack = GRID_SLACK * (1.0 + f0.abs() + f1.abs());
        let viol = if increasing {
            f0 - f1 - slack
        } else {
            f1 - f0 - slack
        };
        if viol > worst {
            worst = viol;
            worst_t = ts[i];
        }
    }
    ShapeReport {
        holds: worst <= 0.0,
        worst_t,
        worst_violation: worst.max(0.0),
    }
}

/// Grid check of log-concavity/log-convexity of `ψ`.
pub fn check_log_shape(g: &Generator, shape: LogShape, t_grid: &[f64]) -> Result<ShapeReport> {
    if t_grid.len() < 3 {
        return Err(Error::Config(
            "log-shape grid needs at least 3 points".into(),
        ));
    }
    let fs: Vec<f64> = t_grid.iter().map(|&t| g.psi(t).ln()).collect();
    Ok(chord_shape_check(t_grid, &fs, shape))
}

/// Worst pair of a super-additivity sample scan.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SuperAdditivityReport {
    pub holds: bool,
    pub worst_pair: (f64, f64),
    pub worst_violation: f64,
}

/// Sample check that `f = φ₂ ∘ ψ₁` is super-additive:
/// `f(u+v) ≥ f(u) + f(v) − 1e-9` for every sampled pair.
pub fn check_superadditive_composition(
    g1: &Generator,
    g2: &Generator,
    pairs: &[(f64, f64)],
) -> SuperAdditivityReport {
    let f = |t: f64| g2.phi_unchecked(g1.psi(t).clamp(1e-300, 1.0));
    let mut worst = f64::NEG_INFINITY;
    let mut worst_pair = (0.0, 0.0);
    for &(u, v) in pairs {
        let viol = f(u) + f(v) - f(u + v) - GRID_SLACK;
        if viol > worst {
            worst = viol;
            worst_pair = (u, v);
        }
    }
    SuperAdditivityReport {
        holds: worst <= 0.0,
        worst_pair,
        worst_violation: worst.max(0.0),
    }
}

/// Default seeded pair sample for super-additivity: 2000 log-uniform pairs
/// in `(0, 50]^2`.
pub fn default_pair_samples(seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (llo, lhi) = ((1e-4f64).ln(), 50f64.ln());
    (0..2000)
        .map(|_| {
            let u = (rng.gen_range(llo..lhi)).exp();
            let v = (rng.gen_range(llo..lhi)).exp();
            (u, v)
        })
        .collect()
}

/// Verdicts of the likelihood-ratio generator conditions:
/// `ψ''/ψ'` decreasing; `ψ·lnψ/ψ'` increasing and concave.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LrGeneratorReport {
    pub ratio_decreasing: bool,
    pub psi_lnpsi_incr_concave: bool,
    /// True when derivatives came from the finite-difference fallback
    /// (slack widened to 1e-6).
    pub used_fallback: bool,
    pub worst_violation: f64,
}

/// Grid check of the generator conditions used by the fixed-n
/// likelihood-ratio theorem.
pub fn lr_generator_conditions(g: &Generator, t_grid: &[f64]) -> Result<LrGeneratorReport> {
    lr_generator_conditions_impl(g, t_grid, false)
}

/// Finite-difference variant of [`lr_generator_conditions`]; slack widens
/// to 1e-6 and the report flags the fallback.
pub fn lr_generator_conditions_fd(g: &Generator, t_grid: &[f64]) -> Result<LrGeneratorReport> {
    lr_generator_conditions_impl(g, t_grid, true)
}

fn lr_generator_conditions_impl(
    g: &Generator,
    t_grid: &[f64],
    fallback: bool,
) -> Result<LrGeneratorReport> {
    if t_grid.len() < 3 {
        return Err(Error::Config(
            "lr-condition grid needs at least 3 points".into(),
        ));
    }
    // the fallback derivatives carry differencing noise, so their verdicts
    // get the widened absolute slack 1e-6 on top of the base relative slack
    let extra = if fallback { 1e-6 } else { 0.0 };
    let d1 = |t: f64| {
        if fallback {
            g.psi_d1_fd(t)
        } else {
            g.psi_d1(t)
        }
    };
    let d2 = |t: f64| {
        if fallback {
            g.psi_d2_fd(t)
        } else {
            g.psi_d2(t)
        }
    };
    let ratio: Vec<f64> = t_grid.iter().map(|&t| d2(t) / d1(t)).collect();
    let w: Vec<f64> = t_grid
        .iter()
        .map(|&t| {
            let p = g.psi(t);
            p * p.ln() / d1(t)
        })
        .collect();
    let r1 = monotone_check(t_grid, &ratio, false);
    let r2 = monotone_check(t_grid, &w, true);
    let r3 = chord_shape_check(t_grid, &w, LogShape::Concave);
    Ok(LrGeneratorReport {
        ratio_decreasing: r1.worst_violation <= extra,
        psi_lnpsi_incr_concave: r2.worst_violation <= extra && r3.worst_violation <= extra,
        used_fallback: fallback,
        worst_violation: r1
            .worst_violation
            .max(r2.worst_violation)
            .max(r3.worst_violation),
    })
}
