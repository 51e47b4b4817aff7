//! Majorization preorders on parameter vectors and grid-based verification
//! of stochastic orders between two extreme models.
//!
//! Verdicts are grid-level evidence, never analytic proof. The default
//! comparison grid is 512 log-spaced points spanning both models'
//! 0.1%–99.9% quantiles; the dispersive check uses 99 equispaced
//! probabilities. Ratio monotonicity is checked on consecutive differences
//! of `ln(ratio)` to avoid overflow, with an INCONCLUSIVE band for
//! violations inside the floating-point slack.

use crate::copula::log_grid;
use crate::extremes::{ExtremeModel, Side};
use crate::{Error, Result, GRID_SLACK};

/// Which majorization preorder to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MajKind {
    /// `x ≼ᵐ y`: ascending partial sums of `x` dominate those of `y` for
    /// `l < n`, totals equal.
    M,
    /// `x ≼_w y`: descending (top-l) partial sums of `x` are dominated by
    /// those of `y` for every `l`.
    WeakSub,
    /// `x ≼ʷ y`: ascending (bottom-l) partial sums of `x` dominate those of
    /// `y` for every `l`.
    WeakSuper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum OrderKind {
    St,
    Hr,
    Rh,
    Lr,
    Disp,
    MajM,
    MajWeakSub,
    MajWeakSuper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

/// One offending comparison: a location (x, probability, or partial-sum
/// index) with the two compared values.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Witness {
    pub location: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of a grid-based order check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct OrderReport {
    pub order_kind: OrderKind,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub max_violation: f64,
    pub grid_spec: String,
    /// Grid points skipped because a ratio was undefined (0/0 or non-finite).
    pub skipped_points: usize,
    /// For hr: whether the pointwise hazard comparison agreed with the
    /// survival-ratio verdict (when densities were available).
    pub hazard_crosscheck_agrees: Option<bool>,
}

impl OrderReport {
    fn from_violations(
        order_kind: OrderKind,
        grid_spec: String,
        skipped: usize,
        mut viols: Vec<Witness>,
        slack: f64,
    ) -> OrderReport {
        viols.sort_by(|a, b| {
            let va = a.lhs - a.rhs;
            let vb = b.lhs - b.rhs;
            vb.partial_cmp(&va).unwrap_or(std::cmp::Ordering::Equal)
        });
        let max_violation = viols
            .first()
            .map(|w| (w.lhs - w.rhs).max(0.0))
            .unwrap_or(0.0);
        let verdict = if max_violation == 0.0 {
            Verdict::Holds
        } else if max_violation <= slack {
            Verdict::Inconclusive
        } else {
            Verdict::Fails
        };
        let witnesses = if verdict == Verdict::Fails {
            viols.into_iter().take(5).collect()
        } else {
            Vec::new()
        };
        OrderReport {
            order_kind,
            verdict,
            witnesses,
            max_violation,
            grid_spec,
            skipped_points: skipped,
            hazard_crosscheck_agrees: None,
        }
    }
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    s
}

/// `majorize_check(x, y, kind)` decides `x ≼ y` in the requested sense.
pub fn majorize_check(x: &[f64], y: &[f64], kind: MajKind) -> Result<bool> {
    Ok(majorize_report(x, y, kind)?.verdict == Verdict::Holds)
}

/// Report-producing variant of [`majorize_check`] with partial-sum witnesses.
pub fn majorize_report(x: &[f64], y: &[f64], kind: MajKind) -> Result<OrderReport> {
    if x.len() != y.len() || x.is_empty() {
        return Err(Error::Config(format!(
            "majorization needs equal nonempty lengths, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    let (xs, ys) = (sorted(x), sorted(y));
    let mut viols = Vec::new();
    // partial sums carry the same 1e-12 relative guard as the total-sum
    // equality, so m-majorization implies both weak forms in floats too
    let mut push = |l: usize, lhs: f64, rhs: f64| {
        if lhs > rhs + 1e-12 * (1.0 + lhs.abs() + rhs.abs()) {
            viols.push(Witness {
                location: l as f64,
                lhs,
                rhs,
            });
        }
    };
    let kind_tag = match kind {
        MajKind::M => OrderKind::MajM,
        MajKind::WeakSub => OrderKind::MajWeakSub,
        MajKind::WeakSuper => OrderKind::MajWeakSuper,
    };
    match kind {
        MajKind::M => {
            // ascending partial sums of x >= those of y for l < n; totals equal
            let mut sx = 0.0;
            let mut sy = 0.0;
            for l in 0..n - 1 {
                sx += xs[l];
                sy += ys[l];
                push(l + 1, sy - sx, 0.0);
            }
            sx += xs[n - 1];
            sy += ys[n - 1];
            let tol = 1e-12 * sx.abs().max(sy.abs()).max(1.0);
            if (sx - sy).abs() > tol {
                viols.push(Witness {
                    location: n as f64,
                    lhs: (sx - sy).abs(),
                    rhs: tol,
                });
            }
        }
        MajKind::WeakSub => {
            // top-l sums of x <= those of y
            let mut sx = 0.0;
            let mut sy = 0.0;
            for l in 0..n {
                sx += xs[n - 1 - l];
                sy += ys[n - 1 - l];
                push(l + 1, sx - sy, 0.0);
            }
        }
        MajKind::WeakSuper => {
            // bottom-l sums of x >= those of y
            let mut sx = 0.0;
            let mut sy = 0.0;
            for l in 0..n {
                sx += xs[l];
                sy += ys[l];
                push(l + 1, sy - sx, 0.0);
            }
        }
    }
    Ok(OrderReport::from_violations(
        kind_tag,
        format!("partial sums over {n} sorted coordinates"),
        0,
        viols,
        0.0,
    ))
}

/// Default 512-point log-spaced grid from the joint 0.1% to 99.9% quantile
/// range of two models.
pub fn default_x_grid(a: &ExtremeModel, b: &ExtremeModel) -> Result<Vec<f64>> {
    joint_grid(a, b, 512)
}

pub fn joint_grid(a: &ExtremeModel, b: &ExtremeModel, points: usize) -> Result<Vec<f64>> {
    let lo = a.quantile(0.001)?.min(b.quantile(0.001)?).max(1e-12);
    let hi = a.quantile(0.999)?.max(b.quantile(0.999)?);
    if hi <= lo || hi.is_nan() || lo.is_nan() {
        return Err(Error::Numerical("degenerate joint grid".into()));
    }
    Ok(log_grid(lo, hi, points))
}

/// `A ≤_st B`: survival of A below survival of B everywhere on the grid.
pub fn st_check(a: &ExtremeModel, b: &ExtremeModel, x_grid: &[f64]) -> OrderReport {
    let mut viols = Vec::new();
    for &x in x_grid {
        let (sa, sb) = (a.sf(x), b.sf(x));
        if sa > sb {
            viols.push(Witness {
                location: x,
                lhs: sa,
                rhs: sb,
            });
        }
    }
    OrderReport::from_violations(
        OrderKind::St,
        format!(
            "{} x points in [{:.3e}, {:.3e}]",
            x_grid.len(),
            x_grid[0],
            x_grid[x_grid.len() - 1]
        ),
        0,
        viols,
        GRID_SLACK,
    )
}

/// Shared monotone-ratio machinery: verdict that `num/den` is nondecreasing
/// along the grid, on the log scale, skipping undefined points.
fn ratio_check(
    kind: OrderKind,
    x_grid: &[f64],
    num: impl Fn(f64) -> f64,
    den: impl Fn(f64) -> f64,
    slack: f64,
) -> OrderReport {
    let mut pts = Vec::with_capacity(x_grid.len());
    let mut skipped = 0;
    for &x in x_grid {
        let (n, d) = (num(x), den(x));
        if n > 0.0 && d > 0.0 && n.is_finite() && d.is_finite() {
            pts.push((x, n.ln() - d.ln()));
        } else {
            skipped += 1;
        }
    }
    let mut viols = Vec::new();
    for w in pts.windows(2) {
        let ((_, r0), (x1, r1)) = (w[0], w[1]);
        if r0 > r1 {
            viols.push(Witness {
                location: x1,
                lhs: r0,
                rhs: r1,
            });
        }
    }
    OrderReport::from_violations(
        kind,
        format!(
            "ln-ratio differences over {} usable of {} grid points",
            pts.len(),
            x_grid.len()
        ),
        skipped,
        viols,
        slack,
    )
}

/// `A ≤_hr B`: survival ratio `sf_B/sf_A` nondecreasing; cross-checked by
/// pointwise hazard domination `r_A ≥ r_B` where hazards exist.
pub fn hr_check(a: &ExtremeModel, b: &ExtremeModel, x_grid: &[f64]) -> OrderReport {
    let mut report = ratio_check(OrderKind::Hr, x_grid, |x| b.sf(x), |x| a.sf(x), GRID_SLACK);
    // pointwise hazard domination: r_A >= r_B wherever both hazards exist
    let mut have_any = false;
    let mut dominated = true;
    for &x in x_grid {
        if let (Ok(ra), Ok(rb)) = (a.hazard(x), b.hazard(x)) {
            have_any = true;
            if ra < rb - GRID_SLACK * (1.0 + ra.abs() + rb.abs()) {
                dominated = false;
            }
        }
    }
    report.hazard_crosscheck_agrees =
        have_any.then(|| dominated == (report.verdict != Verdict::Fails));
    report
}

/// `A ≤_rh B`: cdf ratio `F_B/F_A` nondecreasing.
pub fn rh_check(a: &ExtremeModel, b: &ExtremeModel, x_grid: &[f64]) -> OrderReport {
    ratio_check(
        OrderKind::Rh,
        x_grid,
        |x| b.cdf(x),
        |x| a.cdf(x),
        GRID_SLACK,
    )
}

/// `A ≤_lr B`: density ratio `f_B/f_A` nondecreasing.
pub fn lr_check(a: &ExtremeModel, b: &ExtremeModel, x_grid: &[f64]) -> OrderReport {
    ratio_check(
        OrderKind::Lr,
        x_grid,
        |x| b.density(x).unwrap_or(f64::NAN),
        |x| a.density(x).unwrap_or(f64::NAN),
        GRID_SLACK,
    )
}

/// Default 99-point probability grid for the dispersive check.
pub fn default_p_grid() -> Vec<f64> {
    (1..100).map(|i| i as f64 / 100.0).collect()
}

/// `A ≤_disp B`: quantile gaps of B dominate those of A, checked via
/// `Q_B − Q_A` nondecreasing over consecutive grid probabilities.
pub fn disp_check(a: &ExtremeModel, b: &ExtremeModel, p_grid: &[f64]) -> Result<OrderReport> {
    if p_grid.len() < 2 || !p_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Config(
            "p grid must be strictly increasing with >= 2 points".into(),
        ));
    }
    if !(p_grid[0] > 0.0 && p_grid[p_grid.len() - 1] < 1.0) {
        return Err(Error::Config("p grid must lie inside (0,1)".into()));
    }
    let mut gaps = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        gaps.push((p, b.quantile(p)? - a.quantile(p)?));
    }
    let mut viols = Vec::new();
    for w in gaps.windows(2) {
        let ((_, g0), (p1, g1)) = (w[0], w[1]);
        if g0 > g1 {
            viols.push(Witness {
                location: p1,
                lhs: g0,
                rhs: g1,
            });
        }
    }
    Ok(OrderReport::from_violations(
        OrderKind::Disp,
        format!("quantile gaps over {} probabilities", p_grid.len()),
        0,
        viols,
        1e-8,
    ))
}

/// Direction for the ratio-monotone-in-n preservation condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum NDirection {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct NRatioReport {
    pub holds: bool,
    pub direction: NDirection,
    pub worst_x: f64,
    pub worst_violation: f64,
}

/// Checks monotonicity in `n` (over the shared ndist support) of the
/// fixed-n survival ratio (min side) or cdf ratio (max side) at every grid
/// point.
pub fn n_ratio_monotone(
    a: &ExtremeModel,
    b: &ExtremeModel,
    direction: NDirection,
    x_grid: &[f64],
) -> Result<NRatioReport> {
    if a.ndist.support() != b.ndist.support() {
        return Err(Error::Usage("models must share the ndist support".into()));
    }
    if a.side != b.side {
        return Err(Error::Usage("models must be on the same side".into()));
    }
    let support = a.ndist.support();
    let mut worst = f64::NEG_INFINITY;
    let mut worst_x = x_grid[0];
    for &x in x_grid {
        let mut prev: Option<f64> = None;
        for &n in support {
            let (va, vb) = match a.side {
                Side::Min => (a.fixed_min_sf(n, x)?, b.fixed_min_sf(n, x)?),
                Side::Max => (a.fixed_max_cdf(n, x)?, b.fixed_max_cdf(n, x)?),
            };
            if va <= 0.0 || vb <= 0.0 {
                prev = None;
                continue;
            }
            let lr = va.ln() - vb.ln();
            if let Some(p) = prev {
                let viol = match direction {
                    NDirection::Increasing => p - lr - GRID_SLACK * (1.0 + p.abs() + lr.abs()),
                    NDirection::Decreasing => lr - p - GRID_SLACK * (1.0 + p.abs() + lr.abs()),
                };
                if viol > worst {
                    worst = viol;
                    worst_x = x;
                }
            }
            prev = Some(lr);
        }
    }
    Ok(NRatioReport {
        holds: worst <= 0.0,
        direction,
        worst_x,
        worst_violation: worst.max(0.0),
    })
}
