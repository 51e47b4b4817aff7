//! Registry of the fifteen ordering theorems (plus the `T4b` remark
//! variant), each compiled into a hypothesis-checker list and a conclusion
//! order check, together with the three counterexample fixtures and seeded
//! random validation suites.
//!
//! Hypotheses are evaluated on grids (baseline dominance, generator shape,
//! super-additivity) or exactly (majorization, structural equalities). The
//! alarm condition is `Overall::Contradiction`: every hypothesis holds yet
//! the conclusion fails with margin above `1e-6`. The constructive samplers
//! in [`random_validation_suite`] force each theorem's hypotheses in the
//! direction its proof actually uses; several of the printed statements
//! carry reversed inequality symbols, and the per-theorem notes below name
//! the implemented direction.
//!
//! Sample-size caveat: the hr/rh/lr conclusions survive pmf mixing only in
//! restricted configurations, so the samplers for T5, T8, T9, T12, T14 and
//! T15 draw degenerate (point-mass) sample sizes, which still instantiate
//! `N1 =st N2`. The counterexample fixtures store the published parameter
//! vectors verbatim; the hypothesis reports simply record what the checks
//! find on them.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::baseline::Baseline;
use crate::copula::{
    check_log_shape, check_superadditive_composition, default_pair_samples, default_t_grid,
    log_grid, lr_generator_conditions, Generator, LogShape,
};
use crate::extremes::{ExtremeModel, NDist, Side};
use crate::kwg::ParamVector;
use crate::orders::{
    default_p_grid, default_x_grid, disp_check, hr_check, lr_check, majorize_check, rh_check,
    st_check, MajKind, OrderReport, Verdict,
};
use crate::{Error, Result, GRID_SLACK};

/// Margin above which a failed conclusion with satisfied hypotheses counts
/// as a contradiction.
pub const CONTRADICTION_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T4b,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    T12,
    T13,
    T14,
    T15,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T4b,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
        TheoremId::T10,
        TheoremId::T11,
        TheoremId::T12,
        TheoremId::T13,
        TheoremId::T14,
        TheoremId::T15,
    ];

    pub fn parse(s: &str) -> Result<TheoremId> {
        let up = s.to_ascii_uppercase();
        for id in TheoremId::ALL {
            if id.name().eq_ignore_ascii_case(&up) {
                return Ok(id);
            }
        }
        Err(Error::Config(format!("unknown theorem id {s:?}")))
    }

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::T4b => "T4b",
            TheoremId::T5 => "T5",
            TheoremId::T6 => "T6",
            TheoremId::T7 => "T7",
            TheoremId::T8 => "T8",
            TheoremId::T9 => "T9",
            TheoremId::T10 => "T10",
            TheoremId::T11 => "T11",
            TheoremId::T12 => "T12",
            TheoremId::T13 => "T13",
            TheoremId::T14 => "T14",
            TheoremId::T15 => "T15",
        }
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct HypothesisResult {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Overall {
    Validated,
    HypothesesUnmet,
    Contradiction,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TheoremCase {
    pub id: TheoremId,
    pub hypothesis_results: Vec<HypothesisResult>,
    pub conclusion: OrderReport,
    pub overall: Overall,
}

impl TheoremCase {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_results.iter().all(|h| h.holds)
    }
}

fn overall_of(hyps: &[HypothesisResult], conclusion: &OrderReport) -> Overall {
    let all_hold = hyps.iter().all(|h| h.holds);
    if !all_hold {
        Overall::HypothesesUnmet
    } else if conclusion.verdict == Verdict::Fails
        && conclusion.max_violation > CONTRADICTION_MARGIN
    {
        Overall::Contradiction
    } else {
        Overall::Validated
    }
}

// ---------------------------------------------------------------------------
// hypothesis vocabulary
// ---------------------------------------------------------------------------

fn hyp(name: &str, holds: bool, detail: impl Into<String>) -> HypothesisResult {
    HypothesisResult {
        name: name.into(),
        holds,
        detail: detail.into(),
    }
}

fn vec_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

fn is_ascending(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

fn is_descending(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// All vectors ascending, or all descending.
fn similarly_ordered(vs: &[&[f64]]) -> bool {
    vs.iter().all(|v| is_ascending(v)) || vs.iter().all(|v| is_descending(v))
}

fn h_similarly_ordered(name: &str, vs: &[&[f64]]) -> HypothesisResult {
    hyp(
        name,
        similarly_ordered(vs),
        "all vectors ascending or all descending",
    )
}

fn h_vec_ge(name: &str, v: &[f64], c: f64) -> HypothesisResult {
    hyp(
        name,
        v.iter().all(|&x| x >= c),
        format!("all components >= {c}"),
    )
}

fn h_vec_le(name: &str, v: &[f64], c: f64) -> HypothesisResult {
    hyp(
        name,
        v.iter().all(|&x| x <= c),
        format!("all components <= {c}"),
    )
}

fn h_maj(name: &str, x: &[f64], y: &[f64], kind: MajKind) -> HypothesisResult {
    match majorize_check(x, y, kind) {
        Ok(holds) => hyp(name, holds, format!("{kind:?} partial-sum comparison")),
        Err(e) => hyp(name, false, format!("not evaluable: {e}")),
    }
}

/// Pointwise dominance `f_a(x) <= f_b(x)` on a shared grid.
fn grid_dominates(grid: &[f64], fa: impl Fn(f64) -> f64, fb: impl Fn(f64) -> f64) -> (bool, f64) {
    let mut worst = 0.0f64;
    for &x in grid {
        let (va, vb) = (fa(x), fb(x));
        if !(va.is_finite() && vb.is_finite()) {
            continue;
        }
        let viol = va - vb - GRID_SLACK * (1.0 + va.abs() + vb.abs());
        worst = worst.max(viol);
    }
    (worst <= 0.0, worst.max(0.0))
}

fn h_baseline_le(name: &str, grid: &[f64], a: &Baseline, b: &Baseline) -> HypothesisResult {
    let (holds, worst) = grid_dominates(grid, |x| a.cdf(x), |x| b.cdf(x));
    hyp(
        name,
        holds,
        format!("cdf dominance on grid, worst violation {worst:.3e}"),
    )
}

fn h_density_ge(name: &str, grid: &[f64], a: &Baseline, b: &Baseline) -> HypothesisResult {
    let (holds, worst) = grid_dominates(grid, |x| b.pdf(x), |x| a.pdf(x));
    hyp(
        name,
        holds,
        format!("density dominance on grid, worst violation {worst:.3e}"),
    )
}

fn h_hazard_le(name: &str, grid: &[f64], a: &Baseline, b: &Baseline) -> HypothesisResult {
    let f = |bl: &Baseline, x: f64| bl.hazard(x).unwrap_or(f64::NAN);
    let (holds, worst) = grid_dominates(grid, |x| f(a, x), |x| f(b, x));
    hyp(
        name,
        holds,
        format!("hazard dominance on grid, worst violation {worst:.3e}"),
    )
}

fn h_hazard_decreasing(name: &str, grid: &[f64], b: &Baseline) -> HypothesisResult {
    let mut worst = 0.0f64;
    let mut prev: Option<f64> = None;
    for &x in grid {
        if let Ok(r) = b.hazard(x) {
            if let Some(p) = prev {
                worst = worst.max(r - p - GRID_SLACK * (1.0 + r.abs() + p.abs()));
            }
            prev = Some(r);
        }
    }
    hyp(name, worst <= 0.0, format!("worst increase {worst:.3e}"))
}

fn h_superadditive(name: &str, g1: &Generator, g2: &Generator) -> HypothesisResult {
    let r = check_superadditive_composition(g1, g2, &default_pair_samples(0x5EED));
    hyp(
        name,
        r.holds,
        format!(
            "worst pair {:?}, violation {:.3e}",
            r.worst_pair, r.worst_violation
        ),
    )
}

fn h_log_shape_either(
    name: &str,
    g1: &Generator,
    g2: &Generator,
    shape: LogShape,
) -> HypothesisResult {
    let grid = default_t_grid();
    let a = check_log_shape(g1, shape, &grid)
        .map(|r| r.holds)
        .unwrap_or(false);
    let b = check_log_shape(g2, shape, &grid)
        .map(|r| r.holds)
        .unwrap_or(false);
    hyp(name, a || b, format!("psi1: {a}, psi2: {b}"))
}

/// Log-convexity on the hypothesis grid of `u = (1 - psi) / |psi'|`, the
/// literal reading of the remark behind T4b. `u (t) ~ t` as `t -> 0`, so the
/// check is expected to fail near the origin for every shipped family; the
/// harness evaluates it honestly anyway.
fn h_u_log_convex_either(name: &str, g1: &Generator, g2: &Generator) -> HypothesisResult {
    let grid = default_t_grid();
    let check = |g: &Generator| {
        let ts = &grid;
        let fs: Vec<f64> = ts
            .iter()
            .map(|&t| ((1.0 - g.psi(t)) / -g.psi_d1(t)).ln())
            .collect();
        let mut ok = true;
        for i in 1..ts.len() - 1 {
            let chord =
                fs[i - 1] + (fs[i + 1] - fs[i - 1]) * (ts[i] - ts[i - 1]) / (ts[i + 1] - ts[i - 1]);
            let slack = GRID_SLACK * (1.0 + fs[i - 1].abs() + fs[i].abs() + fs[i + 1].abs());
            if fs[i] > chord + slack {
                ok = false;
                break;
            }
        }
        ok
    };
    let (a, b) = (check(g1), check(g2));
    hyp(name, a || b, format!("psi1: {a}, psi2: {b}"))
}

fn h_ndist_le(name: &str, a: &NDist, b: &NDist) -> HypothesisResult {
    hyp(name, a.st_le(b), "P(N1 >= m) <= P(N2 >= m) for all m")
}

fn h_ndist_equal(name: &str, a: &NDist, b: &NDist) -> HypothesisResult {
    hyp(name, a == b, "identical support and pmf")
}

fn h_independence(name: &str, a: &ExtremeModel, b: &ExtremeModel) -> HypothesisResult {
    hyp(
        name,
        a.generator == Generator::Independence && b.generator == Generator::Independence,
        "both generators independence",
    )
}

fn h_baselines_equal(name: &str, a: &Baseline, b: &Baseline) -> HypothesisResult {
    hyp(name, a == b, "identical baseline distributions")
}

/// Prefix sums `Σ_{i<=m} γ_i <= Σ_{i<=m} δ_i` (as ordered in the model)
/// at every m in the shared ndist support.
fn h_prefix_le(name: &str, g: &[f64], d: &[f64], support: &[usize]) -> HypothesisResult {
    let pre = |v: &[f64], m: usize| v[..m].iter().sum::<f64>();
    let holds = support.iter().all(|&m| pre(g, m) <= pre(d, m) + 1e-12);
    hyp(
        name,
        holds,
        "coordinate-order prefix sums at every support point",
    )
}

/// Detect a two-block pattern `(v1 repeated p times, v2 repeated q times)`.
/// Returns `(p, v1, v2)`; `p + q = len`, `q >= 1`.
fn two_block(v: &[f64]) -> Option<(usize, f64, f64)> {
    let first = v[0];
    let p = v.iter().take_while(|&&x| x == first).count();
    if p == v.len() {
        // a constant vector counts with q = len - p only if p < len; treat
        // it as p = len-1 blocks of the same value
        if v.len() >= 2 {
            return Some((v.len() - 1, first, first));
        }
        return None;
    }
    let second = v[p];
    if v[p..].iter().all(|&x| x == second) {
        Some((p, first, second))
    } else {
        None
    }
}

fn scalar_of(v: &[f64]) -> Option<f64> {
    let first = v[0];
    v.iter().all(|&x| x == first).then_some(first)
}

// ---------------------------------------------------------------------------
// check_theorem
// ---------------------------------------------------------------------------

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "theorem precondition violated: {what}"
        )))
    }
}

fn require_side(a: &ExtremeModel, b: &ExtremeModel, side: Side) -> Result<()> {
    require(
        a.side == side && b.side == side,
        &format!("both models must have side {side:?}"),
    )
}

/// Evaluate one theorem statement on a model pair: every hypothesis, then
/// the conclusion order check, then the overall verdict.
pub fn check_theorem(id: TheoremId, a: &ExtremeModel, b: &ExtremeModel) -> Result<TheoremCase> {
    require(
        a.n_components() == b.n_components(),
        "models must have parameter vectors of equal length",
    )?;
    let grid = default_x_grid(a, b)?;
    let (aa, ab) = (a.params.alphas(), b.params.alphas());
    let (ga, gb) = (a.params.gammas(), b.params.gammas());
    let mut hyps: Vec<HypothesisResult> = Vec::new();
    let conclusion: OrderReport;
    match id {
        TheoremId::T1 => {
            require_side(a, b, Side::Max)?;
            hyps.push(hyp(
                "gamma_eq_delta",
                vec_eq(ga, gb),
                "shared second-shape vector",
            ));
            hyps.push(h_vec_ge("gamma_ge_one", ga, 1.0));
            hyps.push(h_similarly_ordered(
                "alpha_beta_similarly_ordered",
                &[aa, ab],
            ));
            hyps.push(h_baseline_le(
                "baseline_G_le_H",
                &grid,
                &a.baseline,
                &b.baseline,
            ));
            hyps.push(h_superadditive(
                "superadditive_phi2_psi1",
                &a.generator,
                &b.generator,
            ));
            hyps.push(h_log_shape_either(
                "log_concave_psi1_or_psi2",
                &a.generator,
                &b.generator,
                LogShape::Concave,
            ));
            hyps.push(h_maj("alpha_wsuper_beta", aa, ab, MajKind::WeakSuper));
            hyps.push(h_ndist_le("n1_le_st_n2", &a.ndist, &b.ndist));
            conclusion = st_check(b, a, &grid); // X >=st Y
        }
        TheoremId::T2 => {
            require_side(a, b, Side::Max)?;
            hyps.push(hyp(
                "alpha_eq_beta",
                vec_eq(aa, ab),
                "shared first-shape vector",
            ));
            hyps.push(h_similarly_ordered(
                "alpha_gamma_delta_similarly_ordered",
                &[aa, ga, gb],
            ));
            hyps.push(h_baseline_le(
                "baseline_H_le_G",
                &grid,
                &b.baseline,
                &a.baseline,
            ));
            hyps.push(h_superadditive(
                "superadditive_phi1_psi2",
                &b.generator,
                &a.generator,
            ));
            hyps.push(h_log_shape_either(
                "log_concave_psi1_or_psi2",
                &a.generator,
                &b.generator,
                LogShape::Concave,
            ));
            hyps.push(h_maj("gamma_wsuper_delta", ga, gb, MajKind::WeakSuper));
            hyps.push(h_ndist_le("n2_le_st_n1", &b.ndist, &a.ndist));
            conclusion = st_check(a, b, &grid); // X <=st Y
        }
        TheoremId::T3 => {
            require_side(a, b, Side::Min)?;
            hyps.push(hyp(
                "alpha_eq_beta",
                vec_eq(aa, ab),
                "shared first-shape vector",
            ));
            hyps.push(h_similarly_ordered(
                "alpha_gamma_delta_similarly_ordered",
                &[aa, ga, gb],
            ));
            hyps.push(h_baseline_le(
                "baseline_H_le_G",
                &grid,
                &b.baseline,
                &a.baseline,
            ));
            hyps.push(h_superadditive(
                "superadditive_phi2_psi1",
                &a.generator,
                &b.generator,
            ));
            hyps.push(h_log_shape_either(
                "log_convex_psi1_or_psi2",
                &a.generator,
                &b.generator,
                LogShape::Convex,
            ));
            hyps.push(h_maj("gamma_wsub_delta", gb, ga, MajKind::WeakSub));
            hyps.push(h_ndist_le("n1_le_st_n2", &a.ndist, &b.ndist));
            conclusion = st_check(a, b, &grid); // X <=st Y
        }
        TheoremId::T4 | TheoremId::T4b => {
            require_side(a, b, Side::Min)?;
            hyps.push(hyp(
                "gamma_eq_delta",
                vec_eq(ga, gb),
                "shared second-shape vector",
            ));
            if id == TheoremId::T4b {
                hyps.push(hyp(
                    "gamma_delta_all_one",
                    ga.iter().all(|&g| g == 1.0),
                    "remark variant requires unit gammas",
                ));
            }
            hyps.push(h_similarly_ordered(
                "alpha_beta_delta_similarly_ordered",
                &[aa, ab, gb],
            ));
            hyps.push(h_baseline_le(
                "baseline_H_le_G",
                &grid,
                &b.baseline,
                &a.baseline,
            ));
            hyps.push(h_superadditive(
                "superadditive_phi2_psi1",
                &a.generator,
                &b.generator,
            ));
            if id == TheoremId::T4b {
                hyps.push(h_u_log_convex_either(
                    "u_log_convex_psi1_or_psi2",
                    &a.generator,
                    &b.generator,
                ));
            } else {
                hyps.push(h_log_shape_either(
                    "log_convex_psi1_or_psi2",
                    &a.generator,
                    &b.generator,
                    LogShape::Convex,
                ));
            }
            hyps.push(h_maj("beta_wsuper_alpha", ab, aa, MajKind::WeakSuper));
            hyps.push(h_ndist_le("n1_le_st_n2", &a.ndist, &b.ndist));
            conclusion = st_check(a, b, &grid); // X <=st Y
        }
        TheoremId::T5 => {
            require_side(a, b, Side::Min)?;
            hyps.push(h_independence("independence_generators", a, b));
            hyps.push(h_ndist_equal("equal_ndist", &a.ndist, &b.ndist));
            hyps.push(hyp(
                "alpha_beta_all_one",
                aa.iter().all(|&x| x == 1.0) && ab.iter().all(|&x| x == 1.0),
                "unit first shapes",
            ));
            hyps.push(h_hazard_le("rg_le_rh", &grid, &a.baseline, &b.baseline));
            hyps.push(h_prefix_le(
                "gamma_prefix_le_delta",
                ga,
                gb,
                a.ndist.support(),
            ));
            conclusion = hr_check(b, a, &grid); // X >=hr Y
        }
        TheoremId::T6 | TheoremId::T11 => {
            require_side(a, b, Side::Min)?;
            hyps.push(h_independence("independence_generators", a, b));
            hyps.push(h_ndist_equal("equal_ndist", &a.ndist, &b.ndist));
            let shared = scalar_of(aa).zip(scalar_of(ab)).filter(|(x, y)| x == y);
            hyps.push(hyp(
                "alpha_scalar_shared",
                shared.is_some(),
                "alphas constant and equal across both models",
            ));
            hyps.push(h_baselines_equal(
                "baselines_equal",
                &a.baseline,
                &b.baseline,
            ));
            hyps.push(h_maj("gamma_majorizes_delta", gb, ga, MajKind::M));
            hyps.push(h_prefix_le(
                "gamma_prefix_le_delta",
                ga,
                gb,
                a.ndist.support(),
            ));
            if id == TheoremId::T11 {
                hyps.push(h_hazard_decreasing("rg_decreasing", &grid, &a.baseline));
                conclusion = disp_check(a, b, &default_p_grid())?; // X <=disp Y
            } else {
                conclusion = hr_check(b, a, &grid); // X >=hr Y
            }
        }
        TheoremId::T7 => {
            require_side(a, b, Side::Min)?;
            hyps.push(h_independence("independence_generators", a, b));
            hyps.push(h_ndist_equal("equal_ndist", &a.ndist, &b.ndist));
            hyps.push(hyp(
                "gamma_eq_delta",
                vec_eq(ga, gb),
                "shared second-shape vector",
            ));
            hyps.push(h_similarly_ordered(
                "alpha_beta_gamma_similarly_ordered",
                &[aa, ab, ga],
            ));
            hyps.push(h_baselines_equal(
                "baselines_equal",
                &a.baseline,
                &b.baseline,
            ));
            hyps.push(h_maj("alpha_wsuper_beta", aa, ab, MajKind::WeakSuper));
            conclusion = hr_check(b, a, &grid); // X >=hr Y
        }
        TheoremId::T8 => {
            require_side(a, b, Side::Min)?;
            hyps.push(h_independence("independence_generators", a, b));
            hyps.push(h_ndist_equal("equal_ndist", &a.ndist, &b.ndist));
            hyps.push(hyp(
                "gamma_eq_delta",
                vec_eq(ga, gb),
                "shared second-shape vector",
            ));
            hyps.push(h_similarly_ordered(
                "alpha_beta_gamma_similarly_ordered",
                &[aa, ab, ga],
            ));
            hyps.push(h_hazard_le("rh_le_rg", &grid, &b.baseline, &a.baseline));
            hyps.push(h_maj("beta_wsuper_alpha", ab, aa, MajKind::WeakSuper));
            conclusion = hr_check(a, b, &grid); // X <=hr Y
        }
        TheoremId::T9 => {
            require_side(a, b, Side::Max)?;
            hyps.push(h_independence("independence_generators", a, b));
            hyps.push(h_ndist_equal("equal_ndist", &a.ndist, &b.ndist));
            let shared = scalar_of(ga).zip(scalar_of(gb)).filter(|(x, y)| x == y);
            hyps.push(hyp(
                "gamma_scalar_shared",
                shared.is_some(),
                "gammas constant and equal across both models",
            ));
            hyps.push(h_similarly_ordered(
                "alpha_beta_similarly_ordered",
                &[aa, ab],
            ));
            hyps.push(h_vec_ge("alpha_ge_one", aa, 1.0));
            hyps.push(h_vec_ge("beta_ge_one", ab, 1.0));
            hyps.push(h_baseline_le(
                "baseline_G_le_H",
                &grid,
                &a.baseline,
                &b.baseline,
            ));
            hyps.push(h_density_ge(
                "density_g_ge_h",
                &grid,
                &a.baseline,
                &b.baseline,
            ));
            hyps.push(h_maj("alpha_wsuper_beta", aa, ab, MajKind::WeakSuper));
            conclusion = rh_check(b, a, &grid); // X >=rh Y
        }
        TheoremId::T10 => {
            require_side(a, b, Side::Min)?;
            hyps.push(h_independence("independence_generators", a, b));
            hyps.push(h_ndist_equal("equal_ndist", &a.ndist, &b.ndist));
            hyps.push(hyp(
                "gamma_eq_delta",
                vec_eq(ga, gb),
                "shared second-shape vector",
            ));
            hyps.push(h_similarly_ordered(
                "alpha_beta_gamma_similarly_ordered",
                &[aa, ab, ga],
            ));
            hyps.push(h_vec_le("alpha_le_one", aa, 1.0));
            hyps.push(h_vec_le("beta_le_one", ab, 1.0));
            hyps.push(h_hazard_le("rh_le_rg", &grid, &b.baseline, &a.baseline));
            let dec_g = h_hazard_decreasing("rg_decreasing", &grid, &a.baseline);
            let dec_h = h_hazard_decreasing("rh_decreasing", &grid, &b.baseline);
            hyps.push(hyp(
                "rg_or_rh_decreasing",
                dec_g.holds || dec_h.holds,
                format!("r_g: {}, r_h: {}", dec_g.holds, dec_h.holds),
            ));
            hyps.push(h_maj("beta_wsuper_alpha", ab, aa, MajKind::WeakSuper));
            conclusion = disp_check(a, b, &default_p_grid())?; // X <=disp Y
        }
        TheoremId::T12 => {
            require_side(a, b, Side::Min)?;
            let blk_a = two_block(aa)
                .ok_or_else(|| Error::Config("T12 requires two-block alphas in model A".into()))?;
            let blk_b = two_block(ab)
                .ok_or_else(|| Error::Config("T12 requires two-block betas in model B".into()))?;
            require(blk_a.0 == blk_b.0, "T12 requires matching block sizes")?;
            hyps.push(h_independence("independence_generators", a, b));
            hyps.push(h_ndist_equal("equal_ndist", &a.ndist, &b.ndist));
            let shared = scalar_of(ga).zip(scalar_of(gb)).filter(|(x, y)| x == y);
            hyps.push(hyp(
                "gamma_scalar_shared",
                shared.is_some(),
                "gammas constant and equal across both models",
            ));
            hyps.push(h_baselines_equal(
                "baselines_equal",
                &a.baseline,
                &b.baseline,
            ));
            let (_, a1, a2) = blk_a;
            let (_, b1, b2) = blk_b;
            hyps.push(hyp(
                "block_chain_beta2_le_alpha2_le_alpha1_le_beta1",
                b2 <= a2 && a2 <= a1 && a1 <= b1,
                format!("beta2={b2} alpha2={a2} alpha1={a1} beta1={b1}"),
            ));
            hyps.push(h_maj("alpha_majorized_by_beta", aa, ab, MajKind::M));
            conclusion = lr_check(b, a, &grid); // X >=lr Y
        }
        TheoremId::T13 => {
            require_side(a, b, Side::Min)?;
            require(
                a.generator == b.generator,
                "T13 requires a shared generator",
            )?;
            let blk_a = two_block(ga)
                .ok_or_else(|| Error::Config("T13 requires two-block gammas in model A".into()))?;
            let blk_b = two_block(gb)
                .ok_or_else(|| Error::Config("T13 requires two-block deltas in model B".into()))?;
            require(blk_a.0 == blk_b.0, "T13 requires matching block sizes")?;
            require(blk_a.2 == blk_b.2, "T13 requires a shared tail block")?;
            hyps.push(hyp(
                "alpha_beta_all_one",
                aa.iter().all(|&x| x == 1.0) && ab.iter().all(|&x| x == 1.0),
                "unit first shapes",
            ));
            hyps.push(h_baselines_equal(
                "baselines_equal",
                &a.baseline,
                &b.baseline,
            ));
            let (_, g1, g) = blk_a;
            let (_, d1, _) = blk_b;
            hyps.push(hyp(
                "gamma_chain_gamma1_ge_gamma_ge_delta1",
                g1 >= g && g >= d1,
                format!("gamma1={g1} gamma={g} delta1={d1}"),
            ));
            let cond = lr_generator_conditions(&a.generator, &default_t_grid())?;
            hyps.push(hyp(
                "psi_ratio_decreasing",
                cond.ratio_decreasing,
                "psi''/psi' decreasing on grid",
            ));
            hyps.push(hyp(
                "psi_lnpsi_increasing_concave",
                cond.psi_lnpsi_incr_concave,
                "psi ln psi / psi' increasing and concave on grid",
            ));
            // fixed-n conclusion at every n in the shared ndist support
            conclusion = fixed_n_lr_conclusion(a, b, a.ndist.support())?;
        }
        TheoremId::T14 => {
            require_side(a, b, Side::Min)?;
            let blk_a = two_block(ga)
                .ok_or_else(|| Error::Config("T14 requires two-block gammas in model A".into()))?;
            let blk_b = two_block(gb)
                .ok_or_else(|| Error::Config("T14 requires two-block deltas in model B".into()))?;
            require(blk_a.0 == blk_b.0, "T14 requires matching block sizes")?;
            require(blk_a.2 == blk_b.2, "T14 requires a shared tail block")?;
            hyps.push(h_independence("independence_generators", a, b));
            hyps.push(h_ndist_equal("equal_ndist", &a.ndist, &b.ndist));
            hyps.push(hyp(
                "alpha_beta_all_one",
                aa.iter().all(|&x| x == 1.0) && ab.iter().all(|&x| x == 1.0),
                "unit first shapes",
            ));
            hyps.push(h_baselines_equal(
                "baselines_equal",
                &a.baseline,
                &b.baseline,
            ));
            let (_, g1, g) = blk_a;
            let (_, d1, _) = blk_b;
            hyps.push(hyp(
                "gamma_chain_gamma1_ge_gamma_ge_delta1",
                g1 >= g && g >= d1,
                format!("gamma1={g1} gamma={g} delta1={d1}"),
            ));
            conclusion = lr_check(a, b, &grid); // X <=lr Y
        }
        TheoremId::T15 => {
            require_side(a, b, Side::Min)?;
            let blk_a = two_block(aa)
                .ok_or_else(|| Error::Config("T15 requires two-block alphas in model A".into()))?;
            let blk_b = two_block(ab)
                .ok_or_else(|| Error::Config("T15 requires two-block betas in model B".into()))?;
            require(blk_a.0 == blk_b.0, "T15 requires matching block sizes")?;
            require(blk_a.2 == blk_b.2, "T15 requires a shared tail block")?;
            hyps.push(h_independence("independence_generators", a, b));
            hyps.push(h_ndist_equal("equal_ndist", &a.ndist, &b.ndist));
            hyps.push(hyp(
                "gamma_delta_all_one",
                ga.iter().all(|&x| x == 1.0) && gb.iter().all(|&x| x == 1.0),
                "unit second shapes",
            ));
            hyps.push(h_baselines_equal(
                "baselines_equal",
                &a.baseline,
                &b.baseline,
            ));
            let (_, a1, al) = blk_a;
            let (_, b1, _) = blk_b;
            hyps.push(hyp(
                "alpha_chain_alpha1_ge_alpha_ge_beta1",
                a1 >= al && al >= b1,
                format!("alpha1={a1} alpha={al} beta1={b1}"),
            ));
            conclusion = lr_check(b, a, &grid); // X >=lr Y
        }
    }
    let overall = overall_of(&hyps, &conclusion);
    Ok(TheoremCase {
        id,
        hypothesis_results: hyps,
        conclusion,
        overall,
    })
}

/// Worst fixed-n lr verdict (X <=lr Y) over a list of sample sizes.
fn fixed_n_lr_conclusion(
    a: &ExtremeModel,
    b: &ExtremeModel,
    n_list: &[usize],
) -> Result<OrderReport> {
    let mut worst: Option<OrderReport> = None;
    for &n in n_list {
        let an = with_degenerate_n(a, n)?;
        let bn = with_degenerate_n(b, n)?;
        let grid = default_x_grid(&an, &bn)?;
        let mut r = lr_check(&an, &bn, &grid);
        r.grid_spec = format!("fixed n={n}: {}", r.grid_spec);
        worst = Some(match worst {
            None => r,
            Some(w) => {
                if r.max_violation > w.max_violation {
                    r
                } else {
                    w
                }
            }
        });
    }
    worst.ok_or_else(|| Error::Config("empty n list".into()))
}

fn with_degenerate_n(m: &ExtremeModel, n: usize) -> Result<ExtremeModel> {
    ExtremeModel::new(
        m.side,
        m.baseline,
        m.params.clone(),
        m.generator,
        NDist::degenerate(n),
    )
}

// ---------------------------------------------------------------------------
// counterexamples
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Counterexample {
    Ce1,
    Ce2,
    Ce3,
}

impl Counterexample {
    pub fn parse(s: &str) -> Result<Counterexample> {
        match s.to_ascii_lowercase().as_str() {
            "ce1" => Ok(Counterexample::Ce1),
            "ce2" => Ok(Counterexample::Ce2),
            "ce3" => Ok(Counterexample::Ce3),
            other => Err(Error::Config(format!("unknown counterexample {other:?}"))),
        }
    }

    /// The theorem whose hypotheses the counterexample perturbs.
    pub fn theorem(&self) -> TheoremId {
        match self {
            Counterexample::Ce1 => TheoremId::T1,
            Counterexample::Ce2 => TheoremId::T3,
            Counterexample::Ce3 => TheoremId::T4,
        }
    }
}

fn ce_ndists() -> (NDist, NDist) {
    let n1 = NDist::new(vec![3, 4, 5], vec![0.2, 0.4, 0.4]).unwrap();
    let n2 = NDist::new(vec![3, 4, 5], vec![0.2, 0.6, 0.2]).unwrap();
    (n1, n2)
}

/// The published fixture pair for a counterexample. Parameter vectors and
/// pmfs are stored verbatim; CE3 keeps the baseline assignment that
/// reproduces the published figure (inverse-exponential for the X sample,
/// exponential for the Y sample, as in CE1 and CE2).
pub fn counterexample_models(which: Counterexample) -> (ExtremeModel, ExtremeModel) {
    let (n1, n2) = ce_ndists();
    let invexp = Baseline::InverseExponential;
    let exp1 = Baseline::Exponential { rate: 1.0 };
    match which {
        Counterexample::Ce1 => {
            let gammas = vec![1.2, 1.5, 1.9, 2.0, 2.1];
            let a = ExtremeModel::new(
                Side::Max,
                invexp,
                ParamVector::new(vec![1.1, 0.001, 0.0001, 0.00001, 0.00001], gammas.clone())
                    .unwrap(),
                Generator::Gumbel { theta: 2.0 },
                n1,
            )
            .unwrap();
            let b = ExtremeModel::new(
                Side::Max,
                exp1,
                ParamVector::new(vec![2.1, 3.001, 5.0001, 0.001, 0.0001], gammas).unwrap(),
                Generator::Gumbel { theta: 2.1 },
                n2,
            )
            .unwrap();
            (a, b)
        }
        Counterexample::Ce2 => {
            let alphas = vec![0.01, 7.0, 9.0, 9.1, 9.12];
            let a = ExtremeModel::new(
                Side::Min,
                invexp,
                ParamVector::new(alphas.clone(), vec![3.9, 3.1, 2.9, 2.8, 2.1]).unwrap(),
                Generator::Gumbel { theta: 1.4 },
                n1,
            )
            .unwrap();
            let b = ExtremeModel::new(
                Side::Min,
                exp1,
                ParamVector::new(alphas, vec![3.2, 2.6, 1.9, 1.2, 1.0]).unwrap(),
                Generator::Gumbel { theta: 2.5 },
                n2,
            )
            .unwrap();
            (a, b)
        }
        Counterexample::Ce3 => {
            let gammas = vec![5.02, 2.05, 1.09, 0.01, 0.001];
            let a = ExtremeModel::new(
                Side::Min,
                invexp,
                ParamVector::new(vec![7.1, 2.9, 1.56, 0.03, 0.201], gammas.clone()).unwrap(),
                Generator::GumbelHougaard { theta: 4.0002 },
                n1,
            )
            .unwrap();
            let b = ExtremeModel::new(
                Side::Min,
                exp1,
                ParamVector::new(vec![8.1, 3.009, 2.6, 1.06, 0.01], gammas).unwrap(),
                Generator::GumbelHougaard { theta: 4.0001 },
                n2,
            )
            .unwrap();
            (a, b)
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub diff: f64,
    pub model_a_value: f64,
    pub model_b_value: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CounterexampleRun {
    pub which: Counterexample,
    pub sign_change: bool,
    /// Bisected crossing abscissae.
    pub crossing_locations: Vec<f64>,
    pub curve: Vec<CurvePoint>,
}

/// Default counterexample grid: 512 log-spaced points on `(1e-3, 20)`.
pub fn default_ce_grid() -> Vec<f64> {
    log_grid(1e-3, 20.0, 512)
}

/// Evaluate a counterexample's survival-difference curve and detect sign
/// changes. The plotted quantity is the survival difference of the two
/// extremes, matching the published figures.
pub fn run_counterexample(which: Counterexample, x_grid: &[f64]) -> CounterexampleRun {
    let (a, b) = counterexample_models(which);
    let f = |x: f64| {
        let (va, vb) = (a.sf(x), b.sf(x));
        (va - vb, va, vb)
    };
    let mut curve = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let (d, va, vb) = f(x);
        curve.push(CurvePoint {
            x,
            diff: d,
            model_a_value: va,
            model_b_value: vb,
        });
    }
    let mut crossings = Vec::new();
    for w in curve.windows(2) {
        let (p0, p1) = (&w[0], &w[1]);
        if p0.diff != 0.0 && p1.diff != 0.0 && p0.diff.signum() != p1.diff.signum() {
            let (mut lo, mut hi) = (p0.x, p1.x);
            let mut flo = p0.diff;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid).0;
                if fm == 0.0 {
                    lo = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            crossings.push(0.5 * (lo + hi));
        }
    }
    CounterexampleRun {
        which,
        sign_change: !crossings.is_empty(),
        crossing_locations: crossings,
        curve,
    }
}

// ---------------------------------------------------------------------------
// lemma: ratio of shifted functions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize)]
pub struct Lemma2Outcome {
    /// All three premise ratios nonincreasing and all functions positive.
    pub premises_hold: bool,
    /// Verdict of the combined ratio; `None` when the premises fail.
    pub conclusion_decreasing: Option<bool>,
}

/// Grid check of the shifted-ratio lemma: if `d1/d2`, `d/d2` and `d1/d` are
/// nonincreasing (all functions positive), then `(d1+d)/(d2+d)` is
/// nonincreasing.
pub fn lemma2_property_check(d1: &[f64], d2: &[f64], d: &[f64]) -> Result<Lemma2Outcome> {
    let n = d1.len();
    if d2.len() != n || d.len() != n || n < 2 {
        return Err(Error::Config(
            "lemma check needs three equal-length grids, len >= 2".into(),
        ));
    }
    if d1
        .iter()
        .chain(d2)
        .chain(d)
        .any(|&v| v.is_nan() || v <= 0.0 || !v.is_finite())
    {
        return Err(Error::Domain(
            "lemma check requires positive finite values".into(),
        ));
    }
    let nonincreasing = |f: &dyn Fn(usize) -> f64| -> bool {
        (1..n).all(|i| {
            let (a, b) = (f(i - 1), f(i));
            b <= a + GRID_SLACK * (1.0 + a.abs() + b.abs())
        })
    };
    let premises = nonincreasing(&|i| d1[i] / d2[i])
        && nonincreasing(&|i| d[i] / d2[i])
        && nonincreasing(&|i| d1[i] / d[i]);
    if !premises {
        return Ok(Lemma2Outcome {
            premises_hold: false,
            conclusion_decreasing: None,
        });
    }
    let concl = nonincreasing(&|i| (d1[i] + d[i]) / (d2[i] + d[i]));
    Ok(Lemma2Outcome {
        premises_hold: true,
        conclusion_decreasing: Some(concl),
    })
}

// ---------------------------------------------------------------------------
// random validation suites
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SuiteSummary {
    pub id: TheoremId,
    pub trials: usize,
    pub validated: usize,
    pub hypotheses_unmet: usize,
    pub contradictions: usize,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    // splitmix-style spreading so trial streams are independent of dispatch
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Run `trials` seeded hypothesis-forcing samples of a theorem and tally
/// the outcomes. Deterministic given `(seed, trials)` regardless of
/// dispatch order.
pub fn random_validation_suite(id: TheoremId, trials: usize, seed: u64) -> Result<SuiteSummary> {
    let outcomes: Vec<Overall> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let (a, b) = sample_theorem_pair(id, &mut rng, None);
            check_theorem(id, &a, &b).map(|case| case.overall)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut s = SuiteSummary {
        id,
        trials,
        validated: 0,
        hypotheses_unmet: 0,
        contradictions: 0,
    };
    for o in outcomes {
        match o {
            Overall::Validated => s.validated += 1,
            Overall::HypothesesUnmet => s.hypotheses_unmet += 1,
            Overall::Contradiction => s.contradictions += 1,
        }
    }
    Ok(s)
}

/// Hypothesis slots a relaxation scan may free up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum RelaxSlot {
    Majorization,
    GeneratorConditions,
    BaselineDominance,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct RelaxationReport {
    pub id: TheoremId,
    pub slot: RelaxSlot,
    pub trials: usize,
    /// Trials where the relaxed hypothesis actually came out false.
    pub hypothesis_false: usize,
    /// Of those, how many had a failing conclusion: evidence the hypothesis
    /// is load-bearing.
    pub conclusion_fails_given_false: usize,
    pub contradictions: usize,
}

/// Relaxation search: re-run the sampler with one hypothesis slot freed and
/// count how often the conclusion breaks when that hypothesis is false.
pub fn scan_relaxations(id: TheoremId, trials: usize, seed: u64) -> Result<Vec<RelaxationReport>> {
    let slots = [
        RelaxSlot::Majorization,
        RelaxSlot::GeneratorConditions,
        RelaxSlot::BaselineDominance,
    ];
    let mut reports = Vec::new();
    for slot in slots {
        let runs: Vec<(bool, bool, Overall)> = (0..trials as u64)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed, t);
                let (a, b) = sample_theorem_pair(id, &mut rng, Some(slot));
                let case = check_theorem(id, &a, &b)?;
                let relaxed_false = !case.hypotheses_hold();
                let fails = case.conclusion.verdict == Verdict::Fails
                    && case.conclusion.max_violation > CONTRADICTION_MARGIN;
                Ok((relaxed_false, fails, case.overall))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut rep = RelaxationReport {
            id,
            slot,
            trials,
            hypothesis_false: 0,
            conclusion_fails_given_false: 0,
            contradictions: 0,
        };
        for (hf, cf, o) in runs {
            if hf {
                rep.hypothesis_false += 1;
                if cf {
                    rep.conclusion_fails_given_false += 1;
                }
            }
            if o == Overall::Contradiction {
                rep.contradictions += 1;
            }
        }
        reports.push(rep);
    }
    Ok(reports)
}

// ---------------------------------------------------------------------------
// constructive samplers
// ---------------------------------------------------------------------------

fn asc_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

fn add_componentwise(base: &[f64], rng: &mut ChaCha8Rng, max_inc: f64) -> Vec<f64> {
    // ascending increments keep ascending order of the sum
    let inc = asc_vec(rng, base.len(), 0.0, max_inc);
    base.iter().zip(inc).map(|(b, i)| b + i).collect()
}

fn equal_mixture_ndist(rng: &mut ChaCha8Rng, n: usize) -> NDist {
    let k = rng.gen_range(1..=3.min(n));
    let support: Vec<usize> = (n + 1 - k..=n).collect();
    let mut probs: Vec<f64> = (0..k).map(|_| rng.gen_range(0.2..1.0)).collect();
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    if k == 1 {
        return NDist::degenerate(n);
    }
    NDist::new(support, probs).unwrap()
}

/// Baseline pair with `cdf_G <= cdf_H` pointwise (for exponentials this is
/// `rate_G <= rate_H`; for shared-shape Weibulls, the scale-rate ordering).
fn dominated_baseline_pair(rng: &mut ChaCha8Rng, shape_lt_one: bool) -> (Baseline, Baseline) {
    if rng.gen_bool(0.5) && !shape_lt_one {
        let lo = rng.gen_range(0.5..2.0);
        let hi = lo * rng.gen_range(1.0..1.8);
        (
            Baseline::Exponential { rate: lo },
            Baseline::Exponential { rate: hi },
        )
    } else {
        let k = if shape_lt_one {
            rng.gen_range(0.4..0.95)
        } else {
            rng.gen_range(0.7..2.0)
        };
        let lo = rng.gen_range(0.5..1.5);
        let hi = lo * rng.gen_range(1.0..1.5);
        (
            Baseline::Weibull { rate: lo, shape: k },
            Baseline::Weibull { rate: hi, shape: k },
        )
    }
}

/// Generator pair with super-additive `φ₂∘ψ₁` and at least one log-concave
/// member.
fn concave_generator_pair(rng: &mut ChaCha8Rng) -> (Generator, Generator) {
    match rng.gen_range(0..3) {
        0 => (Generator::Independence, Generator::Independence),
        1 => (
            Generator::Independence,
            Generator::Gumbel {
                theta: rng.gen_range(1.0..3.0),
            },
        ),
        _ => {
            let th = rng.gen_range(-0.9..-0.05);
            (Generator::Amh { theta: th }, Generator::Amh { theta: th })
        }
    }
}

/// Generator pair with super-additive `φ₂∘ψ₁` and at least one log-convex
/// member.
fn convex_generator_pair(rng: &mut ChaCha8Rng) -> (Generator, Generator) {
    match rng.gen_range(0..4) {
        0 => (
            Generator::Independence,
            Generator::Gumbel {
                theta: rng.gen_range(1.0..3.0),
            },
        ),
        1 => {
            let a = rng.gen_range(1.0..2.5);
            let b = a + rng.gen_range(0.0..1.0);
            (
                Generator::Gumbel { theta: a },
                Generator::Gumbel { theta: b },
            )
        }
        2 => {
            let a = rng.gen_range(0.3..2.0);
            let b = a + rng.gen_range(0.0..1.5);
            (
                Generator::Clayton { theta: a },
                Generator::Clayton { theta: b },
            )
        }
        _ => {
            let a = rng.gen_range(1.0..3.0);
            let b = a + rng.gen_range(0.0..1.0);
            (
                Generator::GumbelHougaard { theta: a },
                Generator::GumbelHougaard { theta: b },
            )
        }
    }
}

fn build(
    side: Side,
    baseline: Baseline,
    alphas: Vec<f64>,
    gammas: Vec<f64>,
    generator: Generator,
    ndist: NDist,
) -> ExtremeModel {
    ExtremeModel::new(
        side,
        baseline,
        ParamVector::new(alphas, gammas).expect("sampler emits valid params"),
        generator,
        ndist,
    )
    .expect("sampler emits valid models")
}

/// Reverse Robin Hood spread of an ascending vector: moves mass from a
/// low coordinate to the top one, preserving the total and the ascending
/// order, so the input majorizes... is majorized by the output.
fn spread_ascending(base: &[f64], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = base.len();
    let mut v = base.to_vec();
    if n < 2 {
        return v;
    }
    let i = rng.gen_range(0..n - 1);
    let t = rng.gen_range(0.0..0.8) * v[i].min(base[0]) * 0.9;
    v[i] -= t;
    v[n - 1] += t;
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Draw a hypothesis-forcing model pair for a theorem. `relax` frees one
/// hypothesis slot so the relaxation scan can observe violations.
pub fn sample_theorem_pair(
    id: TheoremId,
    rng: &mut ChaCha8Rng,
    relax: Option<RelaxSlot>,
) -> (ExtremeModel, ExtremeModel) {
    let relax_maj = relax == Some(RelaxSlot::Majorization);
    let relax_gen = relax == Some(RelaxSlot::GeneratorConditions);
    let relax_base = relax == Some(RelaxSlot::BaselineDominance);
    let n = rng.gen_range(2..=5usize);
    match id {
        TheoremId::T1 => {
            let beta = asc_vec(rng, n, 0.2, 3.0);
            let alpha = if relax_maj {
                asc_vec(rng, n, 0.2, 3.0)
            } else {
                add_componentwise(&beta, rng, 1.5)
            };
            let gam = asc_vec(rng, n, 1.0, 4.0);
            let (bg, bh) = dominated_baseline_pair(rng, false);
            let (bg, bh) = if relax_base { (bh, bg) } else { (bg, bh) };
            let (g1, g2) = if relax_gen {
                convex_generator_pair(rng)
            } else {
                concave_generator_pair(rng)
            };
            let nd = equal_mixture_ndist(rng, n);
            (
                build(Side::Max, bg, alpha, gam.clone(), g1, nd.clone()),
                build(Side::Max, bh, beta, gam, g2, nd),
            )
        }
        TheoremId::T2 => {
            let alpha = asc_vec(rng, n, 0.2, 3.0);
            let delta = asc_vec(rng, n, 1.0, 3.0);
            let gamma = if relax_maj {
                asc_vec(rng, n, 1.0, 3.0)
            } else {
                add_componentwise(&delta, rng, 1.5)
            };
            let (bh, bg) = dominated_baseline_pair(rng, false); // H <= G
            let (bh, bg) = if relax_base { (bg, bh) } else { (bh, bg) };
            // phi_1 (model A's) after psi_2 (model B's) must be super-additive
            let (g2, g1) = if relax_gen {
                convex_generator_pair(rng)
            } else {
                concave_generator_pair(rng)
            };
            let nd = equal_mixture_ndist(rng, n);
            (
                build(Side::Max, bg, alpha.clone(), gamma, g1, nd.clone()),
                build(Side::Max, bh, alpha, delta, g2, nd),
            )
        }
        TheoremId::T3 => {
            let alpha = asc_vec(rng, n, 0.3, 4.0);
            let delta = asc_vec(rng, n, 0.3, 3.0);
            let gamma = if relax_maj {
                asc_vec(rng, n, 0.3, 3.0)
            } else {
                add_componentwise(&delta, rng, 1.5)
            };
            let (bh, bg) = dominated_baseline_pair(rng, false); // H <= G
            let (bh, bg) = if relax_base { (bg, bh) } else { (bh, bg) };
            let (g1, g2) = if relax_gen {
                concave_generator_pair(rng)
            } else {
                convex_generator_pair(rng)
            };
            let nd = equal_mixture_ndist(rng, n);
            (
                build(Side::Min, bg, alpha.clone(), gamma, g1, nd.clone()),
                build(Side::Min, bh, alpha, delta, g2, nd),
            )
        }
        TheoremId::T4 | TheoremId::T4b => {
            let alpha = asc_vec(rng, n, 0.3, 3.0);
            let beta = if relax_maj {
                asc_vec(rng, n, 0.3, 3.0)
            } else {
                add_componentwise(&alpha, rng, 1.5)
            };
            let gam = if id == TheoremId::T4b {
                vec![1.0; n]
            } else {
                asc_vec(rng, n, 0.5, 3.0)
            };
            let (bh, bg) = dominated_baseline_pair(rng, false); // H <= G
            let (bh, bg) = if relax_base { (bg, bh) } else { (bh, bg) };
            let (g1, g2) = if relax_gen {
                concave_generator_pair(rng)
            } else {
                convex_generator_pair(rng)
            };
            let nd = equal_mixture_ndist(rng, n);
            (
                build(Side::Min, bg, alpha, gam.clone(), g1, nd.clone()),
                build(Side::Min, bh, beta, gam, g2, nd),
            )
        }
        TheoremId::T5 => {
            // constant-hazard comparison is exact for degenerate N
            let rate_g = rng.gen_range(0.5..2.0);
            let ratio = rng.gen_range(1.0..1.3);
            let rate_h = rate_g * ratio;
            let (rate_g, rate_h) = if relax_base {
                (rate_h, rate_g)
            } else {
                (rate_g, rate_h)
            };
            let delta: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..3.0)).collect();
            let gamma: Vec<f64> = if relax_maj {
                (0..n).map(|_| rng.gen_range(0.5..3.0)).collect()
            } else {
                delta
                    .iter()
                    .map(|&d| d * rng.gen_range(0.5..0.95))
                    .collect()
            };
            let nd = NDist::degenerate(n);
            (
                build(
                    Side::Min,
                    Baseline::Exponential { rate: rate_g },
                    vec![1.0; n],
                    gamma,
                    Generator::Independence,
                    nd.clone(),
                ),
                build(
                    Side::Min,
                    Baseline::Exponential { rate: rate_h },
                    vec![1.0; n],
                    delta,
                    Generator::Independence,
                    nd,
                ),
            )
        }
        TheoremId::T6 | TheoremId::T11 => {
            let delta = asc_vec(rng, n, 0.5, 3.0);
            let gamma = if relax_maj {
                asc_vec(rng, n, 0.5, 3.0)
            } else {
                spread_ascending(&delta, rng)
            };
            let alpha = rng.gen_range(0.5..2.5);
            let b = if id == TheoremId::T11 {
                Baseline::Weibull {
                    rate: rng.gen_range(0.5..1.5),
                    shape: rng.gen_range(0.4..0.95),
                }
            } else {
                Baseline::Exponential {
                    rate: rng.gen_range(0.5..2.0),
                }
            };
            let nd = NDist::degenerate(n);
            (
                build(
                    Side::Min,
                    b,
                    vec![alpha; n],
                    gamma,
                    Generator::Independence,
                    nd.clone(),
                ),
                build(
                    Side::Min,
                    b,
                    vec![alpha; n],
                    delta,
                    Generator::Independence,
                    nd,
                ),
            )
        }
        TheoremId::T7 => {
            let beta = asc_vec(rng, n, 0.3, 3.0);
            let alpha = if relax_maj {
                asc_vec(rng, n, 0.3, 3.0)
            } else {
                add_componentwise(&beta, rng, 1.5)
            };
            let gam = asc_vec(rng, n, 0.5, 3.0);
            let b = Baseline::Exponential {
                rate: rng.gen_range(0.5..2.0),
            };
            let nd = NDist::degenerate(n);
            (
                build(
                    Side::Min,
                    b,
                    alpha,
                    gam.clone(),
                    Generator::Independence,
                    nd.clone(),
                ),
                build(Side::Min, b, beta, gam, Generator::Independence, nd),
            )
        }
        TheoremId::T8 => {
            let alpha = asc_vec(rng, n, 1.0, 3.0);
            let beta = if relax_maj {
                asc_vec(rng, n, 1.0, 3.0)
            } else {
                add_componentwise(&alpha, rng, 1.5)
            };
            let gam = asc_vec(rng, n, 0.5, 3.0);
            let rate_h = rng.gen_range(0.5..2.0);
            let rate_g = rate_h * rng.gen_range(1.0..1.5);
            let (rate_g, rate_h) = if relax_base {
                (rate_h, rate_g)
            } else {
                (rate_g, rate_h)
            };
            let nd = NDist::degenerate(n);
            (
                build(
                    Side::Min,
                    Baseline::Exponential { rate: rate_g },
                    alpha,
                    gam.clone(),
                    Generator::Independence,
                    nd.clone(),
                ),
                build(
                    Side::Min,
                    Baseline::Exponential { rate: rate_h },
                    beta,
                    gam,
                    Generator::Independence,
                    nd,
                ),
            )
        }
        TheoremId::T9 => {
            let beta = asc_vec(rng, n, 1.0, 3.0);
            let alpha = if relax_maj {
                asc_vec(rng, n, 1.0, 3.0)
            } else {
                add_componentwise(&beta, rng, 1.5)
            };
            let gam = rng.gen_range(0.5..3.0);
            let b = Baseline::Exponential {
                rate: rng.gen_range(0.5..2.0),
            };
            let nd = NDist::degenerate(n);
            (
                build(
                    Side::Max,
                    b,
                    alpha,
                    vec![gam; n],
                    Generator::Independence,
                    nd.clone(),
                ),
                build(
                    Side::Max,
                    b,
                    beta,
                    vec![gam; n],
                    Generator::Independence,
                    nd,
                ),
            )
        }
        TheoremId::T10 => {
            let alpha = asc_vec(rng, n, 0.2, 0.9);
            let beta = if relax_maj {
                asc_vec(rng, n, 0.2, 0.9)
            } else {
                let inc = asc_vec(rng, n, 0.0, 0.09);
                alpha
                    .iter()
                    .zip(inc)
                    .map(|(&a, i)| (a + i).min(1.0))
                    .collect()
            };
            let gam = asc_vec(rng, n, 0.5, 2.5);
            let shape = rng.gen_range(0.4..0.95);
            let rate_h = rng.gen_range(0.5..1.5);
            let rate_g = rate_h * rng.gen_range(1.0..1.5);
            let (rate_g, rate_h) = if relax_base {
                (rate_h, rate_g)
            } else {
                (rate_g, rate_h)
            };
            let nd = NDist::degenerate(n);
            (
                build(
                    Side::Min,
                    Baseline::Weibull {
                        rate: rate_g,
                        shape,
                    },
                    alpha,
                    gam.clone(),
                    Generator::Independence,
                    nd.clone(),
                ),
                build(
                    Side::Min,
                    Baseline::Weibull {
                        rate: rate_h,
                        shape,
                    },
                    beta,
                    gam,
                    Generator::Independence,
                    nd,
                ),
            )
        }
        TheoremId::T12 => {
            let p = rng.gen_range(1..=3usize);
            let q = rng.gen_range(1..=3usize);
            let n = p + q;
            let a2 = rng.gen_range(0.5..2.0);
            let a1 = a2 + rng.gen_range(0.1..1.0);
            let t = rng.gen_range(0.05..0.8) * a2 / p as f64;
            let (b1, b2) = if relax_maj {
                (
                    a1 - rng.gen_range(0.0..0.5) * (a1 - a2),
                    a2 + rng.gen_range(0.01..0.3),
                )
            } else {
                (a1 + q as f64 * t, a2 - p as f64 * t)
            };
            let gam = rng.gen_range(0.5..3.0);
            let b = Baseline::Exponential {
                rate: rng.gen_range(0.5..2.0),
            };
            let nd = NDist::degenerate(n);
            let alphas = [vec![a1; p], vec![a2; q]].concat();
            let betas = [vec![b1; p], vec![b2; q]].concat();
            (
                build(
                    Side::Min,
                    b,
                    alphas,
                    vec![gam; n],
                    Generator::Independence,
                    nd.clone(),
                ),
                build(
                    Side::Min,
                    b,
                    betas,
                    vec![gam; n],
                    Generator::Independence,
                    nd,
                ),
            )
        }
        TheoremId::T13 | TheoremId::T14 => {
            let p = rng.gen_range(1..=3usize);
            let q = rng.gen_range(1..=3usize);
            let n = p + q;
            let gam = rng.gen_range(0.5..2.5);
            let g1 = gam + rng.gen_range(0.05..1.5);
            let d1 = if relax_maj {
                gam + rng.gen_range(0.05..1.0)
            } else {
                gam * rng.gen_range(0.3..1.0)
            };
            let b = Baseline::Exponential {
                rate: rng.gen_range(0.5..2.0),
            };
            // only the independence generator satisfies both T13 generator
            // conditions among the shipped families
            let gen = if relax_gen && id == TheoremId::T13 {
                Generator::Amh {
                    theta: rng.gen_range(-0.9..-0.1),
                }
            } else {
                Generator::Independence
            };
            let nd = NDist::degenerate(n);
            let gx = [vec![g1; p], vec![gam; q]].concat();
            let gy = [vec![d1; p], vec![gam; q]].concat();
            (
                build(Side::Min, b, vec![1.0; n], gx, gen, nd.clone()),
                build(Side::Min, b, vec![1.0; n], gy, gen, nd),
            )
        }
        TheoremId::T15 => {
            let p = rng.gen_range(1..=3usize);
            let q = rng.gen_range(1..=3usize);
            let n = p + q;
            let al = rng.gen_range(0.5..2.5);
            let a1 = al + rng.gen_range(0.05..1.5);
            let b1 = if relax_maj {
                al + rng.gen_range(0.05..1.0)
            } else {
                al * rng.gen_range(0.3..1.0)
            };
            let b = Baseline::Exponential {
                rate: rng.gen_range(0.5..2.0),
            };
            let nd = NDist::degenerate(n);
            let ax = [vec![a1; p], vec![al; q]].concat();
            let bx = [vec![b1; p], vec![al; q]].concat();
            (
                build(
                    Side::Min,
                    b,
                    ax,
                    vec![1.0; n],
                    Generator::Independence,
                    nd.clone(),
                ),
                build(Side::Min, b, bx, vec![1.0; n], Generator::Independence, nd),
            )
        }
    }
}

/// The cor7 biconditional harness: draws pairs where the per-prefix hazard
/// direction is decidable with the stated margin, and reports whether the
/// grid hr verdict matched the sign of `Σδ − Σγ` each time.
pub fn cor7_direction_matches(trials: usize, seed: u64) -> Result<(usize, usize)> {
    let mut matches = 0;
    for t in 0..trials as u64 {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(2..=5usize);
        let rate_g = rng.gen_range(0.5..2.0);
        let ratio = rng.gen_range(1.0..1.2);
        let rate_h = rate_g * ratio;
        let delta: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..3.0)).collect();
        let bigger = rng.gen_bool(0.5);
        let gamma: Vec<f64> = if bigger {
            // force hazard gap the other way: γ_i λ_G > δ_i λ_H with margin
            delta
                .iter()
                .map(|&d| d * ratio * rng.gen_range(1.02..1.4))
                .collect()
        } else {
            delta
                .iter()
                .map(|&d| d * rng.gen_range(0.5..0.95))
                .collect()
        };
        let nd = NDist::degenerate(n);
        let a = build(
            Side::Min,
            Baseline::Exponential { rate: rate_g },
            vec![1.0; n],
            gamma.clone(),
            Generator::Independence,
            nd.clone(),
        );
        let b = build(
            Side::Min,
            Baseline::Exponential { rate: rate_h },
            vec![1.0; n],
            delta.clone(),
            Generator::Independence,
            nd,
        );
        let grid = default_x_grid(&a, &b)?;
        let report = hr_check(&b, &a, &grid); // X >=hr Y?
        let sum_g: f64 = gamma.iter().sum();
        let sum_d: f64 = delta.iter().sum();
        let margin_ok = (rate_h * sum_d - rate_g * sum_g).abs() > CONTRADICTION_MARGIN;
        let expected_holds = sum_d - sum_g > 0.0;
        let verdict_holds = report.verdict == Verdict::Holds;
        if margin_ok && expected_holds == verdict_holds {
            matches += 1;
        }
    }
    Ok((matches, trials))
}
