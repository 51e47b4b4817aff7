//! The Kumaraswamy-generalized transform of a baseline.
//!
//! A Kw-G component with shapes `(α, γ)` over baseline `G` has cdf
//! `F(x) = 1 − (1 − G^α(x))^γ`. Powers are computed through `exp`/`ln`
//! with `expm1`/`ln_1p` kernels so that both tails stay accurate: the
//! survival side is built from the baseline's native survival function
//! and never goes through `1 − cdf`.

use crate::baseline::Baseline;
use crate::{Error, Result};

/// Shape pair of a single Kw-G component.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct KwGParams {
    pub alpha: f64,
    pub gamma: f64,
}

impl KwGParams {
    pub fn new(alpha: f64, gamma: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite() && gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Domain(format!(
                "Kw-G shapes must be positive finite, got alpha={alpha}, gamma={gamma}"
            )));
        }
        Ok(KwGParams { alpha, gamma })
    }
}

/// Per-component shape vectors of a heterogeneous sample.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ParamVector {
    alphas: Vec<f64>,
    gammas: Vec<f64>,
}

impl ParamVector {
    pub fn new(alphas: Vec<f64>, gammas: Vec<f64>) -> Result<Self> {
        if alphas.len() != gammas.len() {
            return Err(Error::Config(format!(
                "alphas (len {}) and gammas (len {}) must have equal length",
                alphas.len(),
                gammas.len()
            )));
        }
        if alphas.is_empty() {
            return Err(Error::Config("parameter vectors must be nonempty".into()));
        }
        for (i, &a) in alphas.iter().enumerate() {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::Domain(format!("alphas[{i}]={a} must be positive")));
            }
        }
        for (i, &g) in gammas.iter().enumerate() {
            if !(g > 0.0 && g.is_finite()) {
                return Err(Error::Domain(format!("gammas[{i}]={g} must be positive")));
            }
        }
        Ok(ParamVector { alphas, gammas })
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn component(&self, i: usize) -> KwGParams {
        KwGParams {
            alpha: self.alphas[i],
            gamma: self.gammas[i],
        }
    }
}

/// `1 − G^α(x)` from the baseline's native survival function.
pub(crate) fn one_minus_g_alpha(b: &Baseline, alpha: f64, x: f64) -> f64 {
    let sf = b.sf(x);
    if sf <= 0.0 {
        0.0
    } else if sf >= 1.0 {
        1.0
    } else {
        -f64::exp_m1(alpha * f64::ln_1p(-sf))
    }
}

/// `F(x) = 1 − (1 − G^α)^γ`.
pub fn kwg_cdf(p: KwGParams, b: &Baseline, x: f64) -> f64 {
    let t = one_minus_g_alpha(b, p.alpha, x);
    if t <= 0.0 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        -f64::exp_m1(p.gamma * t.ln())
    }
}

/// `1 − F(x) = (1 − G^α)^γ`, the component survival.
pub fn kwg_sf(p: KwGParams, b: &Baseline, x: f64) -> f64 {
    let t = one_minus_g_alpha(b, p.alpha, x);
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        (p.gamma * t.ln()).exp()
    }
}

/// `f(x) = γ α g(x) G^{α−1} (1 − G^α)^{γ−1}`.
pub fn kwg_pdf(p: KwGParams, b: &Baseline, x: f64) -> f64 {
    let g = b.pdf(x);
    if g == 0.0 {
        return 0.0;
    }
    let cdf = b.cdf(x);
    if cdf <= 0.0 {
        // the α-power blows up or vanishes at the support edge
        return if p.alpha >= 1.0 { 0.0 } else { f64::INFINITY };
    }
    let t = one_minus_g_alpha(b, p.alpha, x);
    if t <= 0.0 {
        return if p.gamma >= 1.0 { 0.0 } else { f64::INFINITY };
    }
    let ln_val =
        (p.gamma * p.alpha).ln() + g.ln() + (p.alpha - 1.0) * cdf.ln() + (p.gamma - 1.0) * t.ln();
    ln_val.exp()
}

/// `αγ g G^{α−1} / (1 − G^α)`.
pub fn kwg_hazard(p: KwGParams, b: &Baseline, x: f64) -> Result<f64> {
    let t = one_minus_g_alpha(b, p.alpha, x);
    if t < 1e-300 {
        return Err(Error::Domain(format!(
            "Kw-G hazard denominator underflow at x={x}"
        )));
    }
    let g = b.pdf(x);
    let cdf = b.cdf(x);
    if g == 0.0 {
        return Ok(0.0);
    }
    if cdf <= 0.0 {
        return Ok(if p.alpha >= 1.0 { 0.0 } else { f64::INFINITY });
    }
    let ln_val = (p.alpha * p.gamma).ln() + g.ln() + (p.alpha - 1.0) * cdf.ln() - t.ln();
    Ok(ln_val.exp())
}

/// `f(x) / F(x)`.
pub fn kwg_reversed_hazard(p: KwGParams, b: &Baseline, x: f64) -> Result<f64> {
    let cdf = kwg_cdf(p, b, x);
    if cdf < 1e-300 {
        return Err(Error::Domain(format!(
            "Kw-G reversed hazard denominator underflow at x={x}"
        )));
    }
    Ok(kwg_pdf(p, b, x) / cdf)
}

/// Closed-form Kw-G component quantile: invert `1 − (1 − G^α)^γ = p`.
pub fn kwg_quantile(p: KwGParams, b: &Baseline, prob: f64) -> Result<f64> {
    if !(0.0 < prob && prob < 1.0) {
        return Err(Error::Domain(format!(
            "quantile requires p in (0,1), got {prob}"
        )));
    }
    // G(x) = (1 - (1-p)^{1/γ})^{1/α}
    let ln_t = f64::ln_1p(-prob) / p.gamma; // ln of (1-p)^{1/γ}
    let one_minus_t = -f64::exp_m1(ln_t);
    let g = (one_minus_t.ln() / p.alpha).exp();
    b.quantile(g.clamp(f64::MIN_POSITIVE, 1.0 - 1e-16))
}
