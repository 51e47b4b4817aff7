//! Continuous baseline distributions on `(0, ∞)` used inside the Kw-G
//! transform.
//!
//! Each baseline exposes an analytic cdf, a *native* survival function
//! (so `1 − G(x)` never goes through a cancelling subtraction), a density,
//! derived hazard/reversed-hazard rates, and a quantile. The quantile uses
//! the closed-form inverse where one exists and falls back to bracketing
//! bisection otherwise.

use crate::{Error, Result};

/// A continuous lifetime distribution `G` on `(0, upper)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Baseline {
    /// `G(x) = 1 − e^{−λx}` with rate `λ > 0`.
    Exponential { rate: f64 },
    /// `G(x) = 1 − e^{−(ηx)^k}` with scale-rate `η > 0` and shape `k > 0`.
    Weibull { rate: f64, shape: f64 },
    /// `G(x) = e^{−1/x}`.
    InverseExponential,
    /// `G(x) = x` on `(0, 1)`; included for tests only.
    Uniform01,
}

impl Baseline {
    /// Build a baseline from its config name and parameter list.
    pub fn make(name: &str, params: &[f64]) -> Result<Baseline> {
        let positive = |v: f64, what: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Domain(format!("{what} must be positive, got {v}")))
            }
        };
        match name {
            "exponential" => {
                let [rate] = take_params::<1>(name, params)?;
                Ok(Baseline::Exponential {
                    rate: positive(rate, "exponential rate")?,
                })
            }
            "weibull" => {
                let [rate, shape] = take_params::<2>(name, params)?;
                Ok(Baseline::Weibull {
                    rate: positive(rate, "weibull rate")?,
                    shape: positive(shape, "weibull shape")?,
                })
            }
            "inverse_exponential" => {
                let [] = take_params::<0>(name, params)?;
                Ok(Baseline::InverseExponential)
            }
            "uniform01" => {
                let [] = take_params::<0>(name, params)?;
                Ok(Baseline::Uniform01)
            }
            other => Err(Error::Config(format!("unknown baseline name {other:?}"))),
        }
    }

    /// Upper end of the support (`f64::INFINITY` for unbounded baselines).
    pub fn upper(&self) -> f64 {
        match self {
            Baseline::Uniform01 => 1.0,
            _ => f64::INFINITY,
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            Baseline::Exponential { rate } => -f64::exp_m1(-rate * x),
            Baseline::Weibull { rate, shape } => -f64::exp_m1(-(rate * x).powf(shape)),
            Baseline::InverseExponential => (-1.0 / x).exp(),
            Baseline::Uniform01 => x.min(1.0),
        }
    }

    /// Survival `1 − G(x)`, computed without cancellation.
    pub fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        match *self {
            Baseline::Exponential { rate } => (-rate * x).exp(),
            Baseline::Weibull { rate, shape } => (-(rate * x).powf(shape)).exp(),
            Baseline::InverseExponential => -f64::exp_m1(-1.0 / x),
            Baseline::Uniform01 => (1.0 - x).max(0.0),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= self.upper() {
            return 0.0;
        }
        match *self {
            Baseline::Exponential { rate } => rate * (-rate * x).exp(),
            Baseline::Weibull { rate, shape } => {
                let t = rate * x;
                shape * rate * t.powf(shape - 1.0) * (-t.powf(shape)).exp()
            }
            Baseline::InverseExponential => (-1.0 / x).exp() / (x * x),
            Baseline::Uniform01 => 1.0,
        }
    }

    /// `r_g(x) = g(x) / (1 − G(x))`.
    pub fn hazard(&self, x: f64) -> Result<f64> {
        let sf = self.sf(x);
        if sf < 1e-300 {
            return Err(Error::Domain(format!(
                "hazard denominator underflow at x={x}"
            )));
        }
        Ok(self.pdf(x) / sf)
    }

    /// `g(x) / G(x)`.
    pub fn reversed_hazard(&self, x: f64) -> Result<f64> {
        let cdf = self.cdf(x);
        if cdf < 1e-300 {
            return Err(Error::Domain(format!(
                "reversed hazard denominator underflow at x={x}"
            )));
        }
        Ok(self.pdf(x) / cdf)
    }

    /// Inverse cdf. Closed form for every built-in; `bisect_quantile` covers
    /// anything without one and is kept as an independent cross-check.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0 < p && p < 1.0) {
            return Err(Error::Domain(format!(
                "quantile requires p in (0,1), got {p}"
            )));
        }
        Ok(match *self {
            Baseline::Exponential { rate } => -f64::ln_1p(-p) / rate,
            Baseline::Weibull { rate, shape } => (-f64::ln_1p(-p)).powf(1.0 / shape) / rate,
            Baseline::InverseExponential => -1.0 / p.ln(),
            Baseline::Uniform01 => p,
        })
    }
}

fn take_params<const N: usize>(name: &str, params: &[f64]) -> Result<[f64; N]> {
    params.try_into().map_err(|_| {
        Error::Config(format!(
            "baseline {name:?} takes {N} parameter(s), got {}",
            params.len()
        ))
    })
}

/// Bracketing bisection inverse of a nondecreasing cdf-like function.
///
/// The initial bracket is `[1e-12, 1]`; the upper bound doubles until the
/// function exceeds `p` (at most 200 doublings), then bisection runs until
/// the cdf value is within `tol` of `p` and the bracket has collapsed to
/// floating-point resolution.
pub fn bisect_quantile<F: Fn(f64) -> f64>(cdf: F, p: f64, tol: f64) -> Result<f64> {
    if !(0.0 < p && p < 1.0) {
        return Err(Error::Domain(format!(
            "quantile requires p in (0,1), got {p}"
        )));
    }
    let mut lo = 1e-12;
    let mut hi = 1.0;
    let mut doublings = 0;
    while cdf(hi) < p {
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::Numerical(format!(
                "failed to bracket quantile p={p} after 200 doublings"
            )));
        }
    }
    if cdf(lo) > p {
        lo = 0.0;
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let v = cdf(mid);
        if (v - p).abs() <= tol && (hi - lo) <= 1e-12 * mid.abs().max(1.0) {
            break;
        }
        if v < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn make_rejects_bad_input() {
        assert!(Baseline::make("cauchy", &[]).is_err());
        assert!(Baseline::make("exponential", &[-1.0]).is_err());
        assert!(Baseline::make("exponential", &[]).is_err());
        assert!(Baseline::make("weibull", &[1.0]).is_err());
        assert!(Baseline::make("weibull", &[1.0, 0.0]).is_err());
    }

    #[test]
    fn cdf_values() {
        let e = Baseline::make("exponential", &[1.0]).unwrap();
        assert!((e.cdf(LN2) - 0.5).abs() < 1e-15);
        let inv = Baseline::make("inverse_exponential", &[]).unwrap();
        assert!((inv.cdf(1.0) - (-1.0f64).exp()).abs() < 1e-15);
        // pdf of weibull(1,2) at 1 against an independent finite difference
        let w = Baseline::make("weibull", &[1.0, 2.0]).unwrap();
        let h = 1e-6;
        let fd = (w.cdf(1.0 + h) - w.cdf(1.0 - h)) / (2.0 * h);
        assert!((w.pdf(1.0) - 2.0 * (-1.0f64).exp()).abs() < 1e-12);
        assert!((w.pdf(1.0) - fd).abs() / fd < 1e-9);
    }

    #[test]
    fn hazard_values() {
        let e1 = Baseline::Exponential { rate: 1.0 };
        assert!((e1.hazard(3.0).unwrap() - 1.0).abs() < 1e-12);
        // exp(2) reversed hazard at 0.5: pdf/cdf by independent scalar arithmetic
        let e2 = Baseline::Exponential { rate: 2.0 };
        let expect = (2.0 * (-1.0f64).exp()) / (1.0 - (-1.0f64).exp());
        assert!((e2.reversed_hazard(0.5).unwrap() - expect).abs() < 1e-12);
        let inv = Baseline::InverseExponential;
        let expect = (-1.0f64).exp() / (1.0 - (-1.0f64).exp());
        assert!((inv.hazard(1.0).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn hazard_domain_errors() {
        let e = Baseline::Exponential { rate: 1.0 };
        assert!(e.hazard(800.0).is_err()); // sf underflows past e^{-745}
        assert!(e.reversed_hazard(0.0).is_err());
    }

    #[test]
    fn quantile_values() {
        let e = Baseline::Exponential { rate: 1.0 };
        assert!((e.quantile(0.5).unwrap() - LN2).abs() < 1e-14);
        let inv = Baseline::InverseExponential;
        assert!((inv.quantile((-1.0f64).exp()).unwrap() - 1.0).abs() < 1e-14);
        // weibull(1,2) p=0.75 solved by the bisection oracle, not the closed form
        let w = Baseline::Weibull {
            rate: 1.0,
            shape: 2.0,
        };
        let by_bisect = bisect_quantile(|x| w.cdf(x), 0.75, 1e-12).unwrap();
        assert!((by_bisect - 4.0f64.ln().sqrt()).abs() < 1e-9);
        assert!((w.quantile(0.75).unwrap() - by_bisect).abs() < 1e-9);
        assert!(w.quantile(0.0).is_err());
        assert!(w.quantile(1.0).is_err());
    }

    #[test]
    fn quantile_roundtrip_all_builtins() {
        let builtins = [
            Baseline::Exponential { rate: 1.0 },
            Baseline::Exponential { rate: 2.5 },
            Baseline::Weibull {
                rate: 1.3,
                shape: 0.7,
            },
            Baseline::Weibull {
                rate: 0.8,
                shape: 2.0,
            },
            Baseline::InverseExponential,
            Baseline::Uniform01,
        ];
        for b in builtins {
            for i in 1..100 {
                let p = i as f64 / 100.0;
                let x = b.quantile(p).unwrap();
                assert!(
                    (b.cdf(x) - p).abs() <= 1e-8,
                    "roundtrip failed for {b:?} at p={p}"
                );
            }
        }
    }

    #[test]
    fn hazard_identities_and_pdf_integral() {
        let builtins = [
            Baseline::Exponential { rate: 1.7 },
            Baseline::Weibull {
                rate: 1.1,
                shape: 1.6,
            },
            Baseline::InverseExponential,
        ];
        for b in builtins {
            // hazard * sf = pdf and rhazard * cdf = pdf
            for i in 1..=50 {
                let x = 0.1 * i as f64;
                let pdf = b.pdf(x);
                let lhs = b.hazard(x).unwrap() * b.sf(x);
                assert!((lhs - pdf).abs() <= 1e-12 * pdf.max(1e-300));
                let lhs = b.reversed_hazard(x).unwrap() * b.cdf(x);
                assert!((lhs - pdf).abs() <= 1e-12 * pdf.max(1e-300));
            }
            // numerical integral of pdf over the support: trapezoid on a
            // quantile-warped grid plus the analytic tail masses
            let n = 200_000;
            let (p_lo, p_hi) = (1e-4, 1.0 - 1e-4);
            let mut prev_x = b.quantile(p_lo).unwrap();
            let mut prev_f = b.pdf(prev_x);
            let mut acc = b.cdf(prev_x) + b.sf(b.quantile(p_hi).unwrap());
            for i in 1..=n {
                let p = p_lo + (p_hi - p_lo) * i as f64 / n as f64;
                let x = b.quantile(p).unwrap();
                let f = b.pdf(x);
                acc += 0.5 * (f + prev_f) * (x - prev_x);
                prev_x = x;
                prev_f = f;
            }
            assert!((acc - 1.0).abs() < 1e-6, "pdf of {b:?} integrates to {acc}");
        }
    }

    #[test]
    fn pdf_matches_cdf_finite_difference_on_grid() {
        let builtins = [
            Baseline::Exponential { rate: 1.0 },
            Baseline::Weibull {
                rate: 1.0,
                shape: 2.0,
            },
            Baseline::InverseExponential,
        ];
        for b in builtins {
            for i in 1..=100 {
                let x = b.quantile(i as f64 / 101.0).unwrap();
                let h = 1e-6 * x.max(1.0);
                let fd = (b.cdf(x + h) - b.cdf(x - h)) / (2.0 * h);
                let pdf = b.pdf(x);
                assert!(
                    (fd - pdf).abs() <= 1e-4 * pdf.abs().max(1e-12),
                    "{b:?} at x={x}: pdf={pdf} fd={fd}"
                );
            }
        }
    }
}
