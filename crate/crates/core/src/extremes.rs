//! Distributions of extremes of dependent Kw-G components: `X_{n:n}` and
//! `X_{1:n}` for fixed `n`, and `X_{N:N}`, `X_{1:N}` when the sample size
//! `N` is itself random (independent of the components).
//!
//! For fixed `n` the copula composition gives
//! `P(X_{n:n} < x) = ψ(Σ_i φ(s_i))` with `s_i` the component cdfs, and
//! `P(X_{1:n} > x) = ψ(Σ_i φ(s_{1i}))` with `s_{1i}` the component
//! survivals (the survival copula couples minima). Random-size versions are
//! pmf-weighted mixtures of the fixed-size ones. A component value hitting
//! exactly 0 short-circuits the whole composition to 0 (the `ψ(∞)` limit);
//! a value of exactly 1 contributes `φ(1) = 0` and is skipped.

use crate::baseline::{bisect_quantile, Baseline};
use crate::copula::Generator;
use crate::kwg::{kwg_cdf, kwg_hazard, kwg_pdf, kwg_sf, ParamVector};
use crate::{clamp_prob, Error, Result};

/// Which extreme the model describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Min,
    Max,
}

/// Distribution of the random sample size `N` on a finite support.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct NDist {
    support: Vec<usize>,
    probs: Vec<f64>,
}

impl NDist {
    pub fn new(support: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if support.len() != probs.len() || support.is_empty() {
            return Err(Error::Config(
                "ndist support/probs must be nonempty and equal length".into(),
            ));
        }
        if !support.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config(
                "ndist support must be strictly increasing".into(),
            ));
        }
        if support[0] == 0 {
            return Err(Error::Config("ndist support must be positive".into()));
        }
        if probs
            .iter()
            .any(|&p| p.is_nan() || p < 0.0 || !p.is_finite())
        {
            return Err(Error::Config("ndist probs must be nonnegative".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Config(format!(
                "ndist probs sum to {total}, expected 1"
            )));
        }
        Ok(NDist { support, probs })
    }

    /// Point mass at `n`.
    pub fn degenerate(n: usize) -> Self {
        NDist {
            support: vec![n],
            probs: vec![1.0],
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn max_n(&self) -> usize {
        *self.support.last().unwrap()
    }

    /// `P(N >= m)` for the st-comparison of sample sizes.
    pub fn sf_at(&self, m: usize) -> f64 {
        self.support
            .iter()
            .zip(&self.probs)
            .filter(|(&n, _)| n >= m)
            .map(|(_, &p)| p)
            .sum()
    }

    /// `N1 <=st N2`: `P(N1 >= m) <= P(N2 >= m)` for every m.
    pub fn st_le(&self, other: &NDist) -> bool {
        let hi = self.max_n().max(other.max_n());
        (1..=hi).all(|m| self.sf_at(m) <= other.sf_at(m) + 1e-12)
    }
}

/// A fully specified random-extreme model.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ExtremeModel {
    pub side: Side,
    pub baseline: Baseline,
    pub params: ParamVector,
    pub generator: Generator,
    pub ndist: NDist,
}

impl ExtremeModel {
    pub fn new(
        side: Side,
        baseline: Baseline,
        params: ParamVector,
        generator: Generator,
        ndist: NDist,
    ) -> Result<Self> {
        generator.validate()?;
        if ndist.max_n() > params.len() {
            return Err(Error::Config(format!(
                "ndist support max {} exceeds parameter vector length {}",
                ndist.max_n(),
                params.len()
            )));
        }
        Ok(ExtremeModel {
            side,
            baseline,
            params,
            generator,
            ndist,
        })
    }

    pub fn n_components(&self) -> usize {
        self.params.len()
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.params.len() {
            return Err(Error::Usage(format!(
                "n={n} out of range 1..={}",
                self.params.len()
            )));
        }
        Ok(())
    }

    /// `P(X_{n:n} < x)` using the first `n` components. Defined for any
    /// model; the random-size accessors dispatch on `side`.
    pub fn fixed_max_cdf(&self, n: usize, x: f64) -> Result<f64> {
        self.check_n(n)?;
        let mut total = 0.0;
        for i in 0..n {
            let v = kwg_cdf(self.params.component(i), &self.baseline, x);
            if v <= 0.0 {
                return Ok(0.0);
            }
            if v >= 1.0 {
                continue;
            }
            total += self.generator.phi_unchecked(clamp_prob(v));
        }
        Ok(self.generator.psi(total))
    }

    /// `P(X_{1:n} > x)` using the first `n` components.
    pub fn fixed_min_sf(&self, n: usize, x: f64) -> Result<f64> {
        self.check_n(n)?;
        let mut total = 0.0;
        for i in 0..n {
            let v = kwg_sf(self.params.component(i), &self.baseline, x);
            if v <= 0.0 {
                return Ok(0.0);
            }
            if v >= 1.0 {
                continue;
            }
            total += self.generator.phi_unchecked(clamp_prob(v));
        }
        Ok(self.generator.psi(total))
    }

    /// pmf-weighted mixture `Σ_m P(X_{m:m} < x) P(N = m)`.
    pub fn random_max_cdf(&self, x: f64) -> f64 {
        self.ndist
            .support
            .iter()
            .zip(&self.ndist.probs)
            .map(|(&m, &p)| p * self.fixed_max_cdf(m, x).expect("support validated"))
            .sum()
    }

    /// pmf-weighted mixture `Σ_m P(X_{1:m} > x) P(N = m)`.
    pub fn random_min_sf(&self, x: f64) -> f64 {
        self.ndist
            .support
            .iter()
            .zip(&self.ndist.probs)
            .map(|(&m, &p)| p * self.fixed_min_sf(m, x).expect("support validated"))
            .sum()
    }

    /// Model cdf, whichever side it is.
    pub fn cdf(&self, x: f64) -> f64 {
        match self.side {
            Side::Max => self.random_max_cdf(x),
            Side::Min => 1.0 - self.random_min_sf(x),
        }
    }

    /// Model survival function.
    pub fn sf(&self, x: f64) -> f64 {
        match self.side {
            Side::Max => 1.0 - self.random_max_cdf(x),
            Side::Min => self.random_min_sf(x),
        }
    }

    /// Chain-rule density of the fixed-size extreme:
    /// `±ψ'(Σφ(v_i)) Σ φ'(v_i) v_i'` with `φ'(v) = 1/ψ'(φ(v))`.
    pub fn fixed_density(&self, n: usize, x: f64) -> Result<f64> {
        self.check_n(n)?;
        let mut total = 0.0;
        let mut dsum = 0.0;
        for i in 0..n {
            let p = self.params.component(i);
            let (v, dv) = match self.side {
                Side::Max => (kwg_cdf(p, &self.baseline, x), kwg_pdf(p, &self.baseline, x)),
                Side::Min => (kwg_sf(p, &self.baseline, x), -kwg_pdf(p, &self.baseline, x)),
            };
            if v <= 0.0 {
                return Ok(0.0);
            }
            if v >= 1.0 {
                continue;
            }
            let t = self.generator.phi_unchecked(clamp_prob(v));
            total += t;
            let slope = self.generator.psi_d1(t);
            if slope == 0.0 {
                continue;
            }
            dsum += dv / slope;
        }
        let d = self.generator.psi_d1(total) * dsum;
        let d = match self.side {
            Side::Max => d,
            Side::Min => -d,
        };
        if !d.is_finite() {
            return Err(Error::Numerical(format!("non-finite density at x={x}")));
        }
        Ok(d)
    }

    /// pmf mixture of fixed-size densities.
    pub fn density(&self, x: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&m, &p) in self.ndist.support.iter().zip(&self.ndist.probs) {
            acc += p * self.fixed_density(m, x)?;
        }
        Ok(acc)
    }

    /// density / sf.
    pub fn hazard(&self, x: f64) -> Result<f64> {
        let sf = self.sf(x);
        if sf < 1e-300 {
            return Err(Error::Domain(format!(
                "hazard denominator underflow at x={x}"
            )));
        }
        Ok(self.density(x)? / sf)
    }

    /// density / cdf.
    pub fn reversed_hazard(&self, x: f64) -> Result<f64> {
        let cdf = self.cdf(x);
        if cdf < 1e-300 {
            return Err(Error::Domain(format!(
                "reversed hazard denominator underflow at x={x}"
            )));
        }
        Ok(self.density(x)? / cdf)
    }

    /// Eq.-style independence-only hazard of `X_{1:n}`:
    /// `Σ_i α_i γ_i g G^{α_i−1} / (1 − G^{α_i})`. Kept as an independent
    /// cross-check of the chain-rule density route.
    pub fn min_hazard_independent(&self, n: usize, x: f64) -> Result<f64> {
        if self.generator != Generator::Independence {
            return Err(Error::Usage(
                "min_hazard_independent requires the independence generator".into(),
            ));
        }
        self.check_n(n)?;
        let mut acc = 0.0;
        for i in 0..n {
            acc += kwg_hazard(self.params.component(i), &self.baseline, x)?;
        }
        Ok(acc)
    }

    /// Independence-only reversed hazard of `X_{n:n}` with equal gammas,
    /// as the sum `Σ_i A(α_i) B(α_i)` where
    /// `A(α) = α g G^{α−1}/(1−G^α)` and `B(α) = γ(1−G^α)^γ/(1−(1−G^α)^γ)`.
    pub fn max_reversed_hazard_independent(&self, n: usize, x: f64) -> Result<f64> {
        if self.generator != Generator::Independence {
            return Err(Error::Usage(
                "max_reversed_hazard_independent requires the independence generator".into(),
            ));
        }
        self.check_n(n)?;
        let gammas = self.params.gammas();
        let gamma = gammas[0];
        if gammas[..n].iter().any(|&g| (g - gamma).abs() > 0.0) {
            return Err(Error::Usage(
                "max_reversed_hazard_independent requires equal gammas".into(),
            ));
        }
        let mut acc = 0.0;
        for i in 0..n {
            acc += self.max_rh_term(i, gamma, x)?;
        }
        Ok(acc)
    }

    /// One `A(α_i) B(α_i)` term of the reversed-hazard sum.
    pub fn max_rh_term(&self, i: usize, gamma: f64, x: f64) -> Result<f64> {
        let alpha = self.params.alphas()[i];
        let t = crate::kwg::one_minus_g_alpha(&self.baseline, alpha, x);
        let cdf = self.baseline.cdf(x);
        if t.is_nan() || t <= 1e-300 || cdf <= 0.0 {
            return Err(Error::Domain(format!("A·B term degenerate at x={x}")));
        }
        let g = self.baseline.pdf(x);
        let a_term = alpha * g * ((alpha - 1.0) * cdf.ln()).exp() / t;
        let tg = (gamma * t.ln()).exp();
        if tg >= 1.0 {
            return Err(Error::Domain(format!(
                "A·B term denominator underflow at x={x}"
            )));
        }
        let b_term = gamma * tg / (1.0 - tg);
        Ok(a_term * b_term)
    }

    /// Bisection inverse of the model cdf, `|cdf(x) − p| ≤ 1e-9`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        bisect_quantile(|x| self.cdf(x), p, 1e-9)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kwg::KwGParams;

    fn exp1() -> Baseline {
        Baseline::Exponential { rate: 1.0 }
    }

    fn model(
        side: Side,
        b: Baseline,
        alphas: Vec<f64>,
        gammas: Vec<f64>,
        g: Generator,
        support: Vec<usize>,
        probs: Vec<f64>,
    ) -> ExtremeModel {
        ExtremeModel::new(
            side,
            b,
            ParamVector::new(alphas, gammas).unwrap(),
            g,
            NDist::new(support, probs).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn ndist_validation() {
        assert!(NDist::new(vec![1, 1], vec![0.5, 0.5]).is_err());
        assert!(NDist::new(vec![0, 1], vec![0.5, 0.5]).is_err());
        assert!(NDist::new(vec![1, 2], vec![0.5, 0.6]).is_err());
        assert!(NDist::new(vec![1, 2], vec![0.5, 0.5]).is_ok());
        // support exceeding the parameter vector is rejected at model build
        let r = ExtremeModel::new(
            Side::Max,
            exp1(),
            ParamVector::new(vec![1.0], vec![1.0]).unwrap(),
            Generator::Independence,
            NDist::new(vec![1, 2], vec![0.5, 0.5]).unwrap(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn single_component_collapses_to_kwg() {
        let m = model(
            Side::Max,
            exp1(),
            vec![2.0, 3.0],
            vec![1.5, 1.0],
            Generator::Gumbel { theta: 2.0 },
            vec![1],
            vec![1.0],
        );
        let p = KwGParams::new(2.0, 1.5).unwrap();
        for x in [0.3, 1.0, 2.5] {
            let direct = kwg_cdf(p, &exp1(), x);
            assert!((m.fixed_max_cdf(1, x).unwrap() - direct).abs() < 1e-12);
            assert!((m.random_max_cdf(x) - direct).abs() < 1e-12);
        }
        let m = model(
            Side::Min,
            exp1(),
            vec![2.0],
            vec![1.5],
            Generator::Clayton { theta: 1.0 },
            vec![1],
            vec![1.0],
        );
        for x in [0.3, 1.0, 2.5] {
            let direct = 1.0 - kwg_cdf(p, &exp1(), x);
            assert!((m.fixed_min_sf(1, x).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn independence_is_the_product_formula() {
        // component cdfs 0.5 and 0.578125 at x=ln2 -> product 0.2890625
        let m = model(
            Side::Max,
            exp1(),
            vec![1.0, 2.0],
            vec![1.0, 3.0],
            Generator::Independence,
            vec![2],
            vec![1.0],
        );
        let v = m.fixed_max_cdf(2, std::f64::consts::LN_2).unwrap();
        assert!((v - 0.2890625).abs() < 1e-13);
        // min side: survivals 0.8 * 0.9
        let b = Baseline::Uniform01;
        let m = model(
            Side::Min,
            b,
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            Generator::Independence,
            vec![2],
            vec![1.0],
        );
        // uniform01 with alpha=gamma=1: survival = 1-x per component
        let x = 0.2;
        let v = m.fixed_min_sf(2, x).unwrap();
        assert!((v - 0.8 * 0.8).abs() < 1e-13);
    }

    #[test]
    fn gumbel_two_identical_components_closed_form() {
        // psi(2 phi(u)) = u^{2^{1/a}} at u=0.5, a=2
        let m = model(
            Side::Max,
            exp1(),
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            Generator::Gumbel { theta: 2.0 },
            vec![2],
            vec![1.0],
        );
        let x = std::f64::consts::LN_2; // component cdf = 0.5
        let v = m.fixed_max_cdf(2, x).unwrap();
        let expect = 0.5f64.powf(2f64.sqrt());
        assert!((v - expect).abs() < 1e-12, "{v} vs {expect}");
        assert!((expect - 0.375214).abs() < 1e-6);
    }

    #[test]
    fn min_sf_closed_form_proportional_hazard() {
        // alphas all 1: sf = (1-G)^{sum gamma}; exp(1), x=1, gammas (1.5, 2.5)
        let m = model(
            Side::Min,
            exp1(),
            vec![1.0, 1.0],
            vec![1.5, 2.5],
            Generator::Independence,
            vec![2],
            vec![1.0],
        );
        let v = m.fixed_min_sf(2, 1.0).unwrap();
        assert!((v - (-4.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn mixture_values_and_bounds() {
        // ndist {1: 0.5, 2: 0.5}, component cdfs (0.5, 0.5)
        let m = model(
            Side::Max,
            exp1(),
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            Generator::Independence,
            vec![1, 2],
            vec![0.5, 0.5],
        );
        let x = std::f64::consts::LN_2;
        assert!((m.random_max_cdf(x) - 0.375).abs() < 1e-14);
        // mixture lies between the fixed-n extremes
        for x in [0.2, 0.7, 1.9] {
            let v = m.random_max_cdf(x);
            let f1 = m.fixed_max_cdf(1, x).unwrap();
            let f2 = m.fixed_max_cdf(2, x).unwrap();
            assert!(v <= f1.max(f2) + 1e-15 && v >= f1.min(f2) - 1e-15);
        }
    }

    #[test]
    fn cdfs_monotone_and_in_unit_interval() {
        let m = model(
            Side::Max,
            Baseline::Weibull {
                rate: 1.1,
                shape: 1.7,
            },
            vec![0.5, 2.0, 3.0],
            vec![1.2, 0.7, 2.0],
            Generator::Frank { theta: 2.5 },
            vec![2, 3],
            vec![0.3, 0.7],
        );
        let mut prev = 0.0;
        for i in 1..300 {
            let x = 0.02 * i as f64;
            let v = m.random_max_cdf(x);
            assert!((0.0..=1.0).contains(&v));
            assert!(v >= prev - 1e-12);
            prev = v;
        }
        let m = model(
            Side::Min,
            Baseline::InverseExponential,
            vec![0.5, 2.0, 3.0],
            vec![1.2, 0.7, 2.0],
            Generator::Amh { theta: -0.4 },
            vec![1, 3],
            vec![0.4, 0.6],
        );
        let mut prev = 0.0;
        for i in 1..300 {
            let x = 0.05 * i as f64;
            let v = 1.0 - m.random_min_sf(x);
            assert!((0.0..=1.0).contains(&v));
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn densities_match_finite_differences() {
        let models = [
            model(
                Side::Max,
                exp1(),
                vec![0.8, 2.0],
                vec![1.5, 1.0],
                Generator::Gumbel { theta: 2.0 },
                vec![1, 2],
                vec![0.4, 0.6],
            ),
            model(
                Side::Min,
                Baseline::Weibull {
                    rate: 1.2,
                    shape: 0.8,
                },
                vec![1.5, 0.6, 2.2],
                vec![0.9, 1.8, 1.1],
                Generator::Clayton { theta: 1.5 },
                vec![2, 3],
                vec![0.5, 0.5],
            ),
            model(
                Side::Min,
                exp1(),
                vec![1.0, 1.0],
                vec![1.5, 2.5],
                Generator::Independence,
                vec![2],
                vec![1.0],
            ),
        ];
        for m in &models {
            for i in 1..=200 {
                let p = i as f64 / 201.0;
                let x = m.quantile(p).unwrap();
                if x < 1e-3 {
                    // the absolute step overwhelms x here; the finite
                    // difference itself is meaningless
                    continue;
                }
                let h = 1e-6 * x.max(1.0);
                let (c1, c0) = (m.cdf(x + h), m.cdf(x - h));
                let fd = (c1 - c0) / (2.0 * h);
                let d = m.density(x).unwrap();
                assert!(
                    (fd - d).abs() <= 1e-4 * d.abs().max(1e-9),
                    "side={:?} x={x}: density={d} fd={fd}",
                    m.side
                );
            }
        }
    }

    #[test]
    fn density_of_min_is_survival_times_hazard_under_independence() {
        let m = model(
            Side::Min,
            exp1(),
            vec![1.0, 1.0, 1.0],
            vec![0.7, 1.1, 2.2],
            Generator::Independence,
            vec![3],
            vec![1.0],
        );
        for x in [0.1, 0.5, 1.4] {
            let d = m.fixed_density(3, x).unwrap();
            let s = m.fixed_min_sf(3, x).unwrap();
            let r = m.min_hazard_independent(3, x).unwrap();
            assert!((d - s * r).abs() <= 1e-12 * d.max(1e-300));
            // alphas = 1: hazard is r_g * sum(gamma) = 4
            assert!((r - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn min_hazard_independent_usage_errors() {
        let m = model(
            Side::Min,
            exp1(),
            vec![1.0],
            vec![1.0],
            Generator::Clayton { theta: 1.0 },
            vec![1],
            vec![1.0],
        );
        assert!(matches!(
            m.min_hazard_independent(1, 1.0),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn min_hazard_independent_generic_sum() {
        let m = model(
            Side::Min,
            exp1(),
            vec![2.0, 3.0],
            vec![1.0, 1.0],
            Generator::Independence,
            vec![2],
            vec![1.0],
        );
        let x = std::f64::consts::LN_2;
        // independent term-by-term oracle
        let g = exp1();
        let mut expect = 0.0;
        for &a in &[2.0, 3.0] {
            let gg = g.cdf(x);
            expect += a * g.pdf(x) * gg.powf(a - 1.0) / (1.0 - gg.powf(a));
        }
        let got = m.min_hazard_independent(2, x).unwrap();
        assert!((got - expect).abs() < 1e-12);
    }

    #[test]
    fn max_reversed_hazard_matches_kwg_and_log_derivative() {
        // n=1, gamma=1 reduces to the component reversed hazard
        let m = model(
            Side::Max,
            exp1(),
            vec![2.0],
            vec![1.0],
            Generator::Independence,
            vec![1],
            vec![1.0],
        );
        let x = 0.9;
        let direct = m.max_reversed_hazard_independent(1, x).unwrap();
        let kwg_rh =
            crate::kwg::kwg_reversed_hazard(KwGParams::new(2.0, 1.0).unwrap(), &exp1(), x).unwrap();
        assert!((direct - kwg_rh).abs() < 1e-12);

        // general n: matches d/dx ln(random_max_cdf) for a degenerate ndist
        let m = model(
            Side::Max,
            exp1(),
            vec![1.5, 2.5, 3.0],
            vec![1.3, 1.3, 1.3],
            Generator::Independence,
            vec![3],
            vec![1.0],
        );
        for x in [0.4, 1.0, 2.0] {
            let rh = m.max_reversed_hazard_independent(3, x).unwrap();
            let h = 1e-6 * x.max(1.0);
            let fd = (m.random_max_cdf(x + h).ln() - m.random_max_cdf(x - h).ln()) / (2.0 * h);
            assert!(
                (rh - fd).abs() <= 1e-4 * rh.abs().max(1e-9),
                "x={x}: {rh} vs {fd}"
            );
        }
        // unequal gammas are a usage error
        let m = model(
            Side::Max,
            exp1(),
            vec![1.5, 2.5],
            vec![1.3, 1.4],
            Generator::Independence,
            vec![2],
            vec![1.0],
        );
        assert!(matches!(
            m.max_reversed_hazard_independent(2, 1.0),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn max_reversed_hazard_monotone_in_n() {
        let m = model(
            Side::Max,
            exp1(),
            vec![1.5, 2.5, 3.0, 0.7],
            vec![2.0, 2.0, 2.0, 2.0],
            Generator::Independence,
            vec![4],
            vec![1.0],
        );
        for x in [0.3, 1.0, 2.2] {
            let mut prev = 0.0;
            for n in 1..=4 {
                let v = m.max_reversed_hazard_independent(n, x).unwrap();
                assert!(v >= prev - 1e-12, "x={x} n={n}");
                // increment equals the next A·B term
                if n < 4 {
                    let next = m.max_reversed_hazard_independent(n + 1, x).unwrap();
                    let term = m.max_rh_term(n, 2.0, x).unwrap();
                    assert!((next - v - term).abs() <= 1e-12 * next.max(1.0));
                }
                prev = v;
            }
        }
    }

    #[test]
    fn quantile_closed_forms() {
        // MIN, n=1, alpha=gamma=1: baseline quantile
        let m = model(
            Side::Min,
            exp1(),
            vec![1.0],
            vec![1.0],
            Generator::Independence,
            vec![1],
            vec![1.0],
        );
        for p in [0.1, 0.5, 0.9] {
            assert!((m.quantile(p).unwrap() - exp1().quantile(p).unwrap()).abs() < 1e-8);
        }
        // independence, alphas=1, gammas summing to s: q(p) = -ln(1-p)/s
        let m = model(
            Side::Min,
            exp1(),
            vec![1.0, 1.0, 1.0],
            vec![0.5, 1.0, 1.5],
            Generator::Independence,
            vec![3],
            vec![1.0],
        );
        for p in [0.05, 0.5, 0.95] {
            let expect = -f64::ln_1p(-p) / 3.0;
            assert!((m.quantile(p).unwrap() - expect).abs() < 1e-8);
        }
        // degenerate-N gumbel two-component model: invert u^{2^{1/a}}
        let m = model(
            Side::Max,
            exp1(),
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            Generator::Gumbel { theta: 2.0 },
            vec![2],
            vec![1.0],
        );
        let p = 0.375214227246486; // u^{sqrt 2} at u=0.5
        let x = m.quantile(p).unwrap();
        assert!((x - std::f64::consts::LN_2).abs() < 1e-7);
    }

    #[test]
    fn ten_thousand_components_stay_stable() {
        // log-space accumulation keeps large products alive: survival
        // (1-G)^{sum gamma} with 10^4 components
        let n = 10_000;
        let m = model(
            Side::Min,
            exp1(),
            vec![1.0; n],
            vec![3e-4; n],
            Generator::Independence,
            vec![n],
            vec![1.0],
        );
        let x = 2.0;
        let expect = (-3e-4 * n as f64 * x).exp(); // e^{-6}
        let got = m.fixed_min_sf(n, x).unwrap();
        assert!((got - expect).abs() < 1e-9 * expect);
        let q = m.quantile(0.5).unwrap();
        assert!((m.cdf(q) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn quantile_roundtrip_mixed_models() {
        let m = model(
            Side::Max,
            Baseline::InverseExponential,
            vec![0.7, 1.8],
            vec![1.1, 0.6],
            Generator::Frank { theta: -2.0 },
            vec![1, 2],
            vec![0.25, 0.75],
        );
        for i in 1..100 {
            let p = i as f64 / 100.0;
            let x = m.quantile(p).unwrap();
            assert!((m.cdf(x) - p).abs() <= 1e-8, "p={p}");
        }
    }
}
