//! Monte Carlo cross-validation of the analytic extreme distributions.
//!
//! Dependent Kw-G vectors are sampled through the Archimedean frailty
//! construction: draw a latent frailty `V` whose Laplace transform is the
//! generator `ψ`, draw i.i.d. unit exponentials `E_i`, and set
//! `U_i = ψ(E_i / V)`. For the max side the `U_i` are cdf levels of the
//! components; for the min side they are survival levels (the survival
//! copula couples minima). Supported frailties: none (independence),
//! gamma (Clayton), and positive stable via the Kanter representation
//! (Gumbel). Gumbel-Hougaard has a tilted-stable frailty and is not
//! sampled.
//!
//! Batches are generated in fixed-size chunks with per-chunk seeds derived
//! by counter, so the merged result is independent of worker count. The
//! stream identifier below names the exact algorithm for reproducibility.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use rayon::prelude::*;

use crate::extremes::{ExtremeModel, Side};
use crate::kwg::kwg_quantile;
use crate::{Error, Result};

/// Algorithm identifier recorded in batch metadata.
pub const RNG_STREAM_ID: &str = "chacha8/kanter-frailty/v1";

const CHUNK: usize = 4096;

/// A reproducible batch of realized extreme values.
#[derive(Debug, Clone)]
pub struct SampleBatch {
    pub draws: Vec<f64>,
    pub seed: u64,
    pub stream: &'static str,
}

impl SampleBatch {
    pub fn size(&self) -> usize {
        self.draws.len()
    }
}

fn chunk_rng(seed: u64, chunk_idx: u64) -> ChaCha8Rng {
    let mut z = seed ^ chunk_idx.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 33)).wrapping_mul(0xFF51_AFD7_ED55_8CCD);
    z = (z ^ (z >> 33)).wrapping_mul(0xC4CE_B9FE_1A85_EC53);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 33))
}

/// Positive stable draw with Laplace transform `exp(-s^alpha)`,
/// `alpha ∈ (0,1)`, by the Kanter representation:
/// `V = (A(U)/W)^{(1-alpha)/alpha}` with
/// `A(u) = sin((1-alpha)πu) · sin(alpha πu)^{alpha/(1-alpha)} / sin(πu)^{1/(1-alpha)}`.
fn positive_stable(alpha: f64, rng: &mut ChaCha8Rng) -> f64 {
    debug_assert!((0.0..1.0).contains(&alpha));
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let w: f64 = loop {
        let e: f64 = Exp1.sample(rng);
        if e > 0.0 {
            break e;
        }
    };
    let pu = std::f64::consts::PI * u;
    let a = ((1.0 - alpha) * pu).sin() * (alpha * pu).sin().powf(alpha / (1.0 - alpha))
        / pu.sin().powf(1.0 / (1.0 - alpha));
    (a / w).powf((1.0 - alpha) / alpha)
}

enum Frailty {
    None,
    Gamma(Gamma<f64>),
    Stable { alpha: f64 },
}

impl Frailty {
    fn for_model(m: &ExtremeModel) -> Result<Frailty> {
        use crate::copula::Generator::*;
        match m.generator {
            Independence => Ok(Frailty::None),
            Clayton { theta } => {
                // LT of Gamma(shape 1/θ, scale θ) is (1+θs)^{-1/θ} = ψ
                let g = Gamma::new(1.0 / theta, theta)
                    .map_err(|e| Error::Domain(format!("gamma frailty: {e}")))?;
                Ok(Frailty::Gamma(g))
            }
            Gumbel { theta } => {
                if theta == 1.0 {
                    Ok(Frailty::None)
                } else {
                    Ok(Frailty::Stable { alpha: 1.0 / theta })
                }
            }
            other => Err(Error::Usage(format!(
                "sampling unsupported for generator {other:?} (no standard frailty)"
            ))),
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Frailty::None => f64::NAN, // unused
            Frailty::Gamma(g) => loop {
                let v = g.sample(rng);
                if v > 0.0 && v.is_finite() {
                    break v;
                }
            },
            Frailty::Stable { alpha } => loop {
                let v = positive_stable(*alpha, rng);
                if v > 0.0 && v.is_finite() {
                    break v;
                }
            },
        }
    }
}

fn draw_n(m: &ExtremeModel, rng: &mut ChaCha8Rng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (&n, &p) in m.ndist.support().iter().zip(m.ndist.probs()) {
        acc += p;
        if u <= acc {
            return n;
        }
    }
    m.ndist.max_n()
}

/// Dependent uniform levels for the first `n` components.
fn draw_uniform_levels(
    frailty: &Frailty,
    m: &ExtremeModel,
    n: usize,
    rng: &mut ChaCha8Rng,
    buf: &mut Vec<f64>,
) {
    buf.clear();
    match frailty {
        Frailty::None => {
            for _ in 0..n {
                buf.push(rng.gen_range(f64::MIN_POSITIVE..1.0));
            }
        }
        _ => {
            let v = frailty.draw(rng);
            for _ in 0..n {
                let e: f64 = Exp1.sample(rng);
                let u = m.generator.psi(e / v);
                buf.push(u.clamp(f64::MIN_POSITIVE, 1.0 - 1e-16));
            }
        }
    }
}

/// Draw `size` realizations of the model's extreme. Reproducible given
/// `(model, size, seed)` and independent of worker count.
pub fn sample_extreme(m: &ExtremeModel, size: usize, seed: u64) -> Result<SampleBatch> {
    let frailty = Frailty::for_model(m)?;
    let chunks: Vec<Vec<f64>> = (0..size.div_ceil(CHUNK))
        .into_par_iter()
        .map(|ci| {
            let mut rng = chunk_rng(seed, ci as u64);
            let count = CHUNK.min(size - ci * CHUNK);
            let mut out = Vec::with_capacity(count);
            let mut levels = Vec::new();
            for _ in 0..count {
                let n = draw_n(m, &mut rng);
                draw_uniform_levels(&frailty, m, n, &mut rng, &mut levels);
                let mut extreme = match m.side {
                    Side::Max => f64::NEG_INFINITY,
                    Side::Min => f64::INFINITY,
                };
                for (i, &u) in levels.iter().enumerate() {
                    let p = m.params.component(i);
                    // max side: u is a cdf level; min side: u is a survival level
                    let prob = match m.side {
                        Side::Max => u,
                        Side::Min => 1.0 - u,
                    };
                    let x = kwg_quantile(p, &m.baseline, prob.clamp(1e-300, 1.0 - 1e-16))
                        .expect("quantile of interior probability");
                    extreme = match m.side {
                        Side::Max => extreme.max(x),
                        Side::Min => extreme.min(x),
                    };
                }
                out.push(extreme);
            }
            out
        })
        .collect();
    let mut draws = Vec::with_capacity(size);
    for c in chunks {
        draws.extend(c);
    }
    Ok(SampleBatch {
        draws,
        seed,
        stream: RNG_STREAM_ID,
    })
}

/// Kolmogorov-style sup distance over a grid between the batch's empirical
/// cdf and the model's analytic cdf.
pub fn empirical_vs_analytic(batch: &SampleBatch, m: &ExtremeModel, x_grid: &[f64]) -> f64 {
    assert!(!batch.draws.is_empty(), "empty batch");
    let mut sorted = batch.draws.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut sup: f64 = 0.0;
    for &x in x_grid {
        let count = sorted.partition_point(|&v| v <= x);
        let emp = count as f64 / n;
        sup = sup.max((emp - m.cdf(x)).abs());
    }
    sup
}

/// Sample Kendall tau of paired component draws (used to validate the
/// dependence structure of the frailty construction).
pub fn kendall_tau(pairs: &[(f64, f64)]) -> f64 {
    let n = pairs.len();
    assert!(n >= 2);
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let s = (pairs[i].0 - pairs[j].0) * (pairs[i].1 - pairs[j].1);
            if s > 0.0 {
                concordant += 1;
            } else if s < 0.0 {
                discordant += 1;
            }
        }
    }
    (concordant - discordant) as f64 / (0.5 * n as f64 * (n as f64 - 1.0))
}

/// Paired component draws (first two components, fixed n = 2) for
/// dependence diagnostics.
pub fn sample_component_pairs(m: &ExtremeModel, size: usize, seed: u64) -> Result<Vec<(f64, f64)>> {
    if m.n_components() < 2 {
        return Err(Error::Usage("need at least two components".into()));
    }
    let frailty = Frailty::for_model(m)?;
    let mut rng = chunk_rng(seed, u64::MAX);
    let mut out = Vec::with_capacity(size);
    let mut levels = Vec::new();
    for _ in 0..size {
        draw_uniform_levels(&frailty, m, 2, &mut rng, &mut levels);
        let to_x = |i: usize, u: f64| {
            let prob = match m.side {
                Side::Max => u,
                Side::Min => 1.0 - u,
            };
            kwg_quantile(
                m.params.component(i),
                &m.baseline,
                prob.clamp(1e-300, 1.0 - 1e-16),
            )
            .expect("interior probability")
        };
        out.push((to_x(0, levels[0]), to_x(1, levels[1])));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::Baseline;
    use crate::copula::{log_grid, Generator};
    use crate::extremes::NDist;
    use crate::kwg::ParamVector;

    fn model(
        side: Side,
        alphas: Vec<f64>,
        gammas: Vec<f64>,
        g: Generator,
        support: Vec<usize>,
        probs: Vec<f64>,
    ) -> ExtremeModel {
        ExtremeModel::new(
            side,
            Baseline::Exponential { rate: 1.0 },
            ParamVector::new(alphas, gammas).unwrap(),
            g,
            NDist::new(support, probs).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn determinism_and_chunk_invariance() {
        let m = model(
            Side::Min,
            vec![1.0, 2.0],
            vec![1.0, 0.5],
            Generator::Clayton { theta: 2.0 },
            vec![1, 2],
            vec![0.3, 0.7],
        );
        let a = sample_extreme(&m, 10_000, 42).unwrap();
        let b = sample_extreme(&m, 10_000, 42).unwrap();
        assert_eq!(a.draws, b.draws);
        assert_eq!(a.stream, RNG_STREAM_ID);
        // a single-threaded pool must produce the identical stream
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let c = pool.install(|| sample_extreme(&m, 10_000, 42).unwrap());
        assert_eq!(a.draws, c.draws);
    }

    #[test]
    fn unsupported_generator_is_usage_error() {
        let m = model(
            Side::Min,
            vec![1.0],
            vec![1.0],
            Generator::GumbelHougaard { theta: 4.0 },
            vec![1],
            vec![1.0],
        );
        assert!(matches!(sample_extreme(&m, 10, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn plain_exponential_mean() {
        // independence, n=1, alpha=gamma=1: plain exponential draws
        let m = model(
            Side::Min,
            vec![1.0],
            vec![1.0],
            Generator::Independence,
            vec![1],
            vec![1.0],
        );
        let batch = sample_extreme(&m, 100_000, 7).unwrap();
        let mean = batch.draws.iter().sum::<f64>() / batch.size() as f64;
        assert!(
            (mean - 1.0).abs() < 3.0 / (100_000f64).sqrt(),
            "mean {mean}"
        );
    }

    #[test]
    fn clayton_kendall_tau() {
        // two identical components, theta=2: tau = theta/(theta+2) = 0.5
        let m = model(
            Side::Max,
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            Generator::Clayton { theta: 2.0 },
            vec![2],
            vec![1.0],
        );
        let pairs = sample_component_pairs(&m, 10_000, 11).unwrap();
        let tau = kendall_tau(&pairs);
        assert!((tau - 0.5).abs() < 0.02, "tau {tau}");
    }

    #[test]
    fn gumbel_degenerate_two_component_matches_closed_form() {
        // max of two identical components under gumbel a=2: cdf = u^{sqrt 2}
        let m = model(
            Side::Max,
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            Generator::Gumbel { theta: 2.0 },
            vec![2],
            vec![1.0],
        );
        let batch = sample_extreme(&m, 100_000, 3).unwrap();
        let grid = log_grid(0.05, 8.0, 200);
        let sup = empirical_vs_analytic(&batch, &m, &grid);
        assert!(sup < 0.01, "sup distance {sup}");
    }

    #[test]
    fn empirical_distance_detects_wrong_model() {
        let m1 = model(
            Side::Min,
            vec![1.0],
            vec![1.0],
            Generator::Independence,
            vec![1],
            vec![1.0],
        );
        let m2 = model(
            Side::Min,
            vec![1.0],
            vec![2.0],
            Generator::Independence,
            vec![1],
            vec![1.0],
        );
        let batch = sample_extreme(&m1, 50_000, 5).unwrap();
        let grid = log_grid(0.05, 5.0, 200);
        assert!(empirical_vs_analytic(&batch, &m1, &grid) < 0.01);
        assert!(empirical_vs_analytic(&batch, &m2, &grid) > 0.04);
    }

    #[test]
    fn single_grid_point_distance_is_binomial_noise() {
        let m = model(
            Side::Min,
            vec![1.0],
            vec![1.0],
            Generator::Independence,
            vec![1],
            vec![1.0],
        );
        let batch = sample_extreme(&m, 100_000, 9).unwrap();
        let x = m.quantile(0.5).unwrap();
        let d = empirical_vs_analytic(&batch, &m, &[x]);
        assert!(d < 0.01, "distance {d}");
    }
}
