//! JSON model-config schema shared by the CLI and the shipped fixtures.
//!
//! Unknown keys are rejected (fail-closed) so fixture files cannot drift
//! silently. A config parses into an [`ExtremeModel`]; the Poisson
//! sample-size spec is truncated at the smallest `k` with cumulative mass
//! `>= 1 - truncate_mass`, renormalized over `{1..k}`, and may recycle the
//! parameter vectors cyclically when `k` exceeds their length (opt-in via
//! `"recycle": true`; the default is an error).

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::baseline::Baseline;
use crate::copula::Generator;
use crate::extremes::{ExtremeModel, NDist, Side};
use crate::kwg::ParamVector;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselineSpec {
    pub name: String,
    #[serde(default)]
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, try_from = "NDistSpecRaw")]
pub enum NDistSpec {
    Explicit {
        support: Vec<usize>,
        probs: Vec<f64>,
    },
    Poisson {
        poisson: f64,
        #[serde(default = "default_truncate_mass")]
        truncate_mass: f64,
        #[serde(default)]
        recycle: bool,
    },
}

fn default_truncate_mass() -> f64 {
    1e-9
}

// untagged enums silently drop `deny_unknown_fields`, so parsing goes
// through a flat struct that rejects unknown and mixed keys
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NDistSpecRaw {
    support: Option<Vec<usize>>,
    probs: Option<Vec<f64>>,
    poisson: Option<f64>,
    truncate_mass: Option<f64>,
    recycle: Option<bool>,
}

impl TryFrom<NDistSpecRaw> for NDistSpec {
    type Error = String;

    fn try_from(raw: NDistSpecRaw) -> std::result::Result<Self, String> {
        match (raw.support, raw.probs, raw.poisson) {
            (Some(support), Some(probs), None) => {
                if raw.truncate_mass.is_some() || raw.recycle.is_some() {
                    return Err("explicit ndist takes only support and probs".into());
                }
                Ok(NDistSpec::Explicit { support, probs })
            }
            (None, None, Some(poisson)) => Ok(NDistSpec::Poisson {
                poisson,
                truncate_mass: raw.truncate_mass.unwrap_or_else(default_truncate_mass),
                recycle: raw.recycle.unwrap_or(false),
            }),
            _ => Err("ndist needs either support+probs or poisson".into()),
        }
    }
}

/// Serializable description of an [`ExtremeModel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub side: Side,
    pub baseline: BaselineSpec,
    pub alphas: Vec<f64>,
    pub gammas: Vec<f64>,
    pub generator: Generator,
    pub ndist: NDistSpec,
}

impl ModelConfig {
    pub fn from_json(text: &str) -> Result<ModelConfig> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("model config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// SHA-256 of the canonical JSON encoding; stable across runs.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let mut h = Sha256::new();
        h.update(canonical.as_bytes());
        let digest = h.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Build the runtime model, expanding a Poisson sample-size spec.
    pub fn to_model(&self) -> Result<ExtremeModel> {
        let baseline = Baseline::make(&self.baseline.name, &self.baseline.params)?;
        let mut alphas = self.alphas.clone();
        let mut gammas = self.gammas.clone();
        let ndist = match &self.ndist {
            NDistSpec::Explicit { support, probs } => NDist::new(support.clone(), probs.clone())?,
            NDistSpec::Poisson {
                poisson,
                truncate_mass,
                recycle,
            } => {
                let nd = truncated_poisson(*poisson, *truncate_mass)?;
                let k = nd.max_n();
                if k > alphas.len() {
                    if !*recycle {
                        return Err(Error::Config(format!(
                            "poisson truncation needs {k} components but only {} are given; \
                             set \"recycle\": true to extend the parameter vectors cyclically",
                            alphas.len()
                        )));
                    }
                    let base_len = alphas.len();
                    for i in base_len..k {
                        alphas.push(alphas[i % base_len]);
                        gammas.push(gammas[i % base_len]);
                    }
                }
                nd
            }
        };
        ExtremeModel::new(
            self.side,
            baseline,
            ParamVector::new(alphas, gammas)?,
            self.generator,
            ndist,
        )
    }

    /// Round-trip description of a runtime model (explicit ndist).
    pub fn describe(m: &ExtremeModel) -> ModelConfig {
        let (name, params) = match m.baseline {
            Baseline::Exponential { rate } => ("exponential", vec![rate]),
            Baseline::Weibull { rate, shape } => ("weibull", vec![rate, shape]),
            Baseline::InverseExponential => ("inverse_exponential", vec![]),
            Baseline::Uniform01 => ("uniform01", vec![]),
        };
        ModelConfig {
            side: m.side,
            baseline: BaselineSpec {
                name: name.into(),
                params,
            },
            alphas: m.params.alphas().to_vec(),
            gammas: m.params.gammas().to_vec(),
            generator: m.generator,
            ndist: NDistSpec::Explicit {
                support: m.ndist.support().to_vec(),
                probs: m.ndist.probs().to_vec(),
            },
        }
    }
}

/// Zero-excluded Poisson pmf truncated at the smallest `k` with cumulative
/// probability `>= 1 - truncate_mass`, renormalized over `{1..k}`.
pub fn truncated_poisson(lambda: f64, truncate_mass: f64) -> Result<NDist> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!(
            "poisson rate must be positive, got {lambda}"
        )));
    }
    if !(truncate_mass > 0.0 && truncate_mass < 1.0) {
        return Err(Error::Domain(format!(
            "truncate_mass must be in (0,1), got {truncate_mass}"
        )));
    }
    let mut pmf = (-lambda).exp(); // P(N=0), dropped from the support
    let mut cum = pmf;
    let mut support = Vec::new();
    let mut probs = Vec::new();
    let mut k = 0usize;
    while cum < 1.0 - truncate_mass || support.is_empty() {
        k += 1;
        if k > 100_000 {
            return Err(Error::Numerical(
                "poisson truncation did not converge".into(),
            ));
        }
        pmf *= lambda / k as f64;
        cum += pmf;
        support.push(k);
        probs.push(pmf);
    }
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    // nudge the largest entry so the sum is exactly within ndist tolerance
    let sum: f64 = probs.iter().sum();
    let imax = probs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    probs[imax] += 1.0 - sum;
    NDist::new(support, probs)
}
