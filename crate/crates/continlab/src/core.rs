//! Shared verdict, witness, configuration and deterministic-randomness
//! contracts used by every checker.
//!
//! Topological properties of sampled data are only semi-decidable, so every
//! checker returns a three-valued [`Verdict`] instead of a boolean.  A `Fails`
//! verdict always carries at least one [`Witness`]; a `Holds` verdict means
//! "no violation survived the sampling and refinement budget".

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Reason a check could not reach a decisive verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnresolvedReason {
    InsufficientSamples,
    ToleranceAmbiguity,
    OracleTimeout,
}

/// Three-valued outcome of a property check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    Unresolved(UnresolvedReason),
}

impl Verdict {
    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails)
    }

    pub fn is_decisive(&self) -> bool {
        !matches!(self, Verdict::Unresolved(_))
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Holds => write!(f, "Holds"),
            Verdict::Fails => write!(f, "Fails"),
            Verdict::Unresolved(r) => write!(f, "Unresolved({r:?})"),
        }
    }
}

/// How robust a recorded violation is.
///
/// `SurvivedRefinement` means the violation persisted after the relevant grid
/// resolution was doubled once; only such witnesses should be treated as
/// conclusive counterexamples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Robustness {
    RawGrid,
    SurvivedRefinement,
}

/// A concrete violation: points in the domain, parameter values in `[0,1]`,
/// and a human-readable description of what went wrong.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub points: Vec<Vec<f64>>,
    pub scalars: Vec<f64>,
    pub description: String,
    pub robustness: Robustness,
}

impl Witness {
    pub fn new(points: Vec<Vec<f64>>, scalars: Vec<f64>, description: impl Into<String>) -> Self {
        Witness {
            points,
            scalars,
            description: description.into(),
            robustness: Robustness::RawGrid,
        }
    }

    pub fn survived(mut self) -> Self {
        self.robustness = Robustness::SurvivedRefinement;
        self
    }
}

/// Which pattern the order-density search uses for a strict pair `x > y`:
/// `Printed` looks for `z` with `x > y > z`, `Between` for `x > z > y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DensityPattern {
    Printed,
    Between,
}

/// Sampling and tolerance budget shared by all checkers.
///
/// Identical `(inputs, CheckConfig)` produce bit-identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CheckConfig {
    /// Comparison slack `tau`: `a >= b` is evaluated as `a >= b - tau`,
    /// indifference as `|a - b| <= tau`.
    pub cmp_tolerance: f64,
    /// Points per axis of the spatial grid.
    pub grid_resolution: usize,
    /// Points of the `[0,1]` parameter grid.
    pub lambda_resolution: usize,
    /// Segments / arcs / tuples drawn per check.
    pub sample_count: usize,
    /// Root seed; every checker derives its own streams from it.
    pub seed: u64,
    /// How many grid doublings a candidate violation must survive.
    pub refinement_rounds: u32,
    /// Oscillation floor: a point is flagged as discontinuous only while the
    /// observed oscillation stays above this budget at every probed scale.
    pub continuity_modulus_budget: f64,
    /// Pattern used by the order-density checker.
    pub density_pattern: DensityPattern,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            cmp_tolerance: 1e-9,
            grid_resolution: 201,
            lambda_resolution: 501,
            sample_count: 500,
            seed: 42,
            refinement_rounds: 1,
            continuity_modulus_budget: 0.05,
            density_pattern: DensityPattern::Printed,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.cmp_tolerance <= 0.0 || self.cmp_tolerance.is_nan() {
            return Err("cmp_tolerance must be positive".into());
        }
        if self.grid_resolution < 3 {
            return Err("grid_resolution must be at least 3".into());
        }
        if self.lambda_resolution < 3 {
            return Err("lambda_resolution must be at least 3".into());
        }
        if self.sample_count < 1 {
            return Err("sample_count must be at least 1".into());
        }
        if self.refinement_rounds < 1 {
            return Err("refinement_rounds must be at least 1".into());
        }
        Ok(())
    }

    /// The same budget with both grid resolutions doubled, for the witness
    /// refinement protocol.
    pub fn doubled(&self) -> Self {
        CheckConfig {
            grid_resolution: self.grid_resolution * 2 - 1,
            lambda_resolution: self.lambda_resolution * 2 - 1,
            ..self.clone()
        }
    }

    /// Derived random stream for `(property_id, index)`.  Streams are keyed
    /// so that checks are order-independent: drawing samples for one property
    /// never perturbs another.
    pub fn stream(&self, property_id: &str, index: u64) -> ChaCha8Rng {
        derived_stream(self.seed, property_id, index)
    }
}

/// Derive an independent ChaCha8 stream from `(seed, label, index)`.
pub fn derived_stream(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(label.as_bytes());
    hasher.update(index.to_le_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

/// Outcome of checking one named property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property_id: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub samples_used: usize,
    pub config_echo: CheckConfig,
    pub notes: String,
}

impl PropertyReport {
    pub fn holds(property_id: impl Into<String>, samples: usize, cfg: &CheckConfig) -> Self {
        PropertyReport {
            property_id: property_id.into(),
            verdict: Verdict::Holds,
            witnesses: Vec::new(),
            samples_used: samples,
            config_echo: cfg.clone(),
            notes: String::new(),
        }
    }

    pub fn fails(
        property_id: impl Into<String>,
        witnesses: Vec<Witness>,
        samples: usize,
        cfg: &CheckConfig,
    ) -> Self {
        assert!(
            !witnesses.is_empty(),
            "a Fails report must carry at least one witness"
        );
        PropertyReport {
            property_id: property_id.into(),
            verdict: Verdict::Fails,
            witnesses,
            samples_used: samples,
            config_echo: cfg.clone(),
            notes: String::new(),
        }
    }

    pub fn unresolved(
        property_id: impl Into<String>,
        reason: UnresolvedReason,
        samples: usize,
        cfg: &CheckConfig,
    ) -> Self {
        PropertyReport {
            property_id: property_id.into(),
            verdict: Verdict::Unresolved(reason),
            witnesses: Vec::new(),
            samples_used: samples,
            config_echo: cfg.clone(),
            notes: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes = note.into();
        self
    }
}

/// `a >= b` up to comparison slack.
#[inline]
pub fn weakly_ge(a: f64, b: f64, tau: f64) -> bool {
    a >= b - tau
}

/// `a > b` by a margin beyond the slack.
#[inline]
pub fn strictly_gt(a: f64, b: f64, tau: f64) -> bool {
    a > b + tau
}

/// `|a - b|` within the slack.
#[inline]
pub fn indifferent(a: f64, b: f64, tau: f64) -> bool {
    (a - b).abs() <= tau
}
