//! JSON experiment configuration.
//!
//! One experiment per file. Every section is optional and falls back to the
//! figure defaults: a 400-site antiperiodic ring at half filling with
//! `t = 1`, `μ = 0` and 10-site blocks. Sections belonging to a different
//! experiment than the one selected are rejected, as are unknown keys.

use std::path::{Path, PathBuf};

use qent_core::{Boundary, LatticeSpec, Strategy};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    BlockScaling,
    CompositeRegion,
    DistanceScan,
    WavepacketDemo,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::BlockScaling => "block_scaling",
            ExperimentKind::CompositeRegion => "composite_region",
            ExperimentKind::DistanceScan => "distance_scan",
            ExperimentKind::WavepacketDemo => "wavepacket_demo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryConfig {
    Open,
    Periodic,
    Antiperiodic,
}

impl From<BoundaryConfig> for Boundary {
    fn from(b: BoundaryConfig) -> Self {
        match b {
            BoundaryConfig::Open => Boundary::Open,
            BoundaryConfig::Periodic => Boundary::Periodic,
            BoundaryConfig::Antiperiodic => Boundary::Antiperiodic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LatticeConfig {
    pub n_sites: usize,
    pub hopping: f64,
    pub chem_potential: f64,
    pub boundary: BoundaryConfig,
    /// Half filling when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_particles: Option<usize>,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig {
            n_sites: 400,
            hopping: 1.0,
            chem_potential: 0.0,
            boundary: BoundaryConfig::Antiperiodic,
            n_particles: None,
        }
    }
}

impl LatticeConfig {
    pub fn spec(&self) -> CliResult<LatticeSpec> {
        let spec = LatticeSpec::new(self.n_sites, self.hopping, self.chem_potential, self.boundary.into())
            .map_err(|e| CliError::Config(format!("lattice: {e}")))?;
        match self.n_particles {
            Some(n) => spec.with_particles(n).map_err(|e| CliError::Config(format!("lattice: {e}"))),
            None => Ok(spec),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BlockScalingConfig {
    pub l_min: usize,
    pub l_max: usize,
    /// First site of every block.
    pub start: usize,
}

impl Default for BlockScalingConfig {
    fn default() -> Self {
        BlockScalingConfig {
            l_min: 4,
            l_max: 40,
            start: 0,
        }
    }
}

/// Number of sites strictly between the two blocks, or `"max"` for the
/// largest separation the lattice allows (the antipodal placement on a ring).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Separation {
    Sites(usize),
    Max(MaxTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxTag {
    Max,
}

impl Separation {
    pub fn resolve(self, n_sites: usize, block_len: usize, ring: bool) -> usize {
        match self {
            Separation::Sites(r) => r,
            Separation::Max(_) if ring => (n_sites - 2 * block_len) / 2,
            Separation::Max(_) => n_sites - 2 * block_len,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CompositeRegionConfig {
    pub block_len: usize,
    pub separation: Separation,
    pub start: usize,
}

impl Default for CompositeRegionConfig {
    fn default() -> Self {
        CompositeRegionConfig {
            block_len: 10,
            separation: Separation::Sites(15),
            start: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DistanceScanConfig {
    pub block_len: usize,
    pub r_min: usize,
    pub r_max: usize,
    pub r_step: usize,
    pub start: usize,
}

impl Default for DistanceScanConfig {
    fn default() -> Self {
        DistanceScanConfig {
            block_len: 10,
            r_min: 2,
            r_max: 40,
            r_step: 2,
            start: 0,
        }
    }
}

impl DistanceScanConfig {
    pub fn separations(&self) -> Vec<usize> {
        (self.r_min..=self.r_max).step_by(self.r_step.max(1)).collect()
    }
}

/// Where the temperature profile of a wavepacket run comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSource {
    Constant {
        theta: f64,
    },
    Exponential {
        theta0: f64,
        rate: f64,
    },
    /// Two-column `x,Theta` file.
    Csv {
        path: PathBuf,
    },
    /// A column of a `distance_scan` result, used as `Θ(R)`.
    DistanceScan {
        path: PathBuf,
        #[serde(default = "default_theta_column")]
        column: String,
    },
}

fn default_theta_column() -> String {
    "Theta_bar".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WavepacketConfig {
    pub profile: ProfileSource,
    /// Grid midpoint for sampled profiles, 0 otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    pub v0: f64,
    pub e_int: f64,
    pub dt: f64,
    pub n_steps: usize,
    pub record_every: usize,
    pub t_global: f64,
    pub c: f64,
    pub hbar: f64,
    /// Span of the redshift table; the grid interior for sampled profiles,
    /// `[-1, 1]` otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub redshift_range: Option<[f64; 2]>,
    pub redshift_points: usize,
}

impl Default for WavepacketConfig {
    fn default() -> Self {
        WavepacketConfig {
            profile: ProfileSource::Exponential { theta0: 1.0, rate: 0.01 },
            x0: None,
            v0: 0.0,
            e_int: 1.0,
            dt: 1e-2,
            n_steps: 1000,
            record_every: 10,
            t_global: 1.0,
            c: 1.0,
            hbar: 1.0,
            redshift_range: None,
            redshift_points: 21,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    Auto,
    Enumerate,
    Sample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplingConfig {
    pub strategy: StrategyKind,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            strategy: StrategyKind::Auto,
            samples: qent_core::info::DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

impl SamplingConfig {
    pub fn strategy(&self) -> Strategy {
        match self.strategy {
            StrategyKind::Auto => Strategy::Auto {
                samples: self.samples,
                seed: self.seed,
            },
            StrategyKind::Enumerate => Strategy::Enumerate,
            StrategyKind::Sample => Strategy::Sample {
                samples: self.samples,
                seed: self.seed,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub lattice: LatticeConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_scaling: Option<BlockScalingConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composite_region: Option<CompositeRegionConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_scan: Option<DistanceScanConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavepacket_demo: Option<WavepacketConfig>,
    #[serde(default)]
    pub sampling: SamplingConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        ExperimentConfig {
            experiment,
            lattice: LatticeConfig::default(),
            block_scaling: None,
            composite_region: None,
            distance_scan: None,
            wavepacket_demo: None,
            sampling: SamplingConfig::default(),
            output_dir: None,
        }
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.resolved()
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Validates the config and fills in every default, so that two configs
    /// describing the same run serialize identically.
    pub fn resolved(mut self) -> CliResult<Self> {
        let own = self.experiment;
        let present = [
            (ExperimentKind::BlockScaling, self.block_scaling.is_some()),
            (ExperimentKind::CompositeRegion, self.composite_region.is_some()),
            (ExperimentKind::DistanceScan, self.distance_scan.is_some()),
            (ExperimentKind::WavepacketDemo, self.wavepacket_demo.is_some()),
        ];
        if let Some((other, _)) = present.iter().find(|(k, set)| *set && *k != own) {
            return Err(CliError::Config(format!(
                "section `{}` does not apply to experiment `{}`",
                other.name(),
                own.name()
            )));
        }
        let spec = self.lattice.spec()?;
        self.lattice.n_particles = Some(spec.n_particles);
        let n = spec.n_sites;
        let fits = |what: &str, end: usize| {
            if end > n {
                Err(CliError::Config(format!("{what} reaches site {end} but the lattice has {n}")))
            } else {
                Ok(())
            }
        };
        match own {
            ExperimentKind::BlockScaling => {
                let c = self.block_scaling.get_or_insert_with(Default::default);
                if c.l_min == 0 || c.l_min > c.l_max {
                    return Err(CliError::Config(format!("block sizes {}..={} are empty", c.l_min, c.l_max)));
                }
                fits("largest block", c.start + c.l_max)?;
            }
            ExperimentKind::CompositeRegion => {
                let c = self.composite_region.get_or_insert_with(Default::default);
                if c.block_len < 2 {
                    return Err(CliError::Config("blocks need at least 2 sites".into()));
                }
                if 2 * c.block_len > n {
                    return Err(CliError::Config("two blocks do not fit on the lattice".into()));
                }
                let r = c.separation.resolve(n, c.block_len, spec.boundary.is_ring());
                c.separation = Separation::Sites(r);
                fits("second block", c.start + 2 * c.block_len + r)?;
            }
            ExperimentKind::DistanceScan => {
                let c = self.distance_scan.get_or_insert_with(Default::default);
                if c.block_len < 2 {
                    return Err(CliError::Config("blocks need at least 2 sites".into()));
                }
                if c.r_step == 0 || c.r_min > c.r_max {
                    return Err(CliError::Config("empty separation range".into()));
                }
                fits("farthest block", c.start + 2 * c.block_len + c.r_max)?;
            }
            ExperimentKind::WavepacketDemo => {
                let c = self.wavepacket_demo.get_or_insert_with(Default::default);
                if !(c.dt > 0.0) || c.record_every == 0 || c.redshift_points < 2 {
                    return Err(CliError::Config("need dt > 0, record_every >= 1, redshift_points >= 2".into()));
                }
                if !(c.e_int > 0.0 && c.c > 0.0 && c.hbar > 0.0 && c.t_global > 0.0) {
                    return Err(CliError::Config("e_int, c, hbar and t_global must be positive".into()));
                }
            }
        }
        if self.sampling.samples == 0 && self.sampling.strategy != StrategyKind::Enumerate {
            return Err(CliError::Config("sampling needs at least one sample".into()));
        }
        Ok(self)
    }

    /// Canonical JSON of the run, without the output location.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.output_dir = None;
        serde_json::to_string(&c).expect("config serializes")
    }

    pub fn hash(&self) -> String {
        hex(&Sha256::digest(self.canonical_json().as_bytes()))
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
