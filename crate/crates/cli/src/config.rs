use std::path::{Path, PathBuf};

use horolat::acceptance::AcceptanceConfig;
use horolat::lattice::{GeneratingSet, LatticePoint, LengthOracle, NormSpec};
use horolat::nctorus::{Cocycle, Truncation};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthConfig {
    /// Half of a symmetric generating set; negatives are added.
    Word(Vec<Vec<i64>>),
    Norm { dim: usize, norm: NormSpec },
    Beta { dim: usize, beta: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThetaConfig {
    /// The same angle in every 2x2 block.
    Block(f64),
    Matrix(Vec<Vec<f64>>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub length: LengthConfig,
    pub theta: ThetaConfig,
    pub seed: u64,
    /// Relative increment at which the truncation schedule stops.
    pub tol: f64,
    /// Largest truncation radius; the per-dimension default when absent.
    pub truncation_radius: Option<i64>,
    /// Stabilization run length for face rays; derived when absent.
    pub run_length: Option<usize>,
    /// Half-width of the cube on which horofunction windows are recorded;
    /// 20 on the line and 6 otherwise when absent.
    pub window_radius: Option<i64>,
    /// Word-ball radius for length tables.
    pub ball_radius: u32,
    /// Word-ball radius of the translates in the boundary census.
    pub census_radius: u32,
    /// JSON element file for `seminorm`; a seeded random element otherwise.
    pub element: Option<PathBuf>,
    /// Support half-width of random elements; 3 on the line and 1 otherwise
    /// when absent.
    pub support_radius: Option<i64>,
    pub samples: usize,
    /// Lanczos iteration cap per truncated norm.
    pub lanczos_iter: Option<usize>,
    /// Free group words `x` for which boundary values are tabulated.
    pub words: Vec<String>,
    /// Boundary words in `head|cycle` form.
    pub boundary: Vec<String>,
    pub prefix_length: usize,
    pub out: Option<PathBuf>,
    pub acceptance: AcceptanceConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            length: LengthConfig::Word(vec![vec![1], vec![2]]),
            theta: ThetaConfig::Block(0.0),
            seed: 0,
            tol: 1e-3,
            truncation_radius: None,
            run_length: None,
            window_radius: None,
            ball_radius: 6,
            census_radius: 2,
            element: None,
            support_radius: None,
            samples: 64,
            lanczos_iter: None,
            words: vec!["a".into(), "b".into(), "ab".into(), "Ba".into()],
            boundary: vec!["|a".into(), "|b".into(), "|ab".into(), "|aB".into()],
            prefix_length: 50,
            out: None,
            acceptance: AcceptanceConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.into()));
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return bad("tol must be a finite nonnegative number");
        }
        if self.window_radius.is_some_and(|r| r <= 0) {
            return bad("window_radius must be positive");
        }
        if self.run_length == Some(0) {
            return bad("run_length must be positive");
        }
        if self.truncation_radius.is_some_and(|r| r <= 0) {
            return bad("truncation_radius must be positive");
        }
        if self.support_radius.is_some_and(|r| r < 0) || self.lanczos_iter == Some(0) || self.samples == 0 || self.prefix_length == 0 {
            return bad("support_radius, lanczos_iter, samples and prefix_length must be positive");
        }
        if let LengthConfig::Beta { beta, .. } = self.length {
            if !(beta > 0.0 && beta <= 1.0) {
                return bad("beta must lie in (0, 1]");
            }
        }
        Ok(())
    }

    pub fn length(&self) -> Result<LengthOracle, CliError> {
        Ok(match &self.length {
            LengthConfig::Word(half) => {
                let dim = half.first().map(|g| g.len()).ok_or_else(|| CliError::Config("empty generating set".into()))?;
                let pts: Vec<LatticePoint> = half.iter().map(|g| LatticePoint::new(g.clone())).collect();
                LengthOracle::word(&GeneratingSet::symmetric(dim, &pts)?)
            }
            LengthConfig::Norm { dim, norm } => LengthOracle::norm(*dim, norm.clone()),
            LengthConfig::Beta { dim, beta } => LengthOracle::beta(*dim, *beta),
        })
    }

    pub fn generating_set(&self) -> Result<GeneratingSet, CliError> {
        self.length()?
            .generating_set()
            .cloned()
            .ok_or_else(|| CliError::Config("this command needs a word length".into()))
    }

    pub fn cocycle(&self, dim: usize) -> Result<Cocycle, CliError> {
        match &self.theta {
            ThetaConfig::Block(t) => Ok(Cocycle::block(dim, *t)),
            ThetaConfig::Matrix(m) => {
                if m.len() != dim {
                    return Err(CliError::Config(format!("theta is {}x{}, expected {dim}x{dim}", m.len(), m.len())));
                }
                Ok(Cocycle::new(m.clone())?)
            }
        }
    }

    pub fn truncation(&self, dim: usize) -> Truncation {
        let mut t = Truncation::for_dim(dim);
        t.tol = self.tol;
        if let Some(r) = self.truncation_radius {
            t.r_max = r;
            t.r_start = t.r_start.min(r);
        }
        if let Some(n) = self.lanczos_iter {
            t.lanczos_iter = n;
        }
        t
    }

    pub fn support_radius(&self, dim: usize) -> i64 {
        self.support_radius.unwrap_or(if dim == 1 { 3 } else { 1 })
    }

    pub fn window(&self, dim: usize) -> Vec<LatticePoint> {
        LatticePoint::cube(dim, self.window_radius.unwrap_or(if dim == 1 { 20 } else { 6 }))
    }
}
