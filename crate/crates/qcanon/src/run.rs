//! Run configuration, suite dispatch and JSON reports.

use std::path::{Path, PathBuf};

use qcanon_core::crystal::VertexOrder;
use qcanon_core::quiver::Quiver;
use serde::Serialize;

use crate::format::{parse_order, read_quiver, FormatError, QuiverFile};
use crate::suites::{self, Engine, Suite, SuiteReport};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub quiver: Option<PathBuf>,
    /// highest weight of the module, and the right tensor factor
    pub weight: Option<Vec<i64>>,
    /// left tensor factor
    pub weight2: Option<Vec<i64>>,
    pub height: i64,
    /// vertex names, smallest first
    pub order: Option<String>,
    pub suites: Vec<Suite>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub sign_cases: usize,
    pub mutation_cases: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quiver: None,
            weight: None,
            weight2: None,
            height: 4,
            order: None,
            suites: Suite::ALL.to_vec(),
            out: None,
            seed: 0,
            sign_cases: 1000,
            mutation_cases: 100,
        }
    }
}

/// A validated configuration.
pub struct Loaded {
    pub file: Option<QuiverFile>,
    pub engine: Option<Engine>,
}

impl RunConfig {
    /// Reads the quiver and checks weights, height and order. Weights default
    /// to the file's framings.
    pub fn load(&self) -> Result<Loaded, ConfigError> {
        if self.height < 0 {
            return Err(ConfigError::Invalid(format!("height bound {} is negative", self.height)));
        }
        let Some(path) = &self.quiver else {
            if self.weight.is_some() || self.weight2.is_some() || self.order.is_some() {
                return Err(ConfigError::Invalid("--weight, --weight2 and --order need --quiver".into()));
            }
            return Ok(Loaded { file: None, engine: None });
        };
        let file = read_quiver(path)?;
        let q = &file.quiver;
        let lambda = match (&self.weight, &file.framing1) {
            (Some(w), _) => Some(w.clone()),
            (None, Some(f)) => Some(f.0.clone()),
            (None, None) => None,
        };
        let lambda2 = self.weight2.clone().or_else(|| file.framing2.as_ref().map(|f| f.0.clone()));
        for w in lambda.iter().chain(&lambda2) {
            check_weight(q, w)?;
        }
        let order = match &self.order {
            Some(s) => parse_order(q, s)?,
            None => VertexOrder::natural(q.len()),
        };
        let engine = match lambda {
            Some(l) => Some(Engine::new(q.clone(), l, lambda2, self.height, order)),
            None if lambda2.is_some() => return Err(ConfigError::Invalid("--weight2 needs --weight or a framing1 line".into())),
            None => None,
        };
        Ok(Loaded { file: Some(file), engine })
    }

    pub fn engine_or_err(loaded: &Loaded) -> Result<&Engine, ConfigError> {
        loaded.engine.as_ref().ok_or_else(|| ConfigError::Invalid("a quiver and a weight (--weight or framing1) are required".into()))
    }
}

fn check_weight(q: &Quiver, w: &[i64]) -> Result<(), ConfigError> {
    if w.len() != q.len() {
        return Err(ConfigError::Invalid(format!("weight has {} entries but the quiver has {} vertices", w.len(), q.len())));
    }
    if let Some(i) = w.iter().position(|x| *x < 0) {
        return Err(ConfigError::Invalid(format!("weight is not dominant: pairing with vertex {} is {}", q.name(i), w[i])));
    }
    Ok(())
}

/// The conventions every number in a report depends on.
#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub vertex_order: Option<String>,
    pub coproduct: &'static str,
    pub tensor_factors: &'static str,
    pub weights: &'static str,
    pub monomials: &'static str,
    pub string_order: &'static str,
    pub canonical_normalization: &'static str,
    pub tensor_crystal: &'static str,
    pub twist_signs: &'static str,
}

impl Conventions {
    pub fn new(engine: Option<&Engine>) -> Self {
        Conventions {
            vertex_order: engine.map(|e| e.order.vertices().iter().map(|&i| e.quiver.name(i)).collect::<Vec<_>>().join("<")),
            coproduct: "Delta(E_i) = E_i (x) 1 + K_i (x) E_i, Delta(F_i) = F_i (x) K_-i + 1 (x) F_i",
            tensor_factors: "L(weight2) (x) L(weight)",
            weights: "lowering vectors nu >= 0 below lambda; K_i acts by v^<i, lambda - nu>",
            monomials: "F_{i1}^(a1) ... F_{il}^(al) v_lambda for the string ((i1,a1),...,(il,al)), rightmost pair applied first",
            string_order: "first differing pair decides, vertex by the vertex order then multiplicity; proper prefixes incomparable",
            canonical_normalization: "G(b) bar-invariant and congruent to b mod vL at v = 0; absorbed monomial signs recorded",
            tensor_crystal: "lattice of pure tensors at v = infinity; f acts on the right factor iff phi(b1) > eps(b2)",
            twist_signs: "psi- on F and psi+ on E at the source weight, specialized at v = -1 with h_i = <i, lambda - nu>",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub quiver: Option<String>,
    pub vertices: Option<Vec<String>>,
    pub weight: Option<Vec<i64>>,
    pub weight2: Option<Vec<i64>>,
    pub height: i64,
    pub seed: u64,
    pub suites: Vec<Suite>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub conventions: Conventions,
    pub config: ConfigEcho,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// One report per suite, sharing the header.
    pub fn split(&self) -> Vec<(Suite, Report)> {
        self.suites
            .iter()
            .map(|s| (s.suite, Report { passed: s.passed, suites: vec![s.clone()], ..self.clone() }))
            .collect()
    }
}

pub fn header(config: &RunConfig, loaded: &Loaded, suites: Vec<Suite>) -> (Conventions, ConfigEcho) {
    let engine = loaded.engine.as_ref();
    let echo = ConfigEcho {
        quiver: config.quiver.as_ref().map(|p| p.display().to_string()),
        vertices: loaded.file.as_ref().map(|f| f.quiver.names().to_vec()),
        weight: engine.map(|e| e.lambda.clone()),
        weight2: engine.and_then(|e| e.lambda2.clone()),
        height: config.height,
        seed: config.seed,
        suites,
    };
    (Conventions::new(engine), echo)
}

/// Runs the selected suites and writes `report.json` plus one file per suite
/// into the output directory, if any.
pub fn run_suite(config: &RunConfig) -> Result<Report, ConfigError> {
    let loaded = config.load()?;
    let mut selected = config.suites.clone();
    selected.sort();
    selected.dedup();
    if selected.iter().any(|s| s.needs_module()) {
        RunConfig::engine_or_err(&loaded)?;
    }
    let quiver = loaded.file.as_ref().map(|f| &f.quiver);
    let mut reports = Vec::new();
    for &s in &selected {
        let e = loaded.engine.as_ref();
        reports.push(match s {
            Suite::Relations => suites::relations(e.expect("checked")),
            Suite::Twisted => suites::twisted(e.expect("checked")),
            Suite::Signs => suites::signs(config.seed, config.sign_cases),
            Suite::Mutation => suites::mutation(quiver, config.seed, config.mutation_cases),
            Suite::Crystal => suites::crystal(e.expect("checked")),
            Suite::Bases => suites::bases(e.expect("checked")),
        });
    }
    let (conventions, echo) = header(config, &loaded, selected);
    let report = Report {
        tool: "qcanon",
        version: env!("CARGO_PKG_VERSION"),
        conventions,
        config: echo,
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    };
    if let Some(dir) = &config.out {
        write_file(dir, "report.json", &report.to_json())?;
        for (s, r) in report.split() {
            write_file(dir, &format!("{}.json", s.name()), &r.to_json())?;
        }
    }
    Ok(report)
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), ConfigError> {
    let err = |source| ConfigError::Write { path: dir.join(name).display().to_string(), source };
    std::fs::create_dir_all(dir).map_err(err)?;
    std::fs::write(dir.join(name), contents).map_err(err)
}
