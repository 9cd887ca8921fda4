//! Job configuration files.
//!
//! JSON only. Rationals are strings such as `"-3/4"` so nothing passes
//! through floating point. Half-integers are doubled and live under names
//! ending in `_x2`: `mode_bound_x2: 7` means `7/2`, `plus_x2: [1, 3]` means
//! `Ψ⁺(-1/2)Ψ⁺(-3/2)`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::ValueEnum;
use critical_fock::affine::{top_level_vector, TensorMonomial, TensorVector};
use critical_fock::amodule::ModuleSpec;
use critical_fock::certify::{Witness, WitnessKind};
use critical_fock::characters::CharacterTarget;
use critical_fock::fock::FermionMonomial;
use critical_fock::lattice::LatticeMonomial;
use critical_fock::weyl::WeylMonomial;
use critical_fock::{LaurentData, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Relations,
    Certify,
    Character,
    Identify,
    FlowCheck,
    WakimotoCheck,
    GenerationCheck,
    /// Re-verify one certificate witness.
    Replay,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Relations => "relations",
            Command::Certify => "certify",
            Command::Character => "character",
            Command::Identify => "identify",
            Command::FlowCheck => "flow-check",
            Command::WakimotoCheck => "wakimoto-check",
            Command::GenerationCheck => "generation-check",
            Command::Replay => "replay",
        }
    }
}

/// χ coefficients keyed by the index `k` of `χ_k z^{-k-1}`, written as a
/// decimal string since JSON keys are strings.
pub type ChiMap = BTreeMap<String, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum ModuleConfig {
    /// `λ` and `μ` are shorthands for `χ⁺_0` and `χ⁻_0`.
    Full {
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        chi_plus: ChiMap,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        chi_minus: ChiMap,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<Scalar>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mu: Option<Scalar>,
    },
    Tilde {
        #[serde(default)]
        chi: ChiMap,
    },
    Bar {
        m: u32,
        n: u32,
    },
}

fn laurent(map: &ChiMap, shorthand: Option<&Scalar>, name: &str) -> Result<LaurentData> {
    let mut pairs = Vec::new();
    for (k, c) in map {
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{name}: index `{k}` is not an integer")))?;
        pairs.push((k, c.clone()));
    }
    if let Some(c) = shorthand {
        if pairs.iter().any(|(k, _)| *k == 0) {
            return Err(CliError::Config(format!("{name}: index 0 given twice")));
        }
        pairs.push((0, c.clone()));
    }
    Ok(LaurentData::from_pairs(pairs))
}

impl ModuleConfig {
    pub fn to_spec(&self) -> Result<ModuleSpec> {
        Ok(match self {
            ModuleConfig::Full {
                chi_plus,
                chi_minus,
                lambda,
                mu,
            } => ModuleSpec::Full {
                chi_plus: laurent(chi_plus, lambda.as_ref(), "chi_plus")?,
                chi_minus: laurent(chi_minus, mu.as_ref(), "chi_minus")?,
            },
            ModuleConfig::Tilde { chi } => ModuleSpec::Tilde {
                chi: laurent(chi, None, "chi")?,
            },
            ModuleConfig::Bar { m, n } => ModuleSpec::Bar { m: *m, n: *n },
        })
    }

    /// The Tilde twist `χ`, as used by the Wakimoto jobs.
    pub fn tilde_chi(&self) -> Result<LaurentData> {
        match self {
            ModuleConfig::Tilde { chi } => laurent(chi, None, "chi"),
            _ => Err(CliError::Config("this job needs a module of kind Tilde".into())),
        }
    }
}

/// Truncation bounds. Each job reads the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    /// Integer modes `|n| ≤ mode_bound` (sl2, Weyl, flow).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode_bound: Option<i64>,
    /// Half-integer modes `|r| ≤ mode_bound_x2 / 2` for the `𝒜` suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode_bound_x2: Option<i64>,
    /// Fermionic weight cap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_bound: Option<i64>,
    /// `L0` degree cap for tensor, Weyl and vacuum-module spaces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<i64>,
    /// Cap on `|charge|` of lattice or Weyl monomials.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_charge: Option<i64>,
    /// `|s|, |t| ≤ flow_bound` in the flow checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flow_bound: Option<i64>,
    /// `|j| ≤ level_bound` for the top-level vectors `w_j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level_bound: Option<i64>,
}

impl Bounds {
    fn entries(&self) -> [(&'static str, Option<i64>); 7] {
        [
            ("mode_bound", self.mode_bound),
            ("mode_bound_x2", self.mode_bound_x2),
            ("weight_bound", self.weight_bound),
            ("degree_bound", self.degree_bound),
            ("max_charge", self.max_charge),
            ("flow_bound", self.flow_bound),
            ("level_bound", self.level_bound),
        ]
    }

    /// The named bound, or a config error if it is missing.
    pub fn need(&self, name: &str) -> Result<i64> {
        self.entries()
            .into_iter()
            .find(|(n, _)| *n == name)
            .and_then(|(_, v)| v)
            .ok_or_else(|| CliError::Config(format!("bounds.{name} is required for this job")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopLevelRef {
    pub s: i64,
    pub j: i64,
}

/// `Ψ⁺(-p/2)⋯Ψ⁻(-q/2)⋯𝟙 ⊗ β(-n)⋯e^{cβ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialRef {
    #[serde(default)]
    pub plus_x2: Vec<i64>,
    #[serde(default)]
    pub minus_x2: Vec<i64>,
    #[serde(default)]
    pub charge: i64,
    #[serde(default)]
    pub parts: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VectorConfig {
    /// `𝟙 ⊗ 𝟙`.
    Vacuum,
    /// The signed top-level vector `w^{(s)}_j`.
    TopLevel(TopLevelRef),
    Monomial(MonomialRef),
}

impl VectorConfig {
    pub fn build(&self) -> Result<TensorVector> {
        Ok(match self {
            VectorConfig::Vacuum => top_level_vector(0, 0),
            VectorConfig::TopLevel(t) => top_level_vector(t.s, t.j),
            VectorConfig::Monomial(m) => {
                let f = FermionMonomial::from_twice(m.plus_x2.clone(), m.minus_x2.clone())
                    .map_err(|e| CliError::Config(format!("vector: {e}")))?;
                let l = LatticeMonomial::new(m.charge, m.parts.clone())
                    .map_err(|e| CliError::Config(format!("vector: {e}")))?;
                TensorVector::basis(TensorMonomial::new(f, l))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum TargetConfig {
    PiZero,
    E { lambda: Scalar, mu: Scalar },
    RelaxedVerma { lambda: Scalar, mu: Scalar },
}

impl TargetConfig {
    pub fn to_target(&self) -> CharacterTarget {
        match self {
            TargetConfig::PiZero => CharacterTarget::PiZero,
            TargetConfig::E { lambda, mu } => CharacterTarget::E {
                lambda: lambda.clone(),
                mu: mu.clone(),
            },
            TargetConfig::RelaxedVerma { lambda, mu } => CharacterTarget::RelaxedVermaAnalytic {
                lambda: lambda.clone(),
                mu: mu.clone(),
            },
        }
    }
}

/// A certificate witness as written in failure records.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "snake_case", deny_unknown_fields)]
pub enum WitnessConfig {
    Fock {
        kind: WitnessKind,
        plus_x2: Vec<i64>,
        minus_x2: Vec<i64>,
    },
    Weyl {
        kind: WitnessKind,
        a_parts: Vec<i64>,
        astar_parts: Vec<i64>,
    },
}

impl WitnessConfig {
    pub fn from_fock(w: &Witness<FermionMonomial>) -> Self {
        WitnessConfig::Fock {
            kind: w.kind,
            plus_x2: w.monomial.plus().to_vec(),
            minus_x2: w.monomial.minus().to_vec(),
        }
    }

    pub fn from_weyl(w: &Witness<WeylMonomial>) -> Self {
        WitnessConfig::Weyl {
            kind: w.kind,
            a_parts: w.monomial.a_parts().to_vec(),
            astar_parts: w.monomial.astar_parts().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub schema_version: u32,
    /// Must match the command line when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleConfig>,
    #[serde(default)]
    pub sector: i64,
    #[serde(default)]
    pub flow: i64,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<VectorConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl JobConfig {
    /// Parses and validates a config. Any failure here maps to exit status 2.
    pub fn parse(text: &str) -> Result<Self> {
        let config: JobConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        for (name, v) in self.bounds.entries() {
            if let Some(v) = v {
                if v < 1 {
                    return Err(CliError::Config(format!("bounds.{name} must be at least 1, got {v}")));
                }
            }
        }
        if let Some(d) = self.depth {
            if d < 1 {
                return Err(CliError::Config(format!("depth must be at least 1, got {d}")));
            }
        }
        if let Some(m) = &self.module {
            m.to_spec()?;
        }
        if let Some(v) = &self.vector {
            v.build()?;
        }
        Ok(())
    }

    /// Checks the config against the command given on the command line.
    pub fn for_command(&self, command: Command) -> Result<()> {
        match self.command {
            Some(c) if c != command => Err(CliError::Config(format!(
                "config is for `{}` but `{}` was requested",
                c.name(),
                command.name()
            ))),
            _ => Ok(()),
        }
    }

    pub fn module(&self) -> Result<&ModuleConfig> {
        self.module
            .as_ref()
            .ok_or_else(|| CliError::Config("module is required for this job".into()))
    }
}
