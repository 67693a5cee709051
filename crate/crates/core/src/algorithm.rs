use crate::de::{run_de, DeParams};
use crate::error::Error;
use crate::eval::Objective;
use crate::pso::{run_pso, PsoParams};
use crate::record::RunRecord;
use crate::space::SearchSpace;
use crate::yi::{run_yi, YiParams};
use crate::yypo::{run_yypo, YypoParams, YypoVariant};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The five optimizers this crate can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmId {
    Yi,
    Yypo,
    Dyypo,
    De,
    Pso,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 5] = [
        AlgorithmId::Yi,
        AlgorithmId::Yypo,
        AlgorithmId::Dyypo,
        AlgorithmId::De,
        AlgorithmId::Pso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Yi => "yi",
            AlgorithmId::Yypo => "yypo",
            AlgorithmId::Dyypo => "dyypo",
            AlgorithmId::De => "de",
            AlgorithmId::Pso => "pso",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        AlgorithmId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "algorithm",
                name: s.to_string(),
            })
    }
}

/// A fully parameterized optimizer, ready to run.
///
/// The two pair-optimizer variants share one parameter struct; which
/// algorithm id a config answers to is decided by the variant inside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "snake_case")]
pub enum AlgorithmConfig {
    Yi(YiParams),
    Yypo(YypoParams),
    De(DeParams),
    Pso(PsoParams),
}

impl AlgorithmConfig {
    /// The documented default configuration for an algorithm id.
    pub fn default_for(id: AlgorithmId) -> Self {
        match id {
            AlgorithmId::Yi => AlgorithmConfig::Yi(YiParams::default()),
            AlgorithmId::Yypo => AlgorithmConfig::Yypo(YypoParams::default()),
            AlgorithmId::Dyypo => AlgorithmConfig::Yypo(YypoParams::dynamic()),
            AlgorithmId::De => AlgorithmConfig::De(DeParams::default()),
            AlgorithmId::Pso => AlgorithmConfig::Pso(PsoParams::default()),
        }
    }

    pub fn id(&self) -> AlgorithmId {
        match self {
            AlgorithmConfig::Yi(_) => AlgorithmId::Yi,
            AlgorithmConfig::Yypo(p) => match p.variant {
                YypoVariant::StaticRandomI => AlgorithmId::Yypo,
                YypoVariant::DynamicAscendingI => AlgorithmId::Dyypo,
            },
            AlgorithmConfig::De(_) => AlgorithmId::De,
            AlgorithmConfig::Pso(_) => AlgorithmId::Pso,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self {
            AlgorithmConfig::Yi(p) => p.validate(),
            AlgorithmConfig::Yypo(p) => p.validate(),
            AlgorithmConfig::De(p) => p.validate(),
            AlgorithmConfig::Pso(p) => p.validate(),
        }
    }

    /// Runs the configured optimizer on one objective to budget
    /// exhaustion. The record's algorithm field matches `self.id()`.
    pub fn run<O: Objective + ?Sized>(
        &self,
        obj: &O,
        space: &SearchSpace,
        t_max: u64,
        seed: u64,
        problem_label: &str,
    ) -> Result<RunRecord, Error> {
        match self {
            AlgorithmConfig::Yi(p) => run_yi(obj, space, p, t_max, seed, problem_label),
            AlgorithmConfig::Yypo(p) => run_yypo(obj, space, p, t_max, seed, problem_label),
            AlgorithmConfig::De(p) => run_de(obj, space, p, t_max, seed, problem_label),
            AlgorithmConfig::Pso(p) => run_pso(obj, space, p, t_max, seed, problem_label),
        }
    }
}
