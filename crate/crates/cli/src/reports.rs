//! Result documents printed by the subcommands. Each one deserializes back
//! into an equal value.

use serde::{Deserialize, Serialize};

use lenspec::algnum::{ContainmentWitness, DecimalInterval, IndependenceVerdict};
use lenspec::galmod::Unscrambled;
use lenspec::quatarith::{InclusionReport, NormOneElement, Place, QuaternionAlgebra};
use lenspec::rootsys::Family;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylReport {
    pub family: Family,
    pub rank: u32,
    pub order: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicWeylReport {
    pub d: u32,
    pub order: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesReport {
    pub family: Family,
    pub rank: u32,
    pub nontrivial_classes: usize,
    pub classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub system: String,
    pub value: DecimalInterval,
    /// `log|α(γ)|` per root, present when eigenvalues were given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_vector: Option<Vec<DecimalInterval>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub n: u32,
    pub ratio: String,
    pub decimal_interval: [String; 2],
    pub precision_bits: u32,
    pub mu: Vec<String>,
    pub lambda1: String,
    pub lambda2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub a: String,
    pub b: String,
    pub place: Place,
    pub symbol: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub algebra: QuaternionAlgebra,
    pub ramification: Vec<Place>,
    pub definite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedReport {
    pub algebra: QuaternionAlgebra,
    pub d: String,
    pub embeds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub algebra: QuaternionAlgebra,
    pub height: u64,
    pub count: usize,
    pub elements: Vec<NormOneElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndepReport {
    pub elements: Vec<String>,
    pub coeff_bound: u64,
    pub precision_bits: u32,
    pub result: IndependenceVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainReport {
    pub side1: Vec<String>,
    pub side2: Vec<String>,
    pub exponent_bound: u64,
    pub precision_bits: u32,
    pub witness: Option<ContainmentWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnscrambleReport {
    pub module: Option<String>,
    pub chi: Vec<i64>,
    pub result: Unscrambled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EtaleMode {
    Local,
    Global,
    SameMaximal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaleReport {
    pub mode: EtaleMode,
    pub result: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InclusionStatus {
    /// Forward verdicts all true, reverse has a false verdict.
    Asymmetric,
    /// A spectrum had no hyperbolic traces at this height.
    Vacuous,
    Unexpected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionSummary {
    pub status: InclusionStatus,
    pub forward_all_true: bool,
    pub reverse_false_count: usize,
    pub forward_witness_count: usize,
    pub smallest_witness_power: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionExperimentReport {
    pub d1: AlgebraReport,
    pub d2: AlgebraReport,
    pub height: u64,
    pub witness_height: u64,
    pub power_bound: u32,
    /// D₂ traces against D₁.
    pub forward: InclusionReport,
    /// D₁ traces against D₂.
    pub reverse: InclusionReport,
    pub summary: InclusionSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BcRatioRow {
    pub n: u32,
    pub expected: String,
    pub samples: u32,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BcRatioReport {
    pub seed: u64,
    pub precision_bits: u32,
    pub tolerance: f64,
    pub rows: Vec<BcRatioRow>,
    pub max_deviation: f64,
    pub passed: bool,
}
