use std::collections::BTreeMap;

use serde::Deserialize;

/// A scenario document. Every section except `space` and `checks` is
/// optional; each check names the sections it needs.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: Option<String>,
    pub description: Option<String>,
    pub space: Option<Space>,
    /// Poisson matrix `π^{ij}` as expression strings.
    pub poisson: Option<Vec<Vec<String>>>,
    pub star: Option<StarSpec>,
    pub lie: Option<LieSpec>,
    pub quantum: Option<QuantumSpec>,
    /// Classical action `φ(e_i)`: vector-field components per generator.
    pub action: Option<BTreeMap<String, Vec<String>>>,
    /// One-forms `α_{e_i}`: components per generator.
    pub forms: Option<BTreeMap<String, Vec<String>>>,
    /// Momentum components `J(e_i)`.
    pub momentum: Option<BTreeMap<String, String>>,
    pub hamiltonians: Option<Vec<String>>,
    /// `(a, b)` pairs per generator.
    pub quantum_action: Option<BTreeMap<String, Vec<PairSpec>>>,
    pub expect: Option<ExpectSpec>,
    pub samples: Option<SampleSpec>,
    pub checks: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Space {
    pub variables: Vec<String>,
    pub order: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarSpec {
    /// `moyal`, `explicit` or `gutt`.
    pub kind: String,
    /// Moyal matrix; defaults to the (constant) Poisson matrix.
    pub matrix: Option<Vec<Vec<String>>>,
    /// Explicit `P_1, P_2, ...`, each a list of terms.
    pub operators: Option<Vec<Vec<TermSpec>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSpec {
    pub basis: Vec<String>,
    /// `"a,b": "[a,b]"`.
    #[serde(default)]
    pub brackets: BTreeMap<String, String>,
    /// `"a": {"b,c": "coefficient of b∧c in δ(a)"}`.
    #[serde(default)]
    pub cobracket: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumSpec {
    /// `"a,b": "[a,b]"` in PBW order; defaults to the Lie brackets.
    pub relations: Option<BTreeMap<String, String>>,
    /// `"a": "Δ(a)"` with `(x)` as the tensor separator.
    pub coproduct: Option<BTreeMap<String, String>>,
    /// `"a": "ε(a)"`; defaults to zero.
    #[serde(default)]
    pub counit: BTreeMap<String, String>,
    /// PBW degree bound for coassociativity and counit checks.
    pub max_degree: Option<u32>,
    /// Tensor-word length bound for the square-zero check.
    pub max_length: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub a: Operand,
    pub b: Operand,
}

/// An `h`-expression, or the star inverse of one.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Operand {
    Expr(String),
    Inverse { star_inverse: String },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectSpec {
    #[serde(default)]
    pub actions: Vec<ActionValue>,
    #[serde(default)]
    pub higher_actions: Vec<HigherValue>,
    #[serde(default)]
    pub star_commutators: Vec<CommutatorValue>,
    /// Expected order-zero fields per generator.
    #[serde(default)]
    pub semiclassical_limit: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionValue {
    pub generator: String,
    pub input: String,
    pub equals: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HigherValue {
    pub word: Vec<String>,
    pub inputs: Vec<String>,
    pub equals: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommutatorValue {
    pub left: String,
    pub right: String,
    pub equals: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSpec {
    pub functions: Option<Vec<String>>,
    pub pairs: Option<Vec<[String; 2]>>,
    pub triples: Option<Vec<[String; 3]>>,
    /// Degree bound for seeded triples (default 3).
    pub max_degree: Option<u32>,
    /// Number of seeded functions, pairs and triples (default 4).
    pub count: Option<usize>,
}
