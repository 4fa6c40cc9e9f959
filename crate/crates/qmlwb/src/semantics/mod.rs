//! Finite constant-domain Kripke models and the desk-scale verification
//! machinery: a direct evaluator for modal formulas, an independent
//! set-theoretic evaluator for expanded STT terms over full finite function
//! spaces, frame-property checks, and exhaustive bounded countermodel search.

mod eval;
mod search;

pub use eval::{
    check_property, eval_direct, eval_meta, eval_set, eval_stt, eval_stt_at_world, frame_valid,
    EvalError, SttEnv, Value,
};
pub use search::find_countermodel;

use serde::Serialize;

use crate::syntax::RelExpr;

/// Upper bound on the size of any enumerated carrier set in the STT
/// evaluator (full function spaces grow fast).
pub const CARRIER_CAP: u64 = 1 << 20;

/// A finite constant-domain multimodal Kripke model.
///
/// Worlds are `0..n_worlds` and individuals `0..n_domain`. A relation is a
/// bitmask with bit `w * n_worlds + v` set iff `w` sees `v`; a proposition
/// is a bitmask of worlds. Functor applications such as `wife(peter)` are
/// interpreted through their canonical key, like any other relation symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub n_worlds: usize,
    pub n_domain: usize,
    pub rels: Vec<(String, u64)>,
    pub props: Vec<(String, u64)>,
    pub preds: Vec<PredInterp>,
    pub ind_consts: Vec<(String, usize)>,
}

/// Interpretation of one predicate constant: for every argument tuple
/// (mixed-radix encoded over the domain) the set of worlds where it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredInterp {
    pub name: String,
    pub arity: usize,
    pub table: Vec<u64>,
}

impl KripkeModel {
    /// A model with the given carrier sizes and no interpreted symbols.
    pub fn empty(n_worlds: usize, n_domain: usize) -> Self {
        assert!(n_worlds >= 1 && n_domain >= 1, "carriers must be nonempty");
        assert!(n_worlds <= 8, "relation bitmasks support at most 8 worlds");
        KripkeModel {
            n_worlds,
            n_domain,
            rels: Vec::new(),
            props: Vec::new(),
            preds: Vec::new(),
            ind_consts: Vec::new(),
        }
    }

    pub fn full_world_mask(&self) -> u64 {
        (1u64 << self.n_worlds) - 1
    }

    pub fn relation(&self, key: &str) -> Option<u64> {
        self.rels
            .iter()
            .find(|(n, _)| n == key)
            .map(|(_, m)| *m)
    }

    pub fn set_relation(&mut self, key: impl Into<String>, mask: u64) {
        let key = key.into();
        if let Some(slot) = self.rels.iter_mut().find(|(n, _)| *n == key) {
            slot.1 = mask;
        } else {
            self.rels.push((key, mask));
        }
    }

    pub fn proposition(&self, name: &str) -> Option<u64> {
        self.props
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| *m)
    }

    pub fn set_proposition(&mut self, name: impl Into<String>, mask: u64) {
        let name = name.into();
        if let Some(slot) = self.props.iter_mut().find(|(n, _)| *n == name) {
            slot.1 = mask;
        } else {
            self.props.push((name, mask));
        }
    }

    pub fn predicate(&self, name: &str) -> Option<&PredInterp> {
        self.preds.iter().find(|p| p.name == name)
    }

    pub fn ind_const(&self, name: &str) -> Option<usize> {
        self.ind_consts
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    /// Successor set of `w` under a relation mask.
    #[inline]
    pub fn row(&self, rel: u64, w: usize) -> u64 {
        (rel >> (w * self.n_worlds)) & self.full_world_mask()
    }

    /// Serializable witness document with a stable field order.
    pub fn witness_doc(&self) -> WitnessDoc {
        let world = |w: usize| format!("w{w}");
        let ind = |i: usize| format!("d{i}");
        WitnessDoc {
            worlds: (0..self.n_worlds).map(world).collect(),
            domain: (0..self.n_domain).map(ind).collect(),
            relations: self
                .rels
                .iter()
                .map(|(name, mask)| {
                    let mut pairs = Vec::new();
                    for w in 0..self.n_worlds {
                        for v in 0..self.n_worlds {
                            if mask >> (w * self.n_worlds + v) & 1 == 1 {
                                pairs.push([world(w), world(v)]);
                            }
                        }
                    }
                    (name.clone(), pairs)
                })
                .collect(),
            propositions: self
                .props
                .iter()
                .map(|(name, mask)| {
                    let worlds = (0..self.n_worlds)
                        .filter(|w| mask >> w & 1 == 1)
                        .map(world)
                        .collect();
                    (name.clone(), worlds)
                })
                .collect(),
            predicates: self
                .preds
                .iter()
                .map(|p| {
                    let entries = p
                        .table
                        .iter()
                        .enumerate()
                        .map(|(idx, mask)| {
                            let mut args = Vec::new();
                            let mut rest = idx;
                            for _ in 0..p.arity {
                                args.push(ind(rest % self.n_domain));
                                rest /= self.n_domain;
                            }
                            PredEntry {
                                args,
                                worlds: (0..self.n_worlds)
                                    .filter(|w| mask >> w & 1 == 1)
                                    .map(world)
                                    .collect(),
                            }
                        })
                        .collect();
                    (p.name.clone(), entries)
                })
                .collect(),
            individual_constants: self
                .ind_consts
                .iter()
                .map(|(name, v)| (name.clone(), ind(*v)))
                .collect(),
        }
    }
}

/// JSON form of a witness model.
#[derive(Debug, Serialize)]
pub struct WitnessDoc {
    pub worlds: Vec<String>,
    pub domain: Vec<String>,
    pub relations: Vec<(String, Vec<[String; 2]>)>,
    pub propositions: Vec<(String, Vec<String>)>,
    pub predicates: Vec<(String, Vec<PredEntry>)>,
    pub individual_constants: Vec<(String, String)>,
}

#[derive(Debug, Serialize)]
pub struct PredEntry {
    pub args: Vec<String>,
    pub worlds: Vec<String>,
}

/// Variable assignment: individual variables to domain elements,
/// propositional variables to world sets, relation variables to relations.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    pub ind: Vec<(String, usize)>,
    pub prop: Vec<(String, u64)>,
    pub rel: Vec<(String, u64)>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lookup_ind(&self, name: &str) -> Option<usize> {
        self.ind
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn lookup_prop(&self, name: &str) -> Option<u64> {
        self.prop
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn lookup_rel(&self, name: &str) -> Option<u64> {
        self.rel
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }
}

/// Bounds for exhaustive model search. Enumeration is lexicographic over
/// `(worlds, domain, relation masks, proposition masks, predicate tables,
/// individual constants)`, each component ascending, so the first witness
/// found is the least one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub max_domain: usize,
    /// Upper bound on the number of candidate models per carrier size;
    /// exceeding it aborts the search with `Unknown`.
    pub budget: u128,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_worlds: 3,
            max_domain: 2,
            budget: 200_000_000,
        }
    }
}

impl SearchBounds {
    pub fn new(max_worlds: usize, max_domain: usize) -> Self {
        SearchBounds {
            max_worlds,
            max_domain,
            ..Default::default()
        }
    }
}

/// Verdict of the bounded search. A bounded sweep refutes conjectures
/// soundly but only gathers evidence for validity, so the positive verdict
/// is `ValidUpToBound`, never "theorem".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    ValidUpToBound { max_worlds: usize, max_domain: usize },
    CounterSatisfiable { model: KripkeModel, witness_world: Option<usize> },
    Satisfiable { model: KripkeModel },
    Unknown { reason: String },
}

impl Classification {
    pub fn kind(&self) -> ClassKind {
        match self {
            Classification::ValidUpToBound { .. } => ClassKind::ValidUpToBound,
            Classification::CounterSatisfiable { .. } => ClassKind::CounterSatisfiable,
            Classification::Satisfiable { .. } => ClassKind::Satisfiable,
            Classification::Unknown { .. } => ClassKind::Unknown,
        }
    }
}

/// Classification without the witness payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    ValidUpToBound,
    CounterSatisfiable,
    Satisfiable,
    Unknown,
}

impl std::fmt::Display for ClassKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassKind::ValidUpToBound => write!(f, "ValidUpToBound"),
            ClassKind::CounterSatisfiable => write!(f, "CounterSatisfiable"),
            ClassKind::Satisfiable => write!(f, "Satisfiable"),
            ClassKind::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Canonical interpretation key of a relation expression (resolving functor
/// applications like `wife(peter)` to their key).
pub fn rel_key(r: &RelExpr) -> String {
    r.key()
}
