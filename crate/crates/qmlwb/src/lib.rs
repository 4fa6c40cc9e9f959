//! Workbench for quantified multimodal logic (QML).
//!
//! QML formulas are embedded into simple type theory by mapping modal
//! propositions to predicates on possible worlds; the workbench parses QML
//! problem files, translates and normalizes the embedded terms, emits TPTP
//! THF0, and classifies conjectures by exhaustive search over finite
//! constant-domain Kripke models.

pub mod embed;
pub mod parser;
pub mod properties;
pub mod sampling;
pub mod semantics;
pub mod thf;
pub mod stt;
pub mod syntax;
