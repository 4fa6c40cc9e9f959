//! Surface syntax of quantified multimodal logic: modal formulas, relation
//! expressions, meta-level statements, signatures and problem files.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// An argument of a predicate atom: an individual variable or constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndArg {
    Var(String),
    Const(String),
}

impl IndArg {
    pub fn name(&self) -> &str {
        match self {
            IndArg::Var(n) | IndArg::Const(n) => n,
        }
    }
}

/// An accessibility relation expression: a constant, a bound relation
/// variable, or a functor application such as `wife(peter)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelExpr {
    Const(String),
    Var(String),
    Applied(String, Box<RelExpr>),
}

impl RelExpr {
    pub fn applied(functor: impl Into<String>, arg: RelExpr) -> RelExpr {
        RelExpr::Applied(functor.into(), Box::new(arg))
    }

    /// Canonical name used as an interpretation key, e.g. `wife(peter)`.
    pub fn key(&self) -> String {
        match self {
            RelExpr::Const(n) | RelExpr::Var(n) => n.clone(),
            RelExpr::Applied(f, a) => format!("{}({})", f, a.key()),
        }
    }

    /// Name flattened for use in THF formula labels, e.g. `wife_peter`.
    pub fn flat_name(&self) -> String {
        match self {
            RelExpr::Const(n) | RelExpr::Var(n) => n.clone(),
            RelExpr::Applied(f, a) => format!("{}_{}", f, a.flat_name()),
        }
    }

    pub fn contains_var(&self) -> bool {
        match self {
            RelExpr::Const(_) => false,
            RelExpr::Var(_) => true,
            RelExpr::Applied(_, a) => a.contains_var(),
        }
    }
}

/// A formula of quantified multimodal logic.
///
/// Core connectives are `PropVar`, `PropConst`, `Atom`, `Not`, `Or`, `Box`,
/// `ForallInd`, `ForallProp` and `Top` — everything [`desugar`] leaves
/// behind. The remaining variants are definable sugar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModalFormula {
    PropVar(String),
    PropConst(String),
    Atom(String, Vec<IndArg>),
    Not(Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Box(RelExpr, Box<ModalFormula>),
    ForallInd(String, Box<ModalFormula>),
    ForallProp(String, Box<ModalFormula>),
    Top,
    // sugar
    Bot,
    And(Box<ModalFormula>, Box<ModalFormula>),
    Impl(Box<ModalFormula>, Box<ModalFormula>),
    Iff(Box<ModalFormula>, Box<ModalFormula>),
    Dia(RelExpr, Box<ModalFormula>),
    ExistsInd(String, Box<ModalFormula>),
    ExistsProp(String, Box<ModalFormula>),
}

impl ModalFormula {
    pub fn not(f: ModalFormula) -> ModalFormula {
        ModalFormula::Not(Box::new(f))
    }
    pub fn or(a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::Or(Box::new(a), Box::new(b))
    }
    pub fn and(a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::And(Box::new(a), Box::new(b))
    }
    pub fn impl_(a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::Impl(Box::new(a), Box::new(b))
    }
    pub fn iff(a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::Iff(Box::new(a), Box::new(b))
    }
    pub fn boxed(r: RelExpr, f: ModalFormula) -> ModalFormula {
        ModalFormula::Box(r, Box::new(f))
    }
    pub fn dia(r: RelExpr, f: ModalFormula) -> ModalFormula {
        ModalFormula::Dia(r, Box::new(f))
    }
    pub fn forall_ind(x: impl Into<String>, f: ModalFormula) -> ModalFormula {
        ModalFormula::ForallInd(x.into(), Box::new(f))
    }
    pub fn forall_prop(p: impl Into<String>, f: ModalFormula) -> ModalFormula {
        ModalFormula::ForallProp(p.into(), Box::new(f))
    }
    pub fn exists_ind(x: impl Into<String>, f: ModalFormula) -> ModalFormula {
        ModalFormula::ExistsInd(x.into(), Box::new(f))
    }
    pub fn exists_prop(p: impl Into<String>, f: ModalFormula) -> ModalFormula {
        ModalFormula::ExistsProp(p.into(), Box::new(f))
    }

    /// True if only core connectives occur.
    pub fn is_core(&self) -> bool {
        use ModalFormula::*;
        match self {
            PropVar(_) | PropConst(_) | Atom(..) | Top => true,
            Not(a) => a.is_core(),
            Or(a, b) => a.is_core() && b.is_core(),
            Box(_, a) | ForallInd(_, a) | ForallProp(_, a) => a.is_core(),
            _ => false,
        }
    }
}

/// Unfolds all defined connectives: `A & B` to `~(~A | ~B)`, `A => B` to
/// `~A | B`, `<=>` to the conjunction of both implications, `dia` to
/// `~ box ~`, existentials to negated universals, `bot` to `~ top`.
/// `top` stays primitive; it translates to `mtrue`.
pub fn desugar(f: &ModalFormula) -> ModalFormula {
    use ModalFormula::*;
    match f {
        PropVar(_) | PropConst(_) | Atom(..) | Top => f.clone(),
        Not(a) => ModalFormula::not(desugar(a)),
        Or(a, b) => ModalFormula::or(desugar(a), desugar(b)),
        Box(r, a) => ModalFormula::boxed(r.clone(), desugar(a)),
        ForallInd(x, a) => ModalFormula::forall_ind(x.clone(), desugar(a)),
        ForallProp(p, a) => ModalFormula::forall_prop(p.clone(), desugar(a)),
        Bot => ModalFormula::not(Top),
        And(a, b) => ModalFormula::not(ModalFormula::or(
            ModalFormula::not(desugar(a)),
            ModalFormula::not(desugar(b)),
        )),
        Impl(a, b) => ModalFormula::or(ModalFormula::not(desugar(a)), desugar(b)),
        Iff(a, b) => desugar(&ModalFormula::and(
            ModalFormula::impl_(a.as_ref().clone(), b.as_ref().clone()),
            ModalFormula::impl_(b.as_ref().clone(), a.as_ref().clone()),
        )),
        Dia(r, a) => ModalFormula::not(ModalFormula::boxed(
            r.clone(),
            ModalFormula::not(desugar(a)),
        )),
        ExistsInd(x, a) => ModalFormula::not(ModalFormula::forall_ind(
            x.clone(),
            ModalFormula::not(desugar(a)),
        )),
        ExistsProp(p, a) => ModalFormula::not(ModalFormula::forall_prop(
            p.clone(),
            ModalFormula::not(desugar(a)),
        )),
    }
}

fn rel_symbols(r: &RelExpr, bound: &[String], out: &mut BTreeSet<String>) {
    match r {
        RelExpr::Const(n) => {
            out.insert(n.clone());
        }
        RelExpr::Var(n) => {
            if !bound.contains(n) {
                out.insert(n.clone());
            }
        }
        RelExpr::Applied(f, a) => {
            out.insert(f.clone());
            rel_symbols(a, bound, out);
        }
    }
}

/// The free symbols of a formula: signature constants plus unbound
/// variables of any kind.
pub fn free_symbols(f: &ModalFormula) -> BTreeSet<String> {
    fn go(f: &ModalFormula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        use ModalFormula::*;
        match f {
            PropVar(p) => {
                if !bound.contains(p) {
                    out.insert(p.clone());
                }
            }
            PropConst(c) => {
                out.insert(c.clone());
            }
            Atom(k, args) => {
                out.insert(k.clone());
                for a in args {
                    match a {
                        IndArg::Var(x) => {
                            if !bound.contains(x) {
                                out.insert(x.clone());
                            }
                        }
                        IndArg::Const(c) => {
                            out.insert(c.clone());
                        }
                    }
                }
            }
            Top | Bot => {}
            Not(a) => go(a, bound, out),
            Or(a, b) | And(a, b) | Impl(a, b) | Iff(a, b) => {
                go(a, bound, out);
                go(b, bound, out);
            }
            Box(r, a) | Dia(r, a) => {
                rel_symbols(r, bound, out);
                go(a, bound, out);
            }
            ForallInd(x, a) | ForallProp(x, a) | ExistsInd(x, a) | ExistsProp(x, a) => {
                bound.push(x.clone());
                go(a, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(f, &mut Vec::new(), &mut out);
    out
}

/// The ten first-order frame conditions the workbench knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyName {
    Reflexive,
    Symmetric,
    Serial,
    Transitive,
    Euclidean,
    PartiallyFunctional,
    Functional,
    WeaklyDense,
    WeaklyConnected,
    WeaklyDirected,
}

impl PropertyName {
    pub const ALL: [PropertyName; 10] = [
        PropertyName::Reflexive,
        PropertyName::Symmetric,
        PropertyName::Serial,
        PropertyName::Transitive,
        PropertyName::Euclidean,
        PropertyName::PartiallyFunctional,
        PropertyName::Functional,
        PropertyName::WeaklyDense,
        PropertyName::WeaklyConnected,
        PropertyName::WeaklyDirected,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PropertyName::Reflexive => "reflexive",
            PropertyName::Symmetric => "symmetric",
            PropertyName::Serial => "serial",
            PropertyName::Transitive => "transitive",
            PropertyName::Euclidean => "euclidean",
            PropertyName::PartiallyFunctional => "partially_functional",
            PropertyName::Functional => "functional",
            PropertyName::WeaklyDense => "weakly_dense",
            PropertyName::WeaklyConnected => "weakly_connected",
            PropertyName::WeaklyDirected => "weakly_directed",
        }
    }
}

impl fmt::Display for PropertyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A meta-level statement: validity claims, frame conditions, boolean
/// combinations and quantification over accessibility relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetaFormula {
    Valid(ModalFormula),
    HasProperty(PropertyName, RelExpr),
    /// The two relations are mutually inverse: `r1 S T <=> r2 T S`.
    Inverse(RelExpr, RelExpr),
    Not(Box<MetaFormula>),
    And(Box<MetaFormula>, Box<MetaFormula>),
    Or(Box<MetaFormula>, Box<MetaFormula>),
    Implies(Box<MetaFormula>, Box<MetaFormula>),
    Iff(Box<MetaFormula>, Box<MetaFormula>),
    ExistsRel(String, Box<MetaFormula>),
    ForallRel(String, Box<MetaFormula>),
}

impl MetaFormula {
    pub fn not(m: MetaFormula) -> MetaFormula {
        MetaFormula::Not(Box::new(m))
    }
    pub fn and(a: MetaFormula, b: MetaFormula) -> MetaFormula {
        MetaFormula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: MetaFormula, b: MetaFormula) -> MetaFormula {
        MetaFormula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: MetaFormula, b: MetaFormula) -> MetaFormula {
        MetaFormula::Implies(Box::new(a), Box::new(b))
    }
    pub fn iff(a: MetaFormula, b: MetaFormula) -> MetaFormula {
        MetaFormula::Iff(Box::new(a), Box::new(b))
    }
    pub fn exists_rel(r: impl Into<String>, m: MetaFormula) -> MetaFormula {
        MetaFormula::ExistsRel(r.into(), Box::new(m))
    }
    pub fn forall_rel(r: impl Into<String>, m: MetaFormula) -> MetaFormula {
        MetaFormula::ForallRel(r.into(), Box::new(m))
    }
}

/// Free symbols of a meta formula.
pub fn meta_free_symbols(m: &MetaFormula) -> BTreeSet<String> {
    fn go(m: &MetaFormula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match m {
            MetaFormula::Valid(f) => {
                for s in free_symbols(f) {
                    if !bound.contains(&s) {
                        out.insert(s);
                    }
                }
            }
            MetaFormula::HasProperty(_, r) => rel_symbols(r, bound, out),
            MetaFormula::Inverse(r1, r2) => {
                rel_symbols(r1, bound, out);
                rel_symbols(r2, bound, out);
            }
            MetaFormula::Not(a) => go(a, bound, out),
            MetaFormula::And(a, b)
            | MetaFormula::Or(a, b)
            | MetaFormula::Implies(a, b)
            | MetaFormula::Iff(a, b) => {
                go(a, bound, out);
                go(b, bound, out);
            }
            MetaFormula::ExistsRel(r, a) | MetaFormula::ForallRel(r, a) => {
                bound.push(r.clone());
                go(a, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(m, &mut Vec::new(), &mut out);
    out
}

/// Functor applications with concrete arguments occurring in a meta formula;
/// each one (like `wife(peter)`) needs its own interpretation in a model.
pub fn applied_rel_keys(m: &MetaFormula) -> BTreeSet<RelExpr> {
    fn from_rel(r: &RelExpr, out: &mut BTreeSet<RelExpr>) {
        if let RelExpr::Applied(_, a) = r {
            if !r.contains_var() {
                out.insert(r.clone());
            }
            from_rel(a, out);
        }
    }
    fn from_modal(f: &ModalFormula, out: &mut BTreeSet<RelExpr>) {
        use ModalFormula::*;
        match f {
            Box(r, a) | Dia(r, a) => {
                from_rel(r, out);
                from_modal(a, out);
            }
            Not(a) | ForallInd(_, a) | ForallProp(_, a) | ExistsInd(_, a) | ExistsProp(_, a) => {
                from_modal(a, out)
            }
            Or(a, b) | And(a, b) | Impl(a, b) | Iff(a, b) => {
                from_modal(a, out);
                from_modal(b, out);
            }
            _ => {}
        }
    }
    fn go(m: &MetaFormula, out: &mut BTreeSet<RelExpr>) {
        match m {
            MetaFormula::Valid(f) => from_modal(f, out),
            MetaFormula::HasProperty(_, r) => from_rel(r, out),
            MetaFormula::Inverse(r1, r2) => {
                from_rel(r1, out);
                from_rel(r2, out);
            }
            MetaFormula::Not(a) => go(a, out),
            MetaFormula::And(a, b)
            | MetaFormula::Or(a, b)
            | MetaFormula::Implies(a, b)
            | MetaFormula::Iff(a, b) => {
                go(a, out);
                go(b, out);
            }
            MetaFormula::ExistsRel(_, a) | MetaFormula::ForallRel(_, a) => go(a, out),
        }
    }
    let mut out = BTreeSet::new();
    go(m, &mut out);
    out
}

/// Declared vocabulary of a problem. Insertion order is preserved because
/// THF output declares symbols in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub relations: Vec<String>,
    pub rel_functors: Vec<String>,
    pub predicates: Vec<(String, usize)>,
    pub prop_consts: Vec<String>,
    pub ind_consts: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("duplicate symbol `{0}`")]
pub struct DuplicateName(pub String);

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    fn check_fresh(&self, name: &str) -> Result<(), DuplicateName> {
        if self.contains(name) {
            Err(DuplicateName(name.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.relations.iter().any(|n| n == name)
            || self.rel_functors.iter().any(|n| n == name)
            || self.predicates.iter().any(|(n, _)| n == name)
            || self.prop_consts.iter().any(|n| n == name)
            || self.ind_consts.iter().any(|n| n == name)
    }

    pub fn add_relation(&mut self, name: impl Into<String>) -> Result<(), DuplicateName> {
        let name = name.into();
        self.check_fresh(&name)?;
        self.relations.push(name);
        Ok(())
    }

    pub fn add_rel_functor(&mut self, name: impl Into<String>) -> Result<(), DuplicateName> {
        let name = name.into();
        self.check_fresh(&name)?;
        self.rel_functors.push(name);
        Ok(())
    }

    pub fn add_predicate(
        &mut self,
        name: impl Into<String>,
        arity: usize,
    ) -> Result<(), DuplicateName> {
        let name = name.into();
        self.check_fresh(&name)?;
        self.predicates.push((name, arity));
        Ok(())
    }

    pub fn add_prop_const(&mut self, name: impl Into<String>) -> Result<(), DuplicateName> {
        let name = name.into();
        self.check_fresh(&name)?;
        self.prop_consts.push(name);
        Ok(())
    }

    pub fn add_ind_const(&mut self, name: impl Into<String>) -> Result<(), DuplicateName> {
        let name = name.into();
        self.check_fresh(&name)?;
        self.ind_consts.push(name);
        Ok(())
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| *a)
    }

    pub fn is_relation(&self, name: &str) -> bool {
        self.relations.iter().any(|n| n == name)
    }

    pub fn is_rel_functor(&self, name: &str) -> bool {
        self.rel_functors.iter().any(|n| n == name)
    }

    pub fn is_prop_const(&self, name: &str) -> bool {
        self.prop_consts.iter().any(|n| n == name)
    }

    pub fn is_ind_const(&self, name: &str) -> bool {
        self.ind_consts.iter().any(|n| n == name)
    }
}

/// Expected classification recorded in a problem file (`expect theorem.`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Theorem,
    CounterSatisfiable,
    Unknown,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Theorem => write!(f, "theorem"),
            Expectation::CounterSatisfiable => write!(f, "csa"),
            Expectation::Unknown => write!(f, "unknown"),
        }
    }
}

/// A parsed problem: vocabulary, axioms and an optional conjecture.
/// A file without a conjecture poses a satisfiability question about its
/// axioms (and cannot be emitted as a THF proof problem).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub name: String,
    pub signature: Signature,
    pub frame_axioms: Vec<(PropertyName, RelExpr)>,
    pub modal_axioms: Vec<ModalFormula>,
    pub meta_axioms: Vec<MetaFormula>,
    pub conjecture: Option<MetaFormula>,
    pub expected: Option<Expectation>,
}

impl ProblemFile {
    pub fn new(name: impl Into<String>) -> Self {
        ProblemFile {
            name: name.into(),
            signature: Signature::new(),
            frame_axioms: Vec::new(),
            modal_axioms: Vec::new(),
            meta_axioms: Vec::new(),
            conjecture: None,
            expected: None,
        }
    }

    /// All functor applications (like `wife(peter)`) that the problem
    /// mentions with concrete arguments.
    pub fn applied_relations(&self) -> BTreeSet<RelExpr> {
        let mut out = BTreeSet::new();
        for (_, r) in &self.frame_axioms {
            out.extend(applied_rel_keys(&MetaFormula::HasProperty(
                PropertyName::Reflexive,
                r.clone(),
            )));
        }
        for f in &self.modal_axioms {
            out.extend(applied_rel_keys(&MetaFormula::Valid(f.clone())));
        }
        for m in &self.meta_axioms {
            out.extend(applied_rel_keys(m));
        }
        if let Some(c) = &self.conjecture {
            out.extend(applied_rel_keys(c));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Printing back to the problem-file syntax
// ---------------------------------------------------------------------------

pub fn print_rel(r: &RelExpr) -> String {
    match r {
        RelExpr::Const(n) | RelExpr::Var(n) => n.clone(),
        RelExpr::Applied(f, a) => format!("({} {})", f, print_rel(a)),
    }
}

pub fn print_modal(f: &ModalFormula) -> String {
    use ModalFormula::*;
    match f {
        PropVar(p) => p.clone(),
        PropConst(c) => c.clone(),
        Atom(k, args) => {
            let mut s = format!("({}", k);
            for a in args {
                s.push(' ');
                s.push_str(a.name());
            }
            s.push(')');
            s
        }
        Top => "top".to_string(),
        Bot => "bot".to_string(),
        Not(a) => format!("(~ {})", print_modal(a)),
        Or(a, b) => format!("(| {} {})", print_modal(a), print_modal(b)),
        And(a, b) => format!("(& {} {})", print_modal(a), print_modal(b)),
        Impl(a, b) => format!("(=> {} {})", print_modal(a), print_modal(b)),
        Iff(a, b) => format!("(<=> {} {})", print_modal(a), print_modal(b)),
        Box(r, a) => format!("(box {} {})", print_rel(r), print_modal(a)),
        Dia(r, a) => format!("(dia {} {})", print_rel(r), print_modal(a)),
        ForallInd(x, a) => format!("(forall_ind {}. {})", x, print_modal(a)),
        ExistsInd(x, a) => format!("(exists_ind {}. {})", x, print_modal(a)),
        ForallProp(p, a) => format!("(forall_prop {}. {})", p, print_modal(a)),
        ExistsProp(p, a) => format!("(exists_prop {}. {})", p, print_modal(a)),
    }
}

pub fn print_meta(m: &MetaFormula) -> String {
    match m {
        MetaFormula::Valid(f) => format!("valid {}", print_modal(f)),
        MetaFormula::HasProperty(p, r) => format!("{} {}", p, print_rel(r)),
        MetaFormula::Inverse(r1, r2) => {
            format!("inverse {} {}", print_rel(r1), print_rel(r2))
        }
        MetaFormula::Not(a) => format!("~ ({})", print_meta(a)),
        MetaFormula::And(a, b) => format!("& ({}) ({})", print_meta(a), print_meta(b)),
        MetaFormula::Or(a, b) => format!("| ({}) ({})", print_meta(a), print_meta(b)),
        MetaFormula::Implies(a, b) => format!("=> ({}) ({})", print_meta(a), print_meta(b)),
        MetaFormula::Iff(a, b) => format!("<=> ({}) ({})", print_meta(a), print_meta(b)),
        MetaFormula::ExistsRel(r, a) => format!("exists {}. {}", r, print_meta(a)),
        MetaFormula::ForallRel(r, a) => format!("forall {}. {}", r, print_meta(a)),
    }
}

/// Renders a problem back into the `.qml` file syntax. Parsing the output
/// yields a structurally identical problem.
pub fn print_problem(p: &ProblemFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("problem {}.\n", p.name));
    for r in &p.signature.relations {
        out.push_str(&format!("relation {}.\n", r));
    }
    for f in &p.signature.rel_functors {
        out.push_str(&format!("relfun {}.\n", f));
    }
    for (k, a) in &p.signature.predicates {
        out.push_str(&format!("pred {}/{}.\n", k, a));
    }
    for c in &p.signature.prop_consts {
        out.push_str(&format!("propconst {}.\n", c));
    }
    for c in &p.signature.ind_consts {
        out.push_str(&format!("indconst {}.\n", c));
    }
    for (prop, rel) in &p.frame_axioms {
        out.push_str(&format!("frame {} {}.\n", prop, print_rel(rel)));
    }
    for f in &p.modal_axioms {
        out.push_str(&format!("axiom {}.\n", print_modal(f)));
    }
    for m in &p.meta_axioms {
        out.push_str(&format!("meta {}.\n", print_meta(m)));
    }
    if let Some(c) = &p.conjecture {
        out.push_str(&format!("conjecture {}.\n", print_meta(c)));
    }
    if let Some(e) = &p.expected {
        out.push_str(&format!("expect {}.\n", e));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: &str) -> RelExpr {
        RelExpr::Const(n.to_string())
    }

    #[test]
    fn desugar_dia() {
        let f = ModalFormula::dia(rel("r"), ModalFormula::PropVar("A".into()));
        let d = desugar(&f);
        assert_eq!(
            d,
            ModalFormula::not(ModalFormula::boxed(
                rel("r"),
                ModalFormula::not(ModalFormula::PropVar("A".into()))
            ))
        );
        assert!(d.is_core());
    }

    #[test]
    fn desugar_impl() {
        let f = ModalFormula::impl_(
            ModalFormula::PropVar("A".into()),
            ModalFormula::PropVar("B".into()),
        );
        assert_eq!(
            desugar(&f),
            ModalFormula::or(
                ModalFormula::not(ModalFormula::PropVar("A".into())),
                ModalFormula::PropVar("B".into())
            )
        );
    }

    #[test]
    fn desugar_exists_prop() {
        let f = ModalFormula::exists_prop("P", ModalFormula::PropVar("P".into()));
        assert_eq!(
            desugar(&f),
            ModalFormula::not(ModalFormula::forall_prop(
                "P",
                ModalFormula::not(ModalFormula::PropVar("P".into()))
            ))
        );
    }

    #[test]
    fn desugar_is_idempotent_and_preserves_free_symbols() {
        let f = ModalFormula::iff(
            ModalFormula::dia(rel("r"), ModalFormula::PropConst("p".into())),
            ModalFormula::exists_ind(
                "X",
                ModalFormula::Atom("k".into(), vec![IndArg::Var("X".into())]),
            ),
        );
        let once = desugar(&f);
        assert_eq!(desugar(&once), once);
        assert_eq!(free_symbols(&f), free_symbols(&once));
        assert!(once.is_core());
    }

    #[test]
    fn free_symbols_examples() {
        let f = ModalFormula::boxed(rel("r"), ModalFormula::PropVar("A".into()));
        let syms = free_symbols(&f);
        assert!(syms.contains("r") && syms.contains("A"));

        let g = ModalFormula::forall_prop("A", ModalFormula::PropVar("A".into()));
        assert!(free_symbols(&g).is_empty());

        let h = ModalFormula::forall_ind(
            "X",
            ModalFormula::Atom("k".into(), vec![IndArg::Var("X".into())]),
        );
        assert_eq!(
            free_symbols(&h).into_iter().collect::<Vec<_>>(),
            vec!["k".to_string()]
        );
    }

    #[test]
    fn applied_relation_keys() {
        let wife_peter = RelExpr::applied("wife", rel("peter"));
        assert_eq!(wife_peter.key(), "wife(peter)");
        assert_eq!(wife_peter.flat_name(), "wife_peter");

        let m = MetaFormula::Valid(ModalFormula::boxed(
            wife_peter.clone(),
            ModalFormula::PropConst("time".into()),
        ));
        let keys = applied_rel_keys(&m);
        assert_eq!(keys.len(), 1);
        assert!(keys.contains(&wife_peter));
    }

    #[test]
    fn signature_rejects_duplicates() {
        let mut sig = Signature::new();
        sig.add_relation("r").unwrap();
        assert!(sig.add_relation("r").is_err());
        assert!(sig.add_prop_const("r").is_err());
        sig.add_predicate("k", 2).unwrap();
        assert_eq!(sig.predicate_arity("k"), Some(2));
    }
}
