//! The embedding of quantified multimodal logic into simple type theory.
//!
//! Modal operators become λ-terms over propositions of type `mu > $o`:
//! `mnot` negates pointwise, `mbox` quantifies over accessible worlds,
//! `mall_ind` / `mall_prop` lift quantification, and `mvalid` closes a
//! proposition over all worlds. [`translate`] maps modal formulas onto these
//! operators; [`DefinitionTable::expand`] unfolds all of them and normalizes,
//! leaving only the basic connectives of the kernel.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::properties;
use crate::stt::{beta_eta_normalize, logic, SimpleType, SttTerm};
use crate::syntax::{
    desugar, IndArg, MetaFormula, ModalFormula, PropertyName, RelExpr, Signature,
};

/// Names of the designated temporal relation constants.
pub const PAST: &str = "past";
pub const FUTURE: &str = "future";

/// A named operator definition: `name = term : ty`.
#[derive(Clone, Debug)]
pub struct OperatorDef {
    pub name: String,
    pub ty: SimpleType,
    pub term: SttTerm,
}

/// The table of operator definitions, in dependency order: core modal
/// connectives, quantifiers, validity, the ten frame conditions, and the
/// temporal operators over `past`/`future`.
pub struct DefinitionTable {
    defs: Vec<OperatorDef>,
    expanded: BTreeMap<String, SttTerm>,
}

fn prop_ty() -> SimpleType {
    SimpleType::prop()
}

fn rel_ty() -> SimpleType {
    SimpleType::rel()
}

fn op(table: &DefinitionTable, name: &str) -> SttTerm {
    let ty = table
        .operator_type(name)
        .unwrap_or_else(|| panic!("operator {name} defined before use"))
        .clone();
    SttTerm::cnst(name, ty)
}

impl DefinitionTable {
    /// The standard table shared by the whole workbench.
    pub fn standard() -> &'static DefinitionTable {
        static TABLE: OnceLock<DefinitionTable> = OnceLock::new();
        TABLE.get_or_init(DefinitionTable::build)
    }

    fn build() -> DefinitionTable {
        let mut t = DefinitionTable {
            defs: Vec::new(),
            expanded: BTreeMap::new(),
        };

        let p = prop_ty();
        let r = rel_ty();
        let unop = SimpleType::fun(&[p.clone()], p.clone());
        let binop = SimpleType::fun(&[p.clone(), p.clone()], p.clone());
        let box_ty = SimpleType::fun(&[r.clone(), p.clone()], p.clone());

        // mnot = ^ Phi, W. ~ (Phi W)
        t.push(
            "mnot",
            unop.clone(),
            SttTerm::lams(
                &[("Phi", p.clone()), ("W", SimpleType::Mu)],
                SttTerm::neg(SttTerm::app(
                    SttTerm::var("Phi", p.clone()),
                    SttTerm::var("W", SimpleType::Mu),
                )),
            ),
        );

        // mor = ^ Phi, Psi, W. (Phi W) | (Psi W)
        t.push(
            "mor",
            binop.clone(),
            SttTerm::lams(
                &[("Phi", p.clone()), ("Psi", p.clone()), ("W", SimpleType::Mu)],
                SttTerm::disj(
                    SttTerm::app(
                        SttTerm::var("Phi", p.clone()),
                        SttTerm::var("W", SimpleType::Mu),
                    ),
                    SttTerm::app(
                        SttTerm::var("Psi", p.clone()),
                        SttTerm::var("W", SimpleType::Mu),
                    ),
                ),
            ),
        );

        // mand = ^ Phi, Psi. mnot (mor (mnot Phi) (mnot Psi))
        t.push(
            "mand",
            binop.clone(),
            SttTerm::lams(
                &[("Phi", p.clone()), ("Psi", p.clone())],
                SttTerm::app(
                    op(&t, "mnot"),
                    SttTerm::apps(
                        op(&t, "mor"),
                        [
                            SttTerm::app(op(&t, "mnot"), SttTerm::var("Phi", p.clone())),
                            SttTerm::app(op(&t, "mnot"), SttTerm::var("Psi", p.clone())),
                        ],
                    ),
                ),
            ),
        );

        // mimpl = ^ Phi, Psi. mor (mnot Phi) Psi
        t.push(
            "mimpl",
            binop.clone(),
            SttTerm::lams(
                &[("Phi", p.clone()), ("Psi", p.clone())],
                SttTerm::apps(
                    op(&t, "mor"),
                    [
                        SttTerm::app(op(&t, "mnot"), SttTerm::var("Phi", p.clone())),
                        SttTerm::var("Psi", p.clone()),
                    ],
                ),
            ),
        );

        // mequiv = ^ Phi, Psi. mand (mimpl Phi Psi) (mimpl Psi Phi)
        t.push(
            "mequiv",
            binop.clone(),
            SttTerm::lams(
                &[("Phi", p.clone()), ("Psi", p.clone())],
                SttTerm::apps(
                    op(&t, "mand"),
                    [
                        SttTerm::apps(
                            op(&t, "mimpl"),
                            [
                                SttTerm::var("Phi", p.clone()),
                                SttTerm::var("Psi", p.clone()),
                            ],
                        ),
                        SttTerm::apps(
                            op(&t, "mimpl"),
                            [
                                SttTerm::var("Psi", p.clone()),
                                SttTerm::var("Phi", p.clone()),
                            ],
                        ),
                    ],
                ),
            ),
        );

        // mtrue = ^ W. top  (top realized via equality)
        t.push(
            "mtrue",
            p.clone(),
            SttTerm::lam("W", SimpleType::Mu, SttTerm::truth()),
        );

        // mfalse = mnot mtrue
        t.push(
            "mfalse",
            p.clone(),
            SttTerm::app(op(&t, "mnot"), op(&t, "mtrue")),
        );

        // mbox = ^ R, Phi, W. ! V. ~ (R W V) | (Phi V)
        t.push(
            "mbox",
            box_ty.clone(),
            SttTerm::lams(
                &[("R", r.clone()), ("Phi", p.clone()), ("W", SimpleType::Mu)],
                SttTerm::forall(
                    "V",
                    SimpleType::Mu,
                    SttTerm::disj(
                        SttTerm::neg(SttTerm::apps(
                            SttTerm::var("R", r.clone()),
                            [
                                SttTerm::var("W", SimpleType::Mu),
                                SttTerm::var("V", SimpleType::Mu),
                            ],
                        )),
                        SttTerm::app(
                            SttTerm::var("Phi", p.clone()),
                            SttTerm::var("V", SimpleType::Mu),
                        ),
                    ),
                ),
            ),
        );

        // mdia = ^ R, Phi. mnot (mbox R (mnot Phi))
        t.push(
            "mdia",
            box_ty.clone(),
            SttTerm::lams(
                &[("R", r.clone()), ("Phi", p.clone())],
                SttTerm::app(
                    op(&t, "mnot"),
                    SttTerm::apps(
                        op(&t, "mbox"),
                        [
                            SttTerm::var("R", r.clone()),
                            SttTerm::app(op(&t, "mnot"), SttTerm::var("Phi", p.clone())),
                        ],
                    ),
                ),
            ),
        );

        let ind_body = SimpleType::arrow(SimpleType::Iota, p.clone());
        let all_ind_ty = SimpleType::arrow(ind_body.clone(), p.clone());

        // mall_ind = ^ Phi, W. ! X. Phi X W
        t.push(
            "mall_ind",
            all_ind_ty.clone(),
            SttTerm::lams(
                &[("Phi", ind_body.clone()), ("W", SimpleType::Mu)],
                SttTerm::forall(
                    "X",
                    SimpleType::Iota,
                    SttTerm::apps(
                        SttTerm::var("Phi", ind_body.clone()),
                        [
                            SttTerm::var("X", SimpleType::Iota),
                            SttTerm::var("W", SimpleType::Mu),
                        ],
                    ),
                ),
            ),
        );

        // mexi_ind = ^ Phi. mnot (mall_ind (^ X. mnot (Phi X)))
        t.push(
            "mexi_ind",
            all_ind_ty,
            SttTerm::lam(
                "Phi",
                ind_body.clone(),
                SttTerm::app(
                    op(&t, "mnot"),
                    SttTerm::app(
                        op(&t, "mall_ind"),
                        SttTerm::lam(
                            "X",
                            SimpleType::Iota,
                            SttTerm::app(
                                op(&t, "mnot"),
                                SttTerm::app(
                                    SttTerm::var("Phi", ind_body.clone()),
                                    SttTerm::var("X", SimpleType::Iota),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        );

        let prop_body = SimpleType::arrow(p.clone(), p.clone());
        let all_prop_ty = SimpleType::arrow(prop_body.clone(), p.clone());

        // mall_prop = ^ Phi, W. ! P. Phi P W
        t.push(
            "mall_prop",
            all_prop_ty.clone(),
            SttTerm::lams(
                &[("Phi", prop_body.clone()), ("W", SimpleType::Mu)],
                SttTerm::forall(
                    "P",
                    p.clone(),
                    SttTerm::apps(
                        SttTerm::var("Phi", prop_body.clone()),
                        [
                            SttTerm::var("P", p.clone()),
                            SttTerm::var("W", SimpleType::Mu),
                        ],
                    ),
                ),
            ),
        );

        // mexi_prop = ^ Phi. mnot (mall_prop (^ P. mnot (Phi P)))
        t.push(
            "mexi_prop",
            all_prop_ty,
            SttTerm::lam(
                "Phi",
                prop_body.clone(),
                SttTerm::app(
                    op(&t, "mnot"),
                    SttTerm::app(
                        op(&t, "mall_prop"),
                        SttTerm::lam(
                            "P",
                            p.clone(),
                            SttTerm::app(
                                op(&t, "mnot"),
                                SttTerm::app(
                                    SttTerm::var("Phi", prop_body.clone()),
                                    SttTerm::var("P", p.clone()),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        );

        // mvalid = ^ Phi. ! W. Phi W
        t.push(
            "mvalid",
            SimpleType::arrow(p.clone(), SimpleType::O),
            SttTerm::lam(
                "Phi",
                p.clone(),
                SttTerm::forall(
                    "W",
                    SimpleType::Mu,
                    SttTerm::app(
                        SttTerm::var("Phi", p.clone()),
                        SttTerm::var("W", SimpleType::Mu),
                    ),
                ),
            ),
        );

        // the ten accessibility-relation properties
        for cond in properties::registry() {
            t.push(
                cond.operator(),
                SimpleType::arrow(r.clone(), SimpleType::O),
                cond.definition(),
            );
        }

        // temporal operators over the designated constants past/future
        let past = SttTerm::cnst(PAST, r.clone());
        let future = SttTerm::cnst(FUTURE, r.clone());
        let a = SttTerm::var("A", p.clone());

        // malways = ^ A. mand (mbox past A) (mand A (mbox future A))
        t.push(
            "malways",
            unop.clone(),
            SttTerm::lam(
                "A",
                p.clone(),
                SttTerm::apps(
                    op(&t, "mand"),
                    [
                        SttTerm::apps(op(&t, "mbox"), [past.clone(), a.clone()]),
                        SttTerm::apps(
                            op(&t, "mand"),
                            [
                                a.clone(),
                                SttTerm::apps(op(&t, "mbox"), [future.clone(), a.clone()]),
                            ],
                        ),
                    ],
                ),
            ),
        );

        // msometime = ^ A. mor (mdia past A) (mor A (mdia future A))
        t.push(
            "msometime",
            unop,
            SttTerm::lam(
                "A",
                p.clone(),
                SttTerm::apps(
                    op(&t, "mor"),
                    [
                        SttTerm::apps(op(&t, "mdia"), [past, a.clone()]),
                        SttTerm::apps(
                            op(&t, "mor"),
                            [a.clone(), SttTerm::apps(op(&t, "mdia"), [future, a])],
                        ),
                    ],
                ),
            ),
        );

        t
    }

    /// Adds a definition; panics if it refers to an operator not yet in the
    /// table (this keeps the table acyclic by construction) or fails to
    /// type-check at the declared type.
    fn push(&mut self, name: impl Into<String>, ty: SimpleType, term: SttTerm) {
        let name = name.into();
        assert!(
            self.operator_type(&name).is_none(),
            "operator {name} defined twice"
        );
        for c in term.constants() {
            let known = logic::is_reserved(&c)
                || self.expanded.contains_key(&c)
                || c == PAST
                || c == FUTURE;
            assert!(known, "definition of {name} refers to undefined {c}");
        }
        let expanded = beta_eta_normalize(&self.expand_consts(&term));
        self.expanded.insert(name.clone(), expanded);
        self.defs.push(OperatorDef { name, ty, term });
    }

    pub fn iter(&self) -> impl Iterator<Item = &OperatorDef> {
        self.defs.iter()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.defs.iter().any(|d| d.name == name)
    }

    /// The λ-term defining `name`, exactly as written in the table.
    pub fn definition_of(&self, name: &str) -> Option<&SttTerm> {
        self.defs.iter().find(|d| d.name == name).map(|d| &d.term)
    }

    pub fn operator_type(&self, name: &str) -> Option<&SimpleType> {
        self.defs.iter().find(|d| d.name == name).map(|d| &d.ty)
    }

    /// A `Const` node referring to the named operator.
    pub fn operator(&self, name: &str) -> Option<SttTerm> {
        self.operator_type(name)
            .map(|ty| SttTerm::cnst(name, ty.clone()))
    }

    /// Replaces every defined operator (and the derived kernel connectives
    /// `$and`, `$impl`, `$iff`, `$sigma`) by its definition and normalizes.
    /// The result mentions only `$not`, `$or`, `$eq`, `$pi`, variables, and
    /// signature constants.
    pub fn expand(&self, t: &SttTerm) -> SttTerm {
        beta_eta_normalize(&self.expand_consts(t))
    }

    fn expand_consts(&self, t: &SttTerm) -> SttTerm {
        match t {
            SttTerm::Var(..) => t.clone(),
            SttTerm::Const(name, ty) => {
                if let Some(def) = self.expanded.get(name) {
                    def.clone()
                } else {
                    derived_connective(name, ty).unwrap_or_else(|| t.clone())
                }
            }
            SttTerm::Lam(x, ty, b) => SttTerm::lam(x.clone(), ty.clone(), self.expand_consts(b)),
            SttTerm::App(f, a) => SttTerm::app(self.expand_consts(f), self.expand_consts(a)),
        }
    }
}

/// Expansions for the derived kernel connectives, synthesized from the
/// concrete type of the occurrence (`$sigma` is a type-indexed family).
fn derived_connective(name: &str, ty: &SimpleType) -> Option<SttTerm> {
    let o = SimpleType::O;
    let a = SttTerm::var("A", o.clone());
    let b = SttTerm::var("B", o.clone());
    match name {
        logic::AND => Some(SttTerm::lams(
            &[("A", o.clone()), ("B", o.clone())],
            SttTerm::neg(SttTerm::disj(SttTerm::neg(a), SttTerm::neg(b))),
        )),
        logic::IMPL => Some(SttTerm::lams(
            &[("A", o.clone()), ("B", o.clone())],
            SttTerm::disj(SttTerm::neg(a), b),
        )),
        logic::IFF => Some(SttTerm::lams(
            &[("A", o.clone()), ("B", o.clone())],
            SttTerm::neg(SttTerm::disj(
                SttTerm::neg(SttTerm::disj(SttTerm::neg(a.clone()), b.clone())),
                SttTerm::neg(SttTerm::disj(SttTerm::neg(b), a)),
            )),
        )),
        logic::SIGMA => {
            // $sigma at type (alpha > $o) > $o:
            //   ^ S. ~ ($pi (^ X: alpha. ~ (S X)))
            let (dom, _) = ty.as_arrow()?;
            let (alpha, _) = dom.as_arrow()?;
            let s_ty = dom.clone();
            Some(SttTerm::lam(
                "S",
                s_ty.clone(),
                SttTerm::neg(SttTerm::forall(
                    "X",
                    alpha.clone(),
                    SttTerm::neg(SttTerm::app(
                        SttTerm::var("S", s_ty),
                        SttTerm::var("X", alpha.clone()),
                    )),
                )),
            ))
        }
        _ => None,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
}

/// The λ-term from the definition table for `name`.
pub fn definition_of(name: &str) -> Result<SttTerm, EmbedError> {
    DefinitionTable::standard()
        .definition_of(name)
        .cloned()
        .ok_or_else(|| EmbedError::UnknownOperator(name.to_string()))
}

fn table_op(name: &str) -> SttTerm {
    DefinitionTable::standard()
        .operator(name)
        .expect("standard operator")
}

/// Translates a relation expression to a term of type `mu > mu > $o`.
pub fn rel_term(r: &RelExpr, sig: &Signature) -> Result<SttTerm, EmbedError> {
    match r {
        RelExpr::Const(n) => {
            if sig.is_relation(n) || n == PAST || n == FUTURE {
                Ok(SttTerm::cnst(n, rel_ty()))
            } else {
                Err(EmbedError::UnboundSymbol(n.clone()))
            }
        }
        RelExpr::Var(n) => Ok(SttTerm::var(n, rel_ty())),
        RelExpr::Applied(f, a) => {
            if !sig.is_rel_functor(f) {
                return Err(EmbedError::UnboundSymbol(f.clone()));
            }
            Ok(SttTerm::app(
                SttTerm::cnst(f, SimpleType::rel_functor()),
                rel_term(a, sig)?,
            ))
        }
    }
}

/// Translates a modal formula to a term of type `mu > $o`, desugaring first.
/// Bound variables become λ-bound; free propositional, individual and
/// relation variables stay free (they are interpreted by an assignment).
pub fn translate(f: &ModalFormula, sig: &Signature) -> Result<SttTerm, EmbedError> {
    translate_core(&desugar(f), sig)
}

fn translate_core(f: &ModalFormula, sig: &Signature) -> Result<SttTerm, EmbedError> {
    use ModalFormula::*;
    match f {
        PropVar(p) => Ok(SttTerm::var(p, prop_ty())),
        PropConst(c) => {
            if sig.is_prop_const(c) {
                Ok(SttTerm::cnst(c, prop_ty()))
            } else {
                Err(EmbedError::UnboundSymbol(c.clone()))
            }
        }
        Atom(k, args) => {
            sig.predicate_arity(k)
                .ok_or_else(|| EmbedError::UnboundSymbol(k.clone()))?;
            let mut t = SttTerm::cnst(k, SimpleType::predicate(args.len()));
            for arg in args {
                let at = match arg {
                    IndArg::Var(x) => SttTerm::var(x, SimpleType::Iota),
                    IndArg::Const(c) => {
                        if sig.is_ind_const(c) {
                            SttTerm::cnst(c, SimpleType::Iota)
                        } else {
                            return Err(EmbedError::UnboundSymbol(c.clone()));
                        }
                    }
                };
                t = SttTerm::app(t, at);
            }
            Ok(t)
        }
        Top => Ok(table_op("mtrue")),
        Not(a) => Ok(SttTerm::app(table_op("mnot"), translate_core(a, sig)?)),
        Or(a, b) => Ok(SttTerm::apps(
            table_op("mor"),
            [translate_core(a, sig)?, translate_core(b, sig)?],
        )),
        Box(r, a) => Ok(SttTerm::apps(
            table_op("mbox"),
            [rel_term(r, sig)?, translate_core(a, sig)?],
        )),
        ForallInd(x, a) => Ok(SttTerm::app(
            table_op("mall_ind"),
            SttTerm::lam(x.clone(), SimpleType::Iota, translate_core(a, sig)?),
        )),
        ForallProp(p, a) => Ok(SttTerm::app(
            table_op("mall_prop"),
            SttTerm::lam(p.clone(), prop_ty(), translate_core(a, sig)?),
        )),
        _ => unreachable!("desugar leaves only core connectives"),
    }
}

/// Translates a meta formula to a term of type `$o`.
pub fn translate_meta(m: &MetaFormula, sig: &Signature) -> Result<SttTerm, EmbedError> {
    match m {
        MetaFormula::Valid(f) => Ok(SttTerm::app(table_op("mvalid"), translate(f, sig)?)),
        MetaFormula::HasProperty(p, r) => {
            let cond = properties::of(*p);
            Ok(SttTerm::app(
                table_op(&cond.operator()),
                rel_term(r, sig)?,
            ))
        }
        MetaFormula::Inverse(r1, r2) => {
            let t1 = rel_term(r1, sig)?;
            let t2 = rel_term(r2, sig)?;
            let s = SttTerm::var("S", SimpleType::Mu);
            let t = SttTerm::var("T", SimpleType::Mu);
            Ok(SttTerm::forall(
                "S",
                SimpleType::Mu,
                SttTerm::forall(
                    "T",
                    SimpleType::Mu,
                    SttTerm::iff(
                        SttTerm::apps(t1, [s.clone(), t.clone()]),
                        SttTerm::apps(t2, [t, s]),
                    ),
                ),
            ))
        }
        MetaFormula::Not(a) => Ok(SttTerm::neg(translate_meta(a, sig)?)),
        MetaFormula::And(a, b) => Ok(SttTerm::conj(
            translate_meta(a, sig)?,
            translate_meta(b, sig)?,
        )),
        MetaFormula::Or(a, b) => Ok(SttTerm::disj(
            translate_meta(a, sig)?,
            translate_meta(b, sig)?,
        )),
        MetaFormula::Implies(a, b) => Ok(SttTerm::implies(
            translate_meta(a, sig)?,
            translate_meta(b, sig)?,
        )),
        MetaFormula::Iff(a, b) => Ok(SttTerm::iff(
            translate_meta(a, sig)?,
            translate_meta(b, sig)?,
        )),
        MetaFormula::ExistsRel(r, a) => Ok(SttTerm::exists(
            r.clone(),
            rel_ty(),
            translate_meta(a, sig)?,
        )),
        MetaFormula::ForallRel(r, a) => Ok(SttTerm::forall(
            r.clone(),
            rel_ty(),
            translate_meta(a, sig)?,
        )),
    }
}

/// Expands all defined operators in `t` and βη-normalizes.
pub fn expand(t: &SttTerm) -> SttTerm {
    DefinitionTable::standard().expand(t)
}

/// The modal axiom schema corresponding to a frame property, instantiated
/// at `rel`.
pub fn axiom_schema(k: PropertyName, rel: &RelExpr) -> ModalFormula {
    properties::of(k).axiom(rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stt::{alpha_eq, TypingContext};

    fn sig_r() -> Signature {
        let mut sig = Signature::new();
        sig.add_relation("r").unwrap();
        sig
    }

    #[test]
    fn table_definitions_typecheck_at_declared_types() {
        for def in DefinitionTable::standard().iter() {
            let mut ctx = TypingContext::new();
            ctx.bind(PAST, SimpleType::rel());
            ctx.bind(FUTURE, SimpleType::rel());
            let ty = def
                .term
                .type_of(&ctx)
                .unwrap_or_else(|e| panic!("{}: {}", def.name, e));
            assert_eq!(ty, def.ty, "{}", def.name);
        }
    }

    #[test]
    fn table_covers_the_expected_operators() {
        let t = DefinitionTable::standard();
        for name in [
            "mnot",
            "mor",
            "mand",
            "mimpl",
            "mequiv",
            "mtrue",
            "mfalse",
            "mbox",
            "mdia",
            "mall_ind",
            "mexi_ind",
            "mall_prop",
            "mexi_prop",
            "mvalid",
            "mreflexive",
            "msymmetric",
            "mserial",
            "mtransitive",
            "meuclidean",
            "mpartially_functional",
            "mfunctional",
            "mweakly_dense",
            "mweakly_connected",
            "mweakly_directed",
            "malways",
            "msometime",
        ] {
            assert!(t.contains(name), "missing {name}");
        }
        assert_eq!(t.iter().count(), 26);
    }

    #[test]
    fn definition_of_mnot_and_mvalid() {
        let p = prop_ty();
        let mnot = definition_of("mnot").unwrap();
        let expected = SttTerm::lams(
            &[("F", p.clone()), ("W", SimpleType::Mu)],
            SttTerm::neg(SttTerm::app(
                SttTerm::var("F", p.clone()),
                SttTerm::var("W", SimpleType::Mu),
            )),
        );
        assert!(alpha_eq(&mnot, &expected));

        let mvalid = definition_of("mvalid").unwrap();
        let expected = SttTerm::lam(
            "F",
            p.clone(),
            SttTerm::forall(
                "W",
                SimpleType::Mu,
                SttTerm::app(SttTerm::var("F", p), SttTerm::var("W", SimpleType::Mu)),
            ),
        );
        assert!(alpha_eq(&mvalid, &expected));

        assert!(definition_of("mnonsense").is_err());
    }

    #[test]
    fn translate_types() {
        let sig = sig_r();
        let f = ModalFormula::boxed(
            RelExpr::Const("r".into()),
            ModalFormula::exists_prop("P", ModalFormula::PropVar("P".into())),
        );
        let t = translate(&f, &sig).unwrap();
        let ty = t.type_of(&TypingContext::for_term(&t)).unwrap();
        assert_eq!(ty, prop_ty());

        let m = MetaFormula::Valid(f);
        let t = translate_meta(&m, &sig).unwrap();
        let ty = t.type_of(&TypingContext::for_term(&t)).unwrap();
        assert_eq!(ty, SimpleType::O);
    }

    #[test]
    fn translate_prop_const_stays_constant() {
        let mut sig = Signature::new();
        sig.add_prop_const("time").unwrap();
        let t = translate(&ModalFormula::PropConst("time".into()), &sig).unwrap();
        assert_eq!(t, SttTerm::cnst("time", prop_ty()));
    }

    #[test]
    fn translate_unbound_symbol_errors() {
        let sig = sig_r();
        let err = translate(&ModalFormula::PropConst("time".into()), &sig).unwrap_err();
        assert_eq!(err, EmbedError::UnboundSymbol("time".into()));
    }

    #[test]
    fn paper_example_normal_form() {
        // expand (mvalid (mbox r (mexi_prop (^ P. P)))) =
        //   ! W, Y. ~ (r W Y) | ~ ! X. ~ (X Y)
        let sig = sig_r();
        let conj = MetaFormula::Valid(ModalFormula::boxed(
            RelExpr::Const("r".into()),
            ModalFormula::exists_prop("P", ModalFormula::PropVar("P".into())),
        ));
        let expanded = expand(&translate_meta(&conj, &sig).unwrap());

        let p = prop_ty();
        let r = SttTerm::cnst("r", rel_ty());
        let expected = SttTerm::forall(
            "W",
            SimpleType::Mu,
            SttTerm::forall(
                "Y",
                SimpleType::Mu,
                SttTerm::disj(
                    SttTerm::neg(SttTerm::apps(
                        r,
                        [
                            SttTerm::var("W", SimpleType::Mu),
                            SttTerm::var("Y", SimpleType::Mu),
                        ],
                    )),
                    SttTerm::neg(SttTerm::forall(
                        "X",
                        p.clone(),
                        SttTerm::neg(SttTerm::app(
                            SttTerm::var("X", p),
                            SttTerm::var("Y", SimpleType::Mu),
                        )),
                    )),
                ),
            ),
        );
        assert!(
            alpha_eq(&expanded, &expected),
            "got: {expanded}\nwant: {expected}"
        );
    }

    #[test]
    fn expansion_eliminates_defined_constants() {
        let sig = sig_r();
        let m = MetaFormula::Iff(
            Box::new(MetaFormula::HasProperty(
                PropertyName::Transitive,
                RelExpr::Const("r".into()),
            )),
            Box::new(MetaFormula::Valid(axiom_schema(
                PropertyName::Transitive,
                &RelExpr::Const("r".into()),
            ))),
        );
        let expanded = expand(&translate_meta(&m, &sig).unwrap());
        for c in expanded.constants() {
            assert!(
                matches!(c.as_str(), "$not" | "$or" | "$eq" | "$pi" | "r"),
                "unexpected constant {c}"
            );
        }
    }

    #[test]
    fn expand_mtrue_applied_is_truth() {
        let t = SttTerm::app(table_op("mtrue"), SttTerm::var("W0", SimpleType::Mu));
        assert!(alpha_eq(&expand(&t), &SttTerm::truth()));
    }

    #[test]
    fn expand_mand_applied_pointwise() {
        // (mand Phi Psi) W  ->  ~(~(Phi W) | ~(Psi W))
        let p = prop_ty();
        let t = SttTerm::app(
            SttTerm::apps(
                table_op("mand"),
                [SttTerm::var("Phi", p.clone()), SttTerm::var("Psi", p.clone())],
            ),
            SttTerm::var("W0", SimpleType::Mu),
        );
        let expected = SttTerm::neg(SttTerm::disj(
            SttTerm::neg(SttTerm::app(
                SttTerm::var("Phi", p.clone()),
                SttTerm::var("W0", SimpleType::Mu),
            )),
            SttTerm::neg(SttTerm::app(
                SttTerm::var("Psi", p),
                SttTerm::var("W0", SimpleType::Mu),
            )),
        ));
        assert!(alpha_eq(&expand(&t), &expected));
    }

    #[test]
    fn compositionality_of_negation() {
        let sig = sig_r();
        let f = ModalFormula::boxed(RelExpr::Const("r".into()), ModalFormula::Top);
        let route_a = expand(&translate(&ModalFormula::not(f.clone()), &sig).unwrap());
        let route_b = expand(&SttTerm::app(
            table_op("mnot"),
            translate(&f, &sig).unwrap(),
        ));
        assert!(alpha_eq(&route_a, &route_b));
    }

    #[test]
    fn axiom_schemas_match_expected_shape() {
        let r = RelExpr::Const("r".into());
        let a = || ModalFormula::PropVar("A".into());
        assert_eq!(
            axiom_schema(PropertyName::Reflexive, &r),
            ModalFormula::forall_prop(
                "A",
                ModalFormula::impl_(ModalFormula::boxed(r.clone(), a()), a())
            )
        );
        assert_eq!(
            axiom_schema(PropertyName::Serial, &r),
            ModalFormula::forall_prop(
                "A",
                ModalFormula::impl_(
                    ModalFormula::boxed(r.clone(), a()),
                    ModalFormula::dia(r.clone(), a())
                )
            )
        );
        assert_eq!(
            axiom_schema(PropertyName::WeaklyDense, &r),
            ModalFormula::forall_prop(
                "A",
                ModalFormula::impl_(
                    ModalFormula::boxed(r.clone(), ModalFormula::boxed(r.clone(), a())),
                    ModalFormula::boxed(r.clone(), a())
                )
            )
        );
    }
}
