//! The two evaluators.
//!
//! `eval_set`/`eval_direct` interpret modal formulas by the standard Kripke
//! clauses, computing the set of worlds where a formula holds as a bitmask.
//! Propositional quantifiers range over all subsets of the world set and
//! individual quantifiers over the whole domain.
//!
//! `eval_stt` interprets expanded STT terms set-theoretically: `mu` denotes
//! the worlds, `$i` the domain, `$o` the booleans, and arrow types the full
//! finite function space. On finite carriers with full function spaces this
//! coincides with Henkin semantics, which makes the two evaluators an
//! executable cross-check of the embedding at desk scale.

use thiserror::Error;

use super::{Assignment, KripkeModel, CARRIER_CAP};
use crate::properties;
use crate::stt::{logic, SimpleType, SttTerm};
use crate::syntax::{IndArg, MetaFormula, ModalFormula, PropertyName, RelExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("uninterpreted symbol `{0}`")]
    UninterpretedSymbol(String),
    #[error("carrier of type {ty} has {size} elements, exceeding the cap of {cap}")]
    CarrierTooLarge { ty: String, size: u64, cap: u64 },
    #[error("cannot evaluate `{0}` ({1})")]
    Unsupported(String, String),
}

// ---------------------------------------------------------------------------
// Direct evaluation of modal formulas
// ---------------------------------------------------------------------------

fn resolve_rel(m: &KripkeModel, a: &Assignment, r: &RelExpr) -> Result<u64, EvalError> {
    match r {
        RelExpr::Var(n) => a
            .lookup_rel(n)
            .ok_or_else(|| EvalError::UninterpretedSymbol(n.clone())),
        _ => m
            .relation(&r.key())
            .ok_or_else(|| EvalError::UninterpretedSymbol(r.key())),
    }
}

/// The set of worlds (as a bitmask) where `f` holds. Total on sugar
/// connectives, which get their native truth conditions; this is what makes
/// the desugaring-coherence check a genuine two-route comparison.
pub fn eval_set(m: &KripkeModel, a: &Assignment, f: &ModalFormula) -> Result<u64, EvalError> {
    let mut a = a.clone();
    eval_set_inner(m, &mut a, f)
}

fn eval_set_inner(
    m: &KripkeModel,
    a: &mut Assignment,
    f: &ModalFormula,
) -> Result<u64, EvalError> {
    use ModalFormula::*;
    let full = m.full_world_mask();
    Ok(match f {
        Top => full,
        Bot => 0,
        PropVar(p) => a
            .lookup_prop(p)
            .ok_or_else(|| EvalError::UninterpretedSymbol(p.clone()))?,
        PropConst(c) => m
            .proposition(c)
            .ok_or_else(|| EvalError::UninterpretedSymbol(c.clone()))?,
        Atom(k, args) => {
            let pred = m
                .predicate(k)
                .ok_or_else(|| EvalError::UninterpretedSymbol(k.clone()))?;
            let mut idx = 0usize;
            let mut scale = 1usize;
            for arg in args {
                let v = match arg {
                    IndArg::Var(x) => a
                        .lookup_ind(x)
                        .ok_or_else(|| EvalError::UninterpretedSymbol(x.clone()))?,
                    IndArg::Const(c) => m
                        .ind_const(c)
                        .ok_or_else(|| EvalError::UninterpretedSymbol(c.clone()))?,
                };
                idx += v * scale;
                scale *= m.n_domain;
            }
            pred.table[idx]
        }
        Not(g) => !eval_set_inner(m, a, g)? & full,
        Or(g, h) => eval_set_inner(m, a, g)? | eval_set_inner(m, a, h)?,
        And(g, h) => eval_set_inner(m, a, g)? & eval_set_inner(m, a, h)?,
        Impl(g, h) => (!eval_set_inner(m, a, g)? & full) | eval_set_inner(m, a, h)?,
        Iff(g, h) => {
            let x = eval_set_inner(m, a, g)?;
            let y = eval_set_inner(m, a, h)?;
            !(x ^ y) & full
        }
        Box(r, g) => {
            let rel = resolve_rel(m, a, r)?;
            let set = eval_set_inner(m, a, g)?;
            let mut out = 0u64;
            for w in 0..m.n_worlds {
                if m.row(rel, w) & !set == 0 {
                    out |= 1 << w;
                }
            }
            out
        }
        Dia(r, g) => {
            let rel = resolve_rel(m, a, r)?;
            let set = eval_set_inner(m, a, g)?;
            let mut out = 0u64;
            for w in 0..m.n_worlds {
                if m.row(rel, w) & set != 0 {
                    out |= 1 << w;
                }
            }
            out
        }
        ForallProp(p, g) => {
            let mut out = full;
            for subset in 0..=full {
                a.prop.push((p.clone(), subset));
                let r = eval_set_inner(m, a, g);
                a.prop.pop();
                out &= r?;
                if out == 0 {
                    break;
                }
            }
            out
        }
        ExistsProp(p, g) => {
            let mut out = 0;
            for subset in 0..=full {
                a.prop.push((p.clone(), subset));
                let r = eval_set_inner(m, a, g);
                a.prop.pop();
                out |= r?;
                if out == full {
                    break;
                }
            }
            out
        }
        ForallInd(x, g) => {
            let mut out = full;
            for v in 0..m.n_domain {
                a.ind.push((x.clone(), v));
                let r = eval_set_inner(m, a, g);
                a.ind.pop();
                out &= r?;
            }
            out
        }
        ExistsInd(x, g) => {
            let mut out = 0;
            for v in 0..m.n_domain {
                a.ind.push((x.clone(), v));
                let r = eval_set_inner(m, a, g);
                a.ind.pop();
                out |= r?;
            }
            out
        }
    })
}

/// Truth of `f` at world `w`.
pub fn eval_direct(
    m: &KripkeModel,
    a: &Assignment,
    w: usize,
    f: &ModalFormula,
) -> Result<bool, EvalError> {
    Ok(eval_set(m, a, f)? >> w & 1 == 1)
}

// ---------------------------------------------------------------------------
// Meta-level evaluation
// ---------------------------------------------------------------------------

/// Truth of a meta formula in a model. Relation quantifiers range over all
/// subsets of `worlds x worlds`.
pub fn eval_meta(m: &KripkeModel, mf: &MetaFormula) -> Result<bool, EvalError> {
    let mut a = Assignment::new();
    eval_meta_inner(m, &mut a, mf)
}

fn eval_meta_inner(
    m: &KripkeModel,
    a: &mut Assignment,
    mf: &MetaFormula,
) -> Result<bool, EvalError> {
    Ok(match mf {
        MetaFormula::Valid(f) => {
            let set = eval_set_inner(m, a, f)?;
            set == m.full_world_mask()
        }
        MetaFormula::HasProperty(p, r) => {
            let rel = resolve_rel(m, a, r)?;
            properties::of(*p).holds(m.n_worlds, rel)
        }
        MetaFormula::Inverse(r1, r2) => {
            let x = resolve_rel(m, a, r1)?;
            let y = resolve_rel(m, a, r2)?;
            let n = m.n_worlds;
            (0..n).all(|s| {
                (0..n).all(|t| (x >> (s * n + t) & 1 == 1) == (y >> (t * n + s) & 1 == 1))
            })
        }
        MetaFormula::Not(g) => !eval_meta_inner(m, a, g)?,
        MetaFormula::And(g, h) => eval_meta_inner(m, a, g)? && eval_meta_inner(m, a, h)?,
        MetaFormula::Or(g, h) => eval_meta_inner(m, a, g)? || eval_meta_inner(m, a, h)?,
        MetaFormula::Implies(g, h) => !eval_meta_inner(m, a, g)? || eval_meta_inner(m, a, h)?,
        MetaFormula::Iff(g, h) => eval_meta_inner(m, a, g)? == eval_meta_inner(m, a, h)?,
        MetaFormula::ExistsRel(rv, g) => {
            let total = 1u128 << (m.n_worlds * m.n_worlds);
            let mut found = false;
            for rel in 0..total {
                a.rel.push((rv.clone(), rel as u64));
                let r = eval_meta_inner(m, a, g);
                a.rel.pop();
                if r? {
                    found = true;
                    break;
                }
            }
            found
        }
        MetaFormula::ForallRel(rv, g) => {
            let total = 1u128 << (m.n_worlds * m.n_worlds);
            let mut all = true;
            for rel in 0..total {
                a.rel.push((rv.clone(), rel as u64));
                let r = eval_meta_inner(m, a, g);
                a.rel.pop();
                if !r? {
                    all = false;
                    break;
                }
            }
            all
        }
    })
}

/// Direct first-order check of a frame property.
pub fn check_property(
    m: &KripkeModel,
    r: &RelExpr,
    p: PropertyName,
) -> Result<bool, EvalError> {
    let rel = resolve_rel(m, &Assignment::new(), r)?;
    Ok(properties::of(p).holds(m.n_worlds, rel))
}

/// Frame validity of a schema: the schema must hold at every world, under
/// every valuation of its schematic propositional symbols (free
/// propositional variables and constants alike). Schemas with individual
/// quantification or predicate atoms are rejected — a frame has no domain.
pub fn frame_valid(
    n_worlds: usize,
    rels: &[(String, u64)],
    schema: &ModalFormula,
) -> Result<bool, EvalError> {
    fn prop_symbols(
        f: &ModalFormula,
        bound: &mut Vec<String>,
        out: &mut Vec<String>,
    ) -> Result<(), EvalError> {
        use ModalFormula::*;
        match f {
            PropVar(p) => {
                if !bound.contains(p) && !out.contains(p) {
                    out.push(p.clone());
                }
            }
            PropConst(c) => {
                if !out.contains(c) {
                    out.push(c.clone());
                }
            }
            Atom(k, _) => {
                return Err(EvalError::Unsupported(
                    k.clone(),
                    "frame validity is defined for propositional schemas".into(),
                ))
            }
            ForallInd(x, _) | ExistsInd(x, _) => {
                return Err(EvalError::Unsupported(
                    x.clone(),
                    "frame validity is defined for propositional schemas".into(),
                ))
            }
            Top | Bot => {}
            Not(g) => prop_symbols(g, bound, out)?,
            Or(g, h) | And(g, h) | Impl(g, h) | Iff(g, h) => {
                prop_symbols(g, bound, out)?;
                prop_symbols(h, bound, out)?;
            }
            Box(_, g) | Dia(_, g) => prop_symbols(g, bound, out)?,
            ForallProp(p, g) | ExistsProp(p, g) => {
                bound.push(p.clone());
                prop_symbols(g, bound, out)?;
                bound.pop();
            }
        }
        Ok(())
    }

    let mut model = KripkeModel::empty(n_worlds, 1);
    for (name, mask) in rels {
        model.set_relation(name.clone(), *mask);
    }

    let mut schematic = Vec::new();
    prop_symbols(schema, &mut Vec::new(), &mut schematic)?;

    let full = model.full_world_mask();
    // odometer over one world-set per schematic symbol
    let mut digits = vec![0u64; schematic.len()];
    loop {
        let mut a = Assignment::new();
        for (name, mask) in schematic.iter().zip(&digits) {
            a.prop.push((name.clone(), *mask));
            model.set_proposition(name.clone(), *mask);
        }
        if eval_set(&model, &a, schema)? != full {
            return Ok(false);
        }
        // advance
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(true);
            }
            digits[i] += 1;
            if digits[i] <= full {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Set-theoretic evaluation of STT terms
// ---------------------------------------------------------------------------

/// A semantic value: a boolean, a world, an individual, or a finite
/// function table. Tables are indexed by the dense encoding of the domain
/// carrier, which makes equality of functions extensional table equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    World(usize),
    Ind(usize),
    Fun(Box<FunValue>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunValue {
    pub dom: SimpleType,
    pub table: Vec<Value>,
}

impl Value {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

/// Evaluation environment: carrier sizes plus name bindings.
#[derive(Clone)]
pub struct SttEnv {
    n_worlds: usize,
    n_domain: usize,
    vars: Vec<(String, Value)>,
}

impl SttEnv {
    pub fn new(n_worlds: usize, n_domain: usize) -> Self {
        SttEnv {
            n_worlds,
            n_domain,
            vars: Vec::new(),
        }
    }

    /// Environment interpreting every symbol of the model, plus the
    /// variable bindings of `a`.
    pub fn from_model(m: &KripkeModel, a: &Assignment) -> Self {
        let mut env = SttEnv::new(m.n_worlds, m.n_domain);
        for (name, mask) in &m.rels {
            // functor applications like wife(peter) are relation symbols of
            // the model but not constants of any term; skip them here
            if name.contains('(') {
                continue;
            }
            env.bind(name.clone(), env.rel_value(*mask));
        }
        for (name, mask) in &m.props {
            env.bind(name.clone(), env.prop_value(*mask));
        }
        for p in &m.preds {
            let v = env.pred_value(p.arity, &p.table);
            env.bind(p.name.clone(), v);
        }
        for (name, v) in &m.ind_consts {
            env.bind(name.clone(), Value::Ind(*v));
        }
        for (name, v) in &a.ind {
            env.bind(name.clone(), Value::Ind(*v));
        }
        for (name, mask) in &a.prop {
            env.bind(name.clone(), env.prop_value(*mask));
        }
        for (name, mask) in &a.rel {
            env.bind(name.clone(), env.rel_value(*mask));
        }
        env
    }

    pub fn bind(&mut self, name: impl Into<String>, v: Value) {
        self.vars.push((name.into(), v));
    }

    fn lookup(&self, name: &str) -> Option<&Value> {
        self.vars
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }

    /// The proposition `mu > $o` denoted by a world-set mask.
    pub fn prop_value(&self, mask: u64) -> Value {
        Value::Fun(Box::new(FunValue {
            dom: SimpleType::Mu,
            table: (0..self.n_worlds)
                .map(|w| Value::Bool(mask >> w & 1 == 1))
                .collect(),
        }))
    }

    /// The curried relation `mu > mu > $o` denoted by a relation mask.
    pub fn rel_value(&self, mask: u64) -> Value {
        Value::Fun(Box::new(FunValue {
            dom: SimpleType::Mu,
            table: (0..self.n_worlds)
                .map(|w| self.prop_value((mask >> (w * self.n_worlds)) & ((1 << self.n_worlds) - 1)))
                .collect(),
        }))
    }

    /// The curried `$i > ... > $i > mu > $o` value of a predicate table.
    fn pred_value(&self, arity: usize, table: &[u64]) -> Value {
        fn build(env: &SttEnv, arity: usize, table: &[u64], idx: usize, scale: usize) -> Value {
            if arity == 0 {
                env.prop_value(table[idx])
            } else {
                Value::Fun(Box::new(FunValue {
                    dom: SimpleType::Iota,
                    table: (0..env.n_domain)
                        .map(|v| build(env, arity - 1, table, idx + v * scale, scale * env.n_domain))
                        .collect(),
                }))
            }
        }
        build(self, arity, table, 0, 1)
    }

    fn carrier_size(&self, ty: &SimpleType) -> Result<u64, EvalError> {
        let size = match ty {
            SimpleType::O => 2,
            SimpleType::Mu => self.n_worlds as u64,
            SimpleType::Iota => self.n_domain as u64,
            SimpleType::Arrow(a, b) => {
                let sa = self.carrier_size(a)?;
                let sb = self.carrier_size(b)?;
                let mut acc: u64 = 1;
                for _ in 0..sa {
                    acc = acc.checked_mul(sb).ok_or_else(|| EvalError::CarrierTooLarge {
                        ty: ty.to_string(),
                        size: u64::MAX,
                        cap: CARRIER_CAP,
                    })?;
                    if acc > CARRIER_CAP {
                        return Err(EvalError::CarrierTooLarge {
                            ty: ty.to_string(),
                            size: acc,
                            cap: CARRIER_CAP,
                        });
                    }
                }
                acc
            }
        };
        if size > CARRIER_CAP {
            return Err(EvalError::CarrierTooLarge {
                ty: ty.to_string(),
                size,
                cap: CARRIER_CAP,
            });
        }
        Ok(size)
    }

    /// The `idx`-th element of the carrier of `ty`.
    fn value_at(&self, ty: &SimpleType, idx: u64) -> Result<Value, EvalError> {
        Ok(match ty {
            SimpleType::O => Value::Bool(idx == 1),
            SimpleType::Mu => Value::World(idx as usize),
            SimpleType::Iota => Value::Ind(idx as usize),
            SimpleType::Arrow(a, b) => {
                let sa = self.carrier_size(a)?;
                let sb = self.carrier_size(b)?;
                let mut table = Vec::with_capacity(sa as usize);
                let mut rest = idx;
                for _ in 0..sa {
                    table.push(self.value_at(b, rest % sb)?);
                    rest /= sb;
                }
                Value::Fun(Box::new(FunValue {
                    dom: (**a).clone(),
                    table,
                }))
            }
        })
    }

    /// The dense index of a value within its carrier.
    fn index_of(&self, v: &Value) -> Result<u64, EvalError> {
        Ok(match v {
            Value::Bool(b) => *b as u64,
            Value::World(w) => *w as u64,
            Value::Ind(i) => *i as u64,
            Value::Fun(f) => {
                let sb = match f.table.first() {
                    Some(first) => self.carrier_size_of_value(first)?,
                    None => 1,
                };
                let mut idx = 0u64;
                for entry in f.table.iter().rev() {
                    idx = idx * sb + self.index_of(entry)?;
                }
                idx
            }
        })
    }

    fn carrier_size_of_value(&self, v: &Value) -> Result<u64, EvalError> {
        Ok(match v {
            Value::Bool(_) => 2,
            Value::World(_) => self.n_worlds as u64,
            Value::Ind(_) => self.n_domain as u64,
            Value::Fun(f) => {
                let sb = match f.table.first() {
                    Some(first) => self.carrier_size_of_value(first)?,
                    None => 1,
                };
                let mut acc: u64 = 1;
                for _ in 0..f.table.len() {
                    acc = acc.saturating_mul(sb);
                }
                acc
            }
        })
    }

    fn apply(&self, f: &Value, arg: &Value) -> Result<Value, EvalError> {
        match f {
            Value::Fun(fun) => {
                let idx = self.index_of(arg)? as usize;
                fun.table
                    .get(idx)
                    .cloned()
                    .ok_or_else(|| EvalError::Unsupported(
                        "application".into(),
                        "argument outside carrier".into(),
                    ))
            }
            _ => Err(EvalError::Unsupported(
                "application".into(),
                "value is not a function".into(),
            )),
        }
    }

    /// Value of a logical constant, synthesized from its instance type.
    fn logical_value(&self, name: &str, ty: &SimpleType) -> Result<Value, EvalError> {
        match name {
            logic::NOT => Ok(Value::Fun(Box::new(FunValue {
                dom: SimpleType::O,
                table: vec![Value::Bool(true), Value::Bool(false)],
            }))),
            logic::OR | logic::AND | logic::IMPL | logic::IFF => {
                let op: fn(bool, bool) -> bool = match name {
                    logic::OR => |a, b| a || b,
                    logic::AND => |a, b| a && b,
                    logic::IMPL => |a, b| !a || b,
                    _ => |a, b| a == b,
                };
                Ok(Value::Fun(Box::new(FunValue {
                    dom: SimpleType::O,
                    table: (0..2)
                        .map(|a| {
                            Value::Fun(Box::new(FunValue {
                                dom: SimpleType::O,
                                table: (0..2)
                                    .map(|b| Value::Bool(op(a == 1, b == 1)))
                                    .collect(),
                            }))
                        })
                        .collect(),
                })))
            }
            logic::EQ => {
                let (alpha, _) = ty.as_arrow().ok_or_else(|| {
                    EvalError::Unsupported(name.into(), "malformed equality type".into())
                })?;
                let size = self.carrier_size(alpha)?;
                let mut outer = Vec::with_capacity(size as usize);
                for i in 0..size {
                    let inner = (0..size).map(|j| Value::Bool(i == j)).collect();
                    outer.push(Value::Fun(Box::new(FunValue {
                        dom: alpha.clone(),
                        table: inner,
                    })));
                }
                Ok(Value::Fun(Box::new(FunValue {
                    dom: alpha.clone(),
                    table: outer,
                })))
            }
            logic::PI | logic::SIGMA => {
                let (dom, _) = ty.as_arrow().ok_or_else(|| {
                    EvalError::Unsupported(name.into(), "malformed quantifier type".into())
                })?;
                let size = self.carrier_size(dom)?;
                let mut table = Vec::with_capacity(size as usize);
                for i in 0..size {
                    let pred = self.value_at(dom, i)?;
                    let truth = match &pred {
                        Value::Fun(f) => {
                            let all = f.table.iter().all(|v| v == &Value::Bool(true));
                            let any = f.table.iter().any(|v| v == &Value::Bool(true));
                            if name == logic::PI {
                                all
                            } else {
                                any
                            }
                        }
                        _ => {
                            return Err(EvalError::Unsupported(
                                name.into(),
                                "quantifier over non-function".into(),
                            ))
                        }
                    };
                    table.push(Value::Bool(truth));
                }
                Ok(Value::Fun(Box::new(FunValue {
                    dom: dom.clone(),
                    table,
                })))
            }
            _ => Err(EvalError::UninterpretedSymbol(name.into())),
        }
    }
}

/// Set-theoretic value of an STT term in an environment derived from a
/// model. The term should be expanded (definition-free); remaining logical
/// constants are interpreted over full finite function spaces, everything
/// else must be bound in the environment.
pub fn eval_stt(m: &KripkeModel, env: &SttEnv, t: &SttTerm) -> Result<Value, EvalError> {
    let _ = m;
    let mut env = env.clone();
    eval_stt_inner(&mut env, t)
}

fn eval_stt_inner(env: &mut SttEnv, t: &SttTerm) -> Result<Value, EvalError> {
    match t {
        SttTerm::Var(name, _) => env
            .lookup(name)
            .cloned()
            .ok_or_else(|| EvalError::UninterpretedSymbol(name.clone())),
        SttTerm::Const(name, ty) => {
            if logic::is_reserved(name) {
                env.logical_value(name, ty)
            } else {
                env.lookup(name)
                    .cloned()
                    .ok_or_else(|| EvalError::UninterpretedSymbol(name.clone()))
            }
        }
        SttTerm::Lam(x, ty, body) => {
            let size = env.carrier_size(ty)?;
            let mut table = Vec::with_capacity(size as usize);
            for i in 0..size {
                let v = env.value_at(ty, i)?;
                env.vars.push((x.clone(), v));
                let r = eval_stt_inner(env, body);
                env.vars.pop();
                table.push(r?);
            }
            Ok(Value::Fun(Box::new(FunValue {
                dom: ty.clone(),
                table,
            })))
        }
        SttTerm::App(f, a) => {
            let vf = eval_stt_inner(env, f)?;
            let va = eval_stt_inner(env, a)?;
            env.apply(&vf, &va)
        }
    }
}

/// Evaluates a term of type `mu > $o` and returns its truth at world `w`.
pub fn eval_stt_at_world(
    m: &KripkeModel,
    env: &SttEnv,
    t: &SttTerm,
    w: usize,
) -> Result<bool, EvalError> {
    let v = eval_stt(m, env, t)?;
    match v {
        Value::Fun(f) => f
            .table
            .get(w)
            .and_then(|v| v.as_bool())
            .ok_or_else(|| EvalError::Unsupported(
                "world application".into(),
                "term did not denote a proposition".into(),
            )),
        _ => Err(EvalError::Unsupported(
            "world application".into(),
            "term did not denote a proposition".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{expand, translate};
    use crate::syntax::Signature;

    fn rel(n: &str) -> RelExpr {
        RelExpr::Const(n.to_string())
    }

    fn model_1w_empty_r() -> KripkeModel {
        let mut m = KripkeModel::empty(1, 1);
        m.set_relation("r", 0);
        m
    }

    #[test]
    fn vacuous_box_is_true() {
        let m = model_1w_empty_r();
        let f = ModalFormula::boxed(rel("r"), ModalFormula::Bot);
        assert!(eval_direct(&m, &Assignment::new(), 0, &f).unwrap());
    }

    #[test]
    fn t_schema_fails_on_irreflexive_point() {
        // W={w}, r empty, A(w)=false: box A => A is false at w
        let m = model_1w_empty_r();
        let mut a = Assignment::new();
        a.prop.push(("A".into(), 0));
        let f = ModalFormula::impl_(
            ModalFormula::boxed(rel("r"), ModalFormula::PropVar("A".into())),
            ModalFormula::PropVar("A".into()),
        );
        assert!(!eval_direct(&m, &a, 0, &f).unwrap());
    }

    #[test]
    fn box_exists_prop_is_always_true() {
        for n in 1..=3usize {
            for relmask in [0u64, 1, (1 << (n * n)) - 1] {
                let mut m = KripkeModel::empty(n, 1);
                m.set_relation("r", relmask);
                let f = ModalFormula::boxed(
                    rel("r"),
                    ModalFormula::exists_prop("P", ModalFormula::PropVar("P".into())),
                );
                for w in 0..n {
                    assert!(eval_direct(&m, &Assignment::new(), w, &f).unwrap());
                }
            }
        }
    }

    #[test]
    fn uninterpreted_symbol_errors() {
        let m = model_1w_empty_r();
        let f = ModalFormula::PropConst("p".into());
        assert!(matches!(
            eval_set(&m, &Assignment::new(), &f),
            Err(EvalError::UninterpretedSymbol(_))
        ));
    }

    #[test]
    fn eval_stt_paper_example_is_valid() {
        // the expanded example formula holds on any model
        let mut sig = Signature::new();
        sig.add_relation("r").unwrap();
        let f = ModalFormula::boxed(
            rel("r"),
            ModalFormula::exists_prop("P", ModalFormula::PropVar("P".into())),
        );
        let t = expand(&translate(&f, &sig).unwrap());
        for n in 1..=3usize {
            for relmask in [0u64, 1, 5, (1 << (n * n)) - 1] {
                let relmask = relmask & ((1u64 << (n * n)) - 1);
                let mut m = KripkeModel::empty(n, 1);
                m.set_relation("r", relmask);
                let env = SttEnv::from_model(&m, &Assignment::new());
                for w in 0..n {
                    assert!(eval_stt_at_world(&m, &env, &t, w).unwrap());
                }
            }
        }
    }

    #[test]
    fn eval_stt_mtrue_applied() {
        let m = model_1w_empty_r();
        let env = SttEnv::from_model(&m, &Assignment::new());
        let t = expand(&crate::embed::DefinitionTable::standard().operator("mtrue").unwrap());
        assert!(eval_stt_at_world(&m, &env, &t, 0).unwrap());
    }

    #[test]
    fn eval_stt_mtransitive_counterexample() {
        // W={a,b}, r={(a,b),(b,a)} is not transitive
        let mut m = KripkeModel::empty(2, 1);
        m.set_relation("r", 0b0110); // bits: (0,1) and (1,0)
        let def = crate::embed::DefinitionTable::standard()
            .operator("mtransitive")
            .unwrap();
        let t = expand(&SttTerm::app(def, SttTerm::cnst("r", SimpleType::rel())));
        let env = SttEnv::from_model(&m, &Assignment::new());
        assert_eq!(eval_stt(&m, &env, &t).unwrap(), Value::Bool(false));

        // and the direct property check agrees
        assert!(!check_property(&m, &rel("r"), PropertyName::Transitive).unwrap());
    }

    #[test]
    fn eval_meta_one_world_degeneracy() {
        let m = KripkeModel::empty(1, 1);
        let q = MetaFormula::exists_rel(
            "R",
            MetaFormula::not(MetaFormula::HasProperty(
                PropertyName::Transitive,
                RelExpr::Var("R".into()),
            )),
        );
        assert!(!eval_meta(&m, &q).unwrap());

        let m2 = KripkeModel::empty(2, 1);
        assert!(eval_meta(&m2, &q).unwrap());
    }

    #[test]
    fn frame_valid_t_schema() {
        let schema = crate::embed::axiom_schema(PropertyName::Reflexive, &rel("r"));
        // reflexive single world
        assert!(frame_valid(1, &[("r".into(), 1)], &schema).unwrap());
        // W={w1,w2}, R={(w1,w1)}: falsified at w2
        assert!(!frame_valid(2, &[("r".into(), 0b0001)], &schema).unwrap());
    }

    #[test]
    fn frame_valid_loeb_fails_on_reflexive_point() {
        // ! A. box (box A => A) => box A, on W={w}, R={(w,w)}: false with A = {}
        let a = || ModalFormula::PropVar("A".into());
        let schema = ModalFormula::forall_prop(
            "A",
            ModalFormula::impl_(
                ModalFormula::boxed(
                    rel("r"),
                    ModalFormula::impl_(ModalFormula::boxed(rel("r"), a()), a()),
                ),
                ModalFormula::boxed(rel("r"), a()),
            ),
        );
        assert!(!frame_valid(1, &[("r".into(), 1)], &schema).unwrap());
    }

    #[test]
    fn desugar_coherence_spot_checks() {
        let mut m = KripkeModel::empty(3, 2);
        m.set_relation("r", 0b010_001_100);
        m.set_proposition("p", 0b101);
        let formulas = [
            ModalFormula::iff(
                ModalFormula::dia(rel("r"), ModalFormula::PropConst("p".into())),
                ModalFormula::PropConst("p".into()),
            ),
            ModalFormula::impl_(
                ModalFormula::Top,
                ModalFormula::and(ModalFormula::PropConst("p".into()), ModalFormula::Bot),
            ),
            ModalFormula::exists_prop(
                "Q",
                ModalFormula::and(
                    ModalFormula::PropVar("Q".into()),
                    ModalFormula::not(ModalFormula::PropConst("p".into())),
                ),
            ),
        ];
        let a = Assignment::new();
        for f in &formulas {
            assert_eq!(
                eval_set(&m, &a, f).unwrap(),
                eval_set(&m, &a, &crate::syntax::desugar(f)).unwrap(),
                "{f:?}"
            );
        }
    }
}
