//! Deterministic random generation of types, terms, formulas and models,
//! used by the property and acceptance tests. Everything is driven by a
//! seeded ChaCha stream, so runs are reproducible.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::semantics::{Assignment, KripkeModel, PredInterp};
use crate::stt::{SimpleType, SttTerm, TypingContext};
use crate::syntax::{IndArg, ModalFormula, RelExpr};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Vocabulary and shape limits for random modal formulas.
#[derive(Clone, Debug)]
pub struct FormulaConfig {
    pub max_depth: usize,
    pub relations: Vec<String>,
    pub predicates: Vec<(String, usize)>,
    pub prop_consts: Vec<String>,
    pub prop_vars: Vec<String>,
    pub ind_vars: Vec<String>,
    /// Generate only core connectives (the desugared fragment).
    pub core_only: bool,
}

impl Default for FormulaConfig {
    fn default() -> Self {
        FormulaConfig {
            max_depth: 4,
            relations: vec!["r1".into(), "r2".into()],
            predicates: vec![("k1".into(), 1), ("k2".into(), 1)],
            prop_consts: vec![],
            prop_vars: vec!["A".into(), "B".into()],
            ind_vars: vec!["X0".into()],
            core_only: true,
        }
    }
}

/// A random modal formula over the configured vocabulary. Quantifiers pick
/// fresh bound names; leaves use free variables from the config (those are
/// interpreted by an assignment).
pub fn random_formula(rng: &mut ChaCha8Rng, cfg: &FormulaConfig) -> ModalFormula {
    gen_formula(rng, cfg, cfg.max_depth, &mut 0)
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> Option<&'a T> {
    if items.is_empty() {
        None
    } else {
        items.get(rng.gen_range(0..items.len()))
    }
}

fn gen_formula(
    rng: &mut ChaCha8Rng,
    cfg: &FormulaConfig,
    depth: usize,
    fresh: &mut usize,
) -> ModalFormula {
    let leaf = depth == 0 || rng.gen_ratio(1, 4);
    if leaf {
        return gen_leaf(rng, cfg);
    }
    let n_kinds = if cfg.core_only { 6 } else { 11 };
    match rng.gen_range(0..n_kinds) {
        0 => ModalFormula::not(gen_formula(rng, cfg, depth - 1, fresh)),
        1 => ModalFormula::or(
            gen_formula(rng, cfg, depth - 1, fresh),
            gen_formula(rng, cfg, depth - 1, fresh),
        ),
        2 => {
            let rel = pick(rng, &cfg.relations).cloned().unwrap_or_else(|| "r1".into());
            ModalFormula::boxed(RelExpr::Const(rel), gen_formula(rng, cfg, depth - 1, fresh))
        }
        3 => {
            *fresh += 1;
            let p = format!("Q{fresh}");
            let mut inner = cfg.clone();
            inner.prop_vars.push(p.clone());
            ModalFormula::forall_prop(p, gen_formula(rng, &inner, depth - 1, fresh))
        }
        4 => {
            *fresh += 1;
            let x = format!("Y{fresh}");
            let mut inner = cfg.clone();
            inner.ind_vars.push(x.clone());
            ModalFormula::forall_ind(x, gen_formula(rng, &inner, depth - 1, fresh))
        }
        5 => gen_leaf(rng, cfg),
        6 => ModalFormula::and(
            gen_formula(rng, cfg, depth - 1, fresh),
            gen_formula(rng, cfg, depth - 1, fresh),
        ),
        7 => ModalFormula::impl_(
            gen_formula(rng, cfg, depth - 1, fresh),
            gen_formula(rng, cfg, depth - 1, fresh),
        ),
        8 => ModalFormula::iff(
            gen_formula(rng, cfg, depth - 1, fresh),
            gen_formula(rng, cfg, depth - 1, fresh),
        ),
        9 => {
            let rel = pick(rng, &cfg.relations).cloned().unwrap_or_else(|| "r1".into());
            ModalFormula::dia(RelExpr::Const(rel), gen_formula(rng, cfg, depth - 1, fresh))
        }
        _ => {
            *fresh += 1;
            let p = format!("Q{fresh}");
            let mut inner = cfg.clone();
            inner.prop_vars.push(p.clone());
            ModalFormula::exists_prop(p, gen_formula(rng, &inner, depth - 1, fresh))
        }
    }
}

fn gen_leaf(rng: &mut ChaCha8Rng, cfg: &FormulaConfig) -> ModalFormula {
    for _ in 0..4 {
        match rng.gen_range(0..4) {
            0 => {
                if let Some(p) = pick(rng, &cfg.prop_vars) {
                    return ModalFormula::PropVar(p.clone());
                }
            }
            1 => {
                if let Some(c) = pick(rng, &cfg.prop_consts) {
                    return ModalFormula::PropConst(c.clone());
                }
            }
            2 => {
                if !cfg.predicates.is_empty() && !cfg.ind_vars.is_empty() {
                    let (k, arity) = pick(rng, &cfg.predicates).unwrap().clone();
                    let args = (0..arity)
                        .map(|_| IndArg::Var(pick(rng, &cfg.ind_vars).unwrap().clone()))
                        .collect();
                    return ModalFormula::Atom(k, args);
                }
            }
            _ => return ModalFormula::Top,
        }
    }
    ModalFormula::Top
}

/// A random model interpreting the vocabulary of `cfg`.
pub fn random_model(
    rng: &mut ChaCha8Rng,
    cfg: &FormulaConfig,
    n_worlds: usize,
    n_domain: usize,
) -> KripkeModel {
    let mut m = KripkeModel::empty(n_worlds, n_domain);
    let rel_space = 1u64 << (n_worlds * n_worlds);
    let prop_space = 1u64 << n_worlds;
    for r in &cfg.relations {
        m.set_relation(r.clone(), rng.gen_range(0..rel_space));
    }
    for c in &cfg.prop_consts {
        m.set_proposition(c.clone(), rng.gen_range(0..prop_space));
    }
    for (k, arity) in &cfg.predicates {
        let tuples = n_domain.pow(*arity as u32);
        m.preds.push(PredInterp {
            name: k.clone(),
            arity: *arity,
            table: (0..tuples).map(|_| rng.gen_range(0..prop_space)).collect(),
        });
    }
    m
}

/// A random assignment for the free variables of `cfg` in `m`.
pub fn random_assignment(rng: &mut ChaCha8Rng, cfg: &FormulaConfig, m: &KripkeModel) -> Assignment {
    let prop_space = 1u64 << m.n_worlds;
    let mut a = Assignment::new();
    for p in &cfg.prop_vars {
        a.prop.push((p.clone(), rng.gen_range(0..prop_space)));
    }
    for x in &cfg.ind_vars {
        a.ind.push((x.clone(), rng.gen_range(0..m.n_domain)));
    }
    a
}

// ---------------------------------------------------------------------------
// Random well-typed STT terms (for the kernel property tests)
// ---------------------------------------------------------------------------

fn random_type(rng: &mut ChaCha8Rng, depth: usize) -> SimpleType {
    if depth == 0 || rng.gen_ratio(2, 3) {
        match rng.gen_range(0..3) {
            0 => SimpleType::O,
            1 => SimpleType::Iota,
            _ => SimpleType::Mu,
        }
    } else {
        SimpleType::arrow(random_type(rng, depth - 1), random_type(rng, depth - 1))
    }
}

/// A random closed-under-context well-typed term of type `ty`, together
/// with the context of the free variables it may use.
pub fn random_term(rng: &mut ChaCha8Rng, max_depth: usize) -> (SttTerm, TypingContext) {
    let ty = random_type(rng, 2);
    let mut ctx = TypingContext::new();
    let base: Vec<(String, SimpleType)> = vec![
        ("F0".into(), SimpleType::arrow(SimpleType::Mu, SimpleType::O)),
        ("G0".into(), SimpleType::arrow(SimpleType::O, SimpleType::O)),
        ("W0".into(), SimpleType::Mu),
        ("I0".into(), SimpleType::Iota),
        ("B0".into(), SimpleType::O),
    ];
    for (n, t) in &base {
        ctx.bind(n.clone(), t.clone());
    }
    let mut scope = base;
    let mut fresh = 0usize;
    let t = gen_term(rng, &ty, max_depth, &mut scope, &mut fresh);
    (t, ctx)
}

fn gen_term(
    rng: &mut ChaCha8Rng,
    ty: &SimpleType,
    depth: usize,
    scope: &mut Vec<(String, SimpleType)>,
    fresh: &mut usize,
) -> SttTerm {
    // a variable of the right type, if any
    let candidates: Vec<(String, SimpleType)> = scope
        .iter()
        .filter(|(_, t)| t == ty)
        .cloned()
        .collect();
    if depth == 0 {
        if let Some((n, t)) = pick(rng, &candidates) {
            return SttTerm::var(n.clone(), t.clone());
        }
        return match ty {
            SimpleType::Arrow(a, b) => {
                *fresh += 1;
                let x = format!("V{fresh}");
                scope.push((x.clone(), (**a).clone()));
                let body = gen_term(rng, b, 0, scope, fresh);
                scope.pop();
                SttTerm::lam(x, (**a).clone(), body)
            }
            _ => {
                *fresh += 1;
                SttTerm::cnst(format!("c{fresh}"), ty.clone())
            }
        };
    }
    match rng.gen_range(0..5) {
        0 if !candidates.is_empty() => {
            let (n, t) = pick(rng, &candidates).unwrap();
            SttTerm::var(n.clone(), t.clone())
        }
        1 => {
            // build an application: pick a small argument type
            let arg_ty = random_type(rng, 1);
            let fun_ty = SimpleType::arrow(arg_ty.clone(), ty.clone());
            let f = gen_term(rng, &fun_ty, depth - 1, scope, fresh);
            let a = gen_term(rng, &arg_ty, depth - 1, scope, fresh);
            SttTerm::app(f, a)
        }
        2 if *ty == SimpleType::O => {
            // logical structure
            match rng.gen_range(0..3) {
                0 => SttTerm::neg(gen_term(rng, &SimpleType::O, depth - 1, scope, fresh)),
                1 => SttTerm::disj(
                    gen_term(rng, &SimpleType::O, depth - 1, scope, fresh),
                    gen_term(rng, &SimpleType::O, depth - 1, scope, fresh),
                ),
                _ => {
                    *fresh += 1;
                    let x = format!("V{fresh}");
                    let qty = random_type(rng, 1);
                    scope.push((x.clone(), qty.clone()));
                    let body = gen_term(rng, &SimpleType::O, depth - 1, scope, fresh);
                    scope.pop();
                    SttTerm::forall(x, qty, body)
                }
            }
        }
        _ => match ty {
            SimpleType::Arrow(a, b) => {
                *fresh += 1;
                let x = format!("V{fresh}");
                scope.push((x.clone(), (**a).clone()));
                let body = gen_term(rng, b, depth - 1, scope, fresh);
                scope.pop();
                SttTerm::lam(x, (**a).clone(), body)
            }
            _ => {
                if let Some((n, t)) = pick(rng, &candidates) {
                    SttTerm::var(n.clone(), t.clone())
                } else {
                    *fresh += 1;
                    SttTerm::cnst(format!("c{fresh}"), ty.clone())
                }
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stt::{alpha_eq, beta_eta_normalize};

    #[test]
    fn generation_is_deterministic() {
        let cfg = FormulaConfig::default();
        let a = random_formula(&mut rng(7), &cfg);
        let b = random_formula(&mut rng(7), &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn generated_terms_are_well_typed() {
        for seed in 0..200 {
            let (t, ctx) = random_term(&mut rng(seed), 5);
            t.type_of(&ctx)
                .unwrap_or_else(|e| panic!("seed {seed}: {t} : {e}"));
        }
    }

    #[test]
    fn subject_reduction_holds_on_samples() {
        for seed in 0..200 {
            let (t, ctx) = random_term(&mut rng(seed), 5);
            let before = t.type_of(&ctx).unwrap();
            let nf = beta_eta_normalize(&t);
            let after = nf.type_of(&ctx).unwrap();
            assert_eq!(before, after, "seed {seed}: {t}");
        }
    }

    #[test]
    fn normalization_idempotent_on_samples() {
        for seed in 0..200 {
            let (t, _) = random_term(&mut rng(seed), 5);
            let once = beta_eta_normalize(&t);
            let twice = beta_eta_normalize(&once);
            assert!(alpha_eq(&once, &twice), "seed {seed}: {t}");
        }
    }

    #[test]
    fn substitution_lemma_on_samples() {
        use crate::stt::SttTerm;
        // normalize(t[x := s]) = normalize(normalize(t)[x := normalize(s)])
        for seed in 0..100 {
            let mut r = rng(seed ^ 0xfeed);
            let (t, _) = random_term(&mut r, 4);
            let s = SttTerm::lam("Z", SimpleType::Mu, SttTerm::var("Z", SimpleType::Mu));
            let x = "F0";
            // F0 : mu > $o in the base context; replace it with something
            // of the same type
            let repl = SttTerm::lam("Z", SimpleType::Mu, SttTerm::neg(SttTerm::app(
                SttTerm::cnst("q", SimpleType::arrow(SimpleType::Mu, SimpleType::O)),
                SttTerm::var("Z", SimpleType::Mu),
            )));
            let _ = s;
            let lhs = beta_eta_normalize(&t.substitute(x, &repl));
            let rhs = beta_eta_normalize(
                &beta_eta_normalize(&t).substitute(x, &beta_eta_normalize(&repl)),
            );
            assert!(alpha_eq(&lhs, &rhs), "seed {seed}");
        }
    }
}
