//! Exhaustive bounded model search.
//!
//! Models are enumerated lexicographically over `(worlds, domain, relation
//! masks, proposition masks, predicate tables, individual constants)`.
//! Frame axioms prune each relation's candidate masks up front, and axioms
//! whose symbols are all relations are checked before the inner
//! interpretation loops open; this keeps realistic problems (like the
//! epistemic puzzles) inside the budget without changing the enumeration
//! order. The first model satisfying the axioms and falsifying the
//! conjecture is the least witness; it is re-evaluated before being
//! returned.

use std::collections::BTreeMap;

use super::eval::{eval_meta, eval_set};
use super::{Assignment, Classification, KripkeModel, PredInterp, SearchBounds};
use crate::properties;
use crate::syntax::{free_symbols, meta_free_symbols, MetaFormula, ProblemFile, RelExpr};

/// Classifies a problem by exhaustive search up to the bounds.
///
/// With a conjecture: returns the least falsifying model
/// (`CounterSatisfiable`) or `ValidUpToBound` when every model of the axioms
/// satisfies it. Without one: returns the least model of the axioms
/// (`Satisfiable`) or `Unknown` when none exists within bounds.
pub fn find_countermodel(p: &ProblemFile, bounds: &SearchBounds) -> Classification {
    if p.signature.relations.len() + p.applied_relations().len() > 16 {
        return Classification::Unknown {
            reason: "too many relation symbols for exhaustive search".into(),
        };
    }
    if bounds.max_worlds == 0 || bounds.max_domain == 0 {
        return Classification::Unknown {
            reason: "bounds must be at least one world and one individual".into(),
        };
    }
    if bounds.max_worlds > 8 {
        return Classification::Unknown {
            reason: "bounds too large for exhaustive search (max 8 worlds)".into(),
        };
    }

    // interpretation slots, in deterministic order
    let mut rel_keys: Vec<RelExpr> = p
        .signature
        .relations
        .iter()
        .map(|n| RelExpr::Const(n.clone()))
        .collect();
    for r in p.applied_relations() {
        rel_keys.push(r);
    }

    // frame axioms grouped per relation key
    let mut frame_by_key: BTreeMap<String, Vec<&'static dyn properties::FrameCondition>> =
        BTreeMap::new();
    for (prop, rel) in &p.frame_axioms {
        frame_by_key
            .entry(rel.key())
            .or_default()
            .push(properties::of(*prop));
    }

    // relation-only axioms can be checked before interpretations of
    // propositions, predicates and individuals are chosen
    let rel_names: Vec<String> = rel_keys
        .iter()
        .flat_map(|r| rel_expr_symbols(r))
        .collect();
    let is_rel_only = |syms: &std::collections::BTreeSet<String>| {
        syms.iter().all(|s| rel_names.contains(s))
    };

    let mut rel_only_axioms: Vec<MetaFormula> = Vec::new();
    let mut late_axioms: Vec<MetaFormula> = Vec::new();
    for f in &p.modal_axioms {
        let m = MetaFormula::Valid(f.clone());
        if is_rel_only(&free_symbols(f)) {
            rel_only_axioms.push(m);
        } else {
            late_axioms.push(m);
        }
    }
    for m in &p.meta_axioms {
        if is_rel_only(&meta_free_symbols(m)) {
            rel_only_axioms.push(m.clone());
        } else {
            late_axioms.push(m.clone());
        }
    }

    for n in 1..=bounds.max_worlds {
        for d in 1..=bounds.max_domain {
            match search_size(
                p,
                bounds,
                n,
                d,
                &rel_keys,
                &frame_by_key,
                &rel_only_axioms,
                &late_axioms,
            ) {
                SizeOutcome::Found(c) => return c,
                SizeOutcome::Exhausted => {}
                SizeOutcome::Aborted(reason) => return Classification::Unknown { reason },
            }
        }
    }

    if p.conjecture.is_some() {
        Classification::ValidUpToBound {
            max_worlds: bounds.max_worlds,
            max_domain: bounds.max_domain,
        }
    } else {
        Classification::Unknown {
            reason: "axioms have no model within bounds".into(),
        }
    }
}

fn rel_expr_symbols(r: &RelExpr) -> Vec<String> {
    match r {
        RelExpr::Const(n) | RelExpr::Var(n) => vec![n.clone()],
        RelExpr::Applied(f, a) => {
            let mut v = vec![f.clone()];
            v.extend(rel_expr_symbols(a));
            v
        }
    }
}

enum SizeOutcome {
    Found(Classification),
    Exhausted,
    Aborted(String),
}

/// Big-endian odometer step: increments the last digit, carrying left.
/// Returns false when all digits roll over (enumeration finished).
fn advance(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    let mut i = digits.len();
    while i > 0 {
        i -= 1;
        digits[i] += 1;
        if digits[i] < radix(i) {
            return true;
        }
        digits[i] = 0;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn search_size(
    p: &ProblemFile,
    bounds: &SearchBounds,
    n: usize,
    d: usize,
    rel_keys: &[RelExpr],
    frame_by_key: &BTreeMap<String, Vec<&'static dyn properties::FrameCondition>>,
    rel_only_axioms: &[MetaFormula],
    late_axioms: &[MetaFormula],
) -> SizeOutcome {
    let rel_space = 1u64 << (n * n);
    let prop_space = 1u64 << n;

    // frame-filtered candidate masks per relation slot
    let mut rel_cands: Vec<Vec<u64>> = Vec::with_capacity(rel_keys.len());
    for key in rel_keys {
        let conds = frame_by_key.get(&key.key());
        let cands: Vec<u64> = (0..rel_space)
            .filter(|&mask| {
                conds
                    .map(|cs| cs.iter().all(|c| c.holds(n, mask)))
                    .unwrap_or(true)
            })
            .collect();
        if cands.is_empty() {
            return SizeOutcome::Exhausted;
        }
        rel_cands.push(cands);
    }

    // predicate table sizes
    let pred_slots: Vec<(String, usize, usize)> = p
        .signature
        .predicates
        .iter()
        .map(|(name, arity)| (name.clone(), *arity, d.pow(*arity as u32)))
        .collect();

    // candidate-count estimate against the budget
    let mut estimate: u128 = 1;
    for c in &rel_cands {
        estimate = estimate.saturating_mul(c.len() as u128);
    }
    for _ in &p.signature.prop_consts {
        estimate = estimate.saturating_mul(prop_space as u128);
    }
    for (_, _, tuples) in &pred_slots {
        for _ in 0..*tuples {
            estimate = estimate.saturating_mul(prop_space as u128);
        }
    }
    for _ in &p.signature.ind_consts {
        estimate = estimate.saturating_mul(d as u128);
    }
    if estimate > bounds.budget {
        return SizeOutcome::Aborted(format!(
            "bounds too large for exhaustive search: about {estimate} candidate models at \
             {n} worlds / {d} individuals exceeds the budget of {}",
            bounds.budget
        ));
    }

    let mut model = KripkeModel::empty(n, d);
    for key in rel_keys {
        model.set_relation(key.key(), 0);
    }
    for c in &p.signature.prop_consts {
        model.set_proposition(c.clone(), 0);
    }
    for (name, arity, tuples) in &pred_slots {
        model.preds.push(PredInterp {
            name: name.clone(),
            arity: *arity,
            table: vec![0; *tuples],
        });
    }
    for c in &p.signature.ind_consts {
        model.ind_consts.push((c.clone(), 0));
    }

    // odometer over relation slots
    let mut rel_digits = vec![0usize; rel_keys.len()];
    loop {
        for (slot, digit) in rel_digits.iter().enumerate() {
            model.rels[slot].1 = rel_cands[slot][*digit];
        }

        let mut ok = true;
        for ax in rel_only_axioms {
            match eval_meta(&model, ax) {
                Ok(true) => {}
                Ok(false) => {
                    ok = false;
                    break;
                }
                Err(e) => return SizeOutcome::Aborted(e.to_string()),
            }
        }

        if ok {
            match search_interpretations(p, &mut model, late_axioms, prop_space) {
                SizeOutcome::Exhausted => {}
                other => return other,
            }
        }

        if !advance(&mut rel_digits, |slot| rel_cands[slot].len()) {
            break;
        }
    }

    SizeOutcome::Exhausted
}

fn search_interpretations(
    p: &ProblemFile,
    model: &mut KripkeModel,
    late_axioms: &[MetaFormula],
    prop_space: u64,
) -> SizeOutcome {
    // inner odometer: propositions, then predicate table rows, then
    // individual constants, most significant first in that order
    enum Slot {
        Prop(usize),
        Pred(usize, usize),
        Ind(usize),
    }
    let mut slots = Vec::new();
    for i in 0..model.props.len() {
        slots.push(Slot::Prop(i));
    }
    for (i, pred) in model.preds.iter().enumerate() {
        for j in 0..pred.table.len() {
            slots.push(Slot::Pred(i, j));
        }
    }
    for i in 0..model.ind_consts.len() {
        slots.push(Slot::Ind(i));
    }
    let n_domain = model.n_domain;
    let radix = |s: &Slot| -> usize {
        match s {
            Slot::Prop(_) | Slot::Pred(..) => prop_space as usize,
            Slot::Ind(_) => n_domain,
        }
    };

    let mut digits = vec![0usize; slots.len()];
    loop {
        for (slot, digit) in slots.iter().zip(&digits) {
            match slot {
                Slot::Prop(i) => model.props[*i].1 = *digit as u64,
                Slot::Pred(i, j) => model.preds[*i].table[*j] = *digit as u64,
                Slot::Ind(i) => model.ind_consts[*i].1 = *digit,
            }
        }

        let mut ok = true;
        for ax in late_axioms {
            match eval_meta(model, ax) {
                Ok(true) => {}
                Ok(false) => {
                    ok = false;
                    break;
                }
                Err(e) => return SizeOutcome::Aborted(e.to_string()),
            }
        }

        if ok {
            match &p.conjecture {
                None => {
                    return SizeOutcome::Found(Classification::Satisfiable {
                        model: model.clone(),
                    });
                }
                Some(conj) => match eval_meta(model, conj) {
                    Ok(true) => {}
                    Ok(false) => {
                        // self-check the witness before returning it
                        if eval_meta(model, conj) != Ok(false) {
                            return SizeOutcome::Aborted("witness failed re-evaluation".into());
                        }
                        let witness_world = falsifying_world(model, conj);
                        return SizeOutcome::Found(Classification::CounterSatisfiable {
                            model: model.clone(),
                            witness_world,
                        });
                    }
                    Err(e) => return SizeOutcome::Aborted(e.to_string()),
                },
            }
        }

        if !advance(&mut digits, |i| radix(&slots[i])) {
            return SizeOutcome::Exhausted;
        }
    }
}

/// For a `valid F` conjecture, the least world where `F` fails.
fn falsifying_world(model: &KripkeModel, conj: &MetaFormula) -> Option<usize> {
    if let MetaFormula::Valid(f) = conj {
        if let Ok(set) = eval_set(model, &Assignment::new(), f) {
            for w in 0..model.n_worlds {
                if set >> w & 1 == 0 {
                    return Some(w);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_problem;
    use crate::semantics::ClassKind;

    fn check(text: &str, bounds: SearchBounds) -> Classification {
        let p = parse_problem(text).unwrap();
        find_countermodel(&p, &bounds)
    }

    #[test]
    fn t_schema_csa_at_one_world() {
        let c = check(
            "relation r. conjecture valid (forall_prop A. impl (box r A) A).",
            SearchBounds::default(),
        );
        match c {
            Classification::CounterSatisfiable {
                model,
                witness_world,
            } => {
                assert_eq!(model.n_worlds, 1);
                assert_eq!(model.relation("r"), Some(0));
                assert_eq!(witness_world, Some(0));
            }
            other => panic!("expected CSA, got {other:?}"),
        }
    }

    #[test]
    fn box_top_valid_up_to_bound() {
        let c = check(
            "relation r. conjecture valid (box r top).",
            SearchBounds::new(4, 2),
        );
        assert_eq!(c.kind(), ClassKind::ValidUpToBound);
    }

    #[test]
    fn exists_nontransitive_csa_at_one_world() {
        // problem (8a): a one-world model has only transitive relations
        let c = check(
            "conjecture exists R. ~ valid (forall_prop A. impl (box R A) (box R (box R A))).",
            SearchBounds::default(),
        );
        match c {
            Classification::CounterSatisfiable { model, .. } => assert_eq!(model.n_worlds, 1),
            other => panic!("expected CSA, got {other:?}"),
        }
    }

    #[test]
    fn frame_axioms_prune_candidates() {
        // with a reflexive frame the T schema is valid
        let c = check(
            "relation r. frame reflexive r. conjecture valid (forall_prop A. impl (box r A) A).",
            SearchBounds::default(),
        );
        assert_eq!(c.kind(), ClassKind::ValidUpToBound);
    }

    #[test]
    fn satisfiable_for_axiom_only_problem() {
        let c = check("relation r. frame serial r.", SearchBounds::default());
        match c {
            Classification::Satisfiable { model } => {
                assert_eq!(model.n_worlds, 1);
                // least serial relation on one world is the loop
                assert_eq!(model.relation("r"), Some(1));
            }
            other => panic!("expected Satisfiable, got {other:?}"),
        }
    }

    #[test]
    fn witness_is_stable_under_larger_bounds() {
        let text = "relation r. conjecture valid (forall_prop A. impl (box r A) (box r (box r A))).";
        let small = check(text, SearchBounds::new(3, 1));
        let large = check(text, SearchBounds::new(4, 2));
        match (small, large) {
            (
                Classification::CounterSatisfiable { model: m1, .. },
                Classification::CounterSatisfiable { model: m2, .. },
            ) => assert_eq!(m1, m2),
            other => panic!("expected two CSA results, got {other:?}"),
        }
    }

    #[test]
    fn unknown_when_budget_exceeded() {
        let mut text = String::new();
        for i in 0..10 {
            text.push_str(&format!("relation r{i}. "));
        }
        text.push_str("conjecture valid (box r0 top).");
        let p = parse_problem(&text).unwrap();
        let c = find_countermodel(
            &p,
            &SearchBounds {
                max_worlds: 3,
                max_domain: 1,
                budget: 1000,
            },
        );
        assert_eq!(c.kind(), ClassKind::Unknown);
    }
}
