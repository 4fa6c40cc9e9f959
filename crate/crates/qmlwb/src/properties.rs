//! Registry of accessibility-relation properties.
//!
//! Each property is one strategy behind the [`FrameCondition`] trait: it
//! knows its defining λ-term (used by the definition table and THF output),
//! how to check itself on a finite frame, and which modal axiom schema it
//! corresponds to. Strategies are registered by name; the parser and the
//! suite select them at runtime.

use crate::stt::{SimpleType, SttTerm};
use crate::syntax::{ModalFormula, PropertyName, RelExpr};

/// One accessibility-relation property.
pub trait FrameCondition: Send + Sync {
    /// Key in [`PropertyName`] space.
    fn key(&self) -> PropertyName;

    /// Surface name, e.g. `transitive`.
    fn name(&self) -> &'static str {
        self.key().as_str()
    }

    /// THF operator name, e.g. `mtransitive`.
    fn operator(&self) -> String {
        format!("m{}", self.name())
    }

    /// Short label used in THF axiom names, e.g. `trans`.
    fn label(&self) -> &'static str;

    /// The defining λ-term, of type `( mu > mu > $o ) > $o`.
    fn definition(&self) -> SttTerm;

    /// Direct first-order check of the property on a finite frame with
    /// `worlds` worlds, where bit `w * worlds + v` of `rel` is `R w v`.
    fn holds(&self, worlds: usize, rel: u64) -> bool;

    /// The corresponding modal axiom schema, with its schematic
    /// propositional variables explicitly bound.
    fn axiom(&self, rel: &RelExpr) -> ModalFormula;
}

struct Reflexive;
struct Symmetric;
struct Serial;
struct Transitive;
struct Euclidean;
struct PartiallyFunctional;
struct Functional;
struct WeaklyDense;
struct WeaklyConnected;
struct WeaklyDirected;

/// All registered frame conditions, in the order of the definition table.
pub fn registry() -> &'static [&'static dyn FrameCondition] {
    static REGISTRY: [&dyn FrameCondition; 10] = [
        &Reflexive,
        &Symmetric,
        &Serial,
        &Transitive,
        &Euclidean,
        &PartiallyFunctional,
        &Functional,
        &WeaklyDense,
        &WeaklyConnected,
        &WeaklyDirected,
    ];
    &REGISTRY
}

/// Looks up a condition by surface name.
pub fn lookup(name: &str) -> Option<&'static dyn FrameCondition> {
    registry().iter().copied().find(|c| c.name() == name)
}

/// The condition for a [`PropertyName`].
pub fn of(key: PropertyName) -> &'static dyn FrameCondition {
    registry()
        .iter()
        .copied()
        .find(|c| c.key() == key)
        .expect("every PropertyName is registered")
}

// --- term-building helpers -------------------------------------------------

fn rvar() -> SttTerm {
    SttTerm::var("R", SimpleType::rel())
}

fn r_at(a: &str, b: &str) -> SttTerm {
    SttTerm::apps(
        rvar(),
        [
            SttTerm::var(a, SimpleType::Mu),
            SttTerm::var(b, SimpleType::Mu),
        ],
    )
}

fn world_eq(a: &str, b: &str) -> SttTerm {
    SttTerm::equal(
        SimpleType::Mu,
        SttTerm::var(a, SimpleType::Mu),
        SttTerm::var(b, SimpleType::Mu),
    )
}

fn lam_r(body: SttTerm) -> SttTerm {
    SttTerm::lam("R", SimpleType::rel(), body)
}

fn forall_worlds(names: &[&str], body: SttTerm) -> SttTerm {
    names
        .iter()
        .rev()
        .fold(body, |acc, x| SttTerm::forall(*x, SimpleType::Mu, acc))
}

fn exists_world(name: &str, body: SttTerm) -> SttTerm {
    SttTerm::exists(name, SimpleType::Mu, body)
}

// --- schema-building helpers -----------------------------------------------

fn schema_a(body: impl FnOnce(ModalFormula) -> ModalFormula) -> ModalFormula {
    ModalFormula::forall_prop("A", body(ModalFormula::PropVar("A".into())))
}

fn mbox(rel: &RelExpr, f: ModalFormula) -> ModalFormula {
    ModalFormula::boxed(rel.clone(), f)
}

fn mdia(rel: &RelExpr, f: ModalFormula) -> ModalFormula {
    ModalFormula::dia(rel.clone(), f)
}

// --- bitmask helpers ---------------------------------------------------------

#[inline]
fn has(rel: u64, n: usize, a: usize, b: usize) -> bool {
    rel >> (a * n + b) & 1 == 1
}

// --- the ten conditions -------------------------------------------------------

impl FrameCondition for Reflexive {
    fn key(&self) -> PropertyName {
        PropertyName::Reflexive
    }
    fn label(&self) -> &'static str {
        "refl"
    }
    fn definition(&self) -> SttTerm {
        lam_r(forall_worlds(&["S"], r_at("S", "S")))
    }
    fn holds(&self, n: usize, rel: u64) -> bool {
        (0..n).all(|s| has(rel, n, s, s))
    }
    fn axiom(&self, rel: &RelExpr) -> ModalFormula {
        // ! A. box A => A
        schema_a(|a| ModalFormula::impl_(mbox(rel, a.clone()), a))
    }
}

impl FrameCondition for Symmetric {
    fn key(&self) -> PropertyName {
        PropertyName::Symmetric
    }
    fn label(&self) -> &'static str {
        "symm"
    }
    fn definition(&self) -> SttTerm {
        lam_r(forall_worlds(
            &["S", "T"],
            SttTerm::implies(r_at("S", "T"), r_at("T", "S")),
        ))
    }
    fn holds(&self, n: usize, rel: u64) -> bool {
        (0..n).all(|s| (0..n).all(|t| !has(rel, n, s, t) || has(rel, n, t, s)))
    }
    fn axiom(&self, rel: &RelExpr) -> ModalFormula {
        // ! A. A => box dia A
        schema_a(|a| ModalFormula::impl_(a.clone(), mbox(rel, mdia(rel, a))))
    }
}

impl FrameCondition for Serial {
    fn key(&self) -> PropertyName {
        PropertyName::Serial
    }
    fn label(&self) -> &'static str {
        "serial"
    }
    fn definition(&self) -> SttTerm {
        lam_r(forall_worlds(&["S"], exists_world("T", r_at("S", "T"))))
    }
    fn holds(&self, n: usize, rel: u64) -> bool {
        (0..n).all(|s| (0..n).any(|t| has(rel, n, s, t)))
    }
    fn axiom(&self, rel: &RelExpr) -> ModalFormula {
        // ! A. box A => dia A
        schema_a(|a| ModalFormula::impl_(mbox(rel, a.clone()), mdia(rel, a)))
    }
}

impl FrameCondition for Transitive {
    fn key(&self) -> PropertyName {
        PropertyName::Transitive
    }
    fn label(&self) -> &'static str {
        "trans"
    }
    fn definition(&self) -> SttTerm {
        lam_r(forall_worlds(
            &["S", "T", "U"],
            SttTerm::implies(
                SttTerm::conj(r_at("S", "T"), r_at("T", "U")),
                r_at("S", "U"),
            ),
        ))
    }
    fn holds(&self, n: usize, rel: u64) -> bool {
        (0..n).all(|s| {
            (0..n).all(|t| {
                !has(rel, n, s, t) || (0..n).all(|u| !has(rel, n, t, u) || has(rel, n, s, u))
            })
        })
    }
    fn axiom(&self, rel: &RelExpr) -> ModalFormula {
        // ! A. box A => box box A
        schema_a(|a| ModalFormula::impl_(mbox(rel, a.clone()), mbox(rel, mbox(rel, a))))
    }
}

impl FrameCondition for Euclidean {
    fn key(&self) -> PropertyName {
        PropertyName::Euclidean
    }
    fn label(&self) -> &'static str {
        "eucl"
    }
    fn definition(&self) -> SttTerm {
        lam_r(forall_worlds(
            &["S", "T", "U"],
            SttTerm::implies(
                SttTerm::conj(r_at("S", "T"), r_at("S", "U")),
                r_at("T", "U"),
            ),
        ))
    }
    fn holds(&self, n: usize, rel: u64) -> bool {
        (0..n).all(|s| {
            (0..n).all(|t| {
                !has(rel, n, s, t) || (0..n).all(|u| !has(rel, n, s, u) || has(rel, n, t, u))
            })
        })
    }
    fn axiom(&self, rel: &RelExpr) -> ModalFormula {
        // ! A. dia A => box dia A
        schema_a(|a| ModalFormula::impl_(mdia(rel, a.clone()), mbox(rel, mdia(rel, a))))
    }
}

impl FrameCondition for PartiallyFunctional {
    fn key(&self) -> PropertyName {
        PropertyName::PartiallyFunctional
    }
    fn label(&self) -> &'static str {
        "pfun"
    }
    fn definition(&self) -> SttTerm {
        lam_r(forall_worlds(
            &["S", "T", "U"],
            SttTerm::implies(
                SttTerm::conj(r_at("S", "T"), r_at("S", "U")),
                world_eq("T", "U"),
            ),
        ))
    }
    fn holds(&self, n: usize, rel: u64) -> bool {
        (0..n).all(|s| (0..n).filter(|&t| has(rel, n, s, t)).count() <= 1)
    }
    fn axiom(&self, rel: &RelExpr) -> ModalFormula {
        // ! A. dia A => box A
        schema_a(|a| ModalFormula::impl_(mdia(rel, a.clone()), mbox(rel, a)))
    }
}

impl FrameCondition for Functional {
    fn key(&self) -> PropertyName {
        PropertyName::Functional
    }
    fn label(&self) -> &'static str {
        "fun"
    }
    fn definition(&self) -> SttTerm {
        // ^ R. ! S. ? T. R S T & ! U. R S U => T = U
        lam_r(forall_worlds(
            &["S"],
            exists_world(
                "T",
                SttTerm::conj(
                    r_at("S", "T"),
                    forall_worlds(
                        &["U"],
                        SttTerm::implies(r_at("S", "U"), world_eq("T", "U")),
                    ),
                ),
            ),
        ))
    }
    fn holds(&self, n: usize, rel: u64) -> bool {
        (0..n).all(|s| (0..n).filter(|&t| has(rel, n, s, t)).count() == 1)
    }
    fn axiom(&self, rel: &RelExpr) -> ModalFormula {
        // ! A. dia A <=> box A
        schema_a(|a| ModalFormula::iff(mdia(rel, a.clone()), mbox(rel, a)))
    }
}

impl FrameCondition for WeaklyDense {
    fn key(&self) -> PropertyName {
        PropertyName::WeaklyDense
    }
    fn label(&self) -> &'static str {
        "wdense"
    }
    fn definition(&self) -> SttTerm {
        lam_r(forall_worlds(
            &["S", "T"],
            SttTerm::implies(
                r_at("S", "T"),
                exists_world("U", SttTerm::conj(r_at("S", "U"), r_at("U", "T"))),
            ),
        ))
    }
    fn holds(&self, n: usize, rel: u64) -> bool {
        (0..n).all(|s| {
            (0..n).all(|t| {
                !has(rel, n, s, t) || (0..n).any(|u| has(rel, n, s, u) && has(rel, n, u, t))
            })
        })
    }
    fn axiom(&self, rel: &RelExpr) -> ModalFormula {
        // ! A. box box A => box A
        schema_a(|a| ModalFormula::impl_(mbox(rel, mbox(rel, a.clone())), mbox(rel, a)))
    }
}

impl FrameCondition for WeaklyConnected {
    fn key(&self) -> PropertyName {
        PropertyName::WeaklyConnected
    }
    fn label(&self) -> &'static str {
        "wconn"
    }
    fn definition(&self) -> SttTerm {
        lam_r(forall_worlds(
            &["S", "T", "U"],
            SttTerm::implies(
                SttTerm::conj(r_at("S", "T"), r_at("S", "U")),
                SttTerm::disj(
                    r_at("T", "U"),
                    SttTerm::disj(world_eq("T", "U"), r_at("U", "T")),
                ),
            ),
        ))
    }
    fn holds(&self, n: usize, rel: u64) -> bool {
        (0..n).all(|s| {
            (0..n).all(|t| {
                !has(rel, n, s, t)
                    || (0..n).all(|u| {
                        !has(rel, n, s, u) || has(rel, n, t, u) || t == u || has(rel, n, u, t)
                    })
            })
        })
    }
    fn axiom(&self, rel: &RelExpr) -> ModalFormula {
        // ! A,B. box ((A & box A) => B) | box ((B & box B) => A)
        let a = || ModalFormula::PropVar("A".into());
        let b = || ModalFormula::PropVar("B".into());
        ModalFormula::forall_prop(
            "A",
            ModalFormula::forall_prop(
                "B",
                ModalFormula::or(
                    mbox(
                        rel,
                        ModalFormula::impl_(ModalFormula::and(a(), mbox(rel, a())), b()),
                    ),
                    mbox(
                        rel,
                        ModalFormula::impl_(ModalFormula::and(b(), mbox(rel, b())), a()),
                    ),
                ),
            ),
        )
    }
}

impl FrameCondition for WeaklyDirected {
    fn key(&self) -> PropertyName {
        PropertyName::WeaklyDirected
    }
    fn label(&self) -> &'static str {
        "wdir"
    }
    fn definition(&self) -> SttTerm {
        lam_r(forall_worlds(
            &["S", "T", "U"],
            SttTerm::implies(
                SttTerm::conj(r_at("S", "T"), r_at("S", "U")),
                exists_world("V", SttTerm::conj(r_at("T", "V"), r_at("U", "V"))),
            ),
        ))
    }
    fn holds(&self, n: usize, rel: u64) -> bool {
        (0..n).all(|s| {
            (0..n).all(|t| {
                !has(rel, n, s, t)
                    || (0..n).all(|u| {
                        !has(rel, n, s, u)
                            || (0..n).any(|v| has(rel, n, t, v) && has(rel, n, u, v))
                    })
            })
        })
    }
    fn axiom(&self, rel: &RelExpr) -> ModalFormula {
        // ! A. dia box A => box dia A
        schema_a(|a| {
            ModalFormula::impl_(mdia(rel, mbox(rel, a.clone())), mbox(rel, mdia(rel, a)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stt::TypingContext;

    fn mask(n: usize, pairs: &[(usize, usize)]) -> u64 {
        pairs.iter().fold(0, |m, (a, b)| m | 1 << (a * n + b))
    }

    #[test]
    fn registry_is_complete_and_named() {
        assert_eq!(registry().len(), 10);
        for key in PropertyName::ALL {
            let c = of(key);
            assert_eq!(c.key(), key);
            assert_eq!(lookup(c.name()).unwrap().key(), key);
        }
        assert!(lookup("nonsense").is_none());
        assert_eq!(of(PropertyName::Transitive).operator(), "mtransitive");
    }

    #[test]
    fn definitions_typecheck_as_relation_predicates() {
        let expected = SimpleType::arrow(SimpleType::rel(), SimpleType::O);
        for c in registry() {
            let ty = c
                .definition()
                .type_of(&TypingContext::new())
                .unwrap_or_else(|e| panic!("{}: {}", c.name(), e));
            assert_eq!(ty, expected, "{}", c.name());
        }
    }

    #[test]
    fn reflexive_check() {
        let c = of(PropertyName::Reflexive);
        assert!(c.holds(2, mask(2, &[(0, 0), (1, 1)])));
        assert!(!c.holds(2, mask(2, &[(0, 0)])));
    }

    #[test]
    fn transitive_check_counterexample() {
        let c = of(PropertyName::Transitive);
        // (a,b),(b,a) present, (a,a) absent
        assert!(!c.holds(2, mask(2, &[(0, 1), (1, 0)])));
        assert!(c.holds(2, mask(2, &[(0, 1)])));
    }

    #[test]
    fn weakly_dense_matches_brute_force() {
        // R weakly dense iff R is a subset of R∘R
        for n in 1..=3usize {
            let total = 1u64 << (n * n);
            for rel in 0..total {
                let brute = (0..n).all(|s| {
                    (0..n).all(|t| {
                        rel >> (s * n + t) & 1 == 0
                            || (0..n)
                                .any(|u| rel >> (s * n + u) & 1 == 1 && rel >> (u * n + t) & 1 == 1)
                    })
                });
                assert_eq!(of(PropertyName::WeaklyDense).holds(n, rel), brute);
            }
        }
    }

    #[test]
    fn one_world_degeneracy() {
        // on a single world both relations are transitive, symmetric,
        // euclidean, weakly dense, weakly connected and weakly directed
        for rel in 0..2u64 {
            for key in [
                PropertyName::Transitive,
                PropertyName::Symmetric,
                PropertyName::Euclidean,
                PropertyName::WeaklyDense,
                PropertyName::WeaklyConnected,
                PropertyName::WeaklyDirected,
            ] {
                assert!(of(key).holds(1, rel), "{key} on 1 world, rel={rel}");
            }
        }
    }
}
