//! Simply typed λ-calculus kernel over the base types `$o` (booleans),
//! `$i` (individuals) and `mu` (possible worlds).
//!
//! Terms carry Church-style type annotations. Equality on [`SttTerm`] is
//! α-equivalence; substitution is capture-avoiding; `beta_eta_normalize`
//! computes the unique βη-normal form of a well-typed term.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Reserved names for the logical constants of the kernel.
///
/// `NOT`, `OR`, `EQ` and `PI` are the primitive connectives. `AND`, `IMPL`,
/// `IFF` and `SIGMA` are derived spellings kept as distinguished constants so
/// that printed THF keeps its `&`/`=>`/`<=>`/`?` structure; definition
/// expansion reduces them to the primitives.
pub mod logic {
    pub const NOT: &str = "$not";
    pub const OR: &str = "$or";
    pub const EQ: &str = "$eq";
    pub const PI: &str = "$pi";
    pub const AND: &str = "$and";
    pub const IMPL: &str = "$impl";
    pub const IFF: &str = "$iff";
    pub const SIGMA: &str = "$sigma";

    pub fn is_reserved(name: &str) -> bool {
        matches!(name, NOT | OR | EQ | PI | AND | IMPL | IFF | SIGMA)
    }
}

/// A simple type: `$o`, `$i`, `mu`, or a function type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SimpleType {
    O,
    Iota,
    Mu,
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn arrow(dom: SimpleType, cod: SimpleType) -> SimpleType {
        SimpleType::Arrow(Box::new(dom), Box::new(cod))
    }

    /// `a1 > a2 > ... > ret`, right associated.
    pub fn fun(args: &[SimpleType], ret: SimpleType) -> SimpleType {
        args.iter()
            .rev()
            .fold(ret, |acc, a| SimpleType::arrow(a.clone(), acc))
    }

    /// The type of modal propositions, `mu > $o`.
    pub fn prop() -> SimpleType {
        SimpleType::arrow(SimpleType::Mu, SimpleType::O)
    }

    /// The type of accessibility relations, `mu > mu > $o`.
    pub fn rel() -> SimpleType {
        SimpleType::arrow(SimpleType::Mu, SimpleType::prop())
    }

    /// The type of relation-valued functors such as `wife`,
    /// `(mu > mu > $o) > mu > mu > $o`.
    pub fn rel_functor() -> SimpleType {
        SimpleType::arrow(SimpleType::rel(), SimpleType::rel())
    }

    /// The type of an n-ary predicate constant, `$i > ... > $i > mu > $o`.
    pub fn predicate(arity: usize) -> SimpleType {
        let mut ty = SimpleType::prop();
        for _ in 0..arity {
            ty = SimpleType::arrow(SimpleType::Iota, ty);
        }
        ty
    }

    pub fn as_arrow(&self) -> Option<(&SimpleType, &SimpleType)> {
        match self {
            SimpleType::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::O => write!(f, "$o"),
            SimpleType::Iota => write!(f, "$i"),
            SimpleType::Mu => write!(f, "mu"),
            SimpleType::Arrow(a, b) => {
                if a.as_arrow().is_some() {
                    write!(f, "( {} ) > {}", a, b)
                } else {
                    write!(f, "{} > {}", a, b)
                }
            }
        }
    }
}

impl fmt::Debug for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A term of the simply typed λ-calculus.
///
/// The logical constants ¬, ∨, = and Π (and the derived ∧, ⇒, ⇔, Σ) are
/// `Const` nodes with the reserved names from [`logic`]; `=`, `Π` and `Σ` are
/// type-indexed families, so their instances carry the concrete type.
#[derive(Clone)]
pub enum SttTerm {
    Const(String, SimpleType),
    Var(String, SimpleType),
    Lam(String, SimpleType, Box<SttTerm>),
    App(Box<SttTerm>, Box<SttTerm>),
}

/// Typing environment for the free variables of a term. Lookup is
/// innermost-first, so shadowed bindings resolve to the most recent one.
#[derive(Clone, Default)]
pub struct TypingContext {
    entries: Vec<(String, SimpleType)>,
}

impl TypingContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, ty: SimpleType) {
        self.entries.push((name.into(), ty));
    }

    pub fn lookup(&self, name: &str) -> Option<&SimpleType> {
        self.entries
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
    }

    fn pop(&mut self) {
        self.entries.pop();
    }

    /// A context that assigns every free variable of `t` its annotated type.
    pub fn for_term(t: &SttTerm) -> Self {
        let mut ctx = Self::new();
        let mut seen = BTreeSet::new();
        collect_free_vars(t, &mut Vec::new(), &mut |name, ty| {
            if seen.insert(name.to_string()) {
                ctx.bind(name, ty.clone());
            }
        });
        ctx
    }
}

fn collect_free_vars<'t>(
    t: &'t SttTerm,
    bound: &mut Vec<&'t str>,
    out: &mut impl FnMut(&str, &SimpleType),
) {
    match t {
        SttTerm::Const(..) => {}
        SttTerm::Var(name, ty) => {
            if !bound.iter().any(|b| b == name) {
                out(name, ty);
            }
        }
        SttTerm::Lam(x, _, body) => {
            bound.push(x);
            collect_free_vars(body, bound, out);
            bound.pop();
        }
        SttTerm::App(f, a) => {
            collect_free_vars(f, bound, out);
            collect_free_vars(a, bound, out);
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("type mismatch at `{at}`: expected {expected}, found {found}")]
    TypeMismatch {
        expected: SimpleType,
        found: SimpleType,
        at: String,
    },
    #[error("`{at}` is applied but has non-function type {found}")]
    NotAFunction { found: SimpleType, at: String },
    #[error("reserved constant `{name}` used at invalid type {found}")]
    BadLogicalConstant { name: String, found: SimpleType },
}

impl SttTerm {
    pub fn var(name: impl Into<String>, ty: SimpleType) -> SttTerm {
        SttTerm::Var(name.into(), ty)
    }

    pub fn cnst(name: impl Into<String>, ty: SimpleType) -> SttTerm {
        SttTerm::Const(name.into(), ty)
    }

    pub fn lam(x: impl Into<String>, ty: SimpleType, body: SttTerm) -> SttTerm {
        SttTerm::Lam(x.into(), ty, Box::new(body))
    }

    pub fn lams(binders: &[(&str, SimpleType)], body: SttTerm) -> SttTerm {
        binders
            .iter()
            .rev()
            .fold(body, |acc, (x, ty)| SttTerm::lam(*x, ty.clone(), acc))
    }

    pub fn app(f: SttTerm, a: SttTerm) -> SttTerm {
        SttTerm::App(Box::new(f), Box::new(a))
    }

    pub fn apps(f: SttTerm, args: impl IntoIterator<Item = SttTerm>) -> SttTerm {
        args.into_iter().fold(f, SttTerm::app)
    }

    pub fn neg(t: SttTerm) -> SttTerm {
        let not_ty = SimpleType::arrow(SimpleType::O, SimpleType::O);
        SttTerm::app(SttTerm::cnst(logic::NOT, not_ty), t)
    }

    fn binop(name: &str, a: SttTerm, b: SttTerm) -> SttTerm {
        let ty = SimpleType::fun(&[SimpleType::O, SimpleType::O], SimpleType::O);
        SttTerm::apps(SttTerm::cnst(name, ty), [a, b])
    }

    pub fn disj(a: SttTerm, b: SttTerm) -> SttTerm {
        Self::binop(logic::OR, a, b)
    }

    pub fn conj(a: SttTerm, b: SttTerm) -> SttTerm {
        Self::binop(logic::AND, a, b)
    }

    pub fn implies(a: SttTerm, b: SttTerm) -> SttTerm {
        Self::binop(logic::IMPL, a, b)
    }

    pub fn iff(a: SttTerm, b: SttTerm) -> SttTerm {
        Self::binop(logic::IFF, a, b)
    }

    pub fn equal(ty: SimpleType, a: SttTerm, b: SttTerm) -> SttTerm {
        let eq_ty = SimpleType::fun(&[ty.clone(), ty], SimpleType::O);
        SttTerm::apps(SttTerm::cnst(logic::EQ, eq_ty), [a, b])
    }

    pub fn forall(x: impl Into<String>, ty: SimpleType, body: SttTerm) -> SttTerm {
        let pi_ty = SimpleType::arrow(
            SimpleType::arrow(ty.clone(), SimpleType::O),
            SimpleType::O,
        );
        SttTerm::app(SttTerm::cnst(logic::PI, pi_ty), SttTerm::lam(x, ty, body))
    }

    pub fn exists(x: impl Into<String>, ty: SimpleType, body: SttTerm) -> SttTerm {
        let sigma_ty = SimpleType::arrow(
            SimpleType::arrow(ty.clone(), SimpleType::O),
            SimpleType::O,
        );
        SttTerm::app(
            SttTerm::cnst(logic::SIGMA, sigma_ty),
            SttTerm::lam(x, ty, body),
        )
    }

    /// The true proposition, realized as `(^ [X: $o]: X) = (^ [X: $o]: X)`.
    pub fn truth() -> SttTerm {
        let id = SttTerm::lam("X", SimpleType::O, SttTerm::var("X", SimpleType::O));
        SttTerm::equal(
            SimpleType::arrow(SimpleType::O, SimpleType::O),
            id.clone(),
            id,
        )
    }

    /// Free variables, by name.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_free_vars(self, &mut Vec::new(), &mut |name, _| {
            out.insert(name.to_string());
        });
        out
    }

    /// Names of all `Const` nodes in the term.
    pub fn constants(&self) -> BTreeSet<String> {
        fn go(t: &SttTerm, out: &mut BTreeSet<String>) {
            match t {
                SttTerm::Const(name, _) => {
                    out.insert(name.clone());
                }
                SttTerm::Var(..) => {}
                SttTerm::Lam(_, _, b) => go(b, out),
                SttTerm::App(f, a) => {
                    go(f, out);
                    go(a, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// Splits an application spine into its head and argument list.
    pub fn spine(&self) -> (&SttTerm, Vec<&SttTerm>) {
        let mut head = self;
        let mut args = Vec::new();
        while let SttTerm::App(f, a) = head {
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// Type of the term under `ctx`. Free variables must be bound in `ctx`
    /// and their annotations must agree with it; the reserved logical
    /// constants are validated against their type schemes.
    pub fn type_of(&self, ctx: &TypingContext) -> Result<SimpleType, TypeError> {
        let mut ctx = ctx.clone();
        self.type_of_inner(&mut ctx)
    }

    fn type_of_inner(&self, ctx: &mut TypingContext) -> Result<SimpleType, TypeError> {
        match self {
            SttTerm::Const(name, ty) => {
                if logic::is_reserved(name) && !valid_logical_scheme(name, ty) {
                    return Err(TypeError::BadLogicalConstant {
                        name: name.clone(),
                        found: ty.clone(),
                    });
                }
                Ok(ty.clone())
            }
            SttTerm::Var(name, ty) => match ctx.lookup(name) {
                None => Err(TypeError::UnboundVariable(name.clone())),
                Some(bound) if bound == ty => Ok(ty.clone()),
                Some(bound) => Err(TypeError::TypeMismatch {
                    expected: bound.clone(),
                    found: ty.clone(),
                    at: name.clone(),
                }),
            },
            SttTerm::Lam(x, ty, body) => {
                ctx.bind(x.clone(), ty.clone());
                let body_ty = body.type_of_inner(ctx)?;
                ctx.pop();
                Ok(SimpleType::arrow(ty.clone(), body_ty))
            }
            SttTerm::App(f, a) => {
                let f_ty = f.type_of_inner(ctx)?;
                let a_ty = a.type_of_inner(ctx)?;
                match f_ty.as_arrow() {
                    Some((dom, cod)) => {
                        if *dom == a_ty {
                            Ok(cod.clone())
                        } else {
                            Err(TypeError::TypeMismatch {
                                expected: dom.clone(),
                                found: a_ty,
                                at: a.to_string(),
                            })
                        }
                    }
                    None => Err(TypeError::NotAFunction {
                        found: f_ty,
                        at: f.to_string(),
                    }),
                }
            }
        }
    }

    /// Capture-avoiding substitution of `repl` for the free variable `x`.
    pub fn substitute(&self, x: &str, repl: &SttTerm) -> SttTerm {
        match self {
            SttTerm::Const(..) => self.clone(),
            SttTerm::Var(name, _) => {
                if name == x {
                    repl.clone()
                } else {
                    self.clone()
                }
            }
            SttTerm::Lam(y, ty, body) => {
                if y == x {
                    // x is shadowed; the bound occurrence stays untouched.
                    self.clone()
                } else if repl_free(repl, y) && body_mentions(body, x) {
                    let avoid: BTreeSet<String> = body
                        .free_vars()
                        .union(&repl.free_vars())
                        .cloned()
                        .collect();
                    let fresh = fresh_name(y, &avoid);
                    let renamed = body.substitute(y, &SttTerm::var(fresh.clone(), ty.clone()));
                    SttTerm::lam(fresh, ty.clone(), renamed.substitute(x, repl))
                } else {
                    SttTerm::lam(y.clone(), ty.clone(), body.substitute(x, repl))
                }
            }
            SttTerm::App(f, a) => SttTerm::app(f.substitute(x, repl), a.substitute(x, repl)),
        }
    }
}

fn repl_free(repl: &SttTerm, y: &str) -> bool {
    repl.free_vars().contains(y)
}

fn body_mentions(body: &SttTerm, x: &str) -> bool {
    body.free_vars().contains(x)
}

fn valid_logical_scheme(name: &str, ty: &SimpleType) -> bool {
    use SimpleType::*;
    match name {
        logic::NOT => *ty == SimpleType::arrow(O, O),
        logic::OR | logic::AND | logic::IMPL | logic::IFF => {
            *ty == SimpleType::fun(&[O, O], O)
        }
        logic::EQ => match ty.as_arrow() {
            Some((a, rest)) => match rest.as_arrow() {
                Some((b, r)) => a == b && *r == O,
                None => false,
            },
            None => false,
        },
        logic::PI | logic::SIGMA => match ty.as_arrow() {
            Some((dom, cod)) => {
                *cod == O && matches!(dom.as_arrow(), Some((_, inner)) if *inner == O)
            }
            None => false,
        },
        _ => false,
    }
}

/// Deterministic fresh-name generation: `base`, then `base_1`, `base_2`, ...
/// first candidate not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = stem.strip_suffix('_').unwrap_or(stem);
    let stem = if stem.is_empty() { "X" } else { stem };
    if !avoid.contains(base) {
        return base.to_string();
    }
    let mut n = 1usize;
    loop {
        let candidate = format!("{stem}_{n}");
        if !avoid.contains(&candidate) {
            return candidate;
        }
        n += 1;
    }
}

/// β-normal form by leftmost-outermost reduction. Terminates on well-typed
/// input (simple types are strongly normalizing).
fn beta_normalize(t: &SttTerm) -> SttTerm {
    match whnf(t.clone()) {
        SttTerm::Lam(x, ty, body) => SttTerm::lam(x, ty, beta_normalize(&body)),
        SttTerm::App(f, a) => {
            // After whnf the head of the spine is a variable or constant.
            SttTerm::app(beta_normalize(&f), beta_normalize(&a))
        }
        atom => atom,
    }
}

fn whnf(t: SttTerm) -> SttTerm {
    match t {
        SttTerm::App(f, a) => match whnf(*f) {
            SttTerm::Lam(x, _, body) => whnf(body.substitute(&x, &a)),
            f_nf => SttTerm::App(Box::new(f_nf), a),
        },
        other => other,
    }
}

/// η-contraction, bottom-up to a fixpoint: `^ [X]: (f @ X)` becomes `f`
/// whenever `X` is not free in `f`. Input is expected to be β-normal.
fn eta_contract(t: &SttTerm) -> SttTerm {
    match t {
        SttTerm::Const(..) | SttTerm::Var(..) => t.clone(),
        SttTerm::App(f, a) => SttTerm::app(eta_contract(f), eta_contract(a)),
        SttTerm::Lam(x, ty, body) => {
            let body = eta_contract(body);
            if let SttTerm::App(f, a) = &body {
                if matches!(a.as_ref(), SttTerm::Var(name, _) if name == x)
                    && !f.free_vars().contains(x)
                {
                    return f.as_ref().clone();
                }
            }
            SttTerm::lam(x.clone(), ty.clone(), body)
        }
    }
}

/// The βη-normal form of a well-typed term; idempotent and type-preserving.
pub fn beta_eta_normalize(t: &SttTerm) -> SttTerm {
    eta_contract(&beta_normalize(t))
}

/// True iff the terms differ only in the names of bound variables.
pub fn alpha_eq(a: &SttTerm, b: &SttTerm) -> bool {
    fn go(a: &SttTerm, b: &SttTerm, env_a: &mut Vec<String>, env_b: &mut Vec<String>) -> bool {
        match (a, b) {
            (SttTerm::Const(n1, t1), SttTerm::Const(n2, t2)) => n1 == n2 && t1 == t2,
            (SttTerm::Var(n1, t1), SttTerm::Var(n2, t2)) => {
                let i1 = env_a.iter().rposition(|n| n == n1);
                let i2 = env_b.iter().rposition(|n| n == n2);
                match (i1, i2) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => n1 == n2 && t1 == t2,
                    _ => false,
                }
            }
            (SttTerm::Lam(x1, t1, b1), SttTerm::Lam(x2, t2, b2)) => {
                if t1 != t2 {
                    return false;
                }
                env_a.push(x1.clone());
                env_b.push(x2.clone());
                let r = go(b1, b2, env_a, env_b);
                env_a.pop();
                env_b.pop();
                r
            }
            (SttTerm::App(f1, a1), SttTerm::App(f2, a2)) => {
                go(f1, f2, env_a, env_b) && go(a1, a2, env_a, env_b)
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new(), &mut Vec::new())
}

impl PartialEq for SttTerm {
    fn eq(&self, other: &Self) -> bool {
        alpha_eq(self, other)
    }
}

impl Eq for SttTerm {}

// ---------------------------------------------------------------------------
// Printing (THF style)
// ---------------------------------------------------------------------------

/// Quantifier or binder spellings used by the printer.
fn binder_symbol(name: &str) -> Option<&'static str> {
    match name {
        logic::PI => Some("!"),
        logic::SIGMA => Some("?"),
        _ => None,
    }
}

fn infix_symbol(name: &str) -> Option<&'static str> {
    match name {
        logic::OR => Some("|"),
        logic::AND => Some("&"),
        logic::IMPL => Some("=>"),
        logic::IFF => Some("<=>"),
        logic::EQ => Some("="),
        _ => None,
    }
}

fn render_binder_group(sym: &str, first: &str, first_ty: &SimpleType, body: &SttTerm) -> String {
    let mut binders = vec![format!("{first}: {first_ty}")];
    let mut rest = body;
    loop {
        match rest {
            // a chain of the same quantifier collapses into one bracket group
            SttTerm::App(f, a) if sym != "^" => {
                if let (SttTerm::Const(name, _), SttTerm::Lam(x, ty, inner)) =
                    (f.as_ref(), a.as_ref())
                {
                    if binder_symbol(name) == Some(sym) {
                        binders.push(format!("{x}: {ty}"));
                        rest = inner;
                        continue;
                    }
                }
                break;
            }
            SttTerm::Lam(x, ty, inner) if sym == "^" => {
                binders.push(format!("{x}: {ty}"));
                rest = inner;
                continue;
            }
            _ => break,
        }
    }
    format!("{sym} [{}]: {}", binders.join(","), render(rest))
}

/// Renders a term as a THF0 fragment: `^`/`!`/`?` binders with typed
/// brackets, `@` application spines, infix connectives.
pub fn render(t: &SttTerm) -> String {
    match t {
        SttTerm::Var(name, _) => name.clone(),
        SttTerm::Const(name, _) => match name.as_str() {
            logic::NOT => "(~)".to_string(),
            logic::PI => "(!!)".to_string(),
            logic::SIGMA => "(??)".to_string(),
            other => infix_symbol(other)
                .map(|s| format!("({s})"))
                .unwrap_or_else(|| other.to_string()),
        },
        SttTerm::Lam(x, ty, body) => render_binder_group("^", x, ty, body),
        SttTerm::App(..) => {
            let (head, args) = t.spine();
            if let SttTerm::Const(name, _) = head {
                if name == logic::NOT && args.len() == 1 {
                    return format!("~ {}", render_atomic(args[0]));
                }
                if let Some(op) = infix_symbol(name) {
                    if args.len() == 2 {
                        return format!(
                            "( {} {} {} )",
                            render_atomic(args[0]),
                            op,
                            render_atomic(args[1])
                        );
                    }
                }
                if let Some(sym) = binder_symbol(name) {
                    if args.len() == 1 {
                        if let SttTerm::Lam(x, ty, body) = args[0] {
                            return render_binder_group(sym, x, ty, body);
                        }
                    }
                }
            }
            let mut parts = vec![render_head(head)];
            for (i, a) in args.iter().enumerate() {
                let last = i + 1 == args.len();
                parts.push(render_arg(a, last));
            }
            format!("( {} )", parts.join(" @ "))
        }
    }
}

fn render_head(t: &SttTerm) -> String {
    match t {
        SttTerm::Lam(..) => format!("( {} )", render(t)),
        _ => render(t),
    }
}

/// Argument position: binders may appear bare only as the final argument.
fn render_arg(t: &SttTerm, last: bool) -> String {
    let needs_parens = match t {
        SttTerm::Lam(..) => !last,
        SttTerm::App(..) => {
            let (head, args) = t.spine();
            if let SttTerm::Const(name, _) = head {
                // quantified subterms render bare only in final position
                binder_symbol(name).is_some() && args.len() == 1 && !last
            } else {
                false
            }
        }
        _ => false,
    };
    if needs_parens {
        format!("( {} )", render(t))
    } else {
        render(t)
    }
}

/// Like [`render`] but wraps binder forms in parentheses, for operand
/// positions of infix connectives and `~`.
fn render_atomic(t: &SttTerm) -> String {
    let is_binder_form = match t {
        SttTerm::Lam(..) => true,
        SttTerm::App(..) => {
            let (head, args) = t.spine();
            matches!(head, SttTerm::Const(name, _)
                if binder_symbol(name).is_some() && args.len() == 1)
        }
        _ => false,
    };
    if is_binder_form {
        format!("( {} )", render(t))
    } else {
        render(t)
    }
}

impl fmt::Display for SttTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}

impl fmt::Debug for SttTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SimpleType::{Iota, Mu, O};

    fn p_mu_o() -> SimpleType {
        SimpleType::prop()
    }

    #[test]
    fn type_of_identity() {
        let t = SttTerm::lam("X", Mu, SttTerm::var("X", Mu));
        let ty = t.type_of(&TypingContext::new()).unwrap();
        assert_eq!(ty, SimpleType::arrow(Mu, Mu));
    }

    #[test]
    fn type_of_negated_prop_constant() {
        let t = SttTerm::neg(SttTerm::cnst("p", O));
        assert_eq!(t.type_of(&TypingContext::new()).unwrap(), O);
    }

    #[test]
    fn type_of_paper_normal_form() {
        // ! [W: mu]: ! [Y: mu]: ( ~(r W Y) | ~ ! [X: mu > $o]: ~(X Y) )
        let r = SttTerm::cnst("r", SimpleType::rel());
        let body = SttTerm::disj(
            SttTerm::neg(SttTerm::apps(
                r,
                [SttTerm::var("W", Mu), SttTerm::var("Y", Mu)],
            )),
            SttTerm::neg(SttTerm::forall(
                "X",
                p_mu_o(),
                SttTerm::neg(SttTerm::app(
                    SttTerm::var("X", p_mu_o()),
                    SttTerm::var("Y", Mu),
                )),
            )),
        );
        let t = SttTerm::forall("W", Mu, SttTerm::forall("Y", Mu, body));
        assert_eq!(t.type_of(&TypingContext::new()).unwrap(), O);
    }

    #[test]
    fn type_errors() {
        let unbound = SttTerm::var("Z", Mu);
        assert_eq!(
            unbound.type_of(&TypingContext::new()),
            Err(TypeError::UnboundVariable("Z".into()))
        );

        let ill = SttTerm::app(
            SttTerm::lam("X", Mu, SttTerm::var("X", Mu)),
            SttTerm::cnst("p", O),
        );
        assert!(matches!(
            ill.type_of(&TypingContext::new()),
            Err(TypeError::TypeMismatch { .. })
        ));

        let bad_const = SttTerm::cnst(logic::NOT, Mu);
        assert!(matches!(
            bad_const.type_of(&TypingContext::new()),
            Err(TypeError::BadLogicalConstant { .. })
        ));
    }

    #[test]
    fn substitute_identity_and_shadowing() {
        let s = SttTerm::cnst("c", Mu);
        let x = SttTerm::var("X", Mu);
        assert_eq!(x.substitute("X", &s), s);

        // bound occurrence untouched
        let id = SttTerm::lam("X", Mu, SttTerm::var("X", Mu));
        assert_eq!(id.substitute("X", &s), id);
    }

    #[test]
    fn substitute_avoids_capture() {
        // (^ [Y: mu]: X){X := Y}  must rename the binder
        let t = SttTerm::lam("Y", Mu, SttTerm::var("X", Mu));
        let got = t.substitute("X", &SttTerm::var("Y", Mu));
        let expected = SttTerm::lam("Z", Mu, SttTerm::var("Y", Mu));
        assert!(alpha_eq(&got, &expected));
        // and the result must not capture: body is the free Y
        if let SttTerm::Lam(b, _, body) = &got {
            assert_ne!(b, "Y");
            assert_eq!(**body, SttTerm::var("Y", Mu));
        } else {
            panic!("expected lambda");
        }
    }

    #[test]
    fn beta_redex_reduces() {
        let t = SttTerm::app(
            SttTerm::lam("X", p_mu_o(), SttTerm::var("X", p_mu_o())),
            SttTerm::cnst("p", p_mu_o()),
        );
        assert_eq!(beta_eta_normalize(&t), SttTerm::cnst("p", p_mu_o()));
    }

    #[test]
    fn eta_redex_reduces() {
        let f = SttTerm::cnst("f", SimpleType::arrow(Mu, O));
        let t = SttTerm::lam("X", Mu, SttTerm::app(f.clone(), SttTerm::var("X", Mu)));
        assert_eq!(beta_eta_normalize(&t), f);
    }

    #[test]
    fn eta_contraction_cascades() {
        // ^ [Y: mu]: ^ [X: mu]: ((g Y) X)  -->  g
        let g = SttTerm::cnst("g", SimpleType::arrow(Mu, SimpleType::arrow(Mu, O)));
        let t = SttTerm::lam(
            "Y",
            Mu,
            SttTerm::lam(
                "X",
                Mu,
                SttTerm::app(
                    SttTerm::app(g.clone(), SttTerm::var("Y", Mu)),
                    SttTerm::var("X", Mu),
                ),
            ),
        );
        assert_eq!(beta_eta_normalize(&t), g);
    }

    #[test]
    fn normalize_is_idempotent() {
        let t = SttTerm::app(
            SttTerm::lam(
                "F",
                SimpleType::arrow(Mu, Mu),
                SttTerm::lam(
                    "X",
                    Mu,
                    SttTerm::app(
                        SttTerm::var("F", SimpleType::arrow(Mu, Mu)),
                        SttTerm::var("X", Mu),
                    ),
                ),
            ),
            SttTerm::lam("Y", Mu, SttTerm::var("Y", Mu)),
        );
        let once = beta_eta_normalize(&t);
        let twice = beta_eta_normalize(&once);
        assert!(alpha_eq(&once, &twice));
    }

    #[test]
    fn alpha_equality() {
        let a = SttTerm::lam("X", Mu, SttTerm::var("X", Mu));
        let b = SttTerm::lam("Y", Mu, SttTerm::var("Y", Mu));
        assert_eq!(a, b);

        let c = SttTerm::lam("X", Mu, SttTerm::lam("Y", Mu, SttTerm::var("X", Mu)));
        let d = SttTerm::lam("Y", Mu, SttTerm::lam("X", Mu, SttTerm::var("X", Mu)));
        assert_ne!(c, d);

        // free variables compare by name
        assert_ne!(SttTerm::var("X", Mu), SttTerm::var("Y", Mu));
    }

    #[test]
    fn subject_reduction_on_sample() {
        let t = SttTerm::app(
            SttTerm::lam("P", p_mu_o(), SttTerm::neg(SttTerm::truth())),
            SttTerm::cnst("q", p_mu_o()),
        );
        let ctx = TypingContext::new();
        let before = t.type_of(&ctx).unwrap();
        let after = beta_eta_normalize(&t).type_of(&ctx).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn fresh_names_are_deterministic() {
        let mut avoid = BTreeSet::new();
        avoid.insert("V".to_string());
        avoid.insert("V_1".to_string());
        assert_eq!(fresh_name("V", &avoid), "V_2");
        assert_eq!(fresh_name("W", &avoid), "W");
    }

    #[test]
    fn type_display() {
        assert_eq!(SimpleType::rel().to_string(), "mu > mu > $o");
        assert_eq!(
            SimpleType::rel_functor().to_string(),
            "( mu > mu > $o ) > mu > mu > $o"
        );
        assert_eq!(SimpleType::predicate(1).to_string(), "$i > mu > $o");
    }

    #[test]
    fn render_binders_and_infix() {
        let t = SttTerm::forall(
            "S",
            Mu,
            SttTerm::forall(
                "T",
                Mu,
                SttTerm::implies(
                    SttTerm::apps(
                        SttTerm::var("R", SimpleType::rel()),
                        [SttTerm::var("S", Mu), SttTerm::var("T", Mu)],
                    ),
                    SttTerm::apps(
                        SttTerm::var("R", SimpleType::rel()),
                        [SttTerm::var("T", Mu), SttTerm::var("S", Mu)],
                    ),
                ),
            ),
        );
        assert_eq!(
            render(&t),
            "! [S: mu,T: mu]: ( ( R @ S @ T ) => ( R @ T @ S ) )"
        );
    }

    #[test]
    fn render_lambda_spine() {
        let t = SttTerm::lam(
            "A",
            p_mu_o(),
            SttTerm::apps(
                SttTerm::cnst("mbox", SimpleType::arrow(SimpleType::rel(), SimpleType::arrow(p_mu_o(), p_mu_o()))),
                [SttTerm::cnst("r", SimpleType::rel()), SttTerm::var("A", p_mu_o())],
            ),
        );
        assert_eq!(render(&t), "^ [A: mu > $o]: ( mbox @ r @ A )");
    }

    #[test]
    fn alpha_eq_is_equivalence_on_samples() {
        let samples = [
            SttTerm::lam("X", Mu, SttTerm::var("X", Mu)),
            SttTerm::lam("Y", Mu, SttTerm::var("Y", Mu)),
            SttTerm::truth(),
            SttTerm::forall("W", Mu, SttTerm::cnst("p", O)),
            SttTerm::var("A", Iota),
        ];
        for a in &samples {
            assert!(alpha_eq(a, a));
            for b in &samples {
                assert_eq!(alpha_eq(a, b), alpha_eq(b, a));
                for c in &samples {
                    if alpha_eq(a, b) && alpha_eq(b, c) {
                        assert!(alpha_eq(a, c));
                    }
                }
            }
        }
    }
}
