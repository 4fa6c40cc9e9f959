//! TPTP THF0 output: the operator library `QML.ax` and per-problem files.
//!
//! Rendering follows the THF0 conventions: `^`/`!`/`?` binders with typed
//! bracket groups, `@` application, `mu` for the world type, `$i` for
//! individuals. Output is deterministic; golden comparisons normalize
//! whitespace by comparing token streams.

use std::fmt;

use thiserror::Error;

use crate::embed::{DefinitionTable, FUTURE, PAST};
use crate::properties;
use crate::stt::render as render_term;
use crate::syntax::{MetaFormula, ModalFormula, ProblemFile, RelExpr, Signature};

pub const LIBRARY_FILE: &str = "QML.ax";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThfRole {
    Type,
    Definition,
    Axiom,
    Conjecture,
}

impl fmt::Display for ThfRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThfRole::Type => write!(f, "type"),
            ThfRole::Definition => write!(f, "definition"),
            ThfRole::Axiom => write!(f, "axiom"),
            ThfRole::Conjecture => write!(f, "conjecture"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ThfFormula {
    pub name: String,
    pub role: ThfRole,
    pub body: String,
}

impl ThfFormula {
    pub fn render(&self) -> String {
        format!("thf({},{},( {} )).", self.name, self.role, self.body)
    }
}

/// An ordered THF document: header comments, include lines, formulas.
#[derive(Clone, Debug, Default)]
pub struct ThfDocument {
    pub header: Vec<String>,
    pub includes: Vec<String>,
    pub formulas: Vec<ThfFormula>,
}

impl ThfDocument {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.header {
            out.push_str(&format!("% {line}\n"));
        }
        if !self.header.is_empty() {
            out.push('\n');
        }
        for inc in &self.includes {
            out.push_str(&format!("include('{inc}').\n"));
        }
        if !self.includes.is_empty() {
            out.push('\n');
        }
        for f in &self.formulas {
            out.push_str(&f.render());
            out.push('\n');
        }
        out
    }

    pub fn formula(&self, name: &str) -> Option<&ThfFormula> {
        self.formulas.iter().find(|f| f.name == name)
    }

    /// Names this document declares or defines.
    fn declared_symbols(&self) -> Vec<String> {
        self.formulas
            .iter()
            .filter(|f| matches!(f.role, ThfRole::Type | ThfRole::Definition))
            .map(|f| {
                // a type declaration `name: ty` declares `name`; definitions
                // are named after their operator with a `name = ...` body
                f.body
                    .split([':', '='])
                    .next()
                    .unwrap_or("")
                    .trim()
                    .to_string()
            })
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmitError {
    #[error("problem `{0}` has no conjecture; nothing to emit")]
    NoConjecture(String),
    #[error("symbol `{0}` collides with a library operator")]
    NameCollision(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LintError {
    #[error("formula `{name}`: unbalanced `{what}`")]
    Unbalanced { name: String, what: String },
    #[error("formula `{name}`: symbol `{symbol}` used before declaration")]
    UndeclaredSymbol { name: String, symbol: String },
    #[error("formula `{name}`: variable `{var}` is not bound by any binder")]
    UnboundVariable { name: String, var: String },
    #[error("conjecture `{0}` is not the last formula")]
    ConjectureNotLast(String),
    #[error("duplicate formula name `{0}`")]
    DuplicateFormula(String),
}

// ---------------------------------------------------------------------------
// Rendering of modal and meta formulas via the operator names
// ---------------------------------------------------------------------------

pub fn render_rel(r: &RelExpr) -> String {
    match r {
        RelExpr::Const(n) | RelExpr::Var(n) => n.clone(),
        RelExpr::Applied(f, a) => format!("( {} @ {} )", f, render_rel(a)),
    }
}

/// THF text of a modal formula, using the library operator names
/// (`mbox`, `mimpl`, ...), with sugar connectives kept as their operators.
pub fn render_modal(f: &ModalFormula) -> String {
    use ModalFormula::*;
    match f {
        PropVar(p) => p.clone(),
        PropConst(c) => c.clone(),
        Top => "mtrue".to_string(),
        Bot => "mfalse".to_string(),
        Atom(k, args) => {
            let mut parts = vec![k.clone()];
            parts.extend(args.iter().map(|a| a.name().to_string()));
            format!("( {} )", parts.join(" @ "))
        }
        Not(a) => format!("( mnot @ {} )", render_modal(a)),
        Or(a, b) => format!("( mor @ {} @ {} )", render_modal(a), render_modal(b)),
        And(a, b) => format!("( mand @ {} @ {} )", render_modal(a), render_modal(b)),
        Impl(a, b) => format!("( mimpl @ {} @ {} )", render_modal(a), render_modal(b)),
        Iff(a, b) => format!("( mequiv @ {} @ {} )", render_modal(a), render_modal(b)),
        Box(r, a) => format!("( mbox @ {} @ {} )", render_rel(r), render_modal(a)),
        Dia(r, a) => format!("( mdia @ {} @ {} )", render_rel(r), render_modal(a)),
        ForallInd(x, a) => format!("( mall_ind @ ^ [{x}: $i] : {} )", render_modal(a)),
        ExistsInd(x, a) => format!("( mexi_ind @ ^ [{x}: $i] : {} )", render_modal(a)),
        ForallProp(p, a) => format!("( mall_prop @ ^ [{p}: mu > $o] : {} )", render_modal(a)),
        ExistsProp(p, a) => format!("( mexi_prop @ ^ [{p}: mu > $o] : {} )", render_modal(a)),
    }
}

/// THF text of a meta formula; validity wraps the modal formula in
/// `mvalid`, relation quantifiers are native `!`/`?` at `mu > mu > $o`.
pub fn render_meta(m: &MetaFormula) -> String {
    match m {
        MetaFormula::Valid(f) => format!("( mvalid @ {} )", render_modal(f)),
        MetaFormula::HasProperty(p, r) => {
            format!("( {} @ {} )", properties::of(*p).operator(), render_rel(r))
        }
        MetaFormula::Inverse(r1, r2) => format!(
            "! [S: mu,T: mu] : ( ( {} @ S @ T ) <=> ( {} @ T @ S ) )",
            render_rel(r1),
            render_rel(r2)
        ),
        MetaFormula::Not(a) => format!("~ {}", render_meta_atomic(a)),
        MetaFormula::And(a, b) => {
            format!("( {} & {} )", render_meta_atomic(a), render_meta_atomic(b))
        }
        MetaFormula::Or(a, b) => {
            format!("( {} | {} )", render_meta_atomic(a), render_meta_atomic(b))
        }
        MetaFormula::Implies(a, b) => {
            format!("( {} => {} )", render_meta_atomic(a), render_meta_atomic(b))
        }
        MetaFormula::Iff(a, b) => {
            format!("( {} <=> {} )", render_meta_atomic(a), render_meta_atomic(b))
        }
        MetaFormula::ExistsRel(r, a) => {
            format!("? [{r}: mu > mu > $o] : {}", render_meta(a))
        }
        MetaFormula::ForallRel(r, a) => {
            format!("! [{r}: mu > mu > $o] : {}", render_meta(a))
        }
    }
}

/// Operand position: quantified meta formulas need parentheses.
fn render_meta_atomic(m: &MetaFormula) -> String {
    match m {
        MetaFormula::ExistsRel(..) | MetaFormula::ForallRel(..) | MetaFormula::Inverse(..) => {
            format!("( {} )", render_meta(m))
        }
        _ => render_meta(m),
    }
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

/// The operator library: a type declaration for `mu`, the designated
/// temporal relation constants, and a typed declaration plus one
/// `definition` formula per operator in the table.
pub fn emit_axiom_library() -> ThfDocument {
    let table = DefinitionTable::standard();
    let mut doc = ThfDocument {
        header: vec![
            "QML.ax: embedding of quantified multimodal logic in simple type theory".to_string(),
            "mu is the type of possible worlds; modal propositions have type mu > $o".to_string(),
        ],
        ..Default::default()
    };

    doc.formulas.push(ThfFormula {
        name: "mu_type".into(),
        role: ThfRole::Type,
        body: "mu: $tType".into(),
    });
    for rel in [PAST, FUTURE] {
        doc.formulas.push(ThfFormula {
            name: format!("{rel}_type"),
            role: ThfRole::Type,
            body: format!("{rel}: mu > mu > $o"),
        });
    }

    for def in table.iter() {
        doc.formulas.push(ThfFormula {
            name: format!("{}_type", def.name),
            role: ThfRole::Type,
            body: format!("{}: {}", def.name, def.ty),
        });
        doc.formulas.push(ThfFormula {
            name: def.name.clone(),
            role: ThfRole::Definition,
            body: format!("{} = ( {} )", def.name, render_term(&def.term)),
        });
    }

    doc
}

fn signature_declarations(sig: &Signature) -> Result<Vec<ThfFormula>, EmitError> {
    let table = DefinitionTable::standard();
    let mut decls = Vec::new();
    let mut declare = |name: &str, ty: String| -> Result<(), EmitError> {
        if table.contains(name) || name == "mu" || name == PAST || name == FUTURE {
            return Err(EmitError::NameCollision(name.to_string()));
        }
        decls.push(ThfFormula {
            name: name.to_string(),
            role: ThfRole::Type,
            body: format!("{name}: {ty}"),
        });
        Ok(())
    };

    for r in &sig.relations {
        // past/future are declared by the library
        if r == PAST || r == FUTURE {
            continue;
        }
        declare(r, "mu > mu > $o".into())?;
    }
    for f in &sig.rel_functors {
        declare(f, "( mu > mu > $o ) > mu > mu > $o".into())?;
    }
    for c in &sig.prop_consts {
        declare(c, "mu > $o".into())?;
    }
    for (k, arity) in &sig.predicates {
        let mut ty = "mu > $o".to_string();
        for _ in 0..*arity {
            ty = format!("$i > {ty}");
        }
        declare(k, ty)?;
    }
    for c in &sig.ind_consts {
        declare(c, "$i".into())?;
    }
    Ok(decls)
}

/// A THF problem file: `include('QML.ax').`, signature declarations, one
/// axiom formula per frame/modal/meta axiom, and the conjecture.
pub fn emit_problem(p: &ProblemFile) -> Result<ThfDocument, EmitError> {
    let conjecture = p
        .conjecture
        .as_ref()
        .ok_or_else(|| EmitError::NoConjecture(p.name.clone()))?;

    let mut doc = ThfDocument {
        header: vec![format!("problem: {}", p.name)],
        includes: vec![LIBRARY_FILE.to_string()],
        ..Default::default()
    };
    doc.formulas = signature_declarations(&p.signature)?;

    let mut used_names: Vec<String> = doc.formulas.iter().map(|f| f.name.clone()).collect();
    let mut unique = |base: String| -> String {
        let mut name = base.clone();
        let mut k = 1;
        while used_names.contains(&name) {
            k += 1;
            name = format!("{base}_{k}");
        }
        used_names.push(name.clone());
        name
    };

    for (prop, rel) in &p.frame_axioms {
        let cond = properties::of(*prop);
        let name = unique(format!("{}_{}", cond.label(), rel.flat_name()));
        doc.formulas.push(ThfFormula {
            name,
            role: ThfRole::Axiom,
            body: format!("{} @ {}", cond.operator(), render_rel(rel)),
        });
    }
    for (i, f) in p.modal_axioms.iter().enumerate() {
        let name = unique(format!("ax{}", i + 1));
        doc.formulas.push(ThfFormula {
            name,
            role: ThfRole::Axiom,
            body: format!("mvalid @ {}", render_modal(f)),
        });
    }
    for (i, m) in p.meta_axioms.iter().enumerate() {
        let name = unique(format!("max{}", i + 1));
        doc.formulas.push(ThfFormula {
            name,
            role: ThfRole::Axiom,
            body: render_meta(m),
        });
    }

    doc.formulas.push(ThfFormula {
        name: "conj".into(),
        role: ThfRole::Conjecture,
        body: render_meta(conjecture),
    });

    Ok(doc)
}

// ---------------------------------------------------------------------------
// Token-level tooling: whitespace-insensitive comparison and a lint
// ---------------------------------------------------------------------------

/// Tokenizes THF text: identifiers, `$`-words, quoted names, and the
/// punctuation/operator tokens. Comments (`%` to end of line) are skipped.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            '%' => {
                while i < bytes.len() && bytes[i] != '\n' {
                    i += 1;
                }
            }
            c if c.is_whitespace() => i += 1,
            '\'' => {
                let mut tok = String::from("'");
                i += 1;
                while i < bytes.len() && bytes[i] != '\'' {
                    tok.push(bytes[i]);
                    i += 1;
                }
                tok.push('\'');
                i += 1;
                out.push(tok);
            }
            c if c.is_ascii_alphanumeric() || c == '_' || c == '$' => {
                let mut tok = String::new();
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_' || bytes[i] == '$')
                {
                    tok.push(bytes[i]);
                    i += 1;
                }
                out.push(tok);
            }
            '<' if bytes.get(i + 1) == Some(&'=') && bytes.get(i + 2) == Some(&'>') => {
                out.push("<=>".into());
                i += 3;
            }
            '=' if bytes.get(i + 1) == Some(&'>') => {
                out.push("=>".into());
                i += 2;
            }
            '!' if bytes.get(i + 1) == Some(&'!') => {
                out.push("!!".into());
                i += 2;
            }
            '?' if bytes.get(i + 1) == Some(&'?') => {
                out.push("??".into());
                i += 2;
            }
            _ => {
                out.push(c.to_string());
                i += 1;
            }
        }
    }
    out
}

/// Whitespace-insensitive equality of two THF fragments.
pub fn tokens_equal(a: &str, b: &str) -> bool {
    tokenize(a) == tokenize(b)
}

const THF_KEYWORDS: [&str; 6] = ["thf", "include", "type", "axiom", "definition", "conjecture"];
const THF_BUILTIN: [&str; 3] = ["$o", "$i", "$tType"];

/// Structural well-formedness lint: balanced parentheses and brackets,
/// every lowercase symbol declared before use (or provided by the included
/// library), every uppercase variable bound by some binder group in its
/// formula, conjectures last, names unique.
pub fn lint(doc: &ThfDocument, library: Option<&ThfDocument>) -> Result<(), LintError> {
    let mut declared: Vec<String> = vec!["mu".into()];
    if !doc.includes.is_empty() {
        if let Some(lib) = library {
            declared.extend(lib.declared_symbols());
        } else {
            declared.extend(emit_axiom_library().declared_symbols());
        }
        declared.push(PAST.into());
        declared.push(FUTURE.into());
    }

    let mut seen_names: Vec<&str> = Vec::new();
    let mut seen_conjecture: Option<&str> = None;

    for f in &doc.formulas {
        if seen_names.contains(&f.name.as_str()) {
            return Err(LintError::DuplicateFormula(f.name.clone()));
        }
        seen_names.push(&f.name);
        if let Some(c) = seen_conjecture {
            return Err(LintError::ConjectureNotLast(c.to_string()));
        }
        if f.role == ThfRole::Conjecture {
            seen_conjecture = Some(&f.name);
        }

        let toks = tokenize(&f.body);

        // balance
        for (open, close, what) in [("(", ")", "parentheses"), ("[", "]", "brackets")] {
            let mut depth = 0i64;
            for t in &toks {
                if t == open {
                    depth += 1;
                } else if t == close {
                    depth -= 1;
                }
                if depth < 0 {
                    break;
                }
            }
            if depth != 0 {
                return Err(LintError::Unbalanced {
                    name: f.name.clone(),
                    what: what.into(),
                });
            }
        }

        // binder-bound variables: collect names inside bracket groups
        let mut bound: Vec<&str> = Vec::new();
        let mut in_brackets = false;
        let mut expect_var = false;
        for t in &toks {
            match t.as_str() {
                "[" => {
                    in_brackets = true;
                    expect_var = true;
                }
                "]" => in_brackets = false,
                "," if in_brackets => expect_var = true,
                ":" if in_brackets => expect_var = false,
                _ if in_brackets && expect_var => {
                    bound.push(t);
                    expect_var = false;
                }
                _ => {}
            }
        }

        // a type declaration declares its own symbol
        let own: Option<&str> = match f.role {
            ThfRole::Type | ThfRole::Definition => {
                toks.first().map(|s| s.as_str())
            }
            _ => None,
        };

        let mut in_brackets = false;
        for t in &toks {
            match t.as_str() {
                "[" => in_brackets = true,
                "]" => in_brackets = false,
                _ => {}
            }
            if in_brackets {
                continue;
            }
            let first = t.chars().next().unwrap_or(' ');
            if first.is_ascii_uppercase() {
                if !bound.contains(&t.as_str()) {
                    return Err(LintError::UnboundVariable {
                        name: f.name.clone(),
                        var: t.clone(),
                    });
                }
            } else if first.is_ascii_lowercase()
                && !THF_KEYWORDS.contains(&t.as_str())
                && !declared.iter().any(|d| d == t)
                && own != Some(t.as_str())
            {
                return Err(LintError::UndeclaredSymbol {
                    name: f.name.clone(),
                    symbol: t.clone(),
                });
            }
            let _ = THF_BUILTIN; // $-tokens never reach the lowercase branch
        }

        if let Some(sym) = own {
            declared.push(sym.to_string());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_problem_named;

    const PAPER_8A: &str = r#"
thf(conj,conjecture,(
    ? [R: mu > mu > $o] :
      ~ ( mvalid
        @ ( mall_prop
          @ ^ [A: mu > $o] :
              ( mimpl @ ( mbox @ R @ A )
                      @ ( mbox @ R @ ( mbox @ R @ A ) ) ) ) ) )).
"#;

    const PAPER_MTRANSITIVE: &str = r#"
thf(mtransitive,definition,
    ( mtransitive
    = ( ^ [R: mu > mu > $o]: ! [S: mu,T: mu,U: mu]:
         (((R @ S @ T) & (R @ T @ U)) => (R @ S @ U))))).
"#;

    const PAPER_DECLS: &str = r#"
thf(peter,type,( peter: mu > mu > $o )).
thf(john,type,( john: mu > mu > $o )).
thf(wife,type,(wife: ( mu > mu > $o ) > mu > mu > $o )).
"#;

    fn friends_header() -> ProblemFile {
        parse_problem_named(
            "relation peter. relation john. relfun wife.\n\
             frame reflexive peter. frame reflexive john. frame reflexive (wife peter).\n\
             frame transitive peter. frame transitive john. frame transitive (wife peter).\n\
             conjecture valid top.",
            "friends",
        )
        .unwrap()
    }

    #[test]
    fn golden_problem_8a() {
        let p = parse_problem_named(
            "conjecture exists R. ~ valid (forall_prop A. impl (box R A) (box R (box R A))).",
            "ex8a",
        )
        .unwrap();
        let doc = emit_problem(&p).unwrap();
        assert_eq!(doc.includes, vec!["QML.ax".to_string()]);
        let conj = doc.formula("conj").unwrap();
        assert!(
            tokens_equal(&conj.render(), PAPER_8A),
            "emitted:\n{}\nexpected:\n{}",
            conj.render(),
            PAPER_8A
        );
    }

    #[test]
    fn golden_mtransitive_definition() {
        let lib = emit_axiom_library();
        let def = lib.formula("mtransitive").unwrap();
        assert!(
            tokens_equal(&def.render(), PAPER_MTRANSITIVE),
            "emitted:\n{}\nexpected:\n{}",
            def.render(),
            PAPER_MTRANSITIVE
        );
    }

    #[test]
    fn golden_friends_declarations() {
        let doc = emit_problem(&friends_header()).unwrap();
        let got = [
            doc.formula("peter").unwrap().render(),
            doc.formula("john").unwrap().render(),
            doc.formula("wife").unwrap().render(),
        ]
        .join("\n");
        assert!(
            tokens_equal(&got, PAPER_DECLS),
            "emitted:\n{got}\nexpected:\n{PAPER_DECLS}"
        );
    }

    #[test]
    fn golden_friends_frame_axioms() {
        let doc = emit_problem(&friends_header()).unwrap();
        let expected = [
            "thf(refl_peter,axiom,( mreflexive @ peter )).",
            "thf(refl_john,axiom,( mreflexive @ john )).",
            "thf(refl_wife_peter,axiom,( mreflexive @ ( wife @ peter ))).",
            "thf(trans_peter,axiom,( mtransitive @ peter )).",
            "thf(trans_john,axiom,( mtransitive @ john)).",
            "thf(trans_wife_peter,axiom,( mtransitive @ ( wife @ peter ))).",
        ];
        let got: Vec<&ThfFormula> = doc
            .formulas
            .iter()
            .filter(|f| f.role == ThfRole::Axiom)
            .collect();
        assert_eq!(got.len(), expected.len());
        for (f, e) in got.iter().zip(expected) {
            assert!(tokens_equal(&f.render(), e), "emitted {} want {e}", f.render());
        }
    }

    #[test]
    fn library_is_deterministic_and_lints() {
        let a = emit_axiom_library();
        let b = emit_axiom_library();
        assert_eq!(a.render(), b.render());
        lint(&a, None).unwrap();
    }

    #[test]
    fn empty_signature_library_still_has_operators() {
        let lib = emit_axiom_library();
        assert!(lib.formula("mnot").is_some());
        assert!(lib.formula("mvalid").is_some());
        assert!(lib.formula("mweakly_directed").is_some());
    }

    #[test]
    fn emit_problem_requires_conjecture() {
        let p = parse_problem_named("relation r. frame serial r.", "noconj").unwrap();
        assert_eq!(
            emit_problem(&p).unwrap_err(),
            EmitError::NoConjecture("noconj".into())
        );
    }

    #[test]
    fn emit_rejects_library_collision() {
        let p = parse_problem_named("relation mbox. conjecture valid (box mbox top).", "bad")
            .unwrap();
        assert_eq!(
            emit_problem(&p).unwrap_err(),
            EmitError::NameCollision("mbox".into())
        );
    }

    #[test]
    fn problems_lint_cleanly() {
        let p = parse_problem_named(
            "relation r. pred k/1. indconst c. propconst time.\n\
             frame weakly_connected r.\n\
             axiom (box r time).\n\
             conjecture valid (forall_ind X. impl (k X) (dia r (k c))).",
            "mixed",
        )
        .unwrap();
        let doc = emit_problem(&p).unwrap();
        lint(&doc, None).unwrap();
    }

    #[test]
    fn lint_catches_undeclared_symbol() {
        let doc = ThfDocument {
            header: vec![],
            includes: vec![],
            formulas: vec![ThfFormula {
                name: "a1".into(),
                role: ThfRole::Axiom,
                body: "( mystery @ mu )".into(),
            }],
        };
        assert!(matches!(
            lint(&doc, None),
            Err(LintError::UndeclaredSymbol { .. })
        ));
    }

    #[test]
    fn lint_catches_unbalanced_parens() {
        let doc = ThfDocument {
            header: vec![],
            includes: vec![],
            formulas: vec![ThfFormula {
                name: "a1".into(),
                role: ThfRole::Axiom,
                body: "( ( mu )".into(),
            }],
        };
        assert!(matches!(lint(&doc, None), Err(LintError::Unbalanced { .. })));
    }

    #[test]
    fn meta_axiom_rendering() {
        let m = MetaFormula::Inverse(
            RelExpr::Const("past".into()),
            RelExpr::Const("future".into()),
        );
        assert!(tokens_equal(
            &render_meta(&m),
            "! [S: mu, T: mu] : ((past @ S @ T) <=> (future @ T @ S))"
        ));
    }
}
