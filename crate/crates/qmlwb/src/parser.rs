//! Parser for `.qml` problem files.
//!
//! The format is a sequence of `.`-terminated clauses with `%` line comments:
//!
//! ```text
//! problem ex8a.
//! relation r.                         % accessibility relation constant
//! relfun wife.                        % relation-valued functor
//! pred k/1.                           % predicate constant with arity
//! propconst time.  indconst c.
//! frame transitive r.                 % frame condition on a relation
//! axiom (box r top).                  % modal axiom, asserted valid
//! meta inverse past future.           % meta-level axiom
//! conjecture exists R. ~ valid (forall_prop A. impl (box R A) (box R (box R A))).
//! expect csa.
//! ```
//!
//! Formulas are prefix: `~ & | => <=>` (or the word forms `not and or impl
//! iff`), `box REL F`, `dia REL F`, binders `forall_ind X. F`, `exists_ind`,
//! `forall_prop`, `exists_prop`, leaves `top`, `bot`, atoms and constants.
//! `always F` / `sometime F` expand over the designated `past`/`future`
//! relations at parse time. Meta formulas use `valid F`, property names
//! applied to a relation, `inverse R1 R2`, the same prefix connectives, and
//! `exists R. M` / `forall R. M` for relation quantifiers. Declared symbol
//! names start lowercase; bound variables start uppercase.

use std::fmt;

use thiserror::Error;

use crate::properties;
use crate::syntax::{
    Expectation, IndArg, MetaFormula, ModalFormula, ProblemFile, RelExpr, Signature,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(String),
    Syntax(String),
    UnknownSymbol(String),
    UnboundVariable(String),
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    DuplicateName(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Lexical(m) => write!(f, "lexical error: {m}"),
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::UnknownSymbol(n) => write!(f, "unknown symbol `{n}`"),
            ParseErrorKind::UnboundVariable(n) => write!(f, "unbound variable `{n}`"),
            ParseErrorKind::ArityMismatch {
                name,
                expected,
                found,
            } => write!(
                f,
                "predicate `{name}` takes {expected} argument(s), found {found}"
            ),
            ParseErrorKind::DuplicateName(n) => write!(f, "duplicate symbol `{n}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Symbol(&'static str), // one of ( ) . / ~ & | => <=>
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();

    macro_rules! push {
        ($tok:expr, $len:expr) => {{
            out.push(Spanned {
                tok: $tok,
                line,
                col,
            });
            col += $len;
        }};
    }

    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '(' => {
                chars.next();
                push!(Tok::Symbol("("), 1);
            }
            ')' => {
                chars.next();
                push!(Tok::Symbol(")"), 1);
            }
            '.' => {
                chars.next();
                push!(Tok::Symbol("."), 1);
            }
            '/' => {
                chars.next();
                push!(Tok::Symbol("/"), 1);
            }
            '~' => {
                chars.next();
                push!(Tok::Symbol("~"), 1);
            }
            '&' => {
                chars.next();
                push!(Tok::Symbol("&"), 1);
            }
            '|' => {
                chars.next();
                push!(Tok::Symbol("|"), 1);
            }
            '=' => {
                chars.next();
                if chars.peek() == Some(&'>') {
                    chars.next();
                    push!(Tok::Symbol("=>"), 2);
                } else {
                    return Err(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::Lexical("expected `=>`".into()),
                    });
                }
            }
            '<' => {
                chars.next();
                if chars.peek() == Some(&'=') {
                    chars.next();
                    if chars.peek() == Some(&'>') {
                        chars.next();
                        push!(Tok::Symbol("<=>"), 3);
                    } else {
                        return Err(ParseError {
                            line,
                            col,
                            kind: ParseErrorKind::Lexical("expected `<=>`".into()),
                        });
                    }
                } else {
                    return Err(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::Lexical("expected `<=>`".into()),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let len = ident.len();
                push!(Tok::Ident(ident), len);
            }
            c if c.is_ascii_digit() => {
                let mut num = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        num.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let len = num.len();
                push!(Tok::Ident(num), len);
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    kind: ParseErrorKind::Lexical(format!("unexpected character `{other}`")),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    sig: Signature,
    // bound-variable stacks
    ind_vars: Vec<String>,
    prop_vars: Vec<String>,
    rel_vars: Vec<String>,
}

impl Parser {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        let (line, col) = self
            .toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1));
        ParseError { line, col, kind }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.into()))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_symbol(&mut self, sym: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Symbol(s)) if *s == sym => {
                self.pos += 1;
                Ok(())
            }
            other => Err(self.syntax(format!("expected `{sym}`, found {}", show(other)))),
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            other => Err(self.syntax(format!("expected identifier, found {}", show(other.as_ref())))),
        }
    }

    fn lowercase_name(&mut self) -> Result<String, ParseError> {
        let name = self.expect_ident()?;
        if name.starts_with(|c: char| c.is_ascii_lowercase()) {
            Ok(name)
        } else {
            Err(self.syntax(format!("symbol name `{name}` must start lowercase")))
        }
    }

    fn uppercase_var(&mut self) -> Result<String, ParseError> {
        let name = self.expect_ident()?;
        if name.starts_with(|c: char| c.is_ascii_uppercase()) {
            Ok(name)
        } else {
            Err(self.syntax(format!("variable `{name}` must start uppercase")))
        }
    }

    // --- relation expressions ------------------------------------------------

    fn rel_expr(&mut self) -> Result<RelExpr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.resolve_rel_name(name)
            }
            Some(Tok::Symbol("(")) => {
                self.pos += 1;
                let functor = self.expect_ident()?;
                if !self.sig.is_rel_functor(&functor) {
                    return Err(self.err(ParseErrorKind::UnknownSymbol(functor)));
                }
                let arg = self.rel_expr()?;
                self.expect_symbol(")")?;
                Ok(RelExpr::applied(functor, arg))
            }
            other => Err(self.syntax(format!(
                "expected relation expression, found {}",
                show(other.as_ref())
            ))),
        }
    }

    fn resolve_rel_name(&mut self, name: String) -> Result<RelExpr, ParseError> {
        if name.starts_with(|c: char| c.is_ascii_uppercase()) {
            if self.rel_vars.contains(&name) {
                Ok(RelExpr::Var(name))
            } else {
                Err(self.err(ParseErrorKind::UnboundVariable(name)))
            }
        } else if self.sig.is_relation(&name) {
            Ok(RelExpr::Const(name))
        } else {
            Err(self.err(ParseErrorKind::UnknownSymbol(name)))
        }
    }

    // --- modal formulas --------------------------------------------------------

    fn modal(&mut self) -> Result<ModalFormula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Symbol("(")) => {
                self.pos += 1;
                let f = self.modal()?;
                self.expect_symbol(")")?;
                Ok(f)
            }
            Some(Tok::Symbol("~")) => {
                self.pos += 1;
                Ok(ModalFormula::not(self.modal()?))
            }
            Some(Tok::Symbol("&")) => {
                self.pos += 1;
                Ok(ModalFormula::and(self.modal()?, self.modal()?))
            }
            Some(Tok::Symbol("|")) => {
                self.pos += 1;
                Ok(ModalFormula::or(self.modal()?, self.modal()?))
            }
            Some(Tok::Symbol("=>")) => {
                self.pos += 1;
                Ok(ModalFormula::impl_(self.modal()?, self.modal()?))
            }
            Some(Tok::Symbol("<=>")) => {
                self.pos += 1;
                Ok(ModalFormula::iff(self.modal()?, self.modal()?))
            }
            Some(Tok::Ident(word)) => {
                self.pos += 1;
                self.modal_word(word)
            }
            other => Err(self.syntax(format!("expected formula, found {}", show(other.as_ref())))),
        }
    }

    fn modal_word(&mut self, word: String) -> Result<ModalFormula, ParseError> {
        match word.as_str() {
            "top" => Ok(ModalFormula::Top),
            "bot" => Ok(ModalFormula::Bot),
            "not" => Ok(ModalFormula::not(self.modal()?)),
            "and" => Ok(ModalFormula::and(self.modal()?, self.modal()?)),
            "or" => Ok(ModalFormula::or(self.modal()?, self.modal()?)),
            "impl" => Ok(ModalFormula::impl_(self.modal()?, self.modal()?)),
            "iff" => Ok(ModalFormula::iff(self.modal()?, self.modal()?)),
            "box" => {
                let r = self.rel_expr()?;
                Ok(ModalFormula::boxed(r, self.modal()?))
            }
            "dia" => {
                let r = self.rel_expr()?;
                Ok(ModalFormula::dia(r, self.modal()?))
            }
            "always" => {
                // box past F & F & box future F, over the designated relations
                let f = self.modal()?;
                let past = self.designated_rel("past")?;
                let future = self.designated_rel("future")?;
                Ok(ModalFormula::and(
                    ModalFormula::boxed(past, f.clone()),
                    ModalFormula::and(f.clone(), ModalFormula::boxed(future, f)),
                ))
            }
            "sometime" => {
                let f = self.modal()?;
                let past = self.designated_rel("past")?;
                let future = self.designated_rel("future")?;
                Ok(ModalFormula::or(
                    ModalFormula::dia(past, f.clone()),
                    ModalFormula::or(f.clone(), ModalFormula::dia(future, f)),
                ))
            }
            "forall_ind" => self.binder(Binder::ForallInd),
            "exists_ind" => self.binder(Binder::ExistsInd),
            "forall_prop" => self.binder(Binder::ForallProp),
            "exists_prop" => self.binder(Binder::ExistsProp),
            _ => self.atom_or_leaf(word),
        }
    }

    fn designated_rel(&self, name: &str) -> Result<RelExpr, ParseError> {
        if self.sig.is_relation(name) {
            Ok(RelExpr::Const(name.to_string()))
        } else {
            Err(self.err(ParseErrorKind::UnknownSymbol(format!(
                "{name} (declare `relation {name}.` to use temporal operators)"
            ))))
        }
    }

    fn binder(&mut self, kind: Binder) -> Result<ModalFormula, ParseError> {
        let var = self.uppercase_var()?;
        self.expect_symbol(".")?;
        let stack = match kind {
            Binder::ForallInd | Binder::ExistsInd => &mut self.ind_vars,
            Binder::ForallProp | Binder::ExistsProp => &mut self.prop_vars,
        };
        stack.push(var.clone());
        let body = self.modal();
        let stack = match kind {
            Binder::ForallInd | Binder::ExistsInd => &mut self.ind_vars,
            Binder::ForallProp | Binder::ExistsProp => &mut self.prop_vars,
        };
        stack.pop();
        let body = body?;
        Ok(match kind {
            Binder::ForallInd => ModalFormula::forall_ind(var, body),
            Binder::ExistsInd => ModalFormula::exists_ind(var, body),
            Binder::ForallProp => ModalFormula::forall_prop(var, body),
            Binder::ExistsProp => ModalFormula::exists_prop(var, body),
        })
    }

    fn atom_or_leaf(&mut self, word: String) -> Result<ModalFormula, ParseError> {
        if word.starts_with(|c: char| c.is_ascii_uppercase()) {
            if self.prop_vars.contains(&word) {
                return Ok(ModalFormula::PropVar(word));
            }
            return Err(self.err(ParseErrorKind::UnboundVariable(word)));
        }
        if self.sig.is_prop_const(&word) {
            return Ok(ModalFormula::PropConst(word));
        }
        if let Some(arity) = self.sig.predicate_arity(&word) {
            let mut args = Vec::new();
            for _ in 0..arity {
                args.push(self.ind_arg()?);
            }
            return Ok(ModalFormula::Atom(word, args));
        }
        Err(self.err(ParseErrorKind::UnknownSymbol(word)))
    }

    fn ind_arg(&mut self) -> Result<IndArg, ParseError> {
        let name = self.expect_ident()?;
        if name.starts_with(|c: char| c.is_ascii_uppercase()) {
            if self.ind_vars.contains(&name) {
                Ok(IndArg::Var(name))
            } else {
                Err(self.err(ParseErrorKind::UnboundVariable(name)))
            }
        } else if self.sig.is_ind_const(&name) {
            Ok(IndArg::Const(name))
        } else {
            Err(self.err(ParseErrorKind::UnknownSymbol(name)))
        }
    }

    // --- meta formulas -----------------------------------------------------------

    fn meta(&mut self) -> Result<MetaFormula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Symbol("(")) => {
                self.pos += 1;
                let m = self.meta()?;
                self.expect_symbol(")")?;
                Ok(m)
            }
            Some(Tok::Symbol("~")) => {
                self.pos += 1;
                Ok(MetaFormula::not(self.meta()?))
            }
            Some(Tok::Symbol("&")) => {
                self.pos += 1;
                Ok(MetaFormula::and(self.meta()?, self.meta()?))
            }
            Some(Tok::Symbol("|")) => {
                self.pos += 1;
                Ok(MetaFormula::or(self.meta()?, self.meta()?))
            }
            Some(Tok::Symbol("=>")) => {
                self.pos += 1;
                Ok(MetaFormula::implies(self.meta()?, self.meta()?))
            }
            Some(Tok::Symbol("<=>")) => {
                self.pos += 1;
                Ok(MetaFormula::iff(self.meta()?, self.meta()?))
            }
            Some(Tok::Ident(word)) => {
                self.pos += 1;
                self.meta_word(word)
            }
            other => Err(self.syntax(format!(
                "expected meta formula, found {}",
                show(other.as_ref())
            ))),
        }
    }

    fn meta_word(&mut self, word: String) -> Result<MetaFormula, ParseError> {
        match word.as_str() {
            "valid" => Ok(MetaFormula::Valid(self.modal()?)),
            "not" => Ok(MetaFormula::not(self.meta()?)),
            "and" => Ok(MetaFormula::and(self.meta()?, self.meta()?)),
            "or" => Ok(MetaFormula::or(self.meta()?, self.meta()?)),
            "impl" => Ok(MetaFormula::implies(self.meta()?, self.meta()?)),
            "iff" => Ok(MetaFormula::iff(self.meta()?, self.meta()?)),
            "inverse" => {
                let r1 = self.rel_expr()?;
                let r2 = self.rel_expr()?;
                Ok(MetaFormula::Inverse(r1, r2))
            }
            "exists" | "forall" => {
                let var = self.uppercase_var()?;
                self.expect_symbol(".")?;
                self.rel_vars.push(var.clone());
                let body = self.meta();
                self.rel_vars.pop();
                let body = body?;
                Ok(if word == "exists" {
                    MetaFormula::exists_rel(var, body)
                } else {
                    MetaFormula::forall_rel(var, body)
                })
            }
            _ => {
                if let Some(cond) = properties::lookup(&word) {
                    let r = self.rel_expr()?;
                    Ok(MetaFormula::HasProperty(cond.key(), r))
                } else {
                    Err(self.err(ParseErrorKind::UnknownSymbol(word)))
                }
            }
        }
    }

    // --- clauses ----------------------------------------------------------------

    fn add_symbol(&mut self, add: impl FnOnce(&mut Signature) -> Result<(), crate::syntax::DuplicateName>) -> Result<(), ParseError> {
        add(&mut self.sig).map_err(|e| self.err(ParseErrorKind::DuplicateName(e.0)))
    }

    fn problem(&mut self, default_name: &str) -> Result<ProblemFile, ParseError> {
        let mut p = ProblemFile::new(default_name);
        let mut saw_conjecture = false;

        while self.peek().is_some() {
            let keyword = match self.next() {
                Some(Tok::Ident(w)) => w,
                other => {
                    return Err(self.syntax(format!(
                        "expected declaration keyword, found {}",
                        show(other.as_ref())
                    )))
                }
            };
            match keyword.as_str() {
                "problem" => {
                    p.name = self.lowercase_name()?;
                }
                "relation" => {
                    let name = self.lowercase_name()?;
                    self.add_symbol(|s| s.add_relation(name))?;
                }
                "relfun" => {
                    let name = self.lowercase_name()?;
                    self.add_symbol(|s| s.add_rel_functor(name))?;
                }
                "pred" => {
                    let name = self.lowercase_name()?;
                    self.expect_symbol("/")?;
                    let arity_tok = self.expect_ident()?;
                    let arity: usize = arity_tok
                        .parse()
                        .map_err(|_| self.syntax(format!("bad arity `{arity_tok}`")))?;
                    self.add_symbol(|s| s.add_predicate(name, arity))?;
                }
                "propconst" => {
                    let name = self.lowercase_name()?;
                    self.add_symbol(|s| s.add_prop_const(name))?;
                }
                "indconst" => {
                    let name = self.lowercase_name()?;
                    self.add_symbol(|s| s.add_ind_const(name))?;
                }
                "frame" => {
                    let prop_name = self.expect_ident()?;
                    let cond = properties::lookup(&prop_name)
                        .ok_or_else(|| self.err(ParseErrorKind::UnknownSymbol(prop_name)))?;
                    let rel = self.rel_expr()?;
                    p.frame_axioms.push((cond.key(), rel));
                }
                "axiom" => {
                    p.modal_axioms.push(self.modal()?);
                }
                "meta" => {
                    p.meta_axioms.push(self.meta()?);
                }
                "conjecture" => {
                    if saw_conjecture {
                        return Err(self.syntax("multiple conjectures"));
                    }
                    saw_conjecture = true;
                    p.conjecture = Some(self.meta()?);
                }
                "expect" => {
                    let word = self.expect_ident()?;
                    p.expected = Some(match word.as_str() {
                        "theorem" => Expectation::Theorem,
                        "csa" => Expectation::CounterSatisfiable,
                        "unknown" => Expectation::Unknown,
                        other => {
                            return Err(self.syntax(format!(
                                "expected `theorem`, `csa` or `unknown`, found `{other}`"
                            )))
                        }
                    });
                }
                other => {
                    return Err(self.syntax(format!("unknown declaration keyword `{other}`")));
                }
            }
            self.expect_symbol(".")?;
        }

        p.signature = self.sig.clone();
        Ok(p)
    }
}

#[derive(Clone, Copy)]
enum Binder {
    ForallInd,
    ExistsInd,
    ForallProp,
    ExistsProp,
}

fn show(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".to_string(),
        Some(Tok::Ident(s)) => format!("`{s}`"),
        Some(Tok::Symbol(s)) => format!("`{s}`"),
    }
}

/// Parses a problem file, using `name` when the text has no `problem` clause.
pub fn parse_problem_named(text: &str, name: &str) -> Result<ProblemFile, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        sig: Signature::new(),
        ind_vars: Vec::new(),
        prop_vars: Vec::new(),
        rel_vars: Vec::new(),
    };
    parser.problem(name)
}

/// Parses a problem file named `problem` unless the text says otherwise.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    parse_problem_named(text, "problem")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{print_problem, PropertyName};

    #[test]
    fn parse_simple_box_conjecture() {
        let p = parse_problem("relation r. conjecture valid (box r top).").unwrap();
        assert_eq!(
            p.conjecture,
            Some(MetaFormula::Valid(ModalFormula::boxed(
                RelExpr::Const("r".into()),
                ModalFormula::Top
            )))
        );
    }

    #[test]
    fn parse_exists_rel_conjecture() {
        let text = "conjecture exists R. ~ valid (forall_prop A. impl (box R A) (box R (box R A))).";
        let p = parse_problem(text).unwrap();
        let a = || ModalFormula::PropVar("A".into());
        let r = || RelExpr::Var("R".into());
        let expected = MetaFormula::exists_rel(
            "R",
            MetaFormula::not(MetaFormula::Valid(ModalFormula::forall_prop(
                "A",
                ModalFormula::impl_(
                    ModalFormula::boxed(r(), a()),
                    ModalFormula::boxed(r(), ModalFormula::boxed(r(), a())),
                ),
            ))),
        );
        assert_eq!(p.conjecture, Some(expected));
    }

    #[test]
    fn unknown_symbol_is_reported() {
        let err = parse_problem("relation r. conjecture valid (box q top).").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownSymbol("q".into()));
    }

    #[test]
    fn unbound_variable_is_reported() {
        let err = parse_problem("relation r. conjecture valid (box r A).").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnboundVariable("A".into()));
    }

    #[test]
    fn parse_frame_and_functor() {
        let text = "problem friends. relation peter. relation john. relfun wife.\n\
                    frame reflexive peter. frame transitive (wife peter).\n\
                    conjecture valid top.";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.name, "friends");
        assert_eq!(p.frame_axioms.len(), 2);
        assert_eq!(
            p.frame_axioms[1],
            (
                PropertyName::Transitive,
                RelExpr::applied("wife", RelExpr::Const("peter".into()))
            )
        );
    }

    #[test]
    fn parse_atoms_and_arity() {
        let text = "pred k/2. indconst c. conjecture valid (forall_ind X. (k X c)).";
        let p = parse_problem(text).unwrap();
        assert_eq!(
            p.conjecture,
            Some(MetaFormula::Valid(ModalFormula::forall_ind(
                "X",
                ModalFormula::Atom(
                    "k".into(),
                    vec![IndArg::Var("X".into()), IndArg::Const("c".into())]
                )
            )))
        );

        let err = parse_problem("pred k/2. conjecture valid (forall_ind X. (k X)).").unwrap_err();
        // the second argument is missing, so the parser trips on `)`
        assert!(matches!(
            err.kind,
            ParseErrorKind::Syntax(_) | ParseErrorKind::ArityMismatch { .. }
        ));
    }

    #[test]
    fn parse_meta_axioms_and_expect() {
        let text = "relation past. relation future.\n\
                    frame transitive past. frame transitive future.\n\
                    meta inverse past future.\n\
                    conjecture valid (forall_prop A. impl (always A) A).\n\
                    expect theorem.";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.meta_axioms.len(), 1);
        assert_eq!(p.expected, Some(Expectation::Theorem));
        // `always` expanded at parse time
        match p.conjecture.as_ref().unwrap() {
            MetaFormula::Valid(ModalFormula::ForallProp(_, body)) => {
                assert!(matches!(body.as_ref(), ModalFormula::Impl(..)));
            }
            other => panic!("unexpected conjecture {other:?}"),
        }
    }

    #[test]
    fn lexical_error_has_position() {
        let err = parse_problem("relation r.\nconjecture #").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::Lexical(_)));
    }

    #[test]
    fn axioms_without_conjecture_parse() {
        let p = parse_problem("relation r. frame serial r.").unwrap();
        assert!(p.conjecture.is_none());
        assert_eq!(p.frame_axioms.len(), 1);
    }

    #[test]
    fn print_parse_round_trip() {
        let text = "problem demo.\n\
                    relation r. relation past. relation future. relfun wife.\n\
                    pred k/1. propconst time. indconst c.\n\
                    frame weakly_connected r.\n\
                    axiom (box r time).\n\
                    axiom (forall_prop A. impl (box (wife r) A) (box r A)).\n\
                    meta inverse past future.\n\
                    meta ~ (transitive r).\n\
                    conjecture exists R. & (valid (dia R (k c))) (~ (reflexive R)).\n\
                    expect csa.";
        let p = parse_problem(text).unwrap();
        let printed = print_problem(&p);
        let reparsed = parse_problem(&printed)
            .unwrap_or_else(|e| panic!("reparse failed: {e}\n{printed}"));
        assert_eq!(p, reparsed);
    }
}
