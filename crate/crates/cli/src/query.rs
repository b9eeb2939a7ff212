//! Single-line queries: a command word followed by its operands.
//!
//! ```text
//! dual G            props G           decompose G       resolve G
//! hom A , B         ext A , B         extq A , B        oracle-ext G , A
//! member X CAT      injective X CAT   projective X CAT
//! derive hom|ext A , B
//! selftest          rules
//! ```

use std::fmt;

use lcacalc_core::classify::CategoryTag;
use lcacalc_core::cover::Operand;
use lcacalc_core::expr::GroupExpr;
use lcacalc_core::finab::FinAb;
use lcacalc_core::homext::Functor;
use lcacalc_core::parse::{parse_category, parse_expr, parse_operand, ParseError};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Dual(GroupExpr),
    Hom(Operand, Operand),
    Ext(Operand, Operand),
    ExtCountable(Operand, Operand),
    Props(GroupExpr),
    Decompose(GroupExpr),
    Member(Operand, CategoryTag),
    Injective(Operand, CategoryTag),
    Projective(Operand, CategoryTag),
    Resolve(GroupExpr),
    OracleExt(FinAb, FinAb),
    Derive(Functor, Operand, Operand),
    Selftest,
    Rules,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("empty query")]
    Empty,
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("`{command}` expects {expected}")]
    Arity { command: String, expected: &'static str },
    #[error("at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("at {position}: unknown atom `{name}`")]
    UnknownAtom { position: usize, name: String },
    #[error("unknown category `{0}`")]
    UnknownCategory(String),
    #[error("{0} is not a finite group")]
    NotFinite(String),
}

impl QueryError {
    pub fn code(&self) -> &'static str {
        match self {
            QueryError::Empty | QueryError::UnknownCommand(_) | QueryError::Arity { .. } => "E-USAGE",
            QueryError::Syntax { .. } => "E-SYNTAX",
            QueryError::UnknownAtom { .. } => "E-UNKNOWN-ATOM",
            QueryError::UnknownCategory(_) => "E-UNKNOWN-CATEGORY",
            QueryError::NotFinite(_) => "E-NOT-FINITE",
        }
    }

    fn shifted(e: ParseError, offset: usize) -> QueryError {
        match e {
            ParseError::Syntax { position, message } => QueryError::Syntax { position: position + offset, message },
            ParseError::UnknownAtom { position, name } => QueryError::UnknownAtom { position: position + offset, name },
            ParseError::UnknownCategory(c) => QueryError::UnknownCategory(c.0),
        }
    }
}

/// A slice of the input line together with its byte offset.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    at: usize,
}

impl<'a> Span<'a> {
    fn split_once(self, c: char) -> Option<(Span<'a>, Span<'a>)> {
        let i = self.text.find(c)?;
        Some((Span { text: &self.text[..i], at: self.at }, Span { text: &self.text[i + 1..], at: self.at + i + 1 }))
    }

    /// Splits off the last whitespace-separated word.
    fn split_last_word(self) -> Option<(Span<'a>, Span<'a>)> {
        let trimmed = self.text.trim_end();
        let i = trimmed.rfind(char::is_whitespace)?;
        Some((Span { text: &trimmed[..i], at: self.at }, Span { text: &trimmed[i + 1..], at: self.at + i + 1 }))
    }

    /// Splits off the first word.
    fn split_first_word(self) -> (Span<'a>, Span<'a>) {
        let lead = self.text.len() - self.text.trim_start().len();
        let rest = &self.text[lead..];
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        (Span { text: &rest[..end], at: self.at + lead }, Span { text: &rest[end..], at: self.at + lead + end })
    }
}

fn expr(s: Span<'_>) -> Result<GroupExpr, QueryError> {
    parse_expr(s.text).map_err(|e| QueryError::shifted(e, s.at))
}

fn operand(s: Span<'_>) -> Result<Operand, QueryError> {
    parse_operand(s.text).map_err(|e| QueryError::shifted(e, s.at))
}

fn finite(s: Span<'_>) -> Result<FinAb, QueryError> {
    let g = expr(s)?;
    FinAb::from_expr(&g).map_err(|_| QueryError::NotFinite(g.ascii()))
}

fn pair<'a>(command: &str, rest: Span<'a>) -> Result<(Span<'a>, Span<'a>), QueryError> {
    let arity = || QueryError::Arity { command: command.to_string(), expected: "two operands separated by `,`" };
    let (a, b) = rest.split_once(',').ok_or_else(arity)?;
    if b.text.contains(',') {
        return Err(arity());
    }
    Ok((a, b))
}

fn with_category(command: &str, rest: Span<'_>) -> Result<(Operand, CategoryTag), QueryError> {
    let (obj, cat) = rest
        .split_last_word()
        .ok_or(QueryError::Arity { command: command.to_string(), expected: "an operand and a category tag" })?;
    let tag = parse_category(cat.text).map_err(|e| QueryError::shifted(e, cat.at))?;
    Ok((operand(obj)?, tag))
}

fn no_operands(command: &str, rest: Span<'_>, q: Query) -> Result<Query, QueryError> {
    if rest.text.trim().is_empty() {
        Ok(q)
    } else {
        Err(QueryError::Arity { command: command.to_string(), expected: "no operands" })
    }
}

pub fn parse_query(line: &str) -> Result<Query, QueryError> {
    let (cmd, rest) = Span { text: line, at: 0 }.split_first_word();
    let c = cmd.text;
    match c {
        "" => Err(QueryError::Empty),
        "dual" => Ok(Query::Dual(expr(rest)?)),
        "props" => Ok(Query::Props(expr(rest)?)),
        "decompose" => Ok(Query::Decompose(expr(rest)?)),
        "resolve" => Ok(Query::Resolve(expr(rest)?)),
        "hom" | "ext" | "extq" => {
            let (a, b) = pair(c, rest)?;
            let (a, b) = (operand(a)?, operand(b)?);
            Ok(match c {
                "hom" => Query::Hom(a, b),
                "ext" => Query::Ext(a, b),
                _ => Query::ExtCountable(a, b),
            })
        }
        "oracle-ext" => {
            let (g, a) = pair(c, rest)?;
            Ok(Query::OracleExt(finite(g)?, finite(a)?))
        }
        "member" | "injective" | "projective" => {
            let (x, tag) = with_category(c, rest)?;
            Ok(match c {
                "member" => Query::Member(x, tag),
                "injective" => Query::Injective(x, tag),
                _ => Query::Projective(x, tag),
            })
        }
        "derive" => {
            let (f, rest) = rest.split_first_word();
            let functor = match f.text {
                "hom" | "Hom" => Functor::Hom,
                "ext" | "Ext" => Functor::Ext,
                _ => return Err(QueryError::Arity { command: c.to_string(), expected: "`hom` or `ext` and two operands" }),
            };
            let (a, b) = pair(c, rest)?;
            Ok(Query::Derive(functor, operand(a)?, operand(b)?))
        }
        "selftest" => no_operands(c, rest, Query::Selftest),
        "rules" => no_operands(c, rest, Query::Rules),
        other => Err(QueryError::UnknownCommand(other.to_string())),
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Dual(g) => write!(f, "dual {}", g.ascii()),
            Query::Hom(a, b) => write!(f, "hom {} , {}", a.ascii(), b.ascii()),
            Query::Ext(a, b) => write!(f, "ext {} , {}", a.ascii(), b.ascii()),
            Query::ExtCountable(a, b) => write!(f, "extq {} , {}", a.ascii(), b.ascii()),
            Query::Props(g) => write!(f, "props {}", g.ascii()),
            Query::Decompose(g) => write!(f, "decompose {}", g.ascii()),
            Query::Member(x, c) => write!(f, "member {} {c}", x.ascii()),
            Query::Injective(x, c) => write!(f, "injective {} {c}", x.ascii()),
            Query::Projective(x, c) => write!(f, "projective {} {c}", x.ascii()),
            Query::Resolve(g) => write!(f, "resolve {}", g.ascii()),
            Query::OracleExt(g, a) => write!(f, "oracle-ext {} , {}", g.to_expr().ascii(), a.to_expr().ascii()),
            Query::Derive(func, a, b) => {
                write!(f, "derive {} {} , {}", func.to_string().to_lowercase(), a.ascii(), b.ascii())
            }
            Query::Selftest => f.write_str("selftest"),
            Query::Rules => f.write_str("rules"),
        }
    }
}
