//! Input grammar for expressions, operands and category tags.
//!
//! ```text
//! expr := term ('+' term)*
//! term := atom ('^' nat)?
//! atom := Z | Q | R | T | T^w | Sol | C(n) | Pr(p) | Zp(p) | Qp(p)
//!       | PC(p) | SC(p) | Xi(p) | 0
//! ```

use thiserror::Error;

use crate::classify::{CategoryTag, UnknownCategory};
use crate::cover::{CoverExpr, Operand};
use crate::expr::{is_prime, normalize, Atom, GroupExpr, RawAtom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("at {position}: unknown atom `{name}`")]
    UnknownAtom { position: usize, name: String },
    #[error(transparent)]
    UnknownCategory(#[from] UnknownCategory),
}

impl ParseError {
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { position, .. } | ParseError::UnknownAtom { position, .. } => Some(*position),
            ParseError::UnknownCategory(_) => None,
        }
    }
}

enum Item {
    Raw(RawAtom),
    Zero,
    Xi(u64),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { position, message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected `{c}`")))
        }
    }

    fn nat(&mut self) -> Result<(usize, u64), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err(start, "expected a number"));
        }
        self.pos += len;
        let n = self.src[start..self.pos].parse().map_err(|_| self.err(start, "number out of range"))?;
        Ok((start, n))
    }

    fn ident(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_alphanumeric).count();
        self.pos += len;
        (start, &self.src[start..self.pos])
    }

    fn paren_arg(&mut self) -> Result<(usize, u64), ParseError> {
        self.expect('(')?;
        let n = self.nat()?;
        self.expect(')')?;
        Ok(n)
    }

    fn prime_arg(&mut self) -> Result<u64, ParseError> {
        let (at, p) = self.paren_arg()?;
        if is_prime(p) {
            Ok(p)
        } else {
            Err(self.err(at, format!("{p} is not prime")))
        }
    }

    fn atom(&mut self) -> Result<Item, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('0') {
            self.pos += 1;
            return Ok(Item::Zero);
        }
        let (_, name) = self.ident();
        let a = match name {
            "Z" => Atom::Int,
            "Q" => Atom::Rat,
            "R" => Atom::Real,
            "Sol" => Atom::Solenoid,
            "T" => {
                let save = self.pos;
                if self.eat('^') && self.peek() == Some('w') {
                    self.pos += 1;
                    Atom::OmegaTorus
                } else {
                    self.pos = save;
                    Atom::Circle
                }
            }
            "C" => {
                let (at, n) = self.paren_arg()?;
                if n == 0 {
                    return Err(self.err(at, "cyclic order must be positive"));
                }
                return Ok(Item::Raw(RawAtom::CyclicOfOrder(n)));
            }
            "Pr" => Atom::Prufer(self.prime_arg()?),
            "Zp" => Atom::PadicInt(self.prime_arg()?),
            "Qp" => Atom::PadicRat(self.prime_arg()?),
            "PC" => Atom::OmegaProd(self.prime_arg()?),
            "SC" => Atom::OmegaSum(self.prime_arg()?),
            "Xi" => return Ok(Item::Xi(self.prime_arg()?)),
            "" => return Err(self.err(start, "expected an atom")),
            other => return Err(ParseError::UnknownAtom { position: start, name: other.to_string() }),
        };
        Ok(Item::Raw(RawAtom::Atom(a)))
    }

    /// Terms with their repeat counts and start positions.
    fn terms(&mut self) -> Result<Vec<(usize, Item, u64)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            let item = self.atom()?;
            let n = if self.eat('^') { self.nat()?.1 } else { 1 };
            out.push((at, item, n));
            if !self.eat('+') {
                break;
            }
        }
        if let Some(c) = self.peek() {
            return Err(self.err(self.pos, format!("unexpected `{c}`")));
        }
        Ok(out)
    }
}

/// Largest repeat count accepted for `atom^n`.
const MAX_REPEAT: u64 = 1024;

/// Raw atoms, the position and prime of a lone `Xi`, and the term count.
type Items = (Vec<RawAtom>, Option<(usize, u64)>, usize);

fn parse_items(text: &str) -> Result<Items, ParseError> {
    let mut lx = Lexer { src: text, pos: 0 };
    let terms = lx.terms()?;
    let count = terms.len();
    let mut raw = Vec::new();
    let mut xi = None;
    for (at, item, n) in terms {
        if n > MAX_REPEAT {
            return Err(lx.err(at, format!("repeat count {n} exceeds {MAX_REPEAT}")));
        }
        match item {
            Item::Raw(r) => raw.extend(std::iter::repeat_n(r, n as usize)),
            Item::Zero => {}
            Item::Xi(p) => {
                if n != 1 {
                    return Err(lx.err(at, "Xi cannot be repeated"));
                }
                xi = Some((at, p));
            }
        }
    }
    Ok((raw, xi, count))
}

pub fn parse_expr(text: &str) -> Result<GroupExpr, ParseError> {
    let (raw, xi, _) = parse_items(text)?;
    if let Some((at, _)) = xi {
        return Err(ParseError::Syntax { position: at, message: "Xi is a quotient, not an expression".into() });
    }
    normalize(&raw).map_err(|e| ParseError::Syntax { position: 0, message: e.to_string() })
}

/// An expression, or a lone `Xi(p)`.
pub fn parse_operand(text: &str) -> Result<Operand, ParseError> {
    let (raw, xi, count) = parse_items(text)?;
    match xi {
        None => normalize(&raw)
            .map(Operand::Expr)
            .map_err(|e| ParseError::Syntax { position: 0, message: e.to_string() }),
        Some((_, p)) if count == 1 => Ok(Operand::Cover(CoverExpr::Xi(p))),
        Some((at, _)) => {
            Err(ParseError::Syntax { position: at, message: "Xi cannot be summed with other terms".into() })
        }
    }
}

pub fn parse_category(text: &str) -> Result<CategoryTag, ParseError> {
    Ok(text.parse::<CategoryTag>()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composite_cyclic_and_powers() {
        let g = parse_expr("R^2+C(6)").unwrap();
        assert_eq!(g.ascii(), "R^2+C(2)+C(3)");
        assert_eq!(parse_expr(" Zp(2) ").unwrap(), Atom::PadicInt(2).into());
        assert_eq!(parse_expr("0").unwrap(), GroupExpr::zero());
        assert_eq!(parse_expr("0+Z").unwrap(), Atom::Int.into());
    }

    #[test]
    fn omega_torus_versus_circle_power() {
        assert_eq!(parse_expr("T^w").unwrap(), Atom::OmegaTorus.into());
        assert_eq!(parse_expr("T^2").unwrap().ascii(), "T^2");
        assert_eq!(parse_expr("T^w^3").unwrap().ascii(), "T^w^3");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_expr("Z+Foo").unwrap_err(), ParseError::UnknownAtom { position: 2, name: "Foo".into() });
        assert_eq!(parse_expr("Pr(4)").unwrap_err().position(), Some(3));
        assert_eq!(parse_expr("Z+").unwrap_err().position(), Some(2));
        assert!(parse_expr("C(0)").is_err());
        assert!(parse_expr("Z Q").is_err());
    }

    #[test]
    fn xi_only_alone() {
        assert_eq!(parse_operand("Xi(3)").unwrap(), Operand::Cover(CoverExpr::Xi(3)));
        assert!(parse_operand("Xi(3)+Z").is_err());
        assert!(parse_expr("Xi(3)").is_err());
    }

    #[test]
    fn categories() {
        assert!(parse_category("LH(TDLCPAb)").unwrap().heart);
        assert!(matches!(parse_category("Top"), Err(ParseError::UnknownCategory(_))));
    }
}
