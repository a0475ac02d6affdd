//! Expression grammar for elements of `M_q(n)`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/')? unary)*       juxtaposition multiplies
//! unary   := '-' unary | power
//! power   := atom ('^' '-'? integer)?
//! atom    := integer | 'q' | 't[' i ',' j ']' | 'D[{' labels '},{' labels '}]' | '(' expr ')'
//! ```
//!
//! Negative exponents and `/` are only allowed on invertible scalars
//! (`c q^k`). The canonical rendering of [`Element`] parses back to the same
//! element.

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, QMatrixAlgebra};
use crate::coeffs::{Field, Laurent};
use crate::minors::{quantum_minor, IndexSet, MinorError, MinorId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{atom} at position {pos} is out of range for n = {n}")]
    OutOfRange { atom: String, pos: usize, n: u8 },
    #[error("at position {pos}: {msg}")]
    NotInvertible { pos: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("at position {pos}: {source}")]
    Minor { pos: usize, source: MinorError },
}

impl ParseError {
    pub fn exceeds_degree_cap(&self) -> bool {
        match self {
            ParseError::Algebra(e) => e.exceeds_degree_cap(),
            ParseError::Minor { source, .. } => source.exceeds_degree_cap(),
            _ => false,
        }
    }
}

/// Parses `text` into a normal-form element of `alg`.
pub fn parse_expression<F: Field>(alg: &QMatrixAlgebra<F>, text: &str) -> Result<Element<F>, ParseError> {
    let mut p = Parser {
        alg,
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a, F> {
    alg: &'a QMatrixAlgebra<F>,
    src: &'a [u8],
    pos: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn syntax(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Element<F>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'q' || c == b't' || c == b'D' || c == b'(')
    }

    fn term(&mut self) -> Result<Element<F>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.alg.multiply(&acc, &rhs)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    let inv = invertible_scalar(&rhs).ok_or(ParseError::NotInvertible {
                        pos: at,
                        msg: "division needs an invertible scalar c*q^k".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ if self.starts_atom() => {
                    let rhs = self.unary()?;
                    acc = self.alg.multiply(&acc, &rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Element<F>, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Element<F>, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let k = self.integer()?;
        let k: u32 = k.parse().map_err(|_| ParseError::Syntax {
            pos: at,
            msg: "exponent too large".into(),
        })?;
        if negative {
            let inv = invertible_scalar(&base).ok_or(ParseError::NotInvertible {
                pos: at,
                msg: "negative exponents need an invertible scalar c*q^k".into(),
            })?;
            return Ok(Element::scalar(self.alg.n(), inv.pow(k)));
        }
        Ok(self.alg.pow(&base, k)?)
    }

    fn integer(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn label(&mut self) -> Result<u8, ParseError> {
        let at = self.pos;
        self.integer()?.parse().map_err(|_| ParseError::Syntax {
            pos: at,
            msg: "label too large".into(),
        })
    }

    fn atom(&mut self) -> Result<Element<F>, ParseError> {
        let n = self.alg.n();
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.integer()?;
                let c = F::parse_literal(&digits).ok_or_else(|| self.syntax("bad integer literal"))?;
                Ok(Element::scalar(n, Laurent::constant(c)))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Element::scalar(n, Laurent::q()))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                self.expect(b'[')?;
                let i = self.label()?;
                self.expect(b',')?;
                let j = self.label()?;
                self.expect(b']')?;
                self.alg
                    .gen(i as usize, j as usize)
                    .map_err(|_| ParseError::OutOfRange {
                        atom: format!("t[{i},{j}]"),
                        pos: start,
                        n,
                    })
            }
            Some(b'D') => {
                self.pos += 1;
                self.expect(b'[')?;
                let rows = self.label_set()?;
                self.expect(b',')?;
                let cols = self.label_set()?;
                self.expect(b']')?;
                let atom = format!("D[{{{}}},{{{}}}]", join(&rows), join(&cols));
                if rows.iter().chain(&cols).any(|&l| l == 0 || l > n) {
                    return Err(ParseError::OutOfRange { atom, pos: start, n });
                }
                let id = IndexSet::from_unsorted(rows)
                    .and_then(|r| MinorId::new(r, IndexSet::from_unsorted(cols)?))
                    .map_err(|source| ParseError::Minor { pos: start, source })?;
                quantum_minor(self.alg, &id).map_err(|source| ParseError::Minor { pos: start, source })
            }
            Some(_) => Err(self.syntax("expected an integer, q, t[i,j], D[{..},{..}] or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn label_set(&mut self) -> Result<Vec<u8>, ParseError> {
        self.expect(b'{')?;
        let mut v = vec![self.label()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            v.push(self.label()?);
        }
        self.expect(b'}')?;
        Ok(v)
    }
}

fn join(v: &[u8]) -> String {
    v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

fn invertible_scalar<F: Field>(e: &Element<F>) -> Option<Laurent<F>> {
    e.as_scalar()?.unit_inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QAlgebra;

    #[test]
    fn determinant_text() {
        let a = QAlgebra::new(2).unwrap();
        let e = parse_expression(&a, "t[1,1]*t[2,2] - q*t[1,2]*t[2,1]").unwrap();
        let d = quantum_minor(&a, &MinorId::from_labels(&[1, 2], &[1, 2]).unwrap()).unwrap();
        assert_eq!(e, d);
        assert_eq!(parse_expression(&a, "D[{1,2},{1,2}]").unwrap(), d);
    }

    #[test]
    fn scalar_multiples() {
        let a = QAlgebra::new(2).unwrap();
        let e = parse_expression(&a, "q^-1 * t[1,2]").unwrap();
        assert_eq!(e, a.t(1, 2).scale(&Laurent::q_pow(-1)));
        let h = parse_expression(&a, "3/2*q^2 t[1,1]").unwrap();
        assert_eq!(h.to_string(), "(3/2*q^2) * t[1,1]");
    }

    #[test]
    fn canonical_text_round_trips() {
        let a = QAlgebra::new(3).unwrap();
        let x = parse_expression(&a, "(t[3,3] + q t[2,1]) * (t[1,2] - 2) * t[2,2]^2").unwrap();
        let back = parse_expression(&a, &x.to_string()).unwrap();
        assert_eq!(x, back);
        assert_eq!(parse_expression(&a, "0").unwrap(), a.zero());
    }

    #[test]
    fn errors_carry_positions() {
        let a = QAlgebra::new(2).unwrap();
        match parse_expression(&a, "t[1,1] + t[3,1]") {
            Err(ParseError::OutOfRange { atom, pos, .. }) => {
                assert_eq!(atom, "t[3,1]");
                assert_eq!(pos, 9);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_expression(&a, "t[1,1] +"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_expression(&a, "t[1,1] / (1 + q)"),
            Err(ParseError::NotInvertible { .. })
        ));
        assert!(matches!(
            parse_expression(&a, "t[1,1]^-1"),
            Err(ParseError::NotInvertible { .. })
        ));
    }

    #[test]
    fn minors_in_expressions() {
        let a = QAlgebra::new(3).unwrap();
        let e = parse_expression(&a, "D[{1,2},{1,3}]").unwrap();
        let d = quantum_minor(&a, &MinorId::from_labels(&[1, 2], &[1, 3]).unwrap()).unwrap();
        assert_eq!(e, d);
        assert!(matches!(
            parse_expression(&a, "D[{1,4},{1,2}]"),
            Err(ParseError::OutOfRange { .. })
        ));
        assert!(parse_expression(&a, "D[{1},{1,2}]").is_err());
    }
}
