//! Polynomial text grammar.
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := integer ('/' integer)? | variable ('^' integer)?
//! ```
//!
//! Whitespace between tokens is ignored, but two factors must always be
//! joined by `*`: `2X` and `X Y` are rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::Field;
use super::monomial::Monomial;
use super::poly::{Polynomial, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(v)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<Ring<F>>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn integer(&mut self, what: &str) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn poly(&mut self) -> Result<Vec<(Monomial, F::Elem)>> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            None => return self.err("empty polynomial"),
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { field.neg(&c) } else { c }));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                Some(_) => return self.err("expected `*`, `+` or `-` (juxtaposition is not allowed)"),
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Monomial, F::Elem)> {
        let field = self.ring.field();
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        loop {
            match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.pos += 1;
                    num *= v;
                    if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        let d = self.integer("denominator")?;
                        if d.is_zero() {
                            self.pos -= 1;
                            return self.err("division by zero");
                        }
                        den *= d;
                    }
                }
                Some(Tok::Ident(name)) => {
                    let at = self.offset();
                    self.pos += 1;
                    let idx = self
                        .ring
                        .var_index(&name)
                        .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                    let mut e = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        let v = self.integer("exponent")?;
                        e = u32::try_from(v).map_err(|_| Error::Parse {
                            pos: at,
                            msg: "exponent too large".into(),
                        })?;
                    }
                    exps[idx] = exps[idx].checked_add(e).ok_or_else(|| Error::Parse {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?;
                }
                _ => return self.err("expected a coefficient or a variable"),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        let c = field.from_ratio(&num, &den)?;
        Ok((Monomial::new(exps), c))
    }
}

/// Parses `text` over `ring`. Printing the result and parsing again gives
/// back the same polynomial.
pub fn parse_polynomial<F: Field>(text: &str, ring: &Arc<Ring<F>>) -> Result<Polynomial<F>> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ring,
    };
    let terms = p.poly()?;
    Ok(Polynomial::from_terms(ring, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rationals};

    fn q3() -> Arc<Ring<Rationals>> {
        Ring::projective(Rationals, 2)
    }

    #[test]
    fn difference_of_squares() {
        let p = parse_polynomial("X^2 - Y^2", &q3()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert_eq!(p.to_string(), "X^2 - Y^2");
    }

    #[test]
    fn zero_parses() {
        let p = parse_polynomial("0", &q3()).unwrap();
        assert!(p.is_zero());
        assert!(parse_polynomial("X - X", &q3()).unwrap().is_zero());
    }

    #[test]
    fn monomial_of_degree_five() {
        let p = parse_polynomial("X*Y^2*Z^2", &q3()).unwrap();
        let m = p.as_monomial().unwrap();
        assert_eq!(m.exps(), &[1, 2, 2]);
        assert_eq!(m.degree(), 5);
    }

    #[test]
    fn indexed_names_and_aliases() {
        let r = q3();
        assert_eq!(
            parse_polynomial("X0*X2", &r).unwrap(),
            parse_polynomial("X*Z", &r).unwrap()
        );
        let r4 = Ring::projective(Rationals, 3);
        assert!(parse_polynomial("X3^2 - X0*X1", &r4).is_ok());
        assert!(matches!(parse_polynomial("Y", &r4), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_polynomial("X4", &r4), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn rational_coefficients() {
        let r = q3();
        let p = parse_polynomial("-1/2*X*Y + 3/6*Z^2", &r).unwrap();
        assert_eq!(p.to_string(), "-1/2*X*Y + 1/2*Z^2");
        let f2 = Ring::projective(PrimeField::new(2).unwrap(), 2);
        assert!(matches!(
            parse_polynomial("1/2*X", &f2),
            Err(Error::Unrepresentable(..))
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let r = q3();
        match parse_polynomial("X Y", &r) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("2X", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("2 3", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("X^", &r), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_polynomial("X + ", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("", &r), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_polynomial("X # Y", &r),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(parse_polynomial("1/0", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let r = q3();
        assert_eq!(
            parse_polynomial(" X ^ 2 *Y -  3 * Z^3 ", &r).unwrap(),
            parse_polynomial("X^2*Y-3*Z^3", &r).unwrap()
        );
    }

    #[test]
    fn print_parse_fixed_point() {
        let r = q3();
        for s in ["X^2 - Y^2", "-1/2*X*Y", "3*X^4 + Y^3*Z - 7", "0", "X*Y^2*Z^2"] {
            let p = parse_polynomial(s, &r).unwrap();
            let printed = p.to_string();
            assert_eq!(printed, s);
            assert_eq!(parse_polynomial(&printed, &r).unwrap(), p);
        }
    }
}
