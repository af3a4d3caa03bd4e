//! Text parser for sums of monomials.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! poly    := sign? term (('+' | '-') term)*
//! term    := factor ('*'? factor)*
//! factor  := integer ('/' integer)? | variable ('^' integer)?
//! variable:= 'z1' | 'z2' | 'z3' | 'x' | 'y' | 'z'
//! ```
//!
//! An implicit product is accepted only in front of a variable.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Rational, SparsePolynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize, String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(text: &str, nvars: usize) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i;
        match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((pos, Tok::Plus)),
            '-' => out.push((pos, Tok::Minus)),
            '*' => out.push((pos, Tok::Star)),
            '/' => out.push((pos, Tok::Slash)),
            '^' => out.push((pos, Tok::Caret)),
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((pos, Tok::Num(s.parse().expect("digits"))));
                continue;
            }
            _ if c.is_alphabetic() => {
                let start = i;
                i += 1;
                // `z` followed by digits is an indexed variable, otherwise an alias.
                if c == 'z' && i < chars.len() && chars[i].is_ascii_digit() {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                } else {
                    while i < chars.len() && chars[i].is_alphabetic() {
                        i += 1;
                    }
                }
                let name: String = chars[start..i].iter().collect();
                let index = match name.as_str() {
                    "x" | "z1" => 0,
                    "y" | "z2" => 1,
                    "z" | "z3" => 2,
                    _ => return Err(Error::UnknownVariable { pos, name }),
                };
                if index >= nvars {
                    return Err(Error::VariableCount { pos, name, nvars });
                }
                out.push((pos, Tok::Var(index, name)));
                continue;
            }
            _ => {
                return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn syntax<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.to_string() })
    }

    fn polynomial(&mut self) -> Result<SparsePolynomial> {
        let mut out = SparsePolynomial::zero(self.nvars);
        if self.peek().is_none() {
            return self.syntax("empty expression");
        }
        let mut negative = match self.peek() {
            Some(Tok::Plus) => {
                self.at += 1;
                false
            }
            Some(Tok::Minus) => {
                self.at += 1;
                true
            }
            _ => false,
        };
        loop {
            let (exp, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            out.add_term(exp, c);
            match self.next() {
                None => break,
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                Some(_) => {
                    self.at -= 1;
                    return self.syntax("expected `+` or `-`");
                }
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Vec<u32>, Rational)> {
        let mut exp = vec![0u32; self.nvars];
        let mut coeff = Rational::one();
        self.factor(&mut exp, &mut coeff)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    self.factor(&mut exp, &mut coeff)?;
                }
                Some(Tok::Var(..)) => self.factor(&mut exp, &mut coeff)?,
                _ => break,
            }
        }
        Ok((exp, coeff))
    }

    fn factor(&mut self, exp: &mut [u32], coeff: &mut Rational) -> Result<()> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    match self.next() {
                        Some(Tok::Num(d)) if !d.is_zero() => value /= Rational::from_integer(d),
                        Some(Tok::Num(_)) => {
                            self.at -= 1;
                            return self.syntax("zero denominator");
                        }
                        _ => {
                            self.at -= 1;
                            return self.syntax("expected denominator");
                        }
                    }
                }
                *coeff *= value;
                Ok(())
            }
            Some(Tok::Var(index, _)) => {
                let mut power = 1u32;
                if self.peek() == Some(&Tok::Caret) {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Minus) => return Err(Error::NegativeExponent { pos: self.pos() }),
                        Some(Tok::Num(k)) => {
                            power = match u32::try_from(&k) {
                                Ok(k) => k,
                                Err(_) => return self.syntax("exponent too large"),
                            };
                            self.at += 1;
                        }
                        _ => return self.syntax("expected exponent"),
                    }
                }
                exp[index] = exp[index]
                    .checked_add(power)
                    .ok_or(Error::Syntax { pos: self.pos(), msg: "exponent overflow".into() })?;
                Ok(())
            }
            Some(_) => {
                self.at -= 1;
                self.syntax("expected a number or a variable")
            }
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parse a polynomial in `nvars ∈ {2, 3}` variables, combining like terms.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<SparsePolynomial> {
    if !(2..=3).contains(&nvars) {
        return Err(Error::UnsupportedDimension(nvars));
    }
    let toks = lex(text, nvars)?;
    let mut p = Parser { toks, at: 0, end: text.chars().count(), nvars };
    p.polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn direct_term_reading() {
        let p = parse_polynomial("z1^2 + z2^3", 2).unwrap();
        assert_eq!(p.support(), vec![vec![0, 3], vec![2, 0]]);
        let q = parse_polynomial("2*z1*z2^3 - z3^7", 3).unwrap();
        assert_eq!(q.coefficient(&[1, 3, 0]), rat(2));
        assert_eq!(q.coefficient(&[0, 0, 7]), rat(-1));
        assert_eq!(q.num_terms(), 2);
        let r = parse_polynomial("z1^2 - z1^2 + z2", 2).unwrap();
        assert_eq!(r.support(), vec![vec![0, 1]]);
    }

    #[test]
    fn aliases_rationals_and_implicit_products() {
        let p = parse_polynomial("3/4 x y^2 - 2z", 3).unwrap();
        assert_eq!(p.coefficient(&[1, 2, 0]), rat(3) / rat(4));
        assert_eq!(p.coefficient(&[0, 0, 1]), rat(-2));
        assert_eq!(parse_polynomial("z1 z1 z2", 2).unwrap().support(), vec![vec![2, 1]]);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_polynomial("z1^-1", 2), Err(Error::NegativeExponent { pos: 3 }));
        assert!(matches!(parse_polynomial("z1 + w", 2), Err(Error::UnknownVariable { pos: 5, .. })));
        assert!(matches!(parse_polynomial("z1 + z3", 2), Err(Error::VariableCount { pos: 5, .. })));
        assert!(matches!(parse_polynomial("z1 + + z2", 2), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_polynomial("(z1)", 2), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_polynomial("", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("z1", 4), Err(Error::UnsupportedDimension(4))));
        assert!(matches!(parse_polynomial("z1 2", 2), Err(Error::Syntax { pos: 3, .. })));
    }
}
