//! Recursive-descent parser for algebra expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := factor ['^' ['-'] int]
//! factor := int | 'q' | 'i' | ident | '(' expr ')'
//! ```
//!
//! Multiplication is left-associative and noncommutative. A rational
//! literal `p/r` is integer division; more generally the right operand of
//! `/` must be a nonzero scalar. Negative powers are only allowed on scalars.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, NCPoly};
use crate::scalars::{CScalar, ScalarQ};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        let single = |tok| Spanned { tok, line: l0, col: c0 };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                k += 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '+' => out.push(single(Tok::Plus)),
            '-' => out.push(single(Tok::Minus)),
            '*' => out.push(single(Tok::Star)),
            '/' => out.push(single(Tok::Slash)),
            '^' => out.push(single(Tok::Caret)),
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            c if c.is_ascii_digit() => {
                let start = k;
                while k + 1 < chars.len() && chars[k + 1].is_ascii_digit() {
                    k += 1;
                }
                let s: String = chars[start..=k].iter().collect();
                col += k - start;
                out.push(Spanned { tok: Tok::Int(s.parse().unwrap()), line: l0, col: c0 });
            }
            c if c.is_ascii_alphabetic() => {
                let start = k;
                while k + 1 < chars.len() && chars[k + 1].is_ascii_alphanumeric() {
                    k += 1;
                }
                let s: String = chars[start..=k].iter().collect();
                col += k - start;
                out.push(Spanned { tok: Tok::Ident(s), line: l0, col: c0 });
            }
            other => return Err(Error::Syntax { line, col, msg: format!("unexpected character `{other}`") }),
        }
        col += 1;
        k += 1;
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut sign = 1;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                sign = -1;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if sign < 0 {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.pos;
                    let f = self.power()?;
                    let Some(s) = f.as_scalar() else {
                        self.pos = at;
                        return self.err("divisor must be a scalar");
                    };
                    let Ok(inv) = s.inv() else {
                        self.pos = at;
                        return self.err("division by zero");
                    };
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<NCPoly> {
        let base = self.factor()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(n) = self.peek().clone() else {
            return self.err("expected an integer exponent");
        };
        let Ok(n) = i32::try_from(n) else {
            return self.err("exponent out of range");
        };
        self.bump();
        if neg {
            let Some(s) = base.as_scalar() else {
                return self.err("negative powers are only defined for scalars");
            };
            let Ok(inv) = s.inv() else {
                return self.err("zero raised to a negative power");
            };
            return Ok(pow_poly(&NCPoly::constant(inv), n));
        }
        Ok(pow_poly(&base, n))
    }

    fn factor(&mut self) -> Result<NCPoly> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(NCPoly::constant(ScalarQ::from_rational(BigRational::from_integer(n)).into())),
            Tok::Ident(name) => match name.as_str() {
                "q" => Ok(NCPoly::constant(CScalar::q_pow(1))),
                "i" => Ok(NCPoly::constant(CScalar::i())),
                _ => match self.alphabet.index(&name) {
                    Some(g) => Ok(NCPoly::generator(g)),
                    None => Err(Error::UnknownGenerator { name, line: t.line, col: t.col }),
                },
            },
            Tok::LParen => {
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            _ => {
                self.pos -= usize::from(self.pos > 0 && t.tok != Tok::End);
                self.err("expected a scalar, generator or `(`")
            }
        }
    }
}

fn pow_poly(p: &NCPoly, n: i32) -> NCPoly {
    let mut acc = NCPoly::one();
    for _ in 0..n {
        acc = &acc * p;
    }
    acc
}

/// Parses `src` into a polynomial over `alphabet`.
pub fn parse_expr(src: &str, alphabet: &Alphabet) -> Result<NCPoly> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, alphabet };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parses a scalar expression (no generators).
pub fn parse_scalar(src: &str) -> Result<CScalar> {
    let empty = Alphabet::new::<&str>(&[]).unwrap();
    let p = parse_expr(src, &empty)?;
    p.as_scalar().ok_or_else(|| Error::Invalid(format!("`{src}` is not a scalar")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::Word;

    #[test]
    fn two_term_commutation_relation() {
        let a = Alphabet::new(&["x11", "x12", "x21", "x22", "t"]).unwrap();
        let p = parse_expr("q*x11*x12 - x12*x11", &a).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Word::from_letters(&[0, 1])), CScalar::q_pow(1));
        assert_eq!(p.coeff(&Word::from_letters(&[1, 0])), CScalar::from_int(-1));
    }

    #[test]
    fn inverse_relation_has_three_terms() {
        let a = Alphabet::new(&["tau", "z11", "z12", "z21", "z22"]).unwrap();
        let p = parse_expr("(z11*z22 + q^-1*z12*z21)*tau - 1", &a).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&Word::from_letters(&[2, 3, 0])), CScalar::q_pow(-1));
        assert_eq!(p.constant_term(), CScalar::from_int(-1));
    }

    #[test]
    fn unknown_generator_reports_position() {
        let a = Alphabet::new(&["x11"]).unwrap();
        let e = parse_expr("x11 + x99", &a).unwrap_err();
        assert_eq!(e, Error::UnknownGenerator { name: "x99".into(), line: 1, col: 7 });
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let a = Alphabet::new(&["x"]).unwrap();
        match parse_expr("x *\n  * x", &a).unwrap_err() {
            Error::Syntax { line, col, .. } => assert_eq!((line, col), (2, 3)),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(parse_expr("(x", &a), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("x / x", &a), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("x^-1", &a), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rational_literals_and_quotients() {
        let s = parse_scalar("3/4 * q^-2").unwrap();
        assert_eq!(s, CScalar::from(&ScalarQ::from_ratio(3, 4) * &ScalarQ::q_pow(-2)));
        let f = parse_scalar("(q + 1)/(q^2 + 1)").unwrap();
        let expected = ScalarQ::from_parts(
            crate::scalars::LaurentPoly::from_terms([
                (1, BigRational::from_integer(1.into())),
                (0, BigRational::from_integer(1.into())),
            ]),
            crate::scalars::LaurentPoly::from_terms([
                (2, BigRational::from_integer(1.into())),
                (0, BigRational::from_integer(1.into())),
            ]),
        )
        .unwrap();
        assert_eq!(f, expected.into());
        assert!(parse_scalar("1/0").is_err());
    }
}
