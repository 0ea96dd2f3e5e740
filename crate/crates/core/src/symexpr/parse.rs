//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | identifier | '(' sum ')'
//! ```
//!
//! Tensor sums (coproduct images) extend the top level with the separator
//! `(x)`, which binds looser than `*` and tighter than `+`:
//!
//! ```text
//! tsum    := tterm (('+' | '-') tterm)*
//! tterm   := term ('(x)' term)*
//! ```

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div { lhs: Box<Expr>, rhs: Box<Expr>, pos: usize },
    Pow(Box<Expr>, u32),
}

/// One summand of a tensor sum: `sign * f_1 (x) f_2 (x) ... (x) f_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorTerm {
    pub negate: bool,
    pub factors: Vec<Expr>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
}

fn lex(text: &str, tensor: bool) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if tensor && text[i..].starts_with("(x)") {
            out.push((Tok::Tensor, i));
            i += 3;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(text[start..i].parse().expect("digits")), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        match self.bump() {
            Some((t, _)) if t == want => Ok(()),
            Some((t, p)) => Err(Error::Syntax {
                pos: p,
                msg: format!("expected {what}, found {}", describe(&t)),
            }),
            None => Err(Error::Syntax {
                pos: self.end,
                msg: format!("expected {what}, found end of input"),
            }),
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.bump();
                    lhs = Expr::Div {
                        lhs: Box::new(lhs),
                        rhs: Box::new(self.unary()?),
                        pos,
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some((Tok::Num(n), p)) => {
                    let k: u32 = n.try_into().map_err(|_| Error::Syntax {
                        pos: p,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                Some((t, p)) => Err(Error::Syntax {
                    pos: p,
                    msg: format!("exponent must be a nonnegative integer, found {}", describe(&t)),
                }),
                None => Err(Error::Syntax {
                    pos: self.end,
                    msg: "missing exponent".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some((Tok::Num(n), _)) => Ok(Expr::Num(n)),
            Some((Tok::Ident(name), pos)) => Ok(Expr::Var { name, pos }),
            Some((Tok::LParen, _)) => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some((t, p)) => Err(Error::Syntax {
                pos: p,
                msg: format!("expected a number, variable or `(`, found {}", describe(&t)),
            }),
            None => Err(Error::Syntax {
                pos: self.end,
                msg: "unexpected end of input".into(),
            }),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.toks.get(self.at) {
            None => Ok(()),
            Some((t, p)) => Err(Error::Syntax {
                pos: *p,
                msg: format!("unexpected {}", describe(t)),
            }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Tensor => "`(x)`".into(),
    }
}

/// Parse an expression into an AST.
pub fn parse_ast(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text, false)?,
        at: 0,
        end: text.len(),
    };
    let e = p.sum()?;
    p.finish()?;
    Ok(e)
}

/// Parse a tensor sum such as `xi(x)1 - h*eta(x)xi + 1(x)xi`.
pub fn parse_tensor_ast(text: &str) -> Result<Vec<TensorTerm>> {
    let mut p = Parser {
        toks: lex(text, true)?,
        at: 0,
        end: text.len(),
    };
    let mut terms = Vec::new();
    let mut negate = false;
    loop {
        let mut factors = vec![p.term()?];
        while let Some(Tok::Tensor) = p.peek() {
            p.bump();
            factors.push(p.term()?);
        }
        terms.push(TensorTerm { negate, factors });
        match p.peek() {
            Some(Tok::Plus) => {
                p.bump();
                negate = false;
            }
            Some(Tok::Minus) => {
                p.bump();
                negate = true;
            }
            _ => break,
        }
    }
    p.finish()?;
    Ok(terms)
}

/// A target algebra for evaluating parsed expressions.
pub trait Interpret {
    type Value: Clone;

    fn num(&self, n: &BigInt) -> Result<Self::Value>;
    fn var(&self, name: &str, pos: usize) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value>;

    fn pow(&self, a: Self::Value, k: u32) -> Result<Self::Value> {
        let mut acc = self.num(&BigInt::from(1))?;
        for _ in 0..k {
            acc = self.mul(acc, a.clone())?;
        }
        Ok(acc)
    }

    fn eval(&self, e: &Expr) -> Result<Self::Value> {
        match e {
            Expr::Num(n) => self.num(n),
            Expr::Var { name, pos } => self.var(name, *pos),
            Expr::Neg(a) => {
                let a = self.eval(a)?;
                self.neg(a)
            }
            Expr::Add(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.add(a, b)
            }
            Expr::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.sub(a, b)
            }
            Expr::Mul(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.mul(a, b)
            }
            Expr::Div { lhs, rhs, pos } => {
                let (a, b) = (self.eval(lhs)?, self.eval(rhs)?);
                self.div(a, b, *pos)
            }
            Expr::Pow(a, k) => {
                let a = self.eval(a)?;
                self.pow(a, *k)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        // -q^2 is -(q^2); 1/2*q is (1/2)*q
        let e = parse_ast("-q^2").unwrap();
        assert!(matches!(e, Expr::Neg(ref inner) if matches!(**inner, Expr::Pow(_, 2))));
        let e = parse_ast("1/2*q").unwrap();
        assert!(matches!(e, Expr::Mul(ref l, _) if matches!(**l, Expr::Div { .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_ast("q + * p") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_ast("(q + p") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_ast("q^-1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_ast("q $ p"), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn tensor_terms() {
        let t = parse_tensor_ast("xi(x)1 - h*eta(x)xi + 1(x)xi").unwrap();
        assert_eq!(t.len(), 3);
        assert!(t[1].negate);
        assert!(t.iter().all(|t| t.factors.len() == 2));
    }
}
