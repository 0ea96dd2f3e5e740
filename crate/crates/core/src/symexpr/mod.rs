//! Exact arithmetic kernel: multivariate polynomials and rational functions
//! over the rationals, with a parser and canonical printer.
//!
//! Every value is kept in canonical form (see [`RatFunc`]), so zero testing
//! is a structural check and printing is deterministic.

mod gcd;
mod parse;
mod poly;
mod ratfunc;
mod vars;

use num_bigint::BigInt;

pub use gcd::gcd;
pub use parse::{parse_ast, parse_tensor_ast, Expr, Interpret, TensorTerm};
pub use poly::Polynomial;
pub use ratfunc::{FieldOp, RatFunc};
pub use vars::{Monomial, Vars};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar.
pub type Rational = num_rational::BigRational;

pub(crate) use poly::fmt_rational;
pub(crate) use vars::is_identifier;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Interprets parsed expressions as rational functions in a fixed variable list.
pub struct RatFuncInterp<'a> {
    pub vars: &'a Vars,
}

impl Interpret for RatFuncInterp<'_> {
    type Value = RatFunc;

    fn num(&self, n: &BigInt) -> Result<RatFunc> {
        Ok(RatFunc::constant(self.vars, Rational::from_integer(n.clone())))
    }

    fn var(&self, name: &str, pos: usize) -> Result<RatFunc> {
        match self.vars.index_of(name) {
            Some(i) => Ok(RatFunc::var(self.vars, i)),
            None => Err(Error::UnknownVariable {
                name: name.to_string(),
                pos: Some(pos),
            }),
        }
    }

    fn add(&self, a: RatFunc, b: RatFunc) -> Result<RatFunc> {
        Ok(a + b)
    }

    fn sub(&self, a: RatFunc, b: RatFunc) -> Result<RatFunc> {
        Ok(a - b)
    }

    fn mul(&self, a: RatFunc, b: RatFunc) -> Result<RatFunc> {
        Ok(a * b)
    }

    fn neg(&self, a: RatFunc) -> Result<RatFunc> {
        Ok(-a)
    }

    fn div(&self, a: RatFunc, b: RatFunc, pos: usize) -> Result<RatFunc> {
        if b.is_zero() {
            return Err(Error::DivisionByZero { pos: Some(pos) });
        }
        Ok(a / b)
    }

    fn pow(&self, a: RatFunc, k: u32) -> Result<RatFunc> {
        Ok(a.pow(k))
    }
}

/// Parse `text` into a canonical rational function over `vars`.
pub fn parse_expr(text: &str, vars: &Vars) -> Result<RatFunc> {
    let ast = parse_ast(text)?;
    RatFuncInterp { vars }.eval(&ast)
}

/// Parse `text`, requiring the result to be a polynomial.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<Polynomial> {
    let f = parse_expr(text, vars)?;
    match f.as_polynomial() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::NotPolynomial(text.to_string())),
    }
}

/// Parse with variable names; convenience for tests and examples.
pub fn parse_in(text: &str, vars: &[&str]) -> Result<RatFunc> {
    parse_expr(text, &Vars::new(vars)?)
}
