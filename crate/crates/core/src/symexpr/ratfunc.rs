use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::gcd::gcd;
use super::poly::Polynomial;
use super::vars::Vars;
use super::Rational;
use crate::error::{Error, Result};

/// Rational function `num / den` in canonical form.
///
/// `gcd(num, den) = 1`, `den` has coprime integer coefficients and a positive
/// graded-lex leading coefficient, and zero is `0 / 1`. Two rational functions
/// are equal as functions iff they are structurally equal.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero { pos: None });
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> RatFunc {
        let vars = num.vars().clone();
        if num.is_zero() {
            return RatFunc::zero(&vars);
        }
        if let Some(c) = den.constant_value() {
            return RatFunc {
                num: num.scale(&c.recip()),
                den: Polynomial::one(&vars),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let (factor, den) = den.integer_primitive();
        RatFunc {
            num: num.scale(&factor.recip()),
            den,
        }
    }

    pub fn zero(vars: &Vars) -> RatFunc {
        RatFunc {
            num: Polynomial::zero(vars),
            den: Polynomial::one(vars),
        }
    }

    pub fn one(vars: &Vars) -> RatFunc {
        RatFunc::from_poly(Polynomial::one(vars))
    }

    pub fn constant(vars: &Vars, c: Rational) -> RatFunc {
        RatFunc::from_poly(Polynomial::constant(vars, c))
    }

    pub fn from_int(vars: &Vars, c: i64) -> RatFunc {
        RatFunc::constant(vars, Rational::from_integer(c.into()))
    }

    pub fn var(vars: &Vars, i: usize) -> RatFunc {
        RatFunc::from_poly(Polynomial::var(vars, i))
    }

    pub fn from_poly(p: Polynomial) -> RatFunc {
        let vars = p.vars().clone();
        RatFunc {
            num: p,
            den: Polynomial::one(&vars),
        }
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.vars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Checked field operation; rejects mismatched variables and division by
    /// the zero function.
    pub fn field_op(&self, other: &RatFunc, op: FieldOp) -> Result<RatFunc> {
        self.vars().ensure_same(other.vars())?;
        Ok(match op {
            FieldOp::Add => self + other,
            FieldOp::Sub => self - other,
            FieldOp::Mul => self * other,
            FieldOp::Div => self.checked_div(other)?,
        })
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero { pos: None });
        }
        Ok(self * &other.recip_unchecked())
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero { pos: None });
        }
        Ok(self.recip_unchecked())
    }

    fn recip_unchecked(&self) -> RatFunc {
        let (factor, den) = self.num.integer_primitive();
        RatFunc {
            num: self.den.scale(&factor.recip()),
            den,
        }
    }

    pub fn pow(&self, k: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// Partial derivative with respect to variable index `i` (quotient rule).
    pub fn derivative(&self, i: usize) -> RatFunc {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative(i));
        }
        let dn = self.num.derivative(i);
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return Self::canonical(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::canonical(num, self.den.pow(2))
    }

    /// Partial derivative by variable name.
    pub fn partial(&self, name: &str) -> Result<RatFunc> {
        let i = self.vars().require(name)?;
        Ok(self.derivative(i))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars().len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars().len(),
                found: point.len(),
            });
        }
        let d = self.den.evaluate(point);
        if d.is_zero() {
            let shown: Vec<String> = self
                .vars()
                .names()
                .iter()
                .zip(point)
                .map(|(n, x)| format!("{n}={}", super::poly::fmt_rational(x)))
                .collect();
            return Err(Error::Pole {
                point: shown.join(", "),
            });
        }
        Ok(self.num.evaluate(point) / d)
    }

    /// Evaluate at a named point; every variable must be assigned.
    pub fn evaluate_at(&self, point: &[(&str, Rational)]) -> Result<Rational> {
        let mut values = vec![None; self.vars().len()];
        for (name, x) in point {
            let i = self.vars().require(name)?;
            values[i] = Some(x.clone());
        }
        let values: Vec<Rational> = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::Invalid(format!("variable `{}` not assigned", self.vars().name(i))))
            })
            .collect::<Result<_>>()?;
        self.evaluate(&values)
    }

    pub fn total_degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.vars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel so the product is already reduced
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let (factor, den) = den.integer_primitive();
        RatFunc {
            num: num.scale(&factor.recip()),
            den,
        }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] otherwise.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        let den = self.den.to_string();
        if self.num.num_terms() > 1 {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        let bare = self.den.num_terms() == 1 && !den.contains('*') && !den.contains('/');
        if bare {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_expr;

    fn v() -> Vars {
        Vars::new(&["q", "p"]).unwrap()
    }

    fn e(s: &str) -> RatFunc {
        parse_expr(s, &v()).unwrap()
    }

    #[test]
    fn field_op_examples() {
        assert_eq!(e("1+q").field_op(&e("1-q"), FieldOp::Mul).unwrap(), e("1 - q^2"));
        let quotient = e("q^2-1").field_op(&e("q-1"), FieldOp::Div).unwrap();
        assert_eq!(quotient, e("q+1"));
        // oracle: multiply back
        assert_eq!(&quotient * &e("q-1"), e("q^2-1"));
        let f = e("(q*p + 1)/(q - 2)");
        assert!((&f + &(-&f)).is_zero());
        assert!(matches!(
            e("q").field_op(&e("0"), FieldOp::Div),
            Err(Error::DivisionByZero { .. })
        ));
    }

    #[test]
    fn mismatched_vars_rejected() {
        let w = Vars::new(&["x"]).unwrap();
        let a = RatFunc::var(&w, 0);
        assert!(matches!(
            a.field_op(&e("q"), FieldOp::Add),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(e("q^2*p").partial("q").unwrap(), e("2*q*p"));
        assert!(e("1/(1+q)").partial("p").unwrap().is_zero());
        assert_eq!(e("1/(1+q)").partial("q").unwrap(), e("-1/(1+q)^2"));
        assert!(matches!(e("q").partial("z"), Err(Error::UnknownVariable { .. })));
    }

    #[test]
    fn evaluate_examples() {
        let two = Rational::from_integer(2.into());
        let one = crate::symexpr::int(1);
        assert_eq!(
            e("q^2+p").evaluate_at(&[("q", two), ("p", one.clone())]).unwrap(),
            Rational::from_integer(5.into())
        );
        let pole = e("1/(1+q)").evaluate_at(&[("q", -one.clone()), ("p", one.clone())]);
        assert!(matches!(pole, Err(Error::Pole { .. })));
        assert!(e("0").evaluate(&[one.clone(), one]).unwrap().is_zero());
    }

    #[test]
    fn is_zero_examples() {
        assert!((e("(q+1)^2") - e("q^2") - e("2*q") - e("1")).is_zero());
        assert!(!(e("q") - e("p")).is_zero());
        assert!((e("(q^2-1)/(q-1)") - e("q+1")).is_zero());
    }

    #[test]
    fn denominator_is_integer_primitive() {
        let f = e("1/(2+2*q)");
        assert_eq!(f.den().to_string(), "q + 1");
        assert_eq!(f.to_string(), "1/2/(q + 1)");
        assert_eq!(e("-1/(1+2*q)").to_string(), "-1/(2*q + 1)");
        assert_eq!(e("1/q^2").to_string(), "1/q^2");
        assert_eq!(e("1/(q*p)").to_string(), "1/(q*p)");
    }
}
