//! Polynomials in `h` (standing for ħ) with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symexpr::{fmt_rational, parse_ast, Interpret, Rational};

/// Scalar `c_0 + c_1 h + c_2 h^2 + ...`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HScalar(Vec<Rational>);

impl HScalar {
    pub fn zero() -> HScalar {
        HScalar(Vec::new())
    }

    pub fn one() -> HScalar {
        HScalar::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> HScalar {
        HScalar::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> HScalar {
        HScalar::constant(Rational::from_integer(c.into()))
    }

    /// `c * h^k`.
    pub fn monomial(c: Rational, k: usize) -> HScalar {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        HScalar::from_coeffs(v)
    }

    pub fn hbar() -> HScalar {
        HScalar::monomial(Rational::one(), 1)
    }

    pub fn from_coeffs(mut v: Vec<Rational>) -> HScalar {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        HScalar(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Lowest power of `h` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> HScalar {
        HScalar::from_coeffs(self.0.iter().take(order + 1).cloned().collect())
    }

    pub fn truncate_opt(self, order: Option<usize>) -> HScalar {
        match order {
            Some(n) if self.0.len() > n + 1 => self.truncate(n),
            _ => self,
        }
    }

    pub fn scale(&self, c: &Rational) -> HScalar {
        HScalar::from_coeffs(self.0.iter().map(|x| x * c).collect())
    }

    pub fn parse(text: &str) -> Result<HScalar> {
        HScalarInterp.eval(&parse_ast(text)?)
    }
}

impl Add for &HScalar {
    type Output = HScalar;
    fn add(self, rhs: &HScalar) -> HScalar {
        let n = self.0.len().max(rhs.0.len());
        HScalar::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &HScalar {
    type Output = HScalar;
    fn sub(self, rhs: &HScalar) -> HScalar {
        self + &(-rhs)
    }
}

impl Mul for &HScalar {
    type Output = HScalar;
    fn mul(self, rhs: &HScalar) -> HScalar {
        if self.is_zero() || rhs.is_zero() {
            return HScalar::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        HScalar::from_coeffs(v)
    }
}

impl Neg for &HScalar {
    type Output = HScalar;
    fn neg(self) -> HScalar {
        HScalar(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for HScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "h".to_string(),
                _ => format!("h^{k}"),
            };
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let abs = c.abs();
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", fmt_rational(&abs))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", fmt_rational(&abs))?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

struct HScalarInterp;

impl Interpret for HScalarInterp {
    type Value = HScalar;

    fn num(&self, n: &BigInt) -> Result<HScalar> {
        Ok(HScalar::constant(Rational::from_integer(n.clone())))
    }

    fn var(&self, name: &str, pos: usize) -> Result<HScalar> {
        if name == "h" {
            Ok(HScalar::hbar())
        } else {
            Err(Error::UnknownVariable {
                name: name.to_string(),
                pos: Some(pos),
            })
        }
    }

    fn add(&self, a: HScalar, b: HScalar) -> Result<HScalar> {
        Ok(&a + &b)
    }

    fn sub(&self, a: HScalar, b: HScalar) -> Result<HScalar> {
        Ok(&a - &b)
    }

    fn mul(&self, a: HScalar, b: HScalar) -> Result<HScalar> {
        Ok(&a * &b)
    }

    fn neg(&self, a: HScalar) -> Result<HScalar> {
        Ok(-&a)
    }

    fn div(&self, a: HScalar, b: HScalar, pos: usize) -> Result<HScalar> {
        match b.0.as_slice() {
            [] => Err(Error::DivisionByZero { pos: Some(pos) }),
            [c] => Ok(a.scale(&c.recip())),
            _ => Err(Error::Syntax {
                pos,
                msg: "division by a non-constant h-polynomial".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::rat;

    #[test]
    fn parse_and_print() {
        let s = HScalar::parse("3 - h + h^2/2").unwrap();
        assert_eq!(s.coeffs(), &[rat(3, 1), rat(-1, 1), rat(1, 2)]);
        assert_eq!(s.to_string(), "3 - h + 1/2*h^2");
        assert_eq!(HScalar::parse("-1/2").unwrap().to_string(), "-1/2");
        assert!(HScalar::parse("1/h").is_err());
    }

    #[test]
    fn product_and_truncation() {
        let a = HScalar::parse("1 - h").unwrap();
        let sq = &a * &a;
        assert_eq!(sq, HScalar::parse("1 - 2*h + h^2").unwrap());
        assert_eq!(sq.truncate(1), HScalar::parse("1 - 2*h").unwrap());
        assert_eq!(HScalar::parse("h^2 + h^3").unwrap().valuation(), Some(2));
    }
}
