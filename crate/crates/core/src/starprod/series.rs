use std::fmt;

use crate::error::{Error, Result};
use crate::hscalar::HScalar;
use crate::symexpr::{parse_ast, Interpret, Polynomial, RatFunc, RatFuncInterp, Vars};

/// Truncated formal power series `f_0 + f_1 h + ... + f_K h^K + O(h^{K+1})`.
///
/// Only the known prefix is stored: orders above [`known_order`] are unknown,
/// never implicitly zero.
///
/// [`known_order`]: HbarSeries::known_order
#[derive(Clone, PartialEq, Eq)]
pub struct HbarSeries {
    coeffs: Vec<RatFunc>,
}

impl HbarSeries {
    pub fn new(coeffs: Vec<RatFunc>) -> Result<HbarSeries> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::Invalid("a series needs at least one coefficient".into()))?;
        for c in &coeffs[1..] {
            first.vars().ensure_same(c.vars())?;
        }
        Ok(HbarSeries { coeffs })
    }

    /// A function with no `h`-dependence, known through `order`.
    pub fn exact(f: RatFunc, order: usize) -> HbarSeries {
        let zero = RatFunc::zero(f.vars());
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = f;
        HbarSeries { coeffs }
    }

    pub fn zero(vars: &Vars, order: usize) -> HbarSeries {
        HbarSeries::exact(RatFunc::zero(vars), order)
    }

    pub fn one(vars: &Vars, order: usize) -> HbarSeries {
        HbarSeries::exact(RatFunc::one(vars), order)
    }

    /// Parse an expression in `vars` and `h`; `h` may not occur in a
    /// denominator. Terms beyond `h^order` are dropped.
    pub fn parse(text: &str, vars: &Vars, order: usize) -> Result<HbarSeries> {
        if vars.index_of("h").is_some() {
            return Err(Error::Invalid("`h` is reserved for the deformation parameter".into()));
        }
        let ext = vars.with_extra("h")?;
        let f = RatFuncInterp { vars: &ext }.eval(&parse_ast(text)?)?;
        let hi = ext.len() - 1;
        if f.den().degree_in(hi) > 0 {
            return Err(Error::Invalid(format!("`h` appears in a denominator in `{text}`")));
        }
        let den = drop_last_var(f.den(), vars);
        let mut coeffs = vec![RatFunc::zero(vars); order + 1];
        for (k, c) in f.num().to_univariate(hi).into_iter().enumerate() {
            if k > order {
                break;
            }
            coeffs[k] = RatFunc::new(drop_last_var(&c, vars), den.clone())?;
        }
        Ok(HbarSeries { coeffs })
    }

    pub fn vars(&self) -> &Vars {
        self.coeffs[0].vars()
    }

    pub fn known_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Coefficient of `h^k`, if known.
    pub fn coeff(&self, k: usize) -> Option<&RatFunc> {
        self.coeffs.get(k)
    }

    pub fn leading(&self) -> &RatFunc {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> HbarSeries {
        HbarSeries {
            coeffs: self.coeffs[..=order.min(self.known_order())].to_vec(),
        }
    }

    /// True iff every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_zero)
    }

    /// Lowest known order with a nonzero coefficient.
    pub fn leading_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &HbarSeries) -> Result<HbarSeries> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &HbarSeries) -> Result<HbarSeries> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> HbarSeries {
        HbarSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn zip_with(&self, other: &HbarSeries, f: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> Result<HbarSeries> {
        self.vars().ensure_same(other.vars())?;
        let k = self.known_order().min(other.known_order());
        Ok(HbarSeries {
            coeffs: (0..=k).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect(),
        })
    }

    /// Multiplication by an `h`-polynomial. A factor `h^m` shifts the series
    /// up, so the result is known through `K + m` for the lowest such `m`.
    pub fn scale_h(&self, c: &HScalar) -> HbarSeries {
        let Some(m) = c.valuation() else {
            return HbarSeries::zero(self.vars(), self.known_order());
        };
        let k = self.known_order() + m;
        let vars = self.vars().clone();
        let coeffs = (0..=k)
            .map(|n| {
                let mut acc = RatFunc::zero(&vars);
                for (j, cj) in c.coeffs().iter().enumerate().take(n + 1) {
                    if let Some(s) = self.coeffs.get(n - j) {
                        acc = &acc + &s.scale(cj);
                    }
                }
                acc
            })
            .collect();
        HbarSeries { coeffs }
    }

    /// Shift down one power of `h`; fails unless the constant term vanishes.
    pub fn divide_by_hbar(&self) -> Result<HbarSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotDivisible(self.coeffs[0].to_string()));
        }
        if self.coeffs.len() < 2 {
            return Err(Error::InsufficientOrder { needed: 1, available: 0 });
        }
        Ok(HbarSeries {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    pub fn divide_by_hbar_pow(&self, n: usize) -> Result<HbarSeries> {
        if self.known_order() < n {
            return Err(Error::InsufficientOrder {
                needed: n,
                available: self.known_order(),
            });
        }
        let mut s = self.clone();
        for _ in 0..n {
            s = s.divide_by_hbar()?;
        }
        Ok(s)
    }

    /// Difference `self - other` on the shared prefix, reported as the first
    /// order where they disagree.
    pub fn first_difference(&self, other: &HbarSeries) -> Result<Option<(usize, RatFunc)>> {
        let d = self.sub(other)?;
        Ok(d.leading_order().map(|k| (k, d.coeffs[k].clone())))
    }

    /// Agreement on the shared known prefix.
    pub fn agrees_with(&self, other: &HbarSeries) -> bool {
        matches!(self.first_difference(other), Ok(None))
    }
}

fn drop_last_var(p: &Polynomial, vars: &Vars) -> Polynomial {
    Polynomial::from_terms(
        vars,
        p.terms().map(|(m, c)| {
            let mut e = m.0.clone();
            e.pop();
            (crate::symexpr::Monomial(e), c.clone())
        }),
    )
}

impl fmt::Debug for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HbarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("h*({c})"),
                _ => format!("h^{k}*({c})"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(h^{})", parts.join(" + "), self.known_order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_expr;

    fn v() -> Vars {
        Vars::new(&["q", "p"]).unwrap()
    }

    #[test]
    fn parse_splits_powers_of_h() {
        let s = HbarSeries::parse("q + h*p/(1+q) - 3*h^2", &v(), 4).unwrap();
        assert_eq!(s.known_order(), 4);
        assert_eq!(s.coeff(0).unwrap(), &parse_expr("q", &v()).unwrap());
        assert_eq!(s.coeff(1).unwrap(), &parse_expr("p/(1+q)", &v()).unwrap());
        assert_eq!(s.coeff(2).unwrap(), &parse_expr("-3", &v()).unwrap());
        assert!(s.coeff(3).unwrap().is_zero());
        assert!(HbarSeries::parse("1/(1+h)", &v(), 2).is_err());
    }

    #[test]
    fn divide_by_hbar_examples() {
        let f = parse_expr("q*p", &v()).unwrap();
        let s = HbarSeries::parse("h^2*q*p", &v(), 4).unwrap();
        let d = s.divide_by_hbar().unwrap();
        assert_eq!(d.known_order(), 3);
        assert_eq!(d.coeff(1).unwrap(), &f);
        assert!(d.coeff(0).unwrap().is_zero());
        assert!(matches!(
            HbarSeries::parse("1 + h", &v(), 4).unwrap().divide_by_hbar(),
            Err(Error::NotDivisible(_))
        ));
    }

    #[test]
    fn scale_by_h_extends_known_order() {
        let s = HbarSeries::exact(parse_expr("q", &v()).unwrap(), 2);
        let t = s.scale_h(&HScalar::parse("h").unwrap());
        assert_eq!(t.known_order(), 3);
        assert_eq!(t.coeff(1).unwrap(), s.leading());
    }
}
