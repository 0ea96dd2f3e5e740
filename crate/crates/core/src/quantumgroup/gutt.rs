use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::presentation::{add_into, Presentation, Straightener, Terms};
use crate::error::{Error, Result};
use crate::hscalar::HScalar;
use crate::liebialg::LieAlgebra;
use crate::starprod::StarProduct;
use crate::symexpr::{Monomial, Polynomial, RatFunc, Rational, Vars};

/// The Gutt star product on polynomials over `g*`: `f ⋆ g = σ⁻¹(σ(f)σ(g))`,
/// where `σ` is PBW symmetrization into `U(g)` with `[e_i, e_j] = h c_ij^k e_k`.
#[derive(Debug)]
pub struct GuttStar {
    vars: Vars,
    pres: Arc<Presentation>,
}

impl GuttStar {
    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    /// `[P_0(f, g), ..., P_max_n(f, g)]`; inputs must be polynomials.
    pub fn bidiff_all(&self, f: &RatFunc, g: &RatFunc, max_n: usize) -> Result<Vec<RatFunc>> {
        let pf = f.as_polynomial().ok_or_else(|| Error::NotPolynomial(f.to_string()))?;
        let pg = g.as_polynomial().ok_or_else(|| Error::NotPolynomial(g.to_string()))?;
        let pres = self.pres.with_order(Some(max_n));
        let mut s = Symmetrizer { st: Straightener::new(&pres), memo: HashMap::new() };
        let sf = s.sym_poly(pf)?;
        let sg = s.sym_poly(pg)?;
        let prod = s.st.mul_terms(&sf, &sg)?;
        let coeffs = s.unsym(prod)?;
        Ok((0..=max_n)
            .map(|n| {
                let p = Polynomial::from_terms(&self.vars, coeffs.iter().map(|(m, c)| (m.clone(), c.coeff(n))));
                RatFunc::from_poly(p)
            })
            .collect())
    }

    /// `σ(f)`, the symmetrization of a polynomial, in PBW normal form.
    pub fn symmetrize(&self, f: &Polynomial) -> Result<Terms> {
        let mut s = Symmetrizer { st: Straightener::new(&self.pres), memo: HashMap::new() };
        s.sym_poly(f)
    }
}

struct Symmetrizer<'a> {
    st: Straightener<'a>,
    memo: HashMap<Monomial, Terms>,
}

impl Symmetrizer<'_> {
    /// `σ(x^α) = Σ_i (α_i / |α|) e_i σ(x^{α - e_i})`.
    fn sym(&mut self, alpha: &Monomial) -> Result<Terms> {
        if alpha.is_one() {
            return Ok(Terms::from([(alpha.clone(), HScalar::one())]));
        }
        if let Some(t) = self.memo.get(alpha) {
            return Ok(t.clone());
        }
        let d = alpha.degree();
        let n = alpha.0.len();
        let mut out = Terms::new();
        for i in 0..n {
            if alpha.0[i] == 0 {
                continue;
            }
            let mut rest = alpha.clone();
            rest.0[i] -= 1;
            let tail = self.sym(&rest)?;
            let w = HScalar::constant(Rational::new(BigInt::from(alpha.0[i]), BigInt::from(d)));
            let head = Terms::from([(Monomial::var(n, i), w)]);
            for (m, c) in self.st.mul_terms(&head, &tail)? {
                add_into(&mut out, m, c);
            }
        }
        self.memo.insert(alpha.clone(), out.clone());
        Ok(out)
    }

    fn sym_poly(&mut self, f: &Polynomial) -> Result<Terms> {
        let mut out = Terms::new();
        for (m, c) in f.terms() {
            let s = HScalar::constant(c.clone());
            for (m2, c2) in self.sym(m)? {
                add_into(&mut out, m2, &c2 * &s);
            }
        }
        Ok(out)
    }

    /// `σ⁻¹`: peel off the top PBW degree, which matches the polynomial's top
    /// degree, and recurse on the lower-order remainder.
    fn unsym(&mut self, mut u: Terms) -> Result<Terms> {
        let mut poly = Terms::new();
        while let Some(d) = u.keys().map(Monomial::degree).max() {
            let top: Vec<(Monomial, HScalar)> = u.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
            for (m, c) in top {
                add_into(&mut poly, m.clone(), c.clone());
                for (m2, c2) in self.sym(&m)? {
                    add_into(&mut u, m2, -&(&c2 * &c));
                }
            }
        }
        Ok(poly)
    }
}

/// Build the Gutt star product of `g` on the coordinates `vars` of `g*`
/// (variable `i` is the linear function `e_i`).
pub fn make_gutt_star(g: &LieAlgebra, vars: &Vars, order: usize) -> Result<StarProduct> {
    if g.dim() != vars.len() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: vars.len() });
    }
    let classical = g.classical();
    let jac = classical.check_jacobi();
    if !jac.passed() {
        return Err(Error::JacobiFailure(jac.witness.unwrap_or_default()));
    }
    let n = g.dim();
    let mut rels = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut t = Terms::new();
            for (k, c) in classical.structure(i, j).iter().enumerate() {
                add_into(&mut t, Monomial::var(n, k), c * &HScalar::hbar());
            }
            rels.push(((i, j), t));
        }
    }
    let pres = Presentation::new(g.basis(), rels, None)?;
    StarProduct::gutt(vars, Arc::new(GuttStar { vars: vars.clone(), pres }), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starprod::HbarSeries;

    fn so3() -> LieAlgebra {
        let g = LieAlgebra::abelian(&["e1", "e2", "e3"]).unwrap();
        let p = |s: &str| g.parse_element(s).unwrap();
        LieAlgebra::new(&["e1", "e2", "e3"], [((0, 1), p("e3")), ((1, 2), p("e1")), ((2, 0), p("e2"))]).unwrap()
    }

    #[test]
    fn x1_star_x2() {
        let v = Vars::new(&["x1", "x2", "x3"]).unwrap();
        let sp = make_gutt_star(&so3(), &v, 3).unwrap();
        let s = |t: &str| HbarSeries::parse(t, &v, 3).unwrap();
        assert_eq!(sp.multiply(&s("x1"), &s("x2")).unwrap(), s("x1*x2 + h/2*x3"));
        assert_eq!(sp.commutator(&s("x1"), &s("x2")).unwrap(), s("h*x3"));
    }

    #[test]
    fn abelian_is_pointwise() {
        let v = Vars::new(&["a", "b"]).unwrap();
        let sp = make_gutt_star(&LieAlgebra::abelian(&["a", "b"]).unwrap(), &v, 3).unwrap();
        let s = |t: &str| HbarSeries::parse(t, &v, 3).unwrap();
        assert_eq!(sp.multiply(&s("a^2*b + 1"), &s("b - a")).unwrap(), s("(a^2*b + 1)*(b - a)"));
    }

    #[test]
    fn rejects_non_lie_and_non_polynomial() {
        let g = LieAlgebra::abelian(&["e1", "e2", "e3"]).unwrap();
        let p = |s: &str| g.parse_element(s).unwrap();
        let bad = LieAlgebra::new(&["e1", "e2", "e3"], [((0, 1), p("e3")), ((0, 2), p("e1"))]).unwrap();
        let v = Vars::new(&["x1", "x2", "x3"]).unwrap();
        assert!(matches!(make_gutt_star(&bad, &v, 3), Err(Error::JacobiFailure(_))));
        let sp = make_gutt_star(&so3(), &v, 3).unwrap();
        let f = crate::symexpr::parse_expr("1/x1", &v).unwrap();
        assert!(matches!(sp.bidiff(1, &f, &f), Err(Error::NotPolynomial(_))));
    }
}
