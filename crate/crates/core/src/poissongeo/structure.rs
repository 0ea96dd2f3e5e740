use super::fields::{Bivector, OneForm, VectorField};
use crate::error::{Error, Result};
use crate::report::{CheckReport, Certified};
use crate::symexpr::{RatFunc, Vars};

/// A bivector `π` read as a Poisson structure; the bracket is
/// `{f, g} = Σ π^{ij} ∂_i f ∂_j g`. Jacobi is checked, never assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    pi: Bivector,
}

impl PoissonStructure {
    /// From a full matrix, which must be antisymmetric.
    pub fn new(vars: &Vars, matrix: Vec<Vec<RatFunc>>) -> Result<PoissonStructure> {
        let d = vars.len();
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: matrix.len() });
        }
        for i in 0..d {
            for j in 0..d {
                vars.ensure_same(matrix[i][j].vars())?;
                if matrix[i][j] != -&matrix[j][i] {
                    return Err(Error::Invalid(format!(
                        "Poisson matrix is not antisymmetric at ({}, {})",
                        vars.name(i),
                        vars.name(j)
                    )));
                }
            }
        }
        Ok(PoissonStructure { pi: Bivector::from_upper(vars, |i, j| matrix[i][j].clone()) })
    }

    pub fn from_bivector(pi: Bivector) -> PoissonStructure {
        PoissonStructure { pi }
    }

    pub fn zero(vars: &Vars) -> PoissonStructure {
        PoissonStructure { pi: Bivector::zero(vars) }
    }

    pub fn vars(&self) -> &Vars {
        self.pi.vars()
    }

    pub fn bivector(&self) -> &Bivector {
        &self.pi
    }

    pub fn component(&self, i: usize, j: usize) -> &RatFunc {
        self.pi.get(i, j)
    }

    pub fn bracket(&self, f: &RatFunc, g: &RatFunc) -> RatFunc {
        let d = self.vars().len();
        let df: Vec<RatFunc> = (0..d).map(|i| f.derivative(i)).collect();
        let dg: Vec<RatFunc> = (0..d).map(|i| g.derivative(i)).collect();
        let mut acc = RatFunc::zero(self.vars());
        for i in 0..d {
            for j in (i + 1)..d {
                let c = self.pi.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let t = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
                acc = &acc + &(c * &t);
            }
        }
        acc
    }

    pub fn checked_bracket(&self, f: &RatFunc, g: &RatFunc) -> Result<RatFunc> {
        self.vars().ensure_same(f.vars())?;
        self.vars().ensure_same(g.vars())?;
        Ok(self.bracket(f, g))
    }

    /// `{{f,g},h} + {{g,h},f} + {{h,f},g}`.
    pub fn jacobiator(&self, f: &RatFunc, g: &RatFunc, h: &RatFunc) -> RatFunc {
        let a = self.bracket(&self.bracket(f, g), h);
        let b = self.bracket(&self.bracket(g, h), f);
        let c = self.bracket(&self.bracket(h, f), g);
        &(&a + &b) + &c
    }

    /// Jacobi on all coordinate triples, which is complete for bivectors.
    pub fn check_jacobi(&self) -> CheckReport {
        let vars = self.vars();
        let d = vars.len();
        let x: Vec<RatFunc> = (0..d).map(|i| RatFunc::var(vars, i)).collect();
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let r = self.jacobiator(&x[i], &x[j], &x[k]);
                    if !r.is_zero() {
                        return CheckReport::fail("jacobi", format!("({},{},{}) -> {r}", vars.name(i), vars.name(j), vars.name(k)));
                    }
                }
            }
        }
        CheckReport::pass("jacobi", Certified::Exact).with_convention("{f,g} = sum pi^(ij) d_i f d_j g")
    }

    /// `X_H = {H, ·}`, with components `X^j = {H, x_j}`.
    pub fn hamiltonian_vf(&self, h: &RatFunc) -> VectorField {
        self.sharp(&OneForm::exact(h))
    }

    /// `(π♯α)^j = Σ_i α_i π^{ij}`, so that `π♯(dH) = X_H`.
    pub fn sharp(&self, alpha: &OneForm) -> VectorField {
        let vars = self.vars();
        let d = vars.len();
        let comps = (0..d)
            .map(|j| {
                let mut acc = RatFunc::zero(vars);
                for (i, a) in alpha.comps().iter().enumerate() {
                    if !a.is_zero() {
                        acc = &acc + &(a * self.pi.get(i, j));
                    }
                }
                acc
            })
            .collect();
        VectorField::new(vars, comps).expect("dimensions agree")
    }

    /// `π(α, β) = Σ π^{ij} α_i β_j`.
    pub fn pair(&self, alpha: &OneForm, beta: &OneForm) -> RatFunc {
        beta.contract(&self.sharp(alpha))
    }

    /// `[α, β]_π = ℒ_{π♯α} β - ℒ_{π♯β} α - d(π(α, β))`.
    pub fn koszul_bracket(&self, alpha: &OneForm, beta: &OneForm) -> OneForm {
        let a = self.sharp(alpha).lie_derivative_form(beta);
        let b = self.sharp(beta).lie_derivative_form(alpha);
        a.sub(&b).sub(&OneForm::exact(&self.pair(alpha, beta)))
    }

    /// `ℒ_X π`.
    pub fn lie_derivative(&self, x: &VectorField) -> Bivector {
        x.lie_derivative_bivector(&self.pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_expr;

    fn canonical() -> PoissonStructure {
        let v = Vars::new(&["q", "p"]).unwrap();
        PoissonStructure::from_bivector(Bivector::from_upper(&v, |_, _| RatFunc::one(&v)))
    }

    pub(crate) fn so3() -> PoissonStructure {
        let v = Vars::new(&["x1", "x2", "x3"]).unwrap();
        let e = |s: &str| parse_expr(s, &v).unwrap();
        let m = vec![
            vec![e("0"), e("x3"), e("-x2")],
            vec![e("-x3"), e("0"), e("x1")],
            vec![e("x2"), e("-x1"), e("0")],
        ];
        PoissonStructure::new(&v, m).unwrap()
    }

    #[test]
    fn brackets() {
        let c = canonical();
        let v = c.vars().clone();
        let e = |s: &str| parse_expr(s, &v).unwrap();
        assert_eq!(c.bracket(&e("q"), &e("p")), e("1"));
        assert!(c.bracket(&e("q^2*p/(1+p)"), &e("q^2*p/(1+p)")).is_zero());
        let s = so3();
        let w = s.vars().clone();
        let x = |s: &str| parse_expr(s, &w).unwrap();
        assert_eq!(s.bracket(&x("x1"), &x("x2")), x("x3"));
    }

    #[test]
    fn jacobi_examples() {
        assert!(so3().check_jacobi().passed());
        let v = Vars::new(&["x1", "x2", "x3", "x4"]).unwrap();
        let bad = PoissonStructure::from_bivector(Bivector::from_upper(&v, |i, j| match (i, j) {
            (0, 1) => RatFunc::one(&v),
            (2, 3) => RatFunc::var(&v, 0),
            _ => RatFunc::zero(&v),
        }));
        let r = bad.check_jacobi();
        assert_eq!(r.witness.as_deref(), Some("(x2,x3,x4) -> 1"));
    }

    #[test]
    fn hamiltonian_fields() {
        let c = canonical();
        let v = c.vars().clone();
        let e = |s: &str| parse_expr(s, &v).unwrap();
        let x = c.hamiltonian_vf(&e("(q^2 + p^2)/2"));
        assert_eq!(x, VectorField::new(&v, vec![e("-p"), e("q")]).unwrap());
        assert!(c.hamiltonian_vf(&e("7")).is_zero());
        assert_eq!(c.sharp(&OneForm::exact(&e("q"))), VectorField::coordinate(&v, 1));
        let s = so3();
        let w = s.vars().clone();
        let y = s.hamiltonian_vf(&RatFunc::var(&w, 0));
        assert_eq!(y.to_string(), "x3*∂x2 - x2*∂x3");
    }

    #[test]
    fn koszul_examples() {
        let c = canonical();
        let v = c.vars().clone();
        let dq = OneForm::exact(&RatFunc::var(&v, 0));
        let dp = OneForm::exact(&RatFunc::var(&v, 1));
        assert!(c.koszul_bracket(&dq, &dp).is_zero());
        let s = so3();
        let w = s.vars().clone();
        let d = |i| OneForm::exact(&RatFunc::var(&w, i));
        assert_eq!(s.koszul_bracket(&d(0), &d(1)), d(2));
        let a = d(0).scale(&RatFunc::var(&w, 1));
        assert!(s.koszul_bracket(&a, &a).is_zero());
    }
}
