use std::fmt;

use crate::error::{Error, Result};
use crate::symexpr::{RatFunc, Vars};

/// Render `Σ c_k * label_k`, skipping zero coefficients.
pub(crate) fn fmt_sum<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (&'a RatFunc, String)>) -> fmt::Result {
    let mut first = true;
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
            _ => (false, s),
        };
        let sep = match (first, neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let coef = if body == "1" {
            String::new()
        } else if body.contains(' ') || body.contains('/') {
            format!("({body})*")
        } else {
            format!("{body}*")
        };
        write!(f, "{sep}{coef}{label}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn check_len(vars: &Vars, n: usize) -> Result<()> {
    if n != vars.len() {
        return Err(Error::DimensionMismatch { expected: vars.len(), found: n });
    }
    Ok(())
}

fn antisym(vars: &Vars, upper: impl Fn(usize, usize) -> RatFunc) -> Vec<Vec<RatFunc>> {
    let d = vars.len();
    let mut m = vec![vec![RatFunc::zero(vars); d]; d];
    for i in 0..d {
        for j in (i + 1)..d {
            let c = upper(i, j);
            m[j][i] = -&c;
            m[i][j] = c;
        }
    }
    m
}

/// `X = Σ X^i ∂_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    vars: Vars,
    comps: Vec<RatFunc>,
}

impl VectorField {
    pub fn new(vars: &Vars, comps: Vec<RatFunc>) -> Result<VectorField> {
        check_len(vars, comps.len())?;
        for c in &comps {
            vars.ensure_same(c.vars())?;
        }
        Ok(VectorField { vars: vars.clone(), comps })
    }

    pub fn zero(vars: &Vars) -> VectorField {
        VectorField { vars: vars.clone(), comps: vec![RatFunc::zero(vars); vars.len()] }
    }

    /// `∂_i`.
    pub fn coordinate(vars: &Vars, i: usize) -> VectorField {
        let mut x = VectorField::zero(vars);
        x.comps[i] = RatFunc::one(vars);
        x
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn comps(&self) -> &[RatFunc] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }

    /// `X[f] = Σ X^i ∂_i f`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(&self.vars);
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * &f.derivative(i));
            }
        }
        acc
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &VectorField, f: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> VectorField {
        VectorField {
            vars: self.vars.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Pointwise multiplication by a function.
    pub fn scale(&self, f: &RatFunc) -> VectorField {
        VectorField { vars: self.vars.clone(), comps: self.comps.iter().map(|c| c * f).collect() }
    }

    /// `[X, Y]^i = X^k ∂_k Y^i - Y^k ∂_k X^i`.
    pub fn commutator(&self, other: &VectorField) -> VectorField {
        VectorField {
            vars: self.vars.clone(),
            comps: (0..self.vars.len())
                .map(|i| &self.apply(&other.comps[i]) - &other.apply(&self.comps[i]))
                .collect(),
        }
    }

    /// `(X ∧ Y)^{ij} = X^i Y^j - X^j Y^i`.
    pub fn wedge(&self, other: &VectorField) -> Bivector {
        let comps = antisym(&self.vars, |i, j| &(&self.comps[i] * &other.comps[j]) - &(&self.comps[j] * &other.comps[i]));
        Bivector { vars: self.vars.clone(), comps }
    }

    pub fn lie_derivative_fn(&self, f: &RatFunc) -> RatFunc {
        self.apply(f)
    }

    /// `(ℒ_X α)_i = X^k ∂_k α_i + α_k ∂_i X^k`, the Cartan formula in coordinates.
    pub fn lie_derivative_form(&self, alpha: &OneForm) -> OneForm {
        let d = self.vars.len();
        let comps = (0..d)
            .map(|i| {
                let mut acc = self.apply(&alpha.comps[i]);
                for k in 0..d {
                    if !alpha.comps[k].is_zero() {
                        acc = &acc + &(&alpha.comps[k] * &self.comps[k].derivative(i));
                    }
                }
                acc
            })
            .collect();
        OneForm { vars: self.vars.clone(), comps }
    }

    /// `(ℒ_X π)^{ij} = X^k ∂_k π^{ij} - π^{kj} ∂_k X^i - π^{ik} ∂_k X^j`.
    pub fn lie_derivative_bivector(&self, pi: &Bivector) -> Bivector {
        let d = self.vars.len();
        let comps = antisym(&self.vars, |i, j| {
            let mut acc = self.apply(&pi.comps[i][j]);
            for k in 0..d {
                acc = &acc - &(&pi.comps[k][j] * &self.comps[i].derivative(k));
                acc = &acc - &(&pi.comps[i][k] * &self.comps[j].derivative(k));
            }
            acc
        });
        Bivector { vars: self.vars.clone(), comps }
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, self.comps.iter().enumerate().map(|(i, c)| (c, format!("∂{}", self.vars.name(i)))))
    }
}

/// `α = Σ α_i dx^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct OneForm {
    vars: Vars,
    comps: Vec<RatFunc>,
}

impl OneForm {
    pub fn new(vars: &Vars, comps: Vec<RatFunc>) -> Result<OneForm> {
        check_len(vars, comps.len())?;
        for c in &comps {
            vars.ensure_same(c.vars())?;
        }
        Ok(OneForm { vars: vars.clone(), comps })
    }

    pub fn zero(vars: &Vars) -> OneForm {
        OneForm { vars: vars.clone(), comps: vec![RatFunc::zero(vars); vars.len()] }
    }

    /// `df`.
    pub fn exact(f: &RatFunc) -> OneForm {
        let vars = f.vars().clone();
        let comps = (0..vars.len()).map(|i| f.derivative(i)).collect();
        OneForm { vars, comps }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn comps(&self) -> &[RatFunc] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm { vars: self.vars.clone(), comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm { vars: self.vars.clone(), comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, f: &RatFunc) -> OneForm {
        OneForm { vars: self.vars.clone(), comps: self.comps.iter().map(|c| c * f).collect() }
    }

    /// `α(X)`.
    pub fn contract(&self, x: &VectorField) -> RatFunc {
        let mut acc = RatFunc::zero(&self.vars);
        for (a, b) in self.comps.iter().zip(&x.comps) {
            acc = &acc + &(a * b);
        }
        acc
    }

    /// `(dα)_{ij} = ∂_i α_j - ∂_j α_i`.
    pub fn exterior_d(&self) -> TwoForm {
        let comps = antisym(&self.vars, |i, j| &self.comps[j].derivative(i) - &self.comps[i].derivative(j));
        TwoForm { vars: self.vars.clone(), comps }
    }

    /// `(α ∧ β)_{ij} = α_i β_j - α_j β_i`.
    pub fn wedge(&self, other: &OneForm) -> TwoForm {
        let comps = antisym(&self.vars, |i, j| &(&self.comps[i] * &other.comps[j]) - &(&self.comps[j] * &other.comps[i]));
        TwoForm { vars: self.vars.clone(), comps }
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, self.comps.iter().enumerate().map(|(i, c)| (c, format!("d{}", self.vars.name(i)))))
    }
}

macro_rules! antisymmetric_tensor {
    ($name:ident, $prefix:literal, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq)]
        pub struct $name {
            vars: Vars,
            comps: Vec<Vec<RatFunc>>,
        }

        impl $name {
            /// Build from the components with `i < j`; the rest follow by antisymmetry.
            pub fn from_upper(vars: &Vars, upper: impl Fn(usize, usize) -> RatFunc) -> $name {
                $name { vars: vars.clone(), comps: antisym(vars, upper) }
            }

            pub fn zero(vars: &Vars) -> $name {
                $name::from_upper(vars, |_, _| RatFunc::zero(vars))
            }

            pub fn vars(&self) -> &Vars {
                &self.vars
            }

            pub fn get(&self, i: usize, j: usize) -> &RatFunc {
                &self.comps[i][j]
            }

            pub fn is_zero(&self) -> bool {
                self.comps.iter().flatten().all(RatFunc::is_zero)
            }

            pub fn add(&self, other: &$name) -> $name {
                $name::from_upper(&self.vars, |i, j| &self.comps[i][j] + &other.comps[i][j])
            }

            pub fn sub(&self, other: &$name) -> $name {
                $name::from_upper(&self.vars, |i, j| &self.comps[i][j] - &other.comps[i][j])
            }

            pub fn scale(&self, f: &RatFunc) -> $name {
                $name::from_upper(&self.vars, |i, j| &self.comps[i][j] * f)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{self}")
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let d = self.vars.len();
                let v = &self.vars;
                fmt_sum(
                    f,
                    (0..d).flat_map(|i| {
                        ((i + 1)..d).map(move |j| (&self.comps[i][j], format!("{}{}∧{}{}", $prefix, v.name(i), $prefix, v.name(j))))
                    }),
                )
            }
        }
    };
}

antisymmetric_tensor!(TwoForm, "d", "Two-form `Σ_{i<j} ω_{ij} dx^i∧dx^j`.");
antisymmetric_tensor!(Bivector, "∂", "Bivector `Σ_{i<j} π^{ij} ∂_i∧∂_j`.");

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
    fn exterior_derivative_examples() {
        let d = OneForm::exact(&e("q*p"));
        assert_eq!(d.to_string(), "p*dq + q*dp");
        let alpha = OneForm::new(&v(), vec![e("p"), e("0")]).unwrap();
        let dp = OneForm::exact(&e("p"));
        let dq = OneForm::exact(&e("q"));
        assert_eq!(alpha.exterior_d(), dp.wedge(&dq));
        assert!(OneForm::exact(&e("q^3*p/(1+p)")).exterior_d().is_zero());
    }

    #[test]
    fn wedge_examples() {
        let dq = OneForm::exact(&e("q"));
        let dp = OneForm::exact(&e("p"));
        assert_eq!(dq.wedge(&dp), dp.wedge(&dq).scale(&e("-1")));
        assert!(dq.wedge(&dq).is_zero());
        let w = dq.scale(&e("q")).wedge(&dp.scale(&e("p^2")));
        assert_eq!(w.get(0, 1), &e("q*p^2"));
        assert_eq!(w.to_string(), "q*p^2*dq∧dp");
    }

    #[test]
    fn lie_derivative_examples() {
        let dq = VectorField::coordinate(&v(), 0);
        assert_eq!(dq.lie_derivative_fn(&e("q^2")), e("2*q"));
        let canonical = Bivector::from_upper(&v(), |_, _| e("1"));
        let rot = VectorField::new(&v(), vec![e("-p"), e("q")]).unwrap();
        assert!(rot.lie_derivative_bivector(&canonical).is_zero());
        let scaling = VectorField::new(&v(), vec![e("q"), e("0")]).unwrap();
        let l = scaling.lie_derivative_bivector(&canonical);
        assert_eq!(l, canonical.scale(&e("-1")));
        assert_eq!(l.to_string(), "-∂q∧∂p");
    }

    #[test]
    fn commutator_of_fields() {
        let x = VectorField::new(&v(), vec![e("q"), e("0")]).unwrap();
        let y = VectorField::new(&v(), vec![e("0"), e("1/q")]).unwrap();
        assert_eq!(x.commutator(&y), y.scale(&e("-1")));
        assert_eq!(y.to_string(), "(1/q)*∂p");
    }
}
