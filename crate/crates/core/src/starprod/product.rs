use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::series::HbarSeries;
use crate::error::{Error, Result};
use crate::quantumgroup::GuttStar;
use crate::symexpr::{RatFunc, Rational, Vars};

/// One term `coeff * (∂^left f) * (∂^right g)`; multi-indices count
/// derivatives per declared variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidiffTerm {
    pub coeff: RatFunc,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

/// A bidifferential operator `P(f, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BidiffOperator {
    pub terms: Vec<BidiffTerm>,
}

impl BidiffOperator {
    pub fn apply(&self, f: &mut DerivCache, g: &mut DerivCache) -> RatFunc {
        let mut acc = RatFunc::zero(f.base.vars());
        for t in &self.terms {
            let df = f.get(&t.left);
            if df.is_zero() {
                continue;
            }
            let dg = g.get(&t.right);
            acc = &acc + &(&(&t.coeff * &df) * &dg);
        }
        acc
    }
}

/// Memoized mixed partial derivatives of one function.
pub struct DerivCache {
    base: RatFunc,
    cache: HashMap<Vec<u32>, RatFunc>,
}

impl DerivCache {
    pub fn new(f: &RatFunc) -> DerivCache {
        DerivCache {
            base: f.clone(),
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, idx: &[u32]) -> RatFunc {
        let Some(i) = idx.iter().position(|&e| e > 0) else {
            return self.base.clone();
        };
        if let Some(v) = self.cache.get(idx) {
            return v.clone();
        }
        let mut parent = idx.to_vec();
        parent[i] -= 1;
        let d = self.get(&parent).derivative(i);
        self.cache.insert(idx.to_vec(), d.clone());
        d
    }
}

#[derive(Clone, Debug)]
pub enum StarKind {
    /// Constant antisymmetric matrix `Π`.
    Moyal { matrix: Vec<Vec<Rational>> },
    /// `P_1, ..., P_n` supplied directly; higher orders are zero.
    Explicit { operators: Vec<BidiffOperator> },
    /// Transported from the enveloping algebra by symmetrization.
    Gutt(Arc<GuttStar>),
}

/// A star product `f ⋆ g = fg + Σ_n P_n(f, g) h^n`, computed through `h^order`.
#[derive(Clone, Debug)]
pub struct StarProduct {
    vars: Vars,
    kind: StarKind,
    order: usize,
}

impl StarProduct {
    pub fn moyal(vars: &Vars, matrix: Vec<Vec<Rational>>, order: usize) -> Result<StarProduct> {
        let d = vars.len();
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.len(),
            });
        }
        for i in 0..d {
            for j in 0..d {
                if matrix[i][j] != -matrix[j][i].clone() {
                    return Err(Error::Invalid("Moyal matrix must be antisymmetric".into()));
                }
            }
        }
        check_order(order)?;
        Ok(StarProduct {
            vars: vars.clone(),
            kind: StarKind::Moyal { matrix },
            order,
        })
    }

    pub fn explicit(vars: &Vars, operators: Vec<BidiffOperator>, order: usize) -> Result<StarProduct> {
        for op in &operators {
            for t in &op.terms {
                vars.ensure_same(t.coeff.vars())?;
                if t.left.len() != vars.len() || t.right.len() != vars.len() {
                    return Err(Error::DimensionMismatch {
                        expected: vars.len(),
                        found: t.left.len().max(t.right.len()),
                    });
                }
            }
        }
        check_order(order)?;
        Ok(StarProduct {
            vars: vars.clone(),
            kind: StarKind::Explicit { operators },
            order,
        })
    }

    pub fn gutt(vars: &Vars, star: Arc<GuttStar>, order: usize) -> Result<StarProduct> {
        check_order(order)?;
        Ok(StarProduct {
            vars: vars.clone(),
            kind: StarKind::Gutt(star),
            order,
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> &StarKind {
        &self.kind
    }

    /// Same product with a different truncation.
    pub fn with_order(&self, order: usize) -> Result<StarProduct> {
        check_order(order)?;
        Ok(StarProduct {
            order,
            ..self.clone()
        })
    }

    /// Human-readable statement of the conventions in force.
    pub fn conventions(&self) -> Vec<String> {
        match &self.kind {
            StarKind::Moyal { .. } => vec![format!(
                "Moyal star, P_n(f,g) = 1/(n! 2^n) sum Pi^(i1 j1)...Pi^(in jn) d_I f d_J g, so P_1 = {{f,g}}/2; truncated at h^{}",
                self.order
            )],
            StarKind::Explicit { operators } => vec![format!(
                "explicit bidifferential family P_1..P_{} (symmetric part of P_1 and higher P_n user-supplied); truncated at h^{}",
                operators.len(),
                self.order
            )],
            StarKind::Gutt(_) => vec![format!(
                "Gutt star: polynomials transported through PBW symmetrization with [e_i,e_j] = h c_ij^k e_k; truncated at h^{}",
                self.order
            )],
        }
    }

    /// `[P_0(f, g), P_1(f, g), ..., P_max_n(f, g)]`.
    pub fn bidiff_all(&self, f: &RatFunc, g: &RatFunc, max_n: usize) -> Result<Vec<RatFunc>> {
        self.vars.ensure_same(f.vars())?;
        self.vars.ensure_same(g.vars())?;
        let zero = RatFunc::zero(&self.vars);
        if f.is_zero() || g.is_zero() {
            return Ok(vec![zero; max_n + 1]);
        }
        match &self.kind {
            StarKind::Moyal { matrix } => Ok(moyal_terms(matrix, f, g, max_n)),
            StarKind::Explicit { operators } => {
                let mut fc = DerivCache::new(f);
                let mut gc = DerivCache::new(g);
                let mut out = vec![f * g];
                for n in 1..=max_n {
                    out.push(match operators.get(n - 1) {
                        Some(op) => op.apply(&mut fc, &mut gc),
                        None => zero.clone(),
                    });
                }
                Ok(out)
            }
            StarKind::Gutt(star) => star.bidiff_all(f, g, max_n),
        }
    }

    /// `P_n(f, g)` alone.
    pub fn bidiff(&self, n: usize, f: &RatFunc, g: &RatFunc) -> Result<RatFunc> {
        Ok(self.bidiff_all(f, g, n)?.pop().expect("nonempty"))
    }

    /// `f ⋆ g`, known through `min(K_f, K_g, N)`.
    pub fn multiply(&self, f: &HbarSeries, g: &HbarSeries) -> Result<HbarSeries> {
        self.vars.ensure_same(f.vars())?;
        self.vars.ensure_same(g.vars())?;
        let k = f.known_order().min(g.known_order()).min(self.order);
        let mut out = vec![RatFunc::zero(&self.vars); k + 1];
        for i in 0..=k {
            let fi = f.coeff(i).expect("known");
            if fi.is_zero() {
                continue;
            }
            for j in 0..=(k - i) {
                let gj = g.coeff(j).expect("known");
                if gj.is_zero() {
                    continue;
                }
                let ps = self.bidiff_all(fi, gj, k - i - j)?;
                for (n, pn) in ps.into_iter().enumerate() {
                    if !pn.is_zero() {
                        out[i + j + n] = &out[i + j + n] + &pn;
                    }
                }
            }
        }
        HbarSeries::new(out)
    }

    /// Left-to-right product of several series.
    pub fn multiply_all(&self, factors: &[&HbarSeries]) -> Result<HbarSeries> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Invalid("empty product".into()))?;
        let mut acc = (*first).clone();
        for f in rest {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// `[f, g]_⋆ = f ⋆ g - g ⋆ f`.
    pub fn commutator(&self, f: &HbarSeries, g: &HbarSeries) -> Result<HbarSeries> {
        self.multiply(f, g)?.sub(&self.multiply(g, f)?)
    }

    /// Two-sided inverse by order-by-order recursion on `f ⋆ u = 1`.
    pub fn inverse(&self, f: &HbarSeries) -> Result<HbarSeries> {
        self.vars.ensure_same(f.vars())?;
        let f0 = f.leading();
        if f0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let k = f.known_order().min(self.order);
        let inv0 = f0.recip()?;
        let mut u: Vec<RatFunc> = vec![inv0.clone()];
        for n in 1..=k {
            let mut s = RatFunc::zero(&self.vars);
            for i in 0..=n {
                let fi = f.coeff(i).expect("known");
                if fi.is_zero() {
                    continue;
                }
                for (j, uj) in u.iter().enumerate().take(n - i + 1) {
                    let m = n - i - j;
                    if (i, j, m) == (0, n, 0) || uj.is_zero() {
                        continue;
                    }
                    s = &s + &self.bidiff(m, fi, uj)?;
                }
            }
            u.push(-&(&s * &inv0));
        }
        HbarSeries::new(u)
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::Invalid("star product truncation order must be at least 1".into()));
    }
    Ok(())
}

/// Moyal terms via a dynamic program over the multi-indices
/// `(I, J)` reached after `n` contractions with `Π`.
fn moyal_terms(matrix: &[Vec<Rational>], f: &RatFunc, g: &RatFunc, max_n: usize) -> Vec<RatFunc> {
    let d = matrix.len();
    let vars = f.vars().clone();
    let mut fc = DerivCache::new(f);
    let mut gc = DerivCache::new(g);
    let mut out = vec![f * g];
    let mut states: BTreeMap<(Vec<u32>, Vec<u32>), Rational> = BTreeMap::new();
    states.insert((vec![0; d], vec![0; d]), Rational::one());
    let mut weight = Rational::one();
    for n in 1..=max_n {
        let mut next: BTreeMap<(Vec<u32>, Vec<u32>), Rational> = BTreeMap::new();
        for ((l, r), c) in &states {
            for (i, row) in matrix.iter().enumerate() {
                for (j, pij) in row.iter().enumerate() {
                    if pij.is_zero() {
                        continue;
                    }
                    let mut l2 = l.clone();
                    let mut r2 = r.clone();
                    l2[i] += 1;
                    r2[j] += 1;
                    *next.entry((l2, r2)).or_insert_with(Rational::zero) += c * pij;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        states = next;
        weight /= Rational::from_integer(BigInt::from(2 * n));
        let mut acc = RatFunc::zero(&vars);
        for ((l, r), c) in &states {
            let df = fc.get(l);
            if df.is_zero() {
                continue;
            }
            let dg = gc.get(r);
            if dg.is_zero() {
                continue;
            }
            acc = &acc + &(&df * &dg).scale(&(c * &weight));
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{int, parse_expr, rat};

    fn v() -> Vars {
        Vars::new(&["q", "p"]).unwrap()
    }

    fn canonical(order: usize) -> StarProduct {
        StarProduct::moyal(&v(), vec![vec![int(0), int(1)], vec![int(-1), int(0)]], order).unwrap()
    }

    fn s(text: &str, order: usize) -> HbarSeries {
        HbarSeries::parse(text, &v(), order).unwrap()
    }

    #[test]
    fn moyal_rejects_symmetric_matrix() {
        assert!(StarProduct::moyal(&v(), vec![vec![int(0), int(1)], vec![int(1), int(0)]], 4).is_err());
    }

    #[test]
    fn q_star_p() {
        let sp = canonical(4);
        assert_eq!(sp.multiply(&s("q", 4), &s("p", 4)).unwrap(), s("q*p + h/2", 4));
        assert_eq!(sp.multiply(&s("p", 4), &s("q", 4)).unwrap(), s("q*p - h/2", 4));
        let f = s("q^2*p + 1/(1+q)", 4);
        assert_eq!(sp.multiply(&f, &s("1", 4)).unwrap(), f);
    }

    #[test]
    fn commutator_examples() {
        let sp = canonical(4);
        assert_eq!(sp.commutator(&s("q", 4), &s("p", 4)).unwrap(), s("h", 4));
        assert!(sp.commutator(&s("q", 4), &s("q^2", 4)).unwrap().is_zero());
        assert_eq!(sp.commutator(&s("q^2", 4), &s("p^2", 4)).unwrap(), s("4*h*q*p", 4));
    }

    #[test]
    fn inverse_examples() {
        let sp = canonical(4);
        let inv = sp.inverse(&s("1+q", 4)).unwrap();
        assert_eq!(inv, HbarSeries::exact(parse_expr("1/(1+q)", &v()).unwrap(), 4));
        assert_eq!(sp.inverse(&s("2", 4)).unwrap(), s("1/2", 4));
        assert!(matches!(sp.inverse(&s("h*q", 4)), Err(Error::NotInvertible)));
        // a genuinely deformed inverse
        let f = s("1 + q*p", 4);
        let u = sp.inverse(&f).unwrap();
        assert_eq!(sp.multiply(&f, &u).unwrap(), s("1", 4));
        assert_eq!(sp.multiply(&u, &f).unwrap(), s("1", 4));
    }

    #[test]
    fn explicit_family_p1_only() {
        let op = BidiffOperator {
            terms: vec![BidiffTerm {
                coeff: RatFunc::one(&v()),
                left: vec![1, 0],
                right: vec![0, 1],
            }],
        };
        let sp = StarProduct::explicit(&v(), vec![op], 3).unwrap();
        assert_eq!(sp.multiply(&s("q", 3), &s("p", 3)).unwrap(), s("q*p + h", 3));
        assert_eq!(sp.bidiff(2, &parse_expr("q^2", &v()).unwrap(), &parse_expr("p^2", &v()).unwrap()).unwrap(), RatFunc::zero(&v()));
    }

    #[test]
    fn moyal_weights() {
        let sp = canonical(4);
        let f = parse_expr("q^2", &v()).unwrap();
        let g = parse_expr("p^2", &v()).unwrap();
        // P_2(q^2, p^2) = 1/(2! 4) * (d_q^2 q^2)(d_p^2 p^2) = 1/2
        assert_eq!(sp.bidiff(2, &f, &g).unwrap(), RatFunc::constant(&v(), rat(1, 2)));
    }
}
