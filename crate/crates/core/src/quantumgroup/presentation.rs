use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hscalar::HScalar;
use crate::liebialg::fmt_combination;
use crate::symexpr::{is_identifier, parse_ast, Expr, Interpret, Monomial, Rational};

/// Coefficients of PBW monomials `e_1^{k_1} ... e_n^{k_n}`.
pub type Terms = BTreeMap<Monomial, HScalar>;

const DEFAULT_BUDGET: usize = 1_000_000;
const MAX_DEPTH: usize = 4_000;

/// Generators with relations `[e_j, e_k] = R_jk` (`j < k`), each `R_jk`
/// written in PBW normal form with PBW degree at most 2.
#[derive(Debug, PartialEq, Eq)]
pub struct Presentation {
    basis: Vec<String>,
    rel: BTreeMap<(usize, usize), Terms>,
    order: Option<usize>,
    budget: usize,
}

impl Presentation {
    /// `relations` lists `((j, k), R)` meaning `[e_j, e_k] = R`; pairs not
    /// listed commute. `order` truncates all coefficients at `h^order`.
    pub fn new<S: AsRef<str>>(
        basis: &[S],
        relations: impl IntoIterator<Item = ((usize, usize), Terms)>,
        order: Option<usize>,
    ) -> Result<Arc<Presentation>> {
        let basis: Vec<String> = basis.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, b) in basis.iter().enumerate() {
            if !is_identifier(b) || b == "h" {
                return Err(Error::Invalid(format!("bad generator name `{b}`")));
            }
            if basis[..i].contains(b) {
                return Err(Error::Invalid(format!("duplicate generator `{b}`")));
            }
        }
        let n = basis.len();
        let mut rel = BTreeMap::new();
        for ((j, k), r) in relations {
            if j >= n || k >= n || j == k {
                return Err(Error::Invalid(format!("bad relation index ({j}, {k})")));
            }
            for m in r.keys() {
                if m.0.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: m.0.len() });
                }
                if m.degree() > 2 {
                    return Err(Error::NonTerminating(format!(
                        "relation [{}, {}] has a term of PBW degree {} > 2",
                        basis[j],
                        basis[k],
                        m.degree()
                    )));
                }
            }
            let r: Terms = r.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if j < k {
                rel.insert((j, k), r);
            } else {
                rel.insert((k, j), r.into_iter().map(|(m, c)| (m, -&c)).collect());
            }
        }
        Ok(Arc::new(Presentation { basis, rel, order, budget: DEFAULT_BUDGET }))
    }

    /// Same relations, different truncation.
    pub fn with_order(&self, order: Option<usize>) -> Arc<Presentation> {
        Arc::new(Presentation { basis: self.basis.clone(), rel: self.rel.clone(), order, budget: self.budget })
    }

    pub fn with_budget(&self, budget: usize) -> Arc<Presentation> {
        Arc::new(Presentation { basis: self.basis.clone(), rel: self.rel.clone(), order: self.order, budget })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    /// `R_jk = [e_j, e_k]` for `j < k`.
    pub fn relation(&self, j: usize, k: usize) -> Option<&Terms> {
        self.rel.get(&(j, k))
    }

    pub fn is_commutative(&self) -> bool {
        self.rel.values().all(|r| r.is_empty())
    }

    /// Normal-order a word of generator indices.
    pub fn normalize_word(&self, word: &[usize], coeff: HScalar) -> Result<Terms> {
        let mut s = Straightener::new(self);
        let mut terms = Terms::new();
        terms.insert(Monomial::one(self.dim()), coeff);
        for &g in word {
            if g >= self.dim() {
                return Err(Error::Invalid(format!("generator index {g} out of range")));
            }
            terms = s.mul_terms_gen(&terms, g)?;
        }
        Ok(terms)
    }

    pub(crate) fn mul_terms(&self, a: &Terms, b: &Terms) -> Result<Terms> {
        Straightener::new(self).mul_terms(a, b)
    }

    pub(crate) fn fmt_terms(&self, t: &Terms) -> String {
        fmt_combination(t.iter().rev().map(|(m, c)| (c, self.fmt_monomial(m))))
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| if *e == 1 { self.basis[i].clone() } else { format!("{}^{e}", self.basis[i]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Parse a relation right-hand side; products must already be in PBW order.
    pub fn parse_normal(basis: &[String], text: &str) -> Result<Terms> {
        let interp = FreeInterp { basis };
        interp.eval(&parse_ast(text)?)
    }
}

fn truncate(c: HScalar, order: Option<usize>) -> HScalar {
    c.truncate_opt(order)
}

pub(crate) fn add_into(t: &mut Terms, m: Monomial, c: HScalar) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&m) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                t.remove(&m);
            }
        }
        None => {
            t.insert(m, c);
        }
    }
}

/// Rewriting engine with a per-call memo table for `e^α · e_j`.
pub(crate) struct Straightener<'a> {
    p: &'a Presentation,
    memo: HashMap<(Monomial, usize), Terms>,
    steps: usize,
    depth: usize,
}

impl<'a> Straightener<'a> {
    pub(crate) fn new(p: &'a Presentation) -> Straightener<'a> {
        Straightener { p, memo: HashMap::new(), steps: 0, depth: 0 }
    }

    fn mul_gen(&mut self, alpha: &Monomial, j: usize) -> Result<Terms> {
        let k = alpha.0.iter().rposition(|&e| e > 0);
        let k = match k {
            Some(k) if k > j => k,
            _ => {
                let mut m = alpha.clone();
                m.0[j] += 1;
                return Ok(Terms::from([(m, HScalar::one())]));
            }
        };
        if let Some(t) = self.memo.get(&(alpha.clone(), j)) {
            return Ok(t.clone());
        }
        self.steps += 1;
        self.depth += 1;
        if self.steps > self.p.budget || self.depth > MAX_DEPTH {
            return Err(Error::NonTerminating(format!(
                "straightening exceeded {} steps",
                self.p.budget.min(self.steps)
            )));
        }
        // e^α e_j = (β e_j) e_k - β R_jk, with e^α = β e_k.
        let mut beta = alpha.clone();
        beta.0[k] -= 1;
        let head = self.mul_gen(&beta, j)?;
        let mut out = self.mul_terms_gen(&head, k)?;
        if let Some(r) = self.p.rel.get(&(j, k)) {
            let base = Terms::from([(beta.clone(), HScalar::one())]);
            let tail = self.mul_terms(&base, &r.clone())?;
            for (m, c) in tail {
                add_into(&mut out, m, truncate(-&c, self.p.order));
            }
        }
        self.depth -= 1;
        self.memo.insert((alpha.clone(), j), out.clone());
        Ok(out)
    }

    fn mul_terms_gen(&mut self, t: &Terms, g: usize) -> Result<Terms> {
        let mut out = Terms::new();
        for (m, c) in t {
            for (m2, c2) in self.mul_gen(m, g)? {
                add_into(&mut out, m2, truncate(c * &c2, self.p.order));
            }
        }
        Ok(out)
    }

    pub(crate) fn mul_terms(&mut self, a: &Terms, b: &Terms) -> Result<Terms> {
        let mut out = Terms::new();
        for (mb, cb) in b {
            let mut cur: Terms = a.iter().map(|(m, c)| (m.clone(), truncate(c * cb, self.p.order))).filter(|(_, c)| !c.is_zero()).collect();
            for (g, &e) in mb.0.iter().enumerate() {
                for _ in 0..e {
                    cur = self.mul_terms_gen(&cur, g)?;
                }
            }
            for (m, c) in cur {
                add_into(&mut out, m, c);
            }
        }
        Ok(out)
    }
}

/// An element of `U_h(g)` in PBW normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct UElement {
    pres: Arc<Presentation>,
    terms: Terms,
}

impl UElement {
    pub fn from_terms(pres: &Arc<Presentation>, terms: Terms) -> UElement {
        let order = pres.order;
        let terms = terms.into_iter().map(|(m, c)| (m, c.truncate_opt(order))).filter(|(_, c)| !c.is_zero()).collect();
        UElement { pres: pres.clone(), terms }
    }

    pub fn zero(pres: &Arc<Presentation>) -> UElement {
        UElement { pres: pres.clone(), terms: Terms::new() }
    }

    pub fn scalar(pres: &Arc<Presentation>, c: HScalar) -> UElement {
        UElement::from_terms(pres, Terms::from([(Monomial::one(pres.dim()), c)]))
    }

    pub fn one(pres: &Arc<Presentation>) -> UElement {
        UElement::scalar(pres, HScalar::one())
    }

    pub fn generator(pres: &Arc<Presentation>, i: usize) -> UElement {
        UElement::monomial(pres, Monomial::var(pres.dim(), i))
    }

    pub fn monomial(pres: &Arc<Presentation>, m: Monomial) -> UElement {
        UElement::from_terms(pres, Terms::from([(m, HScalar::one())]))
    }

    /// Normal form of a word `c · e_{w_1} ... e_{w_r}`.
    pub fn word(pres: &Arc<Presentation>, word: &[usize], c: HScalar) -> Result<UElement> {
        Ok(UElement::from_terms(pres, pres.normalize_word(word, c)?))
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> HScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Highest PBW degree present.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn same(&self, other: &UElement) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn add(&self, other: &UElement) -> Result<UElement> {
        self.same(other)?;
        let mut t = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut t, m.clone(), c.clone());
        }
        Ok(UElement { pres: self.pres.clone(), terms: t })
    }

    pub fn sub(&self, other: &UElement) -> Result<UElement> {
        self.add(&other.scale(&HScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &HScalar) -> UElement {
        UElement::from_terms(&self.pres, self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }

    pub fn mul(&self, other: &UElement) -> Result<UElement> {
        self.same(other)?;
        Ok(UElement { pres: self.pres.clone(), terms: self.pres.mul_terms(&self.terms, &other.terms)? })
    }

    pub fn commutator(&self, other: &UElement) -> Result<UElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: u32) -> Result<UElement> {
        let mut acc = UElement::one(&self.pres);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Drop coefficients above `h^order`.
    pub fn truncate(&self, order: usize) -> UElement {
        UElement::from_terms(&self.pres, self.terms.iter().map(|(m, c)| (m.clone(), c.truncate(order))).collect())
    }

    /// Parse an expression in the generators and `h`.
    pub fn parse(pres: &Arc<Presentation>, text: &str) -> Result<UElement> {
        UElement::eval(pres, &parse_ast(text)?)
    }

    pub fn eval(pres: &Arc<Presentation>, e: &Expr) -> Result<UElement> {
        UInterp { pres }.eval(e)
    }
}

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pres.fmt_terms(&self.terms))
    }
}

fn scalar_div(b: &HScalar, pos: usize) -> Result<HScalar> {
    match b.coeffs() {
        [] => Err(Error::DivisionByZero { pos: Some(pos) }),
        [c] => Ok(HScalar::constant(c.recip())),
        _ => Err(Error::Syntax { pos, msg: "division by a non-constant h-polynomial".into() }),
    }
}

fn as_scalar(t: &Terms) -> Option<HScalar> {
    match t.len() {
        0 => Some(HScalar::zero()),
        1 => t.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()),
        _ => None,
    }
}

struct UInterp<'a> {
    pres: &'a Arc<Presentation>,
}

impl Interpret for UInterp<'_> {
    type Value = UElement;

    fn num(&self, n: &BigInt) -> Result<UElement> {
        Ok(UElement::scalar(self.pres, HScalar::constant(Rational::from_integer(n.clone()))))
    }

    fn var(&self, name: &str, pos: usize) -> Result<UElement> {
        if name == "h" {
            return Ok(UElement::scalar(self.pres, HScalar::hbar()));
        }
        match self.pres.index_of(name) {
            Some(i) => Ok(UElement::generator(self.pres, i)),
            None => Err(Error::UnknownVariable { name: name.to_string(), pos: Some(pos) }),
        }
    }

    fn add(&self, a: UElement, b: UElement) -> Result<UElement> {
        a.add(&b)
    }

    fn sub(&self, a: UElement, b: UElement) -> Result<UElement> {
        a.sub(&b)
    }

    fn mul(&self, a: UElement, b: UElement) -> Result<UElement> {
        a.mul(&b)
    }

    fn neg(&self, a: UElement) -> Result<UElement> {
        Ok(a.scale(&HScalar::from_int(-1)))
    }

    fn div(&self, a: UElement, b: UElement, pos: usize) -> Result<UElement> {
        let s = as_scalar(&b.terms).ok_or_else(|| Error::Syntax { pos, msg: "division by a non-scalar".into() })?;
        Ok(a.scale(&scalar_div(&s, pos)?))
    }
}

/// Relation right-hand sides are read before any straightening exists, so
/// products must already be in PBW order.
struct FreeInterp<'a> {
    basis: &'a [String],
}

impl Interpret for FreeInterp<'_> {
    type Value = Terms;

    fn num(&self, n: &BigInt) -> Result<Terms> {
        let c = HScalar::constant(Rational::from_integer(n.clone()));
        let mut t = Terms::new();
        add_into(&mut t, Monomial::one(self.basis.len()), c);
        Ok(t)
    }

    fn var(&self, name: &str, pos: usize) -> Result<Terms> {
        if name == "h" {
            return Ok(Terms::from([(Monomial::one(self.basis.len()), HScalar::hbar())]));
        }
        match self.basis.iter().position(|b| b == name) {
            Some(i) => Ok(Terms::from([(Monomial::var(self.basis.len(), i), HScalar::one())])),
            None => Err(Error::UnknownVariable { name: name.to_string(), pos: Some(pos) }),
        }
    }

    fn add(&self, mut a: Terms, b: Terms) -> Result<Terms> {
        for (m, c) in b {
            add_into(&mut a, m, c);
        }
        Ok(a)
    }

    fn sub(&self, a: Terms, b: Terms) -> Result<Terms> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    fn mul(&self, a: Terms, b: Terms) -> Result<Terms> {
        let mut out = Terms::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let last = ma.0.iter().rposition(|&e| e > 0);
                let first = mb.0.iter().position(|&e| e > 0);
                if let (Some(l), Some(f)) = (last, first) {
                    if l > f {
                        return Err(Error::Invalid(format!(
                            "relation terms must be written in PBW order ({} before {})",
                            self.basis[f], self.basis[l]
                        )));
                    }
                }
                add_into(&mut out, ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    fn neg(&self, a: Terms) -> Result<Terms> {
        Ok(a.into_iter().map(|(m, c)| (m, -&c)).collect())
    }

    fn div(&self, a: Terms, b: Terms, pos: usize) -> Result<Terms> {
        let s = as_scalar(&b).ok_or_else(|| Error::Syntax { pos, msg: "division by a non-scalar".into() })?;
        let inv = scalar_div(&s, pos)?;
        Ok(a.into_iter().map(|(m, c)| (m, &c * &inv)).filter(|(_, c)| !c.is_zero()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn nonabelian() -> Arc<Presentation> {
        let basis = vec!["xi".to_string(), "eta".to_string()];
        let r = Presentation::parse_normal(&basis, "3*eta - h*eta^2").unwrap();
        Presentation::new(&basis, [((0, 1), r)], None).unwrap()
    }

    fn so3() -> Arc<Presentation> {
        let basis: Vec<String> = ["e1", "e2", "e3"].iter().map(|s| s.to_string()).collect();
        let p = |s: &str| Presentation::parse_normal(&basis, s).unwrap();
        Presentation::new(&basis, [((0, 1), p("e3")), ((1, 2), p("e1")), ((2, 0), p("e2"))], None).unwrap()
    }

    #[test]
    fn straightening_examples() {
        let p = so3();
        assert_eq!(UElement::word(&p, &[1, 0], HScalar::one()).unwrap().to_string(), "e1*e2 - e3");
        assert_eq!(UElement::word(&p, &[0, 1, 1], HScalar::one()).unwrap().to_string(), "e1*e2^2");
        let n = nonabelian();
        let eta_xi = UElement::parse(&n, "eta*xi").unwrap();
        assert_eq!(eta_xi, UElement::parse(&n, "xi*eta - 3*eta + h*eta^2").unwrap());
    }

    #[test]
    fn associativity_on_words() {
        let n = nonabelian();
        let (x, e) = (UElement::generator(&n, 0), UElement::generator(&n, 1));
        let l = e.mul(&x).unwrap().mul(&e).unwrap();
        let r = e.mul(&x.mul(&e).unwrap()).unwrap();
        assert_eq!(l, r);
        let w = UElement::word(&n, &[1, 1, 0, 1, 0], HScalar::one()).unwrap();
        let w2 = UElement::word(&n, &[1, 1, 0], HScalar::one()).unwrap().mul(&UElement::word(&n, &[1, 0], HScalar::one()).unwrap()).unwrap();
        assert_eq!(w, w2);
    }

    #[test]
    fn rejects_high_degree_relations_and_unordered_input() {
        let basis = vec!["a".to_string(), "b".to_string()];
        let r = Presentation::parse_normal(&basis, "a*b^2").unwrap();
        assert!(matches!(Presentation::new(&basis, [((0, 1), r)], None), Err(Error::NonTerminating(_))));
        assert!(Presentation::parse_normal(&basis, "b*a").is_err());
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let p = so3().with_budget(2);
        let res = UElement::word(&p, &[2, 2, 1, 1, 0, 0], HScalar::one());
        assert!(matches!(res, Err(Error::NonTerminating(_))));
    }
}
