use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::presentation::{Presentation, Terms, UElement};
use crate::error::{Error, Result};
use crate::hscalar::HScalar;
use crate::liebialg::{fmt_combination, Cobracket};
use crate::report::{CheckReport, Certified};
use crate::symexpr::{parse_tensor_ast, Monomial, Rational};

/// A finite sum of pure tensors `c · m_1 ⊗ ... ⊗ m_r` of PBW monomials.
/// Mixed ranks are allowed, which is what the tensor algebra needs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UTensor {
    terms: BTreeMap<Vec<Monomial>, HScalar>,
}

impl UTensor {
    pub fn zero() -> UTensor {
        UTensor::default()
    }

    pub fn pure(factors: Vec<Monomial>, c: HScalar) -> UTensor {
        let mut t = UTensor::zero();
        t.add_term(factors, c);
        t
    }

    /// `x` as a rank-one tensor.
    pub fn from_element(x: &UElement) -> UTensor {
        let mut t = UTensor::zero();
        for (m, c) in x.terms() {
            t.add_term(vec![m.clone()], c.clone());
        }
        t
    }

    /// `x_1 ⊗ ... ⊗ x_r` expanded multilinearly.
    pub fn tensor_of(xs: &[UElement]) -> UTensor {
        let mut acc = UTensor::pure(Vec::new(), HScalar::one());
        for x in xs {
            let mut next = UTensor::zero();
            for (f, c) in &acc.terms {
                for (m, d) in x.terms() {
                    let mut g = f.clone();
                    g.push(m.clone());
                    next.add_term(g, c * d);
                }
            }
            acc = next;
        }
        acc
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Monomial>, HScalar> {
        &self.terms
    }

    pub fn add_term(&mut self, factors: Vec<Monomial>, c: HScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(factors).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &UTensor) -> UTensor {
        let mut t = self.clone();
        for (f, c) in &other.terms {
            t.add_term(f.clone(), c.clone());
        }
        t
    }

    pub fn sub(&self, other: &UTensor) -> UTensor {
        self.add(&other.scale(&HScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &HScalar) -> UTensor {
        let mut t = UTensor::zero();
        for (f, d) in &self.terms {
            t.add_term(f.clone(), d * c);
        }
        t
    }

    pub fn truncate(&self, order: Option<usize>) -> UTensor {
        let mut t = UTensor::zero();
        for (f, c) in &self.terms {
            t.add_term(f.clone(), c.clone().truncate_opt(order));
        }
        t
    }

    /// Lowest power of `h` occurring in any coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(HScalar::valuation).min()
    }

    /// The `h^k` part, keeping the factor `h^k`.
    pub fn part(&self, k: usize) -> UTensor {
        let mut t = UTensor::zero();
        for (f, c) in &self.terms {
            t.add_term(f.clone(), HScalar::monomial(c.coeff(k), k));
        }
        t
    }

    /// Slotwise product of two tensors of equal rank.
    pub fn mul(&self, other: &UTensor, p: &Presentation) -> Result<UTensor> {
        let mut out = UTensor::zero();
        for (fa, ca) in &self.terms {
            for (fb, cb) in &other.terms {
                if fa.len() != fb.len() {
                    return Err(Error::Invalid("product of tensors of different rank".into()));
                }
                let mut acc: Vec<(Vec<Monomial>, HScalar)> = vec![(Vec::new(), (ca * cb).truncate_opt(p.order()))];
                for (ma, mb) in fa.iter().zip(fb) {
                    let prod = p.mul_terms(&Terms::from([(ma.clone(), HScalar::one())]), &Terms::from([(mb.clone(), HScalar::one())]))?;
                    let mut next = Vec::new();
                    for (f, c) in &acc {
                        for (m, d) in &prod {
                            let mut g = f.clone();
                            g.push(m.clone());
                            next.push((g, (c * d).truncate_opt(p.order())));
                        }
                    }
                    acc = next;
                }
                for (f, c) in acc {
                    out.add_term(f, c);
                }
            }
        }
        Ok(out)
    }

    pub fn fmt(&self, p: &Presentation) -> String {
        fmt_combination(self.terms.iter().map(|(f, c)| {
            let label: Vec<String> = f.iter().map(|m| p.fmt_monomial(m)).collect();
            (c, label.join("(x)"))
        }))
    }

    /// Parse a tensor sum such as `xi(x)1 - h*eta(x)xi + 1(x)xi`.
    pub fn parse(pres: &Arc<Presentation>, text: &str) -> Result<UTensor> {
        let mut out = UTensor::zero();
        for term in parse_tensor_ast(text)? {
            let xs = term.factors.iter().map(|e| UElement::eval(pres, e)).collect::<Result<Vec<_>>>()?;
            let t = UTensor::tensor_of(&xs);
            out = if term.negate { out.sub(&t) } else { out.add(&t) };
        }
        Ok(out)
    }
}

/// `Δ_h` on generators, extended multiplicatively, with counit values.
#[derive(Clone, Debug)]
pub struct DeformedCoproduct {
    pres: Arc<Presentation>,
    images: Vec<UTensor>,
    counit: Vec<HScalar>,
}

impl DeformedCoproduct {
    /// Each image must have rank 2 and reduce to `x⊗1 + 1⊗x` modulo `h`.
    pub fn new(pres: &Arc<Presentation>, images: Vec<UTensor>, counit: Vec<HScalar>) -> Result<DeformedCoproduct> {
        let n = pres.dim();
        if images.len() != n || counit.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: images.len().min(counit.len()) });
        }
        for (i, img) in images.iter().enumerate() {
            if img.terms.keys().any(|f| f.len() != 2) {
                return Err(Error::Invalid(format!("coproduct of `{}` must be a sum of x(x)y terms", pres.name(i))));
            }
            let prim = primitive(n, i);
            if !img.part(0).sub(&prim).is_zero() {
                return Err(Error::Invalid(format!(
                    "coproduct of `{}` must reduce to {} modulo h",
                    pres.name(i),
                    prim.fmt(pres)
                )));
            }
        }
        Ok(DeformedCoproduct { pres: pres.clone(), images, counit })
    }

    /// The primitive coproduct `Δ(x) = x⊗1 + 1⊗x` with `ε(x) = 0`.
    pub fn undeformed(pres: &Arc<Presentation>) -> DeformedCoproduct {
        let n = pres.dim();
        DeformedCoproduct {
            pres: pres.clone(),
            images: (0..n).map(|i| primitive(n, i)).collect(),
            counit: vec![HScalar::zero(); n],
        }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn image(&self, i: usize) -> &UTensor {
        &self.images[i]
    }

    pub fn counit_value(&self, i: usize) -> &HScalar {
        &self.counit[i]
    }

    pub fn is_undeformed(&self) -> bool {
        (0..self.pres.dim()).all(|i| self.images[i] == primitive(self.pres.dim(), i))
    }

    fn apply_monomial(&self, m: &Monomial, memo: &mut HashMap<Monomial, UTensor>) -> Result<UTensor> {
        if let Some(t) = memo.get(m) {
            return Ok(t.clone());
        }
        let n = self.pres.dim();
        let one = Monomial::one(n);
        let mut acc = UTensor::pure(vec![one.clone(), one], HScalar::one());
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&self.images[i], &self.pres)?;
            }
        }
        memo.insert(m.clone(), acc.clone());
        Ok(acc)
    }

    /// `Δ_h(x)`, extended multiplicatively from the generators.
    pub fn apply(&self, x: &UElement) -> Result<UTensor> {
        if !Arc::ptr_eq(x.presentation(), &self.pres) && **x.presentation() != *self.pres {
            return Err(Error::PresentationMismatch);
        }
        let mut memo = HashMap::new();
        let mut out = UTensor::zero();
        for (m, c) in x.terms() {
            out = out.add(&self.apply_monomial(m, &mut memo)?.scale(c));
        }
        Ok(out.truncate(self.pres.order()))
    }

    /// Apply `Δ` in slot `slot` of every term of `t`.
    pub fn apply_in_slot(&self, t: &UTensor, slot: usize) -> Result<UTensor> {
        let mut memo = HashMap::new();
        let mut out = UTensor::zero();
        for (f, c) in &t.terms {
            if slot >= f.len() {
                return Err(Error::Invalid("tensor slot out of range".into()));
            }
            let d = self.apply_monomial(&f[slot], &mut memo)?;
            for (g, e) in &d.terms {
                let mut h = f[..slot].to_vec();
                h.extend(g.iter().cloned());
                h.extend(f[slot + 1..].iter().cloned());
                out.add_term(h, (c * e).truncate_opt(self.pres.order()));
            }
        }
        Ok(out)
    }

    /// `ε` on a PBW monomial, multiplicatively.
    pub fn counit_monomial(&self, m: &Monomial) -> HScalar {
        let mut acc = HScalar::one();
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                acc = &acc * &self.counit[i];
            }
        }
        acc
    }

    /// Apply `ε` in slot `slot`, lowering the rank by one.
    pub fn counit_in_slot(&self, t: &UTensor, slot: usize) -> UTensor {
        let mut out = UTensor::zero();
        for (f, c) in &t.terms {
            let e = self.counit_monomial(&f[slot]);
            let mut g = f.clone();
            g.remove(slot);
            out.add_term(g, c * &e);
        }
        out
    }

    /// The odd derivation `d(x_1⊗...⊗x_n) = Σ_i (-1)^{i-1} x_1⊗...⊗Δ(x_i)⊗...⊗x_n`.
    pub fn tensor_differential(&self, w: &UTensor) -> Result<UTensor> {
        let mut out = UTensor::zero();
        for (f, c) in &w.terms {
            let single = UTensor::pure(f.clone(), c.clone());
            for slot in 0..f.len() {
                let t = self.apply_in_slot(&single, slot)?;
                out = if slot % 2 == 0 { out.add(&t) } else { out.sub(&t) };
            }
        }
        Ok(out)
    }

    /// `δ(x) = ½(Δ_1(x) - τΔ_1(x))` on generators.
    pub fn semiclassical_cobracket(&self) -> Result<Cobracket> {
        let n = self.pres.dim();
        let half = Rational::new(1.into(), 2.into());
        let mut entries = Vec::new();
        for i in 0..n {
            let mut anti: BTreeMap<(Monomial, Monomial), Rational> = BTreeMap::new();
            for (f, c) in &self.images[i].terms {
                let c1 = c.coeff(1);
                if c1 == Rational::from_integer(0.into()) {
                    continue;
                }
                *anti.entry((f[0].clone(), f[1].clone())).or_insert_with(|| Rational::from_integer(0.into())) += &c1 * &half;
                *anti.entry((f[1].clone(), f[0].clone())).or_insert_with(|| Rational::from_integer(0.into())) -= &c1 * &half;
            }
            for ((a, b), c) in anti {
                if c == Rational::from_integer(0.into()) {
                    continue;
                }
                let (ja, jb) = match (degree_one(&a), degree_one(&b)) {
                    (Some(x), Some(y)) => (x, y),
                    _ => {
                        return Err(Error::Invalid(format!(
                            "antisymmetrized first-order coproduct of `{}` leaves g∧g",
                            self.pres.name(i)
                        )))
                    }
                };
                // the tensor coefficient of e_j⊗e_k with j<k is the wedge coefficient
                if ja < jb {
                    entries.push(((i, ja, jb), HScalar::constant(c)));
                }
            }
        }
        Cobracket::new(n, entries)
    }
}

fn degree_one(m: &Monomial) -> Option<usize> {
    (m.degree() == 1).then(|| m.0.iter().position(|&e| e == 1).expect("degree one"))
}

fn primitive(n: usize, i: usize) -> UTensor {
    let one = Monomial::one(n);
    let x = Monomial::var(n, i);
    let mut t = UTensor::pure(vec![x.clone(), one.clone()], HScalar::one());
    t.add_term(vec![one, x], HScalar::one());
    t
}

/// PBW monomials of degree `1..=max_degree`.
pub fn monomials_up_to(n: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![Monomial::one(n)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &cur {
            let last = m.0.iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in last..n {
                let mut g = m.clone();
                g.0[i] += 1;
                next.push(g);
            }
        }
        out.extend(next.iter().cloned());
        cur = next;
    }
    out
}

fn certified(order: Option<usize>) -> Certified {
    order.map_or(Certified::Exact, Certified::Order)
}

fn lowest_failure(
    p: &Presentation,
    items: impl Iterator<Item = Result<(String, UTensor)>>,
) -> Result<Option<(usize, String)>> {
    let mut worst: Option<(usize, String)> = None;
    for item in items {
        let (label, r) = item?;
        if let Some(k) = r.valuation() {
            if worst.as_ref().is_none_or(|(w, _)| k < *w) {
                worst = Some((k, format!("{label}: {}", r.part(k).fmt(p))));
            }
        }
    }
    Ok(worst)
}

fn verdict(name: &str, res: Result<Option<(usize, String)>>, order: Option<usize>) -> CheckReport {
    match res {
        Err(e) => CheckReport::fail(name, e.to_string()),
        Ok(None) => CheckReport::pass(name, certified(order)),
        Ok(Some((k, w))) => CheckReport::fail_at(name, k, w),
    }
}

/// `(Δ⊗id)Δ(x) = (id⊗Δ)Δ(x)` for PBW monomials of degree `1..=max_degree`.
pub fn check_coassociativity(d: &DeformedCoproduct, max_degree: u32) -> CheckReport {
    let p = d.presentation().clone();
    let items = monomials_up_to(p.dim(), max_degree).into_iter().map(|m| {
        let x = UElement::monomial(&p, m);
        let dx = d.apply(&x)?;
        let r = d.apply_in_slot(&dx, 0)?.sub(&d.apply_in_slot(&dx, 1)?);
        Ok((x.to_string(), r))
    });
    verdict("coassociativity", lowest_failure(&p, items), p.order())
        .with_note(format!("PBW monomials of degree <= {max_degree}"))
}

/// `Δ² = 0` on words of generators of length `1..=max_len`, cross-checked
/// against coassociativity on the generators.
pub fn check_square_zero(d: &DeformedCoproduct, max_len: usize) -> CheckReport {
    let p = d.presentation().clone();
    let n = p.dim();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut all = Vec::new();
    for _ in 0..max_len {
        words = words
            .iter()
            .flat_map(|w| (0..n).map(move |g| {
                let mut v = w.clone();
                v.push(g);
                v
            }))
            .collect();
        all.extend(words.iter().cloned());
    }
    let items = all.into_iter().map(|w| {
        let factors: Vec<Monomial> = w.iter().map(|&g| Monomial::var(n, g)).collect();
        let t = UTensor::pure(factors, HScalar::one());
        let r = d.tensor_differential(&d.tensor_differential(&t)?)?;
        Ok((t.fmt(&p), r))
    });
    let report = verdict("square_zero", lowest_failure(&p, items), p.order())
        .with_note(format!("words of length <= {max_len}"));
    let coassoc = check_coassociativity(d, 1);
    if coassoc.passed() != report.passed() {
        return CheckReport::fail("square_zero", "square-zero and coassociativity disagree on generators")
            .with_note(format!("coassociativity: {}", coassoc.headline()));
    }
    report.with_note("agrees with coassociativity on generators")
}

/// Counit axioms for `Δ_h`, and the antipode axiom when `Δ` is undeformed.
pub fn check_counit_antipode(d: &DeformedCoproduct, max_degree: u32) -> Vec<CheckReport> {
    let p = d.presentation().clone();
    let mons = monomials_up_to(p.dim(), max_degree);
    let counit = {
        let items = mons.iter().flat_map(|m| {
            let x = UElement::monomial(&p, m.clone());
            let sides = d.apply(&x).map(|dx| {
                let id = UTensor::from_element(&x);
                [
                    (format!("(eps(x)id)D({x})"), d.counit_in_slot(&dx, 0).sub(&id)),
                    (format!("(id(x)eps)D({x})"), d.counit_in_slot(&dx, 1).sub(&id)),
                ]
            });
            match sides {
                Ok(pair) => pair.into_iter().map(Ok).collect::<Vec<_>>(),
                Err(e) => vec![Err(e)],
            }
        });
        verdict("counit_antipode.counit", lowest_failure(&p, items), p.order())
    };
    let antipode = if d.is_undeformed() {
        let items = mons.iter().map(|m| {
            let x = UElement::monomial(&p, m.clone());
            let dx = d.apply(&x)?;
            let mut acc = UElement::zero(&p);
            for (f, c) in dx.terms() {
                let s = antipode_monomial(&p, &f[0])?;
                let prod = s.mul(&UElement::monomial(&p, f[1].clone()))?.scale(c);
                acc = acc.add(&prod)?;
            }
            let eps = UElement::scalar(&p, d.counit_monomial(m));
            Ok((x.to_string(), UTensor::from_element(&acc.sub(&eps)?)))
        });
        verdict("counit_antipode.antipode", lowest_failure(&p, items), p.order())
            .with_convention("S(e_i) = -e_i extended as an anti-homomorphism")
    } else {
        CheckReport::unverified(
            "counit_antipode.antipode",
            "the antipode of a deformed coproduct is not specified; only the undeformed axiom is checked",
        )
    };
    vec![counit, antipode]
}

/// `S(e_1^{k_1} ... e_n^{k_n}) = (-1)^{Σk} e_n^{k_n} ... e_1^{k_1}`.
pub fn antipode_monomial(p: &Arc<Presentation>, m: &Monomial) -> Result<UElement> {
    let mut word = Vec::new();
    for (i, &e) in m.0.iter().enumerate().rev() {
        word.extend(std::iter::repeat_n(i, e as usize));
    }
    let sign = if m.degree() % 2 == 0 { 1 } else { -1 };
    UElement::word(p, &word, HScalar::from_int(sign))
}

/// `Δ(e_j)Δ(e_k) - Δ(e_k)Δ(e_j) = Δ(R_jk)` for all generator pairs.
pub fn check_coproduct_welldefined(d: &DeformedCoproduct) -> CheckReport {
    let p = d.presentation().clone();
    let n = p.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| ((j + 1)..n).map(move |k| (j, k))).collect();
    let items = pairs.into_iter().map(|(j, k)| {
        let (a, b) = (d.image(j), d.image(k));
        let lhs = a.mul(b, &p)?.sub(&b.mul(a, &p)?);
        let r = UElement::from_terms(&p, p.relation(j, k).cloned().unwrap_or_default());
        let rhs = d.apply(&r)?;
        Ok((format!("[{},{}]", p.name(j), p.name(k)), lhs.sub(&rhs).truncate(p.order())))
    });
    verdict("coproduct_welldefined", lowest_failure(&p, items), p.order())
}
