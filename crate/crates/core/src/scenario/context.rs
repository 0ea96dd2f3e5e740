use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hscalar::HScalar;
use crate::liebialg::{Cobracket, LieAlgebra, LieBialgebra};
use crate::momentum::QuantumMomentumMap;
use crate::poissongeo::{OneForm, PoissonStructure, VectorField};
use crate::quantumgroup::{make_gutt_star, DeformedCoproduct, Presentation, UTensor};
use crate::sample::Sampler;
use crate::starprod::{BidiffOperator, BidiffTerm, HbarSeries, StarProduct};
use crate::symexpr::{parse_expr, RatFunc, Rational, Vars};

use super::schema::{Operand, PairSpec, Scenario};

/// Sample functions shared by all checks of a run.
pub(crate) struct Samples {
    pub functions: Vec<RatFunc>,
    pub pairs: Vec<(RatFunc, RatFunc)>,
    pub triples: Vec<(RatFunc, RatFunc, RatFunc)>,
    /// Twenty seeded pairs for the one-form bracket identity.
    pub koszul: Vec<(RatFunc, RatFunc)>,
}

/// Structures assembled from a scenario.
pub(crate) struct Context {
    pub vars: Vars,
    pub order: usize,
    pub poisson: Option<PoissonStructure>,
    pub star: Option<StarProduct>,
    pub lie: Option<LieBialgebra>,
    pub pres: Option<Arc<Presentation>>,
    pub coproduct: Option<DeformedCoproduct>,
    pub max_degree: u32,
    pub max_length: usize,
    pub action: Option<Vec<VectorField>>,
    pub forms: Option<Vec<OneForm>>,
    pub momentum: Option<Vec<RatFunc>>,
    pub hamiltonians: Option<Vec<RatFunc>>,
    pub qmm: Option<QuantumMomentumMap>,
    pub samples: Samples,
}

fn expr(text: &str, vars: &Vars, section: &str) -> Result<RatFunc> {
    parse_expr(text, vars).map_err(|e| e.in_section(section))
}

fn constant(text: &str, vars: &Vars, section: &str) -> Result<Rational> {
    expr(text, vars, section)?
        .constant_value()
        .ok_or_else(|| Error::Invalid(format!("`{text}` is not a constant")).in_section(section))
}

fn split_pair(key: &str, basis: &[String], section: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    let idx = |s: &str| {
        basis
            .iter()
            .position(|b| b == s)
            .ok_or_else(|| Error::Invalid(format!("unknown generator `{s}`")).in_section(section))
    };
    match parts.as_slice() {
        [a, b] => Ok((idx(a)?, idx(b)?)),
        _ => Err(Error::Invalid(format!("expected `a,b`, found `{key}`")).in_section(section)),
    }
}

/// Values listed per generator, in basis order; every generator must appear.
fn per_generator<'a, T>(map: &'a BTreeMap<String, T>, basis: &[String], section: &str) -> Result<Vec<&'a T>> {
    if let Some(k) = map.keys().find(|k| !basis.contains(k)) {
        return Err(Error::Invalid(format!("unknown generator `{k}`")).in_section(section));
    }
    basis
        .iter()
        .map(|b| map.get(b).ok_or_else(|| Error::Invalid(format!("no entry for generator `{b}`")).in_section(section)))
        .collect()
}

fn components(texts: &[String], vars: &Vars, section: &str) -> Result<Vec<RatFunc>> {
    if texts.len() != vars.len() {
        return Err(Error::DimensionMismatch { expected: vars.len(), found: texts.len() }.in_section(section));
    }
    texts.iter().map(|t| expr(t, vars, section)).collect()
}

fn basis_of<'a>(lie: &'a Option<LieBialgebra>, section: &str) -> Result<&'a [String]> {
    lie.as_ref()
        .map(|b| b.algebra().basis())
        .ok_or_else(|| Error::MissingSection("lie".into()).in_section(section))
}

impl Context {
    pub fn build(sc: &Scenario, order_override: Option<usize>, seed: u64) -> Result<Context> {
        let space = sc.space.as_ref().ok_or_else(|| Error::MissingSection("space".into()))?;
        let vars = Vars::new(&space.variables).map_err(|e| e.in_section("space"))?;
        if vars.index_of("h").is_some() {
            return Err(Error::Invalid("`h` is reserved for the deformation parameter".into()).in_section("space"));
        }
        let order = order_override.unwrap_or(space.order);
        if order < 2 {
            return Err(Error::Invalid(format!("truncation order must be at least 2, found {order}")).in_section("space"));
        }

        let poisson = match &sc.poisson {
            Some(m) => {
                if m.len() != vars.len() {
                    return Err(Error::DimensionMismatch { expected: vars.len(), found: m.len() }.in_section("poisson"));
                }
                let rows = m.iter().map(|r| components(r, &vars, "poisson")).collect::<Result<Vec<_>>>()?;
                Some(PoissonStructure::new(&vars, rows).map_err(|e| e.in_section("poisson"))?)
            }
            None => None,
        };

        let lie = match &sc.lie {
            Some(l) => {
                let ab = LieAlgebra::abelian(&l.basis).map_err(|e| e.in_section("lie"))?;
                let mut brackets = Vec::new();
                for (k, v) in &l.brackets {
                    let ij = split_pair(k, &l.basis, "lie.brackets")?;
                    brackets.push((ij, ab.parse_element(v).map_err(|e| e.in_section("lie.brackets"))?));
                }
                let g = LieAlgebra::new(&l.basis, brackets).map_err(|e| e.in_section("lie.brackets"))?;
                let mut entries = Vec::new();
                for (gen, wedges) in &l.cobracket {
                    let i = l
                        .basis
                        .iter()
                        .position(|b| b == gen)
                        .ok_or_else(|| Error::Invalid(format!("unknown generator `{gen}`")).in_section("lie.cobracket"))?;
                    for (k, c) in wedges {
                        let (j, m) = split_pair(k, &l.basis, "lie.cobracket")?;
                        entries.push(((i, j, m), HScalar::parse(c).map_err(|e| e.in_section("lie.cobracket"))?));
                    }
                }
                let delta = Cobracket::new(l.basis.len(), entries).map_err(|e| e.in_section("lie.cobracket"))?;
                Some(LieBialgebra::new(g, delta).map_err(|e| e.in_section("lie"))?)
            }
            None => None,
        };

        let star = match &sc.star {
            Some(s) => Some(Self::star(s, &vars, order, poisson.as_ref(), lie.as_ref())?),
            None => None,
        };

        let mut pres = None;
        let mut coproduct = None;
        let (mut max_degree, mut max_length) = (3, 3);
        if let Some(q) = &sc.quantum {
            let basis = basis_of(&lie, "quantum")?.to_vec();
            let rels = match &q.relations {
                Some(r) => {
                    let mut out = Vec::new();
                    for (k, v) in r {
                        let ij = split_pair(k, &basis, "quantum.relations")?;
                        out.push((ij, Presentation::parse_normal(&basis, v).map_err(|e| e.in_section("quantum.relations"))?));
                    }
                    out
                }
                None => Self::lie_relations(lie.as_ref().expect("checked")),
            };
            let p = Presentation::new(&basis, rels, None).map_err(|e| e.in_section("quantum.relations"))?;
            if let Some(c) = &q.coproduct {
                let images = per_generator(c, &basis, "quantum.coproduct")?
                    .into_iter()
                    .map(|t| UTensor::parse(&p, t).map_err(|e| e.in_section("quantum.coproduct")))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(k) = q.counit.keys().find(|k| !basis.contains(k)) {
                    return Err(Error::Invalid(format!("unknown generator `{k}`")).in_section("quantum.counit"));
                }
                let counit = basis
                    .iter()
                    .map(|b| q.counit.get(b).map_or(Ok(HScalar::zero()), |t| HScalar::parse(t)))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| e.in_section("quantum.counit"))?;
                coproduct = Some(DeformedCoproduct::new(&p, images, counit).map_err(|e| e.in_section("quantum.coproduct"))?);
            }
            max_degree = q.max_degree.unwrap_or(3);
            max_length = q.max_length.unwrap_or(3);
            pres = Some(p);
        } else if let Some(l) = &lie {
            pres = Some(Presentation::new(l.algebra().basis(), Self::lie_relations(l), None).map_err(|e| e.in_section("lie"))?);
        }

        let action = match &sc.action {
            Some(a) => {
                let basis = basis_of(&lie, "action")?;
                Some(
                    per_generator(a, basis, "action")?
                        .into_iter()
                        .map(|c| VectorField::new(&vars, components(c, &vars, "action")?))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            None => None,
        };
        let forms = match &sc.forms {
            Some(a) => {
                let basis = basis_of(&lie, "forms")?;
                Some(
                    per_generator(a, basis, "forms")?
                        .into_iter()
                        .map(|c| OneForm::new(&vars, components(c, &vars, "forms")?))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            None => None,
        };
        let momentum = match &sc.momentum {
            Some(m) => {
                let basis = basis_of(&lie, "momentum")?;
                Some(per_generator(m, basis, "momentum")?.into_iter().map(|t| expr(t, &vars, "momentum")).collect::<Result<Vec<_>>>()?)
            }
            None => None,
        };
        let hamiltonians = match &sc.hamiltonians {
            Some(h) => Some(h.iter().map(|t| expr(t, &vars, "hamiltonians")).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        let qmm = match &sc.quantum_action {
            Some(qa) => {
                let basis = basis_of(&lie, "quantum_action")?;
                let sp = star.as_ref().ok_or_else(|| Error::MissingSection("star".into()).in_section("quantum_action"))?;
                let mut forms = Vec::new();
                for pairs in per_generator(qa, basis, "quantum_action")? {
                    forms.push(pairs.iter().map(|p| Self::pair(p, sp)).collect::<Result<Vec<_>>>()?);
                }
                Some(QuantumMomentumMap::new(sp.clone(), basis, forms).map_err(|e| e.in_section("quantum_action"))?)
            }
            None => None,
        };

        let samples = Self::samples(sc, &vars, seed)?;
        Ok(Context {
            vars,
            order,
            poisson,
            star,
            lie,
            pres,
            coproduct,
            max_degree,
            max_length,
            action,
            forms,
            momentum,
            hamiltonians,
            qmm,
            samples,
        })
    }

    fn lie_relations(l: &LieBialgebra) -> Vec<((usize, usize), crate::quantumgroup::Terms)> {
        let g = l.algebra();
        let n = g.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let t = g
                    .structure(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (crate::symexpr::Monomial::var(n, k), c.clone()))
                    .collect();
                out.push(((i, j), t));
            }
        }
        out
    }

    fn star(
        s: &super::schema::StarSpec,
        vars: &Vars,
        order: usize,
        poisson: Option<&PoissonStructure>,
        lie: Option<&LieBialgebra>,
    ) -> Result<StarProduct> {
        let sec = "star";
        let built = match s.kind.as_str() {
            "moyal" => {
                let matrix = match &s.matrix {
                    Some(m) => {
                        if m.len() != vars.len() {
                            return Err(Error::DimensionMismatch { expected: vars.len(), found: m.len() }.in_section(sec));
                        }
                        m.iter().map(|r| r.iter().map(|t| constant(t, vars, sec)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?
                    }
                    None => {
                        let pi = poisson.ok_or_else(|| Error::MissingSection("poisson".into()).in_section(sec))?;
                        let n = vars.len();
                        (0..n)
                            .map(|i| {
                                (0..n)
                                    .map(|j| {
                                        pi.component(i, j).constant_value().ok_or_else(|| {
                                            Error::Invalid("a Moyal product needs a constant Poisson matrix".into()).in_section(sec)
                                        })
                                    })
                                    .collect::<Result<Vec<_>>>()
                            })
                            .collect::<Result<Vec<_>>>()?
                    }
                };
                StarProduct::moyal(vars, matrix, order)
            }
            "explicit" => {
                let ops = s.operators.as_ref().ok_or_else(|| Error::MissingSection("star.operators".into()))?;
                let mut operators = Vec::new();
                for op in ops {
                    let mut terms = Vec::new();
                    for t in op {
                        terms.push(BidiffTerm { coeff: expr(&t.coeff, vars, sec)?, left: t.left.clone(), right: t.right.clone() });
                    }
                    operators.push(BidiffOperator { terms });
                }
                StarProduct::explicit(vars, operators, order)
            }
            "gutt" => {
                let l = lie.ok_or_else(|| Error::MissingSection("lie".into()).in_section(sec))?;
                make_gutt_star(l.algebra(), vars, order)
            }
            other => Err(Error::Invalid(format!("unknown star product kind `{other}`"))),
        };
        built.map_err(|e| e.in_section(sec))
    }

    fn pair(p: &PairSpec, sp: &StarProduct) -> Result<(HbarSeries, HbarSeries)> {
        let operand = |o: &Operand| -> Result<HbarSeries> {
            match o {
                Operand::Expr(t) => HbarSeries::parse(t, sp.vars(), sp.order()),
                Operand::Inverse { star_inverse } => sp.inverse(&HbarSeries::parse(star_inverse, sp.vars(), sp.order())?),
            }
        };
        Ok((
            operand(&p.a).map_err(|e| e.in_section("quantum_action"))?,
            operand(&p.b).map_err(|e| e.in_section("quantum_action"))?,
        ))
    }

    fn samples(sc: &Scenario, vars: &Vars, seed: u64) -> Result<Samples> {
        let spec = sc.samples.as_ref();
        let count = spec.and_then(|s| s.count).unwrap_or(4);
        let degree = spec.and_then(|s| s.max_degree).unwrap_or(3);
        let mut rng = Sampler::new(seed);
        let mut functions = rng.functions(vars, count, 2);
        let mut pairs = rng.pairs(vars, count, 2);
        let mut triples = rng.triples(vars, count, degree);
        let koszul = rng.pairs(vars, 20, 3);
        let sec = "samples";
        if let Some(s) = spec {
            if let Some(f) = &s.functions {
                functions = f.iter().map(|t| expr(t, vars, sec)).collect::<Result<_>>()?;
            }
            if let Some(p) = &s.pairs {
                pairs = p.iter().map(|[a, b]| Ok((expr(a, vars, sec)?, expr(b, vars, sec)?))).collect::<Result<_>>()?;
            }
            if let Some(t) = &s.triples {
                triples = t
                    .iter()
                    .map(|[a, b, c]| Ok((expr(a, vars, sec)?, expr(b, vars, sec)?, expr(c, vars, sec)?)))
                    .collect::<Result<_>>()?;
            }
        }
        Ok(Samples { functions, pairs, triples, koszul })
    }
}
