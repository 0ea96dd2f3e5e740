use super::fields::{Bivector, VectorField};
use super::structure::PoissonStructure;
use crate::liebialg::{LieAlgebra, LieBialgebra};
use crate::report::{CheckReport, Certified};
use crate::symexpr::{int, rat, RatFunc};

/// `[φ(e_i), φ(e_j)] = φ([e_i, e_j])` on basis pairs, using the `h^0` part
/// of the structure constants.
pub fn homomorphism_residual(phi: &[VectorField], g: &LieAlgebra) -> Option<String> {
    for i in 0..g.dim() {
        for j in (i + 1)..g.dim() {
            let lhs = phi[i].commutator(&phi[j]);
            let mut rhs = VectorField::zero(phi[i].vars());
            for (k, c) in g.structure(i, j).iter().enumerate() {
                let c0 = c.coeff(0);
                if c0 != int(0) {
                    rhs = rhs.add(&phi[k].scale(&RatFunc::constant(phi[k].vars(), c0)));
                }
            }
            if lhs != rhs {
                return Some(format!(
                    "[phi({}),phi({})] - phi([{},{}]) = {}",
                    g.name(i),
                    g.name(j),
                    g.name(i),
                    g.name(j),
                    lhs.sub(&rhs)
                ));
            }
        }
    }
    None
}

fn arity_report(name: &str, phi: &[VectorField], g: &LieAlgebra, pi: &PoissonStructure) -> Option<CheckReport> {
    if phi.len() != g.dim() {
        return Some(CheckReport::fail(name, format!("action given on {} generators, algebra has {}", phi.len(), g.dim())));
    }
    for x in phi {
        if let Err(e) = x.vars().ensure_same(pi.vars()) {
            return Some(CheckReport::fail(name, e.to_string()));
        }
    }
    None
}

/// `ℒ_{φ(ξ)} π = 0` for every generator, plus the homomorphism property.
pub fn check_canonical_action(phi: &[VectorField], g: &LieAlgebra, pi: &PoissonStructure) -> CheckReport {
    let name = "canonical_action";
    if let Some(r) = arity_report(name, phi, g, pi) {
        return r;
    }
    for (i, x) in phi.iter().enumerate() {
        let l = pi.lie_derivative(x);
        if !l.is_zero() {
            return CheckReport::fail(name, format!("L_{} pi = {l}", g.name(i)));
        }
    }
    if let Some(w) = homomorphism_residual(phi, g) {
        return CheckReport::fail(name, w);
    }
    CheckReport::pass(name, Certified::Exact).with_convention("[X,Y] = XY - YX on vector fields")
}

/// `(φ∧φ)δ(e_i) = Σ_{j<k} f_i^{jk} φ(e_j)∧φ(e_k)`, with the `h^0` cobracket.
pub fn wedge_image(phi: &[VectorField], b: &LieBialgebra, i: usize) -> Bivector {
    let vars = phi[i].vars();
    let n = b.algebra().dim();
    let mut acc = Bivector::zero(vars);
    for j in 0..n {
        for k in (j + 1)..n {
            let c = b.cobracket().component(i, j, k).coeff(0);
            if c != int(0) {
                acc = acc.add(&phi[j].wedge(&phi[k]).scale(&RatFunc::constant(vars, c)));
            }
        }
    }
    acc
}

/// `ℒ_{φ(ξ)} π = (φ∧φ)δ(ξ)` for every generator, plus the homomorphism property.
pub fn check_poisson_action(phi: &[VectorField], b: &LieBialgebra, pi: &PoissonStructure) -> CheckReport {
    let name = "poisson_action";
    let g = b.algebra();
    if let Some(r) = arity_report(name, phi, g, pi) {
        return r;
    }
    let convention = "(phi^phi)(e_j^e_k) = phi(e_j)^phi(e_k), (X^Y)^(ij) = X^i Y^j - X^j Y^i, no 1/2 factors";
    for (i, x) in phi.iter().enumerate() {
        let l = pi.lie_derivative(x);
        let r = wedge_image(phi, b, i);
        if l != r {
            let mut rep = CheckReport::fail(name, format!("L_{} pi - (phi^phi)delta({}) = {}", g.name(i), g.name(i), l.sub(&r)))
                .with_convention(convention);
            let vars = pi.vars();
            for (factor, label) in [(rat(2, 1), "2"), (rat(1, 2), "1/2")] {
                if !r.is_zero() && l == r.scale(&RatFunc::constant(vars, factor)) {
                    rep = rep.with_note(format!("holds for {} if the wedge image is rescaled by {label}", g.name(i)));
                }
            }
            return rep;
        }
    }
    if let Some(w) = homomorphism_residual(phi, g) {
        return CheckReport::fail(name, w).with_convention(convention);
    }
    CheckReport::pass(name, Certified::Exact).with_convention(convention)
}
