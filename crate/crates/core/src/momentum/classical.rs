use crate::liebialg::LieAlgebra;
use crate::poissongeo::{PoissonStructure, VectorField};
use crate::report::{CheckReport, Certified};
use crate::symexpr::{int, RatFunc};

/// `X_{J_i} = φ(e_i)` for every basis element.
pub fn check_classical_mm(j: &[RatFunc], phi: &[VectorField], names: &[String], pi: &PoissonStructure) -> CheckReport {
    let name = "classical_mm";
    if j.len() != phi.len() {
        return CheckReport::fail(name, format!("{} momentum components for {} generators", j.len(), phi.len()));
    }
    for (i, (ji, xi)) in j.iter().zip(phi).enumerate() {
        let x = pi.hamiltonian_vf(ji);
        if &x != xi {
            return CheckReport::fail(name, format!("X_J({}) - phi({}) = {}", names[i], names[i], x.sub(xi)));
        }
    }
    CheckReport::pass(name, Certified::Exact).with_convention("X_H = {H, .}, {f,g} = sum pi^(ij) d_i f d_j g")
}

/// `J([e_i, e_j])` from the `h^0` structure constants.
fn j_of(j: &[RatFunc], x: &[crate::hscalar::HScalar]) -> RatFunc {
    let mut acc = RatFunc::zero(j[0].vars());
    for (k, c) in x.iter().enumerate() {
        let c0 = c.coeff(0);
        if c0 != int(0) {
            acc = &acc + &j[k].scale(&c0);
        }
    }
    acc
}

/// `{J(e_i), J(e_j)} = J([e_i, e_j])` on basis pairs.
pub fn check_equivariance(j: &[RatFunc], g: &LieAlgebra, pi: &PoissonStructure) -> CheckReport {
    let name = "equivariance";
    if j.len() != g.dim() {
        return CheckReport::fail(name, format!("{} momentum components for {} generators", j.len(), g.dim()));
    }
    for a in 0..g.dim() {
        for b in (a + 1)..g.dim() {
            let lhs = pi.bracket(&j[a], &j[b]);
            let rhs = j_of(j, g.structure(a, b));
            if lhs != rhs {
                return CheckReport::fail(
                    name,
                    format!("{{{}, {}}} = {lhs} but J([{},{}]) = {rhs}", j[a], j[b], g.name(a), g.name(b)),
                );
            }
        }
    }
    CheckReport::pass(name, Certified::Exact)
}

/// `{H, J_i} = 0` for every component.
pub fn check_noether(j: &[RatFunc], names: &[String], h: &RatFunc, pi: &PoissonStructure) -> CheckReport {
    let name = "noether";
    for (i, ji) in j.iter().enumerate() {
        let r = pi.bracket(h, ji);
        if !r.is_zero() {
            return CheckReport::fail(name, format!("{{{h}, J({})}} = {r}", names[i]));
        }
    }
    CheckReport::pass(name, Certified::Exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{parse_expr, Vars};

    fn so3() -> (PoissonStructure, LieAlgebra, Vec<RatFunc>, Vec<String>) {
        let v = Vars::new(&["x1", "x2", "x3"]).unwrap();
        let e = |s: &str| parse_expr(s, &v).unwrap();
        let m = vec![vec![e("0"), e("x3"), e("-x2")], vec![e("-x3"), e("0"), e("x1")], vec![e("x2"), e("-x1"), e("0")]];
        let pi = PoissonStructure::new(&v, m).unwrap();
        let g0 = LieAlgebra::abelian(&["e1", "e2", "e3"]).unwrap();
        let p = |s: &str| g0.parse_element(s).unwrap();
        let g = LieAlgebra::new(&["e1", "e2", "e3"], [((0, 1), p("e3")), ((1, 2), p("e1")), ((2, 0), p("e2"))]).unwrap();
        let j = vec![e("x1"), e("x2"), e("x3")];
        (pi, g, j, vec!["e1".into(), "e2".into(), "e3".into()])
    }

    #[test]
    fn so3_suite() {
        let (pi, g, j, names) = so3();
        let phi: Vec<VectorField> = j.iter().map(|x| pi.hamiltonian_vf(x)).collect();
        assert!(check_classical_mm(&j, &phi, &names, &pi).passed());
        assert!(check_equivariance(&j, &g, &pi).passed());
        let casimir = parse_expr("x1^2 + x2^2 + x3^2", pi.vars()).unwrap();
        assert!(check_noether(&j, &names, &casimir, &pi).passed());
    }

    #[test]
    fn canonical_failures() {
        let v = Vars::new(&["q", "p"]).unwrap();
        let e = |s: &str| parse_expr(s, &v).unwrap();
        let pi = PoissonStructure::new(&v, vec![vec![e("0"), e("1")], vec![e("-1"), e("0")]]).unwrap();
        let rot = vec![VectorField::new(&v, vec![e("-p"), e("q")]).unwrap()];
        let names = vec!["xi".to_string()];
        assert!(check_classical_mm(&[e("(q^2+p^2)/2")], &rot, &names, &pi).passed());
        assert!(check_classical_mm(&[e("q*p")], &rot, &names, &pi).failed());
        let r = check_noether(&[e("(q^2+p^2)/2")], &names, &e("q"), &pi);
        assert_eq!(r.witness.as_deref(), Some("{q, J(xi)} = p"));
        let ab = LieAlgebra::abelian(&["a", "b"]).unwrap();
        let r = check_equivariance(&[e("q"), e("p")], &ab, &pi);
        assert_eq!(r.witness.as_deref(), Some("{q, p} = 1 but J([a,b]) = 0"));
    }
}
