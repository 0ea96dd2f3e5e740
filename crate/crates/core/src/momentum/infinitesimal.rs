use crate::liebialg::LieBialgebra;
use crate::poissongeo::{OneForm, PoissonStructure, TwoForm};
use crate::report::{CheckReport, Certified};
use crate::symexpr::{int, RatFunc};

/// `dα_ξ + (α∧α)δ(ξ)` for generator `i`, with the `h^0` cobracket.
pub fn maurer_cartan_residual(alpha: &[OneForm], b: &LieBialgebra, i: usize) -> TwoForm {
    let vars = alpha[i].vars();
    let n = alpha.len();
    let mut acc = alpha[i].exterior_d();
    for j in 0..n {
        for k in (j + 1)..n {
            let c = b.cobracket().component(i, j, k).coeff(0);
            if c != int(0) {
                acc = acc.add(&alpha[j].wedge(&alpha[k]).scale(&RatFunc::constant(vars, c)));
            }
        }
    }
    acc
}

/// Degree-one conditions: `α_{[ξ,η]} = [α_ξ, α_η]_π` and
/// `dα_ξ + (α∧α)δ(ξ) = 0`. Higher-degree conditions are reported unverified.
pub fn check_infinitesimal_mm(alpha: &[OneForm], b: &LieBialgebra, pi: &PoissonStructure) -> Vec<CheckReport> {
    let g = b.algebra();
    let n = g.dim();
    if alpha.len() != n {
        let w = format!("{} one-forms for {} generators", alpha.len(), n);
        return vec![
            CheckReport::fail("infinitesimal_mm.bracket", w.clone()),
            CheckReport::fail("infinitesimal_mm.maurer_cartan", w),
        ];
    }
    let mut bracket = CheckReport::pass("infinitesimal_mm.bracket", Certified::Exact)
        .with_convention("[a,b]_pi = L_(pi# a) b - L_(pi# b) a - d(pi(a,b))");
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            let lhs = pi.koszul_bracket(&alpha[i], &alpha[j]);
            let mut rhs = OneForm::zero(pi.vars());
            for (k, c) in g.structure(i, j).iter().enumerate() {
                let c0 = c.coeff(0);
                if c0 != int(0) {
                    rhs = rhs.add(&alpha[k].scale(&RatFunc::constant(pi.vars(), c0)));
                }
            }
            if lhs != rhs {
                bracket = CheckReport::fail(
                    "infinitesimal_mm.bracket",
                    format!("[alpha_{}, alpha_{}]_pi - alpha_[{},{}] = {}", g.name(i), g.name(j), g.name(i), g.name(j), lhs.sub(&rhs)),
                );
                break 'outer;
            }
        }
    }
    let mut mc = CheckReport::pass("infinitesimal_mm.maurer_cartan", Certified::Exact)
        .with_convention("(alpha^alpha)(e_j^e_k) = alpha_j^alpha_k, (a^b)_(ij) = a_i b_j - a_j b_i");
    for i in 0..n {
        let r = maurer_cartan_residual(alpha, b, i);
        if !r.is_zero() {
            mc = CheckReport::fail("infinitesimal_mm.maurer_cartan", format!("{}: {r}", g.name(i)));
            break;
        }
    }
    let higher = CheckReport::unverified(
        "infinitesimal_mm.higher_degrees",
        "Gerstenhaber-morphism conditions in degrees >= 2 are not implemented",
    );
    vec![bracket, mc, higher]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liebialg::{Cobracket, LieAlgebra};
    use crate::symexpr::{parse_expr, Vars};

    #[test]
    fn canonical_translations() {
        let v = Vars::new(&["q", "p"]).unwrap();
        let e = |s: &str| parse_expr(s, &v).unwrap();
        let pi = PoissonStructure::new(&v, vec![vec![e("0"), e("1")], vec![e("-1"), e("0")]]).unwrap();
        let b = LieBialgebra::new(LieAlgebra::abelian(&["a", "b"]).unwrap(), Cobracket::zero(2)).unwrap();
        let alpha = vec![OneForm::exact(&e("q")), OneForm::exact(&e("p"))];
        let r = check_infinitesimal_mm(&alpha, &b, &pi);
        assert!(r[0].passed() && r[1].passed());
        let bad = vec![OneForm::new(&v, vec![e("p"), e("0")]).unwrap(), OneForm::zero(&v)];
        let r = check_infinitesimal_mm(&bad, &b, &pi);
        assert!(r[1].failed());
        let dp = OneForm::exact(&e("p"));
        let dq = OneForm::exact(&e("q"));
        assert_eq!(maurer_cartan_residual(&bad, &b, 0), dp.wedge(&dq));
    }
}
