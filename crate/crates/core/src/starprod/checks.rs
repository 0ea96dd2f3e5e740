use super::product::StarProduct;
use super::series::HbarSeries;
use crate::poissongeo::PoissonStructure;
use crate::report::{CheckReport, Certified};
use crate::symexpr::RatFunc;

/// `(f ⋆ g) ⋆ h = f ⋆ (g ⋆ h)` through `h^N` on every sample triple.
pub fn check_associativity(sp: &StarProduct, samples: &[(RatFunc, RatFunc, RatFunc)]) -> CheckReport {
    let name = "associativity";
    if samples.is_empty() {
        return CheckReport::unverified(name, "no samples supplied");
    }
    let n = sp.order();
    let mut worst: Option<(usize, String)> = None;
    for (f, g, h) in samples {
        let (f, g, h) = (HbarSeries::exact(f.clone(), n), HbarSeries::exact(g.clone(), n), HbarSeries::exact(h.clone(), n));
        let res = assoc_residual(sp, &f, &g, &h);
        match res {
            Err(e) => return CheckReport::fail(name, e.to_string()),
            Ok(None) => {}
            Ok(Some((k, c))) => {
                if worst.as_ref().is_none_or(|(w, _)| k < *w) {
                    let w = format!("h^{k}: {c} at (f, g, h) = ({}, {}, {})", f.leading(), g.leading(), h.leading());
                    worst = Some((k, w));
                }
            }
        }
    }
    let report = match worst {
        None => CheckReport::pass(name, Certified::Order(n)),
        Some((k, w)) => CheckReport::fail_at(name, k, w),
    };
    report
        .with_conventions(sp.conventions())
        .with_note(format!("{} sample triples", samples.len()))
}

fn assoc_residual(
    sp: &StarProduct,
    f: &HbarSeries,
    g: &HbarSeries,
    h: &HbarSeries,
) -> crate::Result<Option<(usize, RatFunc)>> {
    let left = sp.multiply(&sp.multiply(f, g)?, h)?;
    let right = sp.multiply(f, &sp.multiply(g, h)?)?;
    left.first_difference(&right)
}

/// `P_1(f, g) - P_1(g, f) = {f, g}` on every sample pair.
pub fn check_first_order(sp: &StarProduct, pi: &PoissonStructure, samples: &[(RatFunc, RatFunc)]) -> CheckReport {
    let name = "first_order";
    if let Err(e) = sp.vars().ensure_same(pi.vars()) {
        return CheckReport::fail(name, e.to_string());
    }
    if samples.is_empty() {
        return CheckReport::unverified(name, "no samples supplied");
    }
    for (f, g) in samples {
        let lhs = sp.bidiff(1, f, g).and_then(|a| sp.bidiff(1, g, f).map(|b| &a - &b));
        match lhs {
            Err(e) => return CheckReport::fail(name, e.to_string()),
            Ok(l) => {
                let r = pi.bracket(f, g);
                if l != r {
                    return CheckReport::fail_at(name, 1, format!("P_1(f,g) - P_1(g,f) - {{f,g}} = {} at (f, g) = ({f}, {g})", &l - &r))
                        .with_conventions(sp.conventions());
                }
            }
        }
    }
    CheckReport::pass(name, Certified::Exact)
        .with_conventions(sp.conventions())
        .with_note(format!("{} sample pairs", samples.len()))
}
