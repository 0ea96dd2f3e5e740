use crate::error::{Error, Result};
use crate::liebialg::LieBialgebra;
use crate::momentum::{
    check_bracket_representation, check_classical_mm, check_eq_br, check_equivariance, check_hopf_action,
    check_infinitesimal_mm, check_noether, check_qmm_equivariance, higher_action_apply, semiclassical_limit,
};
use crate::poissongeo::{check_canonical_action, check_poisson_action, OneForm, VectorField};
use crate::quantumgroup::{check_coassociativity, check_coproduct_welldefined, check_counit_antipode, check_square_zero};
use crate::report::{CheckReport, Certified};
use crate::starprod::{check_associativity, check_first_order, HbarSeries};
use crate::symexpr::parse_expr;

use super::context::Context;
use super::schema::ExpectSpec;

/// Every known check with the scenario sections it needs.
pub const CHECKS: &[(&str, &[&str])] = &[
    ("associativity", &["star"]),
    ("bracket_representation", &["quantum_action"]),
    ("canonical_action", &["action", "lie", "poisson"]),
    ("classical_mm", &["momentum", "action", "poisson"]),
    ("coassociativity", &["quantum.coproduct"]),
    ("cocycle", &["lie"]),
    ("cojacobi", &["lie"]),
    ("coproduct_welldefined", &["quantum.coproduct"]),
    ("counit_antipode", &["quantum.coproduct"]),
    ("eq_br", &["quantum_action"]),
    ("equivariance", &["momentum", "poisson"]),
    ("first_order", &["star", "poisson"]),
    ("higher_action", &["quantum_action", "expect.higher_actions"]),
    ("hopf_action", &["quantum_action", "quantum.coproduct"]),
    ("infinitesimal_mm", &["forms", "poisson"]),
    ("jacobi", &["poisson"]),
    ("jacobi_lie", &["lie"]),
    ("koszul", &["poisson"]),
    ("noether", &["momentum", "hamiltonians", "poisson"]),
    ("poisson_action", &["action", "lie", "poisson"]),
    ("qmm_equivariance", &["quantum_action"]),
    ("quantum_action_values", &["quantum_action", "expect.actions"]),
    ("semiclassical_cobracket", &["quantum.coproduct", "lie"]),
    ("semiclassical_coherence", &["quantum_action", "quantum.coproduct", "poisson"]),
    ("semiclassical_limit", &["quantum_action", "poisson", "expect.semiclassical_limit"]),
    ("square_zero", &["quantum.coproduct"]),
    ("star_commutator", &["star", "expect.star_commutators"]),
];

pub(crate) fn requirements(name: &str) -> Result<&'static [&'static str]> {
    CHECKS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, r)| *r)
        .ok_or_else(|| Error::UnknownCheck(name.into()))
}

pub(crate) fn has_section(ctx: &Context, expect: &ExpectSpec, section: &str) -> bool {
    match section {
        "star" => ctx.star.is_some(),
        "poisson" => ctx.poisson.is_some(),
        "lie" => ctx.lie.is_some(),
        "quantum.coproduct" => ctx.coproduct.is_some(),
        "quantum_action" => ctx.qmm.is_some(),
        "action" => ctx.action.is_some(),
        "forms" => ctx.forms.is_some(),
        "momentum" => ctx.momentum.is_some(),
        "hamiltonians" => ctx.hamiltonians.is_some(),
        "expect.actions" => !expect.actions.is_empty(),
        "expect.higher_actions" => !expect.higher_actions.is_empty(),
        "expect.star_commutators" => !expect.star_commutators.is_empty(),
        "expect.semiclassical_limit" => !expect.semiclassical_limit.is_empty(),
        _ => false,
    }
}

fn error_report(name: &str, e: Error) -> CheckReport {
    CheckReport::fail(name, format!("error: {e}"))
}

/// Run one check; sections are assumed present. Errors are limited to
/// malformed expectation strings.
pub(crate) fn run(ctx: &Context, expect: &ExpectSpec, name: &str) -> Result<Vec<CheckReport>> {
    let pi = || ctx.poisson.as_ref().expect("poisson");
    let lie = || ctx.lie.as_ref().expect("lie");
    let names = || ctx.lie.as_ref().map(|l| l.algebra().basis().to_vec()).unwrap_or_default();
    let star = || ctx.star.as_ref().expect("star");
    let qmm = || ctx.qmm.as_ref().expect("quantum_action");
    let delta = || ctx.coproduct.as_ref().expect("quantum.coproduct");
    let pres = || ctx.pres.as_ref().expect("presentation");
    let s = &ctx.samples;
    let one = |r: CheckReport| Ok(vec![r]);
    match name {
        "jacobi" => one(pi().check_jacobi()),
        "jacobi_lie" => one(lie().algebra().check_jacobi()),
        "cocycle" => one(lie().check_cocycle()),
        "cojacobi" => one(lie().check_cojacobi()),
        "associativity" => one(check_associativity(star(), &s.triples)),
        "first_order" => one(check_first_order(star(), pi(), &s.pairs)),
        "koszul" => one(koszul(ctx)),
        "canonical_action" => one(check_canonical_action(ctx.action.as_ref().expect("action"), lie().algebra(), pi())),
        "poisson_action" => one(check_poisson_action(ctx.action.as_ref().expect("action"), lie(), pi())),
        "classical_mm" => {
            one(check_classical_mm(ctx.momentum.as_ref().expect("momentum"), ctx.action.as_ref().expect("action"), &names(), pi()))
        }
        "equivariance" => match &ctx.lie {
            Some(l) => one(check_equivariance(ctx.momentum.as_ref().expect("momentum"), l.algebra(), pi())),
            None => Err(Error::MissingSection("lie".into())),
        },
        "noether" => {
            let j = ctx.momentum.as_ref().expect("momentum");
            for h in ctx.hamiltonians.as_ref().expect("hamiltonians") {
                let r = check_noether(j, &names(), h, pi());
                if !r.passed() {
                    return one(r);
                }
            }
            one(CheckReport::pass("noether", Certified::Exact))
        }
        "infinitesimal_mm" => match &ctx.lie {
            Some(l) => Ok(check_infinitesimal_mm(ctx.forms.as_ref().expect("forms"), l, pi())),
            None => Err(Error::MissingSection("lie".into())),
        },
        "coassociativity" => one(check_coassociativity(delta(), ctx.max_degree)),
        "square_zero" => one(check_square_zero(delta(), ctx.max_length)),
        "counit_antipode" => Ok(check_counit_antipode(delta(), ctx.max_degree)),
        "coproduct_welldefined" => one(check_coproduct_welldefined(delta())),
        "semiclassical_cobracket" => one(semiclassical_cobracket(ctx)),
        "hopf_action" => one(check_hopf_action(qmm(), delta(), &s.pairs)),
        "bracket_representation" => one(check_bracket_representation(qmm(), pres(), &s.functions)),
        "qmm_equivariance" => one(check_qmm_equivariance(qmm(), pres(), &s.functions)),
        "eq_br" => {
            let q = qmm();
            match q.pairs(0) {
                [(a, b)] => one(check_eq_br(q.star(), a, b, &s.functions)),
                _ => one(CheckReport::fail("eq_br", "the first generator must carry exactly one (a, b) pair")),
            }
        }
        "semiclassical_limit" => one(semiclassical(ctx, expect)?),
        "semiclassical_coherence" => one(coherence(ctx)),
        "quantum_action_values" => one(action_values(ctx, expect)?),
        "higher_action" => one(higher_values(ctx, expect)?),
        "star_commutator" => one(commutator_values(ctx, expect)?),
        other => Err(Error::UnknownCheck(other.into())),
    }
}

fn koszul(ctx: &Context) -> CheckReport {
    let pi = ctx.poisson.as_ref().expect("poisson");
    for (f, g) in &ctx.samples.koszul {
        let lhs = pi.koszul_bracket(&OneForm::exact(f), &OneForm::exact(g));
        let rhs = OneForm::exact(&pi.bracket(f, g));
        if lhs != rhs {
            return CheckReport::fail("koszul", format!("[df,dg]_pi - d{{f,g}} at (f, g) = ({f}, {g}): {}", lhs.sub(&rhs)));
        }
    }
    CheckReport::pass("koszul", Certified::Exact).with_note(format!("{} sample pairs", ctx.samples.koszul.len()))
}

fn semiclassical_cobracket(ctx: &Context) -> CheckReport {
    let name = "semiclassical_cobracket";
    let b = ctx.lie.as_ref().expect("lie");
    let d = ctx.coproduct.as_ref().expect("quantum.coproduct");
    let got = match d.semiclassical_cobracket() {
        Ok(c) => c,
        Err(e) => return error_report(name, e),
    };
    let want = b.cobracket();
    let g = b.algebra();
    for i in 0..g.dim() {
        let (x, y) = (got.fmt_image(g, i), want.fmt_image(g, i));
        if x != y {
            return CheckReport::fail(name, format!("delta({}) from the coproduct is {x}, declared {y}", g.name(i)));
        }
    }
    CheckReport::pass(name, Certified::Exact).with_convention("delta = (Delta_1 - tau Delta_1)/2")
}

fn coherence(ctx: &Context) -> CheckReport {
    let name = "semiclassical_coherence";
    let qmm = ctx.qmm.as_ref().expect("quantum_action");
    let pi = ctx.poisson.as_ref().expect("poisson");
    let d = ctx.coproduct.as_ref().expect("quantum.coproduct");
    let delta = match d.semiclassical_cobracket() {
        Ok(c) => c,
        Err(e) => return error_report(name, e),
    };
    let g = match &ctx.lie {
        Some(l) => l.algebra().classical(),
        None => return CheckReport::fail(name, "no Lie algebra declared"),
    };
    let b = match LieBialgebra::new(g, delta) {
        Ok(b) => b,
        Err(e) => return error_report(name, e),
    };
    check_poisson_action(&semiclassical_limit(qmm, pi), &b, pi)
        .renamed(name)
        .with_note("order-zero action against the semiclassical cobracket")
}

fn generator(ctx: &Context, name: &str) -> Result<usize> {
    let qmm = ctx.qmm.as_ref().expect("quantum_action");
    qmm.names()
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::Invalid(format!("unknown generator `{name}`")).in_section("expect"))
}

fn series(text: &str, ctx: &Context, order: usize) -> Result<HbarSeries> {
    HbarSeries::parse(text, &ctx.vars, order).map_err(|e| e.in_section("expect"))
}

fn compare(name: &str, label: String, got: Result<HbarSeries>, want: &str, ctx: &Context) -> Result<std::result::Result<usize, CheckReport>> {
    let got = match got {
        Ok(g) => g,
        Err(e) => return Ok(Err(error_report(name, e))),
    };
    let want = series(want, ctx, got.known_order())?;
    match got.first_difference(&want)? {
        None => Ok(Ok(got.known_order())),
        Some((k, r)) => Ok(Err(CheckReport::fail_at(name, k, format!("{label}: h^{k}: {r}")))),
    }
}

fn action_values(ctx: &Context, expect: &ExpectSpec) -> Result<CheckReport> {
    let name = "quantum_action_values";
    let qmm = ctx.qmm.as_ref().expect("quantum_action");
    let mut orders = Vec::new();
    for v in &expect.actions {
        let g = generator(ctx, &v.generator)?;
        let f = series(&v.input, ctx, ctx.order)?;
        match compare(name, format!("Phi({})[{}]", v.generator, v.input), qmm.apply(g, &f), &v.equals, ctx)? {
            Ok(k) => orders.push(k),
            Err(r) => return Ok(r),
        }
    }
    Ok(CheckReport::pass(name, Certified::Order(orders.into_iter().min().unwrap_or(ctx.order))))
}

fn higher_values(ctx: &Context, expect: &ExpectSpec) -> Result<CheckReport> {
    let name = "higher_action";
    let qmm = ctx.qmm.as_ref().expect("quantum_action");
    let mut notes = Vec::new();
    let mut orders = Vec::new();
    for v in &expect.higher_actions {
        let word = v.word.iter().map(|w| generator(ctx, w)).collect::<Result<Vec<_>>>()?;
        let fs = v.inputs.iter().map(|t| series(t, ctx, ctx.order)).collect::<Result<Vec<_>>>()?;
        let got = higher_action_apply(qmm, &word, &fs);
        if let Ok(g) = &got {
            notes.push(format!("{}: known through h^{} = N - {}", v.word.join("(x)"), g.known_order(), word.len()));
        }
        match compare(name, format!("Phi({})[{}]", v.word.join("(x)"), v.inputs.join(", ")), got, &v.equals, ctx)? {
            Ok(k) => orders.push(k),
            Err(r) => return Ok(r),
        }
    }
    let mut r = CheckReport::pass(name, Certified::Order(orders.into_iter().min().unwrap_or(ctx.order)));
    for n in notes {
        r = r.with_note(n);
    }
    Ok(r)
}

fn commutator_values(ctx: &Context, expect: &ExpectSpec) -> Result<CheckReport> {
    let name = "star_commutator";
    let sp = ctx.star.as_ref().expect("star");
    let mut orders = Vec::new();
    for v in &expect.star_commutators {
        let f = series(&v.left, ctx, sp.order())?;
        let g = series(&v.right, ctx, sp.order())?;
        match compare(name, format!("[{}, {}]", v.left, v.right), sp.commutator(&f, &g), &v.equals, ctx)? {
            Ok(k) => orders.push(k),
            Err(r) => return Ok(r),
        }
    }
    Ok(CheckReport::pass(name, Certified::Order(orders.into_iter().min().unwrap_or(sp.order()))).with_conventions(sp.conventions()))
}

fn semiclassical(ctx: &Context, expect: &ExpectSpec) -> Result<CheckReport> {
    let name = "semiclassical_limit";
    let qmm = ctx.qmm.as_ref().expect("quantum_action");
    let fields = semiclassical_limit(qmm, ctx.poisson.as_ref().expect("poisson"));
    for (gen, comps) in &expect.semiclassical_limit {
        let g = generator(ctx, gen)?;
        if comps.len() != ctx.vars.len() {
            return Err(Error::DimensionMismatch { expected: ctx.vars.len(), found: comps.len() }.in_section("expect.semiclassical_limit"));
        }
        let want = comps
            .iter()
            .map(|t| parse_expr(t, &ctx.vars).map_err(|e| e.in_section("expect.semiclassical_limit")))
            .collect::<Result<Vec<_>>>()?;
        let want = VectorField::new(&ctx.vars, want)?;
        if fields[g] != want {
            return Ok(CheckReport::fail(name, format!("Phi({gen}) mod h = {}, expected {want}", fields[g])));
        }
    }
    Ok(CheckReport::pass(name, Certified::Exact).with_convention("Phi(x) mod h = a_0 {b_0, .}"))
}
