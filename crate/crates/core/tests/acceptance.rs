//! Acceptance criteria, one printed line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use momenta::hscalar::HScalar;
use momenta::liebialg::{Cobracket, LieAlgebra, LieBialgebra};
use momenta::momentum::{
    check_bracket_representation, check_classical_mm, check_eq_br, check_equivariance, check_hopf_action,
    check_infinitesimal_mm, check_noether, higher_action_apply, maurer_cartan_residual, semiclassical_limit,
    QuantumActionData,
};
use momenta::poissongeo::{check_poisson_action, homomorphism_residual, OneForm, PoissonStructure, VectorField};
use momenta::quantumgroup::{
    check_coassociativity, check_square_zero, make_gutt_star, DeformedCoproduct, Presentation, UTensor,
};
use momenta::report::Certified;
use momenta::sample::Sampler;
use momenta::starprod::{check_associativity, check_first_order, BidiffOperator, BidiffTerm, HbarSeries, StarProduct};
use momenta::symexpr::{int, parse_expr, rat, RatFunc, Vars};

type Outcome = (bool, String);

fn plane() -> (Vars, PoissonStructure) {
    let v = Vars::new(&["q", "p"]).unwrap();
    let e = |s: &str| parse_expr(s, &v).unwrap();
    let pi = PoissonStructure::new(&v, vec![vec![e("0"), e("1")], vec![e("-1"), e("0")]]).unwrap();
    (v, pi)
}

fn so3() -> (Vars, PoissonStructure, LieAlgebra) {
    let v = Vars::new(&["x1", "x2", "x3"]).unwrap();
    let e = |s: &str| parse_expr(s, &v).unwrap();
    let pi = PoissonStructure::new(
        &v,
        vec![vec![e("0"), e("x3"), e("-x2")], vec![e("-x3"), e("0"), e("x1")], vec![e("x2"), e("-x1"), e("0")]],
    )
    .unwrap();
    let ab = LieAlgebra::abelian(&["e1", "e2", "e3"]).unwrap();
    let p = |s: &str| ab.parse_element(s).unwrap();
    let g = LieAlgebra::new(&["e1", "e2", "e3"], [((0, 1), p("e3")), ((1, 2), p("e1")), ((2, 0), p("e2"))]).unwrap();
    (v, pi, g)
}

fn moyal(v: &Vars, order: usize) -> StarProduct {
    StarProduct::moyal(v, vec![vec![int(0), int(1)], vec![int(-1), int(0)]], order).unwrap()
}

fn r2_data(a: &str, b: &str, order: usize) -> (Vars, QuantumActionData) {
    let (v, _) = plane();
    let sp = moyal(&v, order);
    let a = HbarSeries::parse(a, &v, order).unwrap();
    let b = HbarSeries::parse(b, &v, order).unwrap();
    let ainv = sp.inverse(&a).unwrap();
    let qa = QuantumActionData::from_pairs(sp, &["xi", "eta"], vec![(a.clone(), b), (a, ainv)]).unwrap();
    (v, qa)
}

fn presentation(rel: &str) -> Arc<Presentation> {
    let basis = vec!["xi".to_string(), "eta".to_string()];
    let r = Presentation::parse_normal(&basis, rel).unwrap();
    Presentation::new(&basis, [((0, 1), r)], None).unwrap()
}

fn deformed_coproduct(p: &Arc<Presentation>) -> DeformedCoproduct {
    let images = vec![
        UTensor::parse(p, "xi(x)1 - h*eta(x)xi + 1(x)xi").unwrap(),
        UTensor::parse(p, "eta(x)1 - h*eta(x)eta + 1(x)eta").unwrap(),
    ];
    DeformedCoproduct::new(p, images, vec![HScalar::zero(), HScalar::zero()]).unwrap()
}

fn sample_functions(v: &Vars, seed: u64) -> Vec<RatFunc> {
    let mut fs = vec![parse_expr("q", v).unwrap(), parse_expr("p^2", v).unwrap()];
    fs.extend(Sampler::new(seed).functions(v, 3, 2));
    fs
}

fn criterion_1() -> Outcome {
    let (v, qa) = r2_data("1 + q", "-p", 4);
    let fs = sample_functions(&v, 11);
    let (a, b) = &qa.pairs(0)[0];
    let br = check_eq_br(qa.star(), a, b, &fs);
    let stated = check_bracket_representation(&qa, &presentation("3*eta - h*eta^2"), &fs);
    let realized = check_bracket_representation(&qa, &presentation("-eta + h*eta^2"), &fs);
    let fitted = stated.notes.iter().find(|n| n.contains("relation realized by the action")).cloned();
    let eq_ok = br.passed() && br.certified == Certified::Order(2);
    if stated.passed() {
        return (eq_ok && stated.certified == Certified::Order(2), format!("eq_br {}, stated relation certified", br.headline()));
    }
    let ok = eq_ok
        && stated.failing_order.is_some()
        && fitted.as_deref().is_some_and(|n| n.contains("h*eta^2 - eta"))
        && realized.passed()
        && realized.certified == Certified::Order(2);
    (
        ok,
        format!(
            "eq_br certified through h^2 on {} samples ({}); stated [xi,eta] = 3 eta - h eta^2 leaves a residual at h^{}; \
             convention analysis: {}; realized relation certified through h^2",
            fs.len(),
            br.conventions.join("; "),
            stated.failing_order.unwrap_or(0),
            fitted.unwrap_or_else(|| "none".into())
        ),
    )
}

fn criterion_2() -> Outcome {
    let (v, qa) = r2_data("1 + q", "q^2", 4);
    let (_, pi) = plane();
    let e = |s: &str| parse_expr(s, &v).unwrap();
    let mut commute = true;
    for f in sample_functions(&v, 12) {
        let c = qa.commutator_action(0, 1, &HbarSeries::exact(f, 4)).unwrap();
        commute &= c.is_zero() && c.known_order() == 2;
    }
    let p = presentation("0");
    let pairs = vec![(e("q"), e("p")), (e("p^2"), e("q*p + q"))];
    let hopf = check_hopf_action(&qa, &deformed_coproduct(&p), &pairs);
    let fields = semiclassical_limit(&qa, &pi);
    let want_xi = VectorField::new(&v, vec![e("0"), e("(1+q)*2*q")]).unwrap();
    let want_eta = VectorField::new(&v, vec![e("0"), e("-1/(1+q)")]).unwrap();
    let limit = fields[0] == want_xi && fields[1] == want_eta;
    (
        commute && hopf.passed() && limit,
        format!("[Phi(xi),Phi(eta)]f = 0 through h^2; {}; limits {} and {}", hopf.headline(), fields[0], fields[1]),
    )
}

fn criterion_3() -> Outcome {
    let p = presentation("3*eta - h*eta^2");
    let delta = deformed_coproduct(&p).semiclassical_cobracket().unwrap();
    let want = Cobracket::new(2, [((0, 1, 0), HScalar::constant(rat(-1, 2)))]).unwrap();
    let same = (0..2).all(|i| (0..2).all(|j| (0..2).all(|k| delta.component(i, j, k) == want.component(i, j, k))));
    let ab = LieAlgebra::abelian(&["xi", "eta"]).unwrap();
    let g = LieAlgebra::new(&["xi", "eta"], [((0, 1), ab.parse_element("3*eta").unwrap())]).unwrap();
    let b = LieBialgebra::new(g.clone(), delta.clone()).unwrap();
    let (c, cj) = (b.check_cocycle(), b.check_cojacobi());
    (
        same && delta.image(1).iter().flatten().all(HScalar::is_zero) && c.passed() && cj.passed(),
        format!("delta(xi) = {} (= -1/2*eta∧xi), delta(eta) = {}; {}; {}", delta.fmt_image(&g, 0), delta.fmt_image(&g, 1), c.headline(), cj.headline()),
    )
}

fn criterion_4() -> Outcome {
    let stated = presentation("3*eta - h*eta^2");
    let on_generators = check_coassociativity(&deformed_coproduct(&stated), 1);
    let commutative = presentation("0");
    let full = check_coassociativity(&deformed_coproduct(&commutative), 3);
    let realized = check_coassociativity(&deformed_coproduct(&presentation("-eta + h*eta^2")), 3);
    let square = check_square_zero(&deformed_coproduct(&stated), 3);
    let broken = DeformedCoproduct::new(
        &stated,
        vec![
            UTensor::parse(&stated, "xi(x)1 + 1(x)xi - h*xi(x)eta").unwrap(),
            UTensor::parse(&stated, "eta(x)1 + 1(x)eta").unwrap(),
        ],
        vec![HScalar::zero(), HScalar::zero()],
    )
    .unwrap();
    let bc = check_coassociativity(&broken, 1);
    let bs = check_square_zero(&broken, 3);
    let witness = Some("xi: h^2*xi(x)eta(x)eta");
    let ok = on_generators.passed()
        && on_generators.certified == Certified::Exact
        && full.passed()
        && realized.passed()
        && square.passed()
        && bc.failing_order == Some(2)
        && bs.failing_order == Some(2)
        && bc.witness.as_deref() == witness
        && bs.witness.as_deref() == witness;
    (
        ok,
        format!(
            "Delta_h coassociative exactly on generators, and on PBW degree <= 3 over the commutative and realized relations; \
             square zero on words <= 3; broken: {} / {}",
            bc.headline(),
            bs.headline()
        ),
    )
}

fn criterion_5() -> Outcome {
    let (v, pi, g) = so3();
    let e = |s: &str| parse_expr(s, &v).unwrap();
    let j = vec![e("x1"), e("x2"), e("x3")];
    let names: Vec<String> = g.basis().to_vec();
    let phi: Vec<VectorField> = j.iter().map(|x| pi.hamiltonian_vf(x)).collect();
    let checks = [
        pi.check_jacobi(),
        check_classical_mm(&j, &phi, &names, &pi),
        check_equivariance(&j, &g, &pi),
        check_noether(&j, &names, &e("x1^2 + x2^2 + x3^2"), &pi),
    ];
    let (pv, ppi) = plane();
    let translations = LieAlgebra::abelian(&["a", "b"]).unwrap();
    let qp = vec![parse_expr("q", &pv).unwrap(), parse_expr("p", &pv).unwrap()];
    let bad = check_equivariance(&qp, &translations, &ppi);
    let ok = checks.iter().all(|c| c.passed()) && bad.failed() && bad.witness.as_deref().is_some_and(|w| w.starts_with("{q, p} = 1"));
    (ok, format!("so(3)* suite passes (4 checks); translations: {}", bad.headline()))
}

fn criterion_6() -> Outcome {
    let (v, pi) = plane();
    let sp = moyal(&v, 5);
    let triples = Sampler::new(6).triples(&v, 4, 3);
    let assoc = check_associativity(&sp, &triples);
    let first = check_first_order(&sp, &pi, &Sampler::new(7).pairs(&v, 4, 3));
    let half = RatFunc::constant(&v, rat(1, 2));
    let p1 = BidiffOperator {
        terms: vec![
            BidiffTerm { coeff: half.clone(), left: vec![1, 0], right: vec![0, 1] },
            BidiffTerm { coeff: -half, left: vec![0, 1], right: vec![1, 0] },
        ],
    };
    let single = StarProduct::explicit(&v, vec![p1], 5).unwrap();
    let fam_triples = vec![(parse_expr("q^2", &v).unwrap(), parse_expr("p", &v).unwrap(), parse_expr("p", &v).unwrap())];
    let fam = check_associativity(&single, &fam_triples);
    let ok = assoc.passed() && assoc.certified == Certified::Order(5) && first.passed() && fam.failing_order == Some(2) && fam.witness.is_some();
    (ok, format!("Moyal {} and {}; P1-only family: {}", assoc.headline(), first.headline(), fam.headline()))
}

fn criterion_7() -> Outcome {
    let (v, pi, g) = so3();
    let sp = make_gutt_star(&g, &v, 3).unwrap();
    let s = |t: &str| HbarSeries::parse(t, &v, 3).unwrap();
    let c = sp.commutator(&s("x1"), &s("x2")).unwrap();
    let comm = c == s("h*x3");
    let first = check_first_order(&sp, &pi, &Sampler::new(8).pairs(&v, 4, 2));
    let assoc = check_associativity(&sp, &Sampler::new(9).triples(&v, 3, 2));
    (
        comm && first.passed() && assoc.passed() && assoc.certified == Certified::Order(3),
        format!("x1*x2 - x2*x1 = {c}; {}; {}", first.headline(), assoc.headline()),
    )
}

fn criterion_8() -> Outcome {
    let (v, pi, g) = so3();
    let e = |s: &str| parse_expr(s, &v).unwrap();
    let b = LieBialgebra::new(g, Cobracket::zero(3)).unwrap();
    let alpha: Vec<OneForm> = ["x1", "x2", "x3"].iter().map(|x| OneForm::exact(&e(x))).collect();
    let reps = check_infinitesimal_mm(&alpha, &b, &pi);
    let both = reps[0].passed() && reps[1].passed();
    let (pv, ppi) = plane();
    let pe = |s: &str| parse_expr(s, &pv).unwrap();
    let one = LieBialgebra::new(LieAlgebra::abelian(&["xi"]).unwrap(), Cobracket::zero(1)).unwrap();
    let pdq = vec![OneForm::new(&pv, vec![pe("p"), pe("0")]).unwrap()];
    let mc = check_infinitesimal_mm(&pdq, &one, &ppi);
    let dp_dq = OneForm::exact(&pe("p")).wedge(&OneForm::exact(&pe("q")));
    let witness_ok = mc[1].failed() && maurer_cartan_residual(&pdq, &one, 0) == dp_dq;
    let mut koszul = true;
    let pairs = Sampler::new(10).pairs(&v, 20, 3);
    for (f, h) in &pairs {
        koszul &= pi.koszul_bracket(&OneForm::exact(f), &OneForm::exact(h)) == OneForm::exact(&pi.bracket(f, h));
    }
    (
        both && witness_ok && koszul,
        format!(
            "alpha = dJ on so(3)*: {} / {}; p dq: {} (residual equals dp^dq); [df,dg] = d{{f,g}} on {} samples",
            reps[0].headline(),
            reps[1].headline(),
            mc[1].headline(),
            pairs.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let (v, pi) = plane();
    let e = |s: &str| parse_expr(s, &v).unwrap();
    let ab = LieAlgebra::abelian(&["xi", "eta"]).unwrap();
    let g = LieAlgebra::new(&["xi", "eta"], [((0, 1), ab.parse_element("-eta").unwrap())]).unwrap();
    let b = LieBialgebra::new(g.clone(), Cobracket::new(2, [((0, 1, 0), HScalar::one())]).unwrap()).unwrap();
    let phi = vec![
        VectorField::new(&v, vec![e("q"), e("0")]).unwrap(),
        VectorField::new(&v, vec![e("0"), e("1/q")]).unwrap(),
    ];
    let hom = homomorphism_residual(&phi, &g);
    let r = check_poisson_action(&phi, &b, &pi);
    (r.passed() && hom.is_none(), format!("{}; homomorphism residual: {}", r.headline(), hom.unwrap_or_else(|| "none".into())))
}

fn criterion_10() -> Outcome {
    let (v, qa) = r2_data("1 + q", "q^2", 4);
    let p = HbarSeries::exact(parse_expr("p", &v).unwrap(), 4);
    let r = higher_action_apply(&qa, &[0, 1], &[p.clone(), p]).unwrap();
    let ok = r == HbarSeries::exact(parse_expr("-2*q", &v).unwrap(), 2) && r.known_order() == 2;
    (ok, format!("Phi(xi(x)eta)[p, p] = {r}, known through h^{} = N - 2", r.known_order()))
}

fn corpus() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == "json")).collect();
    files.sort();
    files
}

fn verify(path: &std::path::Path, format: &str) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_momenta"))
        .args(["verify", path.to_str().unwrap(), "--format", format])
        .env_remove("MOMENTA_SEED")
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_11() -> Outcome {
    let mut ok = true;
    let mut summary = Vec::new();
    for path in corpus() {
        let name = path.file_stem().unwrap().to_string_lossy().to_string();
        let expected = if name == "r2_nonabelian" { 1 } else { 0 };
        for format in ["text", "json"] {
            let (c1, o1) = verify(&path, format);
            let (c2, o2) = verify(&path, format);
            ok &= c1 == expected && c2 == c1 && o1 == o2;
        }
        summary.push(format!("{name}={expected}"));
    }
    let tmp = std::env::temp_dir().join("momenta_acceptance_missing_space.json");
    std::fs::write(&tmp, r#"{"checks": ["jacobi"]}"#).unwrap();
    let (missing, _) = verify(&tmp, "text");
    ok &= missing == 2;
    (ok, format!("byte-identical reruns in both formats; exit codes {}; missing space -> {missing}", summary.join(", ")))
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(usize, fn() -> Outcome)> = vec![
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = Vec::new();
    println!();
    for (n, run) in criteria {
        let (ok, detail) = run();
        println!("criterion {n}: {} - {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
