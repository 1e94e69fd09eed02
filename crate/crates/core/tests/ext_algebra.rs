//! The Ext algebra of the M11 block: dimensions, presentation and the report.

use std::collections::BTreeSet;

use extalg::ext::{self, ExtContext, Grouping};
use extalg::io::{Report, Status};
use extalg::m11::{self, VerifyOptions};
use extalg::rewrite::relations_minimal;
use extalg::series::RationalSeries;

fn check<'r>(report: &'r Report, name: &str) -> &'r extalg::io::Check {
    report.checks.iter().find(|c| c.name.starts_with(name)).unwrap_or_else(|| panic!("no check named {name}"))
}

#[test]
fn dimension_goldens() {
    let alg = m11::algebra().unwrap();
    let q = alg.quiver();
    let ctx = ExtContext::minimal(&alg, 4).unwrap();
    let v = |s: &str| q.vertex(s).unwrap();
    assert_eq!(ctx.ext_dim(v("M"), v("M"), 3).unwrap(), 3);
    assert_eq!(ctx.ext_dim(v("M"), v("K"), 3).unwrap(), 1);
    assert_eq!(ctx.ext_dim(v("K"), v("K"), 2).unwrap(), 0);
    assert_eq!(ctx.ext_dim(v("M"), v("N"), 2).unwrap(), 0);
    assert_eq!(ctx.ext_dim(v("N"), v("M"), 2).unwrap(), 0);
    assert_eq!(ctx.ext_dim(v("M"), v("N"), 3).unwrap(), 0);
    assert_eq!(ctx.ext_dim(v("M"), v("M"), 0).unwrap(), 1);
}

#[test]
fn dimension_tables_match_rational_series() {
    let alg = m11::algebra().unwrap();
    let q = alg.quiver();
    let cases = [
        ("N", RationalSeries::from_factors(&[&[1, 2, 2, 1]], &[&[1, 0, 0, 0, -1]]).unwrap()),
        ("K", RationalSeries::from_factors(&[&[1, 1]], &[&[1, -1], &[1, 0, 0, 0, -1]]).unwrap()),
        ("M", RationalSeries::from_factors(&[&[1]], &[&[1, -1], &[1, -1]]).unwrap()),
    ];
    for (s, series) in cases {
        let res = extalg::resolution::minimal_resolution(&alg, q.vertex(s).unwrap(), 20).unwrap();
        let got: Vec<i64> = res.summand_counts(20).unwrap().into_iter().map(|c| c as i64).collect();
        assert_eq!(got, series.expand(20), "Ext*({s},-)");
    }
    let other = RationalSeries::from_factors(&[&[1]], &[&[1, -1], &[1, 0, 0, 0, -1]]).unwrap();
    assert_ne!(other.expand(20), RationalSeries::from_factors(&[&[1]], &[&[1, -1], &[1, -1]]).unwrap().expand(20));
}

#[test]
fn generators_and_relations_are_recovered() {
    let alg = m11::algebra().unwrap();
    let q = alg.quiver();
    let ctx = ExtContext::minimal(&alg, 12).unwrap();
    let gens = ext::minimal_generators(&ctx, 12).unwrap();
    let mut sigs: Vec<(usize, &str, &str)> = gens.iter().map(|g| (g.degree, q.vertex_label(g.source), q.vertex_label(g.target))).collect();
    sigs.sort();
    let mut want: Vec<(usize, &str, &str)> = m11::EXT_GENERATORS.iter().map(|&(_, s, t, d)| (d, s, t)).collect();
    want.sort();
    assert_eq!(sigs, want);

    let names: Vec<String> = gens
        .iter()
        .map(|g| {
            let found = m11::EXT_GENERATORS.iter().find(|&&(_, s, t, d)| q.vertex(s).unwrap() == g.source && q.vertex(t).unwrap() == g.target && d == g.degree);
            found.unwrap().0.to_string()
        })
        .collect();
    let pres = ext::find_relations(&ctx, &names, &gens, &m11::EXT_ORDER, 12).unwrap();
    let found: BTreeSet<String> = pres.format_relations().into_iter().collect();
    let stated = m11::ext_system().unwrap();
    let stated: BTreeSet<String> = stated.rules().iter().map(|r| r.format(stated.quiver())).collect();
    assert_eq!(found.len(), 14);
    assert_eq!(found, stated);
    assert!(ext::relations_hold(&ctx, &pres).unwrap().iter().all(|&b| b));
}

#[test]
fn stated_relations_are_a_minimal_groebner_basis() {
    let sys = m11::ext_system().unwrap();
    assert!(sys.is_groebner(None).unwrap());
    let min = relations_minimal(sys.quiver(), sys.field(), sys.order(), sys.rules()).unwrap();
    assert!(min.minimal, "{:?}", min.redundant);
}

#[test]
fn s_polynomial_exceptions_include_one_unlisted_overlap() {
    let sys = m11::ext_system().unwrap();
    let computed = m11::s_polynomial_exceptions(&sys, 5);
    let listed: BTreeSet<String> = m11::S_POLYNOMIAL_EXCEPTIONS.iter().map(|s| s.to_string()).collect();
    assert!(computed.is_superset(&listed));
    let extra: Vec<&String> = computed.difference(&listed).collect();
    assert_eq!(extra, ["epsilon*alpha*epsilon*phi"]);
}

#[test]
fn presentation_counts_match_resolutions() {
    let alg = m11::algebra().unwrap();
    let sys = m11::ext_system().unwrap();
    for v in 0..alg.vertex_count() {
        let res = extalg::resolution::minimal_resolution(&alg, v, 20).unwrap();
        let from_pres = ext::hilbert_from_presentation(&sys, Grouping::Source(v), 20, None).unwrap();
        assert_eq!(from_pres, res.summand_counts(20).unwrap());
    }
}

#[test]
fn full_report_passes_with_two_flags() {
    let report = m11::verify_m11(12);
    let failed: Vec<&str> = report.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(report.count(Status::Flag), 2);
    assert_eq!(report.count(Status::Skipped), 0);
    assert_eq!(check(&report, "alternative stated series").status, Status::Flag);
    let spoly = check(&report, "nonzero S-polynomials");
    assert_eq!(spoly.status, Status::Flag);
    assert!(spoly.details.contains("epsilon*alpha*epsilon*phi"));
    assert_eq!(check(&report, "delta*beta*gamma != beta*gamma*delta").status, Status::Pass);
    assert_eq!(check(&report, "minimal relations of Ext*(K,K)").status, Status::Pass);
    assert_eq!(check(&report, "degrees of minimal generators of Ext*(K,K)").computed, "3,4,5");
    let pres = report.presentation.as_ref().unwrap();
    assert_eq!(pres.generators.len(), 8);
    assert_eq!(pres.relations.len(), 14);
    assert_eq!(report.ext_dims.len(), 9 * 21);
}

#[test]
fn report_is_deterministic() {
    let a = m11::verify_m11(12).to_json();
    let b = m11::verify_m11(12).to_json();
    assert_eq!(a, b);
    assert_eq!(Report::from_json(&a).unwrap().to_json(), a);
}

#[test]
fn small_bound_skips_the_subring_check() {
    let report = m11::verify_m11(6);
    let skipped: Vec<&extalg::io::Check> = report.checks.iter().filter(|c| c.status == Status::Skipped).collect();
    assert_eq!(skipped.len(), 1);
    assert!(skipped[0].details.contains("bound 6 < 10"));
    assert_eq!(report.count(Status::Fail), 0);
    assert_eq!(check(&report, "Ext generators through degree 6").status, Status::Pass);
}

#[test]
fn omitting_a_relation_fails_with_witnesses() {
    let report = m11::verify_m11_with(&VerifyOptions { bound: 12, omit_ext_relations: vec![4] });
    assert!(!report.passed());
    let relations = check(&report, "Ext relations through degree 12");
    assert_eq!(relations.status, Status::Fail);
    assert!(relations.details.contains("not stated: [phi^2 = 0]"), "{}", relations.details);
    assert_eq!(check(&report, "stated Ext relations form a Gröbner basis").status, Status::Fail);
    assert_eq!(check(&report, "nonzero S-polynomials").status, Status::Fail);
    assert_eq!(check(&report, "standard monomials of the presentation ending at N").status, Status::Fail);
}

#[test]
fn lift_composites_match_stated_matrices() {
    let alg = m11::algebra().unwrap();
    let checks = m11::ext_relation_proof_checks(&alg).unwrap();
    assert_eq!(checks.len(), 10);
    for c in checks {
        assert_eq!(c.status, Status::Pass, "{}: {} vs {}", c.name, c.expected, c.computed);
    }
}
