//! Resolutions of the M11 simples, the explicit complexes and their homotopies.

use extalg::m11::{self, Bicx};
use extalg::module::ModuleMap;
use extalg::resolution::{detect_periodicity, minimal_resolution, verify_resolution, DegreeCheck, Resolution};

const DEGREE: usize = 12;

fn sorted_shape(alg: &extalg::algebra::Algebra, res: &Resolution, n: usize) -> String {
    let q = alg.quiver();
    let mut s: Vec<&str> = res.term(n).unwrap().summands().iter().map(|&v| q.vertex_label(v)).collect();
    s.sort();
    s.concat()
}

#[test]
fn minimal_resolutions_are_certified() {
    let alg = m11::algebra().unwrap();
    for v in 0..3 {
        let res = minimal_resolution(&alg, v, DEGREE).unwrap();
        assert!(!res.is_finite());
        let checks = verify_resolution(&alg, &res);
        assert_eq!(checks.len(), DEGREE + 1);
        for c in &checks {
            assert!(c.ok(), "{} at degree {}", alg.quiver().vertex_label(v), c.degree);
            if c.degree < DEGREE {
                assert_eq!(c.exact, Some(true));
            }
        }
    }
}

#[test]
fn summands_follow_the_stated_patterns() {
    let alg = m11::algebra().unwrap();
    let q = alg.quiver();
    let k = minimal_resolution(&alg, q.vertex("K").unwrap(), DEGREE).unwrap();
    let m = minimal_resolution(&alg, q.vertex("M").unwrap(), DEGREE).unwrap();
    let n = minimal_resolution(&alg, q.vertex("N").unwrap(), DEGREE).unwrap();
    let first: Vec<String> = (0..6).map(|i| sorted_shape(&alg, &m, i)).collect();
    assert_eq!(first, ["M", "KM", "KMM", "KMMM", "KKMMM", "KKMMMM"]);
    let first: Vec<String> = (0..6).map(|i| sorted_shape(&alg, &k, i)).collect();
    assert_eq!(first, ["K", "MN", "MN", "KM", "KMM", "KMMN"]);
    assert_eq!(k.summand_counts(8).unwrap(), [1, 2, 2, 2, 3, 4, 4, 4, 5]);
    let first: Vec<String> = (0..9).map(|i| sorted_shape(&alg, &n, i)).collect();
    assert_eq!(first, ["N", "KN", "KN", "N", "N", "KN", "KN", "N", "N"]);
    assert_eq!(m.summand_counts(DEGREE).unwrap(), (1..=DEGREE + 1).collect::<Vec<_>>());
}

#[test]
fn explicit_complexes_agree_with_minimal_resolutions() {
    let alg = m11::algebra().unwrap();
    let q = alg.quiver();
    for kind in [Bicx::M, Bicx::K] {
        assert!(m11::square_mismatches(&alg, kind, DEGREE as i64).unwrap().is_empty());
        let total = m11::bicomplex_resolution(&alg, kind, DEGREE).unwrap();
        assert!(verify_resolution(&alg, &total).iter().all(DegreeCheck::ok), "{kind:?}");
        let minimal = minimal_resolution(&alg, q.vertex(kind.simple()).unwrap(), DEGREE).unwrap();
        for n in 0..=DEGREE {
            assert_eq!(sorted_shape(&alg, &total, n), sorted_shape(&alg, &minimal, n), "{kind:?} degree {n}");
        }
    }
    let n = m11::n_resolution(&alg, DEGREE).unwrap();
    assert!(verify_resolution(&alg, &n).iter().all(DegreeCheck::ok));
}

#[test]
fn n_resolution_is_periodic_with_the_stated_differentials() {
    let alg = m11::algebra().unwrap();
    let n = minimal_resolution(&alg, alg.quiver().vertex("N").unwrap(), DEGREE).unwrap();
    assert_eq!(detect_periodicity(&n, 5).unwrap(), Some(4));
    let explicit = m11::n_resolution(&alg, DEGREE).unwrap();
    let shown: Vec<Vec<Vec<String>>> = explicit.differentials().iter().take(4).map(|d| d.format_entries(&alg)).collect();
    assert_eq!(shown[0], [["e", "f"]]);
    assert_eq!(shown[1], [["b*c", "a"], ["e", "f^2"]]);
    assert_eq!(shown[2], [["a"], ["f"]]);
    assert_eq!(shown[3], [["f^4"]]);
    assert_eq!(detect_periodicity(&explicit, 5).unwrap(), Some(4));
}

#[test]
fn perturbed_differentials_are_rejected() {
    let alg = m11::algebra().unwrap();
    let n = m11::n_resolution(&alg, 6).unwrap();
    let d3 = n.differential(3).unwrap();
    let q = alg.quiver();
    let f = alg.field();
    let swap = |x: &str, y: &str| {
        let e = vec![vec![q.parse_element(f, x).unwrap()], vec![q.parse_element(f, y).unwrap()]];
        ModuleMap::from_entries(&alg, d3.domain().clone(), d3.codomain().clone(), &e).unwrap()
    };
    let not_complex = n.with_differential(3, swap("a", "f^2")).unwrap();
    let checks = verify_resolution(&alg, &not_complex);
    assert!(!checks[3].complex || !checks[4].complex);
    let not_exact = n.with_differential(3, swap("a", "0")).unwrap();
    let checks = verify_resolution(&alg, &not_exact);
    assert!(checks.iter().any(|c| c.exact == Some(false)));
    let d4 = n.differential(4).unwrap();
    let unit = ModuleMap::from_entries(&alg, d4.domain().clone(), d4.codomain().clone(), &[vec![q.parse_element(f, "1_N + f^4").unwrap()]]).unwrap();
    let not_minimal = n.with_differential(4, unit).unwrap();
    assert!(!verify_resolution(&alg, &not_minimal)[4].minimal);
}

#[test]
fn contracting_homotopies_hold_through_degree_eight() {
    let alg = m11::algebra().unwrap();
    for kind in [Bicx::M, Bicx::K] {
        let degrees = m11::check_contracting_homotopy(&alg, kind, 8, None).unwrap();
        assert_eq!(degrees.len(), 9);
        for d in degrees {
            assert!(d.holds, "{kind:?} degree {}: {:?}", d.degree, d.failures);
        }
    }
}

#[test]
fn omitting_a_dashed_homotopy_fails_locally() {
    let alg = m11::algebra().unwrap();
    let degrees = m11::check_contracting_homotopy(&alg, Bicx::K, 8, Some((1, 2))).unwrap();
    let failing: Vec<(usize, Vec<String>)> = degrees.into_iter().filter(|d| !d.holds).map(|d| (d.degree, d.failures)).collect();
    assert_eq!(failing, [(3, vec!["(1,2)".to_string()]), (4, vec!["(2,2)".to_string()])]);
}

#[test]
fn homotopy_identities_hold() {
    let alg = m11::algebra().unwrap();
    let all = [m11::table_identities(&alg).unwrap(), m11::spot_values(&alg).unwrap(), m11::homotopy_identities(&alg).unwrap()].concat();
    assert!(all.len() >= 30);
    for id in all {
        assert!(id.holds, "{}: {}", id.name, id.detail);
    }
}
