//! One line per acceptance criterion, then a single assertion over all of them.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{between, coordinates, random_combination, triples, RandomAlgebra};
use extalg::algebra::Algebra;
use extalg::ext::{self, ExtContext, LiftChoice};
use extalg::io::{Report, Status};
use extalg::m11;

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.ok = false;
            self.notes.push(what.into());
        }
    }
}

/// Every check whose name starts with one of `prefixes` must pass; `flags` must be flagged.
fn from_report(report: &Report, prefixes: &[&str], flags: &[&str]) -> Outcome {
    let mut out = Outcome::new();
    for p in prefixes {
        let matching: Vec<_> = report.checks.iter().filter(|c| c.name.starts_with(p)).collect();
        out.require(!matching.is_empty(), format!("no check `{p}`"));
        for c in matching {
            let want = if flags.iter().any(|f| c.name.starts_with(f)) { Status::Flag } else { Status::Pass };
            out.require(c.status == want, format!("{}: {:?}, expected {} computed {} {}", c.name, c.status, c.expected, c.computed, c.details));
        }
    }
    out
}

fn rewrite_laws(out: &mut Outcome) {
    let alg = m11::algebra().unwrap();
    let sys = alg.system();
    let q = alg.quiver();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let (s, m, t) = (rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3));
        let n1 = rng.gen_range(0..=6);
        let n2 = rng.gen_range(0..=6);
        let x = random_combination(&mut rng, alg.field(), &between(q, n1, s, m));
        let y = random_combination(&mut rng, alg.field(), &between(q, n1, s, m));
        let z = random_combination(&mut rng, alg.field(), &between(q, n2, m, t));
        let nx = sys.normal_form(&x).unwrap();
        out.require(sys.normal_form(&nx).unwrap() == nx, "M11 normal form is not idempotent");
        let lin = sys.normal_form(&x.add(&y).unwrap()).unwrap();
        out.require(lin == nx.add(&sys.normal_form(&y).unwrap()).unwrap(), "M11 normal form is not linear");
        let prod = sys.normal_form(&x.mul(&z).unwrap()).unwrap();
        out.require(prod == sys.normal_form(&nx.mul(&sys.normal_form(&z).unwrap()).unwrap()).unwrap(), "M11 normal form is not multiplicative");
    }
    for seed in 0..40 {
        let ra = RandomAlgebra::generate(seed);
        let sys = ra.system();
        let f = ra.field;
        let nv = ra.quiver.vertices().len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 1000);
        let (s, m, t) = (rng.gen_range(0..nv), rng.gen_range(0..nv), rng.gen_range(0..nv));
        let x = random_combination(&mut rng, f, &between(&ra.quiver, ra.cut - 1, s, m));
        let y = random_combination(&mut rng, f, &between(&ra.quiver, ra.cut - 1, s, m));
        let z = random_combination(&mut rng, f, &between(&ra.quiver, 1, m, t));
        let nx = sys.normal_form(&x).unwrap();
        let c = rng.gen_range(0..f.characteristic());
        out.require(sys.normal_form(&nx).unwrap() == nx, format!("seed {seed}: not idempotent"));
        let lin = sys.normal_form(&x.add(&y.scale(c)).unwrap()).unwrap();
        out.require(lin == nx.add(&sys.normal_form(&y).unwrap().scale(c)).unwrap(), format!("seed {seed}: not linear"));
        let prod = sys.normal_form(&x.mul(&z).unwrap()).unwrap();
        out.require(prod == sys.normal_form(&nx.mul(&sys.normal_form(&z).unwrap()).unwrap()).unwrap(), format!("seed {seed}: not multiplicative"));
    }
}

fn ideal_oracle(out: &mut Outcome) {
    let mut tried = 0;
    for seed in 0..60 {
        let ra = RandomAlgebra::generate(seed);
        let sys = ra.system();
        let alg = Algebra::new(sys.clone()).unwrap();
        if alg.dim() > 30 {
            continue;
        }
        tried += 1;
        let nv = ra.quiver.vertices().len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 2000);
        for n in 0..=ra.cut {
            for s in 0..nv {
                for t in 0..nv {
                    let words = between(&ra.quiver, n, s, t);
                    if words.is_empty() {
                        continue;
                    }
                    let ideal = ra.ideal_part(&words, n, s, t);
                    let standard = alg.standard_monomials().between(s, t).iter().filter(|w| w.len() == n).count();
                    out.require(words.len() - ideal.len() == standard, format!("seed {seed}: quotient dimension in degree {n}"));
                    for _ in 0..3 {
                        let x = random_combination(&mut rng, ra.field, &words);
                        let member = ideal.contains(&coordinates(&x, &words));
                        out.require(sys.reduces_to_zero(&x).unwrap() == member, format!("seed {seed}: membership disagrees in degree {n}"));
                    }
                }
            }
        }
    }
    out.require(tried >= 30, format!("only {tried} random algebras of dimension at most 30"));
}

fn yoneda_laws(out: &mut Outcome) {
    let alg = m11::algebra().unwrap();
    let ctx = ExtContext::minimal(&alg, 8).unwrap();
    let gens = ext::minimal_generators(&ctx, 8).unwrap();
    let all = triples(&gens, 8);
    out.require(!all.is_empty(), "no composable generator triples");
    for (i, j, k) in all {
        let (x, y, z) = (&gens[i], &gens[j], &gens[k]);
        let yz = ctx.yoneda(y, z).unwrap();
        let xy = ctx.yoneda(x, y).unwrap();
        let left = ctx.yoneda(&xy, z).unwrap();
        out.require(left == ctx.yoneda(x, &yz).unwrap(), format!("associativity fails on generators {i}, {j}, {k}"));
        let choice = LiftChoice::Seeded((i * 64 + j * 8 + k) as u64);
        out.require(ctx.yoneda_with(y, z, choice).unwrap() == yz, format!("lift dependence on {j}, {k}"));
        out.require(ctx.yoneda_with(&xy, z, choice).unwrap() == left, format!("lift dependence on ({i}{j}), {k}"));
    }
}

#[test]
fn acceptance() {
    let report = m11::verify_m11(12);
    let mut results: Vec<(&str, Outcome)> = vec![(
        "standard monomial bases of P_K, P_M, P_N and dimension 22",
        from_report(&report, &["standard monomials of P_", "dimension of the basic algebra"], &[]),
    )];
    results.push(("the eleven relations form a Gröbner basis", from_report(&report, &["the eleven relations form a Gröbner basis"], &[])));
    results.push((
        "resolutions to degree 12: minimal, exact, stated shapes, N has period 4",
        from_report(
            &report,
            &[
                "minimal resolution of",
                "explicit resolution of",
                "summands of the minimal resolution",
                "double complex of",
                "differentials of the resolution of N",
                "period of the resolution of N",
            ],
            &[],
        ),
    ));
    results.push((
        "homotopy identities and dh + hd = Id to degree 8",
        from_report(
            &report,
            &["h_", "h'_", "b h_b", "c h_c", "d h_d", "e*b h_e*b", "square ", "corner ", "A' next to", "P_N in", "dh + hd = Id", "dropping h'_C"],
            &[],
        ),
    ));
    results.push((
        "Ext dimension goldens, Hilbert series to degree 20, M-series erratum flagged",
        from_report(&report, &["dim Ext^", "alternative stated series"], &["alternative stated series"]),
    ));
    let mut six = from_report(
        &report,
        &[
            "Ext generators through degree 12",
            "Ext relations through degree 12",
            "stated relations hold",
            "stated Ext relations form a Gröbner basis",
            "no stated Ext relation follows",
        ],
        &[],
    );
    let pres = report.presentation.as_ref();
    six.require(pres.map(|p| p.generators.len()) == Some(8), "generator count is not 8");
    six.require(pres.map(|p| p.relations.len()) == Some(14), "relation count is not 14");
    let listed: BTreeSet<String> = m11::S_POLYNOMIAL_EXCEPTIONS.iter().map(|s| s.to_string()).collect();
    let computed = m11::s_polynomial_exceptions(&m11::ext_system().unwrap(), 5);
    let extra: Vec<&String> = computed.difference(&listed).collect();
    let missing: Vec<&String> = listed.difference(&computed).collect();
    six.require(computed == listed, format!("nonzero S-polynomials in degree <= 5: also {extra:?}, not {missing:?}"));
    results.push(("Ext generators, relations, Gröbner and minimality, S-polynomial exception set", six));
    results.push(("delta*(beta*gamma) != (beta*gamma)*delta in Ext^3(M,M)", from_report(&report, &["delta*beta*gamma != beta*gamma*delta"], &[])));
    results.push((
        "Ext*(K,K) generated in degrees 3, 4, 5 with one relation in degree 10",
        from_report(
            &report,
            &[
                "gamma*delta*beta, kappa, gamma*delta^3*beta generate",
                "degrees of minimal generators",
                "the three generators of Ext*(K,K)",
                "minimal relations of Ext*(K,K)",
            ],
            &[],
        ),
    ));
    let mut nine = Outcome::new();
    rewrite_laws(&mut nine);
    ideal_oracle(&mut nine);
    yoneda_laws(&mut nine);
    nine.require(m11::verify_m11(12).to_json() == report.to_json(), "verify report differs between runs");
    results.push(("rewrite laws, ideal-membership oracle, Yoneda associativity and lift independence, determinism", nine));

    let mut stdout = std::io::stdout().lock();
    for (i, (what, o)) in results.iter().enumerate() {
        writeln!(stdout, "criterion {}: {}  {what}", i + 1, if o.ok { "PASS" } else { "FAIL" }).unwrap();
        for n in &o.notes {
            writeln!(stdout, "    {n}").unwrap();
        }
    }
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, (_, o))| !o.ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
