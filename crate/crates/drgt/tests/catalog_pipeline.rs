use drgt::catalog::{self, CatalogEntry};
use drgt::graph::{construct, verify_graph, GraphCheckOptions};
use drgt::tightness::{analyze, rho_from_sigma};
use drgt::{CosineSequence, Scalar};

fn constructible() -> Vec<CatalogEntry> {
    catalog::list(true)
}

#[test]
fn constructible_entries_cover_the_families() {
    let names: Vec<String> = constructible().into_iter().map(|e| e.name).collect();
    for want in ["J(6,3)", "J(8,4)", "J(10,5)", "½H(6,2)", "½H(8,2)", "½H(10,2)", "Icosahedron"] {
        assert!(names.iter().any(|n| n == want), "{want} missing from {names:?}");
    }
}

#[test]
fn graph_pipeline_agrees_with_array_pipeline() {
    for e in constructible() {
        let g = construct(e.family.expect("constructible entries carry a family")).unwrap();
        let opts = GraphCheckOptions { homogeneous: true, formulas: true, sample: Some(24), ..Default::default() };
        let r = verify_graph(&g, &opts).unwrap();
        assert!(r.passed, "{}", e.name);
        assert_eq!(r.array, e.array, "{}", e.name);
        assert_eq!(r.n as u64, e.array.n(), "{}", e.name);

        let report = analyze(&e.array).unwrap();
        let [lo, _] = report.f_bounds.clone().unwrap();
        assert_eq!(r.f_values, [lo], "{}", e.name);

        let l = &e.local_srg_expected;
        let local = r.local.unwrap();
        assert_eq!(local.brute.len(), 1, "{}", e.name);
        let brute: Vec<Scalar> = local.brute[0].iter().map(|&x| Scalar::from(x)).collect();
        assert_eq!(brute, [l.nu.clone(), l.kappa.clone(), l.lambda.clone(), l.mu.clone()], "{}", e.name);
        let formula = local.formula.unwrap();
        assert_eq!(formula.r, l.r, "{}", e.name);
        assert_eq!(formula.s, l.s, "{}", e.name);
        assert_eq!(formula, report.local_srg.unwrap(), "{}", e.name);

        let h = r.homogeneity.unwrap();
        assert_eq!((h.violations, h.l_sizes.as_slice()), (0, &[3 * e.array.d() - 1][..]), "{}", e.name);
        assert!(r.rank.iter().all(|x| x.t == 2 && x.dim_mh == 3 * e.array.d() - 1), "{}", e.name);
    }
}

#[test]
fn stored_rho_follows_from_stored_sigma() {
    for e in catalog::entries() {
        let sigma = CosineSequence::from_values(e.array.k(), e.expected_sigma.clone());
        let rho = rho_from_sigma(&sigma, &e.expected_epsilon).unwrap();
        assert_eq!(rho.sigma, e.expected_rho, "{}", e.name);
    }
}

#[test]
fn every_entry_has_zero_last_a_and_nonzero_middle_a() {
    for e in catalog::entries() {
        let d = e.array.d();
        assert_eq!(e.array.a(d), 0, "{}", e.name);
        assert!((1..d).all(|i| e.array.a(i) != 0), "{}", e.name);
    }
}
