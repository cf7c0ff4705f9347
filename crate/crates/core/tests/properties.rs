use proptest::prelude::*;

use symcart_core::abelian::{compatible, direct_sum, AbelianGroup, Compatibility, PartialAbelianGroup};
use symcart_core::catalog::{enumerate_catalog, ProductSpace, SpaceInstance};
use symcart_core::geom::{connectivity, trace_bound, Rescaling};
use symcart_core::homotopy::Database;
use symcart_core::recognize::{distinguish, Evidence, Verdict, RECOGNITION_DEGREE};

fn catalog() -> &'static [SpaceInstance] {
    static CATALOG: std::sync::OnceLock<Vec<SpaceInstance>> = std::sync::OnceLock::new();
    CATALOG.get_or_init(|| enumerate_catalog(300))
}

fn small_catalog() -> Vec<SpaceInstance> {
    catalog().iter().filter(|s| s.dim <= 60).cloned().collect()
}

fn group() -> impl Strategy<Value = AbelianGroup> {
    (0u32..4, prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16, 25]), 0..4))
        .prop_map(|(r, t)| AbelianGroup::from_parts(r, &t).unwrap())
}

/// Some partial description that admits `g`.
fn description(g: AbelianGroup) -> impl Strategy<Value = PartialAbelianGroup> {
    let mut options = vec![PartialAbelianGroup::Exact(g.clone()), PartialAbelianGroup::Unknown];
    if g.is_finite() {
        options.push(PartialAbelianGroup::Finite);
    }
    if g.free_rank() == 1 {
        options.push(PartialAbelianGroup::RankOne);
    }
    if g.free_rank() >= 1 {
        options.push(PartialAbelianGroup::RankAtLeastOne);
    }
    options.push(PartialAbelianGroup::containing(g.torsion_part()));
    prop::sample::select(options)
}

fn universe() -> Vec<AbelianGroup> {
    let orders = [2u64, 3, 4, 5, 7, 8, 9, 16];
    let mut torsion: Vec<Vec<u64>> = vec![vec![]];
    for len in 1..=3 {
        let mut next = Vec::new();
        for t in torsion.iter().filter(|t| t.len() == len - 1) {
            for &o in orders.iter().filter(|&&o| t.last().is_none_or(|&l| o >= l)) {
                let mut u = t.clone();
                u.push(o);
                next.push(u);
            }
        }
        torsion.extend(next);
    }
    (0..5).flat_map(|r| torsion.iter().map(move |t| AbelianGroup::from_parts(r, t).unwrap())).collect()
}

proptest! {
    #[test]
    fn connectivity_is_sharp(i in 0usize..10_000, c in 1u32..400) {
        let s = &catalog()[i % catalog().len()];
        let codim = 1 + c % (s.dim - 1).max(1);
        prop_assume!(codim < s.dim);
        prop_assert_eq!(connectivity(s, s.dim - codim).unwrap(), s.sharp(codim));
    }

    #[test]
    fn trace_bound_increases_and_vanishes_only_at_zero(k in 1u32..300, lambda in 0.01f64..4.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let delta = lambda * f64::from(k);
        let limit = std::f64::consts::FRAC_PI_2 / lambda.sqrt();
        let (r1, r2) = (a.min(b) * limit * 0.999, a.max(b) * limit * 0.999);
        let (t1, t2) = (trace_bound(delta, k, r1).unwrap(), trace_bound(delta, k, r2).unwrap());
        prop_assert!(t1 >= 0.0);
        prop_assert_eq!(t1 == 0.0, r1 == 0.0);
        if r1 < r2 {
            prop_assert!(t1 < t2);
        }
        prop_assert!(trace_bound(delta, k, limit * 1.001).is_err());
    }

    #[test]
    fn rescaling_normalizes_the_bound(k in 1u32..300, delta in 0.01f64..50.0, a in 0.0f64..0.99) {
        let l = Rescaling::normalizing(delta, k).unwrap();
        let r = a * std::f64::consts::FRAC_PI_2 / (delta / f64::from(k)).sqrt();
        let scaled = l.trace(trace_bound(delta, k, r).unwrap());
        let unit = trace_bound(f64::from(k), k, l.focal_radius(r)).unwrap();
        prop_assert!((scaled - unit).abs() <= 1e-9 * unit.max(1.0));
    }

    #[test]
    fn product_kp_is_the_pairwise_fold(idx in prop::collection::vec(0usize..10_000, 2..5)) {
        let factors: Vec<SpaceInstance> = idx.iter().map(|i| catalog()[i % catalog().len()].clone()).collect();
        let (_, k) = factors
            .iter()
            .map(|f| (f.dim, f.kp))
            .reduce(|(n1, k1), (n2, k2)| (n1 + n2, (n1 + k2).max(n2 + k1)))
            .unwrap();
        prop_assert_eq!(ProductSpace::new(factors).unwrap().product_kp(), k);
    }

    #[test]
    fn exact_sums_are_commutative_and_associative(a in group(), b in group(), c in group()) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        prop_assert_eq!(a.direct_sum(&b).free_rank(), a.free_rank() + b.free_rank());
        for p in [2, 3, 5, 7] {
            prop_assert_eq!(a.direct_sum(&b).p_rank(p), a.p_rank(p) + b.p_rank(p));
        }
        prop_assert_eq!(a.to_string().parse::<PartialAbelianGroup>().unwrap(), PartialAbelianGroup::Exact(a.clone()));
    }

    #[test]
    fn descriptions_of_one_group_are_compatible(
        (g, x, y) in group().prop_flat_map(|g| (Just(g.clone()), description(g.clone()), description(g)))
    ) {
        prop_assert!(x.admits(&g) && y.admits(&g));
        prop_assert!(!matches!(compatible(&x, &y), Compatibility::Incompatible(_)));
        prop_assert_eq!(compatible(&x, &y) == Compatibility::Equal, compatible(&y, &x) == Compatibility::Equal);
    }

    #[test]
    fn partial_sums_admit_exact_sums(
        (g, h, x, y) in (group(), group()).prop_flat_map(|(g, h)| (Just(g.clone()), Just(h.clone()), description(g), description(h)))
    ) {
        prop_assert!(direct_sum(&x, &y).admits(&g.direct_sum(&h)));
    }

    #[test]
    fn incompatible_descriptions_share_no_group(
        (g, h, x, y) in (group(), group()).prop_flat_map(|(g, h)| (Just(g.clone()), Just(h.clone()), description(g), description(h)))
    ) {
        if let Compatibility::Incompatible(_) = compatible(&x, &y) {
            prop_assert!(!x.admits(&h) || !y.admits(&h));
            prop_assert!(!x.admits(&g) || !y.admits(&g));
            prop_assert_ne!(g, h);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distinguishable_profiles_have_no_common_refinement(
        left in prop::collection::vec(0usize..10_000, 1..3),
        right in prop::collection::vec(0usize..10_000, 1..3),
    ) {
        let small = small_catalog();
        let product = |idx: &[usize]| ProductSpace::new(idx.iter().map(|i| small[i % small.len()].clone()).collect()).unwrap();
        let (a, b) = (product(&left), product(&right));
        let db = Database::builtin();
        let verdict = distinguish(db, &a, &b, RECOGNITION_DEGREE).unwrap();
        let back = distinguish(db, &b, &a, RECOGNITION_DEGREE).unwrap();
        prop_assert_eq!(verdict.is_distinguishable(), back.is_distinguishable());
        if let Verdict::Distinguishable { degree, evidence } = verdict {
            let x = db.profile(&a, degree).unwrap().pi(degree).clone();
            let y = db.profile(&b, degree).unwrap().pi(degree).clone();
            match evidence {
                Evidence::Rank(_) => {
                    for g in universe() {
                        prop_assert!(!(x.admits(&g) && y.admits(&g)), "{} admitted by {} and {}", g, x, y);
                    }
                }
                Evidence::Torsion { left, right } => prop_assert_ne!(left, right),
            }
        }
    }
}
