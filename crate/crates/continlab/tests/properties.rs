//! Property-based invariants: comparison trichotomy, mixture algebra,
//! lattice indexing, expression evaluation, and witness bookkeeping.

use continlab::core::CheckConfig;
use continlab::functions::expr::Expr;
use continlab::functions::RealFunction;
use continlab::geometry::{affine_basis, mix, Domain, Lattice};
use continlab::relations::{Comparison, Relation};
use proptest::prelude::*;

fn unit_square() -> Domain {
    Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0])
}

proptest! {
    #[test]
    fn trichotomy_of_utility_comparisons(
        x0 in 0.0f64..1.0, x1 in 0.0f64..1.0,
        y0 in 0.0f64..1.0, y1 in 0.0f64..1.0,
    ) {
        let u = RealFunction::from_expression("u", 2, "x1 + 2*x2").unwrap();
        let rel = Relation::from_utility("r", unit_square(), u);
        let tau = 1e-9;
        let fwd = rel.compare(&[x0, x1], &[y0, y1], tau).unwrap();
        let bwd = rel.compare(&[y0, y1], &[x0, x1], tau).unwrap();
        // Exactly one classification per ordered pair, and strictness
        // reverses.
        match fwd {
            Comparison::Strict => prop_assert_eq!(bwd, Comparison::StrictReversed),
            Comparison::StrictReversed => prop_assert_eq!(bwd, Comparison::Strict),
            Comparison::Indifferent => prop_assert_eq!(bwd, Comparison::Indifferent),
            Comparison::Incomparable => prop_assert_eq!(bwd, Comparison::Incomparable),
        }
        // Utility-induced relations are complete: incomparability never
        // occurs.
        prop_assert_ne!(fwd, Comparison::Incomparable);
    }

    #[test]
    fn mixture_endpoints_and_betweenness(
        x0 in -5.0f64..5.0, x1 in -5.0f64..5.0,
        y0 in -5.0f64..5.0, y1 in -5.0f64..5.0,
        lambda in 0.0f64..1.0,
    ) {
        let x = vec![x0, x1];
        let y = vec![y0, y1];
        let at_one = mix(&x, &y, 1.0);
        let at_zero = mix(&x, &y, 0.0);
        prop_assert!(at_one.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-12));
        prop_assert!(at_zero.iter().zip(&y).all(|(a, b)| (a - b).abs() < 1e-12));
        let z = mix(&x, &y, lambda);
        for i in 0..2 {
            let lo = x[i].min(y[i]) - 1e-12;
            let hi = x[i].max(y[i]) + 1e-12;
            prop_assert!(z[i] >= lo && z[i] <= hi);
        }
    }

    #[test]
    fn lattice_indexing_roundtrip(i in 0usize..41, j in 0usize..41) {
        let cfg = CheckConfig::default();
        let domain = unit_square();
        let basis = affine_basis(&domain, &cfg).unwrap();
        let lattice = Lattice::build(&domain, &basis, 41, cfg.cmp_tolerance);
        let flat = lattice.flat(&[i, j]);
        prop_assert_eq!(lattice.multi(flat), vec![i, j]);
        // Neighbors differ by exactly one step in one axis.
        for nb in lattice.neighbors(flat) {
            let m = lattice.multi(nb);
            let d: usize = m.iter().zip([i, j]).map(|(a, b)| a.abs_diff(b)).sum();
            prop_assert_eq!(d, 1);
        }
    }

    #[test]
    fn expression_arithmetic_matches_rust(
        a in -10.0f64..10.0,
        b in 0.1f64..10.0,
    ) {
        let e = Expr::parse("x1 * x2 + x1 / x2 - x2 ^ 2", 2).unwrap();
        let direct = a * b + a / b - b * b;
        let parsed = e.eval(&[a, b]).unwrap();
        prop_assert!((direct - parsed).abs() <= 1e-9 * (1.0 + direct.abs()));
    }

    #[test]
    fn segment_sampling_keeps_endpoints_in_domain(count in 1usize..20) {
        let cfg = CheckConfig {
            grid_resolution: 21,
            lambda_resolution: 41,
            sample_count: 20,
            ..CheckConfig::default()
        };
        let domain = unit_square();
        let segments = continlab::geometry::sample_segments(&domain, count, &cfg).unwrap();
        prop_assert!(!segments.is_empty());
        for s in &segments {
            prop_assert!(domain.contains(&s.x.0, 1e-9).unwrap());
            prop_assert!(domain.contains(&s.y.0, 1e-9).unwrap());
            prop_assert!(s.length() > 0.0);
        }
    }

    #[test]
    fn gp_stays_on_level_one_along_its_ridge(t in 0.01f64..1.0) {
        let gp = RealFunction::gp();
        let v = gp.eval(&[t * t, t]).unwrap();
        prop_assert!((v - 1.0).abs() < 1e-12);
        let w = gp.eval(&[-t * t, t]).unwrap();
        prop_assert!((w + 1.0).abs() < 1e-12);
    }
}

#[test]
fn restriction_law_membership_is_a_conjunction() {
    // Membership in a restricted upper section equals base membership
    // intersected with set membership, over 1000 seeded (x, y, segment)
    // draws.
    use continlab::geometry::{Point, Segment};
    use continlab::relations::{restrict, RestrictionSet};
    use rand::Rng;

    let cfg = CheckConfig::default();
    let tau = cfg.cmp_tolerance;
    let u = RealFunction::from_expression("u", 2, "x1 + x2").unwrap();
    let rel = Relation::from_utility("r", unit_square(), u);
    let mut checked = 0usize;
    for idx in 0..100u64 {
        let mut rng = continlab::core::derived_stream(42, "restriction-law", idx);
        let a = vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)];
        let b = vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)];
        if a == b {
            continue;
        }
        let seg = Segment::new(Point(a.clone()), Point(b.clone()));
        let restricted = restrict(&rel, RestrictionSet::Segment(seg.clone()), &cfg).unwrap();
        for k in 0..10 {
            let x = vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)];
            // Half the probes ride the segment, half roam the square.
            let y = if k % 2 == 0 {
                seg.at(rng.gen_range(0.0..1.0))
            } else {
                vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)]
            };
            let on_set = {
                // Segment membership via projection, mirroring the
                // restriction's own test.
                let dir: Vec<f64> = seg.x.0.iter().zip(&seg.y.0).map(|(p, q)| p - q).collect();
                let len2: f64 = dir.iter().map(|c| c * c).sum();
                let t: f64 = y
                    .iter()
                    .zip(&seg.y.0)
                    .zip(&dir)
                    .map(|((yi, qi), di)| (yi - qi) * di)
                    .sum::<f64>()
                    / len2;
                let proj = seg.at(t.clamp(0.0, 1.0));
                (0.0 - tau..=1.0 + tau).contains(&t)
                    && proj.iter().zip(&y).all(|(p, q)| (p - q).abs() <= 1e-7)
            };
            let base = rel.weak(&y, &x, tau).unwrap();
            let restricted_member = restricted.in_upper_section(&x, &y, tau).unwrap();
            assert_eq!(restricted_member, base && on_set);
            checked += 1;
        }
    }
    assert!(checked >= 900);
}

#[test]
fn convexity_verdicts_agree_for_complete_transitive_relations() {
    // Section convexity of the weak part, of the strict part, and
    // star-convexity agree whenever all are decisive.
    use continlab::relations::{check_convexity, sampling_pool, RelationConvexity};

    let cfg = CheckConfig {
        grid_resolution: 41,
        lambda_resolution: 81,
        sample_count: 80,
        ..CheckConfig::default()
    };
    let tau = cfg.cmp_tolerance;
    let cases = [
        ("min", "min(x1, x2)", true),
        ("sum", "x1 + 2*x2", true),
        ("saddle-ish", "x1^2 + x2^2", false),
    ];
    for (name, expr, expect_convex) in cases {
        let u = RealFunction::from_expression(name, 2, expr).unwrap();
        let rel = Relation::from_utility(name, unit_square(), u);
        let weak = check_convexity(&rel, RelationConvexity::ConvexUpperSections, &cfg).unwrap();
        let star = check_convexity(&rel, RelationConvexity::StarConvex, &cfg).unwrap();
        // Strict-part convexity, computed directly over pooled triples.
        let pool = sampling_pool(&rel, &cfg);
        let mut strict_convex = true;
        'outer: for x in pool.iter().take(12) {
            let section: Vec<&Vec<f64>> = pool
                .iter()
                .filter(|y| rel.strict(y, x, tau).unwrap_or(false))
                .collect();
            for i in 0..section.len() {
                for j in (i + 1)..section.len() {
                    for lam in [0.25, 0.5, 0.75] {
                        let z = mix(section[i], section[j], lam);
                        if !rel.strict(&z, x, tau).unwrap_or(false)
                            && !rel.indiff(&z, x, tau).unwrap_or(true)
                        {
                            strict_convex = false;
                            break 'outer;
                        }
                        // Decisive violation: z strictly below x.
                        if rel.strict(x, &z, tau).unwrap_or(false) {
                            strict_convex = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        let weak_holds = weak.verdict == continlab::core::Verdict::Holds;
        let star_holds = star.verdict == continlab::core::Verdict::Holds;
        assert_eq!(weak_holds, expect_convex, "{name} weak sections");
        assert_eq!(star_holds, expect_convex, "{name} star-convexity");
        if expect_convex {
            assert!(strict_convex, "{name} strict sections");
        }
    }
}

#[test]
fn strong_archimedean_variants_agree_under_strong_mixture_continuity() {
    use continlab::continuity::{check_arc_and_strong, ArcStrongKind};
    let cfg = CheckConfig {
        grid_resolution: 41,
        lambda_resolution: 101,
        sample_count: 60,
        ..CheckConfig::default()
    };
    let u = RealFunction::from_expression("u", 2, "x1 + x2").unwrap();
    let rel = Relation::from_utility("r", unit_square(), u);
    let sm = check_arc_and_strong(&rel, ArcStrongKind::StrongMixture, &cfg).unwrap();
    assert_eq!(sm.verdict, continlab::core::Verdict::Holds);
    let sa = check_arc_and_strong(&rel, ArcStrongKind::StrongArchimedean, &cfg).unwrap();
    let ssa = check_arc_and_strong(&rel, ArcStrongKind::StrongStrictArchimedean, &cfg).unwrap();
    assert_eq!(sa.verdict, ssa.verdict, "the strong Archimedean variants must agree");
}

#[test]
fn seeded_streams_make_identical_reports() {
    // Determinism invariant: two invocations of the same checker at the
    // same configuration produce equal reports.
    let cfg = CheckConfig {
        grid_resolution: 41,
        lambda_resolution: 81,
        sample_count: 40,
        ..CheckConfig::default()
    };
    let u = RealFunction::from_expression("u", 2, "x1 + x2").unwrap();
    let rel = Relation::from_utility("r", unit_square(), u);
    let a = continlab::continuity::check_mixture_continuity(
        &rel,
        continlab::continuity::Side::Both,
        &cfg,
    )
    .unwrap();
    let b = continlab::continuity::check_mixture_continuity(
        &rel,
        continlab::continuity::Side::Both,
        &cfg,
    )
    .unwrap();
    assert_eq!(a, b);
}
