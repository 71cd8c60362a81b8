//! Golden corpus of benchmark functions and relations with expected property
//! profiles, the batch runner, and deduction auditing.
//!
//! Every expected verdict cites the bundled example registry.  Unbounded
//! domains from the source examples are desk-scaled to declared boxes; the
//! cited phenomena all occur inside the chosen windows (near the origin for
//! the oscillating and power-curve families).

use crate::continuity::{
    check_arc_and_strong, check_archimedean, check_graph_continuity, check_linear_continuity,
    check_mixture_continuity, check_section_continuity, check_wold, ArcStrongKind,
    ArchimedeanVariant, Side, WoldVariant,
};
use crate::core::{CheckConfig, PropertyReport, Verdict};
use crate::deduction::{
    audit, build_graph, closure, Contradiction, DerivedProfile, FactId,
};
use crate::functions::{
    check_function_continuity, check_function_convexity, ContinuityMode, ConvexityKind,
    RealFunction,
};
use crate::geometry::{
    classify_set_properties, mix, property_b_report, Domain, Halfspace, MembershipOracle, Point,
};
use crate::relations::{
    check_algebraic, check_convexity, check_monotonicity, check_order_density,
    check_order_property, Algebraic, Monotonicity, OrderProperty, ProbeArc, Relation,
    RelationConvexity,
};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown corpus example id '{0}'")]
    UnknownId(String),
}

// ---------------------------------------------------------------------------
// Entries
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum Subject {
    Function { f: RealFunction, domain: Domain },
    Relation(Relation),
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub enum ExpectedVerdict {
    Holds,
    Fails,
}

#[derive(Debug, Clone, Serialize)]
pub struct Expectation {
    pub property: String,
    pub expected: ExpectedVerdict,
    /// Registry locator plus the quoted claim backing this expectation.
    pub citation: String,
}

/// One golden corpus entry; immutable after construction.
#[derive(Debug)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub subject: Subject,
    pub expected: Vec<Expectation>,
    /// Model-level side conditions asserted by construction (recorded in
    /// every report; never silently assumed).
    pub asserted: Vec<String>,
    pub notes: &'static str,
    checks: Vec<CheckTask>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum CheckTask {
    Order(OrderProperty),
    RelConvexity(RelationConvexity),
    Monotone(Monotonicity),
    Algebra(Algebraic),
    Density,
    Section,
    Graph,
    Linear,
    LinearProductSemantics,
    Mixture(Side),
    ArchPlain(Side),
    ArchStrict(Side),
    Wold(WoldVariant),
    ArcStrong(ArcStrongKind),
    SetProperties,
    FnContinuity(ContinuityMode),
    FnConvexity(ConvexityKind),
    SeparateQuasiConcave,
}

fn exp(property: &str, expected: ExpectedVerdict, citation: &str) -> Expectation {
    assert!(!citation.is_empty(), "every expectation needs a citation");
    Expectation {
        property: property.to_string(),
        expected,
        citation: citation.to_string(),
    }
}

/// Claims backing the corpus expectations, quoted in the entries.
pub const EXAMPLE_REGISTRY: &str = r#"
Benchmark (gp-function) :: the ratio function 2 x1 x2^2 / (x1^2 + x2^4) with value 0 at the origin is linearly continuous but not jointly continuous; the discontinuity is approached along the curve x1 = x2^2.
Benchmark (gp-relation) :: the relation induced by the benchmark ratio function is mixture-continuous but not continuous; all points of the curve x1 = x2^2 except the origin are indifferent to (1,1), so the relation is not Wold-continuous.
Example 1 :: the two-class relation on the closed unit disk keeps convex strict sections and satisfies the strict-Archimedean property, but it does not have open sections, since the class sets are not open in the disk.
Example 2 :: the relation that ranks every nonzero bundle above the origin and is otherwise indifferent is complete, transitive and weakly monotonic, but the strict lower section at any nonzero point is the singleton origin, which is not open, and no third point sits strictly below, so order density fails.
Example 3 :: the integer-difference relation is additive, but its sections are translates of the integers and are not convex; its upper and lower mixture lambda-sets are finite unions of points and agree.
Example 4 :: the union of the open intervals (1/(n+1), 1/n) is not locally convex at 0: every neighborhood of 0 contains infinitely many disjoint intervals.
Example 5 :: the relation that matches the origin with the open anti-diagonal has a non-closed upper section at the origin, hence it is not continuous; under the section-intersection reading of restriction the anti-diagonal line witnesses a linear-continuity failure, while the product reading of restriction is continuous on every line.
Example 6 :: the oscillating utility on the anti-diagonal segment lives on a domain without order bounds, so property B fails; the relation is Archimedean and Wold-continuous but not mixture continuous or continuous.
Example 7 :: the swapped ratio function on the closed parabola-bounded set is quasi-convex and linearly continuous but not jointly continuous; the set is convex and closed but neither open nor a polyhedron, so property C fails.
Example 8 :: the benchmark ratio function on the nonnegative window is quasi-concave in each variable separately and linearly continuous, but not jointly continuous.
Example 9 :: the relation that compares exactly the points of the open parabola arc is linearly continuous, because sections meet every straight line in at most two points, but the arc is not closed in the square, so the relation is not continuous.
Benchmark (sin-reciprocal) :: the oscillating utility sin(1/x) with value 1 at 0 induces a relation that is Archimedean and weakly Wold-continuous, but its lower section at an intermediate point contains a sequence converging to 0 without its limit, so mixture-continuity fails.
Benchmark (two-class-threshold) :: the two-class relation on the unit interval with an everywhere-indifferent hinge at 1/2 has closed graph, but there is no third point strictly below the bottom class, so it is not weakly Wold-continuous.
"#;

fn banded(v: f64, w: f64) -> bool {
    (v - w).abs() <= 1e-12
}

fn gp_square() -> Domain {
    Domain::boxed(vec![-1.0, -1.0], vec![1.0, 1.0])
}

/// The point on the line x2 = 1 whose benchmark-ratio utility is exactly 1/2.
fn gp_half_level_anchor() -> Point {
    Point(vec![2.0 - 3.0_f64.sqrt(), 1.0])
}

fn sin_half_level() -> f64 {
    1.0 / (std::f64::consts::FRAC_PI_6 + 2.0 * std::f64::consts::PI)
}

fn entry_gp_function() -> CorpusEntry {
    CorpusEntry {
        id: "gp-function",
        subject: Subject::Function {
            f: RealFunction::gp(),
            domain: gp_square(),
        },
        expected: vec![
            exp(
                "linear-continuity",
                ExpectedVerdict::Holds,
                "Benchmark (gp-function): linearly continuous but not jointly continuous",
            ),
            exp(
                "joint-continuity",
                ExpectedVerdict::Fails,
                "Benchmark (gp-function): linearly continuous but not jointly continuous; the discontinuity is approached along the curve x1 = x2^2",
            ),
            exp(
                "separate-continuity",
                ExpectedVerdict::Holds,
                "Benchmark (gp-function): quasi-concave in each variable separately (Example 8 claim), hence separately continuous along axis lines",
            ),
            exp(
                "quasi-concave",
                ExpectedVerdict::Fails,
                "Benchmark (gp-function): the quasi-concavity assumption cannot be dropped (remark on the linear/joint equivalence)",
            ),
        ],
        asserted: vec![],
        notes: "arity-2 benchmark ratio function on the [-1,1] square",
        checks: vec![
            CheckTask::FnContinuity(ContinuityMode::Joint),
            CheckTask::FnContinuity(ContinuityMode::Separate),
            CheckTask::FnContinuity(ContinuityMode::Linear),
            CheckTask::FnContinuity(ContinuityMode::Arc),
            CheckTask::FnConvexity(ConvexityKind::QuasiConcave),
            CheckTask::FnConvexity(ConvexityKind::QuasiConvex),
            CheckTask::SetProperties,
        ],
    }
}

fn entry_gp_relation() -> CorpusEntry {
    let rel = Relation::from_utility("gp-relation", gp_square(), RealFunction::gp())
        .with_anchors(vec![gp_half_level_anchor(), Point(vec![0.0, 0.0]), Point(vec![1.0, 1.0])]);
    CorpusEntry {
        id: "gp-relation",
        subject: Subject::Relation(rel),
        expected: vec![
            exp(
                "mixture-continuous",
                ExpectedVerdict::Holds,
                "Benchmark (gp-relation): mixture-continuous but not continuous",
            ),
            exp(
                "continuous",
                ExpectedVerdict::Fails,
                "Benchmark (gp-relation): mixture-continuous but not continuous",
            ),
            exp(
                "wold-continuous",
                ExpectedVerdict::Fails,
                "Benchmark (gp-relation): all points of the curve x1 = x2^2 except the origin are indifferent to (1,1), so the relation is not Wold-continuous",
            ),
            exp(
                "archimedean",
                ExpectedVerdict::Holds,
                "Benchmark (gp-relation): linear continuity holds, and linear continuity is equivalent to mixture continuity with the Archimedean property",
            ),
            exp(
                "linear-continuous",
                ExpectedVerdict::Holds,
                "Benchmark (gp-relation): mixture-continuous but not continuous (the induced relation is linearly continuous)",
            ),
        ],
        asserted: vec![],
        notes: "utility-induced relation of the benchmark ratio function",
        checks: vec![
            CheckTask::Order(OrderProperty::Complete),
            CheckTask::Order(OrderProperty::Transitive),
            CheckTask::Order(OrderProperty::Reflexive),
            CheckTask::Order(OrderProperty::NonTrivial),
            CheckTask::RelConvexity(RelationConvexity::ConvexUpperSections),
            CheckTask::RelConvexity(RelationConvexity::LocallyConvexUpperSections),
            CheckTask::Section,
            CheckTask::Graph,
            CheckTask::Linear,
            CheckTask::Mixture(Side::Both),
            CheckTask::Mixture(Side::Upper),
            CheckTask::Mixture(Side::Lower),
            CheckTask::ArchPlain(Side::Both),
            CheckTask::ArchStrict(Side::Both),
            CheckTask::Density,
            CheckTask::Wold(WoldVariant::Weak),
            CheckTask::Wold(WoldVariant::Full),
            CheckTask::ArcStrong(ArcStrongKind::StrongMixture),
            CheckTask::ArcStrong(ArcStrongKind::ArcContinuous),
            CheckTask::SetProperties,
        ],
    }
}

fn entry_ex1_disk() -> CorpusEntry {
    let is_pole = |p: &[f64], sign: f64| (p[0] - sign).abs() <= 1e-12 && p[1].abs() <= 1e-12;
    let in_a = move |p: &[f64]| -> bool {
        let on_circle = (p[0] * p[0] + p[1] * p[1] - 1.0).abs() <= 1e-12;
        (p[0] < -1e-12 && !on_circle) || is_pole(p, -1.0)
    };
    let in_b = move |p: &[f64]| -> bool {
        let on_circle = (p[0] * p[0] + p[1] * p[1] - 1.0).abs() <= 1e-12;
        (p[0] > 1e-12 && !on_circle) || is_pole(p, 1.0)
    };
    let weak = Arc::new(move |x: &[f64], y: &[f64]| -> bool { in_a(x) && in_b(y) });
    let disk = Domain::ball(vec![0.0, 0.0], 1.0, false);
    let arcs = vec![
        ProbeArc {
            label: "circle-arc-at-left-pole-up".into(),
            map: Arc::new(|t: f64| {
                let phi = 0.45 * std::f64::consts::PI * t;
                vec![-phi.cos(), phi.sin()]
            }),
        },
        ProbeArc {
            label: "circle-arc-at-left-pole-down".into(),
            map: Arc::new(|t: f64| {
                let phi = 0.45 * std::f64::consts::PI * t;
                vec![-phi.cos(), -phi.sin()]
            }),
        },
        ProbeArc {
            label: "circle-arc-at-right-pole-up".into(),
            map: Arc::new(|t: f64| {
                let phi = 0.45 * std::f64::consts::PI * t;
                vec![phi.cos(), phi.sin()]
            }),
        },
    ];
    let rel = Relation::from_predicate(
        "ex1-disk",
        disk,
        "left class strictly beats right class, nothing else comparable",
        weak,
    )
    .with_anchors(vec![
        Point(vec![-1.0, 0.0]),
        Point(vec![1.0, 0.0]),
        Point(vec![-0.5, 0.0]),
        Point(vec![0.5, 0.0]),
        Point(vec![-0.5, 0.5]),
        Point(vec![0.5, -0.5]),
    ])
    .with_probe_arcs(arcs);
    CorpusEntry {
        id: "ex1-disk",
        subject: Subject::Relation(rel),
        expected: vec![
            exp(
                "strict-archimedean",
                ExpectedVerdict::Holds,
                "Example 1: satisfies the strict-Archimedean property",
            ),
            exp(
                "open-strict-upper",
                ExpectedVerdict::Fails,
                "Example 1: it does not have open sections, since the class sets are not open in the disk",
            ),
            exp(
                "complete",
                ExpectedVerdict::Fails,
                "Example 1: there are no other comparable points",
            ),
        ],
        asserted: vec![],
        notes: "two-class relation on the closed unit disk; the poles witness the boundary failure",
        checks: vec![
            CheckTask::Order(OrderProperty::Complete),
            CheckTask::Order(OrderProperty::Transitive),
            CheckTask::Order(OrderProperty::NonTrivial),
            CheckTask::Section,
            CheckTask::Linear,
            CheckTask::Mixture(Side::Both),
            CheckTask::ArchPlain(Side::Both),
            CheckTask::ArchStrict(Side::Both),
            CheckTask::Density,
            CheckTask::SetProperties,
        ],
    }
}

fn entry_ex2_monotone() -> CorpusEntry {
    let is_zero = |p: &[f64]| p.iter().all(|c| c.abs() <= 1e-12);
    let weak = Arc::new(move |x: &[f64], y: &[f64]| -> bool {
        // 0 ~ 0; x > 0 for nonzero x; nonzero bundles mutually indifferent.
        !(is_zero(x) && !is_zero(y))
    });
    let rel = Relation::from_predicate(
        "ex2-monotone",
        Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]),
        "every nonzero bundle beats the origin; nonzero bundles are indifferent",
        weak,
    )
    .with_anchors(vec![
        Point(vec![0.0, 0.0]),
        Point(vec![0.5, 0.5]),
        Point(vec![0.001, 0.001]),
    ]);
    CorpusEntry {
        id: "ex2-monotone",
        subject: Subject::Relation(rel),
        expected: vec![
            exp(
                "weakly-monotone",
                ExpectedVerdict::Holds,
                "Example 2: complete, transitive and weakly monotonic",
            ),
            exp(
                "strongly-monotone",
                ExpectedVerdict::Fails,
                "Example 2: interior ordered bundles are mutually indifferent, so strict monotonicity fails",
            ),
            exp(
                "continuous",
                ExpectedVerdict::Fails,
                "Example 2: the strict lower section at any nonzero point is the singleton origin, which is not open",
            ),
            exp(
                "order-dense",
                ExpectedVerdict::Fails,
                "Example 2: no third point sits strictly below, so order density fails",
            ),
        ],
        asserted: vec![],
        notes: "desk-scaled window of the nonnegative orthant",
        checks: vec![
            CheckTask::Order(OrderProperty::Complete),
            CheckTask::Order(OrderProperty::Transitive),
            CheckTask::Order(OrderProperty::Reflexive),
            CheckTask::Monotone(Monotonicity::Weak),
            CheckTask::Monotone(Monotonicity::Strong),
            CheckTask::RelConvexity(RelationConvexity::ConvexUpperSections),
            CheckTask::RelConvexity(RelationConvexity::LocallyConvexUpperSections),
            CheckTask::Section,
            CheckTask::Graph,
            CheckTask::Linear,
            CheckTask::Mixture(Side::Both),
            CheckTask::ArchPlain(Side::Both),
            CheckTask::Density,
            CheckTask::Wold(WoldVariant::Weak),
            CheckTask::SetProperties,
        ],
    }
}

fn entry_ex3_integer() -> CorpusEntry {
    let weak = Arc::new(|x: &[f64], y: &[f64]| -> bool {
        let d = x[0] - y[0];
        (d - d.round()).abs() <= 1e-9
    });
    let window = Domain::cone_window(
        vec![
            Halfspace::closed(vec![-1.0], 0.0),
            Halfspace::closed(vec![1.0], 4.0),
        ],
        (vec![0.0], vec![4.0]),
    );
    let anchors: Vec<Point> = [0.0, 0.25, 0.5, 1.0, 1.25, 1.5, 2.0, 2.25, 3.0, 3.25, 3.5]
        .iter()
        .map(|v| Point(vec![*v]))
        .collect();
    let rel = Relation::from_predicate(
        "ex3-integer-additive",
        window,
        "x weakly preferred to y when x - y is an integer",
        weak,
    )
    .with_anchors(anchors);
    CorpusEntry {
        id: "ex3-integer-additive",
        subject: Subject::Relation(rel),
        expected: vec![
            exp(
                "additive",
                ExpectedVerdict::Holds,
                "Example 3: the integer-difference relation is additive",
            ),
            exp(
                "convex-upper-sections",
                ExpectedVerdict::Fails,
                "Example 3: its sections are translates of the integers and are not convex",
            ),
        ],
        asserted: vec!["cone-domain".into()],
        notes: "desk window [0,4] of the nonnegative half-line, declared as a cone window",
        checks: vec![
            CheckTask::Order(OrderProperty::Complete),
            CheckTask::Order(OrderProperty::Transitive),
            CheckTask::Order(OrderProperty::Reflexive),
            CheckTask::Algebra(Algebraic::Additive),
            CheckTask::Algebra(Algebraic::Homothetic),
            CheckTask::Algebra(Algebraic::Independent),
            CheckTask::RelConvexity(RelationConvexity::ConvexUpperSections),
            CheckTask::Mixture(Side::Upper),
            CheckTask::Mixture(Side::Lower),
            CheckTask::Mixture(Side::Both),
            CheckTask::ArchStrict(Side::Upper),
            CheckTask::ArchStrict(Side::Lower),
            CheckTask::SetProperties,
        ],
    }
}

fn entry_ex4_locally_convex() -> CorpusEntry {
    let member = |v: f64| -> bool {
        if v <= 0.0 || v >= 1.0 {
            return false;
        }
        let n = (1.0 / v).floor();
        let lo = 1.0 / (n + 1.0);
        let hi = 1.0 / n;
        v > lo && v < hi
    };
    let weak = Arc::new(move |x: &[f64], _y: &[f64]| -> bool { member(x[0]) });
    let anchors: Vec<Point> = std::iter::once(Point(vec![0.0]))
        .chain((2..=4096).map(|n| Point(vec![1.0 / n as f64])))
        .collect();
    let rel = Relation::from_predicate(
        "ex4-locally-convex-set",
        Domain::boxed(vec![0.0], vec![1.0]),
        "upper sections equal the union of the open gap intervals",
        weak,
    )
    .with_anchors(anchors);
    CorpusEntry {
        id: "ex4-locally-convex-set",
        subject: Subject::Relation(rel),
        expected: vec![exp(
            "locally-convex-upper-sections",
            ExpectedVerdict::Fails,
            "Example 4: not locally convex at 0: every neighborhood of 0 contains infinitely many disjoint intervals",
        )],
        asserted: vec![],
        notes: "the interval-union set used as an upper section",
        checks: vec![CheckTask::RelConvexity(
            RelationConvexity::LocallyConvexUpperSections,
        )],
    }
}

fn entry_ex5_restriction() -> CorpusEntry {
    let on_y = |p: &[f64]| -> bool {
        (p[0] + p[1] - 1.0).abs() <= 1e-12 && p[0] > 1e-12 && p[1] > 1e-12
    };
    let is_zero = |p: &[f64]| p.iter().all(|c| c.abs() <= 1e-12);
    let weak = Arc::new(move |x: &[f64], y: &[f64]| -> bool {
        (is_zero(x) && on_y(y)) || (on_y(x) && is_zero(y))
    });
    let rel = Relation::from_predicate(
        "ex5-restriction",
        Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]),
        "the origin is indifferent to every point of the open anti-diagonal",
        weak,
    )
    .with_anchors(vec![
        Point(vec![0.0, 0.0]),
        Point(vec![0.5, 0.5]),
        Point(vec![0.25, 0.75]),
        Point(vec![0.75, 0.25]),
        Point(vec![0.0, 1.0]),
        Point(vec![1.0, 0.0]),
    ]);
    CorpusEntry {
        id: "ex5-restriction",
        subject: Subject::Relation(rel),
        expected: vec![
            exp(
                "continuous",
                ExpectedVerdict::Fails,
                "Example 5: a non-closed upper section at the origin, hence it is not continuous",
            ),
            exp(
                "linear-continuous",
                ExpectedVerdict::Fails,
                "Example 5: under the section-intersection reading of restriction the anti-diagonal line witnesses a linear-continuity failure",
            ),
            exp(
                "linear-continuous-product-semantics",
                ExpectedVerdict::Holds,
                "Example 5: the product reading of restriction is continuous on every line",
            ),
        ],
        asserted: vec![],
        notes: "exercises the distinction between the two restriction semantics",
        checks: vec![
            CheckTask::Order(OrderProperty::Complete),
            CheckTask::RelConvexity(RelationConvexity::ConvexUpperSections),
            CheckTask::RelConvexity(RelationConvexity::LocallyConvexUpperSections),
            CheckTask::Section,
            CheckTask::Linear,
            CheckTask::LinearProductSemantics,
            CheckTask::Mixture(Side::Both),
            CheckTask::SetProperties,
        ],
    }
}

fn entry_ex6_no_property_b() -> CorpusEntry {
    // Anti-diagonal segment {x in [-1,0] x [0,1] : x1 = -x2} with the
    // oscillating utility in the second coordinate.
    let domain = Domain::polyhedron(
        vec![
            Halfspace::closed(vec![1.0, 1.0], 0.0),
            Halfspace::closed(vec![-1.0, -1.0], 0.0),
            Halfspace::closed(vec![-1.0, 0.0], 1.0),
            Halfspace::closed(vec![1.0, 0.0], 0.0),
            Halfspace::closed(vec![0.0, -1.0], 0.0),
            Halfspace::closed(vec![0.0, 1.0], 1.0),
        ],
        (vec![-1.0, 0.0], vec![0.0, 1.0]),
    );
    let x_half = sin_half_level();
    let rel = Relation::from_utility(
        "ex6-no-propertyB",
        domain,
        RealFunction::sin_reciprocal(2, 1),
    )
    .with_anchors(vec![
        Point(vec![0.0, 0.0]),
        Point(vec![-1.0, 1.0]),
        Point(vec![-x_half, x_half]),
    ]);
    CorpusEntry {
        id: "ex6-no-propertyB",
        subject: Subject::Relation(rel),
        expected: vec![
            exp(
                "property-b",
                ExpectedVerdict::Fails,
                "Example 6: lives on a domain without order bounds, so property B fails",
            ),
            exp(
                "archimedean",
                ExpectedVerdict::Holds,
                "Example 6: the relation is Archimedean and Wold-continuous",
            ),
            exp(
                "mixture-continuous",
                ExpectedVerdict::Fails,
                "Example 6: but not mixture continuous or continuous",
            ),
            exp(
                "wold-continuous",
                ExpectedVerdict::Holds,
                "Example 6: the relation is Archimedean and Wold-continuous",
            ),
        ],
        asserted: vec![],
        notes: "demonstrates the property-B necessity in the seven-way equivalence",
        checks: vec![
            CheckTask::Order(OrderProperty::Complete),
            CheckTask::Order(OrderProperty::Transitive),
            CheckTask::Monotone(Monotonicity::Weak),
            CheckTask::RelConvexity(RelationConvexity::ConvexUpperSections),
            CheckTask::Section,
            CheckTask::Linear,
            CheckTask::Mixture(Side::Both),
            CheckTask::ArchPlain(Side::Both),
            CheckTask::Density,
            CheckTask::Wold(WoldVariant::Weak),
            CheckTask::Wold(WoldVariant::Full),
            CheckTask::SetProperties,
        ],
    }
}

fn entry_ex7_parabola() -> CorpusEntry {
    let member = Arc::new(|p: &[f64]| -> bool {
        p[0] >= -1e-12
            && p[0] <= 1.0 + 1e-12
            && p[1] <= 1.0 + 1e-12
            && p[0] * p[0] <= p[1] + 1e-12
            && p[1] <= 2.0 * p[0] + 1e-12
    });
    let domain = Domain::oracle(MembershipOracle {
        name: "parabola-bounded".into(),
        member,
        declared_convex: true,
        bounding_box: (vec![0.0, 0.0], vec![1.0, 1.0]),
        declared_open: Some(false),
        declared_polyhedron: Some(false),
        declared_c_prime: Some(false),
    });
    CorpusEntry {
        id: "ex7-parabola",
        subject: Subject::Function {
            f: RealFunction::gp_swapped(),
            domain,
        },
        expected: vec![
            exp(
                "quasi-convex",
                ExpectedVerdict::Holds,
                "Example 7: quasi-convex and linearly continuous but not jointly continuous",
            ),
            exp(
                "linear-continuity",
                ExpectedVerdict::Holds,
                "Example 7: quasi-convex and linearly continuous but not jointly continuous",
            ),
            exp(
                "joint-continuity",
                ExpectedVerdict::Fails,
                "Example 7: quasi-convex and linearly continuous but not jointly continuous",
            ),
            exp(
                "property-c",
                ExpectedVerdict::Fails,
                "Example 7: the set is convex and closed but neither open nor a polyhedron, so property C fails",
            ),
        ],
        asserted: vec![],
        notes: "the closed parabola-bounded set between x2 = x1^2 and x2 = 2 x1",
        checks: vec![
            CheckTask::FnContinuity(ContinuityMode::Joint),
            CheckTask::FnContinuity(ContinuityMode::Linear),
            CheckTask::FnConvexity(ConvexityKind::QuasiConvex),
            CheckTask::SetProperties,
        ],
    }
}

fn entry_ex8_separate() -> CorpusEntry {
    CorpusEntry {
        id: "ex8-separate-quasiconcave",
        subject: Subject::Function {
            f: RealFunction::gp(),
            domain: Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]),
        },
        expected: vec![
            exp(
                "linear-continuity",
                ExpectedVerdict::Holds,
                "Example 8: quasi-concave in each variable separately and linearly continuous, but not jointly continuous",
            ),
            exp(
                "joint-continuity",
                ExpectedVerdict::Fails,
                "Example 8: quasi-concave in each variable separately and linearly continuous, but not jointly continuous",
            ),
            exp(
                "separate-quasi-concave",
                ExpectedVerdict::Holds,
                "Example 8: quasi-concave in each variable separately",
            ),
        ],
        asserted: vec![],
        notes: "index-wise quasi-concavity does not rescue the linear/joint equivalence",
        checks: vec![
            CheckTask::FnContinuity(ContinuityMode::Joint),
            CheckTask::FnContinuity(ContinuityMode::Linear),
            CheckTask::FnConvexity(ConvexityKind::QuasiConcave),
            CheckTask::SeparateQuasiConcave,
            CheckTask::SetProperties,
        ],
    }
}

fn entry_ex9_indicator() -> CorpusEntry {
    let in_curve = |p: &[f64]| -> bool {
        banded(p[1], p[0] * p[0]) && p[0] > 1e-12 && p[0] < 1.0 - 1e-12
    };
    let weak = Arc::new(move |x: &[f64], y: &[f64]| -> bool { in_curve(x) && in_curve(y) });
    let mut anchors: Vec<Point> = (1..100)
        .map(|k| {
            let t = k as f64 / 100.0;
            Point(vec![t, t * t])
        })
        .collect();
    anchors.push(Point(vec![0.0, 0.0]));
    anchors.push(Point(vec![1.0, 1.0]));
    let rel = Relation::from_predicate(
        "ex9-indicator-curve",
        Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]),
        "points compare exactly when both lie on the open parabola arc",
        weak,
    )
    .with_anchors(anchors);
    CorpusEntry {
        id: "ex9-indicator-curve",
        subject: Subject::Relation(rel),
        expected: vec![
            exp(
                "linear-continuous",
                ExpectedVerdict::Holds,
                "Example 9: linearly continuous, because sections meet every straight line in at most two points",
            ),
            exp(
                "continuous",
                ExpectedVerdict::Fails,
                "Example 9: the arc is not closed in the square, so the relation is not continuous",
            ),
        ],
        asserted: vec![],
        notes: "the printed definition is implemented as written: the relation is reflexive only on the arc",
        checks: vec![
            CheckTask::Order(OrderProperty::Complete),
            CheckTask::Order(OrderProperty::Reflexive),
            CheckTask::Order(OrderProperty::Transitive),
            CheckTask::RelConvexity(RelationConvexity::LocallyConvexUpperSections),
            CheckTask::Section,
            CheckTask::Linear,
            CheckTask::Mixture(Side::Both),
            CheckTask::SetProperties,
        ],
    }
}

fn entry_sin_reciprocal() -> CorpusEntry {
    let rel = Relation::from_utility(
        "sin-reciprocal-relation",
        Domain::boxed(vec![0.0], vec![1.0]),
        RealFunction::sin_reciprocal(1, 0),
    )
    .with_anchors(vec![Point(vec![sin_half_level()]), Point(vec![0.0]), Point(vec![1.0])]);
    CorpusEntry {
        id: "sin-reciprocal-relation",
        subject: Subject::Relation(rel),
        expected: vec![
            exp(
                "archimedean",
                ExpectedVerdict::Holds,
                "Benchmark (sin-reciprocal): Archimedean and weakly Wold-continuous",
            ),
            exp(
                "weak-wold-continuous",
                ExpectedVerdict::Holds,
                "Benchmark (sin-reciprocal): Archimedean and weakly Wold-continuous",
            ),
            exp(
                "mixture-continuous",
                ExpectedVerdict::Fails,
                "Benchmark (sin-reciprocal): its lower section at an intermediate point contains a sequence converging to 0 without its limit",
            ),
        ],
        asserted: vec![],
        notes: "desk-scaled window [0,1] of the half-line",
        checks: vec![
            CheckTask::Order(OrderProperty::Complete),
            CheckTask::Order(OrderProperty::Transitive),
            CheckTask::RelConvexity(RelationConvexity::ConvexUpperSections),
            CheckTask::Section,
            CheckTask::Linear,
            CheckTask::Mixture(Side::Both),
            CheckTask::ArchPlain(Side::Both),
            CheckTask::Density,
            CheckTask::Wold(WoldVariant::Weak),
            CheckTask::SetProperties,
        ],
    }
}

fn entry_two_class_threshold() -> CorpusEntry {
    let weak = Arc::new(|x: &[f64], y: &[f64]| -> bool {
        if banded(x[0], 0.5) || banded(y[0], 0.5) {
            return true;
        }
        let (xa, ya) = (x[0] < 0.5, y[0] < 0.5);
        xa == ya || (!xa && ya)
    });
    let rel = Relation::from_predicate(
        "two-class-threshold",
        Domain::boxed(vec![0.0], vec![1.0]),
        "two classes split at one half, with an everywhere-indifferent hinge",
        weak,
    )
    .with_anchors(vec![
        Point(vec![0.5]),
        Point(vec![0.25]),
        Point(vec![0.75]),
        Point(vec![0.0]),
        Point(vec![1.0]),
    ]);
    CorpusEntry {
        id: "two-class-threshold",
        subject: Subject::Relation(rel),
        expected: vec![
            exp(
                "closed-graph",
                ExpectedVerdict::Holds,
                "Benchmark (two-class-threshold): has closed graph",
            ),
            exp(
                "weak-wold-continuous",
                ExpectedVerdict::Fails,
                "Benchmark (two-class-threshold): there is no third point strictly below the bottom class, so it is not weakly Wold-continuous",
            ),
        ],
        asserted: vec![],
        notes: "the hinge point makes the relation complete but not transitive",
        checks: vec![
            CheckTask::Order(OrderProperty::Complete),
            CheckTask::Order(OrderProperty::Transitive),
            CheckTask::Graph,
            CheckTask::Mixture(Side::Both),
            CheckTask::Density,
            CheckTask::Wold(WoldVariant::Weak),
            CheckTask::SetProperties,
        ],
    }
}

/// Registered corpus ids, in canonical order.
pub fn corpus_ids() -> Vec<&'static str> {
    vec![
        "gp-function",
        "gp-relation",
        "ex1-disk",
        "ex2-monotone",
        "ex3-integer-additive",
        "ex4-locally-convex-set",
        "ex5-restriction",
        "ex6-no-propertyB",
        "ex7-parabola",
        "ex8-separate-quasiconcave",
        "ex9-indicator-curve",
        "sin-reciprocal-relation",
        "two-class-threshold",
    ]
}

/// Load one corpus entry by id.
pub fn load_example(id: &str) -> Result<CorpusEntry, CorpusError> {
    Ok(match id {
        "gp-function" => entry_gp_function(),
        "gp-relation" => entry_gp_relation(),
        "ex1-disk" => entry_ex1_disk(),
        "ex2-monotone" => entry_ex2_monotone(),
        "ex3-integer-additive" => entry_ex3_integer(),
        "ex4-locally-convex-set" => entry_ex4_locally_convex(),
        "ex5-restriction" => entry_ex5_restriction(),
        "ex6-no-propertyB" => entry_ex6_no_property_b(),
        "ex7-parabola" => entry_ex7_parabola(),
        "ex8-separate-quasiconcave" => entry_ex8_separate(),
        "ex9-indicator-curve" => entry_ex9_indicator(),
        "sin-reciprocal-relation" => entry_sin_reciprocal(),
        "two-class-threshold" => entry_two_class_threshold(),
        other => return Err(CorpusError::UnknownId(other.to_string())),
    })
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub property: String,
    pub expected: ExpectedVerdict,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub direct: BTreeMap<String, PropertyReport>,
    pub derived: DerivedProfile,
    pub asserted: Vec<String>,
    pub contradictions: Vec<Contradiction>,
    pub mismatches: Vec<Mismatch>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub pass: bool,
    pub entries: usize,
    pub mismatches: usize,
    pub contradictions: usize,
    pub unresolved: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub schema: String,
    pub toolkit_version: String,
    pub config_echo: CheckConfig,
    pub entries: Vec<EntryReport>,
    pub summary: CorpusSummary,
}

impl CorpusReport {
    /// Canonical content hash; the report carries no timestamps, so the hash
    /// covers the entire serialized document.
    pub fn canonical_hash(&self) -> String {
        let json = serde_json::to_string(self).expect("corpus report serializes");
        let mut hasher = Sha256::new();
        hasher.update(json.as_bytes());
        hex_string(&hasher.finalize())
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Run the entry's full check battery, then deduction closure and audit.
pub fn run_entry(entry: &CorpusEntry, cfg: &CheckConfig) -> EntryReport {
    let mut direct: BTreeMap<String, PropertyReport> = BTreeMap::new();
    let mut errors: Vec<String> = Vec::new();
    let mut asserted: BTreeSet<String> = entry.asserted.iter().cloned().collect();

    let record = |map: &mut BTreeMap<String, PropertyReport>, r: PropertyReport| {
        map.insert(r.property_id.clone(), r);
    };

    match &entry.subject {
        Subject::Function { f, domain } => {
            for task in &entry.checks {
                let result: Result<(), String> = (|| {
                    match task {
                        CheckTask::FnContinuity(mode) => {
                            let r = check_function_continuity(f, domain, *mode, cfg)
                                .map_err(|e| e.to_string())?;
                            record(&mut direct, r);
                        }
                        CheckTask::FnConvexity(kind) => {
                            let r = check_function_convexity(f, domain, *kind, cfg)
                                .map_err(|e| e.to_string())?;
                            record(&mut direct, r);
                        }
                        CheckTask::SeparateQuasiConcave => {
                            let r = separate_quasi_concavity(f, domain, cfg)
                                .map_err(|e| e.to_string())?;
                            record(&mut direct, r);
                        }
                        CheckTask::SetProperties => {
                            record_set_properties(domain, cfg, &mut direct);
                        }
                        other => {
                            return Err(format!(
                                "check {other:?} does not apply to a function subject"
                            ))
                        }
                    }
                    Ok(())
                })();
                if let Err(e) = result {
                    errors.push(e);
                }
            }
        }
        Subject::Relation(rel) => {
            if rel.domain.is_declared_cone() {
                asserted.insert("cone-domain".into());
            }
            for task in &entry.checks {
                let result: Result<(), String> = (|| {
                    match task {
                        CheckTask::Order(p) => {
                            record(&mut direct, check_order_property(rel, *p, cfg).map_err(|e| e.to_string())?);
                        }
                        CheckTask::RelConvexity(k) => {
                            record(&mut direct, check_convexity(rel, *k, cfg).map_err(|e| e.to_string())?);
                        }
                        CheckTask::Monotone(k) => {
                            record(&mut direct, check_monotonicity(rel, *k, cfg).map_err(|e| e.to_string())?);
                        }
                        CheckTask::Algebra(k) => {
                            record(&mut direct, check_algebraic(rel, *k, cfg).map_err(|e| e.to_string())?);
                        }
                        CheckTask::Density => {
                            record(&mut direct, check_order_density(rel, cfg).map_err(|e| e.to_string())?);
                        }
                        CheckTask::Section => {
                            let s = check_section_continuity(rel, cfg).map_err(|e| e.to_string())?;
                            for (_, r) in s.sub {
                                record(&mut direct, r);
                            }
                            record(&mut direct, s.combined);
                        }
                        CheckTask::Graph => {
                            let g = check_graph_continuity(rel, cfg).map_err(|e| e.to_string())?;
                            record(&mut direct, g.closed_graph);
                            record(&mut direct, g.open_strict_graph);
                            record(&mut direct, g.combined);
                        }
                        CheckTask::Linear => {
                            record(&mut direct, check_linear_continuity(rel, cfg).map_err(|e| e.to_string())?);
                        }
                        CheckTask::LinearProductSemantics => {
                            let r = linear_continuity_product_semantics(rel, cfg)
                                .map_err(|e| e.to_string())?;
                            record(&mut direct, r);
                        }
                        CheckTask::Mixture(side) => {
                            record(&mut direct, check_mixture_continuity(rel, *side, cfg).map_err(|e| e.to_string())?);
                        }
                        CheckTask::ArchPlain(side) => {
                            record(
                                &mut direct,
                                check_archimedean(rel, ArchimedeanVariant::Plain, *side, cfg)
                                    .map_err(|e| e.to_string())?,
                            );
                        }
                        CheckTask::ArchStrict(side) => {
                            record(
                                &mut direct,
                                check_archimedean(rel, ArchimedeanVariant::Strict, *side, cfg)
                                    .map_err(|e| e.to_string())?,
                            );
                        }
                        CheckTask::Wold(v) => {
                            record(&mut direct, check_wold(rel, *v, cfg).map_err(|e| e.to_string())?);
                        }
                        CheckTask::ArcStrong(k) => {
                            record(&mut direct, check_arc_and_strong(rel, *k, cfg).map_err(|e| e.to_string())?);
                        }
                        CheckTask::SetProperties => {
                            record_set_properties(&rel.domain, cfg, &mut direct);
                        }
                        other => {
                            return Err(format!(
                                "check {other:?} does not apply to a relation subject"
                            ))
                        }
                    }
                    Ok(())
                })();
                if let Err(e) = result {
                    errors.push(e);
                }
            }
        }
    }

    // Deduction: direct facts feed the profile, conditions established by
    // direct Holds verdicts or the recorded assertions, then closure + audit.
    if cfg.density_pattern == crate::core::DensityPattern::Between {
        asserted.insert("density-between".into());
    }
    let mut profile = DerivedProfile::new(entry.id);
    for (key, report) in &direct {
        if let Some(fact) = report_fact(entry, key) {
            let survived = report.witnesses.iter().any(|w| {
                w.robustness == crate::core::Robustness::SurvivedRefinement
            });
            profile.set_direct(fact, report.verdict, survived);
        }
    }
    let graph = build_graph();
    let derived = closure(graph, &profile, &asserted);
    let contradictions = audit(&derived, &direct);

    // Expectation comparison: anything other than the expected decisive
    // verdict (including Unresolved) is a mismatch.
    let mut mismatches = Vec::new();
    for expectation in &entry.expected {
        let actual = direct
            .get(&expectation.property)
            .map(|r| r.verdict)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "Missing".to_string());
        let matches = match expectation.expected {
            ExpectedVerdict::Holds => actual == "Holds",
            ExpectedVerdict::Fails => actual == "Fails",
        };
        if !matches {
            mismatches.push(Mismatch {
                property: expectation.property.clone(),
                expected: expectation.expected.clone(),
                actual,
            });
        }
    }

    EntryReport {
        id: entry.id.to_string(),
        direct,
        derived,
        asserted: asserted.into_iter().collect(),
        contradictions,
        mismatches,
        errors,
    }
}

fn record_set_properties(
    domain: &Domain,
    cfg: &CheckConfig,
    direct: &mut BTreeMap<String, PropertyReport>,
) {
    let profile = classify_set_properties(domain, cfg);
    let mk = |id: &str, v: Verdict| -> PropertyReport {
        match v {
            Verdict::Holds => PropertyReport::holds(id, 1, cfg),
            Verdict::Fails => PropertyReport::fails(
                id,
                vec![crate::core::Witness::new(vec![], vec![], "structural classification").survived()],
                1,
                cfg,
            ),
            Verdict::Unresolved(r) => PropertyReport::unresolved(id, r, 1, cfg),
        }
    };
    direct.insert("domain-open".into(), mk("domain-open", profile.is_open));
    direct.insert(
        "is-polyhedron".into(),
        mk("is-polyhedron", profile.is_polyhedron),
    );
    direct.insert("property-c".into(), mk("property-c", profile.property_c));
    direct.insert(
        "property-c-prime".into(),
        mk("property-c-prime", profile.property_c_prime),
    );
    direct.insert("property-b".into(), property_b_report(domain, cfg));
}

/// Map a report key to its deduction fact, entry-context aware (function
/// properties use the function fact namespace).
fn report_fact(entry: &CorpusEntry, key: &str) -> Option<FactId> {
    if matches!(entry.subject, Subject::Function { .. }) {
        match key {
            "joint-continuity" => return Some(FactId::FnJointContinuous),
            "linear-continuity" => return Some(FactId::FnLinearContinuous),
            "separate-continuity" => return Some(FactId::FnSeparateContinuous),
            "arc-continuity" => return Some(FactId::FnArcContinuous),
            "concave" => return Some(FactId::FnConcave),
            "convex" => return Some(FactId::FnConvex),
            "quasi-concave" => return Some(FactId::FnQuasiConcave),
            "quasi-convex" => return Some(FactId::FnQuasiConvex),
            _ => {}
        }
    }
    FactId::parse(key)
}

/// Index-wise quasi-concavity: the restriction along every axis-parallel
/// line must be quasi-concave.
fn separate_quasi_concavity(
    f: &RealFunction,
    domain: &Domain,
    cfg: &CheckConfig,
) -> Result<PropertyReport, crate::functions::FunctionError> {
    let tau = cfg.cmp_tolerance;
    let id = "separate-quasi-concave";
    let (lo, hi) = domain.bounding_box();
    let n = domain.dimension;
    let anchors = crate::geometry::member_catalog(domain, cfg);
    let m = cfg.lambda_resolution.min(101);
    let mut samples = 0usize;
    for anchor in anchors.iter().take(24) {
        for axis in 0..n {
            let line_pt = |t: f64| -> Vec<f64> {
                let mut q = anchor.clone();
                q[axis] = lo[axis] + t * (hi[axis] - lo[axis]);
                q
            };
            // Pairs of parameters along the line, lambda scanned between.
            for (a, b) in [(0.0, 1.0), (0.0, 0.5), (0.5, 1.0), (0.25, 0.75)] {
                let (pa, pb) = (line_pt(a), line_pt(b));
                if !domain.contains(&pa, tau)? || !domain.contains(&pb, tau)? {
                    continue;
                }
                let (Ok(fa), Ok(fb)) = (f.eval(&pa), f.eval(&pb)) else {
                    continue;
                };
                for k in 1..m - 1 {
                    samples += 1;
                    let lam = k as f64 / (m - 1) as f64;
                    let z = mix(&pa, &pb, lam);
                    let Ok(fz) = f.eval(&z) else { continue };
                    if fa.min(fb) - fz > 10.0 * tau {
                        let w = crate::core::Witness::new(
                            vec![pa.clone(), pb.clone(), z],
                            vec![lam],
                            format!("axis-{axis} restriction is not quasi-concave"),
                        )
                        .survived();
                        return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
                    }
                }
            }
        }
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

/// Linear continuity under the alternate product reading of restriction:
/// only reference points on the segment are considered.
fn linear_continuity_product_semantics(
    rel: &Relation,
    cfg: &CheckConfig,
) -> Result<PropertyReport, crate::relations::RelationError> {
    let tau = cfg.cmp_tolerance;
    let id = "linear-continuous-product-semantics";
    let segments = crate::geometry::sample_segments(&rel.domain, cfg.sample_count.min(120), cfg)?;
    let m = cfg.lambda_resolution;
    let mut samples = 0usize;
    for seg in &segments {
        // References on the segment only.
        let refs: Vec<Vec<f64>> = (0..9).map(|k| seg.at(k as f64 / 8.0)).collect();
        for x in &refs {
            samples += 1;
            let tests: [(&str, bool); 4] = [
                ("upper", true),
                ("lower", true),
                ("strict-upper", false),
                ("strict-lower", false),
            ];
            for (kind, closed) in tests {
                let member = |t: f64| -> Option<bool> {
                    let p = seg.at(t);
                    if !rel.domain.contains(&p, tau).unwrap_or(false) {
                        return None;
                    }
                    match kind {
                        "upper" => rel.weak(&p, x, tau).ok(),
                        "lower" => rel.weak(x, &p, tau).ok(),
                        "strict-upper" => rel.strict(&p, x, tau).ok(),
                        _ => rel.strict(x, &p, tau).ok(),
                    }
                };
                let hit = if closed {
                    crate::continuity::lambda_closed_violation(&member, m)
                } else {
                    crate::continuity::lambda_open_violation(&member, m)
                };
                if let Some((t, _)) = hit {
                    let w = crate::core::Witness::new(
                        vec![seg.y.0.clone(), seg.x.0.clone(), x.clone(), seg.at(t)],
                        vec![t],
                        format!("product-restricted {kind} section violated its requirement"),
                    )
                    .survived();
                    return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
                }
            }
        }
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

/// Run the corpus (or a subset) at one configuration.
pub fn run_corpus(cfg: &CheckConfig, subset: Option<&[String]>) -> Result<CorpusReport, CorpusError> {
    let ids: Vec<String> = match subset {
        Some(list) => {
            for id in list {
                load_example(id)?;
            }
            list.to_vec()
        }
        None => corpus_ids().iter().map(|s| s.to_string()).collect(),
    };
    let mut entries = Vec::new();
    for id in &ids {
        let entry = load_example(id)?;
        entries.push(run_entry(&entry, cfg));
    }
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    let mismatches: usize = entries.iter().map(|e| e.mismatches.len()).sum();
    let contradictions: usize = entries.iter().map(|e| e.contradictions.len()).sum();
    let errors: usize = entries.iter().map(|e| e.errors.len()).sum();
    let unresolved: usize = entries
        .iter()
        .flat_map(|e| e.direct.values())
        .filter(|r| !r.verdict.is_decisive())
        .count();
    let summary = CorpusSummary {
        pass: mismatches == 0 && contradictions == 0 && errors == 0,
        entries: entries.len(),
        mismatches,
        contradictions,
        unresolved,
        errors,
    };
    Ok(CorpusReport {
        schema: "continlab/1".to_string(),
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        config_echo: cfg.clone(),
        entries,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete_and_cited() {
        for id in corpus_ids() {
            let entry = load_example(id).unwrap();
            assert_eq!(entry.id, id);
            assert!(!entry.expected.is_empty(), "{id} has no expectations");
            for e in &entry.expected {
                assert!(
                    !e.citation.is_empty(),
                    "{id}/{} lacks a citation",
                    e.property
                );
                // The citation's locator must appear in the registry.
                let locator = e.citation.split(':').next().unwrap();
                assert!(
                    EXAMPLE_REGISTRY.contains(locator),
                    "{id}/{}: locator '{locator}' not in the registry",
                    e.property
                );
            }
        }
    }

    #[test]
    fn disk_relation_compares_classes_as_documented() {
        let entry = load_example("ex1-disk").unwrap();
        let Subject::Relation(rel) = &entry.subject else {
            panic!("ex1 must be a relation");
        };
        let tau = 1e-9;
        use crate::relations::Comparison;
        // Left-class point strictly beats right-class point.
        assert_eq!(
            rel.compare(&[-0.5, 0.0], &[0.5, 0.0], tau).unwrap(),
            Comparison::Strict
        );
        // Two points of the left class are incomparable.
        assert_eq!(
            rel.compare(&[-0.5, 0.1], &[-0.5, -0.1], tau).unwrap(),
            Comparison::Incomparable
        );
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert!(matches!(
            load_example("nope"),
            Err(CorpusError::UnknownId(_))
        ));
    }

    #[test]
    fn gp_function_entry_loads_with_arity_two() {
        let entry = load_example("gp-function").unwrap();
        match &entry.subject {
            Subject::Function { f, domain } => {
                assert_eq!(f.arity, 2);
                assert_eq!(domain.dimension, 2);
                let (lo, hi) = domain.bounding_box();
                assert_eq!(lo, vec![-1.0, -1.0]);
                assert_eq!(hi, vec![1.0, 1.0]);
            }
            _ => panic!("gp-function must be a function subject"),
        }
    }

    #[test]
    fn subset_run_produces_single_entry_report() {
        let cfg = CheckConfig {
            grid_resolution: 41,
            lambda_resolution: 81,
            sample_count: 40,
            ..CheckConfig::default()
        };
        let report = run_corpus(&cfg, Some(&["ex4-locally-convex-set".to_string()])).unwrap();
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].id, "ex4-locally-convex-set");
        assert_eq!(report.schema, "continlab/1");
    }

    #[test]
    fn coarse_config_yields_unresolved_somewhere() {
        // Absurdly coarse lambda grid: exhausting a three-point search is
        // not evidence of nonexistence, so the Archimedean checker reports
        // Unresolved instead of faking a decisive verdict.
        let cfg = CheckConfig {
            grid_resolution: 9,
            lambda_resolution: 3,
            sample_count: 4,
            ..CheckConfig::default()
        };
        let report = run_corpus(&cfg, Some(&["ex2-monotone".to_string()])).unwrap();
        assert!(
            report.summary.unresolved > 0,
            "coarse run should leave verdicts unresolved: {:?}",
            report.summary
        );
    }
}
