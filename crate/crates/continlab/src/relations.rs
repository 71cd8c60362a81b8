//! Binary-relation representations, the order-property table, the restriction
//! operator, and the convexity / monotonicity / algebraic postulates.
//!
//! One comparison slack `tau` governs utility comparison and indifference
//! width, so indifference is an interval relation; universal quantified tests
//! evaluate premises at slack `tau` and flag a violation only when the
//! conclusion fails a `2 tau` guard band, which blocks tolerance-chaining
//! false negatives.

use crate::core::{CheckConfig, PropertyReport, UnresolvedReason, Witness};
use crate::functions::RealFunction;
use crate::geometry::{
    member_catalog, mix, sample_segments, Domain, GeometryError, Point, Segment,
};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RelationError {
    #[error("point is outside the relation's domain")]
    OutsideDomain,
    #[error("additivity and homotheticity need a declared convex cone domain")]
    ConeDomainRequired,
    #[error("restriction set does not intersect the domain")]
    EmptyRestriction,
    #[error("point not present in the tabulated relation")]
    TabulatedLookup,
    #[error("unknown property id '{0}'")]
    UnknownProperty(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Function(#[from] crate::functions::FunctionError),
}

/// Classification of an ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Strict,
    StrictReversed,
    Indifferent,
    Incomparable,
}

/// Shared weak-relation oracle closure: `W(x, y)` is true when `x` is
/// weakly preferred to `y`.
pub type WeakFn = Arc<dyn Fn(&[f64], &[f64]) -> bool + Send + Sync>;

/// A point pair drawn for a quantified test.
pub type PointPair = (Vec<f64>, Vec<f64>);

/// Weak-relation oracle `W(x, y)` meaning `x` is weakly preferred to `y`.
#[derive(Clone)]
pub struct WeakPredicate {
    pub name: String,
    pub weak: WeakFn,
}

impl std::fmt::Debug for WeakPredicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WeakPredicate({})", self.name)
    }
}

/// A parameterized probe curve supplied with a relation; used as an extra
/// deterministic stratum when phenomena live on measure-zero sets (a circle
/// boundary, a parabola) that grids and random samples cannot hit.
#[derive(Clone)]
pub struct ProbeArc {
    pub label: String,
    pub map: Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>,
}

impl std::fmt::Debug for ProbeArc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ProbeArc({})", self.label)
    }
}

impl ProbeArc {
    pub fn at(&self, t: f64) -> Vec<f64> {
        (self.map)(t)
    }
}

#[derive(Debug, Clone)]
pub enum RelationVariant {
    /// `x >= y` iff `u(x) >= u(y) - tau`; complete by construction.
    UtilityInduced(RealFunction),
    /// Weak-relation oracle with derived strict / indifferent / incomparable
    /// parts.
    PredicatePair(WeakPredicate),
    /// Finite tabulation: `matrix[i][j]` is `W(points[i], points[j])`.
    Tabulated {
        points: Vec<Point>,
        matrix: Vec<Vec<bool>>,
    },
}

/// A binary relation on a convex domain.
#[derive(Debug, Clone)]
pub struct Relation {
    pub id: String,
    pub domain: Domain,
    pub variant: RelationVariant,
    /// Deterministic probe points folded into every sampling stratum.
    pub anchors: Vec<Point>,
    /// Deterministic probe curves for boundary phenomena.
    pub probe_arcs: Vec<ProbeArc>,
}

impl Relation {
    pub fn from_utility(id: impl Into<String>, domain: Domain, u: RealFunction) -> Self {
        Relation {
            id: id.into(),
            domain,
            variant: RelationVariant::UtilityInduced(u),
            anchors: Vec::new(),
            probe_arcs: Vec::new(),
        }
    }

    pub fn from_predicate(
        id: impl Into<String>,
        domain: Domain,
        name: impl Into<String>,
        weak: WeakFn,
    ) -> Self {
        Relation {
            id: id.into(),
            domain,
            variant: RelationVariant::PredicatePair(WeakPredicate {
                name: name.into(),
                weak,
            }),
            anchors: Vec::new(),
            probe_arcs: Vec::new(),
        }
    }

    pub fn tabulated(
        id: impl Into<String>,
        domain: Domain,
        points: Vec<Point>,
        matrix: Vec<Vec<bool>>,
    ) -> Self {
        Relation {
            id: id.into(),
            domain,
            variant: RelationVariant::Tabulated { points, matrix },
        anchors: Vec::new(),
            probe_arcs: Vec::new(),
        }
    }

    pub fn with_anchors(mut self, anchors: Vec<Point>) -> Self {
        self.anchors = anchors;
        self
    }

    pub fn with_probe_arcs(mut self, arcs: Vec<ProbeArc>) -> Self {
        self.probe_arcs = arcs;
        self
    }

    /// The weak relation `x >= y` with an explicit margin substituted for the
    /// configured slack (utility representations only; oracles are exact).
    pub fn weak_with_margin(&self, x: &[f64], y: &[f64], margin: f64) -> Result<bool, RelationError> {
        match &self.variant {
            RelationVariant::UtilityInduced(u) => {
                Ok(u.eval(x)? >= u.eval(y)? - margin)
            }
            RelationVariant::PredicatePair(p) => Ok((p.weak)(x, y)),
            RelationVariant::Tabulated { points, matrix } => {
                let i = self.tab_index(points, x)?;
                let j = self.tab_index(points, y)?;
                Ok(matrix[i][j])
            }
        }
    }

    fn tab_index(&self, points: &[Point], p: &[f64]) -> Result<usize, RelationError> {
        let tol = 1e-9 * self.domain.scale().max(1.0);
        points
            .iter()
            .position(|q| q.0.iter().zip(p).all(|(a, b)| (a - b).abs() <= tol))
            .ok_or(RelationError::TabulatedLookup)
    }

    /// `x >= y` at the configured slack.
    pub fn weak(&self, x: &[f64], y: &[f64], tau: f64) -> Result<bool, RelationError> {
        self.weak_with_margin(x, y, tau)
    }

    /// Classify an ordered pair; exactly one of the four outcomes holds.
    pub fn compare(&self, x: &[f64], y: &[f64], tau: f64) -> Result<Comparison, RelationError> {
        if !self.domain.contains(x, tau)? || !self.domain.contains(y, tau)? {
            return Err(RelationError::OutsideDomain);
        }
        let xy = self.weak(x, y, tau)?;
        let yx = self.weak(y, x, tau)?;
        Ok(match (xy, yx) {
            (true, true) => Comparison::Indifferent,
            (true, false) => Comparison::Strict,
            (false, true) => Comparison::StrictReversed,
            (false, false) => Comparison::Incomparable,
        })
    }

    /// Strict preference `x > y` at the configured slack.
    pub fn strict(&self, x: &[f64], y: &[f64], tau: f64) -> Result<bool, RelationError> {
        Ok(self.weak(x, y, tau)? && !self.weak(y, x, tau)?)
    }

    /// Indifference `x ~ y` at the configured slack.
    pub fn indiff(&self, x: &[f64], y: &[f64], tau: f64) -> Result<bool, RelationError> {
        Ok(self.weak(x, y, tau)? && self.weak(y, x, tau)?)
    }
}

// ---------------------------------------------------------------------------
// Restriction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum RestrictionSet {
    Domain(Domain),
    Segment(Segment),
}

impl RestrictionSet {
    fn contains(&self, p: &[f64], tau: f64) -> bool {
        match self {
            RestrictionSet::Domain(d) => d.contains(p, tau).unwrap_or(false),
            RestrictionSet::Segment(s) => {
                // Project onto the segment and accept points within slack.
                let d = crate::geometry::mix(&s.x.0, &s.y.0, 1.0);
                let dir: Vec<f64> = d.iter().zip(&s.y.0).map(|(a, b)| a - b).collect();
                let len2: f64 = dir.iter().map(|c| c * c).sum();
                if len2 == 0.0 {
                    return false;
                }
                let t: f64 = p
                    .iter()
                    .zip(&s.y.0)
                    .zip(&dir)
                    .map(|((pi, yi), di)| (pi - yi) * di)
                    .sum::<f64>()
                    / len2;
                if !(-tau..=1.0 + tau).contains(&t) {
                    return false;
                }
                let proj = s.at(t.clamp(0.0, 1.0));
                proj.iter().zip(p).all(|(a, b)| (a - b).abs() <= 1e-7)
            }
        }
    }
}

/// A relation restricted to a set `S`: upper and lower sections of *every*
/// `x` in the full domain are intersected with `S`.  This is distinct from
/// intersecting the relation with `S x S`, which drops reference points
/// outside `S`; the `product_semantics` flag selects the alternate reading.
#[derive(Debug, Clone)]
pub struct RestrictedRelation {
    pub base: Relation,
    pub set: RestrictionSet,
    pub product_semantics: bool,
}

/// Restrict a relation to a segment or sub-domain.
pub fn restrict(
    rel: &Relation,
    set: RestrictionSet,
    cfg: &CheckConfig,
) -> Result<RestrictedRelation, RelationError> {
    let tau = cfg.cmp_tolerance;
    let intersects = match &set {
        RestrictionSet::Segment(s) => {
            rel.domain.contains(&s.x.0, tau)? || rel.domain.contains(&s.y.0, tau)?
        }
        RestrictionSet::Domain(d) => {
            let probes = member_catalog(d, cfg);
            probes
                .iter()
                .any(|p| rel.domain.contains(p, tau).unwrap_or(false))
        }
    };
    if !intersects {
        return Err(RelationError::EmptyRestriction);
    }
    Ok(RestrictedRelation {
        base: rel.clone(),
        set,
        product_semantics: false,
    })
}

impl RestrictedRelation {
    pub fn with_product_semantics(mut self) -> Self {
        self.product_semantics = true;
        self
    }

    /// Is `y` in the restricted upper section at `x`?
    pub fn in_upper_section(&self, x: &[f64], y: &[f64], tau: f64) -> Result<bool, RelationError> {
        if self.product_semantics && !self.set.contains(x, tau) {
            return Ok(false);
        }
        Ok(self.set.contains(y, tau) && self.base.weak(y, x, tau)?)
    }

    /// Is `y` in the restricted lower section at `x`?
    pub fn in_lower_section(&self, x: &[f64], y: &[f64], tau: f64) -> Result<bool, RelationError> {
        if self.product_semantics && !self.set.contains(x, tau) {
            return Ok(false);
        }
        Ok(self.set.contains(y, tau) && self.base.weak(x, y, tau)?)
    }
}

// ---------------------------------------------------------------------------
// Sampling pools
// ---------------------------------------------------------------------------

/// Deterministic sampling pool: catalog, anchors, seeded members.
pub fn sampling_pool(rel: &Relation, cfg: &CheckConfig) -> Vec<Vec<f64>> {
    relation_pool(rel, cfg, "sampling-pool", 32)
}

/// Deterministic catalog plus anchors plus seeded members.  Long anchor
/// lists (dense boundary enumerations) are capped here; checkers that need
/// them all read `rel.anchors` directly.
pub(crate) fn relation_pool(rel: &Relation, cfg: &CheckConfig, label: &str, seeded: usize) -> Vec<Vec<f64>> {
    let mut pool = member_catalog(&rel.domain, cfg);
    for a in rel.anchors.iter().take(32) {
        if rel.domain.contains(&a.0, cfg.cmp_tolerance).unwrap_or(false)
            && pool.iter().all(|p| p != &a.0)
        {
            pool.push(a.0.clone());
        }
    }
    pool.extend(crate::geometry::seeded_members(&rel.domain, cfg, label, seeded));
    pool
}

fn pair_stream(pool: &[Vec<f64>], budget: usize) -> impl Iterator<Item = (&[f64], &[f64])> {
    let len = pool.len();
    (1..len)
        .flat_map(move |off| (0..len - off).map(move |i| (&pool[i][..], &pool[i + off][..])))
        .take(budget)
}

// ---------------------------------------------------------------------------
// Order properties (Table 1)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderProperty {
    Reflexive,
    NonTrivial,
    Complete,
    Symmetric,
    Asymmetric,
    AntiSymmetric,
    Transitive,
    NegativelyTransitive,
    SemiTransitive,
}

impl OrderProperty {
    pub fn id(&self) -> &'static str {
        match self {
            OrderProperty::Reflexive => "reflexive",
            OrderProperty::NonTrivial => "non-trivial",
            OrderProperty::Complete => "complete",
            OrderProperty::Symmetric => "symmetric",
            OrderProperty::Asymmetric => "asymmetric",
            OrderProperty::AntiSymmetric => "anti-symmetric",
            OrderProperty::Transitive => "transitive",
            OrderProperty::NegativelyTransitive => "negatively-transitive",
            OrderProperty::SemiTransitive => "semi-transitive",
        }
    }

    pub fn parse(s: &str) -> Option<OrderProperty> {
        Some(match s {
            "reflexive" => OrderProperty::Reflexive,
            "non-trivial" => OrderProperty::NonTrivial,
            "complete" => OrderProperty::Complete,
            "symmetric" => OrderProperty::Symmetric,
            "asymmetric" => OrderProperty::Asymmetric,
            "anti-symmetric" => OrderProperty::AntiSymmetric,
            "transitive" => OrderProperty::Transitive,
            "negatively-transitive" => OrderProperty::NegativelyTransitive,
            "semi-transitive" => OrderProperty::SemiTransitive,
            _ => return None,
        })
    }
}

/// Evaluate one quantified order property over seeded tuples.  Existential
/// properties report Holds on the first witness and Unresolved on
/// exhaustion; universal ones report Fails on the first guarded
/// counterexample.
pub fn check_order_property(
    rel: &Relation,
    prop: OrderProperty,
    cfg: &CheckConfig,
) -> Result<PropertyReport, RelationError> {
    let tau = cfg.cmp_tolerance;
    let guard = 2.0 * tau;
    let pool = relation_pool(rel, cfg, &format!("order-{}", prop.id()), 48);
    let id = prop.id();
    let mut samples = 0usize;

    let fail = |pts: Vec<Vec<f64>>, desc: String, samples: usize| {
        let w = Witness::new(pts, vec![], desc).survived();
        Ok(PropertyReport::fails(id, vec![w], samples, cfg))
    };

    match prop {
        OrderProperty::Reflexive => {
            for x in &pool {
                samples += 1;
                if !rel.weak_with_margin(x, x, guard)? {
                    return fail(vec![x.clone()], "x is not weakly preferred to itself".into(), samples);
                }
            }
        }
        OrderProperty::NonTrivial => {
            for (x, y) in pair_stream(&pool, cfg.sample_count * 4) {
                samples += 1;
                if rel.strict(x, y, tau)? || rel.strict(y, x, tau)? {
                    return Ok(PropertyReport::holds(id, samples, cfg)
                        .with_note("witnessed a strictly ranked pair"));
                }
            }
            return Ok(PropertyReport::unresolved(
                id,
                UnresolvedReason::InsufficientSamples,
                samples,
                cfg,
            )
            .with_note("no strictly ranked pair found; non-triviality is existential"));
        }
        OrderProperty::Complete => {
            for (x, y) in pair_stream(&pool, cfg.sample_count * 4) {
                samples += 1;
                // Generous disjunction: flag only when both directions fail
                // even at the widened slack.
                if !rel.weak_with_margin(x, y, guard)? && !rel.weak_with_margin(y, x, guard)? {
                    return fail(
                        vec![x.to_vec(), y.to_vec()],
                        "incomparable pair".into(),
                        samples,
                    );
                }
            }
        }
        OrderProperty::Symmetric => {
            for (x, y) in pair_stream(&pool, cfg.sample_count * 4) {
                samples += 1;
                if rel.weak(x, y, tau)? && !rel.weak_with_margin(y, x, guard)? {
                    return fail(vec![x.to_vec(), y.to_vec()], "weak preference does not reverse".into(), samples);
                }
            }
        }
        OrderProperty::Asymmetric => {
            for (x, y) in pair_stream(&pool, cfg.sample_count * 4) {
                samples += 1;
                if rel.weak(x, y, tau)? && rel.weak_with_margin(y, x, -guard)? {
                    return fail(vec![x.to_vec(), y.to_vec()], "both directions hold".into(), samples);
                }
            }
        }
        OrderProperty::AntiSymmetric => {
            let sep = 1e-7 * rel.domain.scale();
            for (x, y) in pair_stream(&pool, cfg.sample_count * 4) {
                samples += 1;
                let far = x.iter().zip(y).any(|(a, b)| (a - b).abs() > sep);
                if far && rel.weak_with_margin(x, y, 0.0)? && rel.weak_with_margin(y, x, 0.0)? {
                    return fail(
                        vec![x.to_vec(), y.to_vec()],
                        "distinct mutually preferred pair".into(),
                        samples,
                    );
                }
            }
        }
        OrderProperty::Transitive
        | OrderProperty::NegativelyTransitive
        | OrderProperty::SemiTransitive => {
            let budget = cfg.sample_count * 4;
            'triples: for i in 0..pool.len() {
                for j in 0..pool.len() {
                    for k in 0..pool.len() {
                        if i == j || j == k || i == k {
                            continue;
                        }
                        if samples >= budget {
                            break 'triples;
                        }
                        samples += 1;
                        let (x, y, z) = (&pool[i], &pool[j], &pool[k]);
                        match prop {
                            OrderProperty::Transitive => {
                                if rel.weak(x, y, tau)?
                                    && rel.weak(y, z, tau)?
                                    && !rel.weak_with_margin(x, z, guard)?
                                {
                                    return fail(
                                        vec![x.clone(), y.clone(), z.clone()],
                                        "transitivity chain broken".into(),
                                        samples,
                                    );
                                }
                            }
                            OrderProperty::NegativelyTransitive => {
                                if !rel.weak(x, y, tau)?
                                    && !rel.weak(y, z, tau)?
                                    && rel.weak_with_margin(x, z, -guard)?
                                {
                                    return fail(
                                        vec![x.clone(), y.clone(), z.clone()],
                                        "negative transitivity broken".into(),
                                        samples,
                                    );
                                }
                            }
                            OrderProperty::SemiTransitive => {
                                let first = rel.strict(x, y, tau)? && rel.indiff(y, z, tau)?;
                                let second = rel.indiff(x, y, tau)? && rel.strict(y, z, tau)?;
                                if (first || second) && !strict_generous(rel, x, z, tau)? {
                                    return fail(
                                        vec![x.clone(), y.clone(), z.clone()],
                                        "semi-transitivity broken".into(),
                                        samples,
                                    );
                                }
                            }
                            _ => unreachable!(),
                        }
                    }
                }
            }
        }
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

/// Strict conclusion with the guard band: reject only if even the widened
/// reading fails.
fn strict_generous(rel: &Relation, x: &[f64], y: &[f64], tau: f64) -> Result<bool, RelationError> {
    match &rel.variant {
        RelationVariant::UtilityInduced(u) => Ok(u.eval(x)? > u.eval(y)? - tau),
        _ => rel.strict(x, y, tau),
    }
}

// ---------------------------------------------------------------------------
// Convexity of a relation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationConvexity {
    ConvexUpperSections,
    ConvexIndifference,
    StarConvex,
    StrictlyStarConvex,
    LocallyConvexUpperSections,
}

impl RelationConvexity {
    pub fn id(&self) -> &'static str {
        match self {
            RelationConvexity::ConvexUpperSections => "convex-upper-sections",
            RelationConvexity::ConvexIndifference => "convex-indifference",
            RelationConvexity::StarConvex => "star-convex",
            RelationConvexity::StrictlyStarConvex => "strictly-star-convex",
            RelationConvexity::LocallyConvexUpperSections => "locally-convex-upper-sections",
        }
    }
}

/// Mine indifferent pairs: direct scan of the pool, then bisection along
/// segments whose endpoints straddle an indifference class (utility case).
fn mine_indifferent_pairs(
    rel: &Relation,
    cfg: &CheckConfig,
    budget: usize,
) -> Result<Vec<PointPair>, RelationError> {
    let tau = cfg.cmp_tolerance;
    let pool = relation_pool(rel, cfg, "indifference-mining", 48);
    let mut pairs = Vec::new();
    for (x, y) in pair_stream(&pool, cfg.sample_count * 4) {
        if pairs.len() >= budget {
            return Ok(pairs);
        }
        if rel.indiff(x, y, tau)? && x != y {
            pairs.push((x.to_vec(), y.to_vec()));
        }
    }
    if let RelationVariant::UtilityInduced(u) = &rel.variant {
        // Bisect u along catalog segments to land two points on a common
        // level set, then pair points from different segments.
        let mut level_points: Vec<(f64, Vec<f64>)> = Vec::new();
        let segments = sample_segments(&rel.domain, 24.min(cfg.sample_count), cfg)?;
        let targets: Vec<f64> = pool
            .iter()
            .take(8)
            .filter_map(|p| u.eval(p).ok())
            .collect();
        for target in targets {
            for seg in &segments {
                let (Ok(a), Ok(b)) = (u.eval(&seg.y.0), u.eval(&seg.x.0)) else {
                    continue;
                };
                if (a - target) * (b - target) > 0.0 {
                    continue;
                }
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                let (mut flo, _fhi) = (a - target, b - target);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    let fm = match u.eval(&seg.at(mid)) {
                        Ok(v) => v - target,
                        Err(_) => break,
                    };
                    if fm.abs() <= tau * 0.5 {
                        lo = mid;
                        hi = mid;
                        break;
                    }
                    if (fm > 0.0) == (flo > 0.0) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                let p = seg.at(0.5 * (lo + hi));
                if let Ok(v) = u.eval(&p) {
                    if (v - target).abs() <= tau * 0.5 {
                        level_points.push((target, p));
                    }
                }
            }
        }
        for i in 0..level_points.len() {
            for j in (i + 1)..level_points.len() {
                if pairs.len() >= budget {
                    return Ok(pairs);
                }
                let (ta, pa) = &level_points[i];
                let (tb, pb) = &level_points[j];
                if (ta - tb).abs() <= tau * 0.5
                    && pa != pb
                    && rel.indiff(pa, pb, tau).unwrap_or(false)
                {
                    pairs.push((pa.clone(), pb.clone()));
                }
            }
        }
    }
    Ok(pairs)
}

/// Convexity postulates for relations.
pub fn check_convexity(
    rel: &Relation,
    kind: RelationConvexity,
    cfg: &CheckConfig,
) -> Result<PropertyReport, RelationError> {
    let tau = cfg.cmp_tolerance;
    let id = kind.id();
    let m = cfg.lambda_resolution.min(101);
    let lambdas: Vec<f64> = (1..m - 1).map(|k| k as f64 / (m - 1) as f64).collect();
    let pool = relation_pool(rel, cfg, &format!("convexity-{id}"), 48);
    let mut samples = 0usize;

    match kind {
        RelationConvexity::ConvexUpperSections => {
            for x in pool.iter().take(24) {
                let section: Vec<&Vec<f64>> = pool
                    .iter()
                    .filter(|y| rel.weak(y, x, tau).unwrap_or(false))
                    .collect();
                for i in 0..section.len() {
                    for j in (i + 1)..section.len() {
                        for &lambda in &lambdas {
                            samples += 1;
                            let z = mix(section[i], section[j], lambda);
                            if !rel.domain.contains(&z, tau)? {
                                continue;
                            }
                            if !rel.weak_with_margin(&z, x, 2.0 * tau)? {
                                let w = Witness::new(
                                    vec![x.clone(), section[i].clone(), section[j].clone(), z],
                                    vec![lambda],
                                    "mixture of two upper-section members left the section",
                                )
                                .survived();
                                return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
                            }
                        }
                    }
                }
            }
        }
        RelationConvexity::StarConvex => {
            for (x, y) in pair_stream(&pool, cfg.sample_count) {
                if !rel.weak(x, y, tau)? {
                    continue;
                }
                for &lambda in &lambdas {
                    samples += 1;
                    let z = mix(x, y, lambda);
                    if !rel.domain.contains(&z, tau)? {
                        continue;
                    }
                    if !rel.weak_with_margin(&z, y, 2.0 * tau)? {
                        let w = Witness::new(
                            vec![x.to_vec(), y.to_vec(), z],
                            vec![lambda],
                            "mixture toward a weakly worse point fell below it",
                        )
                        .survived();
                        return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
                    }
                }
            }
        }
        RelationConvexity::ConvexIndifference | RelationConvexity::StrictlyStarConvex => {
            let pairs = mine_indifferent_pairs(rel, cfg, 32)?;
            if pairs.is_empty() {
                return Ok(PropertyReport::unresolved(
                    id,
                    UnresolvedReason::InsufficientSamples,
                    samples,
                    cfg,
                )
                .with_note("no indifferent pairs could be mined"));
            }
            for (x, y) in &pairs {
                for &lambda in &lambdas {
                    samples += 1;
                    let z = mix(x, y, lambda);
                    if !rel.domain.contains(&z, tau)? {
                        continue;
                    }
                    let ok = match kind {
                        RelationConvexity::ConvexIndifference => {
                            // x ~ y implies x ~ x lambda y, with the guard.
                            indiff_generous(rel, x, &z, tau)?
                        }
                        _ => strict_generous(rel, &z, y, tau)?,
                    };
                    if !ok {
                        let w = Witness::new(
                            vec![x.clone(), y.clone(), z],
                            vec![lambda],
                            match kind {
                                RelationConvexity::ConvexIndifference => {
                                    "mixture of an indifferent pair left the indifference class"
                                }
                                _ => "mixture of an indifferent pair is not strictly better",
                            },
                        )
                        .survived();
                        return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
                    }
                }
            }
        }
        RelationConvexity::LocallyConvexUpperSections => {
            let scale = rel.domain.scale();
            // Anchor references first: section structures often live on the
            // measure-zero sets the anchors mark.
            let refs: Vec<&Vec<f64>> = rel
                .anchors
                .iter()
                .map(|a| &a.0)
                .filter(|a| rel.domain.contains(a, tau).unwrap_or(false))
                .take(4)
                .chain(pool.iter().take(8))
                .collect();
            let basis = crate::geometry::affine_basis(&rel.domain, cfg)?;
            let chart = crate::geometry::chart_directions(&rel.domain, &basis);
            let mut dirs: Vec<Vec<f64>> = Vec::new();
            for d in &chart {
                dirs.push(d.clone());
                dirs.push(d.iter().map(|c| -c).collect());
            }
            for i in 0..chart.len() {
                for j in (i + 1)..chart.len() {
                    for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        dirs.push(
                            chart[i]
                                .iter()
                                .zip(&chart[j])
                                .map(|(a, b)| (si * a + sj * b) / std::f64::consts::SQRT_2)
                                .collect(),
                        );
                    }
                }
            }
            let curves = crate::functions::anchored_curves(&dirs);
            let mut closure_pts: Vec<Vec<f64>> = rel.anchors.iter().map(|a| a.0.clone()).collect();
            closure_pts.extend(pool.iter().take(8).cloned());
            for x in refs {
                let in_section = |p: &[f64]| -> bool {
                    rel.domain.contains(p, tau).unwrap_or(false)
                        && rel.weak(p, x, tau).unwrap_or(false)
                };
                'closure: for p in &closure_pts {
                    // Violation only if every shrinking neighborhood of p
                    // that contains a testable section pair meets the
                    // section non-convexly, with at least three such scales.
                    let mut witness: Option<Witness> = None;
                    let mut tested_levels = 0usize;
                    for level in 0..10 {
                        let rho = scale * 0.2 / (1u64 << level) as f64;
                        let mut cand_pairs: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
                        // Anchor-symmetric pairs catch on-grid gap points.
                        let anchors_near: Vec<&Point> = rel
                            .anchors
                            .iter()
                            .filter(|a| {
                                a.0.iter()
                                    .zip(p)
                                    .map(|(ai, pi)| (ai - pi).abs())
                                    .fold(0.0, f64::max)
                                    <= rho
                            })
                            .collect();
                        for a in &anchors_near {
                            for step in [rho * 0.25, rho * 0.1, rho * 0.02] {
                                for dim in 0..a.0.len() {
                                    let mut lo = a.0.clone();
                                    let mut hi = a.0.clone();
                                    lo[dim] -= step;
                                    hi[dim] += step;
                                    cand_pairs.push((lo, hi));
                                }
                            }
                        }
                        // Distinct-anchor pairs catch curve-shaped sections.
                        for i in 0..anchors_near.len().min(12) {
                            for j in (i + 1)..anchors_near.len().min(12) {
                                cand_pairs
                                    .push((anchors_near[i].0.clone(), anchors_near[j].0.clone()));
                            }
                        }
                        // Curve pairs reach sliver-shaped sections anchored
                        // at p itself (power-curve tangencies).
                        for t_frac in [0.7, 0.4] {
                            let t = rho * t_frac;
                            for i in 0..curves.len() {
                                for j in 0..curves.len() {
                                    if i == j {
                                        continue;
                                    }
                                    cand_pairs.push((curves[i].at(p, t), curves[j].at(p, t)));
                                }
                            }
                        }
                        let mut violated = false;
                        let mut level_had_pair = false;
                        for (lo_p, hi_p) in &cand_pairs {
                            samples += 1;
                            if !in_section(lo_p) || !in_section(hi_p) || lo_p == hi_p {
                                continue;
                            }
                            level_had_pair = true;
                            for &lam in &[0.5, 0.25, 0.75] {
                                let mid = mix(lo_p, hi_p, lam);
                                if rel.domain.contains(&mid, tau)? && !in_section(&mid) {
                                    violated = true;
                                    witness = Some(
                                        Witness::new(
                                            vec![
                                                x.clone(),
                                                p.clone(),
                                                lo_p.clone(),
                                                hi_p.clone(),
                                                mid,
                                            ],
                                            vec![lam],
                                            "section intersected with every neighborhood of this point is non-convex",
                                        )
                                        .survived(),
                                    );
                                    break;
                                }
                            }
                            if violated {
                                break;
                            }
                        }
                        if level_had_pair {
                            tested_levels += 1;
                            if !violated {
                                continue 'closure;
                            }
                        }
                    }
                    if tested_levels >= 3 {
                        if let Some(w) = witness {
                            return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
                        }
                    }
                }
            }
        }
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

fn indiff_generous(rel: &Relation, x: &[f64], y: &[f64], tau: f64) -> Result<bool, RelationError> {
    match &rel.variant {
        RelationVariant::UtilityInduced(u) => Ok((u.eval(x)? - u.eval(y)?).abs() <= 2.0 * tau),
        _ => rel.indiff(x, y, tau),
    }
}

// ---------------------------------------------------------------------------
// Monotonicity
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Monotonicity {
    Weak,
    Strong,
}

impl Monotonicity {
    pub fn id(&self) -> &'static str {
        match self {
            Monotonicity::Weak => "weakly-monotone",
            Monotonicity::Strong => "strongly-monotone",
        }
    }
}

/// Over seeded ordered pairs `x > y` (componentwise, not equal): weak needs
/// `x >= y` in the relation, strong needs `x` strictly better.
pub fn check_monotonicity(
    rel: &Relation,
    kind: Monotonicity,
    cfg: &CheckConfig,
) -> Result<PropertyReport, RelationError> {
    let tau = cfg.cmp_tolerance;
    let id = kind.id();
    let pool = relation_pool(rel, cfg, &format!("monotone-{id}"), 64);
    let sep = 1e-9 * rel.domain.scale().max(1.0);
    let mut samples = 0usize;
    let mut ordered_found = false;
    for (p, q) in pair_stream(&pool, cfg.sample_count * 4) {
        // Componentwise max/min re-ordering of an arbitrary pair.
        let x: Vec<f64> = p.iter().zip(q).map(|(a, b)| a.max(*b)).collect();
        let y: Vec<f64> = p.iter().zip(q).map(|(a, b)| a.min(*b)).collect();
        if x.iter().zip(&y).all(|(a, b)| (a - b).abs() <= sep) {
            continue;
        }
        if !rel.domain.contains(&x, tau)? || !rel.domain.contains(&y, tau)? {
            continue;
        }
        ordered_found = true;
        samples += 1;
        let ok = match kind {
            Monotonicity::Weak => rel.weak_with_margin(&x, &y, 2.0 * tau)?,
            Monotonicity::Strong => strict_generous(rel, &x, &y, tau)?,
        };
        if !ok {
            let w = Witness::new(
                vec![x, y],
                vec![],
                format!("componentwise larger point is not {} preferred",
                    if kind == Monotonicity::Weak { "weakly" } else { "strictly" }),
            )
            .survived();
            return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
        }
    }
    if !ordered_found {
        return Ok(PropertyReport::holds(id, samples, cfg)
            .with_note("vacuous: the domain admits no componentwise ordered pairs"));
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

// ---------------------------------------------------------------------------
// Algebraic postulates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algebraic {
    Additive,
    Homothetic,
    Independent,
}

impl Algebraic {
    pub fn id(&self) -> &'static str {
        match self {
            Algebraic::Additive => "additive",
            Algebraic::Homothetic => "homothetic",
            Algebraic::Independent => "independent",
        }
    }
}

/// Additivity (`x >= y` iff `x+z >= y+z`), homotheticity and independence
/// over seeded tuples; composed points are rejection-sampled into the domain
/// window because a desk-scale box of a cone is not itself closed under the
/// operations.
pub fn check_algebraic(
    rel: &Relation,
    kind: Algebraic,
    cfg: &CheckConfig,
) -> Result<PropertyReport, RelationError> {
    let tau = cfg.cmp_tolerance;
    let id = kind.id();
    if matches!(kind, Algebraic::Additive | Algebraic::Homothetic)
        && !rel.domain.is_declared_cone()
    {
        return Err(RelationError::ConeDomainRequired);
    }
    let pool = relation_pool(rel, cfg, &format!("algebraic-{id}"), 64);
    let mut samples = 0usize;
    let inside = |p: &[f64]| rel.domain.contains(p, tau).unwrap_or(false);
    // A strided selection of translation/mixing partners keeps z diverse.
    let z_stride = (pool.len() / 12).max(1);
    let zs: Vec<Vec<f64>> = pool.iter().step_by(z_stride).cloned().collect();
    'tuples: for (x, y) in pair_stream(&pool, cfg.sample_count * 2) {
        for z in &zs {
            {
                if samples >= cfg.sample_count * 8 {
                    break 'tuples;
                }
                match kind {
                    Algebraic::Additive => {
                        let xz: Vec<f64> = x.iter().zip(&z[..]).map(|(a, b)| a + b).collect();
                        let yz: Vec<f64> = y.iter().zip(&z[..]).map(|(a, b)| a + b).collect();
                        if !inside(&xz) || !inside(&yz) {
                            continue;
                        }
                        samples += 1;
                        let forward =
                            rel.weak_with_margin(x, y, -2.0 * tau)? && !rel.weak_with_margin(&xz, &yz, 2.0 * tau)?;
                        let backward =
                            rel.weak_with_margin(&xz, &yz, -2.0 * tau)? && !rel.weak_with_margin(x, y, 2.0 * tau)?;
                        if forward || backward {
                            let w = Witness::new(
                                vec![x.to_vec(), y.to_vec(), z.clone()],
                                vec![],
                                "translation by a common vector changed the comparison",
                            )
                            .survived();
                            return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
                        }
                    }
                    Algebraic::Homothetic => {
                        for lambda in [0.25, 0.5, 1.5, 2.0] {
                            let lx: Vec<f64> = x.iter().map(|a| a * lambda).collect();
                            let ly: Vec<f64> = y.iter().map(|a| a * lambda).collect();
                            if !inside(&lx) || !inside(&ly) {
                                continue;
                            }
                            samples += 1;
                            if rel.weak_with_margin(x, y, -2.0 * tau)?
                                && !rel.weak_with_margin(&lx, &ly, 2.0 * tau)?
                            {
                                let w = Witness::new(
                                    vec![x.to_vec(), y.to_vec()],
                                    vec![lambda],
                                    "positive scaling reversed the comparison",
                                )
                                .survived();
                                return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
                            }
                        }
                    }
                    Algebraic::Independent => {
                        for lambda in [0.2, 0.5, 0.8] {
                            let xz = mix(x, z, lambda);
                            let yz = mix(y, z, lambda);
                            if !inside(&xz) || !inside(&yz) {
                                continue;
                            }
                            samples += 1;
                            if rel.weak_with_margin(x, y, -2.0 * tau)?
                                && !rel.weak_with_margin(&xz, &yz, 2.0 * tau)?
                            {
                                let w = Witness::new(
                                    vec![x.to_vec(), y.to_vec(), z.clone()],
                                    vec![lambda],
                                    "common mixing with a third point changed the comparison",
                                )
                                .survived();
                                return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
                            }
                        }
                    }
                }
            }
        }
    }
    if samples == 0 {
        return Ok(PropertyReport::unresolved(
            id,
            UnresolvedReason::InsufficientSamples,
            0,
            cfg,
        )
        .with_note("no composed tuples stayed inside the domain window"));
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

// ---------------------------------------------------------------------------
// Order density
// ---------------------------------------------------------------------------

/// For seeded strict pairs `x > y`, search for a third strictly ranked point
/// in the configured pattern; Fails only when the doubled search budget is
/// also exhausted.
pub fn check_order_density(rel: &Relation, cfg: &CheckConfig) -> Result<PropertyReport, RelationError> {
    let tau = cfg.cmp_tolerance;
    let id = "order-dense";
    let pool = relation_pool(rel, cfg, "density", 48);
    let mut strict_pairs: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    for (x, y) in pair_stream(&pool, cfg.sample_count * 4) {
        if strict_pairs.len() >= 24 {
            break;
        }
        if rel.strict(x, y, tau)? {
            strict_pairs.push((x.to_vec(), y.to_vec()));
        } else if rel.strict(y, x, tau)? {
            strict_pairs.push((y.to_vec(), x.to_vec()));
        }
    }
    if strict_pairs.is_empty() {
        return Ok(PropertyReport::holds(id, 0, cfg)
            .with_note("vacuous: no strict pairs found"));
    }
    let mut samples = 0usize;
    for (x, y) in &strict_pairs {
        let mut found = false;
        let accept = |z: &[f64], samples: &mut usize| -> Result<bool, RelationError> {
            *samples += 1;
            Ok(match cfg.density_pattern {
                crate::core::DensityPattern::Printed => rel.strict(y, z, tau)?,
                crate::core::DensityPattern::Between => {
                    rel.strict(x, z, tau)? && rel.strict(z, y, tau)?
                }
            })
        };
        for extra in [0usize, 64] {
            let mut candidates = pool.clone();
            candidates.extend(crate::geometry::seeded_members(
                &rel.domain,
                cfg,
                "density-refine",
                extra,
            ));
            for z in &candidates {
                if accept(z, &mut samples)? {
                    found = true;
                    break;
                }
            }
            if found {
                break;
            }
        }
        if !found {
            // Utility relations allow a continuous descent: probe a small
            // ball around the target endpoint, then ternary-refine utility
            // minima (printed pattern) along catalog segments.
            if let RelationVariant::UtilityInduced(u) = &rel.variant {
                let anchor = if cfg.density_pattern == crate::core::DensityPattern::Printed {
                    y.clone()
                } else {
                    mix(x, y, 0.5)
                };
                let scale = rel.domain.scale();
                // Dyadic directional probes track boundary-hugging optima.
                let n = anchor.len();
                let mut dirs: Vec<Vec<f64>> = Vec::new();
                for i in 0..n {
                    let mut e = vec![0.0; n];
                    e[i] = 1.0;
                    dirs.push(e.clone());
                    e[i] = -1.0;
                    dirs.push(e);
                }
                dirs.push(vec![1.0 / (n as f64).sqrt(); n]);
                dirs.push(vec![-1.0 / (n as f64).sqrt(); n]);
                'dirs: for d in &dirs {
                    for k in 0..40u32 {
                        let t = 0.2 * scale / (1u64 << k) as f64;
                        let z: Vec<f64> = anchor.iter().zip(d).map(|(c, di)| c + t * di).collect();
                        if rel.domain.contains(&z, tau).unwrap_or(false)
                            && accept(&z, &mut samples)?
                        {
                            found = true;
                            break 'dirs;
                        }
                    }
                }
                if !found {
                    'ball: for (ridx, radius_f) in [5e-3, 5e-2].iter().enumerate() {
                        let radius = radius_f * scale;
                        for k in 0..96u64 {
                            use rand::Rng;
                            let mut rng = cfg.stream("density-descent", k + 1000 * ridx as u64);
                            let z: Vec<f64> = anchor
                                .iter()
                                .map(|c| c + rng.gen_range(-radius..radius))
                                .collect();
                            if rel.domain.contains(&z, tau).unwrap_or(false)
                                && accept(&z, &mut samples)?
                            {
                                found = true;
                                break 'ball;
                            }
                        }
                    }
                }
                if !found && cfg.density_pattern == crate::core::DensityPattern::Printed {
                    if let Ok(segments) = sample_segments(&rel.domain, 16, cfg) {
                        'segs: for seg in &segments {
                            if let Some(z) = ternary_min(u, seg, cfg) {
                                if accept(&z, &mut samples)? {
                                    found = true;
                                    break 'segs;
                                }
                            }
                        }
                    }
                }
            }
        }
        if !found {
            let w = Witness::new(
                vec![x.clone(), y.clone()],
                vec![],
                "no third strictly ranked point found for this strict pair after refinement",
            )
            .survived();
            return Ok(PropertyReport::fails(id, vec![w], samples, cfg));
        }
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

/// Grid scan plus local ternary refinement of the utility minimum along a
/// segment; used by the density search to descend below sampled values.
fn ternary_min(u: &RealFunction, seg: &Segment, cfg: &CheckConfig) -> Option<Vec<f64>> {
    let m = cfg.lambda_resolution;
    let mut best = (f64::INFINITY, 0.0f64);
    for k in 0..m {
        let t = k as f64 / (m - 1) as f64;
        if let Ok(v) = u.eval(&seg.at(t)) {
            if v < best.0 {
                best = (v, t);
            }
        }
    }
    if !best.0.is_finite() {
        return None;
    }
    let h = 1.0 / (m - 1) as f64;
    let (mut lo, mut hi) = ((best.1 - h).max(0.0), (best.1 + h).min(1.0));
    for _ in 0..120 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        let (Ok(v1), Ok(v2)) = (u.eval(&seg.at(m1)), u.eval(&seg.at(m2))) else {
            return None;
        };
        if v1 < v2 {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    Some(seg.at(0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::Verdict;
    use crate::functions::RealFunction;

    fn cfg() -> CheckConfig {
        CheckConfig {
            grid_resolution: 61,
            lambda_resolution: 101,
            sample_count: 200,
            ..CheckConfig::default()
        }
    }

    fn unit_square() -> Domain {
        Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0])
    }

    fn sum_utility() -> Relation {
        let u = RealFunction::from_expression("sum", 2, "x1 + x2").unwrap();
        Relation::from_utility("sum-relation", unit_square(), u)
    }

    #[test]
    fn compare_classifies_pairs() {
        let r = sum_utility();
        let tau = 1e-9;
        assert_eq!(
            r.compare(&[1.0, 1.0], &[0.0, 0.0], tau).unwrap(),
            Comparison::Strict
        );
        assert_eq!(
            r.compare(&[0.0, 0.0], &[1.0, 1.0], tau).unwrap(),
            Comparison::StrictReversed
        );
        assert_eq!(
            r.compare(&[0.5, 0.5], &[0.5, 0.5], tau).unwrap(),
            Comparison::Indifferent
        );
        assert_eq!(
            r.compare(&[0.3, 0.4], &[0.4, 0.3], tau).unwrap(),
            Comparison::Indifferent
        );
        assert!(r.compare(&[2.0, 0.0], &[0.0, 0.0], tau).is_err());
    }

    #[test]
    fn trichotomy_and_reversal_on_seeded_pairs() {
        let r = sum_utility();
        let tau = 1e-9;
        let pool = relation_pool(&r, &cfg(), "test-trichotomy", 64);
        for (x, y) in pair_stream(&pool, 2000) {
            let fwd = r.compare(x, y, tau).unwrap();
            let bwd = r.compare(y, x, tau).unwrap();
            match fwd {
                Comparison::Strict => assert_eq!(bwd, Comparison::StrictReversed),
                Comparison::StrictReversed => assert_eq!(bwd, Comparison::Strict),
                Comparison::Indifferent => assert_eq!(bwd, Comparison::Indifferent),
                Comparison::Incomparable => assert_eq!(bwd, Comparison::Incomparable),
            }
        }
    }

    #[test]
    fn utility_relations_are_complete_and_transitive() {
        let r = sum_utility();
        let c = cfg();
        let complete = check_order_property(&r, OrderProperty::Complete, &c).unwrap();
        assert_eq!(complete.verdict, Verdict::Holds);
        let transitive = check_order_property(&r, OrderProperty::Transitive, &c).unwrap();
        assert_eq!(transitive.verdict, Verdict::Holds);
        // Brute-force oracle for transitivity of >= on reals with common slack.
        let tau = 1e-9;
        let pool = relation_pool(&r, &c, "oracle-transitive", 10);
        let mut checked = 0;
        for x in &pool {
            for y in &pool {
                for z in &pool {
                    if r.weak(x, y, tau).unwrap() && r.weak(y, z, tau).unwrap() {
                        checked += 1;
                        assert!(r.weak_with_margin(x, z, 2.0 * tau).unwrap());
                    }
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn incomparable_pairs_defeat_completeness() {
        // Two classes A (x1 < 0.5) and B (x1 > 0.5); A-points are mutually
        // incomparable, every A beats every B.
        let w = Arc::new(|x: &[f64], y: &[f64]| -> bool {
            x[0] < 0.5 && y[0] > 0.5
        });
        let r = Relation::from_predicate("two-zones", unit_square(), "zones", w);
        let complete = check_order_property(&r, OrderProperty::Complete, &cfg()).unwrap();
        assert_eq!(complete.verdict, Verdict::Fails);
        assert!(!complete.witnesses.is_empty());
    }

    #[test]
    fn min_utility_has_convex_upper_sections() {
        let u = RealFunction::min_of_affine(2, vec![(vec![1.0, 0.0], 0.0), (vec![0.0, 1.0], 0.0)]);
        let r = Relation::from_utility("min-relation", unit_square(), u);
        let rep = check_convexity(&r, RelationConvexity::ConvexUpperSections, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
        let star = check_convexity(&r, RelationConvexity::StarConvex, &cfg()).unwrap();
        assert_eq!(star.verdict, Verdict::Holds);
    }

    #[test]
    fn integer_difference_relation_fails_section_convexity_but_is_additive() {
        // x >= y iff x - y is an integer, on a declared cone window of R+.
        let w = Arc::new(|x: &[f64], y: &[f64]| -> bool {
            let d = x[0] - y[0];
            (d - d.round()).abs() <= 1e-9
        });
        let window = Domain::cone_window(
            vec![
                crate::geometry::Halfspace::closed(vec![-1.0], 0.0),
                crate::geometry::Halfspace::closed(vec![1.0], 4.0),
            ],
            (vec![0.0], vec![4.0]),
        );
        let anchors = vec![
            Point(vec![0.25]),
            Point(vec![1.25]),
            Point(vec![2.25]),
            Point(vec![3.25]),
            Point(vec![0.5]),
            Point(vec![1.5]),
            Point(vec![3.5]),
        ];
        let r = Relation::from_predicate("integer-diff", window, "x - y in Z", w)
            .with_anchors(anchors);
        let c = cfg();
        let additive = check_algebraic(&r, Algebraic::Additive, &c).unwrap();
        assert_eq!(additive.verdict, Verdict::Holds);
        let convex = check_convexity(&r, RelationConvexity::ConvexUpperSections, &c).unwrap();
        assert_eq!(convex.verdict, Verdict::Fails);
    }

    #[test]
    fn min_utility_is_not_additive_brute_force_agrees() {
        let u = RealFunction::min_of_affine(2, vec![(vec![1.0, 0.0], 0.0), (vec![0.0, 1.0], 0.0)]);
        let window = Domain::cone_window(
            vec![
                crate::geometry::Halfspace::closed(vec![-1.0, 0.0], 0.0),
                crate::geometry::Halfspace::closed(vec![0.0, -1.0], 0.0),
                crate::geometry::Halfspace::closed(vec![1.0, 0.0], 2.0),
                crate::geometry::Halfspace::closed(vec![0.0, 1.0], 2.0),
            ],
            (vec![0.0, 0.0], vec![2.0, 2.0]),
        );
        let r = Relation::from_utility("min-cone", window, u.clone());
        // Brute-force oracle over a coarse grid finds a quadruple violating
        // the additivity biconditional.
        let mut found = false;
        let grid: Vec<f64> = (0..5).map(|i| i as f64 / 4.0).collect();
        'outer: for &x1 in &grid {
            for &x2 in &grid {
                for &y1 in &grid {
                    for &y2 in &grid {
                        for &z1 in &grid {
                            for &z2 in &grid {
                                let (x, y, z) = ([x1, x2], [y1, y2], [z1, z2]);
                                let ux = x1.min(x2);
                                let uy = y1.min(y2);
                                let uxz = (x1 + z1).min(x2 + z2);
                                let uyz = (y1 + z1).min(y2 + z2);
                                if x1 + z1 > 2.0 || x2 + z2 > 2.0 || y1 + z1 > 2.0 || y2 + z2 > 2.0
                                {
                                    continue;
                                }
                                if (ux >= uy) != (uxz >= uyz) && (ux - uy).abs() > 1e-6
                                    || (uxz - uyz).abs() > 1e-6 && (ux >= uy) != (uxz >= uyz)
                                {
                                    found = true;
                                    let _ = (x, y, z);
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(found, "oracle should find an additivity violation for min");
        let rep = check_algebraic(&r, Algebraic::Additive, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fails);
    }

    #[test]
    fn linear_utility_is_independent() {
        let u = RealFunction::from_expression("lin", 2, "0.7*x1 + 0.3*x2").unwrap();
        let r = Relation::from_utility("linear", unit_square(), u);
        let rep = check_algebraic(&r, Algebraic::Independent, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
    }

    #[test]
    fn additive_requires_cone_domain() {
        let r = sum_utility();
        assert!(matches!(
            check_algebraic(&r, Algebraic::Additive, &cfg()),
            Err(RelationError::ConeDomainRequired)
        ));
    }

    #[test]
    fn strong_monotonicity_of_strictly_increasing_utility() {
        let r = sum_utility();
        let c = cfg();
        let strong = check_monotonicity(&r, Monotonicity::Strong, &c).unwrap();
        assert_eq!(strong.verdict, Verdict::Holds);
        let weak = check_monotonicity(&r, Monotonicity::Weak, &c).unwrap();
        assert_eq!(weak.verdict, Verdict::Holds);
    }

    #[test]
    fn order_density_printed_pattern_needs_a_strictly_worse_point() {
        // u = x1 on the unit square: pairs whose lower endpoint sits on the
        // u = 0 face admit no strictly worse third point, so the printed
        // pattern fails; the between pattern finds a sandwich point.
        let u = RealFunction::from_expression("first", 2, "x1").unwrap();
        let r = Relation::from_utility("first-coord", unit_square(), u);
        let printed = check_order_density(&r, &cfg()).unwrap();
        assert_eq!(printed.verdict, Verdict::Fails);
        let y = &printed.witnesses[0].points[1];
        assert!(y[0].abs() < 1e-9, "failing pair should bottom out at u=0");

        let between_cfg = CheckConfig {
            density_pattern: crate::core::DensityPattern::Between,
            ..cfg()
        };
        let between = check_order_density(&r, &between_cfg).unwrap();
        assert_eq!(between.verdict, Verdict::Holds);
    }

    #[test]
    fn order_density_holds_when_utilities_descend() {
        // Shift the range so no sampled pair bottoms out at the infimum.
        let u = RealFunction::from_expression("open-range", 2, "1 / (2 + x1 + x2)").unwrap();
        let r = Relation::from_utility("descending", unit_square(), u);
        let rep = check_order_density(&r, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fails);
        // The corner with the smallest utility has nothing below it; pairs
        // ending elsewhere always find one.  Restricting attention to an
        // open box removes the attained minimum and the verdict flips.
        let open = Domain::open_box(vec![0.0, 0.0], vec![1.0, 1.0]);
        let u = RealFunction::from_expression("open-range", 2, "1 / (2 + x1 + x2)").unwrap();
        let r = Relation::from_utility("descending-open", open, u);
        let rep = check_order_density(&r, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
    }

    #[test]
    fn order_density_vacuous_for_total_indifference() {
        let u = RealFunction::constant(2, 1.0);
        let r = Relation::from_utility("flat", unit_square(), u);
        let rep = check_order_density(&r, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
        assert!(rep.notes.contains("vacuous"));
    }

    #[test]
    fn restriction_intersects_sections() {
        let r = sum_utility();
        let c = cfg();
        let tau = 1e-9;
        let seg = Segment::new(Point(vec![1.0, 0.0]), Point(vec![0.0, 0.0]));
        let restricted = restrict(&r, RestrictionSet::Segment(seg), &c).unwrap();
        // y on the segment and weakly preferred to x.
        assert!(restricted
            .in_upper_section(&[0.2, 0.2], &[0.9, 0.0], tau)
            .unwrap());
        // Off-segment points never enter restricted sections.
        assert!(!restricted
            .in_upper_section(&[0.2, 0.2], &[0.9, 0.9], tau)
            .unwrap());
        // Product semantics additionally requires the reference on the set.
        let alt = restricted.with_product_semantics();
        assert!(!alt.in_upper_section(&[0.2, 0.2], &[0.9, 0.0], tau).unwrap());
        assert!(alt.in_upper_section(&[0.5, 0.0], &[0.9, 0.0], tau).unwrap());
    }

    #[test]
    fn restriction_to_disjoint_segment_errors() {
        let r = sum_utility();
        let seg = Segment::new(Point(vec![5.0, 5.0]), Point(vec![6.0, 6.0]));
        assert!(matches!(
            restrict(&r, RestrictionSet::Segment(seg), &cfg()),
            Err(RelationError::EmptyRestriction)
        ));
    }

    #[test]
    fn locally_convex_fails_on_the_gap_interval_union() {
        // X = union of (1/(n+1), 1/n): its section at any reference point is
        // the whole set, which is not locally convex at 0.
        let member = |v: f64| -> bool {
            if v <= 0.0 || v >= 1.0 {
                return false;
            }
            let n = (1.0 / v).floor();
            let lo = 1.0 / (n + 1.0);
            let hi = 1.0 / n;
            v > lo && v < hi
        };
        let w = Arc::new(move |x: &[f64], _y: &[f64]| -> bool { member(x[0]) });
        let anchors: Vec<Point> = std::iter::once(Point(vec![0.0]))
            .chain((2..=4096).map(|n| Point(vec![1.0 / n as f64])))
            .collect();
        let r = Relation::from_predicate(
            "gap-union",
            Domain::boxed(vec![0.0], vec![1.0]),
            "x in the gap union",
            w,
        )
        .with_anchors(anchors);
        let rep =
            check_convexity(&r, RelationConvexity::LocallyConvexUpperSections, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fails);
        // The failure point must be 0.
        let wp = &rep.witnesses[0].points[1];
        assert!(wp[0].abs() < 1e-9, "violation should localize at 0, got {wp:?}");
    }

    #[test]
    fn convex_indifference_of_linear_utility_holds() {
        let r = sum_utility();
        let rep = check_convexity(&r, RelationConvexity::ConvexIndifference, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
    }

    #[test]
    fn convex_indifference_fails_for_strictly_quasiconvex_utility() {
        let u = RealFunction::from_expression("sq", 2, "x1^2 + x2^2").unwrap();
        let r = Relation::from_utility("circle-levels", Domain::boxed(vec![-1.0, -1.0], vec![1.0, 1.0]), u);
        let rep = check_convexity(&r, RelationConvexity::ConvexIndifference, &cfg()).unwrap();
        assert_eq!(rep.verdict, Verdict::Fails);
    }

    #[test]
    fn unknown_tabulated_point_is_an_error() {
        let pts = vec![Point(vec![0.0]), Point(vec![1.0])];
        let matrix = vec![vec![true, false], vec![true, true]];
        let r = Relation::tabulated("tab", Domain::boxed(vec![0.0], vec![1.0]), pts, matrix);
        assert!(r.weak(&[0.5], &[0.0], 1e-9).is_err());
        assert!(r.weak(&[1.0], &[0.0], 1e-9).unwrap());
        assert!(!r.weak(&[0.0], &[1.0], 1e-9).unwrap());
    }
}
