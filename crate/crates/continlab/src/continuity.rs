//! Continuity-postulate checkers for relations: section, graph, linear,
//! mixture, the Archimedean family, the Wold family, and the arc-based strong
//! family.
//!
//! Closedness of a lambda set is certified negatively: a grid point that is
//! not a member while members keep appearing in every dyadic window beside it
//! (down to `step / 2^20`, re-tested at doubled resolution) is a violation
//! witness.  Openness is the mirror image.  Transversal crossings of a
//! continuous utility die out after a few halvings, so they never flag, while
//! genuine jumps and accumulation patterns survive every depth.

use crate::core::{CheckConfig, PropertyReport, UnresolvedReason, Verdict, Witness};
use crate::functions::{anchored_curves, AnchoredCurve};
use crate::geometry::{
    affine_basis, mix, sample_segments, sample_smooth_arcs, Lattice, Point, Segment, SmoothArc,
};
use crate::relations::{relation_pool, Comparison, Relation, RelationError, RelationVariant};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

// ---------------------------------------------------------------------------
// Postulate vocabulary
// ---------------------------------------------------------------------------

/// The continuity-postulate identifiers shared with the deduction module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PostulateId {
    ClosedUpperSections,
    ClosedLowerSections,
    OpenStrictUpper,
    OpenStrictLower,
    Continuous,
    GraphContinuous,
    LinearContinuous,
    UpperMixtureContinuous,
    LowerMixtureContinuous,
    MixtureContinuous,
    UpperArchimedean,
    LowerArchimedean,
    Archimedean,
    UpperStrictArchimedean,
    LowerStrictArchimedean,
    StrictArchimedean,
    WoldContinuous,
    WeakWoldContinuous,
    ArcContinuous,
    StrongMixtureContinuous,
    StrongArchimedean,
    StrongStrictArchimedean,
}

impl PostulateId {
    pub fn id(&self) -> &'static str {
        match self {
            PostulateId::ClosedUpperSections => "closed-upper-sections",
            PostulateId::ClosedLowerSections => "closed-lower-sections",
            PostulateId::OpenStrictUpper => "open-strict-upper",
            PostulateId::OpenStrictLower => "open-strict-lower",
            PostulateId::Continuous => "continuous",
            PostulateId::GraphContinuous => "graph-continuous",
            PostulateId::LinearContinuous => "linear-continuous",
            PostulateId::UpperMixtureContinuous => "upper-mixture-continuous",
            PostulateId::LowerMixtureContinuous => "lower-mixture-continuous",
            PostulateId::MixtureContinuous => "mixture-continuous",
            PostulateId::UpperArchimedean => "upper-archimedean",
            PostulateId::LowerArchimedean => "lower-archimedean",
            PostulateId::Archimedean => "archimedean",
            PostulateId::UpperStrictArchimedean => "upper-strict-archimedean",
            PostulateId::LowerStrictArchimedean => "lower-strict-archimedean",
            PostulateId::StrictArchimedean => "strict-archimedean",
            PostulateId::WoldContinuous => "wold-continuous",
            PostulateId::WeakWoldContinuous => "weak-wold-continuous",
            PostulateId::ArcContinuous => "arc-continuous",
            PostulateId::StrongMixtureContinuous => "strong-mixture-continuous",
            PostulateId::StrongArchimedean => "strong-archimedean",
            PostulateId::StrongStrictArchimedean => "strong-strict-archimedean",
        }
    }

    pub fn all() -> &'static [PostulateId] {
        use PostulateId::*;
        &[
            ClosedUpperSections,
            ClosedLowerSections,
            OpenStrictUpper,
            OpenStrictLower,
            Continuous,
            GraphContinuous,
            LinearContinuous,
            UpperMixtureContinuous,
            LowerMixtureContinuous,
            MixtureContinuous,
            UpperArchimedean,
            LowerArchimedean,
            Archimedean,
            UpperStrictArchimedean,
            LowerStrictArchimedean,
            StrictArchimedean,
            WoldContinuous,
            WeakWoldContinuous,
            ArcContinuous,
            StrongMixtureContinuous,
            StrongArchimedean,
            StrongStrictArchimedean,
        ]
    }

    pub fn parse(s: &str) -> Option<PostulateId> {
        PostulateId::all().iter().copied().find(|p| p.id() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Upper,
    Lower,
    Both,
}

// ---------------------------------------------------------------------------
// Lambda sets and the dyadic indicator machinery
// ---------------------------------------------------------------------------

/// Indicator of `{lambda : f(lambda) in the queried set}` on the lambda grid.
#[derive(Debug, Clone)]
pub struct LambdaSet {
    pub indicators: Vec<bool>,
    pub grid: usize,
}

impl LambdaSet {
    pub fn build(member: &dyn Fn(f64) -> Option<bool>, m: usize) -> LambdaSet {
        LambdaSet {
            indicators: (0..m)
                .map(|k| member(k as f64 / (m - 1) as f64).unwrap_or(false))
                .collect(),
            grid: m,
        }
    }
}

/// Membership indicator along a one-dimensional parameter.
pub(crate) type PathMember<'a> = &'a dyn Fn(f64) -> Option<bool>;

/// Membership indicator over ordered point pairs.
pub(crate) type PairMember<'a> = &'a dyn Fn(&[f64], &[f64]) -> Option<bool>;

/// A strict sandwich (x, z, y) with x above z above y.
type Sandwich = (Vec<f64>, Vec<f64>, Vec<f64>);

const DESCENT_DEPTH: u32 = 20;
const WINDOW_FRACTIONS: [f64; 8] = [1.0, 0.93, 0.86, 0.79, 0.71, 0.64, 0.58, 0.52];

fn window_fraction(j: usize, depth: u32) -> f64 {
    let twist = 1.0 - 0.011 * ((depth as usize + 3 * j) % 5) as f64;
    (WINDOW_FRACTIONS[j % WINDOW_FRACTIONS.len()] * twist).clamp(0.51, 1.0)
}

/// Does the half-open window beside `t0` of width `r` on `side` contain a
/// point with the wanted membership?
fn window_contains(
    member: &dyn Fn(f64) -> Option<bool>,
    t0: f64,
    r: f64,
    side: f64,
    want: bool,
) -> bool {
    for j in 0..WINDOW_FRACTIONS.len() {
        let t = t0 + side * r * window_fraction(j, 0);
        if (0.0..=1.0).contains(&t) && member(t) == Some(want) {
            return true;
        }
    }
    false
}

/// Points with the wanted membership at every dyadic depth beside `t0`.
fn accumulates(
    member: &dyn Fn(f64) -> Option<bool>,
    t0: f64,
    base: f64,
    side: f64,
    want: bool,
) -> bool {
    for depth in 0..DESCENT_DEPTH {
        let r = base / (1u64 << depth) as f64;
        if !window_contains(member, t0, r, side, want) {
            return false;
        }
    }
    true
}

/// Closedness violation of `{lambda : member}`: a non-member grid point at
/// which members accumulate, surviving one grid doubling.  Returns the
/// violating lambda and a nearby member as the approach witness.
pub(crate) fn lambda_closed_violation(
    member: &dyn Fn(f64) -> Option<bool>,
    m: usize,
) -> Option<(f64, f64)> {
    let h = 1.0 / (m - 1) as f64;
    let ind = LambdaSet::build(member, m).indicators;
    let mut candidates: Vec<usize> = Vec::new();
    for k in 0..m {
        if ind[k] {
            continue;
        }
        let left = k > 0 && ind[k - 1];
        let right = k + 1 < m && ind[k + 1];
        if left || right || k == 0 || k == m - 1 {
            candidates.push(k);
        }
    }
    for k in candidates {
        let t0 = k as f64 / (m - 1) as f64;
        if member(t0) == Some(true) {
            continue;
        }
        for side in [-1.0, 1.0] {
            if accumulates(member, t0, h, side, true)
                && accumulates(member, t0, h * 0.5, side, true)
            {
                let approach = t0 + side * h / (1u64 << (DESCENT_DEPTH - 1)) as f64;
                return Some((t0, approach.clamp(0.0, 1.0)));
            }
        }
    }
    None
}

/// Openness violation of `{lambda : member}`: a member grid point at which
/// non-members accumulate, surviving one grid doubling.
pub(crate) fn lambda_open_violation(
    member: &dyn Fn(f64) -> Option<bool>,
    m: usize,
) -> Option<(f64, f64)> {
    let h = 1.0 / (m - 1) as f64;
    let ind = LambdaSet::build(member, m).indicators;
    let mut candidates: Vec<usize> = Vec::new();
    for k in 0..m {
        if !ind[k] {
            continue;
        }
        let left_out = k == 0 || !ind[k - 1];
        let right_out = k + 1 == m || !ind[k + 1];
        if left_out || right_out {
            candidates.push(k);
        }
    }
    for k in candidates {
        let t0 = k as f64 / (m - 1) as f64;
        if member(t0) != Some(true) {
            continue;
        }
        for side in [-1.0, 1.0] {
            // Interior windows only: outside [0,1] there is nothing to
            // accumulate, and openness is relative to [0,1].
            if (t0 + side * h < 0.0) || (t0 + side * h > 1.0) {
                continue;
            }
            if accumulates(member, t0, h, side, false)
                && accumulates(member, t0, h * 0.5, side, false)
            {
                let approach = t0 + side * h / (1u64 << (DESCENT_DEPTH - 1)) as f64;
                return Some((t0, approach.clamp(0.0, 1.0)));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Region (n-D) machinery for section and graph tests
// ---------------------------------------------------------------------------

struct RegionViolation {
    point: Vec<f64>,
    approach: Vec<f64>,
    label: &'static str,
}

/// Does `member` hold at every dyadic depth along the curve anchored at `p`?
fn curve_accumulates(
    member: &dyn Fn(&[f64]) -> Option<bool>,
    p: &[f64],
    curve: &AnchoredCurve,
    base: f64,
    want: bool,
) -> bool {
    for depth in 0..DESCENT_DEPTH {
        let r = base / (1u64 << depth) as f64;
        let mut hit = false;
        for j in 0..3 {
            let q = curve.at(p, r * window_fraction(j, depth));
            if member(&q) == Some(want) {
                hit = true;
                break;
            }
        }
        if !hit {
            return false;
        }
    }
    true
}

/// Candidate screening plus curve descent for region-level closedness:
/// a non-member point at which members accumulate along some anchored curve.
fn region_closed_violation(
    member: &dyn Fn(&[f64]) -> Option<bool>,
    lattice: &Lattice,
    curves: &[AnchoredCurve],
    specials: &[Vec<f64>],
) -> Option<RegionViolation> {
    let step = lattice.step.max(1e-12);
    let mut candidates: Vec<Vec<f64>> = Vec::new();
    let ind: Vec<Option<bool>> = lattice
        .nodes
        .iter()
        .map(|n| n.as_ref().map(|p| member(p) == Some(true)))
        .collect();
    // Dilate the member set over the lattice to find near-member
    // non-members; tangency-order-two accumulation sits within
    // (1/h)^(2/3) cells of the member cloud.
    let h_rel = 1.0 / (lattice.per_axis.max(2) - 1) as f64;
    let w_cells = ((1.0 / h_rel).powf(2.0 / 3.0).ceil() as usize).clamp(3, 64);
    let mut near: Vec<bool> = ind.iter().map(|i| *i == Some(true)).collect();
    for _ in 0..w_cells {
        let prev = near.clone();
        for (idx, was) in prev.iter().enumerate() {
            if *was {
                for nb in lattice.neighbors(idx) {
                    near[nb] = true;
                }
            }
        }
    }
    for (idx, flag) in ind.iter().enumerate() {
        if *flag == Some(false) && near[idx] {
            candidates.push(lattice.nodes[idx].clone().unwrap());
        }
    }
    for s in specials {
        if member(s) == Some(false) {
            candidates.push(s.clone());
        }
    }
    for p in &candidates {
        for curve in curves {
            if curve_accumulates(member, p, curve, 2.0 * step, true)
                && curve_accumulates(member, p, curve, step, true)
            {
                let approach = curve.at(p, step / (1u64 << (DESCENT_DEPTH - 1)) as f64);
                return Some(RegionViolation {
                    point: p.clone(),
                    approach,
                    label: curve.label,
                });
            }
        }
    }
    None
}

/// Mirror image: a member point at which non-members (within the domain)
/// accumulate, so the region is not open in the subspace topology.
fn region_open_violation(
    member: &dyn Fn(&[f64]) -> Option<bool>,
    lattice: &Lattice,
    curves: &[AnchoredCurve],
    specials: &[Vec<f64>],
) -> Option<RegionViolation> {
    let step = lattice.step.max(1e-12);
    let mut candidates: Vec<Vec<f64>> = Vec::new();
    for (idx, node) in lattice.nodes.iter().enumerate() {
        let Some(p) = node else { continue };
        if member(p) != Some(true) {
            continue;
        }
        let boundary_ish = lattice.neighbors(idx).into_iter().any(|nb| {
            lattice.nodes[nb]
                .as_ref()
                .map(|q| member(q) == Some(false))
                .unwrap_or(false)
        });
        if boundary_ish {
            candidates.push(p.clone());
        }
    }
    for s in specials {
        if member(s) == Some(true) {
            candidates.push(s.clone());
        }
    }
    for p in &candidates {
        for curve in curves {
            if curve_accumulates(member, p, curve, 2.0 * step, false)
                && curve_accumulates(member, p, curve, step, false)
            {
                let approach = curve.at(p, step / (1u64 << (DESCENT_DEPTH - 1)) as f64);
                return Some(RegionViolation {
                    point: p.clone(),
                    approach,
                    label: curve.label,
                });
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Shared context
// ---------------------------------------------------------------------------

struct Ctx<'a> {
    rel: &'a Relation,
    cfg: &'a CheckConfig,
    tau: f64,
}

impl<'a> Ctx<'a> {
    fn new(rel: &'a Relation, cfg: &'a CheckConfig) -> Self {
        Ctx {
            rel,
            cfg,
            tau: cfg.cmp_tolerance,
        }
    }

    fn weak(&self, x: &[f64], y: &[f64]) -> Option<bool> {
        self.rel.weak(x, y, self.tau).ok()
    }

    fn strict(&self, x: &[f64], y: &[f64]) -> Option<bool> {
        self.rel.strict(x, y, self.tau).ok()
    }

    fn in_domain(&self, p: &[f64]) -> bool {
        self.rel.domain.contains(p, self.tau).unwrap_or(false)
    }

    /// Reference points for section queries: catalog, anchors, a few seeded.
    /// Anchors are interleaved ahead of the bulk so entries whose phenomena
    /// live on measure-zero sets keep their probes.
    fn references(&self) -> Vec<Vec<f64>> {
        let tau = self.tau;
        let catalog = crate::geometry::member_catalog(&self.rel.domain, self.cfg);
        let mut refs: Vec<Vec<f64>> = Vec::new();
        for a in self.rel.anchors.iter().take(8) {
            if self.rel.domain.contains(&a.0, tau).unwrap_or(false) {
                refs.push(a.0.clone());
            }
        }
        refs.extend(catalog.into_iter().take(12));
        refs.extend(crate::geometry::seeded_members(
            &self.rel.domain,
            self.cfg,
            "references",
            4,
        ));
        refs.dedup();
        refs.truncate(24);
        refs
    }

    /// Strict pairs: anchor pairs first (the entry's deterministic exhibit
    /// hints), then pool pairs.
    fn strict_pairs(&self, budget: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
        let mut out: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
        let push = |out: &mut Vec<(Vec<f64>, Vec<f64>)>, x: &[f64], y: &[f64]| {
            if self.strict(x, y) == Some(true) {
                out.push((x.to_vec(), y.to_vec()));
            } else if self.strict(y, x) == Some(true) {
                out.push((y.to_vec(), x.to_vec()));
            }
        };
        let anchors = &self.rel.anchors;
        'anchor: for i in 0..anchors.len().min(16) {
            for j in (i + 1)..anchors.len().min(16) {
                if out.len() >= budget {
                    break 'anchor;
                }
                push(&mut out, &anchors[i].0, &anchors[j].0);
            }
        }
        let pool = relation_pool(self.rel, self.cfg, "strict-pairs", 48);
        'outer: for off in 1..pool.len() {
            for i in 0..pool.len() - off {
                if out.len() >= budget {
                    break 'outer;
                }
                push(&mut out, &pool[i], &pool[i + off]);
            }
        }
        out.dedup();
        out
    }

    /// Seeded triples `(x, y, z)` of domain members: all-anchor triples
    /// first (the entry's deterministic exhibit hints), then the catalog
    /// stratum, then seeded members.
    fn triples(&self, label: &str, budget: usize) -> Vec<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        let mut out = Vec::new();
        let anchors: Vec<&Point> = self.rel.anchors.iter().take(8).collect();
        'anchors: for i in 0..anchors.len() {
            for j in 0..anchors.len() {
                for k in 0..anchors.len() {
                    if i == j {
                        continue;
                    }
                    if out.len() >= budget {
                        break 'anchors;
                    }
                    out.push((anchors[i].0.clone(), anchors[j].0.clone(), anchors[k].0.clone()));
                }
            }
        }
        let pool = relation_pool(self.rel, self.cfg, label, 48);
        let len = pool.len();
        if len < 3 {
            return out;
        }
        let mut zi = 0usize;
        'outer: for off in 1..len {
            for i in 0..len - off {
                if out.len() >= budget {
                    break 'outer;
                }
                zi = (zi + 7) % len;
                out.push((pool[i].clone(), pool[i + off].clone(), pool[zi].clone()));
            }
        }
        out
    }
}

fn fails(
    id: &str,
    w: Witness,
    samples: usize,
    cfg: &CheckConfig,
) -> PropertyReport {
    PropertyReport::fails(id, vec![w.survived()], samples, cfg)
}

// ---------------------------------------------------------------------------
// Section continuity
// ---------------------------------------------------------------------------

/// Reports for the four section kinds plus the combined postulate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectionReport {
    pub combined: PropertyReport,
    pub sub: BTreeMap<String, PropertyReport>,
}

/// Closed weak sections and open strict sections, via grid screening plus
/// curve descent; probe arcs supplied with the relation are walked as
/// one-dimensional restrictions (a set that fails to be closed or open on a
/// curve inside the domain fails in the subspace topology as well).
pub fn check_section_continuity(
    rel: &Relation,
    cfg: &CheckConfig,
) -> Result<SectionReport, RelationError> {
    let ctx = Ctx::new(rel, cfg);
    let basis = affine_basis(&rel.domain, cfg)?;
    let lattice = Lattice::build(&rel.domain, &basis, cfg.grid_resolution, ctx.tau);
    let dirs = probe_dirs(&crate::geometry::chart_directions(&rel.domain, &basis));
    let curves = anchored_curves(&dirs);
    let refs = ctx.references();
    let mut specials: Vec<Vec<f64>> = crate::geometry::member_catalog(&rel.domain, cfg);
    specials.extend(rel.anchors.iter().map(|a| a.0.clone()));
    specials.truncate(64);

    let mut sub = BTreeMap::new();
    let mut samples = 0usize;

    type Sel = (
        &'static str,
        bool,
        Box<dyn Fn(&Ctx, &[f64], &[f64]) -> Option<bool>>,
    );
    let kinds: Vec<Sel> = vec![
        ("closed-upper-sections", true, Box::new(|c: &Ctx, p: &[f64], x: &[f64]| c.weak(p, x))),
        ("closed-lower-sections", true, Box::new(|c: &Ctx, p: &[f64], x: &[f64]| c.weak(x, p))),
        ("open-strict-upper", false, Box::new(|c: &Ctx, p: &[f64], x: &[f64]| c.strict(p, x))),
        ("open-strict-lower", false, Box::new(|c: &Ctx, p: &[f64], x: &[f64]| c.strict(x, p))),
    ];

    for (id, closed, select) in &kinds {
        let mut verdict: Option<PropertyReport> = None;
        for x in &refs {
            samples += 1;
            let member = |p: &[f64]| -> Option<bool> {
                if !ctx.in_domain(p) {
                    return None;
                }
                select(&ctx, p, x)
            };
            let violation = if *closed {
                region_closed_violation(&member, &lattice, &curves, &specials)
            } else {
                region_open_violation(&member, &lattice, &curves, &specials)
            };
            if let Some(v) = violation {
                let w = Witness::new(
                    vec![x.clone(), v.point, v.approach],
                    vec![],
                    format!("section at this reference violates {id} (approach: {})", v.label),
                );
                verdict = Some(fails(id, w, samples, cfg));
                break;
            }
            // Probe arcs: one-dimensional restrictions along supplied curves.
            for arc in &rel.probe_arcs {
                let on_arc = |t: f64| -> Option<bool> {
                    let p = arc.at(t);
                    if !ctx.in_domain(&p) {
                        return None;
                    }
                    select(&ctx, &p, x)
                };
                let hit = if *closed {
                    lambda_closed_violation(&on_arc, cfg.lambda_resolution)
                } else {
                    lambda_open_violation(&on_arc, cfg.lambda_resolution)
                };
                if let Some((t, approach)) = hit {
                    let w = Witness::new(
                        vec![x.clone(), arc.at(t), arc.at(approach)],
                        vec![t],
                        format!("section violates {id} along probe arc '{}'", arc.label),
                    );
                    verdict = Some(fails(id, w, samples, cfg));
                    break;
                }
            }
            if verdict.is_some() {
                break;
            }
        }
        sub.insert(
            (*id).to_string(),
            verdict.unwrap_or_else(|| PropertyReport::holds(*id, samples, cfg)),
        );
    }

    let combined = combine_reports(
        "continuous",
        sub.values(),
        samples,
        cfg,
    );
    Ok(SectionReport { combined, sub })
}

fn probe_dirs(basis_dirs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for d in basis_dirs {
        dirs.push(d.clone());
        dirs.push(d.iter().map(|c| -c).collect());
    }
    let k = basis_dirs.len();
    for i in 0..k {
        for j in (i + 1)..k {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                dirs.push(
                    basis_dirs[i]
                        .iter()
                        .zip(&basis_dirs[j])
                        .map(|(a, b)| (si * a + sj * b) / std::f64::consts::SQRT_2)
                        .collect(),
                );
            }
        }
    }
    dirs
}

/// All Holds -> Holds; any Fails -> Fails (witnesses concatenated);
/// otherwise Unresolved.
fn combine_reports<'a>(
    id: &str,
    reports: impl Iterator<Item = &'a PropertyReport>,
    samples: usize,
    cfg: &CheckConfig,
) -> PropertyReport {
    let mut witnesses = Vec::new();
    let mut unresolved = false;
    for r in reports {
        match r.verdict {
            Verdict::Fails => witnesses.extend(r.witnesses.clone()),
            Verdict::Unresolved(_) => unresolved = true,
            Verdict::Holds => {}
        }
    }
    if !witnesses.is_empty() {
        PropertyReport::fails(id, witnesses, samples, cfg)
    } else if unresolved {
        PropertyReport::unresolved(id, UnresolvedReason::InsufficientSamples, samples, cfg)
    } else {
        PropertyReport::holds(id, samples, cfg)
    }
}

// ---------------------------------------------------------------------------
// Graph continuity
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphReport {
    pub combined: PropertyReport,
    pub closed_graph: PropertyReport,
    pub open_strict_graph: PropertyReport,
}

/// Closed graph for the weak relation and open graph for the strict part,
/// probed on a product grid with paired-curve descent.
pub fn check_graph_continuity(
    rel: &Relation,
    cfg: &CheckConfig,
) -> Result<GraphReport, RelationError> {
    let ctx = Ctx::new(rel, cfg);
    let basis = affine_basis(&rel.domain, cfg)?;
    let d = basis.dim();
    // Keep the product grid tractable: the factor resolution shrinks with
    // the chart dimension.
    let factor_res = match d {
        0 | 1 => cfg.grid_resolution.min(61),
        2 => 21,
        _ => 9,
    };
    let lattice = Lattice::build(&rel.domain, &basis, factor_res, ctx.tau);
    let factor_nodes: Vec<Vec<f64>> = lattice.nodes.iter().flatten().cloned().collect();
    let dirs = probe_dirs(&crate::geometry::chart_directions(&rel.domain, &basis));
    let curves = anchored_curves(&dirs);
    let step = lattice.step.max(1e-12);

    let mut anchor_pts: Vec<Vec<f64>> = crate::geometry::member_catalog(&rel.domain, cfg);
    anchor_pts.extend(rel.anchors.iter().map(|a| a.0.clone()));
    anchor_pts.truncate(24);

    let mut samples = 0usize;
    let mut closed_witness: Option<Witness> = None;
    let mut open_witness: Option<Witness> = None;

    // Paired product curves: move one factor, the other, or both.
    let pair_curves: Vec<(Option<&AnchoredCurve>, Option<&AnchoredCurve>)> = {
        let mut v: Vec<(Option<&AnchoredCurve>, Option<&AnchoredCurve>)> = Vec::new();
        for c in &curves {
            v.push((Some(c), None));
            v.push((None, Some(c)));
            v.push((Some(c), Some(c)));
        }
        v
    };

    let graph_member = |x: &[f64], y: &[f64]| -> Option<bool> {
        if !ctx.in_domain(x) || !ctx.in_domain(y) {
            return None;
        }
        ctx.weak(x, y)
    };
    let strict_member = |x: &[f64], y: &[f64]| -> Option<bool> {
        if !ctx.in_domain(x) || !ctx.in_domain(y) {
            return None;
        }
        ctx.strict(x, y)
    };

    // Candidate pairs: grid pattern boundaries plus anchor pairs.
    let mut candidates: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    let stride = (factor_nodes.len() * factor_nodes.len() / 4000).max(1);
    let mut k = 0usize;
    for x in &factor_nodes {
        for y in &factor_nodes {
            k += 1;
            if k.is_multiple_of(stride) {
                candidates.push((x.clone(), y.clone()));
            }
        }
    }
    for a in &anchor_pts {
        for b in &anchor_pts {
            candidates.push((a.clone(), b.clone()));
        }
    }

    let descend_pair = |x: &[f64],
                        y: &[f64],
                        member: PairMember,
                        want: bool|
     -> Option<(Vec<f64>, Vec<f64>, &'static str)> {
        for (cx, cy) in &pair_curves {
            let paired = |b: f64, depth_r: f64, j: usize| -> (Vec<f64>, Vec<f64>) {
                let _ = b;
                let t = depth_r * window_fraction(j, 0);
                let px = cx.map(|c| c.at(x, t)).unwrap_or_else(|| x.to_vec());
                let py = cy.map(|c| c.at(y, t)).unwrap_or_else(|| y.to_vec());
                (px, py)
            };
            let mut all = true;
            for base in [2.0 * step, step] {
                for depth in 0..DESCENT_DEPTH {
                    let r = base / (1u64 << depth) as f64;
                    let mut hit = false;
                    for j in 0..3 {
                        let (px, py) = paired(base, r, j);
                        if member(&px, &py) == Some(want) {
                            hit = true;
                            break;
                        }
                    }
                    if !hit {
                        all = false;
                        break;
                    }
                }
                if !all {
                    break;
                }
            }
            if all {
                let label = cx.map(|c| c.label).or(cy.map(|c| c.label)).unwrap_or("ray");
                let r = step / (1u64 << (DESCENT_DEPTH - 1)) as f64;
                let px = cx.map(|c| c.at(x, r)).unwrap_or_else(|| x.to_vec());
                let py = cy.map(|c| c.at(y, r)).unwrap_or_else(|| y.to_vec());
                return Some((px, py, label));
            }
        }
        None
    };

    for (x, y) in &candidates {
        samples += 1;
        if closed_witness.is_none() && graph_member(x, y) == Some(false) {
            if let Some((px, py, label)) = descend_pair(x, y, &graph_member, true) {
                closed_witness = Some(Witness::new(
                    vec![x.clone(), y.clone(), px, py],
                    vec![],
                    format!("weak-relation graph is not closed at this pair (approach: {label})"),
                ));
            }
        }
        if open_witness.is_none() && strict_member(x, y) == Some(true) {
            if let Some((px, py, label)) = descend_pair(x, y, &strict_member, false) {
                open_witness = Some(Witness::new(
                    vec![x.clone(), y.clone(), px, py],
                    vec![],
                    format!("strict-relation graph is not open at this pair (approach: {label})"),
                ));
            }
        }
        if closed_witness.is_some() && open_witness.is_some() {
            break;
        }
    }

    let closed_graph = match closed_witness {
        Some(w) => fails("closed-graph", w, samples, cfg),
        None => PropertyReport::holds("closed-graph", samples, cfg),
    };
    let open_strict_graph = match open_witness {
        Some(w) => fails("open-strict-graph", w, samples, cfg),
        None => PropertyReport::holds("open-strict-graph", samples, cfg),
    };
    let combined = combine_reports(
        "graph-continuous",
        [&closed_graph, &open_strict_graph].into_iter(),
        samples,
        cfg,
    );
    Ok(GraphReport {
        combined,
        closed_graph,
        open_strict_graph,
    })
}

// ---------------------------------------------------------------------------
// Linear continuity
// ---------------------------------------------------------------------------

/// Section continuity of the restriction to every sampled straight segment,
/// with reference points ranging over the whole domain (not only the
/// segment), per the section-intersection reading of restriction.
pub fn check_linear_continuity(
    rel: &Relation,
    cfg: &CheckConfig,
) -> Result<PropertyReport, RelationError> {
    let ctx = Ctx::new(rel, cfg);
    let id = "linear-continuous";
    let segments = sample_segments(&rel.domain, cfg.sample_count, cfg)?;
    let refs = ctx.references();
    let m = cfg.lambda_resolution;
    let mut samples = 0usize;
    for seg in &segments {
        for x in &refs {
            samples += 1;
            if let Some(report) = segment_section_violation(&ctx, seg, x, m, id, samples) {
                return Ok(report);
            }
        }
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

/// The four one-dimensional section tests of a restriction along a segment.
fn segment_section_violation(
    ctx: &Ctx,
    seg: &Segment,
    x: &[f64],
    m: usize,
    id: &str,
    samples: usize,
) -> Option<PropertyReport> {
    let path = |t: f64| seg.at(t);
    path_section_violation(ctx, &path, &[seg.y.0.clone(), seg.x.0.clone()], x, m, id, samples)
}

fn path_section_violation(
    ctx: &Ctx,
    path: &dyn Fn(f64) -> Vec<f64>,
    path_desc: &[Vec<f64>],
    x: &[f64],
    m: usize,
    id: &str,
    samples: usize,
) -> Option<PropertyReport> {
    let tests: [(&str, bool); 4] = [
        ("upper", true),
        ("lower", true),
        ("strict-upper", false),
        ("strict-lower", false),
    ];
    for (kind, closed) in tests {
        let member = |t: f64| -> Option<bool> {
            let p = path(t);
            if !ctx.in_domain(&p) {
                return None;
            }
            match kind {
                "upper" => ctx.weak(&p, x),
                "lower" => ctx.weak(x, &p),
                "strict-upper" => ctx.strict(&p, x),
                _ => ctx.strict(x, &p),
            }
        };
        let hit = if closed {
            lambda_closed_violation(&member, m)
        } else {
            lambda_open_violation(&member, m)
        };
        if let Some((t, approach)) = hit {
            let mut pts = path_desc.to_vec();
            pts.push(x.to_vec());
            pts.push(path(t));
            let w = Witness::new(
                pts,
                vec![t, approach],
                format!("restricted {kind} section violates its topology requirement"),
            );
            return Some(fails(id, w, samples, ctx.cfg));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Mixture continuity
// ---------------------------------------------------------------------------

/// Closedness of `{lambda : x lambda y >= z}` (upper) and its mirror over
/// seeded triples.
pub fn check_mixture_continuity(
    rel: &Relation,
    side: Side,
    cfg: &CheckConfig,
) -> Result<PropertyReport, RelationError> {
    let ctx = Ctx::new(rel, cfg);
    let id = match side {
        Side::Upper => "upper-mixture-continuous",
        Side::Lower => "lower-mixture-continuous",
        Side::Both => "mixture-continuous",
    };
    let triples = ctx.triples("mixture", cfg.sample_count);
    let m = cfg.lambda_resolution;
    let mut samples = 0usize;
    for (x, y, z) in &triples {
        samples += 1;
        let upper = |t: f64| -> Option<bool> { ctx.weak(&mix(x, y, t), z) };
        let lower = |t: f64| -> Option<bool> { ctx.weak(z, &mix(x, y, t)) };
        let sides: Vec<(&str, PathMember)> = match side {
            Side::Upper => vec![("upper", &upper)],
            Side::Lower => vec![("lower", &lower)],
            Side::Both => vec![("upper", &upper), ("lower", &lower)],
        };
        for (kind, member) in sides {
            if let Some((t, approach)) = lambda_closed_violation(member, m) {
                let w = Witness::new(
                    vec![x.clone(), y.clone(), z.clone(), mix(x, y, t)],
                    vec![t, approach],
                    format!("the {kind} mixture lambda-set is not closed at this lambda"),
                );
                return Ok(fails(id, w, samples, cfg));
            }
        }
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

// ---------------------------------------------------------------------------
// Archimedean family
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArchimedeanVariant {
    Plain,
    Strict,
}

/// Plain: for strict pairs, an interior mixture with any third point keeps
/// the strict ranking.  Strict: openness of the strict lambda-sets.
pub fn check_archimedean(
    rel: &Relation,
    variant: ArchimedeanVariant,
    side: Side,
    cfg: &CheckConfig,
) -> Result<PropertyReport, RelationError> {
    let ctx = Ctx::new(rel, cfg);
    let id = match (variant, side) {
        (ArchimedeanVariant::Plain, Side::Upper) => "upper-archimedean",
        (ArchimedeanVariant::Plain, Side::Lower) => "lower-archimedean",
        (ArchimedeanVariant::Plain, Side::Both) => "archimedean",
        (ArchimedeanVariant::Strict, Side::Upper) => "upper-strict-archimedean",
        (ArchimedeanVariant::Strict, Side::Lower) => "lower-strict-archimedean",
        (ArchimedeanVariant::Strict, Side::Both) => "strict-archimedean",
    };
    let m = cfg.lambda_resolution;
    let mut samples = 0usize;

    match variant {
        ArchimedeanVariant::Plain => {
            let pairs = ctx.strict_pairs(24);
            if pairs.is_empty() {
                return Ok(PropertyReport::holds(id, 0, cfg)
                    .with_note("vacuous: no strict pairs found"));
            }
            let pool = relation_pool(rel, cfg, "archimedean-z", 16);
            let zs: Vec<&Vec<f64>> = pool.iter().step_by((pool.len() / 10).max(1)).collect();
            for (x, y) in &pairs {
                for z in &zs {
                    samples += 1;
                    let search = |mm: usize, which_upper: bool| -> bool {
                        (1..mm - 1).any(|k| {
                            let lam = k as f64 / (mm - 1) as f64;
                            if which_upper {
                                ctx.strict(&mix(x, z, lam), y) == Some(true)
                            } else {
                                ctx.strict(x, &mix(y, z, lam)) == Some(true)
                            }
                        })
                    };
                    let need_upper = matches!(side, Side::Upper | Side::Both);
                    let need_lower = matches!(side, Side::Lower | Side::Both);
                    // Exhausting a thin grid is not evidence of nonexistence;
                    // Fails needs the doubled search to cover a real grid.
                    let conclusive = 2 * m > 65;
                    if need_upper && !search(m, true) && !search(2 * m - 1, true) {
                        if !conclusive {
                            return Ok(PropertyReport::unresolved(
                                id,
                                UnresolvedReason::InsufficientSamples,
                                samples,
                                cfg,
                            ));
                        }
                        let w = Witness::new(
                            vec![x.clone(), y.clone(), z.to_vec()],
                            vec![],
                            "no interior mixture of x with z stays strictly above y",
                        );
                        return Ok(fails(id, w, samples, cfg));
                    }
                    if need_lower && !search(m, false) && !search(2 * m - 1, false) {
                        if !conclusive {
                            return Ok(PropertyReport::unresolved(
                                id,
                                UnresolvedReason::InsufficientSamples,
                                samples,
                                cfg,
                            ));
                        }
                        let w = Witness::new(
                            vec![x.clone(), y.clone(), z.to_vec()],
                            vec![],
                            "no interior mixture of y with z stays strictly below x",
                        );
                        return Ok(fails(id, w, samples, cfg));
                    }
                }
            }
        }
        ArchimedeanVariant::Strict => {
            let triples = ctx.triples("strict-archimedean", cfg.sample_count.min(400));
            for (x, y, z) in &triples {
                samples += 1;
                let upper = |t: f64| -> Option<bool> { ctx.strict(&mix(x, y, t), z) };
                let lower = |t: f64| -> Option<bool> { ctx.strict(z, &mix(x, y, t)) };
                let sides: Vec<(&str, PathMember)> = match side {
                    Side::Upper => vec![("upper", &upper)],
                    Side::Lower => vec![("lower", &lower)],
                    Side::Both => vec![("upper", &upper), ("lower", &lower)],
                };
                for (kind, member) in sides {
                    if let Some((t, approach)) = lambda_open_violation(member, m) {
                        let w = Witness::new(
                            vec![x.clone(), y.clone(), z.clone(), mix(x, y, t)],
                            vec![t, approach],
                            format!("the {kind} strict lambda-set is not open at this lambda"),
                        );
                        return Ok(fails(id, w, samples, cfg));
                    }
                }
            }
        }
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

// ---------------------------------------------------------------------------
// Wold continuity
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WoldVariant {
    Weak,
    Full,
}

/// Order density plus solvability: every straight line (weak) or smooth
/// curve (full) joining the outer points of a strict sandwich meets the
/// middle indifference class.
pub fn check_wold(
    rel: &Relation,
    variant: WoldVariant,
    cfg: &CheckConfig,
) -> Result<PropertyReport, RelationError> {
    let ctx = Ctx::new(rel, cfg);
    let id = match variant {
        WoldVariant::Weak => "weak-wold-continuous",
        WoldVariant::Full => "wold-continuous",
    };
    let density = crate::relations::check_order_density(rel, cfg)?;
    if density.verdict == Verdict::Fails {
        let mut w = density.witnesses.clone();
        for item in &mut w {
            item.description = format!("order-density clause failed: {}", item.description);
        }
        return Ok(PropertyReport::fails(id, w, density.samples_used, cfg));
    }

    // Mine sandwiches x > z > y.
    let sandwiches = mine_sandwiches(&ctx)?;
    if sandwiches.is_empty() {
        return Ok(PropertyReport::holds(id, density.samples_used, cfg)
            .with_note("solvability clause vacuous: no strict sandwich found"));
    }
    let m = cfg.lambda_resolution;
    let mut samples = density.samples_used;
    for (x, z, y) in &sandwiches {
        match variant {
            WoldVariant::Weak => {
                samples += 1;
                match meets_class_on_path(&ctx, &|t| mix(x, y, t), z, m) {
                    MeetOutcome::Met => {}
                    MeetOutcome::Incomparable => {
                        return Ok(PropertyReport::unresolved(
                            id,
                            UnresolvedReason::ToleranceAmbiguity,
                            samples,
                            cfg,
                        )
                        .with_note("bisection hit an incomparable pair; solvability ill-posed"));
                    }
                    MeetOutcome::NotMet => {
                        let w = Witness::new(
                            vec![x.clone(), z.clone(), y.clone()],
                            vec![],
                            "the straight line joining the sandwich endpoints misses the middle indifference class",
                        );
                        return Ok(fails(id, w, samples, cfg));
                    }
                }
            }
            WoldVariant::Full => {
                let (arcs, _) = sample_smooth_arcs(
                    &rel.domain,
                    &Point(x.clone()),
                    &Point(y.clone()),
                    6,
                    cfg,
                )?;
                for arc in &arcs {
                    samples += 1;
                    match meets_class_on_path(&ctx, &|t| arc.at(t), z, m) {
                        MeetOutcome::Met => {}
                        MeetOutcome::Incomparable => {
                            return Ok(PropertyReport::unresolved(
                                id,
                                UnresolvedReason::ToleranceAmbiguity,
                                samples,
                                cfg,
                            )
                            .with_note("bisection hit an incomparable pair on an arc"));
                        }
                        MeetOutcome::NotMet => {
                            let w = Witness::new(
                                vec![x.clone(), z.clone(), y.clone(), arc.at(0.5)],
                                vec![],
                                format!(
                                    "smooth curve '{}' joining the sandwich endpoints misses the middle indifference class",
                                    arc.label
                                ),
                            );
                            return Ok(fails(id, w, samples, cfg));
                        }
                    }
                }
            }
        }
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

enum MeetOutcome {
    Met,
    NotMet,
    Incomparable,
}

/// Scan the path for a point indifferent to `z`; on a classification flip,
/// bisect the bracketing cell.
fn meets_class_on_path(
    ctx: &Ctx,
    path: &dyn Fn(f64) -> Vec<f64>,
    z: &[f64],
    m: usize,
) -> MeetOutcome {
    let classify = |t: f64| -> Option<Comparison> {
        let p = path(t);
        if !ctx.in_domain(&p) {
            return None;
        }
        ctx.rel.compare(&p, z, ctx.tau).ok()
    };
    let mut prev: Option<(f64, Comparison)> = None;
    let mut saw_incomparable = false;
    for k in 0..m {
        let t = k as f64 / (m - 1) as f64;
        let Some(c) = classify(t) else { continue };
        match c {
            Comparison::Indifferent => return MeetOutcome::Met,
            Comparison::Incomparable => {
                saw_incomparable = true;
                prev = None;
                continue;
            }
            _ => {}
        }
        if let Some((pt, pc)) = prev {
            if pc != c {
                // Bracketed flip: bisect for an indifference point.
                let (mut lo, mut hi) = (pt, t);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    match classify(mid) {
                        Some(Comparison::Indifferent) => return MeetOutcome::Met,
                        Some(Comparison::Incomparable) => {
                            saw_incomparable = true;
                            break;
                        }
                        Some(cm) => {
                            if cm == pc {
                                lo = mid;
                            } else {
                                hi = mid;
                            }
                        }
                        None => break,
                    }
                }
            }
        }
        prev = Some((t, c));
    }
    if saw_incomparable {
        MeetOutcome::Incomparable
    } else {
        MeetOutcome::NotMet
    }
}

/// Strict sandwiches `x > z > y` mined from pool pairs, with a bisected
/// middle point for utility relations.
fn mine_sandwiches(ctx: &Ctx) -> Result<Vec<Sandwich>, RelationError> {
    let pairs = ctx.strict_pairs(16);
    let pool = relation_pool(ctx.rel, ctx.cfg, "sandwich-z", 32);
    let mut out = Vec::new();
    for (x, y) in &pairs {
        let mut found = false;
        for z in &pool {
            if ctx.strict(x, z) == Some(true) && ctx.strict(z, y) == Some(true) {
                out.push((x.clone(), z.clone(), y.clone()));
                found = true;
                break;
            }
        }
        if !found {
            if let RelationVariant::UtilityInduced(u) = &ctx.rel.variant {
                // Bisect along the segment for a middle-utility point.
                let (Ok(ux), Ok(uy)) = (u.eval(x), u.eval(y)) else {
                    continue;
                };
                let target = 0.5 * (ux + uy);
                let seg = Segment::new(Point(x.clone()), Point(y.clone()));
                let mut best: Option<Vec<f64>> = None;
                let mm = ctx.cfg.lambda_resolution;
                let mut prev: Option<(f64, f64)> = None;
                for k in 0..mm {
                    let t = k as f64 / (mm - 1) as f64;
                    let Ok(v) = u.eval(&seg.at(t)) else { continue };
                    if let Some((pt, pv)) = prev {
                        if (pv - target) * (v - target) <= 0.0 {
                            let (mut lo, mut hi, mut flo) = (pt, t, pv - target);
                            for _ in 0..100 {
                                let mid = 0.5 * (lo + hi);
                                let Ok(vm) = u.eval(&seg.at(mid)) else { break };
                                if (vm - target).abs() <= ctx.tau * 0.25 {
                                    lo = mid;
                                    hi = mid;
                                    break;
                                }
                                if ((vm - target) > 0.0) == (flo > 0.0) {
                                    lo = mid;
                                    flo = vm - target;
                                } else {
                                    hi = mid;
                                }
                            }
                            best = Some(seg.at(0.5 * (lo + hi)));
                            break;
                        }
                    }
                    prev = Some((t, v));
                }
                if let Some(z) = best {
                    if ctx.strict(x, &z) == Some(true) && ctx.strict(&z, y) == Some(true) {
                        out.push((x.clone(), z, y.clone()));
                    }
                }
            }
        }
        if out.len() >= 12 {
            break;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Arc continuity and the strong family
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcStrongKind {
    ArcContinuous,
    StrongMixture,
    StrongArchimedean,
    StrongStrictArchimedean,
}

impl ArcStrongKind {
    pub fn id(&self) -> &'static str {
        match self {
            ArcStrongKind::ArcContinuous => "arc-continuous",
            ArcStrongKind::StrongMixture => "strong-mixture-continuous",
            ArcStrongKind::StrongArchimedean => "strong-archimedean",
            ArcStrongKind::StrongStrictArchimedean => "strong-strict-archimedean",
        }
    }
}

/// The linear/mixture/Archimedean machinery quantified over sampled smooth
/// arcs (the deterministic power-curve stratum rides along with every
/// endpoint pair, and relation probe arcs join the battery).
pub fn check_arc_and_strong(
    rel: &Relation,
    kind: ArcStrongKind,
    cfg: &CheckConfig,
) -> Result<PropertyReport, RelationError> {
    let ctx = Ctx::new(rel, cfg);
    let id = kind.id();
    let m = cfg.lambda_resolution;
    let mut samples = 0usize;

    // Endpoint pairs for the arc battery.
    let pool = relation_pool(rel, cfg, "arc-endpoints", 8);
    let mut arcs: Vec<SmoothArc> = Vec::new();
    let max_pairs = (cfg.sample_count / 16).clamp(4, 24);
    let mut pair_count = 0usize;
    'pairs: for off in 1..pool.len() {
        for i in 0..pool.len() - off {
            if pair_count >= max_pairs {
                break 'pairs;
            }
            let (y, x) = (&pool[i], &pool[i + off]);
            if x == y {
                continue;
            }
            if let Ok((mut batch, _)) =
                sample_smooth_arcs(&rel.domain, &Point(x.clone()), &Point(y.clone()), 5, cfg)
            {
                arcs.append(&mut batch);
                pair_count += 1;
            }
        }
    }
    if arcs.is_empty() && rel.probe_arcs.is_empty() {
        return Ok(PropertyReport::unresolved(
            id,
            UnresolvedReason::InsufficientSamples,
            0,
            cfg,
        )
        .with_note("no smooth arcs could be sampled"));
    }
    let refs = ctx.references();

    match kind {
        ArcStrongKind::ArcContinuous => {
            for arc in &arcs {
                for x in refs.iter() {
                    samples += 1;
                    let path = |t: f64| arc.at(t);
                    if let Some(mut report) = path_section_violation(
                        &ctx,
                        &path,
                        &[arc.from.0.clone(), arc.to.0.clone()],
                        x,
                        m,
                        id,
                        samples,
                    ) {
                        report.notes = format!("violation along smooth arc '{}'", arc.label);
                        return Ok(report);
                    }
                }
            }
            for probe in &rel.probe_arcs {
                for x in refs.iter() {
                    samples += 1;
                    let path = |t: f64| probe.at(t);
                    if let Some(mut report) = path_section_violation(
                        &ctx,
                        &path,
                        &[probe.at(0.0), probe.at(1.0)],
                        x,
                        m,
                        id,
                        samples,
                    ) {
                        report.notes = format!("violation along probe arc '{}'", probe.label);
                        return Ok(report);
                    }
                }
            }
        }
        ArcStrongKind::StrongMixture => {
            for arc in &arcs {
                for z in refs.iter() {
                    samples += 1;
                    let upper = |t: f64| -> Option<bool> { ctx.weak(&arc.at(t), z) };
                    let lower = |t: f64| -> Option<bool> { ctx.weak(z, &arc.at(t)) };
                    for (kind_s, member) in
                        [("upper", &upper as PathMember), ("lower", &lower as PathMember)]
                    {
                        if let Some((t, approach)) = lambda_closed_violation(member, m) {
                            let w = Witness::new(
                                vec![arc.from.0.clone(), arc.to.0.clone(), z.clone(), arc.at(t)],
                                vec![t, approach],
                                format!(
                                    "the {kind_s} arc lambda-set is not closed along '{}'",
                                    arc.label
                                ),
                            );
                            return Ok(fails(id, w, samples, cfg));
                        }
                    }
                }
            }
        }
        ArcStrongKind::StrongStrictArchimedean => {
            for arc in &arcs {
                for z in refs.iter() {
                    samples += 1;
                    let upper = |t: f64| -> Option<bool> { ctx.strict(&arc.at(t), z) };
                    let lower = |t: f64| -> Option<bool> { ctx.strict(z, &arc.at(t)) };
                    for (kind_s, member) in
                        [("upper", &upper as PathMember), ("lower", &lower as PathMember)]
                    {
                        if let Some((t, approach)) = lambda_open_violation(member, m) {
                            let w = Witness::new(
                                vec![arc.from.0.clone(), arc.to.0.clone(), z.clone(), arc.at(t)],
                                vec![t, approach],
                                format!(
                                    "the {kind_s} strict arc lambda-set is not open along '{}'",
                                    arc.label
                                ),
                            );
                            return Ok(fails(id, w, samples, cfg));
                        }
                    }
                }
            }
        }
        ArcStrongKind::StrongArchimedean => {
            let pairs = ctx.strict_pairs(12);
            if pairs.is_empty() {
                return Ok(PropertyReport::holds(id, 0, cfg)
                    .with_note("vacuous: no strict pairs found"));
            }
            let zs: Vec<&Vec<f64>> = pool.iter().step_by((pool.len() / 6).max(1)).collect();
            for (x, y) in &pairs {
                for z in &zs {
                    let (Ok((xz_arcs, _)), Ok((yz_arcs, _))) = (
                        sample_smooth_arcs(&rel.domain, &Point(x.clone()), &Point((*z).clone()), 3, cfg),
                        sample_smooth_arcs(&rel.domain, &Point((*z).clone()), &Point(y.clone()), 3, cfg),
                    ) else {
                        continue;
                    };
                    // m(1) = x on arcs from z to x; search interior mixtures.
                    for arc in &xz_arcs {
                        samples += 1;
                        let found = (1..m - 1).any(|k| {
                            let t = k as f64 / (m - 1) as f64;
                            ctx.strict(&arc.at(t), y) == Some(true)
                        });
                        if !found {
                            let w = Witness::new(
                                vec![x.clone(), y.clone(), (*z).clone()],
                                vec![],
                                format!(
                                    "no interior point of arc '{}' from z to x stays strictly above y",
                                    arc.label
                                ),
                            );
                            return Ok(fails(id, w, samples, cfg));
                        }
                    }
                    for arc in &yz_arcs {
                        samples += 1;
                        let found = (1..m - 1).any(|k| {
                            let t = k as f64 / (m - 1) as f64;
                            ctx.strict(x, &arc.at(t)) == Some(true)
                        });
                        if !found {
                            let w = Witness::new(
                                vec![x.clone(), y.clone(), (*z).clone()],
                                vec![],
                                format!(
                                    "no interior point of arc '{}' from y to z stays strictly below x",
                                    arc.label
                                ),
                            );
                            return Ok(fails(id, w, samples, cfg));
                        }
                    }
                }
            }
        }
    }
    Ok(PropertyReport::holds(id, samples, cfg))
}

// ---------------------------------------------------------------------------
// Property dispatch and profiles
// ---------------------------------------------------------------------------

/// Per-property report map over relation postulate identifiers.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RelationProfile {
    pub reports: BTreeMap<String, PropertyReport>,
}

/// Run one named relation property; composite checks (sections, graph)
/// return their sub-reports alongside the combined one.
pub fn check_relation_property(
    rel: &Relation,
    prop: &str,
    cfg: &CheckConfig,
) -> Result<Vec<PropertyReport>, RelationError> {
    use crate::relations::{
        check_algebraic, check_convexity, check_monotonicity, check_order_density,
        check_order_property, Algebraic, Monotonicity, OrderProperty, RelationConvexity,
    };
    if let Some(p) = OrderProperty::parse(prop) {
        return Ok(vec![check_order_property(rel, p, cfg)?]);
    }
    let report = match prop {
        "convex-upper-sections" => {
            check_convexity(rel, RelationConvexity::ConvexUpperSections, cfg)?
        }
        "convex-indifference" => check_convexity(rel, RelationConvexity::ConvexIndifference, cfg)?,
        "star-convex" => check_convexity(rel, RelationConvexity::StarConvex, cfg)?,
        "strictly-star-convex" => check_convexity(rel, RelationConvexity::StrictlyStarConvex, cfg)?,
        "locally-convex-upper-sections" => {
            check_convexity(rel, RelationConvexity::LocallyConvexUpperSections, cfg)?
        }
        "weakly-monotone" => check_monotonicity(rel, Monotonicity::Weak, cfg)?,
        "strongly-monotone" => check_monotonicity(rel, Monotonicity::Strong, cfg)?,
        "additive" => check_algebraic(rel, Algebraic::Additive, cfg)?,
        "homothetic" => check_algebraic(rel, Algebraic::Homothetic, cfg)?,
        "independent" => check_algebraic(rel, Algebraic::Independent, cfg)?,
        "order-dense" => check_order_density(rel, cfg)?,
        "continuous" => {
            let s = check_section_continuity(rel, cfg)?;
            let mut out: Vec<PropertyReport> = s.sub.into_values().collect();
            out.push(s.combined);
            return Ok(out);
        }
        "graph-continuous" => {
            let g = check_graph_continuity(rel, cfg)?;
            return Ok(vec![g.closed_graph, g.open_strict_graph, g.combined]);
        }
        "linear-continuous" => check_linear_continuity(rel, cfg)?,
        "mixture-continuous" => check_mixture_continuity(rel, Side::Both, cfg)?,
        "upper-mixture-continuous" => check_mixture_continuity(rel, Side::Upper, cfg)?,
        "lower-mixture-continuous" => check_mixture_continuity(rel, Side::Lower, cfg)?,
        "archimedean" => check_archimedean(rel, ArchimedeanVariant::Plain, Side::Both, cfg)?,
        "upper-archimedean" => check_archimedean(rel, ArchimedeanVariant::Plain, Side::Upper, cfg)?,
        "lower-archimedean" => check_archimedean(rel, ArchimedeanVariant::Plain, Side::Lower, cfg)?,
        "strict-archimedean" => check_archimedean(rel, ArchimedeanVariant::Strict, Side::Both, cfg)?,
        "upper-strict-archimedean" => {
            check_archimedean(rel, ArchimedeanVariant::Strict, Side::Upper, cfg)?
        }
        "lower-strict-archimedean" => {
            check_archimedean(rel, ArchimedeanVariant::Strict, Side::Lower, cfg)?
        }
        "weak-wold-continuous" => check_wold(rel, WoldVariant::Weak, cfg)?,
        "wold-continuous" => check_wold(rel, WoldVariant::Full, cfg)?,
        "arc-continuous" => check_arc_and_strong(rel, ArcStrongKind::ArcContinuous, cfg)?,
        "strong-mixture-continuous" => check_arc_and_strong(rel, ArcStrongKind::StrongMixture, cfg)?,
        "strong-archimedean" => check_arc_and_strong(rel, ArcStrongKind::StrongArchimedean, cfg)?,
        "strong-strict-archimedean" => {
            check_arc_and_strong(rel, ArcStrongKind::StrongStrictArchimedean, cfg)?
        }
        other => return Err(RelationError::UnknownProperty(other.to_string())),
    };
    Ok(vec![report])
}

/// Build a per-property profile over the requested identifiers.
pub fn relation_profile(
    rel: &Relation,
    properties: &[&str],
    cfg: &CheckConfig,
) -> Result<RelationProfile, RelationError> {
    let mut reports = BTreeMap::new();
    for prop in properties {
        for report in check_relation_property(rel, prop, cfg)? {
            reports.insert(report.property_id.clone(), report);
        }
    }
    Ok(RelationProfile { reports })
}
