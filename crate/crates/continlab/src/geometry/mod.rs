//! Convex domains in R^n, their set-level properties, segments, smooth arcs,
//! affine hulls and relative-interior machinery.
//!
//! A [`Domain`] is convex by construction for the structured variants; oracle
//! domains must declare convexity and are spot-checked for midpoint closure.

mod sampling;

pub use sampling::{
    find_member, grid_members, member_catalog, sample_segments, sample_smooth_arcs,
    seeded_members, verify_arc,
};

use crate::core::{CheckConfig, PropertyReport, UnresolvedReason, Verdict, Witness};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point has a non-finite coordinate")]
    NonFinitePoint,
    #[error("no domain member found within the sample budget")]
    NoMemberFound,
    #[error("relative-interior certificate not found within budget")]
    NoInteriorCertificate,
    #[error("domain has affine dimension 0; no segments exist")]
    ZeroDimensional,
    #[error("no admissible arc found within budget")]
    NoArcFound,
    #[error("oracle domain violates declared convexity: midpoint of two members left the set")]
    ConvexityViolated,
    #[error("{0}")]
    Invalid(String),
}

// ---------------------------------------------------------------------------
// Small vector helpers
// ---------------------------------------------------------------------------

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub(crate) fn axpy(p: &[f64], t: f64, d: &[f64]) -> Vec<f64> {
    p.iter().zip(d).map(|(x, y)| x + t * y).collect()
}

/// `lambda * x + (1 - lambda) * y`.
pub fn mix(x: &[f64], y: &[f64], lambda: f64) -> Vec<f64> {
    x.iter()
        .zip(y)
        .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
        .collect()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

// ---------------------------------------------------------------------------
// Point
// ---------------------------------------------------------------------------

/// A point of R^n with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinitePoint);
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

// ---------------------------------------------------------------------------
// Halfspace and Domain
// ---------------------------------------------------------------------------

/// `{x : a.x <= b}` (closed) or `{x : a.x < b}` (strict).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub strict: bool,
}

impl Halfspace {
    pub fn closed(normal: Vec<f64>, offset: f64) -> Self {
        assert!(norm(&normal) > 0.0, "halfspace normal must be nonzero");
        Halfspace {
            normal,
            offset,
            strict: false,
        }
    }

    pub fn open(normal: Vec<f64>, offset: f64) -> Self {
        assert!(norm(&normal) > 0.0, "halfspace normal must be nonzero");
        Halfspace {
            normal,
            offset,
            strict: true,
        }
    }

    pub fn admits(&self, p: &[f64], tau: f64) -> bool {
        let v = dot(&self.normal, p);
        if self.strict {
            v <= self.offset - tau
        } else {
            v <= self.offset + tau
        }
    }
}

/// Membership oracle for domains that have no structured description.
/// Membership closure for oracle domains.
pub type MemberFn = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct MembershipOracle {
    pub name: String,
    pub member: MemberFn,
    pub declared_convex: bool,
    pub bounding_box: (Vec<f64>, Vec<f64>),
    pub declared_open: Option<bool>,
    pub declared_polyhedron: Option<bool>,
    pub declared_c_prime: Option<bool>,
}

impl std::fmt::Debug for MembershipOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MembershipOracle")
            .field("name", &self.name)
            .field("declared_convex", &self.declared_convex)
            .field("bounding_box", &self.bounding_box)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum DomainVariant {
    Box {
        lower: Vec<f64>,
        upper: Vec<f64>,
        open_lower: Vec<bool>,
        open_upper: Vec<bool>,
    },
    Polyhedron {
        halfspaces: Vec<Halfspace>,
        /// Declared convex-cone flag, used by the algebraic checkers that
        /// treat the polyhedron as a desk-scale window of a cone.
        cone: bool,
        bounding_box: (Vec<f64>, Vec<f64>),
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
        open: bool,
    },
    Simplex {
        vertices: Vec<Vec<f64>>,
    },
    PositiveOrthant {
        dim: usize,
        /// Sampling window `[0, window]^n`; the set itself is unbounded.
        window: f64,
    },
    Oracle(MembershipOracle),
}

/// A convex subset of R^n.
#[derive(Debug, Clone)]
pub struct Domain {
    pub dimension: usize,
    pub variant: DomainVariant,
}

impl Domain {
    pub fn boxed(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        let n = lower.len();
        assert_eq!(n, upper.len());
        Domain {
            dimension: n,
            variant: DomainVariant::Box {
                lower,
                upper,
                open_lower: vec![false; n],
                open_upper: vec![false; n],
            },
        }
    }

    pub fn open_box(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        let n = lower.len();
        Domain {
            dimension: n,
            variant: DomainVariant::Box {
                lower,
                upper,
                open_lower: vec![true; n],
                open_upper: vec![true; n],
            },
        }
    }

    pub fn polyhedron(halfspaces: Vec<Halfspace>, bounding_box: (Vec<f64>, Vec<f64>)) -> Self {
        let n = bounding_box.0.len();
        Domain {
            dimension: n,
            variant: DomainVariant::Polyhedron {
                halfspaces,
                cone: false,
                bounding_box,
            },
        }
    }

    pub fn cone_window(halfspaces: Vec<Halfspace>, bounding_box: (Vec<f64>, Vec<f64>)) -> Self {
        let n = bounding_box.0.len();
        Domain {
            dimension: n,
            variant: DomainVariant::Polyhedron {
                halfspaces,
                cone: true,
                bounding_box,
            },
        }
    }

    pub fn ball(center: Vec<f64>, radius: f64, open: bool) -> Self {
        let n = center.len();
        Domain {
            dimension: n,
            variant: DomainVariant::Ball {
                center,
                radius,
                open,
            },
        }
    }

    pub fn simplex(vertices: Vec<Vec<f64>>) -> Self {
        let n = vertices[0].len();
        Domain {
            dimension: n,
            variant: DomainVariant::Simplex { vertices },
        }
    }

    pub fn orthant(dim: usize) -> Self {
        Domain {
            dimension: dim,
            variant: DomainVariant::PositiveOrthant { dim, window: 1.0 },
        }
    }

    pub fn oracle(oracle: MembershipOracle) -> Self {
        let n = oracle.bounding_box.0.len();
        Domain {
            dimension: n,
            variant: DomainVariant::Oracle(oracle),
        }
    }

    /// Is the domain declared to be a convex cone (for additivity and
    /// homotheticity tests)?
    pub fn is_declared_cone(&self) -> bool {
        match &self.variant {
            DomainVariant::PositiveOrthant { .. } => true,
            DomainVariant::Polyhedron { cone, .. } => *cone,
            _ => false,
        }
    }

    /// Axis-aligned box that contains every sampled point of the domain.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match &self.variant {
            DomainVariant::Box { lower, upper, .. } => (lower.clone(), upper.clone()),
            DomainVariant::Polyhedron { bounding_box, .. } => bounding_box.clone(),
            DomainVariant::Ball { center, radius, .. } => (
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            ),
            DomainVariant::Simplex { vertices } => {
                let n = self.dimension;
                let mut lo = vec![f64::INFINITY; n];
                let mut hi = vec![f64::NEG_INFINITY; n];
                for v in vertices {
                    for i in 0..n {
                        lo[i] = lo[i].min(v[i]);
                        hi[i] = hi[i].max(v[i]);
                    }
                }
                (lo, hi)
            }
            DomainVariant::PositiveOrthant { dim, window } => {
                (vec![0.0; *dim], vec![*window; *dim])
            }
            DomainVariant::Oracle(o) => o.bounding_box.clone(),
        }
    }

    /// Characteristic length scale, used to size tolerances and probe radii.
    pub fn scale(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        let d = dist(&hi, &lo);
        if d > 0.0 {
            d
        } else {
            1.0
        }
    }

    /// Membership with comparison slack on closed faces and strict margin on
    /// open faces.
    pub fn contains(&self, p: &[f64], tau: f64) -> Result<bool, GeometryError> {
        if p.len() != self.dimension {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dimension,
                got: p.len(),
            });
        }
        if p.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinitePoint);
        }
        Ok(match &self.variant {
            DomainVariant::Box {
                lower,
                upper,
                open_lower,
                open_upper,
            } => (0..p.len()).all(|i| {
                let lo_ok = if open_lower[i] {
                    p[i] > lower[i] + tau
                } else {
                    p[i] >= lower[i] - tau
                };
                let hi_ok = if open_upper[i] {
                    p[i] < upper[i] - tau
                } else {
                    p[i] <= upper[i] + tau
                };
                lo_ok && hi_ok
            }),
            DomainVariant::Polyhedron { halfspaces, .. } => {
                halfspaces.iter().all(|h| h.admits(p, tau))
            }
            DomainVariant::Ball {
                center,
                radius,
                open,
            } => {
                let d = dist(p, center);
                if *open {
                    d < radius - tau
                } else {
                    d <= radius + tau
                }
            }
            DomainVariant::Simplex { vertices } => {
                simplex_membership(vertices, p, tau, self.scale())
            }
            DomainVariant::PositiveOrthant { .. } => p.iter().all(|&c| c >= -tau),
            DomainVariant::Oracle(o) => (o.member)(p),
        })
    }
}

/// Barycentric membership test; tolerates degenerate (lower-dimensional)
/// simplices by solving the least-squares system and checking the residual.
fn simplex_membership(vertices: &[Vec<f64>], p: &[f64], tau: f64, scale_len: f64) -> bool {
    let k = vertices.len();
    let n = p.len();
    // Solve [V^T; 1^T] w = [p; 1] in the least-squares sense via the normal
    // equations of the (n+1) x k system.
    let rows = n + 1;
    let mut a = vec![vec![0.0; k]; rows];
    let mut rhs = vec![0.0; rows];
    for j in 0..k {
        for i in 0..n {
            a[i][j] = vertices[j][i];
        }
        a[n][j] = 1.0;
    }
    rhs[..n].copy_from_slice(p);
    rhs[n] = 1.0;
    // Normal equations: (A^T A) w = A^T rhs.
    let mut m = vec![vec![0.0; k + 1]; k];
    for r in 0..k {
        for c in 0..k {
            m[r][c] = (0..rows).map(|i| a[i][r] * a[i][c]).sum();
        }
        m[r][k] = (0..rows).map(|i| a[i][r] * rhs[i]).sum();
        // Tikhonov nudge keeps degenerate systems solvable.
        m[r][r] += 1e-12;
    }
    let Some(w) = solve_dense(&mut m) else {
        return false;
    };
    let slack = tau.max(1e-12) * 10.0;
    if w.iter().any(|&wi| wi < -slack) {
        return false;
    }
    // Residual check: the reconstructed point must actually be p.
    let mut recon = vec![0.0; n];
    for j in 0..k {
        for i in 0..n {
            recon[i] += w[j] * vertices[j][i];
        }
    }
    dist(&recon, p) <= (tau * 10.0).max(1e-9 * scale_len)
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve_dense(m: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| {
            m[a][col]
                .abs()
                .partial_cmp(&m[b][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                let pivot_row = m[col].clone();
                for (c, cell) in m[row].iter_mut().enumerate().take(n + 1).skip(col) {
                    *cell -= f * pivot_row[c];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

// ---------------------------------------------------------------------------
// Affine hull
// ---------------------------------------------------------------------------

/// Base point plus an orthonormal direction basis spanning the affine hull.
#[derive(Debug, Clone)]
pub struct AffineBasis {
    pub origin: Point,
    pub directions: Vec<Vec<f64>>,
}

impl AffineBasis {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Map affine-chart coordinates to ambient coordinates.
    pub fn embed(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut p = self.origin.0.clone();
        for (c, d) in coeffs.iter().zip(&self.directions) {
            for i in 0..p.len() {
                p[i] += c * d[i];
            }
        }
        p
    }
}

/// Probe directions for a domain: the canonical axes when the domain is
/// full-dimensional (sampled bases come out rotated, and the corpus's curve
/// structures are coordinate-aligned), the affine-hull basis otherwise.
pub fn chart_directions(domain: &Domain, basis: &AffineBasis) -> Vec<Vec<f64>> {
    if basis.dim() == domain.dimension {
        (0..domain.dimension)
            .map(|i| {
                let mut e = vec![0.0; domain.dimension];
                e[i] = 1.0;
                e
            })
            .collect()
    } else {
        basis.directions.clone()
    }
}

/// Affine dimension and an orthonormal basis of the affine hull, computed
/// from structured data where available and from sampled members otherwise.
pub fn affine_basis(domain: &Domain, cfg: &CheckConfig) -> Result<AffineBasis, GeometryError> {
    let tau = cfg.cmp_tolerance;
    let dir_tol = 1e-7 * domain.scale();
    match &domain.variant {
        DomainVariant::Box { lower, upper, .. } => {
            let origin: Vec<f64> = lower.iter().zip(upper).map(|(l, u)| 0.5 * (l + u)).collect();
            let mut directions = Vec::new();
            for i in 0..domain.dimension {
                if upper[i] - lower[i] > dir_tol {
                    let mut e = vec![0.0; domain.dimension];
                    e[i] = 1.0;
                    directions.push(e);
                }
            }
            Ok(AffineBasis {
                origin: Point(origin),
                directions,
            })
        }
        DomainVariant::Ball { center, radius, .. } => {
            let directions = if *radius > dir_tol {
                (0..domain.dimension)
                    .map(|i| {
                        let mut e = vec![0.0; domain.dimension];
                        e[i] = 1.0;
                        e
                    })
                    .collect()
            } else {
                Vec::new()
            };
            Ok(AffineBasis {
                origin: Point(center.clone()),
                directions,
            })
        }
        DomainVariant::Simplex { vertices } => {
            let origin = vertices[0].clone();
            let diffs: Vec<Vec<f64>> = vertices[1..].iter().map(|v| sub(v, &origin)).collect();
            Ok(AffineBasis {
                origin: Point(origin),
                directions: gram_schmidt(&diffs, dir_tol),
            })
        }
        DomainVariant::PositiveOrthant { dim, .. } => Ok(AffineBasis {
            origin: Point(vec![0.0; *dim]),
            directions: (0..*dim)
                .map(|i| {
                    let mut e = vec![0.0; *dim];
                    e[i] = 1.0;
                    e
                })
                .collect(),
        }),
        DomainVariant::Polyhedron { .. } | DomainVariant::Oracle(_) => {
            let members = sampling::member_spread(domain, cfg)?;
            if members.is_empty() {
                return Err(GeometryError::NoMemberFound);
            }
            let origin = members[0].clone();
            let diffs: Vec<Vec<f64>> = members[1..].iter().map(|m| sub(m, &origin)).collect();
            let _ = tau;
            Ok(AffineBasis {
                origin: Point(origin),
                directions: gram_schmidt(&diffs, dir_tol),
            })
        }
    }
}

fn gram_schmidt(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for b in &basis {
            let c = dot(&w, b);
            w = sub(&w, &scale(b, c));
        }
        let n = norm(&w);
        if n > tol {
            basis.push(scale(&w, 1.0 / n));
        }
    }
    basis
}

// ---------------------------------------------------------------------------
// Relative interior
// ---------------------------------------------------------------------------

/// Does `p` pass the numerical relative-interior certificate: small steps
/// `±eps` along every affine-hull direction stay in the domain?
pub fn interior_certificate(
    domain: &Domain,
    basis: &AffineBasis,
    p: &[f64],
    cfg: &CheckConfig,
) -> bool {
    let tau = cfg.cmp_tolerance;
    let eps = 10.0 * tau;
    if !domain.contains(p, tau).unwrap_or(false) {
        return false;
    }
    for d in &basis.directions {
        for s in [eps, -eps] {
            if !domain.contains(&axpy(p, s, d), tau).unwrap_or(false) {
                return false;
            }
        }
    }
    true
}

/// A point certified to lie in the relative interior of the domain.
pub fn relative_interior_point(
    domain: &Domain,
    cfg: &CheckConfig,
) -> Result<Point, GeometryError> {
    let basis = affine_basis(domain, cfg)?;
    let mut candidates: Vec<Vec<f64>> = Vec::new();
    match &domain.variant {
        DomainVariant::Box { lower, upper, .. } => {
            candidates.push(lower.iter().zip(upper).map(|(l, u)| 0.5 * (l + u)).collect());
        }
        DomainVariant::Ball { center, .. } => candidates.push(center.clone()),
        DomainVariant::Simplex { vertices } => {
            let n = domain.dimension;
            let mut bary = vec![0.0; n];
            for v in vertices {
                for i in 0..n {
                    bary[i] += v[i] / vertices.len() as f64;
                }
            }
            candidates.push(bary);
        }
        DomainVariant::PositiveOrthant { dim, window } => {
            candidates.push(vec![window * 0.5; *dim]);
        }
        DomainVariant::Polyhedron { .. } | DomainVariant::Oracle(_) => {
            let members = sampling::member_spread(domain, cfg)?;
            if !members.is_empty() {
                let n = domain.dimension;
                let mut avg = vec![0.0; n];
                for m in &members {
                    for i in 0..n {
                        avg[i] += m[i] / members.len() as f64;
                    }
                }
                candidates.push(avg);
                candidates.extend(members.into_iter().take(8));
            }
        }
    }
    for c in &candidates {
        if interior_certificate(domain, &basis, c, cfg) {
            return Ok(Point(c.clone()));
        }
    }
    Err(GeometryError::NoInteriorCertificate)
}

// ---------------------------------------------------------------------------
// Set-property profile
// ---------------------------------------------------------------------------

/// Cached set-level facts about a domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetPropertyProfile {
    pub is_open: Verdict,
    pub is_polyhedron: Verdict,
    pub property_c: Verdict,
    pub property_c_prime: Verdict,
    pub property_b: Verdict,
    pub affine_dim: usize,
}

fn verdict_of(flag: Option<bool>) -> Verdict {
    match flag {
        Some(true) => Verdict::Holds,
        Some(false) => Verdict::Fails,
        None => Verdict::Unresolved(UnresolvedReason::InsufficientSamples),
    }
}

/// Structural openness/polyhedrality plus the sampled property-B search.
pub fn classify_set_properties(domain: &Domain, cfg: &CheckConfig) -> SetPropertyProfile {
    let (is_open, is_polyhedron, c_prime) = match &domain.variant {
        DomainVariant::Box {
            open_lower,
            open_upper,
            ..
        } => {
            let all_open = open_lower.iter().chain(open_upper).all(|&b| b);
            let all_closed = open_lower.iter().chain(open_upper).all(|&b| !b);
            (
                verdict_of(Some(all_open)),
                verdict_of(Some(all_closed)),
                Verdict::Holds,
            )
        }
        DomainVariant::Polyhedron { halfspaces, .. } => {
            let all_strict = halfspaces.iter().all(|h| h.strict);
            let all_closed = halfspaces.iter().all(|h| !h.strict);
            (
                verdict_of(Some(all_strict && !halfspaces.is_empty())),
                verdict_of(Some(all_closed)),
                Verdict::Holds,
            )
        }
        DomainVariant::Ball { open, .. } => {
            if domain.dimension <= 1 {
                // A 1-D ball is an interval, hence a polyhedron when closed.
                (verdict_of(Some(*open)), verdict_of(Some(!*open)), Verdict::Holds)
            } else {
                let cp = if *open { Verdict::Holds } else { Verdict::Fails };
                (verdict_of(Some(*open)), verdict_of(Some(false)), cp)
            }
        }
        DomainVariant::Simplex { .. } => {
            (verdict_of(Some(false)), verdict_of(Some(true)), Verdict::Holds)
        }
        DomainVariant::PositiveOrthant { .. } => {
            (verdict_of(Some(false)), verdict_of(Some(true)), Verdict::Holds)
        }
        DomainVariant::Oracle(o) => (
            verdict_of(o.declared_open),
            verdict_of(o.declared_polyhedron),
            verdict_of(o.declared_c_prime),
        ),
    };
    // Property C is definitionally "open or polyhedron" and is recomputed,
    // never independently assigned.
    let property_c = match (is_open, is_polyhedron) {
        (Verdict::Holds, _) | (_, Verdict::Holds) => Verdict::Holds,
        (Verdict::Fails, Verdict::Fails) => Verdict::Fails,
        _ => Verdict::Unresolved(UnresolvedReason::InsufficientSamples),
    };
    let affine_dim = affine_basis(domain, cfg).map(|b| b.dim()).unwrap_or(0);
    let property_b = check_property_b(domain, cfg);
    SetPropertyProfile {
        is_open,
        is_polyhedron,
        property_c,
        property_c_prime: c_prime,
        property_b,
        affine_dim,
    }
}

/// Sampled search for componentwise order bounds of member pairs inside the
/// domain.  Fails only when a closed halfspace with a sign-definite normal
/// provably excludes any bound; otherwise exhaustion reports Unresolved.
fn check_property_b(domain: &Domain, cfg: &CheckConfig) -> Verdict {
    let tau = cfg.cmp_tolerance;
    let n = domain.dimension;
    let catalog = member_catalog(domain, cfg);
    if catalog.len() < 2 {
        return Verdict::Unresolved(UnresolvedReason::InsufficientSamples);
    }
    let members = {
        let mut m = catalog.clone();
        m.extend(sampling::seeded_members(domain, cfg, "property-b", 64));
        m
    };
    let pairs: Vec<(usize, usize)> = (0..members.len().min(16))
        .flat_map(|i| ((i + 1)..members.len().min(16)).map(move |j| (i, j)))
        .collect();
    let mut unresolved = false;
    for &(i, j) in &pairs {
        let x = &members[i];
        let y = &members[j];
        let upper: Vec<f64> = x.iter().zip(y).map(|(a, b)| a.max(*b)).collect();
        let lower: Vec<f64> = x.iter().zip(y).map(|(a, b)| a.min(*b)).collect();
        let mut upper_ok = domain.contains(&upper, tau).unwrap_or(false);
        let mut lower_ok = domain.contains(&lower, tau).unwrap_or(false);
        if !upper_ok {
            upper_ok = members
                .iter()
                .any(|m| m.iter().zip(&upper).all(|(a, b)| a >= &(b - tau)));
        }
        if !lower_ok {
            lower_ok = members
                .iter()
                .any(|m| m.iter().zip(&lower).all(|(a, b)| a <= &(b + tau)));
        }
        if upper_ok && lower_ok {
            continue;
        }
        // Structural impossibility proofs.  A closed halfspace whose normal
        // is sign-definite caps every upper (resp. lower) bound candidate.
        if let DomainVariant::Polyhedron { halfspaces, .. } = &domain.variant {
            for h in halfspaces {
                let nonneg = h.normal.iter().all(|&a| a >= 0.0);
                let nonpos = h.normal.iter().all(|&a| a <= 0.0);
                if !upper_ok && nonneg && dot(&h.normal, &upper) > h.offset + tau {
                    return Verdict::Fails;
                }
                if !lower_ok && nonpos && dot(&h.normal, &lower) > h.offset + tau {
                    return Verdict::Fails;
                }
            }
        }
        // For a ball, the point of the dominance cone at the candidate bound
        // nearest to the center is the componentwise max (resp. min) with
        // the center, which decides bound existence exactly.
        if let DomainVariant::Ball { center, radius, open } = &domain.variant {
            let margin = if *open { -tau } else { tau };
            if !upper_ok {
                let nearest: Vec<f64> =
                    upper.iter().zip(center).map(|(m, c)| m.max(*c)).collect();
                if dist(&nearest, center) > radius + margin {
                    return Verdict::Fails;
                }
            }
            if !lower_ok {
                let nearest: Vec<f64> =
                    lower.iter().zip(center).map(|(m, c)| m.min(*c)).collect();
                if dist(&nearest, center) > radius + margin {
                    return Verdict::Fails;
                }
            }
        }
        unresolved = true;
    }
    let _ = n;
    if unresolved {
        Verdict::Unresolved(UnresolvedReason::InsufficientSamples)
    } else {
        Verdict::Holds
    }
}

/// Property-B check packaged as a report with a witness pair on failure.
pub fn property_b_report(domain: &Domain, cfg: &CheckConfig) -> PropertyReport {
    let verdict = check_property_b(domain, cfg);
    match verdict {
        Verdict::Fails => {
            // Rebuild a concrete witness pair for the report.
            let catalog = member_catalog(domain, cfg);
            let (x, y) = (catalog[0].clone(), catalog[catalog.len() - 1].clone());
            let w = Witness::new(
                vec![x, y],
                vec![],
                "no componentwise upper bound for this member pair exists inside the domain",
            )
            .survived();
            PropertyReport::fails("property-b", vec![w], catalog.len(), cfg)
        }
        Verdict::Holds => PropertyReport::holds("property-b", cfg.sample_count, cfg),
        Verdict::Unresolved(r) => PropertyReport::unresolved("property-b", r, cfg.sample_count, cfg)
            .with_note("bound search exhausted without a structural impossibility proof"),
    }
}

// ---------------------------------------------------------------------------
// Segments and smooth arcs
// ---------------------------------------------------------------------------

/// A straight segment between two distinct domain members, parameterized as
/// `lambda -> lambda * x + (1 - lambda) * y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub x: Point,
    pub y: Point,
}

impl Segment {
    pub fn new(x: Point, y: Point) -> Self {
        Segment { x, y }
    }

    pub fn at(&self, lambda: f64) -> Vec<f64> {
        mix(&self.x.0, &self.y.0, lambda)
    }

    pub fn length(&self) -> f64 {
        dist(&self.x.0, &self.y.0)
    }
}

/// A cubic polynomial arc `m:[0,1] -> R^n` in Bezier form with `m(0) = from`
/// and `m(1) = to`, continuously differentiable with nonvanishing derivative
/// (certified on the lambda grid).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothArc {
    pub from: Point,
    pub to: Point,
    pub control1: Vec<f64>,
    pub control2: Vec<f64>,
    /// Measured lower bound for the derivative norm on the lambda grid.
    pub derivative_floor: f64,
    pub label: String,
}

impl SmoothArc {
    pub fn at(&self, t: f64) -> Vec<f64> {
        let u = 1.0 - t;
        let (b0, b1, b2, b3) = (u * u * u, 3.0 * u * u * t, 3.0 * u * t * t, t * t * t);
        (0..self.from.dim())
            .map(|i| {
                b0 * self.from.0[i] + b1 * self.control1[i] + b2 * self.control2[i] + b3 * self.to.0[i]
            })
            .collect()
    }

    pub fn derivative(&self, t: f64) -> Vec<f64> {
        let u = 1.0 - t;
        (0..self.from.dim())
            .map(|i| {
                3.0 * u * u * (self.control1[i] - self.from.0[i])
                    + 6.0 * u * t * (self.control2[i] - self.control1[i])
                    + 3.0 * t * t * (self.to.0[i] - self.control2[i])
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Lattice grids
// ---------------------------------------------------------------------------

/// Row-major lattice over the domain, in ambient coordinates for
/// full-dimensional domains and in affine-chart coordinates otherwise, so
/// that lower-dimensional sets (a diagonal segment, say) are actually hit.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub chart_dim: usize,
    pub per_axis: usize,
    /// Ambient coordinates per node; `None` marks non-members.
    pub nodes: Vec<Option<Vec<f64>>>,
    /// Largest ambient spacing between adjacent nodes.
    pub step: f64,
}

impl Lattice {
    pub fn build(domain: &Domain, basis: &AffineBasis, per_axis: usize, tau: f64) -> Lattice {
        let n = domain.dimension;
        let d = basis.dim().max(1).min(n.max(1));
        let full = basis.dim() == n && n > 0;
        let mut per_axis = per_axis.max(3);
        // Cap total node count; coarsen rather than blow memory.
        while (per_axis as f64).powi(d as i32) > 4_000_000.0 {
            per_axis = per_axis / 2 + 1;
        }
        let (axis_lo, axis_hi): (Vec<f64>, Vec<f64>) = if full {
            domain.bounding_box()
        } else {
            let r = domain.scale();
            (vec![-r; d], vec![r; d])
        };
        let total = (0..d).fold(1usize, |acc, _| acc * per_axis);
        let mut nodes = Vec::with_capacity(total);
        let mut idx = vec![0usize; d];
        loop {
            let chart: Vec<f64> = (0..d)
                .map(|i| {
                    axis_lo[i] + (axis_hi[i] - axis_lo[i]) * idx[i] as f64 / (per_axis - 1) as f64
                })
                .collect();
            let p = if full { chart } else { basis.embed(&chart) };
            nodes.push(if domain.contains(&p, tau).unwrap_or(false) {
                Some(p)
            } else {
                None
            });
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < per_axis {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == d {
                    let step = (0..d)
                        .map(|i| (axis_hi[i] - axis_lo[i]) / (per_axis - 1) as f64)
                        .fold(0.0, f64::max);
                    return Lattice {
                        chart_dim: d,
                        per_axis,
                        nodes,
                        step,
                    };
                }
            }
        }
    }

    pub fn multi(&self, flat: usize) -> Vec<usize> {
        let mut m = vec![0usize; self.chart_dim];
        let mut rest = flat;
        for item in m.iter_mut() {
            *item = rest % self.per_axis;
            rest /= self.per_axis;
        }
        m
    }

    pub fn flat(&self, multi: &[usize]) -> usize {
        let mut f = 0usize;
        for i in (0..self.chart_dim).rev() {
            f = f * self.per_axis + multi[i];
        }
        f
    }

    /// Indices of the up-to-2d axis neighbors.
    pub fn neighbors(&self, flat: usize) -> Vec<usize> {
        let m = self.multi(flat);
        let mut out = Vec::with_capacity(2 * self.chart_dim);
        for i in 0..self.chart_dim {
            if m[i] > 0 {
                let mut q = m.clone();
                q[i] -= 1;
                out.push(self.flat(&q));
            }
            if m[i] + 1 < self.per_axis {
                let mut q = m.clone();
                q[i] += 1;
                out.push(self.flat(&q));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Rockafellar probe
// ---------------------------------------------------------------------------

/// Tests that every convex combination `lambda * y + (1 - lambda) * x` with
/// `lambda in [0,1)` of a certified relative-interior point `x` and a domain
/// point `y` passes the relative-interior certificate.  The endpoint
/// `lambda = 1` is never tested.
pub fn rockafellar_probe(
    domain: &Domain,
    x_ri: &Point,
    y_cl: &Point,
    cfg: &CheckConfig,
) -> Result<PropertyReport, GeometryError> {
    let tau = cfg.cmp_tolerance;
    let basis = affine_basis(domain, cfg)?;
    if !interior_certificate(domain, &basis, &x_ri.0, cfg) {
        return Err(GeometryError::Invalid(
            "x_ri does not pass the relative-interior certificate".into(),
        ));
    }
    if !domain.contains(&y_cl.0, tau)? {
        return Err(GeometryError::Invalid("y_cl is not in the domain".into()));
    }
    let m = cfg.lambda_resolution;
    let mut samples = 0usize;
    for k in 0..(m - 1) {
        let lambda = k as f64 / (m - 1) as f64;
        let p = mix(&y_cl.0, &x_ri.0, lambda);
        samples += 1;
        if !interior_certificate(domain, &basis, &p, cfg) {
            let w = Witness::new(
                vec![x_ri.0.clone(), y_cl.0.clone(), p],
                vec![lambda],
                "convex combination with the relative-interior point left the relative interior",
            );
            return Ok(PropertyReport::fails(
                "rockafellar-probe",
                vec![w],
                samples,
                cfg,
            ));
        }
    }
    Ok(PropertyReport::holds("rockafellar-probe", samples, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CheckConfig {
        CheckConfig {
            lambda_resolution: 101,
            ..CheckConfig::default()
        }
    }

    #[test]
    fn box_membership_interior_and_boundary() {
        let b = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let tau = 1e-9;
        assert!(b.contains(&[0.5, 0.5], tau).unwrap());
        assert!(b.contains(&[1.0, 1.0], tau).unwrap());
        assert!(!b.contains(&[1.1, 0.5], tau).unwrap());
    }

    #[test]
    fn open_box_excludes_boundary() {
        let b = Domain::open_box(vec![0.0, 0.0], vec![1.0, 1.0]);
        let tau = 1e-9;
        assert!(b.contains(&[0.5, 0.5], tau).unwrap());
        assert!(!b.contains(&[1.0, 1.0], tau).unwrap());
        assert!(!b.contains(&[0.0, 0.5], tau).unwrap());
    }

    #[test]
    fn polyhedron_membership_matches_halfspace_arithmetic() {
        // {x1 + x2 <= 1, x >= 0}: (0.7, 0.7) gives 1.4 > 1, so it is outside.
        let p = Domain::polyhedron(
            vec![
                Halfspace::closed(vec![1.0, 1.0], 1.0),
                Halfspace::closed(vec![-1.0, 0.0], 0.0),
                Halfspace::closed(vec![0.0, -1.0], 0.0),
            ],
            (vec![0.0, 0.0], vec![1.0, 1.0]),
        );
        let tau = 1e-9;
        assert!(!p.contains(&[0.7, 0.7], tau).unwrap());
        assert!(p.contains(&[0.3, 0.3], tau).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let b = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        assert!(matches!(
            b.contains(&[0.5], 1e-9),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn affine_dims() {
        let c = cfg();
        let full = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        assert_eq!(affine_basis(&full, &c).unwrap().dim(), 2);

        // Segment domain {x in [0,1]^2 : x1 = x2} via opposing halfspaces.
        let seg = Domain::polyhedron(
            vec![
                Halfspace::closed(vec![1.0, -1.0], 0.0),
                Halfspace::closed(vec![-1.0, 1.0], 0.0),
                Halfspace::closed(vec![-1.0, 0.0], 0.0),
                Halfspace::closed(vec![1.0, 0.0], 1.0),
                Halfspace::closed(vec![0.0, -1.0], 0.0),
                Halfspace::closed(vec![0.0, 1.0], 1.0),
            ],
            (vec![0.0, 0.0], vec![1.0, 1.0]),
        );
        assert_eq!(affine_basis(&seg, &c).unwrap().dim(), 1);

        let singleton = Domain::boxed(vec![0.0, 0.0], vec![0.0, 0.0]);
        assert_eq!(affine_basis(&singleton, &c).unwrap().dim(), 0);
    }

    #[test]
    fn relative_interior_candidates() {
        let c = cfg();
        let b = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let p = relative_interior_point(&b, &c).unwrap();
        assert_eq!(p.0, vec![0.5, 0.5]);

        let s = Domain::simplex(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ]);
        let p = relative_interior_point(&s, &c).unwrap();
        for c_i in &p.0 {
            assert!((c_i - 1.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn segment_domain_midpoint_passes_certificate_in_affine_hull() {
        let c = cfg();
        let seg = Domain::polyhedron(
            vec![
                Halfspace::closed(vec![1.0, -1.0], 0.0),
                Halfspace::closed(vec![-1.0, 1.0], 0.0),
                Halfspace::closed(vec![-1.0, 0.0], 0.0),
                Halfspace::closed(vec![1.0, 0.0], 1.0),
                Halfspace::closed(vec![0.0, -1.0], 0.0),
                Halfspace::closed(vec![0.0, 1.0], 1.0),
            ],
            (vec![0.0, 0.0], vec![1.0, 1.0]),
        );
        let basis = affine_basis(&seg, &c).unwrap();
        assert!(interior_certificate(&seg, &basis, &[0.5, 0.5], &c));
        // A full-space step off the diagonal leaves the domain, which is why
        // the certificate is restricted to the affine hull.
        assert!(!seg.contains(&[0.5, 0.5 + 1e-4], 1e-9).unwrap());
    }

    #[test]
    fn classification_of_structured_variants() {
        let c = cfg();
        let orthant = Domain::orthant(2);
        let prof = classify_set_properties(&orthant, &c);
        assert_eq!(prof.property_c, Verdict::Holds);
        assert_eq!(prof.property_b, Verdict::Holds);
        assert_eq!(prof.is_polyhedron, Verdict::Holds);

        let open_box = Domain::open_box(vec![0.0, 0.0], vec![1.0, 1.0]);
        let prof = classify_set_properties(&open_box, &c);
        assert_eq!(prof.is_open, Verdict::Holds);
        assert_eq!(prof.property_c, Verdict::Holds);

        let closed_ball = Domain::ball(vec![0.0, 0.0], 1.0, false);
        let prof = classify_set_properties(&closed_ball, &c);
        assert_eq!(prof.is_open, Verdict::Fails);
        assert_eq!(prof.is_polyhedron, Verdict::Fails);
        assert_eq!(prof.property_c, Verdict::Fails);
        assert_eq!(prof.property_c_prime, Verdict::Fails);
    }

    #[test]
    fn anti_diagonal_segment_fails_property_b() {
        // {x in [-1,0] x [0,1] : x1 = -x2}: no member pair has order bounds.
        let c = cfg();
        let anti = Domain::polyhedron(
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
        let prof = classify_set_properties(&anti, &c);
        assert_eq!(prof.property_b, Verdict::Fails);
        assert_eq!(prof.affine_dim, 1);
    }

    #[test]
    fn rockafellar_probe_on_box() {
        let c = cfg();
        let b = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let r = rockafellar_probe(&b, &Point(vec![0.5, 0.5]), &Point(vec![1.0, 1.0]), &c).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn rockafellar_probe_degenerate_singleton() {
        let c = cfg();
        let s = Domain::boxed(vec![0.25, 0.25], vec![0.25, 0.25]);
        let p = Point(vec![0.25, 0.25]);
        let r = rockafellar_probe(&s, &p, &p, &c).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn rockafellar_probe_rejects_bad_interior_point() {
        let c = cfg();
        let b = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        // A boundary point is not in the relative interior.
        let r = rockafellar_probe(&b, &Point(vec![0.0, 0.0]), &Point(vec![1.0, 1.0]), &c);
        assert!(r.is_err());
    }

    #[test]
    fn simplex_membership_degenerate() {
        let s = Domain::simplex(vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
        let tau = 1e-9;
        assert!(s.contains(&[0.5, 0.5], tau).unwrap());
        assert!(!s.contains(&[0.5, 0.6], tau).unwrap());
        assert!(!s.contains(&[1.5, 1.5], tau).unwrap());
    }
}
