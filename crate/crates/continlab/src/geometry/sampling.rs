//! Member search, deterministic point catalogs, segment and arc samplers.

use super::{
    add, dist, dot, mix, norm, scale, sub, AffineBasis, Domain, DomainVariant, GeometryError,
    Point, Segment, SmoothArc,
};
use crate::core::CheckConfig;
use rand::Rng;

/// Find one domain member, starting from deterministic seeds and falling back
/// to cyclic projection (for polyhedra) or seeded rejection sampling.
pub fn find_member(domain: &Domain, cfg: &CheckConfig) -> Result<Vec<f64>, GeometryError> {
    let tau = cfg.cmp_tolerance;
    let (lo, hi) = domain.bounding_box();
    let center: Vec<f64> = lo.iter().zip(&hi).map(|(l, u)| 0.5 * (l + u)).collect();
    if domain.contains(&center, tau)? {
        return Ok(center);
    }
    if let DomainVariant::Polyhedron { .. } = &domain.variant {
        if let Some(p) = project_into(domain, &center, cfg) {
            return Ok(p);
        }
    }
    let mut rng = cfg.stream("find-member", 0);
    for _ in 0..4096 {
        let p: Vec<f64> = lo
            .iter()
            .zip(&hi)
            .map(|(l, u)| rng.gen_range(*l..=*u))
            .collect();
        if domain.contains(&p, tau)? {
            return Ok(p);
        }
        if let DomainVariant::Polyhedron { .. } = &domain.variant {
            if let Some(q) = project_into(domain, &p, cfg) {
                return Ok(q);
            }
        }
    }
    Err(GeometryError::NoMemberFound)
}

/// Cyclic projection onto the halfspaces of a polyhedron (POCS).  Converges to
/// a feasible point for consistent closed convex constraints.
fn project_into(domain: &Domain, start: &[f64], cfg: &CheckConfig) -> Option<Vec<f64>> {
    let tau = cfg.cmp_tolerance;
    let DomainVariant::Polyhedron { halfspaces, .. } = &domain.variant else {
        return None;
    };
    let mut x = start.to_vec();
    for _ in 0..256 {
        let mut moved = false;
        for h in halfspaces {
            let margin = if h.strict { 100.0 * tau } else { 0.0 };
            let v = dot(&h.normal, &x);
            if v > h.offset - margin {
                let n2 = dot(&h.normal, &h.normal);
                let f = (v - (h.offset - margin)) / n2;
                x = sub(&x, &scale(&h.normal, f));
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    if domain.contains(&x, tau).unwrap_or(false) {
        Some(x)
    } else {
        None
    }
}

/// Deterministic catalog of domain members: center-like points, corners or
/// vertices (pulled inward on open faces), edge midpoints, and power-curve
/// points anchored at the center.  Checkers use this as the first sampling
/// stratum before seeded randomness.
pub fn member_catalog(domain: &Domain, cfg: &CheckConfig) -> Vec<Vec<f64>> {
    let tau = cfg.cmp_tolerance;
    let n = domain.dimension;
    let (lo, hi) = domain.bounding_box();
    let center: Vec<f64> = lo.iter().zip(&hi).map(|(l, u)| 0.5 * (l + u)).collect();
    let mut raw: Vec<Vec<f64>> = Vec::new();

    match &domain.variant {
        DomainVariant::Box { .. } | DomainVariant::PositiveOrthant { .. } => {
            raw.push(center.clone());
            raw.extend(box_corners(&lo, &hi, n));
            for i in 0..n {
                let mut a = center.clone();
                a[i] = lo[i];
                raw.push(a);
                let mut b = center.clone();
                b[i] = hi[i];
                raw.push(b);
            }
        }
        DomainVariant::Ball { center: c, radius, .. } => {
            raw.push(c.clone());
            for i in 0..n {
                for s in [-0.7, 0.7, -0.99, 0.99] {
                    let mut p = c.clone();
                    p[i] += s * radius;
                    raw.push(p);
                }
            }
            if n >= 2 {
                let d = radius / (n as f64).sqrt();
                raw.push(c.iter().map(|x| x + 0.7 * d).collect());
                raw.push(c.iter().map(|x| x - 0.7 * d).collect());
            }
        }
        DomainVariant::Simplex { vertices } => {
            let k = vertices.len() as f64;
            let mut bary = vec![0.0; n];
            for v in vertices {
                for i in 0..n {
                    bary[i] += v[i] / k;
                }
            }
            raw.push(bary);
            raw.extend(vertices.iter().cloned());
            for (i, v) in vertices.iter().enumerate() {
                for w in &vertices[i + 1..] {
                    raw.push(mix(v, w, 0.5));
                }
            }
        }
        DomainVariant::Polyhedron { .. } => {
            for start in box_corners(&lo, &hi, n).into_iter().chain([center.clone()]) {
                if let Some(p) = project_into(domain, &start, cfg) {
                    raw.push(p);
                }
            }
        }
        DomainVariant::Oracle(_) => {
            raw.push(center.clone());
            raw.extend(box_corners(&lo, &hi, n));
            raw.extend(seeded_members(domain, cfg, "oracle-catalog", 16));
        }
    }

    // Power-curve points anchored at the center: these land on curves such as
    // x1 = x2^2 that straight strata never visit.
    if n >= 2 {
        let width: Vec<f64> = lo.iter().zip(&hi).map(|(l, u)| 0.5 * (u - l)).collect();
        for (a, b) in [(1u32, 2u32), (2, 1), (1, 3), (3, 1)] {
            for t in [0.25f64, 0.5, 0.75, 0.95] {
                for (sa, sb) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                    let mut p = center.clone();
                    p[0] += sa * width[0] * t.powi(a as i32);
                    p[1] += sb * width[1] * t.powi(b as i32);
                    raw.push(p);
                }
            }
        }
    }

    // Keep members only, pulling boundary candidates inward when open faces
    // reject them.
    let mut out: Vec<Vec<f64>> = Vec::new();
    for p in raw {
        let q = pull_inside(domain, &p, &center, tau);
        if let Some(q) = q {
            if out.iter().all(|o| dist(o, &q) > 1e-12) {
                out.push(q);
            }
        }
    }
    out
}

fn box_corners(lo: &[f64], hi: &[f64], n: usize) -> Vec<Vec<f64>> {
    if n > 6 {
        // Corner count explodes; keep the two main corners and axis extremes.
        let mut v = vec![lo.to_vec(), hi.to_vec()];
        for i in 0..n {
            let mut a = lo.to_vec();
            a[i] = hi[i];
            v.push(a);
        }
        return v;
    }
    (0..(1usize << n))
        .map(|mask| {
            (0..n)
                .map(|i| if mask & (1 << i) != 0 { hi[i] } else { lo[i] })
                .collect()
        })
        .collect()
}

/// Accept `p` if it is a member; otherwise shrink it toward `center` a few
/// times (for open faces) before giving up.
fn pull_inside(domain: &Domain, p: &[f64], center: &[f64], tau: f64) -> Option<Vec<f64>> {
    if domain.contains(p, tau).unwrap_or(false) {
        return Some(p.to_vec());
    }
    for shrink in [1e-6, 1e-4, 1e-2, 0.1] {
        let q = mix(center, p, shrink);
        if domain.contains(&q, tau).unwrap_or(false) {
            return Some(q);
        }
    }
    None
}

/// Seeded random members via rejection sampling in the bounding box, plus
/// projection for polyhedra so lower-dimensional sets are reachable.
pub fn seeded_members(
    domain: &Domain,
    cfg: &CheckConfig,
    label: &str,
    count: usize,
) -> Vec<Vec<f64>> {
    let tau = cfg.cmp_tolerance;
    let (lo, hi) = domain.bounding_box();
    let mut out = Vec::with_capacity(count);
    for idx in 0..count as u64 {
        let mut rng = cfg.stream(label, idx);
        // Simplices can be measure-zero in the ambient space; sample them in
        // barycentric coordinates instead of rejecting from the box.
        if let DomainVariant::Simplex { vertices } = &domain.variant {
            let mut weights: Vec<f64> = (0..vertices.len())
                .map(|_| -f64::ln(rng.gen_range(1e-12..1.0)))
                .collect();
            let total: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= total;
            }
            let mut p = vec![0.0; domain.dimension];
            for (w, v) in weights.iter().zip(vertices) {
                for i in 0..p.len() {
                    p[i] += w * v[i];
                }
            }
            out.push(p);
            continue;
        }
        let mut found = None;
        for _ in 0..512 {
            let p: Vec<f64> = lo
                .iter()
                .zip(&hi)
                .map(|(l, u)| rng.gen_range(*l..=*u))
                .collect();
            if domain.contains(&p, tau).unwrap_or(false) {
                found = Some(p);
                break;
            }
            if let DomainVariant::Polyhedron { .. } = &domain.variant {
                if let Some(q) = project_into(domain, &p, cfg) {
                    found = Some(q);
                    break;
                }
            }
        }
        if let Some(p) = found {
            out.push(p);
        }
    }
    out
}

/// Members spread across the domain for affine-hull estimation.
pub(super) fn member_spread(
    domain: &Domain,
    cfg: &CheckConfig,
) -> Result<Vec<Vec<f64>>, GeometryError> {
    let mut members = member_catalog(domain, cfg);
    members.extend(seeded_members(domain, cfg, "affine-spread", 24));
    if members.is_empty() {
        members.push(find_member(domain, cfg)?);
    }
    Ok(members)
}

/// Grid of domain members.  Full-dimensional domains use the bounding-box
/// grid; lower-dimensional ones are gridded in affine-chart coordinates so
/// that sets like a diagonal segment are actually sampled.
pub fn grid_members(
    domain: &Domain,
    basis: &AffineBasis,
    per_axis: usize,
    tau: f64,
) -> Vec<Vec<f64>> {
    let n = domain.dimension;
    let d = basis.dim();
    let mut out = Vec::new();
    if d == 0 {
        if domain.contains(&basis.origin.0, tau).unwrap_or(false) {
            out.push(basis.origin.0.clone());
        }
        return out;
    }
    if d == n {
        let (lo, hi) = domain.bounding_box();
        let mut idx = vec![0usize; n];
        loop {
            let p: Vec<f64> = (0..n)
                .map(|i| lo[i] + (hi[i] - lo[i]) * idx[i] as f64 / (per_axis - 1) as f64)
                .collect();
            if domain.contains(&p, tau).unwrap_or(false) {
                out.push(p);
            }
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < per_axis {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == n {
                    return out;
                }
            }
        }
    }
    // Affine-chart grid: coefficients range over a cube sized by the bounding
    // box diameter around the basis origin.
    let r = domain.scale();
    let mut idx = vec![0usize; d];
    loop {
        let coeffs: Vec<f64> = (0..d)
            .map(|i| -r + 2.0 * r * idx[i] as f64 / (per_axis - 1) as f64)
            .collect();
        let p = basis.embed(&coeffs);
        if domain.contains(&p, tau).unwrap_or(false) {
            out.push(p);
        }
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < per_axis {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == d {
                return out;
            }
        }
    }
}

/// Seeded segments with distinct endpoints inside the domain.  A
/// deterministic stratum of diagonal and axis-parallel segments comes first;
/// the main diagonal (lower corner to upper corner) is always entry zero when
/// it lies in the domain.
pub fn sample_segments(
    domain: &Domain,
    count: usize,
    cfg: &CheckConfig,
) -> Result<Vec<Segment>, GeometryError> {
    let tau = cfg.cmp_tolerance;
    let basis = super::affine_basis(domain, cfg)?;
    if basis.dim() == 0 {
        return Err(GeometryError::ZeroDimensional);
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let n = domain.dimension;
    let (lo, hi) = domain.bounding_box();
    let center: Vec<f64> = lo.iter().zip(&hi).map(|(l, u)| 0.5 * (l + u)).collect();
    let min_len = 1e-7 * domain.scale();
    let mut out: Vec<Segment> = Vec::new();

    let push_pair = |out: &mut Vec<Segment>, a: &[f64], b: &[f64]| {
        if out.len() >= count {
            return;
        }
        let (Some(a), Some(b)) = (
            pull_inside(domain, a, &center, tau),
            pull_inside(domain, b, &center, tau),
        ) else {
            return;
        };
        if dist(&a, &b) < min_len {
            return;
        }
        // Convexity keeps the whole segment inside; spot-check the midpoint
        // for oracle domains anyway.
        if matches!(domain.variant, DomainVariant::Oracle(_))
            && !domain.contains(&mix(&a, &b, 0.5), tau).unwrap_or(false)
        {
            return;
        }
        out.push(Segment::new(Point(a), Point(b)));
    };

    // Deterministic stratum: main diagonal first, then anti-diagonals, then
    // axis-parallel lines through the center, then face-parallel segments.
    push_pair(&mut out, &hi, &lo);
    for i in 0..n {
        let mut a = lo.clone();
        let mut b = hi.clone();
        a[i] = hi[i];
        b[i] = lo[i];
        push_pair(&mut out, &b, &a);
    }
    for i in 0..n {
        let mut a = center.clone();
        let mut b = center.clone();
        a[i] = lo[i];
        b[i] = hi[i];
        push_pair(&mut out, &b, &a);
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for edge in [lo[j], hi[j]] {
                let mut a = center.clone();
                let mut b = center.clone();
                a[i] = lo[i];
                b[i] = hi[i];
                a[j] = edge;
                b[j] = edge;
                push_pair(&mut out, &b, &a);
            }
        }
    }
    // Catalog pairs cover domains where box geometry misses the set.
    let catalog = member_catalog(domain, cfg);
    for i in 0..catalog.len() {
        if out.len() >= count {
            break;
        }
        for j in (i + 1)..catalog.len() {
            push_pair(&mut out, &catalog[i], &catalog[j]);
            if out.len() >= count {
                break;
            }
        }
    }
    // Seeded random pairs fill the rest.
    let mut idx = 0u64;
    let mut misses = 0usize;
    while out.len() < count && misses < 10_000 {
        let mut rng = cfg.stream("segments", idx);
        idx += 1;
        let members = {
            let mut m = Vec::new();
            for _ in 0..2 {
                let mut found = None;
                for _ in 0..512 {
                    let p: Vec<f64> = lo
                        .iter()
                        .zip(&hi)
                        .map(|(l, u)| rng.gen_range(*l..=*u))
                        .collect();
                    if domain.contains(&p, tau).unwrap_or(false) {
                        found = Some(p);
                        break;
                    }
                    if let DomainVariant::Polyhedron { .. } = &domain.variant {
                        if let Some(q) = project_into(domain, &p, cfg) {
                            found = Some(q);
                            break;
                        }
                    }
                }
                if let Some(p) = found {
                    m.push(p);
                }
            }
            m
        };
        if members.len() == 2 && dist(&members[0], &members[1]) >= min_len {
            let before = out.len();
            push_pair(&mut out, &members[0], &members[1]);
            if out.len() == before {
                misses += 1;
            }
        } else {
            misses += 1;
        }
    }
    if out.is_empty() {
        return Err(GeometryError::NoMemberFound);
    }
    Ok(out)
}

/// Power-arc control points for `m_i(t) = y_i + (x_i - y_i) t^{k_i}` written
/// as a cubic Bezier.
fn power_arc(y: &[f64], x: &[f64], exps: &[u32]) -> (Vec<f64>, Vec<f64>) {
    let n = y.len();
    // Power-basis coefficients per coordinate: m = c0 + c1 t + c2 t^2 + c3 t^3.
    let mut p1 = vec![0.0; n];
    let mut p2 = vec![0.0; n];
    for i in 0..n {
        let d = x[i] - y[i];
        let (c1, c2, c3) = match exps[i] {
            1 => (d, 0.0, 0.0),
            2 => (0.0, d, 0.0),
            _ => (0.0, 0.0, d),
        };
        p1[i] = y[i] + c1 / 3.0;
        p2[i] = y[i] + 2.0 * c1 / 3.0 + c2 / 3.0;
        let _ = c3;
    }
    (p1, p2)
}

/// Check the four smooth-arc invariants on the lambda grid: differentiability
/// is automatic (polynomials), the derivative norm stays above a floor, grid
/// images are injective, and all grid images lie in the domain.
pub fn verify_arc(arc: &SmoothArc, domain: &Domain, cfg: &CheckConfig) -> Result<f64, String> {
    let tau = cfg.cmp_tolerance;
    let m = cfg.lambda_resolution;
    let scale_len = arc.from.0.iter().zip(&arc.to.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let floor = 1e-4 * scale_len.max(1e-12);
    let mut min_deriv = f64::INFINITY;
    let mut images: Vec<Vec<f64>> = Vec::with_capacity(m);
    for k in 0..m {
        let t = k as f64 / (m - 1) as f64;
        let p = arc.at(t);
        if !domain.contains(&p, tau).map_err(|e| e.to_string())? {
            return Err(format!("arc image at t={t} left the domain"));
        }
        min_deriv = min_deriv.min(norm(&arc.derivative(t)));
        images.push(p);
    }
    if min_deriv < floor {
        return Err(format!(
            "derivative norm {min_deriv} fell below the floor {floor}"
        ));
    }
    let sep = (tau * 10.0).max(1e-12 * scale_len.max(1.0));
    for i in 0..images.len() {
        for j in (i + 2)..images.len() {
            if dist(&images[i], &images[j]) < sep {
                return Err(format!(
                    "injectivity spot-check failed between grid indices {i} and {j}"
                ));
            }
        }
    }
    Ok(min_deriv)
}

/// Cubic arcs from `y` to `x`.  Arc zero is always the straight segment; a
/// deterministic power-curve stratum follows, then seeded bowed cubics,
/// rejection-sampled against the smooth-arc invariants.
pub fn sample_smooth_arcs(
    domain: &Domain,
    x: &Point,
    y: &Point,
    count: usize,
    cfg: &CheckConfig,
) -> Result<(Vec<SmoothArc>, Option<String>), GeometryError> {
    let tau = cfg.cmp_tolerance;
    if x.0 == y.0 {
        return Err(GeometryError::Invalid("arc endpoints must differ".into()));
    }
    if !domain.contains(&x.0, tau)? || !domain.contains(&y.0, tau)? {
        return Err(GeometryError::Invalid("arc endpoints must be members".into()));
    }
    let n = domain.dimension;
    let mut out = Vec::new();
    let try_push = |out: &mut Vec<SmoothArc>, c1: Vec<f64>, c2: Vec<f64>, label: &str| {
        if out.len() >= count {
            return;
        }
        let mut arc = SmoothArc {
            from: y.clone(),
            to: x.clone(),
            control1: c1,
            control2: c2,
            derivative_floor: 0.0,
            label: label.to_string(),
        };
        if let Ok(floor) = verify_arc(&arc, domain, cfg) {
            arc.derivative_floor = floor;
            out.push(arc);
        }
    };

    // Arc #0: the straight segment as a degenerate-curvature cubic.
    let seg1 = mix(&x.0, &y.0, 1.0 / 3.0);
    let seg2 = mix(&x.0, &y.0, 2.0 / 3.0);
    try_push(&mut out, seg1, seg2, "segment");

    // Deterministic power-curve stratum; patterns keep at least one linear
    // coordinate so the derivative cannot vanish at t = 0.
    if n >= 2 {
        let patterns: Vec<Vec<u32>> = power_patterns(n);
        for pat in &patterns {
            let (c1, c2) = power_arc(&y.0, &x.0, pat);
            let label = format!(
                "power-{}",
                pat.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("")
            );
            try_push(&mut out, c1, c2, &label);
        }
    }

    // Seeded bowed cubics.
    let basis = super::affine_basis(domain, cfg)?;
    let bow = 0.3 * dist(&x.0, &y.0);
    let mut idx = 0u64;
    let mut misses = 0usize;
    while out.len() < count && misses < 4096 {
        let mut rng = cfg.stream("arcs", idx);
        idx += 1;
        let mut d1 = vec![0.0; n];
        let mut d2 = vec![0.0; n];
        for dir in &basis.directions {
            let (a, b): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            d1 = add(&d1, &scale(dir, a * bow));
            d2 = add(&d2, &scale(dir, b * bow));
        }
        let c1 = add(&mix(&x.0, &y.0, 1.0 / 3.0), &d1);
        let c2 = add(&mix(&x.0, &y.0, 2.0 / 3.0), &d2);
        let before = out.len();
        try_push(&mut out, c1, c2, "seeded-cubic");
        if out.len() == before {
            misses += 1;
        }
    }

    if out.is_empty() {
        return Err(GeometryError::NoArcFound);
    }
    let note = if out.len() < count {
        Some(format!(
            "requested {count} arcs but only {} satisfied the invariants within budget",
            out.len()
        ))
    } else {
        None
    };
    Ok((out, note))
}

/// Exponent patterns for the power-curve stratum.
fn power_patterns(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for (a, b) in [(1u32, 2u32), (2, 1), (1, 3), (3, 1)] {
        let mut pat = vec![1u32; n];
        pat[0] = a;
        pat[1] = b;
        out.push(pat);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::CheckConfig;
    use crate::geometry::Halfspace;

    fn cfg() -> CheckConfig {
        CheckConfig {
            lambda_resolution: 101,
            ..CheckConfig::default()
        }
    }

    #[test]
    fn first_stratum_segment_is_the_main_diagonal() {
        let c = cfg();
        let b = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let segs = sample_segments(&b, 1, &c).unwrap();
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].y.0, vec![0.0, 0.0]);
        assert_eq!(segs[0].x.0, vec![1.0, 1.0]);
    }

    #[test]
    fn zero_count_yields_empty_list() {
        let c = cfg();
        let b = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        assert!(sample_segments(&b, 0, &c).unwrap().is_empty());
    }

    #[test]
    fn segment_domain_segments_stay_on_the_diagonal() {
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
        let segs = sample_segments(&seg, 10, &c).unwrap();
        assert!(!segs.is_empty());
        for s in &segs {
            for lam in [0.0, 0.3, 0.7, 1.0] {
                let p = s.at(lam);
                assert!((p[0] - p[1]).abs() < 1e-6, "segment left the diagonal");
            }
        }
    }

    #[test]
    fn singleton_domain_has_no_segments() {
        let c = cfg();
        let s = Domain::boxed(vec![0.0, 0.0], vec![0.0, 0.0]);
        assert!(matches!(
            sample_segments(&s, 1, &c),
            Err(GeometryError::ZeroDimensional)
        ));
    }

    #[test]
    fn arc_zero_is_the_segment() {
        let c = cfg();
        let b = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let (arcs, _) =
            sample_smooth_arcs(&b, &Point(vec![1.0, 1.0]), &Point(vec![0.0, 0.0]), 1, &c).unwrap();
        assert_eq!(arcs.len(), 1);
        assert_eq!(arcs[0].label, "segment");
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let p = arcs[0].at(t);
            assert!((p[0] - t).abs() < 1e-12 && (p[1] - t).abs() < 1e-12);
        }
    }

    #[test]
    fn power_arc_reproduces_the_gp_witness_curve() {
        // m(t) = (t^2, t) from (0,0) to (1,1).
        let (c1, c2) = power_arc(&[0.0, 0.0], &[1.0, 1.0], &[2, 1]);
        let arc = SmoothArc {
            from: Point(vec![0.0, 0.0]),
            to: Point(vec![1.0, 1.0]),
            control1: c1,
            control2: c2,
            derivative_floor: 0.0,
            label: "power-21".into(),
        };
        for t in [0.0, 0.1, 0.5, 0.9, 1.0] {
            let p = arc.at(t);
            assert!((p[0] - t * t).abs() < 1e-12, "x1 must be t^2");
            assert!((p[1] - t).abs() < 1e-12, "x2 must be t");
        }
        let d0 = arc.derivative(0.0);
        assert!(norm(&d0) > 0.5, "derivative must not vanish at t=0");
    }

    #[test]
    fn arcs_on_unit_ball_pass_an_independent_membership_recheck() {
        let c = cfg();
        let ball = Domain::ball(vec![0.0, 0.0], 1.0, false);
        let x = Point(vec![0.6, 0.0]);
        let y = Point(vec![-0.6, 0.0]);
        let (arcs, _) = sample_smooth_arcs(&ball, &x, &y, 5, &c).unwrap();
        assert_eq!(arcs.len(), 5);
        // Independent pass: re-walk a fresh lambda grid and re-test all four
        // invariants without calling verify_arc.
        for arc in &arcs {
            let m = 257;
            let mut prev: Option<Vec<f64>> = None;
            for k in 0..m {
                let t = k as f64 / (m - 1) as f64;
                let p = arc.at(t);
                assert!(ball.contains(&p, 1e-9).unwrap(), "image left the ball");
                assert!(norm(&arc.derivative(t)) > 0.0);
                if let Some(q) = &prev {
                    assert!(dist(q, &p) > 0.0, "consecutive grid images collide");
                }
                prev = Some(p);
            }
            assert_eq!(arc.at(0.0), y.0);
            assert_eq!(arc.at(1.0), x.0);
        }
    }

    #[test]
    fn identical_endpoints_are_rejected() {
        let c = cfg();
        let b = Domain::boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let p = Point(vec![0.5, 0.5]);
        assert!(sample_smooth_arcs(&b, &p, &p, 1, &c).is_err());
    }

    #[test]
    fn find_member_on_shifted_polyhedron() {
        let c = cfg();
        // Triangle far from the bounding-box center.
        let tri = Domain::polyhedron(
            vec![
                Halfspace::closed(vec![-1.0, 0.0], -0.8),
                Halfspace::closed(vec![0.0, -1.0], -0.8),
                Halfspace::closed(vec![1.0, 1.0], 1.9),
            ],
            (vec![0.0, 0.0], vec![1.0, 1.0]),
        );
        let m = find_member(&tri, &c).unwrap();
        assert!(tri.contains(&m, 1e-9).unwrap());
    }
}
