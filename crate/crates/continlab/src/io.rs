//! JSON schemas for domains, functions, relations and configurations, as
//! consumed by the command-line interface.  All documents are stamped
//! `"schema": "continlab/1"`.

use crate::core::CheckConfig;
use crate::functions::expr::Pred;
use crate::functions::{Body, RealFunction, TabulatedGrid};
use crate::geometry::{mix, Domain, Halfspace, MembershipOracle, Point};
use crate::relations::Relation;
use serde::Deserialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid subject document: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Expr(#[from] crate::functions::expr::ExprError),
    #[error("oracle domain failed the midpoint convexity spot-check")]
    OracleNotConvex,
}

#[derive(Debug, Deserialize)]
pub struct HalfspaceSpec {
    pub normal: Vec<f64>,
    pub offset: f64,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum DomainSpec {
    Box {
        lower: Vec<f64>,
        upper: Vec<f64>,
        /// Entries like "lower1" or "upper2" (1-based), or "all".
        #[serde(default)]
        open_faces: Vec<String>,
    },
    Polyhedron {
        halfspaces: Vec<HalfspaceSpec>,
        bounding_box: Vec<Vec<f64>>,
        #[serde(default)]
        cone: bool,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
        #[serde(default)]
        open: bool,
    },
    Simplex {
        vertices: Vec<Vec<f64>>,
    },
    Orthant {
        dim: usize,
        #[serde(default = "default_window")]
        window: f64,
    },
    Oracle {
        /// Membership predicate over `x1..xn` in the expression
        /// mini-language with comparisons and `&`/`|`.
        membership: String,
        dimension: usize,
        bounding_box: Vec<Vec<f64>>,
        #[serde(default)]
        declared_convex: bool,
        #[serde(default)]
        declared_open: Option<bool>,
        #[serde(default)]
        declared_polyhedron: Option<bool>,
        #[serde(default)]
        declared_c_prime: Option<bool>,
    },
}

fn default_window() -> f64 {
    1.0
}

impl DomainSpec {
    pub fn build(self, cfg: &CheckConfig) -> Result<Domain, IoError> {
        let domain = match self {
            DomainSpec::Box {
                lower,
                upper,
                open_faces,
            } => {
                let n = lower.len();
                if upper.len() != n {
                    return Err(IoError::Invalid("box bounds disagree on dimension".into()));
                }
                let mut open_lower = vec![false; n];
                let mut open_upper = vec![false; n];
                for face in &open_faces {
                    if face == "all" {
                        open_lower = vec![true; n];
                        open_upper = vec![true; n];
                        continue;
                    }
                    let (kind, idx) = face.split_at(5);
                    let i: usize = idx
                        .parse()
                        .map_err(|_| IoError::Invalid(format!("bad open face '{face}'")))?;
                    if i == 0 || i > n {
                        return Err(IoError::Invalid(format!("open face '{face}' out of range")));
                    }
                    match kind {
                        "lower" => open_lower[i - 1] = true,
                        "upper" => open_upper[i - 1] = true,
                        _ => return Err(IoError::Invalid(format!("bad open face '{face}'"))),
                    }
                }
                Domain {
                    dimension: n,
                    variant: crate::geometry::DomainVariant::Box {
                        lower,
                        upper,
                        open_lower,
                        open_upper,
                    },
                }
            }
            DomainSpec::Polyhedron {
                halfspaces,
                bounding_box,
                cone,
            } => {
                let bb = parse_bbox(&bounding_box)?;
                let hs = halfspaces
                    .into_iter()
                    .map(|h| Halfspace {
                        normal: h.normal,
                        offset: h.offset,
                        strict: h.strict,
                    })
                    .collect();
                if cone {
                    Domain::cone_window(hs, bb)
                } else {
                    Domain::polyhedron(hs, bb)
                }
            }
            DomainSpec::Ball { center, radius, open } => Domain::ball(center, radius, open),
            DomainSpec::Simplex { vertices } => {
                if vertices.is_empty() {
                    return Err(IoError::Invalid("simplex needs vertices".into()));
                }
                Domain::simplex(vertices)
            }
            DomainSpec::Orthant { dim, window } => {
                let mut d = Domain::orthant(dim);
                if let crate::geometry::DomainVariant::PositiveOrthant { window: w, .. } =
                    &mut d.variant
                {
                    *w = window;
                }
                d
            }
            DomainSpec::Oracle {
                membership,
                dimension,
                bounding_box,
                declared_convex,
                declared_open,
                declared_polyhedron,
                declared_c_prime,
            } => {
                let pred = Pred::parse_membership(&membership, dimension)?;
                let member = Arc::new(move |p: &[f64]| -> bool {
                    pred.eval(p).unwrap_or(false)
                });
                let domain = Domain::oracle(MembershipOracle {
                    name: "json-oracle".into(),
                    member,
                    declared_convex,
                    bounding_box: parse_bbox(&bounding_box)?,
                    declared_open,
                    declared_polyhedron,
                    declared_c_prime,
                });
                if declared_convex {
                    spot_check_convexity(&domain, cfg)?;
                }
                domain
            }
        };
        Ok(domain)
    }
}

fn parse_bbox(raw: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<f64>), IoError> {
    if raw.len() != 2 || raw[0].len() != raw[1].len() {
        return Err(IoError::Invalid(
            "bounding_box must be [lower, upper] of equal dimension".into(),
        ));
    }
    Ok((raw[0].clone(), raw[1].clone()))
}

/// Midpoint-closure spot check for declared-convex oracle domains.
pub fn spot_check_convexity(domain: &Domain, cfg: &CheckConfig) -> Result<(), IoError> {
    let tau = cfg.cmp_tolerance;
    let members = crate::geometry::seeded_members(domain, cfg, "oracle-convexity", 64);
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            let mid = mix(&members[i], &members[j], 0.5);
            if !domain.contains(&mid, tau).unwrap_or(false) {
                return Err(IoError::OracleNotConvex);
            }
        }
    }
    Ok(())
}

/// One of `builtin`, `expression` (+ `arity`), or `tabulation`.
#[derive(Debug, Deserialize)]
pub struct FunctionSpec {
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub expression: Option<String>,
    #[serde(default)]
    pub arity: Option<usize>,
    #[serde(default)]
    pub tabulation: Option<TabulatedGrid>,
}

impl FunctionSpec {
    pub fn build(self) -> Result<RealFunction, IoError> {
        if let Some(name) = self.builtin {
            return Ok(match name.as_str() {
                "gp" => RealFunction::gp(),
                "gp-swapped" => RealFunction::gp_swapped(),
                "sin-reciprocal" => RealFunction::sin_reciprocal(1, 0),
                other => {
                    return Err(IoError::Invalid(format!(
                        "unknown builtin function '{other}'"
                    )))
                }
            });
        }
        if let Some(src) = self.expression {
            let arity = self
                .arity
                .ok_or_else(|| IoError::Invalid("expression functions need 'arity'".into()))?;
            return RealFunction::from_expression("json-expression", arity, &src)
                .map_err(|e| IoError::Invalid(e.to_string()));
        }
        if let Some(grid) = self.tabulation {
            return Ok(RealFunction {
                id: "json-tabulation".into(),
                arity: grid.lo.len(),
                body: Body::Tabulation(grid),
            });
        }
        Err(IoError::Invalid(
            "a function spec needs 'builtin', 'expression' or 'tabulation'".into(),
        ))
    }
}

#[derive(Debug, Deserialize)]
pub struct TableSpec {
    pub points: Vec<Vec<f64>>,
    pub matrix: Vec<Vec<bool>>,
}

/// `{"variant": "utility"|"predicate"|"table", ..., "domain": DomainSpec}`.
#[derive(Debug, Deserialize)]
pub struct RelationSpec {
    pub variant: String,
    #[serde(default)]
    pub utility: Option<String>,
    #[serde(default)]
    pub predicate: Option<String>,
    #[serde(default)]
    pub table: Option<TableSpec>,
    pub domain: DomainSpec,
}

impl RelationSpec {
    pub fn build(self, cfg: &CheckConfig) -> Result<Relation, IoError> {
        let domain = self.domain.build(cfg)?;
        let n = domain.dimension;
        Ok(match self.variant.as_str() {
            "utility" => {
                let src = self
                    .utility
                    .ok_or_else(|| IoError::Invalid("utility variant needs 'utility'".into()))?;
                let u = RealFunction::from_expression("json-utility", n, &src)
                    .map_err(|e| IoError::Invalid(e.to_string()))?;
                Relation::from_utility("json-relation", domain, u)
            }
            "predicate" => {
                let src = self
                    .predicate
                    .ok_or_else(|| IoError::Invalid("predicate variant needs 'predicate'".into()))?;
                let pred = Pred::parse(&src, n)?;
                let weak = Arc::new(move |x: &[f64], y: &[f64]| -> bool {
                    let mut vars = Vec::with_capacity(x.len() + y.len());
                    vars.extend_from_slice(x);
                    vars.extend_from_slice(y);
                    pred.eval(&vars).unwrap_or(false)
                });
                Relation::from_predicate("json-relation", domain, src, weak)
            }
            "table" => {
                let t = self
                    .table
                    .ok_or_else(|| IoError::Invalid("table variant needs 'table'".into()))?;
                let points: Vec<Point> = t.points.into_iter().map(Point).collect();
                Relation::tabulated("json-relation", domain, points, t.matrix)
            }
            other => return Err(IoError::Invalid(format!("unknown relation variant '{other}'"))),
        })
    }
}

/// A check subject loaded from a JSON document.
#[derive(Debug, Deserialize)]
pub struct SubjectSpec {
    #[serde(default)]
    pub schema: Option<String>,
    #[serde(default)]
    pub function: Option<FunctionSpec>,
    #[serde(default)]
    pub domain: Option<DomainSpec>,
    #[serde(default)]
    pub relation: Option<RelationSpec>,
}

pub enum LoadedSubject {
    Function { f: RealFunction, domain: Domain },
    Relation(Relation),
}

impl SubjectSpec {
    pub fn build(self, cfg: &CheckConfig) -> Result<LoadedSubject, IoError> {
        if let Some(schema) = &self.schema {
            if schema != "continlab/1" {
                return Err(IoError::Invalid(format!("unsupported schema '{schema}'")));
            }
        }
        match (self.function, self.domain, self.relation) {
            (Some(f), Some(d), None) => Ok(LoadedSubject::Function {
                f: f.build()?,
                domain: d.build(cfg)?,
            }),
            (None, None, Some(r)) => Ok(LoadedSubject::Relation(r.build(cfg)?)),
            _ => Err(IoError::Invalid(
                "a subject document needs either 'function' + 'domain' or 'relation'".into(),
            )),
        }
    }
}

/// Configuration file mirroring the check-config field names; missing fields
/// fall back to defaults.
pub fn load_config(json: &str) -> Result<CheckConfig, IoError> {
    let cfg: CheckConfig = serde_json::from_str(json)?;
    cfg.validate().map_err(IoError::Invalid)?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_with_open_faces() {
        let cfg = CheckConfig::default();
        let spec: DomainSpec = serde_json::from_str(
            r#"{"variant":"box","lower":[0,0],"upper":[1,1],"open_faces":["lower1","upper2"]}"#,
        )
        .unwrap();
        let d = spec.build(&cfg).unwrap();
        assert!(!d.contains(&[0.0, 0.5], 1e-9).unwrap());
        assert!(d.contains(&[1.0, 0.5], 1e-9).unwrap());
        assert!(!d.contains(&[0.5, 1.0], 1e-9).unwrap());
    }

    #[test]
    fn oracle_domain_spot_checks_convexity() {
        let cfg = CheckConfig::default();
        // A genuinely convex oracle loads fine.
        let ok: DomainSpec = serde_json::from_str(
            r#"{"variant":"oracle","membership":"x1^2 <= x2 & x2 <= 2*x1 & x2 <= 1",
                "dimension":2,"bounding_box":[[0,0],[1,1]],"declared_convex":true}"#,
        )
        .unwrap();
        assert!(ok.build(&cfg).is_ok());
        // A non-convex oracle declared convex is rejected.
        let bad: DomainSpec = serde_json::from_str(
            r#"{"variant":"oracle","membership":"x1^2 + x2^2 >= 0.25 & x1 <= 1 & x2 <= 1 & x1 >= 0 & x2 >= 0",
                "dimension":2,"bounding_box":[[0,0],[1,1]],"declared_convex":true}"#,
        )
        .unwrap();
        assert!(matches!(bad.build(&cfg), Err(IoError::OracleNotConvex)));
    }

    #[test]
    fn relation_from_utility_expression() {
        let cfg = CheckConfig::default();
        let spec: RelationSpec = serde_json::from_str(
            r#"{"variant":"utility","utility":"x1 + x2",
                "domain":{"variant":"box","lower":[0,0],"upper":[1,1]}}"#,
        )
        .unwrap();
        let rel = spec.build(&cfg).unwrap();
        assert!(rel.weak(&[1.0, 1.0], &[0.0, 0.0], 1e-9).unwrap());
        assert!(!rel.weak(&[0.0, 0.0], &[1.0, 1.0], 1e-9).unwrap());
    }

    #[test]
    fn relation_from_pair_predicate() {
        let cfg = CheckConfig::default();
        let spec: RelationSpec = serde_json::from_str(
            r#"{"variant":"predicate","predicate":"x1 >= y1 & x2 >= y2",
                "domain":{"variant":"box","lower":[0,0],"upper":[1,1]}}"#,
        )
        .unwrap();
        let rel = spec.build(&cfg).unwrap();
        assert!(rel.weak(&[0.7, 0.7], &[0.2, 0.2], 1e-9).unwrap());
        assert!(!rel.weak(&[0.7, 0.1], &[0.2, 0.2], 1e-9).unwrap());
    }

    #[test]
    fn config_file_roundtrip_with_partial_fields() {
        let cfg = load_config(r#"{"grid_resolution": 51, "seed": 7}"#).unwrap();
        assert_eq!(cfg.grid_resolution, 51);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.lambda_resolution, CheckConfig::default().lambda_resolution);
        assert!(load_config(r#"{"grid_resolution": 1}"#).is_err());
    }
}
