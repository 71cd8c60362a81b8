//! The theorem lattice as a conditional implication graph: postulate nodes,
//! theorem-backed edges with citations into the bundled statement registry,
//! forward-chaining closure with provenance, and the audit that compares
//! derived facts against direct checks.
//!
//! Side conditions are established either by a direct Holds verdict on the
//! matching fact or by an explicit user assertion; they are never assumed
//! silently.  Contrapositives propagate only across biconditional pairs with
//! a single antecedent and a single consequent.

use crate::continuity::PostulateId;
use crate::core::{Robustness, Verdict};
use once_cell::sync::Lazy;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};

// ---------------------------------------------------------------------------
// Facts
// ---------------------------------------------------------------------------

/// Everything the deduction engine can know about one subject: continuity
/// postulates, order/convexity/monotonicity/algebraic properties, set-level
/// facts, function-level facts, and terminal representability facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FactId {
    Post(PostulateId),
    ClosedGraph,
    OpenStrictGraph,
    Complete,
    Transitive,
    Reflexive,
    NonTrivial,
    SemiTransitive,
    TransitiveIndifference,
    ConvexUpperSections,
    StrictConvexUpperSections,
    ConvexIndifference,
    StarConvex,
    StrictlyStarConvex,
    LocallyConvexUpperSections,
    WeaklyMonotone,
    StronglyMonotone,
    Additive,
    Homothetic,
    Independent,
    OrderDense,
    PropertyB,
    PropertyC,
    DomainOpen,
    FnLinearContinuous,
    FnJointContinuous,
    FnSeparateContinuous,
    FnArcContinuous,
    FnConcave,
    FnConvex,
    FnQuasiConcave,
    FnQuasiConvex,
    RepresentableMixtureLinear,
    RepresentableContinuousUtility,
}

impl FactId {
    pub fn id(&self) -> String {
        match self {
            FactId::Post(p) => p.id().to_string(),
            FactId::ClosedGraph => "closed-graph".into(),
            FactId::OpenStrictGraph => "open-strict-graph".into(),
            FactId::Complete => "complete".into(),
            FactId::Transitive => "transitive".into(),
            FactId::Reflexive => "reflexive".into(),
            FactId::NonTrivial => "non-trivial".into(),
            FactId::SemiTransitive => "semi-transitive".into(),
            FactId::TransitiveIndifference => "transitive-indifference".into(),
            FactId::ConvexUpperSections => "convex-upper-sections".into(),
            FactId::StrictConvexUpperSections => "strict-convex-upper-sections".into(),
            FactId::ConvexIndifference => "convex-indifference".into(),
            FactId::StarConvex => "star-convex".into(),
            FactId::StrictlyStarConvex => "strictly-star-convex".into(),
            FactId::LocallyConvexUpperSections => "locally-convex-upper-sections".into(),
            FactId::WeaklyMonotone => "weakly-monotone".into(),
            FactId::StronglyMonotone => "strongly-monotone".into(),
            FactId::Additive => "additive".into(),
            FactId::Homothetic => "homothetic".into(),
            FactId::Independent => "independent".into(),
            FactId::OrderDense => "order-dense".into(),
            FactId::PropertyB => "property-b".into(),
            FactId::PropertyC => "property-c".into(),
            FactId::DomainOpen => "domain-open".into(),
            FactId::FnLinearContinuous => "fn-linear-continuous".into(),
            FactId::FnJointContinuous => "fn-joint-continuous".into(),
            FactId::FnSeparateContinuous => "fn-separate-continuous".into(),
            FactId::FnArcContinuous => "fn-arc-continuous".into(),
            FactId::FnConcave => "fn-concave".into(),
            FactId::FnConvex => "fn-convex".into(),
            FactId::FnQuasiConcave => "fn-quasi-concave".into(),
            FactId::FnQuasiConvex => "fn-quasi-convex".into(),
            FactId::RepresentableMixtureLinear => "representable-mixture-linear".into(),
            FactId::RepresentableContinuousUtility => "representable-continuous-utility".into(),
        }
    }

    pub fn parse(s: &str) -> Option<FactId> {
        if let Some(p) = PostulateId::parse(s) {
            return Some(FactId::Post(p));
        }
        ALL_FACTS.iter().copied().find(|f| f.id() == s)
    }
}

impl Serialize for FactId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.id())
    }
}

static ALL_FACTS: Lazy<Vec<FactId>> = Lazy::new(|| {
    let mut v: Vec<FactId> = PostulateId::all().iter().map(|p| FactId::Post(*p)).collect();
    v.extend([
        FactId::ClosedGraph,
        FactId::OpenStrictGraph,
        FactId::Complete,
        FactId::Transitive,
        FactId::Reflexive,
        FactId::NonTrivial,
        FactId::SemiTransitive,
        FactId::TransitiveIndifference,
        FactId::ConvexUpperSections,
        FactId::StrictConvexUpperSections,
        FactId::ConvexIndifference,
        FactId::StarConvex,
        FactId::StrictlyStarConvex,
        FactId::LocallyConvexUpperSections,
        FactId::WeaklyMonotone,
        FactId::StronglyMonotone,
        FactId::Additive,
        FactId::Homothetic,
        FactId::Independent,
        FactId::OrderDense,
        FactId::PropertyB,
        FactId::PropertyC,
        FactId::DomainOpen,
        FactId::FnLinearContinuous,
        FactId::FnJointContinuous,
        FactId::FnSeparateContinuous,
        FactId::FnArcContinuous,
        FactId::FnConcave,
        FactId::FnConvex,
        FactId::FnQuasiConcave,
        FactId::FnQuasiConvex,
        FactId::RepresentableMixtureLinear,
        FactId::RepresentableContinuousUtility,
    ]);
    v
});

// ---------------------------------------------------------------------------
// Side conditions
// ---------------------------------------------------------------------------

/// A condition an edge needs before it may fire.  Everything except the
/// structural placeholders and opaque assertions maps to a checkable fact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SideCondition {
    Complete,
    Transitive,
    Reflexive,
    NonTrivial,
    SemiTransitive,
    TransitiveIndifference,
    ConvexUpperSections,
    ConvexIndifference,
    LocallyConvexSections,
    WeaklyMonotone,
    StronglyMonotone,
    Additive,
    ConeDomain,
    Independent,
    PropertyB,
    PropertyC,
    /// Always true in this toolkit: domains live in a real vector space.
    VectorSpace,
    /// Always true in this toolkit: dimensions are finite.
    FiniteDimensional,
    /// Named assertion; established by the user or by a Holds verdict on a
    /// fact with the same id.
    Asserted(String),
}

impl SideCondition {
    pub fn id(&self) -> String {
        match self {
            SideCondition::Complete => "complete".into(),
            SideCondition::Transitive => "transitive".into(),
            SideCondition::Reflexive => "reflexive".into(),
            SideCondition::NonTrivial => "non-trivial".into(),
            SideCondition::SemiTransitive => "semi-transitive".into(),
            SideCondition::TransitiveIndifference => "transitive-indifference".into(),
            SideCondition::ConvexUpperSections => "convex-upper-sections".into(),
            SideCondition::ConvexIndifference => "convex-indifference".into(),
            SideCondition::LocallyConvexSections => "locally-convex-sections".into(),
            SideCondition::WeaklyMonotone => "weakly-monotone".into(),
            SideCondition::StronglyMonotone => "strongly-monotone".into(),
            SideCondition::Additive => "additive".into(),
            SideCondition::ConeDomain => "cone-domain".into(),
            SideCondition::Independent => "independent".into(),
            SideCondition::PropertyB => "property-b".into(),
            SideCondition::PropertyC => "property-c".into(),
            SideCondition::VectorSpace => "vector-space".into(),
            SideCondition::FiniteDimensional => "finite-dimensional".into(),
            SideCondition::Asserted(t) => format!("asserted({t})"),
        }
    }

    /// The checkable fact backing this condition, when one exists.
    pub fn backing_fact(&self) -> Option<FactId> {
        Some(match self {
            SideCondition::Complete => FactId::Complete,
            SideCondition::Transitive => FactId::Transitive,
            SideCondition::Reflexive => FactId::Reflexive,
            SideCondition::NonTrivial => FactId::NonTrivial,
            SideCondition::SemiTransitive => FactId::SemiTransitive,
            SideCondition::TransitiveIndifference => FactId::TransitiveIndifference,
            SideCondition::ConvexUpperSections => FactId::ConvexUpperSections,
            SideCondition::ConvexIndifference => FactId::ConvexIndifference,
            SideCondition::LocallyConvexSections => FactId::LocallyConvexUpperSections,
            SideCondition::WeaklyMonotone => FactId::WeaklyMonotone,
            SideCondition::StronglyMonotone => FactId::StronglyMonotone,
            SideCondition::Additive => FactId::Additive,
            SideCondition::Independent => FactId::Independent,
            SideCondition::PropertyB => FactId::PropertyB,
            SideCondition::PropertyC => FactId::PropertyC,
            SideCondition::Asserted(tag) => return FactId::parse(tag),
            SideCondition::ConeDomain
            | SideCondition::VectorSpace
            | SideCondition::FiniteDimensional => return None,
        })
    }
}

impl Serialize for SideCondition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.id())
    }
}

// ---------------------------------------------------------------------------
// Edges and the graph
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Citation {
    pub locator: String,
    pub quote: String,
}

#[derive(Debug, Clone)]
pub struct ImplicationEdge {
    pub id: String,
    pub antecedents: Vec<FactId>,
    pub consequents: Vec<FactId>,
    pub conditions: Vec<SideCondition>,
    pub citation: Citation,
    /// Id of the reverse edge when this edge is half of a biconditional.
    pub bicond_pair: Option<String>,
}

impl Serialize for ImplicationEdge {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ImplicationEdge", 6)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("antecedents", &self.antecedents)?;
        st.serialize_field("consequents", &self.consequents)?;
        st.serialize_field("conditions", &self.conditions)?;
        st.serialize_field("citation", &self.citation)?;
        st.serialize_field("bicond_pair", &self.bicond_pair)?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ImplicationGraph {
    pub edges: Vec<ImplicationEdge>,
}

/// Statement registry: every edge's citation quote appears verbatim here.
/// The registry is the single documentation table for the encoded results.
pub const CITATION_TABLE: &str = r#"
Theorem 1 :: Let X be a convex set with property C. Then every real-valued quasi-concave (or quasi-convex) function defined on X is linearly continuous iff it is jointly continuous.
Proposition 1 :: Every concave (or a convex) real-valued function on a non-empty, open and convex subset is linearly continuous.
Corollary 1 :: Every real-valued concave (or a convex) function on a non-empty, open and convex subset is continuous.
Theorem 2 :: A binary relation on a convex subset of a Euclidean space is linearly continuous iff it is mixture-continuous and Archimedean.
Theorem 3 :: For a complete and transitive relation on a convex subset of a Euclidean space with (i) property C and a convex relation, or (ii) property B and a weakly monotonic relation, the following seven continuity postulates are equivalent: graph continuous, continuous, linearly continuous, mixture-continuous, Archimedean, Wold-continuous, and weakly Wold-continuous.
Proposition 2 :: For any relation on a convex subset of a Euclidean space, only the following relationships hold. (a) Graph continuity implies continuity implies linear continuity, which is equivalent to mixture-continuity and Archimedean together, which implies strict-Archimedean, which implies Archimedean. (b) Wold-continuity implies weak Wold-continuity. If the relation is complete and transitive: (c) Continuity implies graph continuity and Wold-continuity. (d) Strict-Archimedean implies mixture-continuity, which implies Archimedean and weak Wold-continuity. (e) Weak Wold-continuity implies Archimedean.
Theorem 4 :: For a binary relation on a convex set with property C, the relation is linearly continuous iff it is continuous, provided that any of the following holds: (a) the relation is complete and the weak and strict parts have locally convex upper sections, (b) the weak and strict parts have locally convex sections, (c) the relation is reflexive, demonstrates convex indifference, and its symmetric part is transitive.
Theorem 5 :: For an additive binary relation on a convex cone: (a) the relation is upper mixture-continuous iff it is lower mixture-continuous iff it is mixture-continuous; (b) the strict part is upper strict-Archimedean iff it is lower strict-Archimedean iff it is strict-Archimedean.
Theorem 6 :: For every convex, complete and transitive relation on a convex subset of a vector space, the following continuity postulates are equivalent: Archimedean, strict Archimedean, mixture-continuous and weakly Wold-continuous.
Theorem 7 :: For a binary relation on a convex set with property C, the relation is arc-continuous iff it is continuous iff it is strongly mixture-continuous and strongly Archimedean.
Proposition 3 :: Under axioms A1-A3 of the finite-state-space model, if the relation is mixture-continuous, then it is strongly monotone.
Proposition 4 :: For any transitive relation on a vector space: (a) the relation is additive and homothetic iff it is independent; (b) if it is complete and mixture-continuous, then it is additive iff it is independent.
Proposition 5 :: A non-trivial relation on a vector space is representable by a mixture-linear function iff it is non-trivial, semi-transitive, additive, upper mixture-continuous and upper Archimedean.
Proposition 6 :: The strict preference of the non-decisive consumer model (irreflexive, strongly monotonic, transitive) is Archimedean iff it is strict-Archimedean iff it has open sections.
Proposition 7 :: The preference relation of the non-transitive consumer model (continuous, complete, convex with convex strict part) is Archimedean iff it is mixture-continuous iff it is continuous.
Proposition 8 :: On a convex set with property C, every non-trivial, reflexive, mixture-continuous and Archimedean binary relation which demonstrates convex indifference and has a transitive symmetric part, is continuous, complete and transitive.
Proposition 9 :: Every non-trivial, semi-transitive, additive, upper mixture-continuous and upper Archimedean relation on a vector space, is complete and transitive.
Corollary 2 :: Every complete, transitive, weakly monotonic preference relation on the non-negative orthant is representable by a continuous utility function iff the preference relation satisfies any of the following eight continuity postulates: graph continuous, continuous, arc-continuous, linearly continuous, mixture-continuous, Archimedean, Wold-continuous, and weakly Wold-continuous.
Corollary 3 :: A binary relation defined on a mixture set is representable by a mixture-linear function iff it is complete, transitive, independent and satisfies any of the following three continuity postulates: mixture-continuous, Archimedean, and weakly Wold-continuous.
Corollary 4 :: Every non-trivial, semi-transitive and additive relation on a topological vector space whose weak upper section at the origin is closed and whose strict upper section at the origin is open, is complete, transitive, continuous and representable by a continuous linear utility function.
Observation 1 :: Replacing the closed-sections assumption with upper mixture-continuity is ex-post inessential: under locally convex upper sections the two are equivalent.
Observation 2 :: The continuity assumptions in the classical equilibrium models (complete, transitive, convex preferences on property-C consumption sets) can be replaced by any of the equivalent continuity postulates.
Lemma 2 :: If the relation has locally convex upper (lower) sections, then it has closed upper (lower) sections iff it is upper (lower) mixture-continuous.
Lemma 3 :: On a set with property C, if the strict part has locally convex upper (lower) sections, then it has open upper (lower) sections iff the relation is upper (lower) strict-Archimedean.
Lemma 4 :: A reflexive, mixture-continuous and Archimedean binary relation on a convex set which demonstrates convex indifference and has a transitive symmetric part has convex weak and strict sections.
Lemma 5 :: For a complete and transitive relation on a convex subset of a vector space the following are equivalent: (C1) the relation is convex, (C2) the strict part is convex, (C3) the relation is star-convex. Moreover, if the relation is weakly Wold-continuous, then its strict star-convexity implies the convexity properties (C1)-(C3).
Lemma 6 :: A strongly mixture-continuous binary relation on a convex subset is strong Archimedean iff it is strongly strict-Archimedean.
Definition (scalar) :: The relation is mixture-continuous if it is upper and lower mixture-continuous; the Archimedean and strict-Archimedean properties combine their upper and lower halves analogously.
Definition (section) :: The relation is continuous if it has closed sections and its asymmetric part has open sections.
Definition (graph) :: The relation is graph continuous if it has closed graph and its asymmetric part has open graph.
Definition (local convexity) :: Every convex set is locally convex.
"#;

fn fact(p: PostulateId) -> FactId {
    FactId::Post(p)
}

struct GraphBuilder {
    edges: Vec<ImplicationEdge>,
}

impl GraphBuilder {
    fn new() -> Self {
        GraphBuilder { edges: Vec::new() }
    }

    fn edge(
        &mut self,
        id: &str,
        ants: Vec<FactId>,
        cons: Vec<FactId>,
        conds: Vec<SideCondition>,
        locator: &str,
        quote: &str,
    ) {
        self.edges.push(ImplicationEdge {
            id: id.to_string(),
            antecedents: ants,
            consequents: cons,
            conditions: conds,
            citation: Citation {
                locator: locator.to_string(),
                quote: quote.to_string(),
            },
            bicond_pair: None,
        });
    }

    fn bicond(
        &mut self,
        id: &str,
        a: Vec<FactId>,
        b: Vec<FactId>,
        conds: Vec<SideCondition>,
        locator: &str,
        quote: &str,
    ) {
        let fwd = format!("{id}-fwd");
        let bwd = format!("{id}-bwd");
        self.edges.push(ImplicationEdge {
            id: fwd.clone(),
            antecedents: a.clone(),
            consequents: b.clone(),
            conditions: conds.clone(),
            citation: Citation {
                locator: locator.to_string(),
                quote: quote.to_string(),
            },
            bicond_pair: Some(bwd.clone()),
        });
        self.edges.push(ImplicationEdge {
            id: bwd,
            antecedents: b,
            consequents: a,
            conditions: conds,
            citation: Citation {
                locator: locator.to_string(),
                quote: quote.to_string(),
            },
            bicond_pair: Some(fwd),
        });
    }

    /// Pairwise biconditional clique over a postulate family.
    fn clique(
        &mut self,
        id: &str,
        members: &[FactId],
        conds: Vec<SideCondition>,
        locator: &str,
        quote: &str,
    ) {
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                self.bicond(
                    &format!("{id}-{}-{}", members[i].id(), members[j].id()),
                    vec![members[i]],
                    vec![members[j]],
                    conds.clone(),
                    locator,
                    quote,
                );
            }
        }
    }
}

/// The static implication graph; one edge (or biconditional pair, or clique)
/// per encoded result.
pub fn build_graph() -> &'static ImplicationGraph {
    &GRAPH
}

static GRAPH: Lazy<ImplicationGraph> = Lazy::new(|| {
    use PostulateId::*;
    use SideCondition as SC;
    let mut g = GraphBuilder::new();

    // Definitional composition of the combined postulates.
    g.bicond(
        "def-mixture",
        vec![fact(UpperMixtureContinuous), fact(LowerMixtureContinuous)],
        vec![fact(MixtureContinuous)],
        vec![],
        "Definition (scalar)",
        "mixture-continuous if it is upper and lower mixture-continuous",
    );
    g.bicond(
        "def-archimedean",
        vec![fact(UpperArchimedean), fact(LowerArchimedean)],
        vec![fact(Archimedean)],
        vec![],
        "Definition (scalar)",
        "combine their upper and lower halves analogously",
    );
    g.bicond(
        "def-strict-archimedean",
        vec![fact(UpperStrictArchimedean), fact(LowerStrictArchimedean)],
        vec![fact(StrictArchimedean)],
        vec![],
        "Definition (scalar)",
        "combine their upper and lower halves analogously",
    );
    g.bicond(
        "def-continuous",
        vec![
            fact(ClosedUpperSections),
            fact(ClosedLowerSections),
            fact(OpenStrictUpper),
            fact(OpenStrictLower),
        ],
        vec![fact(Continuous)],
        vec![],
        "Definition (section)",
        "continuous if it has closed sections and its asymmetric part has open sections",
    );
    g.bicond(
        "def-graph",
        vec![FactId::ClosedGraph, FactId::OpenStrictGraph],
        vec![fact(GraphContinuous)],
        vec![],
        "Definition (graph)",
        "graph continuous if it has closed graph and its asymmetric part has open graph",
    );
    g.edge(
        "def-convex-locally-convex",
        vec![FactId::ConvexUpperSections],
        vec![FactId::LocallyConvexUpperSections],
        vec![],
        "Definition (local convexity)",
        "Every convex set is locally convex",
    );

    // Theorem 1 and its function-level companions.
    g.edge(
        "thm1-qcc",
        vec![FactId::FnLinearContinuous, FactId::FnQuasiConcave],
        vec![FactId::FnJointContinuous],
        vec![SC::PropertyC],
        "Theorem 1",
        "quasi-concave (or quasi-convex) function defined on X is linearly continuous iff it is jointly continuous",
    );
    g.edge(
        "thm1-qcv",
        vec![FactId::FnLinearContinuous, FactId::FnQuasiConvex],
        vec![FactId::FnJointContinuous],
        vec![SC::PropertyC],
        "Theorem 1",
        "quasi-concave (or quasi-convex) function defined on X is linearly continuous iff it is jointly continuous",
    );
    g.edge(
        "fn-joint-implies-linear",
        vec![FactId::FnJointContinuous],
        vec![FactId::FnLinearContinuous],
        vec![],
        "Theorem 1",
        "linearly continuous iff it is jointly continuous",
    );
    g.edge(
        "prop1-concave",
        vec![FactId::FnConcave],
        vec![FactId::FnLinearContinuous],
        vec![SC::Asserted("domain-open".into())],
        "Proposition 1",
        "concave (or a convex) real-valued function on a non-empty, open and convex subset is linearly continuous",
    );
    g.edge(
        "prop1-convex",
        vec![FactId::FnConvex],
        vec![FactId::FnLinearContinuous],
        vec![SC::Asserted("domain-open".into())],
        "Proposition 1",
        "concave (or a convex) real-valued function on a non-empty, open and convex subset is linearly continuous",
    );
    g.edge(
        "cor1-concave",
        vec![FactId::FnConcave],
        vec![FactId::FnJointContinuous],
        vec![SC::Asserted("domain-open".into())],
        "Corollary 1",
        "concave (or a convex) function on a non-empty, open and convex subset is continuous",
    );
    g.edge(
        "cor1-convex",
        vec![FactId::FnConvex],
        vec![FactId::FnJointContinuous],
        vec![SC::Asserted("domain-open".into())],
        "Corollary 1",
        "concave (or a convex) function on a non-empty, open and convex subset is continuous",
    );

    // Theorem 2: linear continuity = mixture continuity + Archimedean.
    g.bicond(
        "thm2",
        vec![fact(LinearContinuous)],
        vec![fact(MixtureContinuous), fact(Archimedean)],
        vec![],
        "Theorem 2",
        "linearly continuous iff it is mixture-continuous and Archimedean",
    );

    // Theorem 3: the seven-postulate cliques.
    let seven = [
        fact(GraphContinuous),
        fact(Continuous),
        fact(LinearContinuous),
        fact(MixtureContinuous),
        fact(Archimedean),
        fact(WoldContinuous),
        fact(WeakWoldContinuous),
    ];
    g.clique(
        "thm3a",
        &seven,
        vec![
            SC::Complete,
            SC::Transitive,
            SC::PropertyC,
            SC::ConvexUpperSections,
        ],
        "Theorem 3",
        "the following seven continuity postulates are equivalent",
    );
    g.clique(
        "thm3b",
        &seven,
        vec![
            SC::Complete,
            SC::Transitive,
            SC::PropertyB,
            SC::WeaklyMonotone,
        ],
        "Theorem 3",
        "the following seven continuity postulates are equivalent",
    );

    // Proposition 2, unconditional chain.
    g.edge(
        "prop2a-graph-continuous",
        vec![fact(GraphContinuous)],
        vec![fact(Continuous)],
        vec![],
        "Proposition 2 (a)",
        "Graph continuity implies continuity",
    );
    g.edge(
        "prop2a-continuous-linear",
        vec![fact(Continuous)],
        vec![fact(LinearContinuous)],
        vec![],
        "Proposition 2 (a)",
        "continuity implies linear continuity",
    );
    g.edge(
        "prop2a-linear-strict-archimedean",
        vec![fact(LinearContinuous)],
        vec![fact(StrictArchimedean)],
        vec![],
        "Proposition 2 (a)",
        "which implies strict-Archimedean",
    );
    g.edge(
        "prop2a-strict-archimedean",
        vec![fact(StrictArchimedean)],
        vec![fact(Archimedean)],
        vec![],
        "Proposition 2 (a)",
        "which implies Archimedean",
    );
    g.edge(
        "prop2b-wold",
        vec![fact(WoldContinuous)],
        vec![fact(WeakWoldContinuous)],
        vec![],
        "Proposition 2 (b)",
        "Wold-continuity implies weak Wold-continuity",
    );
    // Proposition 2, complete + transitive parts.
    let ct = vec![SC::Complete, SC::Transitive];
    g.edge(
        "prop2c-continuous-graph",
        vec![fact(Continuous)],
        vec![fact(GraphContinuous)],
        ct.clone(),
        "Proposition 2 (c)",
        "Continuity implies graph continuity and Wold-continuity",
    );
    g.edge(
        "prop2c-continuous-wold",
        vec![fact(Continuous)],
        vec![fact(WoldContinuous)],
        ct.clone(),
        "Proposition 2 (c)",
        "Continuity implies graph continuity and Wold-continuity",
    );
    g.edge(
        "prop2d-strict-mixture",
        vec![fact(StrictArchimedean)],
        vec![fact(MixtureContinuous)],
        ct.clone(),
        "Proposition 2 (d)",
        "Strict-Archimedean implies mixture-continuity",
    );
    g.edge(
        "prop2d-mixture-archimedean",
        vec![fact(MixtureContinuous)],
        vec![fact(Archimedean)],
        ct.clone(),
        "Proposition 2 (d)",
        "which implies Archimedean and weak Wold-continuity",
    );
    g.edge(
        "prop2d-mixture-weak-wold",
        vec![fact(MixtureContinuous)],
        vec![fact(WeakWoldContinuous)],
        ct.clone(),
        "Proposition 2 (d)",
        "which implies Archimedean and weak Wold-continuity",
    );
    g.edge(
        "prop2e-weak-wold-archimedean",
        vec![fact(WeakWoldContinuous)],
        vec![fact(Archimedean)],
        ct.clone(),
        "Proposition 2 (e)",
        "Weak Wold-continuity implies Archimedean",
    );

    // Theorem 4: linear = full continuity under convexity variants.
    g.bicond(
        "thm4a",
        vec![fact(LinearContinuous)],
        vec![fact(Continuous)],
        vec![SC::PropertyC, SC::Complete, SC::LocallyConvexSections],
        "Theorem 4",
        "linearly continuous iff it is continuous",
    );
    g.bicond(
        "thm4b",
        vec![fact(LinearContinuous)],
        vec![fact(Continuous)],
        vec![SC::PropertyC, SC::LocallyConvexSections],
        "Theorem 4",
        "linearly continuous iff it is continuous",
    );
    g.bicond(
        "thm4c",
        vec![fact(LinearContinuous)],
        vec![fact(Continuous)],
        vec![
            SC::PropertyC,
            SC::Reflexive,
            SC::ConvexIndifference,
            SC::TransitiveIndifference,
        ],
        "Theorem 4",
        "linearly continuous iff it is continuous",
    );

    // Theorem 5: upper/lower scalar continuity collapse for additive cones.
    let cone = vec![SC::Additive, SC::ConeDomain];
    g.bicond(
        "thm5a-upper-lower",
        vec![fact(UpperMixtureContinuous)],
        vec![fact(LowerMixtureContinuous)],
        cone.clone(),
        "Theorem 5",
        "upper mixture-continuous iff it is lower mixture-continuous iff it is mixture-continuous",
    );
    g.bicond(
        "thm5a-upper-both",
        vec![fact(UpperMixtureContinuous)],
        vec![fact(MixtureContinuous)],
        cone.clone(),
        "Theorem 5",
        "upper mixture-continuous iff it is lower mixture-continuous iff it is mixture-continuous",
    );
    g.bicond(
        "thm5b-upper-lower",
        vec![fact(UpperStrictArchimedean)],
        vec![fact(LowerStrictArchimedean)],
        cone.clone(),
        "Theorem 5",
        "upper strict-Archimedean iff it is lower strict-Archimedean iff it is strict-Archimedean",
    );
    g.bicond(
        "thm5b-upper-both",
        vec![fact(UpperStrictArchimedean)],
        vec![fact(StrictArchimedean)],
        cone,
        "Theorem 5",
        "upper strict-Archimedean iff it is lower strict-Archimedean iff it is strict-Archimedean",
    );

    // Theorem 6: scalar postulates collapse for convex complete transitive
    // relations, with no topology on the choice set.
    g.clique(
        "thm6",
        &[
            fact(Archimedean),
            fact(StrictArchimedean),
            fact(MixtureContinuous),
            fact(WeakWoldContinuous),
        ],
        vec![SC::Complete, SC::Transitive, SC::ConvexUpperSections, SC::VectorSpace],
        "Theorem 6",
        "Archimedean, strict Archimedean, mixture-continuous and weakly Wold-continuous",
    );

    // Theorem 7: arc continuity.
    g.bicond(
        "thm7-continuous",
        vec![fact(ArcContinuous)],
        vec![fact(Continuous)],
        vec![SC::PropertyC],
        "Theorem 7",
        "arc-continuous iff it is continuous iff it is strongly mixture-continuous and strongly Archimedean",
    );
    g.bicond(
        "thm7-strong",
        vec![fact(ArcContinuous)],
        vec![fact(StrongMixtureContinuous), fact(StrongArchimedean)],
        vec![SC::PropertyC],
        "Theorem 7",
        "arc-continuous iff it is continuous iff it is strongly mixture-continuous and strongly Archimedean",
    );

    // Proposition 3: the finite-state-space monotonicity derivation; the
    // model axioms enter as explicit assertions.
    g.edge(
        "prop3-gul",
        vec![fact(MixtureContinuous)],
        vec![FactId::StronglyMonotone],
        vec![
            SC::Asserted("gul-A1".into()),
            SC::Asserted("gul-A2".into()),
            SC::Asserted("gul-A3".into()),
        ],
        "Proposition 3",
        "if the relation is mixture-continuous, then it is strongly monotone",
    );

    // Proposition 4: additivity, homotheticity, independence.
    g.bicond(
        "prop4a",
        vec![FactId::Additive, FactId::Homothetic],
        vec![FactId::Independent],
        vec![SC::Transitive, SC::VectorSpace],
        "Proposition 4",
        "additive and homothetic iff it is independent",
    );
    g.bicond(
        "prop4b",
        vec![FactId::Additive],
        vec![FactId::Independent],
        vec![
            SC::Transitive,
            SC::Complete,
            SC::Asserted("mixture-continuous".into()),
            SC::VectorSpace,
        ],
        "Proposition 4",
        "if it is complete and mixture-continuous, then it is additive iff it is independent",
    );

    // Proposition 5: the mixture-linear representation equivalence; the
    // representability side is a terminal fact with no checker.
    g.bicond(
        "prop5",
        vec![
            FactId::NonTrivial,
            FactId::SemiTransitive,
            FactId::Additive,
            fact(UpperMixtureContinuous),
            fact(UpperArchimedean),
        ],
        vec![FactId::RepresentableMixtureLinear],
        vec![SC::VectorSpace],
        "Proposition 5",
        "representable by a mixture-linear function iff it is non-trivial, semi-transitive, additive, upper mixture-continuous and upper Archimedean",
    );

    // Proposition 6: the non-decisive consumer.
    let schmeidler = vec![
        SC::StronglyMonotone,
        SC::Transitive,
        SC::Asserted("strict-preference-primitive".into()),
    ];
    g.bicond(
        "prop6-arch-strict",
        vec![fact(Archimedean)],
        vec![fact(StrictArchimedean)],
        schmeidler.clone(),
        "Proposition 6",
        "Archimedean iff it is strict-Archimedean iff it has open sections",
    );
    g.bicond(
        "prop6-strict-open",
        vec![fact(StrictArchimedean)],
        vec![fact(OpenStrictUpper), fact(OpenStrictLower)],
        schmeidler,
        "Proposition 6",
        "Archimedean iff it is strict-Archimedean iff it has open sections",
    );

    // Proposition 7: the non-transitive consumer.
    g.clique(
        "prop7",
        &[fact(Archimedean), fact(MixtureContinuous), fact(Continuous)],
        vec![
            SC::Complete,
            SC::ConvexUpperSections,
            SC::Asserted("strict-part-convex".into()),
        ],
        "Proposition 7",
        "Archimedean iff it is mixture-continuous iff it is continuous",
    );

    // Proposition 8: completeness and transitivity from scalar continuity
    // and convex indifference.
    g.edge(
        "prop8-dubra",
        vec![
            FactId::NonTrivial,
            FactId::Reflexive,
            fact(MixtureContinuous),
            fact(Archimedean),
            FactId::ConvexIndifference,
            FactId::TransitiveIndifference,
        ],
        vec![fact(Continuous), FactId::Complete, FactId::Transitive],
        vec![SC::PropertyC],
        "Proposition 8",
        "is continuous, complete and transitive",
    );

    // Proposition 9: completeness and transitivity from additivity.
    g.edge(
        "prop9-additive",
        vec![
            FactId::NonTrivial,
            FactId::SemiTransitive,
            FactId::Additive,
            fact(UpperMixtureContinuous),
            fact(UpperArchimedean),
        ],
        vec![FactId::Complete, FactId::Transitive],
        vec![SC::VectorSpace],
        "Proposition 9",
        "is complete and transitive",
    );

    // Corollary 2: the eight-postulate representation equivalence on the
    // non-negative orthant.
    let eight = [
        fact(GraphContinuous),
        fact(Continuous),
        fact(ArcContinuous),
        fact(LinearContinuous),
        fact(MixtureContinuous),
        fact(Archimedean),
        fact(WoldContinuous),
        fact(WeakWoldContinuous),
    ];
    for p in &eight {
        g.bicond(
            &format!("cor2-{}", p.id()),
            vec![*p],
            vec![FactId::RepresentableContinuousUtility],
            vec![
                SC::Complete,
                SC::Transitive,
                SC::WeaklyMonotone,
                SC::Asserted("nonneg-orthant-domain".into()),
            ],
            "Corollary 2",
            "representable by a continuous utility function iff the preference relation satisfies any of the following eight continuity postulates",
        );
    }

    // Corollary 3: the mixture-set equivalences.
    g.clique(
        "cor3",
        &[
            fact(MixtureContinuous),
            fact(Archimedean),
            fact(WeakWoldContinuous),
        ],
        vec![SC::Complete, SC::Transitive, SC::Independent],
        "Corollary 3",
        "mixture-continuous, Archimedean, and weakly Wold-continuous",
    );
    g.bicond(
        "cor3-representation",
        vec![
            FactId::Complete,
            FactId::Transitive,
            FactId::Independent,
            fact(MixtureContinuous),
        ],
        vec![FactId::RepresentableMixtureLinear],
        vec![],
        "Corollary 3",
        "representable by a mixture-linear function iff it is complete, transitive, independent",
    );

    // Corollary 4: linear representation from additivity plus section
    // continuity at the origin (established here via the full sections).
    g.edge(
        "cor4-nt",
        vec![
            FactId::NonTrivial,
            FactId::SemiTransitive,
            FactId::Additive,
            fact(ClosedUpperSections),
            fact(OpenStrictUpper),
        ],
        vec![
            FactId::Complete,
            FactId::Transitive,
            fact(Continuous),
            FactId::RepresentableContinuousUtility,
        ],
        vec![SC::VectorSpace],
        "Corollary 4",
        "is complete, transitive, continuous and representable by a continuous linear utility function",
    );

    // Observations.
    g.bicond(
        "obs1-debreu",
        vec![fact(UpperMixtureContinuous)],
        vec![fact(ClosedUpperSections)],
        vec![SC::ConvexUpperSections],
        "Observation 1",
        "under locally convex upper sections the two are equivalent",
    );
    g.bicond(
        "obs2-walras",
        vec![fact(Continuous)],
        vec![fact(Archimedean)],
        vec![
            SC::Complete,
            SC::Transitive,
            SC::ConvexUpperSections,
            SC::PropertyC,
        ],
        "Observation 2",
        "can be replaced by any of the equivalent continuity postulates",
    );

    // Lemma 2: closed sections vs mixture continuity under local convexity.
    g.bicond(
        "lemma2-upper",
        vec![fact(ClosedUpperSections)],
        vec![fact(UpperMixtureContinuous)],
        vec![SC::LocallyConvexSections],
        "Lemma 2",
        "closed upper (lower) sections iff it is upper (lower) mixture-continuous",
    );
    g.bicond(
        "lemma2-lower",
        vec![fact(ClosedLowerSections)],
        vec![fact(LowerMixtureContinuous)],
        vec![SC::LocallyConvexSections],
        "Lemma 2",
        "closed upper (lower) sections iff it is upper (lower) mixture-continuous",
    );
    // The easy directions hold without local convexity.
    g.edge(
        "lemma2-upper-easy",
        vec![fact(ClosedUpperSections)],
        vec![fact(UpperMixtureContinuous)],
        vec![],
        "Lemma 2",
        "closed upper (lower) sections iff it is upper (lower) mixture-continuous",
    );
    g.edge(
        "lemma2-lower-easy",
        vec![fact(ClosedLowerSections)],
        vec![fact(LowerMixtureContinuous)],
        vec![],
        "Lemma 2",
        "closed upper (lower) sections iff it is upper (lower) mixture-continuous",
    );

    // Lemma 3: open strict sections vs strict-Archimedean under property C.
    g.bicond(
        "lemma3-upper",
        vec![fact(OpenStrictUpper)],
        vec![fact(UpperStrictArchimedean)],
        vec![SC::PropertyC, SC::LocallyConvexSections],
        "Lemma 3",
        "open upper (lower) sections iff the relation is upper (lower) strict-Archimedean",
    );
    g.bicond(
        "lemma3-lower",
        vec![fact(OpenStrictLower)],
        vec![fact(LowerStrictArchimedean)],
        vec![SC::PropertyC, SC::LocallyConvexSections],
        "Lemma 3",
        "open upper (lower) sections iff the relation is upper (lower) strict-Archimedean",
    );
    g.edge(
        "lemma3-upper-easy",
        vec![fact(OpenStrictUpper)],
        vec![fact(UpperStrictArchimedean)],
        vec![],
        "Lemma 3",
        "open upper (lower) sections iff the relation is upper (lower) strict-Archimedean",
    );
    g.edge(
        "lemma3-lower-easy",
        vec![fact(OpenStrictLower)],
        vec![fact(LowerStrictArchimedean)],
        vec![],
        "Lemma 3",
        "open upper (lower) sections iff the relation is upper (lower) strict-Archimedean",
    );

    // Lemma 4: convex sections from scalar continuity and convex
    // indifference.
    g.edge(
        "lemma4-convex-sections",
        vec![
            FactId::Reflexive,
            fact(MixtureContinuous),
            fact(Archimedean),
            FactId::ConvexIndifference,
            FactId::TransitiveIndifference,
        ],
        vec![FactId::ConvexUpperSections, FactId::StrictConvexUpperSections],
        vec![],
        "Lemma 4",
        "has convex weak and strict sections",
    );

    // Lemma 5: the convexity equivalences.
    g.clique(
        "lemma5",
        &[
            FactId::ConvexUpperSections,
            FactId::StrictConvexUpperSections,
            FactId::StarConvex,
        ],
        vec![SC::Complete, SC::Transitive, SC::VectorSpace],
        "Lemma 5",
        "the following are equivalent",
    );
    g.edge(
        "lemma5-strict-star",
        vec![FactId::StrictlyStarConvex],
        vec![
            FactId::ConvexUpperSections,
            FactId::StrictConvexUpperSections,
            FactId::StarConvex,
        ],
        vec![
            SC::Complete,
            SC::Transitive,
            SC::Asserted("weak-wold-continuous".into()),
        ],
        "Lemma 5",
        "its strict star-convexity implies the convexity properties (C1)-(C3)",
    );

    // Lemma 6: strong Archimedean variants under strong mixture continuity.
    g.bicond(
        "lemma6",
        vec![fact(StrongArchimedean)],
        vec![fact(StrongStrictArchimedean)],
        vec![SC::Asserted("strong-mixture-continuous".into())],
        "Lemma 6",
        "strong Archimedean iff it is strongly strict-Archimedean",
    );

    // The Wold-involving theorem edges presuppose the sandwich reading of
    // order density (their derivations construct a point strictly between a
    // strict pair), so they fire only when that reading is the active one.
    // The definitional containment of weak Wold in full Wold is
    // pattern-uniform and stays unconditional.
    let mut edges = g.edges;
    let wold_facts = [
        fact(WoldContinuous),
        fact(WeakWoldContinuous),
    ];
    for e in &mut edges {
        if e.id == "prop2b-wold" {
            continue;
        }
        let touches_wold = e
            .antecedents
            .iter()
            .chain(&e.consequents)
            .any(|f| wold_facts.contains(f));
        if touches_wold {
            e.conditions
                .push(SC::Asserted("density-between".into()));
        }
    }
    ImplicationGraph { edges }
});

// ---------------------------------------------------------------------------
// Derived profiles and closure
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactStatus {
    DirectHolds,
    DirectFails,
    DerivedHolds,
    DerivedFails,
    Unknown,
}

impl FactStatus {
    pub fn holds(&self) -> bool {
        matches!(self, FactStatus::DirectHolds | FactStatus::DerivedHolds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, FactStatus::DirectFails | FactStatus::DerivedFails)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactState {
    pub status: FactStatus,
    /// Edge ids of the derivation chain head; Direct facts have none.
    pub provenance: Vec<String>,
}

/// Fact statuses for one subject, with provenance for derived entries.
#[derive(Debug, Clone, Serialize, Default)]
pub struct DerivedProfile {
    pub subject: String,
    pub facts: BTreeMap<FactId, FactState>,
    /// Derivations that collided with an opposing direct fact: the edge
    /// attempted the recorded status but the direct verdict blocks it.
    /// These are the audit's raw material.
    pub conflicts: Vec<DerivationConflict>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DerivationConflict {
    pub fact: FactId,
    pub attempted: FactStatus,
    pub edge: String,
}

impl DerivedProfile {
    pub fn new(subject: impl Into<String>) -> Self {
        DerivedProfile {
            subject: subject.into(),
            facts: BTreeMap::new(),
            conflicts: Vec::new(),
        }
    }

    /// Record a direct verdict.  Fails verdicts count only when backed by a
    /// refinement-surviving witness; Unresolved stays Unknown.
    pub fn set_direct(&mut self, fact: FactId, verdict: Verdict, survived_witness: bool) {
        let status = match verdict {
            Verdict::Holds => FactStatus::DirectHolds,
            Verdict::Fails if survived_witness => FactStatus::DirectFails,
            _ => FactStatus::Unknown,
        };
        if status != FactStatus::Unknown {
            self.facts.insert(
                fact,
                FactState {
                    status,
                    provenance: Vec::new(),
                },
            );
        }
    }

    pub fn status(&self, fact: &FactId) -> FactStatus {
        self.facts
            .get(fact)
            .map(|s| s.status)
            .unwrap_or(FactStatus::Unknown)
    }
}

fn condition_established(
    cond: &SideCondition,
    profile: &DerivedProfile,
    asserted: &BTreeSet<String>,
) -> bool {
    match cond {
        SideCondition::VectorSpace | SideCondition::FiniteDimensional => true,
        SideCondition::ConeDomain => asserted.contains("cone-domain"),
        SideCondition::Asserted(tag) => {
            asserted.contains(tag)
                || cond
                    .backing_fact()
                    .map(|f| profile.status(&f).holds())
                    .unwrap_or(false)
        }
        _ => {
            asserted.contains(&cond.id())
                || cond
                    .backing_fact()
                    .map(|f| profile.status(&f).holds())
                    .unwrap_or(false)
        }
    }
}

/// Edges whose condition set is covered and whose antecedents all hold.
pub fn applicable_edges<'g>(
    graph: &'g ImplicationGraph,
    profile: &DerivedProfile,
    asserted: &BTreeSet<String>,
) -> Vec<&'g ImplicationEdge> {
    graph
        .edges
        .iter()
        .filter(|e| {
            !e.antecedents.is_empty()
                && e.conditions
                    .iter()
                    .all(|c| condition_established(c, profile, asserted))
                && e.antecedents.iter().all(|a| profile.status(a).holds())
        })
        .collect()
}

/// Least fixed point of edge application: monotone, idempotent, with
/// contrapositives applied across single-antecedent single-consequent
/// biconditional pairs only.
pub fn closure(
    graph: &ImplicationGraph,
    profile: &DerivedProfile,
    asserted: &BTreeSet<String>,
) -> DerivedProfile {
    let mut out = profile.clone();
    let max_iters = graph.edges.len() * ALL_FACTS.len();
    for _ in 0..max_iters {
        let mut changed = false;
        for edge in &graph.edges {
            if !edge
                .conditions
                .iter()
                .all(|c| condition_established(c, &out, asserted))
            {
                continue;
            }
            // Forward application.
            if edge.antecedents.iter().all(|a| out.status(a).holds()) {
                for c in &edge.consequents {
                    if out.status(c) == FactStatus::DirectFails {
                        let conflict = DerivationConflict {
                            fact: *c,
                            attempted: FactStatus::DerivedHolds,
                            edge: edge.id.clone(),
                        };
                        if !out.conflicts.contains(&conflict) {
                            out.conflicts.push(conflict);
                        }
                    }
                    if out.status(c) == FactStatus::Unknown {
                        let mut provenance = vec![edge.id.clone()];
                        for a in &edge.antecedents {
                            if let Some(st) = out.facts.get(a) {
                                provenance.extend(st.provenance.iter().cloned());
                            }
                        }
                        provenance.dedup();
                        out.facts.insert(
                            *c,
                            FactState {
                                status: FactStatus::DerivedHolds,
                                provenance,
                            },
                        );
                        changed = true;
                    }
                }
            }
            // Contrapositive across biconditional pairs.
            if edge.bicond_pair.is_some()
                && edge.antecedents.len() == 1
                && edge.consequents.len() == 1
            {
                let (a, c) = (edge.antecedents[0], edge.consequents[0]);
                if out.status(&c).fails() && out.status(&a) == FactStatus::DirectHolds {
                    let conflict = DerivationConflict {
                        fact: a,
                        attempted: FactStatus::DerivedFails,
                        edge: edge.id.clone(),
                    };
                    if !out.conflicts.contains(&conflict) {
                        out.conflicts.push(conflict);
                    }
                }
                if out.status(&c).fails() && out.status(&a) == FactStatus::Unknown {
                    let mut provenance = vec![edge.id.clone()];
                    if let Some(st) = out.facts.get(&c) {
                        provenance.extend(st.provenance.iter().cloned());
                    }
                    provenance.dedup();
                    out.facts.insert(
                        a,
                        FactState {
                            status: FactStatus::DerivedFails,
                            provenance,
                        },
                    );
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    out
}

/// Replay every derived fact's chain back to direct facts; returns the ids
/// of facts whose chains are broken.
pub fn verify_provenance(graph: &ImplicationGraph, profile: &DerivedProfile) -> Vec<String> {
    let by_id: BTreeMap<&str, &ImplicationEdge> =
        graph.edges.iter().map(|e| (e.id.as_str(), e)).collect();
    let mut broken = Vec::new();
    for (fact, state) in &profile.facts {
        match state.status {
            FactStatus::DerivedHolds | FactStatus::DerivedFails => {
                if state.provenance.is_empty() {
                    broken.push(fact.id());
                    continue;
                }
                let Some(edge) = by_id.get(state.provenance[0].as_str()) else {
                    broken.push(fact.id());
                    continue;
                };
                // For forward derivations the supporting facts are the
                // antecedents; for contrapositives, the failing consequent.
                let support: Vec<FactId> = if state.status == FactStatus::DerivedHolds {
                    edge.antecedents.clone()
                } else {
                    edge.consequents.clone()
                };
                for s in support {
                    if profile.status(&s) == FactStatus::Unknown {
                        broken.push(fact.id());
                        break;
                    }
                }
            }
            _ => {}
        }
    }
    broken
}

// ---------------------------------------------------------------------------
// Audit
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Contradiction {
    pub fact: String,
    pub derived: FactStatus,
    pub direct: String,
}

/// Compare a closed profile against direct reports: derived Holds against a
/// refinement-surviving direct Fails (or the reverse) is a contradiction;
/// Unresolved direct verdicts never contradict.  Output sorted by fact id.
pub fn audit(
    derived: &DerivedProfile,
    direct: &BTreeMap<String, crate::core::PropertyReport>,
) -> Vec<Contradiction> {
    let mut out = Vec::new();
    // Blocked derivations: an edge fired toward a fact whose direct verdict
    // points the other way.
    for conflict in &derived.conflicts {
        let id = conflict.fact.id();
        let Some(report) = direct.get(&id) else { continue };
        match (conflict.attempted, report.verdict) {
            (FactStatus::DerivedHolds, Verdict::Fails) => {
                if report
                    .witnesses
                    .iter()
                    .any(|w| w.robustness == Robustness::SurvivedRefinement)
                {
                    out.push(Contradiction {
                        fact: id,
                        derived: FactStatus::DerivedHolds,
                        direct: "Fails".into(),
                    });
                }
            }
            (FactStatus::DerivedFails, Verdict::Holds) => {
                out.push(Contradiction {
                    fact: id,
                    derived: FactStatus::DerivedFails,
                    direct: "Holds".into(),
                });
            }
            _ => {}
        }
    }
    for (fact, state) in &derived.facts {
        let id = fact.id();
        let Some(report) = direct.get(&id) else {
            continue;
        };
        match (state.status, report.verdict) {
            (FactStatus::DerivedHolds, Verdict::Fails) => {
                if report
                    .witnesses
                    .iter()
                    .any(|w| w.robustness == Robustness::SurvivedRefinement)
                {
                    out.push(Contradiction {
                        fact: id,
                        derived: state.status,
                        direct: "Fails".into(),
                    });
                }
            }
            (FactStatus::DerivedFails, Verdict::Holds) => {
                out.push(Contradiction {
                    fact: id,
                    derived: state.status,
                    direct: "Holds".into(),
                });
            }
            _ => {}
        }
    }
    out.sort_by(|a, b| a.fact.cmp(&b.fact));
    out.dedup();
    out
}
