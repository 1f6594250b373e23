use serde::Serialize;

use crate::exactmath::Rational;
use crate::simplicial::HomologyProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// `A_k`
    #[serde(rename = "A")]
    AcyclicIntersections,
    /// `B_k`
    #[serde(rename = "B")]
    AcyclicUnions,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub theta: Vec<usize>,
    pub labels: Vec<String>,
    pub profile: HomologyProfile,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub k: usize,
    pub holds: bool,
    /// Number of subfamilies looked at before stopping.
    pub examined: usize,
    pub witness: Option<Violation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub theta: Vec<usize>,
    pub labels: Vec<String>,
    pub k: usize,
    /// `A_{k−1}` on the subfamily; no claim is made when it fails.
    pub hypothesis: ConditionReport,
    pub union_profile: HomologyProfile,
    pub intersection_profile: HomologyProfile,
    pub shift_matches: bool,
}

impl DualityReport {
    /// `Some(shift_matches)` when the hypothesis holds.
    pub fn claim(&self) -> Option<bool> {
        self.hypothesis.holds.then_some(self.shift_matches)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub k: usize,
    pub a: ConditionReport,
    pub b: ConditionReport,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionClause {
    pub n: usize,
    pub j: usize,
    /// Only claimed for families whose nonempty intersections are acyclic.
    pub applicable: bool,
    pub total_intersection_acyclic: bool,
    pub union_acyclic: bool,
    pub b_j: ConditionReport,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AllSubfamilyReport {
    pub k: usize,
    pub intersections: ConditionReport,
    pub unions: ConditionReport,
    pub dimension_clause: Option<DimensionClause>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionWitness {
    /// A simplex common to all members.
    Simplex(Vec<usize>),
    /// A point common to all cones.
    #[serde(serialize_with = "crate::io::serialize_rational_vec")]
    Point(Vec<Rational>),
}

#[derive(Clone, Debug, Serialize)]
pub struct NonemptyIntersectionReport {
    pub total_nonempty: bool,
    pub witness: Option<IntersectionWitness>,
    pub unions: ConditionReport,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionBoundReport {
    pub n: usize,
    pub hypothesis: ConditionReport,
    /// `(k, A_k, B_k)` for `n ≤ k < |S|`, only when the hypothesis holds.
    pub levels: Vec<(usize, bool, bool)>,
    pub total_nonempty: Option<bool>,
    pub consistent: bool,
}
