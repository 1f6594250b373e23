use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{feasible_weak, Rational, RationalMatrix};
use crate::subsets::{check_guard, combinations, MAX_INDEX_GUARD};

/// Labelled polyhedra `{x : A x ≤ b}` in `Qⁿ`.
#[derive(Clone, Debug)]
pub struct ConvexPolytopeFamily {
    dim: usize,
    labels: Vec<String>,
    members: Vec<(RationalMatrix, Vec<Rational>)>,
}

impl ConvexPolytopeFamily {
    pub fn new(dim: usize, members: Vec<(String, Vec<Vec<Rational>>, Vec<Rational>)>) -> Result<Self> {
        let mut labels = Vec::new();
        let mut out = Vec::new();
        for (label, a, b) in members {
            let a = RationalMatrix::new(dim, a)?;
            if a.rows() != b.len() {
                return Err(Error::DimensionMismatch {
                    expected: a.rows(),
                    found: b.len(),
                });
            }
            if labels.contains(&label) {
                return Err(Error::invalid(format!("duplicate member label {label:?}")));
            }
            labels.push(label);
            out.push((a, b));
        }
        Ok(ConvexPolytopeFamily {
            dim,
            labels,
            members: out,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contains(&self, member: usize, x: &[Rational]) -> bool {
        let (a, b) = &self.members[member];
        a.apply(x).iter().zip(b).all(|(ax, bi)| ax <= bi)
    }

    /// A point of `⋂_{i∈θ} P_i`, or `None`.
    pub fn common_point(&self, theta: &[usize]) -> Result<Option<Vec<Rational>>> {
        // A x ≤ b  ⇔  (−A) x ≥ −b
        let mut m = RationalMatrix::empty(self.dim);
        let mut rhs = Vec::new();
        for &i in theta {
            let (a, b) = &self.members[i];
            for (row, bi) in a.row_vectors().iter().zip(b) {
                m.push_row(row.iter().map(|x| -x).collect())?;
                rhs.push(-bi.clone());
            }
        }
        let x = feasible_weak(&m, &rhs)?;
        if let Some(x) = &x {
            if !theta.iter().all(|&i| self.contains(i, x)) {
                return Err(Error::Inconsistent("feasibility witness fails a member".into()));
            }
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HellyReport {
    pub n: usize,
    pub hypothesis_holds: bool,
    /// First `(n+1)`-subfamily (lexicographic) with empty intersection.
    pub hypothesis_witness: Option<Vec<String>>,
    /// Whether the whole family meets; computed only under the hypothesis.
    pub conclusion: Option<bool>,
    #[serde(serialize_with = "crate::io::serialize_optional_rational_vec")]
    pub witness_point: Option<Vec<Rational>>,
    /// False only if the hypothesis holds and the whole family misses.
    pub consistent: bool,
}

/// Checks every `(n+1)`-subfamily and, when they all meet, the whole family.
pub fn helly_check(f: &ConvexPolytopeFamily) -> Result<HellyReport> {
    let n = f.dim;
    if f.len() < n + 1 {
        return Err(Error::PreconditionFailed(format!(
            "needs at least {} members, found {}",
            n + 1,
            f.len()
        )));
    }
    check_guard(f.len(), MAX_INDEX_GUARD)?;
    let mut hypothesis_witness = None;
    for theta in combinations(f.len(), n + 1) {
        if f.common_point(&theta)?.is_none() {
            hypothesis_witness = Some(theta.iter().map(|&i| f.labels[i].clone()).collect());
            break;
        }
    }
    let hypothesis_holds = hypothesis_witness.is_none();
    let (conclusion, witness_point) = if hypothesis_holds {
        let all: Vec<usize> = (0..f.len()).collect();
        let p = f.common_point(&all)?;
        (Some(p.is_some()), p)
    } else {
        (None, None)
    };
    Ok(HellyReport {
        n,
        hypothesis_holds,
        hypothesis_witness,
        consistent: conclusion != Some(false),
        conclusion,
        witness_point,
    })
}
