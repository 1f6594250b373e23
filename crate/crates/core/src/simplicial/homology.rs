//! Reduced integral homology through the augmented chain complex
//! `⋯ → C₁ → C₀ → ℤ → 0`, where the augmentation sends each vertex to 1.
//!
//! The degree −1 group is kept explicitly: it is ℤ exactly for the empty
//! complex, so "empty" is a homology statement like any other.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{Simplex, SimplicialComplex};
use crate::exactmath::{smith_normal_form, IntMatrix};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyProfile {
    /// Rank of H₋₁: 1 for the empty space, 0 otherwise.
    pub minus_one_rank: usize,
    /// Nonzero Betti numbers of the reduced groups, by degree.
    pub betti: BTreeMap<usize, usize>,
    /// Nontrivial torsion coefficients by degree.
    #[serde(with = "torsion_serde")]
    pub torsion: BTreeMap<usize, Vec<BigInt>>,
}

/// One graded piece: free rank plus torsion coefficients.
pub type GradedGroup = (usize, Vec<BigInt>);

impl HomologyProfile {
    /// Reduced homology of the empty space.
    pub fn empty_space() -> Self {
        HomologyProfile {
            minus_one_rank: 1,
            ..Default::default()
        }
    }

    /// Reduced homology of a nonempty acyclic (e.g. contractible) space.
    pub fn acyclic() -> Self {
        Self::default()
    }

    /// Reduced homology of the `d`-sphere; `d = −1` is the empty space.
    pub fn sphere(d: i64) -> Self {
        match d {
            -1 => Self::empty_space(),
            d if d >= 0 => HomologyProfile {
                betti: BTreeMap::from([(d as usize, 1)]),
                ..Default::default()
            },
            _ => panic!("sphere of dimension {d}"),
        }
    }

    pub fn is_empty_space(&self) -> bool {
        self.minus_one_rank > 0
    }

    pub fn is_acyclic(&self) -> bool {
        self.minus_one_rank == 0 && self.betti.is_empty() && self.torsion.is_empty()
    }

    pub fn betti(&self, q: usize) -> usize {
        self.betti.get(&q).copied().unwrap_or(0)
    }

    /// Nonzero groups keyed by degree, degree −1 included.
    pub fn graded(&self) -> BTreeMap<i64, GradedGroup> {
        let mut out: BTreeMap<i64, GradedGroup> = BTreeMap::new();
        if self.minus_one_rank > 0 {
            out.insert(-1, (self.minus_one_rank, Vec::new()));
        }
        for (&q, &b) in &self.betti {
            out.entry(q as i64).or_default().0 = b;
        }
        for (&q, t) in &self.torsion {
            out.entry(q as i64).or_default().1 = t.clone();
        }
        out
    }

    /// `H_q(self) ≅ H_{q−shift}(other)` for every `q ≥ −1`, Betti and torsion alike.
    /// Groups of `other` in degrees below −1 count as zero.
    pub fn matches_shifted(&self, other: &HomologyProfile, shift: usize) -> bool {
        let shifted: BTreeMap<i64, GradedGroup> = other
            .graded()
            .into_iter()
            .map(|(q, g)| (q + shift as i64, g))
            .collect();
        self.graded() == shifted
    }

    /// `Σ_q (−1)^q rank H_q` over q ≥ −1.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = -(self.minus_one_rank as i64);
        for (&q, &b) in &self.betti {
            chi += if q % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        chi
    }
}

/// Boundary matrix `∂_q : C_q → C_{q−1}`; `∂_0` is the augmentation.
fn boundary_matrix(lower: &[&Simplex], upper: &[&Simplex], q: usize) -> IntMatrix {
    if q == 0 {
        let data = vec![BigInt::one(); upper.len()];
        return IntMatrix::new(1, upper.len(), data).expect("shape");
    }
    let index: HashMap<&Simplex, usize> = lower.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = IntMatrix::zeros(lower.len(), upper.len());
    for (j, s) in upper.iter().enumerate() {
        for (i, face) in s.facets().iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m.set(index[face], j, BigInt::from(sign));
        }
    }
    m
}

pub fn reduced_homology(c: &SimplicialComplex) -> HomologyProfile {
    let top = c.dim().map_or(0, |d| d + 1);
    let by_dim: Vec<Vec<&Simplex>> = (0..top).map(|q| c.simplices_of_dim(q).collect()).collect();
    let empty: Vec<&Simplex> = Vec::new();
    let cells = |q: usize| by_dim.get(q).unwrap_or(&empty);

    // ranks[q] = rank ∂_q for q = 0..=top, torsion_of[q − 1] from ∂_q.
    let mut ranks = vec![0usize; top + 2];
    let mut profile = HomologyProfile::default();
    for q in 0..=top {
        let upper = cells(q);
        if upper.is_empty() {
            continue;
        }
        let lower = if q == 0 { &empty } else { cells(q - 1) };
        let snf = smith_normal_form(&boundary_matrix(lower, upper, q));
        ranks[q] = snf.rank;
        let torsion = snf.torsion();
        if !torsion.is_empty() {
            // ∂_0 only ever has the factor 1, so this is degree ≥ 0.
            profile.torsion.insert(q - 1, torsion);
        }
    }
    profile.minus_one_rank = 1 - ranks[0];
    for q in 0..top {
        let b = cells(q).len() - ranks[q] - ranks[q + 1];
        if b > 0 {
            profile.betti.insert(q, b);
        }
    }
    assert_eq!(
        c.reduced_euler_characteristic(),
        profile.reduced_euler_characteristic(),
        "Euler-Poincaré identity violated"
    );
    profile
}

/// Nonempty with vanishing reduced homology. The empty complex is not acyclic.
pub fn is_acyclic(c: &SimplicialComplex) -> bool {
    reduced_homology(c).is_acyclic()
}

mod torsion_serde {
    use std::collections::BTreeMap;

    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(t: &BTreeMap<usize, Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<usize, Vec<String>> = t
            .iter()
            .map(|(k, v)| (*k, v.iter().map(ToString::to_string).collect()))
            .collect();
        m.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, Vec<BigInt>>, D::Error> {
        let m: BTreeMap<usize, Vec<String>> = BTreeMap::deserialize(d)?;
        m.into_iter()
            .map(|(k, v)| {
                let v = v
                    .iter()
                    .map(|x| x.parse::<BigInt>().map_err(serde::de::Error::custom))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((k, v))
            })
            .collect()
    }
}
