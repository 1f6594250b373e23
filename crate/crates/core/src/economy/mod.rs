//! Market economies over `Qⁿ`: asymptotic and market cones of traders,
//! limited arbitrage, limited social diversity, and the equivalence of
//! equilibrium existence over subeconomies.
//!
//! Equilibrium existence is taken to mean limited arbitrage (nonempty
//! intersection of the market cones) and social-choice existence to mean
//! limited diversity (every nonempty union of market cones is acyclic).
//! Endowments are validated but do not enter any cone for the supported
//! utility forms.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cones::{cone_nonempty, generators_of_weak, intersect_cones, strict_dual, union_homology};
use crate::cones::{ConeGenerators, PolyhedralCone};
use crate::error::{Error, Result};
use crate::exactmath::{is_zero_vector, Rational};
use crate::simplicial::HomologyProfile;
use crate::subsets::{check_guard, lex_subsets, DEFAULT_INDEX_GUARD};

#[derive(Clone, Debug, PartialEq)]
pub enum Utility {
    /// `u(x) = a·x`
    Linear(Vec<Rational>),
    /// `u(x) = min_j a_j·x`
    MinLinear(Vec<Vec<Rational>>),
    /// Generators of the closure of the asymptotic cone.
    ExplicitCone(ConeGenerators),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trader {
    id: String,
    endowment: Vec<Rational>,
    utility: Utility,
}

impl Trader {
    pub fn new(id: impl Into<String>, endowment: Vec<Rational>, utility: Utility) -> Result<Self> {
        let id = id.into();
        if is_zero_vector(&endowment) {
            return Err(Error::invalid(format!("trader {id}: endowment must be nonzero")));
        }
        let n = endowment.len();
        let check = |a: &[Rational]| -> Result<()> {
            if a.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: a.len(),
                });
            }
            if is_zero_vector(a) {
                return Err(Error::invalid(format!("trader {id}: utility vector must be nonzero")));
            }
            Ok(())
        };
        match &utility {
            Utility::Linear(a) => check(a)?,
            Utility::MinLinear(rows) => {
                if rows.is_empty() {
                    return Err(Error::invalid(format!("trader {id}: min_linear needs at least one vector")));
                }
                rows.iter().try_for_each(|a| check(a))?;
            }
            Utility::ExplicitCone(g) => {
                if g.dim() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: g.dim(),
                    });
                }
            }
        }
        Ok(Trader { id, endowment, utility })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn endowment(&self) -> &[Rational] {
        &self.endowment
    }

    pub fn utility(&self) -> &Utility {
        &self.utility
    }

    pub fn dim(&self) -> usize {
        self.endowment.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Economy {
    n: usize,
    traders: Vec<Trader>,
}

impl Economy {
    /// At least two goods and two traders, all of dimension `n`, distinct ids.
    pub fn new(n: usize, traders: Vec<Trader>) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("an economy needs at least two goods"));
        }
        if traders.len() < 2 {
            return Err(Error::invalid("an economy needs at least two traders"));
        }
        for (i, t) in traders.iter().enumerate() {
            if t.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: t.dim(),
                });
            }
            if traders[..i].iter().any(|s| s.id == t.id) {
                return Err(Error::invalid(format!("duplicate trader id {:?}", t.id)));
            }
        }
        Ok(Economy { n, traders })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn traders(&self) -> &[Trader] {
        &self.traders
    }

    pub fn len(&self) -> usize {
        self.traders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traders.is_empty()
    }

    pub fn ids(&self) -> Vec<String> {
        self.traders.iter().map(|t| t.id.clone()).collect()
    }

    /// The traders in `theta`, in their original order. A single trader is allowed.
    pub fn subeconomy(&self, theta: &[usize]) -> Result<Economy> {
        if theta.is_empty() {
            return Err(Error::EmptySubfamily);
        }
        let mut theta = theta.to_vec();
        theta.sort_unstable();
        theta.dedup();
        if let Some(&i) = theta.iter().find(|&&i| i >= self.traders.len()) {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.traders.len(),
            });
        }
        Ok(Economy {
            n: self.n,
            traders: theta.iter().map(|&i| self.traders[i].clone()).collect(),
        })
    }

    pub fn market_cones(&self) -> Result<Vec<PolyhedralCone>> {
        self.traders.iter().map(|t| market_cone(t, self.n)).collect()
    }
}

fn require_dim(t: &Trader, n: usize) -> Result<()> {
    if t.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.dim(),
        });
    }
    Ok(())
}

/// Directions along which the utility reaches its supremum.
pub fn asymptotic_cone(t: &Trader, n: usize) -> Result<PolyhedralCone> {
    require_dim(t, n)?;
    match &t.utility {
        Utility::Linear(a) => PolyhedralCone::new(n, vec![], vec![a.clone()], false),
        Utility::MinLinear(rows) => {
            let c = PolyhedralCone::new(n, vec![], rows.clone(), false)?;
            if cone_nonempty(&c)?.is_none() {
                return Err(Error::UnsupportedUtility(format!(
                    "trader {}: min_linear utility is bounded along every direction",
                    t.id
                )));
            }
            Ok(c)
        }
        Utility::ExplicitCone(g) => {
            let facets = g.facets()?;
            PolyhedralCone::new(n, vec![], facets, false)
        }
    }
}

/// Generators of the closed asymptotic cone.
fn closure_generators(t: &Trader, n: usize) -> Result<ConeGenerators> {
    match &t.utility {
        Utility::ExplicitCone(g) => {
            if !g.is_solid() {
                return Err(Error::NotSolid { rank: g.rank(), dim: n });
            }
            Ok(g.clone())
        }
        _ => {
            let a = asymptotic_cone(t, n)?;
            ConeGenerators::new(n, generators_of_weak(a.strict_rows()))
        }
    }
}

/// Prices strictly positive on the asymptotic cone: the closed dual of its
/// closure with the origin removed.
pub fn market_cone(t: &Trader, n: usize) -> Result<PolyhedralCone> {
    require_dim(t, n)?;
    strict_dual(&closure_generators(t, n)?)
}

fn serialize_cones<S: serde::Serializer>(
    cs: &[(String, PolyhedralCone)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(cs.len()))?;
    for (id, c) in cs {
        m.serialize_entry(id, &crate::io::cone_to_json(c))?;
    }
    m.end()
}

#[derive(Clone, Debug, Serialize)]
pub struct LAReport {
    pub holds: bool,
    /// A price in every market cone, verified by substitution.
    #[serde(serialize_with = "crate::io::serialize_optional_rational_vec")]
    pub witness_price: Option<Vec<Rational>>,
    /// When the intersection is empty: the first group of traders
    /// (lexicographic) whose market cones already miss each other.
    pub empty_witness: Option<Vec<String>>,
    #[serde(serialize_with = "serialize_cones")]
    pub per_trader_cones: Vec<(String, PolyhedralCone)>,
}

/// Nonempty intersection of all market cones.
pub fn limited_arbitrage(e: &Economy) -> Result<LAReport> {
    let cones = e.market_cones()?;
    let price = common_price(&cones, &(0..cones.len()).collect::<Vec<_>>())?;
    let empty_witness = if price.is_none() {
        check_guard(e.len(), DEFAULT_INDEX_GUARD.max(e.len()).min(crate::subsets::MAX_INDEX_GUARD))?;
        let mut found = None;
        for theta in lex_subsets(e.len(), e.len()) {
            if common_price(&cones, &theta)?.is_none() {
                found = Some(theta.iter().map(|&i| e.traders[i].id.clone()).collect());
                break;
            }
        }
        found
    } else {
        None
    };
    Ok(LAReport {
        holds: price.is_some(),
        witness_price: price,
        empty_witness,
        per_trader_cones: e.ids().into_iter().zip(cones).collect(),
    })
}

fn common_price(cones: &[PolyhedralCone], theta: &[usize]) -> Result<Option<Vec<Rational>>> {
    let c = intersect_cones(theta.iter().map(|&i| &cones[i]))?;
    let p = cone_nonempty(&c)?;
    if let Some(p) = &p {
        if let Some(&i) = theta.iter().find(|&&i| !cones[i].contains(p)) {
            return Err(Error::Inconsistent(format!("price witness outside market cone {i}")));
        }
    }
    Ok(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct UnionProfile {
    pub theta: Vec<String>,
    pub profile: HomologyProfile,
}

#[derive(Clone, Debug, Serialize)]
pub struct LSReport {
    pub holds: bool,
    /// First group (lexicographic) whose union of market cones is not acyclic.
    pub witness_theta: Option<Vec<String>>,
    /// Profiles of every group examined, up to and including the witness.
    pub union_profiles: Vec<UnionProfile>,
}

/// Every nonempty union of market cones is acyclic.
pub fn limited_diversity(e: &Economy) -> Result<LSReport> {
    limited_diversity_with(e, &HomologyProfile::is_acyclic)
}

/// [`limited_diversity`] with the acyclicity test supplied by the caller.
pub fn limited_diversity_with(e: &Economy, acyclic: &dyn Fn(&HomologyProfile) -> bool) -> Result<LSReport> {
    check_guard(e.len(), DEFAULT_INDEX_GUARD.max(e.len()).min(crate::subsets::MAX_INDEX_GUARD))?;
    let cones = e.market_cones()?;
    let ids = e.ids();
    let mut union_profiles = Vec::new();
    let mut witness_theta = None;
    for theta in lex_subsets(e.len(), e.len()) {
        let members: Vec<(&str, &PolyhedralCone)> = theta.iter().map(|&i| (ids[i].as_str(), &cones[i])).collect();
        let profile = union_homology(&members)?;
        let ok = acyclic(&profile);
        let labels: Vec<String> = theta.iter().map(|&i| ids[i].clone()).collect();
        union_profiles.push(UnionProfile {
            theta: labels.clone(),
            profile,
        });
        if !ok {
            witness_theta = Some(labels);
            break;
        }
    }
    Ok(LSReport {
        holds: witness_theta.is_none(),
        witness_theta,
        union_profiles,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubeconomyVerdict {
    pub theta: Vec<String>,
    pub limited_arbitrage: bool,
    #[serde(serialize_with = "crate::io::serialize_optional_rational_vec")]
    pub witness_price: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquilibriumEquivalenceReport {
    /// The whole economy has limited arbitrage.
    pub verdict_a: bool,
    /// Every subeconomy has limited arbitrage.
    pub verdict_b: bool,
    /// Every subeconomy with at most `n + 1` traders has limited arbitrage.
    pub verdict_c: bool,
    /// Limited social diversity.
    pub verdict_d: bool,
    /// Failure of limited arbitrage propagates to every larger subeconomy.
    pub monotone: bool,
    pub consistent: bool,
    pub subeconomies: Vec<SubeconomyVerdict>,
    pub diversity: LSReport,
}

/// Computes the four verdicts separately: the whole economy, all
/// subeconomies, the small subeconomies, and limited diversity.
pub fn equilibrium_equivalences(e: &Economy) -> Result<EquilibriumEquivalenceReport> {
    equilibrium_equivalences_with(e, &HomologyProfile::is_acyclic)
}

pub fn equilibrium_equivalences_with(
    e: &Economy,
    acyclic: &dyn Fn(&HomologyProfile) -> bool,
) -> Result<EquilibriumEquivalenceReport> {
    check_guard(e.len(), DEFAULT_INDEX_GUARD.max(e.len()).min(crate::subsets::MAX_INDEX_GUARD))?;
    let verdict_a = limited_arbitrage(e)?.holds;

    let mut by_mask: BTreeMap<u64, bool> = BTreeMap::new();
    let mut subeconomies = Vec::new();
    for theta in lex_subsets(e.len(), e.len()) {
        let sub = e.subeconomy(&theta)?;
        let cones = sub.market_cones()?;
        let price = common_price(&cones, &(0..cones.len()).collect::<Vec<_>>())?;
        by_mask.insert(theta.iter().fold(0, |m, &i| m | 1 << i), price.is_some());
        subeconomies.push(SubeconomyVerdict {
            theta: sub.ids(),
            limited_arbitrage: price.is_some(),
            witness_price: price,
        });
    }
    let verdict_b = subeconomies.iter().all(|s| s.limited_arbitrage);
    let verdict_c = subeconomies
        .iter()
        .filter(|s| s.theta.len() <= e.n + 1)
        .all(|s| s.limited_arbitrage);
    let diversity = limited_diversity_with(e, acyclic)?;
    let verdict_d = diversity.holds;

    let monotone = by_mask
        .iter()
        .filter(|(_, &ok)| !ok)
        .all(|(&fail, _)| by_mask.iter().filter(|(&m, _)| m & fail == fail).all(|(_, &ok)| !ok));

    Ok(EquilibriumEquivalenceReport {
        verdict_a,
        verdict_b,
        verdict_c,
        verdict_d,
        monotone,
        consistent: monotone && verdict_a == verdict_b && verdict_b == verdict_c && verdict_c == verdict_d,
        subeconomies,
        diversity,
    })
}
