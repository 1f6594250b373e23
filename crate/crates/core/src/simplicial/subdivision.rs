use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use super::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// A subdivision `X′ → X` with its carrier map.
///
/// `carrier[σ′]` is the smallest simplex of `X` whose closed cell contains the
/// cell of `σ′`. For iterated subdivisions `barycenters[l][v]` names the
/// simplex of the level-`l` complex whose barycenter is vertex `v` of the
/// level-`l+1` complex.
#[derive(Clone, Debug)]
pub struct SubdivisionMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    carrier: BTreeMap<Simplex, Simplex>,
    barycenters: Vec<Vec<Simplex>>,
}

impl SubdivisionMap {
    pub fn identity(x: Arc<SimplicialComplex>) -> Self {
        let carrier = x.simplices().map(|s| (s.clone(), s.clone())).collect();
        SubdivisionMap {
            source: Arc::clone(&x),
            target: x,
            carrier,
            barycenters: Vec::new(),
        }
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn level(&self) -> usize {
        self.barycenters.len()
    }

    pub fn barycenters(&self) -> &[Vec<Simplex>] {
        &self.barycenters
    }

    pub fn carrier(&self) -> &BTreeMap<Simplex, Simplex> {
        &self.carrier
    }

    pub fn carrier_of(&self, s: &Simplex) -> Option<&Simplex> {
        self.carrier.get(s)
    }

    /// The part of `X′` lying over a subcomplex `l` of `X`.
    pub fn restrict(&self, l: &SimplicialComplex) -> SimplicialComplex {
        let simplices: BTreeSet<Simplex> = self
            .carrier
            .iter()
            .filter(|(_, c)| l.contains(c))
            .map(|(s, _)| s.clone())
            .collect();
        SimplicialComplex::from_closed_set(simplices).expect("carrier preimage of a subcomplex is closed")
    }

    /// Barycentric subdivision of the source, composed with this map.
    pub fn refine(&self) -> SubdivisionMap {
        let step = barycentric_subdivision(&self.source);
        let carrier = step
            .carrier
            .iter()
            .map(|(s, mid)| (s.clone(), self.carrier[mid].clone()))
            .collect();
        let mut barycenters = self.barycenters.clone();
        barycenters.extend(step.barycenters);
        SubdivisionMap {
            source: step.source,
            target: Arc::clone(&self.target),
            carrier,
            barycenters,
        }
    }

    /// Carrier is monotone and onto every simplex of the target.
    pub fn check_invariants(&self) -> Result<()> {
        for (s, c) in &self.carrier {
            if !self.target.contains(c) {
                return Err(Error::Inconsistent(format!("carrier {c:?} of {s:?} not in target")));
            }
            for f in s.facets() {
                if !self.carrier[&f].is_face_of(c) {
                    return Err(Error::Inconsistent(format!("carrier not monotone at {s:?}")));
                }
            }
        }
        let hit: BTreeSet<&Simplex> = self.carrier.values().collect();
        if hit.len() != self.target.len() {
            return Err(Error::Inconsistent("some target simplex carries nothing".into()));
        }
        Ok(())
    }
}

/// One barycentric step: vertices of `X′` are simplices of `X` (in canonical
/// order) and simplices of `X′` are strictly increasing chains of faces.
pub fn barycentric_subdivision(x: &SimplicialComplex) -> SubdivisionMap {
    let order: Vec<&Simplex> = x.simplices().collect();
    let index: HashMap<&Simplex, Vertex> = order.iter().enumerate().map(|(i, s)| (*s, i)).collect();

    // chains[i]: all chains whose top element is simplex i.
    let mut chains: Vec<Vec<Vec<Vertex>>> = Vec::with_capacity(order.len());
    for (i, s) in order.iter().enumerate() {
        let mut mine = vec![vec![i]];
        for f in s.faces() {
            if &f == *s {
                continue;
            }
            for c in &chains[index[&f]] {
                let mut longer = c.clone();
                longer.push(i);
                mine.push(longer);
            }
        }
        chains.push(mine);
    }

    let mut carrier = BTreeMap::new();
    for (i, cs) in chains.into_iter().enumerate() {
        for c in cs {
            carrier.insert(Simplex::new(c), order[i].clone());
        }
    }
    let source = SimplicialComplex::from_closed_set(carrier.keys().cloned().collect())
        .expect("chains are closed under taking subchains");
    SubdivisionMap {
        source: Arc::new(source),
        target: Arc::new(x.clone()),
        carrier,
        barycenters: vec![order.into_iter().cloned().collect()],
    }
}

/// `level` barycentric steps; level 0 is the identity.
pub fn iterated_subdivision(x: Arc<SimplicialComplex>, level: usize) -> SubdivisionMap {
    let mut map = SubdivisionMap::identity(x);
    for _ in 0..level {
        map = map.refine();
    }
    map
}
