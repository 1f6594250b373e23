//! Seeded randomized suites that cross-check the theorems against direct
//! computation. The same seed always produces the same report; wall-clock
//! times are kept apart from the serialized data.

pub mod generators;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::covers::{
    closed_family_intersection_criterion, helly_check, is_regular_cover, is_simple_cover, kkm_witness,
    kkm_witness_simple, nerve_matches_complex, nerve_matches_complex_simple, regular_simplexwise, simple_by_vertices,
};
use crate::economy::{equilibrium_equivalences_with, limited_arbitrage};
use crate::error::Result;
use crate::exactmath::{feasible_weak, fourier_motzkin_feasible, satisfies_weak};
use crate::families::Condition;
use crate::simplicial::{
    iterated_subdivision, reduced_homology, HomologyProfile, SimplicialComplex, SubdivisionMap,
};

use generators::*;

/// Instance counts per suite.
#[derive(Clone, Debug, Serialize)]
pub struct Sizes {
    pub intersection_union: usize,
    pub duality: usize,
    pub cone_criterion: usize,
    pub helly: usize,
    pub covers: usize,
    pub economies: usize,
    pub linear_systems: usize,
    pub nerve_oracle: usize,
}

impl Default for Sizes {
    fn default() -> Self {
        Sizes {
            intersection_union: 200,
            duality: 100,
            cone_criterion: 200,
            helly: 500,
            covers: 100,
            economies: 500,
            linear_systems: 1000,
            nerve_oracle: 100,
        }
    }
}

impl Sizes {
    /// Every count divided by `factor` (at least one each).
    pub fn scaled_down(factor: usize) -> Self {
        let d = Sizes::default();
        let f = |x: usize| (x / factor.max(1)).max(1);
        Sizes {
            intersection_union: f(d.intersection_union),
            duality: f(d.duality),
            cone_criterion: f(d.cone_criterion),
            helly: f(d.helly),
            covers: f(d.covers),
            economies: f(d.economies),
            linear_systems: f(d.linear_systems),
            nerve_oracle: f(d.nerve_oracle),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    pub sizes: Sizes,
    /// Negative control: invert the acyclicity test in the checks under
    /// test, which the suites must then catch.
    pub tamper: bool,
}

impl SelftestConfig {
    pub fn new(seed: u64) -> Self {
        SelftestConfig {
            seed,
            sizes: Sizes::default(),
            tamper: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub instances: usize,
    /// Instances on which the checked statement has content (hypothesis
    /// held, verdict positive, ...); the meaning is per suite.
    pub nontrivial: usize,
    pub failures: usize,
    /// Descriptions of the first few failures.
    pub failure_samples: Vec<String>,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub sizes: Sizes,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn timings(&self) -> BTreeMap<String, f64> {
        self.suites
            .iter()
            .map(|s| (s.name.clone(), s.elapsed.as_secs_f64()))
            .collect()
    }
}

const MAX_SAMPLES: usize = 5;

struct Tally {
    name: &'static str,
    instances: usize,
    nontrivial: usize,
    failures: usize,
    samples: Vec<String>,
    start: Instant,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            instances: 0,
            nontrivial: 0,
            failures: 0,
            samples: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Records one instance: `Ok(Some(nontrivial))` when it passed,
    /// `Ok(None)` when skipped, `Err` as a failure.
    fn record(&mut self, i: usize, outcome: std::result::Result<Option<bool>, String>) {
        match outcome {
            Ok(None) => {}
            Ok(Some(nontrivial)) => {
                self.instances += 1;
                self.nontrivial += usize::from(nontrivial);
            }
            Err(msg) => {
                self.instances += 1;
                self.failures += 1;
                if self.samples.len() < MAX_SAMPLES {
                    self.samples.push(format!("instance {i}: {msg}"));
                }
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name.to_string(),
            instances: self.instances,
            nontrivial: self.nontrivial,
            passed: self.failures == 0,
            failures: self.failures,
            failure_samples: self.samples,
            elapsed: self.start.elapsed(),
        }
    }
}

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, String> {
    Err(msg.into())
}

fn run<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("error: {e}"))
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

type Acyclic = fn(&HomologyProfile) -> bool;

fn honest(p: &HomologyProfile) -> bool {
    p.is_acyclic()
}

fn flipped(p: &HomologyProfile) -> bool {
    !p.is_acyclic()
}

pub fn run_selftest(config: &SelftestConfig) -> SelftestReport {
    let acyclic: Acyclic = if config.tamper { flipped } else { honest };
    let s = &config.sizes;
    let seed = config.seed;
    let suites = vec![
        golden_homology(),
        intersection_union_suite(&mut rng_for(seed, 1), s.intersection_union, acyclic),
        duality_suite(&mut rng_for(seed, 2), s.duality),
        cone_criterion_suite(&mut rng_for(seed, 3), s.cone_criterion),
        helly_suite(&mut rng_for(seed, 4), s.helly),
        cover_suite(&mut rng_for(seed, 5), s.covers),
        economy_suite(&mut rng_for(seed, 6), s.economies, acyclic),
        linear_system_suite(&mut rng_for(seed, 7), s.linear_systems),
        nerve_oracle_suite(&mut rng_for(seed, 8), s.nerve_oracle),
    ];
    SelftestReport {
        seed,
        sizes: s.clone(),
        passed: suites.iter().all(|r| r.passed),
        suites,
    }
}

/// Empty complex, point, two points, hollow triangle.
pub fn golden_homology() -> SuiteReport {
    let mut t = Tally::new("golden_homology");
    let cases = [
        (SimplicialComplex::empty(), HomologyProfile::empty_space()),
        (SimplicialComplex::simplex([0]), HomologyProfile::acyclic()),
        (SimplicialComplex::from_maximal([vec![0], vec![1]]), HomologyProfile::sphere(0)),
        (
            SimplicialComplex::from_maximal([vec![0, 1], vec![1, 2], vec![0, 2]]),
            HomologyProfile::sphere(1),
        ),
    ];
    for (i, (c, expected)) in cases.into_iter().enumerate() {
        let got = reduced_homology(&c);
        t.record(
            i,
            if got == expected { Ok(Some(true)) } else { fail(format!("{got:?} != {expected:?}")) },
        );
    }
    t.finish()
}

/// `A_k` and `B_k` agree on random subcomplex families.
pub fn intersection_union_suite(rng: &mut ChaCha8Rng, count: usize, acyclic: Acyclic) -> SuiteReport {
    let mut t = Tally::new("intersection_union_equivalence");
    for i in 0..count {
        let size = rng.gen_range(2..=6);
        let k = rng.gen_range(1..=3);
        let outcome = (|| {
            let f = if rng.gen_bool(0.5) {
                run(random_subcomplex_family(rng, size))?
            } else {
                run(random_face_union_family(rng, size))?
            };
            let a = run(f.check_condition_with(Condition::AcyclicIntersections, k, acyclic))?;
            let b = run(f.check_condition(Condition::AcyclicUnions, k))?;
            if a.holds != b.holds {
                return fail(format!("k={k}: A={} B={} (witness {:?} / {:?})", a.holds, b.holds, a.witness, b.witness));
            }
            Ok(Some(a.holds))
        })();
        t.record(i, outcome);
    }
    t.finish()
}

/// Union homology equals intersection homology shifted by `k` on
/// `(k+1)`-member families satisfying `A_{k−1}`; families failing the
/// hypothesis are drawn again.
pub fn duality_suite(rng: &mut ChaCha8Rng, count: usize) -> SuiteReport {
    let mut t = Tally::new("union_intersection_duality");
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < count && attempts < 200 * count {
        attempts += 1;
        let size = rng.gen_range(2..=4);
        let outcome = (|| {
            let f = match rng.gen_range(0..3) {
                0 => run(random_face_union_family(rng, size))?,
                1 => run(random_face_family(rng, size))?,
                _ => run(random_sphere_family(rng, size))?,
            };
            let d = run(f.verify_duality(&f.all()))?;
            match d.claim() {
                None => Ok(None),
                Some(true) => Ok(Some(!d.intersection_profile.is_acyclic())),
                Some(false) => fail(format!(
                    "k={}: union {:?} vs intersection {:?}",
                    d.k, d.union_profile, d.intersection_profile
                )),
            }
        })();
        if !matches!(outcome, Ok(None)) {
            accepted += 1;
        }
        t.record(accepted, outcome);
    }
    if accepted < count {
        t.record(accepted, fail(format!("only {accepted} families met the hypothesis")));
    }
    t.finish()
}

/// Total intersection nonempty versus every subfamily union acyclic, on
/// convex cone families in dimensions one to three.
pub fn cone_criterion_suite(rng: &mut ChaCha8Rng, count: usize) -> SuiteReport {
    let mut t = Tally::new("cone_nonempty_intersection_criterion");
    for i in 0..count {
        let n = rng.gen_range(1..=3);
        let size = rng.gen_range(2..=6);
        let outcome = (|| {
            let f = run(random_cone_family(rng, n, size))?;
            let r = run(f.nonempty_intersection_criterion())?;
            if !r.agree {
                return fail(format!("nonempty={} unions={}", r.total_nonempty, r.unions.holds));
            }
            if let Some(crate::families::IntersectionWitness::Point(p)) = &r.witness {
                let crate::families::FamilyBackend::Cones { members, .. } = f.backend() else {
                    return fail("cone family lost its backend");
                };
                if !members.iter().all(|c| c.contains(p)) {
                    return fail("intersection witness outside a member");
                }
            }
            Ok(Some(r.total_nonempty))
        })();
        t.record(i, outcome);
    }
    t.finish()
}

/// Whenever all `(n+1)`-subfamilies meet, the whole family meets, with a
/// witness inside every member.
pub fn helly_suite(rng: &mut ChaCha8Rng, count: usize) -> SuiteReport {
    let mut t = Tally::new("helly");
    for i in 0..count {
        let n = rng.gen_range(1..=3);
        let outcome = (|| {
            let f = run(random_polytope_family(rng, n, 8))?;
            let r = run(helly_check(&f))?;
            if !r.hypothesis_holds {
                return Ok(Some(false));
            }
            let Some(p) = &r.witness_point else {
                return fail("hypothesis holds but the family misses");
            };
            if !(0..f.len()).all(|m| f.contains(m, p)) {
                return fail("witness point outside a member");
            }
            Ok(Some(true))
        })();
        t.record(i, outcome);
    }
    t.finish()
}

/// Regular covers of simplices of dimension at most three on at most two
/// barycentric levels: verified KKM witness, nerve equal to the simplex,
/// the two regularity checks agreeing. Level-two instances also draw a
/// simple cover and check the same for it.
pub fn cover_suite(rng: &mut ChaCha8Rng, count: usize) -> SuiteReport {
    let mut t = Tally::new("kkm_and_nerve");
    let mut cache: BTreeMap<(usize, usize), SubdivisionMap> = BTreeMap::new();
    for i in 0..count {
        let dim = rng.gen_range(0..=3);
        let level = rng.gen_range(0..=2);
        let sd = cache
            .entry((dim, level))
            .or_insert_with(|| iterated_subdivision(Arc::new(SimplicialComplex::simplex(0..=dim)), level))
            .clone();
        let outcome = (|| {
            let rc = run(random_regular_cover(rng, &sd))?;
            let regular = run(is_regular_cover(&rc))?;
            if regular.regular != regular_simplexwise(&rc) {
                return fail("regularity checks disagree");
            }
            if !regular.regular {
                return fail(format!("generated cover is not regular: {:?}", regular.witness));
            }
            let w = run(kkm_witness(&rc))?;
            if !rc.sets().values().all(|c| c.contains(&w)) {
                return fail("KKM witness outside a set");
            }
            let nerve = run(nerve_matches_complex(&rc))?;
            if !nerve.matches {
                return fail(format!("nerve differs: missing {:?} extra {:?}", nerve.missing, nerve.extra));
            }
            let crit = run(closed_family_intersection_criterion(&rc, Some(dim)))?;
            if crit.biconditional_holds == Some(false) {
                return fail("closed-family criterion fails");
            }
            if level == 2 {
                let sc = run(random_simple_cover(rng, &sd))?;
                let simple = run(is_simple_cover(&sc))?;
                if simple.simple != simple_by_vertices(&sc) {
                    return fail("simplicity checks disagree");
                }
                let w = run(kkm_witness_simple(&sc))?;
                if !sc.star_sets().values().all(|ws| w.vertices().iter().any(|v| ws.contains(v))) {
                    return fail("simple KKM witness misses a set");
                }
                if !run(nerve_matches_complex_simple(&sc))?.matches {
                    return fail("simple-cover nerve differs");
                }
            }
            Ok(Some(level > 0))
        })();
        t.record(i, outcome);
    }
    t.finish()
}

/// The four equilibrium verdicts agree, failure is monotone along the
/// subeconomy lattice, and positive verdicts carry a price in every market cone.
pub fn economy_suite(rng: &mut ChaCha8Rng, count: usize, acyclic: Acyclic) -> SuiteReport {
    let mut t = Tally::new("equilibrium_equivalences");
    for i in 0..count {
        let e = random_economy(rng, 6);
        let outcome = (|| {
            let r = run(equilibrium_equivalences_with(&e, &acyclic))?;
            if !r.consistent {
                return fail(format!(
                    "verdicts a={} b={} c={} d={} monotone={}",
                    r.verdict_a, r.verdict_b, r.verdict_c, r.verdict_d, r.monotone
                ));
            }
            let la = run(limited_arbitrage(&e))?;
            if let Some(p) = &la.witness_price {
                if !la.per_trader_cones.iter().all(|(_, c)| c.contains(p)) {
                    return fail("price witness outside a market cone");
                }
            } else if la.holds {
                return fail("positive verdict without a price");
            }
            Ok(Some(r.verdict_a))
        })();
        t.record(i, outcome);
    }
    t.finish()
}

/// Simplex-method feasibility against Fourier–Motzkin elimination.
pub fn linear_system_suite(rng: &mut ChaCha8Rng, count: usize) -> SuiteReport {
    let mut t = Tally::new("feasibility_oracle");
    for i in 0..count {
        let vars = rng.gen_range(1..=6);
        let rows = rng.gen_range(1..=8);
        let (a, b) = random_system(rng, vars, rows);
        let outcome = (|| {
            let lp = run(feasible_weak(&a, &b))?;
            let fm = run(fourier_motzkin_feasible(&a, &b))?;
            if lp.is_some() != fm {
                return fail(format!("simplex {} vs elimination {fm}", lp.is_some()));
            }
            if let Some(x) = &lp {
                if !satisfies_weak(&a, &b, x) {
                    return fail("simplex point violates the system");
                }
            }
            Ok(Some(fm))
        })();
        t.record(i, outcome);
    }
    t.finish()
}

/// Union homology of acyclic subcomplex families computed directly and
/// through the nerve.
pub fn nerve_oracle_suite(rng: &mut ChaCha8Rng, count: usize) -> SuiteReport {
    let mut t = Tally::new("nerve_oracle");
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < count && attempts < 100 * count {
        attempts += 1;
        let size = rng.gen_range(2..=6);
        let outcome = (|| {
            let f = match rng.gen_range(0..3) {
                0 => run(random_face_family(rng, size))?,
                1 => run(random_face_union_family(rng, size))?,
                _ => run(random_sphere_family(rng, size))?,
            };
            if run(f.acyclic_family_violation())?.is_some() {
                return Ok(None);
            }
            let all = f.all();
            let direct = run(f.union_profile(&all))?;
            let nerve = run(f.union_profile_via_nerve(&all))?;
            if direct != nerve {
                return fail(format!("direct {direct:?} vs nerve {nerve:?}"));
            }
            Ok(Some(!direct.is_acyclic()))
        })();
        if !matches!(outcome, Ok(None)) {
            accepted += 1;
        }
        t.record(accepted, outcome);
    }
    if accepted < count {
        t.record(accepted, fail(format!("only {accepted} acyclic families drawn")));
    }
    t.finish()
}
