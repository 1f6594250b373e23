use std::fs;

use anyhow::Context;
use serde::Serialize;
use serde_json::{json, Value};

use conetop::cones::{build_nerve_with_guard, union_homology, PolyhedralCone};
use conetop::covers::{
    closed_family_intersection_criterion, helly_check, is_regular_cover, is_simple_cover, kkm_witness,
    kkm_witness_simple, nerve_matches_complex, nerve_matches_complex_simple, regular_simplexwise, simple_by_vertices,
    simple_family_intersection_criterion, NerveReport,
};
use conetop::economy::{equilibrium_equivalences, limited_arbitrage, limited_diversity};
use conetop::families::{FamilyBackend, IndexedFamily, IntersectionWitness};
use conetop::io::{
    parse_complex, parse_cover, parse_economy, parse_family, parse_polytopes, rational_vec_to_strings, CoverSpec,
    LabelledComplex, ParsedCover,
};
use conetop::selftest::{run_selftest, SelftestConfig};
use conetop::simplicial::{reduced_homology, Simplex, Vertex};
use conetop::subsets::check_guard;
use conetop::Error;

use crate::report::Report;
use crate::{Args, Command, CoverCheck, Failure};

type Outcome = Result<(Report, u8), Failure>;

pub fn run(args: &Args) -> Outcome {
    if args.command == Command::Selftest {
        return selftest(args);
    }
    let path = args.input.as_ref().ok_or_else(|| Failure {
        code: 2,
        message: "missing input file".into(),
    })?;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let input: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    match args.command {
        Command::Homology => homology(&input),
        Command::Family => family(args, &input),
        Command::Cones => cones(args, &input),
        Command::Cover => cover(args, &input),
        Command::Helly => helly(args, &input),
        Command::Economy => economy(args, &input),
        Command::Selftest => unreachable!("handled above"),
    }
}

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn verdict_code(positive: bool) -> u8 {
    if positive {
        0
    } else {
        1
    }
}

fn inconsistent(msg: impl Into<String>) -> Failure {
    Failure::from(Error::Inconsistent(msg.into()))
}

fn homology(input: &Value) -> Outcome {
    let c = parse_complex(input)?;
    let profile = reduced_homology(&c.complex);
    if profile.reduced_euler_characteristic() != c.complex.reduced_euler_characteristic() {
        return Err(inconsistent("Euler characteristic of homology differs from the f-vector"));
    }
    let details = json!({
        "vertices": c.labels,
        "f_vector": c.complex.f_vector(),
        "reduced_homology": profile,
        "acyclic": profile.is_acyclic(),
        "reduced_euler_characteristic": c.complex.reduced_euler_characteristic(),
    });
    Ok((Report::new("homology", "computed", details), 0))
}

fn witness_json(w: &Option<IntersectionWitness>, ambient: Option<&LabelledComplex>) -> Value {
    match (w, ambient) {
        (Some(IntersectionWitness::Simplex(vs)), Some(a)) => {
            json!({"simplex": a.simplex_labels(&Simplex::new(vs.iter().copied()))})
        }
        (Some(w), _) => to_json(w),
        (None, _) => Value::Null,
    }
}

fn load_family(args: &Args, input: &Value) -> Result<(IndexedFamily, Option<LabelledComplex>), Failure> {
    let parsed = parse_family(input)?;
    let family = parsed.family.with_guard(args.max_index_set)?;
    check_guard(family.len(), args.max_index_set)?;
    Ok((family, parsed.ambient))
}

fn family(args: &Args, input: &Value) -> Outcome {
    let (f, ambient) = load_family(args, input)?;
    let top = f.len() - 1;
    let max_k = args.max_k.unwrap_or(top).min(top);
    let mut problems = Vec::new();

    let mut conditions = Vec::new();
    let mut a_top = true;
    for k in 0..=max_k {
        let r = f.intersection_union_equivalence(k)?;
        if !r.agree {
            problems.push(format!("A_{k} and B_{k} disagree"));
        }
        a_top = r.a.holds;
        conditions.push(to_json(&r));
    }

    let mut details = json!({
        "members": f.labels(),
        "backend": match f.backend() { FamilyBackend::Subcomplexes { .. } => "subcomplexes", FamilyBackend::Cones { .. } => "cones" },
        "max_k": max_k,
        "conditions": conditions,
    });
    let nerve = f.nerve()?;
    details["nerve"] = json!(nerve
        .maximal_simplices()
        .iter()
        .map(|s| f.labels_of(s.vertices()))
        .collect::<Vec<_>>());

    if f.len() >= 2 {
        let all = f.all_subfamily_acyclicity()?;
        if !all.agree {
            problems.push("all-subfamily acyclicity clauses disagree".into());
        }
        details["all_subfamilies"] = to_json(&all);
        details["duality"] = match f.verify_duality(&f.all()) {
            Ok(d) => {
                if d.claim() == Some(false) {
                    problems.push("union and intersection homology are not shifted copies".into());
                }
                to_json(&d)
            }
            Err(e @ Error::NerveNotApplicable { .. }) => json!({"not_applicable": e.to_string()}),
            Err(e) => return Err(e.into()),
        };
    }

    let violation = f.acyclic_family_violation()?;
    details["acyclic_family"] = json!(violation.is_none());
    match violation {
        None => {
            let r = f.nonempty_intersection_criterion()?;
            if !r.agree {
                problems.push("nonempty total intersection disagrees with acyclic unions".into());
            }
            let mut v = to_json(&r);
            v["witness"] = witness_json(&r.witness, ambient.as_ref());
            details["nonempty_intersection"] = v;
        }
        Some(v) => details["acyclic_family_witness"] = to_json(&v),
    }

    if f.ambient_dimension().is_some() {
        let r = f.dimension_bound_check()?;
        if !r.consistent {
            problems.push("dimension bound check failed".into());
        }
        details["dimension_bound"] = to_json(&r);
    }

    if !problems.is_empty() {
        return Err(inconsistent(problems.join("; ")));
    }
    let verdict = json!({ "condition": format!("A_{max_k}"), "holds": a_top });
    Ok((Report::new("family", verdict, details), verdict_code(a_top)))
}

fn cones(args: &Args, input: &Value) -> Outcome {
    let (f, _) = load_family(args, input)?;
    let FamilyBackend::Cones { dim, members } = f.backend() else {
        return Err(Failure {
            code: 2,
            message: "cones expects an ambient of the form {\"dimension\": n}".into(),
        });
    };
    let labelled: Vec<(&str, &PolyhedralCone)> = f.labels().iter().map(String::as_str).zip(members).collect();
    let mut per_member = serde_json::Map::new();
    for (l, c) in &labelled {
        per_member.insert(
            l.to_string(),
            json!({
                "cone": conetop::io::cone_to_json(c),
                "kind": c.kind(),
                "homology": c.homology()?,
            }),
        );
    }
    let all = f.all();
    let witness = f.intersection_witness(&all)?;
    let nerve = build_nerve_with_guard(&labelled, args.max_index_set)?;
    let union = match union_homology(&labelled) {
        Ok(p) => to_json(&p),
        Err(e @ Error::NerveNotApplicable { .. }) => json!({"not_applicable": e.to_string()}),
        Err(e) => return Err(e.into()),
    };
    let mut details = json!({
        "dimension": dim,
        "members": per_member,
        "intersection_witness": witness_json(&witness, None),
        "nerve": nerve.labelled_facets(),
        "union_homology": union,
    });
    if f.acyclic_family_violation()?.is_none() {
        let r = f.nonempty_intersection_criterion()?;
        if !r.agree {
            return Err(inconsistent("nonempty total intersection disagrees with acyclic unions"));
        }
        details["nonempty_intersection"] = to_json(&r);
    }
    let nonempty = witness.is_some();
    let verdict = json!({ "intersection_nonempty": nonempty });
    Ok((Report::new("cones", verdict, details), verdict_code(nonempty)))
}

fn nerve_json(r: &NerveReport, x: &LabelledComplex) -> Value {
    let names = |ss: &[Vec<Vertex>]| -> Vec<Vec<String>> {
        ss.iter().map(|s| x.simplex_labels(&Simplex::new(s.iter().copied()))).collect()
    };
    json!({"matches": r.matches, "missing": names(&r.missing), "extra": names(&r.extra)})
}

fn labels_of(x: &LabelledComplex, vs: &[Vertex]) -> Vec<String> {
    vs.iter().map(|&v| x.labels[v].clone()).collect()
}

fn cover(args: &Args, input: &Value) -> Outcome {
    let ParsedCover { complex: x, names, cover } = parse_cover(input)?;
    check_guard(x.labels.len(), args.max_index_set)?;
    let dim = x.complex.dim();
    match (&cover, args.check) {
        (CoverSpec::Regular(rc), None | Some(CoverCheck::Regular)) => {
            let r = is_regular_cover(rc)?;
            if r.regular != regular_simplexwise(rc) {
                return Err(inconsistent("regularity checks disagree"));
            }
            let mut details = json!({
                "kind": "closed",
                "subdivision_level": rc.subdivision().level(),
                "regular": r.regular,
                "witness": r.witness.as_ref().map(|w| labels_of(&x, w)),
                "uncovered": r.uncovered.as_ref().map(|s| names.simplex(&Simplex::new(s.iter().copied()))),
            });
            if r.regular {
                details["nerve"] = nerve_json(&nerve_matches_complex(rc)?, &x);
                details["intersection_criterion"] = criterion_json(&closed_family_intersection_criterion(rc, dim)?, &x)?;
            }
            Ok((Report::new("cover", json!({"regular": r.regular}), details), verdict_code(r.regular)))
        }
        (CoverSpec::Simple(sc), None | Some(CoverCheck::Simple)) => {
            let r = is_simple_cover(sc)?;
            if r.simple != simple_by_vertices(sc) {
                return Err(inconsistent("simplicity checks disagree"));
            }
            let mut details = json!({
                "kind": "open_stars",
                "subdivision_level": sc.subdivision().level(),
                "simple": r.simple,
                "witness": r.witness.map(|a| x.labels[a].clone()),
                "offending": r.offending.as_ref().map(|(w, t)| json!({
                    "star_vertex": names.name(*w),
                    "simplex": names.simplex(&Simplex::new(t.iter().copied())),
                })),
                "uncovered": r.uncovered.as_ref().map(|s| names.simplex(&Simplex::new(s.iter().copied()))),
            });
            if r.simple {
                details["nerve"] = nerve_json(&nerve_matches_complex_simple(sc)?, &x);
                details["intersection_criterion"] = criterion_json(&simple_family_intersection_criterion(sc, dim)?, &x)?;
            }
            Ok((Report::new("cover", json!({"simple": r.simple}), details), verdict_code(r.simple)))
        }
        (_, Some(CoverCheck::Kkm)) => {
            let w = match &cover {
                CoverSpec::Regular(rc) => kkm_witness(rc)?,
                CoverSpec::Simple(sc) => kkm_witness_simple(sc)?,
            };
            let details = json!({ "witness_simplex": names.simplex(&w) });
            Ok((Report::new("cover", json!({"common_point": true}), details), 0))
        }
        (CoverSpec::Regular(_), Some(CoverCheck::Simple)) => Err(Failure {
            code: 2,
            message: "--check simple needs star_vertices sets".into(),
        }),
        (CoverSpec::Simple(_), Some(CoverCheck::Regular)) => Err(Failure {
            code: 2,
            message: "--check regular needs closed simplices sets".into(),
        }),
    }
}

fn criterion_json(r: &conetop::covers::IntersectionCriterionReport, x: &LabelledComplex) -> Result<Value, Failure> {
    if r.biconditional_holds == Some(false) {
        return Err(inconsistent("cover intersection criterion fails"));
    }
    let mut v = to_json(r);
    v["precondition_witness"] = json!(r.precondition_witness.as_ref().map(|w| labels_of(x, w)));
    Ok(v)
}

fn helly(args: &Args, input: &Value) -> Outcome {
    let f = parse_polytopes(input)?;
    check_guard(f.len(), args.max_index_set)?;
    let r = helly_check(&f)?;
    if !r.consistent {
        return Err(inconsistent("every small subfamily meets but the whole family does not"));
    }
    let positive = r.conclusion == Some(true);
    let verdict = json!({"hypothesis_holds": r.hypothesis_holds, "family_meets": r.conclusion});
    Ok((Report::new("helly", verdict, to_json(&r)), verdict_code(positive)))
}

fn economy(args: &Args, input: &Value) -> Outcome {
    let e = parse_economy(input)?;
    check_guard(e.len(), args.max_index_set)?;
    if args.theorem11 {
        let r = equilibrium_equivalences(&e)?;
        if !r.consistent {
            return Err(inconsistent(format!(
                "equilibrium verdicts disagree: a={} b={} c={} d={} monotone={}",
                r.verdict_a, r.verdict_b, r.verdict_c, r.verdict_d, r.monotone
            )));
        }
        let verdict = json!({
            "a": r.verdict_a, "b": r.verdict_b, "c": r.verdict_c, "d": r.verdict_d, "consistent": r.consistent,
        });
        return Ok((Report::new("economy", verdict, to_json(&r)), verdict_code(r.verdict_a)));
    }
    let la = limited_arbitrage(&e)?;
    let ls = limited_diversity(&e)?;
    if la.holds != ls.holds {
        return Err(inconsistent("limited arbitrage and limited diversity disagree"));
    }
    let verdict = json!({
        "limited_arbitrage": la.holds,
        "equilibrium_exists": la.holds,
        "witness_price": la.witness_price.as_ref().map(|p| rational_vec_to_strings(p)),
        "empty_intersection_witness": la.empty_witness,
    });
    let details = json!({ "limited_arbitrage": la, "limited_diversity": ls });
    Ok((Report::new("economy", verdict, details), verdict_code(la.holds)))
}

fn selftest(args: &Args) -> Outcome {
    let config = SelftestConfig {
        tamper: args.tamper,
        ..SelftestConfig::new(args.seed)
    };
    let r = run_selftest(&config);
    let mut report = Report::new("selftest", json!({"passed": r.passed}), to_json(&r));
    for (name, secs) in r.timings() {
        report.timing.insert(name, json!(secs));
    }
    Ok((report, if r.passed { 0 } else { 3 }))
}
