//! Machine certification of the structural facts on concrete instances.
//!
//! Every check builds the brute-force distance graph and compares it with
//! the closed forms in [`crate::formula`]. Each outcome is a
//! [`VerificationReport`]; refutations carry the data needed to re-check them
//! and inconclusive reports only come from resource limits.

mod recovery;
mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coloring::{self, ChromaticResult};
use crate::error::{Error, Result};
use crate::formula;
use crate::graph::{build_distance_graph, verify_embedding, Graph};
use crate::isomorphism::{find_isomorphism, is_isomorphism};
use crate::limits::Limits;
use crate::space::{perm_compose, perm_weight, DistanceSet, Point, SpaceSpec};

pub use recovery::{recover_distance_set_sn, recover_distance_set_zq};
pub use report::{sort_reports, to_json_lines, Claim, Status, VerificationReport};

pub const DEFAULT_SEED: u64 = 0x5254_4447;
/// Metric axioms are checked on every triple up to this many triples.
pub const EXHAUSTIVE_TRIPLE_LIMIT: u64 = 10_000_000;
pub const DEFAULT_SAMPLE_TRIPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub limits: Limits,
    pub seed: u64,
    /// Random triples drawn when the space is too large for exhaustion.
    pub sample_triples: usize,
    pub record_timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            limits: Limits::default(),
            seed: DEFAULT_SEED,
            sample_triples: DEFAULT_SAMPLE_TRIPLES,
            record_timing: false,
        }
    }
}

/// Claims checked per distance set by [`verify_corollary_suite`].
pub const COROLLARY_CLAIMS: [Claim; 7] = [
    Claim::Degree,
    Claim::Connectivity,
    Claim::Chromatic,
    Claim::ChromaticBySize,
    Claim::ComponentUniqueness,
    Claim::Recovery,
    Claim::Embedding,
];

fn number(value: &BigUint) -> Value {
    match value.to_u64() {
        Some(v) => json!(v),
        None => json!(value.to_string()),
    }
}

fn report(
    claim: Claim,
    space: &SpaceSpec,
    distances: Option<&DistanceSet>,
    status: Status,
    evidence: Value,
) -> VerificationReport {
    VerificationReport {
        claim,
        space: space.to_string(),
        distances: distances.map(|d| d.values().to_vec()),
        status,
        evidence,
        seconds: None,
    }
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Verified
    } else {
        Status::Refuted
    }
}

fn timed<T>(options: &VerifyOptions, f: impl FnOnce() -> T) -> (T, Option<f64>) {
    let start = Instant::now();
    let value = f();
    let seconds = options.record_timing.then(|| start.elapsed().as_secs_f64());
    (value, seconds)
}

fn with_seconds(mut r: VerificationReport, seconds: Option<f64>) -> VerificationReport {
    r.seconds = seconds;
    r
}

/// Turns resource-limit failures into inconclusive reports; other errors
/// (malformed input) are propagated.
fn inconclusive_on_limit(
    outcome: Result<VerificationReport>,
    claim: Claim,
    space: &SpaceSpec,
    distances: Option<&DistanceSet>,
) -> Result<VerificationReport> {
    match outcome {
        Err(e @ Error::SizeLimit { .. }) => Ok(report(
            claim,
            space,
            distances,
            Status::Inconclusive,
            json!({ "reason": e.to_string() }),
        )),
        other => other,
    }
}

/// Brute-force `G(space, D)` against the evaluated structure expression.
pub fn verify_structure_theorem(
    space: &SpaceSpec,
    distances: &DistanceSet,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    distances.check_for(space)?;
    let (outcome, seconds) = timed(options, || {
        let graph = build_distance_graph(space, distances, &options.limits)?;
        check_structure(&graph, space, distances, options)
    });
    inconclusive_on_limit(outcome, Claim::Structure, space, Some(distances)).map(|r| with_seconds(r, seconds))
}

fn check_structure(
    graph: &Graph,
    space: &SpaceSpec,
    distances: &DistanceSet,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let expr = formula::structure_expr(space, distances)?;
    let evaluated = expr.evaluate(options.limits.max_points, options.limits.max_edges)?;
    let mapping = find_isomorphism(graph, &evaluated, &options.limits)?;
    Ok(match mapping {
        // re-checked here, independently of the search that produced it
        Some(map) if is_isomorphism(graph, &evaluated, &map) => report(
            Claim::Structure,
            space,
            Some(distances),
            Status::Verified,
            json!({ "expr": expr.to_string(), "mapping": map }),
        ),
        _ => report(
            Claim::Structure,
            space,
            Some(distances),
            Status::Refuted,
            json!({
                "expr": expr.to_string(),
                "reason": "no isomorphism between the distance graph and the expression",
                "graph": { "vertices": graph.vertex_count(), "edges": graph.edge_count() },
                "expression": { "vertices": evaluated.vertex_count(), "edges": evaluated.edge_count() },
            }),
        ),
    })
}

fn check_degree(graph: &Graph, space: &SpaceSpec, distances: &DistanceSet) -> Result<VerificationReport> {
    let expected = formula::regular_degree(space, distances)?;
    let observed = graph.is_regular();
    let ok = observed.is_some_and(|d| BigUint::from(d) == expected);
    let mut evidence = json!({ "expected": number(&expected), "observed": observed });
    if observed.is_none() {
        let degrees = graph.degree_sequence();
        let min = degrees.iter().min().copied();
        let max = degrees.iter().max().copied();
        evidence["observed_range"] = json!([min, max]);
    }
    Ok(report(Claim::Degree, space, Some(distances), verdict(ok), evidence))
}

fn check_connectivity(graph: &Graph, space: &SpaceSpec, distances: &DistanceSet) -> Result<VerificationReport> {
    let expected_count = formula::component_count(space, distances)?;
    let expected_size = formula::component_size(space, distances)?;
    let partition = graph.connected_components();
    let count = partition.component_count();
    let connected = count == 1;
    let top_in_d = distances.contains(space.length());
    let sizes_ok = partition.sizes.iter().all(|&s| BigUint::from(s) == expected_size);
    let ok = BigUint::from(count) == expected_count && sizes_ok && connected == top_in_d;
    let mut evidence = json!({
        "connected": connected,
        "contains_max_distance": top_in_d,
        "components": count,
        "expected_components": number(&expected_count),
        "expected_component_size": number(&expected_size),
    });
    if !sizes_ok {
        evidence["component_sizes"] = json!(partition.sizes);
    }
    Ok(report(Claim::Connectivity, space, Some(distances), verdict(ok), evidence))
}

/// Returns the report plus the chromatic number that was certified, if any.
fn check_chromatic(
    graph: &Graph,
    space: &SpaceSpec,
    distances: &DistanceSet,
    options: &VerifyOptions,
) -> Result<(VerificationReport, Option<BigUint>)> {
    let expected = formula::chromatic_number(space, distances)?;
    let symbolic = formula::structure_expr(space, distances)?.chromatic_number();
    let mut evidence = json!({
        "formula": number(&expected),
        "expression": number(&symbolic),
    });
    let (status, certified) = match coloring::chromatic_number(graph, &options.limits) {
        Ok(ChromaticResult::Exact {
            chromatic_number,
            witness,
        }) => {
            evidence["exact"] = json!(chromatic_number);
            let witness_ok = witness.is_proper(graph) && witness.color_count == chromatic_number;
            let ok = witness_ok && BigUint::from(chromatic_number) == expected && symbolic == expected;
            if !witness_ok {
                evidence["reason"] = json!("coloring witness failed re-verification");
            }
            (verdict(ok), Some(BigUint::from(chromatic_number)))
        }
        Ok(ChromaticResult::Inconclusive { lower, upper, .. }) => {
            evidence["bounds"] = json!([lower, upper]);
            let inside = BigUint::from(lower) <= expected && expected <= BigUint::from(upper);
            (if inside { Status::Inconclusive } else { Status::Refuted }, None)
        }
        Err(e @ Error::SizeLimit { .. }) => {
            // too large for the exact solver; only the symbolic rule is checked
            evidence["exact"] = Value::Null;
            evidence["skipped"] = json!(e.to_string());
            let ok = symbolic == expected;
            (verdict(ok), ok.then(|| symbolic.clone()))
        }
        Err(e) => return Err(e),
    };
    Ok((report(Claim::Chromatic, space, Some(distances), status, evidence), certified))
}

/// Per-distance-set data kept for the checks that compare distance sets.
struct InstanceSummary {
    distances: DistanceSet,
    degree: Option<usize>,
    component_size: usize,
    /// First connected component, kept for isomorphism tie-breaks.
    component: Graph,
    chromatic: Option<BigUint>,
}

enum InstanceOutcome {
    Built(Vec<VerificationReport>, InstanceSummary),
    Limited(Vec<VerificationReport>, String),
}

fn run_instance(
    space: &SpaceSpec,
    distances: &DistanceSet,
    claims: &[Claim],
    options: &VerifyOptions,
) -> Result<InstanceOutcome> {
    let wants = |c: Claim| claims.contains(&c);
    let mut reports = Vec::new();

    if wants(Claim::Embedding) {
        if let SpaceSpec::Sn { n } = space {
            reports.push(verify_sn_embedding(*n, distances, options)?);
        }
    }

    let graph = match build_distance_graph(space, distances, &options.limits) {
        Ok(g) => g,
        Err(e @ Error::SizeLimit { .. }) => {
            let reason = e.to_string();
            for claim in [Claim::Structure, Claim::Degree, Claim::Connectivity, Claim::Chromatic] {
                if wants(claim) {
                    reports.push(report(
                        claim,
                        space,
                        Some(distances),
                        Status::Inconclusive,
                        json!({ "reason": reason }),
                    ));
                }
            }
            return Ok(InstanceOutcome::Limited(reports, reason));
        }
        Err(e) => return Err(e),
    };

    if wants(Claim::Structure) {
        let (r, s) = timed(options, || check_structure(&graph, space, distances, options));
        reports.push(with_seconds(
            inconclusive_on_limit(r, Claim::Structure, space, Some(distances))?,
            s,
        ));
    }
    if wants(Claim::Degree) {
        let (r, s) = timed(options, || check_degree(&graph, space, distances));
        reports.push(with_seconds(r?, s));
    }
    if wants(Claim::Connectivity) {
        let (r, s) = timed(options, || check_connectivity(&graph, space, distances));
        reports.push(with_seconds(r?, s));
    }
    let mut chromatic = None;
    let needs_chromatic = wants(Claim::Chromatic) || wants(Claim::ChromaticBySize);
    if needs_chromatic {
        let (r, s) = timed(options, || check_chromatic(&graph, space, distances, options));
        let (r, certified) = r?;
        chromatic = certified;
        if wants(Claim::Chromatic) {
            reports.push(with_seconds(r, s));
        }
    }

    let partition = graph.connected_components();
    let first = partition.members().into_iter().next().unwrap_or_default();
    let summary = InstanceSummary {
        distances: distances.clone(),
        degree: graph.is_regular(),
        component_size: first.len(),
        component: graph.induced_subgraph(&first),
        chromatic,
    };
    Ok(InstanceOutcome::Built(reports, summary))
}

/// Runs `claims` for every distance set in `sets` on `space`. Per-set work
/// fans out across the rayon pool; the result is sorted canonically.
pub fn verify_space(
    space: &SpaceSpec,
    sets: &[DistanceSet],
    claims: &[Claim],
    options: &VerifyOptions,
) -> Result<Vec<VerificationReport>> {
    for d in sets {
        d.check_for(space)?;
    }
    let per_set_claims = [
        Claim::Structure,
        Claim::Degree,
        Claim::Connectivity,
        Claim::Chromatic,
        Claim::Embedding,
    ];
    let cross_set_claims = [Claim::ChromaticBySize, Claim::ComponentUniqueness, Claim::Recovery];
    let needs_instances = claims
        .iter()
        .any(|c| per_set_claims.contains(c) || cross_set_claims.contains(c));

    let outcomes: Vec<InstanceOutcome> = if needs_instances {
        sets.par_iter()
            .map(|d| run_instance(space, d, claims, options))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    let mut reports = Vec::new();
    let mut summaries = Vec::new();
    let mut limited = None;
    for outcome in outcomes {
        match outcome {
            InstanceOutcome::Built(r, s) => {
                reports.extend(r);
                summaries.push(s);
            }
            InstanceOutcome::Limited(r, reason) => {
                reports.extend(r);
                limited.get_or_insert(reason);
            }
        }
    }

    for &claim in &cross_set_claims {
        if !claims.contains(&claim) {
            continue;
        }
        let applicable = match claim {
            Claim::ChromaticBySize => matches!(space, SpaceSpec::Zq { .. }),
            Claim::Recovery => !matches!(space, SpaceSpec::Product { .. }),
            _ => true,
        };
        if !applicable {
            continue;
        }
        let (r, seconds) = timed(options, || match &limited {
            Some(reason) => Ok(report(
                claim,
                space,
                None,
                Status::Inconclusive,
                json!({ "reason": reason }),
            )),
            None => match claim {
                Claim::ChromaticBySize => Ok(check_chromatic_by_size(space, &summaries)),
                Claim::ComponentUniqueness => check_component_uniqueness(space, &summaries, options),
                Claim::Recovery => Ok(check_recovery(space, &summaries)),
                _ => unreachable!("only cross-set claims reach here"),
            },
        });
        reports.push(with_seconds(r?, seconds));
    }

    if claims.contains(&Claim::MetricAxioms) {
        reports.push(verify_metric_axioms(space, options));
    }

    sort_reports(&mut reports);
    Ok(reports)
}

/// Degree, connectivity, chromatic and cross-set claims for every nonempty
/// `D ⊆ dist(space)`; on `S_n` also the embedding into `Z_n^n`.
pub fn verify_corollary_suite(space: &SpaceSpec, options: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    verify_space(space, &DistanceSet::all_nonempty_for(space), &COROLLARY_CLAIMS, options)
}

pub fn verify_corollary_suite_zq(q: u32, n: usize, options: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    verify_corollary_suite(&SpaceSpec::zq(q, n)?, options)
}

pub fn verify_corollary_suite_sn(n: usize, options: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    verify_corollary_suite(&SpaceSpec::sn(n)?, options)
}

fn check_chromatic_by_size(space: &SpaceSpec, summaries: &[InstanceSummary]) -> VerificationReport {
    let mut by_size: BTreeMap<usize, BTreeMap<String, Vec<String>>> = BTreeMap::new();
    let mut missing = Vec::new();
    for s in summaries {
        match &s.chromatic {
            Some(chi) => by_size
                .entry(s.distances.len())
                .or_default()
                .entry(chi.to_string())
                .or_default()
                .push(s.distances.to_string()),
            None => missing.push(s.distances.to_string()),
        }
    }
    if !missing.is_empty() {
        return report(
            Claim::ChromaticBySize,
            space,
            None,
            Status::Inconclusive,
            json!({ "reason": "chromatic number not certified", "sets": missing }),
        );
    }
    // equal sizes share one value, and different sizes never share one
    let one_value_per_size = by_size.values().all(|values| values.len() == 1);
    let values: Vec<&String> = by_size.values().flat_map(|v| v.keys()).collect();
    let mut distinct = values.clone();
    distinct.sort();
    distinct.dedup();
    let ok = one_value_per_size && distinct.len() == values.len();
    let table: BTreeMap<String, Vec<&String>> = by_size
        .iter()
        .map(|(size, values)| (size.to_string(), values.keys().collect()))
        .collect();
    report(
        Claim::ChromaticBySize,
        space,
        None,
        verdict(ok),
        json!({ "chromatic_by_size": table }),
    )
}

fn check_component_uniqueness(
    space: &SpaceSpec,
    summaries: &[InstanceSummary],
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let mut groups: BTreeMap<(usize, Option<usize>), Vec<&InstanceSummary>> = BTreeMap::new();
    for s in summaries {
        groups.entry((s.component_size, s.degree)).or_default().push(s);
    }
    let mut isomorphism_checks = 0usize;
    for group in groups.values() {
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                isomorphism_checks += 1;
                if let Some(map) = find_isomorphism(&a.component, &b.component, &options.limits)? {
                    return Ok(report(
                        Claim::ComponentUniqueness,
                        space,
                        None,
                        Status::Refuted,
                        json!({
                            "isomorphic_components": [a.distances.values(), b.distances.values()],
                            "mapping": map,
                        }),
                    ));
                }
            }
        }
    }
    Ok(report(
        Claim::ComponentUniqueness,
        space,
        None,
        Status::Verified,
        json!({
            "sets": summaries.len(),
            "distinct_invariants": groups.len(),
            "isomorphism_checks": isomorphism_checks,
        }),
    ))
}

fn check_recovery(space: &SpaceSpec, summaries: &[InstanceSummary]) -> VerificationReport {
    for s in summaries {
        let recovered = s.degree.map(|d| {
            let d = BigUint::from(d);
            match space {
                SpaceSpec::Zq { q, .. } => recover_distance_set_zq(*q, &d),
                _ => recover_distance_set_sn(&d),
            }
        });
        if !matches!(&recovered, Some(Ok(r)) if *r == s.distances) {
            return report(
                Claim::Recovery,
                space,
                None,
                Status::Refuted,
                json!({
                    "distances": s.distances.values(),
                    "degree": s.degree,
                    "recovered": recovered.map(|r| r.map(|d| d.values().to_vec()).map_err(|e| e.to_string())),
                }),
            );
        }
    }
    report(
        Claim::Recovery,
        space,
        None,
        Status::Verified,
        json!({ "sets": summaries.len() }),
    )
}

/// Symmetry, identity of indiscernibles and the triangle inequality, on all
/// triples when there are at most [`EXHAUSTIVE_TRIPLE_LIMIT`] of them and on
/// `options.sample_triples` seeded random triples otherwise. On `S_n` the
/// weight subadditivity `ω(αβ) ≤ ω(α) + ω(β)` is checked on the same pairs.
pub fn verify_metric_axioms(space: &SpaceSpec, options: &VerifyOptions) -> VerificationReport {
    let (r, seconds) = timed(options, || metric_axioms(space, options));
    with_seconds(r, seconds)
}

fn metric_axioms(space: &SpaceSpec, options: &VerifyOptions) -> VerificationReport {
    let card = space.cardinality();
    let exhaustive = card
        .to_u64()
        .and_then(|c| c.checked_mul(c)?.checked_mul(c))
        .is_some_and(|t| t <= EXHAUSTIVE_TRIPLE_LIMIT);

    let refuted = |violation: &str, points: &[&Point]| {
        report(
            Claim::MetricAxioms,
            space,
            None,
            Status::Refuted,
            json!({ "violation": violation, "points": points }),
        )
    };

    let distance = |x: &Point, y: &Point| space.distance(x, y).expect("points come from the space");

    if exhaustive {
        let points = space
            .enumerate(usize::MAX)
            .expect("exhaustive spaces are small");
        let n = points.len();
        let matrix: Vec<Vec<usize>> = points
            .iter()
            .map(|x| points.iter().map(|y| distance(x, y)).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                let d = matrix[i][j];
                if (d == 0) != (i == j) {
                    return refuted("identity of indiscernibles", &[&points[i], &points[j]]);
                }
                if d != matrix[j][i] {
                    return refuted("symmetry", &[&points[i], &points[j]]);
                }
                if let Some(why) = weight_violation(space, &points[i], &points[j]) {
                    return refuted(why, &[&points[i], &points[j]]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if matrix[i][k] > matrix[i][j] + matrix[j][k] {
                        return refuted("triangle inequality", &[&points[i], &points[j], &points[k]]);
                    }
                }
            }
        }
        return report(
            Claim::MetricAxioms,
            space,
            None,
            Status::Verified,
            json!({ "mode": "exhaustive", "triples": (n as u64).pow(3) }),
        );
    }

    let card = card.to_usize().filter(|&c| c <= options.limits.max_points);
    let Some(card) = card else {
        return report(
            Claim::MetricAxioms,
            space,
            None,
            Status::Inconclusive,
            json!({ "reason": format!("{} has more than {} points", space.math_name(), options.limits.max_points) }),
        );
    };
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.sample_triples {
        let x = space.unrank(rng.random_range(0..card));
        let y = space.unrank(rng.random_range(0..card));
        let z = space.unrank(rng.random_range(0..card));
        let (dxy, dyx, dyz, dxz) = (distance(&x, &y), distance(&y, &x), distance(&y, &z), distance(&x, &z));
        if (dxy == 0) != (x == y) || distance(&x, &x) != 0 {
            return refuted("identity of indiscernibles", &[&x, &y]);
        }
        if dxy != dyx {
            return refuted("symmetry", &[&x, &y]);
        }
        if dxz > dxy + dyz {
            return refuted("triangle inequality", &[&x, &y, &z]);
        }
        if let Some(why) = weight_violation(space, &x, &y) {
            return refuted(why, &[&x, &y]);
        }
    }
    report(
        Claim::MetricAxioms,
        space,
        None,
        Status::Verified,
        json!({ "mode": "sampled", "triples": options.sample_triples, "seed": options.seed }),
    )
}

fn weight_violation(space: &SpaceSpec, x: &Point, y: &Point) -> Option<&'static str> {
    let SpaceSpec::Sn { .. } = space else {
        return None;
    };
    let product = perm_compose(x.coords(), y.coords()).expect("same length");
    (perm_weight(&product) > perm_weight(x.coords()) + perm_weight(y.coords())).then_some("weight subadditivity")
}

/// `G(S_n, D)` into `G(Z_n^n, D)` through `α ↦ (α(1)-1, …, α(n)-1)`.
///
/// Checks that the encoding is injective, preserves RT distances pointwise,
/// and maps every edge onto an edge.
pub fn verify_sn_embedding(n: usize, distances: &DistanceSet, options: &VerifyOptions) -> Result<VerificationReport> {
    let sn = SpaceSpec::sn(n)?;
    distances.check_for(&sn)?;
    let (outcome, seconds) = timed(options, || embedding(&sn, n, distances, options));
    inconclusive_on_limit(outcome, Claim::Embedding, &sn, Some(distances)).map(|r| with_seconds(r, seconds))
}

fn embedding(sn: &SpaceSpec, n: usize, distances: &DistanceSet, options: &VerifyOptions) -> Result<VerificationReport> {
    if n == 1 {
        // Z_1 is not a valid alphabet; S_1 is a single point with no edges
        return Ok(report(
            Claim::Embedding,
            sn,
            Some(distances),
            Status::Verified,
            json!({ "target": null, "edges": 0 }),
        ));
    }
    let words = SpaceSpec::zq(n as u32, n)?;
    let source = build_distance_graph(sn, distances, &options.limits)?;
    let target = build_distance_graph(&words, distances, &options.limits)?;
    let permutations = source.labels().expect("distance graphs are labeled");
    let encoded: Vec<Point> = permutations
        .iter()
        .map(|a| Point::new(a.coords().iter().map(|&c| c - 1).collect()))
        .collect();
    let map = encoded
        .iter()
        .map(|w| words.rank(w))
        .collect::<Result<Vec<usize>>>()?;

    for (i, a) in permutations.iter().enumerate() {
        for (j, b) in permutations.iter().enumerate().skip(i + 1) {
            let original = sn.distance(a, b)?;
            let image = words.distance(&encoded[i], &encoded[j])?;
            if original != image {
                return Ok(report(
                    Claim::Embedding,
                    sn,
                    Some(distances),
                    Status::Refuted,
                    json!({ "violation": "distance not preserved", "points": [a, b], "distances": [original, image] }),
                ));
            }
        }
    }
    let ok = match verify_embedding(&source, &target, &map) {
        Ok(ok) => ok,
        Err(Error::NotInjective(..)) => false,
        Err(e) => return Err(e),
    };
    Ok(report(
        Claim::Embedding,
        sn,
        Some(distances),
        verdict(ok),
        json!({
            "target": words.to_string(),
            "edges": source.edge_count(),
            "target_edges": target.edge_count(),
        }),
    ))
}
