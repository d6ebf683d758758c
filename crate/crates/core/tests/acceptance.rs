//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! The process fails if any criterion outside `KNOWN_UNATTAINABLE` fails, or if
//! one of those unexpectedly passes (the documentation would then be stale).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use finspace_core::algebra::{
    boundary_matrices, edge_path_presentation, euler_characteristic, homology, homology_space,
    HomologySummary,
};
use finspace_core::aspherical::{
    a_points, asphericity_certificate, is_strong_aspherical, is_strong_aspherical_exhaustive,
    strong_aspherical_complex,
};
use finspace_core::complex::{barycentric, collapse_to_dimension, face_poset, order_complex};
use finspace_core::generate::{
    random_complex, random_connected_complex, random_height2, random_pure_complex, random_space,
    random_strong_aspherical,
};
use finspace_core::iso::is_isomorphic;
use finspace_core::qc::{is_qc_reducible, prop25_check, qc_candidates, qc_reduce};
use finspace_core::reduction::{beat_points, core, is_collapsible, is_contractible, weak_points};
use finspace_core::{fixtures, Budget, Error, FiniteSpace, SearchOutcome, Verdict};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Figure 2 as drawn has H_2 = Z^2 and is not qc-reducible; see the README.
const KNOWN_UNATTAINABLE: [u32; 1] = [1];

type Outcome = Result<String, String>;

/// Id, name, time limit, check.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn labels(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn criterion_1() -> Outcome {
    let x = fixtures::fig2();
    let candidates = qc_candidates(&x).map_err(|e| e.to_string())?;
    check(
        candidates.contains(&("a".into(), "b".into())),
        "(a, b) is not a qc candidate",
    )?;
    let report = match prop25_check(&x, "a", "b") {
        Ok(r) | Err(Error::HypothesisViolated(r)) => r,
        Err(e) => return Err(e.to_string()),
    };
    check(
        report.union_contractible
            && report.intersection_connected
            && report.intersection_contractible,
        format!("conditions on (a, b): {report}"),
    )?;
    let h2 = if report.h2_vanishes {
        "H_2 = 0"
    } else {
        "H_2 != 0"
    };
    match is_qc_reducible(&x, Budget::default()).map_err(|e| e.to_string())? {
        SearchOutcome::Found(qc) => {
            check(
                qc.trace.moves.len() == 2,
                format!("trace has {} moves", qc.trace.moves.len()),
            )?;
            let end = qc.trace.replay().map_err(|e| e.to_string())?;
            check(end.has_maximum(), "final space has no maximum")?;
            Ok(format!(
                "candidate (a,b), conditions all true ({h2}), 2-move trace"
            ))
        }
        SearchOutcome::Exhausted => Err(format!(
            "conditions on (a,b) all true but {h2} (homology {}); is_qc_reducible exhausted: \
             after (a,b) the pair (rel(a,b), t) has U ∩ U = K_2,3, not contractible",
            homology_space(&x).map_err(|e| e.to_string())?.compact()
        )),
        SearchOutcome::Unknown => Err("qc search ran out of budget".into()),
    }
}

fn criterion_2() -> Outcome {
    let x = fixtures::fig3();
    check(beat_points(&x).is_empty(), "FIG3_X has beat points")?;
    let trace = is_collapsible(&x, Budget::default())
        .map_err(|e| e.to_string())?
        .found()
        .ok_or("no collapse found")?;
    check(
        trace.replay().map_err(|e| e.to_string())?.len() == 1,
        "trace does not end in a point",
    )?;
    check(
        qc_candidates(&x).map_err(|e| e.to_string())?.is_empty(),
        "qc candidates exist",
    )?;
    let h = homology_space(&x).map_err(|e| e.to_string())?;
    check(
        h.betti == [1, 0, 0] && !h.has_torsion(),
        format!("homology {}", h.compact()),
    )?;
    Ok(format!(
        "no beat points, collapsible in {} moves, no qc candidates, H = {}",
        trace.moves.len(),
        h.compact()
    ))
}

fn criterion_3() -> Outcome {
    let x = fixtures::fig4();
    let pts: BTreeSet<String> = a_points(&x).into_iter().collect();
    check(
        pts.is_superset(&labels(&["a", "d"])),
        format!("a-points {pts:?}"),
    )?;
    let y = x.remove(&["a", "d"]).map_err(|e| e.to_string())?;
    let h = homology_space(&y).map_err(|e| e.to_string())?;
    check(
        h.betti == [1, 0, 1] && !h.has_torsion(),
        format!("homology {}", h.compact()),
    )?;
    let k = order_complex(&y).map_err(|e| e.to_string())?;
    let p = edge_path_presentation(&k, y.label(0)).map_err(|e| e.to_string())?;
    let simplified = finspace_core::algebra::tietze_simplify(&p, 10_000);
    check(
        simplified.is_trivial(),
        format!("pi1 simplifies to {simplified}"),
    )?;
    let cert = asphericity_certificate(&x, Budget::default()).map_err(|e| e.to_string())?;
    check(
        cert.verdict == Verdict::NonAspherical,
        format!("verdict {}", cert.verdict),
    )?;
    Ok(format!(
        "a-points {pts:?}, H(X-{{a,d}}) = {}, pi1 trivial ({} generators eliminated), NON_ASPHERICAL",
        h.compact(),
        p.generators.len()
    ))
}

fn criterion_4() -> Outcome {
    let x = fixtures::fig5();
    let pts: BTreeSet<String> = a_points(&x).into_iter().collect();
    check(
        pts.is_superset(&labels(&["a", "b", "c", "d"])),
        format!("a-points {pts:?}"),
    )?;
    let y = x.remove(&["a", "b", "c", "d"]).map_err(|e| e.to_string())?;
    check(
        y.minimum_in(&y.full_mask()).is_some(),
        "remainder has no minimum",
    )?;
    check(
        is_contractible(&y).map_err(|e| e.to_string())?,
        "remainder not contractible",
    )?;
    let t = is_strong_aspherical(&x, Budget::default())
        .map_err(|e| e.to_string())?
        .found()
        .ok_or("no a-reduction sequence")?;
    check(
        t.replay().map_err(|e| e.to_string())?.len() == 1,
        "trace does not end in a point",
    )?;
    let cert = asphericity_certificate(&x, Budget::default()).map_err(|e| e.to_string())?;
    check(
        cert.verdict == Verdict::Aspherical,
        format!("verdict {}", cert.verdict),
    )?;
    Ok(format!(
        "a-points {pts:?}, remainder has minimum, strong aspherical in {} moves, ASPHERICAL",
        t.moves.len()
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut spaces, mut pairs, mut positive, mut skipped) = (0, 0, 0, 0);
    while spaces < 500 {
        let n = rng.gen_range(3..=10);
        let draw = rng.gen_range(0.3..0.8);
        let x = random_height2(&mut rng, n, draw);
        if homology_space(&x).map_err(|e| e.to_string())?.betti(2) != 0 {
            skipped += 1;
            continue;
        }
        spaces += 1;
        let maxima = x.maximal_points();
        for (i, a) in maxima.iter().enumerate() {
            for b in &maxima[i + 1..] {
                let r = prop25_check(&x, a, b).map_err(|e| format!("{e} on {x:?} ({a}, {b})"))?;
                pairs += 1;
                positive += r.union_contractible as usize;
            }
        }
    }
    check(
        positive > 0 && positive < pairs,
        "sample never exercises both outcomes",
    )?;
    Ok(format!(
        "{spaces} spaces with H_2 = 0 ({skipped} skipped), {pairs} pairs agree ({positive} true)"
    ))
}

fn same_homology(a: &HomologySummary, b: &HomologySummary) -> bool {
    strip(a) == strip(b)
}

/// Homology without trailing zero groups.
fn strip(h: &HomologySummary) -> (Vec<usize>, Vec<Vec<num_bigint::BigInt>>) {
    let mut betti = h.betti.clone();
    let mut torsion = h.torsion.clone();
    torsion.resize(betti.len(), Vec::new());
    while betti.len() > 1 && betti.last() == Some(&0) && torsion.last().is_some_and(Vec::is_empty) {
        betti.pop();
        torsion.pop();
    }
    (betti, torsion)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut beats, mut weaks, mut qcs) = (0, 0, 0);
    for round in 0..500 {
        let n = rng.gen_range(1..=10);
        let x = if round % 2 == 0 {
            let draw = rng.gen_range(0.2..0.7);
            random_space(&mut rng, n, draw)
        } else {
            let draw = rng.gen_range(0.3..0.8);
            random_height2(&mut rng, n, draw)
        };
        let h = homology_space(&x).map_err(|e| e.to_string())?;
        let k = order_complex(&x).map_err(|e| e.to_string())?;
        check(
            euler_characteristic(&k) == h.euler_characteristic(),
            format!("Euler characteristic on {x:?}"),
        )?;
        let (cx, _) = core(&x).map_err(|e| e.to_string())?;
        let mut seen = BTreeSet::new();
        for (b, _) in beat_points(&x) {
            if !seen.insert(b.clone()) {
                continue;
            }
            let y = x.remove(&[&b]).map_err(|e| e.to_string())?;
            let (cy, _) = core(&y).map_err(|e| e.to_string())?;
            check(
                is_isomorphic(&cx, &cy).is_some(),
                format!("core changed removing beat point {b} of {x:?}"),
            )?;
            check(
                same_homology(&h, &homology_space(&y).map_err(|e| e.to_string())?),
                format!("homology changed removing beat point {b}"),
            )?;
            beats += 1;
        }
        for w in weak_points(&x) {
            let y = x.remove(&[&w]).map_err(|e| e.to_string())?;
            check(
                same_homology(&h, &homology_space(&y).map_err(|e| e.to_string())?),
                format!("homology changed removing weak point {w} of {x:?}"),
            )?;
            weaks += 1;
        }
        if x.height().map_err(|e| e.to_string())? == 2 {
            for (a, b) in qc_candidates(&x).map_err(|e| e.to_string())? {
                let (y, _) = qc_reduce(&x, &a, &b).map_err(|e| e.to_string())?;
                check(
                    same_homology(&h, &homology_space(&y).map_err(|e| e.to_string())?),
                    format!("homology changed by qc ({a}, {b}) on {x:?}"),
                )?;
                qcs += 1;
            }
        }
    }
    Ok(format!(
        "500 spaces: {beats} beat, {weaks} weak, {qcs} qc removals preserve invariants"
    ))
}

fn random_core(x: &FiniteSpace, rng: &mut ChaCha8Rng) -> FiniteSpace {
    let mut y = x.clone();
    loop {
        let beats = beat_points(&y);
        let Some((b, _)) = beats.choose(rng) else {
            return y;
        };
        y = y.remove(&[b]).expect("beat point is present");
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sizes = BTreeSet::new();
    for _ in 0..200 {
        let n = rng.gen_range(1..=10);
        let draw = rng.gen_range(0.2..0.7);
        let x = random_space(&mut rng, n, draw);
        let first = random_core(&x, &mut rng);
        for _ in 1..50 {
            let other = random_core(&x, &mut rng);
            check(
                is_isomorphic(&first, &other).is_some(),
                format!("non-isomorphic cores of {x:?}"),
            )?;
        }
        sizes.insert(first.len());
    }
    Ok(format!("200 spaces x 50 orders, core sizes seen {sizes:?}"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut deletions = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=10);
        let x = random_strong_aspherical(&mut rng, n);
        for p in x.labels() {
            let y = x.remove(&[p]).map_err(|e| e.to_string())?;
            let found = is_strong_aspherical_exhaustive(&y, Budget::default())
                .map_err(|e| e.to_string())?
                .is_found();
            check(found, format!("{x:?} minus {p} is not strong aspherical"))?;
            deletions += 1;
        }
    }
    Ok(format!(
        "200 spaces, {deletions} one-point deletions all strong aspherical"
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let total = 200;
    let (mut completed, mut sa) = (0, 0);
    for round in 0..total {
        let v = rng.gen_range(3..=8);
        let k = if round % 2 == 0 {
            let draw = rng.gen_range(4..=16);
            random_pure_complex(&mut rng, v, draw, 2)
        } else {
            let draw = rng.gen_range(2..=10);
            random_complex(&mut rng, v, draw, 2)
        };
        let budget = Budget::default();
        let cert = strong_aspherical_complex(&k, budget)
            .map_err(|e| format!("{e} on {:?}", k.facet_labels()))?;
        let collapse = collapse_to_dimension(&k, 1, budget);
        if let (true, Some(c)) = (cert.verdict != Verdict::Unknown, collapse.decided()) {
            check(
                (cert.verdict == Verdict::StrongAspherical) == c,
                format!("disagreement on {:?}", k.facet_labels()),
            )?;
            completed += 1;
            sa += c as usize;
        }
    }
    let rate = completed as f64 / total as f64;
    check(rate >= 0.9, format!("completion rate {rate:.2}"))?;
    check(
        sa > 0 && sa < completed,
        "sample never exercises both outcomes",
    )?;
    Ok(format!(
        "{completed}/{total} completed ({:.0}%), {sa} strong aspherical, all agree",
        rate * 100.0
    ))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let v = rng.gen_range(2..=7);
        let draw = rng.gen_range(1..=6);
        let k = random_complex(&mut rng, v, draw, 3);
        let d = boundary_matrices(&k).map_err(|e| e.to_string())?;
        for pair in d.windows(2) {
            check(
                pair[0].mul(&pair[1]).ok_or("shape mismatch")?.is_zero(),
                "boundary of boundary is nonzero",
            )?;
        }
        let h = homology(&k).map_err(|e| e.to_string())?;
        let hs =
            homology(&barycentric(&k).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        check(
            strip(&h) == strip(&hs),
            format!("subdivision changed homology of {:?}", k.facet_labels()),
        )?;
    }
    for _ in 0..200 {
        let v = rng.gen_range(1..=7);
        let draw = rng.gen_range(1..=6);
        let k = random_connected_complex(&mut rng, v, draw, 2);
        let p = edge_path_presentation(&k, &k.vertices()[0]).map_err(|e| e.to_string())?;
        let (rank, _) = p.abelianization();
        let b1 = homology(&k).map_err(|e| e.to_string())?.betti(1);
        check(
            rank == b1,
            format!(
                "abelianization rank {rank} vs betti_1 {b1} on {:?}",
                k.facet_labels()
            ),
        )?;
    }
    let s1 = homology_space(&fixtures::s1_min()).map_err(|e| e.to_string())?;
    check(s1.betti == [1, 1], format!("S1_MIN {}", s1.compact()))?;
    let octahedron = order_complex(&fixtures::s2_min()).map_err(|e| e.to_string())?;
    let s2 = homology_space(&face_poset(&octahedron).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    check(
        s2.betti == [1, 0, 1] && !s2.has_torsion(),
        format!("S2_MIN {}", s2.compact()),
    )?;
    Ok("dd = 0 and subdivision invariance on 200 complexes, rank = betti_1 on 200, S1 (1,1), S2 (1,0,1)".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "Figure 2 suite", Duration::from_secs(1), criterion_1),
        (2, "Figure 3 suite", Duration::from_secs(5), criterion_2),
        (3, "Figure 4 suite", Duration::from_secs(5), criterion_3),
        (4, "Figure 5 suite", Duration::from_secs(5), criterion_4),
        (5, "qc conditions agree", Duration::MAX, criterion_5),
        (6, "invariance", Duration::MAX, criterion_6),
        (7, "core uniqueness", Duration::MAX, criterion_7),
        (
            8,
            "subspaces of strong aspherical spaces",
            Duration::MAX,
            criterion_8,
        ),
        (
            9,
            "strong asphericity vs collapse",
            Duration::MAX,
            criterion_9,
        ),
        (10, "algebra", Duration::MAX, criterion_10),
    ];
    let start = Instant::now();
    let mut failed = BTreeSet::new();
    for (id, name, limit, run) in criteria {
        let t = Instant::now();
        let mut result = run();
        let elapsed = t.elapsed();
        if result.is_ok() && elapsed > limit {
            result = Err(format!("took {elapsed:?}, limit {limit:?}"));
        }
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} [{elapsed:.2?}]: {detail}"),
            Err(reason) => {
                println!("criterion {id:>2} FAIL  {name} [{elapsed:.2?}]: {reason}");
                failed.insert(id);
            }
        }
    }
    let total = start.elapsed();
    let known: BTreeSet<u32> = KNOWN_UNATTAINABLE.into_iter().collect();
    println!(
        "acceptance: {}/10 pass in {total:.1?}; failing {failed:?}, known unattainable {known:?}",
        10 - failed.len()
    );
    if total > Duration::from_secs(300) {
        println!("acceptance: total runtime over the 5 minute target");
    }
    if failed != known {
        std::process::exit(1);
    }
}
