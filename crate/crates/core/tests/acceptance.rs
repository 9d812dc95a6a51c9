use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spherical_curves::corpus::{
    self, chord_diagrams, gauss_parity, realizable_decorations, Filters, LabelSource, Projections,
};
use spherical_curves::embedding::{balance, realizable};
use spherical_curves::invariants::{independence_holds, invariant_vector, pattern_counts};
use spherical_curves::moves::{enumerate_moves, InvariantDelta, MoveKind, MoveLabel};
use spherical_curves::search::{bfs_reachable, replay, BfsOutcome};
use spherical_curves::word::Word;

use MoveKind::*;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Every realizable word with at most `max_n` chords, up to relabeling.
fn realizable_words(max_n: usize) -> Vec<Word> {
    let mut out = vec![Word::circle()];
    for n in 1..=max_n {
        for seq in chord_diagrams(n).into_iter().filter(|s| gauss_parity(s)) {
            out.extend(realizable_decorations(&seq).into_iter().map(|w| w.canonical()));
        }
    }
    out
}

fn reference_values() -> Outcome {
    let table = Projections::bundled();
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    let expected: [(&str, &str, i64); 8] = [
        ("3_1", "inv_s2", 1),
        ("4_1", "inv_s2", 0),
        ("6_2", "inv_s2", 0),
        ("3_1", "inv_s3", 0),
        ("4_1", "inv_s3", 1),
        ("6_2", "inv_s3", 2),
        ("3_1", "inv_w3", 1),
        ("4_1", "inv_w3", 1),
    ];
    for (name, column, value) in expected {
        let Some(w) = table.get(name) else {
            failures.push(format!("{name} missing from projection table"));
            continue;
        };
        let got = invariant_vector(w).get(column).unwrap();
        seen.push(format!("{column}({name})={got}"));
        if got != value {
            failures.push(format!("{column}({name}) = {got}, expected {value}"));
        }
    }
    if failures.is_empty() {
        Ok(seen.join(" "))
    } else {
        Err(failures.join("; "))
    }
}

fn independence() -> Outcome {
    let words = realizable_words(6);
    let bad = words.iter().find(|w| {
        let c = pattern_counts(w);
        !independence_holds(w) || c.u != c.b
    });
    match bad {
        Some(w) => Err(format!("fails on {w}")),
        None => Ok(format!("{} realizable words with n <= 6", words.len())),
    }
}

fn move_suites() -> Outcome {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for w in realizable_words(5) {
        let before = invariant_vector(&w);
        for kind in MoveKind::ALL {
            for m in enumerate_moves(&w, kind).map_err(|e| e.to_string())? {
                let d = InvariantDelta::between(&before, &invariant_vector(&m.result));
                let ok = match kind {
                    R1Add | R1Del => [d.inv_s3, d.inv_s2, d.inv_w3, d.kappa, d.mu] == [0; 5],
                    S3 => d.inv_s3 == 0 && d.x % 3 == 0 && d.u == d.lr && d.b == d.lr && d.lr.abs() == 1,
                    S2Add | S2Del => d.inv_s2 == 0 && d.x % 4 == 0,
                    W3 => {
                        [d.inv_w3, d.u, d.b, d.s, d.kappa] == [0; 5] && d.lr.abs() == 1 && d.mu == -2 * d.lr
                    }
                    W2Add | W2Del => d.mu == 0 && d.s == 0 && d.n == kind.crossing_change(),
                };
                if !ok {
                    return Err(format!("{} on {w} -> {}: {:?}", kind.name(), m.result, d.entries()));
                }
                *counts.entry(kind.name()).or_default() += 1;
            }
        }
    }
    let missing: Vec<&str> = MoveKind::ALL.iter().map(|k| k.name()).filter(|k| !counts.contains_key(k)).collect();
    let summary = counts.iter().map(|(k, c)| format!("{k}={c}")).collect::<Vec<_>>().join(" ");
    check(missing.is_empty(), format!("instances checked: {summary}"))
}

fn balance_all() -> Outcome {
    let words = realizable_words(6);
    if let Some(w) = words.iter().find(|w| !balance(w).balanced()) {
        return Err(format!("unbalanced realizable word {w}"));
    }
    let pair: Word = "1 -2 -1 2".parse().unwrap();
    check(
        !balance(&pair).balanced() && !realizable(&pair),
        format!("{} words balanced; \"1 -2 -1 2\" unbalanced and not realizable", words.len()),
    )
}

fn additivity() -> Outcome {
    let pool: Vec<Word> = corpus::enumerate_by_diagrams(6).iter().map(|k| k.to_word()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = 0;
    while done < 200 {
        let (w1, w2) = (&pool[rng.gen_range(0..pool.len())], &pool[rng.gen_range(0..pool.len())]);
        if w1.crossings() + w2.crossings() > 8 {
            continue;
        }
        let (a1, a2) = (rng.gen_range(0..=w1.len()), rng.gen_range(0..=w2.len()));
        let sum = w1.connected_sum(w2, a1, a2).map_err(|e| e.to_string())?;
        let (c, c1, c2) = (pattern_counts(&sum), pattern_counts(w1), pattern_counts(&w2.rotate_base(a2)));
        let (v, v1, v2) = (invariant_vector(&sum), invariant_vector(w1), invariant_vector(w2));
        let ok = (c.u, c.b, c.l, c.r) == (c1.u + c2.u, c1.b + c2.b, c1.l + c2.l, c1.r + c2.r)
            && v.lr == v1.lr + v2.lr
            && v.kappa == v1.kappa + v2.kappa - 1
            && v.mu == v1.mu + v2.mu - 1;
        if !ok {
            return Err(format!("{w1} # {w2} at ({a1}, {a2})"));
        }
        done += 1;
    }
    Ok("200 sums additive in u, b, l, r; kappa and mu drop by 1".into())
}

fn corollary() -> Outcome {
    let classes = corpus::enumerate_by_diagrams(7);
    let mut zero = 0;
    for key in &classes {
        let v = invariant_vector(&key.to_word());
        if v.inv_s2 == 0 {
            zero += 1;
            if v.x != 4 * v.u {
                return Err(format!("{} has inv_s2 = 0 and x = {}, u = {}", key.to_word(), v.x, v.u));
            }
        }
    }
    Ok(format!("{zero} of {} curves with n <= 7 have inv_s2 = 0, all with x = 4u", classes.len()))
}

fn enumeration() -> Outcome {
    for n in 0..=6 {
        let (a, b) = (corpus::enumerate_by_diagrams(n), corpus::enumerate_by_moves(n));
        if a != b {
            return Err(format!("strategies disagree at n <= {n}: {} vs {}", a.len(), b.len()));
        }
    }
    let classes = corpus::enumerate_curves(7, Filters { prime: true, reduced: true });
    let mut per_n: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &classes {
        *per_n.entry(c.n).or_default() += 1;
    }
    let expected: BTreeMap<usize, usize> = [(0, 1), (3, 1), (4, 1), (5, 2), (6, 3), (7, 10)].into();
    let flype = classes.iter().filter(|c| c.label_source == LabelSource::FlypeProximity).count();
    check(per_n == expected && flype == 3, format!("prime reduced per n: {per_n:?}; flype labels: {flype}"))
}

fn separation() -> Outcome {
    let trefoil: Word = "1 -2 3 -1 2 -3".parse().unwrap();
    let mut detail = Vec::new();
    for (kinds, invariant) in [(vec![R1Add, R1Del, W3], "inv_w3"), (vec![R1Add, R1Del, S2Add, S2Del], "inv_s2")] {
        match bfs_reachable(&Word::circle(), &trefoil, &kinds, 7, 20).map_err(|e| e.to_string())? {
            BfsOutcome::Separated { certificate } if certificate.invariant == invariant => {
                detail.push(format!("{invariant}: {} vs {}", certificate.source_value, certificate.target_value))
            }
            other => return Err(format!("expected {invariant} certificate, got {other:?}")),
        }
    }
    Ok(detail.join("; "))
}

fn generation() -> Outcome {
    let kinds = [R1Add, R1Del, S2Add, S2Del, S3, W3];
    for source in corpus::enumerate_by_diagrams(3).iter().map(|k| k.to_word()) {
        for m in enumerate_moves(&source, W2Add).map_err(|e| e.to_string())? {
            if m.label != MoveLabel::W2a {
                continue;
            }
            let outcome = bfs_reachable(&source, &m.result, &kinds, 7, 12).map_err(|e| e.to_string())?;
            if let BfsOutcome::Found { steps } = outcome {
                let end = replay(&source, &steps).ok_or("path does not replay")?;
                if end.key(spherical_curves::KeyMode::UnbasedUnoriented)
                    != m.result.key(spherical_curves::KeyMode::UnbasedUnoriented)
                {
                    return Err("path ends on a different curve".into());
                }
                let labels: Vec<&str> = steps.iter().map(|s| s.label.name()).collect();
                return Ok(format!("w2a {source} -> {} via {}", m.result, labels.join(" ")));
            }
        }
    }
    Err("no w2a instance on n <= 3 reproduced".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("reference values", reference_values),
        ("independence n <= 6", independence),
        ("move suites n <= 5", move_suites),
        ("arrow balance n <= 6", balance_all),
        ("connected-sum additivity", additivity),
        ("x = 4u when inv_s2 = 0", corollary),
        ("enumeration cross-check", enumeration),
        ("move-subset separation", separation),
        ("w2a from RI, RIII, strong RII", generation),
    ];
    let mut stderr = std::io::stderr().lock();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += outcome.is_err() as usize;
        let _ = writeln!(stderr, "criterion {}: {status} {name} ({secs:.2}s) {detail}", i + 1);
    }
    let _ = writeln!(stderr, "acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
