//! Breadth-first search for move sequences between curves, and invariant
//! certificates for pairs of curves no sequence can connect.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::embedding::require_realizable;
use crate::error::Result;
use crate::invariants::{invariant_vector, InvariantVector};
use crate::moves::{generate, MoveInstance, MoveKind, MoveLabel};
use crate::word::{CanonicalKey, KeyMode, Word};

use MoveKind::*;

/// An integer function of the invariant vector together with the move kinds
/// that leave it unchanged on spherical curves.
pub struct SeparatingInvariant {
    pub name: &'static str,
    pub eval: fn(&InvariantVector) -> i64,
    pub preserved_by: &'static [MoveKind],
}

pub const SEPARATING_INVARIANTS: &[SeparatingInvariant] = &[
    SeparatingInvariant {
        name: "inv_w3",
        eval: |v| v.inv_w3,
        preserved_by: &[R1Add, R1Del, W3],
    },
    SeparatingInvariant {
        name: "inv_s2",
        eval: |v| v.inv_s2,
        preserved_by: &[R1Add, R1Del, S2Add, S2Del],
    },
    SeparatingInvariant {
        name: "inv_s3",
        eval: |v| v.inv_s3,
        preserved_by: &[R1Add, R1Del, S3],
    },
    SeparatingInvariant {
        name: "mu",
        eval: |v| v.mu,
        preserved_by: &[R1Add, R1Del, W2Add, W2Del],
    },
    SeparatingInvariant {
        name: "kappa",
        eval: |v| v.kappa,
        preserved_by: &[R1Add, R1Del, W3],
    },
    SeparatingInvariant {
        name: "s",
        eval: |v| v.s,
        preserved_by: &[W2Add, W2Del, W3],
    },
    SeparatingInvariant {
        name: "n",
        eval: |v| v.n,
        preserved_by: &[S3, W3],
    },
    SeparatingInvariant {
        name: "x mod 3",
        eval: |v| v.x.rem_euclid(3),
        preserved_by: &[R1Add, R1Del, S3],
    },
    SeparatingInvariant {
        name: "x mod 4",
        eval: |v| v.x.rem_euclid(4),
        preserved_by: &[R1Add, R1Del, S2Add, S2Del],
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub invariant: &'static str,
    pub source_value: i64,
    pub target_value: i64,
    pub preserved_by: Vec<MoveKind>,
}

/// First invariant preserved by every kind in `kinds` that differs on the two
/// words.
pub fn separate(w1: &Word, w2: &Word, kinds: &[MoveKind]) -> Option<Certificate> {
    let (v1, v2) = (invariant_vector(w1), invariant_vector(w2));
    SEPARATING_INVARIANTS
        .iter()
        .filter(|inv| kinds.iter().all(|k| inv.preserved_by.contains(k)))
        .find(|inv| (inv.eval)(&v1) != (inv.eval)(&v2))
        .map(|inv| Certificate {
            invariant: inv.name,
            source_value: (inv.eval)(&v1),
            target_value: (inv.eval)(&v2),
            preserved_by: inv.preserved_by.to_vec(),
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathStep {
    pub kind: MoveKind,
    pub label: MoveLabel,
    /// Word after the move; each step's move was generated from the previous word.
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BfsOutcome {
    /// A move sequence from the source to a word of the target curve.
    Found { steps: Vec<PathStep> },
    /// No sequence exists: an invariant preserved by every allowed kind differs.
    Separated { certificate: Certificate },
    /// Every curve reachable within the crossing bound was visited.
    NoPath { explored: usize },
    /// The step bound was hit with unexplored curves left.
    StepLimit { explored: usize, frontier: usize },
}

impl BfsOutcome {
    pub fn steps(&self) -> Option<&[PathStep]> {
        match self {
            BfsOutcome::Found { steps } => Some(steps),
            _ => None,
        }
    }
}

struct Visit {
    parent: Option<CanonicalKey>,
    step: Option<(MoveKind, MoveLabel)>,
    word: Word,
}

/// Shortest move sequence from `w1` to the curve of `w2` (up to base point and
/// orientation) using only `kinds`, never exceeding `max_crossings` double
/// points and at most `max_steps` moves.
pub fn bfs_reachable(
    w1: &Word,
    w2: &Word,
    kinds: &[MoveKind],
    max_crossings: usize,
    max_steps: usize,
) -> Result<BfsOutcome> {
    require_realizable(w1)?;
    require_realizable(w2)?;
    if let Some(certificate) = separate(w1, w2, kinds) {
        return Ok(BfsOutcome::Separated { certificate });
    }

    let target = w2.key(KeyMode::UnbasedUnoriented);
    let start = w1.canonical();
    let start_key = start.key(KeyMode::UnbasedUnoriented);
    let mut visited: HashMap<CanonicalKey, Visit> = HashMap::new();
    visited.insert(
        start_key.clone(),
        Visit {
            parent: None,
            step: None,
            word: start.clone(),
        },
    );
    if start_key == target {
        return Ok(BfsOutcome::Found { steps: Vec::new() });
    }

    let mut frontier = vec![(start_key, start)];
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth == max_steps {
            return Ok(BfsOutcome::StepLimit {
                explored: visited.len(),
                frontier: frontier.len(),
            });
        }
        depth += 1;
        let expanded: Vec<Vec<MoveInstance>> = frontier
            .par_iter()
            .map(|(_, word)| {
                kinds
                    .iter()
                    .flat_map(|&k| generate(word, k))
                    .filter(|m| m.result.crossings() <= max_crossings)
                    .collect()
            })
            .collect();

        let mut next = Vec::new();
        for ((parent_key, _), moves) in frontier.iter().zip(expanded) {
            for m in moves {
                let key = m.result.key(KeyMode::UnbasedUnoriented);
                if visited.contains_key(&key) {
                    continue;
                }
                visited.insert(
                    key.clone(),
                    Visit {
                        parent: Some(parent_key.clone()),
                        step: Some((m.kind, m.label)),
                        word: m.result.clone(),
                    },
                );
                if key == target {
                    return Ok(BfsOutcome::Found {
                        steps: trace(&visited, &key),
                    });
                }
                next.push((key, m.result));
            }
        }
        frontier = next;
    }
    Ok(BfsOutcome::NoPath {
        explored: visited.len(),
    })
}

fn trace(visited: &HashMap<CanonicalKey, Visit>, end: &CanonicalKey) -> Vec<PathStep> {
    let mut steps = Vec::new();
    let mut key = end.clone();
    while let Some(visit) = visited.get(&key) {
        let (Some(parent), Some((kind, label))) = (&visit.parent, visit.step) else {
            break;
        };
        steps.push(PathStep {
            kind,
            label,
            word: visit.word.clone(),
        });
        key = parent.clone();
    }
    steps.reverse();
    steps
}

/// Replays `steps` from `start`, checking that each is a generated move of the
/// previous word. Returns the final word.
pub fn replay(start: &Word, steps: &[PathStep]) -> Option<Word> {
    let mut current = start.canonical();
    for step in steps {
        let found = generate(&current, step.kind)
            .into_iter()
            .any(|m| m.result == step.word && m.label == step.label);
        if !found {
            return None;
        }
        current = step.word.clone();
    }
    Some(current)
}
