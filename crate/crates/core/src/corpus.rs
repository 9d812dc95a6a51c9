//! Exhaustive enumeration of spherical curves with few double points, with
//! primality and 1-gon filters, naming and invariant tables.
//!
//! Curves are classes of realizable words up to base point, orientation and
//! reflection of the sphere.
//! Two independent enumerations are provided: a search over all chord
//! diagrams with every decoration ([`enumerate_by_diagrams`]) and the closure
//! of the circle under all Reidemeister moves ([`enumerate_by_moves`]).

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::embedding::build_map;
use crate::error::{Error, Result};
use crate::invariants::{invariant_vector, InvariantVector};
use crate::moves::{generate, MoveKind};
use crate::word::{CanonicalKey, KeyMode, Role, Token, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Primality {
    Trivial,
    Prime,
    Composite,
}

/// A curve is composite when a proper nonempty cyclic interval of its word is
/// closed under the chord pairing.
pub fn primality(w: &Word) -> Primality {
    let len = w.len();
    if len == 0 {
        return Primality::Trivial;
    }
    let partner = w.partners();
    for start in 0..len {
        let mut inside = vec![false; len];
        let mut open = 0usize;
        for width in 1..len {
            let p = (start + width - 1) % len;
            inside[p] = true;
            if inside[partner[p]] {
                open -= 1;
            } else {
                open += 1;
            }
            if open == 0 {
                return Primality::Composite;
            }
        }
    }
    Primality::Prime
}

pub fn is_prime(w: &Word) -> bool {
    primality(w) == Primality::Prime
}

/// No chord has cyclically adjacent tokens, i.e. the curve has no 1-gon.
pub fn is_reduced(w: &Word) -> bool {
    let len = w.len();
    let partner = w.partners();
    (0..len).all(|p| partner[p] != (p + 1) % len)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Filters {
    /// Keep prime curves (and the circle).
    pub prime: bool,
    /// Keep curves without 1-gons.
    pub reduced: bool,
}

impl Filters {
    pub fn accepts(&self, w: &Word) -> bool {
        (!self.prime || primality(w) != Primality::Composite) && (!self.reduced || is_reduced(w))
    }
}

/// All chord diagrams on `2n` points, each written with chord ids `0..n` in
/// order of first occurrence.
pub fn chord_diagrams(n: usize) -> Vec<Vec<u8>> {
    fn extend(seq: &mut Vec<u8>, open: &mut Vec<u8>, next: u8, n: usize, out: &mut Vec<Vec<u8>>) {
        let remaining = 2 * n - seq.len();
        if remaining == 0 {
            out.push(seq.clone());
            return;
        }
        if (next as usize) < n && open.len() < remaining - 1 {
            seq.push(next);
            open.push(next);
            extend(seq, open, next + 1, n, out);
            open.pop();
            seq.pop();
        }
        for i in 0..open.len() {
            let c = open.remove(i);
            seq.push(c);
            extend(seq, open, next, n, out);
            seq.pop();
            open.insert(i, c);
        }
    }
    let mut out = Vec::new();
    extend(
        &mut Vec::with_capacity(2 * n),
        &mut Vec::new(),
        0,
        n,
        &mut out,
    );
    out
}

/// Every chord is interlaced with an even number of chords.
pub fn gauss_parity(seq: &[u8]) -> bool {
    let n = seq.len() / 2;
    let mut pos = vec![(usize::MAX, usize::MAX); n];
    for (p, &c) in seq.iter().enumerate() {
        let e = &mut pos[c as usize];
        if e.0 == usize::MAX {
            e.0 = p;
        } else {
            e.1 = p;
        }
    }
    (0..n).all(|a| {
        let (a1, a2) = pos[a];
        let crossing = (0..n).filter(|&b| {
            b != a && {
                let (b1, b2) = pos[b];
                (a1 < b1 && b1 < a2) != (a1 < b2 && b2 < a2)
            }
        });
        crossing.count() % 2 == 0
    })
}

fn relabel(seq: impl Iterator<Item = u8>, n: usize) -> Vec<u8> {
    let mut map = vec![u8::MAX; n];
    let mut next = 0;
    seq.map(|c| {
        if map[c as usize] == u8::MAX {
            map[c as usize] = next;
            next += 1;
        }
        map[c as usize]
    })
    .collect()
}

/// Least first-occurrence relabeling of an undecorated diagram over rotations
/// and reversal.
pub fn undecorated_key(seq: &[u8]) -> Vec<u8> {
    let len = seq.len();
    let n = len / 2;
    let mut best: Option<Vec<u8>> = None;
    for k in 0..len.max(1) {
        for reversed in [false, true] {
            let candidate = if reversed {
                relabel((0..len).map(|i| seq[(len + k - i) % len.max(1)]), n)
            } else {
                relabel((0..len).map(|i| seq[(k + i) % len]), n)
            };
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.unwrap_or_default()
}

/// Decorations of an undecorated diagram (chord ids `0..n`) whose word is
/// realizable. Chord `c` is written `c + 1`.
pub fn realizable_decorations(seq: &[u8]) -> Vec<Word> {
    let n = seq.len() / 2;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let mut first = vec![true; n];
        let tokens = seq
            .iter()
            .map(|&c| {
                let c = c as usize;
                let head_first = mask >> c & 1 == 1;
                let role = if first[c] == head_first {
                    Role::Head
                } else {
                    Role::Tail
                };
                first[c] = false;
                Token {
                    chord: c as u32 + 1,
                    role,
                }
            })
            .collect();
        let word = Word::from_tokens_unchecked(tokens);
        if build_map(&word).genus() == 0 {
            out.push(word);
        }
    }
    out
}

/// Undecorated sequence of a Dowker–Thistlethwaite code: crossing `i` is met
/// at steps `2i + 1` and `|code[i]|` (1-based).
pub fn dt_sequence(code: &[i64]) -> Result<Vec<u8>> {
    let n = code.len();
    let mut seq = vec![u8::MAX; 2 * n];
    for (i, &even) in code.iter().enumerate() {
        let even = even.unsigned_abs() as usize;
        if !even.is_multiple_of(2) || even == 0 || even > 2 * n || seq[even - 1] != u8::MAX {
            return Err(Error::MalformedToken(even.to_string()));
        }
        seq[2 * i] = i as u8;
        seq[even - 1] = i as u8;
    }
    Ok(relabel(seq.into_iter(), n))
}

/// Key of the curve of `w` up to base point, orientation and mirror image.
pub fn curve_key(w: &Word) -> CanonicalKey {
    w.key(KeyMode::UnbasedUnoriented)
        .min(w.mirror().key(KeyMode::UnbasedUnoriented))
}

/// Realizable curve classes with exactly `n` double points, by trying every
/// decoration of every chord diagram that passes the Gauss parity test.
pub fn classes_with_crossings(n: usize) -> BTreeSet<CanonicalKey> {
    if n == 0 {
        return [curve_key(&Word::circle())].into();
    }
    chord_diagrams(n)
        .into_par_iter()
        .filter(|seq| gauss_parity(seq) && undecorated_key(seq) == *seq)
        .flat_map_iter(|seq| {
            realizable_decorations(&seq)
                .into_iter()
                .map(|w| curve_key(&w))
        })
        .collect::<HashSet<_>>()
        .into_iter()
        .collect()
}

/// All realizable classes with at most `max_n` double points.
pub fn enumerate_by_diagrams(max_n: usize) -> BTreeSet<CanonicalKey> {
    (0..=max_n).flat_map(classes_with_crossings).collect()
}

/// Closure of the circle under every move kind without exceeding `max_n`
/// double points.
pub fn enumerate_by_moves(max_n: usize) -> BTreeSet<CanonicalKey> {
    let circle = Word::circle();
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    seen.insert(curve_key(&circle));
    let mut frontier = vec![circle];
    while !frontier.is_empty() {
        let found: Vec<Word> = frontier
            .par_iter()
            .flat_map_iter(|w| {
                MoveKind::ALL
                    .iter()
                    .filter(|k| w.crossings() as i64 + k.crossing_change() <= max_n as i64)
                    .flat_map(|&k| generate(w, k))
                    .map(|m| m.result)
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier = found
            .into_iter()
            .filter(|w| seen.insert(curve_key(w)))
            .collect();
    }
    seen.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelSource {
    /// The simple closed curve.
    Trivial,
    /// Same curve as a bundled knot projection.
    Projection,
    /// Best-effort match of a curve missing from the projection table to the
    /// projection it is reached from by a flype.
    FlypeProximity,
    /// No name known.
    Machine,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveClass {
    pub name: String,
    pub label_source: LabelSource,
    pub n: usize,
    /// Representative word spelled by the class key.
    pub word: Word,
    pub primality: Primality,
    pub reduced: bool,
    pub invariants: InvariantVector,
    #[serde(skip)]
    pub key: CanonicalKey,
}

impl CurveClass {
    pub fn new(key: CanonicalKey) -> CurveClass {
        let word = key.to_word();
        CurveClass {
            name: String::new(),
            label_source: LabelSource::Machine,
            n: word.crossings(),
            primality: primality(&word),
            reduced: is_reduced(&word),
            invariants: invariant_vector(&word),
            word,
            key,
        }
    }
}

/// Named projections of knots, one per line: `name token-string`.
#[derive(Debug, Clone)]
pub struct Projections {
    pub entries: Vec<(String, Word)>,
}

pub const BUNDLED_PROJECTIONS: &str = include_str!("../data/rolfsen_projections.txt");

impl Projections {
    pub fn parse(text: &str) -> Result<Projections> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, tokens) =
                line.split_once(char::is_whitespace)
                    .ok_or_else(|| Error::ProjectionTable {
                        line: i + 1,
                        reason: "missing word".into(),
                    })?;
            let word: Word = tokens.parse().map_err(|e: Error| Error::ProjectionTable {
                line: i + 1,
                reason: e.to_string(),
            })?;
            entries.push((name.to_string(), word));
        }
        Ok(Projections { entries })
    }

    pub fn bundled() -> Projections {
        Projections::parse(BUNDLED_PROJECTIONS).expect("bundled projection table parses")
    }

    pub fn get(&self, name: &str) -> Option<&Word> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    /// Name of the projection whose [`curve_key`] is `key`.
    pub fn lookup(&self, key: &CanonicalKey) -> Option<&str> {
        self.entries
            .iter()
            .find(|(_, w)| curve_key(w) == *key)
            .map(|(n, _)| n.as_str())
    }
}

/// Curves missing from the seven-crossing projection table and the projection
/// each is obtained from by a flype.
pub const FLYPE_LABELS: [(&str, &str); 3] = [("7_A", "7_6"), ("7_B", "7_7"), ("7_C", "7_5")];

fn proximity(a: &InvariantVector, b: &InvariantVector) -> i64 {
    [
        "u", "b", "lr", "s", "inv_s3", "inv_s2", "inv_w3", "kappa", "mu",
    ]
    .iter()
    .map(|c| (a.get(c).unwrap() - b.get(c).unwrap()).abs())
    .sum()
}

/// Attaches names: projection matches first, then the flype labels for the
/// three unmatched prime reduced seven-crossing curves (closest invariant
/// vectors), then machine ids `n<crossings>#<index>`.
pub fn name_classes(classes: &mut [CurveClass], projections: &Projections) {
    for class in classes.iter_mut() {
        if class.n == 0 {
            class.name = "◯".to_string();
            class.label_source = LabelSource::Trivial;
        } else if let Some(name) = projections.lookup(&class.key) {
            class.name = name.to_string();
            class.label_source = LabelSource::Projection;
        }
    }

    let orphans: Vec<usize> = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            c.n == 7
                && c.label_source == LabelSource::Machine
                && c.primality == Primality::Prime
                && c.reduced
        })
        .map(|(i, _)| i)
        .collect();
    let sources: Option<Vec<InvariantVector>> = FLYPE_LABELS
        .iter()
        .map(|(_, from)| projections.get(from).map(invariant_vector))
        .collect();
    if let (3, Some(sources)) = (orphans.len(), sources) {
        let best = orphans
            .iter()
            .permutations(3)
            .min_by_key(|perm| {
                perm.iter()
                    .zip(&sources)
                    .map(|(&&i, src)| proximity(&classes[i].invariants, src))
                    .sum::<i64>()
            })
            .expect("three orphans have permutations");
        for (&i, (label, _)) in best.into_iter().zip(FLYPE_LABELS.iter()) {
            classes[i].name = label.to_string();
            classes[i].label_source = LabelSource::FlypeProximity;
        }
    }

    let mut counters = std::collections::HashMap::new();
    for class in classes.iter_mut() {
        if class.label_source == LabelSource::Machine {
            let index = counters.entry(class.n).or_insert(0);
            *index += 1;
            class.name = format!("n{}#{}", class.n, index);
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Diagrams,
    Moves,
}

/// Curve classes up to `max_n` double points passing `filters`, ordered by
/// `(n, key)` and named from the bundled projection table.
pub fn enumerate_curves(max_n: usize, filters: Filters) -> Vec<CurveClass> {
    enumerate_curves_with(max_n, filters, Strategy::Diagrams)
}

pub fn enumerate_curves_with(max_n: usize, filters: Filters, strategy: Strategy) -> Vec<CurveClass> {
    let keys = match strategy {
        Strategy::Diagrams => enumerate_by_diagrams(max_n),
        Strategy::Moves => enumerate_by_moves(max_n),
    };
    let mut classes: Vec<CurveClass> =
        keys.into_iter().filter(|k| filters.accepts(&k.to_word())).map(CurveClass::new).collect();
    classes.sort_by(|a, b| (a.n, &a.key).cmp(&(b.n, &b.key)));
    name_classes(&mut classes, &Projections::bundled());
    classes
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Renders one row per class with the given invariant columns (after `name`).
pub fn table(classes: &[CurveClass], columns: &[&str], format: TableFormat) -> Result<String> {
    for c in columns {
        if InvariantVector::COLUMNS.iter().all(|k| k != c) && !["l", "r", "c"].contains(c) {
            return Err(Error::UnknownColumn((*c).to_string()));
        }
    }
    Ok(match format {
        TableFormat::Csv => {
            let mut out = std::iter::once("name")
                .chain(columns.iter().copied())
                .join(",");
            out.push('\n');
            for class in classes {
                let row = std::iter::once(class.name.clone())
                    .chain(
                        columns
                            .iter()
                            .map(|c| class.invariants.get(c).unwrap().to_string()),
                    )
                    .join(",");
                out.push_str(&row);
                out.push('\n');
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<serde_json::Value> = classes
                .iter()
                .map(|class| {
                    let mut row = serde_json::Map::new();
                    row.insert("name".into(), class.name.clone().into());
                    row.insert(
                        "label_source".into(),
                        serde_json::to_value(class.label_source).unwrap(),
                    );
                    row.insert("word".into(), serde_json::to_value(&class.word).unwrap());
                    for c in columns {
                        row.insert((*c).to_string(), class.invariants.get(c).unwrap().into());
                    }
                    serde_json::Value::Object(row)
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&rows).expect("rows serialize");
            out.push('\n');
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    const W3: &str = "1 -2 3 -1 2 -3";

    #[test]
    fn primality_examples() {
        assert!(is_prime(&w(W3)));
        let t = w(W3);
        assert_eq!(
            primality(&t.connected_sum(&t, 0, 0).unwrap()),
            Primality::Composite
        );
        assert!(is_prime(&w("1 -1")));
        assert_eq!(primality(&Word::circle()), Primality::Trivial);
        assert!(!is_prime(&Word::circle()));
    }

    #[test]
    fn reduced_examples() {
        assert!(is_reduced(&w(W3)));
        assert!(!is_reduced(&w("1 -1")));
        assert!(is_reduced(&Word::circle()));
        assert!(!is_reduced(&w("1 2 -3 -2 3 -1 4 -4")));
    }

    #[test]
    fn chord_diagram_counts_are_double_factorials() {
        let counts: Vec<usize> = (0..=5).map(|n| chord_diagrams(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 15, 105, 945]);
    }

    #[test]
    fn trefoil_from_dt_code() {
        let seq = dt_sequence(&[4, 6, 2]).unwrap();
        assert_eq!(seq, vec![0, 1, 2, 0, 1, 2]);
        let decorations = realizable_decorations(&seq);
        assert_eq!(decorations.len(), 2);
        assert_eq!(
            decorations[0].mirror().canonical(),
            decorations[1].canonical()
        );
        let key = curve_key(&w(W3));
        assert!(decorations.iter().all(|d| curve_key(d) == key));
    }

    #[test]
    fn small_enumerations() {
        let zero = enumerate_curves(0, Filters::default());
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].name, "◯");
        assert_eq!(zero[0].word, Word::circle());
    }

    #[test]
    fn closure_matches_diagrams_to_four() {
        assert_eq!(enumerate_by_moves(4), enumerate_by_diagrams(4));
    }
}
