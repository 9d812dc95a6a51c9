//! Reidemeister moves on decorated words.
//!
//! Adding moves insert fresh chords into gaps of the word and keep only
//! results that are realizable and carry the new 1-gon or 2-gon as a face,
//! so every accepted addition is the inverse of a legal deletion. Deletions
//! and third moves are read off the face structure: a 2-gon face is removed,
//! a 3-gon face is flipped by swapping the adjacent tokens on each of its
//! three boundary arcs.
//!
//! Second moves are strong when the 2-gon is coherent (inverse self-tangency)
//! and weak otherwise. Third moves are strong when the triangle is coherent
//! (cyclically oriented) and weak otherwise; the move-invariance suite pins
//! this against the increments of the pattern counts.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::embedding::{build_map, faces_of, require_realizable, Face};
use crate::error::{Error, Result};
use crate::invariants::{invariant_vector, InvariantVector};
use crate::word::{KeyMode, Token, Word};

/// Triangle coherence that marks a weak third move.
pub const WEAK_RIII_IS_COHERENT: bool = false;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MoveKind {
    #[serde(rename = "R1_add")]
    R1Add,
    #[serde(rename = "R1_del")]
    R1Del,
    #[serde(rename = "S2_add")]
    S2Add,
    #[serde(rename = "S2_del")]
    S2Del,
    #[serde(rename = "W2_add")]
    W2Add,
    #[serde(rename = "W2_del")]
    W2Del,
    S3,
    W3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::R1Add,
        MoveKind::R1Del,
        MoveKind::S2Add,
        MoveKind::S2Del,
        MoveKind::W2Add,
        MoveKind::W2Del,
        MoveKind::S3,
        MoveKind::W3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1Add => "R1_add",
            MoveKind::R1Del => "R1_del",
            MoveKind::S2Add => "S2_add",
            MoveKind::S2Del => "S2_del",
            MoveKind::W2Add => "W2_add",
            MoveKind::W2Del => "W2_del",
            MoveKind::S3 => "S3",
            MoveKind::W3 => "W3",
        }
    }

    /// Change in the number of double points.
    pub fn crossing_change(self) -> i64 {
        match self {
            MoveKind::R1Add => 1,
            MoveKind::R1Del => -1,
            MoveKind::S2Add | MoveKind::W2Add => 2,
            MoveKind::S2Del | MoveKind::W2Del => -2,
            MoveKind::S3 | MoveKind::W3 => 0,
        }
    }

    /// Parses a comma separated list; `R1`, `S2`, `W2` expand to both directions
    /// and `RIII` to both third moves.
    pub fn parse_list(list: &str) -> Result<Vec<MoveKind>> {
        let mut out = Vec::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let expanded: &[MoveKind] = match item.to_ascii_uppercase().as_str() {
                "R1" | "RI" => &[MoveKind::R1Add, MoveKind::R1Del],
                "S2" => &[MoveKind::S2Add, MoveKind::S2Del],
                "W2" => &[MoveKind::W2Add, MoveKind::W2Del],
                "R2" | "RII" => &[
                    MoveKind::S2Add,
                    MoveKind::S2Del,
                    MoveKind::W2Add,
                    MoveKind::W2Del,
                ],
                "R3" | "RIII" => &[MoveKind::S3, MoveKind::W3],
                _ => {
                    out.push(item.parse()?);
                    continue;
                }
            };
            out.extend_from_slice(expanded);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<MoveKind> {
        let kind = match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "R1_ADD" | "1A" => MoveKind::R1Add,
            "R1_DEL" | "1B" => MoveKind::R1Del,
            "S2_ADD" | "S2A" => MoveKind::S2Add,
            "S2_DEL" | "S2B" => MoveKind::S2Del,
            "W2_ADD" | "W2A" => MoveKind::W2Add,
            "W2_DEL" | "W2B" => MoveKind::W2Del,
            "S3" => MoveKind::S3,
            "W3" => MoveKind::W3,
            _ => return Err(Error::UnknownMoveKind(s.to_string())),
        };
        Ok(kind)
    }
}

/// Move names in the increasing/decreasing convention (`s3a` increases
/// `u + b + l + r`, `s3b` decreases it, and so on).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveLabel {
    #[serde(rename = "1a")]
    R1a,
    #[serde(rename = "1b")]
    R1b,
    S2a,
    S2b,
    W2a,
    W2b,
    S3a,
    S3b,
    W3a,
    W3b,
}

impl MoveLabel {
    pub fn name(self) -> &'static str {
        match self {
            MoveLabel::R1a => "1a",
            MoveLabel::R1b => "1b",
            MoveLabel::S2a => "s2a",
            MoveLabel::S2b => "s2b",
            MoveLabel::W2a => "w2a",
            MoveLabel::W2b => "w2b",
            MoveLabel::S3a => "s3a",
            MoveLabel::S3b => "s3b",
            MoveLabel::W3a => "w3a",
            MoveLabel::W3b => "w3b",
        }
    }
}

impl fmt::Display for MoveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a move acts. Gaps are insertion points `0..=2n` of the source word;
/// chord ids and arcs refer to its canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Site {
    Gap { gap: usize },
    Gaps { first: usize, second: usize },
    Chord { chord: u32 },
    Bigon { chords: [u32; 2], arcs: [usize; 2] },
    Triangle { chords: [u32; 3], arcs: [usize; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveInstance {
    pub kind: MoveKind,
    pub label: MoveLabel,
    pub site: Site,
    /// Canonical based form of the word the move was generated from.
    pub source: Word,
    /// Canonical based form of the result.
    pub result: Word,
}

/// All applications of `kind` to `w` whose result is a spherical curve.
pub fn enumerate_moves(w: &Word, kind: MoveKind) -> Result<Vec<MoveInstance>> {
    require_realizable(w)?;
    Ok(generate(&w.canonical(), kind))
}

/// Moves of every kind in `kinds`, in kind order.
pub fn enumerate_all(w: &Word, kinds: &[MoveKind]) -> Result<Vec<MoveInstance>> {
    require_realizable(w)?;
    let source = w.canonical();
    Ok(kinds.iter().flat_map(|&k| generate(&source, k)).collect())
}

/// Generation on a canonical realizable word.
pub(crate) fn generate(source: &Word, kind: MoveKind) -> Vec<MoveInstance> {
    let mut gen = Generator {
        source,
        x: source.interlaced_pairs() as i64,
        seen: HashSet::new(),
        out: Vec::new(),
    };
    match kind {
        MoveKind::R1Add => gen.kink_additions(),
        MoveKind::R1Del => gen.kink_deletions(),
        MoveKind::S2Add => gen.bigon_additions(true),
        MoveKind::W2Add => gen.bigon_additions(false),
        MoveKind::S2Del => gen.bigon_deletions(true),
        MoveKind::W2Del => gen.bigon_deletions(false),
        MoveKind::S3 => gen.triangle_flips(!WEAK_RIII_IS_COHERENT),
        MoveKind::W3 => gen.triangle_flips(WEAK_RIII_IS_COHERENT),
    }
    gen.out
}

struct Generator<'a> {
    source: &'a Word,
    x: i64,
    seen: HashSet<Word>,
    out: Vec<MoveInstance>,
}

impl Generator<'_> {
    fn push(&mut self, kind: MoveKind, label: MoveLabel, site: Site, result: Word) {
        let result = result.canonical();
        if self.seen.insert(result.clone()) {
            self.out.push(MoveInstance {
                kind,
                label,
                site,
                source: self.source.clone(),
                result,
            });
        }
    }

    fn kink_additions(&mut self) {
        let j = self.source.max_chord() + 1;
        for gap in 0..=self.source.len() {
            for seg in [
                [Token::head(j), Token::tail(j)],
                [Token::tail(j), Token::head(j)],
            ] {
                let result = insert_segments(self.source, gap, &seg, gap, &[]);
                if build_map(&result).genus() == 0 {
                    self.push(MoveKind::R1Add, MoveLabel::R1a, Site::Gap { gap }, result);
                }
            }
        }
    }

    fn kink_deletions(&mut self) {
        let len = self.source.len();
        let partner = self.source.partners();
        for p in 0..len {
            let q = partner[p];
            if q > p && (q == p + 1 || (p == 0 && q == len - 1)) {
                let chord = self.source.tokens()[p].chord;
                let result = remove_chords(self.source, &[chord]);
                self.push(
                    MoveKind::R1Del,
                    MoveLabel::R1b,
                    Site::Chord { chord },
                    result,
                );
            }
        }
    }

    /// Nested chord pairs for strong moves, interlaced pairs for weak ones; each
    /// strand gets one head.
    fn bigon_additions(&mut self, strong: bool) {
        let (kind, label) = if strong {
            (MoveKind::S2Add, MoveLabel::S2a)
        } else {
            (MoveKind::W2Add, MoveLabel::W2a)
        };
        let j = self.source.max_chord() + 1;
        let k = j + 1;
        let (first, second) = if strong {
            (
                [Token::head(j), Token::tail(k)],
                [Token::head(k), Token::tail(j)],
            )
        } else {
            (
                [Token::tail(j), Token::head(k)],
                [Token::head(j), Token::tail(k)],
            )
        };
        let flip = |seg: [Token; 2]| {
            seg.map(|t| Token {
                chord: t.chord,
                role: t.role.flip(),
            })
        };
        let len = self.source.len();
        for a in 0..=len {
            for b in a..=len {
                for (s1, s2) in [(first, second), (flip(first), flip(second))] {
                    let mut candidates = vec![insert_segments(self.source, a, &s1, b, &s2)];
                    if a == b {
                        candidates.push(insert_segments(self.source, a, &s2, a, &s1));
                    }
                    for result in candidates {
                        let map = build_map(&result);
                        if map.genus() != 0 {
                            continue;
                        }
                        let has_bigon = faces_of(&result, &map).iter().any(|f| {
                            f.degree() == 2 && f.chords() == [j, k] && f.coherent() == strong
                        });
                        if has_bigon {
                            self.push(
                                kind,
                                label,
                                Site::Gaps {
                                    first: a,
                                    second: b,
                                },
                                result,
                            );
                        }
                    }
                }
            }
        }
    }

    fn bigon_deletions(&mut self, strong: bool) {
        let (kind, label) = if strong {
            (MoveKind::S2Del, MoveLabel::S2b)
        } else {
            (MoveKind::W2Del, MoveLabel::W2b)
        };
        for face in self.faces() {
            let chords = face.chords();
            if face.degree() != 2 || chords.len() != 2 || face.coherent() != strong {
                continue;
            }
            let result = remove_chords(self.source, &chords);
            if build_map(&result).genus() == 0 {
                let arcs = [face.arcs[0].arc, face.arcs[1].arc];
                self.push(
                    kind,
                    label,
                    Site::Bigon {
                        chords: [chords[0], chords[1]],
                        arcs,
                    },
                    result,
                );
            }
        }
    }

    fn triangle_flips(&mut self, coherent: bool) {
        let weak = coherent == WEAK_RIII_IS_COHERENT;
        let len = self.source.len();
        for face in self.faces() {
            let chords = face.chords();
            if face.degree() != 3 || chords.len() != 3 || face.coherent() != coherent {
                continue;
            }
            let arcs = [face.arcs[0].arc, face.arcs[1].arc, face.arcs[2].arc];
            let mut positions: Vec<usize> = arcs.iter().flat_map(|&a| [a, (a + 1) % len]).collect();
            positions.sort_unstable();
            positions.dedup();
            if positions.len() != 6 {
                continue;
            }
            let mut tokens = self.source.tokens().to_vec();
            for &a in &arcs {
                tokens.swap(a, (a + 1) % len);
            }
            let result = Word::from_tokens_unchecked(tokens);
            if build_map(&result).genus() != 0 {
                continue;
            }
            let dx = result.interlaced_pairs() as i64 - self.x;
            let (kind, label) = match (weak, dx > 0) {
                (true, true) => (MoveKind::W3, MoveLabel::W3a),
                (true, false) => (MoveKind::W3, MoveLabel::W3b),
                (false, true) => (MoveKind::S3, MoveLabel::S3a),
                (false, false) => (MoveKind::S3, MoveLabel::S3b),
            };
            let site = Site::Triangle {
                chords: [chords[0], chords[1], chords[2]],
                arcs,
            };
            self.push(kind, label, site, result);
        }
    }

    fn faces(&self) -> Vec<Face> {
        faces_of(self.source, &build_map(self.source))
    }
}

/// Inserts `s1` at gap `a` and `s2` at gap `b >= a` of `w`; at equal gaps
/// `s1` comes first.
fn insert_segments(w: &Word, a: usize, s1: &[Token], b: usize, s2: &[Token]) -> Word {
    let src = w.tokens();
    let mut tokens = Vec::with_capacity(src.len() + s1.len() + s2.len());
    tokens.extend_from_slice(&src[..a]);
    tokens.extend_from_slice(s1);
    tokens.extend_from_slice(&src[a..b]);
    tokens.extend_from_slice(s2);
    tokens.extend_from_slice(&src[b..]);
    Word::from_tokens_unchecked(tokens)
}

fn remove_chords(w: &Word, chords: &[u32]) -> Word {
    let tokens = w
        .tokens()
        .iter()
        .filter(|t| !chords.contains(&t.chord))
        .copied()
        .collect();
    Word::from_tokens_unchecked(tokens)
}

/// Returns the result of `m`, provided `m` was generated from `w`.
pub fn apply(w: &Word, m: &MoveInstance) -> Result<Word> {
    if w.key(KeyMode::Based).tokens != m.source.tokens() {
        return Err(Error::StaleMove);
    }
    Ok(m.result.clone())
}

/// Difference `after - before` of every invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantDelta {
    pub n: i64,
    pub u: i64,
    pub b: i64,
    pub l: i64,
    pub r: i64,
    pub lr: i64,
    pub x: i64,
    pub s: i64,
    pub kappa: i64,
    pub inv_s3: i64,
    pub inv_s2: i64,
    pub inv_w3: i64,
    pub mu: i64,
}

impl InvariantDelta {
    pub fn between(before: &InvariantVector, after: &InvariantVector) -> InvariantDelta {
        InvariantDelta {
            n: after.n - before.n,
            u: after.u - before.u,
            b: after.b - before.b,
            l: after.l - before.l,
            r: after.r - before.r,
            lr: after.lr - before.lr,
            x: after.x - before.x,
            s: after.s - before.s,
            kappa: after.kappa - before.kappa,
            inv_s3: after.inv_s3 - before.inv_s3,
            inv_s2: after.inv_s2 - before.inv_s2,
            inv_w3: after.inv_w3 - before.inv_w3,
            mu: after.mu - before.mu,
        }
    }

    pub fn entries(&self) -> Vec<(&'static str, i64)> {
        vec![
            ("n", self.n),
            ("u", self.u),
            ("b", self.b),
            ("lr", self.lr),
            ("x", self.x),
            ("s", self.s),
            ("kappa", self.kappa),
            ("inv_s3", self.inv_s3),
            ("inv_s2", self.inv_s2),
            ("inv_w3", self.inv_w3),
            ("mu", self.mu),
        ]
    }
}

pub fn move_delta(w: &Word, m: &MoveInstance) -> Result<InvariantDelta> {
    let result = apply(w, m)?;
    Ok(InvariantDelta::between(
        &invariant_vector(w),
        &invariant_vector(&result),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    const W3: &str = "1 -2 3 -1 2 -3";

    fn results(word: &Word, kind: MoveKind) -> Vec<String> {
        enumerate_moves(word, kind)
            .unwrap()
            .into_iter()
            .map(|m| m.result.to_string())
            .collect()
    }

    #[test]
    fn strong_bigon_on_circle() {
        assert!(results(&Word::circle(), MoveKind::S2Add).contains(&"1 -2 2 -1".to_string()));
    }

    #[test]
    fn no_weak_bigon_on_circle() {
        assert!(results(&Word::circle(), MoveKind::W2Add).is_empty());
    }

    #[test]
    fn trefoil_has_a_third_move() {
        let t = w(W3);
        let total = results(&t, MoveKind::S3).len() + results(&t, MoveKind::W3).len();
        assert!(total > 0);
    }

    #[test]
    fn kink_add_and_delete() {
        let circle = Word::circle();
        let adds = enumerate_moves(&circle, MoveKind::R1Add).unwrap();
        let head_first = adds
            .iter()
            .find(|m| m.result.to_string() == "1 -1")
            .unwrap();
        assert_eq!(apply(&circle, head_first).unwrap(), w("1 -1"));

        let kink = w("1 -1");
        let dels = enumerate_moves(&kink, MoveKind::R1Del).unwrap();
        assert_eq!(dels.len(), 1);
        assert_eq!(apply(&kink, &dels[0]).unwrap(), Word::circle());
    }

    #[test]
    fn apply_rejects_foreign_instances() {
        let adds = enumerate_moves(&Word::circle(), MoveKind::R1Add).unwrap();
        assert_eq!(apply(&w("1 -1"), &adds[0]), Err(Error::StaleMove));
    }

    #[test]
    fn non_realizable_input_rejected() {
        assert!(matches!(
            enumerate_moves(&w("1 -2 -1 2"), MoveKind::R1Add),
            Err(Error::NonRealizable { genus: 1 })
        ));
    }

    #[test]
    fn kink_delta() {
        let circle = Word::circle();
        for m in enumerate_moves(&circle, MoveKind::R1Add).unwrap() {
            let d = move_delta(&circle, &m).unwrap();
            assert_eq!((d.u, d.b, d.lr, d.s, d.n), (0, 0, 0, 1, 1));
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("w2a".parse::<MoveKind>(), Ok(MoveKind::W2Add));
        assert_eq!(
            MoveKind::parse_list("R1, S2").unwrap(),
            vec![
                MoveKind::R1Add,
                MoveKind::R1Del,
                MoveKind::S2Add,
                MoveKind::S2Del
            ]
        );
        assert!("R4".parse::<MoveKind>().is_err());
    }
}
