//! Sphere realizability and face structure of decorated words.
//!
//! Arc `A_j` is the piece of the curve from position `j` to position `j + 1`
//! (mod `2n`). At the crossing of a chord with head at position `h` and tail
//! at position `t`, the head pass crosses the tail pass from right to left, so
//! the counterclockwise order of arc-ends around the vertex is
//! `out(A_t), out(A_h), in(A_{t-1}), in(A_{h-1})`. The faces of the curve are
//! the orbits of the face-tracing permutation of the resulting rotation system.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::Word;

/// Rotation system of the 4-regular map carried by a word.
///
/// Arc-ends are numbered `2j` (start of `A_j`) and `2j + 1` (end of `A_j`).
/// A dart is identified with the arc-end it leaves from.
#[derive(Debug, Clone)]
pub struct CombinatorialMap {
    crossings: usize,
    rotation: Vec<usize>,
    orbits: Vec<Vec<usize>>,
}

/// Builds the rotation system of `w` and traces its faces.
pub fn build_map(w: &Word) -> CombinatorialMap {
    let len = w.len();
    let mut rotation = vec![0; 2 * len];
    let out_end = |p: usize| 2 * p;
    let in_end = |p: usize| 2 * ((p + len - 1) % len) + 1;
    for (head, tail) in w.chord_positions().into_values() {
        let ring = [out_end(tail), out_end(head), in_end(tail), in_end(head)];
        for i in 0..4 {
            rotation[ring[i]] = ring[(i + 1) % 4];
        }
    }

    let mut seen = vec![false; 2 * len];
    let mut orbits = Vec::new();
    for start in 0..2 * len {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            orbit.push(e);
            e = rotation[e ^ 1];
        }
        orbits.push(orbit);
    }
    CombinatorialMap {
        crossings: w.crossings(),
        rotation,
        orbits,
    }
}

impl CombinatorialMap {
    pub fn vertex_count(&self) -> usize {
        self.crossings
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings
    }

    /// The circle without double points splits the sphere into two discs.
    pub fn face_count(&self) -> usize {
        if self.crossings == 0 {
            2
        } else {
            self.orbits.len()
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn genus(&self) -> usize {
        let chi = self.euler_characteristic();
        debug_assert!(chi <= 2 && (2 - chi) % 2 == 0, "euler characteristic {chi}");
        ((2 - chi) / 2) as usize
    }

    /// Counterclockwise successor of an arc-end around its vertex.
    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    /// Face orbits as sequences of arc-ends.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }
}

pub fn genus(w: &Word) -> usize {
    build_map(w).genus()
}

/// Whether `w` is the word of a curve on the sphere.
pub fn realizable(w: &Word) -> bool {
    genus(w) == 0
}

pub(crate) fn require_realizable(w: &Word) -> Result<()> {
    match genus(w) {
        0 => Ok(()),
        genus => Err(Error::NonRealizable { genus }),
    }
}

/// A boundary arc of a face, with the sense in which the boundary walk
/// traverses it relative to the curve orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FaceArc {
    pub arc: usize,
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub arcs: Vec<FaceArc>,
    /// Chord at the corner where each boundary arc starts, in walk order.
    pub corners: Vec<u32>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.arcs.len()
    }

    /// All boundary arcs run the same way around the face.
    pub fn coherent(&self) -> bool {
        self.arcs.windows(2).all(|p| p[0].forward == p[1].forward)
    }

    pub fn arc_indices(&self) -> Vec<usize> {
        self.arcs.iter().map(|a| a.arc).collect()
    }

    /// Corner chords without repetition, sorted.
    pub fn chords(&self) -> Vec<u32> {
        let mut out = self.corners.clone();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Faces of a realizable word. The circle has two faces with no boundary arcs.
pub fn faces(w: &Word) -> Result<Vec<Face>> {
    let map = build_map(w);
    if map.genus() != 0 {
        return Err(Error::NonRealizable { genus: map.genus() });
    }
    Ok(faces_of(w, &map))
}

pub(crate) fn faces_of(w: &Word, map: &CombinatorialMap) -> Vec<Face> {
    let len = w.len();
    if len == 0 {
        let empty = Face {
            arcs: Vec::new(),
            corners: Vec::new(),
        };
        return vec![empty.clone(), empty];
    }
    let tokens = w.tokens();
    map.orbits
        .iter()
        .map(|orbit| {
            let arcs: Vec<FaceArc> = orbit
                .iter()
                .map(|&e| FaceArc {
                    arc: e / 2,
                    forward: e % 2 == 0,
                })
                .collect();
            let corners = arcs
                .iter()
                .map(|a| {
                    if a.forward {
                        tokens[a.arc].chord
                    } else {
                        tokens[(a.arc + 1) % len].chord
                    }
                })
                .collect();
            Face { arcs, corners }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChordBalance {
    pub chord: u32,
    pub left_to_right: usize,
    pub right_to_left: usize,
}

impl ChordBalance {
    pub fn interlaced(&self) -> usize {
        self.left_to_right + self.right_to_left
    }
}

/// How the arrows interlaced with each arrow cross it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub chords: Vec<ChordBalance>,
}

impl BalanceReport {
    pub fn balanced(&self) -> bool {
        self.chords
            .iter()
            .all(|c| c.left_to_right == c.right_to_left)
    }

    pub fn get(&self, chord: u32) -> Option<&ChordBalance> {
        self.chords.iter().find(|c| c.chord == chord)
    }
}

/// For each arrow `X` (tail to head), an interlaced arrow crosses it left to
/// right when its tail lies on the circle arc running from the tail of `X` to
/// the head of `X` in reading order.
pub fn balance(w: &Word) -> BalanceReport {
    let len = w.len();
    let positions = w.chord_positions();
    let mut chords: Vec<u32> = positions.keys().copied().collect();
    chords.sort_unstable();
    let report = chords
        .iter()
        .map(|&x| {
            let (head, tail) = positions[&x];
            // Positions strictly after the tail and before the head, cyclically.
            let on_arc = |p: usize| {
                let offset = (p + len - tail) % len;
                let span = (head + len - tail) % len;
                offset > 0 && offset < span
            };
            let mut entry = ChordBalance {
                chord: x,
                left_to_right: 0,
                right_to_left: 0,
            };
            for &y in &chords {
                if y == x {
                    continue;
                }
                let (yh, yt) = positions[&y];
                match (on_arc(yt), on_arc(yh)) {
                    (true, false) => entry.left_to_right += 1,
                    (false, true) => entry.right_to_left += 1,
                    _ => {}
                }
            }
            entry
        })
        .collect();
    BalanceReport { chords: report }
}
