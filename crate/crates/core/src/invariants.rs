//! Counting invariants of based arrow diagrams.
//!
//! The four based diagrams of two interlaced arrows, [`Pattern::U`],
//! [`Pattern::B`], [`Pattern::L`] and [`Pattern::R`], are counted as
//! sub-diagrams of a word. On words of spherical curves `u`, `b` and `l + r`
//! do not depend on the base point or the orientation, and the combinations
//! in [`InvariantVector`] are invariant under subsets of Reidemeister moves.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::embedding::{realizable, require_realizable};
use crate::error::Result;
use crate::word::{KeyMode, Role, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Pattern {
    U,
    B,
    L,
    R,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::U, Pattern::B, Pattern::L, Pattern::R];

    pub fn word(self) -> Word {
        let values: &[i64] = match self {
            Pattern::U => &[1, -2, -1, 2],
            Pattern::B => &[-1, 2, 1, -2],
            Pattern::L => &[-1, -2, 1, 2],
            Pattern::R => &[1, 2, -1, -2],
        };
        Word::from_signed(values).expect("pattern constants are valid words")
    }

    /// Image under orientation reversal.
    pub fn reversed(self) -> Pattern {
        match self {
            Pattern::L => Pattern::R,
            Pattern::R => Pattern::L,
            p => p,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pattern::U => "U",
            Pattern::B => "B",
            Pattern::L => "L",
            Pattern::R => "R",
        };
        f.write_str(s)
    }
}

/// Number of `k`-chord sub-diagrams of `w` isomorphic (as based diagrams) to
/// `pattern`, where `k` is the number of chords of `pattern`.
pub fn count_pattern(w: &Word, pattern: &Word) -> u64 {
    let k = pattern.crossings();
    let target = pattern.key(KeyMode::Based);
    if k > w.crossings() {
        return 0;
    }
    let mut count = 0;
    for subset in w.chords().into_iter().combinations(k) {
        let chords: BTreeSet<u32> = subset.into_iter().collect();
        let sub = w.subword(&chords).expect("chords taken from the word");
        if sub.key(KeyMode::Based) == target {
            count += 1;
        }
    }
    count
}

/// Counts of the four two-arrow patterns.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PatternCounts {
    pub u: u64,
    pub b: u64,
    pub l: u64,
    pub r: u64,
}

impl PatternCounts {
    pub fn get(&self, p: Pattern) -> u64 {
        match p {
            Pattern::U => self.u,
            Pattern::B => self.b,
            Pattern::L => self.l,
            Pattern::R => self.r,
        }
    }
}

/// All four two-arrow counts in one pass over interlaced pairs.
pub fn pattern_counts(w: &Word) -> PatternCounts {
    let tokens = w.tokens();
    let partner = w.partners();
    // First occurrences in reading order.
    let firsts: Vec<usize> = (0..w.len()).filter(|&p| partner[p] > p).collect();
    let mut counts = PatternCounts::default();
    for (i, &a1) in firsts.iter().enumerate() {
        let a2 = partner[a1];
        for &b1 in &firsts[i + 1..] {
            let b2 = partner[b1];
            // a1 < b1; interlaced iff a1 < b1 < a2 < b2.
            if !(b1 < a2 && a2 < b2) {
                continue;
            }
            match (tokens[a1].role, tokens[b1].role) {
                (Role::Head, Role::Tail) => counts.u += 1,
                (Role::Tail, Role::Head) => counts.b += 1,
                (Role::Tail, Role::Tail) => counts.l += 1,
                (Role::Head, Role::Head) => counts.r += 1,
            }
        }
    }
    counts
}

/// Number of circles of the orientation-respecting smoothing of every double
/// point. Arriving at position `j` along `A_{j-1}`, the smoothed curve leaves
/// along the arc starting at the partner position of `j`.
pub fn seifert_count(w: &Word) -> usize {
    let len = w.len();
    if len == 0 {
        return 1;
    }
    let partner = w.partners();
    let mut seen = vec![false; len];
    let mut circles = 0;
    for start in 0..len {
        if seen[start] {
            continue;
        }
        circles += 1;
        let mut arc = start;
        while !seen[arc] {
            seen[arc] = true;
            arc = partner[(arc + 1) % len];
        }
    }
    circles
}

/// Counts and derived invariants of a word.
///
/// Individual `l` and `r` depend on the drawing convention and are not part
/// of the serialized form; only their sum `lr` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantVector {
    pub n: i64,
    pub u: i64,
    pub b: i64,
    #[serde(skip)]
    pub l: i64,
    #[serde(skip)]
    pub r: i64,
    pub lr: i64,
    pub x: i64,
    pub s: i64,
    pub kappa: i64,
    pub inv_s3: i64,
    pub inv_s2: i64,
    pub inv_w3: i64,
    pub mu: i64,
    pub realizable: bool,
}

impl InvariantVector {
    /// Fixed CSV column order.
    pub const COLUMNS: [&'static str; 11] = [
        "n", "u", "b", "lr", "x", "s", "kappa", "inv_s3", "inv_s2", "inv_w3", "mu",
    ];

    pub fn get(&self, column: &str) -> Option<i64> {
        Some(match column {
            "n" | "c" => self.n,
            "u" => self.u,
            "b" => self.b,
            "l" => self.l,
            "r" => self.r,
            "lr" => self.lr,
            "x" => self.x,
            "s" => self.s,
            "kappa" => self.kappa,
            "inv_s3" => self.inv_s3,
            "inv_s2" => self.inv_s2,
            "inv_w3" => self.inv_w3,
            "mu" => self.mu,
            _ => return None,
        })
    }

    pub fn csv_header() -> String {
        std::iter::once("name").chain(Self::COLUMNS).join(",")
    }

    pub fn csv_row(&self, name: &str) -> String {
        std::iter::once(name.to_string())
            .chain(
                Self::COLUMNS
                    .iter()
                    .map(|c| self.get(c).unwrap().to_string()),
            )
            .join(",")
    }
}

pub fn invariant_vector(w: &Word) -> InvariantVector {
    let counts = pattern_counts(w);
    let (u, b, l, r) = (
        counts.u as i64,
        counts.b as i64,
        counts.l as i64,
        counts.r as i64,
    );
    let n = w.crossings() as i64;
    let s = seifert_count(w) as i64;
    let lr = l + r;
    let kappa = s - n;
    let inv_s2 = u - lr + b;
    InvariantVector {
        n,
        u,
        b,
        l,
        r,
        lr,
        x: u + b + lr,
        s,
        kappa,
        inv_s3: lr - b,
        inv_s2,
        inv_w3: u,
        mu: 2 * inv_s2 + kappa,
        realizable: realizable(w),
    }
}

/// Value of Arnold's `J+/2 + St`, which equals `u - l - r + b`.
pub fn arnold_alias(w: &Word) -> Result<i64> {
    require_realizable(w)?;
    Ok(invariant_vector(w).inv_s2)
}

/// Whether `u`, `b` and `l + r` agree over every base point and both
/// orientations of `w`.
pub fn verify_base_orientation_independence(w: &Word) -> Result<bool> {
    require_realizable(w)?;
    Ok(independence_holds(w))
}

/// [`verify_base_orientation_independence`] without the realizability check.
pub fn independence_holds(w: &Word) -> bool {
    let reference = pattern_counts(w);
    let signature = |c: PatternCounts| (c.u, c.b, c.l + c.r);
    let reversed = w.reverse_orientation();
    let len = w.len().max(1);
    [w, &reversed].iter().all(|word| {
        (0..len).all(|k| signature(pattern_counts(&word.rotate_base(k))) == signature(reference))
    })
}
