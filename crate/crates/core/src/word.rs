//! Based, arrow-decorated Gauss words.
//!
//! A [`Word`] lists the preimages of the double points of a spherical curve in
//! the order met when walking the curve from its base point. Every chord id
//! occurs exactly twice: once as a [`Role::Head`] (the under pass of the
//! negative crossing) and once as a [`Role::Tail`]. The concrete syntax is a
//! whitespace separated list of nonzero integers, positive for heads and
//! negative for tails; the empty word is the simple closed curve.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Head,
    Tail,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Head => Role::Tail,
            Role::Tail => Role::Head,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Head => f.write_str("head"),
            Role::Tail => f.write_str("tail"),
        }
    }
}

/// One oriented letter. Ordered by `(chord, role)` with heads before tails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token {
    pub chord: u32,
    pub role: Role,
}

impl Token {
    pub const fn head(chord: u32) -> Token {
        Token {
            chord,
            role: Role::Head,
        }
    }

    pub const fn tail(chord: u32) -> Token {
        Token {
            chord,
            role: Role::Tail,
        }
    }

    pub fn signed(self) -> i64 {
        match self.role {
            Role::Head => i64::from(self.chord),
            Role::Tail => -i64::from(self.chord),
        }
    }

    pub fn from_signed(value: i64) -> Result<Token> {
        if value == 0 {
            return Err(Error::ZeroToken);
        }
        let chord = u32::try_from(value.unsigned_abs())
            .map_err(|_| Error::MalformedToken(value.to_string()))?;
        Ok(if value > 0 {
            Token::head(chord)
        } else {
            Token::tail(chord)
        })
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

/// A based arrow diagram. The base point is the gap before the first token
/// and the reading direction is the orientation of the curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    tokens: Vec<Token>,
}

impl Word {
    /// The simple closed curve.
    pub fn circle() -> Word {
        Word { tokens: Vec::new() }
    }

    pub fn new(tokens: Vec<Token>) -> Result<Word> {
        validate(&tokens)?;
        Ok(Word { tokens })
    }

    pub fn from_signed(values: &[i64]) -> Result<Word> {
        let tokens = values
            .iter()
            .map(|&v| Token::from_signed(v))
            .collect::<Result<Vec<_>>>()?;
        Word::new(tokens)
    }

    /// Skips validation. Callers guarantee the pairing invariant.
    pub(crate) fn from_tokens_unchecked(tokens: Vec<Token>) -> Word {
        debug_assert!(validate(&tokens).is_ok(), "invalid word {tokens:?}");
        Word { tokens }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.tokens.iter().map(|t| t.signed()).collect()
    }

    /// Number of tokens, `2n`.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Number of double points `n`.
    pub fn crossings(&self) -> usize {
        self.tokens.len() / 2
    }

    /// Chord ids in increasing order.
    pub fn chords(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self.tokens.iter().map(|t| t.chord).collect();
        set.into_iter().collect()
    }

    pub fn max_chord(&self) -> u32 {
        self.tokens.iter().map(|t| t.chord).max().unwrap_or(0)
    }

    /// `partner[p]` is the other position carrying the chord at position `p`.
    pub fn partners(&self) -> Vec<usize> {
        let mut first: HashMap<u32, usize> = HashMap::with_capacity(self.crossings());
        let mut partner = vec![0; self.len()];
        for (p, t) in self.tokens.iter().enumerate() {
            if let Some(q) = first.remove(&t.chord) {
                partner[p] = q;
                partner[q] = p;
            } else {
                first.insert(t.chord, p);
            }
        }
        partner
    }

    /// Dense chord index per position, numbered `0..n` by first occurrence.
    pub(crate) fn dense_ids(&self) -> Vec<usize> {
        let partner = self.partners();
        let mut ids = vec![usize::MAX; self.len()];
        let mut next = 0;
        for p in 0..self.len() {
            if ids[p] == usize::MAX {
                ids[p] = next;
                ids[partner[p]] = next;
                next += 1;
            }
        }
        ids
    }

    /// `(head position, tail position)` of every chord, keyed by chord id.
    pub fn chord_positions(&self) -> HashMap<u32, (usize, usize)> {
        let mut out: HashMap<u32, (usize, usize)> = HashMap::with_capacity(self.crossings());
        for (p, t) in self.tokens.iter().enumerate() {
            let entry = out.entry(t.chord).or_insert((usize::MAX, usize::MAX));
            match t.role {
                Role::Head => entry.0 = p,
                Role::Tail => entry.1 = p,
            }
        }
        out
    }

    /// Relabels chords `1, 2, ...` in order of first occurrence.
    pub fn canonical(&self) -> Word {
        let ids = self.dense_ids();
        let tokens = self
            .tokens
            .iter()
            .zip(&ids)
            .map(|(t, &id)| Token {
                chord: id as u32 + 1,
                role: t.role,
            })
            .collect();
        Word { tokens }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn key(&self, mode: KeyMode) -> CanonicalKey {
        let tokens = match mode {
            KeyMode::Based => self.canonical().tokens,
            KeyMode::Unbased => min_rotation(&self.tokens),
            KeyMode::UnbasedUnoriented => {
                let forward = min_rotation(&self.tokens);
                let reversed: Vec<Token> = self.tokens.iter().rev().copied().collect();
                let backward = min_rotation(&reversed);
                forward.min(backward)
            }
        };
        CanonicalKey { mode, tokens }
    }

    /// Moves the base point forward across `k` tokens (taken mod `2n`).
    pub fn rotate_base(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::circle();
        }
        let mut tokens = self.tokens.clone();
        tokens.rotate_left(k % self.len());
        Word { tokens }.canonical()
    }

    /// The word of the same curve read in the opposite direction.
    pub fn reverse_orientation(&self) -> Word {
        let tokens = self.tokens.iter().rev().copied().collect();
        Word { tokens }.canonical()
    }

    /// Swaps every head with its tail: the word of the mirror image curve.
    pub fn mirror(&self) -> Word {
        let tokens = self
            .tokens
            .iter()
            .map(|t| Token {
                chord: t.chord,
                role: t.role.flip(),
            })
            .collect();
        Word { tokens }.canonical()
    }

    /// Keeps only the chords in `chords`, preserving order and base point.
    pub fn subword(&self, chords: &BTreeSet<u32>) -> Result<Word> {
        let present: BTreeSet<u32> = self.tokens.iter().map(|t| t.chord).collect();
        if let Some(&missing) = chords.difference(&present).next() {
            return Err(Error::UnknownChord(missing));
        }
        let tokens = self
            .tokens
            .iter()
            .filter(|t| chords.contains(&t.chord))
            .copied()
            .collect();
        Ok(Word { tokens }.canonical())
    }

    /// Splices `other`, based at its gap `arc2`, into gap `arc1` of `self`.
    ///
    /// Gaps are insertion points `0..=2n`; gap `g` sits just before token `g`.
    /// Chord ids of `self` are kept and those of `other` are shifted past them.
    pub fn connected_sum(&self, other: &Word, arc1: usize, arc2: usize) -> Result<Word> {
        if arc1 > self.len() {
            return Err(Error::InvalidArc {
                index: arc1,
                max: self.len(),
            });
        }
        if arc2 > other.len() {
            return Err(Error::InvalidArc {
                index: arc2,
                max: other.len(),
            });
        }
        let shift = self.max_chord();
        let mut inserted: Vec<Token> = other
            .tokens
            .iter()
            .map(|t| Token {
                chord: t.chord + shift,
                role: t.role,
            })
            .collect();
        if !inserted.is_empty() {
            let k = arc2 % inserted.len();
            inserted.rotate_left(k);
        }
        let mut tokens = Vec::with_capacity(self.len() + other.len());
        tokens.extend_from_slice(&self.tokens[..arc1]);
        tokens.extend(inserted);
        tokens.extend_from_slice(&self.tokens[arc1..]);
        Ok(Word::from_tokens_unchecked(tokens))
    }

    /// Whether chords at positions `(a1, a2)` and `(b1, b2)` alternate.
    pub(crate) fn positions_interlace(a: (usize, usize), b: (usize, usize)) -> bool {
        let (a1, a2) = if a.0 < a.1 { a } else { (a.1, a.0) };
        let inside = |p: usize| a1 < p && p < a2;
        inside(b.0) != inside(b.1)
    }

    /// Number of interlaced chord pairs.
    pub fn interlaced_pairs(&self) -> usize {
        let pos: Vec<(usize, usize)> = self.chord_positions().into_values().collect();
        let mut count = 0;
        for i in 0..pos.len() {
            for j in i + 1..pos.len() {
                if Word::positions_interlace(pos[i], pos[j]) {
                    count += 1;
                }
            }
        }
        count
    }
}

fn validate(tokens: &[Token]) -> Result<()> {
    let mut seen: HashMap<u32, (usize, Option<Role>)> = HashMap::new();
    for t in tokens {
        if t.chord == 0 {
            return Err(Error::ZeroToken);
        }
        let entry = seen.entry(t.chord).or_insert((0, None));
        entry.0 += 1;
        if entry.0 == 2 && entry.1 == Some(t.role) {
            return Err(Error::RepeatedRole {
                chord: t.chord,
                role: t.role,
            });
        }
        entry.1 = Some(t.role);
    }
    let mut bad: Vec<(u32, usize)> = seen
        .into_iter()
        .filter(|(_, (count, _))| *count != 2)
        .map(|(c, (count, _))| (c, count))
        .collect();
    bad.sort_unstable();
    if let Some(&(chord, count)) = bad.first() {
        return Err(Error::ChordMultiplicity { chord, count });
    }
    Ok(())
}

/// Lexicographically least first-occurrence relabeling over all rotations.
fn min_rotation(tokens: &[Token]) -> Vec<Token> {
    use std::cmp::Ordering;

    let len = tokens.len();
    if len == 0 {
        return Vec::new();
    }
    let ids = Word {
        tokens: tokens.to_vec(),
    }
    .dense_ids();
    let mut best: Vec<Token> = Vec::new();
    let mut candidate = Vec::with_capacity(len);
    let mut map = vec![0u32; len / 2];
    for k in 0..len {
        candidate.clear();
        map.iter_mut().for_each(|m| *m = 0);
        let mut next = 1;
        // Equal while `candidate` is a prefix of `best`.
        let mut order = if best.is_empty() {
            Ordering::Less
        } else {
            Ordering::Equal
        };
        for i in 0..len {
            let p = (k + i) % len;
            let c = ids[p];
            if map[c] == 0 {
                map[c] = next;
                next += 1;
            }
            let t = Token {
                chord: map[c],
                role: tokens[p].role,
            };
            if order == Ordering::Equal {
                order = t.cmp(&best[i]);
                if order == Ordering::Greater {
                    break;
                }
            }
            candidate.push(t);
        }
        if order == Ordering::Less {
            std::mem::swap(&mut best, &mut candidate);
        }
    }
    best
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(text: &str) -> Result<Word> {
        let tokens = text
            .split_whitespace()
            .map(|s| {
                let v: i64 = s
                    .parse()
                    .map_err(|_| Error::MalformedToken(s.to_string()))?;
                Token::from_signed(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(tokens)
    }
}

/// Parses the token-string syntax.
pub fn parse(text: &str) -> Result<Word> {
    text.parse()
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_signed().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let values = Vec::<i64>::deserialize(deserializer)?;
        Word::from_signed(&values).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KeyMode {
    Based,
    Unbased,
    UnbasedUnoriented,
}

impl FromStr for KeyMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<KeyMode, String> {
        match s {
            "based" => Ok(KeyMode::Based),
            "unbased" => Ok(KeyMode::Unbased),
            "unbased-unoriented" | "unoriented" => Ok(KeyMode::UnbasedUnoriented),
            other => Err(format!("unknown key mode `{other}`")),
        }
    }
}

/// A relabeled token sequence identifying a word up to the symmetries of
/// its [`KeyMode`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub mode: KeyMode,
    pub tokens: Vec<Token>,
}

impl CanonicalKey {
    pub fn crossings(&self) -> usize {
        self.tokens.len() / 2
    }

    /// The representative word spelled by the key.
    pub fn to_word(&self) -> Word {
        Word::from_tokens_unchecked(self.tokens.clone())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

/// Canonical based key of `w`.
pub fn canonicalize(w: &Word) -> CanonicalKey {
    w.key(KeyMode::Based)
}
