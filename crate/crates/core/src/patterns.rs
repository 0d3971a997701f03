//! Permutations, words and ordered set partitions, with the two pattern
//! containment relations and the partition/word correspondence.
//!
//! Positions and letters are 1-indexed. Letters and pattern entries are
//! stored as `u8`, which bounds alphabets and patterns at 255 symbols; the
//! brute-force enumerators never get near that.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `[m]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let m = entries.len();
        let mut seen = vec![false; m + 1];
        let ok = m >= 1
            && entries.iter().all(|&e| {
                let e = e as usize;
                (1..=m).contains(&e) && !std::mem::replace(&mut seen[e], true)
            });
        if ok {
            Ok(Self(entries))
        } else {
            Err(Error::InvalidPermutation(entries.iter().map(|&e| e as u32).collect()))
        }
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `q` with `q[p[i]] = i`.
    pub fn inverse(&self) -> Self {
        let mut q = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            q[v as usize - 1] = (i + 1) as u8;
        }
        Self(q)
    }

    /// All permutations of `[m]` in lexicographic order.
    pub fn all(m: usize) -> Vec<Self> {
        fn go(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v as u8 + 1);
                    go(prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        if m > 0 {
            go(&mut Vec::with_capacity(m), &mut vec![false; m], &mut out);
        }
        out
    }

    /// Whether this is one of the six patterns of length three.
    pub fn is_length_three(&self) -> bool {
        self.0.len() == 3
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts compact one-line notation (`321`) for patterns of length at
    /// most 9, or entries separated by spaces or commas (`3 2 1`, `10,2,...`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts: Vec<&str> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let entries: std::result::Result<Vec<u8>, _> = if parts.len() == 1 {
            parts[0]
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or(()))
                .collect()
        } else {
            parts.iter().map(|t| t.parse::<u8>().map_err(|_| ())).collect()
        };
        let entries = entries.map_err(|_| Error::Parse(format!("bad permutation `{s}`")))?;
        Self::new(entries)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() > 9 { " " } else { "" };
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// A word over the alphabet `[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: u8,
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet: u8) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|&&l| l == 0 || l > alphabet) {
            return Err(Error::InvalidWord(format!("letter {bad} outside [{alphabet}]")));
        }
        Ok(Self { letters, alphabet })
    }

    /// Uses the largest letter as the alphabet bound.
    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        let k = letters.iter().copied().max().unwrap_or(0);
        Self::new(letters, k)
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.alphabet as usize + 1];
        for &l in &self.letters {
            seen[l as usize] = true;
        }
        seen[1..].iter().all(|&s| s)
    }

    /// Parses space-separated letters; `alphabet` defaults to the largest letter.
    pub fn parse(s: &str, alphabet: Option<u8>) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|t| t.parse::<u8>().map_err(|_| Error::Parse(format!("bad letter `{t}`"))))
            .collect::<Result<Vec<u8>>>()?;
        match alphabet {
            Some(k) => Self::new(letters, k),
            None => Self::from_letters(letters),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(u8::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A sequence of nonempty, pairwise disjoint blocks covering `[n]`.
///
/// Elements within each block are kept sorted; block order is significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<u32>>,
    ground: u32,
}

impl OrderedSetPartition {
    pub fn new(mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", i + 1)));
            }
            for &e in b {
                let e = e as usize;
                if e == 0 || e > n {
                    return Err(Error::InvalidPartition(format!("element {e} outside [{n}]")));
                }
                if std::mem::replace(&mut seen[e], true) {
                    return Err(Error::InvalidPartition(format!("element {e} repeated")));
                }
            }
        }
        Ok(Self {
            blocks,
            ground: n as u32,
        })
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn ground_size(&self) -> u32 {
        self.ground
    }

    /// `w(π)`: the word whose `i`-th letter is the index of the block holding `i`.
    pub fn to_word(&self) -> Word {
        let mut letters = vec![0u8; self.ground as usize];
        for (j, b) in self.blocks.iter().enumerate() {
            for &e in b {
                letters[e as usize - 1] = (j + 1) as u8;
            }
        }
        Word {
            letters,
            alphabet: self.blocks.len() as u8,
        }
    }

    /// Inverse of [`to_word`](Self::to_word); the word must use every letter of its alphabet.
    pub fn from_word(w: &Word) -> Result<Self> {
        if !w.is_surjective() {
            return Err(Error::InvalidWord(format!(
                "`{w}` does not use every letter of [{}]",
                w.alphabet
            )));
        }
        let mut blocks = vec![Vec::new(); w.alphabet as usize];
        for (i, &l) in w.letters.iter().enumerate() {
            blocks[l as usize - 1].push(i as u32 + 1);
        }
        Ok(Self {
            blocks,
            ground: w.len() as u32,
        })
    }
}

impl FromStr for OrderedSetPartition {
    type Err = Error;

    /// Slash notation: `2 7/3/1 4 8/5 6`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(Vec::new());
        }
        let blocks = s
            .split('/')
            .map(|b| {
                b.split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad element `{t}`"))))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", parts.join("/"))
    }
}

pub fn word_of_partition(pi: &OrderedSetPartition) -> Word {
    pi.to_word()
}

pub fn partition_of_word(w: &Word) -> Result<OrderedSetPartition> {
    OrderedSetPartition::from_word(w)
}

/// Strict order-isomorphism test between a new value and everything chosen so far.
#[inline]
fn consistent(pattern: &[u8], chosen: &[u32], t: usize, value: u32) -> bool {
    let role = pattern[t];
    chosen.iter().zip(pattern).all(|(&c, &r)| {
        if r < role {
            c < value
        } else {
            c > value
        }
    })
}

/// Occurrence search in a sequence of values; with `fixed_last` the final
/// pattern entry must sit at the last position.
fn sequence_contains(values: &[u8], pattern: &[u8], fixed_last: bool) -> bool {
    fn go(values: &[u8], pattern: &[u8], start: usize, end: usize, chosen: &mut Vec<u32>) -> bool {
        let t = chosen.len();
        if t == pattern.len() {
            return true;
        }
        let remaining = pattern.len() - t;
        if end < start + remaining {
            return false;
        }
        for pos in start..=end - remaining {
            let v = values[pos] as u32;
            if consistent(pattern, chosen, t, v) {
                chosen.push(v);
                if go(values, pattern, pos + 1, end, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    let m = pattern.len();
    if values.len() < m || m == 0 {
        return m == 0;
    }
    let mut chosen = Vec::with_capacity(m);
    if fixed_last {
        let last = values.len() - 1;
        // The last pattern entry is pinned; search its predecessors left of it,
        // checking them against the pinned value as we go.
        let pinned = values[last] as u32;
        let head = &pattern[..m - 1];
        let role = pattern[m - 1];
        fn go_pinned(
            values: &[u8],
            head: &[u8],
            role: u8,
            pinned: u32,
            start: usize,
            end: usize,
            chosen: &mut Vec<u32>,
        ) -> bool {
            let t = chosen.len();
            if t == head.len() {
                return true;
            }
            let remaining = head.len() - t;
            if end < start + remaining {
                return false;
            }
            let below = head[t] < role;
            for pos in start..=end - remaining {
                let v = values[pos] as u32;
                if (below && v < pinned || !below && v > pinned) && consistent(head, chosen, t, v) {
                    chosen.push(v);
                    if go_pinned(values, head, role, pinned, pos + 1, end, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        return go_pinned(values, head, role, pinned, 0, last, &mut chosen);
    }
    go(values, pattern, 0, values.len(), &mut chosen)
}

/// Whether `w` contains `p`: positions `i_1 < ... < i_m` whose letters are
/// pairwise distinct and in the same relative order as `p`.
pub fn word_contains(w: &Word, p: &Permutation) -> bool {
    sequence_contains(&w.letters, &p.0, false)
}

/// Whether some occurrence of `p` in `letters` uses the last position.
pub fn letters_contain_ending_at_last(letters: &[u8], p: &Permutation) -> bool {
    sequence_contains(letters, &p.0, true)
}

/// Block-level containment search over possibly partial blocks.
///
/// With `forced = Some((t, block, element))`, pattern position `t` must be
/// realized by `element` taken from `block` (0-indexed).
fn blocks_contain(blocks: &[Vec<u32>], pattern: &[u8], forced: Option<(usize, usize, u32)>) -> bool {
    fn go(
        blocks: &[Vec<u32>],
        pattern: &[u8],
        forced: Option<(usize, usize, u32)>,
        min_block: usize,
        chosen: &mut Vec<u32>,
    ) -> bool {
        let t = chosen.len();
        if t == pattern.len() {
            return true;
        }
        let remaining = pattern.len() - t;
        if let Some((ft, fb, fe)) = forced {
            if t == ft {
                if fb < min_block || !consistent(pattern, chosen, t, fe) {
                    return false;
                }
                chosen.push(fe);
                let found = go(blocks, pattern, forced, fb + 1, chosen);
                chosen.pop();
                return found;
            }
        }
        // Highest block index usable at position t while leaving room for the rest,
        // and never at or beyond a forced block that is still ahead.
        let mut max_block = blocks.len().saturating_sub(remaining);
        if let Some((ft, fb, _)) = forced {
            if t < ft {
                max_block = max_block.min(fb.saturating_sub(ft - t));
            }
        }
        if blocks.len() < remaining {
            return false;
        }
        for b in min_block..=max_block {
            for &e in &blocks[b] {
                if consistent(pattern, chosen, t, e) {
                    chosen.push(e);
                    if go(blocks, pattern, forced, b + 1, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
        }
        false
    }

    if pattern.is_empty() {
        return true;
    }
    if let Some((ft, fb, _)) = forced {
        // The forced block needs ft blocks before it and the rest after it.
        if fb < ft || blocks.len() - fb < pattern.len() - ft {
            return false;
        }
    }
    go(blocks, pattern, forced, 0, &mut Vec::with_capacity(pattern.len()))
}

/// Whether the ordered partition contains `p`: increasing block indices
/// `i_1 < ... < i_m` and `b_j` in block `i_j` with `b_1 ... b_m` order
/// isomorphic to `p`. Works on the blocks directly, not through the word.
pub fn partition_contains(pi: &OrderedSetPartition, p: &Permutation) -> bool {
    blocks_contain(&pi.blocks, &p.0, None)
}

/// Containment test on a partially built partition of `[e]` (blocks may be
/// empty) restricted to occurrences that use `e`, the largest element,
/// which sits in the 0-indexed block `block_of_max`.
pub fn partial_blocks_contain_using_max(
    blocks: &[Vec<u32>],
    p: &Permutation,
    block_of_max: usize,
    max_element: u32,
) -> bool {
    let m = p.len() as u8;
    let t = p.0.iter().position(|&v| v == m).expect("permutation contains its maximum");
    blocks_contain(blocks, &p.0, Some((t, block_of_max, max_element)))
}
