//! Component decompositions, component identifiers and invariant index sequences.

use std::fmt;

use crate::error::{Error, Result};

/// A component `(i, j)`: strand `j` of color `i`, both 1-based.
///
/// Ordering is lexicographic on `(color, index)`, which is the global strand order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId {
    pub color: usize,
    pub index: usize,
}

impl ComponentId {
    pub const fn new(color: usize, index: usize) -> Self {
        ComponentId { color, index }
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.color, self.index)
    }
}

/// Per-color strand counts `(l_1, ..., l_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentDecomposition {
    counts: Vec<usize>,
    offsets: Vec<usize>,
}

impl ComponentDecomposition {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidDecomposition("at least one color is required".into()));
        }
        if let Some(pos) = counts.iter().position(|&l| l == 0) {
            return Err(Error::InvalidDecomposition(format!("color {} has no strands", pos + 1)));
        }
        let mut offsets = Vec::with_capacity(counts.len());
        let mut acc = 0;
        for &l in &counts {
            offsets.push(acc);
            acc += l;
        }
        Ok(ComponentDecomposition { counts, offsets })
    }

    /// The decomposition with one strand per color.
    pub fn all_ones(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of colors `m`.
    pub fn colors(&self) -> usize {
        self.counts.len()
    }

    /// Total number of strands `n`.
    pub fn strands(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn count(&self, color: usize) -> usize {
        self.counts[color - 1]
    }

    pub fn contains(&self, c: ComponentId) -> bool {
        c.color >= 1 && c.color <= self.counts.len() && c.index >= 1 && c.index <= self.counts[c.color - 1]
    }

    pub fn check(&self, c: ComponentId) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::ComponentOutOfRange(c, self.to_string()))
        }
    }

    /// Position of `c` in the global strand order, 0-based.
    pub fn strand_index(&self, c: ComponentId) -> usize {
        debug_assert!(self.contains(c));
        self.offsets[c.color - 1] + c.index - 1
    }

    pub fn component(&self, strand: usize) -> ComponentId {
        let color = self.offsets.partition_point(|&o| o <= strand);
        ComponentId::new(color, strand - self.offsets[color - 1] + 1)
    }

    /// Color (1-based) of the strand at global position `strand`.
    pub fn color_of(&self, strand: usize) -> usize {
        self.offsets.partition_point(|&o| o <= strand)
    }

    pub fn components(&self) -> impl Iterator<Item = ComponentId> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (1..=l).map(move |j| ComponentId::new(i + 1, j)))
    }

    /// The decomposition with `color` deleted and later colors shifted down.
    pub fn without_color(&self, color: usize) -> Result<Self> {
        let mut counts = self.counts.clone();
        counts.remove(color - 1);
        Self::new(counts)
    }
}

impl fmt::Display for ComponentDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.counts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// A sequence of components with pairwise distinct colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSequence {
    entries: Vec<ComponentId>,
}

impl IndexSequence {
    pub fn new(entries: Vec<ComponentId>) -> Result<Self> {
        for (a, x) in entries.iter().enumerate() {
            if entries[..a].iter().any(|y| y.color == x.color) {
                return Err(Error::InvalidSequence(format!(
                    "color {} repeats in {}",
                    x.color,
                    fmt_entries(&entries)
                )));
            }
        }
        Ok(IndexSequence { entries })
    }

    pub fn entries(&self) -> &[ComponentId] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Level of the sequence: its length minus one.
    pub fn level(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn last(&self) -> ComponentId {
        *self.entries.last().expect("empty index sequence")
    }

    pub fn check(&self, l: &ComponentDecomposition) -> Result<()> {
        self.entries.iter().try_for_each(|&c| l.check(c))
    }

    /// Whether the sequence lies in the canonical family of its level:
    /// the first entry is the smallest, the last entry the largest.
    pub fn is_canonical(&self) -> bool {
        let e = &self.entries;
        if e.len() < 2 {
            return false;
        }
        let (first, last) = (e[0], e[e.len() - 1]);
        first < last && e[1..e.len() - 1].iter().all(|&x| first < x && x < last)
    }
}

impl fmt::Display for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_entries(&self.entries))
    }
}

fn fmt_entries(entries: &[ComponentId]) -> String {
    entries.iter().map(ToString::to_string).collect()
}

/// Strand subsets (as bitmasks over global strand positions) with pairwise
/// distinct colors, of size at least `min_size`, ordered by size and then by mask.
pub fn distinct_color_subsets(l: &ComponentDecomposition, min_size: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64, 0usize)];
    // Depth-first over colors: pick at most one strand per color.
    while let Some((color, mask, size)) = stack.pop() {
        if color == l.colors() {
            if size >= min_size {
                out.push(mask);
            }
            continue;
        }
        stack.push((color + 1, mask, size));
        for j in 0..l.counts[color] {
            stack.push((color + 1, mask | 1 << (l.offsets[color] + j), size + 1));
        }
    }
    out.sort_by_key(|&m| (m.count_ones(), m));
    out
}

/// The canonical sequences of level `k` (length `k + 1`), in lexicographic order.
pub fn enumerate_canonical_sequences(l: &ComponentDecomposition, k: usize) -> Vec<IndexSequence> {
    let mut out = Vec::new();
    if k == 0 || k + 1 > l.colors() {
        return out;
    }
    for mask in distinct_color_subsets(l, k + 1) {
        if mask.count_ones() as usize != k + 1 {
            continue;
        }
        let members: Vec<ComponentId> = (0..l.strands())
            .filter(|s| mask >> s & 1 == 1)
            .map(|s| l.component(s))
            .collect();
        let first = members[0];
        let last = members[k];
        let mut interior = members[1..k].to_vec();
        for_each_permutation(&mut interior, &mut |perm| {
            let mut entries = Vec::with_capacity(k + 1);
            entries.push(first);
            entries.extend_from_slice(perm);
            entries.push(last);
            out.push(IndexSequence { entries });
        });
    }
    out.sort();
    out
}

/// Every canonical sequence over all levels, level by level.
pub fn all_canonical_sequences(l: &ComponentDecomposition) -> Vec<IndexSequence> {
    (1..l.colors())
        .flat_map(|k| enumerate_canonical_sequences(l, k))
        .collect()
}

/// Number of canonical sequences over all levels.
pub fn invariant_count(l: &ComponentDecomposition) -> u128 {
    // A subset of d distinct-color strands carries (d - 2)! canonical sequences.
    let m = l.colors();
    let mut elem = vec![0u128; m + 1];
    elem[0] = 1;
    for &c in l.counts() {
        for d in (1..=m).rev() {
            elem[d] += elem[d - 1] * c as u128;
        }
    }
    let mut total = 0u128;
    let mut fact = 1u128;
    for (d, e) in elem.iter().enumerate().skip(2) {
        if d > 2 {
            fact *= (d - 2) as u128;
        }
        total += fact * e;
    }
    total
}

/// Number of canonical sequences of level `k`.
pub fn level_count(l: &ComponentDecomposition, k: usize) -> u128 {
    enumerate_canonical_sequences(l, k).len() as u128
}

fn for_each_permutation<T: Copy>(items: &mut [T], f: &mut impl FnMut(&[T])) {
    fn rec<T: Copy>(items: &mut [T], at: usize, f: &mut impl FnMut(&[T])) {
        if at == items.len() {
            f(items);
            return;
        }
        for i in at..items.len() {
            items.swap(at, i);
            rec(items, at + 1, f);
            items.swap(at, i);
        }
    }
    rec(items, 0, f)
}
