//! Colored string links as generator words: invariants, canonical forms and
//! the splitting off of one color.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::hbraid::{GeneratorKind, GeneratorLink, Longitudes};
use crate::rcfalg::{basis_for, TruncatedSeries};
use crate::scheme::{all_canonical_sequences, ComponentDecomposition, ComponentId, IndexSequence};
use crate::Int;

/// The canonical sequences of a decomposition with their strand positions.
#[derive(Debug)]
pub struct SequenceTable {
    sequences: Vec<IndexSequence>,
    strands: Vec<Vec<u8>>,
    index: HashMap<IndexSequence, usize>,
    level_start: Vec<usize>,
}

impl SequenceTable {
    fn build(l: &ComponentDecomposition) -> Self {
        let sequences = all_canonical_sequences(l);
        let strands = sequences
            .iter()
            .map(|j| j.entries().iter().map(|&c| l.strand_index(c) as u8).collect())
            .collect();
        let index = sequences.iter().enumerate().map(|(k, j)| (j.clone(), k)).collect();
        let mut level_start = vec![0; l.colors() + 1];
        for k in 1..=l.colors() {
            level_start[k] = sequences.iter().take_while(|j| j.level() < k).count();
        }
        SequenceTable { sequences, strands, index, level_start }
    }

    pub fn sequences(&self) -> &[IndexSequence] {
        &self.sequences
    }

    /// Positions of the sequences of level `k`.
    pub fn level_range(&self, k: usize) -> std::ops::Range<usize> {
        let last = self.level_start.len() - 1;
        if k == 0 || k >= last {
            return self.sequences.len()..self.sequences.len();
        }
        self.level_start[k]..self.level_start[k + 1]
    }
}

pub fn sequence_table(l: &ComponentDecomposition) -> Arc<SequenceTable> {
    static REGISTRY: OnceLock<Mutex<HashMap<Vec<usize>, Arc<SequenceTable>>>> = OnceLock::new();
    let reg = REGISTRY.get_or_init(Default::default);
    let mut guard = reg.lock().expect("sequence registry poisoned");
    guard.entry(l.counts().to_vec()).or_insert_with(|| Arc::new(SequenceTable::build(l))).clone()
}

/// Values of `mu` on every canonical sequence, in canonical order.
#[derive(Clone)]
pub struct InvariantVector<R> {
    ambient: ComponentDecomposition,
    table: Arc<SequenceTable>,
    values: Vec<R>,
}

impl<R: Coefficient> PartialEq for InvariantVector<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.values == other.values
    }
}

impl<R: Coefficient> Eq for InvariantVector<R> {}

impl<R: Coefficient> std::hash::Hash for InvariantVector<R> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.values.hash(state);
    }
}

impl<R: Coefficient> fmt::Debug for InvariantVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter().map(|(j, v)| (j.to_string(), v.to_string()))).finish()
    }
}

impl<R: Coefficient> InvariantVector<R> {
    pub fn zero(l: &ComponentDecomposition) -> Self {
        let table = sequence_table(l);
        let values = vec![R::zero(); table.sequences.len()];
        InvariantVector { ambient: l.clone(), table, values }
    }

    /// Builds a vector from values listed in canonical order.
    pub fn from_values(l: &ComponentDecomposition, values: Vec<R>) -> Result<Self> {
        let table = sequence_table(l);
        if values.len() != table.sequences.len() {
            return Err(Error::InvalidSequence(format!(
                "expected {} values for {l}, got {}",
                table.sequences.len(),
                values.len()
            )));
        }
        Ok(InvariantVector { ambient: l.clone(), table, values })
    }

    pub fn of_longitudes(st: &Longitudes<R>) -> Self {
        let l = st.ambient().clone();
        let table = sequence_table(&l);
        let values = table.strands.iter().map(|j| st.mu_strands(j)).collect();
        InvariantVector { ambient: l, table, values }
    }

    pub fn ambient(&self) -> &ComponentDecomposition {
        &self.ambient
    }

    pub fn sequences(&self) -> &[IndexSequence] {
        &self.table.sequences
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn into_values(self) -> Vec<R> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: &IndexSequence) -> Option<&R> {
        self.table.index.get(j).map(|&k| &self.values[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndexSequence, &R)> {
        self.table.sequences.iter().zip(&self.values)
    }

    /// Coordinates of level `k`.
    pub fn level(&self, k: usize) -> impl Iterator<Item = (&IndexSequence, &R)> {
        let r = self.table.level_range(k);
        self.table.sequences[r.clone()].iter().zip(&self.values[r])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn convert<S: Coefficient>(&self) -> Option<InvariantVector<S>> {
        let values = self.values.iter().map(|v| v.convert::<S>()).collect::<Option<Vec<S>>>()?;
        Some(InvariantVector { ambient: self.ambient.clone(), table: self.table.clone(), values })
    }

    /// The longitude system with these canonical coordinates.
    pub fn longitudes(&self) -> Result<Longitudes<R>> {
        let basis = basis_for(&self.ambient)?;
        let index: HashMap<&[u8], usize> =
            self.table.strands.iter().enumerate().map(|(k, s)| (s.as_slice(), k)).collect();
        Longitudes::from_canonical_in(&basis, |strands| self.values[index[strands]].clone())
    }
}

struct Cached {
    longitudes: Longitudes<Int>,
    invariants: InvariantVector<Int>,
}

/// A word in clasp and clasper generators over a decomposition.
#[derive(Clone)]
pub struct ColoredStringLink {
    ambient: ComponentDecomposition,
    word: Vec<GeneratorLink>,
    cache: OnceLock<Arc<Cached>>,
}

impl PartialEq for ColoredStringLink {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.word == other.word
    }
}

impl Eq for ColoredStringLink {}

impl fmt::Debug for ColoredStringLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredStringLink({}, {self})", self.ambient)
    }
}

impl fmt::Display for ColoredStringLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl ColoredStringLink {
    pub fn new(l: ComponentDecomposition, word: Vec<GeneratorLink>) -> Result<Self> {
        for g in &word {
            g.check(&l)?;
        }
        Ok(ColoredStringLink { ambient: l, word, cache: OnceLock::new() })
    }

    pub fn trivial(l: &ComponentDecomposition) -> Self {
        ColoredStringLink { ambient: l.clone(), word: Vec::new(), cache: OnceLock::new() }
    }

    pub fn ambient(&self) -> &ComponentDecomposition {
        &self.ambient
    }

    pub fn word(&self) -> &[GeneratorLink] {
        &self.word
    }

    fn cached(&self) -> Result<&Cached> {
        if let Some(c) = self.cache.get() {
            return Ok(c);
        }
        let longitudes = Longitudes::of_word_grouped(&self.ambient, &self.word)?;
        let invariants = InvariantVector::of_longitudes(&longitudes);
        // A concurrent fill computes the same values; either one may win.
        let _ = self.cache.set(Arc::new(Cached { longitudes, invariants }));
        Ok(self.cache.get().expect("cache was just filled"))
    }

    pub fn longitudes(&self) -> Result<&Longitudes<Int>> {
        Ok(&self.cached()?.longitudes)
    }

    pub fn invariant_vector(&self) -> Result<&InvariantVector<Int>> {
        Ok(&self.cached()?.invariants)
    }

    /// Longitudes over another coefficient ring, computed afresh.
    pub fn longitudes_in<R: Coefficient>(&self) -> Result<Longitudes<R>> {
        Longitudes::of_word_grouped(&self.ambient, &self.word)
    }

    pub fn invariant_vector_in<R: Coefficient>(&self) -> Result<InvariantVector<R>> {
        Ok(InvariantVector::of_longitudes(&self.longitudes_in::<R>()?))
    }

    pub fn is_cached(&self) -> bool {
        self.cache.get().is_some()
    }
}

fn same_ambient(a: &ComponentDecomposition, b: &ComponentDecomposition) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AmbientMismatch(a.to_string(), b.to_string()))
    }
}

/// Stacking: `a` followed by `b`.
pub fn compose(a: &ColoredStringLink, b: &ColoredStringLink) -> Result<ColoredStringLink> {
    same_ambient(&a.ambient, &b.ambient)?;
    let mut word = a.word.clone();
    word.extend_from_slice(&b.word);
    Ok(ColoredStringLink { ambient: a.ambient.clone(), word, cache: OnceLock::new() })
}

pub fn invert(a: &ColoredStringLink) -> ColoredStringLink {
    let word = a.word.iter().rev().map(GeneratorLink::inverse).collect();
    ColoredStringLink { ambient: a.ambient.clone(), word, cache: OnceLock::new() }
}

pub fn invariant_vector(a: &ColoredStringLink) -> Result<InvariantVector<Int>> {
    a.invariant_vector().cloned()
}

/// The canonical clasper word with the given invariants, and its longitudes.
pub fn canonical_word<R: Coefficient>(target: &InvariantVector<R>) -> Result<(Vec<GeneratorLink>, Longitudes<R>)> {
    let l = target.ambient();
    let basis = basis_for(l)?;
    let mut state = Longitudes::identity_in(&basis);
    let mut word = Vec::new();
    for k in 1..l.colors() {
        let range = target.table.level_range(k);
        let exponents: Vec<R> = range
            .clone()
            .map(|i| {
                let mut x = target.values[i].clone();
                x.sub_ref(&state.mu_strands(&target.table.strands[i]));
                x
            })
            .collect();
        for (i, x) in range.zip(exponents) {
            if x.is_zero() {
                continue;
            }
            let j = &target.table.sequences[i];
            let e = x.to_i64().filter(|e| e.unsigned_abs() <= u32::MAX as u64).ok_or_else(|| {
                Error::InvalidGenerator(format!("exponent {x} of the clasper on {j} is too large to write out"))
            })?;
            let block = Longitudes::clasper_power_in(&basis, j, e)?;
            state = state.compose(&block)?;
            let g = GeneratorLink::clasper(j.clone(), e.signum() as i8)?;
            word.extend(std::iter::repeat_n(g, e.unsigned_abs() as usize));
        }
    }
    Ok((word, state))
}

/// The canonical clasper form: level by level, each `T_J` raised to the
/// difference between the target invariant and that of the prefix so far.
pub fn canonical_form(a: &ColoredStringLink) -> Result<ColoredStringLink> {
    let (word, _) = canonical_word(a.invariant_vector()?)?;
    Ok(ColoredStringLink { ambient: a.ambient.clone(), word, cache: OnceLock::new() })
}

/// The canonical link with a given invariant vector.
pub fn realize(v: &InvariantVector<Int>) -> Result<ColoredStringLink> {
    let (word, _) = canonical_word(v)?;
    Ok(ColoredStringLink { ambient: v.ambient.clone(), word, cache: OnceLock::new() })
}

pub fn cl_homotopic(a: &ColoredStringLink, b: &ColoredStringLink) -> Result<bool> {
    same_ambient(&a.ambient, &b.ambient)?;
    Ok(a.invariant_vector()? == b.invariant_vector()?)
}

/// A link split into the part avoiding one color and the longitudes of that color.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub color: usize,
    pub theta: ColoredStringLink,
    /// Longitudes of the strands of `color`, in strand order, over the full ambient.
    pub tail: Vec<TruncatedSeries<Int>>,
}

/// Strand positions of the decomposition without `color` inside the full one.
fn strand_map(l: &ComponentDecomposition, color: usize) -> Vec<usize> {
    l.components().filter(|c| c.color != color).map(|c| l.strand_index(c)).collect()
}

fn drop_color(c: ComponentId, color: usize) -> ComponentId {
    if c.color > color {
        ComponentId::new(c.color - 1, c.index)
    } else {
        c
    }
}

pub fn decompose(a: &ColoredStringLink, color: usize) -> Result<Decomposition> {
    let l = &a.ambient;
    if color == 0 || color > l.colors() {
        return Err(Error::InvalidDecomposition(format!("no color {color} in {l}")));
    }
    let lt = l.without_color(color)?;
    let mut word = Vec::new();
    for g in &a.word {
        if g.touches_color(color) {
            continue;
        }
        let kind = match &g.kind {
            GeneratorKind::Clasp(c, d) => GeneratorKind::Clasp(drop_color(*c, color), drop_color(*d, color)),
            GeneratorKind::Clasper(j) => {
                GeneratorKind::Clasper(IndexSequence::new(j.entries().iter().map(|&c| drop_color(c, color)).collect())?)
            }
        };
        word.push(GeneratorLink { kind, sign: g.sign });
    }
    let theta = ColoredStringLink::new(lt, word)?;
    let st = a.longitudes()?;
    let tail = (1..=l.count(color)).map(|j| st.series(ComponentId::new(color, j)).clone()).collect();
    Ok(Decomposition { color, theta, tail })
}

/// Rebuilds the canonical link from a decomposition over the ambient `l`.
pub fn reassemble(l: &ComponentDecomposition, d: &Decomposition) -> Result<ColoredStringLink> {
    let state = reassemble_longitudes(l, d)?;
    let (word, _) = canonical_word(&InvariantVector::of_longitudes(&state))?;
    Ok(ColoredStringLink { ambient: l.clone(), word, cache: OnceLock::new() })
}

pub fn reassemble_longitudes(l: &ComponentDecomposition, d: &Decomposition) -> Result<Longitudes<Int>> {
    if d.theta.ambient() != &l.without_color(d.color)? {
        return Err(Error::AmbientMismatch(d.theta.ambient().to_string(), l.to_string()));
    }
    if d.tail.len() != l.count(d.color) {
        return Err(Error::InvalidDecomposition(format!(
            "{} tail longitudes for {} strands of color {}",
            d.tail.len(),
            l.count(d.color),
            d.color
        )));
    }
    let basis = basis_for(l)?;
    let mut state = d.theta.longitudes()?.transport(&basis, &strand_map(l, d.color));
    for (j, lam) in d.tail.iter().enumerate() {
        if lam.ambient() != l {
            return Err(Error::AmbientMismatch(lam.ambient().to_string(), l.to_string()));
        }
        state.replace_longitude(l.strand_index(ComponentId::new(d.color, j + 1)), lam.clone())?;
    }
    Ok(state)
}
