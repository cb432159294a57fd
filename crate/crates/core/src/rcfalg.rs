//! Free words on meridians and the color-squarefree truncated Magnus algebra.
//!
//! A monomial is a word in the variables `X_c` whose colors are pairwise
//! distinct; every other monomial is zero. The algebra is finite dimensional
//! and its monomials are enumerated once per decomposition into a
//! [`MonomialBasis`], so series are dense coefficient vectors.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::scheme::{ComponentDecomposition, ComponentId};

/// A meridian generator `x_c`, or its barred copy `x̄_c` in the doubled setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSymbol {
    pub component: ComponentId,
    pub barred: bool,
}

impl GeneratorSymbol {
    pub const fn plain(component: ComponentId) -> Self {
        GeneratorSymbol { component, barred: false }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bar = if self.barred { "~" } else { "" };
        write!(f, "{bar}x{}", self.component)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub symbol: GeneratorSymbol,
    /// +1 or -1.
    pub exponent: i8,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter { symbol: self.symbol, exponent: -self.exponent }
    }
}

/// A freely reduced word in the meridian generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(c: ComponentId) -> Self {
        Self::letter(GeneratorSymbol::plain(c), 1)
    }

    pub fn letter(symbol: GeneratorSymbol, exponent: i8) -> Self {
        assert!(exponent == 1 || exponent == -1, "letter exponent must be +1 or -1");
        FreeWord { letters: vec![Letter { symbol, exponent }] }
    }

    /// Builds a word from letters, reducing it freely.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        assert!(l.exponent == 1 || l.exponent == -1, "letter exponent must be +1 or -1");
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Replaces every generator by its image and reduces.
    pub fn substitute(&self, mut image: impl FnMut(GeneratorSymbol) -> FreeWord) -> Self {
        let mut w = FreeWord::identity();
        for l in &self.letters {
            let img = image(l.symbol);
            let img = if l.exponent < 0 { img.inverse() } else { img };
            w = w.mul(&img);
        }
        w
    }

    pub fn check(&self, l: &ComponentDecomposition) -> Result<()> {
        self.letters.iter().try_for_each(|x| l.check(x.symbol.component))
    }

    /// Sum of the exponents of the letters on component `c`.
    pub fn exponent_sum(&self, c: ComponentId) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.symbol.component == c && !l.symbol.barred)
            .map(|l| l.exponent as i64)
            .sum()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.symbol)?;
            if l.exponent < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// `by * w * by^-1`.
pub fn conjugate(w: &FreeWord, by: &FreeWord) -> FreeWord {
    by.mul(w).mul(&by.inverse())
}

/// `a b a^-1 b^-1`.
pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
    a.mul(b).mul(&a.inverse()).mul(&b.inverse())
}

/// `[[...[s1, s2], ...], sk]`; a single symbol gives the generator itself.
pub fn left_normed_commutator(symbols: &[GeneratorSymbol]) -> FreeWord {
    let mut it = symbols.iter();
    let mut w = match it.next() {
        Some(&s) => FreeWord::letter(s, 1),
        None => return FreeWord::identity(),
    };
    for &s in it {
        w = commutator(&w, &FreeWord::letter(s, 1));
    }
    w
}

/// A color-squarefree monomial `X_{c_1} ... X_{c_k}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub variables: Vec<ComponentId>,
}

impl Monomial {
    pub fn new(variables: Vec<ComponentId>) -> Self {
        Monomial { variables }
    }

    pub fn one() -> Self {
        Monomial { variables: Vec::new() }
    }

    pub fn is_color_squarefree(&self) -> bool {
        let v = &self.variables;
        (0..v.len()).all(|a| v[..a].iter().all(|y| y.color != v[a].color))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.variables.is_empty() {
            return write!(f, "1");
        }
        for c in &self.variables {
            write!(f, "X{c}")?;
        }
        Ok(())
    }
}

const NONE: u32 = u32::MAX;

/// Largest algebra the basis builder will enumerate.
pub const MAX_BASIS_SIZE: usize = 400_000;

/// All color-squarefree monomials of a decomposition, with multiplication tables.
///
/// Monomials are ordered by length, then lexicographically on strand
/// positions, so every prefix precedes its extensions.
pub struct MonomialBasis {
    ambient: ComponentDecomposition,
    words: Vec<Box<[u8]>>,
    index: HashMap<Box<[u8]>, u32>,
    strand_mask: Vec<u64>,
    color_mask: Vec<u64>,
    strand_color: Vec<u8>,
    // append[w * n + s] is the index of w X_s, or NONE.
    append: Vec<u32>,
    prepend: Vec<u32>,
    // products[a] lists (b, ab) for every b with ab nonzero.
    products: Vec<Vec<(u32, u32)>>,
    by_support: HashMap<u64, Vec<u32>>,
    parent: Vec<u32>,
    subsets: Vec<u64>,
}

impl fmt::Debug for MonomialBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialBasis({}, {} monomials)", self.ambient, self.words.len())
    }
}

/// Number of color-squarefree monomials: `sum_k k! e_k(l_1, ..., l_m)`.
pub fn algebra_dimension(l: &ComponentDecomposition) -> u128 {
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
    for (k, e) in elem.iter().enumerate() {
        if k > 0 {
            fact *= k as u128;
        }
        total += fact * e;
    }
    total
}

impl MonomialBasis {
    fn build(l: &ComponentDecomposition) -> Result<Self> {
        let n = l.strands();
        let dim = algebra_dimension(l);
        if n > 64 || dim > MAX_BASIS_SIZE as u128 {
            return Err(Error::TooLarge(l.to_string(), dim.min(usize::MAX as u128) as usize));
        }
        let strand_color: Vec<u8> = (0..n).map(|s| (l.color_of(s) - 1) as u8).collect();
        let mut words: Vec<Box<[u8]>> = vec![Box::new([])];
        let mut color_mask = vec![0u64];
        let mut strand_mask = vec![0u64];
        let mut start = 0;
        loop {
            let end = words.len();
            for w in start..end {
                for s in 0..n {
                    if color_mask[w] >> strand_color[s] & 1 == 1 {
                        continue;
                    }
                    let mut nw = words[w].to_vec();
                    nw.push(s as u8);
                    color_mask.push(color_mask[w] | 1 << strand_color[s]);
                    strand_mask.push(strand_mask[w] | 1 << s);
                    words.push(nw.into_boxed_slice());
                }
            }
            if words.len() == end {
                break;
            }
            start = end;
        }
        let index: HashMap<Box<[u8]>, u32> =
            words.iter().enumerate().map(|(k, w)| (w.clone(), k as u32)).collect();
        let d = words.len();
        let mut append = vec![NONE; d * n];
        let mut prepend = vec![NONE; d * n];
        let mut products = vec![Vec::new(); d];
        let mut by_support: HashMap<u64, Vec<u32>> = HashMap::new();
        let mut buf = Vec::with_capacity(l.colors() + 1);
        let mut parent = vec![NONE; d];
        for (k, w) in words.iter().enumerate() {
            if !w.is_empty() {
                parent[k] = index[&w[..w.len() - 1]];
            }
            by_support.entry(strand_mask[k]).or_default().push(k as u32);
            for s in 0..n {
                if color_mask[k] >> strand_color[s] & 1 == 1 {
                    continue;
                }
                buf.clear();
                buf.extend_from_slice(w);
                buf.push(s as u8);
                append[k * n + s] = index[&buf[..]];
                buf.clear();
                buf.push(s as u8);
                buf.extend_from_slice(w);
                prepend[k * n + s] = index[&buf[..]];
            }
            for t in 0..=w.len() {
                let a = index[&w[..t]];
                let b = index[&w[t..]];
                products[a as usize].push((b, k as u32));
            }
        }
        Ok(MonomialBasis {
            ambient: l.clone(),
            words,
            index,
            strand_mask,
            color_mask,
            strand_color,
            append,
            prepend,
            products,
            by_support,
            parent,
            subsets: crate::scheme::distinct_color_subsets(l, 2),
        })
    }

    pub fn ambient(&self) -> &ComponentDecomposition {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn strands(&self) -> usize {
        self.strand_color.len()
    }

    /// Strand positions of the monomial with index `k`.
    pub fn word(&self, k: usize) -> &[u8] {
        &self.words[k]
    }

    pub fn index_of(&self, word: &[u8]) -> Option<usize> {
        self.index.get(word).map(|&k| k as usize)
    }

    pub fn strand_mask(&self, k: usize) -> u64 {
        self.strand_mask[k]
    }

    pub fn color_mask(&self, k: usize) -> u64 {
        self.color_mask[k]
    }

    /// 0-based color of a strand position.
    pub fn strand_color(&self, s: usize) -> usize {
        self.strand_color[s] as usize
    }

    pub fn append(&self, k: usize, s: usize) -> Option<usize> {
        let v = self.append[k * self.strands() + s];
        (v != NONE).then_some(v as usize)
    }

    pub fn prepend(&self, k: usize, s: usize) -> Option<usize> {
        let v = self.prepend[k * self.strands() + s];
        (v != NONE).then_some(v as usize)
    }

    /// Monomials whose set of strands is exactly `mask`.
    pub fn with_support(&self, mask: u64) -> &[u32] {
        self.by_support.get(&mask).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Index of the monomial with its last variable removed.
    pub fn parent(&self, k: usize) -> Option<usize> {
        let p = self.parent[k];
        (p != NONE).then_some(p as usize)
    }

    /// Strand subsets with distinct colors and at least two members, by size.
    pub fn subsets(&self) -> &[u64] {
        &self.subsets
    }

    pub fn monomial(&self, k: usize) -> Monomial {
        Monomial::new(self.words[k].iter().map(|&s| self.ambient.component(s as usize)).collect())
    }

    pub fn monomial_index(&self, m: &Monomial) -> Result<usize> {
        let mut buf = Vec::with_capacity(m.variables.len());
        for &c in &m.variables {
            self.ambient.check(c)?;
            buf.push(self.ambient.strand_index(c) as u8);
        }
        self.index_of(&buf).ok_or_else(|| {
            Error::InvalidSequence(format!("monomial {m} repeats a color"))
        })
    }
}

/// The shared basis of a decomposition, built on first use.
pub fn basis_for(l: &ComponentDecomposition) -> Result<Arc<MonomialBasis>> {
    static REGISTRY: OnceLock<Mutex<HashMap<Vec<usize>, Arc<MonomialBasis>>>> = OnceLock::new();
    let reg = REGISTRY.get_or_init(Default::default);
    if let Some(b) = reg.lock().expect("basis registry poisoned").get(l.counts()) {
        return Ok(b.clone());
    }
    let built = Arc::new(MonomialBasis::build(l)?);
    let mut guard = reg.lock().expect("basis registry poisoned");
    Ok(guard.entry(l.counts().to_vec()).or_insert(built).clone())
}

/// An element of the truncated algebra, stored densely over its basis.
#[derive(Clone)]
pub struct TruncatedSeries<R> {
    basis: Arc<MonomialBasis>,
    coeffs: Vec<R>,
}

impl<R: Coefficient> PartialEq for TruncatedSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.basis.ambient == other.basis.ambient && self.coeffs == other.coeffs
    }
}

impl<R: Coefficient> Eq for TruncatedSeries<R> {}

impl<R: Coefficient> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Coefficient> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", self.basis.monomial(k))?;
            } else {
                write!(f, "{abs}{}", self.basis.monomial(k))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<R: Coefficient> TruncatedSeries<R> {
    pub fn zero(basis: &Arc<MonomialBasis>) -> Self {
        TruncatedSeries { basis: basis.clone(), coeffs: vec![R::zero(); basis.len()] }
    }

    pub fn one(basis: &Arc<MonomialBasis>) -> Self {
        let mut s = Self::zero(basis);
        s.coeffs[0] = R::one();
        s
    }

    /// `1 + X_s` for the strand at position `s`.
    pub fn meridian(basis: &Arc<MonomialBasis>, s: usize) -> Self {
        let mut v = Self::one(basis);
        v.coeffs[basis.append(0, s).expect("strand out of range")] = R::one();
        v
    }

    /// `X_s` for the strand at position `s`.
    pub fn variable(basis: &Arc<MonomialBasis>, s: usize) -> Self {
        let mut v = Self::zero(basis);
        v.coeffs[basis.append(0, s).expect("strand out of range")] = R::one();
        v
    }

    pub fn from_terms(
        basis: &Arc<MonomialBasis>,
        terms: impl IntoIterator<Item = (Monomial, R)>,
    ) -> Result<Self> {
        let mut s = Self::zero(basis);
        for (m, c) in terms {
            let k = basis.monomial_index(&m)?;
            s.coeffs[k].add_ref(&c);
        }
        Ok(s)
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn ambient(&self) -> &ComponentDecomposition {
        &self.basis.ambient
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [R] {
        &mut self.coeffs
    }

    pub fn coeff(&self, m: &Monomial) -> Result<R> {
        Ok(self.coeffs[self.basis.monomial_index(m)?].clone())
    }

    pub fn get(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn set(&mut self, k: usize, v: R) {
        self.coeffs[k] = v;
    }

    pub fn constant(&self) -> &R {
        &self.coeffs[0]
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &R)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.basis.monomial(k), c))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &other.basis) || self.basis.ambient == other.basis.ambient {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(self.ambient().to_string(), other.ambient().to_string()))
        }
    }

    /// Product in the truncated algebra. Panics if the ambients differ; see [`series_mul`].
    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.same_ambient(other).is_ok(), "series over different decompositions");
        let mut out = vec![R::zero(); self.coeffs.len()];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for &(b, ab) in &self.basis.products[a] {
                let cb = &other.coeffs[b as usize];
                if !cb.is_zero() {
                    out[ab as usize].add_product(ca, cb);
                }
            }
        }
        TruncatedSeries { basis: self.basis.clone(), coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                a.add_ref(b);
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                a.sub_ref(b);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, k: &R) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(k).expect("coefficient overflow in scaling"))
            .collect();
        TruncatedSeries { basis: self.basis.clone(), coeffs }
    }

    /// Two-sided inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotInvertible(self.coeffs[0].to_string()));
        }
        // (1 + N)^-1 = 1 - N + N^2 - ..., N nilpotent of order at most m + 1.
        let mut n = self.clone();
        n.coeffs[0] = R::zero();
        let neg_n = n.neg();
        let mut term = Self::one(&self.basis);
        let mut acc = Self::one(&self.basis);
        for _ in 0..self.ambient().colors() {
            term = term.mul(&neg_n);
            if term.coeffs.iter().all(Zero::is_zero) {
                break;
            }
            acc.add_assign(&term);
        }
        Ok(acc)
    }

    /// Integer power of a series with constant term 1.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(&self.basis);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Right multiplication by `(1 + X_s)^sign`, in place.
    pub fn mul_meridian_right(&mut self, s: usize, sign: i8) {
        // (1 + X)^-1 = 1 - X in the truncation since X_s X_s vanishes.
        let b = self.basis.clone();
        let n = b.strands();
        for k in 0..self.coeffs.len() {
            let t = b.append[k * n + s];
            if t == NONE || self.coeffs[k].is_zero() {
                continue;
            }
            let c = self.coeffs[k].clone();
            if sign > 0 {
                self.coeffs[t as usize].add_ref(&c);
            } else {
                self.coeffs[t as usize].sub_ref(&c);
            }
        }
    }

    /// Left multiplication by `(1 + X_s)^sign`, in place.
    pub fn mul_meridian_left(&mut self, s: usize, sign: i8) {
        let b = self.basis.clone();
        let n = b.strands();
        for k in 0..self.coeffs.len() {
            let t = b.prepend[k * n + s];
            if t == NONE || self.coeffs[k].is_zero() {
                continue;
            }
            let c = self.coeffs[k].clone();
            if sign > 0 {
                self.coeffs[t as usize].add_ref(&c);
            } else {
                self.coeffs[t as usize].sub_ref(&c);
            }
        }
    }

    /// Sets to zero every monomial involving the 1-based `color`.
    pub fn project_color(&self, color: usize) -> Self {
        let mut out = self.clone();
        out.project_color_mut(color);
        out
    }

    pub fn project_color_mut(&mut self, color: usize) {
        let bit = 1u64 << (color - 1);
        for (k, c) in self.coeffs.iter_mut().enumerate() {
            if self.basis.color_mask[k] & bit != 0 && !c.is_zero() {
                *c = R::zero();
            }
        }
    }

    /// Keeps only monomials whose strands lie in `mask`.
    pub fn restrict(&self, mask: u64) -> Self {
        let mut out = self.clone();
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            if self.basis.strand_mask[k] & !mask != 0 && !c.is_zero() {
                *c = R::zero();
            }
        }
        out
    }

    /// Changes the coefficient ring; `None` if a coefficient does not fit.
    pub fn convert<S: Coefficient>(&self) -> Option<TruncatedSeries<S>> {
        let coeffs = self.coeffs.iter().map(|c| c.convert::<S>()).collect::<Option<Vec<S>>>()?;
        Some(TruncatedSeries { basis: self.basis.clone(), coeffs })
    }

    /// Maps the series into a larger ambient through an injective strand map.
    pub fn transport(&self, target: &Arc<MonomialBasis>, strand_map: &[usize]) -> Self {
        let mut out = TruncatedSeries::zero(target);
        let mut buf = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            buf.clear();
            buf.extend(self.basis.words[k].iter().map(|&s| strand_map[s as usize] as u8));
            let t = target.index_of(&buf).expect("strand map does not preserve colors");
            out.coeffs[t] = c.clone();
        }
        out
    }
}


/// Image of a free word under `x -> 1 + X`.
pub fn magnus_expand<R: Coefficient>(w: &FreeWord, l: &ComponentDecomposition) -> Result<TruncatedSeries<R>> {
    w.check(l)?;
    if let Some(x) = w.letters().iter().find(|x| x.symbol.barred) {
        return Err(Error::InvalidGenerator(format!(
            "barred generator {} has no expansion over {l}",
            x.symbol
        )));
    }
    let basis = basis_for(l)?;
    Ok(magnus_in(w, &basis))
}

pub(crate) fn magnus_in<R: Coefficient>(w: &FreeWord, basis: &Arc<MonomialBasis>) -> TruncatedSeries<R> {
    let l = basis.ambient();
    let mut s = TruncatedSeries::one(basis);
    for x in w.letters() {
        s.mul_meridian_right(l.strand_index(x.symbol.component), x.exponent);
    }
    s
}

pub fn series_mul<R: Coefficient>(a: &TruncatedSeries<R>, b: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
    a.same_ambient(b)?;
    Ok(a.mul(b))
}

pub fn series_inverse<R: Coefficient>(a: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
    a.inverse()
}

/// Equality in the reduced colored free group, decided on truncated expansions.
pub fn rcf_equal(u: &FreeWord, v: &FreeWord, l: &ComponentDecomposition) -> Result<bool> {
    let a: TruncatedSeries<crate::Int> = magnus_expand(u, l)?;
    let b: TruncatedSeries<crate::Int> = magnus_expand(v, l)?;
    Ok(a == b)
}
