//! Clasp and clasper generators, their conjugating automorphisms, and
//! longitude systems.

mod assembly;

use std::fmt;
use std::sync::Arc;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::rcfalg::{
    basis_for, left_normed_commutator, magnus_in, rcf_equal, FreeWord, GeneratorSymbol,
    MonomialBasis, TruncatedSeries,
};
use crate::scheme::{ComponentDecomposition, ComponentId, IndexSequence};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    /// A clasp between two strands, stored with `c < d`.
    Clasp(ComponentId, ComponentId),
    /// The clasper `T_J` for a canonical sequence of level at least 2.
    Clasper(IndexSequence),
}

/// A generator string link or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorLink {
    pub kind: GeneratorKind,
    pub sign: i8,
}

impl GeneratorLink {
    pub fn clasp(c: ComponentId, d: ComponentId, sign: i8) -> Result<Self> {
        check_sign(sign)?;
        if c == d {
            return Err(Error::InvalidGenerator(format!("clasp of {c} with itself")));
        }
        let (c, d) = if c < d { (c, d) } else { (d, c) };
        Ok(GeneratorLink { kind: GeneratorKind::Clasp(c, d), sign })
    }

    /// The clasper `T_J^sign`; a level-1 sequence yields the equivalent clasp.
    pub fn clasper(j: IndexSequence, sign: i8) -> Result<Self> {
        check_sign(sign)?;
        if !j.is_canonical() {
            return Err(Error::InvalidGenerator(format!(
                "clasper sequence {j} must start with its smallest and end with its largest entry"
            )));
        }
        if j.len() == 2 {
            let e = j.entries();
            return Self::clasp(e[0], e[1], sign);
        }
        Ok(GeneratorLink { kind: GeneratorKind::Clasper(j), sign })
    }

    pub fn inverse(&self) -> Self {
        GeneratorLink { kind: self.kind.clone(), sign: -self.sign }
    }

    pub fn check(&self, l: &ComponentDecomposition) -> Result<()> {
        match &self.kind {
            GeneratorKind::Clasp(c, d) => {
                l.check(*c)?;
                l.check(*d)
            }
            GeneratorKind::Clasper(j) => j.check(l),
        }
    }

    /// Whether two strands of one color are involved; such generators are trivial.
    pub fn is_same_color(&self) -> bool {
        match &self.kind {
            GeneratorKind::Clasp(c, d) => c.color == d.color,
            GeneratorKind::Clasper(_) => false,
        }
    }

    pub fn touches_color(&self, color: usize) -> bool {
        match &self.kind {
            GeneratorKind::Clasp(c, d) => c.color == color || d.color == color,
            GeneratorKind::Clasper(j) => j.entries().iter().any(|x| x.color == color),
        }
    }

    /// Equivalent clasp word: claspers are expanded through [`clasper_clasp_word`].
    pub fn clasps(&self) -> Vec<(ComponentId, ComponentId, i8)> {
        match &self.kind {
            GeneratorKind::Clasp(c, d) => vec![(*c, *d, self.sign)],
            GeneratorKind::Clasper(j) => clasper_clasp_word(j, self.sign),
        }
    }
}

impl fmt::Display for GeneratorLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GeneratorKind::Clasp(c, d) => write!(f, "a({c},{d})")?,
            GeneratorKind::Clasper(j) => {
                write!(f, "t(")?;
                for (k, x) in j.entries().iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")?;
            }
        }
        if self.sign < 0 {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

fn check_sign(sign: i8) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::InvalidGenerator(format!("sign must be +1 or -1, got {sign}")))
    }
}

/// The commutator `b_J = [[x_{J_0}, x_{J_1}], ..., x_{J_{k-1}}]`.
pub fn clasper_commutator(j: &IndexSequence) -> FreeWord {
    let e = j.entries();
    let syms: Vec<_> = e[..e.len() - 1].iter().map(|&c| GeneratorSymbol::plain(c)).collect();
    left_normed_commutator(&syms)
}

/// The longitude insertion of `T_J^sign`: the last strand of `J` and the
/// factor `b_J^sign` its longitude is multiplied by.
pub fn clasper_longitude(j: &IndexSequence, sign: i8) -> Result<(ComponentId, FreeWord)> {
    check_sign(sign)?;
    if !j.is_canonical() || j.len() < 3 {
        return Err(Error::InvalidGenerator(format!("{j} is not a canonical sequence of level 2 or more")));
    }
    Ok((j.last(), clasper_commutator(j).pow(sign as i64)))
}

/// A clasp word realizing `T_J^sign`: one clasp with the last strand of `J`
/// for each letter of `b_J^sign`, read right to left.
pub fn clasper_clasp_word(j: &IndexSequence, sign: i8) -> Vec<(ComponentId, ComponentId, i8)> {
    let last = j.last();
    let b = clasper_commutator(j).pow(sign as i64);
    b.letters().iter().rev().map(|x| (x.symbol.component, last, x.exponent)).collect()
}

/// Action of a string link on the meridians: `x_c -> w_c x_c w_c^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugatingAutomorphism {
    ambient: ComponentDecomposition,
    conjugators: Vec<FreeWord>,
}

impl ConjugatingAutomorphism {
    pub fn identity(l: &ComponentDecomposition) -> Self {
        ConjugatingAutomorphism { ambient: l.clone(), conjugators: vec![FreeWord::identity(); l.strands()] }
    }

    pub fn ambient(&self) -> &ComponentDecomposition {
        &self.ambient
    }

    pub fn conjugator(&self, c: ComponentId) -> &FreeWord {
        &self.conjugators[self.ambient.strand_index(c)]
    }

    pub fn image(&self, c: ComponentId) -> FreeWord {
        crate::rcfalg::conjugate(&FreeWord::generator(c), self.conjugator(c))
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(|s| self.image(s.component))
    }

    /// Images of the ordered product of all meridians agree with the product itself.
    pub fn preserves_boundary(&self) -> Result<bool> {
        let full = self
            .ambient
            .components()
            .fold(FreeWord::identity(), |w, c| w.mul(&FreeWord::generator(c)));
        rcf_equal(&self.apply(&full), &full, &self.ambient)
    }

    /// Equality of the two actions on every meridian, in the reduced colored free group.
    pub fn rcf_eq(&self, other: &Self) -> Result<bool> {
        same_ambient(&self.ambient, &other.ambient)?;
        for c in self.ambient.components() {
            if !rcf_equal(&self.image(c), &other.image(c), &self.ambient)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_identity(&self) -> Result<bool> {
        self.rcf_eq(&Self::identity(&self.ambient))
    }

    /// Longitude of every strand: its conjugator with own-color variables removed.
    pub fn longitudes<R: Coefficient>(&self) -> Result<Longitudes<R>> {
        let basis = basis_for(&self.ambient)?;
        let series = self
            .conjugators
            .iter()
            .enumerate()
            .map(|(s, w)| magnus_in::<R>(w, &basis).project_color(self.ambient.color_of(s)))
            .collect();
        Ok(Longitudes { basis, series })
    }
}

fn same_ambient(a: &ComponentDecomposition, b: &ComponentDecomposition) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AmbientMismatch(a.to_string(), b.to_string()))
    }
}

/// Local conjugators of the clasp between strand positions `c < d`, as
/// `(strand, word)` pairs over strand positions with exponents.
fn clasp_local(c: usize, d: usize, sign: i8) -> Vec<(usize, Vec<(usize, i8)>)> {
    let mut out = Vec::with_capacity(d - c + 1);
    if sign > 0 {
        out.push((c, vec![(c, 1), (d, 1)]));
        out.push((d, vec![(c, 1)]));
        for r in c + 1..d {
            out.push((r, vec![(c, 1), (d, 1), (c, -1), (d, -1)]));
        }
    } else {
        out.push((c, vec![(d, -1)]));
        out.push((d, vec![(d, -1), (c, -1)]));
        for r in c + 1..d {
            out.push((r, vec![(d, -1), (c, -1), (d, 1), (c, 1)]));
        }
    }
    out
}

/// The automorphism of the clasp between `c` and `d`; `sign = -1` gives its inverse.
pub fn clasp_automorphism(
    l: &ComponentDecomposition,
    c: ComponentId,
    d: ComponentId,
    sign: i8,
) -> Result<ConjugatingAutomorphism> {
    let g = GeneratorLink::clasp(c, d, sign)?;
    g.check(l)?;
    let GeneratorKind::Clasp(c, d) = g.kind else { unreachable!() };
    let mut phi = ConjugatingAutomorphism::identity(l);
    for (q, word) in clasp_local(l.strand_index(c), l.strand_index(d), sign) {
        phi.conjugators[q] = word_from_positions(l, &word);
    }
    Ok(phi)
}

fn word_from_positions(l: &ComponentDecomposition, w: &[(usize, i8)]) -> FreeWord {
    w.iter().fold(FreeWord::identity(), |acc, &(s, e)| {
        acc.mul(&FreeWord::letter(GeneratorSymbol::plain(l.component(s)), e))
    })
}

/// `phi` followed by `psi`: conjugators `phi(w'_c) w_c`.
pub fn compose(phi: &ConjugatingAutomorphism, psi: &ConjugatingAutomorphism) -> Result<ConjugatingAutomorphism> {
    same_ambient(&phi.ambient, &psi.ambient)?;
    let conjugators = phi
        .conjugators
        .iter()
        .zip(&psi.conjugators)
        .map(|(w, w2)| phi.apply(w2).mul(w))
        .collect();
    Ok(ConjugatingAutomorphism { ambient: phi.ambient.clone(), conjugators })
}

/// The automorphism of a generator word, by composing generator automorphisms.
pub fn word_automorphism(l: &ComponentDecomposition, word: &[GeneratorLink]) -> Result<ConjugatingAutomorphism> {
    let mut phi = ConjugatingAutomorphism::identity(l);
    for g in word {
        g.check(l)?;
        for (c, d, s) in g.clasps() {
            phi = compose(&phi, &clasp_automorphism(l, c, d, s)?)?;
        }
    }
    Ok(phi)
}

/// Longitudes of every strand in the truncated algebra, own color removed.
///
/// The data determine the conjugating action up to the reduced relations, so
/// they also serve as the state for composition and partial conjugation.
#[derive(Clone)]
pub struct Longitudes<R> {
    basis: Arc<MonomialBasis>,
    series: Vec<TruncatedSeries<R>>,
}

impl<R: Coefficient> PartialEq for Longitudes<R> {
    fn eq(&self, other: &Self) -> bool {
        self.series == other.series
    }
}

impl<R: Coefficient> Eq for Longitudes<R> {}

impl<R: Coefficient> fmt::Debug for Longitudes<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.basis.ambient();
        let mut m = f.debug_map();
        for (s, v) in self.series.iter().enumerate() {
            m.entry(&l.component(s).to_string(), &v.to_string());
        }
        m.finish()
    }
}

impl<R: Coefficient> Longitudes<R> {
    pub fn identity(l: &ComponentDecomposition) -> Result<Self> {
        let basis = basis_for(l)?;
        Ok(Self::identity_in(&basis))
    }

    pub(crate) fn identity_in(basis: &Arc<MonomialBasis>) -> Self {
        Longitudes { basis: basis.clone(), series: vec![TruncatedSeries::one(basis); basis.strands()] }
    }

    /// Scans a word letter by letter, expanding claspers into clasps.
    pub fn of_word(l: &ComponentDecomposition, word: &[GeneratorLink]) -> Result<Self> {
        let mut state = Self::identity(l)?;
        for g in word {
            g.check(l)?;
            if g.is_same_color() {
                continue;
            }
            for (c, d, s) in g.clasps() {
                state.push_clasp(l.strand_index(c), l.strand_index(d), s);
            }
        }
        Ok(state)
    }

    /// Like [`Longitudes::of_word`], but runs of a repeated generator are
    /// built directly from their longitude data and composed in.
    pub fn of_word_grouped(l: &ComponentDecomposition, word: &[GeneratorLink]) -> Result<Self> {
        let basis = basis_for(l)?;
        let mut state = Self::identity_in(&basis);
        let mut k = 0;
        while k < word.len() {
            let g = &word[k];
            g.check(l)?;
            let mut run = 1;
            while k + run < word.len() && word[k + run] == *g {
                run += 1;
            }
            k += run;
            if g.is_same_color() {
                continue;
            }
            match &g.kind {
                GeneratorKind::Clasp(c, d) if run < 3 => {
                    for _ in 0..run {
                        state.push_clasp(l.strand_index(*c), l.strand_index(*d), g.sign);
                    }
                }
                GeneratorKind::Clasp(c, d) => {
                    let j = IndexSequence::new(vec![*c, *d])?;
                    let block = Self::clasper_power_in(&basis, &j, g.sign as i64 * run as i64)?;
                    state = state.compose(&block)?;
                }
                GeneratorKind::Clasper(j) => {
                    let block = Self::clasper_power_in(&basis, j, g.sign as i64 * run as i64)?;
                    state = state.compose(&block)?;
                }
            }
        }
        Ok(state)
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn ambient(&self) -> &ComponentDecomposition {
        self.basis.ambient()
    }

    pub fn series(&self, c: ComponentId) -> &TruncatedSeries<R> {
        &self.series[self.ambient().strand_index(c)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (ComponentId, &TruncatedSeries<R>)> {
        let l = self.basis.ambient();
        self.series.iter().enumerate().map(move |(s, v)| (l.component(s), v))
    }

    /// `mu(J)`: the coefficient of `X_{J_0} ... X_{J_{k-1}}` in the longitude of `J_k`.
    pub fn mu(&self, j: &IndexSequence) -> Result<R> {
        j.check(self.ambient())?;
        if j.len() < 2 {
            return Err(Error::InvalidSequence(format!("{j} is shorter than 2")));
        }
        Ok(self.mu_strands(&self.strands_of(j)))
    }

    pub(crate) fn strands_of(&self, j: &IndexSequence) -> Vec<u8> {
        j.entries().iter().map(|&c| self.ambient().strand_index(c) as u8).collect()
    }

    /// `mu` of a sequence of distinct-color strand positions.
    pub(crate) fn mu_strands(&self, j: &[u8]) -> R {
        let (last, head) = j.split_last().expect("empty sequence");
        let k = self.basis.index_of(head).expect("sequence repeats a color");
        self.series[*last as usize].get(k).clone()
    }

    /// `Y_s^sign = lambda_s (1 + X_s)^sign lambda_s^-1`, the image of `x_s^sign`.
    fn meridian_image(&self, s: usize, sign: i8) -> TruncatedSeries<R> {
        let lam = &self.series[s];
        let mut y = lam.clone();
        y.mul_meridian_right(s, sign);
        y.mul(&lam.inverse().expect("longitude with constant term 1"))
    }

    /// The image of a word over strand positions.
    fn eval_positions(&self, word: &[(usize, i8)]) -> TruncatedSeries<R> {
        let mut acc = TruncatedSeries::one(&self.basis);
        for &(s, e) in word {
            acc = acc.mul(&self.meridian_image(s, e));
        }
        acc
    }

    /// Appends the clasp between strand positions `c < d`.
    pub(crate) fn push_clasp(&mut self, c: usize, d: usize, sign: i8) {
        let updates: Vec<(usize, TruncatedSeries<R>)> = clasp_local(c, d, sign)
            .into_iter()
            .map(|(q, w)| {
                let color = self.ambient().color_of(q);
                (q, self.eval_positions(&w).project_color(color))
            })
            .collect();
        for (q, img) in updates {
            self.series[q] = img.mul(&self.series[q]);
        }
    }

    /// The state of `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        same_ambient(self.ambient(), other.ambient())?;
        let n = self.basis.strands();
        if self.series.iter().all(TruncatedSeries::is_one) {
            return Ok(other.clone());
        }
        let images = self.substitute(&other.series);
        let series = (0..n)
            .map(|c| {
                images[c]
                    .project_color(self.ambient().color_of(c))
                    .mul(&self.series[c])
            })
            .collect();
        Ok(Longitudes { basis: self.basis.clone(), series })
    }

    /// Applies the substitution `X_d -> lambda_d X_d lambda_d^-1` to each series.
    fn substitute(&self, targets: &[TruncatedSeries<R>]) -> Vec<TruncatedSeries<R>> {
        let b = &self.basis;
        let n = b.strands();
        let z: Vec<TruncatedSeries<R>> = (0..n)
            .map(|d| {
                let lam = &self.series[d];
                let mut t = lam.clone();
                t.mul_meridian_right(d, 1);
                t.sub(lam).mul(&lam.inverse().expect("longitude with constant term 1"))
            })
            .collect();
        let mut needed = vec![false; b.len()];
        for k in (0..b.len()).rev() {
            if targets.iter().any(|t| !t.get(k).is_zero()) {
                needed[k] = true;
            }
            if needed[k] {
                if let Some(p) = b.parent(k) {
                    needed[p] = true;
                }
            }
        }
        let mut out: Vec<TruncatedSeries<R>> = targets.iter().map(|_| TruncatedSeries::zero(b)).collect();
        let mut stack: Vec<(usize, TruncatedSeries<R>)> = vec![(0, TruncatedSeries::one(b))];
        while let Some((k, value)) = stack.pop() {
            for (t, acc) in targets.iter().zip(out.iter_mut()) {
                let c = t.get(k);
                if !c.is_zero() {
                    acc.add_assign(&value.scale(c));
                }
            }
            for s in 0..n {
                if let Some(child) = b.append(k, s) {
                    if needed[child] {
                        stack.push((child, value.mul(&z[s])));
                    }
                }
            }
        }
        out
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rcfalg::commutator;

    fn c(i: usize, j: usize) -> ComponentId {
        ComponentId::new(i, j)
    }

    fn dec(v: &[usize]) -> ComponentDecomposition {
        ComponentDecomposition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn clasp_inverse_pair_is_identity() {
        let l = dec(&[1, 2, 1]);
        let a = clasp_automorphism(&l, c(1, 1), c(3, 1), 1).unwrap();
        let b = clasp_automorphism(&l, c(1, 1), c(3, 1), -1).unwrap();
        assert!(compose(&a, &b).unwrap().is_identity().unwrap());
        assert!(compose(&b, &a).unwrap().is_identity().unwrap());
        assert!(!a.is_identity().unwrap());
    }

    #[test]
    fn clasps_preserve_boundary() {
        let l = dec(&[1, 1, 1]);
        for (x, y) in [(c(1, 1), c(2, 1)), (c(1, 1), c(3, 1)), (c(2, 1), c(3, 1))] {
            for s in [1, -1] {
                assert!(clasp_automorphism(&l, x, y, s).unwrap().preserves_boundary().unwrap());
            }
        }
    }

    #[test]
    fn self_clasp_rejected() {
        let l = dec(&[2]);
        assert!(clasp_automorphism(&l, c(1, 1), c(1, 1), 1).is_err());
        assert!(GeneratorLink::clasp(c(1, 1), c(1, 2), 2).is_err());
    }

    #[test]
    fn single_clasp_longitudes() {
        let l = dec(&[1, 1]);
        let g = GeneratorLink::clasp(c(1, 1), c(2, 1), 1).unwrap();
        let st = Longitudes::<i64>::of_word(&l, &[g]).unwrap();
        assert_eq!(st.series(c(2, 1)).to_string(), "1 + X(1,1)");
        assert_eq!(st.series(c(1, 1)).to_string(), "1 + X(2,1)");
    }

    #[test]
    fn clasper_longitude_is_commutator() {
        let j = IndexSequence::new(vec![c(1, 1), c(2, 1), c(3, 1)]).unwrap();
        let (last, b) = clasper_longitude(&j, 1).unwrap();
        assert_eq!(last, c(3, 1));
        assert_eq!(b, commutator(&FreeWord::generator(c(1, 1)), &FreeWord::generator(c(2, 1))));
        let l = dec(&[1, 1, 1]);
        let t = GeneratorLink::clasper(j.clone(), 1).unwrap();
        let st = Longitudes::<i64>::of_word(&l, std::slice::from_ref(&t)).unwrap();
        assert_eq!(st.mu(&j).unwrap(), 1);
        let st = Longitudes::<i64>::of_word(&l, &[t.inverse()]).unwrap();
        assert_eq!(st.mu(&j).unwrap(), -1);
    }
}
