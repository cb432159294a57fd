//! Rebuilding longitude systems from partial data.
//!
//! For a set `S` of strands with distinct colors, the top coefficients of
//! the longitudes (those whose monomial uses every other strand of `S`
//! exactly once) are tied together by boundary preservation: the full
//! product of the meridian images must equal the plain product on
//! monomials over `S`. Given the longitudes on smaller sets and the top part
//! of one designated strand's longitude, that relation determines the top
//! parts of all other strands in `S`.

use std::sync::Arc;

use super::{clasper_commutator, Longitudes};
use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::rcfalg::{magnus_in, MonomialBasis, TruncatedSeries};
use crate::scheme::IndexSequence;

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|s| mask >> s & 1 == 1).collect()
}

impl<R: Coefficient> Longitudes<R> {
    /// Recomputes the top parts on `mask` of every strand other than `e`
    /// from the top part of `e` and the data on proper subsets.
    pub(crate) fn solve_subset(&mut self, mask: u64, e: usize) -> Result<()> {
        let b = self.basis.clone();
        let strands = members(mask);
        // Product of the meridian images restricted to S, with top parts dropped.
        let mut prod = TruncatedSeries::one(&b);
        for &r in &strands {
            let rest = mask & !(1 << r);
            let mut lam = self.series[r].restrict(rest);
            for &t in b.with_support(rest) {
                lam.set(t as usize, R::zero());
            }
            let mut y = lam.clone();
            y.mul_meridian_right(r, 1);
            prod = prod.mul(&y).mul(&lam.inverse()?);
        }
        let sorted: Vec<u8> = strands.iter().map(|&s| s as u8).collect();
        let defect = |w: &[u8]| -> R {
            let k = b.index_of(w).expect("word over a distinct-color subset");
            let mut v = -prod.get(k).clone();
            if w == &sorted[..] {
                v.add_ref(&R::one());
            }
            v
        };
        let mut w = Vec::with_capacity(strands.len());
        for &r in &strands {
            if r == e {
                continue;
            }
            for &t in b.with_support(mask & !(1 << r)) {
                w.clear();
                w.push(r as u8);
                w.extend_from_slice(b.word(t as usize));
                let mut acc = R::zero();
                while w[0] as usize != e {
                    acc.add_ref(&defect(&w));
                    w.rotate_right(1);
                }
                let top = b.index_of(&w[1..]).expect("word over a distinct-color subset");
                let mut v = self.series[e].get(top).clone();
                v.sub_ref(&acc);
                self.series[r].set(t as usize, v);
            }
        }
        // The defects around each full rotation cycle must cancel.
        for &t in b.with_support(mask & !(1 << e)) {
            w.clear();
            w.push(e as u8);
            w.extend_from_slice(b.word(t as usize));
            let mut acc = R::zero();
            for _ in 0..strands.len() {
                acc.add_ref(&defect(&w));
                w.rotate_right(1);
            }
            if !acc.is_zero() {
                let names: Vec<String> = strands.iter().map(|&s| self.ambient().component(s).to_string()).collect();
                return Err(Error::Inconsistent(names.concat()));
            }
        }
        Ok(())
    }

    /// Recomputes every subset containing strand `c` from the longitude of
    /// `c` and the data on subsets avoiding `c`.
    pub(crate) fn complete_around(&mut self, c: usize) -> Result<()> {
        let b = self.basis.clone();
        for &mask in b.subsets() {
            if mask >> c & 1 == 1 {
                self.solve_subset(mask, c)?;
            }
        }
        Ok(())
    }

    /// Replaces the longitude of strand `c` and rebuilds what depends on it.
    pub(crate) fn replace_longitude(&mut self, c: usize, lambda: TruncatedSeries<R>) -> Result<()> {
        let color = self.ambient().color_of(c);
        self.series[c] = lambda.project_color(color);
        self.complete_around(c)
    }

    /// Rebuilds a full system from its canonical coordinates.
    ///
    /// `coord` receives the strand positions of a canonical sequence.
    pub(crate) fn from_canonical_in(
        basis: &Arc<MonomialBasis>,
        mut coord: impl FnMut(&[u8]) -> R,
    ) -> Result<Self> {
        let mut st = Self::identity_in(basis);
        let b = basis.clone();
        let mut seq = Vec::new();
        for &mask in b.subsets() {
            let e = 63 - mask.leading_zeros() as usize;
            let rest = mask & !(1 << e);
            let a = rest.trailing_zeros() as u8;
            let words = b.with_support(rest);
            let size = rest.count_ones() as usize;
            for pos in 0..size {
                for &t in words {
                    let w = b.word(t as usize);
                    if w[pos] != a {
                        continue;
                    }
                    let v = if pos == 0 {
                        seq.clear();
                        seq.extend_from_slice(w);
                        seq.push(e as u8);
                        coord(&seq)
                    } else {
                        shuffle_completion(&b, &st.series[e], w, pos)
                    };
                    st.series[e].set(t as usize, v);
                }
            }
            st.solve_subset(mask, e)?;
        }
        Ok(st)
    }

    /// The system of `T_J^x`; a level-1 `J` gives the `x`-th power of its clasp.
    pub(crate) fn clasper_power_in(basis: &Arc<MonomialBasis>, j: &IndexSequence, x: i64) -> Result<Self> {
        let mut st = Self::identity_in(basis);
        if x == 0 {
            return Ok(st);
        }
        let l = basis.ambient();
        let last = l.strand_index(j.last());
        let b: TruncatedSeries<R> = magnus_in(&clasper_commutator(j), basis);
        st.replace_longitude(last, b.pow(x)?)?;
        Ok(st)
    }

    /// Public form of [`Longitudes::clasper_power_in`].
    pub fn clasper_power(l: &crate::scheme::ComponentDecomposition, j: &IndexSequence, x: i64) -> Result<Self> {
        j.check(l)?;
        if !j.is_canonical() {
            return Err(Error::InvalidSequence(format!("{j} is not canonical")));
        }
        Self::clasper_power_in(&crate::rcfalg::basis_for(l)?, j, x)
    }

    /// Rebuilds a full system from canonical coordinates given per sequence.
    pub fn from_canonical(
        l: &crate::scheme::ComponentDecomposition,
        mut coord: impl FnMut(&IndexSequence) -> R,
    ) -> Result<Self> {
        let basis = crate::rcfalg::basis_for(l)?;
        Self::from_canonical_in(&basis, |strands| {
            let entries = strands.iter().map(|&s| l.component(s as usize)).collect();
            coord(&IndexSequence::new(entries).expect("distinct colors"))
        })
    }

    /// Moves the system into a larger ambient along an injective,
    /// color-compatible strand map. Data on subsets outside the image stay trivial.
    pub(crate) fn transport(&self, target: &Arc<MonomialBasis>, strand_map: &[usize]) -> Self {
        let mut st = Self::identity_in(target);
        for (s, v) in self.series.iter().enumerate() {
            st.series[strand_map[s]] = v.transport(target, strand_map);
        }
        st
    }
}

/// The coefficient of `w = v a u` in a group-like series `g`, where `a`
/// (at position `pos`) is the smallest letter of `w`, from coefficients of
/// words with `a` further left or on fewer letters.
fn shuffle_completion<R: Coefficient>(b: &MonomialBasis, g: &TruncatedSeries<R>, w: &[u8], pos: usize) -> R {
    let coeff = |x: &[u8]| g.get(b.index_of(x).expect("distinct colors")).clone();
    let (v, tail) = w.split_at(pos);
    let (a, u) = (tail[0], &tail[1..]);
    let mut val = coeff(v).checked_mul(&coeff(tail)).expect("coefficient overflow in product");
    let mut buf = Vec::with_capacity(w.len());
    for j in 0..pos {
        buf.clear();
        buf.extend_from_slice(&v[..j]);
        buf.push(a);
        let base = buf.len();
        for_each_shuffle(&v[j..], u, &mut buf, &mut |x| val.sub_ref(&coeff(x)));
        debug_assert_eq!(buf.len(), base);
    }
    val
}

fn for_each_shuffle(p: &[u8], q: &[u8], buf: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
    if p.is_empty() || q.is_empty() {
        let n = buf.len();
        buf.extend_from_slice(p);
        buf.extend_from_slice(q);
        f(buf);
        buf.truncate(n);
        return;
    }
    buf.push(p[0]);
    for_each_shuffle(&p[1..], q, buf, f);
    buf.pop();
    buf.push(q[0]);
    for_each_shuffle(p, &q[1..], buf, f);
    buf.pop();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hbraid::GeneratorLink;
    use crate::scheme::{all_canonical_sequences, ComponentDecomposition, ComponentId};

    fn c(i: usize, j: usize) -> ComponentId {
        ComponentId::new(i, j)
    }

    fn sample_word() -> (ComponentDecomposition, Vec<GeneratorLink>) {
        let l = ComponentDecomposition::new(vec![1, 2, 1, 1]).unwrap();
        let w = vec![
            GeneratorLink::clasp(c(1, 1), c(3, 1), 1).unwrap(),
            GeneratorLink::clasp(c(2, 2), c(4, 1), -1).unwrap(),
            GeneratorLink::clasp(c(1, 1), c(2, 1), 1).unwrap(),
            GeneratorLink::clasp(c(3, 1), c(4, 1), 1).unwrap(),
            GeneratorLink::clasp(c(1, 1), c(4, 1), -1).unwrap(),
            GeneratorLink::clasp(c(2, 1), c(3, 1), 1).unwrap(),
            GeneratorLink::clasp(c(1, 1), c(3, 1), -1).unwrap(),
        ];
        (l, w)
    }

    #[test]
    fn completion_round_trips_on_each_strand() {
        let (l, w) = sample_word();
        let st = Longitudes::<i64>::of_word(&l, &w).unwrap();
        for s in 0..l.strands() {
            let mut other = st.clone();
            let lam = other.series[s].clone();
            other.replace_longitude(s, lam).unwrap();
            assert_eq!(other, st, "strand {s}");
        }
    }

    #[test]
    fn canonical_coordinates_determine_the_system() {
        let (l, w) = sample_word();
        let st = Longitudes::<i64>::of_word(&l, &w).unwrap();
        let rebuilt = Longitudes::<i64>::from_canonical(&l, |j| st.mu(j).unwrap()).unwrap();
        assert_eq!(rebuilt, st);
        assert!(all_canonical_sequences(&l).iter().any(|j| st.mu(j).unwrap() != 0));
    }

    #[test]
    fn shuffle_enumeration_counts() {
        let mut n = 0;
        for_each_shuffle(&[1, 2], &[3, 4, 5], &mut Vec::new(), &mut |_| n += 1);
        assert_eq!(n, 10);
    }
}
