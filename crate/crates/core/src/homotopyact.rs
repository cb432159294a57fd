//! Partial conjugation moves acting on classes of colored string links.
//!
//! A move replaces the longitude of one target strand by a conjugate of it
//! by a meridian of another color, leaving the link with the target strand
//! removed untouched. The rest of the longitude system is rebuilt from that
//! data, and the result is returned in canonical form.

use std::fmt;

use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::hbraid::Longitudes;
use crate::scheme::{ComponentDecomposition, ComponentId};
use crate::stringlink::{realize, ColoredStringLink, InvariantVector};

/// Which meridian conjugates the target longitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Conjugator {
    /// The plain meridian of the source strand.
    #[default]
    Meridian,
    /// The source meridian transported through the rest of the link.
    Transported,
}

/// Conjugate the longitude of `target` by the meridian of `source`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SclGenerator {
    pub source: ComponentId,
    pub target: ComponentId,
    pub sign: i8,
}

/// The product of [`SclGenerator`] moves over every strand of `target_color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SgGenerator {
    pub source: ComponentId,
    pub target_color: usize,
    pub sign: i8,
}

impl SclGenerator {
    pub fn new(source: ComponentId, target: ComponentId, sign: i8) -> Result<Self> {
        let g = Self::extended(source, target, sign)?;
        if source.color == target.color {
            return Err(Error::InvalidGenerator(format!("{g} has source and target of one color")));
        }
        Ok(g)
    }

    /// Like [`SclGenerator::new`] but allowing a source of the target's color.
    pub fn extended(source: ComponentId, target: ComponentId, sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidGenerator(format!("sign must be +1 or -1, got {sign}")));
        }
        if source == target {
            return Err(Error::InvalidGenerator(format!("move with source and target {source}")));
        }
        Ok(SclGenerator { source, target, sign })
    }

    pub fn inverse(self) -> Self {
        SclGenerator { sign: -self.sign, ..self }
    }

    pub fn check(&self, l: &ComponentDecomposition) -> Result<()> {
        l.check(self.source)?;
        l.check(self.target)
    }
}

impl SgGenerator {
    pub fn new(source: ComponentId, target_color: usize, sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidGenerator(format!("sign must be +1 or -1, got {sign}")));
        }
        let g = SgGenerator { source, target_color, sign };
        if source.color == target_color {
            return Err(Error::InvalidGenerator(format!("{g} has source and target of one color")));
        }
        Ok(g)
    }

    pub fn inverse(self) -> Self {
        SgGenerator { sign: -self.sign, ..self }
    }

    pub fn check(&self, l: &ComponentDecomposition) -> Result<()> {
        l.check(self.source)?;
        if self.target_color == 0 || self.target_color > l.colors() {
            return Err(Error::InvalidGenerator(format!("no color {} in {l}", self.target_color)));
        }
        Ok(())
    }

    /// The strand moves this generator is the product of.
    pub fn factors(&self, l: &ComponentDecomposition) -> Vec<SclGenerator> {
        (1..=l.count(self.target_color))
            .map(|j| SclGenerator {
                source: self.source,
                target: ComponentId::new(self.target_color, j),
                sign: self.sign,
            })
            .collect()
    }
}

fn sign_str(s: i8) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

impl fmt::Display for SclGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conj{} {} by {}", sign_str(self.sign), self.target, self.source)
    }
}

impl fmt::Display for SgGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conj{} color {} by {}", sign_str(self.sign), self.target_color, self.source)
    }
}

/// Applies a strand move to a longitude system in place.
pub fn scl_on_longitudes<R: Coefficient>(
    st: &mut Longitudes<R>,
    g: &SclGenerator,
    conjugator: Conjugator,
) -> Result<()> {
    let l = st.ambient().clone();
    g.check(&l)?;
    let (s, c) = (l.strand_index(g.source), l.strand_index(g.target));
    let lam = st.series(g.target).clone();
    let conjugated = match conjugator {
        Conjugator::Meridian => {
            let mut v = lam;
            v.mul_meridian_left(s, g.sign);
            v.mul_meridian_right(s, -g.sign);
            v
        }
        Conjugator::Transported => {
            let src = st.series(g.source);
            let src_inv = src.inverse()?;
            let mut y = src.clone();
            y.mul_meridian_right(s, g.sign);
            let mut y_inv = src.clone();
            y_inv.mul_meridian_right(s, -g.sign);
            y.mul(&src_inv).mul(&lam).mul(&y_inv.mul(&src_inv))
        }
    };
    st.replace_longitude(c, conjugated)
}

pub fn sg_on_longitudes<R: Coefficient>(
    st: &mut Longitudes<R>,
    g: &SgGenerator,
    conjugator: Conjugator,
) -> Result<()> {
    let l = st.ambient().clone();
    g.check(&l)?;
    for f in g.factors(&l) {
        scl_on_longitudes(st, &f, conjugator)?;
    }
    Ok(())
}

fn on_link(a: &ColoredStringLink, f: impl FnOnce(&mut Longitudes<crate::Int>) -> Result<()>) -> Result<ColoredStringLink> {
    let mut st = a.longitudes()?.clone();
    f(&mut st)?;
    realize(&InvariantVector::of_longitudes(&st))
}

/// The canonical form of `g` applied to `a`.
pub fn apply_scl(g: &SclGenerator, a: &ColoredStringLink) -> Result<ColoredStringLink> {
    apply_scl_with(g, a, Conjugator::Meridian)
}

pub fn apply_scl_with(g: &SclGenerator, a: &ColoredStringLink, conjugator: Conjugator) -> Result<ColoredStringLink> {
    on_link(a, |st| scl_on_longitudes(st, g, conjugator))
}

pub fn apply_sg(g: &SgGenerator, a: &ColoredStringLink) -> Result<ColoredStringLink> {
    on_link(a, |st| sg_on_longitudes(st, g, Conjugator::Meridian))
}

/// Every strand move with source and target of different colors, both signs.
pub fn scl_generator_set(l: &ComponentDecomposition) -> Vec<SclGenerator> {
    let mut out = Vec::new();
    for target in l.components() {
        for source in l.components() {
            if source.color != target.color {
                for sign in [1, -1] {
                    out.push(SclGenerator { source, target, sign });
                }
            }
        }
    }
    out
}

/// Strand moves whose source shares the target's color; these act trivially.
pub fn same_color_generator_set(l: &ComponentDecomposition) -> Vec<SclGenerator> {
    let mut out = Vec::new();
    for target in l.components() {
        for source in l.components() {
            if source.color == target.color && source != target {
                for sign in [1, -1] {
                    out.push(SclGenerator { source, target, sign });
                }
            }
        }
    }
    out
}

pub fn sg_generator_set(l: &ComponentDecomposition) -> Vec<SgGenerator> {
    let mut out = Vec::new();
    for target_color in 1..=l.colors() {
        for source in l.components() {
            if source.color != target_color {
                for sign in [1, -1] {
                    out.push(SgGenerator { source, target_color, sign });
                }
            }
        }
    }
    out
}
