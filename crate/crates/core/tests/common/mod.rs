//! Seeded random links shared by the integration tests.
#![allow(dead_code)]

pub mod golden;

use linkhom::hbraid::GeneratorLink;
use linkhom::scheme::all_canonical_sequences;
use linkhom::stringlink::ColoredStringLink;
use linkhom::{ComponentDecomposition, ComponentId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(i: usize, j: usize) -> ComponentId {
    ComponentId::new(i, j)
}

pub fn dec(counts: &[usize]) -> ComponentDecomposition {
    ComponentDecomposition::new(counts.to_vec()).unwrap()
}

/// A decomposition with `strands` strands and at least two colors.
pub fn random_decomposition(rng: &mut impl Rng, strands: usize) -> ComponentDecomposition {
    assert!(strands >= 2);
    let colors = rng.gen_range(2..=strands);
    let mut counts = vec![1; colors];
    for _ in colors..strands {
        let k = rng.gen_range(0..colors);
        counts[k] += 1;
    }
    dec(&counts)
}

/// A random clasp between two strands of different colors.
pub fn random_clasp(rng: &mut impl Rng, l: &ComponentDecomposition) -> GeneratorLink {
    let comps: Vec<ComponentId> = l.components().collect();
    loop {
        let x = *comps.choose(rng).unwrap();
        let y = *comps.choose(rng).unwrap();
        if x.color != y.color {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            return GeneratorLink::clasp(x, y, sign).unwrap();
        }
    }
}

/// A random generator: mostly clasps, sometimes a clasper of level two or more.
pub fn random_generator(rng: &mut impl Rng, l: &ComponentDecomposition) -> GeneratorLink {
    let deep: Vec<_> = all_canonical_sequences(l).into_iter().filter(|j| j.level() >= 2).collect();
    if !deep.is_empty() && rng.gen_bool(0.3) {
        let j = deep.choose(rng).unwrap().clone();
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        GeneratorLink::clasper(j, sign).unwrap()
    } else {
        random_clasp(rng, l)
    }
}

pub fn random_word(rng: &mut impl Rng, l: &ComponentDecomposition, max_len: usize) -> Vec<GeneratorLink> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| random_generator(rng, l)).collect()
}

pub fn random_link(rng: &mut impl Rng, max_strands: usize, max_len: usize) -> ColoredStringLink {
    let n = rng.gen_range(2..=max_strands);
    let l = random_decomposition(rng, n);
    let w = random_word(rng, &l, max_len);
    ColoredStringLink::new(l, w).unwrap()
}

/// The Borromean string link as a commutator of two clasps.
pub fn borromean_word() -> Vec<GeneratorLink> {
    let a = GeneratorLink::clasp(c(1, 1), c(2, 1), 1).unwrap();
    let b = GeneratorLink::clasp(c(2, 1), c(3, 1), 1).unwrap();
    vec![a.clone(), b.clone(), a.inverse(), b.inverse()]
}

/// A random free word on the meridians of `l`.
pub fn random_free_word(rng: &mut impl Rng, l: &ComponentDecomposition, max_len: usize) -> linkhom::rcfalg::FreeWord {
    use linkhom::rcfalg::{FreeWord, GeneratorSymbol};
    let comps: Vec<ComponentId> = l.components().collect();
    let n = rng.gen_range(0..=max_len);
    (0..n).fold(FreeWord::identity(), |w, _| {
        let c = *comps.choose(rng).unwrap();
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        w.mul(&FreeWord::letter(GeneratorSymbol::plain(c), e))
    })
}
