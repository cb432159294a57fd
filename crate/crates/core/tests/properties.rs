//! Algebraic invariants of the library checked on seeded random inputs.

mod common;

use common::*;
use linkhom::clifront::{parse_link, serialize_word};
use linkhom::hbraid::{word_automorphism, GeneratorLink, Longitudes};
use linkhom::rcfalg::{commutator, conjugate, magnus_expand, rcf_equal, FreeWord, GeneratorSymbol};
use linkhom::stringlink::{
    canonical_form, cl_homotopic, compose, decompose, invert, reassemble, ColoredStringLink, InvariantVector,
};
use linkhom::{Int, Series};
use proptest::prelude::*;

fn link_from_seed(seed: u64, max_strands: usize, max_len: usize) -> ColoredStringLink {
    random_link(&mut rng(seed), max_strands, max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn longitude_routes_agree(seed in any::<u64>()) {
        let a = link_from_seed(seed, 4, 6);
        let l = a.ambient();
        let scan = Longitudes::<Int>::of_word(l, a.word()).unwrap();
        let grouped = Longitudes::<Int>::of_word_grouped(l, a.word()).unwrap();
        let auto = word_automorphism(l, a.word()).unwrap().longitudes::<Int>().unwrap();
        prop_assert!(scan == grouped);
        prop_assert!(scan == auto);
    }

    #[test]
    fn automorphisms_preserve_the_boundary(seed in any::<u64>()) {
        let a = link_from_seed(seed, 4, 4);
        prop_assert!(word_automorphism(a.ambient(), a.word()).unwrap().preserves_boundary().unwrap());
    }

    #[test]
    fn narrow_and_wide_coefficients_agree(seed in any::<u64>()) {
        let a = link_from_seed(seed, 5, 8);
        let wide = a.invariant_vector().unwrap();
        let narrow = a.invariant_vector_in::<i64>().unwrap();
        prop_assert_eq!(&narrow.convert::<Int>().unwrap(), wide);
    }

    #[test]
    fn inverse_word_cancels(seed in any::<u64>()) {
        let a = link_from_seed(seed, 5, 6);
        let b = compose(&a, &invert(&a)).unwrap();
        prop_assert!(b.invariant_vector().unwrap().is_zero());
    }

    #[test]
    fn same_color_clasps_are_invisible(seed in any::<u64>(), pos in any::<prop::sample::Index>()) {
        let a = link_from_seed(seed, 5, 6);
        let l = a.ambient();
        let Some(color) = (1..=l.colors()).find(|&k| l.count(k) >= 2) else { return Ok(()) };
        let g = GeneratorLink::clasp(c(color, 1), c(color, 2), 1).unwrap();
        let mut w = a.word().to_vec();
        w.insert(pos.index(w.len() + 1), g);
        let b = ColoredStringLink::new(l.clone(), w).unwrap();
        prop_assert!(cl_homotopic(&a, &b).unwrap());
    }

    #[test]
    fn canonical_form_is_a_fixed_point(seed in any::<u64>()) {
        let a = link_from_seed(seed, 5, 8);
        let f = canonical_form(&a).unwrap();
        prop_assert_eq!(f.invariant_vector().unwrap(), a.invariant_vector().unwrap());
        let g = canonical_form(&f).unwrap();
        prop_assert_eq!(g.word(), f.word());
    }

    #[test]
    fn invariant_vector_rebuilds_longitudes(seed in any::<u64>()) {
        let a = link_from_seed(seed, 5, 6);
        let v = a.invariant_vector().unwrap();
        let st = v.longitudes().unwrap();
        prop_assert!(&st == a.longitudes().unwrap());
        prop_assert_eq!(&InvariantVector::of_longitudes(&st), v);
    }

    #[test]
    fn decomposition_round_trips(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let a = link_from_seed(seed, 5, 6);
        let l = a.ambient();
        if l.colors() < 3 { return Ok(()); }
        let color = 1 + pick.index(l.colors());
        let d = decompose(&a, color).unwrap();
        let b = reassemble(l, &d).unwrap();
        prop_assert!(cl_homotopic(&a, &b).unwrap());
    }

    #[test]
    fn document_text_round_trips(seed in any::<u64>()) {
        let a = link_from_seed(seed, 5, 10);
        let text = serialize_word(a.ambient(), a.word());
        let doc = parse_link(&text).unwrap();
        prop_assert_eq!(&doc.ambient, a.ambient());
        prop_assert_eq!(doc.word.as_slice(), a.word());
    }

    #[test]
    fn magnus_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 + (seed % 4) as usize;
        let l = random_decomposition(&mut r, n);
        let u = random_free_word(&mut r, &l, 12);
        let v = random_free_word(&mut r, &l, 12);
        let mu: Series = magnus_expand(&u, &l).unwrap();
        let mv: Series = magnus_expand(&v, &l).unwrap();
        prop_assert_eq!(magnus_expand::<Int>(&u.mul(&v), &l).unwrap(), mu.mul(&mv));
        prop_assert!(mu.mul(&magnus_expand::<Int>(&u.inverse(), &l).unwrap()).is_one());
    }

    #[test]
    fn same_color_conjugates_commute(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 + (seed % 4) as usize;
        let l = random_decomposition(&mut r, n);
        let comps: Vec<_> = l.components().collect();
        let x = comps[(seed as usize / 7) % comps.len()];
        let y = comps.iter().copied().filter(|y| y.color == x.color).nth((seed as usize / 11) % l.count(x.color)).unwrap();
        let g = random_free_word(&mut r, &l, 8);
        let h = random_free_word(&mut r, &l, 8);
        let gx = conjugate(&FreeWord::generator(x), &g);
        let hy = conjugate(&FreeWord::generator(y), &h);
        prop_assert!(rcf_equal(&commutator(&gx, &hy), &FreeWord::identity(), &l).unwrap());
    }
}

#[test]
fn distinct_color_commutator_is_visible() {
    let l = dec(&[1, 1]);
    let x = FreeWord::letter(GeneratorSymbol::plain(c(1, 1)), 1);
    let y = FreeWord::letter(GeneratorSymbol::plain(c(2, 1)), 1);
    assert!(!rcf_equal(&commutator(&x, &y), &FreeWord::identity(), &l).unwrap());
}
