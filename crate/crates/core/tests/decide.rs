//! Decision procedure: residues, search behavior and move identities.

mod common;

use std::collections::{HashSet, VecDeque};

use common::*;
use linkhom::decide::{closure_equivalent, delta, gclosure_equivalent, mu_bar, Certificate, Move, Verdict};
use linkhom::hbraid::GeneratorLink;
use linkhom::homotopyact::{apply_scl, apply_sg, scl_generator_set, sg_generator_set, SclGenerator, SgGenerator};
use linkhom::stringlink::{realize, ColoredStringLink, InvariantVector};
use linkhom::{IndexSequence, Int};
use rand::seq::SliceRandom;
use rand::Rng;

fn seq(entries: &[(usize, usize)]) -> IndexSequence {
    IndexSequence::new(entries.iter().map(|&(i, j)| c(i, j)).collect()).unwrap()
}

fn clasp_power(x: (usize, usize), y: (usize, usize), p: i32) -> Vec<GeneratorLink> {
    let g = GeneratorLink::clasp(c(x.0, x.1), c(y.0, y.1), 1).unwrap();
    let g = if p < 0 { g.inverse() } else { g };
    vec![g; p.unsigned_abs() as usize]
}

/// Linking numbers 2, 4, 6 on the three pairs and triple coordinate `t`.
fn lk_246(t: i64) -> ColoredStringLink {
    let l = dec(&[1, 1, 1]);
    realize(&InvariantVector::from_values(&l, [2, 4, 6, t].map(Int::from).to_vec()).unwrap()).unwrap()
}

#[test]
fn delta_examples() {
    let triple = seq(&[(1, 1), (2, 1), (3, 1)]);
    let b = ColoredStringLink::new(dec(&[1, 1, 1]), borromean_word()).unwrap();
    assert_eq!(delta(&b, &triple).unwrap(), Int::from(0));
    assert_eq!(delta(&lk_246(0), &triple).unwrap(), Int::from(2));
    assert_eq!(delta(&b, &seq(&[(1, 1), (2, 1)])).unwrap(), Int::from(0));
}

#[test]
fn residue_examples() {
    let triple = seq(&[(1, 1), (2, 1), (3, 1)]);
    let a = lk_246(5);
    assert_eq!(a.invariant_vector().unwrap().get(&triple), Some(&Int::from(5)));
    let r = mu_bar(&a, &triple).unwrap();
    assert_eq!((r.residue, r.modulus), (Int::from(1), Int::from(2)));
    let r = mu_bar(&lk_246(-3), &triple).unwrap();
    assert_eq!((r.residue, r.modulus), (Int::from(1), Int::from(2)));

    let b = ColoredStringLink::new(dec(&[1, 1, 1]), borromean_word()).unwrap();
    let r = mu_bar(&b, &triple).unwrap();
    assert_eq!((r.residue, r.modulus), (Int::from(1), Int::from(0)));
    let t = ColoredStringLink::trivial(&dec(&[1, 2, 1]));
    for i in linkhom::decide::all_valid_sequences(t.ambient()) {
        assert_eq!(mu_bar(&t, &i).unwrap().residue, Int::from(0));
    }
}

#[test]
fn residue_classes_are_reachable() {
    // mu(123) = 5 and mu(123) = 1 agree mod 2 and are joined by moves.
    let out = closure_equivalent(&lk_246(5), &lk_246(1), 10_000).unwrap();
    assert_eq!(out.verdict, Verdict::Equivalent);
    let out = closure_equivalent(&lk_246(5), &lk_246(2), 10_000).unwrap();
    assert_eq!(out.verdict, Verdict::Distinct);
    assert!(matches!(out.certificate, Some(Certificate::Residue { .. })));
}

/// Conjugating the longitude of (3,1) by the meridian of (1,1) adds the
/// linking number of (2,1) and (3,1) to the triple coordinate, as read off
/// from `(1 + X_1) λ (1 - X_1)`.
#[test]
fn meridian_conjugation_shifts_the_triple_coordinate() {
    let triple = seq(&[(1, 1), (2, 1), (3, 1)]);
    let pair = seq(&[(2, 1), (3, 1)]);
    let g = SclGenerator::new(c(1, 1), c(3, 1), 1).unwrap();
    for p in -2..=2 {
        for q in -2i32..=2 {
            let mut w = clasp_power((2, 1), (3, 1), p);
            let t = GeneratorLink::clasper(triple.clone(), 1).unwrap();
            w.extend(vec![if q < 0 { t.inverse() } else { t }; q.unsigned_abs() as usize]);
            let a = ColoredStringLink::new(dec(&[1, 1, 1]), w).unwrap();
            let va = a.invariant_vector().unwrap();
            let b = apply_scl(&g, &a).unwrap();
            let want = va.get(&triple).unwrap() + va.get(&pair).unwrap();
            assert_eq!(b.invariant_vector().unwrap().get(&triple), Some(&want), "p={p} q={q}");
        }
    }
    // The clasper alone has vanishing linking numbers, so it is fixed.
    let t = ColoredStringLink::new(dec(&[1, 1, 1]), vec![GeneratorLink::clasper(triple, 1).unwrap()]).unwrap();
    assert_eq!(apply_scl(&g, &t).unwrap().word(), t.word());
}

#[test]
fn sg_with_single_strand_target_is_scl() {
    let mut r = rng(11);
    for _ in 0..40 {
        let a = random_link(&mut r, 5, 6);
        let l = a.ambient();
        for g in sg_generator_set(l).into_iter().filter(|g| l.count(g.target_color) == 1) {
            let s = SclGenerator::new(g.source, c(g.target_color, 1), g.sign).unwrap();
            assert_eq!(apply_sg(&g, &a).unwrap(), apply_scl(&s, &a).unwrap());
        }
    }
}

#[test]
fn sg_factor_order_is_irrelevant() {
    let mut r = rng(12);
    for _ in 0..40 {
        let a = random_link(&mut r, 5, 6);
        let l = a.ambient().clone();
        for g in sg_generator_set(&l).into_iter().filter(|g| l.count(g.target_color) > 1) {
            let mut f = g.factors(&l);
            f.reverse();
            let mut b = a.clone();
            for s in &f {
                b = apply_scl(s, &b).unwrap();
            }
            assert_eq!(b, apply_sg(&g, &a).unwrap(), "{g} on {a}");
        }
    }
}

#[test]
fn certificates_are_stable_under_sg_moves() {
    let mut r = rng(13);
    for _ in 0..100 {
        let a = random_link(&mut r, 5, 8);
        let g = *sg_generator_set(a.ambient()).choose(&mut r).unwrap();
        let b = apply_sg(&g, &a).unwrap();
        for i in linkhom::decide::all_valid_sequences(a.ambient()) {
            assert_eq!(mu_bar(&a, &i).unwrap(), mu_bar(&b, &i).unwrap(), "{g} on {a} at {i}");
        }
    }
}

#[test]
fn two_color_orbits_are_points() {
    // Every vector with coordinates in [-3, 3] is fixed by every move.
    for counts in [[1usize, 1], [2, 1], [2, 2], [1, 3]] {
        let l = dec(&counts);
        let dim = InvariantVector::<Int>::zero(&l).len();
        let moves: Vec<Move> = scl_generator_set(&l)
            .into_iter()
            .map(Move::Scl)
            .chain(sg_generator_set(&l).into_iter().map(Move::Sg))
            .collect();
        let total = 7usize.pow(dim as u32);
        let step = (total / 300).max(1);
        for code in (0..total).step_by(step) {
            let values: Vec<Int> = (0..dim).map(|k| Int::from((code / 7usize.pow(k as u32) % 7) as i64 - 3)).collect();
            let v = InvariantVector::from_values(&l, values).unwrap();
            let a = realize(&v).unwrap();
            // Brute-force orbit from a.
            let mut seen = HashSet::from([v.clone()]);
            let mut queue = VecDeque::from([a.clone()]);
            while let Some(x) = queue.pop_front() {
                for m in &moves {
                    let y = m.apply(&x).unwrap();
                    if seen.insert(y.invariant_vector().unwrap().clone()) {
                        queue.push_back(y);
                    }
                }
            }
            assert_eq!(seen.len(), 1, "{l} {v:?}");
        }
        let mut r = rng(14);
        for _ in 0..30 {
            let a = ColoredStringLink::new(l.clone(), random_word(&mut r, &l, 6)).unwrap();
            let b = ColoredStringLink::new(l.clone(), random_word(&mut r, &l, 6)).unwrap();
            for out in [closure_equivalent(&a, &b, 1).unwrap(), gclosure_equivalent(&a, &b, 1).unwrap()] {
                let same = a.invariant_vector().unwrap() == b.invariant_vector().unwrap();
                let want = if same { Verdict::Equivalent } else { Verdict::Distinct };
                assert_eq!(out.verdict, want);
            }
        }
    }
}

#[test]
fn search_is_deterministic_and_budget_monotone() {
    let mut r = rng(15);
    for _ in 0..20 {
        let a = random_link(&mut r, 4, 6);
        let gens = scl_generator_set(a.ambient());
        let mut b = a.clone();
        for _ in 0..r.gen_range(1..=3) {
            b = apply_scl(gens.choose(&mut r).unwrap(), &b).unwrap();
        }
        let first = closure_equivalent(&a, &b, 10_000).unwrap();
        assert_eq!(first, closure_equivalent(&a, &b, 10_000).unwrap());
        let mut last = Verdict::Unknown;
        for budget in [0, 1, 2, 5, 20, 100, 10_000] {
            let v = closure_equivalent(&a, &b, budget).unwrap().verdict;
            if last != Verdict::Unknown {
                assert_eq!(v, last, "budget {budget}");
            }
            last = v;
        }
        assert_eq!(last, first.verdict);
    }
}

#[test]
fn single_moves_are_found_at_depth_one() {
    let mut r = rng(16);
    for _ in 0..30 {
        let a = random_link(&mut r, 5, 6);
        let g = *sg_generator_set(a.ambient()).choose(&mut r).unwrap();
        let b = apply_sg(&g, &a).unwrap();
        let out = gclosure_equivalent(&a, &b, 1_000).unwrap();
        assert_eq!(out.verdict, Verdict::Equivalent);
        assert!(out.witness.unwrap().len() <= 1);
    }
}

/// Conjugating one strand of color `i` by every meridian of color `s`
/// gives the graph closure obtained by conjugating all of color `s` by that
/// strand's inverse meridian.
#[test]
fn star_identity_on_samples() {
    let mut r = rng(17);
    let (mut checked, mut multi) = (0, 0);
    while checked < 25 || multi < 10 {
        let a = random_link(&mut r, 5, 6);
        let l = a.ambient().clone();
        let ij = *l.components().collect::<Vec<_>>().choose(&mut r).unwrap();
        let s = r.gen_range(1..=l.colors());
        if s == ij.color {
            continue;
        }
        let mut lhs = a.clone();
        for t in 1..=l.count(s) {
            lhs = apply_scl(&SclGenerator::new(c(s, t), ij, 1).unwrap(), &lhs).unwrap();
        }
        let rhs = apply_sg(&SgGenerator::new(ij, s, -1).unwrap(), &a).unwrap();
        let out = gclosure_equivalent(&lhs, &rhs, 2_000).unwrap();
        assert_eq!(out.verdict, Verdict::Equivalent, "{a}: star identity at {ij} and color {s}");
        checked += 1;
        multi += (l.count(ij.color) > 1) as usize;
    }
}
