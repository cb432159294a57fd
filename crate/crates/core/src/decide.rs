//! Closure equivalence decisions with certificates.
//!
//! Two links are first screened by invariants that every move preserves
//! (linking numbers and residues of `mu` modulo `Delta`). If those agree, a
//! bounded bidirectional breadth-first search over canonical invariant
//! vectors looks for a sequence of moves carrying one to the other.

use std::collections::HashMap;
use std::fmt;


use crate::coefficient::Coefficient;
use crate::error::{Error, Result};
use crate::hbraid::Longitudes;
use crate::homotopyact::{
    apply_scl, apply_sg, scl_generator_set, scl_on_longitudes, sg_generator_set, sg_on_longitudes, Conjugator,
    SclGenerator, SgGenerator,
};
use crate::rcfalg::basis_for;
use crate::scheme::{ComponentDecomposition, ComponentId, IndexSequence};
use crate::stringlink::{ColoredStringLink, InvariantVector};
use crate::Int;

/// `mu(I)` reduced modulo `Delta(I)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueInvariant {
    pub sequence: IndexSequence,
    pub modulus: Int,
    pub residue: Int,
}

impl fmt::Display for ResidueInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if num_traits::Zero::is_zero(&self.modulus) {
            write!(f, "mu{} = {}", self.sequence, self.residue)
        } else {
            write!(f, "mu{} = {} mod {}", self.sequence, self.residue, self.modulus)
        }
    }
}

/// A single move of a search witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Scl(SclGenerator),
    Sg(SgGenerator),
}

impl Move {
    pub fn inverse(self) -> Self {
        match self {
            Move::Scl(g) => Move::Scl(g.inverse()),
            Move::Sg(g) => Move::Sg(g.inverse()),
        }
    }

    pub fn apply(&self, a: &ColoredStringLink) -> Result<ColoredStringLink> {
        match self {
            Move::Scl(g) => apply_scl(g, a),
            Move::Sg(g) => apply_sg(g, a),
        }
    }

    fn apply_state<R: Coefficient>(&self, st: &mut Longitudes<R>) -> Result<()> {
        match self {
            Move::Scl(g) => scl_on_longitudes(st, g, Conjugator::Meridian),
            Move::Sg(g) => sg_on_longitudes(st, g, Conjugator::Meridian),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Scl(g) => write!(f, "{g}"),
            Move::Sg(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Distinct,
    Unknown,
}

/// Why two links were declared distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    LinkingNumber { sequence: IndexSequence, left: Int, right: Int },
    Residue { left: ResidueInvariant, right: ResidueInvariant },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::LinkingNumber { sequence, left, right } => {
                write!(f, "linking number mu{sequence}: {left} vs {right}")
            }
            Certificate::Residue { left, right } => {
                write!(f, "residue {left} vs {right}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: usize,
    pub states_seen: usize,
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionOutcome {
    pub verdict: Verdict,
    /// Moves carrying the first link to the class of the second.
    pub witness: Option<Vec<Move>>,
    pub certificate: Option<Certificate>,
    pub stats: SearchStats,
}

fn gcd_all<'a, R: Coefficient>(values: impl IntoIterator<Item = &'a R>) -> R {
    values.into_iter().fold(R::zero(), |g, v| g.gcd(v))
}

/// Subsequences of `entries` with at least one entry removed and at least
/// two kept, each in every cyclic rotation.
fn delta_sequences(entries: &[u8]) -> Vec<Vec<u8>> {
    let p = entries.len();
    let mut out = Vec::new();
    for keep in 0u32..(1 << p) - 1 {
        if keep.count_ones() < 2 {
            continue;
        }
        let sub: Vec<u8> = (0..p).filter(|k| keep >> k & 1 == 1).map(|k| entries[k]).collect();
        for r in 0..sub.len() {
            let mut rot = sub.clone();
            rot.rotate_left(r);
            out.push(rot);
        }
    }
    out
}

fn delta_state<R: Coefficient>(st: &Longitudes<R>, strands: &[u8]) -> R {
    let vals: Vec<R> = delta_sequences(strands).iter().map(|j| st.mu_strands(j)).collect();
    gcd_all(&vals)
}

fn residue<R: Coefficient>(value: &R, modulus: &R) -> R {
    if modulus.is_zero() {
        value.clone()
    } else {
        value.mod_floor(modulus)
    }
}

/// Greatest common divisor of `mu` over the shortened rotations of `i`.
pub fn delta(a: &ColoredStringLink, i: &IndexSequence) -> Result<Int> {
    i.check(a.ambient())?;
    let st = a.longitudes()?;
    Ok(delta_state(st, &st.strands_of(i)))
}

pub fn mu_bar(a: &ColoredStringLink, i: &IndexSequence) -> Result<ResidueInvariant> {
    i.check(a.ambient())?;
    if i.len() < 2 {
        return Err(Error::InvalidSequence(format!("{i} is shorter than 2")));
    }
    let st = a.longitudes()?;
    let strands = st.strands_of(i);
    let modulus = delta_state(st, &strands);
    let residue = residue(&st.mu_strands(&strands), &modulus);
    Ok(ResidueInvariant { sequence: i.clone(), modulus, residue })
}

/// Every sequence of at least two strands with distinct colors, by length
/// and then lexicographically.
pub fn all_valid_sequences(l: &ComponentDecomposition) -> Vec<IndexSequence> {
    let comps: Vec<ComponentId> = l.components().collect();
    let mut out = Vec::new();
    let mut level: Vec<Vec<ComponentId>> = comps.iter().map(|&c| vec![c]).collect();
    for _ in 1..l.colors() {
        let mut next = Vec::new();
        for s in &level {
            for &c in &comps {
                if s.iter().all(|x| x.color != c.color) {
                    let mut t = s.clone();
                    t.push(c);
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().map(|s| IndexSequence::new(s.clone()).expect("distinct colors")));
        level = next;
    }
    out
}

/// The first invariant preserved by every move on which the two systems differ.
fn screen<R: Coefficient>(a: &Longitudes<R>, b: &Longitudes<R>) -> Option<Certificate> {
    let l = a.ambient();
    let seqs = all_valid_sequences(l);
    let conv = |v: &R| v.convert::<Int>().expect("integer conversion");
    for j in seqs.iter().filter(|j| j.len() == 2) {
        let s = a.strands_of(j);
        let (x, y) = (a.mu_strands(&s), b.mu_strands(&s));
        if x != y {
            return Some(Certificate::LinkingNumber { sequence: j.clone(), left: conv(&x), right: conv(&y) });
        }
    }
    for j in seqs.iter().filter(|j| j.len() > 2) {
        let s = a.strands_of(j);
        let (da, db) = (delta_state(a, &s), delta_state(b, &s));
        let (ra, rb) = (residue(&a.mu_strands(&s), &da), residue(&b.mu_strands(&s), &db));
        if da != db || ra != rb {
            let left = ResidueInvariant { sequence: j.clone(), modulus: conv(&da), residue: conv(&ra) };
            let right = ResidueInvariant { sequence: j.clone(), modulus: conv(&db), residue: conv(&rb) };
            return Some(Certificate::Residue { left, right });
        }
    }
    None
}

struct Node<R> {
    key: Vec<R>,
    parent: Option<(usize, usize)>,
}

struct Side<R> {
    nodes: Vec<Node<R>>,
    index: HashMap<Vec<R>, usize>,
    frontier: Vec<usize>,
}

impl<R: Coefficient> Side<R> {
    fn new(root: Vec<R>) -> Self {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        Side { nodes: vec![Node { key: root, parent: None }], index, frontier: vec![0] }
    }

    /// Move indices from the root to `node`.
    fn path(&self, mut node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some((p, m)) = self.nodes[node].parent {
            out.push(m);
            node = p;
        }
        out.reverse();
        out
    }
}

/// Bounded bidirectional search between two invariant vectors.
fn search<R: Coefficient>(
    l: &ComponentDecomposition,
    start: Vec<R>,
    goal: Vec<R>,
    moves: &[Move],
    budget: usize,
) -> Result<(Option<Vec<Move>>, SearchStats)> {
    let mut stats = SearchStats { budget, ..Default::default() };
    if start == goal {
        stats.states_seen = 1;
        return Ok((Some(Vec::new()), stats));
    }
    basis_for(l)?;
    let mut sides = [Side::new(start), Side::new(goal)];
    loop {
        // Expand the smaller frontier one full level.
        let which = if sides[0].frontier.len() <= sides[1].frontier.len() { 0 } else { 1 };
        if sides[which].frontier.is_empty() {
            stats.states_seen = sides[0].nodes.len() + sides[1].nodes.len();
            return Ok((None, stats));
        }
        let frontier = std::mem::take(&mut sides[which].frontier);
        let mut meetings: Vec<(Vec<usize>, usize, usize)> = Vec::new();
        let mut exhausted = false;
        for &node in &frontier {
            if stats.nodes_expanded >= budget {
                exhausted = true;
                break;
            }
            stats.nodes_expanded += 1;
            let st = InvariantVector::from_values(l, sides[which].nodes[node].key.clone())?.longitudes()?;
            for (mi, mv) in moves.iter().enumerate() {
                let mut next = st.clone();
                mv.apply_state(&mut next)?;
                let key = InvariantVector::of_longitudes(&next).into_values();
                if sides[which].index.contains_key(&key) {
                    continue;
                }
                let id = sides[which].nodes.len();
                sides[which].nodes.push(Node { key: key.clone(), parent: Some((node, mi)) });
                sides[which].index.insert(key.clone(), id);
                sides[which].frontier.push(id);
                if let Some(&other) = sides[1 - which].index.get(&key) {
                    let (fwd, bwd) = if which == 0 { (id, other) } else { (other, id) };
                    let mut w = sides[0].path(fwd);
                    let back = sides[1].path(bwd);
                    // The goal side walks forward from the goal; undo it in reverse.
                    w.extend(back.iter().rev().map(|&m| moves.len() + m));
                    meetings.push((w, fwd, bwd));
                }
            }
        }
        if !meetings.is_empty() {
            meetings.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
            let w = meetings[0]
                .0
                .iter()
                .map(|&m| if m < moves.len() { moves[m] } else { moves[m - moves.len()].inverse() })
                .collect();
            stats.states_seen = sides[0].nodes.len() + sides[1].nodes.len();
            return Ok((Some(w), stats));
        }
        if exhausted {
            stats.states_seen = sides[0].nodes.len() + sides[1].nodes.len();
            return Ok((None, stats));
        }
    }
}

fn decide(a: &ColoredStringLink, b: &ColoredStringLink, moves: &[Move], budget: usize) -> Result<DecisionOutcome> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch(a.ambient().to_string(), b.ambient().to_string()));
    }
    let (sa, sb) = (a.longitudes()?, b.longitudes()?);
    if let Some(cert) = screen(sa, sb) {
        return Ok(DecisionOutcome {
            verdict: Verdict::Distinct,
            witness: None,
            certificate: Some(cert),
            stats: SearchStats { budget, ..Default::default() },
        });
    }
    let va = a.invariant_vector()?.values().to_vec();
    let vb = b.invariant_vector()?.values().to_vec();
    let (witness, stats) = search(a.ambient(), va, vb, moves, budget)?;
    match witness {
        Some(w) => {
            let end = replay(a, &w)?;
            if end.invariant_vector()? != b.invariant_vector()? {
                return Err(Error::Inconsistent(format!("witness of length {} does not replay", w.len())));
            }
            Ok(DecisionOutcome { verdict: Verdict::Equivalent, witness: Some(w), certificate: None, stats })
        }
        None => Ok(DecisionOutcome { verdict: Verdict::Unknown, witness: None, certificate: None, stats }),
    }
}

/// Applies the moves of a witness in order.
pub fn replay(a: &ColoredStringLink, witness: &[Move]) -> Result<ColoredStringLink> {
    let mut cur = a.clone();
    for m in witness {
        cur = m.apply(&cur)?;
    }
    Ok(cur)
}

/// Whether the closures of `a` and `b` are equivalent colored links.
pub fn closure_equivalent(a: &ColoredStringLink, b: &ColoredStringLink, budget: usize) -> Result<DecisionOutcome> {
    let moves: Vec<Move> = scl_generator_set(a.ambient()).into_iter().map(Move::Scl).collect();
    decide(a, b, &moves, budget)
}

/// Whether the graph closures of `a` and `b` are component-homotopic.
pub fn gclosure_equivalent(a: &ColoredStringLink, b: &ColoredStringLink, budget: usize) -> Result<DecisionOutcome> {
    let moves: Vec<Move> = sg_generator_set(a.ambient()).into_iter().map(Move::Sg).collect();
    decide(a, b, &moves, budget)
}

/// Loop counts after contracting a spanning tree of each graph component.
pub fn bouquet_reduction(components: &[(usize, usize)]) -> Result<ComponentDecomposition> {
    let mut counts = Vec::with_capacity(components.len());
    for (k, &(v, e)) in components.iter().enumerate() {
        if v == 0 {
            return Err(Error::InvalidGraph(format!("component {} has no vertices", k + 1)));
        }
        if e + 1 < v {
            return Err(Error::InvalidGraph(format!(
                "component {} with {v} vertices and {e} edges is disconnected",
                k + 1
            )));
        }
        let loops = e + 1 - v;
        if loops == 0 {
            return Err(Error::InvalidGraph(format!("component {} is a tree and contracts to a point", k + 1)));
        }
        counts.push(loops);
    }
    ComponentDecomposition::new(counts).map_err(|e| Error::InvalidGraph(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deletion_sequences() {
        let d = delta_sequences(&[0, 1, 2]);
        // three pairs, each in two rotations
        assert_eq!(d.len(), 6);
        assert!(delta_sequences(&[0, 1]).is_empty());
    }

    #[test]
    fn bouquet_counts() {
        assert_eq!(bouquet_reduction(&[(1, 3)]).unwrap().counts(), &[3]);
        assert_eq!(bouquet_reduction(&[(2, 3)]).unwrap().counts(), &[2]);
        assert!(bouquet_reduction(&[(4, 3)]).is_err());
        assert!(bouquet_reduction(&[(5, 3)]).is_err());
    }

    #[test]
    fn valid_sequence_count() {
        let l = ComponentDecomposition::all_ones(3).unwrap();
        assert_eq!(all_valid_sequences(&l).len(), 6 + 6);
    }

    #[test]
    fn residues_are_canonical() {
        assert_eq!(residue(&-3i64, &2), 1);
        assert_eq!(residue(&-3i64, &0), -3);
    }
}
