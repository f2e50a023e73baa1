//! The exceptional families: marked pieces `(G, xy)` and the graphs glued from
//! an odd number of them around a triangulated inner cycle.
//!
//! A piece has even `ell >= 4`, order `ell + 1` and an outer edge `xy` whose
//! end degrees are `{2, 3}`. It belongs to the piece family when `G - {x, y}`
//! has no `(ell/2 - 2)`-component dominating set of that size meeting the edge
//! `x'y'` formed by the other outer neighbors of `x` and `y`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::construct::lemmas::{contain_one, LemmaError};
use crate::exact::{components, dominates, is_kcds, Constraints, DomSet, SolveError, Solver, MAX_GUARD};
use crate::families::canonical_mops;
use crate::mop::{MopError, MopGraph, Pair, SubMop};

/// Largest `ell` that [`enum_gcal`] will enumerate.
pub const ENUM_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HkError {
    #[error("not a marked pair: {0}")]
    NotMarkedPair(String),
    #[error("need an odd number of at least 3 pieces, at most 2k-1; got {0}")]
    BadPieceCount(usize),
    #[error("piece {index} has ell = {ell}, outside the even range [4, 2k]")]
    PieceOutOfRange { index: usize, ell: usize },
    #[error("piece sizes sum to {sum}, below the minimum {min}")]
    SumTooSmall { sum: usize, min: usize },
    #[error("piece {index} is not in the piece family")]
    NotInFamily { index: usize },
    #[error("inner cycle triangulation is invalid: {0}")]
    BadTriangulation(MopError),
    #[error("vertex {0} lies on the inner cycle")]
    UOnCycle(usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("ell = {0} is too large to enumerate")]
    TooLarge(usize),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Mop(#[from] MopError),
    #[error(transparent)]
    Lemma(#[from] LemmaError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// A MOP with a marked outer edge `xy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPair {
    pub g: MopGraph,
    pub x: usize,
    pub y: usize,
    pub x_prime: usize,
    pub y_prime: usize,
}

impl MarkedPair {
    pub fn new(g: MopGraph, x: usize, y: usize) -> Result<Self, HkError> {
        let n = g.order();
        if !g.is_outer_edge(x, y) {
            return Err(HkError::NotMarkedPair(format!("{x}-{y} is not an outer edge")));
        }
        if n < 5 || n.is_multiple_of(2) {
            return Err(HkError::NotMarkedPair(format!("order {n} is not odd and at least 5")));
        }
        let mut degs = [g.degree(x), g.degree(y)];
        degs.sort_unstable();
        if degs != [2, 3] {
            return Err(HkError::NotMarkedPair(format!("end degrees {degs:?} are not {{2, 3}}")));
        }
        let other = |v: usize, not: usize| {
            let (a, b) = g.outer_neighbors(v);
            if a == not {
                b
            } else {
                a
            }
        };
        let (x_prime, y_prime) = (other(x, y), other(y, x));
        Ok(MarkedPair { g, x, y, x_prime, y_prime })
    }

    pub fn ell(&self) -> usize {
        self.g.order() - 1
    }

    /// `G - {x, y}` with its labels in `G`.
    pub fn reduced(&self) -> Result<SubMop, MopError> {
        self.g.delete_vertices(&[self.x, self.y])
    }

    /// The same pair with the roles of `x` and `y` exchanged.
    pub fn swapped(&self) -> MarkedPair {
        MarkedPair { g: self.g.clone(), x: self.y, y: self.x, x_prime: self.y_prime, y_prime: self.x_prime }
    }

    /// Relabels so that `x = 0` and `y = 1`.
    pub fn normalized(&self) -> MarkedPair {
        let n = self.g.order();
        let g = if (self.x + 1) % n == self.y {
            self.g.relabel_dihedral(n - self.x, false)
        } else {
            self.g.relabel_dihedral(self.x, true)
        };
        MarkedPair::new(g, 0, 1).expect("relabeling keeps the marking")
    }

    /// Key that is equal for pairs related by an isomorphism mapping the
    /// marked edge onto the marked edge, in either direction.
    pub fn marked_canonical(&self) -> Vec<Pair> {
        let a = self.normalized().g.chords().to_vec();
        let b = self.swapped().normalized().g.chords().to_vec();
        a.min(b)
    }
}

fn gcal_query(mp: &MarkedPair) -> Result<Option<DomSet>, HkError> {
    let half = mp.ell() / 2 - 2;
    let reduced = mp.reduced()?;
    let (xp, yp) = (reduced.local(mp.x_prime).expect("kept"), reduced.local(mp.y_prime).expect("kept"));
    let c = Constraints::none().intersecting(xp, yp).at_most(half);
    let found = Solver::with_guard(MAX_GUARD)?.min_kcds(&reduced.graph, half, &c)?;
    Ok(found.map(|d| DomSet::new(half, reduced.lift(d.vertices()))))
}

/// Whether the pair lies in the piece family. For `ell = 4` the condition is
/// vacuous: an empty set never meets an edge.
pub fn is_in_gcal(mp: &MarkedPair) -> Result<bool, HkError> {
    Ok(gcal_query(mp)?.is_none())
}

/// A small set that disqualifies the pair, in the labels of `mp.g`.
pub fn gcal_witness(mp: &MarkedPair) -> Result<Option<DomSet>, HkError> {
    gcal_query(mp)
}

/// All members of order `ell + 1` up to marked isomorphism, each normalized
/// to `x = 0`, `y = 1`, ordered by their key.
pub fn enum_gcal(ell: usize) -> Result<Vec<MarkedPair>, HkError> {
    if ell < 4 || ell % 2 == 1 {
        return Err(HkError::NotMarkedPair(format!("ell = {ell} must be even and at least 4")));
    }
    if ell > ENUM_LIMIT {
        return Err(HkError::TooLarge(ell));
    }
    let n = ell + 1;
    let found: Vec<Vec<(Vec<Pair>, MarkedPair)>> = canonical_mops(n)
        .par_iter()
        .map(|cf| {
            let g = cf.graph();
            let mut out = Vec::new();
            for x in 0..n {
                let Ok(mp) = MarkedPair::new(g.clone(), x, (x + 1) % n) else { continue };
                if is_in_gcal(&mp)? {
                    let mp = mp.normalized();
                    out.push((mp.marked_canonical(), mp));
                }
            }
            Ok(out)
        })
        .collect::<Result<_, HkError>>()?;
    let mut unique = BTreeMap::new();
    for (key, mp) in found.into_iter().flatten() {
        unique.entry(key).or_insert(mp);
    }
    Ok(unique.into_values().collect())
}

/// One piece of a decomposition: the arc of the outer cycle from `x` (local 0)
/// to `y` (local `ell`), where the marked edge is the chord `xy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkPiece {
    pub ell: usize,
    pub sub: SubMop,
}

impl HkPiece {
    pub fn x(&self) -> usize {
        self.sub.to_parent[0]
    }

    pub fn y(&self) -> usize {
        self.sub.to_parent[self.ell]
    }

    pub fn marked(&self) -> MarkedPair {
        MarkedPair::new(self.sub.graph.clone(), 0, self.ell).expect("pieces are marked pairs")
    }

    /// Whether `v` lies in the piece away from its two cycle vertices.
    pub fn has_interior(&self, v: usize) -> bool {
        matches!(self.sub.local(v), Some(i) if i != 0 && i != self.ell)
    }
}

/// Witness that a graph is exceptional for `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkDecomposition {
    pub k: usize,
    pub p: usize,
    /// Inner cycle vertices in increasing label order.
    pub cycle: Vec<usize>,
    pub pieces: Vec<HkPiece>,
    pub inner_chords: Vec<Pair>,
}

impl HkDecomposition {
    pub fn piece_sizes(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.ell).collect()
    }

    pub fn on_cycle(&self, v: usize) -> bool {
        self.cycle.contains(&v)
    }

    /// Index of the piece holding `v` off the inner cycle.
    pub fn piece_containing(&self, v: usize) -> Option<usize> {
        self.pieces.iter().position(|p| p.has_interior(v))
    }

    fn from_cycle(g: &MopGraph, k: usize, cycle: Vec<usize>) -> Result<Self, MopError> {
        let q = cycle.len();
        let pieces = (0..q)
            .map(|i| {
                let (a, b) = (cycle[i], cycle[(i + 1) % q]);
                Ok(HkPiece { ell: g.arc_len(a, b), sub: g.arc_subgraph(a, b)? })
            })
            .collect::<Result<Vec<_>, MopError>>()?;
        let inner_chords = (0..q)
            .flat_map(|i| (i + 2..q).map(move |j| (i, j)))
            .filter(|&(i, j)| !(i == 0 && j == q - 1) && g.has_edge(cycle[i], cycle[j]))
            .collect();
        Ok(HkDecomposition { k, p: (q - 1) / 2, cycle, pieces, inner_chords })
    }
}

fn min_sum(k: usize, p: usize) -> usize {
    4 * k * p + 2 * p + 2
}

/// Glues pieces around an inner cycle. Piece `i` runs from its `x` to its `y`
/// and `y_i` is identified with `x_{i+1}`; `inner_chords` triangulates the
/// inner polygon with corners `0..pieces.len()`.
pub fn build_hk(k: usize, pieces: &[MarkedPair], inner_chords: &[Pair]) -> Result<(MopGraph, HkDecomposition), HkError> {
    let q = pieces.len();
    if q < 3 || q.is_multiple_of(2) || (q - 1) / 2 + 1 > k {
        return Err(HkError::BadPieceCount(q));
    }
    let p = (q - 1) / 2;
    for (index, mp) in pieces.iter().enumerate() {
        let ell = mp.ell();
        if ell % 2 == 1 || ell < 4 || ell > 2 * k {
            return Err(HkError::PieceOutOfRange { index, ell });
        }
        if !is_in_gcal(mp)? {
            return Err(HkError::NotInFamily { index });
        }
    }
    let n: usize = pieces.iter().map(MarkedPair::ell).sum();
    if n < min_sum(k, p) {
        return Err(HkError::SumTooSmall { sum: n, min: min_sum(k, p) });
    }
    MopGraph::new(q, inner_chords).map_err(HkError::BadTriangulation)?;

    let mut base = Vec::with_capacity(q);
    let mut chords = Vec::new();
    let mut at = 0;
    for mp in pieces {
        base.push(at);
        let m = mp.g.order();
        let step = if (mp.x + 1) % m == mp.y { m - 1 } else { 1 };
        let mut pos = vec![0; m];
        for j in 0..m {
            pos[(mp.x + j * step) % m] = (at + j) % n;
        }
        chords.extend(mp.g.chords().iter().map(|&(a, b)| (pos[a], pos[b])));
        chords.push((at, (at + mp.ell()) % n));
        at += mp.ell();
    }
    chords.extend(inner_chords.iter().map(|&(a, b)| (base[a], base[b])));
    let chords: Vec<Pair> = chords.into_iter().map(|(a, b)| crate::mop::norm(a, b)).collect();
    let g = MopGraph::new(n, &chords)?;
    let dec = HkDecomposition::from_cycle(&g, k, base)?;
    Ok((g, dec))
}

/// Whether the family for `k` has members of order `n`.
pub fn family_has_order(k: usize, n: usize) -> bool {
    n.is_multiple_of(2) && (1..k).any(|p| min_sum(k, p) <= n && n <= 2 * k * (2 * p + 1))
}

/// A graph in the family for `k` with the given even order, using the first
/// enumerated piece of each size and a fan on the inner cycle.
pub fn hk_member(k: usize, n: usize) -> Result<(MopGraph, HkDecomposition), HkError> {
    let p = (1..k)
        .find(|&p| n.is_multiple_of(2) && min_sum(k, p) <= n && n <= 2 * k * (2 * p + 1))
        .ok_or_else(|| HkError::NotMarkedPair(format!("no member of order {n} for k = {k}")))?;
    let q = 2 * p + 1;
    let mut ells = vec![2 * k; q];
    let mut excess = 2 * k * q - n;
    let mut i = 0;
    while excess > 0 {
        if ells[i % q] > 4 {
            ells[i % q] -= 2;
            excess -= 2;
        }
        i += 1;
    }
    let mut cache: HashMap<usize, MarkedPair> = HashMap::new();
    let mut pieces = Vec::with_capacity(q);
    for ell in ells {
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(ell) {
            let first = enum_gcal(ell)?.into_iter().next().ok_or(HkError::TooLarge(ell))?;
            e.insert(first);
        }
        pieces.push(cache[&ell].clone());
    }
    let inner: Vec<Pair> = (2..q - 1).map(|j| (0, j)).collect();
    build_hk(k, &pieces, &inner)
}

/// Searches for a decomposition witnessing that `g` is exceptional for `k`.
pub fn detect_hk(g: &MopGraph, k: usize) -> Result<Option<HkDecomposition>, HkError> {
    let n = g.order();
    if k < 2 || n % 2 == 1 || n < 4 * k + 4 || n > 4 * k * k - 2 * k {
        return Ok(None);
    }
    let mut detector = Detector { g, k, cache: HashMap::new() };
    for start in 0..2 * k {
        let mut cycle = vec![start];
        if detector.extend(&mut cycle)? {
            return Ok(Some(HkDecomposition::from_cycle(g, k, cycle)?));
        }
    }
    Ok(None)
}

struct Detector<'a> {
    g: &'a MopGraph,
    k: usize,
    cache: HashMap<(usize, usize), bool>,
}

impl Detector<'_> {
    fn piece_ok(&mut self, from: usize, len: usize) -> Result<bool, HkError> {
        if let Some(&ok) = self.cache.get(&(from, len)) {
            return Ok(ok);
        }
        let n = self.g.order();
        let to = (from + len) % n;
        let ok = self.g.has_edge(from, to) && {
            let sub = self.g.arc_subgraph(from, to)?;
            match MarkedPair::new(sub.graph, 0, len) {
                Ok(mp) => is_in_gcal(&mp)?,
                Err(_) => false,
            }
        };
        self.cache.insert((from, len), ok);
        Ok(ok)
    }

    fn extend(&mut self, cycle: &mut Vec<usize>) -> Result<bool, HkError> {
        let (n, k) = (self.g.order(), self.k);
        let first = cycle[0];
        let cur = *cycle.last().expect("non-empty");
        let used = cur - first;
        let q = cycle.len();
        let closing = n - used;
        if q >= 3 && q % 2 == 1 && closing.is_multiple_of(2) && (4..=2 * k).contains(&closing) {
            let p = (q - 1) / 2;
            if p < k && n >= min_sum(k, p) && self.piece_ok(cur, closing)? {
                return Ok(true);
            }
        }
        if q >= 2 * k - 1 {
            return Ok(false);
        }
        for step in (4..=2 * k).step_by(2) {
            if used + step + 4 > n || cur + step >= n {
                break;
            }
            if self.piece_ok(cur, step)? {
                cycle.push(cur + step);
                if self.extend(cycle)? {
                    return Ok(true);
                }
                cycle.pop();
            }
        }
        Ok(false)
    }
}

/// Optimal set of an exceptional graph, of size `n/2 - p`: each
/// piece contributes a set anchored alternately at its `y` and its `x`.
pub fn hk_kcds(g: &MopGraph, dec: &HkDecomposition) -> Result<DomSet, HkError> {
    let mut set = BTreeSet::new();
    for (i, piece) in dec.pieces.iter().enumerate() {
        let anchor = if i % 2 == 0 { piece.ell } else { 0 };
        let d = contain_one(&piece.sub.graph, piece.ell / 2, anchor)?;
        set.extend(piece.sub.lift(&d));
    }
    let list: Vec<usize> = set.iter().copied().collect();
    let target = g.order() / 2 - dec.p;
    if list.len() != target || !is_kcds(g, dec.k, &list) {
        return Err(HkError::Invariant(format!("alternating union {list:?} is not a valid set of size {target}")));
    }
    Ok(DomSet::new(dec.k, list))
}

/// A dominating set split into a connected part holding `u` and a part whose
/// components all have at least `k` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiDomSet {
    pub d1: BTreeSet<usize>,
    pub d2: BTreeSet<usize>,
    pub u: usize,
    pub k: usize,
    /// Inner cycle vertices the set avoids.
    pub excluded_cycle: Vec<usize>,
}

impl SemiDomSet {
    pub fn union(&self) -> BTreeSet<usize> {
        self.d1.union(&self.d2).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.d1.len() + self.d2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.d1.contains(&v) || self.d2.contains(&v)
    }
}

/// Semi set with `u` in the small part, from the piece holding `u` and the
/// alternating union over the other pieces taken forward from it.
pub fn hk_semi(g: &MopGraph, dec: &HkDecomposition, u: usize) -> Result<SemiDomSet, HkError> {
    hk_semi_all(g, dec, u)?
        .into_iter()
        .next()
        .ok_or_else(|| HkError::Invariant(format!("no semi set anchored at {u}")))
}

/// Every valid semi set the construction yields, walking the other pieces
/// forward and then backward from the piece holding `u`.
pub fn hk_semi_all(g: &MopGraph, dec: &HkDecomposition, u: usize) -> Result<Vec<SemiDomSet>, HkError> {
    if u >= g.order() {
        return Err(HkError::VertexOutOfRange(u));
    }
    if dec.on_cycle(u) {
        return Err(HkError::UOnCycle(u));
    }
    let j = dec.piece_containing(u).ok_or(HkError::VertexOutOfRange(u))?;
    let home = &dec.pieces[j];
    let q = dec.pieces.len();
    let reduced = home.sub.graph.delete_vertices(&[0, home.ell])?;
    let u_local = reduced.local(home.sub.local(u).expect("u is in its piece")).expect("u is interior");
    let small = contain_one(&reduced.graph, home.ell / 2 - 1, u_local)?;
    let d1: BTreeSet<usize> = reduced.lift(&small).iter().map(|&v| home.sub.to_parent[v]).collect();

    let mut out = Vec::new();
    for forward in [true, false] {
        let mut d2 = BTreeSet::new();
        for t in 0..q - 1 {
            let (idx, anchor_y) = if forward { ((j + 1 + t) % q, t % 2 == 0) } else { ((j + q - 1 - t) % q, t % 2 == 1) };
            let piece = &dec.pieces[idx];
            let d = contain_one(&piece.sub.graph, piece.ell / 2, if anchor_y { piece.ell } else { 0 })?;
            d2.extend(piece.sub.lift(&d));
        }
        let excluded_cycle = dec.cycle.iter().copied().filter(|v| !d1.contains(v) && !d2.contains(v)).collect();
        let semi = SemiDomSet { d1: d1.clone(), d2, u, k: dec.k, excluded_cycle };
        if semi_is_valid(g, dec, &semi) && !out.contains(&semi) {
            out.push(semi);
        }
    }
    Ok(out)
}

/// Checks the semi set conditions against `g` and `dec`.
pub fn semi_is_valid(g: &MopGraph, dec: &HkDecomposition, s: &SemiDomSet) -> bool {
    let all: Vec<usize> = s.union().into_iter().collect();
    let d1: Vec<usize> = s.d1.iter().copied().collect();
    let d2: Vec<usize> = s.d2.iter().copied().collect();
    let min_ell = dec.pieces.iter().map(|p| p.ell).min().unwrap_or(0);
    s.d1.is_disjoint(&s.d2)
        && dominates(g, &all)
        && s.d1.contains(&s.u)
        && components(g, &d1).len() == 1
        && d1.len() + 1 >= min_ell / 2
        && components(g, &d2).iter().all(|c| c.len() >= dec.k)
        && all.len() + dec.p < g.order() / 2
        && g.neighbors(s.u).iter().all(|v| !dec.on_cycle(*v) || !s.contains(*v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::fan;

    fn h1() -> MopGraph {
        MopGraph::new(12, &[(1, 11), (2, 5), (2, 6), (2, 10), (2, 11), (3, 5), (6, 10), (7, 9), (7, 10)]).unwrap()
    }

    #[test]
    fn marked_pair_checks_degrees() {
        let g = fan(5).unwrap();
        assert!(MarkedPair::new(g.clone(), 0, 1).is_err());
        assert!(MarkedPair::new(g.clone(), 1, 3).is_err());
        let mp = MarkedPair::new(g, 3, 4).unwrap();
        assert_eq!((mp.x_prime, mp.y_prime), (2, 0));
        assert_eq!(mp.normalized().x, 0);
    }

    #[test]
    fn order_five_piece_is_unique() {
        let all = enum_gcal(4).unwrap();
        assert_eq!(all.len(), 1);
        assert!(is_in_gcal(&all[0]).unwrap());
    }

    #[test]
    fn pieces_exist_for_small_ells() {
        for ell in [4, 6, 8] {
            let all = enum_gcal(ell).unwrap();
            assert!(!all.is_empty());
            assert!(all.iter().all(|mp| mp.g.order() == ell + 1));
        }
        assert!(matches!(enum_gcal(16), Err(HkError::TooLarge(16))));
    }

    #[test]
    fn build_and_detect_round_trip() {
        let piece = enum_gcal(4).unwrap().remove(0);
        let (g, dec) = build_hk(2, &vec![piece.clone(); 3], &[]).unwrap();
        assert_eq!(g.order(), 12);
        let found = detect_hk(&g, 2).unwrap().unwrap();
        assert_eq!(found.p, 1);
        assert_eq!(found.piece_sizes(), vec![4, 4, 4]);
        assert_eq!(hk_kcds(&g, &dec).unwrap().len(), 5);
        let bad = build_hk(2, &[piece.clone(), piece.clone()], &[]);
        assert!(matches!(bad, Err(HkError::BadPieceCount(2))));
    }

    #[test]
    fn sum_bound_is_enforced() {
        let four = enum_gcal(4).unwrap().remove(0);
        let six = enum_gcal(6).unwrap().remove(0);
        assert!(build_hk(3, &[six.clone(), six.clone(), four.clone()], &[]).is_ok());
        let err = build_hk(3, &[six, four.clone(), four], &[]).unwrap_err();
        assert_eq!(err, HkError::SumTooSmall { sum: 14, min: 16 });
    }

    #[test]
    fn h1_is_exceptional() {
        let g = h1();
        let dec = detect_hk(&g, 2).unwrap().unwrap();
        assert_eq!(dec.p, 1);
        assert_eq!(hk_kcds(&g, &dec).unwrap().len(), 5);
        assert!(detect_hk(&g, 1).unwrap().is_none());
        assert!(detect_hk(&fan(12).unwrap(), 2).unwrap().is_none());
        for u in (0..12).filter(|v| !dec.on_cycle(*v)) {
            let s = hk_semi(&g, &dec, u).unwrap();
            assert!(s.len() <= 4);
        }
        assert!(matches!(hk_semi(&g, &dec, dec.cycle[0]), Err(HkError::UOnCycle(_))));
    }
}
