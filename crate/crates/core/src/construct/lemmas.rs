//! Fixed-size constructions on small MOPs: orders `2k+1`, `2k+2`, `2k+3`.
//!
//! Every function returns a set of exactly the advertised size and checks it
//! before returning; a failed check is reported as
//! [`LemmaError::Invariant`].

use std::collections::BTreeSet;

use thiserror::Error;

use crate::exact::{is_kcds, DomSet};
use crate::mop::{MopError, MopGraph, SubMop};
use crate::floor_bound;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("order {n} not allowed here: {expected}")]
    WrongOrder { n: usize, expected: String },
    #[error("vertex {0} has degree below 3")]
    DegreeTooSmall(usize),
    #[error(transparent)]
    Mop(#[from] MopError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub(crate) type Set = BTreeSet<usize>;

fn wrong_order(n: usize, expected: impl Into<String>) -> LemmaError {
    LemmaError::WrongOrder { n, expected: expected.into() }
}

/// A graph obtained from a parent by deletions and edge contractions, with
/// the parent vertices folded into each label.
#[derive(Debug, Clone)]
pub(crate) struct Quotient {
    pub graph: MopGraph,
    pub back: Vec<Vec<usize>>,
    pub merged: Option<usize>,
}

impl Quotient {
    pub fn from_sub(sub: &SubMop) -> Self {
        Quotient { graph: sub.graph.clone(), back: sub.to_parent.iter().map(|&v| vec![v]).collect(), merged: None }
    }

    pub fn identity(g: &MopGraph) -> Self {
        Quotient { graph: g.clone(), back: (0..g.order()).map(|v| vec![v]).collect(), merged: None }
    }

    /// Label carrying parent vertex `v`.
    pub fn label(&self, v: usize) -> Option<usize> {
        self.back.iter().position(|b| b.contains(&v))
    }

    /// Merges the outer edge between two labels.
    pub fn contract(&self, a: usize, b: usize) -> Result<Self, MopError> {
        let c = self.graph.contract_outer_edge(a, b)?;
        let mut back = vec![Vec::new(); c.graph.order()];
        for (old, &new) in c.map.iter().enumerate() {
            back[new].extend_from_slice(&self.back[old]);
        }
        for b in &mut back {
            b.sort_unstable();
        }
        Ok(Quotient { graph: c.graph, back, merged: Some(c.merged) })
    }

    /// Maps a set back to the parent. Plain labels map to their single parent
    /// vertex; the merged label maps to `instead`.
    pub fn lift(&self, set: &Set, instead: &[usize]) -> Set {
        let mut out = Set::new();
        for &v in set {
            if Some(v) == self.merged {
                out.extend(instead.iter().copied());
            } else {
                out.extend(self.back[v].iter().copied());
            }
        }
        out
    }
}

/// Sub-MOP generated by the edge `ab` on the side that avoids `w`.
pub(crate) fn side_without(g: &MopGraph, a: usize, b: usize, w: usize) -> Result<SubMop, MopError> {
    let inside_ab = g.arc_len(a, w) < g.arc_len(a, b) && w != a;
    if inside_ab {
        g.arc_subgraph(b, a)
    } else {
        g.arc_subgraph(a, b)
    }
}

/// Third vertex of the single triangle on the outer edge `xy`.
pub(crate) fn outer_apex(g: &MopGraph, x: usize, y: usize) -> Result<usize, MopError> {
    if (x + 1) % g.order() == y {
        g.apex_on_arc(y, x)
    } else {
        g.apex_on_arc(x, y)
    }
}

fn check_outer(g: &MopGraph, x: usize, y: usize) -> Result<(), LemmaError> {
    if g.is_outer_edge(x, y) {
        Ok(())
    } else {
        Err(MopError::NotOuterEdge(crate::mop::norm(x, y)).into())
    }
}

/// Adds the smallest vertex adjacent to the set until it has `size` vertices.
pub(crate) fn pad(g: &MopGraph, set: &mut Set, size: usize) -> Result<(), LemmaError> {
    while set.len() < size {
        let next = (0..g.order())
            .find(|v| !set.contains(v) && g.neighbors(*v).iter().any(|w| set.contains(w)))
            .ok_or_else(|| LemmaError::Invariant("nothing left to pad with".into()))?;
        set.insert(next);
    }
    if set.len() > size {
        return Err(LemmaError::Invariant(format!("set of size {} exceeds {size}", set.len())));
    }
    Ok(())
}

fn verify(g: &MopGraph, k: usize, set: &Set, size: usize, what: &str) -> Result<(), LemmaError> {
    let list: Vec<usize> = set.iter().copied().collect();
    if set.len() != size || !is_kcds(g, k, &list) {
        return Err(LemmaError::Invariant(format!(
            "{what}: {list:?} is not a {k}-component dominating set of size {size} in {g:?}"
        )));
    }
    Ok(())
}

/// A `(n-3)/2`-component dominating set of size `(n-3)/2` on odd order
/// `n >= 5`. Deletes the smallest-label degree-2 vertex, contracts its
/// neighbors and recurses.
pub fn lemma2_set(g: &MopGraph) -> Result<DomSet, LemmaError> {
    let k = (g.order().saturating_sub(3)) / 2;
    Ok(DomSet::new(k, lemma2(g)?))
}

pub(crate) fn lemma2(g: &MopGraph) -> Result<Set, LemmaError> {
    let n = g.order();
    if n < 5 || n.is_multiple_of(2) {
        return Err(wrong_order(n, "odd order at least 5"));
    }
    let k = (n - 3) / 2;
    if n == 5 {
        let hub = (0..n)
            .find(|&v| g.degree(v) == 4)
            .ok_or_else(|| LemmaError::Invariant("order-5 MOP without a universal vertex".into()))?;
        return Ok(Set::from([hub]));
    }
    let x = g.degree_two_vertices()[0];
    let (a, b) = g.outer_neighbors(x);
    let (u, v) = (a.min(b), a.max(b));
    let del = Quotient::from_sub(&g.delete_vertices(&[x])?);
    let q = del.contract(del.label(u).expect("kept"), del.label(v).expect("kept"))?;
    let inner = lemma2(&q.graph)?;
    let star = q.merged.expect("contracted");
    let mut set = q.lift(&inner, &[]);
    if inner.contains(&star) {
        set.extend([u, v]);
    } else if g.neighbors(u).iter().any(|w| set.contains(w)) {
        set.insert(u);
    } else {
        set.insert(v);
    }
    verify(g, k, &set, k, "contraction recursion")?;
    Ok(set)
}

/// Order `2k+1`: a k-component dominating set of size `k` containing `u`.
pub fn lemma4_i(g: &MopGraph, k: usize, u: usize) -> Result<DomSet, LemmaError> {
    Ok(DomSet::new(k, contain_one(g, k, u)?))
}

pub(crate) fn contain_one(g: &MopGraph, k: usize, u: usize) -> Result<Set, LemmaError> {
    let n = g.order();
    if k == 0 || n != 2 * k + 1 {
        return Err(wrong_order(n, format!("2k+1 with k = {k}")));
    }
    if k == 1 {
        return Ok(Set::from([u]));
    }
    let mut set = lemma2(g)?;
    if !set.insert(u) {
        let extra = (0..n).find(|v| !set.contains(v)).expect("set is smaller than the graph");
        set.insert(extra);
    }
    verify(g, k, &set, k, "containing a vertex")?;
    if !set.contains(&u) {
        return Err(LemmaError::Invariant(format!("{u} missing from {set:?}")));
    }
    Ok(set)
}

/// Order `2k+2`: a k-component dominating set of size `k` meeting the outer
/// edge `xy`.
pub fn lemma4_ii(g: &MopGraph, k: usize, x: usize, y: usize) -> Result<DomSet, LemmaError> {
    Ok(DomSet::new(k, meet_edge(g, k, x, y)?))
}

pub(crate) fn meet_edge(g: &MopGraph, k: usize, x: usize, y: usize) -> Result<Set, LemmaError> {
    let n = g.order();
    if k == 0 || n != 2 * k + 2 {
        return Err(wrong_order(n, format!("2k+2 with k = {k}")));
    }
    check_outer(g, x, y)?;
    let set = if k == 1 {
        let hub = if g.degree(x) == 3 { x } else { y };
        Set::from([hub])
    } else {
        let q = Quotient::identity(g).contract(x, y)?;
        let inner = lemma2(&q.graph)?;
        if inner.contains(&q.merged.expect("contracted")) {
            q.lift(&inner, &[x, y])
        } else {
            let mut set = q.lift(&inner, &[]);
            let pick = if g.neighbors(x).iter().any(|w| set.contains(w)) { x } else { y };
            set.insert(pick);
            set
        }
    };
    verify(g, k, &set, k, "meeting an edge")?;
    if !set.contains(&x) && !set.contains(&y) {
        return Err(LemmaError::Invariant(format!("{set:?} misses edge {x}-{y}")));
    }
    Ok(set)
}

/// The two sides hanging off the triangle `xyz` of an outer edge `xy`:
/// `gx` is generated by `yz` away from `x`, `gy` by `xz` away from `y`.
pub(crate) struct Ear {
    pub z: usize,
    pub gx: SubMop,
    pub gy: SubMop,
}

impl Ear {
    pub fn new(g: &MopGraph, x: usize, y: usize) -> Result<Self, LemmaError> {
        let z = outer_apex(g, x, y)?;
        let gx = side_without(g, y, z, x)?;
        let gy = side_without(g, x, z, y)?;
        Ok(Ear { z, gx, gy })
    }

    pub fn lx(&self) -> usize {
        self.gx.graph.order() - 1
    }

    pub fn ly(&self) -> usize {
        self.gy.graph.order() - 1
    }
}

pub(crate) fn local(sub: &SubMop, v: usize) -> usize {
    sub.local(v).expect("vertex lies in this side")
}

/// Order `2k+1` with `x`, `y` both of degree at least 3: a set of size `k`
/// containing both ends of the outer edge `xy`.
pub fn lemma4_iii(g: &MopGraph, k: usize, x: usize, y: usize) -> Result<DomSet, LemmaError> {
    Ok(DomSet::new(k, contain_edge(g, k, x, y)?))
}

pub(crate) fn contain_edge(g: &MopGraph, k: usize, x: usize, y: usize) -> Result<Set, LemmaError> {
    let n = g.order();
    if k == 0 || n != 2 * k + 1 {
        return Err(wrong_order(n, format!("2k+1 with k = {k}")));
    }
    check_outer(g, x, y)?;
    for v in [x, y] {
        if g.degree(v) < 3 {
            return Err(LemmaError::DegreeTooSmall(v));
        }
    }
    let ear = Ear::new(g, x, y)?;
    let (lx, ly, z) = (ear.lx(), ear.ly(), ear.z);
    let mut set = if lx % 2 == 0 {
        let dx = contain_one(&ear.gx.graph, lx / 2, local(&ear.gx, y))?;
        let dy = contain_one(&ear.gy.graph, ly / 2, local(&ear.gy, x))?;
        let mut s = ear.gx.lift(&dx);
        s.extend(ear.gy.lift(&dy));
        s
    } else {
        let dx = meet_edge(&ear.gx.graph, (lx - 1) / 2, local(&ear.gx, y), local(&ear.gx, z))?;
        let dy = meet_edge(&ear.gy.graph, (ly - 1) / 2, local(&ear.gy, x), local(&ear.gy, z))?;
        let mut s = ear.gx.lift(&dx);
        s.extend(ear.gy.lift(&dy));
        s.extend([x, y]);
        s
    };
    pad(g, &mut set, k)?;
    verify(g, k, &set, k, "containing an edge")?;
    if !set.contains(&x) || !set.contains(&y) {
        return Err(LemmaError::Invariant(format!("{set:?} misses {x} or {y}")));
    }
    Ok(set)
}

/// Order `2k+2` with `deg(x) >= 3`: a set of size `k` containing `x`, using
/// the outer edge from `x` to `x+1`.
pub fn lemma4_iv(g: &MopGraph, k: usize, x: usize) -> Result<DomSet, LemmaError> {
    let y = (x + 1) % g.order().max(1);
    Ok(DomSet::new(k, contain_one_even(g, k, x, y)?))
}

/// As [`lemma4_iv`] with an explicit outer edge `xy`.
pub(crate) fn contain_one_even(g: &MopGraph, k: usize, x: usize, y: usize) -> Result<Set, LemmaError> {
    let n = g.order();
    if k == 0 || n != 2 * k + 2 {
        return Err(wrong_order(n, format!("2k+2 with k = {k}")));
    }
    check_outer(g, x, y)?;
    if g.degree(x) < 3 {
        return Err(LemmaError::DegreeTooSmall(x));
    }
    let set = if k == 1 {
        Set::from([x])
    } else if g.degree(y) == 2 {
        let rest = g.delete_vertices(&[y])?;
        let d = contain_one(&rest.graph, k, local(&rest, x))?;
        rest.lift(&d)
    } else {
        let ear = Ear::new(g, x, y)?;
        let (lx, ly, z) = (ear.lx(), ear.ly(), ear.z);
        let mut s = if lx % 2 == 1 {
            let dy = contain_one(&ear.gy.graph, ly / 2, local(&ear.gy, x))?;
            let dx = meet_edge(&ear.gx.graph, (lx - 1) / 2, local(&ear.gx, y), local(&ear.gx, z))?;
            let mut s = ear.gy.lift(&dy);
            s.extend(ear.gx.lift(&dx));
            s
        } else {
            let dy = meet_edge(&ear.gy.graph, (ly - 1) / 2, local(&ear.gy, x), local(&ear.gy, z))?;
            let dx = contain_one(&ear.gx.graph, lx / 2, local(&ear.gx, z))?;
            let mut s = ear.gy.lift(&dy);
            s.extend(ear.gx.lift(&dx));
            s.insert(x);
            s
        };
        pad(g, &mut s, k)?;
        s
    };
    verify(g, k, &set, k, "containing a vertex, even order")?;
    if !set.contains(&x) {
        return Err(LemmaError::Invariant(format!("{x} missing from {set:?}")));
    }
    Ok(set)
}

/// Orders `2k+1..=4k+3`: a k-component dominating set of size at most
/// `floor(kn/(2k+1))`.
pub fn small_case(g: &MopGraph, k: usize) -> Result<DomSet, LemmaError> {
    let n = g.order();
    if k == 0 || n < 2 * k + 1 || n > 4 * k + 3 {
        return Err(wrong_order(n, format!("between 2k+1 and 4k+3 with k = {k}")));
    }
    let set = if n == 2 * k + 1 {
        contain_one(g, k, 0)?
    } else if n % 2 == 1 {
        lemma2(g)?
    } else {
        meet_edge(g, (n - 2) / 2, 0, 1)?
    };
    let list: Vec<usize> = set.iter().copied().collect();
    if set.len() > floor_bound(k, n) || !is_kcds(g, k, &list) {
        return Err(LemmaError::Invariant(format!("small order set {list:?} fails for k = {k}")));
    }
    Ok(DomSet::new(k, set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{enum_mops, fan, strip};

    #[test]
    fn order_five_takes_the_hub() {
        for g in enum_mops(5, false) {
            let d = lemma2_set(&g).unwrap();
            assert_eq!(d.len(), 1);
            assert_eq!(g.degree(d.vertices()[0]), 4);
        }
    }

    #[test]
    fn strip_two() {
        let g = strip(2).unwrap();
        let d = lemma2_set(&g).unwrap();
        assert_eq!(d.len(), 2);
        assert!(is_kcds(&g, 2, d.vertices()));
    }

    #[test]
    fn trivial_levels() {
        assert_eq!(lemma4_i(&MopGraph::triangle(), 1, 0).unwrap().vertices(), &[0]);
        let sq = MopGraph::new(4, &[(0, 2)]).unwrap();
        assert_eq!(lemma4_ii(&sq, 1, 0, 1).unwrap().vertices(), &[0]);
        assert_eq!(lemma4_ii(&sq, 1, 1, 2).unwrap().vertices(), &[2]);
    }

    #[test]
    fn wrong_orders_are_rejected() {
        assert!(matches!(lemma2_set(&fan(6).unwrap()), Err(LemmaError::WrongOrder { .. })));
        assert!(matches!(lemma4_i(&fan(6).unwrap(), 2, 0), Err(LemmaError::WrongOrder { .. })));
        assert!(matches!(lemma4_iii(&fan(5).unwrap(), 2, 3, 4), Err(LemmaError::DegreeTooSmall(4))));
        assert!(matches!(lemma4_iv(&fan(6).unwrap(), 2, 1), Err(LemmaError::DegreeTooSmall(1))));
    }

    #[test]
    fn small_case_sizes() {
        let d = small_case(&strip(2).unwrap(), 1).unwrap();
        assert!(d.len() <= 2);
        for k in 1..=4 {
            assert_eq!(small_case(&strip(k).unwrap(), k).unwrap().len(), k);
        }
    }

    #[test]
    fn every_variant_on_every_small_mop() {
        for n in 3..=11 {
            for g in enum_mops(n, false) {
                if n % 2 == 1 {
                    let k = (n - 1) / 2;
                    if n >= 5 {
                        assert_eq!(lemma2_set(&g).unwrap().len(), k - 1);
                    }
                    for u in 0..n {
                        assert!(lemma4_i(&g, k, u).unwrap().contains(u));
                        let (x, y) = (u, (u + 1) % n);
                        if g.degree(x) >= 3 && g.degree(y) >= 3 {
                            let d = lemma4_iii(&g, k, x, y).unwrap();
                            assert!(d.contains(x) && d.contains(y));
                        }
                    }
                } else if n >= 4 {
                    let k = (n - 2) / 2;
                    for x in 0..n {
                        let y = (x + 1) % n;
                        let d = lemma4_ii(&g, k, x, y).unwrap();
                        assert!(d.contains(x) || d.contains(y));
                        for (a, b) in [(x, y), (y, x)] {
                            if g.degree(a) >= 3 {
                                assert!(contain_one_even(&g, k, a, b).unwrap().contains(&a));
                            }
                        }
                    }
                }
            }
        }
    }
}
