//! Named graph families and general populations (exhaustive and random).
//!
//! Labeling conventions, frozen by golden files:
//!
//! * `strip(m)`: bottom row `b_0..b_{m+1}` gets labels `0..=m+1`, top row
//!   `t_0..t_m` gets `t_j = 2m+2-j`. Chords are `t_j b_{j+1}` for `j < m` and
//!   `t_j b_j` for `1 <= j <= m`. The degree-2 vertices are `b_0` and
//!   `b_{m+1}`; the bottom interior `1..=m` is a minimum `k`-component
//!   dominating set for every `k` with `m/2 <= k <= m`.
//! * `strip_minus(m)` deletes `b_{m+1}` from `strip(m)`.
//! * Ladder arms (`fig5_graph`, `fig6_graph`): each arm is a ladder of rungs
//!   `(P_j, Q_j)` with a tip vertex adjacent to `P_1` and `Q_1`, diagonals `Q_{j+1} P_j`, and its
//!   base rung on an inner hub polygon. The hub is fan-triangulated from the
//!   base `P` of the first arm. Going around the outer cycle, arm `i` lists
//!   `Q_r, ..., Q_1, tip, P_1, ..., P_r`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::mop::{norm, CanonicalForm, MopGraph, Pair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(FamilyError::OutOfRange(msg()))
    }
}

/// Named family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Fan { n: usize },
    Strip { m: usize },
    StripMinus { m: usize },
    Fig5 { k: usize, s: usize },
    Fig6 { k: usize, s: usize, t: usize },
    Fig6Even { k: usize, s: usize, t: usize },
}

impl FamilySpec {
    pub fn build(self) -> Result<MopGraph, FamilyError> {
        match self {
            FamilySpec::Fan { n } => fan(n),
            FamilySpec::Strip { m } => strip(m),
            FamilySpec::StripMinus { m } => strip_minus(m),
            FamilySpec::Fig5 { k, s } => fig5_graph(k, s),
            FamilySpec::Fig6 { k, s, t } => fig6_graph(k, s, t),
            FamilySpec::Fig6Even { k, s, t } => fig6_graph_even(k, s, t),
        }
    }
}

pub fn fan(n: usize) -> Result<MopGraph, FamilyError> {
    check(n >= 3, || format!("fan needs n >= 3, got {n}"))?;
    let chords: Vec<Pair> = (2..n - 1).map(|i| (0, i)).collect();
    Ok(MopGraph::new(n, &chords).expect("fan chords are non-crossing"))
}

pub fn strip(m: usize) -> Result<MopGraph, FamilyError> {
    check(m >= 1, || format!("strip needs m >= 1, got {m}"))?;
    let n = 2 * m + 3;
    let top = |j: usize| 2 * m + 2 - j;
    let mut chords = Vec::with_capacity(2 * m);
    for j in 0..m {
        chords.push(norm(top(j), j + 1));
    }
    for j in 1..=m {
        chords.push(norm(top(j), j));
    }
    Ok(MopGraph::new(n, &chords).expect("strip chords are non-crossing"))
}

pub fn strip_minus(m: usize) -> Result<MopGraph, FamilyError> {
    let g = strip(m)?;
    Ok(g.delete_vertices(&[m + 1]).expect("removing an ear keeps a MOP").graph)
}

/// Ladder arms around a hub; `arms[i]` is the rung count of arm `i`.
/// An arm with zero rungs is a single hub vertex.
fn ladder_arms(arms: &[usize]) -> MopGraph {
    let mut chords = Vec::new();
    // Hub vertices in cyclic order.
    let mut hub = Vec::new();
    let mut base = 0;
    for &r in arms {
        if r == 0 {
            hub.push(base);
            base += 1;
            continue;
        }
        let q = |j: usize| base + r - j;
        let p = |j: usize| base + r + j;
        for j in 1..=r {
            chords.push(norm(p(j), q(j)));
        }
        for j in 1..r {
            chords.push(norm(q(j + 1), p(j)));
        }
        hub.push(q(r));
        hub.push(p(r));
        base += 2 * r + 1;
    }
    let n = base;
    if hub.len() >= 4 {
        // Fan from the second hub vertex, skipping its two hub neighbors.
        let apex = hub[1];
        for &v in &hub[3..] {
            chords.push(norm(apex, v));
        }
    }
    MopGraph::from_edges(n, &chords).expect("ladder arms form a MOP")
}

/// `s` ladder arms of `k` rungs each, order `s(2k+1)`.
pub fn fig5_graph(k: usize, s: usize) -> Result<MopGraph, FamilyError> {
    check(k >= 1 && s >= 1, || format!("fig5 needs k, s >= 1, got k={k}, s={s}"))?;
    Ok(ladder_arms(&vec![k; s]))
}

/// `fig5_graph(k, s)` plus a short arm of `t-1` rungs, order `s(2k+1)+2t-1`.
pub fn fig6_graph(k: usize, s: usize, t: usize) -> Result<MopGraph, FamilyError> {
    check(k >= 1 && s >= 1, || format!("fig6 needs k, s >= 1, got k={k}, s={s}"))?;
    check((1..=k).contains(&t), || format!("fig6 needs 1 <= t <= k, got t={t}, k={k}"))?;
    let mut arms = vec![k; s];
    arms.push(t - 1);
    Ok(ladder_arms(&arms))
}

/// `fig6_graph(k, s, t)` with one more hub vertex, order `s(2k+1)+2t`.
pub fn fig6_graph_even(k: usize, s: usize, t: usize) -> Result<MopGraph, FamilyError> {
    check(k >= 1 && s >= 1, || format!("fig6 needs k, s >= 1, got k={k}, s={s}"))?;
    check((1..=k).contains(&t), || format!("fig6 needs 1 <= t <= k, got t={t}, k={k}"))?;
    let mut arms = vec![k; s];
    arms.push(t - 1);
    arms.push(0);
    Ok(ladder_arms(&arms))
}

/// Calls `visit` on the chord list of every triangulation of the `n`-gon
/// whose root edge `(0, n-1)` has apex `first_apex` (all apexes when `None`).
fn visit_triangulations(n: usize, first_apex: Option<usize>, visit: &mut dyn FnMut(&[Pair])) {
    fn rec(pending: &mut Vec<Pair>, chords: &mut Vec<Pair>, visit: &mut dyn FnMut(&[Pair])) {
        let Some((i, j)) = pending.pop() else {
            visit(chords);
            return;
        };
        if j - i < 2 {
            rec(pending, chords, visit);
        } else {
            for a in i + 1..j {
                expand(i, a, j, pending, chords, visit);
            }
        }
        pending.push((i, j));
    }
    fn expand(
        i: usize,
        a: usize,
        j: usize,
        pending: &mut Vec<Pair>,
        chords: &mut Vec<Pair>,
        visit: &mut dyn FnMut(&[Pair]),
    ) {
        let before = chords.len();
        if a - i >= 2 {
            chords.push((i, a));
        }
        if j - a >= 2 {
            chords.push((a, j));
        }
        pending.push((a, j));
        pending.push((i, a));
        rec(pending, chords, visit);
        pending.pop();
        pending.pop();
        chords.truncate(before);
    }
    let mut pending = Vec::new();
    let mut chords = Vec::new();
    match first_apex {
        None => {
            pending.push((0, n - 1));
            rec(&mut pending, &mut chords, visit);
        }
        Some(a) => expand(0, a, n - 1, &mut pending, &mut chords, visit),
    }
}

/// Visits every labeled triangulation of the `n`-gon.
pub fn for_each_mop(n: usize, mut f: impl FnMut(MopGraph)) {
    assert!(n >= 3, "polygon order must be at least 3");
    visit_triangulations(n, None, &mut |chords| {
        let mut sorted = chords.to_vec();
        sorted.sort_unstable();
        f(MopGraph::new(n, &sorted).expect("enumerated triangulation"));
    });
}

/// All triangulations of the `n`-gon (Catalan(n-2) of them); with `dedup`,
/// one representative per canonical form, sorted by canonical form.
pub fn enum_mops(n: usize, dedup: bool) -> Vec<MopGraph> {
    if dedup {
        return canonical_mops(n).into_iter().map(|c| c.graph()).collect();
    }
    let mut out = Vec::new();
    for_each_mop(n, |g| out.push(g));
    out
}

/// Canonical forms of all MOPs of order `n`, sorted. Parallel over the apex
/// of the root edge.
pub fn canonical_mops(n: usize) -> Vec<CanonicalForm> {
    assert!(n >= 3, "polygon order must be at least 3");
    let sets: Vec<BTreeSet<CanonicalForm>> = (1..n - 1)
        .into_par_iter()
        .map(|a| {
            let mut set = BTreeSet::new();
            visit_triangulations(n, Some(a), &mut |chords| {
                let mut sorted = chords.to_vec();
                sorted.sort_unstable();
                let g = MopGraph::new(n, &sorted).expect("enumerated triangulation");
                set.insert(g.canonical_form());
            });
            set
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in sets {
        all.extend(s);
    }
    all.into_iter().collect()
}

pub fn catalan(m: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..m as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Uniform random labeled triangulation of the `n`-gon, deterministic in
/// `seed`. A uniform binary tree with `n-2` internal nodes is grown by leaf
/// insertion and mapped to the polygon: the node for interval `(i, j)` whose
/// left subtree has `L` internal nodes gets apex `i + L + 1`.
pub fn random_mop(n: usize, seed: u64) -> MopGraph {
    assert!(n >= 3, "polygon order must be at least 3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let internal = n - 2;
    // Node 0 starts as the single leaf; children are `None` for leaves.
    let mut left: Vec<Option<usize>> = vec![None];
    let mut right: Vec<Option<usize>> = vec![None];
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut root = 0;
    for _ in 0..internal {
        let target = rng.gen_range(0..left.len());
        let leaf_left = rng.gen_bool(0.5);
        let node = left.len();
        let leaf = node + 1;
        left.push(None);
        right.push(None);
        parent.push(parent[target]);
        left.push(None);
        right.push(None);
        parent.push(Some(node));
        match parent[target] {
            Some(p) => {
                if left[p] == Some(target) {
                    left[p] = Some(node);
                } else {
                    right[p] = Some(node);
                }
            }
            None => root = node,
        }
        parent[target] = Some(node);
        if leaf_left {
            left[node] = Some(leaf);
            right[node] = Some(target);
        } else {
            left[node] = Some(target);
            right[node] = Some(leaf);
        }
    }
    let total = left.len();
    let mut size = vec![0usize; total];
    // Internal-node counts per subtree, children before parents.
    let mut order = Vec::with_capacity(total);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        if let (Some(l), Some(r)) = (left[v], right[v]) {
            stack.push(l);
            stack.push(r);
        }
    }
    for &v in order.iter().rev() {
        if let (Some(l), Some(r)) = (left[v], right[v]) {
            size[v] = 1 + size[l] + size[r];
        }
    }
    let mut chords = Vec::with_capacity(n - 3);
    let mut work = vec![(root, 0usize, n - 1)];
    while let Some((v, i, j)) = work.pop() {
        let (Some(l), Some(r)) = (left[v], right[v]) else { continue };
        let a = i + size[l] + 1;
        if a - i >= 2 {
            chords.push((i, a));
        }
        if j - a >= 2 {
            chords.push((a, j));
        }
        work.push((l, i, a));
        work.push((r, a, j));
    }
    chords.sort_unstable();
    MopGraph::new(n, &chords).expect("tree bijection yields a triangulation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_and_strip_orders() {
        assert_eq!(fan(3).unwrap(), MopGraph::triangle());
        assert_eq!(strip(1).unwrap().order(), 5);
        assert_eq!(strip(1).unwrap().chords(), &[(1, 3), (1, 4)]);
        assert_eq!(strip(2).unwrap().degree_two_vertices(), vec![0, 3]);
        assert_eq!(strip_minus(1).unwrap().order(), 4);
        assert_eq!(strip_minus(2).unwrap().order(), 6);
        assert!(strip(0).is_err());
    }

    #[test]
    fn ladder_orders() {
        for k in 1..=5 {
            for s in 1..=4 {
                assert_eq!(fig5_graph(k, s).unwrap().order(), s * (2 * k + 1));
                for t in 1..=k {
                    assert_eq!(fig6_graph(k, s, t).unwrap().order(), s * (2 * k + 1) + 2 * t - 1);
                    assert_eq!(fig6_graph_even(k, s, t).unwrap().order(), s * (2 * k + 1) + 2 * t);
                }
            }
        }
        assert!(fig6_graph(2, 1, 3).is_err());
        assert!(fig6_graph(2, 1, 0).is_err());
    }

    #[test]
    fn single_arm_is_a_ladder_with_one_ear() {
        let g = fig5_graph(5, 1).unwrap();
        assert_eq!(g.degree_two_vertices().len(), 2);
        assert_eq!(g.chords().len(), 8);
    }

    #[test]
    fn counts_small() {
        assert_eq!(enum_mops(5, false).len(), 5);
        assert_eq!(enum_mops(5, true).len(), 1);
        assert_eq!(enum_mops(6, false).len(), 14);
        assert_eq!(enum_mops(6, true).len(), 3);
        for n in 3..=10 {
            assert_eq!(enum_mops(n, false).len() as u64, catalan(n - 2));
        }
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_mop(3, 9), MopGraph::triangle());
        assert_eq!(random_mop(40, 7), random_mop(40, 7));
        assert_eq!(random_mop(50, 1).order(), 50);
    }
}
