//! Exact minimum k-component dominating sets by bitmask search.
//!
//! A set `D` is a k-component dominating set when every vertex outside `D`
//! has a neighbor in `D` and every component of `G[D]` has at least `k`
//! vertices. `k = 0` means plain domination.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::families::canonical_mops;
use crate::mop::{CanonicalForm, MopGraph, Pair};

pub const DEFAULT_GUARD: usize = 26;
/// Hard ceiling imposed by the 64-bit vertex masks.
pub const MAX_GUARD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("order {n} exceeds the solver guard {guard}")]
    TooLarge { n: usize, guard: usize },
    #[error("guard {0} exceeds the mask width {MAX_GUARD}")]
    GuardTooLarge(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is both required and forbidden")]
    Conflict(usize),
}

/// A vertex set claimed as a k-component dominating set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DomSet {
    vertices: Vec<usize>,
    k: usize,
}

impl DomSet {
    pub fn new(k: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = vertices.into_iter().collect();
        DomSet { vertices: set.into_iter().collect(), k }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn to_set(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }

    /// Checks the set against `g`.
    pub fn is_valid_for(&self, g: &MopGraph) -> bool {
        is_kcds(g, self.k, &self.vertices)
    }
}

/// Side conditions for the constrained search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Constraints {
    pub must_contain: Vec<usize>,
    /// At least one endpoint of each pair must be chosen.
    pub must_intersect: Vec<Pair>,
    pub forbidden: Vec<usize>,
    pub max_size: Option<usize>,
}

impl Constraints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn containing(mut self, v: usize) -> Self {
        self.must_contain.push(v);
        self
    }

    pub fn intersecting(mut self, a: usize, b: usize) -> Self {
        self.must_intersect.push((a, b));
        self
    }

    pub fn forbidding(mut self, v: usize) -> Self {
        self.forbidden.push(v);
        self
    }

    pub fn at_most(mut self, size: usize) -> Self {
        self.max_size = Some(size);
        self
    }

    /// True when `set` meets every side condition.
    pub fn admits(&self, set: &[usize]) -> bool {
        let has = |v: &usize| set.contains(v);
        self.must_contain.iter().all(has)
            && !self.forbidden.iter().any(has)
            && self.must_intersect.iter().all(|(a, b)| has(a) || has(b))
            && self.max_size.is_none_or(|m| set.len() <= m)
    }
}

/// Connected components of the subgraph induced by `set`, each sorted.
pub fn components(g: &MopGraph, set: &[usize]) -> Vec<Vec<usize>> {
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in &inside {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if inside.contains(&w) && seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// True when every vertex is dominated by `set`.
pub fn dominates(g: &MopGraph, set: &[usize]) -> bool {
    let inside: BTreeSet<usize> = set.iter().copied().collect();
    (0..g.order()).all(|v| inside.contains(&v) || g.neighbors(v).iter().any(|w| inside.contains(w)))
}

pub fn is_kcds(g: &MopGraph, k: usize, set: &[usize]) -> bool {
    if set.iter().any(|&v| v >= g.order()) {
        return false;
    }
    dominates(g, set) && components(g, set).iter().all(|c| c.len() >= k)
}

/// Exact solver with a configurable order guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Solver {
    guard: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Solver { guard: DEFAULT_GUARD }
    }
}

impl Solver {
    pub fn with_guard(guard: usize) -> Result<Self, SolveError> {
        if guard > MAX_GUARD {
            return Err(SolveError::GuardTooLarge(guard));
        }
        Ok(Solver { guard })
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    /// Minimum-cardinality set meeting the constraints, lexicographically
    /// smallest among those; `None` when no set qualifies.
    pub fn min_kcds(&self, g: &MopGraph, k: usize, c: &Constraints) -> Result<Option<DomSet>, SolveError> {
        let n = g.order();
        if n > self.guard {
            return Err(SolveError::TooLarge { n, guard: self.guard });
        }
        let search = Search::new(g, k, c)?;
        let max_deg = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
        let lower = [1, k, search.must.count_ones() as usize, n.div_ceil(max_deg + 1)]
            .into_iter()
            .max()
            .unwrap_or(1);
        let upper = c.max_size.unwrap_or(n).min(n);
        for size in lower..=upper {
            if let Some(mask) = search.find(size) {
                return Ok(Some(DomSet::new(k, (0..n).filter(|&v| mask >> v & 1 == 1))));
            }
        }
        Ok(None)
    }

    pub fn gamma_k(&self, g: &MopGraph, k: usize) -> Result<usize, SolveError> {
        let best = self.min_kcds(g, k, &Constraints::none())?;
        Ok(best.expect("the whole vertex set qualifies whenever n >= k").len())
    }
}

pub fn min_kcds(g: &MopGraph, k: usize, c: &Constraints) -> Result<Option<DomSet>, SolveError> {
    Solver::default().min_kcds(g, k, c)
}

pub fn gamma_k_exact(g: &MopGraph, k: usize) -> Result<usize, SolveError> {
    Solver::default().gamma_k(g, k)
}

struct Search {
    n: usize,
    k: usize,
    closed: Vec<u64>,
    open: Vec<u64>,
    must: u64,
    allowed: u64,
    pairs: Vec<u64>,
    /// `reach[s]`: vertices with an allowed closed neighbor at label >= s.
    reach: Vec<u64>,
    /// `cover[s]`: largest closed neighborhood among allowed labels >= s.
    cover: Vec<u32>,
    full: u64,
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn from(s: usize) -> u64 {
    if s >= 64 {
        0
    } else {
        !0u64 << s
    }
}

impl Search {
    fn new(g: &MopGraph, k: usize, c: &Constraints) -> Result<Self, SolveError> {
        let n = g.order();
        let check = |v: usize| if v < n { Ok(bit(v)) } else { Err(SolveError::VertexOutOfRange(v)) };
        let mut must = 0;
        for &v in &c.must_contain {
            must |= check(v)?;
        }
        let mut banned = 0;
        for &v in &c.forbidden {
            banned |= check(v)?;
        }
        if must & banned != 0 {
            return Err(SolveError::Conflict((must & banned).trailing_zeros() as usize));
        }
        let mut pairs = Vec::new();
        for &(a, b) in &c.must_intersect {
            pairs.push(check(a)? | check(b)?);
        }
        let full = if n == 64 { !0 } else { bit(n) - 1 };
        let allowed = full & !banned;
        let open: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | bit(w))).collect();
        let closed: Vec<u64> = (0..n).map(|v| open[v] | bit(v)).collect();
        let mut reach = vec![0u64; n + 1];
        let mut cover = vec![0u32; n + 1];
        for s in (0..n).rev() {
            reach[s] = reach[s + 1];
            cover[s] = cover[s + 1];
            if allowed & bit(s) != 0 {
                reach[s] |= closed[s];
                cover[s] = cover[s].max(closed[s].count_ones());
            }
        }
        Ok(Search { n, k, closed, open, must, allowed, pairs, reach, cover, full })
    }

    fn find(&self, size: usize) -> Option<u64> {
        self.dfs(0, size, 0, 0)
    }

    fn dfs(&self, start: usize, left: usize, chosen: u64, dominated: u64) -> Option<u64> {
        let undominated = self.full & !dominated;
        if left == 0 {
            return self.accept(chosen, undominated).then_some(chosen);
        }
        if undominated & !self.reach[start.min(self.n)] != 0 {
            return None;
        }
        if (self.cover[start.min(self.n)] as usize) * left < undominated.count_ones() as usize {
            return None;
        }
        let pending_must = self.must & from(start);
        if pending_must.count_ones() as usize > left {
            return None;
        }
        let ahead = self.allowed & from(start);
        if self.pairs.iter().any(|&p| p & chosen == 0 && p & ahead == 0) {
            return None;
        }
        if self.k >= 2 && !self.components_can_grow(chosen, start, left) {
            return None;
        }
        // Never skip past a required vertex.
        let last = if pending_must != 0 { pending_must.trailing_zeros() as usize } else { self.n - 1 };
        for a in start..=last.min(self.n - left) {
            if self.allowed & bit(a) == 0 {
                continue;
            }
            if let Some(found) = self.dfs(a + 1, left - 1, chosen | bit(a), dominated | self.closed[a]) {
                return Some(found);
            }
        }
        None
    }

    fn accept(&self, chosen: u64, undominated: u64) -> bool {
        undominated == 0
            && chosen & self.must == self.must
            && self.pairs.iter().all(|&p| p & chosen != 0)
            && (self.k <= 1 || self.component_sizes(chosen).all(|(size, _)| size >= self.k))
    }

    /// Each component of the chosen set with its open neighborhood.
    fn component_sizes(&self, chosen: u64) -> impl Iterator<Item = (usize, u64)> + '_ {
        let mut rest = chosen;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let seed = rest & rest.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.open[v] & chosen & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            let mut nbrs = 0;
            let mut m = comp;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                nbrs |= self.open[v];
            }
            Some((comp.count_ones() as usize, nbrs & !comp))
        })
    }

    /// A small component can only grow through vertices not yet decided, and
    /// at best absorbs every other component that can still grow as well.
    fn components_can_grow(&self, chosen: u64, start: usize, left: usize) -> bool {
        let ahead = self.allowed & from(start);
        let comps: Vec<(usize, u64)> = self.component_sizes(chosen).collect();
        let open_total: usize = comps.iter().filter(|(_, nbrs)| nbrs & ahead != 0).map(|(size, _)| size).sum();
        comps.iter().all(|&(size, nbrs)| size >= self.k || (nbrs & ahead != 0 && open_total + left >= self.k))
    }
}

/// Exact maximum of `gamma_k` over all MOPs of each order, with the
/// canonical forms attaining it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GammaTable {
    pub entries: BTreeMap<(usize, usize), GammaEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaEntry {
    pub gamma: usize,
    pub extremal: Vec<CanonicalForm>,
}

impl GammaTable {
    pub fn get(&self, k: usize, n: usize) -> Option<usize> {
        self.entries.get(&(k, n)).map(|e| e.gamma)
    }

    pub fn merge(&mut self, other: GammaTable) {
        self.entries.extend(other.entries);
    }

    /// Pairs of entries that break monotonicity in `n` (fixed `k`) or in `k`
    /// (fixed `n`), as human-readable messages.
    pub fn monotonicity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&(k, n), e) in &self.entries {
            if let Some(next) = self.get(k, n + 1) {
                if e.gamma > next {
                    out.push(format!("gamma_{k}({n}) = {} > gamma_{k}({}) = {next}", e.gamma, n + 1));
                }
            }
            if let Some(up) = self.get(k + 1, n) {
                if e.gamma > up {
                    out.push(format!("gamma_{k}({n}) = {} > gamma_{}({n}) = {up}", e.gamma, k + 1));
                }
            }
        }
        out
    }
}

/// Exhaustive table for one `k` over a range of orders, parallel over
/// canonical classes.
pub fn gamma_table(k: usize, orders: impl IntoIterator<Item = usize>) -> Result<GammaTable, SolveError> {
    gamma_table_with(Solver::default(), k, orders)
}

pub fn gamma_table_with(
    solver: Solver,
    k: usize,
    orders: impl IntoIterator<Item = usize>,
) -> Result<GammaTable, SolveError> {
    let mut table = GammaTable::default();
    for n in orders {
        if n < 3.max(k) {
            continue;
        }
        if n > solver.guard() {
            return Err(SolveError::TooLarge { n, guard: solver.guard() });
        }
        let forms = canonical_mops(n);
        let values: Vec<usize> =
            forms.par_iter().map(|c| solver.gamma_k(&c.graph(), k)).collect::<Result<_, _>>()?;
        let gamma = values.iter().copied().max().unwrap_or(0);
        let extremal =
            forms.iter().zip(&values).filter(|(_, &v)| v == gamma).map(|(c, _)| c.clone()).collect();
        table.entries.insert((k, n), GammaEntry { gamma, extremal });
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{fan, strip};

    #[test]
    fn kcds_basics() {
        let t = MopGraph::triangle();
        assert!(is_kcds(&t, 1, &[0]));
        assert!(!is_kcds(&t, 2, &[0]));
        assert!(is_kcds(&t, 2, &[0, 1]));
        assert!(!is_kcds(&t, 0, &[]));
        assert!(!is_kcds(&t, 1, &[5]));
    }

    #[test]
    fn strip_bottom_row() {
        let g = strip(3).unwrap();
        assert!(is_kcds(&g, 2, &[1, 2, 3]));
        assert!(is_kcds(&g, 3, &[1, 2, 3]));
    }

    #[test]
    fn small_minimums() {
        let f = fan(5).unwrap();
        assert_eq!(min_kcds(&f, 1, &Constraints::none()).unwrap().unwrap().vertices(), &[0]);
        assert_eq!(gamma_k_exact(&strip(5).unwrap(), 5).unwrap(), 5);
        assert_eq!(gamma_k_exact(&strip(4).unwrap(), 3).unwrap(), 4);
        assert_eq!(gamma_k_exact(&MopGraph::triangle(), 1).unwrap(), 1);
    }

    #[test]
    fn constraints_are_honored() {
        let f = fan(6).unwrap();
        let c = Constraints::none().forbidding(0);
        let d = min_kcds(&f, 1, &c).unwrap().unwrap();
        assert!(!d.contains(0));
        assert!(d.is_valid_for(&f));
        let c = Constraints::none().containing(3).intersecting(1, 5);
        let d = min_kcds(&f, 2, &c).unwrap().unwrap();
        assert!(c.admits(d.vertices()));
        assert!(min_kcds(&f, 1, &Constraints::none().forbidding(0).at_most(1)).unwrap().is_none());
    }

    #[test]
    fn zero_size_cannot_meet_an_edge() {
        let g = fan(4).unwrap();
        let c = Constraints::none().intersecting(1, 2).at_most(0);
        assert_eq!(min_kcds(&g, 0, &c).unwrap(), None);
    }

    #[test]
    fn guard_and_conflict() {
        let big = fan(30).unwrap();
        assert!(matches!(gamma_k_exact(&big, 1), Err(SolveError::TooLarge { .. })));
        assert_eq!(Solver::with_guard(40).unwrap().gamma_k(&big, 1).unwrap(), 1);
        assert!(Solver::with_guard(65).is_err());
        let c = Constraints::none().containing(1).forbidding(1);
        assert!(matches!(min_kcds(&fan(5).unwrap(), 1, &c), Err(SolveError::Conflict(1))));
    }

    #[test]
    fn tables_small() {
        let t = gamma_table(1, 3..=9).unwrap();
        let vals: Vec<usize> = (3..=9).map(|n| t.get(1, n).unwrap()).collect();
        assert_eq!(vals, vec![1, 1, 1, 2, 2, 2, 3]);
        let t = gamma_table(2, 5..=11).unwrap();
        let vals: Vec<usize> = (5..=11).map(|n| t.get(2, n).unwrap()).collect();
        assert_eq!(vals, vec![2, 2, 2, 3, 3, 4, 4]);
        assert!(t.monotonicity_violations().is_empty());
    }
}
