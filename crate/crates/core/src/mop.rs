//! Maximal outerplanar graphs stored as a labeled polygon plus its chords.
//!
//! Vertices `0..n` sit in this cyclic order on the outer Hamiltonian cycle.
//! Outer edges `{i, i+1 mod n}` are implicit; only chords are stored, as
//! sorted pairs in lexicographic order.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A chord or edge as an ordered pair `(a, b)` with `a < b`.
pub type Pair = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MopError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("pair {0:?} is a loop or an outer edge, not a chord")]
    DegenerateChord(Pair),
    #[error("chord {0:?} listed twice")]
    DuplicateChord(Pair),
    #[error("expected {expected} chords for order {n}, found {found}")]
    WrongChordCount { n: usize, expected: usize, found: usize },
    #[error("chords {0:?} and {1:?} cross")]
    CrossingChords(Pair, Pair),
    #[error("{0:?} is not a chord")]
    NotAChord(Pair),
    #[error("{0:?} is not an outer edge")]
    NotOuterEdge(Pair),
    #[error("{0:?} is not an edge")]
    NotAnEdge(Pair),
    #[error("cannot shrink a triangle")]
    TooSmall,
    #[error("edge {0:?} has no triangle on the requested side")]
    NoTriangleOnSide(Pair),
    #[error("vertex deletion does not leave a maximal outerplanar graph")]
    ResultNotMop,
}

/// Normalizes an unordered pair to `(min, max)`.
pub fn norm(a: usize, b: usize) -> Pair {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// True when the two normalized chords strictly interleave.
pub fn crosses(c: Pair, d: Pair) -> bool {
    let (a, b) = c;
    let (x, y) = d;
    (a < x && x < b && b < y) || (x < a && a < y && y < b)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MopGraph {
    n: usize,
    chords: Vec<Pair>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for MopGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MopGraph(n={}, chords={:?})", self.n, self.chords)
    }
}

impl MopGraph {
    /// Checks every invariant and returns the normalized graph.
    pub fn new(n: usize, chords: &[Pair]) -> Result<Self, MopError> {
        if n < 3 {
            return Err(MopError::TooFewVertices(n));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in chords {
            for v in [a, b] {
                if v >= n {
                    return Err(MopError::VertexOutOfRange { vertex: v, n });
                }
            }
            let c = norm(a, b);
            if c.1 - c.0 < 2 || c == (0, n - 1) {
                return Err(MopError::DegenerateChord(c));
            }
            if !seen.insert(c) {
                return Err(MopError::DuplicateChord(c));
            }
        }
        if seen.len() != n - 3 {
            return Err(MopError::WrongChordCount { n, expected: n - 3, found: seen.len() });
        }
        let sorted: Vec<Pair> = seen.into_iter().collect();
        // Sweep with a stack: chords sorted by (a, b) are laminar iff each new
        // chord either nests inside or sits after the chords still open.
        let mut by_start = sorted.clone();
        by_start.sort_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1)));
        let mut open: Vec<Pair> = Vec::new();
        for &c in &by_start {
            while let Some(&top) = open.last() {
                if top.1 <= c.0 {
                    open.pop();
                } else {
                    break;
                }
            }
            if let Some(&top) = open.last() {
                if c.1 > top.1 {
                    return Err(MopError::CrossingChords(top, c));
                }
            }
            open.push(c);
        }
        Ok(Self::from_sorted_unchecked(n, sorted))
    }

    fn from_sorted_unchecked(n: usize, chords: Vec<Pair>) -> Self {
        let mut adj = vec![Vec::with_capacity(4); n];
        for (v, list) in adj.iter_mut().enumerate() {
            list.push((v + 1) % n);
            list.push((v + n - 1) % n);
        }
        for &(a, b) in &chords {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        MopGraph { n, chords, adj }
    }

    /// Builds a graph from an arbitrary edge list whose outer cycle is `0..n`.
    /// Outer edges in the list are ignored.
    pub fn from_edges(n: usize, edges: &[Pair]) -> Result<Self, MopError> {
        let mut chords: Vec<Pair> = edges
            .iter()
            .map(|&(a, b)| norm(a, b))
            .filter(|&(a, b)| !(b - a == 1 || (a == 0 && b + 1 == n)))
            .collect();
        chords.sort_unstable();
        chords.dedup();
        Self::new(n, &chords)
    }

    pub fn triangle() -> Self {
        Self::from_sorted_unchecked(3, Vec::new())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &[Pair] {
        &self.chords
    }

    pub fn edge_count(&self) -> usize {
        self.n + self.chords.len()
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The two neighbors of `v` on the outer cycle, as `(v-1, v+1) mod n`.
    pub fn outer_neighbors(&self, v: usize) -> (usize, usize) {
        ((v + self.n - 1) % self.n, (v + 1) % self.n)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn is_outer_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n && b < self.n && ((a + 1) % self.n == b || (b + 1) % self.n == a)
    }

    pub fn is_chord(&self, a: usize, b: usize) -> bool {
        self.chords.binary_search(&norm(a, b)).is_ok()
    }

    /// All edges, outer ones included, as sorted pairs.
    pub fn edges(&self) -> Vec<Pair> {
        let mut out: Vec<Pair> = (0..self.n).map(|i| norm(i, (i + 1) % self.n)).collect();
        out.extend_from_slice(&self.chords);
        out.sort_unstable();
        out
    }

    pub fn degree_two_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 2).collect()
    }

    /// Number of steps from `a` forward (increasing labels, wrapping) to `b`.
    pub fn arc_len(&self, a: usize, b: usize) -> usize {
        (b + self.n - a) % self.n
    }

    /// Sub-MOP on the forward arc `from, from+1, ..., to`. The endpoints must be
    /// joined by an edge, and the arc must hold at least 3 vertices. Local
    /// vertex `i` is original vertex `(from + i) mod n`.
    pub fn arc_subgraph(&self, from: usize, to: usize) -> Result<SubMop, MopError> {
        let len = self.arc_len(from, to);
        if !self.has_edge(from, to) {
            return Err(MopError::NotAnEdge(norm(from, to)));
        }
        if len < 2 {
            return Err(MopError::NoTriangleOnSide(norm(from, to)));
        }
        let size = len + 1;
        let to_parent: Vec<usize> = (0..size).map(|i| (from + i) % self.n).collect();
        let local = |v: usize| -> Option<usize> {
            let d = self.arc_len(from, v);
            (d <= len).then_some(d)
        };
        let mut chords = Vec::with_capacity(size - 3);
        for &(a, b) in &self.chords {
            if let (Some(la), Some(lb)) = (local(a), local(b)) {
                let c = norm(la, lb);
                if c != (0, len) {
                    chords.push(c);
                }
            }
        }
        chords.sort_unstable();
        debug_assert_eq!(chords.len(), size - 3);
        Ok(SubMop { graph: Self::from_sorted_unchecked(size, chords), to_parent })
    }

    /// Third vertex of the triangle on `(a, b)` lying on the side of the edge
    /// that contains `toward`.
    pub fn apex(&self, a: usize, b: usize, toward: usize) -> Result<usize, MopError> {
        if !self.has_edge(a, b) {
            return Err(MopError::NotAnEdge(norm(a, b)));
        }
        // Orient so that `toward` lies on the forward arc from `from` to `to`.
        let (from, to) = if self.arc_len(a, toward) < self.arc_len(a, b) { (a, b) } else { (b, a) };
        if toward == a || toward == b || self.arc_len(from, toward) >= self.arc_len(from, to) {
            return Err(MopError::NoTriangleOnSide(norm(a, b)));
        }
        self.apex_on_arc(from, to)
    }

    /// Apex of the edge `from-to` on the forward arc from `from` to `to`.
    pub fn apex_on_arc(&self, from: usize, to: usize) -> Result<usize, MopError> {
        let len = self.arc_len(from, to);
        if len < 2 || !self.has_edge(from, to) {
            return Err(MopError::NoTriangleOnSide(norm(from, to)));
        }
        self.adj[from]
            .iter()
            .copied()
            .find(|&w| {
                let d = self.arc_len(from, w);
                d > 0 && d < len && self.has_edge(w, to)
            })
            .ok_or(MopError::NoTriangleOnSide(norm(from, to)))
    }

    /// The two sub-MOPs generated by a chord.
    pub fn split_by_chord(&self, a: usize, b: usize) -> Result<SplitResult, MopError> {
        let (a, b) = norm(a, b);
        if !self.is_chord(a, b) {
            return Err(MopError::NotAChord((a, b)));
        }
        let side_a = self.arc_subgraph(a, b)?;
        let side_b = self.arc_subgraph(b, a)?;
        Ok(SplitResult { m_a: b - a, m_b: self.n - (b - a), side_a, side_b })
    }

    /// Merges the endpoints of an outer edge. For `{i, i+1}` vertex `i+1` is
    /// folded into `i`; for the wrap edge `{n-1, 0}` vertex `n-1` folds into 0.
    pub fn contract_outer_edge(&self, a: usize, b: usize) -> Result<Contraction, MopError> {
        if !self.is_outer_edge(a, b) {
            return Err(MopError::NotOuterEdge(norm(a, b)));
        }
        if self.n == 3 {
            return Err(MopError::TooSmall);
        }
        let (keep, gone) = if (a + 1) % self.n == b { (a, b) } else { (b, a) };
        let (keep, gone) = if gone == 0 { (gone, keep) } else { (keep, gone) };
        // `gone` is removed; labels above it shift down by one.
        let map: Vec<usize> = (0..self.n)
            .map(|v| {
                let v = if v == gone { keep } else { v };
                if v > gone {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        let m = self.n - 1;
        let mut chords: Vec<Pair> = self
            .chords
            .iter()
            .map(|&(x, y)| norm(map[x], map[y]))
            .filter(|&(x, y)| x != y && y - x >= 2 && !(x == 0 && y == m - 1))
            .collect();
        chords.sort_unstable();
        chords.dedup();
        let graph = Self::new(m, &chords)?;
        let merged = map[keep];
        Ok(Contraction { graph, map, merged })
    }

    /// Removes a vertex set and checks the remainder is again a MOP whose
    /// outer cycle is the inherited cyclic order.
    pub fn delete_vertices(&self, set: &[usize]) -> Result<SubMop, MopError> {
        let gone: BTreeSet<usize> = set.iter().copied().collect();
        if let Some(&v) = gone.iter().find(|&&v| v >= self.n) {
            return Err(MopError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let to_parent: Vec<usize> = (0..self.n).filter(|v| !gone.contains(v)).collect();
        let m = to_parent.len();
        if m < 3 {
            return Err(MopError::ResultNotMop);
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in to_parent.iter().enumerate() {
            local[v] = i;
        }
        for i in 0..m {
            if !self.has_edge(to_parent[i], to_parent[(i + 1) % m]) {
                return Err(MopError::ResultNotMop);
            }
        }
        let mut edges = Vec::new();
        for &(a, b) in &self.edges() {
            if local[a] != usize::MAX && local[b] != usize::MAX {
                edges.push(norm(local[a], local[b]));
            }
        }
        if edges.len() != 2 * m - 3 {
            return Err(MopError::ResultNotMop);
        }
        let graph = Self::from_edges(m, &edges).map_err(|_| MopError::ResultNotMop)?;
        Ok(SubMop { graph, to_parent })
    }

    /// Applies the dihedral relabeling `v -> (shift ± v) mod n`.
    pub fn relabel_dihedral(&self, shift: usize, reflect: bool) -> MopGraph {
        let n = self.n;
        let f = |v: usize| if reflect { (shift + n - v) % n } else { (v + shift) % n };
        let mut chords: Vec<Pair> = self.chords.iter().map(|&(a, b)| norm(f(a), f(b))).collect();
        chords.sort_unstable();
        Self::from_sorted_unchecked(n, chords)
    }

    /// Lexicographically least chord list over all 2n dihedral relabelings.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.n;
        let mut best: Option<Vec<Pair>> = None;
        let mut buf = Vec::with_capacity(self.chords.len());
        for reflect in [false, true] {
            for shift in 0..n {
                buf.clear();
                buf.extend(self.chords.iter().map(|&(a, b)| {
                    let f = |v: usize| if reflect { (shift + n - v) % n } else { (v + shift) % n };
                    norm(f(a), f(b))
                }));
                buf.sort_unstable();
                if best.as_ref().is_none_or(|b| buf < *b) {
                    best = Some(buf.clone());
                }
            }
        }
        CanonicalForm { n, chords: best.unwrap_or_default() }
    }

    /// Triangular faces as sorted triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::with_capacity(self.n - 2);
        let mut stack = vec![(0usize, self.n - 1)];
        while let Some((i, j)) = stack.pop() {
            if j - i < 2 {
                continue;
            }
            let c = (i + 1..j)
                .find(|&c| self.has_edge(i, c) && self.has_edge(c, j))
                .expect("every polygon edge of a MOP carries a triangle");
            out.push([i, c, j]);
            stack.push((i, c));
            stack.push((c, j));
        }
        out.sort_unstable();
        out
    }

    /// Canonical compact JSON: `{"n":5,"chords":[[0,2],[0,3]]}`.
    pub fn to_json(&self) -> String {
        let body: Vec<String> = self.chords.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
        format!("{{\"n\":{},\"chords\":[{}]}}", self.n, body.join(","))
    }
}

/// A sub-MOP together with the labels its vertices carry in the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubMop {
    pub graph: MopGraph,
    pub to_parent: Vec<usize>,
}

impl SubMop {
    /// Local label of a parent vertex, if present.
    pub fn local(&self, v: usize) -> Option<usize> {
        self.to_parent.iter().position(|&w| w == v)
    }

    pub fn lift<'a>(&'a self, set: impl IntoIterator<Item = &'a usize>) -> BTreeSet<usize> {
        set.into_iter().map(|&v| self.to_parent[v]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub side_a: SubMop,
    pub side_b: SubMop,
    pub m_a: usize,
    pub m_b: usize,
}

/// Result of merging the endpoints of an outer edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub graph: MopGraph,
    /// Old label to new label; both endpoints map to `merged`.
    pub map: Vec<usize>,
    pub merged: usize,
}

/// Dihedral-invariant form used as an isomorphism key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub chords: Vec<Pair>,
}

impl CanonicalForm {
    pub fn graph(&self) -> MopGraph {
        MopGraph::from_sorted_unchecked(self.n, self.chords.clone())
    }

    /// Short textual key such as `6:0-2,0-3,0-4`.
    pub fn id(&self) -> String {
        let body: Vec<String> = self.chords.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        format!("{}:{}", self.n, body.join(","))
    }
}
