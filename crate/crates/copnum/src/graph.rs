//! Undirected simple graphs on at most 62 vertices.
//!
//! Adjacency is one `u64` bitmask per vertex, which keeps neighborhood
//! algebra down to a handful of word operations and makes values cheap to
//! clone and safe to share across worker threads. Everything is immutable:
//! "mutators" hand back a new graph.
//!
//! Vertex arguments must be in range and loops are rejected up front;
//! violations are bugs in the caller and panic. Anything driven by external
//! data (parsing, solving, construction parameters) returns `Result` from
//! the module that owns it.

use std::fmt;

/// Hard order cap: one u64 of adjacency per vertex, and the graph6 short
/// form tops out at 62 as well.
pub const MAX_ORDER: usize = 62;

/// Subset of the vertices of a graph of order at most 62.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> VertexSet {
        assert!(v < MAX_ORDER, "vertex {v} out of range");
        VertexSet(1 << v)
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_ORDER, "order {n} out of range");
        if n == 0 {
            VertexSet(0)
        } else {
            VertexSet(u64::MAX >> (64 - n))
        }
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(self, v: usize) -> VertexSet {
        assert!(v < MAX_ORDER, "vertex {v} out of range");
        VertexSet(self.0 | 1 << v)
    }

    pub fn remove(self, v: usize) -> VertexSet {
        assert!(v < MAX_ORDER, "vertex {v} out of range");
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Ascending vertex iterator.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn smallest(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s = s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph, vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices and no edges. `n` must be in `1..=62`.
    pub fn empty(n: usize) -> Graph {
        assert!(
            (1..=MAX_ORDER).contains(&n),
            "graph order {n} outside 1..={MAX_ORDER}"
        );
        Graph {
            n,
            adj: vec![0; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for order {n}");
            assert!(u != v, "loop at vertex {u} rejected");
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.adj[u] >> v & 1 == 1
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        assert!(u < self.n && v < self.n, "vertex out of range");
        assert!(u != v, "loop at vertex {u} rejected");
        let mut g = self.clone();
        g.adj[u] |= 1 << v;
        g.adj[v] |= 1 << u;
        g
    }

    /// New graph with one extra vertex (index `order`) adjacent to exactly
    /// `neighbors`.
    pub fn with_appended_vertex(&self, neighbors: VertexSet) -> Graph {
        let n = self.n + 1;
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        assert!(
            neighbors.is_subset_of(VertexSet::full(self.n)),
            "neighbor set {neighbors:?} not within 0..{}",
            self.n
        );
        let mut adj = self.adj.clone();
        adj.push(neighbors.bits());
        for v in neighbors.iter() {
            adj[v] |= 1 << self.n;
        }
        Graph { n, adj }
    }

    /// Open neighborhood N(v).
    pub fn neighborhood(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range for order {}", self.n);
        VertexSet(self.adj[v])
    }

    /// Closed neighborhood N[v].
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range for order {}", self.n);
        VertexSet(self.adj[v] | 1 << v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighborhood(v).len()
    }

    /// N(S): vertices outside `s` with a neighbor in `s`.
    pub fn set_neighborhood(&self, s: VertexSet) -> VertexSet {
        self.set_closed_neighborhood(s).difference(s)
    }

    /// N[S]: `s` together with every neighbor of `s`.
    pub fn set_closed_neighborhood(&self, s: VertexSet) -> VertexSet {
        assert!(
            s.is_subset_of(self.all_vertices()),
            "set {s:?} not within graph of order {}",
            self.n
        );
        let mut out = s.bits();
        for v in s.iter() {
            out |= self.adj[v];
        }
        VertexSet(out)
    }

    /// Number of edges with one end in `s` and the other in `t`.
    /// The sets must be disjoint.
    pub fn edges_between(&self, s: VertexSet, t: VertexSet) -> usize {
        assert!(
            s.intersection(t).is_empty(),
            "edges_between requires disjoint sets"
        );
        assert!(s.union(t).is_subset_of(self.all_vertices()), "set out of range");
        s.iter()
            .map(|v| (self.adj[v] & t.bits()).count_ones() as usize)
            .sum()
    }

    /// Whether N[v] is contained in N[w]. A cop on `w` covers every move
    /// available from `v`. Requires `v != w`.
    pub fn is_dominated(&self, v: usize, w: usize) -> bool {
        assert!(v < self.n && w < self.n, "vertex out of range");
        assert!(v != w, "domination check requires two distinct vertices");
        let nv = self.adj[v] | 1 << v;
        let nw = self.adj[w] | 1 << w;
        nv & !nw == 0
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Connected component of the subgraph induced on `within` that
    /// contains `v`. `v` must lie in `within`.
    pub fn component_containing(&self, v: usize, within: VertexSet) -> VertexSet {
        assert!(within.contains(v), "vertex {v} not in the candidate set");
        assert!(within.is_subset_of(self.all_vertices()), "set out of range");
        let mut reached = 1u64 << v;
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0u64;
            let mut bits = frontier;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.adj[u];
            }
            frontier = next & within.bits() & !reached;
            reached |= frontier;
        }
        VertexSet(reached)
    }

    pub fn is_connected(&self) -> bool {
        self.component_containing(0, self.all_vertices()) == self.all_vertices()
    }

    pub fn component_count(&self) -> usize {
        let mut remaining = self.all_vertices();
        let mut count = 0;
        while let Some(v) = remaining.smallest() {
            remaining = remaining.difference(self.component_containing(v, remaining));
            count += 1;
        }
        count
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        // BFS from every vertex; a non-tree edge seen from root r closes a
        // cycle of length dist[u] + dist[w] + 1, and the minimum over all
        // roots is exact because some root lies on a shortest cycle.
        let mut best: Option<usize> = None;
        let mut dist = vec![0u32; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = Vec::with_capacity(self.n);
        for root in 0..self.n {
            let mut seen = 1u64 << root;
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push(root);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for w in VertexSet(self.adj[u]).iter() {
                    if seen >> w & 1 == 0 {
                        seen |= 1 << w;
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push(w);
                    } else if w != parent[u] {
                        let len = (dist[u] + dist[w] + 1) as usize;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced on `s`, plus the map from new indices back to the
    /// original labels (ascending).
    pub fn induced_subgraph(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        assert!(s.is_subset_of(self.all_vertices()), "set out of range");
        let labels: Vec<usize> = s.iter().collect();
        assert!(!labels.is_empty(), "induced subgraph needs at least one vertex");
        let mut g = Graph::empty(labels.len());
        for (i, &oi) in labels.iter().enumerate() {
            for (j, &oj) in labels.iter().enumerate().skip(i + 1) {
                if self.adj[oi] >> oj & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        (g, labels)
    }

    /// Edge list with u < v, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] & !(u64::MAX >> (63 - u))).iter() {
                out.push((u, v));
            }
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    #[test]
    fn closed_neighborhood_union_covers_cycle_five() {
        // On C5 the closed neighborhoods of two vertices at distance two
        // already cover everything.
        let g = cycle(5);
        let s = VertexSet::from_iter([0, 2]);
        assert_eq!(g.set_closed_neighborhood(s), VertexSet::full(5));
        assert_eq!(g.closed_neighborhood(0), VertexSet::from_iter([0, 1, 4]));
        assert_eq!(g.set_neighborhood(VertexSet::singleton(0)), VertexSet::from_iter([1, 4]));
    }

    #[test]
    fn path_end_is_dominated_by_its_neighbor() {
        let g = path(3);
        assert!(g.is_dominated(0, 1));
        assert!(!g.is_dominated(1, 0));
        // Interior vertices of P4 do not dominate each other.
        let g = path(4);
        assert!(!g.is_dominated(1, 2));
        assert!(!g.is_dominated(2, 1));
    }

    #[test]
    #[should_panic(expected = "two distinct vertices")]
    fn domination_check_rejects_equal_vertices() {
        let g = path(3);
        g.is_dominated(1, 1);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn neighborhood_rejects_out_of_range_vertex() {
        let g = path(3);
        g.neighborhood(3);
    }

    #[test]
    fn girth_of_cycles_and_trees() {
        assert_eq!(cycle(3).girth(), Some(3));
        assert_eq!(cycle(4).girth(), Some(4));
        assert_eq!(cycle(9).girth(), Some(9));
        assert_eq!(path(6).girth(), None);
        assert_eq!(Graph::empty(4).girth(), None);
        // Triangle with a pendant: girth 3.
        let paw = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]);
        assert_eq!(paw.girth(), Some(3));
        // Two squares sharing no vertex: girth 4.
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)],
        );
        assert_eq!(g.girth(), Some(4));
    }

    #[test]
    fn acyclic_iff_size_is_order_minus_components() {
        for g in [path(5), Graph::empty(3), Graph::from_edges(5, &[(0, 1), (2, 3)])] {
            assert!(g.girth().is_none());
            assert_eq!(g.size(), g.order() - g.component_count());
        }
        let g = cycle(6);
        assert!(g.girth().is_some());
        assert_ne!(g.size(), g.order() - g.component_count());
    }

    #[test]
    fn components_and_connectivity() {
        assert!(cycle(5).is_connected());
        assert!(Graph::empty(1).is_connected());
        let two = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]);
        assert!(!two.is_connected());
        assert_eq!(two.component_count(), 2);
        assert_eq!(
            two.component_containing(2, two.all_vertices()),
            VertexSet::from_iter([2, 3, 4])
        );
        // Restricting the ambient set splits the path.
        let g = path(5);
        let within = VertexSet::full(5).remove(2);
        assert_eq!(g.component_containing(0, within), VertexSet::from_iter([0, 1]));
    }

    #[test]
    fn induced_subgraph_of_cycle_is_path() {
        let g = cycle(5);
        let (h, labels) = g.induced_subgraph(VertexSet::from_iter([0, 1, 2]));
        assert_eq!(labels, vec![0, 1, 2]);
        assert_eq!(h.order(), 3);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn appended_vertex_links_both_directions() {
        let g = path(3).with_appended_vertex(VertexSet::from_iter([0, 2]));
        assert_eq!(g.order(), 4);
        assert!(g.has_edge(0, 3) && g.has_edge(3, 2));
        assert!(!g.has_edge(1, 3));
        assert_eq!(g.size(), 4);
    }

    #[test]
    fn edges_between_disjoint_sets() {
        let g = cycle(6);
        let s = VertexSet::from_iter([0, 1]);
        let t = VertexSet::from_iter([2, 5]);
        assert_eq!(g.edges_between(s, t), 2);
    }
}
