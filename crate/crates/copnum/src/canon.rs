//! Canonical labeling, so isomorphism testing is byte comparison.
//!
//! The labeling is the classic refine-and-backtrack search: iterate degree
//! and neighbor-cell refinement to an equitable ordered partition, then
//! branch on individualizing each vertex of the first non-singleton cell,
//! and keep the lexicographically least adjacency encoding over all leaves.
//! Cells split into sub-cells ordered by ascending neighbor-count
//! signature, which biases the search toward small encodings (non-edges
//! first). Subtrees whose fixed singleton prefix already encodes above the
//! best known leaf are pruned; there is no automorphism pruning.
//!
//! A `CanonicalForm` is the graph6 record of the canonically relabeled
//! graph, so forms are directly printable, parseable, and ordered the same
//! way as their bit encodings.

use crate::graph::{Graph, MAX_ORDER};
use crate::graph6;
use serde::de::Error as _;
use std::fmt;

/// Triangle encodings take at most ceil(62*61/2 / 64) words.
const ENC_WORDS: usize = 30;

type Encoding = [u64; ENC_WORDS];

/// Canonical representative of an isomorphism class, stored as graph6
/// bytes. Equal forms means isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    pub fn order(&self) -> usize {
        (self.0[0] - 63) as usize
    }

    /// Decode back into the canonically labeled graph.
    pub fn to_graph(&self) -> Graph {
        graph6::parse(&self.0).expect("canonical forms are valid graph6")
    }

    /// Validate externally supplied bytes (used when deserializing).
    pub fn from_graph6(bytes: &[u8]) -> Result<CanonicalForm, graph6::ParseError> {
        let g = graph6::parse(bytes)?;
        Ok(canonical_form(&g))
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl serde::Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> serde::Deserialize<'de> for CanonicalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<CanonicalForm, D::Error> {
        let text = String::deserialize(d)?;
        let form = CanonicalForm::from_graph6(text.as_bytes())
            .map_err(|e| D::Error::custom(format!("bad canonical form: {e}")))?;
        if form.as_str() != text {
            return Err(D::Error::custom(format!(
                "graph6 record {text} is not canonically labeled"
            )));
        }
        Ok(form)
    }
}

/// Ordered partition of the vertices: a list of bitmask cells. Fixed-size
/// and `Copy` so backtracking can clone it per branch without allocating.
#[derive(Clone, Copy)]
struct Partition {
    cells: [u64; MAX_ORDER + 2],
    len: usize,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        let mut cells = [0u64; MAX_ORDER + 2];
        cells[0] = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        Partition { cells, len: 1 }
    }

    /// Leading run of singleton cells.
    fn singleton_prefix(&self) -> usize {
        self.cells[..self.len]
            .iter()
            .take_while(|c| c.count_ones() == 1)
            .count()
    }
}

struct Searcher {
    n: usize,
    adj: [u64; MAX_ORDER],
    nwords: usize,
    nbits: usize,
    best: Encoding,
    best_set: bool,
    // scratch reused by refine(); refine never recurses.
    sig: [[u8; MAX_ORDER + 2]; MAX_ORDER],
    scratch: Encoding,
}

impl Searcher {
    fn new(g: &Graph) -> Searcher {
        let n = g.order();
        let mut adj = [0u64; MAX_ORDER];
        for v in 0..n {
            adj[v] = g.neighborhood(v).bits();
        }
        let nbits = n * (n - 1) / 2;
        Searcher {
            n,
            adj,
            nwords: (nbits + 63) / 64,
            nbits,
            best: [0; ENC_WORDS],
            best_set: false,
            sig: [[0; MAX_ORDER + 2]; MAX_ORDER],
            scratch: [0; ENC_WORDS],
        }
    }

    /// Split cells by neighbor counts against every cell until the
    /// partition is equitable. Sub-cells are ordered by ascending
    /// signature.
    fn refine(&mut self, p: &mut Partition) {
        'restart: loop {
            for ci in 0..p.len {
                let cell = p.cells[ci];
                let size = cell.count_ones() as usize;
                if size <= 1 {
                    continue;
                }
                let mut verts = [0u8; MAX_ORDER];
                let mut bits = cell;
                for slot in verts.iter_mut().take(size) {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    *slot = v as u8;
                    for cj in 0..p.len {
                        self.sig[v][cj] = (self.adj[v] & p.cells[cj]).count_ones() as u8;
                    }
                }
                let sig_len = p.len;
                let all_equal = verts[..size]
                    .iter()
                    .all(|&v| self.sig[v as usize][..sig_len] == self.sig[verts[0] as usize][..sig_len]);
                if all_equal {
                    continue;
                }
                // Sort the cell's vertices by signature; equal signatures
                // become one sub-cell.
                let mut order = [0u8; MAX_ORDER];
                order[..size].copy_from_slice(&verts[..size]);
                order[..size].sort_unstable_by(|&a, &b| {
                    self.sig[a as usize][..sig_len].cmp(&self.sig[b as usize][..sig_len])
                });
                let mut groups = [0u64; MAX_ORDER];
                let mut ngroups = 0usize;
                for w in 0..size {
                    if w > 0 {
                        let prev = order[w - 1] as usize;
                        let cur = order[w] as usize;
                        if self.sig[cur][..sig_len] != self.sig[prev][..sig_len] {
                            ngroups += 1;
                        }
                    }
                    groups[ngroups] |= 1 << order[w];
                }
                ngroups += 1;
                // Splice the groups in place of cell ci.
                let tail = p.len - ci - 1;
                let extra = ngroups - 1;
                for k in (0..tail).rev() {
                    p.cells[ci + ngroups + k] = p.cells[ci + 1 + k];
                }
                p.cells[ci..ci + ngroups].copy_from_slice(&groups[..ngroups]);
                p.len += extra;
                continue 'restart;
            }
            return;
        }
    }

    /// Triangle bits of the first `k` ordered vertices, written MSB-first
    /// into `self.scratch`. Returns the number of bits (k choose 2).
    fn encode_prefix(&mut self, p: &Partition, k: usize) -> usize {
        let mut sigma = [0u8; MAX_ORDER];
        for (i, slot) in sigma.iter_mut().enumerate().take(k) {
            *slot = p.cells[i].trailing_zeros() as u8;
        }
        let bits = k * (k - 1) / 2;
        for w in self.scratch.iter_mut().take((bits + 63) / 64) {
            *w = 0;
        }
        let mut t = 0usize;
        for col in 1..k {
            let a = sigma[col] as usize;
            for row in 0..col {
                let b = sigma[row] as usize;
                if self.adj[a] >> b & 1 == 1 {
                    self.scratch[t >> 6] |= 1 << (63 - (t & 63));
                }
                t += 1;
            }
        }
        bits
    }

    /// Compare scratch's first `bits` bits against the same prefix of the
    /// best encoding.
    fn prefix_cmp(&self, bits: usize) -> std::cmp::Ordering {
        let full = bits / 64;
        for w in 0..full {
            match self.scratch[w].cmp(&self.best[w]) {
                std::cmp::Ordering::Equal => {}
                other => return other,
            }
        }
        let rem = bits & 63;
        if rem != 0 {
            let mask = u64::MAX << (64 - rem);
            return (self.scratch[full] & mask).cmp(&(self.best[full] & mask));
        }
        std::cmp::Ordering::Equal
    }

    fn search(&mut self, p: Partition) {
        let mut p = p;
        self.refine(&mut p);
        let prefix = p.singleton_prefix();
        if self.best_set {
            let bits = self.encode_prefix(&p, prefix);
            if self.prefix_cmp(bits) == std::cmp::Ordering::Greater {
                return;
            }
        }
        if prefix == p.len && p.len == self.n {
            let bits = self.encode_prefix(&p, self.n);
            debug_assert_eq!(bits, self.nbits);
            if !self.best_set || self.scratch[..self.nwords] < self.best[..self.nwords] {
                self.best[..self.nwords].copy_from_slice(&self.scratch[..self.nwords]);
                self.best_set = true;
            }
            return;
        }
        // First non-singleton cell is exactly at the prefix boundary.
        let target = prefix;
        let cell = p.cells[target];
        let mut bits = cell;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let mut child = p;
            for k in (target..p.len).rev() {
                child.cells[k + 1] = child.cells[k];
            }
            child.cells[target] = 1 << v;
            child.cells[target + 1] = cell & !(1 << v);
            child.len += 1;
            self.search(child);
        }
    }

    fn run(mut self) -> (usize, Encoding) {
        let unit = Partition::unit(self.n);
        self.search(unit);
        debug_assert!(self.best_set || self.nbits == 0);
        (self.n, self.best)
    }
}

fn form_bytes(n: usize, enc: &Encoding) -> Vec<u8> {
    let nbits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(1 + (nbits + 5) / 6);
    out.push(n as u8 + 63);
    let mut t = 0;
    while t < nbits {
        let mut group = 0u8;
        for k in 0..6 {
            let bit = if t + k < nbits {
                (enc[(t + k) >> 6] >> (63 - ((t + k) & 63)) & 1) as u8
            } else {
                0
            };
            group = group << 1 | bit;
        }
        out.push(group + 63);
        t += 6;
    }
    out
}

/// Canonical form of `g`: the graph6 bytes of its canonical relabeling.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let (n, enc) = Searcher::new(g).run();
    CanonicalForm(form_bytes(n, &enc))
}

/// Compact canonical key for graphs of order at most 16: the order byte
/// followed by the triangle bits, big-endian in a u128. Sorting keys gives
/// the same order as sorting the corresponding graph6 forms.
pub(crate) fn canonical_key(g: &Graph) -> u128 {
    let n = g.order();
    assert!(n <= 16, "compact keys only cover order <= 16");
    let (_, enc) = Searcher::new(g).run();
    let mut key = (n as u128 + 63) << 120;
    // Triangle bits occupy at most 120 bits here (16*15/2 = 120).
    key |= (enc[0] as u128) << 56;
    if n * (n - 1) / 2 > 64 {
        key |= (enc[1] as u128) >> 8;
    }
    key
}

pub(crate) fn form_from_key(key: u128) -> CanonicalForm {
    let n = ((key >> 120) as u8 - 63) as usize;
    let mut enc: Encoding = [0; ENC_WORDS];
    enc[0] = (key >> 56) as u64;
    enc[1] = (key as u64 & 0x00ff_ffff_ffff_ffff) << 8;
    CanonicalForm(form_bytes(n, &enc))
}

/// Isomorphism test: cheap invariants first, canonical forms to decide.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    fn permuted(g: &Graph, perm: &[usize]) -> Graph {
        let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(g.order(), &edges)
    }

    /// Brute-force isomorphism by permutation search; only for tiny orders.
    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        if a.order() != b.order() || a.size() != b.size() {
            return false;
        }
        let n = a.order();
        let mut perm: Vec<usize> = (0..n).collect();
        fn go(a: &Graph, b: &Graph, perm: &mut Vec<usize>, k: usize) -> bool {
            let n = a.order();
            if k == n {
                return a
                    .edges()
                    .iter()
                    .all(|&(u, v)| b.has_edge(perm[u], perm[v]));
            }
            for i in k..n {
                perm.swap(k, i);
                if go(a, b, perm, k + 1) {
                    return true;
                }
                perm.swap(k, i);
            }
            false
        }
        go(a, b, &mut perm, 0)
    }

    /// Every labeled graph on up to 5 vertices, as an iterator of graphs.
    fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
        let nbits = n * (n - 1) / 2;
        (0u64..1 << nbits).map(move |mask| {
            let mut edges = Vec::new();
            let mut t = 0;
            for col in 1..n {
                for row in 0..col {
                    if mask >> t & 1 == 1 {
                        edges.push((row, col));
                    }
                    t += 1;
                }
            }
            Graph::from_edges(n, &edges)
        })
    }

    #[test]
    fn relabelings_share_a_form() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let graphs = [
            cycle(4),
            cycle(7),
            Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (2, 5), (1, 4)]),
            crate::construct::petersen(),
        ];
        for g in &graphs {
            let base = canonical_form(g);
            for _ in 0..100 {
                let mut perm: Vec<usize> = (0..g.order()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&permuted(g, &perm)), base);
            }
        }
    }

    #[test]
    fn counts_isomorphism_classes_up_to_order_five() {
        // Known class counts: 1, 2, 4, 11, 34 overall (OEIS A000088) and
        // 1, 1, 2, 6, 21 connected (A001349).
        let all = [1usize, 2, 4, 11, 34];
        let conn = [1usize, 1, 2, 6, 21];
        for n in 1..=5 {
            let mut forms = std::collections::HashSet::new();
            let mut connected = std::collections::HashSet::new();
            for g in all_labeled(n) {
                let f = canonical_form(&g);
                if g.is_connected() {
                    connected.insert(f.clone());
                }
                forms.insert(f);
            }
            assert_eq!(forms.len(), all[n - 1], "class count at order {n}");
            assert_eq!(connected.len(), conn[n - 1], "connected count at order {n}");
        }
    }

    #[test]
    fn canonical_form_is_a_fixpoint() {
        for g in [cycle(5), cycle(8), crate::construct::petersen()] {
            let form = canonical_form(&g);
            let relabeled = form.to_graph();
            assert_eq!(canonical_form(&relabeled), form);
            assert_eq!(crate::graph6::emit(&relabeled).as_bytes(), form.as_bytes());
        }
    }

    #[test]
    fn canonical_graph_stays_isomorphic() {
        for g in all_labeled(5).step_by(17) {
            let h = canonical_form(&g).to_graph();
            assert!(brute_isomorphic(&g, &h));
        }
    }

    #[test]
    fn distinguishes_near_twins() {
        // Same order, size, and degree sequence; not isomorphic.
        let c6 = cycle(6);
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!is_isomorphic(&c6, &two_triangles));
        assert!(!brute_isomorphic(&c6, &two_triangles));
        // K3 vs P3.
        let k3 = cycle(3);
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(!is_isomorphic(&k3, &p3));
    }

    #[test]
    fn compact_key_matches_form() {
        for g in all_labeled(4) {
            let key = canonical_key(&g);
            assert_eq!(form_from_key(key), canonical_form(&g));
        }
        let p = crate::construct::petersen();
        assert_eq!(form_from_key(canonical_key(&p)), canonical_form(&p));
    }

    #[test]
    fn highly_symmetric_graphs_terminate() {
        // Worst case for a search without automorphism pruning: nothing
        // refines. Make sure complete/empty graphs still canonicalize.
        let empty = Graph::empty(9);
        assert_eq!(canonical_form(&empty).order(), 9);
        let mut edges = Vec::new();
        for u in 0..9 {
            for v in u + 1..9 {
                edges.push((u, v));
            }
        }
        let complete = Graph::from_edges(9, &edges);
        let f = canonical_form(&complete);
        assert_eq!(f.to_graph().size(), 36);
    }
}
