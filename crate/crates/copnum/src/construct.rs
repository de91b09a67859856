//! Named graph constructions: standard families, the Petersen graph,
//! apex/bridge compositions, and projective-plane incidence graphs.

use crate::graph::{Graph, MAX_ORDER};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("{family} graphs need order at least {min}, got {got}")]
    OrderBelowMinimum {
        family: &'static str,
        min: usize,
        got: usize,
    },
    #[error("resulting order {0} exceeds the {MAX_ORDER}-vertex cap")]
    OrderOverflow(usize),
    #[error("host graph must be connected")]
    HostDisconnected,
    #[error("host graph carries no anchor vertex")]
    AnchorMissing,
    #[error("host was declared {declared}-cop but its cop number is {actual}")]
    HostCopNumberMismatch { declared: usize, actual: usize },
    #[error("projective planes here need a prime field order, got {0}")]
    NotPrime(usize),
    #[error("field order {0} gives an incidence graph above {MAX_ORDER} vertices")]
    FieldOrderTooLarge(usize),
}

/// A graph together with the distinguished vertices a construction
/// introduced: `apex` is adjacent to every vertex of the original seed
/// part, `anchor` marks where a host graph was attached.
#[derive(Debug, Clone)]
pub struct TaggedGraph {
    pub graph: Graph,
    pub apex: Option<usize>,
    pub anchor: Option<usize>,
}

impl TaggedGraph {
    pub fn plain(graph: Graph) -> TaggedGraph {
        TaggedGraph {
            graph,
            apex: None,
            anchor: None,
        }
    }

    pub fn with_anchor(graph: Graph, anchor: usize) -> TaggedGraph {
        assert!(anchor < graph.order(), "anchor {anchor} out of range");
        TaggedGraph {
            graph,
            apex: None,
            anchor: Some(anchor),
        }
    }
}

/// The Petersen graph via its Kneser description: vertices are the ten
/// 2-subsets of a 5-set (lexicographic), edges join disjoint pairs.
pub fn petersen() -> Graph {
    let mut pairs = Vec::with_capacity(10);
    for a in 0..5u8 {
        for b in a + 1..5 {
            pairs.push((a, b));
        }
    }
    let mut edges = Vec::with_capacity(15);
    for i in 0..10 {
        for j in i + 1..10 {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(10, &edges)
}

pub fn path(n: usize) -> Result<Graph, ConstructError> {
    check_min("path", 1, n)?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Graph::from_edges(n, &edges))
}

pub fn cycle(n: usize) -> Result<Graph, ConstructError> {
    check_min("cycle", 3, n)?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::from_edges(n, &edges))
}

pub fn complete(n: usize) -> Result<Graph, ConstructError> {
    check_min("complete", 1, n)?;
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_edges(n, &edges))
}

/// Star on `n` vertices: vertex 0 is the center.
pub fn star(n: usize) -> Result<Graph, ConstructError> {
    check_min("star", 1, n)?;
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Ok(Graph::from_edges(n, &edges))
}

fn check_min(family: &'static str, min: usize, got: usize) -> Result<(), ConstructError> {
    if got < min {
        return Err(ConstructError::OrderBelowMinimum { family, min, got });
    }
    if got > MAX_ORDER {
        return Err(ConstructError::OrderOverflow(got));
    }
    Ok(())
}

/// Add one vertex adjacent to everything. The new vertex gets index
/// `g.order()` and is reported as the apex tag.
pub fn add_universal(g: &Graph) -> Result<TaggedGraph, ConstructError> {
    let n = g.order() + 1;
    if n > MAX_ORDER {
        return Err(ConstructError::OrderOverflow(n));
    }
    let graph = g.with_appended_vertex(g.all_vertices());
    Ok(TaggedGraph {
        graph,
        apex: Some(n - 1),
        anchor: None,
    })
}

/// Attach a `k`-cop host to a seed graph: apex the seed with a universal
/// vertex x, lay the host alongside, and bridge x to the host's anchor.
/// The caller's claim that the host needs exactly `k` cops is verified by
/// the solver whenever the host is within solver range.
pub fn plus_k(seed: &Graph, host: &TaggedGraph, k: usize) -> Result<TaggedGraph, ConstructError> {
    let anchor = host.anchor.ok_or(ConstructError::AnchorMissing)?;
    let total = seed.order() + 1 + host.graph.order();
    if total > MAX_ORDER {
        return Err(ConstructError::OrderOverflow(total));
    }
    if !host.graph.is_connected() {
        return Err(ConstructError::HostDisconnected);
    }
    if k <= crate::solver::MAX_COPS && host.graph.order() <= crate::solver::MAX_SOLVE_ORDER {
        let actual = crate::solver::cop_number_bounded(&host.graph, crate::solver::MAX_COPS)
            .expect("host already checked connected and within caps");
        // `actual` is None when the host needs more cops than the solver
        // cap; report that as cap + 1, a lower bound.
        let actual = actual.unwrap_or(crate::solver::MAX_COPS + 1);
        if actual != k {
            return Err(ConstructError::HostCopNumberMismatch {
                declared: k,
                actual,
            });
        }
    }
    let apex = seed.order();
    let offset = apex + 1;
    let mut edges = seed.edges();
    for v in seed.vertices() {
        edges.push((v, apex));
    }
    for (u, v) in host.graph.edges() {
        edges.push((u + offset, v + offset));
    }
    edges.push((apex, anchor + offset));
    Ok(TaggedGraph {
        graph: Graph::from_edges(total, &edges),
        apex: Some(apex),
        anchor: Some(anchor + offset),
    })
}

/// Point-line incidence graph of the projective plane over the prime field
/// F_q. Points come first (indices 0..q^2+q+1), then lines, each side in
/// lexicographic order of its normalized homogeneous triple (first nonzero
/// coordinate scaled to 1). A point is adjacent to the lines through it.
pub fn projective_plane_incidence(q: usize) -> Result<Graph, ConstructError> {
    if q < 2 || !is_prime(q) {
        return Err(ConstructError::NotPrime(q));
    }
    let classes = q * q + q + 1;
    if 2 * classes > MAX_ORDER {
        return Err(ConstructError::FieldOrderTooLarge(q));
    }
    let triples = normalized_triples(q);
    debug_assert_eq!(triples.len(), classes);
    let mut edges = Vec::with_capacity(classes * (q + 1));
    for (p, point) in triples.iter().enumerate() {
        for (l, line) in triples.iter().enumerate() {
            let dot: usize = point
                .iter()
                .zip(line.iter())
                .map(|(a, b)| a * b)
                .sum::<usize>()
                % q;
            if dot == 0 {
                edges.push((p, classes + l));
            }
        }
    }
    Ok(Graph::from_edges(2 * classes, &edges))
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Representatives of the projective points of F_q^3: first nonzero
/// coordinate is 1, listed lexicographically.
fn normalized_triples(q: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let lead = if a != 0 {
                    a
                } else if b != 0 {
                    b
                } else {
                    c
                };
                if lead == 1 {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out.sort_unstable();
    out
}
