//! Streams of non-isomorphic graphs: an internal generator for small
//! orders and corpus ingestion for everything else.
//!
//! Generation is by vertex augmentation: every graph of order n arises
//! from some graph of order n - 1 by appending a vertex with some
//! neighbor subset, so extending every representative by every subset
//! and deduplicating by canonical form covers each isomorphism class
//! exactly once. Levels are kept as sorted compact keys — an exact
//! (lossless) packing of the canonical form, so dedup can never merge
//! two distinct classes — and the sorted order equals graph6 byte order,
//! making streams deterministic and resumable by plain cursor.

use crate::canon::{canonical_form, canonical_key, form_from_key, CanonicalForm};
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};
use std::ops::Range;
use thiserror::Error;

/// Each parent spawns 2^(n-1) candidates, so this is where exhaustive
/// augmentation stops being an afternoon job.
pub const MAX_GENERATE_ORDER: usize = 10;

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("the internal generator covers orders 1..={MAX_GENERATE_ORDER}, not {0}; ingest a graph6 corpus for other orders")]
    OrderOutOfRange(usize),
    #[error("corpus line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: graph6::ParseError,
    },
    #[error("corpus line {line}: order {found} in a corpus of order {expected}")]
    MixedOrders {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("corpus line {line} repeats the isomorphism class first seen on line {first_line}")]
    DuplicateClass { line: usize, first_line: usize },
}

/// One completed generation level: every graph of one order, exactly one
/// canonically labeled representative per isomorphism class, as
/// ascending compact keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedLevel {
    order: usize,
    keys: Vec<u128>,
}

impl GeneratedLevel {
    /// The single graph of order 1.
    pub fn first() -> GeneratedLevel {
        GeneratedLevel {
            order: 1,
            keys: vec![canonical_key(&Graph::empty(1))],
        }
    }

    /// Rebuild a level from keys saved by a checkpoint. The keys must be
    /// exactly a level's worth: ascending, deduplicated, all one order.
    pub fn from_sorted_keys(order: usize, keys: Vec<u128>) -> GeneratedLevel {
        debug_assert!(keys.windows(2).all(|w| w[0] < w[1]), "keys not ascending");
        GeneratedLevel { order, keys }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[u128] {
        &self.keys
    }

    pub fn form(&self, i: usize) -> CanonicalForm {
        form_from_key(self.keys[i])
    }

    pub fn graph(&self, i: usize) -> Graph {
        self.form(i).to_graph()
    }

    pub fn graphs(&self) -> impl Iterator<Item = Graph> + '_ {
        self.keys.iter().map(|&k| form_from_key(k).to_graph())
    }
}

/// Augment the parents at `range` of the previous level into `seen`.
/// Candidates are canonicalized in parallel but inserted in parent
/// order, so the same ranges always build the same set — splitting the
/// full range across calls (as checkpointed runs do) changes nothing.
pub fn extend_level(prev: &GeneratedLevel, range: Range<usize>, seen: &mut HashSet<u128>) {
    let n = prev.order + 1;
    assert!(n <= MAX_GENERATE_ORDER, "order {n} beyond the generator");
    let subsets = 1u64 << (n - 1);
    let batches: Vec<Vec<u128>> = prev.keys[range]
        .par_iter()
        .map(|&key| {
            let parent = form_from_key(key).to_graph();
            let mut out = Vec::with_capacity(subsets as usize);
            for bits in 0..subsets {
                let child = parent.with_appended_vertex(VertexSet::from_bits(bits));
                out.push(canonical_key(&child));
            }
            out
        })
        .collect();
    for batch in batches {
        seen.extend(batch);
    }
}

/// Sort a finished augmentation set into the next level.
pub fn finish_level(order: usize, seen: HashSet<u128>) -> GeneratedLevel {
    let mut keys: Vec<u128> = seen.into_iter().collect();
    keys.sort_unstable();
    GeneratedLevel { order, keys }
}

/// The level after `prev`, in one shot.
pub fn advance_level(prev: &GeneratedLevel) -> Result<GeneratedLevel, StreamError> {
    let n = prev.order + 1;
    if n > MAX_GENERATE_ORDER {
        return Err(StreamError::OrderOutOfRange(n));
    }
    let mut seen = HashSet::new();
    extend_level(prev, 0..prev.len(), &mut seen);
    Ok(finish_level(n, seen))
}

/// All non-isomorphic graphs of order n, sorted by canonical form.
pub fn generate_graphs(n: usize) -> Result<GeneratedLevel, StreamError> {
    if n == 0 || n > MAX_GENERATE_ORDER {
        return Err(StreamError::OrderOutOfRange(n));
    }
    let mut level = GeneratedLevel::first();
    while level.order < n {
        level = advance_level(&level)?;
    }
    Ok(level)
}

/// Parse a graph6 corpus: one graph per line, uniform order, no two
/// lines isomorphic. Blank lines are allowed and skipped; line numbers
/// in errors count every line. Graphs come back in file order.
pub fn ingest_corpus(text: &str) -> Result<Vec<Graph>, StreamError> {
    let mut graphs = Vec::new();
    let mut expected: Option<usize> = None;
    let mut classes: HashMap<CanonicalForm, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let record = raw.trim_end_matches('\r');
        if record.is_empty() {
            continue;
        }
        let g = graph6::parse(record.as_bytes())
            .map_err(|source| StreamError::Parse { line, source })?;
        match expected {
            None => expected = Some(g.order()),
            Some(n) if n != g.order() => {
                return Err(StreamError::MixedOrders {
                    line,
                    expected: n,
                    found: g.order(),
                });
            }
            Some(_) => {}
        }
        if let Some(&first_line) = classes.get(&canonical_form(&g)) {
            return Err(StreamError::DuplicateClass { line, first_line });
        }
        classes.insert(canonical_form(&g), line);
        graphs.push(g);
    }
    Ok(graphs)
}
