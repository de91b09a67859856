//! Census assembly: classify every graph in a stream by cop number,
//! accumulate per-order rows, checkpoint long runs, render tables, and
//! derive minimum-order reports and claim certificates.
//!
//! Determinism is the load-bearing property here. Work is cut into
//! fixed-size batches that are classified in parallel but merged in
//! stream order, so counts and witnesses never depend on scheduling; and
//! a run interrupted at any checkpoint resumes to the same table,
//! byte for byte, as an uninterrupted one. Wall time is tracked on the
//! side and deliberately excluded from serialization and equality so
//! those guarantees are checkable.

use crate::canon::canonical_form;
use crate::construct;
use crate::generate::{self, GeneratedLevel, StreamError};
use crate::graph::Graph;
use crate::solver::{self, SolverError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;
use thiserror::Error;

/// Work units (classified graphs or augmented parents) between
/// checkpoint writes on long runs.
pub const CHECKPOINT_EVERY: usize = 100_000;

const MANIFEST_VERSION: u32 = 1;
const TABLE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Stream(#[from] StreamError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("k_max must be between 1 and {max}, not {0}", max = solver::MAX_COPS)]
    BadKMax(usize),
    #[error("checkpoint does not match this run: {reason}")]
    CheckpointMismatch { reason: String },
    #[error("corrupt data in {file}: {reason}")]
    Corrupt { file: String, reason: String },
    #[error("census table is incomplete: {reason}")]
    IncompleteTable { reason: String },
    #[error("run interrupted; state saved to the checkpoint directory")]
    Interrupted,
}

/// One census row: isomorphism-class counts for a single order, split by
/// cop number, with the first witness seen per class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    /// All isomorphism classes of this order.
    pub g: u64,
    /// Connected classes; only these are classified further.
    pub g_connected: u64,
    /// f[k-1] = connected classes with cop number exactly k.
    pub f: Vec<u64>,
    /// Connected classes needing more than k_max cops.
    pub overflow: u64,
    pub complete: bool,
    /// First graph (stream order, graph6) with cop number k, per k.
    pub witnesses: Vec<Option<String>>,
    pub overflow_witness: Option<String>,
}

impl CensusRow {
    fn empty(n: usize, k_max: usize) -> CensusRow {
        CensusRow {
            n,
            g: 0,
            g_connected: 0,
            f: vec![0; k_max],
            overflow: 0,
            complete: false,
            witnesses: vec![None; k_max],
            overflow_witness: None,
        }
    }

    fn tally(&mut self, class: Class, witness: impl FnOnce() -> String) {
        self.g += 1;
        match class {
            Class::Disconnected => {}
            Class::Cop(k) => {
                self.g_connected += 1;
                if self.f[k - 1] == 0 {
                    self.witnesses[k - 1] = Some(witness());
                }
                self.f[k - 1] += 1;
            }
            Class::Overflow => {
                self.g_connected += 1;
                if self.overflow == 0 {
                    self.overflow_witness = Some(witness());
                }
                self.overflow += 1;
            }
        }
    }
}

/// A full census: one row per order, plus the versions that produced it.
/// Equality and serialization cover the census content only — wall time
/// is run metadata and varies between otherwise identical runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusTable {
    pub format_version: u32,
    pub generator_version: String,
    pub solver_version: String,
    pub k_max: usize,
    pub rows: Vec<CensusRow>,
    #[serde(skip)]
    pub wall_time_secs: f64,
}

impl PartialEq for CensusTable {
    fn eq(&self, other: &Self) -> bool {
        self.format_version == other.format_version
            && self.generator_version == other.generator_version
            && self.solver_version == other.solver_version
            && self.k_max == other.k_max
            && self.rows == other.rows
    }
}

impl Eq for CensusTable {}

#[derive(Debug, Clone, Copy)]
enum Class {
    Disconnected,
    Cop(usize),
    Overflow,
}

fn classify(g: &Graph, k_max: usize) -> Result<Class, SolverError> {
    if !g.is_connected() {
        return Ok(Class::Disconnected);
    }
    Ok(match solver::cop_number_bounded(g, k_max)? {
        Some(c) => Class::Cop(c),
        None => Class::Overflow,
    })
}

/// What to take the census of.
pub enum CensusSource {
    /// Every graph of orders 1..=n_max from the internal generator.
    Generated { n_max: usize },
    /// A pre-parsed uniform-order corpus; `sha256` is the hex digest of
    /// the original file, used as the checkpoint identity.
    Corpus { graphs: Vec<Graph>, sha256: String },
}

#[derive(Clone)]
pub struct CensusOptions {
    pub k_max: usize,
    /// Where to persist resumable state; None disables checkpointing.
    pub checkpoint_dir: Option<PathBuf>,
    /// Cooperative interruption flag (e.g. set from a signal handler).
    pub stop: Option<Arc<AtomicBool>>,
    /// Test hook: behave as if interrupted after this many work units.
    pub stop_after: Option<usize>,
    /// Print progress lines to stderr.
    pub progress: bool,
    /// Graphs per parallel batch. Any value gives the same table; this
    /// only tunes scheduling granularity.
    pub batch: usize,
    /// Parents per augmentation slice; same determinism note.
    pub parent_chunk: usize,
}

impl Default for CensusOptions {
    fn default() -> CensusOptions {
        CensusOptions {
            k_max: 3,
            checkpoint_dir: None,
            stop: None,
            stop_after: None,
            progress: false,
            batch: 2_500,
            parent_chunk: 4_096,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// Run (or resume) a census. On interruption the state lands in the
/// checkpoint directory and `CensusError::Interrupted` comes back;
/// rerunning with the same source and options picks up where it stopped
/// and produces the identical table.
pub fn census(source: CensusSource, opts: &CensusOptions) -> Result<CensusTable, CensusError> {
    if opts.k_max == 0 || opts.k_max > solver::MAX_COPS {
        return Err(CensusError::BadKMax(opts.k_max));
    }
    let start = Instant::now();
    let mut table = match source {
        CensusSource::Generated { n_max } => census_generated(n_max, opts),
        CensusSource::Corpus { graphs, sha256 } => census_corpus(graphs, sha256, opts),
    }?;
    table.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(table)
}

fn census_generated(n_max: usize, opts: &CensusOptions) -> Result<CensusTable, CensusError> {
    if n_max == 0 || n_max > generate::MAX_GENERATE_ORDER {
        return Err(StreamError::OrderOutOfRange(n_max).into());
    }
    let mut eng = Engine::new(SourceId::Generated { n_max }, opts)?;
    let mut point = match eng.resume.take() {
        Some(p) => p,
        None => {
            let level = GeneratedLevel::first();
            eng.save_level(&level)?;
            Point::Counting {
                order: 1,
                cursor: 0,
                partial: CensusRow::empty(1, opts.k_max),
                level: Some(level),
            }
        }
    };
    loop {
        point = match point {
            Point::Counting {
                order,
                cursor,
                partial,
                level,
            } => {
                let level = level.expect("generated counting always has its level");
                let row = eng.count(order, Items::Keys(&level), cursor, partial, Some(level_file(order)))?;
                eng.rows.push(row);
                if order == n_max {
                    eng.write_manifest(PhaseRepr::Done)?;
                    return Ok(eng.into_table());
                }
                eng.write_manifest(PhaseRepr::Advancing {
                    order: order + 1,
                    parent_cursor: 0,
                    parent_file: level_file(order),
                    set_file: None,
                })?;
                Point::Advancing {
                    order: order + 1,
                    parent_cursor: 0,
                    parents: level,
                    seen: HashSet::new(),
                }
            }
            Point::Advancing {
                order,
                parent_cursor,
                parents,
                mut seen,
            } => {
                eng.advance(order, &parents, parent_cursor, &mut seen)?;
                drop(parents);
                let level = generate::finish_level(order, seen);
                eng.save_level(&level)?;
                let partial = CensusRow::empty(order, eng.k_max);
                eng.write_manifest(PhaseRepr::Counting {
                    order,
                    cursor: 0,
                    partial: partial.clone(),
                    level_file: Some(level_file(order)),
                })?;
                Point::Counting {
                    order,
                    cursor: 0,
                    partial,
                    level: Some(level),
                }
            }
            Point::Done => return Ok(eng.into_table()),
        };
    }
}

fn census_corpus(
    graphs: Vec<Graph>,
    sha256: String,
    opts: &CensusOptions,
) -> Result<CensusTable, CensusError> {
    let order = graphs.first().map(|g| g.order()).unwrap_or(0);
    debug_assert!(graphs.iter().all(|g| g.order() == order), "corpus not uniform");
    let id = SourceId::Corpus {
        sha256,
        graphs: graphs.len(),
        order,
    };
    let mut eng = Engine::new(id, opts)?;
    let point = eng.resume.take().unwrap_or(Point::Counting {
        order,
        cursor: 0,
        partial: CensusRow::empty(order, opts.k_max),
        level: None,
    });
    match point {
        Point::Counting {
            order,
            cursor,
            partial,
            level: _,
        } => {
            if !graphs.is_empty() {
                let row = eng.count(order, Items::Graphs(&graphs), cursor, partial, None)?;
                eng.rows.push(row);
            }
            eng.write_manifest(PhaseRepr::Done)?;
            Ok(eng.into_table())
        }
        Point::Done => Ok(eng.into_table()),
        Point::Advancing { .. } => Err(CensusError::Corrupt {
            file: "checkpoint.json".into(),
            reason: "corpus censuses have no generation phase".into(),
        }),
    }
}

fn level_file(order: usize) -> String {
    format!("level_{order}.bin")
}

fn genset_file(order: usize) -> String {
    format!("genset_{order}.bin")
}

// ---------------------------------------------------------------------
// Engine: batching, checkpoints, interruption.

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SourceId {
    Generated { n_max: usize },
    Corpus { sha256: String, graphs: usize, order: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum PhaseRepr {
    Counting {
        order: usize,
        cursor: usize,
        partial: CensusRow,
        level_file: Option<String>,
    },
    Advancing {
        order: usize,
        parent_cursor: usize,
        parent_file: String,
        set_file: Option<String>,
    },
    Done,
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    format_version: u32,
    generator_version: String,
    solver_version: String,
    source: SourceId,
    k_max: usize,
    rows: Vec<CensusRow>,
    phase: PhaseRepr,
    /// Data files this checkpoint depends on, with their digests.
    files: BTreeMap<String, String>,
}

enum Point {
    Counting {
        order: usize,
        cursor: usize,
        partial: CensusRow,
        level: Option<GeneratedLevel>,
    },
    Advancing {
        order: usize,
        parent_cursor: usize,
        parents: GeneratedLevel,
        seen: HashSet<u128>,
    },
    Done,
}

enum Items<'a> {
    Keys(&'a GeneratedLevel),
    Graphs(&'a [Graph]),
}

impl Items<'_> {
    fn len(&self) -> usize {
        match self {
            Items::Keys(level) => level.len(),
            Items::Graphs(gs) => gs.len(),
        }
    }

    fn graph(&self, i: usize) -> Graph {
        match self {
            Items::Keys(level) => level.graph(i),
            Items::Graphs(gs) => gs[i].clone(),
        }
    }

    fn form_string(&self, i: usize) -> String {
        match self {
            Items::Keys(level) => level.form(i).as_str().to_string(),
            Items::Graphs(gs) => canonical_form(&gs[i]).as_str().to_string(),
        }
    }
}

struct Engine {
    k_max: usize,
    batch: usize,
    parent_chunk: usize,
    progress: bool,
    stop: Option<Arc<AtomicBool>>,
    stop_after: Option<usize>,
    dir: Option<PathBuf>,
    id: SourceId,
    rows: Vec<CensusRow>,
    files: BTreeMap<String, String>,
    consumed: usize,
    marked: usize,
    resume: Option<Point>,
}

impl Engine {
    fn new(id: SourceId, opts: &CensusOptions) -> Result<Engine, CensusError> {
        assert!(opts.batch > 0 && opts.parent_chunk > 0, "work unit sizes must be positive");
        let mut eng = Engine {
            k_max: opts.k_max,
            batch: opts.batch,
            parent_chunk: opts.parent_chunk,
            progress: opts.progress,
            stop: opts.stop.clone(),
            stop_after: opts.stop_after,
            dir: opts.checkpoint_dir.clone(),
            id,
            rows: Vec::new(),
            files: BTreeMap::new(),
            consumed: 0,
            marked: 0,
            resume: None,
        };
        if let Some(dir) = eng.dir.clone() {
            fs::create_dir_all(&dir)?;
            eng.try_resume(&dir)?;
        }
        Ok(eng)
    }

    fn note(&self, msg: &str) {
        if self.progress {
            eprintln!("census: {msg}");
        }
    }

    fn should_stop(&self) -> bool {
        if let Some(flag) = &self.stop {
            if flag.load(Ordering::Relaxed) {
                return true;
            }
        }
        self.stop_after.is_some_and(|limit| self.consumed >= limit)
    }

    fn count(
        &mut self,
        order: usize,
        items: Items<'_>,
        mut cursor: usize,
        mut row: CensusRow,
        level_file: Option<String>,
    ) -> Result<CensusRow, CensusError> {
        let total = items.len();
        self.note(&format!("order {order}: classifying {total} classes"));
        while cursor < total {
            if self.should_stop() {
                self.write_manifest(PhaseRepr::Counting {
                    order,
                    cursor,
                    partial: row.clone(),
                    level_file,
                })?;
                return Err(CensusError::Interrupted);
            }
            let end = (cursor + self.batch).min(total);
            let classes = (cursor..end)
                .into_par_iter()
                .map(|i| classify(&items.graph(i), self.k_max))
                .collect::<Result<Vec<_>, SolverError>>()?;
            for (offset, class) in classes.into_iter().enumerate() {
                row.tally(class, || items.form_string(cursor + offset));
            }
            self.consumed += end - cursor;
            cursor = end;
            if self.consumed - self.marked >= CHECKPOINT_EVERY {
                self.marked = self.consumed;
                self.write_manifest(PhaseRepr::Counting {
                    order,
                    cursor,
                    partial: row.clone(),
                    level_file: level_file.clone(),
                })?;
                self.note(&format!("order {order}: {cursor}/{total}"));
            }
        }
        row.complete = true;
        Ok(row)
    }

    fn advance(
        &mut self,
        order: usize,
        parents: &GeneratedLevel,
        mut cursor: usize,
        seen: &mut HashSet<u128>,
    ) -> Result<(), CensusError> {
        let total = parents.len();
        self.note(&format!("order {order}: augmenting {total} parents"));
        while cursor < total {
            if self.should_stop() {
                let set_file = self.save_genset(order, seen)?;
                self.write_manifest(PhaseRepr::Advancing {
                    order,
                    parent_cursor: cursor,
                    parent_file: level_file(order - 1),
                    set_file,
                })?;
                return Err(CensusError::Interrupted);
            }
            let end = (cursor + self.parent_chunk).min(total);
            generate::extend_level(parents, cursor..end, seen);
            self.consumed += end - cursor;
            cursor = end;
            if self.consumed - self.marked >= CHECKPOINT_EVERY {
                self.marked = self.consumed;
                let set_file = self.save_genset(order, seen)?;
                self.write_manifest(PhaseRepr::Advancing {
                    order,
                    parent_cursor: cursor,
                    parent_file: level_file(order - 1),
                    set_file,
                })?;
                self.note(&format!("order {order}: parents {cursor}/{total}"));
            }
        }
        Ok(())
    }

    fn into_table(self) -> CensusTable {
        CensusTable {
            format_version: TABLE_VERSION,
            generator_version: crate::GENERATOR_VERSION.to_string(),
            solver_version: crate::SOLVER_VERSION.to_string(),
            k_max: self.k_max,
            rows: self.rows,
            wall_time_secs: 0.0,
        }
    }

    // -- persistence ----------------------------------------------------

    fn write_atomic(&self, name: &str, bytes: &[u8]) -> Result<(), CensusError> {
        let dir = self.dir.as_ref().expect("write_atomic needs a directory");
        let tmp = dir.join(format!("{name}.tmp"));
        fs::write(&tmp, bytes)?;
        fs::rename(&tmp, dir.join(name))?;
        Ok(())
    }

    fn write_keys_file(&mut self, name: String, keys: &[u128]) -> Result<(), CensusError> {
        if self.dir.is_none() {
            return Ok(());
        }
        let mut bytes = Vec::with_capacity(keys.len() * 16);
        for k in keys {
            bytes.extend_from_slice(&k.to_le_bytes());
        }
        let digest = sha256_hex(&bytes);
        self.write_atomic(&name, &bytes)?;
        self.files.insert(name, digest);
        Ok(())
    }

    fn drop_file(&mut self, name: &str) {
        if self.files.remove(name).is_some() {
            if let Some(dir) = &self.dir {
                let _ = fs::remove_file(dir.join(name));
            }
        }
    }

    fn save_level(&mut self, level: &GeneratedLevel) -> Result<(), CensusError> {
        if self.dir.is_none() {
            return Ok(());
        }
        let order = level.order();
        self.write_keys_file(level_file(order), level.keys())?;
        self.drop_file(&genset_file(order));
        if order > 1 {
            self.drop_file(&level_file(order - 1));
        }
        Ok(())
    }

    fn save_genset(&mut self, order: usize, seen: &HashSet<u128>) -> Result<Option<String>, CensusError> {
        if self.dir.is_none() {
            return Ok(None);
        }
        let mut keys: Vec<u128> = seen.iter().copied().collect();
        keys.sort_unstable();
        let name = genset_file(order);
        self.write_keys_file(name.clone(), &keys)?;
        Ok(Some(name))
    }

    fn write_manifest(&self, phase: PhaseRepr) -> Result<(), CensusError> {
        if self.dir.is_none() {
            return Ok(());
        }
        let manifest = Manifest {
            format_version: MANIFEST_VERSION,
            generator_version: crate::GENERATOR_VERSION.to_string(),
            solver_version: crate::SOLVER_VERSION.to_string(),
            source: self.id.clone(),
            k_max: self.k_max,
            rows: self.rows.clone(),
            phase,
            files: self.files.clone(),
        };
        let text = serde_json::to_string_pretty(&manifest)?;
        self.write_atomic("checkpoint.json", text.as_bytes())
    }

    fn read_keys_file(&self, dir: &Path, name: &str) -> Result<Vec<u128>, CensusError> {
        let corrupt = |reason: &str| CensusError::Corrupt {
            file: name.to_string(),
            reason: reason.to_string(),
        };
        let want = self.files.get(name).ok_or_else(|| corrupt("not listed in the manifest"))?;
        let bytes = fs::read(dir.join(name))?;
        if sha256_hex(&bytes) != *want {
            return Err(corrupt("digest mismatch"));
        }
        if bytes.len() % 16 != 0 {
            return Err(corrupt("length is not a whole number of keys"));
        }
        Ok(bytes
            .chunks_exact(16)
            .map(|c| u128::from_le_bytes(c.try_into().expect("exact chunk")))
            .collect())
    }

    fn try_resume(&mut self, dir: &Path) -> Result<(), CensusError> {
        let path = dir.join("checkpoint.json");
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(()),
            Err(e) => return Err(e.into()),
        };
        let mismatch = |reason: String| CensusError::CheckpointMismatch { reason };
        let man: Manifest = serde_json::from_str(&text).map_err(|e| CensusError::Corrupt {
            file: "checkpoint.json".into(),
            reason: e.to_string(),
        })?;
        if man.format_version != MANIFEST_VERSION {
            return Err(mismatch(format!(
                "checkpoint format {} but this build writes {MANIFEST_VERSION}",
                man.format_version
            )));
        }
        if man.generator_version != crate::GENERATOR_VERSION
            || man.solver_version != crate::SOLVER_VERSION
        {
            return Err(mismatch(format!(
                "made by generator {} / solver {}, this build is {} / {}",
                man.generator_version,
                man.solver_version,
                crate::GENERATOR_VERSION,
                crate::SOLVER_VERSION
            )));
        }
        if man.source != self.id {
            return Err(mismatch("checkpoint was created for a different source".into()));
        }
        if man.k_max != self.k_max {
            return Err(mismatch(format!(
                "checkpoint used k_max {} but this run asks for {}",
                man.k_max, self.k_max
            )));
        }
        self.rows = man.rows;
        self.files = man.files;
        self.resume = Some(match man.phase {
            PhaseRepr::Done => Point::Done,
            PhaseRepr::Counting {
                order,
                cursor,
                partial,
                level_file,
            } => {
                let level = match level_file {
                    Some(name) => Some(GeneratedLevel::from_sorted_keys(
                        order,
                        self.read_keys_file(dir, &name)?,
                    )),
                    None => None,
                };
                if partial.n != order || partial.f.len() != self.k_max {
                    return Err(CensusError::Corrupt {
                        file: "checkpoint.json".into(),
                        reason: "partial row does not match the phase".into(),
                    });
                }
                Point::Counting {
                    order,
                    cursor,
                    partial,
                    level,
                }
            }
            PhaseRepr::Advancing {
                order,
                parent_cursor,
                parent_file,
                set_file,
            } => {
                let parents = GeneratedLevel::from_sorted_keys(
                    order - 1,
                    self.read_keys_file(dir, &parent_file)?,
                );
                let seen = match set_file {
                    Some(name) => self.read_keys_file(dir, &name)?.into_iter().collect(),
                    None if parent_cursor == 0 => HashSet::new(),
                    None => {
                        return Err(CensusError::Corrupt {
                            file: "checkpoint.json".into(),
                            reason: "nonzero parent cursor without a saved set".into(),
                        });
                    }
                };
                Point::Advancing {
                    order,
                    parent_cursor,
                    parents,
                    seen,
                }
            }
        });
        Ok(())
    }
}

// ---------------------------------------------------------------------
// Rendering.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Csv,
    Json,
}

pub fn render(t: &CensusTable, format: RenderFormat) -> String {
    match format {
        RenderFormat::Text => render_text(t),
        RenderFormat::Csv => render_csv(t),
        RenderFormat::Json => {
            let mut s = serde_json::to_string_pretty(t).expect("census table serializes");
            s.push('\n');
            s
        }
    }
}

/// Parse a table back from its JSON rendering, validating the schema.
pub fn parse_json(text: &str) -> Result<CensusTable, CensusError> {
    let t: CensusTable = serde_json::from_str(text)?;
    let corrupt = |reason: String| CensusError::Corrupt {
        file: "census json".into(),
        reason,
    };
    if t.format_version != TABLE_VERSION {
        return Err(corrupt(format!("unknown format version {}", t.format_version)));
    }
    let mut last = 0usize;
    for row in &t.rows {
        if row.n <= last {
            return Err(corrupt("rows out of order".into()));
        }
        last = row.n;
        if row.f.len() != t.k_max || row.witnesses.len() != t.k_max {
            return Err(corrupt(format!("row {} does not have k_max columns", row.n)));
        }
        if row.complete && row.f.iter().sum::<u64>() + row.overflow != row.g_connected {
            return Err(corrupt(format!("row {} breaks conservation", row.n)));
        }
    }
    Ok(t)
}

fn render_csv(t: &CensusTable) -> String {
    let mut s = String::from("n,g,g_connected");
    for k in 1..=t.k_max {
        s.push_str(&format!(",f{k}"));
    }
    s.push_str(",overflow,complete\n");
    for row in &t.rows {
        s.push_str(&format!("{},{},{}", row.n, row.g, row.g_connected));
        for f in &row.f {
            s.push_str(&format!(",{f}"));
        }
        s.push_str(&format!(",{},{}\n", row.overflow, row.complete));
    }
    s
}

fn render_text(t: &CensusTable) -> String {
    let mut s = format!("{:>4} {:>12} {:>12}", "n", "g", "g_c");
    for k in 1..=t.k_max {
        s.push_str(&format!(" {:>12}", format!("f_{k}")));
    }
    s.push_str(&format!(" {:>12}\n", "overflow"));
    for row in &t.rows {
        s.push_str(&format!("{:>4} {:>12} {:>12}", row.n, row.g, row.g_connected));
        for f in &row.f {
            s.push_str(&format!(" {f:>12}"));
        }
        s.push_str(&format!(" {:>12}", row.overflow));
        if !row.complete {
            s.push_str("  (incomplete)");
        }
        s.push('\n');
    }
    s
}

// ---------------------------------------------------------------------
// Minimum-order report.

/// A value that is either pinned exactly or only known to lie beyond the
/// completed horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum Bound {
    Exactly(usize),
    Beyond(usize),
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exactly(n) => write!(f, "= {n}"),
            Bound::Beyond(n) => write!(f, "> {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinOrderEntry {
    pub k: usize,
    /// Least order of a connected graph with cop number at least k.
    pub m: Bound,
    pub m_witness: Option<String>,
    /// Least order of a connected graph with cop number exactly k.
    pub big_m: Bound,
    pub big_m_witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinOrderReport {
    /// Largest order such that rows 1..=horizon are all complete.
    pub horizon: usize,
    pub entries: Vec<MinOrderEntry>,
}

impl fmt::Display for MinOrderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "minimum orders (complete through n = {}):", self.horizon)?;
        for e in &self.entries {
            let wit = |w: &Option<String>| match w {
                Some(s) => format!(" (witness {s})"),
                None => String::new(),
            };
            writeln!(
                f,
                "  m_{k} {m}{mw}; M_{k} {bm}{bw}",
                k = e.k,
                m = e.m,
                mw = wit(&e.m_witness),
                bm = e.big_m,
                bw = wit(&e.big_m_witness),
            )?;
        }
        Ok(())
    }
}

/// Derive m_k and M_k for every k up to the table's k_max, within the
/// contiguous complete prefix of rows.
pub fn derive_min_orders(t: &CensusTable) -> Result<MinOrderReport, CensusError> {
    let incomplete = |reason: &str| CensusError::IncompleteTable {
        reason: reason.to_string(),
    };
    if t.rows.is_empty() {
        return Err(incomplete("no rows at all"));
    }
    for (i, row) in t.rows.iter().enumerate() {
        if row.n != i + 1 {
            return Err(incomplete("rows must cover a contiguous range starting at order 1"));
        }
    }
    let horizon = t.rows.iter().take_while(|r| r.complete).count();
    if horizon == 0 {
        return Err(incomplete("row 1 is not complete"));
    }
    let prefix = &t.rows[..horizon];
    let mut entries = Vec::new();
    for k in 1..=t.k_max {
        let mut m = Bound::Beyond(horizon);
        let mut m_witness = None;
        for row in prefix {
            let hits = row.f[k - 1..].iter().sum::<u64>() + row.overflow;
            if hits > 0 {
                m = Bound::Exactly(row.n);
                m_witness = row.f[k - 1..]
                    .iter()
                    .position(|&c| c > 0)
                    .and_then(|j| row.witnesses[k - 1 + j].clone())
                    .or_else(|| row.overflow_witness.clone());
                break;
            }
        }
        let mut big_m = Bound::Beyond(horizon);
        let mut big_m_witness = None;
        for row in prefix {
            if row.f[k - 1] > 0 {
                big_m = Bound::Exactly(row.n);
                big_m_witness = row.witnesses[k - 1].clone();
                break;
            }
        }
        entries.push(MinOrderEntry {
            k,
            m,
            m_witness,
            big_m,
            big_m_witness,
        });
    }
    Ok(MinOrderReport { horizon, entries })
}

// ---------------------------------------------------------------------
// Claim certificates.

/// Machine-readable verdict for a named claim, with the evidence rows.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub pass: bool,
    pub horizon: usize,
    pub generator_version: String,
    pub solver_version: String,
    pub detail: String,
    pub rows: Vec<CensusRow>,
    pub witness: Option<String>,
    /// sha256 over the JSON of `rows`, so certificates can be compared
    /// and cached by evidence content.
    pub evidence_sha256: String,
}

fn certificate(t: &CensusTable, claim: &str, horizon: usize, pass: bool, detail: String, witness: Option<String>) -> Certificate {
    let rows: Vec<CensusRow> = t.rows.iter().filter(|r| r.n <= horizon).cloned().collect();
    let evidence = serde_json::to_string(&rows).expect("rows serialize");
    Certificate {
        claim: claim.to_string(),
        pass,
        horizon,
        generator_version: t.generator_version.clone(),
        solver_version: t.solver_version.clone(),
        detail,
        rows,
        witness,
        evidence_sha256: sha256_hex(evidence.as_bytes()),
    }
}

/// Claim: every connected graph on at most `horizon` vertices has cop
/// number at most 2. At full strength the horizon is 9.
pub fn check_nine_vertex(t: &CensusTable, horizon: usize) -> Certificate {
    let claim = "nine-vertex";
    if t.k_max < 2 {
        return certificate(t, claim, horizon, false, "table cannot resolve cop number 3 and higher".into(), None);
    }
    for n in 1..=horizon {
        let row = match t.rows.iter().find(|r| r.n == n) {
            Some(r) if r.complete => r,
            _ => {
                return certificate(t, claim, horizon, false, format!("row {n} is missing or incomplete"), None);
            }
        };
        let beyond_two = row.f[2.min(row.f.len())..].iter().sum::<u64>() + row.overflow;
        if beyond_two > 0 {
            return certificate(
                t,
                claim,
                horizon,
                false,
                format!("order {n} has {beyond_two} connected classes needing 3 or more cops"),
                row.witnesses.get(2).cloned().flatten().or_else(|| row.overflow_witness.clone()),
            );
        }
    }
    certificate(
        t,
        claim,
        horizon,
        true,
        format!("every connected graph on at most {horizon} vertices has cop number at most 2"),
        None,
    )
}

/// Claim: exactly one connected graph of order 10 has cop number 3, and
/// it is the Petersen graph.
pub fn check_petersen_unique(t: &CensusTable) -> Certificate {
    let claim = "petersen-unique";
    let fail = |detail: String, witness: Option<String>| certificate(t, claim, 10, false, detail, witness);
    if t.k_max < 3 {
        return fail("table cannot isolate cop number exactly 3".into(), None);
    }
    let row = match t.rows.iter().find(|r| r.n == 10) {
        Some(r) if r.complete => r,
        _ => return fail("row 10 is missing or incomplete".into(), None),
    };
    if row.f[2] != 1 || row.overflow != 0 {
        return fail(
            format!(
                "order 10 has {} classes at cop number 3 and {} beyond, expected exactly 1 and 0",
                row.f[2], row.overflow
            ),
            row.witnesses[2].clone(),
        );
    }
    let witness = row.witnesses[2].clone().expect("count 1 stores its witness");
    let petersen = canonical_form(&construct::petersen());
    if witness != petersen.as_str() {
        return fail(
            format!("the unique 3-cop class is {witness}, not the Petersen graph"),
            Some(witness),
        );
    }
    certificate(
        t,
        claim,
        10,
        true,
        "exactly one connected graph of order 10 needs 3 cops, and it is the Petersen graph".into(),
        Some(witness),
    )
}
