//! Exact pursuit-game solver.
//!
//! The game: some number of cops pick starting vertices, the robber picks
//! one knowing where they stand, and the sides alternate with the cops
//! moving first. On a turn each piece may stay put or slide along one
//! edge (any subset of cops moves). The cops win when a cop and the
//! robber share a vertex, checked after every half-move.
//!
//! States are (sorted cop multiset, robber vertex, side to move); the
//! whole table is solved backwards from the capture states, layer by
//! layer, so `capture_time` counts exactly the cop moves still needed
//! under optimal play. A cop-turn state is winning once one successor is
//! winning (time = successor + 1); a robber-turn state is winning once
//! every successor is (time = worst successor, tracked with one pending
//! counter per state). Since the robber may always stay put, time 0 is
//! exactly co-location.
//!
//! Order and cop-count caps keep the table honest: above them the solver
//! refuses instead of grinding.

use crate::graph::{Graph, VertexSet};
use std::fmt;
use thiserror::Error;

/// The solver enumerates cop multisets, so the table grows like
/// C(n + k - 1, k) * n * 2. These caps keep a solve in memory and minutes.
pub const MAX_COPS: usize = 4;
pub const MAX_SOLVE_ORDER: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("the pursuit game needs a connected graph")]
    Disconnected,
    #[error("cop count must be at least 1")]
    NoCops,
    #[error("solver caps are {MAX_COPS} cops on {MAX_SOLVE_ORDER} vertices; asked for {k} cops on {n}")]
    CapExceeded { k: usize, n: usize },
    #[error("cop number exceeds the solver cap of {cap}")]
    CopNumberAboveCap { cap: usize },
    #[error("no winning cop move from a losing position")]
    NoWinningMove,
    #[error("the robber is already caught")]
    AlreadyCaptured,
    #[error("{k} cop(s) cannot win on this graph")]
    CopsLose { k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    Cops,
    Robber,
}

/// A game position: cop multiset (kept sorted), robber vertex, side to
/// move.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameState {
    cops: Vec<usize>,
    robber: usize,
    turn: Turn,
}

impl GameState {
    pub fn new(cops: &[usize], robber: usize, turn: Turn) -> GameState {
        assert!(
            (1..=MAX_COPS).contains(&cops.len()),
            "cop count {} outside 1..={MAX_COPS}",
            cops.len()
        );
        let mut cops = cops.to_vec();
        cops.sort_unstable();
        GameState {
            cops,
            robber,
            turn,
        }
    }

    pub fn cops(&self) -> &[usize] {
        &self.cops
    }

    pub fn robber(&self) -> usize {
        self.robber
    }

    pub fn turn(&self) -> Turn {
        self.turn
    }

    pub fn is_captured(&self) -> bool {
        self.cops.contains(&self.robber)
    }
}

impl fmt::Display for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} ; {}]", tuple(&self.cops), self.robber)
    }
}

fn tuple(xs: &[usize]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(", "))
}

/// Binomial coefficients C(t, i) for ranking cop multisets.
struct Binomials([[u64; MAX_COPS + 2]; MAX_SOLVE_ORDER + MAX_COPS + 1]);

impl Binomials {
    fn new() -> Binomials {
        let mut c = [[0u64; MAX_COPS + 2]; MAX_SOLVE_ORDER + MAX_COPS + 1];
        for t in 0..c.len() {
            c[t][0] = 1;
            for i in 1..c[t].len() {
                c[t][i] = if t == 0 {
                    0
                } else {
                    c[t - 1][i - 1] + c[t - 1][i]
                };
            }
        }
        Binomials(c)
    }

    fn get(&self, t: usize, i: usize) -> u64 {
        self.0[t][i]
    }
}

/// Solved game table for one (graph, k) pair.
pub struct SolveResult {
    n: usize,
    k: usize,
    binom: Binomials,
    win: Vec<bool>,
    time: Vec<u32>,
    overall: bool,
    opening: Option<(Vec<usize>, u32)>,
}

impl fmt::Debug for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolveResult")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("overall", &self.overall)
            .field("opening", &self.opening)
            .finish_non_exhaustive()
    }
}

impl SolveResult {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cop_count(&self) -> usize {
        self.k
    }

    /// Do the cops win with best play from the initial placement phase
    /// (cops place first, robber replies)?
    pub fn cops_win_overall(&self) -> bool {
        self.overall
    }

    /// Best opening placement: minimizes the worst-case capture time over
    /// robber replies, ties broken toward the lexicographically least
    /// tuple. None when the robber wins the game outright.
    pub fn optimal_opening(&self) -> Option<(&[usize], u32)> {
        self.opening.as_ref().map(|(c, t)| (c.as_slice(), *t))
    }

    pub fn is_cop_win(&self, st: &GameState) -> bool {
        self.win[self.index(st)]
    }

    /// Cop moves remaining under optimal play, or None when the robber
    /// escapes forever.
    pub fn capture_time(&self, st: &GameState) -> Option<u32> {
        let i = self.index(st);
        self.win[i].then(|| self.time[i])
    }

    fn rank_of(&self, cops: &[usize]) -> usize {
        let mut sorted = [0u8; MAX_COPS];
        for (slot, &c) in sorted.iter_mut().zip(cops) {
            *slot = c as u8;
        }
        sorted[..cops.len()].sort_unstable();
        rank(&self.binom, &sorted[..cops.len()])
    }

    fn index(&self, st: &GameState) -> usize {
        assert_eq!(st.cops.len(), self.k, "state has {} cops, table has {}", st.cops.len(), self.k);
        assert!(
            st.cops.iter().all(|&c| c < self.n) && st.robber < self.n,
            "state {st} out of range for order {}",
            self.n
        );
        let turn = match st.turn {
            Turn::Cops => 0,
            Turn::Robber => 1,
        };
        (self.rank_of(&st.cops) * self.n + st.robber) * 2 + turn
    }
}

/// Colex rank of a sorted cop multiset.
fn rank(binom: &Binomials, sorted: &[u8]) -> usize {
    let mut r = 0u64;
    for (i, &c) in sorted.iter().enumerate() {
        r += binom.get(c as usize + i, i + 1);
    }
    r as usize
}

fn check_caps(g: &Graph, k: usize) -> Result<(), SolverError> {
    if k == 0 {
        return Err(SolverError::NoCops);
    }
    if k > MAX_COPS || g.order() > MAX_SOLVE_ORDER {
        return Err(SolverError::CapExceeded { k, n: g.order() });
    }
    if !g.is_connected() {
        return Err(SolverError::Disconnected);
    }
    Ok(())
}

/// Solve the k-cop game on g by backward induction over the full state
/// table.
pub fn cops_win(g: &Graph, k: usize) -> Result<SolveResult, SolverError> {
    check_caps(g, k)?;
    let n = g.order();
    let binom = Binomials::new();
    let m = binom.get(n + k - 1, k) as usize;

    // Closed neighborhoods as sorted lists (robber and cop moves) and a
    // sorted cop tuple per rank.
    let closed: Vec<Vec<u8>> = (0..n)
        .map(|v| g.closed_neighborhood(v).iter().map(|u| u as u8).collect())
        .collect();
    let mut sets = vec![[0u8; MAX_COPS]; m];
    {
        let mut tup = [0u8; MAX_COPS];
        enumerate_multisets(n, k, &mut tup, 0, 0, &mut |t| {
            sets[rank(&binom, &t[..k])] = *t;
        });
    }

    let states = m * n * 2;
    let mut win = vec![false; states];
    let mut time = vec![0u32; states];
    let mut pending = vec![0u16; m * n];
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new()];

    for (r_idx, set) in sets.iter().enumerate() {
        let mask = cop_mask(&set[..k]);
        for v in 0..n {
            let base = (r_idx * n + v) * 2;
            if mask >> v & 1 == 1 {
                win[base] = true;
                win[base + 1] = true;
                buckets[0].push(base as u32);
                buckets[0].push(base as u32 + 1);
            } else {
                pending[r_idx * n + v] = closed[v].len() as u16;
            }
        }
    }

    let mut d = 0usize;
    while d < buckets.len() {
        let mut i = 0;
        while i < buckets[d].len() {
            let s = buckets[d][i] as usize;
            i += 1;
            let turn = s & 1;
            let rest = s >> 1;
            let (r_idx, v) = (rest / n, rest % n);
            if turn == 1 {
                // Robber-turn state proven at time d: every cop-turn state
                // one joint cop move away now wins in d + 1.
                if d + 1 >= buckets.len() {
                    buckets.resize(d + 2, Vec::new());
                }
                let set = sets[r_idx];
                for_each_joint_move(&closed, &set[..k], &mut |moved| {
                    let p = (rank(&binom, moved) * n + v) * 2;
                    if !win[p] {
                        win[p] = true;
                        time[p] = d as u32 + 1;
                        buckets[d + 1].push(p as u32);
                    }
                });
            } else {
                // Cop-turn state proven at time d: robber-turn neighbors
                // lose an escape option; out of options means proven at d.
                let mask = cop_mask(&sets[r_idx][..k]);
                for &r2 in &closed[v] {
                    let r2 = r2 as usize;
                    if mask >> r2 & 1 == 1 {
                        continue; // capture state, proven at setup
                    }
                    let flat = r_idx * n + r2;
                    let p = flat * 2 + 1;
                    if win[p] {
                        continue;
                    }
                    pending[flat] -= 1;
                    if pending[flat] == 0 {
                        win[p] = true;
                        time[p] = d as u32;
                        buckets[d].push(p as u32);
                    }
                }
            }
        }
        d += 1;
    }

    // Placement phase: cops pick a multiset, robber picks the worst reply.
    let mut opening: Option<(usize, u32)> = None;
    for r_idx in 0..m {
        let mut worst = 0u32;
        let mut all = true;
        for v in 0..n {
            let s = (r_idx * n + v) * 2;
            if !win[s] {
                all = false;
                break;
            }
            worst = worst.max(time[s]);
        }
        if !all {
            continue;
        }
        let better = match opening {
            None => true,
            Some((best_idx, best_worst)) => {
                worst < best_worst
                    || (worst == best_worst && sets[r_idx][..k] < sets[best_idx][..k])
            }
        };
        if better {
            opening = Some((r_idx, worst));
        }
    }

    let opening = opening.map(|(r_idx, worst)| {
        let cops: Vec<usize> = sets[r_idx][..k].iter().map(|&c| c as usize).collect();
        (cops, worst)
    });

    Ok(SolveResult {
        n,
        k,
        binom,
        win,
        time,
        overall: opening.is_some(),
        opening,
    })
}

fn cop_mask(cops: &[u8]) -> u64 {
    cops.iter().fold(0u64, |m, &c| m | 1 << c)
}

/// All sorted k-tuples over 0..n, ascending entries.
fn enumerate_multisets(
    n: usize,
    k: usize,
    tup: &mut [u8; MAX_COPS],
    pos: usize,
    low: usize,
    f: &mut impl FnMut(&[u8; MAX_COPS]),
) {
    if pos == k {
        f(tup);
        return;
    }
    for v in low..n {
        tup[pos] = v as u8;
        enumerate_multisets(n, k, tup, pos + 1, v, f);
    }
}

/// Every multiset reachable from `cops` in one joint move (each cop stays
/// or slides one edge). Tuples are handed over sorted; duplicates occur
/// and callers must tolerate them.
fn for_each_joint_move(closed: &[Vec<u8>], cops: &[u8], f: &mut impl FnMut(&[u8])) {
    let k = cops.len();
    let mut cur = [0u8; MAX_COPS];
    fn rec(
        closed: &[Vec<u8>],
        cops: &[u8],
        cur: &mut [u8; MAX_COPS],
        pos: usize,
        f: &mut impl FnMut(&[u8]),
    ) {
        if pos == cops.len() {
            let mut sorted = *cur;
            sorted[..cops.len()].sort_unstable();
            f(&sorted[..cops.len()]);
            return;
        }
        for &dest in &closed[cops[pos] as usize] {
            cur[pos] = dest;
            rec(closed, cops, cur, pos + 1, f);
        }
    }
    rec(closed, cops, &mut cur, 0, f);
    let _ = k;
}

/// Exact cop number, refusing beyond `k_max`. Returns None when more than
/// `k_max` cops are needed. The k = 1 case goes through dismantlability,
/// which is both faster and an independent characterization.
pub fn cop_number_bounded(g: &Graph, k_max: usize) -> Result<Option<usize>, SolverError> {
    if k_max == 0 {
        return Err(SolverError::NoCops);
    }
    if k_max > MAX_COPS {
        return Err(SolverError::CapExceeded {
            k: k_max,
            n: g.order(),
        });
    }
    if !g.is_connected() {
        return Err(SolverError::Disconnected);
    }
    if is_copwin_dismantlable(g) {
        return Ok(Some(1));
    }
    for k in 2..=k_max.min(g.order()) {
        if cops_win(g, k)?.cops_win_overall() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Exact cop number under the solver caps.
pub fn cop_number(g: &Graph) -> Result<usize, SolverError> {
    match cop_number_bounded(g, MAX_COPS)? {
        Some(c) => Ok(c),
        None => Err(SolverError::CopNumberAboveCap { cap: MAX_COPS }),
    }
}

/// Greedy dismantling: repeatedly delete the lowest-index vertex whose
/// closed neighborhood is covered by another remaining vertex. Returns
/// the deletion order (last entry is the survivor) if the graph strips
/// down to a single vertex — which happens exactly when one cop wins.
pub fn copwin_ordering(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    let mut alive = g.all_vertices();
    let mut order = Vec::with_capacity(n);
    'strip: while alive.len() > 1 {
        for v in alive.iter() {
            let nv = g.closed_neighborhood(v).intersection(alive).bits();
            for w in alive.iter() {
                if w == v {
                    continue;
                }
                let nw = g.closed_neighborhood(w).intersection(alive).bits();
                if nv & !nw == 0 {
                    alive = alive.remove(v);
                    order.push(v);
                    continue 'strip;
                }
            }
        }
        return None;
    }
    order.push(alive.smallest().expect("one vertex remains"));
    Some(order)
}

pub fn is_copwin_dismantlable(g: &Graph) -> bool {
    copwin_ordering(g).is_some()
}

fn cops_vertex_set(g: &Graph, cops: &[usize]) -> VertexSet {
    assert!(
        !cops.is_empty() && cops.iter().all(|&c| c < g.order()),
        "cop placement {cops:?} out of range"
    );
    cops.iter().copied().collect()
}

/// The robber's safe neighborhood: the territory reachable without ever
/// stepping into the cops' closed neighborhood. Away from the cops that
/// is the robber's component of G - N[C]; adjacent to a cop it is the
/// union of such components one robber move away; empty when the robber
/// is caught or cornered.
pub fn safe_neighborhood(g: &Graph, cops: &[usize], robber: usize) -> VertexSet {
    let cop_set = cops_vertex_set(g, cops);
    assert!(robber < g.order(), "robber {robber} out of range");
    if cop_set.contains(robber) {
        return VertexSet::EMPTY;
    }
    let covered = g.set_closed_neighborhood(cop_set);
    let free = g.all_vertices().difference(covered);
    if !covered.contains(robber) {
        return g.component_containing(robber, free);
    }
    let mut out = VertexSet::EMPTY;
    let mut gates = g.neighborhood(robber).intersection(free);
    while let Some(x) = gates.smallest() {
        let comp = g.component_containing(x, free);
        out = out.union(comp);
        gates = gates.difference(comp);
    }
    out
}

/// Cornered with the cops to move: every square the robber can reach is
/// already covered. Requires an uncaptured robber.
pub fn is_trapped(g: &Graph, cops: &[usize], robber: usize) -> bool {
    let cop_set = cops_vertex_set(g, cops);
    assert!(
        !cop_set.contains(robber),
        "trapped is a question about an uncaptured robber"
    );
    let covered = g.set_closed_neighborhood(cop_set);
    covered.contains(robber) && g.neighborhood(robber).is_subset_of(covered)
}

/// Sufficient condition for a cop win with the cops to move: the safe
/// neighborhood holds at most two vertices and its boundary is at most
/// 2k - 1 vertices (k >= 2 cops).
pub fn endgame_cop_win_small_safe(g: &Graph, cops: &[usize], robber: usize) -> bool {
    let k = cops.len();
    if k < 2 {
        return false;
    }
    let s = safe_neighborhood(g, cops, robber);
    s.len() <= 2 && g.set_neighborhood(s).len() <= 2 * k - 1
}

/// Sufficient condition for a cop win with the cops to move: everything
/// in the safe neighborhood has degree at most 3 in g, with at most one
/// vertex of degree exactly 3 (k >= 2 cops).
pub fn endgame_cop_win_low_degree(g: &Graph, cops: &[usize], robber: usize) -> bool {
    let k = cops.len();
    if k < 2 {
        return false;
    }
    let s = safe_neighborhood(g, cops, robber);
    let mut deg3 = 0usize;
    for v in s.iter() {
        match g.degree(v) {
            0..=2 => {}
            3 => deg3 += 1,
            _ => return false,
        }
    }
    deg3 <= 1
}

/// The table's move choice from `st`: cops go for the quickest capture,
/// a winning robber goes anywhere that stays winning, a losing robber
/// stalls as long as possible. Ties always break toward the
/// lexicographically least successor, so play is reproducible.
pub fn optimal_move(g: &Graph, res: &SolveResult, st: &GameState) -> Result<GameState, SolverError> {
    assert_eq!(g.order(), res.order(), "graph does not match the solve table");
    if st.is_captured() {
        return Err(SolverError::AlreadyCaptured);
    }
    match st.turn {
        Turn::Cops => {
            if !res.is_cop_win(st) {
                return Err(SolverError::NoWinningMove);
            }
            let closed: Vec<Vec<u8>> = (0..g.order())
                .map(|v| g.closed_neighborhood(v).iter().map(|u| u as u8).collect())
                .collect();
            let cops_u8: Vec<u8> = st.cops.iter().map(|&c| c as u8).collect();
            let mut moves: Vec<Vec<usize>> = Vec::new();
            for_each_joint_move(&closed, &cops_u8, &mut |m| {
                moves.push(m.iter().map(|&c| c as usize).collect());
            });
            moves.sort_unstable();
            moves.dedup();
            let mut best: Option<(u32, GameState)> = None;
            for mv in moves {
                let succ = GameState {
                    cops: mv,
                    robber: st.robber,
                    turn: Turn::Robber,
                };
                if let Some(t) = res.capture_time(&succ) {
                    if best.as_ref().map_or(true, |(bt, _)| t < *bt) {
                        best = Some((t, succ));
                    }
                }
            }
            Ok(best.expect("winning cop state has a winning move").1)
        }
        Turn::Robber => {
            let winning = res.is_cop_win(st);
            let mut choice: Option<(u32, GameState)> = None;
            for v in g.closed_neighborhood(st.robber).iter() {
                let succ = GameState {
                    cops: st.cops.clone(),
                    robber: v,
                    turn: Turn::Cops,
                };
                if winning {
                    // Stall: maximize remaining capture time.
                    let t = res
                        .capture_time(&succ)
                        .expect("all successors of a won robber state are won");
                    if choice.as_ref().map_or(true, |(bt, _)| t > *bt) {
                        choice = Some((t, succ));
                    }
                } else if !res.is_cop_win(&succ) && choice.is_none() {
                    choice = Some((0, succ));
                }
            }
            Ok(choice.expect("robber always has the stay-put move").1)
        }
    }
}

/// Full optimal-vs-optimal game record for k cops on g.
#[derive(Debug, Clone)]
pub struct Transcript {
    pub k: usize,
    /// States from the opening (cops to move) to the capture state.
    pub states: Vec<GameState>,
    pub cop_moves: u32,
}

/// Play out k cops versus the robber with both sides optimal, starting
/// from the solver's preferred opening.
pub fn play_transcript(g: &Graph, k: usize) -> Result<Transcript, SolverError> {
    let res = cops_win(g, k)?;
    let (cops, _) = res.optimal_opening().ok_or(SolverError::CopsLose { k })?;
    let cops: Vec<usize> = cops.to_vec();
    // Robber reply: stall as long as possible, lowest vertex on ties.
    let mut reply = 0usize;
    let mut reply_t = 0u32;
    let mut first = true;
    for v in 0..g.order() {
        let t = res
            .capture_time(&GameState::new(&cops, v, Turn::Cops))
            .expect("every reply to a winning opening is winning");
        if first || t > reply_t {
            reply = v;
            reply_t = t;
            first = false;
        }
    }
    let mut state = GameState::new(&cops, reply, Turn::Cops);
    let mut states = vec![state.clone()];
    let mut cop_moves = 0u32;
    while !state.is_captured() {
        let was_cops = state.turn == Turn::Cops;
        state = optimal_move(g, &res, &state)?;
        if was_cops {
            cop_moves += 1;
        }
        states.push(state.clone());
    }
    Ok(Transcript {
        k,
        states,
        cop_moves,
    })
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let first = &self.states[0];
        writeln!(f, "place cops {}", tuple(first.cops()))?;
        writeln!(f, "place robber {}", first.robber())?;
        for pair in self.states.windows(2) {
            let (before, after) = (&pair[0], &pair[1]);
            match before.turn() {
                Turn::Cops => writeln!(f, "cops -> {}  {after}", tuple(after.cops()))?,
                Turn::Robber => writeln!(f, "robber -> {}  {after}", after.robber())?,
            }
        }
        let last = self.states.last().expect("transcript has states");
        let plural = if self.cop_moves == 1 { "" } else { "s" };
        writeln!(
            f,
            "captured at {} after {} cop move{plural}",
            last.robber(),
            self.cop_moves
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn cycle(n: usize) -> Graph {
        construct::cycle(n).unwrap()
    }

    fn path(n: usize) -> Graph {
        construct::path(n).unwrap()
    }

    #[test]
    fn single_cop_sweeps_paths_and_trees() {
        for n in [1usize, 2, 3, 6, 12] {
            let g = path(n);
            assert!(cops_win(&g, 1).unwrap().cops_win_overall(), "path {n}");
            assert_eq!(cop_number(&g).unwrap(), 1);
        }
        let star = construct::star(7).unwrap();
        assert!(is_copwin_dismantlable(&star));
        assert_eq!(cop_number(&star).unwrap(), 1);
    }

    #[test]
    fn cycles_need_exactly_two_cops() {
        for n in 4..=12 {
            let g = cycle(n);
            assert!(!cops_win(&g, 1).unwrap().cops_win_overall(), "cycle {n}, one cop");
            assert!(cops_win(&g, 2).unwrap().cops_win_overall(), "cycle {n}, two cops");
            assert_eq!(cop_number(&g).unwrap(), 2, "cycle {n}");
        }
        assert_eq!(cop_number(&cycle(3)).unwrap(), 1);
    }

    #[test]
    fn petersen_needs_three() {
        let p = construct::petersen();
        assert!(!is_copwin_dismantlable(&p));
        assert!(!cops_win(&p, 2).unwrap().cops_win_overall());
        assert!(cops_win(&p, 3).unwrap().cops_win_overall());
        assert_eq!(cop_number(&p).unwrap(), 3);
    }

    #[test]
    fn four_cycle_capture_time_is_one() {
        let res = cops_win(&cycle(4), 2).unwrap();
        let (opening, worst) = res.optimal_opening().unwrap();
        assert_eq!(opening, &[0, 1]);
        assert_eq!(worst, 1);
    }

    #[test]
    fn state_queries_on_the_four_cycle() {
        let g = cycle(4);
        let res = cops_win(&g, 1).unwrap();
        assert!(!res.cops_win_overall());
        // Lone cop, robber opposite: the robber mirrors forever.
        let st = GameState::new(&[0], 2, Turn::Cops);
        assert!(!res.is_cop_win(&st));
        assert_eq!(res.capture_time(&st), None);
        // Robber to move right next to the cop still escapes.
        let st = GameState::new(&[0], 1, Turn::Robber);
        assert!(!res.is_cop_win(&st));
        // Co-location is time zero.
        let st = GameState::new(&[2], 2, Turn::Robber);
        assert_eq!(res.capture_time(&st), Some(0));
    }

    #[test]
    fn dismantling_orders_are_valid() {
        // Validate the ordering invariant: each deleted vertex must be
        // dominated within the graph remaining at its turn.
        for g in [path(6), construct::star(5).unwrap(), cycle(3)] {
            let order = copwin_ordering(&g).expect("cop-win graph");
            assert_eq!(order.len(), g.order());
            let mut alive = g.all_vertices();
            for &v in &order[..order.len() - 1] {
                let nv = g.closed_neighborhood(v).intersection(alive);
                let ok = alive
                    .iter()
                    .filter(|&w| w != v)
                    .any(|w| nv.is_subset_of(g.closed_neighborhood(w).intersection(alive)));
                assert!(ok, "vertex {v} was not dominated when deleted");
                alive = alive.remove(v);
            }
        }
        assert!(copwin_ordering(&cycle(4)).is_none());
        assert!(copwin_ordering(&construct::petersen()).is_none());
    }

    #[test]
    fn safe_neighborhood_on_the_six_cycle() {
        let g = cycle(6);
        // Far side of the cycle, minus the cop's closed neighborhood.
        assert_eq!(
            safe_neighborhood(&g, &[0], 3),
            VertexSet::from_iter([2, 3, 4])
        );
        // Next to the cop the robber still reaches that territory.
        assert_eq!(
            safe_neighborhood(&g, &[0], 1),
            VertexSet::from_iter([2, 3, 4])
        );
        // On the cop: nothing.
        assert!(safe_neighborhood(&g, &[0], 0).is_empty());
    }

    #[test]
    fn trapped_matches_cornering() {
        let g = cycle(4);
        assert!(is_trapped(&g, &[0, 2], 1));
        assert!(safe_neighborhood(&g, &[0, 2], 1).is_empty());
        assert!(!is_trapped(&g, &[0], 1));
        let p = path(4);
        // End of the path, cop adjacent: nowhere to go.
        assert!(is_trapped(&p, &[1], 0));
        assert!(!is_trapped(&p, &[1], 3));
    }

    #[test]
    fn endgame_conditions_flag_won_positions() {
        let g = cycle(8);
        // Cops flank a single safe vertex.
        let s = safe_neighborhood(&g, &[0, 4], 2);
        assert_eq!(s, VertexSet::from_iter([2]));
        assert!(endgame_cop_win_small_safe(&g, &[0, 4], 2));
        assert!(endgame_cop_win_low_degree(&g, &[0, 4], 2));
        // And the full table agrees the cops win from there.
        let res = cops_win(&g, 2).unwrap();
        assert!(res.is_cop_win(&GameState::new(&[0, 4], 2, Turn::Cops)));
        // One cop never qualifies.
        assert!(!endgame_cop_win_small_safe(&g, &[0], 2));
    }

    #[test]
    fn two_vertex_transcript_is_immediate() {
        let t = play_transcript(&path(2), 1).unwrap();
        assert_eq!(t.cop_moves, 1);
        let text = t.to_string();
        assert!(text.starts_with("place cops (0)\nplace robber 1\n"), "{text}");
        assert!(text.ends_with("captured at 1 after 1 cop move\n"), "{text}");
    }

    #[test]
    fn four_cycle_transcript_golden() {
        let t = play_transcript(&cycle(4), 2).unwrap();
        assert_eq!(
            t.to_string(),
            "place cops (0, 1)\n\
             place robber 2\n\
             cops -> (0, 2)  [(0, 2) ; 2]\n\
             captured at 2 after 1 cop move\n"
        );
    }

    #[test]
    fn transcript_cop_moves_match_capture_time() {
        for (g, k) in [(cycle(5), 2), (cycle(8), 2), (path(7), 1), (construct::petersen(), 3)] {
            let res = cops_win(&g, k).unwrap();
            let (_, worst) = res.optimal_opening().unwrap();
            let t = play_transcript(&g, k).unwrap();
            assert_eq!(t.cop_moves, worst, "order {} k {k}", g.order());
        }
    }

    #[test]
    fn losing_cop_counts_are_refused() {
        assert_eq!(
            play_transcript(&cycle(4), 1).unwrap_err(),
            SolverError::CopsLose { k: 1 }
        );
        let res = cops_win(&cycle(4), 1).unwrap();
        let st = GameState::new(&[0], 2, Turn::Cops);
        assert_eq!(
            optimal_move(&cycle(4), &res, &st).unwrap_err(),
            SolverError::NoWinningMove
        );
    }

    #[test]
    fn caps_and_contracts_are_enforced() {
        let g = cycle(4);
        assert_eq!(cops_win(&g, 0).unwrap_err(), SolverError::NoCops);
        assert_eq!(
            cops_win(&g, 5).unwrap_err(),
            SolverError::CapExceeded { k: 5, n: 4 }
        );
        let big = construct::cycle(31).unwrap();
        assert_eq!(
            cops_win(&big, 2).unwrap_err(),
            SolverError::CapExceeded { k: 2, n: 31 }
        );
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(cops_win(&split, 1).unwrap_err(), SolverError::Disconnected);
        assert_eq!(cop_number(&split).unwrap_err(), SolverError::Disconnected);
    }

    #[test]
    fn monotone_in_cop_count_small() {
        for n in 3..=6 {
            for g in [cycle(n), path(n)] {
                for k in 1..n.min(4) {
                    let a = cops_win(&g, k).unwrap().cops_win_overall();
                    let b = cops_win(&g, k + 1).unwrap().cops_win_overall();
                    assert!(!a || b, "monotonicity broken at n={n}, k={k}");
                }
            }
        }
    }
}
