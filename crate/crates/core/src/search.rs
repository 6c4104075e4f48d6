//! Zero-sum subset detection and exhaustive zero-sum-free set search.
//!
//! A set is zero-sum-free here when no subset of cardinality exactly exp(G)
//! sums to the identity; g(G) is one more than the largest free set. The
//! searcher enumerates free sets as sorted index lists, depth-first, with
//! three prunes:
//!
//! - feasibility: a child that completes a zero-sum exp(G)-subset is not
//!   free (tracked incrementally by a per-node bitset DP);
//! - canonicity: at depths <= canonical_depth only sets that are the
//!   lexicographically least member of their affine orbit are extended
//!   (a lex-least set has lex-least prefixes, so one representative per
//!   orbit of every free set survives);
//! - potential: a branch that cannot reach the size of the verified
//!   two-row construction is dropped (sound because that size is a proven
//!   lower bound for the maximum, and it is a pure function of the group,
//!   so the search tree does not depend on scheduling).
//!
//! The resulting tree is fixed. Workers share a LIFO frontier; a node
//! budget stops the search by pushing the unexpanded node back, so the
//! checkpointed frontier's subtrees plus the expanded nodes always cover
//! the whole tree, and resuming reproduces the uninterrupted report.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::{Condvar, Mutex};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::group::{enumerate_affine_symmetries, GroupElement, GroupSpec, GroupSubset};

/// Hard cap on group order for the bitset search engine (one u64 of
/// element bits) and on exp(G) for its DP rows.
const ENGINE_ORDER_LIMIT: usize = 64;
const ENGINE_EXP_LIMIT: usize = 8;

/// exp(G) distinct elements of the queried subset summing to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumWitness {
    elements: Vec<GroupElement>,
}

impl ZeroSumWitness {
    /// Checks the claimed elements against the subset and wraps them.
    pub fn verify(x: &GroupSubset, elements: Vec<GroupElement>) -> Result<Self> {
        let group = x.group();
        let mut indices = Vec::with_capacity(elements.len());
        for e in &elements {
            if !x.contains(e) {
                return Err(Error::Inconsistent(format!(
                    "witness element {e} not in the queried set"
                )));
            }
            indices.push(group.element_index(e)?);
        }
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != indices.len() {
            return Err(Error::Inconsistent("witness elements repeat".into()));
        }
        if group.sum(&elements)? != group.identity() {
            return Err(Error::Inconsistent("witness does not sum to zero".into()));
        }
        Ok(ZeroSumWitness { elements })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Subset-sum DP over a list of elements (repeats allowed) with state
/// (cardinality <= e, group element) and first-set parent links. Returns
/// the positions of e entries summing to the identity, in ascending order.
fn zero_sum_positions(
    group: &GroupSpec,
    elems: &[GroupElement],
    e: usize,
) -> Result<Option<Vec<usize>>> {
    let order = group.order();
    // add_perm[pos][g] = index of (element g + entry pos).
    let mut add_perm = Vec::with_capacity(elems.len());
    for elem in elems {
        group.validate(elem)?;
        let mut perm = Vec::with_capacity(order);
        for g in 0..order {
            perm.push(group.element_index(&group.add(&group.element_at(g)?, elem)?)?);
        }
        add_perm.push(perm);
    }
    const NO_PARENT: u32 = u32::MAX;
    let mut reach = vec![false; (e + 1) * order];
    let mut parent = vec![NO_PARENT; (e + 1) * order];
    reach[0] = true;
    for (pos, perm) in add_perm.iter().enumerate() {
        for c in (1..=e).rev() {
            for g in 0..order {
                if !reach[(c - 1) * order + g] {
                    continue;
                }
                let dst = c * order + perm[g];
                if !reach[dst] {
                    reach[dst] = true;
                    parent[dst] = pos as u32;
                }
            }
        }
    }
    if !reach[e * order] {
        return Ok(None);
    }
    let mut positions = Vec::with_capacity(e);
    let (mut c, mut g) = (e, 0usize);
    while c > 0 {
        let pos = parent[c * order + g] as usize;
        g = group.element_index(&group.sub(&group.element_at(g)?, &elems[pos])?)?;
        positions.push(pos);
        c -= 1;
    }
    debug_assert_eq!(g, 0);
    positions.reverse();
    Ok(Some(positions))
}

/// Finds e distinct elements of X summing to the identity, if any exist.
/// Works for any group the crate can represent; e > |X| simply yields None.
pub fn find_zero_sum_subset(x: &GroupSubset, e: usize) -> Result<Option<ZeroSumWitness>> {
    if e == 0 {
        return Err(Error::Arity {
            k: 0,
            size: x.cardinality(),
        });
    }
    let members = x.elements();
    if e > members.len() {
        return Ok(None);
    }
    match zero_sum_positions(x.group(), &members, e)? {
        Some(positions) => {
            let chosen: Vec<GroupElement> =
                positions.into_iter().map(|p| members[p].clone()).collect();
            Ok(Some(ZeroSumWitness::verify(x, chosen)?))
        }
        None => Ok(None),
    }
}

/// Multiset variant: finds e entries of the list (distinct positions, values
/// may repeat) summing to the identity, returning the chosen values.
pub fn find_zero_sum_selection(
    group: &GroupSpec,
    elems: &[GroupElement],
    e: usize,
) -> Result<Option<Vec<GroupElement>>> {
    if e == 0 {
        return Err(Error::Arity {
            k: 0,
            size: elems.len(),
        });
    }
    if e > elems.len() {
        return Ok(None);
    }
    match zero_sum_positions(group, elems, e)? {
        Some(positions) => {
            let chosen: Vec<GroupElement> =
                positions.into_iter().map(|p| elems[p].clone()).collect();
            if group.sum(&chosen)? != group.identity() {
                return Err(Error::Inconsistent("selection does not sum to zero".into()));
            }
            Ok(Some(chosen))
        }
        None => Ok(None),
    }
}

/// Whether X contains no zero-sum subset of cardinality exp(G).
pub fn is_zero_sum_free(x: &GroupSubset) -> Result<bool> {
    Ok(find_zero_sum_subset(x, x.group().exponent())?.is_none())
}

/// The two-row lower-bound constructions in Z_n^2: for odd n the 2n-2
/// elements (0,0..n-2) and (1,1..n-1); for even n all of rows 0 and 1
/// (2n elements). Verified zero-sum-free before being returned.
pub fn extremal_construction(n: u32) -> Result<GroupSubset> {
    let group = GroupSpec::square(n)?;
    let mut elems = Vec::new();
    if n % 2 == 1 {
        for b in 0..n - 1 {
            elems.push(group.element(vec![0, b])?);
        }
        for b in 1..n {
            elems.push(group.element(vec![1, b])?);
        }
    } else {
        for a in 0..2 {
            for b in 0..n {
                elems.push(group.element(vec![a, b])?);
            }
        }
    }
    let subset = GroupSubset::from_elements(&group, &elems)?;
    if find_zero_sum_subset(&subset, group.exponent())?.is_some() {
        return Err(Error::Inconsistent(format!(
            "construction for n={n} is not zero-sum-free"
        )));
    }
    Ok(subset)
}

/// Tuning knobs for the free-set search. `modulus_limit` caps exp(G);
/// `node_budget` = 0 means unlimited; `canonical_depth` is how deep the
/// orbit-representative filter applies.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub workers: usize,
    pub node_budget: u64,
    pub canonical_depth: usize,
    pub modulus_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            workers: 1,
            node_budget: 0,
            canonical_depth: 3,
            modulus_limit: 8,
        }
    }
}

/// Outcome of a free-set search. `max_free_size` and `example_set` are
/// pure functions of the group once `exhausted` is true; `nodes_explored`
/// and `wall_time` describe the run itself (a resumed run counts only its
/// own expansions).
#[derive(Debug, Clone)]
pub struct FreeSetReport {
    pub group: GroupSpec,
    pub max_free_size: usize,
    pub example_set: GroupSubset,
    pub exhausted: bool,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

/// A stopped search: the unexpanded frontier plus the best size seen.
/// Text form: header `zerosum-ckpt v1 group=<G> best=<k>`, then one
/// frontier node per line in the subset text format. Serializing what was
/// parsed reproduces the input byte for byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchCheckpoint {
    group: GroupSpec,
    best: usize,
    frontier: Vec<Vec<u8>>,
    sym_fingerprint: u64,
}

impl SearchCheckpoint {
    fn from_nodes(group: &GroupSpec, best: usize, nodes: &[Node], sym_fingerprint: u64) -> Self {
        let mut frontier: Vec<Vec<u8>> = nodes.iter().map(|n| n.set.clone()).collect();
        frontier.sort_unstable();
        SearchCheckpoint {
            group: group.clone(),
            best,
            frontier,
            sym_fingerprint,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn best(&self) -> usize {
        self.best
    }

    pub fn frontier_len(&self) -> usize {
        self.frontier.len()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("zerosum-ckpt v1 group={} best={}\n", self.group, self.best);
        for node in &self.frontier {
            let indices: Vec<usize> = node.iter().map(|&i| i as usize).collect();
            let subset = GroupSubset::from_indices(&self.group, &indices)
                .expect("frontier indices are valid");
            out.push_str(&subset.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::CheckpointMismatch("empty checkpoint".into()))?;
        let parts: Vec<&str> = header.split(' ').collect();
        if parts.len() != 4 || parts[0] != "zerosum-ckpt" || parts[1] != "v1" {
            return Err(Error::CheckpointMismatch(format!(
                "unrecognized header {header:?}"
            )));
        }
        let group_str = parts[2]
            .strip_prefix("group=")
            .ok_or_else(|| Error::CheckpointMismatch(format!("bad group field {:?}", parts[2])))?;
        let group = GroupSpec::parse(group_str)?;
        let best: usize = parts[3]
            .strip_prefix("best=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::CheckpointMismatch(format!("bad best field {:?}", parts[3])))?;
        let mut frontier = Vec::new();
        for line in lines {
            let subset = GroupSubset::parse(&group, line)?;
            frontier.push(subset.indices().iter().map(|&i| i as u8).collect());
        }
        let sym_fingerprint = symmetry_fingerprint(&group);
        Ok(SearchCheckpoint {
            group,
            best,
            frontier,
            sym_fingerprint,
        })
    }
}

/// Hash of the group's affine symmetry permutations in enumeration order;
/// 0 for groups without an enumerable symmetry group. Recomputed rather
/// than persisted, so it guards against resuming under changed code.
pub fn symmetry_fingerprint(group: &GroupSpec) -> u64 {
    let perms = match enumerate_affine_symmetries(group) {
        Ok(maps) => maps
            .iter()
            .map(|m| m.permutation(group).expect("maps are valid"))
            .collect::<Vec<_>>(),
        Err(_) => return 0,
    };
    let mut h = DefaultHasher::new();
    perms.hash(&mut h);
    h.finish()
}

/// One search-tree node: a zero-sum-free set as ascending indices, plus
/// reach[c] = the sums realizable by exactly-c-subsets (c < exp), packed
/// as element-index bitsets.
#[derive(Debug, Clone)]
struct Node {
    set: Vec<u8>,
    reach: [u64; ENGINE_EXP_LIMIT],
}

/// Bit-rotation tables for the row-major index grid: adding a fixed group
/// element shifts columns within rows and rows within the word.
struct RotGrid {
    width: u32,
    total: u32,
    full: u64,
    low: Vec<u64>,
}

impl RotGrid {
    fn new(rows: u32, width: u32) -> Self {
        let total = rows * width;
        let full = if total == 64 {
            u64::MAX
        } else {
            (1u64 << total) - 1
        };
        let mut low = Vec::with_capacity(width as usize);
        for b in 0..width {
            let keep = width - b;
            let row_mask = if keep == 64 {
                u64::MAX
            } else {
                (1u64 << keep) - 1
            };
            let mut mask = 0u64;
            for r in 0..rows {
                mask |= row_mask << (r * width);
            }
            low.push(mask);
        }
        RotGrid {
            width,
            total,
            full,
            low,
        }
    }

    /// Image of the bitset under +(a, b): rotate columns by b inside each
    /// row, then rotate whole rows by a.
    #[inline]
    fn rotate(&self, x: u64, a: u32, b: u32) -> u64 {
        let mut v = x;
        if b > 0 {
            v = ((v & self.low[b as usize]) << b)
                | ((v & !self.low[b as usize]) >> (self.width - b));
        }
        let s = a * self.width;
        if s > 0 {
            v = ((v << s) | (v >> (self.total - s))) & self.full;
        }
        v
    }
}

/// Everything precomputed for one group: rotation tables, per-element
/// shifts, symmetry permutations, and the construction-size floor.
struct Engine {
    group: GroupSpec,
    order: usize,
    exp: usize,
    target_floor: usize,
    canonical_depth: usize,
    grid: RotGrid,
    shifts: Vec<(u32, u32)>,
    perms: Vec<Vec<u8>>,
    sym_fingerprint: u64,
}

impl Engine {
    fn new(group: &GroupSpec, config: &SearchConfig) -> Result<Self> {
        if group.rank() > 2 {
            return Err(Error::RankUnsupported {
                max: 2,
                got: group.rank(),
            });
        }
        let exp = group.exponent();
        if exp > config.modulus_limit.min(ENGINE_EXP_LIMIT) {
            return Err(Error::SearchLimit {
                n: exp,
                limit: config.modulus_limit.min(ENGINE_EXP_LIMIT),
            });
        }
        let order = group.order();
        if order > ENGINE_ORDER_LIMIT {
            return Err(Error::SearchLimit {
                n: order,
                limit: ENGINE_ORDER_LIMIT,
            });
        }
        let (rows, width) = match group.moduli() {
            [n] => (1u32, *n),
            [n1, n2] => (*n1, *n2),
            _ => unreachable!("rank checked above"),
        };
        let grid = RotGrid::new(rows, width);
        let mut shifts = Vec::with_capacity(order);
        for e in group.elements() {
            let c = e.coords();
            match c.len() {
                1 => shifts.push((0, c[0])),
                _ => shifts.push((c[0], c[1])),
            }
        }
        let (perms, sym_fingerprint) = match enumerate_affine_symmetries(group) {
            Ok(maps) => {
                let perms: Vec<Vec<u8>> = maps
                    .iter()
                    .map(|m| {
                        m.permutation(group)
                            .expect("maps are valid")
                            .into_iter()
                            .map(|i| i as u8)
                            .collect()
                    })
                    .collect();
                let mut h = DefaultHasher::new();
                maps.iter()
                    .map(|m| m.permutation(group).expect("maps are valid"))
                    .collect::<Vec<_>>()
                    .hash(&mut h);
                (perms, h.finish())
            }
            Err(_) => (Vec::new(), 0),
        };
        // The verified construction size anchors the potential prune; it
        // exists for square groups only. Zero disables the prune.
        let target_floor = if group.rank() == 2 && group.is_homocyclic() {
            extremal_construction(group.moduli()[0])?.cardinality()
        } else {
            0
        };
        let canonical_depth = if perms.is_empty() {
            0
        } else {
            config.canonical_depth
        };
        Ok(Engine {
            group: group.clone(),
            order,
            exp,
            target_floor,
            canonical_depth,
            grid,
            shifts,
            perms,
            sym_fingerprint,
        })
    }

    fn root(&self) -> Node {
        let mut reach = [0u64; ENGINE_EXP_LIMIT];
        reach[0] = 1;
        Node {
            set: Vec::new(),
            reach,
        }
    }

    /// Would adding element y complete a zero-sum exp-subset? True iff
    /// -y is a sum of exp-1 distinct current members.
    #[inline]
    fn creates_zero_sum(&self, reach: &[u64; ENGINE_EXP_LIMIT], y: usize) -> bool {
        let (a, b) = self.shifts[y];
        self.grid.rotate(reach[self.exp - 1], a, b) & 1 == 1
    }

    #[inline]
    fn apply(&self, reach: &mut [u64; ENGINE_EXP_LIMIT], y: usize) {
        let (a, b) = self.shifts[y];
        for c in (1..self.exp).rev() {
            reach[c] |= self.grid.rotate(reach[c - 1], a, b);
        }
    }

    /// Is set + y the lexicographically least member of its orbit?
    fn is_canonical_with(&self, set: &[u8], y: u8) -> bool {
        let mut candidate = Vec::with_capacity(set.len() + 1);
        candidate.extend_from_slice(set);
        candidate.push(y);
        let mut image = vec![0u8; candidate.len()];
        for perm in &self.perms {
            for (dst, &src) in image.iter_mut().zip(&candidate) {
                *dst = perm[src as usize];
            }
            image.sort_unstable();
            if image.as_slice() < candidate.as_slice() {
                return false;
            }
        }
        true
    }

    fn expand(&self, node: &Node) -> Vec<Node> {
        let start = node.set.last().map_or(0, |&l| l as usize + 1);
        let newlen = node.set.len() + 1;
        let mut out = Vec::new();
        for y in start..self.order {
            if newlen + (self.order - 1 - y) < self.target_floor {
                break;
            }
            if self.creates_zero_sum(&node.reach, y) {
                continue;
            }
            if newlen <= self.canonical_depth && !self.is_canonical_with(&node.set, y as u8) {
                continue;
            }
            let mut child = node.clone();
            child.set.push(y as u8);
            self.apply(&mut child.reach, y);
            out.push(child);
        }
        out
    }

    /// Replays a checkpointed index list into a node, re-checking freeness.
    fn rebuild(&self, indices: &[u8]) -> Result<Node> {
        let mut node = self.root();
        for &y in indices {
            let y = y as usize;
            if y >= self.order {
                return Err(Error::CheckpointMismatch(format!(
                    "frontier index {y} out of range"
                )));
            }
            if self.creates_zero_sum(&node.reach, y) {
                return Err(Error::CheckpointMismatch(format!(
                    "frontier node {indices:?} is not zero-sum-free"
                )));
            }
            self.apply(&mut node.reach, y);
            node.set.push(y as u8);
        }
        Ok(node)
    }

    /// The lexicographically least free set of the given size: plain lex
    /// DFS with the feasibility and potential prunes; the first full-size
    /// set reached is the least because free sets are hereditary.
    fn lex_min_free_set(&self, target: usize) -> Result<Vec<u8>> {
        fn rec(
            eng: &Engine,
            set: &mut Vec<u8>,
            reach: &mut [u64; ENGINE_EXP_LIMIT],
            target: usize,
            start: usize,
        ) -> bool {
            if set.len() == target {
                return true;
            }
            for y in start..eng.order {
                if set.len() + 1 + (eng.order - 1 - y) < target {
                    break;
                }
                if eng.creates_zero_sum(reach, y) {
                    continue;
                }
                let saved = *reach;
                eng.apply(reach, y);
                set.push(y as u8);
                if rec(eng, set, reach, target, y + 1) {
                    return true;
                }
                set.pop();
                *reach = saved;
            }
            false
        }
        let mut set = Vec::with_capacity(target);
        let mut root = self.root();
        if rec(self, &mut set, &mut root.reach, target, 0) {
            Ok(set)
        } else {
            Err(Error::Inconsistent(format!(
                "no free set of size {target} found for the reported maximum"
            )))
        }
    }
}

struct SharedState {
    frontier: Vec<Node>,
    active: usize,
    expanded: u64,
    best: usize,
    stopped: bool,
}

fn worker(engine: &Engine, shared: &Mutex<SharedState>, cond: &Condvar, budget: u64) {
    let mut guard = shared.lock().expect("search mutex");
    loop {
        if guard.stopped {
            break;
        }
        if let Some(node) = guard.frontier.pop() {
            if budget > 0 && guard.expanded >= budget {
                guard.frontier.push(node);
                guard.stopped = true;
                cond.notify_all();
                break;
            }
            guard.expanded += 1;
            guard.active += 1;
            drop(guard);
            let children = engine.expand(&node);
            guard = shared.lock().expect("search mutex");
            guard.active -= 1;
            for child in children {
                if child.set.len() > guard.best {
                    guard.best = child.set.len();
                }
                guard.frontier.push(child);
            }
            cond.notify_all();
        } else if guard.active == 0 {
            cond.notify_all();
            break;
        } else {
            guard = cond.wait(guard).expect("search mutex");
        }
    }
}

/// Search output: the report, plus a checkpoint when the node budget ran
/// out before the tree was exhausted.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub report: FreeSetReport,
    pub checkpoint: Option<SearchCheckpoint>,
}

fn run_search(
    engine: &Engine,
    initial: SharedState,
    config: &SearchConfig,
) -> Result<SearchOutcome> {
    let start = Instant::now();
    let shared = Mutex::new(initial);
    let cond = Condvar::new();
    let workers = config.workers.max(1);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| worker(engine, &shared, &cond, config.node_budget));
        }
    });
    let state = shared.into_inner().expect("search mutex");
    let exhausted = state.frontier.is_empty();
    let max_free_size = state.best.max(engine.target_floor);
    let example_indices = engine.lex_min_free_set(max_free_size)?;
    let indices: Vec<usize> = example_indices.iter().map(|&i| i as usize).collect();
    let example_set = GroupSubset::from_indices(&engine.group, &indices)?;
    if find_zero_sum_subset(&example_set, engine.exp)?.is_some() {
        return Err(Error::Inconsistent(
            "search example fails independent re-verification".into(),
        ));
    }
    let checkpoint = if exhausted {
        None
    } else {
        Some(SearchCheckpoint::from_nodes(
            &engine.group,
            state.best,
            &state.frontier,
            engine.sym_fingerprint,
        ))
    };
    Ok(SearchOutcome {
        report: FreeSetReport {
            group: engine.group.clone(),
            max_free_size,
            example_set,
            exhausted,
            nodes_explored: state.expanded,
            wall_time: start.elapsed(),
        },
        checkpoint,
    })
}

/// Exhaustively maximizes zero-sum-free sets in the group (subject to the
/// node budget). The reported maximum and example are scheduling-independent;
/// see the module docs for why.
pub fn max_free_set(group: &GroupSpec, config: &SearchConfig) -> Result<SearchOutcome> {
    let engine = Engine::new(group, config)?;
    let initial = SharedState {
        frontier: vec![engine.root()],
        active: 0,
        expanded: 0,
        best: 0,
        stopped: false,
    };
    run_search(&engine, initial, config)
}

/// Continues a stopped search from its checkpoint. The final report equals
/// the uninterrupted one except for `nodes_explored`/`wall_time`, which
/// cover only this run.
pub fn resume_free_search(
    group: &GroupSpec,
    config: &SearchConfig,
    checkpoint: &SearchCheckpoint,
) -> Result<SearchOutcome> {
    if checkpoint.group() != group {
        return Err(Error::CheckpointMismatch(format!(
            "checkpoint group {} does not match requested group {}",
            checkpoint.group(),
            group
        )));
    }
    let engine = Engine::new(group, config)?;
    if engine.sym_fingerprint != checkpoint.sym_fingerprint {
        return Err(Error::CheckpointMismatch(
            "symmetry fingerprint changed since the checkpoint was written".into(),
        ));
    }
    let mut frontier = Vec::with_capacity(checkpoint.frontier.len());
    for indices in &checkpoint.frontier {
        frontier.push(engine.rebuild(indices)?);
    }
    let initial = SharedState {
        frontier,
        active: 0,
        expanded: 0,
        best: checkpoint.best,
        stopped: false,
    };
    run_search(&engine, initial, config)
}

/// g(G) or, when the search budget ran out, verified bounds on it.
#[derive(Debug, Clone)]
pub enum GResult {
    Exact {
        g: usize,
        outcome: SearchOutcome,
    },
    Bounds {
        lower: usize,
        upper: usize,
        outcome: SearchOutcome,
    },
}

/// g(G) = 1 + the maximum zero-sum-free set size. Exact iff the search
/// exhausted; otherwise the found maximum gives the lower bound and the
/// trivial |G| + 1 the upper.
pub fn compute_g(group: &GroupSpec, config: &SearchConfig) -> Result<GResult> {
    let outcome = max_free_set(group, config)?;
    if outcome.report.exhausted {
        Ok(GResult::Exact {
            g: outcome.report.max_free_size + 1,
            outcome,
        })
    } else {
        Ok(GResult::Bounds {
            lower: outcome.report.max_free_size + 1,
            upper: group.order() + 1,
            outcome,
        })
    }
}
