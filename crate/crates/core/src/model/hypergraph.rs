use std::collections::HashMap;

use super::{ActionId, Occasion, ProbabilityModel, StateId};
use crate::error::{Error, Result};

const NIL: u32 = u32::MAX;

/// Axis 0 orders the actions of one `(source, result)` pair, axis 1 orders
/// the results of one `(source, action)` pair.
const OVER_ACTIONS: usize = 0;
const OVER_RESULTS: usize = 1;

#[derive(Clone, Copy, Debug)]
struct Link {
    prev: u32,
    next: u32,
    bucket: u32,
}

const UNLINKED: Link = Link { prev: NIL, next: NIL, bucket: NIL };

#[derive(Clone, Debug)]
struct Cell {
    source: u32,
    result: u32,
    action: u32,
    count: u64,
    links: [Link; 2],
    /// Index of this cell's chain over actions.
    action_chain: u32,
}

#[derive(Clone, Copy, Debug)]
struct Chain {
    head: u32,
    tail: u32,
    total: u64,
}

const EMPTY_CHAIN: Chain = Chain { head: NIL, tail: NIL, total: 0 };

/// A run of equal counts inside one chain.
#[derive(Clone, Copy, Debug)]
struct Bucket {
    count: u64,
    first: u32,
    last: u32,
}

/// Ordered view of one list, head first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListView {
    pub entries: Vec<(u32, u64)>,
    pub total: u64,
}

/// Occasion counts over `(source, result, action)` with two families of
/// count-ordered linked lists threaded through the cells.
///
/// Cells are addressed by hashing their coordinates, so memory grows with
/// the number of distinct occasions rather than `|S|^2 |A|`. Each list is
/// kept in non-increasing count order; a +1 increment moves the node to the
/// front of its equal-count bucket, which is one detach and one attach.
#[derive(Clone, Debug)]
pub struct IncidenceHypergraph {
    action_count: usize,
    state_count: usize,
    state_capacity: usize,
    cells: Vec<Cell>,
    index: HashMap<u64, u32>,
    action_chains: Vec<Chain>,
    action_chain_index: HashMap<u64, u32>,
    /// Per source: observed results and the chain over actions for each.
    successors: Vec<Vec<(u32, u32)>>,
    /// Dense `source * action_count + action` chains over results.
    result_chains: Vec<Chain>,
    buckets: Vec<Bucket>,
    free_buckets: Vec<u32>,
    history: Vec<(u32, u32, u32)>,
    last_rewires: usize,
    max_rewires: usize,
}

fn key(a: u32, b: u32, c: u32) -> u64 {
    debug_assert!(a < (1 << 24) && b < (1 << 24) && c < (1 << 16));
    ((a as u64) << 40) | ((b as u64) << 16) | c as u64
}

impl IncidenceHypergraph {
    pub fn new(action_count: usize) -> Self {
        assert!(action_count > 0 && action_count < (1 << 16), "action count must be in 1..65536");
        IncidenceHypergraph {
            action_count,
            state_count: 0,
            state_capacity: 0,
            cells: Vec::new(),
            index: HashMap::new(),
            action_chains: Vec::new(),
            action_chain_index: HashMap::new(),
            successors: Vec::new(),
            result_chains: Vec::new(),
            buckets: Vec::new(),
            free_buckets: Vec::new(),
            history: Vec::new(),
            last_rewires: 0,
            max_rewires: 0,
        }
    }

    pub fn action_count(&self) -> usize {
        self.action_count
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    /// Allocated per-state capacity; grows by doubling.
    pub fn state_capacity(&self) -> usize {
        self.state_capacity
    }

    /// Number of distinct occasions with a nonzero count.
    pub fn occasion_count(&self) -> usize {
        self.cells.len()
    }

    pub fn ensure_states(&mut self, n: usize) {
        if n > self.state_capacity {
            let cap = n.max(self.state_capacity * 2).max(16);
            self.result_chains.resize(cap * self.action_count, EMPTY_CHAIN);
            self.successors.resize_with(cap, Vec::new);
            self.state_capacity = cap;
        }
        self.state_count = self.state_count.max(n);
    }

    fn check_state(&self, s: StateId) -> Result<()> {
        if s.index() < self.state_count {
            Ok(())
        } else {
            Err(Error::UnknownState(s.0))
        }
    }

    fn check_action(&self, a: ActionId) -> Result<()> {
        if a.index() < self.action_count {
            Ok(())
        } else {
            Err(Error::ActionOutOfRange { action: a.0, count: self.action_count })
        }
    }

    /// Link rewires performed by the most recent `record`.
    pub fn last_rewires(&self) -> usize {
        self.last_rewires
    }

    /// Largest rewire count seen on any single `record`.
    pub fn max_rewires(&self) -> usize {
        self.max_rewires
    }

    pub fn record(&mut self, o: Occasion) -> Result<()> {
        self.check_state(o.source)?;
        self.check_state(o.result)?;
        self.check_action(o.action)?;
        let (s, r, a) = (o.source.0, o.result.0, o.action.0);
        let mut rewires = 0;
        let result_chain = s as usize * self.action_count + a as usize;
        match self.index.get(&key(s, r, a)).copied() {
            Some(id) => {
                let action_chain = self.cells[id as usize].action_chain as usize;
                rewires += self.bump(OVER_ACTIONS, action_chain, id);
                rewires += self.bump(OVER_RESULTS, result_chain, id);
                self.cells[id as usize].count += 1;
            }
            None => {
                let action_chain = match self.action_chain_index.get(&key(s, r, 0)) {
                    Some(&c) => c,
                    None => {
                        let c = self.action_chains.len() as u32;
                        self.action_chains.push(EMPTY_CHAIN);
                        self.action_chain_index.insert(key(s, r, 0), c);
                        self.successors[s as usize].push((r, c));
                        c
                    }
                };
                let id = self.cells.len() as u32;
                self.cells.push(Cell {
                    source: s,
                    result: r,
                    action: a,
                    count: 1,
                    links: [UNLINKED; 2],
                    action_chain,
                });
                self.index.insert(key(s, r, a), id);
                rewires += self.append(OVER_ACTIONS, action_chain as usize, id);
                rewires += self.append(OVER_RESULTS, result_chain, id);
            }
        }
        self.history.push((s, r, a));
        self.last_rewires = rewires;
        self.max_rewires = self.max_rewires.max(rewires);
        Ok(())
    }

    fn chain_mut(&mut self, axis: usize, chain: usize) -> &mut Chain {
        if axis == OVER_ACTIONS {
            &mut self.action_chains[chain]
        } else {
            &mut self.result_chains[chain]
        }
    }

    fn chain(&self, axis: usize, chain: usize) -> &Chain {
        if axis == OVER_ACTIONS {
            &self.action_chains[chain]
        } else {
            &self.result_chains[chain]
        }
    }

    fn new_bucket(&mut self, count: u64, node: u32) -> u32 {
        let b = Bucket { count, first: node, last: node };
        match self.free_buckets.pop() {
            Some(i) => {
                self.buckets[i as usize] = b;
                i
            }
            None => {
                self.buckets.push(b);
                (self.buckets.len() - 1) as u32
            }
        }
    }

    /// Attach a fresh node with count 1 at the tail of a chain.
    fn append(&mut self, axis: usize, chain: usize, x: u32) -> usize {
        let ch = self.chain_mut(axis, chain);
        ch.total += 1;
        let tail = ch.tail;
        if tail == NIL {
            ch.head = x;
            ch.tail = x;
            let b = self.new_bucket(1, x);
            self.cells[x as usize].links[axis] = Link { prev: NIL, next: NIL, bucket: b };
        } else {
            ch.tail = x;
            self.cells[tail as usize].links[axis].next = x;
            let tb = self.cells[tail as usize].links[axis].bucket;
            let bucket = if self.buckets[tb as usize].count == 1 {
                self.buckets[tb as usize].last = x;
                tb
            } else {
                self.new_bucket(1, x)
            };
            self.cells[x as usize].links[axis] = Link { prev: tail, next: NIL, bucket };
        }
        1
    }

    /// Move `x` ahead of its equal-count bucket and into the bucket for the
    /// incremented count. The cell's stored count is updated by the caller.
    fn bump(&mut self, axis: usize, chain: usize, x: u32) -> usize {
        let xi = x as usize;
        let c = self.cells[xi].count;
        let b = self.cells[xi].links[axis].bucket as usize;
        let f = self.buckets[b].first;
        let mut rewires = 0;
        if f != x {
            let Link { prev: p, next: n, .. } = self.cells[xi].links[axis];
            if self.buckets[b].last == x {
                self.buckets[b].last = p;
            }
            self.cells[p as usize].links[axis].next = n;
            if n != NIL {
                self.cells[n as usize].links[axis].prev = p;
            } else {
                self.chain_mut(axis, chain).tail = p;
            }
            let fp = self.cells[f as usize].links[axis].prev;
            self.cells[xi].links[axis].prev = fp;
            self.cells[xi].links[axis].next = f;
            self.cells[f as usize].links[axis].prev = x;
            if fp != NIL {
                self.cells[fp as usize].links[axis].next = x;
            } else {
                self.chain_mut(axis, chain).head = x;
            }
            rewires = 2;
        } else if self.buckets[b].last == x {
            self.free_buckets.push(b as u32);
        } else {
            self.buckets[b].first = self.cells[xi].links[axis].next;
        }
        let p = self.cells[xi].links[axis].prev;
        let bucket = if p != NIL {
            let pb = self.cells[p as usize].links[axis].bucket;
            if self.buckets[pb as usize].count == c + 1 {
                self.buckets[pb as usize].last = x;
                Some(pb)
            } else {
                None
            }
        } else {
            None
        };
        self.cells[xi].links[axis].bucket = match bucket {
            Some(pb) => pb,
            None => self.new_bucket(c + 1, x),
        };
        self.chain_mut(axis, chain).total += 1;
        rewires
    }

    pub fn count(&self, o: Occasion) -> u64 {
        self.index
            .get(&key(o.source.0, o.result.0, o.action.0))
            .map_or(0, |&id| self.cells[id as usize].count)
    }

    /// Observations of `action` taken in `source`, whatever the result.
    pub fn source_action_total(&self, source: StateId, action: ActionId) -> u64 {
        if source.index() >= self.state_count || action.index() >= self.action_count {
            return 0;
        }
        self.result_chains[source.index() * self.action_count + action.index()].total
    }

    /// Observations of `source -> result`, whatever the action.
    pub fn transition_total(&self, source: StateId, result: StateId) -> u64 {
        self.action_chain_index
            .get(&key(source.0, result.0, 0))
            .map_or(0, |&c| self.action_chains[c as usize].total)
    }

    pub fn apriori_prob(&self, source: StateId, action: ActionId, result: StateId) -> Result<f64> {
        self.check_state(source)?;
        self.check_state(result)?;
        self.check_action(action)?;
        Ok(ratio(self.count(Occasion::new(source, action, result)), self.source_action_total(source, action)))
    }

    pub fn aposteriori_prob(&self, source: StateId, action: ActionId, result: StateId) -> Result<f64> {
        self.check_state(source)?;
        self.check_state(result)?;
        self.check_action(action)?;
        Ok(ratio(self.count(Occasion::new(source, action, result)), self.transition_total(source, result)))
    }

    pub fn prob(&self, model: ProbabilityModel, source: StateId, action: ActionId, result: StateId) -> Result<f64> {
        match model {
            ProbabilityModel::APriori => self.apriori_prob(source, action, result),
            ProbabilityModel::APosteriori => self.aposteriori_prob(source, action, result),
        }
    }

    /// Lowest-index member of the head bucket, with its share of the total.
    fn head_of(&self, axis: usize, chain: &Chain) -> Option<(u32, f64)> {
        if chain.head == NIL {
            return None;
        }
        let coord = |id: u32| {
            let cell = &self.cells[id as usize];
            if axis == OVER_ACTIONS {
                cell.action
            } else {
                cell.result
            }
        };
        let head = &self.cells[chain.head as usize];
        let bucket = head.links[axis].bucket;
        let mut best = coord(chain.head);
        let mut node = head.links[axis].next;
        while node != NIL && self.cells[node as usize].links[axis].bucket == bucket {
            best = best.min(coord(node));
            node = self.cells[node as usize].links[axis].next;
        }
        Some((best, ratio(head.count, chain.total)))
    }

    /// Most probable action for `source -> result` and its a posteriori
    /// probability. Unobserved pairs give `(0, 0.0)`.
    pub fn max_action_for_transition(&self, source: StateId, result: StateId) -> Result<(ActionId, f64)> {
        self.check_state(source)?;
        self.check_state(result)?;
        Ok(self.max_action_unchecked(source, result))
    }

    pub(crate) fn max_action_unchecked(&self, source: StateId, result: StateId) -> (ActionId, f64) {
        match self.action_chain_index.get(&key(source.0, result.0, 0)) {
            Some(&c) => self.max_action_in_chain(c),
            None => (ActionId(0), 0.0),
        }
    }

    fn max_action_in_chain(&self, c: u32) -> (ActionId, f64) {
        self.head_of(OVER_ACTIONS, &self.action_chains[c as usize])
            .map_or((ActionId(0), 0.0), |(a, p)| (ActionId(a), p))
    }

    /// Most probable result of `action` in `source` and its a priori
    /// probability. Unobserved pairs give `(0, 0.0)`.
    pub fn max_result_for_action(&self, source: StateId, action: ActionId) -> Result<(StateId, f64)> {
        self.check_state(source)?;
        self.check_action(action)?;
        Ok(self.max_result_unchecked(source, action))
    }

    pub(crate) fn max_result_unchecked(&self, source: StateId, action: ActionId) -> (StateId, f64) {
        let chain = &self.result_chains[source.index() * self.action_count + action.index()];
        self.head_of(OVER_RESULTS, chain).map_or((StateId(0), 0.0), |(r, p)| (StateId(r), p))
    }

    /// Results observed from `source`, in first-seen order.
    pub fn results_from(&self, source: StateId) -> impl Iterator<Item = StateId> + '_ {
        self.successors
            .get(source.index())
            .into_iter()
            .flatten()
            .map(|&(r, _)| StateId(r))
    }

    /// `(result, best action, a posteriori probability)` for every result
    /// observed from `source`.
    pub(crate) fn transitions_from(&self, source: StateId) -> impl Iterator<Item = (StateId, ActionId, f64)> + '_ {
        self.successors.get(source.index()).into_iter().flatten().map(|&(r, c)| {
            let (a, p) = self.max_action_in_chain(c);
            (StateId(r), a, p)
        })
    }

    /// Actions with at least one observation in `source`.
    pub fn observed_actions(&self, source: StateId) -> impl Iterator<Item = ActionId> + '_ {
        let base = source.index() * self.action_count;
        let n = if source.index() < self.state_count { self.action_count } else { 0 };
        (0..n)
            .filter(move |&a| self.result_chains[base + a].total > 0)
            .map(|a| ActionId(a as u32))
    }

    /// Full a priori outcome distribution of `action` in `source`.
    pub fn outcome_distribution(&self, source: StateId, action: ActionId) -> Vec<(StateId, f64)> {
        if source.index() >= self.state_count {
            return Vec::new();
        }
        let chain = &self.result_chains[source.index() * self.action_count + action.index()];
        let mut out = Vec::new();
        let mut node = chain.head;
        while node != NIL {
            let cell = &self.cells[node as usize];
            out.push((StateId(cell.result), ratio(cell.count, chain.total)));
            node = cell.links[OVER_RESULTS].next;
        }
        out
    }

    /// The list over actions for `source -> result`, head first.
    pub fn action_list(&self, source: StateId, result: StateId) -> ListView {
        match self.action_chain_index.get(&key(source.0, result.0, 0)) {
            Some(&c) => self.view(OVER_ACTIONS, c as usize, |cell| cell.action),
            None => ListView { entries: Vec::new(), total: 0 },
        }
    }

    /// The list over results for `(source, action)`, head first.
    pub fn result_list(&self, source: StateId, action: ActionId) -> ListView {
        if source.index() >= self.state_count || action.index() >= self.action_count {
            return ListView { entries: Vec::new(), total: 0 };
        }
        self.view(OVER_RESULTS, source.index() * self.action_count + action.index(), |cell| cell.result)
    }

    fn view(&self, axis: usize, chain: usize, coord: impl Fn(&Cell) -> u32) -> ListView {
        let ch = self.chain(axis, chain);
        let mut entries = Vec::new();
        let mut node = ch.head;
        while node != NIL {
            let cell = &self.cells[node as usize];
            entries.push((coord(cell), cell.count));
            node = cell.links[axis].next;
        }
        ListView { entries, total: ch.total }
    }

    /// Checks list order, bucket bookkeeping and cached totals. Returns a
    /// description of the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let check_chain = |axis: usize, ch: &Chain| -> std::result::Result<(), String> {
            let mut node = ch.head;
            let mut prev = NIL;
            let mut sum = 0;
            while node != NIL {
                let cell = &self.cells[node as usize];
                let link = cell.links[axis];
                if link.prev != prev {
                    return Err(format!("broken back link at cell {node}"));
                }
                let b = self.buckets[link.bucket as usize];
                if b.count != cell.count {
                    return Err(format!("bucket count {} != cell count {}", b.count, cell.count));
                }
                if prev != NIL {
                    let pc = &self.cells[prev as usize];
                    if pc.count < cell.count {
                        return Err(format!("list out of order: {} before {}", pc.count, cell.count));
                    }
                    let same = pc.links[axis].bucket == link.bucket;
                    if same != (pc.count == cell.count) {
                        return Err("bucket boundary does not match count change".into());
                    }
                    if !same && b.first != node {
                        return Err("bucket first pointer stale".into());
                    }
                } else if b.first != node {
                    return Err("bucket first pointer stale at head".into());
                }
                if link.next == NIL || self.cells[link.next as usize].links[axis].bucket != link.bucket {
                    if b.last != node {
                        return Err("bucket last pointer stale".into());
                    }
                }
                sum += cell.count;
                prev = node;
                node = link.next;
            }
            if ch.tail != prev {
                return Err("tail pointer stale".into());
            }
            if sum != ch.total {
                return Err(format!("cached total {} != sum {}", ch.total, sum));
            }
            Ok(())
        };
        for ch in &self.action_chains {
            check_chain(OVER_ACTIONS, ch)?;
        }
        for ch in &self.result_chains {
            check_chain(OVER_RESULTS, ch)?;
        }
        Ok(())
    }

    /// Share of `target` in the slice selected by `model`, as a moving
    /// average over the last `window` observations of that slice. Below the
    /// window this equals the plain count ratio.
    pub fn windowed_prob(
        &self,
        model: ProbabilityModel,
        source: StateId,
        action: ActionId,
        result: StateId,
        window: usize,
    ) -> Result<f64> {
        self.check_state(source)?;
        self.check_state(result)?;
        self.check_action(action)?;
        if window == 0 {
            return Err(Error::InvalidArgument("window must be positive".into()));
        }
        let (s, r, a) = (source.0, result.0, action.0);
        let mut p = 0.0;
        let mut seen = 0usize;
        for &(hs, hr, ha) in &self.history {
            let (in_slice, hit) = match model {
                ProbabilityModel::APosteriori => (hs == s && hr == r, ha == a),
                ProbabilityModel::APriori => (hs == s && ha == a, hr == r),
            };
            if !in_slice {
                continue;
            }
            seen += 1;
            let w = 1.0 / seen.min(window) as f64;
            p = (1.0 - w) * p + if hit { w } else { 0.0 };
        }
        Ok(p)
    }

    /// All nonzero `(source, result, action, count)` entries, sorted.
    pub fn occasions(&self) -> Vec<(u32, u32, u32, u64)> {
        let mut v: Vec<_> = self.cells.iter().map(|c| (c.source, c.result, c.action, c.count)).collect();
        v.sort_unstable();
        v
    }

    /// Rebuild from counts. Within equal counts lists are ordered by index.
    pub fn from_counts(state_count: usize, action_count: usize, counts: &[(u32, u32, u32, u64)]) -> Result<Self> {
        let mut g = IncidenceHypergraph::new(action_count);
        g.ensure_states(state_count);
        let mut sorted: Vec<_> = counts.iter().copied().filter(|t| t.3 > 0).collect();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if (w[0].0, w[0].1, w[0].2) == (w[1].0, w[1].1, w[1].2) {
                return Err(Error::Parse(format!("duplicate occasion {:?}", (w[0].0, w[0].1, w[0].2))));
            }
        }
        let mut by_action_chain: Vec<Vec<u32>> = Vec::new();
        let mut by_result_chain: HashMap<usize, Vec<u32>> = HashMap::new();
        for &(s, r, a, n) in &sorted {
            g.check_state(StateId(s))?;
            g.check_state(StateId(r))?;
            g.check_action(ActionId(a))?;
            let action_chain = match g.action_chain_index.get(&key(s, r, 0)) {
                Some(&c) => c,
                None => {
                    let c = g.action_chains.len() as u32;
                    g.action_chains.push(EMPTY_CHAIN);
                    by_action_chain.push(Vec::new());
                    g.action_chain_index.insert(key(s, r, 0), c);
                    g.successors[s as usize].push((r, c));
                    c
                }
            };
            let id = g.cells.len() as u32;
            g.cells.push(Cell { source: s, result: r, action: a, count: n, links: [UNLINKED; 2], action_chain });
            g.index.insert(key(s, r, a), id);
            by_action_chain[action_chain as usize].push(id);
            by_result_chain.entry(s as usize * action_count + a as usize).or_default().push(id);
        }
        for (c, members) in by_action_chain.into_iter().enumerate() {
            g.link_sorted(OVER_ACTIONS, c, members, |cell| cell.action);
        }
        let mut result_chains: Vec<_> = by_result_chain.into_iter().collect();
        result_chains.sort_unstable_by_key(|(c, _)| *c);
        for (c, members) in result_chains {
            g.link_sorted(OVER_RESULTS, c, members, |cell| cell.result);
        }
        Ok(g)
    }

    fn link_sorted(&mut self, axis: usize, chain: usize, mut members: Vec<u32>, coord: impl Fn(&Cell) -> u32) {
        members.sort_by(|&x, &y| {
            let (cx, cy) = (&self.cells[x as usize], &self.cells[y as usize]);
            cy.count.cmp(&cx.count).then(coord(cx).cmp(&coord(cy)))
        });
        let mut prev = NIL;
        let mut total = 0;
        for &x in &members {
            let count = self.cells[x as usize].count;
            total += count;
            let bucket = if prev != NIL && self.cells[prev as usize].count == count {
                let b = self.cells[prev as usize].links[axis].bucket;
                self.buckets[b as usize].last = x;
                b
            } else {
                self.new_bucket(count, x)
            };
            self.cells[x as usize].links[axis] = Link { prev, next: NIL, bucket };
            if prev != NIL {
                self.cells[prev as usize].links[axis].next = x;
            }
            prev = x;
        }
        let ch = self.chain_mut(axis, chain);
        ch.head = members.first().copied().unwrap_or(NIL);
        ch.tail = prev;
        ch.total = total;
    }
}

fn ratio(n: u64, d: u64) -> f64 {
    if d == 0 {
        0.0
    } else {
        n as f64 / d as f64
    }
}
