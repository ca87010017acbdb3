//! The split algorithm: given thresholds λ_1 < … < λ_l, assign every node
//! its level I(d(v)) in O(m + r log k) without solving for d numerically.
//!
//! It is a bucketed Dijkstra over level indices with two lazy-evaluation
//! devices:
//!   * an edge weight's index is computed only when w(u,v) < λ_{d'(u)};
//!     every such edge is cross-level or below-level and leaves the
//!     recursion, charging the log-factor to a removed edge;
//!   * initial capacities are grouped by a tree partition; only each
//!     group's current maximum is index-evaluated, and a group re-bucket
//!     always lands strictly lower.

use crate::error::{Error, Result};
use crate::graph::CsssbpInstance;
use crate::key::{Capacity, Key};
use crate::stats::{CounterSet, SplitCounters};
use crate::tree::{build_spanning_tree, partition_tree};

/// Sorted thresholds λ_1 < … < λ_l with implicit sentinels λ_0 = -inf,
/// λ_{l+1} = +inf.
#[derive(Clone, Debug)]
pub struct Thresholds {
    keys: Vec<Key>,
}

impl Thresholds {
    /// `keys` must be strictly increasing and non-empty.
    pub fn new(keys: Vec<Key>) -> Self {
        assert!(!keys.is_empty());
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        Thresholds { keys }
    }

    pub fn l(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    /// λ_i as a capacity, for 0 <= i <= l+1.
    pub fn lambda(&self, i: usize) -> Capacity {
        if i == 0 {
            Capacity::NegInf
        } else if i <= self.l() {
            Capacity::Finite(self.keys[i - 1])
        } else {
            Capacity::PosInf
        }
    }

    /// I(x): the unique i with λ_i <= x < λ_{i+1}; I(-inf) = 0, I(+inf) = l.
    /// Binary search; the caller accounts for the evaluation.
    pub fn index_of(&self, x: Capacity) -> usize {
        match x {
            Capacity::NegInf => 0,
            Capacity::PosInf => self.l(),
            Capacity::Finite(k) => self.keys.partition_point(|lam| *lam <= k),
        }
    }
}

const NONE: u32 = u32::MAX;

/// Intrusive doubly-linked bucket lists over node ids: O(1) insert, remove
/// by id, and pop.
struct NodeBuckets {
    head: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    at: Vec<u32>,
}

impl NodeBuckets {
    fn new(buckets: usize, n: usize) -> Self {
        NodeBuckets {
            head: vec![NONE; buckets],
            next: vec![NONE; n],
            prev: vec![NONE; n],
            at: vec![NONE; n],
        }
    }

    fn insert(&mut self, bucket: usize, v: u32) {
        debug_assert_eq!(self.at[v as usize], NONE);
        let old = self.head[bucket];
        self.next[v as usize] = old;
        self.prev[v as usize] = NONE;
        if old != NONE {
            self.prev[old as usize] = v;
        }
        self.head[bucket] = v;
        self.at[v as usize] = bucket as u32;
    }

    fn remove(&mut self, v: u32) {
        let b = self.at[v as usize];
        debug_assert_ne!(b, NONE);
        let (p, nx) = (self.prev[v as usize], self.next[v as usize]);
        if p != NONE {
            self.next[p as usize] = nx;
        } else {
            self.head[b as usize] = nx;
        }
        if nx != NONE {
            self.prev[nx as usize] = p;
        }
        self.at[v as usize] = NONE;
    }

    fn pop(&mut self, bucket: usize) -> Option<u32> {
        let v = self.head[bucket];
        if v == NONE {
            return None;
        }
        self.remove(v);
        Some(v)
    }

    fn contains(&self, v: u32) -> bool {
        self.at[v as usize] != NONE
    }
}

/// Group membership with lazy deletion and amortized-O(s) max scans.
struct Groups {
    members: Vec<Vec<u32>>,
    removed: Vec<bool>,
    alive: Vec<usize>,
}

impl Groups {
    fn scan_max_by_h(&mut self, gi: usize, h: &[Capacity], counters: &mut CounterSet) -> Option<u32> {
        if self.alive[gi] == 0 {
            return None;
        }
        if self.members[gi].len() > 2 * self.alive[gi] {
            let removed = &self.removed;
            self.members[gi].retain(|&v| !removed[v as usize]);
        }
        counters.touch(self.members[gi].len() as u64);
        self.members[gi]
            .iter()
            .copied()
            .filter(|&v| !self.removed[v as usize])
            .max_by_key(|&v| h[v as usize])
    }

    fn delete(&mut self, gi: usize, v: u32) {
        if !self.removed[v as usize] {
            self.removed[v as usize] = true;
            self.alive[gi] -= 1;
        }
    }
}

/// Optional audit trail for the lemma checks.
#[derive(Clone, Debug, Default)]
pub struct SplitAudit {
    /// Global edge positions whose weight index was lazily evaluated.
    pub evaluated_edges: Vec<usize>,
    /// Capacity index evaluations per group (setup + re-bucketing).
    pub group_eval_counts: Vec<u64>,
    /// Owned member lists per group, as used by the run.
    pub group_members: Vec<Vec<u32>>,
    /// Whether the scan order over bucket indices was non-increasing.
    pub scan_monotone: bool,
}

pub struct SplitOutcome {
    /// levels[v] = I(d(v)).
    pub levels: Vec<usize>,
    pub counters: SplitCounters,
    /// Number of tree-partition groups.
    pub b: usize,
    pub audit: Option<SplitAudit>,
}

/// Run the split: returns every node's level I(d(v)). The graph must be
/// weakly connected (the main algorithm guarantees this).
pub fn split_levels(
    inst: &CsssbpInstance,
    th: &Thresholds,
    counters: &mut CounterSet,
    want_audit: bool,
) -> Result<SplitOutcome> {
    let g = &inst.graph;
    let h = &inst.h;
    let n = g.n();
    let l = th.l();
    if !g.is_weakly_connected() {
        return Err(Error::Disconnected);
    }

    let mut split = SplitCounters::default();
    let mut audit = want_audit.then(SplitAudit::default);
    let enabled = counters.enabled();

    // Group setup: spanning tree, partition with s = clamp(ceil(log2 l), 1, n).
    let s = ((l as f64).log2().ceil() as usize).clamp(1, n);
    let tree = build_spanning_tree(g)?;
    let partition = partition_tree(&tree, s, counters)?;
    let b = partition.group_count();
    let mut groups = Groups {
        members: {
            let mut m: Vec<Vec<u32>> = vec![Vec::new(); b];
            for v in 0..n as u32 {
                m[partition.owner[v as usize] as usize].push(v);
            }
            m
        },
        removed: vec![false; n],
        alive: vec![0; b],
    };
    for gi in 0..b {
        groups.alive[gi] = groups.members[gi].len();
    }
    if let Some(a) = audit.as_mut() {
        a.group_eval_counts = vec![0; b];
        a.group_members = groups.members.clone();
        a.scan_monotone = true;
    }

    let mut d: Vec<u32> = vec![NONE; n];
    let mut c_buckets = NodeBuckets::new(l + 1, n);
    let mut b_buckets: Vec<Vec<u32>> = vec![Vec::new(); l + 1];

    // Nodes with h = +inf have index l without evaluation; seed them into
    // C_l directly, bypassing their group.
    for v in 0..n as u32 {
        if h[v as usize] == Capacity::PosInf {
            groups.delete(partition.owner[v as usize] as usize, v);
            d[v as usize] = l as u32;
            c_buckets.insert(l, v);
            CounterSet::bump(&mut counters.bucket_ops, enabled, 1);
        }
    }

    // Initial bucketing: evaluate each group's maximum capacity index.
    let eval_group = |groups: &mut Groups,
                          gi: usize,
                          counters: &mut CounterSet,
                          split: &mut SplitCounters,
                          audit: &mut Option<SplitAudit>|
     -> Option<usize> {
        let max = groups.scan_max_by_h(gi, h, counters)?;
        CounterSet::bump(&mut counters.brute_searches, enabled, 1);
        split.brute_searches += 1;
        let hv = h[max as usize];
        let idx = th.index_of(hv);
        if matches!(hv, Capacity::Finite(_)) {
            // ±inf indices are known for free; only finite capacities cost
            // a binary search.
            CounterSet::bump(&mut counters.group_index_evals, enabled, 1);
            split.group_evals += 1;
            if let Some(a) = audit.as_mut() {
                a.group_eval_counts[gi] += 1;
            }
        }
        Some(idx)
    };

    for gi in 0..b {
        if let Some(idx) = eval_group(&mut groups, gi, counters, &mut split, &mut audit) {
            b_buckets[idx].push(gi as u32);
        }
    }

    let mut last_scan_level = l;
    for i in (0..=l).rev() {
        // Drain group members with h(u) >= λ_i into C_i.
        let lam_i = th.lambda(i);
        for slot in 0..b_buckets[i].len() {
            let gi = b_buckets[i][slot] as usize;
            CounterSet::bump(&mut counters.brute_searches, enabled, 1);
            split.brute_searches += 1;
            counters.touch(groups.members[gi].len() as u64);
            let mut moved = Vec::new();
            for &u in &groups.members[gi] {
                if !groups.removed[u as usize] && h[u as usize] >= lam_i {
                    moved.push(u);
                }
            }
            for u in moved {
                groups.delete(gi, u);
                d[u as usize] = i as u32;
                c_buckets.insert(i, u);
                CounterSet::bump(&mut counters.bucket_ops, enabled, 1);
            }
        }

        // Dijkstra scan of C_i with lazy edge evaluation.
        while let Some(u) = c_buckets.pop(i) {
            CounterSet::bump(&mut counters.bucket_ops, enabled, 1);
            if let Some(a) = audit.as_mut() {
                if i > last_scan_level {
                    a.scan_monotone = false;
                }
            }
            last_scan_level = i;
            let du = d[u as usize] as usize;
            debug_assert_eq!(du, i);
            let base = g.out_range(u).start;
            for (off, e) in g.out_edges(u).iter().enumerate() {
                counters.touch(1);
                let w_bar = match e.w.key() {
                    None => du,
                    Some(wk) => {
                        // Evaluate I(w) only when w < λ_{d'(u)}.
                        if du == 0 || wk >= th.keys[du - 1] {
                            du
                        } else {
                            CounterSet::bump(&mut counters.edge_index_evals, enabled, 1);
                            split.edge_evals += 1;
                            if let Some(a) = audit.as_mut() {
                                a.evaluated_edges.push(base + off);
                            }
                            th.index_of(Capacity::Finite(wk))
                        }
                    }
                };
                let v = e.dst;
                // Update only when it can raise v above its own capacity.
                if th.lambda(w_bar) > h[v as usize] {
                    let dv = d[v as usize];
                    if dv == NONE || (w_bar as u32) > dv {
                        if c_buckets.contains(v) {
                            c_buckets.remove(v);
                            CounterSet::bump(&mut counters.bucket_ops, enabled, 1);
                        }
                        groups.delete(partition.owner[v as usize] as usize, v);
                        d[v as usize] = w_bar as u32;
                        c_buckets.insert(w_bar, v);
                        CounterSet::bump(&mut counters.bucket_ops, enabled, 1);
                    }
                }
            }
        }

        // Re-bucket the drained groups; every re-evaluation lands strictly
        // lower because all remaining members have h < λ_i.
        for gi in std::mem::take(&mut b_buckets[i]) {
            let gi = gi as usize;
            if let Some(idx) = eval_group(&mut groups, gi, counters, &mut split, &mut audit) {
                debug_assert!(idx < i, "group re-bucket must strictly decrease");
                b_buckets[idx].push(gi as u32);
            }
        }
    }

    debug_assert!(d.iter().all(|&x| x != NONE));
    Ok(SplitOutcome {
        levels: d.into_iter().map(|x| x as usize).collect(),
        counters: split,
        b,
        audit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::oracle_csssbp;
    use crate::graph::Graph;
    use crate::key::Weight;
    use crate::testutil::SmallRng;

    fn th(values: &[(f64, i64)]) -> Thresholds {
        Thresholds::new(values.iter().map(|&(v, id)| Key::new(v, id)).collect())
    }

    #[test]
    fn index_of_basic() {
        let t = th(&[(3.0, 0), (8.0, 1)]);
        assert_eq!(t.index_of(Capacity::from_value(5.0)), 1);
        assert_eq!(t.index_of(Capacity::NegInf), 0);
        assert_eq!(t.index_of(Capacity::PosInf), 2);
    }

    #[test]
    fn index_of_tie_breaks_by_id() {
        let t = th(&[(3.0, 0), (8.0, 1)]);
        // An edge weight numerically 8 with a larger id sorts above λ_2.
        assert_eq!(t.index_of(Weight::finite(8.0, 5).as_capacity()), 2);
        // A capacity numerically 8 sorts below λ_2 (id -1).
        assert_eq!(t.index_of(Capacity::from_value(8.0)), 1);
        // The sampled edge itself has I(λ_2) = 2.
        assert_eq!(t.index_of(Capacity::Finite(Key::new(8.0, 1))), 2);
    }

    fn split(inst: &CsssbpInstance, t: &Thresholds) -> Vec<usize> {
        let mut c = CounterSet::new(true);
        split_levels(inst, t, &mut c, true).unwrap().levels
    }

    #[test]
    fn chain_hand_trace() {
        // u -> v with w = 5, h = (9, -inf), λ = (5): d = (9, 5),
        // I(9) = 1, I(5) = 1 (edge key ties with threshold key).
        let g = Graph::from_values(2, &[(0, 1, 5.0)]).unwrap();
        let inst = CsssbpInstance::new(
            g,
            vec![Capacity::from_value(9.0), Capacity::NegInf],
        );
        let t = th(&[(5.0, 0)]);
        assert_eq!(split(&inst, &t), vec![1, 1]);
    }

    #[test]
    fn all_neg_inf_is_level_zero() {
        let g = Graph::from_values(2, &[(0, 1, f64::INFINITY)]).unwrap();
        let inst = CsssbpInstance::new(g, vec![Capacity::NegInf; 2]);
        let t = th(&[(4.0, 0)]);
        assert_eq!(split(&inst, &t), vec![0, 0]);
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::from_values(2, &[]).unwrap();
        let inst = CsssbpInstance::new(g, vec![Capacity::NegInf; 2]);
        let t = th(&[(4.0, 0)]);
        let mut c = CounterSet::new(false);
        assert!(split_levels(&inst, &t, &mut c, false).is_err());
    }

    /// Thresholds from a random subset of the instance's restricted edges.
    fn random_thresholds(rng: &mut SmallRng, inst: &CsssbpInstance) -> Option<Thresholds> {
        let mut keys: Vec<Key> = inst
            .graph
            .edges()
            .iter()
            .filter_map(|e| e.w.key())
            .filter(|_| rng.below(2) == 0)
            .collect();
        keys.sort_unstable();
        if keys.is_empty() {
            None
        } else {
            Some(Thresholds::new(keys))
        }
    }

    #[test]
    fn randomized_levels_match_oracle() {
        let mut rng = SmallRng::new(2024);
        let mut done = 0;
        while done < 2000 {
            let inst = crate::testutil::random_connected_csssbp(&mut rng, 16, 24, true);
            let Some(t) = random_thresholds(&mut rng, &inst) else {
                continue;
            };
            done += 1;
            let want: Vec<usize> = oracle_csssbp(&inst)
                .d
                .iter()
                .map(|&c| t.index_of(c))
                .collect();
            let mut counters = CounterSet::new(true);
            let out = split_levels(&inst, &t, &mut counters, true).unwrap();
            assert_eq!(out.levels, want);
            let audit = out.audit.unwrap();
            assert!(audit.scan_monotone);
            // Lazy-edge lemma: every evaluated edge is cross- or below-level.
            for &pos in &audit.evaluated_edges {
                let e = inst.graph.edges()[pos];
                let (lu, lv) = (out.levels[e.src as usize], out.levels[e.dst as usize]);
                let below = lu == lv
                    && e.w.key().map(|k| Capacity::Finite(k) < t.lambda(lu)).unwrap_or(false);
                assert!(lu != lv || below, "evaluated edge {} kept", pos);
            }
            // Group lemma: per-group evals <= distinct final levels among
            // owned nodes.
            for (gi, members) in audit.group_members.iter().enumerate() {
                let mut lv: Vec<usize> =
                    members.iter().map(|&v| out.levels[v as usize]).collect();
                lv.sort_unstable();
                lv.dedup();
                assert!(
                    audit.group_eval_counts[gi] <= lv.len() as u64,
                    "group {} evals {} > {} distinct levels",
                    gi,
                    audit.group_eval_counts[gi],
                    lv.len()
                );
            }
        }
    }
}
