//! Counter and event framework: the evidence layer for the counting lemmas.
//!
//! Counters are plain per-solve accumulators threaded through the call
//! context (never global), so concurrent solves cannot interfere. With a
//! fixed seed every counter is bit-identical across runs, and disabling
//! counters does not change any solver output.

use std::fmt::Write as _;

macro_rules! counter_fields {
    ($($name:ident),* $(,)?) => {
        /// Named monotone counters.
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
        pub struct CounterSet {
            $(pub $name: u64,)*
            enabled: bool,
        }

        impl CounterSet {
            /// Componentwise difference; panics on underflow (counters are
            /// monotone, so underflow means `a` is not a later snapshot of `b`).
            pub fn diff(a: &CounterSet, b: &CounterSet) -> CounterSet {
                CounterSet {
                    $($name: a.$name.checked_sub(b.$name)
                        .expect(concat!("counter underflow in ", stringify!($name))),)*
                    enabled: a.enabled,
                }
            }

            pub fn add(&mut self, other: &CounterSet) {
                $(self.$name += other.$name;)*
            }

            pub fn report(&self, out: &mut String, prefix: &str) {
                $(writeln!(out, "{}{}={}", prefix, stringify!($name), self.$name).unwrap();)*
            }
        }
    };
}

counter_fields!(
    edge_index_evals,
    group_index_evals,
    sort_comparisons,
    bucket_ops,
    touched_elements,
    brute_searches,
);

impl CounterSet {
    pub fn new(enabled: bool) -> Self {
        CounterSet {
            enabled,
            ..Default::default()
        }
    }

    pub fn enabled(&self) -> bool {
        self.enabled
    }

    pub fn snapshot(&self) -> CounterSet {
        *self
    }

    #[inline]
    pub fn bump(field: &mut u64, enabled: bool, by: u64) {
        if enabled {
            *field += by;
        }
    }

    #[inline]
    pub fn touch(&mut self, by: u64) {
        if self.enabled {
            self.touched_elements += by;
        }
    }
}

/// Counters from one run of the split algorithm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SplitCounters {
    /// Index evaluations of edge weights in the lazy Dijkstra scan.
    pub edge_evals: u64,
    /// Index evaluations of initial capacities (group setup + re-bucketing).
    pub group_evals: u64,
    /// Cross-level plus below-level edges (filled in once levels are known).
    pub r_removed: u64,
    /// Brute-force max-scans over groups.
    pub brute_searches: u64,
}

/// One record per connected recursive call of the main algorithm.
#[derive(Clone, Debug, Default)]
pub struct CallRecord {
    pub depth: usize,
    pub n: usize,
    pub m: usize,
    /// |E^(r)|: restricted edges in this call.
    pub restricted: usize,
    /// Number of thresholds sampled (0 in base-case calls).
    pub l: usize,
    /// Edges absent from all child instances.
    pub r: usize,
    /// Restricted edges absent from all child instances (as restricted).
    pub r_prime: usize,
    /// Number of tree-partition groups (0 in base-case calls).
    pub b: usize,
    pub split: SplitCounters,
    pub base_case: bool,
    /// Max restricted-edge count over child instances.
    pub children_max_restricted: usize,
    /// Line-13-evaluated edges that turned out neither cross- nor below-level.
    pub lazy_edge_violations: u64,
    /// Groups whose capacity evaluations exceeded their distinct final levels.
    pub group_eval_violations: u64,
}

/// Full statistics of one solve.
#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    pub records: Vec<CallRecord>,
    pub totals: CounterSet,
    pub max_depth: usize,
    /// The sampling parameter used for this solve.
    pub k: usize,
    /// Sum of group counts b over all calls.
    pub total_groups: u64,
}

impl SolveStats {
    pub fn total_index_evals(&self) -> u64 {
        self.totals.edge_index_evals + self.totals.group_index_evals
    }

    /// Line-oriented `key=value` summary.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        writeln!(out, "calls={}", self.records.len()).unwrap();
        writeln!(out, "max_depth={}", self.max_depth).unwrap();
        writeln!(out, "k={}", self.k).unwrap();
        writeln!(out, "total_groups={}", self.total_groups).unwrap();
        writeln!(out, "total_index_evals={}", self.total_index_evals()).unwrap();
        self.totals.report(&mut out, "");
        out
    }

    /// One `key=value` line per call record.
    pub fn per_call(&self) -> String {
        let mut out = String::new();
        for (i, rec) in self.records.iter().enumerate() {
            writeln!(
                out,
                "call={} depth={} n={} m={} restricted={} l={} r={} r_prime={} b={} \
                 edge_evals={} group_evals={} brute_searches={} base_case={}",
                i, rec.depth, rec.n, rec.m, rec.restricted, rec.l, rec.r, rec.r_prime,
                rec.b, rec.split.edge_evals, rec.split.group_evals,
                rec.split.brute_searches, rec.base_case
            )
            .unwrap();
        }
        out
    }
}

/// A violated counter inequality. Violations are data, not panics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub call: usize,
    pub rule: String,
}

/// Evaluate every per-call counter inequality; empty on success.
///
/// Checked per recursive call:
/// - edge_evals <= r (each lazily evaluated edge leaves the recursion)
/// - group_evals <= r + b (distinct-final-label bound per group)
/// - edge_evals + group_evals <= 2r + b (split-cost bound)
/// - no lazy-edge or group-evaluation audit violations
/// - whenever 2 <= |E^(r)| <= k, every child has at most one restricted edge
pub fn check_bounds(stats: &SolveStats) -> Vec<BoundViolation> {
    let mut out = Vec::new();
    let mut push = |call: usize, rule: String| out.push(BoundViolation { call, rule });
    for (i, rec) in stats.records.iter().enumerate() {
        if rec.base_case {
            continue;
        }
        let (e, g) = (rec.split.edge_evals, rec.split.group_evals);
        let (r, b) = (rec.r as u64, rec.b as u64);
        if e > r {
            push(i, format!("edge_evals {} > r {}", e, r));
        }
        if g > r + b {
            push(i, format!("group_evals {} > r + b = {}", g, r + b));
        }
        if e + g > 2 * r + b {
            push(i, format!("edge+group evals {} > 2r + b = {}", e + g, 2 * r + b));
        }
        if rec.lazy_edge_violations > 0 {
            push(i, format!("{} lazy-edge violations", rec.lazy_edge_violations));
        }
        if rec.group_eval_violations > 0 {
            push(i, format!("{} group-eval violations", rec.group_eval_violations));
        }
        if rec.restricted >= 2 && rec.restricted <= stats.k && rec.children_max_restricted > 1 {
            push(
                i,
                format!(
                    "restricted {} <= k but a child kept {} restricted edges",
                    rec.restricted, rec.children_max_restricted
                ),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diff_of_self_is_zero() {
        let mut c = CounterSet::new(true);
        c.touch(5);
        let d = CounterSet::diff(&c, &c);
        assert_eq!(d.touched_elements, 0);
        assert_eq!(d.bucket_ops, 0);
    }

    #[test]
    fn snapshot_then_single_event() {
        let mut c = CounterSet::new(true);
        let before = c.snapshot();
        let enabled = c.enabled();
        CounterSet::bump(&mut c.edge_index_evals, enabled, 1);
        let d = CounterSet::diff(&c, &before);
        assert_eq!(d.edge_index_evals, 1);
        assert_eq!(d.group_index_evals, 0);
    }

    #[test]
    fn disabled_counters_stay_zero() {
        let mut c = CounterSet::new(false);
        c.touch(10);
        assert_eq!(c.touched_elements, 0);
    }

    #[test]
    fn check_bounds_flags_injected_fault() {
        let mut stats = SolveStats {
            k: 8,
            ..Default::default()
        };
        stats.records.push(CallRecord {
            n: 4,
            m: 6,
            restricted: 6,
            l: 2,
            r: 1,
            b: 1,
            split: SplitCounters {
                edge_evals: 5, // > r
                ..Default::default()
            },
            ..Default::default()
        });
        let v = check_bounds(&stats);
        assert_eq!(v.len(), 2); // edge_evals > r, and edge+group > 2r+b
        assert_eq!(v[0].call, 0);
    }
}
