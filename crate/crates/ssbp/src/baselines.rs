//! Reference solvers: heap-based Dijkstra for SSBP/CSSSBP, a brute-force
//! fixpoint oracle, and an exhaustive simple-path oracle for tiny graphs.
//! These exist for correctness cross-checking and benchmarking.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{BottleneckResult, CsssbpInstance, SsbpInstance};
use crate::key::Capacity;

/// Dijkstra for SSBP: d'(s) = +inf, repeatedly scan the labeled node with
/// maximum label and relax d'(v) <- max(d'(v), min(d'(u), w(u,v))).
pub fn dijkstra_ssbp(inst: &SsbpInstance) -> BottleneckResult {
    let n = inst.graph.n();
    let mut d = vec![Capacity::NegInf; n];
    d[inst.source as usize] = Capacity::PosInf;
    run_dijkstra(&inst.graph, &mut d);
    BottleneckResult { d }
}

/// Dijkstra for CSSSBP: identical loop, initialized from h.
pub fn dijkstra_csssbp(inst: &CsssbpInstance) -> BottleneckResult {
    let mut d = inst.h.clone();
    run_dijkstra(&inst.graph, &mut d);
    BottleneckResult { d }
}

fn run_dijkstra(graph: &crate::graph::Graph, d: &mut [Capacity]) {
    // Max-heap with lazy deletion: stale entries are skipped on pop.
    let mut heap: BinaryHeap<(Capacity, u32)> = d
        .iter()
        .enumerate()
        .map(|(v, &c)| (c, v as u32))
        .collect();
    let mut scanned = vec![false; d.len()];
    while let Some((label, u)) = heap.pop() {
        if scanned[u as usize] || label < d[u as usize] {
            continue;
        }
        scanned[u as usize] = true;
        for e in graph.out_edges(u) {
            let cand = d[u as usize].min(e.w.as_capacity());
            if cand > d[e.dst as usize] {
                d[e.dst as usize] = cand;
                heap.push((cand, e.dst));
            }
        }
    }
}

/// Independent fixpoint oracle: initialize d = h and sweep all edges in
/// fixed array order with the relaxation rule until no label changes.
/// At most n sweeps are needed; intended for small instances.
pub fn oracle_csssbp(inst: &CsssbpInstance) -> BottleneckResult {
    let mut d = inst.h.clone();
    loop {
        let mut changed = false;
        for e in inst.graph.edges() {
            let cand = d[e.src as usize].min(e.w.as_capacity());
            if cand > d[e.dst as usize] {
                d[e.dst as usize] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    BottleneckResult { d }
}

pub const PATH_ORACLE_LIMIT: usize = 10;

/// Exhaustive oracle: enumerate every simple path from the source and take
/// the max over paths of the min edge weight. b(s,s) = +inf (empty path).
pub fn oracle_paths_ssbp(inst: &SsbpInstance) -> Result<BottleneckResult> {
    let n = inst.graph.n();
    if n > PATH_ORACLE_LIMIT {
        return Err(Error::TooManyNodes {
            n,
            limit: PATH_ORACLE_LIMIT,
        });
    }
    let mut d = vec![Capacity::NegInf; n];
    d[inst.source as usize] = Capacity::PosInf;
    let mut on_path = vec![false; n];
    on_path[inst.source as usize] = true;
    dfs(&inst.graph, inst.source, Capacity::PosInf, &mut on_path, &mut d);
    Ok(BottleneckResult { d })
}

fn dfs(
    graph: &crate::graph::Graph,
    u: u32,
    cap: Capacity,
    on_path: &mut [bool],
    d: &mut [Capacity],
) {
    for e in graph.out_edges(u) {
        let v = e.dst as usize;
        if on_path[v] {
            continue;
        }
        let cand = cap.min(e.w.as_capacity());
        if cand > d[v] {
            d[v] = cand;
        }
        on_path[v] = true;
        dfs(graph, e.dst, cand, on_path, d);
        on_path[v] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{csssbp_to_ssbp, Graph};

    fn ssbp(n: usize, edges: &[(u32, u32, f64)], s: u32) -> SsbpInstance {
        SsbpInstance::new(Graph::from_values(n, edges).unwrap(), s).unwrap()
    }

    fn values(r: &BottleneckResult) -> Vec<f64> {
        r.d.iter().map(|c| c.value()).collect()
    }

    #[test]
    fn single_path_min_of_prefix() {
        let inst = ssbp(3, &[(0, 1, 7.0), (1, 2, 3.0)], 0);
        assert_eq!(values(&dijkstra_ssbp(&inst)), vec![f64::INFINITY, 7.0, 3.0]);
    }

    #[test]
    fn diamond_max_of_mins() {
        // s=0, a=1, b=2, t=3; best is max(min(2,9), min(9,3)) = 3.
        let inst = ssbp(4, &[(0, 1, 2.0), (0, 2, 9.0), (1, 3, 9.0), (2, 3, 3.0)], 0);
        assert_eq!(dijkstra_ssbp(&inst).d[3].value(), 3.0);
        assert_eq!(oracle_paths_ssbp(&inst).unwrap().d[3].value(), 3.0);
    }

    #[test]
    fn unreachable_is_neg_inf() {
        let inst = ssbp(3, &[(0, 1, 1.0)], 0);
        assert_eq!(dijkstra_ssbp(&inst).d[2], Capacity::NegInf);
        assert_eq!(oracle_paths_ssbp(&inst).unwrap().d[2], Capacity::NegInf);
    }

    #[test]
    fn csssbp_no_edges_returns_h() {
        let g = Graph::from_values(2, &[]).unwrap();
        let inst = CsssbpInstance::new(
            g,
            vec![Capacity::from_value(5.0), Capacity::from_value(1.0)],
        );
        assert_eq!(values(&dijkstra_csssbp(&inst)), vec![5.0, 1.0]);
        assert_eq!(values(&oracle_csssbp(&inst)), vec![5.0, 1.0]);
    }

    #[test]
    fn csssbp_one_relaxation() {
        let g = Graph::from_values(2, &[(1, 0, 6.0)]).unwrap();
        let inst = CsssbpInstance::new(
            g,
            vec![Capacity::NegInf, Capacity::from_value(8.0)],
        );
        assert_eq!(values(&dijkstra_csssbp(&inst)), vec![6.0, 8.0]);
    }

    #[test]
    fn oracle_two_cycle() {
        // u=0, v=1: w(u,v)=4, w(v,u)=9, h=(10,-inf). Paths into v: from u,
        // capacity min(10,4)=4. The cycle back into u cannot beat h(u)=10.
        let g = Graph::from_values(2, &[(0, 1, 4.0), (1, 0, 9.0)]).unwrap();
        let inst = CsssbpInstance::new(
            g,
            vec![Capacity::from_value(10.0), Capacity::NegInf],
        );
        assert_eq!(values(&oracle_csssbp(&inst)), vec![10.0, 4.0]);
    }

    #[test]
    fn path_oracle_rejects_large_n() {
        let inst = ssbp(11, &[], 0);
        assert!(oracle_paths_ssbp(&inst).is_err());
    }

    #[test]
    fn round_trip_reduction_matches_oracle() {
        // Random CSSSBP instances: oracle(input) equals oracle on the
        // csssbp_to_ssbp graph restricted to the original nodes.
        let mut rng = crate::testutil::SmallRng::new(42);
        for _ in 0..300 {
            let inst = crate::testutil::random_csssbp(&mut rng, 6, 10, true);
            let want = oracle_csssbp(&inst);
            let (back, _) = csssbp_to_ssbp(&inst);
            let got = oracle_paths_ssbp(&back).unwrap();
            for v in 0..inst.graph.n() {
                assert_eq!(got.d[v].value(), want.d[v].value());
            }
        }
    }

    #[test]
    fn dijkstra_agrees_with_oracles_randomized() {
        let mut rng = crate::testutil::SmallRng::new(7);
        for _ in 0..500 {
            let inst = crate::testutil::random_csssbp(&mut rng, 8, 16, true);
            assert_eq!(dijkstra_csssbp(&inst).d, oracle_csssbp(&inst).d);
        }
    }

    #[test]
    fn monotone_in_h() {
        // Raising a single h(v) never decreases any d(t).
        let mut rng = crate::testutil::SmallRng::new(13);
        for _ in 0..200 {
            let mut inst = crate::testutil::random_csssbp(&mut rng, 6, 12, false);
            let base = oracle_csssbp(&inst);
            let v = (rng.next() as usize) % inst.graph.n();
            let raised = inst.h[v].value() + 1.0;
            inst.h[v] = if raised.is_finite() {
                Capacity::from_value(raised)
            } else {
                Capacity::PosInf
            };
            let bumped = oracle_csssbp(&inst);
            for t in 0..inst.graph.n() {
                assert!(bumped.d[t].value() >= base.d[t].value());
            }
        }
    }
}
