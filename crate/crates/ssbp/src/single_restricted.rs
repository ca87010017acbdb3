//! Linear-time CSSSBP solvers for graphs with at most one restricted edge:
//! the base case of the recursion.
//!
//! With only unrestricted edges, d(v) is the maximum h(u) over nodes u that
//! can reach v, and every node of a strongly-connected component gets the
//! same answer. So: condense SCCs (Tarjan), then propagate maxima over the
//! condensation in topological order. With exactly one restricted edge
//! e0 = (u0, v0), solve without e0 first, then lift every node reachable
//! from v0 to at least min(d(u0), w(e0)).

use crate::error::{Error, Result};
use crate::graph::{BottleneckResult, CsssbpInstance, Graph};
use crate::key::{Capacity, Weight};
use crate::stats::CounterSet;

/// Strongly-connected components, single-pass Tarjan with an explicit stack
/// (recursion depth can reach n). Returns (component id per node, component
/// count); component ids are a reverse topological order of the condensation
/// (every edge goes from a higher id to a lower or equal id).
pub fn tarjan_scc(g: &Graph, skip_edge: Option<usize>, counters: &mut CounterSet) -> (Vec<u32>, usize) {
    let n = g.n();
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut comp = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut next_index = 0u32;
    let mut ncomp = 0u32;
    // Frames: (node, index of next out-edge to try).
    let mut frames: Vec<(u32, usize)> = Vec::new();

    for start in 0..n as u32 {
        if index[start as usize] != UNSET {
            continue;
        }
        frames.push((start, 0));
        index[start as usize] = next_index;
        low[start as usize] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start as usize] = true;
        counters.touch(1);

        while let Some(&mut (u, ref mut ei)) = frames.last_mut() {
            let out = g.out_edges(u);
            if *ei < out.len() {
                let local = *ei;
                *ei += 1;
                counters.touch(1);
                // skip_edge is a position in the global edge array.
                if skip_edge == Some(g.out_range(u).start + local) {
                    continue;
                }
                let v = out[local].dst;
                if index[v as usize] == UNSET {
                    index[v as usize] = next_index;
                    low[v as usize] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v as usize] = true;
                    frames.push((v, 0));
                } else if on_stack[v as usize] {
                    low[u as usize] = low[u as usize].min(index[v as usize]);
                }
            } else {
                frames.pop();
                if low[u as usize] == index[u as usize] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        comp[w as usize] = ncomp;
                        counters.touch(1);
                        if w == u {
                            break;
                        }
                    }
                    ncomp += 1;
                }
                if let Some(&(p, _)) = frames.last() {
                    low[p as usize] = low[p as usize].min(low[u as usize]);
                }
            }
        }
    }
    (comp, ncomp as usize)
}

fn propagate_unrestricted(
    inst: &CsssbpInstance,
    skip_edge: Option<usize>,
    counters: &mut CounterSet,
) -> Vec<Capacity> {
    let g = &inst.graph;
    let (comp, ncomp) = tarjan_scc(g, skip_edge, counters);
    // Per-component initial capacity: max h over members.
    let mut val = vec![Capacity::NegInf; ncomp];
    for (v, &c) in comp.iter().enumerate() {
        val[c as usize] = val[c as usize].max(inst.h[v]);
        counters.touch(1);
    }
    // Tarjan emits components in reverse topological order, so iterating
    // ids from high to low visits sources before sinks: push maxima forward.
    let mut by_comp_start = vec![0usize; ncomp + 1];
    for &c in &comp {
        by_comp_start[c as usize + 1] += 1;
    }
    for c in 0..ncomp {
        by_comp_start[c + 1] += by_comp_start[c];
    }
    let mut members = vec![0u32; g.n()];
    let mut cursor = by_comp_start.clone();
    for (v, &c) in comp.iter().enumerate() {
        members[cursor[c as usize]] = v as u32;
        cursor[c as usize] += 1;
    }
    for c in (0..ncomp).rev() {
        let cv = val[c];
        for &u in &members[by_comp_start[c]..by_comp_start[c + 1]] {
            let base = g.out_range(u).start;
            for (i, e) in g.out_edges(u).iter().enumerate() {
                counters.touch(1);
                if skip_edge == Some(base + i) {
                    continue;
                }
                let tc = comp[e.dst as usize] as usize;
                if tc != c && cv > val[tc] {
                    val[tc] = cv;
                }
            }
        }
    }
    comp.iter().map(|&c| val[c as usize]).collect()
}

/// CSSSBP with no restricted edge: d(v) = max h(u) over u that can reach v.
pub fn solve_zero_restricted(
    inst: &CsssbpInstance,
    counters: &mut CounterSet,
) -> Result<BottleneckResult> {
    let found = inst.graph.restricted_count();
    if found != 0 {
        return Err(Error::RestrictedCount { expected: 0, found });
    }
    Ok(BottleneckResult {
        d: propagate_unrestricted(inst, None, counters),
    })
}

/// CSSSBP with exactly one restricted edge e0 = (u0, v0): solve without e0,
/// then update d(v) <- max(d(v), min(d(u0), w(e0))) for every v reachable
/// from v0.
pub fn solve_one_restricted(
    inst: &CsssbpInstance,
    counters: &mut CounterSet,
) -> Result<BottleneckResult> {
    let g = &inst.graph;
    let found = g.restricted_count();
    if found != 1 {
        return Err(Error::RestrictedCount { expected: 1, found });
    }
    let pos = g
        .edges()
        .iter()
        .position(|e| e.w.is_restricted())
        .expect("counted above");
    let e0 = g.edges()[pos];
    let w0 = match e0.w {
        Weight::Finite(k) => Capacity::Finite(k),
        Weight::Unrestricted => unreachable!(),
    };

    let mut d = propagate_unrestricted(inst, Some(pos), counters);

    // Phase 2: the lift value is uniform over the set reachable from v0,
    // so plain BFS suffices, no priority order needed.
    let lift = d[e0.src as usize].min(w0);
    let mut visited = vec![false; g.n()];
    let mut queue = vec![e0.dst];
    visited[e0.dst as usize] = true;
    while let Some(u) = queue.pop() {
        counters.touch(1);
        if lift > d[u as usize] {
            d[u as usize] = lift;
        }
        for e in g.out_edges(u) {
            counters.touch(1);
            if !visited[e.dst as usize] {
                visited[e.dst as usize] = true;
                queue.push(e.dst);
            }
        }
    }
    Ok(BottleneckResult { d })
}

/// Solve a base-case instance (at most one restricted edge).
pub fn solve_base_case(
    inst: &CsssbpInstance,
    counters: &mut CounterSet,
) -> Result<BottleneckResult> {
    match inst.graph.restricted_count() {
        0 => solve_zero_restricted(inst, counters),
        1 => solve_one_restricted(inst, counters),
        found => Err(Error::RestrictedCount { expected: 1, found }),
    }
}
