//! Spanning tree construction and the linear-time partition of a tree into
//! edge-disjoint subtrees with node counts in [s, 3s).
//!
//! The partition is a DFS that accumulates child results plus the current
//! root, reports a group whenever the accumulator reaches s nodes, and
//! resets the accumulator to the current root. The final remnant is merged
//! into the last reported group (they share that group's report-time root,
//! so connectivity is preserved) or becomes the sole group.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::stats::CounterSet;

/// Rooted spanning tree of the undirected view of a graph.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub root: NodeId,
    /// Parent per node; the root is self-parented.
    pub parent: Vec<NodeId>,
    pub children: Vec<Vec<NodeId>>,
    /// For every non-root node, the position (in the graph's edge array) of
    /// the original edge its tree edge came from.
    pub parent_edge: Vec<Option<usize>>,
}

impl SpanningTree {
    pub fn n(&self) -> usize {
        self.parent.len()
    }
}

/// BFS spanning tree over the undirected view. Rejects disconnected input.
pub fn build_spanning_tree(g: &Graph) -> Result<SpanningTree> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Disconnected);
    }
    // Undirected adjacency: (neighbor, edge position), both directions.
    let mut deg = vec![0usize; n + 1];
    for e in g.edges() {
        deg[e.src as usize + 1] += 1;
        deg[e.dst as usize + 1] += 1;
    }
    for v in 0..n {
        deg[v + 1] += deg[v];
    }
    let mut adj = vec![(0 as NodeId, 0usize); 2 * g.m()];
    let mut cursor = deg.clone();
    for (pos, e) in g.edges().iter().enumerate() {
        adj[cursor[e.src as usize]] = (e.dst, pos);
        cursor[e.src as usize] += 1;
        adj[cursor[e.dst as usize]] = (e.src, pos);
        cursor[e.dst as usize] += 1;
    }

    let root = 0 as NodeId;
    let mut parent = vec![NodeId::MAX; n];
    let mut parent_edge = vec![None; n];
    let mut children = vec![Vec::new(); n];
    parent[0] = root;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut reached = 1usize;
    while let Some(u) = queue.pop_front() {
        for &(v, pos) in &adj[deg[u as usize]..deg[u as usize + 1]] {
            if parent[v as usize] == NodeId::MAX {
                parent[v as usize] = u;
                parent_edge[v as usize] = Some(pos);
                children[u as usize].push(v);
                queue.push_back(v);
                reached += 1;
            }
        }
    }
    if reached != n {
        return Err(Error::Disconnected);
    }
    Ok(SpanningTree {
        root,
        parent,
        children,
        parent_edge,
    })
}

/// Edge-disjoint subtrees U_1..U_b of a spanning tree, node counts in [s, 3s).
#[derive(Clone, Debug)]
pub struct TreePartition {
    /// Node lists; a node may appear in several groups (shared roots).
    pub groups: Vec<Vec<NodeId>>,
    /// The single group that owns each node: the first reported group
    /// containing it.
    pub owner: Vec<u32>,
}

impl TreePartition {
    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Tree-edge set of group `gi`, each edge named by its child endpoint.
    /// Requires a scratch mark vector of length n, cleared on entry and exit.
    pub fn subtree_edges(&self, gi: usize, tree: &SpanningTree, mark: &mut [bool]) -> Vec<NodeId> {
        for &v in &self.groups[gi] {
            mark[v as usize] = true;
        }
        let edges = self.groups[gi]
            .iter()
            .copied()
            .filter(|&v| tree.parent[v as usize] != v && mark[tree.parent[v as usize] as usize])
            .collect();
        for &v in &self.groups[gi] {
            mark[v as usize] = false;
        }
        edges
    }
}

/// Partition `t` into edge-disjoint subtrees with node counts in [s, 3s).
pub fn partition_tree(t: &SpanningTree, s: usize, counters: &mut CounterSet) -> Result<TreePartition> {
    let n = t.n();
    if s < 1 || s > n {
        return Err(Error::BadPartitionSize { s, n });
    }
    let mut groups: Vec<Vec<NodeId>> = Vec::new();
    let mut owner = vec![u32::MAX; n];

    // Non-recursive DFS; frames carry the accumulator U of Figure-style
    // recursive accumulation.
    struct Frame {
        node: NodeId,
        next_child: usize,
        acc: Vec<NodeId>,
    }
    let mut stack = vec![Frame {
        node: t.root,
        next_child: 0,
        acc: vec![t.root],
    }];
    let mut remnant: Vec<NodeId> = Vec::new();
    while let Some(top) = stack.last_mut() {
        counters.touch(1);
        let kids = &t.children[top.node as usize];
        if top.next_child < kids.len() {
            let c = kids[top.next_child];
            top.next_child += 1;
            stack.push(Frame {
                node: c,
                next_child: 0,
                acc: vec![c],
            });
            continue;
        }
        let done = stack.pop().unwrap();
        match stack.last_mut() {
            None => remnant = done.acc,
            Some(parent) => {
                counters.touch(done.acc.len() as u64);
                parent.acc.extend(done.acc);
                if parent.acc.len() >= s {
                    let group = std::mem::replace(&mut parent.acc, vec![parent.node]);
                    let gi = groups.len() as u32;
                    for &v in &group {
                        if owner[v as usize] == u32::MAX {
                            owner[v as usize] = gi;
                        }
                    }
                    groups.push(group);
                }
            }
        }
    }

    if groups.is_empty() {
        // No report fired: the remnant is the whole tree.
        for &v in &remnant {
            owner[v as usize] = 0;
        }
        groups.push(remnant);
    } else {
        let gi = (groups.len() - 1) as u32;
        let last = groups.last_mut().unwrap();
        {
            // The remnant shares exactly the last group's report-time root.
            let mut member = vec![false; n];
            for &v in last.iter() {
                member[v as usize] = true;
            }
            for &v in &remnant {
                counters.touch(1);
                if !member[v as usize] {
                    last.push(v);
                    if owner[v as usize] == u32::MAX {
                        owner[v as usize] = gi;
                    }
                }
            }
        }
    }
    debug_assert!(owner.iter().all(|&o| o != u32::MAX));
    Ok(TreePartition { groups, owner })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::SmallRng;

    fn counters() -> CounterSet {
        CounterSet::new(true)
    }

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<(u32, u32, f64)> =
            (0..n - 1).map(|i| (i as u32, i as u32 + 1, 1.0)).collect();
        Graph::from_values(n, &edges).unwrap()
    }

    #[test]
    fn single_node_tree() {
        let g = Graph::from_values(1, &[]).unwrap();
        let t = build_spanning_tree(&g).unwrap();
        assert_eq!(t.n(), 1);
        assert_eq!(t.parent[0], 0);
    }

    #[test]
    fn directed_path_spanning_tree() {
        let t = build_spanning_tree(&path_graph(3)).unwrap();
        assert_eq!(t.parent, vec![0, 0, 1]);
        assert_eq!(t.parent_edge[1], Some(0));
        assert_eq!(t.parent_edge[2], Some(1));
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::from_values(3, &[(0, 1, 1.0)]).unwrap();
        assert!(build_spanning_tree(&g).is_err());
    }

    #[test]
    fn rejects_bad_s() {
        let t = build_spanning_tree(&path_graph(4)).unwrap();
        assert!(partition_tree(&t, 0, &mut counters()).is_err());
        assert!(partition_tree(&t, 5, &mut counters()).is_err());
    }

    #[test]
    fn whole_tree_when_s_equals_n() {
        let t = build_spanning_tree(&path_graph(7)).unwrap();
        let p = partition_tree(&t, 7, &mut counters()).unwrap();
        assert_eq!(p.group_count(), 1);
        assert_eq!(p.groups[0].len(), 7);
    }

    #[test]
    fn path_of_nine_with_s_three() {
        let t = build_spanning_tree(&path_graph(9)).unwrap();
        let p = partition_tree(&t, 3, &mut counters()).unwrap();
        check_partition(&t, &p, 3);
    }

    #[test]
    fn star_with_s_two() {
        // K_{1,6}: center 0. The center is shared across subtrees but owned once.
        let edges: Vec<(u32, u32, f64)> = (1..=6).map(|v| (0, v as u32, 1.0)).collect();
        let g = Graph::from_values(7, &edges).unwrap();
        let t = build_spanning_tree(&g).unwrap();
        let p = partition_tree(&t, 2, &mut counters()).unwrap();
        check_partition(&t, &p, 2);
        let containing = p.groups.iter().filter(|g| g.contains(&0)).count();
        assert!(containing > 1);
        assert_eq!(p.groups.iter().flatten().filter(|&&v| v == 0).count(), containing);
    }

    /// All TreePartition invariants: size bounds, edge-disjointness, full
    /// edge coverage, per-subtree connectivity, unique ownership.
    pub(crate) fn check_partition(t: &SpanningTree, p: &TreePartition, s: usize) {
        let n = t.n();
        let mut mark = vec![false; n];
        let mut covered = vec![false; n]; // per non-root node = its parent edge
        for (gi, group) in p.groups.iter().enumerate() {
            assert!(group.len() >= s && group.len() < 3 * s, "group size {} outside [{}, {})", group.len(), s, 3 * s);
            let edges = p.subtree_edges(gi, t, &mut mark);
            for &v in &edges {
                assert!(!covered[v as usize], "edge to {} covered twice", v);
                covered[v as usize] = true;
            }
            // Connectivity: the group's induced subgraph of T must form one
            // tree, i.e. |edges| == |group| - 1 (members are distinct).
            let mut uniq = group.clone();
            uniq.sort_unstable();
            let len = uniq.len();
            uniq.dedup();
            assert_eq!(uniq.len(), len, "duplicate node inside one group");
            assert_eq!(edges.len(), group.len() - 1, "group {} not connected", gi);
        }
        for v in 0..n as u32 {
            if t.parent[v as usize] != v {
                assert!(covered[v as usize], "tree edge to {} uncovered", v);
            }
            let o = p.owner[v as usize] as usize;
            assert!(p.groups[o].contains(&v));
        }
        // b * s <= n + b: every group has >= s nodes, overlaps only at
        // shared roots.
        let b = p.group_count();
        assert!(b * s <= n + b);
    }

    #[test]
    fn randomized_partitions() {
        let mut rng = SmallRng::new(5);
        for iter in 0..300 {
            let n = 1 + rng.below(if iter % 10 == 0 { 500 } else { 40 }) as usize;
            // Random tree via random parent links.
            let edges: Vec<(u32, u32, f64)> = (1..n)
                .map(|v| (rng.below(v as u64) as u32, v as u32, 1.0))
                .collect();
            let g = Graph::from_values(n, &edges).unwrap();
            let t = build_spanning_tree(&g).unwrap();
            let log_n = (n.max(2) as f64).log2().ceil() as usize;
            for s in [1, 2, log_n.clamp(1, n), n] {
                if s > n {
                    continue;
                }
                let mut c = counters();
                let p = partition_tree(&t, s, &mut c).unwrap();
                check_partition(&t, &p, s);
                // Linear work.
                assert!(c.touched_elements <= 20 * n as u64);
            }
        }
    }
}
