//! Directed multigraph in compressed adjacency form, problem instances, and
//! the linear-time reductions between SSBP and its capacity-generalized form.

use crate::error::{Error, Result};
use crate::key::{Capacity, Weight};

pub type NodeId = u32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
    pub w: Weight,
}

/// Directed multigraph. Edges live in one contiguous array sorted by source
/// node; `offsets[u]..offsets[u+1]` is the out-edge range of `u`. Self-loops
/// and parallel edges are permitted.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
}

impl Graph {
    /// Build from an arbitrary edge list (counting sort by source).
    pub fn from_edges(n: usize, list: Vec<Edge>) -> Result<Self> {
        let mut counts = vec![0usize; n + 1];
        for e in &list {
            if (e.src as usize) >= n {
                return Err(Error::BadNode(e.src));
            }
            if (e.dst as usize) >= n {
                return Err(Error::BadNode(e.dst));
            }
            counts[e.src as usize + 1] += 1;
        }
        for u in 0..n {
            counts[u + 1] += counts[u];
        }
        let offsets = counts.clone();
        let mut edges = vec![
            Edge {
                src: 0,
                dst: 0,
                w: Weight::Unrestricted
            };
            list.len()
        ];
        let mut cursor = counts;
        for e in list {
            let slot = cursor[e.src as usize];
            cursor[e.src as usize] += 1;
            edges[slot] = e;
        }
        Ok(Graph { n, edges, offsets })
    }

    /// Build from `(u, v, value)` triples; `f64::INFINITY` means unrestricted.
    /// Tie-break ids are assigned by position in the list.
    pub fn from_values(n: usize, list: &[(NodeId, NodeId, f64)]) -> Result<Self> {
        let edges = list
            .iter()
            .enumerate()
            .map(|(i, &(u, v, w))| Edge {
                src: u,
                dst: v,
                w: if w == f64::INFINITY {
                    Weight::Unrestricted
                } else {
                    Weight::finite(w, i as i64)
                },
            })
            .collect();
        Graph::from_edges(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, u: NodeId) -> &[Edge] {
        &self.edges[self.offsets[u as usize]..self.offsets[u as usize + 1]]
    }

    /// Positions of u's out-edges in the global edge array.
    pub fn out_range(&self, u: NodeId) -> std::ops::Range<usize> {
        self.offsets[u as usize]..self.offsets[u as usize + 1]
    }

    pub fn restricted_count(&self) -> usize {
        self.edges.iter().filter(|e| e.w.is_restricted()).count()
    }

    /// Is the undirected view of this graph connected? (Trivially true for n <= 1.)
    pub fn is_weakly_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut dsu = Dsu::new(self.n);
        for e in &self.edges {
            dsu.union(e.src as usize, e.dst as usize);
        }
        dsu.count_roots() == 1
    }
}

/// Union-find with path halving.
pub(crate) struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let gp = self.parent[self.parent[x] as usize];
            self.parent[x] = gp;
            x = gp as usize;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb as u32;
        true
    }

    fn count_roots(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// SSBP instance: graph plus source node.
#[derive(Clone, Debug)]
pub struct SsbpInstance {
    pub graph: Graph,
    pub source: NodeId,
}

impl SsbpInstance {
    pub fn new(graph: Graph, source: NodeId) -> Result<Self> {
        if (source as usize) >= graph.n().max(1) {
            return Err(Error::BadNode(source));
        }
        Ok(SsbpInstance { graph, source })
    }
}

/// The generalized problem the recursion solves: every node carries an
/// initial capacity, a path's capacity is min(h(start), its edge weights).
#[derive(Clone, Debug)]
pub struct CsssbpInstance {
    pub graph: Graph,
    pub h: Vec<Capacity>,
}

impl CsssbpInstance {
    pub fn new(graph: Graph, h: Vec<Capacity>) -> Self {
        assert_eq!(graph.n(), h.len(), "capacity vector length must equal n");
        CsssbpInstance { graph, h }
    }
}

/// Per-node maximum bottleneck capacity.
#[derive(Clone, Debug, PartialEq)]
pub struct BottleneckResult {
    pub d: Vec<Capacity>,
}

/// SSBP -> CSSSBP: h(s) = max edge weight (or +inf on an edgeless graph,
/// the empty-max convention), h(v) = -inf elsewhere.
pub fn ssbp_to_csssbp(inst: &SsbpInstance) -> CsssbpInstance {
    let g = &inst.graph;
    let mut h = vec![Capacity::NegInf; g.n()];
    let hs = g
        .edges()
        .iter()
        .map(|e| e.w.as_capacity())
        .max()
        .unwrap_or(Capacity::PosInf);
    h[inst.source as usize] = hs;
    CsssbpInstance::new(g.clone(), h)
}

/// CSSSBP -> SSBP: add a fresh source with an out-edge of weight h(v) to
/// every v with h(v) > -inf (h(v) = +inf becomes an unrestricted edge).
/// Returns the new instance and the map original node -> new node (identity;
/// the added source gets id n).
pub fn csssbp_to_ssbp(inst: &CsssbpInstance) -> (SsbpInstance, Vec<NodeId>) {
    let g = &inst.graph;
    let n = g.n();
    let mut edges: Vec<Edge> = g.edges().to_vec();
    let mut next_id = g.m() as i64;
    for (v, &hv) in inst.h.iter().enumerate() {
        let w = match hv {
            Capacity::NegInf => continue,
            Capacity::PosInf => Weight::Unrestricted,
            Capacity::Finite(k) => {
                let w = Weight::finite(k.value, next_id);
                next_id += 1;
                w
            }
        };
        edges.push(Edge {
            src: n as NodeId,
            dst: v as NodeId,
            w,
        });
    }
    let graph = Graph::from_edges(n + 1, edges).expect("node ids in range by construction");
    let inst = SsbpInstance::new(graph, n as NodeId).expect("source in range");
    (inst, (0..n as NodeId).collect())
}

/// One weakly-connected component: member nodes (parent ids), the induced
/// subgraph under dense local ids, and the local -> parent map.
pub struct Component {
    pub nodes: Vec<NodeId>,
    pub graph: Graph,
    pub to_parent: Vec<NodeId>,
}

/// Partition a graph into weakly-connected components with induced subgraphs.
/// Every node lands in exactly one component, every edge in exactly one
/// induced subgraph.
pub fn weakly_connected_components(g: &Graph) -> Vec<Component> {
    let n = g.n();
    let mut dsu = Dsu::new(n);
    for e in g.edges() {
        dsu.union(e.src as usize, e.dst as usize);
    }
    // Dense component ids in order of first appearance.
    let mut comp_of = vec![u32::MAX; n];
    let mut comps = 0u32;
    for v in 0..n {
        let root = dsu.find(v);
        if comp_of[root] == u32::MAX {
            comp_of[root] = comps;
            comps += 1;
        }
        comp_of[v] = comp_of[root];
    }
    let mut nodes: Vec<Vec<NodeId>> = vec![Vec::new(); comps as usize];
    let mut local = vec![0 as NodeId; n];
    for v in 0..n {
        let c = comp_of[v] as usize;
        local[v] = nodes[c].len() as NodeId;
        nodes[c].push(v as NodeId);
    }
    let mut edge_lists: Vec<Vec<Edge>> = vec![Vec::new(); comps as usize];
    for e in g.edges() {
        let c = comp_of[e.src as usize] as usize;
        edge_lists[c].push(Edge {
            src: local[e.src as usize],
            dst: local[e.dst as usize],
            w: e.w,
        });
    }
    nodes
        .into_iter()
        .zip(edge_lists)
        .map(|(nodes, list)| {
            let graph = Graph::from_edges(nodes.len(), list).expect("local ids in range");
            Component {
                to_parent: nodes.clone(),
                nodes,
                graph,
            }
        })
        .collect()
}
