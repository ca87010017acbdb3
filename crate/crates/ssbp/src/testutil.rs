//! Small deterministic helpers for unit tests.

use crate::graph::{CsssbpInstance, Graph, SsbpInstance};
use crate::key::Capacity;

/// splitmix64; good enough for test-case generation and fully deterministic.
pub struct SmallRng {
    state: u64,
}

impl SmallRng {
    pub fn new(seed: u64) -> Self {
        SmallRng { state: seed }
    }

    pub fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound.max(1)
    }

    /// Small integer weights so duplicate values are common.
    pub fn weight(&mut self) -> f64 {
        self.below(12) as f64
    }
}

/// Random directed multigraph with up to `max_n` nodes and `max_m` edges;
/// self-loops and parallel edges included. Weights draw from a small integer
/// range so ties are frequent. A slice of edges may be unrestricted when
/// `allow_inf` is set.
pub fn random_graph(rng: &mut SmallRng, max_n: usize, max_m: usize, allow_inf: bool) -> Graph {
    let n = 1 + rng.below(max_n as u64) as usize;
    let m = rng.below(max_m as u64 + 1) as usize;
    let edges: Vec<(u32, u32, f64)> = (0..m)
        .map(|_| {
            let u = rng.below(n as u64) as u32;
            let v = rng.below(n as u64) as u32;
            let w = if allow_inf && rng.below(4) == 0 {
                f64::INFINITY
            } else {
                rng.weight()
            };
            (u, v, w)
        })
        .collect();
    Graph::from_values(n, &edges).unwrap()
}

pub fn random_h(rng: &mut SmallRng, n: usize, allow_inf: bool) -> Vec<Capacity> {
    (0..n)
        .map(|_| {
            if allow_inf && rng.below(5) == 0 {
                if rng.below(2) == 0 {
                    Capacity::PosInf
                } else {
                    Capacity::NegInf
                }
            } else {
                Capacity::from_value(rng.weight())
            }
        })
        .collect()
}

pub fn random_csssbp(
    rng: &mut SmallRng,
    max_n: usize,
    max_m: usize,
    allow_inf: bool,
) -> CsssbpInstance {
    let g = random_graph(rng, max_n, max_m, allow_inf);
    let h = random_h(rng, g.n(), allow_inf);
    CsssbpInstance::new(g, h)
}

/// Weakly-connected random instance: a random spanning tree plus extra
/// edges, random directions, parallel edges and self-loops included.
pub fn random_connected_csssbp(
    rng: &mut SmallRng,
    max_n: usize,
    max_extra: usize,
    allow_inf: bool,
) -> CsssbpInstance {
    let n = 1 + rng.below(max_n as u64) as usize;
    let mut edges: Vec<(u32, u32, f64)> = Vec::new();
    for v in 1..n as u64 {
        let u = rng.below(v) as u32;
        let (a, b) = if rng.below(2) == 0 {
            (u, v as u32)
        } else {
            (v as u32, u)
        };
        edges.push((a, b, rng.weight()));
    }
    for _ in 0..rng.below(max_extra as u64 + 1) {
        let u = rng.below(n as u64) as u32;
        let v = rng.below(n as u64) as u32;
        let w = if allow_inf && rng.below(4) == 0 {
            f64::INFINITY
        } else {
            rng.weight()
        };
        edges.push((u, v, w));
    }
    let g = Graph::from_values(n, &edges).unwrap();
    let h = random_h(rng, n, allow_inf);
    CsssbpInstance::new(g, h)
}

pub fn random_ssbp(rng: &mut SmallRng, max_n: usize, max_m: usize) -> SsbpInstance {
    let g = random_graph(rng, max_n, max_m, false);
    let s = rng.below(g.n() as u64) as u32;
    SsbpInstance::new(g, s).unwrap()
}
