//! Deterministic graph generators for the CLI and the benchmark harness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Graph family. Conventions:
/// * `uniform-random(n, m)`: m edges with independent uniform endpoints
///   (self-loops and parallel edges possible).
/// * `grid(rows, cols)`: each of the rows*(cols-1) + cols*(rows-1) adjacent
///   pairs contributes a directed pair (both orientations), so
///   m = 2 * pairs.
/// * `path(n)`: directed path 0 -> 1 -> … -> n-1.
/// * `complete(n)`: all n*(n-1) ordered pairs.
/// * `layered-dag(layers, width)`: layers*width nodes; every node of layer
///   i has an edge to every node of layer i+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    UniformRandom { n: usize, m: usize },
    Grid { rows: usize, cols: usize },
    Path { n: usize },
    Complete { n: usize },
    LayeredDag { layers: usize, width: usize },
}

impl Family {
    /// Parse `name(a, b)` strings, e.g. `uniform-random(100,500)`.
    pub fn parse(spec: &str) -> Result<Family> {
        let bad = |msg: &str| Error::Parse {
            line: 0,
            msg: format!("family spec `{}`: {}", spec, msg),
        };
        let (name, rest) = spec
            .split_once('(')
            .ok_or_else(|| bad("expected `name(args)`"))?;
        let args_str = rest.strip_suffix(')').ok_or_else(|| bad("missing `)`"))?;
        let args: Vec<usize> = args_str
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("arguments must be non-negative integers"))?;
        let two = |args: &[usize]| -> Result<(usize, usize)> {
            match args {
                [a, b] => Ok((*a, *b)),
                _ => Err(bad("expected two arguments")),
            }
        };
        let one = |args: &[usize]| -> Result<usize> {
            match args {
                [a] => Ok(*a),
                _ => Err(bad("expected one argument")),
            }
        };
        match name.trim() {
            "uniform-random" => {
                let (n, m) = two(&args)?;
                if n == 0 {
                    return Err(bad("n must be positive"));
                }
                Ok(Family::UniformRandom { n, m })
            }
            "grid" => {
                let (rows, cols) = two(&args)?;
                if rows == 0 || cols == 0 {
                    return Err(bad("rows and cols must be positive"));
                }
                Ok(Family::Grid { rows, cols })
            }
            "path" => Ok(Family::Path { n: one(&args)?.max(1) }),
            "complete" => Ok(Family::Complete { n: one(&args)?.max(1) }),
            "layered-dag" => {
                let (layers, width) = two(&args)?;
                if layers == 0 || width == 0 {
                    return Err(bad("layers and width must be positive"));
                }
                Ok(Family::LayeredDag { layers, width })
            }
            other => Err(bad(&format!("unknown family `{}`", other))),
        }
    }

    pub fn node_count(&self) -> usize {
        match *self {
            Family::UniformRandom { n, .. } => n,
            Family::Grid { rows, cols } => rows * cols,
            Family::Path { n } => n,
            Family::Complete { n } => n,
            Family::LayeredDag { layers, width } => layers * width,
        }
    }

    pub fn edge_count(&self) -> usize {
        match *self {
            Family::UniformRandom { m, .. } => m,
            Family::Grid { rows, cols } => 2 * (rows * (cols - 1) + cols * (rows - 1)),
            Family::Path { n } => n - 1,
            Family::Complete { n } => n * (n - 1),
            Family::LayeredDag { layers, width } => (layers - 1) * width * width,
        }
    }

    fn pairs(&self, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        match *self {
            Family::UniformRandom { n, m } => {
                for _ in 0..m {
                    out.push((rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)));
                }
            }
            Family::Grid { rows, cols } => {
                let id = |r: usize, c: usize| (r * cols + c) as u32;
                for r in 0..rows {
                    for c in 0..cols {
                        if c + 1 < cols {
                            out.push((id(r, c), id(r, c + 1)));
                            out.push((id(r, c + 1), id(r, c)));
                        }
                        if r + 1 < rows {
                            out.push((id(r, c), id(r + 1, c)));
                            out.push((id(r + 1, c), id(r, c)));
                        }
                    }
                }
            }
            Family::Path { n } => {
                for v in 1..n as u32 {
                    out.push((v - 1, v));
                }
            }
            Family::Complete { n } => {
                for u in 0..n as u32 {
                    for v in 0..n as u32 {
                        if u != v {
                            out.push((u, v));
                        }
                    }
                }
            }
            Family::LayeredDag { layers, width } => {
                for layer in 1..layers {
                    for a in 0..width {
                        for b in 0..width {
                            out.push((
                                ((layer - 1) * width + a) as u32,
                                (layer * width + b) as u32,
                            ));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Weight distribution: uniform reals in [lo, hi), or a random permutation
/// of the integer ranks 0..m.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightDist {
    UniformReal { lo: f64, hi: f64 },
    IntegerRanks,
}

impl WeightDist {
    pub fn parse(spec: &str) -> Result<WeightDist> {
        if spec == "ranks" {
            return Ok(WeightDist::IntegerRanks);
        }
        let parsed = spec.split_once(':').and_then(|(lo, hi)| {
            Some(WeightDist::UniformReal {
                lo: lo.parse().ok()?,
                hi: hi.parse().ok()?,
            })
        });
        parsed.ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("weight spec `{}`: expected `lo:hi` or `ranks`", spec),
        })
    }
}

#[derive(Clone, Debug)]
pub struct GenSpec {
    pub family: Family,
    pub weights: WeightDist,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let pairs = self.family.pairs(&mut rng);
        let weights: Vec<f64> = match self.weights {
            WeightDist::UniformReal { lo, hi } => {
                (0..pairs.len()).map(|_| rng.gen_range(lo..hi)).collect()
            }
            WeightDist::IntegerRanks => {
                let mut ranks: Vec<f64> = (0..pairs.len()).map(|i| i as f64).collect();
                ranks.shuffle(&mut rng);
                ranks
            }
        };
        let edges: Vec<(u32, u32, f64)> = pairs
            .into_iter()
            .zip(weights)
            .map(|((u, v), w)| (u, v, w))
            .collect();
        Graph::from_values(self.family.node_count(), &edges).expect("generated ids in range")
    }
}
