//! Windowed nerve graphs, neighbour stars and the chain metric.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::io::Write;

use serde::Serialize;

use super::{CoverError, Covering, Window};
use crate::invariants::GrowthProfile;

/// Intersection graph of a covering restricted to a window. Every vertex
/// carries a self-loop, matching the convention `i in i*`.
#[derive(Debug, Clone)]
pub struct NerveGraph<I> {
    indices: Vec<I>,
    position: HashMap<I, usize>,
    adjacency: Vec<Vec<usize>>,
    interior: Vec<bool>,
    window: Window,
    description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NerveSummary {
    pub covering: String,
    pub window: Window,
    pub vertices: usize,
    pub edges: usize,
    pub interior_vertices: usize,
    /// Largest `|i*|` over interior vertices: a lower bound for the
    /// admissibility constant of the whole covering.
    pub admissibility_lower_bound: usize,
}

pub fn build_nerve<C: Covering>(
    covering: &C,
    window: &Window,
) -> Result<NerveGraph<C::Index>, CoverError> {
    let indices = covering.window_indices(window)?;
    let position: HashMap<C::Index, usize> = indices
        .iter()
        .enumerate()
        .map(|(k, i)| (i.clone(), k))
        .collect();
    let mut adjacency = Vec::with_capacity(indices.len());
    let mut interior = Vec::with_capacity(indices.len());
    for i in &indices {
        let nbrs = covering.neighbours(i);
        let mut inside: Vec<usize> = nbrs
            .iter()
            .filter_map(|j| position.get(j).copied())
            .collect();
        interior.push(inside.len() == nbrs.len());
        inside.sort_unstable();
        inside.dedup();
        adjacency.push(inside);
    }
    Ok(NerveGraph {
        indices,
        position,
        adjacency,
        interior,
        window: window.clone(),
        description: covering.describe(),
    })
}

impl<I: Clone + Eq + std::hash::Hash + std::fmt::Display> NerveGraph<I> {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[I] {
        &self.indices
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn position(&self, i: &I) -> Option<usize> {
        self.position.get(i).copied()
    }

    /// Neighbour positions of the vertex at `pos`, self included.
    pub fn adjacent(&self, pos: usize) -> &[usize] {
        &self.adjacency[pos]
    }

    /// True when every neighbour of the vertex lies inside the window.
    pub fn is_interior(&self, pos: usize) -> bool {
        self.interior[pos]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .enumerate()
            .map(|(a, nbrs)| nbrs.iter().filter(|&&b| b >= a).count())
            .sum()
    }

    /// Largest `|i*|` over interior vertices, or over all vertices when no
    /// vertex is interior (finite coverings evaluated in full).
    pub fn admissibility_constant(&self) -> usize {
        let interior = (0..self.len())
            .filter(|&k| self.interior[k])
            .map(|k| self.adjacency[k].len())
            .max();
        interior.unwrap_or_else(|| self.adjacency.iter().map(Vec::len).max().unwrap_or(0))
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjacency.iter().enumerate().all(|(a, nbrs)| {
            nbrs.iter()
                .all(|&b| self.adjacency[b].binary_search(&a).is_ok())
        })
    }

    pub fn summary(&self) -> NerveSummary {
        NerveSummary {
            covering: self.description.clone(),
            window: self.window.clone(),
            vertices: self.len(),
            edges: self.edge_count(),
            interior_vertices: self.interior.iter().filter(|&&b| b).count(),
            admissibility_lower_bound: self.admissibility_constant(),
        }
    }

    /// BFS distances from a set of source positions; `u32::MAX` marks
    /// unreachable vertices.
    pub fn bfs_from(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn positions_of(&self, set: &[I]) -> Result<Vec<usize>, CoverError> {
        set.iter()
            .map(|i| {
                self.position(i)
                    .ok_or_else(|| CoverError::IndexOutsideWindow(i.to_string()))
            })
            .collect()
    }
}

/// The `k`-fold star `i^{k*}`: indices within nerve distance `k` of `i`.
///
/// Fails with `WindowOverflow` if the star reaches the window boundary, in
/// which case the windowed answer could miss indices.
pub fn star<I>(nerve: &NerveGraph<I>, i: &I, k: u32) -> Result<BTreeSet<I>, CoverError>
where
    I: Clone + Eq + Ord + std::hash::Hash + std::fmt::Display,
{
    let start = nerve
        .position(i)
        .ok_or_else(|| CoverError::IndexOutsideWindow(i.to_string()))?;
    let dist = nerve.bfs_from(&[start]);
    let mut out = BTreeSet::new();
    for (pos, &d) in dist.iter().enumerate() {
        if d <= k {
            if d < k && !nerve.is_interior(pos) {
                return Err(CoverError::WindowOverflow {
                    index: i.to_string(),
                    order: k,
                });
            }
            out.insert(nerve.indices[pos].clone());
        }
    }
    Ok(out)
}

/// True when the windowed nerve is connected.
pub fn is_concatenation<I>(nerve: &NerveGraph<I>) -> bool
where
    I: Clone + Eq + std::hash::Hash + std::fmt::Display,
{
    if nerve.is_empty() {
        return true;
    }
    nerve.bfs_from(&[0]).iter().all(|&d| d != u32::MAX)
}

/// Chain distances from a fixed base point to arbitrary points.
///
/// `d(x, y)` is the least number of covering sets in a chain joining `x` to
/// `y`, i.e. one more than the nerve distance between the index sets
/// containing `x` and `y`, and zero when `x = y`.
pub struct ChainDistances<'a, C: Covering> {
    covering: &'a C,
    nerve: &'a NerveGraph<C::Index>,
    base: C::Point,
    dist: Vec<u32>,
}

impl<'a, C: Covering> ChainDistances<'a, C> {
    pub fn new(
        covering: &'a C,
        nerve: &'a NerveGraph<C::Index>,
        base: &C::Point,
    ) -> Result<Self, CoverError> {
        let sources = containing_positions(covering, nerve, base)?;
        Ok(Self {
            covering,
            nerve,
            base: base.clone(),
            dist: nerve.bfs_from(&sources),
        })
    }

    pub fn to(&self, y: &C::Point) -> Result<u32, CoverError> {
        if *y == self.base {
            return Ok(0);
        }
        let targets = containing_positions(self.covering, self.nerve, y)?;
        let best = targets
            .iter()
            .map(|&t| self.dist[t])
            .min()
            .unwrap_or(u32::MAX);
        if best == u32::MAX {
            Err(CoverError::Disconnected)
        } else {
            Ok(best + 1)
        }
    }
}

fn containing_positions<C: Covering>(
    covering: &C,
    nerve: &NerveGraph<C::Index>,
    x: &C::Point,
) -> Result<Vec<usize>, CoverError> {
    let cont = covering.containing(x);
    if cont.is_empty() {
        return Err(CoverError::PointOutsideWindow(format!("{x:?}")));
    }
    cont.iter()
        .map(|i| {
            nerve
                .position(i)
                .ok_or_else(|| CoverError::PointOutsideWindow(format!("{x:?}")))
        })
        .collect()
}

/// Chain distance between two points, computed inside the window.
pub fn chain_distance<C: Covering>(
    covering: &C,
    nerve: &NerveGraph<C::Index>,
    x: &C::Point,
    y: &C::Point,
) -> Result<u32, CoverError> {
    ChainDistances::new(covering, nerve, x)?.to(y)
}

/// Minimum and maximum nerve distance between two index sets.
pub fn set_distances<I>(nerve: &NerveGraph<I>, a: &[I], b: &[I]) -> Result<(u32, u32), CoverError>
where
    I: Clone + Eq + std::hash::Hash + std::fmt::Display,
{
    let pa = nerve.positions_of(a)?;
    let pb = nerve.positions_of(b)?;
    if pa.is_empty() || pb.is_empty() {
        return Err(CoverError::InvalidSpec("empty index set".into()));
    }
    let mut lo = u32::MAX;
    let mut hi = 0;
    for &s in &pa {
        let dist = nerve.bfs_from(&[s]);
        for &t in &pb {
            if dist[t] == u32::MAX {
                return Err(CoverError::Disconnected);
            }
            lo = lo.min(dist[t]);
            hi = hi.max(dist[t]);
        }
    }
    Ok((lo, hi))
}

/// Sizes of nerve balls `|{ j : d(i, j) <= r }|` for `r = 0..=r_max`.
pub fn nerve_growth_profile<I>(
    nerve: &NerveGraph<I>,
    base: &I,
    r_max: u32,
) -> Result<GrowthProfile, CoverError>
where
    I: Clone + Eq + Ord + std::hash::Hash + std::fmt::Display,
{
    let start = nerve
        .position(base)
        .ok_or_else(|| CoverError::IndexOutsideWindow(base.to_string()))?;
    let dist = nerve.bfs_from(&[start]);
    for (pos, &d) in dist.iter().enumerate() {
        if d < r_max && !nerve.is_interior(pos) {
            return Err(CoverError::WindowOverflow {
                index: base.to_string(),
                order: r_max,
            });
        }
    }
    let mut sizes = vec![0u64; r_max as usize + 1];
    for &d in &dist {
        if d <= r_max {
            sizes[d as usize] += 1;
        }
    }
    for r in 1..sizes.len() {
        sizes[r] += sizes[r - 1];
    }
    Ok(GrowthProfile::new(
        (0..=r_max).collect(),
        sizes,
        format!("nerve of {} on {}", nerve.description, nerve.window),
    ))
}

/// Writes the undirected edge list (self-loops included) as CSV with header
/// `index_a,index_b`.
pub fn write_edge_list<I, W>(nerve: &NerveGraph<I>, out: W) -> Result<(), CoverError>
where
    I: Clone + Eq + std::hash::Hash + std::fmt::Display,
    W: Write,
{
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CoverError::Io(e.to_string());
    w.write_record(["index_a", "index_b"]).map_err(io)?;
    for (a, nbrs) in nerve.adjacency.iter().enumerate() {
        for &b in nbrs.iter().filter(|&&b| b >= a) {
            w.write_record([nerve.indices[a].to_string(), nerve.indices[b].to_string()])
                .map_err(io)?;
        }
    }
    w.flush().map_err(|e| CoverError::Io(e.to_string()))
}
