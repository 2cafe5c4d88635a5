//! Ordered Bratteli diagrams and the Vershik map.

mod dot;
mod orbit;
mod stationary;

pub use dot::export_dot;
pub use orbit::{vershik_orbit_coding, MaxToMin, Orbit};
pub use stationary::{stationary_from_substitution, ExtremalPath, Extremals, StationaryOrderedDiagram};

use std::fmt;

use crate::error::{Error, Result};

/// Label of the top vertex.
pub const TOP_LABEL: &str = "v0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexRef {
    pub level: usize,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: VertexRef,
    pub range: VertexRef,
}

/// A finite-depth ordered Bratteli diagram. Level 0 holds the top vertex;
/// `edges[n]` joins level n−1 to level n (`edges[0]` is empty) and
/// `order[n][v]` lists the edges into vertex v of level n, smallest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedDiagram {
    pub levels: Vec<Vec<String>>,
    pub edges: Vec<Vec<Edge>>,
    pub order: Vec<Vec<Vec<usize>>>,
}

/// A path from the top: `edges[k]` is an edge index at level k+1.
pub type FinitePath = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TopNotSingle,
    ShapeMismatch,
    NoIncoming { level: usize, vertex: usize },
    NoOutgoing { level: usize, vertex: usize },
    LevelSkew { level: usize, edge: usize },
    DanglingEdge { level: usize, edge: usize },
    OrderNotTotal { level: usize, vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TopNotSingle => write!(f, "top level must hold exactly one vertex"),
            Violation::ShapeMismatch => write!(f, "edge and order tables do not match the levels"),
            Violation::NoIncoming { level, vertex } => write!(f, "no-incoming at L{level}#{vertex}"),
            Violation::NoOutgoing { level, vertex } => write!(f, "no-outgoing at L{level}#{vertex}"),
            Violation::LevelSkew { level, edge } => write!(f, "level-skew edge {edge} at level {level}"),
            Violation::DanglingEdge { level, edge } => write!(f, "dangling edge {edge} at level {level}"),
            Violation::OrderNotTotal { level, vertex } => {
                write!(f, "order at L{level}#{vertex} is not a total order of its incoming edges")
            }
        }
    }
}

/// Access to an ordered diagram level by level.
pub trait Ordered {
    /// Number of levels below the top, or `None` when unbounded.
    fn depth(&self) -> Option<usize>;
    fn vertex_count(&self, level: usize) -> usize;
    fn vertex_label(&self, level: usize, v: usize) -> &str;
    /// Incoming edges of vertex v at `level`, in increasing order.
    fn incoming(&self, level: usize, v: usize) -> &[usize];
    fn source(&self, level: usize, e: usize) -> usize;
    fn range(&self, level: usize, e: usize) -> usize;

    /// Position of edge `e` among the incoming edges of its range.
    fn rank(&self, level: usize, e: usize) -> usize {
        let inc = self.incoming(level, self.range(level, e));
        inc.iter().position(|&x| x == e).expect("edge missing from its range order")
    }

    fn is_maximal_edge(&self, level: usize, e: usize) -> bool {
        *self.incoming(level, self.range(level, e)).last().unwrap() == e
    }

    fn is_minimal_edge(&self, level: usize, e: usize) -> bool {
        self.incoming(level, self.range(level, e))[0] == e
    }
}

impl Ordered for OrderedDiagram {
    fn depth(&self) -> Option<usize> {
        Some(self.levels.len() - 1)
    }

    fn vertex_count(&self, level: usize) -> usize {
        self.levels[level].len()
    }

    fn vertex_label(&self, level: usize, v: usize) -> &str {
        &self.levels[level][v]
    }

    fn incoming(&self, level: usize, v: usize) -> &[usize] {
        &self.order[level][v]
    }

    fn source(&self, level: usize, e: usize) -> usize {
        self.edges[level][e].source.index
    }

    fn range(&self, level: usize, e: usize) -> usize {
        self.edges[level][e].range.index
    }
}

impl OrderedDiagram {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Checks the Bratteli conditions and that each order is a total order
    /// on exactly the incoming edges of its vertex.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if self.levels.first().map(Vec::len) != Some(1) {
            out.push(Violation::TopNotSingle);
        }
        let depth = self.levels.len();
        if self.edges.len() != depth || self.order.len() != depth {
            out.push(Violation::ShapeMismatch);
            return Err(out);
        }
        for n in 1..depth {
            if self.order[n].len() != self.levels[n].len() {
                out.push(Violation::ShapeMismatch);
                continue;
            }
            let mut incoming = vec![Vec::new(); self.levels[n].len()];
            for (i, e) in self.edges[n].iter().enumerate() {
                if e.source.level + 1 != n || e.range.level != n {
                    out.push(Violation::LevelSkew { level: n, edge: i });
                    continue;
                }
                if e.source.index >= self.levels[n - 1].len() || e.range.index >= self.levels[n].len() {
                    out.push(Violation::DanglingEdge { level: n, edge: i });
                    continue;
                }
                incoming[e.range.index].push(i);
            }
            for (v, inc) in incoming.iter().enumerate() {
                if inc.is_empty() {
                    out.push(Violation::NoIncoming { level: n, vertex: v });
                }
                let mut ord = self.order[n][v].clone();
                ord.sort_unstable();
                if ord != *inc {
                    out.push(Violation::OrderNotTotal { level: n, vertex: v });
                }
            }
            for v in 0..self.levels[n - 1].len() {
                let has_out = self.edges[n]
                    .iter()
                    .any(|e| e.source.level + 1 == n && e.source.index == v);
                if !has_out {
                    out.push(Violation::NoOutgoing { level: n - 1, vertex: v });
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Composes the edges between picked levels. Composite edges into a
    /// vertex are ordered lexicographically, the deepest edge being the most
    /// significant.
    pub fn telescope(&self, picks: &[usize]) -> Result<OrderedDiagram> {
        if picks.is_empty() {
            return Err(Error::InvalidArgument("empty pick list".into()));
        }
        if picks[0] == 0 || picks.windows(2).any(|w| w[0] >= w[1]) || *picks.last().unwrap() > self.depth() {
            return Err(Error::InvalidArgument("picks must increase strictly within 1..=depth".into()));
        }
        let mut levels = vec![self.levels[0].clone()];
        let mut edges = vec![Vec::new()];
        let mut order = vec![Vec::new()];
        let mut prev = 0;
        for (i, &p) in picks.iter().enumerate() {
            let new_level = i + 1;
            let mut lvl_edges = Vec::new();
            let mut lvl_order = Vec::new();
            for v in 0..self.levels[p].len() {
                let mut ord = Vec::new();
                for path in segment_paths(self, prev, p, v) {
                    let src = if prev == 0 { 0 } else { self.source(prev + 1, path[0]) };
                    ord.push(lvl_edges.len());
                    lvl_edges.push(Edge {
                        source: VertexRef { level: new_level - 1, index: src },
                        range: VertexRef { level: new_level, index: v },
                    });
                }
                lvl_order.push(ord);
            }
            levels.push(self.levels[p].clone());
            edges.push(lvl_edges);
            order.push(lvl_order);
            prev = p;
        }
        Ok(OrderedDiagram { levels, edges, order })
    }
}

/// Paths from level `from` to vertex v at level `to`, as edge lists for
/// levels from+1..=to, in lexicographic order.
pub fn segment_paths<D: Ordered + ?Sized>(d: &D, from: usize, to: usize, v: usize) -> Vec<FinitePath> {
    if to == from {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for &e in d.incoming(to, v) {
        let src = d.source(to, e);
        for mut p in segment_paths(d, from, to - 1, src) {
            p.push(e);
            out.push(p);
        }
    }
    out
}

/// All paths from the top to vertex v at `level`, in lexicographic order.
pub fn enumerate_paths<D: Ordered + ?Sized>(d: &D, level: usize, v: usize) -> Vec<FinitePath> {
    assert!(level >= 1, "level must be at least 1");
    segment_paths(d, 0, level, v)
}

/// Number of paths from the top to each vertex at `level`.
pub fn path_counts<D: Ordered + ?Sized>(d: &D, level: usize) -> Vec<u64> {
    let mut counts = vec![1u64];
    for n in 1..=level {
        counts = (0..d.vertex_count(n))
            .map(|v| d.incoming(n, v).iter().map(|&e| counts[d.source(n, e)]).sum())
            .collect();
    }
    counts
}

/// The minimal path from the top to vertex v at `level`.
pub fn min_path<D: Ordered + ?Sized>(d: &D, level: usize, v: usize) -> FinitePath {
    let mut path = vec![0; level];
    let mut cur = v;
    for n in (1..=level).rev() {
        let e = d.incoming(n, cur)[0];
        path[n - 1] = e;
        cur = d.source(n, e);
    }
    path
}

/// The maximal path from the top to vertex v at `level`.
pub fn max_path<D: Ordered + ?Sized>(d: &D, level: usize, v: usize) -> FinitePath {
    let mut path = vec![0; level];
    let mut cur = v;
    for n in (1..=level).rev() {
        let e = *d.incoming(n, cur).last().unwrap();
        path[n - 1] = e;
        cur = d.source(n, e);
    }
    path
}

/// Vertex index at the end of the path (at level `path.len()`).
pub fn terminal<D: Ordered + ?Sized>(d: &D, path: &[usize]) -> usize {
    let n = path.len();
    assert!(n >= 1, "empty path");
    d.range(n, path[n - 1])
}

/// Vertex at `level` visited by the path.
pub fn vertex_at<D: Ordered + ?Sized>(d: &D, path: &[usize], level: usize) -> usize {
    if level == 0 {
        0
    } else {
        d.range(level, path[level - 1])
    }
}

/// True if consecutive edges meet.
pub fn is_valid_path<D: Ordered + ?Sized>(d: &D, path: &[usize]) -> bool {
    (1..path.len()).all(|k| d.range(k, path[k - 1]) == d.source(k + 1, path[k]))
}

/// Vershik successor of a finite path, or `None` if every edge is maximal.
pub fn vershik_successor<D: Ordered + ?Sized>(d: &D, path: &[usize]) -> Option<FinitePath> {
    let k = (0..path.len()).find(|&k| !d.is_maximal_edge(k + 1, path[k]))?;
    let level = k + 1;
    let inc = d.incoming(level, d.range(level, path[k]));
    let next = inc[inc.iter().position(|&e| e == path[k]).unwrap() + 1];
    let mut out = if level == 1 { Vec::new() } else { min_path(d, level - 1, d.source(level, next)) };
    out.push(next);
    out.extend_from_slice(&path[level..]);
    Some(out)
}

/// d(x, y) = 1/min{k : xₖ ≠ yₖ}, 0 when the paths agree on their common
/// length.
pub fn path_distance(x: &[usize], y: &[usize]) -> f64 {
    match x.iter().zip(y).position(|(a, b)| a != b) {
        Some(i) => 1.0 / (i + 1) as f64,
        None => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Substitution;

    pub(crate) fn odometer(depth: usize) -> OrderedDiagram {
        let s: Substitution = "a -> aa".parse().unwrap();
        stationary_from_substitution(&s, &[2]).unroll(depth)
    }

    #[test]
    fn odometer_paths_count_in_binary() {
        let d = odometer(3);
        assert!(d.validate().is_ok());
        let paths = enumerate_paths(&d, 3, 0);
        assert_eq!(paths.len(), 8);
        let ranks: Vec<Vec<usize>> =
            paths.iter().map(|p| p.iter().enumerate().map(|(k, &e)| d.rank(k + 1, e)).collect()).collect();
        for (i, r) in ranks.iter().enumerate() {
            let value: usize = r.iter().enumerate().map(|(k, &b)| b << k).sum();
            assert_eq!(value, i);
        }
    }

    #[test]
    fn odometer_successor() {
        let d = odometer(3);
        let path = |bits: [usize; 3]| -> FinitePath {
            (0..3).map(|k| d.incoming(k + 1, 0)[bits[k]]).collect()
        };
        assert_eq!(vershik_successor(&d, &path([1, 0, 0])), Some(path([0, 1, 0])));
        assert_eq!(vershik_successor(&d, &path([1, 1, 1])), None);
    }

    #[test]
    fn violations() {
        let mut d = odometer(2);
        d.edges[2][0].source = VertexRef { level: 0, index: 0 };
        assert!(d.validate().unwrap_err().contains(&Violation::LevelSkew { level: 2, edge: 0 }));

        let mut d = odometer(2);
        d.levels[2].push("b".into());
        d.order[2].push(Vec::new());
        let v = d.validate().unwrap_err();
        assert!(v.contains(&Violation::NoIncoming { level: 2, vertex: 1 }));

        let mut d = odometer(2);
        d.order[1][0] = vec![0, 0];
        assert!(d.validate().unwrap_err().contains(&Violation::OrderNotTotal { level: 1, vertex: 0 }));
    }

    #[test]
    fn telescope_odometer_by_pairs() {
        let d = odometer(4);
        let t = d.telescope(&[2, 4]).unwrap();
        assert!(t.validate().is_ok());
        assert_eq!(t.levels.len(), 3);
        assert_eq!(t.edges[1].len(), 4);
        assert_eq!(t.edges[2].len(), 4);
        assert_eq!(d.telescope(&[1, 2, 3, 4]).unwrap(), d);
        assert!(d.telescope(&[]).is_err());
    }

    #[test]
    fn distance() {
        assert_eq!(path_distance(&[0, 1, 2], &[0, 1, 3]), 1.0 / 3.0);
        assert_eq!(path_distance(&[0, 1], &[0, 1]), 0.0);
    }
}
