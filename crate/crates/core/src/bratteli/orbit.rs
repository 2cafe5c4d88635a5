use crate::error::{Error, Result};
use crate::words::Letter;

use super::{min_path, vershik_successor, vertex_at, FinitePath, Ordered, OrderedDiagram, StationaryOrderedDiagram};

/// How maximal infinite paths of a stationary diagram are sent to minimal
/// ones. Pairs are (level-1 label of the maximal path, level-1 label of the
/// minimal path).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum MaxToMin {
    /// Only valid when there is exactly one maximal and one minimal path.
    #[default]
    Forced,
    Table(Vec<(Letter, Letter)>),
}

enum Source<'a> {
    Finite(&'a OrderedDiagram),
    Stationary { d: &'a StationaryOrderedDiagram, extension: Vec<Option<usize>>, wrap: MaxToMin },
}

/// A point moving under the Vershik map, held as a finite truncation.
///
/// For stationary diagrams the truncation is extended on demand: from a
/// terminal vertex a, the next edge is the least-ranked edge leaving a,
/// preferring ranges on the cycles of m_min, then alphabet order. A path
/// started on the minimal path therefore continues along the m_min chain.
pub struct Orbit<'a> {
    source: Source<'a>,
    path: FinitePath,
}

impl<'a> Orbit<'a> {
    /// Orbit in a finite diagram; reaching the maximal path is an error.
    pub fn finite(d: &'a OrderedDiagram, start: FinitePath) -> Self {
        Orbit { source: Source::Finite(d), path: start }
    }

    pub fn stationary(d: &'a StationaryOrderedDiagram, start: FinitePath, wrap: MaxToMin) -> Self {
        assert!(!start.is_empty(), "start path must have at least one edge");
        let min_map = d.min_map();
        let n = d.len();
        let extension = (0..n)
            .map(|a| {
                let mut best: Option<((usize, bool, usize), usize)> = None;
                for b in 0..n {
                    for (rank, &e) in d.incoming(2, b).iter().enumerate() {
                        if d.source(2, e) != a {
                            continue;
                        }
                        let cyclic = StationaryOrderedDiagram::cyclic(&min_map, Letter(b as u16));
                        let key = (rank, !cyclic, b);
                        if best.is_none_or(|(k, _)| key < k) {
                            best = Some((key, e));
                        }
                    }
                }
                best.map(|(_, e)| e)
            })
            .collect();
        Orbit { source: Source::Stationary { d, extension, wrap }, path: start }
    }

    fn ordered(&self) -> &dyn Ordered {
        match &self.source {
            Source::Finite(d) => *d,
            Source::Stationary { d, .. } => *d,
        }
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    /// Extends the truncation to at least `depth` edges.
    pub fn deepen(&mut self, depth: usize) -> Result<()> {
        while self.path.len() < depth {
            let e = match &self.source {
                Source::Finite(_) => {
                    return Err(Error::InvalidArgument("level below a finite diagram".into()))
                }
                Source::Stationary { d, extension, .. } => {
                    extension[super::terminal(*d, &self.path)].ok_or_else(|| {
                        Error::ImproperOrdering("terminal vertex has no outgoing edge".into())
                    })?
                }
            };
            self.path.push(e);
        }
        Ok(())
    }

    /// Vertex index at `level` on the current path.
    pub fn vertex(&mut self, level: usize) -> Result<usize> {
        self.deepen(level)?;
        Ok(vertex_at(self.ordered(), &self.path, level))
    }

    /// Rank of the first edge among the edges into its level-1 vertex.
    pub fn top_rank(&self) -> usize {
        self.ordered().rank(1, self.path[0])
    }

    /// Applies the Vershik map once.
    pub fn step(&mut self) -> Result<()> {
        if let Some(next) = vershik_successor(self.ordered(), &self.path) {
            self.path = next;
            return Ok(());
        }
        let (d, extension, wrap) = match &self.source {
            Source::Finite(_) => {
                return Err(Error::ImproperOrdering(
                    "maximal path at full depth of a finite diagram".into(),
                ))
            }
            Source::Stationary { d, extension, wrap } => (*d, extension, wrap),
        };
        // The extension depends only on the terminal label, so it is
        // periodic after at most |A| steps; 2|A|+2 steps settle whether it
        // is maximal forever.
        let mut cur = super::terminal(d, &self.path);
        let mut extra = Vec::new();
        for _ in 0..2 * d.len() + 2 {
            let e = extension[cur]
                .ok_or_else(|| Error::ImproperOrdering("terminal vertex has no outgoing edge".into()))?;
            extra.push(e);
            if !d.is_maximal_edge(2, e) {
                self.path.extend(extra);
                self.path = vershik_successor(d, &self.path).expect("non-maximal edge present");
                return Ok(());
            }
            cur = d.range(2, e);
        }
        let ext = d.extremal_paths();
        let from = Letter(vertex_at(d, &self.path, 1) as u16);
        let to = match wrap {
            MaxToMin::Forced if ext.maximal.len() == 1 && ext.minimal.len() == 1 => ext.minimal[0].period[0],
            MaxToMin::Forced => {
                return Err(Error::ImproperOrdering(format!(
                    "{} maximal and {} minimal paths; an explicit assignment is required",
                    ext.maximal.len(),
                    ext.minimal.len()
                )))
            }
            MaxToMin::Table(t) => t.iter().find(|(m, _)| *m == from).map(|p| p.1).ok_or_else(|| {
                Error::ImproperOrdering(format!("no assignment for maximal path through `{}`", d.alphabet().label(from)))
            })?,
        };
        let target = ext
            .minimal
            .iter()
            .find(|p| p.period[0] == to)
            .ok_or_else(|| Error::ImproperOrdering(format!("`{}` starts no minimal path", d.alphabet().label(to))))?;
        let depth = self.path.len();
        self.path = min_path(d, depth, target.label(depth).index());
        Ok(())
    }

    /// Level-`level` labels at the current point and the next `steps − 1`
    /// iterates.
    pub fn coding(&mut self, steps: usize, level: usize) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(steps);
        for i in 0..steps {
            if i > 0 {
                self.step()?;
            }
            out.push(self.vertex(level)?);
        }
        Ok(out)
    }
}

/// Level-`level` vertex indices along the orbit of `start` in a finite
/// diagram.
pub fn vershik_orbit_coding(d: &OrderedDiagram, start: FinitePath, steps: usize, level: usize) -> Result<Vec<usize>> {
    Orbit::finite(d, start).coding(steps, level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bratteli::{max_path, stationary_from_substitution};
    use crate::words::Substitution;

    #[test]
    fn odometer_coding_is_constant() {
        let s: Substitution = "a -> aa".parse().unwrap();
        let d = stationary_from_substitution(&s, &[2]);
        let mut o = Orbit::stationary(&d, min_path(&d, 1, 0), MaxToMin::Forced);
        assert_eq!(o.coding(8, 1).unwrap(), vec![0; 8]);
        assert!(o.path().len() >= 3);
    }

    #[test]
    fn odometer_wraps_from_maximal() {
        let s: Substitution = "a -> aa".parse().unwrap();
        let d = stationary_from_substitution(&s, &[2]);
        let mut o = Orbit::stationary(&d, max_path(&d, 3, 0), MaxToMin::Forced);
        // Extension edges are minimal, so the point is not maximal.
        o.step().unwrap();
        assert_eq!(o.path().len(), 4);
    }

    #[test]
    fn finite_diagram_runs_out() {
        let s: Substitution = "a -> aa".parse().unwrap();
        let d = stationary_from_substitution(&s, &[2]).unroll(2);
        let mut o = Orbit::finite(&d, min_path(&d, 2, 0));
        assert_eq!(o.coding(4, 1).unwrap().len(), 4);
        assert!(matches!(o.step(), Err(Error::ImproperOrdering(_))));
    }

    #[test]
    fn thue_morse_needs_an_assignment() {
        let s = Substitution::from_rules(&[("a", "ab"), ("b", "ba")]).unwrap();
        let d = stationary_from_substitution(&s, &[1, 1]);
        // A single-edge read rule makes the maximal extension forced.
        let t = Substitution::from_rules(&[("a", "b"), ("b", "a")]).unwrap();
        let dt = stationary_from_substitution(&t, &[1, 1]);
        let mut o = Orbit::stationary(&dt, max_path(&dt, 1, 0), MaxToMin::Forced);
        assert!(matches!(o.step(), Err(Error::ImproperOrdering(_))));
        let mut o = Orbit::stationary(&d, min_path(&d, 1, 0), MaxToMin::Forced);
        assert!(o.coding(16, 1).is_ok());
    }
}
