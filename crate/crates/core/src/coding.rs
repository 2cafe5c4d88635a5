//! j-symbols, finite windows of j-sequences, and compatibility checks.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::bratteli::{min_path, path_counts, FinitePath, MaxToMin, Orbit, Ordered, OrderedDiagram, StationaryOrderedDiagram};
use crate::error::{Error, Result};
use crate::recognize::ParseChain;
use crate::words::{Letter, Substitution};

/// Anything that assigns to each symbol at level i ≥ 1 an ordered list of
/// symbols at level i − 1.
pub trait SymbolSource {
    fn symbol_label(&self, level: usize, a: usize) -> String;
    fn children(&self, level: usize, a: usize) -> Vec<usize>;
}

/// Letters at every level, σ(a) below a.
impl SymbolSource for Substitution {
    fn symbol_label(&self, _level: usize, a: usize) -> String {
        self.alphabet().label(Letter(a as u16)).to_string()
    }

    fn children(&self, _level: usize, a: usize) -> Vec<usize> {
        self.image(Letter(a as u16)).iter().map(|b| b.index()).collect()
    }
}

fn ordered_children<D: Ordered + ?Sized>(d: &D, level: usize, v: usize) -> Vec<usize> {
    d.incoming(level, v).iter().map(|&e| d.source(level, e)).collect()
}

impl SymbolSource for StationaryOrderedDiagram {
    fn symbol_label(&self, level: usize, a: usize) -> String {
        self.vertex_label(level, a).to_string()
    }

    fn children(&self, level: usize, a: usize) -> Vec<usize> {
        ordered_children(self, level, a)
    }
}

impl SymbolSource for OrderedDiagram {
    fn symbol_label(&self, level: usize, a: usize) -> String {
        self.vertex_label(level, a).to_string()
    }

    fn children(&self, level: usize, a: usize) -> Vec<usize> {
        ordered_children(self, level, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolBox {
    pub symbol: usize,
    pub label: String,
    pub width: u64,
}

/// The j-symbol [a]ⱼ. `rows[i]` lists the i-symbols it is made of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JSymbol {
    pub base: String,
    pub level: usize,
    pub rows: Vec<Vec<SymbolBox>>,
}

impl JSymbol {
    pub fn width(&self) -> u64 {
        self.rows[0].len() as u64
    }

    /// Cut positions of row i, from 0 to the width.
    pub fn cuts(&self, i: usize) -> Vec<u64> {
        let mut at = 0;
        let mut out = vec![0];
        for b in &self.rows[i] {
            at += b.width;
            out.push(at);
        }
        out
    }

    /// Plain-text box matrix, row 0 first.
    pub fn render(&self) -> String {
        let rows: Vec<Vec<(i64, i64, &str)>> = self
            .rows
            .iter()
            .map(|row| {
                let mut at = 0i64;
                row.iter()
                    .map(|b| {
                        let start = at;
                        at += b.width as i64;
                        (start, at, b.label.as_str())
                    })
                    .collect()
            })
            .collect();
        render_rows(&rows, (0, self.width() as i64))
    }
}

pub fn build_j_symbol<S: SymbolSource + ?Sized>(source: &S, base: usize, j: usize) -> JSymbol {
    let mut rows: Vec<Vec<usize>> = vec![vec![base]];
    for i in (1..=j).rev() {
        let next = rows.last().unwrap().iter().flat_map(|&a| source.children(i, a)).collect();
        rows.push(next);
    }
    rows.reverse();
    let mut boxed: Vec<Vec<SymbolBox>> = Vec::with_capacity(j + 1);
    for (i, row) in rows.iter().enumerate() {
        let widths: Vec<u64> = if i == 0 {
            vec![1; row.len()]
        } else {
            let below = &boxed[i - 1];
            let mut k = 0;
            row.iter()
                .map(|&a| {
                    let n = source.children(i, a).len();
                    let w = below[k..k + n].iter().map(|b| b.width).sum();
                    k += n;
                    w
                })
                .collect()
        };
        boxed.push(
            row.iter()
                .zip(widths)
                .map(|(&a, width)| SymbolBox { symbol: a, label: source.symbol_label(i, a), width })
                .collect(),
        );
    }
    JSymbol { base: source.symbol_label(j, base), level: j, rows: boxed }
}

/// A box of a window row in absolute coordinates. It may stick out of the
/// span on either side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindowBox {
    pub start: i64,
    pub end: i64,
    pub label: String,
}

/// Rows 0..=j of a j-sequence seen on `span = [lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JSequenceWindow {
    pub span: (i64, i64),
    pub rows: Vec<Vec<WindowBox>>,
}

impl JSequenceWindow {
    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    /// Box boundaries of row i lying in the closed span.
    pub fn cuts(&self, i: usize) -> Vec<i64> {
        let (lo, hi) = self.span;
        let set: BTreeSet<i64> = self.rows[i]
            .iter()
            .flat_map(|b| [b.start, b.end])
            .filter(|&p| p >= lo && p <= hi)
            .collect();
        set.into_iter().collect()
    }

    /// Row i clipped to the span.
    pub fn visible(&self, i: usize) -> Vec<WindowBox> {
        let (lo, hi) = self.span;
        self.rows[i]
            .iter()
            .filter(|b| b.end > lo && b.start < hi)
            .map(|b| WindowBox { start: b.start.max(lo), end: b.end.min(hi), label: b.label.clone() })
            .collect()
    }

    /// Rows 0..=i only.
    pub fn truncate(&self, i: usize) -> JSequenceWindow {
        JSequenceWindow { span: self.span, rows: self.rows[..=i].to_vec() }
    }

    /// Every cut of row i is a cut of row i − 1.
    pub fn is_agreeable(&self) -> bool {
        (1..self.rows.len()).all(|i| {
            let finer: BTreeSet<i64> = self.cuts(i - 1).into_iter().collect();
            self.cuts(i).iter().all(|c| finer.contains(c))
        })
    }

    pub fn render(&self) -> String {
        let rows: Vec<Vec<(i64, i64, &str)>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|b| (b.start, b.end, b.label.as_str())).collect())
            .collect();
        render_rows(&rows, self.span)
    }
}

/// One text line per row; `|` marks a cut, `:` a box edge outside the span.
fn render_rows(rows: &[Vec<(i64, i64, &str)>], span: (i64, i64)) -> String {
    let (lo, hi) = span;
    let cell = rows.iter().flatten().map(|b| b.2.chars().count()).max().unwrap_or(1).max(1);
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        write!(out, "{i:>2} ").unwrap();
        for &(start, end, label) in row.iter().filter(|b| b.1 > lo && b.0 < hi) {
            let (a, b) = (start.max(lo), end.min(hi));
            let room = ((b - a) as usize) * (cell + 1) - 1;
            out.push(if start < lo { ':' } else { '|' });
            let shown: String = label.chars().take(room).collect();
            write!(out, "{shown:<room$}").unwrap();
        }
        let open = row.iter().rfind(|b| b.0 < hi).is_some_and(|b| b.1 > hi);
        out.push(if open { ':' } else { '|' });
        out.push('\n');
    }
    out
}

/// Window around the centre of a recognized word. Row 0 holds the letters;
/// row k the level-k blocks of the chain. Coordinates are relative to
/// `window.len() / 2`, and the span is `[−radius, radius)`.
pub fn window_from_parse(
    s: &Substitution,
    window: &[Letter],
    chain: &ParseChain,
    radius: usize,
) -> Result<JSequenceWindow> {
    let c = (window.len() / 2) as i64;
    let r = radius as i64;
    let span = (-r, r);
    let levels = chain.levels.len();
    if c - r < 0 || c + r > window.len() as i64 {
        return Err(Error::WindowTooShort { levels });
    }
    let label = |a: Letter| s.alphabet().label(a).to_string();
    let mut rows = vec![window
        .iter()
        .enumerate()
        .map(|(i, &a)| WindowBox { start: i as i64 - c, end: i as i64 - c + 1, label: label(a) })
        .filter(|b| b.end > span.0 && b.start < span.1)
        .collect::<Vec<_>>()];
    for level in &chain.levels {
        let (lo, hi) = (level.core.0 as i64 - c, level.core.1 as i64 - c);
        if lo > span.0 || hi < span.1 {
            return Err(Error::WindowTooShort { levels });
        }
        let row: Vec<WindowBox> = level
            .blocks
            .iter()
            .map(|b| WindowBox { start: b.start as i64 - c, end: b.end as i64 - c, label: label(b.label) })
            .filter(|b| b.end > span.0 && b.start < span.1)
            .collect();
        let covered = !row.is_empty()
            && row[0].start <= span.0
            && row.last().unwrap().end >= span.1
            && row.windows(2).all(|w| w[0].end == w[1].start);
        if !covered {
            return Err(Error::WindowTooShort { levels });
        }
        rows.push(row);
    }
    Ok(JSequenceWindow { span, rows })
}

/// Window of `len` consecutive Vershik iterates starting at the orbit's
/// current point, which sits at coordinate 0. Row k holds level-k towers.
pub fn window_from_orbit<D: Ordered + ?Sized>(
    d: &D,
    orbit: &mut Orbit,
    len: usize,
    levels: usize,
) -> Result<JSequenceWindow> {
    let widths: Vec<Vec<u64>> = (0..=levels).map(|k| path_counts(d, k)).collect();
    let mut rows: Vec<BTreeSet<WindowBox>> = vec![BTreeSet::new(); levels + 1];
    for t in 0..len as i64 {
        if t > 0 {
            orbit.step()?;
        }
        orbit.deepen(levels)?;
        let path = orbit.path();
        rows[0].insert(WindowBox { start: t, end: t + 1, label: d.vertex_label(0, 0).to_string() });
        let mut offset = 0u64;
        for k in 1..=levels {
            let e = path[k - 1];
            let v = d.range(k, e);
            offset += d.incoming(k, v)
                .iter()
                .take_while(|&&x| x != e)
                .map(|&x| widths[k - 1][d.source(k, x)])
                .sum::<u64>();
            let start = t - offset as i64;
            rows[k].insert(WindowBox {
                start,
                end: start + widths[k][v] as i64,
                label: d.vertex_label(k, v).to_string(),
            });
        }
    }
    Ok(JSequenceWindow { span: (0, len as i64), rows: rows.into_iter().map(|r| r.into_iter().collect()).collect() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compatibility {
    /// Largest i such that rows 0..=i agree on the span; `None` if row 0
    /// already differs.
    pub depth: Option<usize>,
    /// Shared cut positions per level.
    pub common_cuts: Vec<Vec<i64>>,
}

pub fn depth_and_cuts(w1: &JSequenceWindow, w2: &JSequenceWindow) -> Result<Compatibility> {
    if w1.span != w2.span {
        return Err(Error::SpanMismatch);
    }
    let top = w1.depth().min(w2.depth());
    let mut depth = None;
    for i in 0..=top {
        if w1.visible(i) != w2.visible(i) {
            break;
        }
        depth = Some(i);
    }
    let common_cuts = (0..=top)
        .map(|i| {
            let b: BTreeSet<i64> = w2.cuts(i).into_iter().collect();
            w1.cuts(i).into_iter().filter(|c| b.contains(c)).collect()
        })
        .collect();
    Ok(Compatibility { depth, common_cuts })
}

/// Least m ≤ `m_max` with row[n + m] = row[n] for every n ≥ n0 inside the
/// row. Rows shorter than n0 + 2·m_max + 1 give no answer.
pub fn eventually_periodic_check<T: PartialEq>(row: &[T], n0: usize, m_max: usize) -> Option<(usize, usize)> {
    if row.len() <= n0 + 2 * m_max {
        return None;
    }
    (1..=m_max).find(|&m| (n0..row.len() - m).all(|n| row[n + m] == row[n])).map(|m| (n0, m))
}

/// f: drops the first edge, moves the rest one level down and fills levels
/// 1 and 2 with the minimal path.
pub fn shift_down(d: &StationaryOrderedDiagram, x: &[usize]) -> FinitePath {
    assert!(!x.is_empty(), "path must have an edge");
    let mut y = min_path(d, 2, d.range(1, x[0]));
    y.extend_from_slice(&x[1..]);
    y
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansivenessWitness {
    pub i: usize,
    /// Level D at which every symbol has the same rows 0..=i.
    pub level: usize,
    pub x: FinitePath,
    pub y: FinitePath,
    /// Number of f applications used to reach depth i from a 1-witness.
    pub shifted: usize,
    /// Depth observed on windows of length 2·radius.
    pub window_depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSearch {
    Witness(ExpansivenessWitness),
    NoneWithinBudget { levels_examined: usize, work: u64 },
}

/// Looks for two distinct points whose rows 0..=i agree on all of ℤ.
///
/// A window agreeing on a finite stretch proves nothing, since recurrence
/// makes distinct points agree on any finite window. The certificate used
/// instead: at some level D all D-symbols share their rows 0..=i, so the
/// rows of a point are fixed by its position inside its D-symbol; two
/// paths with a common minimal D-prefix that part at level D + 1 are then
/// i-compatible. `budget` bounds the total symbol width built. Each
/// witness is also compared on orbit windows of length 2·radius.
pub fn expansiveness_witness_search(
    d: &StationaryOrderedDiagram,
    i: usize,
    radius: usize,
    budget: u64,
) -> Result<WitnessSearch> {
    let mut work = 0;
    let direct = certificate(d, i, budget, &mut work);
    let (mut w, shifted) = match direct {
        Some(w) => (w, 0),
        None if i > 1 => match certificate(d, 1, budget, &mut work) {
            Some(mut w) => {
                for _ in 1..i {
                    w.x = shift_down(d, &w.x);
                    w.y = shift_down(d, &w.y);
                }
                w.i = i;
                (w, i - 1)
            }
            None => return Ok(WitnessSearch::NoneWithinBudget { levels_examined: i.max(1), work }),
        },
        None => return Ok(WitnessSearch::NoneWithinBudget { levels_examined: i.max(1), work }),
    };
    w.shifted = shifted;
    let len = 2 * radius;
    let a = window_from_orbit(d, &mut Orbit::stationary(d, w.x.clone(), MaxToMin::Forced), len, i)?;
    let b = window_from_orbit(d, &mut Orbit::stationary(d, w.y.clone(), MaxToMin::Forced), len, i)?;
    w.window_depth = depth_and_cuts(&a, &b)?.depth;
    Ok(WitnessSearch::Witness(w))
}

fn certificate(d: &StationaryOrderedDiagram, i: usize, budget: u64, work: &mut u64) -> Option<ExpansivenessWitness> {
    let n = d.len();
    for level in i.max(1).. {
        let widths = path_counts(d, level);
        let cost: u64 = widths.iter().fold(0u64, |acc, &w| acc.saturating_add(w.saturating_mul(level as u64 + 1)));
        if work.saturating_add(cost) > budget {
            return None;
        }
        *work += cost;
        let rows: Vec<Vec<Vec<SymbolBox>>> =
            (0..n).map(|v| build_j_symbol(d, v, level).rows[..=i].to_vec()).collect();
        if rows.iter().any(|r| *r != rows[0]) {
            continue;
        }
        for u in 0..n {
            let out: Vec<usize> = (0..n)
                .flat_map(|v| d.incoming(level + 1, v).iter().copied())
                .filter(|&e| d.source(level + 1, e) == u)
                .collect();
            if out.len() >= 2 {
                let prefix = min_path(d, level, u);
                let mut x = prefix.clone();
                x.push(out[0]);
                let mut y = prefix;
                y.push(out[1]);
                return Some(ExpansivenessWitness { i, level, x, y, shifted: 0, window_depth: None });
            }
        }
    }
    None
}
