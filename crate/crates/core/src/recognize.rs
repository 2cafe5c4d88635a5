//! Desubstitution of finite windows.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::language::{factor_language, FactorLanguage};
use crate::words::{Letter, Substitution, Word};

/// A tiling of a window by images σ(a). The first tile may start before the
/// window (`offset` letters of σ(parent[0]) are cut off) and the last may
/// run past it (`tail` letters cut off).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tiling {
    pub parent: Word,
    pub offset: usize,
    pub tail: usize,
}

impl Tiling {
    /// Tile start positions in window coordinates; the first may be negative.
    pub fn starts(&self, s: &Substitution) -> Vec<isize> {
        let mut pos = -(self.offset as isize);
        let mut out = Vec::with_capacity(self.parent.len());
        for &a in &self.parent {
            out.push(pos);
            pos += s.image(a).len() as isize;
        }
        out
    }

    /// Re-concatenates the clipped images.
    pub fn reassemble(&self, s: &Substitution) -> Word {
        let full = s.apply(&self.parent);
        full[self.offset..full.len() - self.tail].to_vec()
    }
}

/// Checks membership of parents against a language, extending its cap when
/// a longer word shows up.
pub struct LanguageCache<'a> {
    s: &'a Substitution,
    lang: FactorLanguage,
}

impl<'a> LanguageCache<'a> {
    pub fn new(s: &'a Substitution, cap: usize) -> Self {
        LanguageCache { s, lang: factor_language(s, cap.max(1)) }
    }

    pub fn contains(&mut self, w: &[Letter]) -> bool {
        if w.len() > self.lang.cap() {
            self.lang = factor_language(self.s, w.len().max(2 * self.lang.cap()));
        }
        self.lang.contains(w)
    }
}

/// Every tiling of `window`, in leftmost-cut lexicographic order.
pub fn one_word_tilings(s: &Substitution, window: &[Letter], interior_only: bool) -> Vec<Tiling> {
    let mut cache = LanguageCache::new(s, window.len());
    tilings_with(s, window, interior_only, &mut cache)
}

pub(crate) fn tilings_with(
    s: &Substitution,
    window: &[Letter],
    interior_only: bool,
    cache: &mut LanguageCache,
) -> Vec<Tiling> {
    assert!(!window.is_empty(), "window must be nonempty");
    let mut raw = Vec::new();
    let n = window.len();
    for a in s.letters() {
        let img = s.image(a);
        let offsets = if interior_only { 0..1 } else { 0..img.len() };
        for o in offsets {
            let visible = &img[o..];
            if visible.len() >= n {
                if visible[..n] == *window && (!interior_only || visible.len() == n) {
                    raw.push(Tiling { parent: vec![a], offset: o, tail: visible.len() - n });
                }
            } else if window[..visible.len()] == *visible {
                let mut parent = vec![a];
                extend(s, window, visible.len(), interior_only, &mut parent, o, &mut raw);
            }
        }
    }
    let mut out: Vec<Tiling> = raw.into_iter().filter(|t| cache.contains(&t.parent)).collect();
    out.sort_by(|x, y| {
        x.starts(s).cmp(&y.starts(s)).then_with(|| x.parent.cmp(&y.parent))
    });
    out.dedup();
    out
}

fn extend(
    s: &Substitution,
    window: &[Letter],
    pos: usize,
    interior_only: bool,
    parent: &mut Word,
    offset: usize,
    out: &mut Vec<Tiling>,
) {
    let n = window.len();
    if pos == n {
        out.push(Tiling { parent: parent.clone(), offset, tail: 0 });
        return;
    }
    for b in s.letters() {
        let img = s.image(b);
        if pos + img.len() <= n {
            if window[pos..pos + img.len()] == *img {
                parent.push(b);
                extend(s, window, pos + img.len(), interior_only, parent, offset, out);
                parent.pop();
            }
        } else if !interior_only && img[..n - pos] == window[pos..] {
            let mut p = parent.clone();
            p.push(b);
            out.push(Tiling { parent: p, offset, tail: pos + img.len() - n });
        }
    }
}

/// A level-k block: the image σᵏ(label) placed at `[start, end)` in window
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub start: isize,
    pub end: isize,
    pub label: Letter,
}

/// What a parse chain says about the core of one level: the cut positions
/// inside the core, and the blocks that meet the core while lying entirely
/// inside the window. Labels of blocks running past the window are not
/// determined by the window and are left out.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChainLevel {
    /// Core `[lo, hi)` in window coordinates.
    pub core: (isize, isize),
    pub cuts: Vec<isize>,
    pub blocks: Vec<Block>,
}

impl ChainLevel {
    fn view(blocks: &[Block], core: (isize, isize), len: isize) -> Self {
        ChainLevel {
            core,
            cuts: blocks.iter().map(|b| b.start).filter(|&p| p >= core.0 && p < core.1).collect(),
            blocks: blocks
                .iter()
                .filter(|b| b.start >= 0 && b.end <= len && b.end > core.0 && b.start < core.1)
                .copied()
                .collect(),
        }
    }

    /// Labels of the full blocks, the yₖ of the chain.
    pub fn parent(&self) -> Word {
        self.blocks.iter().map(|b| b.label).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseChain {
    pub window_len: usize,
    pub levels: Vec<ChainLevel>,
}

/// Parse chains that disagree on the interior at `level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguityReport {
    pub level: usize,
    pub core: (isize, isize),
    /// Distinct interior views, in sorted order.
    pub alternatives: Vec<ChainLevel>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Unique(ParseChain),
    Ambiguous(AmbiguityReport),
}

/// Margin clipped from each end per level.
pub fn clip_margin(s: &Substitution) -> usize {
    (s.norms(1).1 as usize).saturating_sub(1)
}

/// Desubstitutes `window` through `levels` levels. All full parse chains
/// (clipped tiles allowed at both ends, parents validated at every level)
/// are enumerated and compared on the core `[k·m, len − k·m)` of each level
/// k, where m = ‖σ‖ − 1.
pub fn recognize_window(s: &Substitution, window: &[Letter], levels: usize) -> Result<Recognition> {
    Recognizer::new(s, window.len()).recognize(window, levels)
}

/// Reuses one language cache across many windows.
pub struct Recognizer<'a> {
    s: &'a Substitution,
    cache: LanguageCache<'a>,
}

impl<'a> Recognizer<'a> {
    /// `cap` is the longest window expected; longer ones grow the cache.
    pub fn new(s: &'a Substitution, cap: usize) -> Self {
        Recognizer { s, cache: LanguageCache::new(s, cap) }
    }

    pub fn tilings(&mut self, window: &[Letter], interior_only: bool) -> Vec<Tiling> {
        tilings_with(self.s, window, interior_only, &mut self.cache)
    }

    pub fn recognize(&mut self, window: &[Letter], levels: usize) -> Result<Recognition> {
        recognize_with(self.s, window, levels, &mut self.cache)
    }
}

fn recognize_with(
    s: &Substitution,
    window: &[Letter],
    levels: usize,
    cache: &mut LanguageCache,
) -> Result<Recognition> {
    assert!(levels >= 1, "at least one level");
    let len = window.len() as isize;
    let m = clip_margin(s) as isize;
    let core = |k: usize| (k as isize * m, len - k as isize * m);
    let (lo, hi) = core(levels);
    if lo >= hi {
        return Err(Error::WindowTooShort { levels });
    }
    let widths: Vec<Vec<isize>> = (0..=levels)
        .map(|k| s.lengths(k).into_iter().map(|x| x as isize).collect())
        .collect();

    // Each frontier entry: block list at the previous level (window coords).
    let unit: Vec<Block> = window
        .iter()
        .enumerate()
        .map(|(i, &a)| Block { start: i as isize, end: i as isize + 1, label: a })
        .collect();
    let mut frontier: Vec<Vec<Vec<Block>>> = vec![vec![unit]];
    for k in 1..=levels {
        let mut next: BTreeMap<Vec<Block>, Vec<Vec<Block>>> = BTreeMap::new();
        for history in frontier {
            let prev = history.last().unwrap();
            let word: Word = prev.iter().map(|b| b.label).collect();
            for t in tilings_with(s, &word, false, cache) {
                let mut start = prev[0].start
                    - s.image(t.parent[0])[..t.offset]
                        .iter()
                        .map(|b| widths[k - 1][b.index()])
                        .sum::<isize>();
                let blocks: Vec<Block> = t
                    .parent
                    .iter()
                    .map(|&a| {
                        let b = Block { start, end: start + widths[k][a.index()], label: a };
                        start = b.end;
                        b
                    })
                    .collect();
                let mut h = history.clone();
                h.push(blocks.clone());
                next.entry(blocks).or_insert(h);
            }
        }
        if next.is_empty() {
            return Err(Error::NoTiling(s.render(window)));
        }
        let (clo, chi) = core(k);
        let mut interiors: Vec<ChainLevel> =
            next.keys().map(|blocks| ChainLevel::view(blocks, (clo, chi), len)).collect();
        interiors.sort();
        interiors.dedup();
        if interiors.len() != 1 {
            return Ok(Recognition::Ambiguous(AmbiguityReport {
                level: k,
                core: (clo, chi),
                alternatives: interiors,
            }));
        }
        frontier = next.into_values().collect();
    }
    let history = &frontier[0];
    let chain_levels = (1..=levels).map(|k| ChainLevel::view(&history[k], core(k), len)).collect();
    Ok(Recognition::Unique(ParseChain { window_len: window.len(), levels: chain_levels }))
}

/// Heights |σⁿ(a)| of the Kakutani–Rokhlin towers at level n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerTable {
    pub level: usize,
    pub heights: Vec<(Letter, u64)>,
}

pub fn kr_tower_heights(s: &Substitution, n: usize) -> TowerTable {
    let present = factor_language(s, 3).letters();
    let len = s.lengths(n);
    TowerTable { level: n, heights: present.into_iter().map(|a| (a, len[a.index()])).collect() }
}
