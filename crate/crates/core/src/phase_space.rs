//! Explicit points of X_σ: limits of σⁿ(aₙ).σⁿ(bₙ) and of nested σⁿ(aₙ)
//! placed by the cut positions jₙ.

use crate::constructions::period_bound;
use crate::error::{Error, Result};
use crate::language::factor_language;
use crate::recognize::{LanguageCache, tilings_with};
use crate::words::{DottedWord, Letter, Substitution, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LambdaSeed {
    pub a: Letter,
    pub b: Letter,
    /// Least p with σᵖ(a) ending in a and σᵖ(b) starting with b.
    pub p: usize,
}

/// All seeds (a, b) with ab in the language. Requires every letter to grow.
pub fn lambda_seeds(s: &Substitution) -> Result<Vec<LambdaSeed>> {
    let class = s.classify_letters();
    if !class.short.is_empty() {
        let names: Vec<&str> = class.short.iter().map(|&a| s.alphabet().label(a)).collect();
        return Err(Error::ShortLettersPresent(names.join(",")));
    }
    let first = s.first_letter_map();
    let last = s.last_letter_map();
    let bound = period_bound(s);
    let mut out = Vec::new();
    for w in factor_language(s, 2).of_length(2) {
        let (a, b) = (w[0], w[1]);
        let (mut x, mut y) = (a, b);
        for p in 1..=bound {
            x = last[x.index()];
            y = first[y.index()];
            if x == a && y == b {
                out.push(LambdaSeed { a, b, p });
                break;
            }
        }
    }
    Ok(out)
}

/// The central window `r` letters either side of the dot of the limit of
/// σᵖⁿ(a).σᵖⁿ(b).
pub fn lambda_window(s: &Substitution, seed: LambdaSeed, radius: usize) -> DottedWord {
    let sp = s.power(seed.p);
    let (mut left, mut right) = (vec![seed.a], vec![seed.b]);
    while left.len() < radius || right.len() < radius {
        left = sp.apply(&left);
        right = sp.apply(&right);
    }
    let mut letters = left[left.len() - radius..].to_vec();
    letters.extend_from_slice(&right[..radius]);
    DottedWord::new(letters, radius)
}

/// (a₀, i₀), …, (aₙ, iₙ) with i₀ = 0 and σ(aₖ) carrying aₖ₋₁ at iₖ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPrefix {
    pub entries: Vec<(Letter, usize)>,
}

impl ChainPrefix {
    pub fn new(s: &Substitution, entries: Vec<(Letter, usize)>) -> Result<Self> {
        match entries.first() {
            None => return Err(Error::InvalidArgument("empty chain".into())),
            Some(&(_, i)) if i != 0 => return Err(Error::InvalidArgument("i₀ must be 0".into())),
            _ => {}
        }
        for k in 1..entries.len() {
            let (a, i) = entries[k];
            if s.image(a).get(i) != Some(&entries[k - 1].0) {
                return Err(Error::InvalidArgument(format!(
                    "σ({}) has no {} at {i}",
                    s.alphabet().label(a),
                    s.alphabet().label(entries[k - 1].0)
                )));
            }
        }
        Ok(ChainPrefix { entries })
    }

    pub fn depth(&self) -> usize {
        self.entries.len() - 1
    }

    /// j₀, …, jₙ: j₀ = 0 and jₙ₊₁ = jₙ plus the lengths of the level-n
    /// blocks before position iₙ₊₁ of σ(aₙ₊₁).
    pub fn cut_positions(&self, s: &Substitution) -> Vec<u64> {
        let mut j = vec![0u64];
        for n in 0..self.depth() {
            let (a, i) = self.entries[n + 1];
            let lens = s.lengths(n);
            let add: u64 = s.image(a)[..i].iter().map(|b| lens[b.index()]).sum();
            j.push(j[n] + add);
        }
        j
    }
}

/// σⁿ(aₙ) cut `radius` letters either side of position jₙ.
pub fn m0_window(s: &Substitution, chain: &ChainPrefix, radius: usize) -> Result<DottedWord> {
    let n = chain.depth();
    let j = *chain.cut_positions(s).last().unwrap() as usize;
    let x = s.expand(&[chain.entries[n].0], n);
    if j < radius || x.len() - j < radius {
        return Err(Error::InsufficientGrowth { depth: n, radius });
    }
    Ok(DottedWord::new(x[j - radius..j + radius].to_vec(), radius))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Consistent,
    /// No parse chain keeps the dot on a cut beyond this level.
    Refuted(usize),
}

/// Necessary condition for lying in σⁿ(X_σ): some n-level parse chain puts
/// the dot on a tile boundary at every level.
pub fn core_membership(s: &Substitution, window: &DottedWord, n: usize) -> Membership {
    let mut cache = LanguageCache::new(s, window.letters.len().max(2));
    let mut deepest = 0;
    if search(s, &window.letters, window.dot, n, 0, &mut cache, &mut deepest) {
        Membership::Consistent
    } else {
        Membership::Refuted(deepest + 1)
    }
}

fn search(
    s: &Substitution,
    w: &[Letter],
    dot: usize,
    n: usize,
    level: usize,
    cache: &mut LanguageCache,
    deepest: &mut usize,
) -> bool {
    if level == n {
        return true;
    }
    if w.is_empty() {
        return false;
    }
    for t in tilings_with(s, w, false, cache) {
        let starts = t.starts(s);
        let end = w.len() as isize + t.tail as isize;
        let parent_dot = if dot as isize == end {
            Some(t.parent.len())
        } else {
            starts.iter().position(|&p| p == dot as isize)
        };
        if let Some(d) = parent_dot {
            *deepest = (*deepest).max(level + 1);
            let parent: Word = t.parent.clone();
            if search(s, &parent, d, n, level + 1, cache, deepest) {
                return true;
            }
        }
    }
    false
}
