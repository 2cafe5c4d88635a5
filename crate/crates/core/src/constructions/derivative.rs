use std::collections::HashSet;

use crate::bratteli::{stationary_from_substitution, StationaryOrderedDiagram};
use crate::error::{Error, Result};
use crate::language::factor_language;
use crate::words::{is_factor, length_lex, Alphabet, Letter, Substitution, Word};

use super::components::{is_proper, minimal_components, FixedPair, Properness};

/// Word length up to which return words are searched by default.
pub const DEFAULT_SCALE: usize = 16;

/// Largest p tried when checking that the derivative is proper.
pub const PROPER_SEARCH: usize = 6;

#[derive(Debug, Clone)]
pub struct ReturnWordSystem {
    pub pairs: Vec<FixedPair>,
    /// φ: index i ↦ `words[i]`, labelled v{i+1}.
    pub words: Vec<Word>,
    /// Common period of the pairs; the derivative is taken for σ^power.
    pub power: usize,
    pub scale: usize,
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl ReturnWordSystem {
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new((1..=self.words.len()).map(|i| format!("v{i}"))).expect("labels are distinct")
    }

    fn cuts(&self) -> Vec<[Letter; 2]> {
        self.pairs.iter().map(|p| [p.r, p.l]).collect()
    }

    /// Positions q in 1..len with w[q−1]w[q] a cut.
    fn interior_cuts(&self, w: &[Letter]) -> Vec<usize> {
        let cuts = self.cuts();
        (1..w.len()).filter(|&q| cuts.iter().any(|c| c[..] == w[q - 1..=q])).collect()
    }

    /// Splits `w` at its cut positions and looks up each piece.
    pub fn decompose(&self, w: &[Letter]) -> Result<Vec<usize>> {
        let mut bounds = vec![0];
        bounds.extend(self.interior_cuts(w));
        bounds.push(w.len());
        bounds
            .windows(2)
            .map(|b| {
                let piece = &w[b[0]..b[1]];
                self.words.iter().position(|x| x[..] == *piece).ok_or_else(|| {
                    Error::DecompositionFailure(format!("piece of length {} at {} is not a return word", piece.len(), b[0]))
                })
            })
            .collect()
    }

    /// φ extended to words over the indices.
    pub fn expand(&self, idx: &[usize]) -> Word {
        idx.iter().flat_map(|&i| self.words[i].iter().copied()).collect()
    }
}

/// Return words to the cuts rᵢlᵢ of the fixed pairs, up to length `scale`.
pub fn return_words(s: &Substitution, scale: usize) -> Result<ReturnWordSystem> {
    let comps = minimal_components(s, scale.max(2));
    let pairs: Vec<FixedPair> = comps.iter().filter_map(|c| c.pair).collect();
    if pairs.is_empty() {
        return Err(Error::NoMinimalComponent(scale));
    }
    let power = pairs.iter().fold(1, |acc, p| lcm(acc, p.p));
    let lang = factor_language(s, scale + 2);
    let cuts: Vec<Word> = pairs.iter().map(|p| vec![p.r, p.l]).collect();
    let has_cut = |w: &[Letter]| cuts.iter().any(|c| is_factor(c, w));
    if lang.of_length(scale + 1).iter().any(|w| !has_cut(w)) {
        return Err(Error::ScaleTooSmall(scale));
    }

    let mut found: HashSet<Word> = HashSet::new();
    for w in lang.sorted() {
        if w.len() < 3 {
            continue;
        }
        let inner = &w[1..w.len() - 1];
        let left = pairs.iter().any(|p| p.r == w[0] && p.l == inner[0]);
        let right = pairs.iter().any(|p| p.r == inner[inner.len() - 1] && p.l == w[w.len() - 1]);
        if left && right && !has_cut(inner) {
            found.insert(inner.to_vec());
        }
    }

    let mut sys = ReturnWordSystem { pairs: pairs.clone(), words: Vec::new(), power, scale };
    let target = 32 * (scale + 2);
    let sp = s.power(power);
    for p in &pairs {
        let mut x = vec![p.l];
        for _ in 0..64 {
            if x.len() >= target {
                break;
            }
            x = sp.apply(&x);
        }
        let mut bounds = vec![0];
        bounds.extend(sys.interior_cuts(&x));
        for b in bounds.windows(2) {
            let piece = &x[b[0]..b[1]];
            if found.contains(piece) && !sys.words.iter().any(|w| w[..] == *piece) {
                sys.words.push(piece.to_vec());
            }
        }
    }
    let mut rest: Vec<Word> = found.into_iter().filter(|w| !sys.words.contains(w)).collect();
    rest.sort_by(|a, b| length_lex(a, b));
    sys.words.extend(rest);
    Ok(sys)
}

/// τ(w) is the decomposition of σ^power(φ(w)) into return words.
pub fn derivative_substitution(rs: &ReturnWordSystem, s: &Substitution) -> Result<Substitution> {
    let sp = s.power(rs.power);
    let images = rs
        .words
        .iter()
        .map(|w| Ok(rs.decompose(&sp.apply(w))?.into_iter().map(|i| Letter(i as u16)).collect()))
        .collect::<Result<Vec<Word>>>()?;
    Substitution::new(rs.alphabet(), images)
}

#[derive(Debug, Clone)]
pub struct DerivativeModel {
    pub returns: ReturnWordSystem,
    pub tau: Substitution,
    /// Witness p for properness of τ.
    pub proper: usize,
    pub diagram: StationaryOrderedDiagram,
}

pub fn diagram_via_derivative(s: &Substitution) -> Result<DerivativeModel> {
    diagram_via_derivative_at(s, DEFAULT_SCALE)
}

/// Stationary diagram of the derivative τ with |φ(w)| edges from the top
/// vertex to w.
pub fn diagram_via_derivative_at(s: &Substitution, scale: usize) -> Result<DerivativeModel> {
    let returns = return_words(s, scale)?;
    let tau = derivative_substitution(&returns, s)?;
    let proper = match is_proper(&tau, PROPER_SEARCH) {
        Properness::Proper(p) => p,
        Properness::NotProperUpTo(p) => return Err(Error::NotProper(p)),
    };
    let counts: Vec<usize> = returns.words.iter().map(Vec::len).collect();
    let diagram = stationary_from_substitution(&tau, &counts);
    Ok(DerivativeModel { returns, tau, proper, diagram })
}
