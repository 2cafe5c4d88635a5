//! Bounded factor languages and the predicates built on them.

use std::collections::{HashMap, HashSet};

use crate::words::{is_factor, length_lex, Letter, Substitution, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureStatus {
    /// The iterates reached a fixed set.
    Converged,
    /// The iterates entered a cycle of the given length (≥ 2).
    CycleSummed(usize),
}

/// L(σ) ∩ A^{≤cap}.
#[derive(Debug, Clone)]
pub struct FactorLanguage {
    cap: usize,
    factors: HashSet<Word>,
    status: ClosureStatus,
}

impl FactorLanguage {
    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn status(&self) -> ClosureStatus {
        self.status
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Membership. Panics if `w` is longer than the cap, since the answer
    /// would not be known.
    pub fn contains(&self, w: &[Letter]) -> bool {
        assert!(w.len() <= self.cap, "word longer than language cap");
        self.factors.contains(w)
    }

    /// All members in length-then-lexicographic order.
    pub fn sorted(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.factors.iter().cloned().collect();
        v.sort_by(|a, b| length_lex(a, b));
        v
    }

    /// Members of exactly length `n`, sorted lexicographically.
    pub fn of_length(&self, n: usize) -> Vec<Word> {
        let mut v: Vec<Word> = self.factors.iter().filter(|w| w.len() == n).cloned().collect();
        v.sort();
        v
    }

    /// Letters occurring in the language.
    pub fn letters(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> =
            self.factors.iter().filter(|w| w.len() == 1).map(|w| w[0]).collect();
        v.sort();
        v
    }

    /// Keeps only members of length ≤ `cap`.
    pub fn restrict(&self, cap: usize) -> FactorLanguage {
        FactorLanguage {
            cap: cap.min(self.cap),
            factors: self.factors.iter().filter(|w| w.len() <= cap).cloned().collect(),
            status: self.status,
        }
    }

    pub fn is_subset(&self, other: &FactorLanguage) -> bool {
        self.factors.iter().all(|w| w.len() > other.cap || other.factors.contains(w))
    }
}

/// Reduces a candidate list to its maximal elements under the factor order,
/// sorted, so that equal factor-closed sets get equal representations.
fn maximal(mut words: Vec<Word>, cap: usize) -> Vec<Word> {
    words.sort_by(|a, b| length_lex(b, a));
    words.dedup();
    let mut keep: Vec<Word> = Vec::new();
    for w in words {
        if w.len() == cap || !keep.iter().any(|k| is_factor(&w, k)) {
            keep.push(w);
        }
    }
    keep.sort();
    keep
}

fn windows_of(v: &[Letter], cap: usize, out: &mut Vec<Word>) {
    if v.len() <= cap {
        out.push(v.to_vec());
    } else {
        out.extend(v.windows(cap).map(<[Letter]>::to_vec));
    }
}

/// Factors of length ≤ `cap` of σⁿ(w), n ≥ 1, for the given start words.
pub fn language_from(s: &Substitution, starts: &[Word], cap: usize) -> FactorLanguage {
    assert!(cap >= 1, "cap must be positive");
    let mut first = Vec::new();
    for w in starts {
        windows_of(&s.apply(w), cap, &mut first);
    }
    let mut state = maximal(first, cap);
    let mut seen: HashMap<Vec<Word>, usize> = HashMap::new();
    let mut history: Vec<Vec<Word>> = Vec::new();
    let status = loop {
        if let Some(&at) = seen.get(&state) {
            let period = history.len() - at;
            break if period == 1 { ClosureStatus::Converged } else { ClosureStatus::CycleSummed(period) };
        }
        seen.insert(state.clone(), history.len());
        history.push(state.clone());
        let mut next = Vec::new();
        for u in &state {
            windows_of(&s.apply(u), cap, &mut next);
        }
        state = maximal(next, cap);
    };
    let mut factors = HashSet::new();
    for m in history.iter().flatten() {
        for i in 0..m.len() {
            for j in i + 1..=m.len() {
                if !factors.contains(&m[i..j]) {
                    factors.insert(m[i..j].to_vec());
                }
            }
        }
    }
    FactorLanguage { cap, factors, status }
}

/// L(σ) ∩ A^{≤cap}.
pub fn factor_language(s: &Substitution, cap: usize) -> FactorLanguage {
    let starts: Vec<Word> = s.letters().map(|a| vec![a]).collect();
    language_from(s, &starts, cap)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShortBlockBound {
    Bound(usize),
    Unbounded(usize),
}

/// Least M such that every factor of length M contains a long letter.
pub fn short_block_bound(s: &Substitution, cap: usize) -> ShortBlockBound {
    assert!(cap >= 2, "cap must be at least 2");
    let class = s.classify_letters();
    if class.short.is_empty() {
        return ShortBlockBound::Bound(1);
    }
    let lang = factor_language(s, cap);
    let longest = lang
        .factors
        .iter()
        .filter(|w| w.iter().all(|&a| class.is_short(a)))
        .map(Vec::len)
        .max()
        .unwrap_or(0);
    if longest < cap {
        ShortBlockBound::Bound(longest + 1)
    } else {
        ShortBlockBound::Unbounded(cap)
    }
}

/// Searches for u with |u| ≤ `max_len` and u^`max_pow` in the language,
/// in length-lex order of u.
pub fn periodicity_witness_search(s: &Substitution, max_len: usize, max_pow: usize) -> Option<Word> {
    assert!(max_len >= 1 && max_pow >= 1, "bounds must be positive");
    let lang = factor_language(s, max_len * max_pow);
    for n in 1..=max_len {
        for u in lang.of_length(n) {
            let power: Word = u.iter().copied().cycle().take(n * max_pow).collect();
            if lang.contains(&power) {
                return Some(u);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chacon() -> Substitution {
        "0 -> 00s0\ns -> s\n1 -> 0110".parse().unwrap()
    }

    fn brute(s: &Substitution, cap: usize, depth: usize) -> HashSet<Word> {
        let mut out = HashSet::new();
        for a in s.letters() {
            for n in 1..=depth {
                let w = s.expand(&[a], n);
                for i in 0..w.len() {
                    for j in i + 1..=(i + cap).min(w.len()) {
                        out.insert(w[i..j].to_vec());
                    }
                }
            }
        }
        out
    }

    #[test]
    fn chacon_cap_two() {
        let s = chacon();
        let lang = factor_language(&s, 2);
        let words: Vec<String> = lang.sorted().iter().map(|w| s.render(w)).collect();
        assert_eq!(words, ["0", "s", "1", "00", "0s", "01", "s0", "10", "11"]);
        assert_eq!(lang.factors, brute(&s, 2, 6));
    }

    #[test]
    fn chacon_matches_expansions() {
        let s = chacon();
        let lang = factor_language(&s, 7);
        assert_eq!(lang.factors, brute(&s, 7, 6));
        assert!(lang.contains(&s.word("0s0s0").unwrap()));
    }

    #[test]
    fn identity_language() {
        let s: Substitution = "a -> a".parse().unwrap();
        let lang = factor_language(&s, 3);
        assert_eq!(lang.sorted(), vec![vec![Letter(0)]]);
        assert_eq!(lang.status(), ClosureStatus::Converged);
    }

    #[test]
    fn cycling_language() {
        // σ swaps a and b; images alternate.
        let s = Substitution::from_rules(&[("a", "b"), ("b", "a"), ("c", "ca")]).unwrap();
        let lang = factor_language(&s, 3);
        assert_eq!(lang.factors, brute(&s, 3, 8));
    }

    #[test]
    fn short_blocks() {
        assert_eq!(short_block_bound(&chacon(), 16), ShortBlockBound::Bound(2));
        let tm = Substitution::from_rules(&[("a", "ab"), ("b", "ba")]).unwrap();
        assert_eq!(short_block_bound(&tm, 8), ShortBlockBound::Bound(1));
        let grow = Substitution::from_rules(&[("a", "as"), ("s", "s")]).unwrap();
        assert_eq!(short_block_bound(&grow, 8), ShortBlockBound::Unbounded(8));
        // With σ(s)=ss the letter s pumps, so it is long and no short block exists.
        let pump = Substitution::from_rules(&[("a", "as"), ("s", "ss")]).unwrap();
        assert_eq!(short_block_bound(&pump, 8), ShortBlockBound::Bound(1));
    }

    #[test]
    fn periodicity() {
        let s = Substitution::from_rules(&[("a", "aa")]).unwrap();
        assert_eq!(periodicity_witness_search(&s, 4, 4), Some(vec![Letter(0)]));
        let ab = Substitution::from_rules(&[("a", "ab"), ("b", "ab")]).unwrap();
        assert_eq!(periodicity_witness_search(&ab, 4, 4), Some(ab.word("ab").unwrap()));
        assert_eq!(periodicity_witness_search(&chacon(), 8, 4), None);
    }
}
