use std::fmt;

use crate::language::{factor_language, language_from, FactorLanguage};
use crate::words::{Alphabet, Letter, Substitution};

/// A pair (r, l) of long letters with σᵖ(r) ending in r, σᵖ(l) starting with
/// l, and rl in the component language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedPair {
    pub r: Letter,
    pub l: Letter,
    pub p: usize,
}

#[derive(Debug, Clone)]
pub struct Component {
    /// Letters a with σᵖ(a) starting with a whose languages coincide.
    pub seeds: Vec<Letter>,
    pub letters: Vec<Letter>,
    pub pair: Option<FixedPair>,
    pub language: FactorLanguage,
}

/// Search bound for periods of the first- and last-letter maps.
pub fn period_bound(s: &Substitution) -> usize {
    (s.len() + 1) * (s.len() + 1)
}

fn iterate(map: &[Letter], a: Letter, p: usize) -> Letter {
    (0..p).fold(a, |c, _| map[c.index()])
}

/// Least p ≤ `bound` with map^p(a) = a.
fn period(map: &[Letter], a: Letter, bound: usize) -> Option<usize> {
    (1..=bound).find(|&p| iterate(map, a, p) == a)
}

/// Minimal components seen at words of length ≤ `scale`. Seeds with equal
/// languages form one group; groups whose language strictly contains
/// another group's are dropped.
pub fn minimal_components(s: &Substitution, scale: usize) -> Vec<Component> {
    let scale = scale.max(2);
    let bound = period_bound(s);
    let class = s.classify_letters();
    let first = s.first_letter_map();
    let last = s.last_letter_map();
    let seeds: Vec<Letter> =
        class.long.iter().copied().filter(|&a| period(&first, a, bound).is_some()).collect();
    let langs: Vec<FactorLanguage> = seeds.iter().map(|&a| language_from(s, &[vec![a]], scale)).collect();
    let same = |i: usize, j: usize| langs[i].is_subset(&langs[j]) && langs[j].is_subset(&langs[i]);

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..seeds.len() {
        match groups.iter_mut().find(|g| same(g[0], i)) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    let minimal: Vec<&Vec<usize>> = groups
        .iter()
        .filter(|g| !groups.iter().any(|h| h[0] != g[0] && langs[h[0]].is_subset(&langs[g[0]]) && !same(h[0], g[0])))
        .collect();

    minimal
        .into_iter()
        .map(|g| {
            let language = langs[g[0]].clone();
            let letters = language.letters();
            let mut pair = None;
            'search: for &r in letters.iter().filter(|&&a| class.is_long(a)) {
                for &l in letters.iter().filter(|&&a| class.is_long(a)) {
                    if !language.contains(&[r, l]) {
                        continue;
                    }
                    if let Some(p) = (1..=bound).find(|&p| iterate(&last, r, p) == r && iterate(&first, l, p) == l) {
                        pair = Some(FixedPair { r, l, p });
                        break 'search;
                    }
                }
            }
            Component { seeds: g.iter().map(|&i| seeds[i]).collect(), letters, pair, language }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Properness {
    Proper(usize),
    NotProperUpTo(usize),
}

/// Searches p ≤ `p_max` such that the first letter of σᵖ(b) over ab ∈ L
/// depends only on a, and likewise the last letter of σᵖ(c) over ca ∈ L.
pub fn is_proper(s: &Substitution, p_max: usize) -> Properness {
    let pairs = factor_language(s, 2).of_length(2);
    let first = s.first_letter_map();
    let last = s.last_letter_map();
    for p in 1..=p_max {
        let ok = s.letters().all(|a| {
            let mut right = pairs.iter().filter(|w| w[0] == a).map(|w| iterate(&first, w[1], p));
            let mut left = pairs.iter().filter(|w| w[1] == a).map(|w| iterate(&last, w[0], p));
            let r0 = right.next();
            let l0 = left.next();
            right.all(|x| Some(x) == r0) && left.all(|x| Some(x) == l0)
        });
        if ok {
            return Properness::Proper(p);
        }
    }
    Properness::NotProperUpTo(p_max)
}

/// A condition checked only on words up to a fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScaleCheck {
    HoldsUpTo(usize),
    Fails(String),
}

impl fmt::Display for ScaleCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaleCheck::HoldsUpTo(n) => write!(f, "holds up to length {n}"),
            ScaleCheck::Fails(why) => write!(f, "fails: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPrimitiveReport {
    pub blocks: Vec<Vec<Letter>>,
    pub extra: Vec<Letter>,
    /// L(σ) = L(σᵏ) for k = 2, 3.
    pub language_stable: ScaleCheck,
    /// Every letter occurs inside a two-sided extendable word.
    pub letters_in_subshift: ScaleCheck,
}

impl MPrimitiveReport {
    pub fn m(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MPrimitivity {
    MPrimitive(MPrimitiveReport),
    NotMPrimitive(String),
}

pub fn render_set(alphabet: &Alphabet, letters: &[Letter]) -> String {
    let names: Vec<&str> = letters.iter().map(|&a| alphabet.label(a)).collect();
    format!("{{{}}}", names.join(","))
}

/// Blocks are the closed strongly connected classes of the occurrence graph.
/// Each must have at least two letters and a primitive restriction.
pub fn is_m_primitive(s: &Substitution, scale: usize) -> MPrimitivity {
    let n = s.len();
    let alphabet = s.alphabet();
    let reach: Vec<Vec<bool>> = s.letters().map(|a| s.reachable(a)).collect();
    let members = |r: &[bool]| -> Vec<Letter> { s.letters().filter(|b| r[b.index()]).collect() };

    let mut blocks: Vec<Vec<Letter>> = Vec::new();
    let mut seen = vec![false; n];
    for a in s.letters() {
        if seen[a.index()] {
            continue;
        }
        let class: Vec<Letter> = s.letters().filter(|b| reach[a.index()][b.index()] && reach[b.index()][a.index()]).collect();
        for b in &class {
            seen[b.index()] = true;
        }
        let closed = class.iter().all(|b| members(&reach[b.index()]).iter().all(|c| class.contains(c)));
        if !closed {
            continue;
        }
        if class.len() == 1 {
            let x = class[0];
            // Report the smallest closed set around x that has two letters.
            let around = s
                .letters()
                .map(|c| members(&reach[c.index()]))
                .filter(|r| r.len() >= 2 && r.contains(&x))
                .min_by_key(|r| r.len());
            return MPrimitivity::NotMPrimitive(match around {
                Some(r) => {
                    let y = *r.iter().find(|&&y| y != x && !reach[x.index()][y.index()]).unwrap();
                    format!(
                        "block {} not primitive: {} never produces {}",
                        render_set(alphabet, &r),
                        alphabet.label(x),
                        alphabet.label(y)
                    )
                }
                None => format!("block {} has a single letter", render_set(alphabet, &class)),
            });
        }
        let idx: Vec<usize> = class.iter().map(|b| b.index()).collect();
        if !s.incidence_matrix().restrict(&idx).is_primitive() {
            return MPrimitivity::NotMPrimitive(format!(
                "block {} not primitive: its restriction is periodic",
                render_set(alphabet, &class)
            ));
        }
        blocks.push(class);
    }
    let in_block = |b: Letter| blocks.iter().any(|k| k.contains(&b));
    if let Some(a) = s.letters().find(|&a| !members(&reach[a.index()]).into_iter().any(in_block)) {
        return MPrimitivity::NotMPrimitive(format!("{} reaches no block", alphabet.label(a)));
    }
    let extra = s.letters().filter(|&a| !in_block(a)).collect();

    let scale = scale.max(2);
    let lang = factor_language(s, scale);
    let mut language_stable = ScaleCheck::HoldsUpTo(scale);
    for k in 2..=3 {
        let lk = factor_language(&s.power(k), scale);
        if !(lk.is_subset(&lang) && lang.is_subset(&lk)) {
            language_stable = ScaleCheck::Fails(format!("L(σ) and L(σ^{k}) differ"));
            break;
        }
    }
    let half = (scale - 1) / 2;
    let centred = lang.of_length(2 * half + 1);
    let missing: Vec<Letter> = s.letters().filter(|a| !centred.iter().any(|w| w[half] == *a)).collect();
    let letters_in_subshift = if missing.is_empty() {
        ScaleCheck::HoldsUpTo(2 * half + 1)
    } else {
        ScaleCheck::Fails(format!(
            "{} not extendable by {half} letters on both sides",
            render_set(alphabet, &missing)
        ))
    };
    MPrimitivity::MPrimitive(MPrimitiveReport { blocks, extra, language_stable, letters_in_subshift })
}
