use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Substitution, Word};

use super::{Edge, Ordered, OrderedDiagram, VertexRef, TOP_LABEL};

/// A stationary ordered diagram: below level 1 every level repeats, the
/// edges into Vₙ(a) coming from the letters of `read_rule[a]` in order.
/// Level 1 receives `top_counts[a]` edges from the top vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryOrderedDiagram {
    alphabet: Alphabet,
    read_rule: Vec<Word>,
    top_counts: Vec<usize>,
    top_in: Vec<Vec<usize>>,
    top_range: Vec<usize>,
    rule_in: Vec<Vec<usize>>,
    rule_source: Vec<usize>,
    rule_range: Vec<usize>,
}

/// A minimal or maximal infinite path, given by its periodic label
/// sequence: the label at level n is `period[(n-1) % period.len()]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalPath {
    pub period: Vec<Letter>,
}

impl ExtremalPath {
    pub fn label(&self, level: usize) -> Letter {
        self.period[(level - 1) % self.period.len()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremals {
    pub minimal: Vec<ExtremalPath>,
    pub maximal: Vec<ExtremalPath>,
}

impl StationaryOrderedDiagram {
    pub fn new(alphabet: Alphabet, read_rule: Vec<Word>, top_counts: Vec<usize>) -> Result<Self> {
        let n = alphabet.len();
        if read_rule.len() != n || top_counts.len() != n {
            return Err(Error::InvalidArgument("one rule and one top count per vertex".into()));
        }
        if let Some(a) = alphabet.letters().find(|a| top_counts[a.index()] == 0) {
            return Err(Error::InvalidArgument(format!("top count of `{}` is 0", alphabet.label(a))));
        }
        if let Some(a) = alphabet.letters().find(|a| read_rule[a.index()].is_empty()) {
            return Err(Error::EmptyImage(alphabet.label(a).to_string()));
        }
        let mut top_in = Vec::with_capacity(n);
        let mut top_range = Vec::new();
        let mut rule_in = Vec::with_capacity(n);
        let mut rule_source = Vec::new();
        let mut rule_range = Vec::new();
        for a in 0..n {
            top_in.push((top_range.len()..top_range.len() + top_counts[a]).collect());
            top_range.extend(std::iter::repeat_n(a, top_counts[a]));
            rule_in.push((rule_source.len()..rule_source.len() + read_rule[a].len()).collect());
            for &b in &read_rule[a] {
                if b.index() >= n {
                    return Err(Error::UnknownLetter(format!("#{}", b.0)));
                }
                rule_source.push(b.index());
                rule_range.push(a);
            }
        }
        Ok(StationaryOrderedDiagram {
            alphabet,
            read_rule,
            top_counts,
            top_in,
            top_range,
            rule_in,
            rule_source,
            rule_range,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphabet.is_empty()
    }

    pub fn read_rule(&self, a: Letter) -> &[Letter] {
        &self.read_rule[a.index()]
    }

    pub fn top_counts(&self) -> &[usize] {
        &self.top_counts
    }

    /// The substitution read on the diagram.
    pub fn read_substitution(&self) -> Substitution {
        Substitution::new(self.alphabet.clone(), self.read_rule.clone())
            .expect("read rule is a valid substitution")
    }

    /// The first `depth` levels as an [`OrderedDiagram`].
    pub fn unroll(&self, depth: usize) -> OrderedDiagram {
        let n = self.len();
        let mut levels = vec![vec![TOP_LABEL.to_string()]];
        let mut edges = vec![Vec::new()];
        let mut order = vec![Vec::new()];
        for level in 1..=depth {
            levels.push(self.alphabet.labels().to_vec());
            let mut lvl_edges = Vec::new();
            let mut lvl_order = Vec::new();
            for a in 0..n {
                let mut ord = Vec::new();
                for &e in self.incoming(level, a) {
                    ord.push(lvl_edges.len());
                    lvl_edges.push(Edge {
                        source: VertexRef { level: level - 1, index: self.source(level, e) },
                        range: VertexRef { level, index: a },
                    });
                }
                lvl_order.push(ord);
            }
            edges.push(lvl_edges);
            order.push(lvl_order);
        }
        OrderedDiagram { levels, edges, order }
    }

    /// a ↦ first letter of the read rule.
    pub fn min_map(&self) -> Vec<Letter> {
        self.read_rule.iter().map(|w| w[0]).collect()
    }

    /// a ↦ last letter of the read rule.
    pub fn max_map(&self) -> Vec<Letter> {
        self.read_rule.iter().map(|w| *w.last().unwrap()).collect()
    }

    /// Minimal and maximal infinite paths. A sequence with aₙ = m(aₙ₊₁)
    /// for all n stays on the cycles of m, so there is one such path per
    /// cyclic vertex of m.
    pub fn extremal_paths(&self) -> Extremals {
        Extremals { minimal: extremals_of(&self.min_map()), maximal: extremals_of(&self.max_map()) }
    }

    /// True if `a` lies on a cycle of the functional map `m`.
    pub(crate) fn cyclic(m: &[Letter], a: Letter) -> bool {
        let mut cur = a;
        for _ in 0..m.len() {
            cur = m[cur.index()];
            if cur == a {
                return true;
            }
        }
        false
    }
}

fn extremals_of(m: &[Letter]) -> Vec<ExtremalPath> {
    let mut out = Vec::new();
    for a in (0..m.len()).map(|i| Letter(i as u16)) {
        if !StationaryOrderedDiagram::cyclic(m, a) {
            continue;
        }
        // a₁ = a and aₙ₊₁ is the cycle predecessor of aₙ under m.
        let mut forward = vec![a];
        let mut cur = m[a.index()];
        while cur != a {
            forward.push(cur);
            cur = m[cur.index()];
        }
        let mut period = vec![a];
        period.extend(forward[1..].iter().rev());
        out.push(ExtremalPath { period });
    }
    out
}

impl Ordered for StationaryOrderedDiagram {
    fn depth(&self) -> Option<usize> {
        None
    }

    fn vertex_count(&self, level: usize) -> usize {
        if level == 0 {
            1
        } else {
            self.len()
        }
    }

    fn vertex_label(&self, level: usize, v: usize) -> &str {
        if level == 0 {
            TOP_LABEL
        } else {
            &self.alphabet.labels()[v]
        }
    }

    fn incoming(&self, level: usize, v: usize) -> &[usize] {
        if level == 1 {
            &self.top_in[v]
        } else {
            &self.rule_in[v]
        }
    }

    fn source(&self, level: usize, e: usize) -> usize {
        if level == 1 {
            0
        } else {
            self.rule_source[e]
        }
    }

    fn range(&self, level: usize, e: usize) -> usize {
        if level == 1 {
            self.top_range[e]
        } else {
            self.rule_range[e]
        }
    }
}

/// The diagram whose read substitution is `s`.
pub fn stationary_from_substitution(s: &Substitution, top_counts: &[usize]) -> StationaryOrderedDiagram {
    StationaryOrderedDiagram::new(s.alphabet().clone(), s.images().to_vec(), top_counts.to_vec())
        .expect("substitution images are nonempty and counts positive")
}
