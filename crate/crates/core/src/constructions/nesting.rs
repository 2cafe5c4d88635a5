use crate::bratteli::StationaryOrderedDiagram;
use crate::error::{Error, Result};
use crate::language::{factor_language, short_block_bound, ShortBlockBound};
use crate::words::{length_lex, Alphabet, Letter, NestingClass, Substitution, Word};

/// Cap used when searching for the short-block bound.
pub const SHORT_BLOCK_CAP: usize = 32;

/// Which side of the word the dot sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DotSide {
    /// `v1 S1 . v2 S2 v3`
    AfterFirstBlock,
    /// `v1 . S1 v2 S2 v3`
    AfterFirstLetter,
}

/// A marked word v₁S₁v₂S₂v₃ with long vᵢ and short Sᵢ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedWord {
    pub v1: Letter,
    pub s1: Word,
    pub v2: Letter,
    pub s2: Word,
    pub v3: Letter,
    pub side: DotSide,
}

impl MarkedWord {
    pub fn word(&self) -> Word {
        let mut w = vec![self.v1];
        w.extend(&self.s1);
        w.push(self.v2);
        w.extend(&self.s2);
        w.push(self.v3);
        w
    }

    pub fn dot(&self) -> usize {
        match self.side {
            DotSide::AfterFirstBlock => 1 + self.s1.len(),
            DotSide::AfterFirstLetter => 1,
        }
    }

    /// The base of the tower: v₂S₂ or S₁v₂.
    pub fn base(&self) -> Word {
        match self.side {
            DotSide::AfterFirstBlock => {
                let mut w = vec![self.v2];
                w.extend(&self.s2);
                w
            }
            DotSide::AfterFirstLetter => {
                let mut w = self.s1.clone();
                w.push(self.v2);
                w
            }
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render_dotted(&self.word(), self.dot())
    }

    fn mirror(&self) -> MarkedWord {
        let rev = |w: &Word| w.iter().rev().copied().collect::<Word>();
        MarkedWord {
            v1: self.v3,
            s1: rev(&self.s2),
            v2: self.v2,
            s2: rev(&self.s1),
            v3: self.v1,
            side: match self.side {
                DotSide::AfterFirstBlock => DotSide::AfterFirstLetter,
                DotSide::AfterFirstLetter => DotSide::AfterFirstBlock,
            },
        }
    }
}

/// The nesting vocabulary together with its matching rule.
#[derive(Debug, Clone)]
pub struct NestingSystem {
    pub vocabulary: Vec<MarkedWord>,
    /// Indices into `vocabulary`, one list per word.
    pub rule: Vec<Vec<usize>>,
}

fn short_bound(s: &Substitution) -> Result<usize> {
    match short_block_bound(s, SHORT_BLOCK_CAP) {
        ShortBlockBound::Bound(m) => Ok(m),
        ShortBlockBound::Unbounded(cap) => Err(Error::UnboundedShorts(cap)),
    }
}

/// Vocabulary for a substitution whose long images start with long letters.
fn starts_long_vocabulary(s: &Substitution) -> Result<Vec<MarkedWord>> {
    let m = short_bound(s)?;
    let class = s.classify_letters();
    let lang = factor_language(s, 2 * m + 3);
    let mut out = Vec::new();
    for w in lang.sorted() {
        let longs: Vec<usize> = (0..w.len()).filter(|&i| class.is_long(w[i])).collect();
        if longs.len() != 3 || longs[0] != 0 || longs[2] != w.len() - 1 {
            continue;
        }
        let (i, j) = (longs[1], longs[2]);
        out.push(MarkedWord {
            v1: w[0],
            s1: w[1..i].to_vec(),
            v2: w[i],
            s2: w[i + 1..j].to_vec(),
            v3: w[j],
            side: DotSide::AfterFirstBlock,
        });
    }
    out.sort_by(|x, y| {
        (x.v1, x.v2, x.v3)
            .cmp(&(y.v1, y.v2, y.v3))
            .then_with(|| length_lex(&x.s2, &y.s2))
            .then_with(|| length_lex(&x.s1, &y.s1))
    });
    Ok(out)
}

/// Splits a word that starts with a long letter into runs (long letter,
/// following short block).
fn runs(w: &[Letter], is_long: impl Fn(Letter) -> bool) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    for &a in w {
        if is_long(a) || out.is_empty() {
            out.push(vec![a]);
        } else {
            out.last_mut().unwrap().push(a);
        }
    }
    out
}

fn starts_long_rule(s: &Substitution, vocab: &[MarkedWord]) -> Result<Vec<Vec<usize>>> {
    let class = s.classify_letters();
    let long = |a: Letter| class.is_long(a);
    let find = |m: &MarkedWord| {
        vocab.iter().position(|w| w == m).ok_or_else(|| Error::NotInLanguage(m.render(s.alphabet())))
    };
    let mut rule = Vec::with_capacity(vocab.len());
    for w in vocab {
        let mut first = vec![w.v1];
        first.extend(&w.s1);
        let p1 = runs(&s.apply(&first), long);
        let p2 = runs(&s.apply(&w.base()), long);
        let p3 = s.image(w.v3);
        let mut out = Vec::with_capacity(p2.len());
        for j in 0..p2.len() {
            let prev = if j == 0 { p1.last().unwrap() } else { &p2[j - 1] };
            let next = if j + 1 < p2.len() { p2[j + 1][0] } else { p3[0] };
            out.push(find(&MarkedWord {
                v1: prev[0],
                s1: prev[1..].to_vec(),
                v2: p2[j][0],
                s2: p2[j][1..].to_vec(),
                v3: next,
                side: DotSide::AfterFirstBlock,
            })?);
        }
        rule.push(out);
    }
    Ok(rule)
}

/// Marked words and matching rule. The dot follows v₁S₁ when every long
/// image starts with a long letter, otherwise it follows v₁ and the
/// construction runs on the mirrored substitution.
pub fn nesting_system(s: &Substitution) -> Result<NestingSystem> {
    match s.nesting_class() {
        NestingClass::None => Err(Error::NoNesting),
        NestingClass::StartsLong | NestingClass::Both => {
            let vocabulary = starts_long_vocabulary(s)?;
            let rule = starts_long_rule(s, &vocabulary)?;
            Ok(NestingSystem { vocabulary, rule })
        }
        NestingClass::EndsLong => {
            let r = s.reversed();
            let mirrored = starts_long_vocabulary(&r)?;
            let rule = starts_long_rule(&r, &mirrored)?
                .into_iter()
                .map(|mut out| {
                    out.reverse();
                    out
                })
                .collect();
            Ok(NestingSystem { vocabulary: mirrored.iter().map(MarkedWord::mirror).collect(), rule })
        }
    }
}

pub fn nesting_vocabulary(s: &Substitution) -> Result<Vec<MarkedWord>> {
    Ok(nesting_system(s)?.vocabulary)
}

/// The ordered list of marked words whose towers stack into the tower of `w`.
pub fn nesting_matching_rule(s: &Substitution, w: &MarkedWord) -> Result<Vec<MarkedWord>> {
    let sys = nesting_system(s)?;
    let i = sys
        .vocabulary
        .iter()
        .position(|x| x == w)
        .ok_or_else(|| Error::NotInLanguage(w.render(s.alphabet())))?;
    Ok(sys.rule[i].iter().map(|&j| sys.vocabulary[j].clone()).collect())
}

/// Stationary diagram on the marked words; vertex labels are the dotted
/// words and each top count is the base length.
pub fn nesting_diagram(s: &Substitution) -> Result<StationaryOrderedDiagram> {
    let sys = nesting_system(s)?;
    let labels: Vec<String> = sys.vocabulary.iter().map(|w| w.render(s.alphabet())).collect();
    let alphabet = Alphabet::new(labels)?;
    let read = sys.rule.iter().map(|r| r.iter().map(|&i| Letter(i as u16)).collect()).collect();
    let counts = sys.vocabulary.iter().map(|w| w.base().len()).collect();
    StationaryOrderedDiagram::new(alphabet, read, counts)
}
