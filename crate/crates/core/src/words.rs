//! Alphabets, words and substitutions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::IncidenceMatrix;

/// Index of a letter in its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type Word = Vec<Letter>;

/// Ordered set of letter labels. Order is fixed at construction and used for
/// every tie-break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut alphabet = Alphabet { labels: Vec::new(), index: HashMap::new() };
        for label in labels {
            let label = label.into();
            if alphabet.index.contains_key(&label) {
                return Err(Error::DuplicateRule(label));
            }
            alphabet.index.insert(label.clone(), Letter(alphabet.labels.len() as u16));
            alphabet.labels.push(label);
        }
        Ok(alphabet)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.labels.len()).map(|i| Letter(i as u16))
    }

    pub fn label(&self, a: Letter) -> &str {
        &self.labels[a.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn letter(&self, label: &str) -> Option<Letter> {
        self.index.get(label).copied()
    }

    fn single_chars(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    /// Renders a word; labels are concatenated when every label is a single
    /// character and space-separated otherwise.
    pub fn render(&self, w: &[Letter]) -> String {
        let sep = if self.single_chars() { "" } else { " " };
        w.iter().map(|&a| self.label(a)).collect::<Vec<_>>().join(sep)
    }

    /// Renders a word with a dot before position `dot`.
    pub fn render_dotted(&self, w: &[Letter], dot: usize) -> String {
        let sep = if self.single_chars() { "" } else { " " };
        let left = w[..dot].iter().map(|&a| self.label(a)).collect::<Vec<_>>().join(sep);
        let right = w[dot..].iter().map(|&a| self.label(a)).collect::<Vec<_>>().join(sep);
        format!("{left}.{right}")
    }

    /// Parses a word. With single-character labels the text is read
    /// character by character (whitespace ignored); otherwise it is split on
    /// whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<String> = if self.single_chars() {
            text.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
        } else {
            text.split_whitespace().map(String::from).collect()
        };
        tokens
            .iter()
            .map(|t| self.letter(t).ok_or_else(|| Error::UnknownLetter(t.clone())))
            .collect()
    }
}

/// A word with a cut position. Letters before the dot sit at negative
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DottedWord {
    pub letters: Word,
    pub dot: usize,
}

impl DottedWord {
    pub fn new(letters: Word, dot: usize) -> Self {
        assert!(dot <= letters.len(), "dot outside word");
        DottedWord { letters, dot }
    }

    pub fn left(&self) -> &[Letter] {
        &self.letters[..self.dot]
    }

    pub fn right(&self) -> &[Letter] {
        &self.letters[self.dot..]
    }
}

/// Reads rules `letter -> word`, one per line.
pub fn parse_substitution(text: &str) -> Result<Substitution> {
    text.parse()
}

/// A substitution σ: A → A⁺.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::InvalidArgument("one image per letter required".into()));
        }
        for (i, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::EmptyImage(alphabet.labels[i].clone()));
            }
            if let Some(b) = img.iter().find(|b| b.index() >= alphabet.len()) {
                return Err(Error::UnknownLetter(format!("#{}", b.0)));
            }
        }
        Ok(Substitution { alphabet, images })
    }

    /// Builds a substitution from `(label, image)` pairs, image labels being
    /// single characters.
    pub fn from_rules(rules: &[(&str, &str)]) -> Result<Self> {
        let text: String = rules.iter().map(|(a, w)| format!("{a} -> {w}\n")).collect();
        text.parse()
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

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.alphabet.letters()
    }

    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[a.index()]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn letter(&self, label: &str) -> Option<Letter> {
        self.alphabet.letter(label)
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }

    pub fn render(&self, w: &[Letter]) -> String {
        self.alphabet.render(w)
    }

    /// σⁿ(w).
    pub fn expand(&self, w: &[Letter], n: usize) -> Word {
        let mut cur = w.to_vec();
        for _ in 0..n {
            cur = self.apply(&cur);
        }
        cur
    }

    /// σ(w).
    pub fn apply(&self, w: &[Letter]) -> Word {
        w.iter().flat_map(|&a| self.image(a).iter().copied()).collect()
    }

    /// σᵏ as a substitution in its own right.
    pub fn power(&self, k: usize) -> Substitution {
        assert!(k >= 1, "power must be at least 1");
        let images = self.letters().map(|a| self.expand(&[a], k)).collect();
        Substitution { alphabet: self.alphabet.clone(), images }
    }

    /// Reversal σᴿ(a) = mirror of σ(a).
    pub fn reversed(&self) -> Substitution {
        let images = self.images.iter().map(|w| w.iter().rev().copied().collect()).collect();
        Substitution { alphabet: self.alphabet.clone(), images }
    }

    /// |σⁿ(a)| for every letter, saturating at `u64::MAX`.
    pub fn lengths(&self, n: usize) -> Vec<u64> {
        let mut len = vec![1u64; self.len()];
        for _ in 0..n {
            len = self
                .images
                .iter()
                .map(|img| img.iter().fold(0u64, |acc, b| acc.saturating_add(len[b.index()])))
                .collect();
        }
        len
    }

    /// Length of σⁿ(w).
    pub fn word_length(&self, w: &[Letter], n: usize) -> u64 {
        let len = self.lengths(n);
        w.iter().fold(0u64, |acc, a| acc.saturating_add(len[a.index()]))
    }

    /// (|σⁿ|, ‖σⁿ‖): minimum and maximum image length of σⁿ.
    pub fn norms(&self, n: usize) -> (u64, u64) {
        let len = self.lengths(n);
        (*len.iter().min().unwrap_or(&0), *len.iter().max().unwrap_or(&0))
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let n = self.len();
        let mut m = IncidenceMatrix::zero(n);
        for a in self.letters() {
            for &b in self.image(a) {
                m.add(a.index(), b.index(), 1);
            }
        }
        m
    }

    /// Letters reachable from `a` in the occurrence digraph (`a` included).
    pub fn reachable(&self, a: Letter) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![a];
        seen[a.index()] = true;
        while let Some(c) = stack.pop() {
            for &b in self.image(c) {
                if !seen[b.index()] {
                    seen[b.index()] = true;
                    stack.push(b);
                }
            }
        }
        seen
    }

    /// True if `a` reaches itself through at least one edge.
    pub fn on_cycle(&self, a: Letter) -> bool {
        self.image(a).iter().any(|&b| self.reachable(b)[a.index()])
    }

    pub fn classify_letters(&self) -> LetterClassification {
        let pumping: Vec<bool> =
            self.letters().map(|c| self.image(c).len() >= 2 && self.on_cycle(c)).collect();
        let mut long = Vec::new();
        let mut short = Vec::new();
        for a in self.letters() {
            let reach = self.reachable(a);
            if reach.iter().zip(&pumping).any(|(&r, &p)| r && p) {
                long.push(a);
            } else {
                short.push(a);
            }
        }
        LetterClassification { long, short }
    }

    pub fn nesting_class(&self) -> NestingClass {
        let class = self.classify_letters();
        let starts = class.long.iter().all(|&a| class.is_long(self.image(a)[0]));
        let ends = class.long.iter().all(|&a| class.is_long(*self.image(a).last().unwrap()));
        match (starts, ends) {
            (true, true) => NestingClass::Both,
            (true, false) => NestingClass::StartsLong,
            (false, true) => NestingClass::EndsLong,
            (false, false) => NestingClass::None,
        }
    }

    /// Map a ↦ first letter of σ(a).
    pub fn first_letter_map(&self) -> Vec<Letter> {
        self.images.iter().map(|w| w[0]).collect()
    }

    /// Map a ↦ last letter of σ(a).
    pub fn last_letter_map(&self) -> Vec<Letter> {
        self.images.iter().map(|w| *w.last().unwrap()).collect()
    }
}

impl FromStr for Substitution {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lhs: Vec<String> = Vec::new();
        let mut rhs: Vec<(usize, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (left, right) = line.split_once("->").ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected `<letter> -> <word>`".into(),
            })?;
            let left = left.trim();
            if left.chars().count() != 1 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("`{left}` is not a single letter"),
                });
            }
            if lhs.iter().any(|l| l == left) {
                return Err(Error::DuplicateRule(left.to_string()));
            }
            let image: Vec<String> =
                right.chars().filter(|c| !c.is_whitespace()).map(String::from).collect();
            if image.is_empty() {
                return Err(Error::EmptyImage(left.to_string()));
            }
            lhs.push(left.to_string());
            rhs.push((line_no, image));
        }
        if lhs.is_empty() {
            return Err(Error::Parse { line: 0, message: "no rules".into() });
        }
        let alphabet = Alphabet::new(lhs)?;
        let mut images = Vec::with_capacity(rhs.len());
        for (_, image) in rhs {
            let word = image
                .iter()
                .map(|t| alphabet.letter(t).ok_or_else(|| Error::MissingRule(t.clone())))
                .collect::<Result<Word>>()?;
            images.push(word);
        }
        Substitution::new(alphabet, images)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.letters() {
            writeln!(f, "{} -> {}", self.alphabet.label(a), self.render(self.image(a)))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterClassification {
    pub long: Vec<Letter>,
    pub short: Vec<Letter>,
}

impl LetterClassification {
    pub fn is_long(&self, a: Letter) -> bool {
        self.long.contains(&a)
    }

    pub fn is_short(&self, a: Letter) -> bool {
        self.short.contains(&a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NestingClass {
    StartsLong,
    EndsLong,
    Both,
    None,
}

impl fmt::Display for NestingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NestingClass::StartsLong => "starts-long",
            NestingClass::EndsLong => "ends-long",
            NestingClass::Both => "both",
            NestingClass::None => "none",
        };
        f.write_str(s)
    }
}

/// Length-then-lexicographic comparison of words.
pub fn length_lex(a: &[Letter], b: &[Letter]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// True if `needle` occurs in `hay`.
pub fn is_factor(needle: &[Letter], hay: &[Letter]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}
