#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use vershik::bratteli::{Edge, OrderedDiagram, VertexRef};
use vershik::language::FactorLanguage;
use vershik::words::{Alphabet, Letter, Substitution, Word};

pub const CHACON: &str = "0 -> 00s0\ns -> s\n1 -> 0110\n";
pub const THUE_MORSE: &str = "a -> ab\nb -> ba\n";
pub const TWO_BLOCK: &str = "a -> ab\nb -> ba\nc -> cd\nd -> dc\ne -> ae\n";

pub fn chacon() -> Substitution {
    CHACON.parse().unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Alphabet a, b, … of size `n`.
pub fn letters(n: usize) -> Alphabet {
    Alphabet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

pub fn random_substitution(rng: &mut StdRng, max_alpha: usize, max_len: usize) -> Substitution {
    let n = rng.gen_range(1..=max_alpha);
    let images = (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| Letter(rng.gen_range(0..n) as u16)).collect()
        })
        .collect();
    Substitution::new(letters(n), images).unwrap()
}

/// Random valid ordered diagram of the given depth: every vertex has an
/// incoming edge and every vertex above the last level an outgoing one.
pub fn random_diagram(rng: &mut StdRng, depth: usize) -> OrderedDiagram {
    let mut levels = vec![vec!["v0".to_string()]];
    for k in 1..=depth {
        let n = rng.gen_range(1..=3);
        levels.push((0..n).map(|i| format!("x{k}_{i}")).collect());
    }
    let mut edges = vec![Vec::new()];
    let mut order = vec![Vec::new()];
    for k in 1..=depth {
        let below = levels[k - 1].len();
        let here = levels[k].len();
        let mut lvl: Vec<Edge> = Vec::new();
        let add = |src: usize, dst: usize, lvl: &mut Vec<Edge>| {
            lvl.push(Edge { source: VertexRef { level: k - 1, index: src }, range: VertexRef { level: k, index: dst } })
        };
        for v in 0..here {
            for _ in 0..rng.gen_range(1..=3) {
                add(rng.gen_range(0..below), v, &mut lvl);
            }
        }
        for u in 0..below {
            if !lvl.iter().any(|e| e.source.index == u) {
                add(u, rng.gen_range(0..here), &mut lvl);
            }
        }
        let mut ord: Vec<Vec<usize>> = (0..here)
            .map(|v| (0..lvl.len()).filter(|&e| lvl[e].range.index == v).collect())
            .collect();
        for o in &mut ord {
            o.shuffle(rng);
        }
        edges.push(lvl);
        order.push(ord);
    }
    OrderedDiagram { levels, edges, order }
}

/// All paths to `v` at `level`, found by brute force over edge sequences
/// and sorted with the last edge most significant.
pub fn lex_paths_oracle(d: &OrderedDiagram, level: usize, v: usize) -> Vec<Vec<usize>> {
    let mut paths: Vec<Vec<usize>> = vec![Vec::new()];
    for k in 1..=level {
        let mut next = Vec::new();
        for p in &paths {
            for e in 0..d.edges[k].len() {
                let ok = match p.last() {
                    None => true,
                    Some(&prev) => d.edges[k - 1][prev].range.index == d.edges[k][e].source.index,
                };
                if ok {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
        }
        paths = next;
    }
    paths.retain(|p| d.edges[level][*p.last().unwrap()].range.index == v);
    let rank = |k: usize, e: usize| {
        let r = d.edges[k][e].range.index;
        d.order[k][r].iter().position(|&x| x == e).unwrap()
    };
    let key = |p: &Vec<usize>| -> Vec<usize> { (1..=level).rev().map(|k| rank(k, p[k - 1])).collect() };
    paths.sort_by_key(key);
    paths
}

/// (parent, offset, tail) for every way of cutting `window` into pieces
/// that are images, the first a suffix and the last a prefix of an image,
/// with the parent in the language.
pub fn brute_force_tilings(s: &Substitution, window: &[Letter], lang: &FactorLanguage) -> BTreeSet<(Word, usize, usize)> {
    let n = window.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let mut bounds = vec![0];
        bounds.extend((1..n).filter(|i| mask & (1 << (i - 1)) != 0));
        bounds.push(n);
        let pieces: Vec<&[Letter]> = bounds.windows(2).map(|b| &window[b[0]..b[1]]).collect();
        let k = pieces.len();
        // Candidate (letter, offset, tail) per piece.
        let mut options: Vec<Vec<(Letter, usize, usize)>> = Vec::new();
        for (i, piece) in pieces.iter().enumerate() {
            let mut opts = Vec::new();
            for a in s.letters() {
                let img = s.image(a);
                for off in 0..img.len() {
                    for tail in 0..img.len() - off {
                        let seen = &img[off..img.len() - tail];
                        if seen != *piece {
                            continue;
                        }
                        if (off > 0 && i != 0) || (tail > 0 && i != k - 1) {
                            continue;
                        }
                        opts.push((a, off, tail));
                    }
                }
            }
            options.push(opts);
        }
        let mut stack: Vec<(Word, usize, usize)> = vec![(Vec::new(), 0, 0)];
        for (i, opts) in options.iter().enumerate() {
            let mut next = Vec::new();
            for (p, off, tail) in &stack {
                for &(a, o, t) in opts {
                    let mut q = p.clone();
                    q.push(a);
                    next.push((q, if i == 0 { o } else { *off }, if i == k - 1 { t } else { *tail }));
                }
            }
            stack = next;
        }
        for (p, off, tail) in stack {
            if p.len() <= lang.cap() && lang.contains(&p) {
                out.insert((p, off, tail));
            }
        }
    }
    out
}
