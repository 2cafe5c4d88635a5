mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;
use vershik::bratteli::{
    enumerate_paths, min_path, path_distance, stationary_from_substitution, vertex_at, vershik_successor,
};
use vershik::coding::{build_j_symbol, depth_and_cuts, window_from_orbit, window_from_parse};
use vershik::bratteli::{MaxToMin, Orbit};
use vershik::constructions::{
    derivative_substitution, is_m_primitive, minimal_components, multi_edge_encoding, nesting_system, return_words,
    MPrimitivity,
};
use vershik::language::{factor_language, short_block_bound, ShortBlockBound};
use vershik::phase_space::{lambda_seeds, lambda_window, ChainPrefix};
use vershik::recognize::{one_word_tilings, Recognition, Recognizer};
use vershik::words::{Letter, NestingClass, Substitution};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

/// A random factor of length ≤ `max` of a long iterate.
fn random_factor(rng: &mut StdRng, s: &Substitution, max: usize) -> Vec<Letter> {
    let a = Letter(rng.gen_range(0..s.len()) as u16);
    let mut x = vec![a];
    while x.len() < 4 * max {
        let y = s.apply(&x);
        if y.len() == x.len() {
            break;
        }
        x = y;
    }
    let n = rng.gen_range(1..=max.min(x.len()));
    let start = rng.gen_range(0..=x.len() - n);
    x[start..start + n].to_vec()
}

/// A random nesting substitution, or Chacon if none turns up.
fn nesting_instance(rng: &mut StdRng) -> Substitution {
    for _ in 0..40 {
        let s = random_substitution(rng, 3, 3);
        let small = matches!(short_block_bound(&s, 6), ShortBlockBound::Bound(m) if m <= 3);
        if small && s.nesting_class() != NestingClass::None && nesting_system(&s).is_ok() {
            return s;
        }
    }
    chacon()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn expand_composes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_substitution(&mut r, 4, 3);
        let w = random_factor(&mut r, &s, 4);
        for m in 0..=4 {
            for n in 0..=4 {
                prop_assert_eq!(s.expand(&w, m + n), s.expand(&s.expand(&w, m), n));
            }
        }
    }

    #[test]
    fn incidence_rows_and_powers(seed in any::<u64>()) {
        let s = random_substitution(&mut rng(seed), 5, 5);
        let m = s.incidence_matrix();
        for a in s.letters() {
            prop_assert_eq!(m.row_sum(a.index()), s.image(a).len() as u64);
        }
        for n in 1..=5u32 {
            prop_assert_eq!(s.power(n as usize).incidence_matrix(), m.pow(n));
        }
    }

    #[test]
    fn language_is_factor_closed_and_restricts(seed in any::<u64>()) {
        let s = random_substitution(&mut rng(seed), 3, 3);
        let big = factor_language(&s, 8);
        for w in big.sorted() {
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    prop_assert!(big.contains(&w[i..j]));
                }
            }
        }
        for c in 1..8 {
            let small = factor_language(&s, c);
            let cut: BTreeSet<_> = big.restrict(c).sorted().into_iter().collect();
            let direct: BTreeSet<_> = small.sorted().into_iter().collect();
            prop_assert_eq!(cut, direct);
        }
    }

    #[test]
    fn classification_matches_growth(seed in any::<u64>()) {
        let s = random_substitution(&mut rng(seed), 4, 3);
        let class = s.classify_letters();
        let all: BTreeSet<Letter> = class.long.iter().chain(&class.short).copied().collect();
        prop_assert_eq!(all.len(), s.len());
        prop_assert_eq!(class.long.len() + class.short.len(), s.len());
        for &a in &class.short {
            let lens: Vec<u64> = (0..=10).map(|n| s.word_length(&[a], n)).collect();
            let bound = s.len() as u64 * s.norms(1).1.pow(s.len() as u32);
            prop_assert!(lens.iter().all(|&l| l <= bound));
            prop_assert!(lens[s.len()..].windows(2).all(|w| w[0] == w[1]), "{:?}", lens);
            prop_assert!(s.image(a).iter().all(|&b| class.is_short(b)));
        }
        for &a in &class.long {
            let k = 2 * s.len();
            let lens: Vec<u64> = (0..=k).map(|n| s.word_length(&[a], n)).collect();
            prop_assert!(lens[k] > lens[0]);
        }
    }

    #[test]
    fn short_block_bound_holds(seed in any::<u64>()) {
        let s = random_substitution(&mut rng(seed), 4, 3);
        if let ShortBlockBound::Bound(m) = short_block_bound(&s, 10) {
            let class = s.classify_letters();
            let lang = factor_language(&s, m);
            prop_assert!(lang.of_length(m).iter().all(|w| w.iter().any(|&a| class.is_long(a))));
        }
    }

    #[test]
    fn tilings_reassemble(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_substitution(&mut r, 3, 4);
        let w = random_factor(&mut r, &s, 16);
        for t in one_word_tilings(&s, &w, false) {
            prop_assert_eq!(t.reassemble(&s), w.clone());
        }
        for t in one_word_tilings(&s, &w, true) {
            prop_assert_eq!((t.offset, t.tail), (0, 0));
            prop_assert_eq!(t.reassemble(&s), w.clone());
        }
    }

    #[test]
    fn successor_enumerates(seed in any::<u64>()) {
        let mut r = rng(seed);
        let depth = r.gen_range(1..=4);
        let d = random_diagram(&mut r, depth);
        for v in 0..d.levels[depth].len() {
            let all = enumerate_paths(&d, depth, v);
            prop_assert_eq!(&all, &lex_paths_oracle(&d, depth, v));
            prop_assert_eq!(&all[0], &min_path(&d, depth, v));
            for w in all.windows(2) {
                prop_assert_eq!(vershik_successor(&d, &w[0]), Some(w[1].clone()));
            }
            prop_assert_eq!(vershik_successor(&d, all.last().unwrap()), None);
        }
    }

    #[test]
    fn extremal_paths_follow_the_maps(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_substitution(&mut r, 5, 4);
        let counts: Vec<usize> = s.letters().map(|_| r.gen_range(1..=3)).collect();
        let d = stationary_from_substitution(&s, &counts);
        let ex = d.extremal_paths();
        for (paths, map) in [(&ex.minimal, d.min_map()), (&ex.maximal, d.max_map())] {
            prop_assert!(!paths.is_empty() && paths.len() <= s.len());
            for p in paths {
                for n in 1..=20 {
                    prop_assert_eq!(p.label(n), map[p.label(n + 1).index()]);
                }
            }
        }
    }

    #[test]
    fn telescoping_keeps_validity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let depth = r.gen_range(2..=5);
        let d = random_diagram(&mut r, depth);
        prop_assert!(d.validate().is_ok());
        let mut picks: Vec<usize> = (1..depth).filter(|_| r.gen_bool(0.5)).collect();
        picks.push(depth);
        let t = d.telescope(&picks).unwrap();
        prop_assert!(t.validate().is_ok());
        for v in 0..d.levels[depth].len() {
            prop_assert_eq!(enumerate_paths(&t, picks.len(), v).len(), enumerate_paths(&d, depth, v).len());
        }
    }

    #[test]
    fn distance_and_cylinders(seed in any::<u64>()) {
        let mut r = rng(seed);
        let depth = r.gen_range(2..=5);
        let d = random_diagram(&mut r, depth);
        let paths: Vec<Vec<usize>> =
            (0..d.levels[depth].len()).flat_map(|v| enumerate_paths(&d, depth, v)).collect();
        for x in &paths {
            for y in &paths {
                let k = x.iter().zip(y).take_while(|(a, b)| a == b).count();
                if k >= 1 {
                    prop_assert!(path_distance(x, y) <= 1.0 / k as f64);
                }
                for i in 1..=k {
                    prop_assert_eq!(vertex_at(&d, x, i), vertex_at(&d, y, i));
                }
            }
        }
    }

    #[test]
    fn encoding_intertwines(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_substitution(&mut r, 4, 4);
        let counts: Vec<usize> = s.letters().map(|a| r.gen_range(1..=s.image(a).len())).collect();
        let e = multi_edge_encoding(&stationary_from_substitution(&s, &counts)).unwrap();
        for a in s.letters() {
            prop_assert_eq!(e.project(&e.psi[a.index()]), vec![a; counts[a.index()]]);
            for n in 0..=4 {
                prop_assert_eq!(e.tau.expand(&e.psi[a.index()], n), e.lift(&s.expand(&[a], n)));
            }
        }
    }

    #[test]
    fn matching_rule_conserves_heights(seed in any::<u64>()) {
        let s = nesting_instance(&mut rng(seed));
        let sys = nesting_system(&s).unwrap();
        for (w, out) in sys.vocabulary.iter().zip(&sys.rule) {
            for n in 1..=4 {
                let parts: u64 = out.iter().map(|&j| s.word_length(&sys.vocabulary[j].base(), n - 1)).sum();
                prop_assert_eq!(parts, s.word_length(&w.base(), n));
            }
        }
    }

    #[test]
    fn return_words_tile_images(seed in any::<u64>()) {
        let s = random_substitution(&mut rng(seed), 3, 3);
        if let Ok(rs) = return_words(&s, 10) {
            let sp = s.power(rs.power);
            let words: BTreeSet<_> = rs.words.iter().collect();
            prop_assert_eq!(words.len(), rs.words.len());
            if let Ok(tau) = derivative_substitution(&rs, &s) {
                for (i, w) in rs.words.iter().enumerate() {
                    let image = sp.apply(w);
                    let idx = rs.decompose(&image).unwrap();
                    prop_assert_eq!(rs.expand(&idx), image);
                    let got: Vec<usize> = tau.image(Letter(i as u16)).iter().map(|a| a.index()).collect();
                    prop_assert_eq!(got, idx);
                }
            }
        }
    }

    #[test]
    fn component_count_bounded(seed in any::<u64>()) {
        let s = random_substitution(&mut rng(seed), 4, 4);
        let k = minimal_components(&s, 6).len();
        prop_assert!(k <= s.len());
        if let MPrimitivity::MPrimitive(rep) = is_m_primitive(&s, 6) {
            prop_assert_eq!(rep.m(), k);
        }
    }

    #[test]
    fn j_symbols_are_agreeable(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_substitution(&mut r, 3, 3);
        let a = Letter(r.gen_range(0..s.len()) as u16);
        for j in 0..=5 {
            let sym = build_j_symbol(&s, a.index(), j);
            prop_assert_eq!(sym.width(), s.word_length(&[a], j));
            for i in 1..=j {
                let finer: BTreeSet<u64> = sym.cuts(i - 1).into_iter().collect();
                prop_assert!(sym.cuts(i).iter().all(|c| finer.contains(c)));
            }
        }
    }

    #[test]
    fn orbit_windows_refine_and_share_cuts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_substitution(&mut r, 3, 3);
        let counts: Vec<usize> = s.letters().map(|_| r.gen_range(1..=2)).collect();
        let d = stationary_from_substitution(&s, &counts);
        if d.extremal_paths().maximal.len() != 1 || d.extremal_paths().minimal.len() != 1 {
            return Ok(());
        }
        let v = d.extremal_paths().minimal[0].period[0].index();
        let mut windows = Vec::new();
        for skip in [0, r.gen_range(1..20)] {
            let mut o = Orbit::stationary(&d, min_path(&d, 1, v), MaxToMin::Forced);
            for _ in 0..skip {
                o.step().unwrap();
            }
            windows.push(window_from_orbit(&d, &mut o, 24, 3).unwrap());
        }
        for w in &windows {
            prop_assert!(w.is_agreeable());
            prop_assert_eq!(w.truncate(2).rows, w.rows[..3].to_vec());
        }
        let c = depth_and_cuts(&windows[0], &windows[1]).unwrap();
        for j in 1..c.common_cuts.len() {
            let coarse: BTreeSet<i64> = c.common_cuts[j - 1].iter().copied().collect();
            prop_assert!(c.common_cuts[j].iter().all(|x| coarse.contains(x)));
        }
    }

    #[test]
    fn lambda_seeds_verify(seed in any::<u64>()) {
        let s = random_substitution(&mut rng(seed), 3, 3);
        if let Ok(seeds) = lambda_seeds(&s) {
            let n = s.len();
            prop_assert!(seeds.len() <= (n + 1) * (n + 1) * n * n);
            let lang = factor_language(&s, 2);
            for x in seeds {
                prop_assert!(lang.contains(&[x.a, x.b]));
                prop_assert_eq!(*s.expand(&[x.a], x.p).last().unwrap(), x.a);
                prop_assert_eq!(s.expand(&[x.b], x.p)[0], x.b);
                let small = lambda_window(&s, x, 4);
                let big = lambda_window(&s, x, 9);
                prop_assert_eq!(&big.letters[5..13], &small.letters[..]);
            }
        }
    }

    #[test]
    fn cut_positions_recurrence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_substitution(&mut r, 3, 4);
        let mut entries = vec![(Letter(r.gen_range(0..s.len()) as u16), 0)];
        for _ in 0..5 {
            let prev = entries.last().unwrap().0;
            let options: Vec<(Letter, usize)> = s
                .letters()
                .flat_map(|a| s.image(a).iter().enumerate().filter(move |(_, &b)| b == prev).map(move |(i, _)| (a, i)))
                .collect();
            if options.is_empty() {
                break;
            }
            entries.push(options[r.gen_range(0..options.len())]);
        }
        let chain = ChainPrefix::new(&s, entries.clone()).unwrap();
        let j = chain.cut_positions(&s);
        prop_assert_eq!(j.len(), entries.len());
        for n in 0..chain.depth() {
            let (a, i) = entries[n + 1];
            prop_assert_eq!(j[n + 1] - j[n], s.expand(&s.image(a)[..i], n).len() as u64);
            prop_assert!(j[n + 1] >= j[n]);
        }
    }
}

#[test]
fn chacon_partitions_nest() {
    let s = chacon();
    let x = s.expand(&[Letter(0)], 6);
    let mut r = rng(11);
    let mut rec = Recognizer::new(&s, 64);
    for _ in 0..24 {
        let start = r.gen_range(0..x.len() - 64);
        let w = &x[start..start + 64];
        let Recognition::Unique(chain) = rec.recognize(w, 3).unwrap() else {
            panic!("window at {start} ambiguous");
        };
        for k in 1..chain.levels.len() {
            let (lo, hi) = chain.levels[k].core;
            let finer: BTreeSet<isize> = chain.levels[k - 1].cuts.iter().copied().collect();
            for c in &chain.levels[k].cuts {
                assert!(*c < lo || *c >= hi || finer.contains(c), "window at {start}, level {k}");
            }
        }
        let mut chain = chain;
        chain.levels.truncate(2);
        let win = window_from_parse(&s, w, &chain, 4).unwrap();
        assert!(win.is_agreeable());
        for i in 0..=win.depth() {
            let mut short = chain.clone();
            short.levels.truncate(i);
            assert_eq!(window_from_parse(&s, w, &short, 4).unwrap(), win.truncate(i));
        }
    }
}
