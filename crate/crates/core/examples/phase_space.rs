//! Two-sided fixed points of Thue-Morse and a nested chain for Chacon.

use vershik::phase_space::{core_membership, lambda_seeds, lambda_window, m0_window, ChainPrefix};
use vershik::words::{Letter, Substitution};

fn main() {
    let tm: Substitution = "a -> ab\nb -> ba".parse().unwrap();
    for seed in lambda_seeds(&tm).unwrap() {
        let w = lambda_window(&tm, seed, 8);
        println!(
            "p = {}  {}  {:?}",
            seed.p,
            tm.alphabet().render_dotted(&w.letters, w.dot),
            core_membership(&tm, &w, 3)
        );
    }
    let s: Substitution = "0 -> 00s0\ns -> s\n1 -> 0110".parse().unwrap();
    let z = Letter(0);
    let chain = ChainPrefix::new(&s, vec![(z, 0), (z, 1), (z, 1), (z, 3)]).unwrap();
    println!("j = {:?}", chain.cut_positions(&s));
    let w = m0_window(&s, &chain, 4).unwrap();
    println!("{}", s.alphabet().render_dotted(&w.letters, w.dot));
}
