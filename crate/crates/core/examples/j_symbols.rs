//! j-symbols, orbit windows and the expansiveness witness search.

use vershik::bratteli::{min_path, stationary_from_substitution, MaxToMin, Orbit};
use vershik::coding::{build_j_symbol, depth_and_cuts, expansiveness_witness_search, window_from_orbit, WitnessSearch};
use vershik::words::Substitution;

fn main() {
    let s: Substitution = "0 -> 00s0\ns -> s\n1 -> 0110".parse().unwrap();
    print!("{}", build_j_symbol(&s, 0, 2).render());

    let odo: Substitution = "a -> aa".parse().unwrap();
    let d = stationary_from_substitution(&odo, &[2]);
    let mut windows = Vec::new();
    for skip in [0, 4] {
        let mut o = Orbit::stationary(&d, min_path(&d, 1, 0), MaxToMin::Forced);
        for _ in 0..skip {
            o.step().unwrap();
        }
        windows.push(window_from_orbit(&d, &mut o, 16, 3).unwrap());
    }
    print!("{}", windows[0].render());
    let c = depth_and_cuts(&windows[0], &windows[1]).unwrap();
    println!("depth {:?}, common cuts {:?}", c.depth, c.common_cuts);
    match expansiveness_witness_search(&d, 4, 32, 100_000).unwrap() {
        WitnessSearch::Witness(w) => println!("witness at i = 4: {:?} / {:?}", w.x, w.y),
        WitnessSearch::NoneWithinBudget { work, .. } => println!("none within budget ({work})"),
    }
}
