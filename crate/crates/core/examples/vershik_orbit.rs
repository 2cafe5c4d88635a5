//! Runs the Vershik map on the derivative diagram of Chacon and reads the
//! subshift back off the towers.

use vershik::bratteli::{min_path, MaxToMin, Orbit};
use vershik::constructions::diagram_via_derivative;
use vershik::words::Substitution;

fn main() {
    let s: Substitution = "0 -> 00s0\ns -> s\n1 -> 0110".parse().unwrap();
    let m = diagram_via_derivative(&s).unwrap();
    let d = &m.diagram;
    let v = d.extremal_paths().minimal[0].period[0].index();
    let mut orbit = Orbit::stationary(d, min_path(d, 1, v), MaxToMin::Forced);
    let mut letters = Vec::new();
    for i in 0..80 {
        if i > 0 {
            orbit.step().unwrap();
        }
        let v = orbit.vertex(1).unwrap();
        letters.push(m.returns.words[v][orbit.top_rank()]);
    }
    println!("{}", s.render(&letters));
}
