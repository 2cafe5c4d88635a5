//! Turns a diagram with several top edges per vertex into a substitution
//! on (vertex, edge) pairs and checks τ∘ψ = ψ∘σ.

use vershik::bratteli::stationary_from_substitution;
use vershik::constructions::{encoding_power, multi_edge_encoding_power};
use vershik::words::Substitution;

fn main() {
    let s: Substitution = "a -> ab\nb -> a".parse().unwrap();
    let d = stationary_from_substitution(&s, &[2, 1]);
    let k = encoding_power(&d, 4).unwrap();
    let e = multi_edge_encoding_power(&d, k).unwrap();
    println!("power {k}\n{}", e.tau);
    let sk = d.read_substitution().power(k);
    for a in sk.letters() {
        let lhs = e.tau.apply(&e.psi[a.index()]);
        assert_eq!(lhs, e.lift(&sk.apply(&[a])));
        println!("ψ({}) = {}", sk.render(&[a]), e.tau.render(&e.psi[a.index()]));
    }
}
