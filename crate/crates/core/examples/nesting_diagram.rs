//! Marked words, matching rule and the resulting diagram for Chacon.

use vershik::constructions::{nesting_diagram, nesting_system};
use vershik::words::Substitution;

fn main() {
    let s: Substitution = "0 -> 00s0\ns -> s\n1 -> 0110".parse().unwrap();
    let sys = nesting_system(&s).unwrap();
    for (w, out) in sys.vocabulary.iter().zip(&sys.rule) {
        let rhs: Vec<String> = out.iter().map(|&j| sys.vocabulary[j].render(s.alphabet())).collect();
        println!("{:>7} -> {}   height {}", w.render(s.alphabet()), rhs.join(" "), w.base().len());
    }
    let d = nesting_diagram(&s).unwrap();
    println!("top counts {:?}", d.top_counts());
    println!("read substitution:\n{}", d.read_substitution());
}
