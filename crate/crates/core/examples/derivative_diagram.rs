//! Return words, the derivative substitution and its properness.

use vershik::constructions::{diagram_via_derivative, is_proper};
use vershik::words::Substitution;

fn main() {
    for text in ["0 -> 00s0\ns -> s\n1 -> 0110", "a -> ab\nb -> ba"] {
        let s: Substitution = text.parse().unwrap();
        let m = diagram_via_derivative(&s).unwrap();
        let names: Vec<String> = m.returns.words.iter().map(|w| s.render(w)).collect();
        println!("return words {} (power {})", names.join(" "), m.returns.power);
        print!("{}", m.tau);
        println!("proper: {:?}  input proper: {:?}", m.proper, is_proper(&s, 6));
        println!("top counts {:?}\n", m.diagram.top_counts());
    }
}
