//! Desubstitutes a window of the Chacon fixed point three levels deep.

use vershik::recognize::{one_word_tilings, Recognition, Recognizer};
use vershik::words::Substitution;

fn main() {
    let s: Substitution = "0 -> 00s0\ns -> s\n1 -> 0110".parse().unwrap();
    let x = s.expand(&s.word("0").unwrap(), 6);
    let w = &x[200..264];
    println!("window: {}", s.render(w));
    for t in one_word_tilings(&s, &w[..12], false) {
        println!("tiling of the first 12: parent {} offset {} tail {}", s.render(&t.parent), t.offset, t.tail);
    }
    let mut rec = Recognizer::new(&s, w.len());
    match rec.recognize(w, 3).unwrap() {
        Recognition::Unique(chain) => {
            for (k, level) in chain.levels.iter().enumerate() {
                println!("level {}: core {:?} cuts {:?} parent {}", k + 1, level.core, level.cuts, s.render(&level.parent()));
            }
        }
        Recognition::Ambiguous(rep) => println!("ambiguous at level {}", rep.level),
    }
}
