//! Incidence matrix, letter classes and bounded factor language of Chacon.

use vershik::language::{factor_language, periodicity_witness_search, short_block_bound};
use vershik::words::Substitution;

fn main() {
    let s: Substitution = "0 -> 00s0\ns -> s\n1 -> 0110".parse().unwrap();
    println!("{s}");
    println!("incidence:\n{}", s.incidence_matrix());
    let class = s.classify_letters();
    println!("long: {}  short: {}", s.render(&class.long), s.render(&class.short));
    println!("nesting: {}", s.nesting_class());
    println!("short blocks: {:?}", short_block_bound(&s, 16));
    let lang = factor_language(&s, 6);
    for n in 1..=6 {
        println!("p({n}) = {}", lang.of_length(n).len());
    }
    match periodicity_witness_search(&s, 6, 4) {
        Some(u) => println!("({})^4 occurs", s.render(&u)),
        None => println!("no fourth power of a word of length ≤ 6"),
    }
}
