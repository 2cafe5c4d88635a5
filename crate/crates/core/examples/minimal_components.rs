//! Minimal components, fixed pairs and m-primitivity.

use vershik::constructions::{is_m_primitive, minimal_components, render_set, MPrimitivity};
use vershik::words::Substitution;

fn main() {
    let s: Substitution = "a -> ab\nb -> ba\nc -> cd\nd -> dc\ne -> ae".parse().unwrap();
    for c in minimal_components(&s, 8) {
        let pair = c.pair.map(|p| format!("{}{} p={}", s.render(&[p.r]), s.render(&[p.l]), p.p));
        println!("{}  pair {}", render_set(s.alphabet(), &c.letters), pair.unwrap_or_else(|| "-".into()));
    }
    match is_m_primitive(&s, 8) {
        MPrimitivity::MPrimitive(rep) => {
            println!("m = {}, extra {}", rep.m(), render_set(s.alphabet(), &rep.extra));
            println!("language stable: {}; letters in subshift: {}", rep.language_stable, rep.letters_in_subshift);
        }
        MPrimitivity::NotMPrimitive(why) => println!("not m-primitive: {why}"),
    }
}
