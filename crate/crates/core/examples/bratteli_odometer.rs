//! The dyadic odometer as a stationary ordered diagram: paths, successor,
//! telescoping and DOT.

use vershik::bratteli::{enumerate_paths, export_dot, min_path, stationary_from_substitution, vershik_successor};
use vershik::words::Substitution;

fn main() {
    let s: Substitution = "a -> aa".parse().unwrap();
    let d = stationary_from_substitution(&s, &[2]).unroll(3);
    d.validate().unwrap();
    let mut x = Some(min_path(&d, 3, 0));
    while let Some(p) = x {
        println!("{p:?}");
        x = vershik_successor(&d, &p);
    }
    let t = d.telescope(&[1, 3]).unwrap();
    println!("telescoped to levels 1, 3: {} paths", enumerate_paths(&t, 2, 0).len());
    print!("{}", export_dot(&d));
}
