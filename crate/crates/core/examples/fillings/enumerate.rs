// Enumeration of admissible fillings, with and without torsion.
//
//     cargo run -p petri-loci --example enumerate

use petri_loci::fillings::{enumerate_admissible, hook_length_count, EnumerationConfig};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let config = EnumerationConfig::default();

    for (alpha, beta) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        let n = enumerate_admissible(alpha, beta, (alpha * beta) as u32, &[], config)?.len();
        println!("{alpha} x {beta}: {n} tableaux, hook formula {}", hook_length_count(alpha, beta));
    }

    // fewer indices than cells forces repeats
    let all = enumerate_admissible(2, 3, 5, &[2, 3], config)?;
    println!("\n2 x 3 with indices 1..=5 and torsion {{2, 3}}: {} fillings", all.len());
    for (filling, torsion) in all.iter().take(4) {
        print!("{}", filling.render_ascii());
        println!("  orders {:?}", torsion.orders());
    }

    match enumerate_admissible(4, 5, 20, &[], config) {
        Ok(v) => println!("unexpected: {} fillings", v.len()),
        Err(e) => println!("\n4 x 5: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
