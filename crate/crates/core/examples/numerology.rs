// Brill-Noether numbers and extension data over a small parameter box.
//
//     cargo run -p petri-loci --example numerology

use petri_loci::numerology::{extension_params, theta_expected_kernel, NumerologyRecord};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("{}", NumerologyRecord::TSV_HEADER);
    for (g, r, d) in [(4, 1, 3), (7, 1, 4), (31, 4, 28), (50, 5, 46)] {
        println!("{}", NumerologyRecord::compute(g, r, d, None)?.tsv_row());
    }

    // every k in [-rho, r] gives a base chain with rho = -k
    let (g, r, d) = (33, 4, 30);
    for k in 0..=r {
        match extension_params(g, r, d, k) {
            Ok(e) => println!("k = {k}: t = {}, base genus {}, base degree {}", e.t, e.g0, e.d0),
            Err(e) => println!("k = {k}: {e}"),
        }
    }

    for r in 0..5 {
        println!("theta characteristic with r = {r}: expected kernel {}", theta_expected_kernel(r));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
