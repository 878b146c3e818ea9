// Triangularity certificate for the products attached to distinct
// indices.
//
//     cargo run -p petri-loci --example surjectivity

use petri_loci::chain_sections::{surjectivity_certificate, Certificate, Instance};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (g, r, d, k) in [(4, 1, 3, 0), (7, 1, 4, 1)] {
        let inst = Instance::build(g, r, d, k)?;
        let spots = inst.filling.distinct_index_spots();
        println!("({g},{r},{d},{k}): {} spots", spots.len());
        match surjectivity_certificate(&inst.filling, &inst.table, &spots)? {
            Certificate::Success { steps } => {
                for s in steps {
                    println!("  {} peeled at {}_{} with order {}", s.spot, s.point, s.component, s.order);
                }
            }
            Certificate::Failure { peeled, stuck } => {
                println!("  stuck after {} steps on {stuck:?}", peeled.len());
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
