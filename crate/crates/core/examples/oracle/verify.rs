// Exact verification of a small instance on curves over a prime field.
//
//     cargo run -p petri-loci --release --example verify

use petri_loci::chain_sections::Instance;
use petri_loci::exact_oracle::{verify_instance, OracleConfig};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let inst = Instance::build(7, 1, 4, 1)?;
    let report = verify_instance(&inst, &OracleConfig::default())?;
    println!("prime {}, {} checks, pass {}", report.prime, report.check_count(), report.pass);
    for real in &report.realizations {
        println!("  {}: y^2 = x^3 + {}x + {}, P = {}", real.model, real.a, real.b, real.p_point);
    }
    for comp in report.components.iter().filter(|c| c.i >= 6) {
        for check in &comp.checks {
            println!("  C_{} {}: {} vs {}", comp.i, check.name, check.predicted, check.computed);
        }
    }
    for check in &report.chain_checks {
        println!("  {}: {} vs {}", check.name, check.predicted, check.computed);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
