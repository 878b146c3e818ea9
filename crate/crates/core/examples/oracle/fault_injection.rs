// A corrupted vanishing order or coefficient is caught by the oracle at
// the object that was changed.
//
//     cargo run -p petri-loci --release --example fault_injection

use petri_loci::chain_sections::{Instance, Point, SectionLabel};
use petri_loci::exact_oracle::{inject_fault, Fault, OracleConfig, OracleSession};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let inst = Instance::build(4, 1, 3, 0)?;
    let session = OracleSession::find(&inst.chain.components, 29, &OracleConfig::default())?;
    println!("clean: pass {}", session.verify(&inst)?.pass);

    let bad = inject_fault(&inst, Fault::Order { label: SectionLabel::T(2), i: 3, point: Point::Q, delta: 1 });
    println!("t_2 at Q_3 raised: {:?}", session.verify(&bad)?.failures());

    let inst = Instance::build(7, 1, 4, 1)?;
    let session = OracleSession::find(&inst.chain.components, 29, &OracleConfig::default())?;
    let bad = inject_fault(&inst, Fault::Coefficient { l: 1, i: 7, term: 0 });
    println!("x_1 coefficient on C_7 changed: {:?}", session.verify(&bad)?.failures());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
