// Appending generic components when `rho + k > 0`.
//
//     cargo run -p petri-loci --example extension

use petri_loci::chain_sections::{BasisKind, Instance};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let inst = Instance::build(33, 4, 30, 4)?;
    let ext = inst.extension.as_ref().ok_or("expected appended components")?;
    println!("t = {}, base genus {}, full genus {}", ext.t, ext.g0, ext.chain.g);

    for i in ext.g0 - 1..=ext.chain.g {
        let c = ext.aspects.component(i);
        println!("C_{i} {}: L = {}, dual = {}", c.model, c.bundle, c.dual);
    }

    for (base, el) in inst.elements.iter().zip(&ext.elements) {
        let b = base.component(ext.g0);
        let e = el.component(ext.g0);
        print!("x_{}: on C_{} ({},{}) -> ({},{})", el.l, ext.g0, b.ord_p, b.ord_q, e.ord_p, e.ord_q);
        for c in el.components.iter().filter(|c| c.basis == BasisKind::Sigma) {
            print!(", C_{} ({},{})", c.i, c.ord_p, c.ord_q);
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
