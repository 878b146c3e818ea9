// Kernel elements glued along the chain and the orders of their images
// under the second multiplication map.
//
//     cargo run -p petri-loci --example kernel_elements

use petri_loci::chain_sections::{Instance, KernelCertificate};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let inst = Instance::build(31, 4, 28, 4)?;
    let g = inst.chain.g as i64;
    for (el, mu) in inst.elements.iter().zip(&inst.mu1) {
        println!("x_{}:", el.l);
        for c in el.components.iter().filter(|c| c.i % 5 == 1 || c.i as i64 == g) {
            let terms: Vec<String> = c
                .combo
                .iter()
                .map(|t| match t.coeff {
                    Some(x) => format!("{x:+} s_{} t_{}", t.a, t.b),
                    None => format!("* s_{} t_{}", t.a, t.b),
                })
                .collect();
            let cert = match &c.certificate {
                KernelCertificate::Lindep { bound, h0, terms } => format!("{terms} terms above {bound}, h0 {h0}"),
                KernelCertificate::Antisymmetric => "antisymmetric".into(),
            };
            println!("  C_{:<2} ({},{}) {}  [{cert}]", c.i, c.ord_p, c.ord_q, terms.join(" "));
        }
        let sums: Vec<i64> = (1..g as usize).map(|i| el.node_sum(i)).collect();
        println!("  node sums min {} max {}", sums.iter().min().unwrap(), sums.iter().max().unwrap());
        println!(
            "  image orders ({}, {}), fixed part {}, ramification {}",
            mu.ord_p, mu.ord_q, mu.fixed, mu.ramification
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
