// Vanishing orders of the sections `s_a` and dual sections `t_b` along a
// chain, node compatibility, and orders of the products.
//
//     cargo run -p petri-loci --example vanishing_orders

use petri_loci::chain_sections::{membership, product_orders, Instance};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let inst = Instance::build(7, 1, 4, 1)?;
    let table = &inst.table;
    print!("{}", inst.filling.render_ascii());
    for (i, model) in inst.chain.components.iter().enumerate() {
        println!("C_{}: {model}", i + 1);
    }
    print!("\n{}", table.to_tsv());

    for label in table.labels() {
        let sums: Vec<i64> = (1..inst.chain.g).map(|i| table.node_sum(label, i)).collect();
        println!("{label}: degree {}, node sums {sums:?}", table.degree(label));
    }

    let g = inst.chain.g as i64;
    println!("\nproducts on C_6 (totals 2g-4 plus membership, 2g-4 = {}):", 2 * g - 4);
    for a in 1..=inst.filling.alpha() {
        for b in 1..=inst.filling.beta() {
            let o = product_orders(table, a, b, 6);
            println!("  s_{a} t_{b}: {o} total {}, membership {}", o.total(), membership(&inst.filling, a, b, 6));
        }
    }

    for c in &inst.aspects.components {
        println!("C_{}: L = {}, dual = {}", c.i, c.bundle, c.dual);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
