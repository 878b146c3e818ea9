// Canonical fillings of the two reference rectangles, with their doubled
// indices and torsion orders.
//
//     cargo run -p petri-loci --example canonical

use petri_loci::fillings::{canonical_filling, is_repetition_minimal, validate};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (g, r, d, k) in [(31, 4, 28, 4), (50, 5, 46, 4)] {
        let (filling, torsion) = canonical_filling(g, r, d, k)?;
        println!("g = {g}, r = {r}, d = {d}, k = {k}: {} x {}", filling.alpha(), filling.beta());
        print!("{}", filling.render_ascii());
        for (index, spots) in filling.repeated() {
            let order = torsion.order(index).unwrap_or(0);
            let at: Vec<String> = spots.iter().map(|s| s.to_string()).collect();
            println!("  {index} at {} has torsion order {order}", at.join(" "));
        }
        let report = validate(&filling, &torsion);
        println!(
            "  admissible {}, uses every index {}, repetition-minimal {}\n",
            report.admissible,
            report.coverage,
            is_repetition_minimal(&filling, &torsion, &[2, 4, 6, 8])
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
