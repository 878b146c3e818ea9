// Profiles of the region filled before index `i` and signed distances to
// its boundary.
//
//     cargo run -p petri-loci --example grid_distance

use petri_loci::fillings::{canonical_filling, grid_distance, h_count, profile, Spot};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (filling, _) = canonical_filling(31, 4, 28, 4)?;
    let i = 22;
    let p = profile(&filling, i);
    println!("row fill counts below {i}: {:?}", p.counts);
    println!("left-justified: {}", p.is_left_justified(&filling));
    for a in 1..=filling.alpha() {
        println!("column {a}: {} cells below {i}", h_count(&filling, i, a));
    }

    for (a, b) in [(5, 6), (3, 3), (1, 1), (5, 7)] {
        let dist = grid_distance(&filling, i, Spot::new(a, b));
        println!("spot ({a},{b}) holding {}: {:?}, total {}", filling.at(a, b), dist, dist.total());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
