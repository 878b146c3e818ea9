// Exact Riemann-Roch spaces on a curve over a prime field where `P - Q`
// has order 3, and a Petri matrix built from them.
//
//     cargo run -p petri-loci --example riemann_roch

use petri_loci::elliptic_pic::{h0_with_vanishing, BundleClass, ComponentModel};
use petri_loci::exact_oracle::{aspect_divisor, component_petri, find_realization, rr_basis, SearchLimits};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let model = ComponentModel::Torsion(3);
    let real = find_realization(model, 50, &SearchLimits::default())?;
    println!(
        "y^2 = x^3 + {}x + {} over F_{}: {} points, P = {}, Q = {}, order {}",
        real.a, real.b, real.prime, real.points, real.p_point, real.q_point, real.order
    );

    for (deg, offset) in [(0, 0), (0, 1), (0, 3), (2, 1), (5, -2)] {
        let class = BundleClass::new(model, deg, offset);
        let div = aspect_divisor(&real, &class)?;
        let basis = rr_basis(&real.curve, &div)?;
        println!("{class}: dim {} (model {})", basis.len(), h0_with_vanishing(model, &class, 0, 0));
    }

    let v = rr_basis(&real.curve, &aspect_divisor(&real, &BundleClass::new(model, 2, 0))?)?;
    let w = rr_basis(&real.curve, &aspect_divisor(&real, &BundleClass::new(model, 3, 1))?)?;
    let petri = component_petri(&real.curve, &v, &w)?;
    println!("multiplication {} x {}: rank {}, kernel {}", petri.rows, petri.cols, petri.rank, petri.kernel_dim);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
