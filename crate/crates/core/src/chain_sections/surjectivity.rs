use super::{product_orders, ChainError, VanishingTable};
use crate::fillings::{Filling, Spot};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Point {
    P,
    Q,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::P => write!(f, "P"),
            Point::Q => write!(f, "Q"),
        }
    }
}

/// One elimination: at `(component, point)` the product for `spot` had the
/// strictly smallest order among those still remaining.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelStep {
    pub spot: Spot,
    pub component: usize,
    pub point: Point,
    pub order: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Certificate {
    /// Every product was eliminated; the steps order them triangularly.
    Success { steps: Vec<PeelStep> },
    /// No point separates any of the remaining products.
    Failure { peeled: Vec<PeelStep>, stuck: Vec<Spot> },
}

impl Certificate {
    pub fn is_success(&self) -> bool {
        matches!(self, Certificate::Success { .. })
    }
}

/// Independence certificate for the products `s_a ⊗ t_b` over `spots`.
///
/// A product with a strictly smaller order than all others at some point of
/// some component cannot occur in a vanishing combination; removing it and
/// repeating exhausts the list exactly when the images are triangular with
/// respect to orders. Removal never destroys another product's strict
/// minimum, so the greedy order is complete.
pub fn surjectivity_certificate(
    filling: &Filling,
    table: &VanishingTable,
    spots: &[Spot],
) -> Result<Certificate, ChainError> {
    let mut seen = BTreeMap::new();
    for &s in spots {
        if !filling.contains_spot(s) {
            return Err(ChainError::SpotOutsideGrid(s));
        }
        let index = filling.get(s);
        if let Some(&first) = seen.get(&index) {
            return Err(ChainError::RepeatedIndex { index, first, second: s });
        }
        seen.insert(index, s);
    }

    let mut remaining: Vec<Spot> = spots.to_vec();
    let mut steps = Vec::with_capacity(spots.len());
    while !remaining.is_empty() {
        match find_separated(table, &remaining) {
            Some(step) => {
                remaining.retain(|&s| s != step.spot);
                steps.push(step);
            }
            None => return Ok(Certificate::Failure { peeled: steps, stuck: remaining }),
        }
    }
    Ok(Certificate::Success { steps })
}

fn find_separated(table: &VanishingTable, remaining: &[Spot]) -> Option<PeelStep> {
    for component in 1..=table.g {
        for point in [Point::P, Point::Q] {
            let order = |s: &Spot| {
                let o = product_orders(table, s.a, s.b, component);
                match point {
                    Point::P => o.p,
                    Point::Q => o.q,
                }
            };
            let min = remaining.iter().map(order).min()?;
            let mut at_min = remaining.iter().filter(|s| order(s) == min);
            let first = at_min.next()?;
            if at_min.next().is_none() {
                return Some(PeelStep { spot: *first, component, point, order: min });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{canonical, sweep};
    use super::*;

    #[test]
    fn square_instance_succeeds() {
        let (f, _, _, table) = canonical(4, 1, 3, 0);
        let spots = f.distinct_index_spots();
        assert_eq!(spots.len(), 4);
        let cert = surjectivity_certificate(&f, &table, &spots).unwrap();
        assert!(cert.is_success(), "{cert:?}");
    }

    #[test]
    fn reference_rectangles_succeed() {
        for (g, r, d, k) in [(31, 4, 28, 4), (50, 5, 46, 4), (7, 1, 4, 1)] {
            let (f, _, _, table) = canonical(g, r, d, k);
            let spots = f.distinct_index_spots();
            assert_eq!(spots.len(), g as usize);
            assert!(surjectivity_certificate(&f, &table, &spots).unwrap().is_success());
        }
    }

    #[test]
    fn sweep_succeeds() {
        for (g, r, d, k) in sweep() {
            let (f, _, _, table) = canonical(g, r, d, k);
            let spots = f.distinct_index_spots();
            assert!(surjectivity_certificate(&f, &table, &spots).unwrap().is_success(), "({g},{r},{d},{k})");
        }
    }

    #[test]
    fn shared_index_rejected() {
        let (f, _, _, table) = canonical(7, 1, 4, 1);
        let spots = f.spots_of(6).to_vec();
        assert!(matches!(
            surjectivity_certificate(&f, &table, &spots),
            Err(ChainError::RepeatedIndex { index: 6, .. })
        ));
    }

    #[test]
    fn equal_products_get_stuck() {
        let (f, _, _, table) = canonical(4, 1, 3, 0);
        // Two copies of the same product can never be separated.
        let cert = surjectivity_certificate(&f, &table, &[Spot::new(1, 1)]).unwrap();
        assert!(cert.is_success());
        let dup = find_separated(&table, &[Spot::new(1, 1), Spot::new(1, 1)]);
        assert!(dup.is_none());
    }
}
