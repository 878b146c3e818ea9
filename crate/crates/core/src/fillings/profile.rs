use super::{Filling, Index, Spot};
use serde::Serialize;

/// Row fill counts of the region holding indices `<= i - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub i: Index,
    /// `counts[b - 1]` = number of cells in row `b` with value `<= i - 1`.
    pub counts: Vec<usize>,
}

impl Profile {
    /// Whether each row's filled cells form an initial segment.
    pub fn is_left_justified(&self, filling: &Filling) -> bool {
        self.counts.iter().enumerate().all(|(row, &c)| {
            filling.row(row + 1).iter().enumerate().all(|(col, &v)| (v < self.i) == (col < c))
        })
    }
}

pub fn profile(filling: &Filling, i: Index) -> Profile {
    assert!(i >= 1 && i <= filling.g() + 1, "threshold {i} outside 1..={}", filling.g() + 1);
    let counts = (1..=filling.beta()).map(|b| h_prime_count(filling, i, b)).collect();
    Profile { i, counts }
}

/// `h(i-1, a)`: cells in column `a` with value `<= i - 1`.
pub fn h_count(filling: &Filling, i: Index, a: usize) -> usize {
    filling.column(a).into_iter().filter(|&v| v < i).count()
}

/// `h'(i-1, b)`: cells in row `b` with value `<= i - 1`.
pub fn h_prime_count(filling: &Filling, i: Index, b: usize) -> usize {
    filling.row(b).iter().filter(|&&v| v < i).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridDistance {
    pub horizontal: i64,
    pub vertical: i64,
}

impl GridDistance {
    pub fn total(&self) -> i64 {
        self.horizontal + self.vertical
    }
}

/// Signed distance from `spot` to the broken line bounding the indices
/// `<= i - 1`: negative inside the filled region, non-negative outside.
pub fn grid_distance(filling: &Filling, i: Index, spot: Spot) -> GridDistance {
    assert!(filling.contains_spot(spot), "spot {spot} outside grid");
    let signed = |pos: usize, count: usize| -> i64 {
        let (pos, count) = (pos as i64, count as i64);
        if pos <= count {
            pos - count
        } else {
            pos - count - 1
        }
    };
    GridDistance {
        horizontal: signed(spot.a, h_prime_count(filling, i, spot.b)),
        vertical: signed(spot.b, h_count(filling, i, spot.a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fillings::canonical_filling;

    fn rect_5x7() -> Filling {
        canonical_filling(31, 4, 28, 4).unwrap().0
    }

    #[test]
    fn profile_examples() {
        let f = rect_5x7();
        assert_eq!(profile(&f, 22).counts, vec![4, 4, 4, 3, 3, 3, 0]);
        assert_eq!(profile(&f, 1).counts, vec![0; 7]);
        assert_eq!(profile(&f, 32).counts, vec![5; 7]);
        for i in 1..=32 {
            assert!(profile(&f, i).is_left_justified(&f));
        }
    }

    #[test]
    fn counts() {
        let f = rect_5x7();
        assert_eq!(h_count(&f, 22, 4), 3);
        assert_eq!(h_count(&f, 1, 1), 0);
        assert_eq!(h_prime_count(&f, 32, 7), 5);
    }

    #[test]
    fn distance_anchors() {
        let f = rect_5x7();
        assert_eq!(grid_distance(&f, 22, Spot::new(5, 6)), GridDistance { horizontal: 1, vertical: 5 });
        assert_eq!(grid_distance(&f, 22, Spot::new(3, 3)), GridDistance { horizontal: -1, vertical: -3 });
        assert_eq!(grid_distance(&f, 1, Spot::new(1, 1)), GridDistance { horizontal: 0, vertical: 0 });
    }

    #[test]
    fn doubled_spots_are_equidistant_from_late_lines() {
        for (g, r, d, k) in [(31, 4, 28, 4), (50, 5, 46, 4), (7, 1, 4, 1)] {
            let (f, _) = canonical_filling(g, r, d, k).unwrap();
            let (alpha, beta) = (f.alpha(), f.beta());
            for l in 1..=k as usize {
                for i in (g - k) as Index..=g as Index + 1 {
                    let x = grid_distance(&f, i, Spot::new(alpha - l, beta));
                    let y = grid_distance(&f, i, Spot::new(alpha, beta - l));
                    assert_eq!(x.total(), y.total(), "l={l} i={i}");
                }
            }
        }
    }
}
