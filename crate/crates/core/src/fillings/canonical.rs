use super::{Filling, FillingError, Index, TorsionAssignment};
use crate::numerology::BnParams;

/// Base-case filling with `k = -rho` doubled indices.
///
/// Distinct indices `1..g-k-1` go column-major through the top-left
/// `(alpha-1) × (beta-1)` block, then down the first `beta-k-1` cells of the
/// last column, then along the first `alpha-k-1` cells of the last row.
/// Index `g-l` sits at `(alpha-l, beta)` and `(alpha, beta-l)` with torsion
/// order `2l`, and `g` closes the corner.
pub fn canonical_filling(g: i64, r: i64, d: i64, k: i64) -> Result<(Filling, TorsionAssignment), FillingError> {
    let params = BnParams::new(g, r, d, None)?;
    let minus_rho = -params.rho();
    if k != minus_rho {
        return Err(FillingError::KNotMinusRho { k, minus_rho });
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let bound = alpha.min(beta);
    if k < 0 || k >= bound {
        return Err(FillingError::KOutOfRange { k, bound });
    }
    let (alpha, beta, k) = (alpha as usize, beta as usize, k as usize);
    let g_idx = g as Index;

    let mut cells = vec![0; alpha * beta];
    let mut put = |a: usize, b: usize, v: Index| cells[(b - 1) * alpha + (a - 1)] = v;
    let mut next: Index = 1;
    for a in 1..alpha {
        for b in 1..beta {
            put(a, b, next);
            next += 1;
        }
    }
    for b in 1..beta - k {
        put(alpha, b, next);
        next += 1;
    }
    for a in 1..alpha - k {
        put(a, beta, next);
        next += 1;
    }
    debug_assert_eq!(next as usize, g as usize - k);

    let mut torsion = TorsionAssignment::new();
    for l in 1..=k {
        let v = g_idx - l as Index;
        put(alpha - l, beta, v);
        put(alpha, beta - l, v);
        torsion.set(v, 2 * l as u32);
    }
    put(alpha, beta, g_idx);

    let filling = Filling::from_cells(alpha, beta, g_idx, cells)?;
    Ok((filling, torsion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fillings::{occurrence_distance, validate, Spot};

    #[test]
    fn square_base_case() {
        let (f, t) = canonical_filling(4, 1, 3, 0).unwrap();
        assert_eq!(f.cells(), &[1, 2, 3, 4]);
        assert!(t.orders().is_empty());
    }

    #[test]
    fn five_by_seven() {
        let (f, t) = canonical_filling(31, 4, 28, 4).unwrap();
        assert_eq!(f.column(1), vec![1, 2, 3, 4, 5, 6, 27]);
        assert_eq!(f.column(4), vec![19, 20, 21, 22, 23, 24, 30]);
        assert_eq!(f.column(5), vec![25, 26, 27, 28, 29, 30, 31]);
        assert_eq!(f.row(7), &[27, 28, 29, 30, 31]);
        let orders: Vec<_> = t.orders().iter().map(|(i, l)| (*i, *l)).collect();
        assert_eq!(orders, vec![(27, 8), (28, 6), (29, 4), (30, 2)]);
    }

    #[test]
    fn six_by_nine() {
        let (f, t) = canonical_filling(50, 5, 46, 4).unwrap();
        assert_eq!(f.column(5), vec![33, 34, 35, 36, 37, 38, 39, 40, 49]);
        assert_eq!(f.column(6), vec![41, 42, 43, 44, 46, 47, 48, 49, 50]);
        assert_eq!(f.row(9), &[45, 46, 47, 48, 49, 50]);
        assert_eq!(t.order(46), Some(8));
    }

    #[test]
    fn small_pencil() {
        let (f, t) = canonical_filling(7, 1, 4, 1).unwrap();
        assert_eq!(f.column(1), vec![1, 2, 3, 6]);
        assert_eq!(f.column(2), vec![4, 5, 6, 7]);
        assert_eq!(t.order(6), Some(2));
    }

    #[test]
    fn mismatched_k_rejected() {
        assert!(matches!(canonical_filling(31, 4, 28, 3), Err(FillingError::KNotMinusRho { .. })));
        assert!(matches!(canonical_filling(6, 2, 6, 1), Err(FillingError::KNotMinusRho { .. })));
        assert!(canonical_filling(6, 2, 6, 0).is_ok());
    }

    #[test]
    fn sweep_is_admissible_with_exact_doubled_distances() {
        let mut count = 0;
        for g in 1..=40i64 {
            for r in 0..g {
                for d in 0..=2 * g {
                    let Ok(p) = BnParams::new(g, r, d, None) else { continue };
                    let k = -p.rho();
                    if k < 0 || k >= p.alpha().min(p.beta()) {
                        continue;
                    }
                    let (f, t) = canonical_filling(g, r, d, k).unwrap();
                    let report = validate(&f, &t);
                    assert!(report.admissible && report.coverage, "({g},{r},{d},{k})");
                    let (alpha, beta) = (f.alpha(), f.beta());
                    for l in 1..=k as usize {
                        let spots = f.spots_of(g as Index - l as Index);
                        assert_eq!(spots.len(), 2);
                        let mut expected = [Spot::new(alpha - l, beta), Spot::new(alpha, beta - l)];
                        expected.sort();
                        assert_eq!(spots, &expected);
                        assert_eq!(occurrence_distance(spots[0], spots[1]).abs(), 2 * l as i64);
                    }
                    count += 1;
                }
            }
        }
        assert!(count > 50);
    }
}
