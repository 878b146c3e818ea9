//! Exact rank over `F_p` by evaluation at rational points.

use super::curve::{Curve, Pt};
use super::divisor::Divisor;
use super::field::Fp;
use super::function::FunctionRep;
use super::OracleError;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankResult {
    pub rank: usize,
    /// Basis of `{c : Σ c_j f_j = 0}`.
    pub nullspace: Vec<Vec<u64>>,
    pub samples: usize,
}

/// Degree of the smallest divisor dominating every pole part; a nonzero
/// combination has at most this many zeros.
pub fn sample_bound(fns: &[FunctionRep]) -> i64 {
    fns.iter().fold(Divisor::zero(), |acc, f| acc.sup(&f.declared.pole_part())).degree()
}

/// Affine points, in order, where every function is defined and nonzero
/// factor-wise.
pub fn usable_points(curve: &Curve, fns: &[FunctionRep]) -> Vec<Pt> {
    curve.affine_points().iter().copied().filter(|&pt| fns.iter().all(|f| f.eval(curve, pt).is_some())).collect()
}

pub fn evaluation_rows(curve: &Curve, fns: &[FunctionRep], points: &[Pt]) -> Vec<Vec<u64>> {
    points.iter().map(|&pt| fns.iter().map(|f| f.eval(curve, pt).expect("usable point")).collect()).collect()
}

/// Rank and nullspace of the span of `fns`, sampled at `sample_count`
/// points where all are defined.
pub fn eval_rank(curve: &Curve, fns: &[FunctionRep], sample_count: usize) -> Result<RankResult, OracleError> {
    let bound = sample_bound(fns);
    if (sample_count as i64) <= bound {
        return Err(OracleError::InsufficientPoints { needed: (bound + 1) as usize, available: sample_count });
    }
    let points = usable_points(curve, fns);
    if points.len() < sample_count {
        return Err(OracleError::InsufficientPoints { needed: sample_count, available: points.len() });
    }
    let rows = evaluation_rows(curve, fns, &points[..sample_count]);
    let (rank, nullspace) = rank_and_nullspace(curve.field, &rows, fns.len());
    // Re-check the relations on the unused points.
    let extra = evaluation_rows(curve, fns, &points[sample_count..]);
    for v in &nullspace {
        for row in &extra {
            let s = row.iter().zip(v).fold(0, |acc, (&a, &c)| curve.field.add(acc, curve.field.mul(a, c)));
            assert_eq!(s, 0, "relation fails off the sample set");
        }
    }
    Ok(RankResult { rank, nullspace, samples: sample_count })
}

/// Row reduction of an `m x ncols` matrix.
pub fn rank_and_nullspace(f: Fp, rows: &[Vec<u64>], ncols: usize) -> (usize, Vec<Vec<u64>>) {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let k = m[i][c];
                let pivot = m[r].clone();
                for (x, &pj) in m[i].iter_mut().zip(&pivot).take(ncols) {
                    *x = f.sub(*x, f.mul(k, pj));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[row][fc]);
            }
            v
        })
        .collect();
    (pivots.len(), nullspace)
}
