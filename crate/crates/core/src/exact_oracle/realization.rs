//! Deterministic search for curves with a marked pair `P, Q`.

use super::curve::{Curve, Pt};
use super::field::{next_prime, Fp};
use super::OracleError;
use crate::elliptic_pic::ComponentModel;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Order of `P - Q` required for a generic stand-in.
    pub generic_min_order: u64,
    /// Minimum number of rational points, identity included.
    pub min_points: u64,
    /// Curves examined before giving up.
    pub max_curves: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { generic_min_order: 100, min_points: 0, max_curves: 200_000 }
    }
}

/// A curve `y^2 = x^3 + Ax + B` over `F_p` with `Q = O` and `P` affine.
#[derive(Debug, Clone, Serialize)]
pub struct CurveRealization {
    pub prime: u64,
    pub a: u64,
    pub b: u64,
    pub p_point: Pt,
    pub q_point: Pt,
    pub model: ComponentModel,
    /// Exact order of `P - Q`.
    pub order: u64,
    pub points: u64,
    #[serde(skip)]
    pub curve: Curve,
}

impl CurveRealization {
    /// Nonsingularity and exactness of the order of `P - Q`.
    pub fn check_invariants(&self) -> bool {
        let f = self.curve.field;
        let disc = f.add(f.mul(4, f.pow(self.a, 3)), f.mul(27, f.mul(self.b, self.b)));
        if disc == 0 || !self.curve.contains(self.p_point) || !self.curve.contains(self.q_point) {
            return false;
        }
        let diff = self.curve.add(self.p_point, self.curve.neg(self.q_point));
        let n = self.order as i64;
        if self.curve.mul(diff, n) != Pt::Inf {
            return false;
        }
        if (1..n).any(|m| n % m == 0 && self.curve.mul(diff, m) == Pt::Inf) {
            return false;
        }
        match self.model {
            ComponentModel::Torsion(l) => self.order == l as u64,
            ComponentModel::Generic => true,
        }
    }
}

/// First `(A, B, P)` over `F_p` in lexicographic order, or `None`.
pub fn realize_at_prime(
    p: u64,
    model: ComponentModel,
    limits: &SearchLimits,
    examined: &mut usize,
) -> Result<Option<CurveRealization>, OracleError> {
    if let ComponentModel::Torsion(l) = model {
        if l < 2 {
            return Err(OracleError::InvalidTorsion(l));
        }
    }
    let field = Fp::new(p);
    for a in 0..p {
        for b in 0..p {
            if *examined >= limits.max_curves {
                return Ok(None);
            }
            *examined += 1;
            let Some(curve) = Curve::new(field, a, b) else { continue };
            let n = curve.order();
            if n < limits.min_points {
                continue;
            }
            let wanted = |ord: u64| match model {
                ComponentModel::Torsion(l) => ord == l as u64,
                ComponentModel::Generic => ord > limits.generic_min_order,
            };
            match model {
                ComponentModel::Torsion(l) if n % l as u64 != 0 => continue,
                ComponentModel::Generic if n <= limits.generic_min_order => continue,
                _ => {}
            }
            let hit = curve.affine_points().iter().map(|&pt| (pt, curve.point_order(pt))).find(|&(_, o)| wanted(o));
            if let Some((pt, order)) = hit {
                return Ok(Some(CurveRealization {
                    prime: p,
                    a,
                    b,
                    p_point: pt,
                    q_point: Pt::Inf,
                    model,
                    order,
                    points: n,
                    curve,
                }));
            }
        }
    }
    Ok(None)
}

/// Smallest prime `p >= p_min` admitting a realization of `model`.
pub fn find_realization(
    model: ComponentModel,
    p_min: u64,
    limits: &SearchLimits,
) -> Result<CurveRealization, OracleError> {
    let mut examined = 0;
    let mut p = next_prime(p_min.max(5));
    loop {
        if let Some(found) = realize_at_prime(p, model, limits, &mut examined)? {
            return Ok(found);
        }
        if examined >= limits.max_curves {
            return Err(OracleError::SearchExhausted { what: format!("{model:?}"), budget: limits.max_curves });
        }
        p = next_prime(p + 1);
    }
}
