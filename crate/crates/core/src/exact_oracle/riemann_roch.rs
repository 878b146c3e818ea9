//! Bases of `L(D) = { h : div h >= -D }`.

use super::curve::{Curve, Pt};
use super::divisor::Divisor;
use super::function::{merge_function, miller, FunctionRep};
use super::realization::CurveRealization;
use super::OracleError;
use crate::elliptic_pic::BundleClass;

/// Basis of `L(D)`; empty when `deg D < 0`.
///
/// With `N = deg D` and `R` the group sum of `D`, a function `u` with
/// divisor `D - (R) - (N-1)O` is assembled from Miller functions and merge
/// lines, and `L(D) = L((R) + (N-1)O) / u`.
pub fn rr_basis(curve: &Curve, d: &Divisor) -> Result<Vec<FunctionRep>, OracleError> {
    let n = d.degree();
    if n < 0 {
        return Ok(Vec::new());
    }
    let mut u = FunctionRep::one();
    let mut acc = Pt::Inf;
    for (pt, c) in d.iter() {
        if pt == Pt::Inf {
            continue;
        }
        u = u.mul(&miller(curve, pt, c), curve);
        let q = curve.mul(pt, c);
        u = u.mul(&merge_function(curve, acc, q), curve);
        acc = curve.add(acc, q);
    }
    let u = u.compact();
    let mut target = d.sub(&Divisor::point(acc, 1));
    target.add_point(Pt::Inf, -(n - 1));
    check(curve, &u, Some(&target))?;

    let base = reduced_basis(curve, acc, n);
    let mut out = Vec::with_capacity(base.len());
    for h in base {
        check(curve, &h, None)?;
        out.push(h.div(&u, curve).compact());
    }
    Ok(out)
}

fn check(curve: &Curve, f: &FunctionRep, expect: Option<&Divisor>) -> Result<(), OracleError> {
    let computed = f.computed_divisor(curve)?;
    let declared = expect.unwrap_or(&f.declared);
    if computed != f.declared || &computed != declared {
        return Err(OracleError::DivisorMismatch { declared: declared.to_string(), computed: computed.to_string() });
    }
    Ok(())
}

/// Basis of `L((R) + (N-1)O)`.
fn reduced_basis(curve: &Curve, r: Pt, n: i64) -> Vec<FunctionRep> {
    if n == 0 {
        return if r == Pt::Inf { vec![FunctionRep::one()] } else { Vec::new() };
    }
    if r == Pt::Inf {
        return multiples_of_origin(curve, n);
    }
    let mut out = multiples_of_origin(curve, n - 1);
    if n >= 2 {
        let s = *curve
            .affine_points()
            .iter()
            .find(|&&s| s != r && s != curve.neg(r))
            .expect("curve has an auxiliary point");
        out.push(FunctionRep::chord(curve, curve.neg(r), s).div(&FunctionRep::vertical(curve, r), curve).compact());
    }
    out
}

/// Basis of `L(nO)`: powers of a vertical line (pole order 2) and those
/// powers times a tangent line (pole order 3).
fn multiples_of_origin(curve: &Curve, n: i64) -> Vec<FunctionRep> {
    let mut out = vec![FunctionRep::one()];
    if n < 2 {
        return out;
    }
    let pts = curve.affine_points();
    let v = FunctionRep::vertical(curve, pts[0]);
    let t = pts.iter().find(|p| matches!(p, Pt::Aff(_, y) if *y != 0)).expect("curve has a point off the 2-torsion");
    let tangent = FunctionRep::chord(curve, *t, *t);
    let mut power = FunctionRep::one();
    let mut k = 0;
    while 2 * k + 2 <= n {
        power = power.mul(&v, curve);
        k += 1;
        out.push(power.clone().compact());
    }
    let mut power = tangent;
    let mut k = 0;
    while 2 * k + 3 <= n {
        out.push(power.clone().compact());
        power = power.mul(&v, curve);
        k += 1;
    }
    out
}

/// `offset·P + (degree - offset)·Q` representing `class` on the realization.
pub fn aspect_divisor(real: &CurveRealization, class: &BundleClass) -> Result<Divisor, OracleError> {
    if class.two_torsion_twist {
        return Err(OracleError::Unsupported("bundle classes with a 2-torsion twist".into()));
    }
    let mut d = Divisor::point(real.p_point, class.offset);
    d.add_point(real.q_point, class.degree - class.offset);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic_pic::{h0_with_vanishing, ComponentModel};
    use crate::exact_oracle::field::Fp;
    use crate::exact_oracle::realization::{find_realization, SearchLimits};

    fn curve() -> Curve {
        Curve::new(Fp::new(103), 3, 7).unwrap()
    }

    #[test]
    fn multiples_of_the_origin() {
        let c = curve();
        for (n, dim) in [(0, 1), (1, 1), (2, 2), (3, 3), (7, 7)] {
            let b = rr_basis(&c, &Divisor::point(Pt::Inf, n)).unwrap();
            assert_eq!(b.len(), dim, "n = {n}");
            for f in &b {
                assert!(f.declared.add(&Divisor::point(Pt::Inf, n)).is_effective());
            }
        }
        assert!(rr_basis(&c, &Divisor::point(Pt::Inf, -1)).unwrap().is_empty());
    }

    #[test]
    fn nontrivial_degree_zero_is_empty() {
        let c = curve();
        let p = c.affine_points()[5];
        let d = Divisor::point(p, 1).sub(&Divisor::point(Pt::Inf, 1));
        assert!(rr_basis(&c, &d).unwrap().is_empty());
        let q = c.affine_points()[9];
        let mut d = Divisor::point(p, 2);
        d.add_point(q, -1);
        d.add_point(c.neg(q), 1);
        d.add_point(Pt::Inf, -1);
        assert_eq!(rr_basis(&c, &d).unwrap().len(), 1);
    }

    #[test]
    fn agrees_with_bundle_model() {
        let limits = SearchLimits { generic_min_order: 40, ..SearchLimits::default() };
        for model in [ComponentModel::Torsion(2), ComponentModel::Torsion(5), ComponentModel::Generic] {
            let real = find_realization(model, 53, &limits).unwrap();
            for deg in 0..=12 {
                for off in -12..=12 {
                    let class = BundleClass::new(model, deg, off);
                    let d = aspect_divisor(&real, &class).unwrap();
                    let basis = rr_basis(&real.curve, &d).unwrap();
                    assert_eq!(basis.len() as i64, h0_with_vanishing(model, &class, 0, 0), "{model:?} {deg} {off}");
                    for f in &basis {
                        assert!(f.declared.add(&d).is_effective());
                    }
                }
            }
        }
    }
}
