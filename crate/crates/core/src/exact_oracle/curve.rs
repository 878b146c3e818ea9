//! Short Weierstrass curves `y^2 = x^3 + Ax + B` over `F_p`.

use super::field::Fp;
use serde::Serialize;
use std::fmt;

/// A point; `Inf` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pt {
    Inf,
    Aff(u64, u64),
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pt::Inf => write!(f, "O"),
            Pt::Aff(x, y) => write!(f, "({x},{y})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Curve {
    pub field: Fp,
    pub a: u64,
    pub b: u64,
    affine: Vec<Pt>,
}

impl Curve {
    /// `None` when `4A^3 + 27B^2 = 0`.
    pub fn new(field: Fp, a: u64, b: u64) -> Option<Self> {
        let f = field;
        let disc = f.add(f.mul(4, f.pow(a, 3)), f.mul(27, f.mul(b, b)));
        if disc == 0 {
            return None;
        }
        let roots = f.sqrt_table();
        let mut affine = Vec::new();
        for x in 0..f.p {
            let rhs = f.add(f.add(f.pow(x, 3), f.mul(a, x)), b);
            if let Some(y) = roots[rhs as usize] {
                affine.push(Pt::Aff(x, y));
                if y != 0 {
                    affine.push(Pt::Aff(x, f.neg(y)));
                }
            }
        }
        affine.sort();
        Some(Curve { field, a, b, affine })
    }

    pub fn p(&self) -> u64 {
        self.field.p
    }

    /// Affine points in lexicographic order.
    pub fn affine_points(&self) -> &[Pt] {
        &self.affine
    }

    /// Number of rational points including the identity.
    pub fn order(&self) -> u64 {
        self.affine.len() as u64 + 1
    }

    pub fn rhs(&self, x: u64) -> u64 {
        let f = self.field;
        f.add(f.add(f.pow(x, 3), f.mul(self.a, x)), self.b)
    }

    pub fn contains(&self, pt: Pt) -> bool {
        match pt {
            Pt::Inf => true,
            Pt::Aff(x, y) => x < self.p() && y < self.p() && self.field.mul(y, y) == self.rhs(x),
        }
    }

    pub fn neg(&self, pt: Pt) -> Pt {
        match pt {
            Pt::Inf => Pt::Inf,
            Pt::Aff(x, y) => Pt::Aff(x, self.field.neg(y)),
        }
    }

    pub fn add(&self, s: Pt, t: Pt) -> Pt {
        let f = self.field;
        match (s, t) {
            (Pt::Inf, _) => t,
            (_, Pt::Inf) => s,
            (Pt::Aff(x1, y1), Pt::Aff(x2, y2)) => {
                if x1 == x2 && f.add(y1, y2) == 0 {
                    return Pt::Inf;
                }
                let lambda = if x1 == x2 {
                    f.div(f.add(f.mul(3, f.mul(x1, x1)), self.a), f.mul(2, y1))
                } else {
                    f.div(f.sub(y2, y1), f.sub(x2, x1))
                };
                let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
                let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
                Pt::Aff(x3, y3)
            }
        }
    }

    pub fn mul(&self, pt: Pt, n: i64) -> Pt {
        let mut acc = Pt::Inf;
        let mut base = if n < 0 { self.neg(pt) } else { pt };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Exact order of `pt` in the group of rational points.
    pub fn point_order(&self, pt: Pt) -> u64 {
        let mut acc = pt;
        let mut n = 1;
        while acc != Pt::Inf {
            acc = self.add(acc, pt);
            n += 1;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> Curve {
        Curve::new(Fp::new(101), 2, 3).unwrap()
    }

    #[test]
    fn group_law_is_consistent() {
        let c = curve();
        let pts = c.affine_points();
        for &s in pts.iter().take(12) {
            assert!(c.contains(s));
            assert_eq!(c.add(s, c.neg(s)), Pt::Inf);
            for &t in pts.iter().take(12) {
                let u = c.add(s, t);
                assert!(c.contains(u));
                assert_eq!(u, c.add(t, s));
                for &v in pts.iter().take(5) {
                    assert_eq!(c.add(c.add(s, t), v), c.add(s, c.add(t, v)));
                }
            }
        }
    }

    #[test]
    fn orders_divide_group_order() {
        let c = curve();
        let n = c.order();
        for &s in c.affine_points() {
            assert_eq!(n % c.point_order(s), 0);
            assert_eq!(c.mul(s, c.point_order(s) as i64), Pt::Inf);
            assert_eq!(c.mul(s, -3), c.neg(c.mul(s, 3)));
        }
    }

    #[test]
    fn singular_rejected() {
        assert!(Curve::new(Fp::new(101), 0, 0).is_none());
    }
}
