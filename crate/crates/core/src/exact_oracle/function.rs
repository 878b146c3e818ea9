//! Rational functions as products of line functions.

use super::curve::{Curve, Pt};
use super::divisor::Divisor;
use super::OracleError;

/// The function `a·x + b·y + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl Line {
    pub fn eval(&self, curve: &Curve, pt: Pt) -> Option<u64> {
        let f = curve.field;
        match pt {
            Pt::Inf => None,
            Pt::Aff(x, y) => Some(f.add(f.add(f.mul(self.a, x), f.mul(self.b, y)), self.c)),
        }
    }

    /// `x - x0`.
    pub fn vertical(curve: &Curve, x0: u64) -> Line {
        Line { a: 1, b: 0, c: curve.field.neg(x0) }
    }

    /// Line through `r` and `s` (tangent when equal); vertical when
    /// `r = -s`. Both points affine.
    pub fn through(curve: &Curve, r: Pt, s: Pt) -> Line {
        let f = curve.field;
        let (Pt::Aff(x1, y1), Pt::Aff(x2, y2)) = (r, s) else {
            panic!("line through the identity");
        };
        if x1 == x2 && f.add(y1, y2) == 0 {
            return Line::vertical(curve, x1);
        }
        let lambda = if x1 == x2 {
            f.div(f.add(f.mul(3, f.mul(x1, x1)), curve.a), f.mul(2, y1))
        } else {
            f.div(f.sub(y2, y1), f.sub(x2, x1))
        };
        let nu = f.sub(y1, f.mul(lambda, x1));
        Line { a: f.neg(lambda), b: 1, c: f.neg(nu) }
    }

    /// Divisor found by solving for the intersection points directly.
    pub fn divisor(&self, curve: &Curve) -> Result<Divisor, OracleError> {
        let f = curve.field;
        if self.a == 0 && self.b == 0 {
            return if self.c == 0 { Err(OracleError::ZeroFunction) } else { Ok(Divisor::zero()) };
        }
        let mut d = Divisor::zero();
        if self.b == 0 {
            let x0 = f.div(f.neg(self.c), self.a);
            let rhs = curve.rhs(x0);
            let ys: Vec<u64> = (0..f.p).filter(|&y| f.mul(y, y) == rhs).collect();
            match ys.as_slice() {
                [y] => d.add_point(Pt::Aff(x0, *y), 2),
                [y1, y2] => {
                    d.add_point(Pt::Aff(x0, *y1), 1);
                    d.add_point(Pt::Aff(x0, *y2), 1);
                }
                _ => return Err(OracleError::NonRationalDivisor(format!("{self:?}"))),
            }
            d.add_point(Pt::Inf, -2);
            return Ok(d);
        }
        // y = lambda x + nu; substitute into the cubic.
        let lambda = f.div(f.neg(self.a), self.b);
        let nu = f.div(f.neg(self.c), self.b);
        let mut poly = vec![
            f.sub(curve.b, f.mul(nu, nu)),
            f.sub(curve.a, f.mul(2, f.mul(lambda, nu))),
            f.neg(f.mul(lambda, lambda)),
            1,
        ];
        let mut found = 0;
        for x in 0..f.p {
            while poly.len() > 1 && eval_poly(curve, &poly, x) == 0 {
                poly = divide_root(curve, &poly, x);
                d.add_point(Pt::Aff(x, f.add(f.mul(lambda, x), nu)), 1);
                found += 1;
            }
        }
        if found != 3 {
            return Err(OracleError::NonRationalDivisor(format!("{self:?}")));
        }
        d.add_point(Pt::Inf, -3);
        Ok(d)
    }
}

fn eval_poly(curve: &Curve, poly: &[u64], x: u64) -> u64 {
    let f = curve.field;
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

fn divide_root(curve: &Curve, poly: &[u64], r: u64) -> Vec<u64> {
    let f = curve.field;
    let n = poly.len() - 1;
    let mut out = vec![0; n];
    let mut carry = 0;
    for k in (0..n).rev() {
        carry = f.add(poly[k + 1], f.mul(carry, r));
        out[k] = carry;
    }
    out
}

/// `scale · Π line^e` with its claimed divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionRep {
    pub scale: u64,
    pub factors: Vec<(Line, i64)>,
    pub declared: Divisor,
}

impl FunctionRep {
    pub fn one() -> Self {
        FunctionRep { scale: 1, factors: Vec::new(), declared: Divisor::zero() }
    }

    pub fn from_line(line: Line, declared: Divisor) -> Self {
        FunctionRep { scale: 1, factors: vec![(line, 1)], declared }
    }

    /// `ℓ_{r,s}`: divisor `(r) + (s) + (-(r+s)) - 3O`, or the vertical line
    /// with `(r) + (-r) - 2O` when `r + s = O`. The identity as an argument
    /// gives the vertical line at the other point.
    pub fn chord(curve: &Curve, r: Pt, s: Pt) -> Self {
        match (r, s) {
            (Pt::Inf, Pt::Inf) => Self::one(),
            (Pt::Inf, t) | (t, Pt::Inf) => Self::vertical(curve, t),
            _ => {
                let sum = curve.add(r, s);
                let mut d = Divisor::point(r, 1);
                d.add_point(s, 1);
                if sum == Pt::Inf {
                    d.add_point(Pt::Inf, -2);
                } else {
                    d.add_point(curve.neg(sum), 1);
                    d.add_point(Pt::Inf, -3);
                }
                Self::from_line(Line::through(curve, r, s), d)
            }
        }
    }

    /// `v_t`: divisor `(t) + (-t) - 2O`; the constant 1 for `t = O`.
    pub fn vertical(curve: &Curve, t: Pt) -> Self {
        match t {
            Pt::Inf => Self::one(),
            Pt::Aff(x, _) => {
                let mut d = Divisor::point(t, 1);
                d.add_point(curve.neg(t), 1);
                d.add_point(Pt::Inf, -2);
                Self::from_line(Line::vertical(curve, x), d)
            }
        }
    }

    pub fn mul(&self, other: &FunctionRep, curve: &Curve) -> FunctionRep {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        FunctionRep {
            scale: curve.field.mul(self.scale, other.scale),
            factors,
            declared: self.declared.add(&other.declared),
        }
    }

    pub fn inv(&self, curve: &Curve) -> FunctionRep {
        FunctionRep {
            scale: curve.field.inv(self.scale),
            factors: self.factors.iter().map(|&(l, e)| (l, -e)).collect(),
            declared: self.declared.scaled(-1),
        }
    }

    pub fn div(&self, other: &FunctionRep, curve: &Curve) -> FunctionRep {
        self.mul(&other.inv(curve), curve)
    }

    pub fn scaled(&self, c: u64, curve: &Curve) -> FunctionRep {
        FunctionRep { scale: curve.field.mul(self.scale, c), ..self.clone() }
    }

    /// Collects equal lines so repeated factors share one exponent.
    pub fn compact(mut self) -> FunctionRep {
        self.factors.sort();
        let mut out: Vec<(Line, i64)> = Vec::with_capacity(self.factors.len());
        for (l, e) in self.factors {
            match out.last_mut() {
                Some((last, acc)) if *last == l => *acc += e,
                _ => out.push((l, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        self.factors = out;
        self
    }

    /// Value at an affine point where no factor vanishes; `None` otherwise.
    pub fn eval(&self, curve: &Curve, pt: Pt) -> Option<u64> {
        let f = curve.field;
        let mut acc = self.scale;
        for &(line, e) in &self.factors {
            let v = line.eval(curve, pt)?;
            if v == 0 {
                return None;
            }
            acc = f.mul(acc, f.powi(v, e));
        }
        Some(acc)
    }

    /// Divisor accumulated from the factors' own intersection divisors.
    pub fn computed_divisor(&self, curve: &Curve) -> Result<Divisor, OracleError> {
        let mut d = Divisor::zero();
        for &(line, e) in &self.factors {
            d = d.add_scaled(&line.divisor(curve)?, e);
        }
        Ok(d)
    }

    pub fn verify(&self, curve: &Curve) -> Result<bool, OracleError> {
        Ok(self.computed_divisor(curve)? == self.declared)
    }

    pub fn ord(&self, pt: Pt) -> i64 {
        self.declared.coeff(pt)
    }
}

/// Miller function `f_m` of `pt`: divisor `m(pt) - ([m]pt) - (m-1)O`.
pub fn miller(curve: &Curve, pt: Pt, m: i64) -> FunctionRep {
    if pt == Pt::Inf {
        return FunctionRep::one();
    }
    let steps = m.unsigned_abs() as i64;
    let mut f = FunctionRep::one();
    let mut acc = if steps == 0 { Pt::Inf } else { pt };
    for _ in 1..steps {
        let next = curve.add(acc, pt);
        f = f.mul(&FunctionRep::chord(curve, acc, pt), curve).div(&FunctionRep::vertical(curve, next), curve);
        acc = next;
    }
    let f = if m < 0 { f.mul(&FunctionRep::vertical(curve, acc), curve).inv(curve) } else { f };
    let mut declared = Divisor::point(pt, m);
    declared.add_point(curve.mul(pt, m), -1);
    declared.add_point(Pt::Inf, -(m - 1));
    FunctionRep { declared, ..f }.compact()
}

/// `ℓ_{r,s} / v_{r+s}`: divisor `(r) + (s) - (r+s) - O`.
pub fn merge_function(curve: &Curve, r: Pt, s: Pt) -> FunctionRep {
    FunctionRep::chord(curve, r, s).div(&FunctionRep::vertical(curve, curve.add(r, s)), curve)
}
