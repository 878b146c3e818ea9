//! Finite formal sums of points.

use super::curve::{Curve, Pt};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Divisor {
    coeffs: BTreeMap<Pt, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(pt: Pt, n: i64) -> Self {
        let mut d = Self::zero();
        d.add_point(pt, n);
        d
    }

    pub fn add_point(&mut self, pt: Pt, n: i64) {
        let e = self.coeffs.entry(pt).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coeffs.remove(&pt);
        }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add_scaled(other, -1)
    }

    pub fn add_scaled(&self, other: &Divisor, k: i64) -> Divisor {
        let mut out = self.clone();
        for (&pt, &n) in &other.coeffs {
            out.add_point(pt, k * n);
        }
        out
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        Divisor::zero().add_scaled(self, k)
    }

    pub fn coeff(&self, pt: Pt) -> i64 {
        self.coeffs.get(&pt).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pt, i64)> + '_ {
        self.coeffs.iter().map(|(&p, &n)| (p, n))
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&n| n >= 0)
    }

    /// The poles as an effective divisor.
    pub fn pole_part(&self) -> Divisor {
        let mut out = Divisor::zero();
        for (pt, n) in self.iter() {
            if n < 0 {
                out.add_point(pt, -n);
            }
        }
        out
    }

    /// Pointwise maximum.
    pub fn sup(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (pt, n) in other.iter() {
            let cur = out.coeff(pt);
            if n > cur {
                out.add_point(pt, n - cur);
            }
        }
        out
    }

    /// Image in the group of rational points.
    pub fn sum(&self, curve: &Curve) -> Pt {
        self.iter().fold(Pt::Inf, |acc, (pt, n)| curve.add(acc, curve.mul(pt, n)))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(pt, n)| format!("{n}{pt}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for Divisor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
