//! Class-level model of one elliptic component with two marked points.
//!
//! Every divisor in the chain construction is supported on `P` and `Q`, so
//! line bundles are tracked through the cyclic subgroup generated by
//! `[P - Q]`: a class is `O(offset·(P - Q) + degree·Q)`. Generic components
//! keep exact integer offsets, torsion components reduce them eagerly.
//!
//! The only class ever needed outside that subgroup is a line bundle twisted
//! by a nontrivial 2-torsion point unrelated to `P - Q`; it is carried as a
//! flag.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicError {
    #[error("torsion order must be at least 2, got {0}")]
    TorsionTooSmall(u32),
    #[error("dependence certificate needs at least one section")]
    EmptyOrders,
    #[error("dependence certificate needs k >= 1, got {0}")]
    NonPositiveK(i64),
    #[error("expected k + 1 = {expected} sections, got {got}")]
    WrongSectionCount { expected: usize, got: usize },
}

/// Torsion behaviour of `[P - Q]` on one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentModel {
    /// `[P - Q]` has infinite order.
    Generic,
    /// `[P - Q]` has exact order `l >= 2`.
    Torsion(u32),
}

impl ComponentModel {
    pub fn torsion(l: u32) -> Result<Self, PicError> {
        if l < 2 {
            return Err(PicError::TorsionTooSmall(l));
        }
        Ok(ComponentModel::Torsion(l))
    }

    pub fn order(&self) -> Option<u32> {
        match *self {
            ComponentModel::Generic => None,
            ComponentModel::Torsion(l) => Some(l),
        }
    }

    fn reduce(&self, offset: i64) -> i64 {
        match *self {
            ComponentModel::Generic => offset,
            ComponentModel::Torsion(l) => offset.rem_euclid(l as i64),
        }
    }
}

impl fmt::Display for ComponentModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentModel::Generic => write!(f, "generic"),
            ComponentModel::Torsion(l) => write!(f, "torsion({l})"),
        }
    }
}

/// Line-bundle class `O(offset·(P - Q) + degree·Q)`, optionally twisted by a
/// nontrivial 2-torsion class outside `<P - Q>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleClass {
    pub degree: i64,
    pub offset: i64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub two_torsion_twist: bool,
}

impl BundleClass {
    pub fn new(model: ComponentModel, degree: i64, offset: i64) -> Self {
        BundleClass { degree, offset: model.reduce(offset), two_torsion_twist: false }
    }

    pub fn with_two_torsion_twist(mut self) -> Self {
        self.two_torsion_twist = !self.two_torsion_twist;
        self
    }

    /// `L(-aP - bQ)`.
    pub fn twist(&self, model: ComponentModel, a: i64, b: i64) -> Self {
        BundleClass {
            degree: self.degree - a - b,
            offset: model.reduce(self.offset - a),
            two_torsion_twist: self.two_torsion_twist,
        }
    }

    /// `L(aP + bQ)`.
    pub fn add_points(&self, model: ComponentModel, a: i64, b: i64) -> Self {
        self.twist(model, -a, -b)
    }

    pub fn tensor(&self, model: ComponentModel, other: &BundleClass) -> Self {
        BundleClass {
            degree: self.degree + other.degree,
            offset: model.reduce(self.offset + other.offset),
            two_torsion_twist: self.two_torsion_twist ^ other.two_torsion_twist,
        }
    }

    /// `other ⊗ self^{-1}`.
    pub fn residual_in(&self, model: ComponentModel, other: &BundleClass) -> Self {
        BundleClass {
            degree: other.degree - self.degree,
            offset: model.reduce(other.offset - self.offset),
            two_torsion_twist: self.two_torsion_twist ^ other.two_torsion_twist,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 0 && self.offset == 0 && !self.two_torsion_twist
    }
}

impl fmt::Display for BundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{degree {}, offset {}", self.degree, self.offset)?;
        if self.two_torsion_twist {
            write!(f, ", eta")?;
        }
        write!(f, "}}")
    }
}

/// Canonical encoding of `O(aP + bQ)`.
pub fn class_of_point_divisor(model: ComponentModel, a: i64, b: i64) -> BundleClass {
    BundleClass::new(model, a + b, a)
}

/// `h^0(L(-aP - bQ))` on an elliptic curve: the degree when positive, zero
/// when negative, and at degree zero one exactly for the trivial class.
pub fn h0_with_vanishing(model: ComponentModel, bundle: &BundleClass, a: i64, b: i64) -> i64 {
    assert!(a >= 0 && b >= 0, "vanishing orders must be non-negative");
    let twisted = bundle.twist(model, a, b);
    match twisted.degree {
        deg if deg > 0 => deg,
        0 => i64::from(twisted.is_trivial()),
        _ => 0,
    }
}

/// Dependence test for `k + 1` sections with the given vanishing orders at
/// `(P, Q)`: true when the common lower bounds leave at most `k` independent
/// sections.
pub fn lindep_witness(
    model: ComponentModel,
    bundle: &BundleClass,
    orders: &[(i64, i64)],
    k: i64,
) -> Result<bool, PicError> {
    if orders.is_empty() {
        return Err(PicError::EmptyOrders);
    }
    if k < 1 {
        return Err(PicError::NonPositiveK(k));
    }
    if orders.len() as i64 != k + 1 {
        return Err(PicError::WrongSectionCount { expected: (k + 1) as usize, got: orders.len() });
    }
    let (a, b) = common_bounds(orders);
    Ok(h0_with_vanishing(model, bundle, a, b) <= k)
}

/// Componentwise minimum of a non-empty order list.
pub fn common_bounds(orders: &[(i64, i64)]) -> (i64, i64) {
    let a = orders.iter().map(|o| o.0).min().unwrap_or(0);
    let b = orders.iter().map(|o| o.1).min().unwrap_or(0);
    (a, b)
}
