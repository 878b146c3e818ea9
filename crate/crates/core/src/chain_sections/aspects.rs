use super::{ChainError, ChainSpec, SectionLabel, VanishingTable};
use crate::elliptic_pic::{class_of_point_divisor, h0_with_vanishing, BundleClass, ComponentModel};
use crate::fillings::{Filling, Index};
use serde::Serialize;

/// Aspect data on one component: the degree `d` bundle, its Serre dual of
/// degree `2g - 2 - d`, and the canonical aspect they multiply into.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentAspect {
    pub i: usize,
    pub model: ComponentModel,
    pub bundle: BundleClass,
    pub dual: BundleClass,
    pub canonical: BundleClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AspectSeries {
    pub components: Vec<ComponentAspect>,
}

impl AspectSeries {
    /// Reads `L_i` off any column holding `i` (and the dual off any row),
    /// checking that every spot of `i` induces the same class and that the
    /// two multiply to the canonical aspect `O((2i-2)P_i + (2g-2i)Q_i)`.
    ///
    /// Indices missing from the filling get a class that none of the
    /// sections meets with equality.
    pub fn from_table(filling: &Filling, chain: &ChainSpec, table: &VanishingTable) -> Result<Self, ChainError> {
        let g = chain.g as i64;
        let mut components = Vec::with_capacity(chain.g);
        for i in 1..=chain.g {
            let model = chain.model(i);
            let canonical = class_of_point_divisor(model, 2 * i as i64 - 2, 2 * g - 2 * i as i64);
            let spots = filling.spots_of(i as Index);
            let class_from = |label: SectionLabel, degree: i64| {
                let o = table.get(label, i);
                class_of_point_divisor(model, o.p, degree - o.p)
            };
            let (bundle, dual) = if spots.is_empty() {
                let off = -(table.d_bar + 1);
                (BundleClass::new(model, chain.d, off), BundleClass::new(model, table.d_bar, 2 * i as i64 - 2 - off))
            } else {
                let bundle = class_from(SectionLabel::S(spots[0].a), chain.d);
                let dual = class_from(SectionLabel::T(spots[0].b), table.d_bar);
                for s in &spots[1..] {
                    if class_from(SectionLabel::S(s.a), chain.d) != bundle {
                        return Err(mismatch(i, format!("column {} induces a different bundle class", s.a)));
                    }
                    if class_from(SectionLabel::T(s.b), table.d_bar) != dual {
                        return Err(mismatch(i, format!("row {} induces a different dual class", s.b)));
                    }
                }
                (bundle, dual)
            };
            if bundle.tensor(model, &dual) != canonical {
                return Err(mismatch(i, format!("{bundle} ⊗ {dual} is not the canonical aspect {canonical}")));
            }
            components.push(ComponentAspect { i, model, bundle, dual, canonical });
        }
        let series = AspectSeries { components };
        series.check_sections(table)?;
        Ok(series)
    }

    pub fn component(&self, i: usize) -> &ComponentAspect {
        &self.components[i - 1]
    }

    /// Every tabulated section must exist in its aspect and be unique up to
    /// scale with those orders.
    pub fn check_sections(&self, table: &VanishingTable) -> Result<(), ChainError> {
        for c in &self.components {
            for label in table.labels() {
                let o = table.get(label, c.i);
                let bundle = match label {
                    SectionLabel::S(_) => &c.bundle,
                    SectionLabel::T(_) => &c.dual,
                };
                let h = h0_with_vanishing(c.model, bundle, o.p, o.q);
                if h != 1 {
                    return Err(mismatch(c.i, format!("{label} with orders {o} spans {h} sections, expected 1")));
                }
            }
        }
        Ok(())
    }
}

fn mismatch(i: usize, what: String) -> ChainError {
    ChainError::AspectMismatch { i, what }
}
