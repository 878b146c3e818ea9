//! Multiplication maps `V ⊗ W -> H^0(L ⊗ M)` on one component.

use super::curve::Curve;
use super::function::FunctionRep;
use super::linalg::{eval_rank, sample_bound, RankResult};
use super::OracleError;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PetriMatrix {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    /// Kernel vectors indexed `v * cols + w`.
    pub kernel: Vec<Vec<u64>>,
}

/// Products `v_i w_j`, their rank, and the kernel of the multiplication map.
pub fn component_petri(curve: &Curve, v: &[FunctionRep], w: &[FunctionRep]) -> Result<PetriMatrix, OracleError> {
    let products: Vec<FunctionRep> =
        v.iter().flat_map(|a| w.iter().map(move |b| (a, b))).map(|(a, b)| a.mul(b, curve).compact()).collect();
    let RankResult { rank, nullspace, .. } = if products.is_empty() {
        RankResult { rank: 0, nullspace: Vec::new(), samples: 0 }
    } else {
        eval_rank(curve, &products, (sample_bound(&products) + 1) as usize)?
    };
    Ok(PetriMatrix { rows: v.len(), cols: w.len(), rank, kernel_dim: nullspace.len(), kernel: nullspace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic_pic::{BundleClass, ComponentModel};
    use crate::exact_oracle::realization::{find_realization, SearchLimits};
    use crate::exact_oracle::riemann_roch::{aspect_divisor, rr_basis};

    #[test]
    fn small_multiplication_maps() {
        let model = ComponentModel::Generic;
        let limits = SearchLimits { generic_min_order: 40, ..SearchLimits::default() };
        let real = find_realization(model, 53, &limits).unwrap();
        let c = &real.curve;
        let basis = |deg, off| rr_basis(c, &aspect_divisor(&real, &BundleClass::new(model, deg, off)).unwrap()).unwrap();
        let m = component_petri(c, &basis(2, 1), &basis(2, 0)).unwrap();
        assert_eq!((m.rank, m.kernel_dim), (4, 0));
        let m = component_petri(c, &basis(2, 1), &basis(3, 0)).unwrap();
        assert_eq!((m.rank, m.kernel_dim), (5, 1));
        let m = component_petri(c, &basis(2, 1)[..1], &basis(3, 0)).unwrap();
        assert_eq!(m.kernel_dim, 0);
        assert!(m.rank <= 5);
    }
}
