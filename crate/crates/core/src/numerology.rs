//! Brill–Noether arithmetic shared by every other module.
//!
//! All quantities are exact integer counts. The rectangle attached to a
//! series of degree `d` and dimension `r` on a genus `g` curve has
//! `alpha = r + 1` columns and `beta = g - d + r` rows.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerologyError {
    #[error("genus must be positive, got g = {0}")]
    NonPositiveGenus(i64),
    #[error("series dimension must be non-negative, got r = {0}")]
    NegativeDimension(i64),
    #[error("series degree must be non-negative, got d = {0}")]
    NegativeDegree(i64),
    #[error("g - d + r = {0} is negative: the series is nonspecial and the rectangle is degenerate")]
    Nonspecial(i64),
    #[error("rectangle needs at least one row, but g - d + r = 0")]
    EmptyRectangle,
    #[error("hypothesis -rho <= k violated: k = {k}, rho = {rho}")]
    KBelowMinusRho { k: i64, rho: i64 },
    #[error("hypothesis k <= r violated: k = {k}, r = {r}")]
    KAboveDimension { k: i64, r: i64 },
    #[error("hypothesis r + 1 <= g - d + r violated: alpha = {alpha}, beta = {beta}")]
    RectangleTooShort { alpha: i64, beta: i64 },
}

fn check_range(g: i64, r: i64, d: i64) -> Result<i64, NumerologyError> {
    if g < 1 {
        return Err(NumerologyError::NonPositiveGenus(g));
    }
    if r < 0 {
        return Err(NumerologyError::NegativeDimension(r));
    }
    if d < 0 {
        return Err(NumerologyError::NegativeDegree(d));
    }
    let beta = g - d + r;
    if beta < 0 {
        return Err(NumerologyError::Nonspecial(beta));
    }
    Ok(beta)
}

/// Brill–Noether number `g - (r+1)(g-d+r)`.
///
/// `g - d + r = 0` is accepted (the result is `g`); negative values are
/// rejected.
pub fn rho(g: i64, r: i64, d: i64) -> Result<i64, NumerologyError> {
    let beta = check_range(g, r, d)?;
    Ok(g - (r + 1) * beta)
}

/// Expected codimension of the locus where the Petri map fails to be
/// injective, `rho + 1`.
pub fn expected_petri_codim(g: i64, r: i64, d: i64) -> Result<i64, NumerologyError> {
    Ok(rho(g, r, d)? + 1)
}

/// Expected Petri-kernel dimension of an `r`-dimensional theta
/// characteristic: `binomial(r + 1, 2)`.
pub fn theta_expected_kernel(r: u64) -> u64 {
    (r + 1) * r / 2
}

/// Parameters of a series together with an optional target kernel
/// dimension `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BnParams {
    pub g: i64,
    pub r: i64,
    pub d: i64,
    pub k: Option<i64>,
}

impl BnParams {
    /// Validates a nondegenerate rectangle and, when `k` is given, the
    /// hypotheses `-rho <= k <= r` and `r + 1 <= g - d + r`.
    pub fn new(g: i64, r: i64, d: i64, k: Option<i64>) -> Result<Self, NumerologyError> {
        let beta = check_range(g, r, d)?;
        if beta == 0 {
            return Err(NumerologyError::EmptyRectangle);
        }
        let params = BnParams { g, r, d, k };
        if let Some(k) = k {
            check_kernel_hypotheses(g, r, d, k)?;
        }
        Ok(params)
    }

    pub fn alpha(&self) -> i64 {
        self.r + 1
    }

    pub fn beta(&self) -> i64 {
        self.g - self.d + self.r
    }

    pub fn rho(&self) -> i64 {
        self.g - self.alpha() * self.beta()
    }

    /// Degree of the Serre-dual series, `2g - 2 - d`.
    pub fn dual_degree(&self) -> i64 {
        2 * self.g - 2 - self.d
    }

    /// Dimension of the Serre-dual series, `g - d + r - 1`.
    pub fn dual_dimension(&self) -> i64 {
        self.beta() - 1
    }
}

fn check_kernel_hypotheses(g: i64, r: i64, d: i64, k: i64) -> Result<(), NumerologyError> {
    let rho = rho(g, r, d)?;
    if k < -rho {
        return Err(NumerologyError::KBelowMinusRho { k, rho });
    }
    if k > r {
        return Err(NumerologyError::KAboveDimension { k, r });
    }
    let (alpha, beta) = (r + 1, g - d + r);
    if alpha > beta {
        return Err(NumerologyError::RectangleTooShort { alpha, beta });
    }
    Ok(())
}

/// Number of generic components appended to a base chain, and the base
/// genus and degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionParams {
    pub t: i64,
    pub g0: i64,
    pub d0: i64,
}

/// `t = rho + k`, `g0 = g - t`, `d0 = d - t`; the base series then has
/// Brill–Noether number exactly `-k`.
pub fn extension_params(g: i64, r: i64, d: i64, k: i64) -> Result<ExtensionParams, NumerologyError> {
    check_kernel_hypotheses(g, r, d, k)?;
    let t = rho(g, r, d)? + k;
    let out = ExtensionParams { t, g0: g - t, d0: d - t };
    assert_eq!(rho(out.g0, r, out.d0)?, -k, "base rho must equal -k");
    Ok(out)
}

/// Flat record emitted by the `numerology` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumerologyRecord {
    pub g: i64,
    pub r: i64,
    pub d: i64,
    pub k: Option<i64>,
    pub rho: i64,
    pub alpha: i64,
    pub beta: i64,
    pub t: Option<i64>,
    pub g0: Option<i64>,
    pub d0: Option<i64>,
    pub expected_petri_codim: i64,
}

impl NumerologyRecord {
    pub fn compute(g: i64, r: i64, d: i64, k: Option<i64>) -> Result<Self, NumerologyError> {
        let rho = rho(g, r, d)?;
        let ext = match k {
            Some(k) => Some(extension_params(g, r, d, k)?),
            None => None,
        };
        Ok(NumerologyRecord {
            g,
            r,
            d,
            k,
            rho,
            alpha: r + 1,
            beta: g - d + r,
            t: ext.map(|e| e.t),
            g0: ext.map(|e| e.g0),
            d0: ext.map(|e| e.d0),
            expected_petri_codim: rho + 1,
        })
    }

    pub const TSV_HEADER: &'static str = "g\tr\td\tk\trho\talpha\tbeta\tt\tg0\td0\texpected_petri_codim";

    pub fn tsv_row(&self) -> String {
        fn opt(v: Option<i64>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.g,
            self.r,
            self.d,
            opt(self.k),
            self.rho,
            self.alpha,
            self.beta,
            opt(self.t),
            opt(self.g0),
            opt(self.d0),
            self.expected_petri_codim
        )
    }
}
