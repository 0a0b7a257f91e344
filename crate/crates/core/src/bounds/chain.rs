use serde::Serialize;

use crate::cayley::{covering_count, GroupDescriptor, GrowthEstimate};
use crate::error::{Error, Result};

/// Ball-radius ratios used by the covering step: a ball of radius `3R` is
/// covered by balls of radius `R/2`.
pub const COVER_OUTER: f64 = 3.0;
pub const COVER_INNER: f64 = 0.5;

/// The chain of constants behind the σ₁ upper bound, built from an empirical
/// growth constant. Every value is only as good as the sampled scales
/// (`growth_n_max`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantChain {
    pub growth_order: u32,
    /// Host degree `d = |S|`.
    pub degree: usize,
    pub growth_constant: f64,
    pub growth_n_max: u32,
    /// Number of radius-`R/2` balls covering a radius-`3R` ball.
    pub c1: u64,
    /// `d·(c1+1)`, small-boundary branch.
    pub c2: f64,
    /// `max(C, d)`: volume constant and degree bound at once.
    pub c3: f64,
    /// `c3²·3^D/2`, edge count in `B(x, 3R)` per `R^D`.
    pub c4: f64,
    /// `(c1+1)·c4`, D <= 2.
    pub c5: f64,
    /// `c4^{2/D}`.
    pub c6: f64,
    /// `c6·(c3/2)^{(D-2)/D}`.
    pub c7: f64,
    /// `(c1+1)·c7`, D >= 2.
    pub c8: f64,
    /// `max(c5, c2)` for D <= 2, `max(c8, c2)` otherwise.
    pub c_final: f64,
    /// Empirical isoperimetric constant: sup of `|Ω̄|^{(D-1)/D}/|δΩ|` over
    /// sampled balls `Ω = B(e, n)`.
    pub iso_constant: f64,
}

impl ConstantChain {
    /// Assembles the chain from its free inputs.
    pub fn from_parts(
        growth_order: u32,
        degree: usize,
        growth_constant: f64,
        growth_n_max: u32,
        c1: u64,
        iso_constant: f64,
    ) -> Self {
        let dim = growth_order as f64;
        let d = degree as f64;
        let k = (c1 + 1) as f64;
        let c2 = d * k;
        let c3 = growth_constant.max(d);
        let c4 = c3 * c3 * 3f64.powi(growth_order as i32) / 2.0;
        let c5 = k * c4;
        let c6 = c4.powf(2.0 / dim);
        let c7 = c6 * (c3 / 2.0).powf((dim - 2.0) / dim);
        let c8 = k * c7;
        let c_final = if growth_order <= 2 { c5.max(c2) } else { c8.max(c2) };
        ConstantChain {
            growth_order,
            degree,
            growth_constant,
            growth_n_max,
            c1,
            c2,
            c3,
            c4,
            c5,
            c6,
            c7,
            c8,
            c_final,
            iso_constant,
        }
    }

    /// Same chain with a different covering count. Test functions stay valid
    /// for any `c1`; only the covering guarantee behind the complement-mass
    /// step is lost.
    pub fn with_covering_count(&self, c1: u64) -> Self {
        Self::from_parts(self.growth_order, self.degree, self.growth_constant, self.growth_n_max, c1, self.iso_constant)
    }
}

pub fn constant_chain(desc: &GroupDescriptor, growth: &GrowthEstimate) -> Result<ConstantChain> {
    let dim = desc.growth_order();
    if growth.growth_order != dim {
        return Err(Error::InvalidParameter(format!(
            "growth estimate has order {} but the group has order {dim}",
            growth.growth_order
        )));
    }
    let c1 = covering_count(growth.growth_constant, COVER_OUTER, COVER_INNER, dim)?;
    Ok(ConstantChain::from_parts(
        dim,
        desc.degree(),
        growth.growth_constant,
        growth.n_max,
        c1,
        ball_iso_constant(growth),
    ))
}

/// `Ω = B(e, n)` has `Ω̄ = B(e, n+1)` and `δΩ` the sphere of radius `n+1`.
fn ball_iso_constant(growth: &GrowthEstimate) -> f64 {
    let dim = growth.growth_order as f64;
    let mut prev = 1u64;
    let mut best = 0.0f64;
    for &(_, v) in &growth.samples {
        let ratio = (v as f64).powf((dim - 1.0) / dim) / (v - prev) as f64;
        best = best.max(ratio);
        prev = v;
    }
    best
}
