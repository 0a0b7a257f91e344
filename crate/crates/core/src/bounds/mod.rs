//! Upper bounds on σ₁ for graphs with boundary inside a polynomial-growth
//! Cayley graph: the volume bound, the two isoperimetric bounds, the
//! replayed test-function certificate, and isoperimetric ratios.

mod certificate;
mod chain;

pub use certificate::{
    certify_sigma1, certify_sigma1_with, BoundCertificate, Branch, CertifyOptions, Fallback, TestFunctionData,
};
pub use chain::{constant_chain, ConstantChain, COVER_INNER, COVER_OUTER};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GraphWithBoundary, InducedSubsetSpec};

/// `C/|B|` when `D <= 2`, `C·|V'|^{(D-2)/D}/|B|` otherwise.
pub fn volume_bound(g: &GraphWithBoundary, chain: &ConstantChain) -> Result<f64> {
    let b = g.boundary().len();
    if b <= 1 {
        return Err(Error::SigmaOneUndefined { boundary: b });
    }
    let dim = chain.growth_order as f64;
    let volume = if chain.growth_order <= 2 { 1.0 } else { (g.len() as f64).powf((dim - 2.0) / dim) };
    Ok(chain.c_final * volume / b as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoperimetricReport {
    pub omega_size: usize,
    pub boundary_size: usize,
    pub closure_size: usize,
    /// `|Ω̄|^{(D-1)/D} / |δΩ|`.
    pub ratio: f64,
}

pub fn isoperimetric_ratio(spec: &InducedSubsetSpec, dim: u32) -> IsoperimetricReport {
    let omega_size = spec.omega().len();
    let boundary_size = spec.vertex_boundary().len();
    let closure_size = omega_size + boundary_size;
    IsoperimetricReport { omega_size, boundary_size, closure_size, ratio: iso_ratio(closure_size, boundary_size, dim) }
}

fn iso_ratio(closure: usize, boundary: usize, dim: u32) -> f64 {
    let d = dim as f64;
    (closure as f64).powf((d - 1.0) / d) / boundary as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoperimetricBounds {
    /// `C·c^{(D-2)/(D-1)} / |δΩ|^{1/(D-1)}`; for `D = 1`, `C/|δΩ|`.
    pub boundary_bound: f64,
    /// `C·c / |Ω̄|^{1/D}`; `None` for `D = 1`.
    pub closure_bound: Option<f64>,
    /// The weaker `C·c / |δΩ|^{1/D}` form.
    pub closure_bound_weak: Option<f64>,
    /// Isoperimetric constant `c` used: the chain's, raised to this
    /// instance's ratio if that is larger.
    pub iso_constant: f64,
}

/// Both isoperimetric bounds for a graph induced by a subset Ω.
pub fn isoperimetric_bounds(g: &GraphWithBoundary, chain: &ConstantChain) -> Result<IsoperimetricBounds> {
    let boundary = g.boundary().len();
    if boundary <= 1 {
        return Err(Error::SigmaOneUndefined { boundary });
    }
    let closure = g.len();
    let c = chain.c_final;
    if chain.growth_order == 1 {
        return Ok(IsoperimetricBounds {
            boundary_bound: c / boundary as f64,
            closure_bound: None,
            closure_bound_weak: None,
            iso_constant: chain.iso_constant,
        });
    }
    let d = chain.growth_order as f64;
    let iso = chain.iso_constant.max(iso_ratio(closure, boundary, chain.growth_order));
    let boundary_bound = c * iso.powf((d - 2.0) / (d - 1.0)) / (boundary as f64).powf(1.0 / (d - 1.0));
    let closure_bound = c * iso / (closure as f64).powf(1.0 / d);
    let weak = c * iso / (boundary as f64).powf(1.0 / d);
    Ok(IsoperimetricBounds {
        boundary_bound,
        closure_bound: Some(closure_bound),
        closure_bound_weak: Some(weak),
        iso_constant: iso,
    })
}
