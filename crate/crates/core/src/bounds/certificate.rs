//! Per-instance σ₁ certificate from two cutoff test functions.
//!
//! Given `|B| > c1 + 1`, set `α = |B|/(c1+1)` and let `R` be the least radius
//! at which some host ball holds at least `α` boundary vertices, centred at
//! `x0`. `f1` is 1 on `B(x0, R)` and decays linearly to 0 over the next `R`
//! steps; `f2` is 1 outside `B(x0, 3R)` and decays linearly inward. Their
//! supports are separated by a gap no edge crosses, so every combination
//! `a·f1 + b·f2` has Rayleigh quotient at most `max(R(f1), R(f2))`, which
//! bounds σ₁ from above by the min-max principle.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::ConstantChain;
use crate::cayley::{BallLayers, GroupDescriptor, GroupElement, DEFAULT_BALL_CAP};
use crate::error::{Error, Result};
use crate::graph::GraphWithBoundary;
use crate::par::{self, Execution};
use crate::steklov::{rayleigh, VertexFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    SmallBoundary,
    TestFunctions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fallback {
    /// `|B| <= c1 + 1`.
    BoundaryBelowThreshold,
    /// `|B(x0, 3R)^c ∩ B| <= α`, so `f2` would not carry enough boundary mass.
    ComplementMass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub execution: Execution,
    pub cap: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { execution: Execution::default(), cap: DEFAULT_BALL_CAP }
    }
}

/// Test-function data, present on the [`Branch::TestFunctions`] branch.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunctionData {
    pub radius: u32,
    pub x0: GroupElement,
    pub f1: VertexFunction,
    pub f2: VertexFunction,
    pub rayleigh1: f64,
    pub rayleigh2: f64,
    /// `|B(x0, R) ∩ B|`.
    pub ball_mass: usize,
    /// `|B(x0, 3R)^c ∩ B|`.
    pub complement_mass: usize,
    /// Supports disjoint and no edge of the graph joins them.
    pub gap_verified: bool,
    /// Size of the finite set over which `R` was minimized.
    pub search_set_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCertificate {
    pub branch: Branch,
    pub fallback: Option<Fallback>,
    pub boundary_size: usize,
    /// `α = |B|/(c1+1)` in lowest terms.
    pub alpha: (u64, u64),
    pub test_functions: Option<TestFunctionData>,
    pub certified_bound: f64,
    pub growth_n_max: u32,
}

impl BoundCertificate {
    /// JSON record, with the solver's σ₁ and the soundness verdict.
    pub fn to_json(&self, sigma1: f64) -> serde_json::Value {
        let tf = self.test_functions.as_ref();
        serde_json::json!({
            "branch": self.branch,
            "fallback": self.fallback,
            "boundary_size": self.boundary_size,
            "alpha": [self.alpha.0, self.alpha.1],
            "R": tf.map(|t| t.radius),
            "x0": tf.map(|t| t.x0.coords().to_vec()),
            "ball_mass": tf.map(|t| t.ball_mass),
            "complement_mass": tf.map(|t| t.complement_mass),
            "rayleigh1": tf.map(|t| crate::fmt::round_sig(t.rayleigh1)),
            "rayleigh2": tf.map(|t| crate::fmt::round_sig(t.rayleigh2)),
            "gap_verified": tf.map(|t| t.gap_verified),
            "certified_bound": crate::fmt::round_sig(self.certified_bound),
            "sigma1": crate::fmt::round_sig(sigma1),
            "sound": self.is_sound(sigma1),
            "growth_n_max": self.growth_n_max,
        })
    }

    pub fn is_sound(&self, sigma1: f64) -> bool {
        self.certified_bound >= sigma1 - 1e-9
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn certify_sigma1(
    g: &GraphWithBoundary,
    desc: &GroupDescriptor,
    chain: &ConstantChain,
) -> Result<BoundCertificate> {
    certify_sigma1_with(g, desc, chain, &CertifyOptions::default())
}

pub fn certify_sigma1_with(
    g: &GraphWithBoundary,
    desc: &GroupDescriptor,
    chain: &ConstantChain,
    opts: &CertifyOptions,
) -> Result<BoundCertificate> {
    let b = g.boundary().len();
    if b < 2 {
        return Err(Error::SigmaOneUndefined { boundary: b });
    }
    if let Some(host) = g.host() {
        if host != desc {
            return Err(Error::InvalidParameter("graph host differs from the certifying group".into()));
        }
    }
    let mut labels = Vec::with_capacity(g.len());
    for v in 0..g.len() {
        labels.push(g.label(v).ok_or(Error::MissingHostLabels { vertex: v })?.clone());
    }
    if g.host().is_none() {
        // Inclusion in the host: labels are elements and edges are host edges.
        g.clone().with_host(desc.clone())?;
    }

    let k1 = chain.c1 + 1;
    let common = gcd(b as u64, k1);
    let small = |fallback| BoundCertificate {
        branch: Branch::SmallBoundary,
        fallback: Some(fallback),
        boundary_size: b,
        alpha: (b as u64 / common, k1 / common),
        test_functions: None,
        certified_bound: desc.degree() as f64,
        growth_n_max: chain.growth_n_max,
    };
    if b as u64 <= k1 {
        return Ok(small(Fallback::BoundaryBelowThreshold));
    }
    // count >= α  <=>  count·(c1+1) >= |B|  <=>  count >= need.
    let need = (b as u64).div_ceil(k1) as usize;

    let boundary: HashSet<GroupElement> = g.boundary().iter().map(|&v| labels[v].clone()).collect();
    let mut layers = BallLayers::new(desc, opts.cap);

    // Minimum over V' first; any better centre lies within R' - 1 of B.
    let (r_prime, _) = minimal_radius(&labels, &boundary, need, u32::MAX, &mut layers, opts.execution)?;
    let mut search: BTreeSet<GroupElement> = labels.iter().cloned().collect();
    if r_prime >= 1 {
        layers.extend_to(r_prime - 1)?;
        for v in g.boundary() {
            search.extend(layers.distances_from(&labels[*v], r_prime - 1).into_keys());
        }
    }
    let search: Vec<GroupElement> = search.into_iter().collect();
    let (radius, x0) = minimal_radius(&search, &boundary, need, r_prime, &mut layers, opts.execution)?;
    if radius == 0 {
        return Err(Error::Invariant("zero radius with |B| > c1 + 1".into()));
    }

    let outer = 3 * radius;
    layers.extend_to(outer + 1)?;
    let from_x0 = layers.distances_from(&x0, outer + 1);
    let dist = |y: &GroupElement| from_x0.get(y).copied();

    let ball_mass = boundary.iter().filter(|y| dist(y).is_some_and(|d| d <= radius)).count();
    let complement_mass = boundary.iter().filter(|y| dist(y).is_none_or(|d| d > outer)).count();
    if (ball_mass as u64) * k1 < b as u64 {
        return Err(Error::Invariant(format!("ball mass {ball_mass} below α at R = {radius}")));
    }
    if (complement_mass as u64) * k1 <= b as u64 {
        return Ok(small(Fallback::ComplementMass));
    }

    let inward = distance_to_complement(desc, &from_x0, outer, radius);
    let r = radius as f64;
    let taper = |k: u32| if k <= radius { 1.0 - k as f64 / r } else { 0.0 };
    let f1 = VertexFunction(
        labels
            .iter()
            .map(|y| match dist(y) {
                Some(d) if d <= radius => 1.0,
                Some(d) => taper(d - radius),
                None => 0.0,
            })
            .collect(),
    );
    let f2 = VertexFunction(
        labels
            .iter()
            .map(|y| match dist(y) {
                Some(d) if d <= outer => inward.get(y).map_or(0.0, |&k| taper(k)),
                _ => 1.0,
            })
            .collect(),
    );

    let overlap = (0..g.len()).any(|v| f1[v] > 0.0 && f2[v] > 0.0);
    let bridged = g.edges().iter().any(|&(a, c)| (f1[a] > 0.0 && f2[c] > 0.0) || (f2[a] > 0.0 && f1[c] > 0.0));
    if overlap || bridged {
        return Err(Error::Invariant(format!(
            "test-function supports touch (overlap: {overlap}, bridging edge: {bridged})"
        )));
    }
    let rayleigh1 = rayleigh(g, &f1)?;
    let rayleigh2 = rayleigh(g, &f2)?;
    Ok(BoundCertificate {
        branch: Branch::TestFunctions,
        fallback: None,
        boundary_size: b,
        alpha: (b as u64 / common, k1 / common),
        certified_bound: rayleigh1.max(rayleigh2),
        test_functions: Some(TestFunctionData {
            radius,
            x0,
            f1,
            f2,
            rayleigh1,
            rayleigh2,
            ball_mass,
            complement_mass,
            gap_verified: true,
            search_set_size: search.len(),
        }),
        growth_n_max: chain.growth_n_max,
    })
}

/// Least `ρ <= limit` such that some centre in `centers` (sorted) has at least
/// `need` boundary elements in its radius-`ρ` ball, with the first such centre.
fn minimal_radius(
    centers: &[GroupElement],
    boundary: &HashSet<GroupElement>,
    need: usize,
    limit: u32,
    layers: &mut BallLayers,
    execution: Execution,
) -> Result<(u32, GroupElement)> {
    let desc = layers.descriptor().clone();
    let mut counts = vec![0usize; centers.len()];
    let mut rho = 0u32;
    loop {
        layers.extend_to(rho)?;
        let sphere = layers.sphere(rho);
        let added = par::map(execution, centers, |x| {
            sphere.iter().filter(|s| boundary.contains(&desc.multiply_unchecked(x, s))).count()
        });
        for (c, a) in counts.iter_mut().zip(added) {
            *c += a;
        }
        if let Some(i) = counts.iter().position(|&c| c >= need) {
            return Ok((rho, centers[i].clone()));
        }
        if rho >= limit || counts.iter().all(|&c| c == boundary.len()) {
            return Err(Error::Invariant(format!("no ball reaches {need} boundary vertices by radius {rho}")));
        }
        rho += 1;
    }
}

/// Distance from each element of `B(x0, outer)` to the complement of that
/// ball, for distances up to `depth`. A path leaving the ball first hits the
/// sphere of radius `outer + 1`, so a multi-source BFS inward from that sphere
/// gives exact distances.
fn distance_to_complement(
    desc: &GroupDescriptor,
    from_x0: &HashMap<GroupElement, u32>,
    outer: u32,
    depth: u32,
) -> HashMap<GroupElement, u32> {
    let mut out = HashMap::new();
    let mut frontier: Vec<GroupElement> =
        from_x0.iter().filter(|(_, &d)| d == outer + 1).map(|(g, _)| g.clone()).collect();
    for k in 1..=depth {
        let mut next = Vec::new();
        for z in &frontier {
            for y in desc.neighbors(z) {
                if from_x0.get(&y).is_some_and(|&d| d <= outer) && !out.contains_key(&y) {
                    out.insert(y.clone(), k);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    out
}
