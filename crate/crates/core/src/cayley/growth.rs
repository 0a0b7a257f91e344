use serde::Serialize;

use super::{BallLayers, GroupDescriptor, GroupElement};
use crate::error::{Error, Result};

/// Sampled growth function `V(n) = |B(e, n)|` with the smallest constant `C`
/// such that `C⁻¹ n^D <= V(n) <= C n^D` on every sample.
///
/// The constant is empirical: it is only valid at the sampled scales.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthEstimate {
    pub growth_order: u32,
    pub samples: Vec<(u32, u64)>,
    pub growth_constant: f64,
    pub n_max: u32,
}

impl GrowthEstimate {
    pub fn volume(&self, n: u32) -> Option<u64> {
        self.samples.iter().find(|s| s.0 == n).map(|s| s.1)
    }

    /// `(V(n)/n^D, n^D/V(n))` for one sample.
    pub fn ratios(&self, n: u32) -> Option<(f64, f64)> {
        let v = self.volume(n)? as f64;
        let nd = (n as f64).powi(self.growth_order as i32);
        Some((v / nd, nd / v))
    }

    /// Least-squares slope of `log V(n)` against `log n`.
    pub fn fitted_exponent(&self) -> f64 {
        let pts: Vec<(f64, f64)> = self.samples.iter().map(|&(n, v)| ((n as f64).ln(), (v as f64).ln())).collect();
        let m = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
        let (mx, my) = (sx / m, sy / m);
        let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        if den == 0.0 {
            f64::NAN
        } else {
            num / den
        }
    }

    /// Whether every sample satisfies the two-sided polynomial bound.
    pub fn bound_holds(&self) -> bool {
        let c = self.growth_constant;
        self.samples.iter().all(|&(n, v)| {
            let nd = (n as f64).powi(self.growth_order as i32);
            let v = v as f64;
            nd / c <= v * (1.0 + 1e-12) && v <= c * nd * (1.0 + 1e-12)
        })
    }
}

pub fn growth_function(desc: &GroupDescriptor, n_max: u32, cap: usize) -> Result<GrowthEstimate> {
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let layers = BallLayers::with_radius(desc, n_max, cap)?;
    let d = desc.growth_order() as i32;
    let mut total = 1u64;
    let mut samples = Vec::with_capacity(n_max as usize);
    let mut growth_constant = 1.0f64;
    for n in 1..=n_max {
        total += layers.sphere(n).len() as u64;
        samples.push((n, total));
        let nd = (n as f64).powi(d);
        let v = total as f64;
        growth_constant = growth_constant.max(v / nd).max(nd / v);
    }
    Ok(GrowthEstimate { growth_order: desc.growth_order(), samples, growth_constant, n_max })
}

/// `⌈x⌉`, snapping values within floating-point noise of an integer.
pub(crate) fn ceil_snapped(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r
    } else {
        x.ceil()
    }
}

/// Number of radius-`bR` balls sufficient to cover a radius-`aR` ball:
/// `⌈C² ((2a + b)/b)^D⌉`.
pub fn covering_count(growth_constant: f64, a: f64, b: f64, dim: u32) -> Result<u64> {
    let valid = growth_constant >= 1.0 && a > 0.0 && b > 0.0 && dim > 0;
    if !valid {
        return Err(Error::InvalidParameter(format!(
            "covering_count needs C >= 1, a > 0, b > 0, D >= 1 (got C={growth_constant}, a={a}, b={b}, D={dim})"
        )));
    }
    let x = growth_constant.powi(2) * ((2.0 * a + b) / b).powi(dim as i32);
    if !x.is_finite() || x > u64::MAX as f64 {
        return Err(Error::InvalidParameter(format!("covering count {x} overflows")));
    }
    Ok(ceil_snapped(x) as u64)
}

/// Integer radius `⌈b·R⌉` used for the word metric; errors when it is below 1.
pub fn discrete_radius(b: f64, r: u32) -> Result<u32> {
    let x = ceil_snapped(b * r as f64);
    if x.is_nan() || x < 1.0 {
        return Err(Error::InvalidParameter(format!("radius ⌈{b}·{r}⌉ is below 1")));
    }
    Ok(x as u32)
}

/// Greedy maximal `separation`-separated subset of `B(center, radius)`,
/// scanning the ball in lexicographic order.
///
/// Maximality means every ball element lies within distance `separation - 1`
/// of a chosen point, so the radius-`separation` balls around the returned
/// points cover `B(center, radius)`.
pub fn greedy_separated_set(
    desc: &GroupDescriptor,
    center: &GroupElement,
    radius: u32,
    separation: u32,
    cap: usize,
) -> Result<Vec<GroupElement>> {
    desc.check(center)?;
    // Any two points of the ball are within 2·radius of each other.
    let layers = BallLayers::with_radius(desc, 2 * radius, cap)?;
    let mut points: Vec<GroupElement> = layers.distances_from(center, radius).into_keys().collect();
    points.sort();
    let mut chosen: Vec<GroupElement> = Vec::new();
    for y in points {
        let far = chosen.iter().all(|c| layers.distance(c, &y).expect("within diameter") >= separation);
        if far {
            chosen.push(y);
        }
    }
    Ok(chosen)
}

/// Whether the radius-`r` balls around `centers` cover `B(center, radius)`.
pub fn covers(
    desc: &GroupDescriptor,
    centers: &[GroupElement],
    r: u32,
    center: &GroupElement,
    radius: u32,
    cap: usize,
) -> Result<bool> {
    let layers = BallLayers::with_radius(desc, radius.max(r), cap)?;
    let mut covered = std::collections::HashSet::new();
    for c in centers {
        covered.extend(layers.distances_from(c, r).into_keys());
    }
    Ok(layers.distances_from(center, radius).keys().all(|y| covered.contains(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::DEFAULT_BALL_CAP;

    #[test]
    fn z1_growth() {
        let z1 = GroupDescriptor::free_abelian(1).unwrap();
        let g = growth_function(&z1, 3, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(g.samples, vec![(1, 3), (2, 5), (3, 7)]);
        assert_eq!(g.growth_constant, 3.0);
        assert!(g.bound_holds());
    }

    #[test]
    fn z2_growth() {
        let z2 = GroupDescriptor::free_abelian(2).unwrap();
        let g = growth_function(&z2, 2, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(g.samples, vec![(1, 5), (2, 13)]);
        assert_eq!(g.growth_constant, 5.0);
    }

    #[test]
    fn heisenberg_growth_trends_to_four() {
        let h = GroupDescriptor::heisenberg();
        let g = growth_function(&h, 8, DEFAULT_BALL_CAP).unwrap();
        let vols: Vec<u64> = g.samples.iter().map(|s| s.1).collect();
        // Values from an independent BFS.
        assert_eq!(vols, vec![5, 17, 53, 135, 299, 593, 1069, 1793]);
        assert!(vols.windows(2).all(|w| w[0] < w[1]));
        assert!(g.bound_holds());
        // Local slopes increase toward 4 from below.
        let local = |n: u32| {
            let (a, b) = (g.volume(n).unwrap() as f64, g.volume(2 * n).unwrap() as f64);
            (b / a).log2()
        };
        assert!(local(2) < local(3) && local(3) < local(4));
        assert!(local(4) > 3.0 && local(4) < 4.0);
    }

    #[test]
    fn n_max_zero_rejected() {
        let z1 = GroupDescriptor::free_abelian(1).unwrap();
        assert!(growth_function(&z1, 0, DEFAULT_BALL_CAP).is_err());
    }

    #[test]
    fn covering_count_examples() {
        assert_eq!(covering_count(1.0, 1.0, 1.0, 1).unwrap(), 3);
        assert_eq!(covering_count(1.0, 3.0, 0.5, 1).unwrap(), 13);
        assert_eq!(covering_count(3.0, 3.0, 0.5, 2).unwrap(), 1521);
        assert_eq!(covering_count(3.0, 3.0, 0.5, 1).unwrap(), 117);
        assert!(covering_count(0.5, 1.0, 1.0, 1).is_err());
        assert!(covering_count(1.0, 0.0, 1.0, 1).is_err());
        assert!(covering_count(1.0, 1.0, 1.0, 0).is_err());
    }

    #[test]
    fn discrete_radius_rounding() {
        assert_eq!(discrete_radius(0.5, 2).unwrap(), 1);
        assert_eq!(discrete_radius(0.5, 3).unwrap(), 2);
        assert_eq!(discrete_radius(0.5, 1).unwrap(), 1);
        assert!(discrete_radius(0.5, 0).is_err());
    }

    #[test]
    fn greedy_cover_small_case() {
        let z1 = GroupDescriptor::free_abelian(1).unwrap();
        let o = z1.identity();
        let pts = greedy_separated_set(&z1, &o, 6, 2, DEFAULT_BALL_CAP).unwrap();
        let xs: Vec<i64> = pts.iter().map(|p| p.coords()[0]).collect();
        assert_eq!(xs, vec![-6, -4, -2, 0, 2, 4, 6]);
        assert!(covers(&z1, &pts, 2, &o, 6, DEFAULT_BALL_CAP).unwrap());
        assert!(!covers(&z1, &pts[1..], 1, &o, 6, DEFAULT_BALL_CAP).unwrap());
    }
}
