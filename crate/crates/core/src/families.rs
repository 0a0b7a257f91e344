//! Named instance families: balls, boxes, random lattice animals and the
//! two-boundary-vertex family.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::{ball, GroupDescriptor, GroupElement};
use crate::error::{Error, Result};
use crate::graph::{two_point_family, GraphWithBoundary, InducedSubsetSpec};

/// Graph with boundary induced by `Ω = B(e, r-1)`, so that the closure is
/// `B(e, r)` and the boundary is the sphere of radius `r`.
pub fn ball_family(desc: &GroupDescriptor, r: u32, cap: usize) -> Result<GraphWithBoundary> {
    ball_spec(desc, r, cap)?.induce()
}

pub fn ball_spec(desc: &GroupDescriptor, r: u32, cap: usize) -> Result<InducedSubsetSpec> {
    if r == 0 {
        return Err(Error::InvalidParameter("ball radius must be >= 1".into()));
    }
    InducedSubsetSpec::new(desc.clone(), ball(desc, &desc.identity(), r - 1, cap)?)
}

pub fn zd_ball(dim: usize, r: u32, cap: usize) -> Result<GraphWithBoundary> {
    ball_family(&GroupDescriptor::free_abelian(dim)?, r, cap)
}

pub fn heis_ball(r: u32, cap: usize) -> Result<GraphWithBoundary> {
    ball_family(&GroupDescriptor::heisenberg(), r, cap)
}

/// `Ω = [0, s_1) × … × [0, s_D)` in `ℤ^D`.
pub fn zd_box_spec(dim: usize, sides: &[u32], cap: usize) -> Result<InducedSubsetSpec> {
    if sides.len() != dim {
        return Err(Error::LengthMismatch { expected: dim, actual: sides.len() });
    }
    if sides.contains(&0) {
        return Err(Error::InvalidParameter("box sides must be >= 1".into()));
    }
    let total = sides.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s as usize));
    match total {
        Some(t) if t <= cap => {}
        _ => return Err(Error::ResourceLimit { cap }),
    }
    let mut omega = vec![Vec::new()];
    for &s in sides {
        omega = omega
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..s as i64).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    InducedSubsetSpec::new(GroupDescriptor::free_abelian(dim)?, omega.into_iter().map(GroupElement::new))
}

pub fn zd_box(dim: usize, sides: &[u32], cap: usize) -> Result<GraphWithBoundary> {
    zd_box_spec(dim, sides, cap)?.induce()
}

/// A connected subset of `size` elements grown from the identity: each step
/// adds a uniformly chosen element of the current vertex boundary.
pub fn lattice_animal(desc: &GroupDescriptor, size: usize, seed: u64) -> Result<InducedSubsetSpec> {
    if size == 0 {
        return Err(Error::InvalidParameter("animal size must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut omega = BTreeSet::from([desc.identity()]);
    let mut frontier: BTreeSet<GroupElement> = desc.neighbors(&desc.identity()).collect();
    while omega.len() < size {
        let pick = frontier.iter().nth(rng.random_range(0..frontier.len())).cloned().expect("frontier nonempty");
        frontier.remove(&pick);
        for x in desc.neighbors(&pick) {
            if !omega.contains(&x) {
                frontier.insert(x);
            }
        }
        omega.insert(pick);
    }
    InducedSubsetSpec::new(desc.clone(), omega)
}

/// A family indexed by one integer parameter, as used by sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Two boundary vertices joined by `n` paths, parameter `n`.
    TwoPoint,
    /// `ℤ^D` ball, parameter `r`.
    ZdBall { dim: usize },
    /// `ℤ^D` cube, parameter the side length.
    ZdBox { dim: usize },
    /// Heisenberg ball, parameter `r`.
    HeisBall,
    /// Random `ℤ^D` lattice animal, parameter the size `|Ω|`.
    Animal { dim: usize, seed: u64 },
}

impl Family {
    pub fn host(&self) -> Result<Option<GroupDescriptor>> {
        Ok(match self {
            Family::TwoPoint => None,
            Family::ZdBall { dim } | Family::ZdBox { dim } | Family::Animal { dim, .. } => {
                Some(GroupDescriptor::free_abelian(*dim)?)
            }
            Family::HeisBall => Some(GroupDescriptor::heisenberg()),
        })
    }

    /// The subset Ω for parameter `p`; `None` for families without a host.
    pub fn spec(&self, p: u32, cap: usize) -> Result<Option<InducedSubsetSpec>> {
        Ok(Some(match self {
            Family::TwoPoint => return Ok(None),
            Family::ZdBall { dim } => ball_spec(&GroupDescriptor::free_abelian(*dim)?, p, cap)?,
            Family::ZdBox { dim } => zd_box_spec(*dim, &vec![p; *dim], cap)?,
            Family::HeisBall => ball_spec(&GroupDescriptor::heisenberg(), p, cap)?,
            Family::Animal { dim, seed } => {
                lattice_animal(&GroupDescriptor::free_abelian(*dim)?, p as usize, seed.wrapping_add(p as u64))?
            }
        }))
    }

    pub fn build(&self, p: u32, cap: usize) -> Result<GraphWithBoundary> {
        match self.spec(p, cap)? {
            Some(spec) => spec.induce(),
            None => two_point_family(p as usize),
        }
    }

    /// Parses `name` followed by its arguments, e.g. `["zd_ball", "2"]`.
    /// `seed` is used by random families.
    pub fn parse(words: &[&str], seed: u64) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown family `{}`", words.join(" ")));
        let dim = |s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(d) if d >= 1 => Ok(d),
                _ => Err(Error::InvalidParameter(format!("bad dimension `{s}`"))),
            }
        };
        match words {
            ["two_point"] | ["example1"] => Ok(Family::TwoPoint),
            ["heis_ball"] => Ok(Family::HeisBall),
            ["zd_ball", d] => Ok(Family::ZdBall { dim: dim(d)? }),
            ["zd_box", d] => Ok(Family::ZdBox { dim: dim(d)? }),
            ["animal", d] => Ok(Family::Animal { dim: dim(d)?, seed }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::TwoPoint => write!(f, "two_point"),
            Family::ZdBall { dim } => write!(f, "zd_ball_{dim}"),
            Family::ZdBox { dim } => write!(f, "zd_box_{dim}"),
            Family::HeisBall => write!(f, "heis_ball"),
            Family::Animal { dim, seed } => write!(f, "animal_{dim}_s{seed}"),
        }
    }
}

/// Inclusive parameter range written `a..b` (or a single value).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamRange {
    pub start: u32,
    pub end: u32,
}

impl ParamRange {
    pub fn values(self) -> Vec<u32> {
        (self.start..=self.end).collect()
    }
}

impl FromStr for ParamRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad range `{s}`, expected a..b"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
            None => (s, s),
        };
        let start: u32 = a.trim().parse().map_err(|_| bad())?;
        let end: u32 = b.trim().parse().map_err(|_| bad())?;
        if start > end {
            return Err(bad());
        }
        Ok(ParamRange { start, end })
    }
}
