use std::collections::{HashMap, HashSet};

use super::{GroupDescriptor, GroupElement};
use crate::error::{Error, Result};

/// Default ceiling on the number of elements a single ball enumeration may hold.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// Word-metric ball `{x : d(center, x) <= radius}`, sorted lexicographically.
pub fn ball(desc: &GroupDescriptor, center: &GroupElement, radius: u32, cap: usize) -> Result<Vec<GroupElement>> {
    desc.check(center)?;
    let mut seen: HashSet<GroupElement> = HashSet::from([center.clone()]);
    let mut frontier = vec![center.clone()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in &frontier {
            for h in desc.neighbors(g) {
                if !seen.contains(&h) {
                    seen.insert(h.clone());
                    next.push(h);
                }
            }
        }
        if seen.len() > cap {
            return Err(Error::ResourceLimit { cap });
        }
        frontier = next;
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// BFS distance `d(g, h)` in the Cayley graph, or `None` when it exceeds `cap`.
pub fn word_distance(desc: &GroupDescriptor, g: &GroupElement, h: &GroupElement, cap: u32) -> Result<Option<u32>> {
    desc.check(g)?;
    desc.check(h)?;
    // d(g, h) = |g^{-1} h| by left invariance.
    let target = desc.multiply_unchecked(&desc.inverse_unchecked(g), h);
    if target.is_identity() {
        return Ok(Some(0));
    }
    let mut seen: HashSet<GroupElement> = HashSet::from([desc.identity()]);
    let mut frontier = vec![desc.identity()];
    for r in 1..=cap {
        let mut next = Vec::new();
        for x in &frontier {
            for y in desc.neighbors(x) {
                if y == target {
                    return Ok(Some(r));
                }
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if seen.len() > DEFAULT_BALL_CAP {
            return Err(Error::ResourceLimit { cap: DEFAULT_BALL_CAP });
        }
        frontier = next;
    }
    Ok(None)
}

/// Spheres of the identity ball, grown on demand.
///
/// Left translation is a Cayley-graph automorphism, so `B(x, r) = x · B(e, r)`
/// and `d(x, x·g) = |g|`; one enumeration serves every center.
#[derive(Debug, Clone)]
pub struct BallLayers {
    desc: GroupDescriptor,
    layers: Vec<Vec<GroupElement>>,
    dist: HashMap<GroupElement, u32>,
    cap: usize,
}

impl BallLayers {
    pub fn new(desc: &GroupDescriptor, cap: usize) -> Self {
        let e = desc.identity();
        BallLayers { desc: desc.clone(), layers: vec![vec![e.clone()]], dist: HashMap::from([(e, 0)]), cap }
    }

    pub fn with_radius(desc: &GroupDescriptor, radius: u32, cap: usize) -> Result<Self> {
        let mut layers = Self::new(desc, cap);
        layers.extend_to(radius)?;
        Ok(layers)
    }

    pub fn radius(&self) -> u32 {
        (self.layers.len() - 1) as u32
    }

    /// Number of elements in the enumerated ball.
    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn extend_to(&mut self, radius: u32) -> Result<()> {
        while self.radius() < radius {
            let r = self.radius() + 1;
            let mut next = Vec::new();
            for g in self.layers.last().expect("layer 0 always present") {
                for h in self.desc.neighbors(g) {
                    if !self.dist.contains_key(&h) {
                        self.dist.insert(h.clone(), r);
                        next.push(h);
                    }
                }
            }
            if self.dist.len() > self.cap {
                return Err(Error::ResourceLimit { cap: self.cap });
            }
            next.sort();
            self.layers.push(next);
        }
        Ok(())
    }

    /// Elements of word length exactly `r` (sorted).
    pub fn sphere(&self, r: u32) -> &[GroupElement] {
        &self.layers[r as usize]
    }

    /// Word length `|g|` if `g` lies in the enumerated ball.
    pub fn length(&self, g: &GroupElement) -> Option<u32> {
        self.dist.get(g).copied()
    }

    /// `d(x, y)` if it is at most the enumerated radius.
    pub fn distance(&self, x: &GroupElement, y: &GroupElement) -> Option<u32> {
        let g = self.desc.multiply_unchecked(&self.desc.inverse_unchecked(x), y);
        self.length(&g)
    }

    /// Distances from `center` to every element of `B(center, radius)`.
    pub fn distances_from(&self, center: &GroupElement, radius: u32) -> HashMap<GroupElement, u32> {
        assert!(radius <= self.radius(), "ball layers enumerated only to radius {}", self.radius());
        let mut out = HashMap::with_capacity(self.dist.len());
        for (r, layer) in self.layers[..=radius as usize].iter().enumerate() {
            for g in layer {
                out.insert(self.desc.multiply_unchecked(center, g), r as u32);
            }
        }
        out
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.desc
    }
}
