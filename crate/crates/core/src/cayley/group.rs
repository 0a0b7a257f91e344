use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A group element in coordinate normal form.
///
/// `(x_1, ..., x_D)` for the free abelian group of rank D and `(x, y, z)` for
/// the Heisenberg group, where `(x, y, z)` stands for the upper unitriangular
/// matrix with `x`, `z` on the first row and `y` on the second.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupElement(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for GroupElement {
    fn from(v: Vec<i64>) -> Self {
        GroupElement(v)
    }
}

impl<const N: usize> From<[i64; N]> for GroupElement {
    fn from(v: [i64; N]) -> Self {
        GroupElement(v.to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    FreeAbelian { rank: usize },
    Heisenberg,
}

impl GroupKind {
    pub fn coord_len(self) -> usize {
        match self {
            GroupKind::FreeAbelian { rank } => rank,
            GroupKind::Heisenberg => 3,
        }
    }

    pub fn growth_order(self) -> u32 {
        match self {
            GroupKind::FreeAbelian { rank } => rank as u32,
            GroupKind::Heisenberg => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            GroupKind::FreeAbelian { .. } => "free abelian",
            GroupKind::Heisenberg => "Heisenberg",
        }
    }

    /// Rank of the abelianization; a subset generates the group iff its image
    /// there generates it (for the two built-in nilpotent kinds).
    fn abelian_rank(self) -> usize {
        match self {
            GroupKind::FreeAbelian { rank } => rank,
            GroupKind::Heisenberg => 2,
        }
    }
}

/// A finitely generated group together with a symmetric generating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupConfig", into = "GroupConfig")]
pub struct GroupDescriptor {
    kind: GroupKind,
    generators: Vec<GroupElement>,
    growth_order: u32,
}

impl GroupDescriptor {
    /// ℤ^rank with the standard generators ±e_i.
    pub fn free_abelian(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidParameter("free abelian rank must be positive".into()));
        }
        let kind = GroupKind::FreeAbelian { rank };
        Ok(GroupDescriptor { kind, generators: default_generators(kind), growth_order: rank as u32 })
    }

    /// Heis(ℤ) with generators a^{±1} = (±1,0,0), b^{±1} = (0,±1,0).
    pub fn heisenberg() -> Self {
        let kind = GroupKind::Heisenberg;
        GroupDescriptor { kind, generators: default_generators(kind), growth_order: 4 }
    }

    /// Custom generating set. Checks symmetry, absence of the identity,
    /// duplicates, and that the set generates the group.
    pub fn with_generators(kind: GroupKind, generators: Vec<GroupElement>) -> Result<Self> {
        if kind.coord_len() == 0 {
            return Err(Error::InvalidParameter("free abelian rank must be positive".into()));
        }
        let desc = GroupDescriptor { kind, generators, growth_order: kind.growth_order() };
        for s in &desc.generators {
            desc.check(s)?;
            if s.is_identity() {
                return Err(Error::InvalidGenerators("identity is a generator".into()));
            }
        }
        let mut sorted = desc.generators.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGenerators("duplicate generator".into()));
        }
        for s in &desc.generators {
            let inv = desc.inverse_unchecked(s);
            if sorted.binary_search(&inv).is_err() {
                return Err(Error::InvalidGenerators(format!("set is not symmetric: {inv:?} missing")));
            }
        }
        let images: Vec<Vec<i64>> =
            desc.generators.iter().map(|s| s.coords()[..kind.abelian_rank()].to_vec()).collect();
        if !generates_lattice(images, kind.abelian_rank()) {
            return Err(Error::InvalidGenerators("set does not generate the group".into()));
        }
        Ok(desc)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Degree of the Cayley graph, |S|.
    pub fn degree(&self) -> usize {
        self.generators.len()
    }

    pub fn growth_order(&self) -> u32 {
        self.growth_order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.kind.coord_len()])
    }

    pub fn has_default_generators(&self) -> bool {
        self.generators == default_generators(self.kind)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.dim() != self.kind.coord_len() {
            return Err(Error::KindMismatch { kind: self.kind.name(), element: g.0.clone() });
        }
        Ok(())
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.multiply_unchecked(g, h))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(self.inverse_unchecked(g))
    }

    pub(crate) fn multiply_unchecked(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        match self.kind {
            GroupKind::FreeAbelian { .. } => GroupElement(g.0.iter().zip(&h.0).map(|(a, b)| a + b).collect()),
            GroupKind::Heisenberg => {
                let (a, b) = (&g.0, &h.0);
                GroupElement(vec![a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]])
            }
        }
    }

    pub(crate) fn inverse_unchecked(&self, g: &GroupElement) -> GroupElement {
        match self.kind {
            GroupKind::FreeAbelian { .. } => GroupElement(g.0.iter().map(|a| -a).collect()),
            GroupKind::Heisenberg => {
                let a = &g.0;
                GroupElement(vec![-a[0], -a[1], a[0] * a[1] - a[2]])
            }
        }
    }

    /// Right neighbours `g·s` of `g` in the Cayley graph.
    pub(crate) fn neighbors<'a>(&'a self, g: &'a GroupElement) -> impl Iterator<Item = GroupElement> + 'a {
        self.generators.iter().map(move |s| self.multiply_unchecked(g, s))
    }
}

fn default_generators(kind: GroupKind) -> Vec<GroupElement> {
    match kind {
        GroupKind::FreeAbelian { rank } => (0..rank)
            .flat_map(|i| {
                [1i64, -1].into_iter().map(move |sign| {
                    let mut c = vec![0; rank];
                    c[i] = sign;
                    GroupElement(c)
                })
            })
            .collect(),
        GroupKind::Heisenberg => {
            vec![[1, 0, 0].into(), [-1, 0, 0].into(), [0, 1, 0].into(), [0, -1, 0].into()]
        }
    }
}

/// Whether the integer vectors generate all of ℤ^rank (Hermite reduction).
fn generates_lattice(mut rows: Vec<Vec<i64>>, rank: usize) -> bool {
    // Column `col` is reduced into row `col`.
    for col in 0..rank {
        loop {
            let pivot = (col..rows.len()).filter(|&r| rows[r][col] != 0).min_by_key(|&r| rows[r][col].abs());
            let Some(p) = pivot else { return false };
            rows.swap(col, p);
            let mut done = true;
            let (head, tail) = rows.split_at_mut(col + 1);
            let top = &head[col];
            for row in tail.iter_mut() {
                let q = row[col] / top[col];
                if q != 0 {
                    for (x, y) in row[col..rank].iter_mut().zip(&top[col..rank]) {
                        *x -= q * y;
                    }
                }
                if row[col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[col][col].abs() != 1 {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum KindTag {
    FreeAbelian,
    Heisenberg,
}

/// On-disk group descriptor:
/// `{"kind": "free_abelian"|"heisenberg", "rank": int, "generators": [[int,...],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupConfig {
    kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Vec<i64>>>,
}

impl TryFrom<GroupConfig> for GroupDescriptor {
    type Error = Error;

    fn try_from(cfg: GroupConfig) -> Result<Self> {
        let kind = match (cfg.kind, cfg.rank) {
            (KindTag::FreeAbelian, Some(rank)) => GroupKind::FreeAbelian { rank },
            (KindTag::FreeAbelian, None) => return Err(Error::Schema("free_abelian group needs a \"rank\"".into())),
            (KindTag::Heisenberg, None) => GroupKind::Heisenberg,
            (KindTag::Heisenberg, Some(_)) => return Err(Error::Schema("heisenberg group takes no \"rank\"".into())),
        };
        match cfg.generators {
            Some(gens) => GroupDescriptor::with_generators(kind, gens.into_iter().map(GroupElement).collect()),
            None => match kind {
                GroupKind::FreeAbelian { rank } => GroupDescriptor::free_abelian(rank),
                GroupKind::Heisenberg => Ok(GroupDescriptor::heisenberg()),
            },
        }
    }
}

impl From<GroupDescriptor> for GroupConfig {
    fn from(desc: GroupDescriptor) -> Self {
        let generators =
            (!desc.has_default_generators()).then(|| desc.generators.iter().map(|g| g.0.clone()).collect());
        match desc.kind {
            GroupKind::FreeAbelian { rank } => GroupConfig { kind: KindTag::FreeAbelian, rank: Some(rank), generators },
            GroupKind::Heisenberg => GroupConfig { kind: KindTag::Heisenberg, rank: None, generators },
        }
    }
}
