//! Set families over `[N]`, their intersection profiles, and the largest
//! independent classes extracted from an `(r−1)`-stabilised colouring.

use std::collections::BTreeSet;

use crate::colorability::chromatic_at_most;
use crate::error::{invalid, Error, Result};
use crate::grid::{agreement_graph, VerticalColoring};
use crate::transforms::{common_refinement, RowPartition};

/// Distinct subsets of `{1, …, ground_size}`, each stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground_size: usize,
    sets: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new(ground_size: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(sets.len());
        for (idx, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("set {idx} repeats an element")));
            }
            if s.first() == Some(&0) || s.last().is_some_and(|&x| x > ground_size) {
                return Err(invalid(format!("set {idx} is not a subset of [{ground_size}]")));
            }
            if !seen.insert(s.clone()) {
                return Err(invalid(format!("set {idx} duplicates an earlier member")));
            }
            out.push(s);
        }
        Ok(SetFamily { ground_size, sets: out })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

fn meet(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// The set `{|A ∩ B| : A ≠ B ∈ F}`.
pub fn intersection_profile(family: &SetFamily) -> Result<BTreeSet<usize>> {
    if family.len() < 2 {
        return Err(invalid("intersection profile needs at least two sets"));
    }
    let mut out = BTreeSet::new();
    for (x, a) in family.sets.iter().enumerate() {
        for b in &family.sets[x + 1..] {
            out.insert(meet(a, b));
        }
    }
    Ok(out)
}

/// The allowed pairwise intersection sizes `𝓛`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntersectionSpec {
    pub allowed: BTreeSet<usize>,
}

impl IntersectionSpec {
    pub fn new(allowed: impl IntoIterator<Item = usize>) -> Self {
        IntersectionSpec { allowed: allowed.into_iter().collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LCheck {
    pub ok: bool,
    /// First violating pair of set indices (0-based, lexicographic).
    pub violating: Option<(usize, usize)>,
}

pub fn check_l_intersecting(family: &SetFamily, spec: &IntersectionSpec) -> LCheck {
    for (x, a) in family.sets.iter().enumerate() {
        for (y, b) in family.sets.iter().enumerate().skip(x + 1) {
            if !spec.allowed.contains(&meet(a, b)) {
                return LCheck { ok: false, violating: Some((x, y)) };
            }
        }
    }
    LCheck { ok: true, violating: None }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FisherVerdict {
    pub lambda: usize,
    pub family_size: usize,
    pub ground_size: usize,
}

/// Confirms `|F| ≤ N` for a family whose pairwise intersections all have the
/// same size `λ ≥ 1`. A violation means the input is corrupt.
pub fn fisher_check(family: &SetFamily) -> Result<FisherVerdict> {
    let profile = intersection_profile(family).map_err(|e| Error::HypothesisUnmet(e.to_string()))?;
    let lambda = match profile.iter().collect::<Vec<_>>()[..] {
        [&l] if l >= 1 => l,
        [_] => return Err(Error::HypothesisUnmet("pairwise intersections are empty (lambda = 0)".into())),
        _ => return Err(Error::HypothesisUnmet(format!("intersection sizes {profile:?} are not uniform"))),
    };
    if family.len() > family.ground_size {
        return Err(Error::InternalContradiction(format!(
            "{} sets with uniform intersection {lambda} on {} points",
            family.len(),
            family.ground_size
        )));
    }
    Ok(FisherVerdict { lambda, family_size: family.len(), ground_size: family.ground_size })
}

/// Partition and chosen class for one column `j ≥ r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnClass {
    pub column: usize,
    /// Refinement of the colour-class partitions of `𝒢(χ_i, χ_j)`, `i < r`.
    pub partition: RowPartition,
    /// Largest class of `partition`.
    pub largest: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargestClasses {
    pub ground_size: usize,
    pub columns: Vec<ColumnClass>,
}

impl LargestClasses {
    /// The family `{F_r, …, F_n}`; fails if two columns chose the same class.
    pub fn family(&self) -> Result<SetFamily> {
        SetFamily::new(self.ground_size, self.columns.iter().map(|c| c.largest.clone()).collect())
    }
}

/// For every column `j ∈ {r, …, n}` of an `(r−1)`-stabilised colouring, refines
/// proper `r`-colourings of `𝒢(χ_i, χ_j)` for `i < r` into a partition of the rows
/// into `{c_1, …, c_{r−1}}`-independent sets of `χ_j`, and keeps its largest class.
pub fn extract_largest_classes(chi: &VerticalColoring) -> Result<LargestClasses> {
    let r = chi.r();
    let m = chi.m();
    if !chi.is_stabilised(r - 1) {
        return Err(Error::PreconditionUnmet(format!("colouring is not {}-stabilised", r - 1)));
    }
    let mut columns = Vec::new();
    for j in r..=chi.n() {
        let mut parts = Vec::with_capacity(r - 1);
        for i in 1..r {
            let g = agreement_graph(chi, i, j)?;
            let p = chromatic_at_most(&g, r).ok_or(Error::NotColorable { column: i, against: j })?;
            parts.push(p.classes);
        }
        let partition = if parts.is_empty() { RowPartition::trivial(m) } else { common_refinement(&parts)? };
        let largest = partition.largest().to_vec();
        columns.push(ColumnClass { column: j, partition, largest });
    }
    Ok(LargestClasses { ground_size: m, columns })
}
