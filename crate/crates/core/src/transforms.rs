//! Colour switching, stabilisation and the refinement step that turns a
//! `k`-stabilised good colouring into a smaller `(k+1)`-stabilised one.

use std::collections::BTreeMap;
use std::fmt;

use crate::colorability::chromatic_at_most;
use crate::error::{invalid, Error, Result};
use crate::grid::{agreement_graph, pair_rank, pairs0, rank0, CliqueColoring, Color, VerticalColoring};

/// A partition of rows `1..=m` into disjoint nonempty classes, each sorted,
/// with classes ordered by their smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowPartition {
    m: usize,
    classes: Vec<Vec<usize>>,
    owner: Vec<usize>,
}

impl RowPartition {
    pub fn new(m: usize, mut classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; m];
        for class in classes.iter_mut() {
            if class.is_empty() {
                return Err(invalid("partition classes must be nonempty"));
            }
            class.sort_unstable();
        }
        classes.sort_by_key(|c| c[0]);
        for (t, class) in classes.iter().enumerate() {
            for &a in class {
                if a == 0 || a > m {
                    return Err(invalid(format!("row {a} is outside [1, {m}]")));
                }
                if owner[a - 1] != usize::MAX {
                    return Err(invalid(format!("row {a} appears in two classes")));
                }
                owner[a - 1] = t;
            }
        }
        if let Some(a) = owner.iter().position(|&t| t == usize::MAX) {
            return Err(invalid(format!("row {} is not covered", a + 1)));
        }
        Ok(RowPartition { m, classes, owner })
    }

    /// The single-class partition `{[m]}` (no classes when `m = 0`).
    pub fn trivial(m: usize) -> Self {
        let classes = if m == 0 { vec![] } else { vec![(1..=m).collect()] };
        RowPartition { m, classes, owner: vec![0; m] }
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Index of the class containing row `a`.
    pub fn class_of(&self, a: usize) -> usize {
        self.owner[a - 1]
    }

    /// A largest class; ties go to the class with the smallest minimum.
    pub fn largest(&self) -> &[usize] {
        let mut best: &[usize] = &[];
        for c in &self.classes {
            if c.len() > best.len() {
                best = c;
            }
        }
        best
    }
}

/// All nonempty intersections `I_1 ∩ … ∩ I_k`, one class from each input.
pub fn common_refinement(parts: &[RowPartition]) -> Result<RowPartition> {
    let Some(first) = parts.first() else {
        return Err(invalid("common refinement of an empty list of partitions"));
    };
    let m = first.ground_size();
    if let Some(p) = parts.iter().find(|p| p.ground_size() != m) {
        return Err(invalid(format!(
            "partitions over different ground sets ({m} and {} rows)",
            p.ground_size()
        )));
    }
    let mut cells: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for a in 1..=m {
        let key = parts.iter().map(|p| p.class_of(a)).collect();
        cells.entry(key).or_default().push(a);
    }
    RowPartition::new(m, cells.into_values().collect())
}

/// Swap of two colours at one row pair, applied in every column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SwitchRecord {
    pub edge: (usize, usize),
    pub colors: (Color, Color),
}

impl fmt::Display for SwitchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s {} {} {} {}", self.edge.0, self.edge.1, self.colors.0, self.colors.1)
    }
}

fn check_color(chi: &VerticalColoring, c: Color) -> Result<()> {
    if c.0 == 0 || c.get() > chi.r() {
        return Err(invalid(format!("colour {c} is outside [1, {}]", chi.r())));
    }
    Ok(())
}

fn switch_in_place(chi: &mut VerticalColoring, idx: usize, c: Color, d: Color) {
    for col in chi.columns_mut() {
        let slot = &mut col.colors_mut()[idx];
        if *slot == c {
            *slot = d;
        } else if *slot == d {
            *slot = c;
        }
    }
}

/// Switches colours `c` and `d` at the row pair `e` in every column.
pub fn switch(chi: &VerticalColoring, e: (usize, usize), c: Color, d: Color) -> Result<VerticalColoring> {
    let idx = pair_rank(e.0, e.1, chi.m())?;
    check_color(chi, c)?;
    check_color(chi, d)?;
    let mut out = chi.clone();
    switch_in_place(&mut out, idx, c, d);
    Ok(out)
}

/// Replays a switch log in order.
pub fn apply_switches(chi: &VerticalColoring, log: &[SwitchRecord]) -> Result<VerticalColoring> {
    let mut out = chi.clone();
    for s in log {
        let idx = pair_rank(s.edge.0, s.edge.1, chi.m())?;
        check_color(chi, s.colors.0)?;
        check_color(chi, s.colors.1)?;
        switch_in_place(&mut out, idx, s.colors.0, s.colors.1);
    }
    Ok(out)
}

/// Makes column 1 constant `c_1` by switching `c_1` with `χ_1(e)` at every edge.
pub fn stabilise_first(chi: &VerticalColoring) -> VerticalColoring {
    stabilise_first_logged(chi).0
}

/// As [`stabilise_first`], also returning the non-identity switches applied.
pub fn stabilise_first_logged(chi: &VerticalColoring) -> (VerticalColoring, Vec<SwitchRecord>) {
    let mut out = chi.clone();
    let mut log = Vec::new();
    for (idx, (a, b)) in pairs0(chi.m()).into_iter().enumerate() {
        let c = out.columns()[0].colors()[idx];
        if c != Color::FIRST {
            switch_in_place(&mut out, idx, Color::FIRST, c);
            log.push(SwitchRecord { edge: (a + 1, b + 1), colors: (Color::FIRST, c) });
        }
    }
    (out, log)
}

/// Restricts every column to the rows in `rows` (relabelled `1..=|rows|` in increasing order).
pub fn restrict_rows(chi: &VerticalColoring, rows: &[usize]) -> Result<VerticalColoring> {
    if rows.len() < 2 {
        return Err(invalid(format!("row subset must have at least 2 rows, got {}", rows.len())));
    }
    let mut sorted = rows.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != rows.len() {
        return Err(invalid("row subset contains duplicates"));
    }
    if sorted[0] == 0 || *sorted.last().unwrap() > chi.m() {
        return Err(invalid(format!("row subset leaves [1, {}]", chi.m())));
    }
    let k = sorted.len();
    let m = chi.m();
    let columns = chi
        .columns()
        .iter()
        .map(|col| {
            let colors = pairs0(k)
                .into_iter()
                .map(|(a, b)| col.colors()[rank0(sorted[a] - 1, sorted[b] - 1, m)])
                .collect();
            CliqueColoring::new(k, colors).expect("restricted column has C(k,2) entries")
        })
        .collect();
    VerticalColoring::new(k, chi.r(), columns)
}

/// Result of one stabilisation step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    /// The `(k+1)`-stabilised colouring on the rows of `rows`, relabelled.
    pub coloring: VerticalColoring,
    /// The chosen class `X`, in the input's row labels.
    pub rows: Vec<usize>,
    /// The refinement `𝒫` of the colour-class partitions.
    pub partition: RowPartition,
    /// Switches applied before restricting, in the input's row labels.
    pub switches: Vec<SwitchRecord>,
}

/// One refinement step on a `k`-stabilised colouring with `M ≥ r^k + 1` rows.
///
/// For each `i ≤ k` the agreement graph `𝒢(χ_i, χ_{k+1})` is the `c_i`-class of
/// column `k+1`; a proper `r`-colouring of it gives a partition into
/// `c_i`-independent sets. The largest class `X` of their common refinement has
/// at least `⌈M / r^k⌉` rows, and column `k+1` has no colour `c_1..c_k` inside `X`,
/// so switching `c_{k+1}` with `χ_{k+1}(e)` for `e ⊆ X` leaves columns `1..k` alone.
pub fn stabilise_step(chi: &VerticalColoring, k: usize) -> Result<StepOutcome> {
    let r = chi.r();
    let m = chi.m();
    if k > r {
        return Err(Error::PreconditionUnmet(format!("level k = {k} exceeds r = {r}")));
    }
    if chi.n() < k + 1 {
        return Err(Error::PreconditionUnmet(format!("need at least {} columns, got {}", k + 1, chi.n())));
    }
    let threshold = u32::try_from(k).ok().and_then(|k| r.checked_pow(k)).and_then(|p| p.checked_add(1));
    if threshold.is_none_or(|t| m < t) {
        return Err(Error::PreconditionUnmet(format!("need at least r^k + 1 rows (r = {r}, k = {k}), got {m}")));
    }
    if !chi.is_stabilised(k) {
        return Err(Error::PreconditionUnmet(format!("colouring is not {k}-stabilised")));
    }

    let mut parts = Vec::with_capacity(k);
    for i in 1..=k {
        let g = agreement_graph(chi, i, k + 1)?;
        match chromatic_at_most(&g, r) {
            Some(p) => parts.push(p.classes),
            None => return Err(Error::NotColorable { column: i, against: k + 1 }),
        }
    }
    let partition = if parts.is_empty() { RowPartition::trivial(m) } else { common_refinement(&parts)? };
    let rows = partition.largest().to_vec();
    if rows.len() < 2 {
        return Err(Error::InternalContradiction(format!(
            "{} rows split into {} independent classes, none with two rows",
            m,
            partition.len()
        )));
    }

    let target = Color((k + 1) as u16);
    let mut work = chi.clone();
    let mut switches = Vec::new();
    for (x, &a) in rows.iter().enumerate() {
        for &b in &rows[x + 1..] {
            let idx = rank0(a - 1, b - 1, m);
            let c = work.columns()[k].colors()[idx];
            if c != target {
                switch_in_place(&mut work, idx, target, c);
                switches.push(SwitchRecord { edge: (a, b), colors: (target, c) });
            }
        }
    }
    let coloring = restrict_rows(&work, &rows)?;
    debug_assert!(coloring.is_stabilised(k + 1));
    Ok(StepOutcome { coloring, rows, partition, switches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorability::is_good;

    fn c(k: u16) -> Color {
        Color(k)
    }

    fn part(m: usize, classes: &[&[usize]]) -> RowPartition {
        RowPartition::new(m, classes.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(RowPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(RowPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(RowPartition::new(3, vec![vec![1, 2, 3], vec![]]).is_err());
        let p = part(4, &[&[4, 2], &[3, 1]]);
        assert_eq!(p.classes(), &[vec![1, 3], vec![2, 4]]);
        assert_eq!(p.class_of(4), 1);
    }

    #[test]
    fn refinement_examples() {
        let a = part(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(common_refinement(std::slice::from_ref(&a)).unwrap(), a);
        let b = part(4, &[&[1, 3], &[2, 4]]);
        assert_eq!(common_refinement(&[a, b]).unwrap(), part(4, &[&[1], &[2], &[3], &[4]]));
        let x = part(4, &[&[1, 2, 3], &[4]]);
        let y = part(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(common_refinement(&[x.clone(), y]).unwrap(), part(4, &[&[1, 2], &[3], &[4]]));
        assert!(common_refinement(&[x, part(3, &[&[1, 2, 3]])]).is_err());
        assert!(common_refinement(&[]).is_err());
    }

    #[test]
    fn switch_examples() {
        let chi = VerticalColoring::from_fn(2, 2, 2, |i, _, _| c(i as u16)).unwrap();
        assert_eq!(switch(&chi, (1, 2), c(1), c(1)).unwrap(), chi);
        let s = switch(&chi, (1, 2), c(1), c(2)).unwrap();
        assert_eq!((s.color(1, 1, 2), s.color(2, 1, 2)), (c(2), c(1)));
        assert_eq!(switch(&s, (1, 2), c(1), c(2)).unwrap(), chi);
        assert!(switch(&chi, (1, 3), c(1), c(2)).is_err());
        assert!(switch(&chi, (1, 2), c(1), c(3)).is_err());
    }

    #[test]
    fn stabilise_first_examples() {
        let chi = VerticalColoring::from_fn(3, 3, 3, |i, _, _| c(i as u16)).unwrap();
        assert_eq!(stabilise_first(&chi), chi);

        let chi = VerticalColoring::from_fn(2, 2, 2, |i, _, _| c(3 - i as u16)).unwrap();
        let (s, log) = stabilise_first_logged(&chi);
        assert_eq!((s.color(1, 1, 2), s.color(2, 1, 2)), (c(1), c(2)));
        assert_eq!(log.len(), 1);
        assert_eq!(apply_switches(&chi, &log).unwrap(), s);
    }

    #[test]
    fn restrict_examples() {
        let chi = VerticalColoring::from_fn(3, 2, 3, |i, a, b| c(((i + a + b) % 3 + 1) as u16)).unwrap();
        assert_eq!(restrict_rows(&chi, &[1, 2, 3]).unwrap(), chi);
        let sub = restrict_rows(&chi, &[1, 3]).unwrap();
        assert_eq!(sub.m(), 2);
        assert_eq!(sub.color(1, 1, 2), chi.color(1, 1, 3));
        assert_eq!(sub.color(2, 1, 2), chi.color(2, 1, 3));
        assert!(restrict_rows(&chi, &[2]).is_err());
        assert!(restrict_rows(&chi, &[2, 2]).is_err());
        assert!(restrict_rows(&chi, &[2, 4]).is_err());
    }

    #[test]
    fn step_identity_case() {
        let chi = VerticalColoring::from_fn(3, 2, 2, |i, _, _| c(i as u16)).unwrap();
        let out = stabilise_step(&chi, 1).unwrap();
        assert_eq!(out.rows, vec![1, 2, 3]);
        assert!(out.switches.is_empty());
        assert_eq!(out.coloring, chi);
        assert!(out.coloring.is_stabilised(2));
    }

    #[test]
    fn step_reports_non_colourable() {
        // column 2 is c_1 everywhere: 𝒢(χ_1, χ_2) = K_3, not 2-colourable
        let chi = VerticalColoring::from_fn(3, 2, 2, |_, _, _| c(1)).unwrap();
        assert_eq!(stabilise_step(&chi, 1), Err(Error::NotColorable { column: 1, against: 2 }));
    }

    #[test]
    fn step_on_four_cycle() {
        let c1_edges = [(1, 3), (1, 4), (2, 3), (2, 4)];
        let chi = VerticalColoring::from_fn(5, 2, 2, |i, a, b| {
            if i == 1 || c1_edges.contains(&(a, b)) { c(1) } else { c(2) }
        })
        .unwrap();
        let out = stabilise_step(&chi, 1).unwrap();
        assert_eq!(out.partition.classes(), &[vec![1, 2, 5], vec![3, 4]]);
        assert_eq!(out.rows, vec![1, 2, 5]);
        assert!(out.coloring.m() >= 3);
        assert!(out.coloring.is_stabilised(2));
        assert_eq!(is_good(&out.coloring).good, is_good(&chi).good);
    }

    #[test]
    fn step_preconditions() {
        let chi = VerticalColoring::from_fn(4, 3, 2, |i, _, _| c(if i == 1 { 1 } else { 2 })).unwrap();
        assert!(matches!(stabilise_step(&chi, 2), Err(Error::PreconditionUnmet(_))));
        assert!(matches!(stabilise_step(&chi, 3), Err(Error::PreconditionUnmet(_))));
        let not_stab = VerticalColoring::from_fn(4, 3, 2, |_, _, _| c(2)).unwrap();
        assert!(matches!(stabilise_step(&not_stab, 1), Err(Error::PreconditionUnmet(_))));
    }
}
