//! The row-index lower-bound colouring, the pigeonhole rectangle finder, and
//! the stabilisation chain that refutes goodness at `r^{C(r+1,2)} + 1` rows.

use std::collections::HashMap;

use crate::error::{invalid, Error, Result};
use crate::grid::{agreement_graph, AgreementGraph, CliqueColoring, Color, FullGridColoring, Rectangle, VerticalColoring};
use crate::transforms::{apply_switches, restrict_rows, stabilise_step, SwitchRecord};

/// Vertical edges colour 1, horizontal edges of row `a` colour `a`; uses `r = m`
/// colours and contains no alternating rectangle. Needs `m ≤ n`.
pub fn row_index_coloring(m: usize, n: usize) -> Result<FullGridColoring> {
    if m > n {
        return Err(invalid(format!("row_index_coloring needs m <= n (got {m} > {n}); transpose the grid")));
    }
    let r = u16::try_from(m).map_err(|_| invalid(format!("{m} colours do not fit")))?;
    let vertical = VerticalColoring::from_fn(m, n, m.max(1), |_, _, _| Color::FIRST)?;
    let horizontal = (1..=r).map(|a| CliqueColoring::constant(n, Color(a))).collect();
    FullGridColoring::new(vertical, horizontal)
}

fn pow_saturating(base: usize, exp: usize) -> usize {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .unwrap_or(usize::MAX)
}

/// Finds an alternating rectangle among the first `r + 1` rows once
/// `n > r^{C(r+1,2)}`: two columns coloured identically on those rows, then two of
/// the `r + 1` horizontal edges between them sharing a colour.
pub fn shelah_find_rectangle(full: &FullGridColoring) -> Result<Rectangle> {
    let r = full.r();
    let dims = full.dims();
    let rows = r + 1;
    let needed = pow_saturating(r, rows * (rows - 1) / 2).saturating_add(1);
    if dims.m < rows || dims.n < needed {
        return Err(Error::PreconditionUnmet(format!(
            "pigeonhole needs m >= {rows} and n >= r^C(r+1,2) + 1 = {needed}, got {}x{}",
            dims.m, dims.n
        )));
    }
    let chi = full.vertical();
    let signature = |i: usize| -> Vec<Color> {
        let mut sig = Vec::with_capacity(rows * (rows - 1) / 2);
        for a in 1..=rows {
            for b in a + 1..=rows {
                sig.push(chi.color(i, a, b));
            }
        }
        sig
    };
    let mut first_seen: HashMap<Vec<Color>, usize> = HashMap::new();
    let mut best: Option<(usize, usize)> = None;
    for j in 1..=dims.n {
        let sig = signature(j);
        if let Some(&i) = first_seen.get(&sig) {
            // the first repeat of column i pairs it with its next twin
            if best.is_none_or(|(bi, _)| i < bi) {
                best = Some((i, j));
            }
        } else {
            first_seen.insert(sig, j);
        }
    }
    let (i, j) = best.ok_or_else(|| {
        Error::InternalContradiction(format!("{} columns over {} colourings without a repeat", dims.n, needed - 1))
    })?;
    for a in 1..=rows {
        for b in a + 1..=rows {
            if full.horizontal_color(a, i, j) == full.horizontal_color(b, i, j) {
                return Ok(Rectangle::new(a, b, i, j));
            }
        }
    }
    Err(Error::InternalContradiction(format!("{rows} horizontal edges in {r} colours are all distinct")))
}

/// A non-`r`-colourable agreement graph reached by the stabilisation chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutationWitness {
    /// Failing column pair `(i, k + 1)`.
    pub columns: (usize, usize),
    /// Stabilisation level at which the step failed.
    pub level: usize,
    /// Surviving rows, in the original labels.
    pub rows: Vec<usize>,
    /// The agreement graph on `rows` (relabelled `1..=|rows|`).
    pub graph: AgreementGraph,
    /// Every switch applied along the chain, in original row labels.
    pub switches: Vec<SwitchRecord>,
}

impl RefutationWitness {
    /// Edges of the failing graph in the original row labels.
    pub fn original_edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges().into_iter().map(|(a, b)| (self.rows[a - 1], self.rows[b - 1])).collect()
    }

    /// Recomputes the failing graph from the original colouring by replaying the switch log.
    pub fn replay(&self, chi: &VerticalColoring) -> Result<AgreementGraph> {
        let switched = apply_switches(chi, &self.switches)?;
        let restricted = restrict_rows(&switched, &self.rows)?;
        agreement_graph(&restricted, self.columns.0, self.columns.1)
    }
}

/// Runs `stabilise_step` for `k = 1, 2, …` on a 1-stabilised colouring with at
/// least `r^{C(r+1,2)} + 1` rows and `r + 1` columns until some agreement graph
/// is not `r`-colourable.
pub fn shelah_refute(chi: &VerticalColoring) -> Result<RefutationWitness> {
    let r = chi.r();
    let needed = pow_saturating(r, r * (r + 1) / 2).saturating_add(1);
    if chi.m() < needed || chi.n() < r + 1 {
        return Err(Error::PreconditionUnmet(format!(
            "refutation needs at least {needed} rows and {} columns, got {}x{}",
            r + 1,
            chi.m(),
            chi.n()
        )));
    }
    if !chi.is_stabilised(1) {
        return Err(Error::PreconditionUnmet("colouring is not 1-stabilised".into()));
    }
    let mut current = chi.clone();
    let mut rows: Vec<usize> = (1..=chi.m()).collect();
    let mut switches = Vec::new();
    for k in 1..=r {
        match stabilise_step(&current, k) {
            Ok(step) => {
                switches.extend(step.switches.iter().map(|s| SwitchRecord {
                    edge: (rows[s.edge.0 - 1], rows[s.edge.1 - 1]),
                    colors: s.colors,
                }));
                rows = step.rows.iter().map(|&x| rows[x - 1]).collect();
                current = step.coloring;
            }
            Err(Error::NotColorable { column, against }) => {
                let graph = agreement_graph(&current, column, against)?;
                return Ok(RefutationWitness { columns: (column, against), level: k, rows, graph, switches });
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::InternalContradiction(format!(
        "stabilisation chain reached level {} without a colourability failure",
        r + 1
    )))
}
