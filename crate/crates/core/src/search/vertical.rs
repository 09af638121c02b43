//! Search over 1-stabilised vertical colourings.
//!
//! Column 1 is fixed to `c_1`. Columns `2..=n` are filled edge by edge in pair
//! rank order under two symmetry reductions:
//!
//! * columns appear in non-decreasing lexicographic order;
//! * at each edge, colours other than `c_1` appear across the columns in
//!   first-use order (a switch of two colours `≠ c_1` at one edge).
//!
//! The lexicographically least member of each orbit satisfies both. Every
//! agreement graph only gains edges as a column fills, so a partial agreement
//! graph that is not `r`-colourable prunes the branch.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{SearchConfig, SearchResult, SearchStats};
use crate::bits::BitSet;
use crate::colorability::{extend_to_full, ColorabilityCache};
use crate::error::{Error, Result};
use crate::grid::{choose2, CliqueColoring, Color, VerticalColoring};

pub const VERTICAL_MAX_ROWS: usize = 11;
pub const VERTICAL_MAX_COLS: usize = 16;
pub const VERTICAL_MAX_COLORS: usize = 8;

/// Edges of column 2 enumerated before fanning out to workers.
const FANOUT_EDGES: usize = 12;

struct Ctx {
    m: usize,
    n: usize,
    r: u8,
    pairs: usize,
    cache: ColorabilityCache,
    nodes: AtomicU64,
}

struct State {
    /// `cols[j][e]`: 0-based colour of edge `e` in column `j`.
    cols: Vec<Vec<u8>>,
    /// `maxu[j][e]`: largest colour at `e` over columns `0..=j`.
    maxu: Vec<Vec<u8>>,
    /// `agree[j][i]`: agreement mask of column `j` (possibly partial) with column `i < j`.
    agree: Vec<Vec<u64>>,
    touched: Vec<usize>,
    nodes: u64,
}

impl Ctx {
    fn new_state(&self) -> State {
        State {
            cols: vec![vec![0; self.pairs]; self.n],
            maxu: vec![vec![0; self.pairs]; self.n],
            agree: (0..self.n).map(|j| vec![0; j]).collect(),
            touched: Vec::with_capacity(self.n * self.pairs),
            nodes: 0,
        }
    }

    fn colorable(&self, mask: u64) -> bool {
        self.cache.is_colorable(&BitSet::from_word(self.pairs, mask))
    }

    /// Tries colour `c` at edge `e` of column `j`; on success the agreement bits
    /// are set and the touched columns pushed on `st.touched`, returning how many.
    fn try_assign(&self, st: &mut State, j: usize, e: usize, c: u8) -> Option<usize> {
        st.nodes += 1;
        let bit = 1u64 << e;
        for i in 0..j {
            if st.cols[i][e] == c && !self.colorable(st.agree[j][i] | bit) {
                return None;
            }
        }
        st.cols[j][e] = c;
        st.maxu[j][e] = st.maxu[j - 1][e].max(c);
        let mut count = 0;
        for i in 0..j {
            if st.cols[i][e] == c {
                st.agree[j][i] |= bit;
                st.touched.push(i);
                count += 1;
            }
        }
        Some(count)
    }

    fn undo(&self, st: &mut State, j: usize, e: usize, count: usize) {
        let bit = !(1u64 << e);
        for _ in 0..count {
            let i = st.touched.pop().expect("touched stack underflow");
            st.agree[j][i] &= bit;
        }
    }

    fn range(&self, st: &State, j: usize, e: usize, eq: bool) -> (u8, u8) {
        let lo = if eq { st.cols[j - 1][e] } else { 0 };
        let hi = (st.maxu[j - 1][e] + 1).min(self.r - 1);
        (lo, hi)
    }

    /// Fills column `j` from edge `e` onwards, then the remaining columns.
    fn place(&self, st: &mut State, j: usize, e: usize, eq: bool) -> bool {
        if e == self.pairs {
            if j + 1 == self.n {
                return true;
            }
            return self.place(st, j + 1, 0, true);
        }
        let (lo, hi) = self.range(st, j, e, eq);
        for c in lo..=hi {
            if let Some(count) = self.try_assign(st, j, e, c) {
                let still_eq = eq && c == st.cols[j - 1][e];
                if self.place(st, j, e + 1, still_eq) {
                    return true;
                }
                self.undo(st, j, e, count);
            }
        }
        false
    }

    /// All feasible assignments of the first `depth` edges of column 2.
    fn prefixes(&self, depth: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut st = self.new_state();
        self.collect(&mut st, 0, depth, &mut out);
        self.nodes.fetch_add(st.nodes, Ordering::Relaxed);
        out
    }

    fn collect(&self, st: &mut State, e: usize, depth: usize, out: &mut Vec<Vec<u8>>) {
        if e == depth {
            out.push(st.cols[1][..depth].to_vec());
            return;
        }
        let (lo, hi) = self.range(st, 1, e, true);
        for c in lo..=hi {
            if let Some(count) = self.try_assign(st, 1, e, c) {
                self.collect(st, e + 1, depth, out);
                self.undo(st, 1, e, count);
            }
        }
    }

    fn run_prefix(&self, prefix: &[u8]) -> Option<Vec<Vec<u8>>> {
        let mut st = self.new_state();
        for (e, &c) in prefix.iter().enumerate() {
            self.try_assign(&mut st, 1, e, c).expect("prefix was feasible");
        }
        let found = self.place(&mut st, 1, prefix.len(), true);
        self.nodes.fetch_add(st.nodes, Ordering::Relaxed);
        found.then_some(st.cols)
    }
}

fn to_coloring(m: usize, r: usize, cols: &[Vec<u8>]) -> Result<VerticalColoring> {
    let columns = cols
        .iter()
        .map(|col| CliqueColoring::new(m, col.iter().map(|&c| Color(c as u16 + 1)).collect()))
        .collect::<Result<Vec<_>>>()?;
    VerticalColoring::new(m, r, columns)
}

/// A good, 1-stabilised vertical `r`-colouring of `Γ_{m,n}`, or `None` if none exists.
///
/// The returned colouring is the first one in search order, independent of the
/// worker count. Also returns the number of search nodes visited.
pub fn find_good_vertical(m: usize, n: usize, r: usize, cfg: &SearchConfig) -> Result<(Option<VerticalColoring>, u64)> {
    check_envelope(m, n, r)?;
    if n == 1 {
        let chi = VerticalColoring::from_fn(m, 1, r, |_, _, _| Color::FIRST)?;
        return Ok((Some(chi), 0));
    }
    let ctx = Ctx {
        m,
        n,
        r: r as u8,
        pairs: choose2(m),
        cache: ColorabilityCache::new(m, r),
        nodes: AtomicU64::new(0),
    };
    let prefixes = ctx.prefixes(ctx.pairs.min(FANOUT_EDGES));
    let found = cfg.install(|| prefixes.par_iter().find_map_first(|p| ctx.run_prefix(p)));
    let nodes = ctx.nodes.load(Ordering::Relaxed);
    let chi = found.map(|cols| to_coloring(ctx.m, r, &cols)).transpose()?;
    Ok((chi, nodes))
}

fn check_envelope(m: usize, n: usize, r: usize) -> Result<()> {
    if m == 0 || n == 0 || r == 0 {
        return Err(Error::InvalidArgument(format!("need m, n, r >= 1 (got {m}, {n}, {r})")));
    }
    if m > VERTICAL_MAX_ROWS || n > VERTICAL_MAX_COLS || r > VERTICAL_MAX_COLORS {
        return Err(Error::TooLarge(format!(
            "vertical oracle handles m <= {VERTICAL_MAX_ROWS}, n <= {VERTICAL_MAX_COLS}, r <= {VERTICAL_MAX_COLORS} (got {m}, {n}, {r})"
        )));
    }
    Ok(())
}

/// Exact `g(m, n)` if it is at most `r_cap`, searching good vertical colourings
/// and extending the first one found to a full certificate.
pub fn g_exact_vertical(m: usize, n: usize, r_cap: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    check_envelope(m, n, r_cap)?;
    let start = Instant::now();
    let mut nodes = 0;
    for r in 1..=r_cap {
        let (chi, visited) = find_good_vertical(m, n, r, cfg)?;
        nodes += visited;
        if let Some(chi) = chi {
            let cert = extend_to_full(&chi)?;
            return Ok(SearchResult {
                m,
                n,
                r_cap,
                value: Some(r),
                certificate: Some(cert),
                stats: SearchStats { nodes, elapsed: start.elapsed() },
            });
        }
    }
    Ok(SearchResult { m, n, r_cap, value: None, certificate: None, stats: SearchStats { nodes, elapsed: start.elapsed() } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorability::is_good;
    use crate::grid::enumerate_alternating_rectangles;

    #[test]
    fn trivial_shapes() {
        let cfg = SearchConfig::default();
        for n in 1..=5 {
            assert_eq!(g_exact_vertical(1, n, 3, &cfg).unwrap().value, Some(1));
        }
        assert_eq!(g_exact_vertical(4, 1, 3, &cfg).unwrap().value, Some(1));
    }

    #[test]
    fn two_by_two() {
        let res = g_exact_vertical(2, 2, 3, &SearchConfig::default()).unwrap();
        assert_eq!(res.value, Some(2));
        assert!(enumerate_alternating_rectangles(res.certificate.as_ref().unwrap()).is_empty());
    }

    #[test]
    fn found_colourings_are_good_and_stabilised() {
        for (m, n, r) in [(3, 3, 2), (3, 4, 3), (4, 3, 3)] {
            let (chi, _) = find_good_vertical(m, n, r, &SearchConfig::default()).unwrap();
            if let Some(chi) = chi {
                assert!(chi.is_stabilised(1));
                assert!(is_good(&chi).good);
            }
        }
    }

    #[test]
    fn envelope() {
        let cfg = SearchConfig::default();
        assert!(matches!(g_exact_vertical(12, 2, 2, &cfg), Err(Error::TooLarge(_))));
        assert!(matches!(g_exact_vertical(2, 2, 9, &cfg), Err(Error::TooLarge(_))));
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let one = g_exact_vertical(4, 4, 4, &SearchConfig { threads: 1 }).unwrap();
        let many = g_exact_vertical(4, 4, 4, &SearchConfig { threads: 4 }).unwrap();
        assert_eq!(one.value, many.value);
        assert_eq!(one.certificate, many.certificate);
    }
}
