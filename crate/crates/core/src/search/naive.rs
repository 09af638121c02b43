//! Reference oracle: enumerate every full colouring edge by edge.
//!
//! Deliberately independent of the vertical search and of the colourability
//! code; it only shares the grid types used to report its certificate.

use std::time::Instant;

use super::{SearchResult, SearchStats};
use crate::error::{Error, Result};
use crate::grid::{choose2, CliqueColoring, Color, FullGridColoring, VerticalColoring};

/// Largest edge count `n·C(m,2) + m·C(n,2)` the naive oracle accepts.
pub const NAIVE_EDGE_LIMIT: usize = 28;

#[derive(Clone, Copy)]
enum Edge {
    /// column, rows a < b (0-based)
    V(usize, usize, usize),
    /// row, columns i < j (0-based)
    H(usize, usize, usize),
}

struct Problem {
    edges: Vec<Edge>,
    /// `closes[t]` lists rectangles whose last edge in assignment order is `t`,
    /// as the positions of their two vertical and two horizontal edges.
    closes: Vec<Vec<[usize; 4]>>,
}

impl Problem {
    fn new(m: usize, n: usize) -> Self {
        let mut edges = Vec::new();
        for c in 0..n {
            for b in 0..m {
                for a in 0..b {
                    edges.push(Edge::V(c, a, b));
                }
            }
        }
        for row in 0..m {
            for j in 0..n {
                for i in 0..j {
                    edges.push(Edge::H(row, i, j));
                }
            }
        }
        // grow the grid corner-first so rectangles close as early as possible
        let key = |e: &Edge| match *e {
            Edge::V(c, a, b) => (b.max(c), 0, c, b, a),
            Edge::H(row, i, j) => (row.max(j), 1, row, j, i),
        };
        edges.sort_by_key(key);

        let pos = |target: (bool, usize, usize, usize)| {
            edges
                .iter()
                .position(|e| match *e {
                    Edge::V(c, a, b) => target == (true, c, a, b),
                    Edge::H(r, i, j) => target == (false, r, i, j),
                })
                .expect("edge exists")
        };
        let mut closes = vec![Vec::new(); edges.len()];
        for b in 0..m {
            for a in 0..b {
                for j in 0..n {
                    for i in 0..j {
                        let quad = [pos((true, i, a, b)), pos((true, j, a, b)), pos((false, a, i, j)), pos((false, b, i, j))];
                        let last = *quad.iter().max().unwrap();
                        closes[last].push(quad);
                    }
                }
            }
        }
        Problem { edges, closes }
    }
}

struct Walker<'a> {
    p: &'a Problem,
    r: u8,
    colors: Vec<u8>,
    nodes: u64,
}

impl Walker<'_> {
    /// Colours edges `t..` with colours introduced in first-use order.
    fn dfs(&mut self, t: usize, used: u8) -> bool {
        if t == self.colors.len() {
            return true;
        }
        let limit = (used + 1).min(self.r);
        for c in 0..limit {
            self.nodes += 1;
            self.colors[t] = c;
            let clash = self.p.closes[t].iter().any(|q| {
                self.colors[q[0]] == self.colors[q[1]] && self.colors[q[2]] == self.colors[q[3]]
            });
            if !clash && self.dfs(t + 1, used.max(c + 1)) {
                return true;
            }
        }
        false
    }
}

fn build(m: usize, n: usize, r: usize, p: &Problem, colors: &[u8]) -> Result<FullGridColoring> {
    let mut v = vec![vec![Color(0); choose2(m)]; n];
    let mut h = vec![vec![Color(0); choose2(n)]; m];
    for (e, &c) in p.edges.iter().zip(colors) {
        let c = Color(c as u16 + 1);
        match *e {
            Edge::V(col, a, b) => v[col][a * (2 * m - a - 1) / 2 + (b - a - 1)] = c,
            Edge::H(row, i, j) => h[row][i * (2 * n - i - 1) / 2 + (j - i - 1)] = c,
        }
    }
    let columns = v.into_iter().map(|cs| CliqueColoring::new(m, cs)).collect::<Result<Vec<_>>>()?;
    let rows = h.into_iter().map(|cs| CliqueColoring::new(n, cs)).collect::<Result<Vec<_>>>()?;
    FullGridColoring::new(VerticalColoring::new(m, r, columns)?, rows)
}

/// Exact `g(m, n)` if it is at most `r_cap`, by exhaustive enumeration of full colourings.
pub fn g_exact_naive(m: usize, n: usize, r_cap: usize) -> Result<SearchResult> {
    let edges = n * choose2(m) + m * choose2(n);
    if edges > NAIVE_EDGE_LIMIT {
        return Err(Error::TooLarge(format!(
            "naive oracle handles at most {NAIVE_EDGE_LIMIT} edges, {m}x{n} grid has {edges}"
        )));
    }
    if m == 0 || n == 0 || r_cap == 0 || r_cap > u8::MAX as usize {
        return Err(Error::InvalidArgument(format!("need m, n >= 1 and 1 <= r_cap <= 255 (got {m}, {n}, {r_cap})")));
    }
    let start = Instant::now();
    let problem = Problem::new(m, n);
    let mut nodes = 0;
    for r in 1..=r_cap {
        let mut w = Walker { p: &problem, r: r as u8, colors: vec![0; edges], nodes: 0 };
        let found = w.dfs(0, 0);
        nodes += w.nodes;
        if found {
            let cert = build(m, n, r, &problem, &w.colors)?;
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
    use crate::grid::enumerate_alternating_rectangles;

    #[test]
    fn single_row_needs_one_colour() {
        for n in 1..=5 {
            assert_eq!(g_exact_naive(1, n, 3).unwrap().value, Some(1));
        }
    }

    #[test]
    fn two_by_two_needs_two() {
        let res = g_exact_naive(2, 2, 3).unwrap();
        assert_eq!(res.value, Some(2));
        assert!(enumerate_alternating_rectangles(res.certificate.as_ref().unwrap()).is_empty());
    }

    #[test]
    fn two_by_three() {
        assert_eq!(g_exact_naive(2, 3, 3).unwrap().value, Some(2));
    }

    #[test]
    fn cap_and_guard() {
        assert_eq!(g_exact_naive(2, 2, 1).unwrap().value, None);
        assert!(matches!(g_exact_naive(4, 4, 2), Err(Error::TooLarge(_))));
    }
}
