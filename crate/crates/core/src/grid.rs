//! Grid colourings, alternating rectangles and agreement graphs.
//!
//! Rows, columns and colours are 1-based at the public surface. Edge colours of
//! a clique `K_m` are stored densely, indexed by the lexicographic rank of the
//! row pair (see [`pair_rank`]).

use std::fmt;

use crate::bits::BitSet;
use crate::error::{invalid, Result};

/// Number of unordered pairs in a set of size `m`.
#[inline]
pub const fn choose2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// 0-based rank of the 0-based pair `a < b` inside `K_m`.
#[inline]
pub(crate) fn rank0(a: usize, b: usize, m: usize) -> usize {
    debug_assert!(a < b && b < m);
    a * (2 * m - a - 1) / 2 + (b - a - 1)
}

/// Dense index of the row pair `{a, b}` (1-based, `a < b ≤ m`) in lexicographic order.
pub fn pair_rank(a: usize, b: usize, m: usize) -> Result<usize> {
    if a == 0 || a >= b || b > m {
        return Err(invalid(format!("pair ({a}, {b}) is not a pair 1 <= a < b <= {m}")));
    }
    Ok(rank0(a - 1, b - 1, m))
}

/// All 0-based pairs of `K_m` in rank order.
pub(crate) fn pairs0(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(choose2(m));
    for a in 0..m {
        for b in a + 1..m {
            out.push((a, b));
        }
    }
    out
}

/// A colour `c_k`, represented by `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(pub u16);

impl Color {
    pub const FIRST: Color = Color(1);

    pub fn get(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridDims {
    pub m: usize,
    pub n: usize,
}

impl GridDims {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(invalid(format!("grid dimensions must be positive, got {m}x{n}")));
        }
        Ok(GridDims { m, n })
    }
}

/// An edge colouring of a clique `K_order`. Used both for one column
/// (a colouring of `K_m`) and for one row of horizontal edges (`K_n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliqueColoring {
    order: usize,
    colors: Vec<Color>,
}

/// The colouring `χ_i` that column `i` induces on `E(K_m)`.
pub type ColumnColoring = CliqueColoring;

impl CliqueColoring {
    pub fn new(order: usize, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != choose2(order) {
            return Err(invalid(format!(
                "clique of order {order} has {} edges, got {} colours",
                choose2(order),
                colors.len()
            )));
        }
        Ok(CliqueColoring { order, colors })
    }

    pub fn constant(order: usize, c: Color) -> Self {
        CliqueColoring {
            order,
            colors: vec![c; choose2(order)],
        }
    }

    /// Builds a colouring from `f(a, b)` over 1-based pairs `a < b`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Color) -> Self {
        let colors = pairs0(order).into_iter().map(|(a, b)| f(a + 1, b + 1)).collect();
        CliqueColoring { order, colors }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Colour of the 1-based pair `{a, b}` (either order).
    pub fn get(&self, a: usize, b: usize) -> Color {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.colors[rank0(lo - 1, hi - 1, self.order)]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub(crate) fn colors_mut(&mut self) -> &mut [Color] {
        &mut self.colors
    }

    pub fn is_constant(&self, c: Color) -> bool {
        self.colors.iter().all(|&x| x == c)
    }

    fn max_color(&self) -> usize {
        self.colors.iter().map(|c| c.get()).max().unwrap_or(0)
    }
}

/// An element of `C_r(m, n)`: one complete `r`-colouring of `K_m` per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalColoring {
    dims: GridDims,
    r: usize,
    columns: Vec<ColumnColoring>,
}

impl VerticalColoring {
    pub fn new(m: usize, r: usize, columns: Vec<ColumnColoring>) -> Result<Self> {
        let dims = GridDims::new(m, columns.len())?;
        if r == 0 {
            return Err(invalid("colour count r must be at least 1"));
        }
        for (i, col) in columns.iter().enumerate() {
            if col.order() != m {
                return Err(invalid(format!("column {} has {} rows, expected {m}", i + 1, col.order())));
            }
            if col.max_color() > r || col.colors().iter().any(|c| c.0 == 0) {
                return Err(invalid(format!("column {} uses a colour outside [1, {r}]", i + 1)));
            }
        }
        Ok(VerticalColoring { dims, r, columns })
    }

    /// Builds `χ` from `f(column, a, b)` (all 1-based).
    pub fn from_fn(
        m: usize,
        n: usize,
        r: usize,
        mut f: impl FnMut(usize, usize, usize) -> Color,
    ) -> Result<Self> {
        let columns = (1..=n).map(|i| CliqueColoring::from_fn(m, |a, b| f(i, a, b))).collect();
        Self::new(m, r, columns)
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    pub fn m(&self) -> usize {
        self.dims.m
    }

    pub fn n(&self) -> usize {
        self.dims.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Column `i` (1-based).
    pub fn column(&self, i: usize) -> &ColumnColoring {
        &self.columns[i - 1]
    }

    pub fn columns(&self) -> &[ColumnColoring] {
        &self.columns
    }

    pub(crate) fn columns_mut(&mut self) -> &mut [ColumnColoring] {
        &mut self.columns
    }

    /// Colour of the vertical edge `{a, b}` in column `col`.
    pub fn color(&self, col: usize, a: usize, b: usize) -> Color {
        self.columns[col - 1].get(a, b)
    }

    /// True iff `χ_i ≡ c_i` for `i = 1..=k`.
    pub fn is_stabilised(&self, k: usize) -> bool {
        k <= self.n()
            && k <= self.r
            && (1..=k).all(|i| self.columns[i - 1].is_constant(Color(i as u16)))
    }

    pub(crate) fn check_column(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            return Err(invalid(format!("column {i} is outside [1, {}]", self.n())));
        }
        Ok(())
    }
}

/// A colouring of every edge of `Γ_{m,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullGridColoring {
    vertical: VerticalColoring,
    /// One colouring of `K_n` per row.
    horizontal: Vec<CliqueColoring>,
}

impl FullGridColoring {
    pub fn new(vertical: VerticalColoring, horizontal: Vec<CliqueColoring>) -> Result<Self> {
        let GridDims { m, n } = vertical.dims();
        let r = vertical.r();
        if horizontal.len() != m {
            return Err(invalid(format!("expected {m} rows of horizontal edges, got {}", horizontal.len())));
        }
        for (a, row) in horizontal.iter().enumerate() {
            if row.order() != n {
                return Err(invalid(format!("row {} spans {} columns, expected {n}", a + 1, row.order())));
            }
            if row.max_color() > r || row.colors().iter().any(|c| c.0 == 0) {
                return Err(invalid(format!("row {} uses a colour outside [1, {r}]", a + 1)));
            }
        }
        Ok(FullGridColoring { vertical, horizontal })
    }

    pub fn vertical(&self) -> &VerticalColoring {
        &self.vertical
    }

    pub fn dims(&self) -> GridDims {
        self.vertical.dims()
    }

    pub fn r(&self) -> usize {
        self.vertical.r()
    }

    /// Horizontal colouring of row `a` (1-based).
    pub fn row(&self, a: usize) -> &CliqueColoring {
        &self.horizontal[a - 1]
    }

    /// Colour of the horizontal edge in row `a` between columns `i` and `j`.
    pub fn horizontal_color(&self, a: usize, i: usize, j: usize) -> Color {
        self.horizontal[a - 1].get(i, j)
    }
}

/// Rows `a < b` and columns `i < j`, all 1-based. Ordered lexicographically by `(a, b, i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rectangle {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

impl Rectangle {
    pub fn new(a: usize, b: usize, i: usize, j: usize) -> Self {
        Rectangle { rows: (a, b), cols: (i, j) }
    }

    fn check(&self, dims: GridDims) -> Result<()> {
        let (a, b) = self.rows;
        let (i, j) = self.cols;
        if a == 0 || a >= b || b > dims.m || i == 0 || i >= j || j > dims.n {
            return Err(invalid(format!("{self} is not a rectangle of a {}x{} grid", dims.m, dims.n)));
        }
        Ok(())
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.rows.0, self.rows.1, self.cols.0, self.cols.1)
    }
}

/// The graph `𝒢(χ_i, χ_j)` on rows `1..=m`; edges are stored as a bitmask over pair ranks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AgreementGraph {
    m: usize,
    edges: BitSet,
}

impl AgreementGraph {
    pub fn empty(m: usize) -> Self {
        AgreementGraph { m, edges: BitSet::new(choose2(m)) }
    }

    pub fn complete(m: usize) -> Self {
        AgreementGraph { m, edges: BitSet::full(choose2(m)) }
    }

    /// Graph on `m` vertices from 1-based edges.
    pub fn from_edges(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(m);
        for (a, b) in edges {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            g.edges.insert(pair_rank(lo, hi, m)?);
        }
        Ok(g)
    }

    pub(crate) fn from_mask(m: usize, edges: BitSet) -> Self {
        debug_assert_eq!(edges.words().len(), choose2(m).div_ceil(64));
        AgreementGraph { m, edges }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn mask(&self) -> &BitSet {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b || a == 0 || b == 0 || a > self.m || b > self.m {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(rank0(lo - 1, hi - 1, self.m))
    }

    /// 1-based edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let pairs = pairs0(self.m);
        self.edges.iter().map(|r| (pairs[r].0 + 1, pairs[r].1 + 1)).collect()
    }

    /// 0-based neighbourhood bitsets.
    pub fn adjacency(&self) -> Vec<BitSet> {
        let mut adj = vec![BitSet::new(self.m); self.m];
        let pairs = pairs0(self.m);
        for r in self.edges.iter() {
            let (a, b) = pairs[r];
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }
}

/// Per-colour edge masks of one clique colouring: `masks[c-1]` holds the ranks coloured `c`.
pub(crate) fn color_masks(col: &CliqueColoring, r: usize) -> Vec<BitSet> {
    let mut masks = vec![BitSet::new(col.colors().len()); r];
    for (idx, c) in col.colors().iter().enumerate() {
        masks[c.get() - 1].insert(idx);
    }
    masks
}

/// Agreement mask of two columns, computed word-parallel from per-colour masks.
pub(crate) fn agreement_mask(x: &[BitSet], y: &[BitSet], len: usize) -> BitSet {
    let mut out = BitSet::new(len);
    for (p, q) in x.iter().zip(y) {
        out.or_assign(&p.and(q));
    }
    out
}

/// The agreement graph `𝒢(χ_i, χ_j)` for columns `1 ≤ i < j ≤ n`.
pub fn agreement_graph(chi: &VerticalColoring, i: usize, j: usize) -> Result<AgreementGraph> {
    chi.check_column(i)?;
    chi.check_column(j)?;
    if i >= j {
        return Err(invalid(format!("column pair ({i}, {j}) must satisfy i < j")));
    }
    Ok(agreement_of(chi.column(i), chi.column(j), chi.r()))
}

pub(crate) fn agreement_of(x: &CliqueColoring, y: &CliqueColoring, r: usize) -> AgreementGraph {
    let len = x.colors().len();
    let mask = agreement_mask(&color_masks(x, r), &color_masks(y, r), len);
    AgreementGraph::from_mask(x.order(), mask)
}

/// Every alternating rectangle of `full`, sorted by `(a, b, i, j)`.
pub fn enumerate_alternating_rectangles(full: &FullGridColoring) -> Vec<Rectangle> {
    let GridDims { m, n } = full.dims();
    let r = full.r();
    let pairs = pairs0(m);
    let masks: Vec<Vec<BitSet>> = full.vertical.columns.iter().map(|c| color_masks(c, r)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let agree = agreement_mask(&masks[i], &masks[j], pairs.len());
            for idx in agree.iter() {
                let (a, b) = pairs[idx];
                if full.horizontal[a].get(i + 1, j + 1) == full.horizontal[b].get(i + 1, j + 1) {
                    out.push(Rectangle::new(a + 1, b + 1, i + 1, j + 1));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Whether both pairs of parallel edges of `rect` share a colour.
pub fn is_alternating(full: &FullGridColoring, rect: &Rectangle) -> Result<bool> {
    rect.check(full.dims())?;
    let (a, b) = rect.rows;
    let (i, j) = rect.cols;
    let v = full.vertical.color(i, a, b) == full.vertical.color(j, a, b);
    let h = full.horizontal_color(a, i, j) == full.horizontal_color(b, i, j);
    Ok(v && h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: u16) -> Color {
        Color(k)
    }

    fn all_one(m: usize, n: usize) -> FullGridColoring {
        let v = VerticalColoring::from_fn(m, n, 1, |_, _, _| c(1)).unwrap();
        let h = (0..m).map(|_| CliqueColoring::constant(n, c(1))).collect();
        FullGridColoring::new(v, h).unwrap()
    }

    fn two_by_two(v: [u16; 2], h: [u16; 2], r: usize) -> FullGridColoring {
        let vert = VerticalColoring::from_fn(2, 2, r, |i, _, _| c(v[i - 1])).unwrap();
        let hor = h.iter().map(|&k| CliqueColoring::constant(2, c(k))).collect();
        FullGridColoring::new(vert, hor).unwrap()
    }

    #[test]
    fn pair_rank_examples() {
        assert_eq!(pair_rank(1, 2, 3).unwrap(), 0);
        assert_eq!(pair_rank(2, 3, 3).unwrap(), 2);
        assert_eq!(pair_rank(1, 5, 5).unwrap(), 3);
        assert!(pair_rank(2, 2, 3).is_err());
        assert!(pair_rank(3, 2, 3).is_err());
        assert!(pair_rank(1, 4, 3).is_err());
        assert!(pair_rank(0, 1, 3).is_err());
    }

    #[test]
    fn pair_rank_is_lexicographic_bijection() {
        for m in 1..12 {
            let mut expected = 0;
            for a in 1..=m {
                for b in a + 1..=m {
                    assert_eq!(pair_rank(a, b, m).unwrap(), expected);
                    expected += 1;
                }
            }
            assert_eq!(expected, choose2(m));
        }
    }

    #[test]
    fn agreement_examples() {
        let same = VerticalColoring::from_fn(4, 2, 3, |_, a, b| c(((a + b) % 3 + 1) as u16)).unwrap();
        assert_eq!(agreement_graph(&same, 1, 2).unwrap(), AgreementGraph::complete(4));

        let differ = VerticalColoring::from_fn(4, 2, 2, |i, _, _| c(i as u16)).unwrap();
        assert_eq!(agreement_graph(&differ, 1, 2).unwrap().edge_count(), 0);

        let x = CliqueColoring::new(3, vec![c(1), c(1), c(2)]).unwrap();
        let y = CliqueColoring::new(3, vec![c(1), c(2), c(2)]).unwrap();
        let chi = VerticalColoring::new(3, 2, vec![x, y]).unwrap();
        assert_eq!(agreement_graph(&chi, 1, 2).unwrap().edges(), vec![(1, 2), (2, 3)]);

        assert!(agreement_graph(&chi, 2, 1).is_err());
        assert!(agreement_graph(&chi, 1, 1).is_err());
        assert!(agreement_graph(&chi, 1, 3).is_err());
    }

    #[test]
    fn rectangle_examples() {
        let one = all_one(2, 2);
        assert_eq!(enumerate_alternating_rectangles(&one), vec![Rectangle::new(1, 2, 1, 2)]);
        assert!(is_alternating(&one, &Rectangle::new(1, 2, 1, 2)).unwrap());

        let h_differ = two_by_two([1, 1], [1, 2], 2);
        assert!(enumerate_alternating_rectangles(&h_differ).is_empty());
        assert!(!is_alternating(&h_differ, &Rectangle::new(1, 2, 1, 2)).unwrap());

        let v_differ = two_by_two([1, 2], [1, 1], 2);
        assert!(!is_alternating(&v_differ, &Rectangle::new(1, 2, 1, 2)).unwrap());

        assert!(is_alternating(&one, &Rectangle::new(1, 3, 1, 2)).is_err());
        assert!(is_alternating(&one, &Rectangle::new(2, 1, 1, 2)).is_err());
    }

    #[test]
    fn all_one_hits_every_rectangle() {
        for (m, n) in [(2, 3), (3, 3), (4, 2), (5, 4)] {
            let rects = enumerate_alternating_rectangles(&all_one(m, n));
            assert_eq!(rects.len(), choose2(m) * choose2(n));
            assert!(rects.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn rejects_bad_colours() {
        let col = CliqueColoring::new(3, vec![c(1), c(3), c(1)]).unwrap();
        assert!(VerticalColoring::new(3, 2, vec![col]).is_err());
        assert!(CliqueColoring::new(3, vec![c(1)]).is_err());
        assert!(VerticalColoring::new(3, 2, vec![]).is_err());
    }

    #[test]
    fn stabilised_predicate() {
        let chi = VerticalColoring::from_fn(3, 3, 3, |i, _, _| c(i as u16)).unwrap();
        assert!(chi.is_stabilised(3));
        let chi = VerticalColoring::from_fn(3, 3, 3, |i, a, _| c(if i == 2 && a == 2 { 1 } else { i as u16 })).unwrap();
        assert!(chi.is_stabilised(1) && !chi.is_stabilised(2));
    }
}
