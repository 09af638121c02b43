//! Exact `r`-colourability of agreement graphs, the goodness predicate on
//! vertical colourings, and their extension to full grid colourings.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::grid::{
    agreement_mask, color_masks, AgreementGraph, CliqueColoring, Color, FullGridColoring,
    VerticalColoring,
};
use crate::transforms::RowPartition;

/// A proper colouring of an agreement graph, given as its colour classes.
/// Class `t` (in the partition's order) is colour `t + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProperColoring {
    pub classes: RowPartition,
}

impl ProperColoring {
    pub fn order(&self) -> usize {
        self.classes.ground_size()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Colour (1-based class index) of row `a`.
    pub fn color_of(&self, a: usize) -> usize {
        self.classes.class_of(a) + 1
    }

    /// No edge of `g` lies inside a class.
    pub fn is_proper_for(&self, g: &AgreementGraph) -> bool {
        self.order() == g.order()
            && g.edges().iter().all(|&(a, b)| self.classes.class_of(a) != self.classes.class_of(b))
    }
}

/// Returns a proper colouring of `g` with at most `r` classes, or `None` if none exists.
///
/// Backtracking in DSATUR order (highest saturation, ties to the lowest vertex)
/// after fixing a greedily grown clique to distinct colours. A vertex may only
/// open the next unused colour, so colour permutations are never revisited.
pub fn chromatic_at_most(g: &AgreementGraph, r: usize) -> Option<ProperColoring> {
    let m = g.order();
    if m == 0 {
        return Some(ProperColoring { classes: RowPartition::trivial(0) });
    }
    if r == 0 {
        return None;
    }
    let adj = g.adjacency();
    let clique = greedy_clique(&adj);
    if clique.len() > r {
        return None;
    }

    let mut state = Dsatur {
        adj: &adj,
        r,
        color: vec![usize::MAX; m],
        classes: vec![BitSet::new(m); r],
        used: clique.len(),
    };
    for (t, &v) in clique.iter().enumerate() {
        state.color[v] = t;
        state.classes[t].insert(v);
    }
    if !state.search() {
        return None;
    }

    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); state.used];
    for (v, &c) in state.color.iter().enumerate() {
        classes[c].push(v + 1);
    }
    classes.retain(|c| !c.is_empty());
    let classes = RowPartition::new(m, classes).expect("colour classes partition the rows");
    Some(ProperColoring { classes })
}

fn greedy_clique(adj: &[BitSet]) -> Vec<usize> {
    let degree = |v: usize| adj[v].count();
    let mut candidates = BitSet::full(adj.len());
    let mut clique = Vec::new();
    loop {
        // max degree, ties to the lowest index
        let best = candidates.iter().fold(None, |best: Option<usize>, v| match best {
            Some(b) if degree(b) >= degree(v) => Some(b),
            _ => Some(v),
        });
        let Some(v) = best else { break };
        clique.push(v);
        candidates.and_assign(&adj[v]);
    }
    clique
}

struct Dsatur<'a> {
    adj: &'a [BitSet],
    r: usize,
    color: Vec<usize>,
    classes: Vec<BitSet>,
    used: usize,
}

impl Dsatur<'_> {
    fn saturation(&self, v: usize) -> usize {
        self.classes[..self.used].iter().filter(|c| c.intersects(&self.adj[v])).count()
    }

    fn search(&mut self) -> bool {
        let mut pick = None;
        let mut best = 0;
        for v in 0..self.color.len() {
            if self.color[v] != usize::MAX {
                continue;
            }
            let s = self.saturation(v);
            if pick.is_none() || s > best {
                pick = Some(v);
                best = s;
            }
        }
        let Some(v) = pick else { return true };
        if best >= self.r {
            return false;
        }
        let limit = (self.used + 1).min(self.r);
        for c in 0..limit {
            if self.classes[c].intersects(&self.adj[v]) {
                continue;
            }
            let opened = c == self.used;
            self.color[v] = c;
            self.classes[c].insert(v);
            if opened {
                self.used += 1;
            }
            if self.search() {
                return true;
            }
            if opened {
                self.used -= 1;
            }
            self.classes[c].remove(v);
            self.color[v] = usize::MAX;
        }
        false
    }
}

/// Memo of colourability results keyed by agreement-graph edge mask, for a fixed
/// vertex count and colour budget. Safe to share between threads.
#[derive(Debug)]
pub struct ColorabilityCache {
    m: usize,
    r: usize,
    map: DashMap<BitSet, Option<Arc<ProperColoring>>>,
}

impl ColorabilityCache {
    pub fn new(m: usize, r: usize) -> Self {
        ColorabilityCache { m, r, map: DashMap::new() }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn colors(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub(crate) fn lookup(&self, mask: &BitSet) -> Option<Arc<ProperColoring>> {
        if let Some(hit) = self.map.get(mask) {
            return hit.clone();
        }
        let g = AgreementGraph::from_mask(self.m, mask.clone());
        let res = chromatic_at_most(&g, self.r).map(Arc::new);
        self.map.insert(mask.clone(), res.clone());
        res
    }

    pub fn is_colorable(&self, mask: &BitSet) -> bool {
        if self.m <= self.r {
            return true;
        }
        if let Some(hit) = self.map.get(mask) {
            return hit.is_some();
        }
        self.lookup(mask).is_some()
    }

    pub fn coloring(&self, g: &AgreementGraph) -> Option<ProperColoring> {
        assert_eq!(g.order(), self.m, "cache vertex count mismatch");
        self.lookup(g.mask()).map(|p| (*p).clone())
    }
}

/// Outcome of the goodness check. Witnesses are keyed by 1-based column pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodnessReport {
    pub good: bool,
    pub failing_pair: Option<(usize, usize)>,
    pub witnesses: BTreeMap<(usize, usize), ProperColoring>,
}

/// Checks every column pair in lexicographic order and stops at the first
/// agreement graph that is not `r`-colourable.
pub fn is_good(chi: &VerticalColoring) -> GoodnessReport {
    is_good_with(chi, &ColorabilityCache::new(chi.m(), chi.r()))
}

pub fn is_good_with(chi: &VerticalColoring, cache: &ColorabilityCache) -> GoodnessReport {
    assert!(cache.order() == chi.m() && cache.colors() == chi.r(), "cache does not match colouring");
    let len = chi.columns()[0].colors().len();
    let masks: Vec<_> = chi.columns().iter().map(|c| color_masks(c, chi.r())).collect();
    let mut witnesses = BTreeMap::new();
    for i in 0..chi.n() {
        for j in i + 1..chi.n() {
            let mask = agreement_mask(&masks[i], &masks[j], len);
            match cache.lookup(&mask) {
                Some(p) => {
                    witnesses.insert((i + 1, j + 1), (*p).clone());
                }
                None => {
                    return GoodnessReport {
                        good: false,
                        failing_pair: Some((i + 1, j + 1)),
                        witnesses,
                    }
                }
            }
        }
    }
    GoodnessReport { good: true, failing_pair: None, witnesses }
}

/// Colours the horizontal edges between columns `i` and `j` in row `a` with the
/// class index of `a` in the witness for `𝒢(χ_i, χ_j)`.
pub fn extend_to_full(chi: &VerticalColoring) -> Result<FullGridColoring> {
    let report = is_good(chi);
    if let Some((i, j)) = report.failing_pair {
        return Err(Error::NotGood(i, j));
    }
    let (m, n) = (chi.m(), chi.n());
    let horizontal = (1..=m)
        .map(|a| {
            CliqueColoring::from_fn(n, |i, j| {
                let w = &report.witnesses[&(i, j)];
                Color(w.color_of(a) as u16)
            })
        })
        .collect();
    FullGridColoring::new(chi.clone(), horizontal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::enumerate_alternating_rectangles;

    fn cycle(m: usize) -> AgreementGraph {
        AgreementGraph::from_edges(m, (1..=m).map(|a| (a, a % m + 1))).unwrap()
    }

    #[test]
    fn empty_graph_one_class() {
        let p = chromatic_at_most(&AgreementGraph::empty(5), 1).unwrap();
        assert_eq!(p.classes.classes(), &[vec![1, 2, 3, 4, 5]]);
    }

    #[test]
    fn triangle_and_odd_cycle() {
        assert!(chromatic_at_most(&AgreementGraph::complete(3), 2).is_none());
        assert!(chromatic_at_most(&cycle(5), 2).is_none());
        let p = chromatic_at_most(&cycle(5), 3).unwrap();
        assert_eq!(p.class_count(), 3);
        assert!(p.is_proper_for(&cycle(5)));
        let even = chromatic_at_most(&cycle(6), 2).unwrap();
        assert_eq!(even.classes.classes(), &[vec![1, 3, 5], vec![2, 4, 6]]);
    }

    #[test]
    fn complete_graphs() {
        for m in 1..8 {
            assert!(chromatic_at_most(&AgreementGraph::complete(m), m - 1).is_none());
            let p = chromatic_at_most(&AgreementGraph::complete(m), m).unwrap();
            assert_eq!(p.class_count(), m);
        }
        assert!(chromatic_at_most(&AgreementGraph::complete(2), 0).is_none());
    }

    #[test]
    fn is_good_examples() {
        let chi = VerticalColoring::from_fn(4, 2, 2, |i, _, _| Color(i as u16)).unwrap();
        assert!(is_good(&chi).good);

        let same = VerticalColoring::from_fn(3, 2, 2, |_, a, b| Color(((a + b) % 2 + 1) as u16)).unwrap();
        let rep = is_good(&same);
        assert!(!rep.good);
        assert_eq!(rep.failing_pair, Some((1, 2)));

        let k3 = VerticalColoring::from_fn(3, 2, 2, |_, _, _| Color(1)).unwrap();
        assert_eq!(is_good(&k3).failing_pair, Some((1, 2)));
    }

    #[test]
    fn small_m_always_good() {
        let chi = VerticalColoring::from_fn(3, 4, 3, |_, _, _| Color(2)).unwrap();
        assert!(is_good(&chi).good);
    }

    #[test]
    fn extension_examples() {
        let chi = VerticalColoring::from_fn(4, 2, 2, |i, _, _| Color(i as u16)).unwrap();
        let full = extend_to_full(&chi).unwrap();
        assert!((1..=4).all(|a| full.horizontal_color(a, 1, 2) == Color(1)));
        assert!(enumerate_alternating_rectangles(&full).is_empty());

        let bad = VerticalColoring::from_fn(3, 3, 2, |_, _, _| Color(1)).unwrap();
        assert_eq!(extend_to_full(&bad), Err(Error::NotGood(1, 2)));
    }

    #[test]
    fn cache_agrees_with_direct() {
        let cache = ColorabilityCache::new(5, 2);
        for g in [cycle(5), AgreementGraph::empty(5), AgreementGraph::complete(5)] {
            assert_eq!(cache.coloring(&g), chromatic_at_most(&g, 2));
            assert_eq!(cache.coloring(&g), chromatic_at_most(&g, 2));
        }
        assert_eq!(cache.len(), 3);
    }
}
