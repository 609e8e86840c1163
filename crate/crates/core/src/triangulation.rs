//! Directed triangles and partitions of the arc set into them.
//!
//! A partition `π` fixes the next-arc map `τ`: inside each directed triangle
//! `a₁ → a₂ → a₃ → a₁`. Finding a partition is an exact-cover problem with
//! arcs as items and directed triangles as options; [`find_partition`] solves
//! it by backtracking on the most constrained arc.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, NotTriangulable, Result};
use crate::graph::{self, parse_index_lines, Arc, ArcSet, Graph};
use crate::perm::Permutation;

/// Three arcs `(a₁, a₂, a₃)`; a proper directed triangle chains head to tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedTriangle {
    pub arcs: [Arc; 3],
}

impl DirectedTriangle {
    /// The triangle `u → v → w → u`.
    pub const fn from_vertices(u: usize, v: usize, w: usize) -> Self {
        DirectedTriangle {
            arcs: [Arc::new(u, v), Arc::new(v, w), Arc::new(w, u)],
        }
    }

    /// Origins of the three arcs in order.
    pub fn vertices(&self) -> [usize; 3] {
        self.arcs.map(|a| a.origin)
    }

    /// Head-to-tail chaining through three distinct vertices.
    pub fn is_cycle(&self) -> bool {
        let [a1, a2, a3] = self.arcs;
        let [u, v, w] = self.vertices();
        a1.terminus == a2.origin
            && a2.terminus == a3.origin
            && a3.terminus == a1.origin
            && u != v
            && v != w
            && u != w
    }

    /// The arc of this triangle that ends at `x`, if any.
    pub fn arc_into(&self, x: usize) -> Option<Arc> {
        self.arcs.iter().copied().find(|a| a.terminus == x)
    }

    /// Same cyclic orientation, rotated to start at the smallest vertex.
    pub fn canonical(&self) -> Self {
        let vs = self.vertices();
        let start = (0..3).min_by_key(|&i| vs[i]).unwrap_or(0);
        DirectedTriangle {
            arcs: [0, 1, 2].map(|k| self.arcs[(start + k) % 3]),
        }
    }
}

impl fmt::Display for DirectedTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [u, v, w] = self.vertices();
        write!(f, "{u} {v} {w}")
    }
}

/// Every directed triangle of `g`: both cyclic orientations of each 3-clique,
/// rotated to start at the smallest vertex and sorted.
pub fn enumerate_directed_triangles(g: &Graph) -> Vec<DirectedTriangle> {
    let mut out = Vec::new();
    for u in 0..g.n_vertices() {
        for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
            for &w in g.neighbors(v).iter().filter(|&&w| w > v) {
                if g.has_edge(u, w) {
                    out.push(DirectedTriangle::from_vertices(u, v, w));
                    out.push(DirectedTriangle::from_vertices(u, w, v));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BrokenCycle { triangle: usize },
    ArcNotInGraph { triangle: usize, arc: Arc },
    Overlap { arc: Arc, triangles: Vec<usize> },
    UncoveredArcs { arcs: Vec<Arc> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BrokenCycle { triangle } => {
                write!(f, "broken cycle in triangle #{triangle}")
            }
            Violation::ArcNotInGraph { triangle, arc } => {
                write!(
                    f,
                    "triangle #{triangle} uses arc {arc} which is not in the graph"
                )
            }
            Violation::Overlap { arc, triangles } => {
                write!(f, "arc {arc} covered by triangles {triangles:?}")
            }
            Violation::UncoveredArcs { arcs } => {
                write!(f, "uncovered arcs:")?;
                for a in arcs {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
        }
    }
}

/// Violations found by [`validate_partition`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that `triangles` are directed triangles of `g` partitioning its
/// arcs.
pub fn validate_partition(g: &Graph, triangles: &[DirectedTriangle]) -> ValidationReport {
    let arcs = g.arcs();
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); arcs.len()];
    let mut violations = Vec::new();
    for (t, tri) in triangles.iter().enumerate() {
        if !tri.is_cycle() {
            violations.push(Violation::BrokenCycle { triangle: t });
        }
        for &a in &tri.arcs {
            match arcs.index_of(a) {
                Some(i) => owners[i].push(t),
                None => violations.push(Violation::ArcNotInGraph {
                    triangle: t,
                    arc: a,
                }),
            }
        }
    }
    let mut uncovered = Vec::new();
    for (i, own) in owners.into_iter().enumerate() {
        match own.len() {
            0 => uncovered.push(arcs.arc(i)),
            1 => {}
            _ => violations.push(Violation::Overlap {
                arc: arcs.arc(i),
                triangles: own,
            }),
        }
    }
    if !uncovered.is_empty() {
        violations.push(Violation::UncoveredArcs { arcs: uncovered });
    }
    ValidationReport { violations }
}

/// A validated partition `π` of the arc set together with `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrianglePartition {
    arcs: ArcSet,
    triangles: Vec<DirectedTriangle>,
    tau: Permutation,
    arc_to_triangle: Vec<usize>,
}

impl TrianglePartition {
    pub fn new(g: &Graph, triangles: Vec<DirectedTriangle>) -> Result<Self> {
        let report = validate_partition(g, &triangles);
        if !report.is_valid() {
            return Err(Error::InvalidPartition(report.to_string()));
        }
        Ok(Self::from_valid(g.arcs(), triangles))
    }

    fn from_valid(arcs: ArcSet, triangles: Vec<DirectedTriangle>) -> Self {
        let mut tau = vec![usize::MAX; arcs.len()];
        let mut arc_to_triangle = vec![usize::MAX; arcs.len()];
        for (t, tri) in triangles.iter().enumerate() {
            let idx = tri.arcs.map(|a| arcs.index_of(a).expect("validated arc"));
            for k in 0..3 {
                tau[idx[k]] = idx[(k + 1) % 3];
                arc_to_triangle[idx[k]] = t;
            }
        }
        TrianglePartition {
            arcs,
            triangles,
            tau: Permutation::new(tau).expect("partition induces a permutation"),
            arc_to_triangle,
        }
    }

    pub fn arc_set(&self) -> &ArcSet {
        &self.arcs
    }

    pub fn n_vertices(&self) -> usize {
        self.arcs.n_vertices()
    }

    pub fn triangles(&self) -> &[DirectedTriangle] {
        &self.triangles
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// The next-arc map on arc indices.
    pub fn tau(&self) -> &Permutation {
        &self.tau
    }

    pub fn triangle_of(&self, arc_index: usize) -> usize {
        self.arc_to_triangle[arc_index]
    }

    /// Indices of the triangles in `π(x)`, i.e. those with an arc ending at `x`.
    pub fn triangles_at(&self, x: usize) -> Result<Vec<usize>> {
        if x >= self.n_vertices() {
            return Err(Error::UnknownVertex(x));
        }
        let mut ts: Vec<usize> = self
            .arcs
            .incoming(x)
            .iter()
            .map(|&a| self.arc_to_triangle[a])
            .collect();
        ts.sort_unstable();
        Ok(ts)
    }

    /// Incidence matrix `R` (vertices × triangles): `R[x, C] = 1` iff `C ∈ π(x)`.
    pub fn build_r(&self) -> DMatrix<i64> {
        let mut r = DMatrix::zeros(self.n_vertices(), self.len());
        for (c, tri) in self.triangles.iter().enumerate() {
            for a in tri.arcs {
                r[(a.terminus, c)] = 1;
            }
        }
        r
    }

    /// One `u v w` line per triangle.
    pub fn to_text(&self) -> String {
        self.triangles.iter().map(|t| format!("{t}\n")).collect()
    }

    pub fn to_json(&self) -> PartitionJson {
        PartitionJson {
            triangles: self.triangles.iter().map(|t| t.vertices()).collect(),
        }
    }
}

/// `{"triangles": [[u,v,w],...]}`, each row meaning arcs `(u,v),(v,w),(w,u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub triangles: Vec<[usize; 3]>,
}

impl PartitionJson {
    pub fn into_triangles(self) -> Vec<DirectedTriangle> {
        self.triangles
            .into_iter()
            .map(|[u, v, w]| DirectedTriangle::from_vertices(u, v, w))
            .collect()
    }
}

/// Parses the partition text format: one `u v w` triangle per line.
pub fn parse_partition(text: &str) -> Result<Vec<DirectedTriangle>> {
    Ok(parse_index_lines(text, 3)?
        .into_iter()
        .map(|(_, v)| DirectedTriangle::from_vertices(v[0], v[1], v[2]))
        .collect())
}

/// The double-cone partition: `u₊ → xᵢ → xᵢ₊₁ → u₊` and `u₋ → xᵢ₊₁ → xᵢ → u₋`
/// for `i = 0..n`, listed in that order.
pub fn canonical_double_cone_partition(n: usize) -> Result<(Graph, TrianglePartition)> {
    let g = graph::gen_double_cone(n)?;
    let x = |i| graph::cone_cycle_vertex(n, i);
    let mut triangles = Vec::with_capacity(2 * n);
    for i in 0..n {
        triangles.push(DirectedTriangle::from_vertices(
            graph::CONE_TOP,
            x(i),
            x(i + 1),
        ));
    }
    for i in 0..n {
        triangles.push(DirectedTriangle::from_vertices(
            graph::CONE_BOTTOM,
            x(i + 1),
            x(i),
        ));
    }
    let pi = TrianglePartition::new(&g, triangles)?;
    Ok((g, pi))
}

/// Searches for a partition of the arcs into directed triangles.
///
/// `limit` caps the number of triangle placements tried; hitting it yields
/// [`Error::SearchBudgetExceeded`], distinct from a proof of
/// non-triangulability.
pub fn find_partition(g: &Graph, limit: Option<u64>) -> Result<TrianglePartition> {
    let arcs = g.arcs();
    let candidates = enumerate_directed_triangles(g);
    if candidates.is_empty() {
        return Err(Error::NotTriangulable(NotTriangulable::NoDirectedTriangles));
    }
    if !arcs.len().is_multiple_of(3) {
        return Err(Error::NotTriangulable(
            NotTriangulable::ArcCountNotDivisibleByThree { arcs: arcs.len() },
        ));
    }
    let options: Vec<[usize; 3]> = candidates
        .iter()
        .map(|t| {
            t.arcs
                .map(|a| arcs.index_of(a).expect("triangle arcs are graph arcs"))
        })
        .collect();
    let mut search = CoverSearch::new(arcs.len(), &options, limit);
    if let Some(arc) = search.avail.iter().position(|&c| c == 0) {
        return Err(Error::NotTriangulable(NotTriangulable::ArcInNoTriangle {
            arc: arcs.arc(arc),
        }));
    }
    match search.run() {
        SearchResult::Found => {
            let triangles = search.chosen.iter().map(|&t| candidates[t]).collect();
            Ok(TrianglePartition::from_valid(arcs, triangles))
        }
        SearchResult::Exhausted => Err(Error::NotTriangulable(NotTriangulable::SearchExhausted {
            expansions: search.expansions,
        })),
        SearchResult::Budget => Err(Error::SearchBudgetExceeded {
            limit: limit.unwrap_or(0),
        }),
    }
}

enum SearchResult {
    Found,
    Exhausted,
    Budget,
}

/// Exact cover over arcs with three-arc options, using counters in place of
/// linked lists: `blocked[t]` counts covered arcs of option `t`, `avail[a]`
/// counts unblocked options containing arc `a`.
struct CoverSearch<'a> {
    options: &'a [[usize; 3]],
    by_arc: Vec<Vec<usize>>,
    covered: Vec<bool>,
    blocked: Vec<u32>,
    avail: Vec<usize>,
    chosen: Vec<usize>,
    expansions: u64,
    limit: Option<u64>,
}

impl<'a> CoverSearch<'a> {
    fn new(n_arcs: usize, options: &'a [[usize; 3]], limit: Option<u64>) -> Self {
        let mut by_arc = vec![Vec::new(); n_arcs];
        for (t, opt) in options.iter().enumerate() {
            for &a in opt {
                by_arc[a].push(t);
            }
        }
        let avail = by_arc.iter().map(Vec::len).collect();
        CoverSearch {
            options,
            by_arc,
            covered: vec![false; n_arcs],
            blocked: vec![0; options.len()],
            avail,
            chosen: Vec::new(),
            expansions: 0,
            limit,
        }
    }

    fn select(&mut self, t: usize) {
        for &a in &self.options[t] {
            self.covered[a] = true;
            for &other in &self.by_arc[a] {
                self.blocked[other] += 1;
                if self.blocked[other] == 1 {
                    for &b in &self.options[other] {
                        self.avail[b] -= 1;
                    }
                }
            }
        }
        self.chosen.push(t);
    }

    fn deselect(&mut self, t: usize) {
        self.chosen.pop();
        for &a in self.options[t].iter().rev() {
            for &other in self.by_arc[a].iter().rev() {
                if self.blocked[other] == 1 {
                    for &b in &self.options[other] {
                        self.avail[b] += 1;
                    }
                }
                self.blocked[other] -= 1;
            }
            self.covered[a] = false;
        }
    }

    /// Uncovered arc with the fewest available options, lowest index first.
    fn most_constrained(&self) -> Option<usize> {
        (0..self.covered.len())
            .filter(|&a| !self.covered[a])
            .min_by_key(|&a| (self.avail[a], a))
    }

    fn run(&mut self) -> SearchResult {
        let Some(arc) = self.most_constrained() else {
            return SearchResult::Found;
        };
        if self.avail[arc] == 0 {
            return SearchResult::Exhausted;
        }
        let branch: Vec<usize> = self.by_arc[arc]
            .iter()
            .copied()
            .filter(|&t| self.blocked[t] == 0)
            .collect();
        for t in branch {
            if self.limit.is_some_and(|l| self.expansions >= l) {
                return SearchResult::Budget;
            }
            self.expansions += 1;
            self.select(t);
            match self.run() {
                SearchResult::Exhausted => self.deselect(t),
                done => return done,
            }
        }
        SearchResult::Exhausted
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_cycle, gen_double_cone, gen_star};

    fn brute_force_directed_triangles(g: &Graph) -> usize {
        let n = g.n_vertices();
        let mut count = 0;
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let distinct = u != v && v != w && u != w;
                    if distinct && g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(w, u) {
                        count += 1;
                    }
                }
            }
        }
        // each directed triangle is counted once per starting vertex
        count / 3
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for g in [
            gen_complete(4).unwrap(),
            gen_complete(5).unwrap(),
            gen_double_cone(5).unwrap(),
            gen_cycle(4).unwrap(),
        ] {
            assert_eq!(
                enumerate_directed_triangles(&g).len(),
                brute_force_directed_triangles(&g)
            );
        }
        assert_eq!(
            enumerate_directed_triangles(&gen_complete(4).unwrap()).len(),
            8
        );
        assert!(enumerate_directed_triangles(&gen_cycle(4).unwrap()).is_empty());
        let c3 = enumerate_directed_triangles(&gen_cycle(3).unwrap());
        assert_eq!(
            c3,
            vec![
                DirectedTriangle::from_vertices(0, 1, 2),
                DirectedTriangle::from_vertices(0, 2, 1)
            ]
        );
    }

    #[test]
    fn k4_partition() {
        let g = gen_complete(4).unwrap();
        let pi = find_partition(&g, None).unwrap();
        assert_eq!(pi.len(), 4);
        assert!(validate_partition(&g, pi.triangles()).is_valid());
    }

    #[test]
    fn c3_partition_is_both_orientations() {
        let g = gen_cycle(3).unwrap();
        let pi = find_partition(&g, None).unwrap();
        let mut tris: Vec<_> = pi.triangles().iter().map(|t| t.canonical()).collect();
        tris.sort();
        assert_eq!(tris, enumerate_directed_triangles(&g));
    }

    #[test]
    fn not_triangulable_reasons() {
        let err = |g: Graph| match find_partition(&g, None) {
            Err(Error::NotTriangulable(r)) => r,
            other => panic!("expected NotTriangulable, got {other:?}"),
        };
        assert_eq!(
            err(gen_cycle(4).unwrap()),
            NotTriangulable::NoDirectedTriangles
        );
        assert_eq!(
            err(gen_star(3).unwrap()),
            NotTriangulable::NoDirectedTriangles
        );
        // triangle with a pendant edge: 8 arcs
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(
            err(g),
            NotTriangulable::ArcCountNotDivisibleByThree { arcs: 8 }
        );
        // two triangles sharing vertex 0
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert!(find_partition(&g, None).is_ok());
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 2)]).unwrap();
        assert!(matches!(err(g), NotTriangulable::ArcInNoTriangle { .. }));
    }

    /// Include/exclude recursion over all directed triangles.
    fn brute_force_exists(arcs: &[Arc], tris: &[DirectedTriangle]) -> bool {
        fn go(i: usize, used: &mut Vec<Arc>, total: usize, tris: &[DirectedTriangle]) -> bool {
            if used.len() == total {
                return true;
            }
            if i == tris.len() {
                return false;
            }
            let t = &tris[i];
            if t.arcs.iter().all(|a| !used.contains(a)) {
                used.extend(t.arcs);
                if go(i + 1, used, total, tris) {
                    return true;
                }
                used.truncate(used.len() - 3);
            }
            go(i + 1, used, total, tris)
        }
        go(0, &mut Vec::new(), arcs.len(), tris)
    }

    #[test]
    fn search_agrees_with_brute_force() {
        let mut searched = 0;
        for n in 3..=6 {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            for mask in 1u32..(1 << pairs.len()) {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e);
                let Ok(g) = Graph::new(n, edges) else {
                    continue;
                };
                if g.n_arcs() % 3 != 0 {
                    continue;
                }
                let tris = enumerate_directed_triangles(&g);
                let expected = brute_force_exists(g.arcs().arcs(), &tris);
                match find_partition(&g, None) {
                    Ok(pi) => {
                        assert!(expected, "{}", g.to_edge_list());
                        assert!(validate_partition(&g, pi.triangles()).is_valid());
                    }
                    Err(Error::NotTriangulable(_)) => assert!(!expected, "{}", g.to_edge_list()),
                    Err(e) => panic!("unexpected {e}"),
                }
                searched += 1;
            }
        }
        assert!(searched > 1000);
    }

    #[test]
    fn exhausted_search() {
        // book with four pages on the spine (0, 1): every triangle uses a
        // spine arc, so at most two pages are covered
        let g = Graph::new(6, (2..6).flat_map(|x| [(0, x), (1, x)]).chain([(0, 1)])).unwrap();
        assert!(!brute_force_exists(
            g.arcs().arcs(),
            &enumerate_directed_triangles(&g)
        ));
        assert!(matches!(
            find_partition(&g, None),
            Err(Error::NotTriangulable(
                NotTriangulable::SearchExhausted { .. }
            ))
        ));
    }

    #[test]
    fn budget_is_distinct_from_failure() {
        let g = gen_double_cone(8).unwrap();
        assert!(matches!(
            find_partition(&g, Some(1)),
            Err(Error::SearchBudgetExceeded { limit: 1 })
        ));
        assert!(find_partition(&g, Some(10_000)).is_ok());
    }

    #[test]
    fn double_cone_partitions() {
        for n in 3..=8 {
            let (g, pi) = canonical_double_cone_partition(n).unwrap();
            assert_eq!(pi.len(), 2 * n);
            assert!(validate_partition(&g, pi.triangles()).is_valid());
            assert_eq!(find_partition(&g, None).unwrap().len(), 2 * n);
        }
    }

    #[test]
    fn tau_has_order_three_without_fixed_points() {
        let (_, pi) = canonical_double_cone_partition(5).unwrap();
        let tau = pi.tau();
        assert!(tau.pow(3).is_identity());
        assert_eq!(tau.fixed_points(), 0);
        let arcs = pi.arc_set();
        for a in 0..arcs.len() {
            assert_ne!(tau.apply(a), arcs.reverse_index(a));
            assert_eq!(arcs.arc(tau.apply(a)).origin, arcs.arc(a).terminus);
        }
    }

    #[test]
    fn validation_reports() {
        let g = gen_complete(4).unwrap();
        let pi = find_partition(&g, None).unwrap();
        let mut tris = pi.triangles().to_vec();
        let dropped = tris.pop().unwrap();
        let report = validate_partition(&g, &tris);
        assert_eq!(report.violations.len(), 1);
        match &report.violations[0] {
            Violation::UncoveredArcs { arcs } => {
                let mut expected = dropped.arcs.to_vec();
                expected.sort();
                assert_eq!(arcs, &expected);
            }
            v => panic!("unexpected {v}"),
        }
        assert!(report.to_string().starts_with("uncovered arcs"));

        let broken = DirectedTriangle {
            arcs: [Arc::new(0, 1), Arc::new(2, 3), Arc::new(3, 0)],
        };
        let report = validate_partition(&g, &[broken]);
        assert!(report
            .violations
            .contains(&Violation::BrokenCycle { triangle: 0 }));

        tris.push(dropped);
        tris.push(dropped);
        let report = validate_partition(&g, &tris);
        assert!(matches!(report.violations[0], Violation::Overlap { .. }));
        assert!(TrianglePartition::new(&g, tris).is_err());
    }

    #[test]
    fn triangles_at_is_bijective_with_incoming_arcs() {
        let g = gen_complete(4).unwrap();
        let pi = find_partition(&g, None).unwrap();
        for x in 0..4 {
            let ts = pi.triangles_at(x).unwrap();
            assert_eq!(ts.len(), 3);
            let mut into: Vec<usize> = ts
                .iter()
                .map(|&t| {
                    let a = pi.triangles()[t].arc_into(x).unwrap();
                    pi.arc_set().index_of(a).unwrap()
                })
                .collect();
            into.sort();
            assert_eq!(into, pi.arc_set().incoming(x));
        }
        assert!(matches!(pi.triangles_at(4), Err(Error::UnknownVertex(4))));

        let (_, pi3) = canonical_double_cone_partition(3).unwrap();
        assert_eq!(pi3.triangles_at(graph::CONE_TOP).unwrap().len(), 3);
        let (_, pi5) = canonical_double_cone_partition(5).unwrap();
        assert_eq!(pi5.triangles_at(2).unwrap().len(), 4);
    }

    #[test]
    fn r_matrix() {
        let g = gen_complete(4).unwrap();
        let pi = find_partition(&g, None).unwrap();
        let r = pi.build_r();
        let (a, d) = g.adjacency_and_degree();
        for x in 0..4 {
            assert_eq!(r.row(x).sum(), g.degree(x) as i64);
        }
        assert_eq!(&r * r.transpose(), a * 2 + d);
        let (_, pi4) = canonical_double_cone_partition(4).unwrap();
        assert!(pi4.build_r().column_iter().all(|c| c.sum() == 3));
    }

    #[test]
    fn text_round_trip() {
        let (g, pi) = canonical_double_cone_partition(4).unwrap();
        let text = pi.to_text();
        assert_eq!(text.lines().next(), Some("0 2 3"));
        let back = TrianglePartition::new(&g, parse_partition(&text).unwrap()).unwrap();
        assert_eq!(back, pi);
        assert!(parse_partition("0 1").is_err());
    }
}
