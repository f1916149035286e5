//! Explicit vertex-level graphs for the families that admit a direct
//! construction, plus structural verification that a built graph really is
//! distance-regular with the intended array.
//!
//! These graphs are the ground truth: resistances computed on them by exact
//! linear algebra are what the recursion is accepted against.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::families::{Family, FamilySpec};
use crate::intersection::IntersectionArray;

/// Largest explicit graph we will materialize.
pub const MAX_EXPLICIT_VERTICES: usize = 5000;

/// Below this order the Bose-Mesner product identity is checked by literal
/// integer matrix multiplication; above it, by an equivalent streaming count.
const DENSE_PRODUCT_LIMIT: usize = 128;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("{family}: parameter out of domain: {detail}")]
    ParamOutOfDomain { family: String, detail: String },
    #[error("family {family} has no explicit vertex-level construction")]
    NoExplicitConstruction { family: String },
    #[error("graph with {n} vertices exceeds the explicit-construction cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph is not distance-regular: {detail}")]
    NotDistanceRegular { detail: String },
}

/// A finite connected regular graph with unit-resistance edges.
#[derive(Debug, Clone)]
pub struct ExplicitGraph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
    degree: usize,
}

/// BFS layers of a graph around one reference vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    pub reference: usize,
    pub strata: Vec<Vec<usize>>,
}

impl Stratification {
    pub fn sizes(&self) -> Vec<usize> {
        self.strata.iter().map(Vec::len).collect()
    }

    /// Index of the stratum containing `v`.
    pub fn stratum_of(&self, v: usize) -> Option<usize> {
        self.strata.iter().position(|s| s.contains(&v))
    }
}

/// Builds the explicit graph for a cycle, complete graph, hypercube or
/// Johnson graph.
pub fn build_graph(spec: &FamilySpec) -> Result<ExplicitGraph, GraphError> {
    let family = spec.family.to_string();
    let get = |name: &str| -> Result<i64, GraphError> {
        spec.params
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::ParamOutOfDomain {
                family: family.clone(),
                detail: format!("missing parameter {name:?}"),
            })
    };
    let domain = |detail: String| GraphError::ParamOutOfDomain {
        family: family.clone(),
        detail,
    };

    match spec.family {
        Family::Cycle => {
            let n = get("n")?;
            if n < 3 {
                return Err(domain(format!("need n >= 3, got {n}")));
            }
            let n = guard(n as u128)?;
            let labels = (0..n).map(|i| i.to_string()).collect();
            let adj = (0..n)
                .map(|i| {
                    let mut nb = vec![(i + 1) % n, (i + n - 1) % n];
                    nb.sort_unstable();
                    nb.dedup();
                    nb
                })
                .collect();
            Ok(ExplicitGraph::assemble(labels, adj))
        }
        Family::Complete => {
            let n = get("n")?;
            if n < 2 {
                return Err(domain(format!("need n >= 2, got {n}")));
            }
            let n = guard(n as u128)?;
            let labels = (0..n).map(|i| i.to_string()).collect();
            let adj = (0..n)
                .map(|i| (0..n).filter(|&j| j != i).collect())
                .collect();
            Ok(ExplicitGraph::assemble(labels, adj))
        }
        Family::Hypercube => {
            let d = get("d")?;
            if d < 1 {
                return Err(domain(format!("need d >= 1, got {d}")));
            }
            let n = if d > 63 { u128::MAX } else { 1u128 << d };
            let d = d as usize;
            let n = guard(n)?;
            let labels = (0..n)
                .map(|v| {
                    (0..d)
                        .rev()
                        .map(|bit| ((v >> bit) & 1).to_string())
                        .collect()
                })
                .collect();
            let adj = (0..n)
                .map(|v| (0..d).map(|bit| v ^ (1 << bit)).collect())
                .collect();
            Ok(ExplicitGraph::assemble(labels, adj))
        }
        Family::Johnson => {
            let n = get("n")?;
            let d = get("d")?;
            if n < 2 || d < 1 || d > n / 2 || n > 64 {
                return Err(domain(format!(
                    "need 2 <= n <= 64 and 1 <= d <= n/2, got n={n} d={d}"
                )));
            }
            let (n, d) = (n as usize, d as usize);
            guard(binomial(n, d))?;
            let subsets = d_subsets(n, d);
            let labels = subsets
                .iter()
                .map(|s| {
                    let parts: Vec<String> = s.iter().map(|v| (v + 1).to_string()).collect();
                    format!("{{{}}}", parts.join(","))
                })
                .collect();
            let masks: Vec<u64> = subsets
                .iter()
                .map(|s| s.iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect();
            let adj = masks
                .iter()
                .map(|&a| {
                    masks
                        .iter()
                        .enumerate()
                        .filter(|&(_, &b)| (a & b).count_ones() as usize == d - 1)
                        .map(|(j, _)| j)
                        .collect()
                })
                .collect();
            Ok(ExplicitGraph::assemble(labels, adj))
        }
        _ => Err(GraphError::NoExplicitConstruction { family }),
    }
}

fn guard(n: u128) -> Result<usize, GraphError> {
    if n > MAX_EXPLICIT_VERTICES as u128 {
        Err(GraphError::TooLarge {
            n: n.min(usize::MAX as u128) as usize,
            cap: MAX_EXPLICIT_VERTICES,
        })
    } else {
        Ok(n as usize)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn d_subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::with_capacity(d), &mut out);
    out
}

impl ExplicitGraph {
    fn assemble(labels: Vec<String>, adj: Vec<Vec<usize>>) -> Self {
        let degree = adj.first().map_or(0, Vec::len);
        let g = ExplicitGraph {
            labels,
            adj,
            degree,
        };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Common degree `kappa`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Irreflexive symmetric adjacency, connectivity, common degree.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.n();
        for (v, nb) in self.adj.iter().enumerate() {
            if nb.len() != self.degree {
                return Err(format!(
                    "vertex {v} has degree {} != {}",
                    nb.len(),
                    self.degree
                ));
            }
            for &w in nb {
                if w == v {
                    return Err(format!("self-loop at {v}"));
                }
                if !self.adj[w].contains(&v) {
                    return Err(format!("asymmetric edge {v}->{w}"));
                }
            }
        }
        let reached = self
            .distances_from(0)
            .iter()
            .filter(|d| d.is_some())
            .count();
        if reached != n {
            return Err(format!("graph is disconnected ({reached}/{n} reachable)"));
        }
        Ok(())
    }

    /// BFS distances from `v`; `None` marks unreachable vertices.
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn bfs_row(&self, v: usize) -> Vec<usize> {
        self.distances_from(v)
            .into_iter()
            .map(|d| d.expect("connected graph"))
            .collect()
    }

    /// BFS layers around a reference vertex.
    pub fn stratify(&self, reference: usize) -> Stratification {
        let dist = self.bfs_row(reference);
        let diameter = dist.iter().max().copied().unwrap_or(0);
        let mut strata = vec![Vec::new(); diameter + 1];
        for (v, &d) in dist.iter().enumerate() {
            strata[d].push(v);
        }
        Stratification { reference, strata }
    }

    /// Recovers the intersection array by counting, for every ordered vertex
    /// pair at distance `i`, the neighbors of the far endpoint at distances
    /// `i-1`, `i`, `i+1` from the reference endpoint; the counts must not
    /// depend on the pair. The product identity
    /// `A_1 A_i = b_{i-1} A_{i-1} + a_i A_i + c_{i+1} A_{i+1}` is then
    /// checked on the distance matrices: literally, by integer matrix
    /// products, up to 128 vertices, and entry-streamed beyond that.
    pub fn verify_distance_regular(&self) -> Result<IntersectionArray, GraphError> {
        let n = self.n();
        let fail = |detail: String| GraphError::NotDistanceRegular { detail };

        let mut counts: Vec<Option<(usize, usize, usize)>> = Vec::new();
        for u in 0..n {
            let row = self.bfs_row(u);
            for v in 0..n {
                let i = row[v];
                let mut c = 0;
                let mut a = 0;
                let mut b = 0;
                for &w in &self.adj[v] {
                    let dw = row[w];
                    if dw + 1 == i {
                        c += 1;
                    } else if dw == i {
                        a += 1;
                    } else {
                        debug_assert_eq!(dw, i + 1);
                        b += 1;
                    }
                }
                if counts.len() <= i {
                    counts.resize(i + 1, None);
                }
                match counts[i] {
                    None => counts[i] = Some((c, a, b)),
                    Some(expected) => {
                        if expected != (c, a, b) {
                            return Err(fail(format!(
                                "pair ({u},{v}) at distance {i} sees (c,a,b) = {:?}, expected {:?}",
                                (c, a, b),
                                expected
                            )));
                        }
                    }
                }
            }
        }

        let counts: Vec<(usize, usize, usize)> = counts
            .into_iter()
            .map(|c| c.expect("every distance up to the diameter occurs"))
            .collect();
        let diameter = counts.len() - 1;
        if counts[diameter].2 != 0 {
            return Err(fail("b_d != 0 at the last stratum".into()));
        }
        let b: Vec<BigInt> = (0..diameter).map(|i| BigInt::from(counts[i].2)).collect();
        let c: Vec<BigInt> = (1..=diameter).map(|i| BigInt::from(counts[i].0)).collect();
        let arr = IntersectionArray::from_bigints(b, c)
            .map_err(|e| fail(format!("recovered counts are infeasible: {e}")))?;

        if n <= DENSE_PRODUCT_LIMIT {
            self.check_product_identity_dense(&arr)?;
        } else {
            self.check_product_identity_streamed(&arr)?;
        }
        Ok(arr)
    }

    /// Builds the 0/1 distance matrices and multiplies them out.
    #[allow(clippy::needless_range_loop)]
    fn check_product_identity_dense(&self, arr: &IntersectionArray) -> Result<(), GraphError> {
        let n = self.n();
        let d = arr.diameter();
        let dist: Vec<Vec<usize>> = (0..n).map(|v| self.bfs_row(v)).collect();
        let matrix_of = |i: usize| -> Vec<Vec<i64>> {
            (0..n)
                .map(|u| (0..n).map(|v| i64::from(dist[u][v] == i)).collect())
                .collect()
        };
        let a_matrices: Vec<Vec<Vec<i64>>> = (0..=d).map(matrix_of).collect();
        let coeff = |v: &BigInt| v.to_i64().expect("intersection numbers fit in i64");

        for i in 1..=d {
            for u in 0..n {
                for v in 0..n {
                    let product: i64 = self.adj[u].iter().map(|&w| a_matrices[i][w][v]).sum();
                    let mut expected = coeff(arr.b(i - 1)) * a_matrices[i - 1][u][v]
                        + coeff(arr.a(i)) * a_matrices[i][u][v];
                    if i < d {
                        expected += coeff(arr.c(i + 1)) * a_matrices[i + 1][u][v];
                    }
                    if product != expected {
                        return Err(GraphError::NotDistanceRegular {
                            detail: format!(
                                "product identity fails at stratum {i}, entry ({u},{v}): \
                                 {product} != {expected}"
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Same identity, evaluated entry by entry from streamed BFS rows so no
    /// dense matrix is ever built. `(A_1 A_j)[u][v]` counts neighbors of `u`
    /// at distance `j` from `v`; the identity pins its value for
    /// `j = d(u,v) -/+ 1` and `j = d(u,v)` and forces zero elsewhere.
    fn check_product_identity_streamed(&self, arr: &IntersectionArray) -> Result<(), GraphError> {
        let n = self.n();
        let d = arr.diameter();
        let coeff = |v: &BigInt| v.to_usize().expect("intersection numbers fit in usize");
        for v in 0..n {
            let row = self.bfs_row(v);
            for u in 0..n {
                let i0 = row[u];
                let mut near = 0; // neighbors of u at distance i0 - 1 from v
                let mut level = 0; // at distance i0
                let mut far = 0; // at distance i0 + 1
                for &w in &self.adj[u] {
                    let dw = row[w];
                    if dw + 1 == i0 {
                        near += 1;
                    } else if dw == i0 {
                        level += 1;
                    } else {
                        far += 1;
                    }
                }
                // entry (u,v) of A_1 A_j is nonzero only for j within one of
                // i0 = d(u,v); the identity pins each of the three values
                let mut mismatch = None;
                if i0 >= 2 && near != coeff(arr.c(i0)) {
                    mismatch = Some((i0 - 1, near, coeff(arr.c(i0))));
                }
                if mismatch.is_none() && i0 >= 1 && level != coeff(arr.a(i0)) {
                    mismatch = Some((i0, level, coeff(arr.a(i0))));
                }
                if mismatch.is_none() && i0 < d && far != coeff(arr.b(i0)) {
                    mismatch = Some((i0 + 1, far, coeff(arr.b(i0))));
                }
                if let Some((j, got, want)) = mismatch {
                    return Err(GraphError::NotDistanceRegular {
                        detail: format!(
                            "product identity fails at stratum {j}, entry ({u},{v}): {got} != {want}"
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Family, FamilySpec};

    fn spec(family: Family, params: &[(&str, i64)]) -> FamilySpec {
        FamilySpec::with(family, params)
    }

    #[test]
    fn cube_shape() {
        let g = build_graph(&spec(Family::Hypercube, &[("d", 3)])).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.degree(), 3);
        assert!(g.check_invariants().is_ok());
    }

    #[test]
    fn octahedron_shape() {
        let g = build_graph(&spec(Family::Johnson, &[("n", 4), ("d", 2)])).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.degree(), 4);
    }

    #[test]
    fn pentagon_shape() {
        let g = build_graph(&spec(Family::Cycle, &[("n", 5)])).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.degree(), 2);
    }

    #[test]
    fn stratification_sizes() {
        let cube = build_graph(&spec(Family::Hypercube, &[("d", 3)])).unwrap();
        for v in 0..cube.n() {
            assert_eq!(cube.stratify(v).sizes(), vec![1, 3, 3, 1]);
        }
        let octa = build_graph(&spec(Family::Johnson, &[("n", 4), ("d", 2)])).unwrap();
        assert_eq!(octa.stratify(0).sizes(), vec![1, 4, 1]);
        let c5 = build_graph(&spec(Family::Cycle, &[("n", 5)])).unwrap();
        assert_eq!(c5.stratify(0).sizes(), vec![1, 2, 2]);
    }

    #[test]
    fn strata_partition_vertices() {
        let g = build_graph(&spec(Family::Johnson, &[("n", 5), ("d", 2)])).unwrap();
        let s = g.stratify(3);
        assert_eq!(s.strata[0], vec![3]);
        let mut all: Vec<usize> = s.strata.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        assert_eq!(s.stratum_of(3), Some(0));
    }

    #[test]
    fn recovered_arrays() {
        let cube = build_graph(&spec(Family::Hypercube, &[("d", 3)])).unwrap();
        let arr = cube.verify_distance_regular().unwrap();
        assert_eq!(arr, IntersectionArray::new(&[3, 2, 1], &[1, 2, 3]).unwrap());

        let j52 = build_graph(&spec(Family::Johnson, &[("n", 5), ("d", 2)])).unwrap();
        let arr = j52.verify_distance_regular().unwrap();
        assert_eq!(arr, IntersectionArray::new(&[6, 2], &[1, 4]).unwrap());

        let c6 = build_graph(&spec(Family::Cycle, &[("n", 6)])).unwrap();
        let arr = c6.verify_distance_regular().unwrap();
        assert_eq!(arr, IntersectionArray::new(&[2, 1, 1], &[1, 1, 2]).unwrap());
    }

    #[test]
    fn streamed_product_identity_agrees_with_dense() {
        // a cycle big enough to take the streamed path
        let g = build_graph(&spec(Family::Cycle, &[("n", 150)])).unwrap();
        let arr = g.verify_distance_regular().unwrap();
        assert_eq!(arr.diameter(), 75);
        g.check_product_identity_dense(&arr).unwrap();
        g.check_product_identity_streamed(&arr).unwrap();
    }

    #[test]
    fn no_explicit_construction_for_sporadics() {
        assert!(matches!(
            build_graph(&FamilySpec::new(Family::BiggsSmith)),
            Err(GraphError::NoExplicitConstruction { .. })
        ));
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            build_graph(&spec(Family::Cycle, &[("n", 5001)])),
            Err(GraphError::TooLarge { .. })
        ));
        assert!(build_graph(&spec(Family::Cycle, &[("n", 5000)])).is_ok());
        assert!(matches!(
            build_graph(&spec(Family::Hypercube, &[("d", 13)])),
            Err(GraphError::TooLarge { .. })
        ));
    }

    #[test]
    fn labels_are_meaningful() {
        let cube = build_graph(&spec(Family::Hypercube, &[("d", 3)])).unwrap();
        assert_eq!(cube.label(0), "000");
        assert_eq!(cube.label(5), "101");
        let j42 = build_graph(&spec(Family::Johnson, &[("n", 4), ("d", 2)])).unwrap();
        assert_eq!(j42.label(0), "{1,2}");
    }
}
