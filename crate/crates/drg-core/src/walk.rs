//! Monte Carlo commute-time estimation by seeded uniform random walks.
//!
//! A round trip is the number of steps a uniform nearest-neighbor walk
//! starting at `alpha` takes to first reach `beta` and then return to
//! `alpha`. Its expectation is the commute time `N * kappa * R_{alpha beta}`,
//! which makes the walker an end-to-end statistical check of the whole
//! resistance pipeline. The generator is seeded explicitly so runs are
//! reproducible bit for bit.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::ExplicitGraph;

/// Empirical round-trip statistics from one batch of walks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WalkEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub walks: u64,
    pub seed: u64,
}

/// Runs `walks` independent round trips `alpha -> beta -> alpha` and reports
/// the sample mean and its standard error.
///
/// Walks within a batch are drawn sequentially from one stream, so the seed
/// fully determines the result.
pub fn mc_commute_time(
    g: &ExplicitGraph,
    alpha: usize,
    beta: usize,
    walks: u64,
    seed: u64,
) -> WalkEstimate {
    assert!(alpha != beta, "commute time needs two distinct vertices");
    assert!(walks >= 1, "at least one walk");
    assert!(alpha < g.n() && beta < g.n(), "vertex out of range");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = Uniform::new(0, g.degree());
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..walks {
        let mut position = alpha;
        let mut steps = 0u64;
        let mut target = beta;
        loop {
            position = g.neighbors(position)[step.sample(&mut rng)];
            steps += 1;
            if position == target {
                if target == alpha {
                    break;
                }
                target = alpha;
            }
        }
        let x = steps as f64;
        sum += x;
        sum_sq += x * x;
    }
    let n = walks as f64;
    let mean = sum / n;
    let variance = if walks > 1 {
        ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    WalkEstimate {
        mean,
        stderr: (variance / n).sqrt(),
        walks,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Family, FamilySpec};
    use crate::graph::build_graph;
    use crate::resistance::resistance_table;
    use num_traits::ToPrimitive;

    fn graph(family: Family, params: &[(&str, i64)]) -> ExplicitGraph {
        build_graph(&FamilySpec::with(family, params)).unwrap()
    }

    #[test]
    fn single_edge_walk_is_deterministic() {
        let g = graph(Family::Complete, &[("n", 2)]);
        let est = mc_commute_time(&g, 0, 1, 1000, 7);
        assert_eq!(est.mean, 2.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn seed_determines_everything() {
        let g = graph(Family::Cycle, &[("n", 6)]);
        let a = mc_commute_time(&g, 0, 1, 500, 123);
        let b = mc_commute_time(&g, 0, 1, 500, 123);
        assert_eq!(a, b);
        let c = mc_commute_time(&g, 0, 1, 500, 124);
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn square_cycle_estimate_brackets_the_commute_time() {
        let g = graph(Family::Cycle, &[("n", 4)]);
        let est = mc_commute_time(&g, 0, 1, 100_000, 20240_u64);
        // N kappa R = 4 * 2 * 3/4 = 6
        assert!((est.mean - 6.0).abs() <= 3.0 * est.stderr, "{est:?}");
    }

    #[test]
    fn three_sigma_coverage_over_many_seeds() {
        let g = graph(Family::Cycle, &[("n", 4)]);
        let expected = 6.0;
        let mut hits = 0;
        let runs = 60;
        for seed in 0..runs {
            let est = mc_commute_time(&g, 0, 1, 2000, seed);
            if (est.mean - expected).abs() <= 3.0 * est.stderr {
                hits += 1;
            }
        }
        assert!(hits >= runs - 2, "only {hits}/{runs} runs inside 3 sigma");
    }

    #[test]
    fn agrees_with_analytic_commute_time_on_the_cube() {
        let g = graph(Family::Hypercube, &[("d", 3)]);
        let arr = g.verify_distance_regular().unwrap();
        let table = resistance_table(&arr);
        let analytic = table.commute_times()[0].to_f64();
        assert_eq!(analytic, 14.0);
        let beta = g.neighbors(0)[0];
        let est = mc_commute_time(&g, 0, beta, 100_000, 99);
        assert!((est.mean - analytic).abs() <= 3.0 * est.stderr, "{est:?}");
    }

    #[test]
    fn commute_time_to_f64_helper_is_exact_here() {
        let arr = crate::intersection::IntersectionArray::new(&[2, 1], &[1, 2]).unwrap();
        assert_eq!(
            crate::resistance::commute_time(&arr, 1)
                .unwrap()
                .numer()
                .to_f64()
                .unwrap(),
            6.0
        );
    }
}
