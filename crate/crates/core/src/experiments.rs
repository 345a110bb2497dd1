//! The uniform random model on labeled (m,n)-mixed graphs: sampling,
//! Monte-Carlo clique fractions, exact enumeration and the union bound.

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyType, MixedGraph, Signature};
use crate::rigidity::{is_clique, is_special_two_path};

/// Identifier of the generator behind [`trial_rng`].
pub const PRNG_ALGORITHM: &str = "chacha8";
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

/// Generator for trial `t`: ChaCha8 keyed by `seed`, stream `t`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Each unordered pair independently takes one of the `2m+n+1` options.
pub fn random_graph<R: Rng + ?Sized>(sig: Signature, k: usize, rng: &mut R) -> MixedGraph {
    let mut g = MixedGraph::new(sig, k);
    for u in 0..k {
        for v in u + 1..k {
            let code = rng.gen_range(0..sig.pair_options());
            g.set_unchecked(u, v, AdjacencyType::from_code(sig, code).unwrap());
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub mode: String,
    pub m: u32,
    pub n: u32,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total: Option<u128>,
    pub clique_count: u128,
    pub fraction: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prng: Option<String>,
}

impl ExperimentReport {
    /// One JSON object on a single line.
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn pair_count(k: usize) -> u32 {
    (k * k.saturating_sub(1) / 2) as u32
}

/// `(2m+n+1)^C(k,2)`, or `None` on overflow.
pub fn graph_count(sig: Signature, k: usize) -> Option<u128> {
    (sig.pair_options() as u128).checked_pow(pair_count(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumeration {
    pub total: u128,
    pub clique_count: u128,
}

/// Runs `is_clique` on every labeled graph of order `k`.
pub fn enumerate_exact(sig: Signature, k: usize, budget: u128) -> Result<Enumeration> {
    let total = graph_count(sig, k).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded {
            required: total,
            budget,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
        .collect();
    let options = sig.pair_options();
    let mut digits = vec![0usize; pairs.len()];
    let mut g = MixedGraph::new(sig, k);
    let mut clique_count = 0u128;
    let mut seen = 0u128;
    loop {
        seen += 1;
        if is_clique(&g).is_clique() {
            clique_count += 1;
        }
        // odometer step, last pair fastest
        let mut pos = pairs.len();
        loop {
            if pos == 0 {
                debug_assert_eq!(seen, total);
                return Ok(Enumeration {
                    total: seen,
                    clique_count,
                });
            }
            pos -= 1;
            digits[pos] = (digits[pos] + 1) % options;
            let (u, v) = pairs[pos];
            g.set_unchecked(u, v, AdjacencyType::from_code(sig, digits[pos]).unwrap());
            if digits[pos] != 0 {
                break;
            }
        }
    }
}

pub fn exact_report(sig: Signature, k: usize, budget: u128) -> Result<ExperimentReport> {
    let e = enumerate_exact(sig, k, budget)?;
    Ok(ExperimentReport {
        mode: "exact".into(),
        m: sig.arc_colors(),
        n: sig.edge_colors(),
        k,
        trials: None,
        total: Some(e.total),
        clique_count: e.clique_count,
        fraction: e.clique_count as f64 / e.total as f64,
        seed: None,
        prng: None,
    })
}

/// Monte-Carlo estimate of the probability that a uniform random graph of
/// order `k` is a clique. Trials are split into `jobs` contiguous ranges.
pub fn clique_fraction(
    sig: Signature,
    k: usize,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let count_range = |lo: u64, hi: u64| {
        (lo..hi)
            .filter(|&t| is_clique(&random_graph(sig, k, &mut trial_rng(seed, t))).is_clique())
            .count() as u128
    };
    let jobs = (jobs.max(1) as u64).min(trials);
    let chunk = trials.div_ceil(jobs);
    let clique_count: u128 = if jobs == 1 {
        count_range(0, trials)
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let lo = (j * chunk).min(trials);
                    let hi = ((j + 1) * chunk).min(trials);
                    scope.spawn(move || count_range(lo, hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).sum()
        })
    };
    Ok(ExperimentReport {
        mode: "monte-carlo".into(),
        m: sig.arc_colors(),
        n: sig.edge_colors(),
        k,
        trials: Some(trials),
        total: None,
        clique_count,
        fraction: clique_count as f64 / trials as f64,
        seed: Some(seed),
        prng: Some(PRNG_ALGORITHM.into()),
    })
}

/// For a non-adjacent pair `u, v` and a fixed third vertex `w`, the number
/// of `(type(u,w), type(v,w))` combinations that give no special 2-path.
pub fn non_special_third_vertex_count(sig: Signature) -> usize {
    let options = sig.pair_options();
    let mut count = 0;
    for a in 0..options {
        for b in 0..options {
            let mut g = MixedGraph::new(sig, 3);
            g.set_unchecked(0, 2, AdjacencyType::from_code(sig, a).unwrap());
            g.set_unchecked(1, 2, AdjacencyType::from_code(sig, b).unwrap());
            if !is_special_two_path(&g, 0, 2, 1).unwrap() {
                count += 1;
            }
        }
    }
    count
}

/// `C(k,2) (6m+3n+1)^(k-2) (2m+n+1)^C(k-2,2)`: pick the bad pair, one
/// non-special configuration per other vertex, anything elsewhere.
pub fn union_bound(sig: Signature, k: usize) -> Option<u128> {
    if k < 2 {
        return Some(0);
    }
    let per_vertex = 3 * sig.adjacency_kinds() as u128 + 1;
    (pair_count(k) as u128)
        .checked_mul(per_vertex.checked_pow((k - 2) as u32)?)?
        .checked_mul(graph_count(sig, k - 2)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnionBoundCheck {
    pub exact_noncliques: u128,
    pub bound: u128,
}

impl UnionBoundCheck {
    pub fn holds(&self) -> bool {
        self.exact_noncliques <= self.bound
    }
}

pub fn union_bound_check(sig: Signature, k: usize, budget: u128) -> Result<UnionBoundCheck> {
    let e = enumerate_exact(sig, k, budget)?;
    Ok(UnionBoundCheck {
        exact_noncliques: e.total - e.clique_count,
        bound: union_bound(sig, k).unwrap_or(u128::MAX),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homsearch::chromatic_number;

    fn sig(m: u32, n: u32) -> Signature {
        Signature::new(m, n).unwrap()
    }

    #[test]
    fn sampler_edge_cases() {
        let mut rng = trial_rng(1, 0);
        for k in [0, 1] {
            assert_eq!(random_graph(sig(1, 1), k, &mut rng).adjacency_count(), 0);
        }
    }

    #[test]
    fn sampler_support_and_uniformity() {
        let s = sig(1, 1);
        let options = s.pair_options();
        assert_eq!(options, 4);
        let draws = 100_000;
        let mut counts = vec![0u64; options];
        let mut rng = trial_rng(7, 0);
        for _ in 0..draws {
            let g = random_graph(s, 2, &mut rng);
            counts[g.relation(0, 1).code(s)] += 1;
        }
        let p = 1.0 / options as f64;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for &c in &counts {
            assert!(
                (c as f64 - draws as f64 * p).abs() < 4.0 * sigma,
                "{counts:?}"
            );
        }
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - draws as f64 * p).powi(2) / (draws as f64 * p))
            .sum();
        // 3 degrees of freedom, 0.999 quantile
        assert!(chi2 < 16.27, "{chi2}");
    }

    /// Independent count: a graph is a clique iff no partition merging a
    /// pair is valid, i.e. iff its chromatic number equals its order.
    fn brute_clique_count(s: Signature, k: usize) -> (u128, u128) {
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
            .collect();
        let options = s.pair_options();
        let total = (options as u128).pow(pairs.len() as u32);
        let mut cliques = 0;
        for idx in 0..total {
            let mut g = MixedGraph::new(s, k);
            let mut rest = idx;
            for &(u, v) in &pairs {
                let code = (rest % options as u128) as usize;
                rest /= options as u128;
                if code != 0 {
                    g.add(u, v, AdjacencyType::from_code(s, code).unwrap())
                        .unwrap();
                }
            }
            if chromatic_number(&g).value == k {
                cliques += 1;
            }
        }
        (total, cliques)
    }

    #[test]
    fn enumeration_matches_independent_count() {
        for (s, k) in [
            (sig(1, 0), 2),
            (sig(1, 0), 3),
            (sig(0, 2), 3),
            (sig(1, 0), 4),
            (sig(0, 1), 4),
        ] {
            let e = enumerate_exact(s, k, DEFAULT_ENUMERATION_BUDGET).unwrap();
            let (total, cliques) = brute_clique_count(s, k);
            assert_eq!(e.total, total);
            assert_eq!(e.clique_count, cliques, "{s} k={k}");
            assert_eq!(Some(e.total), graph_count(s, k));
        }
    }

    #[test]
    fn enumeration_small_values() {
        // k=2: three options per pair, both adjacent ones are cliques
        let e = enumerate_exact(sig(1, 0), 2, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!((e.total, e.clique_count), (3, 2));
        let e = enumerate_exact(sig(1, 0), 3, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(e.total, 27);
        assert_eq!(e.clique_count, 14);
        let e = enumerate_exact(sig(0, 2), 3, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(e.total, 27);
        assert_eq!(enumerate_exact(sig(1, 0), 0, 10).unwrap().clique_count, 1);
        assert!(matches!(
            enumerate_exact(sig(1, 0), 6, 1000),
            Err(Error::BudgetExceeded {
                required: 14_348_907,
                budget: 1000
            })
        ));
    }

    #[test]
    fn third_vertex_count() {
        for m in 0..=2 {
            for n in 0..=4 {
                if (m, n) == (0, 0) || 2 * m + n > 4 {
                    continue;
                }
                assert_eq!(
                    non_special_third_vertex_count(sig(m, n)),
                    (6 * m + 3 * n + 1) as usize
                );
            }
        }
    }

    #[test]
    fn union_bound_dominates() {
        let c = union_bound_check(sig(1, 0), 3, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(c.bound, 21);
        assert_eq!(c.exact_noncliques, 13);
        for (s, k) in [
            (sig(1, 0), 2),
            (sig(1, 0), 4),
            (sig(0, 2), 3),
            (sig(0, 1), 4),
            (sig(1, 1), 3),
        ] {
            assert!(union_bound_check(s, k, DEFAULT_ENUMERATION_BUDGET)
                .unwrap()
                .holds());
        }
    }

    #[test]
    fn monte_carlo_matches_exact() {
        let s = sig(1, 0);
        let trials = 20_000;
        let report = clique_fraction(s, 3, trials, 42, 4).unwrap();
        let p = 14.0 / 27.0;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!(
            (report.fraction - p).abs() < 3.0 * sigma,
            "{}",
            report.fraction
        );
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let s = sig(0, 2);
        let a = clique_fraction(s, 5, 500, 9, 1).unwrap();
        let b = clique_fraction(s, 5, 500, 9, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_line(), b.to_line());
        let one = clique_fraction(s, 5, 1, 9, 1).unwrap();
        assert!(one.fraction == 0.0 || one.fraction == 1.0);
        assert!(clique_fraction(s, 5, 0, 9, 1).is_err());
    }
}
