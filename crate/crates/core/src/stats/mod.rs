//! Run statistics: per-problem summaries, Welch one-tailed comparisons,
//! and win/tie/loss tables.

mod tdist;

pub use tdist::{ln_gamma, regularized_incomplete_beta, student_t_cdf};

use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Five-number summary of a sample of final errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub n: usize,
    pub best: f64,
    pub worst: f64,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for a single value.
    pub std: f64,
    pub median: f64,
}

/// Summarizes a nonempty, NaN-free sample.
pub fn summarize(values: &[f64]) -> Result<RunStats, Error> {
    if values.is_empty() {
        return Err(Error::EmptySample("summarize"));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::param("values", "contains NaN"));
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n == 1 {
        0.0
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (n - 1) as f64).sqrt()
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("NaN rejected above"));
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };
    Ok(RunStats {
        n,
        best: sorted[0],
        worst: sorted[n - 1],
        mean,
        std,
        median,
    })
}

/// Direction of the one-tailed alternative hypothesis about sample `a`
/// relative to sample `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// H1: the mean of `a` is smaller than the mean of `b`.
    MeanLess,
    /// H1: the mean of `a` is greater than the mean of `b`.
    MeanGreater,
}

/// Outcome of a Welch unequal-variance t-test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTestResult {
    pub t_statistic: f64,
    pub dof: f64,
    pub p_one_tail: f64,
}

/// One-tailed Welch t-test of `a` against `b`.
///
/// `t = (mean_a - mean_b) / sqrt(var_a/n_a + var_b/n_b)` with the
/// Welch-Satterthwaite degrees of freedom. The p-value is the Student-t
/// tail in the chosen direction; the two directions sum to 1 exactly, so
/// swapping the samples and the direction gives a bit-identical p-value.
///
/// Degenerate inputs take defined fallbacks instead of erroring: with fewer
/// than two values on either side, or both variances zero at equal means,
/// the result is a maximally inconclusive `p = 0.5` with `t = 0`. Both
/// variances zero at unequal means gives an infinite `t` and `p` of 0 or 1.
pub fn welch_one_tail(a: &[f64], b: &[f64], direction: Direction) -> TTestResult {
    let (na, nb) = (a.len(), b.len());
    if na < 2 || nb < 2 {
        return TTestResult {
            t_statistic: 0.0,
            dof: 1.0,
            p_one_tail: 0.5,
        };
    }
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    let var = |s: &[f64], m: f64| {
        s.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (s.len() - 1) as f64
    };
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (var(a, ma), var(b, mb));
    let sa = va / na as f64;
    let sb = vb / nb as f64;
    let se2 = sa + sb;
    if se2 == 0.0 {
        if ma == mb {
            return TTestResult {
                t_statistic: 0.0,
                dof: (na + nb - 2) as f64,
                p_one_tail: 0.5,
            };
        }
        let t = if ma < mb {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
        let p = match direction {
            Direction::MeanLess => student_t_cdf(t, 1.0),
            Direction::MeanGreater => student_t_cdf(-t, 1.0),
        };
        return TTestResult {
            t_statistic: t,
            dof: (na + nb - 2) as f64,
            p_one_tail: p,
        };
    }
    let t = (ma - mb) / se2.sqrt();
    let dof = se2 * se2
        / (sa * sa / (na as f64 - 1.0) + sb * sb / (nb as f64 - 1.0));
    let p = match direction {
        Direction::MeanLess => student_t_cdf(t, dof),
        Direction::MeanGreater => student_t_cdf(-t, dof),
    };
    TTestResult {
        t_statistic: t,
        dof,
        p_one_tail: p,
    }
}

/// How a candidate sample of errors compares to a reference sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Candidate errors are significantly smaller.
    Win,
    Tie,
    /// Candidate errors are significantly larger.
    Loss,
}

impl Verdict {
    /// Conventional one-character notation: `+` win, `=` tie, `-` loss.
    pub fn symbol(&self) -> char {
        match self {
            Verdict::Win => '+',
            Verdict::Tie => '=',
            Verdict::Loss => '-',
        }
    }
}

/// Classifies `candidate` against `reference` at the given significance
/// level by two one-tailed Welch tests. Swapping the arguments swaps Win
/// and Loss exactly.
pub fn classify(candidate: &[f64], reference: &[f64], significance: f64) -> Verdict {
    assert!(
        significance > 0.0 && significance < 1.0,
        "significance must be in (0, 1)"
    );
    let better = welch_one_tail(candidate, reference, Direction::MeanLess).p_one_tail;
    if better < significance {
        return Verdict::Win;
    }
    let worse = welch_one_tail(candidate, reference, Direction::MeanGreater).p_one_tail;
    if worse < significance {
        return Verdict::Loss;
    }
    Verdict::Tie
}

/// One cell of a comparison table: an algorithm's summary on one problem
/// and its verdict against the table's reference algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonCell {
    pub problem: String,
    pub algorithm: String,
    pub stats: RunStats,
    pub verdict: Verdict,
}

/// Win/tie/loss counts for one algorithm across problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WinTieLoss {
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

/// Complete problems-by-algorithms comparison grid with per-algorithm
/// totals. Rows and columns are sorted for stable output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub problems: Vec<String>,
    pub algorithms: Vec<String>,
    pub cells: Vec<ComparisonCell>,
    pub totals: Vec<(String, WinTieLoss)>,
}

impl ComparisonTable {
    pub fn cell(&self, problem: &str, algorithm: &str) -> Option<&ComparisonCell> {
        self.cells
            .iter()
            .find(|c| c.problem == problem && c.algorithm == algorithm)
    }
}

/// Assembles cells into a table, requiring exactly one cell per
/// (problem, algorithm) pair.
pub fn build_table(mut cells: Vec<ComparisonCell>) -> Result<ComparisonTable, Error> {
    if cells.is_empty() {
        return Err(Error::EmptySample("build_table"));
    }
    let mut problems: Vec<String> = cells.iter().map(|c| c.problem.clone()).collect();
    problems.sort();
    problems.dedup();
    let mut algorithms: Vec<String> = cells.iter().map(|c| c.algorithm.clone()).collect();
    algorithms.sort();
    algorithms.dedup();
    let mut seen = BTreeMap::new();
    for cell in &cells {
        let key = (cell.problem.clone(), cell.algorithm.clone());
        if seen.insert(key, ()).is_some() {
            return Err(Error::MissingCell(format!(
                "duplicate cell for ({}, {})",
                cell.problem, cell.algorithm
            )));
        }
    }
    for p in &problems {
        for a in &algorithms {
            if !seen.contains_key(&(p.clone(), a.clone())) {
                return Err(Error::MissingCell(format!("({p}, {a})")));
            }
        }
    }
    cells.sort_by(|x, y| (&x.problem, &x.algorithm).cmp(&(&y.problem, &y.algorithm)));
    let totals = algorithms
        .iter()
        .map(|a| {
            let mut wtl = WinTieLoss::default();
            for c in cells.iter().filter(|c| &c.algorithm == a) {
                match c.verdict {
                    Verdict::Win => wtl.wins += 1,
                    Verdict::Tie => wtl.ties += 1,
                    Verdict::Loss => wtl.losses += 1,
                }
            }
            (a.clone(), wtl)
        })
        .collect();
    Ok(ComparisonTable {
        problems,
        algorithms,
        cells,
        totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use approx::assert_relative_eq;

    #[test]
    fn summarize_small_sample() {
        let s = summarize(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.n, 3);
        assert_eq!(s.best, 1.0);
        assert_eq!(s.worst, 3.0);
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.std, 1.0);
        assert_eq!(s.median, 2.0);
    }

    #[test]
    fn summarize_even_sample_and_edge_cases() {
        let s = summarize(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(s.median, 2.5);
        let single = summarize(&[7.0]).unwrap();
        assert_eq!(single.std, 0.0);
        assert_eq!(single.median, 7.0);
        assert!(summarize(&[]).is_err());
        assert!(summarize(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn welch_matches_hand_computation() {
        // a = [1, 2, 3], b = [2, 3, 4]: means 2 and 3, both variances 1,
        // se = sqrt(2/3), t = -sqrt(3/2), dof = 4.
        let r = welch_one_tail(&[1.0, 2.0, 3.0], &[2.0, 3.0, 4.0], Direction::MeanLess);
        assert_relative_eq!(r.t_statistic, -(1.5f64.sqrt()), max_relative = 1e-14);
        assert_relative_eq!(r.dof, 4.0, max_relative = 1e-12);
        assert!(r.p_one_tail > 0.1 && r.p_one_tail < 0.2);
    }

    #[test]
    fn directions_are_complementary_and_antisymmetric() {
        let mut rng = RngStream::new(42);
        for _ in 0..100 {
            let a: Vec<f64> = (0..20).map(|_| rng.uniform_in(0.0, 2.0)).collect();
            let b: Vec<f64> = (0..15).map(|_| rng.uniform_in(0.5, 2.5)).collect();
            let less = welch_one_tail(&a, &b, Direction::MeanLess);
            let greater = welch_one_tail(&a, &b, Direction::MeanGreater);
            assert_relative_eq!(
                less.p_one_tail + greater.p_one_tail,
                1.0,
                max_relative = 1e-12
            );
            let swapped = welch_one_tail(&b, &a, Direction::MeanLess);
            assert_eq!(swapped.t_statistic, -less.t_statistic);
            assert_eq!(swapped.p_one_tail.to_bits(), greater.p_one_tail.to_bits());
        }
    }

    #[test]
    fn degenerate_samples_take_fallbacks() {
        // Too small: inconclusive regardless of values.
        let r = welch_one_tail(&[1.0], &[100.0, 200.0], Direction::MeanLess);
        assert_eq!(r.p_one_tail, 0.5);
        // Zero variance, equal means: tie.
        let r = welch_one_tail(&[2.0, 2.0], &[2.0, 2.0], Direction::MeanLess);
        assert_eq!(r.p_one_tail, 0.5);
        // Zero variance, different means: certainty.
        let r = welch_one_tail(&[1.0, 1.0], &[2.0, 2.0], Direction::MeanLess);
        assert_eq!(r.t_statistic, f64::NEG_INFINITY);
        assert_eq!(r.p_one_tail, 0.0);
        let r = welch_one_tail(&[1.0, 1.0], &[2.0, 2.0], Direction::MeanGreater);
        assert_eq!(r.p_one_tail, 1.0);
    }

    #[test]
    fn classify_detects_clear_separation() {
        let mut rng = RngStream::new(7);
        let a: Vec<f64> = (0..51).map(|_| rng.uniform_in(0.0, 0.1)).collect();
        let b: Vec<f64> = (0..51).map(|_| rng.uniform_in(1.0, 1.1)).collect();
        assert_eq!(classify(&a, &b, 0.05), Verdict::Win);
        assert_eq!(classify(&b, &a, 0.05), Verdict::Loss);
        assert_eq!(classify(&a, &a, 0.05), Verdict::Tie);
    }

    #[test]
    fn classify_is_antisymmetric_on_random_pairs() {
        let mut rng = RngStream::new(123);
        for _ in 0..200 {
            let shift = rng.uniform_in(-0.2, 0.2);
            let a: Vec<f64> = (0..30).map(|_| rng.uniform_in(0.0, 1.0)).collect();
            let b: Vec<f64> = (0..30).map(|_| rng.uniform_in(shift, 1.0 + shift)).collect();
            let ab = classify(&a, &b, 0.05);
            let ba = classify(&b, &a, 0.05);
            let mirrored = match ab {
                Verdict::Win => Verdict::Loss,
                Verdict::Tie => Verdict::Tie,
                Verdict::Loss => Verdict::Win,
            };
            assert_eq!(ba, mirrored);
        }
    }

    #[test]
    fn table_requires_complete_grid() {
        let stats = summarize(&[1.0, 2.0]).unwrap();
        let cell = |p: &str, a: &str, v: Verdict| ComparisonCell {
            problem: p.into(),
            algorithm: a.into(),
            stats,
            verdict: v,
        };
        let table = build_table(vec![
            cell("p1", "yi", Verdict::Tie),
            cell("p1", "de", Verdict::Loss),
            cell("p2", "de", Verdict::Win),
            cell("p2", "yi", Verdict::Tie),
        ])
        .unwrap();
        assert_eq!(table.problems, vec!["p1", "p2"]);
        assert_eq!(table.algorithms, vec!["de", "yi"]);
        let de_totals = &table.totals[0];
        assert_eq!(de_totals.0, "de");
        assert_eq!(
            de_totals.1,
            WinTieLoss {
                wins: 1,
                ties: 0,
                losses: 1
            }
        );
        assert!(build_table(vec![
            cell("p1", "yi", Verdict::Tie),
            cell("p2", "de", Verdict::Win),
        ])
        .is_err());
        assert!(build_table(vec![
            cell("p1", "yi", Verdict::Tie),
            cell("p1", "yi", Verdict::Tie),
        ])
        .is_err());
        assert!(build_table(Vec::new()).is_err());
    }
}
