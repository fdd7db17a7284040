//! Monte Carlo restriction of irreducible representations.
//!
//! Restricting `ρ^λ` from `Sym(n)` to `Sym(n-1)` splits it into the `ρ^{λ∖c}`
//! over removable corners `c`, each once. Picking a component with
//! probability proportional to its dimension removes corner `c` with
//! probability `dim(λ∖c) / dim(λ)`; iterating down to `Sym(m)` yields the
//! shape of the entries `1..m` of a uniformly random standard tableau.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cumulants::free_cumulants;
use crate::error::{Error, Result};
use crate::partition::{DiagramBox, Partition};

/// Identifier recorded in every [`ScalingReport`].
pub const GENERATOR: &str = "ChaCha8Rng, seed_from_u64(seed), stream = trial index";

/// `n · dim(λ∖c) / dim(λ)` as `(numerator, denominator)`: the product of
/// `h / (h - 1)` over the other boxes in the row and column of `c`.
fn corner_weight(lambda: &Partition, corner: DiagramBox) -> (BigUint, BigUint) {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let row_boxes = (1..corner.column).map(|c| DiagramBox::new(corner.row, c));
    let col_boxes = (1..corner.row).map(|r| DiagramBox::new(r, corner.column));
    for b in row_boxes.chain(col_boxes) {
        let h = lambda.hook(b) as u64;
        num *= h;
        den *= h - 1;
    }
    (num, den)
}

/// The exact branching distribution: each removable corner's row and
/// `dim(λ∖c) / dim(λ)`.
pub fn restriction_probabilities(lambda: &Partition) -> Vec<(usize, BigRational)> {
    let n = BigInt::from(lambda.size());
    lambda
        .removable_boxes()
        .into_iter()
        .map(|c| {
            let (num, den) = corner_weight(lambda, c);
            (
                c.row,
                BigRational::new(BigInt::from(num), BigInt::from(den) * &n),
            )
        })
        .collect()
}

/// Removes one corner of `λ` with probability `dim(λ∖c) / dim(λ)`.
///
/// The cumulative probabilities are exact; only the final comparison with a
/// uniform 64-bit draw rounds them, to multiples of `2^-64`.
pub fn restriction_step<R: RngCore + ?Sized>(lambda: &Partition, rng: &mut R) -> Result<Partition> {
    if lambda.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let probabilities = restriction_probabilities(lambda);
    let u = BigInt::from(rng.next_u64());
    let scale = BigInt::one() << 64;
    let mut cumulative = BigRational::zero();
    for (i, (row, p)) in probabilities.iter().enumerate() {
        cumulative += p;
        let last = i + 1 == probabilities.len();
        // u < floor(cumulative · 2^64)  ⇔  u < cumulative · 2^64 for integer u
        if last || u.clone() * cumulative.denom() < cumulative.numer() * &scale {
            return lambda.remove_corner(*row);
        }
    }
    unreachable!("a nonempty diagram has a removable corner")
}

/// Applies [`restriction_step`] until `m` boxes remain.
pub fn restrict_to<R: RngCore + ?Sized>(
    lambda: &Partition,
    m: usize,
    rng: &mut R,
) -> Result<Partition> {
    if m > lambda.size() {
        return Err(Error::OutOfRange {
            what: "target size m",
            value: m as i64,
            min: 0,
            max: lambda.size() as i64,
        });
    }
    let mut current = lambda.clone();
    while current.size() > m {
        current = restriction_step(&current, rng)?;
    }
    Ok(current)
}

/// The generator used for trial `trial` of an experiment seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Comparison of `R_{k+1}` after restriction with its predicted scaling.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub lambda: Vec<usize>,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    pub generator: String,
    /// `(m/n)^k · R_{k+1}(λ)` as `"p/q"`.
    pub predicted: String,
    /// Sample mean of `R_{k+1}(μ)` as an exact `"p/q"`.
    pub exact_mean: String,
    pub estimate: f64,
    pub stderr: f64,
}

impl ScalingReport {
    pub fn predicted_value(&self) -> f64 {
        let p: BigRational = parse_ratio(&self.predicted);
        p.to_f64().unwrap_or(f64::NAN)
    }

    /// `|estimate - predicted|` in units of the standard error.
    pub fn z_score(&self) -> f64 {
        let diff = (self.estimate - self.predicted_value()).abs();
        if self.stderr == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / self.stderr
        }
    }

    /// `|estimate / predicted - 1|`.
    pub fn relative_gap(&self) -> f64 {
        (self.estimate / self.predicted_value() - 1.0).abs()
    }

    /// Standard error relative to the prediction.
    pub fn relative_stderr(&self) -> f64 {
        (self.stderr / self.predicted_value()).abs()
    }
}

fn parse_ratio(s: &str) -> BigRational {
    match s.split_once('/') {
        Some((n, d)) => BigRational::new(n.parse().unwrap(), d.parse().unwrap()),
        None => BigRational::from_integer(s.parse().unwrap()),
    }
}

/// Restricts `λ` to `Sym(m)` in `trials` independent runs and compares the
/// mean of `R_{k+1}(μ)` with `(m/n)^k · R_{k+1}(λ)`.
///
/// Trial `t` draws from [`trial_rng`]`(seed, t)`, so the report does not
/// depend on how trials are scheduled across threads.
pub fn scaling_experiment(
    lambda: &Partition,
    m: usize,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<ScalingReport> {
    let n = lambda.size();
    if trials == 0 {
        return Err(Error::OutOfRange {
            what: "trials",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    if m == 0 || m > n {
        return Err(Error::OutOfRange {
            what: "target size m",
            value: m as i64,
            min: 1,
            max: n as i64,
        });
    }
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "k",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    let ratio = BigRational::new(BigInt::from(m), BigInt::from(n));
    let scale = (0..k).fold(BigRational::one(), |acc, _| acc * &ratio);
    let predicted = scale * free_cumulants(lambda, k + 1).get(k + 1);

    let samples: Vec<BigRational> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mu = restrict_to(lambda, m, &mut rng).expect("m ≤ n checked above");
            free_cumulants(&mu, k + 1).get(k + 1).clone()
        })
        .collect();

    let count = BigRational::from_integer(BigInt::from(trials));
    let mean: BigRational = samples.iter().sum::<BigRational>() / &count;
    let mean_f = mean.to_f64().unwrap_or(f64::NAN);
    let stderr = if trials > 1 {
        let ss: f64 = samples
            .iter()
            .map(|x| {
                let d = x.to_f64().unwrap_or(f64::NAN) - mean_f;
                d * d
            })
            .sum();
        (ss / (trials - 1) as f64 / trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(ScalingReport {
        lambda: lambda.rows().to_vec(),
        n,
        m,
        k,
        trials,
        seed,
        generator: GENERATOR.to_string(),
        predicted: predicted.to_string(),
        exact_mean: mean.to_string(),
        estimate: mean_f,
        stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::dimension;
    use crate::partition::{partitions_of, partitions_up_to};
    use std::collections::HashMap;

    fn p(rows: &[usize]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// All standard Young tableaux of shape λ, as the shape sequence of the
    /// entries 1..=n (entry i sits in row rows[i-1]).
    fn tableaux(lambda: &Partition) -> Vec<Vec<usize>> {
        fn rec(
            current: &Partition,
            target: &Partition,
            rows: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if current == target {
                out.push(rows.clone());
                return;
            }
            for b in current.addable_boxes() {
                if target.contains(b) {
                    rows.push(b.row);
                    rec(&current.add_corner(b.row).unwrap(), target, rows, out);
                    rows.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&Partition::empty(), lambda, &mut Vec::new(), &mut out);
        out
    }

    fn shape_of_prefix(rows: &[usize], m: usize) -> Partition {
        let mut counts = vec![0; rows.iter().copied().max().unwrap_or(0)];
        for &r in &rows[..m] {
            counts[r - 1] += 1;
        }
        Partition::from_unsorted(counts)
    }

    fn exact_distribution(lambda: &Partition, m: usize) -> HashMap<Partition, BigRational> {
        let all = tableaux(lambda);
        let total = BigInt::from(all.len());
        let mut out: HashMap<Partition, BigRational> = HashMap::new();
        for t in &all {
            *out.entry(shape_of_prefix(t, m))
                .or_insert_with(BigRational::zero) +=
                BigRational::new(BigInt::one(), total.clone());
        }
        out
    }

    #[test]
    fn branching_probabilities_are_dimension_ratios() {
        for lambda in partitions_up_to(12).into_iter().filter(|l| !l.is_empty()) {
            let dim = BigInt::from(dimension(&lambda));
            let mut total = BigInt::zero();
            for (row, prob) in restriction_probabilities(&lambda) {
                let smaller = BigInt::from(dimension(&lambda.remove_corner(row).unwrap()));
                assert_eq!(prob, BigRational::new(smaller.clone(), dim.clone()));
                total += smaller;
            }
            assert_eq!(total, dim, "{lambda}");
        }
    }

    #[test]
    fn step_examples() {
        let mut rng = trial_rng(1, 0);
        assert_eq!(
            restriction_step(&p(&[1]), &mut rng).unwrap(),
            Partition::empty()
        );
        assert_eq!(restriction_step(&p(&[2]), &mut rng).unwrap(), p(&[1]));
        assert_eq!(
            restriction_step(&Partition::empty(), &mut rng),
            Err(Error::EmptyDiagram)
        );
        let probs = restriction_probabilities(&p(&[2, 1]));
        assert_eq!(probs, vec![(2, q(1, 2)), (1, q(1, 2))]);
    }

    #[test]
    fn restrict_examples() {
        let mut rng = trial_rng(7, 0);
        let l = p(&[3, 1]);
        assert_eq!(restrict_to(&l, 4, &mut rng).unwrap(), l);
        assert_eq!(restrict_to(&p(&[2, 1]), 1, &mut rng).unwrap(), p(&[1]));
        assert!(restrict_to(&l, 5, &mut rng).is_err());
        let d = exact_distribution(&l, 2);
        assert_eq!(d[&p(&[2])], q(2, 3));
        assert_eq!(d[&p(&[1, 1])], q(1, 3));
    }

    #[test]
    fn chain_matches_tableau_distribution() {
        let trials = 100_000u64;
        let mut cases: Vec<(Partition, usize)> = Vec::new();
        for lambda in partitions_of(6) {
            cases.push((lambda.clone(), 3));
        }
        cases.push((p(&[3, 1]), 2));
        cases.push((p(&[3, 2]), 1));
        cases.push((p(&[2, 2, 1]), 2));
        cases.push((p(&[4, 2]), 4));
        for (lambda, m) in cases {
            let exact = exact_distribution(&lambda, m);
            let counts = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = trial_rng(99, t);
                    restrict_to(&lambda, m, &mut rng).unwrap()
                })
                .fold(HashMap::new, |mut acc: HashMap<Partition, u64>, mu| {
                    *acc.entry(mu).or_insert(0) += 1;
                    acc
                })
                .reduce(HashMap::new, |mut a, b| {
                    for (k, v) in b {
                        *a.entry(k).or_insert(0) += v;
                    }
                    a
                });
            for (mu, c) in &counts {
                assert!(exact.contains_key(mu), "{lambda} -> impossible {mu}");
                let pr = exact[mu].to_f64().unwrap();
                let sigma = (trials as f64 * pr * (1.0 - pr)).sqrt();
                let diff = (*c as f64 - trials as f64 * pr).abs();
                assert!(diff <= 3.0 * sigma.max(1.0), "{lambda}->{mu}: {c} vs {pr}");
            }
        }
    }

    #[test]
    fn experiment_without_removal_is_exact() {
        let l = p(&[3, 1]).dilate(8).unwrap();
        let r = scaling_experiment(&l, l.size(), 2, 3, 5).unwrap();
        assert_eq!(r.predicted, r.exact_mean);
        assert_eq!(r.predicted, "2048");
        assert_eq!(r.stderr, 0.0);
        assert_eq!(r.z_score(), 0.0);
    }

    #[test]
    fn single_row_shows_finite_size_gap() {
        let l = p(&[20]);
        let r = scaling_experiment(&l, 10, 2, 4, 1).unwrap();
        // R3((m)) = m(m-1) against (m/n)^2 n(n-1)
        assert_eq!(r.exact_mean, "90");
        assert_eq!(r.predicted, "95");
        assert_eq!(r.stderr, 0.0);
    }

    #[test]
    fn reports_are_reproducible() {
        let l = p(&[3, 1]).dilate(3).unwrap();
        let a = scaling_experiment(&l, 18, 3, 50, 42).unwrap();
        let b = scaling_experiment(&l, 18, 3, 50, 42).unwrap();
        assert_eq!(a, b);
        let c = scaling_experiment(&l, 18, 3, 50, 43).unwrap();
        assert_ne!(a.exact_mean, c.exact_mean);
    }

    #[test]
    fn parameter_checks() {
        let l = p(&[3, 1]);
        assert!(scaling_experiment(&l, 0, 2, 10, 0).is_err());
        assert!(scaling_experiment(&l, 5, 2, 10, 0).is_err());
        assert!(scaling_experiment(&l, 2, 0, 10, 0).is_err());
        assert!(scaling_experiment(&l, 2, 2, 0, 0).is_err());
    }
}
