//! Irreducible characters of symmetric groups.
//!
//! [`mn_character`] evaluates `χ^λ(μ)` by the Murnaghan–Nakayama border-strip
//! recursion, [`dimension`] counts standard tableaux with the hook length
//! formula, and [`normalized_character`] gives `Ch_{k,l,…}(λ)`, the character
//! on a fixed product of disjoint cycles scaled by a falling factorial so
//! that it is defined for every diagram.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Cycle lengths of the permutation a normalized character is evaluated on.
///
/// Stored in decreasing order. Entries of 1 are allowed and behave as explicit
/// fixed points, so `Ch_{(1)}(λ) = |λ|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleArgument {
    cycles: Vec<usize>,
}

impl CycleArgument {
    pub fn new(mut cycles: Vec<usize>) -> Result<Self> {
        if cycles.is_empty() || cycles.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "cycle argument {cycles:?} must be nonempty with positive lengths"
            )));
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleArgument { cycles })
    }

    pub fn single(k: usize) -> Result<Self> {
        Self::new(vec![k])
    }

    pub fn cycles(&self) -> &[usize] {
        &self.cycles
    }

    /// Number of points moved (or named), `K = Σ cycles`.
    pub fn total(&self) -> usize {
        self.cycles.iter().sum()
    }
}

impl fmt::Display for CycleArgument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cycles.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for CycleArgument {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cycles)
    }
}

/// A conjugacy class of `Sym(n)`, labeled by its cycle type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassLabel(pub Partition);

impl ClassLabel {
    pub fn size(&self) -> usize {
        self.0.size()
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    /// Accepts parts in any order.
    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if t.is_empty() {
            return Ok(ClassLabel(Partition::empty()));
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{s:?} contains a zero part"
            )));
        }
        Ok(ClassLabel(Partition::from_unsorted(parts)))
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of standard Young tableaux of shape `λ`, via the hook length formula.
pub fn dimension(lambda: &Partition) -> BigUint {
    let hooks = lambda
        .boxes()
        .fold(BigUint::one(), |acc, b| acc * lambda.hook(b) as u64);
    factorial(lambda.size()) / hooks
}

/// `n (n-1) ⋯ (n-k+1)`; zero when `k > n`.
pub fn falling_factorial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    ((n - k + 1)..=n).fold(BigUint::one(), |acc, i| acc * i as u64)
}

/// First-column beta numbers `λᵢ + ℓ - i`, strictly decreasing.
fn beta_set(lambda: &Partition) -> Vec<usize> {
    let l = lambda.length();
    lambda
        .rows()
        .iter()
        .enumerate()
        .map(|(i, &r)| r + l - 1 - i)
        .collect()
}

fn from_beta_set(mut beta: Vec<usize>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let l = beta.len();
    Partition::from_unsorted(
        beta.iter()
            .enumerate()
            .map(|(i, &b)| b + i + 1 - l)
            .collect(),
    )
}

/// All ways to remove a border strip of length `r` from `λ`, with the sign
/// `(-1)^(height - 1)` of each.
pub fn border_strips(lambda: &Partition, r: usize) -> Vec<(Partition, i32)> {
    let beta = beta_set(lambda);
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let crossed = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        let mut moved = beta.clone();
        moved[i] = b - r;
        out.push((from_beta_set(moved), sign));
    }
    out
}

struct MnEvaluator<'a> {
    parts: &'a [usize],
    memo: HashMap<(Partition, usize), BigInt>,
}

impl MnEvaluator<'_> {
    fn eval(&mut self, lambda: &Partition, next: usize) -> BigInt {
        if next == self.parts.len() {
            return if lambda.is_empty() {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        // parts are sorted decreasingly: a trailing run of ones is the identity
        if self.parts[next] == 1 {
            return BigInt::from(dimension(lambda));
        }
        let key = (lambda.clone(), next);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (rest, sign) in border_strips(lambda, self.parts[next]) {
            let v = self.eval(&rest, next + 1);
            if sign > 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule, stripping the largest part first.
pub fn mn_character(lambda: &Partition, class: &ClassLabel) -> Result<BigInt> {
    if lambda.size() != class.size() {
        return Err(Error::SizeMismatch {
            lambda: lambda.size(),
            class: class.size(),
        });
    }
    let mut eval = MnEvaluator {
        parts: class.0.rows(),
        memo: HashMap::new(),
    };
    Ok(eval.eval(lambda, 0))
}

/// `Ch_arg(λ) = (n)_K · χ^λ(arg ∪ 1^{n-K}) / dim λ`, zero when `n < K`.
pub fn normalized_character(lambda: &Partition, arg: &CycleArgument) -> BigRational {
    let n = lambda.size();
    let total = arg.total();
    if n < total {
        return BigRational::zero();
    }
    let mut parts = arg.cycles().to_vec();
    parts.extend(std::iter::repeat_n(1, n - total));
    let class = ClassLabel(Partition::from_unsorted(parts));
    let chi = mn_character(lambda, &class).expect("class padded to |lambda|");
    let numerator = BigInt::from(falling_factorial(n, total)) * chi;
    let value = BigRational::new(numerator, BigInt::from(dimension(lambda)));
    assert!(
        value.is_integer(),
        "normalized character Ch_{arg}({lambda}) = {value} is not an integer"
    );
    value
}

/// `Ch_k(λ)` on a single `k`-cycle.
pub fn normalized_character_k(lambda: &Partition, k: usize) -> BigRational {
    normalized_character(lambda, &CycleArgument::single(k).expect("k >= 1"))
}
