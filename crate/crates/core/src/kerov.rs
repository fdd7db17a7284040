//! Kerov polynomials: normalized characters as polynomials in free cumulants.
//!
//! Coefficients are extracted by evaluating the character and every candidate
//! monomial on a set of diagrams and solving the resulting linear system
//! exactly. The solution is accepted only if the system has full column rank
//! and the polynomial reproduces the character on held-out diagrams.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::characters::{normalized_character, CycleArgument};
use crate::cumulants::free_cumulants;
use crate::error::{Error, Result};
use crate::linalg::solve_exact;
use crate::partition::{partitions_of, Partition};
use crate::poly::{monomials_up_to, Monomial, RPolynomial};

/// Default bound on `k` (or on `Σ cycles` for several cycles).
pub const DEFAULT_MAX_K: usize = 7;

/// Ceiling for the configurable bound; at 10 the largest evaluation diagrams
/// have 14 boxes and the solve takes seconds.
pub const HARD_MAX_K: usize = 10;

/// How many extra diagram sizes may be appended when the system is rank deficient.
const MAX_ENLARGEMENTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KerovConfig {
    pub max_k: usize,
}

impl Default for KerovConfig {
    fn default() -> Self {
        KerovConfig {
            max_k: DEFAULT_MAX_K,
        }
    }
}

impl KerovConfig {
    fn check(&self, what: &'static str, k: usize) -> Result<()> {
        let max = self.max_k.min(HARD_MAX_K);
        if k == 0 || k > max {
            return Err(Error::OutOfRange {
                what,
                value: k as i64,
                min: 1,
                max: max as i64,
            });
        }
        Ok(())
    }
}

/// Substitutes `R_k(λ)` into `p`.
pub fn evaluate(p: &RPolynomial, lambda: &Partition) -> BigRational {
    let r = free_cumulants(lambda, p.max_index().max(1));
    p.evaluate(&r)
}

/// Monomials of weight at most `max_weight` with weight of the same parity.
pub fn candidate_basis(max_weight: usize) -> Vec<Monomial> {
    monomials_up_to(max_weight)
        .into_iter()
        .filter(|m| m.weight() % 2 == max_weight % 2)
        .collect()
}

/// Solves for the coefficients of `basis` that reproduce `target` on `evaluation`.
pub fn fit_on<F>(target: &F, basis: &[Monomial], evaluation: &[Partition]) -> Result<RPolynomial>
where
    F: Fn(&Partition) -> BigRational + Sync,
{
    let max_index = basis
        .iter()
        .filter_map(|m| m.indices().first().copied())
        .max()
        .unwrap_or(1);
    let rows: Vec<(Vec<BigRational>, BigRational)> = evaluation
        .par_iter()
        .map(|lambda| {
            let r = free_cumulants(lambda, max_index);
            let row = basis.iter().map(|m| m.evaluate(&r)).collect();
            (row, target(lambda))
        })
        .collect();
    let (a, b): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let coefficients = solve_exact(&a, &b)?;
    Ok(RPolynomial::from_terms(
        basis.iter().cloned().zip(coefficients),
    ))
}

/// Fits `target` on diagrams of sizes `first_size ..= first_size + 3`, adding
/// larger sizes while the system is rank deficient, then checks the result on
/// every smaller diagram and on the next size up.
fn fit_with_holdout<F>(target: &F, basis: &[Monomial], first_size: usize) -> Result<RPolynomial>
where
    F: Fn(&Partition) -> BigRational + Sync,
{
    let mut last = first_size + 3;
    let mut evaluation: Vec<Partition> = (first_size..=last).flat_map(partitions_of).collect();
    let mut enlargements = 0;
    let poly = loop {
        match fit_on(target, basis, &evaluation) {
            Ok(p) => break p,
            Err(Error::RankDeficient { .. }) if enlargements < MAX_ENLARGEMENTS => {
                last += 1;
                enlargements += 1;
                evaluation.extend(partitions_of(last));
            }
            Err(e) => return Err(e),
        }
    };
    let held_out: Vec<Partition> = (0..first_size)
        .chain(std::iter::once(last + 1))
        .flat_map(partitions_of)
        .collect();
    if let Some(bad) = held_out
        .par_iter()
        .find_any(|lambda| evaluate(&poly, lambda) != target(lambda))
    {
        return Err(Error::Inconsistent(format!(
            "fitted polynomial {poly} disagrees with the character on held-out diagram ({bad})"
        )));
    }
    Ok(poly)
}

/// The Kerov polynomial of `Ch_k`.
pub fn kerov_polynomial(k: usize, config: &KerovConfig) -> Result<RPolynomial> {
    config.check("k", k)?;
    let arg = CycleArgument::single(k)?;
    let target = |lambda: &Partition| normalized_character(lambda, &arg);
    let poly = fit_with_holdout(&target, &candidate_basis(k + 1), k + 1)?;
    if !poly.has_integer_coefficients() {
        return Err(Error::Inconsistent(format!(
            "Kerov polynomial of Ch_{k} has a non-integer coefficient: {poly}"
        )));
    }
    Ok(poly)
}

/// The polynomial of `Ch_{k,l,…}`, the normalized character on several disjoint cycles.
pub fn multi_kerov_polynomial(arg: &CycleArgument, config: &KerovConfig) -> Result<RPolynomial> {
    config.check("total cycle length", arg.total())?;
    let max_weight = arg.total() + arg.cycles().len();
    let target = |lambda: &Partition| normalized_character(lambda, arg);
    fit_with_holdout(&target, &candidate_basis(max_weight), arg.total() + 1)
}

/// Set partitions of `{0, …, n-1}` as lists of blocks.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// The cumulant `k(Ch_{c₁}, …, Ch_{c_m})`: the Möbius inversion over set
/// partitions of the arguments, with `Ch` of a block being the character on
/// the union of its cycles. For two arguments this is `Ch_{k,l} - Ch_k Ch_l`.
pub fn cumulant_polynomial(args: &[usize], config: &KerovConfig) -> Result<RPolynomial> {
    if args.is_empty() {
        return Err(Error::Parse("cumulant of no arguments".into()));
    }
    let total = CycleArgument::new(args.to_vec())?;
    config.check("total cycle length", total.total())?;
    let mut cache: HashMap<CycleArgument, RPolynomial> = HashMap::new();
    let mut result = RPolynomial::zero();
    for partition in set_partitions(args.len()) {
        let blocks = partition.len();
        let mut term = RPolynomial::constant(BigRational::one());
        for block in &partition {
            let arg = CycleArgument::new(block.iter().map(|&i| args[i]).collect())?;
            let p = match cache.get(&arg) {
                Some(p) => p.clone(),
                None => {
                    let p = multi_kerov_polynomial(&arg, config)?;
                    cache.insert(arg, p.clone());
                    p
                }
            };
            term = &term * &p;
        }
        // (-1)^(b-1) (b-1)!
        let mut mobius = BigInt::from((1..blocks as u64).product::<u64>());
        if blocks % 2 == 0 {
            mobius = -mobius;
        }
        result = &result + &term.scale(&BigRational::from_integer(mobius));
    }
    Ok(result)
}
