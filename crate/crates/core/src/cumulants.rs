//! Free cumulants of Young diagrams.
//!
//! The transition measure of `λ` has atoms at the contents of the concave
//! corners; its free cumulants `R_k(λ)` are obtained from its moments by
//! inverting the non-crossing moment–cumulant relation. Everything here is
//! exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::partition::Partition;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// A finitely supported probability measure on the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMeasure {
    atoms: Vec<(i64, BigRational)>,
}

impl TransitionMeasure {
    /// Point mass at 0, the measure of the empty diagram.
    pub fn point_mass() -> Self {
        TransitionMeasure {
            atoms: vec![(0, BigRational::one())],
        }
    }

    /// `(location, weight)` pairs with strictly increasing locations.
    pub fn atoms(&self) -> &[(i64, BigRational)] {
        &self.atoms
    }

    /// `M_k = Σ w · xᵏ` for `k = 1..=k_max`.
    pub fn moments(&self, k_max: usize) -> MomentSequence {
        let mut powers: Vec<BigRational> = self.atoms.iter().map(|(_, w)| w.clone()).collect();
        let mut values = Vec::with_capacity(k_max);
        for _ in 0..k_max {
            for (p, (x, _)) in powers.iter_mut().zip(&self.atoms) {
                *p *= int(*x);
            }
            values.push(powers.iter().sum());
        }
        MomentSequence { values }
    }
}

/// Moments `M₁, M₂, …` of a measure; `M₀ = 1` is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence {
    pub values: Vec<BigRational>,
}

/// Free cumulants `R₁, R₂, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCumulantSequence {
    pub values: Vec<BigRational>,
}

impl MomentSequence {
    /// `M_k`, 1-based; `M₀ = 1`.
    pub fn get(&self, k: usize) -> BigRational {
        if k == 0 {
            BigRational::one()
        } else {
            self.values[k - 1].clone()
        }
    }
}

impl FreeCumulantSequence {
    /// `R_k`, 1-based.
    pub fn get(&self, k: usize) -> &BigRational {
        &self.values[k - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Builds the transition measure of `λ`.
///
/// The weight of the minimum `xᵢ` is the residue at `xᵢ` of
/// `∏ⱼ (z - yⱼ) / ∏ᵢ (z - xᵢ)` where the `yⱼ` are the maxima.
pub fn transition_measure(lambda: &Partition) -> TransitionMeasure {
    let corners = lambda.corner_coordinates();
    let atoms: Vec<(i64, BigRational)> = corners
        .minima
        .iter()
        .map(|&x| {
            let num: BigInt = corners
                .maxima
                .iter()
                .map(|&y| BigInt::from(x - y))
                .product();
            let den: BigInt = corners
                .minima
                .iter()
                .filter(|&&x2| x2 != x)
                .map(|&x2| BigInt::from(x - x2))
                .product();
            (x, BigRational::new(num, den))
        })
        .collect();
    debug_assert!(atoms.iter().all(|(_, w)| w > &BigRational::zero()));
    debug_assert_eq!(
        atoms.iter().map(|(_, w)| w).sum::<BigRational>(),
        BigRational::one()
    );
    TransitionMeasure { atoms }
}

/// Coefficients `[z^j] M(z)^s` for `0 ≤ s ≤ max_power`, `0 ≤ j < m.len()`,
/// where `M(z) = Σ m[i] zⁱ`.
fn power_table(m: &[BigRational], max_power: usize) -> Vec<Vec<BigRational>> {
    let len = m.len();
    let mut table = Vec::with_capacity(max_power + 1);
    let mut current = vec![BigRational::zero(); len];
    if len > 0 {
        current[0] = BigRational::one();
    }
    table.push(current.clone());
    for _ in 0..max_power {
        let next: Vec<BigRational> = (0..len)
            .map(|j| (0..=j).map(|i| &m[i] * &current[j - i]).sum())
            .collect();
        table.push(next.clone());
        current = next;
    }
    table
}

/// Inverts `M_k = Σ_{s=1}^{k} R_s · Σ_{i₁+⋯+i_s = k-s} M_{i₁}⋯M_{i_s}`.
pub fn moments_to_free_cumulants(moments: &MomentSequence) -> FreeCumulantSequence {
    let k_max = moments.values.len();
    let m: Vec<BigRational> = (0..k_max).map(|i| moments.get(i)).collect();
    let table = power_table(&m, k_max);
    let mut r: Vec<BigRational> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let lower: BigRational = (1..k).map(|s| &r[s - 1] * &table[s][k - s]).sum();
        r.push(moments.get(k) - lower);
    }
    FreeCumulantSequence { values: r }
}

/// The forward relation: moments from free cumulants.
pub fn free_cumulants_to_moments(cumulants: &FreeCumulantSequence) -> MomentSequence {
    let k_max = cumulants.values.len();
    let mut m = vec![BigRational::one()];
    for k in 1..=k_max {
        let table = power_table(&m, k);
        let mk: BigRational = (1..=k).map(|s| cumulants.get(s) * &table[s][k - s]).sum();
        m.push(mk);
    }
    MomentSequence {
        values: m.split_off(1),
    }
}

/// `R₁(λ), …, R_{k_max}(λ)`.
pub fn free_cumulants(lambda: &Partition, k_max: usize) -> FreeCumulantSequence {
    moments_to_free_cumulants(&transition_measure(lambda).moments(k_max))
}

/// `2 ∬_λ (x - y) dx dy`, i.e. twice the sum of contents.
pub fn geometric_r3(lambda: &Partition) -> BigRational {
    int(2 * lambda.contents().iter().sum::<i64>())
}

/// Which correction term to subtract in [`geometric_r4_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R4Correction {
    /// `(3/2) n²`; agrees with the transition-measure value.
    SquaredSize,
    /// `(3/2) n`; only agrees when `n ≤ 1`.
    LinearSize,
}

/// `3 ∬_λ (x - y)² dx dy - (3/2) n²`.
pub fn geometric_r4(lambda: &Partition) -> BigRational {
    geometric_r4_with(lambda, R4Correction::SquaredSize)
}

pub fn geometric_r4_with(lambda: &Partition, correction: R4Correction) -> BigRational {
    // a unit box centred at content t contributes t² + 1/6
    let n = lambda.size() as i64;
    let integral: BigRational = lambda
        .contents()
        .iter()
        .map(|&t| int(t * t) + BigRational::new(1.into(), 6.into()))
        .sum();
    let subtracted = match correction {
        R4Correction::SquaredSize => BigRational::new((3 * n * n).into(), 2.into()),
        R4Correction::LinearSize => BigRational::new((3 * n).into(), 2.into()),
    };
    int(3) * integral - subtracted
}
