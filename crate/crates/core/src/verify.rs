//! Cross-checks between the independent computation routes, as run by the
//! `verify` command.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::characters::{dimension, mn_character, normalized_character_k, ClassLabel};
use crate::cumulants::{free_cumulants, geometric_r3, geometric_r4};
use crate::error::Result;
use crate::kerov::{cumulant_polynomial, evaluate, kerov_polynomial, KerovConfig};
use crate::maps::{stanley_character, MapConfig};
use crate::partition::{partitions_up_to, Partition};
use crate::transport::kerov_polynomial_from_maps;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    fn max_size(self) -> usize {
        match self {
            Level::Quick => 6,
            Level::Full => 8,
        }
    }

    fn max_k(self) -> usize {
        match self {
            Level::Quick => 4,
            Level::Full => 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

fn run_check(
    name: &str,
    check: impl FnOnce() -> Result<std::result::Result<String, String>>,
) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = match check() {
        Ok(Ok(detail)) => (true, detail),
        Ok(Err(detail)) => (false, detail),
        Err(e) => (false, e.to_string()),
    };
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn first_mismatch<T, F>(items: impl IntoIterator<Item = T>, mut differs: F) -> Option<String>
where
    F: FnMut(&T) -> Option<String>,
{
    items.into_iter().find_map(|x| differs(&x))
}

/// Runs every cross-oracle check at the given level.
pub fn run(level: Level, maps: &MapConfig, kerov: &KerovConfig) -> Vec<CheckResult> {
    let diagrams: Vec<Partition> = partitions_up_to(level.max_size());
    let max_k = level.max_k();
    let mut out = Vec::new();

    out.push(run_check("hook formula = MN at identity", || {
        let bad = first_mismatch(&diagrams, |l| {
            let id = ClassLabel(Partition::from_unsorted(vec![1; l.size()]));
            let mn = mn_character(l, &id).ok()?;
            (mn != BigInt::from(dimension(l))).then(|| format!("({l})"))
        });
        Ok(bad.map_or_else(|| Ok(format!("{} diagrams", diagrams.len())), Err))
    }));

    out.push(run_check("MN = Stanley map formula", || {
        for l in &diagrams {
            for k in 1..=max_k {
                let mn = normalized_character_k(l, k);
                let st = stanley_character(l, k, maps)?;
                if mn != st {
                    return Ok(Err(format!("({l}) k={k}: {mn} vs {st}")));
                }
            }
        }
        Ok(Ok(format!("{} diagrams, k<={max_k}", diagrams.len())))
    }));

    out.push(run_check("MN = Kerov polynomial in R_k", || {
        for k in 1..=max_k {
            let p = kerov_polynomial(k, kerov)?;
            if let Some(bad) = first_mismatch(&diagrams, |l| {
                (evaluate(&p, l) != normalized_character_k(l, k)).then(|| format!("({l}) k={k}"))
            }) {
                return Ok(Err(bad));
            }
        }
        Ok(Ok(format!("k<={max_k}")))
    }));

    out.push(run_check("Kerov solve = transportation count", || {
        let top = max_k.min(5);
        for k in 1..=top {
            let solved = kerov_polynomial(k, kerov)?;
            let counted = kerov_polynomial_from_maps(k, maps)?;
            if solved != counted {
                return Ok(Err(format!("k={k}: {solved} vs {counted}")));
            }
        }
        Ok(Ok(format!("k<={top}")))
    }));

    out.push(run_check("Kerov positivity", || {
        for k in 1..=kerov.max_k.min(max_k + 1) {
            let p = kerov_polynomial(k, kerov)?;
            if !p.positivity_report().all_nonnegative_integers {
                return Ok(Err(format!("Ch_{k} = {p}")));
            }
        }
        Ok(Ok("all coefficients nonnegative integers".into()))
    }));

    out.push(run_check("R1 = 0, R2 = n, geometric R3/R4", || {
        let bad = first_mismatch(&diagrams, |l| {
            let r = free_cumulants(l, 4);
            let n = BigRational::from_integer(BigInt::from(l.size()));
            let ok = r.get(1) == &BigRational::from_integer(0.into())
                && r.get(2) == &n
                && r.get(3) == &geometric_r3(l)
                && r.get(4) == &geometric_r4(l);
            (!ok).then(|| format!("({l})"))
        });
        Ok(bad.map_or_else(|| Ok(format!("{} diagrams", diagrams.len())), Err))
    }));

    out.push(run_check("covariance degree drop", || {
        let pairs: &[(usize, usize)] = match level {
            Level::Quick => &[(2, 2), (3, 2)],
            Level::Full => &[(2, 2), (3, 2), (3, 3), (4, 2)],
        };
        for &(k, l) in pairs {
            let c = cumulant_polynomial(&[k, l], kerov)?;
            if c.graded_degree() >= k + l + 2 {
                return Ok(Err(format!("({k},{l}): {c}")));
            }
        }
        Ok(Ok(format!("{} pairs", pairs.len())))
    }));

    out
}
