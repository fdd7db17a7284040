//! Polynomials in the free cumulants `R₂, R₃, …` with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::cumulants::FreeCumulantSequence;
use crate::error::{Error, Result};

/// A product `R_{i₁} ⋯ R_{i_m}`, stored as the indices in decreasing order.
///
/// Monomials are ordered by decreasing weight, then by decreasing index list,
/// which is the order terms are rendered in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable_by(|a, b| b.cmp(a));
        Monomial(indices)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Graded weight `Σ iⱼ`.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial::new(v)
    }

    pub fn evaluate(&self, r: &FreeCumulantSequence) -> BigRational {
        self.0.iter().map(|&i| r.get(i).clone()).product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .weight()
            .cmp(&self.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// `R2^2*R5`; factors in increasing index order. The empty monomial is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut factors: Vec<(usize, usize)> = Vec::new();
        for &i in self.0.iter().rev() {
            match factors.last_mut() {
                Some((j, e)) if *j == i => *e += 1,
                _ => factors.push((i, 1)),
            }
        }
        let parts: Vec<String> = factors
            .into_iter()
            .map(|(i, e)| {
                if e == 1 {
                    format!("R{i}")
                } else {
                    format!("R{i}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// All monomials in `R₂, R₃, …` with weight at most `max_weight`.
pub fn monomials_up_to(max_weight: usize) -> Vec<Monomial> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        out.push(Monomial(prefix.clone()));
        for part in (2..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_weight, max_weight, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A polynomial in the free cumulants. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl RPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    /// The variable `R_i`.
    pub fn var(i: usize) -> Self {
        Self::from_terms([(Monomial::new(vec![i]), BigRational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Self {
        let mut p = RPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// Terms in rendering order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &BigRational) -> RPolynomial {
        RPolynomial::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    /// Largest monomial weight; 0 for the zero polynomial.
    pub fn graded_degree(&self) -> usize {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// Largest variable index used, 0 if none.
    pub fn max_index(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|m| m.indices().first().copied())
            .max()
            .unwrap_or(0)
    }

    /// Substitutes the given free cumulants, which must reach [`Self::max_index`].
    pub fn evaluate(&self, r: &FreeCumulantSequence) -> BigRational {
        self.terms.iter().map(|(m, c)| c * m.evaluate(r)).sum()
    }

    pub fn positivity_report(&self) -> PositivityReport {
        let offending: Vec<(Monomial, BigRational)> = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_integer() || c.is_negative())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        PositivityReport {
            all_nonnegative_integers: offending.is_empty(),
            offending,
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// `[{"monomial": [4, 2], "coefficient": "5"}, …]` in rendering order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| json!({ "monomial": m.indices(), "coefficient": c.to_string() }))
                .collect(),
        )
    }
}

/// Result of checking that every coefficient is a nonnegative integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub all_nonnegative_integers: bool,
    pub offending: Vec<(Monomial, BigRational)>,
}

impl Add for &RPolynomial {
    type Output = RPolynomial;

    fn add(self, rhs: &RPolynomial) -> RPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RPolynomial {
    type Output = RPolynomial;

    fn sub(self, rhs: &RPolynomial) -> RPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &RPolynomial {
    type Output = RPolynomial;

    fn neg(self) -> RPolynomial {
        RPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &RPolynomial {
    type Output = RPolynomial;

    fn mul(self, rhs: &RPolynomial) -> RPolynomial {
        let mut out = RPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for RPolynomial {
    /// Canonical text form, e.g. `R6 + 15*R4 + 5*R2^2 + 8*R2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else if magnitude.is_integer() {
                write!(f, "{magnitude}*{m}")?;
            } else {
                write!(f, "({magnitude})*{m}")?;
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |_| Error::Parse(format!("bad coefficient {s:?}"));
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().map_err(bad)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n.trim().parse().map_err(bad)?, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(bad)?)),
    }
}

impl FromStr for RPolynomial {
    type Err = Error;

    /// Parses the canonical text form; whitespace between a coefficient and
    /// its monomial may stand in for `*`.
    fn from_str(s: &str) -> Result<Self> {
        let mut normalized = String::new();
        for ch in s.chars() {
            match ch {
                '+' => normalized.push_str(" +"),
                '-' => normalized.push_str(" -"),
                c => normalized.push(c),
            }
        }
        let mut out = RPolynomial::zero();
        let mut sign = BigRational::one();
        let mut pending: Vec<String> = Vec::new();
        let flush =
            |tokens: &mut Vec<String>, sign: &BigRational, out: &mut RPolynomial| -> Result<()> {
                if tokens.is_empty() {
                    return Ok(());
                }
                let mut coeff = sign.clone();
                let mut indices = Vec::new();
                for t in tokens
                    .drain(..)
                    .flat_map(|t| t.split('*').map(str::to_string).collect::<Vec<_>>())
                {
                    let t = t.trim();
                    if t.is_empty() {
                        continue;
                    }
                    if let Some(var) = t.strip_prefix('R') {
                        let (i, e) = match var.split_once('^') {
                            Some((i, e)) => (i, e),
                            None => (var, "1"),
                        };
                        let bad = |_| Error::Parse(format!("bad factor {t:?}"));
                        let i: usize = i.parse().map_err(bad)?;
                        let e: usize = e.parse().map_err(bad)?;
                        indices.extend(std::iter::repeat_n(i, e));
                    } else {
                        coeff *= parse_rational(t)?;
                    }
                }
                out.add_term(Monomial::new(indices), coeff);
                Ok(())
            };
        for tok in normalized.split_whitespace() {
            if tok == "+" || tok == "-" {
                flush(&mut pending, &sign, &mut out)?;
                sign = if tok == "-" {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
            } else if let Some(rest) = tok.strip_prefix('+').or_else(|| tok.strip_prefix('-')) {
                flush(&mut pending, &sign, &mut out)?;
                sign = if tok.starts_with('-') {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                pending.push(rest.to_string());
            } else {
                pending.push(tok.to_string());
            }
        }
        flush(&mut pending, &sign, &mut out)?;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(s: &str) -> RPolynomial {
        s.parse().unwrap()
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn rendering_order() {
        let p = poly("8*R2 + 5*R2^2 + R6 + 15*R4");
        assert_eq!(p.to_string(), "R6 + 15*R4 + 5*R2^2 + 8*R2");
        let q = poly("R3 R4 - 5 R2 R3 - 6 R5 - 18 R3");
        assert_eq!(q.to_string(), "R3*R4 - 6*R5 - 5*R2*R3 - 18*R3");
        assert_eq!(RPolynomial::zero().to_string(), "0");
        assert_eq!(poly("-R3 + 1/2").to_string(), "-R3 + 1/2");
        assert_eq!(poly("(3/2)*R2").to_string(), "(3/2)*R2");
    }

    #[test]
    fn degree_and_positivity() {
        let ch5 = poly("R6 + 15*R4 + 5*R2^2 + 8*R2");
        assert_eq!(ch5.graded_degree(), 6);
        assert!(ch5.positivity_report().all_nonnegative_integers);
        assert_eq!(RPolynomial::zero().graded_degree(), 0);
        let ch32 = poly("R3*R4 - 5*R2*R3 - 6*R5 - 18*R3");
        let report = ch32.positivity_report();
        assert!(!report.all_nonnegative_integers);
        assert_eq!(report.offending.len(), 3);
        assert!(!poly("1/2*R2").positivity_report().all_nonnegative_integers);
    }

    #[test]
    fn arithmetic() {
        let a = poly("R4 + R2");
        let b = poly("R3");
        assert_eq!((&a * &b).to_string(), "R3*R4 + R2*R3");
        assert!((&a - &a).is_zero());
        assert_eq!((&a + &b).to_string(), "R4 + R3 + R2");
        assert_eq!(a.scale(&int(-2)).to_string(), "-2*R4 - 2*R2");
    }

    #[test]
    fn evaluation() {
        let r = FreeCumulantSequence {
            values: [0, 4, 4, -4, -28, -52].iter().map(|&v| int(v)).collect(),
        };
        assert_eq!(poly("R6 + 15*R4 + 5*R2^2 + 8*R2").evaluate(&r), int(0));
        assert_eq!(poly("R3").evaluate(&r), int(4));
        assert_eq!(RPolynomial::zero().evaluate(&r), int(0));
    }

    #[test]
    fn json_form() {
        let v = poly("R6 + (3/2)*R2^2").to_json();
        assert_eq!(
            v,
            json!([
                {"monomial": [6], "coefficient": "1"},
                {"monomial": [2, 2], "coefficient": "3/2"}
            ])
        );
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_up_to(6);
        // partitions of 0..=6 into parts >= 2: 1+0+1+1+2+2+4
        assert_eq!(m.len(), 11);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(m[0], Monomial::new(vec![6]));
        assert!(m.last().unwrap().is_one());
    }

    fn arb_poly() -> impl Strategy<Value = RPolynomial> {
        prop::collection::vec(
            (prop::collection::vec(2usize..7, 0..4), -20i64..20, 1i64..5),
            0..6,
        )
        .prop_map(|terms| {
            RPolynomial::from_terms(
                terms
                    .into_iter()
                    .map(|(idx, n, d)| (Monomial::new(idx), BigRational::new(n.into(), d.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn text_form_round_trips(p in arb_poly()) {
            prop_assert_eq!(p.to_string().parse::<RPolynomial>().unwrap(), p);
        }

        #[test]
        fn product_evaluates_to_product(a in arb_poly(), b in arb_poly(), r in prop::collection::vec(-9i64..9, 8)) {
            let r = FreeCumulantSequence { values: r.into_iter().map(int).collect() };
            prop_assert_eq!((&a * &b).evaluate(&r), a.evaluate(&r) * b.evaluate(&r));
        }
    }
}
