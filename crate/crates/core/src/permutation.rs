//! Permutations of `{1, …, k}` in one-line form.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A permutation of `{1, …, k}`.
///
/// Stored as the image sequence; the cycle decomposition is derived on first
/// use and cached.
#[derive(Clone)]
pub struct Permutation {
    // 0-based images
    images: Vec<usize>,
    cycles: OnceLock<Vec<Vec<usize>>>,
}

impl Permutation {
    fn from_raw(images: Vec<usize>) -> Self {
        Permutation {
            images,
            cycles: OnceLock::new(),
        }
    }

    pub fn identity(k: usize) -> Self {
        Self::from_raw((0..k).collect())
    }

    /// The full cycle `(1, 2, …, k)`.
    pub fn full_cycle(k: usize) -> Self {
        Self::from_raw((0..k).map(|i| (i + 1) % k.max(1)).collect())
    }

    /// Builds from 1-based images: `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in images {
            if x == 0 || x > k || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={k}"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Self::from_raw(images.iter().map(|&x| x - 1).collect()))
    }

    /// Builds from disjoint cycles (1-based); omitted points are fixed.
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..k).collect();
        let mut seen = vec![false; k];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > k {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} outside 1..={k}"
                    )));
                }
                if seen[x - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} appears twice"
                    )));
                }
                seen[x - 1] = true;
                images[x - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Self::from_raw(images))
    }

    /// Parses cycle notation such as `"(1,6)(4,7,5)"`.
    ///
    /// The degree is `degree` when given, otherwise the largest point named.
    pub fn parse_cycles(s: &str, degree: Option<usize>) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::InvalidPermutation(format!("expected '(' in {s:?}")));
            };
            let Some(end) = body.find(')') else {
                return Err(Error::InvalidPermutation(format!(
                    "unclosed cycle in {s:?}"
                )));
            };
            let inner = body[..end].trim();
            if !inner.is_empty() {
                let cycle = inner
                    .split([',', ' '])
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|e| Error::InvalidPermutation(format!("{s:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cycle);
            }
            rest = body[end + 1..].trim_start();
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        let k = degree.unwrap_or(max);
        if max > k {
            return Err(Error::InvalidPermutation(format!(
                "point {max} exceeds degree {k}"
            )));
        }
        Self::from_cycles(k, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Self::from_raw(
            other.images.iter().map(|&x| self.images[x]).collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self::from_raw(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Disjoint cycles including fixed points, 1-based, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> &[Vec<usize>] {
        self.cycles.get_or_init(|| {
            let k = self.degree();
            let mut seen = vec![false; k];
            let mut out = Vec::new();
            for start in 0..k {
                if seen[start] {
                    continue;
                }
                let mut cycle = Vec::new();
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    cycle.push(x + 1);
                    x = self.images[x];
                }
                out.push(cycle);
            }
            out
        })
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// For each 1-based point, the index of the cycle of [`Self::cycles`]
    /// containing it.
    pub fn cycle_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.degree()];
        for (c, cycle) in self.cycles().iter().enumerate() {
            for &x in cycle {
                idx[x - 1] = c;
            }
        }
        idx
    }

    /// Cycle lengths sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation including fixed points, e.g. `(1,6)(2)(3)(4,7,5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("()");
        }
        for cycle in self.cycles() {
            let parts: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Every permutation of `{1, …, k}` in lexicographic order of image sequences.
pub fn all_permutations(k: usize) -> impl Iterator<Item = Permutation> {
    lex_permutations(Vec::new(), (0..k).collect())
}

/// The permutations with `σ(1) = first`, in lexicographic order. Together the
/// blocks for `first = 1..=k` cover [`all_permutations`] in the same order.
pub fn permutations_with_first(k: usize, first: usize) -> impl Iterator<Item = Permutation> {
    assert!(
        first >= 1 && first <= k,
        "first image {first} outside 1..={k}"
    );
    let rest = (0..k).filter(|&x| x != first - 1).collect();
    lex_permutations(vec![first - 1], rest)
}

fn lex_permutations(prefix: Vec<usize>, rest: Vec<usize>) -> impl Iterator<Item = Permutation> {
    let mut next: Option<Vec<usize>> = Some(rest);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut a = current.clone();
        // standard next-permutation step
        if let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) {
            let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
            a.swap(i - 1, j);
            a[i..].reverse();
            next = Some(a);
        }
        let mut images = prefix.clone();
        images.extend(current);
        Some(Permutation::from_raw(images))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(s: &str, k: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(k)).unwrap()
    }

    #[test]
    fn worked_torus_example_composes_to_full_cycle() {
        let s1 = cyc("(1,6)(2)(3)(4,7,5)", 7);
        let s2 = cyc("(1,2,3,5)(4,7,6)", 7);
        assert_eq!(s1.compose(&s2).unwrap(), Permutation::full_cycle(7));
        assert_eq!(s1.compose(&s2).unwrap().to_string(), "(1,2,3,4,5,6,7)");
    }

    #[test]
    fn identity_and_involution() {
        let s = cyc("(1,3)(2,4,5)", 5);
        assert_eq!(Permutation::identity(5).compose(&s).unwrap(), s);
        let t = cyc("(1,2)", 2);
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn degree_mismatch() {
        let err = Permutation::identity(3).compose(&Permutation::identity(4));
        assert_eq!(err, Err(Error::DegreeMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn parsing_and_display() {
        let s = Permutation::parse_cycles("(1,6)(4,7,5)", None).unwrap();
        assert_eq!(s.degree(), 7);
        assert_eq!(s.to_string(), "(1,6)(2)(3)(4,7,5)");
        assert_eq!(s.cycle_type(), vec![3, 2, 1, 1]);
        assert!(Permutation::parse_cycles("(1,2)(2,3)", None).is_err());
        assert!(Permutation::parse_cycles("(1,2", None).is_err());
        assert!(Permutation::parse_cycles("(1,9)", Some(4)).is_err());
        assert!(Permutation::from_images(&[1, 1]).is_err());
    }

    #[test]
    fn enumeration_is_complete() {
        let all: Vec<_> = all_permutations(4).collect();
        assert_eq!(all.len(), 24);
        let set: std::collections::HashSet<Vec<usize>> = all.iter().map(|p| p.images()).collect();
        assert_eq!(set.len(), 24);
        assert!(all[0].is_identity());
        assert_eq!(all_permutations(0).count(), 1);
        let blocks: Vec<_> = (1..=4)
            .flat_map(|f| permutations_with_first(4, f))
            .collect();
        assert_eq!(blocks, all);
    }

    fn perm(k: usize) -> impl Strategy<Value = Permutation> {
        Just((0..k).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(Permutation::from_raw)
    }

    proptest! {
        #[test]
        fn compose_is_associative((a, b, c) in (1usize..9).prop_flat_map(|k| (perm(k), perm(k), perm(k)))) {
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_cancels(a in (1usize..10).prop_flat_map(perm)) {
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
        }

        #[test]
        fn cycles_round_trip(a in (1usize..10).prop_flat_map(perm)) {
            let rebuilt = Permutation::from_cycles(a.degree(), a.cycles()).unwrap();
            prop_assert_eq!(&rebuilt, &a);
            let reparsed = Permutation::parse_cycles(&a.to_string(), Some(a.degree())).unwrap();
            prop_assert_eq!(reparsed, a);
        }
    }
}
