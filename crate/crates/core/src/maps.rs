//! Unicellular bipartite maps and the Stanley character formula.
//!
//! A map with `k` labeled edges is a pair `(σ₁, σ₂)` with `σ₁ ∘ σ₂ = (1,2,…,k)`.
//! White vertices are the cycles of `σ₁`, black vertices the cycles of `σ₂`,
//! and edge `i` joins the white and black cycles containing `i`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::permutation::{permutations_with_first, Permutation};

/// Default largest edge count accepted by [`enumerate_maps`] (8! = 40 320 maps).
pub const DEFAULT_MAX_EDGES: usize = 8;

/// Hard ceiling for the configurable bound; 11! maps is already minutes of work.
pub const HARD_MAX_EDGES: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapConfig {
    pub max_edges: usize,
}

impl Default for MapConfig {
    fn default() -> Self {
        MapConfig {
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

impl MapConfig {
    pub fn check(&self, k: usize) -> Result<()> {
        let max = self.max_edges.min(HARD_MAX_EDGES);
        if k == 0 || k > max {
            return Err(Error::OutOfRange {
                what: "edge count k",
                value: k as i64,
                min: 1,
                max: max as i64,
            });
        }
        Ok(())
    }
}

/// A unicellular bipartite map given by its permutation pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteMap {
    sigma_white: Permutation,
    sigma_black: Permutation,
}

impl BipartiteMap {
    /// Validates `σ₁ ∘ σ₂ = (1,2,…,k)`.
    pub fn new(sigma_white: Permutation, sigma_black: Permutation) -> Result<Self> {
        let k = sigma_white.degree();
        if k == 0 {
            return Err(Error::MalformedMap("a map needs at least one edge".into()));
        }
        if sigma_white.compose(&sigma_black)? != Permutation::full_cycle(k) {
            return Err(Error::MalformedMap(format!(
                "{sigma_white} ∘ {sigma_black} is not the full cycle of length {k}"
            )));
        }
        Ok(BipartiteMap {
            sigma_white,
            sigma_black,
        })
    }

    /// The map whose white permutation is `σ₁`; `σ₂ = σ₁⁻¹ ∘ (1,…,k)` is forced.
    pub fn from_white(sigma_white: Permutation) -> Result<Self> {
        let k = sigma_white.degree();
        let sigma_black = sigma_white.inverse().compose(&Permutation::full_cycle(k))?;
        Self::new(sigma_white, sigma_black)
    }

    pub fn edges(&self) -> usize {
        self.sigma_white.degree()
    }

    pub fn sigma_white(&self) -> &Permutation {
        &self.sigma_white
    }

    pub fn sigma_black(&self) -> &Permutation {
        &self.sigma_black
    }

    pub fn white_vertices(&self) -> &[Vec<usize>] {
        self.sigma_white.cycles()
    }

    pub fn black_vertices(&self) -> &[Vec<usize>] {
        self.sigma_black.cycles()
    }

    pub fn num_white(&self) -> usize {
        self.sigma_white.num_cycles()
    }

    pub fn num_black(&self) -> usize {
        self.sigma_black.num_cycles()
    }

    /// `(white index, black index)` for each edge `1..=k`, indices into
    /// [`Self::white_vertices`] and [`Self::black_vertices`].
    pub fn edge_endpoints(&self) -> Vec<(usize, usize)> {
        let w = self.sigma_white.cycle_index();
        let b = self.sigma_black.cycle_index();
        w.into_iter().zip(b).collect()
    }

    /// `(k + 1 - #white - #black) / 2`.
    pub fn genus(&self) -> Result<usize> {
        let twice = (self.edges() + 1) as i64 - (self.num_white() + self.num_black()) as i64;
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::MalformedMap(format!(
                "Euler characteristic gives genus {twice}/2"
            )));
        }
        Ok((twice / 2) as usize)
    }

    /// Sign `(-1)^(k - #white)` of the map in the Stanley formula.
    pub fn stanley_sign(&self) -> i32 {
        if (self.edges() - self.num_white()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Every map with `k` edges, one per `σ₁ ∈ Sym(k)`, in lexicographic order of `σ₁`.
pub fn enumerate_maps(k: usize, config: &MapConfig) -> Result<impl Iterator<Item = BipartiteMap>> {
    config.check(k)?;
    Ok((1..=k).flat_map(move |first| maps_with_first(k, first)))
}

/// The maps with `σ₁(1) = first`; the blocks partition the full enumeration
/// and are the unit of parallel work.
pub fn maps_with_first(k: usize, first: usize) -> impl Iterator<Item = BipartiteMap> {
    permutations_with_first(k, first)
        .map(|s| BipartiteMap::from_white(s).expect("σ₂ is forced by σ₁"))
}

/// Runs `f` over every `k`-edge map in parallel and sums the results.
pub fn par_sum_over_maps<F>(k: usize, config: &MapConfig, f: F) -> Result<BigInt>
where
    F: Fn(&BipartiteMap) -> BigInt + Sync,
{
    config.check(k)?;
    Ok((1..=k)
        .into_par_iter()
        .map(|first| maps_with_first(k, first).map(|m| f(&m)).sum::<BigInt>())
        .reduce(BigInt::zero, |a, b| a + b))
}

/// Number of incidence-preserving embeddings `N_M(λ)`: white vertices go to
/// columns, black vertices to rows, and each edge to the box where they meet.
///
/// For a fixed assignment of rows to black vertices, a white vertex may use
/// any column up to the shortest row among its black neighbours. Rows of equal
/// length are interchangeable, so assignments are summed over distinct row
/// lengths weighted by their multiplicities.
pub fn embedding_count(map: &BipartiteMap, lambda: &Partition) -> BigUint {
    let mut classes: Vec<(usize, u64)> = Vec::new();
    for &r in lambda.rows() {
        match classes.last_mut() {
            Some((len, mult)) if *len == r => *mult += 1,
            _ => classes.push((r, 1)),
        }
    }
    if classes.is_empty() {
        return BigUint::zero();
    }
    let blacks = map.num_black();
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); map.num_white()];
    for (w, b) in map.edge_endpoints() {
        if !neighbours[w].contains(&b) {
            neighbours[w].push(b);
        }
    }
    let mut assignment = vec![0usize; blacks];
    let mut total = BigUint::zero();
    loop {
        let mut term = BigUint::one();
        for &c in &assignment {
            term *= classes[c].1;
        }
        for nb in &neighbours {
            let min = nb
                .iter()
                .map(|&b| classes[assignment[b]].0)
                .min()
                .unwrap_or(0);
            term *= min as u64;
        }
        total += term;
        // odometer
        let mut i = 0;
        loop {
            if i == blacks {
                return total;
            }
            assignment[i] += 1;
            if assignment[i] < classes.len() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// `Ch_k(λ) = Σ_M (-1)^(k - #white(M)) N_M(λ)` over all maps with `k` edges.
pub fn stanley_character(lambda: &Partition, k: usize, config: &MapConfig) -> Result<BigRational> {
    let total = par_sum_over_maps(k, config, |m| {
        let n = BigInt::from(embedding_count(m, lambda));
        if m.stanley_sign() > 0 {
            n
        } else {
            -n
        }
    })?;
    Ok(BigRational::from_integer(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::normalized_character_k;
    use crate::partition::partitions_up_to;

    fn p(rows: &[usize]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    fn cyc(s: &str, k: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(k)).unwrap()
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    /// Direct count over all column and row assignments.
    fn embedding_brute(map: &BipartiteMap, lambda: &Partition) -> u64 {
        let rows = lambda.length();
        let cols = lambda.row(1);
        let (nw, nb) = (map.num_white(), map.num_black());
        let edges = map.edge_endpoints();
        let mut count = 0;
        let total = (cols.pow(nw as u32)) * (rows.pow(nb as u32));
        for code in 0..total {
            let mut c = code;
            let mut col = vec![0; nw];
            let mut row = vec![0; nb];
            for x in col.iter_mut() {
                *x = c % cols + 1;
                c /= cols;
            }
            for x in row.iter_mut() {
                *x = c % rows + 1;
                c /= rows;
            }
            if edges.iter().all(|&(w, b)| col[w] <= lambda.row(row[b])) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn map_counts() {
        let cfg = MapConfig::default();
        assert_eq!(enumerate_maps(2, &cfg).unwrap().count(), 2);
        assert_eq!(enumerate_maps(5, &cfg).unwrap().count(), 120);
        let mut genera: Vec<usize> = enumerate_maps(3, &cfg)
            .unwrap()
            .map(|m| m.genus().unwrap())
            .collect();
        genera.sort_unstable();
        assert_eq!(genera, vec![0, 0, 0, 0, 0, 1]);
        assert!(enumerate_maps(9, &cfg).is_err());
        assert!(enumerate_maps(0, &cfg).is_err());
        assert!(enumerate_maps(9, &MapConfig { max_edges: 9 }).is_ok());
    }

    #[test]
    fn genus_examples() {
        let star = BipartiteMap::from_white(Permutation::identity(5)).unwrap();
        assert_eq!(star.genus().unwrap(), 0);
        let m = BipartiteMap::from_white(cyc("(1,3,2)", 3)).unwrap();
        assert_eq!(m.sigma_black(), &cyc("(1,3,2)", 3));
        assert_eq!(m.genus().unwrap(), 1);
        let torus =
            BipartiteMap::new(cyc("(1,6)(2)(3)(4,7,5)", 7), cyc("(1,2,3,5)(4,7,6)", 7)).unwrap();
        assert_eq!(torus.genus().unwrap(), 1);
    }

    #[test]
    fn malformed_pairs_are_rejected() {
        assert!(BipartiteMap::new(Permutation::identity(3), Permutation::identity(3)).is_err());
        assert!(BipartiteMap::new(Permutation::identity(2), Permutation::full_cycle(3)).is_err());
    }

    #[test]
    fn embedding_examples() {
        let l = p(&[3, 1]);
        let one_black = BipartiteMap::new(Permutation::identity(2), cyc("(1,2)", 2)).unwrap();
        assert_eq!(embedding_count(&one_black, &l), BigUint::from(10u32));
        let one_white = BipartiteMap::new(cyc("(1,2)", 2), Permutation::identity(2)).unwrap();
        assert_eq!(embedding_count(&one_white, &l), BigUint::from(6u32));
        assert_eq!(
            embedding_count(&one_white, &Partition::empty()),
            BigUint::zero()
        );
    }

    #[test]
    fn embedding_matches_brute_force() {
        let cfg = MapConfig::default();
        for k in 1..=4 {
            for m in enumerate_maps(k, &cfg).unwrap() {
                for lambda in [p(&[3, 1]), p(&[2, 2, 1]), p(&[4, 2, 2]), p(&[1, 1, 1])] {
                    assert_eq!(
                        embedding_count(&m, &lambda),
                        BigUint::from(embedding_brute(&m, &lambda)),
                        "{:?} {lambda}",
                        m.sigma_white()
                    );
                }
            }
        }
    }

    #[test]
    fn stanley_examples() {
        let cfg = MapConfig::default();
        let l = p(&[3, 1]);
        assert_eq!(stanley_character(&l, 2, &cfg).unwrap(), int(4));
        assert_eq!(stanley_character(&l, 1, &cfg).unwrap(), int(4));
        assert_eq!(stanley_character(&l, 4, &cfg).unwrap(), int(-8));
    }

    #[test]
    fn stanley_matches_murnaghan_nakayama() {
        let cfg = MapConfig::default();
        for lambda in partitions_up_to(8) {
            for k in 1..=6 {
                assert_eq!(
                    stanley_character(&lambda, k, &cfg).unwrap(),
                    normalized_character_k(&lambda, k),
                    "{lambda} k={k}"
                );
            }
        }
    }

    #[test]
    fn genus_bounds() {
        let cfg = MapConfig::default();
        for k in 1..=7 {
            for m in enumerate_maps(k, &cfg).unwrap() {
                assert!(m.genus().unwrap() <= (k - 1) / 2);
            }
        }
    }

    #[test]
    fn signed_count_on_single_box() {
        let cfg = MapConfig::default();
        for k in 1..=7 {
            let v = stanley_character(&p(&[1]), k, &cfg).unwrap();
            assert_eq!(v, int(if k == 1 { 1 } else { 0 }), "k={k}");
        }
    }
}
