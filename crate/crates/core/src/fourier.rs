//! Exact integer Walsh-Hadamard transform of set indicators and the
//! Fourier-weight queries built on it.
//!
//! For `f = 1_A` the transform is kept unnormalized: `F(S) = Σ_x f(x) χ_S(x)
//! = 2^n · f̂(S)` is an integer, so every combinatorial quantity in this
//! module is exact. Logarithms and entropies enter only in other modules.

use num_traits::ToPrimitive;

use crate::cube::{CharMask, CubeDim, PointSet};
use crate::gf2::Gf2Basis;
use crate::{Error, Rational, Result};

/// All `2^n` unnormalized Fourier coefficients `F(S) = 2^n · f̂(S)` of a set
/// indicator, indexed by character mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    n: CubeDim,
    coeffs: Vec<i64>,
    set_size: u64,
}

/// Computes the spectrum of `1_A` by an in-place O(n·2^n) butterfly.
///
/// `coeffs[mask] = Σ_{idx ∈ A} (-1)^popcount(mask & idx)`, exactly.
pub fn wht(set: &PointSet) -> Spectrum {
    let points = set.n().points() as usize;
    let mut coeffs = vec![0i64; points];
    for idx in set.iter() {
        coeffs[idx as usize] = 1;
    }
    let mut half = 1usize;
    while half < points {
        let step = half << 1;
        let mut block = 0;
        while block < points {
            for k in block..block + half {
                let a = coeffs[k];
                let b = coeffs[k + half];
                coeffs[k] = a + b;
                coeffs[k + half] = a - b;
            }
            block += step;
        }
        half = step;
    }
    let spectrum = Spectrum {
        n: set.n(),
        coeffs,
        set_size: set.size(),
    };
    debug_assert_eq!(spectrum.coeffs[0], set.size() as i64);
    debug_assert!(spectrum
        .coeffs
        .iter()
        .all(|&c| c.unsigned_abs() <= set.size()));
    debug_assert_eq!(
        spectrum.coeffs.iter().map(|&c| (c as i128) * (c as i128)).sum::<i128>(),
        set.n().points() as i128 * set.size() as i128,
    );
    spectrum
}

impl Spectrum {
    pub fn n(&self) -> CubeDim {
        self.n
    }

    pub fn set_size(&self) -> u64 {
        self.set_size
    }

    /// The raw integer coefficients, indexed by mask.
    pub fn raw(&self) -> &[i64] {
        &self.coeffs
    }

    /// `F(S)` as an integer.
    pub fn raw_coefficient(&self, s: &CharMask) -> i64 {
        assert_eq!(s.n(), self.n, "mixed cube dimensions");
        self.coeffs[s.mask() as usize]
    }

    /// `f̂(S) = F(S) / 2^n` as an exact rational.
    pub fn coefficient(&self, s: &CharMask) -> Rational {
        Rational::new(self.raw_coefficient(s) as i128, self.n.points() as i128)
    }

    /// Level-k Fourier weight `Σ_{|S|=k} f̂(S)²`, exact.
    pub fn level_weight(&self, k: u32) -> Rational {
        assert!(k <= self.n.get(), "level {k} out of range for n = {}", self.n);
        let sum: i128 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(mask, _)| mask.count_ones() == k)
            .map(|(_, &c)| (c as i128) * (c as i128))
            .sum();
        Rational::new(sum, sq_points(self.n))
    }

    /// Fourier weight `Σ_{S ∈ B} f̂(S)²` of a basis, exact.
    pub fn basis_weight(&self, basis: &Gf2Basis) -> Rational {
        assert_eq!(basis.n(), self.n, "mixed cube dimensions");
        let sum: i128 = basis
            .vectors()
            .iter()
            .map(|s| {
                let c = self.coeffs[s.mask() as usize] as i128;
                c * c
            })
            .sum();
        Rational::new(sum, sq_points(self.n))
    }

    /// Per-coordinate marginals of the uniform distribution on A, exact.
    ///
    /// Fails on the empty set, whose marginals are undefined.
    pub fn marginals(&self) -> Result<MarginalProfile> {
        if self.set_size == 0 {
            return Err(Error::EmptySet);
        }
        let size = self.set_size as i128;
        let mut p_plus = Vec::with_capacity(self.n.get() as usize);
        let mut delta = Vec::with_capacity(self.n.get() as usize);
        for i in 0..self.n.get() {
            let f = self.coeffs[1usize << i] as i128;
            p_plus.push(Rational::new(size + f, 2 * size));
            delta.push(Rational::new(size - f.abs(), 2 * size));
        }
        Ok(MarginalProfile {
            n: self.n,
            p_plus,
            delta,
        })
    }
}

fn sq_points(n: CubeDim) -> i128 {
    1i128 << (2 * n.get())
}

/// Exact marginals of the uniform distribution on a nonempty set:
/// `p_i^+ = (|A| + F({i})) / (2|A|)` is the probability that `x_i = +1`, and
/// `δ_i = (|A| - |F({i})|) / (2|A|) = min(p_i^+, 1 - p_i^+)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalProfile {
    n: CubeDim,
    p_plus: Vec<Rational>,
    delta: Vec<Rational>,
}

impl MarginalProfile {
    pub fn n(&self) -> CubeDim {
        self.n
    }

    pub fn p_plus(&self) -> &[Rational] {
        &self.p_plus
    }

    pub fn delta(&self) -> &[Rational] {
        &self.delta
    }

    pub fn p_plus_f64(&self, i: usize) -> f64 {
        self.p_plus[i].to_f64().expect("marginal fits in f64")
    }

    pub fn delta_f64(&self, i: usize) -> f64 {
        self.delta[i].to_f64().expect("marginal fits in f64")
    }
}

/// Change of coordinates by an invertible GF(2) map: the new coordinates are
/// the parities `y_j = ∏_{i ∈ B_j} x_i`, so `f̂_{A'}(e_j) = f̂_A(B_j)` and the
/// whole spectrum is permuted. `|A'| = |A|` since the map is a bijection.
pub fn linear_substitution(set: &PointSet, map: &Gf2Basis) -> Result<PointSet> {
    if map.n() != set.n() {
        return Err(Error::MixedDimensions {
            left: set.n().get(),
            right: map.n().get(),
        });
    }
    let rows = map.vectors();
    let indices: Vec<u64> = set
        .iter()
        .map(|idx| {
            rows.iter().enumerate().fold(0u64, |acc, (j, row)| {
                acc | (((row.mask() & idx).count_ones() as u64 & 1) << j)
            })
        })
        .collect();
    let image = PointSet::from_indices(set.n(), &indices)?;
    debug_assert_eq!(image.size(), set.size());
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Family;

    fn dim(n: u32) -> CubeDim {
        CubeDim::new(n).unwrap()
    }

    fn mask(n: u32, m: u64) -> CharMask {
        CharMask::new(dim(n), m).unwrap()
    }

    /// Independent oracle: the defining double sum, O(4^n).
    fn naive_transform(set: &PointSet) -> Vec<i64> {
        let points = set.n().points();
        (0..points)
            .map(|m| {
                let chi = CharMask::new(set.n(), m).unwrap();
                set.iter().map(|idx| chi.eval(idx)).sum()
            })
            .collect()
    }

    #[test]
    fn wht_trivial_examples() {
        let full = PointSet::full(dim(2));
        assert_eq!(wht(&full).raw(), &[4, 0, 0, 0]);

        let origin = PointSet::from_indices(dim(2), &[0]).unwrap();
        assert_eq!(wht(&origin).raw(), &[1, 1, 1, 1]);

        let empty = PointSet::empty(dim(3));
        assert_eq!(wht(&empty).raw(), &[0; 8]);
    }

    #[test]
    fn wht_dictator_matches_oracle() {
        let set = Family::Dictator { coord: 1 }.build(dim(3)).unwrap();
        let sp = wht(&set);
        assert_eq!(sp.raw(), naive_transform(&set).as_slice());
        assert_eq!(sp.raw()[0], 4);
        assert_eq!(sp.raw()[0b001], 4);
        for m in 2..8 {
            assert_eq!(sp.raw()[m], 0);
        }
    }

    #[test]
    fn wht_matches_oracle_on_random_sets() {
        for n_raw in 1..=6 {
            let n = dim(n_raw);
            for seed in 0..20 {
                let m = (seed * 7919 + 13) % (n.points() + 1);
                let set = Family::Random { size: m, seed }.build(n).unwrap();
                assert_eq!(wht(&set).raw(), naive_transform(&set).as_slice());
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        let dictator = Family::Dictator { coord: 1 }.build(dim(3)).unwrap();
        let sp = wht(&dictator);
        assert_eq!(sp.coefficient(&mask(3, 0b001)), Rational::new(1, 2));
        assert_eq!(sp.coefficient(&mask(3, 0)), dictator.density());

        let full = wht(&PointSet::full(dim(3)));
        assert_eq!(full.coefficient(&mask(3, 0b001)), Rational::new(0, 1));
    }

    #[test]
    fn level_weight_examples() {
        let dictator = Family::Dictator { coord: 1 }.build(dim(3)).unwrap();
        let sp = wht(&dictator);
        assert_eq!(sp.level_weight(1), Rational::new(1, 4));
        assert_eq!(sp.level_weight(0), dictator.density() * dictator.density());

        // Parity set {(+,+),(-,-)} at n = 2: F({1,2}) = 2, so level 2 holds
        // 2²/4² = 1/4.
        let parity = PointSet::from_indices(dim(2), &[0b00, 0b11]).unwrap();
        let sp = wht(&parity);
        assert_eq!(sp.raw()[0b11], 2);
        assert_eq!(sp.level_weight(2), Rational::new(1, 4));
    }

    #[test]
    fn basis_weight_examples() {
        let dictator = Family::Dictator { coord: 1 }.build(dim(2)).unwrap();
        let sp = wht(&dictator);
        let standard = Gf2Basis::standard(dim(2));
        assert_eq!(sp.basis_weight(&standard), sp.level_weight(1));

        let skew = Gf2Basis::new(vec![mask(2, 0b01), mask(2, 0b11)]).unwrap();
        assert_eq!(sp.basis_weight(&skew), Rational::new(1, 4));

        let full = wht(&PointSet::full(dim(2)));
        assert_eq!(full.basis_weight(&skew), Rational::new(0, 1));
    }

    #[test]
    fn marginals_examples() {
        let weight1 = Family::Weight1.build(dim(4)).unwrap();
        let mp = wht(&weight1).marginals().unwrap();
        for i in 0..4 {
            assert_eq!(mp.p_plus()[i], Rational::new(1, 4));
            assert_eq!(mp.delta()[i], Rational::new(1, 4));
        }

        let dictator = Family::Dictator { coord: 1 }.build(dim(3)).unwrap();
        let mp = wht(&dictator).marginals().unwrap();
        assert_eq!(mp.p_plus()[0], Rational::new(1, 1));
        assert_eq!(mp.delta()[0], Rational::new(0, 1));
        assert_eq!(mp.p_plus()[1], Rational::new(1, 2));
        assert_eq!(mp.p_plus()[2], Rational::new(1, 2));

        let full = wht(&PointSet::full(dim(3)));
        let mp = full.marginals().unwrap();
        assert!(mp.p_plus().iter().all(|p| *p == Rational::new(1, 2)));

        let empty = wht(&PointSet::empty(dim(3)));
        assert_eq!(empty.marginals().unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn marginals_delta_is_minority_probability() {
        for seed in 0..10 {
            let set = Family::Random { size: 5, seed }.build(dim(4)).unwrap();
            let mp = wht(&set).marginals().unwrap();
            for i in 0..4 {
                let p = mp.p_plus()[i];
                let q = Rational::new(1, 1) - p;
                assert_eq!(mp.delta()[i], p.min(q));
                // Cross-check p_i^+ by direct counting.
                let plus = set.iter().filter(|idx| idx >> i & 1 == 0).count();
                assert_eq!(p, Rational::new(plus as i128, set.size() as i128));
            }
        }
    }

    #[test]
    fn linear_substitution_identity() {
        let set = Family::Random { size: 9, seed: 3 }.build(dim(4)).unwrap();
        let id = Gf2Basis::standard(dim(4));
        assert_eq!(linear_substitution(&set, &id).unwrap(), set);
    }

    #[test]
    fn linear_substitution_parity_to_dictator() {
        // A = {(+,+),(-,-)}; mapping e_1 ↦ {1,2} turns it into a dictator.
        let parity = PointSet::from_indices(dim(2), &[0b00, 0b11]).unwrap();
        let map = Gf2Basis::new(vec![mask(2, 0b11), mask(2, 0b10)]).unwrap();
        let image = linear_substitution(&parity, &map).unwrap();
        let sp = wht(&image);
        assert_eq!(sp.coefficient(&mask(2, 0b01)), Rational::new(1, 2));
        assert_eq!(naive_transform(&image)[0b01], 2);
        assert_eq!(image.size(), parity.size());
    }

    #[test]
    fn linear_substitution_preserves_size_and_spectrum_multiset() {
        for seed in 0..20 {
            let n = dim(4);
            let set = Family::Random { size: (seed % 15) + 1, seed }.build(n).unwrap();
            let basis = crate::gf2::sample_weight_k_basis(n, 3, seed + 1000).unwrap();
            let image = linear_substitution(&set, &basis).unwrap();
            assert_eq!(image.size(), set.size());

            let mut before: Vec<i64> = wht(&set).raw().to_vec();
            let mut after: Vec<i64> = wht(&image).raw().to_vec();
            before.sort_unstable();
            after.sort_unstable();
            assert_eq!(before, after);
        }
    }

    #[test]
    fn parseval_exact() {
        for n_raw in 1..=5 {
            let n = dim(n_raw);
            for seed in 0..10 {
                let m = (seed * 31) % (n.points() + 1);
                let set = Family::Random { size: m, seed }.build(n).unwrap();
                let total: i128 = wht(&set)
                    .raw()
                    .iter()
                    .map(|&c| (c as i128) * (c as i128))
                    .sum();
                assert_eq!(total, n.points() as i128 * set.size() as i128);
            }
        }
    }
}
