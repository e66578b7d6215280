//! Linear algebra over `F_2^n` on character masks: rank, independence,
//! basis completion, and weight-k basis sampling.

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::cube::{CharMask, CubeDim};
use crate::{Error, Result};

/// Incremental XOR elimination basis keyed by leading bit.
#[derive(Default)]
struct XorBasis {
    rows: [u64; crate::cube::MAX_DIM as usize],
    rank: usize,
}

impl XorBasis {
    /// Absorbs `v`; returns true iff `v` was independent of the rows so far.
    fn insert(&mut self, mut v: u64) -> bool {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if self.rows[lead] == 0 {
                self.rows[lead] = v;
                self.rank += 1;
                return true;
            }
            v ^= self.rows[lead];
        }
        false
    }
}

fn common_dim(masks: &[CharMask]) -> Result<Option<CubeDim>> {
    let mut dim = None;
    for m in masks {
        match dim {
            None => dim = Some(m.n()),
            Some(d) if d == m.n() => {}
            Some(d) => {
                return Err(Error::MixedDimensions {
                    left: d.get(),
                    right: m.n().get(),
                })
            }
        }
    }
    Ok(dim)
}

/// GF(2) rank of a list of masks.
pub fn rank(masks: &[CharMask]) -> Result<usize> {
    common_dim(masks)?;
    let mut basis = XorBasis::default();
    for m in masks {
        basis.insert(m.mask());
    }
    Ok(basis.rank)
}

/// Maximal independent sublist, greedy in input order: a mask is kept iff it
/// increases the rank of the masks kept so far. Deterministic.
pub fn independent_subset(masks: &[CharMask]) -> Result<Vec<CharMask>> {
    common_dim(masks)?;
    let mut basis = XorBasis::default();
    let mut kept = Vec::new();
    for m in masks {
        if basis.insert(m.mask()) {
            kept.push(*m);
        }
    }
    Ok(kept)
}

/// An ordered basis of `F_2^n`: exactly n linearly independent masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Basis {
    n: CubeDim,
    vectors: Vec<CharMask>,
}

impl Gf2Basis {
    /// Validates that the masks form a basis (n of them, rank n).
    pub fn new(vectors: Vec<CharMask>) -> Result<Self> {
        let n = match common_dim(&vectors)? {
            Some(n) => n,
            None => return Err(Error::NotIndependent),
        };
        if vectors.len() != n.get() as usize || rank(&vectors)? != n.get() as usize {
            return Err(Error::NotABasis { n: n.get() });
        }
        Ok(Gf2Basis { n, vectors })
    }

    /// The standard basis `{e_1, …, e_n}`.
    pub fn standard(n: CubeDim) -> Self {
        let vectors = (0..n.get())
            .map(|i| CharMask::new(n, 1u64 << i).expect("standard vector in range"))
            .collect();
        Gf2Basis { n, vectors }
    }

    pub fn n(&self) -> CubeDim {
        self.n
    }

    pub fn vectors(&self) -> &[CharMask] {
        &self.vectors
    }
}

/// Completes an independent list to a basis of `F_2^n`, appending the
/// lexicographically smallest standard-basis vectors that preserve
/// independence. Deterministic; the input is kept as a prefix.
pub fn complete_basis(independent: &[CharMask], n: CubeDim) -> Result<Gf2Basis> {
    if let Some(d) = common_dim(independent)? {
        if d != n {
            return Err(Error::MixedDimensions {
                left: d.get(),
                right: n.get(),
            });
        }
    }
    let mut basis = XorBasis::default();
    for m in independent {
        if !basis.insert(m.mask()) {
            return Err(Error::NotIndependent);
        }
    }
    let mut vectors = independent.to_vec();
    for i in 0..n.get() {
        if basis.rank == n.get() as usize {
            break;
        }
        if basis.insert(1u64 << i) {
            vectors.push(CharMask::new(n, 1u64 << i)?);
        }
    }
    Gf2Basis::new(vectors)
}

/// Samples a basis of `F_2^n` consisting entirely of weight-k masks by
/// rejection: random weight-k masks are drawn from a seeded ChaCha8 stream
/// and kept whenever they enlarge the span. Reproducible per seed.
///
/// Requires k odd: for even k every weight-k mask has even parity, so the
/// span stays inside the even-weight hyperplane and no basis exists. For
/// k = n > 1 the all-ones mask is the only candidate, so that is rejected
/// too; k = n = 1 is fine.
pub fn sample_weight_k_basis(n: CubeDim, k: u32, seed: u64) -> Result<Gf2Basis> {
    if k == 0 || k > n.get() {
        return Err(Error::WeightOutOfRange { k, n: n.get() });
    }
    if k % 2 == 0 {
        return Err(Error::EvenWeightBasis { k, n: n.get() });
    }
    if k == n.get() && n.get() > 1 {
        return Err(Error::AllOnesOnly { n: n.get() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions: Vec<u32> = (0..n.get()).collect();
    let mut basis = XorBasis::default();
    let mut vectors = Vec::with_capacity(n.get() as usize);
    while vectors.len() < n.get() as usize {
        // Random weight-k mask: choose k distinct coordinates.
        for i in 0..k as usize {
            let j = rng.random_range(i..positions.len());
            positions.swap(i, j);
        }
        let mask = positions[..k as usize]
            .iter()
            .fold(0u64, |acc, &p| acc | 1u64 << p);
        if basis.insert(mask) {
            vectors.push(CharMask::new(n, mask)?);
        }
    }
    Gf2Basis::new(vectors)
}
