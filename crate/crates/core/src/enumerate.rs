//! Brute-force enumeration over labelings `(Z/kZ)^n`.
//!
//! These routines are the independent oracles for the Smith-normal-form
//! counts: they never factor a matrix, they just walk every labeling.
//! With the `parallel` feature the labeling space is split into contiguous
//! index ranges handled by rayon workers; exact counts are combined by
//! addition, so the result does not depend on the split.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

/// Upper bound on the number of states a brute-force routine may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCap(pub u64);

impl EnumerationCap {
    pub const DEFAULT: EnumerationCap = EnumerationCap(10_000_000);

    /// `k^n` if it does not exceed the cap.
    pub fn check(self, k: u64, n: usize, what: &str) -> Result<u64> {
        let exceeded = || Error::EnumerationCapExceeded {
            what: format!("{what} ({k}^{n} states)"),
            cap: self.0,
        };
        let exp = u32::try_from(n).map_err(|_| exceeded())?;
        match k.checked_pow(exp) {
            Some(total) if total <= self.0 => Ok(total),
            _ => Err(exceeded()),
        }
    }
}

impl Default for EnumerationCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// How to walk the labeling space.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

#[cfg(feature = "parallel")]
const CHUNK: u64 = 1 << 14;

/// Column-major residues of a matrix mod `k`.
#[derive(Clone, Debug)]
struct ResidueMatrix {
    rows: usize,
    k: u64,
    columns: Vec<Vec<u64>>,
}

impl ResidueMatrix {
    fn new(m: &IntMatrix, k: u64) -> Self {
        let kb = BigInt::from(k);
        let columns = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .map(|i| u64::try_from(m[(i, j)].mod_floor(&kb)).expect("residue fits in u64"))
                    .collect()
            })
            .collect();
        ResidueMatrix {
            rows: m.rows(),
            k,
            columns,
        }
    }

    fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Walks labelings with indices in `start..end` (little-endian base-`k`
    /// digits), calling `visit` with the image `m x mod k` of each.
    fn walk(&self, start: u64, end: u64, mut visit: impl FnMut(&[u64])) {
        if start >= end {
            return;
        }
        let k = self.k;
        let mut digits = vec![0u64; self.cols()];
        let mut rest = start;
        for d in digits.iter_mut() {
            *d = rest % k;
            rest /= k;
        }
        let mut image = vec![0u64; self.rows];
        for (col, &d) in self.columns.iter().zip(&digits) {
            for (acc, &c) in image.iter_mut().zip(col) {
                *acc = ((*acc as u128 + d as u128 * c as u128) % k as u128) as u64;
            }
        }
        for _ in start..end {
            visit(&image);
            // Every digit touched by the increment moves by +1 mod k, which
            // shifts the image by its column.
            for (j, d) in digits.iter_mut().enumerate() {
                for (acc, &c) in image.iter_mut().zip(&self.columns[j]) {
                    let s = *acc + c;
                    *acc = if s >= k { s - k } else { s };
                }
                *d += 1;
                if *d < k {
                    break;
                }
                *d = 0;
            }
        }
    }
}

fn run<T, F, R>(total: u64, strategy: Strategy, work: F, reduce: R, zero: T) -> T
where
    T: Send + Sync + Clone,
    F: Fn(u64, u64) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    match strategy {
        Strategy::Sequential => reduce(zero, work(0, total)),
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            let chunks = total.div_ceil(CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|c| work(c * CHUNK, ((c + 1) * CHUNK).min(total)))
                .reduce(|| zero.clone(), &reduce)
        }
    }
}

/// Counts `x in (Z/kZ)^cols` with `m x = 0 mod k` by visiting every `x`.
pub fn count_kernel_brute(m: &IntMatrix, k: u64, cap: EnumerationCap) -> Result<u64> {
    count_kernel_brute_with(m, k, cap, Strategy::default())
}

pub fn count_kernel_brute_with(
    m: &IntMatrix,
    k: u64,
    cap: EnumerationCap,
    strategy: Strategy,
) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidModulus);
    }
    let total = cap.check(k, m.cols(), "labelings")?;
    let rm = ResidueMatrix::new(m, k);
    Ok(run(
        total,
        strategy,
        |lo, hi| {
            let mut n = 0u64;
            rm.walk(lo, hi, |img| {
                if img.iter().all(|&v| v == 0) {
                    n += 1;
                }
            });
            n
        },
        |a, b| a + b,
        0,
    ))
}

/// `Σ_l Σ_m exp(2πi/k · m·(m_mat l))` over `l in (Z/kZ)^cols` and
/// `m in (Z/kZ)^rows`, evaluated term by term in floating point.
///
/// Returns `(re, im)`.
pub fn exponential_double_sum(
    m: &IntMatrix,
    k: u64,
    cap: EnumerationCap,
    strategy: Strategy,
) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::InvalidModulus);
    }
    cap.check(k, m.cols() + m.rows(), "labeling pairs")?;
    let total = cap.check(k, m.cols(), "labelings")?;
    let rm = ResidueMatrix::new(m, k);
    let cos: Vec<f64> = (0..k).map(|t| (TAU * t as f64 / k as f64).cos()).collect();
    let sin: Vec<f64> = (0..k).map(|t| (TAU * t as f64 / k as f64).sin()).collect();
    let dual = DualWalker::new(m.rows(), k);
    Ok(run(
        total,
        strategy,
        |lo, hi| {
            let (mut re, mut im) = (0.0, 0.0);
            rm.walk(lo, hi, |w| {
                dual.walk(w, |phase| {
                    re += cos[phase as usize];
                    im += sin[phase as usize];
                });
            });
            (re, im)
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
        (0.0, 0.0),
    ))
}

/// Enumerates `m in (Z/kZ)^n` and reports the phase `m·w mod k`.
struct DualWalker {
    n: usize,
    k: u64,
}

impl DualWalker {
    fn new(n: usize, k: u64) -> Self {
        DualWalker { n, k }
    }

    fn walk(&self, w: &[u64], mut visit: impl FnMut(u64)) {
        let k = self.k;
        let mut digits = vec![0u64; self.n];
        let mut phase = 0u64;
        loop {
            visit(phase);
            let mut j = 0;
            loop {
                if j == self.n {
                    return;
                }
                phase = (phase + w[j]) % k;
                digits[j] += 1;
                if digits[j] < k {
                    break;
                }
                digits[j] = 0;
                j += 1;
            }
        }
    }
}
