//! Integral homology, mod-k cohomology sizes and cocycle counts.
//!
//! Mod-k data comes from integral homology through the Universal
//! Coefficient Theorem: `|H^p_k| = |Hom(F_p)| |Hom(T_p)| |Hom(T_{p-1})|`
//! with `Hom(·) = Hom(·, Z/kZ)` and `|Hom(Z/ζ, Z/k)| = gcd(ζ, k)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::complex::ChainComplex;
use crate::enumerate::{count_kernel_brute, EnumerationCap};
use crate::error::{Error, Result};
use crate::intlinalg::{kernel_count_from_divisors, smith_normal_form};

/// `H_p ≅ Z^betti ⊕ Z/ζ_1 ⊕ ... ⊕ Z/ζ_t` with `ζ_i | ζ_{i+1}` and `ζ_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup {
            betti: 0,
            torsion: Vec::new(),
        }
    }

    /// `|T|`, the order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// `|Hom(T, Z/kZ)| = ∏ gcd(ζ_i, k)`.
    pub fn hom_torsion_to_zk_size(&self, k: u64) -> BigInt {
        let kb = BigInt::from(k);
        self.torsion.iter().map(|z| z.gcd(&kb)).product()
    }

    /// `|Hom(F, Z/kZ)| = k^betti`.
    pub fn hom_free_to_zk_size(&self, k: u64) -> BigInt {
        Pow::pow(BigInt::from(k), self.betti)
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|z| format!("Z/{z}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn check_degree(cc: &ChainComplex, p: usize) -> Result<()> {
    if p > cc.dim() {
        return Err(Error::DegreeOutOfRange {
            degree: p,
            min: 0,
            max: cc.dim(),
        });
    }
    Ok(())
}

/// `H_p(cc; Z)`: `betti = |C_p| - rank ∂_p - rank ∂_{p+1}`, torsion from the
/// elementary divisors of `∂_{p+1}` exceeding 1.
pub fn homology(cc: &ChainComplex, p: usize) -> Result<HomologyGroup> {
    check_degree(cc, p)?;
    let rank_in = smith_normal_form(&cc.boundary_or_zero(p)).rank();
    let divisors = smith_normal_form(&cc.boundary_or_zero(p + 1)).elementary_divisors();
    let betti = cc.rank(p) - rank_in - divisors.len();
    let one = BigInt::one();
    let torsion = divisors.into_iter().filter(|d| *d > one).collect();
    Ok(HomologyGroup { betti, torsion })
}

/// `H_0, ..., H_n`.
pub fn homology_all(cc: &ChainComplex) -> Vec<HomologyGroup> {
    (0..=cc.dim())
        .map(|p| homology(cc, p).expect("degree in range"))
        .collect()
}

/// Rejects complexes whose `H_0` is not `Z`.
pub fn ensure_connected(cc: &ChainComplex) -> Result<()> {
    let betti0 = homology(cc, 0)?.betti;
    if betti0 != 1 {
        return Err(Error::NotConnected { betti0 });
    }
    Ok(())
}

/// `|Hom(H, Z/kZ)| = k^betti · ∏ gcd(ζ_i, k)`.
pub fn hom_to_zk_size(g: &HomologyGroup, k: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidModulus);
    }
    Ok(g.hom_free_to_zk_size(k) * g.hom_torsion_to_zk_size(k))
}

/// Factors of `|H^p(cc; Z/kZ)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModKSizes {
    pub k: u64,
    /// `|Hom(F_p, Z/kZ)|`
    pub hom_free: BigInt,
    /// `|Hom(T_p, Z/kZ)|`
    pub hom_torsion: BigInt,
    /// `|Hom(T_{p-1}, Z/kZ)|`, 1 at `p = 0`
    pub hom_torsion_prev: BigInt,
    /// `|H^p_k|`
    pub total: BigInt,
}

pub fn mod_k_cohomology_size(cc: &ChainComplex, p: usize, k: u64) -> Result<ModKSizes> {
    check_degree(cc, p)?;
    if k == 0 {
        return Err(Error::InvalidModulus);
    }
    let hp = homology(cc, p)?;
    let prev = if p == 0 {
        HomologyGroup::trivial()
    } else {
        homology(cc, p - 1)?
    };
    let hom_free = hp.hom_free_to_zk_size(k);
    let hom_torsion = hp.hom_torsion_to_zk_size(k);
    let hom_torsion_prev = prev.hom_torsion_to_zk_size(k);
    let total = &hom_free * &hom_torsion * &hom_torsion_prev;
    Ok(ModKSizes {
        k,
        hom_free,
        hom_torsion,
        hom_torsion_prev,
        total,
    })
}

/// How to count cocycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleMethod {
    /// Elementary divisors of `d^p`.
    Snf,
    /// Visit every labeling and test every Kronecker condition.
    Brute,
}

/// `|Z^p_k|`, the number of `p`-labelings mod `k` with `d^p l = 0 mod k`.
///
/// `p = dim` is accepted: `d^n` is the empty map and every labeling counts.
pub fn count_cocycles(
    cc: &ChainComplex,
    p: usize,
    k: u64,
    method: CocycleMethod,
    cap: EnumerationCap,
) -> Result<BigInt> {
    check_degree(cc, p)?;
    if k == 0 {
        return Err(Error::InvalidModulus);
    }
    let d = cc.coboundary_or_zero(p)?;
    match method {
        CocycleMethod::Snf => {
            let snf = smith_normal_form(&d);
            Ok(kernel_count_from_divisors(
                &snf.elementary_divisors(),
                d.cols(),
                k,
            ))
        }
        CocycleMethod::Brute => count_kernel_brute(&d, k, cap).map(BigInt::from),
    }
}

/// `k^(|C_{p-1}| - |C_{p-2}| + ... ± |C_0|)`, the exponent is
/// `Σ_{j<p} (-1)^(p-1-j) |C_j|` (possibly negative).
pub(crate) fn alternating_cell_exponent(cc: &ChainComplex, p: usize) -> i64 {
    (0..p)
        .map(|j| {
            let c = cc.rank(j) as i64;
            if (p - 1 - j).is_multiple_of(2) {
                c
            } else {
                -c
            }
        })
        .sum()
}

pub(crate) fn k_pow(k: u64, exp: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(k));
    Pow::pow(base, exp)
}

/// `k^(Σ (-1)^(p-1-j)|C_j|) · ∏_{j<=p} |H^j_k|^((-1)^(p-j))`, the right-hand
/// side of the cocycle-count recursion.
pub fn cocycle_count_from_cohomology(cc: &ChainComplex, p: usize, k: u64) -> Result<BigRational> {
    check_degree(cc, p)?;
    let mut value = k_pow(k, alternating_cell_exponent(cc, p));
    for j in 0..=p {
        let h = BigRational::from_integer(mod_k_cohomology_size(cc, j, k)?.total);
        if (p - j).is_multiple_of(2) {
            value *= h;
        } else {
            value /= h;
        }
    }
    Ok(value)
}

/// Outcome of [`cocycle_count_recursion_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecursionCheck {
    Ok,
    Mismatch {
        counted: BigInt,
        from_cohomology: BigRational,
    },
}

/// Compares `|Z^p_k|` from the Smith normal form of `d^p` against the
/// alternating product of mod-k cohomology sizes.
pub fn cocycle_count_recursion_check(
    cc: &ChainComplex,
    p: usize,
    k: u64,
) -> Result<RecursionCheck> {
    let counted = count_cocycles(cc, p, k, CocycleMethod::Snf, EnumerationCap::DEFAULT)?;
    let from_cohomology = cocycle_count_from_cohomology(cc, p, k)?;
    if BigRational::from_integer(counted.clone()) == from_cohomology {
        Ok(RecursionCheck::Ok)
    } else {
        Ok(RecursionCheck::Mismatch {
            counted,
            from_cohomology,
        })
    }
}
