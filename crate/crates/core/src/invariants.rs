//! Abelian Turaev–Viro invariants, U(1)-BF partition functions and the
//! relation between them.
//!
//! The level-`k` Turaev–Viro invariant in degree `p` is a normalized count
//! of mod-`k` `p`-cocycles,
//!
//! ```text
//! Z^p_TV = |Z^p_k| / k^E(p),   E(p) = (-1)^p + Σ_{j<p} (-1)^(p-1-j) |C_j|
//! ```
//!
//! set to 1 when there are no `(p+1)`-cells. The BF partition function is
//! the torsion exponential sum, `Z^p_BF = |T_p| · |Hom(T_p, Z/kZ)|`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::ChainComplex;
use crate::enumerate::{count_kernel_brute, exponential_double_sum, EnumerationCap, Strategy};
use crate::error::{Error, Result};
use crate::homology::{
    alternating_cell_exponent, cocycle_count_from_cohomology, count_cocycles, ensure_connected,
    hom_to_zk_size, homology, k_pow, CocycleMethod,
};

/// Tolerance between the exact pairing sum and its floating-point evaluation.
pub const PAIRING_FLOAT_TOLERANCE: f64 = 1e-9;
/// Tolerance between the exact discrete BF double sum and its floating-point evaluation.
pub const DOUBLE_SUM_FLOAT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TvMethod {
    /// Enumerate every labeling and test the Kronecker conditions.
    Brute,
    /// Count cocycles from the Smith normal form of `d^p`.
    Snf,
    /// Alternating product of mod-k cohomology sizes.
    Formula,
    /// Closed form in terms of `Hom(F_j)` and `Hom(T_p)`.
    ClosedForm,
}

impl TvMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TvMethod::Brute => "brute",
            TvMethod::Snf => "snf",
            TvMethod::Formula => "formula",
            TvMethod::ClosedForm => "closed_form",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Normalized so that every sphere gives 1.
    #[default]
    Closed,
    /// One more factor of `1/k`; `S^3` gives `1/k` and `S^1 x S^2` gives 1.
    Tqft,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Closed => "closed",
            Normalization::Tqft => "tqft",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TvValue {
    pub value: BigRational,
    pub method: TvMethod,
    pub normalization: Normalization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BfMethod {
    TorsionFormula,
    PairingSum,
}

impl BfMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BfMethod::TorsionFormula => "torsion_formula",
            BfMethod::PairingSum => "pairing_sum",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfValue {
    pub value: BigInt,
    pub method: BfMethod,
}

fn check_modulus(k: u64) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidModulus)
    } else {
        Ok(())
    }
}

fn check_tv_degree(cc: &ChainComplex, p: usize) -> Result<()> {
    if cc.dim() == 0 || p >= cc.dim() {
        return Err(Error::DegreeOutOfRange {
            degree: p,
            min: 0,
            max: cc.dim().saturating_sub(1),
        });
    }
    Ok(())
}

/// `E(p)`: the exponent of `k` in the closed normalization.
pub fn normalization_exponent(cc: &ChainComplex, p: usize) -> i64 {
    let eps = if p.is_multiple_of(2) { 1 } else { -1 };
    eps + alternating_cell_exponent(cc, p)
}

fn apply_normalization(value: BigRational, k: u64, normalization: Normalization) -> BigRational {
    match normalization {
        Normalization::Closed => value,
        Normalization::Tqft => value / BigRational::from_integer(BigInt::from(k)),
    }
}

/// `Z^p_TV_k(cc)` by the requested method.
pub fn tv_invariant(
    cc: &ChainComplex,
    p: usize,
    k: u64,
    method: TvMethod,
    normalization: Normalization,
    cap: EnumerationCap,
) -> Result<TvValue> {
    check_modulus(k)?;
    check_tv_degree(cc, p)?;
    ensure_connected(cc)?;
    let closed = if cc.rank(p + 1) == 0 {
        BigRational::one()
    } else {
        match method {
            TvMethod::Brute | TvMethod::Snf => {
                let cm = if method == TvMethod::Brute {
                    CocycleMethod::Brute
                } else {
                    CocycleMethod::Snf
                };
                let count = count_cocycles(cc, p, k, cm, cap)?;
                BigRational::from_integer(count) / k_pow(k, normalization_exponent(cc, p))
            }
            TvMethod::Formula => {
                cocycle_count_from_cohomology(cc, p, k)? / k_pow(k, normalization_exponent(cc, p))
            }
            TvMethod::ClosedForm => {
                return tv_closed_form(cc, p, k).map(|v| TvValue {
                    value: apply_normalization(v.value, k, normalization),
                    normalization,
                    ..v
                })
            }
        }
    };
    Ok(TvValue {
        value: apply_normalization(closed, k, normalization),
        method,
        normalization,
    })
}

/// Closed form in terms of integral homology, evaluated two ways:
///
/// ```text
/// |Hom(H_p)| · ∏_{j<p}  |Hom(F_j)|^((-1)^(p-j)) · k^(-(-1)^p)
/// |Hom(T_p)| · ∏_{j<=p} |Hom(F_j)|^((-1)^(p-j)) · k^(-(-1)^p)
/// ```
///
/// The two must agree.
pub fn tv_closed_form(cc: &ChainComplex, p: usize, k: u64) -> Result<TvValue> {
    check_modulus(k)?;
    check_tv_degree(cc, p)?;
    ensure_connected(cc)?;
    let value = if cc.rank(p + 1) == 0 {
        BigRational::one()
    } else {
        let groups = (0..=p)
            .map(|j| homology(cc, j))
            .collect::<Result<Vec<_>>>()?;
        let hp = &groups[p];
        let trailing = k_pow(k, if p.is_multiple_of(2) { -1 } else { 1 });
        let free_factor = |j: usize| {
            let f = BigRational::from_integer(groups[j].hom_free_to_zk_size(k));
            if (p - j).is_multiple_of(2) {
                f
            } else {
                f.recip()
            }
        };

        let mut via_h = BigRational::from_integer(hom_to_zk_size(hp, k)?) * &trailing;
        for j in 0..p {
            via_h *= free_factor(j);
        }
        let mut via_t = BigRational::from_integer(hp.hom_torsion_to_zk_size(k)) * &trailing;
        for j in 0..=p {
            via_t *= free_factor(j);
        }
        if via_h != via_t {
            return Err(Error::InternalInconsistency(format!(
                "closed forms disagree: {via_h} (H_p form) vs {via_t} (T_p form)"
            )));
        }
        via_h
    };
    Ok(TvValue {
        value,
        method: TvMethod::ClosedForm,
        normalization: Normalization::Closed,
    })
}

/// `Z^p_BF_k = |T_p| · ∏ gcd(ζ_i, k)` for `1 <= p <= dim - 1`.
pub fn bf_partition(cc: &ChainComplex, p: usize, k: u64) -> Result<BfValue> {
    check_modulus(k)?;
    if p == 0 || p >= cc.dim() {
        return Err(Error::DegreeOutOfRange {
            degree: p,
            min: 1,
            max: cc.dim().saturating_sub(1),
        });
    }
    let hp = homology(cc, p)?;
    Ok(BfValue {
        value: hp.torsion_order() * hp.hom_torsion_to_zk_size(k),
        method: BfMethod::TorsionFormula,
    })
}

/// Finite groups `B = ⊕ Z/b_i`, `A = ⊕ Z/a_j` with a bilinear form
/// `Q(κ_B, κ_A) = Σ κ_B,i q_ij κ_A,j mod 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionPairing {
    orders_b: Vec<u64>,
    orders_a: Vec<u64>,
    /// Row-major `|orders_b| x |orders_a|`, reduced into `[0, 1)`.
    q: Vec<BigRational>,
}

impl TorsionPairing {
    /// Validates the data: every order is at least 2, `q` has the right
    /// shape, and `b_i q_ij` and `a_j q_ij` are integers so that the form
    /// is well defined on `Z/b_i x Z/a_j`.
    pub fn new(orders_b: Vec<u64>, orders_a: Vec<u64>, q: Vec<BigRational>) -> Result<Self> {
        if let Some(o) = orders_b.iter().chain(&orders_a).find(|&&o| o < 2) {
            return Err(Error::IllFormedPairing(format!(
                "group order {o} is below 2"
            )));
        }
        if q.len() != orders_b.len() * orders_a.len() {
            return Err(Error::IllFormedPairing(format!(
                "form needs {}x{} entries, got {}",
                orders_b.len(),
                orders_a.len(),
                q.len()
            )));
        }
        let cols = orders_a.len();
        let q = q
            .into_iter()
            .enumerate()
            .map(|(idx, v)| {
                let (b, a) = (orders_b[idx / cols], orders_a[idx % cols]);
                let g = BigInt::from(b.gcd(&a));
                if !g.is_multiple_of(v.denom()) {
                    return Err(Error::IllFormedPairing(format!(
                        "entry ({}, {}) = {v} is not well defined on Z/{b} x Z/{a}",
                        idx / cols,
                        idx % cols
                    )));
                }
                Ok(&v - v.floor())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TorsionPairing {
            orders_b,
            orders_a,
            q,
        })
    }

    /// The linking form `s/r` of `L(r, s)` on `Z/r x Z/r`.
    pub fn lens(r: u64, s: i64) -> Result<Self> {
        if r < 2 || (r as i64).gcd(&s) != 1 {
            return Err(Error::IllFormedPairing(format!(
                "lens form needs r >= 2 and gcd(r, s) = 1, got r = {r}, s = {s}"
            )));
        }
        let q = BigRational::new(BigInt::from(s), BigInt::from(r));
        Self::new(vec![r], vec![r], vec![q])
    }

    /// The lens form of a complex built by [`build_lens`](crate::complex::build_lens),
    /// read from its `lens_r` / `lens_s` metadata.
    pub fn from_lens_metadata(cc: &ChainComplex) -> Result<Self> {
        let field = |key: &str| -> Result<i64> {
            cc.metadata()
                .get(key)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| {
                    Error::IllFormedPairing(format!("complex has no usable `{key}` metadata"))
                })
        };
        let r = field("lens_r")?;
        let s = field("lens_s")?;
        let r = u64::try_from(r)
            .map_err(|_| Error::IllFormedPairing(format!("negative lens r = {r}")))?;
        Self::lens(r, s)
    }

    pub fn orders_b(&self) -> &[u64] {
        &self.orders_b
    }

    pub fn orders_a(&self) -> &[u64] {
        &self.orders_a
    }

    pub fn q(&self, i: usize, j: usize) -> &BigRational {
        &self.q[i * self.orders_a.len() + j]
    }

    fn order(orders: &[u64], cap: EnumerationCap, what: &str) -> Result<u64> {
        orders
            .iter()
            .try_fold(1u64, |acc, &o| acc.checked_mul(o))
            .filter(|&n| n <= cap.0)
            .ok_or_else(|| Error::EnumerationCapExceeded {
                what: what.to_string(),
                cap: cap.0,
            })
    }

    /// Calls `visit` with every element of `⊕ Z/o_i`.
    fn for_each_element(orders: &[u64], mut visit: impl FnMut(&[u64])) {
        let mut digits = vec![0u64; orders.len()];
        loop {
            visit(&digits);
            let mut i = 0;
            loop {
                if i == orders.len() {
                    return;
                }
                digits[i] += 1;
                if digits[i] < orders[i] {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

/// `Σ_{κ_B, κ_A} exp(-2πi k Q(κ_B, κ_A))`, evaluated exactly.
///
/// For fixed `κ_B` the inner sum is a character sum over `A`: it equals
/// `|A|` when `k Q(κ_B, e_j)` is an integer for every generator `e_j` and 0
/// otherwise.
pub fn pairing_sum(tp: &TorsionPairing, k: u64) -> Result<BigInt> {
    check_modulus(k)?;
    let cap = EnumerationCap::DEFAULT;
    let order_a = TorsionPairing::order(&tp.orders_a, cap, "pairing group A")?;
    TorsionPairing::order(&tp.orders_b, cap, "pairing group B")?;
    let kq = BigRational::from_integer(BigInt::from(k));
    let mut trivial = 0u64;
    TorsionPairing::for_each_element(&tp.orders_b, |kb| {
        let is_trivial = (0..tp.orders_a.len()).all(|j| {
            let phase: BigRational = kb
                .iter()
                .enumerate()
                .map(|(i, &c)| tp.q(i, j) * BigRational::from_integer(BigInt::from(c)))
                .sum::<BigRational>()
                * &kq;
            phase.is_integer()
        });
        if is_trivial {
            trivial += 1;
        }
    });
    Ok(BigInt::from(order_a) * BigInt::from(trivial))
}

/// Term-by-term floating-point evaluation of the pairing sum, `(re, im)`.
pub fn pairing_sum_float(tp: &TorsionPairing, k: u64) -> Result<(f64, f64)> {
    check_modulus(k)?;
    let cap = EnumerationCap::DEFAULT;
    let na = TorsionPairing::order(&tp.orders_a, cap, "pairing group A")?;
    let nb = TorsionPairing::order(&tp.orders_b, cap, "pairing group B")?;
    cap.check(na.max(nb), 2, "pairing terms")?;
    let kq = BigRational::from_integer(BigInt::from(k));
    let (mut re, mut im) = (0.0f64, 0.0f64);
    TorsionPairing::for_each_element(&tp.orders_b, |kb| {
        TorsionPairing::for_each_element(&tp.orders_a, |ka| {
            let mut form = BigRational::zero();
            for (i, &x) in kb.iter().enumerate() {
                for (j, &y) in ka.iter().enumerate() {
                    form += tp.q(i, j) * BigRational::from_integer(BigInt::from(x * y));
                }
            }
            let phase = &form * &kq;
            let frac = (&phase - phase.floor()).to_f64().unwrap_or(0.0);
            let angle = -std::f64::consts::TAU * frac;
            re += angle.cos();
            im += angle.sin();
        });
    });
    Ok((re, im))
}

/// `Z^p_BF_k` through the pairing sum of a lens space's linking form.
pub fn bf_partition_from_pairing(tp: &TorsionPairing, k: u64) -> Result<BfValue> {
    Ok(BfValue {
        value: pairing_sum(tp, k)?,
        method: BfMethod::PairingSum,
    })
}

/// The discrete BF double sum, exact and in floating point.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteBfValue {
    pub value: BigRational,
    pub float_value: f64,
}

/// `k^-(|C_{p+1}| + E(p)) Σ_l Σ_m exp(2πi/k · m·d^p l)`.
///
/// The exact value collapses each inner sum over `m` to `k^|C_{p+1}|` or 0
/// according to whether `d^p l = 0 mod k`. The floating-point value sums
/// every term and must agree within [`DOUBLE_SUM_FLOAT_TOLERANCE`].
pub fn discrete_bf_double_sum(
    cc: &ChainComplex,
    p: usize,
    k: u64,
    cap: EnumerationCap,
) -> Result<DiscreteBfValue> {
    discrete_bf_double_sum_with(cc, p, k, cap, Strategy::default())
}

pub fn discrete_bf_double_sum_with(
    cc: &ChainComplex,
    p: usize,
    k: u64,
    cap: EnumerationCap,
    strategy: Strategy,
) -> Result<DiscreteBfValue> {
    check_modulus(k)?;
    check_tv_degree(cc, p)?;
    ensure_connected(cc)?;
    let dual_cells = cc.rank(p + 1);
    cap.check(k, cc.rank(p) + dual_cells, "labeling pairs")?;
    if dual_cells == 0 {
        return Ok(DiscreteBfValue {
            value: BigRational::one(),
            float_value: 1.0,
        });
    }
    let d = cc.coboundary(p)?;
    let exponent = dual_cells as i64 + normalization_exponent(cc, p);

    let kernel = count_kernel_brute(&d, k, cap)?;
    let inner = num_traits::pow(BigInt::from(k), dual_cells);
    let value = BigRational::from_integer(inner * BigInt::from(kernel)) / k_pow(k, exponent);

    let (re, im) = exponential_double_sum(&d, k, cap, strategy)?;
    let scale = (k as f64).powi(i32::try_from(exponent).unwrap_or(i32::MAX));
    let float_value = re / scale;
    let exact = value.to_f64().unwrap_or(f64::NAN);
    if (float_value - exact).abs() > DOUBLE_SUM_FLOAT_TOLERANCE
        || (im / scale).abs() > DOUBLE_SUM_FLOAT_TOLERANCE
    {
        return Err(Error::InternalInconsistency(format!(
            "double sum: exact {value} vs floating point {float_value} + {}i",
            im / scale
        )));
    }
    Ok(DiscreteBfValue { value, float_value })
}

/// Result of [`bf_tv_relation_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub bf: BigInt,
    pub tv: BigRational,
    pub factor: BigRational,
    pub ok: bool,
}

/// `|T_p| · ∏_{j=0}^{p} k^((-1)^(j+1) b_{p-j}) · k^((-1)^p)`.
///
/// For connected complexes the `b_0` term cancels the last power of `k`,
/// leaving `|T_p| · |Hom(F_{p-1})| ... / (|Hom(F_p)| |Hom(F_{p-2})| ...)`
/// with the products ending at `F_1`.
pub fn bf_tv_factor(cc: &ChainComplex, p: usize, k: u64) -> Result<BigRational> {
    check_modulus(k)?;
    let mut factor = BigRational::from_integer(homology(cc, p)?.torsion_order());
    for j in 0..=p {
        let b = homology(cc, p - j)?.betti as i64;
        factor *= k_pow(k, if j % 2 == 0 { -b } else { b });
    }
    factor *= k_pow(k, if p.is_multiple_of(2) { 1 } else { -1 });
    Ok(factor)
}

/// Checks `Z^p_BF = factor · Z^p_TV` with the BF side from torsion, the TV
/// side from a cocycle count and the factor from Betti numbers.
pub fn bf_tv_relation_check(cc: &ChainComplex, p: usize, k: u64) -> Result<RelationReport> {
    check_modulus(k)?;
    ensure_connected(cc)?;
    let bf = bf_partition(cc, p, k)?.value;
    let tv = tv_invariant(
        cc,
        p,
        k,
        TvMethod::Snf,
        Normalization::Closed,
        EnumerationCap::DEFAULT,
    )?
    .value;
    let factor = bf_tv_factor(cc, p, k)?;
    let ok = BigRational::from_integer(bf.clone()) == &factor * &tv && tv.is_positive();
    Ok(RelationReport { bf, tv, factor, ok })
}
