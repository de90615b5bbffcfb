//! Cellular chain complexes and the manifolds they present.

use std::borrow::Cow;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

/// `C_n -> ... -> C_1 -> C_0` with `boundaries[p - 1]` the matrix of
/// `∂_p`, of shape `|C_{p-1}| x |C_p|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
    metadata: BTreeMap<String, String>,
}

impl ChainComplex {
    /// Assembles a complex without checking `∂∘∂ = 0` or the matrix shapes.
    /// Use [`ChainComplex::validate`] afterwards, or [`ChainComplex::new`].
    pub fn from_parts(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidParameters(
                "a complex needs at least C_0".into(),
            ));
        }
        if boundaries.len() != ranks.len() - 1 {
            return Err(Error::InvalidParameters(format!(
                "{} ranks require {} boundary matrices, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        Ok(ChainComplex {
            ranks,
            boundaries,
            metadata: BTreeMap::new(),
        })
    }

    /// Assembles and validates a complex.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        let cc = Self::from_parts(ranks, boundaries)?;
        cc.validate()?;
        Ok(cc)
    }

    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.insert(key.into(), value.into());
        self
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    /// Top degree `n`.
    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `|C_p|`, zero outside `0..=dim`.
    pub fn rank(&self, p: usize) -> usize {
        self.ranks.get(p).copied().unwrap_or(0)
    }

    /// The matrix of `∂_p` for `1 <= p <= dim`.
    pub fn boundary(&self, p: usize) -> Result<&IntMatrix> {
        if p == 0 || p > self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: p,
                min: 1,
                max: self.dim(),
            });
        }
        Ok(&self.boundaries[p - 1])
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    /// `∂_p` with the zero maps `C_0 -> 0` and `0 -> C_n` filled in at the ends.
    pub fn boundary_or_zero(&self, p: usize) -> Cow<'_, IntMatrix> {
        if p >= 1 && p <= self.dim() {
            Cow::Borrowed(&self.boundaries[p - 1])
        } else {
            let rows = if p == 0 { 0 } else { self.rank(p - 1) };
            Cow::Owned(IntMatrix::zeros(rows, self.rank(p)))
        }
    }

    /// Checks matrix shapes, then `∂_{p-1} ∂_p = 0`, reporting the first failure.
    pub fn validate(&self) -> Result<()> {
        for (idx, m) in self.boundaries.iter().enumerate() {
            let p = idx + 1;
            let (er, ec) = (self.ranks[p - 1], self.ranks[p]);
            if m.rows() != er || m.cols() != ec {
                return Err(Error::ShapeMismatch {
                    degree: p,
                    expected_rows: er,
                    expected_cols: ec,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        for p in 2..=self.dim() {
            let composed = &self.boundaries[p - 2] * &self.boundaries[p - 1];
            for row in 0..composed.rows() {
                for col in 0..composed.cols() {
                    if !composed[(row, col)].is_zero() {
                        return Err(Error::BoundarySquareNonzero {
                            degree: p - 1,
                            row,
                            col,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The coboundary `d^p = ∂_{p+1}^T`, shape `|C_{p+1}| x |C_p|`, for `p < dim`.
    pub fn coboundary(&self, p: usize) -> Result<IntMatrix> {
        if p >= self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: p,
                min: 0,
                max: self.dim().saturating_sub(1),
            });
        }
        Ok(self.boundaries[p].transpose())
    }

    /// Like [`coboundary`](Self::coboundary) but also accepts `p = dim`,
    /// where `d^n` is the empty `0 x |C_n|` map.
    pub(crate) fn coboundary_or_zero(&self, p: usize) -> Result<IntMatrix> {
        if p > self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: p,
                min: 0,
                max: self.dim(),
            });
        }
        Ok(self.boundary_or_zero(p + 1).transpose())
    }
}

/// A single point: `C_0 = Z`, the unit of [`tensor_product`].
pub fn build_point() -> ChainComplex {
    ChainComplex {
        ranks: vec![1],
        boundaries: Vec::new(),
        metadata: BTreeMap::new(),
    }
}

/// Two cells `e¹_(p), e²_(p)` in every degree `p <= n`, both balls, with
/// `∂e¹_(p) = -∂e²_(p) = e¹_(p-1) + e²_(p-1)`.
pub fn build_sphere_minimal(n: usize) -> Result<ChainComplex> {
    if n == 0 {
        return Err(Error::InvalidParameters(
            "sphere dimension must be at least 1".into(),
        ));
    }
    let bd = IntMatrix::from_i64(2, 2, &[1, -1, 1, -1]);
    ChainComplex::new(vec![2; n + 1], vec![bd; n])
}

/// Four vertices, five edges, three faces and two 3-cells decomposing `S^3`.
///
/// Edges: `e1 = v2 - v1`, `e2 = v1 - v4`, `e3 = v4 - v2`, `e4 = v3 - v2`,
/// `e5 = v4 - v3`. Faces: `f1 = e1 + e2 + e4 + e5`, `f2 = e1 + e2 + e3`,
/// `f3 = e3 - e4 - e5`. The 3-cells carry opposite orientations and bound
/// the 2-cycle `f1 - f2 + f3`.
pub fn build_sphere3_figure() -> ChainComplex {
    #[rustfmt::skip]
    let d1 = IntMatrix::from_i64(4, 5, &[
        -1,  1,  0,  0,  0,
         1,  0, -1, -1,  0,
         0,  0,  0,  1, -1,
         0, -1,  1,  0,  1,
    ]);
    #[rustfmt::skip]
    let d2 = IntMatrix::from_i64(5, 3, &[
        1, 1,  0,
        1, 1,  0,
        0, 1,  1,
        1, 0, -1,
        1, 0, -1,
    ]);
    #[rustfmt::skip]
    let d3 = IntMatrix::from_i64(3, 2, &[
         1, -1,
        -1,  1,
         1, -1,
    ]);
    ChainComplex::new(vec![4, 5, 3, 2], vec![d1, d2, d3]).expect("figure complex is valid")
}

/// Lens space `L(r, s)` with one cell per degree and `∂_2 = r`.
///
/// `s` does not enter the complex; it is kept as metadata (`lens_r`,
/// `lens_s`) for the linking form `s / r`.
pub fn build_lens(r: i64, s: i64) -> Result<ChainComplex> {
    if r < 2 {
        return Err(Error::InvalidParameters(format!(
            "lens space needs r >= 2, got {r}"
        )));
    }
    if r.gcd(&s) != 1 {
        return Err(Error::InvalidParameters(format!(
            "lens space needs gcd(r, s) = 1, got r = {r}, s = {s}"
        )));
    }
    let cc = ChainComplex::new(
        vec![1, 1, 1, 1],
        vec![
            IntMatrix::from_i64(1, 1, &[0]),
            IntMatrix::from_i64(1, 1, &[r]),
            IntMatrix::from_i64(1, 1, &[0]),
        ],
    )?;
    Ok(cc
        .with_metadata("lens_r", r.to_string())
        .with_metadata("lens_s", s.to_string()))
}

/// Cellular tensor product `A ⊗ B`.
///
/// Degree-`p` cells `x_i ⊗ y_j` (`i + j = p`) are ordered by `i`, then by
/// the index in `A`, then by the index in `B`. The boundary is
/// `∂x ⊗ y + (-1)^i x ⊗ ∂y`.
pub fn tensor_product(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    let dim = a.dim() + b.dim();
    // offsets[p][i] = index of the first cell x_i ⊗ y_{p-i} in degree p
    let mut offsets = vec![vec![usize::MAX; a.dim() + 1]; dim + 1];
    let mut ranks = vec![0usize; dim + 1];
    for p in 0..=dim {
        for (i, offset) in offsets[p].iter_mut().enumerate() {
            if p < i || p - i > b.dim() {
                continue;
            }
            *offset = ranks[p];
            ranks[p] += a.rank(i) * b.rank(p - i);
        }
    }
    let index = |p: usize, i: usize, x: usize, y: usize| offsets[p][i] + x * b.rank(p - i) + y;

    let mut boundaries = Vec::with_capacity(dim);
    for p in 1..=dim {
        let mut m = IntMatrix::zeros(ranks[p - 1], ranks[p]);
        for i in 0..=a.dim() {
            if p < i || p - i > b.dim() {
                continue;
            }
            let j = p - i;
            for x in 0..a.rank(i) {
                for y in 0..b.rank(j) {
                    let col = index(p, i, x, y);
                    if i >= 1 {
                        let da = &a.boundaries[i - 1];
                        for x2 in 0..a.rank(i - 1) {
                            let c = &da[(x2, x)];
                            if !c.is_zero() {
                                m[(index(p - 1, i - 1, x2, y), col)] += c;
                            }
                        }
                    }
                    if j >= 1 {
                        let db = &b.boundaries[j - 1];
                        for y2 in 0..b.rank(j - 1) {
                            let c = &db[(y2, y)];
                            if !c.is_zero() {
                                let signed: BigInt = if i % 2 == 0 { c.clone() } else { -c };
                                m[(index(p - 1, i, x, y2), col)] += signed;
                            }
                        }
                    }
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex {
        ranks,
        boundaries,
        metadata: BTreeMap::new(),
    }
}

/// A `p`-labeling: one element of `Z/kZ` per `p`-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    degree: usize,
    modulus: u64,
    values: Vec<u64>,
}

impl Labeling {
    pub fn new(degree: usize, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus);
        }
        if let Some(v) = values.iter().find(|&&v| v >= modulus) {
            return Err(Error::InvalidParameters(format!(
                "label {v} is not in [0, {modulus})"
            )));
        }
        Ok(Labeling {
            degree,
            modulus,
            values,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `(d^p l)(e)` reduced into `[0, k)` for every `(p+1)`-cell `e`.
    pub fn coboundary(&self, cc: &ChainComplex) -> Result<Vec<u64>> {
        let d = cc.coboundary_or_zero(self.degree)?;
        if d.cols() != self.values.len() {
            return Err(Error::InvalidParameters(format!(
                "labeling has {} values but C_{} has {} cells",
                self.values.len(),
                self.degree,
                d.cols()
            )));
        }
        let k = BigInt::from(self.modulus);
        Ok((0..d.rows())
            .map(|e| {
                let s: BigInt = d
                    .row(e)
                    .iter()
                    .zip(&self.values)
                    .map(|(c, &v)| c * BigInt::from(v))
                    .sum();
                let r = s.mod_floor(&k);
                debug_assert!(!r.is_negative());
                u64::try_from(r).expect("residue fits in u64")
            })
            .collect())
    }

    /// Whether every Kronecker condition `δ^[k]((d^p l)(e))` is satisfied.
    pub fn is_cocycle(&self, cc: &ChainComplex) -> Result<bool> {
        Ok(self.coboundary(cc)?.iter().all(|&v| v == 0))
    }
}
