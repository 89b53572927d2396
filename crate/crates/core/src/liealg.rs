//! sl(3,ℝ) with the basis `e₁ … e₈`, its bracket, the bi-invariant metric
//! `⟨X,Y⟩ = −½ Tr(XY)`, the reductive splitting `𝔥 ⊕ 𝔪₁ ⊕ 𝔪₂ ⊕ 𝔪₃` and the
//! infinitesimal isotropy action.
//!
//! The eight basis matrices are the only hard-coded data. Coordinates,
//! structure constants and the Gram matrix are all derived from them.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::linalg::Matrix;
use crate::numeric::{self, Mat3};

/// Exact 3×3 matrix over ℚ(√2, √3).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgMat(pub [[FieldElem; 3]; 3]);

impl AlgMat {
    pub fn zero() -> Self {
        Self(Default::default())
    }

    pub fn identity() -> Self {
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { FieldElem::one() } else { FieldElem::zero() })
        }))
    }

    pub fn trace(&self) -> FieldElem {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    pub fn transpose(&self) -> Self {
        Self(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn scale(&self, k: &FieldElem) -> Self {
        Self(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] * k)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(FieldElem::is_zero)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3)
                    .filter(|&k| !self.0[i][k].is_zero() && !rhs.0[k][j].is_zero())
                    .map(|k| &self.0[i][k] * &rhs.0[k][j])
                    .sum()
            })
        }))
    }

    pub fn to_f64(&self) -> Mat3 {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].to_f64()))
    }
}

impl Add for &AlgMat {
    type Output = AlgMat;
    fn add(self, rhs: &AlgMat) -> AlgMat {
        AlgMat(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] + &rhs.0[i][j])))
    }
}

impl Sub for &AlgMat {
    type Output = AlgMat;
    fn sub(self, rhs: &AlgMat) -> AlgMat {
        AlgMat(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] - &rhs.0[i][j])))
    }
}

impl Neg for &AlgMat {
    type Output = AlgMat;
    fn neg(self) -> AlgMat {
        AlgMat(std::array::from_fn(|i| std::array::from_fn(|j| -&self.0[i][j])))
    }
}

impl fmt::Debug for AlgMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = row.iter().map(ToString::to_string).collect();
            f.write_str(&row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// Matrix commutator `XY − YX`.
pub fn bracket(x: &AlgMat, y: &AlgMat) -> AlgMat {
    &x.matmul(y) - &y.matmul(x)
}

/// Index `1..=8` of a basis element `e_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex(u8);

impl BasisIndex {
    pub fn new(i: usize) -> Result<Self> {
        if (1..=8).contains(&i) {
            Ok(Self(i as u8))
        } else {
            Err(Error::BasisIndex(i))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = BasisIndex> {
        (1..=8).map(BasisIndex)
    }
}

/// Coefficient vector over the first `N` basis elements.
///
/// `N = 6` is a tangent vector in 𝔪 (see [`MVec`]), `N = 8` a general element
/// of sl(3,ℝ) (see [`FullVec`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<const N: usize>(pub [FieldElem; N]);

/// Element of 𝔪 over `(e₁, …, e₆)`.
pub type MVec = Vector<6>;
/// Element of sl(3,ℝ) over `(e₁, …, e₈)`.
pub type FullVec = Vector<8>;

impl<const N: usize> Vector<N> {
    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| FieldElem::zero()))
    }

    /// The basis vector `e_i`, 1-based.
    pub fn basis(i: usize) -> Self {
        assert!((1..=N).contains(&i), "basis index {i} out of range for dimension {N}");
        let mut v = Self::zero();
        v.0[i - 1] = FieldElem::one();
        v
    }

    pub fn from_coeffs(coeffs: [FieldElem; N]) -> Self {
        Self(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElem; N] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElem::is_zero)
    }

    pub fn scale(&self, k: &FieldElem) -> Self {
        Self(std::array::from_fn(|i| {
            if self.0[i].is_zero() {
                FieldElem::zero()
            } else {
                &self.0[i] * k
            }
        }))
    }

    pub fn to_matrix(&self) -> AlgMat {
        let basis = &structure().basis;
        let mut out = AlgMat::zero();
        for (c, e) in self.0.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            out = &out + &e.scale(c);
        }
        out
    }

    pub fn to_f64(&self) -> [f64; N] {
        std::array::from_fn(|i| self.0[i].to_f64())
    }
}

impl MVec {
    pub fn to_full(&self) -> FullVec {
        Vector(std::array::from_fn(|i| if i < 6 { self.0[i].clone() } else { FieldElem::zero() }))
    }

    /// Decomposes a traceless matrix and keeps its 𝔪-component.
    pub fn from_matrix(x: &AlgMat) -> Result<Self> {
        Ok(decompose(x)?.m_part())
    }
}

impl FullVec {
    pub fn m_part(&self) -> MVec {
        Vector(std::array::from_fn(|i| self.0[i].clone()))
    }

    pub fn h_part(&self) -> FullVec {
        Vector(std::array::from_fn(|i| if i >= 6 { self.0[i].clone() } else { FieldElem::zero() }))
    }
}

impl<const N: usize> Index<usize> for Vector<N> {
    type Output = FieldElem;
    fn index(&self, i: usize) -> &FieldElem {
        &self.0[i]
    }
}

impl<const N: usize> IndexMut<usize> for Vector<N> {
    fn index_mut(&mut self, i: usize) -> &mut FieldElem {
        &mut self.0[i]
    }
}

impl<const N: usize> Add for &Vector<N> {
    type Output = Vector<N>;
    fn add(self, rhs: &Vector<N>) -> Vector<N> {
        Vector(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl<const N: usize> Add for Vector<N> {
    type Output = Vector<N>;
    fn add(self, rhs: Vector<N>) -> Vector<N> {
        &self + &rhs
    }
}

impl<const N: usize> Sub for &Vector<N> {
    type Output = Vector<N>;
    fn sub(self, rhs: &Vector<N>) -> Vector<N> {
        Vector(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl<const N: usize> Sub for Vector<N> {
    type Output = Vector<N>;
    fn sub(self, rhs: Vector<N>) -> Vector<N> {
        &self - &rhs
    }
}

impl<const N: usize> Neg for &Vector<N> {
    type Output = Vector<N>;
    fn neg(self) -> Vector<N> {
        Vector(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl<const N: usize> Neg for Vector<N> {
    type Output = Vector<N>;
    fn neg(self) -> Vector<N> {
        -&self
    }
}

/// Renders as a linear combination, e.g. `(-4)e1 + (2)e5`; `0` for the zero vector.
impl<const N: usize> fmt::Display for Vector<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    format!("e{}", i + 1)
                } else if (-c).is_one() {
                    format!("-e{}", i + 1)
                } else {
                    format!("({c})e{}", i + 1)
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

impl<const N: usize> fmt::Debug for Vector<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector<{N}>({self})")
    }
}

impl<const N: usize> Serialize for Vector<N> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Subspaces of the reductive splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SubspaceTag {
    H,
    M1,
    M2,
    M3,
    M,
}

impl SubspaceTag {
    /// 1-based basis indices spanning the subspace.
    pub fn indices(self) -> &'static [usize] {
        match self {
            SubspaceTag::H => &[7, 8],
            SubspaceTag::M1 => &[1, 2],
            SubspaceTag::M2 => &[3, 4],
            SubspaceTag::M3 => &[5, 6],
            SubspaceTag::M => &[1, 2, 3, 4, 5, 6],
        }
    }

    pub fn of_index(i: usize) -> SubspaceTag {
        match i {
            1 | 2 => SubspaceTag::M1,
            3 | 4 => SubspaceTag::M2,
            5 | 6 => SubspaceTag::M3,
            _ => SubspaceTag::H,
        }
    }
}

struct Structure {
    basis: [AlgMat; 8],
    gram: Matrix,
    gram_inv: Matrix,
    /// Nonzero Gram entries `(i, j, ⟨e_i, e_j⟩)`, 0-based.
    gram_sparse: Vec<(usize, usize, FieldElem)>,
}

fn structure() -> &'static Structure {
    static CELL: OnceLock<Structure> = OnceLock::new();
    CELL.get_or_init(|| {
        let basis: [AlgMat; 8] = std::array::from_fn(|i| literal_basis(i + 1));
        let gram = Matrix::from_fn(8, 8, |i, j| trace_form(&basis[i], &basis[j]));
        let gram_inv = gram.inverse().expect("trace form is nondegenerate on sl(3,R)");
        let gram_sparse = (0..8)
            .flat_map(|i| (0..8).map(move |j| (i, j)))
            .filter(|&(i, j)| !gram[(i, j)].is_zero())
            .map(|(i, j)| (i, j, gram[(i, j)].clone()))
            .collect();
        Structure {
            basis,
            gram,
            gram_inv,
            gram_sparse,
        }
    })
}

fn literal_basis(i: usize) -> AlgMat {
    let z = FieldElem::zero;
    let one = FieldElem::one;
    let r2 = FieldElem::sqrt2;
    let mut m: [[FieldElem; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| z()));
    match i {
        1 => {
            m[0][0] = one();
            m[1][1] = -one();
        }
        2 => {
            m[0][1] = one();
            m[1][0] = one();
        }
        3 => m[0][2] = r2(),
        4 => m[1][2] = r2(),
        5 => m[2][0] = -r2(),
        6 => m[2][1] = -r2(),
        7 => {
            let inv_r3 = FieldElem::sqrt3().scale(&num_rational::BigRational::new(1.into(), 3.into()));
            m[0][0] = inv_r3.clone();
            m[1][1] = inv_r3.clone();
            m[2][2] = -(&inv_r3 + &inv_r3);
        }
        8 => {
            m[0][1] = one();
            m[1][0] = -one();
        }
        _ => unreachable!("basis index checked by caller"),
    }
    AlgMat(m)
}

/// The literal basis matrix `e_i`.
pub fn basis_matrix(i: BasisIndex) -> AlgMat {
    structure().basis[i.get() - 1].clone()
}

/// `−½ Tr(XY)` on matrices.
pub fn trace_form(x: &AlgMat, y: &AlgMat) -> FieldElem {
    x.matmul(y).trace().scale(&num_rational::BigRational::new((-1).into(), 2.into()))
}

/// Gram matrix `⟨e_i, e_j⟩` on sl(3,ℝ), computed from the trace form.
pub fn gram() -> &'static Matrix {
    &structure().gram
}

/// Gram matrix restricted to 𝔪 (indices 1..=6).
pub fn gram_m() -> Matrix {
    let g = gram();
    Matrix::from_fn(6, 6, |i, j| g[(i, j)].clone())
}

/// The bi-invariant metric in coordinates. Coordinates of an [`MVec`] are the
/// first six of a [`FullVec`], so one routine serves both.
pub fn metric<const N: usize>(x: &Vector<N>, y: &Vector<N>) -> FieldElem {
    let mut acc = FieldElem::zero();
    for (i, j, g) in &structure().gram_sparse {
        if *i >= N || *j >= N || x.0[*i].is_zero() || y.0[*j].is_zero() {
            continue;
        }
        acc += &(&x.0[*i] * &y.0[*j]) * g;
    }
    acc
}

/// Unique coordinates of a traceless matrix over `e₁ … e₈`.
pub fn decompose(x: &AlgMat) -> Result<FullVec> {
    let tr = x.trace();
    if !tr.is_zero() {
        return Err(Error::NonZeroTrace(tr.to_string()));
    }
    let s = structure();
    let pairings: Vec<FieldElem> = s.basis.iter().map(|e| trace_form(e, x)).collect();
    let coeffs = s.gram_inv.mul_vec(&pairings);
    let v = Vector(std::array::from_fn(|i| coeffs[i].clone()));
    debug_assert_eq!(&v.to_matrix(), x);
    Ok(v)
}

/// Component of a traceless matrix in the given subspace.
pub fn project(x: &AlgMat, tag: SubspaceTag) -> Result<AlgMat> {
    let full = decompose(x)?;
    let mut kept = FullVec::zero();
    for &i in tag.indices() {
        kept.0[i - 1] = full.0[i - 1].clone();
    }
    Ok(kept.to_matrix())
}

/// `[X, Y]` of two 𝔪-vectors, in full coordinates.
pub fn bracket_vec<const N: usize, const M: usize>(x: &Vector<N>, y: &Vector<M>) -> FullVec {
    decompose(&bracket(&x.to_matrix(), &y.to_matrix())).expect("commutators are traceless")
}

/// Infinitesimal isotropy action: `[e_i, X]` projected to 𝔪, for `i ∈ {7, 8}`.
pub fn ad_action(i: BasisIndex, x: &MVec) -> Result<MVec> {
    if i.get() < 7 {
        return Err(Error::NotIsotropy(i.get()));
    }
    Ok(bracket_vec(&FullVec::basis(i.get()), x).m_part())
}

/// Float coordinates over `e₁ … e₈` of a traceless real matrix.
pub fn decompose_f64(x: &Mat3) -> [f64; 8] {
    let s = structure();
    let pairings: Vec<f64> = s
        .basis
        .iter()
        .map(|e| {
            let prod = numeric::mat_mul(&e.to_f64(), x);
            -0.5 * (prod[0][0] + prod[1][1] + prod[2][2])
        })
        .collect();
    std::array::from_fn(|i| (0..8).map(|j| s.gram_inv[(i, j)].to_f64() * pairings[j]).sum())
}

/// `Ad(h) X = h X h⁻¹` in floating point, with `h = h(t, s)` the isotropy element.
pub fn ad_numeric(t: f64, s: f64, x: &MVec) -> [f64; 6] {
    let h = numeric::isotropy_element(t, s);
    let h_inv = numeric::inverse(&h).expect("isotropy elements are invertible");
    let conj = numeric::mat_mul(&numeric::mat_mul(&h, &x.to_matrix().to_f64()), &h_inv);
    let c = decompose_f64(&conj);
    std::array::from_fn(|i| c[i])
}

/// The closed rotation/scaling formulas for `Ad(h)` on each `𝔪_i`.
///
/// On `(e₁, e₂)` a rotation by `2s`; on `(e₃, e₄)` a rotation by `s` scaled by
/// `e^{3t}`; on `(e₅, e₆)` a rotation by `s` scaled by `e^{−3t}`. The matrix
/// acts on the right of the row `(e_a, e_b)`, so `Ad(h)e_a = cos·e_a − sin·e_b`.
pub fn ad_closed_form(t: f64, s: f64, x: &MVec) -> [f64; 6] {
    let c = x.to_f64();
    let mut out = [0.0; 6];
    for (pair, angle, scale) in [
        (0usize, 2.0 * s, 1.0),
        (2, s, (3.0 * t).exp()),
        (4, s, (-3.0 * t).exp()),
    ] {
        let (sin, cos) = angle.sin_cos();
        let (xa, xb) = (c[pair], c[pair + 1]);
        out[pair] = scale * (cos * xa + sin * xb);
        out[pair + 1] = scale * (-sin * xa + cos * xb);
    }
    out
}

/// Differential at the base point of `[A] ↦ [(Aᵗ)⁻¹]`, i.e. `X ↦ −Xᵗ`.
pub fn dphi(x: &MVec) -> MVec {
    MVec::from_matrix(&(-&x.to_matrix().transpose())).expect("transpose preserves the trace")
}

/// Structure constants `c_{ij}^k` with `[e_i, e_j] = Σ_k c_{ij}^k e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureConstants {
    /// `table[i][j][k]` for 0-based `i, j, k`.
    pub table: Vec<Vec<Vec<FieldElem>>>,
}

impl StructureConstants {
    pub fn compute() -> Self {
        let table = (1..=8)
            .map(|i| {
                (1..=8)
                    .map(|j| bracket_vec(&FullVec::basis(i), &FullVec::basis(j)).0.to_vec())
                    .collect()
            })
            .collect();
        Self { table }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &FieldElem {
        &self.table[i - 1][j - 1][k - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> AlgMat {
        basis_matrix(BasisIndex::new(i).unwrap())
    }

    fn m(i: usize) -> MVec {
        MVec::basis(i)
    }

    #[test]
    fn basis_literals() {
        let one = FieldElem::one();
        let zero = FieldElem::zero();
        assert_eq!(e(1).0[0][0], one);
        assert_eq!(e(1).0[1][1], -&one);
        assert_eq!(e(1).0[2][2], zero);
        assert_eq!(e(5).0[2][0], -FieldElem::sqrt2());
        let inv_r3: FieldElem = "(1/3)√3".parse().unwrap();
        assert_eq!(e(7).0[0][0], inv_r3);
        assert_eq!(e(7).0[2][2], "-(2/3)√3".parse().unwrap());
        for i in BasisIndex::all() {
            assert!(basis_matrix(i).trace().is_zero());
        }
        assert!(BasisIndex::new(0).is_err());
        assert!(BasisIndex::new(9).is_err());
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&e(1), &e(2)), e(8).scale(&FieldElem::from_int(2)));
        assert!(bracket(&e(3), &e(4)).is_zero());
        assert!(bracket(&e(6), &e(6)).is_zero());
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&e(7)).unwrap(), FullVec::basis(7));
        let mut expected = FullVec::zero();
        expected[7] = FieldElem::from_int(2);
        assert_eq!(decompose(&bracket(&e(1), &e(2))).unwrap(), expected);
        assert!(decompose(&AlgMat::zero()).unwrap().is_zero());
        assert!(matches!(decompose(&AlgMat::identity()), Err(Error::NonZeroTrace(_))));
    }

    #[test]
    fn project_examples() {
        assert!(project(&e(8), SubspaceTag::M).unwrap().is_zero());
        assert_eq!(project(&(&e(1) + &e(7)), SubspaceTag::M1).unwrap(), e(1));
        assert_eq!(project(&bracket(&e(1), &e(3)), SubspaceTag::M).unwrap(), e(3));
        assert!(project(&AlgMat::identity(), SubspaceTag::H).is_err());
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric(&m(1), &m(1)), FieldElem::from_int(-1));
        assert_eq!(metric(&m(3), &m(5)), FieldElem::one());
        assert!(metric(&m(3), &m(3)).is_zero());
    }

    #[test]
    fn metric_component_table() {
        let g = gram();
        for i in 0..8 {
            for j in 0..8 {
                let expected = match (i + 1, j + 1) {
                    (1, 1) | (2, 2) | (7, 7) => -1,
                    (3, 5) | (5, 3) | (4, 6) | (6, 4) | (8, 8) => 1,
                    _ => 0,
                };
                assert_eq!(g[(i, j)], FieldElem::from_int(expected), "<e{}, e{}>", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn metric_matches_trace_form_on_mixed_vectors() {
        let x = FullVec::from_coeffs(std::array::from_fn(|i| FieldElem::from_int(i as i64 - 3)));
        let y = FullVec::from_coeffs(std::array::from_fn(|i| FieldElem::ratio(1, i as i64 + 1)));
        assert_eq!(metric(&x, &y), trace_form(&x.to_matrix(), &y.to_matrix()));
    }

    #[test]
    fn ad_action_examples() {
        let seven = BasisIndex::new(7).unwrap();
        let eight = BasisIndex::new(8).unwrap();
        assert_eq!(ad_action(eight, &m(1)).unwrap(), m(2).scale(&FieldElem::from_int(-2)));
        assert_eq!(ad_action(seven, &m(3)).unwrap(), m(3).scale(&FieldElem::sqrt3()));
        assert!(ad_action(BasisIndex::new(2).unwrap(), &m(1)).is_err());
    }

    #[test]
    fn ad_numeric_examples() {
        let close = |a: [f64; 6], b: [f64; 6]| a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-12);
        assert!(close(ad_numeric(0.0, 0.0, &m(1)), [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
        assert!(close(
            ad_numeric(0.0, std::f64::consts::FRAC_PI_2, &m(1)),
            [-1.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        ));
        assert!(close(
            ad_numeric(2f64.ln() / 3.0, 0.0, &m(3)),
            [0.0, 0.0, 2.0, 0.0, 0.0, 0.0]
        ));
    }

    #[test]
    fn dphi_examples() {
        assert_eq!(dphi(&m(3)), m(5));
        assert_eq!(dphi(&m(1)), -m(1));
        let x = MVec::from_coeffs(std::array::from_fn(|i| FieldElem::ratio(i as i64 + 1, 7)));
        assert_eq!(dphi(&dphi(&x)), x);
    }

    #[test]
    fn vector_matrix_roundtrip() {
        let x = FullVec::from_coeffs(std::array::from_fn(|i| {
            &FieldElem::ratio(i as i64, 3) + &FieldElem::sqrt6()
        }));
        assert_eq!(decompose(&x.to_matrix()).unwrap(), x);
    }
}
