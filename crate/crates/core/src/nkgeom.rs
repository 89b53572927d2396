//! Invariant tensors, Levi-Civita connection and curvature at the base point.
//!
//! Everything lives on 𝔪 ≅ T_o(SL(3,ℝ)/H). By homogeneity the base point is
//! enough: all tensors here are left-invariant.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::liealg::{self, bracket_vec, gram_m, metric, BasisIndex, MVec};
use crate::linalg::Matrix;
use crate::par::{self, Execution};
use crate::sweep::Sweep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TensorName {
    /// The nearly Kähler almost complex structure.
    J,
    /// The integrable complex structure.
    J1,
    /// The F-structure, `F³ + F = 0`.
    F,
}

/// A linear endomorphism of 𝔪; column `j` holds the image of `e_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTensor {
    pub name: TensorName,
    pub matrix: Matrix,
}

impl InvariantTensor {
    fn from_images(name: TensorName, images: [(usize, i64); 6]) -> Self {
        let mut matrix = Matrix::zeros(6, 6);
        for (col, (row, sign)) in images.iter().enumerate() {
            if *sign != 0 {
                matrix[(row - 1, col)] = FieldElem::from_int(*sign);
            }
        }
        Self { name, matrix }
    }

    pub fn apply(&self, x: &MVec) -> MVec {
        let v = self.matrix.mul_vec(x.coeffs());
        MVec::from_coeffs(std::array::from_fn(|i| v[i].clone()))
    }
}

/// The tensor with the given name. Images of `e₁ … e₆` follow the defining
/// lists; the images of even-index vectors for `J`, `J₁` are forced by
/// `J² = −Id`.
pub fn tensor(name: TensorName) -> &'static InvariantTensor {
    static J: OnceLock<InvariantTensor> = OnceLock::new();
    static J1: OnceLock<InvariantTensor> = OnceLock::new();
    static F: OnceLock<InvariantTensor> = OnceLock::new();
    match name {
        // Je₁ = −e₂, Je₃ = e₄, Je₅ = e₆
        TensorName::J => J.get_or_init(|| {
            InvariantTensor::from_images(name, [(2, -1), (1, 1), (4, 1), (3, -1), (6, 1), (5, -1)])
        }),
        // J₁e₁ = e₂, J₁e₃ = e₄, J₁e₅ = e₆
        TensorName::J1 => J1.get_or_init(|| {
            InvariantTensor::from_images(name, [(2, 1), (1, -1), (4, 1), (3, -1), (6, 1), (5, -1)])
        }),
        // Fe₁ = Fe₂ = 0, Fe₃ = e₄, Fe₄ = −e₃, Fe₅ = −e₆, Fe₆ = e₅
        TensorName::F => F.get_or_init(|| {
            InvariantTensor::from_images(name, [(1, 0), (2, 0), (4, 1), (3, -1), (6, -1), (5, 1)])
        }),
    }
}

pub fn apply_tensor(name: TensorName, x: &MVec) -> MVec {
    tensor(name).apply(x)
}

pub fn j(x: &MVec) -> MVec {
    apply_tensor(TensorName::J, x)
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn rat(n: i64, d: i64) -> FieldElem {
    FieldElem::ratio(n, d)
}

/// Levi-Civita connection at the origin of a naturally reductive space:
/// `∇_X Y = ½ [X, Y]_𝔪`.
pub fn nabla(x: &MVec, y: &MVec) -> MVec {
    let half = FieldElem::from_rational(half());
    bracket_vec(x, y).m_part().scale(&half)
}

/// `(∇_X T)Y = ∇_X(TY) − T(∇_X Y)`.
pub fn nabla_tensor(name: TensorName, x: &MVec, y: &MVec) -> MVec {
    let t = tensor(name);
    &nabla(x, &t.apply(y)) - &t.apply(&nabla(x, y))
}

pub fn nabla_j(x: &MVec, y: &MVec) -> MVec {
    nabla_tensor(TensorName::J, x, y)
}

/// Accumulates `Σ coeff · vector`, skipping zero coefficients.
struct Combination(MVec);

impl Combination {
    fn new() -> Self {
        Self(MVec::zero())
    }

    fn add(&mut self, coeff: FieldElem, v: &MVec) {
        if !coeff.is_zero() {
            self.0 = &self.0 + &v.scale(&coeff);
        }
    }
}

/// The curvature tensor `R̄(X,Y)Z` from its closed expression in `g`, `J`,
/// `J₁` and `F`:
///
/// ```text
///   5/2 (g(Y,Z)X − g(X,Z)Y)
/// − 3/4 (g(JY,Z)JX − g(JX,Z)JY + 2g(X,JY)JZ)
/// + 9/4 (g(Y,J₁JZ)J₁JX − g(X,J₁JZ)J₁JY)
/// + 3/4 (g(J₁JY,Z)X − g(J₁JX,Z)Y + g(Y,Z)J₁JX − g(X,Z)J₁JY)
/// − 3   (g(Y,FZ)FX − g(X,FZ)FY)
/// ```
pub fn curvature(x: &MVec, y: &MVec, z: &MVec) -> MVec {
    let jt = tensor(TensorName::J);
    let j1 = tensor(TensorName::J1);
    let ft = tensor(TensorName::F);
    let k = |v: &MVec| j1.apply(&jt.apply(v));

    let (jx, jy, jz) = (jt.apply(x), jt.apply(y), jt.apply(z));
    let (kx, ky, kz) = (k(x), k(y), k(z));
    let (fx, fy, fz) = (ft.apply(x), ft.apply(y), ft.apply(z));
    let g_yz = metric(y, z);
    let g_xz = metric(x, z);

    let mut out = Combination::new();
    let c = rat(5, 2);
    out.add(&c * &g_yz, x);
    out.add(-(&c * &g_xz), y);

    let c = rat(-3, 4);
    out.add(&c * &metric(&jy, z), &jx);
    out.add(-(&c * &metric(&jx, z)), &jy);
    out.add(&(&c * &FieldElem::from_int(2)) * &metric(x, &jy), &jz);

    let c = rat(9, 4);
    out.add(&c * &metric(y, &kz), &kx);
    out.add(-(&c * &metric(x, &kz)), &ky);

    let c = rat(3, 4);
    out.add(&c * &metric(&ky, z), x);
    out.add(-(&c * &metric(&kx, z)), y);
    out.add(&c * &g_yz, &kx);
    out.add(-(&c * &g_xz), &ky);

    let c = FieldElem::from_int(-3);
    out.add(&c * &metric(y, &fz), &fx);
    out.add(-(&c * &metric(x, &fz)), &fy);
    out.0
}

/// The two standard sign conventions for the Riemann tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SignConvention {
    /// `R(X,Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_[X,Y]`
    CommutatorMinusBracket,
    /// The negative of the above.
    BracketMinusCommutator,
}

impl SignConvention {
    pub const ALL: [SignConvention; 2] = [
        SignConvention::CommutatorMinusBracket,
        SignConvention::BracketMinusCommutator,
    ];

    pub fn formula(self) -> &'static str {
        match self {
            SignConvention::CommutatorMinusBracket => "R(X,Y) = [∇_X, ∇_Y] - ∇_[X,Y]",
            SignConvention::BracketMinusCommutator => "R(X,Y) = ∇_[X,Y] - [∇_X, ∇_Y]",
        }
    }
}

/// Curvature of the naturally reductive space from brackets alone:
/// `∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]_𝔪} Z − [[X,Y]_𝔥, Z]`, with the overall
/// sign given by `convention`.
pub fn curvature_oracle_with(convention: SignConvention, x: &MVec, y: &MVec, z: &MVec) -> MVec {
    let xy = bracket_vec(x, y);
    let isotropy_term = bracket_vec(&xy.h_part(), z).m_part();
    let r = &(&(&nabla(x, &nabla(y, z)) - &nabla(y, &nabla(x, z))) - &nabla(&xy.m_part(), z)) - &isotropy_term;
    match convention {
        SignConvention::CommutatorMinusBracket => r,
        SignConvention::BracketMinusCommutator => -r,
    }
}

/// Finds the sign convention under which the bracket formula reproduces
/// [`curvature`] on all 216 basis triples. Errors unless exactly one does.
pub fn resolve_sign_convention() -> Result<SignConvention> {
    static CELL: OnceLock<Result<SignConvention>> = OnceLock::new();
    CELL.get_or_init(|| {
        let table = basis_curvatures();
        let matching: Vec<SignConvention> = SignConvention::ALL
            .into_iter()
            .filter(|&conv| {
                basis_triples().iter().zip(table.iter()).all(|(&(i, j, k), r)| {
                    &curvature_oracle_with(conv, &MVec::basis(i), &MVec::basis(j), &MVec::basis(k)) == r
                })
            })
            .collect();
        match matching.as_slice() {
            [one] => Ok(*one),
            [] => Err(Error::SignConvention("neither convention matches".into())),
            _ => Err(Error::SignConvention("both conventions match".into())),
        }
    })
    .clone()
}

/// The bracket-formula curvature under the resolved sign convention.
pub fn curvature_oracle(x: &MVec, y: &MVec, z: &MVec) -> Result<MVec> {
    Ok(curvature_oracle_with(resolve_sign_convention()?, x, y, z))
}

/// Sectional curvature `⟨R̄(X,Y)Y, X⟩ / (⟨X,X⟩⟨Y,Y⟩ − ⟨X,Y⟩²)`.
pub fn sectional(x: &MVec, y: &MVec) -> Result<FieldElem> {
    let denom = &(&metric(x, x) * &metric(y, y)) - &{
        let xy = metric(x, y);
        &xy * &xy
    };
    if denom.is_zero() {
        return Err(Error::DegeneratePlane);
    }
    metric(&curvature(x, y, y), x).checked_div(&denom)
}

/// `Ric(Y, Z) = Σ g^{ij} ⟨R̄(e_i, Y)Z, e_j⟩` on the basis of 𝔪.
pub fn ricci() -> Matrix {
    let g_inv = gram_m().inverse().expect("metric on m is nondegenerate");
    Matrix::from_fn(6, 6, |y, z| {
        let (ey, ez) = (MVec::basis(y + 1), MVec::basis(z + 1));
        let mut acc = FieldElem::zero();
        for i in 0..6 {
            let r = curvature(&MVec::basis(i + 1), &ey, &ez);
            for jdx in 0..6 {
                if g_inv[(i, jdx)].is_zero() {
                    continue;
                }
                acc += &g_inv[(i, jdx)] * &metric(&r, &MVec::basis(jdx + 1));
            }
        }
        acc
    })
}

/// The constant `c` with `Ric = c·g` on 𝔪, or `None` if the metric is not Einstein.
pub fn einstein_constant() -> Option<FieldElem> {
    let ric = ricci();
    let g = gram_m();
    let (i, jdx) = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .find(|&(i, j)| !g[(i, j)].is_zero())?;
    let c = ric[(i, jdx)].checked_div(&g[(i, jdx)]).ok()?;
    let proportional = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .all(|(i, j)| ric[(i, j)] == &c * &g[(i, j)]);
    proportional.then_some(c)
}

/// All 216 1-based index triples over 𝔪.
pub fn basis_triples() -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(216);
    for i in 1..=6 {
        for j in 1..=6 {
            for k in 1..=6 {
                out.push((i, j, k));
            }
        }
    }
    out
}

fn triple_slot(i: usize, j: usize, k: usize) -> usize {
    ((i - 1) * 6 + (j - 1)) * 6 + (k - 1)
}

/// `R̄(e_i, e_j)e_k` for every basis triple, in [`basis_triples`] order.
pub fn basis_curvatures() -> &'static [MVec] {
    static CELL: OnceLock<Vec<MVec>> = OnceLock::new();
    CELL.get_or_init(|| {
        par::map(&basis_triples(), Execution::Parallel, |&(i, j, k)| {
            curvature(&MVec::basis(i), &MVec::basis(j), &MVec::basis(k))
        })
    })
}

/// `(∇_X T)Y + (∇_Y T)X = 0` on all 36 basis pairs.
pub fn skew_nabla_sweep(name: TensorName) -> Sweep {
    let pairs: Vec<(usize, usize)> = (1..=6).flat_map(|i| (1..=6).map(move |j| (i, j))).collect();
    Sweep::from_results(par::map(&pairs, Execution::Parallel, |&(i, jdx)| {
        let (x, y) = (MVec::basis(i), MVec::basis(jdx));
        let sum = &nabla_tensor(name, &x, &y) + &nabla_tensor(name, &y, &x);
        (!sum.is_zero()).then(|| format!("e{i},e{jdx}: {sum}"))
    }))
}

/// Closed formula against the bracket formula on all basis triples.
pub fn oracle_agreement_sweep(exec: Execution) -> Result<Sweep> {
    let conv = resolve_sign_convention()?;
    let table = basis_curvatures();
    Ok(Sweep::from_results(par::map(&basis_triples(), exec, |&(i, j, k)| {
        let o = curvature_oracle_with(conv, &MVec::basis(i), &MVec::basis(j), &MVec::basis(k));
        let r = &table[triple_slot(i, j, k)];
        (&o != r).then(|| format!("e{i},e{j},e{k}: closed {r} vs oracle {o}"))
    })))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvatureSymmetries {
    pub antisymmetry: Sweep,
    pub metric_skew: Sweep,
    pub pair_symmetry: Sweep,
    pub first_bianchi: Sweep,
}

impl CurvatureSymmetries {
    pub fn passed(&self) -> bool {
        self.antisymmetry.passed()
            && self.metric_skew.passed()
            && self.pair_symmetry.passed()
            && self.first_bianchi.passed()
    }
}

/// The four algebraic curvature symmetries on exhaustive basis tuples.
pub fn curvature_symmetries(exec: Execution) -> CurvatureSymmetries {
    let table = basis_curvatures();
    let r = |i: usize, j: usize, k: usize| &table[triple_slot(i, j, k)];
    let rw = |i, j, k, l: usize| metric(r(i, j, k), &MVec::basis(l));
    let triples = basis_triples();
    let quads: Vec<(usize, usize, usize, usize)> = triples
        .iter()
        .flat_map(|&(i, j, k)| (1..=6).map(move |l| (i, j, k, l)))
        .collect();

    let antisymmetry = Sweep::from_results(par::map(&triples, exec, |&(i, j, k)| {
        let s = r(i, j, k) + r(j, i, k);
        (!s.is_zero()).then(|| format!("R(e{i},e{j})e{k} + R(e{j},e{i})e{k} = {s}"))
    }));
    let metric_skew = Sweep::from_results(par::map(&quads, exec, |&(i, j, k, l)| {
        let s = &rw(i, j, k, l) + &rw(i, j, l, k);
        (!s.is_zero()).then(|| format!("<R(e{i},e{j})e{k},e{l}> + <R(e{i},e{j})e{l},e{k}> = {s}"))
    }));
    let pair_symmetry = Sweep::from_results(par::map(&quads, exec, |&(i, j, k, l)| {
        let s = &rw(i, j, k, l) - &rw(k, l, i, j);
        (!s.is_zero()).then(|| format!("<R(e{i},e{j})e{k},e{l}> - <R(e{k},e{l})e{i},e{j}> = {s}"))
    }));
    let first_bianchi = Sweep::from_results(par::map(&triples, exec, |&(i, j, k)| {
        let s = &(r(i, j, k) + r(j, k, i)) + r(k, i, j);
        (!s.is_zero()).then(|| format!("Bianchi at e{i},e{j},e{k}: {s}"))
    }));
    CurvatureSymmetries {
        antisymmetry,
        metric_skew,
        pair_symmetry,
        first_bianchi,
    }
}

/// Algebraic identities of `J`, `J₁`, `F` on the basis of 𝔪: squares,
/// `F³ + F = 0`, pairwise commutation, metric compatibility, symmetry of `F`,
/// and commutation with the infinitesimal isotropy action.
pub fn tensor_identities() -> Vec<(String, Sweep)> {
    use TensorName::*;
    let basis: Vec<MVec> = (1..=6).map(MVec::basis).collect();
    let ap = |n: TensorName, v: &MVec| apply_tensor(n, v);
    let per_vector = |f: &dyn Fn(&MVec) -> Option<String>| {
        Sweep::from_results(basis.iter().map(f).collect())
    };
    let per_pair = |f: &dyn Fn(&MVec, &MVec) -> bool| {
        let mut results = Vec::new();
        for (i, x) in basis.iter().enumerate() {
            for (k, y) in basis.iter().enumerate() {
                results.push((!f(x, y)).then(|| format!("e{},e{}", i + 1, k + 1)));
            }
        }
        Sweep::from_results(results)
    };

    let mut out = Vec::new();
    for n in [J, J1] {
        out.push((
            format!("{n:?}^2 = -Id"),
            per_vector(&|x| {
                let y = ap(n, &ap(n, x));
                (y != -x).then(|| format!("{x} -> {y}"))
            }),
        ));
        out.push((
            format!("{n:?} metric compatible"),
            per_pair(&|x, y| metric(&ap(n, x), &ap(n, y)) == metric(x, y)),
        ));
    }
    out.push((
        "F^3 + F = 0".into(),
        per_vector(&|x| {
            let y = &ap(F, &ap(F, &ap(F, x))) + &ap(F, x);
            (!y.is_zero()).then(|| format!("{x} -> {y}"))
        }),
    ));
    out.push((
        "F symmetric".into(),
        per_pair(&|x, y| metric(&ap(F, x), y) == metric(x, &ap(F, y))),
    ));
    for (a, b) in [(J, J1), (J, F), (J1, F)] {
        out.push((
            format!("{a:?} {b:?} commute"),
            per_vector(&|x| {
                let ab = ap(a, &ap(b, x));
                let ba = ap(b, &ap(a, x));
                (ab != ba).then(|| format!("{x}: {ab} vs {ba}"))
            }),
        ));
    }
    out.push((
        "J J1 F triple product order-independent".into(),
        per_vector(&|x| {
            let orders = [[J, J1, F], [J, F, J1], [J1, J, F], [J1, F, J], [F, J, J1], [F, J1, J]];
            let images: Vec<MVec> = orders
                .iter()
                .map(|o| ap(o[0], &ap(o[1], &ap(o[2], x))))
                .collect();
            images.windows(2).any(|w| w[0] != w[1]).then(|| format!("{x}"))
        }),
    ));
    for n in [J, J1, F] {
        for h in [7usize, 8] {
            let hi = BasisIndex::new(h).expect("isotropy index");
            out.push((
                format!("{n:?} commutes with ad(e{h})"),
                per_vector(&|x| {
                    let a = ap(n, &liealg::ad_action(hi, x).expect("isotropy index"));
                    let b = liealg::ad_action(hi, &ap(n, x)).expect("isotropy index");
                    (a != b).then(|| format!("{x}: {a} vs {b}"))
                }),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> MVec {
        MVec::basis(i)
    }

    fn k(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(j(&e(1)), -e(2));
        assert!(apply_tensor(TensorName::F, &e(1)).is_zero());
        assert_eq!(apply_tensor(TensorName::J1, &e(2)), -e(1));
        assert_eq!(j(&e(3)), e(4));
        assert_eq!(j(&e(5)), e(6));
        assert_eq!(apply_tensor(TensorName::F, &e(5)), -e(6));
        assert_eq!(apply_tensor(TensorName::F, &e(6)), e(5));
    }

    #[test]
    fn nabla_examples() {
        assert!(nabla(&e(1), &e(2)).is_zero());
        assert_eq!(nabla(&e(1), &e(3)), e(3).scale(&FieldElem::ratio(1, 2)));
        let x = &e(1) + &e(4);
        assert!(nabla(&x, &x).is_zero());
    }

    #[test]
    fn nabla_j_examples() {
        assert!(nabla_j(&e(1), &e(1)).is_zero());
        assert_eq!(nabla_j(&e(1), &e(3)), -e(4));
        assert_eq!(nabla_j(&e(3), &e(1)), e(4));
    }

    #[test]
    fn curvature_examples() {
        assert_eq!(curvature(&e(1), &e(2), &e(2)), e(1).scale(&k(-4)));
        let x = &e(2) + &e(5);
        assert!(curvature(&x, &x, &e(3)).is_zero());
        for eps in [-1, 1] {
            let x = &e(1).scale(&k(eps)) + &e(5);
            let jx = j(&x);
            let expected = &e(1).scale(&k(-4 * eps)) + &e(5).scale(&k(2));
            assert_eq!(curvature(&x, &jx, &jx), expected, "eps = {eps}");
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(curvature_oracle(&e(1), &e(2), &e(2)).unwrap(), e(1).scale(&k(-4)));
        assert!(curvature_oracle(&e(3), &e(3), &e(6)).unwrap().is_zero());
        assert_eq!(resolve_sign_convention().unwrap(), SignConvention::CommutatorMinusBracket);
    }

    #[test]
    fn sectional_examples() {
        assert_eq!(sectional(&e(1), &e(2)).unwrap(), k(4));
        let inv_r2 = FieldElem::sqrt2().inv().unwrap();
        let x = (&e(3) + &e(5)).scale(&inv_r2);
        let y = (&e(4) + &e(6)).scale(&inv_r2);
        assert_eq!(sectional(&x, &y).unwrap(), k(1));
        assert_eq!(sectional(&e(3), &e(4)), Err(Error::DegeneratePlane));
    }

    #[test]
    fn strict_and_contrast() {
        assert!(skew_nabla_sweep(TensorName::J).passed());
        assert!(!nabla_j(&e(1), &e(3)).is_zero());
        assert!(!skew_nabla_sweep(TensorName::J1).passed());
    }
}
