//! The five totally geodesic almost complex surfaces through the base point.
//!
//! Each family is the orbit of a subgroup whose Lie algebra contains a
//! J-invariant plane `span{X, JX} ⊂ 𝔪`. Certification is exact: almost complex
//! structure, vanishing second fundamental form (or canonical embedding for
//! the degenerate family), induced signature and sectional curvature. The
//! closed-form matrix parametrizations are checked numerically against the
//! matrix exponential.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::liealg::{bracket_vec, metric, FullVec, MVec};
use crate::linalg::{self, Matrix, Signature, SpanSolution};
use crate::nkgeom::{j, sectional};
use crate::numeric::{self, coset_align, expm, Mat3};
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    F1,
    F2,
    F3,
    F4,
    F5,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [FamilyId::F1, FamilyId::F2, FamilyId::F3, FamilyId::F4, FamilyId::F5];

    fn ordinal(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.ordinal())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "f1" | "1" => Ok(FamilyId::F1),
            "f2" | "2" => Ok(FamilyId::F2),
            "f3" | "3" => Ok(FamilyId::F3),
            "f4" | "4" => Ok(FamilyId::F4),
            "f5" | "5" => Ok(FamilyId::F5),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The subgroup of SL(3,ℝ) whose orbit through the base point is the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrbitGroup {
    #[serde(rename = "SL(2,R)")]
    Sl2R,
    #[serde(rename = "SO(3)")]
    So3,
    #[serde(rename = "SO+(2,1)")]
    So21,
    #[serde(rename = "R^2")]
    R2,
    #[serde(rename = "R^2 (degenerate)")]
    R2Degenerate,
}

impl OrbitGroup {
    pub fn algebra_dimension(self) -> usize {
        match self {
            OrbitGroup::Sl2R | OrbitGroup::So3 | OrbitGroup::So21 => 3,
            OrbitGroup::R2 | OrbitGroup::R2Degenerate => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InducedMetric {
    PositiveDefinite,
    NegativeDefinite,
    TotallyDegenerate,
}

impl InducedMetric {
    pub fn matches(self, sig: &Signature) -> bool {
        match self {
            InducedMetric::PositiveDefinite => sig.is_positive_definite(),
            InducedMetric::NegativeDefinite => sig.is_negative_definite(),
            InducedMetric::TotallyDegenerate => sig.is_totally_degenerate(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceFamily {
    pub id: FamilyId,
    pub generator: MVec,
    pub companion: MVec,
    pub orbit_group: OrbitGroup,
    pub expected_metric: InducedMetric,
    /// Constant sectional curvature, `None` for the degenerate family.
    pub expected_curvature: Option<FieldElem>,
}

fn inv_sqrt2() -> FieldElem {
    "(1/2)√2".parse().expect("literal")
}

fn combo(terms: &[(usize, FieldElem)]) -> MVec {
    let mut v = MVec::zero();
    for (i, c) in terms {
        v[i - 1] = &v[i - 1] + c;
    }
    v
}

/// The tangent plane generator `X` of a family, paired with `JX`.
pub fn generator(id: FamilyId) -> (MVec, MVec) {
    let one = FieldElem::one;
    let x = match id {
        FamilyId::F1 => MVec::basis(1),
        FamilyId::F2 => combo(&[(3, inv_sqrt2()), (5, inv_sqrt2())]),
        FamilyId::F3 => combo(&[(3, inv_sqrt2()), (5, -inv_sqrt2())]),
        FamilyId::F4 => combo(&[
            (1, "(1/3)√3".parse().expect("literal")),
            (3, one()),
            (5, FieldElem::ratio(-1, 3)),
        ]),
        FamilyId::F5 => MVec::basis(3),
    };
    let jx = j(&x);
    (x, jx)
}

pub fn family(id: FamilyId) -> SurfaceFamily {
    let (generator, companion) = generator(id);
    let (orbit_group, expected_metric, curvature) = match id {
        FamilyId::F1 => (OrbitGroup::Sl2R, InducedMetric::NegativeDefinite, Some(4)),
        FamilyId::F2 => (OrbitGroup::So3, InducedMetric::PositiveDefinite, Some(1)),
        FamilyId::F3 => (OrbitGroup::So21, InducedMetric::NegativeDefinite, Some(1)),
        FamilyId::F4 => (OrbitGroup::R2, InducedMetric::NegativeDefinite, Some(0)),
        FamilyId::F5 => (OrbitGroup::R2Degenerate, InducedMetric::TotallyDegenerate, None),
    };
    SurfaceFamily {
        id,
        generator,
        companion,
        orbit_group,
        expected_metric,
        expected_curvature: curvature.map(FieldElem::from_int),
    }
}

/// Literal evaluation of the closed-form coset representative `f_i(u, v)`.
pub fn closed_form(id: FamilyId, u: f64, v: f64) -> Mat3 {
    match id {
        FamilyId::F1 => {
            let (sv, cv) = v.sin_cos();
            let (ch, sh) = (u.cosh(), u.sinh());
            [
                [ch + cv * sh, sv * sh, 0.0],
                [sv * sh, ch - cv * sh, 0.0],
                [0.0, 0.0, 1.0],
            ]
        }
        FamilyId::F2 => {
            let (su, cu) = u.sin_cos();
            let (sv, cv) = v.sin_cos();
            let (s2u, c2u) = (2.0 * u).sin_cos();
            let (s2v, c2v) = (2.0 * v).sin_cos();
            [
                [cu * cu - c2v * su * su, -su * su * s2v, cv * s2u],
                [-su * su * s2v, cu * cu + c2v * su * su, s2u * sv],
                [-cv * s2u, -s2u * sv, c2u],
            ]
        }
        FamilyId::F3 => {
            let (sv, cv) = v.sin_cos();
            let (s2v, c2v) = (2.0 * v).sin_cos();
            let (ch, sh) = (u.cosh(), u.sinh());
            let (ch2, sh2) = ((2.0 * u).cosh(), (2.0 * u).sinh());
            [
                [ch * ch + c2v * sh * sh, s2v * sh * sh, cv * sh2],
                [s2v * sh * sh, ch * ch - c2v * sh * sh, sv * sh2],
                [cv * sh2, sv * sh2, ch2],
            ]
        }
        FamilyId::F4 => {
            let sqrt2 = std::f64::consts::SQRT_2;
            let sqrt3 = 3f64.sqrt();
            let sqrt6 = 6f64.sqrt();
            let em = (-v).exp();
            let e2v = (2.0 * v).exp();
            let euv = (u + v).exp();
            let (sh, ch) = (v.sinh(), v.cosh());
            let m = [
                [
                    em * (1.0 + e2v + 4.0 * euv) / 6.0,
                    -sh / sqrt3,
                    -em * (1.0 + e2v - 2.0 * euv) / sqrt6,
                ],
                [-sh / sqrt3, ch, sqrt2 * sh],
                [
                    -em / (3.0 * sqrt6) * (1.0 + e2v - 2.0 * euv),
                    sqrt2 / 3.0 * sh,
                    em * (1.0 + e2v + euv) / 3.0,
                ],
            ];
            numeric::mat_scale(&m, (-u / 3.0).exp())
        }
        FamilyId::F5 => [[1.0, 0.0, u], [0.0, 1.0, v], [0.0, 0.0, 1.0]],
    }
}

fn lin(terms: &[(f64, &MVec)]) -> Mat3 {
    terms.iter().fold([[0.0; 3]; 3], |acc, (c, v)| {
        numeric::mat_add(&acc, &numeric::mat_scale(&v.to_matrix().to_f64(), *c))
    })
}

/// The Lie algebra element whose exponential represents `f_i(u, v)`.
///
/// For `f₄` the first parameter enters as `u/√3`: this is the scaling under
/// which the closed form is exactly `exp(·)`. [`f4_unscaled_argument`]
/// gives `uX + vJX` for comparison.
pub fn lie_argument(id: FamilyId, u: f64, v: f64) -> Mat3 {
    let (x, jx) = generator(id);
    let (sv, cv) = v.sin_cos();
    match id {
        FamilyId::F1 => lin(&[(u * cv, &MVec::basis(1)), (u * sv, &MVec::basis(2))]),
        FamilyId::F2 | FamilyId::F3 => lin(&[(2.0 * u * cv, &x), (2.0 * u * sv, &jx)]),
        FamilyId::F4 => lin(&[(u / 3f64.sqrt(), &x), (v, &jx)]),
        FamilyId::F5 => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            lin(&[(r * u, &MVec::basis(3)), (r * v, &MVec::basis(4))])
        }
    }
}

/// `uX + vJX` for the `f₄` generator.
pub fn f4_unscaled_argument(u: f64, v: f64) -> Mat3 {
    let (x, jx) = generator(FamilyId::F4);
    lin(&[(u, &x), (v, &jx)])
}

/// Parameter domain sampled by the numeric checks.
pub fn sample_params(id: FamilyId, rng: &mut impl Rng) -> (f64, f64) {
    let u = rng.gen_range(-1.5..1.5);
    let v = match id {
        FamilyId::F1 | FamilyId::F2 | FamilyId::F3 => rng.gen_range(0.0..std::f64::consts::TAU),
        FamilyId::F4 | FamilyId::F5 => rng.gen_range(-1.5..1.5),
    };
    (u, v)
}

fn sample_list(id: FamilyId, samples: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id.ordinal());
    (0..samples).map(|_| sample_params(id, &mut rng)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpCheck {
    pub samples: usize,
    pub tol: f64,
    pub max_dev: f64,
    pub pass: bool,
}

/// Compares `expm(lie_argument)` with `closed_form` at seeded random
/// parameters, after aligning the two coset representatives.
pub fn exp_check(id: FamilyId, samples: usize, tol: f64, seed: u64, exec: Execution) -> ExpCheck {
    exp_check_with(id, samples, tol, seed, exec, lie_argument)
}

pub fn exp_check_with(
    id: FamilyId,
    samples: usize,
    tol: f64,
    seed: u64,
    exec: Execution,
    argument: fn(FamilyId, f64, f64) -> Mat3,
) -> ExpCheck {
    let params = sample_list(id, samples, seed);
    let devs = par::map(&params, exec, |&(u, v)| {
        coset_align(&expm(&argument(id, u, v)), &closed_form(id, u, v)).deviation
    });
    let max_dev = devs.into_iter().fold(0.0, f64::max);
    ExpCheck {
        samples,
        tol,
        max_dev,
        pass: max_dev <= tol,
    }
}

/// Numeric group-level checks on the closed forms: `det = 1`, and for `f₂`
/// and `f₃` preservation of the quadratic forms `diag(1,1,1)` and
/// `diag(1,1,−1)`. Returns the largest deviation.
pub fn orbit_group_deviation(id: FamilyId, samples: usize, seed: u64) -> f64 {
    let form = match id {
        FamilyId::F2 => Some([1.0, 1.0, 1.0]),
        FamilyId::F3 => Some([1.0, 1.0, -1.0]),
        _ => None,
    };
    sample_list(id, samples, seed)
        .into_iter()
        .map(|(u, v)| {
            let m = closed_form(id, u, v);
            let mut dev = (numeric::determinant(&m) - 1.0).abs();
            if let Some(d) = form {
                let eta: Mat3 = [[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]];
                let q = numeric::mat_mul(&numeric::mat_mul(&numeric::transpose(&m), &eta), &m);
                dev = dev.max(numeric::max_abs_diff(&q, &eta));
            }
            dev
        })
        .fold(0.0, f64::max)
}

fn gram_of(vectors: &[MVec]) -> Matrix {
    Matrix::from_fn(vectors.len(), vectors.len(), |i, k| metric(&vectors[i], &vectors[k]))
}

fn in_span_of(vectors: &[MVec], v: &MVec) -> bool {
    let cols: Vec<&[FieldElem]> = vectors.iter().map(|x| x.coeffs().as_slice()).collect();
    matches!(
        linalg::solve_in_span(&Matrix::from_columns(&cols), v.coeffs()),
        SpanSolution::Solution(_)
    )
}

/// Second fundamental form at the base point of the orbit with tangent
/// space `span(kbasis)`: half the component of `[X, Y]_𝔪` orthogonal to the
/// tangent space.
pub fn sff(kbasis: &[MVec], x: &MVec, y: &MVec) -> Result<MVec> {
    let gram = gram_of(kbasis);
    if kbasis.is_empty() || gram.determinant().is_zero() {
        return Err(Error::DegenerateSpan);
    }
    if !in_span_of(kbasis, x) || !in_span_of(kbasis, y) {
        return Err(Error::NotInSpan);
    }
    let w = bracket_vec(x, y).m_part();
    let pairings: Vec<FieldElem> = kbasis.iter().map(|k| metric(k, &w)).collect();
    let coeffs = gram.solve(&pairings)?;
    let tangential = kbasis
        .iter()
        .zip(&coeffs)
        .fold(MVec::zero(), |acc, (k, c)| &acc + &k.scale(c));
    Ok((&w - &tangential).scale(&FieldElem::ratio(1, 2)))
}

/// Basis of the Lie subalgebra of sl(3,ℝ) generated by the given vectors.
pub fn generated_subalgebra(generators: &[FullVec]) -> Vec<FullVec> {
    let mut basis = reduce_basis(generators);
    loop {
        let mut candidates = basis.clone();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                candidates.push(bracket_vec(a, b));
            }
        }
        let next = reduce_basis(&candidates);
        if next.len() == basis.len() {
            return basis;
        }
        basis = next;
    }
}

fn reduce_basis(vectors: &[FullVec]) -> Vec<FullVec> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_fn(vectors.len(), 8, |i, k| vectors[i][k].clone());
    let rank = m.row_reduce().len();
    (0..rank)
        .map(|r| FullVec::from_coeffs(std::array::from_fn(|k| m[(r, k)].clone())))
        .collect()
}

fn contains(basis: &[FullVec], v: &FullVec) -> bool {
    let mut all = basis.to_vec();
    all.push(v.clone());
    reduce_basis(&all).len() == reduce_basis(basis).len()
}

/// `𝔨 = (𝔨 ∩ 𝔥) ⊕ (𝔨 ∩ 𝔪)`: the 𝔥- and 𝔪-parts of every element stay in 𝔨.
pub fn is_canonically_embedded(subalgebra: &[FullVec]) -> bool {
    subalgebra
        .iter()
        .all(|v| contains(subalgebra, &v.h_part()) && contains(subalgebra, &v.m_part().to_full()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeodesicMethod {
    Sff,
    CanonicalEmbedding,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub id: FamilyId,
    pub almost_complex: bool,
    pub totally_geodesic: bool,
    pub method: GeodesicMethod,
    pub induced_signature: String,
    #[serde(serialize_with = "curvature_text")]
    pub curvature: Option<FieldElem>,
    pub signature_matches: bool,
    pub curvature_matches: bool,
    pub orbit_group: OrbitGroup,
    pub generated_algebra_dim: usize,
    pub orbit_algebra_matches: bool,
    pub abelian: bool,
    pub canonically_embedded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exp_check: Option<ExpCheck>,
}

fn curvature_text<S: Serializer>(c: &Option<FieldElem>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match c {
        Some(k) => s.collect_str(k),
        None => s.serialize_str("degenerate"),
    }
}

impl Certificate {
    /// Every exact claim about the family holds (the numeric check too, if present).
    pub fn passed(&self) -> bool {
        self.almost_complex
            && self.totally_geodesic
            && self.signature_matches
            && self.curvature_matches
            && self.orbit_algebra_matches
            && self.exp_check.is_none_or(|e| e.pass)
    }
}

/// Exact certification of one family.
pub fn certify(id: FamilyId) -> Certificate {
    let fam = family(id);
    let plane = [fam.generator.clone(), fam.companion.clone()];

    let almost_complex = plane.iter().all(|v| in_span_of(&plane, &j(v)));

    let (signature, _) = linalg::signature(&gram_of(&plane));
    let degenerate = signature.zero > 0;

    let xy = bracket_vec(&plane[0], &plane[1]);
    let abelian = xy.is_zero();
    let algebra = generated_subalgebra(&[plane[0].to_full(), plane[1].to_full()]);
    let canonically_embedded = is_canonically_embedded(&algebra);

    let (method, totally_geodesic) = if degenerate {
        // The plane itself must be a subalgebra inside 𝔪 (𝔨 ∩ 𝔥 = 0).
        let closed = algebra.len() == 2 && algebra.iter().all(|v| v.h_part().is_zero());
        (GeodesicMethod::CanonicalEmbedding, closed && canonically_embedded)
    } else {
        let pairs = [(0, 0), (0, 1), (1, 1)];
        let vanishes = pairs
            .iter()
            .all(|&(a, b)| sff(&plane, &plane[a], &plane[b]).is_ok_and(|h| h.is_zero()));
        (GeodesicMethod::Sff, vanishes)
    };

    let curvature = if degenerate {
        None
    } else {
        sectional(&plane[0], &plane[1]).ok()
    };

    Certificate {
        id,
        almost_complex,
        totally_geodesic,
        method,
        induced_signature: signature.describe(),
        curvature_matches: curvature == fam.expected_curvature,
        curvature,
        signature_matches: fam.expected_metric.matches(&signature),
        orbit_group: fam.orbit_group,
        generated_algebra_dim: algebra.len(),
        orbit_algebra_matches: algebra.len() == fam.orbit_group.algebra_dimension(),
        abelian,
        canonically_embedded,
        exp_check: None,
    }
}

/// [`certify`] plus the numeric exponential cross-check.
pub fn certify_with_exp(id: FamilyId, samples: usize, tol: f64, seed: u64, exec: Execution) -> Certificate {
    Certificate {
        exp_check: Some(exp_check(id, samples, tol, seed, exec)),
        ..certify(id)
    }
}
