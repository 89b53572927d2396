//! Case analysis for totally geodesic almost complex surfaces.
//!
//! A unit tangent vector `X` is reduced to one of five normal forms. A
//! totally geodesic surface has tangent planes preserved by the curvature
//! tensor, so `R̄(X, JX)JX ∈ span{X, JX}` is necessary; testing it exactly
//! eliminates Case 2 and pins the parameters of Case 4. The survivors are
//! then matched with the five example families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactfield::FieldElem;
use crate::liealg::{dphi, metric, MVec};
use crate::linalg::{solve_in_span, Matrix, SpanSolution};
use crate::nkgeom::{curvature, j};
use crate::par::{self, Execution};
use crate::surfaces::{self, FamilyId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn elem(self) -> FieldElem {
        FieldElem::from_int(self.value())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// One instantiated normal form for the unit tangent vector `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)] // field elements are inline; these are short-lived
pub enum CaseCandidate {
    /// Case 1: `X = e₁`.
    SingleV1,
    /// Case 2: `X = εe₁ + e₅`.
    V1PlusV3 { eps: Sign },
    /// Case 3: `X = (e₃ + εe₅)/√2`.
    V2PlusV3 { eps: Sign },
    /// Case 4: `X = a e₁ + e₃ + ½(a² + ε)e₅ + b e₆` with `a > 0`.
    AllThree { eps: Sign, a: FieldElem, b: FieldElem },
    /// Case 5 (degenerate): `X = e₃`.
    DegenerateV2,
}

impl CaseCandidate {
    pub fn case4(eps: Sign, a: FieldElem, b: FieldElem) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::InvalidCase(format!("case 4 requires a > 0, got a = {a}")));
        }
        Ok(CaseCandidate::AllThree { eps, a, b })
    }

    /// The parameter point singled out by the tangency condition in Case 4.
    pub fn case4_claimed() -> Self {
        CaseCandidate::AllThree {
            eps: Sign::Minus,
            a: "(1/3)√3".parse().expect("literal"),
            b: FieldElem::zero(),
        }
    }

    pub fn case_number(&self) -> u8 {
        match self {
            CaseCandidate::SingleV1 => 1,
            CaseCandidate::V1PlusV3 { .. } => 2,
            CaseCandidate::V2PlusV3 { .. } => 3,
            CaseCandidate::AllThree { .. } => 4,
            CaseCandidate::DegenerateV2 => 5,
        }
    }

    pub fn eps(&self) -> Option<Sign> {
        match self {
            CaseCandidate::V1PlusV3 { eps } | CaseCandidate::V2PlusV3 { eps } => Some(*eps),
            CaseCandidate::AllThree { eps, .. } => Some(*eps),
            _ => None,
        }
    }

    /// Short label such as `3+` or `4`.
    pub fn label(&self) -> String {
        match (self.case_number(), self.eps()) {
            (n @ (2 | 3), Some(Sign::Plus)) => format!("{n}+"),
            (n @ (2 | 3), Some(Sign::Minus)) => format!("{n}-"),
            (n, _) => n.to_string(),
        }
    }

    pub fn x(&self) -> MVec {
        let e = MVec::basis;
        match self {
            CaseCandidate::SingleV1 => e(1),
            CaseCandidate::V1PlusV3 { eps } => &e(1).scale(&eps.elem()) + &e(5),
            CaseCandidate::V2PlusV3 { eps } => {
                let r: FieldElem = "(1/2)√2".parse().expect("literal");
                (&e(3) + &e(5).scale(&eps.elem())).scale(&r)
            }
            CaseCandidate::AllThree { eps, a, b } => {
                let c5 = (&(a * a) + &eps.elem()).scale(&BigRational::new(1.into(), 2.into()));
                let mut v = MVec::zero();
                v[0] = a.clone();
                v[2] = FieldElem::one();
                v[4] = c5;
                v[5] = b.clone();
                v
            }
            CaseCandidate::DegenerateV2 => e(3),
        }
    }

    /// Required value of `⟨X, X⟩`: −1 for Cases 1–2, ε for Cases 3–4, 0 for Case 5.
    pub fn expected_norm(&self) -> FieldElem {
        match self {
            CaseCandidate::SingleV1 | CaseCandidate::V1PlusV3 { .. } => FieldElem::from_int(-1),
            CaseCandidate::V2PlusV3 { eps } | CaseCandidate::AllThree { eps, .. } => eps.elem(),
            CaseCandidate::DegenerateV2 => FieldElem::zero(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        let x = self.x();
        metric(&x, &x) == self.expected_norm()
    }
}

impl Serialize for CaseCandidate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CaseCandidate", 5)?;
        st.serialize_field("case", &self.case_number())?;
        st.serialize_field("eps", &self.eps().map(|e| e.value()))?;
        let (a, b) = match self {
            CaseCandidate::AllThree { a, b, .. } => (Some(a.to_string()), Some(b.to_string())),
            _ => (None, None),
        };
        st.serialize_field("a", &a)?;
        st.serialize_field("b", &b)?;
        st.serialize_field("x", &self.x())?;
        st.end()
    }
}

/// A normal form before its parameters are chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseTemplate {
    pub case: u8,
    pub vector: &'static str,
    pub parameters: &'static str,
    pub degenerate: bool,
}

pub fn candidates() -> Vec<CaseTemplate> {
    vec![
        CaseTemplate {
            case: 1,
            vector: "e1",
            parameters: "none",
            degenerate: false,
        },
        CaseTemplate {
            case: 2,
            vector: "eps e1 + e5",
            parameters: "eps in {-1, 1}",
            degenerate: false,
        },
        CaseTemplate {
            case: 3,
            vector: "(e3 + eps e5)/sqrt2",
            parameters: "eps in {-1, 1}",
            degenerate: false,
        },
        CaseTemplate {
            case: 4,
            vector: "a e1 + e3 + (a^2 + eps)/2 e5 + b e6",
            parameters: "a > 0, b real, eps in {-1, 1}",
            degenerate: false,
        },
        CaseTemplate {
            case: 5,
            vector: "e3",
            parameters: "none",
            degenerate: true,
        },
    ]
}

/// Every candidate with finitely many parameter values: both signs of Cases
/// 2 and 3, the single forms of Cases 1 and 5, and the pinned Case 4 point.
pub fn finite_candidates() -> Vec<CaseCandidate> {
    let mut out = vec![CaseCandidate::SingleV1];
    out.extend(Sign::BOTH.map(|eps| CaseCandidate::V1PlusV3 { eps }));
    out.extend(Sign::BOTH.map(|eps| CaseCandidate::V2PlusV3 { eps }));
    out.push(CaseCandidate::case4_claimed());
    out.push(CaseCandidate::DegenerateV2);
    out
}

/// Exact decision of `v ∈ span{x, y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SpanMembership {
    /// `v = α x + β y`.
    Inside { alpha: FieldElem, beta: FieldElem },
    /// Row reduction of `[x | y | v]` leaves `0 = residual` in some row, so the rank is 3.
    Outside { pivot_row: usize, residual: FieldElem },
}

impl SpanMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, SpanMembership::Inside { .. })
    }
}

impl fmt::Display for SpanMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpanMembership::Inside { alpha, beta } => write!(f, "in span: ({alpha})X + ({beta})JX"),
            SpanMembership::Outside { pivot_row, residual } => {
                write!(f, "not in span: pivot row {pivot_row} reduces to 0 = {residual}")
            }
        }
    }
}

impl Serialize for SpanMembership {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn in_span(v: &MVec, x: &MVec, y: &MVec) -> SpanMembership {
    let a = Matrix::from_columns(&[x.coeffs().as_slice(), y.coeffs().as_slice()]);
    match solve_in_span(&a, v.coeffs()) {
        SpanSolution::Solution(c) => SpanMembership::Inside {
            alpha: c[0].clone(),
            beta: c[1].clone(),
        },
        SpanSolution::Inconsistent { row, value } => SpanMembership::Outside {
            pivot_row: row,
            residual: value,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangencyResult {
    pub candidate: CaseCandidate,
    pub x: MVec,
    pub jx: MVec,
    /// `R̄(X, JX)JX`.
    pub value: MVec,
    pub in_span: bool,
    pub witness: SpanMembership,
}

pub fn tangency_test(c: &CaseCandidate) -> TangencyResult {
    tangency_of(c.clone(), c.x())
}

fn tangency_of(candidate: CaseCandidate, x: MVec) -> TangencyResult {
    let jx = j(&x);
    let value = curvature(&x, &jx, &jx);
    let witness = in_span(&value, &x, &jx);
    TangencyResult {
        candidate,
        in_span: witness.is_inside(),
        x,
        jx,
        value,
        witness,
    }
}

/// Case 2 pulled across the isometry `[A] ↦ [(Aᵗ)⁻¹]`: the tangency test on
/// `dφ(εe₁ + e₅)`, which lies in `𝔪₁ ⊕ 𝔪₂`.
pub fn case2_phi_partner(eps: Sign) -> TangencyResult {
    let c = CaseCandidate::V1PlusV3 { eps };
    let x = dphi(&c.x());
    tangency_of(c, x)
}

/// Arithmetic progression `min, min + step, …, ≤ max` of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeSpec {
    pub min: BigRational,
    pub max: BigRational,
    pub step: BigRational,
}

impl RangeSpec {
    pub fn values(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        let mut x = self.min.clone();
        while x <= self.max {
            out.push(x.clone());
            x += &self.step;
        }
        out
    }
}

impl fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.step)
    }
}

impl FromStr for RangeSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("invalid range {s:?}: {why}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let [min, max, step] = parts.as_slice() else {
            return Err(bad("expected min:max:step"));
        };
        let parse = |t: &str| -> Result<BigRational> {
            let q = t.trim();
            let (n, d) = q.split_once('/').unwrap_or((q, "1"));
            let n: BigInt = n.trim().parse().map_err(|_| bad("not a rational"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("not a rational"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        };
        let spec = RangeSpec {
            min: parse(min)?,
            max: parse(max)?,
            step: parse(step)?,
        };
        if !spec.step.is_positive() {
            return Err(bad("step must be positive"));
        }
        if spec.max < spec.min {
            return Err(bad("max < min"));
        }
        Ok(spec)
    }
}

/// Rational grid of `(a, b)` for the Case 4 sweep. Nonpositive `a` values
/// are dropped since Case 4 requires `a > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub a: RangeSpec,
    pub b: RangeSpec,
}

impl Default for GridSpec {
    /// `a ∈ (0, 3]`, `b ∈ [−3, 3]`, both with step 1/20.
    fn default() -> Self {
        "0:3:1/20,-3:3:1/20".parse().expect("default grid")
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl FromStr for GridSpec {
    type Err = Error;
    /// `amin:amax:astep,bmin:bmax:bstep`, rationals written `p` or `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("invalid grid {s:?}: expected two ranges")))?;
        Ok(GridSpec {
            a: a.parse()?,
            b: b.parse()?,
        })
    }
}

impl GridSpec {
    pub fn a_values(&self) -> Vec<BigRational> {
        self.a.values().into_iter().filter(Signed::is_positive).collect()
    }

    pub fn b_values(&self) -> Vec<BigRational> {
        self.b.values()
    }

    /// Number of `(a, b)` cells per sign of ε.
    pub fn cells_per_sign(&self) -> usize {
        self.a_values().len() * self.b_values().len()
    }
}

impl Serialize for GridSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case4Report {
    pub grid: GridSpec,
    /// Tangency at `(ε, a, b) = (−1, 1/√3, 0)`.
    pub claimed_point: TangencyResult,
    pub cells: usize,
    pub passes: usize,
    pub failures: usize,
    /// Grid points other than the claimed one that pass the tangency test.
    pub unexpected: Vec<String>,
}

impl Case4Report {
    pub fn passed(&self) -> bool {
        self.claimed_point.in_span && self.unexpected.is_empty()
    }
}

/// Exact check of the claimed Case 4 point plus a rational grid sweep over
/// both signs of ε. The grid is evidence that the point is isolated, not a
/// proof.
pub fn pin_case4(grid: &GridSpec, exec: Execution) -> Case4Report {
    let claimed = CaseCandidate::case4_claimed();
    let claimed_point = tangency_test(&claimed);

    let a_values = grid.a_values();
    let b_values = grid.b_values();
    let mut cells = Vec::with_capacity(2 * a_values.len() * b_values.len());
    for eps in Sign::BOTH {
        for a in &a_values {
            for b in &b_values {
                cells.push((eps, a.clone(), b.clone()));
            }
        }
    }
    let results = par::map(&cells, exec, |(eps, a, b)| {
        let c = CaseCandidate::AllThree {
            eps: *eps,
            a: FieldElem::from_rational(a.clone()),
            b: FieldElem::from_rational(b.clone()),
        };
        let passes = tangency_test(&c).in_span;
        (passes && c != claimed).then(|| format!("eps={eps}, a={a}, b={b}")).map_or(
            if passes { Cell::ClaimedPass } else { Cell::Fail },
            Cell::Unexpected,
        )
    });

    let mut passes = 0;
    let mut unexpected = Vec::new();
    for r in results {
        match r {
            Cell::Fail => {}
            Cell::ClaimedPass => passes += 1,
            Cell::Unexpected(s) => {
                passes += 1;
                unexpected.push(s);
            }
        }
    }
    Case4Report {
        grid: grid.clone(),
        claimed_point,
        cells: cells.len(),
        passes,
        failures: cells.len() - passes,
        unexpected,
    }
}

enum Cell {
    Fail,
    ClaimedPass,
    Unexpected(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Same,
    Flipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseMatch {
    pub case: String,
    pub family: Option<FamilyId>,
    pub orientation: Option<Orientation>,
    pub tangency: bool,
    pub totally_geodesic: bool,
}

impl CaseMatch {
    pub fn passed(&self) -> bool {
        self.family.is_some() && self.tangency && self.totally_geodesic
    }
}

/// Matches each surviving candidate with the family whose generator pair
/// equals `(X, ±JX)` exactly.
pub fn match_survivors() -> Vec<CaseMatch> {
    finite_candidates()
        .into_iter()
        .filter(|c| c.case_number() != 2)
        .map(|c| {
            let t = tangency_test(&c);
            let found = FamilyId::ALL.into_iter().find_map(|id| {
                let (fx, fjx) = surfaces::generator(id);
                if fx != t.x {
                    return None;
                }
                if fjx == t.jx {
                    Some((id, Orientation::Same))
                } else if fjx == -&t.jx {
                    Some((id, Orientation::Flipped))
                } else {
                    None
                }
            });
            CaseMatch {
                case: c.label(),
                family: found.map(|f| f.0),
                orientation: found.map(|f| f.1),
                tangency: t.in_span,
                totally_geodesic: found.is_some_and(|(id, _)| surfaces::certify(id).totally_geodesic),
            }
        })
        .collect()
}

/// `dφ` maps `𝔪₂ = span{e₃, e₄}` onto `𝔪₃ = span{e₅, e₆}` and back.
pub fn phi_swaps_m2_m3() -> bool {
    let e = MVec::basis;
    dphi(&e(3)) == e(5) && dphi(&e(4)) == e(6) && dphi(&e(5)) == e(3) && dphi(&e(6)) == e(4)
}

/// Whether `dφ` preserves `𝔪₁`.
pub fn phi_preserves_m1() -> bool {
    [1, 2].into_iter().all(|i| {
        let y = dphi(&MVec::basis(i));
        y.coeffs()[2..].iter().all(FieldElem::is_zero)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub templates: Vec<CaseTemplate>,
    pub verdicts: Vec<TangencyResult>,
    pub case2_phi_partners: Vec<TangencyResult>,
    pub case4: Case4Report,
    pub mapping: Vec<CaseMatch>,
}

pub fn classify(grid: &GridSpec, exec: Execution) -> Classification {
    Classification {
        templates: candidates(),
        verdicts: finite_candidates().iter().map(tangency_test).collect(),
        case2_phi_partners: Sign::BOTH.into_iter().map(case2_phi_partner).collect(),
        case4: pin_case4(grid, exec),
        mapping: match_survivors(),
    }
}

/// Convenience for tests and fixtures: the rational `p/q` as a field element.
pub fn rational(p: i64, q: i64) -> FieldElem {
    FieldElem::from_rational(BigRational::new(p.into(), q.into()))
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
    fn templates() {
        let t = candidates();
        assert_eq!(t.len(), 5);
        assert!(t[4].degenerate);
        let c3 = CaseCandidate::V2PlusV3 { eps: Sign::Plus };
        let r: FieldElem = "(1/2)√2".parse().unwrap();
        assert_eq!(c3.x(), (&e(3) + &e(5)).scale(&r));
        assert!(CaseCandidate::case4(Sign::Plus, k(0), k(1)).is_err());
        assert!(CaseCandidate::case4(Sign::Plus, k(-1), k(1)).is_err());
        assert!(CaseCandidate::case4(Sign::Plus, k(1), k(1)).is_ok());
    }

    #[test]
    fn in_span_examples() {
        assert_eq!(
            in_span(&e(1).scale(&k(-4)), &e(1), &e(2)),
            SpanMembership::Inside { alpha: k(-4), beta: k(0) }
        );
        for eps in [-1, 1] {
            let v = &e(1).scale(&k(-4 * eps)) + &e(5).scale(&k(2));
            let x = &e(1).scale(&k(eps)) + &e(5);
            let y = &e(2).scale(&k(-eps)) + &e(6);
            assert!(!in_span(&v, &x, &y).is_inside());
        }
        let x = &e(1) + &e(3);
        assert_eq!(
            in_span(&MVec::zero(), &x, &e(4)),
            SpanMembership::Inside { alpha: k(0), beta: k(0) }
        );
    }

    #[test]
    fn tangency_examples() {
        let t1 = tangency_test(&CaseCandidate::SingleV1);
        assert!(t1.in_span);
        assert_eq!(t1.value, e(1).scale(&k(-4)));
        for eps in Sign::BOTH {
            let t = tangency_test(&CaseCandidate::V1PlusV3 { eps });
            assert!(!t.in_span);
            assert_eq!(t.value, &e(1).scale(&k(-4 * eps.value())) + &e(5).scale(&k(2)));
        }
        assert!(tangency_test(&CaseCandidate::case4_claimed()).in_span);
    }

    #[test]
    fn case4_off_grid_points_fail() {
        assert!(!tangency_test(&CaseCandidate::case4(Sign::Plus, k(1), k(0)).unwrap()).in_span);
        assert!(!tangency_test(&CaseCandidate::case4(Sign::Minus, rational(1, 2), k(0)).unwrap()).in_span);
    }

    #[test]
    fn grid_parsing() {
        let g = GridSpec::default();
        assert_eq!(g.a_values().len(), 60);
        assert_eq!(g.b_values().len(), 121);
        assert_eq!(g.to_string(), "0:3:1/20,-3:3:1/20");
        assert!("0:3:0,-3:3:1".parse::<GridSpec>().is_err());
        assert!("0:3:1".parse::<GridSpec>().is_err());
        assert!("3:0:1,-3:3:1".parse::<GridSpec>().is_err());
        assert!("x:3:1,-3:3:1".parse::<GridSpec>().is_err());
    }

    #[test]
    fn mapping_table() {
        let table: Vec<(String, Option<FamilyId>)> =
            match_survivors().into_iter().map(|m| (m.case, m.family)).collect();
        assert_eq!(
            table,
            vec![
                ("1".into(), Some(FamilyId::F1)),
                ("3+".into(), Some(FamilyId::F2)),
                ("3-".into(), Some(FamilyId::F3)),
                ("4".into(), Some(FamilyId::F4)),
                ("5".into(), Some(FamilyId::F5)),
            ]
        );
    }

    #[test]
    fn phi_partner_also_fails() {
        for eps in Sign::BOTH {
            let t = case2_phi_partner(eps);
            assert_eq!(t.x, &e(1).scale(&k(-eps.value())) + &e(3));
            assert!(!t.in_span);
        }
        assert!(phi_swaps_m2_m3());
        assert!(phi_preserves_m1());
    }
}
