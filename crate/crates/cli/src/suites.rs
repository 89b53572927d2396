//! The six verification suites. Each one pushes named checks into a
//! [`Recorder`]; names are prefixed with the suite name by the recorder.

use nkflag::classify::{self, CaseCandidate, Orientation};
use nkflag::liealg::{self, bracket_vec, metric, BasisIndex, FullVec, StructureConstants, SubspaceTag};
use nkflag::linalg;
use nkflag::nkgeom::{self, TensorName};
use nkflag::surfaces::{self, FamilyId, GeodesicMethod};
use nkflag::{AlgMat, FieldElem, MVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{CliError, Recorder, SuiteSpec};

/// Agreement required between the two float evaluations of `Ad(h)`.
const AD_TOL: f64 = 1e-9;
/// Central-difference step and tolerance for the infinitesimal isotropy check.
const FD_STEP: f64 = 1e-5;
const FD_TOL: f64 = 1e-8;

fn e(i: usize) -> MVec {
    MVec::basis(i)
}

fn k(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

fn random_elem(rng: &mut ChaCha8Rng) -> FieldElem {
    let mut q = || FieldElem::ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9));
    let (a, b, c, d) = (q(), q(), q(), q());
    &(&(&a + &(&b * &FieldElem::sqrt2())) + &(&c * &FieldElem::sqrt3())) + &(&d * &FieldElem::sqrt6())
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

pub(crate) fn field(spec: &SuiteSpec, rec: &mut Recorder<'_>) {
    const ANCHOR: &str = "exact arithmetic in Q(sqrt2, sqrt3)";
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.samples * 10;
    let (mut axioms, mut inverses, mut floats, mut round_trips) = (0, 0, 0, 0);
    for _ in 0..n {
        let (x, y, z) = (random_elem(&mut rng), random_elem(&mut rng), random_elem(&mut rng));
        let ok = &(&x + &y) + &z == &x + &(&y + &z)
            && &(&x * &y) * &z == &x * &(&y * &z)
            && &x * &y == &y * &x
            && &x + &y == &y + &x
            && &x * &(&y + &z) == &(&x * &y) + &(&x * &z)
            && (&x + &(-&x)).is_zero();
        axioms += usize::from(!ok);
        let inv_ok = x.is_zero() || x.inv().is_ok_and(|i| (&x * &i).is_one());
        inverses += usize::from(!inv_ok);
        let hom = rel_close((&x * &y).to_f64(), x.to_f64() * y.to_f64())
            && rel_close((&x + &y).to_f64(), x.to_f64() + y.to_f64());
        floats += usize::from(!hom);
        round_trips += usize::from(x.to_string().parse::<FieldElem>().as_ref() != Ok(&x));
    }
    rec.check("axioms", axioms == 0, ANCHOR, format!("{n} random triples, {axioms} failures"));
    rec.check("inverse", inverses == 0, ANCHOR, format!("{n} samples, {inverses} failures"));
    rec.check(
        "float homomorphism",
        floats == 0,
        ANCHOR,
        format!("{n} samples, {floats} beyond 1e-9 relative"),
    );
    rec.check(
        "text round trip",
        round_trips == 0,
        ANCHOR,
        format!("{n} samples, {round_trips} failures"),
    );

    let product = &FieldElem::sqrt2() * &FieldElem::sqrt3();
    rec.check(
        "sqrt2 * sqrt3",
        product == FieldElem::sqrt6(),
        ANCHOR,
        format!("sqrt2 * sqrt3 = {product}"),
    );
    let s = &FieldElem::sqrt2() + &FieldElem::sqrt3();
    let inv = s.inv();
    let expected = &FieldElem::sqrt3() - &FieldElem::sqrt2();
    rec.check(
        "inverse example",
        inv.as_ref() == Ok(&expected),
        ANCHOR,
        format!("1/(sqrt2 + sqrt3) = {}", inv.map_or_else(|e| e.to_string(), |v| v.to_string())),
    );
    rec.check(
        "division by zero",
        FieldElem::zero().inv().is_err(),
        ANCHOR,
        "0^-1 rejected",
    );
    // 5√2 − 7 ≈ 0.0711 and 99 − 70√2 ≈ 0.00505: both small but positive.
    let near = [&(&FieldElem::sqrt2() * &k(5)) - &k(7), &k(99) - &(&FieldElem::sqrt2() * &k(70))];
    rec.check(
        "exact sign",
        near.iter().all(FieldElem::is_positive) && (-&near[1]).is_negative(),
        ANCHOR,
        format!("sign({}) = {}, sign({}) = {}", near[0], near[0].signum(), near[1], near[1].signum()),
    );
}

pub(crate) fn algebra(spec: &SuiteSpec, rec: &mut Recorder<'_>) {
    const BASIS: &str = "basis of sl(3,R) and reductive splitting";
    const METRIC: &str = "invariant metric -1/2 Tr(XY)";
    const ISOTROPY: &str = "isotropy representation";
    const PHI: &str = "transpose-inverse isometry";

    let traceless = BasisIndex::all().filter(|&i| !liealg::basis_matrix(i).trace().is_zero()).count();
    rec.check("basis traceless", traceless == 0, BASIS, format!("8 matrices, {traceless} with nonzero trace"));

    let gram = liealg::gram();
    let rank = gram.rank();
    rec.check("metric nondegenerate", rank == 8, METRIC, format!("Gram rank {rank}"));
    let (sig, _) = linalg::signature(&liealg::gram_m());
    rec.check(
        "metric signature on m",
        sig.positive == 2 && sig.negative == 4 && sig.zero == 0,
        METRIC,
        format!(
            "{} positive, {} negative, {} null (signature read as index {})",
            sig.positive, sig.negative, sig.zero, sig.negative
        ),
    );
    let orth = (1..=6).all(|i| (7..=8).all(|h| metric(&FullVec::basis(i), &FullVec::basis(h)).is_zero()));
    rec.check("h orthogonal to m", orth, METRIC, "<e_i, e_h> = 0 for i <= 6 < h");

    let mut reductive = 0;
    for (i, j, l) in nkgeom::basis_triples() {
        let (a, b, c) = (FullVec::basis(i), FullVec::basis(j), FullVec::basis(l));
        if metric(&a, &bracket_vec(&b, &c)) != metric(&bracket_vec(&a, &b), &c) {
            reductive += 1;
        }
    }
    rec.check(
        "natural reductivity",
        reductive == 0,
        METRIC,
        format!("216 triples, {reductive} failures"),
    );

    let mut jacobi = 0;
    for a in 1..=8 {
        for b in 1..=8 {
            for c in 1..=8 {
                let (x, y, z) = (FullVec::basis(a), FullVec::basis(b), FullVec::basis(c));
                let s = &(&bracket_vec(&x, &bracket_vec(&y, &z)) + &bracket_vec(&y, &bracket_vec(&z, &x)))
                    + &bracket_vec(&z, &bracket_vec(&x, &y));
                jacobi += usize::from(!s.is_zero());
            }
        }
    }
    rec.check("jacobi", jacobi == 0, BASIS, format!("512 triples, {jacobi} failures"));

    let h_sub = (7..=8).all(|a| (7..=8).all(|b| bracket_vec(&FullVec::basis(a), &FullVec::basis(b)).m_part().is_zero()));
    rec.check("h is a subalgebra", h_sub, BASIS, "[h, h] has no m component");

    let mut leaks = Vec::new();
    for h in [7, 8] {
        for i in 1..=6 {
            let image = bracket_vec(&FullVec::basis(h), &FullVec::basis(i));
            let tag = SubspaceTag::of_index(i);
            let stays = image.h_part().is_zero()
                && (1..=6).all(|c| image.coeffs()[c - 1].is_zero() || SubspaceTag::of_index(c) == tag);
            if !stays {
                leaks.push(format!("[e{h}, e{i}]"));
            }
        }
    }
    rec.check(
        "splitting ad(h)-invariant",
        leaks.is_empty(),
        ISOTROPY,
        if leaks.is_empty() { "m1, m2, m3 each preserved by ad(e7), ad(e8)".to_string() } else { leaks.join(", ") },
    );

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..spec.samples {
        let (t, s) = (rng.gen_range(-1.0..1.0), rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
        for i in 1..=6 {
            let (a, b) = (liealg::ad_numeric(t, s, &e(i)), liealg::ad_closed_form(t, s, &e(i)));
            worst = a.iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(worst, f64::max);
        }
    }
    rec.check(
        "Ad(h) closed form",
        worst <= AD_TOL,
        ISOTROPY,
        format!("{} samples x 6 basis vectors, max deviation {worst:.1e}", spec.samples),
    );

    let fd = infinitesimal_isotropy_deviation();
    rec.check(
        "ad(h) is the derivative of Ad(h)",
        matches!(fd, Ok(d) if d <= FD_TOL),
        ISOTROPY,
        match fd {
            Ok(d) => format!("central difference deviation {d:.1e}"),
            Err(err) => err.to_string(),
        },
    );

    let mut iso = 0;
    for a in 1..=6 {
        for b in 1..=6 {
            iso += usize::from(metric(&liealg::dphi(&e(a)), &liealg::dphi(&e(b))) != metric(&e(a), &e(b)));
        }
    }
    rec.check("dphi isometry", iso == 0, PHI, format!("36 pairs, {iso} failures"));
    let invol = (1..=6).all(|i| liealg::dphi(&liealg::dphi(&e(i))) == e(i));
    rec.check("dphi involution", invol, PHI, "dphi(dphi(e_i)) = e_i");
    rec.check(
        "dphi swaps m2 and m3",
        classify::phi_swaps_m2_m3() && classify::phi_preserves_m1(),
        PHI,
        format!("dphi(e1) = {}, dphi(e3) = {}", liealg::dphi(&e(1)), liealg::dphi(&e(3))),
    );

    rec.detail("structure_constants", StructureConstants::compute());
}

/// Compares `ad` of the two isotropy generators, computed exactly, with a
/// central difference of the closed `Ad(h(t, s))` formulas at the identity.
fn infinitesimal_isotropy_deviation() -> Result<f64, CliError> {
    let diag = |d: [i64; 3]| {
        let mut m = AlgMat::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = k(v);
        }
        m
    };
    // d/dt h(t, 0) and d/ds h(0, s) at the identity.
    let dt = diag([1, 1, -2]);
    let mut ds = AlgMat::zero();
    ds.0[0][1] = k(1);
    ds.0[1][0] = k(-1);

    let mut worst: f64 = 0.0;
    for (gen, axis) in [(dt, 0), (ds, 1)] {
        let c = liealg::decompose(&gen)?;
        for i in 1..=6 {
            let mut exact = MVec::zero();
            for h in [7, 8] {
                let coeff = &c.coeffs()[h - 1];
                if !coeff.is_zero() {
                    exact = &exact + &liealg::ad_action(BasisIndex::new(h)?, &e(i))?.scale(coeff);
                }
            }
            let (p, m) = if axis == 0 { ((FD_STEP, 0.0), (-FD_STEP, 0.0)) } else { ((0.0, FD_STEP), (0.0, -FD_STEP)) };
            let plus = liealg::ad_closed_form(p.0, p.1, &e(i));
            let minus = liealg::ad_closed_form(m.0, m.1, &e(i));
            let exact = exact.to_f64();
            for c in 0..6 {
                let deriv = (plus[c] - minus[c]) / (2.0 * FD_STEP);
                worst = worst.max((deriv - exact[c]).abs());
            }
        }
    }
    Ok(worst)
}

pub(crate) fn tensors(_spec: &SuiteSpec, rec: &mut Recorder<'_>) {
    const TENSORS: &str = "invariant tensors J, J1, F";
    const NK: &str = "nearly Kaehler condition";
    for (name, sweep) in nkgeom::tensor_identities() {
        rec.check(&name, sweep.passed(), TENSORS, sweep.summary());
    }
    let sweep = nkgeom::skew_nabla_sweep(TensorName::J);
    rec.check("J nearly Kaehler", sweep.passed(), NK, sweep.summary());
    let witness = nkgeom::nabla_j(&e(1), &e(3));
    rec.check(
        "J strictly nearly Kaehler",
        witness == -e(4),
        NK,
        format!("(nabla_e1 J)e3 = {witness}"),
    );
    let contrast = nkgeom::skew_nabla_sweep(TensorName::J1);
    rec.check(
        "J1 not nearly Kaehler",
        !contrast.passed(),
        NK,
        contrast.summary(),
    );
}

pub(crate) fn curvature(spec: &SuiteSpec, rec: &mut Recorder<'_>) -> Result<(), CliError> {
    const FORMULA: &str = "curvature closed form";
    const ORACLE: &str = "curvature of a reductive homogeneous space";
    const EINSTEIN: &str = "Einstein condition";

    let conv = nkgeom::resolve_sign_convention();
    rec.check(
        "sign convention",
        conv.is_ok(),
        ORACLE,
        conv.as_ref().map_or_else(|err| err.to_string(), |c| format!("{c:?}: {}", c.formula())),
    );
    if let Ok(c) = &conv {
        rec.detail("sign_convention", format!("{c:?}"));
        rec.detail("oracle_formula", c.formula());
    }
    let agreement = nkgeom::oracle_agreement_sweep(spec.execution);
    rec.check(
        "formula matches oracle",
        agreement.as_ref().is_ok_and(|s| s.passed()),
        ORACLE,
        agreement.map_or_else(|err| err.to_string(), |s| s.summary()),
    );

    let sym = nkgeom::curvature_symmetries(spec.execution);
    for (name, s) in [
        ("antisymmetry", &sym.antisymmetry),
        ("metric skew", &sym.metric_skew),
        ("pair symmetry", &sym.pair_symmetry),
        ("first bianchi", &sym.first_bianchi),
    ] {
        rec.check(name, s.passed(), FORMULA, s.summary());
    }

    let k12 = nkgeom::sectional(&e(1), &e(2));
    rec.check(
        "K(e1, e2)",
        k12 == Ok(k(4)),
        FORMULA,
        k12.map_or_else(|err| err.to_string(), |v| format!("K = {v}")),
    );
    let degenerate = nkgeom::sectional(&e(3), &e(3));
    rec.check(
        "degenerate plane rejected",
        degenerate.is_err(),
        FORMULA,
        "K(e3, e3) has no value",
    );

    let c = nkgeom::einstein_constant();
    rec.check(
        "Einstein",
        c.is_some(),
        EINSTEIN,
        c.as_ref().map_or_else(|| "Ric not proportional to g".to_string(), |c| format!("Ric = {c} g")),
    );
    if let Some(c) = c {
        rec.detail("einstein_constant", c);
    }
    Ok(())
}

pub(crate) fn examples(spec: &SuiteSpec, rec: &mut Recorder<'_>) {
    const EXAMPLES: &str = "almost complex totally geodesic surfaces";
    const EXP: &str = "exponential parametrization";
    let mut certificates = Vec::new();
    for id in FamilyId::ALL {
        let c = surfaces::certify_with_exp(id, spec.samples, spec.tol, spec.seed, spec.execution);
        rec.check(format!("{id} almost complex"), c.almost_complex, EXAMPLES, "J preserves the tangent plane");
        rec.check(
            format!("{id} totally geodesic"),
            c.totally_geodesic,
            EXAMPLES,
            match c.method {
                GeodesicMethod::Sff => "second fundamental form vanishes",
                GeodesicMethod::CanonicalEmbedding => "canonically embedded abelian subalgebra",
            },
        );
        rec.check(
            format!("{id} induced metric"),
            c.signature_matches,
            EXAMPLES,
            c.induced_signature.clone(),
        );
        rec.check(
            format!("{id} curvature"),
            c.curvature_matches,
            EXAMPLES,
            c.curvature.as_ref().map_or("degenerate".to_string(), curvature_witness),
        );
        rec.check(
            format!("{id} orbit algebra"),
            c.orbit_algebra_matches,
            EXAMPLES,
            format!(
                "generated algebra dim {}, group {}",
                c.generated_algebra_dim,
                serde_json::to_value(c.orbit_group).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
            ),
        );
        if let Some(x) = c.exp_check {
            rec.check(
                format!("{id} exp"),
                x.pass,
                EXP,
                format!("{} samples, max deviation {:.1e} (tol {:.0e})", x.samples, x.max_dev, x.tol),
            );
        }
        let dev = surfaces::orbit_group_deviation(id, spec.samples, spec.seed);
        rec.check(
            format!("{id} orbit group"),
            dev <= spec.tol,
            EXP,
            format!("max deviation {dev:.1e}"),
        );
        certificates.push(c);
    }
    let literal = surfaces::exp_check_with(
        FamilyId::F4,
        spec.samples,
        spec.tol,
        spec.seed,
        spec.execution,
        |_, u, v| surfaces::f4_unscaled_argument(u, v),
    );
    rec.check(
        "f4 unscaled argument differs",
        !literal.pass,
        EXP,
        format!("exp(uX + vJX) vs closed form: max deviation {:.1e}", literal.max_dev),
    );
    rec.detail("certificates", certificates);
}

/// Sectional curvature plus the radius it corresponds to under `K = ±1/r²`,
/// since space forms are often labelled by radius rather than curvature.
fn curvature_witness(k: &FieldElem) -> String {
    if k.is_zero() {
        return "K = 0 (flat)".to_string();
    }
    format!("K = {k} (radius {:.4} under |K| = 1/r^2)", 1.0 / k.to_f64().abs().sqrt())
}

pub(crate) fn classify(spec: &SuiteSpec, rec: &mut Recorder<'_>) {
    const CASES: &str = "normal forms of a unit tangent vector";
    const TANGENCY: &str = "tangency test R(X,JX)JX in span{X, JX}";
    const MAPPING: &str = "cases matched to examples";

    let result = classify::classify(&spec.grid, spec.execution);
    rec.check(
        "templates",
        result.templates.len() == 5,
        CASES,
        format!("{} normal forms", result.templates.len()),
    );
    let unnormalized: Vec<String> = classify::finite_candidates()
        .iter()
        .filter(|c| !c.is_normalized())
        .map(CaseCandidate::label)
        .collect();
    rec.check(
        "normalization",
        unnormalized.is_empty(),
        CASES,
        if unnormalized.is_empty() { "every finite candidate has the expected norm".into() } else { unnormalized.join(", ") },
    );

    for t in &result.verdicts {
        let label = t.candidate.label();
        let expect_tangent = t.candidate.case_number() != 2;
        let witness = match t.candidate {
            CaseCandidate::V1PlusV3 { eps } => {
                let expected = &e(1).scale(&k(-4 * eps.value())) + &e(5).scale(&k(2));
                (t.value == expected, format!("R(X,JX)JX = {}; {}", t.value, t.witness))
            }
            _ => (true, format!("R(X,JX)JX = {}; {}", t.value, t.witness)),
        };
        rec.check(
            format!("case {label}"),
            t.in_span == expect_tangent && witness.0,
            TANGENCY,
            witness.1,
        );
    }
    for t in &result.case2_phi_partners {
        rec.check(
            format!("case {} phi partner", t.candidate.label()),
            !t.in_span,
            TANGENCY,
            format!("X = {}; R(X,JX)JX = {}; {}", t.x, t.value, t.witness),
        );
    }

    let c4 = &result.case4;
    rec.check(
        "case 4 claimed point",
        c4.claimed_point.in_span,
        TANGENCY,
        format!("(eps, a, b) = (-1, 1/sqrt3, 0): {}", c4.claimed_point.witness),
    );
    rec.check(
        "case 4 grid",
        c4.unexpected.is_empty(),
        TANGENCY,
        format!(
            "grid {}: {} cells, {} passes{}",
            c4.grid,
            c4.cells,
            c4.passes,
            if c4.unexpected.is_empty() { String::new() } else { format!(", unexpected: {}", c4.unexpected.join("; ")) }
        ),
    );
    for m in &result.mapping {
        rec.check(
            format!("case {} matched", m.case),
            m.passed(),
            MAPPING,
            match (m.family, m.orientation) {
                (Some(f), Some(o)) => format!(
                    "{f}, {} orientation",
                    if o == Orientation::Same { "same" } else { "flipped" }
                ),
                _ => "no example".to_string(),
            },
        );
    }
    rec.detail("mapping", &result.mapping);
    rec.detail("case4", serde_json::json!({
        "grid": c4.grid.to_string(),
        "cells": c4.cells,
        "passes": c4.passes,
        "unexpected": c4.unexpected,
    }));
    rec.detail("verdicts", &result.verdicts);
}
