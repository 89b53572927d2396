//! Acceptance gate. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails. Run with `--nocapture` to see the lines.

use std::time::{Duration, Instant};

use nkflag::classify::{self, CaseCandidate, GridSpec, Sign};
use nkflag::liealg::{bracket_vec, metric, FullVec};
use nkflag::nkgeom::{self, sectional, TensorName};
use nkflag::par::Execution;
use nkflag::surfaces::{self, FamilyId, GeodesicMethod};
use nkflag::{FieldElem, MVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXP_TOL: f64 = 1e-8;
const EXP_TOL_NILPOTENT: f64 = 1e-12;
const EXP_SAMPLES: usize = 100;
const SEED: u64 = 1;

struct Outcome {
    ok: bool,
    detail: String,
}

fn criterion(n: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let ok = out.ok && in_time;
    let limit_text = limit.map_or(String::new(), |l| format!(", limit {:.0?}", l));
    println!(
        "[{}] criterion {n}: {title} ({}; {:.2?}{limit_text})",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        elapsed,
    );
    ok
}

fn e(i: usize) -> MVec {
    MVec::basis(i)
}

fn k(n: i64) -> FieldElem {
    FieldElem::from_int(n)
}

fn natural_reductivity() -> Outcome {
    let mut failures = 0;
    let mut checked = 0;
    for i in 1..=6 {
        for jdx in 1..=6 {
            for l in 1..=6 {
                let (a, b, c) = (FullVec::basis(i), FullVec::basis(jdx), FullVec::basis(l));
                let lhs = metric(&a, &bracket_vec(&b, &c));
                let rhs = metric(&bracket_vec(&a, &b), &c);
                checked += 1;
                if lhs != rhs {
                    failures += 1;
                }
            }
        }
    }
    Outcome {
        ok: checked == 216 && failures == 0,
        detail: format!("{checked} triples, {failures} failures"),
    }
}

fn nearly_kaehler() -> Outcome {
    let sweep = nkgeom::skew_nabla_sweep(TensorName::J);
    let witness = nkgeom::nabla_j(&e(1), &e(3));
    Outcome {
        ok: sweep.checked == 36 && sweep.passed() && witness == -e(4),
        detail: format!("{}; (nabla_e1 J)e3 = {witness}", sweep.summary()),
    }
}

fn curvature_validation() -> Outcome {
    let matching: Vec<_> = nkgeom::SignConvention::ALL
        .into_iter()
        .filter(|&conv| {
            nkgeom::basis_triples().into_iter().all(|(i, jdx, l)| {
                nkgeom::curvature_oracle_with(conv, &e(i), &e(jdx), &e(l)) == nkgeom::curvature(&e(i), &e(jdx), &e(l))
            })
        })
        .collect();
    let agreement = nkgeom::oracle_agreement_sweep(Execution::Parallel);
    let sym = nkgeom::curvature_symmetries(Execution::Parallel);
    let ok = matching.len() == 1
        && agreement.as_ref().is_ok_and(|s| s.checked == 216 && s.passed())
        && sym.passed()
        && sym.antisymmetry.checked == 216
        && sym.metric_skew.checked == 1296
        && sym.pair_symmetry.checked == 1296
        && sym.first_bianchi.checked == 216;
    Outcome {
        ok,
        detail: format!(
            "conventions matching: {matching:?}; oracle: {}; symmetries: {}/{}/{}/{}",
            agreement.map(|s| s.summary()).unwrap_or_else(|e| e.to_string()),
            sym.antisymmetry.summary(),
            sym.metric_skew.summary(),
            sym.pair_symmetry.summary(),
            sym.first_bianchi.summary(),
        ),
    }
}

fn reported_constants() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |name: &str, cond: bool| {
        ok &= cond;
        notes.push(format!("{name}: {}", if cond { "ok" } else { "MISMATCH" }));
    };
    check("K(e1,e2) = 4", sectional(&e(1), &e(2)) == Ok(k(4)));
    for id in [FamilyId::F2, FamilyId::F3] {
        let (x, jx) = surfaces::generator(id);
        check(&format!("K({id}) = 1"), sectional(&x, &jx) == Ok(k(1)));
    }
    let (x, jx) = surfaces::generator(FamilyId::F4);
    check("K(f4) = 0", sectional(&x, &jx) == Ok(k(0)));
    for eps in Sign::BOTH {
        let t = classify::tangency_test(&CaseCandidate::V1PlusV3 { eps });
        let expected = &e(1).scale(&k(-4 * eps.value())) + &e(5).scale(&k(2));
        check(&format!("case 2 eps={eps} value"), t.value == expected);
        check(&format!("case 2 eps={eps} outside span"), !t.in_span);
    }
    check(
        "case 4 claimed point tangent",
        classify::tangency_test(&CaseCandidate::case4_claimed()).in_span,
    );
    Outcome {
        ok,
        detail: notes.join(", "),
    }
}

fn certification() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for id in FamilyId::ALL {
        let c = surfaces::certify(id);
        let method_ok = match id {
            FamilyId::F5 => {
                c.method == GeodesicMethod::CanonicalEmbedding
                    && c.abelian
                    && c.canonically_embedded
                    && c.curvature.is_none()
                    && c.induced_signature == "totally degenerate"
            }
            _ => c.method == GeodesicMethod::Sff,
        };
        let this = c.passed() && method_ok;
        ok &= this;
        notes.push(format!("{id}: {} {}", c.induced_signature, if this { "ok" } else { "FAILED" }));
    }
    Outcome {
        ok,
        detail: notes.join(", "),
    }
}

fn exponential() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for id in FamilyId::ALL {
        let tol = if id == FamilyId::F5 { EXP_TOL_NILPOTENT } else { EXP_TOL };
        let r = surfaces::exp_check(id, EXP_SAMPLES, tol, SEED, Execution::Parallel);
        ok &= r.pass && r.samples == EXP_SAMPLES;
        notes.push(format!("{id} max_dev {:.1e}", r.max_dev));
    }
    Outcome {
        ok,
        detail: notes.join(", "),
    }
}

fn classification() -> Outcome {
    let grid = GridSpec::default();
    let report = classify::pin_case4(&grid, Execution::Parallel);
    let mapping: Vec<(String, Option<FamilyId>)> = classify::match_survivors()
        .into_iter()
        .filter(|m| m.passed())
        .map(|m| (m.case, m.family))
        .collect();
    let expected: Vec<(String, Option<FamilyId>)> = [
        ("1", FamilyId::F1),
        ("3+", FamilyId::F2),
        ("3-", FamilyId::F3),
        ("4", FamilyId::F4),
        ("5", FamilyId::F5),
    ]
    .into_iter()
    .map(|(c, f)| (c.to_string(), Some(f)))
    .collect();
    Outcome {
        ok: report.passed() && report.passes == 0 && report.cells == 2 * 60 * 121 && mapping == expected,
        detail: format!(
            "{} cells, {} passes, claimed point tangent: {}; mapping {:?}",
            report.cells, report.passes, report.claimed_point.in_span, mapping
        ),
    }
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let random_elem = |rng: &mut ChaCha8Rng| {
        let mut q = || FieldElem::ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9));
        &(&(&q() + &(&q() * &FieldElem::sqrt2())) + &(&q() * &FieldElem::sqrt3())) + &(&q() * &FieldElem::sqrt6())
    };
    let mut field_failures = 0;
    for _ in 0..1000 {
        let (x, y, z) = (random_elem(&mut rng), random_elem(&mut rng), random_elem(&mut rng));
        let assoc_add = &(&x + &y) + &z == &x + &(&y + &z);
        let assoc_mul = &(&x * &y) * &z == &x * &(&y * &z);
        let comm = &x * &y == &y * &x && &x + &y == &y + &x;
        let distrib = &x * &(&y + &z) == &(&x * &y) + &(&x * &z);
        let inverse = x.is_zero() || (&x * &x.inv().unwrap()).is_one();
        if !(assoc_add && assoc_mul && comm && distrib && inverse) {
            field_failures += 1;
        }
    }

    let mut jacobi_failures = 0;
    for a in 1..=8 {
        for b in 1..=8 {
            for c in 1..=8 {
                let (x, y, z) = (FullVec::basis(a), FullVec::basis(b), FullVec::basis(c));
                let s = &(&bracket_vec(&x, &bracket_vec(&y, &z)) + &bracket_vec(&y, &bracket_vec(&z, &x)))
                    + &bracket_vec(&z, &bracket_vec(&x, &y));
                if !s.is_zero() {
                    jacobi_failures += 1;
                }
            }
        }
    }

    let mut dphi_failures = 0;
    for a in 1..=6 {
        for b in 1..=6 {
            let (x, y) = (e(a), e(b));
            if metric(&nkflag::liealg::dphi(&x), &nkflag::liealg::dphi(&y)) != metric(&x, &y) {
                dphi_failures += 1;
            }
        }
    }

    let tensor_failures: Vec<String> = nkgeom::tensor_identities()
        .into_iter()
        .filter(|(_, s)| !s.passed())
        .map(|(n, _)| n)
        .collect();

    Outcome {
        ok: field_failures == 0 && jacobi_failures == 0 && dphi_failures == 0 && tensor_failures.is_empty(),
        detail: format!(
            "field 1000 triples: {field_failures} failures; Jacobi 512: {jacobi_failures}; dphi 36: {dphi_failures}; tensor identities failing: {tensor_failures:?}"
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let results = [
        criterion(1, "natural reductivity", Some(Duration::from_secs(1)), natural_reductivity),
        criterion(2, "nearly Kähler identity", Some(Duration::from_secs(1)), nearly_kaehler),
        criterion(3, "curvature formula vs bracket oracle", Some(Duration::from_secs(5)), curvature_validation),
        criterion(4, "reported constants", None, reported_constants),
        criterion(5, "example certification", None, certification),
        criterion(6, "exponential cross-check", Some(Duration::from_secs(10)), exponential),
        criterion(7, "classification sweep", Some(Duration::from_secs(60)), classification),
        criterion(8, "property suites", None, properties),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    println!("acceptance: {} of {} criteria passed", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
