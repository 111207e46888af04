//! Recomputes every published numeric claim about the Shifts family and
//! reports each as PASS, FAIL, or DISCREPANCY.
//!
//! DISCREPANCY is reserved for reference values that disagree with
//! recomputation while the recomputed value passes its independent
//! cross-checks (both hyperdeterminant forms, squared Wootters concurrence
//! of the matching marginal, the defining tangle combination). Three claims
//! land there: the three-term tau_AB (printed 4/9, forced to 0 by the
//! combination that defines it) and the four-term tau_ABC and pairwise
//! tangles (printed 3/16 and 3/32, recomputed 1/8). Any FAIL row makes the
//! command exit nonzero; DISCREPANCY rows do not.

use num_complex::Complex64;

use triqubit::bases::{
    cbupb, combine, dual_cbupb, eeb, min_upb_cardinality, shifts_upb, shifts_upb_factors,
    LocalUnitary,
};
use triqubit::boundstate::{paper_matrix, ppt_report, rho_from_eeb, rho_from_upb_complement};
use triqubit::productsearch::{ees_product_free, upb_extendibility, SeesawConfig};
use triqubit::qstate::{DensityMatrix3Q, Party, PartyPair, PureState3Q};
use triqubit::tangles::{
    hyperdeterminant, one_tangle_minors, tangle_profile, three_tangle, wootters_concurrence,
};

use crate::report::{
    emit, pretty_claims, ClaimCounts, ClaimReport, ClaimStatus, VerifyPaperReport, REPORT_SCHEMA,
};

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn claim(id: &str, paper: f64, computed: f64, tol: f64) -> ClaimReport {
    let status = if (computed - paper).abs() <= tol {
        ClaimStatus::Pass
    } else {
        ClaimStatus::Fail
    };
    ClaimReport {
        claim_id: id.to_string(),
        paper_value: Some(paper),
        computed_value: computed,
        status,
        tolerance: tol,
        note: None,
    }
}

fn claim_predicate(id: &str, ok: bool, computed: f64, tol: f64, note: &str) -> ClaimReport {
    ClaimReport {
        claim_id: id.to_string(),
        paper_value: None,
        computed_value: computed,
        status: if ok { ClaimStatus::Pass } else { ClaimStatus::Fail },
        tolerance: tol,
        note: Some(note.to_string()),
    }
}

/// A reference value under the DISCREPANCY protocol: PASS if recomputation
/// matches the printed value, DISCREPANCY if it differs but the cross-checks
/// hold, FAIL otherwise.
fn claim_crosschecked(
    id: &str,
    paper: f64,
    computed: f64,
    tol: f64,
    cross_checks_ok: bool,
    note: String,
) -> ClaimReport {
    let status = if (computed - paper).abs() <= tol {
        ClaimStatus::Pass
    } else if cross_checks_ok {
        ClaimStatus::Discrepancy
    } else {
        ClaimStatus::Fail
    };
    ClaimReport {
        claim_id: id.to_string(),
        paper_value: Some(paper),
        computed_value: computed,
        status,
        tolerance: tol,
        note: Some(note),
    }
}

/// Factored form of the hyperdeterminant, the independent route used to
/// cross-check the quartic expansion implemented by the library.
fn hdet_factored(psi: &PureState3Q) -> Complex64 {
    let a = psi.amps();
    let s = a[0] * a[7] + a[1] * a[6] - a[2] * a[5] - a[3] * a[4];
    s * s + 4.0 * (a[0] * a[6] - a[2] * a[4]) * (a[3] * a[5] - a[1] * a[7])
}

fn squared_concurrence(psi: &PureState3Q, pp: PartyPair) -> f64 {
    let marginal = DensityMatrix3Q::pure(psi).reduce_pair(pp);
    let c = wootters_concurrence(&marginal).expect("marginals of pure states are densities");
    c * c
}

fn eeb_sum(n: usize) -> PureState3Q {
    let mut coeffs = [C_ZERO; 4];
    for c in coeffs.iter_mut().take(n) {
        *c = Complex64::new(1.0, 0.0);
    }
    combine(&eeb(), coeffs).expect("nonzero combination")
}

pub fn run(seed: u64, restarts: usize, pretty: bool) -> u8 {
    let cfg = SeesawConfig {
        restarts,
        seed,
        ..SeesawConfig::default()
    };
    let mut claims: Vec<ClaimReport> = Vec::new();

    // --- the product half: separable, orthogonal, minimal, unextendible
    claims.push(claim(
        "S2.upb.min_cardinality",
        4.0,
        min_upb_cardinality(&[2, 2, 2]).expect("valid dimensions") as f64,
        0.0,
    ));
    let s = shifts_upb();
    let factors = shifts_upb_factors();
    for (i, (member, factor)) in s.states().iter().zip(&factors).enumerate() {
        let max_tangle = Party::ALL
            .map(|p| one_tangle_minors(member, p).abs())
            .into_iter()
            .fold(0.0, f64::max);
        claims.push(claim(
            &format!("S2.S{}.fully_separable", i + 1),
            0.0,
            max_tangle,
            1e-12,
        ));
        let expanded = factor.expand();
        let residual = (0..8)
            .map(|r| (member.amp(r) - expanded.amp(r)).norm())
            .fold(0.0, f64::max);
        claims.push(claim(
            &format!("S2.S{}.product_form", i + 1),
            0.0,
            residual,
            1e-12,
        ));
    }

    // --- the entangled half: maximally tangled, orthogonal to the UPB
    let t = eeb();
    for (j, phi) in t.states().iter().enumerate() {
        for p in Party::ALL {
            claims.push(claim(
                &format!("S2.phi{}.tau_{p}", j + 1),
                1.0,
                one_tangle_minors(phi, p),
                1e-12,
            ));
        }
        claims.push(claim(
            &format!("S2.phi{}.tau_ABC", j + 1),
            1.0,
            three_tangle(phi),
            1e-12,
        ));
    }
    let cross = s
        .states()
        .iter()
        .flat_map(|x| t.states().iter().map(move |y| x.inner(y).norm()))
        .fold(0.0, f64::max);
    claims.push(claim("S2.cross_orthogonality", 0.0, cross, 1e-12));

    let basis = cbupb(s.clone(), t.clone()).expect("canonical family is a CBUPB");
    let all = basis.all_states();
    let gram = all
        .iter()
        .enumerate()
        .flat_map(|(i, x)| {
            all.iter().enumerate().map(move |(j, y)| {
                (x.inner(y) - Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).norm()
            })
        })
        .fold(0.0, f64::max);
    claims.push(claim("S2.basis.gram", 0.0, gram, 1e-12));
    let uniform = DensityMatrix3Q::mix(&all, &[0.125; 8]).expect("uniform weights");
    let completeness = (0..8)
        .flat_map(|r| (0..8).map(move |c| (r, c)))
        .map(|(r, c)| {
            let target = if r == c { 0.125 } else { 0.0 };
            (uniform.entry(r, c) - Complex64::new(target, 0.0)).norm() * 8.0
        })
        .fold(0.0, f64::max);
    claims.push(claim("S2.basis.completeness", 0.0, completeness, 1e-12));

    let upb_verdict = upb_extendibility(&s, &cfg);
    claims.push(claim_predicate(
        "S2.upb.unextendible",
        upb_verdict.certified,
        1.0 - upb_verdict.margin,
        1e-6,
        "maximum product overlap with the complement of span(S) must stay below 1 - 1e-6",
    ));
    let ees_verdict = ees_product_free(&t, &cfg);
    claims.push(claim_predicate(
        "S2.ees.product_free",
        ees_verdict.certified,
        1.0 - ees_verdict.margin,
        1e-6,
        "maximum product overlap with span(T) must stay below 1 - 1e-6",
    ));

    // --- worked combinations of the entangled basis
    let two = eeb_sum(2);
    let p2 = tangle_profile(&two);
    claims.push(claim("S3.two_term.tau_A", 0.75, p2.tau_a, 1e-12));
    claims.push(claim("S3.two_term.tau_B", 0.5, p2.tau_b, 1e-12));
    claims.push(claim("S3.two_term.tau_C", 0.5, p2.tau_c, 1e-12));
    claims.push(claim("S3.two_term.tau_ABC", 0.25, p2.tau_abc, 1e-12));
    claims.push(claim("S3.two_term.tau_AB", 0.25, p2.tau_ab, 1e-12));
    claims.push(claim("S3.two_term.tau_BC", 0.0, p2.tau_bc, 1e-12));
    claims.push(claim("S3.two_term.tau_AC", 0.25, p2.tau_ac, 1e-12));

    let three = eeb_sum(3);
    let p3 = tangle_profile(&three);
    let four_ninths = 4.0 / 9.0;
    claims.push(claim("S3.three_term.tau_A", four_ninths, p3.tau_a, 1e-12));
    claims.push(claim("S3.three_term.tau_B", 0.0, p3.tau_b, 1e-12));
    claims.push(claim("S3.three_term.tau_C", four_ninths, p3.tau_c, 1e-12));
    claims.push(claim("S3.three_term.tau_ABC", 0.0, p3.tau_abc, 1e-12));
    {
        let combination = 0.5 * (p3.tau_a + p3.tau_b - p3.tau_c - p3.tau_abc);
        let csq = squared_concurrence(&three, PartyPair::AB);
        let cross_ok =
            (p3.tau_ab - combination).abs() <= 1e-12 && (p3.tau_ab - csq).abs() <= 1e-8;
        claims.push(claim_crosschecked(
            "S3.three_term.tau_AB",
            four_ninths,
            p3.tau_ab,
            1e-12,
            cross_ok,
            format!(
                "printed 4/9 contradicts the defining combination {combination:.3e} and the \
                 concurrence cross-check C^2 = {csq:.3e}"
            ),
        ));
    }
    claims.push(claim("S3.three_term.tau_BC", 0.0, p3.tau_bc, 1e-12));
    claims.push(claim("S3.three_term.tau_AC", four_ninths, p3.tau_ac, 1e-12));

    let four = eeb_sum(4);
    let p4 = tangle_profile(&four);
    for p in Party::ALL {
        claims.push(claim(
            &format!("S3.four_term.tau_{p}"),
            0.375,
            p4.one_tangle(p),
            1e-12,
        ));
    }
    {
        let quartic = hyperdeterminant(&four);
        let factored = hdet_factored(&four);
        let route_gap = (quartic - factored).norm();
        let cross_ok = route_gap <= 1e-12;
        claims.push(claim_crosschecked(
            "S3.four_term.tau_ABC",
            3.0 / 16.0,
            p4.tau_abc,
            1e-12,
            cross_ok,
            format!(
                "printed 3/16; both hyperdeterminant forms agree to {route_gap:.1e} on |4 Hdet| = {}",
                p4.tau_abc
            ),
        ));
        for pp in PartyPair::ALL {
            let tau = p4.pairwise(pp);
            let csq = squared_concurrence(&four, pp);
            claims.push(claim_crosschecked(
                &format!("S3.four_term.tau_{pp}"),
                3.0 / 32.0,
                tau,
                1e-12,
                (tau - csq).abs() <= 1e-8,
                format!("printed 3/32; concurrence cross-check C^2 = {csq:.12}"),
            ));
        }
    }

    // --- the mixture and its certificates
    let rho = rho_from_eeb(&t).expect("uniform mixture");
    let matrix_residual = rho.max_abs_diff(&paper_matrix());
    claims.push(claim("S4.rho.matrix", 0.0, matrix_residual, 1e-12));
    let via_s = rho_from_upb_complement(&s).expect("complement construction");
    claims.push(claim(
        "S4.rho.construction_identity",
        0.0,
        rho.max_abs_diff(&via_s),
        1e-12,
    ));
    let ppt = ppt_report(&rho);
    for (party, spectrum) in Party::ALL.iter().zip(&ppt.spectra) {
        let min = spectrum.iter().copied().fold(f64::INFINITY, f64::min);
        claims.push(claim_predicate(
            &format!("S4.rho.ppt.{party}"),
            min >= -1e-10,
            min,
            1e-10,
            "partial transpose across this cut must stay positive semidefinite",
        ));
    }
    claims.push(claim_predicate(
        "S4.rho.range_product_free",
        ees_verdict.certified,
        1.0 - ees_verdict.margin,
        1e-6,
        "the range of the mixture is span(T), which must contain no product state",
    ));
    claims.push(claim_predicate(
        "S4.rho.bound_entangled",
        ppt.ppt_all && ees_verdict.certified,
        f64::from(u8::from(ppt.ppt_all && ees_verdict.certified)),
        0.0,
        "PPT on every cut plus a product-free range",
    ));

    // --- the dual family
    let dual = dual_cbupb();
    let flip = LocalUnitary::bit_flip();
    let dual_residual = all
        .iter()
        .zip(dual.all_states().iter())
        .map(|(orig, dual_state)| 1.0 - flip.apply(orig).inner(dual_state).norm())
        .fold(0.0, f64::max);
    claims.push(claim("S4.dual.bit_flip_image", 0.0, dual_residual, 1e-12));
    let dual_ppt = ppt_report(&rho_from_eeb(dual.entangled_half()).expect("dual mixture"));
    claims.push(claim_predicate(
        "S4.dual.ppt_all",
        dual_ppt.ppt_all,
        dual_ppt.min_eigenvalue,
        1e-10,
        "the dual mixture must be PPT on every cut",
    ));
    let dual_verdict = ees_product_free(dual.entangled_half(), &cfg);
    claims.push(claim_predicate(
        "S4.dual.range_product_free",
        dual_verdict.certified,
        1.0 - dual_verdict.margin,
        1e-6,
        "the dual entangled span must contain no product state",
    ));

    let counts = ClaimCounts {
        pass: claims.iter().filter(|c| c.status == ClaimStatus::Pass).count(),
        fail: claims.iter().filter(|c| c.status == ClaimStatus::Fail).count(),
        discrepancy: claims
            .iter()
            .filter(|c| c.status == ClaimStatus::Discrepancy)
            .count(),
    };
    let all_ok = counts.fail == 0;
    let body = VerifyPaperReport {
        schema: REPORT_SCHEMA,
        command: "verify-paper",
        claims,
        counts,
        all_ok,
    };
    emit(&body);
    if pretty {
        pretty_claims(&body.claims);
        eprintln!(
            "{} PASS, {} FAIL, {} DISCREPANCY",
            body.counts.pass, body.counts.fail, body.counts.discrepancy
        );
    }
    u8::from(!all_ok)
}
