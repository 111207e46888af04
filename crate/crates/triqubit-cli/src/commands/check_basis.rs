use std::path::Path;

use triqubit::productsearch::{seesaw_max_overlap, Method, Projector, SeesawConfig, Verdict};
use triqubit::qstate::Party;
use triqubit::tangles;

use crate::files::{read_to_string, BasisFile};
use crate::report::{
    emit, pretty_kv, CertificationBody, CheckBasisReport, PartyTriple, StateRow, REPORT_SCHEMA,
};

pub fn run(
    path: &Path,
    certify: bool,
    normalize: bool,
    seed: u64,
    restarts: usize,
    tol: f64,
    pretty: bool,
) -> u8 {
    let basis = match read_to_string(path)
        .and_then(|text| BasisFile::parse(&text))
        .and_then(|file| file.to_basis(normalize))
    {
        Ok(b) => b,
        Err(diag) => {
            eprintln!("error: {diag}");
            return 2;
        }
    };

    let states = basis.states();
    let mut gram_residual = 0.0f64;
    for (i, x) in states.iter().enumerate() {
        for (j, y) in states.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            gram_residual = gram_residual.max((x.inner(y) - target).norm());
        }
    }

    let rows: Vec<StateRow> = states
        .iter()
        .enumerate()
        .map(|(index, s)| {
            let t = Party::ALL.map(|p| tangles::one_tangle_minors(s, p));
            StateRow {
                index,
                one_tangles: PartyTriple {
                    a: t[0],
                    b: t[1],
                    c: t[2],
                },
                classification: if tangles::is_fully_product(s, 1e-10) {
                    "product"
                } else {
                    "entangled"
                },
            }
        })
        .collect();

    let all_product = rows.iter().all(|r| r.classification == "product");
    let all_entangled = rows.iter().all(|r| r.classification == "entangled");
    let kind = if all_product {
        "product"
    } else if all_entangled {
        "entangled"
    } else {
        "mixed"
    };

    let mut exit = 0u8;
    let certification = if certify {
        let cfg = SeesawConfig {
            restarts,
            tol,
            seed,
            ..SeesawConfig::default()
        };
        let (target, projector) = if all_product {
            let span = match Projector::span(states) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: states: {e}");
                    return 2;
                }
            };
            ("upb-unextendibility", span.complement())
        } else if all_entangled {
            match Projector::span(states) {
                Ok(p) => ("ees-product-freeness", p),
                Err(e) => {
                    eprintln!("error: states: {e}");
                    return 2;
                }
            }
        } else {
            eprintln!("error: states: set mixes product and entangled members; --certify needs a homogeneous basis");
            return 2;
        };
        let search = seesaw_max_overlap(&projector, &cfg);
        let verdict = Verdict::from_best_value(search.best_value, Method::Seesaw);
        if !search.converged {
            exit = 3;
        }
        Some(CertificationBody::new(target, &verdict, &search))
    } else {
        None
    };

    let body = CheckBasisReport {
        schema: REPORT_SCHEMA,
        command: "check-basis",
        input: path.display().to_string(),
        count: states.len(),
        kind,
        gram_residual,
        states: rows,
        certification,
    };
    emit(&body);

    if pretty {
        let mut rows: Vec<(String, String)> = vec![
            ("states".into(), body.count.to_string()),
            ("kind".into(), kind.into()),
            ("gram residual".into(), format!("{gram_residual:.3e}")),
        ];
        if let Some(cert) = &body.certification {
            rows.push(("certification".into(), cert.target.into()));
            rows.push(("best overlap".into(), format!("{:.12}", cert.best_overlap)));
            rows.push(("margin".into(), format!("{:.6e}", cert.margin)));
            rows.push(("certified".into(), cert.certified.to_string()));
            if let Some(w) = &cert.warning {
                rows.push(("warning".into(), w.clone()));
            }
        }
        pretty_kv(&rows);
    }
    exit
}
