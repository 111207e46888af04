use std::path::Path;

use triqubit::bases::{dual_cbupb, eeb, shifts_upb};
use triqubit::boundstate::{certify_bound_entanglement, rho_from_eeb};
use triqubit::productsearch::SeesawConfig;

use crate::files::{sixteenths_of, MatrixFile};
use crate::report::{
    emit, method_name, pretty_kv, BoundStateReport, MatrixBody, PptBody, SpectraBody, VerdictBody,
    REPORT_SCHEMA,
};

pub fn run(
    dual: bool,
    export: Option<&Path>,
    seed: u64,
    restarts: usize,
    tol: f64,
    pretty: bool,
) -> u8 {
    let (s, t) = if dual {
        let d = dual_cbupb();
        (d.product_half().clone(), d.entangled_half().clone())
    } else {
        (shifts_upb(), eeb())
    };
    let cfg = SeesawConfig {
        restarts,
        tol,
        seed,
        ..SeesawConfig::default()
    };

    let rho = rho_from_eeb(&t).expect("bundled bases mix cleanly");
    let cert = certify_bound_entanglement(&s, &t, &cfg).expect("bundled bases form a CBUPB");

    let exported_to = match export {
        Some(path) => {
            let file = MatrixFile::from_density(&rho);
            let text = serde_json::to_string_pretty(&file).expect("matrix serializes");
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
            Some(path.display().to_string())
        }
        None => None,
    };

    let entries: Vec<Vec<[f64; 2]>> = (0..8)
        .map(|r| {
            (0..8)
                .map(|c| {
                    let z = rho.entry(r, c);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect();

    let body = BoundStateReport {
        schema: REPORT_SCHEMA,
        command: "bound-state",
        dual,
        matrix: MatrixBody {
            entries,
            sixteenths: sixteenths_of(&rho),
        },
        matrix_matches_paper: cert.matrix_matches_paper,
        eigenvalues: rho.eigenvalues(),
        ppt: PptBody {
            spectra: SpectraBody {
                a: cert.ppt.spectra[0].clone(),
                b: cert.ppt.spectra[1].clone(),
                c: cert.ppt.spectra[2].clone(),
            },
            min_eigenvalue: cert.ppt.min_eigenvalue,
            ppt_all: cert.ppt.ppt_all,
        },
        range_product_free: VerdictBody {
            certified: cert.range_product_free.certified,
            margin: cert.range_product_free.margin,
            method: method_name(cert.range_product_free.method),
        },
        bound_entangled: cert.is_bound_entangled(),
        exported_to,
    };
    emit(&body);

    if pretty {
        let rows: Vec<(String, String)> = vec![
            ("family".into(), if dual { "dual" } else { "canonical" }.into()),
            (
                "matches reference matrix".into(),
                body.matrix_matches_paper.to_string(),
            ),
            (
                "PPT min eigenvalue".into(),
                format!("{:.3e}", body.ppt.min_eigenvalue),
            ),
            ("PPT all cuts".into(), body.ppt.ppt_all.to_string()),
            (
                "range product-free".into(),
                body.range_product_free.certified.to_string(),
            ),
            (
                "range margin".into(),
                format!("{:.6e}", body.range_product_free.margin),
            ),
            ("bound entangled".into(), body.bound_entangled.to_string()),
        ];
        pretty_kv(&rows);
    }
    0
}
