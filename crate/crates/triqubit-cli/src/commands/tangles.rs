use std::path::Path;

use triqubit::qstate::Party;
use triqubit::tangles;

use crate::files::{read_to_string, StateFile};
use crate::report::{emit, pretty_kv, InputBody, PartyTriple, TanglesReport, REPORT_SCHEMA};

pub fn run(path: &Path, normalize: bool, pretty: bool) -> u8 {
    let (state, norm_residual) = match read_to_string(path)
        .and_then(|text| StateFile::parse(&text))
        .and_then(|file| file.to_state(normalize))
    {
        Ok(v) => v,
        Err(diag) => {
            eprintln!("error: {diag}");
            return 2;
        }
    };

    let profile = tangles::tangle_profile(&state);
    let hdet = tangles::hyperdeterminant(&state);
    let minors = Party::ALL.map(|p| tangles::one_tangle_minors(&state, p));
    let entropy = Party::ALL.map(|p| tangles::one_tangle_entropy(&state, p));
    let route_residual = minors
        .iter()
        .zip(&entropy)
        .map(|(m, e)| (m - e).abs())
        .fold(0.0, f64::max);

    let body = TanglesReport {
        schema: REPORT_SCHEMA,
        command: "tangles",
        input: InputBody {
            path: path.display().to_string(),
            norm_residual,
            normalized: normalize,
        },
        tangle_profile: (&profile).into(),
        hyperdeterminant: [hdet.re, hdet.im],
        three_tangle: tangles::three_tangle(&state),
        one_tangles_minors: PartyTriple {
            a: minors[0],
            b: minors[1],
            c: minors[2],
        },
        one_tangles_entropy: PartyTriple {
            a: entropy[0],
            b: entropy[1],
            c: entropy[2],
        },
        route_residual,
        fully_product: tangles::is_fully_product(&state, 1e-10),
    };
    emit(&body);

    if pretty {
        let rows: Vec<(String, String)> = vec![
            ("tau_A(BC)".into(), format!("{:.12}", profile.tau_a)),
            ("tau_B(AC)".into(), format!("{:.12}", profile.tau_b)),
            ("tau_C(AB)".into(), format!("{:.12}", profile.tau_c)),
            ("tau_ABC".into(), format!("{:.12}", profile.tau_abc)),
            ("tau_AB".into(), format!("{:.12}", profile.tau_ab)),
            ("tau_BC".into(), format!("{:.12}", profile.tau_bc)),
            ("tau_AC".into(), format!("{:.12}", profile.tau_ac)),
            (
                "hyperdeterminant".into(),
                format!("{:.12} {:+.12}i", hdet.re, hdet.im),
            ),
            ("route residual".into(), format!("{route_residual:.3e}")),
            ("fully product".into(), body.fully_product.to_string()),
        ];
        pretty_kv(&rows);
    }
    0
}
