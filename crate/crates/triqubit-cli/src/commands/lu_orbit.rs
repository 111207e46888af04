use triqubit::bases::{cbupb, eeb, lu_transform, random_local_unitary, shifts_upb};
use triqubit::tangles::tangle_profile;

use crate::report::{emit, pretty_kv, LuOrbitReport, OrbitSample, REPORT_SCHEMA};

pub fn run(seed: u64, count: usize, pretty: bool) -> u8 {
    let canonical = cbupb(shifts_upb(), eeb()).expect("canonical family is a CBUPB");
    let states = canonical.all_states();
    let originals: Vec<[f64; 7]> = states
        .iter()
        .map(|s| tangle_profile(s).as_array())
        .collect();

    let mut samples = Vec::with_capacity(count);
    let mut max_gram = 0.0f64;
    let mut max_drift = 0.0f64;
    for index in 0..count {
        let sample_seed = seed.wrapping_add(index as u64);
        let u = random_local_unitary(sample_seed);
        let moved = lu_transform(&states, &u);

        let mut gram_residual = 0.0f64;
        for (i, x) in moved.iter().enumerate() {
            for (j, y) in moved.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                gram_residual = gram_residual.max((x.inner(y) - target).norm());
            }
        }
        let mut tangle_drift = 0.0f64;
        for (orig, state) in originals.iter().zip(&moved) {
            for (a, b) in orig.iter().zip(tangle_profile(state).as_array()) {
                tangle_drift = tangle_drift.max((a - b).abs());
            }
        }

        max_gram = max_gram.max(gram_residual);
        max_drift = max_drift.max(tangle_drift);
        samples.push(OrbitSample {
            index,
            seed: sample_seed,
            gram_residual,
            tangle_drift,
            valid: gram_residual < 1e-9 && tangle_drift < 1e-9,
        });
    }

    let body = LuOrbitReport {
        schema: REPORT_SCHEMA,
        command: "lu-orbit",
        seed,
        count,
        all_valid: samples.iter().all(|s| s.valid),
        max_gram_residual: max_gram,
        max_tangle_drift: max_drift,
        samples,
    };
    emit(&body);

    if pretty {
        let rows: Vec<(String, String)> = vec![
            ("samples".into(), count.to_string()),
            ("max gram residual".into(), format!("{max_gram:.3e}")),
            ("max tangle drift".into(), format!("{max_drift:.3e}")),
            ("all valid".into(), body.all_valid.to_string()),
        ];
        pretty_kv(&rows);
    }
    0
}
