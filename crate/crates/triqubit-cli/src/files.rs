//! On-disk JSON schemas: states, bases, and exported matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use triqubit::bases::{BasisKind, BasisSet};
use triqubit::qstate::{DensityMatrix3Q, PureState3Q};

pub const STATE_SCHEMA: &str = "triqubit-state/1";
pub const BASIS_SCHEMA: &str = "triqubit-basis/1";
pub const MATRIX_SCHEMA: &str = "triqubit-matrix/1";

/// A single pure state: eight [re, im] pairs in r-order (r = 4i + 2j + k).
#[derive(Serialize, Deserialize)]
pub struct StateFile {
    pub schema: String,
    pub amplitudes: Vec<[f64; 2]>,
}

/// A list of states sharing the amplitude layout of [`StateFile`].
#[derive(Serialize, Deserialize)]
pub struct BasisFile {
    pub schema: String,
    pub states: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

/// An exported 8x8 matrix; `sixteenths` is present when every entry is an
/// exact integer over 16.
#[derive(Serialize, Deserialize)]
pub struct MatrixFile {
    pub schema: String,
    pub entries: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sixteenths: Option<Vec<Vec<i64>>>,
}

/// Norm tolerance accepted from files before explicit normalization.
const FILE_NORM_TOL: f64 = 1e-6;

fn amplitudes_to_array(
    amplitudes: &[[f64; 2]],
    field: &str,
) -> Result<[Complex64; 8], String> {
    if amplitudes.len() != 8 {
        return Err(format!(
            "{field}: expected 8 entries, got {}",
            amplitudes.len()
        ));
    }
    let mut amps = [Complex64::new(0.0, 0.0); 8];
    for (r, pair) in amplitudes.iter().enumerate() {
        if !pair[0].is_finite() {
            return Err(format!("{field}[{r}][0]: not a finite number"));
        }
        if !pair[1].is_finite() {
            return Err(format!("{field}[{r}][1]: not a finite number"));
        }
        amps[r] = Complex64::new(pair[0], pair[1]);
    }
    Ok(amps)
}

fn state_from_amps(
    amps: [Complex64; 8],
    normalize: bool,
    field: &str,
) -> Result<(PureState3Q, f64), String> {
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let residual = (norm - 1.0).abs();
    if !normalize && !(residual <= FILE_NORM_TOL) {
        return Err(format!(
            "{field}: norm residual {residual:.3e} exceeds {FILE_NORM_TOL:.0e} (pass --normalize to rescale)"
        ));
    }
    let state = PureState3Q::normalized(amps)
        .map_err(|e| format!("{field}: {e}"))?;
    Ok((state, residual))
}

impl StateFile {
    pub fn from_state(state: &PureState3Q) -> Self {
        StateFile {
            schema: STATE_SCHEMA.to_string(),
            amplitudes: state.amps().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        if file.schema != STATE_SCHEMA {
            return Err(format!(
                "schema: expected \"{STATE_SCHEMA}\", got \"{}\"",
                file.schema
            ));
        }
        Ok(file)
    }

    /// Returns the state and the input's norm residual.
    pub fn to_state(&self, normalize: bool) -> Result<(PureState3Q, f64), String> {
        let amps = amplitudes_to_array(&self.amplitudes, "amplitudes")?;
        state_from_amps(amps, normalize, "amplitudes")
    }
}

impl BasisFile {
    pub fn from_states(states: &[PureState3Q], kind: Option<&str>) -> Self {
        BasisFile {
            schema: BASIS_SCHEMA.to_string(),
            states: states
                .iter()
                .map(|s| s.amps().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            kind: kind.map(str::to_string),
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let file: BasisFile =
            serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        if file.schema != BASIS_SCHEMA {
            return Err(format!(
                "schema: expected \"{BASIS_SCHEMA}\", got \"{}\"",
                file.schema
            ));
        }
        if file.states.is_empty() || file.states.len() > 8 {
            return Err(format!(
                "states: expected between 1 and 8 states, got {}",
                file.states.len()
            ));
        }
        Ok(file)
    }

    pub fn to_states(&self, normalize: bool) -> Result<Vec<PureState3Q>, String> {
        self.states
            .iter()
            .enumerate()
            .map(|(i, raw)| {
                let field = format!("states[{i}]");
                let amps = amplitudes_to_array(raw, &field)?;
                state_from_amps(amps, normalize, &field).map(|(s, _)| s)
            })
            .collect()
    }

    /// Builds a validated basis set, classifying the kind when none is
    /// declared in the file.
    pub fn to_basis(&self, normalize: bool) -> Result<BasisSet, String> {
        let states = self.to_states(normalize)?;
        let kind = match self.kind.as_deref() {
            Some("product") => BasisKind::Product,
            Some("entangled") => BasisKind::Entangled,
            Some("mixed") | None => BasisKind::Mixed,
            Some(other) => {
                return Err(format!(
                    "kind: expected \"product\", \"entangled\" or \"mixed\", got \"{other}\""
                ))
            }
        };
        BasisSet::new(states, kind).map_err(|e| format!("states: {e}"))
    }
}

impl MatrixFile {
    pub fn from_density(rho: &DensityMatrix3Q) -> Self {
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
        MatrixFile {
            schema: MATRIX_SCHEMA.to_string(),
            entries,
            sixteenths: sixteenths_of(rho),
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        if file.schema != MATRIX_SCHEMA {
            return Err(format!(
                "schema: expected \"{MATRIX_SCHEMA}\", got \"{}\"",
                file.schema
            ));
        }
        Ok(file)
    }
}

/// The integer numerators over 16, when that representation is exact.
pub fn sixteenths_of(rho: &DensityMatrix3Q) -> Option<Vec<Vec<i64>>> {
    let mut rows = Vec::with_capacity(8);
    for r in 0..8 {
        let mut row = Vec::with_capacity(8);
        for c in 0..8 {
            let z = rho.entry(r, c);
            let scaled = z.re * 16.0;
            let nearest = scaled.round();
            if z.im != 0.0 || scaled != nearest {
                return None;
            }
            row.push(nearest as i64);
        }
        rows.push(row);
    }
    Some(rows)
}

pub fn read_to_string(path: &std::path::Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}
