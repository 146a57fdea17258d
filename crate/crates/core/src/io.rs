//! JSON files for states, generators, qubit states and reports.
//!
//! Mode indices in files are 1-based; a record's coefficient multiplies the
//! ascending monomial `f^{m1}+ ... f^{mk}+ |0>`. Complex matrix entries are
//! `[re, im]` pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classify::DEFAULT_TOL;
use crate::embed::{ThreeQubitState, TwoQubitState};
use crate::error::{Error, Result};
use crate::fock::{mask_to_modes, modes_to_mask, FockState, ParitySector, DEFAULT_MAX_MODES};
use crate::linalg::{c, CMatrix};
use crate::spin::SpinGenerator;

/// Environment variable overriding the default zero-test tolerance.
pub const TOL_ENV_VAR: &str = "FOCKSPIN_TOL";
pub const TOOL_NAME: &str = "fockspin";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// `FOCKSPIN_TOL` if set to a positive float, else [`DEFAULT_TOL`].
pub fn default_tolerance() -> Result<f64> {
    match std::env::var(TOL_ENV_VAR) {
        Ok(s) => parse_tolerance(&s),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

pub fn parse_tolerance(s: &str) -> Result<f64> {
    match s.trim().parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(Error::Schema(format!("tolerance must be a positive number, got '{s}'"))),
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeRecord {
    pub modes: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateMeta {
    pub sector: ParitySector,
    pub norm: f64,
    /// Norm before a transformation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_norm: Option<f64>,
    /// Whether every applied generator was unitary.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitary: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub d: usize,
    pub amplitudes: Vec<AmplitudeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<StateMeta>,
}

impl StateFile {
    /// Nonzero amplitudes ordered by mask.
    pub fn from_state(phi: &FockState) -> Self {
        let amplitudes = (0..phi.dim())
            .filter(|&m| phi.get(m) != Complex64::new(0.0, 0.0))
            .map(|m| {
                let z = phi.get(m);
                AmplitudeRecord {
                    modes: mask_to_modes(m),
                    re: z.re,
                    im: z.im,
                }
            })
            .collect();
        StateFile {
            d: phi.d(),
            amplitudes,
            meta: None,
        }
    }

    pub fn with_meta(mut self, phi: &FockState) -> Self {
        self.meta = Some(StateMeta {
            sector: phi.parity_sector(),
            norm: phi.norm(),
            input_norm: None,
            unitary: None,
        });
        self
    }

    pub fn to_state(&self) -> Result<FockState> {
        if self.d == 0 || self.d > DEFAULT_MAX_MODES {
            return Err(schema(format!("d = {} outside 1..={DEFAULT_MAX_MODES}", self.d)));
        }
        let mut phi = FockState::zeros(self.d)?;
        let mut seen = vec![false; phi.dim()];
        for r in &self.amplitudes {
            if r.modes.windows(2).any(|w| w[0] >= w[1]) {
                return Err(schema(format!("modes {:?} not strictly ascending", r.modes)));
            }
            if let Some(&m) = r.modes.iter().find(|&&m| m == 0 || m > self.d) {
                return Err(schema(format!("mode {m} outside 1..={}", self.d)));
            }
            if !r.re.is_finite() || !r.im.is_finite() {
                return Err(schema(format!("non-finite amplitude for {:?}", r.modes)));
            }
            let mask = modes_to_mask(self.d, &r.modes)?;
            if seen[mask] {
                return Err(schema(format!("duplicate mode set {:?}", r.modes)));
            }
            seen[mask] = true;
            phi.set(mask, c(r.re, r.im));
        }
        Ok(phi)
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state files serialize")
    }
}

pub fn parse_state(json: &str) -> Result<FockState> {
    StateFile::parse(json)?.to_state()
}

type PairMatrix = Vec<Vec<[f64; 2]>>;

fn matrix_to_pairs(m: &CMatrix) -> PairMatrix {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn pairs_to_matrix(name: &str, d: usize, rows: &PairMatrix) -> Result<CMatrix> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(schema(format!("{name} must be {d} x {d}")));
    }
    let mut m = CMatrix::zeros(d, d);
    for (i, row) in rows.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if !z[0].is_finite() || !z[1].is_finite() {
                return Err(schema(format!("non-finite entry in {name}")));
            }
            m[(i, j)] = c(z[0], z[1]);
        }
    }
    Ok(m)
}

/// Blocks of `T = A f+ f - B f+ f+ - beta f f - ½ Tr A`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub d: usize,
    #[serde(rename = "A")]
    pub a: PairMatrix,
    #[serde(rename = "B")]
    pub b: PairMatrix,
    pub beta: PairMatrix,
}

impl GeneratorFile {
    pub fn from_generator(g: &SpinGenerator) -> Self {
        GeneratorFile {
            d: g.d(),
            a: matrix_to_pairs(g.a()),
            b: matrix_to_pairs(g.b()),
            beta: matrix_to_pairs(g.beta()),
        }
    }

    /// Antisymmetric parts of `B` and `beta` above `1e-12` are rejected.
    pub fn to_generator(&self) -> Result<SpinGenerator> {
        if self.d == 0 || self.d > DEFAULT_MAX_MODES {
            return Err(schema(format!("d = {} outside 1..={DEFAULT_MAX_MODES}", self.d)));
        }
        let a = pairs_to_matrix("A", self.d, &self.a)?;
        let b = pairs_to_matrix("B", self.d, &self.b)?;
        let beta = pairs_to_matrix("beta", self.d, &self.beta)?;
        SpinGenerator::new(a, b, beta)
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("generator files serialize")
    }
}

pub fn parse_generator(json: &str) -> Result<SpinGenerator> {
    GeneratorFile::parse(json)?.to_generator()
}

/// Qubit amplitudes in lexicographic order: 4 entries `x_ij` or 8 entries `Phi_ijk`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitFile {
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Qubits {
    Two(TwoQubitState),
    Three(ThreeQubitState),
}

impl QubitFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| schema(e.to_string()))
    }

    pub fn to_qubits(&self) -> Result<Qubits> {
        if self.amplitudes.iter().flatten().any(|x| !x.is_finite()) {
            return Err(schema("non-finite qubit amplitude"));
        }
        let z: Vec<Complex64> = self.amplitudes.iter().map(|p| c(p[0], p[1])).collect();
        match z.len() {
            4 => Ok(Qubits::Two(TwoQubitState::new(z[0], z[1], z[2], z[3]))),
            8 => {
                let mut s = ThreeQubitState::zero();
                s.phi.copy_from_slice(&z);
                Ok(Qubits::Three(s))
            }
            n => Err(schema(format!("expected 4 or 8 qubit amplitudes, got {n}"))),
        }
    }

    pub fn from_three(s: &ThreeQubitState) -> Self {
        QubitFile {
            amplitudes: s.phi.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_two(s: &TwoQubitState) -> Self {
        QubitFile {
            amplitudes: s.x.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Any report body stamped with the tool name and version.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile<T> {
    pub tool: String,
    pub version: String,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> ReportFile<T> {
    pub fn new(body: T) -> Self {
        ReportFile {
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            body,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::random_state;
    use crate::linalg::cr;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn state_round_trip_is_exact() {
        for d in 1..=6 {
            let phi = random_state(d, ParitySector::Mixed, d as u64).unwrap();
            let json = StateFile::from_state(&phi).with_meta(&phi).to_json();
            let back = parse_state(&json).unwrap();
            assert_eq!(back, phi);
        }
    }

    #[test]
    fn zero_state_is_empty_list() {
        let f = StateFile::from_state(&FockState::zeros(3).unwrap());
        assert!(f.amplitudes.is_empty());
        assert!(f.to_state().unwrap().is_zero());
    }

    #[test]
    fn one_based_modes() {
        let json = r#"{"d": 4, "amplitudes": [{"modes": [1, 3], "re": 1.0, "im": -0.5}]}"#;
        let phi = parse_state(json).unwrap();
        assert_eq!(phi.get(0b0101), c(1.0, -0.5));
    }

    #[test]
    fn rejects_bad_states() {
        let bad = [
            r#"{"d": 4, "amplitudes": [{"modes": [3, 1], "re": 1, "im": 0}]}"#,
            r#"{"d": 4, "amplitudes": [{"modes": [1, 1], "re": 1, "im": 0}]}"#,
            r#"{"d": 4, "amplitudes": [{"modes": [5], "re": 1, "im": 0}]}"#,
            r#"{"d": 4, "amplitudes": [{"modes": [0], "re": 1, "im": 0}]}"#,
            r#"{"d": 4, "amplitudes": [{"modes": [2], "re": 1, "im": 0}, {"modes": [2], "re": 1, "im": 0}]}"#,
            r#"{"d": 0, "amplitudes": []}"#,
            r#"{"d": 4}"#,
            r#"{"d": 4, "amplitudes": [], "extra": 1}"#,
            "not json",
        ];
        for json in bad {
            assert!(matches!(parse_state(json), Err(Error::Schema(_))), "{json}");
        }
    }

    #[test]
    fn generator_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = SpinGenerator::random(5, 1.0, &mut rng);
        let back = parse_generator(&GeneratorFile::from_generator(&g).to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn generator_rejects_symmetric_part() {
        let mut f = GeneratorFile::from_generator(&SpinGenerator::zero(2));
        f.b[0][1] = [1.0, 0.0];
        f.b[1][0] = [-1.0 + 1e-9, 0.0];
        assert!(matches!(f.to_generator(), Err(Error::NotAntisymmetric { .. })));
        f.b[1][0] = [-1.0, 0.0];
        assert!(f.to_generator().is_ok());
        f.a.pop();
        assert!(matches!(f.to_generator(), Err(Error::Schema(_))));
    }

    #[test]
    fn qubit_files() {
        let f = QubitFile::from_three(&ThreeQubitState::ghz());
        let json = serde_json::to_string(&f).unwrap();
        match QubitFile::parse(&json).unwrap().to_qubits().unwrap() {
            Qubits::Three(s) => assert_eq!(s, ThreeQubitState::ghz()),
            other => panic!("{other:?}"),
        }
        let two = TwoQubitState::new(cr(1.0), cr(0.0), cr(0.0), cr(1.0));
        assert_eq!(
            QubitFile::from_two(&two).to_qubits().unwrap(),
            Qubits::Two(two)
        );
        let f = QubitFile {
            amplitudes: vec![[1.0, 0.0]; 5],
        };
        assert!(f.to_qubits().is_err());
    }

    #[test]
    fn report_is_stamped() {
        #[derive(Serialize)]
        struct Body {
            x: u8,
        }
        let json = ReportFile::new(Body { x: 3 }).to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["tool"], "fockspin");
        assert_eq!(v["x"], 3);
    }

    #[test]
    fn tolerance_parsing() {
        assert_eq!(parse_tolerance("1e-6").unwrap(), 1e-6);
        assert!(parse_tolerance("-1").is_err());
        assert!(parse_tolerance("abc").is_err());
    }
}
