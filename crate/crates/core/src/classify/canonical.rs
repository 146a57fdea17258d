//! Orbit representatives.

use num_complex::Complex64;

use super::OrbitLabel;
use crate::coords::EvenD6;
use crate::embed::{embed_three_qubit_odd, ThreeQubitState};
use crate::error::{Error, Result};
use crate::fock::{FockState, ParitySector};
use crate::linalg::cr;

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalForm {
    pub d: usize,
    pub sector: ParitySector,
    pub label: OrbitLabel,
    /// `(a, b, c, d)` for the d = 6 even family, empty otherwise.
    pub params: Vec<Complex64>,
    pub state: FockState,
}

/// `(a, b, c, d)` of the d = 6 even representative of each Freudenthal rank.
pub fn rank_params(label: OrbitLabel) -> Option<[f64; 4]> {
    match label {
        OrbitLabel::Rank4 => Some([1.0, 1.0, 1.0, 1.0]),
        OrbitLabel::Rank3 => Some([1.0, 1.0, 1.0, 0.0]),
        OrbitLabel::Rank2 => Some([1.0, 1.0, 0.0, 0.0]),
        OrbitLabel::Rank1 => Some([1.0, 0.0, 0.0, 0.0]),
        OrbitLabel::Rank0 => Some([0.0, 0.0, 0.0, 0.0]),
        _ => None,
    }
}

/// `eta = 0`, `y = a e12 + b e34 + c e56`, `x = 0`, `xi = d`.
pub fn even_family(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> FockState {
    let mut p = EvenD6::zero();
    for (n, z) in [a, b, c].into_iter().enumerate() {
        p.y[(2 * n, 2 * n + 1)] = z;
        p.y[(2 * n + 1, 2 * n)] = -z;
    }
    p.xi = d;
    p.to_state()
}

fn unsupported(d: usize, sector: ParitySector, label: OrbitLabel) -> Error {
    Error::Unsupported(format!("no canonical state for (d = {d}, {sector}, {label})"))
}

pub fn canonical_state(d: usize, sector: ParitySector, label: OrbitLabel) -> Result<CanonicalForm> {
    if sector == ParitySector::Mixed || d == 0 || d > 6 {
        return Err(unsupported(d, sector, label));
    }
    let odd = sector == ParitySector::Odd;
    let basis = |modes: &[usize]| FockState::basis(d, modes);
    let lowest = || if odd { basis(&[1]) } else { FockState::vacuum(d) };
    let mut params = Vec::new();
    let state = match (d, label) {
        (_, OrbitLabel::Null) => FockState::zeros(d)?,
        (1..=5, OrbitLabel::Pure) => lowest()?,
        (4, OrbitLabel::Generic) if odd => &basis(&[1])? + &basis(&[2, 3, 4])?,
        (4, OrbitLabel::Generic) => &basis(&[])? + &basis(&[1, 2, 3, 4])?,
        (5, OrbitLabel::Generic) if odd => &basis(&[5])? + &basis(&[1, 2, 3, 4, 5])?,
        (5, OrbitLabel::Generic) => &basis(&[])? + &basis(&[1, 2, 3, 4])?,
        (6, OrbitLabel::Ghz) if !odd => &basis(&[])? + &basis(&[1, 2, 3, 4, 5, 6])?,
        (6, l) if !odd && rank_params(l).is_some() => {
            let p = rank_params(l).expect("checked");
            params = p.iter().map(|&x| cr(x)).collect();
            even_family(params[0], params[1], params[2], params[3])
        }
        (6, l) if odd => {
            let class = match l {
                OrbitLabel::Rank4 | OrbitLabel::Ghz => OrbitLabel::Ghz,
                OrbitLabel::Rank3 | OrbitLabel::W => OrbitLabel::W,
                OrbitLabel::Rank2 | OrbitLabel::Bisep => OrbitLabel::Bisep,
                OrbitLabel::Rank1 | OrbitLabel::Sep => OrbitLabel::Sep,
                OrbitLabel::Rank0 => OrbitLabel::Null,
                _ => return Err(unsupported(d, sector, label)),
            };
            embed_three_qubit_odd(&ThreeQubitState::canonical(class)?)
        }
        _ => return Err(unsupported(d, sector, label)),
    };
    Ok(CanonicalForm {
        d,
        sector,
        label,
        params,
        state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    #[test]
    fn round_trip_small() {
        for d in 1..=5 {
            for sector in [ParitySector::Even, ParitySector::Odd] {
                let mut labels = vec![OrbitLabel::Null, OrbitLabel::Pure];
                if d >= 4 {
                    labels.push(OrbitLabel::Generic);
                }
                for label in labels {
                    let c = canonical_state(d, sector, label).unwrap();
                    assert_eq!(c.state.parity_sector() == sector || c.state.is_zero(), true);
                    assert_eq!(classify(&c.state).unwrap().orbit_label, label, "{d} {sector} {label}");
                }
            }
        }
    }

    #[test]
    fn round_trip_d6_even() {
        for label in [
            OrbitLabel::Rank4,
            OrbitLabel::Rank3,
            OrbitLabel::Rank2,
            OrbitLabel::Rank1,
            OrbitLabel::Rank0,
        ] {
            let c = canonical_state(6, ParitySector::Even, label).unwrap();
            assert_eq!(classify(&c.state).unwrap().orbit_label, label);
        }
        let g = canonical_state(6, ParitySector::Even, OrbitLabel::Ghz).unwrap();
        assert_eq!(classify(&g.state).unwrap().orbit_label, OrbitLabel::Rank4);
    }

    #[test]
    fn round_trip_d6_odd() {
        for (label, class, rank) in [
            (OrbitLabel::Rank4, OrbitLabel::Ghz, 6),
            (OrbitLabel::Rank3, OrbitLabel::W, 3),
            (OrbitLabel::Rank2, OrbitLabel::Bisep, 1),
            (OrbitLabel::Rank1, OrbitLabel::Sep, 0),
        ] {
            let c = canonical_state(6, ParitySector::Odd, label).unwrap();
            let r = classify(&c.state).unwrap();
            assert_eq!(r.orbit_label, label);
            assert_eq!(r.three_fermion_label, Some(class));
            assert_eq!(r.k_rank, Some(rank));
        }
    }

    #[test]
    fn rejects_unknown() {
        assert!(canonical_state(6, ParitySector::Even, OrbitLabel::Pure).is_err());
        assert!(canonical_state(3, ParitySector::Even, OrbitLabel::Generic).is_err());
        assert!(canonical_state(4, ParitySector::Mixed, OrbitLabel::Pure).is_err());
    }
}
