//! Per-rotation cost models for the four rotation methods.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kickback::{bits_for_accuracy, kickback_profile, AdderSpec, GammaRegister};
use crate::par::par_online_profile;
use crate::resource::ResourceProfile;
use crate::synth::{net::min_sequence_in, solovay_kitaev, SequenceDb, DEFAULT_SEARCH_LEN, MAX_SK_LEVEL};
use crate::unitary::{rz_matrix, wrap_angle};

/// Ancillas prepared ahead of each PAR.
pub const PAR_ANCILLAS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationMethod {
    Kickback,
    Sequence,
    #[serde(rename = "sk")]
    SolovayKitaev,
    Par,
}

impl RotationMethod {
    pub const ALL: [RotationMethod; 4] =
        [RotationMethod::Kickback, RotationMethod::Sequence, RotationMethod::SolovayKitaev, RotationMethod::Par];

    pub fn name(self) -> &'static str {
        match self {
            RotationMethod::Kickback => "kickback",
            RotationMethod::Sequence => "sequence",
            RotationMethod::SolovayKitaev => "sk",
            RotationMethod::Par => "par",
        }
    }

    /// Whether the rotation is a stream of single-qubit gates.
    pub fn is_sequence_based(self) -> bool {
        matches!(self, RotationMethod::Sequence | RotationMethod::SolovayKitaev)
    }
}

impl fmt::Display for RotationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RotationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RotationMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown rotation method {s:?}")))
    }
}

/// Fitted line for optimal-sequence depth below the search reach.
pub fn fit_depth(epsilon: f64) -> f64 {
    -24.9 * epsilon.log10() - 7.64
}

/// Fitted line for optimal-sequence T-count below the search reach.
pub fn fit_t_count(epsilon: f64) -> f64 {
    -9.75 * epsilon.log10() - 2.81
}

/// Cost of one `RZ` rotation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationCost {
    /// Online cost; `qubits` counts ancillas beyond the rotated qubit.
    pub profile: ResourceProfile,
    /// Ahead-of-time preparation (PAR ancillas), zero otherwise.
    pub offline: ResourceProfile,
    pub from_fit: bool,
}

/// Rotation costs for one method and accuracy, memoized by angle.
#[derive(Clone)]
pub struct CostModel {
    method: RotationMethod,
    epsilon: f64,
    db: Option<Arc<SequenceDb>>,
    cache: Arc<Mutex<HashMap<u64, RotationCost>>>,
}

impl fmt::Debug for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CostModel").field("method", &self.method).field("epsilon", &self.epsilon).finish()
    }
}

impl CostModel {
    pub fn new(method: RotationMethod, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        let db = match method {
            RotationMethod::Kickback => None,
            _ => Some(SequenceDb::shared(DEFAULT_SEARCH_LEN)?),
        };
        Ok(CostModel { method, epsilon, db, cache: Arc::default() })
    }

    pub fn method(&self) -> RotationMethod {
        self.method
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Cost of `RZ(angle)` at this model's accuracy.
    pub fn rotation(&self, angle: f64) -> Result<RotationCost> {
        let angle = wrap_angle(angle);
        if let Some(c) = self.cache.lock().expect("cost cache").get(&angle.to_bits()) {
            return Ok(*c);
        }
        let cost = self.compute(angle)?;
        self.cache.lock().expect("cost cache").insert(angle.to_bits(), cost);
        Ok(cost)
    }

    fn db(&self) -> &SequenceDb {
        self.db.as_deref().expect("sequence methods carry a net")
    }

    fn sequence(&self, angle: f64) -> Result<RotationCost> {
        let s = min_sequence_in(self.db(), &rz_matrix(angle), self.epsilon, DEFAULT_SEARCH_LEN)?;
        if s.satisfied {
            let n = s.len() as u64;
            return Ok(RotationCost {
                profile: ResourceProfile { depth: n, t_count: s.t_count() as u64, total_gates: n, qubits: 0 },
                offline: ResourceProfile::ZERO,
                from_fit: false,
            });
        }
        let depth = fit_depth(self.epsilon).ceil().max(1.0) as u64;
        Ok(RotationCost {
            profile: ResourceProfile {
                depth,
                t_count: fit_t_count(self.epsilon).ceil().max(0.0) as u64,
                total_gates: depth,
                qubits: 0,
            },
            offline: ResourceProfile::ZERO,
            from_fit: true,
        })
    }

    fn compute(&self, angle: f64) -> Result<RotationCost> {
        match self.method {
            RotationMethod::Kickback => {
                let n = bits_for_accuracy(self.epsilon);
                let p = kickback_profile(angle, GammaRegister::new(1, n)?, false, AdderSpec::ripple(n, true))?;
                Ok(RotationCost {
                    profile: p.with_qubits(p.qubits - 1),
                    offline: ResourceProfile::ZERO,
                    from_fit: false,
                })
            }
            RotationMethod::Sequence => self.sequence(angle),
            RotationMethod::SolovayKitaev => {
                let target = rz_matrix(angle);
                let mut seq = solovay_kitaev(&target, 0, self.db())?;
                for level in 1..=MAX_SK_LEVEL {
                    if seq.achieved_distance <= self.epsilon {
                        break;
                    }
                    seq = solovay_kitaev(&target, level, self.db())?;
                }
                let n = seq.len() as u64;
                Ok(RotationCost {
                    profile: ResourceProfile { depth: n, t_count: seq.t_count() as u64, total_gates: n, qubits: 0 },
                    offline: ResourceProfile::ZERO,
                    from_fit: false,
                })
            }
            RotationMethod::Par => {
                let mut offline = ResourceProfile::ZERO;
                let mut a = angle;
                let mut from_fit = false;
                for _ in 0..PAR_ANCILLAS {
                    let c = self.sequence(a)?;
                    from_fit |= c.from_fit;
                    offline = offline.beside(c.profile.with_qubits(1));
                    a = wrap_angle(2.0 * a);
                }
                let online = par_online_profile(None);
                Ok(RotationCost {
                    profile: ResourceProfile { t_count: offline.t_count, qubits: PAR_ANCILLAS as u64, ..online },
                    offline,
                    from_fit,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for m in RotationMethod::ALL {
            assert_eq!(m.name().parse::<RotationMethod>().unwrap(), m);
        }
        assert!("fowler".parse::<RotationMethod>().is_err());
    }

    #[test]
    fn fit_lines_at_reference_points() {
        assert!((fit_depth(1e-3) - 67.06).abs() < 1e-9);
        assert!((fit_t_count(1e-4) - 36.19).abs() < 1e-9);
    }

    #[test]
    fn par_depth_is_four() {
        let m = CostModel::new(RotationMethod::Par, 1e-3).unwrap();
        let c = m.rotation(0.3).unwrap();
        assert_eq!(c.profile.depth, 4);
        assert!(c.profile.t_count > 0);
    }

    #[test]
    fn depth_ordering_at_fixed_accuracy() {
        let depth = |m| CostModel::new(m, 1e-3).unwrap().rotation(0.7).unwrap().profile.depth;
        let (par, seq, sk) =
            (depth(RotationMethod::Par), depth(RotationMethod::Sequence), depth(RotationMethod::SolovayKitaev));
        assert!(par < seq && seq < sk, "{par} {seq} {sk}");
    }

    #[test]
    fn kickback_width_tracks_accuracy() {
        let coarse = CostModel::new(RotationMethod::Kickback, 1e-2).unwrap().rotation(1.0).unwrap();
        let fine = CostModel::new(RotationMethod::Kickback, 1e-6).unwrap().rotation(1.0).unwrap();
        assert!(fine.profile.qubits > coarse.profile.qubits);
        assert!(fine.profile.t_count > coarse.profile.t_count);
    }
}
