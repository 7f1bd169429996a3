//! Annealing schedules: decaying mixer couplings calibrated to an instance.
//!
//! The total Hamiltonian is fixed as `H(t) = H_I - coupling(t) * M` with a
//! positive coupling magnitude and mixer `M` either the rank-one projector
//! onto the uniform superposition or the transverse field `sum_k sigma_x^k`.
//! Calibration follows the gap-crossing convention: the annealing time
//! `tau_a` is where the mixer's gap scale crosses the Ising bandwidth,
//! `gap_scale(tau_a) = delta_E`. For every decaying family here that gives
//! `tau_a = g / delta_E`, with `g` the dimensionless quench parameter that
//! alone controls the final excitation statistics of the solvable `g/t`
//! projector protocol.

use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ising::IsingInstance;

/// Driver operator the coupling multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mixer {
    /// `|psi_0><psi_0|`, rank-one projector onto the uniform superposition.
    Projector,
    /// `sum_k sigma_x^k` transverse field.
    Transverse,
}

/// Coupling family. The three numbered protocols are the standard benchmark
/// trio; the generic families exist to show how everything else does worse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Protocol {
    /// `g/t` with the projector mixer (the exactly solvable protocol).
    ProjectorInvT,
    /// `g/(N t)` with the transverse-field mixer.
    TransverseInvT,
    /// `g/(a t^2)`, `a = delta_E/g`, with the projector mixer.
    ProjectorInvT2,
    /// `prefactor/t^alpha`; the prefactor is derived from the gap crossing.
    PowerLaw { alpha: f64, mixer: Mixer },
    /// Fixed coupling; `tau_a` keeps the `g/delta_E` bookkeeping convention.
    Constant { value: f64, mixer: Mixer },
    /// `prefactor * exp(-rate * t/tau_a)`, crossing the bandwidth at `tau_a`.
    Exponential { rate: f64, mixer: Mixer },
}

impl Protocol {
    pub fn mixer(&self) -> Mixer {
        match self {
            Protocol::ProjectorInvT | Protocol::ProjectorInvT2 => Mixer::Projector,
            Protocol::TransverseInvT => Mixer::Transverse,
            Protocol::PowerLaw { mixer, .. }
            | Protocol::Constant { mixer, .. }
            | Protocol::Exponential { mixer, .. } => *mixer,
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = |m: &Mixer| if *m == Mixer::Transverse { ":transverse" } else { "" };
        match self {
            Protocol::ProjectorInvT => write!(f, "p1"),
            Protocol::TransverseInvT => write!(f, "p2"),
            Protocol::ProjectorInvT2 => write!(f, "p3"),
            Protocol::PowerLaw { alpha, mixer } => write!(f, "power:{}{}", alpha, suffix(mixer)),
            Protocol::Constant { value, mixer } => write!(f, "const:{}{}", value, suffix(mixer)),
            Protocol::Exponential { rate, mixer } => write!(f, "exp:{}{}", rate, suffix(mixer)),
        }
    }
}

impl FromStr for Protocol {
    type Err = Error;

    /// Parses `p1 | p2 | p3 | power:<alpha> | const:<value> | exp:<rate>`,
    /// with an optional `:projector`/`:transverse` suffix on the generic
    /// families (projector is the default).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p1" => return Ok(Protocol::ProjectorInvT),
            "p2" => return Ok(Protocol::TransverseInvT),
            "p3" => return Ok(Protocol::ProjectorInvT2),
            _ => {}
        }
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or("");
        let value: f64 = parts
            .next()
            .ok_or_else(|| Error::InvalidParameter(format!("unknown protocol {s:?}")))?
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad number in protocol {s:?}")))?;
        let mixer = match parts.next() {
            None | Some("projector") => Mixer::Projector,
            Some("transverse") => Mixer::Transverse,
            Some(other) => {
                return Err(Error::InvalidParameter(format!("unknown mixer {other:?} in {s:?}")))
            }
        };
        if parts.next().is_some() {
            return Err(Error::InvalidParameter(format!("trailing fields in protocol {s:?}")));
        }
        match head {
            "power" => Ok(Protocol::PowerLaw { alpha: value, mixer }),
            "const" => Ok(Protocol::Constant { value, mixer }),
            "exp" => Ok(Protocol::Exponential { rate: value, mixer }),
            _ => Err(Error::InvalidParameter(format!("unknown protocol {s:?}"))),
        }
    }
}

impl Serialize for Protocol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Protocol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum CouplingKind {
    PowerLaw { alpha: f64, prefactor: f64 },
    Constant { value: f64 },
    Exponential { rate: f64, prefactor: f64 },
}

/// A calibrated schedule: coupling family plus the instance-derived times.
/// Immutable once built; freely shareable across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    protocol: Protocol,
    kind: CouplingKind,
    mixer: Mixer,
    g: f64,
    n_qubits: usize,
    bandwidth: f64,
    tau_i: f64,
    tau_a: f64,
    t0: f64,
    t_end: f64,
}

impl Schedule {
    /// Calibrates `protocol` against `instance`'s spectral bandwidth.
    ///
    /// `ratio_t = T/tau_a` and `t0_factor = tau_a/t0` control the time span.
    /// Both default to 100 elsewhere in the crate; values below ~10 leave the
    /// calibrated accuracy envelope (start-up and cutoff errors grow as
    /// `(t0/tau_a)^2` and `tau_a/T`) but any value above 1 is accepted.
    pub fn new(
        protocol: Protocol,
        g: f64,
        instance: &IsingInstance,
        ratio_t: f64,
        t0_factor: f64,
    ) -> Result<Self> {
        Self::from_parts(protocol, g, instance.n_qubits(), instance.stats().bandwidth, ratio_t, t0_factor)
    }

    /// `new` without the instance: takes the qubit count and bandwidth
    /// directly. Useful for sector models and synthetic spectra.
    pub fn from_parts(
        protocol: Protocol,
        g: f64,
        n_qubits: usize,
        bandwidth: f64,
        ratio_t: f64,
        t0_factor: f64,
    ) -> Result<Self> {
        if !(bandwidth > 0.0) || !bandwidth.is_finite() {
            return Err(Error::ZeroBandwidth);
        }
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::InvalidParameter(format!("g must be positive and finite, got {g}")));
        }
        if !(ratio_t > 1.0) {
            return Err(Error::InvalidParameter(format!("ratio_T must exceed 1, got {ratio_t}")));
        }
        if !(t0_factor > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "t0_factor must exceed 1, got {t0_factor}"
            )));
        }
        let tau_i = 1.0 / bandwidth;
        let tau_a = g * tau_i;
        let t0 = tau_a / t0_factor;
        let t_end = ratio_t * tau_a;
        let n = n_qubits as f64;
        let mixer = protocol.mixer();
        let kind = match protocol {
            Protocol::ProjectorInvT => CouplingKind::PowerLaw { alpha: 1.0, prefactor: g },
            Protocol::TransverseInvT => CouplingKind::PowerLaw { alpha: 1.0, prefactor: g / n },
            Protocol::ProjectorInvT2 => {
                // coupling g/(a t^2) with a = delta_E/g
                let a = bandwidth / g;
                CouplingKind::PowerLaw { alpha: 2.0, prefactor: g / a }
            }
            Protocol::PowerLaw { alpha, mixer } => {
                if !(alpha > 0.0) || !alpha.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "power-law exponent must be positive, got {alpha}"
                    )));
                }
                // gap crossing at tau_a: prefactor / tau_a^alpha = delta_E
                // (transverse gap scale carries the extra factor N)
                let mut prefactor = bandwidth * tau_a.powf(alpha);
                if mixer == Mixer::Transverse {
                    prefactor /= n;
                }
                CouplingKind::PowerLaw { alpha, prefactor }
            }
            Protocol::Constant { value, mixer: _ } => {
                if !(value >= 0.0) || !value.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "constant coupling must be finite and >= 0, got {value}"
                    )));
                }
                CouplingKind::Constant { value }
            }
            Protocol::Exponential { rate, mixer } => {
                if !(rate > 0.0) || !rate.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "exponential decay rate must be positive, got {rate}"
                    )));
                }
                // coupling prefactor * exp(-rate t/tau_a) crosses the
                // bandwidth at exactly t = tau_a
                let mut prefactor = bandwidth * rate.exp();
                if mixer == Mixer::Transverse {
                    prefactor /= n;
                }
                CouplingKind::Exponential { rate, prefactor }
            }
        };
        Ok(Schedule {
            protocol,
            kind,
            mixer,
            g,
            n_qubits,
            bandwidth,
            tau_i,
            tau_a,
            t0,
            t_end,
        })
    }

    /// A constant coupling over an explicit span `[t0, t_end]`, with `t0 = 0`
    /// allowed. Used by search-style protocols that switch the driver on at
    /// full strength for a fixed duration.
    pub fn constant_span(
        value: f64,
        mixer: Mixer,
        g: f64,
        t0: f64,
        t_end: f64,
        n_qubits: usize,
        bandwidth: f64,
    ) -> Result<Self> {
        if !(bandwidth > 0.0) || !bandwidth.is_finite() {
            return Err(Error::ZeroBandwidth);
        }
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "constant coupling must be finite and >= 0, got {value}"
            )));
        }
        if !(t0 >= 0.0) || !(t_end > t0) {
            return Err(Error::InvalidParameter(format!(
                "need 0 <= t0 < t_end, got t0 = {t0}, t_end = {t_end}"
            )));
        }
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::InvalidParameter(format!("g must be positive and finite, got {g}")));
        }
        let tau_i = 1.0 / bandwidth;
        Ok(Schedule {
            protocol: Protocol::Constant { value, mixer },
            kind: CouplingKind::Constant { value },
            mixer,
            g,
            n_qubits,
            bandwidth,
            tau_i,
            tau_a: g * tau_i,
            t0,
            t_end,
        })
    }

    /// Coupling magnitude at time `t`. Decaying families require `t > 0`.
    pub fn coupling_at(&self, t: f64) -> f64 {
        match self.kind {
            CouplingKind::Constant { value } => value,
            CouplingKind::PowerLaw { alpha, prefactor } => {
                assert!(t > 0.0, "decaying schedules are defined for t > 0 only");
                if alpha == 1.0 {
                    prefactor / t
                } else if alpha == 2.0 {
                    prefactor / (t * t)
                } else {
                    prefactor * t.powf(-alpha)
                }
            }
            CouplingKind::Exponential { rate, prefactor } => {
                assert!(t > 0.0, "decaying schedules are defined for t > 0 only");
                prefactor * (-rate * t / self.tau_a).exp()
            }
        }
    }

    /// Instantaneous mixer gap scale: the coupling itself for the projector,
    /// `N * coupling` for the transverse field.
    pub fn gap_scale(&self, t: f64) -> f64 {
        match self.mixer {
            Mixer::Projector => self.coupling_at(t),
            Mixer::Transverse => self.n_qubits as f64 * self.coupling_at(t),
        }
    }

    pub fn protocol(&self) -> Protocol {
        self.protocol
    }

    pub fn mixer(&self) -> Mixer {
        self.mixer
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Bandwidth this schedule was calibrated against.
    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Dephasing time `1/delta_E`.
    pub fn tau_i(&self) -> f64 {
        self.tau_i
    }

    /// Annealing time (gap-crossing time).
    pub fn tau_a(&self) -> f64 {
        self.tau_a
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn ratio_t(&self) -> f64 {
        self.t_end / self.tau_a
    }
}
