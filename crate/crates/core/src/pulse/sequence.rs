//! Pulse-sequence data model and its JSON file format.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};

/// Tolerance for the redundant `total_duration_s` field of a sequence file.
pub const DURATION_TOL: f64 = 1e-9;

/// Nuclear spins addressable by a sequence, with Larmor offsets and scalar couplings.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinSystem {
    labels: Vec<String>,
    offsets_hz: Vec<f64>,
    couplings_hz: BTreeMap<(usize, usize), f64>,
}

impl SpinSystem {
    pub const ANCILLA: usize = 0;
    pub const SPIN_1: usize = 1;
    pub const SPIN_2: usize = 2;

    /// Ancilla `a` (¹H), spin `1` (¹³C), spin `2` (¹⁹F), on resonance.
    pub fn three_spin_default() -> Self {
        let mut sys = Self::uncoupled(&["a", "1", "2"]);
        sys.couplings_hz.insert((0, 1), 160.7);
        sys.couplings_hz.insert((1, 2), -194.4);
        sys.couplings_hz.insert((0, 2), 47.6);
        sys
    }

    pub fn uncoupled(labels: &[&str]) -> Self {
        Self {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            offsets_hz: vec![0.0; labels.len()],
            couplings_hz: BTreeMap::new(),
        }
    }

    pub fn n_spins(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, spin: usize) -> &str {
        &self.labels[spin]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownSpin {
                label: label.to_string(),
                n_spins: self.n_spins(),
            })
    }

    fn check_spin(&self, spin: usize) -> Result<()> {
        if spin >= self.n_spins() {
            return Err(Error::UnknownSpin {
                label: spin.to_string(),
                n_spins: self.n_spins(),
            });
        }
        Ok(())
    }

    /// `J_ij` in Hz, zero when absent.
    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        let key = (i.min(j), i.max(j));
        self.couplings_hz.get(&key).copied().unwrap_or(0.0)
    }

    pub fn set_coupling(&mut self, i: usize, j: usize, hz: f64) -> Result<()> {
        self.check_spin(i)?;
        self.check_spin(j)?;
        if i == j {
            return Err(validation("a spin cannot couple to itself"));
        }
        if !hz.is_finite() {
            return Err(validation(format!("coupling must be finite, got {hz}")));
        }
        self.couplings_hz.insert((i.min(j), i.max(j)), hz);
        Ok(())
    }

    pub fn offset_hz(&self, spin: usize) -> f64 {
        self.offsets_hz[spin]
    }

    pub fn set_offset_hz(&mut self, spin: usize, hz: f64) -> Result<()> {
        self.check_spin(spin)?;
        if !hz.is_finite() {
            return Err(validation(format!("offset must be finite, got {hz}")));
        }
        self.offsets_hz[spin] = hz;
        Ok(())
    }

    /// Coupled pairs `(i, j, J_ij)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.couplings_hz.iter().map(|(&(i, j), &hz)| (i, j, hz))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "-x")]
    MinusX,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "-y")]
    MinusY,
}

impl Axis {
    pub fn negated(self) -> Self {
        match self {
            Axis::X => Axis::MinusX,
            Axis::MinusX => Axis::X,
            Axis::Y => Axis::MinusY,
            Axis::MinusY => Axis::Y,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::MinusX => "-x",
            Axis::Y => "y",
            Axis::MinusY => "-y",
        })
    }
}

/// One sequence element. Spins are register indices into a [`SpinSystem`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Element {
    /// Instantaneous `e^{−i angle/2 σ_axis}`.
    RfPulse { spin: usize, axis: Axis, angle: f64 },
    /// Frame update `e^{−i angle/2 σ_z}`, zero duration.
    ZRotation { spin: usize, angle: f64 },
    /// Free evolution under the spin Hamiltonian.
    Delay { seconds: f64 },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PulseSequence {
    elements: Vec<Element>,
}

impl PulseSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_elements(elements: Vec<Element>) -> Result<Self> {
        let mut seq = Self::new();
        for e in elements {
            seq.push(e)?;
        }
        Ok(seq)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn push(&mut self, e: Element) -> Result<()> {
        match e {
            Element::Delay { seconds } if !(seconds >= 0.0 && seconds.is_finite()) => {
                Err(validation(format!("delay must be a finite non-negative time, got {seconds}")))
            }
            Element::RfPulse { angle, .. } | Element::ZRotation { angle, .. }
                if !angle.is_finite() =>
            {
                Err(validation(format!("rotation angle must be finite, got {angle}")))
            }
            _ => {
                self.elements.push(e);
                Ok(())
            }
        }
    }

    /// Rotation by a signed angle; negative angles use the opposite axis.
    pub fn rf(&mut self, spin: usize, axis: Axis, angle: f64) {
        if angle == 0.0 {
            return;
        }
        let (axis, angle) = if angle < 0.0 {
            (axis.negated(), -angle)
        } else {
            (axis, angle)
        };
        self.elements.push(Element::RfPulse { spin, axis, angle });
    }

    pub fn z(&mut self, spin: usize, angle: f64) {
        if angle != 0.0 {
            self.elements.push(Element::ZRotation { spin, angle });
        }
    }

    pub fn delay(&mut self, seconds: f64) {
        self.elements.push(Element::Delay { seconds });
    }

    pub fn extend(&mut self, other: &PulseSequence) {
        self.elements.extend_from_slice(&other.elements);
    }

    /// Sum of delays; rf pulses and z rotations take no time.
    pub fn total_duration(&self) -> f64 {
        self.elements
            .iter()
            .map(|e| match e {
                Element::Delay { seconds } => *seconds,
                _ => 0.0,
            })
            .sum()
    }

    /// Largest spin index referenced, if any.
    pub fn max_spin(&self) -> Option<usize> {
        self.elements
            .iter()
            .filter_map(|e| match e {
                Element::RfPulse { spin, .. } | Element::ZRotation { spin, .. } => Some(*spin),
                Element::Delay { .. } => None,
            })
            .max()
    }

    pub fn to_json(&self, sys: &SpinSystem) -> Result<String> {
        let doc = SequenceFile::from_parts(self, sys)?;
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<(PulseSequence, SpinSystem)> {
        let doc: SequenceFile = serde_json::from_str(text)?;
        doc.into_parts()
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceFile {
    spin_system: SpinSystemFile,
    elements: Vec<ElementFile>,
    total_duration_s: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpinSystemFile {
    offsets_hz: Vec<f64>,
    couplings_hz: serde_json::Map<String, serde_json::Value>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ElementFile {
    RfPulse {
        spin: String,
        axis: Axis,
        angle_rad: f64,
    },
    ZRotation {
        spin: String,
        angle_rad: f64,
    },
    Delay {
        seconds: f64,
    },
}

/// Labels implied by the number of offsets: the ancilla first when there are three spins.
fn default_labels(n: usize) -> Result<Vec<&'static str>> {
    match n {
        1 => Ok(vec!["1"]),
        2 => Ok(vec!["1", "2"]),
        3 => Ok(vec!["a", "1", "2"]),
        _ => Err(validation(format!(
            "spin system must have 1 to 3 spins, got {n} offsets"
        ))),
    }
}

impl SequenceFile {
    fn from_parts(seq: &PulseSequence, sys: &SpinSystem) -> Result<Self> {
        let mut couplings = serde_json::Map::new();
        for (i, j, hz) in sys.pairs() {
            couplings.insert(
                format!("{}-{}", sys.label(i), sys.label(j)),
                serde_json::Value::from(hz),
            );
        }
        let mut elements = Vec::with_capacity(seq.len());
        for e in seq.elements() {
            let label = |spin: usize| -> Result<String> {
                sys.check_spin(spin)?;
                Ok(sys.label(spin).to_string())
            };
            elements.push(match *e {
                Element::RfPulse { spin, axis, angle } => ElementFile::RfPulse {
                    spin: label(spin)?,
                    axis,
                    angle_rad: angle,
                },
                Element::ZRotation { spin, angle } => ElementFile::ZRotation {
                    spin: label(spin)?,
                    angle_rad: angle,
                },
                Element::Delay { seconds } => ElementFile::Delay { seconds },
            });
        }
        Ok(Self {
            spin_system: SpinSystemFile {
                offsets_hz: sys.offsets_hz.clone(),
                couplings_hz: couplings,
            },
            elements,
            total_duration_s: seq.total_duration(),
        })
    }

    fn into_parts(self) -> Result<(PulseSequence, SpinSystem)> {
        let labels = default_labels(self.spin_system.offsets_hz.len())?;
        let mut sys = SpinSystem::uncoupled(&labels);
        for (spin, &hz) in self.spin_system.offsets_hz.iter().enumerate() {
            sys.set_offset_hz(spin, hz)?;
        }
        for (key, value) in &self.spin_system.couplings_hz {
            let (a, b) = key
                .split_once('-')
                .ok_or_else(|| validation(format!("coupling key {key:?} is not of the form i-j")))?;
            let hz = value
                .as_f64()
                .ok_or_else(|| validation(format!("coupling {key:?} is not a number")))?;
            let (i, j) = (sys.index_of(a)?, sys.index_of(b)?);
            if sys.coupling(i, j) != 0.0 {
                return Err(validation(format!("coupling {key:?} given twice")));
            }
            sys.set_coupling(i, j, hz)?;
        }
        let mut seq = PulseSequence::new();
        for e in self.elements {
            seq.push(match e {
                ElementFile::RfPulse {
                    spin,
                    axis,
                    angle_rad,
                } => Element::RfPulse {
                    spin: sys.index_of(&spin)?,
                    axis,
                    angle: angle_rad,
                },
                ElementFile::ZRotation { spin, angle_rad } => Element::ZRotation {
                    spin: sys.index_of(&spin)?,
                    angle: angle_rad,
                },
                ElementFile::Delay { seconds } => Element::Delay { seconds },
            })?;
        }
        let total = seq.total_duration();
        let stated = self.total_duration_s;
        if !((stated - total).abs() <= DURATION_TOL * total.abs().max(1.0)) {
            return Err(validation(format!(
                "total_duration_s {stated} disagrees with the summed delays {total}"
            )));
        }
        Ok((seq, sys))
    }
}
