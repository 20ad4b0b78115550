//! Curve families, parameter validation and the classical Clifford index.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::gonality::{self, GonalitySequence, IntInterval};
use crate::numerics::floor_div;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("genus must be at least 4 (got {0})")]
    GenusTooSmall(i64),
    #[error("smooth plane curves need degree at least 5 (got {0})")]
    PlaneDegreeTooSmall(i64),
    #[error("general nodal plane curves need degree at least 7 (got {0})")]
    NodalDegreeTooSmall(i64),
    #[error("nodal plane curve of degree {degree} allows 1..={max} nodes (got {nodes})")]
    NodeCount { degree: i64, nodes: i64, max: i64 },
    #[error("general k-gonal curves need k >= 4 (got {0})")]
    GonalityTooSmall(i64),
    #[error("gonality {k} is impossible in genus {genus}: at most {max}")]
    GonalityTooLarge { genus: i64, k: i64, max: i64 },
    #[error("bielliptic curves need genus at least 5 (got {0})")]
    BiellipticGenus(i64),
    #[error("gamma_1 = {gamma1} must lie in [0, {max}] for genus {genus}")]
    Gamma1Range { genus: i64, gamma1: i64, max: i64 },
    #[error("asserted d_{r} must be positive (got {value})")]
    NonPositiveAssertion { r: i64, value: i64 },
    #[error("asserted values are not strictly increasing in r: d_{r1} = {v1}, d_{r2} = {v2}")]
    AssertionsNotIncreasing { r1: i64, v1: i64, r2: i64, v2: i64 },
}

/// User-supplied curve data for families without a closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomCurve {
    pub genus: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma1: Option<i64>,
    /// `(r, d_r)` pairs.
    #[serde(default)]
    pub assertions: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum CurveSpec {
    General { genus: i64 },
    Hyperelliptic { genus: i64 },
    Trigonal { genus: i64 },
    GeneralKGonal { genus: i64, k: i64 },
    Bielliptic { genus: i64 },
    SmoothPlane { degree: i64 },
    GeneralNodalPlane { degree: i64, nodes: i64 },
    Custom(CustomCurve),
}

fn plane_genus(degree: i64) -> i64 {
    (degree - 1) * (degree - 2) / 2
}

/// Largest node count for which a general nodal plane curve of this degree
/// keeps `gamma_1 = degree - 4`.
pub fn max_nodes(degree: i64) -> i64 {
    floor_div(degree * degree - 7 * degree + 14, 2)
}

impl CurveSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            CurveSpec::General { .. } => "general",
            CurveSpec::Hyperelliptic { .. } => "hyperelliptic",
            CurveSpec::Trigonal { .. } => "trigonal",
            CurveSpec::GeneralKGonal { .. } => "general_k_gonal",
            CurveSpec::Bielliptic { .. } => "bielliptic",
            CurveSpec::SmoothPlane { .. } => "smooth_plane",
            CurveSpec::GeneralNodalPlane { .. } => "general_nodal_plane",
            CurveSpec::Custom(_) => "custom",
        }
    }

    pub fn genus(&self) -> i64 {
        match *self {
            CurveSpec::General { genus }
            | CurveSpec::Hyperelliptic { genus }
            | CurveSpec::Trigonal { genus }
            | CurveSpec::GeneralKGonal { genus, .. }
            | CurveSpec::Bielliptic { genus } => genus,
            CurveSpec::SmoothPlane { degree } => plane_genus(degree),
            CurveSpec::GeneralNodalPlane { degree, nodes } => plane_genus(degree) - nodes,
            CurveSpec::Custom(ref c) => c.genus,
        }
    }

    /// Plane degree for the two plane families.
    pub fn plane_degree(&self) -> Option<i64> {
        match *self {
            CurveSpec::SmoothPlane { degree } | CurveSpec::GeneralNodalPlane { degree, .. } => {
                Some(degree)
            }
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), CurveError> {
        match self {
            CurveSpec::SmoothPlane { degree } if *degree < 5 => {
                return Err(CurveError::PlaneDegreeTooSmall(*degree))
            }
            CurveSpec::GeneralNodalPlane { degree, nodes } => {
                if *degree < 7 {
                    return Err(CurveError::NodalDegreeTooSmall(*degree));
                }
                let max = max_nodes(*degree);
                if *nodes < 1 || *nodes > max {
                    return Err(CurveError::NodeCount {
                        degree: *degree,
                        nodes: *nodes,
                        max,
                    });
                }
            }
            _ => {}
        }
        let genus = self.genus();
        if genus < 4 {
            return Err(CurveError::GenusTooSmall(genus));
        }
        match self {
            CurveSpec::GeneralKGonal { genus, k } => {
                if *k < 4 {
                    return Err(CurveError::GonalityTooSmall(*k));
                }
                // gamma_1 = k - 2 may not exceed the general value [(g-1)/2].
                let max = floor_div(genus + 3, 2);
                if *k > max {
                    return Err(CurveError::GonalityTooLarge {
                        genus: *genus,
                        k: *k,
                        max,
                    });
                }
            }
            CurveSpec::Bielliptic { genus } if *genus < 5 => {
                return Err(CurveError::BiellipticGenus(*genus))
            }
            CurveSpec::Custom(c) => {
                if let Some(gamma1) = c.gamma1 {
                    let max = floor_div(c.genus - 1, 2);
                    if !(0..=max).contains(&gamma1) {
                        return Err(CurveError::Gamma1Range {
                            genus: c.genus,
                            gamma1,
                            max,
                        });
                    }
                }
                let mut sorted = c.assertions.clone();
                sorted.sort();
                for &(r, value) in &sorted {
                    if r < 1 || value < 1 {
                        return Err(CurveError::NonPositiveAssertion { r, value });
                    }
                }
                for w in sorted.windows(2) {
                    let ((r1, v1), (r2, v2)) = (w[0], w[1]);
                    if r1 == r2 && v1 == v2 {
                        continue;
                    }
                    if r1 == r2 || v2 <= v1 {
                        return Err(CurveError::AssertionsNotIncreasing { r1, v1, r2, v2 });
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// The value of gamma_1 this family states outright, before looking at
    /// the gonality sequence.
    pub fn stated_gamma1(&self) -> Option<i64> {
        match *self {
            CurveSpec::General { genus } => Some(floor_div(genus - 1, 2)),
            CurveSpec::Hyperelliptic { .. } => Some(0),
            CurveSpec::Trigonal { .. } => Some(1),
            CurveSpec::GeneralKGonal { k, .. } => Some(k - 2),
            CurveSpec::Bielliptic { .. } => Some(2),
            CurveSpec::SmoothPlane { degree } | CurveSpec::GeneralNodalPlane { degree, .. } => {
                Some(degree - 4)
            }
            CurveSpec::Custom(ref c) => c.gamma1,
        }
    }

    /// Whether [`stated_gamma1`](Self::stated_gamma1) may be fed into the
    /// propagation of the gonality sequence. The k-gonal value for k >= 5 is
    /// only provisional.
    pub(crate) fn gamma1_is_certain(&self) -> bool {
        !matches!(self, CurveSpec::GeneralKGonal { k, .. } if *k >= 5)
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveSpec::General { genus } => write!(f, "general(g={genus})"),
            CurveSpec::Hyperelliptic { genus } => write!(f, "hyperelliptic(g={genus})"),
            CurveSpec::Trigonal { genus } => write!(f, "trigonal(g={genus})"),
            CurveSpec::GeneralKGonal { genus, k } => write!(f, "general {k}-gonal(g={genus})"),
            CurveSpec::Bielliptic { genus } => write!(f, "bielliptic(g={genus})"),
            CurveSpec::SmoothPlane { degree } => write!(f, "smooth plane(delta={degree})"),
            CurveSpec::GeneralNodalPlane { degree, nodes } => {
                write!(f, "nodal plane(delta={degree}, nodes={nodes})")
            }
            CurveSpec::Custom(c) => write!(f, "custom(g={})", c.genus),
        }
    }
}

pub fn genus_of(spec: &CurveSpec) -> i64 {
    spec.genus()
}

/// Genus together with the classical Clifford index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub genus: i64,
    pub gamma1: IntInterval,
}

/// Everything the index computations need about one curve.
#[derive(Debug, Clone)]
pub struct Curve {
    pub spec: CurveSpec,
    pub invariants: CurveInvariants,
    pub sequence: GonalitySequence,
}

impl Curve {
    /// Builds the curve with the default sequence length of `3g`.
    pub fn new(spec: CurveSpec) -> Result<Curve> {
        let r_max = 3 * spec.genus().max(1);
        Curve::with_r_max(spec, r_max)
    }

    pub fn with_r_max(spec: CurveSpec, r_max: i64) -> Result<Curve> {
        spec.validate()?;
        let sequence = gonality::gonality_sequence(&spec, r_max)?;
        let gamma1 = reconcile_gamma1(&spec, &sequence)?;
        Ok(Curve {
            invariants: CurveInvariants {
                genus: spec.genus(),
                gamma1,
            },
            spec,
            sequence,
        })
    }

    pub fn genus(&self) -> i64 {
        self.invariants.genus
    }

    pub fn gamma1(&self) -> IntInterval {
        self.invariants.gamma1
    }

    /// `d_r` when it is known exactly.
    pub fn d(&self, r: i64) -> Option<i64> {
        self.sequence.exact(r)
    }
}

fn reconcile_gamma1(spec: &CurveSpec, sequence: &GonalitySequence) -> Result<IntInterval> {
    let derived = gonality::gamma1_from_sequence(sequence)?;
    match (spec, spec.stated_gamma1()) {
        (CurveSpec::GeneralKGonal { k, .. }, Some(provisional)) if *k >= 5 => {
            if derived.contains(provisional) {
                Ok(IntInterval::exact(provisional))
            } else {
                Ok(derived)
            }
        }
        (_, Some(stated)) => {
            if derived.contains(stated) {
                Ok(IntInterval::exact(stated))
            } else {
                Err(Error::Gamma1Mismatch {
                    stated,
                    lo: derived.lo,
                    hi: derived.hi,
                })
            }
        }
        (_, None) => Ok(derived),
    }
}

/// The classical Clifford index of the family: exact where known, otherwise
/// the interval certified by the gonality sequence.
pub fn known_gamma1(spec: &CurveSpec) -> Result<IntInterval> {
    Ok(Curve::new(spec.clone())?.gamma1())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_formulas() {
        assert_eq!(genus_of(&CurveSpec::SmoothPlane { degree: 5 }), 6);
        assert_eq!(genus_of(&CurveSpec::SmoothPlane { degree: 7 }), 15);
        assert_eq!(genus_of(&CurveSpec::Hyperelliptic { genus: 10 }), 10);
        assert_eq!(
            genus_of(&CurveSpec::GeneralNodalPlane {
                degree: 7,
                nodes: 3
            }),
            12
        );
    }

    #[test]
    fn family_gamma1() {
        let exact = |spec| known_gamma1(&spec).unwrap().as_exact();
        assert_eq!(exact(CurveSpec::SmoothPlane { degree: 7 }), Some(3));
        assert_eq!(exact(CurveSpec::General { genus: 10 }), Some(4));
        assert_eq!(exact(CurveSpec::Bielliptic { genus: 7 }), Some(2));
        assert_eq!(exact(CurveSpec::Hyperelliptic { genus: 8 }), Some(0));
        assert_eq!(exact(CurveSpec::Trigonal { genus: 8 }), Some(1));
        assert_eq!(exact(CurveSpec::GeneralKGonal { genus: 9, k: 4 }), Some(2));
        assert_eq!(exact(CurveSpec::GeneralKGonal { genus: 20, k: 6 }), Some(4));
        assert_eq!(
            exact(CurveSpec::GeneralNodalPlane {
                degree: 8,
                nodes: 5
            }),
            Some(4)
        );
    }

    #[test]
    fn custom_without_gamma1_uses_sequence() {
        let spec = CurveSpec::Custom(CustomCurve {
            genus: 8,
            gamma1: None,
            assertions: vec![(1, 2)],
        });
        assert_eq!(known_gamma1(&spec).unwrap(), IntInterval::exact(0));
    }

    #[test]
    fn custom_gamma1_conflict() {
        let spec = CurveSpec::Custom(CustomCurve {
            genus: 8,
            gamma1: Some(3),
            assertions: vec![(1, 2)],
        });
        assert!(matches!(
            known_gamma1(&spec),
            Err(Error::Sequence(gonality::SequenceError::Inconsistent {
                r: 1,
                lower_by: gonality::SequenceLemma::CliffordIndexLower,
                ..
            }))
        ));
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        use CurveError::*;
        let cases = [
            (CurveSpec::General { genus: 3 }, GenusTooSmall(3)),
            (CurveSpec::SmoothPlane { degree: 4 }, PlaneDegreeTooSmall(4)),
            (CurveSpec::Bielliptic { genus: 4 }, BiellipticGenus(4)),
            (
                CurveSpec::GeneralKGonal { genus: 10, k: 3 },
                GonalityTooSmall(3),
            ),
            (
                CurveSpec::GeneralKGonal { genus: 10, k: 7 },
                GonalityTooLarge {
                    genus: 10,
                    k: 7,
                    max: 6,
                },
            ),
            (
                CurveSpec::GeneralNodalPlane {
                    degree: 6,
                    nodes: 1,
                },
                NodalDegreeTooSmall(6),
            ),
            (
                CurveSpec::GeneralNodalPlane {
                    degree: 7,
                    nodes: 8,
                },
                NodeCount {
                    degree: 7,
                    nodes: 8,
                    max: 7,
                },
            ),
        ];
        for (spec, err) in cases {
            assert_eq!(spec.validate(), Err(err), "{spec}");
        }
        let custom = |gamma1, assertions| {
            CurveSpec::Custom(CustomCurve {
                genus: 10,
                gamma1,
                assertions,
            })
        };
        assert!(custom(Some(5), vec![]).validate().is_err());
        assert!(custom(Some(4), vec![(2, 9), (3, 9)]).validate().is_err());
        assert!(custom(None, vec![(3, 9), (2, 10)]).validate().is_err());
        assert!(custom(None, vec![(2, 9), (3, 11)]).validate().is_ok());
        assert!(CurveSpec::Custom(CustomCurve {
            genus: 3,
            gamma1: None,
            assertions: vec![]
        })
        .validate()
        .is_err());
    }

    #[test]
    fn validation_accepts_boundary_parameters() {
        for spec in [
            CurveSpec::General { genus: 4 },
            CurveSpec::Hyperelliptic { genus: 4 },
            CurveSpec::Trigonal { genus: 4 },
            CurveSpec::Bielliptic { genus: 5 },
            CurveSpec::GeneralKGonal { genus: 5, k: 4 },
            CurveSpec::GeneralKGonal { genus: 7, k: 5 },
            CurveSpec::SmoothPlane { degree: 5 },
            CurveSpec::GeneralNodalPlane {
                degree: 7,
                nodes: 7,
            },
        ] {
            assert_eq!(spec.validate(), Ok(()), "{spec}");
            Curve::new(spec).unwrap();
        }
    }
}
