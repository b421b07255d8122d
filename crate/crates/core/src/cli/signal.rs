use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::afd::{Atom, AtomicSignal};
use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::series::{SliceSeries, DEFAULT_ORDER};

/// Input signal as read from JSON.
///
/// ```json
/// {"kind": "coeffs", "trunc_order": 8, "coeffs": [[1, 0, 0, 0], [0, 0.5, 0, 0]]}
/// {"kind": "atoms", "trunc_order": 256, "atoms": [{"point": [0.4, 0.2, 0, 0], "coeff": [1, 0, 0, 0]}]}
/// ```
///
/// `trunc_order` may be omitted: coefficient lists then keep their own length and atoms
/// are synthesized at order 256.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawSpec")]
pub enum SignalSpec {
    Coeffs {
        coeffs: Vec<Quaternion>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        trunc_order: Option<usize>,
    },
    Atoms {
        atoms: Vec<Atom>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        trunc_order: Option<usize>,
    },
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Coeffs,
    Atoms,
}

// Flat form keeps serde_json's line/column positions on payload errors.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: Kind,
    coeffs: Option<Vec<Quaternion>>,
    atoms: Option<Vec<Atom>>,
    trunc_order: Option<usize>,
}

impl TryFrom<RawSpec> for SignalSpec {
    type Error = Error;

    fn try_from(r: RawSpec) -> Result<Self> {
        match (r.kind, r.coeffs, r.atoms) {
            (Kind::Coeffs, Some(coeffs), None) => Ok(SignalSpec::Coeffs {
                coeffs,
                trunc_order: r.trunc_order,
            }),
            (Kind::Atoms, None, Some(atoms)) => Ok(SignalSpec::Atoms {
                atoms,
                trunc_order: r.trunc_order,
            }),
            (Kind::Coeffs, _, _) => Err(Error::Input(
                "kind \"coeffs\" needs field `coeffs` and no `atoms`".into(),
            )),
            (Kind::Atoms, _, _) => Err(Error::Input(
                "kind \"atoms\" needs field `atoms` and no `coeffs`".into(),
            )),
        }
    }
}

/// A loaded signal: its series plus the atomic certificate when there is one.
#[derive(Clone, Debug)]
pub struct Signal {
    pub series: SliceSeries,
    pub atoms: Option<AtomicSignal>,
}

impl Signal {
    /// `M = Σ|c_k|` for atomic inputs.
    pub fn mass(&self) -> Option<f64> {
        self.atoms.as_ref().map(AtomicSignal::mass)
    }
}

impl SignalSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("signal spec: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }

    pub fn trunc_order(&self) -> Option<usize> {
        match self {
            SignalSpec::Coeffs { trunc_order, .. } | SignalSpec::Atoms { trunc_order, .. } => *trunc_order,
        }
    }

    /// Builds the series, with `order_override` taking precedence over the file's `trunc_order`.
    pub fn realize(&self, order_override: Option<usize>) -> Result<Signal> {
        let order = order_override.or(self.trunc_order());
        let signal = match self {
            SignalSpec::Coeffs { coeffs, .. } => {
                let order = order.unwrap_or(coeffs.len().saturating_sub(1));
                if coeffs.len() > order + 1 {
                    return Err(Error::Input(format!(
                        "coeffs: {} entries exceed trunc_order {order}",
                        coeffs.len()
                    )));
                }
                Signal {
                    series: SliceSeries::new(coeffs.clone()).with_order(order),
                    atoms: None,
                }
            }
            SignalSpec::Atoms { atoms, .. } => {
                let atoms = AtomicSignal { atoms: atoms.clone() };
                Signal {
                    series: atoms.synthesize(order.unwrap_or(DEFAULT_ORDER)),
                    atoms: Some(atoms),
                }
            }
        };
        if !signal.series.is_finite() || !signal.series.norm_sqr().is_finite() {
            return Err(Error::Overflow("signal energy is not finite".into()));
        }
        Ok(signal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeffs_default_order_is_list_length() {
        let spec = SignalSpec::from_json(r#"{"kind":"coeffs","coeffs":[[1,0,0,0],[0,1,0,0]]}"#).unwrap();
        let s = spec.realize(None).unwrap();
        assert_eq!(s.series.order(), 1);
        assert!(s.mass().is_none());
        assert_eq!(spec.realize(Some(5)).unwrap().series.order(), 5);
        assert!(spec.realize(Some(0)).is_err());
    }

    #[test]
    fn atoms_synthesize_kernels() {
        let spec = SignalSpec::from_json(
            r#"{"kind":"atoms","trunc_order":64,"atoms":[{"point":[0.5,0,0,0],"coeff":[2,0,0,0]}]}"#,
        )
        .unwrap();
        let s = spec.realize(None).unwrap();
        assert_eq!(s.series.order(), 64);
        assert_eq!(s.mass(), Some(2.0));
        // e_a has coefficients sqrt(1 - |a|^2) conj(a)^n
        assert!((s.series.coeff(3).w - 2.0 * 0.75f64.sqrt() * 0.125).abs() < 1e-15);
    }

    #[test]
    fn malformed_inputs_name_the_problem() {
        let e = SignalSpec::from_json(r#"{"kind":"coeffs","coefs":[]}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("coefs"), "{e}");
        let e = SignalSpec::from_json("{\"kind\":\"atoms\",\n\"atoms\":[{\"point\":[0.1,0,0]}]}")
            .unwrap_err()
            .to_string();
        assert!(e.contains("line 2"), "{e}");
        assert!(SignalSpec::from_json(r#"{"kind":"wavelets"}"#).is_err());
        let e = SignalSpec::from_json(r#"{"kind":"atoms","coeffs":[]}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("`atoms`"), "{e}");
    }

    #[test]
    fn overflow_is_reported() {
        let spec = SignalSpec::from_json(r#"{"kind":"coeffs","coeffs":[[1e200,0,0,0]]}"#).unwrap();
        assert!(matches!(spec.realize(None), Err(Error::Overflow(_))));
    }

    #[test]
    fn round_trip() {
        let spec = SignalSpec::Atoms {
            atoms: vec![Atom {
                point: crate::BallPoint::new(Quaternion::new(0.1, 0.2, 0.3, 0.4)).unwrap(),
                coeff: Quaternion::new(1.0, -2.0, 0.5, 0.0),
            }],
            trunc_order: Some(32),
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(SignalSpec::from_json(&text).unwrap(), spec);
    }
}
