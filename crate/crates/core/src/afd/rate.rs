//! Convergence-rate diagnostics for signals with an atomic certificate
//! `f = Σ e_{b_k} c_k`, `Σ |c_k| <= M`, where the greedy remainders obey
//! `‖r_m‖ <= M / sqrt(m)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::{szego_kernel, BallPoint};
use crate::quat::Quaternion;
use crate::series::SliceSeries;

use super::{afd_decompose, AfdState, SearchConfig};

/// Relative slack on the bound comparisons, for rounding only.
const BOUND_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub point: BallPoint,
    pub coeff: Quaternion,
}

/// Finite combination of normalized Szegő kernels with right coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomicSignal {
    pub atoms: Vec<Atom>,
}

impl AtomicSignal {
    pub fn new(atoms: impl IntoIterator<Item = (BallPoint, Quaternion)>) -> Self {
        AtomicSignal {
            atoms: atoms.into_iter().map(|(point, coeff)| Atom { point, coeff }).collect(),
        }
    }

    /// `M = Σ |c_k|`.
    pub fn mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.coeff.norm()).sum()
    }

    /// `Σ e_{b_k} c_k` truncated at `order`.
    pub fn synthesize(&self, order: usize) -> SliceSeries {
        self.atoms.iter().fold(SliceSeries::zero(order), |acc, a| {
            acc.add(&szego_kernel(a.point, order).mul_right(a.coeff))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub m: usize,
    pub remainder_norm: f64,
    /// `M / sqrt(m)`.
    pub bound: f64,
    pub pass: bool,
    /// `d_{m+1} <= d_m (1 - d_m / M^2)` with `d_m = ‖r_m‖^2`; `None` on the last row.
    pub recurrence: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct RateReport {
    pub mass: f64,
    pub signal_norm: f64,
    pub rows: Vec<RateRow>,
    pub state: AfdState,
}

impl RateReport {
    pub fn all_pass(&self) -> bool {
        self.signal_norm <= self.mass * (1.0 + BOUND_SLACK) && self.rows.iter().all(|r| r.pass)
    }
}

/// Synthesizes the signal, decomposes it and checks `‖r_m‖ <= M/sqrt(m)` at every computed `m`.
pub fn rate_report(
    signal: &AtomicSignal,
    max_iters: usize,
    energy_tol: f64,
    order: usize,
    cfg: &SearchConfig,
) -> Result<RateReport> {
    if signal.atoms.is_empty() {
        return Err(Error::Input("atomic signal needs at least one atom".into()));
    }
    let mass = signal.mass();
    let f = signal.synthesize(order);
    let state = afd_decompose(&f, max_iters, energy_tol, cfg);
    let norms = state.remainder_norms();
    let a = mass * mass;
    let rows = norms
        .iter()
        .enumerate()
        .map(|(i, &rn)| {
            let m = i + 1;
            let bound = mass / (m as f64).sqrt();
            let recurrence = norms.get(i + 1).map(|&next| {
                let d = rn * rn;
                next * next <= d * (1.0 - d / a) + BOUND_SLACK * a
            });
            RateRow {
                m,
                remainder_norm: rn,
                bound,
                pass: rn <= bound * (1.0 + BOUND_SLACK),
                recurrence,
            }
        })
        .collect();
    Ok(RateReport {
        mass,
        signal_norm: f.norm(),
        rows,
        state,
    })
}

/// For `d_1 <= A` and `d_{m+1} <= d_m (1 - d_m / A)`, checks `d_m <= A/m` for every `m`.
/// Returns `None` when the hypotheses fail, otherwise whether the conclusion holds.
pub fn check_energy_recurrence(d: &[f64], a: f64) -> Option<bool> {
    let first = *d.first()?;
    if first > a || d.iter().any(|&x| x < 0.0) {
        return None;
    }
    if d.windows(2).any(|w| w[1] > w[0] * (1.0 - w[0] / a)) {
        return None;
    }
    Some(d.iter().enumerate().all(|(i, &x)| x <= a / (i + 1) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{random_ball_point, random_quaternion, rng};
    use rand::Rng;

    #[test]
    fn mass_bounds_norm() {
        let mut r = rng(81);
        for _ in 0..20 {
            let sig = AtomicSignal::new((0..6).map(|_| (random_ball_point(&mut r, 0.8), random_quaternion(&mut r))));
            assert!(sig.synthesize(256).norm() <= sig.mass() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn single_atom_rates() {
        let b = BallPoint::new(Quaternion::new(0.1, -0.3, 0.2, 0.4)).unwrap();
        let sig = AtomicSignal::new([(b, Quaternion::new(0.5, 0.5, 0.0, -1.0))]);
        let rep = rate_report(&sig, 5, 1e-10, 256, &SearchConfig::default()).unwrap();
        assert!(rep.all_pass());
        assert!((rep.rows[0].remainder_norm - rep.signal_norm).abs() < 1e-15);
        assert!(rep.rows[1].remainder_norm < 1e-5 * rep.mass);
    }

    #[test]
    fn empty_signal_rejected() {
        let sig = AtomicSignal { atoms: vec![] };
        assert!(rate_report(&sig, 5, 0.0, 32, &SearchConfig::default()).is_err());
    }

    #[test]
    fn recurrence_lemma_on_synthetic_sequences() {
        let mut r = rng(82);
        for _ in 0..100 {
            let a = r.gen_range(0.1..10.0);
            let mut d = vec![a * r.gen::<f64>()];
            for _ in 0..200 {
                let last = *d.last().unwrap();
                d.push(last * (1.0 - last / a) * r.gen::<f64>().sqrt());
            }
            assert_eq!(check_energy_recurrence(&d, a), Some(true));
        }
        // extremal sequence: equality in the hypothesis every step
        let a = 1.0;
        let mut d = vec![0.5];
        for _ in 0..1000 {
            let x = *d.last().unwrap();
            d.push(x * (1.0 - x / a));
        }
        assert_eq!(check_energy_recurrence(&d, a), Some(true));
        assert_eq!(check_energy_recurrence(&[2.0], 1.0), None);
        assert_eq!(check_energy_recurrence(&[0.5, 0.5], 1.0), None);
    }

    #[test]
    fn atoms_json_shape() {
        let sig: AtomicSignal = serde_json::from_str(r#"{"atoms":[{"point":[0.1,0,0,0],"coeff":[1,0,0,0]}]}"#).unwrap();
        assert_eq!(sig.mass(), 1.0);
        assert!(serde_json::from_str::<AtomicSignal>(r#"{"atoms":[{"point":[1,0,0,0],"coeff":[1,0,0,0]}]}"#).is_err());
    }
}
