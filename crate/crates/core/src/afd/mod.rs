//! Adaptive Fourier decomposition: greedy selection of Szegő-kernel parameters under the
//! maximum selection principle, with the Takenaka–Malmquist system built on the fly.
//!
//! At step `n` the state holds the standard remainder `r_n = f - Σ_{k<n} T_k ⟨f, T_k⟩`
//! and the Blaschke product `B = B_{a_1} * ... * B_{a_{n-1}}`. The selection objective
//! `|⟨f_n, e_a⟩|` for the reduced remainder `f_n = B^{-*} * r_n` is evaluated pointwise,
//!
//! ```text
//! ⟨f_n, e_a⟩ = sqrt(1 - |a|^2) B(â)^{-1} r_n(â),    â = B^c(a)^{-1} a B^c(a),
//! ```
//!
//! so no series division happens on the hot path.

mod rate;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::{
    backward_shift, blaschke_product_conj_eval, blaschke_product_eval, inner_product, BallPoint, TmSystem,
};
use crate::quat::Quaternion;
use crate::series::SliceSeries;

pub use rate::{check_energy_recurrence, rate_report, Atom, AtomicSignal, RateReport, RateRow};
pub use search::{
    candidate_grid, maximize_objective, nelder_mead, radial_levels, sphere_directions, SearchConfig, Selection,
    TERMINATION_NORM,
};

/// Default relative energy tolerance for stopping.
pub const DEFAULT_ENERGY_TOL: f64 = 1e-10;

/// Below this `|B^s(a)| = |B^c(a)| |B(â)|` the twist divides by a near-zero value and the
/// reduced remainder is evaluated directly.
const TWIST_FLOOR: f64 = 1e-4;

/// Running state of a decomposition.
#[derive(Clone, Debug)]
pub struct AfdState {
    original: SliceSeries,
    remainder: SliceSeries,
    reduced: SliceSeries,
    tm: TmSystem,
    coefficients: Vec<Quaternion>,
    energies: Vec<f64>,
    remainder_norms: Vec<f64>,
    selections: Vec<Selection>,
    lemma_deviations: Vec<f64>,
}

impl AfdState {
    pub fn new(f: &SliceSeries) -> Self {
        AfdState {
            original: f.clone(),
            remainder: f.clone(),
            reduced: f.clone(),
            tm: TmSystem::empty(f.order()),
            coefficients: Vec::new(),
            energies: Vec::new(),
            remainder_norms: vec![f.norm()],
            selections: Vec::new(),
            lemma_deviations: Vec::new(),
        }
    }

    pub fn original(&self) -> &SliceSeries {
        &self.original
    }

    /// Standard remainder `r_n`.
    pub fn remainder(&self) -> &SliceSeries {
        &self.remainder
    }

    /// Reduced remainder `f_n`, maintained through backward shifts.
    pub fn reduced_remainder(&self) -> &SliceSeries {
        &self.reduced
    }

    /// Product of the Blaschke factors of all parameters chosen so far.
    pub fn blaschke_prod(&self) -> &SliceSeries {
        self.tm.blaschke()
    }

    pub fn tm(&self) -> &TmSystem {
        &self.tm
    }

    pub fn params(&self) -> &[BallPoint] {
        self.tm.params()
    }

    /// `⟨f, T_k⟩` for every step taken.
    pub fn coefficients(&self) -> &[Quaternion] {
        &self.coefficients
    }

    /// `|⟨f_k, e_{a_k}⟩|^2` per step.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// `‖r_1‖ = ‖f‖, ‖r_2‖, ..., ‖r_{n+1}‖`.
    pub fn remainder_norms(&self) -> &[f64] {
        &self.remainder_norms
    }

    /// Search outcomes, one per greedy step (empty for steps taken via [`push_parameter`]).
    ///
    /// [`push_parameter`]: AfdState::push_parameter
    pub fn selections(&self) -> &[Selection] {
        &self.selections
    }

    /// `|⟨f, T_n⟩ - ⟨f_n, e_{a_n}⟩|` per step; zero up to rounding.
    pub fn lemma_deviations(&self) -> &[f64] {
        &self.lemma_deviations
    }

    pub fn steps(&self) -> usize {
        self.coefficients.len()
    }

    /// `‖r_{n+1}‖ / ‖f‖`, or zero for the zero signal.
    pub fn relative_remainder(&self) -> f64 {
        let f = self.remainder_norms[0];
        if f == 0.0 {
            0.0
        } else {
            self.remainder_norms.last().unwrap() / f
        }
    }

    /// Extends the decomposition by the parameter `a`, whatever its origin.
    pub fn push_parameter(&mut self, a: BallPoint) {
        let expected = selection_inner(a, self);
        let t = self.tm.push(a).clone();
        let c = inner_product(&self.original, &t);
        let via_remainder = inner_product(&self.remainder, &t);
        self.lemma_deviations
            .push((c - expected).norm().max((c - via_remainder).norm()));
        debug_assert!(
            (c - expected).norm() <= 1e-6 * self.original.norm().max(1.0),
            "kernel coefficient {c} disagrees with the reduced-remainder value {expected}"
        );

        self.remainder = self.remainder.sub(&t.mul_right(c));
        self.reduced = backward_shift(&self.reduced, a);
        self.coefficients.push(c);
        self.energies.push(c.norm_sqr());
        self.remainder_norms.push(self.remainder.norm());
    }

    /// `Σ_{k <= n} T_k c_k`.
    pub fn reconstruct(&self, n_terms: usize) -> Result<SliceSeries> {
        if n_terms > self.steps() {
            return Err(Error::Domain(format!(
                "asked for {n_terms} terms but only {} steps were taken",
                self.steps()
            )));
        }
        Ok(partial_sum(
            &self.tm.tm_functions()[..n_terms],
            &self.coefficients[..n_terms],
            self.original.order(),
        ))
    }
}

fn partial_sum(tm: &[SliceSeries], coeffs: &[Quaternion], order: usize) -> SliceSeries {
    tm.iter()
        .zip(coeffs)
        .fold(SliceSeries::zero(order), |acc, (t, &c)| acc.add(&t.mul_right(c)))
}

/// `⟨f_n, e_a⟩` for the current reduced remainder, as a quaternion.
pub fn selection_inner(a: BallPoint, state: &AfdState) -> Quaternion {
    let av = a.value();
    let params = state.params();
    if params.is_empty() {
        return state.remainder.eval(av) * a.weight();
    }
    let direct = || state.reduced.eval(av) * a.weight();
    let bc = blaschke_product_conj_eval(params, av);
    if bc.norm() < TWIST_FLOOR {
        return direct();
    }
    let hat = av.conjugated_by(bc);
    let b_hat = blaschke_product_eval(params, hat);
    if bc.norm() * b_hat.norm() < TWIST_FLOOR {
        return direct();
    }
    b_hat.inv_unchecked() * state.remainder.eval(hat) * a.weight()
}

/// Selection objective `|⟨f_n, e_a⟩|`.
pub fn objective(a: BallPoint, state: &AfdState) -> f64 {
    selection_inner(a, state).norm()
}

/// Greedy decomposition of `f`: up to `max_iters` steps, stopping early once
/// `‖r‖^2 <= energy_tol ‖f‖^2` or the remainder vanishes.
pub fn afd_decompose(f: &SliceSeries, max_iters: usize, energy_tol: f64, cfg: &SearchConfig) -> AfdState {
    let mut state = AfdState::new(f);
    let f_energy = f.norm_sqr();
    for _ in 0..max_iters {
        if state.remainder.norm_sqr() <= energy_tol * f_energy {
            break;
        }
        let Some(sel) = maximize_objective(&state, cfg) else {
            break;
        };
        state.push_parameter(sel.point);
        state.selections.push(sel);
    }
    state
}

pub fn reconstruct(state: &AfdState, n_terms: usize) -> Result<SliceSeries> {
    state.reconstruct(n_terms)
}

/// Serializable summary of a finished decomposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AfdReport {
    pub trunc_order: usize,
    pub steps: usize,
    pub params: Vec<BallPoint>,
    pub coeffs: Vec<Quaternion>,
    pub energies: Vec<f64>,
    pub remainder_norms: Vec<f64>,
    /// Whether each selected parameter sits on the `rho_max` shell.
    pub on_shell: Vec<bool>,
    /// `Σ|c_k|` when the input came with an atomic certificate.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mass: Option<f64>,
    pub config: SearchConfig,
}

impl AfdReport {
    pub fn new(state: &AfdState, cfg: &SearchConfig, mass: Option<f64>) -> Self {
        AfdReport {
            trunc_order: state.original.order(),
            steps: state.steps(),
            params: state.params().to_vec(),
            coeffs: state.coefficients.clone(),
            energies: state.energies.clone(),
            remainder_norms: state.remainder_norms.clone(),
            on_shell: state.selections.iter().map(|s| s.on_shell).collect(),
            mass,
            config: cfg.clone(),
        }
    }

    /// Rebuilds `Σ_{k <= n} T_k c_k` from the stored parameters and coefficients.
    pub fn reconstruct(&self, n_terms: usize) -> Result<SliceSeries> {
        if n_terms > self.params.len() || n_terms > self.coeffs.len() {
            return Err(Error::Domain(format!("report holds only {} terms", self.params.len())));
        }
        let tm = TmSystem::new(&self.params[..n_terms], self.trunc_order);
        Ok(partial_sum(
            tm.tm_functions(),
            &self.coeffs[..n_terms],
            self.trunc_order,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{random_ball_point, random_polynomial, random_quaternion, rng};
    use crate::hardy::szego_kernel;

    fn coarse() -> SearchConfig {
        SearchConfig {
            radial_levels: 12,
            sphere_points: 128,
            ..Default::default()
        }
    }

    #[test]
    fn first_step_objective_is_weighted_modulus() {
        let mut r = rng(71);
        let f = random_polynomial(&mut r, 6, 64);
        let state = AfdState::new(&f);
        for _ in 0..20 {
            let a = random_ball_point(&mut r, 0.9);
            let want = a.weight() * f.eval(a.value()).norm();
            assert!((objective(a, &state) - want).abs() < 1e-14);
        }
    }

    #[test]
    fn single_kernel_objective_peaks_at_its_parameter() {
        let b = BallPoint::new(Quaternion::new(0.4, 0.2, 0.0, 0.0)).unwrap();
        let f = szego_kernel(b, 256);
        let state = AfdState::new(&f);
        assert!((objective(b, &state) - 1.0).abs() < 1e-12);
        for a in candidate_grid(&coarse()) {
            let a = BallPoint::new(a).unwrap();
            if (a.value() - b.value()).norm() > 1e-3 {
                assert!(objective(a, &state) < 1.0);
            }
        }
    }

    #[test]
    fn objective_vanishes_towards_boundary_for_polynomials() {
        let mut r = rng(72);
        let f = random_polynomial(&mut r, 4, 32);
        let state = AfdState::new(&f);
        let dir = crate::fixtures::random_unit_quaternion(&mut r);
        let near = objective(BallPoint::new(dir * 0.999_999).unwrap(), &state);
        let mid = objective(BallPoint::new(dir * 0.9).unwrap(), &state);
        assert!(near < 0.01 * mid.max(1e-3));
    }

    #[test]
    fn one_atom_recovery() {
        let mut r = rng(73);
        let b = BallPoint::new(Quaternion::new(0.4, 0.2, 0.0, 0.0)).unwrap();
        let f = szego_kernel(b, 256);
        let sel = maximize_objective(&AfdState::new(&f), &SearchConfig::default()).unwrap();
        assert!((sel.point.value() - b.value()).norm() < 1e-4);
        assert!((sel.value - 1.0).abs() < 1e-6);

        let c = random_quaternion(&mut r);
        let f = f.mul_right(c);
        let state = afd_decompose(&f, 10, DEFAULT_ENERGY_TOL, &SearchConfig::default());
        assert_eq!(state.steps(), 1);
        assert!(state.relative_remainder() <= 1e-6);
        assert!((state.coefficients()[0] - c).norm() < 1e-5 * c.norm());
    }

    #[test]
    fn constants_select_the_origin() {
        let c = Quaternion::new(0.5, -1.0, 0.25, 2.0);
        let f = SliceSeries::constant(c, 64);
        let sel = maximize_objective(&AfdState::new(&f), &coarse()).unwrap();
        assert!(sel.point.norm() < 1e-6);
        assert!((sel.value - c.norm()).abs() < 1e-10);

        assert!(maximize_objective(&AfdState::new(&SliceSeries::zero(16)), &coarse()).is_none());
        let state = afd_decompose(&SliceSeries::zero(16), 5, DEFAULT_ENERGY_TOL, &coarse());
        assert_eq!(state.steps(), 0);
    }

    #[test]
    fn energy_identity_orthogonality_and_monotonicity() {
        let mut r = rng(74);
        let f = random_polynomial(&mut r, 8, 256);
        let state = afd_decompose(&f, 12, 0.0, &coarse());
        let f2 = f.norm_sqr();
        let mut captured = 0.0;
        for (n, e) in state.energies().iter().enumerate() {
            captured += e;
            let rem = state.remainder_norms()[n + 1].powi(2);
            assert!((f2 - captured - rem).abs() <= 1e-9 * f2);
            assert!(state.remainder_norms()[n + 1] <= state.remainder_norms()[n] * (1.0 + 1e-12));
            assert!(state.lemma_deviations()[n] <= 1e-8 * f.norm());
        }
        for t in state.tm().tm_functions() {
            assert!(inner_product(state.remainder(), t).norm() <= 1e-8 * f.norm());
        }
        for n in 0..=state.steps() {
            let rec = state.reconstruct(n).unwrap();
            assert!((f.sub(&rec).norm() - state.remainder_norms()[n]).abs() < 1e-9);
            let pyth: f64 = state.energies()[..n].iter().sum();
            assert!((rec.norm_sqr() - pyth).abs() < 1e-9);
        }
        assert!(state.reconstruct(state.steps() + 1).is_err());
        assert!(state.reconstruct(0).unwrap().is_zero());
    }

    #[test]
    fn fallback_near_the_zero_sphere() {
        // B^s vanishes on the spheres of the chosen parameters; around them the twist
        // divides by a small B(â) and the reduced remainder must take over.
        let mut r = rng(75);
        let f = random_polynomial(&mut r, 5, 256);
        let mut state = AfdState::new(&f);
        let a1 = BallPoint::new(Quaternion::new(0.3, 0.2, -0.4, 0.1)).unwrap();
        state.push_parameter(a1);
        state.push_parameter(random_ball_point(&mut r, 0.6));
        assert!(blaschke_product_conj_eval(&state.params()[..1], a1.value().conj()).norm() < 1e-14);
        for centre in [a1.value(), a1.value().conj()] {
            for k in 1..=12 {
                let offset = crate::fixtures::random_unit_quaternion(&mut r) * 10f64.powi(-k);
                let a = BallPoint::new(centre + offset).unwrap();
                let direct = state.reduced_remainder().eval(a.value()) * a.weight();
                let got = selection_inner(a, &state);
                assert!(got.max_abs_diff(direct) < 1e-9, "offset 1e-{k}: {got} vs {direct}");
            }
        }
    }

    #[test]
    fn twist_route_matches_reduced_remainder() {
        let mut r = rng(78);
        let f = random_polynomial(&mut r, 5, 256);
        let mut state = AfdState::new(&f);
        state.push_parameter(random_ball_point(&mut r, 0.6));
        state.push_parameter(random_ball_point(&mut r, 0.6));
        for _ in 0..20 {
            let a = random_ball_point(&mut r, 0.8);
            let twist = selection_inner(a, &state);
            let direct = state.reduced_remainder().eval(a.value()) * a.weight();
            assert!(twist.max_abs_diff(direct) < 1e-8, "{twist} vs {direct}");
        }
    }

    #[test]
    fn deterministic_selection() {
        let mut r = rng(76);
        let f = random_polynomial(&mut r, 6, 128);
        let a = afd_decompose(&f, 4, 0.0, &coarse());
        let b = afd_decompose(&f, 4, 0.0, &coarse());
        assert_eq!(a.params(), b.params());
        assert_eq!(a.coefficients(), b.coefficients());
    }

    #[test]
    fn report_round_trip() {
        let mut r = rng(77);
        let f = random_polynomial(&mut r, 5, 128);
        let cfg = coarse();
        let state = afd_decompose(&f, 5, 0.0, &cfg);
        let report = AfdReport::new(&state, &cfg, None);
        let json = serde_json::to_string(&report).unwrap();
        let back: AfdReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        for n in 0..=back.steps {
            let rem = f.sub(&back.reconstruct(n).unwrap()).norm();
            assert!((rem - state.remainder_norms()[n]).abs() <= 1e-12);
        }
    }
}
