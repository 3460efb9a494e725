//! Independent numerical oracle.
//!
//! Everything here works pointwise on ℝ and never consults the symbolic
//! reduction machinery: integrands are built from `f64` math plus the
//! convolution kernel T, the window is truncated where an analytic tail
//! bound says the remainder is negligible, and the window is integrated by
//! adaptive Gauss–Kronrod bisection. Agreement between this module and the
//! exact pipeline is the artifact's cross-check, so the two sides must not
//! share symbolic code paths.

mod rules;
mod tkernel;

pub use tkernel::TKernel;

use std::collections::HashMap;
use std::sync::RwLock;

use serde::Serialize;
use thiserror::Error;

use crate::basisreduce::BasisCombo;
use crate::funcalg::{defining_monomial, Monomial, Trig};

use rules::adaptive_gk15;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// How T is evaluated inside integrands. The cache is an optimization only;
/// entries are value-deterministic, so results cannot depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TStrategy {
    Convolution,
    ConvolutionCached,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Absolute tolerance requested per integral.
    pub abs_tol: f64,
    /// Half-width X of the integration window [−X, X].
    pub truncation_radius: f64,
    /// Bisection depth limit before declaring non-convergence.
    pub max_refinement_depth: u32,
    pub t_strategy: TStrategy,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            truncation_radius: 40.0,
            max_refinement_depth: 48,
            t_strategy: TStrategy::ConvolutionCached,
        }
    }
}

impl QuadConfig {
    /// Checks the window against the analytic tail bound for the slowest
    /// decaying integrand shape handled here (sech¹ with polynomial growth):
    /// the truncated tail must stay below abs_tol/10.
    pub fn validate(&self) -> Result<(), String> {
        if self.abs_tol.is_nan() || self.abs_tol <= 0.0 {
            return Err("abs_tol must be positive".into());
        }
        if self.truncation_radius.is_nan() || self.truncation_radius <= 0.0 {
            return Err("truncation_radius must be positive".into());
        }
        let worst = Monomial::one().sech_pow(1).x_pow(1).logsech_pow(1).sin();
        let tail = tail_bound(&worst, self.truncation_radius);
        if tail > self.abs_tol / 10.0 {
            return Err(format!(
                "truncation radius {} leaves a tail bound {:.3e} above abs_tol/10 = {:.3e}",
                self.truncation_radius,
                tail,
                self.abs_tol / 10.0
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    /// A-posteriori estimate: per-panel Gauss/Kronrod level differences,
    /// plus the analytic truncation tail and the inner-T budget where T
    /// enters the integrand.
    pub error_estimate: f64,
    /// Outer integrand evaluations (inner T evaluations are tracked by the
    /// kernel itself).
    pub evaluations: u64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("quadrature did not converge ({context}, refinement depth {depth})")]
    NonConvergence { context: String, depth: u32 },
    #[error("integrand does not decay, refusing to integrate: {0}")]
    NonIntegrable(String),
}

/// log(sech x) through the stable branch −|x| + log 2 − log(1 + e^{−2|x|}),
/// which is an identity and avoids sech underflow for large |x|.
pub fn logsech(x: f64) -> f64 {
    let a = x.abs();
    std::f64::consts::LN_2 - a - (-2.0 * a).exp().ln_1p()
}

/// Pointwise value of a formal monomial at x.
pub fn monomial_value(m: &Monomial, x: f64, tk: &TKernel) -> f64 {
    let mut v = 1.0_f64;
    if m.sech > 0 {
        v *= tkernel::sech(x).powi(m.sech as i32);
    }
    if m.logsech > 0 {
        v *= logsech(x).powi(m.logsech as i32);
    }
    if m.tanh > 0 {
        v *= x.tanh().powi(m.tanh as i32);
    }
    if m.x > 0 {
        v *= x.powi(m.x as i32);
    }
    if m.t > 0 {
        v *= tk.value(x).powi(m.t as i32);
    }
    if m.tprime > 0 {
        v *= tk.deriv(x).powi(m.tprime as i32);
    }
    match m.trig {
        Trig::None => {}
        Trig::Cos => v *= x.cos(),
        Trig::Sin => v *= x.sin(),
    }
    v
}

/// Bound on 2·∫_X^∞ |m(x)| dx from sech ≤ 2e^{−|x|}, T ≤ 14·e^{−√2|x|},
/// |T′| ≤ √2·14·e^{−√2|x|} and |log sech x| ≤ |x| for |x| ≥ 1.
fn tail_bound(m: &Monomial, x_max: f64) -> f64 {
    let alpha = m.sech as f64 + SQRT2 * (m.t + m.tprime) as f64;
    if alpha <= 0.0 {
        return f64::INFINITY;
    }
    let n = (m.x + m.logsech) as i32;
    let c = 2f64.powi(m.sech as i32)
        * 14f64.powi((m.t + m.tprime) as i32)
        * SQRT2.powi(m.tprime as i32);
    // ∫_X^∞ x^n e^{−αx} dx = e^{−αX} Σ_{i=0}^{n} (n!/(n−i)!)·X^{n−i}/α^{i+1}
    let mut sum = 0.0;
    let mut falling = 1.0;
    for i in 0..=n {
        if i > 0 {
            falling *= (n - i + 1) as f64;
        }
        sum += falling * x_max.powi(n - i) / alpha.powi(i + 1);
    }
    2.0 * c * (-alpha * x_max).exp() * sum
}

pub struct Quadrature {
    cfg: QuadConfig,
    tk: TKernel,
    mono_cache: RwLock<HashMap<Monomial, QuadResult>>,
}

impl Quadrature {
    pub fn new(cfg: QuadConfig) -> Self {
        let tk = TKernel::new(cfg.abs_tol, cfg.max_refinement_depth, cfg.t_strategy);
        Quadrature {
            cfg,
            tk,
            mono_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &QuadConfig {
        &self.cfg
    }

    pub fn kernel(&self) -> &TKernel {
        &self.tk
    }

    /// T(x) to the inner tolerance.
    pub fn eval_t(&self, x: f64) -> Result<QuadResult, QuadError> {
        let before = self.tk.evaluations();
        let v = self.tk.value(x);
        if let Some(e) = self.tk.take_failure() {
            return Err(e);
        }
        Ok(QuadResult {
            value: v,
            error_estimate: self.tk.inner_tol(),
            evaluations: self.tk.evaluations() - before,
        })
    }

    /// T(x) by the independent Fourier route.
    pub fn eval_t_fourier(&self, x: f64) -> Result<QuadResult, QuadError> {
        let before = self.tk.evaluations();
        let v = self.tk.value_fourier(x);
        if let Some(e) = self.tk.take_failure() {
            return Err(e);
        }
        Ok(QuadResult {
            value: v,
            error_estimate: self.tk.inner_tol(),
            evaluations: self.tk.evaluations() - before,
        })
    }

    /// ∫_ℝ m(x) dx for any monomial, including unclassifiable ones; the only
    /// refusal is an integrand with no decay at all.
    pub fn eval_monomial(&self, m: &Monomial) -> Result<QuadResult, QuadError> {
        if let Some(hit) = self.mono_cache.read().unwrap().get(m) {
            return Ok(*hit);
        }
        if m.sech == 0 && m.t == 0 && m.tprime == 0 {
            return Err(QuadError::NonIntegrable(m.to_string()));
        }
        let uses_t = m.t + m.tprime > 0;
        let res = self.integrate_window(|x, tk| monomial_value(m, x, tk), uses_t, &m.to_string())?;
        let tail = tail_bound(m, self.cfg.truncation_radius);
        let out = QuadResult {
            value: res.value,
            error_estimate: res.error_estimate + tail,
            evaluations: res.evaluations,
        };
        self.mono_cache.write().unwrap().insert(*m, out);
        Ok(out)
    }

    /// Linearity: Σ coeff·∫(defining integrand), error estimates summed with
    /// |coeff| weights.
    pub fn eval_combo(&self, c: &BasisCombo) -> Result<QuadResult, QuadError> {
        let mut value = 0.0;
        let mut err = 0.0;
        let mut evals = 0;
        for (b, coeff) in c.terms() {
            let m = defining_monomial(*b);
            let r = self.eval_monomial(&m)?;
            let w = coeff.to_f64();
            value += w * r.value;
            err += w.abs() * r.error_estimate;
            evals += r.evaluations;
        }
        Ok(QuadResult {
            value,
            error_estimate: err,
            evaluations: evals,
        })
    }

    /// Integrates a literal γᵢ integrand of the decomposition
    /// Γ = γ₁ + γ₂ + γ₃ + γ₄, built pointwise and bypassing the symbolic
    /// expansion entirely.
    pub fn eval_gamma_direct(&self, i: u8) -> Result<QuadResult, QuadError> {
        assert!((1..=4).contains(&i), "gamma index must be 1..=4");
        let uses_t = i <= 2;
        self.integrate_window(
            move |x, tk| pointwise::gamma_integrand(i, x, tk),
            uses_t,
            &format!("gamma_{i} direct"),
        )
        .map(|r| QuadResult {
            // Direct integrands decay at least like (1+|x|)²·sech; fold the
            // corresponding analytic tail into the estimate.
            error_estimate: r.error_estimate
                + 30.0
                    * tail_bound(
                        &Monomial::one().sech_pow(1).x_pow(1).logsech_pow(1),
                        self.cfg.truncation_radius,
                    ),
            ..r
        })
    }

    /// Integrates an arbitrary pointwise integrand over the configured
    /// window. `uses_t` widens the error estimate by the inner-T budget.
    pub fn integrate_window<F>(
        &self,
        f: F,
        uses_t: bool,
        context: &str,
    ) -> Result<QuadResult, QuadError>
    where
        F: Fn(f64, &TKernel) -> f64,
    {
        let x_max = self.cfg.truncation_radius;
        let g = |x: f64| f(x, &self.tk);
        let out = adaptive_gk15(&g, -x_max, x_max, self.cfg.abs_tol, self.cfg.max_refinement_depth)
            .map_err(|fail| QuadError::NonConvergence {
                context: format!("{context} (panel [{}, {}])", fail.panel.0, fail.panel.1),
                depth: fail.depth,
            })?;
        if let Some(e) = self.tk.take_failure() {
            return Err(e);
        }
        let t_budget = if uses_t {
            2.0 * x_max * self.tk.inner_tol()
        } else {
            0.0
        };
        Ok(QuadResult {
            value: out.0,
            error_estimate: out.1 + t_budget,
            evaluations: out.2,
        })
    }
}

/// The integrand functions of the Γ decomposition as plain pointwise math:
/// φ₃ = √2 sech, ξ₃,₁ = 1 − 2sech², the resonance components h₃,₁ and h₃,₂,
/// the p-derivatives E and F of the soliton, and the first-order corrections
/// R₁, R₂.
pub mod pointwise {
    pub use super::tkernel::sech;
    use super::tkernel::TKernel;
    use super::{logsech, SQRT2};

    const LN2: f64 = std::f64::consts::LN_2;

    pub fn phi3(x: f64) -> f64 {
        SQRT2 * sech(x)
    }

    pub fn xi1(x: f64) -> f64 {
        let s = sech(x);
        1.0 - 2.0 * s * s
    }

    pub fn h31(x: f64) -> f64 {
        let s = sech(x);
        s * s * x.cos() - x.tanh() * x.sin()
    }

    pub fn h32(x: f64) -> f64 {
        -x.tanh() * x.sin()
    }

    /// F = (1/(4√2))(2 log2 + 1)·sech + (1/√2)·sech·logsech − (1/√2)·x·sech·tanh.
    pub fn f_deriv(x: f64) -> f64 {
        let s = sech(x);
        (2.0 * LN2 + 1.0) / (4.0 * SQRT2) * s + s * logsech(x) / SQRT2
            - x * s * x.tanh() / SQRT2
    }

    /// E = (1/(4√2))(1 − 2 log2)·sech − (1/√2)·sech·logsech − (1/√2)·x·sech·tanh.
    pub fn e_deriv(x: f64) -> f64 {
        let s = sech(x);
        (1.0 - 2.0 * LN2) / (4.0 * SQRT2) * s - s * logsech(x) / SQRT2
            - x * s * x.tanh() / SQRT2
    }

    pub fn r1(x: f64, t: f64, tp: f64) -> f64 {
        let s = sech(x);
        2.0 * x * x.tanh() * s * s - (3.0 - 2.0 * s * s) / (4.0 * SQRT2) * t
            + x.tanh() / (2.0 * SQRT2) * tp
    }

    pub fn r2(x: f64, t: f64, tp: f64) -> f64 {
        let s = sech(x);
        s * s + 3.0 / (4.0 * SQRT2) * t - x.tanh() / (2.0 * SQRT2) * tp
    }

    pub fn delta1(x: f64, tk: &TKernel) -> f64 {
        let t = tk.value(x);
        let tp = tk.deriv(x);
        let xi = xi1(x);
        f_deriv(x) * (3.0 * xi * xi - 1.0) + phi3(x) * xi * xi
            + 6.0 * phi3(x) * xi * r1(x, t, tp)
            - 2.0 * phi3(x) * r2(x, t, tp)
    }

    pub fn delta2(x: f64, tk: &TKernel) -> f64 {
        let t = tk.value(x);
        let tp = tk.deriv(x);
        let xi = xi1(x);
        f_deriv(x) * xi + phi3(x) * r1(x, t, tp) + phi3(x) * xi * r2(x, t, tp)
    }

    pub fn gamma3_weight(x: f64) -> f64 {
        let s = sech(x);
        6.0 * x * x.tanh() * s * s - 3.5 * s * s
    }

    /// The literal integrand of γᵢ in Γ = γ₁ + γ₂ + γ₃ + γ₄.
    pub fn gamma_integrand(i: u8, x: f64, tk: &TKernel) -> f64 {
        match i {
            1 => delta1(x, tk) * h31(x),
            2 => 2.0 * delta2(x, tk) * h32(x),
            3 => gamma3_weight(x) * phi3(x) * xi1(x) * h31(x),
            4 => -2.0 * e_deriv(x) * h31(x),
            _ => panic!("gamma index must be 1..=4"),
        }
    }
}
