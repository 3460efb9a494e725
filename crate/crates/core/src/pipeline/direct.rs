//! Pointwise integrands for the numeric cross-check of individual claims.
//!
//! These are transcriptions of the claim integrands as plain `f64` math,
//! sharing nothing with the symbolic expansion. Claims whose symbolic side
//! discards a bare-sech multiple (it pairs to zero against h₃,₁) subtract
//! the same multiple here, so the integrand matches the tabulated identity
//! rather than the raw product.

use crate::quadrature::pointwise::{
    e_deriv, f_deriv, gamma3_weight, gamma_integrand, h31, h32, phi3, sech, xi1,
};
use crate::quadrature::{logsech, TKernel};

const SQRT2: f64 = std::f64::consts::SQRT_2;
const LN2: f64 = std::f64::consts::LN_2;

/// sech coefficient of F.
fn lam_f() -> f64 {
    (2.0 * LN2 + 1.0) / (4.0 * SQRT2)
}

fn sech2cos(x: f64) -> f64 {
    let s = sech(x);
    s * s * x.cos()
}

fn tanhsin(x: f64) -> f64 {
    x.tanh() * x.sin()
}

fn f_xi2_stripped(x: f64) -> f64 {
    let xi = xi1(x);
    f_deriv(x) * xi * xi - lam_f() * sech(x)
}

fn phi3_xi2_stripped(x: f64) -> f64 {
    let xi = xi1(x);
    SQRT2 * sech(x) * (xi * xi - 1.0)
}

fn phi3_xi_r1(x: f64, tk: &TKernel) -> f64 {
    let t = tk.value(x);
    let tp = tk.deriv(x);
    phi3(x) * xi1(x) * crate::quadrature::pointwise::r1(x, t, tp)
}

fn phi3_r2(x: f64, tk: &TKernel) -> f64 {
    let t = tk.value(x);
    let tp = tk.deriv(x);
    phi3(x) * crate::quadrature::pointwise::r2(x, t, tp)
}

fn g111(x: f64, _tk: &TKernel) -> f64 {
    3.0 * f_xi2_stripped(x) * sech2cos(x)
}

fn g112(x: f64, _tk: &TKernel) -> f64 {
    -3.0 * f_xi2_stripped(x) * tanhsin(x)
}

fn g121(x: f64, _tk: &TKernel) -> f64 {
    -(f_deriv(x) - lam_f() * sech(x)) * sech2cos(x)
}

fn g122(x: f64, _tk: &TKernel) -> f64 {
    (f_deriv(x) - lam_f() * sech(x)) * tanhsin(x)
}

fn g131(x: f64, _tk: &TKernel) -> f64 {
    phi3_xi2_stripped(x) * sech2cos(x)
}

fn g132(x: f64, _tk: &TKernel) -> f64 {
    -phi3_xi2_stripped(x) * tanhsin(x)
}

fn g141(x: f64, tk: &TKernel) -> f64 {
    6.0 * phi3_xi_r1(x, tk) * sech2cos(x)
}

fn g142(x: f64, tk: &TKernel) -> f64 {
    -6.0 * phi3_xi_r1(x, tk) * tanhsin(x)
}

fn g151(x: f64, tk: &TKernel) -> f64 {
    -2.0 * phi3_r2(x, tk) * sech2cos(x)
}

fn g152(x: f64, tk: &TKernel) -> f64 {
    2.0 * phi3_r2(x, tk) * tanhsin(x)
}

fn g21(x: f64, _tk: &TKernel) -> f64 {
    2.0 * f_deriv(x) * xi1(x) * h32(x)
}

fn g22(x: f64, tk: &TKernel) -> f64 {
    let t = tk.value(x);
    let tp = tk.deriv(x);
    2.0 * phi3(x) * crate::quadrature::pointwise::r1(x, t, tp) * h32(x)
}

fn g23(x: f64, tk: &TKernel) -> f64 {
    let t = tk.value(x);
    let tp = tk.deriv(x);
    2.0 * phi3(x) * xi1(x) * crate::quadrature::pointwise::r2(x, t, tp) * h32(x)
}

fn g31(x: f64, _tk: &TKernel) -> f64 {
    let s = sech(x);
    6.0 * x * x.tanh() * s * s * phi3(x) * xi1(x) * h31(x)
}

fn g32(x: f64, _tk: &TKernel) -> f64 {
    let s = sech(x);
    -3.5 * s * s * phi3(x) * xi1(x) * h31(x)
}

fn g42(x: f64, _tk: &TKernel) -> f64 {
    SQRT2 * sech(x) * logsech(x) * h31(x)
}

fn g43(x: f64, _tk: &TKernel) -> f64 {
    SQRT2 * x * sech(x) * x.tanh() * h31(x)
}

fn g1(x: f64, tk: &TKernel) -> f64 {
    gamma_integrand(1, x, tk)
}

fn g2(x: f64, tk: &TKernel) -> f64 {
    gamma_integrand(2, x, tk)
}

fn g3(x: f64, tk: &TKernel) -> f64 {
    gamma_integrand(3, x, tk)
}

fn g4(x: f64, tk: &TKernel) -> f64 {
    gamma_integrand(4, x, tk)
}

fn gsum(x: f64, tk: &TKernel) -> f64 {
    // Shared T values across the four pieces.
    let t = tk.value(x);
    let tp = tk.deriv(x);
    let r1 = crate::quadrature::pointwise::r1(x, t, tp);
    let r2 = crate::quadrature::pointwise::r2(x, t, tp);
    let xi = xi1(x);
    let d1 = f_deriv(x) * (3.0 * xi * xi - 1.0) + phi3(x) * xi * xi + 6.0 * phi3(x) * xi * r1
        - 2.0 * phi3(x) * r2;
    let d2 = f_deriv(x) * xi + phi3(x) * r1 + phi3(x) * xi * r2;
    d1 * h31(x) + 2.0 * d2 * h32(x) + gamma3_weight(x) * phi3(x) * xi * h31(x)
        - 2.0 * e_deriv(x) * h31(x)
}

fn orth(x: f64, _tk: &TKernel) -> f64 {
    phi3(x) * h31(x)
}

/// The direct pointwise integrand for a claim id, where one exists.
/// Reduction-rule claims are cross-checked against their left-hand basis
/// integral instead and are not listed here.
pub(super) fn direct_integrand(id: &str) -> Option<fn(f64, &TKernel) -> f64> {
    Some(match id {
        "gamma_111" => g111,
        "gamma_112" => g112,
        "gamma_121" => g121,
        "gamma_122" => g122,
        "gamma_131" => g131,
        "gamma_132" => g132,
        "gamma_141" => g141,
        "gamma_142" => g142,
        "gamma_151" => g151,
        "gamma_152" => g152,
        "gamma_21" => g21,
        "gamma_22" => g22,
        "gamma_23" => g23,
        "gamma_31" => g31,
        "gamma_32" => g32,
        "gamma_42" => g42,
        "gamma_43" => g43,
        "lemma_gamma1" | "eq_gam1" => g1,
        "lemma_gamma2" | "eq_gam2" => g2,
        "lemma_gamma3" | "eq_gam3" => g3,
        "lemma_gamma4" | "eq_gam4" => g4,
        "prop_1st" | "theorem_fgr" => gsum,
        "orth_phi3_h31" => orth,
        _ => return None,
    })
}
