//! The spectral zeta function ζ(s) = Σ l_{mn}^{−s} by three routes, its
//! derivative at the origin, and the regularized determinant e^{−ζ′(0)}.
//!
//! Routes:
//! - `direct`: lattice sum over a truncated window, with the omitted tails
//!   restored by midpoint Euler–Maclaurin corrections (valid for Re s > 1);
//! - `mellin`: (1/Γ(s)) ∫₀^∞ t^{s−1} Θ(t) dt against the heat trace
//!   (valid for Re s > 1);
//! - `subtraction`: the analytic continuation
//!   ζ(s) = F(s)/Γ(s) + V₀^{1−s}/(4π(s−1)), where
//!   F(s) = ∫₀^∞ t^{s−1} R(t) dt is entire because the subtracted remainder
//!   R(t) = Θ(t) − e^{−V₀t}/(4πt) decays exponentially at both endpoints.
//!   Valid for every s except the simple pole at s = 1; in particular at
//!   s = 0, where ζ(0) = −V₀/(4π) and ζ′(0) = F(0) + V₀(ln V₀ − 1)/(4π).

mod psi;
mod report;

pub use psi::{psi_closed_form, psi_corrected, psi_paper, PsiBreakdown};
pub use report::{compare_routes, determinant, psi_value, DetReport, DetRoute};

use crate::error::{Error, Result};
use crate::heat::{dual_crossover, heat_remainder, heat_trace};
use crate::numerics::{integrate_halfline, QuadResult};
use crate::special::{ln_gamma_complex, recip_gamma_complex};
use crate::spectrum::OperatorSpec;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::f64::consts::PI;

/// Which representation produced a [`ZetaResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Direct,
    Mellin,
    Subtraction,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::Direct => write!(f, "direct"),
            Route::Mellin => write!(f, "mellin"),
            Route::Subtraction => write!(f, "subtraction"),
        }
    }
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Route::Direct),
            "mellin" => Ok(Route::Mellin),
            "subtraction" => Ok(Route::Subtraction),
            other => Err(Error::domain(format!("unknown zeta route '{other}'"))),
        }
    }
}

/// Tolerances shared by every route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Target absolute tolerance on final quantities (ψ, det).
    pub tol: f64,
    /// Absolute tolerance handed to quadratures.
    pub quad_tol: f64,
    /// Absolute tolerance handed to series summations.
    pub series_tol: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            tol: 1e-8,
            quad_tol: 1e-10,
            series_tol: 1e-10,
        }
    }
}

impl EvalOptions {
    /// Derive internal tolerances from a single target tolerance. No lower
    /// floor: tolerances beyond what f64 quadrature can certify are allowed
    /// to exhaust their budgets and surface as budget errors.
    pub fn with_tol(tol: f64) -> Self {
        let inner = (tol * 1e-2).clamp(1e-300, 1e-6);
        EvalOptions {
            tol,
            quad_tol: inner,
            series_tol: inner,
        }
    }
}

/// One zeta evaluation: argument, value, certified error, route used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaResult {
    pub s: Complex64,
    pub value: Complex64,
    pub abs_error: f64,
    pub route: Route,
}

/// ζ₁′(0) = −ln V₀: the (m, n) = (0, 0) contribution in closed form.
pub fn zeta1_prime0(spec: &OperatorSpec) -> f64 {
    -spec.v0.ln()
}

// ---------------------------------------------------------------------------
// quadrature plumbing for complex integrands with fallible evaluation
// ---------------------------------------------------------------------------

/// Integrate a fallible real integrand over (0, ∞); inner failures are
/// propagated instead of surfacing as non-finite-sample noise.
fn integrate_fallible<F>(f: F, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let res = integrate_halfline(
        |t| match f(t) {
            Ok(v) => v,
            Err(e) => {
                let mut slot = failure.borrow_mut();
                if slot.is_none() {
                    *slot = Some(e);
                }
                f64::NAN
            }
        },
        tol,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    res
}

/// ∫₀^∞ t^{s−1} w(t) dt for a real weight w, as a complex value.
fn mellin_integral<W>(s: Complex64, w: W, tol: f64) -> Result<(Complex64, f64)>
where
    W: Fn(f64) -> Result<f64> + Copy,
{
    let sig = s.re;
    let re = integrate_fallible(
        |t| {
            let v = w(t)?;
            if v == 0.0 {
                return Ok(0.0);
            }
            let ln_t = t.ln();
            Ok(v * ((sig - 1.0) * ln_t).exp() * (s.im * ln_t).cos())
        },
        tol,
    )?;
    if s.im == 0.0 {
        return Ok((Complex64::new(re.value, 0.0), re.abs_error_estimate));
    }
    let im = integrate_fallible(
        |t| {
            let v = w(t)?;
            if v == 0.0 {
                return Ok(0.0);
            }
            let ln_t = t.ln();
            Ok(v * ((sig - 1.0) * ln_t).exp() * (s.im * ln_t).sin())
        },
        tol,
    )?;
    Ok((
        Complex64::new(re.value, im.value),
        re.abs_error_estimate + im.abs_error_estimate,
    ))
}

// ---------------------------------------------------------------------------
// direct route: windowed lattice sum + Euler–Maclaurin tail restoration
// ---------------------------------------------------------------------------

/// ∫_a^∞ (c u² + b)^{−w} du by half-line quadrature of the shifted integrand.
fn quad_power_tail(c: f64, b: f64, w: Complex64, a: f64, tol: f64) -> Result<(Complex64, f64)> {
    let kernel = move |u: f64| (c * u * u + b).ln();
    let re = integrate_halfline(
        move |y| {
            let lg = kernel(a + y);
            (-w.re * lg).exp() * (w.im * lg).cos()
        },
        tol,
    )?;
    if w.im == 0.0 {
        return Ok((Complex64::new(re.value, 0.0), re.abs_error_estimate));
    }
    let im = integrate_halfline(
        move |y| {
            let lg = kernel(a + y);
            -(-w.re * lg).exp() * (w.im * lg).sin()
        },
        tol,
    )?;
    Ok((
        Complex64::new(re.value, im.value),
        re.abs_error_estimate + im.abs_error_estimate,
    ))
}

/// φ′ and φ‴ of φ(u) = (c u² + b)^{−w}.
fn quadform_derivs(c: f64, b: f64, w: Complex64, u: f64) -> (Complex64, Complex64) {
    let g = c * u * u + b;
    let gp = |e: Complex64| (-e * g.ln()).exp(); // g^{-e}
    let phi1 = -2.0 * w * c * u * gp(w + 1.0);
    let phi3 = 12.0 * w * (w + 1.0) * c * c * u * gp(w + 2.0)
        - 8.0 * w * (w + 1.0) * (w + 2.0) * c.powi(3) * u.powi(3) * gp(w + 3.0);
    (phi1, phi3)
}

/// Σ_{j≥0} (c (u₀+j)² + b)^{−w} by midpoint Euler–Maclaurin:
/// ∫_{u₀−1/2}^∞ φ + φ′(u₀−1/2)/24 − (7/5760) φ‴(u₀−1/2).
fn em_tail_quadform(
    c: f64,
    b: f64,
    w: Complex64,
    u0: f64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let a = u0 - 0.5;
    let (integral, qerr) = quad_power_tail(c, b, w, a, tol)?;
    let (phi1, phi3) = quadform_derivs(c, b, w, a);
    let value = integral + phi1 / 24.0 - phi3 * (7.0 / 5760.0);
    let err = qerr + phi3.norm() * (7.0 / 5760.0);
    Ok((value, err))
}

/// Quick a-priori estimate of the Euler–Maclaurin truncation error at u₀.
fn em_bound_estimate(c: f64, b: f64, w: Complex64, u0: f64) -> f64 {
    let (_, phi3) = quadform_derivs(c, b, w, u0 - 0.5);
    phi3.norm() * (7.0 / 5760.0)
}

struct RowSum {
    value: Complex64,
    err: f64,
}

/// One row Σ_{n∈ℤ} (c (n−δ)² + B)^{−s}: explicit window of half-width K
/// around the centre plus two Euler–Maclaurin-restored tails.
fn direct_row(c: f64, big_b: f64, delta: f64, s: Complex64, tol_row: f64) -> Result<RowSum> {
    let n0 = delta.round();
    let mut k = 32u64;
    while k < 4096 {
        let est = em_bound_estimate(c, big_b, s, k as f64 + 0.5)
            + em_bound_estimate(c, big_b, s, k as f64 + 0.5);
        if est <= 0.25 * tol_row {
            break;
        }
        k *= 2;
    }
    let kk = k as i64;
    let mut re = 0.0_f64;
    let mut im = 0.0_f64;
    for j in -kk..=kk {
        let n = n0 + j as f64;
        let u = n - delta;
        let lg = (c * u * u + big_b).ln();
        let mag = (-s.re * lg).exp();
        re += mag * (s.im * lg).cos();
        im -= mag * (s.im * lg).sin();
    }
    let quad_tol = 0.25 * tol_row;
    let u_up = (n0 + kk as f64 + 1.0) - delta;
    let u_dn = delta - (n0 - kk as f64 - 1.0);
    let (up, e_up) = em_tail_quadform(c, big_b, s, u_up, quad_tol)?;
    let (dn, e_dn) = em_tail_quadform(c, big_b, s, u_dn, quad_tol)?;
    Ok(RowSum {
        value: Complex64::new(re, im) + up + dn,
        err: e_up + e_dn + 1e-16 * (2.0 * kk as f64 + 1.0),
    })
}

/// ζ(s) by direct lattice summation, Re(s) > 1.
pub fn zeta_direct(spec: &OperatorSpec, s: Complex64, tol: f64) -> Result<ZetaResult> {
    if !(s.re > 1.0) {
        return Err(Error::DirectSumDiverges { re_s: s.re });
    }
    let c = 4.0 * PI * PI / spec.tau2;
    let chat = 4.0 * PI * PI * spec.tau2;
    let m_outer = (10.0 / spec.tau2).ceil().max(16.0) as i64;
    let tol_row = tol / (4.0 * (m_outer + 2) as f64);

    let ms: Vec<i64> = (0..=m_outer).collect();
    let rows = crate::parallel::try_map_ordered(&ms, |&m| {
        let big_b = chat * (m * m) as f64 + spec.v0;
        let delta = m as f64 * spec.tau1;
        direct_row(c, big_b, delta, s, tol_row)
    })?;

    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (i, row) in rows.iter().enumerate() {
        let weight = if i == 0 { 1.0 } else { 2.0 };
        value += weight * row.value;
        err += weight * row.err;
    }

    // Rows beyond the window: each full row equals the continuous integral
    // √(π/c) Γ(s−1/2)/Γ(s) (ĉ m² + V₀)^{1/2−s} up to a lattice-vs-integral
    // gap that is exponentially small in 2π τ₂ m; m_outer ≥ 10/τ₂ pushes the
    // accumulated gap below 1e−26.
    let w = s - 0.5;
    let gratio = (ln_gamma_complex(w) - ln_gamma_complex(s)).exp();
    let (tail, tail_err) = em_tail_quadform(chat, spec.v0, w, (m_outer + 1) as f64, tol / 8.0)?;
    let pref = 2.0 * (PI / c).sqrt() * gratio;
    value += pref * tail;
    err += pref.norm() * tail_err;
    err += 100.0 * (-(2.0 * PI * spec.tau2 * (m_outer + 1) as f64)).exp();
    err += 1e-15 * value.norm();

    Ok(ZetaResult {
        s,
        value,
        abs_error: err,
        route: Route::Direct,
    })
}

// ---------------------------------------------------------------------------
// mellin route
// ---------------------------------------------------------------------------

/// ζ(s) = (1/Γ(s)) ∫₀^∞ t^{s−1} Θ(t) dt, Re(s) > 1.
pub fn zeta_mellin(spec: &OperatorSpec, s: Complex64, tol: f64) -> Result<ZetaResult> {
    if !(s.re > 1.0) {
        return Err(Error::domain(
            "heat-trace representation requires Re(s) > 1",
        ));
    }
    let inner_tol = (tol * 1e-2).clamp(1e-14, 1e-8);
    let spec = *spec;
    let weight = move |t: f64| -> Result<f64> {
        let local = (inner_tol * (-spec.v0 * t).exp()).max(1e-300);
        Ok(heat_trace(&spec, t, local)?.value)
    };
    let (integral, qerr) = mellin_integral(s, weight, tol * 0.5)?;
    let rg = recip_gamma_complex(s);
    // Pointwise inner error ε(t) ≤ inner_tol e^{−V₀t} integrates to
    // ≤ inner_tol Γ(σ) V₀^{−σ} against t^{σ−1}.
    let sig = s.re;
    let inner_err = inner_tol * crate::special::gamma(sig).unwrap_or(1.0) * spec.v0.powf(-sig);
    let err = (qerr + inner_err) * rg.norm();
    Ok(ZetaResult {
        s,
        value: rg * integral,
        abs_error: err,
        route: Route::Mellin,
    })
}

// ---------------------------------------------------------------------------
// subtraction route (analytic continuation) and the ζ′(0) oracle
// ---------------------------------------------------------------------------

fn remainder_weight(spec: OperatorSpec, inner_tol: f64) -> impl Fn(f64) -> Result<f64> + Copy {
    let t_star = dual_crossover(&spec);
    move |t: f64| -> Result<f64> {
        let shaping = (t / t_star).powi(3).min(1.0);
        let local = (inner_tol * (-spec.v0 * t).exp() * shaping).max(1e-300);
        heat_remainder(&spec, t, local)
    }
}

/// Entire part F(s) = ∫₀^∞ t^{s−1} R(t) dt and its error estimate.
fn subtraction_f(spec: &OperatorSpec, s: Complex64, tol: f64) -> Result<(Complex64, f64)> {
    let inner_tol = (tol * 1e-2).clamp(1e-14, 1e-8);
    let w = remainder_weight(*spec, inner_tol);
    let (value, qerr) = mellin_integral(s, w, tol * 0.5)?;
    Ok((value, qerr + 10.0 * inner_tol))
}

/// ζ(s) = F(s)/Γ(s) + V₀^{1−s}/(4π(s−1)) for any s ≠ 1.
pub fn zeta_subtraction(spec: &OperatorSpec, s: Complex64, tol: f64) -> Result<ZetaResult> {
    if (s - 1.0).norm() < 1e-9 {
        return Err(Error::ZetaPole);
    }
    let (f, ferr) = subtraction_f(spec, s, tol)?;
    let rg = recip_gamma_complex(s);
    let pole_term = ((1.0 - s) * spec.v0.ln()).exp() / (4.0 * PI * (s - 1.0));
    let value = rg * f + pole_term;
    Ok(ZetaResult {
        s,
        value,
        abs_error: ferr * rg.norm() + 1e-15 * value.norm(),
        route: Route::Subtraction,
    })
}

/// Ground-truth ζ′(0) = F(0) + V₀(ln V₀ − 1)/(4π); returns (value, error).
///
/// The closed constant is d/ds of V₀^{1−s}/(4π(s−1)) at s = 0, where the
/// F-part contributes F(0) because (1/Γ)′(0) = 1.
pub fn zeta_prime0_oracle(spec: &OperatorSpec, tol: f64) -> Result<(f64, f64)> {
    let inner_tol = (tol * 1e-2).clamp(1e-14, 1e-8);
    let w = remainder_weight(*spec, inner_tol);
    let q = integrate_fallible(
        |t| {
            let r = w(t)?;
            if r == 0.0 {
                Ok(0.0)
            } else {
                Ok(r / t)
            }
        },
        tol * 0.5,
    )?;
    let value = q.value + spec.v0 * (spec.v0.ln() - 1.0) / (4.0 * PI);
    Ok((value, q.abs_error_estimate + 10.0 * inner_tol))
}

/// Richardson-extrapolated central difference of the subtraction route at
/// s = 0, the independent validation of [`zeta_prime0_oracle`].
pub fn zeta_prime0_finite_difference(spec: &OperatorSpec, tol: f64) -> Result<f64> {
    let d = |h: f64| -> Result<f64> {
        let plus = zeta_subtraction(spec, Complex64::new(h, 0.0), tol)?;
        let minus = zeta_subtraction(spec, Complex64::new(-h, 0.0), tol)?;
        Ok((plus.value.re - minus.value.re) / (2.0 * h))
    };
    let d1 = d(1e-3)?;
    let d2 = d(1e-4)?;
    Ok((100.0 * d2 - d1) / 99.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::make_operator;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    const ZETA2_SQUARE: f64 = 1.003_720_629_008_442_4;
    const ZETA2_HALF: f64 = 1.003_621_975_345_995_7;
    const ZETA15_SQUARE: f64 = 1.035_659_680_242_566_7;
    const ZETA3_SQUARE: f64 = 1.000_070_679_519_994_4;

    #[test]
    fn direct_reference_values() {
        let s = make_operator(0.0, 1.0, 1.0).unwrap();
        let z = zeta_direct(&s, c(2.0), 1e-9).unwrap();
        assert!((z.value.re - ZETA2_SQUARE).abs() <= 1e-9, "{}", z.value.re);
        assert!(z.value.im.abs() <= 1e-12);
        assert!(z.abs_error <= 1e-8);

        let z = zeta_direct(&s, c(1.5), 1e-9).unwrap();
        assert!((z.value.re - ZETA15_SQUARE).abs() <= 1e-8, "{}", z.value.re);
        let z = zeta_direct(&s, c(3.0), 1e-9).unwrap();
        assert!((z.value.re - ZETA3_SQUARE).abs() <= 1e-9, "{}", z.value.re);

        let s = make_operator(0.5, 1.0, 1.0).unwrap();
        let z = zeta_direct(&s, c(2.0), 1e-9).unwrap();
        assert!((z.value.re - ZETA2_HALF).abs() <= 1e-9, "{}", z.value.re);
    }

    #[test]
    fn direct_rejects_divergent_region() {
        let s = make_operator(0.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            zeta_direct(&s, c(1.0), 1e-8),
            Err(Error::DirectSumDiverges { .. })
        ));
        assert!(zeta_direct(&s, c(0.5), 1e-8).is_err());
    }

    #[test]
    fn direct_real_for_real_s_and_reflection_symmetric() {
        let a = make_operator(0.5, 1.0, 1.0).unwrap();
        let b = make_operator(-0.5, 1.0, 1.0).unwrap();
        let za = zeta_direct(&a, c(2.0), 1e-10).unwrap();
        let zb = zeta_direct(&b, c(2.0), 1e-10).unwrap();
        assert!(za.value.im.abs() <= 1e-12);
        assert!((za.value.re - zb.value.re).abs() <= 1e-12);
    }

    #[test]
    fn mellin_matches_direct() {
        for (t1, t2, v0, s) in [
            (0.0, 1.0, 1.0, 2.0),
            (0.3, 2.0, 0.5, 3.0),
            (0.5, 1.2, 0.8, 2.0),
        ] {
            let spec = make_operator(t1, t2, v0).unwrap();
            let zd = zeta_direct(&spec, c(s), 1e-9).unwrap();
            let zm = zeta_mellin(&spec, c(s), 1e-9).unwrap();
            assert!(
                (zd.value.re - zm.value.re).abs() <= 1e-8,
                "spec ({t1},{t2},{v0}) s={s}: {} vs {}",
                zd.value.re,
                zm.value.re
            );
        }
    }

    #[test]
    fn mellin_slow_convergence_region() {
        let spec = make_operator(0.0, 1.0, 1.0).unwrap();
        let zd = zeta_direct(&spec, c(1.2), 1e-9).unwrap();
        let zm = zeta_mellin(&spec, c(1.2), 1e-8).unwrap();
        let allow = (zd.abs_error + zm.abs_error).max(1e-8);
        assert!(
            (zd.value.re - zm.value.re).abs() <= allow,
            "{} vs {} (allow {allow})",
            zd.value.re,
            zm.value.re
        );
    }

    #[test]
    fn subtraction_matches_direct_in_convergent_region() {
        let spec = make_operator(0.0, 1.0, 1.0).unwrap();
        let zs = zeta_subtraction(&spec, c(2.0), 1e-10).unwrap();
        assert!((zs.value.re - ZETA2_SQUARE).abs() <= 1e-9, "{}", zs.value.re);
        let zs = zeta_subtraction(&spec, c(1.5), 1e-10).unwrap();
        assert!((zs.value.re - ZETA15_SQUARE).abs() <= 1e-8, "{}", zs.value.re);
    }

    #[test]
    fn subtraction_at_origin() {
        let spec = make_operator(0.0, 1.0, 1.0).unwrap();
        let z0 = zeta_subtraction(&spec, c(0.0), 1e-11).unwrap();
        let expect = -1.0 / (4.0 * PI);
        assert!((z0.value.re - expect).abs() <= 1e-11, "{}", z0.value.re);
        // Nearby samples drift from ζ(0) by no more than ~h·ζ′(0).
        for h in [1e-4, -1e-4] {
            let z = zeta_subtraction(&spec, c(h), 1e-11).unwrap();
            assert!((z.value.re - expect).abs() <= 2.0 * 1e-4);
        }
    }

    #[test]
    fn subtraction_pole_rejected() {
        let spec = make_operator(0.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            zeta_subtraction(&spec, c(1.0), 1e-8),
            Err(Error::ZetaPole)
        ));
    }

    #[test]
    fn subtraction_smoke_at_half() {
        let spec = make_operator(0.0, 1.0, 1.0).unwrap();
        let coarse = zeta_subtraction(&spec, c(0.5), 1e-8).unwrap();
        let fine = zeta_subtraction(&spec, c(0.5), 1e-11).unwrap();
        assert!((coarse.value.re - fine.value.re).abs() <= 1e-8);
        assert!(fine.abs_error <= 1e-10);
    }

    #[test]
    fn oracle_reference_value() {
        let spec = make_operator(0.0, 1.0, 1.0).unwrap();
        let (v, err) = zeta_prime0_oracle(&spec, 1e-11).unwrap();
        assert!((v - 1.283_625_813_815_507_2).abs() <= 1e-10, "{v}");
        assert!(err <= 1e-9);
    }

    #[test]
    fn oracle_matches_finite_difference() {
        for (t1, t2, v0) in [(0.0, 1.0, 1.0), (0.5, 1.0, 1.0), (0.3, 2.0, 0.5)] {
            let spec = make_operator(t1, t2, v0).unwrap();
            let (v, _) = zeta_prime0_oracle(&spec, 1e-12).unwrap();
            let fd = zeta_prime0_finite_difference(&spec, 1e-12).unwrap();
            assert!((v - fd).abs() <= 1e-6, "spec ({t1},{t2},{v0}): {v} vs {fd}");
        }
    }

    #[test]
    fn oracle_invariances() {
        let (a, _) = zeta_prime0_oracle(&make_operator(0.3, 1.0, 1.0).unwrap(), 1e-12).unwrap();
        let (b, _) = zeta_prime0_oracle(&make_operator(-0.3, 1.0, 1.0).unwrap(), 1e-12).unwrap();
        assert!((a - b).abs() <= 1e-8);
        let (ev, _) = zeta_prime0_oracle(&make_operator(0.0, 1.0, std::f64::consts::E).unwrap(), 1e-12).unwrap();
        assert!((ev - 0.685_619_162_213_109_4).abs() <= 1e-9, "{ev}");
    }

    #[test]
    fn zeta1_closed_form() {
        let s = make_operator(0.0, 1.0, 1.0).unwrap();
        assert_eq!(zeta1_prime0(&s), 0.0);
        let s = make_operator(0.0, 1.0, std::f64::consts::E).unwrap();
        assert!((zeta1_prime0(&s) + 1.0).abs() <= 1e-15);
        let s = make_operator(0.0, 1.0, 0.5).unwrap();
        assert!((zeta1_prime0(&s) - std::f64::consts::LN_2).abs() <= 1e-15);
    }
}
