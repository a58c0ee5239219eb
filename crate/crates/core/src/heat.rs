//! Heat traces Θ(t) = Σ e^{−l_{mn} t}, the 1-D resummation identity
//! Σ e^{−πt(n+v)²} = t^{−1/2} Σ e^{2πinv − πn²/t}, and the subtracted
//! remainder R(t) = Θ(t) − e^{−V₀t}/(4πt) used by the continuation oracle.
//!
//! Resumming the 2-D Gaussian lattice sum in both directions gives
//!
//! ```text
//! Σ_v e^{−b v^T Ω' v} = (π / (b τ₂)) Σ_w e^{−(π²/b) w^T Ω'^{−1} w}
//! ```
//!
//! so for t below the crossover t* = τ₂/(4π) the dual form converges after
//! a handful of terms while the direct form would need ~√(τ₂/t) shells.
//! On the 2-torus the small-t expansion of Θ holds no power corrections
//! beyond 1/(4πt); subtracting that single term leaves R exponentially
//! small at both endpoints.

use crate::error::{Error, Result};
use crate::numerics::SERIES_BUDGET;
use crate::spectrum::{gram_matrix, GramMatrix, OperatorSpec};

/// One evaluated heat-trace sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatTraceSample {
    pub t: f64,
    pub value: f64,
    pub truncation_n: u64,
    pub tail_bound: f64,
}

/// Crossover time below which the dual (resummed) representation is used.
pub fn dual_crossover(spec: &OperatorSpec) -> f64 {
    spec.tau2 / (4.0 * std::f64::consts::PI)
}

/// Σ over v ∈ ℤ² (optionally v ≠ 0) of e^{−b · v^T G v}, by square shells
/// with a Gaussian-comparison tail bound.
///
/// Proven bound: with μ = min eigenvalue of G, the terms beyond shell N sum
/// to at most 8 e^{−bμN²} [(N+1)/(2bμN) + (2bμN)^{−2}].
fn lattice_gaussian_sum(
    g: &GramMatrix,
    b: f64,
    skip_zero: bool,
    tol: f64,
) -> Result<(f64, u64, f64)> {
    let mu = g.min_eigenvalue();
    debug_assert!(mu > 0.0 && b > 0.0);
    let mut sum = if skip_zero { 0.0 } else { 1.0 };
    let mut comp = 0.0_f64;
    let mut points: u64 = 1;
    let mut shell = 0u64;
    loop {
        shell += 1;
        let k = shell as i64;
        // Ring max(|a|, |c|) = k; coordinates here are (n, m) of the form.
        let mut ring = 0.0;
        let mut add = |x: i64, y: i64| {
            let q = g.form(x as f64, y as f64);
            let e = -b * q;
            if e > -745.0 {
                ring += e.exp();
            }
        };
        for x in -k..=k {
            add(x, k);
            add(x, -k);
        }
        for y in (-k + 1)..=(k - 1) {
            add(k, y);
            add(-k, y);
        }
        points += 8 * shell;
        let y = ring - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;

        let n = shell as f64;
        let bmn = 2.0 * b * mu * n;
        let tail = 8.0 * (-b * mu * n * n).exp() * ((n + 1.0) / bmn + 1.0 / (bmn * bmn));
        if tail <= tol {
            return Ok((sum, points, tail));
        }
        if points > SERIES_BUDGET {
            return Err(Error::SeriesBudget {
                best: crate::numerics::SeriesResult {
                    value: sum,
                    terms_used: points,
                    tail_bound: tail,
                },
            });
        }
    }
}

/// Θ(t) = e^{−V₀t} Σ_{m,n} e^{−(4π²t/τ₂) A_{nm}}, within `tol`.
pub fn heat_trace(spec: &OperatorSpec, t: f64, tol: f64) -> Result<HeatTraceSample> {
    if !(t > 0.0) {
        return Err(Error::domain("heat trace requires t > 0"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("heat trace tolerance must be positive"));
    }
    let pref = (-spec.v0 * t).exp();
    let g = gram_matrix(spec);
    let (value, n, tail) = if t >= dual_crossover(spec) {
        let b = 4.0 * std::f64::consts::PI * std::f64::consts::PI * t / spec.tau2;
        let lattice_tol = (tol / pref.max(f64::MIN_POSITIVE)).min(1e300);
        let (s, n, tail) = lattice_gaussian_sum(&g, b, false, lattice_tol)?;
        (pref * s, n, pref * tail)
    } else {
        let dual_pref = pref / (4.0 * std::f64::consts::PI * t);
        let b = spec.tau2 / (4.0 * t);
        let lattice_tol = (tol / dual_pref.max(f64::MIN_POSITIVE)).min(1e300);
        let (s, n, tail) = lattice_gaussian_sum(&g.inverse(), b, false, lattice_tol)?;
        (dual_pref * s, n, dual_pref * tail)
    };
    Ok(HeatTraceSample {
        t,
        value,
        truncation_n: n,
        tail_bound: tail,
    })
}

/// R(t) = Θ(t) − e^{−V₀t}/(4πt).
///
/// Below the crossover the subtraction is carried out inside the dual
/// lattice sum (dropping the dual zero mode), so no cancellation occurs;
/// above it the two terms are comparable and the explicit difference is
/// well conditioned.
pub fn heat_remainder(spec: &OperatorSpec, t: f64, tol: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain("heat remainder requires t > 0"));
    }
    let pref = (-spec.v0 * t).exp();
    if t < dual_crossover(spec) {
        let dual_pref = pref / (4.0 * std::f64::consts::PI * t);
        if dual_pref == 0.0 {
            return Ok(0.0);
        }
        let b = spec.tau2 / (4.0 * t);
        let g = gram_matrix(spec).inverse();
        let lattice_tol = (tol / dual_pref).min(1e300);
        let (s, _, _) = lattice_gaussian_sum(&g, b, true, lattice_tol)?;
        Ok(dual_pref * s)
    } else {
        let theta = heat_trace(spec, t, tol)?;
        Ok(theta.value - pref / (4.0 * std::f64::consts::PI * t))
    }
}

/// Truncated sides of the 1-D resummation identity at parameter (t, v):
/// lhs = Σ_{|n|≤N} e^{−πt(n+v)²}, rhs = t^{−1/2} Σ_{|n|≤N} e^{2πinv − πn²/t}.
///
/// The imaginary parts of the rhs cancel pairwise; the real part is
/// returned and the residue is asserted to be at machine-noise level.
pub fn poisson_lhs_rhs(t: f64, v: f64, n_max: u64) -> Result<(f64, f64)> {
    if !(t > 0.0) {
        return Err(Error::domain("resummation identity requires t > 0"));
    }
    let pi = std::f64::consts::PI;
    let n_max = n_max as i64;
    let mut lhs = 0.0;
    for n in -n_max..=n_max {
        let x = n as f64 + v;
        let e = -pi * t * x * x;
        if e > -745.0 {
            lhs += e.exp();
        }
    }
    let mut rhs_re = 0.0;
    let mut rhs_im = 0.0;
    for n in -n_max..=n_max {
        let nf = n as f64;
        let e = -pi * nf * nf / t;
        if e > -745.0 {
            let w = e.exp();
            let phase = 2.0 * pi * nf * v;
            rhs_re += w * phase.cos();
            rhs_im += w * phase.sin();
        }
    }
    let rhs_im = rhs_im / t.sqrt();
    debug_assert!(
        rhs_im.abs() <= 1e-14 * (1.0 + rhs_re.abs()),
        "imaginary residue {rhs_im}"
    );
    Ok((lhs, rhs_re / t.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::make_operator;

    #[test]
    fn trace_dominant_term_at_large_t() {
        let s = make_operator(0.0, 1.0, 1.0).unwrap();
        let h = heat_trace(&s, 10.0, 1e-14).unwrap();
        let expect = (-10.0_f64).exp();
        assert!((h.value - expect).abs() <= 1e-12 * expect.max(1.0), "{}", h.value);
        assert!(h.value > 0.0);
    }

    #[test]
    fn trace_rejects_bad_t() {
        let s = make_operator(0.0, 1.0, 1.0).unwrap();
        assert!(heat_trace(&s, 0.0, 1e-10).is_err());
        assert!(heat_trace(&s, -1.0, 1e-10).is_err());
    }

    #[test]
    fn direct_equals_dual_at_crossover_scale() {
        // Evaluate both representations explicitly at t = 0.25 for tau = i.
        let s = make_operator(0.0, 1.0, 1.0).unwrap();
        let t = 0.25;
        let g = gram_matrix(&s);
        let b_direct = 4.0 * std::f64::consts::PI * std::f64::consts::PI * t / s.tau2;
        let (direct, _, _) = lattice_gaussian_sum(&g, b_direct, false, 1e-16).unwrap();
        let b_dual = s.tau2 / (4.0 * t);
        let (dual, _, _) = lattice_gaussian_sum(&g.inverse(), b_dual, false, 1e-16).unwrap();
        let dual = dual / (4.0 * std::f64::consts::PI * t);
        assert!((direct - dual).abs() <= 1e-10, "{direct} vs {dual}");
    }

    #[test]
    fn remainder_examples() {
        let s = make_operator(0.0, 1.0, 1.0).unwrap();
        // R(10) = e^{-10} (1 - 1/(40π)) to machine precision: the next
        // lattice term is e^{-40π²} ~ 1e-172.
        let r = heat_remainder(&s, 10.0, 1e-16).unwrap();
        let expect = (-10.0_f64).exp() * (1.0 - 1.0 / (40.0 * std::f64::consts::PI));
        assert!((r - expect).abs() <= 1e-16, "{r} vs {expect}");

        // Exponentially small as t -> 0+.
        let r = heat_remainder(&s, 0.01, 1e-14).unwrap();
        assert!(r.abs() <= 1e-8, "{r}");
        assert!((r - 4.376_683_431_286e-10).abs() <= 1e-15, "{r}");

        // R + subtraction reproduces the trace.
        let t = 0.7;
        let theta = heat_trace(&s, t, 1e-13).unwrap().value;
        let r = heat_remainder(&s, t, 1e-13).unwrap();
        let sub = (-s.v0 * t).exp() / (4.0 * std::f64::consts::PI * t);
        assert!(((r + sub) - theta).abs() <= 1e-13);
    }

    #[test]
    fn poisson_identity_self_dual_point() {
        let (lhs, rhs) = poisson_lhs_rhs(1.0, 0.0, 10).unwrap();
        assert!((lhs - 1.086_434_811_213_308).abs() <= 1e-14, "{lhs}");
        assert!((lhs - rhs).abs() <= 1e-14);
    }

    #[test]
    fn poisson_identity_generic_points() {
        let (lhs, rhs) = poisson_lhs_rhs(4.0, 0.5, 20).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12, "{lhs} vs {rhs}");
        // Integer shifts of v relabel the sum.
        let (l0, r0) = poisson_lhs_rhs(2.0, 0.0, 16).unwrap();
        let (l1, r1) = poisson_lhs_rhs(2.0, 1.0, 17).unwrap();
        assert!((l0 - l1).abs() <= 1e-13);
        assert!((r0 - r1).abs() <= 1e-13);
    }

    #[test]
    fn trace_monotone_decreasing() {
        let s = make_operator(0.3, 1.4, 0.8).unwrap();
        let mut prev = f64::INFINITY;
        for &t in &[0.05, 0.1, 0.3, 0.7, 1.5, 3.0] {
            let v = heat_trace(&s, t, 1e-12).unwrap().value;
            assert!(v < prev, "t = {t}");
            prev = v;
        }
    }

    #[test]
    fn trace_reflection_in_tau1() {
        let a = make_operator(0.6, 1.1, 1.3).unwrap();
        let b = make_operator(-0.6, 1.1, 1.3).unwrap();
        for &t in &[0.05, 0.4, 2.0] {
            let va = heat_trace(&a, t, 1e-13).unwrap().value;
            let vb = heat_trace(&b, t, 1e-13).unwrap().value;
            assert!((va - vb).abs() <= 1e-14 * (1.0 + va.abs()));
        }
    }
}
