//! Adaptive quadrature on the open half-line and tail-bounded series summation.
//!
//! Every integral in this crate has the shape ∫₀^∞ f(t) dt with f at worst
//! power-law singular at 0 (exponent > −1) and decaying at infinity. The
//! half-line is split at t = 1 and each piece is mapped logarithmically,
//! t = e^∓u, which turns both endpoint behaviours into (at least)
//! exponential decay in u. The transformed pieces are integrated by
//! adaptive Gauss–Kronrod refinement over a dyadically extended sequence
//! of panels.
//!
//! Series are summed through [`sum_tail_bounded`], which requires the caller
//! to supply a proven upper bound on the omitted tail; summation stops as
//! soon as that bound drops below the requested tolerance.

use crate::error::{Error, Result};

/// Hard cap on integrand samples per [`integrate_halfline`] call.
pub const QUAD_BUDGET: u64 = 1_000_000;

/// Hard cap on series terms per [`sum_tail_bounded`] call.
pub const SERIES_BUDGET: u64 = 1_000_000;

/// Outcome of an adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: u64,
}

/// Outcome of a tail-bounded series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: u64,
    pub tail_bound: f64,
}

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule on [-1, 1].
const XGK: [f64; 15] = [
    -0.991455371120813,
    -0.949107912342759,
    -0.864864423359769,
    -0.741531185599394,
    -0.586087235467691,
    -0.405845151377397,
    -0.207784955007898,
    0.0,
    0.207784955007898,
    0.405845151377397,
    0.586087235467691,
    0.741531185599394,
    0.864864423359769,
    0.949107912342759,
    0.991455371120813,
];

const WGK: [f64; 15] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
    0.204432940075298,
    0.190350578064785,
    0.169004726639267,
    0.140653259715525,
    0.104790010322250,
    0.063092092629979,
    0.022935322010529,
];

// 7-point Gauss weights, matching the odd Kronrod nodes.
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss–Kronrod pass over [a, b]: (kronrod value, error estimate,
/// resabs = ∫|f| estimate).
fn gk15<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut fk = [0.0_f64; 15];
    for (i, &x) in XGK.iter().enumerate() {
        let t = mid + half * x;
        let y = f(t)?;
        if !y.is_finite() {
            return Err(Error::NonFiniteSample { at: t });
        }
        fk[i] = y;
    }
    let mut kron = 0.0;
    let mut resabs = 0.0;
    for i in 0..15 {
        kron += WGK[i] * fk[i];
        resabs += WGK[i] * fk[i].abs();
    }
    let mut gauss = 0.0;
    for j in 0..4 {
        // Gauss nodes sit at Kronrod indices 1, 3, 5, 7 (and mirrors).
        gauss += WG[j] * (fk[2 * j + 1] + if j < 3 { fk[13 - 2 * j] } else { 0.0 });
    }
    let kron = kron * half;
    let gauss = gauss * half;
    let resabs = resabs * half.abs();
    // QUADPACK-style sharpened error estimate.
    let diff = (kron - gauss).abs();
    let err = if diff > 0.0 {
        let mut resasc = 0.0;
        let meanv = kron / (b - a);
        for i in 0..15 {
            resasc += WGK[i] * (fk[i] - meanv).abs();
        }
        resasc *= half.abs();
        if resasc > 0.0 {
            resasc * 1.0_f64.min((200.0 * diff / resasc).powf(1.5))
        } else {
            diff
        }
    } else {
        0.0
    };
    Ok((kron, err, resabs))
}

/// Adaptive Gauss–Kronrod on a finite interval: bisect the segment with the
/// largest error estimate until the summed estimate meets `tol`.
fn adaptive_gk<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
    evals: &mut u64,
    budget: u64,
) -> Result<(f64, f64)> {
    #[derive(Debug)]
    struct Seg {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }
    let (v, e, resabs) = gk15(f, a, b)?;
    *evals += 15;
    // Roundoff floor: below ~10ε·∫|f| no f64 error estimate is trustworthy,
    // so such tolerances are unreachable by construction. Fail fast instead
    // of burning the budget on spurious refinement.
    let floor = 10.0 * f64::EPSILON * resabs;
    if tol < floor {
        return Err(Error::QuadBudget {
            best: QuadResult {
                value: v,
                abs_error_estimate: e.max(floor),
                evaluations: *evals,
            },
        });
    }
    let mut segs = vec![Seg {
        a,
        b,
        value: v,
        err: e,
    }];
    loop {
        let total_err: f64 = segs.iter().map(|s| s.err).sum();
        if total_err <= tol {
            break;
        }
        if *evals + 30 > budget {
            let value: f64 = segs.iter().map(|s| s.value).sum();
            return Err(Error::QuadBudget {
                best: QuadResult {
                    value,
                    abs_error_estimate: total_err,
                    evaluations: *evals,
                },
            });
        }
        // Split the worst segment.
        let (idx, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .unwrap();
        let Seg { a, b, value, .. } = segs.swap_remove(idx);
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            // Interval length hit machine resolution; accept its value.
            segs.push(Seg {
                a,
                b,
                value,
                err: 0.0,
            });
            continue;
        }
        for (lo, hi) in [(a, m), (m, b)] {
            let (v, e, _) = gk15(f, lo, hi)?;
            *evals += 15;
            segs.push(Seg {
                a: lo,
                b: hi,
                value: v,
                err: e,
            });
        }
    }
    let value: f64 = segs.iter().map(|s| s.value).sum();
    let err: f64 = segs.iter().map(|s| s.err).sum();
    Ok((value, err))
}

/// Integrate a transformed half-line piece ∫₀^∞ g(u) du where g decays at
/// least exponentially. Panels [0,1], [1,2], [2,4], ... are added until two
/// consecutive panels contribute less than `tol_panel`; the last contribution
/// is kept as a remainder estimate.
fn integrate_transformed<F: FnMut(f64) -> Result<f64>>(
    g: &mut F,
    tol: f64,
    evals: &mut u64,
    budget: u64,
) -> Result<(f64, f64)> {
    let tol_panel = tol / 16.0;
    let mut total = 0.0;
    let mut err = 0.0;
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    let mut small_streak = 0;
    let mut last_contrib = 0.0_f64;
    // u beyond ~700 would overflow/underflow the inverse map e^{±u}.
    while lo < 700.0 {
        let (v, e) = adaptive_gk(g, lo, hi.min(700.0), tol_panel, evals, budget)?;
        total += v;
        err += e;
        last_contrib = v.abs();
        if last_contrib <= tol_panel {
            small_streak += 1;
            if small_streak >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
        lo = hi;
        hi = (hi * 2.0).min(700.0);
        if lo >= 700.0 {
            break;
        }
    }
    // Remainder after the last panel: contributions decay at least
    // geometrically under the doubling scheme, so the last one bounds it.
    err += last_contrib;
    Ok((total, err))
}

/// Adaptive quadrature of ∫₀^∞ f(t) dt with absolute tolerance `tol_abs`.
///
/// The integrand must be continuous on (0, ∞), with at worst a power-law
/// singularity of exponent > −1 at the origin and decay at infinity.
pub fn integrate_halfline<F: Fn(f64) -> f64>(f: F, tol_abs: f64) -> Result<QuadResult> {
    if !(tol_abs > 0.0) {
        return Err(Error::domain("quadrature tolerance must be positive"));
    }
    let mut evals = 0u64;
    // (0, 1]: t = e^{-u}
    let mut g_low = |u: f64| -> Result<f64> {
        let t = (-u).exp();
        if t == 0.0 {
            return Ok(0.0);
        }
        let y = f(t) * t;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteSample { at: t })
        }
    };
    let (v_low, e_low) = integrate_transformed(&mut g_low, 0.5 * tol_abs, &mut evals, QUAD_BUDGET)?;
    // [1, ∞): t = e^{u}
    let mut g_high = |u: f64| -> Result<f64> {
        let t = u.exp();
        let y = f(t) * t;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteSample { at: t })
        }
    };
    let (v_high, e_high) =
        integrate_transformed(&mut g_high, 0.5 * tol_abs, &mut evals, QUAD_BUDGET)?;
    Ok(QuadResult {
        value: v_low + v_high,
        abs_error_estimate: e_low + e_high,
        evaluations: evals.max(1),
    })
}

/// Sum Σ_{k≥1} term(k) until `tail_bound(k)` drops to `tol_abs`, where
/// `tail_bound(k)` is a proven upper bound on the omitted |Σ_{j>k} term(j)|.
///
/// The bound must be monotone decreasing to zero for termination.
pub fn sum_tail_bounded<T, B>(term: T, tail_bound: B, tol_abs: f64) -> Result<SeriesResult>
where
    T: Fn(u64) -> f64,
    B: Fn(u64) -> f64,
{
    if !(tol_abs > 0.0) {
        return Err(Error::domain("series tolerance must be positive"));
    }
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64; // Kahan compensation
    for k in 1..=SERIES_BUDGET {
        let t = term(k);
        if !t.is_finite() {
            return Err(Error::domain(format!("non-finite series term at k = {k}")));
        }
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        let bound = tail_bound(k);
        if bound <= tol_abs {
            return Ok(SeriesResult {
                value: sum,
                terms_used: k,
                tail_bound: bound.max(0.0),
            });
        }
    }
    Err(Error::SeriesBudget {
        best: SeriesResult {
            value: sum,
            terms_used: SERIES_BUDGET,
            tail_bound: tail_bound(SERIES_BUDGET),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_integral_is_one() {
        let q = integrate_halfline(|t| (-t).exp(), 1e-12).unwrap();
        assert!((q.value - 1.0).abs() <= 1e-12, "got {}", q.value);
        assert!(q.abs_error_estimate >= 0.0);
        assert!(q.evaluations >= 1);
    }

    #[test]
    fn gamma_two_is_one() {
        let q = integrate_halfline(|t| t * (-t).exp(), 1e-12).unwrap();
        assert!((q.value - 1.0).abs() <= 1e-12, "got {}", q.value);
    }

    #[test]
    fn bessel_half_integrand() {
        // ∫₀^∞ t^{-1/2} e^{-(1/2)(1/t + t)} dt = 2 K_{1/2}(1) = sqrt(2π)/e
        let expect = 0.922_137_008_895_789_1_f64;
        let q = integrate_halfline(
            |t| (-0.5 * (1.0 / t + t)).exp() / t.sqrt(),
            1e-12,
        )
        .unwrap();
        assert!((q.value - expect).abs() <= 1e-11, "got {}", q.value);
    }

    #[test]
    fn singular_endpoint_power() {
        // ∫₀^∞ t^{-1/2} e^{-t} dt = Γ(1/2) = √π
        let q = integrate_halfline(|t| (-t).exp() / t.sqrt(), 1e-11).unwrap();
        assert!(
            (q.value - std::f64::consts::PI.sqrt()).abs() <= 1e-10,
            "got {}",
            q.value
        );
    }

    #[test]
    fn non_finite_integrand_is_domain_error() {
        let r = integrate_halfline(|t| 1.0 / (t - t), 1e-8);
        assert!(matches!(r, Err(Error::NonFiniteSample { .. })));
    }

    #[test]
    fn bad_tolerance_rejected() {
        assert!(integrate_halfline(|t| (-t).exp(), 0.0).is_err());
        assert!(integrate_halfline(|t| (-t).exp(), -1.0).is_err());
    }

    #[test]
    fn geometric_series() {
        let r = sum_tail_bounded(
            |n| 0.5_f64.powi(n as i32),
            |n| 0.5_f64.powi(n as i32),
            1e-14,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() <= 1e-13, "got {}", r.value);
        assert!(r.tail_bound <= 1e-14);
    }

    #[test]
    fn log_series() {
        // Σ e^{-n}/n = -ln(1 - 1/e)
        let expect = 0.458_675_145_387_081_9_f64;
        let r = sum_tail_bounded(
            |n| (-(n as f64)).exp() / n as f64,
            |n| (-(n as f64)).exp() / (1.0 - (-1.0_f64).exp()),
            1e-13,
        )
        .unwrap();
        assert!((r.value - expect).abs() <= 1e-12, "got {}", r.value);
    }

    #[test]
    fn zero_series_stops_after_one_term() {
        let r = sum_tail_bounded(|_| 0.0, |_| 0.0, 1e-12).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.terms_used, 1);
    }

    #[test]
    fn series_budget_error_carries_partial() {
        let r = sum_tail_bounded(|n| 1.0 / n as f64, |_| 1.0, 1e-12);
        match r {
            Err(Error::SeriesBudget { best }) => {
                assert_eq!(best.terms_used, SERIES_BUDGET);
                assert!(best.value > 1.0);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn summation_is_deterministic() {
        let run = || {
            sum_tail_bounded(
                |n| (-(n as f64) / 3.0).exp() * (n as f64).sin(),
                |n| 2.0 * (-(n as f64) / 3.0).exp(),
                1e-12,
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.terms_used, b.terms_used);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            // Linearity within twice the summed error estimates.
            #[test]
            fn quadrature_is_linear(a in 0.2f64..3.0, b in 0.2f64..3.0,
                                    p in 0.3f64..2.0, q in 0.5f64..2.5) {
                let f = move |t: f64| (-p * t).exp();
                let g = move |t: f64| t * (-q * t).exp();
                let tol = 1e-11;
                let qf = integrate_halfline(f, tol).unwrap();
                let qg = integrate_halfline(g, tol).unwrap();
                let qc = integrate_halfline(move |t| a * f(t) + b * g(t), tol).unwrap();
                let lhs = qc.value;
                let rhs = a * qf.value + b * qg.value;
                let allow = 2.0 * (qc.abs_error_estimate
                    + a.abs() * qf.abs_error_estimate
                    + b.abs() * qg.abs_error_estimate)
                    + 1e-12;
                prop_assert!((lhs - rhs).abs() <= allow,
                             "lhs {lhs} rhs {rhs} allow {allow}");
            }
        }
    }
}
