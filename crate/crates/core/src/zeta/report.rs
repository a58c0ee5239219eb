//! Determinant routes and the multi-route comparison report.

use super::psi::{psi_closed_form, psi_corrected, psi_paper};
use super::{zeta_prime0_oracle, EvalOptions};
use crate::error::{Error, Result};
use crate::spectrum::OperatorSpec;
use serde::{Deserialize, Serialize};

/// Which ζ′(0) evaluation backs a determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetRoute {
    /// Published folded Bessel-series expression, taken verbatim.
    Paper,
    /// Re-derivation retaining resummation zero modes and phase factors.
    Corrected,
    /// Heat-kernel subtraction continuation.
    Oracle,
}

impl std::fmt::Display for DetRoute {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DetRoute::Paper => write!(f, "paper"),
            DetRoute::Corrected => write!(f, "corrected"),
            DetRoute::Oracle => write!(f, "oracle"),
        }
    }
}

impl std::str::FromStr for DetRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(DetRoute::Paper),
            "corrected" => Ok(DetRoute::Corrected),
            "oracle" => Ok(DetRoute::Oracle),
            other => Err(Error::domain(format!("unknown determinant route '{other}'"))),
        }
    }
}

/// ζ′(0) for one route, with a certified absolute error estimate.
pub fn psi_value(spec: &OperatorSpec, route: DetRoute, opts: &EvalOptions) -> Result<(f64, f64)> {
    match route {
        DetRoute::Paper => {
            let p = psi_paper(spec, opts.series_tol)?;
            Ok((p.total, p.tail_bounds.iter().sum()))
        }
        DetRoute::Corrected => psi_corrected(spec, opts.series_tol),
        DetRoute::Oracle => zeta_prime0_oracle(spec, opts.quad_tol),
    }
}

/// det D₀ = exp(−ζ′(0)) along the requested route.
pub fn determinant(spec: &OperatorSpec, route: DetRoute, opts: &EvalOptions) -> Result<f64> {
    let (psi, _) = psi_value(spec, route, opts)?;
    Ok((-psi).exp())
}

/// Everything [`compare_routes`] measures. Route failures are recorded in
/// `route_errors` and leave the corresponding fields empty rather than
/// aborting the comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetReport {
    pub spec: OperatorSpec,
    pub psi_paper: Option<f64>,
    pub psi_closed: Option<f64>,
    pub psi_corrected: Option<f64>,
    pub psi_oracle: Option<f64>,
    pub det_paper: Option<f64>,
    pub det_corrected: Option<f64>,
    pub det_oracle: Option<f64>,
    pub residual_paper_vs_oracle: Option<f64>,
    pub residual_corrected_vs_oracle: Option<f64>,
    pub err_psi_paper: Option<f64>,
    pub err_psi_closed: Option<f64>,
    pub err_psi_corrected: Option<f64>,
    pub err_psi_oracle: Option<f64>,
    pub route_errors: Vec<String>,
    pub options: EvalOptions,
}

type PsiOutcome = Result<(f64, f64)>;

fn psi_closed_outcome(spec: &OperatorSpec, opts: &EvalOptions) -> PsiOutcome {
    psi_closed_form(spec, opts.series_tol).map(|p| (p.total, p.tail_bounds.iter().sum()))
}

/// Evaluate ψ and det along every route and record the pairwise residuals.
/// No route is declared "right" here; the residual against the subtraction
/// oracle is emitted as a measurement.
pub fn compare_routes(spec: &OperatorSpec, opts: &EvalOptions) -> DetReport {
    #[cfg(feature = "parallel")]
    let (paper, closed, corrected, oracle) = {
        let ((paper, closed), (corrected, oracle)) = rayon::join(
            || {
                rayon::join(
                    || psi_value(spec, DetRoute::Paper, opts),
                    || psi_closed_outcome(spec, opts),
                )
            },
            || {
                rayon::join(
                    || psi_value(spec, DetRoute::Corrected, opts),
                    || psi_value(spec, DetRoute::Oracle, opts),
                )
            },
        );
        (paper, closed, corrected, oracle)
    };
    #[cfg(not(feature = "parallel"))]
    let (paper, closed, corrected, oracle) = (
        psi_value(spec, DetRoute::Paper, opts),
        psi_closed_outcome(spec, opts),
        psi_value(spec, DetRoute::Corrected, opts),
        psi_value(spec, DetRoute::Oracle, opts),
    );

    let mut route_errors = Vec::new();
    let mut unpack = |label: &str, outcome: PsiOutcome| match outcome {
        Ok((v, e)) => (Some(v), Some(e)),
        Err(err) => {
            route_errors.push(format!("{label}: {err}"));
            (None, None)
        }
    };
    let (psi_paper, err_psi_paper) = unpack("paper", paper);
    let (psi_closed, err_psi_closed) = unpack("closed", closed);
    let (psi_corrected, err_psi_corrected) = unpack("corrected", corrected);
    let (psi_oracle, err_psi_oracle) = unpack("oracle", oracle);

    let diff = |a: Option<f64>, b: Option<f64>| match (a, b) {
        (Some(x), Some(y)) => Some((x - y).abs()),
        _ => None,
    };

    DetReport {
        spec: *spec,
        psi_paper,
        psi_closed,
        psi_corrected,
        psi_oracle,
        det_paper: psi_paper.map(|p| (-p).exp()),
        det_corrected: psi_corrected.map(|p| (-p).exp()),
        det_oracle: psi_oracle.map(|p| (-p).exp()),
        residual_paper_vs_oracle: diff(psi_paper, psi_oracle),
        residual_corrected_vs_oracle: diff(psi_corrected, psi_oracle),
        err_psi_paper,
        err_psi_closed,
        err_psi_corrected,
        err_psi_oracle,
        route_errors,
        options: *opts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::make_operator;

    #[test]
    fn determinant_factored_form_identity() {
        // det(paper) = exp(-Ψ) must equal V₀ exp(-(Ψ + ln V₀)) · ... i.e. the
        // factored form V₀ e^{-S} with S the pure series part.
        let spec = make_operator(0.0, 1.0, 1.0).unwrap();
        let opts = EvalOptions::default();
        let d = determinant(&spec, DetRoute::Paper, &opts).unwrap();
        let p = psi_paper(&spec, opts.series_tol).unwrap();
        let factored = spec.v0 * (-(p.total + spec.v0.ln())).exp();
        assert!(
            (d - factored).abs() <= 1e-12 * d.abs(),
            "{d} vs {factored}"
        );
    }

    #[test]
    fn compare_routes_populates_everything() {
        let spec = make_operator(0.5, 1.0, 1.0).unwrap();
        let r = compare_routes(&spec, &EvalOptions::default());
        assert!(r.route_errors.is_empty(), "{:?}", r.route_errors);
        assert!(r.psi_paper.is_some() && r.psi_oracle.is_some());
        assert!(r.residual_corrected_vs_oracle.unwrap() <= 1e-5);
        // residual vs the published formula is data, not a pass/fail.
        assert!(r.residual_paper_vs_oracle.unwrap().is_finite());
        assert!(r.err_psi_paper.unwrap() <= 1e-5);
        assert!(r.err_psi_oracle.unwrap() <= 1e-5);
    }

    #[test]
    fn oracle_vs_corrected_agreement() {
        let spec = make_operator(0.3, 0.8, 4.0).unwrap();
        let r = compare_routes(&spec, &EvalOptions::default());
        assert!(r.residual_corrected_vs_oracle.unwrap() <= 1e-5);
    }

    #[test]
    fn large_offset_determinant() {
        let spec = make_operator(0.0, 1.0, 100.0).unwrap();
        let opts = EvalOptions::default();
        let d = determinant(&spec, DetRoute::Paper, &opts).unwrap();
        let p = psi_paper(&spec, opts.series_tol).unwrap();
        let series = p.psi2 + p.psi3 + p.psi4;
        assert!(series < 3e-4, "series {series}");
        let factored = spec.v0 * (-series).exp();
        assert!((d - factored).abs() <= 1e-9 * d);
    }

    #[test]
    fn route_strings_round_trip() {
        for r in [DetRoute::Paper, DetRoute::Corrected, DetRoute::Oracle] {
            let s = r.to_string();
            let back: DetRoute = s.parse().unwrap();
            assert_eq!(back, r);
        }
        assert!("nonsense".parse::<DetRoute>().is_err());
    }
}
