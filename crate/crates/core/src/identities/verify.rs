use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::cplx::Cplx;
use crate::error::{Error, Result};
use crate::gammas::Regime;
use crate::qseries::PrecisionPolicy;

use super::params::{
    EllipticBetaParams, HyperbolicKind, HyperbolicParams, MultiEllipticParams, MultiModifiedParams, UnitCircleBetaParams,
};
use super::{
    elliptic_beta_sides, hyperbolic_sides, multiple_elliptic_sides, multiple_modified_sides, unit_circle_beta_sides, Sides,
};

/// The identities that can be verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    EllipticBeta,
    UnitCircleBeta,
    MultipleElliptic,
    MultipleModified,
    HyperbolicNr,
    HyperbolicAw,
}

impl IdentityId {
    pub const ALL: [IdentityId; 6] = [
        IdentityId::EllipticBeta,
        IdentityId::UnitCircleBeta,
        IdentityId::MultipleElliptic,
        IdentityId::MultipleModified,
        IdentityId::HyperbolicNr,
        IdentityId::HyperbolicAw,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::EllipticBeta => "elliptic-beta",
            IdentityId::UnitCircleBeta => "unit-circle-beta",
            IdentityId::MultipleElliptic => "multiple-elliptic",
            IdentityId::MultipleModified => "multiple-modified",
            IdentityId::HyperbolicNr => "hyperbolic-nr",
            IdentityId::HyperbolicAw => "hyperbolic-aw",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        IdentityId::ALL.iter().copied().find(|id| id.name() == s)
    }
}

/// A parameter record tagged with its identity.
#[derive(Debug, Clone, PartialEq)]
pub enum IdentityParams {
    EllipticBeta(EllipticBetaParams),
    UnitCircleBeta(UnitCircleBetaParams),
    MultipleElliptic(MultiEllipticParams),
    MultipleModified(MultiModifiedParams),
    Hyperbolic(HyperbolicParams),
}

impl IdentityParams {
    pub fn id(&self) -> IdentityId {
        match self {
            IdentityParams::EllipticBeta(_) => IdentityId::EllipticBeta,
            IdentityParams::UnitCircleBeta(_) => IdentityId::UnitCircleBeta,
            IdentityParams::MultipleElliptic(_) => IdentityId::MultipleElliptic,
            IdentityParams::MultipleModified(_) => IdentityId::MultipleModified,
            IdentityParams::Hyperbolic(h) => match h.kind {
                HyperbolicKind::NassrallahRahman => IdentityId::HyperbolicNr,
                HyperbolicKind::AskeyWilson => IdentityId::HyperbolicAw,
            },
        }
    }

    /// Number of integration variables.
    pub fn n(&self) -> usize {
        match self {
            IdentityParams::EllipticBeta(_) | IdentityParams::UnitCircleBeta(_) => 1,
            IdentityParams::MultipleElliptic(p) => p.n,
            IdentityParams::MultipleModified(p) => p.n,
            IdentityParams::Hyperbolic(p) => p.n,
        }
    }

    /// Quasiperiod regime where it applies.
    pub fn regime(&self) -> Option<&'static str> {
        let r = match self {
            IdentityParams::UnitCircleBeta(p) => p.omegas.regime(),
            IdentityParams::MultipleModified(p) => p.omegas.regime(),
            IdentityParams::Hyperbolic(p) => {
                return Some(match p.pair.regime() {
                    crate::gammas::SineRegime::ProductRegime => "product_regime",
                    crate::gammas::SineRegime::RealRatio => "real_ratio",
                })
            }
            _ => return None,
        };
        Some(match r {
            Regime::StrictlyElliptic => "strictly_elliptic",
            Regime::UnitCircle => "unit_circle",
        })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            IdentityParams::EllipticBeta(p) => p.validate(),
            IdentityParams::UnitCircleBeta(p) => p.validate(),
            IdentityParams::MultipleElliptic(p) => p.validate(),
            IdentityParams::MultipleModified(p) => p.validate(),
            IdentityParams::Hyperbolic(p) => p.validate(),
        }
    }

    /// Relative-error threshold: 1e-8 for single elliptic-type integrals in
    /// the strict regime, 1e-6 on the unit circle and for hyperbolic ones,
    /// 1e-4 for the two-fold elliptic and 1e-3 for the other two-fold ones.
    pub fn tolerance(&self) -> f64 {
        let unit = matches!(self.regime(), Some("unit_circle"));
        match (self.id(), self.n()) {
            (IdentityId::EllipticBeta, _) | (IdentityId::MultipleElliptic, 1) => 1e-8,
            (IdentityId::MultipleElliptic, _) => 1e-4,
            (IdentityId::UnitCircleBeta, _) | (IdentityId::MultipleModified, 1) => {
                if unit {
                    1e-6
                } else {
                    1e-8
                }
            }
            (IdentityId::HyperbolicNr | IdentityId::HyperbolicAw, 1) => 1e-6,
            _ => 1e-3,
        }
    }

    /// Quadrature policy used for the left-hand side: the caller's policy for
    /// single integrals; for double integrals the requested tolerance is
    /// relaxed to two decades below the acceptance threshold.
    pub fn quadrature_policy(&self, policy: &PrecisionPolicy) -> PrecisionPolicy {
        if self.n() >= 2 {
            policy.with_quad_rel_tol(policy.quad_rel_tol.max(self.tolerance() * 1e-2))
        } else {
            *policy
        }
    }

    pub fn sides(&self, policy: &PrecisionPolicy) -> Result<Sides> {
        let policy = self.quadrature_policy(policy);
        match self {
            IdentityParams::EllipticBeta(p) => elliptic_beta_sides(p, &policy),
            IdentityParams::UnitCircleBeta(p) => unit_circle_beta_sides(p, &policy),
            IdentityParams::MultipleElliptic(p) => multiple_elliptic_sides(p, &policy),
            IdentityParams::MultipleModified(p) => multiple_modified_sides(p, &policy),
            IdentityParams::Hyperbolic(p) => hyperbolic_sides(p, &policy),
        }
    }
}

/// Error class and message attached to a failed verification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub kind: String,
    pub message: String,
}

/// Outcome of comparing both sides of an identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub identity_id: IdentityId,
    pub n: usize,
    pub regime: Option<&'static str>,
    pub lhs: Option<Cplx>,
    pub rhs: Option<Cplx>,
    pub rel_error: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub evaluations: usize,
    pub panels: usize,
    pub error_estimate: Option<f64>,
    pub wall_time_s: f64,
    pub diagnostic: Option<Diagnostic>,
}

impl VerificationReport {
    /// True when the failure stems from invalid parameters.
    pub fn is_input_error(&self) -> bool {
        self.diagnostic.as_ref().is_some_and(|d| d.kind == "domain" || d.kind == "truncation")
    }
}

/// `|lhs - rhs| / max(|lhs|, |rhs|)`.
pub fn relative_error(lhs: Complex64, rhs: Complex64) -> f64 {
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / scale
    }
}

/// Computes both sides and compares them against [`IdentityParams::tolerance`].
/// Errors never escape: they are recorded in the report's diagnostic.
pub fn verify(params: &IdentityParams, policy: &PrecisionPolicy) -> VerificationReport {
    verify_with_tolerance(params, policy, params.tolerance())
}

/// [`verify`] with an explicit acceptance threshold.
pub fn verify_with_tolerance(params: &IdentityParams, policy: &PrecisionPolicy, tolerance: f64) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport {
        schema: "1",
        identity_id: params.id(),
        n: params.n(),
        regime: params.regime(),
        lhs: None,
        rhs: None,
        rel_error: None,
        tolerance,
        passed: false,
        evaluations: 0,
        panels: 0,
        error_estimate: None,
        wall_time_s: 0.0,
        diagnostic: None,
    };
    let outcome = policy.validate().and_then(|_| params.validate()).and_then(|_| params.sides(policy));
    match outcome {
        Ok(s) => {
            let rel = relative_error(s.lhs, s.rhs);
            report.lhs = Some(s.lhs.into());
            report.rhs = Some(s.rhs.into());
            report.rel_error = Some(rel);
            report.passed = rel <= tolerance;
            report.evaluations = s.quad.evaluations;
            report.panels = s.quad.panels_used;
            report.error_estimate = Some(s.quad.error_estimate);
        }
        Err(e) => {
            if let Error::ToleranceNotMet(best) = &e {
                report.lhs = Some(best.value.into());
                report.evaluations = best.evaluations;
                report.panels = best.panels_used;
                report.error_estimate = Some(best.error_estimate);
            }
            report.diagnostic = Some(Diagnostic { kind: e.kind().to_string(), message: e.to_string() });
        }
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    report
}
