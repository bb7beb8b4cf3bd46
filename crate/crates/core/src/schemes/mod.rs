//! Scheme identities and rule constructors.
//!
//! Average-row coefficients of the second-order rules are transcribed from
//! the fully discrete update formulas; derivative rows that those formulas
//! leave implicit are derived from the underlying semi-discrete
//! constructions (DG weak form, FR nodal collocation) composed through the
//! same time integrator.

mod cgks;
mod dg;
mod fr;
mod grp;
mod ops;
mod s2o4;

pub use fr::{correction_function, CorrectionFunction, CorrectionKind};
pub use grp::grp_step;

use crate::error::{CoreError, Result};
use crate::rule::TwoMomentRule;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cgks,
    Grp,
    Dg,
    Fr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeIntegrator {
    Rk2,
    S1o2,
    S2o4,
}

/// A scheme identity: family x time integrator x (FR-only) correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchemeId {
    pub family: Family,
    pub time_integrator: TimeIntegrator,
    pub correction: Option<CorrectionKind>,
}

impl SchemeId {
    pub const CGKS_RK2: SchemeId = SchemeId {
        family: Family::Cgks,
        time_integrator: TimeIntegrator::Rk2,
        correction: None,
    };
    pub const CGKS_S1O2: SchemeId = SchemeId {
        family: Family::Cgks,
        time_integrator: TimeIntegrator::S1o2,
        correction: None,
    };
    pub const CGKS_S2O4: SchemeId = SchemeId {
        family: Family::Cgks,
        time_integrator: TimeIntegrator::S2o4,
        correction: None,
    };
    pub const GRP: SchemeId = SchemeId {
        family: Family::Grp,
        time_integrator: TimeIntegrator::S1o2,
        correction: None,
    };
    pub const DG_RK2: SchemeId = SchemeId {
        family: Family::Dg,
        time_integrator: TimeIntegrator::Rk2,
        correction: None,
    };
    pub const DG_S1O2: SchemeId = SchemeId {
        family: Family::Dg,
        time_integrator: TimeIntegrator::S1o2,
        correction: None,
    };
    pub const FR_RK2_RADAU: SchemeId = SchemeId {
        family: Family::Fr,
        time_integrator: TimeIntegrator::Rk2,
        correction: Some(CorrectionKind::Radau),
    };
    pub const FR_RK2_G2: SchemeId = SchemeId {
        family: Family::Fr,
        time_integrator: TimeIntegrator::Rk2,
        correction: Some(CorrectionKind::G2),
    };

    /// Every shipped scheme.
    pub fn all() -> [SchemeId; 8] {
        [
            Self::CGKS_RK2,
            Self::CGKS_S1O2,
            Self::CGKS_S2O4,
            Self::GRP,
            Self::DG_RK2,
            Self::DG_S1O2,
            Self::FR_RK2_RADAU,
            Self::FR_RK2_G2,
        ]
    }

    /// The six schemes with known second-order truncation polynomials.
    pub fn second_order() -> [SchemeId; 6] {
        [
            Self::CGKS_RK2,
            Self::CGKS_S1O2,
            Self::DG_RK2,
            Self::DG_S1O2,
            Self::FR_RK2_RADAU,
            Self::FR_RK2_G2,
        ]
    }

    fn validate(self) -> Result<Self> {
        if self.correction.is_some() && self.family != Family::Fr {
            return Err(CoreError::UnsupportedScheme(
                "correction functions only apply to FR".into(),
            ));
        }
        match (self.family, self.time_integrator) {
            (Family::Fr, TimeIntegrator::Rk2) if self.correction.is_some() => Ok(self),
            (Family::Fr, _) => Err(CoreError::UnsupportedScheme(
                "FR is only built with RK2 and a named correction function".into(),
            )),
            (Family::Cgks, _) => Ok(self),
            (Family::Grp, TimeIntegrator::S1o2) => Ok(self),
            (Family::Grp, _) => Err(CoreError::UnsupportedScheme(
                "the GRP solver is a one-stage second-order method".into(),
            )),
            (Family::Dg, TimeIntegrator::S2o4) => Err(CoreError::UnsupportedScheme(
                "no stencil-level fourth-order DG construction is available".into(),
            )),
            (Family::Dg, _) => Ok(self),
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.time_integrator, self.correction) {
            (Family::Grp, _, _) => write!(f, "grp"),
            (Family::Cgks, TimeIntegrator::Rk2, _) => write!(f, "cgks-rk2"),
            (Family::Cgks, TimeIntegrator::S1o2, _) => write!(f, "cgks-s1o2"),
            (Family::Cgks, TimeIntegrator::S2o4, _) => write!(f, "cgks-s2o4"),
            (Family::Dg, TimeIntegrator::Rk2, _) => write!(f, "dg-rk2"),
            (Family::Dg, TimeIntegrator::S1o2, _) => write!(f, "dg-s1o2"),
            (Family::Dg, TimeIntegrator::S2o4, _) => write!(f, "dg-s2o4"),
            (Family::Fr, _, Some(CorrectionKind::Radau)) => write!(f, "fr-rk2-radau"),
            (Family::Fr, _, Some(CorrectionKind::G2)) => write!(f, "fr-rk2-g2"),
            (Family::Fr, _, None) => write!(f, "fr-rk2"),
        }
    }
}

impl FromStr for SchemeId {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cgks-rk2" => Ok(Self::CGKS_RK2),
            "cgks-s1o2" => Ok(Self::CGKS_S1O2),
            "cgks-s2o4" => Ok(Self::CGKS_S2O4),
            "grp" => Ok(Self::GRP),
            "dg-rk2" => Ok(Self::DG_RK2),
            "dg-s1o2" => Ok(Self::DG_S1O2),
            "fr-rk2-radau" => Ok(Self::FR_RK2_RADAU),
            "fr-rk2-g2" => Ok(Self::FR_RK2_G2),
            other => Err(CoreError::UnknownScheme(other.into())),
        }
    }
}

/// Construct the exact rational rule for a scheme identity.
pub fn build_rule(id: SchemeId) -> Result<TwoMomentRule> {
    let id = id.validate()?;
    match (id.family, id.time_integrator) {
        (Family::Cgks, TimeIntegrator::Rk2) => Ok(cgks::rk2()),
        (Family::Cgks, TimeIntegrator::S1o2) => Ok(cgks::s1o2()),
        (Family::Cgks, TimeIntegrator::S2o4) => Ok(s2o4::build()),
        // identical to CGKS-S1O2 at second-order spatial accuracy; the
        // procedural grp_step is the independent route
        (Family::Grp, _) => Ok(grp::rule()),
        (Family::Dg, TimeIntegrator::Rk2) => Ok(dg::rk2()),
        (Family::Dg, TimeIntegrator::S1o2) => Ok(dg::s1o2()),
        (Family::Dg, TimeIntegrator::S2o4) => unreachable!("rejected by validate"),
        (Family::Fr, _) => fr::build(id.correction.expect("validated")),
    }
}

/// Convenience: build the fourth-order compact rule.
pub fn build_s2o4_rule() -> TwoMomentRule {
    s2o4::build()
}
