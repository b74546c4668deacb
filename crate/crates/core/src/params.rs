//! Model parameter vectors shared by the likelihood, sampler, and
//! simulator, plus a small symmetric 2x2 matrix type for the
//! random-effects covariance.

use serde::{Deserialize, Serialize};

use crate::data_model::Covariates;

/// Ages enter all linear predictors centered at this value (years); the
/// cohort design enrolls at ages 65+, so 65 keeps predictors well
/// conditioned. Configurable through the run config.
pub const AGE_CENTER: f64 = 65.0;

/// Symmetric 2x2 matrix stored as its upper triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub m00: f64,
    pub m01: f64,
    pub m11: f64,
}

impl Mat2 {
    pub fn identity() -> Self {
        Self {
            m00: 1.0,
            m01: 0.0,
            m11: 1.0,
        }
    }

    pub fn diag(a: f64, b: f64) -> Self {
        Self {
            m00: a,
            m01: 0.0,
            m11: b,
        }
    }

    pub fn det(&self) -> f64 {
        self.m00 * self.m11 - self.m01 * self.m01
    }

    pub fn is_spd(&self) -> bool {
        self.m00 > 0.0 && self.det() > 0.0
    }

    /// Lower Cholesky factor `(l00, l10, l11)`; `None` if not SPD.
    pub fn cholesky(&self) -> Option<(f64, f64, f64)> {
        if self.m00 <= 0.0 {
            return None;
        }
        let l00 = self.m00.sqrt();
        let l10 = self.m01 / l00;
        let rest = self.m11 - l10 * l10;
        if rest <= 0.0 {
            return None;
        }
        Some((l00, l10, rest.sqrt()))
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det == 0.0 {
            return None;
        }
        Some(Mat2 {
            m00: self.m11 / det,
            m01: -self.m01 / det,
            m11: self.m00 / det,
        })
    }

    /// `v' M v`.
    pub fn quad_form(&self, v: [f64; 2]) -> f64 {
        self.m00 * v[0] * v[0] + 2.0 * self.m01 * v[0] * v[1] + self.m11 * v[1] * v[1]
    }

    pub fn trace(&self) -> f64 {
        self.m00 + self.m11
    }
}

/// Fixed effects of the off-medication trajectory: intercept block and
/// age-slope block, each with education contrasts (HS and more-than-HS
/// against less-than-HS) and a Black vs non-Black contrast.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedEffects {
    pub intercept: f64,
    pub edu_hs: f64,
    pub edu_more_hs: f64,
    pub race_black: f64,
    pub age: f64,
    pub age_edu_hs: f64,
    pub age_edu_more_hs: f64,
    pub age_race_black: f64,
}

impl FixedEffects {
    pub fn zeros() -> Self {
        Self {
            intercept: 0.0,
            edu_hs: 0.0,
            edu_more_hs: 0.0,
            race_black: 0.0,
            age: 0.0,
            age_edu_hs: 0.0,
            age_edu_more_hs: 0.0,
            age_race_black: 0.0,
        }
    }

    /// Covariate-resolved intercept (mg/dL).
    pub fn intercept_part(&self, cov: &Covariates) -> f64 {
        self.intercept
            + self.edu_hs * cov.edu_hs()
            + self.edu_more_hs * cov.edu_more_hs()
            + self.race_black * cov.race_black()
    }

    /// Covariate-resolved age slope (mg/dL per year of centered age).
    pub fn slope_part(&self, cov: &Covariates) -> f64 {
        self.age
            + self.age_edu_hs * cov.edu_hs()
            + self.age_edu_more_hs * cov.edu_more_hs()
            + self.age_race_black * cov.race_black()
    }
}

/// Risk-factor submodel parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LongitudinalParams {
    pub fixed: FixedEffects,
    /// Medication-by-age slope (mg/dL per year of centered age while on
    /// medication).
    pub beta_med: f64,
    /// Skew-normal error scale.
    pub omega: f64,
    /// Skew-normal shape; fixed at 1.5 unless configured for sampling.
    pub nu: f64,
    /// Random-effects covariance (intercept, age slope).
    pub sigma: Mat2,
}

/// Medication-transition submodel parameters. The linear predictor is
/// `(a1 + a2 m) + (a3 + a4 m) age + (a5 + a6 m) exp(-decay*gap)
///  + (a7 + a8 m) g_mu` with `m` the previous status.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedicationParams {
    pub alpha: [f64; 8],
    /// Gap decay rate per year; fixed at 1 unless configured otherwise.
    pub gap_decay_rate: f64,
}

/// Hazard submodel parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HazardParams {
    /// Log baseline hazard intercept.
    pub kappa0: f64,
    /// Spline coefficients, one per basis function.
    pub kappa: Vec<f64>,
    pub beta_edu_hs: f64,
    pub beta_edu_more_hs: f64,
    pub beta_race_black: f64,
    /// Log-hazard effect per mg/dL of the current risk-factor value.
    pub lambda_mu: f64,
    /// Log-hazard effect per year on medication.
    pub lambda_med: f64,
    /// Staleness decay rates per year after the last visit.
    pub rho_mu: f64,
    pub rho_med: f64,
}

impl HazardParams {
    pub fn covariate_effect(&self, cov: &Covariates) -> f64 {
        self.beta_edu_hs * cov.edu_hs()
            + self.beta_edu_more_hs * cov.edu_more_hs()
            + self.beta_race_black * cov.race_black()
    }
}

/// Full parameter vector of the joint model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub longitudinal: LongitudinalParams,
    pub medication: MedicationParams,
    pub hazard: HazardParams,
}

impl Parameters {
    /// All-zero coefficients with unit scales; `n_kappa` spline
    /// coefficients.
    pub fn zeros(n_kappa: usize) -> Self {
        Self {
            longitudinal: LongitudinalParams {
                fixed: FixedEffects::zeros(),
                beta_med: 0.0,
                omega: 1.0,
                nu: 1.5,
                sigma: Mat2::identity(),
            },
            medication: MedicationParams {
                alpha: [0.0; 8],
                gap_decay_rate: 1.0,
            },
            hazard: HazardParams {
                kappa0: 0.0,
                kappa: vec![0.0; n_kappa],
                beta_edu_hs: 0.0,
                beta_edu_more_hs: 0.0,
                beta_race_black: 0.0,
                lambda_mu: 0.0,
                lambda_med: 0.0,
                rho_mu: 0.1,
                rho_med: 0.1,
            },
        }
    }

    /// Reference parameter values for the men's cohort, used as simulator
    /// defaults. Coefficients follow the published posterior means of the
    /// fitted joint model; the spline coefficients and random-effects
    /// covariance are not published and are set to give a rising baseline
    /// hazard with realistic event rates at ages 65-90.
    pub fn men_reference(n_kappa: usize) -> Self {
        let mut kappa = vec![0.0; n_kappa];
        for (d, k) in kappa.iter_mut().enumerate() {
            // Ramp from 0 to 1.2 across the basis.
            *k = if n_kappa > 1 {
                1.2 * d as f64 / (n_kappa - 1) as f64
            } else {
                0.6
            };
        }
        Self {
            longitudinal: LongitudinalParams {
                fixed: FixedEffects {
                    intercept: 159.32,
                    edu_hs: 2.428,
                    edu_more_hs: 0.821,
                    race_black: -0.7191,
                    age: -3.1412,
                    age_edu_hs: 0.8157,
                    age_edu_more_hs: 1.0913,
                    age_race_black: 1.4179,
                },
                beta_med: -1.0119,
                omega: 1.0 / 0.0017,
                nu: 1.5,
                sigma: Mat2::diag(100.0, 1.0),
            },
            medication: MedicationParams {
                alpha: [
                    -1.0330, 5.4180, 0.1414, -0.1482, -0.1850, 1.6337, -0.0053, -0.0124,
                ],
                gap_decay_rate: 1.0,
            },
            hazard: HazardParams {
                kappa0: 1.0,
                kappa,
                beta_edu_hs: 0.2610,
                beta_edu_more_hs: 0.1567,
                beta_race_black: 0.3836,
                lambda_mu: -0.033,
                lambda_med: -0.688,
                rho_mu: 0.1,
                rho_med: 0.1,
            },
        }
    }

    pub fn n_kappa(&self) -> usize {
        self.hazard.kappa.len()
    }

    /// Flattens into `(path, value)` pairs; the order defines the draw
    /// storage and summary layout.
    pub fn flatten(&self, sampled_extras: &SampledExtras) -> Vec<(String, f64)> {
        let l = &self.longitudinal;
        let mut out = vec![
            ("longitudinal.intercept".to_string(), l.fixed.intercept),
            ("longitudinal.edu_hs".to_string(), l.fixed.edu_hs),
            ("longitudinal.edu_more_hs".to_string(), l.fixed.edu_more_hs),
            ("longitudinal.race_black".to_string(), l.fixed.race_black),
            ("longitudinal.age".to_string(), l.fixed.age),
            ("longitudinal.age_edu_hs".to_string(), l.fixed.age_edu_hs),
            (
                "longitudinal.age_edu_more_hs".to_string(),
                l.fixed.age_edu_more_hs,
            ),
            (
                "longitudinal.age_race_black".to_string(),
                l.fixed.age_race_black,
            ),
            ("longitudinal.beta_med".to_string(), l.beta_med),
            ("longitudinal.omega".to_string(), l.omega),
        ];
        if sampled_extras.nu {
            out.push(("longitudinal.nu".to_string(), l.nu));
        }
        for (i, a) in self.medication.alpha.iter().enumerate() {
            out.push((format!("medication.alpha{}", i + 1), *a));
        }
        let h = &self.hazard;
        out.push(("survival.kappa0".to_string(), h.kappa0));
        for (d, k) in h.kappa.iter().enumerate() {
            out.push((format!("survival.kappa{}", d + 1), *k));
        }
        out.push(("survival.beta_edu_hs".to_string(), h.beta_edu_hs));
        out.push(("survival.beta_edu_more_hs".to_string(), h.beta_edu_more_hs));
        out.push(("survival.beta_race_black".to_string(), h.beta_race_black));
        out.push(("survival.lambda_mu".to_string(), h.lambda_mu));
        out.push(("survival.lambda_med".to_string(), h.lambda_med));
        if sampled_extras.rho {
            out.push(("survival.rho_mu".to_string(), h.rho_mu));
            out.push(("survival.rho_med".to_string(), h.rho_med));
        }
        out.push(("random_effects.sigma00".to_string(), l.sigma.m00));
        out.push(("random_effects.sigma01".to_string(), l.sigma.m01));
        out.push(("random_effects.sigma11".to_string(), l.sigma.m11));
        out
    }
}

/// Which optionally-sampled parameters are part of the chain state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledExtras {
    pub nu: bool,
    pub rho: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data_model::{Education, Race, Sex};

    #[test]
    fn mat2_cholesky_round_trip() {
        let m = Mat2 {
            m00: 4.0,
            m01: 1.0,
            m11: 2.0,
        };
        let (l00, l10, l11) = m.cholesky().unwrap();
        assert!((l00 * l00 - m.m00).abs() < 1e-12);
        assert!((l00 * l10 - m.m01).abs() < 1e-12);
        assert!((l10 * l10 + l11 * l11 - m.m11).abs() < 1e-12);
        assert!(!Mat2 {
            m00: 1.0,
            m01: 2.0,
            m11: 1.0
        }
        .is_spd());
    }

    #[test]
    fn mat2_inverse() {
        let m = Mat2 {
            m00: 3.0,
            m01: 0.5,
            m11: 2.0,
        };
        let inv = m.inverse().unwrap();
        assert!((m.m00 * inv.m00 + m.m01 * inv.m01 - 1.0).abs() < 1e-12);
        assert!((m.m00 * inv.m01 + m.m01 * inv.m11).abs() < 1e-12);
        assert!((m.m01 * inv.m01 + m.m11 * inv.m11 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn covariate_parts() {
        let fixed = FixedEffects {
            intercept: 10.0,
            edu_hs: 1.0,
            edu_more_hs: 2.0,
            race_black: 3.0,
            age: -1.0,
            age_edu_hs: 0.1,
            age_edu_more_hs: 0.2,
            age_race_black: 0.3,
        };
        let cov = Covariates {
            sex: Sex::Men,
            education: Education::MoreHs,
            race: Race::Black,
        };
        assert_eq!(fixed.intercept_part(&cov), 15.0);
        assert!((fixed.slope_part(&cov) - (-0.5)).abs() < 1e-15);
    }

    #[test]
    fn flatten_layout_is_stable() {
        let p = Parameters::men_reference(4);
        let flat = p.flatten(&SampledExtras::default());
        assert_eq!(flat[0].0, "longitudinal.intercept");
        assert_eq!(flat[0].1, 159.32);
        let names: Vec<&str> = flat.iter().map(|(n, _)| n.as_str()).collect();
        assert!(names.contains(&"medication.alpha2"));
        assert!(names.contains(&"survival.kappa4"));
        assert!(names.contains(&"survival.lambda_med"));
        assert!(names.contains(&"random_effects.sigma11"));
        assert_eq!(flat.len(), 10 + 8 + 5 + 3 + 2 + 3);
        let with_extras = p.flatten(&SampledExtras { nu: true, rho: true });
        assert_eq!(with_extras.len(), flat.len() + 3);
    }
}
