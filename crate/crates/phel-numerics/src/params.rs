use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Physical parameters of the photon–electron model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Electron mass, also the coupling of the Dirac equation.
    pub omega: f64,
    /// Phase of the contact condition between the photon and electron 1.
    pub theta1: f64,
    /// Phase of the contact condition between the photon and electron 2.
    pub theta2: f64,
    /// Width of the transition layer near the electron–electron collision.
    pub epsilon: f64,
    /// Minimum distance of the initial data from the contact walls.
    pub delta0: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self { omega: 1.0, theta1: 0.0, theta2: 0.0, epsilon: 0.0, delta0: 0.1 }
    }
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega, self.theta1, self.theta2, self.epsilon, self.delta0]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::domain("PhysicalParams", "all parameters must be finite"));
        }
        if self.omega < 0.0 {
            return Err(Error::domain("PhysicalParams", format!("omega = {} must be >= 0", self.omega)));
        }
        if self.epsilon < 0.0 {
            return Err(Error::domain("PhysicalParams", format!("epsilon = {} must be >= 0", self.epsilon)));
        }
        if self.delta0 <= 0.0 {
            return Err(Error::domain("PhysicalParams", format!("delta0 = {} must be > 0", self.delta0)));
        }
        Ok(())
    }
}
