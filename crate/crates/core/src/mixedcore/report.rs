use serde::Serialize;

/// One sample on which an identity did not hold, with the nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub seed_index: usize,
    pub residual_printed: String,
}

/// Outcome of checking one identity on a batch of samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub samples: usize,
    pub failures: Vec<Failure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedReport {
    pub b_squared: IdentityReport,
    #[serde(rename = "B_squared")]
    pub big_b_squared: IdentityReport,
    pub anticommutator: IdentityReport,
    pub parity: IdentityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UConnectionReport {
    pub connection: IdentityReport,
    pub linearity: IdentityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakMorphismReport {
    pub commutes_with_b: IdentityReport,
    #[serde(rename = "commutes_with_B")]
    pub commutes_with_big_b: IdentityReport,
    pub homotopy: IdentityReport,
}

/// Anything made of identity reports.
pub trait Reports {
    fn identities(&self) -> Vec<&IdentityReport>;

    fn passed(&self) -> bool {
        self.identities().iter().all(|r| r.passed())
    }
}

impl Reports for MixedReport {
    fn identities(&self) -> Vec<&IdentityReport> {
        vec![&self.b_squared, &self.big_b_squared, &self.anticommutator, &self.parity]
    }
}

impl Reports for UConnectionReport {
    fn identities(&self) -> Vec<&IdentityReport> {
        vec![&self.connection, &self.linearity]
    }
}

impl Reports for WeakMorphismReport {
    fn identities(&self) -> Vec<&IdentityReport> {
        vec![&self.commutes_with_b, &self.commutes_with_big_b, &self.homotopy]
    }
}
