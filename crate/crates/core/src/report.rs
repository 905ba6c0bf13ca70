use serde::Serialize;

/// One violated law, with the simplex that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: impl Into<String>, witness: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation { law: law.into(), witness: witness.into(), detail: detail.into() });
    }

    pub fn merge(&mut self, prefix: &str, other: ValidationReport) {
        for mut v in other.violations {
            v.law = format!("{prefix}: {}", v.law);
            self.violations.push(v);
        }
    }

    pub fn first_law(&self) -> Option<&str> {
        self.violations.first().map(|v| v.law.as_str())
    }
}
