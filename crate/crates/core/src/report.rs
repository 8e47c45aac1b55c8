use serde::Serialize;

/// One named residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub passed: bool,
}

/// Per-equation residuals of one verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub title: String,
    pub tolerance: f64,
    pub checks: Vec<Check>,
    /// Values reported alongside the checks (solved soliton functions, curvatures, ...).
    pub values: Vec<(String, f64)>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new(title: impl Into<String>, tolerance: f64) -> Self {
        Self {
            title: title.into(),
            tolerance,
            checks: Vec::new(),
            values: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, residual: f64) {
        let passed = residual.is_finite() && residual.abs() < self.tolerance;
        self.checks.push(Check {
            name: name.into(),
            residual: residual.abs(),
            passed,
        });
    }

    pub fn value(&mut self, name: impl Into<String>, v: f64) {
        self.values.push((name.into(), v));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Absorbs another report's checks, values and notes.
    pub fn merge(&mut self, other: TheoremReport) {
        for c in other.checks {
            self.check(c.name, c.residual);
        }
        self.values.extend(other.values);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn get_value(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn worst(&self) -> Option<&Check> {
        self.checks.iter().max_by(|a, b| a.residual.total_cmp(&b.residual))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Re-evaluates every pass flag against a new tolerance.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        for c in &mut self.checks {
            c.passed = c.residual.is_finite() && c.residual < tol;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_flag_follows_residuals() {
        let mut r = TheoremReport::new("t", 1e-9);
        r.check("a", 1e-12);
        assert!(r.passed());
        r.check("b", -2e-9);
        assert!(!r.passed());
        assert_eq!(r.worst().unwrap().name, "b");
        assert!(r.clone().with_tolerance(1e-8).passed());
        r.check("c", f64::NAN);
        assert!(!r.with_tolerance(1.0).passed());
    }
}
