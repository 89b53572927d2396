use serde::Serialize;

/// Outcome of an exhaustive check: how many cases ran and which failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Sweep {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Sweep {
    pub fn from_results(results: Vec<Option<String>>) -> Self {
        let checked = results.len();
        let failures = results.into_iter().flatten().collect();
        Self { checked, failures }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        match self.failures.first() {
            None => format!("{} cases, all exact", self.checked),
            Some(first) => format!("{} of {} cases failed; first: {first}", self.failures.len(), self.checked),
        }
    }
}
