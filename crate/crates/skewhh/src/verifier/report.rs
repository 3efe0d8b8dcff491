//! Suite reports: deterministic JSON (no timing) and a human table (with
//! timing on stderr-independent stdout).

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Uncertified,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(id: impl Into<String>, expected: impl Into<String>) -> Check {
        let e = expected.into();
        Check {
            id: id.into(),
            status: Status::Pass,
            computed: e.clone(),
            expected: e,
            witness: None,
        }
    }

    pub fn of(
        id: impl Into<String>,
        ok: bool,
        expected: impl Into<String>,
        computed: impl Into<String>,
        witness: Option<String>,
    ) -> Check {
        Check {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.into(),
            computed: computed.into(),
            witness: if ok { None } else { witness },
        }
    }

    pub fn uncertified(mut self) -> Check {
        if self.status == Status::Pass {
            self.status = Status::Uncertified;
        }
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub status: Status,
    pub checks: Vec<Check>,
    /// Wall time; shown in the table output only, excluded from JSON so
    /// identical runs give byte-identical reports.
    #[serde(skip)]
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn new(name: impl Into<String>, checks: Vec<Check>) -> SuiteReport {
        let status = if checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if checks.iter().any(|c| c.status == Status::Uncertified) {
            Status::Uncertified
        } else {
            Status::Pass
        };
        SuiteReport {
            name: name.into(),
            status,
            checks,
            wall_ms: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(|s| s.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!(
                "suite {:28} {:12} ({} checks, {} ms)\n",
                s.name,
                format!("{:?}", s.status).to_lowercase(),
                s.checks.len(),
                s.wall_ms
            ));
            for c in &s.checks {
                out.push_str(&format!(
                    "  [{}] {:44} expected {} | computed {}\n",
                    match c.status {
                        Status::Pass => "ok",
                        Status::Fail => "XX",
                        Status::Uncertified => "??",
                    },
                    c.id,
                    c.expected,
                    c.computed
                ));
                if let Some(w) = &c.witness {
                    out.push_str(&format!("       witness: {}\n", w));
                }
            }
        }
        out
    }
}
