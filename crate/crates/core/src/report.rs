//! Check results and scenario reports, with text and JSON emitters.

use std::fmt::{self, Write as _};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unverified,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unverified => "UNVERIFIED",
        })
    }
}

/// How far an equality was established: exactly, or through `h^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certified {
    Exact,
    Order(usize),
}

impl fmt::Display for Certified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certified::Exact => write!(f, "exact"),
            Certified::Order(k) => write!(f, "order {k}"),
        }
    }
}

impl Serialize for Certified {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Certified::Exact => s.serialize_str("exact"),
            Certified::Order(k) => s.serialize_u64(*k as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Certified {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Certified;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"exact\" or an integer order")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Certified, E> {
                if v == "exact" {
                    Ok(Certified::Exact)
                } else {
                    Err(E::custom(format!("unknown certification `{v}`")))
                }
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Certified, E> {
                Ok(Certified::Order(v as usize))
            }
        }
        d.deserialize_any(V)
    }
}

/// Outcome of one verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub certified: Certified,
    /// Lowest `h`-order at which a residual was found.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conventions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, certified: Certified) -> CheckReport {
        CheckReport {
            name: name.into(),
            status: Status::Pass,
            certified,
            failing_order: None,
            witness: None,
            conventions: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> CheckReport {
        CheckReport {
            status: Status::Fail,
            witness: Some(witness.into()),
            ..CheckReport::pass(name, Certified::Exact)
        }
    }

    pub fn unverified(name: impl Into<String>, note: impl Into<String>) -> CheckReport {
        CheckReport {
            status: Status::Unverified,
            notes: vec![note.into()],
            ..CheckReport::pass(name, Certified::Exact)
        }
    }

    /// Fail with a residual whose lowest nonvanishing order is `k`.
    pub fn fail_at(name: impl Into<String>, k: usize, witness: impl Into<String>) -> CheckReport {
        CheckReport {
            failing_order: Some(k),
            certified: if k == 0 { Certified::Exact } else { Certified::Order(k - 1) },
            ..CheckReport::fail(name, witness)
        }
    }

    pub fn with_convention(mut self, c: impl Into<String>) -> CheckReport {
        self.conventions.push(c.into());
        self
    }

    pub fn with_conventions<I: IntoIterator<Item = String>>(mut self, cs: I) -> CheckReport {
        self.conventions.extend(cs);
        self
    }

    pub fn with_note(mut self, n: impl Into<String>) -> CheckReport {
        self.notes.push(n.into());
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> CheckReport {
        self.name = name.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// The `CHECK ...` line of the text format.
    pub fn headline(&self) -> String {
        let mut s = format!("CHECK {}: {}", self.name, self.status);
        match self.status {
            Status::Pass => {
                let _ = write!(s, " [{}]", self.certified);
            }
            Status::Fail => {
                if let Some(k) = self.failing_order {
                    let _ = write!(s, " [order {k}]");
                }
            }
            Status::Unverified => {}
        }
        if let Some(w) = &self.witness {
            let _ = write!(s, " (witness: {w})");
        }
        s
    }
}

/// Combine sub-checks into one pass/fail verdict; unverified parts do not fail.
pub fn overall(checks: &[CheckReport]) -> Status {
    if checks.iter().any(CheckReport::failed) {
        Status::Fail
    } else {
        Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub order: usize,
    pub status: Status,
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

impl Report {
    /// Builds a report; checks are sorted by name.
    pub fn new(scenario: impl Into<String>, seed: u64, order: usize, mut checks: Vec<CheckReport>) -> Report {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            scenario: scenario.into(),
            seed,
            order,
            status: overall(&checks),
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "SCENARIO {} (seed {}, order {})", self.scenario, self.seed, self.order);
        for c in &self.checks {
            let _ = writeln!(out, "{}", c.headline());
            for conv in &c.conventions {
                let _ = writeln!(out, "  convention: {conv}");
            }
            for n in &c.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        let _ = writeln!(out, "OVERALL: {}", self.status);
        out
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}
