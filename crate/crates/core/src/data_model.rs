//! Domain types, validation, and CSV ingestion for longitudinal cohorts.
//!
//! The on-disk format is one CSV row per visit:
//!
//! ```text
//! id,sex,education,race,age,y,med,event_time,event_indicator
//! ```
//!
//! with `sex` in `{men,women}`, `education` in `{less_hs,hs,more_hs}`,
//! `race` in `{black,non_black}`, `age` an integer, `y` a float (may be
//! empty), `med` in `{0,1,NA}`, and `event_time`/`event_indicator`
//! repeated on every row of a subject. UTF-8, header required.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_AGE: u32 = 40;
pub const MAX_AGE: u32 = 110;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sex {
    Men,
    Women,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Education {
    LessHs,
    Hs,
    MoreHs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Race {
    Black,
    NonBlack,
}

/// Tri-state medication status at a visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MedStatus {
    On,
    Off,
    Missing,
}

impl MedStatus {
    pub fn is_missing(self) -> bool {
        matches!(self, MedStatus::Missing)
    }

    /// `Some(true)` when on, `Some(false)` when off, `None` when missing.
    pub fn as_bool(self) -> Option<bool> {
        match self {
            MedStatus::On => Some(true),
            MedStatus::Off => Some(false),
            MedStatus::Missing => None,
        }
    }

    pub fn from_bool(on: bool) -> Self {
        if on {
            MedStatus::On
        } else {
            MedStatus::Off
        }
    }
}

/// Baseline covariates of a subject.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Covariates {
    pub sex: Sex,
    pub education: Education,
    pub race: Race,
}

impl Covariates {
    pub fn edu_hs(&self) -> f64 {
        (self.education == Education::Hs) as u8 as f64
    }

    pub fn edu_more_hs(&self) -> f64 {
        (self.education == Education::MoreHs) as u8 as f64
    }

    pub fn race_black(&self) -> f64 {
        (self.race == Race::Black) as u8 as f64
    }
}

/// One examination visit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Visit {
    /// Integer age at last birthday.
    pub age: u32,
    /// Risk-factor level in mg/dL, when measured.
    pub y: Option<f64>,
    pub med: MedStatus,
}

/// One participant: covariates, visit sequence, and event outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subject {
    pub id: String,
    pub covariates: Covariates,
    pub visits: Vec<Visit>,
    /// Observed event or censoring age (continuous).
    pub event_time: f64,
    /// True when the event was observed, false when censored.
    pub event_indicator: bool,
}

impl Subject {
    pub fn first_visit_age(&self) -> u32 {
        self.visits.first().expect("subject has visits").age
    }

    pub fn last_visit_age(&self) -> u32 {
        self.visits.last().expect("subject has visits").age
    }

    pub fn n_visits(&self) -> usize {
        self.visits.len()
    }
}

/// A set of subjects fit together.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cohort {
    pub label: String,
    pub subjects: Vec<Subject>,
}

impl Cohort {
    pub fn new(label: impl Into<String>, subjects: Vec<Subject>) -> Self {
        Self {
            label: label.into(),
            subjects,
        }
    }

    pub fn len(&self) -> usize {
        self.subjects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subjects.is_empty()
    }

    /// Subjects of one sex only, preserving order.
    pub fn filter_sex(&self, sex: Sex) -> Cohort {
        Cohort {
            label: self.label.clone(),
            subjects: self
                .subjects
                .iter()
                .filter(|s| s.covariates.sex == sex)
                .cloned()
                .collect(),
        }
    }
}

/// Severity of a validation finding; errors block fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub severity: Severity,
    /// Empty for cohort-level findings.
    pub subject: String,
    pub rule: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        if self.subject.is_empty() {
            write!(f, "{sev}: {}", self.rule)
        } else {
            write!(f, "{sev}: subject {}: {}", self.subject, self.rule)
        }
    }
}

/// Exhaustive invariant report; errors block fitting, warnings do not.
pub fn validate(cohort: &Cohort) -> Vec<Finding> {
    let mut findings = Vec::new();
    let error = |subject: &str, rule: String| Finding {
        severity: Severity::Error,
        subject: subject.to_string(),
        rule,
    };
    let warn = |subject: &str, rule: String| Finding {
        severity: Severity::Warning,
        subject: subject.to_string(),
        rule,
    };
    if cohort.subjects.is_empty() {
        findings.push(error("", "no subjects".to_string()));
        return findings;
    }
    let mut seen = std::collections::HashSet::new();
    for s in &cohort.subjects {
        if !seen.insert(&s.id) {
            findings.push(error(&s.id, "duplicate subject id".to_string()));
        }
        if s.visits.is_empty() {
            findings.push(error(&s.id, "no visits".to_string()));
            continue;
        }
        for pair in s.visits.windows(2) {
            if pair[1].age <= pair[0].age {
                findings.push(error(
                    &s.id,
                    format!("non-increasing ages ({} then {})", pair[0].age, pair[1].age),
                ));
            }
        }
        for v in &s.visits {
            if v.age < MIN_AGE || v.age > MAX_AGE {
                findings.push(error(
                    &s.id,
                    format!("visit age {} outside [{MIN_AGE}, {MAX_AGE}]", v.age),
                ));
            }
            if let Some(y) = v.y {
                if !y.is_finite() {
                    findings.push(error(&s.id, format!("non-finite y at age {}", v.age)));
                }
            }
        }
        if !s.event_time.is_finite() {
            findings.push(error(&s.id, "non-finite event time".to_string()));
        } else if s.event_time < s.last_visit_age() as f64 {
            findings.push(error(
                &s.id,
                format!(
                    "event time {} before last visit age {}",
                    s.event_time,
                    s.last_visit_age()
                ),
            ));
        }
        if s.visits.iter().all(|v| v.med.is_missing()) {
            findings.push(warn(&s.id, "all medication statuses missing".to_string()));
        } else {
            if s.visits[0].med.is_missing() {
                findings.push(warn(
                    &s.id,
                    "medication status missing at first visit; imputed from the \
                     marginal of the medication model"
                        .to_string(),
                ));
            }
            if s.visits[s.visits.len() - 1].med.is_missing() {
                findings.push(warn(
                    &s.id,
                    "medication status missing at last visit; imputed symmetrically"
                        .to_string(),
                ));
            }
        }
    }
    findings
}

/// Returns the first blocking error in `findings`, if any.
pub fn first_error(findings: &[Finding]) -> Option<&Finding> {
    findings.iter().find(|f| f.severity == Severity::Error)
}

const HEADER: [&str; 9] = [
    "id",
    "sex",
    "education",
    "race",
    "age",
    "y",
    "med",
    "event_time",
    "event_indicator",
];

/// Loads and validates a cohort from the CSV layout described in the
/// module docs. The cohort label is the file stem.
pub fn load_cohort(path: impl AsRef<Path>) -> Result<Cohort> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "cohort".to_string());
    read_cohort(file, label)
}

/// Reads a cohort from any reader; used by [`load_cohort`] and tests.
pub fn read_cohort(reader: impl Read, label: impl Into<String>) -> Result<Cohort> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(reader);

    {
        let headers = csv.headers()?;
        let got: Vec<&str> = headers.iter().collect();
        if got != HEADER {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "expected header `{}`, got `{}`",
                    HEADER.join(","),
                    got.join(",")
                ),
            });
        }
    }

    let mut order: Vec<String> = Vec::new();
    let mut partial: std::collections::HashMap<String, Subject> =
        std::collections::HashMap::new();

    for record in csv.records() {
        let record = record?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        let field = |i: usize| record.get(i).unwrap_or("").trim();
        let parse_err = |message: String| Error::Parse { line, message };

        let id = field(0).to_string();
        if id.is_empty() {
            return Err(parse_err("empty id".to_string()));
        }
        let sex = match field(1) {
            "men" => Sex::Men,
            "women" => Sex::Women,
            other => return Err(parse_err(format!("invalid sex `{other}`"))),
        };
        let education = match field(2) {
            "less_hs" => Education::LessHs,
            "hs" => Education::Hs,
            "more_hs" => Education::MoreHs,
            other => return Err(parse_err(format!("invalid education `{other}`"))),
        };
        let race = match field(3) {
            "black" => Race::Black,
            "non_black" => Race::NonBlack,
            other => return Err(parse_err(format!("invalid race `{other}`"))),
        };
        let age: u32 = field(4)
            .parse()
            .map_err(|_| parse_err(format!("invalid age `{}`", field(4))))?;
        let y = match field(5) {
            "" => None,
            raw => Some(
                raw.parse::<f64>()
                    .map_err(|_| parse_err(format!("invalid y `{raw}`")))?,
            ),
        };
        let med = match field(6) {
            "0" => MedStatus::Off,
            "1" => MedStatus::On,
            "NA" => MedStatus::Missing,
            other => {
                return Err(parse_err(format!("invalid med `{other}` (want 0, 1, or NA)")))
            }
        };
        let event_time: f64 = field(7)
            .parse()
            .map_err(|_| parse_err(format!("invalid event_time `{}`", field(7))))?;
        let event_indicator = match field(8) {
            "0" => false,
            "1" => true,
            other => {
                return Err(parse_err(format!("invalid event_indicator `{other}`")));
            }
        };

        let covariates = Covariates {
            sex,
            education,
            race,
        };
        let visit = Visit { age, y, med };
        match partial.get_mut(&id) {
            None => {
                order.push(id.clone());
                partial.insert(
                    id.clone(),
                    Subject {
                        id,
                        covariates,
                        visits: vec![visit],
                        event_time,
                        event_indicator,
                    },
                );
            }
            Some(subject) => {
                if subject.covariates != covariates {
                    return Err(Error::invariant(&id, "inconsistent covariates across rows"));
                }
                if subject.event_time != event_time
                    || subject.event_indicator != event_indicator
                {
                    return Err(Error::invariant(
                        &id,
                        "inconsistent event_time/event_indicator across rows",
                    ));
                }
                subject.visits.push(visit);
            }
        }
    }

    let subjects = order
        .into_iter()
        .map(|id| partial.remove(&id).expect("id recorded"))
        .collect();
    let cohort = Cohort::new(label, subjects);
    let findings = validate(&cohort);
    if let Some(err) = first_error(&findings) {
        if err.subject.is_empty() {
            return Err(Error::Domain(err.rule.clone()));
        }
        return Err(Error::invariant(&err.subject, &err.rule));
    }
    Ok(cohort)
}

/// Writes the canonical CSV form of a cohort.
pub fn save_cohort(cohort: &Cohort, path: impl AsRef<Path>) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(cohort_to_csv(cohort).as_bytes())?;
    Ok(())
}

/// Canonical CSV encoding: one row per visit, `\n` line endings, floats
/// in shortest round-trip form.
pub fn cohort_to_csv(cohort: &Cohort) -> String {
    let mut out = String::new();
    out.push_str(&HEADER.join(","));
    out.push('\n');
    for s in &cohort.subjects {
        let sex = match s.covariates.sex {
            Sex::Men => "men",
            Sex::Women => "women",
        };
        let education = match s.covariates.education {
            Education::LessHs => "less_hs",
            Education::Hs => "hs",
            Education::MoreHs => "more_hs",
        };
        let race = match s.covariates.race {
            Race::Black => "black",
            Race::NonBlack => "non_black",
        };
        for v in &s.visits {
            let y = v.y.map(|y| y.to_string()).unwrap_or_default();
            let med = match v.med {
                MedStatus::Off => "0",
                MedStatus::On => "1",
                MedStatus::Missing => "NA",
            };
            out.push_str(&format!(
                "{},{sex},{education},{race},{},{y},{med},{},{}\n",
                s.id,
                v.age,
                s.event_time,
                u8::from(s.event_indicator)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_csv() -> &'static str {
        "id,sex,education,race,age,y,med,event_time,event_indicator\n\
         s1,men,less_hs,non_black,65,210.5,1,72.5,1\n\
         s1,men,less_hs,non_black,67,190,1,72.5,1\n\
         s1,men,less_hs,non_black,69,185.25,0,72.5,1\n"
    }

    #[test]
    fn parses_one_subject() {
        let cohort = read_cohort(sample_csv().as_bytes(), "t").unwrap();
        assert_eq!(cohort.len(), 1);
        let s = &cohort.subjects[0];
        assert_eq!(s.n_visits(), 3);
        assert_eq!(s.visits[0].age, 65);
        assert_eq!(s.visits[2].med, MedStatus::Off);
        assert_eq!(s.event_time, 72.5);
        assert!(s.event_indicator);
    }

    #[test]
    fn na_med_becomes_missing() {
        let csv = "id,sex,education,race,age,y,med,event_time,event_indicator\n\
                   s1,women,hs,black,65,200,1,70,0\n\
                   s1,women,hs,black,67,195,NA,70,0\n\
                   s1,women,hs,black,69,190,0,70,0\n";
        let cohort = read_cohort(csv.as_bytes(), "t").unwrap();
        assert_eq!(cohort.subjects[0].visits[1].med, MedStatus::Missing);
    }

    #[test]
    fn non_increasing_ages_is_an_error() {
        let csv = "id,sex,education,race,age,y,med,event_time,event_indicator\n\
                   s1,men,hs,black,65,200,1,70,0\n\
                   s1,men,hs,black,65,195,1,70,0\n";
        let err = read_cohort(csv.as_bytes(), "t").unwrap_err();
        assert!(err.to_string().contains("non-increasing ages"), "{err}");
        assert!(err.to_string().contains("s1"));
    }

    #[test]
    fn event_before_last_visit_is_an_error() {
        let csv = "id,sex,education,race,age,y,med,event_time,event_indicator\n\
                   s1,men,hs,black,65,200,1,64.0,1\n";
        let err = read_cohort(csv.as_bytes(), "t").unwrap_err();
        assert!(err.to_string().contains("before last visit age"), "{err}");
    }

    #[test]
    fn empty_cohort_is_an_error() {
        let csv = "id,sex,education,race,age,y,med,event_time,event_indicator\n";
        let err = read_cohort(csv.as_bytes(), "t").unwrap_err();
        assert!(err.to_string().contains("no subjects"), "{err}");
    }

    #[test]
    fn parse_error_carries_line_number() {
        let csv = "id,sex,education,race,age,y,med,event_time,event_indicator\n\
                   s1,men,hs,black,65,200,1,70,0\n\
                   s1,men,hs,black,sixty,200,1,70,0\n";
        match read_cohort(csv.as_bytes(), "t").unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("age"));
            }
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn missing_first_status_warns_but_loads() {
        let csv = "id,sex,education,race,age,y,med,event_time,event_indicator\n\
                   s1,men,hs,black,65,200,NA,70,0\n\
                   s1,men,hs,black,67,195,1,70,0\n";
        let cohort = read_cohort(csv.as_bytes(), "t").unwrap();
        let findings = validate(&cohort);
        assert!(findings
            .iter()
            .any(|f| f.severity == Severity::Warning && f.rule.contains("first visit")));
        assert!(first_error(&findings).is_none());
    }

    #[test]
    fn round_trip_is_byte_identical_for_canonical_input() {
        let cohort = read_cohort(sample_csv().as_bytes(), "t").unwrap();
        let canonical = cohort_to_csv(&cohort);
        let reloaded = read_cohort(canonical.as_bytes(), "t").unwrap();
        assert_eq!(cohort_to_csv(&reloaded), canonical);
        assert_eq!(reloaded, cohort);
    }

    #[test]
    fn sex_filter() {
        let csv = "id,sex,education,race,age,y,med,event_time,event_indicator\n\
                   a,men,hs,black,65,200,1,70,0\n\
                   b,women,hs,black,65,200,1,70,0\n";
        let cohort = read_cohort(csv.as_bytes(), "t").unwrap();
        assert_eq!(cohort.filter_sex(Sex::Women).subjects[0].id, "b");
        assert_eq!(cohort.filter_sex(Sex::Men).len(), 1);
    }

    proptest! {
        /// Fuzzed rows never panic: they either fail to parse or produce
        /// a cohort whose subjects satisfy every invariant.
        #[test]
        fn malformed_rows_never_panic(rows in proptest::collection::vec(".{0,40}", 0..6)) {
            let mut csv = String::from("id,sex,education,race,age,y,med,event_time,event_indicator\n");
            for r in rows {
                csv.push_str(&r.replace('\n', " ").replace('\r', " "));
                csv.push('\n');
            }
            if let Ok(cohort) = read_cohort(csv.as_bytes(), "fuzz") {
                prop_assert!(first_error(&validate(&cohort)).is_none());
                for s in &cohort.subjects {
                    prop_assert!(!s.visits.is_empty());
                    prop_assert!(s.event_time >= s.last_visit_age() as f64);
                    prop_assert!(s.visits.windows(2).all(|w| w[0].age < w[1].age));
                }
            }
        }

        /// Structurally valid random cohorts round-trip exactly.
        #[test]
        fn valid_cohorts_round_trip(
            n_visits in 1usize..5,
            base_age in 55u32..80,
            frac in 0.0f64..5.0,
        ) {
            let visits: Vec<Visit> = (0..n_visits)
                .map(|j| Visit {
                    age: base_age + 2 * j as u32,
                    y: Some(150.0 + j as f64),
                    med: if j % 2 == 0 { MedStatus::On } else { MedStatus::Missing },
                })
                .collect();
            let last = visits.last().unwrap().age as f64;
            let subject = Subject {
                id: "p1".into(),
                covariates: Covariates {
                    sex: Sex::Men,
                    education: Education::MoreHs,
                    race: Race::NonBlack,
                },
                visits,
                event_time: last + frac,
                event_indicator: frac > 2.5,
            };
            let cohort = Cohort::new("rt", vec![subject]);
            let text = cohort_to_csv(&cohort);
            let reloaded = read_cohort(text.as_bytes(), "rt").unwrap();
            prop_assert_eq!(cohort_to_csv(&reloaded), text);
        }
    }
}
