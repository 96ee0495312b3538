use std::fmt;

use num_bigint::BigUint;

/// How a p-rank or count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Naive,
    DigitDp,
    ClosedForm,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::DigitDp => "digit_dp",
            Method::ClosedForm => "closed_form",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of a p-rank computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PRankReport {
    pub gamma: BigUint,
    pub genus: Option<BigUint>,
    pub method: Method,
    pub supersingular: Option<bool>,
    pub notes: Vec<String>,
}

impl PRankReport {
    pub fn new(gamma: BigUint, method: Method) -> Self {
        PRankReport {
            gamma,
            genus: None,
            method,
            supersingular: None,
            notes: Vec::new(),
        }
    }

    pub fn with_genus(mut self, genus: impl Into<BigUint>) -> Self {
        self.genus = Some(genus.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub(crate) fn rational(method: Method) -> Self {
        PRankReport::new(BigUint::ZERO, method)
            .with_genus(0u32)
            .with_note("rational curve")
    }
}
