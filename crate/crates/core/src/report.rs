use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    WindowPass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::WindowPass => "window-pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }

    pub fn ok(self) -> bool {
        matches!(self, Status::Pass | Status::WindowPass)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verified item: which check ran, the rule it instantiates, and its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub rule: String,
    pub status: Status,
    pub witness: Option<String>,
    pub detail: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, rule: impl Into<String>, status: Status) -> Self {
        Check {
            id: id.into(),
            rule: rule.into(),
            status,
            witness: None,
            detail: None,
        }
    }

    /// Pass, or window-pass when the check was window-quantified.
    pub fn passed(id: impl Into<String>, rule: impl Into<String>, windowed: bool) -> Self {
        Self::new(
            id,
            rule,
            if windowed {
                Status::WindowPass
            } else {
                Status::Pass
            },
        )
    }

    pub fn outcome(
        id: impl Into<String>,
        rule: impl Into<String>,
        ok: bool,
        windowed: bool,
    ) -> Self {
        if ok {
            Self::passed(id, rule, windowed)
        } else {
            Self::new(id, rule, Status::Fail)
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Hopf,
    HopfInvertibleS,
    MultiplierHopf,
    RegularMultiplierHopf,
    LeftMHA,
    RightMHA,
    WeakMHA,
    RegularWeakMHA,
    LeftWeakMHA,
    RightWeakMHA,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Hopf => "Hopf",
            Verdict::HopfInvertibleS => "HopfInvertibleS",
            Verdict::MultiplierHopf => "MultiplierHopf",
            Verdict::RegularMultiplierHopf => "RegularMultiplierHopf",
            Verdict::LeftMHA => "LeftMHA",
            Verdict::RightMHA => "RightMHA",
            Verdict::WeakMHA => "WeakMHA",
            Verdict::RegularWeakMHA => "RegularWeakMHA",
            Verdict::LeftWeakMHA => "LeftWeakMHA",
            Verdict::RightWeakMHA => "RightWeakMHA",
            Verdict::Fail => "Fail",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        [
            Verdict::Hopf,
            Verdict::HopfInvertibleS,
            Verdict::MultiplierHopf,
            Verdict::RegularMultiplierHopf,
            Verdict::LeftMHA,
            Verdict::RightMHA,
            Verdict::WeakMHA,
            Verdict::RegularWeakMHA,
            Verdict::LeftWeakMHA,
            Verdict::RightWeakMHA,
            Verdict::Fail,
        ]
        .into_iter()
        .find(|v| v.as_str() == s)
    }

    /// Whether this verdict includes the multiplier Hopf property.
    pub fn is_multiplier_hopf(self) -> bool {
        matches!(
            self,
            Verdict::Hopf
                | Verdict::HopfInvertibleS
                | Verdict::MultiplierHopf
                | Verdict::RegularMultiplierHopf
        )
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    /// Some check was only verified on a finite window.
    pub window_verified: bool,
    pub evidence: Vec<Check>,
    pub notes: Vec<String>,
}

impl Classification {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.evidence.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.evidence.iter().find(|c| c.id == id)
    }
}
