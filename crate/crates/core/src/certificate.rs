use std::fmt;

use crate::algebra::{GroupPresentation, HomologySummary};
use crate::reduction::ReductionTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Contractible,
    Collapsible,
    QcReducible,
    WeakTrivialProved,
    StrongAspherical,
    NotStrongAspherical,
    Aspherical,
    NonAspherical,
    NotTrivial,
    Unknown,
}

impl Verdict {
    pub fn is_definitive(self) -> bool {
        self != Verdict::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Contractible => "CONTRACTIBLE",
            Verdict::Collapsible => "COLLAPSIBLE",
            Verdict::QcReducible => "QC_REDUCIBLE",
            Verdict::WeakTrivialProved => "WEAK_TRIVIAL_PROVED",
            Verdict::StrongAspherical => "STRONG_ASPHERICAL",
            Verdict::NotStrongAspherical => "NOT_STRONG_ASPHERICAL",
            Verdict::Aspherical => "ASPHERICAL",
            Verdict::NonAspherical => "NON_ASPHERICAL",
            Verdict::NotTrivial => "NOT_TRIVIAL",
            Verdict::Unknown => "UNKNOWN",
        }
    }

    /// Verdicts establishing that a space is weakly equivalent to a point.
    pub fn is_homotopically_trivial(self) -> bool {
        matches!(
            self,
            Verdict::Contractible
                | Verdict::Collapsible
                | Verdict::QcReducible
                | Verdict::WeakTrivialProved
        )
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verdict with the evidence that justifies it.
///
/// Every definitive verdict carries either a replayable trace or data that can
/// be recomputed from the subject (homology, a presentation).
#[derive(Debug, Clone)]
pub struct Certificate {
    pub verdict: Verdict,
    pub subject: String,
    pub trace: Option<ReductionTrace>,
    pub homology: Option<HomologySummary>,
    pub presentation: Option<GroupPresentation>,
    /// Proof steps in order, each naming the fact it relies on.
    pub narrative: Vec<String>,
}

impl Certificate {
    pub fn new(verdict: Verdict, subject: impl Into<String>) -> Self {
        Self {
            verdict,
            subject: subject.into(),
            trace: None,
            homology: None,
            presentation: None,
            narrative: Vec::new(),
        }
    }

    pub fn step(mut self, line: impl Into<String>) -> Self {
        self.narrative.push(line.into());
        self
    }

    pub fn with_trace(mut self, trace: ReductionTrace) -> Self {
        self.trace = Some(trace);
        self
    }

    pub fn with_homology(mut self, homology: HomologySummary) -> Self {
        self.homology = Some(homology);
        self
    }

    pub fn with_presentation(mut self, presentation: GroupPresentation) -> Self {
        self.presentation = Some(presentation);
        self
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "subject: {}", self.subject)?;
        for (i, line) in self.narrative.iter().enumerate() {
            writeln!(f, "  {}. {}", i + 1, line)?;
        }
        if let Some(h) = &self.homology {
            writeln!(f, "homology: {}", h.compact())?;
        }
        if let Some(p) = &self.presentation {
            writeln!(f, "pi1: {p}")?;
        }
        if let Some(t) = &self.trace {
            writeln!(f, "trace: {} move(s)", t.moves.len())?;
            for m in &t.moves {
                writeln!(f, "  {m}")?;
            }
        }
        Ok(())
    }
}
