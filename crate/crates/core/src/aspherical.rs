//! a-points, strong asphericity and asphericity certificates.

use std::fmt;

use crate::algebra::{edge_path_presentation, homology_space, tietze_simplify};
use crate::certificate::{Certificate, Verdict};
use crate::complex::{collapse_to_dimension, face_poset, order_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::poset::{FiniteSpace, Mask};
use crate::qc::theorem34_certificate;
use crate::reduction::{
    homotopically_trivial_certificate, is_contractible_mask, removal_search, trace_from_removals,
    MoveKind, ReductionMove, ReductionTrace, TIETZE_BUDGET,
};
use crate::search::{Budget, SearchOutcome};

fn require_height_at_most_two(x: &FiniteSpace) -> Result<()> {
    if x.is_empty() {
        return Ok(());
    }
    let h = x.height()?;
    if h > 2 {
        return Err(Error::WrongHeight {
            required: "at most 2",
            found: h,
        });
    }
    Ok(())
}

/// Every component of `Ĉ_x` (restricted to `mask`) is contractible.
pub(crate) fn is_a_point_in(x: &FiniteSpace, mask: &Mask, i: usize) -> bool {
    let mut link = x.link_mask(i);
    link.intersect_with(mask);
    x.components_of(&link)
        .iter()
        .all(|c| is_contractible_mask(x, c))
}

/// Points whose link is a disjoint union of contractible spaces.
pub fn a_points(x: &FiniteSpace) -> Vec<String> {
    let full = x.full_mask();
    (0..x.len())
        .filter(|&i| is_a_point_in(x, &full, i))
        .map(|i| x.label(i).to_string())
        .collect()
}

/// `X − x` for an a-point `x` of a space of height at most 2.
pub fn a_reduce(x: &FiniteSpace, point: &str) -> Result<FiniteSpace> {
    require_height_at_most_two(x)?;
    let i = x.index(point)?;
    if !is_a_point_in(x, &x.full_mask(), i) {
        return Err(Error::NotAPoint(point.to_string()));
    }
    x.remove(&[point])
}

/// Searches for a-reductions down to a single point.
///
/// In height at most 2 every link has height at most 1, and a point deleted
/// from a forest of trees leaves a forest of trees; so a-points stay a-points
/// when other points go, and following any one a-point per step decides the
/// question. The empty space counts as reduced.
pub fn is_strong_aspherical(
    x: &FiniteSpace,
    budget: Budget,
) -> Result<SearchOutcome<ReductionTrace>> {
    strong_aspherical_search(x, budget, true)
}

/// Same as [`is_strong_aspherical`] but branching over every a-point.
pub fn is_strong_aspherical_exhaustive(
    x: &FiniteSpace,
    budget: Budget,
) -> Result<SearchOutcome<ReductionTrace>> {
    strong_aspherical_search(x, budget, false)
}

fn strong_aspherical_search(
    x: &FiniteSpace,
    budget: Budget,
    first_only: bool,
) -> Result<SearchOutcome<ReductionTrace>> {
    require_height_at_most_two(x)?;
    if x.is_empty() {
        return Ok(SearchOutcome::Found(ReductionTrace::new(x.clone())));
    }
    Ok(removal_search(x, is_a_point_in, first_only, budget)
        .map(|path| trace_from_removals(x, &path, MoveKind::AReduction)))
}

/// Given a witness that `X` is strong aspherical, decides whether `X − a` is
/// too (`None` if the search ran out of budget).
pub fn theorem36_subspace_check(
    x: &FiniteSpace,
    trace: &ReductionTrace,
    a: &str,
    budget: Budget,
) -> Result<Option<bool>> {
    if &trace.initial != x {
        return Err(Error::InvalidTrace {
            step: 0,
            reason: "trace starts at another space".into(),
        });
    }
    if trace
        .moves
        .iter()
        .any(|m| !matches!(m.kind, MoveKind::AReduction(_)))
    {
        return Err(Error::InvalidTrace {
            step: 0,
            reason: "not an a-reduction trace".into(),
        });
    }
    if trace.replay()?.len() > 1 {
        return Err(Error::InvalidTrace {
            step: trace.moves.len(),
            reason: "trace does not end in a single point".into(),
        });
    }
    Ok(is_strong_aspherical(&x.remove(&[a])?, budget)?.decided())
}

/// Strong asphericity of a complex of dimension at most 2 via its face poset,
/// cross-checked against collapsibility to a 1-dimensional subcomplex.
pub fn strong_aspherical_complex(k: &SimplicialComplex, budget: Budget) -> Result<Certificate> {
    let dim = k.dimension().ok_or(Error::EmptyComplex)?;
    if dim > 2 {
        return Err(Error::WrongDimension {
            required: "at most 2",
            found: dim,
        });
    }
    let poset = face_poset(k)?;
    let sa = is_strong_aspherical(&poset, budget)?;
    let collapse = collapse_to_dimension(k, 1, budget);
    if let (Some(s), Some(c)) = (sa.decided(), collapse.decided()) {
        if s != c {
            return Err(Error::CharacterizationViolated {
                strong_aspherical: s,
                collapses: c,
            });
        }
    }
    let collapse_line = match &collapse {
        SearchOutcome::Found(seq) => {
            format!(
                "K collapses to a 1-dimensional subcomplex in {} step(s)",
                seq.len()
            )
        }
        SearchOutcome::Exhausted => "K does not collapse to a 1-dimensional subcomplex".into(),
        SearchOutcome::Unknown => "collapse search ran out of budget".into(),
    };
    Ok(match sa {
        SearchOutcome::Found(trace) => Certificate::new(Verdict::StrongAspherical, "K")
            .step("the face poset of K a-reduces to a single point (trace attached)")
            .step(collapse_line)
            .with_trace(trace),
        SearchOutcome::Exhausted => Certificate::new(Verdict::NotStrongAspherical, "K")
            .step("every a-reduction sequence of the face poset gets stuck above one point")
            .step(collapse_line),
        SearchOutcome::Unknown => Certificate::new(Verdict::Unknown, "K")
            .step("a-reduction search ran out of budget")
            .step(collapse_line),
    })
}

/// Removes the first a-point in label order until none is left.
fn greedy_a_reduction(x: &FiniteSpace) -> (FiniteSpace, ReductionTrace) {
    let mut trace = ReductionTrace::new(x.clone());
    let mut current = x.clone();
    while current.len() > 1 {
        let full = current.full_mask();
        let Some(i) = (0..current.len()).find(|&i| is_a_point_in(&current, &full, i)) else {
            break;
        };
        let label = current.label(i).to_string();
        trace.moves.push(ReductionMove {
            kind: MoveKind::AReduction(label.clone()),
            size_before: current.len(),
        });
        current = current.remove(&[&label]).expect("label is present");
    }
    (current, trace)
}

enum ComponentVerdict {
    Aspherical(String),
    NonAspherical(String),
    Unknown(String),
}

/// Decides asphericity (componentwise) of a space of height at most 2.
///
/// a-reductions preserve asphericity in both directions, so the space is first
/// a-reduced greedily. Each remaining component is aspherical if it has height
/// at most 1, is contractible, or is acyclic with trivial π1; it is not
/// aspherical if π1 is trivial and `H_2 ≠ 0`, since then `π_2 ≅ H_2` by
/// Hurewicz.
pub fn asphericity_certificate(x: &FiniteSpace, _budget: Budget) -> Result<Certificate> {
    if x.is_empty() {
        return Err(Error::EmptySpace);
    }
    require_height_at_most_two(x)?;
    let (rest, trace) = greedy_a_reduction(x);
    let mut narrative = vec![format!(
        "{} a-reduction(s) in label order leave {} point(s); each preserves asphericity both ways",
        trace.moves.len(),
        rest.len()
    )];
    let mut homology = None;
    let mut presentation = None;
    let mut non_aspherical = false;
    let mut unknown = false;
    for comp in rest.components_of(&rest.full_mask()) {
        let c = rest.induced(&comp);
        let name = format!("component {{{}}}", c.labels().join(","));
        let verdict = if c.height()? <= 1 {
            ComponentVerdict::Aspherical(format!("{name} has height at most 1 (a graph)"))
        } else if is_contractible_mask(&c, &c.full_mask()) {
            ComponentVerdict::Aspherical(format!("{name} is contractible"))
        } else {
            let h = homology_space(&c)?;
            let p = tietze_simplify(
                &edge_path_presentation(&order_complex(&c)?, c.label(0))?,
                TIETZE_BUDGET,
            );
            let v = if !p.is_trivial() {
                ComponentVerdict::Unknown(format!("{name}: pi1 not shown trivial ({p})"))
            } else if h.betti(2) != 0 {
                ComponentVerdict::NonAspherical(format!(
                    "{name}: pi1 is trivial and H_2 = Z^{}, so pi2 is nonzero (Hurewicz)",
                    h.betti(2)
                ))
            } else {
                ComponentVerdict::Aspherical(format!(
                    "{name}: pi1 is trivial and H_2 = 0, so it is weakly contractible"
                ))
            };
            if homology.is_none() || matches!(v, ComponentVerdict::NonAspherical(_)) {
                homology = Some(h);
                presentation = Some(p);
            }
            v
        };
        match verdict {
            ComponentVerdict::Aspherical(s) => narrative.push(s),
            ComponentVerdict::NonAspherical(s) => {
                narrative.push(s);
                non_aspherical = true;
            }
            ComponentVerdict::Unknown(s) => {
                narrative.push(s);
                unknown = true;
            }
        }
    }
    let verdict = if non_aspherical {
        narrative.push("so X is not aspherical".into());
        Verdict::NonAspherical
    } else if unknown {
        Verdict::Unknown
    } else {
        narrative.push("every component is aspherical, hence so is X".into());
        Verdict::Aspherical
    };
    let mut cert = Certificate::new(verdict, "X").with_trace(trace);
    cert.narrative = narrative;
    cert.homology = homology;
    cert.presentation = presentation;
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhiteheadConclusion {
    /// Premises hold and `X − a` is aspherical.
    Satisfied,
    /// Some premise fails or cannot be established.
    NotApplicable,
    /// Premises hold but asphericity of `X − a` was not decided.
    Unknown,
    /// Premises hold and `X − a` is provably not aspherical.
    Counterexample,
}

impl fmt::Display for WhiteheadConclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WhiteheadConclusion::Satisfied => "instance satisfies the conjecture",
            WhiteheadConclusion::NotApplicable => "conjecture does not apply to this instance",
            WhiteheadConclusion::Unknown => "UNKNOWN",
            WhiteheadConclusion::Counterexample => "instance contradicts the conjecture",
        })
    }
}

/// Premises and verdicts for one instance of the asphericity conjecture for
/// height-2 spaces.
#[derive(Debug, Clone)]
pub struct WhiteheadReport {
    pub point: String,
    pub height_two: bool,
    pub maximal: bool,
    pub complement_connected: bool,
    pub triviality: Option<Certificate>,
    pub qc: Option<Certificate>,
    pub complement: Option<Certificate>,
    pub conclusion: WhiteheadConclusion,
}

impl WhiteheadReport {
    /// Verdict on `X − a`, if one was reached.
    pub fn verdict(&self) -> Verdict {
        for c in [&self.qc, &self.complement].into_iter().flatten() {
            if c.verdict != Verdict::Unknown {
                return c.verdict;
            }
        }
        Verdict::Unknown
    }
}

impl fmt::Display for WhiteheadReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let a = &self.point;
        writeln!(f, "premises:")?;
        writeln!(f, "  height 2: {}", yes(self.height_two))?;
        writeln!(f, "  {a} maximal: {}", yes(self.maximal))?;
        writeln!(f, "  X - {a} connected: {}", yes(self.complement_connected))?;
        if let Some(c) = &self.triviality {
            writeln!(f, "  X homotopically trivial: {}", c.verdict)?;
        }
        if let Some(c) = &self.qc {
            writeln!(f, "qc certificate for X - {a}: {}", c.verdict)?;
        }
        if let Some(c) = &self.complement {
            writeln!(f, "asphericity of X - {a}: {}", c.verdict)?;
        }
        writeln!(f, "X - {a}: {}", self.verdict())?;
        writeln!(f, "conclusion: {}", self.conclusion)?;
        for (title, c) in [
            ("homotopy triviality of X", &self.triviality),
            ("qc certificate", &self.qc),
            ("asphericity certificate", &self.complement),
        ] {
            if let Some(c) = c {
                writeln!(f, "--- {title}")?;
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// Checks the premises of the conjecture on `(X, a)` and tries to decide
/// asphericity of `X − a`. Premise failures are part of the report.
pub fn whitehead_check(x: &FiniteSpace, a: &str, budget: Budget) -> Result<WhiteheadReport> {
    let i = x.index(a)?;
    let height = x.height()?;
    let complement = x.remove(&[a])?;
    let mut report = WhiteheadReport {
        point: a.to_string(),
        height_two: height == 2,
        maximal: x.is_maximal(i),
        complement_connected: !complement.is_empty() && complement.is_connected(),
        triviality: None,
        qc: None,
        complement: None,
        conclusion: WhiteheadConclusion::NotApplicable,
    };
    if height <= 2 && !complement.is_empty() {
        report.complement = Some(asphericity_certificate(&complement, budget)?);
    }
    if !(report.height_two && report.maximal && report.complement_connected) {
        return Ok(report);
    }
    let trivial = homotopically_trivial_certificate(x, budget)?;
    let verdict = trivial.verdict;
    report.triviality = Some(trivial);
    if verdict == Verdict::NotTrivial {
        return Ok(report);
    }
    report.qc = Some(theorem34_certificate(x, a, budget)?);
    report.conclusion = match (verdict.is_homotopically_trivial(), report.verdict()) {
        (true, Verdict::Aspherical) => WhiteheadConclusion::Satisfied,
        (true, Verdict::NonAspherical) => WhiteheadConclusion::Counterexample,
        _ => WhiteheadConclusion::Unknown,
    };
    Ok(report)
}
