//! qc-reductions of height-2 spaces and the results built on them.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::algebra::homology_space;
use crate::certificate::{Certificate, Verdict};
use crate::error::{Error, Result};
use crate::poset::{FiniteSpace, Mask};
use crate::reduction::{is_contractible_mask, MoveKind, ReductionMove, ReductionTrace};
use crate::search::{Budget, Meter, SearchOutcome};

/// A performed qc-reduction: `a` and `b` replaced by `relative`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QcMove {
    pub a: String,
    pub b: String,
    pub relative: String,
}

/// Which pair each relative replaced.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelativeForest {
    pub children: BTreeMap<String, (String, String)>,
}

impl RelativeForest {
    pub fn from_trace(trace: &ReductionTrace) -> Self {
        let mut forest = Self::default();
        for m in &trace.moves {
            if let MoveKind::Qc { a, b, relative } = &m.kind {
                forest
                    .children
                    .insert(relative.clone(), (a.clone(), b.clone()));
            }
        }
        forest
    }

    /// `x` together with every relative that has `x` below it in the forest.
    pub fn lineage(&self, x: &str) -> BTreeSet<String> {
        let mut out = BTreeSet::from([x.to_string()]);
        loop {
            let before = out.len();
            for (rel, (a, b)) in &self.children {
                if out.contains(a) || out.contains(b) {
                    out.insert(rel.clone());
                }
            }
            if out.len() == before {
                return out;
            }
        }
    }

    /// Original points a relative stands for.
    pub fn leaves(&self, x: &str) -> Vec<String> {
        match self.children.get(x) {
            None => vec![x.to_string()],
            Some((a, b)) => {
                let mut out = self.leaves(a);
                out.extend(self.leaves(b));
                out.sort();
                out
            }
        }
    }
}

/// Successful qc search: the moves and the relatives they introduced.
#[derive(Debug, Clone)]
pub struct QcReduction {
    pub trace: ReductionTrace,
    pub forest: RelativeForest,
}

/// The three equivalent conditions on a pair of maximal points, and whether
/// `H_2(X) = 0` so that the equivalence applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prop25Report {
    pub union_contractible: bool,
    pub intersection_connected: bool,
    pub intersection_contractible: bool,
    pub h2_vanishes: bool,
}

impl Prop25Report {
    pub fn agree(&self) -> bool {
        self.union_contractible == self.intersection_connected
            && self.intersection_connected == self.intersection_contractible
    }
}

impl fmt::Display for Prop25Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "union contractible: {}, intersection nonempty and connected: {}, intersection contractible: {}",
            self.union_contractible, self.intersection_connected, self.intersection_contractible
        )
    }
}

pub fn relative_label(a: &str, b: &str) -> String {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    format!("rel({lo},{hi})")
}

fn require_height_two(x: &FiniteSpace) -> Result<()> {
    let h = x.height()?;
    if h != 2 {
        return Err(Error::WrongHeight {
            required: "2",
            found: h,
        });
    }
    Ok(())
}

fn closed_union(x: &FiniteSpace, a: usize, b: usize) -> Mask {
    let mut m = x.below(a).clone();
    m.union_with(x.below(b));
    m.insert(a);
    m.insert(b);
    m
}

fn maximal_pair(x: &FiniteSpace, a: &str, b: &str) -> Result<(usize, usize)> {
    let (i, j) = (x.index(a)?, x.index(b)?);
    for (k, l) in [(i, a), (j, b)] {
        if !x.is_maximal(k) {
            return Err(Error::NotMaximal(l.to_string()));
        }
    }
    if i == j {
        return Err(Error::NotReducible(a.to_string(), b.to_string()));
    }
    Ok((i, j))
}

fn candidate_pairs(x: &FiniteSpace) -> Vec<(usize, usize)> {
    let mut maxima: Vec<usize> = (0..x.len()).filter(|&i| x.is_maximal(i)).collect();
    maxima.sort_by(|&i, &j| x.label(i).cmp(x.label(j)));
    let mut out = Vec::new();
    for (k, &i) in maxima.iter().enumerate() {
        for &j in &maxima[k + 1..] {
            if is_contractible_mask(x, &closed_union(x, i, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Pairs of maximal points whose closed union `U_a ∪ U_b` is contractible, in
/// lexicographic order.
pub fn qc_candidates(x: &FiniteSpace) -> Result<Vec<(String, String)>> {
    require_height_two(x)?;
    Ok(candidate_pairs(x)
        .into_iter()
        .map(|(i, j)| (x.label(i).to_string(), x.label(j).to_string()))
        .collect())
}

/// Evaluates the three conditions on `(a, b)` by independent computations.
///
/// With `H_2(X) = 0` they must agree and a disagreement is reported as
/// [`Error::Prop25Violation`]; otherwise the report comes back inside
/// [`Error::HypothesisViolated`].
pub fn prop25_check(x: &FiniteSpace, a: &str, b: &str) -> Result<Prop25Report> {
    let h = x.height()?;
    if h > 2 {
        return Err(Error::WrongHeight {
            required: "at most 2",
            found: h,
        });
    }
    let (i, j) = maximal_pair(x, a, b)?;
    let mut meet = x.below(i).clone();
    meet.intersect_with(x.below(j));
    let report = Prop25Report {
        union_contractible: is_contractible_mask(x, &closed_union(x, i, j)),
        intersection_connected: !meet.is_clear() && x.components_of(&meet).len() == 1,
        intersection_contractible: is_contractible_mask(x, &meet),
        h2_vanishes: homology_space(x)?.betti(2) == 0,
    };
    if !report.h2_vanishes {
        return Err(Error::HypothesisViolated(report));
    }
    if !report.agree() {
        return Err(Error::Prop25Violation(report));
    }
    Ok(report)
}

/// Replaces `a`, `b` by a point covering the maximal elements of
/// `(U_a ∪ U_b) − {a, b}`.
pub fn qc_reduce(x: &FiniteSpace, a: &str, b: &str) -> Result<(FiniteSpace, QcMove)> {
    let h = x.height()?;
    if h > 2 {
        return Err(Error::WrongHeight {
            required: "at most 2",
            found: h,
        });
    }
    let (i, j) = maximal_pair(x, a, b)?;
    if !is_contractible_mask(x, &closed_union(x, i, j)) {
        return Err(Error::NotReducible(a.to_string(), b.to_string()));
    }
    let (next, relative) = reduce_unchecked(x, i, j);
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    Ok((
        next,
        QcMove {
            a: a.to_string(),
            b: b.to_string(),
            relative,
        },
    ))
}

fn reduce_unchecked(x: &FiniteSpace, i: usize, j: usize) -> (FiniteSpace, String) {
    let relative = x.fresh_label(&relative_label(x.label(i), x.label(j)));
    let mut under = x.below(i).clone();
    under.union_with(x.below(j));
    let tops = x.extremal_in(&under, crate::poset::Extremum::Max);
    let mut covers: Vec<(String, String)> = x
        .covers()
        .into_iter()
        .filter(|(g, _)| g != x.label(i) && g != x.label(j))
        .collect();
    covers.extend(
        tops.ones()
            .map(|t| (relative.clone(), x.label(t).to_string())),
    );
    let mut elements: Vec<String> = x
        .labels()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, l)| l.clone())
        .collect();
    elements.push(relative.clone());
    let next = FiniteSpace::build(elements, covers).expect("qc-reduction keeps the order acyclic");
    (next, relative)
}

/// State key up to renaming of the maximal points: the down-sets of the
/// maximal points. Non-maximal points are never touched by qc-reductions.
fn qc_key(x: &FiniteSpace) -> Vec<Vec<String>> {
    let mut key: Vec<Vec<String>> = (0..x.len())
        .filter(|&i| x.is_maximal(i))
        .map(|i| x.below(i).ones().map(|k| x.label(k).to_string()).collect())
        .collect();
    key.sort();
    key
}

/// Searches for qc-reductions ending in a space with maximum.
pub fn is_qc_reducible(x: &FiniteSpace, budget: Budget) -> Result<SearchOutcome<QcReduction>> {
    require_height_two(x)?;

    fn go(
        x: &FiniteSpace,
        failed: &mut HashSet<Vec<Vec<String>>>,
        meter: &mut Meter,
        moves: &mut Vec<ReductionMove>,
    ) -> Option<bool> {
        if x.has_maximum() {
            return Some(true);
        }
        let key = qc_key(x);
        if failed.contains(&key) {
            return Some(false);
        }
        if !meter.tick() {
            return None;
        }
        for (i, j) in candidate_pairs(x) {
            let (next, relative) = reduce_unchecked(x, i, j);
            moves.push(ReductionMove {
                kind: MoveKind::Qc {
                    a: x.label(i).to_string(),
                    b: x.label(j).to_string(),
                    relative,
                },
                size_before: x.len(),
            });
            match go(&next, failed, meter, moves) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            moves.pop();
        }
        failed.insert(key);
        Some(false)
    }

    let mut moves = Vec::new();
    let mut meter = Meter::new(budget);
    Ok(match go(x, &mut HashSet::new(), &mut meter, &mut moves) {
        Some(true) => {
            let trace = ReductionTrace {
                initial: x.clone(),
                moves,
            };
            let forest = RelativeForest::from_trace(&trace);
            SearchOutcome::Found(QcReduction { trace, forest })
        }
        Some(false) => SearchOutcome::Exhausted,
        None => SearchOutcome::Unknown,
    })
}

/// Reorders a qc trace so that the moves involving `a` or its relatives come
/// last. Returns the reordered trace and the index where the second phase
/// starts.
pub fn split_phases(
    trace: &ReductionTrace,
    forest: &RelativeForest,
    a: &str,
) -> Result<(ReductionTrace, usize)> {
    let x = &trace.initial;
    let i = x.index(a)?;
    if !x.is_maximal(i) {
        return Err(Error::NotMaximal(a.to_string()));
    }
    trace.replay()?;
    let lineage = forest.lineage(a);
    let (mut first, mut second): (Vec<_>, Vec<_>) = (Vec::new(), Vec::new());
    for m in &trace.moves {
        let MoveKind::Qc { a: p, b: q, .. } = &m.kind else {
            return Err(Error::InvalidTrace {
                step: 0,
                reason: "not a qc-reduction".into(),
            });
        };
        if lineage.contains(p) || lineage.contains(q) {
            second.push(m.kind.clone());
        } else {
            first.push(m.kind.clone());
        }
    }
    let boundary = first.len();
    let n = x.len();
    let moves = first
        .into_iter()
        .chain(second)
        .enumerate()
        .map(|(step, kind)| ReductionMove {
            kind,
            size_before: n - step,
        })
        .collect();
    let reordered = ReductionTrace {
        initial: x.clone(),
        moves,
    };
    let end = reordered.replay()?;
    if !trace.moves.is_empty() && !end.has_maximum() {
        return Err(Error::InvalidTrace {
            step: reordered.moves.len(),
            reason: "reordered trace does not end in a space with maximum".into(),
        });
    }
    Ok((reordered, boundary))
}

/// Abelianized form of the statement that `Û_a → Y − a` is a π1 isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma33Report {
    pub link_connected: bool,
    pub betti1_link: usize,
    pub betti1_complement: usize,
}

impl Lemma33Report {
    pub fn holds(&self) -> bool {
        self.link_connected && self.betti1_link == self.betti1_complement
    }
}

/// Checks connectivity of `Û_a` and `b_1(Û_a) = b_1(Y − a)` for a trace on
/// `Y` all of whose moves involve `a` or its relatives.
pub fn lemma33_check(y: &FiniteSpace, a: &str, trace: &ReductionTrace) -> Result<Lemma33Report> {
    let bad = |s: &str| Error::PreconditionViolated(s.to_string());
    if y.height().ok() != Some(2) {
        return Err(bad("the space must have height 2"));
    }
    if &trace.initial != y {
        return Err(bad("the trace does not start at the given space"));
    }
    let i = y.index(a)?;
    let forest = RelativeForest::from_trace(trace);
    let lineage = forest.lineage(a);
    for m in &trace.moves {
        if !m.removed().iter().any(|p| lineage.contains(*p)) {
            return Err(bad("a move does not involve the point or its relatives"));
        }
    }
    let complement = y.remove(&[a])?;
    if !complement.is_connected() {
        return Err(bad("the complement of the point is disconnected"));
    }
    let link = y.below(i);
    let betti1 = |s: &FiniteSpace| -> Result<usize> {
        if s.is_empty() {
            Ok(0)
        } else {
            Ok(homology_space(s)?.betti(1))
        }
    };
    Ok(Lemma33Report {
        link_connected: !link.is_clear() && y.is_connected_mask(link),
        betti1_link: betti1(&y.induced(link))?,
        betti1_complement: betti1(&complement)?,
    })
}

/// `X − a` is aspherical whenever `X` is a qc-reducible space of height 2.
pub fn theorem34_certificate(x: &FiniteSpace, a: &str, budget: Budget) -> Result<Certificate> {
    require_height_two(x)?;
    let i = x.index(a)?;
    if !x.is_maximal(i) {
        return Err(Error::NotMaximal(a.to_string()));
    }
    if !x.remove(&[a])?.is_connected() {
        return Err(Error::Disconnected);
    }
    let subject = format!("X - {a}");
    match is_qc_reducible(x, budget)? {
        SearchOutcome::Found(qc) => {
            let mut cert = Certificate::new(Verdict::Aspherical, subject)
                .step("X has height 2 and is qc-reducible (trace attached)")
                .step(format!("{a} is maximal and X - {a} is connected"));
            let (_, boundary) = split_phases(&qc.trace, &qc.forest, a)?;
            cert = cert.step(format!(
                "the reductions split into {boundary} move(s) avoiding {a} followed by {} involving {a} or its relatives",
                qc.trace.moves.len() - boundary
            ));
            Ok(cert
                .step(format!(
                    "hence X - {a} is aspherical (qc-reducible spaces of height 2)"
                ))
                .with_trace(qc.trace))
        }
        SearchOutcome::Exhausted => Ok(Certificate::new(Verdict::Unknown, subject)
            .step("X is not qc-reducible, so the qc theorem does not apply")),
        SearchOutcome::Unknown => {
            Ok(Certificate::new(Verdict::Unknown, subject).step("qc search ran out of budget"))
        }
    }
}
