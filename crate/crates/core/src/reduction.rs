//! Homotopy-preserving point removals: beat points and cores, weak points and
//! collapsibility, and the homotopy-triviality certificate ladder.

use std::collections::HashSet;
use std::fmt;

use crate::algebra::{edge_path_presentation, homology_space, tietze_simplify};
use crate::certificate::{Certificate, Verdict};
use crate::complex::order_complex;
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::poset::{FiniteSpace, Mask};
use crate::search::{Budget, Meter, SearchOutcome};

/// Move budget handed to the Tietze simplifier by the certificates.
pub const TIETZE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeatKind {
    Down,
    Up,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveKind {
    BeatDown(String),
    BeatUp(String),
    Weak(String),
    Qc {
        a: String,
        b: String,
        relative: String,
    },
    AReduction(String),
}

/// One step of a reduction; `size_before` is the number of points of the
/// space the move is applied to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMove {
    pub kind: MoveKind,
    pub size_before: usize,
}

impl ReductionMove {
    /// Labels taken out of the space by this move.
    pub fn removed(&self) -> Vec<&str> {
        match &self.kind {
            MoveKind::BeatDown(x)
            | MoveKind::BeatUp(x)
            | MoveKind::Weak(x)
            | MoveKind::AReduction(x) => vec![x.as_str()],
            MoveKind::Qc { a, b, .. } => vec![a.as_str(), b.as_str()],
        }
    }
}

impl fmt::Display for ReductionMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.size_before)?;
        match &self.kind {
            MoveKind::BeatDown(x) => write!(f, "beat-down {x}"),
            MoveKind::BeatUp(x) => write!(f, "beat-up {x}"),
            MoveKind::Weak(x) => write!(f, "weak {x}"),
            MoveKind::Qc { a, b, relative } => write!(f, "qc {a} {b} {relative}"),
            MoveKind::AReduction(x) => write!(f, "a-reduction {x}"),
        }
    }
}

/// A replayable sequence of moves starting from `initial`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub initial: FiniteSpace,
    pub moves: Vec<ReductionMove>,
}

impl ReductionTrace {
    pub fn new(initial: FiniteSpace) -> Self {
        Self {
            initial,
            moves: Vec::new(),
        }
    }

    /// Replays every move, checking its precondition, and returns the final space.
    pub fn replay(&self) -> Result<FiniteSpace> {
        let mut space = self.initial.clone();
        for (step, m) in self.moves.iter().enumerate() {
            space = apply_move(&space, m).map_err(|e| match e {
                Error::InvalidTrace { reason, .. } => Error::InvalidTrace { step, reason },
                other => Error::InvalidTrace {
                    step,
                    reason: other.to_string(),
                },
            })?;
        }
        Ok(space)
    }
}

/// Applies one move after checking that it is legal on `space`.
pub fn apply_move(space: &FiniteSpace, m: &ReductionMove) -> Result<FiniteSpace> {
    let invalid = |reason: String| Error::InvalidTrace { step: 0, reason };
    if m.size_before != space.len() {
        return Err(invalid(format!(
            "space has {} points, move expects {}",
            space.len(),
            m.size_before
        )));
    }
    let full = space.full_mask();
    match &m.kind {
        MoveKind::BeatDown(x) => {
            let i = space.index(x)?;
            if !is_down_beat(space, &full, i) {
                return Err(invalid(format!("{x} is not a down beat point")));
            }
            space.remove(&[x])
        }
        MoveKind::BeatUp(x) => {
            let i = space.index(x)?;
            if !is_up_beat(space, &full, i) {
                return Err(invalid(format!("{x} is not an up beat point")));
            }
            space.remove(&[x])
        }
        MoveKind::Weak(x) => {
            let i = space.index(x)?;
            if !is_weak_point_in(space, &full, i) {
                return Err(invalid(format!("{x} is not a weak point")));
            }
            space.remove(&[x])
        }
        MoveKind::AReduction(x) => crate::aspherical::a_reduce(space, x),
        MoveKind::Qc { a, b, relative } => {
            let (next, mv) = crate::qc::qc_reduce(space, a, b)?;
            if &mv.relative != relative {
                return Err(invalid(format!(
                    "relative of ({a}, {b}) is {}, trace says {relative}",
                    mv.relative
                )));
            }
            Ok(next)
        }
    }
}

pub(crate) fn is_down_beat(x: &FiniteSpace, mask: &Mask, i: usize) -> bool {
    let mut below = x.below(i).clone();
    below.intersect_with(mask);
    !below.is_clear() && x.maximum_in(&below).is_some()
}

pub(crate) fn is_up_beat(x: &FiniteSpace, mask: &Mask, i: usize) -> bool {
    let mut above = x.above(i).clone();
    above.intersect_with(mask);
    !above.is_clear() && x.minimum_in(&above).is_some()
}

/// Removes beat points (first in label order, repeatedly) from the subspace on
/// `mask` and returns the surviving mask with the removals made.
pub(crate) fn core_mask(x: &FiniteSpace, mask: &Mask) -> (Mask, Vec<(usize, BeatKind)>) {
    let mut alive = mask.clone();
    let mut removed = Vec::new();
    'outer: loop {
        for i in alive.ones() {
            let kind = if is_down_beat(x, &alive, i) {
                Some(BeatKind::Down)
            } else if is_up_beat(x, &alive, i) {
                Some(BeatKind::Up)
            } else {
                None
            };
            if let Some(kind) = kind {
                alive.set(i, false);
                removed.push((i, kind));
                continue 'outer;
            }
        }
        return (alive, removed);
    }
}

pub(crate) fn is_contractible_mask(x: &FiniteSpace, mask: &Mask) -> bool {
    !mask.is_clear() && core_mask(x, mask).0.count_ones(..) == 1
}

pub(crate) fn is_weak_point_in(x: &FiniteSpace, mask: &Mask, i: usize) -> bool {
    let mut link = x.link_mask(i);
    link.intersect_with(mask);
    is_contractible_mask(x, &link)
}

/// All beat points with their kind; a point that is both appears twice.
pub fn beat_points(x: &FiniteSpace) -> Vec<(String, BeatKind)> {
    let full = x.full_mask();
    let mut out = Vec::new();
    for i in 0..x.len() {
        if is_down_beat(x, &full, i) {
            out.push((x.label(i).to_string(), BeatKind::Down));
        }
        if is_up_beat(x, &full, i) {
            out.push((x.label(i).to_string(), BeatKind::Up));
        }
    }
    out
}

/// Stong core: removes the first beat point in label order until none is left.
pub fn core(x: &FiniteSpace) -> Result<(FiniteSpace, ReductionTrace)> {
    if x.is_empty() {
        return Err(Error::EmptySpace);
    }
    let (alive, removed) = core_mask(x, &x.full_mask());
    let mut trace = ReductionTrace::new(x.clone());
    for (step, (i, kind)) in removed.into_iter().enumerate() {
        let label = x.label(i).to_string();
        trace.moves.push(ReductionMove {
            kind: match kind {
                BeatKind::Down => MoveKind::BeatDown(label),
                BeatKind::Up => MoveKind::BeatUp(label),
            },
            size_before: x.len() - step,
        });
    }
    Ok((x.induced(&alive), trace))
}

/// Complete decision of contractibility: the core is a single point.
pub fn is_contractible(x: &FiniteSpace) -> Result<bool> {
    if x.is_empty() {
        return Err(Error::EmptySpace);
    }
    Ok(is_contractible_mask(x, &x.full_mask()))
}

/// Points whose link `Ĉ_x` is contractible.
pub fn weak_points(x: &FiniteSpace) -> Vec<String> {
    let full = x.full_mask();
    (0..x.len())
        .filter(|&i| is_weak_point_in(x, &full, i))
        .map(|i| x.label(i).to_string())
        .collect()
}

/// Points with `Û_x` or `F̂_x` contractible; agrees with [`weak_points`].
pub fn weak_points_by_halves(x: &FiniteSpace) -> Vec<String> {
    (0..x.len())
        .filter(|&i| is_contractible_mask(x, x.below(i)) || is_contractible_mask(x, x.above(i)))
        .map(|i| x.label(i).to_string())
        .collect()
}

/// Depth-first search for a removal sequence that leaves a single point,
/// memoizing failed masks. With `first_only` just one removable point is tried
/// per state, which is exact whenever removability is inherited by subspaces.
pub(crate) fn removal_search<F>(
    x: &FiniteSpace,
    removable: F,
    first_only: bool,
    budget: Budget,
) -> SearchOutcome<Vec<usize>>
where
    F: Fn(&FiniteSpace, &Mask, usize) -> bool,
{
    struct State<'a, F> {
        x: &'a FiniteSpace,
        removable: F,
        first_only: bool,
        failed: HashSet<Mask>,
        meter: Meter,
        path: Vec<usize>,
    }

    fn go<F: Fn(&FiniteSpace, &Mask, usize) -> bool>(
        s: &mut State<'_, F>,
        alive: &mut Mask,
    ) -> Option<bool> {
        if alive.count_ones(..) <= 1 {
            return Some(true);
        }
        if s.failed.contains(alive) {
            return Some(false);
        }
        if !s.meter.tick() {
            return None;
        }
        let mut moves = Vec::new();
        for i in alive.ones() {
            if (s.removable)(s.x, alive, i) {
                moves.push(i);
                if s.first_only {
                    break;
                }
            }
        }
        for i in moves {
            alive.set(i, false);
            s.path.push(i);
            match go(s, alive) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            s.path.pop();
            alive.insert(i);
        }
        s.failed.insert(alive.clone());
        Some(false)
    }

    if x.is_empty() {
        return SearchOutcome::Exhausted;
    }
    let mut state = State {
        x,
        removable,
        first_only,
        failed: HashSet::new(),
        meter: Meter::new(budget),
        path: Vec::new(),
    };
    let mut alive = x.full_mask();
    match go(&mut state, &mut alive) {
        Some(true) => SearchOutcome::Found(state.path),
        Some(false) => SearchOutcome::Exhausted,
        None => SearchOutcome::Unknown,
    }
}

pub(crate) fn trace_from_removals(
    x: &FiniteSpace,
    removals: &[usize],
    make: impl Fn(String) -> MoveKind,
) -> ReductionTrace {
    ReductionTrace {
        initial: x.clone(),
        moves: removals
            .iter()
            .enumerate()
            .map(|(step, &i)| ReductionMove {
                kind: make(x.label(i).to_string()),
                size_before: x.len() - step,
            })
            .collect(),
    }
}

/// Searches for a sequence of elementary collapses (weak point removals)
/// ending in a single point.
pub fn is_collapsible(x: &FiniteSpace, budget: Budget) -> Result<SearchOutcome<ReductionTrace>> {
    if x.is_empty() {
        return Err(Error::EmptySpace);
    }
    Ok(removal_search(x, is_weak_point_in, false, budget)
        .map(|path| trace_from_removals(x, &path, MoveKind::Weak)))
}

/// Same homotopy type iff the cores are isomorphic.
pub fn homotopy_equivalent(x: &FiniteSpace, y: &FiniteSpace) -> Result<bool> {
    let (cx, _) = core(x)?;
    let (cy, _) = core(y)?;
    Ok(is_isomorphic(&cx, &cy).is_some())
}

/// Certifies or refutes weak homotopy triviality.
///
/// Tried in order: contractibility, collapsibility, qc-reducibility (height 2
/// only), then acyclic homology together with a trivial simplified edge-path
/// presentation. Nonzero reduced homology yields `NOT_TRIVIAL`.
pub fn homotopically_trivial_certificate(x: &FiniteSpace, budget: Budget) -> Result<Certificate> {
    if x.is_empty() {
        return Err(Error::EmptySpace);
    }
    let subject = "X".to_string();
    let (c, core_trace) = core(x)?;
    if c.len() == 1 {
        return Ok(Certificate::new(Verdict::Contractible, subject)
            .step("beat points removed down to a single point (Stong core)")
            .with_trace(core_trace));
    }
    if let SearchOutcome::Found(trace) = is_collapsible(x, budget)? {
        return Ok(Certificate::new(Verdict::Collapsible, subject)
            .step("elementary collapses (weak point removals) reach a single point")
            .step("collapsible spaces are homotopically trivial")
            .with_trace(trace));
    }
    if x.height()? == 2 {
        if let SearchOutcome::Found(qc) = crate::qc::is_qc_reducible(x, budget)? {
            return Ok(Certificate::new(Verdict::QcReducible, subject)
                .step("qc-reductions reach a space with maximum")
                .step("each qc-reduction preserves the weak homotopy type")
                .with_trace(qc.trace));
        }
    }
    let h = homology_space(x)?;
    if !h.is_acyclic() {
        return Ok(Certificate::new(Verdict::NotTrivial, subject)
            .step("reduced integral homology is nonzero, so X is not weakly contractible")
            .with_homology(h));
    }
    let k = order_complex(x)?;
    let p = tietze_simplify(&edge_path_presentation(&k, x.label(0))?, TIETZE_BUDGET);
    if p.is_trivial() {
        return Ok(Certificate::new(Verdict::WeakTrivialProved, subject)
            .step("reduced integral homology vanishes")
            .step("the edge-path presentation of pi1 simplifies to the trivial group")
            .step("a simply connected acyclic complex is contractible (Hurewicz and Whitehead)")
            .with_homology(h)
            .with_presentation(p));
    }
    Ok(Certificate::new(Verdict::Unknown, subject)
        .step("acyclic, but triviality of pi1 was not established")
        .with_homology(h)
        .with_presentation(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn chain(n: usize) -> FiniteSpace {
        let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let covers: Vec<(String, String)> = (1..n)
            .map(|i| (labels[i].clone(), labels[i - 1].clone()))
            .collect();
        FiniteSpace::build(labels, covers).unwrap()
    }

    #[test]
    fn beat_points_of_a_chain() {
        let x = chain(3);
        let beats = beat_points(&x);
        assert_eq!(
            beats,
            vec![
                ("c0".to_string(), BeatKind::Up),
                ("c1".to_string(), BeatKind::Down),
                ("c1".to_string(), BeatKind::Up),
                ("c2".to_string(), BeatKind::Down),
            ]
        );
        let weak = weak_points(&x);
        for (b, _) in &beats {
            assert!(weak.contains(b));
        }
    }

    #[test]
    fn minimal_models_have_no_beat_points() {
        assert!(beat_points(&fixtures::s1_min()).is_empty());
        assert!(beat_points(&fixtures::fig3()).is_empty());
        assert!(weak_points(&fixtures::s1_min()).is_empty());
    }

    #[test]
    fn cores() {
        let (c, trace) = core(&chain(5)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(trace.moves.len(), 4);
        assert_eq!(trace.replay().unwrap(), c);

        let (c, trace) = core(&fixtures::s1_min()).unwrap();
        assert_eq!(c, fixtures::s1_min());
        assert!(trace.moves.is_empty());

        let x = fixtures::fig2();
        let mut union = x.down_set("a", false).unwrap().members().clone();
        union.union_with(x.down_set("b", false).unwrap().members());
        let (c, _) = core(&x.induced(&union)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(core(&FiniteSpace::empty()).unwrap_err(), Error::EmptySpace);
    }

    #[test]
    fn contractibility() {
        assert!(is_contractible(&fixtures::fig5().remove(&["a", "b", "c", "d"]).unwrap()).unwrap());
        assert!(!is_contractible(&fixtures::s1_min()).unwrap());
        assert!(!is_contractible(&fixtures::fig3()).unwrap());
        // anything with a maximum
        let cone = fixtures::s1_min()
            .non_hausdorff_suspension()
            .unwrap()
            .remove(&["S"])
            .unwrap();
        assert!(is_contractible(&cone).unwrap());
    }

    #[test]
    fn fig3_is_collapsible() {
        let x = fixtures::fig3();
        assert!(!weak_points(&x).is_empty());
        assert_eq!(weak_points(&x), weak_points_by_halves(&x));
        let trace = is_collapsible(&x, Budget::default())
            .unwrap()
            .found()
            .unwrap();
        assert_eq!(trace.replay().unwrap().len(), 1);
    }

    #[test]
    fn circle_is_not_collapsible() {
        assert_eq!(
            is_collapsible(&fixtures::s1_min(), Budget::default()).unwrap(),
            SearchOutcome::Exhausted
        );
    }

    #[test]
    fn homotopy_types() {
        let point = FiniteSpace::singleton("x").unwrap();
        assert!(homotopy_equivalent(&chain(3), &point).unwrap());
        let hexagon = FiniteSpace::build(
            ["a", "b", "c", "d", "e", "f"],
            [
                ("a", "d"),
                ("a", "e"),
                ("b", "e"),
                ("b", "f"),
                ("c", "f"),
                ("c", "d"),
            ],
        )
        .unwrap();
        assert!(beat_points(&hexagon).is_empty());
        assert!(!homotopy_equivalent(&fixtures::s1_min(), &hexagon).unwrap());
        assert_eq!(
            homology_space(&hexagon).unwrap(),
            homology_space(&fixtures::s1_min()).unwrap()
        );
    }

    #[test]
    fn certificate_ladder() {
        let point = FiniteSpace::singleton("x").unwrap();
        let c = homotopically_trivial_certificate(&point, Budget::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Contractible);

        let c = homotopically_trivial_certificate(&fixtures::fig3(), Budget::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Collapsible);
        assert_eq!(c.trace.as_ref().unwrap().replay().unwrap().len(), 1);

        let c = homotopically_trivial_certificate(&fixtures::s1_min(), Budget::default()).unwrap();
        assert_eq!(c.verdict, Verdict::NotTrivial);
        assert_eq!(c.homology.unwrap().betti, vec![1, 1]);
    }

    #[test]
    fn replay_rejects_illegal_moves() {
        let x = fixtures::s1_min();
        let trace = ReductionTrace {
            initial: x.clone(),
            moves: vec![ReductionMove {
                kind: MoveKind::Weak("a".into()),
                size_before: 4,
            }],
        };
        assert!(matches!(
            trace.replay(),
            Err(Error::InvalidTrace { step: 0, .. })
        ));
        let trace = ReductionTrace {
            initial: chain(2),
            moves: vec![ReductionMove {
                kind: MoveKind::BeatUp("c0".into()),
                size_before: 3,
            }],
        };
        assert!(trace.replay().is_err());
    }
}
