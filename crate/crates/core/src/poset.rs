//! Finite T0 spaces represented as finite posets.
//!
//! Elements are stored in lexicographic label order and addressed internally
//! by index. The strict order is kept in closed form as one down-set and one
//! up-set bitset per element, so most set-level operations (minimal open sets,
//! links, connectivity, beat-point tests) are a handful of bitset operations.
//! Many algorithms in this crate work on a [`Mask`] of surviving elements of
//! a fixed space instead of materializing every intermediate subspace.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A set of element indices of some [`FiniteSpace`].
pub type Mask = FixedBitSet;

/// Which end of the order [`FiniteSpace::extremal_points`] reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Max,
    Min,
}

/// A finite T0 space, i.e. a finite partially ordered set with labelled points.
///
/// `x <= y` iff `x` lies in every open set containing `y`; the minimal open set
/// of `x` is its down-set `U_x`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    below: Vec<Mask>,
    above: Vec<Mask>,
    lower_covers: Vec<Vec<usize>>,
}

pub(crate) fn validate_label(label: &str) -> Result<()> {
    if label.is_empty()
        || label
            .chars()
            .any(|c| c.is_whitespace() || c == '#' || c == '>')
    {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(())
}

impl FiniteSpace {
    /// Builds a space from its points and a relation given as `(greater, lesser)`
    /// pairs. The relation may be redundant; only its transitive reduction is
    /// kept as the cover relation.
    pub fn build<I, S, P, T>(elements: I, relations: P) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let mut labels: Vec<String> = elements.into_iter().map(Into::into).collect();
        for label in &labels {
            validate_label(label)?;
        }
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].clone()));
        }
        let n = labels.len();
        let lookup = |l: &str| {
            labels
                .binary_search_by(|x| x.as_str().cmp(l))
                .map_err(|_| Error::UnknownElement(l.to_string()))
        };

        let mut direct: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for (greater, lesser) in relations {
            let g = lookup(greater.as_ref())?;
            let l = lookup(lesser.as_ref())?;
            if g == l {
                return Err(Error::Cycle(labels[g].clone()));
            }
            if !direct[g].contains(&l) {
                direct[g].push(l);
                indegree[l] += 1;
            }
        }

        // Process from the top down: an element is finished once all of the
        // elements covering it have been visited. Reversed, this is a valid
        // bottom-up order for accumulating down-sets.
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        while let Some(g) = queue.pop_front() {
            order.push(g);
            for &l in &direct[g] {
                indegree[l] -= 1;
                if indegree[l] == 0 {
                    queue.push_back(l);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap();
            return Err(Error::Cycle(labels[stuck].clone()));
        }

        let mut below = vec![Mask::with_capacity(n); n];
        for &g in order.iter().rev() {
            let mut set = Mask::with_capacity(n);
            for &l in &direct[g] {
                set.insert(l);
                set.union_with(&below[l]);
            }
            below[g] = set;
        }
        Ok(Self::from_below(labels, below))
    }

    /// Assembles a space from sorted labels and transitively closed strict
    /// down-sets.
    pub(crate) fn from_below(labels: Vec<String>, below: Vec<Mask>) -> Self {
        let n = labels.len();
        let mut above = vec![Mask::with_capacity(n); n];
        for (i, set) in below.iter().enumerate() {
            for j in set.ones() {
                above[j].insert(i);
            }
        }
        let lower_covers = below
            .iter()
            .map(|set| {
                let mut shadow = Mask::with_capacity(n);
                for k in set.ones() {
                    shadow.union_with(&below[k]);
                }
                set.difference(&shadow).collect()
            })
            .collect();
        Self {
            labels,
            below,
            above,
            lower_covers,
        }
    }

    /// The one-point space.
    pub fn singleton(label: &str) -> Result<Self> {
        Self::build([label], std::iter::empty::<(&str, &str)>())
    }

    pub fn empty() -> Self {
        Self::from_below(Vec::new(), Vec::new())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Labels in lexicographic order; the position of a label is its index.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|x| x.as_str().cmp(label)).ok()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    /// Strict down-set `{y : y < x}` of the element at `index`.
    pub fn below(&self, index: usize) -> &Mask {
        &self.below[index]
    }

    /// Strict up-set `{y : y > x}` of the element at `index`.
    pub fn above(&self, index: usize) -> &Mask {
        &self.above[index]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    pub fn lower_covers(&self, index: usize) -> &[usize] {
        &self.lower_covers[index]
    }

    pub fn upper_covers(&self, index: usize) -> Vec<usize> {
        self.above[index]
            .ones()
            .filter(|&g| self.lower_covers[g].contains(&index))
            .collect()
    }

    /// Cover pairs `(greater, lesser)` in label order.
    pub fn covers(&self) -> Vec<(String, String)> {
        let mut pairs: Vec<(String, String)> = self
            .lower_covers
            .iter()
            .enumerate()
            .flat_map(|(g, ls)| {
                ls.iter()
                    .map(move |&l| (self.labels[g].clone(), self.labels[l].clone()))
            })
            .collect();
        pairs.sort();
        pairs
    }

    pub fn cover_count(&self) -> usize {
        self.lower_covers.iter().map(Vec::len).sum()
    }

    pub fn full_mask(&self) -> Mask {
        let mut mask = Mask::with_capacity(self.len());
        mask.insert_range(..);
        mask
    }

    pub fn empty_mask(&self) -> Mask {
        Mask::with_capacity(self.len())
    }

    /// Strict neighbourhood `Ĉ_x = Û_x ∪ F̂_x` as a mask.
    pub fn link_mask(&self, index: usize) -> Mask {
        let mut mask = self.below[index].clone();
        mask.union_with(&self.above[index]);
        mask
    }

    /// Minimal open set `U_x`, or `Û_x` when `punctured`.
    pub fn down_set(&self, label: &str, punctured: bool) -> Result<Subspace<'_>> {
        let i = self.index(label)?;
        let mut members = self.below[i].clone();
        members.set(i, !punctured);
        Ok(Subspace::new(self, members))
    }

    /// Minimal closed set `F_x`, or `F̂_x` when `punctured`.
    pub fn up_set(&self, label: &str, punctured: bool) -> Result<Subspace<'_>> {
        let i = self.index(label)?;
        let mut members = self.above[i].clone();
        members.set(i, !punctured);
        Ok(Subspace::new(self, members))
    }

    /// `Ĉ_x`: every point strictly comparable with `x`.
    pub fn punctured_link(&self, label: &str) -> Result<Subspace<'_>> {
        let i = self.index(label)?;
        Ok(Subspace::new(self, self.link_mask(i)))
    }

    /// Length of the longest chain.
    pub fn height(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptySpace);
        }
        Ok(self.height_of(&self.full_mask()))
    }

    /// Height of the subspace on `mask`; zero for an empty mask.
    pub fn height_of(&self, mask: &Mask) -> usize {
        self.ranks_in(mask).into_iter().flatten().max().unwrap_or(0)
    }

    /// Length of the longest chain ending at each element of `mask`
    /// (`None` outside the mask).
    pub(crate) fn ranks_in(&self, mask: &Mask) -> Vec<Option<usize>> {
        let mut order: Vec<usize> = mask.ones().collect();
        // y < x implies |U_y| < |U_x|, so this is a linear extension.
        order.sort_by_key(|&i| self.below[i].count_ones(..));
        let mut rank = vec![None; self.len()];
        for i in order {
            let r = self.below[i]
                .intersection(mask)
                .filter_map(|j| rank[j])
                .max()
                .map_or(0, |r: usize| r + 1);
            rank[i] = Some(r);
        }
        rank
    }

    /// Connected components, each sorted, listed by their first label.
    pub fn components(&self) -> Vec<Vec<String>> {
        self.components_of(&self.full_mask())
            .iter()
            .map(|c| c.ones().map(|i| self.labels[i].clone()).collect())
            .collect()
    }

    /// Connected components of the subspace on `mask` (comparability graph).
    pub fn components_of(&self, mask: &Mask) -> Vec<Mask> {
        let mut seen = self.empty_mask();
        let mut out = Vec::new();
        for start in mask.ones() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = self.empty_mask();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(x) = stack.pop() {
                comp.insert(x);
                for y in self.below[x].union(&self.above[x]) {
                    if mask.contains(y) && !seen.contains(y) {
                        seen.insert(y);
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected_mask(&self, mask: &Mask) -> bool {
        self.components_of(mask).len() == 1
    }

    pub fn is_connected(&self) -> bool {
        self.components_of(&self.full_mask()).len() == 1
    }

    pub fn extremal_points(&self, which: Extremum) -> Vec<String> {
        self.extremal_in(&self.full_mask(), which)
            .ones()
            .map(|i| self.labels[i].clone())
            .collect()
    }

    pub fn maximal_points(&self) -> Vec<String> {
        self.extremal_points(Extremum::Max)
    }

    pub fn minimal_points(&self) -> Vec<String> {
        self.extremal_points(Extremum::Min)
    }

    /// Maximal (or minimal) elements of the subspace on `mask`.
    pub fn extremal_in(&self, mask: &Mask, which: Extremum) -> Mask {
        let mut out = self.empty_mask();
        for i in mask.ones() {
            let beyond = match which {
                Extremum::Max => &self.above[i],
                Extremum::Min => &self.below[i],
            };
            if beyond.is_disjoint(mask) {
                out.insert(i);
            }
        }
        out
    }

    pub fn is_maximal(&self, index: usize) -> bool {
        self.above[index].is_clear()
    }

    /// Index of the maximum of the subspace on `mask`, if there is one.
    pub fn maximum_in(&self, mask: &Mask) -> Option<usize> {
        let tops = self.extremal_in(mask, Extremum::Max);
        (tops.count_ones(..) == 1).then(|| tops.ones().next().unwrap())
    }

    /// Index of the minimum of the subspace on `mask`, if there is one.
    pub fn minimum_in(&self, mask: &Mask) -> Option<usize> {
        let bottoms = self.extremal_in(mask, Extremum::Min);
        (bottoms.count_ones(..) == 1).then(|| bottoms.ones().next().unwrap())
    }

    pub fn has_maximum(&self) -> bool {
        !self.is_empty() && self.maximum_in(&self.full_mask()).is_some()
    }

    /// Subspace on `mask` with the restricted order.
    pub fn induced(&self, mask: &Mask) -> FiniteSpace {
        let keep: Vec<usize> = mask.ones().collect();
        let mut position = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            position[old] = new;
        }
        let n = keep.len();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let below = keep
            .iter()
            .map(|&i| {
                let mut set = Mask::with_capacity(n);
                for j in self.below[i].intersection(mask) {
                    set.insert(position[j]);
                }
                set
            })
            .collect();
        FiniteSpace::from_below(labels, below)
    }

    /// `X - {labels}`.
    pub fn remove<S: AsRef<str>>(&self, labels: &[S]) -> Result<FiniteSpace> {
        let mut mask = self.full_mask();
        for label in labels {
            mask.set(self.index(label.as_ref())?, false);
        }
        Ok(self.induced(&mask))
    }

    /// Adds two new maximal points above every point of the space.
    pub fn non_hausdorff_suspension(&self) -> Result<FiniteSpace> {
        if self.is_empty() {
            return Err(Error::EmptySpace);
        }
        let north = self.fresh_label("N");
        let south = self.fresh_label("S");
        let mut covers = self.covers();
        for top in self.maximal_points() {
            covers.push((north.clone(), top.clone()));
            covers.push((south.clone(), top));
        }
        let mut elements = self.labels.clone();
        elements.push(north);
        elements.push(south);
        FiniteSpace::build(elements, covers)
    }

    /// A label based on `base` that does not occur in the space.
    pub fn fresh_label(&self, base: &str) -> String {
        let mut candidate = base.to_string();
        while self.contains(&candidate) {
            candidate.push('\'');
        }
        candidate
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSpace")
            .field("points", &self.labels)
            .field("covers", &self.covers())
            .finish()
    }
}

/// A subset of a parent space carrying the restricted order.
#[derive(Clone)]
pub struct Subspace<'a> {
    parent: &'a FiniteSpace,
    members: Mask,
}

impl<'a> Subspace<'a> {
    pub fn new(parent: &'a FiniteSpace, members: Mask) -> Self {
        Self { parent, members }
    }

    pub fn parent(&self) -> &'a FiniteSpace {
        self.parent
    }

    pub fn members(&self) -> &Mask {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.parent
            .index_of(label)
            .is_some_and(|i| self.members.contains(i))
    }

    pub fn labels(&self) -> Vec<String> {
        self.members
            .ones()
            .map(|i| self.parent.label(i).to_string())
            .collect()
    }

    pub fn to_space(&self) -> FiniteSpace {
        self.parent.induced(&self.members)
    }
}

impl fmt::Debug for Subspace<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(labels: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn singleton_has_height_zero() {
        let x = FiniteSpace::singleton("x").unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x.height().unwrap(), 0);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = FiniteSpace::build(["x", "y"], [("x", "y"), ("y", "x")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(_)));
        let err = FiniteSpace::build(["x"], [("x", "x")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(_)));
    }

    #[test]
    fn undeclared_and_duplicate_labels() {
        let err = FiniteSpace::build(["x"], [("x", "y")]).unwrap_err();
        assert_eq!(err, Error::UnknownElement("y".into()));
        let err = FiniteSpace::build(["x", "x"], std::iter::empty::<(&str, &str)>()).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("x".into()));
        assert!(matches!(
            FiniteSpace::singleton("a b"),
            Err(Error::InvalidLabel(_))
        ));
    }

    #[test]
    fn redundant_relations_are_reduced() {
        let x = FiniteSpace::build(["a", "b", "c"], [("c", "b"), ("b", "a"), ("c", "a")]).unwrap();
        assert_eq!(
            x.covers(),
            vec![("b".into(), "a".into()), ("c".into(), "b".into())]
        );
    }

    #[test]
    fn fig2_down_and_up_sets() {
        let x = fixtures::fig2();
        assert_eq!(x.len(), 10);
        assert_eq!(
            x.down_set("a", false).unwrap().labels(),
            set(&["a", "x1", "x3", "p1", "p2", "p3", "p4"])
        );
        assert_eq!(x.down_set("p1", false).unwrap().labels(), set(&["p1"]));
        assert_eq!(
            x.up_set("x3", true).unwrap().labels(),
            set(&["a", "b", "t"])
        );
        assert!(x.up_set("a", true).unwrap().is_empty());
        assert_eq!(
            x.up_set("p2", false).unwrap().labels(),
            set(&["p2", "x1", "x3", "a", "b", "t"])
        );
        assert_eq!(x.height().unwrap(), 2);
        assert_eq!(x.components().len(), 1);
        assert_eq!(x.maximal_points(), set(&["a", "b", "t"]));
    }

    #[test]
    fn singleton_punctured_sets_are_empty() {
        let x = FiniteSpace::singleton("x").unwrap();
        assert!(x.down_set("x", true).unwrap().is_empty());
        assert!(x.punctured_link("x").unwrap().is_empty());
        assert_eq!(x.minimal_points(), vec!["x".to_string()]);
        assert!(matches!(
            x.down_set("y", false),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn fig4_links_and_components() {
        let x = fixtures::fig4();
        assert_eq!(x.punctured_link("d").unwrap().labels(), set(&["p1", "p4"]));
        let link = x.punctured_link("a").unwrap();
        assert_eq!(link.labels(), set(&["m1", "m4", "p1", "p2", "p3", "p4"]));
        let comps = link.to_space().components();
        assert_eq!(
            comps,
            vec![set(&["m1", "p1", "p2"]), set(&["m4", "p3", "p4"])]
        );
        assert_eq!(x.maximal_points(), set(&["a", "b", "c", "d"]));
    }

    #[test]
    fn circle_model_height_and_components() {
        let s1 = fixtures::s1_min();
        assert_eq!(s1.height().unwrap(), 1);
        assert!(s1.is_connected());
        let two = FiniteSpace::build(["x", "y"], std::iter::empty::<(&str, &str)>()).unwrap();
        assert_eq!(two.components(), vec![set(&["x"]), set(&["y"])]);
        assert!(FiniteSpace::empty().height().is_err());
        assert!(FiniteSpace::empty().components().is_empty());
    }

    #[test]
    fn suspensions() {
        let point = FiniteSpace::singleton("x").unwrap();
        let s = point.non_hausdorff_suspension().unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.maximal_points().len(), 2);
        assert_eq!(s.minimal_points(), vec!["x".to_string()]);

        let two = FiniteSpace::build(["x", "y"], std::iter::empty::<(&str, &str)>()).unwrap();
        let circle = two.non_hausdorff_suspension().unwrap();
        assert_eq!(circle.len(), 4);
        assert_eq!(circle.cover_count(), 4);
        assert_eq!(circle.height().unwrap(), 1);

        assert_eq!(
            FiniteSpace::empty().non_hausdorff_suspension(),
            Err(Error::EmptySpace)
        );
    }

    #[test]
    fn order_matches_down_set_inclusion() {
        let x = fixtures::fig3();
        for i in 0..x.len() {
            for j in 0..x.len() {
                let mut ui = x.below(i).clone();
                ui.insert(i);
                let mut uj = x.below(j).clone();
                uj.insert(j);
                assert_eq!(x.le(i, j), ui.is_subset(&uj));
            }
        }
    }
}
