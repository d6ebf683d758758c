//! Abstract simplicial complexes and the functors relating them to finite
//! spaces: order complex, face poset and barycentric subdivision.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::{validate_label, FiniteSpace};
use crate::search::{Budget, Meter, SearchOutcome};

/// A simplex as sorted vertex indices of its complex.
pub type Simplex = Vec<usize>;

/// An abstract simplicial complex stored by its facets.
///
/// Vertices are kept in lexicographic label order. The full simplex set is the
/// downward closure of the facets and is only enumerated when asked for.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    /// Builds a complex from a list of simplices given by vertex labels.
    /// Simplices contained in others are absorbed; empty ones are ignored.
    pub fn from_facets<F, V, S>(facets: F) -> Result<Self>
    where
        F: IntoIterator<Item = V>,
        V: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let raw: Vec<Vec<String>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(|s| s.as_ref().to_string()).collect())
            .collect();
        let mut vertices: Vec<String> = raw.iter().flatten().cloned().collect();
        for v in &vertices {
            validate_label(v)?;
        }
        vertices.sort();
        vertices.dedup();
        let facets = raw
            .into_iter()
            .map(|f| {
                let mut s: Simplex = f
                    .iter()
                    .map(|l| vertices.binary_search(l).unwrap())
                    .collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .filter(|s| !s.is_empty())
            .collect();
        Ok(Self::from_parts(vertices, facets))
    }

    /// `vertices` must be sorted and every simplex must index into it.
    /// Vertices not used by any facet are dropped.
    fn from_parts(vertices: Vec<String>, simplices: Vec<Simplex>) -> Self {
        let mut simplices = simplices;
        simplices.retain(|s| !s.is_empty());
        simplices.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        simplices.dedup();
        let mut facets: Vec<Simplex> = Vec::new();
        for s in simplices {
            if !facets.iter().any(|f| is_subset(&s, f)) {
                facets.push(s);
            }
        }
        let mut used = vec![false; vertices.len()];
        for f in &facets {
            for &v in f {
                used[v] = true;
            }
        }
        let mut remap = vec![usize::MAX; vertices.len()];
        let mut kept = Vec::new();
        for (i, v) in vertices.into_iter().enumerate() {
            if used[i] {
                remap[i] = kept.len();
                kept.push(v);
            }
        }
        let mut facets: Vec<Simplex> = facets
            .into_iter()
            .map(|f| f.into_iter().map(|v| remap[v]).collect())
            .collect();
        facets.sort();
        Self {
            vertices: kept,
            facets,
        }
    }

    pub fn empty() -> Self {
        Self {
            vertices: Vec::new(),
            facets: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(label))
            .ok()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Facets as label lists, in canonical order.
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| self.labels_of(f)).collect()
    }

    pub fn labels_of(&self, simplex: &[usize]) -> Vec<String> {
        simplex.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// `{a,b,c}`-style name of a simplex; used as point label in face posets.
    pub fn simplex_name(&self, simplex: &[usize]) -> String {
        format!("{{{}}}", self.labels_of(simplex).join(","))
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    /// Every simplex, ordered by dimension and then lexicographically.
    pub fn simplices(&self) -> Vec<Simplex> {
        let mut all: BTreeSet<(usize, Simplex)> = BTreeSet::new();
        for f in &self.facets {
            for s in nonempty_subsets(f) {
                all.insert((s.len(), s));
            }
        }
        all.into_iter().map(|(_, s)| s).collect()
    }

    /// Simplices of dimension `dim` in lexicographic order.
    pub fn simplices_of_dim(&self, dim: usize) -> Vec<Simplex> {
        let mut out: BTreeSet<Simplex> = BTreeSet::new();
        for f in self.facets.iter().filter(|f| f.len() > dim) {
            for s in subsets_of_size(f, dim + 1) {
                out.insert(s);
            }
        }
        out.into_iter().collect()
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for s in self.simplices() {
            if counts.len() < s.len() {
                counts.resize(s.len(), 0);
            }
            counts[s.len() - 1] += 1;
        }
        counts
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices().len()
    }

    /// All simplices as label lists, for set comparisons across complexes.
    pub fn simplex_set(&self) -> BTreeSet<Vec<String>> {
        self.simplices().iter().map(|s| self.labels_of(s)).collect()
    }

    /// Edges of the 1-skeleton as vertex-index pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices_of_dim(1)
            .into_iter()
            .map(|e| (e[0], e[1]))
            .collect()
    }

    pub fn components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for f in &self.facets {
            for w in f.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        (0..n).filter(|&v| find(&mut parent, v) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }

    /// Closed star and link of a vertex.
    pub fn star_link(&self, vertex: &str) -> Result<(SimplicialComplex, SimplicialComplex)> {
        let v = self
            .vertex_index(vertex)
            .ok_or_else(|| Error::UnknownVertex(vertex.to_string()))?;
        let star: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| f.contains(&v))
            .cloned()
            .collect();
        let link: Vec<Simplex> = star
            .iter()
            .map(|f| f.iter().copied().filter(|&w| w != v).collect())
            .collect();
        Ok((
            Self::from_parts(self.vertices.clone(), star),
            Self::from_parts(self.vertices.clone(), link),
        ))
    }

    /// Subcomplex of all simplices not containing `vertex`.
    pub fn deletion(&self, vertex: &str) -> Result<SimplicialComplex> {
        let v = self
            .vertex_index(vertex)
            .ok_or_else(|| Error::UnknownVertex(vertex.to_string()))?;
        let rest = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|&w| w != v).collect())
            .collect();
        Ok(Self::from_parts(self.vertices.clone(), rest))
    }

    /// Subcomplex generated by the given simplices of `self`.
    pub fn generated_by(&self, simplices: Vec<Simplex>) -> SimplicialComplex {
        Self::from_parts(self.vertices.clone(), simplices)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.facet_labels()).finish()
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.len() <= big.len() && small.iter().all(|v| big.binary_search(v).is_ok())
}

fn nonempty_subsets(simplex: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    let n = simplex.len();
    (1u64..(1 << n)).map(move |bits| {
        (0..n)
            .filter(|i| bits & (1 << i) != 0)
            .map(|i| simplex[i])
            .collect()
    })
}

fn subsets_of_size(simplex: &[usize], size: usize) -> impl Iterator<Item = Simplex> + '_ {
    nonempty_subsets(simplex).filter(move |s| s.len() == size)
}

/// Order complex: one simplex per chain, facets are the maximal chains.
pub fn order_complex(x: &FiniteSpace) -> Result<SimplicialComplex> {
    if x.is_empty() {
        return Err(Error::EmptySpace);
    }
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = x
        .extremal_in(&x.full_mask(), crate::poset::Extremum::Min)
        .ones()
        .map(|m| vec![m])
        .collect();
    while let Some(chain) = stack.pop() {
        let top = *chain.last().unwrap();
        let ups = x.upper_covers(top);
        if ups.is_empty() {
            let mut c = chain;
            c.sort_unstable();
            chains.push(c);
        } else {
            for u in ups {
                let mut next = chain.clone();
                next.push(u);
                stack.push(next);
            }
        }
    }
    // maximal chains are saturated chains from a minimal to a maximal point
    Ok(SimplicialComplex::from_parts(x.labels().to_vec(), chains))
}

/// Face poset: the simplices of `K` ordered by inclusion.
pub fn face_poset(k: &SimplicialComplex) -> Result<FiniteSpace> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let simplices = k.simplices();
    let names: Vec<String> = simplices.iter().map(|s| k.simplex_name(s)).collect();
    let mut covers = Vec::new();
    for (s, name) in simplices.iter().zip(&names) {
        if s.len() > 1 {
            for skip in 0..s.len() {
                let mut face = s.clone();
                face.remove(skip);
                covers.push((name.clone(), k.simplex_name(&face)));
            }
        }
    }
    FiniteSpace::build(names, covers)
}

/// Barycentric subdivision, computed as the order complex of the face poset.
pub fn barycentric(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    order_complex(&face_poset(k)?)
}

/// A free face together with the unique simplex containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreePair {
    pub face: Vec<String>,
    pub coface: Vec<String>,
}

/// All free faces: simplices that are a proper face of exactly one simplex,
/// which has exactly one more vertex.
pub fn free_faces(k: &SimplicialComplex) -> Vec<FreePair> {
    let mut containing: HashMap<Simplex, Vec<usize>> = HashMap::new();
    for (fi, f) in k.facets.iter().enumerate() {
        for s in nonempty_subsets(f) {
            containing.entry(s).or_default().push(fi);
        }
    }
    let mut out: Vec<(Simplex, Simplex)> = containing
        .into_iter()
        .filter_map(|(s, fs)| {
            let f = &k.facets[fs[0]];
            (fs.len() == 1 && f.len() == s.len() + 1).then(|| (s, f.clone()))
        })
        .collect();
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.cmp(b)));
    out.into_iter()
        .map(|(s, f)| FreePair {
            face: k.labels_of(&s),
            coface: k.labels_of(&f),
        })
        .collect()
}

/// Elementary collapses in the order they were performed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CollapseSequence {
    pub steps: Vec<FreePair>,
}

impl CollapseSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies the collapses to `k`, checking that each removed face is free.
    pub fn apply(&self, k: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mut current = k.clone();
        for (step, pair) in self.steps.iter().enumerate() {
            let free = free_faces(&current);
            if !free.contains(pair) {
                return Err(Error::InvalidTrace {
                    step,
                    reason: format!("{:?} is not a free face of {:?}", pair.face, pair.coface),
                });
            }
            let face: Simplex = pair
                .face
                .iter()
                .map(|l| current.vertex_index(l).unwrap())
                .collect();
            let coface: Simplex = pair
                .coface
                .iter()
                .map(|l| current.vertex_index(l).unwrap())
                .collect();
            let mut keep: Vec<Simplex> = current.simplices();
            keep.retain(|s| *s != face && *s != coface);
            current = current.generated_by(keep);
        }
        Ok(current)
    }
}

/// Searches for elementary collapses leaving no simplex of dimension above `dim`.
///
/// Depth-first over free pairs in canonical order, memoizing the remaining
/// simplex set of every failed state. When `dim(K) <= dim + 1` only the top
/// simplices have to go; a free pair stays free until its coface is removed, so
/// every maximal collapse sequence leaves the same top simplices and a single
/// greedy branch decides the question exactly.
pub fn collapse_to_dimension(
    k: &SimplicialComplex,
    dim: usize,
    budget: Budget,
) -> SearchOutcome<CollapseSequence> {
    let confluent = k.dimension().is_none_or(|top| top <= dim + 1);
    collapse_search(k, dim, budget, confluent)
}

pub(crate) fn collapse_search(
    k: &SimplicialComplex,
    dim: usize,
    budget: Budget,
    confluent: bool,
) -> SearchOutcome<CollapseSequence> {
    let simplices = k.simplices();
    let index: HashMap<&Simplex, usize> =
        simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); simplices.len()];
    for (ti, t) in simplices.iter().enumerate() {
        for s in nonempty_subsets(t) {
            if s.len() < t.len() {
                cofaces[index[&s]].push(ti);
            }
        }
    }
    let mut search = CollapseSearch {
        simplices: &simplices,
        cofaces,
        dim,
        confluent,
        failed: HashSet::new(),
        meter: Meter::new(budget),
        path: Vec::new(),
    };
    let mut alive = FixedBitSet::with_capacity(simplices.len());
    alive.insert_range(..);
    match search.run(&mut alive) {
        Some(true) => SearchOutcome::Found(CollapseSequence {
            steps: search
                .path
                .iter()
                .map(|&(s, t)| FreePair {
                    face: k.labels_of(&simplices[s]),
                    coface: k.labels_of(&simplices[t]),
                })
                .collect(),
        }),
        Some(false) => SearchOutcome::Exhausted,
        None => SearchOutcome::Unknown,
    }
}

struct CollapseSearch<'a> {
    simplices: &'a [Simplex],
    cofaces: Vec<Vec<usize>>,
    dim: usize,
    confluent: bool,
    failed: HashSet<FixedBitSet>,
    meter: Meter,
    path: Vec<(usize, usize)>,
}

impl CollapseSearch<'_> {
    fn free_pairs(&self, alive: &FixedBitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in alive.ones() {
            let mut live = self.cofaces[s].iter().filter(|&&t| alive.contains(t));
            if let (Some(&t), None) = (live.next(), live.next()) {
                let top = self.simplices[t].len();
                if top == self.simplices[s].len() + 1 && top > self.dim + 1 {
                    out.push((s, t));
                }
            }
        }
        out
    }

    /// `Some(true)` on success, `Some(false)` if this state is a dead end,
    /// `None` when the budget ran out.
    fn run(&mut self, alive: &mut FixedBitSet) -> Option<bool> {
        if alive
            .ones()
            .all(|s| self.simplices[s].len() <= self.dim + 1)
        {
            return Some(true);
        }
        if self.failed.contains(alive) {
            return Some(false);
        }
        if !self.meter.tick() {
            return None;
        }
        let mut moves = self.free_pairs(alive);
        if self.confluent {
            moves.truncate(1);
        }
        for (s, t) in moves {
            alive.set(s, false);
            alive.set(t, false);
            self.path.push((s, t));
            match self.run(alive) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.path.pop();
            alive.insert(s);
            alive.insert(t);
        }
        self.failed.insert(alive.clone());
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets([["a", "b", "c"]]).unwrap()
    }

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap()
    }

    #[test]
    fn facets_absorb_faces() {
        let k = SimplicialComplex::from_facets(vec![vec!["a", "b", "c"], vec!["a", "b"]]).unwrap();
        assert_eq!(k, triangle());
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn order_complex_of_fig1() {
        let k = order_complex(&fixtures::fig1()).unwrap();
        assert_eq!(k.vertices().len(), 6);
        assert_eq!(k.dimension(), Some(2));
        let facets = k.facet_labels();
        assert!(facets.contains(&vec!["B1".to_string(), "M1".into(), "T1".into()]));
        // maximal chains: T1 over M1, M2 (2 each) and T2 over M2 (2)
        assert_eq!(facets.len(), 6);
    }

    #[test]
    fn order_complex_small_cases() {
        let point = order_complex(&FiniteSpace::singleton("x").unwrap()).unwrap();
        assert_eq!(point.f_vector(), vec![1]);
        let circle = order_complex(&fixtures::s1_min()).unwrap();
        assert_eq!(circle.f_vector(), vec![4, 4]);
        assert_eq!(circle.dimension(), Some(1));
        assert!(order_complex(&FiniteSpace::empty()).is_err());
    }

    #[test]
    fn face_posets() {
        let x = face_poset(&triangle()).unwrap();
        assert_eq!(x.len(), 7);
        assert_eq!(x.minimal_points().len(), 3);
        assert_eq!(x.maximal_points(), vec!["{a,b,c}".to_string()]);
        assert_eq!(x.height().unwrap(), 2);

        let edge = SimplicialComplex::from_facets([["a", "b"]]).unwrap();
        let y = face_poset(&edge).unwrap();
        assert_eq!((y.len(), y.height().unwrap()), (3, 1));

        let z = face_poset(&hollow_triangle()).unwrap();
        assert_eq!(z.len(), 6);
        assert_eq!(z.height().unwrap(), 1);
        assert_eq!(z.maximal_points().len(), 3);
        assert_eq!(z.minimal_points().len(), 3);
        assert!(face_poset(&SimplicialComplex::empty()).is_err());
    }

    #[test]
    fn barycentric_counts() {
        let edge = SimplicialComplex::from_facets([["a", "b"]]).unwrap();
        assert_eq!(barycentric(&edge).unwrap().f_vector(), vec![3, 2]);
        let sd = barycentric(&triangle()).unwrap();
        assert_eq!(sd.f_vector()[0], 7);
        assert_eq!(sd.simplices_of_dim(2).len(), 6);
        let ring = barycentric(&hollow_triangle()).unwrap();
        assert_eq!(ring.f_vector(), vec![6, 6]);
    }

    #[test]
    fn stars_and_links() {
        let (star, link) = triangle().star_link("a").unwrap();
        assert_eq!(star, triangle());
        assert_eq!(link.facet_labels(), vec![vec!["b".to_string(), "c".into()]]);

        let square = order_complex(&fixtures::s1_min()).unwrap();
        let (star, link) = square.star_link("a").unwrap();
        assert_eq!(star.f_vector(), vec![3, 2]);
        assert_eq!(
            link.facet_labels(),
            vec![vec!["c".to_string()], vec!["d".to_string()]]
        );
        assert!(matches!(
            square.star_link("q"),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn link_in_fig4_is_the_order_complex_of_the_punctured_link() {
        let x = fixtures::fig4();
        let k = order_complex(&x).unwrap();
        let (_, link) = k.star_link("a").unwrap();
        let c_a = order_complex(&x.punctured_link("a").unwrap().to_space()).unwrap();
        assert_eq!(link.simplex_set(), c_a.simplex_set());
        assert_eq!(link.components(), 2);
    }

    #[test]
    fn free_face_examples() {
        let free = free_faces(&triangle());
        assert_eq!(free.len(), 3);
        assert!(free.iter().all(|p| p.face.len() == 2));
        assert!(free_faces(&hollow_triangle()).is_empty());
        let path = SimplicialComplex::from_facets([["a", "b"], ["b", "c"]]).unwrap();
        let free = free_faces(&path);
        let faces: Vec<_> = free.iter().map(|p| p.face.clone()).collect();
        assert_eq!(faces, vec![vec!["a".to_string()], vec!["c".to_string()]]);
    }

    #[test]
    fn collapse_examples() {
        let seq = collapse_to_dimension(&triangle(), 0, Budget::default())
            .found()
            .unwrap();
        let rest = seq.apply(&triangle()).unwrap();
        assert_eq!(rest.f_vector(), vec![1]);

        let seq = collapse_to_dimension(&hollow_triangle(), 1, Budget::default());
        assert_eq!(seq, SearchOutcome::Found(CollapseSequence::default()));
        assert_eq!(
            collapse_to_dimension(&hollow_triangle(), 0, Budget::default()),
            SearchOutcome::Exhausted
        );
    }

    #[test]
    fn tight_budget_is_unknown() {
        let k = barycentric(&triangle()).unwrap();
        assert_eq!(
            collapse_to_dimension(&k, 0, Budget(2)),
            SearchOutcome::Unknown
        );
    }

    #[test]
    fn greedy_collapse_matches_full_search() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut decided = [0usize; 2];
        use rand::seq::SliceRandom;
        let vertices = ["a", "b", "c", "d", "e", "f"];
        for round in 0..150 {
            let triangles: Vec<Vec<&str>> = (0..4 + round % 6)
                .map(|_| vertices.choose_multiple(&mut rng, 3).copied().collect())
                .collect();
            let k = SimplicialComplex::from_facets(triangles).unwrap();
            let greedy = collapse_search(&k, 1, Budget::default(), true);
            let full = collapse_search(&k, 1, Budget::default(), false);
            if let (Some(g), Some(f)) = (greedy.decided(), full.decided()) {
                assert_eq!(g, f, "{:?}", k.facet_labels());
                decided[g as usize] += 1;
                if let SearchOutcome::Found(seq) = greedy {
                    assert!(seq.apply(&k).unwrap().dimension().unwrap() <= 1);
                }
            }
        }
        assert!(decided[0] > 0 && decided[1] > 0, "{decided:?}");
    }
}
