//! Finite group presentations of fundamental groups.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::algebra::matrix::{IntegerMatrix, SmithForm};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::poset::FiniteSpace;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Self {
            inverse: !self.inverse,
            ..self
        }
    }

    fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

pub type Word = Vec<Letter>;

fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[Letter]) -> Word {
    let w = free_reduce(w);
    let mut start = 0;
    let mut end = w.len();
    while end - start >= 2 && w[start] == w[end - 1].inv() {
        start += 1;
        end -= 1;
    }
    w[start..end].to_vec()
}

fn rotate(w: &[Letter], k: usize) -> Word {
    let mut out = w[k..].to_vec();
    out.extend_from_slice(&w[..k]);
    out
}

/// Least rotation of `w` or of its inverse; relators equal up to cyclic
/// permutation and inversion share this form.
fn canonical(w: &[Letter]) -> Word {
    let inv = inverse_word(w);
    (0..w.len())
        .flat_map(|k| [rotate(w, k), rotate(&inv, k)])
        .min()
        .unwrap_or_default()
}

/// A finitely presented group `< generators | relators >`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    /// Builds a presentation, checking that relators only use declared generators.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if let Some(l) = relators
            .iter()
            .flatten()
            .find(|l| l.generator >= generators.len())
        {
            return Err(Error::PreconditionViolated(format!(
                "relator uses undeclared generator #{}",
                l.generator
            )));
        }
        Ok(Self {
            generators,
            relators,
        })
    }

    /// True when no generators are left, i.e. the presentation is visibly trivial.
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            let mut sums = vec![0i64; self.generators.len()];
            for l in r {
                sums[l.generator] += l.exponent();
            }
            for (j, s) in sums.into_iter().enumerate() {
                m.set(i, j, s);
            }
        }
        m
    }

    /// Abelianization as (free rank, torsion coefficients).
    pub fn abelianization(&self) -> (usize, Vec<num_bigint::BigInt>) {
        let snf: SmithForm = self.relation_matrix().smith_normal_form();
        (self.generators.len() - snf.rank(), snf.torsion())
    }

    fn word_string(&self, w: &[Letter]) -> String {
        w.iter()
            .map(|l| {
                let name = &self.generators[l.generator];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let relators: Vec<String> = self.relators.iter().map(|r| self.word_string(r)).collect();
        let side = |items: Vec<String>| {
            if items.is_empty() {
                String::new()
            } else {
                format!(" {}", items.join(", "))
            }
        };
        write!(
            f,
            "<{} |{} >",
            side(self.generators.clone()),
            side(relators)
        )
    }
}

/// Edge-path presentation of `π_1(K, basepoint)`.
///
/// A breadth-first spanning tree of the 1-skeleton is grown from the basepoint,
/// visiting neighbours in label order. Every edge off the tree is a generator,
/// written `[u,v]` and oriented from the smaller label; every 2-simplex
/// `u < v < w` contributes the relator `[u,v] [v,w] [u,w]^-1` with tree edges
/// deleted.
pub fn edge_path_presentation(k: &SimplicialComplex, basepoint: &str) -> Result<GroupPresentation> {
    let root = k
        .vertex_index(basepoint)
        .ok_or_else(|| Error::UnknownVertex(basepoint.to_string()))?;
    if !k.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = k.vertices().len();
    let edges = k.edges();
    let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adjacent[u].push(v);
        adjacent[v].push(u);
    }
    for list in &mut adjacent {
        list.sort_unstable();
    }

    let mut tree: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacent[u] {
            if !seen[v] {
                seen[v] = true;
                tree.insert((u.min(v), u.max(v)));
                queue.push_back(v);
            }
        }
    }

    let mut generator_of = std::collections::HashMap::new();
    let mut generators = Vec::new();
    for &(u, v) in &edges {
        if !tree.contains(&(u, v)) {
            generator_of.insert((u, v), generators.len());
            generators.push(format!("[{},{}]", k.vertices()[u], k.vertices()[v]));
        }
    }
    let letter = |u: usize, v: usize, inverse: bool| {
        generator_of.get(&(u, v)).map(|&g| Letter::new(g, inverse))
    };
    let relators = k
        .simplices_of_dim(2)
        .into_iter()
        .map(|t| {
            [
                letter(t[0], t[1], false),
                letter(t[1], t[2], false),
                letter(t[0], t[2], true),
            ]
            .into_iter()
            .flatten()
            .collect()
        })
        .collect();
    GroupPresentation::new(generators, relators)
}

/// Simplifies a presentation by Tietze transformations that never change the
/// presented group: free and cyclic reduction of relators, removal of
/// duplicate and empty relators, elimination of a generator occurring exactly
/// once in some relator, and replacement of a subword of one relator by the
/// shorter complement taken from another. Stops at a fixpoint or after
/// `budget` eliminations/replacements.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> GroupPresentation {
    let mut generators = p.generators.clone();
    let mut relators = p.relators.clone();
    let mut moves = 0;
    loop {
        normalize(&mut relators);
        if moves >= budget {
            break;
        }
        if eliminate_generator(&mut generators, &mut relators) || replace_subword(&mut relators) {
            moves += 1;
            continue;
        }
        break;
    }
    GroupPresentation {
        generators,
        relators,
    }
}

fn normalize(relators: &mut Vec<Word>) {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in relators.drain(..) {
        let r = cyclic_reduce(&r);
        if r.is_empty() {
            continue;
        }
        let key = canonical(&r);
        if seen.insert(key.clone()) {
            out.push(key);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    *relators = out;
}

fn eliminate_generator(generators: &mut Vec<String>, relators: &mut Vec<Word>) -> bool {
    // relators are sorted by length, so the shortest usable one wins
    let choice = relators.iter().enumerate().find_map(|(ri, r)| {
        let mut counts = vec![0usize; generators.len()];
        for l in r {
            counts[l.generator] += 1;
        }
        (0..generators.len())
            .find(|&g| counts[g] == 1)
            .map(|g| (ri, g))
    });
    let Some((ri, g)) = choice else { return false };
    let r = relators.remove(ri);
    let pos = r.iter().position(|l| l.generator == g).unwrap();
    let rotated = rotate(&r, pos);
    let rest = &rotated[1..];
    // g^e · rest = 1
    let replacement = if rotated[0].inverse {
        rest.to_vec()
    } else {
        inverse_word(rest)
    };
    let replacement_inv = inverse_word(&replacement);
    for w in relators.iter_mut() {
        let mut out = Vec::with_capacity(w.len());
        for &l in w.iter() {
            if l.generator == g {
                out.extend_from_slice(if l.inverse {
                    &replacement_inv
                } else {
                    &replacement
                });
            } else {
                out.push(l);
            }
        }
        *w = out;
    }
    generators.remove(g);
    for w in relators.iter_mut() {
        for l in w.iter_mut() {
            if l.generator > g {
                l.generator -= 1;
            }
        }
    }
    true
}

#[allow(clippy::needless_range_loop)] // relators[si] is rewritten in place
fn replace_subword(relators: &mut [Word]) -> bool {
    for ri in 0..relators.len() {
        let r = relators[ri].clone();
        let n = r.len();
        let rotations: Vec<Word> = (0..n)
            .flat_map(|k| [rotate(&r, k), rotate(&inverse_word(&r), k)])
            .collect();
        for si in 0..relators.len() {
            if si == ri || relators[si].len() < n {
                continue;
            }
            let s = relators[si].clone();
            let m = s.len();
            for k in (n / 2 + 1..=n).rev() {
                if k > m {
                    continue;
                }
                for rho in &rotations {
                    let (u, v) = rho.split_at(k);
                    for start in 0..m {
                        let matches = (0..k).all(|i| s[(start + i) % m] == u[i]);
                        if matches {
                            // u = v^-1 in the group, and |v| < |u|
                            let mut new = inverse_word(v);
                            new.extend((k..m).map(|i| s[(start + i) % m]));
                            relators[si] = new;
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Rank of the free fundamental group of each component of a space of height
/// at most one: cover pairs minus points plus one.
pub fn free_rank_height1(x: &FiniteSpace) -> Result<Vec<usize>> {
    if x.is_empty() {
        return Ok(Vec::new());
    }
    let h = x.height()?;
    if h >= 2 {
        return Err(Error::HeightTooLarge(h));
    }
    Ok(x.components_of(&x.full_mask())
        .iter()
        .map(|comp| {
            let edges: usize = comp.ones().map(|i| x.lower_covers(i).len()).sum();
            edges + 1 - comp.count_ones(..)
        })
        .collect())
}
