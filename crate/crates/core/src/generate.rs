//! Random spaces and complexes for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::aspherical::is_a_point_in;
use crate::complex::SimplicialComplex;
use crate::poset::FiniteSpace;

fn point_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Random poset on `n` points: `p_j > p_i` for `i < j` with probability `density`
/// (then transitively closed).
pub fn random_space<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> FiniteSpace {
    let labels = point_labels(n);
    let mut relations = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(density) {
                relations.push((labels[j].clone(), labels[i].clone()));
            }
        }
    }
    FiniteSpace::build(labels, relations).expect("relations follow the index order")
}

/// Random space of height at most 2: points on three levels, each point above
/// some points of lower levels.
pub fn random_height2<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> FiniteSpace {
    let labels = point_labels(n);
    let level: Vec<usize> = (0..n).map(|_| rng.gen_range(0..3)).collect();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if level[i] > level[j] && rng.gen_bool(density) {
                relations.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    FiniteSpace::build(labels, relations).expect("relations follow the levels")
}

/// Strong aspherical space of height at most 2 built from a point by inverse
/// a-reductions: each new point goes above or below a random subset of the
/// current points and is kept only if it is an a-point of the result.
pub fn random_strong_aspherical<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FiniteSpace {
    let mut x = FiniteSpace::singleton("p0").expect("valid label");
    for k in 1..n {
        let new = format!("p{k}");
        let mut next = None;
        for _ in 0..20 {
            let size = rng.gen_range(1..=x.len().min(4));
            let chosen: Vec<&String> = x.labels().choose_multiple(rng, size).collect();
            let up = rng.gen_bool(0.5);
            let mut covers = x.covers();
            for c in chosen {
                covers.push(if up {
                    (new.clone(), c.clone())
                } else {
                    (c.clone(), new.clone())
                });
            }
            let mut elements = x.labels().to_vec();
            elements.push(new.clone());
            let candidate = FiniteSpace::build(elements, covers).expect("new point is extremal");
            if candidate.height().expect("nonempty") > 2 {
                continue;
            }
            let i = candidate.index_of(&new).expect("new point is present");
            if is_a_point_in(&candidate, &candidate.full_mask(), i) {
                next = Some(candidate);
                break;
            }
        }
        x = next.unwrap_or_else(|| {
            // above a single minimal point: the link is that point
            let m = x.minimal_points()[0].clone();
            let mut covers = x.covers();
            covers.push((new.clone(), m));
            let mut elements = x.labels().to_vec();
            elements.push(new.clone());
            FiniteSpace::build(elements, covers).expect("new point is maximal")
        });
    }
    x
}

/// Random complex of dimension at most `max_dim` on `vertices` vertices.
pub fn random_complex<R: Rng + ?Sized>(
    rng: &mut R,
    vertices: usize,
    facets: usize,
    max_dim: usize,
) -> SimplicialComplex {
    let labels: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
    let mut out: Vec<Vec<String>> = Vec::with_capacity(facets);
    for _ in 0..facets {
        let size = rng.gen_range(1..=(max_dim + 1).min(vertices));
        out.push(labels.choose_multiple(rng, size).cloned().collect());
    }
    SimplicialComplex::from_facets(out).expect("labels are valid")
}

/// Random complex whose facets all have `dim + 1` vertices (before absorbing
/// repeated ones).
pub fn random_pure_complex<R: Rng + ?Sized>(
    rng: &mut R,
    vertices: usize,
    facets: usize,
    dim: usize,
) -> SimplicialComplex {
    let labels: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
    let size = (dim + 1).min(vertices);
    let out: Vec<Vec<String>> = (0..facets)
        .map(|_| labels.choose_multiple(rng, size).cloned().collect())
        .collect();
    SimplicialComplex::from_facets(out).expect("labels are valid")
}

/// Random connected complex: a random complex plus a path through all vertices.
pub fn random_connected_complex<R: Rng + ?Sized>(
    rng: &mut R,
    vertices: usize,
    facets: usize,
    max_dim: usize,
) -> SimplicialComplex {
    let base = random_complex(rng, vertices, facets, max_dim);
    let mut all = base.facet_labels();
    let mut order: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
    order.shuffle(rng);
    for w in order.windows(2) {
        all.push(w.to_vec());
    }
    if vertices == 1 {
        all.push(order.clone());
    }
    SimplicialComplex::from_facets(all).expect("labels are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aspherical::is_strong_aspherical;
    use crate::search::Budget;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..10 {
            assert_eq!(random_space(&mut rng, n, 0.4).len(), n);
            assert!(random_height2(&mut rng, n, 0.5).height().unwrap() <= 2);
            let x = random_strong_aspherical(&mut rng, n);
            assert_eq!(x.len(), n);
            assert!(x.height().unwrap() <= 2);
            assert!(is_strong_aspherical(&x, Budget::default())
                .unwrap()
                .is_found());
            let k = random_connected_complex(&mut rng, n, 4, 2);
            assert!(k.is_connected());
            assert!(k.dimension().unwrap() <= 2);
        }
    }
}
