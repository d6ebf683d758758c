//! Order isomorphism of finite spaces by backtracking.

use crate::poset::FiniteSpace;

/// Per-element invariant used to prune candidate images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Signature {
    rank: usize,
    corank: usize,
    below: usize,
    above: usize,
    lower_covers: usize,
    upper_covers: usize,
}

fn signatures(x: &FiniteSpace) -> Vec<Signature> {
    let full = x.full_mask();
    let ranks = x.ranks_in(&full);
    // corank: longest chain starting at the element
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by_key(|&i| x.above(i).count_ones(..));
    let mut corank = vec![0usize; x.len()];
    for i in order {
        corank[i] = x.above(i).ones().map(|j| corank[j] + 1).max().unwrap_or(0);
    }
    (0..x.len())
        .map(|i| Signature {
            rank: ranks[i].unwrap_or(0),
            corank: corank[i],
            below: x.below(i).count_ones(..),
            above: x.above(i).count_ones(..),
            lower_covers: x.lower_covers(i).len(),
            upper_covers: x.upper_covers(i).len(),
        })
        .collect()
}

/// Returns an order isomorphism `X -> Y` as `(x, f(x))` label pairs in the
/// label order of `X`, or `None` if the spaces are not isomorphic.
///
/// Elements of `X` are assigned in label order and candidates are tried in
/// label order, so the witness is deterministic.
pub fn is_isomorphic(x: &FiniteSpace, y: &FiniteSpace) -> Option<Vec<(String, String)>> {
    if x.len() != y.len() || x.cover_count() != y.cover_count() {
        return None;
    }
    let sx = signatures(x);
    let sy = signatures(y);
    let mut hist_x = sx.clone();
    let mut hist_y = sy.clone();
    let key = |s: &Signature| {
        (
            s.rank,
            s.corank,
            s.below,
            s.above,
            s.lower_covers,
            s.upper_covers,
        )
    };
    hist_x.sort_by_key(key);
    hist_y.sort_by_key(key);
    if hist_x != hist_y {
        return None;
    }

    let candidates: Vec<Vec<usize>> = sx
        .iter()
        .map(|s| (0..y.len()).filter(|&j| sy[j] == *s).collect())
        .collect();
    let mut image = vec![usize::MAX; x.len()];
    let mut used = vec![false; y.len()];
    if extend(x, y, &candidates, 0, &mut image, &mut used) {
        Some(
            image
                .iter()
                .enumerate()
                .map(|(i, &j)| (x.label(i).to_string(), y.label(j).to_string()))
                .collect(),
        )
    } else {
        None
    }
}

fn extend(
    x: &FiniteSpace,
    y: &FiniteSpace,
    candidates: &[Vec<usize>],
    next: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if next == x.len() {
        return true;
    }
    for &j in &candidates[next] {
        if used[j] {
            continue;
        }
        let consistent = (0..next).all(|k| {
            let fk = image[k];
            x.lt(k, next) == y.lt(fk, j) && x.lt(next, k) == y.lt(j, fk)
        });
        if !consistent {
            continue;
        }
        image[next] = j;
        used[j] = true;
        if extend(x, y, candidates, next + 1, image, used) {
            return true;
        }
        used[j] = false;
    }
    image[next] = usize::MAX;
    false
}
