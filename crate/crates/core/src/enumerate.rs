//! Enumeration of finite T0 Alexandroff spaces (equivalently, finite posets)
//! up to order isomorphism, in a deterministic canonical order.
//!
//! Every finite poset admits a linear extension, so it is reachable as the
//! transitive closure of an upper-triangular relation on labeled points.
//! Candidates are canonicalized by maximizing the row-major encoding of the
//! full order matrix over all point permutations; the canonical labeling puts
//! the richest rows first, which lands bottoms at low indices.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::space::{Space, SpaceError, MAX_SEARCH_POINTS};

/// Row-major bit encoding of the order matrix `le[a][b]` under `perm`
/// (element `i` of the input is renamed to `perm[i]`).
fn encode(n: usize, below: &[u64], perm: &[usize]) -> u64 {
    // inverse: new index -> old index
    let mut old_of = [0usize; 8];
    for (old, &new) in perm.iter().enumerate() {
        old_of[new] = old;
    }
    let mut code = 0u64;
    for a in 0..n {
        for b in 0..n {
            code <<= 1;
            let (oa, ob) = (old_of[a], old_of[b]);
            if below[ob] & (1 << oa) != 0 {
                code |= 1;
            }
        }
    }
    code
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

fn canonical_code(n: usize, below: &[u64], perms: &[Vec<usize>]) -> (u64, Vec<usize>) {
    let mut best: Option<(u64, Vec<usize>)> = None;
    for p in perms {
        let code = encode(n, below, p);
        match &best {
            None => best = Some((code, p.clone())),
            Some((c, _)) if code > *c => best = Some((code, p.clone())),
            _ => {}
        }
    }
    best.unwrap()
}

/// All T0 spaces with `1..=max_points` points, one representative per
/// isomorphism class, ordered by point count then descending canonical code.
/// With `require_well_behaved`, only spaces with a bottom, a top and
/// inf-closed minimal neighborhoods are kept.
pub fn enumerate_spaces(
    max_points: usize,
    require_well_behaved: bool,
) -> Result<Vec<Space>, SpaceError> {
    if max_points > MAX_SEARCH_POINTS {
        return Err(SpaceError::LimitExceeded {
            got: max_points,
            max: MAX_SEARCH_POINTS,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_points {
        let perms = permutations(n);
        let nbits = n * (n - 1) / 2;
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut canon: Vec<(u64, Vec<(usize, usize)>)> = Vec::new();
        for bits in 0u64..(1u64 << nbits) {
            // decode the strictly-upper-triangular generator relation
            let mut pairs = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits & (1 << k) != 0 {
                        pairs.push((a, b));
                    }
                    k += 1;
                }
            }
            let space = Space::from_poset(n, &pairs, true)?;
            let below: Vec<u64> = (0..n).map(|x| space.min_nbhd(x).0).collect();
            let (code, perm) = canonical_code(n, &below, &perms);
            if seen.insert(code) {
                // rebuild the generator pairs under the canonical labeling
                let mut cpairs = Vec::new();
                for a in 0..n {
                    for b in 0..n {
                        if a != b && below[b] & (1 << a) != 0 {
                            cpairs.push((perm[a], perm[b]));
                        }
                    }
                }
                canon.push((code, cpairs));
            }
        }
        // descending code sorts richer (more related) spaces first: chains
        // before antichains, and the canonical labels match the code
        canon.sort_by(|a, b| b.0.cmp(&a.0));
        for (_, pairs) in canon {
            let space = Space::from_poset(n, &pairs, true)?;
            if !require_well_behaved || space.well_behaved().ok() {
                out.push(space);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: filter all binary relations on labeled points for
    /// reflexive + transitive + antisymmetric, then reduce by permutation.
    fn brute_force_poset_count(n: usize) -> usize {
        let perms = permutations(n);
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|(a, b)| a != b)
            .collect();
        let mut classes = BTreeSet::new();
        'rel: for bits in 0u64..(1u64 << cells.len()) {
            let mut le = [[false; 6]; 6];
            for x in 0..n {
                le[x][x] = true;
            }
            for (k, &(a, b)) in cells.iter().enumerate() {
                if bits & (1 << k) != 0 {
                    le[a][b] = true;
                }
            }
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if le[a][b] && le[b][c] && !le[a][c] {
                            continue 'rel;
                        }
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    if a != b && le[a][b] && le[b][a] {
                        continue 'rel;
                    }
                }
            }
            let below: Vec<u64> = (0..n)
                .map(|x| {
                    (0..n)
                        .filter(|&t| le[t][x])
                        .fold(0u64, |m, t| m | (1 << t))
                })
                .collect();
            let (code, _) = canonical_code(n, &below, &perms);
            classes.insert(code);
        }
        classes.len()
    }

    #[test]
    fn counts_match_brute_force_oracle() {
        // unlabeled posets on 1..=4 points: 1, 2, 5, 16
        let expected = [1usize, 2, 5, 16];
        for n in 1..=4 {
            assert_eq!(brute_force_poset_count(n), expected[n - 1], "n = {}", n);
        }
        let all = enumerate_spaces(4, false).unwrap();
        assert_eq!(all.len(), 1 + 2 + 5 + 16);
        let per_n = |k: usize| all.iter().filter(|s| s.n_points() == k).count();
        for n in 1..=4 {
            assert_eq!(per_n(n), expected[n - 1]);
        }
    }

    #[test]
    fn well_behaved_counts() {
        // bounded posets with inf-closed neighborhoods: chains only up to 3
        // points, chain + diamond at 4, five shapes at 5
        assert_eq!(enumerate_spaces(1, true).unwrap().len(), 1);
        assert_eq!(enumerate_spaces(2, true).unwrap().len(), 2);
        assert_eq!(enumerate_spaces(3, true).unwrap().len(), 3);
        assert_eq!(enumerate_spaces(4, true).unwrap().len(), 5);
        assert_eq!(enumerate_spaces(5, true).unwrap().len(), 10);
    }

    #[test]
    fn contains_sierpinski_and_diamond() {
        // canonical labels may permute points, so compare the multiset of
        // open-set sizes, which is an order invariant here
        fn open_sizes(s: &Space) -> Vec<u32> {
            let mut v: Vec<u32> = s.opens().iter().map(|m| m.count_ones()).collect();
            v.sort();
            v
        }
        let spaces = enumerate_spaces(4, true).unwrap();
        assert!(spaces
            .iter()
            .any(|s| s.n_points() == 2 && open_sizes(s) == open_sizes(&Space::sierpinski())));
        assert!(spaces
            .iter()
            .any(|s| s.n_points() == 4 && open_sizes(s) == open_sizes(&Space::diamond())));
    }

    #[test]
    fn deterministic_order() {
        let a = enumerate_spaces(4, true).unwrap();
        let b = enumerate_spaces(4, true).unwrap();
        let codes = |v: &[Space]| -> Vec<Vec<u64>> {
            v.iter().map(|s| s.opens().to_vec()).collect()
        };
        assert_eq!(codes(&a), codes(&b));
        // by point count first
        for w in a.windows(2) {
            assert!(w[0].n_points() <= w[1].n_points());
        }
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(
            enumerate_spaces(7, false),
            Err(SpaceError::LimitExceeded { .. })
        ));
    }

    #[test]
    fn canonical_labels_put_bottom_first() {
        for s in enumerate_spaces(4, true).unwrap() {
            assert_eq!(s.bottom(), Some(0));
        }
    }
}
