//! Hopcroft-Karp maximum bipartite matching on adjacency lists.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum matching between `left.len()` left vertices and `right_count`
/// right vertices. `left[i]` lists the right neighbours of left vertex `i`.
///
/// Returns `mate[i]`, the right vertex matched to left vertex `i`, if any.
pub fn max_matching(left: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let n = left.len();
    let mut mate_l = vec![FREE; n];
    let mut mate_r = vec![FREE; right_count];
    let mut dist = vec![0usize; n];

    loop {
        // BFS layers from free left vertices.
        let mut queue = VecDeque::new();
        for i in 0..n {
            if mate_l[i] == FREE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &r in &left[i] {
                let j = mate_r[r];
                if j == FREE {
                    found = true;
                } else if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        if !found {
            break;
        }
        for i in 0..n {
            if mate_l[i] == FREE {
                augment(i, left, &mut mate_l, &mut mate_r, &mut dist);
            }
        }
    }
    mate_l.into_iter().map(|m| (m != FREE).then_some(m)).collect()
}

fn augment(i: usize, left: &[Vec<usize>], mate_l: &mut [usize], mate_r: &mut [usize], dist: &mut [usize]) -> bool {
    for &r in &left[i] {
        let j = mate_r[r];
        if j == FREE || (dist[j] == dist[i] + 1 && augment(j, left, mate_l, mate_r, dist)) {
            mate_l[i] = r;
            mate_r[r] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn size(m: &[Option<usize>]) -> usize {
        m.iter().flatten().count()
    }

    #[test]
    fn perfect_and_deficient() {
        let left = vec![vec![0, 1], vec![0], vec![1, 2]];
        let m = max_matching(&left, 3);
        assert_eq!(size(&m), 3);
        assert_eq!(m[1], Some(0));

        let left = vec![vec![0], vec![0], vec![0]];
        assert_eq!(size(&max_matching(&left, 1)), 1);
        assert_eq!(size(&max_matching(&[], 4)), 0);
    }

    #[test]
    fn matches_brute_force_on_small_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let l = rng.random_range(0..6);
            let r = rng.random_range(1..6);
            let left: Vec<Vec<usize>> = (0..l)
                .map(|_| (0..r).filter(|_| rng.random_bool(0.4)).collect())
                .collect();
            let m = max_matching(&left, r);
            // validity
            let mut used = vec![false; r];
            for (i, mate) in m.iter().enumerate() {
                if let Some(x) = *mate {
                    assert!(left[i].contains(&x) && !used[x]);
                    used[x] = true;
                }
            }
            assert_eq!(size(&m), brute(&left, 0, &mut vec![false; r]));
        }
    }

    fn brute(left: &[Vec<usize>], i: usize, used: &mut Vec<bool>) -> usize {
        if i == left.len() {
            return 0;
        }
        let mut best = brute(left, i + 1, used);
        for &x in &left[i] {
            if !used[x] {
                used[x] = true;
                best = best.max(1 + brute(left, i + 1, used));
                used[x] = false;
            }
        }
        best
    }
}
