//! Seeded progressive-edge-growth construction of regular codes.
//!
//! Used to produce stand-ins for published regular codes with the same length,
//! rate and degree profile when the original matrix file is not at hand.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::code::ParityCheckCode;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("N·dv = {0} does not equal M·dc = {1}")]
    EdgeCount(usize, usize),
    #[error("degree {0} exceeds the number of nodes on the other side")]
    Degree(usize),
    #[error("no admissible check after {0} attempts")]
    Exhausted(usize),
}

/// Builds an `(dv, dc)`-regular code with `n_vars` columns and `n_checks`
/// rows by progressive edge growth. Each new edge goes to a check that is as
/// far as possible from the variable in the current graph, preferring checks
/// of low current degree; remaining ties are broken by the seeded generator.
pub fn regular_peg(
    n_vars: usize,
    n_checks: usize,
    dv: usize,
    dc: usize,
    seed: u64,
) -> Result<ParityCheckCode, ConstructError> {
    if n_vars * dv != n_checks * dc {
        return Err(ConstructError::EdgeCount(n_vars * dv, n_checks * dc));
    }
    if dv > n_checks {
        return Err(ConstructError::Degree(dv));
    }
    if dc > n_vars {
        return Err(ConstructError::Degree(dc));
    }
    const ATTEMPTS: usize = 64;
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        if let Some(check_adj) = try_build(n_vars, n_checks, dv, dc, &mut rng) {
            return Ok(ParityCheckCode::from_checks(n_vars, check_adj)
                .expect("construction yields a consistent graph"));
        }
    }
    Err(ConstructError::Exhausted(ATTEMPTS))
}

fn try_build(
    n_vars: usize,
    n_checks: usize,
    dv: usize,
    dc: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Vec<usize>>> {
    let mut check_adj: Vec<Vec<usize>> = vec![Vec::with_capacity(dc); n_checks];
    let mut var_adj: Vec<Vec<usize>> = vec![Vec::with_capacity(dv); n_vars];
    let mut check_dist = vec![usize::MAX; n_checks];
    let mut var_seen = vec![false; n_vars];
    let mut queue = VecDeque::new();

    for n in 0..n_vars {
        for _ in 0..dv {
            // Breadth-first distances (in check layers) from `n`.
            check_dist.fill(usize::MAX);
            var_seen.fill(false);
            var_seen[n] = true;
            queue.clear();
            for &m in &var_adj[n] {
                check_dist[m] = 0;
                queue.push_back(m);
            }
            while let Some(m) = queue.pop_front() {
                for &v in &check_adj[m] {
                    if var_seen[v] {
                        continue;
                    }
                    var_seen[v] = true;
                    for &m2 in &var_adj[v] {
                        if check_dist[m2] == usize::MAX {
                            check_dist[m2] = check_dist[m] + 1;
                            queue.push_back(m2);
                        }
                    }
                }
            }

            let admissible = |m: usize| check_adj[m].len() < dc && !var_adj[n].contains(&m);
            let far = (0..n_checks)
                .filter(|&m| admissible(m))
                .map(|m| check_dist[m])
                .max()?;
            let lightest = (0..n_checks)
                .filter(|&m| admissible(m) && check_dist[m] == far)
                .map(|m| check_adj[m].len())
                .min()?;
            let candidates: Vec<usize> = (0..n_checks)
                .filter(|&m| {
                    admissible(m) && check_dist[m] == far && check_adj[m].len() == lightest
                })
                .collect();
            let m = candidates[rng.random_range(0..candidates.len())];
            check_adj[m].push(n);
            var_adj[n].push(m);
        }
    }
    for vars in &mut check_adj {
        vars.sort_unstable();
    }
    Some(check_adj)
}

/// Length of the shortest cycle through the graph, or `None` if acyclic.
pub fn girth(code: &ParityCheckCode) -> Option<usize> {
    // BFS from every variable; the shortest cycle closes at the first
    // non-tree edge. Lengths are counted in graph edges.
    let n = code.n_vars();
    let m = code.n_checks();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n + m];
    let mut parent = vec![usize::MAX; n + m];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        queue.clear();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let neighbours: Vec<usize> = if u < n {
                code.var_checks(u).iter().map(|&c| n + c).collect()
            } else {
                code.check_vars(u - n).to_vec()
            };
            for w in neighbours {
                if w == parent[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_regular_code() {
        let c = regular_peg(96, 48, 3, 6, 7).unwrap();
        assert!(c.validate().is_empty());
        assert!((0..96).all(|n| c.var_deg(n) == 3));
        assert!((0..48).all(|m| c.check_deg(m) == 6));
        assert!(girth(&c).unwrap() >= 6);
    }

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(regular_peg(60, 30, 3, 6, 1), regular_peg(60, 30, 3, 6, 1));
    }

    #[test]
    fn rejects_inconsistent_degrees() {
        assert_eq!(
            regular_peg(10, 5, 3, 5, 0),
            Err(ConstructError::EdgeCount(30, 25))
        );
    }

    #[test]
    fn girth_of_small_graphs() {
        // Two variables sharing two checks form a 4-cycle.
        let c = ParityCheckCode::from_checks(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(girth(&c), Some(4));
        let tree = ParityCheckCode::from_checks(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(girth(&tree), None);
    }
}
