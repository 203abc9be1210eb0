use super::CommutatorExpr;

/// Hall basic commutators of weight exactly `n` on `x1..xr`.
///
/// Ordering: the variables come first in index order, then basic
/// commutators by weight; within one weight, by the positions of the
/// (left, right) pair. `[u, v]` is basic when `u`, `v` are basic, `u > v`,
/// and if `u = [s, t]` then `t <= v`.
pub fn hall_basic_commutators(r: usize, n: usize) -> Vec<CommutatorExpr> {
    assert!(r >= 1 && n >= 1, "hall basis needs r >= 1 and n >= 1");
    // (expr, weight, right factor position if a commutator)
    let mut basis: Vec<(CommutatorExpr, usize, Option<usize>)> =
        (1..=r as u32).map(|i| (CommutatorExpr::var(i), 1, None)).collect();
    let mut by_weight: Vec<Vec<usize>> = vec![Vec::new(), (0..r).collect()];

    for w in 2..=n {
        let mut fresh = Vec::new();
        for wv in 1..w {
            let wu = w - wv;
            for &u in &by_weight[wu] {
                for &v in &by_weight[wv] {
                    if u <= v {
                        continue;
                    }
                    if let Some(t) = basis[u].2 {
                        if t > v {
                            continue;
                        }
                    }
                    fresh.push((u, v));
                }
            }
        }
        fresh.sort_unstable();
        let mut ids = Vec::with_capacity(fresh.len());
        for (u, v) in fresh {
            let expr = CommutatorExpr::commutator(basis[u].0.clone(), basis[v].0.clone());
            ids.push(basis.len());
            basis.push((expr, w, Some(v)));
        }
        by_weight.push(ids);
    }

    by_weight[n].iter().map(|&i| basis[i].0.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(r: usize, n: usize) -> Vec<String> {
        hall_basic_commutators(r, n).iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn small_two_generator_cases() {
        assert_eq!(names(2, 1), ["x1", "x2"]);
        assert_eq!(names(2, 2), ["[x2,x1]"]);
        assert_eq!(names(2, 3), ["[x2,x1,x1]", "[x2,x1,x2]"]);
    }

    #[test]
    fn weights_are_exact() {
        for e in hall_basic_commutators(3, 5) {
            assert_eq!(e.formal_weight(), 5);
        }
    }
}
