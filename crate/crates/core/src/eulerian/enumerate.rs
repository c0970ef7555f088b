//! Eulerian subdigraph counting by walking every arc subset in Gray-code order.

use rayon::prelude::*;

/// High arc bits fixed per parallel task.
const SPLIT_BITS: usize = 8;

/// `(even, odd)` counts of arc subsets that are balanced at every vertex.
pub(crate) fn count_balanced_subsets(n: usize, arcs: &[(usize, usize)]) -> (u64, u64) {
    let m = arcs.len();
    assert!(m < 64, "subset enumeration over {m} arcs");
    let high = m.saturating_sub(16).min(SPLIT_BITS);
    let low = m - high;
    let tasks: Vec<u64> = (0..1u64 << high).collect();
    let per_task = |prefix: u64| {
        let mut balance = vec![0i32; n];
        let mut unbalanced = 0usize;
        let mut size = 0u32;
        let toggle =
            |arc: (usize, usize), add: bool, balance: &mut [i32], unbalanced: &mut usize| {
                let delta = if add { 1 } else { -1 };
                for (v, d) in [(arc.0, delta), (arc.1, -delta)] {
                    let before = balance[v];
                    balance[v] += d;
                    match (before == 0, balance[v] == 0) {
                        (true, false) => *unbalanced += 1,
                        (false, true) => *unbalanced -= 1,
                        _ => {}
                    }
                }
            };
        for b in 0..high {
            if prefix >> b & 1 == 1 {
                toggle(arcs[low + b], true, &mut balance, &mut unbalanced);
                size += 1;
            }
        }
        let (mut even, mut odd) = (0u64, 0u64);
        let mut record = |unbalanced: usize, size: u32| {
            if unbalanced == 0 {
                if size.is_multiple_of(2) {
                    even += 1;
                } else {
                    odd += 1;
                }
            }
        };
        record(unbalanced, size);
        let mut gray = 0u64;
        for step in 1..1u64 << low {
            let bit = step.trailing_zeros() as usize;
            gray ^= 1 << bit;
            let add = gray >> bit & 1 == 1;
            toggle(arcs[bit], add, &mut balance, &mut unbalanced);
            if add {
                size += 1;
            } else {
                size -= 1;
            }
            record(unbalanced, size);
        }
        (even, odd)
    };
    tasks
        .into_par_iter()
        .map(per_task)
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct definition, no incremental bookkeeping.
    fn naive(n: usize, arcs: &[(usize, usize)]) -> (u64, u64) {
        let (mut even, mut odd) = (0, 0);
        for mask in 0u64..1 << arcs.len() {
            let mut bal = vec![0i64; n];
            for (i, &(t, h)) in arcs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    bal[t] += 1;
                    bal[h] -= 1;
                }
            }
            if bal.iter().all(|&b| b == 0) {
                if mask.count_ones() % 2 == 0 {
                    even += 1;
                } else {
                    odd += 1;
                }
            }
        }
        (even, odd)
    }

    #[test]
    fn matches_naive_scan() {
        let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (2, vec![(0, 1)]),
            (3, vec![(0, 1), (1, 2), (2, 0)]),
            (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
            (4, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 1), (2, 3)]),
        ];
        for (n, arcs) in cases {
            assert_eq!(count_balanced_subsets(n, &arcs), naive(n, &arcs));
        }
    }

    #[test]
    fn split_path_agrees_with_naive() {
        // 18 arcs so that the parallel prefix split is exercised.
        let n = 6;
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && (i + 2 * j) % 3 != 0 && arcs.len() < 18 {
                    arcs.push((i, j));
                }
            }
        }
        assert_eq!(arcs.len(), 18);
        assert_eq!(count_balanced_subsets(n, &arcs), naive(n, &arcs));
    }
}
