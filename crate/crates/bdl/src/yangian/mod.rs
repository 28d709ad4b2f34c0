//! Yangian `Y(gl_k)`: the `T`-matrix on tensor products of evaluation
//! modules, quantum minors, the Bethe subalgebra generators `B_l(u, C)` and
//! the generating operator `D(C) = Σ (−1)^l B_l(u, C) τ^{k−l}`.

pub mod finite;
pub mod matpoly;
pub mod words;

pub use finite::{build_t, check_commutativity, k_subsets, BetheWeights, CommutativityReport, TMatrix};
pub use matpoly::{MatPoly, RationalMat};
pub use words::TWords;

/// All permutations of `0..k` in lexicographic order with their signs.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        let inv = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .filter(|&(a, b)| p[a] > p[b])
            .count();
        out.push((p.clone(), if inv % 2 == 0 { 1 } else { -1 }));
        // next permutation
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_signs() {
        let ps = permutations(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert_eq!(ps[1], (vec![0, 2, 1], -1));
        assert_eq!(permutations(0), vec![(vec![], 1)]);
    }
}
