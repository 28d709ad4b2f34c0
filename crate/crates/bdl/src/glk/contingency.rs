//! Nonnegative integer `n × m` matrices with prescribed row and column sums.
//! They index the weight spaces `S^{(m)}(a)[b]` (rows are the exponent
//! vectors of the factors) and `S^{(n)}(b)[a]` (columns are).

use super::{BasisLabel, TLabel};

pub type Table = Vec<Vec<u32>>;

/// All tables with row sums `a` and column sums `b`, ascending in the
/// lexicographic order of the flattened rows.
pub fn contingency_tables(a: &[u32], b: &[u32]) -> Vec<Table> {
    let (n, m) = (a.len(), b.len());
    let mut out = Vec::new();
    if a.iter().sum::<u32>() != b.iter().sum::<u32>() {
        return out;
    }
    fn rec(a: &[u32], n: usize, m: usize, cells: &mut Vec<u32>, cols: &mut Vec<u32>, out: &mut Vec<Table>) {
        let pos = cells.len();
        if pos == n * m {
            if cols.iter().all(|&c| c == 0) {
                out.push(cells.chunks(m).map(|r| r.to_vec()).collect());
            }
            return;
        }
        let (i, j) = (pos / m, pos % m);
        let used: u32 = cells[i * m..].iter().sum();
        let left = a[i] - used;
        let (lo, hi) = if j + 1 == m {
            (left, left)
        } else {
            (0, left.min(cols[j]))
        };
        if lo > cols[j] {
            return;
        }
        for x in lo..=hi {
            cells.push(x);
            cols[j] -= x;
            rec(a, n, m, cells, cols, out);
            cols[j] += x;
            cells.pop();
        }
    }
    rec(a, n, m, &mut Vec::new(), &mut b.to_vec(), &mut out);
    out
}

/// Label in `S^{a_1}C^m ⊗ … ⊗ S^{a_n}C^m`: factor `i` has exponents row `i`.
pub fn row_label(t: &Table) -> TLabel {
    t.iter().map(|r| BasisLabel::Sym(r.clone())).collect()
}

/// Label in `S^{b_1}C^n ⊗ … ⊗ S^{b_m}C^n`: factor `j` has exponents column `j`.
pub fn col_label(t: &Table) -> TLabel {
    let m = t.first().map_or(0, |r| r.len());
    (0..m)
        .map(|j| BasisLabel::Sym(t.iter().map(|r| r[j]).collect()))
        .collect()
}
