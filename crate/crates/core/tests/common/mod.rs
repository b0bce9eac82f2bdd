#![allow(dead_code)]

use cs_crystal::rootsys::{lambda_from_fundamental, GLWeight};

/// Every semistandard filling of `parts` with entries `1..=n`, by direct
/// backtracking over cells in row-major order.
pub fn brute_force_ssyt(parts: &[usize], n: u32) -> Vec<Vec<Vec<u32>>> {
    let parts: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
    let mut rows: Vec<Vec<u32>> = parts.iter().map(|&p| vec![0; p]).collect();
    let mut out = Vec::new();
    fill(&parts, n, 0, 0, &mut rows, &mut out);
    out
}

fn fill(
    parts: &[usize],
    n: u32,
    r: usize,
    c: usize,
    rows: &mut Vec<Vec<u32>>,
    out: &mut Vec<Vec<Vec<u32>>>,
) {
    if r == parts.len() {
        out.push(rows.clone());
        return;
    }
    let (nr, nc) = if c + 1 == parts[r] {
        (r + 1, 0)
    } else {
        (r, c + 1)
    };
    let left = if c > 0 { rows[r][c - 1] } else { 1 };
    let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
    for v in left.max(above)..=n {
        rows[r][c] = v;
        fill(parts, n, nr, nc, rows, out);
    }
}

/// `prod_{i<j} (l_i - l_j + j - i) / (j - i)`.
pub fn weyl_dimension(parts: &[i64]) -> u64 {
    let n = parts.len();
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..n {
        for j in i + 1..n {
            num *= (parts[i] - parts[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    (num / den) as u64
}

/// Weights whose identity is checked exhaustively: `k omega_1` for `k <= 3`
/// at rank 1, `c_1 omega_1 + c_2 omega_2` with `c_i <= 2` at rank 2, and a
/// handful at rank 3.
pub fn identity_suite() -> Vec<(usize, GLWeight)> {
    let mut coeffs: Vec<(usize, Vec<i64>)> = (0..=3).map(|k| (1, vec![k])).collect();
    for a in 0..=2 {
        for b in 0..=2 {
            coeffs.push((2, vec![a, b]));
        }
    }
    for c in [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1]] {
        coeffs.push((3, c.to_vec()));
    }
    coeffs
        .into_iter()
        .map(|(r, c)| (r, lambda_from_fundamental(&c, r).unwrap()))
        .collect()
}
