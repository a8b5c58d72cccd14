//! Independent oracles shared by the integration tests: dense integer
//! grids, no series types.
#![allow(dead_code)]

use kkv_core::series::rational::binomial;

/// `q^{-1} prod (1-q^n)^{-20} (1-y q^n)^{-2} (1-q^n/y)^{-2}` on a dense grid:
/// `grid[j][d + off]` is the coefficient of `q^{j-1} y^d`.
pub fn inverse_delta_yq_oracle(h_max: usize) -> (Vec<Vec<i128>>, usize) {
    let off = h_max + 1;
    let width = 2 * off + 1;
    let mut grid = vec![vec![0i128; width]; h_max + 1];
    grid[0][off] = 1;
    // Multiply by 1/(1 - y^s q^n) repeatedly: c[j] += y^s c[j - n].
    let geometric = |grid: &mut Vec<Vec<i128>>, n: usize, s: i64| {
        for j in n..=h_max {
            for d in 0..width {
                let src = d as i64 - s;
                if (0..width as i64).contains(&src) {
                    let v = grid[j - n][src as usize];
                    grid[j][d] += v;
                }
            }
        }
    };
    for n in 1..=h_max {
        for _ in 0..20 {
            geometric(&mut grid, n, 0);
        }
        for _ in 0..2 {
            geometric(&mut grid, n, 1);
            geometric(&mut grid, n, -1);
        }
    }
    (grid, off)
}

/// Peel `p = sum_g a_g z^g` from the top using
/// `z^G = sum_i binom(2G, i) (-1)^i y^{G-i}`.
pub fn z_coefficients_oracle(row: &[i128], off: usize) -> Vec<i128> {
    let mut p = row.to_vec();
    let top = (0..p.len()).rev().find(|&i| p[i] != 0).map_or(0, |i| i - off);
    let mut out = vec![0i128; top + 1];
    for g in (0..=top).rev() {
        let a = p[off + g];
        out[g] = a;
        for i in 0..=2 * g {
            let b: i128 = binomial(2 * g as i64, i as i64).try_into().unwrap();
            let sgn = if i % 2 == 0 { 1 } else { -1 };
            p[off + g - i] -= a * b * sgn;
        }
    }
    assert!(p.iter().all(|&v| v == 0));
    out
}

/// `[q^j] prod (1-q^n)^{-24}` for `j <= n_max`, by repeated geometric
/// multiplication.
pub fn eta_power_oracle(n_max: usize) -> Vec<i128> {
    let mut c = vec![0i128; n_max + 1];
    c[0] = 1;
    for n in 1..=n_max {
        for _ in 0..24 {
            for j in n..=n_max {
                c[j] += c[j - n];
            }
        }
    }
    c
}
