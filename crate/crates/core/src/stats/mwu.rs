use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use super::StatsError;

/// Combined sample sizes up to which tie-free data use the exact distribution.
pub const EXACT_MAX_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MwuResult {
    /// U statistic of the first sample.
    pub u: f64,
    /// Two-sided p-value.
    pub p: f64,
    pub exact: bool,
}

/// Average ranks (1-based) of `values`, plus the tie term sum(t^3 - t).
fn ranks(values: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = avg;
        }
        let t = (j - i) as f64;
        ties += t * t * t - t;
        i = j;
    }
    (ranks, ties)
}

/// Number of orderings of `m` x's and `n` y's giving each value of U, 0..=m*n.
pub fn u_distribution(m: usize, n: usize) -> Vec<f64> {
    // f[i][j][u] = f[i-1][j][u-j] + f[i][j-1][u]
    let max = m * n;
    let mut prev: Vec<Vec<f64>> = vec![vec![0.0; max + 1]; n + 1];
    for row in prev.iter_mut() {
        row[0] = 1.0;
    }
    for _ in 1..=m {
        let mut cur: Vec<Vec<f64>> = vec![vec![0.0; max + 1]; n + 1];
        cur[0][0] = 1.0;
        for j in 1..=n {
            for u in 0..=max {
                let from_x = if u >= j { prev[j][u - j] } else { 0.0 };
                cur[j][u] = from_x + cur[j - 1][u];
            }
        }
        prev = cur;
    }
    prev.swap_remove(n)
}

/// Two-sided Mann-Whitney U test of `x` against `y`.
///
/// Exact when the combined size is at most [`EXACT_MAX_N`] and there are no ties;
/// otherwise the normal approximation with tie and continuity corrections.
pub fn mann_whitney_u(x: &[f64], y: &[f64]) -> Result<MwuResult, StatsError> {
    if x.is_empty() || y.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let (n1, n2) = (x.len(), y.len());
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let (r, ties) = ranks(&pooled);
    let r1: f64 = r[..n1].iter().sum();
    let u1 = r1 - (n1 * (n1 + 1)) as f64 / 2.0;
    let nn = (n1 * n2) as f64;
    let u_big = u1.max(nn - u1);

    if n1 + n2 <= EXACT_MAX_N && ties == 0.0 {
        let dist = u_distribution(n1, n2);
        let total: f64 = dist.iter().sum();
        let k = u_big.round() as usize;
        let upper: f64 = dist[k..].iter().sum::<f64>() / total;
        return Ok(MwuResult {
            u: u1,
            p: (2.0 * upper).min(1.0),
            exact: true,
        });
    }

    let n = (n1 + n2) as f64;
    let mu = nn / 2.0;
    let var = nn / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    let p = if var <= 0.0 {
        1.0
    } else {
        let z = (u_big - mu - 0.5) / var.sqrt();
        let normal = Normal::standard();
        (2.0 * normal.sf(z)).min(1.0)
    };
    Ok(MwuResult {
        u: u1,
        p,
        exact: false,
    })
}
