#![allow(dead_code)]

pub mod golden;

/// Two-sided p by listing every split of the pooled sample.
pub fn enumerated_p(x: &[f64], y: &[f64]) -> f64 {
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let n = pooled.len();
    let u_of = |mask: u32| -> f64 {
        let mut u = 0.0;
        for i in (0..n).filter(|i| mask & (1 << i) != 0) {
            for j in (0..n).filter(|j| mask & (1 << j) == 0) {
                if pooled[i] > pooled[j] {
                    u += 1.0;
                }
            }
        }
        u
    };
    let u1 = u_of((1 << x.len()) - 1);
    let big = u1.max((x.len() * y.len()) as f64 - u1);
    let (mut total, mut extreme) = (0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == x.len() {
            total += 1;
            extreme += u64::from(u_of(mask) >= big);
        }
    }
    (2.0 * extreme as f64 / total as f64).min(1.0)
}
