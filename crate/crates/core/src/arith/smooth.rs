use super::primes::PrimeTable;

/// The `p_n`-smooth integers `j <= limit` in increasing order.
pub fn smooth_numbers(n: usize, limit: u64) -> Vec<u64> {
    let table = PrimeTable::first(n);
    let mut out = vec![1u64];
    for &p in &table.primes()[..n] {
        let mut next = Vec::with_capacity(out.len() * 2);
        for &x in &out {
            let mut y = x;
            loop {
                next.push(y);
                match y.checked_mul(p) {
                    Some(z) if z <= limit => y = z,
                    _ => break,
                }
            }
        }
        out = next;
    }
    out.retain(|&j| j <= limit);
    out.sort_unstable();
    out
}

/// `Σ j^{-σ}` over `p_n`-smooth `j <= limit`.
///
/// Terms are added in increasing order of `j`, so the value is monotone in
/// `limit` even in floating point.
pub fn smooth_partial_sum(n: usize, sigma: f64, limit: u64) -> f64 {
    if n == 0 || limit == 0 {
        return if limit >= 1 { 1.0 } else { 0.0 };
    }
    smooth_numbers(n, limit)
        .into_iter()
        .map(|j| (j as f64).powf(-sigma))
        .sum()
}

/// `Π_{i ≤ n} (1 - p_i^{-σ})^{-1}`.
pub fn euler_product(n: usize, sigma: f64) -> f64 {
    let table = PrimeTable::first(n);
    table.primes()[..n]
        .iter()
        .map(|&p| 1.0 / (1.0 - (p as f64).powf(-sigma)))
        .product()
}
