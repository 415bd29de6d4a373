//! Associated Laguerre polynomials by upward three-term recurrence.

/// `L^α_n(x)` via `(k+1) L_{k+1} = (2k + 1 + α − x) L_k − (k + α) L_{k−1}`.
pub fn generalized_laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L⁰_n(x)`.
pub fn laguerre(n: usize, x: f64) -> f64 {
    generalized_laguerre(n, 0.0, x)
}

/// `d/dx L⁰_n(x) = −L¹_{n−1}(x)`.
pub fn laguerre_derivative(n: usize, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -generalized_laguerre(n - 1, 1.0, x)
    }
}
