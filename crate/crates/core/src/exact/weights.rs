//! Combinatorial weights as reals, from a Pascal triangle up to 64.

use std::sync::OnceLock;

use crate::MAX_PLAYERS;

const ROWS: usize = MAX_PLAYERS + 1;

fn pascal() -> &'static [[f64; ROWS]; ROWS] {
    static TABLE: OnceLock<Box<[[f64; ROWS]; ROWS]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0.0f64; ROWS]; ROWS]);
        for n in 0..ROWS {
            t[n][0] = 1.0;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0.0 };
            }
        }
        t
    })
}

#[inline]
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        0.0
    } else {
        pascal()[n][k]
    }
}

/// `k! (n-k-1)! / n!`: probability that a fixed player is preceded by one
/// particular `k`-coalition in a uniform random ordering of `n` players.
#[inline]
pub fn shapley_weight(n: usize, k: usize) -> f64 {
    debug_assert!(k < n);
    1.0 / (n as f64 * binomial(n - 1, k))
}

/// `(a-1)! b! / (a+b)!` for a connected coalition of size `a` with `b`
/// neighbours, credited to each member.
#[inline]
pub fn member_weight(size: usize, boundary: usize) -> f64 {
    debug_assert!(size >= 1);
    1.0 / (size as f64 * binomial(size + boundary, size))
}

/// `a! (b-1)! / (a+b)!`, charged to each neighbour.
#[inline]
pub fn neighbour_weight(size: usize, boundary: usize) -> f64 {
    debug_assert!(boundary >= 1);
    1.0 / (boundary as f64 * binomial(size + boundary, size))
}
