use rand::{Rng, RngCore};

use crate::{Coalition, Error, Result};

/// Uniform random `k`-subset of `{0, .., n-1} \ {excluded}`.
///
/// Robert Floyd's selection over the `n-1` eligible slots, then the slots are
/// spread around the excluded index.
pub fn random_coalition_of_size<R: RngCore + ?Sized>(
    n: usize,
    k: usize,
    excluded: usize,
    rng: &mut R,
) -> Result<Coalition> {
    if n == 0 || n > crate::MAX_PLAYERS || excluded >= n {
        return Err(Error::invalid(format!(
            "excluded node {excluded} out of range for {n} players"
        )));
    }
    if k > n - 1 {
        return Err(Error::invalid(format!(
            "coalition size {k} exceeds the {} eligible players",
            n - 1
        )));
    }
    let slots = n - 1;
    let mut chosen = 0u64;
    for j in slots - k..slots {
        let t = rng.gen_range(0..=j);
        chosen |= if chosen & (1 << t) != 0 { 1 << j } else { 1 << t };
    }
    let low_mask = (1u64 << excluded) - 1;
    let low = chosen & low_mask;
    let high = (chosen & !low_mask).checked_shl(1).unwrap_or(0);
    Ok(Coalition::from_bits(low | high))
}

/// Uniform random nonempty subset of `{0, .., n-1}`, by rejecting the empty
/// draw of `n` fair bits.
pub fn random_nonempty_coalition<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Coalition {
    let full = Coalition::full(n).bits();
    loop {
        let bits = rng.next_u64() & full;
        if bits != 0 {
            return Coalition::from_bits(bits);
        }
    }
}
