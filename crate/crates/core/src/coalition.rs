use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Largest supported player count; coalitions are single 64-bit words.
pub const MAX_PLAYERS: usize = 64;

/// A set of players (graph nodes) stored as a bit mask over indices `0..64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The grand coalition `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(node: usize) -> Self {
        Coalition(1u64 << node)
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, node: usize) -> bool {
        node < 64 && self.0 & (1u64 << node) != 0
    }

    #[inline]
    #[must_use]
    pub const fn with(self, node: usize) -> Self {
        Coalition(self.0 | (1u64 << node))
    }

    #[inline]
    #[must_use]
    pub const fn without(self, node: usize) -> Self {
        Coalition(self.0 & !(1u64 << node))
    }

    #[inline]
    pub const fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Coalition) -> Self {
        Coalition(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Coalition) -> Self {
        Coalition(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: Coalition) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member index.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// True if every member index is below `n`.
    #[inline]
    pub const fn fits(self, n: usize) -> bool {
        self.is_subset(Coalition::full(n))
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }
}

impl FromIterator<usize> for Coalition {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(Coalition::EMPTY, Coalition::with)
    }
}

impl IntoIterator for Coalition {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`Coalition`].
#[derive(Clone, Debug)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let node = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(node)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let len = self.0.count_ones() as usize;
        (len, Some(len))
    }
}

impl ExactSizeIterator for Members {}

impl BitOr for Coalition {
    type Output = Coalition;
    fn bitor(self, rhs: Coalition) -> Coalition {
        self.union(rhs)
    }
}

impl BitAnd for Coalition {
    type Output = Coalition;
    fn bitand(self, rhs: Coalition) -> Coalition {
        self.intersection(rhs)
    }
}

impl Sub for Coalition {
    type Output = Coalition;
    fn sub(self, rhs: Coalition) -> Coalition {
        self.difference(rhs)
    }
}

impl Not for Coalition {
    type Output = Coalition;
    fn not(self) -> Coalition {
        Coalition(!self.0)
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, node) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{node}")?;
        }
        write!(f, "}}")
    }
}

/// Iterates all `k`-element subsets of `{0, .., n-1}` in increasing numeric
/// order (Gosper's hack).
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Coalition> {
    let limit = Coalition::full(n).bits();
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some(Coalition::full(k).bits())
    };
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            let c = current & current.wrapping_neg();
            let r = current.checked_add(c);
            match r {
                Some(r) if r != 0 => {
                    let candidate = (((r ^ current) >> 2) / c) | r;
                    (candidate & !limit == 0).then_some(candidate)
                }
                _ => None,
            }
        };
        Some(Coalition(current))
    })
}
