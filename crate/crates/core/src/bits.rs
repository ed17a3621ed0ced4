//! Fixed-width bitsets used for copy-index sets in the hypergraph solvers.
//!
//! Every set lives over at most [`MAX_BITS`] positions, which comfortably
//! holds the copy counts reachable in practice (the number of copies of a
//! short cycle grows linearly in `n`). Keeping the width fixed makes the
//! search hot loops allocation-free.

/// Maximum number of positions a [`Bits`] can hold.
pub const MAX_BITS: usize = 256;

const WORDS: usize = MAX_BITS / 64;

/// A fixed-capacity bitset over `0..MAX_BITS`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    words: [u64; WORDS],
}

impl Bits {
    /// The empty set.
    #[must_use]
    pub fn empty() -> Self {
        Self::default()
    }

    /// The set `{0, 1, .., len-1}`. `len` must be at most [`MAX_BITS`].
    #[must_use]
    pub fn all_below(len: usize) -> Self {
        assert!(len <= MAX_BITS, "bitset capacity exceeded");
        let mut out = Self::default();
        for i in 0..len {
            out.insert(i);
        }
        out
    }

    /// Builds a set from indices. Indices must be below [`MAX_BITS`].
    #[must_use]
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut out = Self::default();
        for &i in indices {
            out.insert(i);
        }
        out
    }

    /// Inserts one position.
    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_BITS, "bitset capacity exceeded");
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    /// Removes one position.
    pub fn remove(&mut self, i: usize) {
        assert!(i < MAX_BITS, "bitset capacity exceeded");
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    /// Membership test.
    #[must_use]
    pub fn contains(&self, i: usize) -> bool {
        i < MAX_BITS && self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    /// Number of elements.
    #[must_use]
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True when no element is present.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Set union.
    #[must_use]
    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w |= o;
        }
        out
    }

    /// Set intersection.
    #[must_use]
    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w &= o;
        }
        out
    }

    /// Set difference `self \ other`.
    #[must_use]
    pub fn minus(&self, other: &Self) -> Self {
        let mut out = *self;
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w &= !o;
        }
        out
    }

    /// `|self & other|` without materializing the intersection.
    #[must_use]
    pub fn intersect_count(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// True when `self` is a subset of `other`.
    #[must_use]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Smallest position in `0..len` missing from the set, if any.
    #[must_use]
    pub fn first_missing_below(&self, len: usize) -> Option<usize> {
        for i in 0..len {
            if !self.contains(i) {
                return Some(i);
            }
        }
        None
    }

    /// Ascending iterator over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..WORDS).flat_map(move |wi| {
            let mut w = self.words[wi];
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }

    /// Members collected into a sorted vector.
    #[must_use]
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_roundtrip() {
        let mut b = Bits::empty();
        b.insert(0);
        b.insert(63);
        b.insert(64);
        b.insert(255);
        assert_eq!(b.count(), 4);
        assert_eq!(b.to_vec(), vec![0, 63, 64, 255]);
        b.remove(64);
        assert!(!b.contains(64));
        assert_eq!(b.count(), 3);
    }

    #[test]
    fn set_algebra_across_word_boundaries() {
        let a = Bits::from_indices(&[1, 63, 64, 200]);
        let b = Bits::from_indices(&[63, 64, 65]);
        assert_eq!(a.intersect(&b).to_vec(), vec![63, 64]);
        assert_eq!(a.intersect_count(&b), 2);
        assert_eq!(a.union(&b).count(), 5);
        assert_eq!(a.minus(&b).to_vec(), vec![1, 200]);
        assert!(Bits::from_indices(&[63, 64]).is_subset(&a));
        assert!(!a.is_subset(&b));
    }

    #[test]
    fn first_missing_walks_past_full_prefix() {
        let b = Bits::all_below(5);
        assert_eq!(b.first_missing_below(5), None);
        assert_eq!(b.first_missing_below(6), Some(5));
        let mut c = b;
        c.remove(2);
        assert_eq!(c.first_missing_below(5), Some(2));
    }
}
