//! Binomials, colex ranking and fixed-size subset enumeration on `u64` masks.
//!
//! Bit `i` of a mask stands for vertex `i + 1`. For sets of equal size the
//! numeric order of masks is exactly colex order, so sorting masks sorts sets
//! colexicographically.

const TABLE_SIZE: usize = 65;

const fn pascal() -> [[u64; TABLE_SIZE]; TABLE_SIZE] {
    let mut t = [[0u64; TABLE_SIZE]; TABLE_SIZE];
    let mut n = 0;
    while n < TABLE_SIZE {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1].saturating_add(t[n - 1][k]);
            k += 1;
        }
        n += 1;
    }
    t
}

static BINOMIAL: [[u64; TABLE_SIZE]; TABLE_SIZE] = pascal();

/// `C(n, k)`, zero when `k > n`. Saturates at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    if n < TABLE_SIZE {
        return BINOMIAL[n][k];
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Colex rank of a set among all sets of the same size.
pub fn colex_rank(mut mask: u64) -> u64 {
    let mut rank = 0;
    let mut i = 1;
    while mask != 0 {
        let p = mask.trailing_zeros() as usize;
        rank += BINOMIAL[p][i];
        mask &= mask - 1;
        i += 1;
    }
    rank
}

/// Inverse of [`colex_rank`] for sets of size `k`.
pub fn colex_unrank(mut rank: u64, k: usize) -> u64 {
    let mut mask = 0u64;
    let mut p = 64usize;
    for i in (1..=k).rev() {
        // largest p with C(p, i) <= rank
        p -= 1;
        while BINOMIAL[p][i] > rank {
            p -= 1;
        }
        rank -= BINOMIAL[p][i];
        mask |= 1 << p;
    }
    mask
}

/// Low `n` bits set.
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All `k`-subsets of `{0, …, n-1}` in colex order (Gosper's hack).
#[derive(Debug, Clone)]
pub struct KSubsets {
    next: Option<u128>,
    limit: u128,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        let next = if k > n { None } else { Some((1u128 << k) - 1) };
        KSubsets {
            next,
            limit: 1u128 << n,
        }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let x = self.next?;
        if x >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(x as u64)
    }
}

/// Scatter the low bits of `bits` onto the set bits of `mask`, lowest first.
#[inline]
pub fn deposit(mut bits: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    while bits != 0 && mask != 0 {
        let low = mask & mask.wrapping_neg();
        if bits & 1 != 0 {
            out |= low;
        }
        bits >>= 1;
        mask ^= low;
    }
    out
}

/// All `k`-subsets of the set `mask`, in colex order.
pub fn subsets_of(mask: u64, k: usize) -> impl Iterator<Item = u64> {
    KSubsets::new(mask.count_ones() as usize, k).map(move |b| deposit(b, mask))
}
