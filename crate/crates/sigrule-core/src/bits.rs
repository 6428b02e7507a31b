//! Packed bit columns used by [`crate::relation::Relation`].
//!
//! A column stores one bit per row in `u64` blocks. Conjunction counting is
//! an AND-fold plus popcount, so a support query touches `ceil(n/64)` words
//! per literal. Negated literals complement on the fly; the partial last
//! block is handled by masking the scratch word, never the stored columns.

/// One attribute column: row `i` is bit `i % 64` of block `i / 64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitColumn {
    blocks: Vec<u64>,
    len: usize,
}

impl BitColumn {
    pub fn zeros(len: usize) -> Self {
        BitColumn {
            blocks: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[inline]
    pub fn set(&mut self, row: usize) {
        debug_assert!(row < self.len);
        self.blocks[row / 64] |= 1u64 << (row % 64);
    }

    #[inline]
    pub fn get(&self, row: usize) -> bool {
        debug_assert!(row < self.len);
        self.blocks[row / 64] >> (row % 64) & 1 == 1
    }

    #[cfg(test)]
    pub fn count_ones(&self) -> u64 {
        self.blocks.iter().map(|b| b.count_ones() as u64).sum()
    }
}

/// Counts rows on which every `(column, wanted)` pair matches: `wanted =
/// true` keeps rows where the bit is set, `false` where it is clear. An
/// empty literal list counts every row.
pub(crate) fn count_matching(n: usize, literals: &[(&BitColumn, bool)]) -> u64 {
    let n_blocks = n.div_ceil(64);
    let mut total = 0u64;
    for block in 0..n_blocks {
        let mut word = block_mask(n, block);
        for (col, wanted) in literals {
            debug_assert_eq!(col.len, n);
            let w = col.blocks[block];
            word &= if *wanted { w } else { !w };
        }
        total += word.count_ones() as u64;
    }
    total
}

/// All-ones for a full block, trimmed for the final partial block.
#[inline]
fn block_mask(n: usize, block: usize) -> u64 {
    let used = n - block * 64;
    if used >= 64 {
        u64::MAX
    } else {
        (1u64 << used) - 1
    }
}
