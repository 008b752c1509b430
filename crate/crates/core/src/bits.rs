//! Word-slice bitset helpers shared by the graph and the enumerators.

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub fn get(row: &[u64], i: usize) -> bool {
    row[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i >> 6] |= 1 << (i & 63);
}

#[inline]
pub fn clear(row: &mut [u64], i: usize) {
    row[i >> 6] &= !(1 << (i & 63));
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
pub fn count_and3(a: &[u64], b: &[u64], c: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| (x & y & z).count_ones() as usize)
        .sum()
}

/// Iterator over the set bits of a word slice, in increasing order.
pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> Ones<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        Ones {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + t);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

pub fn ones(words: &[u64]) -> Ones<'_> {
    Ones::new(words)
}

/// Bitset with bits `[from, n)` set.
pub fn range_from(n: usize, from: usize) -> Vec<u64> {
    let mut row = vec![0u64; words_for(n)];
    for i in from..n {
        set(&mut row, i);
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_crosses_word_boundaries() {
        let mut row = vec![0u64; 3];
        for i in [0, 63, 64, 100, 191] {
            set(&mut row, i);
        }
        assert_eq!(ones(&row).collect::<Vec<_>>(), vec![0, 63, 64, 100, 191]);
        assert_eq!(count(&row), 5);
        clear(&mut row, 64);
        assert!(!get(&row, 64));
    }

    #[test]
    fn range_from_sets_suffix() {
        let row = range_from(70, 65);
        assert_eq!(ones(&row).collect::<Vec<_>>(), vec![65, 66, 67, 68, 69]);
    }
}
