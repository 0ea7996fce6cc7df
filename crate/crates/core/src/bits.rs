//! Word-packed bit vectors: the storage primitive behind ring
//! polynomials, graph labelings and parity-check matrix rows.

const WORD: usize = 64;

/// Fixed-length bit vector packed into `u64` words.
///
/// Bits past `len` in the last word are kept zero, so equality and
/// popcounts can work on whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn new(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(WORD)] }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    /// Cyclic left rotation within the vector: bit `p` moves to
    /// `(p + k) % len`.
    pub fn rotl(&self, k: usize) -> Self {
        let n = self.len;
        assert!(n > 0, "cannot rotate an empty vector");
        let k = k % n;
        if k == 0 {
            return self.clone();
        }
        let mut out = self.shifted_left(k);
        out.xor_assign(&self.shifted_right(n - k));
        out
    }

    /// Logical shift towards higher indices; bits pushed past `len` are
    /// dropped.
    fn shifted_left(&self, k: usize) -> Self {
        let mut out = BitVec::new(self.len);
        let (ws, bs) = (k / WORD, k % WORD);
        for w in (ws..out.words.len()).rev() {
            let mut v = self.words[w - ws] << bs;
            if bs > 0 && w > ws {
                v |= self.words[w - ws - 1] >> (WORD - bs);
            }
            out.words[w] = v;
        }
        out.mask_tail();
        out
    }

    /// Logical shift towards lower indices.
    fn shifted_right(&self, k: usize) -> Self {
        let mut out = BitVec::new(self.len);
        let (ws, bs) = (k / WORD, k % WORD);
        for w in 0..out.words.len().saturating_sub(ws) {
            let mut v = self.words[w + ws] >> bs;
            if bs > 0 && w + ws + 1 < self.words.len() {
                v |= self.words[w + ws + 1] << (WORD - bs);
            }
            out.words[w] = v;
        }
        out
    }

    fn mask_tail(&mut self) {
        let used = self.len % WORD;
        if used > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_pattern(len: usize, f: impl Fn(usize) -> bool) -> BitVec {
        let mut v = BitVec::new(len);
        for i in 0..len {
            v.set(i, f(i));
        }
        v
    }

    #[test]
    fn set_get_roundtrip() {
        let mut v = BitVec::new(130);
        for i in [0, 1, 63, 64, 65, 127, 128, 129] {
            assert!(!v.get(i));
            v.set(i, true);
            assert!(v.get(i));
        }
        assert_eq!(v.count_ones(), 8);
        v.set(64, false);
        assert!(!v.get(64));
        assert_eq!(v.count_ones(), 7);
    }

    #[test]
    fn ones_are_sorted_and_complete() {
        let v = from_pattern(200, |i| i % 7 == 3);
        let got: Vec<usize> = v.ones().collect();
        let want: Vec<usize> = (0..200).filter(|i| i % 7 == 3).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn xor_twice_is_identity() {
        let a = from_pattern(97, |i| i % 3 == 0);
        let b = from_pattern(97, |i| i % 5 == 1);
        let mut c = a.clone();
        c.xor_assign(&b);
        c.xor_assign(&b);
        assert_eq!(c, a);
    }

    #[test]
    fn rotl_matches_naive_for_all_shifts() {
        // Lengths straddling word boundaries catch carry mistakes.
        for len in [1, 5, 63, 64, 65, 101, 128, 130] {
            let v = from_pattern(len, |i| (i * i + 3 * i) % 7 < 3);
            for k in 0..len {
                let fast = v.rotl(k);
                let naive = from_pattern(len, |i| v.get((i + len - k % len) % len));
                assert_eq!(fast, naive, "len={len} k={k}");
            }
        }
    }

    #[test]
    fn rotl_by_len_is_identity() {
        let v = from_pattern(77, |i| i % 2 == 0);
        assert_eq!(v.rotl(77), v);
        assert_eq!(v.rotl(0), v);
    }

    #[test]
    #[should_panic]
    fn out_of_range_get_panics() {
        BitVec::new(10).get(10);
    }
}
