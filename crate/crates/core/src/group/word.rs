use std::fmt;

/// A generator or the inverse of one. Ordered by `(generator, inverse)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u16) << 1 | inverse as u16)
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u16)
    }

    /// Dense index in `0..2k`, used to address per-letter tables.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

/// A freely reduced word over generators and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Free reduction: cancels adjacent letter–inverse pairs.
    pub fn reduce(letters: &[Letter]) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Wraps letters already known to be reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inverse()));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Renders the word with generator labels, `^-1` marking inverses and
    /// `.` between letters; the empty word is `id`.
    pub fn render(&self, labels: &[String]) -> String {
        if self.0.is_empty() {
            return "id".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                let base = labels.get(l.generator()).map(String::as_str).unwrap_or("?");
                if l.is_inverse() {
                    format!("{base}^-1")
                } else {
                    base.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..26).map(|k| ((b'a' + k as u8) as char).to_string()).collect();
        write!(f, "{}", self.render(&labels))
    }
}

/// Number of reduced words of length at most `max_len` in a free group of
/// rank `rank`: `1 + Σ_{n=1}^{L} 2k(2k-1)^{n-1}`.
pub fn reduced_word_count(rank: usize, max_len: usize) -> u64 {
    let mut total = 1u64;
    let mut level = 2 * rank as u64;
    for _ in 0..max_len {
        total += level;
        level *= 2 * rank as u64 - 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels_pairs() {
        let g = Letter::new(0, false);
        assert!(Word::reduce(&[g, g.inverse()]).is_empty());
        let h = Letter::new(1, false);
        let w = Word::reduce(&[g, h, h.inverse(), g]);
        assert_eq!(w.letters(), &[g, g]);
    }

    #[test]
    fn letter_order_and_codes() {
        let a = Letter::new(0, false);
        let ai = Letter::new(0, true);
        let b = Letter::new(1, false);
        assert!(a < ai && ai < b);
        assert_eq!(b.code(), 2);
        assert_eq!(ai.inverse(), a);
    }

    #[test]
    fn rendering() {
        let labels = vec!["A".to_string(), "B".to_string()];
        let w = Word::reduce(&[Letter::new(0, false), Letter::new(1, true)]);
        assert_eq!(w.render(&labels), "A.B^-1");
        assert_eq!(w.inverse().render(&labels), "B.A^-1");
        assert_eq!(Word::empty().render(&labels), "id");
    }

    #[test]
    fn free_group_word_counts() {
        // rank 2: 2·3^L - 1
        for l in 0..8 {
            assert_eq!(reduced_word_count(2, l), 2 * 3u64.pow(l as u32) - 1);
        }
    }
}
