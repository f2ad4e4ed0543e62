//! Words in the generators and elements in canonical normal form.
//!
//! Letters are 0-based generator indices internally; all text rendering and
//! parsing is 1-based, matching the file format.

use std::cmp::Ordering;
use std::fmt;

/// A finite sequence of generator indices. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = u8>>(letters: I) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn with_letter(&self, s: u8) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(s);
        Word(v)
    }

    /// Removes the two letters at `pos` and `pos + 1`.
    pub(crate) fn without_pair(&self, pos: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() - 2);
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&self.0[pos + 2..]);
        Word(v)
    }

    /// First position with two equal adjacent letters, if any.
    pub(crate) fn adjacent_pair(&self) -> Option<usize> {
        self.0.windows(2).position(|p| p[0] == p[1])
    }
}

/// ShortLex: shorter words first, ties broken lexicographically by index.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &s in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", s as usize + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// A group element, held as its ShortLex-least reduced word.
///
/// Elements are only constructed by normalization, so two elements are equal
/// in the group iff they compare equal here. The ordering is ShortLex on the
/// normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    nf: Word,
}

impl Element {
    pub(crate) fn from_normal_form(nf: Word) -> Self {
        Element { nf }
    }

    pub fn identity() -> Self {
        Element { nf: Word::empty() }
    }

    /// The ShortLex-least reduced expression.
    pub fn word(&self) -> &Word {
        &self.nf
    }

    /// Coxeter length l(w).
    pub fn len(&self) -> usize {
        self.nf.len()
    }

    pub fn is_identity(&self) -> bool {
        self.nf.is_empty()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nf.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.nf)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_orders_by_length_first() {
        let a = Word::from_letters([1]);
        let b = Word::from_letters([0, 1]);
        assert!(a < b);
        let c = Word::from_letters([0, 2]);
        assert!(b < c);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(Word::from_letters([0, 1, 0]).to_string(), "1 2 1");
        assert_eq!(Word::empty().to_string(), "");
        assert_eq!(Element::identity().to_string(), "e");
    }

    #[test]
    fn palindrome_and_reverse() {
        assert!(Word::from_letters([0, 1, 0]).is_palindrome());
        assert!(!Word::from_letters([0, 1]).is_palindrome());
        assert_eq!(Word::from_letters([0, 1]).reversed(), Word::from_letters([1, 0]));
        assert!(Word::empty().is_palindrome());
    }
}
