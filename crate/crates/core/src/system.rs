//! Coxeter systems: a symmetric bond matrix over a finite generating set.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::reflection::Reflection;
use crate::word::{Element, Word};

/// Largest supported rank. Keeps letters in a byte and matrices tiny; the
/// word-problem engine is meant for desk-scale ranks anyway.
pub const MAX_RANK: usize = 64;

/// Resource caps. Braid closures and element enumerations fail loudly with a
/// resource error instead of hanging on infinite groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of words in one braid closure.
    pub max_closure: usize,
    /// Maximum number of elements enumerated in one ball.
    pub max_ball: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_closure: 1_000_000, max_ball: 100_000 }
    }
}

/// Memo tables. All computations are pure functions of the system, so cached
/// results never invalidate; locks only guard concurrent insertion.
#[derive(Default)]
pub(crate) struct Caches {
    /// (reduced normal form, appended letter) -> normal form of the product.
    pub(crate) append: RwLock<HashMap<(Word, u8), Word>>,
    /// normal form -> palindrome certificate if the element is a reflection.
    pub(crate) reflection: RwLock<HashMap<Word, Option<Word>>>,
    /// normal form -> (recursive reflection length, first witness factor).
    pub(crate) tlen_recursive: RwLock<HashMap<Word, (u32, Option<Word>)>>,
    /// (normal form, reflection bound, k) -> is the element a product of
    /// exactly k reflections of length <= bound?
    pub(crate) tlen_reach: RwLock<HashMap<(Word, u32, u32), bool>>,
    /// max length -> reflections of at most that length, sorted.
    pub(crate) reflections: RwLock<HashMap<u32, Arc<Vec<Reflection>>>>,
    /// Full group when it could be enumerated under the ball cap.
    pub(crate) full_group: OnceLock<Option<Arc<BTreeSet<Element>>>>,
}

/// A Coxeter system: rank, bond matrix, optional generator names.
///
/// Bond orders are stored with `0` encoding an infinite bond, mirroring the
/// file format. The struct also owns the memo caches, so cloning is
/// deliberately not provided; share a system by reference.
pub struct CoxeterSystem {
    rank: usize,
    bonds: Vec<u32>,
    names: Option<Vec<String>>,
    limits: Limits,
    pub(crate) caches: Caches,
}

impl std::fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("rank", &self.rank)
            .field("bonds", &self.bonds)
            .field("names", &self.names)
            .finish_non_exhaustive()
    }
}

impl CoxeterSystem {
    /// Builds a system from a full bond matrix; entry 0 encodes an infinite
    /// bond order.
    pub fn new(rows: Vec<Vec<u32>>, names: Option<Vec<String>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidRank("0".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::RowLength { row: i + 1, got: row.len(), expected: rank });
            }
        }
        for i in 0..rank {
            if rows[i][i] != 1 {
                return Err(Error::BadDiagonal { i: i + 1 });
            }
            for j in 0..rank {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { row: i + 1, col: j + 1 });
                }
                if i != j && rows[i][j] == 1 {
                    return Err(Error::OffDiagonalOne { row: i + 1, col: j + 1 });
                }
            }
        }
        if let Some(ns) = &names {
            if ns.len() != rank {
                return Err(Error::NamesCount { got: ns.len(), expected: rank });
            }
            let mut seen = BTreeSet::new();
            for n in ns {
                if !seen.insert(n.as_str()) {
                    return Err(Error::DuplicateName(n.clone()));
                }
            }
        }
        Ok(CoxeterSystem {
            rank,
            bonds: rows.into_iter().flatten().collect(),
            names,
            limits: Limits::default(),
            caches: Caches::default(),
        })
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    /// Parses the group file format: comment lines start with `#`, the first
    /// significant line is the rank, the next `rank` lines are matrix rows
    /// (0 means an infinite bond), and an optional trailing
    /// `names: a b c ...` line labels the generators.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let rank_line = lines.next().ok_or(Error::MissingRank)?;
        let rank: usize = rank_line
            .parse()
            .map_err(|_| Error::InvalidRank(rank_line.to_string()))?;
        if rank == 0 {
            return Err(Error::InvalidRank(rank_line.to_string()));
        }
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }

        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(rank);
        for i in 0..rank {
            let Some(line) = lines.next() else {
                return Err(Error::RowCount { got: i, expected: rank });
            };
            let mut row = Vec::with_capacity(rank);
            for (j, token) in line.split_whitespace().enumerate() {
                let entry: u32 = token.parse().map_err(|_| Error::BadEntry {
                    row: i + 1,
                    col: j + 1,
                    token: token.to_string(),
                })?;
                row.push(entry);
            }
            if row.len() != rank {
                return Err(Error::RowLength { row: i + 1, got: row.len(), expected: rank });
            }
            rows.push(row);
        }

        let mut names = None;
        if let Some(line) = lines.next() {
            if let Some(rest) = line.strip_prefix("names:") {
                let ns: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                names = Some(ns);
            } else {
                return Err(Error::TrailingContent(line.to_string()));
            }
        }
        if let Some(extra) = lines.next() {
            return Err(Error::TrailingContent(extra.to_string()));
        }

        CoxeterSystem::new(rows, names)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Bond order m(i, j); `None` encodes an infinite bond.
    pub fn bond(&self, i: u8, j: u8) -> Option<u32> {
        let m = self.bonds[i as usize * self.rank + j as usize];
        (m != 0).then_some(m)
    }

    pub fn generator_name(&self, i: u8) -> String {
        match &self.names {
            Some(ns) => ns[i as usize].clone(),
            None => (i as usize + 1).to_string(),
        }
    }

    /// Generator s_i as an element (0-based index).
    pub fn generator(&self, i: u8) -> Result<Element> {
        if (i as usize) < self.rank {
            Ok(Element::from_normal_form(Word::from_letters([i])))
        } else {
            Err(Error::GeneratorOutOfRange { index: i as usize + 1, rank: self.rank })
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = u8> + '_ {
        0..self.rank as u8
    }

    pub(crate) fn validate_word(&self, w: &Word) -> Result<()> {
        for &s in w.letters() {
            if s as usize >= self.rank {
                return Err(Error::GeneratorOutOfRange { index: s as usize + 1, rank: self.rank });
            }
        }
        Ok(())
    }

    /// Parses a whitespace-separated word. Tokens are 1-based generator
    /// indices or declared generator names; an empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if let Ok(ix) = token.parse::<usize>() {
                if ix == 0 || ix > self.rank {
                    return Err(Error::GeneratorOutOfRange { index: ix, rank: self.rank });
                }
                letters.push((ix - 1) as u8);
                continue;
            }
            let Some(pos) = self
                .names
                .as_ref()
                .and_then(|ns| ns.iter().position(|n| n == token))
            else {
                return Err(Error::UnknownGenerator(token.to_string()));
            };
            letters.push(pos as u8);
        }
        Ok(Word::from_letters(letters))
    }
}

/// Convenience constructors for the classical families used throughout the
/// tests and docs.
pub mod standard {
    use super::*;

    fn chain(rank: usize, bonds: &[u32]) -> CoxeterSystem {
        let mut rows = vec![vec![2u32; rank]; rank];
        for i in 0..rank {
            rows[i][i] = 1;
        }
        for (i, &m) in bonds.iter().enumerate() {
            rows[i][i + 1] = m;
            rows[i + 1][i] = m;
        }
        CoxeterSystem::new(rows, None).expect("valid chain matrix")
    }

    /// Type A_n (the symmetric group on n + 1 points).
    pub fn type_a(n: usize) -> CoxeterSystem {
        chain(n, &vec![3; n.saturating_sub(1)])
    }

    /// Type B_n: a 4-bond at one end of the chain.
    pub fn type_b(n: usize) -> CoxeterSystem {
        let mut bonds = vec![3; n - 1];
        bonds[0] = 4;
        chain(n, &bonds)
    }

    /// Type H_3: bonds 5, 3.
    pub fn h3() -> CoxeterSystem {
        chain(3, &[5, 3])
    }

    /// Dihedral I_2(m); `None` gives the infinite dihedral group.
    pub fn dihedral(m: Option<u32>) -> CoxeterSystem {
        let m = m.unwrap_or(0);
        CoxeterSystem::new(vec![vec![1, m], vec![m, 1]], None).expect("valid dihedral matrix")
    }

    /// Affine A_2: the triangle with all bonds 3.
    pub fn affine_a2() -> CoxeterSystem {
        CoxeterSystem::new(
            vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]],
            None,
        )
        .expect("valid affine matrix")
    }

    /// Universal Coxeter system of the given rank: every bond infinite.
    pub fn universal(rank: usize) -> CoxeterSystem {
        let mut rows = vec![vec![0u32; rank]; rank];
        for i in 0..rank {
            rows[i][i] = 1;
        }
        CoxeterSystem::new(rows, None).expect("valid universal matrix")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_a3_input() {
        let sys = CoxeterSystem::parse("3\n1 3 2\n3 1 3\n2 3 1").unwrap();
        assert_eq!(sys.rank(), 3);
        assert_eq!(sys.bond(0, 1), Some(3));
        assert_eq!(sys.bond(0, 2), Some(2));
        assert_eq!(sys.bond(1, 1), Some(1));
    }

    #[test]
    fn zero_encodes_infinite_bond() {
        let sys = CoxeterSystem::parse("2\n1 0\n0 1").unwrap();
        assert_eq!(sys.bond(0, 1), None);
    }

    #[test]
    fn rejects_asymmetric_matrix() {
        let err = CoxeterSystem::parse("2\n1 3\n4 1").unwrap_err();
        assert_eq!(err, Error::NotSymmetric { row: 1, col: 2 });
    }

    #[test]
    fn rejects_bad_diagonal_and_off_diagonal_one() {
        assert_eq!(
            CoxeterSystem::parse("2\n2 3\n3 1").unwrap_err(),
            Error::BadDiagonal { i: 1 }
        );
        assert_eq!(
            CoxeterSystem::parse("2\n1 1\n1 1").unwrap_err(),
            Error::OffDiagonalOne { row: 1, col: 2 }
        );
    }

    #[test]
    fn rejects_malformed_integers_and_shape() {
        assert_eq!(
            CoxeterSystem::parse("2\n1 x\nx 1").unwrap_err(),
            Error::BadEntry { row: 1, col: 2, token: "x".into() }
        );
        assert_eq!(
            CoxeterSystem::parse("2\n1 3 2\n3 1 2").unwrap_err(),
            Error::RowLength { row: 1, got: 3, expected: 2 }
        );
        assert_eq!(
            CoxeterSystem::parse("3\n1 3 2\n3 1 3").unwrap_err(),
            Error::RowCount { got: 2, expected: 3 }
        );
        assert_eq!(CoxeterSystem::parse("# only comments\n").unwrap_err(), Error::MissingRank);
    }

    #[test]
    fn comments_blanks_and_names() {
        let sys = CoxeterSystem::parse("# A2\n\n2\n1 3\n3 1\nnames: a b\n").unwrap();
        assert_eq!(sys.generator_name(0), "a");
        let w = sys.parse_word("a 2 b").unwrap();
        assert_eq!(w.letters(), &[0, 1, 1]);
    }

    #[test]
    fn name_validation() {
        assert_eq!(
            CoxeterSystem::parse("2\n1 3\n3 1\nnames: a").unwrap_err(),
            Error::NamesCount { got: 1, expected: 2 }
        );
        assert_eq!(
            CoxeterSystem::parse("2\n1 3\n3 1\nnames: a a").unwrap_err(),
            Error::DuplicateName("a".into())
        );
        assert_eq!(
            CoxeterSystem::parse("2\n1 3\n3 1\njunk").unwrap_err(),
            Error::TrailingContent("junk".into())
        );
    }

    #[test]
    fn word_parsing_bounds() {
        let sys = standard::type_a(2);
        assert!(sys.parse_word("").unwrap().is_empty());
        assert_eq!(
            sys.parse_word("3").unwrap_err(),
            Error::GeneratorOutOfRange { index: 3, rank: 2 }
        );
        assert_eq!(sys.parse_word("q").unwrap_err(), Error::UnknownGenerator("q".into()));
    }
}
