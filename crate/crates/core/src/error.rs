//! Error types shared across the crate.

use crate::word::Word;
use thiserror::Error;

/// How severe an error is from a caller's perspective; the CLI maps these
/// to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input or a violated precondition (exit 1).
    Domain,
    /// A configured resource cap was hit (exit 2).
    Resource,
    /// An internal invariant or cross-check failed (exit 3).
    Internal,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    // ---- group-file parsing -------------------------------------------------
    #[error("parse: missing rank line")]
    MissingRank,
    #[error("parse: invalid rank {0:?}")]
    InvalidRank(String),
    #[error("parse: rank {0} exceeds the supported maximum of {max}", max = crate::system::MAX_RANK)]
    RankTooLarge(usize),
    #[error("parse: matrix row {row} has {got} entries, expected {expected}")]
    RowLength { row: usize, got: usize, expected: usize },
    #[error("parse: expected {expected} matrix rows, found {got}")]
    RowCount { got: usize, expected: usize },
    #[error("parse: entry ({row},{col}) is not a nonnegative integer: {token:?}")]
    BadEntry { row: usize, col: usize, token: String },
    #[error("parse: matrix not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("parse: diagonal entry ({i},{i}) must be 1")]
    BadDiagonal { i: usize },
    #[error("parse: off-diagonal entry ({row},{col}) is 1; bond orders are >= 2 (0 encodes infinity)")]
    OffDiagonalOne { row: usize, col: usize },
    #[error("parse: names line has {got} tokens, expected {expected}")]
    NamesCount { got: usize, expected: usize },
    #[error("parse: duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("parse: unexpected trailing line {0:?}")]
    TrailingContent(String),

    // ---- word-level input ----------------------------------------------------
    #[error("word: generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("word: unknown generator token {0:?}")]
    UnknownGenerator(String),

    // ---- resource caps -------------------------------------------------------
    #[error("braid closure of [{word}] exceeded the cap of {cap} words")]
    ClosureCap { word: Word, cap: usize },
    #[error("element enumeration exceeded the cap of {cap} elements; the group is (or may be) infinite")]
    BallCap { cap: usize },

    // ---- reflection / palindrome preconditions -------------------------------
    #[error("palindromize: input word [{0}] is not reduced")]
    PalindromizeNotReduced(Word),
    #[error("palindromize: input word [{0}] has even length")]
    PalindromizeEvenLength(Word),
    #[error("palindromize: input word [{0}] is not an expression of a reflection")]
    PalindromizeNotReflection(Word),
    #[error("inversion_set: input word [{0}] is not reduced")]
    InversionInputNotReduced(Word),

    // ---- alternating-form extraction ------------------------------------------
    #[error("alternating_exponent: length hypothesis fails for w=[{w}], s={s}, t={t}: l(w) != l(s*w*t) + 2")]
    AltLengthHypothesis { w: Word, s: u8, t: u8 },
    #[error("alternating_exponent: hypothesis fails for w=[{w}], s={s}, t={t}: s*w' is not a reflection")]
    AltLeftNotReflection { w: Word, s: u8, t: u8 },
    #[error("alternating_exponent: hypothesis fails for w=[{w}], s={s}, t={t}: w'*t is not a reflection")]
    AltRightNotReflection { w: Word, s: u8, t: u8 },

    // ---- dihedral subgroups ----------------------------------------------------
    #[error("expected a product of two distinct reflections, got [{word}] with reflection length {tlen}")]
    NotRankTwo { word: Word, tlen: u32 },
    #[error("canonical pair search up to length {bound} found {found} candidates instead of 2; the bound is too small or the truncation is inconsistent")]
    CanonicalPairBound { found: usize, bound: u32 },
    #[error("canonical pair does not generate every known reflection within length {bound}; the truncation is inconsistent")]
    CanonicalPairInconsistent { bound: u32 },

    // ---- intervals and presentations --------------------------------------------
    #[error("interval [{bottom}, {top}] does not satisfy bottom <=_T top")]
    NotAnInterval { bottom: Word, top: Word },
    #[error("interval height {height} unsupported; only reflection-length differences <= 3 are handled")]
    UnsupportedHeight { height: u32 },
    #[error("interval over an uncertified-infinite group requires an explicit cutoff")]
    CutoffRequired,
    #[error("element [{0}] is not in the poset")]
    NotInPoset(Word),
    #[error("bowtie scan requires a height-3 interval, got height {0}")]
    WrongHeight(u32),
    #[error("presentation refused: the interval is truncated (complete = false)")]
    PresentationIncomplete,
    #[error("presentation refused: the interval must be based at the identity")]
    PresentationBottomNotIdentity,
    #[error("presentation refused: the poset is not a lattice (witness pair [{0}], [{1}])")]
    PresentationNotLattice(Word, Word),

    // ---- cross-checks and internal invariants ------------------------------------
    #[error("reflection length modes disagree on [{word}]: recursive={recursive}, oracle={oracle} (bound {bound})")]
    ModeDisagreement { word: Word, recursive: u32, oracle: u32, bound: u32 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            ClosureCap { .. } | BallCap { .. } => ErrorKind::Resource,
            ModeDisagreement { .. } | Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Domain,
        }
    }

    /// Process exit code the CLI uses for this error.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            ErrorKind::Domain => 1,
            ErrorKind::Resource => 2,
            ErrorKind::Internal => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
