//! The word problem, solved purely by braid-move rewriting.
//!
//! Two words represent the same element iff they are connected by braid moves
//! and deletions of adjacent equal letters; a word is reduced iff no member of
//! its braid closure contains an adjacent equal pair. Everything else in the
//! crate reduces to these two facts.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::system::CoxeterSystem;
use crate::word::{Element, Word};

enum ClosureScan {
    /// Pair-free closure: the input was reduced and this is its braid class.
    Full(BTreeSet<Word>),
    /// A member with an adjacent equal pair at `pos` was found.
    Pair { word: Word, pos: usize },
}

impl CoxeterSystem {
    /// All words obtainable from `start` by braid moves alone. Every member
    /// has the same length as `start`.
    pub fn braid_closure(&self, start: &Word) -> Result<BTreeSet<Word>> {
        self.validate_word(start)?;
        match self.closure_scan(start, false)? {
            ClosureScan::Full(set) => Ok(set),
            ClosureScan::Pair { .. } => unreachable!("full scan never stops early"),
        }
    }

    fn closure_scan(&self, start: &Word, stop_at_pair: bool) -> Result<ClosureScan> {
        if stop_at_pair {
            if let Some(pos) = start.adjacent_pair() {
                return Ok(ClosureScan::Pair { word: start.clone(), pos });
            }
        }
        let cap = self.limits().max_closure;
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start.clone());
        while let Some(w) = queue.pop_front() {
            let letters = w.letters();
            for i in 0..letters.len().saturating_sub(1) {
                let (a, b) = (letters[i], letters[i + 1]);
                if a == b {
                    continue;
                }
                let Some(m) = self.bond(a, b) else { continue };
                let m = m as usize;
                if i + m > letters.len() {
                    continue;
                }
                let alternating = (0..m).all(|k| letters[i + k] == if k % 2 == 0 { a } else { b });
                if !alternating {
                    continue;
                }
                let mut next = letters.to_vec();
                for (k, slot) in next[i..i + m].iter_mut().enumerate() {
                    *slot = if k % 2 == 0 { b } else { a };
                }
                let next = Word::from_letters(next);
                if seen.contains(&next) {
                    continue;
                }
                if stop_at_pair {
                    if let Some(pos) = next.adjacent_pair() {
                        return Ok(ClosureScan::Pair { word: next, pos });
                    }
                }
                if seen.len() >= cap {
                    return Err(Error::ClosureCap { word: start.clone(), cap });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        Ok(ClosureScan::Full(seen))
    }

    /// Normal form of `reduced + [s]`, where `reduced` must be a reduced word.
    /// This is the memoized step every product is folded through.
    pub(crate) fn append_reduced(&self, reduced: &Word, s: u8) -> Result<Word> {
        let key = (reduced.clone(), s);
        if let Some(hit) = self.caches.append.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let extended = reduced.with_letter(s);
        let nf = match self.closure_scan(&extended, true)? {
            // Some braid-equivalent word exposes a repeat: the product
            // descends, and after deleting the pair the word is reduced.
            ClosureScan::Pair { word, pos } => {
                let shortened = word.without_pair(pos);
                self.shortlex_min(&shortened)?
            }
            ClosureScan::Full(closure) => {
                closure.first().expect("closure contains its seed").clone()
            }
        };
        self.caches.append.write().unwrap().insert(key, nf.clone());
        Ok(nf)
    }

    fn shortlex_min(&self, reduced: &Word) -> Result<Word> {
        match self.closure_scan(reduced, false)? {
            ClosureScan::Full(closure) => {
                Ok(closure.first().expect("closure contains its seed").clone())
            }
            ClosureScan::Pair { .. } => unreachable!(),
        }
    }

    /// True iff the word is a reduced expression of the element it spells.
    pub fn is_reduced(&self, w: &Word) -> Result<bool> {
        Ok(self.normal_form(w)?.len() == w.len())
    }

    /// The element spelled by an arbitrary word, as its ShortLex-least
    /// reduced expression.
    pub fn normal_form(&self, w: &Word) -> Result<Element> {
        self.validate_word(w)?;
        let mut nf = Word::empty();
        for &s in w.letters() {
            nf = self.append_reduced(&nf, s)?;
        }
        Ok(Element::from_normal_form(nf))
    }

    /// Group multiplication.
    pub fn product(&self, a: &Element, b: &Element) -> Result<Element> {
        let mut nf = a.word().clone();
        for &s in b.word().letters() {
            nf = self.append_reduced(&nf, s)?;
        }
        Ok(Element::from_normal_form(nf))
    }

    /// Folds a product over several factors, left to right.
    pub fn product_all<'a, I: IntoIterator<Item = &'a Element>>(&self, factors: I) -> Result<Element> {
        let mut acc = Element::identity();
        for f in factors {
            acc = self.product(&acc, f)?;
        }
        Ok(acc)
    }

    /// Generators are involutions, so the inverse is the reversed word.
    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.normal_form(&a.word().reversed())
    }

    /// a^-1 * b, the quotient used all over the absolute-order layer.
    pub fn left_quotient(&self, a: &Element, b: &Element) -> Result<Element> {
        let inv = self.inverse(a)?;
        self.product(&inv, b)
    }

    /// Conjugate g * a * g^-1.
    pub fn conjugate(&self, g: &Element, a: &Element) -> Result<Element> {
        let ga = self.product(g, a)?;
        let g_inv = self.inverse(g)?;
        self.product(&ga, &g_inv)
    }

    /// All reduced expressions of an element: the braid closure of its normal
    /// form.
    pub fn reduced_expressions(&self, a: &Element) -> Result<BTreeSet<Word>> {
        self.braid_closure(a.word())
    }

    /// All elements of length at most `radius` (`None` = no bound, which
    /// terminates only for finite groups and is guarded by the ball cap).
    pub fn enumerate_ball(&self, radius: Option<u32>) -> Result<BTreeSet<Element>> {
        let cap = self.limits().max_ball;
        let mut all: BTreeSet<Element> = BTreeSet::new();
        all.insert(Element::identity());
        let mut frontier: Vec<Element> = vec![Element::identity()];
        let mut r = 0u32;
        while !frontier.is_empty() && radius.map_or(true, |bound| r < bound) {
            let mut next: BTreeSet<Element> = BTreeSet::new();
            for w in &frontier {
                for s in self.generators() {
                    let nf = self.append_reduced(w.word(), s)?;
                    if nf.len() == w.len() + 1 {
                        next.insert(Element::from_normal_form(nf));
                    }
                }
            }
            if all.len() + next.len() > cap {
                return Err(Error::BallCap { cap });
            }
            frontier = next.iter().cloned().collect();
            all.extend(next);
            r += 1;
        }
        Ok(all)
    }

    /// The whole group, if it can be enumerated under the ball cap. The probe
    /// runs once and is cached; `None` means finiteness was not certified.
    pub fn certified_full_group(&self) -> Option<Arc<BTreeSet<Element>>> {
        self.caches
            .full_group
            .get_or_init(|| self.enumerate_ball(None).ok().map(Arc::new))
            .clone()
    }

    /// Elements fed to equality-sensitive scans must come from this system;
    /// a cheap sanity check used by operations taking caller elements.
    pub(crate) fn check_element(&self, a: &Element) -> Result<()> {
        self.validate_word(a.word())
    }
}

/// Distinct letters occurring in a word; handy for support arguments.
pub fn support(w: &Word) -> HashSet<u8> {
    w.letters().iter().copied().collect()
}
