//! Reflections, their palindromic certificates, and inversion sets.
//!
//! A reflection is any conjugate of a generator. The recognition test folds a
//! reduced expression t_1 .. t_{2n+1} into the palindrome
//! t_1 .. t_{n+1} .. t_1 and compares normal forms: for a genuine reflection
//! the palindrome is another reduced expression of the same element, and a
//! palindromic expression u s u^-1 exhibits the conjugacy to a generator, so
//! the test is sound and complete.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::system::CoxeterSystem;
use crate::word::{Element, Word};

/// An element certified to be a reflection, carrying a palindromic reduced
/// expression as the audit trail of its conjugacy to a generator.
#[derive(Debug, Clone)]
pub struct Reflection {
    elem: Element,
    palindrome: Word,
}

impl Reflection {
    pub fn element(&self) -> &Element {
        &self.elem
    }

    pub fn palindrome(&self) -> &Word {
        &self.palindrome
    }

    /// Length of the underlying element (always odd).
    pub fn len(&self) -> usize {
        self.elem.len()
    }
}

impl PartialEq for Reflection {
    fn eq(&self, other: &Self) -> bool {
        self.elem == other.elem
    }
}
impl Eq for Reflection {}
impl PartialOrd for Reflection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Reflection {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elem.cmp(&other.elem)
    }
}
impl std::fmt::Display for Reflection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.elem)
    }
}

/// Builds the palindrome t_1 .. t_{n+1} t_n .. t_1 from an odd-length word.
fn fold_palindrome(w: &Word) -> Word {
    let letters = w.letters();
    let n = letters.len() / 2;
    let mut p = Vec::with_capacity(letters.len());
    p.extend_from_slice(&letters[..=n]);
    p.extend(letters[..n].iter().rev());
    Word::from_letters(p)
}

/// The left inversions of an element: the prefix reflections
/// s_1, s_1 s_2 s_1, ... of a reduced expression. The set does not depend on
/// which reduced expression is used.
#[derive(Debug, Clone)]
pub struct InversionSet {
    owner: Element,
    members: BTreeSet<Reflection>,
}

impl InversionSet {
    pub fn owner(&self) -> &Element {
        &self.owner
    }

    pub fn members(&self) -> &BTreeSet<Reflection> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, r: &Reflection) -> bool {
        self.members.contains(r)
    }
}

impl CoxeterSystem {
    /// Reflection test with certificate: `Some(r)` iff the element is a
    /// conjugate of a generator.
    pub fn as_reflection(&self, a: &Element) -> Result<Option<Reflection>> {
        self.check_element(a)?;
        if a.len() % 2 == 0 {
            return Ok(None);
        }
        if let Some(hit) = self.caches.reflection.read().unwrap().get(a.word()) {
            return Ok(hit
                .clone()
                .map(|palindrome| Reflection { elem: a.clone(), palindrome }));
        }
        let p = fold_palindrome(a.word());
        let same = self.normal_form(&p)? == *a;
        let entry = same.then(|| p.clone());
        self.caches
            .reflection
            .write()
            .unwrap()
            .insert(a.word().clone(), entry);
        Ok(same.then(|| Reflection { elem: a.clone(), palindrome: p }))
    }

    pub fn is_reflection(&self, a: &Element) -> Result<bool> {
        Ok(self.as_reflection(a)?.is_some())
    }

    /// Rewrites a reduced expression of a reflection into the palindromic
    /// reduced expression obtained by mirroring its first half.
    pub fn palindromize(&self, w: &Word) -> Result<Word> {
        self.validate_word(w)?;
        if !self.is_reduced(w)? {
            return Err(Error::PalindromizeNotReduced(w.clone()));
        }
        if w.len() % 2 == 0 {
            return Err(Error::PalindromizeEvenLength(w.clone()));
        }
        let p = fold_palindrome(w);
        if self.normal_form(&p)? != self.normal_form(w)? {
            return Err(Error::PalindromizeNotReflection(w.clone()));
        }
        Ok(p)
    }

    /// All reflections of length at most `max_len`, via breadth-first
    /// conjugation of the generators. Sorted ShortLex; cached per bound.
    ///
    /// Peeling a palindromic reduced expression from the outside shows every
    /// reflection is reachable from a generator through conjugates of
    /// strictly increasing length, so discarding conjugates longer than
    /// `max_len` loses nothing.
    pub fn enumerate_reflections(&self, max_len: u32) -> Result<Arc<Vec<Reflection>>> {
        if let Some(hit) = self.caches.reflections.read().unwrap().get(&max_len) {
            return Ok(hit.clone());
        }
        let mut found: BTreeSet<Element> = BTreeSet::new();
        let mut frontier: Vec<Element> = Vec::new();
        for s in self.generators() {
            let g = self.generator(s)?;
            if 1 <= max_len {
                found.insert(g.clone());
                frontier.push(g);
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for s in self.generators() {
                    let g = self.generator(s)?;
                    let c = self.conjugate(&g, r)?;
                    if c.len() as u32 <= max_len && !found.contains(&c) {
                        found.insert(c.clone());
                        next.push(c);
                    }
                }
            }
            frontier = next;
        }
        let mut out = Vec::with_capacity(found.len());
        for elem in found {
            let r = self.as_reflection(&elem)?.ok_or_else(|| {
                Error::Internal(format!("conjugate [{}] of a generator failed the reflection test", elem))
            })?;
            out.push(r);
        }
        let out = Arc::new(out);
        self.caches
            .reflections
            .write()
            .unwrap()
            .insert(max_len, out.clone());
        Ok(out)
    }

    /// Inversion set of an element, built from its normal form.
    pub fn inversion_set(&self, a: &Element) -> Result<InversionSet> {
        self.check_element(a)?;
        self.inversion_set_from(a.word())
    }

    /// Inversion set built from an arbitrary reduced expression; the result
    /// is the same for every reduced expression of the element.
    pub fn inversion_set_from(&self, w: &Word) -> Result<InversionSet> {
        self.validate_word(w)?;
        if !self.is_reduced(w)? {
            return Err(Error::InversionInputNotReduced(w.clone()));
        }
        let owner = self.normal_form(w)?;
        let mut members = BTreeSet::new();
        let mut prefix = Element::identity();
        for &s in w.letters() {
            let g = self.generator(s)?;
            let t = self.conjugate(&prefix, &g)?;
            let r = self.as_reflection(&t)?.ok_or_else(|| {
                Error::Internal(format!("prefix conjugate [{}] is not a reflection", t))
            })?;
            members.insert(r);
            prefix = self.product(&prefix, &g)?;
        }
        if members.len() != w.len() {
            return Err(Error::Internal(format!(
                "inversion set of [{}] has {} members, expected {}",
                w,
                members.len(),
                w.len()
            )));
        }
        Ok(InversionSet { owner, members })
    }

    /// All reflections of a group certified finite, with no length bound.
    pub(crate) fn reflections_of_full_group(&self) -> Result<Option<Arc<Vec<Reflection>>>> {
        let Some(group) = self.certified_full_group() else {
            return Ok(None);
        };
        let max_len = group.iter().map(|e| e.len()).max().unwrap_or(0) as u32;
        Ok(Some(self.enumerate_reflections(max_len)?))
    }
}
