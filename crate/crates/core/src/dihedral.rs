//! Maximal dihedral reflection subgroups, handled entirely through words.
//!
//! A product w of two distinct reflections determines the set of reflections
//! t such that t*w is again a reflection; these generate the unique maximal
//! dihedral reflection subgroup containing any factorization of w. Membership
//! is always tested through that product-is-a-reflection criterion, never by
//! subgroup generation, so infinite dihedral subgroups cost nothing extra.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::reflection::Reflection;
use crate::system::CoxeterSystem;
use crate::tlength::TLengthMode;
use crate::word::Element;

/// An element written as a product of two distinct reflections.
#[derive(Debug, Clone)]
pub struct RankTwoElement {
    elem: Element,
    first: Reflection,
    second: Reflection,
}

impl RankTwoElement {
    /// Pairs two distinct reflections. The product of two distinct
    /// reflections always has reflection length exactly 2: it is not the
    /// identity, and parity rules out its being a reflection.
    pub fn new(sys: &CoxeterSystem, first: Reflection, second: Reflection) -> Result<Self> {
        if first == second {
            return Err(Error::NotRankTwo { word: crate::word::Word::empty(), tlen: 0 });
        }
        let elem = sys.product(first.element(), second.element())?;
        debug_assert!(!elem.is_identity());
        debug_assert_eq!(elem.len() % 2, 0);
        Ok(RankTwoElement { elem, first, second })
    }

    /// Factors an element into two distinct reflections via the cross-checked
    /// reflection-length witness.
    pub fn from_element(sys: &CoxeterSystem, elem: &Element) -> Result<Self> {
        let r = sys.reflection_length(elem, TLengthMode::CrossChecked)?;
        if r.value != 2 {
            return Err(Error::NotRankTwo { word: elem.word().clone(), tlen: r.value });
        }
        let mut witness = r.witness.into_iter();
        let first = witness.next().expect("witness of size 2");
        let second = witness.next().expect("witness of size 2");
        Ok(RankTwoElement { elem: elem.clone(), first, second })
    }

    pub fn element(&self) -> &Element {
        &self.elem
    }

    pub fn factorization(&self) -> (&Reflection, &Reflection) {
        (&self.first, &self.second)
    }
}

/// Truncated view of a maximal dihedral reflection subgroup: the reflections
/// found so far, the bound to which the search is exhaustive, and the
/// canonical simple pair once detected.
#[derive(Debug, Clone)]
pub struct MaxDihedral {
    core: RankTwoElement,
    known: BTreeSet<Reflection>,
    canonical: Option<(Reflection, Reflection)>,
    exhausted_to: u32,
}

impl CoxeterSystem {
    /// Does `t` belong to the reflection set of the maximal dihedral subgroup
    /// determined by `w`? Exactly when t * w is again a reflection.
    pub fn reflection_in_max_dihedral(&self, t: &Reflection, w: &RankTwoElement) -> Result<bool> {
        let tw = self.product(t.element(), w.element())?;
        self.is_reflection(&tw)
    }

    /// Full membership test for the maximal dihedral subgroup: the identity,
    /// its reflections, and its rotations (a rotation times a fixed
    /// reflection of the subgroup is a reflection of the subgroup).
    pub fn member_of_max_dihedral(&self, x: &Element, w: &RankTwoElement) -> Result<bool> {
        if x.is_identity() {
            return Ok(true);
        }
        if let Some(xr) = self.as_reflection(x)? {
            return self.reflection_in_max_dihedral(&xr, w);
        }
        let rx = self.product(w.first.element(), x)?;
        match self.as_reflection(&rx)? {
            Some(r) => self.reflection_in_max_dihedral(&r, w),
            None => Ok(false),
        }
    }
}

impl MaxDihedral {
    /// Collects every reflection of length at most `max_len` that passes the
    /// membership criterion. The result is explicitly a truncation: the full
    /// reflection set may be infinite.
    pub fn enumerate(sys: &CoxeterSystem, core: RankTwoElement, max_len: u32) -> Result<Self> {
        let mut md = MaxDihedral { core, known: BTreeSet::new(), canonical: None, exhausted_to: 0 };
        md.extend_to(sys, max_len)?;
        Ok(md)
    }

    /// Grows the truncation bound. Resets the canonical pair, which must be
    /// re-detected against the larger set.
    pub fn extend_to(&mut self, sys: &CoxeterSystem, max_len: u32) -> Result<()> {
        if max_len <= self.exhausted_to && !self.known.is_empty() {
            return Ok(());
        }
        let refs = sys.enumerate_reflections(max_len)?;
        let mut known = BTreeSet::new();
        for t in refs.iter() {
            if sys.reflection_in_max_dihedral(t, &self.core)? {
                known.insert(t.clone());
            }
        }
        self.known = known;
        self.canonical = None;
        self.exhausted_to = max_len;
        Ok(())
    }

    pub fn core(&self) -> &RankTwoElement {
        &self.core
    }

    pub fn reflections(&self) -> &BTreeSet<Reflection> {
        &self.known
    }

    pub fn exhausted_to(&self) -> u32 {
        self.exhausted_to
    }

    pub fn contains_reflection(&self, r: &Reflection) -> bool {
        self.known.contains(r)
    }

    /// Detects the canonical simple pair: the two reflections whose inversion
    /// sets meet the known reflections only in themselves. Verifies that
    /// exactly two candidates exist and that alternating products of the pair
    /// generate every known reflection; anything else reports the truncation
    /// bound as too small or inconsistent.
    pub fn canonical_pair(&mut self, sys: &CoxeterSystem) -> Result<(Reflection, Reflection)> {
        if let Some(pair) = &self.canonical {
            return Ok(pair.clone());
        }
        let mut candidates = Vec::new();
        for r in &self.known {
            let inv = sys.inversion_set(r.element())?;
            let in_both = self.known.iter().filter(|k| inv.contains(k)).count();
            debug_assert!(inv.contains(r), "a reflection is its own inversion");
            if in_both == 1 {
                candidates.push(r.clone());
            }
        }
        if candidates.len() != 2 {
            return Err(Error::CanonicalPairBound {
                found: candidates.len(),
                bound: self.exhausted_to,
            });
        }
        let (r1, r2) = (candidates[0].clone(), candidates[1].clone());

        // Every reflection of the dihedral subgroup generated by the pair is
        // an alternating product a^k r1 with a = r1 r2, and the needed |k| is
        // bounded by the ambient length bound.
        let rotation = sys.product(r1.element(), r2.element())?;
        let rotation_inv = sys.inverse(&rotation)?;
        let mut generated: BTreeSet<Element> = BTreeSet::new();
        for step in [&rotation, &rotation_inv] {
            let mut pow = Element::identity();
            for _ in 0..=self.exhausted_to {
                generated.insert(sys.product(&pow, r1.element())?);
                generated.insert(sys.product(&pow, r2.element())?);
                pow = sys.product(&pow, step)?;
            }
        }
        if let Some(stray) = self
            .known
            .iter()
            .find(|r| !generated.contains(r.element()))
        {
            let _ = stray;
            return Err(Error::CanonicalPairInconsistent { bound: self.exhausted_to });
        }
        self.canonical = Some((r1.clone(), r2.clone()));
        Ok((r1, r2))
    }
}

impl CoxeterSystem {
    /// Extracts the alternating exponent n such that (s t)^n is a reduced
    /// expression of `w`, after verifying the three hypotheses: with
    /// w' = s w t, the length drops by two and both s w' and w' t are
    /// reflections. Each failed hypothesis is reported separately. Under the
    /// hypotheses, failure to find n (or s = t) is an engine bug.
    pub fn alternating_exponent(&self, w: &Element, s: u8, t: u8) -> Result<u32> {
        let gs = self.generator(s)?;
        let gt = self.generator(t)?;
        let sw = self.product(&gs, w)?;
        let w_prime = self.product(&sw, &gt)?;
        if w.len() != w_prime.len() + 2 {
            return Err(Error::AltLengthHypothesis { w: w.word().clone(), s, t });
        }
        let s_wprime = self.product(&gs, &w_prime)?;
        if !self.is_reflection(&s_wprime)? {
            return Err(Error::AltLeftNotReflection { w: w.word().clone(), s, t });
        }
        let wprime_t = self.product(&w_prime, &gt)?;
        if !self.is_reflection(&wprime_t)? {
            return Err(Error::AltRightNotReflection { w: w.word().clone(), s, t });
        }
        if s == t {
            return Err(Error::Internal(format!(
                "alternating_exponent hypotheses hold for [{}] with s = t = {}",
                w,
                s as usize + 1
            )));
        }
        if w.len() % 2 != 0 {
            return Err(Error::Internal(format!(
                "alternating_exponent: [{}] has odd length under even-form hypotheses",
                w
            )));
        }
        let n = (w.len() / 2) as u32;
        let alternating = crate::word::Word::from_letters(
            (0..w.len()).map(|k| if k % 2 == 0 { s } else { t }),
        );
        if self.normal_form(&alternating)? != *w {
            return Err(Error::Internal(format!(
                "alternating_exponent: ({} {})^{} does not spell [{}]",
                s as usize + 1,
                t as usize + 1,
                n,
                w
            )));
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::standard::*;
    use crate::word::Word;

    fn w(letters: &[usize]) -> Word {
        Word::from_letters(letters.iter().map(|&i| (i - 1) as u8))
    }

    fn elem(sys: &CoxeterSystem, letters: &[usize]) -> Element {
        sys.normal_form(&w(letters)).unwrap()
    }

    fn refl(sys: &CoxeterSystem, letters: &[usize]) -> Reflection {
        sys.as_reflection(&elem(sys, letters)).unwrap().unwrap()
    }

    #[test]
    fn alternating_exponent_base_case() {
        let a2 = type_a(2);
        let c = elem(&a2, &[1, 2]);
        assert_eq!(a2.alternating_exponent(&c, 0, 1).unwrap(), 1);
    }

    #[test]
    fn alternating_exponent_in_i2_4() {
        let sys = dihedral(Some(4));
        let rot2 = elem(&sys, &[1, 2, 1, 2]);
        assert_eq!(sys.alternating_exponent(&rot2, 0, 1).unwrap(), 2);
    }

    #[test]
    fn alternating_exponent_reports_failed_hypotheses() {
        let a2 = type_a(2);
        let c = elem(&a2, &[1, 2]);
        // s = t = s2 already breaks the length hypothesis: s2 c s2 has length 2.
        let err = a2.alternating_exponent(&c, 1, 1).unwrap_err();
        assert!(matches!(
            err,
            Error::AltLengthHypothesis { .. }
                | Error::AltLeftNotReflection { .. }
                | Error::AltRightNotReflection { .. }
        ));
        // A case where the length drops but the left factor is no reflection:
        // w = s1 s2 s1 s2 in I2(4), s = 1, t = 1 gives w' = s2 s1 s2 s1 of the
        // same length.
        let i24 = dihedral(Some(4));
        let rot2 = elem(&i24, &[1, 2, 1, 2]);
        assert!(matches!(
            i24.alternating_exponent(&rot2, 0, 0).unwrap_err(),
            Error::AltLengthHypothesis { .. }
        ));
    }

    #[test]
    fn membership_criterion_examples() {
        let a2 = type_a(2);
        let core = RankTwoElement::new(&a2, refl(&a2, &[1]), refl(&a2, &[2])).unwrap();
        assert!(a2.reflection_in_max_dihedral(&refl(&a2, &[1]), &core).unwrap());

        let a3 = type_a(3);
        let core13 = RankTwoElement::new(&a3, refl(&a3, &[1]), refl(&a3, &[3])).unwrap();
        assert!(!a3.reflection_in_max_dihedral(&refl(&a3, &[2]), &core13).unwrap());

        let inf = dihedral(None);
        let core_inf = RankTwoElement::new(&inf, refl(&inf, &[1]), refl(&inf, &[2])).unwrap();
        assert!(inf
            .reflection_in_max_dihedral(&refl(&inf, &[1, 2, 1]), &core_inf)
            .unwrap());
    }

    #[test]
    fn full_membership_examples() {
        let a3 = type_a(3);
        let core = RankTwoElement::new(&a3, refl(&a3, &[1]), refl(&a3, &[3])).unwrap();
        assert!(a3.member_of_max_dihedral(&Element::identity(), &core).unwrap());
        assert!(a3.member_of_max_dihedral(&elem(&a3, &[1, 3]), &core).unwrap());
        assert!(!a3.member_of_max_dihedral(&elem(&a3, &[2]), &core).unwrap());
    }

    #[test]
    fn enumeration_matches_hand_counts() {
        let a2 = type_a(2);
        let core = RankTwoElement::new(&a2, refl(&a2, &[1]), refl(&a2, &[2])).unwrap();
        let md = MaxDihedral::enumerate(&a2, core, 3).unwrap();
        assert_eq!(md.reflections().len(), 3);

        let a3 = type_a(3);
        let core13 = RankTwoElement::new(&a3, refl(&a3, &[1]), refl(&a3, &[3])).unwrap();
        let md13 = MaxDihedral::enumerate(&a3, core13, 5).unwrap();
        let words: Vec<Word> = md13
            .reflections()
            .iter()
            .map(|r| r.element().word().clone())
            .collect();
        assert_eq!(words, vec![w(&[1]), w(&[3])]);

        let inf = dihedral(None);
        let core_inf = RankTwoElement::new(&inf, refl(&inf, &[1]), refl(&inf, &[2])).unwrap();
        let md_inf = MaxDihedral::enumerate(&inf, core_inf, 5).unwrap();
        assert_eq!(md_inf.reflections().len(), 6);
        assert_eq!(md_inf.exhausted_to(), 5);
    }

    #[test]
    fn canonical_pairs() {
        let a3 = type_a(3);
        let core13 = RankTwoElement::new(&a3, refl(&a3, &[1]), refl(&a3, &[3])).unwrap();
        let mut md = MaxDihedral::enumerate(&a3, core13, 5).unwrap();
        let (r1, r2) = md.canonical_pair(&a3).unwrap();
        assert_eq!(r1.element().word(), &w(&[1]));
        assert_eq!(r2.element().word(), &w(&[3]));

        // w = s2 s1 arises from t = s1, t' = s1 s2 s1; the subgroup is all of A2.
        let a2 = type_a(2);
        let core = RankTwoElement::new(&a2, refl(&a2, &[1]), refl(&a2, &[1, 2, 1])).unwrap();
        assert_eq!(core.element().word(), &w(&[2, 1]));
        let mut md2 = MaxDihedral::enumerate(&a2, core, 3).unwrap();
        let (p1, p2) = md2.canonical_pair(&a2).unwrap();
        assert_eq!(p1.element().word(), &w(&[1]));
        assert_eq!(p2.element().word(), &w(&[2]));

        // (s1 s2)^2 in I2(4): the subgroup is the whole group again.
        let i24 = dihedral(Some(4));
        let core4 = RankTwoElement::new(&i24, refl(&i24, &[1]), refl(&i24, &[2, 1, 2])).unwrap();
        assert_eq!(core4.element().word(), &w(&[1, 2, 1, 2]));
        let mut md4 = MaxDihedral::enumerate(&i24, core4, 4).unwrap();
        assert_eq!(md4.reflections().len(), 4);
        let (q1, q2) = md4.canonical_pair(&i24).unwrap();
        assert_eq!(q1.element().word(), &w(&[1]));
        assert_eq!(q2.element().word(), &w(&[2]));
    }

    #[test]
    fn rank_two_from_element_requires_length_two() {
        let a3 = type_a(3);
        let c = elem(&a3, &[1, 2, 3]);
        assert!(matches!(
            RankTwoElement::from_element(&a3, &c).unwrap_err(),
            Error::NotRankTwo { tlen: 3, .. }
        ));
        let x = elem(&a3, &[1, 3]);
        let r2 = RankTwoElement::from_element(&a3, &x).unwrap();
        let (t, t2) = r2.factorization();
        assert_eq!(a3.product(t.element(), t2.element()).unwrap(), x);
    }
}
