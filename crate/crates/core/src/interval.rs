//! Absolute-order intervals of height at most three.
//!
//! An interval [u, v] is built by translating to [1, u^-1 v] and layering by
//! reflection length. For groups certified finite the construction is exact;
//! otherwise the reflection pool is truncated at an explicit cutoff and every
//! derived verdict is marked as bounded evidence.
//!
//! Length tests at this height come with certificates: parity pins the
//! possible values, a palindrome certificate settles length one, and an
//! explicit two-reflection factorization settles length two, so positive
//! membership answers are exact even under truncation. Only exclusion in the
//! truncated regime is evidence rather than proof.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::system::CoxeterSystem;
use crate::tlength::TLengthMode;
use crate::word::Element;

/// The poset [u, v] in the absolute order, as explicit elements, ranks, and
/// Hasse edges. At height <= 3 the covers are exactly the comparabilities
/// between consecutive ranks.
#[derive(Debug, Clone)]
pub struct IntervalPoset {
    bottom: Element,
    top: Element,
    elements: BTreeSet<Element>,
    rank_of: BTreeMap<Element, u32>,
    covers: BTreeSet<(Element, Element)>,
    ups: BTreeMap<Element, BTreeSet<Element>>,
    downs: BTreeMap<Element, BTreeSet<Element>>,
    complete: bool,
    cutoff: Option<u32>,
}

/// Two atoms both below two distinct rank-2 elements: the one obstruction
/// shape to the lattice property at height three.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BowtieWitness {
    pub low: (Element, Element),
    pub high: (Element, Element),
}

/// Outcome of a lattice check. `bounded_evidence` is set when the poset is a
/// truncation, in which case the verdict only speaks for the explored part.
#[derive(Debug, Clone)]
pub struct LatticeReport {
    pub is_lattice: bool,
    pub failing_pair: Option<(Element, Element)>,
    pub bounded_evidence: bool,
}

impl CoxeterSystem {
    /// Builds [u, v] in the absolute order; the reflection-length difference
    /// must be at most 3. `cutoff` bounds the reflection pool and is required
    /// exactly when the group cannot be enumerated under the ball cap; it is
    /// ignored for certified-finite groups, where the construction is exact.
    pub fn build_interval(
        &self,
        u: &Element,
        v: &Element,
        cutoff: Option<u32>,
    ) -> Result<IntervalPoset> {
        self.check_element(u)?;
        self.check_element(v)?;
        let certified = self.certified_full_group().is_some();
        if !u.is_identity() {
            if !self.absolute_le(u, v)? {
                return Err(Error::NotAnInterval {
                    bottom: u.word().clone(),
                    top: v.word().clone(),
                });
            }
        }
        let core = self.left_quotient(u, v)?;
        let pool: Vec<crate::reflection::Reflection> = if certified {
            self.reflections_of_full_group()?
                .expect("certified finite")
                .iter()
                .cloned()
                .collect()
        } else {
            let bound = cutoff.ok_or(Error::CutoffRequired)?;
            self.enumerate_reflections(bound)?.iter().cloned().collect()
        };
        let height = self.small_tlen_certified(&core, certified, &pool)?;

        // Layers over [1, core]; translated back at the end.
        let mut layers: Vec<BTreeSet<Element>> = vec![BTreeSet::from([Element::identity()])];
        if height >= 1 {
            let mut atoms = BTreeSet::new();
            if height == 1 {
                atoms.insert(core.clone());
            } else {
                for t in &pool {
                    let q = self.left_quotient(t.element(), &core)?;
                    let below = match height {
                        2 => self.is_reflection(&q)?,
                        _ => {
                            if certified {
                                self.reflection_length(&q, TLengthMode::CrossChecked)?.value == 2
                            } else {
                                self.two_reflection_witness(&q, &pool)?.is_some()
                            }
                        }
                    };
                    if below {
                        atoms.insert(t.element().clone());
                    }
                }
            }
            layers.push(atoms);
        }
        if height == 3 {
            let atoms: Vec<Element> = layers[1].iter().cloned().collect();
            let mut mid = BTreeSet::new();
            for t in &atoms {
                for t2 in &atoms {
                    if t == t2 {
                        continue;
                    }
                    let x = self.product(t, t2)?;
                    let q = self.left_quotient(&x, &core)?;
                    if self.is_reflection(&q)? {
                        mid.insert(x);
                    }
                }
            }
            layers.push(mid);
        }
        if height >= 2 {
            layers.push(BTreeSet::from([core.clone()]));
        }

        let mut covers: BTreeSet<(Element, Element)> = BTreeSet::new();
        for r in 0..layers.len().saturating_sub(1) {
            for lo in &layers[r] {
                for hi in &layers[r + 1] {
                    let q = self.left_quotient(lo, hi)?;
                    if self.is_reflection(&q)? {
                        covers.insert((lo.clone(), hi.clone()));
                    }
                }
            }
        }

        // Translate back by left multiplication.
        let mut elements = BTreeSet::new();
        let mut rank_of = BTreeMap::new();
        let mut shifted_layers: Vec<Vec<Element>> = Vec::new();
        for (r, layer) in layers.iter().enumerate() {
            let mut shifted = Vec::new();
            for x in layer {
                let y = self.product(u, x)?;
                elements.insert(y.clone());
                rank_of.insert(y.clone(), r as u32);
                shifted.push(y);
            }
            shifted_layers.push(shifted);
        }
        let covers: BTreeSet<(Element, Element)> = covers
            .into_iter()
            .map(|(a, b)| Ok((self.product(u, &a)?, self.product(u, &b)?)))
            .collect::<Result<_>>()?;

        let bottom = u.clone();
        let top = self.product(u, &core)?;
        Ok(IntervalPoset::from_parts(
            bottom,
            top,
            elements,
            rank_of,
            covers,
            certified,
            if certified { None } else { cutoff },
        ))
    }

}

impl IntervalPoset {
    /// Assembles a poset from explicit parts. The caller vouches for the
    /// invariants; the regular path is `CoxeterSystem::build_interval`, and
    /// this constructor exists for fixtures and deserialization.
    pub fn from_parts(
        bottom: Element,
        top: Element,
        elements: BTreeSet<Element>,
        rank_of: BTreeMap<Element, u32>,
        covers: BTreeSet<(Element, Element)>,
        complete: bool,
        cutoff: Option<u32>,
    ) -> Self {
        let mut ups: BTreeMap<Element, BTreeSet<Element>> = BTreeMap::new();
        let mut downs: BTreeMap<Element, BTreeSet<Element>> = BTreeMap::new();
        for x in &elements {
            ups.entry(x.clone()).or_default();
            downs.entry(x.clone()).or_default();
        }
        for (a, b) in &covers {
            ups.entry(a.clone()).or_default().insert(b.clone());
            downs.entry(b.clone()).or_default().insert(a.clone());
        }
        IntervalPoset { bottom, top, elements, rank_of, covers, ups, downs, complete, cutoff }
    }

    pub fn bottom(&self) -> &Element {
        &self.bottom
    }

    pub fn top(&self) -> &Element {
        &self.top
    }

    pub fn elements(&self) -> &BTreeSet<Element> {
        &self.elements
    }

    pub fn covers(&self) -> &BTreeSet<(Element, Element)> {
        &self.covers
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn cutoff(&self) -> Option<u32> {
        self.cutoff
    }

    pub fn rank_of(&self, x: &Element) -> Option<u32> {
        self.rank_of.get(x).copied()
    }

    /// Height: the rank of the top element.
    pub fn height(&self) -> u32 {
        self.rank_of.get(&self.top).copied().unwrap_or(0)
    }

    /// Elements of one rank, sorted.
    pub fn layer(&self, rank: u32) -> Vec<Element> {
        self.elements
            .iter()
            .filter(|x| self.rank_of.get(*x) == Some(&rank))
            .cloned()
            .collect()
    }

    fn require_member(&self, x: &Element) -> Result<()> {
        if self.elements.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInPoset(x.word().clone()))
        }
    }

    /// Order relation computed over the explicit cover relations.
    pub fn le(&self, a: &Element, b: &Element) -> Result<bool> {
        self.require_member(a)?;
        self.require_member(b)?;
        Ok(self.down_set(b).contains(a))
    }

    fn down_set(&self, x: &Element) -> BTreeSet<Element> {
        let mut seen = BTreeSet::from([x.clone()]);
        let mut stack = vec![x.clone()];
        while let Some(y) = stack.pop() {
            if let Some(ds) = self.downs.get(&y) {
                for d in ds {
                    if seen.insert(d.clone()) {
                        stack.push(d.clone());
                    }
                }
            }
        }
        seen
    }

    fn up_set(&self, x: &Element) -> BTreeSet<Element> {
        let mut seen = BTreeSet::from([x.clone()]);
        let mut stack = vec![x.clone()];
        while let Some(y) = stack.pop() {
            if let Some(us) = self.ups.get(&y) {
                for u in us {
                    if seen.insert(u.clone()) {
                        stack.push(u.clone());
                    }
                }
            }
        }
        seen
    }

    fn unique_extremum(&self, candidates: &BTreeSet<Element>, want_max: bool) -> Option<Element> {
        let mut extrema = Vec::new();
        'outer: for c in candidates {
            for other in candidates {
                if other == c {
                    continue;
                }
                let dominated = if want_max {
                    self.down_set(other).contains(c)
                } else {
                    self.up_set(other).contains(c)
                };
                if dominated {
                    continue 'outer;
                }
            }
            extrema.push(c.clone());
        }
        if extrema.len() == 1 {
            extrema.pop()
        } else {
            None
        }
    }

    /// Greatest lower bound within the poset, if it exists.
    pub fn meet(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        self.require_member(a)?;
        self.require_member(b)?;
        let common: BTreeSet<Element> = self
            .down_set(a)
            .intersection(&self.down_set(b))
            .cloned()
            .collect();
        Ok(self.unique_extremum(&common, true))
    }

    /// Least upper bound within the poset, if it exists.
    pub fn join(&self, a: &Element, b: &Element) -> Result<Option<Element>> {
        self.require_member(a)?;
        self.require_member(b)?;
        let common: BTreeSet<Element> = self
            .up_set(a)
            .intersection(&self.up_set(b))
            .cloned()
            .collect();
        Ok(self.unique_extremum(&common, false))
    }

    /// Scans a height-3 poset for bowties. Sorted, deterministic output; on a
    /// complete interval any hit is an engine bug, and on a truncation it
    /// would falsify the height-3 lattice theorem and must be surfaced.
    pub fn find_bowties(&self) -> Result<Vec<BowtieWitness>> {
        let h = self.height();
        if h != 3 {
            return Err(Error::WrongHeight(h));
        }
        let atoms = self.layer(1);
        let mids = self.layer(2);
        let above: BTreeMap<&Element, BTreeSet<&Element>> = atoms
            .iter()
            .map(|t| {
                let ups: BTreeSet<&Element> = mids
                    .iter()
                    .filter(|m| self.covers.contains(&((*t).clone(), (**m).clone())))
                    .collect();
                (t, ups)
            })
            .collect();
        let mut out = Vec::new();
        for (i, t1) in atoms.iter().enumerate() {
            for t2 in atoms.iter().skip(i + 1) {
                let shared: Vec<&&Element> = above[t1].intersection(&above[t2]).collect();
                for (j, w1) in shared.iter().enumerate() {
                    for w2 in shared.iter().skip(j + 1) {
                        out.push(BowtieWitness {
                            low: (t1.clone(), t2.clone()),
                            high: ((***w1).clone(), (***w2).clone()),
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Checks that every pair of elements has a meet and a join.
    pub fn check_lattice(&self) -> LatticeReport {
        let elems: Vec<&Element> = self.elements.iter().collect();
        for (i, a) in elems.iter().enumerate() {
            for b in elems.iter().skip(i + 1) {
                let meet = self.meet(a, b).expect("members");
                let join = self.join(a, b).expect("members");
                if meet.is_none() || join.is_none() {
                    return LatticeReport {
                        is_lattice: false,
                        failing_pair: Some(((*a).clone(), (*b).clone())),
                        bounded_evidence: !self.complete,
                    };
                }
            }
        }
        LatticeReport { is_lattice: true, failing_pair: None, bounded_evidence: !self.complete }
    }

    /// Graphviz rendering: one node per element labeled with its normal-form
    /// word, one edge per cover, elements of equal rank grouped.
    pub fn to_dot(&self) -> String {
        let mut ordered: Vec<&Element> = self.elements.iter().collect();
        ordered.sort_by_key(|x| (self.rank_of.get(*x).copied().unwrap_or(0), (*x).clone()));
        let index: BTreeMap<&Element, usize> =
            ordered.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut s = String::new();
        s.push_str("digraph interval {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, x) in ordered.iter().enumerate() {
            let _ = writeln!(s, "  n{} [label=\"{}\"];", i, x);
        }
        let max_rank = self.height();
        for r in 0..=max_rank {
            let ids: Vec<String> = ordered
                .iter()
                .filter(|x| self.rank_of.get(**x) == Some(&r))
                .map(|x| format!("n{}", index[*x]))
                .collect();
            if !ids.is_empty() {
                let _ = writeln!(s, "  {{ rank=same; {}; }}", ids.join("; "));
            }
        }
        for (a, b) in &self.covers {
            let _ = writeln!(s, "  n{} -> n{};", index[a], index[b]);
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::system::standard::*;
    use crate::word::Word;

    fn w(letters: &[usize]) -> Word {
        Word::from_letters(letters.iter().map(|&i| (i - 1) as u8))
    }

    fn elem(sys: &CoxeterSystem, letters: &[usize]) -> Element {
        sys.normal_form(&w(letters)).unwrap()
    }

    fn layer_sizes(p: &IntervalPoset) -> Vec<usize> {
        (0..=p.height()).map(|r| p.layer(r).len()).collect()
    }

    #[test]
    fn a2_interval_shape() {
        let sys = type_a(2);
        let c = elem(&sys, &[1, 2]);
        let p = sys.build_interval(&Element::identity(), &c, None).unwrap();
        assert_eq!(p.elements().len(), 5);
        assert_eq!(layer_sizes(&p), vec![1, 3, 1]);
        assert!(p.complete());
    }

    #[test]
    fn a3_interval_shape() {
        let sys = type_a(3);
        let c = elem(&sys, &[1, 2, 3]);
        let p = sys.build_interval(&Element::identity(), &c, None).unwrap();
        assert_eq!(p.elements().len(), 14);
        assert_eq!(layer_sizes(&p), vec![1, 6, 6, 1]);
    }

    #[test]
    fn affine_interval_is_bounded_evidence_and_grows() {
        let sys = affine_a2();
        let c = elem(&sys, &[1, 2, 3]);
        let p9 = sys.build_interval(&Element::identity(), &c, Some(9)).unwrap();
        assert!(!p9.complete());
        assert_eq!(p9.cutoff(), Some(9));
        let p11 = sys.build_interval(&Element::identity(), &c, Some(11)).unwrap();
        assert!(p11.layer(1).len() > p9.layer(1).len());
        assert!(sys.build_interval(&Element::identity(), &c, None).is_err());
    }

    #[test]
    fn meets_and_joins_in_small_intervals() {
        let a2 = type_a(2);
        let c = elem(&a2, &[1, 2]);
        let p = a2.build_interval(&Element::identity(), &c, None).unwrap();
        let s1 = elem(&a2, &[1]);
        let s2 = elem(&a2, &[2]);
        assert_eq!(p.meet(&s1, &s2).unwrap(), Some(Element::identity()));
        assert_eq!(p.join(&s1, &s2).unwrap(), Some(c));

        let a3 = type_a(3);
        let c3 = elem(&a3, &[1, 2, 3]);
        let p3 = a3.build_interval(&Element::identity(), &c3, None).unwrap();
        let j = p3.join(&elem(&a3, &[1]), &elem(&a3, &[3])).unwrap();
        assert_eq!(j, Some(elem(&a3, &[1, 3])));
        assert!(matches!(
            p3.meet(&elem(&a3, &[2, 1]), &c3).unwrap_err(),
            Error::NotInPoset(_)
        ));
    }

    #[test]
    fn complete_intervals_are_bowtie_free_lattices() {
        for (sys, top) in [
            (type_a(3), vec![1, 2, 3]),
            (type_b(3), vec![1, 2, 3]),
        ] {
            let c = elem(&sys, &top);
            let p = sys.build_interval(&Element::identity(), &c, None).unwrap();
            assert!(p.find_bowties().unwrap().is_empty());
            let report = p.check_lattice();
            assert!(report.is_lattice);
            assert!(!report.bounded_evidence);
        }
    }

    /// Synthetic poset with ranks (1, 2, 2, 1) and a complete bipartite
    /// middle: exactly one bowtie, and not a lattice.
    pub(crate) fn bowtie_fixture() -> IntervalPoset {
        let sys = affine_a2();
        let bottom = Element::identity();
        let t1 = elem(&sys, &[1]);
        let t2 = elem(&sys, &[2]);
        let w1 = elem(&sys, &[1, 2]);
        let w2 = elem(&sys, &[2, 1]);
        let top = elem(&sys, &[1, 2, 3]);
        let elements: BTreeSet<Element> =
            [&bottom, &t1, &t2, &w1, &w2, &top].into_iter().cloned().collect();
        let rank_of: BTreeMap<Element, u32> = [
            (bottom.clone(), 0),
            (t1.clone(), 1),
            (t2.clone(), 1),
            (w1.clone(), 2),
            (w2.clone(), 2),
            (top.clone(), 3),
        ]
        .into();
        let covers: BTreeSet<(Element, Element)> = [
            (bottom.clone(), t1.clone()),
            (bottom.clone(), t2.clone()),
            (t1.clone(), w1.clone()),
            (t1.clone(), w2.clone()),
            (t2.clone(), w1.clone()),
            (t2.clone(), w2.clone()),
            (w1.clone(), top.clone()),
            (w2.clone(), top.clone()),
        ]
        .into();
        IntervalPoset::from_parts(bottom, top, elements, rank_of, covers, true, None)
    }

    #[test]
    fn bowtie_fixture_detected() {
        let p = bowtie_fixture();
        let bowties = p.find_bowties().unwrap();
        assert_eq!(bowties.len(), 1);
        let report = p.check_lattice();
        assert!(!report.is_lattice);
        assert!(report.failing_pair.is_some());
    }

    #[test]
    fn wrong_height_is_rejected() {
        let a2 = type_a(2);
        let c = elem(&a2, &[1, 2]);
        let p = a2.build_interval(&Element::identity(), &c, None).unwrap();
        assert!(matches!(p.find_bowties().unwrap_err(), Error::WrongHeight(2)));
    }

    #[test]
    fn dot_output_counts_nodes_and_edges() {
        let a3 = type_a(3);
        let c = elem(&a3, &[1, 2, 3]);
        let p = a3.build_interval(&Element::identity(), &c, None).unwrap();
        let dot = p.to_dot();
        assert_eq!(dot.matches("[label=").count(), p.elements().len());
        assert_eq!(dot.matches(" -> ").count(), p.covers().len());
        assert!(dot.contains("rank=same"));
    }

    #[test]
    fn translation_by_bottom_element() {
        let a3 = type_a(3);
        let s1 = elem(&a3, &[1]);
        let c = elem(&a3, &[1, 2, 3]);
        let p = a3.build_interval(&s1, &c, None).unwrap();
        assert_eq!(p.bottom(), &s1);
        assert_eq!(p.top(), &c);
        let base = a3
            .build_interval(&Element::identity(), &a3.left_quotient(&s1, &c).unwrap(), None)
            .unwrap();
        assert_eq!(p.elements().len(), base.elements().len());
        for x in base.elements() {
            let shifted = a3.product(&s1, x).unwrap();
            assert!(p.elements().contains(&shifted));
            assert_eq!(p.rank_of(&shifted), base.rank_of(x));
        }
    }
}
