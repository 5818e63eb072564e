//! Interval similarity and the tower of interval-set closures: abstract,
//! basic, congruence and division sets, plus the Smp/Cmp/Crt/Fll operators
//! on the base frame of basic sets.
//!
//! Interval sets are stored extensionally as bitsets over the ≤ n(n+1)/2
//! intervals of the ambient lattice, so every closure is a bounded fixpoint.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lattice::{El, FiniteLattice, Iv};

/// A set of intervals of one lattice, indexed by the lattice's canonical
/// interval order. Verified closure levels are recomputed on demand and
/// never trusted from input.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalSet {
    bits: Bits,
}

/// Closure levels, each implying the previous:
/// division ⟹ congruence ⟹ basic ⟹ abstract.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Level {
    Raw,
    Abstract,
    Basic,
    Congruence,
    Division,
}

impl IntervalSet {
    pub fn empty(l: &FiniteLattice) -> Self {
        IntervalSet {
            bits: Bits::new(l.interval_count()),
        }
    }

    /// The set 𝒪 of all trivial intervals — the bottom of the base frame.
    pub fn trivials(l: &FiniteLattice) -> Self {
        let mut s = Self::empty(l);
        for x in l.els() {
            s.insert(l, Iv { lo: x, hi: x });
        }
        s
    }

    /// The set of all intervals — the top of the base frame.
    pub fn all(l: &FiniteLattice) -> Self {
        let mut s = Self::empty(l);
        s.bits.set_all();
        s
    }

    pub fn from_ivs(l: &FiniteLattice, ivs: &[Iv]) -> Self {
        let mut s = Self::empty(l);
        for &iv in ivs {
            s.insert(l, iv);
        }
        s
    }

    #[inline]
    pub fn contains(&self, l: &FiniteLattice, iv: Iv) -> bool {
        self.bits.get(l.iv_idx(iv))
    }

    #[inline]
    pub fn contains_idx(&self, idx: usize) -> bool {
        self.bits.get(idx)
    }

    pub fn insert(&mut self, l: &FiniteLattice, iv: Iv) {
        self.bits.set(l.iv_idx(iv));
    }

    pub fn insert_idx(&mut self, idx: usize) {
        self.bits.set(idx);
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter<'a>(&'a self, l: &'a FiniteLattice) -> impl Iterator<Item = Iv> + 'a {
        self.bits.ones().map(move |i| l.iv_at(i))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut s = self.clone();
        s.bits.union_with(&other.bits);
        s
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut s = self.clone();
        s.bits.intersect_with(&other.bits);
        s
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Highest verified closure level of this set.
    pub fn level(&self, l: &FiniteLattice) -> Level {
        if !is_abstract(l, self) {
            Level::Raw
        } else if !is_basic(l, self) {
            Level::Abstract
        } else if !is_congruence(l, self) {
            Level::Basic
        } else if !is_predivision(l, self) {
            Level::Congruence
        } else {
            Level::Division
        }
    }
}

/// Interval similarity: I ∼ J iff there are l, r with
/// {I, J} = {\[l, l∨r\], \[l∧r, r\]}. Solving for l and r from the endpoints
/// collapses the search to two meet/join probes:
/// either J.lo∧I.hi = I.lo and J.lo∨I.hi = J.hi, or symmetrically with the
/// roles of I and J swapped.
pub fn similar(l: &FiniteLattice, i: Iv, j: Iv) -> bool {
    (l.meet(j.lo, i.hi) == i.lo && l.join(j.lo, i.hi) == j.hi)
        || (l.meet(i.lo, j.hi) == j.lo && l.join(i.lo, j.hi) == i.hi)
}

/// Abstract: nonempty and closed under similarity.
pub fn is_abstract(l: &FiniteLattice, s: &IntervalSet) -> bool {
    if s.is_empty() {
        return false;
    }
    for iv in s.iter(l) {
        for &j in l.intervals() {
            if similar(l, j, iv) && !s.contains(l, j) {
                return false;
            }
        }
    }
    true
}

/// Basic: abstract and closed under subintervals.
pub fn is_basic(l: &FiniteLattice, s: &IntervalSet) -> bool {
    if !is_abstract(l, s) {
        return false;
    }
    for iv in s.iter(l) {
        let members = l.between(iv.lo, iv.hi);
        for &x in &members {
            for &y in &members {
                if l.leq(x, y) && !s.contains(l, Iv { lo: x, hi: y }) {
                    return false;
                }
            }
        }
    }
    true
}

/// Congruence: basic and closed under abutting intervals
/// (\[a,b\], \[b,c\] ∈ S ⟹ \[a,c\] ∈ S).
pub fn is_congruence(l: &FiniteLattice, s: &IntervalSet) -> bool {
    if !is_basic(l, s) {
        return false;
    }
    for a in l.els() {
        for b in l.upset(a) {
            if !s.contains(l, Iv { lo: a, hi: b }) {
                continue;
            }
            for c in l.upset(b) {
                if s.contains(l, Iv { lo: b, hi: c }) && !s.contains(l, Iv { lo: a, hi: c }) {
                    return false;
                }
            }
        }
    }
    true
}

/// Pre-division over a congruence set reduces to closure under the full
/// join per base: here we close each base's fiber under pairwise joins and
/// demand the results stay inside the set, which is the exact finite form
/// of closure under joins of arbitrary subfamilies.
pub fn is_predivision(l: &FiniteLattice, s: &IntervalSet) -> bool {
    for a in l.els() {
        let fiber: Vec<El> = l
            .upset(a)
            .filter(|&x| s.contains(l, Iv { lo: a, hi: x }))
            .collect();
        let mut closed: Vec<El> = fiber.clone();
        let mut k = 0;
        while k < closed.len() {
            let x = closed[k];
            for idx in 0..closed.len() {
                let j = l.join(x, closed[idx]);
                if !closed.contains(&j) {
                    closed.push(j);
                }
            }
            k += 1;
        }
        for x in closed {
            if !s.contains(l, Iv { lo: a, hi: x }) {
                return false;
            }
        }
    }
    true
}

/// Division: congruence and pre-division.
pub fn is_division(l: &FiniteLattice, s: &IntervalSet) -> bool {
    is_congruence(l, s) && is_predivision(l, s)
}

/// Smallest basic set containing S ∪ 𝒪: the fixpoint of similarity- and
/// subinterval-closure. Inflationary, monotone, idempotent.
pub fn basic_closure(l: &FiniteLattice, s: &IntervalSet) -> IntervalSet {
    let mut out = s.union(&IntervalSet::trivials(l));
    loop {
        let mut grew = false;
        for idx in 0..l.interval_count() {
            if !out.contains_idx(idx) {
                continue;
            }
            let iv = l.iv_at(idx);
            let members = l.between(iv.lo, iv.hi);
            for &x in &members {
                for &y in &members {
                    if l.leq(x, y) {
                        let sub = Iv { lo: x, hi: y };
                        if !out.contains(l, sub) {
                            out.insert(l, sub);
                            grew = true;
                        }
                    }
                }
            }
            for &j in l.intervals() {
                if !out.contains(l, j) && similar(l, j, iv) {
                    out.insert(l, j);
                    grew = true;
                }
            }
        }
        if !grew {
            return out;
        }
    }
}

/// Least congruence set including B: the intervals partitionable by a
/// finite chain with steps in B, computed as reachability in the element
/// graph with an edge x → y whenever \[x,y\] ∈ B.
pub fn cng_closure(l: &FiniteLattice, b: &IntervalSet) -> IntervalSet {
    let b = if is_basic(l, b) { b.clone() } else { basic_closure(l, b) };
    let n = l.n();
    let mut reach: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
    for iv in b.iter(l) {
        reach[iv.lo.0 as usize].set(iv.hi.0 as usize);
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i].get(k) {
                let rk = reach[k].clone();
                reach[i].union_with(&rk);
            }
        }
    }
    let mut out = IntervalSet::empty(l);
    for &iv in l.intervals() {
        if reach[iv.lo.0 as usize].get(iv.hi.0 as usize) {
            out.insert(l, iv);
        }
    }
    out
}

/// Least division set containing B, by the one-pass characterization:
/// \[a,b\] belongs iff every a ≤ x < b admits x < y ≤ b with \[x,y\] in the
/// basic closure of B. The iterative fixpoint in [`crate::oracles`] is the
/// independent route kept for verification.
pub fn dvs_closure(l: &FiniteLattice, s: &IntervalSet) -> IntervalSet {
    let b = if is_basic(l, s) { s.clone() } else { basic_closure(l, s) };
    let mut out = IntervalSet::empty(l);
    for &iv in l.intervals() {
        let inside = l.between(iv.lo, iv.hi);
        let ok = inside.iter().all(|&x| {
            x == iv.hi
                || inside
                    .iter()
                    .any(|&y| l.lt(x, y) && b.contains(l, Iv { lo: x, hi: y }))
        });
        if ok {
            out.insert(l, iv);
        }
    }
    debug_assert!(
        !l.is_modular() || is_division(l, &out),
        "division closure must be a division set on an idiom"
    );
    out
}

fn require_basic(l: &FiniteLattice, b: &IntervalSet, what: &str) -> Result<()> {
    if is_basic(l, b) {
        Ok(())
    } else {
        Err(Error::NotBasic(format!("{what} requires a basic input set")))
    }
}

/// B-simple intervals: every inner point splits into a B-half.
pub fn smp(l: &FiniteLattice, b: &IntervalSet) -> Result<IntervalSet> {
    require_basic(l, b, "smp")?;
    let mut out = IntervalSet::empty(l);
    for &iv in l.intervals() {
        let ok = l.between(iv.lo, iv.hi).into_iter().all(|x| {
            b.contains(l, Iv { lo: iv.lo, hi: x }) || b.contains(l, Iv { lo: x, hi: iv.hi })
        });
        if ok {
            out.insert(l, iv);
        }
    }
    Ok(out)
}

/// B-complemented intervals: every x has a y with \[a, x∧y\] and \[x∨y, b\] in B.
pub fn cmp(l: &FiniteLattice, b: &IntervalSet) -> Result<IntervalSet> {
    require_basic(l, b, "cmp")?;
    let mut out = IntervalSet::empty(l);
    for &iv in l.intervals() {
        let inside = l.between(iv.lo, iv.hi);
        let ok = inside.iter().all(|&x| {
            inside.iter().any(|&y| {
                b.contains(l, Iv { lo: iv.lo, hi: l.meet(x, y) })
                    && b.contains(l, Iv { lo: l.join(x, y), hi: iv.hi })
            })
        });
        if ok {
            out.insert(l, iv);
        }
    }
    Ok(out)
}

/// B-critical intervals: every x strictly above the base has \[x, b\] in B.
pub fn crt(l: &FiniteLattice, b: &IntervalSet) -> Result<IntervalSet> {
    require_basic(l, b, "crt")?;
    let mut out = IntervalSet::empty(l);
    for &iv in l.intervals() {
        let ok = l
            .between(iv.lo, iv.hi)
            .into_iter()
            .all(|x| x == iv.lo || b.contains(l, Iv { lo: x, hi: iv.hi }));
        if ok {
            out.insert(l, iv);
        }
    }
    Ok(out)
}

/// B-full intervals: every x has a complement y over the base with
/// \[x∨y, b\] in B.
pub fn fll(l: &FiniteLattice, b: &IntervalSet) -> Result<IntervalSet> {
    require_basic(l, b, "fll")?;
    let mut out = IntervalSet::empty(l);
    for &iv in l.intervals() {
        let inside = l.between(iv.lo, iv.hi);
        let ok = inside.iter().all(|&x| {
            inside
                .iter()
                .any(|&y| l.meet(x, y) == iv.lo && b.contains(l, Iv { lo: l.join(x, y), hi: iv.hi }))
        });
        if ok {
            out.insert(l, iv);
        }
    }
    Ok(out)
}

/// The named operators on basic sets, plus the identity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SetOperator {
    Identity,
    Smp,
    Cmp,
    Crt,
    Fll,
}

impl SetOperator {
    pub fn apply(&self, l: &FiniteLattice, b: &IntervalSet) -> Result<IntervalSet> {
        match self {
            SetOperator::Identity => {
                require_basic(l, b, "identity operator")?;
                Ok(b.clone())
            }
            SetOperator::Smp => smp(l, b),
            SetOperator::Cmp => cmp(l, b),
            SetOperator::Crt => crt(l, b),
            SetOperator::Fll => fll(l, b),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SetOperator::Identity => "identity",
            SetOperator::Smp => "smp",
            SetOperator::Cmp => "cmp",
            SetOperator::Crt => "crt",
            SetOperator::Fll => "fll",
        }
    }
}

/// Cover intervals of the lattice, in canonical order.
pub fn cover_intervals(l: &FiniteLattice) -> Vec<Iv> {
    l.covers().iter().map(|&(lo, hi)| Iv { lo, hi }).collect()
}

/// Projectivity classes of cover intervals: connected components of the
/// similarity relation restricted to covers (transposes of covers are
/// covers, so the relation never leaves this set). Returns, per cover, its
/// class index.
pub fn cover_classes(l: &FiniteLattice) -> (Vec<Iv>, Vec<usize>) {
    let covers = cover_intervals(l);
    let m = covers.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..m {
        for j in i + 1..m {
            if similar(l, covers[i], covers[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut class_of_root = std::collections::BTreeMap::new();
    let mut classes = Vec::with_capacity(m);
    for i in 0..m {
        let r = find(&mut parent, i);
        let next = class_of_root.len();
        let c = *class_of_root.entry(r).or_insert(next);
        classes.push(c);
    }
    (covers, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracles;

    fn iv(l: &FiniteLattice, lo: &str, hi: &str) -> Iv {
        l.iv(l.el(lo).unwrap(), l.el(hi).unwrap()).unwrap()
    }

    #[test]
    fn similarity_examples() {
        let b2 = fixtures::b2();
        for &i in b2.intervals() {
            assert!(similar(&b2, i, i));
        }
        assert!(similar(&b2, iv(&b2, "0", "a"), iv(&b2, "b", "1")));
        assert!(!similar(&b2, iv(&b2, "0", "a"), iv(&b2, "0", "b")));

        let c3 = fixtures::c3();
        // frozen from the exhaustive l,r search: no transpose pair exists
        assert!(!similar(&c3, iv(&c3, "0", "m"), iv(&c3, "m", "1")));
    }

    #[test]
    fn similarity_matches_exhaustive_search() {
        for entry in fixtures::corpus() {
            let l = &entry.lattice;
            for &i in l.intervals() {
                for &j in l.intervals() {
                    assert_eq!(
                        similar(l, i, j),
                        oracles::similar_exhaustive(l, i, j),
                        "similarity mismatch in {} at {:?} {:?}",
                        entry.name,
                        i,
                        j
                    );
                }
            }
        }
    }

    #[test]
    fn basic_closure_examples() {
        let c3 = fixtures::c3();
        assert_eq!(
            basic_closure(&c3, &IntervalSet::empty(&c3)),
            IntervalSet::trivials(&c3)
        );
        let full = basic_closure(&c3, &IntervalSet::from_ivs(&c3, &[iv(&c3, "0", "1")]));
        assert_eq!(full.len(), 6);

        let b2 = fixtures::b2();
        let s = basic_closure(&b2, &IntervalSet::from_ivs(&b2, &[iv(&b2, "0", "a")]));
        let mut expect = IntervalSet::trivials(&b2);
        expect.insert(&b2, iv(&b2, "0", "a"));
        expect.insert(&b2, iv(&b2, "b", "1"));
        assert_eq!(s, expect);
        assert!(is_basic(&b2, &s));
    }

    #[test]
    fn cng_closure_examples() {
        let c3 = fixtures::c3();
        let triv = IntervalSet::trivials(&c3);
        assert_eq!(cng_closure(&c3, &triv), triv);

        let steps = basic_closure(
            &c3,
            &IntervalSet::from_ivs(&c3, &[iv(&c3, "0", "m"), iv(&c3, "m", "1")]),
        );
        assert_eq!(cng_closure(&c3, &steps), IntervalSet::all(&c3));

        let b2 = fixtures::b2();
        let s = basic_closure(&b2, &IntervalSet::from_ivs(&b2, &[iv(&b2, "0", "a")]));
        assert_eq!(cng_closure(&b2, &s), s, "no two members abut nontrivially");
    }

    #[test]
    fn dvs_closure_examples() {
        let b2 = fixtures::b2();
        let triv = IntervalSet::trivials(&b2);
        assert_eq!(dvs_closure(&b2, &triv), triv);

        // simple intervals generate everything in a finite lattice
        for entry in fixtures::corpus() {
            let l = &entry.lattice;
            let simple = smp(l, &IntervalSet::trivials(l)).unwrap();
            assert_eq!(
                dvs_closure(l, &simple),
                IntervalSet::all(l),
                "cover intervals generate all of {}",
                entry.name
            );
        }

        let s = basic_closure(&b2, &IntervalSet::from_ivs(&b2, &[iv(&b2, "0", "a")]));
        let d = dvs_closure(&b2, &s);
        assert_eq!(d, s, "[0,1] fails the closure predicate at x=a");
        assert!(is_division(&b2, &d));
    }

    #[test]
    fn dvs_closure_agrees_with_fixpoint_oracle() {
        for entry in fixtures::corpus() {
            let l = &entry.lattice;
            // seed with each single interval
            for &seed in l.intervals() {
                let s = IntervalSet::from_ivs(l, &[seed]);
                assert_eq!(
                    dvs_closure(l, &s),
                    oracles::dvs_fixpoint(l, &s),
                    "mismatch in {} at seed {:?}",
                    entry.name,
                    seed
                );
            }
        }
    }

    #[test]
    fn operator_examples() {
        let c3 = fixtures::c3();
        let triv = IntervalSet::trivials(&c3);
        let crt0 = crt(&c3, &triv).unwrap();
        let mut expect = triv.clone();
        expect.insert(&c3, iv(&c3, "0", "m"));
        expect.insert(&c3, iv(&c3, "m", "1"));
        assert_eq!(crt0, expect);

        let b2 = fixtures::b2();
        let triv2 = IntervalSet::trivials(&b2);
        assert_eq!(cmp(&b2, &triv2).unwrap(), IntervalSet::all(&b2));
        let crt_b2 = crt(&b2, &triv2).unwrap();
        assert!(!crt_b2.contains(&b2, iv(&b2, "0", "1")), "x=a leaves [a,1] nontrivial");
        assert_eq!(crt_b2.len(), 4 + 4);

        // Smp(𝒪) = Crt(𝒪) and Cmp(𝒪) = Fll(𝒪)
        for entry in fixtures::corpus() {
            let l = &entry.lattice;
            let t = IntervalSet::trivials(l);
            assert_eq!(smp(l, &t).unwrap(), crt(l, &t).unwrap());
            assert_eq!(cmp(l, &t).unwrap(), fll(l, &t).unwrap());
        }
    }

    #[test]
    fn operators_reject_non_basic_input() {
        let b2 = fixtures::b2();
        let raw = IntervalSet::from_ivs(&b2, &[iv(&b2, "0", "a")]);
        assert!(matches!(smp(&b2, &raw), Err(Error::NotBasic(_))));
        assert!(matches!(
            SetOperator::Fll.apply(&b2, &IntervalSet::empty(&b2)),
            Err(Error::NotBasic(_))
        ));
    }

    #[test]
    fn operators_emit_basic_sets_and_respect_inclusions() {
        let mut rng_sets = Vec::new();
        for entry in fixtures::corpus() {
            let l = &entry.lattice;
            rng_sets.clear();
            rng_sets.push(IntervalSet::trivials(l));
            for &seed in l.intervals() {
                rng_sets.push(basic_closure(l, &IntervalSet::from_ivs(l, &[seed])));
            }
            for b in &rng_sets {
                let s = smp(l, b).unwrap();
                let c = cmp(l, b).unwrap();
                let cr = crt(l, b).unwrap();
                let f = fll(l, b).unwrap();
                for out in [&s, &c, &cr, &f] {
                    assert!(is_basic(l, out), "operator output must be basic in {}", entry.name);
                    assert!(b.is_subset(out), "operators are inflationary on basic sets");
                }
                assert!(cr.is_subset(&s));
                assert!(f.is_subset(&c));
                assert!(s.is_subset(&c));
                assert!(cr.is_subset(&f));
            }
        }
    }

    #[test]
    fn closure_levels_nest() {
        let b2 = fixtures::b2();
        let raw = IntervalSet::from_ivs(&b2, &[iv(&b2, "0", "a")]);
        assert_eq!(raw.level(&b2), Level::Raw);
        let basic = basic_closure(&b2, &raw);
        assert!(basic.level(&b2) >= Level::Basic);
        let div = dvs_closure(&b2, &raw);
        assert_eq!(div.level(&b2), Level::Division);
        assert_eq!(IntervalSet::trivials(&b2).level(&b2), Level::Division);
        assert_eq!(IntervalSet::all(&b2).level(&b2), Level::Division);
    }

    #[test]
    fn closures_are_closure_operators() {
        // inflationary, monotone, idempotent — spot instances here; the
        // randomized sweep lives in the integration suite
        let l = fixtures::m3();
        let a = IntervalSet::from_ivs(&l, &[iv(&l, "0", "a")]);
        let b = IntervalSet::from_ivs(&l, &[iv(&l, "0", "a"), iv(&l, "0", "1")]);
        for close in [basic_closure, cng_closure, dvs_closure] {
            let ca = close(&l, &a);
            let cb = close(&l, &b);
            assert!(a.union(&IntervalSet::trivials(&l)).is_subset(&ca));
            assert!(ca.is_subset(&cb));
            assert_eq!(close(&l, &ca), ca);
        }
    }

    #[test]
    fn cover_classes_of_diamond_are_projective() {
        let m3 = fixtures::m3();
        let (covers, classes) = cover_classes(&m3);
        assert_eq!(covers.len(), 6);
        // all six covers of the diamond are projective to each other
        assert!(classes.iter().all(|&c| c == classes[0]));

        let b2 = fixtures::b2();
        let (covers, classes) = cover_classes(&b2);
        assert_eq!(covers.len(), 4);
        let distinct: std::collections::BTreeSet<_> = classes.iter().collect();
        assert_eq!(distinct.len(), 2);
    }
}
