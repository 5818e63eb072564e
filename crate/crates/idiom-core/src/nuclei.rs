//! Inflators on a lattice, their classification and towers, nucleus
//! enumeration, quotients, and the correspondence between nuclei and
//! division sets.
//!
//! A nucleus is an idempotent meet-preserving inflator. Nuclei are in
//! bijection with their fixed sets (meet-closed subsets containing the
//! top), which is what the enumerator walks: 2^|A| closure systems beat
//! |A|^|A| candidate maps by a wide margin at the supported sizes.

use crate::error::{Error, Result};
use crate::interval::{dvs_closure, is_basic, is_division, IntervalSet};
use crate::lattice::{El, FiniteLattice, Iv, DEFAULT_MAX_EXHAUSTIVE};

/// A total function on the elements of one lattice.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementMap {
    table: Vec<El>,
}

impl ElementMap {
    pub fn from_table(table: Vec<El>) -> Self {
        ElementMap { table }
    }

    pub fn identity(l: &FiniteLattice) -> Self {
        ElementMap { table: l.els().collect() }
    }

    /// The constant-top map d̄, the top of every inflator class.
    pub fn constant_top(l: &FiniteLattice) -> Self {
        ElementMap { table: vec![l.top(); l.n()] }
    }

    #[inline]
    pub fn apply(&self, x: El) -> El {
        self.table[x.0 as usize]
    }

    pub fn table(&self) -> &[El] {
        &self.table
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &ElementMap) -> ElementMap {
        ElementMap {
            table: other.table.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// Pointwise order of maps into the same lattice.
    pub fn leq(&self, l: &FiniteLattice, other: &ElementMap) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(&a, &b)| l.leq(a, b))
    }

    pub fn pointwise_meet(&self, l: &FiniteLattice, other: &ElementMap) -> ElementMap {
        ElementMap {
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(&a, &b)| l.meet(a, b))
                .collect(),
        }
    }
}

/// Classification flags for an element map. Consistency:
/// nucleus ⟹ prenucleus ∧ closure, prenucleus ⟹ stable ⟹ inflator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MapClasses {
    pub inflator: bool,
    pub stable: bool,
    pub prenucleus: bool,
    pub closure: bool,
    pub nucleus: bool,
}

pub fn classify(l: &FiniteLattice, d: &ElementMap) -> MapClasses {
    let inflator = l.els().all(|x| l.leq(x, d.apply(x)))
        && l
            .els()
            .all(|x| l.els().all(|y| !l.leq(x, y) || l.leq(d.apply(x), d.apply(y))));
    let stable = inflator
        && l.els().all(|x| {
            l.els()
                .all(|y| l.leq(l.meet(d.apply(x), y), d.apply(l.meet(x, y))))
        });
    let prenucleus = inflator
        && l.els().all(|x| {
            l.els()
                .all(|y| d.apply(l.meet(x, y)) == l.meet(d.apply(x), d.apply(y)))
        });
    let closure = inflator && l.els().all(|x| d.apply(d.apply(x)) == d.apply(x));
    MapClasses {
        inflator,
        stable,
        prenucleus,
        closure,
        nucleus: prenucleus && closure,
    }
}

pub fn is_nucleus(l: &FiniteLattice, d: &ElementMap) -> bool {
    classify(l, d).nucleus
}

/// The stabilized tower of an inflator.
#[derive(Clone, Debug)]
pub struct Tower {
    pub d_infinity: ElementMap,
    /// Least γ with d^γ = d^{γ+1}.
    pub steps: usize,
    /// Whether d^∞(0̲) = 1̄.
    pub has_length: bool,
}

pub fn tower(l: &FiniteLattice, d: &ElementMap) -> Result<Tower> {
    if !classify(l, d).inflator {
        return Err(Error::NotInflator("tower requires an inflator".into()));
    }
    let mut cur = ElementMap::identity(l);
    let mut steps = 0;
    loop {
        let next = d.compose(&cur);
        if next == cur {
            break;
        }
        cur = next;
        steps += 1;
    }
    // steps counted iterations until d∘cur = cur, i.e. least γ with d^γ = d^{γ+1}
    let has_length = cur.apply(l.bottom()) == l.top();
    Ok(Tower { d_infinity: cur, steps, has_length })
}

/// All nuclei of the lattice, with their division sets.
#[derive(Clone, Debug)]
pub struct NucleusLattice {
    nuclei: Vec<ElementMap>,
    division_sets: Vec<IntervalSet>,
}

/// Enumerates the nuclei of `l` by walking meet-closed subsets containing
/// the top (candidate fixed sets) and keeping those whose induced closure
/// preserves binary meets.
pub fn enumerate_nuclei(l: &FiniteLattice, max: usize) -> Result<NucleusLattice> {
    l.check_size(max)?;
    // the subset walk is 2^n regardless of the caller's cap
    l.check_size(24)?;
    let n = l.n();
    let top = l.top().0 as usize;
    let mut nuclei = Vec::new();
    for mask in 0u64..(1 << n) {
        if mask >> top & 1 == 0 {
            continue;
        }
        let members: Vec<El> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| El(i as u16)).collect();
        let meet_closed = members
            .iter()
            .all(|&x| members.iter().all(|&y| mask >> l.meet(x, y).0 & 1 == 1));
        if !meet_closed {
            continue;
        }
        let table: Vec<El> = l
            .els()
            .map(|x| l.meet_all(members.iter().copied().filter(|&f| l.leq(x, f))))
            .collect();
        let j = ElementMap::from_table(table);
        let prenucleus = l.els().all(|x| {
            l.els()
                .all(|y| j.apply(l.meet(x, y)) == l.meet(j.apply(x), j.apply(y)))
        });
        if prenucleus {
            nuclei.push(j);
        }
    }
    nuclei.sort();
    let division_sets = nuclei
        .iter()
        .map(|j| division_of_nucleus(l, j))
        .collect();
    Ok(NucleusLattice { nuclei, division_sets })
}

fn division_of_nucleus(l: &FiniteLattice, j: &ElementMap) -> IntervalSet {
    let mut d = IntervalSet::empty(l);
    for &iv in l.intervals() {
        if l.leq(iv.hi, j.apply(iv.lo)) {
            d.insert(l, iv);
        }
    }
    d
}

impl NucleusLattice {
    pub fn len(&self) -> usize {
        self.nuclei.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nuclei.is_empty()
    }

    pub fn nucleus(&self, i: usize) -> &ElementMap {
        &self.nuclei[i]
    }

    pub fn nuclei(&self) -> &[ElementMap] {
        &self.nuclei
    }

    pub fn division_set(&self, i: usize) -> &IntervalSet {
        &self.division_sets[i]
    }

    pub fn division_sets(&self) -> &[IntervalSet] {
        &self.division_sets
    }

    pub fn index_of(&self, j: &ElementMap) -> Option<usize> {
        self.nuclei.binary_search(j).ok()
    }

    pub fn index_of_division(&self, d: &IntervalSet) -> Option<usize> {
        self.division_sets.iter().position(|x| x == d)
    }

    pub fn identity_index(&self, l: &FiniteLattice) -> usize {
        self.index_of(&ElementMap::identity(l))
            .expect("the identity is a nucleus of every lattice")
    }

    pub fn top_index(&self, l: &FiniteLattice) -> usize {
        self.index_of(&ElementMap::constant_top(l))
            .expect("the constant-top map is a nucleus of every lattice")
    }

    /// Pointwise meet, which is again a nucleus.
    pub fn meet(&self, l: &FiniteLattice, i: usize, j: usize) -> usize {
        let m = self.nuclei[i].pointwise_meet(l, &self.nuclei[j]);
        self.index_of(&m)
            .expect("the pointwise meet of nuclei is a nucleus")
    }

    /// Join computed through division sets: the division closure of the
    /// union corresponds to the join in the nucleus lattice. Fails only
    /// when the ambient lattice is not an idiom, in which case the closure
    /// can land outside the division sets.
    pub fn join(&self, l: &FiniteLattice, i: usize, j: usize) -> Result<usize> {
        self.join_all(l, [i, j])
    }

    pub fn join_all(
        &self,
        l: &FiniteLattice,
        idxs: impl IntoIterator<Item = usize>,
    ) -> Result<usize> {
        let mut u = IntervalSet::trivials(l);
        for i in idxs {
            u = u.union(&self.division_sets[i]);
        }
        let d = dvs_closure(l, &u);
        self.index_of_division(&d).ok_or_else(|| {
            Error::Invariant(
                "division closure of a union of division sets escaped the division sets;                  the ambient lattice is not an idiom"
                    .into(),
            )
        })
    }

    /// Materializes N(A) as a lattice with elements `n00, n01, …` in the
    /// canonical nucleus order. Construction validates that every pair has
    /// unique meets and joins; the frame law itself is a suite check.
    pub fn to_lattice(&self, l: &FiniteLattice) -> Result<FiniteLattice> {
        if self.len() > 256 {
            return Err(Error::SizeLimit(format!(
                "nucleus lattice has {} elements; cap for materialization is 256",
                self.len()
            )));
        }
        let width = (self.len().max(2) - 1).to_string().len().max(2);
        let ids: Vec<String> = (0..self.len()).map(|i| format!("n{i:0width$}")).collect();
        let mut covers = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.nuclei[i].leq(l, &self.nuclei[j]) {
                    covers.push((ids[i].clone(), ids[j].clone()));
                }
            }
        }
        FiniteLattice::from_relation(&ids, &covers)
    }
}

/// The quotient A_j: elements fixed by the nucleus, with inherited meets
/// and joins given by j(x ∨ y). Original element ids are kept.
pub fn quotient(l: &FiniteLattice, j: &ElementMap) -> Result<FiniteLattice> {
    if !is_nucleus(l, j) {
        return Err(Error::NotNucleus("quotient requires a nucleus".into()));
    }
    let fixed: Vec<El> = l.els().filter(|&x| j.apply(x) == x).collect();
    let ids: Vec<String> = fixed.iter().map(|&x| l.id(x).to_string()).collect();
    let mut covers = Vec::new();
    for &x in &fixed {
        for &y in &fixed {
            if x != y && l.leq(x, y) {
                covers.push((l.id(x).to_string(), l.id(y).to_string()));
            }
        }
    }
    let q = FiniteLattice::from_relation(&ids, &covers)?;
    // meets are inherited and joins are j(x ∨ y); both hold by construction
    // of the restricted order, checked cheaply here
    for &x in &fixed {
        for &y in &fixed {
            let qx = q.el(l.id(x))?;
            let qy = q.el(l.id(y))?;
            debug_assert_eq!(q.el(l.id(l.meet(x, y)))?, q.meet(qx, qy));
            debug_assert_eq!(q.el(l.id(j.apply(l.join(x, y))))?, q.join(qx, qy));
        }
    }
    Ok(q)
}

/// The division set of a nucleus: \[a,b\] belongs iff b ≤ j(a).
pub fn nucleus_to_division(l: &FiniteLattice, j: &ElementMap) -> Result<IntervalSet> {
    if !is_nucleus(l, j) {
        return Err(Error::NotNucleus(
            "division set extraction requires a nucleus".into(),
        ));
    }
    Ok(division_of_nucleus(l, j))
}

/// The nucleus of a division set: its associated inflator a ↦ ⋁{x : \[a,x\] ∈ D}.
pub fn division_to_nucleus(l: &FiniteLattice, d: &IntervalSet) -> Result<ElementMap> {
    if !is_division(l, d) {
        return Err(Error::NotDivision(
            "nucleus extraction requires a division set".into(),
        ));
    }
    Ok(associated_inflator_unchecked(l, d))
}

/// The associated inflator |B|(a) = ⋁{x : \[a,x\] ∈ B} of a basic set.
/// If B is a congruence set the result is a prenucleus, and if B is a
/// division set it is a nucleus; both facts are suite checks.
pub fn associated_inflator(l: &FiniteLattice, b: &IntervalSet) -> Result<ElementMap> {
    if !is_basic(l, b) {
        return Err(Error::NotBasic(
            "associated inflator requires a basic set".into(),
        ));
    }
    Ok(associated_inflator_unchecked(l, b))
}

fn associated_inflator_unchecked(l: &FiniteLattice, b: &IntervalSet) -> ElementMap {
    let table: Vec<El> = l
        .els()
        .map(|a| {
            l.join_all(
                l.upset(a)
                    .filter(|&x| b.contains(l, Iv { lo: a, hi: x })),
            )
        })
        .collect();
    ElementMap::from_table(table)
}

/// χ(a,b): the largest nucleus with j(a) ∧ b = a, computed as the join (in
/// the nucleus lattice, through division sets) of all satisfying nuclei.
/// Returns the index into `nl`. The result is verified to satisfy the
/// defining condition and to dominate every satisfying nucleus; failure of
/// either means the ambient lattice is not an idiom.
pub fn chi(l: &FiniteLattice, nl: &NucleusLattice, iv: Iv) -> Result<usize> {
    let sat: Vec<usize> = (0..nl.len())
        .filter(|&i| l.meet(nl.nucleus(i).apply(iv.lo), iv.hi) == iv.lo)
        .collect();
    let idx = nl.join_all(l, sat.iter().copied())?;
    let j = nl.nucleus(idx);
    if l.meet(j.apply(iv.lo), iv.hi) != iv.lo {
        return Err(Error::Invariant(format!(
            "join of nuclei separating [{}, {}] does not itself separate it",
            l.id(iv.lo),
            l.id(iv.hi)
        )));
    }
    for &s in &sat {
        if !nl.nucleus(s).leq(l, j) {
            return Err(Error::Invariant(
                "a satisfying nucleus escapes the computed join".into(),
            ));
        }
    }
    Ok(idx)
}

/// χ on every interval, indexed by the lattice's interval order.
pub fn all_chi(l: &FiniteLattice, nl: &NucleusLattice) -> Result<Vec<usize>> {
    l.intervals().iter().map(|&iv| chi(l, nl, iv)).collect()
}

/// Convenience: enumerate nuclei at the default exhaustive cap.
pub fn nucleus_lattice(l: &FiniteLattice) -> Result<NucleusLattice> {
    enumerate_nuclei(l, DEFAULT_MAX_EXHAUSTIVE)
}

/// All division sets of the lattice, materialized as a value lattice with
/// elements `d00, d01, …` ordered by inclusion. Meets are intersections
/// and joins are division closures of unions; the correspondence with
/// nuclei makes the enumeration exhaustive.
#[derive(Clone, Debug)]
pub struct DivisionLattice {
    sets: Vec<IntervalSet>,
    lattice: FiniteLattice,
}

pub fn division_lattice(l: &FiniteLattice, nl: &NucleusLattice) -> Result<DivisionLattice> {
    let mut sets: Vec<IntervalSet> = nl.division_sets().to_vec();
    sets.sort_by_key(|s| (s.len(), s.iter(l).collect::<Vec<_>>()));
    let width = (sets.len().max(2) - 1).to_string().len().max(2);
    let ids: Vec<String> = (0..sets.len()).map(|i| format!("d{i:0width$}")).collect();
    let mut covers = Vec::new();
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            if i != j && sets[i].is_subset(&sets[j]) {
                covers.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    let lattice = FiniteLattice::from_relation(&ids, &covers)?;
    Ok(DivisionLattice { sets, lattice })
}

impl DivisionLattice {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn set(&self, x: El) -> &IntervalSet {
        &self.sets[x.0 as usize]
    }

    pub fn sets(&self) -> &[IntervalSet] {
        &self.sets
    }

    pub fn el_of_set(&self, s: &IntervalSet) -> Option<El> {
        self.sets.iter().position(|x| x == s).map(|i| El(i as u16))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracles;

    fn map(l: &FiniteLattice, pairs: &[(&str, &str)]) -> ElementMap {
        let mut table: Vec<El> = l.els().collect();
        for (x, y) in pairs {
            table[l.el(x).unwrap().0 as usize] = l.el(y).unwrap();
        }
        ElementMap::from_table(table)
    }

    #[test]
    fn classify_identity_and_top() {
        for entry in fixtures::corpus() {
            let l = &entry.lattice;
            for m in [ElementMap::identity(l), ElementMap::constant_top(l)] {
                let c = classify(l, &m);
                assert!(c.inflator && c.stable && c.prenucleus && c.closure && c.nucleus);
            }
        }
    }

    #[test]
    fn classify_successor_map_on_chain() {
        let c3 = fixtures::c3();
        let d = map(&c3, &[("0", "m"), ("m", "1")]);
        let c = classify(&c3, &d);
        assert!(c.inflator && c.stable);
        // monotone maps on a chain preserve binary meets, so the map is a
        // prenucleus even though it is not idempotent
        assert!(c.prenucleus);
        assert!(!c.closure && !c.nucleus);
    }

    #[test]
    fn classify_flag_consistency() {
        // over some deliberately non-monotone / non-inflationary tables too
        let b2 = fixtures::b2();
        let weird = map(&b2, &[("a", "0")]);
        let c = classify(&b2, &weird);
        assert!(!c.inflator && !c.stable && !c.nucleus);
        for entry in fixtures::corpus() {
            let l = &entry.lattice;
            let nl = nucleus_lattice(l).unwrap();
            for j in nl.nuclei() {
                let c = classify(l, j);
                assert!(c.nucleus && c.prenucleus && c.closure && c.stable && c.inflator);
            }
        }
    }

    #[test]
    fn tower_examples() {
        let c3 = fixtures::c3();
        let id = ElementMap::identity(&c3);
        let t = tower(&c3, &id).unwrap();
        assert_eq!(t.steps, 0);
        assert!(!t.has_length);

        let succ = map(&c3, &[("0", "m"), ("m", "1")]);
        let t = tower(&c3, &succ).unwrap();
        assert_eq!(t.d_infinity, ElementMap::constant_top(&c3));
        assert_eq!(t.steps, 2);
        assert!(t.has_length);

        let t = tower(&c3, &ElementMap::constant_top(&c3)).unwrap();
        assert_eq!(t.steps, 1);
        assert!(t.has_length);

        let point = fixtures::point();
        let t = tower(&point, &ElementMap::identity(&point)).unwrap();
        assert_eq!(t.steps, 0);
        assert!(t.has_length, "bottom and top coincide on the point");

        let not_inflator = map(&c3, &[("m", "0")]);
        assert!(matches!(tower(&c3, &not_inflator), Err(Error::NotInflator(_))));
    }

    #[test]
    fn tower_is_idempotent_above_d() {
        for entry in fixtures::corpus() {
            let l = &entry.lattice;
            let nl = nucleus_lattice(l).unwrap();
            // nuclei, join-translations x ↦ x∨c, and their composites give
            // a spread of non-idempotent inflators
            let mut samples: Vec<ElementMap> = nl.nuclei().to_vec();
            for c in l.els() {
                samples.push(ElementMap::from_table(
                    l.els().map(|x| l.join(x, c)).collect(),
                ));
            }
            for j in nl.nuclei() {
                for c in l.els() {
                    let shift = ElementMap::from_table(
                        l.els().map(|x| l.join(x, c)).collect(),
                    );
                    samples.push(j.compose(&shift));
                }
            }
            for d in &samples {
                assert!(classify(l, d).inflator);
                let t = tower(l, d).unwrap();
                assert!(d.leq(l, &t.d_infinity));
                assert_eq!(t.d_infinity.compose(&t.d_infinity), t.d_infinity);
                assert!(classify(l, &t.d_infinity).closure);
            }
        }
    }

    #[test]
    fn nuclei_counts_on_small_lattices() {
        assert_eq!(nucleus_lattice(&fixtures::point()).unwrap().len(), 1);
        assert_eq!(nucleus_lattice(&fixtures::c2()).unwrap().len(), 2);
        let nl = nucleus_lattice(&fixtures::c3()).unwrap();
        assert_eq!(nl.len(), 4);
        let frame = nl.to_lattice(&fixtures::c3()).unwrap();
        assert!(frame.is_frame());
        assert_eq!(frame.covers().len(), 4, "N(C3) is the Boolean square");
    }

    #[test]
    fn nuclei_match_bruteforce_enumeration() {
        for l in [
            fixtures::point(),
            fixtures::c2(),
            fixtures::c3(),
            fixtures::b2(),
            fixtures::m3(),
        ] {
            let nl = nucleus_lattice(&l).unwrap();
            let brute = oracles::nuclei_bruteforce(&l);
            let mine: Vec<Vec<El>> = nl.nuclei().iter().map(|j| j.table().to_vec()).collect();
            assert_eq!(mine, brute);
        }
    }

    #[test]
    fn size_limit_enforced() {
        let l = fixtures::subgroup_lattice(2, &[2, 1]).unwrap();
        assert!(matches!(enumerate_nuclei(&l, 4), Err(Error::SizeLimit(_))));
        assert!(enumerate_nuclei(&l, 12).is_ok());
    }

    #[test]
    fn quotient_examples() {
        let c3 = fixtures::c3();
        let id = ElementMap::identity(&c3);
        assert_eq!(quotient(&c3, &id).unwrap().n(), 3);
        assert_eq!(quotient(&c3, &ElementMap::constant_top(&c3)).unwrap().n(), 1);

        let j = map(&c3, &[("0", "m")]);
        let q = quotient(&c3, &j).unwrap();
        assert_eq!(q.n(), 2);
        assert!(q.el("m").is_ok() && q.el("1").is_ok(), "original ids kept");

        let succ = map(&c3, &[("0", "m"), ("m", "1")]);
        assert!(matches!(quotient(&c3, &succ), Err(Error::NotNucleus(_))));
    }

    #[test]
    fn quotients_of_idioms_stay_modular() {
        for entry in fixtures::corpus() {
            let l = &entry.lattice;
            let nl = nucleus_lattice(l).unwrap();
            for j in nl.nuclei() {
                assert!(quotient(l, j).unwrap().is_modular());
            }
        }
    }

    #[test]
    fn division_roundtrip_examples() {
        let c3 = fixtures::c3();
        let id = ElementMap::identity(&c3);
        assert_eq!(
            nucleus_to_division(&c3, &id).unwrap(),
            IntervalSet::trivials(&c3)
        );
        assert_eq!(
            nucleus_to_division(&c3, &ElementMap::constant_top(&c3)).unwrap(),
            IntervalSet::all(&c3)
        );

        let j = map(&c3, &[("0", "m")]);
        let d = nucleus_to_division(&c3, &j).unwrap();
        let mut expect = IntervalSet::trivials(&c3);
        expect.insert(&c3, c3.iv(c3.el("0").unwrap(), c3.el("m").unwrap()).unwrap());
        assert_eq!(d, expect);
        assert_eq!(division_to_nucleus(&c3, &d).unwrap(), j);
    }

    #[test]
    fn division_roundtrips_are_order_isomorphisms() {
        for entry in fixtures::corpus() {
            let l = &entry.lattice;
            let nl = nucleus_lattice(l).unwrap();
            for i in 0..nl.len() {
                let d = nl.division_set(i);
                assert!(is_division(l, d), "in {}", entry.name);
                assert_eq!(&division_to_nucleus(l, d).unwrap(), nl.nucleus(i));
                assert_eq!(&associated_inflator(l, d).unwrap(), nl.nucleus(i));
                for k in 0..nl.len() {
                    assert_eq!(
                        nl.nucleus(i).leq(l, nl.nucleus(k)),
                        nl.division_set(i).is_subset(nl.division_set(k))
                    );
                }
            }
        }
    }

    #[test]
    fn non_division_input_rejected() {
        let b2 = fixtures::b2();
        let raw = IntervalSet::from_ivs(
            &b2,
            &[b2.iv(b2.el("0").unwrap(), b2.el("a").unwrap()).unwrap()],
        );
        assert!(matches!(
            division_to_nucleus(&b2, &raw),
            Err(Error::NotDivision(_))
        ));
        assert!(matches!(
            associated_inflator(&b2, &raw),
            Err(Error::NotBasic(_))
        ));
    }

    #[test]
    fn associated_inflator_examples() {
        let c3 = fixtures::c3();
        assert_eq!(
            associated_inflator(&c3, &IntervalSet::trivials(&c3)).unwrap(),
            ElementMap::identity(&c3)
        );
        assert_eq!(
            associated_inflator(&c3, &IntervalSet::all(&c3)).unwrap(),
            ElementMap::constant_top(&c3)
        );
        let mut b = IntervalSet::trivials(&c3);
        b.insert(&c3, c3.iv(c3.el("0").unwrap(), c3.el("m").unwrap()).unwrap());
        let d = associated_inflator(&c3, &b).unwrap();
        assert_eq!(d, map(&c3, &[("0", "m")]));
    }

    #[test]
    fn chi_examples_on_c3() {
        let c3 = fixtures::c3();
        let nl = nucleus_lattice(&c3).unwrap();
        let at = |lo: &str, hi: &str| {
            let iv = c3.iv(c3.el(lo).unwrap(), c3.el(hi).unwrap()).unwrap();
            nl.nucleus(chi(&c3, &nl, iv).unwrap()).clone()
        };
        assert_eq!(at("0", "m"), map(&c3, &[("m", "1")]));
        assert_eq!(at("0", "1"), map(&c3, &[("m", "1")]));
        assert_eq!(at("m", "1"), map(&c3, &[("0", "m")]));
        assert_eq!(at("m", "m"), ElementMap::constant_top(&c3));
    }
}
