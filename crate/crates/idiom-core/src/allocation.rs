//! Interval-valued maps into a value lattice Λ: allocations (meet-flavored,
//! antitone in the top) and aspects (join-additive along chains), their
//! axiom checkers, the Q/M maps into congruence sets, the H transform from
//! aspects back to allocations, the canonical aspect ξ, and pullback along
//! lattice morphisms.
//!
//! Value lattices are ordinary [`FiniteLattice`]s — chains, nucleus
//! lattices, division-set lattices — so one representation serves both
//! roles.

use crate::error::{AxiomFailure, Error, Result};
use crate::interval::{cover_classes, dvs_closure, IntervalSet};
use crate::lattice::{El, FiniteLattice, Iv};
use rand::Rng;

/// A total map from the intervals of a base lattice into a value lattice,
/// stored by the base lattice's canonical interval order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalValuedMap {
    values: Vec<El>,
}

impl IntervalValuedMap {
    pub fn from_values(values: Vec<El>) -> Self {
        IntervalValuedMap { values }
    }

    pub fn constant(l: &FiniteLattice, alpha: El) -> Self {
        IntervalValuedMap {
            values: vec![alpha; l.interval_count()],
        }
    }

    pub fn from_fn(l: &FiniteLattice, mut f: impl FnMut(Iv) -> El) -> Self {
        IntervalValuedMap {
            values: l.intervals().iter().map(|&iv| f(iv)).collect(),
        }
    }

    #[inline]
    pub fn get(&self, l: &FiniteLattice, iv: Iv) -> El {
        self.values[l.iv_idx(iv)]
    }

    #[inline]
    pub fn get_idx(&self, idx: usize) -> El {
        self.values[idx]
    }

    pub fn values(&self) -> &[El] {
        &self.values
    }

    /// Pointwise order of maps into the same value lattice.
    pub fn leq(&self, lambda: &FiniteLattice, other: &IntervalValuedMap) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| lambda.leq(a, b))
    }

    pub fn pointwise_meet(&self, lambda: &FiniteLattice, other: &IntervalValuedMap) -> Self {
        IntervalValuedMap {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| lambda.meet(a, b))
                .collect(),
        }
    }

    pub fn pointwise_join(&self, lambda: &FiniteLattice, other: &IntervalValuedMap) -> Self {
        IntervalValuedMap {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| lambda.join(a, b))
                .collect(),
        }
    }
}

/// The constant allocation α on every interval (an order embedding of Λ).
pub fn constant_allocation(l: &FiniteLattice, alpha: El) -> IntervalValuedMap {
    IntervalValuedMap::constant(l, alpha)
}

/// The constant aspect α on every interval (an order embedding of Λ).
pub fn constant_aspect(l: &FiniteLattice, alpha: El) -> IntervalValuedMap {
    IntervalValuedMap::constant(l, alpha)
}

/// Directed families over which the continuity axioms are checked: the
/// principal families \[a, x0\] for every x0 above a. A finite directed set
/// contains its join, so the axiom over any directed X follows from these
/// together with the chain axioms; continuity over *arbitrary* subsets is
/// not an axiom and genuinely fails for the separating-nucleus allocation
/// on some seven-element modular lattices.
fn directed_families(l: &FiniteLattice, a: El) -> Vec<Vec<El>> {
    l.upset(a).map(|x0| l.between(a, x0)).collect()
}

/// First failing allocation axiom, if any: transpose equality, monotone
/// shrink under interval extension, superadditivity along chains, and
/// meet-continuity of joins over the base.
pub fn check_allocation(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    f: &IntervalValuedMap,
) -> std::result::Result<(), AxiomFailure> {
    if f.values.len() != l.interval_count() {
        return Err(AxiomFailure {
            axiom: "totality",
            witness: format!(
                "{} values for {} intervals",
                f.values.len(),
                l.interval_count()
            ),
        });
    }
    for lft in l.els() {
        for r in l.els() {
            let lower = Iv { lo: l.meet(lft, r), hi: r };
            let upper = Iv { lo: lft, hi: l.join(lft, r) };
            if f.get(l, lower) != f.get(l, upper) {
                return Err(AxiomFailure {
                    axiom: "transpose-equality",
                    witness: format!("l={} r={}", l.id(lft), l.id(r)),
                });
            }
        }
    }
    for a in l.els() {
        for c in l.upset(a) {
            for b in l.upset(c) {
                let fab = f.get(l, Iv { lo: a, hi: b });
                let fac = f.get(l, Iv { lo: a, hi: c });
                if !lambda.leq(fab, fac) {
                    return Err(AxiomFailure {
                        axiom: "monotone-shrink",
                        witness: format!("a={} c={} b={}", l.id(a), l.id(c), l.id(b)),
                    });
                }
                let fcb = f.get(l, Iv { lo: c, hi: b });
                if !lambda.leq(lambda.meet(fac, fcb), fab) {
                    return Err(AxiomFailure {
                        axiom: "chain-superadditivity",
                        witness: format!("a={} c={} b={}", l.id(a), l.id(c), l.id(b)),
                    });
                }
            }
        }
    }
    for a in l.els() {
        for xs in directed_families(l, a) {
            let join = l.join_all(xs.iter().copied());
            let lhs = f.get(l, Iv { lo: a, hi: join });
            let rhs = lambda.meet_all(xs.iter().map(|&x| f.get(l, Iv { lo: a, hi: x })));
            if lhs != rhs {
                return Err(AxiomFailure {
                    axiom: "meet-continuity",
                    witness: format!(
                        "a={} X={{{}}}",
                        l.id(a),
                        xs.iter().map(|&x| l.id(x)).collect::<Vec<_>>().join(",")
                    ),
                });
            }
        }
    }
    Ok(())
}

/// First failing aspect axiom, if any: transpose equality, additivity along
/// chains, and join-continuity over the base.
pub fn check_aspect(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    f: &IntervalValuedMap,
) -> std::result::Result<(), AxiomFailure> {
    if f.values.len() != l.interval_count() {
        return Err(AxiomFailure {
            axiom: "totality",
            witness: format!(
                "{} values for {} intervals",
                f.values.len(),
                l.interval_count()
            ),
        });
    }
    for lft in l.els() {
        for r in l.els() {
            let lower = Iv { lo: l.meet(lft, r), hi: r };
            let upper = Iv { lo: lft, hi: l.join(lft, r) };
            if f.get(l, lower) != f.get(l, upper) {
                return Err(AxiomFailure {
                    axiom: "transpose-equality",
                    witness: format!("l={} r={}", l.id(lft), l.id(r)),
                });
            }
        }
    }
    for a in l.els() {
        for c in l.upset(a) {
            for b in l.upset(c) {
                let fab = f.get(l, Iv { lo: a, hi: b });
                let fac = f.get(l, Iv { lo: a, hi: c });
                let fcb = f.get(l, Iv { lo: c, hi: b });
                if lambda.join(fac, fcb) != fab {
                    return Err(AxiomFailure {
                        axiom: "chain-additivity",
                        witness: format!("a={} c={} b={}", l.id(a), l.id(c), l.id(b)),
                    });
                }
            }
        }
    }
    for a in l.els() {
        for xs in directed_families(l, a) {
            let join = l.join_all(xs.iter().copied());
            let lhs = f.get(l, Iv { lo: a, hi: join });
            let rhs = lambda.join_all(xs.iter().map(|&x| f.get(l, Iv { lo: a, hi: x })));
            if lhs != rhs {
                return Err(AxiomFailure {
                    axiom: "join-continuity",
                    witness: format!(
                        "a={} X={{{}}}",
                        l.id(a),
                        xs.iter().map(|&x| l.id(x)).collect::<Vec<_>>().join(",")
                    ),
                });
            }
        }
    }
    Ok(())
}

pub fn is_allocation(l: &FiniteLattice, lambda: &FiniteLattice, f: &IntervalValuedMap) -> bool {
    check_allocation(l, lambda, f).is_ok()
}

pub fn is_aspect(l: &FiniteLattice, lambda: &FiniteLattice, f: &IntervalValuedMap) -> bool {
    check_aspect(l, lambda, f).is_ok()
}

/// Meet-continuity over families independent over the base: the stronger
/// form of the allocation continuity axiom that the canonical separating
/// allocation satisfies, checked over all independent families of at most
/// four elements.
pub fn check_independent_meet_continuity(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    f: &IntervalValuedMap,
) -> std::result::Result<(), AxiomFailure> {
    for a in l.els() {
        for xs in l.independent_families(a, 4) {
            let join = l.join_all(xs.iter().copied());
            let lhs = f.get(l, Iv { lo: a, hi: join });
            let rhs = lambda.meet_all(xs.iter().map(|&x| f.get(l, Iv { lo: a, hi: x })));
            if lhs != rhs {
                return Err(AxiomFailure {
                    axiom: "independent-meet-continuity",
                    witness: format!(
                        "a={} X={{{}}}",
                        l.id(a),
                        xs.iter().map(|&x| l.id(x)).collect::<Vec<_>>().join(",")
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Join-continuity over independent families, the aspect-side counterpart
/// of [`check_independent_meet_continuity`].
pub fn check_independent_join_continuity(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    f: &IntervalValuedMap,
) -> std::result::Result<(), AxiomFailure> {
    for a in l.els() {
        for xs in l.independent_families(a, 4) {
            let join = l.join_all(xs.iter().copied());
            let lhs = f.get(l, Iv { lo: a, hi: join });
            let rhs = lambda.join_all(xs.iter().map(|&x| f.get(l, Iv { lo: a, hi: x })));
            if lhs != rhs {
                return Err(AxiomFailure {
                    axiom: "independent-join-continuity",
                    witness: format!(
                        "a={} X={{{}}}",
                        l.id(a),
                        xs.iter().map(|&x| l.id(x)).collect::<Vec<_>>().join(",")
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Q(φ, α): the intervals \[a,b\] with α ≤ φ(x,b) for every x ∈ \[a,b\],
/// together with the trivial intervals. A congruence set, antitone in α.
pub fn q_set(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    phi: &IntervalValuedMap,
    alpha: El,
) -> Result<IntervalSet> {
    check_allocation(l, lambda, phi)
        .map_err(|e| Error::InvalidAllocation(e.to_string()))?;
    Ok(q_set_unchecked(l, lambda, phi, alpha))
}

pub(crate) fn q_set_unchecked(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    phi: &IntervalValuedMap,
    alpha: El,
) -> IntervalSet {
    let mut out = IntervalSet::trivials(l);
    for &iv in l.intervals() {
        let ok = l
            .between(iv.lo, iv.hi)
            .into_iter()
            .all(|x| lambda.leq(alpha, phi.get(l, Iv { lo: x, hi: iv.hi })));
        if ok {
            out.insert(l, iv);
        }
    }
    out
}

/// M(ψ, α): the intervals with ψ-value below α, together with the trivial
/// intervals. A congruence set.
pub fn m_set(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    psi: &IntervalValuedMap,
    alpha: El,
) -> Result<IntervalSet> {
    check_aspect(l, lambda, psi).map_err(|e| Error::InvalidAspect(e.to_string()))?;
    Ok(m_set_unchecked(l, lambda, psi, alpha))
}

pub(crate) fn m_set_unchecked(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    psi: &IntervalValuedMap,
    alpha: El,
) -> IntervalSet {
    let mut out = IntervalSet::trivials(l);
    for (idx, &iv) in l.intervals().iter().enumerate() {
        let _ = iv;
        if lambda.leq(psi.get_idx(idx), alpha) {
            out.insert_idx(idx);
        }
    }
    out
}

/// H(ψ)(a,b) = ⋁{α : \[a,b\] lies in the division closure of M(ψ, α)}.
/// Sends aspects to allocations, antitone in ψ.
pub fn h_map(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    psi: &IntervalValuedMap,
) -> Result<IntervalValuedMap> {
    check_aspect(l, lambda, psi).map_err(|e| Error::InvalidAspect(e.to_string()))?;
    let closures: Vec<IntervalSet> = lambda
        .els()
        .map(|alpha| dvs_closure(l, &m_set_unchecked(l, lambda, psi, alpha)))
        .collect();
    let values: Vec<El> = (0..l.interval_count())
        .map(|idx| {
            lambda.join_all(
                lambda
                    .els()
                    .filter(|&alpha| closures[alpha.0 as usize].contains_idx(idx)),
            )
        })
        .collect();
    Ok(IntervalValuedMap::from_values(values))
}

/// ξ(a,b): the least division set containing the interval.
pub fn xi(l: &FiniteLattice, iv: Iv) -> IntervalSet {
    dvs_closure(l, &IntervalSet::from_ivs(l, &[iv]))
}

/// ξ over every interval, in interval order.
pub fn xi_all(l: &FiniteLattice) -> Vec<IntervalSet> {
    l.intervals().iter().map(|&iv| xi(l, iv)).collect()
}

/// A bounds-, meet- and join-preserving map between two lattices. Over
/// finite lattices this is exactly a morphism of complete lattices, and is
/// the adopted notion of idiom morphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeMorphism {
    table: Vec<El>,
}

impl LatticeMorphism {
    pub fn from_table(table: Vec<El>) -> Self {
        LatticeMorphism { table }
    }

    pub fn identity(l: &FiniteLattice) -> Self {
        LatticeMorphism { table: l.els().collect() }
    }

    #[inline]
    pub fn apply(&self, x: El) -> El {
        self.table[x.0 as usize]
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &LatticeMorphism) -> LatticeMorphism {
        LatticeMorphism {
            table: other.table.iter().map(|&x| self.apply(x)).collect(),
        }
    }
}

pub fn check_morphism(
    dom: &FiniteLattice,
    cod: &FiniteLattice,
    f: &LatticeMorphism,
) -> Result<()> {
    if f.table.len() != dom.n() {
        return Err(Error::NotMorphism("table is not total on the domain".into()));
    }
    if f.apply(dom.bottom()) != cod.bottom() || f.apply(dom.top()) != cod.top() {
        return Err(Error::NotMorphism("bounds are not preserved".into()));
    }
    for x in dom.els() {
        for y in dom.els() {
            if f.apply(dom.meet(x, y)) != cod.meet(f.apply(x), f.apply(y)) {
                return Err(Error::NotMorphism(format!(
                    "meet not preserved at {} and {}",
                    dom.id(x),
                    dom.id(y)
                )));
            }
            if f.apply(dom.join(x, y)) != cod.join(f.apply(x), f.apply(y)) {
                return Err(Error::NotMorphism(format!(
                    "join not preserved at {} and {}",
                    dom.id(x),
                    dom.id(y)
                )));
            }
        }
    }
    Ok(())
}

/// Pullback g ∘ ℐ(f) of an interval-valued map along a lattice morphism.
/// Allocations pull back to allocations and aspects to aspects.
pub fn pullback(
    dom: &FiniteLattice,
    cod: &FiniteLattice,
    f: &LatticeMorphism,
    g: &IntervalValuedMap,
) -> Result<IntervalValuedMap> {
    check_morphism(dom, cod, f)?;
    Ok(IntervalValuedMap::from_fn(dom, |iv| {
        g.get(
            cod,
            Iv {
                lo: f.apply(iv.lo),
                hi: f.apply(iv.hi),
            },
        )
    }))
}

/// Post-composition ϱ ∘ f with a morphism of value lattices.
pub fn post_compose(
    lambda: &FiniteLattice,
    gamma: &FiniteLattice,
    rho: &LatticeMorphism,
    f: &IntervalValuedMap,
) -> Result<IntervalValuedMap> {
    check_morphism(lambda, gamma, rho)?;
    Ok(IntervalValuedMap::from_values(
        f.values.iter().map(|&v| rho.apply(v)).collect(),
    ))
}

/// The canonical surjection a ↦ j(a) from a lattice onto the quotient by a
/// nucleus (ids are preserved by [`crate::nuclei::quotient`]).
pub fn canonical_quotient_morphism(
    l: &FiniteLattice,
    j: &crate::nuclei::ElementMap,
    q: &FiniteLattice,
) -> Result<LatticeMorphism> {
    let table: Result<Vec<El>> = l.els().map(|x| q.el(l.id(j.apply(x)))).collect();
    Ok(LatticeMorphism::from_table(table?))
}

/// Random aspect: weights on the projectivity classes of covers, extended
/// by joining the class weights along any maximal chain of the interval.
/// Well-definedness across chains is exactly the modular chain condition,
/// so the ambient lattice must be an idiom.
pub fn random_aspect(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    rng: &mut impl Rng,
) -> IntervalValuedMap {
    let weights = random_class_weights(l, lambda, rng);
    chain_extension(l, lambda, &weights, true)
}

/// Random allocation: as [`random_aspect`], with meets in place of joins
/// and top in place of bottom on trivial intervals.
pub fn random_allocation(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    rng: &mut impl Rng,
) -> IntervalValuedMap {
    let weights = random_class_weights(l, lambda, rng);
    chain_extension(l, lambda, &weights, false)
}

fn random_class_weights(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    rng: &mut impl Rng,
) -> Vec<El> {
    let (_, classes) = cover_classes(l);
    let k = classes.iter().copied().max().map_or(0, |m| m + 1);
    (0..k)
        .map(|_| El(rng.gen_range(0..lambda.n()) as u16))
        .collect()
}

/// Extends per-class cover weights to all intervals along maximal chains.
/// `joins` selects the aspect flavor (join from ⊥) versus the allocation
/// flavor (meet from ⊤).
pub fn chain_extension(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    class_weights: &[El],
    joins: bool,
) -> IntervalValuedMap {
    let (covers, classes) = cover_classes(l);
    let weight = |lo: El, hi: El| -> El {
        let pos = covers
            .iter()
            .position(|&c| c == Iv { lo, hi })
            .expect("cover step of a maximal chain is a lattice cover");
        class_weights[classes[pos]]
    };
    let unit = if joins { lambda.bottom() } else { lambda.top() };
    let mix = |a: El, b: El| if joins { lambda.join(a, b) } else { lambda.meet(a, b) };

    let mut values = vec![El(0); l.interval_count()];
    for a in l.els() {
        let mut ups: Vec<El> = l.upset(a).collect();
        ups.sort_by_key(|&x| l.between(a, x).len());
        let mut val: Vec<Option<El>> = vec![None; l.n()];
        val[a.0 as usize] = Some(unit);
        for &x in &ups {
            if x == a {
                continue;
            }
            let mut computed: Option<El> = None;
            for &(lo, hi) in l.covers() {
                if hi == x && l.leq(a, lo) {
                    let below = val[lo.0 as usize].expect("processed in height order");
                    let v = mix(below, weight(lo, hi));
                    match computed {
                        None => computed = Some(v),
                        Some(prev) => assert_eq!(
                            prev, v,
                            "chain extension is chain-independent on modular lattices"
                        ),
                    }
                }
            }
            val[x.0 as usize] = Some(computed.expect("every element above a has a cover step"));
        }
        for &x in &ups {
            values[l.iv_idx(Iv { lo: a, hi: x })] = val[x.0 as usize].unwrap();
        }
    }
    IntervalValuedMap::from_values(values)
}
