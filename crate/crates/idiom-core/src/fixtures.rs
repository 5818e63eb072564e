//! Corpus generation: named small lattices, subgroup lattices of finite
//! abelian p-groups, and seeded random modular lattices.
//!
//! Every corpus entry is a validated modular lattice. The pentagon N5 is
//! provided only as a negative fixture and is not part of the corpus.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Named,
    SubgroupLattice { p: u32, partition: Vec<u32> },
    Random { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub lattice: FiniteLattice,
    pub provenance: Provenance,
}

fn named(name: &str, elements: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
    FiniteLattice::from_relation(
        &elements.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        &covers
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect::<Vec<_>>(),
    )
    .unwrap_or_else(|e| panic!("fixture {name} must build: {e}"))
}

/// One-point lattice.
pub fn point() -> FiniteLattice {
    named("point", &["0"], &[])
}

/// Two-element chain 0 < 1.
pub fn c2() -> FiniteLattice {
    named("c2", &["0", "1"], &[("0", "1")])
}

/// Three-element chain 0 < m < 1.
pub fn c3() -> FiniteLattice {
    named("c3", &["0", "m", "1"], &[("0", "m"), ("m", "1")])
}

/// Four-element chain 0 < x < y < 1.
pub fn c4() -> FiniteLattice {
    named("c4", &["0", "x", "y", "1"], &[("0", "x"), ("x", "y"), ("y", "1")])
}

/// Boolean square: two complementary atoms.
pub fn b2() -> FiniteLattice {
    named(
        "b2",
        &["0", "a", "b", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )
}

/// Diamond M3: three pairwise-incomparable atoms, modular but not distributive.
pub fn m3() -> FiniteLattice {
    named(
        "m3",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
}

/// Pentagon N5, the classic modularity failure. Negative fixture only.
pub fn n5() -> FiniteLattice {
    named(
        "n5",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Lattice of all subgroups of ⊕ᵢ ℤ/p^{aᵢ}, ordered by inclusion.
/// Subgroup lattices of abelian groups are modular and (being finite)
/// upper-continuous, so every output is an idiom.
pub fn subgroup_lattice(p: u32, partition: &[u32]) -> Result<FiniteLattice> {
    subgroup_lattice_capped(p, partition, 256)
}

pub fn subgroup_lattice_capped(p: u32, partition: &[u32], max_order: u64) -> Result<FiniteLattice> {
    if !is_prime(p) {
        return Err(Error::NotPrime(format!("{p} is not prime")));
    }
    if partition.is_empty() || partition.contains(&0) {
        return Err(Error::InvalidInput(
            "partition must be a nonempty list of positive exponents".into(),
        ));
    }
    let moduli: Vec<u64> = partition.iter().map(|&a| (p as u64).pow(a)).collect();
    let order: u64 = moduli.iter().try_fold(1u64, |acc, &m| {
        let v = acc.checked_mul(m)?;
        (v <= max_order).then_some(v)
    })
    .ok_or_else(|| Error::SizeLimit(format!("group order exceeds cap {max_order}")))?;
    let order = order as usize;

    // Mixed-radix encoding of group elements; addition componentwise.
    let k = moduli.len();
    let decode = |mut x: usize| -> Vec<u64> {
        let mut v = vec![0; k];
        for i in (0..k).rev() {
            v[i] = x as u64 % moduli[i];
            x /= moduli[i] as usize;
        }
        v
    };
    let encode = |v: &[u64]| -> usize {
        let mut x = 0usize;
        for i in 0..k {
            x = x * moduli[i] as usize + v[i] as usize;
        }
        x
    };
    let mut add = vec![0usize; order * order];
    for x in 0..order {
        let vx = decode(x);
        for y in 0..order {
            let vy = decode(y);
            let s: Vec<u64> = (0..k).map(|i| (vx[i] + vy[i]) % moduli[i]).collect();
            add[x * order + y] = encode(&s);
        }
    }

    let close = |gens: &Bits| -> Bits {
        let mut set = Bits::new(order);
        set.set(0);
        set.union_with(gens);
        loop {
            let members: Vec<usize> = set.ones().collect();
            let mut grew = false;
            for &x in &members {
                for &y in &members {
                    let s = add[x * order + y];
                    if !set.get(s) {
                        set.set(s);
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    };

    // Every subgroup arises from the trivial one by repeatedly adjoining a
    // generator, so a worklist over (subgroup, new generator) finds them all.
    let trivial = close(&Bits::new(order));
    let mut seen: HashSet<Bits> = HashSet::new();
    let mut subgroups: Vec<Bits> = Vec::new();
    let mut work = vec![trivial.clone()];
    seen.insert(trivial);
    while let Some(h) = work.pop() {
        for g in 0..order {
            if !h.get(g) {
                let mut gens = h.clone();
                gens.set(g);
                let h2 = close(&gens);
                if seen.insert(h2.clone()) {
                    work.push(h2);
                }
            }
        }
        subgroups.push(h);
        if subgroups.len() + work.len() > 100_000 {
            return Err(Error::SizeLimit("more than 100000 subgroups".into()));
        }
    }

    let mut keyed: Vec<(usize, Vec<usize>, Bits)> = subgroups
        .into_iter()
        .map(|s| (s.count(), s.ones().collect(), s))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let width = keyed.len().to_string().len().max(2);
    let ids: Vec<String> = (0..keyed.len()).map(|i| format!("s{i:0width$}")).collect();
    let mut covers = Vec::new();
    for (i, (_, _, si)) in keyed.iter().enumerate() {
        for (j, (_, _, sj)) in keyed.iter().enumerate() {
            if i != j && si.is_subset(sj) {
                covers.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    FiniteLattice::from_relation(&ids, &covers)
}

/// Deterministic-per-seed modular lattice of exactly `size` elements,
/// generated by sampling meet/join-closed subsets of known modular lattices.
pub fn random_modular(seed: u64, size: usize) -> Result<FiniteLattice> {
    if size == 0 || size > 12 {
        return Err(Error::SizeLimit(format!(
            "requested size {size} outside the supported range 1..=12"
        )));
    }
    if size == 1 {
        return Ok(point());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sources: Vec<FiniteLattice> = vec![
        c4().product(&c4()).expect("chain product"),
        c3().product(&c3()).expect("chain product"),
        m3().product(&c3()).expect("m3 x c3"),
        subgroup_lattice(2, &[2, 1]).expect("z4+z2"),
        subgroup_lattice(2, &[1, 1, 1]).expect("klein cube"),
    ];
    for _ in 0..4000 {
        let src = &sources[rng.gen_range(0..sources.len())];
        let mut keep: Vec<bool> = (0..src.n()).map(|_| rng.gen_bool(0.35)).collect();
        keep[src.bottom().0 as usize] = true;
        keep[src.top().0 as usize] = true;
        // close under meet and join
        loop {
            let members: Vec<_> = src.els().filter(|e| keep[e.0 as usize]).collect();
            let mut grew = false;
            for &x in &members {
                for &y in &members {
                    for z in [src.meet(x, y), src.join(x, y)] {
                        if !keep[z.0 as usize] {
                            keep[z.0 as usize] = true;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let members: Vec<_> = src.els().filter(|e| keep[e.0 as usize]).collect();
        if members.len() != size {
            continue;
        }
        let ids: Vec<String> = (0..size).map(|i| format!("e{i:02}")).collect();
        let pos = |e: crate::lattice::El| members.iter().position(|&m| m == e).unwrap();
        let mut covers = Vec::new();
        for &x in &members {
            for &y in &members {
                if x != y && src.leq(x, y) {
                    covers.push((ids[pos(x)].clone(), ids[pos(y)].clone()));
                }
            }
        }
        let lat = FiniteLattice::from_relation(&ids, &covers)?;
        if lat.is_modular() {
            return Ok(lat);
        }
    }
    Err(Error::GenerationFailed(format!(
        "no modular lattice of size {size} found for seed {seed}"
    )))
}

/// The standard corpus: named small lattices plus the subgroup lattices of
/// ℤ/p² ⊕ ℤ/p for p ∈ {2, 3}.
pub fn corpus() -> Vec<CorpusEntry> {
    let named_entries = vec![
        ("point", point()),
        ("c2", c2()),
        ("c3", c3()),
        ("c4", c4()),
        ("b2", b2()),
        ("m3", m3()),
        ("b2xc2", b2().product(&c2()).expect("b2 x c2")),
        ("m3xc2", m3().product(&c2()).expect("m3 x c2")),
    ];
    let mut out: Vec<CorpusEntry> = named_entries
        .into_iter()
        .map(|(name, lattice)| CorpusEntry {
            name: name.to_string(),
            lattice,
            provenance: Provenance::Named,
        })
        .collect();
    for p in [2u32, 3] {
        out.push(CorpusEntry {
            name: format!("sub-{p}-[2,1]"),
            lattice: subgroup_lattice(p, &[2, 1]).expect("subgroup lattice"),
            provenance: Provenance::SubgroupLattice { p, partition: vec![2, 1] },
        });
    }
    out
}

/// Corpus without the one-point lattice, for checks that need a nontrivial
/// interval to exist.
pub fn corpus_nontrivial() -> Vec<CorpusEntry> {
    corpus().into_iter().filter(|e| e.lattice.n() >= 2).collect()
}

/// A hand-specified dimension function on a subgroup lattice, as a
/// Γ-valued interval map: trivial slices sit at ⊥ and every nontrivial
/// slice at the chosen weight. Over a p-group every composition factor is
/// the one simple module, so the join-additive dimension functions into a
/// chain are exactly these weighted indicators; they feed the aspect and
/// dimension machinery as concrete module-flavored fixtures.
pub fn weighted_indicator_aspect(
    l: &FiniteLattice,
    gamma: &FiniteLattice,
    weight: crate::lattice::El,
) -> crate::allocation::IntervalValuedMap {
    crate::allocation::IntervalValuedMap::from_fn(l, |iv| {
        if iv.is_trivial() {
            gamma.bottom()
        } else {
            weight
        }
    })
}
