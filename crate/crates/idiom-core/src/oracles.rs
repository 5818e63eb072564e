//! Independent reference routes used to cross-check the main algorithms.
//!
//! Everything here is deliberately written as the literal definition —
//! exhaustive searches and fixpoint iterations — and shares no code with
//! the closed-form implementations it verifies. Intended for tests and for
//! the verification suites; not for production use on large inputs.

use crate::interval::{basic_closure, cng_closure, IntervalSet};
use crate::lattice::{El, FiniteLattice, Iv};

/// Literal similarity search: scan all pairs (l, r) for a transpose
/// presentation of {i, j}.
pub fn similar_exhaustive(lat: &FiniteLattice, i: Iv, j: Iv) -> bool {
    for l in lat.els() {
        for r in lat.els() {
            let upper = Iv { lo: l, hi: lat.join(l, r) };
            let lower = Iv { lo: lat.meet(l, r), hi: r };
            if (upper == i && lower == j) || (upper == j && lower == i) {
                return true;
            }
        }
    }
    false
}

/// Iterative least-fixpoint route to the division closure: alternate the
/// congruence closure with pre-division completion (adding, per base a, the
/// interval up to the full join of the current fiber) until stable.
pub fn dvs_fixpoint(l: &FiniteLattice, s: &IntervalSet) -> IntervalSet {
    let mut cur = basic_closure(l, s);
    loop {
        let mut next = cng_closure(l, &cur);
        for a in l.els() {
            let j = l.join_all(
                l.upset(a)
                    .filter(|&x| next.contains(l, Iv { lo: a, hi: x })),
            );
            let j = l.join(j, a);
            next.insert(l, Iv { lo: a, hi: j });
        }
        next = basic_closure(l, &next);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// All nuclei of a tiny lattice by scanning every function A → A and
/// filtering the definition directly: inflationary, monotone,
/// meet-preserving, idempotent. Exponential (n^n); callers keep n ≤ 5.
pub fn nuclei_bruteforce(l: &FiniteLattice) -> Vec<Vec<El>> {
    let n = l.n();
    assert!(n.pow(n as u32) <= 1 << 22, "brute-force oracle is for tiny lattices");
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    'outer: loop {
        let map: Vec<El> = table.iter().map(|&i| El(i as u16)).collect();
        let apply = |x: El| map[x.0 as usize];
        let inflator = l.els().all(|x| l.leq(x, apply(x)))
            && l
                .els()
                .all(|x| l.els().all(|y| !l.leq(x, y) || l.leq(apply(x), apply(y))));
        if inflator {
            let prenucleus = l
                .els()
                .all(|x| l.els().all(|y| apply(l.meet(x, y)) == l.meet(apply(x), apply(y))));
            let idempotent = l.els().all(|x| apply(apply(x)) == apply(x));
            if prenucleus && idempotent {
                out.push(map);
            }
        }
        for digit in table.iter_mut() {
            *digit += 1;
            if *digit < n {
                continue 'outer;
            }
            *digit = 0;
        }
        break;
    }
    out.sort();
    out
}
