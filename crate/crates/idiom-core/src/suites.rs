//! Named verification suites over the corpus: each structural fact the
//! library implements is re-checked here on every corpus lattice, with
//! seeded sampling where a law quantifies over maps or families.
//!
//! Checks never panic; failures carry a minimal witness (lattice name plus
//! the elements or intervals involved). Suites run their per-lattice checks
//! in parallel and report in corpus order.

use crate::allocation::{
    check_allocation, check_aspect, check_independent_join_continuity,
    check_independent_meet_continuity, constant_allocation, constant_aspect, h_map,
    is_allocation, is_aspect, m_set_unchecked, q_set_unchecked, random_allocation,
    random_aspect, xi_all, IntervalValuedMap,
};
use crate::decomposition::{
    check_p_inert_clauses, check_support_allocation, d_p, find_decomposition, is_adequate,
    is_atomic, is_p_point, is_stable, support, support_map, verify_decomposition, Decomposition,
};
use crate::dimension::{
    dim_aspect, index_bound, infinity_chain, kpr_filtration, opr_filtration, Seq,
};
use crate::error::Result;
use crate::fixtures::{self, CorpusEntry};
use crate::interval::{dvs_closure, is_congruence, is_division, IntervalSet, SetOperator};
use crate::lattice::{El, FiniteLattice, Iv};
use crate::nuclei::{
    all_chi, division_lattice, nucleus_lattice, DivisionLattice, ElementMap, NucleusLattice,
};
use crate::oracles;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::Instant;

/// One verdict line of a suite run.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
    pub millis: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Prop03,
    Thm0,
    Thm00,
    Thm000,
    DefD1,
    DefD7,
    PropD4,
    PropD10,
    ThmD12,
    PropDct3,
    PropDtc5,
    CorDtc5,
    LemmaDtc8,
    LemmaDtc9,
    ThmDtc11,
    PropD13,
    CorD14,
    PropD15,
    CorD16,
}

pub const ALL_SUITES: [Suite; 19] = [
    Suite::Prop03,
    Suite::Thm0,
    Suite::Thm00,
    Suite::Thm000,
    Suite::DefD1,
    Suite::DefD7,
    Suite::PropD4,
    Suite::PropD10,
    Suite::ThmD12,
    Suite::PropDct3,
    Suite::PropDtc5,
    Suite::CorDtc5,
    Suite::LemmaDtc8,
    Suite::LemmaDtc9,
    Suite::ThmDtc11,
    Suite::PropD13,
    Suite::CorD14,
    Suite::PropD15,
    Suite::CorD16,
];

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Prop03 => "prop-03",
            Suite::Thm0 => "thm-0",
            Suite::Thm00 => "thm-00",
            Suite::Thm000 => "thm-000",
            Suite::DefD1 => "def-d1",
            Suite::DefD7 => "def-d7",
            Suite::PropD4 => "prop-d4",
            Suite::PropD10 => "prop-d10",
            Suite::ThmD12 => "thm-d12",
            Suite::PropDct3 => "prop-dct3",
            Suite::PropDtc5 => "prop-dtc5",
            Suite::CorDtc5 => "cor-dtc5",
            Suite::LemmaDtc8 => "lemma-dtc8",
            Suite::LemmaDtc9 => "lemma-dtc9",
            Suite::ThmDtc11 => "thm-dtc11",
            Suite::PropD13 => "prop-d13",
            Suite::CorD14 => "cor-d14",
            Suite::PropD15 => "prop-d15",
            Suite::CorD16 => "cor-d16",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        ALL_SUITES.iter().copied().find(|s| s.name() == name)
    }
}

/// Everything the suites need about one corpus lattice, computed once.
pub struct LatticeCtx {
    pub name: String,
    pub l: FiniteLattice,
    pub nl: NucleusLattice,
    /// N(A) materialized; element k is nucleus k.
    pub nframe: FiniteLattice,
    pub dl: DivisionLattice,
    /// χ as a map into `nframe`.
    pub chi: IntervalValuedMap,
    /// ξ as a map into `dl.lattice()`.
    pub xi: IntervalValuedMap,
    pub xi_sets: Vec<IntervalSet>,
}

pub fn build_ctx(entry: &CorpusEntry) -> Result<LatticeCtx> {
    let l = entry.lattice.clone();
    let nl = nucleus_lattice(&l)?;
    let nframe = nl.to_lattice(&l)?;
    let dl = division_lattice(&l, &nl)?;
    let chi_idx = all_chi(&l, &nl)?;
    let chi = IntervalValuedMap::from_values(chi_idx.iter().map(|&i| El(i as u16)).collect());
    let xi_sets = xi_all(&l);
    let xi = IntervalValuedMap::from_values(
        xi_sets
            .iter()
            .map(|s| {
                dl.el_of_set(s)
                    .expect("the least division set over an interval is a division set")
            })
            .collect(),
    );
    Ok(LatticeCtx {
        name: entry.name.clone(),
        l,
        nl,
        nframe,
        dl,
        chi,
        xi,
        xi_sets,
    })
}

pub fn build_corpus_ctxs(entries: &[CorpusEntry]) -> Result<Vec<LatticeCtx>> {
    entries.par_iter().map(build_ctx).collect()
}

fn timed(name: String, body: impl FnOnce() -> std::result::Result<String, String>) -> Check {
    let start = Instant::now();
    let outcome = body();
    let millis = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(witness) => Check { name, pass: true, witness, millis },
        Err(witness) => Check { name, pass: false, witness, millis },
    }
}

fn rng_for(seed: u64, ctx_index: usize, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (ctx_index as u64).wrapping_mul(0x9e3779b97f4a7c15) ^ salt)
}

/// Runs one suite over prebuilt contexts.
pub fn run_suite(suite: Suite, ctxs: &[LatticeCtx], seed: u64) -> Vec<Check> {
    let body: fn(&LatticeCtx, usize, u64) -> std::result::Result<String, String> = match suite {
        Suite::Prop03 => prop_03,
        Suite::Thm0 => thm_0,
        Suite::Thm00 => thm_00,
        Suite::Thm000 => thm_000,
        Suite::DefD1 => def_d1,
        Suite::DefD7 => def_d7,
        Suite::PropD4 => prop_d4,
        Suite::PropD10 => prop_d10,
        Suite::ThmD12 => thm_d12,
        Suite::PropDct3 => prop_dct3,
        Suite::PropDtc5 => prop_dtc5,
        Suite::CorDtc5 => cor_dtc5,
        Suite::LemmaDtc8 => lemma_dtc8,
        Suite::LemmaDtc9 => lemma_dtc9,
        Suite::ThmDtc11 => thm_dtc11,
        Suite::PropD13 => prop_d13,
        Suite::CorD14 => cor_d14,
        Suite::PropD15 => prop_d15,
        Suite::CorD16 => cor_d16,
    };
    ctxs.par_iter()
        .enumerate()
        .map(|(i, ctx)| {
            timed(format!("{}/{}", suite.name(), ctx.name), || body(ctx, i, seed))
        })
        .collect()
}

/// Builds contexts for the given corpus and runs the requested suites.
pub fn run_suites(suites: &[Suite], entries: &[CorpusEntry], seed: u64) -> Result<Vec<Check>> {
    let ctxs = build_corpus_ctxs(entries)?;
    let mut out = Vec::new();
    for &s in suites {
        out.extend(run_suite(s, &ctxs, seed));
    }
    Ok(out)
}

/// The default corpus used by `verify` when none is supplied.
pub fn default_corpus() -> Vec<CorpusEntry> {
    fixtures::corpus()
}

// ---------------------------------------------------------------------
// individual suites
// ---------------------------------------------------------------------

fn prop_03(ctx: &LatticeCtx, _i: usize, _seed: u64) -> std::result::Result<String, String> {
    let frame = ctx.l.is_frame();
    let implication = ctx.l.implication_table().is_some();
    if frame != implication {
        return Err(format!(
            "distributivity says frame={frame} but implication existence says {implication}"
        ));
    }
    Ok(format!("frame={frame}, implication agrees"))
}

fn thm_0(ctx: &LatticeCtx, _i: usize, _seed: u64) -> std::result::Result<String, String> {
    let n = ctx.nl.len();
    match ctx.name.as_str() {
        "c2" if n != 2 => return Err(format!("expected 2 nuclei on c2, found {n}")),
        "c3" if n != 4 => return Err(format!("expected 4 nuclei on c3, found {n}")),
        _ => {}
    }
    let id_idx = ctx.nl.identity_index(&ctx.l);
    let top_idx = ctx.nl.top_index(&ctx.l);
    if ctx.nframe.bottom() != El(id_idx as u16) {
        return Err("identity is not the bottom of the nucleus lattice".into());
    }
    if ctx.nframe.top() != El(top_idx as u16) {
        return Err("the constant-top map is not the top of the nucleus lattice".into());
    }
    if n <= 64 {
        if !ctx.nframe.is_frame() {
            return Err("nucleus lattice fails full distributivity".into());
        }
        Ok(format!("{n} nuclei, distributivity exhaustive"))
    } else {
        Ok(format!("{n} nuclei, distributivity skipped above 64"))
    }
}

fn thm_00(ctx: &LatticeCtx, _i: usize, _seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let nl = &ctx.nl;
    for i in 0..nl.len() {
        let d = nl.division_set(i);
        if !is_division(l, d) {
            return Err(format!("division image of nucleus {i} fails the predicate"));
        }
        let back = crate::nuclei::division_to_nucleus(l, d)
            .map_err(|e| format!("round trip failed: {e}"))?;
        if &back != nl.nucleus(i) {
            return Err(format!("nucleus {i} does not round-trip"));
        }
        let infl = crate::nuclei::associated_inflator(l, d)
            .map_err(|e| format!("associated inflator failed: {e}"))?;
        if &infl != nl.nucleus(i) {
            return Err(format!("associated inflator of division set {i} differs"));
        }
        for k in 0..nl.len() {
            if nl.nucleus(i).leq(l, nl.nucleus(k)) != nl.division_set(i).is_subset(nl.division_set(k)) {
                return Err(format!("order mismatch between nuclei {i} and {k}"));
            }
        }
    }
    // meet is intersection, join through division closure matches the
    // order-theoretic join of the materialized lattice
    for i in 0..nl.len() {
        for k in 0..nl.len() {
            let m = nl.meet(l, i, k);
            if nl.division_set(m) != &nl.division_set(i).intersect(nl.division_set(k)) {
                return Err(format!("meet of nuclei {i},{k} is not set intersection"));
            }
            let j = nl.join(l, i, k).map_err(|e| e.to_string())?;
            if ctx.nframe.join(El(i as u16), El(k as u16)) != El(j as u16) {
                return Err(format!("join of nuclei {i},{k} disagrees with the order join"));
            }
        }
    }
    Ok(format!("{} nuclei round-trip as an order isomorphism", nl.len()))
}

fn thm_000(ctx: &LatticeCtx, i: usize, seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let mut rng = rng_for(seed, i, 0x000);
    let mut pairs = 0usize;
    // deterministic single-interval seeds plus random subsets
    let mut inputs: Vec<IntervalSet> = l
        .intervals()
        .iter()
        .map(|&iv| IntervalSet::from_ivs(l, &[iv]))
        .collect();
    for density in [0.08, 0.2, 0.5] {
        for _ in 0..8 {
            let mut s = IntervalSet::empty(l);
            for idx in 0..l.interval_count() {
                if rng.gen_bool(density) {
                    s.insert_idx(idx);
                }
            }
            inputs.push(s);
        }
    }
    for s in &inputs {
        let direct = dvs_closure(l, s);
        let fixpoint = oracles::dvs_fixpoint(l, s);
        if direct != fixpoint {
            return Err(format!(
                "direct closure and fixpoint oracle disagree on a set of {} intervals",
                s.len()
            ));
        }
        pairs += 1;
    }
    Ok(format!("{pairs} sampled sets agree with the fixpoint oracle"))
}

fn def_d1(ctx: &LatticeCtx, _i: usize, _seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    check_allocation(l, &ctx.nframe, &ctx.chi).map_err(|e| format!("chi: {e}"))?;
    // the stronger continuity over independent families holds for chi
    check_independent_meet_continuity(l, &ctx.nframe, &ctx.chi)
        .map_err(|e| format!("chi: {e}"))?;
    let lambda = fixtures::c3();
    for alpha in lambda.els() {
        check_allocation(l, &lambda, &constant_allocation(l, alpha))
            .map_err(|e| format!("constant {}: {e}", lambda.id(alpha)))?;
    }
    for a in lambda.els() {
        for b in lambda.els() {
            let ca = constant_allocation(l, a);
            let cb = constant_allocation(l, b);
            if lambda.leq(a, b) != ca.leq(&lambda, &cb) {
                return Err(format!(
                    "constant embedding is not order-exact at ({}, {})",
                    lambda.id(a),
                    lambda.id(b)
                ));
            }
        }
    }
    Ok("chi and the constant embeddings are allocations".into())
}

fn def_d7(ctx: &LatticeCtx, _i: usize, _seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    check_aspect(l, ctx.dl.lattice(), &ctx.xi).map_err(|e| format!("xi: {e}"))?;
    check_independent_join_continuity(l, ctx.dl.lattice(), &ctx.xi)
        .map_err(|e| format!("xi: {e}"))?;
    let lambda = fixtures::c3();
    for alpha in lambda.els() {
        check_aspect(l, &lambda, &constant_aspect(l, alpha))
            .map_err(|e| format!("constant {}: {e}", lambda.id(alpha)))?;
    }
    for a in lambda.els() {
        for b in lambda.els() {
            let ra = constant_aspect(l, a);
            let rb = constant_aspect(l, b);
            if lambda.leq(a, b) != ra.leq(&lambda, &rb) {
                return Err(format!(
                    "constant embedding is not order-exact at ({}, {})",
                    lambda.id(a),
                    lambda.id(b)
                ));
            }
        }
    }
    Ok("xi and the constant embeddings are aspects".into())
}

fn sample_subset<T: Copy>(rng: &mut ChaCha8Rng, pool: &[T], max_len: usize) -> Vec<T> {
    let len = rng.gen_range(1..=max_len.min(pool.len()));
    (0..len).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
}

fn prop_d4(ctx: &LatticeCtx, i: usize, seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let mut rng = rng_for(seed, i, 0xd4);
    let lambda_chain = fixtures::c4();
    let mut jobs: Vec<(&FiniteLattice, Vec<IntervalValuedMap>)> = Vec::new();
    jobs.push((&ctx.nframe, vec![ctx.chi.clone()]));
    let randoms: Vec<IntervalValuedMap> = (0..4)
        .map(|_| random_allocation(l, &lambda_chain, &mut rng))
        .collect();
    jobs.push((&lambda_chain, randoms));

    let mut families = 0usize;
    for (lambda, phis) in &jobs {
        for phi in phis {
            check_allocation(l, lambda, phi).map_err(|e| format!("sampled map invalid: {e}"))?;
            for alpha in lambda.els() {
                let q = q_set_unchecked(l, lambda, phi, alpha);
                if !is_congruence(l, &q) {
                    return Err(format!(
                        "Q at level {} is not a congruence set",
                        lambda.id(alpha)
                    ));
                }
            }
        }
        let alphas: Vec<El> = lambda.els().collect();
        for _ in 0..30 {
            // level families: Q(φ, ⋁X) = ⋂ Q(φ, α), and through the
            // division closure
            let phi = &phis[rng.gen_range(0..phis.len())];
            let xs = sample_subset(&mut rng, &alphas, 3);
            let join = lambda.join_all(xs.iter().copied());
            let joined = q_set_unchecked(l, lambda, phi, join);
            let mut meet = IntervalSet::all(l);
            let mut meet_dvs = IntervalSet::all(l);
            for &alpha in &xs {
                let q = q_set_unchecked(l, lambda, phi, alpha);
                meet_dvs = meet_dvs.intersect(&dvs_closure(l, &q));
                meet = meet.intersect(&q);
            }
            if joined != meet {
                return Err("Q does not send joins of levels to intersections".into());
            }
            if dvs_closure(l, &joined) != meet_dvs {
                return Err("division closure of Q is not a meet morphism in the level".into());
            }
            families += 1;
        }
        for _ in 0..25 {
            // map families: Q(⋀Φ, α) = ⋂ Q(φ, α), and through the closure
            let picks: Vec<&IntervalValuedMap> = (0..rng.gen_range(2..=3.min(phis.len().max(2))))
                .map(|_| &phis[rng.gen_range(0..phis.len())])
                .collect();
            let mut meet_phi = picks[0].clone();
            for phi in &picks[1..] {
                meet_phi = meet_phi.pointwise_meet(lambda, phi);
            }
            check_allocation(l, lambda, &meet_phi)
                .map_err(|e| format!("pointwise meet of allocations invalid: {e}"))?;
            let alpha = alphas[rng.gen_range(0..alphas.len())];
            let joined = q_set_unchecked(l, lambda, &meet_phi, alpha);
            let mut meet = IntervalSet::all(l);
            let mut meet_dvs = IntervalSet::all(l);
            for phi in &picks {
                let q = q_set_unchecked(l, lambda, phi, alpha);
                meet_dvs = meet_dvs.intersect(&dvs_closure(l, &q));
                meet = meet.intersect(&q);
            }
            if joined != meet {
                return Err("Q does not send meets of allocations to intersections".into());
            }
            if dvs_closure(l, &joined) != meet_dvs {
                return Err("division closure of Q is not a meet morphism in the map".into());
            }
            families += 1;
        }
    }
    Ok(format!("{families} sampled families satisfy the meet-morphism laws"))
}

fn prop_d10(ctx: &LatticeCtx, i: usize, seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let mut rng = rng_for(seed, i, 0xd10);
    let lambda_chain = fixtures::c4();
    let mut jobs: Vec<(&FiniteLattice, Vec<IntervalValuedMap>)> = Vec::new();
    jobs.push((ctx.dl.lattice(), vec![ctx.xi.clone()]));
    let randoms: Vec<IntervalValuedMap> = (0..4)
        .map(|_| random_aspect(l, &lambda_chain, &mut rng))
        .collect();
    jobs.push((&lambda_chain, randoms));

    let mut families = 0usize;
    for (lambda, psis) in &jobs {
        for psi in psis {
            check_aspect(l, lambda, psi).map_err(|e| format!("sampled map invalid: {e}"))?;
            for alpha in lambda.els() {
                let m = m_set_unchecked(l, lambda, psi, alpha);
                if !is_congruence(l, &m) {
                    return Err(format!(
                        "M at level {} is not a congruence set",
                        lambda.id(alpha)
                    ));
                }
            }
        }
        let alphas: Vec<El> = lambda.els().collect();
        for _ in 0..30 {
            // M(ψ, ⋀X) = ⋂ M(ψ, α)
            let psi = &psis[rng.gen_range(0..psis.len())];
            let xs = sample_subset(&mut rng, &alphas, 3);
            let meet_level = lambda.meet_all(xs.iter().copied());
            let at_meet = m_set_unchecked(l, lambda, psi, meet_level);
            let mut meet = IntervalSet::all(l);
            for &alpha in &xs {
                meet = meet.intersect(&m_set_unchecked(l, lambda, psi, alpha));
            }
            if at_meet != meet {
                return Err("M does not send meets of levels to intersections".into());
            }
            families += 1;
        }
        for _ in 0..25 {
            // M(⋁Ψ, α) = ⋂ M(ψ, α)
            let picks: Vec<&IntervalValuedMap> = (0..rng.gen_range(2..=3.min(psis.len().max(2))))
                .map(|_| &psis[rng.gen_range(0..psis.len())])
                .collect();
            let mut join_psi = picks[0].clone();
            for psi in &picks[1..] {
                join_psi = join_psi.pointwise_join(lambda, psi);
            }
            check_aspect(l, lambda, &join_psi)
                .map_err(|e| format!("pointwise join of aspects invalid: {e}"))?;
            let alpha = alphas[rng.gen_range(0..alphas.len())];
            let at_join = m_set_unchecked(l, lambda, &join_psi, alpha);
            let mut meet = IntervalSet::all(l);
            for psi in &picks {
                meet = meet.intersect(&m_set_unchecked(l, lambda, psi, alpha));
            }
            if at_join != meet {
                return Err("M does not send joins of aspects to intersections".into());
            }
            families += 1;
        }
    }
    Ok(format!("{families} sampled families satisfy the morphism laws"))
}

fn thm_d12(ctx: &LatticeCtx, i: usize, seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let mut rng = rng_for(seed, i, 0xd12);
    let dlam = ctx.dl.lattice();

    let h_xi = h_map(l, dlam, &ctx.xi).map_err(|e| format!("H(xi): {e}"))?;
    if !is_allocation(l, dlam, &h_xi) {
        return Err("H(xi) is not an allocation".into());
    }
    for alpha in dlam.els() {
        let h = h_map(l, dlam, &constant_aspect(l, alpha))
            .map_err(|e| format!("H(constant {}): {e}", dlam.id(alpha)))?;
        if !is_allocation(l, dlam, &h) {
            return Err(format!("H of the constant {} is not an allocation", dlam.id(alpha)));
        }
    }
    let lambda = fixtures::c4();
    let mut count = 0usize;
    for _ in 0..20 {
        let psi = random_aspect(l, &lambda, &mut rng);
        let h = h_map(l, &lambda, &psi).map_err(|e| format!("H(random): {e}"))?;
        if !is_allocation(l, &lambda, &h) {
            return Err("H of a random aspect is not an allocation".into());
        }
        // antitone on comparable pairs: ψ ≤ ψ∨ρ forces H(ψ∨ρ) ≤ H(ψ)
        let rho = random_aspect(l, &lambda, &mut rng);
        let bigger = psi.pointwise_join(&lambda, &rho);
        let h_big = h_map(l, &lambda, &bigger).map_err(|e| format!("H(join): {e}"))?;
        if !h_big.leq(&lambda, &h) {
            return Err("H is not antitone on a sampled pair".into());
        }
        count += 1;
    }
    Ok(format!("H sends {count} random aspects (and xi, constants) to allocations"))
}

fn prop_dct3(ctx: &LatticeCtx, i: usize, seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let mut rng = rng_for(seed, i, 0xdc3);
    let lambda = fixtures::c4();
    let mut maps: Vec<(&'static str, &FiniteLattice, IntervalValuedMap)> =
        vec![("chi", &ctx.nframe, ctx.chi.clone())];
    let r1 = random_allocation(l, &lambda, &mut rng);
    let r2 = random_allocation(l, &lambda, &mut rng);
    maps.push(("random-1", &lambda, r1));
    maps.push(("random-2", &lambda, r2));
    for (tag, _, rho) in &maps {
        let smap = support_map(l, rho);
        check_support_allocation(l, &smap).map_err(|e| format!("{tag}: {e}"))?;
        // two-piece chain bound, checked directly
        for a in l.els() {
            for b in l.upset(a) {
                for c in l.upset(b) {
                    let big = support(l, rho, Iv { lo: a, hi: c });
                    let left = support(l, rho, Iv { lo: a, hi: b });
                    let right = support(l, rho, Iv { lo: b, hi: c });
                    if !big.iter().all(|p| left.contains(p) || right.contains(p)) {
                        return Err(format!(
                            "{tag}: support of [{}, {}] escapes the chain bound at {}",
                            l.id(a),
                            l.id(c),
                            l.id(b)
                        ));
                    }
                }
            }
        }
    }
    Ok("supports satisfy the opposite-powerset allocation axioms".into())
}

fn support_values(ctx: &LatticeCtx, rho: &IntervalValuedMap) -> Vec<El> {
    let mut all = std::collections::BTreeSet::new();
    for &iv in ctx.l.intervals() {
        all.extend(support(&ctx.l, rho, iv));
    }
    all.into_iter().collect()
}

fn prop_dtc5(ctx: &LatticeCtx, i: usize, seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let mut rng = rng_for(seed, i, 0xdc5);
    let lambda = fixtures::c4();
    let mut maps: Vec<(&'static str, IntervalValuedMap)> = vec![("chi", ctx.chi.clone())];
    maps.push(("random", random_allocation(l, &lambda, &mut rng)));
    let mut checked = 0usize;
    for (tag, rho) in &maps {
        for p in support_values(ctx, rho) {
            check_p_inert_clauses(l, rho, p).map_err(|e| format!("{tag}, p={}: {e}", p.0))?;
            checked += 1;
        }
    }
    Ok(format!("all four indicator clauses hold for {checked} support values"))
}

fn cor_dtc5(ctx: &LatticeCtx, _i: usize, _seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    for p in support_values(ctx, &ctx.chi) {
        let dp = d_p(l, &ctx.chi, p);
        if !is_division(l, &dp) {
            return Err(format!(
                "D_p for p={} ({} intervals) fails the division-set predicate",
                ctx.nframe.id(p),
                dp.len()
            ));
        }
    }
    Ok("every D_p is a division set".into())
}

fn lemma_dtc8(ctx: &LatticeCtx, i: usize, seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let mut rng = rng_for(seed, i, 0xdc8);
    let lambda = fixtures::c4();
    let chain_meet_top = ElementMap::constant_top(l);
    let chi_nucleus =
        |iv: Iv| ctx.nl.nucleus(ctx.chi.get(l, iv).0 as usize).clone();
    let mut maps: Vec<(&'static str, IntervalValuedMap)> = vec![("chi", ctx.chi.clone())];
    maps.push(("random", random_allocation(l, &lambda, &mut rng)));
    for (tag, phi) in &maps {
        if !is_adequate(l, phi) {
            return Err(format!("{tag} is unexpectedly not adequate"));
        }
        for &iv in l.intervals() {
            let mut meet = chain_meet_top.clone();
            for x in l.between(iv.lo, iv.hi) {
                if x == iv.lo {
                    continue;
                }
                let sub = Iv { lo: iv.lo, hi: x };
                if is_stable(l, phi, sub) {
                    meet = meet.pointwise_meet(l, &chi_nucleus(sub));
                }
            }
            if meet != chi_nucleus(iv) {
                return Err(format!(
                    "{tag}: chi of [{}, {}] differs from the meet over stable legs",
                    l.id(iv.lo),
                    l.id(iv.hi)
                ));
            }
        }
    }
    Ok("chi equals the meet of chi over stable legs everywhere".into())
}

fn lemma_dtc9(ctx: &LatticeCtx, i: usize, seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let mut rng = rng_for(seed, i, 0xdc9);
    let lambda = fixtures::c4();
    let mut maps: Vec<(&'static str, IntervalValuedMap)> = vec![("chi", ctx.chi.clone())];
    maps.push(("random", random_allocation(l, &lambda, &mut rng)));
    let mut atomic = 0usize;
    for (tag, phi) in &maps {
        for &iv in l.intervals() {
            if iv.is_trivial() || !is_atomic(l, phi, iv) {
                continue;
            }
            atomic += 1;
            let p = *support(l, phi, iv).iter().next().unwrap();
            for x in l.between(iv.lo, iv.hi) {
                if is_p_point(l, phi, p, iv, x) {
                    match l.is_large(x, iv) {
                        Ok(true) => {}
                        _ => {
                            return Err(format!(
                                "{tag}: inertial point {} of [{}, {}] is not large",
                                l.id(x),
                                l.id(iv.lo),
                                l.id(iv.hi)
                            ))
                        }
                    }
                }
            }
        }
    }
    Ok(format!("inertial points are large on {atomic} atomic intervals"))
}

fn thm_dtc11(ctx: &LatticeCtx, i: usize, seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let mut rng = rng_for(seed, i, 0xd11);
    let lambda = fixtures::c4();
    let mut maps: Vec<(&'static str, IntervalValuedMap)> = vec![("chi", ctx.chi.clone())];
    maps.push(("random-1", random_allocation(l, &lambda, &mut rng)));
    maps.push(("random-2", random_allocation(l, &lambda, &mut rng)));
    let mut decomposed = 0usize;
    for (tag, phi) in &maps {
        if !is_adequate(l, phi) {
            return Err(format!("{tag} is unexpectedly not adequate"));
        }
        for &iv in l.intervals() {
            if iv.is_trivial() {
                continue;
            }
            match find_decomposition(l, phi, iv) {
                Ok(Decomposition::Found(family)) => {
                    verify_decomposition(l, phi, iv, &family).map_err(|e| {
                        format!("{tag}: [{}, {}]: {e}", l.id(iv.lo), l.id(iv.hi))
                    })?;
                    decomposed += 1;
                }
                Ok(other) => {
                    return Err(format!(
                        "{tag}: no decomposition of [{}, {}]: {other:?}",
                        l.id(iv.lo),
                        l.id(iv.hi)
                    ))
                }
                Err(e) => return Err(format!("{tag}: {e}")),
            }
        }
    }
    Ok(format!("{decomposed} nontrivial intervals decompose and re-verify"))
}

fn random_seq(lambda: &FiniteLattice, rng: &mut ChaCha8Rng) -> Seq {
    let len = index_bound(lambda) + 1;
    let els: Vec<El> = lambda.els().collect();
    let mut values = Vec::with_capacity(len);
    let mut cur = lambda.bottom();
    for _ in 0..len {
        values.push(cur);
        if rng.gen_bool(0.6) {
            cur = lambda.join(cur, els[rng.gen_range(0..els.len())]);
        }
    }
    *values.last_mut().unwrap() = lambda.top();
    Seq::new(lambda, values).expect("construction yields a normalized sequence")
}

fn prop_d13(ctx: &LatticeCtx, i: usize, seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let mut rng = rng_for(seed, i, 0xd13);
    let lambda = fixtures::c4();
    let infinity = infinity_chain(&lambda);
    let psis: Vec<IntervalValuedMap> = (0..4)
        .map(|_| random_aspect(l, &lambda, &mut rng))
        .collect();
    let seqs: Vec<Seq> = (0..6).map(|_| random_seq(&lambda, &mut rng)).collect();

    for psi in &psis {
        for h in &seqs {
            let dim = dim_aspect(l, &lambda, psi, h).map_err(|e| e.to_string())?;
            if !dim.no_length.is_empty() {
                return Err("a normalized sequence left an interval without a level".into());
            }
            if !is_aspect(l, &infinity, &dim.map) {
                return Err("dimension map is not an aspect into the index chain".into());
            }
        }
    }
    // ⋁-morphism in the sequence: meets of sequences raise dimensions to
    // the pointwise supremum
    for _ in 0..10 {
        let psi = &psis[rng.gen_range(0..psis.len())];
        let picks: Vec<&Seq> = (0..rng.gen_range(2..=3))
            .map(|_| &seqs[rng.gen_range(0..seqs.len())])
            .collect();
        let mut meet = picks[0].clone();
        for h in &picks[1..] {
            meet = meet.pointwise_meet(&lambda, h);
        }
        let at_meet = dim_aspect(l, &lambda, psi, &meet).map_err(|e| e.to_string())?;
        let mut sup = IntervalValuedMap::constant(l, infinity.bottom());
        for h in &picks {
            sup = sup.pointwise_join(&infinity, &dim_aspect(l, &lambda, psi, h)
                .map_err(|e| e.to_string())?.map);
        }
        if at_meet.map != sup {
            return Err("dimension along a meet of sequences is not the supremum".into());
        }
    }
    // ⋁-morphism in the aspect
    for _ in 0..10 {
        let h = &seqs[rng.gen_range(0..seqs.len())];
        let picks: Vec<&IntervalValuedMap> = (0..rng.gen_range(2..=3))
            .map(|_| &psis[rng.gen_range(0..psis.len())])
            .collect();
        let mut join = picks[0].clone();
        for psi in &picks[1..] {
            join = join.pointwise_join(&lambda, psi);
        }
        let at_join = dim_aspect(l, &lambda, &join, h).map_err(|e| e.to_string())?;
        let mut sup = IntervalValuedMap::constant(l, infinity.bottom());
        for psi in &picks {
            sup = sup.pointwise_join(&infinity, &dim_aspect(l, &lambda, psi, h)
                .map_err(|e| e.to_string())?.map);
        }
        if at_join.map != sup {
            return Err("dimension along a join of aspects is not the supremum".into());
        }
    }
    // monotonicity: higher sequences lower the dimension, higher aspects
    // raise it
    for _ in 0..10 {
        let psi = &psis[rng.gen_range(0..psis.len())];
        let h1 = &seqs[rng.gen_range(0..seqs.len())];
        let h2 = &seqs[rng.gen_range(0..seqs.len())];
        let meet = h1.pointwise_meet(&lambda, h2);
        let lower = dim_aspect(l, &lambda, psi, h1).map_err(|e| e.to_string())?;
        let higher = dim_aspect(l, &lambda, psi, &meet).map_err(|e| e.to_string())?;
        if !lower.map.leq(&infinity, &higher.map) {
            return Err("dimension is not antitone in the sequence".into());
        }
        let other = &psis[rng.gen_range(0..psis.len())];
        let bigger = psi.pointwise_join(&lambda, other);
        let small = dim_aspect(l, &lambda, psi, h1).map_err(|e| e.to_string())?;
        let large = dim_aspect(l, &lambda, &bigger, h1).map_err(|e| e.to_string())?;
        if !small.map.leq(&infinity, &large.map) {
            return Err("dimension is not monotone in the aspect".into());
        }
    }
    Ok("dimension maps are aspects; supremum and monotonicity laws hold".into())
}

fn cor_d14(ctx: &LatticeCtx, _i: usize, _seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let dlam = ctx.dl.lattice();
    let infinity = infinity_chain(dlam);
    let mut psis: Vec<IntervalValuedMap> = vec![ctx.xi.clone()];
    for beta in dlam.els() {
        psis.push(constant_aspect(l, beta));
    }
    for psi in &psis {
        for alpha in dlam.els() {
            let h = Seq::constant(dlam, alpha);
            let dim = dim_aspect(l, dlam, psi, &h).map_err(|e| e.to_string())?;
            let left = m_set_unchecked(l, &infinity, &dim.map, infinity.bottom());
            let right = m_set_unchecked(l, dlam, psi, alpha);
            if left != right {
                return Err(format!(
                    "level sets disagree at alpha={}",
                    dlam.id(alpha)
                ));
            }
        }
    }
    Ok("level sets of the constant-sequence dimension match M".into())
}

fn prop_d15(ctx: &LatticeCtx, _i: usize, _seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    let dlam = ctx.dl.lattice();
    if ctx.dl.len() > 64 {
        return Ok(format!("skipped: {} division sets exceed the 64 cap", ctx.dl.len()));
    }
    let steps = index_bound(dlam);
    let mut compared = 0usize;
    for alpha in dlam.els() {
        let d = ctx.dl.set(alpha);
        for opr in [SetOperator::Crt, SetOperator::Fll, SetOperator::Smp, SetOperator::Cmp] {
            let of = opr_filtration(l, dlam, &ctx.xi, alpha, opr).map_err(|e| e.to_string())?;
            let kf = kpr_filtration(l, d, opr, steps).map_err(|e| e.to_string())?;
            for (idx, k_entry) in kf.iter().enumerate() {
                if ctx.dl.set(of.raw.get(idx)) != k_entry {
                    return Err(format!(
                        "filtrations diverge at D={} opr={} index {idx}",
                        dlam.id(alpha),
                        opr.name()
                    ));
                }
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} filtrations agree index-by-index"))
}

fn cor_d16(ctx: &LatticeCtx, _i: usize, _seed: u64) -> std::result::Result<String, String> {
    let l = &ctx.l;
    for alpha in ctx.dl.lattice().els() {
        let d = ctx.dl.set(alpha);
        // literal loops for the two derivatives, compared with the generic
        // filtration
        let mut g = vec![d.clone()];
        let mut b = vec![d.clone()];
        for _ in 0..l.interval_count() + 1 {
            let last = g.last().unwrap();
            g.push(dvs_closure(
                l,
                &crate::interval::crt(l, last).map_err(|e| e.to_string())?,
            ));
            let last = b.last().unwrap();
            b.push(dvs_closure(
                l,
                &crate::interval::fll(l, last).map_err(|e| e.to_string())?,
            ));
        }
        let kg = kpr_filtration(l, d, SetOperator::Crt, l.interval_count() + 1)
            .map_err(|e| e.to_string())?;
        let kb = kpr_filtration(l, d, SetOperator::Fll, l.interval_count() + 1)
            .map_err(|e| e.to_string())?;
        if g != kg {
            return Err("critical filtration differs from the literal derivative loop".into());
        }
        if b != kb {
            return Err("full filtration differs from the literal derivative loop".into());
        }
    }
    Ok("derivative filtrations match their literal loops".into())
}
