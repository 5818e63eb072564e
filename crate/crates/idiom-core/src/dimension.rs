//! Filtration sequences over a value lattice, the induced dimension
//! aspect, operator filtrations on aspects and division sets, and the
//! Gabriel/Boyle dimensions.
//!
//! For a finite value lattice Λ the index bound ∝(Λ) is |Λ|+1, and the
//! index chain ∞(Λ) is 0..=∝(Λ). Limit-ordinal clauses of the recursions
//! degenerate at these finite lengths; stabilized tails are extended by
//! copying, which the recursions themselves force.

use crate::allocation::{check_aspect, m_set_unchecked, IntervalValuedMap};
use crate::error::{Error, Result};
use crate::interval::{is_basic, is_division, dvs_closure, IntervalSet, SetOperator};
use crate::lattice::{El, FiniteLattice, Iv};

/// The index bound ∝(Λ): least cardinal exceeding |Λ|.
pub fn index_bound(lambda: &FiniteLattice) -> usize {
    lambda.n() + 1
}

/// The chain ∞(Λ) = {0, 1, …, ∝(Λ)} as a lattice, with ids `i00, i01, …`.
pub fn infinity_chain(lambda: &FiniteLattice) -> FiniteLattice {
    let len = index_bound(lambda) + 1;
    let width = (len - 1).to_string().len().max(2);
    let ids: Vec<String> = (0..len).map(|i| format!("i{i:0width$}")).collect();
    let covers: Vec<(String, String)> = (0..len - 1)
        .map(|i| (ids[i].clone(), ids[i + 1].clone()))
        .collect();
    FiniteLattice::from_relation(&ids, &covers).expect("a chain always builds")
}

/// An increasing sequence of Λ-elements indexed 0..=∝(Λ). Members of
/// seq(Λ) additionally start at ⊥ and end at ⊤; constant sequences are
/// admitted as generalized sequences for the level-set correspondence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Seq {
    values: Vec<El>,
}

impl Seq {
    /// Strict constructor for members of seq(Λ).
    pub fn new(lambda: &FiniteLattice, values: Vec<El>) -> Result<Self> {
        let s = Self::generalized(lambda, values)?;
        if s.values[0] != lambda.bottom() {
            return Err(Error::InvalidSeq("sequence must start at ⊥".into()));
        }
        if *s.values.last().unwrap() != lambda.top() {
            return Err(Error::InvalidSeq("sequence must end at ⊤".into()));
        }
        Ok(s)
    }

    /// Increasing sequences of the right length, without the endpoint
    /// normalization.
    pub fn generalized(lambda: &FiniteLattice, values: Vec<El>) -> Result<Self> {
        if values.len() != index_bound(lambda) + 1 {
            return Err(Error::InvalidSeq(format!(
                "expected {} values, got {}",
                index_bound(lambda) + 1,
                values.len()
            )));
        }
        for w in values.windows(2) {
            if !lambda.leq(w[0], w[1]) {
                return Err(Error::InvalidSeq("sequence must be increasing".into()));
            }
        }
        Ok(Seq { values })
    }

    /// The constant sequence h^α.
    pub fn constant(lambda: &FiniteLattice, alpha: El) -> Self {
        Seq {
            values: vec![alpha; index_bound(lambda) + 1],
        }
    }

    pub fn values(&self) -> &[El] {
        &self.values
    }

    pub fn get(&self, i: usize) -> El {
        self.values[i]
    }

    pub fn is_normalized(&self, lambda: &FiniteLattice) -> bool {
        self.values[0] == lambda.bottom() && *self.values.last().unwrap() == lambda.top()
    }

    /// Least index from which the sequence is constant.
    pub fn bnd(&self) -> usize {
        let last = *self.values.last().unwrap();
        let mut i = self.values.len() - 1;
        while i > 0 && self.values[i - 1] == last {
            i -= 1;
        }
        i
    }

    pub fn pointwise_meet(&self, lambda: &FiniteLattice, other: &Seq) -> Seq {
        Seq {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| lambda.meet(a, b))
                .collect(),
        }
    }
}

/// The dimension aspect of ψ along h: trivial intervals sit at level 0,
/// and a nontrivial interval sits at the least index ι with ψ(a,b) ≤ h(ι).
/// When no index qualifies (possible only for generalized sequences) the
/// interval is reported at the forced top ∝(Λ) and listed in `no_length`.
#[derive(Clone, Debug)]
pub struct DimAspect {
    /// Values in the chain ∞(Λ), element k meaning level k.
    pub map: IntervalValuedMap,
    /// Intervals whose ψ-value exceeds every level of the sequence.
    pub no_length: Vec<Iv>,
}

pub fn dim_aspect(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    psi: &IntervalValuedMap,
    h: &Seq,
) -> Result<DimAspect> {
    check_aspect(l, lambda, psi).map_err(|e| Error::InvalidAspect(e.to_string()))?;
    if h.values.len() != index_bound(lambda) + 1 {
        return Err(Error::InvalidSeq(
            "sequence length does not match the value lattice".into(),
        ));
    }
    let top_level = index_bound(lambda);
    let mut no_length = Vec::new();
    let values: Vec<El> = l
        .intervals()
        .iter()
        .map(|&iv| {
            if iv.is_trivial() {
                return El(0);
            }
            let v = psi.get(l, iv);
            match (0..=top_level).find(|&i| lambda.leq(v, h.get(i))) {
                Some(i) => El(i as u16),
                None => {
                    no_length.push(iv);
                    El(top_level as u16)
                }
            }
        })
        .collect();
    Ok(DimAspect {
        map: IntervalValuedMap::from_values(values),
        no_length,
    })
}

/// An operator filtration: the raw recursion values and the completed
/// sequence with the final index forced to ⊤ (the recursion itself need
/// not reach ⊤, while membership in seq(Λ) demands it).
#[derive(Clone, Debug)]
pub struct OprFiltration {
    pub raw: Seq,
    pub completed: Seq,
}

pub fn opr_filtration(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    psi: &IntervalValuedMap,
    alpha: El,
    opr: SetOperator,
) -> Result<OprFiltration> {
    opr_filtration_with(l, lambda, psi, alpha, &|l, b| opr.apply(l, b))
}

/// As [`opr_filtration`] with a caller-supplied operator on basic sets.
pub fn opr_filtration_with(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    psi: &IntervalValuedMap,
    alpha: El,
    opr: &dyn Fn(&FiniteLattice, &IntervalSet) -> Result<IntervalSet>,
) -> Result<OprFiltration> {
    check_aspect(l, lambda, psi).map_err(|e| Error::InvalidAspect(e.to_string()))?;
    let len = index_bound(lambda) + 1;
    let mut values = Vec::with_capacity(len);
    values.push(alpha);
    for i in 1..len {
        let prev = values[i - 1];
        if i >= 2 && values[i - 2] == prev {
            values.push(prev);
            continue;
        }
        let m = m_set_unchecked(l, lambda, psi, prev);
        let advanced = opr(l, &m).map_err(|e| {
            Error::NotBasicOperator(format!("operator failed on a basic set: {e}"))
        })?;
        if !is_basic(l, &advanced) {
            return Err(Error::NotBasicOperator(
                "operator output is not a basic set".into(),
            ));
        }
        let step = lambda.join_all(advanced.iter(l).map(|iv| psi.get(l, iv)));
        values.push(lambda.join(prev, step));
    }
    let raw = Seq { values: values.clone() };
    let mut completed_values = values;
    *completed_values.last_mut().unwrap() = lambda.top();
    let completed = Seq { values: completed_values };
    Ok(OprFiltration { raw, completed })
}

/// The division-set filtration: iterate the division closure of the
/// operator image, starting from a division set. Every term is a division
/// set.
pub fn kpr_filtration(
    l: &FiniteLattice,
    d: &IntervalSet,
    opr: SetOperator,
    steps: usize,
) -> Result<Vec<IntervalSet>> {
    if !is_division(l, d) {
        return Err(Error::NotDivision(
            "filtration must start from a division set".into(),
        ));
    }
    let mut out = Vec::with_capacity(steps + 1);
    out.push(d.clone());
    for i in 1..=steps {
        if i >= 2 && out[i - 2] == out[i - 1] {
            let copy = out[i - 1].clone();
            out.push(copy);
            continue;
        }
        let advanced = opr.apply(l, &out[i - 1])?;
        out.push(dvs_closure(l, &advanced));
    }
    Ok(out)
}

fn kpr_dimension(l: &FiniteLattice, d: &IntervalSet, opr: SetOperator) -> Result<Option<usize>> {
    // one extra step detects stabilization below the top
    let steps = l.interval_count() + 1;
    let trace = kpr_filtration(l, d, opr, steps)?;
    let all = IntervalSet::all(l);
    Ok(trace.iter().position(|s| *s == all))
}

/// Least filtration index at which the critical-operator filtration
/// reaches all intervals, or `None` when it stabilizes strictly below.
pub fn gabriel_dimension(l: &FiniteLattice, d: &IntervalSet) -> Result<Option<usize>> {
    kpr_dimension(l, d, SetOperator::Crt)
}

/// As [`gabriel_dimension`] with the full-operator filtration.
pub fn boyle_dimension(l: &FiniteLattice, d: &IntervalSet) -> Result<Option<usize>> {
    kpr_dimension(l, d, SetOperator::Fll)
}

/// The filtration trace used by [`gabriel_dimension`], up to and including
/// the first stable repeat.
pub fn gabriel_filtration(l: &FiniteLattice, d: &IntervalSet) -> Result<Vec<IntervalSet>> {
    truncated_trace(l, d, SetOperator::Crt)
}

pub fn boyle_filtration(l: &FiniteLattice, d: &IntervalSet) -> Result<Vec<IntervalSet>> {
    truncated_trace(l, d, SetOperator::Fll)
}

fn truncated_trace(
    l: &FiniteLattice,
    d: &IntervalSet,
    opr: SetOperator,
) -> Result<Vec<IntervalSet>> {
    let full = kpr_filtration(l, d, opr, l.interval_count() + 1)?;
    let mut out = Vec::new();
    for (i, s) in full.iter().enumerate() {
        out.push(s.clone());
        if i > 0 && full[i - 1] == *s {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::{constant_aspect, xi_all, IntervalValuedMap};
    use crate::fixtures;
    use crate::nuclei::{division_lattice, nucleus_lattice, DivisionLattice};

    fn xi_setup(l: &FiniteLattice) -> (DivisionLattice, IntervalValuedMap) {
        let nl = nucleus_lattice(l).unwrap();
        let dl = division_lattice(l, &nl).unwrap();
        let values: Vec<El> = xi_all(l)
            .iter()
            .map(|s| dl.el_of_set(s).expect("xi lands in the division sets"))
            .collect();
        (dl, IntervalValuedMap::from_values(values))
    }

    #[test]
    fn seq_validation() {
        let c2 = fixtures::c2();
        // ∝(C2) = 3, so sequences have 4 entries
        assert_eq!(index_bound(&c2), 3);
        let bot = c2.bottom();
        let top = c2.top();
        let h = Seq::new(&c2, vec![bot, bot, top, top]).unwrap();
        assert_eq!(h.bnd(), 2);
        assert!(h.is_normalized(&c2));
        assert!(matches!(
            Seq::new(&c2, vec![top, top, top, top]),
            Err(Error::InvalidSeq(_))
        ));
        assert!(matches!(
            Seq::new(&c2, vec![bot, top, bot, top]),
            Err(Error::InvalidSeq(_))
        ));
        assert!(matches!(Seq::new(&c2, vec![bot, top]), Err(Error::InvalidSeq(_))));
        let constant = Seq::constant(&c2, bot);
        assert!(!constant.is_normalized(&c2));
        assert_eq!(constant.bnd(), 0);
    }

    #[test]
    fn dim_aspect_examples() {
        let c3 = fixtures::c3();
        let (dl, xi) = xi_setup(&c3);
        let lambda = dl.lattice();
        // the filtration of the trivial division set under crt reaches the
        // top at index 1, so every nontrivial interval has dimension 1
        let trace = kpr_filtration(&c3, &IntervalSet::trivials(&c3), SetOperator::Crt,
            index_bound(lambda)).unwrap();
        let values: Vec<El> = trace.iter().map(|s| dl.el_of_set(s).unwrap()).collect();
        let h = Seq::new(lambda, values).unwrap();
        let dim = dim_aspect(&c3, lambda, &xi, &h).unwrap();
        assert!(dim.no_length.is_empty());
        for &ivl in c3.intervals() {
            let expect = if ivl.is_trivial() { 0 } else { 1 };
            assert_eq!(dim.map.get(&c3, ivl).0 as usize, expect);
        }
    }

    #[test]
    fn dim_aspect_on_two_valued_chain() {
        let b2 = fixtures::b2();
        let lambda = fixtures::c2();
        // smallest normalized sequence: ⊥ then ⊤ from index 1
        let h = Seq::new(
            &lambda,
            vec![lambda.bottom(), lambda.top(), lambda.top(), lambda.top()],
        )
        .unwrap();
        let psi = constant_aspect(&b2, lambda.top());
        let dim = dim_aspect(&b2, &lambda, &psi, &h).unwrap();
        for &ivl in b2.intervals() {
            let v = dim.map.get(&b2, ivl).0;
            assert!(v <= 1, "dimension is two-valued here");
            assert_eq!(v == 0, ivl.is_trivial());
        }
    }

    #[test]
    fn dim_aspect_flags_unreachable_levels() {
        let b2 = fixtures::b2();
        let lambda = fixtures::c2();
        let h = Seq::constant(&lambda, lambda.bottom());
        let psi = constant_aspect(&b2, lambda.top());
        let dim = dim_aspect(&b2, &lambda, &psi, &h).unwrap();
        assert_eq!(dim.no_length.len(), b2.interval_count() - b2.n());
        for &ivl in b2.intervals() {
            if !ivl.is_trivial() {
                assert_eq!(dim.map.get(&b2, ivl).0 as usize, index_bound(&lambda));
            }
        }
    }

    #[test]
    fn opr_filtration_examples() {
        let c3 = fixtures::c3();
        let (dl, xi) = xi_setup(&c3);
        let lambda = dl.lattice();
        let triv_el = dl.el_of_set(&IntervalSet::trivials(&c3)).unwrap();

        // identity operator: M(ξ, 𝒪) is the trivial set and contributes
        // nothing, so the recursion is constant
        let f = opr_filtration(&c3, lambda, &xi, triv_el, SetOperator::Identity).unwrap();
        assert_eq!(f.raw.bnd(), 0);
        assert!(f.raw.values().iter().all(|&v| v == triv_el));
        assert!(f.completed.is_normalized(lambda));

        // critical operator from the bottom reaches the top at index 1
        let f = opr_filtration(&c3, lambda, &xi, triv_el, SetOperator::Crt).unwrap();
        assert_eq!(f.raw.get(1), lambda.top());
        assert_eq!(f.raw.bnd(), 1);

        // starting from the top the recursion is constant ⊤
        let f = opr_filtration(&c3, lambda, &xi, lambda.top(), SetOperator::Crt).unwrap();
        assert_eq!(f.raw.bnd(), 0);
        assert!(f.raw.is_normalized(lambda) || f.raw.get(0) == lambda.top());
    }

    #[test]
    fn kpr_filtration_examples() {
        let b2 = fixtures::b2();
        let all = IntervalSet::all(&b2);
        let triv = IntervalSet::trivials(&b2);

        let t = kpr_filtration(&b2, &all, SetOperator::Crt, 3).unwrap();
        assert!(t.iter().all(|s| *s == all));

        let t = kpr_filtration(&b2, &triv, SetOperator::Crt, 3).unwrap();
        assert_eq!(t[0], triv);
        assert_eq!(t[1], all);
        assert_eq!(t[2], all);

        let t = kpr_filtration(&b2, &triv, SetOperator::Identity, 3).unwrap();
        assert!(t.iter().all(|s| *s == triv));

        let raw = IntervalSet::from_ivs(
            &b2,
            &[b2.iv(b2.el("0").unwrap(), b2.el("a").unwrap()).unwrap()],
        );
        assert!(matches!(
            kpr_filtration(&b2, &raw, SetOperator::Crt, 2),
            Err(Error::NotDivision(_))
        ));
    }

    #[test]
    fn gabriel_and_boyle_dimensions() {
        let point = fixtures::point();
        assert_eq!(
            gabriel_dimension(&point, &IntervalSet::trivials(&point)).unwrap(),
            Some(0)
        );
        for entry in fixtures::corpus_nontrivial() {
            let l = &entry.lattice;
            let triv = IntervalSet::trivials(l);
            assert_eq!(gabriel_dimension(l, &triv).unwrap(), Some(1), "{}", entry.name);
            assert_eq!(boyle_dimension(l, &triv).unwrap(), Some(1), "{}", entry.name);
            assert_eq!(gabriel_dimension(l, &IntervalSet::all(l)).unwrap(), Some(0));
        }
    }

    #[test]
    fn filtration_traces_stop_after_stabilizing() {
        let m3 = fixtures::m3();
        let trace = gabriel_filtration(&m3, &IntervalSet::trivials(&m3)).unwrap();
        assert_eq!(trace.len(), 3, "bottom, top, repeat");
        assert_eq!(trace[1], IntervalSet::all(&m3));
    }
}
