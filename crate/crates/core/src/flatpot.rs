//! Discrete closed 1-forms on the base complex, their local primitives on
//! diamond supports, and the real comparable-pair cocycle built from them.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::{approximate_curve, base_cycles, PosetPath};
use crate::linalg::{phase, C64};
use crate::poset::{BaseComplex, CausalPoset, DiamondId, VertexId};
use crate::zlinalg::{invariant_factors, SparseRow};

/// Tolerance for closedness and primitive constancy.
pub const EXACT_TOL: f64 = 1e-12;

/// Real weight per base edge, read along the edge's declared orientation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatPotential {
    weights: Vec<f64>,
}

impl FlatPotential {
    pub fn zero(base: &BaseComplex) -> Self {
        FlatPotential { weights: vec![0.0; base.edges().len()] }
    }

    /// Weights indexed like `base.edges()`.
    pub fn from_weights(base: &BaseComplex, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != base.edges().len() {
            return Err(Error::InvalidComplex(format!("{} weights for {} edges", weights.len(), base.edges().len())));
        }
        Ok(FlatPotential { weights })
    }

    /// Weights given on oriented vertex pairs; unlisted edges get 0.
    pub fn from_oriented(base: &BaseComplex, entries: &[((VertexId, VertexId), f64)]) -> Result<Self> {
        let mut pot = Self::zero(base);
        for &((u, v), w) in entries {
            let (k, sign) =
                base.oriented_edge(u, v).ok_or_else(|| Error::InvalidComplex(format!("no edge ({u}, {v})")))?;
            pot.weights[k] = sign as f64 * w;
        }
        Ok(pot)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight read along `u → v`, if the edge exists.
    pub fn along(&self, base: &BaseComplex, u: VertexId, v: VertexId) -> Option<f64> {
        base.oriented_edge(u, v).map(|(k, s)| s as f64 * self.weights[k])
    }

    /// Errors with the first face whose boundary sum is not zero.
    pub fn check_closed(&self, base: &BaseComplex) -> Result<()> {
        for f in 0..base.faces().len() {
            let sum: f64 = base.face_boundary(f)?.iter().map(|(e, s)| *s as f64 * self.weights[*e]).sum();
            if sum.abs() > EXACT_TOL {
                return Err(Error::PotentialNotClosed(f, sum));
            }
        }
        Ok(())
    }
}

/// Oriented weight sum along a vertex curve.
pub fn direct_edge_sum(base: &BaseComplex, a: &FlatPotential, curve: &[VertexId], closed: bool) -> Result<f64> {
    let mut pairs: Vec<(VertexId, VertexId)> = curve.windows(2).map(|w| (w[0], w[1])).collect();
    if closed && curve.len() > 1 && curve.first() != curve.last() {
        pairs.push((curve[curve.len() - 1], curve[0]));
    }
    pairs
        .into_iter()
        .map(|(u, v)| {
            a.along(base, u, v)
                .ok_or_else(|| Error::InvalidCurve(format!("vertices {u} and {v} are not joined by an edge")))
        })
        .sum()
}

/// Local primitive `φ_o` for every diamond, vanishing at the support's smallest vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimitiveTable {
    values: Vec<BTreeMap<VertexId, f64>>,
}

impl PrimitiveTable {
    pub fn get(&self, o: DiamondId) -> &BTreeMap<VertexId, f64> {
        &self.values[o.0]
    }
}

pub fn local_primitives(p: &CausalPoset, a: &FlatPotential) -> Result<PrimitiveTable> {
    let base = p.base();
    a.check_closed(base)?;
    let mut values = Vec::with_capacity(p.len());
    for o in p.ids() {
        let support = p.support(o);
        if !base.is_contractible(support) {
            return Err(Error::SupportNotContractible(o));
        }
        let root = *support.iter().next().expect("nonempty support");
        let mut phi = BTreeMap::from([(root, 0.0)]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut next: Vec<VertexId> = base.neighbors(v).filter(|w| support.contains(w)).collect();
            next.sort_unstable();
            for w in next {
                if !phi.contains_key(&w) {
                    let x = phi[&v] + a.along(base, v, w).expect("neighbor edge");
                    phi.insert(w, x);
                    queue.push_back(w);
                }
            }
        }
        values.push(phi);
    }
    Ok(PrimitiveTable { values })
}

/// Real cocycle `Â_{oa} = φ_o − φ_a` on comparable pairs, extended antisymmetrically.
#[derive(Debug, Clone, PartialEq)]
pub struct AbelianCocycle {
    values: BTreeMap<(DiamondId, DiamondId), f64>,
}

impl AbelianCocycle {
    pub fn value(&self, b: DiamondId, a: DiamondId) -> Result<f64> {
        self.values.get(&(b, a)).copied().ok_or(Error::InvalidPath(b, a))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(DiamondId, DiamondId), &f64)> {
        self.values.iter()
    }
}

pub fn abelian_cocycle(p: &CausalPoset, prim: &PrimitiveTable) -> Result<AbelianCocycle> {
    let mut values = BTreeMap::new();
    for o in p.ids() {
        values.insert((o, o), 0.0);
    }
    for (o, a) in p.strict_inclusions() {
        let (po, pa) = (prim.get(o), prim.get(a));
        let mut diffs = p.support(a).iter().map(|v| po[v] - pa[v]);
        let first = diffs.next().expect("nonempty support");
        if diffs.any(|d| (d - first).abs() > EXACT_TOL) {
            return Err(Error::PrimitiveMismatch(o, a));
        }
        values.insert((o, a), first);
        values.insert((a, o), -first);
    }
    Ok(AbelianCocycle { values })
}

/// Convenience: primitives then cocycle.
pub fn potential_cocycle(p: &CausalPoset, a: &FlatPotential) -> Result<AbelianCocycle> {
    abelian_cocycle(p, &local_primitives(p, a)?)
}

/// `g_{oa} = e^{iÂ_{oa}}`.
pub fn transition_phase(ahat: &AbelianCocycle, o: DiamondId, a: DiamondId) -> Result<C64> {
    Ok(phase(ahat.value(o, a)?))
}

/// Sum of `Â` read from each step's source to its target, which equals the
/// oriented weight sum of any curve the loop approximates.
pub fn path_integral(ahat: &AbelianCocycle, p: &PosetPath) -> Result<f64> {
    p.steps().iter().map(|s| ahat.value(s.source, s.target)).sum()
}

pub fn loop_integral(ahat: &AbelianCocycle, p: &PosetPath) -> Result<f64> {
    if !p.is_loop() {
        return Err(Error::OpenPath);
    }
    path_integral(ahat, p)
}

/// `A + dχ`; vertices missing from `chi` count as 0.
pub fn gauge_transform(base: &BaseComplex, a: &FlatPotential, chi: &BTreeMap<VertexId, f64>) -> FlatPotential {
    let at = |v: VertexId| chi.get(&v).copied().unwrap_or(0.0);
    let weights = base.edges().iter().zip(&a.weights).map(|(&(u, v), w)| w + at(v) - at(u)).collect();
    FlatPotential { weights }
}

/// Poset loops approximating the fundamental cycles of the base complex.
pub fn generator_loops(p: &CausalPoset) -> Result<Vec<PosetPath>> {
    base_cycles(p.base()).iter().map(|c| approximate_curve(p, &c.curve, true)).collect()
}

/// Whether `exp(−i∮)` agrees on every generator loop.
pub fn same_character(p: &CausalPoset, a: &FlatPotential, b: &FlatPotential) -> Result<bool> {
    let (ca, cb) = (potential_cocycle(p, a)?, potential_cocycle(p, b)?);
    for l in generator_loops(p)? {
        let za = phase(-loop_integral(&ca, &l)?);
        let zb = phase(-loop_integral(&cb, &l)?);
        if (za - zb).norm() > EXACT_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Potential supported on the non-tree base edges with prescribed periods on
/// the fundamental cycles returned by [`base_cycles`].
pub fn potential_from_character(p: &CausalPoset, periods: &[f64]) -> Result<FlatPotential> {
    let base = p.base();
    let cycles = base_cycles(base);
    if periods.len() != cycles.len() {
        return Err(Error::CharacterArity { expected: cycles.len(), got: periods.len() });
    }
    let mut pot = FlatPotential::zero(base);
    for (c, x) in cycles.iter().zip(periods) {
        pot.weights[c.edge] = *x;
    }
    if let Err(e) = pot.check_closed(base) {
        // faces written in cycle coordinates; a non-unit invariant factor is torsion
        let rows: Vec<SparseRow> = (0..base.faces().len())
            .map(|f| {
                let bd = base.face_boundary(f)?;
                Ok(cycles
                    .iter()
                    .enumerate()
                    .filter_map(|(k, c)| bd.iter().find(|(e, _)| *e == c.edge).map(|(_, s)| (k, *s)))
                    .collect())
            })
            .collect::<Result<_>>()?;
        if invariant_factors(&rows, cycles.len())?.iter().any(|d| *d > 1) {
            return Err(Error::TorsionNotSupported);
        }
        return Err(e);
    }
    Ok(pot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_net, NetKind};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn circle_weights() -> (CausalPoset, FlatPotential) {
        let p = build_net(NetKind::Circle(6)).unwrap();
        let entries: Vec<_> = (0..6).map(|k| ((k, (k + 1) % 6), 0.1 * (k + 1) as f64)).collect();
        let a = FlatPotential::from_oriented(p.base(), &entries).unwrap();
        (p, a)
    }

    fn find(p: &CausalPoset, support: &[VertexId]) -> DiamondId {
        let s: BTreeSet<VertexId> = support.iter().copied().collect();
        p.ids().find(|o| p.support(*o) == &s).unwrap()
    }

    #[test]
    fn primitives_on_arc() {
        let (p, a) = circle_weights();
        let prim = local_primitives(&p, &a).unwrap();
        let o = find(&p, &[0, 1, 2]);
        let phi: Vec<f64> = prim.get(o).values().copied().collect();
        for (x, y) in phi.iter().zip([0.0, 0.1, 0.3]) {
            assert!((x - y).abs() < 1e-12);
        }
        let zero = local_primitives(&p, &FlatPotential::zero(p.base())).unwrap();
        assert!(p.ids().all(|o| zero.get(o).values().all(|x| *x == 0.0)));
    }

    #[test]
    fn four_vertex_arc_primitive() {
        // a cover whose diamonds include the arc {0,1,2,3}
        let p = build_net(NetKind::Circle(8)).unwrap();
        let entries: Vec<_> = (0..8).map(|k| ((k, (k + 1) % 8), 0.1 * (k + 1) as f64)).collect();
        let a = FlatPotential::from_oriented(p.base(), &entries).unwrap();
        let prim = local_primitives(&p, &a).unwrap();
        let o = find(&p, &[0, 1, 2, 3]);
        let got: Vec<f64> = prim.get(o).values().copied().collect();
        for (x, y) in got.iter().zip([0.0, 0.1, 0.3, 0.6]) {
            assert!((x - y).abs() < 1e-12);
        }
        let sub = find(&p, &[1, 2]);
        let ahat = abelian_cocycle(&p, &prim).unwrap();
        assert!((ahat.value(o, sub).unwrap() - 0.1).abs() < 1e-12);
        assert!((ahat.value(sub, o).unwrap() + 0.1).abs() < 1e-12);
        assert_eq!(ahat.value(o, o).unwrap(), 0.0);
        let g = transition_phase(&ahat, o, sub).unwrap();
        assert!((g - phase(0.1)).norm() < 1e-12);
    }

    #[test]
    fn cocycle_relation_on_chains() {
        let (p, a) = circle_weights();
        let ahat = potential_cocycle(&p, &a).unwrap();
        for (o, x, c) in p.chains() {
            let lhs = ahat.value(c, x).unwrap() + ahat.value(x, o).unwrap();
            assert!((lhs - ahat.value(c, o).unwrap()).abs() < 1e-12);
            let g = transition_phase(&ahat, c, x).unwrap() * transition_phase(&ahat, x, o).unwrap();
            assert!((g - transition_phase(&ahat, c, o).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn winding_loop_integrals() {
        let (p, a) = circle_weights();
        let ahat = potential_cocycle(&p, &a).unwrap();
        let cyc = &base_cycles(p.base())[0];
        for w in -3..=3 {
            let curve = cyc.wound(w);
            let l = approximate_curve(&p, &curve, true).unwrap();
            let got = loop_integral(&ahat, &l).unwrap();
            let direct = direct_edge_sum(p.base(), &a, &curve, true).unwrap();
            assert!((direct - 2.1 * w as f64).abs() < 1e-12, "w={w}: {direct}");
            assert!((got - direct).abs() < 1e-12, "w={w}: {got} vs {direct}");
        }
        assert_eq!(loop_integral(&ahat, &PosetPath::trivial(DiamondId(0))).unwrap(), 0.0);
        let open = PosetPath::elementary(p.comparable_with(DiamondId(0))[0], DiamondId(0));
        assert_eq!(loop_integral(&ahat, &open).unwrap_err(), Error::OpenPath);
    }

    #[test]
    fn gauge_and_period_shifts() {
        let (p, a) = circle_weights();
        let chi: BTreeMap<VertexId, f64> = (0..6).map(|k| (k, 0.05 * k as f64)).collect();
        let b = gauge_transform(p.base(), &a, &chi);
        assert!(same_character(&p, &a, &b).unwrap());
        let konst: BTreeMap<VertexId, f64> = (0..6).map(|k| (k, 0.7)).collect();
        let same = gauge_transform(p.base(), &a, &konst);
        assert!(same.weights().iter().zip(a.weights()).all(|(x, y)| (x - y).abs() < 1e-12));
        let scaled = FlatPotential::from_weights(
            p.base(),
            a.weights().iter().map(|w| w * (1.0 + 2.0 * std::f64::consts::PI / 2.1)).collect(),
        )
        .unwrap();
        assert!(same_character(&p, &a, &scaled).unwrap());
        let other = FlatPotential::from_weights(p.base(), a.weights().iter().map(|w| w * 1.5).collect()).unwrap();
        assert!(!same_character(&p, &a, &other).unwrap());
    }

    #[test]
    fn character_round_trip() {
        let (p, _) = circle_weights();
        let pot = potential_from_character(&p, &[2.1]).unwrap();
        assert_eq!(pot.weights().iter().filter(|w| **w != 0.0).count(), 1);
        let l = &generator_loops(&p).unwrap()[0];
        let ahat = potential_cocycle(&p, &pot).unwrap();
        assert!((loop_integral(&ahat, l).unwrap() - 2.1).abs() < 1e-12);
        assert!(potential_from_character(&p, &[0.0]).unwrap().weights().iter().all(|w| *w == 0.0));

        let w = build_net(NetKind::Wedge(6, 6)).unwrap();
        let periods = [std::f64::consts::FRAC_PI_2, -std::f64::consts::FRAC_PI_3];
        let pot = potential_from_character(&w, &periods).unwrap();
        let ahat = potential_cocycle(&w, &pot).unwrap();
        for (l, x) in generator_loops(&w).unwrap().iter().zip(periods) {
            assert!((loop_integral(&ahat, l).unwrap() - x).abs() < 1e-12);
        }
        assert_eq!(potential_from_character(&w, &[1.0]).unwrap_err(), Error::CharacterArity { expected: 2, got: 1 });
    }

    #[test]
    fn filled_triangle_rejects_nonzero_period() {
        let base = BaseComplex::new(vec![0, 1, 2], vec![(0, 1), (1, 2), (0, 2)], vec![[0, 1, 2]]).unwrap();
        let supports: Vec<BTreeSet<VertexId>> =
            vec![BTreeSet::from([0]), BTreeSet::from([1]), BTreeSet::from([2]), BTreeSet::from([0, 1, 2])];
        let p = CausalPoset::from_parts(base, supports, Some(vec![])).unwrap();
        assert!(potential_from_character(&p, &[0.0]).is_ok());
        assert!(matches!(potential_from_character(&p, &[0.3]), Err(Error::PotentialNotClosed(0, _))));
        let open = FlatPotential::from_oriented(p.base(), &[((0, 1), 0.2)]).unwrap();
        assert!(matches!(local_primitives(&p, &open), Err(Error::PotentialNotClosed(0, _))));
    }

    proptest! {
        #[test]
        fn gauge_never_changes_loop_integrals(
            chi in proptest::collection::vec(-3.0f64..3.0, 6),
            w in -3i32..=3,
        ) {
            let (p, a) = circle_weights();
            let chi: BTreeMap<VertexId, f64> = chi.into_iter().enumerate().collect();
            let b = gauge_transform(p.base(), &a, &chi);
            let l = approximate_curve(&p, &base_cycles(p.base())[0].wound(w), true).unwrap();
            let ia = loop_integral(&potential_cocycle(&p, &a).unwrap(), &l).unwrap();
            let ib = loop_integral(&potential_cocycle(&p, &b).unwrap(), &l).unwrap();
            prop_assert!((ia - ib).abs() < 1e-12);
        }
    }
}
