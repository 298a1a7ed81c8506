//! Twisted field nets and their sectors.
//!
//! A twist decorates each inclusion with a unit phase; charge-`n` words pick up
//! its `n`-th power. Twisted transporters are Dirac transporters times the
//! twist phases, so their loop values are the twist's holonomy. This module
//! splits them into phase and charged parts, converts between twists and
//! sectors, and summarizes a sector's quantum numbers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cocycle::{
    evaluate_path, holonomy_rep, join, rep_topological_dimension, split_components, topological_dimension, PathFrame,
    UnitaryCocycle, RECONSTRUCTION_TOL,
};
use crate::error::{Error, Result};
use crate::fieldalg::{normal_form, statistics_phase, FieldCocycle, FieldWord, Scalar};
use crate::flatpot::{generator_loops, potential_cocycle, potential_from_character, AbelianCocycle};
use crate::homotopy::{Pi1Presentation, PosetPath};
use crate::linalg::{phase, CMatrix};
use crate::poset::{CausalPoset, DiamondId};

/// Unit phases `σ_{oa} = e^{iθ_{oa}}` on ordered comparable pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Twist {
    angles: BTreeMap<(DiamondId, DiamondId), f64>,
}

impl Twist {
    pub fn trivial(p: &CausalPoset) -> Self {
        Twist { angles: p.comparable_pairs().into_iter().map(|k| (k, 0.0)).collect() }
    }

    /// Twist with `σ_{oa} = e^{iθ(o, a)}` for `a ⊆ o`, conjugated on reversed pairs.
    pub fn from_fn<F: FnMut(DiamondId, DiamondId) -> f64>(p: &CausalPoset, mut theta: F) -> Self {
        let mut angles = BTreeMap::new();
        for o in p.ids() {
            angles.insert((o, o), 0.0);
        }
        for (o, a) in p.strict_inclusions() {
            let t = theta(o, a);
            angles.insert((o, a), t);
            angles.insert((a, o), -t);
        }
        Twist { angles }
    }

    pub fn angle(&self, o: DiamondId, a: DiamondId) -> Result<f64> {
        self.angles.get(&(o, a)).copied().ok_or(Error::InvalidPath(o, a))
    }

    pub fn sigma(&self, o: DiamondId, a: DiamondId) -> Result<Scalar> {
        Ok(Scalar::phase(self.angle(o, a)?))
    }

    /// Product of `σ_{source, target}` over the steps of `p`.
    pub fn along(&self, p: &PosetPath) -> Result<Scalar> {
        p.steps().iter().try_fold(Scalar::ONE, |acc, s| Ok(acc.mul(self.sigma(s.source, s.target)?)))
    }

    /// Chains `(o, a, e)` with `σ_{oa} σ_{ae} ≠ σ_{oe}`.
    pub fn chain_failures(&self, p: &CausalPoset, tol: f64) -> Result<Vec<(DiamondId, DiamondId, DiamondId)>> {
        let mut bad = Vec::new();
        for (e, a, o) in p.chains() {
            let lhs = self.sigma(o, a)?.mul(self.sigma(a, e)?).to_complex();
            if (lhs - self.sigma(o, e)?.to_complex()).norm() > tol {
                bad.push((o, a, e));
            }
        }
        Ok(bad)
    }

    /// The scalar cocycle `(b, a) ↦ σ_{ab}` carried by twisted transporters.
    pub fn phase_cocycle(&self, p: &CausalPoset) -> Result<UnitaryCocycle> {
        let mut values = BTreeMap::new();
        for (b, a) in p.comparable_pairs() {
            values.insert((b, a), CMatrix::from_element(1, 1, self.sigma(a, b)?.to_complex()));
        }
        Ok(UnitaryCocycle { dim: 1, values, tolerance: crate::cocycle::DEFAULT_TOL })
    }

    fn from_phase_cocycle(z: &UnitaryCocycle) -> Self {
        let angles = z.values.iter().map(|((b, a), m)| ((*a, *b), m[(0, 0)].arg())).collect();
        Twist { angles }
    }
}

/// `σ_{oa} = e^{−iÂ_{oa}}`.
pub fn twist_from_potential(ahat: &AbelianCocycle) -> Twist {
    Twist { angles: ahat.pairs().map(|(k, v)| (*k, -v)).collect() }
}

/// `ȷ_{oa}(w)`: scales `w` by `σ_{oa}^{charge(w)}`.
pub fn twisted_morphism(sigma: &Twist, pair: (DiamondId, DiamondId), w: &FieldWord) -> Result<FieldWord> {
    Ok(w.scaled(sigma.sigma(pair.0, pair.1)?.powi(w.charge())))
}

/// Charge-one transporter twisted by `σ`.
pub fn twisted_transporter(sigma: &Twist) -> FieldCocycle {
    FieldCocycle { charge: 1, twist: Some(sigma.clone()) }
}

fn twist_of(p: &CausalPoset, z: &FieldCocycle) -> Twist {
    z.twist.clone().unwrap_or_else(|| Twist::trivial(p))
}

/// Phase part, charged part and the unitary equivalence of the charged part
/// with the untwisted transporter.
#[derive(Debug, Clone)]
pub struct Factorization {
    /// Pole-valued phases `u(b, a)` along frame loops.
    pub phase: UnitaryCocycle,
    pub charged: FieldCocycle,
    /// `t_x` with `t_b z_c(b, a) = z₁(b, a) t_a`.
    pub intertwiner: BTreeMap<DiamondId, Scalar>,
    /// Largest scalar error of `u · z_c` against `z` over all pairs.
    pub join_error: f64,
}

pub fn factorize(p: &CausalPoset, z: &FieldCocycle, frame: &PathFrame) -> Result<Factorization> {
    let sigma = twist_of(p, z);
    let scalar = sigma.phase_cocycle(p)?;
    let (zc, u) = split_components(p, &scalar, frame)?;
    let rejoined = join(p, &u, &zc, frame)?;
    let charged = FieldCocycle { charge: z.charge, twist: Some(Twist::from_phase_cocycle(&zc)) };
    let mut join_error = rejoined.distance(&scalar);
    for (b, a) in p.comparable_pairs() {
        let ub = Scalar::from_complex(u.get(b, a)?[(0, 0)]);
        let lhs = normal_form(&charged.value(b, a)?.scaled(ub), p);
        let rhs = normal_form(&z.value(b, a)?, p);
        if lhs.letters != rhs.letters {
            return Err(Error::IncompatibleDimensions(lhs.letters.len(), rhs.letters.len()));
        }
        join_error = join_error.max((lhs.scalar.to_complex() - rhs.scalar.to_complex()).norm());
    }
    let mut intertwiner = BTreeMap::new();
    for x in p.ids() {
        let s = sigma.along(frame.path(x)?)?;
        intertwiner.insert(x, s.conj());
    }
    Ok(Factorization { phase: u, charged, intertwiner, join_error })
}

/// Whether `t_b z(b, a) = z'(b, a) t_a` on every comparable pair, in normal form.
pub fn intertwines(
    p: &CausalPoset,
    z: &FieldCocycle,
    zp: &FieldCocycle,
    t: &BTreeMap<DiamondId, Scalar>,
    tol: f64,
) -> Result<bool> {
    for (b, a) in p.comparable_pairs() {
        let lhs = normal_form(&z.value(b, a)?.scaled(t[&b]), p);
        let rhs = normal_form(&zp.value(b, a)?.scaled(t[&a]), p);
        if !lhs.approx_eq(&rhs, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Loop value of a charge-carrying cocycle on each fundamental cycle.
fn cycle_holonomies(p: &CausalPoset, z: &FieldCocycle) -> Result<Vec<Scalar>> {
    generator_loops(p)?
        .iter()
        .map(|l| {
            let w = z.evaluate(l, p)?;
            if w.is_scalar() {
                Ok(w.scalar)
            } else {
                Err(Error::NonScalarHolonomy)
            }
        })
        .collect()
}

/// Twist carried by a sector: periods read off its loop values, realized by
/// a potential on the non-tree base edges.
pub fn sector_to_twist(p: &CausalPoset, z: &FieldCocycle) -> Result<Twist> {
    let periods: Vec<f64> = cycle_holonomies(p, z)?.iter().map(|h| -h.to_complex().arg()).collect();
    let pot = potential_from_character(p, &periods)?;
    Ok(twist_from_potential(&potential_cocycle(p, &pot)?))
}

pub fn twist_to_sector(sigma: &Twist) -> FieldCocycle {
    twisted_transporter(sigma)
}

#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub twist: Twist,
    pub sector: FieldCocycle,
    /// Largest deviation of loop values on the fundamental cycles.
    pub loop_error: f64,
    /// Scalars `t_x` with `t_b z(b, a) = z'(b, a) t_a` from the original sector to the rebuilt one.
    pub intertwiner: BTreeMap<DiamondId, Scalar>,
}

/// Twist → sector → twist, with the rebuilt sector and its equivalence to the first.
pub fn roundtrip(p: &CausalPoset, sigma: &Twist, frame: &PathFrame) -> Result<RoundTrip> {
    let sector = twist_to_sector(sigma);
    let back = sector_to_twist(p, &sector)?;
    let rebuilt = twist_to_sector(&back);
    let mut loop_error: f64 = 0.0;
    for l in generator_loops(p)? {
        let d = sigma.along(&l)?.to_complex() - back.along(&l)?.to_complex();
        loop_error = loop_error.max(d.norm());
    }
    let mut intertwiner = BTreeMap::new();
    for x in p.ids() {
        let path = frame.path(x)?;
        intertwiner.insert(x, back.along(path)?.mul(sigma.along(path)?.conj()));
    }
    Ok(RoundTrip { twist: back, sector: rebuilt, loop_error, intertwiner })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterValue {
    pub gen: usize,
    pub phase: f64,
}

/// Quantum numbers of a sector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charge: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub tau: usize,
    /// Argument of the loop value on each fundamental cycle.
    pub character: Vec<CharacterValue>,
    pub trivial: bool,
    /// `−arg` of each loop value, the period of a representing potential.
    pub periods: Vec<f64>,
}

fn unit_close(x: f64, tol: f64) -> bool {
    (phase(x) - phase(0.0)).norm() <= tol
}

/// Report for a field-algebra sector (plain, conjugate, powered or twisted transporter).
pub fn analyze(p: &CausalPoset, pres: &Pi1Presentation, z: &FieldCocycle) -> Result<SectorReport> {
    let kappa =
        p.ids().find_map(|a| statistics_phase(z, a, p).ok()).map(|s| if s.to_complex().re < 0.0 { -1 } else { 1 });
    if kappa.is_none() && !p.is_empty() {
        statistics_phase(z, DiamondId(0), p)?;
    }
    let hol = cycle_holonomies(p, z)?;
    let character: Vec<CharacterValue> =
        hol.iter().enumerate().map(|(gen, h)| CharacterValue { gen, phase: h.to_complex().arg() }).collect();
    let trivial = character.iter().all(|c| unit_close(c.phase, crate::cocycle::DEFAULT_TOL));
    let scalar = twist_of(p, z).phase_cocycle(p)?;
    let tau = topological_dimension(&scalar, pres)?;
    Ok(SectorReport {
        charge: Some(z.charge),
        kappa,
        d: Some(1),
        tau,
        periods: character.iter().map(|c| -c.phase).collect(),
        character,
        trivial,
    })
}

/// Report for a matrix cocycle; statistics are not defined there.
pub fn analyze_matrix(p: &CausalPoset, pres: &Pi1Presentation, z: &UnitaryCocycle) -> Result<SectorReport> {
    let rep = holonomy_rep(z, pres)?;
    let tau = rep_topological_dimension(&rep, pres.free_generators().len())?;
    let mut character = Vec::new();
    if z.dim == 1 {
        for (gen, l) in generator_loops(p)?.iter().enumerate() {
            character.push(CharacterValue { gen, phase: evaluate_path(z, l)?[(0, 0)].arg() });
        }
    }
    Ok(SectorReport {
        charge: None,
        kappa: None,
        d: None,
        tau,
        periods: character.iter().map(|c| -c.phase).collect(),
        character,
        trivial: rep.topologically_trivial,
    })
}

/// Largest deviation of `join(u, z_c)` from `z`, a scalar-error probe for split/join.
pub fn split_join_error(p: &CausalPoset, z: &UnitaryCocycle, frame: &PathFrame) -> Result<f64> {
    let (zc, u) = split_components(p, z, frame)?;
    Ok(join(p, &u, &zc, frame)?.distance(z))
}

/// Tolerance used when comparing reconstructed twists.
pub const ROUNDTRIP_TOL: f64 = RECONSTRUCTION_TOL;
