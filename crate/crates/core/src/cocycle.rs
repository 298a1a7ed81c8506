//! Unitary matrix 1-cocycles on a causal poset.
//!
//! A cocycle assigns a unitary `z(b, a)` to every ordered comparable pair and
//! is extended to paths by `z(p) = z(step_k) ··· z(step_1)`. Its values on
//! tree-closed loops give a representation of π₁, split off by a path frame
//! into a topological component `u_z` (valued at the pole) and a topologically
//! trivial charged component `z_c`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::homotopy::{shortest_path, GroupWord, Pi1Presentation, PosetPath, Step};
use crate::linalg::{
    algebra_basis, center_dimension, identity, is_identity, is_unitary, max_abs_diff, null_space, unvectorize, CMatrix,
    C64, RANK_TOL,
};
use crate::poset::{CausalPoset, DiamondId, ValidationReport};

pub use crate::linalg::commutant_dimension;

/// Default tolerance for unitarity and identity checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance for exact algebraic reconstructions.
pub const RECONSTRUCTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryCocycle {
    pub dim: usize,
    pub values: BTreeMap<(DiamondId, DiamondId), CMatrix>,
    pub tolerance: f64,
}

impl UnitaryCocycle {
    /// Builds `z(b, a) = f(b, a)` on every comparable pair of `p`.
    pub fn from_fn<F>(p: &CausalPoset, dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(DiamondId, DiamondId) -> CMatrix,
    {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut values = BTreeMap::new();
        for (b, a) in p.comparable_pairs() {
            let m = f(b, a);
            if m.shape() != (dim, dim) {
                return Err(Error::IncompatibleDimensions(m.nrows(), dim));
            }
            values.insert((b, a), m);
        }
        Ok(UnitaryCocycle { dim, values, tolerance: DEFAULT_TOL })
    }

    /// The identity cocycle `ι`.
    pub fn trivial(p: &CausalPoset, dim: usize) -> Result<Self> {
        Self::from_fn(p, dim, |_, _| identity(dim))
    }

    /// One-dimensional cocycle from scalar values.
    pub fn from_phases<F>(p: &CausalPoset, mut f: F) -> Result<Self>
    where
        F: FnMut(DiamondId, DiamondId) -> C64,
    {
        Self::from_fn(p, 1, |b, a| CMatrix::from_element(1, 1, f(b, a)))
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn get(&self, b: DiamondId, a: DiamondId) -> Result<&CMatrix> {
        self.values.get(&(b, a)).ok_or(Error::InvalidPath(b, a))
    }

    /// `U z(b, a) U*` for a fixed unitary `U`.
    pub fn conjugated(&self, u: &CMatrix) -> Result<Self> {
        if u.shape() != (self.dim, self.dim) {
            return Err(Error::IncompatibleDimensions(u.nrows(), self.dim));
        }
        let values = self.values.iter().map(|(k, m)| (*k, u * m * u.adjoint())).collect();
        Ok(UnitaryCocycle { dim: self.dim, values, tolerance: self.tolerance })
    }

    /// Largest entrywise distance between values on the same pairs.
    pub fn distance(&self, other: &UnitaryCocycle) -> f64 {
        if self.values.len() != other.values.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .map(|(k, m)| other.values.get(k).map_or(f64::INFINITY, |n| max_abs_diff(m, n)))
            .fold(0.0, f64::max)
    }
}

/// Reports unitarity, adjoint-symmetry and cocycle-equation violations.
pub fn check_cocycle(p: &CausalPoset, z: &UnitaryCocycle) -> Result<ValidationReport> {
    let tol = z.tolerance;
    let mut report = ValidationReport::default();
    for (b, a) in p.comparable_pairs() {
        let m = z.values.get(&(b, a)).ok_or(Error::CocycleNotTotal(b, a))?;
        let w = vec![b.0, a.0];
        if m.shape() != (z.dim, z.dim) {
            report.push("dimension", format!("dimension mismatch at ({b}, {a})"), w);
            continue;
        }
        if !is_unitary(m, tol) {
            report.push("unitarity", format!("unitarity violation at ({b}, {a})"), w.clone());
        }
        if a == b && !is_identity(m, tol) {
            report.push("identity", format!("z({b}, {b}) is not the identity"), w.clone());
        }
        if let Some(back) = z.values.get(&(a, b)) {
            if back.shape() == m.shape() && max_abs_diff(back, &m.adjoint()) > tol {
                report.push("adjoint", format!("adjoint symmetry violation at ({b}, {a})"), w);
            }
        }
    }
    for (o, a, c) in p.chains() {
        let (Ok(ca), Ok(ao), Ok(co)) = (z.get(c, a), z.get(a, o), z.get(c, o)) else {
            continue;
        };
        if ca.shape() == ao.shape() && max_abs_diff(&(ca * ao), co) > tol {
            report.push("cocycle", format!("cocycle equation violation at ({c}, {a}, {o})"), vec![c.0, a.0, o.0]);
        }
    }
    Ok(report)
}

/// `z(p) = z(step_k) ··· z(step_1)`.
pub fn evaluate_path(z: &UnitaryCocycle, p: &PosetPath) -> Result<CMatrix> {
    let mut out = identity(z.dim);
    for s in p.steps() {
        out = z.get(s.target, s.source)? * out;
    }
    Ok(out)
}

/// Image of a group word whose letters are read in traversal order.
pub fn evaluate_word(images: &[CMatrix], dim: usize, w: &GroupWord) -> CMatrix {
    let mut out = identity(dim);
    for l in w.letters() {
        let g = &images[l.gen];
        out = if l.inv { g.adjoint() * out } else { g * out };
    }
    out
}

/// Representation of π₁ by unitaries, one image per presentation generator.
#[derive(Debug, Clone, PartialEq)]
pub struct HolonomyRep {
    pub dim: usize,
    pub images: Vec<CMatrix>,
    pub topologically_trivial: bool,
}

impl HolonomyRep {
    /// Extends images of the surviving generators to all generators.
    pub fn from_free_images(pres: &Pi1Presentation, free_images: &[CMatrix], dim: usize) -> Result<Self> {
        let free = pres.free_generators();
        if free_images.len() != free.len() {
            return Err(Error::CharacterArity { expected: free.len(), got: free_images.len() });
        }
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(m) = free_images.iter().find(|m| m.shape() != (dim, dim)) {
            return Err(Error::IncompatibleDimensions(m.nrows(), dim));
        }
        let mut sparse = vec![identity(dim); pres.generator_count()];
        for (g, m) in free.iter().zip(free_images) {
            sparse[*g] = m.clone();
        }
        let images: Vec<CMatrix> =
            (0..pres.generator_count()).map(|g| evaluate_word(&sparse, dim, pres.expansion(g))).collect();
        let topologically_trivial = images.iter().all(|m| is_identity(m, DEFAULT_TOL));
        Ok(HolonomyRep { dim, images, topologically_trivial })
    }

    /// Images of the surviving generators.
    pub fn free_images(&self, pres: &Pi1Presentation) -> Vec<CMatrix> {
        pres.free_generators().iter().map(|g| self.images[*g].clone()).collect()
    }

    pub fn evaluate(&self, w: &GroupWord) -> CMatrix {
        evaluate_word(&self.images, self.dim, w)
    }

    /// Index of the first relator not mapped to the identity.
    pub fn failing_relator(&self, pres: &Pi1Presentation, tol: f64) -> Option<usize> {
        pres.relators.iter().position(|r| !is_identity(&self.evaluate(r), tol))
    }
}

pub fn holonomy_rep(z: &UnitaryCocycle, pres: &Pi1Presentation) -> Result<HolonomyRep> {
    let images: Vec<CMatrix> =
        (0..pres.generator_count()).map(|g| evaluate_path(z, &pres.generator_loop(g))).collect::<Result<_>>()?;
    let topologically_trivial = images.iter().all(|m| is_identity(m, z.tolerance));
    let rep = HolonomyRep { dim: z.dim, images, topologically_trivial };
    if rep.failing_relator(pres, z.tolerance).is_some() {
        return Err(Error::HomotopyViolation);
    }
    Ok(rep)
}

/// Paths `p_ae: e → a` from a pole `e` to every diamond.
#[derive(Debug, Clone, PartialEq)]
pub struct PathFrame {
    pub pole: DiamondId,
    pub paths: BTreeMap<DiamondId, PosetPath>,
}

impl PathFrame {
    pub fn new(pole: DiamondId, paths: BTreeMap<DiamondId, PosetPath>) -> Result<Self> {
        for (a, q) in &paths {
            if q.source() != pole || q.target() != *a {
                return Err(Error::IncompleteFrame(*a));
            }
        }
        if paths.get(&pole).is_some_and(|q| !q.is_empty()) {
            return Err(Error::IncompleteFrame(pole));
        }
        Ok(PathFrame { pole, paths })
    }

    /// Spanning-tree frame of a presentation, poled at its base.
    pub fn from_tree(p: &CausalPoset, pres: &Pi1Presentation) -> Self {
        let paths = p.ids().map(|a| (a, pres.tree_path(a))).collect();
        PathFrame { pole: pres.base, paths }
    }

    /// Frame of shortest comparability paths from `pole`.
    pub fn shortest(p: &CausalPoset, pole: DiamondId) -> Result<Self> {
        let paths = p.ids().map(|a| Ok((a, shortest_path(p, pole, a)?))).collect::<Result<_>>()?;
        Ok(PathFrame { pole, paths })
    }

    pub fn path(&self, a: DiamondId) -> Result<&PosetPath> {
        self.paths.get(&a).ok_or(Error::IncompleteFrame(a))
    }

    /// The loop `p_eb * (b, a) * p_ae` at the pole.
    pub fn frame_loop(&self, b: DiamondId, a: DiamondId) -> Result<PosetPath> {
        self.path(a)?.then(&PosetPath::elementary(b, a))?.then(&self.path(b)?.reversed())
    }

    fn check_total(&self, p: &CausalPoset) -> Result<()> {
        match p.ids().find(|a| !self.paths.contains_key(a)) {
            Some(a) => Err(Error::IncompleteFrame(a)),
            None => Ok(()),
        }
    }
}

/// Charged and topological components `(z_c, u_z)`.
pub fn split_components(
    p: &CausalPoset,
    z: &UnitaryCocycle,
    frame: &PathFrame,
) -> Result<(UnitaryCocycle, UnitaryCocycle)> {
    frame.check_total(p)?;
    let transport: BTreeMap<DiamondId, CMatrix> =
        p.ids().map(|a| Ok((a, evaluate_path(z, frame.path(a)?)?))).collect::<Result<_>>()?;
    let zc = UnitaryCocycle::from_fn(p, z.dim, |b, a| &transport[&b] * transport[&a].adjoint())?;
    let mut uz_values = BTreeMap::new();
    for (b, a) in p.comparable_pairs() {
        uz_values.insert((b, a), transport[&b].adjoint() * z.get(b, a)? * &transport[&a]);
    }
    let uz = UnitaryCocycle { dim: z.dim, values: uz_values, tolerance: z.tolerance };
    Ok((zc.with_tolerance(z.tolerance), uz))
}

/// `(u ⋈ z_c)(b, a) = α_{be}(u(b, a)) z_c(b, a)` with `α_{be} = Ad z_c(p_be)`.
pub fn join(p: &CausalPoset, u: &UnitaryCocycle, zc: &UnitaryCocycle, frame: &PathFrame) -> Result<UnitaryCocycle> {
    if u.dim != zc.dim {
        return Err(Error::IncompatibleDimensions(u.dim, zc.dim));
    }
    frame.check_total(p)?;
    let transport: BTreeMap<DiamondId, CMatrix> =
        p.ids().map(|a| Ok((a, evaluate_path(zc, frame.path(a)?)?))).collect::<Result<_>>()?;
    let mut values = BTreeMap::new();
    for (b, a) in p.comparable_pairs() {
        let t = &transport[&b];
        values.insert((b, a), t * u.get(b, a)? * t.adjoint() * zc.get(b, a)?);
    }
    Ok(UnitaryCocycle { dim: u.dim, values, tolerance: u.tolerance })
}

/// Topological dimension of a representation: `n / √dim(commutant)`.
pub fn rep_topological_dimension(rep: &HolonomyRep, n_generators: usize) -> Result<usize> {
    let n = rep.dim;
    let (alg, _) = algebra_basis(&rep.images, 2 * n_generators.max(1));
    // a second closure pass must not grow the algebra
    let (again, _) = algebra_basis(&alg, 1);
    if again.len() != alg.len() {
        return Err(Error::NotAFactor(0));
    }
    let center = center_dimension(&alg, &rep.images);
    if center != 1 {
        return Err(Error::NotAFactor(center));
    }
    let mut mats = alg;
    mats.push(identity(n));
    let c = commutant_dimension(&mats);
    let root = (c as f64).sqrt().round() as usize;
    if root * root != c || root == 0 || !n.is_multiple_of(root) {
        return Err(Error::NotAFactor(center));
    }
    Ok(n / root)
}

pub fn topological_dimension(z: &UnitaryCocycle, pres: &Pi1Presentation) -> Result<usize> {
    rep_topological_dimension(&holonomy_rep(z, pres)?, pres.free_generators().len())
}

/// Intertwiner family `a ↦ t_a` with `t_b z(b, a) = z'(b, a) t_a`.
pub type Intertwiner = BTreeMap<DiamondId, CMatrix>;

/// Basis of the intertwiner space from `z` to `z'`.
pub fn intertwiner_space(p: &CausalPoset, z: &UnitaryCocycle, zp: &UnitaryCocycle) -> Result<Vec<Intertwiner>> {
    let root = p.ids().next().ok_or(Error::NotPathwiseConnected)?;
    let frame = PathFrame::shortest(p, root)?;
    let (n, m) = (z.dim, zp.dim);
    let tz: BTreeMap<DiamondId, CMatrix> =
        p.ids().map(|a| Ok((a, evaluate_path(z, frame.path(a)?)?))).collect::<Result<_>>()?;
    let tzp: BTreeMap<DiamondId, CMatrix> =
        p.ids().map(|a| Ok((a, evaluate_path(zp, frame.path(a)?)?))).collect::<Result<_>>()?;
    // t_a = z'(p_a) t z(p_a)*; each pair imposes t X = Y t on the pole value t
    let pairs = p.strict_inclusions();
    let mut system = CMatrix::zeros(pairs.len() * n * m, n * m);
    for (k, (b, a)) in pairs.iter().enumerate() {
        let x = tz[b].adjoint() * z.get(*b, *a)? * &tz[a];
        let y = tzp[b].adjoint() * zp.get(*b, *a)? * &tzp[a];
        let block = x.transpose().kronecker(&identity(m)) - identity(n).kronecker(&y);
        system.view_mut((k * n * m, 0), (n * m, n * m)).copy_from(&block);
    }
    Ok(null_space(&system, RANK_TOL)
        .iter()
        .map(|v| {
            let t = unvectorize(v, m, n);
            p.ids().map(|a| (a, &tzp[&a] * &t * tz[&a].adjoint())).collect()
        })
        .collect())
}

/// Whether `t` intertwines `z` and `z'` on every comparable pair.
pub fn is_intertwiner(
    p: &CausalPoset,
    z: &UnitaryCocycle,
    zp: &UnitaryCocycle,
    t: &Intertwiner,
    tol: f64,
) -> Result<bool> {
    for (b, a) in p.comparable_pairs() {
        let lhs = &t[&b] * z.get(b, a)?;
        let rhs = zp.get(b, a)? * &t[&a];
        if max_abs_diff(&lhs, &rhs) > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Transition unitaries on strict inclusions `(b, a)`, read along the step `a → b`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatBundleData {
    pub dim: usize,
    pub transitions: BTreeMap<(DiamondId, DiamondId), CMatrix>,
}

impl FlatBundleData {
    fn step(&self, s: Step) -> CMatrix {
        match self.transitions.get(&(s.target, s.source)) {
            Some(m) => m.clone(),
            None if s.target == s.source => identity(self.dim),
            None => self.transitions[&(s.source, s.target)].adjoint(),
        }
    }

    /// The cocycle whose values are the transitions.
    pub fn to_cocycle(&self, p: &CausalPoset) -> Result<UnitaryCocycle> {
        UnitaryCocycle::from_fn(p, self.dim, |b, a| self.step(Step::new(b, a)))
    }
}

pub fn flat_bundle_from_holonomy(p: &CausalPoset, pres: &Pi1Presentation, rep: &HolonomyRep) -> Result<FlatBundleData> {
    if let Some(r) = rep.failing_relator(pres, DEFAULT_TOL) {
        return Err(Error::NotFlat(r));
    }
    let mut transitions = BTreeMap::new();
    for (b, a) in p.strict_inclusions() {
        let m = match pres.generator_of(Step::new(b, a)) {
            Some(g) => rep.images[g].clone(),
            None => identity(rep.dim),
        };
        transitions.insert((b, a), m);
    }
    let bundle = FlatBundleData { dim: rep.dim, transitions };
    for (k, (o, a, c)) in p.chains().into_iter().enumerate() {
        let around = bundle.step(Step::new(o, c)) * bundle.step(Step::new(c, a)) * bundle.step(Step::new(a, o));
        if !is_identity(&around, DEFAULT_TOL) {
            return Err(Error::NotFlat(k));
        }
    }
    Ok(bundle)
}

/// Principal argument of each surviving generator's image (one-dimensional reps only).
pub fn character_data(pres: &Pi1Presentation, rep: &HolonomyRep) -> Result<Vec<(usize, f64)>> {
    if rep.dim != 1 {
        return Err(Error::IncompatibleDimensions(rep.dim, 1));
    }
    Ok(pres.free_generators().iter().map(|g| (*g, rep.images[*g][(0, 0)].arg())).collect())
}

/// `Hol ⋈ (ζ ⊕ … ⊕ ζ)` for a representation and a trivial one-dimensional cocycle.
pub fn assemble_multiplet(
    p: &CausalPoset,
    pres: &Pi1Presentation,
    rep: &HolonomyRep,
    zeta: &UnitaryCocycle,
    frame: &PathFrame,
) -> Result<UnitaryCocycle> {
    if rep.dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if zeta.dim != 1 {
        return Err(Error::IncompatibleDimensions(zeta.dim, 1));
    }
    if !holonomy_rep(zeta, pres)?.topologically_trivial {
        return Err(Error::NotTopologicallyTrivial);
    }
    let bundle = flat_bundle_from_holonomy(p, pres, rep)?.to_cocycle(p)?;
    let (_, u) = split_components(p, &bundle, frame)?;
    let n = rep.dim;
    let zc = UnitaryCocycle::from_fn(p, n, |b, a| identity(n) * zeta.values[&(b, a)][(0, 0)])?;
    join(p, &u, &zc, frame)
}
