//! Words in localized unitary field letters `φ_o`, `φ_o*` with exact signs.
//!
//! Letters at the same diamond cancel against their adjoints and letters at
//! causally disjoint diamonds anticommute, whatever their dagger flags. Letters
//! at distinct, non-disjoint diamonds never move past each other. The normal
//! form is computed in two passes: a stack reduction removes every cancellable
//! pair, then the lexicographically least reordering is read off, each
//! transposition of disjoint letters contributing a factor `−1`.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::{shortest_path, PosetPath};
use crate::linalg::{phase, C64};
use crate::poset::{CausalPoset, DiamondId};
use crate::sectors::Twist;

/// Unit scalar `sign · e^{i angle}` with an exact sign and principal angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scalar {
    pub sign: i8,
    pub angle: f64,
}

fn principal(theta: f64) -> f64 {
    let t = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if t == -PI {
        PI
    } else {
        t
    }
}

impl Scalar {
    pub const ONE: Scalar = Scalar { sign: 1, angle: 0.0 };
    pub const MINUS_ONE: Scalar = Scalar { sign: -1, angle: 0.0 };

    pub fn phase(angle: f64) -> Self {
        Scalar { sign: 1, angle: principal(angle) }
    }

    /// Reads a unit complex number, keeping `±1` exact.
    pub fn from_complex(z: C64) -> Self {
        if z.im == 0.0 && z.re == -1.0 {
            Scalar::MINUS_ONE
        } else if z.im == 0.0 && z.re == 1.0 {
            Scalar::ONE
        } else {
            Scalar::phase(z.arg())
        }
    }

    pub fn negated(self) -> Self {
        Scalar { sign: -self.sign, angle: self.angle }
    }

    pub fn conj(self) -> Self {
        Scalar { sign: self.sign, angle: if self.angle == 0.0 { 0.0 } else { principal(-self.angle) } }
    }

    pub fn mul(self, other: Scalar) -> Self {
        let angle = if other.angle == 0.0 {
            self.angle
        } else if self.angle == 0.0 {
            other.angle
        } else {
            principal(self.angle + other.angle)
        };
        Scalar { sign: self.sign * other.sign, angle }
    }

    pub fn powi(self, n: i32) -> Self {
        let sign = if n % 2 == 0 { 1 } else { self.sign };
        let angle = if self.angle == 0.0 { 0.0 } else { principal(self.angle * n as f64) };
        Scalar { sign, angle }
    }

    pub fn to_complex(self) -> C64 {
        phase(self.angle) * self.sign as f64
    }

    pub fn is_one(self) -> bool {
        self.sign == 1 && self.angle == 0.0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "" };
        if self.angle == 0.0 {
            write!(f, "{s}1")
        } else {
            write!(f, "{s}e^(i{})", self.angle)
        }
    }
}

/// Field letter `φ_o` (or `φ_o*` when `dag`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldLetter {
    pub o: DiamondId,
    pub dag: bool,
}

impl FieldLetter {
    pub fn phi(o: DiamondId) -> Self {
        FieldLetter { o, dag: false }
    }

    pub fn phi_dag(o: DiamondId) -> Self {
        FieldLetter { o, dag: true }
    }

    pub fn adjoint(self) -> Self {
        FieldLetter { o: self.o, dag: !self.dag }
    }

    /// Canonical order: ascending diamond, daggered first.
    fn key(self) -> (DiamondId, bool) {
        (self.o, !self.dag)
    }
}

impl Ord for FieldLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for FieldLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldWord {
    pub scalar: Scalar,
    pub letters: Vec<FieldLetter>,
}

impl FieldWord {
    pub fn one() -> Self {
        FieldWord { scalar: Scalar::ONE, letters: Vec::new() }
    }

    pub fn scalar(s: Scalar) -> Self {
        FieldWord { scalar: s, letters: Vec::new() }
    }

    pub fn letter(l: FieldLetter) -> Self {
        FieldWord { scalar: Scalar::ONE, letters: vec![l] }
    }

    pub fn from_letters(letters: Vec<FieldLetter>) -> Self {
        FieldWord { scalar: Scalar::ONE, letters }
    }

    pub fn mul(&self, other: &FieldWord) -> FieldWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FieldWord { scalar: self.scalar.mul(other.scalar), letters }
    }

    pub fn product<'a, I: IntoIterator<Item = &'a FieldWord>>(words: I) -> FieldWord {
        words.into_iter().fold(FieldWord::one(), |acc, w| acc.mul(w))
    }

    pub fn adjoint(&self) -> FieldWord {
        FieldWord { scalar: self.scalar.conj(), letters: self.letters.iter().rev().map(|l| l.adjoint()).collect() }
    }

    pub fn scaled(&self, s: Scalar) -> FieldWord {
        FieldWord { scalar: self.scalar.mul(s), letters: self.letters.clone() }
    }

    /// `#φ − #φ*`.
    pub fn charge(&self) -> i32 {
        self.letters.iter().map(|l| if l.dag { -1 } else { 1 }).sum()
    }

    pub fn is_scalar(&self) -> bool {
        self.letters.is_empty()
    }

    /// Equal letters and scalars within `tol`.
    pub fn approx_eq(&self, other: &FieldWord, tol: f64) -> bool {
        self.letters == other.letters && (self.scalar.to_complex() - other.scalar.to_complex()).norm() <= tol
    }
}

impl fmt::Display for FieldWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scalar)?;
        for l in &self.letters {
            write!(f, "·φ{}{}", l.o.0, if l.dag { "*" } else { "" })?;
        }
        Ok(())
    }
}

/// Whether two letters may be transposed, at the price of a sign.
fn swappable(p: &CausalPoset, x: FieldLetter, y: FieldLetter) -> bool {
    x.o != y.o && p.are_disjoint(x.o, y.o)
}

/// Removes every pair cancellable through transpositions of disjoint letters.
fn stack_reduce(p: &CausalPoset, w: &FieldWord) -> FieldWord {
    let mut out: Vec<FieldLetter> = Vec::with_capacity(w.letters.len());
    let mut scalar = w.scalar;
    for &l in &w.letters {
        let mut hit = None;
        for (k, &m) in out.iter().enumerate().rev() {
            if m == l.adjoint() {
                hit = Some(k);
                break;
            }
            if !swappable(p, m, l) {
                break;
            }
        }
        match hit {
            Some(k) => {
                if (out.len() - 1 - k) % 2 == 1 {
                    scalar = scalar.negated();
                }
                out.remove(k);
            }
            None => out.push(l),
        }
    }
    FieldWord { scalar, letters: out }
}

/// Lexicographically least rearrangement of a reduced word.
fn lex_least(p: &CausalPoset, w: FieldWord) -> FieldWord {
    let mut rest = w.letters;
    let mut scalar = w.scalar;
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            let free = rest[..i].iter().all(|m| swappable(p, *m, rest[i]));
            if free && best.is_none_or(|b| rest[i] < rest[b]) {
                best = Some(i);
            }
        }
        let i = best.expect("first letter is always available");
        if i % 2 == 1 {
            scalar = scalar.negated();
        }
        out.push(rest.remove(i));
    }
    FieldWord { scalar, letters: out }
}

/// Unique representative of `w` under unitarity and disjoint anticommutation.
pub fn normal_form(w: &FieldWord, p: &CausalPoset) -> FieldWord {
    lex_least(p, stack_reduce(p, w))
}

/// One admissible local rewrite: cancel an adjacent adjoint pair or transpose
/// an adjacent disjoint pair. Returns `None` when no rule applies.
pub fn rewrite_step<R: Rng>(w: &FieldWord, p: &CausalPoset, rng: &mut R) -> Option<FieldWord> {
    let n = w.letters.len();
    let sites: Vec<(usize, bool)> = (0..n.saturating_sub(1))
        .filter_map(|i| {
            let (x, y) = (w.letters[i], w.letters[i + 1]);
            if x == y.adjoint() {
                Some((i, true))
            } else if swappable(p, x, y) {
                Some((i, false))
            } else {
                None
            }
        })
        .collect();
    if sites.is_empty() {
        return None;
    }
    let (i, cancel) = sites[rng.gen_range(0..sites.len())];
    let mut out = w.clone();
    if cancel {
        out.letters.drain(i..i + 2);
    } else {
        out.letters.swap(i, i + 1);
        out.scalar = out.scalar.negated();
    }
    Some(out)
}

/// Applies up to `steps` random local rewrites.
pub fn random_rewrites<R: Rng>(w: &FieldWord, p: &CausalPoset, steps: usize, rng: &mut R) -> FieldWord {
    let mut cur = w.clone();
    for _ in 0..steps {
        match rewrite_step(&cur, p, rng) {
            Some(next) => cur = next,
            None => break,
        }
    }
    cur
}

/// Whether no local rule can shorten `w` or move it earlier in canonical order.
pub fn is_locally_irreducible(w: &FieldWord, p: &CausalPoset) -> bool {
    w.letters.windows(2).all(|xy| xy[0] != xy[1].adjoint() && !(swappable(p, xy[0], xy[1]) && xy[1] < xy[0]))
}

/// Transporter family `z(b, a) = Φ_b* Φ_a` with `Φ_o = φ_o^n` (`(φ_o*)^{|n|}` for `n < 0`),
/// optionally multiplied by twist phases.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldCocycle {
    pub charge: i32,
    pub twist: Option<Twist>,
}

impl FieldCocycle {
    /// The identity cocycle `ι`, charge 0.
    pub fn trivial() -> Self {
        FieldCocycle { charge: 0, twist: None }
    }

    fn field_power(&self, o: DiamondId) -> Vec<FieldLetter> {
        let l = FieldLetter { o, dag: self.charge < 0 };
        vec![l; self.charge.unsigned_abs() as usize]
    }

    /// Word of `z(b, a)`, the transport from `a` to `b`.
    pub fn value(&self, b: DiamondId, a: DiamondId) -> Result<FieldWord> {
        let mut letters: Vec<FieldLetter> = self.field_power(b).into_iter().rev().map(|l| l.adjoint()).collect();
        letters.extend(self.field_power(a));
        let scalar = match &self.twist {
            Some(t) => t.sigma(a, b)?.powi(self.charge),
            None => Scalar::ONE,
        };
        Ok(FieldWord { scalar, letters })
    }

    /// Normal form of `z(step_k) ··· z(step_1)`.
    pub fn evaluate(&self, path: &PosetPath, p: &CausalPoset) -> Result<FieldWord> {
        let mut w = FieldWord::one();
        for s in path.steps() {
            if !p.are_comparable(s.target, s.source) {
                return Err(Error::InvalidPath(s.target, s.source));
            }
            w = self.value(s.target, s.source)?.mul(&w);
        }
        Ok(normal_form(&w, p))
    }

    /// Chains `(c, a, o)` where `z(c, a) z(a, o) ≠ z(c, o)` in normal form.
    pub fn cocycle_failures(&self, p: &CausalPoset, tol: f64) -> Result<Vec<(DiamondId, DiamondId, DiamondId)>> {
        let mut bad = Vec::new();
        for (o, a, c) in p.chains() {
            let lhs = normal_form(&self.value(c, a)?.mul(&self.value(a, o)?), p);
            let rhs = normal_form(&self.value(c, o)?, p);
            if !lhs.approx_eq(&rhs, tol) {
                bad.push((c, a, o));
            }
        }
        Ok(bad)
    }
}

/// Dirac transporter `z(b, a) = φ_b* φ_a`, or its conjugate `φ_b φ_a*`.
pub fn transporter(conjugate: bool) -> FieldCocycle {
    FieldCocycle { charge: if conjugate { -1 } else { 1 }, twist: None }
}

/// `z^{×n}` for a transporter family.
pub fn power(z: &FieldCocycle, n: i32) -> Result<FieldCocycle> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    let twist = z.twist.clone();
    Ok(FieldCocycle { charge: z.charge.checked_mul(n).ok_or(Error::Overflow)?, twist })
}

/// Smallest diamond disjoint from every one of `from`.
pub fn first_disjoint(p: &CausalPoset, from: &[DiamondId]) -> Option<DiamondId> {
    p.ids().find(|x| from.iter().all(|o| p.are_disjoint(*x, *o)))
}

/// `z(o, a) z(p₁) z'(o, a) z(p₁)*` with `p₁: o₁ → a`.
pub fn tensor_product(
    z: &FieldCocycle,
    zp: &FieldCocycle,
    pair: (DiamondId, DiamondId),
    aux: Option<DiamondId>,
    p: &CausalPoset,
) -> Result<FieldWord> {
    let (o, a) = pair;
    if !p.are_comparable(o, a) {
        return Err(Error::InvalidPath(o, a));
    }
    let o1 = match aux {
        Some(x) if p.are_disjoint(x, o) && p.are_disjoint(x, a) => x,
        Some(_) => return Err(Error::InsufficientDisjointness),
        None => first_disjoint(p, &[o, a]).ok_or(Error::InsufficientDisjointness)?,
    };
    let p1 = z.evaluate(&shortest_path(p, o1, a)?, p)?;
    let w = FieldWord::product([&z.value(o, a)?, &p1, &zp.value(o, a)?, &p1.adjoint()]);
    Ok(normal_form(&w, p))
}

/// Statistics phase `ε_a = z(q)* z(p₁) z(q) z(p₁)*` with `q: a → o`, `o ⊥ a`,
/// `p₁: o₁ → a`, `o₁ ⊥ o, a`.
pub fn statistics_phase(z: &FieldCocycle, a: DiamondId, p: &CausalPoset) -> Result<Scalar> {
    p.check(a)?;
    let (o, o1) = p
        .ids()
        .filter(|o| p.are_disjoint(*o, a))
        .find_map(|o| first_disjoint(p, &[o, a]).map(|o1| (o, o1)))
        .ok_or(Error::InsufficientDisjointness)?;
    let zq = z.evaluate(&shortest_path(p, a, o)?, p)?;
    let zp1 = z.evaluate(&shortest_path(p, o1, a)?, p)?;
    let eps = normal_form(&FieldWord::product([&zq.adjoint(), &zp1, &zq, &zp1.adjoint()]), p);
    if !eps.is_scalar() {
        return Err(Error::StatisticsUndefined);
    }
    Ok(eps.scalar)
}

fn check_localized(w: &FieldWord, a: DiamondId, p: &CausalPoset) -> Result<()> {
    if w.letters.iter().all(|l| p.is_below(l.o, a)) {
        Ok(())
    } else {
        Err(Error::NotLocalized(a))
    }
}

/// `z(path) A z(path)*` for a path from a diamond disjoint from `a`.
pub fn localized_endomorphism_via(
    z: &FieldCocycle,
    path: &PosetPath,
    w: &FieldWord,
    a: DiamondId,
    p: &CausalPoset,
) -> Result<FieldWord> {
    check_localized(w, a, p)?;
    if !p.are_disjoint(path.source(), a) {
        return Err(Error::InsufficientDisjointness);
    }
    let zp = z.evaluate(path, p)?;
    Ok(normal_form(&FieldWord::product([&zp, w, &zp.adjoint()]), p))
}

/// `ρ^z(o)_a(A)`, transported from the smallest diamond disjoint from `a`.
pub fn localized_endomorphism(
    z: &FieldCocycle,
    o: DiamondId,
    w: &FieldWord,
    a: DiamondId,
    p: &CausalPoset,
) -> Result<FieldWord> {
    p.check(o)?;
    p.check(a)?;
    let e = first_disjoint(p, &[a]).ok_or(Error::InsufficientDisjointness)?;
    localized_endomorphism_via(z, &shortest_path(p, e, o)?, w, a, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_net, NetKind};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn d(k: usize) -> DiamondId {
        DiamondId(k)
    }

    fn circle8() -> CausalPoset {
        build_net(NetKind::Circle(8)).unwrap()
    }

    /// Two distinct disjoint diamonds with `x < y`.
    fn disjoint_pair(p: &CausalPoset) -> (DiamondId, DiamondId) {
        let x = d(0);
        (x, first_disjoint(p, &[x]).unwrap())
    }

    /// Brute-force oracle: breadth-first search over all words reachable by
    /// local rewrites and their inverses, returning the shortest, then least, form.
    fn oracle(w: &FieldWord, p: &CausalPoset) -> FieldWord {
        use std::collections::BTreeMap;
        use std::collections::{BTreeSet, VecDeque};
        let key = |w: &FieldWord| w.letters.iter().map(|l| (l.o.0, l.dag)).collect::<Vec<_>>();
        let mut seen = BTreeSet::from([key(w)]);
        let mut signs = BTreeMap::from([(key(w), w.scalar.sign)]);
        let mut queue = VecDeque::from([w.clone()]);
        let mut best = w.clone();
        while let Some(cur) = queue.pop_front() {
            let better = cur.letters.len() < best.letters.len()
                || (cur.letters.len() == best.letters.len() && cur.letters < best.letters);
            if better {
                best = cur.clone();
            }
            let n = cur.letters.len();
            let mut next = Vec::new();
            for i in 0..n.saturating_sub(1) {
                let (x, y) = (cur.letters[i], cur.letters[i + 1]);
                if x == y.adjoint() {
                    let mut c = cur.clone();
                    c.letters.drain(i..i + 2);
                    next.push(c);
                } else if swappable(p, x, y) {
                    let mut c = cur.clone();
                    c.letters.swap(i, i + 1);
                    c.scalar = c.scalar.negated();
                    next.push(c);
                }
            }
            for c in next {
                let prev = *signs.entry(key(&c)).or_insert(c.scalar.sign);
                assert_eq!(prev, c.scalar.sign, "inconsistent signs for {c}");
                if seen.insert(key(&c)) {
                    queue.push_back(c);
                }
            }
        }
        best
    }

    fn random_word(pool: &[DiamondId], len: usize, rng: &mut ChaCha8Rng) -> FieldWord {
        FieldWord::from_letters(
            (0..len).map(|_| FieldLetter { o: pool[rng.gen_range(0..pool.len())], dag: rng.gen_bool(0.5) }).collect(),
        )
    }

    #[test]
    fn unitarity_cancels() {
        let p = circle8();
        let w = FieldWord::from_letters(vec![FieldLetter::phi(d(1)), FieldLetter::phi_dag(d(1))]);
        assert_eq!(normal_form(&w, &p), FieldWord::one());
    }

    #[test]
    fn disjoint_letters_anticommute() {
        let p = circle8();
        let (x, y) = disjoint_pair(&p);
        let w = FieldWord::from_letters(vec![FieldLetter::phi_dag(y), FieldLetter::phi(x)]);
        let nf = normal_form(&w, &p);
        assert_eq!(nf.letters, vec![FieldLetter::phi(x), FieldLetter::phi_dag(y)]);
        assert_eq!(nf.scalar, Scalar::MINUS_ONE);
        let same = FieldWord::from_letters(vec![FieldLetter::phi(y), FieldLetter::phi(x)]);
        assert_eq!(normal_form(&same, &p).scalar, Scalar::MINUS_ONE);
    }

    #[test]
    fn neutral_pair_commutes_with_disjoint_letter() {
        let p = circle8();
        let (o, a) = disjoint_pair(&p);
        let o1 = first_disjoint(&p, &[o, a]).unwrap();
        let pair = FieldWord::from_letters(vec![FieldLetter::phi_dag(o), FieldLetter::phi(a)]);
        let lhs = normal_form(&pair.mul(&FieldWord::letter(FieldLetter::phi(o1))), &p);
        let rhs = normal_form(&FieldWord::letter(FieldLetter::phi(o1)).mul(&pair), &p);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn comparable_letters_stay_put() {
        let p = circle8();
        let (b, a) = p.strict_inclusions()[0];
        let w = FieldWord::from_letters(vec![FieldLetter::phi(b), FieldLetter::phi(a)]);
        let v = FieldWord::from_letters(vec![FieldLetter::phi(a), FieldLetter::phi(b)]);
        assert_eq!(normal_form(&w, &p), w);
        assert_eq!(normal_form(&v, &p), v);
    }

    #[test]
    fn matches_exhaustive_oracle() {
        let p = circle8();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let pool: Vec<DiamondId> = vec![d(0), d(1), first_disjoint(&p, &[d(0)]).unwrap(), d(5), d(9)];
        for _ in 0..300 {
            let len = rng.gen_range(0..=7);
            let w = random_word(&pool, len, &mut rng);
            let nf = normal_form(&w, &p);
            let want = oracle(&w, &p);
            assert_eq!(nf.letters, want.letters, "{w}");
            assert_eq!(nf.scalar, want.scalar, "{w}");
        }
    }

    #[test]
    fn transporter_identities() {
        let p = circle8();
        let z = transporter(false);
        let zb = transporter(true);
        for (b, a) in p.comparable_pairs() {
            let back = normal_form(&z.value(a, b).unwrap().mul(&z.value(b, a).unwrap()), &p);
            assert_eq!(back, FieldWord::one());
        }
        assert!(z.cocycle_failures(&p, 0.0).unwrap().is_empty());
        assert!(zb.cocycle_failures(&p, 0.0).unwrap().is_empty());
        let around: Vec<DiamondId> = {
            let c = crate::homotopy::base_cycles(p.base());
            crate::homotopy::approximate_curve(&p, &c[0].curve, true).unwrap().vertices()
        };
        let l = PosetPath::through(&around).unwrap();
        assert_eq!(z.evaluate(&l, &p).unwrap(), FieldWord::one());
        assert_eq!(zb.evaluate(&l, &p).unwrap(), FieldWord::one());
        assert_eq!(power(&z, 2).unwrap().evaluate(&l, &p).unwrap(), FieldWord::one());
        let q = shortest_path(&p, d(0), d(7)).unwrap();
        let telescoped = FieldWord::from_letters(vec![FieldLetter::phi_dag(d(7)), FieldLetter::phi(d(0))]);
        assert_eq!(z.evaluate(&q, &p).unwrap(), normal_form(&telescoped, &p));
    }

    #[test]
    fn powers() {
        let p = circle8();
        let z = transporter(false);
        assert_eq!(power(&z, 1).unwrap(), z);
        assert_eq!(power(&z, 0).unwrap_err(), Error::ZeroPower);
        let inv = power(&z, -1).unwrap();
        for (b, a) in p.comparable_pairs() {
            assert_eq!(
                normal_form(&inv.value(b, a).unwrap(), &p),
                normal_form(&transporter(true).value(b, a).unwrap(), &p)
            );
        }
        assert!(power(&z, 3).unwrap().cocycle_failures(&p, 0.0).unwrap().is_empty());
    }

    #[test]
    fn tensor_products() {
        let p = circle8();
        let (z, zb, iota) = (transporter(false), transporter(true), FieldCocycle::trivial());
        for (o, a) in p.comparable_pairs() {
            assert_eq!(tensor_product(&z, &zb, (o, a), None, &p).unwrap(), FieldWord::one());
            assert_eq!(tensor_product(&iota, &iota, (o, a), None, &p).unwrap(), FieldWord::one());
        }
        let (o, a) = p.strict_inclusions()[0];
        let zz = tensor_product(&z, &z, (o, a), None, &p).unwrap();
        assert!(!zz.is_scalar());
        let base = crate::poset::BaseComplex::new(vec![0, 1], vec![(0, 1)], vec![]).unwrap();
        let supports = vec![[0].into(), [0, 1].into()];
        let tight = CausalPoset::from_parts(base, supports, Some(vec![])).unwrap();
        assert_eq!(tensor_product(&z, &zb, (d(1), d(0)), None, &tight).unwrap_err(), Error::InsufficientDisjointness);
    }

    #[test]
    fn statistics() {
        let p = circle8();
        let mut defined = 0;
        for a in p.ids() {
            if first_disjoint(&p, &[a]).and_then(|o| first_disjoint(&p, &[o, a])).is_none()
                && p.ids().filter(|o| p.are_disjoint(*o, a)).all(|o| first_disjoint(&p, &[o, a]).is_none())
            {
                assert_eq!(statistics_phase(&transporter(false), a, &p).unwrap_err(), Error::InsufficientDisjointness);
                continue;
            }
            defined += 1;
            assert_eq!(statistics_phase(&transporter(false), a, &p).unwrap(), Scalar::MINUS_ONE);
            assert_eq!(statistics_phase(&transporter(true), a, &p).unwrap(), Scalar::MINUS_ONE);
            assert_eq!(statistics_phase(&FieldCocycle::trivial(), a, &p).unwrap(), Scalar::ONE);
            assert_eq!(statistics_phase(&power(&transporter(false), 2).unwrap(), a, &p).unwrap(), Scalar::ONE);
        }
        assert!(defined > p.len() / 2);
    }

    #[test]
    fn localized_endomorphisms() {
        let p = circle8();
        let z = transporter(false);
        let a = d(0);
        let o = first_disjoint(&p, &[a]).unwrap();
        let sub = p.ids().find(|x| *x != a && p.is_below(*x, a)).unwrap_or(a);
        let neutral = FieldWord::from_letters(vec![FieldLetter::phi(a), FieldLetter::phi_dag(sub)]);
        assert_eq!(localized_endomorphism(&z, o, &neutral, a, &p).unwrap(), normal_form(&neutral, &p));
        let e = first_disjoint(&p, &[a]).unwrap();
        let at_e = localized_endomorphism_via(&z, &PosetPath::trivial(e), &neutral, a, &p).unwrap();
        assert_eq!(at_e, normal_form(&neutral, &p));
        let stray = FieldWord::letter(FieldLetter::phi(o));
        assert_eq!(localized_endomorphism(&z, o, &stray, a, &p).unwrap_err(), Error::NotLocalized(a));
    }

    #[test]
    fn scalars() {
        assert_eq!(Scalar::phase(0.3).mul(Scalar::phase(-0.3)), Scalar::phase(0.0));
        assert_eq!(Scalar::MINUS_ONE.powi(2), Scalar::ONE);
        assert!((Scalar::phase(3.0).powi(3).to_complex() - phase(9.0)).norm() < 1e-12);
        assert_eq!(Scalar::from_complex(C64::new(-1.0, 0.0)), Scalar::MINUS_ONE);
    }

    proptest! {
        #[test]
        fn random_rewrites_preserve_normal_form(seed in any::<u64>(), len in 0usize..=12) {
            let p = circle8();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pool: Vec<DiamondId> = p.ids().collect();
            let w = random_word(&pool, len, &mut rng);
            let nf = normal_form(&w, &p);
            let moved = random_rewrites(&w, &p, 40, &mut rng);
            prop_assert_eq!(normal_form(&moved, &p), nf.clone());
            prop_assert_eq!(normal_form(&nf, &p), nf.clone());
            prop_assert!(is_locally_irreducible(&nf, &p));
            prop_assert_eq!(nf.charge(), w.charge());
        }

        #[test]
        fn adjoint_is_antihomomorphism(seed in any::<u64>(), l1 in 0usize..6, l2 in 0usize..6) {
            let p = circle8();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pool: Vec<DiamondId> = p.ids().collect();
            let v = random_word(&pool, l1, &mut rng);
            let w = random_word(&pool, l2, &mut rng);
            prop_assert_eq!(normal_form(&v.mul(&w).adjoint(), &p), normal_form(&w.adjoint().mul(&v.adjoint()), &p));
            prop_assert_eq!(v.mul(&w).charge(), v.charge() + w.charge());
        }
    }
}
