//! Poset paths, path approximation of base-complex curves, and presentations
//! of the fundamental group of the order complex.
//!
//! The presentation uses the comparability graph as 1-skeleton and chains
//! `o ⊊ a ⊊ c` as 2-cells. Generators are the non-tree comparability edges of
//! a BFS spanning tree rooted at the base diamond. Relators are reduced by
//! Tietze moves; when none survive, the group is free on the remaining
//! generators and reduced words decide homotopy completely.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{BaseComplex, CausalPoset, DiamondId, VertexId};
use crate::zlinalg::{integer_rank, SparseRow};

/// Elementary path `(target, source)` between comparable diamonds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Step {
    pub target: DiamondId,
    pub source: DiamondId,
}

impl Step {
    pub fn new(target: DiamondId, source: DiamondId) -> Self {
        Step { target, source }
    }

    pub fn reversed(self) -> Self {
        Step { target: self.source, source: self.target }
    }
}

/// Composable sequence of elementary steps, stored in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PosetPath {
    source: DiamondId,
    steps: Vec<Step>,
}

impl PosetPath {
    pub fn trivial(at: DiamondId) -> Self {
        PosetPath { source: at, steps: Vec::new() }
    }

    pub fn elementary(target: DiamondId, source: DiamondId) -> Self {
        PosetPath { source, steps: vec![Step::new(target, source)] }
    }

    /// Builds a path from traversal-ordered steps, checking adjacency.
    pub fn from_steps(source: DiamondId, steps: Vec<Step>) -> Result<Self> {
        let mut at = source;
        for s in &steps {
            if s.source != at {
                return Err(Error::NonComposable);
            }
            at = s.target;
        }
        Ok(PosetPath { source, steps })
    }

    /// Path visiting `diamonds` in order.
    pub fn through(diamonds: &[DiamondId]) -> Result<Self> {
        let first = *diamonds.first().ok_or(Error::NonComposable)?;
        let steps = diamonds.windows(2).map(|w| Step::new(w[1], w[0])).collect();
        Ok(PosetPath { source: first, steps })
    }

    pub fn source(&self) -> DiamondId {
        self.source
    }

    pub fn target(&self) -> DiamondId {
        self.steps.last().map_or(self.source, |s| s.target)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target()
    }

    /// Diamonds visited, starting with the source.
    pub fn vertices(&self) -> Vec<DiamondId> {
        std::iter::once(self.source).chain(self.steps.iter().map(|s| s.target)).collect()
    }

    /// `self * q`: first `q`, then `self`.
    pub fn after(&self, q: &PosetPath) -> Result<PosetPath> {
        if q.target() != self.source {
            return Err(Error::NonComposable);
        }
        let mut steps = q.steps.clone();
        steps.extend_from_slice(&self.steps);
        Ok(PosetPath { source: q.source, steps })
    }

    /// `self` followed by `next`, i.e. `next * self`.
    pub fn then(&self, next: &PosetPath) -> Result<PosetPath> {
        next.after(self)
    }

    pub fn reversed(&self) -> PosetPath {
        PosetPath { source: self.target(), steps: self.steps.iter().rev().map(|s| s.reversed()).collect() }
    }

    /// Checks that every step joins comparable diamonds of `p`.
    pub fn validate(&self, p: &CausalPoset) -> Result<()> {
        p.check(self.source)?;
        for s in &self.steps {
            p.check(s.target)?;
            p.check(s.source)?;
            if !p.are_comparable(s.target, s.source) {
                return Err(Error::InvalidPath(s.target, s.source));
            }
        }
        Ok(())
    }

    /// Inserts the backtrack `(a, o) * (o, a)` at position `at` (a diamond visited there).
    pub fn with_backtrack(&self, at: usize, via: DiamondId) -> PosetPath {
        let here = self.vertices()[at];
        let mut steps = self.steps.clone();
        steps.splice(at..at, [Step::new(via, here), Step::new(here, via)]);
        PosetPath { source: self.source, steps }
    }
}

/// `p * q`.
pub fn compose_paths(p: &PosetPath, q: &PosetPath) -> Result<PosetPath> {
    p.after(q)
}

pub fn reverse_path(p: &PosetPath) -> PosetPath {
    p.reversed()
}

/// Shortest path in the comparability graph, ties broken by ascending ids.
pub fn shortest_path(p: &CausalPoset, from: DiamondId, to: DiamondId) -> Result<PosetPath> {
    p.check(from)?;
    p.check(to)?;
    let mut parent: BTreeMap<DiamondId, DiamondId> = BTreeMap::new();
    let mut seen = BTreeSet::from([from]);
    let mut queue = VecDeque::from([from]);
    while let Some(o) = queue.pop_front() {
        if o == to {
            break;
        }
        for &a in p.comparable_with(o) {
            if seen.insert(a) {
                parent.insert(a, o);
                queue.push_back(a);
            }
        }
    }
    if !seen.contains(&to) {
        return Err(Error::NotPathwiseConnected);
    }
    let mut chain = vec![to];
    while let Some(prev) = parent.get(chain.last().unwrap()) {
        chain.push(*prev);
    }
    chain.reverse();
    PosetPath::through(&chain)
}

fn connect(p: &CausalPoset, from: DiamondId, to: DiamondId, shared: VertexId, steps: &mut Vec<Step>) -> Result<()> {
    if from == to {
        return Ok(());
    }
    if p.are_comparable(from, to) {
        steps.push(Step::new(to, from));
        return Ok(());
    }
    let key = |o: &DiamondId| (p.support(*o).len(), *o);
    let sub = p
        .ids()
        .filter(|s| p.support(*s).contains(&shared) && p.is_below(*s, from) && p.is_below(*s, to))
        .min_by_key(key);
    let mid = sub.or_else(|| p.ids().filter(|s| p.is_below(from, *s) && p.is_below(to, *s)).min_by_key(key));
    match mid {
        Some(m) => {
            steps.push(Step::new(m, from));
            steps.push(Step::new(to, m));
            Ok(())
        }
        None => Err(Error::CoverTooCoarse(format!("no diamond links {from} and {to} at vertex {shared}"))),
    }
}

/// Path approximation of a vertex curve in the base complex.
///
/// Each curve edge is covered by the smallest diamond containing it; consecutive
/// edge diamonds are linked through the smallest common sub-diamond containing
/// the shared vertex (or, failing that, a common super-diamond). Closed curves
/// yield loops at the diamond covering the first edge.
pub fn approximate_curve(p: &CausalPoset, curve: &[VertexId], closed: bool) -> Result<PosetPath> {
    let base = p.base();
    let mut pts: Vec<VertexId> = curve.to_vec();
    if pts.is_empty() {
        return Err(Error::InvalidCurve("empty curve".into()));
    }
    if let Some(v) = pts.iter().find(|v| !base.vertices().contains(v)) {
        return Err(Error::InvalidCurve(format!("vertex {v} not in base complex")));
    }
    if closed && pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let mut segs: Vec<(VertexId, VertexId)> = pts.windows(2).map(|w| (w[0], w[1])).collect();
    if closed && pts.len() > 1 {
        segs.push((pts[pts.len() - 1], pts[0]));
    }
    for &(u, v) in &segs {
        if !base.has_edge(u, v) {
            return Err(Error::InvalidCurve(format!("vertices {u} and {v} are not joined by an edge")));
        }
    }
    if segs.is_empty() {
        let o = p
            .smallest_containing(&[pts[0]])
            .ok_or_else(|| Error::CoverTooCoarse(format!("vertex {} lies in no diamond", pts[0])))?;
        return Ok(PosetPath::trivial(o));
    }
    let cover: Vec<DiamondId> = segs
        .iter()
        .map(|&(u, v)| {
            p.smallest_containing(&[u, v])
                .ok_or_else(|| Error::CoverTooCoarse(format!("no diamond contains edge ({u}, {v})")))
        })
        .collect::<Result<_>>()?;
    let mut steps = Vec::new();
    for k in 1..cover.len() {
        connect(p, cover[k - 1], cover[k], segs[k].0, &mut steps)?;
    }
    if closed {
        connect(p, cover[cover.len() - 1], cover[0], segs[0].0, &mut steps)?;
    }
    PosetPath::from_steps(cover[0], steps)
}

/// Letter of a group word: generator index and inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// Word in the generators of a group presentation.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn generator(gen: usize, exponent: i32) -> Self {
        let l = Letter { gen, inv: exponent < 0 };
        GroupWord(vec![l; exponent.unsigned_abs() as usize])
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v).reduced()
    }

    pub fn reduced(mut self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for l in self.0.drain(..) {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    pub fn cyclically_reduced(self) -> Self {
        let mut w = self.reduced().0;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
            w.pop();
            w.remove(0);
        }
        GroupWord(w)
    }

    /// Sum of exponents per generator.
    pub fn abelianized(&self) -> SparseRow {
        let mut row = SparseRow::new();
        for l in &self.0 {
            *row.entry(l.gen).or_insert(0) += if l.inv { -1 } else { 1 };
        }
        row.retain(|_, v| *v != 0);
        row
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.abelianized().get(&gen).copied().unwrap_or(0)
    }
}

/// Outcome of a homotopy test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Homotopy {
    True,
    False,
    Unknown,
}

/// Presentation of π₁ of the poset at a base diamond.
#[derive(Debug, Clone)]
pub struct Pi1Presentation {
    pub base: DiamondId,
    /// BFS parent of every non-base diamond.
    parent: BTreeMap<DiamondId, DiamondId>,
    /// Non-tree comparability edges `(b, a)` with `a ⊊ b`, oriented as the step `a → b`.
    pub generators: Vec<Step>,
    /// One relator per chain `o ⊊ a ⊊ c`, over `generators`.
    pub relators: Vec<GroupWord>,
    pub h1_rank: usize,
    free_generators: Vec<usize>,
    expansion: Vec<GroupWord>,
    residual: Vec<GroupWord>,
    gen_index: BTreeMap<Step, usize>,
}

struct Tietze {
    defs: Vec<Option<GroupWord>>,
}

impl Tietze {
    fn expand_gen(&mut self, g: usize) -> GroupWord {
        match self.defs[g].take() {
            None => GroupWord(vec![Letter { gen: g, inv: false }]),
            Some(def) => {
                let full = self.expand(&def);
                self.defs[g] = Some(full.clone());
                full
            }
        }
    }

    fn expand(&mut self, w: &GroupWord) -> GroupWord {
        let mut out = Vec::new();
        for l in &w.0 {
            if self.defs[l.gen].is_none() {
                out.push(*l);
            } else {
                let e = self.expand_gen(l.gen);
                if l.inv {
                    out.extend(e.inverse().0);
                } else {
                    out.extend(e.0);
                }
            }
        }
        GroupWord(out).reduced()
    }

    /// Eliminates one generator occurring exactly once in `r`, if any.
    fn eliminate(&mut self, r: &GroupWord) -> bool {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for l in &r.0 {
            *counts.entry(l.gen).or_insert(0) += 1;
        }
        let Some(g) = counts.iter().rev().find(|(_, c)| **c == 1).map(|(g, _)| *g) else {
            return false;
        };
        let pos = r.0.iter().position(|l| l.gen == g).unwrap();
        // rotate so that g leads: g^e · rest = 1
        let mut rot = r.0[pos..].to_vec();
        rot.extend_from_slice(&r.0[..pos]);
        let lead = rot.remove(0);
        let rest = GroupWord(rot);
        let def = if lead.inv { rest } else { rest.inverse() };
        self.defs[g] = Some(def.reduced());
        true
    }
}

impl Pi1Presentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Generators surviving Tietze reduction.
    pub fn free_generators(&self) -> &[usize] {
        &self.free_generators
    }

    /// Relators left after Tietze reduction; empty when π₁ is free.
    pub fn residual_relators(&self) -> &[GroupWord] {
        &self.residual
    }

    pub fn is_free(&self) -> bool {
        self.residual.is_empty()
    }

    /// Word of generator `g` in the surviving generators.
    pub fn expansion(&self, g: usize) -> &GroupWord {
        &self.expansion[g]
    }

    pub fn generator_of(&self, step: Step) -> Option<usize> {
        self.gen_index.get(&step).copied()
    }

    /// Letter read along one step; `None` for tree edges and trivial steps.
    pub fn step_letter(&self, step: Step) -> Option<Letter> {
        if let Some(g) = self.gen_index.get(&step) {
            return Some(Letter { gen: *g, inv: false });
        }
        self.gen_index.get(&step.reversed()).map(|g| Letter { gen: *g, inv: true })
    }

    /// Tree path from the base to `o`.
    pub fn tree_path(&self, o: DiamondId) -> PosetPath {
        let mut chain = vec![o];
        while let Some(prev) = self.parent.get(chain.last().unwrap()) {
            chain.push(*prev);
        }
        chain.reverse();
        PosetPath::through(&chain).expect("nonempty chain")
    }

    /// Tree-closed loop at the base running once through generator `g`.
    pub fn generator_loop(&self, g: usize) -> PosetPath {
        let step = self.generators[g];
        let to_a = self.tree_path(step.source);
        let back = self.tree_path(step.target).reversed();
        to_a.then(&PosetPath::elementary(step.target, step.source))
            .and_then(|q| q.then(&back))
            .expect("tree paths compose")
    }

    /// Word of a path in the original generators, freely reduced.
    pub fn raw_word(&self, p: &PosetPath) -> GroupWord {
        GroupWord(p.steps().iter().filter_map(|s| self.step_letter(*s)).collect()).reduced()
    }
}

/// Builds the π₁ presentation of the order complex of `p` at `base`.
pub fn pi1_presentation(p: &CausalPoset, base: DiamondId) -> Result<Pi1Presentation> {
    p.check(base)?;
    let mut parent = BTreeMap::new();
    let mut seen = BTreeSet::from([base]);
    let mut queue = VecDeque::from([base]);
    let mut tree: BTreeSet<(DiamondId, DiamondId)> = BTreeSet::new();
    while let Some(o) = queue.pop_front() {
        for &a in p.comparable_with(o) {
            if seen.insert(a) {
                parent.insert(a, o);
                tree.insert((o.min(a), o.max(a)));
                queue.push_back(a);
            }
        }
    }
    if seen.len() != p.len() {
        return Err(Error::NotPathwiseConnected);
    }
    let mut generators = Vec::new();
    let mut gen_index = BTreeMap::new();
    for (b, a) in p.strict_inclusions() {
        if !tree.contains(&(a.min(b), a.max(b))) {
            let s = Step::new(b, a);
            gen_index.insert(s, generators.len());
            generators.push(s);
        }
    }
    let letter = |s: Step| -> Option<Letter> {
        if let Some(g) = gen_index.get(&s) {
            return Some(Letter { gen: *g, inv: false });
        }
        gen_index.get(&s.reversed()).map(|g| Letter { gen: *g, inv: true })
    };
    let relators: Vec<GroupWord> = p
        .chains()
        .into_iter()
        .map(|(o, a, c)| {
            let steps = [Step::new(a, o), Step::new(c, a), Step::new(o, c)];
            GroupWord(steps.iter().filter_map(|s| letter(*s)).collect())
        })
        .collect();
    let rank = integer_rank(relators.iter().map(|r| r.abelianized()))?;
    let h1_rank = generators.len() - rank;

    let mut tz = Tietze { defs: vec![None; generators.len()] };
    let mut pending: Vec<GroupWord> = relators.clone();
    loop {
        let mut progress = false;
        let mut next = Vec::new();
        for r in &pending {
            let w = tz.expand(r).cyclically_reduced();
            if w.is_identity() {
                progress = true;
                continue;
            }
            if tz.eliminate(&w) {
                progress = true;
            } else {
                next.push(w);
            }
        }
        pending = next;
        if !progress {
            break;
        }
    }
    let free_generators: Vec<usize> = (0..generators.len()).filter(|g| tz.defs[*g].is_none()).collect();
    let expansion: Vec<GroupWord> = (0..generators.len()).map(|g| tz.expand_gen(g)).collect();
    Ok(Pi1Presentation {
        base,
        parent,
        generators,
        relators,
        h1_rank,
        free_generators,
        expansion,
        residual: pending,
        gen_index,
    })
}

/// Reduced word of a loop in the surviving generators.
pub fn loop_class(pres: &Pi1Presentation, p: &PosetPath) -> Result<GroupWord> {
    if !p.is_loop() {
        return Err(Error::NotALoop);
    }
    let mut out = Vec::new();
    for l in pres.raw_word(p).0 {
        let e = &pres.expansion[l.gen];
        if l.inv {
            out.extend(e.inverse().0);
        } else {
            out.extend(e.0.iter().copied());
        }
    }
    Ok(GroupWord(out).reduced())
}

/// Decides homotopy of two loops; conjugation to the base runs along tree paths.
pub fn are_homotopic(pres: &Pi1Presentation, p: &PosetPath, q: &PosetPath) -> Result<Homotopy> {
    let wp = loop_class(pres, p)?;
    let wq = loop_class(pres, q)?;
    Ok(if wp == wq {
        Homotopy::True
    } else if pres.is_free() {
        Homotopy::False
    } else {
        Homotopy::Unknown
    })
}

/// Fundamental cycle of the base complex for one non-tree edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCycle {
    pub edge: usize,
    /// Closed vertex curve based at the tree root: out along the tree to the
    /// edge, across it as declared, and back along the tree. The root is not repeated.
    pub curve: Vec<VertexId>,
}

impl BaseCycle {
    /// The cycle traversed `winding` times (reversed for negative windings).
    pub fn wound(&self, winding: i32) -> Vec<VertexId> {
        let mut once = self.curve.clone();
        if winding < 0 {
            once.reverse();
            once.rotate_right(1);
        }
        let mut out = Vec::new();
        for _ in 0..winding.unsigned_abs() {
            out.extend_from_slice(&once);
        }
        if out.is_empty() {
            out.push(self.curve[0]);
        }
        out
    }
}

/// Fundamental cycles of a BFS spanning tree rooted at the smallest vertex.
pub fn base_cycles(base: &BaseComplex) -> Vec<BaseCycle> {
    let root = *base.vertices().iter().next().expect("nonempty complex");
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    let mut tree = BTreeSet::new();
    while let Some(v) = queue.pop_front() {
        for w in base.neighbors(v) {
            if seen.insert(w) {
                parent.insert(w, v);
                tree.insert(base.oriented_edge(v, w).unwrap().0);
                queue.push_back(w);
            }
        }
    }
    let to_root = |v: VertexId| {
        let mut chain = vec![v];
        while let Some(p) = parent.get(chain.last().unwrap()) {
            chain.push(*p);
        }
        chain
    };
    (0..base.edges().len())
        .filter(|k| !tree.contains(k))
        .map(|k| {
            let (u, v) = base.edges()[k];
            let up_v = to_root(v);
            let up_u = to_root(u);
            let mut curve: Vec<VertexId> = up_u.iter().rev().copied().collect();
            curve.extend(up_v.iter().take(up_v.len() - 1));
            BaseCycle { edge: k, curve }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_net, NetKind};

    fn d(k: usize) -> DiamondId {
        DiamondId(k)
    }

    #[test]
    fn compose_and_reverse() {
        let (a, o, at) = (d(1), d(0), d(2));
        let p = PosetPath::elementary(a, o);
        let q = PosetPath::elementary(o, at);
        let pq = compose_paths(&p, &q).unwrap();
        assert_eq!(pq.source(), at);
        assert_eq!(pq.target(), a);
        assert_eq!(pq.steps(), &[Step::new(o, at), Step::new(a, o)]);
        let rev = reverse_path(&pq);
        assert_eq!(rev.steps(), &[Step::new(o, a), Step::new(at, o)]);
        assert_eq!(reverse_path(&rev), pq);
        assert_eq!(compose_paths(&p, &PosetPath::trivial(o)).unwrap(), p);
        assert_eq!(compose_paths(&p, &PosetPath::trivial(a)).unwrap_err(), Error::NonComposable);
    }

    #[test]
    fn h1_ranks_of_fixtures() {
        for (kind, rank) in [(NetKind::Line(5), 0), (NetKind::Circle(6), 1), (NetKind::Wedge(6, 6), 2)] {
            let p = build_net(kind).unwrap();
            let pres = pi1_presentation(&p, d(0)).unwrap();
            assert_eq!(pres.h1_rank, rank, "{kind}");
            assert!(pres.is_free(), "{kind}: residual {:?}", pres.residual_relators().len());
            assert_eq!(pres.free_generators().len(), rank);
            let edges = p.strict_inclusions().len();
            assert_eq!(pres.generator_count(), edges - (p.len() - 1));
        }
    }

    #[test]
    fn circle_winding_words() {
        let p = build_net(NetKind::Circle(6)).unwrap();
        let pres = pi1_presentation(&p, d(0)).unwrap();
        let w1 = approximate_curve(&p, &[0, 1, 2, 3, 4, 5, 0], true).unwrap();
        assert!(w1.is_loop());
        let c1 = loop_class(&pres, &w1).unwrap();
        assert_eq!(c1.letters().len(), 1);
        let g = c1.letters()[0];
        let two: Vec<usize> = (0..12).map(|k| k % 6).collect();
        let w2 = approximate_curve(&p, &two, true).unwrap();
        assert_eq!(loop_class(&pres, &w2).unwrap(), GroupWord(vec![g, g]));
        assert_eq!(are_homotopic(&pres, &w1, &w2).unwrap(), Homotopy::False);
        let t = PosetPath::trivial(d(0));
        assert!(loop_class(&pres, &t).unwrap().is_identity());
        assert_eq!(are_homotopic(&pres, &t, &t).unwrap(), Homotopy::True);
    }

    #[test]
    fn constant_and_open_curves() {
        let p = build_net(NetKind::Circle(6)).unwrap();
        let c = approximate_curve(&p, &[0], true).unwrap();
        assert!(c.is_empty());
        let line = build_net(NetKind::Line(5)).unwrap();
        let path = approximate_curve(&line, &[0, 1, 2, 3, 4], false).unwrap();
        path.validate(&line).unwrap();
        assert!(line.support(path.source()).contains(&0));
        assert!(line.support(path.target()).contains(&4));
        assert!(approximate_curve(&line, &[0, 2], false).is_err());
    }

    #[test]
    fn wedge_is_non_abelian() {
        let p = build_net(NetKind::Wedge(6, 6)).unwrap();
        let pres = pi1_presentation(&p, d(0)).unwrap();
        let cycles = base_cycles(p.base());
        assert_eq!(cycles.len(), 2);
        let mut one_two = cycles[0].curve.clone();
        one_two.extend(cycles[1].curve.iter());
        let mut two_one = cycles[1].curve.clone();
        two_one.extend(cycles[0].curve.iter());
        let a = approximate_curve(&p, &one_two, true).unwrap();
        let b = approximate_curve(&p, &two_one, true).unwrap();
        assert_eq!(are_homotopic(&pres, &a, &b).unwrap(), Homotopy::False);
        let wa = loop_class(&pres, &a).unwrap();
        let wb = loop_class(&pres, &b).unwrap();
        assert_eq!(wa.abelianized(), wb.abelianized());
    }

    #[test]
    fn backtracks_do_not_change_class() {
        let p = build_net(NetKind::Circle(6)).unwrap();
        let pres = pi1_presentation(&p, d(0)).unwrap();
        let w1 = approximate_curve(&p, &[0, 1, 2, 3, 4, 5], true).unwrap();
        let base_word = loop_class(&pres, &w1).unwrap();
        for at in 0..=w1.len() {
            let here = w1.vertices()[at];
            for &via in p.comparable_with(here) {
                let q = w1.with_backtrack(at, via);
                q.validate(&p).unwrap();
                assert_eq!(loop_class(&pres, &q).unwrap(), base_word);
            }
        }
    }

    #[test]
    fn base_cycles_of_circle() {
        let p = build_net(NetKind::Circle(6)).unwrap();
        let cycles = base_cycles(p.base());
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].curve, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(cycles[0].wound(-1), vec![0, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn non_loop_rejected() {
        let p = build_net(NetKind::Circle(6)).unwrap();
        let pres = pi1_presentation(&p, d(0)).unwrap();
        let open = shortest_path(&p, d(0), d(3)).unwrap();
        assert_eq!(loop_class(&pres, &open).unwrap_err(), Error::NotALoop);
    }
}
