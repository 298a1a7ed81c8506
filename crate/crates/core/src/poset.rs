//! Finite causal diamond posets over a base cell complex.
//!
//! A diamond is given extensionally by its vertex support; inclusion of
//! diamonds is inclusion of supports. Causal disjointness is either supplied
//! explicitly or derived from the buffer rule: supports are disjoint and no
//! base edge joins them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zlinalg::{integer_rank, SparseRow};

pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiamondId(pub usize);

impl fmt::Display for DiamondId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

/// Discretized Cauchy surface: vertices, oriented edges and optional triangular 2-cells.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseComplex {
    vertices: BTreeSet<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    faces: Vec<[usize; 3]>,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
    edge_lookup: BTreeMap<(VertexId, VertexId), usize>,
}

impl BaseComplex {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: Vec<(VertexId, VertexId)>,
        faces: Vec<[usize; 3]>,
    ) -> Result<Self> {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::InvalidComplex("no vertices".into()));
        }
        let mut adjacency: BTreeMap<VertexId, BTreeSet<VertexId>> =
            vertices.iter().map(|v| (*v, BTreeSet::new())).collect();
        let mut edge_lookup = BTreeMap::new();
        for (k, &(u, v)) in edges.iter().enumerate() {
            if !vertices.contains(&u) || !vertices.contains(&v) {
                return Err(Error::InvalidComplex(format!("edge {k} has an undeclared endpoint")));
            }
            if u == v {
                return Err(Error::InvalidComplex(format!("edge {k} is a self-loop")));
            }
            let key = (u.min(v), u.max(v));
            if edge_lookup.insert(key, k).is_some() {
                return Err(Error::InvalidComplex(format!("edge {k} duplicates another edge")));
            }
            adjacency.get_mut(&u).unwrap().insert(v);
            adjacency.get_mut(&v).unwrap().insert(u);
        }
        let complex = BaseComplex { vertices, edges, faces, adjacency, edge_lookup };
        for f in 0..complex.faces.len() {
            complex.face_boundary(f)?;
        }
        if !complex.is_connected(&complex.vertices) {
            return Err(Error::InvalidComplex("complex is not connected".into()));
        }
        Ok(complex)
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.get(&v).into_iter().flatten().copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_lookup.contains_key(&(u.min(v), u.max(v)))
    }

    /// Index of the edge joining `u` and `v`, with `+1` when it is declared as `(u, v)`.
    pub fn oriented_edge(&self, u: VertexId, v: VertexId) -> Option<(usize, i64)> {
        let k = *self.edge_lookup.get(&(u.min(v), u.max(v)))?;
        Some((k, if self.edges[k] == (u, v) { 1 } else { -1 }))
    }

    /// Oriented boundary of a face as `(edge, ±1)` around a closed cycle.
    pub fn face_boundary(&self, face: usize) -> Result<Vec<(usize, i64)>> {
        let bad = || Error::InvalidComplex(format!("face {face} boundary is not a closed edge cycle"));
        let f = self.faces.get(face).ok_or_else(bad)?;
        if f.iter().any(|e| *e >= self.edges.len()) {
            return Err(bad());
        }
        let (a, b) = self.edges[f[0]];
        let mut out = vec![(f[0], 1)];
        let mut at = b;
        let mut remaining = vec![f[1], f[2]];
        while let Some(pos) = remaining.iter().position(|e| {
            let (u, v) = self.edges[*e];
            u == at || v == at
        }) {
            let e = remaining.remove(pos);
            let (u, v) = self.edges[e];
            if u == at {
                out.push((e, 1));
                at = v;
            } else {
                out.push((e, -1));
                at = u;
            }
        }
        if !remaining.is_empty() || at != a || f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return Err(bad());
        }
        Ok(out)
    }

    pub fn is_connected(&self, subset: &BTreeSet<VertexId>) -> bool {
        let Some(start) = subset.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([*start]);
        let mut queue = VecDeque::from([*start]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if subset.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == subset.len()
    }

    pub fn induced_edges(&self, subset: &BTreeSet<VertexId>) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|k| {
                let (u, v) = self.edges[*k];
                subset.contains(&u) && subset.contains(&v)
            })
            .collect()
    }

    /// Connected with vanishing rational first homology of the induced subcomplex.
    pub fn is_contractible(&self, subset: &BTreeSet<VertexId>) -> bool {
        if !self.is_connected(subset) {
            return false;
        }
        let edges = self.induced_edges(subset);
        let cycles = edges.len() + 1 - subset.len();
        if cycles == 0 {
            return true;
        }
        let inside: BTreeSet<usize> = edges.into_iter().collect();
        let rows = (0..self.faces.len()).filter(|f| self.faces[*f].iter().all(|e| inside.contains(e))).map(|f| {
            self.face_boundary(f).expect("faces validated at construction").into_iter().collect::<SparseRow>()
        });
        integer_rank(rows).map(|r| r == cycles).unwrap_or(false)
    }

    pub fn are_separated(&self, x: &BTreeSet<VertexId>, y: &BTreeSet<VertexId>) -> bool {
        x.is_disjoint(y) && x.iter().all(|u| self.neighbors(*u).all(|w| !y.contains(&w)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diamond {
    pub id: DiamondId,
    pub support: BTreeSet<VertexId>,
}

/// Fixture families on graph Cauchy surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetKind {
    Line(usize),
    Circle(usize),
    Wedge(usize, usize),
}

impl fmt::Display for NetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetKind::Line(n) => write!(f, "line:{n}"),
            NetKind::Circle(n) => write!(f, "circle:{n}"),
            NetKind::Wedge(a, b) => write!(f, "wedge:{a},{b}"),
        }
    }
}

impl std::str::FromStr for NetKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (kind, params) = s.split_once(':').ok_or_else(|| format!("expected kind:params, got {s:?}"))?;
        let nums: Vec<usize> = params
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| format!("bad size {p:?}: {e}")))
            .collect::<std::result::Result<_, _>>()?;
        match (kind, nums.as_slice()) {
            ("line", [n]) => Ok(NetKind::Line(*n)),
            ("circle", [n]) => Ok(NetKind::Circle(*n)),
            ("wedge", [a, b]) => Ok(NetKind::Wedge(*a, *b)),
            _ => Err(format!("unknown net {s:?} (expected line:N, circle:N or wedge:N1,N2)")),
        }
    }
}

/// One violated axiom with the diamonds (or vertices) witnessing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub message: String,
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: &str, message: String, witnesses: Vec<usize>) {
        self.violations.push(Violation { axiom: axiom.into(), message, witnesses });
    }

    pub fn contains(&self, needle: &str) -> bool {
        self.violations.iter().any(|v| v.message.contains(needle) || v.axiom == needle)
    }
}

/// Immutable poset of diamonds ordered by support inclusion, with causal disjointness.
#[derive(Debug, Clone)]
pub struct CausalPoset {
    base: BaseComplex,
    diamonds: Vec<Diamond>,
    /// `below[i][j]` iff support(i) ⊆ support(j)
    below: Vec<Vec<bool>>,
    disjoint: Vec<BTreeSet<DiamondId>>,
    comparable: Vec<Vec<DiamondId>>,
}

impl CausalPoset {
    /// Assembles a poset from explicit supports. Diamond ids are positions in
    /// `supports`. When `disjoint` is `None` the buffer rule is applied.
    /// Axioms are not enforced here; see [`validate_net`].
    pub fn from_parts(
        base: BaseComplex,
        supports: Vec<BTreeSet<VertexId>>,
        disjoint: Option<Vec<(usize, usize)>>,
    ) -> Result<Self> {
        let n = supports.len();
        if n == 0 {
            return Err(Error::InvalidCover("no diamonds".into()));
        }
        for (k, s) in supports.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidCover(format!("diamond {k} has empty support")));
            }
            if let Some(v) = s.iter().find(|v| !base.vertices().contains(v)) {
                return Err(Error::InvalidCover(format!("diamond {k} uses undeclared vertex {v}")));
            }
        }
        let below: Vec<Vec<bool>> =
            supports.iter().map(|a| supports.iter().map(|b| a.is_subset(b)).collect()).collect();
        let mut dis = vec![BTreeSet::new(); n];
        match disjoint {
            Some(pairs) => {
                for (i, j) in pairs {
                    if i >= n || j >= n {
                        return Err(Error::InvalidCover(format!("disjoint pair ({i}, {j}) out of range")));
                    }
                    dis[i].insert(DiamondId(j));
                    dis[j].insert(DiamondId(i));
                }
            }
            None => {
                for i in 0..n {
                    for j in 0..n {
                        if i != j && base.are_separated(&supports[i], &supports[j]) {
                            dis[i].insert(DiamondId(j));
                        }
                    }
                }
            }
        }
        let comparable = (0..n)
            .map(|i| (0..n).filter(|j| *j != i && (below[i][*j] || below[*j][i])).map(DiamondId).collect())
            .collect();
        let diamonds =
            supports.into_iter().enumerate().map(|(k, support)| Diamond { id: DiamondId(k), support }).collect();
        Ok(CausalPoset { base, diamonds, below, disjoint: dis, comparable })
    }

    pub fn base(&self) -> &BaseComplex {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.diamonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diamonds.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = DiamondId> + '_ {
        (0..self.diamonds.len()).map(DiamondId)
    }

    pub fn diamonds(&self) -> &[Diamond] {
        &self.diamonds
    }

    pub fn contains(&self, o: DiamondId) -> bool {
        o.0 < self.diamonds.len()
    }

    pub fn check(&self, o: DiamondId) -> Result<()> {
        if self.contains(o) {
            Ok(())
        } else {
            Err(Error::NoSuchDiamond(o))
        }
    }

    pub fn support(&self, o: DiamondId) -> &BTreeSet<VertexId> {
        &self.diamonds[o.0].support
    }

    /// `a ⊆ b`.
    pub fn is_below(&self, a: DiamondId, b: DiamondId) -> bool {
        self.below[a.0][b.0]
    }

    pub fn are_comparable(&self, a: DiamondId, b: DiamondId) -> bool {
        self.below[a.0][b.0] || self.below[b.0][a.0]
    }

    pub fn are_disjoint(&self, a: DiamondId, b: DiamondId) -> bool {
        self.disjoint[a.0].contains(&b)
    }

    /// Diamonds comparable with `o`, other than `o`, in ascending id order.
    pub fn comparable_with(&self, o: DiamondId) -> &[DiamondId] {
        &self.comparable[o.0]
    }

    /// Ordered pairs `(b, a)` with `a ⊊ b`.
    pub fn strict_inclusions(&self) -> Vec<(DiamondId, DiamondId)> {
        let mut out = Vec::new();
        for b in self.ids() {
            for a in self.ids() {
                if a != b && self.is_below(a, b) {
                    out.push((b, a));
                }
            }
        }
        out
    }

    /// All ordered comparable pairs `(b, a)`, including `(o, o)`.
    pub fn comparable_pairs(&self) -> Vec<(DiamondId, DiamondId)> {
        let mut out = Vec::new();
        for b in self.ids() {
            for a in self.ids() {
                if self.are_comparable(a, b) {
                    out.push((b, a));
                }
            }
        }
        out
    }

    /// Chains `(o, a, c)` with `o ⊊ a ⊊ c`.
    pub fn chains(&self) -> Vec<(DiamondId, DiamondId, DiamondId)> {
        let mut out = Vec::new();
        for a in self.ids() {
            for &o in self.comparable_with(a) {
                if !self.is_below(o, a) {
                    continue;
                }
                for &c in self.comparable_with(a) {
                    if self.is_below(a, c) {
                        out.push((o, a, c));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Smallest diamond (by support size, then id) containing every given vertex.
    pub fn smallest_containing(&self, vertices: &[VertexId]) -> Option<DiamondId> {
        self.ids()
            .filter(|o| vertices.iter().all(|v| self.support(*o).contains(v)))
            .min_by_key(|o| (self.support(*o).len(), *o))
    }

    /// Whether the subposet on `subset` is connected through comparability.
    pub fn is_pathwise_connected(&self, subset: &BTreeSet<DiamondId>) -> bool {
        let Some(start) = subset.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([*start]);
        let mut queue = VecDeque::from([*start]);
        while let Some(o) = queue.pop_front() {
            for &a in self.comparable_with(o) {
                if subset.contains(&a) && seen.insert(a) {
                    queue.push_back(a);
                }
            }
        }
        seen.len() == subset.len()
    }
}

/// Candidate supports for fixtures: connected proper vertex subsets inducing a
/// tree, pruned until every survivor has a nonempty causal complement.
fn fixture_supports(base: &BaseComplex) -> Vec<BTreeSet<VertexId>> {
    let all = base.vertices().clone();
    let mut found: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    let mut frontier: Vec<BTreeSet<VertexId>> = all.iter().map(|v| BTreeSet::from([*v])).collect();
    while let Some(s) = frontier.pop() {
        if s.len() == all.len() || base.induced_edges(&s).len() + 1 != s.len() {
            continue;
        }
        if !found.insert(s.iter().copied().collect()) {
            continue;
        }
        for v in &s {
            for w in base.neighbors(*v) {
                if !s.contains(&w) {
                    let mut t = s.clone();
                    t.insert(w);
                    frontier.push(t);
                }
            }
        }
    }
    let mut supports: Vec<BTreeSet<VertexId>> = found.into_iter().map(|v| v.into_iter().collect()).collect();
    loop {
        let keep: Vec<bool> = supports.iter().map(|s| supports.iter().any(|t| base.are_separated(s, t))).collect();
        if keep.iter().all(|k| *k) {
            break;
        }
        supports = supports.into_iter().zip(keep).filter(|(_, k)| *k).map(|(s, _)| s).collect();
    }
    supports.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    supports
}

fn cycle_edges(start: VertexId, len: usize) -> Vec<(VertexId, VertexId)> {
    (0..len).map(|k| (start + k, start + (k + 1) % len)).collect()
}

/// Generates a fixture net on a line, a circle or a wedge of two circles.
pub fn build_net(kind: NetKind) -> Result<CausalPoset> {
    let base = match kind {
        NetKind::Line(n) => {
            if n < 3 {
                return Err(Error::FixtureTooSmall);
            }
            BaseComplex::new(0..n, (0..n - 1).map(|k| (k, k + 1)).collect(), vec![])?
        }
        NetKind::Circle(n) => {
            if n < 6 {
                return Err(Error::FixtureTooSmall);
            }
            BaseComplex::new(0..n, cycle_edges(0, n), vec![])?
        }
        NetKind::Wedge(n1, n2) => {
            if n1 < 6 || n2 < 6 {
                return Err(Error::FixtureTooSmall);
            }
            // vertex 0 is shared; first circle 0..n1, second circle 0, n1..n1+n2-1
            let mut edges = cycle_edges(0, n1);
            let second: Vec<VertexId> = std::iter::once(0).chain(n1..n1 + n2 - 1).collect();
            for k in 0..n2 {
                edges.push((second[k], second[(k + 1) % n2]));
            }
            BaseComplex::new(0..n1 + n2 - 1, edges, vec![])?
        }
    };
    let supports = fixture_supports(&base);
    CausalPoset::from_parts(base, supports, None)
}

/// `{a : a ⊥ o}`.
pub fn causal_complement(p: &CausalPoset, o: DiamondId) -> Result<BTreeSet<DiamondId>> {
    p.check(o)?;
    Ok(p.disjoint[o.0].clone())
}

/// Checks the net axioms and reports every violation with its witnesses.
pub fn validate_net(p: &CausalPoset) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            if p.diamonds[i].support == p.diamonds[j].support {
                report.push(
                    "partial order",
                    format!("antisymmetry fails: o{i} and o{j} have equal supports"),
                    vec![i, j],
                );
            }
        }
    }
    for o in p.ids() {
        if !p.base.is_contractible(p.support(o)) {
            report.push("diamond", format!("support of {o} is not contractible"), vec![o.0]);
        }
    }
    for o in p.ids() {
        if p.are_disjoint(o, o) {
            report.push("causality", format!("disjointness is reflexive at {o}"), vec![o.0]);
        }
        for &a in &p.disjoint[o.0] {
            if !p.are_disjoint(a, o) {
                report.push("causality", format!("disjointness not symmetric at ({o}, {a})"), vec![o.0, a.0]);
            }
            if o < a && p.are_comparable(o, a) {
                report.push(
                    "causality",
                    format!("disjointness/comparability conflict between {o} and {a}"),
                    vec![o.0, a.0],
                );
            }
        }
    }
    for o in p.ids() {
        for &a in &p.disjoint[o.0] {
            for &sub in p.comparable_with(o) {
                if p.is_below(sub, o) && !p.are_disjoint(sub, a) {
                    report.push(
                        "heredity",
                        format!("disjointness not hereditary: {sub} ⊆ {o} ⊥ {a} but {sub} not ⊥ {a}"),
                        vec![sub.0, o.0, a.0],
                    );
                }
            }
        }
    }
    for o in p.ids() {
        let comp = &p.disjoint[o.0];
        if comp.is_empty() {
            report.push("causal complement", format!("empty causal complement at {o}"), vec![o.0]);
        } else if !p.is_pathwise_connected(comp) {
            report.push("causal complement", format!("causal complement not pathwise connected at {o}"), vec![o.0]);
        }
    }
    for v in p.base.vertices() {
        if !p.diamonds.iter().any(|d| d.support.contains(v)) {
            report.push("base", format!("vertex {v} lies in no diamond"), vec![*v]);
        }
    }
    if !p.is_pathwise_connected(&p.ids().collect()) {
        report.push("connectedness", "poset not pathwise connected".into(), vec![]);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_intervals(n: usize) -> Vec<BTreeSet<usize>> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                out.push((i..=j).collect::<BTreeSet<_>>());
            }
        }
        out
    }

    fn brute_force_arcs(n: usize, max_len: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for start in 0..n {
            for len in 1..=max_len {
                let mut v: Vec<usize> = (0..len).map(|k| (start + k) % n).collect();
                v.sort();
                out.insert(v);
            }
        }
        out
    }

    fn separated(n: usize, circle: bool, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
        let adj = |u: usize, v: usize| {
            let d = u.abs_diff(v);
            d == 1 || (circle && d == n - 1)
        };
        a.is_disjoint(b) && a.iter().all(|u| b.iter().all(|v| !adj(*u, *v)))
    }

    #[test]
    fn line_keeps_intervals_with_nonempty_complement() {
        let p = build_net(NetKind::Line(5)).unwrap();
        let all = brute_force_intervals(5);
        let expected: BTreeSet<Vec<usize>> = all
            .iter()
            .filter(|a| a.len() < 5 && all.iter().any(|b| b.len() < 5 && separated(5, false, a, b)))
            .map(|a| a.iter().copied().collect())
            .collect();
        let got: BTreeSet<Vec<usize>> = p.diamonds().iter().map(|d| d.support.iter().copied().collect()).collect();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 11);
    }

    #[test]
    fn circle_six_has_arcs_up_to_three() {
        let p = build_net(NetKind::Circle(6)).unwrap();
        let got: BTreeSet<Vec<usize>> = p.diamonds().iter().map(|d| d.support.iter().copied().collect()).collect();
        // the 24 arcs of 1..4 vertices minus the 4-arcs, whose complement is empty
        let candidates = brute_force_arcs(6, 4);
        assert_eq!(candidates.len(), 24);
        assert_eq!(got, brute_force_arcs(6, 3));
        assert_eq!(got.len(), 18);
    }

    #[test]
    fn too_small_fixtures_rejected() {
        assert_eq!(build_net(NetKind::Circle(4)).unwrap_err(), Error::FixtureTooSmall);
        assert_eq!(build_net(NetKind::Line(2)).unwrap_err(), Error::FixtureTooSmall);
        assert_eq!(build_net(NetKind::Wedge(6, 5)).unwrap_err(), Error::FixtureTooSmall);
    }

    #[test]
    fn circle_validates_clean() {
        for n in [6, 7, 8] {
            let p = build_net(NetKind::Circle(n)).unwrap();
            let r = validate_net(&p);
            assert!(r.is_empty(), "{r:?}");
        }
    }

    #[test]
    fn line_reports_split_complements_only() {
        let p = build_net(NetKind::Line(5)).unwrap();
        let r = validate_net(&p);
        assert!(r
            .violations
            .iter()
            .all(|v| v.axiom == "causal complement" && v.message.contains("not pathwise connected")));
    }

    #[test]
    fn complement_matches_brute_force() {
        let p = build_net(NetKind::Circle(6)).unwrap();
        for o in p.ids() {
            let expected: BTreeSet<DiamondId> =
                p.ids().filter(|a| separated(6, true, p.support(o), p.support(*a))).collect();
            assert_eq!(causal_complement(&p, o).unwrap(), expected);
        }
        let v0 = p.smallest_containing(&[0]).unwrap();
        let arc = p.ids().find(|a| p.support(*a) == &BTreeSet::from([2, 3, 4])).unwrap();
        assert!(causal_complement(&p, v0).unwrap().contains(&arc));
    }

    #[test]
    fn line_leftmost_complement() {
        let p = build_net(NetKind::Line(5)).unwrap();
        let v0 = p.ids().find(|o| p.support(*o) == &BTreeSet::from([0])).unwrap();
        let expected: BTreeSet<DiamondId> =
            p.ids().filter(|a| !p.support(*a).contains(&0) && !p.support(*a).contains(&1)).collect();
        assert_eq!(causal_complement(&p, v0).unwrap(), expected);
    }

    #[test]
    fn unknown_diamond() {
        let p = build_net(NetKind::Circle(6)).unwrap();
        assert_eq!(causal_complement(&p, DiamondId(999)).unwrap_err(), Error::NoSuchDiamond(DiamondId(999)));
    }

    #[test]
    fn injected_conflict_and_empty_complement() {
        let base = BaseComplex::new(0..6, cycle_edges(0, 6), vec![]).unwrap();
        let supports = vec![BTreeSet::from([0]), BTreeSet::from([0, 1]), BTreeSet::from([3])];
        let p = CausalPoset::from_parts(base, supports, Some(vec![(0, 1), (0, 2)])).unwrap();
        let r = validate_net(&p);
        assert!(r.contains("disjointness/comparability conflict"));
        assert!(r.contains("empty causal complement at o2") || r.contains("not hereditary"));
        let base = BaseComplex::new(0..6, cycle_edges(0, 6), vec![]).unwrap();
        let supports = vec![BTreeSet::from([0]), BTreeSet::from([0, 1])];
        let p = CausalPoset::from_parts(base, supports, Some(vec![])).unwrap();
        assert!(validate_net(&p).contains("empty causal complement at o0"));
    }

    #[test]
    fn heredity_and_exclusion_on_fixtures() {
        for kind in [NetKind::Line(5), NetKind::Circle(6), NetKind::Wedge(6, 6)] {
            let p = build_net(kind).unwrap();
            for o in p.ids() {
                let comp = causal_complement(&p, o).unwrap();
                for a in &comp {
                    assert!(!p.are_comparable(o, *a));
                    for sub in p.ids().filter(|s| p.is_below(*s, o)) {
                        assert!(p.are_disjoint(sub, *a));
                    }
                }
            }
        }
    }

    #[test]
    fn faces_are_checked() {
        let ok = BaseComplex::new(0..3, vec![(0, 1), (1, 2), (2, 0)], vec![[0, 1, 2]]).unwrap();
        assert!(ok.is_contractible(&BTreeSet::from([0, 1, 2])));
        let bad = BaseComplex::new(0..4, vec![(0, 1), (1, 2), (2, 3)], vec![[0, 1, 2]]);
        assert!(bad.is_err());
        let cyc = BaseComplex::new(0..3, vec![(0, 1), (1, 2), (2, 0)], vec![]).unwrap();
        assert!(!cyc.is_contractible(&BTreeSet::from([0, 1, 2])));
    }

    #[test]
    fn parse_net_kinds() {
        assert_eq!("circle:6".parse::<NetKind>().unwrap(), NetKind::Circle(6));
        assert_eq!("wedge:6,7".parse::<NetKind>().unwrap(), NetKind::Wedge(6, 7));
        assert!("torus:3".parse::<NetKind>().is_err());
    }
}
