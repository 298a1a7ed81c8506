//! JSON formats for complexes, covers, curves, potentials, gauges, cocycles and words.

use std::collections::{BTreeMap, BTreeSet};

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::cocycle::{UnitaryCocycle, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::fieldalg::{FieldLetter, FieldWord, Scalar};
use crate::flatpot::FlatPotential;
use crate::linalg::{c, CMatrix};
use crate::poset::{BaseComplex, CausalPoset, DiamondId, VertexId};

fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default)]
    pub faces: Vec<[usize; 3]>,
}

impl ComplexJson {
    pub fn from_base(base: &BaseComplex) -> Self {
        ComplexJson {
            vertices: base.vertices().iter().copied().collect(),
            edges: base.edges().iter().map(|(u, v)| [*u, *v]).collect(),
            faces: base.faces().to_vec(),
        }
    }

    pub fn build(&self) -> Result<BaseComplex> {
        BaseComplex::new(self.vertices.clone(), self.edges.iter().map(|e| (e[0], e[1])).collect(), self.faces.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiamondJson {
    pub id: usize,
    pub support: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverJson {
    pub diamonds: Vec<DiamondJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disjoint: Option<Vec<[usize; 2]>>,
}

impl CoverJson {
    pub fn from_poset(p: &CausalPoset) -> Self {
        let diamonds = p
            .diamonds()
            .iter()
            .map(|d| DiamondJson { id: d.id.0, support: d.support.iter().copied().collect() })
            .collect();
        let mut pairs = Vec::new();
        for a in p.ids() {
            for b in p.ids() {
                if a < b && p.are_disjoint(a, b) {
                    pairs.push([a.0, b.0]);
                }
            }
        }
        CoverJson { diamonds, disjoint: Some(pairs) }
    }

    pub fn build(&self, base: BaseComplex) -> Result<CausalPoset> {
        for (k, d) in self.diamonds.iter().enumerate() {
            if d.id != k {
                return Err(Error::InvalidCover(format!("diamonds[{k}].id is {}, expected {k}", d.id)));
            }
        }
        let supports: Vec<BTreeSet<VertexId>> =
            self.diamonds.iter().map(|d| d.support.iter().copied().collect()).collect();
        let disjoint = self.disjoint.as_ref().map(|v| v.iter().map(|p| (p[0], p[1])).collect());
        CausalPoset::from_parts(base, supports, disjoint)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub curve: Vec<VertexId>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightJson {
    pub edge: [VertexId; 2],
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialJson {
    pub weights: Vec<WeightJson>,
}

impl PotentialJson {
    pub fn from_potential(base: &BaseComplex, a: &FlatPotential) -> Self {
        let weights =
            base.edges().iter().zip(a.weights()).map(|((u, v), w)| WeightJson { edge: [*u, *v], w: *w }).collect();
        PotentialJson { weights }
    }

    pub fn build(&self, base: &BaseComplex) -> Result<FlatPotential> {
        let entries: Vec<_> = self.weights.iter().map(|w| ((w.edge[0], w.edge[1]), w.w)).collect();
        FlatPotential::from_oriented(base, &entries)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeValueJson {
    pub v: VertexId,
    pub x: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeJson {
    pub chi: Vec<GaugeValueJson>,
}

impl GaugeJson {
    pub fn build(&self) -> BTreeMap<VertexId, f64> {
        self.chi.iter().map(|g| (g.v, g.x)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleValueJson {
    pub pair: [usize; 2],
    /// Row-major entries as `[re, im]`.
    pub matrix: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleJson {
    pub dim: usize,
    pub values: Vec<CocycleValueJson>,
}

impl CocycleJson {
    pub fn from_cocycle(z: &UnitaryCocycle) -> Self {
        let values = z
            .values
            .iter()
            .map(|((b, a), m)| CocycleValueJson {
                pair: [b.0, a.0],
                matrix: m.transpose().iter().map(|x| [x.re, x.im]).collect(),
            })
            .collect();
        CocycleJson { dim: z.dim, values }
    }

    pub fn build(&self) -> Result<UnitaryCocycle> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut values = BTreeMap::new();
        for (k, v) in self.values.iter().enumerate() {
            if v.matrix.len() != n * n {
                return Err(Error::Parse(format!(
                    "values[{k}].matrix has {} entries, expected {}",
                    v.matrix.len(),
                    n * n
                )));
            }
            let m = CMatrix::from_row_iterator(n, n, v.matrix.iter().map(|e| c(e[0], e[1])));
            values.insert((DiamondId(v.pair[0]), DiamondId(v.pair[1])), m);
        }
        Ok(UnitaryCocycle { dim: n, values, tolerance: DEFAULT_TOL })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetterJson {
    pub o: usize,
    pub dag: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordJson {
    pub scalar: [f64; 2],
    pub letters: Vec<LetterJson>,
}

impl WordJson {
    pub fn from_word(w: &FieldWord) -> Self {
        let s = w.scalar.to_complex();
        WordJson {
            scalar: [s.re, s.im],
            letters: w.letters.iter().map(|l| LetterJson { o: l.o.0, dag: l.dag }).collect(),
        }
    }

    pub fn build(&self) -> FieldWord {
        FieldWord {
            scalar: Scalar::from_complex(c(self.scalar[0], self.scalar[1])),
            letters: self.letters.iter().map(|l| FieldLetter { o: DiamondId(l.o), dag: l.dag }).collect(),
        }
    }
}

pub fn parse_complex(text: &str) -> Result<BaseComplex> {
    parse::<ComplexJson>(text)?.build()
}

pub fn parse_cover(text: &str, base: BaseComplex) -> Result<CausalPoset> {
    parse::<CoverJson>(text)?.build(base)
}

pub fn parse_curve(text: &str) -> Result<CurveJson> {
    parse(text)
}

pub fn parse_potential(text: &str, base: &BaseComplex) -> Result<FlatPotential> {
    parse::<PotentialJson>(text)?.build(base)
}

pub fn parse_gauge(text: &str) -> Result<BTreeMap<VertexId, f64>> {
    Ok(parse::<GaugeJson>(text)?.build())
}

pub fn parse_cocycle(text: &str) -> Result<UnitaryCocycle> {
    parse::<CocycleJson>(text)?.build()
}

pub fn parse_word(text: &str) -> Result<FieldWord> {
    Ok(parse::<WordJson>(text)?.build())
}

pub fn complex_to_json(base: &BaseComplex) -> String {
    render(&ComplexJson::from_base(base))
}

pub fn cover_to_json(p: &CausalPoset) -> String {
    render(&CoverJson::from_poset(p))
}

pub fn potential_to_json(base: &BaseComplex, a: &FlatPotential) -> String {
    render(&PotentialJson::from_potential(base, a))
}

pub fn cocycle_to_json(z: &UnitaryCocycle) -> String {
    render(&CocycleJson::from_cocycle(z))
}

pub fn word_to_json(w: &FieldWord) -> String {
    render(&WordJson::from_word(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::phase;
    use crate::poset::{build_net, NetKind};

    #[test]
    fn complex_and_cover_round_trip() {
        let p = build_net(NetKind::Wedge(6, 6)).unwrap();
        let base = parse_complex(&complex_to_json(p.base())).unwrap();
        assert_eq!(&base, p.base());
        let q = parse_cover(&cover_to_json(&p), base).unwrap();
        assert_eq!(q.len(), p.len());
        for a in p.ids() {
            assert_eq!(q.support(a), p.support(a));
            for b in p.ids() {
                assert_eq!(q.are_disjoint(a, b), p.are_disjoint(a, b));
            }
        }
    }

    #[test]
    fn cover_without_disjointness_uses_buffer_rule() {
        let p = build_net(NetKind::Circle(6)).unwrap();
        let mut cover = CoverJson::from_poset(&p);
        cover.disjoint = None;
        let q = cover.build(p.base().clone()).unwrap();
        for a in p.ids() {
            for b in p.ids() {
                assert_eq!(q.are_disjoint(a, b), p.are_disjoint(a, b));
            }
        }
    }

    #[test]
    fn malformed_inputs_name_the_field() {
        let err = parse_complex(r#"{"vertices":[0,1]}"#).unwrap_err();
        assert!(err.to_string().contains("edges"), "{err}");
        let err = parse_cover(
            r#"{"diamonds":[{"id":1,"support":[0]}]}"#,
            build_net(NetKind::Line(3)).unwrap().base().clone(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("diamonds[0].id"), "{err}");
        let err = parse_cocycle(r#"{"dim":2,"values":[{"pair":[0,0],"matrix":[[1,0]]}]}"#).unwrap_err();
        assert!(err.to_string().contains("values[0].matrix"), "{err}");
    }

    #[test]
    fn potentials_cocycles_words() {
        let p = build_net(NetKind::Circle(6)).unwrap();
        let text = r#"{"weights":[{"edge":[1,0],"w":0.5},{"edge":[1,2],"w":0.25}]}"#;
        let a = parse_potential(text, p.base()).unwrap();
        assert_eq!(a.along(p.base(), 0, 1), Some(-0.5));
        assert_eq!(parse_potential(&potential_to_json(p.base(), &a), p.base()).unwrap(), a);

        let z = UnitaryCocycle::from_phases(&p, |b, a| phase(0.1 * b.0 as f64 - 0.1 * a.0 as f64)).unwrap();
        let back = parse_cocycle(&cocycle_to_json(&z)).unwrap();
        assert!(back.distance(&z) == 0.0);

        let w = FieldWord {
            scalar: Scalar::MINUS_ONE,
            letters: vec![FieldLetter::phi(DiamondId(2)), FieldLetter::phi_dag(DiamondId(0))],
        };
        assert_eq!(parse_word(&word_to_json(&w)).unwrap(), w);
        let g = parse_gauge(r#"{"chi":[{"v":3,"x":0.2}]}"#).unwrap();
        assert_eq!(g[&3], 0.2);
        let c = parse_curve(r#"{"curve":[0,1,2],"closed":false}"#).unwrap();
        assert!(!c.closed);
    }
}
