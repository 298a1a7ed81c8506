use serde::Serialize;
use serde_json::Value;

use absectors_core::cocycle::{check_cocycle, PathFrame};
use absectors_core::fieldalg::{statistics_phase, FieldCocycle};
use absectors_core::flatpot::{direct_edge_sum, generator_loops, loop_integral, path_integral, potential_cocycle};
use absectors_core::homotopy::{approximate_curve, base_cycles, pi1_presentation, GroupWord};
use absectors_core::poset::{validate_net, Violation};
use absectors_core::sectors::{analyze, roundtrip, twist_from_potential, twisted_transporter};
use absectors_core::{CausalPoset, DiamondId, Error, FlatPotential, Pi1Presentation, Result, Twist};

use crate::job::{Analysis, Loaded};

const WINDINGS: std::ops::RangeInclusive<i32> = -3..=3;

/// Outcome of one analysis: the report body and whether it found a violation.
pub struct Outcome {
    pub report: Value,
    pub failed: bool,
}

pub struct Context<'a> {
    loaded: &'a Loaded,
    tolerance: f64,
    pres: Option<Pi1Presentation>,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn word_string(w: &GroupWord) -> String {
    if w.is_identity() {
        return "1".into();
    }
    let parts: Vec<String> =
        w.letters().iter().map(|l| if l.inv { format!("g{}^-1", l.gen) } else { format!("g{}", l.gen) }).collect();
    parts.join(" ")
}

/// Argument wrapped into `(−π, π]`.
fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(std::f64::consts::TAU);
    if y > std::f64::consts::PI {
        y - std::f64::consts::TAU
    } else {
        y
    }
}

#[derive(Serialize)]
struct PotentialCheck {
    closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
}

#[derive(Serialize)]
struct ValidateReport {
    diamonds: usize,
    comparable_pairs: usize,
    violations: Vec<Violation>,
    potential: PotentialCheck,
    cocycle_violations: Vec<Violation>,
}

#[derive(Serialize)]
struct GeneratorRow {
    gen: usize,
    source: DiamondId,
    target: DiamondId,
    free: bool,
    expansion: String,
}

#[derive(Serialize)]
struct Pi1Report {
    base: DiamondId,
    diamonds: usize,
    h1_rank: usize,
    free: bool,
    generators: Vec<GeneratorRow>,
    relators: Vec<String>,
    residual_relators: Vec<String>,
}

#[derive(Serialize)]
struct CycleRow {
    gen: usize,
    period: f64,
    phase: f64,
}

#[derive(Serialize)]
struct LoopRow {
    label: String,
    winding: Option<i32>,
    steps: usize,
    loop_integral: f64,
    edge_sum: f64,
    phase: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct HolonomyReport {
    tolerance: f64,
    generators: Vec<CycleRow>,
    loops: Vec<LoopRow>,
    max_integral_error: f64,
}

#[derive(Serialize)]
struct KappaRow {
    diamond: DiamondId,
    kappa: Option<i8>,
}

#[derive(Serialize)]
struct StatisticsReport {
    kappa: i8,
    kappa_conjugate: i8,
    diamonds: Vec<KappaRow>,
}

#[derive(Serialize)]
struct PhaseRow {
    diamond: DiamondId,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct RoundtripReport {
    tolerance: f64,
    loop_error: f64,
    passed: bool,
    periods: Vec<f64>,
    reconstructed_periods: Vec<f64>,
    intertwiner: Vec<PhaseRow>,
}

impl<'a> Context<'a> {
    pub fn new(loaded: &'a Loaded, tolerance: f64) -> Self {
        Context { loaded, tolerance, pres: None }
    }

    fn poset(&self) -> &'a CausalPoset {
        &self.loaded.poset
    }

    fn potential(&self) -> Result<&'a FlatPotential> {
        self.loaded.potential.as_ref().map_err(|m| Error::Parse(m.clone()))
    }

    fn presentation(&mut self) -> Result<Pi1Presentation> {
        if self.pres.is_none() {
            self.pres = Some(pi1_presentation(self.poset(), DiamondId(0))?);
        }
        Ok(self.pres.clone().expect("just set"))
    }

    fn twist(&self) -> Result<Twist> {
        let a = self.potential()?;
        a.check_closed(self.poset().base())?;
        Ok(twist_from_potential(&potential_cocycle(self.poset(), a)?))
    }

    pub fn run(&mut self, analysis: Analysis) -> Outcome {
        let result = match analysis {
            Analysis::Validate => self.validate(),
            Analysis::Pi1 => self.pi1(),
            Analysis::Holonomy => self.holonomy(),
            Analysis::Statistics => self.statistics(),
            Analysis::Sector => self.sector(),
            Analysis::Roundtrip => self.roundtrip(),
        };
        result.unwrap_or_else(|e| Outcome {
            report: serde_json::json!({ "analysis": analysis.name(), "error": e.to_string() }),
            failed: true,
        })
    }

    fn validate(&mut self) -> Result<Outcome> {
        let p = self.poset();
        let net = validate_net(p);
        let (potential, cocycle_violations) = match self.potential().and_then(|a| a.check_closed(p.base())) {
            Ok(()) => {
                let mut z = self.twist()?.phase_cocycle(p)?;
                z.tolerance = self.tolerance;
                (PotentialCheck { closed: true, message: None }, check_cocycle(p, &z)?.violations)
            }
            Err(e) => (PotentialCheck { closed: false, message: Some(e.to_string()) }, Vec::new()),
        };
        let failed = !net.is_empty() || !potential.closed || !cocycle_violations.is_empty();
        let report = ValidateReport {
            diamonds: p.len(),
            comparable_pairs: p.comparable_pairs().len(),
            violations: net.violations,
            potential,
            cocycle_violations,
        };
        Ok(Outcome { report: to_value(&report), failed })
    }

    fn pi1(&mut self) -> Result<Outcome> {
        let pres = self.presentation()?;
        let free = pres.free_generators();
        let generators = pres
            .generators
            .iter()
            .enumerate()
            .map(|(gen, s)| GeneratorRow {
                gen,
                source: s.source,
                target: s.target,
                free: free.contains(&gen),
                expansion: word_string(pres.expansion(gen)),
            })
            .collect();
        let report = Pi1Report {
            base: pres.base,
            diamonds: self.poset().len(),
            h1_rank: pres.h1_rank,
            free: pres.is_free(),
            generators,
            relators: pres.relators.iter().map(word_string).collect(),
            residual_relators: pres.residual_relators().iter().map(word_string).collect(),
        };
        Ok(Outcome { report: to_value(&report), failed: false })
    }

    fn holonomy(&mut self) -> Result<Outcome> {
        let p = self.poset();
        let a = self.potential()?;
        let sigma = self.twist()?;
        let ahat = potential_cocycle(p, a)?;
        let z = twisted_transporter(&sigma);
        let phase_of = |l: &absectors_core::PosetPath| -> Result<(f64, f64, f64)> {
            let w = z.evaluate(l, p)?;
            if !w.is_scalar() {
                return Err(Error::NonScalarHolonomy);
            }
            let v = w.scalar.to_complex();
            Ok((wrap(v.arg()), v.re, v.im))
        };
        let mut generators = Vec::new();
        for (gen, l) in generator_loops(p)?.iter().enumerate() {
            let period = loop_integral(&ahat, l)?;
            generators.push(CycleRow { gen, period, phase: phase_of(l)?.0 });
        }
        let mut loops = Vec::new();
        for (k, cyc) in base_cycles(p.base()).iter().enumerate() {
            for w in WINDINGS {
                let curve = cyc.wound(w);
                let l = approximate_curve(p, &curve, true)?;
                let (phase, re, im) = phase_of(&l)?;
                loops.push(LoopRow {
                    label: format!("cycle{k}"),
                    winding: Some(w),
                    steps: l.len(),
                    loop_integral: loop_integral(&ahat, &l)?,
                    edge_sum: direct_edge_sum(p.base(), a, &curve, true)?,
                    phase,
                    re,
                    im,
                });
            }
        }
        if let Some(c) = &self.loaded.curve {
            let l = approximate_curve(p, &c.curve, c.closed)?;
            let integral = path_integral(&ahat, &l)?;
            let w = z.evaluate(&l, p)?;
            let v = w.scalar.to_complex();
            loops.push(LoopRow {
                label: "curve".into(),
                winding: None,
                steps: l.len(),
                loop_integral: integral,
                edge_sum: direct_edge_sum(p.base(), a, &c.curve, c.closed)?,
                phase: wrap(v.arg()),
                re: v.re,
                im: v.im,
            });
        }
        let max_integral_error = loops.iter().map(|r| (r.loop_integral - r.edge_sum).abs()).fold(0.0, f64::max);
        let failed = max_integral_error > self.tolerance;
        let report = HolonomyReport { tolerance: self.tolerance, generators, loops, max_integral_error };
        Ok(Outcome { report: to_value(&report), failed })
    }

    fn statistics(&mut self) -> Result<Outcome> {
        let p = self.poset();
        let sigma = self.twist()?;
        let z = twisted_transporter(&sigma);
        let zbar = FieldCocycle { charge: -1, twist: Some(sigma) };
        let sign = |s: absectors_core::Scalar| -> Result<i8> {
            let v = s.to_complex();
            if v.im.abs() > self.tolerance || (v.re.abs() - 1.0).abs() > self.tolerance {
                return Err(Error::StatisticsUndefined);
            }
            Ok(if v.re < 0.0 { -1 } else { 1 })
        };
        let mut diamonds = Vec::new();
        for a in p.ids() {
            let kappa = match statistics_phase(&z, a, p) {
                Ok(s) => Some(sign(s)?),
                Err(Error::InsufficientDisjointness) => None,
                Err(e) => return Err(e),
            };
            diamonds.push(KappaRow { diamond: a, kappa });
        }
        let first = diamonds.iter().find(|r| r.kappa.is_some()).ok_or(Error::InsufficientDisjointness)?;
        let kappa = first.kappa.expect("found above");
        let kappa_conjugate = sign(statistics_phase(&zbar, first.diamond, p)?)?;
        let failed = diamonds.iter().any(|r| r.kappa.is_some_and(|k| k != kappa));
        let report = StatisticsReport { kappa, kappa_conjugate, diamonds };
        Ok(Outcome { report: to_value(&report), failed })
    }

    fn sector(&mut self) -> Result<Outcome> {
        let pres = self.presentation()?;
        let z = twisted_transporter(&self.twist()?);
        let report = analyze(self.poset(), &pres, &z)?;
        Ok(Outcome { report: to_value(&report), failed: false })
    }

    fn roundtrip(&mut self) -> Result<Outcome> {
        let p = self.poset();
        let pres = self.presentation()?;
        let frame = PathFrame::from_tree(p, &pres);
        let sigma = self.twist()?;
        let rt = roundtrip(p, &sigma, &frame)?;
        let loops = generator_loops(p)?;
        let periods_of =
            |t: &Twist| -> Result<Vec<f64>> { loops.iter().map(|l| Ok(-t.along(l)?.to_complex().arg())).collect() };
        let intertwiner = rt
            .intertwiner
            .iter()
            .map(|(d, s)| {
                let v = s.to_complex();
                PhaseRow { diamond: *d, re: v.re, im: v.im }
            })
            .collect();
        let passed = rt.loop_error <= self.tolerance;
        let report = RoundtripReport {
            tolerance: self.tolerance,
            loop_error: rt.loop_error,
            passed,
            periods: periods_of(&sigma)?,
            reconstructed_periods: periods_of(&rt.twist)?,
            intertwiner,
        };
        Ok(Outcome { report: to_value(&report), failed: !passed })
    }
}
