//! Serializable report types. Key order and number formatting are fixed so
//! identical inputs give byte-identical JSON.

use clk_core::cassonlin::{BadSet, InvariantReport, SliceReport};
use clk_core::exactalg::{BigInt, BigRational, GaussianRational, UniPoly};
use clk_core::tracker::{MonodromyReport, Orientation};
use clk_core::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

pub fn pair(z: Complex64) -> [f64; 2] {
    // -0.0 would print as "-0.0"; normalize so output does not depend on it
    [z.re + 0.0, z.im + 0.0]
}

/// Integers as JSON numbers when they fit, everything else as "n/d" strings.
pub fn rational(q: &BigRational) -> Value {
    if q.is_integer() {
        if let Some(n) = q.numer().to_i64() {
            return Value::from(n);
        }
    }
    Value::from(q.to_string())
}

pub fn coeffs(p: &UniPoly<BigRational>) -> Vec<Value> {
    p.coeffs().iter().map(rational).collect()
}

fn gaussian_parts(z: &GaussianRational) -> [Value; 4] {
    let part = |v: &BigInt| v.to_i64().map(Value::from).unwrap_or_else(|| Value::from(v.to_string()));
    [part(z.re.numer()), part(z.re.denom()), part(z.im.numer()), part(z.im.denom())]
}

#[derive(Serialize, Clone, Debug)]
pub struct BadComponentJson {
    pub poly: Vec<Value>,
    pub provenance: &'static str,
    pub roots: Vec<[f64; 2]>,
}

pub fn bad_set_json(bad: &BadSet) -> Vec<BadComponentJson> {
    bad.components
        .iter()
        .map(|c| BadComponentJson {
            poly: coeffs(&c.poly),
            provenance: c.provenance.as_str(),
            roots: c.roots.iter().copied().map(pair).collect(),
        })
        .collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct PointJson {
    pub y: [f64; 2],
    pub mult: usize,
    pub excluded: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct SliceJson {
    pub tau: [Value; 4],
    pub chi_b: i64,
    pub generic: bool,
    pub points: Vec<PointJson>,
}

pub fn slice_json(s: &SliceReport) -> SliceJson {
    SliceJson {
        tau: gaussian_parts(&s.tau),
        chi_b: s.chi_b,
        generic: s.is_generic,
        points: s
            .points
            .points
            .iter()
            .zip(&s.behrend.per_point)
            .map(|(p, &(_, excluded))| PointJson { y: pair(p.location.to_complex()), mult: p.multiplicity, excluded })
            .collect(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct DecompositionJson {
    pub atoms: Vec<i64>,
    pub type_ii_chi: i64,
}

#[derive(Serialize, Clone, Debug)]
pub struct InvariantJson {
    pub knot: String,
    pub chi_cl: i64,
    pub bad_set: Vec<BadComponentJson>,
    pub slices: Vec<SliceJson>,
    pub decomposition: Option<DecompositionJson>,
}

impl InvariantJson {
    pub fn new(r: &InvariantReport) -> Self {
        Self {
            knot: r.knot.clone(),
            chi_cl: r.chi_cl,
            bad_set: bad_set_json(&r.bad_set),
            slices: r.witnesses.iter().map(slice_json).collect(),
            decomposition: r
                .decomposition
                .as_ref()
                .map(|d| DecompositionJson { atoms: d.atoms.clone(), type_ii_chi: d.type_ii_chi }),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct BadSetJson {
    pub knot: String,
    pub bad_set: Vec<BadComponentJson>,
    pub distinct_roots: Vec<[f64; 2]>,
}

#[derive(Serialize, Clone, Debug)]
pub struct CharpolyJson {
    pub knot: String,
    pub p: u64,
    pub q: u64,
    pub y_degree: usize,
    pub poly: String,
    /// `[x exponent, y exponent, coefficient]`
    pub terms: Vec<(usize, usize, Value)>,
}

#[derive(Serialize, Clone, Debug)]
pub struct AlexanderJson {
    pub knot: String,
    pub delta: String,
    pub coeffs: Vec<Value>,
    pub trace_poly: Vec<Value>,
    pub bad_traces: Vec<[f64; 2]>,
}

#[derive(Serialize, Clone, Debug)]
pub struct LoopJson {
    pub center: [f64; 2],
    pub radius: f64,
    pub steps: usize,
    pub orientation: &'static str,
    pub permutation: Vec<Vec<u8>>,
    pub eigenvalues: Vec<[f64; 2]>,
    pub max_residual: f64,
    pub min_separation: f64,
}

impl LoopJson {
    pub fn new(r: &MonodromyReport) -> Self {
        Self {
            center: pair(r.lp.center),
            radius: r.lp.radius,
            steps: r.lp.steps,
            orientation: match r.lp.orientation {
                Orientation::CounterClockwise => "counterclockwise",
                Orientation::Clockwise => "clockwise",
            },
            permutation: r.permutation.clone(),
            eigenvalues: r.eigenvalues.iter().copied().map(pair).collect(),
            max_residual: r.max_residual,
            min_separation: r.min_separation,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct MonodromyJson {
    pub knot: String,
    pub rank: usize,
    pub loops: Vec<LoopJson>,
}

#[derive(Serialize, Clone, Debug)]
pub struct CstarJson {
    pub knot: String,
    pub order: usize,
    pub pairs: usize,
    pub certificates: usize,
    pub min_separation: f64,
    /// Largest fingerprint distance between `(λμ)·ρ` and `λ·(μ·ρ)`.
    pub max_action_defect: f64,
    pub type_ii_chi: i64,
}

#[derive(Serialize, Clone, Debug)]
pub struct ErrorJson {
    pub kind: String,
    pub message: String,
}

#[derive(Serialize, Clone, Debug)]
#[serde(untagged)]
pub enum CorpusEntry {
    Ok(InvariantJson),
    Failed { knot: String, error: ErrorJson },
}
