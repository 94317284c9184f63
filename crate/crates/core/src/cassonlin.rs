//! Exceptional traces, Behrend-weighted slice counts, the generic sweep and
//! connected sums.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charvar::{character_polynomial_of, CharacterPolynomial};
use crate::error::{Error, Result};
use crate::eulerlab::{behrend_zero_dim, BehrendCount, Location, ZeroDimScheme};
use crate::exactalg::{
    discriminant_y, int, primitive_integer, resultant_y, substitute_x, Field, GaussianRational, UniPoly,
};
use crate::knotspec::{alexander_bad_traces, fox_alexander, two_bridge_word, AlexanderPolynomial, KnotDescriptor};
use crate::torusaction::type_ii_chi;
use crate::tracker::all_roots;

type QPoly = UniPoly<BigRational>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Provenance {
    Discriminant,
    LeadingCoeff,
    AbelianResultant,
    Alexander,
    Parabolic,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Discriminant => "discriminant",
            Provenance::LeadingCoeff => "leading_coeff",
            Provenance::AbelianResultant => "abelian_resultant",
            Provenance::Alexander => "alexander",
            Provenance::Parabolic => "parabolic",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct BadComponent {
    /// Primitive integer polynomial in `τ`; constant when the component is
    /// empty.
    pub poly: QPoly,
    pub provenance: Provenance,
    pub roots: Vec<Complex64>,
}

impl BadComponent {
    fn new(poly: QPoly, provenance: Provenance) -> Result<Self> {
        let poly = primitive_integer(&poly);
        let roots = if poly.is_constant() {
            Vec::new()
        } else {
            let mut r = all_roots(&poly.squarefree_part().to_complex())?;
            r.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            r
        };
        Ok(Self { poly, provenance, roots })
    }

    pub fn vanishes_at(&self, tau: &GaussianRational) -> bool {
        !self.poly.is_constant() && self.poly.map(GaussianRational::from_rational).eval(tau).is_zero()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct BadSet {
    pub components: Vec<BadComponent>,
}

impl BadSet {
    pub fn isolated_roots(&self) -> impl Iterator<Item = (Complex64, Provenance)> + '_ {
        self.components.iter().flat_map(|c| c.roots.iter().map(move |&z| (z, c.provenance)))
    }

    /// All roots with duplicates across components merged at 1e-8.
    pub fn distinct_roots(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for (z, _) in self.isolated_roots() {
            if !out.iter().any(|w| (w - z).norm() < 1e-8) {
                out.push(z);
            }
        }
        out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        out
    }

    pub fn component(&self, provenance: Provenance) -> Option<&BadComponent> {
        self.components.iter().find(|c| c.provenance == provenance)
    }

    /// Exact test against every defining polynomial.
    pub fn contains(&self, tau: &GaussianRational) -> bool {
        self.components.iter().any(|c| c.vanishes_at(tau))
    }

    fn merged(sets: &[BadSet]) -> BadSet {
        BadSet { components: sets.iter().flat_map(|s| s.components.iter().cloned()).collect() }
    }
}

fn parabolic() -> QPoly {
    UniPoly::new(alloc::vec![int(-4), int(0), int(1)])
}

/// Components computable from the character polynomial alone.
fn intrinsic_components(cp: &CharacterPolynomial) -> Result<Vec<BadComponent>> {
    let p = cp.poly();
    Ok(alloc::vec![
        BadComponent::new(discriminant_y(p)?, Provenance::Discriminant)?,
        BadComponent::new(p.lc_y(), Provenance::LeadingCoeff)?,
        BadComponent::new(resultant_y(p, &CharacterPolynomial::abelian_locus())?, Provenance::AbelianResultant)?,
        BadComponent::new(parabolic(), Provenance::Parabolic)?,
    ])
}

pub fn bad_set(cp: &CharacterPolynomial, delta: &AlexanderPolynomial) -> Result<BadSet> {
    let mut components = intrinsic_components(cp)?;
    let alexander = BadComponent::new(alexander_bad_traces(delta)?.defining_poly, Provenance::Alexander)?;
    let abelian = &components[2].roots;
    for z in &alexander.roots {
        if !abelian.iter().any(|w| (w - z).norm() < 1e-8) {
            return Err(Error::Internal("Alexander trace missing from the abelian resultant"));
        }
    }
    components.insert(3, alexander);
    Ok(BadSet { components })
}

#[derive(Clone, PartialEq, Debug)]
pub struct SliceReport {
    pub tau: GaussianRational,
    pub slice_poly: UniPoly<GaussianRational>,
    pub points: ZeroDimScheme,
    /// Abelian-locus location `y = τ² − 2`, when it lies on the slice.
    pub excluded: Vec<Location>,
    pub behrend: BehrendCount,
    pub chi_b: i64,
    pub is_generic: bool,
}

fn is_parabolic(tau: &GaussianRational) -> bool {
    tau.is_real() && (tau.re == int(2) || tau.re == int(-2))
}

fn slice_with(cp: &CharacterPolynomial, components: &[BadComponent], tau: &GaussianRational) -> Result<SliceReport> {
    if is_parabolic(tau) {
        return Err(Error::ParabolicTrace);
    }
    let slice_poly = substitute_x(cp.poly(), tau);
    if slice_poly.is_zero() {
        return Err(Error::Internal("slice polynomial vanished identically"));
    }
    let points = ZeroDimScheme::from_poly(&slice_poly)?;
    let abelian_y = tau.square() - GaussianRational::real(int(2));
    let excluded = if slice_poly.eval(&abelian_y).is_zero() {
        alloc::vec![Location::Exact(abelian_y)]
    } else {
        Vec::new()
    };
    let behrend = behrend_zero_dim(&points, &excluded)?;
    let is_generic = !components.iter().any(|c| c.vanishes_at(tau));
    Ok(SliceReport { tau: tau.clone(), slice_poly, points, excluded, chi_b: behrend.total, behrend, is_generic })
}

/// `χ_B` of the irreducible slice at an exact trace.
pub fn chi_b_slice(cp: &CharacterPolynomial, tau: &GaussianRational) -> Result<SliceReport> {
    slice_with(cp, &intrinsic_components(cp)?, tau)
}

pub fn chi_b_slice_in(cp: &CharacterPolynomial, bad: &BadSet, tau: &GaussianRational) -> Result<SliceReport> {
    slice_with(cp, &bad.components, tau)
}

pub const SAMPLE_NUMERATOR_BOUND: i64 = 40;
pub const SAMPLE_DENOMINATOR_BOUND: i64 = 12;

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let n = rng.gen_range(-SAMPLE_NUMERATOR_BOUND..=SAMPLE_NUMERATOR_BOUND);
    let d = rng.gen_range(1..=SAMPLE_DENOMINATOR_BOUND);
    BigRational::new(n.into(), d.into())
}

/// The `index`-th sample: real for even indices, complex for odd ones.
fn sample_tau<R: Rng>(rng: &mut R, index: usize) -> GaussianRational {
    let re = small_rational(rng);
    if index.is_multiple_of(2) {
        GaussianRational::real(re)
    } else {
        let mut im = small_rational(rng);
        while im.is_zero() {
            im = small_rational(rng);
        }
        GaussianRational::new(re, im)
    }
}

/// Deterministic trace samples for a seed.
pub fn sample_traces(samples: usize, seed: u64) -> Vec<GaussianRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|i| sample_tau(&mut rng, i)).collect()
}

#[derive(Clone, PartialEq, Debug)]
pub struct Decomposition {
    /// `χ_CL` of each atom, in descriptor order.
    pub atoms: Vec<i64>,
    pub type_ii_chi: i64,
    /// Smallest fingerprint separation over all freeness certificates.
    pub min_separation: f64,
    pub certificates: usize,
    pub shared_tau: GaussianRational,
}

#[derive(Clone, PartialEq, Debug)]
pub struct InvariantReport {
    pub knot: String,
    pub chi_cl: i64,
    pub witnesses: Vec<SliceReport>,
    pub bad_set: BadSet,
    pub decomposition: Option<Decomposition>,
}

pub const MIN_SAMPLES: usize = 2;

pub fn sweep(cp: &CharacterPolynomial, delta: &AlexanderPolynomial, samples: usize, seed: u64) -> Result<InvariantReport> {
    if samples < MIN_SAMPLES {
        return Err(Error::OutOfRange("sweep needs at least 2 samples"));
    }
    let bad = bad_set(cp, delta)?;
    let mut witnesses = Vec::with_capacity(samples);
    for tau in sample_traces(samples, seed) {
        if bad.contains(&tau) {
            log::debug!("discarding exceptional sample {tau}");
            continue;
        }
        witnesses.push(chi_b_slice_in(cp, &bad, &tau)?);
    }
    if witnesses.len() < MIN_SAMPLES {
        return Err(Error::BadSetTooDense { survivors: witnesses.len() });
    }
    let first = witnesses[0].chi_b;
    if let Some(w) = witnesses.iter().find(|w| w.chi_b != first) {
        return Err(Error::SweepNotConstant { first, other: w.chi_b });
    }
    Ok(InvariantReport {
        knot: format!("{}", cp.knot()),
        chi_cl: first,
        witnesses,
        bad_set: bad,
        decomposition: None,
    })
}

/// Character polynomial, Alexander polynomial and bad set of one atom.
#[derive(Clone, PartialEq, Debug)]
pub struct AtomData {
    pub cp: CharacterPolynomial,
    pub delta: AlexanderPolynomial,
}

impl AtomData {
    pub fn of(params: crate::knotspec::TwoBridgeParams) -> Result<Self> {
        let cp = character_polynomial_of(params)?;
        let delta = fox_alexander(&two_bridge_word(params.p, params.q)?)?;
        Ok(Self { cp, delta })
    }
}

pub const FREENESS_ORDER: usize = 5;
pub const FREENESS_PAIRS: usize = 100;

pub fn connected_sum_invariant(desc: &KnotDescriptor, samples: usize, seed: u64) -> Result<InvariantReport> {
    let atoms: Vec<AtomData> = desc.atoms().iter().map(|&a| AtomData::of(a)).collect::<Result<_>>()?;
    connected_sum_with(desc, &atoms, samples, seed, FREENESS_PAIRS)
}

/// As [`connected_sum_invariant`] with precomputed atom data and a chosen
/// number of freeness samples per adjacent pair.
pub fn connected_sum_with(
    desc: &KnotDescriptor,
    atoms: &[AtomData],
    samples: usize,
    seed: u64,
    freeness_pairs: usize,
) -> Result<InvariantReport> {
    if atoms.len() != desc.atoms().len() || atoms.is_empty() {
        return Err(Error::Internal("atom data does not match the descriptor"));
    }
    let reports: Vec<InvariantReport> =
        atoms.iter().map(|a| sweep(&a.cp, &a.delta, samples, seed)).collect::<Result<_>>()?;
    if atoms.len() == 1 {
        let mut r = reports.into_iter().next().unwrap();
        r.knot = format!("{desc}");
        return Ok(r);
    }

    let bad = BadSet::merged(&reports.iter().map(|r| r.bad_set.clone()).collect::<Vec<_>>());
    // A trace good for every atom at once.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e_ed0f_5a11);
    let shared_tau = (0..1000)
        .map(|i| sample_tau(&mut rng, i))
        .find(|t| !bad.contains(t) && !is_parabolic(t))
        .ok_or(Error::BadSetTooDense { survivors: 0 })?;
    let witnesses: Vec<SliceReport> =
        atoms.iter().map(|a| chi_b_slice_in(&a.cp, &bad, &shared_tau)).collect::<Result<_>>()?;
    for (w, r) in witnesses.iter().zip(&reports) {
        if w.chi_b != r.chi_cl {
            return Err(Error::SweepNotConstant { first: r.chi_cl, other: w.chi_b });
        }
    }

    let avoid = bad.distinct_roots();
    let mut type_ii = 0;
    let mut min_separation = f64::INFINITY;
    let mut certificates = 0;
    for i in 0..atoms.len() - 1 {
        let report = type_ii_chi(
            [(&atoms[i].cp, reports[i].chi_cl), (&atoms[i + 1].cp, reports[i + 1].chi_cl)],
            &avoid,
            FREENESS_ORDER,
            freeness_pairs,
            &mut rng,
        )?;
        type_ii += report.chi;
        min_separation = min_separation.min(report.min_separation());
        certificates += report.certificates.len();
    }
    if type_ii != 0 {
        return Err(Error::TypeIINonzero(type_ii));
    }
    let per_atom: Vec<i64> = reports.iter().map(|r| r.chi_cl).collect();
    Ok(InvariantReport {
        knot: format!("{desc}"),
        chi_cl: per_atom.iter().sum::<i64>() + type_ii,
        witnesses,
        bad_set: bad,
        decomposition: Some(Decomposition {
            atoms: per_atom,
            type_ii_chi: type_ii,
            min_separation,
            certificates,
            shared_tau,
        }),
    })
}
