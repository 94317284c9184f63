//! The gluing action on pairs of representations of two knot groups whose
//! meridians are identified.
//!
//! For `F = M − ½ tr(M)·Id` with `ζ = det F`, `F² = −ζ·Id`, so
//! `exp(tF) = cos(t√ζ)·Id + sin(t√ζ)/√ζ · F` and `exp(tF) = ±Id` exactly on
//! `(π/√ζ)ℤ`. Conjugating the first factor by `exp(tF)` fixes the meridian
//! and descends to a `ℂ*` action via `λ ↦ t = log λ / (2i√ζ)`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;

use crate::charvar::{lift_character, CharacterPolynomial, NumericRep};
use crate::error::{Error, Result};
use crate::eulerlab::{chi, Stratum};
use crate::mat2::Mat2;
use crate::tracker::all_roots;

pub const IRREDUCIBILITY_MARGIN: f64 = 1e-6;
pub const FREENESS_SEPARATION: f64 = 1e-6;
pub const MERIDIAN_DRIFT_LIMIT: f64 = 1e-7;
pub const BRANCH_TOLERANCE: f64 = 1e-8;

/// `A − ½ tr(A)·Id`
pub fn trace_free(m: &Mat2) -> Mat2 {
    *m - Mat2::scalar(m.trace() * 0.5)
}

/// `det F(M) = 1 − τ²/4` for `M ∈ SL(2, ℂ)`.
pub fn zeta(m: &Mat2) -> Result<Complex64> {
    if (m.det() - 1.0).norm() >= 1e-9 {
        return Err(Error::BadRepresentation("matrix is not in SL(2, C)"));
    }
    let z = trace_free(m).det();
    if z.norm() < 1e-12 {
        return Err(Error::ParabolicTrace);
    }
    Ok(z)
}

fn sinc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// `exp(t·M)` for trace-free `M`.
pub fn exp_sl2(t: Complex64, m: &Mat2) -> Mat2 {
    let root = m.det().sqrt();
    let w = t * root;
    Mat2::scalar(w.cos()) + m.scale(t * sinc(w))
}

/// Eigenvector basis of a non-parabolic `M`, columns ordered by the
/// eigenvalues `(λ, 1/λ)` with `λ = (τ + √(τ² − 4))/2`.
fn eigenbasis(m: &Mat2) -> Mat2 {
    let tau = m.trace();
    let lambda = (tau + (tau * tau - 4.0).sqrt()) / 2.0;
    let [[a, b], [c, d]] = m.0;
    let column = |l: Complex64| -> (Complex64, Complex64) {
        if b.norm() >= c.norm() && b.norm() > 0.0 {
            (b, l - a)
        } else if c.norm() > 0.0 {
            (l - d, c)
        } else if (a - l).norm() < (d - l).norm() {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
        }
    };
    let (p, q) = column(lambda);
    let (r, s) = column(lambda.inv());
    Mat2::new(p, r, q, s)
}

/// Two irreducible representations glued along the meridian: after
/// conjugation `rho2.a = rho1.a = meridian_image`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GluedPair {
    pub rho1: NumericRep,
    pub rho2: NumericRep,
    pub meridian_image: Mat2,
}

impl GluedPair {
    pub fn new(rho1: NumericRep, rho2: NumericRep) -> Result<Self> {
        for rho in [&rho1, &rho2] {
            if (rho.commutator_trace() - 2.0).norm() <= IRREDUCIBILITY_MARGIN {
                return Err(Error::Reducible);
            }
        }
        let tau = rho1.a.trace();
        if (rho2.a.trace() - tau).norm() > 1e-9 {
            return Err(Error::BadRepresentation("meridian traces differ"));
        }
        zeta(&rho1.a)?;
        let g = eigenbasis(&rho1.a) * eigenbasis(&rho2.a).inverse();
        let rho2 = rho2.conjugate_by(&g);
        if rho2.a.distance(&rho1.a) > 1e-9 * (1.0 + rho1.a.sup_norm()) {
            return Err(Error::BadRepresentation("meridian images could not be matched"));
        }
        Ok(Self { rho1, rho2, meridian_image: rho1.a })
    }

    pub fn tau(&self) -> Complex64 {
        self.meridian_image.trace()
    }

    pub fn zeta(&self) -> Result<Complex64> {
        zeta(&self.meridian_image)
    }

    /// Traces of `a₁, b₁, a₂, b₂`, their six pairwise products and the
    /// meridian; these separate glued characters.
    pub fn fingerprint(&self) -> [Complex64; 11] {
        let g = [self.rho1.a, self.rho1.b, self.rho2.a, self.rho2.b];
        let mut out = [Complex64::new(0.0, 0.0); 11];
        let mut k = 0;
        for m in &g {
            out[k] = m.trace();
            k += 1;
        }
        for i in 0..4 {
            for j in i + 1..4 {
                out[k] = (g[i] * g[j]).trace();
                k += 1;
            }
        }
        out[k] = self.meridian_image.trace();
        out
    }
}

pub fn fingerprint_distance(a: &GluedPair, b: &GluedPair) -> f64 {
    a.fingerprint()
        .iter()
        .zip(b.fingerprint().iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Conjugates the first factor by `exp(t·F(meridian))`.
pub fn additive_action(t: Complex64, pair: &GluedPair) -> Result<GluedPair> {
    let g = exp_sl2(t, &trace_free(&pair.meridian_image));
    let rho1 = pair.rho1.conjugate_by(&g);
    let drift = rho1.a.distance(&pair.meridian_image);
    if drift > MERIDIAN_DRIFT_LIMIT || !rho1.b.is_finite() {
        return Err(Error::MeridianDrift { drift });
    }
    Ok(GluedPair { rho1, ..*pair })
}

fn cstar_parameter(log_lambda: Complex64, zeta: Complex64) -> Complex64 {
    log_lambda / (Complex64::new(0.0, 2.0) * zeta.sqrt())
}

/// `λ·(ρ₁, ρ₂)`; the result is checked against the neighbouring branch of
/// `log λ`.
pub fn cstar_action(lambda: Complex64, pair: &GluedPair) -> Result<GluedPair> {
    if lambda.norm() == 0.0 || !lambda.is_finite() {
        return Err(Error::OutOfRange("C* action needs a nonzero finite lambda"));
    }
    let z = pair.zeta()?;
    let log = lambda.ln();
    let main = additive_action(cstar_parameter(log, z), pair)?;
    let other = additive_action(cstar_parameter(log + Complex64::new(0.0, TAU), z), pair)?;
    let scale = 1.0 + main.fingerprint().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let deviation = fingerprint_distance(&main, &other);
    if deviation > BRANCH_TOLERANCE * scale {
        return Err(Error::BranchDisagreement { deviation });
    }
    Ok(main)
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FreenessCertificate {
    pub n: usize,
    pub min_separation: f64,
}

/// Checks that the `ℤ/n ⊂ ℂ*` orbit of `pair` consists of `n` distinct
/// characters, and that `ω^n` acts trivially.
pub fn verify_free_zn(pair: &GluedPair, n: usize) -> Result<FreenessCertificate> {
    if n < 2 {
        return Err(Error::OutOfRange("freeness check needs n ≥ 2"));
    }
    let omega = Complex64::from_polar(1.0, TAU / n as f64);
    let mut orbit: Vec<GluedPair> = Vec::with_capacity(n + 1);
    orbit.push(*pair);
    for k in 1..=n {
        let prev = orbit[k - 1];
        orbit.push(cstar_action(omega, &prev)?);
    }
    let scale = 1.0 + pair.fingerprint().iter().map(|c| c.norm()).fold(0.0, f64::max);
    if fingerprint_distance(&orbit[n], pair) > 1e-8 * scale {
        return Err(Error::NotFree { n, k: n });
    }
    let mut min_separation = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let d = fingerprint_distance(&orbit[i], &orbit[j]);
            if d <= FREENESS_SEPARATION {
                return Err(Error::NotFree { n, k: j - i });
            }
            min_separation = min_separation.min(d);
        }
    }
    Ok(FreenessCertificate { n, min_separation })
}

/// `(π/√ζ)ℤ`, the parameters acting trivially.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct StabilizerLattice {
    pub generator: Complex64,
}

impl StabilizerLattice {
    pub fn of(meridian: &Mat2) -> Result<Self> {
        Ok(Self { generator: Complex64::new(PI, 0.0) / zeta(meridian)?.sqrt() })
    }

    /// Distance of `t / generator` from the nearest integer.
    pub fn offset(&self, t: Complex64) -> f64 {
        let q = t / self.generator;
        Complex64::new(q.re - Float::round(q.re), q.im).norm()
    }

    pub fn contains(&self, t: Complex64) -> bool {
        self.offset(t) < 1e-8
    }
}

/// Distance of `M` from the nearer of `±Id`.
pub fn distance_from_center(m: &Mat2) -> f64 {
    m.distance(&Mat2::identity()).min(m.distance(&-Mat2::identity()))
}

/// A random glued pair at a random trace kept `clearance` away from
/// `avoid`, moved by a random gluing parameter.
pub fn sample_glued_pair<R: Rng>(
    cp1: &CharacterPolynomial,
    cp2: &CharacterPolynomial,
    avoid: &[Complex64],
    clearance: f64,
    rng: &mut R,
) -> Result<GluedPair> {
    for _ in 0..1000 {
        let tau = Complex64::new(rng.gen_range(-1.8..1.8), rng.gen_range(-1.2..1.2));
        if avoid.iter().any(|z| (z - tau).norm() < clearance) {
            continue;
        }
        let r1 = all_roots(&cp1.poly().to_float().slice(tau))?;
        let r2 = all_roots(&cp2.poly().to_float().slice(tau))?;
        let y1 = r1[rng.gen_range(0..r1.len())];
        let y2 = r2[rng.gen_range(0..r2.len())];
        let pair = GluedPair::new(lift_character(cp1, tau, y1)?, lift_character(cp2, tau, y2)?)?;
        let t = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5));
        return additive_action(t, &pair);
    }
    Err(Error::Internal("could not sample a generic trace"))
}

#[derive(Clone, PartialEq, Debug)]
pub struct TypeIIReport {
    pub chi: i64,
    pub certificates: Vec<FreenessCertificate>,
}

impl TypeIIReport {
    pub fn min_separation(&self) -> f64 {
        self.certificates.iter().map(|c| c.min_separation).fold(f64::INFINITY, f64::min)
    }
}

/// χ of the Type II stratum `points × points × ℂ*`, plus `ℤ/n` freeness
/// certificates on `pairs` sampled glued pairs.
pub fn type_ii_chi<R: Rng>(
    atoms: [(&CharacterPolynomial, i64); 2],
    avoid: &[Complex64],
    n: usize,
    pairs: usize,
    rng: &mut R,
) -> Result<TypeIIReport> {
    let [(cp1, chi1), (cp2, chi2)] = atoms;
    let stratum = Stratum::Product(alloc::vec![
        Stratum::Points(chi1.max(0) as u64),
        Stratum::Points(chi2.max(0) as u64),
        Stratum::cstar(),
    ]);
    let value = chi(&stratum);
    if value != 0 {
        return Err(Error::TypeIINonzero(value));
    }
    let mut certificates = Vec::with_capacity(pairs);
    for _ in 0..pairs {
        let pair = sample_glued_pair(cp1, cp2, avoid, 0.05, rng)?;
        certificates.push(verify_free_zn(&pair, n)?);
    }
    Ok(TypeIIReport { chi: value, certificates })
}
