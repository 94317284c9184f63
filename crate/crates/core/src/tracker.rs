//! Simultaneous root finding and continuation of slice roots along loops in
//! the `τ`-plane.
//!
//! The tracker only ever sees squarefree slices: off the bad set the exact
//! layer guarantees distinct roots, and loops are validated against the bad
//! set before tracking starts.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_traits::Float;

use crate::cassonlin::{bad_set, BadSet, Provenance};
use crate::charvar::CharacterPolynomial;
use crate::error::{Error, Result};
use crate::exactalg::FloatBiPoly;
use crate::knotspec::AlexanderPolynomial;

pub const COLLISION_THRESHOLD: f64 = 1e-8;
pub const NEWTON_TOLERANCE: f64 = 1e-12;
pub const MAX_NEWTON_ITERATIONS: usize = 20;
/// Adaptive halving never goes below `2π / 2^14`.
pub const MIN_STEP_LOG2: u32 = 14;
pub const MATCH_MARGIN: f64 = 10.0;
pub const BAD_SET_CLEARANCE: f64 = 1e-6;

const ABERTH_MAX_ITERATIONS: usize = 500;

fn eval_with_derivative(coeffs: &[Complex64], y: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    coeffs.iter().rev().fold((zero, zero), |(p, dp), &c| (p * y + c, dp * y + p))
}

fn relative_residual(coeffs: &[Complex64], y: Complex64) -> f64 {
    let (p, _) = eval_with_derivative(coeffs, y);
    let scale: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm() * Float::powi(y.norm().max(1.0), k as i32))
        .sum();
    p.norm() / scale.max(f64::MIN_POSITIVE)
}

/// All roots of a squarefree polynomial (coefficients lowest degree first)
/// by Aberth–Ehrlich iteration followed by Newton polishing.
pub fn all_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err(Error::OutOfRange("root finding needs degree at least 1"));
    }
    let lead = *coeffs.last().unwrap();
    if lead.norm() <= 1e-12 {
        return Err(Error::OutOfRange("leading coefficient is numerically zero"));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let n = monic.len() - 1;
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }

    // Fujiwara bound for the initial circle.
    let radius = (1..=n)
        .map(|k| {
            let c = monic[n - k].norm() / if k == n { 2.0 } else { 1.0 };
            Float::powf(c, 1.0 / k as f64)
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();

    for _ in 0..ABERTH_MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval_with_derivative(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-14 {
            break;
        }
    }
    // Stagnation at rounding level is fine; the residual test below decides.
    for root in z.iter_mut() {
        for _ in 0..8 {
            let (p, dp) = eval_with_derivative(&coeffs, *root);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            *root -= step;
            if step.norm() <= f64::EPSILON * (1.0 + root.norm()) {
                break;
            }
        }
        if relative_residual(&coeffs, *root) >= 1e-12 {
            return Err(Error::NoConvergence { iterations: ABERTH_MAX_ITERATIONS });
        }
    }
    Ok(z)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
}

/// `τ(θ) = center + radius · e^{±iθ}`, `θ ∈ [0, 2π]`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Loop {
    pub center: Complex64,
    pub radius: f64,
    pub steps: usize,
    pub orientation: Orientation,
}

impl Loop {
    pub fn new(center: Complex64, radius: f64, steps: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::OutOfRange("loop radius must be positive"));
        }
        if steps < 16 {
            return Err(Error::OutOfRange("loop needs at least 16 steps"));
        }
        Ok(Self { center, radius, steps, orientation: Orientation::CounterClockwise })
    }

    pub fn reversed(self) -> Self {
        let orientation = match self.orientation {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
        };
        Self { orientation, ..self }
    }

    pub fn with_steps(self, steps: usize) -> Self {
        Self { steps, ..self }
    }

    pub fn point(&self, theta: f64) -> Complex64 {
        let angle = match self.orientation {
            Orientation::CounterClockwise => theta,
            Orientation::Clockwise => -theta,
        };
        self.center + Complex64::from_polar(self.radius, angle)
    }

    /// Fails when the circle passes within [`BAD_SET_CLEARANCE`] of a root.
    pub fn check_clear_of(&self, roots: &[Complex64]) -> Result<()> {
        for r in roots {
            let distance = Float::abs((r - self.center).norm() - self.radius);
            if distance < BAD_SET_CLEARANCE {
                return Err(Error::LoopTouchesBadSet { distance });
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct PathStep {
    pub theta: f64,
    pub tau: Complex64,
    pub roots: Vec<Complex64>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct MonodromyReport {
    pub lp: Loop,
    pub base_roots: Vec<Complex64>,
    pub paths: Vec<PathStep>,
    /// `permutation[i][j] = 1` when the root starting at `base_roots[i]`
    /// ends at `base_roots[j]`.
    pub permutation: Vec<Vec<u8>>,
    pub eigenvalues: Vec<Complex64>,
    /// Largest `|p_τ(y)|` over all accepted steps.
    pub max_residual: f64,
    pub min_separation: f64,
}

impl MonodromyReport {
    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, row)| row[i] == 1)
    }
}

/// Permutation matrix as the image list `i ↦ perm[i]`.
pub fn permutation_images(matrix: &[Vec<u8>]) -> Vec<usize> {
    matrix
        .iter()
        .map(|row| row.iter().position(|&v| v == 1).expect("permutation row"))
        .collect()
}

pub fn permutation_matrix(images: &[usize]) -> Vec<Vec<u8>> {
    let n = images.len();
    images
        .iter()
        .map(|&j| {
            let mut row = vec![0u8; n];
            row[j] = 1;
            row
        })
        .collect()
}

/// Eigenvalues of a permutation matrix: the `L`-th roots of unity for each
/// cycle of length `L`, sorted by argument then modulus.
pub fn permutation_eigenvalues(images: &[usize]) -> Vec<Complex64> {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        for k in 0..len {
            let z = Complex64::from_polar(1.0, TAU * k as f64 / len as f64);
            // Snap the rounding noise so ±1 and ±i print cleanly.
            out.push(Complex64::new(snap(z.re), snap(z.im)));
        }
    }
    out.sort_by(|a, b| {
        let key = |z: &Complex64| {
            let arg = z.arg();
            if arg < -1e-12 { arg + TAU } else { arg.max(0.0) }
        };
        key(a).total_cmp(&key(b))
    });
    out
}

fn snap(v: f64) -> f64 {
    let r = Float::round(v);
    if Float::abs(v - r) < 1e-12 { r } else { v }
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

fn min_pairwise_distance(roots: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            best = best.min((roots[i] - roots[j]).norm());
        }
    }
    best
}

fn newton(coeffs: &[Complex64], start: Complex64) -> Option<Complex64> {
    let mut y = start;
    for _ in 0..MAX_NEWTON_ITERATIONS {
        let (p, dp) = eval_with_derivative(coeffs, y);
        if dp.norm() == 0.0 {
            return None;
        }
        let step = p / dp;
        y -= step;
        if !y.is_finite() {
            return None;
        }
        if step.norm() <= NEWTON_TOLERANCE * y.norm().max(1.0) {
            return Some(y);
        }
    }
    None
}

/// Corrects every root at the new parameter; `None` rejects the step.
fn try_step(slice: &[Complex64], previous: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut next = Vec::with_capacity(previous.len());
    for (k, &y0) in previous.iter().enumerate() {
        let y = newton(slice, y0)?;
        let nearest_other = previous
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, z)| (z - y0).norm())
            .fold(f64::INFINITY, f64::min);
        if (y - y0).norm() > 0.25 * nearest_other {
            return None;
        }
        next.push(y);
    }
    (min_pairwise_distance(&next) > MATCH_MARGIN * COLLISION_THRESHOLD).then_some(next)
}

/// Tracks the roots of `P(τ(θ), y)` once around `lp`.
pub fn continue_roots_on(poly: &FloatBiPoly, lp: &Loop) -> Result<MonodromyReport> {
    let base_tau = lp.point(0.0);
    let mut base_roots = all_roots(&poly.slice(base_tau))?;
    sort_roots(&mut base_roots);
    if min_pairwise_distance(&base_roots) <= MATCH_MARGIN * COLLISION_THRESHOLD {
        return Err(Error::BaseNotSquarefree);
    }

    let nominal = TAU / lp.steps as f64;
    let floor = TAU / (1u64 << MIN_STEP_LOG2) as f64;
    let mut theta = 0.0;
    let mut h = nominal;
    let mut current = base_roots.clone();
    let mut paths = vec![PathStep { theta, tau: base_tau, roots: current.clone() }];
    let mut max_residual: f64 = 0.0;
    let mut min_separation = min_pairwise_distance(&current);

    while theta < TAU {
        let target = if TAU - theta <= h * (1.0 + 1e-9) { TAU } else { theta + h };
        let tau = lp.point(target);
        let slice = poly.slice(tau);
        match try_step(&slice, &current) {
            Some(next) => {
                for &y in &next {
                    max_residual = max_residual.max(poly.eval(tau, y).norm());
                }
                min_separation = min_separation.min(min_pairwise_distance(&next));
                theta = target;
                current = next;
                paths.push(PathStep { theta, tau, roots: current.clone() });
                h = (2.0 * h).min(nominal);
            }
            None => {
                h *= 0.5;
                if h < floor {
                    return Err(Error::LoopTooCloseToBranchPoint);
                }
            }
        }
    }

    let n = base_roots.len();
    let mut images = Vec::with_capacity(n);
    for end in &current {
        let mut d: Vec<(f64, usize)> = base_roots
            .iter()
            .enumerate()
            .map(|(j, b)| ((end - b).norm(), j))
            .collect();
        d.sort_by(|a, b| a.0.total_cmp(&b.0));
        if n > 1 {
            let margin = d[1].0 / d[0].0.max(f64::MIN_POSITIVE);
            if margin < MATCH_MARGIN {
                return Err(Error::AmbiguousMatching { margin });
            }
        }
        images.push(d[0].1);
    }
    let mut hit = vec![false; n];
    for &j in &images {
        if core::mem::replace(&mut hit[j], true) {
            return Err(Error::AmbiguousMatching { margin: 0.0 });
        }
    }

    Ok(MonodromyReport {
        lp: *lp,
        base_roots,
        paths,
        permutation: permutation_matrix(&images),
        eigenvalues: permutation_eigenvalues(&images),
        max_residual,
        min_separation,
    })
}

pub fn continue_roots(cp: &CharacterPolynomial, lp: &Loop) -> Result<MonodromyReport> {
    continue_roots_on(&cp.poly().to_float(), lp)
}

#[derive(Clone, PartialEq, Debug)]
pub struct LocalSystemSummary {
    pub bad_set: BadSet,
    pub rank: usize,
    pub requested: Vec<MonodromyReport>,
    /// Small loops around every non-parabolic bad root with `|τ| < 10`.
    pub automatic: Vec<MonodromyReport>,
}

/// Distinct non-parabolic bad roots, deduplicated across provenances.
pub fn branch_candidates(bad: &BadSet) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for (z, prov) in bad.isolated_roots() {
        if prov == Provenance::Parabolic {
            continue;
        }
        if !out.iter().any(|w| (w - z).norm() < 1e-8) {
            out.push(z);
        }
    }
    sort_roots(&mut out);
    out
}

pub fn local_system_report(
    cp: &CharacterPolynomial,
    delta: &AlexanderPolynomial,
    loops: &[Loop],
) -> Result<LocalSystemSummary> {
    let bad = bad_set(cp, delta)?;
    let all_bad: Vec<Complex64> = bad.isolated_roots().map(|(z, _)| z).collect();
    let float = cp.poly().to_float();

    let mut requested = Vec::with_capacity(loops.len());
    for lp in loops {
        lp.check_clear_of(&all_bad)?;
        requested.push(continue_roots_on(&float, lp)?);
    }

    let mut automatic = Vec::new();
    for center in branch_candidates(&bad).into_iter().filter(|z| z.norm() < 10.0) {
        let nearest = all_bad
            .iter()
            .map(|z| (z - center).norm())
            .filter(|&d| d > 1e-8)
            .fold(f64::INFINITY, f64::min);
        let radius = 0.1f64.min(0.4 * nearest);
        let lp = Loop::new(center, radius, 256)?;
        lp.check_clear_of(&all_bad)?;
        automatic.push(continue_roots_on(&float, &lp)?);
    }
    Ok(LocalSystemSummary {
        bad_set: bad,
        rank: cp.generic_y_degree(),
        requested,
        automatic,
    })
}

/// Shortest signed angle helper for path plotting: `θ` rescaled to `[0, 1]`.
pub fn normalized_angle(theta: f64) -> f64 {
    theta / (2.0 * PI)
}
