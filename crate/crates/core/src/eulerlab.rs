//! Euler characteristics of complex strata, constructible functions and the
//! zero-dimensional Behrend function.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exactalg::{squarefree_decomposition, Field, GaussianRational, UniPoly};
use crate::tracker::all_roots;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Stratum {
    Points(u64),
    /// Genus `g` surface with `k` punctures; `ℂ` is `(0, 1)`, `ℂ*` is `(0, 2)`.
    PuncturedSurface { genus: u64, punctures: u64 },
    Product(Vec<Stratum>),
}

impl Stratum {
    pub fn complex_line() -> Self {
        Self::PuncturedSurface { genus: 0, punctures: 1 }
    }

    pub fn cstar() -> Self {
        Self::PuncturedSurface { genus: 0, punctures: 2 }
    }

    pub fn chi(&self) -> i64 {
        chi(self)
    }
}

pub fn chi(stratum: &Stratum) -> i64 {
    match stratum {
        Stratum::Points(n) => *n as i64,
        Stratum::PuncturedSurface { genus, punctures } => 2 - 2 * *genus as i64 - *punctures as i64,
        Stratum::Product(factors) => factors.iter().map(chi).product(),
    }
}

/// Ranks of `H^i_c(S; Q)`, `i = 0, 1, …`.
pub fn compact_support_betti(stratum: &Stratum) -> Vec<u64> {
    match stratum {
        Stratum::Points(n) => vec![*n],
        Stratum::PuncturedSurface { genus, punctures: 0 } => vec![1, 2 * genus, 1],
        Stratum::PuncturedSurface { genus, punctures } => vec![0, 2 * genus + punctures - 1, 1],
        // Künneth for compact supports.
        Stratum::Product(factors) => factors.iter().fold(vec![1], |acc, f| {
            let b = compact_support_betti(f);
            let mut out = vec![0; acc.len() + b.len() - 1];
            for (i, x) in acc.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        }),
    }
}

pub fn chi_compact_support(stratum: &Stratum) -> i64 {
    compact_support_betti(stratum)
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

/// Integer-valued function, constant on each stratum of a disjoint union.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ConstructibleFn {
    pub parts: Vec<(Stratum, i64)>,
}

/// `χ(X, f) = Σ n · χ(f⁻¹(n))`, cross-checked against `Σ_parts value · χ`.
pub fn chi_weighted(f: &ConstructibleFn) -> Result<i64> {
    let by_parts: i64 = f.parts.iter().map(|(s, v)| v * chi(s)).sum();
    let mut levels: BTreeMap<i64, i64> = BTreeMap::new();
    for (s, v) in &f.parts {
        *levels.entry(*v).or_insert(0) += chi(s);
    }
    let by_levels: i64 = levels.iter().map(|(n, c)| n * c).sum();
    if by_parts != by_levels {
        return Err(Error::AdditivityMismatch);
    }
    Ok(by_parts)
}

/// A point of a zero-dimensional scheme: exact when it is a rational
/// (Gaussian) root, otherwise a float approximation.
#[derive(Clone, PartialEq, Debug)]
pub enum Location {
    Exact(GaussianRational),
    Approx(Complex64),
}

impl Location {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Location::Exact(z) => z.to_complex(),
            Location::Approx(z) => *z,
        }
    }

    fn matches(&self, other: &Location) -> bool {
        match (self, other) {
            (Location::Exact(a), Location::Exact(b)) => a == b,
            _ => (self.to_complex() - other.to_complex()).norm() < EXCLUSION_TOLERANCE,
        }
    }
}

pub const EXCLUSION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, PartialEq, Debug)]
pub struct SchemePoint {
    pub location: Location,
    pub multiplicity: usize,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ZeroDimScheme {
    pub points: Vec<SchemePoint>,
    pub source_poly: UniPoly<GaussianRational>,
}

impl ZeroDimScheme {
    /// The roots of `p` with multiplicities from its squarefree
    /// decomposition.
    pub fn from_poly(p: &UniPoly<GaussianRational>) -> Result<Self> {
        let mut points = Vec::new();
        for part in squarefree_decomposition(p)? {
            match part.factor.degree() {
                Some(0) | None => continue,
                Some(1) => {
                    let c = part.factor.coeff(0) / part.factor.coeff(1);
                    points.push(SchemePoint { location: Location::Exact(-c), multiplicity: part.multiplicity });
                }
                Some(_) => {
                    for z in all_roots(&part.factor.to_complex())? {
                        points.push(SchemePoint { location: Location::Approx(z), multiplicity: part.multiplicity });
                    }
                }
            }
        }
        points.sort_by(|a, b| {
            let (x, y) = (a.location.to_complex(), b.location.to_complex());
            x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
        });
        Ok(Self { points, source_poly: p.clone() })
    }

    pub fn length(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct BehrendCount {
    pub total: i64,
    /// `(ν, excluded)` per point of the scheme, in order.
    pub per_point: Vec<(i64, bool)>,
}

/// `χ_B = Σ mult` over the points not excluded. At a fat point of length
/// `k` the Behrend function equals `k`.
pub fn behrend_zero_dim(s: &ZeroDimScheme, excluded: &[Location]) -> Result<BehrendCount> {
    let mut flags = vec![false; s.points.len()];
    for ex in excluded {
        let hits: Vec<usize> = (0..s.points.len()).filter(|&i| s.points[i].location.matches(ex)).collect();
        if hits.len() > 1 {
            return Err(Error::ExclusionCollision);
        }
        if let Some(&i) = hits.first() {
            flags[i] = true;
        }
    }
    let per_point: Vec<(i64, bool)> = s
        .points
        .iter()
        .zip(&flags)
        .map(|(p, &ex)| (p.multiplicity as i64, ex))
        .collect();
    let total = per_point.iter().filter(|(_, ex)| !ex).map(|(nu, _)| nu).sum();
    Ok(BehrendCount { total, per_point })
}

/// Behrend value of the fat point `crit(y^{k+1}/(k+1))` from the Milnor
/// fiber: counts the solutions of `y^{k+1}/(k+1) = ε·e^{iθ}` for `trials`
/// angles and returns `−(1 − count)`.
pub fn milnor_oracle(k: usize, epsilon: f64, trials: usize) -> Result<i64> {
    if k == 0 || k > 8 {
        return Err(Error::OutOfRange("milnor_oracle needs 1 ≤ k ≤ 8"));
    }
    if !(1e-6..=1e-2).contains(&epsilon) {
        return Err(Error::OutOfRange("milnor_oracle needs 1e-6 ≤ ε ≤ 1e-2"));
    }
    if trials == 0 {
        return Err(Error::OutOfRange("milnor_oracle needs at least one trial"));
    }
    let n = k + 1;
    // The fiber stays inside a Milnor ball of radius 1 around the origin.
    let ball = 1.0;
    for t in 0..trials {
        let theta = TAU * (t as f64 + 0.37) / trials as f64;
        let c = Complex64::from_polar(epsilon * n as f64, theta);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = -c;
        coeffs[n] = Complex64::new(1.0, 0.0);
        let roots = all_roots(&coeffs)?;
        let mut found = 0;
        for (i, z) in roots.iter().enumerate() {
            let residual = (z.powu(n as u32) - c).norm() / c.norm();
            let distinct = roots[..i].iter().all(|w| (w - z).norm() > 1e-12);
            if z.norm() < ball && residual < 1e-10 && distinct {
                found += 1;
            }
        }
        if found != n {
            return Err(Error::MilnorCountUnstable { expected: n, found });
        }
    }
    Ok(n as i64 - 1)
}

/// `y^k` over the Gaussian rationals.
pub fn fat_point(k: usize) -> UniPoly<GaussianRational> {
    UniPoly::monomial(GaussianRational::from_ints(1, 1, 0, 1), k)
}
