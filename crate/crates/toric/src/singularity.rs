//! Discrepancy-based singularity classification for toric varieties, plus
//! the age test for cyclic quotient singularities.
//!
//! For each max cone the canonical class is controlled by the covector
//! `m` with `<m, v> = 1` on the cone's rays. Terminality and canonicity are
//! decided by the lattice points of `conv({0} ∪ rays)` against the level of
//! `m`; the quotient-singularity path computes exact age sums instead, and
//! the two must agree on cones of quotient type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cone::{hull_lattice_points, ConeRegularity};
use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::matrix::{integral_level_solve, IntMatrix};

/// Level-1 supporting data for one max cone: the rational covector `m` with
/// `<m, v> = 1` on all rays, and the least positive integer making it
/// integral (the local Gorenstein index).
#[derive(Debug, Clone)]
pub struct ConeCanonicalData {
    pub level_covector: Vec<BigRational>,
    pub index: BigInt,
}

/// Q-Gorenstein data for a whole fan.
#[derive(Debug, Clone)]
pub struct QGorensteinData {
    pub cones: Vec<ConeCanonicalData>,
    /// lcm of the per-cone indices; 1 means Gorenstein.
    pub gorenstein_index: BigInt,
}

/// Nested singularity classes, weakest first so that `>=` means
/// "at least as good as".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SingularityType {
    KltOnly,
    Canonical,
    Terminal,
    Smooth,
}

impl SingularityType {
    pub fn name(&self) -> &'static str {
        match self {
            SingularityType::Smooth => "Smooth",
            SingularityType::Terminal => "Terminal",
            SingularityType::Canonical => "Canonical",
            SingularityType::KltOnly => "KltOnly",
        }
    }
}

/// Classification report for a fan: the strongest class that holds, the
/// Gorenstein index, and Q-factoriality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityClass {
    pub class: SingularityType,
    pub gorenstein_index: BigInt,
    pub q_factorial: bool,
}

/// Solve for the level-1 covector on every max cone.
pub fn q_gorenstein_data(fan: &Fan) -> Result<QGorensteinData> {
    let mut cones = Vec::with_capacity(fan.max_cones().len());
    let mut gorenstein_index = BigInt::one();
    for (i, set) in fan.max_cones().iter().enumerate() {
        let rows: Vec<Vec<BigInt>> = set.iter().map(|&r| fan.ray(r).to_vec()).collect();
        let ones = vec![BigInt::one(); rows.len()];
        let matrix = IntMatrix::from_rows(&rows);
        let Some((r, u)) = integral_level_solve(&matrix, &ones) else {
            return Err(ToricError::NotQGorenstein(i));
        };
        let level_covector: Vec<BigRational> = u
            .iter()
            .map(|x| BigRational::new(x.clone(), r.clone()))
            .collect();
        gorenstein_index = num_integer::lcm(gorenstein_index, r.clone());
        cones.push(ConeCanonicalData { level_covector, index: r });
    }
    Ok(QGorensteinData { cones, gorenstein_index })
}

fn rational_dot(m: &[BigRational], p: &[BigInt]) -> BigRational {
    m.iter()
        .zip(p)
        .map(|(a, b)| a * BigRational::from(b.clone()))
        .sum()
}

/// Classify one cone given its level covector: lattice points of the hull
/// of `{0} ∪ rays` decide terminal/canonical.
fn classify_cone(
    rays: &[Vec<BigInt>],
    regularity: &ConeRegularity,
    m: &[BigRational],
) -> Result<SingularityType> {
    if regularity.is_smooth() {
        return Ok(SingularityType::Smooth);
    }
    let points = hull_lattice_points(rays)?;
    let mut class = SingularityType::Terminal;
    for p in &points {
        if p.iter().all(Zero::is_zero) || rays.contains(p) {
            continue;
        }
        let level = rational_dot(m, p);
        if level < BigRational::one() {
            return Ok(SingularityType::KltOnly);
        }
        // Extra lattice point at level exactly 1.
        class = SingularityType::Canonical;
    }
    Ok(class)
}

/// Strongest singularity class of the toric variety of `fan`, together with
/// the Gorenstein index and Q-factoriality.
pub fn classify(fan: &Fan) -> Result<SingularityClass> {
    let data = q_gorenstein_data(fan)?;
    let mut class = SingularityType::Smooth;
    let mut q_factorial = true;
    for (i, set) in fan.max_cones().iter().enumerate() {
        let rays: Vec<Vec<BigInt>> = set.iter().map(|&r| fan.ray(r).to_vec()).collect();
        let regularity = fan.cone(i).regularity();
        if !regularity.is_simplicial() {
            q_factorial = false;
        }
        let cone_class = classify_cone(&rays, &regularity, &data.cones[i].level_covector)?;
        class = class.min(cone_class);
    }
    Ok(SingularityClass { class, gorenstein_index: data.gorenstein_index, q_factorial })
}

/// A cyclic quotient `(1/r)(a_1, ..., a_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicQuotient {
    order: u64,
    weights: Vec<u64>,
}

impl CyclicQuotient {
    pub fn new(order: u64, weights: &[u64]) -> Result<CyclicQuotient> {
        if order == 0 {
            return Err(ToricError::IllFormedQuotient("order must be positive".into()));
        }
        if order > 1_000_000 {
            return Err(ToricError::QuotientOrderTooLarge(order));
        }
        if weights.is_empty() {
            return Err(ToricError::IllFormedQuotient("no weights given".into()));
        }
        let weights: Vec<u64> = weights.iter().map(|&a| a % order).collect();
        let mut g = order;
        for &a in &weights {
            g = num_integer::gcd(g, a);
        }
        if g != 1 {
            return Err(ToricError::IllFormedQuotient(format!(
                "gcd of order and weights is {g}, not 1"
            )));
        }
        Ok(CyclicQuotient { order, weights })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// The group element `k` acts with weights `k·a_i mod r`; true when no
    /// nontrivial element fixes a hyperplane pointwise (i.e. no element has
    /// exactly one nonzero weight).
    pub fn has_no_quasi_reflections(&self) -> bool {
        let r = self.order;
        (1..r).all(|k| {
            let nonzero = self
                .weights
                .iter()
                .filter(|&&a| !(k as u128 * a as u128).is_multiple_of(r as u128))
                .count();
            nonzero != 1
        })
    }
}

/// Outcome of the age test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientClass {
    Terminal,
    Canonical,
    Neither,
}

impl QuotientClass {
    pub fn name(&self) -> &'static str {
        match self {
            QuotientClass::Terminal => "Terminal",
            QuotientClass::Canonical => "Canonical",
            QuotientClass::Neither => "Neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReidTaiResult {
    pub class: QuotientClass,
    pub gorenstein: bool,
    /// Minimum age over the nontrivial group elements, as (numerator, r).
    pub min_age: Option<(BigInt, BigInt)>,
}

/// Age test for a cyclic quotient: the sum of fractional parts
/// `Σ frac(k·a_i/r)` must exceed 1 (terminal) or reach 1 (canonical) for
/// every `k = 1..r-1`.
pub fn reid_tai(q: &CyclicQuotient) -> ReidTaiResult {
    let r = q.order() as u128;
    let weight_sum: u128 = q.weights().iter().map(|&a| a as u128).sum();
    let gorenstein = weight_sum.is_multiple_of(r);
    if r == 1 {
        return ReidTaiResult { class: QuotientClass::Terminal, gorenstein, min_age: None };
    }
    let mut min_scaled_age: Option<u128> = None;
    for k in 1..r {
        let scaled_age: u128 = q.weights().iter().map(|&a| (k * a as u128) % r).sum();
        min_scaled_age = Some(match min_scaled_age {
            Some(m) => m.min(scaled_age),
            None => scaled_age,
        });
    }
    let min = min_scaled_age.unwrap();
    let class = if min > r {
        QuotientClass::Terminal
    } else if min == r {
        QuotientClass::Canonical
    } else {
        QuotientClass::Neither
    };
    ReidTaiResult {
        class,
        gorenstein,
        min_age: Some((BigInt::from(min), BigInt::from(r))),
    }
}

/// The fan-level class corresponding to a quotient class, for agreement
/// checks between the two tests.
pub fn quotient_class_as_singularity(qc: QuotientClass) -> SingularityType {
    match qc {
        QuotientClass::Terminal => SingularityType::Terminal,
        QuotientClass::Canonical => SingularityType::Canonical,
        QuotientClass::Neither => SingularityType::KltOnly,
    }
}
