//! Local birational models from a single integer relation among rays.
//!
//! A relation `Σ a_i v_i = Σ b_j w_j` with positive weights on n+2 = (p+q)
//! primitive rays spanning rank n defines two simplicial subdivisions of the
//! cone over all rays: dropping one positive ray at a time, or one negative
//! ray. For flipping relations (p, q >= 2) these are the two sides of a
//! local flip; the contracted loci are weighted projective spaces with the
//! opposite side's weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cone::ConeRegularity;
use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::matrix::{is_zero_vec, primitivize, rank_of_rows};
use crate::nef::wall_relations;
use crate::singularity::{classify, SingularityClass, SingularityType};

/// An integer relation `Σ a_i v_i = Σ b_j w_j` among primitive rays, with
/// all of `v, w` together spanning the ambient space with exactly one
/// relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReidRelation {
    ambient_rank: usize,
    positive_rays: Vec<Vec<BigInt>>,
    positive_weights: Vec<BigInt>,
    negative_rays: Vec<Vec<BigInt>>,
    negative_weights: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModificationType {
    Flipping,
    Divisorial,
    FiberType,
}

impl ModificationType {
    pub fn name(&self) -> &'static str {
        match self {
            ModificationType::Flipping => "Flipping",
            ModificationType::Divisorial => "Divisorial",
            ModificationType::FiberType => "FiberType",
        }
    }
}

/// Which side of the modification a query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

impl ReidRelation {
    pub fn new(
        ambient_rank: usize,
        positive: Vec<(Vec<BigInt>, BigInt)>,
        negative: Vec<(Vec<BigInt>, BigInt)>,
    ) -> Result<ReidRelation> {
        let total = positive.len() + negative.len();
        if total != ambient_rank + 1 {
            return Err(ToricError::InvalidRelation(format!(
                "{total} rays in rank {ambient_rank}; need rank + 1"
            )));
        }
        let mut all_rays: Vec<Vec<BigInt>> = Vec::with_capacity(total);
        for (ray, weight) in positive.iter().chain(negative.iter()) {
            if ray.len() != ambient_rank {
                return Err(ToricError::InvalidRelation("ray length mismatch".into()));
            }
            if is_zero_vec(ray) {
                return Err(ToricError::InvalidRelation("zero ray".into()));
            }
            if primitivize(ray)? != *ray {
                return Err(ToricError::InvalidRelation(format!(
                    "ray {ray:?} is not primitive"
                )));
            }
            if !weight.is_positive() {
                return Err(ToricError::InvalidRelation("weights must be positive".into()));
            }
            if all_rays.contains(ray) {
                return Err(ToricError::InvalidRelation(format!(
                    "ray {ray:?} repeats"
                )));
            }
            all_rays.push(ray.clone());
        }
        // The relation must hold exactly.
        let mut balance = vec![BigInt::zero(); ambient_rank];
        for (ray, weight) in &positive {
            for (k, x) in ray.iter().enumerate() {
                balance[k] += weight * x;
            }
        }
        for (ray, weight) in &negative {
            for (k, x) in ray.iter().enumerate() {
                balance[k] -= weight * x;
            }
        }
        if !is_zero_vec(&balance) {
            return Err(ToricError::InvalidRelation(
                "weighted sums of the two sides differ".into(),
            ));
        }
        if rank_of_rows(&all_rays) != ambient_rank {
            return Err(ToricError::InvalidRelation(
                "rays do not span the ambient space".into(),
            ));
        }
        let (positive_rays, positive_weights) = positive.into_iter().unzip();
        let (negative_rays, negative_weights) = negative.into_iter().unzip();
        Ok(ReidRelation {
            ambient_rank,
            positive_rays,
            positive_weights,
            negative_rays,
            negative_weights,
        })
    }

    /// Canonical model from weights alone: the first p+q-1 rays are standard
    /// basis vectors and the last ray is solved from the relation.
    pub fn from_weights(positive: &[u64], negative: &[u64]) -> Result<ReidRelation> {
        let p = positive.len();
        let q = negative.len();
        if p + q < 2 {
            return Err(ToricError::InvalidRelation(
                "need at least two rays in total".into(),
            ));
        }
        if positive.iter().chain(negative).any(|&w| w == 0) {
            return Err(ToricError::InvalidRelation("weights must be positive".into()));
        }
        let n = p + q - 1;
        let basis = |i: usize| -> Vec<BigInt> {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            e
        };
        // Last ray from the relation: weight_last * last = Σ a_i e_i - Σ b_j e_j
        // over the basis rays (sign depending on the side of the last ray).
        let mut acc = vec![BigInt::zero(); n];
        for (i, &a) in positive.iter().enumerate().take(n.min(p)) {
            acc[i] += BigInt::from(a);
        }
        for (j, &b) in negative.iter().enumerate() {
            if p + j < n {
                acc[p + j] -= BigInt::from(b);
            }
        }
        let last_weight = BigInt::from(if q > 0 { negative[q - 1] } else { positive[p - 1] });
        if q == 0 {
            // Fiber-type: last positive ray satisfies a_p * v_p = -Σ earlier.
            for x in acc.iter_mut() {
                *x = -x.clone();
            }
        }
        let mut last = Vec::with_capacity(n);
        for x in &acc {
            let (quot, rem) = x.div_rem(&last_weight);
            if !rem.is_zero() {
                return Err(ToricError::InvalidRelation(format!(
                    "weights admit no integral canonical model: {x} not divisible by {last_weight}"
                )));
            }
            last.push(quot);
        }
        if is_zero_vec(&last) {
            return Err(ToricError::InvalidRelation(
                "derived ray is zero; weights are degenerate".into(),
            ));
        }
        let mut positive_pairs: Vec<(Vec<BigInt>, BigInt)> = (0..p.min(n))
            .map(|i| (basis(i), BigInt::from(positive[i])))
            .collect();
        let mut negative_pairs: Vec<(Vec<BigInt>, BigInt)> = (0..q)
            .filter(|&j| p + j < n)
            .map(|j| (basis(p + j), BigInt::from(negative[j])))
            .collect();
        if q > 0 {
            negative_pairs.push((last, last_weight));
        } else {
            positive_pairs.push((last, last_weight));
        }
        ReidRelation::new(n, positive_pairs, negative_pairs)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn positive_count(&self) -> usize {
        self.positive_rays.len()
    }

    pub fn negative_count(&self) -> usize {
        self.negative_rays.len()
    }

    pub fn positive_weights(&self) -> &[BigInt] {
        &self.positive_weights
    }

    pub fn negative_weights(&self) -> &[BigInt] {
        &self.negative_weights
    }

    /// All rays, positives first, in relation order.
    pub fn all_rays(&self) -> Vec<Vec<BigInt>> {
        let mut rays = self.positive_rays.clone();
        rays.extend(self.negative_rays.iter().cloned());
        rays
    }

    /// Relation coefficients over `all_rays` order: `+a` then `-b`.
    pub fn signed_coefficients(&self) -> Vec<BigInt> {
        let mut coeffs = self.positive_weights.clone();
        coeffs.extend(self.negative_weights.iter().map(|b| -b.clone()));
        coeffs
    }

    pub fn modification_type(&self) -> ModificationType {
        let p = self.positive_count();
        let q = self.negative_count();
        if p == 0 || q == 0 {
            ModificationType::FiberType
        } else if p >= 2 && q >= 2 {
            ModificationType::Flipping
        } else {
            ModificationType::Divisorial
        }
    }

    /// `Σ a_i - Σ b_j`: the anticanonical degree of the contracted curve
    /// class; positive means the X-side contraction is K-negative.
    pub fn k_degree(&self) -> BigInt {
        let pos: BigInt = self.positive_weights.iter().sum();
        let neg: BigInt = self.negative_weights.iter().sum();
        pos - neg
    }
}

/// Well-formed normalization of weighted projective weights, then sort.
///
/// Two reduction moves: divide every weight by the overall gcd, and divide
/// all weights but one by their common factor (valid once the overall gcd
/// is 1, which makes that factor coprime to the kept weight).
pub fn well_formed_weights(weights: &[BigInt]) -> Vec<BigInt> {
    let mut w = reduce_weights(weights);
    w.sort();
    w
}

/// Well-formedness reduction preserving coordinate order.
pub fn reduce_weights(weights: &[BigInt]) -> Vec<BigInt> {
    let mut w: Vec<BigInt> = weights.to_vec();
    if w.len() == 1 {
        return vec![BigInt::one()];
    }
    loop {
        let mut changed = false;
        let total = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if total > BigInt::one() {
            for x in w.iter_mut() {
                *x = &*x / &total;
            }
            changed = true;
        }
        for skip in 0..w.len() {
            let mut g = BigInt::zero();
            for (i, x) in w.iter().enumerate() {
                if i != skip {
                    g = g.gcd(x);
                }
            }
            if g > BigInt::one() {
                for (i, x) in w.iter_mut().enumerate() {
                    if i != skip {
                        *x = &*x / &g;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    w
}

/// Weighted projective label for a contracted locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusLabel {
    /// Weights as they appear in the relation.
    pub raw_weights: Vec<BigInt>,
    /// Well-formed normalization, sorted.
    pub weights: Vec<BigInt>,
    pub dim: usize,
}

impl LocusLabel {
    fn from_weights(raw: &[BigInt]) -> LocusLabel {
        LocusLabel {
            raw_weights: raw.to_vec(),
            weights: well_formed_weights(raw),
            dim: raw.len().saturating_sub(1),
        }
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        format!("P({})", parts.join(","))
    }
}

/// The two simplicial subdivisions of the cone over all relation rays.
pub fn flip_fans(rel: &ReidRelation) -> Result<(Fan, Fan)> {
    if rel.modification_type() != ModificationType::Flipping {
        return Err(ToricError::NotFlipping);
    }
    let rays = rel.all_rays();
    let total = rays.len();
    let p = rel.positive_count();
    let fan_x = Fan::new(
        rel.ambient_rank,
        rays.clone(),
        (0..p)
            .map(|drop| (0..total).filter(|&k| k != drop).collect())
            .collect(),
    )?;
    let fan_y = Fan::new(
        rel.ambient_rank,
        rays,
        (p..total)
            .map(|drop| (0..total).filter(|&k| k != drop).collect())
            .collect(),
    )?;
    Ok((fan_x, fan_y))
}

/// The weighted projective space contracted on the given side: positive
/// weights on the X side, negative weights on the Y side.
pub fn contracted_locus(rel: &ReidRelation, side: Side) -> Result<LocusLabel> {
    if rel.modification_type() != ModificationType::Flipping {
        return Err(ToricError::NotFlipping);
    }
    Ok(match side {
        Side::X => LocusLabel::from_weights(&rel.positive_weights),
        Side::Y => LocusLabel::from_weights(&rel.negative_weights),
    })
}

/// A divisor separating the two sides: nonnegative on every wall of one fan
/// and strictly negative on some wall of the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymmetryCertificate {
    /// Coefficients over the relation's rays (positives first).
    pub divisor: Vec<BigInt>,
    pub x_wall_values: Vec<BigInt>,
    pub y_wall_values: Vec<BigInt>,
}

/// Full analysis of a flipping relation.
#[derive(Debug, Clone)]
pub struct FlipReport {
    pub modification: ModificationType,
    pub k_degree: BigInt,
    pub x_locus: LocusLabel,
    pub y_locus: LocusLabel,
    pub x_class: SingularityClass,
    pub y_class: SingularityClass,
    pub x_cone_regularities: Vec<ConeRegularity>,
    pub y_cone_regularities: Vec<ConeRegularity>,
    pub certificate: Option<AsymmetryCertificate>,
}

impl FlipReport {
    pub fn both_sides_terminal(&self) -> bool {
        self.x_class.class >= SingularityType::Terminal
            && self.y_class.class >= SingularityType::Terminal
    }
}

fn divisor_wall_values(fan: &Fan, coeffs: &[BigInt]) -> Result<Vec<BigInt>> {
    Ok(wall_relations(fan)?
        .iter()
        .map(|rel| crate::matrix::dot(&rel.coefficients, coeffs))
        .collect())
}

/// Analyze a flipping relation: loci, per-side singularity classes, the
/// K-degree of the contracted curve class, and an asymmetry certificate
/// checked against the actual wall relations of both fans.
pub fn analyze_flip(rel: &ReidRelation) -> Result<FlipReport> {
    let (fan_x, fan_y) = flip_fans(rel)?;
    let x_class = classify(&fan_x)?;
    let y_class = classify(&fan_y)?;
    let x_cone_regularities = (0..fan_x.max_cones().len())
        .map(|i| fan_x.cone(i).regularity())
        .collect();
    let y_cone_regularities = (0..fan_y.max_cones().len())
        .map(|i| fan_y.cone(i).regularity())
        .collect();

    // Candidate certificates: the relation itself with either sign.
    let signed = rel.signed_coefficients();
    let negated: Vec<BigInt> = signed.iter().map(|x| -x.clone()).collect();
    let mut certificate = None;
    for cand in [negated, signed] {
        let x_vals = divisor_wall_values(&fan_x, &cand)?;
        let y_vals = divisor_wall_values(&fan_y, &cand)?;
        let y_ok = y_vals.iter().all(|v| !v.is_negative());
        let x_bad = x_vals.iter().any(|v| v.is_negative());
        if y_ok && x_bad {
            certificate = Some(AsymmetryCertificate {
                divisor: cand,
                x_wall_values: x_vals,
                y_wall_values: y_vals,
            });
            break;
        }
    }

    Ok(FlipReport {
        modification: rel.modification_type(),
        k_degree: rel.k_degree(),
        x_locus: contracted_locus(rel, Side::X)?,
        y_locus: contracted_locus(rel, Side::Y)?,
        x_class,
        y_class,
        x_cone_regularities,
        y_cone_regularities,
        certificate,
    })
}
