//! Wall relations, curve classes, Mori and nef cones, and the ampleness /
//! Fano tests for complete simplicial fans.
//!
//! Every wall of a simplicial fan carries a unique primitive relation among
//! the n+1 rays of its two cones, normalized to be positive on the two
//! off-wall rays. Pairing divisors against these relations decides nef and
//! ample; the cone they span in the dual of the class group is the Mori
//! cone, and its dual is the nef cone.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::{extreme_rays_of_hrep, Cone};
use crate::divisor::{class_group, ClassGroup, ToricDivisor};
use crate::error::{Result, ToricError};
use crate::fan::{Fan, Wall};
use crate::matrix::{dot, kernel_basis, rank_of_rows, IntMatrix};

/// The primitive relation `Σ a_ρ v_ρ = 0` attached to a wall, with
/// positive coefficients on the two off-wall rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallRelation {
    pub wall: Wall,
    /// One coefficient per fan ray; supported on the two adjacent cones.
    pub coefficients: Vec<BigInt>,
}

impl WallRelation {
    /// `D · C` for the curve class of this wall.
    pub fn pair(&self, divisor: &ToricDivisor) -> BigInt {
        dot(&self.coefficients, divisor.coefficients())
    }
}

/// A wall curve class expressed in the dual of the free part of `Cl`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub wall: Wall,
    pub pairing: Vec<BigInt>,
    pub coords: Vec<BigInt>,
}

fn require_simplicial(fan: &Fan) -> Result<()> {
    for (i, set) in fan.max_cones().iter().enumerate() {
        if set.len() != fan.cone(i).dim() {
            return Err(ToricError::NotSimplicial(i));
        }
    }
    Ok(())
}

fn require_complete_simplicial(fan: &Fan) -> Result<()> {
    if !fan.is_complete() {
        return Err(ToricError::NotComplete);
    }
    require_simplicial(fan)
}

/// The unique normalized relation across a wall of a simplicial fan with
/// full-dimensional max cones. Completeness is not required, so this also
/// serves the local models.
pub fn wall_relation(fan: &Fan, wall: &Wall) -> Result<WallRelation> {
    require_simplicial(fan)?;
    let set_a = &fan.max_cones()[wall.cone_a];
    let set_b = &fan.max_cones()[wall.cone_b];
    let mut support: Vec<usize> = set_a.clone();
    for &r in set_b {
        if !support.contains(&r) {
            support.push(r);
        }
    }
    support.sort_unstable();
    if support.len() != fan.ambient_rank() + 1 {
        return Err(ToricError::InvalidRelation(format!(
            "wall carries {} rays, expected {}",
            support.len(),
            fan.ambient_rank() + 1
        )));
    }
    // Kernel of the n x (n+1) matrix whose columns are the support rays.
    let cols: Vec<Vec<BigInt>> = support.iter().map(|&r| fan.ray(r).to_vec()).collect();
    let kernel = kernel_basis(&IntMatrix::from_cols(&cols))?;
    if kernel.cols() != 1 {
        return Err(ToricError::InvalidRelation(
            "wall rays admit more than one relation".into(),
        ));
    }
    let mut rel = kernel.col(0);
    let off_a = set_a
        .iter()
        .find(|r| !wall.face_rays.contains(r))
        .copied()
        .expect("simplicial cone exceeds its facet by one ray");
    let pos = support.iter().position(|&r| r == off_a).unwrap();
    if rel[pos].is_negative() {
        rel = rel.iter().map(|x| -x.clone()).collect();
    }
    let off_b = set_b
        .iter()
        .find(|r| !wall.face_rays.contains(r))
        .copied()
        .expect("simplicial cone exceeds its facet by one ray");
    let pos_b = support.iter().position(|&r| r == off_b).unwrap();
    debug_assert!(rel[pos_b].is_positive(), "off-wall coefficients share a sign");

    let mut coefficients = vec![BigInt::zero(); fan.ray_count()];
    for (k, &r) in support.iter().enumerate() {
        coefficients[r] = rel[k].clone();
    }
    Ok(WallRelation { wall: wall.clone(), coefficients })
}

/// All wall relations of the fan, in wall order.
pub fn wall_relations(fan: &Fan) -> Result<Vec<WallRelation>> {
    fan.walls()?
        .iter()
        .map(|w| wall_relation(fan, w))
        .collect()
}

/// The Mori cone: the cone in curve-class space spanned by all wall classes.
#[derive(Debug, Clone)]
pub struct MoriCone {
    pub cone: Cone,
    pub classes: Vec<CurveClass>,
}

pub fn mori_cone(fan: &Fan) -> Result<MoriCone> {
    require_complete_simplicial(fan)?;
    let cl = class_group(fan)?;
    mori_cone_with(fan, &cl)
}

fn mori_cone_with(fan: &Fan, cl: &ClassGroup) -> Result<MoriCone> {
    let mut classes = Vec::new();
    for rel in wall_relations(fan)? {
        let coords = cl.functional_coords(&rel.coefficients);
        classes.push(CurveClass { wall: rel.wall, pairing: rel.coefficients, coords });
    }
    let rays: Vec<Vec<BigInt>> = classes.iter().map(|c| c.coords.clone()).collect();
    let cone = Cone::from_rays(cl.free_rank(), &rays)?;
    Ok(MoriCone { cone, classes })
}

/// The nef cone in `Cl ⊗ Q`, with an integral divisor representative for
/// each extreme ray.
#[derive(Debug, Clone)]
pub struct NefCone {
    pub cone: Cone,
    /// Divisor coefficient vectors, one per extreme ray of `cone`.
    pub generator_divisors: Vec<Vec<BigInt>>,
}

pub fn nef_cone(fan: &Fan) -> Result<NefCone> {
    require_complete_simplicial(fan)?;
    let cl = class_group(fan)?;
    let mori = mori_cone_with(fan, &cl)?;
    let cone = mori.cone.dual();
    let generator_divisors = cone
        .rays()
        .iter()
        .map(|y| cl.divisor_with_free_class(y))
        .collect();
    Ok(NefCone { cone, generator_divisors })
}

/// Positivity of a divisor against every wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    Ample,
    NefNotAmple,
    NotNef,
}

impl Positivity {
    pub fn name(&self) -> &'static str {
        match self {
            Positivity::Ample => "Ample",
            Positivity::NefNotAmple => "NefNotAmple",
            Positivity::NotNef => "NotNef",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PositivityReport {
    pub verdict: Positivity,
    /// A wall witnessing the verdict: negative pairing for `NotNef`, zero
    /// pairing for `NefNotAmple`.
    pub witness: Option<(Wall, BigInt)>,
}

pub fn positivity(fan: &Fan, divisor: &ToricDivisor) -> Result<PositivityReport> {
    require_complete_simplicial(fan)?;
    let mut zero_witness = None;
    for rel in wall_relations(fan)? {
        let value = rel.pair(divisor);
        if value.is_negative() {
            return Ok(PositivityReport {
                verdict: Positivity::NotNef,
                witness: Some((rel.wall, value)),
            });
        }
        if value.is_zero() && zero_witness.is_none() {
            zero_witness = Some((rel.wall, value));
        }
    }
    Ok(match zero_witness {
        Some(w) => PositivityReport { verdict: Positivity::NefNotAmple, witness: Some(w) },
        None => PositivityReport { verdict: Positivity::Ample, witness: None },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanoClass {
    Fano,
    WeakFano,
    Neither,
}

impl FanoClass {
    pub fn name(&self) -> &'static str {
        match self {
            FanoClass::Fano => "Fano",
            FanoClass::WeakFano => "WeakFano",
            FanoClass::Neither => "Neither",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FanoReport {
    pub status: FanoClass,
    /// Vertices of `{m : <m, v_ρ> >= -1}`, sorted.
    pub polytope_vertices: Vec<Vec<BigRational>>,
}

/// Vertices of the polytope `{m : <m, v_ρ> >= -c_ρ}` for a divisor with
/// coefficients `c`. Bounded for complete fans.
fn divisor_polytope_vertices(fan: &Fan, coeffs: &[BigInt]) -> Vec<Vec<BigRational>> {
    let n = fan.ambient_rank();
    // Homogenize: {(m, t) : <m, v_ρ> + c_ρ t >= 0, t >= 0}; vertices are the
    // rays with t > 0.
    let mut ineqs: Vec<Vec<BigInt>> = Vec::with_capacity(fan.ray_count() + 1);
    for (v, c) in fan.rays().iter().zip(coeffs) {
        let mut row = v.clone();
        row.push(c.clone());
        ineqs.push(row);
    }
    let mut t_row = vec![BigInt::zero(); n];
    t_row.push(BigInt::one());
    ineqs.push(t_row);
    let (lineality, rays) = extreme_rays_of_hrep(n + 1, &ineqs, &[]);
    debug_assert!(lineality.is_empty(), "polytope cone of a spanning fan is pointed");
    let mut vertices: Vec<Vec<BigRational>> = rays
        .iter()
        .filter(|r| r[n].is_positive())
        .map(|r| {
            let t = BigRational::from(r[n].clone());
            (0..n)
                .map(|j| BigRational::from(r[j].clone()) / t.clone())
                .collect()
        })
        .collect();
    vertices.sort();
    vertices
}

fn polytope_dim(vertices: &[Vec<BigRational>]) -> usize {
    if vertices.is_empty() {
        return 0;
    }
    let base = &vertices[0];
    let diffs: Vec<Vec<BigInt>> = vertices[1..]
        .iter()
        .map(|v| {
            // Scale away denominators; rank is unaffected.
            let mut den = BigInt::one();
            for (a, b) in v.iter().zip(base) {
                let d = (a - b).denom().clone();
                den = num_integer::lcm(den, d);
            }
            v.iter()
                .zip(base)
                .map(|(a, b)| ((a - b) * BigRational::from(den.clone())).to_integer())
                .collect()
        })
        .collect();
    rank_of_rows(&diffs)
}

/// Fano / weak Fano / neither, by exact wall evaluations of the
/// anticanonical divisor plus the dimension of its polytope.
pub fn fano_status(fan: &Fan) -> Result<FanoReport> {
    require_complete_simplicial(fan)?;
    let anti = ToricDivisor::anticanonical(fan);
    let pos = positivity(fan, &anti)?;
    let polytope_vertices =
        divisor_polytope_vertices(fan, anti.coefficients());
    let status = match pos.verdict {
        Positivity::Ample => FanoClass::Fano,
        Positivity::NefNotAmple => {
            if polytope_dim(&polytope_vertices) == fan.ambient_rank() {
                FanoClass::WeakFano
            } else {
                FanoClass::Neither
            }
        }
        Positivity::NotNef => FanoClass::Neither,
    };
    Ok(FanoReport { status, polytope_vertices })
}
