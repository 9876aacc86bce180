//! Divisor class group, Picard group, and Cartier/Q-Cartier tests, all via
//! exact cokernel computations on the ray pairing matrix.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::matrix::{
    cokernel_structure, dot, integral_level_solve, inverse_unimodular, lattice_intersection,
    smith_normal_form, solve_rational, AbelianGroupStructure, IntMatrix,
};
use num_rational::BigRational;

/// Torus-invariant Weil divisor: one integer coefficient per fan ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricDivisor {
    coefficients: Vec<BigInt>,
}

impl ToricDivisor {
    pub fn new(fan: &Fan, coefficients: Vec<BigInt>) -> Result<ToricDivisor> {
        if coefficients.len() != fan.ray_count() {
            return Err(ToricError::DivisorLengthMismatch {
                expected: fan.ray_count(),
                got: coefficients.len(),
            });
        }
        Ok(ToricDivisor { coefficients })
    }

    pub fn from_i64(fan: &Fan, coefficients: &[i64]) -> Result<ToricDivisor> {
        ToricDivisor::new(fan, coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The anticanonical divisor: all coefficients 1.
    pub fn anticanonical(fan: &Fan) -> ToricDivisor {
        ToricDivisor { coefficients: vec![BigInt::one(); fan.ray_count()] }
    }

    /// The divisor of the lattice covector `m`: coefficients `<m, v_ρ>`.
    pub fn principal(fan: &Fan, m: &[BigInt]) -> ToricDivisor {
        ToricDivisor {
            coefficients: fan.rays().iter().map(|v| dot(m, v)).collect(),
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }
}

/// Image of a divisor in the class group, in the fixed normal-form basis:
/// free coordinates plus torsion coordinates reduced modulo their factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DivisorClass {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl DivisorClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }
}

/// The divisor class group of a fan together with its projection map.
///
/// Computed as the cokernel of `M → Z^{rays}`, `m ↦ (<m, v_ρ>)_ρ`; the basis
/// is the normal-form one, with the sign of each free coordinate fixed so
/// that the first ray with nonzero class pairs positively.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    structure: AbelianGroupStructure,
    u: IntMatrix,
    u_inv: IntMatrix,
    torsion_rows: Vec<usize>,
    torsion_factors: Vec<BigInt>,
    free_rows: Vec<usize>,
    rank: usize,
}

impl ClassGroup {
    pub fn structure(&self) -> &AbelianGroupStructure {
        &self.structure
    }

    /// Class of a divisor in the fixed basis.
    pub fn class_of(&self, divisor: &ToricDivisor) -> DivisorClass {
        let y = self.u.mul_vec(divisor.coefficients());
        let free = self.free_rows.iter().map(|&i| y[i].clone()).collect();
        let torsion = self
            .torsion_rows
            .iter()
            .zip(&self.torsion_factors)
            .map(|(&i, d)| num_integer::Integer::mod_floor(&y[i], d))
            .collect();
        DivisorClass { free, torsion }
    }

    /// Classes of the ray divisors, in fan order.
    pub fn ray_classes(&self) -> Vec<DivisorClass> {
        let rays = self.u.cols();
        (0..rays)
            .map(|i| {
                let mut coeffs = vec![BigInt::zero(); rays];
                coeffs[i] = BigInt::one();
                self.class_of(&ToricDivisor { coefficients: coeffs })
            })
            .collect()
    }

    /// A divisor whose class has the given free coordinates and zero torsion.
    pub fn divisor_with_free_class(&self, free: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(free.len(), self.free_rows.len());
        let mut y = vec![BigInt::zero(); self.u.rows()];
        for (j, &i) in self.free_rows.iter().enumerate() {
            y[i] = free[j].clone();
        }
        self.u_inv.mul_vec(&y)
    }

    /// Coordinates, in the dual of the free part, of a functional
    /// `D ↦ Σ a_ρ d_ρ` that vanishes on principal divisors. Panics if the
    /// functional does not descend.
    pub fn functional_coords(&self, pairing: &[BigInt]) -> Vec<BigInt> {
        // a·d = a·U^{-1}·(U d), so the coordinates in the y-basis are
        // (U^{-1})^T · a; descent requires the entries at rank rows to vanish.
        let coords = self.u_inv.transpose().mul_vec(pairing);
        for (i, c) in coords.iter().enumerate().take(self.rank) {
            assert!(
                c.is_zero(),
                "functional does not vanish on principal divisors (row {i})"
            );
        }
        self.free_rows.iter().map(|&i| coords[i].clone()).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.structure.free_rank
    }
}

/// Class group of the fan; requires the rays to span the ambient space.
pub fn class_group(fan: &Fan) -> Result<ClassGroup> {
    let ray_matrix = IntMatrix::from_rows(fan.rays());
    if ray_matrix.rank() != fan.ambient_rank() {
        return Err(ToricError::RaysDoNotSpan);
    }
    let snf = smith_normal_form(&ray_matrix)?;
    let rank = snf.rank();
    let rays = fan.ray_count();
    let mut u = snf.u;

    // Fix free-coordinate signs: first nonzero entry of each free row
    // positive, so ray classes are reproducible.
    for i in rank..rays {
        let row = u.row(i);
        if let Some(first) = row.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                let negated: Vec<BigInt> = row.iter().map(|x| -x.clone()).collect();
                let mut rows = u.row_vectors();
                rows[i] = negated;
                u = IntMatrix::from_rows(&rows);
            }
        }
    }

    let mut torsion_rows = Vec::new();
    let mut torsion_factors = Vec::new();
    for (i, d) in snf.invariant_factors.iter().enumerate() {
        if !d.is_zero() && !d.is_one() {
            torsion_rows.push(i);
            torsion_factors.push(d.clone());
        }
    }
    let free_rows: Vec<usize> = (rank..rays).collect();
    let u_inv = inverse_unimodular(&u);
    Ok(ClassGroup {
        structure: AbelianGroupStructure {
            free_rank: rays - rank,
            torsion: torsion_factors.clone(),
        },
        u,
        u_inv,
        torsion_rows,
        torsion_factors,
        free_rows,
        rank,
    })
}

/// Outcome of the local Cartier data computation for a divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CartierResult {
    Cartier,
    QCartierOfIndex(BigInt),
    NotQCartier { cone: usize },
}

/// Per-cone solve of `<m_σ, v> = -d_v`: Cartier when all solutions are
/// integral, Q-Cartier with the lcm of the denominators otherwise.
pub fn cartier_test(fan: &Fan, divisor: &ToricDivisor) -> CartierResult {
    let mut index = BigInt::one();
    for (i, set) in fan.max_cones().iter().enumerate() {
        let rows: Vec<Vec<BigInt>> = set.iter().map(|&r| fan.ray(r).to_vec()).collect();
        let rhs: Vec<BigInt> = set
            .iter()
            .map(|&r| -divisor.coefficients()[r].clone())
            .collect();
        match integral_level_solve(&IntMatrix::from_rows(&rows), &rhs) {
            None => return CartierResult::NotQCartier { cone: i },
            Some((r, _)) => index = num_integer::lcm(index, r),
        }
    }
    if index.is_one() {
        CartierResult::Cartier
    } else {
        CartierResult::QCartierOfIndex(index)
    }
}

/// The Picard group of a complete fan, with lattice generators for the
/// group of Cartier divisors.
#[derive(Debug, Clone)]
pub struct PicardGroup {
    pub structure: AbelianGroupStructure,
    /// Basis of the Cartier divisor lattice inside `Z^{rays}`.
    pub cartier_generators: Vec<Vec<BigInt>>,
}

/// Cartier divisors modulo principal divisors, computed by intersecting the
/// per-cone integrality lattices in Hermite form.
pub fn picard_group(fan: &Fan) -> Result<PicardGroup> {
    if !fan.is_complete() {
        return Err(ToricError::NotComplete);
    }
    let rays = fan.ray_count();
    let n = fan.ambient_rank();

    // Per max cone: D is locally integral iff D|_σ lies in the image of the
    // restricted pairing; off-cone coefficients are free.
    let mut cartier: Option<IntMatrix> = None;
    for set in fan.max_cones() {
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..n {
            let mut col = vec![BigInt::zero(); rays];
            for &r in set {
                col[r] = fan.ray(r)[j].clone();
            }
            cols.push(col);
        }
        for r in 0..rays {
            if !set.contains(&r) {
                let mut col = vec![BigInt::zero(); rays];
                col[r] = BigInt::one();
                cols.push(col);
            }
        }
        let lattice = IntMatrix::from_cols(&cols);
        cartier = Some(match cartier {
            None => lattice,
            Some(prev) => lattice_intersection(&prev, &lattice),
        });
    }
    let cartier = cartier.ok_or(ToricError::NotComplete)?;

    // Principal divisors inside the Cartier lattice.
    let principal_cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| fan.rays().iter().map(|v| v[j].clone()).collect())
        .collect();
    let mut coords_cols: Vec<Vec<BigInt>> = Vec::new();
    for p in &principal_cols {
        let rhs: Vec<BigRational> = p.iter().map(|x| BigRational::from(x.clone())).collect();
        let sol = solve_rational(&cartier, &rhs)
            .expect("principal divisors are Cartier on a complete fan");
        coords_cols.push(
            sol.into_iter()
                .map(|q| {
                    assert!(q.is_integer(), "principal divisor has integral Cartier coordinates");
                    q.to_integer()
                })
                .collect(),
        );
    }
    let structure = cokernel_structure(&IntMatrix::from_cols(&coords_cols))?;
    Ok(PicardGroup {
        structure,
        cartier_generators: cartier.col_vectors(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Rays listed in weight order (1,1,2): v0 + v1 + 2*v2 = 0.
    fn p112_fan() -> Fan {
        Fan::from_i64(2, &[vec![1, 0], vec![-1, -2], vec![0, 1]], &[
            vec![0, 1],
            vec![1, 2],
            vec![2, 0],
        ])
        .unwrap()
    }

    fn p1xp1_fan() -> Fan {
        Fan::from_i64(
            2,
            &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
        )
        .unwrap()
    }

    fn node_affine_fan() -> Fan {
        Fan::from_i64(
            3,
            &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]],
            &[vec![0, 1, 2, 3]],
        )
        .unwrap()
    }

    /// Projective quadric 3-fold with one node: the node cone over the unit
    /// square completed by a fifth ray.
    fn quadric_node_fan() -> Fan {
        Fan::from_i64(
            3,
            &[
                vec![0, 0, 1],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![1, 1, 1],
                vec![-1, -1, -2],
            ],
            &[
                vec![0, 1, 2, 3],
                vec![0, 1, 4],
                vec![0, 2, 4],
                vec![1, 3, 4],
                vec![2, 3, 4],
            ],
        )
        .unwrap()
    }

    #[test]
    fn class_group_of_p112() {
        let fan = p112_fan();
        let cl = class_group(&fan).unwrap();
        assert_eq!(cl.structure().free_rank, 1);
        assert!(cl.structure().torsion.is_empty());
        let classes: Vec<BigInt> =
            cl.ray_classes().iter().map(|c| c.free[0].clone()).collect();
        assert_eq!(classes, vec![bi(1), bi(1), bi(2)], "ray classes are the weights");
    }

    #[test]
    fn class_group_of_p1xp1() {
        let cl = class_group(&p1xp1_fan()).unwrap();
        assert_eq!(cl.structure().free_rank, 2);
        assert!(cl.structure().torsion.is_empty());
    }

    #[test]
    fn class_group_with_torsion() {
        // P^2 / (Z/3): same ray pattern in a coarser lattice.
        let fan = Fan::from_i64(2, &[vec![2, -1], vec![-1, 2], vec![-1, -1]], &[
            vec![0, 1],
            vec![1, 2],
            vec![2, 0],
        ])
        .unwrap();
        let cl = class_group(&fan).unwrap();
        assert_eq!(cl.structure().free_rank, 1);
        assert_eq!(cl.structure().torsion, vec![bi(3)]);
    }

    #[test]
    fn principal_divisors_are_zero_in_cl() {
        for fan in [p112_fan(), p1xp1_fan(), quadric_node_fan()] {
            let cl = class_group(&fan).unwrap();
            for m in [vec![1, 0, 0], vec![0, 1, 0], vec![2, -3, 1]] {
                let m: Vec<BigInt> = m
                    .into_iter()
                    .take(fan.ambient_rank())
                    .map(BigInt::from)
                    .collect();
                if m.len() != fan.ambient_rank() {
                    continue;
                }
                let d = ToricDivisor::principal(&fan, &m);
                assert!(cl.class_of(&d).is_zero());
            }
        }
    }

    #[test]
    fn rays_must_span() {
        let fan = Fan::from_i64(2, &[vec![1, 0]], &[vec![0]]).unwrap();
        assert_eq!(class_group(&fan).unwrap_err(), ToricError::RaysDoNotSpan);
    }

    #[test]
    fn node_single_ray_divisor_not_q_cartier() {
        let fan = node_affine_fan();
        let d = ToricDivisor::from_i64(&fan, &[1, 0, 0, 0]).unwrap();
        assert_eq!(cartier_test(&fan, &d), CartierResult::NotQCartier { cone: 0 });
    }

    #[test]
    fn anticanonical_on_p112_is_cartier() {
        let fan = p112_fan();
        let k = ToricDivisor::anticanonical(&fan);
        assert_eq!(cartier_test(&fan, &k), CartierResult::Cartier);
    }

    #[test]
    fn generator_class_on_p112_has_index_two() {
        let fan = p112_fan();
        let d = ToricDivisor::from_i64(&fan, &[1, 0, 0]).unwrap();
        assert_eq!(
            cartier_test(&fan, &d),
            CartierResult::QCartierOfIndex(bi(2))
        );
    }

    #[test]
    fn smooth_fan_divisors_are_cartier() {
        let fan = p1xp1_fan();
        for coeffs in [[1, 0, 0, 0], [3, -2, 5, 7], [0, 0, 0, 1]] {
            let d = ToricDivisor::from_i64(&fan, &coeffs).unwrap();
            assert_eq!(cartier_test(&fan, &d), CartierResult::Cartier);
        }
    }

    #[test]
    fn quadric_node_class_and_picard() {
        let fan = quadric_node_fan();
        assert!(fan.is_complete());
        let cl = class_group(&fan).unwrap();
        assert_eq!(cl.structure().free_rank, 2);
        assert!(cl.structure().torsion.is_empty());
        let pic = picard_group(&fan).unwrap();
        assert_eq!(pic.structure.free_rank, 1, "Cl and Pic ranks differ at the node");
        assert!(pic.structure.torsion.is_empty());
    }

    #[test]
    fn picard_of_p112_has_rank_one() {
        let pic = picard_group(&p112_fan()).unwrap();
        assert_eq!(pic.structure.free_rank, 1);
        // The Cartier lattice is index 2 in divisor space along the
        // generator direction: the class of a Cartier generator is even.
        let fan = p112_fan();
        let cl = class_group(&fan).unwrap();
        let min_class = pic
            .cartier_generators
            .iter()
            .map(|g| {
                let d = ToricDivisor::new(&fan, g.clone()).unwrap();
                cl.class_of(&d).free[0].abs()
            })
            .filter(|c| !c.is_zero())
            .min()
            .unwrap();
        assert_eq!(min_class, bi(2));
    }

    #[test]
    fn picard_requires_completeness() {
        let err = picard_group(&node_affine_fan()).unwrap_err();
        assert_eq!(err, ToricError::NotComplete);
    }

    #[test]
    fn smooth_complete_picard_equals_class_group() {
        let pic = picard_group(&p1xp1_fan()).unwrap();
        assert_eq!(pic.structure.free_rank, 2);
        assert!(pic.structure.torsion.is_empty());
    }

    #[test]
    fn class_modulo_cartier_at_the_node_is_z() {
        // The local class group of the 3-fold node is Z, so Cl/Pic of the
        // projective quadric cone is free of rank 1.
        let fan = quadric_node_fan();
        let cl = class_group(&fan).unwrap();
        let pic = picard_group(&fan).unwrap();
        let class_cols: Vec<Vec<BigInt>> = pic
            .cartier_generators
            .iter()
            .map(|g| cl.class_of(&ToricDivisor::new(&fan, g.clone()).unwrap()).free)
            .collect();
        let quotient =
            cokernel_structure(&IntMatrix::from_cols(&class_cols)).unwrap();
        assert_eq!(quotient.free_rank, 1);
        assert!(quotient.torsion.is_empty());
    }

    #[test]
    fn picard_of_torsion_class_group_is_free() {
        // P^2 / (Z/3): Cl = Z + Z/3 but Pic is free of rank 1, index 3 in
        // the free part.
        let fan = Fan::from_i64(2, &[vec![2, -1], vec![-1, 2], vec![-1, -1]], &[
            vec![0, 1],
            vec![1, 2],
            vec![2, 0],
        ])
        .unwrap();
        let pic = picard_group(&fan).unwrap();
        assert_eq!(pic.structure.free_rank, 1);
        assert!(pic.structure.torsion.is_empty());
        let cl = class_group(&fan).unwrap();
        let min_free = pic
            .cartier_generators
            .iter()
            .map(|g| {
                let d = ToricDivisor::new(&fan, g.clone()).unwrap();
                cl.class_of(&d).free[0].abs()
            })
            .filter(|c| !c.is_zero())
            .min()
            .unwrap();
        assert_eq!(min_free, bi(3));
    }

    #[test]
    fn functional_descends_for_wall_pairings() {
        let fan = p1xp1_fan();
        let cl = class_group(&fan).unwrap();
        // a = (1,1,0,0): Σ a_ρ v_ρ = 0, pairs to zero with principal divisors.
        let coords = cl.functional_coords(&[bi(1), bi(1), bi(0), bi(0)]);
        assert_eq!(coords.len(), 2);
        let m = [bi(5), bi(-7)];
        let p = ToricDivisor::principal(&fan, &m);
        let val = dot(&[bi(1), bi(1), bi(0), bi(0)], p.coefficients());
        assert!(val.is_zero());
    }
}
