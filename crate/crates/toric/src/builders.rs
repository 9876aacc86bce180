//! Canonical fan constructions: projective spaces and products, weighted
//! projective spaces, blow-ups of linear subspaces, projectivized split
//! bundles, and affine cyclic-quotient cones.
//!
//! All builders emit deterministic coordinates (kernel bases in Hermite
//! form), so repeated runs produce identical fans.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::flip::well_formed_weights;
use crate::matrix::{column_hermite_basis, dot, is_zero_vec, kernel_basis, primitivize,
    solve_rational, IntMatrix};
use crate::singularity::CyclicQuotient;
use num_rational::BigRational;

fn basis_vector(n: usize, i: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); n];
    e[i] = BigInt::one();
    e
}

/// Fan of P^n: rays `e_1..e_n, -Σ e_i`, one max cone per omitted ray.
pub fn projective_space(n: usize) -> Result<Fan> {
    if n == 0 {
        return Err(ToricError::DimensionMismatch("projective space needs n >= 1".into()));
    }
    let mut rays: Vec<Vec<BigInt>> = (0..n).map(|i| basis_vector(n, i)).collect();
    rays.push(vec![BigInt::from(-1); n]);
    let max_cones: Vec<Vec<usize>> = (0..=n)
        .map(|drop| (0..=n).filter(|&k| k != drop).collect())
        .collect();
    Fan::new(n, rays, max_cones)
}

/// Product fan: rays are the two ray lists in block coordinates, max cones
/// all pairwise joins.
pub fn product(f: &Fan, g: &Fan) -> Result<Fan> {
    let nf = f.ambient_rank();
    let ng = g.ambient_rank();
    let mut rays = Vec::with_capacity(f.ray_count() + g.ray_count());
    for r in f.rays() {
        let mut v = r.clone();
        v.extend(std::iter::repeat_n(BigInt::zero(), ng));
        rays.push(v);
    }
    for r in g.rays() {
        let mut v: Vec<BigInt> = std::iter::repeat_n(BigInt::zero(), nf).collect();
        v.extend(r.iter().cloned());
        rays.push(v);
    }
    let mut max_cones = Vec::with_capacity(f.max_cones().len() * g.max_cones().len());
    for a in f.max_cones() {
        for b in g.max_cones() {
            let mut set = a.clone();
            set.extend(b.iter().map(|&r| r + f.ray_count()));
            max_cones.push(set);
        }
    }
    Fan::new(nf + ng, rays, max_cones)
}

/// A weighted projective fan plus the weights actually used.
#[derive(Debug, Clone)]
pub struct WeightedProjectiveFan {
    pub fan: Fan,
    /// Well-formed weights the fan was built from, in ray order.
    pub weights: Vec<BigInt>,
    pub input_weights: Vec<BigInt>,
    pub reduced: bool,
}

/// Fan of P(w_0..w_n): n+1 rays with `Σ w_i v_i = 0`, every n-subset a max
/// cone. Non-well-formed weights are reduced first.
pub fn weighted_projective(input: &[u64]) -> Result<WeightedProjectiveFan> {
    if input.len() < 2 {
        return Err(ToricError::IllFormedWeights("need at least two weights".into()));
    }
    if input.contains(&0) {
        return Err(ToricError::IllFormedWeights("weights must be positive".into()));
    }
    let input_weights: Vec<BigInt> = input.iter().map(|&w| BigInt::from(w)).collect();
    // Reduce without sorting so ray order keeps matching the input.
    let weights = crate::flip::reduce_weights(&input_weights);
    let reduced = weights != input_weights;

    let n = weights.len() - 1;
    let weight_row = IntMatrix::from_rows(std::slice::from_ref(&weights));
    let kernel = column_hermite_basis(&kernel_basis(&weight_row)?);
    debug_assert_eq!(kernel.cols(), n);
    let rays: Vec<Vec<BigInt>> = (0..=n).map(|i| kernel.row(i)).collect();
    // Σ w_i v_i = 0 by construction.
    for j in 0..n {
        let col: Vec<BigInt> = rays.iter().map(|r| r[j].clone()).collect();
        debug_assert!(dot(&weights, &col).is_zero());
    }
    let max_cones: Vec<Vec<usize>> = (0..=n)
        .map(|drop| (0..=n).filter(|&k| k != drop).collect())
        .collect();
    let fan = Fan::new(n, rays, max_cones)?;
    Ok(WeightedProjectiveFan { fan, weights, input_weights, reduced })
}

/// Blow-up of P^n along the coordinate P^k: the star subdivision of the
/// P^n fan at the barycentric ray of the subspace's cone.
pub fn blowup_linear_subspace(n: usize, k: usize) -> Result<Fan> {
    if n < 2 || k + 2 > n {
        return Err(ToricError::DimensionMismatch(format!(
            "blow-up of P^{n} along P^{k} needs 0 <= k <= n-2"
        )));
    }
    let fan = projective_space(n)?;
    // P^k = {x_{k+1} = .. = x_n = 0} corresponds to Cone(e_{k+1}, .., e_n);
    // with rays listed e_1..e_n these are indices k..n-1.
    let mut ray = vec![BigInt::zero(); n];
    for item in ray.iter_mut().take(n).skip(k) {
        *item = BigInt::one();
    }
    fan.star_subdivision(&ray)
}

/// Fan of P(O(a_1) ⊕ ... ⊕ O(a_r)) over P^base_dim.
///
/// Convention: rays are listed `x_0, x_1..x_n, y_1..y_r` where `x_*` are the
/// base rays (the twists ride on `x_0`) and `y_*` the fiber rays:
/// `x_j = e_j`, `y_i = e_{n+i}` for `i < r`, `y_r = -Σ e_{n+i}`, and
/// `x_0 = -Σ_j e_j + Σ_i (a_i - a_r) e_{n+i}`.
pub fn split_bundle_projectivization(base_dim: usize, twists: &[i64]) -> Result<Fan> {
    let n = base_dim;
    let r = twists.len();
    if n == 0 || r < 2 {
        return Err(ToricError::DimensionMismatch(
            "need base dimension >= 1 and at least two twists".into(),
        ));
    }
    let rank = n + r - 1;
    let mut rays = Vec::with_capacity(n + 1 + r);
    let mut x0 = vec![BigInt::zero(); rank];
    for item in x0.iter_mut().take(n) {
        *item = BigInt::from(-1);
    }
    for i in 0..r - 1 {
        x0[n + i] = BigInt::from(twists[i] - twists[r - 1]);
    }
    rays.push(x0);
    for j in 0..n {
        rays.push(basis_vector(rank, j));
    }
    for i in 0..r - 1 {
        rays.push(basis_vector(rank, n + i));
    }
    let mut y_last = vec![BigInt::zero(); rank];
    for item in y_last.iter_mut().take(rank).skip(n) {
        *item = BigInt::from(-1);
    }
    rays.push(y_last);

    // Max cones: drop one base ray and one fiber ray.
    let base_indices: Vec<usize> = (0..=n).collect();
    let fiber_indices: Vec<usize> = (n + 1..n + 1 + r).collect();
    let mut max_cones = Vec::with_capacity((n + 1) * r);
    for &drop_base in &base_indices {
        for &drop_fiber in &fiber_indices {
            let mut set: Vec<usize> = base_indices
                .iter()
                .copied()
                .filter(|&b| b != drop_base)
                .collect();
            set.extend(fiber_indices.iter().copied().filter(|&f| f != drop_fiber));
            max_cones.push(set);
        }
    }
    Fan::new(rank, rays, max_cones)
}

/// Affine fan of the quotient A^n / (1/r)(a_1..a_n): the cone over the
/// standard simplex rays in the lattice `Z^n + Z·(a/r)`, re-embedded
/// integrally via a Hermite basis.
pub fn cyclic_quotient_cone(q: &CyclicQuotient) -> Result<Fan> {
    let n = q.dim();
    let r = BigInt::from(q.order());
    // Columns generate r * (Z^n + Z a/r) = r Z^n + Z a.
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut c = vec![BigInt::zero(); n];
            c[i] = r.clone();
            c
        })
        .collect();
    cols.push(q.weights().iter().map(|&a| BigInt::from(a)).collect());
    let h = column_hermite_basis(&IntMatrix::from_cols(&cols));
    debug_assert_eq!(h.cols(), n);

    // Ray i: solve H x = r e_i; integral because e_i lies in the lattice.
    let mut rays = Vec::with_capacity(n);
    for i in 0..n {
        let mut rhs = vec![BigRational::zero(); n];
        rhs[i] = BigRational::from(r.clone());
        let sol = solve_rational(&h, &rhs).expect("Hermite basis is invertible");
        let ray: Vec<BigInt> = sol
            .into_iter()
            .map(|x| {
                debug_assert!(x.is_integer());
                x.to_integer()
            })
            .collect();
        rays.push(primitivize(&ray)?);
    }
    if rays.iter().any(|ray| is_zero_vec(ray)) {
        return Err(ToricError::IllFormedQuotient("degenerate quotient cone".into()));
    }
    Fan::new(n, rays, vec![(0..n).collect()])
}

/// Display form `P(w_0,...,w_n)` used in reports.
pub fn wps_label(weights: &[BigInt]) -> String {
    let sorted = well_formed_weights(weights);
    let parts: Vec<String> = sorted.iter().map(|w| w.to_string()).collect();
    format!("P({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ConeRegularity;
    use crate::divisor::{cartier_test, class_group, CartierResult, ToricDivisor};
    use crate::nef::{fano_status, mori_cone, nef_cone, positivity, FanoClass, Positivity};
    use crate::singularity::{classify, q_gorenstein_data, reid_tai, SingularityType};

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn projective_line_and_plane() {
        let p1 = projective_space(1).unwrap();
        assert_eq!(p1.ray_count(), 2);
        assert_eq!(p1.max_cones().len(), 2);
        assert!(p1.is_complete());

        let p4 = projective_space(4).unwrap();
        assert!(p4.is_complete());
        assert_eq!(classify(&p4).unwrap().class, SingularityType::Smooth);
        assert_eq!(fano_status(&p4).unwrap().status, FanoClass::Fano);
    }

    #[test]
    fn product_of_lines() {
        let p1 = projective_space(1).unwrap();
        let f = product(&p1, &p1).unwrap();
        assert_eq!(f.ray_count(), 4);
        assert_eq!(f.max_cones().len(), 4);
        assert!(f.is_complete());
        assert_eq!(classify(&f).unwrap().class, SingularityType::Smooth);
        assert_eq!(class_group(&f).unwrap().structure().free_rank, 2);
    }

    #[test]
    fn p3_times_p2() {
        let f = product(&projective_space(3).unwrap(), &projective_space(2).unwrap()).unwrap();
        assert_eq!(f.ambient_rank(), 5);
        assert_eq!(f.ray_count(), 7);
        assert_eq!(class_group(&f).unwrap().structure().free_rank, 2);
        assert_eq!(fano_status(&f).unwrap().status, FanoClass::Fano);
    }

    #[test]
    fn wps_of_equal_weights_is_projective_space() {
        let w = weighted_projective(&[1, 1, 1]).unwrap();
        assert!(!w.reduced);
        let p2 = projective_space(2).unwrap();
        assert!(w.fan.is_complete());
        assert_eq!(
            class_group(&w.fan).unwrap().structure(),
            class_group(&p2).unwrap().structure()
        );
        assert_eq!(w.fan.regularity_profile(), p2.regularity_profile());
        assert_eq!(classify(&w.fan).unwrap(), classify(&p2).unwrap());
    }

    #[test]
    fn wps_112_ray_classes_are_the_weights() {
        let w = weighted_projective(&[1, 1, 2]).unwrap();
        assert!(w.fan.is_complete());
        let cl = class_group(&w.fan).unwrap();
        assert_eq!(cl.structure().free_rank, 1);
        assert!(cl.structure().torsion.is_empty());
        let classes: Vec<BigInt> = cl.ray_classes().iter().map(|c| c.free[0].clone()).collect();
        assert_eq!(classes, vec![bi(1), bi(1), bi(2)]);
        // One cone of index 2.
        let indices: Vec<ConeRegularity> = (0..3).map(|i| w.fan.cone(i).regularity()).collect();
        assert_eq!(
            indices
                .iter()
                .filter(|reg| matches!(reg, ConeRegularity::SimplicialOfIndex(i) if *i == bi(2)))
                .count(),
            1
        );
        assert_eq!(classify(&w.fan).unwrap().class, SingularityType::Canonical);
        assert_eq!(fano_status(&w.fan).unwrap().status, FanoClass::Fano);
    }

    #[test]
    fn wps_11113_is_terminal_like_its_quotient() {
        let w = weighted_projective(&[1, 1, 1, 1, 3]).unwrap();
        let class = classify(&w.fan).unwrap();
        assert_eq!(class.class, SingularityType::Terminal);
        let q = CyclicQuotient::new(3, &[1, 1, 1, 1]).unwrap();
        assert_eq!(reid_tai(&q).class.name(), "Terminal");
    }

    #[test]
    fn wps_reduction_reported() {
        let w = weighted_projective(&[2, 2, 2]).unwrap();
        assert!(w.reduced);
        assert_eq!(w.weights, vec![bi(1), bi(1), bi(1)]);
        let w = weighted_projective(&[1, 4]).unwrap();
        assert!(w.reduced);
        assert_eq!(w.weights, vec![bi(1), bi(1)]);
    }

    #[test]
    fn wps_15_2_is_terminal_with_index_two() {
        let w = weighted_projective(&[1, 1, 1, 1, 1, 2]).unwrap();
        let class = classify(&w.fan).unwrap();
        assert_eq!(class.class, SingularityType::Terminal);
        assert_eq!(class.gorenstein_index, bi(2), "not Gorenstein");
        assert_eq!(class_group(&w.fan).unwrap().structure().free_rank, 1);
    }

    #[test]
    fn wps_13_27_is_terminal() {
        let w = weighted_projective(&[1, 1, 1, 2, 2, 2, 2, 2, 2, 2]).unwrap();
        assert!(!w.reduced);
        let class = classify(&w.fan).unwrap();
        assert_eq!(class.class, SingularityType::Terminal);
        assert_eq!(class.gorenstein_index, bi(2));
    }

    #[test]
    fn blowup_point_in_plane() {
        let f1 = blowup_linear_subspace(2, 0).unwrap();
        assert_eq!(f1.ray_count(), 4);
        assert!(f1.is_complete());
        assert_eq!(classify(&f1).unwrap().class, SingularityType::Smooth);
        let nef = nef_cone(&f1).unwrap();
        assert_eq!(nef.cone.rays().len(), 2);
        assert_eq!(fano_status(&f1).unwrap().status, FanoClass::Fano);
    }

    #[test]
    fn blowup_line_in_p4() {
        let f = blowup_linear_subspace(4, 1).unwrap();
        assert_eq!(f.ray_count(), 6);
        assert!(f.is_complete());
        assert_eq!(classify(&f).unwrap().class, SingularityType::Smooth);
        let cl = class_group(&f).unwrap();
        assert_eq!(cl.structure().free_rank, 2);
        // Smooth and complete, so the Picard group is the whole class group.
        let pic = crate::divisor::picard_group(&f).unwrap();
        assert_eq!(pic.structure.free_rank, 2);
        assert_eq!(fano_status(&f).unwrap().status, FanoClass::Fano);

        // Nef cone spanned by H (a hyperplane not through the center) and
        // H - E (one through it); rays e_1 and e_2 give representatives.
        let nef = nef_cone(&f).unwrap();
        assert_eq!(nef.cone.rays().len(), 2);
        let h = cl.class_of(&ToricDivisor::from_i64(&f, &[1, 0, 0, 0, 0, 0]).unwrap());
        let h_minus_e = cl.class_of(&ToricDivisor::from_i64(&f, &[0, 1, 0, 0, 0, 0]).unwrap());
        let expected = crate::cone::Cone::from_rays(2, &[h.free, h_minus_e.free]).unwrap();
        assert!(nef.cone.same_cone_as(&expected));

        // 9 max cones, 18 walls, 2 extremal curve classes.
        assert_eq!(f.max_cones().len(), 9);
        assert_eq!(f.walls().unwrap().len(), 18);
        assert_eq!(mori_cone(&f).unwrap().cone.rays().len(), 2);
    }

    #[test]
    fn exceptional_divisor_is_not_nef() {
        let f = blowup_linear_subspace(4, 1).unwrap();
        // The exceptional ray is the last one added by the subdivision.
        let mut coeffs = vec![0i64; 6];
        coeffs[5] = 1;
        let e = ToricDivisor::from_i64(&f, &coeffs).unwrap();
        assert_eq!(positivity(&f, &e).unwrap().verdict, Positivity::NotNef);
    }

    #[test]
    fn blowup_point_in_p3_fano_by_wall_test() {
        let f = blowup_linear_subspace(3, 0).unwrap();
        assert_eq!(fano_status(&f).unwrap().status, FanoClass::Fano);
    }

    #[test]
    fn hirzebruch_f2_is_weak_fano() {
        let f2 = split_bundle_projectivization(1, &[0, 2]).unwrap();
        assert_eq!(f2.ray_count(), 4);
        assert!(f2.is_complete());
        assert_eq!(fano_status(&f2).unwrap().status, FanoClass::WeakFano);
    }

    #[test]
    fn trivial_bundle_is_the_product() {
        let f = split_bundle_projectivization(1, &[0, 0]).unwrap();
        let p1 = projective_space(1).unwrap();
        let prod = product(&p1, &p1).unwrap();
        assert_eq!(
            class_group(&f).unwrap().structure(),
            class_group(&prod).unwrap().structure()
        );
        assert_eq!(fano_status(&f).unwrap().status, fano_status(&prod).unwrap().status);
    }

    #[test]
    fn twisted_bundle_over_p3_is_fano() {
        let f = split_bundle_projectivization(3, &[0, 3]).unwrap();
        assert_eq!(f.ambient_rank(), 4);
        assert_eq!(f.ray_count(), 6);
        assert!(f.is_complete());
        assert_eq!(classify(&f).unwrap().class, SingularityType::Smooth);
        assert_eq!(class_group(&f).unwrap().structure().free_rank, 2);
        assert_eq!(fano_status(&f).unwrap().status, FanoClass::Fano);
        assert_eq!(mori_cone(&f).unwrap().cone.rays().len(), 2);
    }

    #[test]
    fn quotient_cone_a1() {
        let q = CyclicQuotient::new(2, &[1, 1]).unwrap();
        let fan = cyclic_quotient_cone(&q).unwrap();
        assert_eq!(fan.max_cones().len(), 1);
        assert_eq!(
            fan.cone(0).regularity(),
            ConeRegularity::SimplicialOfIndex(bi(2))
        );
        assert_eq!(
            q_gorenstein_data(&fan).unwrap().gorenstein_index,
            bi(1),
            "the A1 cone is Gorenstein"
        );
        assert_eq!(classify(&fan).unwrap().class, SingularityType::Canonical);
    }

    #[test]
    fn quotient_cone_half_ones_in_dim_five() {
        let q = CyclicQuotient::new(2, &[1, 1, 1, 1, 1]).unwrap();
        let fan = cyclic_quotient_cone(&q).unwrap();
        let class = classify(&fan).unwrap();
        assert_eq!(class.class, SingularityType::Terminal);
        assert_eq!(class.gorenstein_index, bi(2));
        assert_eq!(
            quotient_agreement_class(&q),
            SingularityType::Terminal
        );
    }

    #[test]
    fn quotient_cone_third_ones_dim_four() {
        let q = CyclicQuotient::new(3, &[1, 1, 1, 1]).unwrap();
        let fan = cyclic_quotient_cone(&q).unwrap();
        assert_eq!(classify(&fan).unwrap().class, SingularityType::Terminal);
    }

    #[test]
    fn barycentric_subdivision_resolves_third_ones() {
        // Star subdivision at the generator of the quotient lattice point
        // turns the 1/3(1,1,1,1) cone into smooth cones.
        let q = CyclicQuotient::new(3, &[1, 1, 1, 1]).unwrap();
        let fan = cyclic_quotient_cone(&q).unwrap();
        let mut center = vec![BigInt::zero(); 4];
        for ray in fan.rays() {
            for (slot, x) in center.iter_mut().zip(ray) {
                *slot += x;
            }
        }
        let center = crate::matrix::primitivize(&center).unwrap();
        let resolved = fan.star_subdivision(&center).unwrap();
        assert_eq!(resolved.ray_count(), fan.ray_count() + 1);
        assert_eq!(resolved.max_cones().len(), 4);
        let prof = resolved.regularity_profile();
        assert!(prof.smooth_in_codim(4), "all cones smooth after the subdivision");
    }

    fn quotient_agreement_class(q: &CyclicQuotient) -> SingularityType {
        let fan = cyclic_quotient_cone(q).unwrap();
        classify(&fan).unwrap().class
    }

    #[test]
    fn smooth_fan_divisors_cartier_on_builders() {
        let f = blowup_linear_subspace(3, 0).unwrap();
        let d = ToricDivisor::from_i64(&f, &[2, -1, 3, 0, 5]).unwrap();
        assert_eq!(cartier_test(&f, &d), CartierResult::Cartier);
    }

    #[test]
    fn wps_label_formatting() {
        assert_eq!(wps_label(&[bi(1), bi(4)]), "P(1,1)");
        assert_eq!(wps_label(&[bi(2), bi(1), bi(1)]), "P(1,1,2)");
    }
}
