//! Rational polyhedral cones with exact dual descriptions.
//!
//! A cone is stored with both a generator description (extreme rays plus a
//! lineality basis) and a supporting description (facet inequalities plus
//! span equations). Conversions between the two run through one primitive:
//! extreme-ray enumeration for an inequality system, done by exhaustive
//! active-set search with exact integer kernels. All instances this engine
//! handles are small, so the exhaustive search is both simple and fast.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};
use crate::matrix::{
    column_hermite_basis, dot, inverse_unimodular, is_zero_vec, kernel_basis, primitivize,
    rank_of_rows, smith_normal_form, solve_rational, IntMatrix,
};

/// Regularity of a pointed cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeRegularity {
    /// Simplicial with multiplicity 1: the rays extend to a lattice basis.
    Smooth,
    /// Simplicial with the given lattice index (> 1).
    SimplicialOfIndex(BigInt),
    /// More rays than its dimension.
    NonSimplicial,
}

impl ConeRegularity {
    pub fn is_smooth(&self) -> bool {
        matches!(self, ConeRegularity::Smooth)
    }

    pub fn is_simplicial(&self) -> bool {
        !matches!(self, ConeRegularity::NonSimplicial)
    }
}

/// Rational polyhedral cone in `Z^ambient_rank`.
///
/// `rays` are primitive and extreme (modulo `lineality` when the cone is not
/// pointed), sorted lexicographically; `facet_normals` are the irredundant
/// supporting inequalities and `equations` a canonical basis of the
/// orthogonal complement of the span. The cone is exactly
/// `{x : equations·x = 0, facet_normals·x >= 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    facet_normals: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

impl Cone {
    /// Cone spanned by the given rays; fails with `NotPointed` if the span
    /// contains a line.
    pub fn from_rays(ambient_rank: usize, rays: &[Vec<BigInt>]) -> Result<Cone> {
        if rays.is_empty() {
            return Err(ToricError::EmptyMatrix);
        }
        let cone = Cone::from_generators(ambient_rank, rays, &[])?;
        if !cone.lineality.is_empty() {
            return Err(ToricError::NotPointed);
        }
        Ok(cone)
    }

    pub fn from_i64_rays(ambient_rank: usize, rays: &[Vec<i64>]) -> Result<Cone> {
        let owned: Vec<Vec<BigInt>> = rays
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Cone::from_rays(ambient_rank, &owned)
    }

    /// General constructor: nonnegative span of `gens` plus the linear span
    /// of `lines`. Zero vectors are ignored.
    pub fn from_generators(
        ambient_rank: usize,
        gens: &[Vec<BigInt>],
        lines: &[Vec<BigInt>],
    ) -> Result<Cone> {
        let mut prim_gens: Vec<Vec<BigInt>> = Vec::new();
        for g in gens {
            if g.len() != ambient_rank {
                return Err(ToricError::DimensionMismatch(format!(
                    "generator has length {} in rank {ambient_rank}",
                    g.len()
                )));
            }
            if !is_zero_vec(g) {
                let p = primitivize(g)?;
                if !prim_gens.contains(&p) {
                    prim_gens.push(p);
                }
            }
        }
        let mut prim_lines: Vec<Vec<BigInt>> = Vec::new();
        for l in lines {
            if l.len() != ambient_rank {
                return Err(ToricError::DimensionMismatch(format!(
                    "line generator has length {} in rank {ambient_rank}",
                    l.len()
                )));
            }
            if !is_zero_vec(l) {
                prim_lines.push(primitivize(l)?);
            }
        }

        // Supporting description = extreme rays of the polar system.
        let (span_perp, facets) = extreme_rays_of_hrep(ambient_rank, &prim_gens, &prim_lines);

        // Lineality space of the cone itself.
        let mut stacked = facets.clone();
        stacked.extend(span_perp.iter().cloned());
        let lineality = if stacked.is_empty() {
            basis_columns(&IntMatrix::identity(ambient_rank))
        } else {
            basis_columns(&column_hermite_basis(&kernel_basis(&IntMatrix::from_rows(
                &stacked,
            ))?))
        };

        // Extreme rays: generators whose active facet set has corank 1.
        let dim = ambient_rank - span_perp.len();
        let mut rays: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        if lineality.is_empty() {
            for g in &prim_gens {
                let mut active: Vec<Vec<BigInt>> =
                    facets.iter().filter(|u| dot(u, g).is_zero()).cloned().collect();
                active.extend(span_perp.iter().cloned());
                if dim >= 1 && rank_of_rows(&active) == ambient_rank - 1 {
                    rays.insert(g.clone());
                }
            }
        } else {
            // Non-pointed: re-derive extreme rays modulo lineality from the
            // supporting description.
            let (_, modded) = extreme_rays_of_hrep(ambient_rank, &facets, &span_perp);
            rays.extend(modded);
        }

        Ok(Cone {
            ambient_rank,
            rays: rays.into_iter().collect(),
            lineality,
            facet_normals: facets,
            equations: span_perp,
        })
    }

    /// Cone `{x : inequalities·x >= 0, equations·x = 0}`.
    pub fn from_hrep(
        ambient_rank: usize,
        inequalities: &[Vec<BigInt>],
        equations: &[Vec<BigInt>],
    ) -> Result<Cone> {
        let (lin, rays) = extreme_rays_of_hrep(ambient_rank, inequalities, equations);
        Cone::from_generators(ambient_rank, &rays, &lin)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn facet_normals(&self) -> &[Vec<BigInt>] {
        &self.facet_normals
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Dimension of the cone (of its linear span).
    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_rank
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.ambient_rank);
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facet_normals.iter().all(|u| !dot(u, x).is_negative())
    }

    /// Strict interior relative to the span.
    pub fn contains_in_relative_interior(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.ambient_rank);
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facet_normals.iter().all(|u| dot(u, x).is_positive())
    }

    /// Same set of points, independent of representation details.
    pub fn same_cone_as(&self, other: &Cone) -> bool {
        self.ambient_rank == other.ambient_rank
            && self.rays.iter().all(|r| other.contains(r))
            && other.rays.iter().all(|r| self.contains(r))
            && self.lineality.iter().all(|l| {
                other.contains(l) && other.contains(&l.iter().map(|x| -x.clone()).collect::<Vec<_>>())
            })
            && other.lineality.iter().all(|l| {
                self.contains(l) && self.contains(&l.iter().map(|x| -x.clone()).collect::<Vec<_>>())
            })
    }

    /// Dual cone `{u : <u, x> >= 0 for all x in self}` in the dual lattice.
    pub fn dual(&self) -> Cone {
        Cone::from_hrep(self.ambient_rank, &self.rays, &self.lineality)
            .expect("dual of a valid cone")
    }

    /// Intersection with another cone in the same ambient lattice.
    pub fn intersection(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut ineqs = self.facet_normals.clone();
        ineqs.extend(other.facet_normals.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_hrep(self.ambient_rank, &ineqs, &eqs).expect("intersection of valid cones")
    }

    /// All faces as subsets of `self.rays()` indices (pointed cones only),
    /// ordered lexicographically on the sorted index sets. Includes the
    /// origin (empty set) and the cone itself.
    pub fn face_ray_index_sets(&self) -> Vec<Vec<usize>> {
        assert!(self.is_pointed(), "face enumeration needs a pointed cone");
        let nrays = self.rays.len();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        // Incidence: actives[i] = facets active at ray i.
        let actives: Vec<Vec<bool>> = self
            .rays
            .iter()
            .map(|r| self.facet_normals.iter().map(|u| dot(u, r).is_zero()).collect())
            .collect();
        for mask in 0..(1usize << nrays) {
            let members: Vec<usize> = (0..nrays).filter(|i| mask & (1 << i) != 0).collect();
            // Facets active on every chosen ray.
            let shared: Vec<usize> = (0..self.facet_normals.len())
                .filter(|&f| members.iter().all(|&i| actives[i][f]))
                .collect();
            // Closure: rays active on all shared facets.
            let closure: Vec<usize> = (0..nrays)
                .filter(|&i| shared.iter().all(|&f| actives[i][f]))
                .collect();
            if closure == members {
                seen.insert(members);
            }
        }
        seen.into_iter().collect()
    }

    /// All `k`-dimensional faces, in the deterministic order induced by
    /// `face_ray_index_sets`.
    pub fn faces(&self, k: usize) -> Vec<Cone> {
        let mut out = Vec::new();
        for set in self.face_ray_index_sets() {
            let rays: Vec<Vec<BigInt>> = set.iter().map(|&i| self.rays[i].clone()).collect();
            let dim = rank_of_rows(&rays);
            if dim == k {
                if rays.is_empty() {
                    out.push(
                        Cone::from_generators(self.ambient_rank, &[], &[])
                            .expect("origin cone"),
                    );
                } else {
                    out.push(Cone::from_rays(self.ambient_rank, &rays).expect("face cone"));
                }
            }
        }
        out
    }

    /// Smooth / simplicial-of-index / non-simplicial classification.
    /// Lower-dimensional cones are measured inside their span lattice via
    /// the invariant factors of the ray matrix.
    pub fn regularity(&self) -> ConeRegularity {
        assert!(self.is_pointed(), "regularity needs a pointed cone");
        cone_regularity_of_rays(&self.rays)
    }
}

/// Regularity from a primitive ray list (no cone construction needed).
pub fn cone_regularity_of_rays(rays: &[Vec<BigInt>]) -> ConeRegularity {
    if rays.is_empty() {
        return ConeRegularity::Smooth; // the origin cone
    }
    let dim = rank_of_rows(rays);
    if rays.len() != dim {
        return ConeRegularity::NonSimplicial;
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(rays)).expect("nonempty ray matrix");
    let index: BigInt = snf.invariant_factors.iter().product();
    if index.is_one() {
        ConeRegularity::Smooth
    } else {
        ConeRegularity::SimplicialOfIndex(index)
    }
}

fn basis_columns(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.cols()).map(|j| m.col(j)).collect()
}

/// Signed-minor kernel vector of a `(d-1) x d` integer matrix: nonzero iff
/// the rows have full rank, in which case it spans the kernel.
fn cross_kernel(rows: &[Vec<BigInt>], d: usize) -> Vec<BigInt> {
    debug_assert!(rows.len() + 1 == d);
    let mut v = Vec::with_capacity(d);
    let mut sign = BigInt::one();
    for j in 0..d {
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let det = if sub.is_empty() {
            BigInt::one()
        } else {
            IntMatrix::from_rows(&sub).determinant()
        };
        v.push(&sign * det);
        sign = -sign;
    }
    v
}

/// Extreme rays and lineality basis of `{x : ineqs·x >= 0, eqs·x = 0}`.
///
/// Returns `(lineality, rays)`; rays are primitive, deduplicated and sorted,
/// and are extreme modulo the lineality space.
pub fn extreme_rays_of_hrep(
    ambient_rank: usize,
    ineqs: &[Vec<BigInt>],
    eqs: &[Vec<BigInt>],
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    // Restrict to the solution space of the equations.
    let b0 = if eqs.is_empty() {
        IntMatrix::identity(ambient_rank)
    } else {
        kernel_basis(&IntMatrix::from_rows(eqs)).expect("nonempty equation matrix")
    };
    let d0 = b0.cols();
    if d0 == 0 {
        return (Vec::new(), Vec::new());
    }
    let restricted: Vec<Vec<BigInt>> = ineqs
        .iter()
        .map(|u| (0..d0).map(|j| dot(u, &b0.col(j))).collect())
        .collect();
    if restricted.is_empty() || restricted.iter().all(|r| is_zero_vec(r)) {
        // No effective constraints: the whole restricted space.
        let lin = basis_columns(&column_hermite_basis(&b0));
        return (lin, Vec::new());
    }

    // Split off the lineality inside the restricted space.
    let a_mat = IntMatrix::from_rows(&restricted);
    let lker = kernel_basis(&a_mat).expect("nonempty inequality matrix");
    let l = lker.cols();
    let (reduced, embed_cols): (Vec<Vec<BigInt>>, IntMatrix) = if l == 0 {
        (restricted, b0.clone())
    } else {
        let snf = smith_normal_form(&lker).expect("nonempty lineality basis");
        debug_assert!(snf.invariant_factors.iter().all(|x| x.is_one()));
        let u_inv = inverse_unimodular(&snf.u);
        // New coordinates z with lineality = span(e_1..e_l): x = U^{-1} z.
        let a2 = a_mat.mul(&u_inv);
        for i in 0..a2.rows() {
            for j in 0..l {
                debug_assert!(a2.at(i, j).is_zero(), "inequalities vanish on lineality");
            }
        }
        let rows: Vec<Vec<BigInt>> = (0..a2.rows())
            .map(|i| (l..d0).map(|j| a2.at(i, j).clone()).collect())
            .collect();
        // Embedding of the quotient coordinates back to Z^ambient:
        // w -> B0 · U^{-1} · (0, w).
        let cols: Vec<Vec<BigInt>> = (l..d0).map(|j| b0.mul_vec(&u_inv.col(j))).collect();
        (rows, IntMatrix::from_cols(&cols))
    };
    let d = d0 - l;
    let lineality = if l == 0 {
        Vec::new()
    } else {
        basis_columns(&column_hermite_basis(&b0.mul(&lker)))
    };
    if d == 0 {
        return (lineality, Vec::new());
    }

    // Exhaustive active-set enumeration in the pointed quotient.
    let m = reduced.len();
    let mut found: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut subset: Vec<usize> = (0..d - 1).collect();
    loop {
        if d - 1 <= m {
            let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| reduced[i].clone()).collect();
            let v = cross_kernel(&rows, d);
            if !is_zero_vec(&v) {
                let v = primitivize(&v).expect("nonzero kernel vector");
                let neg: Vec<BigInt> = v.iter().map(|x| -x.clone()).collect();
                for cand in [v, neg] {
                    if reduced.iter().all(|r| !dot(r, &cand).is_negative()) {
                        found.insert(cand);
                    }
                }
            }
        }
        // Next (d-1)-subset of 0..m, lexicographic.
        if d == 1 || d - 1 > m {
            break;
        }
        let k = d - 1;
        let mut i = k;
        loop {
            if i == 0 {
                subset.clear();
                break;
            }
            i -= 1;
            if subset[i] != i + m - k {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
        if subset.is_empty() {
            break;
        }
    }

    let rays: BTreeSet<Vec<BigInt>> = found
        .into_iter()
        .map(|w| {
            let x = embed_cols.mul_vec(&w);
            primitivize(&x).expect("nonzero embedded ray")
        })
        .collect();
    (lineality, rays.into_iter().collect())
}

/// Lattice points of `conv({0} ∪ rays)`.
///
/// For simplicial ray sets this enumerates the cosets of the ray lattice
/// inside the span lattice (one candidate per coset), which stays fast in
/// high rank as long as the multiplicity is moderate; other ray sets fall
/// back to the bounding-box scan.
pub fn hull_lattice_points(rays: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    if rays.is_empty() {
        return Err(ToricError::EmptyPolytope);
    }
    let n = rays[0].len();
    let d = rank_of_rows(rays);
    if rays.len() != d {
        let mut vertices = vec![vec![BigRational::zero(); n]];
        for r in rays {
            vertices.push(r.iter().map(|x| BigRational::from(x.clone())).collect());
        }
        return lattice_points_in_polytope(&vertices);
    }

    // Simplicial: work in a saturated basis of the span lattice.
    let ray_matrix = IntMatrix::from_rows(rays);
    let (span_coords, back): (Vec<Vec<BigInt>>, Option<IntMatrix>) = if d == n {
        (rays.to_vec(), None)
    } else {
        let perp = kernel_basis(&ray_matrix)?; // n×(n-d)
        let span_basis = kernel_basis(&perp.transpose())?; // n×d, saturated
        let mut coords = Vec::with_capacity(rays.len());
        for r in rays {
            let rhs: Vec<BigRational> =
                r.iter().map(|x| BigRational::from(x.clone())).collect();
            let sol = solve_rational(&span_basis, &rhs).expect("ray lies in its span");
            coords.push(
                sol.into_iter()
                    .map(|q| {
                        debug_assert!(q.is_integer(), "span basis is saturated");
                        q.to_integer()
                    })
                    .collect(),
            );
        }
        (coords, Some(span_basis))
    };

    let coord_matrix = IntMatrix::from_rows(&span_coords); // d×d
    let index = coord_matrix.determinant().abs();
    let cap = BigInt::from(10_000_000u64);
    if index > cap {
        return Err(ToricError::BoxTooLarge(index.to_string(), cap.to_string()));
    }

    let mut found: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    found.insert(vec![BigInt::zero(); n]);
    for r in rays {
        found.insert(r.clone());
    }

    // Coset representatives of Z^d modulo the ray lattice, via the Hermite
    // basis of the ray rows: residues below the pivots.
    let hnf = column_hermite_basis(&coord_matrix.transpose()); // d×d
    let pivots: Vec<BigInt> = (0..d).map(|i| hnf.at(i, i).clone()).collect();
    let mut rep = vec![BigInt::zero(); d];
    let coeff_matrix = coord_matrix.transpose(); // columns are the rays
    'outer: loop {
        // Coefficients of rep in terms of the rays, shifted into [0,1)^d.
        let rhs: Vec<BigRational> =
            rep.iter().map(|x| BigRational::from(x.clone())).collect();
        let c = solve_rational(&coeff_matrix, &rhs).expect("rays are a basis of the span");
        let mut point = rep.clone();
        let mut level = BigRational::zero();
        for (k, ck) in c.iter().enumerate() {
            let f = ck.floor();
            level += ck - &f;
            if !f.is_zero() {
                let fi = f.to_integer();
                for (slot, coord) in point.iter_mut().zip(&span_coords[k]) {
                    *slot -= &fi * coord;
                }
            }
        }
        if level <= BigRational::one() && !point.iter().all(Zero::is_zero) {
            let full = match &back {
                None => point,
                Some(b) => b.mul_vec(&point),
            };
            found.insert(full);
        }
        // Odometer over the residues.
        let mut k = d;
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            rep[k] += 1;
            if rep[k] < pivots[k] {
                break;
            }
            rep[k] = BigInt::zero();
        }
    }
    Ok(found.into_iter().collect())
}

/// Exact lattice-point enumeration for the convex hull of the given rational
/// vertices: every integer point of the hull, in lexicographic order.
pub fn lattice_points_in_polytope(vertices: &[Vec<BigRational>]) -> Result<Vec<Vec<BigInt>>> {
    if vertices.is_empty() {
        return Err(ToricError::EmptyPolytope);
    }
    let n = vertices[0].len();
    for v in vertices {
        if v.len() != n {
            return Err(ToricError::DimensionMismatch(
                "polytope vertices of mixed dimension".into(),
            ));
        }
    }
    // Homogenize: the hull is the slice at height 1 of the cone over the
    // vertices lifted to height 1.
    let lifted: Vec<Vec<BigInt>> = vertices
        .iter()
        .map(|v| {
            let mut den = BigInt::one();
            for q in v {
                den = num_integer::lcm(den.clone(), q.denom().clone());
            }
            let mut w: Vec<BigInt> = v
                .iter()
                .map(|q| (q * BigRational::from(den.clone())).to_integer())
                .collect();
            w.push(den);
            w
        })
        .collect();
    let (span_perp, facets) = extreme_rays_of_hrep(n + 1, &lifted, &[]);

    // Bounding box.
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for j in 0..n {
        let mut min = vertices[0][j].clone();
        let mut max = vertices[0][j].clone();
        for v in vertices.iter().skip(1) {
            if v[j] < min {
                min = v[j].clone();
            }
            if v[j] > max {
                max = v[j].clone();
            }
        }
        lo.push(min.floor().to_integer());
        hi.push(max.ceil().to_integer());
    }
    let mut volume = BigInt::one();
    for j in 0..n {
        volume *= &hi[j] - &lo[j] + 1;
    }
    let cap = BigInt::from(10_000_000u64);
    if volume > cap {
        return Err(ToricError::BoxTooLarge(volume.to_string(), cap.to_string()));
    }

    let mut out = Vec::new();
    let mut point = lo.clone();
    'outer: loop {
        let mut hom = point.clone();
        hom.push(BigInt::one());
        let inside = span_perp.iter().all(|e| dot(e, &hom).is_zero())
            && facets.iter().all(|u| !dot(u, &hom).is_negative());
        if inside {
            out.push(point.clone());
        }
        // Lexicographic odometer.
        let mut j = n;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            if point[j] < hi[j] {
                point[j] += 1;
                point[j + 1..n].clone_from_slice(&lo[j + 1..n]);
                break;
            }
        }
    }
    Ok(out)
}
