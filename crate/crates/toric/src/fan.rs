//! Fans: validated collections of pointed cones, plus the combinatorial
//! queries built on them (completeness, walls, star subdivision, and the
//! codimension-k regularity profile).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::cone::{cone_regularity_of_rays, Cone, ConeRegularity};
use crate::error::{Result, ToricError};
use crate::matrix::{is_zero_vec, nonneg_combination, primitivize, rank_of_rows};

/// A fan, stored as an indexed ray list plus max cones as ray-index sets.
/// Lower faces are derived on demand from the cached geometric cones.
#[derive(Debug, Clone)]
pub struct Fan {
    ambient_rank: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<Vec<usize>>,
    cones: Vec<Cone>,
    /// Per max cone: all faces as sorted fan-ray index sets with their dims.
    faces: Vec<Vec<(Vec<usize>, usize)>>,
}

/// Interior codimension-1 face shared by exactly two max cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub cone_a: usize,
    pub cone_b: usize,
    /// Sorted fan-ray indices of the shared facet.
    pub face_rays: Vec<usize>,
}

/// Per-dimension regularity summary; `dims[d-1]` describes the cones of
/// dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityProfile {
    pub dims: Vec<DimRegularity>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimRegularity {
    pub dim: usize,
    pub all_smooth: bool,
    pub all_simplicial: bool,
}

impl RegularityProfile {
    /// All cones of dimension <= k are smooth.
    pub fn smooth_in_codim(&self, k: usize) -> bool {
        self.dims.iter().take(k).all(|d| d.all_smooth)
    }

    /// All cones of dimension <= k are simplicial.
    pub fn qfactorial_in_codim(&self, k: usize) -> bool {
        self.dims.iter().take(k).all(|d| d.all_simplicial)
    }
}

impl Fan {
    /// Validate and build. All violations are collected into the error.
    pub fn new(
        ambient_rank: usize,
        rays: Vec<Vec<BigInt>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Fan> {
        match build(ambient_rank, rays, max_cones) {
            Ok(fan) => Ok(fan),
            Err(violations) => Err(ToricError::InvalidFan(violations)),
        }
    }

    pub fn from_i64(
        ambient_rank: usize,
        rays: &[Vec<i64>],
        max_cones: &[Vec<usize>],
    ) -> Result<Fan> {
        Fan::new(
            ambient_rank,
            rays.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            max_cones.to_vec(),
        )
    }

    /// Structural check only: the list of violations, empty when the input
    /// is a valid fan.
    pub fn validate(
        ambient_rank: usize,
        rays: Vec<Vec<BigInt>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Vec<String> {
        match build(ambient_rank, rays, max_cones) {
            Ok(_) => Vec::new(),
            Err(violations) => violations,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[BigInt] {
        &self.rays[i]
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn ray_index(&self, ray: &[BigInt]) -> Option<usize> {
        self.rays.iter().position(|r| r == ray)
    }

    /// Faces of max cone `i` as sorted fan-ray index sets with dimensions.
    pub fn faces_of_max_cone(&self, i: usize) -> &[(Vec<usize>, usize)] {
        &self.faces[i]
    }

    /// All distinct cones of the fan of dimension `d`, as index sets.
    pub fn cones_of_dim(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for per_cone in &self.faces {
            for (set, dim) in per_cone {
                if *dim == d {
                    out.insert(set.clone());
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn support_contains(&self, x: &[BigInt]) -> bool {
        self.cones.iter().any(|c| c.contains(x))
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones
            .iter()
            .enumerate()
            .all(|(i, set)| set.len() == self.cones[i].dim())
    }

    /// Completeness via facet pairing: all max cones full-dimensional,
    /// every facet shared by exactly two max cones, and the wall graph
    /// connected.
    pub fn is_complete(&self) -> bool {
        let n = self.ambient_rank;
        if self.max_cones.is_empty() {
            return false;
        }
        if !self.cones.iter().all(|c| c.dim() == n) {
            return false;
        }
        let mut facet_owners: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, per_cone) in self.faces.iter().enumerate() {
            for (set, dim) in per_cone {
                if *dim + 1 == n {
                    facet_owners.entry(set.clone()).or_default().push(i);
                }
            }
        }
        if !facet_owners.values().all(|owners| owners.len() == 2) {
            return false;
        }
        // Connectivity of the wall graph.
        let m = self.max_cones.len();
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); m];
        for owners in facet_owners.values() {
            adjacency[owners[0]].push(owners[1]);
            adjacency[owners[1]].push(owners[0]);
        }
        while let Some(i) = stack.pop() {
            for &j in &adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Interior codimension-1 faces with their two adjacent max cones,
    /// sorted by (cone_a, cone_b, face).
    pub fn walls(&self) -> Result<Vec<Wall>> {
        let n = self.ambient_rank;
        for (i, c) in self.cones.iter().enumerate() {
            if c.dim() != n {
                return Err(ToricError::NotFullDimensional(i));
            }
        }
        let mut facet_owners: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, per_cone) in self.faces.iter().enumerate() {
            for (set, dim) in per_cone {
                if *dim + 1 == n {
                    facet_owners.entry(set.clone()).or_default().push(i);
                }
            }
        }
        let mut walls = Vec::new();
        for (set, owners) in facet_owners {
            if owners.len() == 2 {
                walls.push(Wall {
                    cone_a: owners[0].min(owners[1]),
                    cone_b: owners[0].max(owners[1]),
                    face_rays: set,
                });
            }
        }
        walls.sort_by(|a, b| {
            (a.cone_a, a.cone_b, &a.face_rays).cmp(&(b.cone_a, b.cone_b, &b.face_rays))
        });
        Ok(walls)
    }

    /// Smooth/simplicial summary per dimension 1..=n.
    pub fn regularity_profile(&self) -> RegularityProfile {
        let n = self.ambient_rank;
        let mut dims = Vec::with_capacity(n);
        for d in 1..=n {
            let mut all_smooth = true;
            let mut all_simplicial = true;
            for set in self.cones_of_dim(d) {
                let rays: Vec<Vec<BigInt>> =
                    set.iter().map(|&i| self.rays[i].clone()).collect();
                match cone_regularity_of_rays(&rays) {
                    ConeRegularity::Smooth => {}
                    ConeRegularity::SimplicialOfIndex(_) => all_smooth = false,
                    ConeRegularity::NonSimplicial => {
                        all_smooth = false;
                        all_simplicial = false;
                    }
                }
            }
            dims.push(DimRegularity { dim: d, all_smooth, all_simplicial });
        }
        RegularityProfile { dims }
    }

    /// Star subdivision at `ray`: every cone containing the ray is replaced
    /// by the cones spanned by its ray-free facets together with the ray.
    pub fn star_subdivision(&self, ray: &[BigInt]) -> Result<Fan> {
        if ray.len() != self.ambient_rank || is_zero_vec(ray) {
            return Err(ToricError::ZeroVector);
        }
        let ray = primitivize(ray)?;
        if !self.support_contains(&ray) {
            return Err(ToricError::RayOutsideSupport);
        }
        let mut new_rays = self.rays.clone();
        let ray_idx = match self.ray_index(&ray) {
            Some(i) => i,
            None => {
                new_rays.push(ray.clone());
                new_rays.len() - 1
            }
        };
        let mut new_cones: BTreeSet<Vec<usize>> = BTreeSet::new();
        for (i, cone) in self.cones.iter().enumerate() {
            if !cone.contains(&ray) {
                new_cones.insert(self.max_cones[i].clone());
                continue;
            }
            let dim = cone.dim();
            for (set, fdim) in &self.faces[i] {
                if *fdim + 1 != dim {
                    continue;
                }
                let facet_rays: Vec<Vec<BigInt>> =
                    set.iter().map(|&r| self.rays[r].clone()).collect();
                let facet_cone = if facet_rays.is_empty() {
                    Cone::from_generators(self.ambient_rank, &[], &[])?
                } else {
                    Cone::from_rays(self.ambient_rank, &facet_rays)?
                };
                if facet_cone.contains(&ray) {
                    continue;
                }
                let mut c = set.clone();
                c.push(ray_idx);
                c.sort_unstable();
                new_cones.insert(c);
            }
        }
        Fan::new(self.ambient_rank, new_rays, new_cones.into_iter().collect())
    }
}

fn build(
    ambient_rank: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<Vec<usize>>,
) -> std::result::Result<Fan, Vec<String>> {
    let mut violations = Vec::new();
    if ambient_rank == 0 {
        violations.push("ambient rank must be at least 1".to_string());
    }
    if rays.is_empty() {
        violations.push("fan has no rays".to_string());
    }
    for (i, r) in rays.iter().enumerate() {
        if r.len() != ambient_rank {
            violations.push(format!("ray #{i} has length {} in rank {ambient_rank}", r.len()));
        } else if is_zero_vec(r) {
            violations.push(format!("ray #{i} is the zero vector"));
        } else if primitivize(r).ok().as_deref() != Some(r) {
            violations.push(format!("ray #{i} is not primitive"));
        }
        for (j, s) in rays.iter().enumerate().take(i) {
            if r == s {
                violations.push(format!("rays #{j} and #{i} are equal"));
            }
        }
    }
    if max_cones.is_empty() {
        violations.push("fan has no max cones".to_string());
    }
    let mut sorted_cones: Vec<Vec<usize>> = Vec::with_capacity(max_cones.len());
    for (i, set) in max_cones.iter().enumerate() {
        let mut s = set.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != set.len() {
            violations.push(format!("max cone #{i} repeats a ray index"));
        }
        if s.is_empty() {
            violations.push(format!("max cone #{i} is empty"));
        }
        if let Some(&bad) = s.iter().find(|&&r| r >= rays.len()) {
            violations.push(format!("max cone #{i} references missing ray #{bad}"));
        }
        sorted_cones.push(s);
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let mut used = vec![false; rays.len()];
    for set in &sorted_cones {
        for &r in set {
            used[r] = true;
        }
    }
    for (i, u) in used.iter().enumerate() {
        if !u {
            violations.push(format!("ray #{i} appears in no max cone"));
        }
    }

    // Geometric cones, pointedness and extreme-ray consistency.
    let mut cones = Vec::with_capacity(sorted_cones.len());
    for (i, set) in sorted_cones.iter().enumerate() {
        let cone_rays: Vec<Vec<BigInt>> = set.iter().map(|&r| rays[r].clone()).collect();
        match Cone::from_rays(ambient_rank, &cone_rays) {
            Ok(c) => {
                if c.rays().len() != set.len() {
                    violations.push(format!(
                        "max cone #{i} lists a ray that is not extreme in it"
                    ));
                }
                cones.push(c);
            }
            Err(ToricError::NotPointed) => {
                violations.push(format!("max cone #{i} is not pointed"));
                cones.push(Cone::from_generators(ambient_rank, &cone_rays, &[]).unwrap());
            }
            Err(e) => violations.push(format!("max cone #{i}: {e}")),
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    // Maximality.
    for i in 0..cones.len() {
        for j in 0..cones.len() {
            if i != j
                && sorted_cones[i].iter().all(|r| sorted_cones[j].contains(r))
                && sorted_cones[i] != sorted_cones[j]
            {
                violations.push(format!("max cone #{i} is a face of max cone #{j}"));
            }
            if i < j && sorted_cones[i] == sorted_cones[j] {
                violations.push(format!("max cones #{i} and #{j} are equal"));
            }
        }
    }

    // Face sets in fan-ray indices.
    let mut faces: Vec<Vec<(Vec<usize>, usize)>> = Vec::with_capacity(cones.len());
    for (i, cone) in cones.iter().enumerate() {
        let local_to_fan: Vec<usize> = cone
            .rays()
            .iter()
            .map(|r| rays.iter().position(|s| s == r).expect("extreme ray is a fan ray"))
            .collect();
        let mut per_cone = Vec::new();
        for local_set in cone.face_ray_index_sets() {
            let mut fan_set: Vec<usize> = local_set.iter().map(|&l| local_to_fan[l]).collect();
            fan_set.sort_unstable();
            let face_rays: Vec<Vec<BigInt>> =
                fan_set.iter().map(|&r| rays[r].clone()).collect();
            let dim = rank_of_rows(&face_rays);
            per_cone.push((fan_set, dim));
        }
        per_cone.sort();
        faces.push(per_cone);
        let _ = i;
    }

    // Pairwise face compatibility: the shared rays must form a face of each
    // cone, and the geometric intersection must not exceed their span. The
    // latter reduces to Farkas memberships in the sum of the dual cones.
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let common: Vec<usize> = sorted_cones[i]
                .iter()
                .copied()
                .filter(|r| sorted_cones[j].contains(r))
                .collect();
            let mut ok = faces[i].iter().any(|(s, _)| s == &common)
                && faces[j].iter().any(|(s, _)| s == &common);
            if ok {
                let common_rays: Vec<Vec<BigInt>> =
                    common.iter().map(|&r| rays[r].clone()).collect();
                let shared = if common_rays.is_empty() {
                    Cone::from_generators(ambient_rank, &[], &[]).unwrap()
                } else {
                    Cone::from_rays(ambient_rank, &common_rays).unwrap()
                };
                // Dual generators of the intersection cone.
                let mut dual_gens: Vec<Vec<BigInt>> = Vec::new();
                for c in [&cones[i], &cones[j]] {
                    dual_gens.extend(c.facet_normals().iter().cloned());
                    for e in c.equations() {
                        dual_gens.push(e.clone());
                        dual_gens.push(e.iter().map(|x| -x.clone()).collect());
                    }
                }
                let valid_on_intersection =
                    |u: &[BigInt]| nonneg_combination(&dual_gens, u);
                ok = shared.facet_normals().iter().all(|u| valid_on_intersection(u))
                    && shared.equations().iter().all(|e| {
                        let neg: Vec<BigInt> = e.iter().map(|x| -x.clone()).collect();
                        valid_on_intersection(e) && valid_on_intersection(&neg)
                    });
            }
            if !ok {
                violations.push(format!(
                    "max cones #{i} and #{j} do not intersect in a common face"
                ));
            }
        }
    }

    if violations.is_empty() {
        Ok(Fan { ambient_rank, rays, max_cones: sorted_cones, cones, faces })
    } else {
        Err(violations)
    }
}
