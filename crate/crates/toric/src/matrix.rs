//! Exact integer linear algebra: Smith/Hermite normal forms, kernels,
//! cokernels, and the small solvers the polyhedral layers are built on.
//!
//! Everything here is arbitrary-precision and deterministic: matrices are
//! immutable values and each algorithm follows a fixed pivoting rule so that
//! repeated runs produce identical output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(rows * cols, entries.len(), "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        IntMatrix::new(r, c, rows.iter().flatten().cloned().collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let owned: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::from_rows(&owned)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<BigInt>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                *m.at_mut(i, j) = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length must equal column count");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.at(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    let tmp = m.at(k, j).clone();
                    *m.at_mut(k, j) = m.at(p, j).clone();
                    *m.at_mut(p, j) = tmp;
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    *m.at_mut(i, j) = num / &prev;
                }
                *m.at_mut(i, k) = BigInt::zero();
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }

    pub fn rank(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        smith_normal_form_unchecked(self)
            .invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Unimodular factorization `U * A * V = D` with `D` diagonal, each diagonal
/// entry dividing the next and zeros last.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Full diagonal of `d` (length `min(rows, cols)`), zeros included.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Structure of a finitely generated abelian group `Z^free ⊕ ⊕ Z/d_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    /// Nontrivial invariant factors (> 1), each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product::<BigInt>().max(BigInt::one()))
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Smith normal form with a fixed pivot rule: the submatrix entry of smallest
/// absolute value wins, ties broken row-major. Errors on empty input.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SnfDecomposition> {
    if a.is_empty() {
        return Err(ToricError::EmptyMatrix);
    }
    Ok(smith_normal_form_unchecked(a))
}

fn pick_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..m.rows() {
        for j in k..m.cols() {
            let e = m.at(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best {
                Some((_, _, b)) if *b <= a => {}
                _ => best = Some((i, j, a)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let tmp = m.at(a, j).clone();
        *m.at_mut(a, j) = m.at(b, j).clone();
        *m.at_mut(b, j) = tmp;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let tmp = m.at(i, a).clone();
        *m.at_mut(i, a) = m.at(i, b).clone();
        *m.at_mut(i, b) = tmp;
    }
}

/// row[a] -= q * row[b]
fn row_sub(m: &mut IntMatrix, a: usize, q: &BigInt, b: usize) {
    for j in 0..m.cols() {
        let sub = q * m.at(b, j);
        *m.at_mut(a, j) -= sub;
    }
}

fn col_sub(m: &mut IntMatrix, a: usize, q: &BigInt, b: usize) {
    for i in 0..m.rows() {
        let sub = q * m.at(i, b);
        *m.at_mut(i, a) -= sub;
    }
}

fn smith_normal_form_unchecked(a: &IntMatrix) -> SnfDecomposition {
    let mut m = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let steps = a.rows().min(a.cols());

    for k in 0..steps {
        'pivot: loop {
            let Some((pi, pj)) = pick_pivot(&m, k) else {
                break 'pivot; // remaining submatrix is zero
            };
            swap_rows(&mut m, k, pi);
            swap_rows(&mut u, k, pi);
            swap_cols(&mut m, k, pj);
            swap_cols(&mut v, k, pj);

            let mut clean = true;
            for i in k + 1..m.rows() {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let q = m.at(i, k) / m.at(k, k);
                if !q.is_zero() {
                    row_sub(&mut m, i, &q, k);
                    row_sub(&mut u, i, &q, k);
                }
                if !m.at(i, k).is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..m.cols() {
                if m.at(k, j).is_zero() {
                    continue;
                }
                let q = m.at(k, j) / m.at(k, k);
                if !q.is_zero() {
                    col_sub(&mut m, j, &q, k);
                    col_sub(&mut v, j, &q, k);
                }
                if !m.at(k, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot; // remainders got smaller; re-pick
            }
            // Force the divisibility chain: fold any non-divisible entry
            // into row k and keep reducing.
            let pivot = m.at(k, k).clone();
            let mut offender = None;
            'scan: for i in k + 1..m.rows() {
                for j in k + 1..m.cols() {
                    if !m.at(i, j).mod_floor(&pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_sub(&mut m, k, &one, i); // row_k += row_i
                    row_sub(&mut u, k, &one, i);
                }
                None => break 'pivot,
            }
        }
    }

    // Positive diagonal.
    for k in 0..steps {
        if m.at(k, k).is_negative() {
            for j in 0..m.cols() {
                let neg = -m.at(k, j).clone();
                *m.at_mut(k, j) = neg;
            }
            for j in 0..u.cols() {
                let neg = -u.at(k, j).clone();
                *u.at_mut(k, j) = neg;
            }
        }
    }

    let invariant_factors: Vec<BigInt> = (0..steps).map(|k| m.at(k, k).clone()).collect();
    SnfDecomposition { u, d: m, v, invariant_factors }
}

/// Basis of the saturated lattice `{x : A·x = 0}`, returned as the columns of
/// an `A.cols() × nullity` matrix.
pub fn kernel_basis(a: &IntMatrix) -> Result<IntMatrix> {
    if a.is_empty() {
        return Err(ToricError::EmptyMatrix);
    }
    let snf = smith_normal_form_unchecked(a);
    let rank = snf.rank();
    let cols: Vec<Vec<BigInt>> = (rank..a.cols()).map(|j| snf.v.col(j)).collect();
    if cols.is_empty() {
        return Ok(IntMatrix::zero(a.cols(), 0));
    }
    Ok(IntMatrix::from_cols(&cols))
}

/// Cokernel of the column action `Z^cols → Z^rows`.
pub fn cokernel_structure(a: &IntMatrix) -> Result<AbelianGroupStructure> {
    if a.is_empty() {
        return Err(ToricError::EmptyMatrix);
    }
    let snf = smith_normal_form_unchecked(a);
    let rank = snf.rank();
    let torsion: Vec<BigInt> = snf
        .invariant_factors
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    Ok(AbelianGroupStructure { free_rank: a.rows() - rank, torsion })
}

/// Canonical basis of the column lattice of `a`, in column echelon form:
/// pivot rows strictly increase, pivots are positive, entries left of a pivot
/// in its row are reduced into `[0, pivot)`. Zero columns are dropped.
pub fn column_hermite_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.rows();
    let mut cols: Vec<Vec<BigInt>> = a.col_vectors();
    let mut placed = 0usize;
    for row in 0..n {
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for (j, col) in cols.iter().enumerate().skip(placed) {
                if col[row].is_zero() {
                    continue;
                }
                let abs = col[row].abs();
                match &best {
                    Some((_, b)) if *b <= abs => {}
                    _ => best = Some((j, abs)),
                }
            }
            let Some((pj, _)) = best else { break };
            cols.swap(placed, pj);
            let mut finished = true;
            for j in placed + 1..cols.len() {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = &cols[j][row] / &cols[placed][row];
                if !q.is_zero() {
                    for i in 0..n {
                        let sub = &q * &cols[placed][i];
                        cols[j][i] -= sub;
                    }
                }
                if !cols[j][row].is_zero() {
                    finished = false;
                }
            }
            if finished {
                if cols[placed][row].is_negative() {
                    for x in cols[placed].iter_mut() {
                        *x = -x.clone();
                    }
                }
                // Reduce earlier columns against this pivot.
                let pivot = cols[placed][row].clone();
                for j in 0..placed {
                    let q = cols[j][row].div_floor(&pivot);
                    if !q.is_zero() {
                        for i in 0..n {
                            let sub = &q * &cols[placed][i];
                            cols[j][i] -= sub;
                        }
                    }
                }
                placed += 1;
                break;
            }
        }
        if placed == cols.len() {
            break;
        }
    }
    cols.truncate(placed);
    if cols.is_empty() {
        IntMatrix::zero(n, 0)
    } else {
        IntMatrix::from_cols(&cols)
    }
}

/// One rational solution of `A·x = b` (free variables set to zero), or `None`
/// if the system is inconsistent. Deterministic column-order pivoting.
pub fn solve_rational(a: &IntMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len(), "rhs length must equal row count");
    let rows = a.rows();
    let cols = a.cols();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..cols)
                .map(|j| BigRational::from(a.at(i, j).clone()))
                .collect();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for row in m.iter().skip(r) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// Exact inverse of a matrix with determinant ±1.
pub fn inverse_unimodular(a: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::one();
        let x = solve_rational(a, &e).expect("unimodular matrix is invertible");
        cols.push(
            x.into_iter()
                .map(|q| {
                    assert!(q.is_integer(), "inverse of unimodular matrix is integral");
                    q.to_integer()
                })
                .collect::<Vec<BigInt>>(),
        );
    }
    IntMatrix::from_cols(&cols)
}

/// Smallest positive `r` such that `A·u = r·c` has an integer solution `u`,
/// together with one deterministic such `u`. Returns `None` when `A·x = c`
/// has no rational solution at all.
pub fn integral_level_solve(a: &IntMatrix, c: &[BigInt]) -> Option<(BigInt, Vec<BigInt>)> {
    assert_eq!(a.rows(), c.len());
    let snf = smith_normal_form_unchecked(a);
    let t = snf.u.mul_vec(c);
    let rank = snf.rank();
    // Rows past the rank impose r * t_i = 0.
    if t.iter().skip(rank).any(|x| !x.is_zero()) {
        return None;
    }
    let mut r = BigInt::one();
    for i in 0..rank {
        let d = &snf.invariant_factors[i];
        let g = d.gcd(&t[i]);
        r = r.lcm(&(d / g));
    }
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..rank {
        y[i] = &r * &t[i] / &snf.invariant_factors[i];
    }
    let u = snf.v.mul_vec(&y);
    Some((r, u))
}

/// Basis for the intersection of the column lattices of `a` and `b`
/// (matrices over the same row space), in Hermite form.
pub fn lattice_intersection(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    assert_eq!(a.rows(), b.rows());
    if a.cols() == 0 || b.cols() == 0 {
        return IntMatrix::zero(a.rows(), 0);
    }
    let mut stacked_cols = a.col_vectors();
    for col in b.col_vectors() {
        stacked_cols.push(col.iter().map(|x| -x.clone()).collect());
    }
    let stacked = IntMatrix::from_cols(&stacked_cols);
    let ker = kernel_basis(&stacked).expect("nonempty stack");
    if ker.cols() == 0 {
        return IntMatrix::zero(a.rows(), 0);
    }
    // x = A * (top block of kernel columns)
    let top = IntMatrix::from_rows(&ker.row_vectors()[..a.cols()]);
    column_hermite_basis(&a.mul(&top))
}

/// Exact Farkas test: is `target` a nonnegative rational combination of
/// `gens`? Phase-one simplex over exact rationals with Bland's rule.
pub fn nonneg_combination(gens: &[Vec<BigInt>], target: &[BigInt]) -> bool {
    let d = target.len();
    let m = gens.len();
    if target.iter().all(Zero::is_zero) {
        return true;
    }
    if m == 0 {
        return false;
    }
    // Tableau columns: lambda_0..lambda_{m-1}, artificial_0..artificial_{d-1}, rhs.
    let cols = m + d + 1;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(d);
    for r in 0..d {
        let flip = target[r].is_negative();
        let sign = if flip { -BigRational::one() } else { BigRational::one() };
        let mut row = vec![BigRational::zero(); cols];
        for (j, g) in gens.iter().enumerate() {
            row[j] = &sign * BigRational::from(g[r].clone());
        }
        row[m + r] = BigRational::one();
        row[cols - 1] = &sign * BigRational::from(target[r].clone());
        tab.push(row);
    }
    let mut basis: Vec<usize> = (0..d).map(|r| m + r).collect();
    // Reduced-cost row for minimizing the artificial sum: obj[j] = z_j - c_j.
    let mut obj = vec![BigRational::zero(); cols];
    for row in &tab {
        for (o, x) in obj.iter_mut().zip(row) {
            *o += x;
        }
    }
    for o in obj.iter_mut().skip(m).take(d) {
        *o -= BigRational::one();
    }
    while let Some(enter) = (0..m + d).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for r in 0..d {
            if tab[r][enter].is_positive() {
                let ratio = &tab[r][cols - 1] / &tab[r][enter];
                let better = match (&best, leave) {
                    (None, _) => true,
                    (Some(b), Some(lr)) => ratio < *b || (ratio == *b && basis[r] < basis[lr]),
                    _ => false,
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(lr) = leave else {
            // The phase-one objective is bounded below by zero, so an
            // unbounded column cannot occur.
            debug_assert!(false, "unbounded phase-one simplex");
            break;
        };
        let piv = tab[lr][enter].clone();
        for x in tab[lr].iter_mut() {
            *x /= &piv;
        }
        for r in 0..d {
            if r != lr && !tab[r][enter].is_zero() {
                let f = tab[r][enter].clone();
                for j in 0..cols {
                    let sub = &f * &tab[lr][j];
                    tab[r][j] -= sub;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..cols {
                let sub = &f * &tab[lr][j];
                obj[j] -= sub;
            }
        }
        basis[lr] = enter;
    }
    obj[cols - 1].is_zero()
}

/// Rank of a set of integer row vectors, by rational elimination.
pub fn rank_of_rows(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let sub = &f * &m[rank][j];
                    m[i][j] -= sub;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// gcd of a slice; zero for an all-zero (or empty) slice.
pub fn gcd_of(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Divide by the gcd of the entries. Errors on the zero vector.
pub fn primitivize(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = gcd_of(v);
    if g.is_zero() {
        return Err(ToricError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}
