//! Integer and rational linear algebra on a lattice `Z^n`: Smith and Hermite
//! normal forms, dual bases, intersections of full-rank sublattices,
//! saturations, and finite quotient groups with their character pairings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::Angle;
use crate::error::{Error, Result};

/// An element of the lattice, in coordinates of its fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn from_i64(c: &[i64]) -> LatticeVector {
        LatticeVector(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> LatticeVector {
        LatticeVector(vec![BigInt::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Coordinates as machine integers.
    ///
    /// # Panics
    /// If a coordinate does not fit into an `i64`.
    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|c| c.to_i64().expect("coordinate overflow")).collect()
    }

    pub fn is_primitive(&self) -> bool {
        let g = self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        g.is_one()
    }

    pub fn add(&self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A rational point of the dual space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalCovector(pub Vec<BigRational>);

impl RationalCovector {
    pub fn zero(n: usize) -> RationalCovector {
        RationalCovector(vec![BigRational::zero(); n])
    }

    pub fn from_i64(c: &[i64]) -> RationalCovector {
        RationalCovector(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn pair(&self, v: &LatticeVector) -> BigRational {
        let mut s = BigRational::zero();
        for (a, b) in self.0.iter().zip(&v.0) {
            if !b.is_zero() {
                s += a * BigRational::from_integer(b.clone());
            }
        }
        s
    }

    pub fn pair_rational(&self, v: &[BigRational]) -> BigRational {
        self.0.iter().zip(v).fold(BigRational::zero(), |s, (a, b)| s + a * b)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, o: &RationalCovector) -> RationalCovector {
        RationalCovector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &RationalCovector) -> RationalCovector {
        RationalCovector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigRational) -> RationalCovector {
        RationalCovector(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for RationalCovector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(x);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `n`.
    pub fn from_columns(n: usize, cols: &[LatticeVector]) -> IntMatrix {
        let mut m = Self::zeros(n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i * cols.len() + j] = v.0[i].clone();
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        m.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.dim(), "matrix shape mismatch");
        LatticeVector(
            (0..self.rows)
                .map(|i| (0..self.cols).fold(BigInt::zero(), |s, j| s + self.get(i, j) * &v.0[j]))
                .collect(),
        )
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    fn to_rational(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| BigRational::from_integer(self.get(i, j).clone())).collect())
            .collect()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        rational_determinant(&self.to_rational()).to_integer()
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        let inv = rational_inverse(&self.to_rational()).ok_or(Error::SingularInput)?;
        let n = self.rows;
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if !inv[i][j].is_integer() {
                    return Err(Error::SingularInput);
                }
                m.set(i, j, inv[i][j].to_integer());
            }
        }
        Ok(m)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let x = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += x;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let x = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = x;
        }
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithDecomposition { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut dirty = false;
            for i in t + 1..r {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let mut fixed = false;
            'search: for i in t + 1..r {
                for j in t + 1..c {
                    if !d.get(i, j).is_multiple_of(d.get(t, t)) {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                        fixed = true;
                        break 'search;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

fn rational_determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[col][col];
            for j in col..n {
                let x = &f * &a[col][j];
                a[i][j] -= x;
            }
        }
    }
    det
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn rational_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(p, col);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..2 * n {
                let x = &f * &a[col][j];
                a[i][j] -= x;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coordinates of `x` in the basis `basis` (a square independent family).
pub fn solve_in_basis(basis: &[Vec<BigRational>], x: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = basis.len();
    // matrix with basis vectors as columns
    let cols: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| basis[j][i].clone()).collect()).collect();
    let inv = rational_inverse(&cols)?;
    Some(inv.iter().map(|row| row.iter().zip(x).fold(BigRational::zero(), |s, (a, b)| s + a * b)).collect())
}

/// The dual basis: covectors `u_i` with `<u_i, v_j> = delta_ij`.
pub fn dual_basis(vectors: &[LatticeVector]) -> Result<Vec<RationalCovector>> {
    let n = vectors.len();
    if vectors.iter().any(|v| v.dim() != n) {
        return Err(Error::SingularInput);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let cols = IntMatrix::from_columns(n, vectors).to_rational();
    let inv = rational_inverse(&cols).ok_or(Error::SingularInput)?;
    Ok(inv.into_iter().map(RationalCovector).collect())
}

fn dual_basis_rational(vectors: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = vectors.len();
    let cols: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| vectors[j][i].clone()).collect()).collect();
    rational_inverse(&cols)
}

/// Row-style Hermite normal form basis of the lattice generated by `gens`:
/// upper triangular, positive pivots, entries above a pivot reduced into
/// `[0, pivot)`. Zero rows are dropped.
pub fn hermite_basis(gens: &[LatticeVector]) -> Vec<LatticeVector> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let n = first.dim();
    let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.0.clone()).collect();
    let mut r = 0;
    for col in 0..n {
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(r) {
                if !row[col].is_zero() && best.is_none_or(|b| row[col].abs() < rows[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * p;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][col].is_zero() {
            if rows[r][col].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot = rows[r].clone();
            for row in rows.iter_mut().take(r) {
                let q = row[col].div_floor(&pivot[col]);
                if !q.is_zero() {
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x -= &q * p;
                    }
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows.into_iter().map(LatticeVector).collect()
}

/// Whether `x` lies in the lattice spanned by the independent family `basis`
/// (which must have full rank in its ambient space).
pub fn lattice_contains(basis: &[LatticeVector], x: &LatticeVector) -> bool {
    let b: Vec<Vec<BigRational>> = basis.iter().map(|v| v.to_rational()).collect();
    match solve_in_basis(&b, &x.to_rational()) {
        Some(c) => c.iter().all(|c| c.is_integer()),
        None => false,
    }
}

/// Basis (in Hermite form) of the intersection of full-rank sublattices,
/// each given by a generating family of `n` independent vectors.
///
/// The intersection is the dual of the sum of the dual lattices.
pub fn lattice_intersection(sublattices: &[Vec<LatticeVector>]) -> Result<Vec<LatticeVector>> {
    let Some(first) = sublattices.first() else {
        return Err(Error::SingularInput);
    };
    let n = first.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut duals: Vec<RationalCovector> = Vec::new();
    for gens in sublattices {
        if gens.len() != n {
            return Err(Error::SingularInput);
        }
        duals.extend(dual_basis(gens)?);
    }
    let den = duals
        .iter()
        .flat_map(|u| u.0.iter())
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let scaled: Vec<LatticeVector> = duals
        .iter()
        .map(|u| LatticeVector(u.0.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect()))
        .collect();
    let sum_basis = hermite_basis(&scaled);
    if sum_basis.len() != n {
        return Err(Error::SingularInput);
    }
    let sum_rational: Vec<Vec<BigRational>> = sum_basis
        .iter()
        .map(|v| v.0.iter().map(|c| BigRational::new(c.clone(), den.clone())).collect())
        .collect();
    let back = dual_basis_rational(&sum_rational).ok_or(Error::SingularInput)?;
    let mut result = Vec::with_capacity(n);
    for u in back {
        if !u.iter().all(|c| c.is_integer()) {
            return Err(Error::InvariantViolated("intersection is not integral".into()));
        }
        result.push(LatticeVector(u.iter().map(|c| c.to_integer()).collect()));
    }
    Ok(hermite_basis(&result))
}

/// Quotient of `Z^n` by the saturation of the span of `sub`.
#[derive(Clone, Debug)]
pub struct Saturation {
    /// `(n-k) x n` integer matrix; its rows give coordinates on `Z^n / (Z^n cap span sub)`.
    pub projection: IntMatrix,
    /// A basis of `Z^n cap span(sub)`.
    pub basis: Vec<LatticeVector>,
}

pub fn saturate(n: usize, sub: &[LatticeVector]) -> Result<Saturation> {
    let k = sub.len();
    if k == 0 {
        return Ok(Saturation {
            projection: IntMatrix::identity(n),
            basis: Vec::new(),
        });
    }
    let b = IntMatrix::from_columns(n, sub);
    let snf = smith_normal_form(&b);
    if snf.rank() != k {
        return Err(Error::SingularInput);
    }
    let u_inv = snf.u.unimodular_inverse()?;
    let mut projection = IntMatrix::zeros(n - k, n);
    for i in k..n {
        for j in 0..n {
            projection.set(i - k, j, snf.u.get(i, j).clone());
        }
    }
    let basis = (0..k).map(|j| u_inv.column(j)).collect();
    Ok(Saturation { projection, basis })
}

/// Element of a finite abelian group in Smith coordinates, `0 <= a_j < d_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<i64>);

/// The finite group `Z^k / <generators>` for `k` independent generators.
#[derive(Clone, Debug)]
pub struct FiniteAbelianGroup {
    invariants: Vec<i64>,
    generators: Vec<LatticeVector>,
    generator_duals: Vec<RationalCovector>,
    u: IntMatrix,
    u_inv: IntMatrix,
}

impl FiniteAbelianGroup {
    /// `Z^k / L'` where `L'` is spanned by `generators`.
    pub fn quotient(generators: &[LatticeVector]) -> Result<FiniteAbelianGroup> {
        let k = generators.len();
        let generator_duals = dual_basis(generators)?;
        if k == 0 {
            return Ok(FiniteAbelianGroup {
                invariants: Vec::new(),
                generators: Vec::new(),
                generator_duals,
                u: IntMatrix::identity(0),
                u_inv: IntMatrix::identity(0),
            });
        }
        let a = IntMatrix::from_columns(k, generators);
        let snf = smith_normal_form(&a);
        let invariants = snf
            .diagonal()
            .iter()
            .map(|d| d.to_i64().ok_or(Error::InvariantViolated("group too large".into())))
            .collect::<Result<Vec<i64>>>()?;
        if invariants.contains(&0) {
            return Err(Error::SingularInput);
        }
        let u_inv = snf.u.unimodular_inverse()?;
        Ok(FiniteAbelianGroup { invariants, generators: generators.to_vec(), generator_duals, u: snf.u, u_inv })
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariants
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().map(|&d| d as u64).product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.invariants.len()])
    }

    /// All elements, in lexicographic order of Smith coordinates.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (j, &d) in self.invariants.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for a in 0..d {
                    let mut x = e.clone();
                    x.0[j] = a;
                    next.push(x);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Class of a lattice vector.
    pub fn class_of(&self, x: &LatticeVector) -> GroupElement {
        let y = self.u.apply(x);
        GroupElement(
            y.0.iter()
                .zip(&self.invariants)
                .map(|(c, &d)| c.mod_floor(&BigInt::from(d)).to_i64().expect("reduced below d"))
                .collect(),
        )
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.invariants)
                .map(|((x, y), &d)| (x + y).rem_euclid(d))
                .collect(),
        )
    }

    /// Coordinates `f_i` of the representative of `h` in the generator basis;
    /// every `f_i` lies in `[0, 1)`. This fixes the representative uniquely.
    pub fn fractional_coordinates(&self, h: &GroupElement) -> Vec<BigRational> {
        let raw = self.u_inv.apply(&LatticeVector(h.0.iter().map(|&a| BigInt::from(a)).collect()));
        self.generator_duals.iter().map(|u| { let c = u.pair(&raw); &c - c.floor() }).collect()
    }

    /// The representative of `h` in the half-open parallelepiped spanned by
    /// the generators; the identity maps to zero.
    pub fn representative(&self, h: &GroupElement) -> LatticeVector {
        let k = self.rank();
        let f = self.fractional_coordinates(h);
        let mut out = vec![BigRational::zero(); k];
        for (fi, g) in f.iter().zip(&self.generators) {
            for (o, c) in out.iter_mut().zip(&g.0) {
                *o += fi * BigRational::from_integer(c.clone());
            }
        }
        LatticeVector(out.into_iter().map(|c| c.to_integer()).collect())
    }

    /// `<u, v(h)>` reduced modulo one.
    pub fn chi_angle(&self, u: &RationalCovector, h: &GroupElement) -> Angle {
        chi_angle(u, &self.representative(h))
    }
}

/// `<u, x>` reduced modulo one.
pub fn chi_angle(u: &RationalCovector, x: &LatticeVector) -> Angle {
    Angle::from_rational(&u.pair(x))
}

/// `L / <generators>` where `generators` are `n` independent vectors of `Z^n`.
pub fn quotient_group(generators: &[LatticeVector]) -> Result<FiniteAbelianGroup> {
    FiniteAbelianGroup::quotient(generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn check_snf(a: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let diag = s.diagonal();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn snf_examples() {
        let s = check_snf(&IntMatrix::from_rows(&[vec![1, 0], vec![0, 3]]));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
        let s = check_snf(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        let s = check_snf(&IntMatrix::zeros(2, 2));
        assert_eq!(s.d, IntMatrix::zeros(2, 2));
        check_snf(&IntMatrix::from_rows(&[vec![2, 0, 1], vec![0, 3, 5]]));
        check_snf(&IntMatrix::from_rows(&[vec![4, 6], vec![6, 9], vec![2, 12]]));
    }

    #[test]
    fn dual_basis_examples() {
        let u = dual_basis(&[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        assert_eq!(u, vec![RationalCovector::from_i64(&[1, 0]), RationalCovector::from_i64(&[0, 1])]);
        let u = dual_basis(&[lv(&[1, 0]), lv(&[0, 3])]).unwrap();
        assert_eq!(u[1], RationalCovector(vec![rat(0, 1), rat(1, 3)]));
        let u = dual_basis(&[lv(&[1, 0]), lv(&[-1, -3])]).unwrap();
        assert_eq!(u[0], RationalCovector(vec![rat(1, 1), rat(-1, 3)]));
        assert_eq!(u[1], RationalCovector(vec![rat(0, 1), rat(-1, 3)]));
        assert_eq!(dual_basis(&[lv(&[1, 0]), lv(&[2, 0])]), Err(Error::SingularInput));
    }

    #[test]
    fn quotient_examples() {
        let g = quotient_group(&[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        assert_eq!(g.order(), 1);
        let g = quotient_group(&[lv(&[1, 0]), lv(&[0, 3])]).unwrap();
        assert_eq!(g.order(), 3);
        let reps: Vec<_> = g.elements().iter().map(|h| g.representative(h)).collect();
        assert_eq!(reps, vec![lv(&[0, 0]), lv(&[0, 1]), lv(&[0, 2])]);
        let g = quotient_group(&[lv(&[0, 2]), lv(&[-1, -2])]).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.representative(&g.identity()).is_zero());
    }

    #[test]
    fn chi_angle_examples() {
        let u = RationalCovector(vec![rat(0, 1), rat(1, 3)]);
        assert_eq!(chi_angle(&u, &lv(&[0, 1])), Angle::new(1, 3));
        assert_eq!(chi_angle(&u, &lv(&[0, 0])), Angle::ZERO);
        assert_eq!(chi_angle(&RationalCovector::from_i64(&[1, 0]), &lv(&[0, 2])), Angle::ZERO);
    }

    #[test]
    fn intersection_examples() {
        let z2 = vec![lv(&[1, 0]), lv(&[0, 1])];
        assert_eq!(lattice_intersection(std::slice::from_ref(&z2)).unwrap(), z2);
        let b3 = vec![
            vec![lv(&[1, 0]), lv(&[0, 3])],
            vec![lv(&[1, 0]), lv(&[-1, -3])],
            vec![lv(&[0, 3]), lv(&[-1, -3])],
        ];
        assert_eq!(lattice_intersection(&b3).unwrap(), vec![lv(&[1, 0]), lv(&[0, 3])]);
        let two = vec![vec![lv(&[2, 0]), lv(&[0, 1])], vec![lv(&[1, 0]), lv(&[0, 2])]];
        assert_eq!(lattice_intersection(&two).unwrap(), vec![lv(&[2, 0]), lv(&[0, 2])]);
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_basis(&[lv(&[3, 1]), lv(&[0, 2]), lv(&[6, 0])]);
        let b = hermite_basis(&[lv(&[3, 3]), lv(&[0, 2])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![lv(&[3, 1]), lv(&[0, 2])]);
    }

    #[test]
    fn saturation_of_a_line() {
        let s = saturate(2, &[lv(&[2, 0])]).unwrap();
        assert_eq!(s.basis.len(), 1);
        assert!(lattice_contains(&[s.basis[0].clone(), lv(&[0, 1])], &lv(&[1, 0])));
        assert!(s.projection.apply(&lv(&[1, 0])).is_zero());
        assert_eq!(s.projection.apply(&lv(&[0, 1])).0[0].abs(), BigInt::one());
    }
}
