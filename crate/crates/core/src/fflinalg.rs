//! Dense linear algebra over a [`Field`].

use thiserror::Error;

use crate::gf::{Field, GfError, Gf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("evaluation point {0} repeated")]
    RepeatedPoint(usize),
    #[error("evaluation points do not form a multiplicative subgroup")]
    NotSubgroup,
    #[error("length {n} is divisible by the characteristic {p}")]
    LengthDivisibleByCharacteristic { n: usize, p: u32 },
    #[error(transparent)]
    Field(#[from] GfError),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// A vector of elements of one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFVector {
    field: Field,
    entries: Vec<Gf>,
}

impl FFVector {
    pub fn new(field: &Field, entries: Vec<Gf>) -> Self {
        debug_assert!(entries.iter().all(|&x| field.contains(x)));
        FFVector { field: field.clone(), entries }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Gf] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Gf> {
        self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    /// `Σ x_i y_i`.
    pub fn dot(&self, other: &FFVector) -> Result<Gf> {
        check_same(&self.field, &other.field)?;
        if self.len() != other.len() {
            return Err(LinalgError::Dimension(format!("{} vs {}", self.len(), other.len())));
        }
        let f = &self.field;
        Ok(f.sum(self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.mul(a, b))))
    }

    /// `Σ x_i y_i^q` over GF(q^2).
    pub fn hermitian_dot(&self, other: &FFVector) -> Result<Gf> {
        check_same(&self.field, &other.field)?;
        if self.len() != other.len() {
            return Err(LinalgError::Dimension(format!("{} vs {}", self.len(), other.len())));
        }
        let f = &self.field;
        let ext = f.quadratic()?;
        Ok(f.sum(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.mul(a, ext.frobenius(b))),
        ))
    }
}

fn check_same(a: &Field, b: &Field) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(LinalgError::FieldMismatch)
    }
}

/// Row-major dense matrix. Zero-row matrices are allowed so that the
/// trivial code has a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Gf>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FFMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FFMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FFMatrix { field: field.clone(), rows, cols, data: vec![Gf::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Gf::ONE;
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Gf>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(FFMatrix { field: field.clone(), rows: nrows, cols, data: rows.concat() })
    }

    /// Empty matrix with the given column count.
    pub fn empty(field: &Field, cols: usize) -> Self {
        Self::zeros(field, 0, cols)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Gf] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> FFVector {
        FFVector::new(&self.field, self.row(i).to_vec())
    }

    pub fn to_rows(&self) -> Vec<Vec<Gf>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &FFMatrix) -> Result<FFMatrix> {
        check_same(&self.field, &other.field)?;
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = FFMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other[(l, j)]);
                    out[(i, j)] = f.add(out[(i, j)], t);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &FFVector) -> Result<FFVector> {
        check_same(&self.field, v.field())?;
        if self.cols != v.len() {
            return Err(LinalgError::Dimension(format!("{} columns vs length {}", self.cols, v.len())));
        }
        let f = &self.field;
        let out = (0..self.rows)
            .map(|i| f.sum(self.row(i).iter().zip(v.entries()).map(|(&a, &b)| f.mul(a, b))))
            .collect();
        Ok(FFVector::new(f, out))
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut out = FFMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Entrywise `x ↦ x^q` over GF(q^2).
    pub fn frobenius(&self) -> Result<FFMatrix> {
        let ext = self.field.quadratic()?;
        let mut out = self.clone();
        for x in &mut out.data {
            *x = ext.frobenius(*x);
        }
        Ok(out)
    }

    /// Frobenius applied entrywise, then transposed.
    pub fn conj_transpose(&self) -> Result<FFMatrix> {
        Ok(self.frobenius()?.transpose())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FFMatrix) -> Result<FFMatrix> {
        check_same(&self.field, &other.field)?;
        if self.rows != other.rows {
            return Err(LinalgError::Dimension(format!("{} rows vs {}", self.rows, other.rows)));
        }
        let rows = (0..self.rows).map(|i| [self.row(i), other.row(i)].concat()).collect();
        FFMatrix::from_rows(&self.field, rows).map(|mut m| {
            m.cols = self.cols + other.cols;
            m
        })
    }

    /// Entrywise negation.
    pub fn neg(&self) -> FFMatrix {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = self.field.neg(*x);
        }
        out
    }

    /// Column `j` multiplied by `d_j`.
    pub fn scale_columns(&self, d: &[Gf]) -> Result<FFMatrix> {
        if d.len() != self.cols {
            return Err(LinalgError::Dimension(format!("{} scales for {} columns", d.len(), self.cols)));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, &s) in d.iter().enumerate() {
                out[(i, j)] = self.field.mul(self[(i, j)], s);
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form, pivoting on the first nonzero entry.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m[(r, c)]).expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let t = f.mul(factor, m[(r, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> FFMatrix {
        let Rref { matrix, rank, .. } = self.rref();
        let rows = (0..rank).map(|i| matrix.row(i).to_vec()).collect::<Vec<_>>();
        let mut out = FFMatrix::from_rows(&self.field, rows).expect("rows share a width");
        out.cols = self.cols;
        out
    }

    /// A `(cols - rank) × cols` full-rank `K` with `self · K^T = 0`.
    pub fn kernel_basis(&self) -> FFMatrix {
        let f = &self.field;
        let Rref { matrix, rank, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = FFMatrix::zeros(f, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            k[(row, fc)] = Gf::ONE;
            for (pi, &pc) in pivots.iter().enumerate().take(rank) {
                k[(row, pc)] = f.neg(matrix[(pi, fc)]);
            }
        }
        k
    }

    /// Solves `x · self = b` for a row vector `x`, returning one solution
    /// when the system is consistent.
    pub fn solve_left(&self, b: &[Gf]) -> Result<Option<Vec<Gf>>> {
        if b.len() != self.cols {
            return Err(LinalgError::Dimension(format!("rhs length {} vs {} columns", b.len(), self.cols)));
        }
        // x · A = b  ⇔  A^T x^T = b^T; eliminate on the augmented [A^T | b^T].
        let f = &self.field;
        let at = self.transpose();
        let rhs = FFMatrix::from_rows(f, b.iter().map(|&x| vec![x]).collect())?;
        let aug = at.hstack(&rhs)?;
        let Rref { matrix, rank, pivots } = aug.rref();
        if pivots.last() == Some(&self.rows) {
            return Ok(None);
        }
        let mut x = vec![Gf::ZERO; self.rows];
        for (i, &pc) in pivots.iter().enumerate().take(rank) {
            x[pc] = matrix[(i, self.rows)];
        }
        Ok(Some(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for FFMatrix {
    type Output = Gf;

    fn index(&self, (i, j): (usize, usize)) -> &Gf {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FFMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Gf {
        &mut self.data[i * self.cols + j]
    }
}

fn check_distinct(points: &[Gf]) -> Result<()> {
    for (i, x) in points.iter().enumerate() {
        if points[..i].contains(x) {
            return Err(LinalgError::RepeatedPoint(i));
        }
    }
    Ok(())
}

/// `rows × n` Vandermonde matrix with entry `(i, j) = α_j^i`.
pub fn vandermonde(alpha: &FFVector, rows: usize) -> Result<FFMatrix> {
    check_distinct(alpha.entries())?;
    let f = alpha.field();
    let mut m = FFMatrix::zeros(f, rows, alpha.len());
    for (j, &a) in alpha.entries().iter().enumerate() {
        let mut p = Gf::ONE;
        for i in 0..rows {
            m[(i, j)] = p;
            p = f.mul(p, a);
        }
    }
    Ok(m)
}

/// The `k × k` anti-identity.
pub fn reversal(field: &Field, k: usize) -> FFMatrix {
    let mut m = FFMatrix::zeros(field, k, k);
    for i in 0..k {
        m[(i, k - 1 - i)] = Gf::ONE;
    }
    m
}

pub fn diagonal(v: &FFVector) -> FFMatrix {
    let mut m = FFMatrix::zeros(v.field(), v.len(), v.len());
    for (i, &x) in v.entries().iter().enumerate() {
        m[(i, i)] = x;
    }
    m
}

/// Checks that the entries are exactly the n-th roots of unity, i.e. a
/// multiplicative subgroup of order `n`, and that `n` is invertible.
pub fn check_multiplicative_subgroup(alpha: &FFVector) -> Result<()> {
    let f = alpha.field();
    let n = alpha.len();
    check_distinct(alpha.entries())?;
    if n == 0 || (f.order() as usize - 1) % n != 0 {
        return Err(LinalgError::NotSubgroup);
    }
    if alpha.entries().iter().any(|&a| a.is_zero() || f.pow(a, n as u64) != Gf::ONE) {
        return Err(LinalgError::NotSubgroup);
    }
    if n as u64 % f.characteristic() as u64 == 0 {
        return Err(LinalgError::LengthDivisibleByCharacteristic { n, p: f.characteristic() });
    }
    Ok(())
}

/// `diag(α / n)`: entrywise α_i times the inverse of `n mod p`.
pub fn alpha_over_n(alpha: &FFVector) -> Result<FFVector> {
    let f = alpha.field();
    let n = alpha.len();
    let n_inv = f.inv(f.from_int(n as i64)).map_err(|_| {
        LinalgError::LengthDivisibleByCharacteristic { n, p: f.characteristic() }
    })?;
    Ok(FFVector::new(f, alpha.entries().iter().map(|&a| f.mul(a, n_inv)).collect()))
}

/// Whether `V^T · (J · V · diag(α/n)) = I` holds for the square Vandermonde
/// matrix over a multiplicative subgroup.
pub fn inverse_vandermonde_identity_check(alpha: &FFVector) -> Result<bool> {
    check_multiplicative_subgroup(alpha)?;
    let n = alpha.len();
    let f = alpha.field();
    let v = vandermonde(alpha, n)?;
    let candidate = reversal(f, n).mul(&v)?.mul(&diagonal(&alpha_over_n(alpha)?))?;
    Ok(v.transpose().mul(&candidate)? == FFMatrix::identity(f, n))
}

/// The `n` n-th roots of unity in canonical element order.
pub fn roots_of_unity(field: &Field, n: usize) -> Option<FFVector> {
    let group = field.order() as usize - 1;
    if n == 0 || group % n != 0 {
        return None;
    }
    let step = (group / n) as i64;
    let mut pts: Vec<Gf> = (0..n as i64).map(|i| field.omega_pow(i * step)).collect();
    pts.sort();
    Some(FFVector::new(field, pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf49() -> Field {
        Field::new(7, 2).unwrap()
    }

    fn random_matrix(f: &Field, rows: usize, cols: usize, seed: &[u32]) -> FFMatrix {
        let mut m = FFMatrix::zeros(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = seed[(i * cols + j) % seed.len()];
                m[(i, j)] = f.from_coeffs(&[s % 7, (s / 7) % 7]).unwrap();
            }
        }
        m
    }

    #[test]
    fn identity_and_reversal() {
        let f = gf49();
        let a = random_matrix(&f, 3, 4, &[3, 17, 40, 2, 9, 33]);
        assert_eq!(a.mul(&FFMatrix::identity(&f, 4)).unwrap(), a);
        for k in 1..6 {
            let j = reversal(&f, k);
            assert_eq!(j.mul(&j).unwrap(), FFMatrix::identity(&f, k));
        }
        assert_eq!(reversal(&f, 1), FFMatrix::identity(&f, 1));
        let (x, y) = (f.omega_pow(3), f.omega_pow(10));
        let col = FFVector::new(&f, vec![x, y]);
        assert_eq!(reversal(&f, 2).mul_vec(&col).unwrap().entries(), &[y, x]);
        let one = FFVector::new(&f, vec![Gf::ONE]);
        assert_eq!(diagonal(&one), FFMatrix::identity(&f, 1));
    }

    #[test]
    fn dimension_and_field_mismatch() {
        let f = gf49();
        let a = FFMatrix::zeros(&f, 2, 3);
        assert!(matches!(a.mul(&a), Err(LinalgError::Dimension(_))));
        let g = Field::new(3, 2).unwrap();
        let b = FFMatrix::zeros(&g, 3, 2);
        assert_eq!(a.mul(&b), Err(LinalgError::FieldMismatch));
        assert!(FFMatrix::zeros(&Field::new(7, 1).unwrap(), 1, 1).conj_transpose().is_err());
    }

    #[test]
    fn conj_transpose_of_subfield_matrix_is_transpose() {
        let f = gf49();
        let sub = f.quadratic().unwrap().subfield_elements();
        let rows = vec![vec![sub[1], sub[3], sub[0]], vec![sub[6], sub[2], sub[5]]];
        let m = FFMatrix::from_rows(&f, rows).unwrap();
        assert_eq!(m.conj_transpose().unwrap(), m.transpose());
    }

    #[test]
    fn rref_small_cases() {
        let f = gf49();
        let z = FFMatrix::zeros(&f, 3, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis(), FFMatrix::identity(&f, 4));
        let i = FFMatrix::identity(&f, 4);
        assert_eq!(i.rank(), 4);
        assert_eq!(i.kernel_basis().rows(), 0);
        let alpha = FFVector::new(&f, (0..6).map(|e| f.omega_pow(e * 5)).collect());
        let v = vandermonde(&alpha, 4).unwrap();
        assert_eq!(v.rank(), 4);
    }

    #[test]
    fn vandermonde_shapes() {
        let f = gf49();
        let alpha = FFVector::new(&f, vec![f.omega_pow(2), f.omega_pow(9), Gf::ZERO]);
        let v = vandermonde(&alpha, 1).unwrap();
        assert_eq!(v.row(0), &[Gf::ONE; 3]);
        let single = FFVector::new(&f, vec![Gf::ONE]);
        assert_eq!(vandermonde(&single, 3).unwrap().to_rows(), vec![vec![Gf::ONE]; 3]);
        let dup = FFVector::new(&f, vec![Gf::ONE, Gf::ONE]);
        assert_eq!(vandermonde(&dup, 2), Err(LinalgError::RepeatedPoint(1)));
    }

    #[test]
    fn vandermonde_inverse_identity() {
        let f7 = Field::new(7, 1).unwrap();
        let one = FFVector::new(&f7, vec![Gf::ONE]);
        assert!(inverse_vandermonde_identity_check(&one).unwrap());
        let pm1 = FFVector::new(&f7, vec![f7.from_int(1), f7.from_int(6)]);
        assert!(inverse_vandermonde_identity_check(&pm1).unwrap());
        let f = gf49();
        let eighth = roots_of_unity(&f, 8).unwrap();
        assert!(inverse_vandermonde_identity_check(&eighth).unwrap());
        // not a subgroup
        let bad = FFVector::new(&f7, vec![f7.from_int(1), f7.from_int(2)]);
        assert_eq!(inverse_vandermonde_identity_check(&bad), Err(LinalgError::NotSubgroup));
        let f9 = Field::new(3, 2).unwrap();
        assert!(roots_of_unity(&f9, 3).is_none());
        let f8 = Field::new(2, 3).unwrap();
        assert!(inverse_vandermonde_identity_check(&roots_of_unity(&f8, 7).unwrap()).unwrap());
    }

    #[test]
    fn vandermonde_identity_all_subgroups() {
        for q in [3u32, 5, 7, 9, 11, 13] {
            let (p, s) = crate::gf::prime_power(q).unwrap();
            for field in [Field::new(p, s).unwrap(), Field::quadratic_over(q).unwrap()] {
                let group = field.order() as usize - 1;
                for n in (1..=group.min(48)).filter(|n| group % n == 0) {
                    let alpha = roots_of_unity(&field, n).unwrap();
                    if n as u32 % field.characteristic() == 0 {
                        continue;
                    }
                    assert!(inverse_vandermonde_identity_check(&alpha).unwrap(), "q={q} n={n}");
                }
            }
        }
    }

    #[test]
    fn solve_left_consistent_and_inconsistent() {
        let f = gf49();
        let a = FFMatrix::from_rows(
            &f,
            vec![vec![Gf::ONE, Gf::ZERO, f.omega_pow(3)], vec![Gf::ZERO, Gf::ONE, f.omega_pow(5)]],
        )
        .unwrap();
        let x = vec![f.omega_pow(7), f.omega_pow(11)];
        let b = FFMatrix::from_rows(&f, vec![x.clone()]).unwrap().mul(&a).unwrap();
        assert_eq!(a.solve_left(b.row(0)).unwrap(), Some(x));
        assert_eq!(a.solve_left(&[Gf::ONE, Gf::ONE, Gf::ZERO]).unwrap(), None);
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..49, rows * cols)
    }

    fn build(f: &Field, rows: usize, cols: usize, enc: &[u32]) -> FFMatrix {
        let mut m = FFMatrix::zeros(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = enc[i * cols + j];
                m[(i, j)] = f.from_coeffs(&[e % 7, e / 7]).unwrap();
            }
        }
        m
    }

    proptest! {
        #[test]
        fn transpose_of_product(a in arb_matrix(3, 4), b in arb_matrix(4, 2)) {
            let f = gf49();
            let a = build(&f, 3, 4, &a);
            let b = build(&f, 4, 2, &b);
            prop_assert_eq!(a.mul(&b).unwrap().transpose(), b.transpose().mul(&a.transpose()).unwrap());
            let c = a.conj_transpose().unwrap().conj_transpose().unwrap();
            prop_assert_eq!(c, a);
        }

        #[test]
        fn rref_and_kernel_contracts(rows in 1usize..5, cols in 1usize..7, enc in arb_matrix(4, 6), zero_mask in 0u32..16) {
            let f = gf49();
            let mut enc = enc;
            // knock out some rows to produce rank-deficient cases
            for r in 0..4 {
                if zero_mask & (1 << r) != 0 {
                    for j in 0..6 { enc[r * 6 + j] = enc[j]; }
                }
            }
            let a = build(&f, rows, cols, &enc[..]);
            let r = a.rref();
            prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
            prop_assert_eq!(a.rank(), a.transpose().rank());
            let k = a.kernel_basis();
            prop_assert_eq!(k.rows(), cols - r.rank);
            prop_assert_eq!(k.rank(), cols - r.rank);
            if k.rows() > 0 {
                prop_assert!(a.mul(&k.transpose()).unwrap().is_zero());
            }
        }
    }
}
