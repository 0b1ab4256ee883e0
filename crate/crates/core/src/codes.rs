//! Linear codes given by a generator matrix: duals under the Euclidean and
//! Hermitian inner products, exact minimum distance by exhaustive
//! enumeration, and the MDS / AMDS / NMDS classifier.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fflinalg::{FFMatrix, LinalgError};
use crate::gf::{Field, Gf, GfError};

/// Default bound on the number of messages `q^k` scanned by
/// [`LinearCode::min_distance`].
pub const DEFAULT_DISTANCE_CAP: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("generator has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("message space of size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: u128, cap: u64 },
    #[error("the zero code has no minimum distance")]
    ZeroDimension,
    #[error("codes have different lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("codes are over different fields")]
    FieldMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<GfError> for CodeError {
    fn from(e: GfError) -> Self {
        CodeError::Linalg(LinalgError::Field(e))
    }
}

pub type Result<T> = std::result::Result<T, CodeError>;

/// An `[n, k]` linear code with a full-rank `k × n` generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    gen: FFMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CodeClass {
    #[serde(rename = "MDS")]
    Mds,
    #[serde(rename = "AMDS")]
    Amds,
    #[serde(rename = "NMDS")]
    Nmds,
    #[serde(rename = "other")]
    Other,
}

impl fmt::Display for CodeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeClass::Mds => "MDS",
            CodeClass::Amds => "AMDS",
            CodeClass::Nmds => "NMDS",
            CodeClass::Other => "other",
        })
    }
}

/// Outcome of [`LinearCode::classify`]. `dual_distance` is only computed
/// when the primal code is almost MDS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub dual_distance: Option<usize>,
    pub class: CodeClass,
}

impl LinearCode {
    pub fn new(gen: FFMatrix) -> Result<Self> {
        let rank = gen.rank();
        if rank != gen.rows() {
            return Err(CodeError::RankDeficient { rank, rows: gen.rows() });
        }
        Ok(LinearCode { gen })
    }

    /// The code spanned by the rows of `m`, whatever its rank.
    pub fn span(m: &FFMatrix) -> Self {
        LinearCode { gen: m.row_space_basis() }
    }

    /// The dimension-0 code of length `n`.
    pub fn zero(field: &Field, n: usize) -> Self {
        LinearCode { gen: FFMatrix::empty(field, n) }
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &FFMatrix {
        &self.gen
    }

    pub fn dual_euclidean(&self) -> LinearCode {
        LinearCode { gen: self.gen.kernel_basis() }
    }

    /// Dual under `Σ x_i y_i^q`; equal to the Euclidean dual of the
    /// entrywise Frobenius image.
    pub fn dual_hermitian(&self) -> Result<LinearCode> {
        Ok(LinearCode { gen: self.gen.frobenius()?.kernel_basis() })
    }

    /// `G · conj_transpose(G)`.
    pub fn hermitian_gram(&self) -> Result<FFMatrix> {
        Ok(self.gen.mul(&self.gen.conj_transpose()?)?)
    }

    /// `n = 2k` and the Hermitian Gram matrix vanishes.
    pub fn is_hermitian_self_dual(&self) -> Result<bool> {
        if self.n() != 2 * self.k() {
            // still validate the field shape
            self.field().quadratic()?;
            return Ok(false);
        }
        Ok(self.hermitian_gram()?.is_zero())
    }

    pub fn is_euclidean_self_orthogonal(&self) -> bool {
        self.gen.mul(&self.gen.transpose()).map(|m| m.is_zero()).unwrap_or(false)
    }

    /// Same row space.
    pub fn equals(&self, other: &LinearCode) -> Result<bool> {
        if self.field() != other.field() {
            return Err(CodeError::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(CodeError::LengthMismatch(self.n(), other.n()));
        }
        Ok(self.k() == other.k() && self.gen.row_space_basis() == other.gen.row_space_basis())
    }

    /// Canonical generator (RREF), used as a deduplication key.
    pub fn canonical_generator(&self) -> FFMatrix {
        self.gen.row_space_basis()
    }

    /// Encodes a message of length `k`.
    pub fn encode(&self, msg: &[Gf]) -> Vec<Gf> {
        let f = self.field();
        let mut c = vec![Gf::ZERO; self.n()];
        for (i, &m) in msg.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (cj, &g) in c.iter_mut().zip(self.gen.row(i)) {
                *cj = f.add(*cj, f.mul(m, g));
            }
        }
        c
    }

    /// Exact minimum Hamming weight over all nonzero codewords.
    ///
    /// Only messages whose first nonzero coordinate is 1 are visited (scalar
    /// multiples share a weight); each block is walked in reflected Gray
    /// order so consecutive codewords differ by a multiple of one row.
    /// Blocks are scanned in parallel and the result does not depend on the
    /// partition.
    pub fn min_distance(&self, cap: u64) -> Result<usize> {
        let k = self.k();
        if k == 0 {
            return Err(CodeError::ZeroDimension);
        }
        let q = self.field().order() as u128;
        let size = q.checked_pow(k as u32).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(CodeError::CapExceeded { size, cap });
        }

        let mut blocks = Vec::new();
        for lead in 0..k {
            if lead + 1 < k {
                blocks.extend((0..q as u32).map(|v| (lead, Some(Gf::from_index(v)))));
            } else {
                blocks.push((lead, None));
            }
        }
        let scan = |&(lead, second): &(usize, Option<Gf>)| self.scan_block(lead, second);
        // small scans are cheaper than the parallel dispatch
        let d = if size <= 1 << 14 {
            blocks.iter().map(scan).min()
        } else {
            blocks.par_iter().map(scan).min()
        }
        .expect("at least one block");
        Ok(d)
    }

    fn scan_block(&self, lead: usize, second: Option<Gf>) -> usize {
        let f = self.field();
        let n = self.n();
        let k = self.k();
        let mut msg = vec![Gf::ZERO; k];
        msg[lead] = Gf::ONE;
        let mut free_start = lead + 1;
        if let Some(s) = second {
            msg[lead + 1] = s;
            free_start = lead + 2;
        }
        let mut cw = self.encode(&msg);
        let weight = |c: &[Gf]| c.iter().filter(|x| !x.is_zero()).count();
        let mut best = weight(&cw);
        let free = k - free_start;
        if free == 0 || best == 1 {
            return best;
        }

        let q = f.order();
        let mut digits = vec![0u32; free];
        let mut up = vec![true; free];
        let total = (q as u64).pow(free as u32);
        for t in 1..total {
            // reflected Gray code: the digit that moves is the lowest base-q
            // digit of t that is nonzero
            let mut i = 0;
            let mut tt = t;
            while tt % q as u64 == 0 {
                tt /= q as u64;
                i += 1;
            }
            let old = digits[i];
            let new = if up[i] { old + 1 } else { old - 1 };
            digits[i] = new;
            if new == 0 || new == q - 1 {
                up[i] = !up[i];
            }
            let delta = f.sub(Gf::from_index(new), Gf::from_index(old));
            let row = self.gen.row(free_start + i);
            for (c, &g) in cw.iter_mut().zip(row) {
                *c = f.add(*c, f.mul(delta, g));
            }
            let w = cw[..n].iter().filter(|x| !x.is_zero()).count();
            if w < best {
                best = w;
                if best == 1 {
                    break;
                }
            }
        }
        best
    }

    /// Exact minimum distance from column ranks: `d = n - s` where `s` is
    /// the size of the largest column set of `G` with rank below `k`. Costs
    /// at most `2^n` small rank computations, independent of the field.
    pub fn min_distance_by_columns(&self) -> Result<usize> {
        let (n, k) = (self.n(), self.k());
        if k == 0 {
            return Err(CodeError::ZeroDimension);
        }
        let cols = self.gen.transpose().to_rows();
        let mut buf = Vec::with_capacity(n * k);
        // subsets of a deficient set are deficient, so scan sizes upward
        let mut largest = None;
        for s in k..n {
            if !self.any_deficient(&cols, s, &mut buf) {
                break;
            }
            largest = Some(s);
        }
        Ok(match largest {
            Some(s) => n - s,
            None => n - k + 1,
        })
    }

    fn any_deficient(&self, cols: &[Vec<Gf>], s: usize, buf: &mut Vec<Gf>) -> bool {
        let n = cols.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            if rank_below(self.field(), cols, &idx, self.k(), buf) {
                return true;
            }
            let mut i = s;
            while i > 0 && idx[i - 1] == n - s + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            idx[i - 1] += 1;
            for j in i..s {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// Exact minimum distance: the codeword scan when `q^k` is within `cap`,
    /// otherwise the column-rank method when `2^n` is.
    pub fn distance(&self, cap: u64) -> Result<usize> {
        match self.min_distance(cap) {
            Err(CodeError::CapExceeded { size, .. }) => {
                if self.n() < 64 && (1u64 << self.n()) <= cap {
                    self.min_distance_by_columns()
                } else {
                    Err(CodeError::CapExceeded { size, cap })
                }
            }
            r => r,
        }
    }

    /// MDS iff `d = n-k+1`; NMDS iff `d = n-k` and the dual has distance
    /// `k`; AMDS iff only the primal condition holds.
    pub fn classify(&self, cap: u64) -> Result<Classification> {
        let n = self.n();
        let k = self.k();
        let d = self.distance(cap)?;
        let (class, dual_distance) = if d == n - k + 1 {
            (CodeClass::Mds, None)
        } else if d + k == n {
            let dd = self.dual_euclidean().distance(cap)?;
            if dd == k {
                (CodeClass::Nmds, Some(dd))
            } else {
                (CodeClass::Amds, Some(dd))
            }
        } else {
            (CodeClass::Other, None)
        };
        Ok(Classification { n, k, d, dual_distance, class })
    }
}

/// Whether the columns `idx` (each of length `k`) span less than GF^k.
fn rank_below(f: &Field, cols: &[Vec<Gf>], idx: &[usize], k: usize, buf: &mut Vec<Gf>) -> bool {
    if idx.len() < k {
        return true;
    }
    buf.clear();
    for &j in idx {
        buf.extend_from_slice(&cols[j]);
    }
    let rows = idx.len();
    let mut rank = 0;
    for c in 0..k {
        let Some(p) = (rank..rows).find(|&r| !buf[r * k + c].is_zero()) else {
            return true;
        };
        for t in 0..k {
            buf.swap(p * k + t, rank * k + t);
        }
        let inv = f.inv(buf[rank * k + c]).expect("nonzero pivot");
        for r in rank + 1..rows {
            let x = buf[r * k + c];
            if x.is_zero() {
                continue;
            }
            let m = f.mul(x, inv);
            for t in c..k {
                let sub = f.mul(m, buf[rank * k + t]);
                buf[r * k + t] = f.sub(buf[r * k + t], sub);
            }
        }
        rank += 1;
    }
    false
}
