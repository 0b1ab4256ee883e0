//! Generalized twisted Reed-Solomon codes.
//!
//! A twist spec `[k, t, h, η]` defines the polynomial space
//!
//! ```text
//! f(x) = Σ_{i<k} f_i x^i + Σ_j η_j f_{h_j} x^{k-1+t_j}
//! ```
//!
//! and the code is `{(v_1 f(α_1), ..., v_n f(α_n))}`. The (+) family is the
//! single twist `(t, h) = (1, k-1)`: `f_{k-1}(x^{k-1} + η x^k)` on top of a
//! degree `< k-1` part.

use thiserror::Error;

use crate::codes::{CodeError, LinearCode};
use crate::fflinalg::{
    alpha_over_n, check_multiplicative_subgroup, diagonal, reversal, vandermonde, FFMatrix,
    FFVector, LinalgError,
};
use crate::gf::{Field, Gf, GfError};

/// Default bound on the number of k-subsets visited by the subset criteria.
/// Covers every `n ≤ 28`.
pub const DEFAULT_SUBSET_CAP: u64 = 1 << 26;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GtrsError {
    #[error("invalid twist spec: {0}")]
    InvalidTwist(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("generator matrix has rank {rank} < k = {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("not a (+)-twisted code")]
    NotPlus,
    #[error("excluded eta: 1 + a*eta = 0")]
    ExcludedEta,
    #[error("{count} subsets exceed the subset cap {cap}")]
    SubsetCap { count: u128, cap: u64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

impl From<GfError> for GtrsError {
    fn from(e: GfError) -> Self {
        GtrsError::Linalg(LinalgError::Field(e))
    }
}

pub type Result<T> = std::result::Result<T, GtrsError>;

/// One twist: the hook coefficient `f_h` reappears, scaled by `eta`, at
/// degree `k - 1 + t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Twist {
    pub t: usize,
    pub h: usize,
    pub eta: Gf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    k: usize,
    n: usize,
    twists: Vec<Twist>,
}

impl TwistSpec {
    pub fn new(k: usize, n: usize, twists: Vec<Twist>) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(GtrsError::InvalidTwist(format!("need 1 <= k < n, got k={k}, n={n}")));
        }
        if twists.is_empty() || twists.len() > n - k {
            return Err(GtrsError::InvalidTwist(format!(
                "number of twists {} not in [1, {}]",
                twists.len(),
                n - k
            )));
        }
        for (i, tw) in twists.iter().enumerate() {
            if tw.t == 0 || tw.t > n - k {
                return Err(GtrsError::InvalidTwist(format!("twist t={} not in [1, {}]", tw.t, n - k)));
            }
            if tw.h >= k {
                return Err(GtrsError::InvalidTwist(format!("hook h={} not in [0, {}]", tw.h, k - 1)));
            }
            if tw.eta.is_zero() {
                return Err(GtrsError::InvalidTwist("eta must be nonzero".into()));
            }
            if twists[..i].iter().any(|o| o.t == tw.t) {
                return Err(GtrsError::InvalidTwist(format!("repeated twist {}", tw.t)));
            }
            if twists[..i].iter().any(|o| o.h == tw.h) {
                return Err(GtrsError::InvalidTwist(format!("repeated hook {}", tw.h)));
            }
        }
        Ok(TwistSpec { k, n, twists })
    }

    /// The (+) spec: one twist `(t, h) = (1, k - 1)`.
    pub fn plus(k: usize, n: usize, eta: Gf) -> Result<Self> {
        if k == 0 {
            return Err(GtrsError::InvalidTwist("k must be at least 1".into()));
        }
        Self::new(k, n, vec![Twist { t: 1, h: k - 1, eta }])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn twists(&self) -> &[Twist] {
        &self.twists
    }

    /// `η` when this is a (+) spec.
    pub fn plus_eta(&self) -> Option<Gf> {
        match self.twists.as_slice() {
            [tw] if tw.t == 1 && tw.h == self.k - 1 => Some(tw.eta),
            _ => None,
        }
    }

    /// Full coefficient list (length n) of the twisted polynomial with
    /// message coefficients `f`.
    pub fn expand(&self, field: &Field, f: &[Gf]) -> Result<Vec<Gf>> {
        if f.len() != self.k {
            return Err(GtrsError::InvalidParams(format!(
                "message length {} differs from k = {}",
                f.len(),
                self.k
            )));
        }
        let mut c = vec![Gf::ZERO; self.n];
        c[..self.k].copy_from_slice(f);
        for tw in &self.twists {
            let idx = self.k - 1 + tw.t;
            c[idx] = field.add(c[idx], field.mul(tw.eta, f[tw.h]));
        }
        Ok(c)
    }

    /// The `k × (n-k)` matrix with `η_μ` at 1-based position `(h_μ+1, t_μ)`.
    pub fn l_matrix(&self, field: &Field) -> FFMatrix {
        let mut l = FFMatrix::zeros(field, self.k, self.n - self.k);
        for tw in &self.twists {
            l[(tw.h, tw.t - 1)] = tw.eta;
        }
        l
    }
}

/// Full datum of a GTRS code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtrsParams {
    alpha: FFVector,
    v: FFVector,
    twist: TwistSpec,
}

impl GtrsParams {
    pub fn new(alpha: FFVector, v: FFVector, twist: TwistSpec) -> Result<Self> {
        if alpha.field() != v.field() {
            return Err(GtrsError::Linalg(LinalgError::FieldMismatch));
        }
        let n = alpha.len();
        if v.len() != n || twist.n != n {
            return Err(GtrsError::InvalidParams(format!(
                "lengths disagree: alpha {}, v {}, spec n {}",
                n,
                v.len(),
                twist.n
            )));
        }
        let pts = alpha.entries();
        for (i, x) in pts.iter().enumerate() {
            if pts[..i].contains(x) {
                return Err(GtrsError::Linalg(LinalgError::RepeatedPoint(i)));
            }
        }
        if let Some(i) = v.entries().iter().position(|x| x.is_zero()) {
            return Err(GtrsError::InvalidParams(format!("column multiplier v_{i} is zero")));
        }
        Ok(GtrsParams { alpha, v, twist })
    }

    pub fn field(&self) -> &Field {
        self.alpha.field()
    }

    pub fn alpha(&self) -> &FFVector {
        &self.alpha
    }

    pub fn v(&self) -> &FFVector {
        &self.v
    }

    pub fn twist(&self) -> &TwistSpec {
        &self.twist
    }

    pub fn n(&self) -> usize {
        self.twist.n
    }

    pub fn k(&self) -> usize {
        self.twist.k
    }

    /// Same locators and twist, new column multipliers.
    pub fn with_v(&self, v: FFVector) -> Result<Self> {
        Self::new(self.alpha.clone(), v, self.twist.clone())
    }

    /// `(v_i f(α_i))_i`.
    pub fn encode(&self, f: &[Gf]) -> Result<FFVector> {
        let field = self.field();
        let coeffs = self.twist.expand(field, f)?;
        let out = self
            .alpha
            .entries()
            .iter()
            .zip(self.v.entries())
            .map(|(&a, &vi)| field.mul(vi, field.poly_eval(&coeffs, a)))
            .collect();
        Ok(FFVector::new(field, out))
    }

    /// Rows are the encodings of the standard basis messages. Rank is
    /// checked.
    pub fn generator_matrix(&self) -> Result<FFMatrix> {
        let field = self.field();
        let k = self.k();
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let mut e = vec![Gf::ZERO; k];
            e[i] = Gf::ONE;
            rows.push(self.encode(&e)?.into_entries());
        }
        let g = FFMatrix::from_rows(field, rows)?;
        let rank = g.rank();
        if rank != k {
            return Err(GtrsError::RankDeficient { rank, k });
        }
        Ok(g)
    }

    pub fn code(&self) -> Result<LinearCode> {
        Ok(LinearCode::new(self.generator_matrix()?)?)
    }

    /// `[I | L] · V_n(α) · Λ`.
    pub fn systematic_generator(&self) -> Result<FFMatrix> {
        let field = self.field();
        let k = self.k();
        let il = FFMatrix::identity(field, k).hstack(&self.twist.l_matrix(field))?;
        let v = vandermonde(&self.alpha, self.n())?;
        Ok(il.mul(&v)?.mul(&diagonal(&self.v))?)
    }

    /// Parity-check matrix for locators forming a multiplicative subgroup:
    /// `[I | J_{n-k} (-L^T) J_k] · V_n(α) · diag(α/n) · Λ^{-1}`.
    pub fn dual_parity_matrix_multiplicative(&self) -> Result<FFMatrix> {
        check_multiplicative_subgroup(&self.alpha)?;
        let field = self.field();
        let (n, k) = (self.n(), self.k());
        let l = self.twist.l_matrix(field);
        let block = reversal(field, n - k).mul(&l.transpose().neg())?.mul(&reversal(field, k))?;
        let left = FFMatrix::identity(field, n - k).hstack(&block)?;
        let v_inv = FFVector::new(
            field,
            self.v.entries().iter().map(|&x| field.inv(x)).collect::<std::result::Result<_, _>>()?,
        );
        Ok(left
            .mul(&vandermonde(&self.alpha, n)?)?
            .mul(&diagonal(&alpha_over_n(&self.alpha)?))?
            .mul(&diagonal(&v_inv))?)
    }

    /// The dual datum for multiplicative-subgroup locators: dimension `n-k`,
    /// twists `t' = k - h`, hooks `h' = n - k - t`, coefficients `-η`, and
    /// multipliers `(α_i / n) v_i^{-1}`. The generated code is exactly the
    /// Euclidean dual.
    pub fn dual_twist_params_multiplicative(&self) -> Result<GtrsParams> {
        check_multiplicative_subgroup(&self.alpha)?;
        let field = self.field();
        let (n, k) = (self.n(), self.k());
        let twists = self
            .twist
            .twists
            .iter()
            .map(|tw| Twist { t: k - tw.h, h: n - k - tw.t, eta: field.neg(tw.eta) })
            .collect();
        let spec = TwistSpec::new(n - k, n, twists)?;
        let scale = alpha_over_n(&self.alpha)?;
        let v = scale
            .entries()
            .iter()
            .zip(self.v.entries())
            .map(|(&s, &vi)| Ok(field.mul(s, field.inv(vi)?)))
            .collect::<Result<Vec<_>>>()?;
        GtrsParams::new(self.alpha.clone(), FFVector::new(field, v), spec)
    }

    /// Dual of a (+) code for arbitrary distinct locators:
    /// `[α, u v^{-1}, 1, n-k-1, -η/(1+aη)]`.
    pub fn plus_dual_euclidean(&self) -> Result<GtrsParams> {
        let eta = self.twist.plus_eta().ok_or(GtrsError::NotPlus)?;
        let field = self.field();
        let (n, k) = (self.n(), self.k());
        let a = alpha_sum(&self.alpha);
        let denom = field.add(Gf::ONE, field.mul(a, eta));
        if denom.is_zero() {
            return Err(GtrsError::ExcludedEta);
        }
        let eta_dual = field.neg(field.div(eta, denom)?);
        let u = u_vector(&self.alpha)?;
        let v = u
            .entries()
            .iter()
            .zip(self.v.entries())
            .map(|(&ui, &vi)| Ok(field.mul(ui, field.inv(vi)?)))
            .collect::<Result<Vec<_>>>()?;
        GtrsParams::new(
            self.alpha.clone(),
            FFVector::new(field, v),
            TwistSpec::plus(n - k, n, eta_dual)?,
        )
    }
}

/// The (+) datum `[α, v, 1, k-1, η]`.
pub fn plus_gtrs(alpha: FFVector, v: FFVector, eta: Gf, k: usize) -> Result<GtrsParams> {
    let n = alpha.len();
    let spec = TwistSpec::plus(k, n, eta)?;
    GtrsParams::new(alpha, v, spec)
}

/// `u_i = Π_{j≠i} (α_i - α_j)^{-1}`.
pub fn u_vector(alpha: &FFVector) -> Result<FFVector> {
    let f = alpha.field();
    let pts = alpha.entries();
    let mut u = Vec::with_capacity(pts.len());
    for (i, &ai) in pts.iter().enumerate() {
        let prod = f.product(
            pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &aj)| f.sub(ai, aj)),
        );
        u.push(f.inv(prod).map_err(|_| LinalgError::RepeatedPoint(i))?);
    }
    Ok(FFVector::new(f, u))
}

/// `a = Σ α_i`.
pub fn alpha_sum(alpha: &FFVector) -> Gf {
    alpha.field().sum(alpha.entries().iter().copied())
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Some k-subset `I` with `η Σ_{i∈I} α_i = -1`, searched over
/// lexicographic combinations.
pub fn find_critical_subset(
    alpha: &FFVector,
    eta: Gf,
    k: usize,
    cap: u64,
) -> Result<Option<Vec<usize>>> {
    let f = alpha.field();
    let n = alpha.len();
    if eta.is_zero() {
        return Err(GtrsError::InvalidTwist("eta must be nonzero".into()));
    }
    if k == 0 || k > n {
        return Err(GtrsError::InvalidParams(format!("subset size {k} for length {n}")));
    }
    let count = binomial(n, k);
    if count > cap as u128 {
        return Err(GtrsError::SubsetCap { count, cap });
    }
    // η Σ = -1  ⇔  Σ = -η^{-1}
    let target = f.neg(f.inv(eta)?);
    let pts = alpha.entries();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f.sum(idx.iter().map(|&i| pts[i])) == target {
            return Ok(Some(idx));
        }
        // next combination
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return Ok(None);
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The (+) code on `alpha` is MDS iff no k-subset sum `s` has `η s = -1`.
pub fn is_mds_plus(alpha: &FFVector, eta: Gf, k: usize, cap: u64) -> Result<bool> {
    Ok(find_critical_subset(alpha, eta, k, cap)?.is_none())
}

/// Complement of [`is_mds_plus`]: some k-subset attains `η s = -1`.
pub fn is_nmds_plus(alpha: &FFVector, eta: Gf, k: usize, cap: u64) -> Result<bool> {
    Ok(!is_mds_plus(alpha, eta, k, cap)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{CodeClass, DEFAULT_DISTANCE_CAP};
    use crate::fflinalg::roots_of_unity;

    fn gf49() -> Field {
        Field::new(7, 2).unwrap()
    }

    fn ones(f: &Field, n: usize) -> FFVector {
        FFVector::new(f, vec![Gf::ONE; n])
    }

    fn ints(f: &Field, xs: &[i64]) -> FFVector {
        FFVector::new(f, xs.iter().map(|&x| f.from_int(x)).collect())
    }

    #[test]
    fn expand_examples() {
        let f = gf49();
        let eta = f.omega_pow(5);
        let spec = TwistSpec::plus(3, 6, eta).unwrap();
        assert_eq!(spec.expand(&f, &[Gf::ZERO; 3]).unwrap(), vec![Gf::ZERO; 6]);
        let top = spec.expand(&f, &[Gf::ZERO, Gf::ZERO, Gf::ONE]).unwrap();
        assert_eq!(top, vec![Gf::ZERO, Gf::ZERO, Gf::ONE, eta, Gf::ZERO, Gf::ZERO]);
        let low = spec.expand(&f, &[Gf::ONE, f.omega_pow(2), Gf::ZERO]).unwrap();
        assert_eq!(&low[3..], &[Gf::ZERO; 3]);
        assert!(spec.expand(&f, &[Gf::ONE]).is_err());
    }

    #[test]
    fn twist_spec_validation() {
        let f = gf49();
        let e = f.omega_pow(1);
        assert!(TwistSpec::new(3, 6, vec![]).is_err());
        assert!(TwistSpec::new(3, 6, vec![Twist { t: 4, h: 0, eta: e }]).is_err());
        assert!(TwistSpec::new(3, 6, vec![Twist { t: 1, h: 3, eta: e }]).is_err());
        assert!(TwistSpec::new(3, 6, vec![Twist { t: 1, h: 0, eta: Gf::ZERO }]).is_err());
        assert!(TwistSpec::new(
            3,
            6,
            vec![Twist { t: 1, h: 0, eta: e }, Twist { t: 1, h: 1, eta: e }]
        )
        .is_err());
        assert!(TwistSpec::new(3, 3, vec![Twist { t: 1, h: 0, eta: e }]).is_err());
        // k = 1 (+) spec uses hook 0
        let s = TwistSpec::plus(1, 2, e).unwrap();
        assert_eq!(s.twists()[0], Twist { t: 1, h: 0, eta: e });
    }

    #[test]
    fn l_matrix_placement() {
        let f = gf49();
        let e = f.omega_pow(9);
        let l = TwistSpec::plus(3, 6, e).unwrap().l_matrix(&f);
        assert_eq!((l.rows(), l.cols()), (3, 3));
        assert_eq!(l[(2, 0)], e);
        assert_eq!(l.to_rows().concat().iter().filter(|x| !x.is_zero()).count(), 1);

        let two = TwistSpec::new(
            3,
            6,
            vec![Twist { t: 2, h: 0, eta: e }, Twist { t: 3, h: 1, eta: Gf::ONE }],
        )
        .unwrap()
        .l_matrix(&f);
        assert_eq!(two[(0, 1)], e);
        assert_eq!(two[(1, 2)], Gf::ONE);

        let full = TwistSpec::new(
            2,
            4,
            vec![Twist { t: 1, h: 1, eta: e }, Twist { t: 2, h: 0, eta: e }],
        )
        .unwrap()
        .l_matrix(&f);
        for j in 0..2 {
            assert_eq!((0..2).filter(|&i| !full[(i, j)].is_zero()).count(), 1);
        }
    }

    #[test]
    fn encode_examples() {
        let f = gf49();
        let alpha = ints(&f, &[1, 2, 3, 4]);
        let p = plus_gtrs(alpha, ones(&f, 4), f.omega_pow(3), 2).unwrap();
        assert_eq!(p.encode(&[Gf::ZERO, Gf::ZERO]).unwrap().entries(), &[Gf::ZERO; 4]);
        assert_eq!(p.encode(&[Gf::ONE, Gf::ZERO]).unwrap().entries(), &[Gf::ONE; 4]);
    }

    #[test]
    fn generator_rows_for_plus_spec() {
        let f = gf49();
        let alpha = FFVector::new(&f, (0..6).map(|e| f.omega_pow(e * 3 + 1)).collect());
        let v = FFVector::new(&f, (0..6).map(|e| f.omega_pow(e * 5)).collect());
        let eta = f.omega_pow(20);
        let p = plus_gtrs(alpha.clone(), v.clone(), eta, 3).unwrap();
        let g = p.generator_matrix().unwrap();
        for j in 0..6 {
            let a = alpha.entries()[j];
            let vj = v.entries()[j];
            assert_eq!(g[(0, j)], vj);
            assert_eq!(g[(1, j)], f.mul(vj, a));
            let top = f.add(f.pow(a, 2), f.mul(eta, f.pow(a, 3)));
            assert_eq!(g[(2, j)], f.mul(vj, top));
        }
        // k = 1, n = 2 direct evaluation: v_i (1 + η α_i)
        let a2 = FFVector::new(&f, vec![f.omega_pow(4), f.omega_pow(7)]);
        let p1 = plus_gtrs(a2.clone(), ones(&f, 2), eta, 1).unwrap();
        let row = p1.generator_matrix().unwrap();
        for j in 0..2 {
            assert_eq!(row[(0, j)], f.add(Gf::ONE, f.mul(eta, a2.entries()[j])));
        }
    }

    #[test]
    fn generator_full_rank_gf11() {
        // degree <= n-1 polynomials vanishing on n distinct points are zero,
        // so every valid datum has rank k
        let f = Field::new(11, 1).unwrap();
        let alpha = ints(&f, &[0, 3, 4, 7, 9, 10, 2]);
        let v = ints(&f, &[5, 1, 8, 2, 2, 7, 3]);
        let spec = TwistSpec::new(
            3,
            7,
            vec![Twist { t: 1, h: 2, eta: f.from_int(6) }, Twist { t: 3, h: 0, eta: f.from_int(2) }],
        )
        .unwrap();
        let p = GtrsParams::new(alpha, v, spec).unwrap();
        assert_eq!(p.generator_matrix().unwrap().rank(), 3);
    }

    #[test]
    fn systematic_matches_generator() {
        let f = gf49();
        let alpha = roots_of_unity(&f, 8).unwrap();
        let v = FFVector::new(&f, (0..8).map(|e| f.omega_pow(e * 7 + 2)).collect());
        let p = plus_gtrs(alpha.clone(), v.clone(), f.omega_pow(13), 4).unwrap();
        let sys = LinearCode::span(&p.systematic_generator().unwrap());
        assert!(sys.equals(&p.code().unwrap()).unwrap());
        // k = n - 1 with a single twist: L is one column
        let q = plus_gtrs(alpha, v, f.omega_pow(2), 7).unwrap();
        assert_eq!(q.twist().l_matrix(&f).cols(), 1);
        assert!(LinearCode::span(&q.systematic_generator().unwrap()).equals(&q.code().unwrap()).unwrap());
    }

    #[test]
    fn subgroup_parity_small_case() {
        let f = Field::new(7, 1).unwrap();
        let alpha = ints(&f, &[1, 6]);
        let p = plus_gtrs(alpha, ints(&f, &[2, 5]), f.from_int(3), 1).unwrap();
        let h = p.dual_parity_matrix_multiplicative().unwrap();
        assert_eq!((h.rows(), h.cols()), (1, 2));
        let g = p.systematic_generator().unwrap();
        assert!(g.mul(&h.transpose()).unwrap().is_zero());
    }

    #[test]
    fn subgroup_duals_on_eighth_roots() {
        let f = gf49();
        let alpha = roots_of_unity(&f, 8).unwrap();
        let v = FFVector::new(&f, (0..8).map(|e| f.omega_pow(5 * e + 1)).collect());
        let p = plus_gtrs(alpha.clone(), v.clone(), f.omega_pow(11), 4).unwrap();
        let c = p.code().unwrap();
        let h = p.dual_parity_matrix_multiplicative().unwrap();
        assert_eq!(h.rank(), 4);
        assert!(LinearCode::span(&h).equals(&c.dual_euclidean()).unwrap());

        let two = TwistSpec::new(
            3,
            8,
            vec![Twist { t: 2, h: 0, eta: f.omega_pow(3) }, Twist { t: 5, h: 2, eta: f.omega_pow(30) }],
        )
        .unwrap();
        let p2 = GtrsParams::new(alpha, v, two).unwrap();
        let dual = p2.dual_twist_params_multiplicative().unwrap();
        assert_eq!(dual.k(), 5);
        assert!(dual.code().unwrap().equals(&p2.code().unwrap().dual_euclidean()).unwrap());
        // involution on the twist data
        let back = dual.dual_twist_params_multiplicative().unwrap();
        assert_eq!(back.twist(), p2.twist());
        assert!(back.code().unwrap().equals(&p2.code().unwrap()).unwrap());
    }

    #[test]
    fn subgroup_dual_map_on_plus_spec() {
        let f = gf49();
        let alpha = roots_of_unity(&f, 6).unwrap();
        let eta = f.omega_pow(17);
        let p = plus_gtrs(alpha, ones(&f, 6), eta, 2).unwrap();
        let d = p.dual_twist_params_multiplicative().unwrap();
        assert_eq!(d.twist().twists(), &[Twist { t: 1, h: 3, eta: f.neg(eta) }]);
        assert_eq!(d.twist().plus_eta(), Some(f.neg(eta)));
        // the closed-form (+) dual agrees here since a = 0
        let l3 = p.plus_dual_euclidean().unwrap();
        assert_eq!(l3.twist(), d.twist());
        assert!(l3.code().unwrap().equals(&d.code().unwrap()).unwrap());
    }

    #[test]
    fn subgroup_preconditions() {
        let f = gf49();
        let alpha = ints(&f, &[1, 2, 3, 4]);
        let p = plus_gtrs(alpha, ones(&f, 4), Gf::ONE, 2).unwrap();
        assert!(matches!(
            p.dual_parity_matrix_multiplicative(),
            Err(GtrsError::Linalg(LinalgError::NotSubgroup))
        ));
        // the 7th roots of unity in GF(8) live in characteristic 2: fine; in
        // GF(49) a subgroup of order 7 does not exist, order 14 does not divide 48
        assert!(roots_of_unity(&f, 7).is_none());
    }

    #[test]
    fn u_vector_and_alpha_sum() {
        let f = gf49();
        let (a1, a2) = (f.omega_pow(3), f.omega_pow(40));
        let u = u_vector(&FFVector::new(&f, vec![a1, a2])).unwrap();
        assert_eq!(u.entries()[0], f.inv(f.sub(a1, a2)).unwrap());
        assert_eq!(u.entries()[1], f.inv(f.sub(a2, a1)).unwrap());

        let alpha = ints(&f, &[1, 2, 3, 4, 5, 6]);
        let u = u_vector(&alpha).unwrap();
        let expected: Vec<Gf> = [6, 5, 4, 3, 2, 1].iter().map(|&x| f.from_int(x)).collect();
        assert_eq!(u.entries(), expected.as_slice());
        assert_eq!(alpha_sum(&alpha), Gf::ZERO);
        for n in [2, 3, 4, 6, 8, 12, 16, 24, 48] {
            assert_eq!(alpha_sum(&roots_of_unity(&f, n).unwrap()), Gf::ZERO);
        }
        assert!(u_vector(&FFVector::new(&f, vec![a1, a1])).is_err());
    }

    #[test]
    fn plus_closed_form_dual_gf9() {
        let f = Field::new(3, 2).unwrap();
        let alpha = FFVector::new(&f, vec![f.omega_pow(0), f.omega_pow(1), f.omega_pow(2), f.omega_pow(5)]);
        let a = alpha_sum(&alpha);
        assert!(!a.is_zero());
        for eta in f.nonzero_elements() {
            let p = plus_gtrs(alpha.clone(), FFVector::new(&f, vec![f.omega_pow(3); 4]), eta, 2).unwrap();
            if f.add(Gf::ONE, f.mul(a, eta)).is_zero() {
                assert_eq!(p.plus_dual_euclidean(), Err(GtrsError::ExcludedEta));
                continue;
            }
            let d = p.plus_dual_euclidean().unwrap();
            assert!(d.code().unwrap().equals(&p.code().unwrap().dual_euclidean()).unwrap());
        }
    }

    #[test]
    fn plus_dual_with_unit_multipliers_uses_u() {
        let f = gf49();
        let alpha = ints(&f, &[1, 2, 3, 4, 5, 6]);
        let p = plus_gtrs(alpha.clone(), ones(&f, 6), f.omega_pow(4), 3).unwrap();
        let d = p.plus_dual_euclidean().unwrap();
        assert_eq!(d.v(), &u_vector(&alpha).unwrap());
        assert_eq!(d.twist().plus_eta(), Some(f.neg(f.omega_pow(4))));
    }

    #[test]
    fn subset_criterion_examples() {
        let f = gf49();
        let alpha = ints(&f, &[1, 2, 3, 4, 5, 6]);
        // η^6 = -1 family: the sum of three elements of GF(7) lies in GF(7),
        // and -η^{-1} does not
        assert!(is_mds_plus(&alpha, f.omega_pow(4), 3, DEFAULT_SUBSET_CAP).unwrap());
        // -η^{-1} = 6 = 1 + 2 + 3 for η = 1
        let crit = find_critical_subset(&alpha, Gf::ONE, 3, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(crit, Some(vec![0, 1, 2]));
        assert!(is_nmds_plus(&alpha, Gf::ONE, 3, DEFAULT_SUBSET_CAP).unwrap());
        assert!(matches!(
            is_mds_plus(&alpha, Gf::ONE, 3, 5),
            Err(GtrsError::SubsetCap { .. })
        ));
    }

    #[test]
    fn subset_criterion_agrees_with_distance_gf9() {
        let f = Field::new(3, 2).unwrap();
        let pts: Vec<Gf> = f.elements().collect();
        for (k, sel) in [(2usize, [0usize, 2, 4, 7]), (2, [1, 3, 5, 8]), (1, [0, 1, 5, 6])] {
            let alpha = FFVector::new(&f, sel.iter().map(|&i| pts[i]).collect());
            for eta in f.nonzero_elements() {
                let p = plus_gtrs(alpha.clone(), ones(&f, 4), eta, k).unwrap();
                let cls = p.code().unwrap().classify(DEFAULT_DISTANCE_CAP).unwrap().class;
                let mds = is_mds_plus(&alpha, eta, k, DEFAULT_SUBSET_CAP).unwrap();
                assert_eq!(mds, cls == CodeClass::Mds);
                assert_eq!(!mds, cls == CodeClass::Nmds);
            }
        }
    }
}
