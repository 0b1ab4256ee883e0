//! Hermitian self-dual (+)-GTRS codes over GF(q^2).
//!
//! [`check_plus_self_dual`] decides self-duality of a (+) code with `n = 2k` in two
//! independent ways: the Hermitian Gram matrix, and the polynomial identity
//! `v_i^{q+1} f(α_i)^q = u_i g(α_i)` with `g` in the (+) space of twist
//! coefficient `-η/(1+aη)`.
//!
//! The coset constructions put the locators in
//!
//! - class I: `A_l = a_l ω + GF(q)`, with `v_i^{q+1} = u_i`;
//! - class II: `A_{l,m} = a_l + ω^m GF(q)`, with `v_i^{q+1} = β_m^{n-1} u_i`;
//!
//! and solve for every admissible twist coefficient `η`. When the locator
//! sum `a` vanishes, `η` runs over the roots of `η^{q-1} = -1` (class I) or
//! `η^{q-1} = -β_m^{-(q-1)}` (class II). Otherwise `η = ζ / A` (resp.
//! `ζ / B`) over the q roots `ζ` of `ζ^q + ζ^{q-1} + 1`, where
//!
//! ```text
//! A = k·Tr(ω)·a_l + Σ x_i
//! B = (k(1 - β^{q-1}) a_l + a β^{q-1}) / β^{q-1}
//! ```

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{CodeClass, CodeError, LinearCode};
use crate::fflinalg::{FFVector, LinalgError};
use crate::gf::{Field, Gf, GfError};
use crate::gtrs::{alpha_sum, plus_gtrs, u_vector, GtrsError, GtrsParams};
use crate::Caps;

/// Largest subfield order accepted by [`sweep_constructions`].
pub const MAX_SWEEP_Q: u32 = 13;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SelfDualError {
    #[error("n odd")]
    OddLength,
    #[error("excluded eta: 1 + a*eta = 0")]
    ExcludedEta,
    #[error("not a (+)-twisted code")]
    NotPlus,
    #[error("a = 0 in characteristic 2 is excluded")]
    ZeroSumCharTwo,
    #[error("length {n} not admissible for q = {q} (need even 2 <= n <= q)")]
    BadLength { n: usize, q: u32 },
    #[error("x entries must be distinct elements of GF(q)")]
    BadSubset,
    #[error("coset label a_l must lie in GF(q)")]
    BadLabel,
    #[error("exponent m = {m} not in [1, {q}]")]
    BadExponent { m: u32, q: u32 },
    #[error("no admissible eta after filtering {filtered} candidates")]
    NoCandidates { filtered: usize },
    #[error("sweep bound violated: {0}")]
    Bounds(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Gtrs(#[from] GtrsError),
}

impl From<GfError> for SelfDualError {
    fn from(e: GfError) -> Self {
        SelfDualError::Gtrs(e.into())
    }
}

impl From<LinalgError> for SelfDualError {
    fn from(e: LinalgError) -> Self {
        SelfDualError::Gtrs(e.into())
    }
}

impl From<CodeError> for SelfDualError {
    fn from(e: CodeError) -> Self {
        SelfDualError::Gtrs(e.into())
    }
}

pub type Result<T> = std::result::Result<T, SelfDualError>;

/// Both sides of the self-duality criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDualReport {
    pub gram_zero: bool,
    pub polynomial: bool,
}

/// Evaluates the Gram check and the polynomial check without insisting that
/// they agree.
pub fn plus_self_dual_report(params: &GtrsParams) -> Result<SelfDualReport> {
    let eta = params.twist().plus_eta().ok_or(SelfDualError::NotPlus)?;
    let f = params.field();
    let ext = f.quadratic()?;
    let (n, k) = (params.n(), params.k());
    if n != 2 * k {
        return Err(SelfDualError::OddLength);
    }
    let a = alpha_sum(params.alpha());
    let denom = f.add(Gf::ONE, f.mul(a, eta));
    if denom.is_zero() {
        return Err(SelfDualError::ExcludedEta);
    }

    let gram_zero = params.code()?.hermitian_gram()?.is_zero();

    // g ranges over the (+) space with coefficient -η/(1+aη), scaled by u.
    let u = u_vector(params.alpha())?;
    let g_eta = f.neg(f.div(eta, denom)?);
    let g_space = plus_gtrs(params.alpha().clone(), u, g_eta, k)?.generator_matrix()?;
    let norms: Vec<Gf> = params.v().entries().iter().map(|&x| ext.norm(x)).collect();
    let mut polynomial = true;
    for i in 0..k {
        let mut e = vec![Gf::ZERO; k];
        e[i] = Gf::ONE;
        let coeffs = params.twist().expand(f, &e)?;
        let rhs: Vec<Gf> = params
            .alpha()
            .entries()
            .iter()
            .zip(&norms)
            .map(|(&x, &nv)| f.mul(nv, ext.frobenius(f.poly_eval(&coeffs, x))))
            .collect();
        if g_space.solve_left(&rhs)?.is_none() {
            polynomial = false;
            break;
        }
    }
    Ok(SelfDualReport { gram_zero, polynomial })
}

/// Hermitian self-duality of a (+) code with `n = 2k`, decided by both the
/// Gram matrix and the polynomial identity; disagreement is an error.
pub fn check_plus_self_dual(params: &GtrsParams) -> Result<bool> {
    let r = plus_self_dual_report(params)?;
    if r.gram_zero != r.polynomial {
        return Err(SelfDualError::Invariant(format!(
            "Gram verdict {} differs from polynomial verdict {}",
            r.gram_zero, r.polynomial
        )));
    }
    Ok(r.gram_zero)
}

/// The q distinct nonzero roots of `ζ^q + ζ^{q-1} + 1` in GF(q^2).
pub fn solve_zeta_equation(field: &Field, scan_cap: u64) -> Result<Vec<Gf>> {
    let q = field.quadratic()?.q() as usize;
    let mut poly = vec![Gf::ZERO; q + 1];
    poly[0] = Gf::ONE;
    poly[q - 1] = f_add_one(field, poly[q - 1]);
    poly[q] = f_add_one(field, poly[q]);
    let roots = field.poly_roots(&poly, scan_cap)?;
    if roots.len() != q || roots.contains(&Gf::ZERO) {
        return Err(SelfDualError::Invariant(format!(
            "zeta equation has {} roots, expected {q} nonzero",
            roots.len()
        )));
    }
    Ok(roots)
}

fn f_add_one(field: &Field, x: Gf) -> Gf {
    field.add(x, Gf::ONE)
}

/// Nonzero roots of `c·η^{q-1} + 1`.
fn solve_power_equation(field: &Field, c: Gf, q: usize, scan_cap: u64) -> Result<Vec<Gf>> {
    if field.characteristic() == 2 {
        return Ok(Vec::new());
    }
    let mut poly = vec![Gf::ZERO; q];
    poly[0] = Gf::ONE;
    poly[q - 1] = field.add(poly[q - 1], c);
    Ok(field.poly_roots(&poly, scan_cap)?.into_iter().filter(|x| !x.is_zero()).collect())
}

/// MDS unless `a ≠ 0` and `aη + 2 = 0`.
pub fn classify_eta(field: &Field, a: Gf, eta: Gf) -> CodeClass {
    if !a.is_zero() && field.add(field.mul(a, eta), field.from_int(2)).is_zero() {
        CodeClass::Nmds
    } else {
        CodeClass::Mds
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstructionClass {
    I,
    II,
}

impl fmt::Display for ConstructionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstructionClass::I => "I",
            ConstructionClass::II => "II",
        })
    }
}

/// One admissible twist coefficient. `mu` is the ratio `η^q / η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaCandidate {
    pub eta: Gf,
    pub mu: Gf,
    pub class: CodeClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionResult {
    pub class: ConstructionClass,
    pub field: Field,
    pub q: u32,
    pub n: usize,
    pub a_l: Gf,
    /// Exponent of `β_m = ω^m` (class II only).
    pub m: Option<u32>,
    pub x_subset: Vec<Gf>,
    pub alpha: FFVector,
    pub v: FFVector,
    /// Locator sum.
    pub a: Gf,
    /// `A` (class I) or `B` (class II) when `a ≠ 0`.
    pub pivot: Option<Gf>,
    /// `a ≠ 0` but the pivot vanished, so the reduced equation was solved.
    pub degenerate: bool,
    /// Raw candidates removed because `1 + aη = 0`.
    pub filtered: usize,
    pub eta_candidates: Vec<EtaCandidate>,
}

impl ConstructionResult {
    pub fn k(&self) -> usize {
        self.n / 2
    }

    pub fn params(&self, eta: Gf) -> Result<GtrsParams> {
        Ok(plus_gtrs(self.alpha.clone(), self.v.clone(), eta, self.k())?)
    }

    pub fn code(&self, eta: Gf) -> Result<LinearCode> {
        Ok(self.params(eta)?.code()?)
    }
}

struct Prepared<'a> {
    field: &'a Field,
    q: u32,
    n: usize,
    k: usize,
}

fn prepare<'a>(field: &'a Field, a_l: Gf, x: &[Gf]) -> Result<Prepared<'a>> {
    let ext = field.quadratic()?;
    let q = ext.q();
    let n = x.len();
    if n < 2 || n % 2 != 0 || n > q as usize {
        return Err(SelfDualError::BadLength { n, q });
    }
    if !ext.in_subfield(a_l) {
        return Err(SelfDualError::BadLabel);
    }
    let distinct = x.iter().collect::<HashSet<_>>().len() == n;
    if !distinct || x.iter().any(|&xi| !ext.in_subfield(xi)) {
        return Err(SelfDualError::BadSubset);
    }
    Ok(Prepared { field, q, n, k: n / 2 })
}

/// Filters `1 + aη = 0`, verifies every survivor with [`check_plus_self_dual`] and
/// classifies it.
fn finish(
    pre: &Prepared<'_>,
    alpha: &FFVector,
    v: &FFVector,
    a: Gf,
    raw: Vec<Gf>,
) -> Result<(Vec<EtaCandidate>, usize)> {
    let f = pre.field;
    let ext = f.quadratic()?;
    let mut raw = raw;
    raw.sort();
    raw.dedup();
    let before = raw.len();
    let kept: Vec<Gf> = raw
        .into_iter()
        .filter(|&eta| !f.add(Gf::ONE, f.mul(a, eta)).is_zero())
        .collect();
    let filtered = before - kept.len();
    let mut out = Vec::with_capacity(kept.len());
    for eta in kept {
        let params = plus_gtrs(alpha.clone(), v.clone(), eta, pre.k)?;
        if !check_plus_self_dual(&params)? {
            return Err(SelfDualError::Invariant(format!(
                "eta = {} fails the self-duality check",
                f.show(eta)
            )));
        }
        let mu = f.div(ext.frobenius(eta), eta)?;
        out.push(EtaCandidate { eta, mu, class: classify_eta(f, a, eta) });
    }
    if out.is_empty() {
        return Err(SelfDualError::NoCandidates { filtered });
    }
    Ok((out, filtered))
}

/// Class I: locators `a_l ω + x_i` for distinct `x_i ∈ GF(q)`.
pub fn construct_class1(field: &Field, a_l: Gf, x: &[Gf], caps: &Caps) -> Result<ConstructionResult> {
    let pre = prepare(field, a_l, x)?;
    let f = field;
    let ext = f.quadratic()?;
    let (q, n, k) = (pre.q, pre.n, pre.k);
    let w = f.primitive();

    let alpha = FFVector::new(f, x.iter().map(|&xi| f.add(f.mul(a_l, w), xi)).collect());
    let a = alpha_sum(&alpha);
    if a.is_zero() && f.characteristic() == 2 {
        return Err(SelfDualError::ZeroSumCharTwo);
    }
    let u = u_vector(&alpha)?;
    if u.entries().iter().any(|&ui| ui.is_zero() || !ext.in_subfield(ui)) {
        return Err(SelfDualError::Invariant("u_i not in GF(q)*".into()));
    }
    let v = FFVector::new(
        f,
        u.entries().iter().map(|&ui| ext.solve_norm(ui)).collect::<std::result::Result<_, _>>()?,
    );

    let mut pivot = None;
    let mut degenerate = false;
    let raw = if a.is_zero() {
        solve_power_equation(f, Gf::ONE, q as usize, caps.scan)?
    } else {
        let big_a = f.add(
            f.mul(f.mul(f.from_int(k as i64), ext.trace(w)), a_l),
            f.sum(x.iter().copied()),
        );
        pivot = Some(big_a);
        if big_a.is_zero() {
            degenerate = true;
            solve_power_equation(f, Gf::ONE, q as usize, caps.scan)?
        } else {
            let inv = f.inv(big_a)?;
            solve_zeta_equation(f, caps.scan)?.into_iter().map(|z| f.mul(z, inv)).collect()
        }
    };
    let (eta_candidates, filtered) = finish(&pre, &alpha, &v, a, raw)?;
    Ok(ConstructionResult {
        class: ConstructionClass::I,
        field: f.clone(),
        q,
        n,
        a_l,
        m: None,
        x_subset: x.to_vec(),
        alpha,
        v,
        a,
        pivot,
        degenerate,
        filtered,
        eta_candidates,
    })
}

/// Class II: locators `a_l + ω^m x_i` for distinct `x_i ∈ GF(q)`,
/// `1 ≤ m ≤ q`.
pub fn construct_class2(
    field: &Field,
    a_l: Gf,
    m: u32,
    x: &[Gf],
    caps: &Caps,
) -> Result<ConstructionResult> {
    let pre = prepare(field, a_l, x)?;
    let f = field;
    let ext = f.quadratic()?;
    let (q, n, k) = (pre.q, pre.n, pre.k);
    if m == 0 || m > q {
        return Err(SelfDualError::BadExponent { m, q });
    }
    let beta = f.omega_pow(m as i64);

    let alpha = FFVector::new(f, x.iter().map(|&xi| f.add(a_l, f.mul(beta, xi))).collect());
    let a = alpha_sum(&alpha);
    if a.is_zero() && f.characteristic() == 2 {
        return Err(SelfDualError::ZeroSumCharTwo);
    }
    let u = u_vector(&alpha)?;
    let lambda = f.pow(beta, (n - 1) as u64);
    let scaled: Vec<Gf> = u.entries().iter().map(|&ui| f.mul(lambda, ui)).collect();
    if scaled.iter().any(|&s| s.is_zero() || !ext.in_subfield(s)) {
        return Err(SelfDualError::Invariant("lambda*u_i not in GF(q)*".into()));
    }
    let v = FFVector::new(
        f,
        scaled.iter().map(|&s| ext.solve_norm(s)).collect::<std::result::Result<_, _>>()?,
    );

    let beta_q1 = f.pow(beta, (q - 1) as u64);
    let mut pivot = None;
    let mut degenerate = false;
    let raw = if a.is_zero() {
        solve_power_equation(f, beta_q1, q as usize, caps.scan)?
    } else {
        let one_minus = f.sub(Gf::ONE, beta_q1);
        let coeff = f.add(f.mul(f.mul(f.from_int(k as i64), one_minus), a_l), f.mul(a, beta_q1));
        let big_b = f.div(coeff, beta_q1)?;
        pivot = Some(big_b);
        if big_b.is_zero() {
            degenerate = true;
            solve_power_equation(f, beta_q1, q as usize, caps.scan)?
        } else {
            let inv = f.inv(big_b)?;
            solve_zeta_equation(f, caps.scan)?.into_iter().map(|z| f.mul(z, inv)).collect()
        }
    };
    let (eta_candidates, filtered) = finish(&pre, &alpha, &v, a, raw)?;
    Ok(ConstructionResult {
        class: ConstructionClass::II,
        field: f.clone(),
        q,
        n,
        a_l,
        m: Some(m),
        x_subset: x.to_vec(),
        alpha,
        v,
        a,
        pivot,
        degenerate,
        filtered,
        eta_candidates,
    })
}

/// Sweep parameters.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub classes: Vec<ConstructionClass>,
    /// Evenly spaced x-subsets per configuration, in addition to the first
    /// zero-sum subset.
    pub subset_limit: usize,
    pub caps: Caps,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            classes: vec![ConstructionClass::I, ConstructionClass::II],
            subset_limit: 3,
            caps: Caps::default(),
        }
    }
}

/// A configuration the constructors rejected (the `a = 0`, characteristic 2
/// exclusion, or no admissible η).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skipped {
    pub class: ConstructionClass,
    pub n: usize,
    pub a_l: Gf,
    pub m: Option<u32>,
    pub x_subset: Vec<Gf>,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    pub results: Vec<ConstructionResult>,
    pub skipped: Vec<Skipped>,
    /// Results where `a ≠ 0` and the pivot `A`/`B` vanished.
    pub degenerate: usize,
    pub duplicates: usize,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// The combination of rank `r` (lexicographic) of `k` out of `0..n`.
fn unrank_combination(n: usize, k: usize, mut r: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        loop {
            let remaining = binomial(n - next - 1, k - slot - 1);
            if r < remaining {
                out.push(next);
                next += 1;
                break;
            }
            r -= remaining;
            next += 1;
        }
    }
    out
}

/// Canonical x-subsets (as index lists into the subfield order): the first
/// subset in lexicographic order whose elements sum to zero, followed by
/// `limit` subsets at evenly spaced lexicographic ranks.
pub fn canonical_subsets(field: &Field, n: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
    let ext = field.quadratic()?;
    let sub = ext.subfield_elements();
    let q = sub.len();
    let total = binomial(q, n);
    let mut out: Vec<Vec<usize>> = Vec::new();
    for r in 0..total {
        let c = unrank_combination(q, n, r);
        if field.sum(c.iter().map(|&i| sub[i])).is_zero() {
            out.push(c);
            break;
        }
    }
    let limit = (limit as u64).min(total);
    for j in 0..limit {
        let r = if limit == 1 { 0 } else { j * (total - 1) / (limit - 1) };
        let c = unrank_combination(q, n, r);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
struct SweepItem {
    class: ConstructionClass,
    n: usize,
    a_l: Gf,
    m: Option<u32>,
    x: Vec<Gf>,
}

/// Enumerates the constructions over every `(class, n, a_l, m, subset)` for
/// the given lengths, deduplicated by the canonical generators of their
/// codes. Output order is deterministic.
pub fn sweep_constructions(field: &Field, n_list: &[usize], config: &SweepConfig) -> Result<SweepOutcome> {
    let ext = field.quadratic()?;
    let q = ext.q();
    if q > MAX_SWEEP_Q {
        return Err(SelfDualError::Bounds(format!("q = {q} exceeds {MAX_SWEEP_Q}")));
    }
    for &n in n_list {
        if n < 2 || n % 2 != 0 || n > q as usize {
            return Err(SelfDualError::Bounds(format!("n = {n} not an even length in [2, {q}]")));
        }
    }
    let sub = ext.subfield_elements();
    let mut items = Vec::new();
    for &n in n_list {
        let subsets = canonical_subsets(field, n, config.subset_limit)?;
        for &class in &config.classes {
            let ms: Vec<Option<u32>> = match class {
                ConstructionClass::I => vec![None],
                ConstructionClass::II => (1..=q).map(Some).collect(),
            };
            for &a_l in &sub {
                for &m in &ms {
                    for s in &subsets {
                        items.push(SweepItem {
                            class,
                            n,
                            a_l,
                            m,
                            x: s.iter().map(|&i| sub[i]).collect(),
                        });
                    }
                }
            }
        }
    }

    let outcomes: Vec<Result<std::result::Result<ConstructionResult, Skipped>>> = items
        .par_iter()
        .map(|it| {
            let r = match it.class {
                ConstructionClass::I => construct_class1(field, it.a_l, &it.x, &config.caps),
                ConstructionClass::II => {
                    construct_class2(field, it.a_l, it.m.unwrap(), &it.x, &config.caps)
                }
            };
            match r {
                Ok(res) => Ok(Ok(res)),
                Err(e @ (SelfDualError::ZeroSumCharTwo | SelfDualError::NoCandidates { .. })) => {
                    Ok(Err(Skipped {
                        class: it.class,
                        n: it.n,
                        a_l: it.a_l,
                        m: it.m,
                        x_subset: it.x.clone(),
                        reason: e.to_string(),
                    }))
                }
                Err(e) => Err(e),
            }
        })
        .collect();

    let mut out = SweepOutcome::default();
    let mut seen: HashSet<Vec<Vec<Vec<Gf>>>> = HashSet::new();
    for o in outcomes {
        match o? {
            Ok(res) => {
                let key = res
                    .eta_candidates
                    .iter()
                    .map(|c| res.code(c.eta).map(|code| code.canonical_generator().to_rows()))
                    .collect::<Result<Vec<_>>>()?;
                if !seen.insert(key) {
                    out.duplicates += 1;
                    continue;
                }
                out.degenerate += res.degenerate as usize;
                out.results.push(res);
            }
            Err(s) => out.skipped.push(s),
        }
    }
    Ok(out)
}
