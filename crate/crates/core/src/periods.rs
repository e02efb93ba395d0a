//! Period expansion of the G(2,4) arrow pencil, Hasse-Witt values, and the
//! search for a hypergeometric truncation relation.
//!
//! In the local coordinates `t1..t4` the arrow polynomial divided by the
//! frozen product is `B_t = 1 + t·L` for a Laurent polynomial `L`. The
//! constant terms `c_k` of the `t^k` coefficients of `1/B_t` are
//! `(−1)^k · CT(L^k)`, and the truncation `Σ_{k<p} c_k t^k mod p` is the
//! Hasse-Witt invariant of the member at `t`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{modular, ExponentVector, Field, SparsePolynomial};
use crate::pointcount::PointCountRecord;

/// `L` with `B_t = 1 + t·L`, in the variables `t1, t2, t3, t4`.
#[derive(Clone, Debug)]
pub struct PeriodKernel {
    pub kernel: SparsePolynomial,
    /// Human-readable record of the simplification checks performed.
    pub verification_log: Vec<String>,
}

/// Coefficients `c_0..c_{p−1}` of the period series, for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTruncation {
    pub p: u64,
    pub coefficients: Vec<BigInt>,
}

impl SeriesTruncation {
    pub fn residues(&self) -> Vec<u64> {
        let field = Field::Prime(self.p);
        self.coefficients.iter().map(|c| field.from_bigint(c).as_residue().expect("residue")).collect()
    }
}

const NV: usize = 5; // t, t1, t2, t3, t4

fn laurent(terms: &[([i32; NV], i64)]) -> SparsePolynomial {
    SparsePolynomial::from_int_terms(NV, Field::Rationals, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
}

fn checked_zero(label: &str, p: &SparsePolynomial, log: &mut Vec<String>) -> Result<()> {
    if !p.is_zero() {
        return Err(Error::Construction(format!("{label} is not identically zero: {p}")));
    }
    log.push(format!("verified: {label} = 0"));
    Ok(())
}

/// Build `L` from the printed local-coordinate expression for `B_t` and
/// verify each simplification symbolically.
pub fn build_period_kernel() -> Result<PeriodKernel> {
    let mut log = Vec::new();
    let op = |r: Result<SparsePolynomial>| r.expect("same ring");

    // u = 1/(t1^2 t2 t3) - (t1 + t4)/(t1^2 t2 t3 t4)
    let u = op(laurent(&[([0, -2, -1, -1, 0], 1)])
        .sub(&laurent(&[([0, -1, -1, -1, -1], 1), ([0, -2, -1, -1, 0], 1)])));
    // w = -1/(t1 t2 t3 t4)
    let w = laurent(&[([0, -1, -1, -1, -1], -1)]);
    checked_zero("u - w", &op(u.sub(&w)), &mut log)?;

    let m = laurent(&[([0, 2, 1, 1, 0], 1)]);
    let m_inv = laurent(&[([0, -2, -1, -1, 0], 1)]);
    let t1_plus_t4 = laurent(&[([0, 1, 0, 0, 0], 1), ([0, 0, 0, 0, 1], 1)]);
    let sigma = [
        u.pow(4),
        laurent(&[([0, -4, 0, 0, 0], 1)]),
        laurent(&[([0, -4, -4, 0, 0], 1)]),
        laurent(&[([0, -4, 0, -4, 0], 1)]),
        op(t1_plus_t4.pow(4).mul(&laurent(&[([0, -4, -4, -4, -4], 1)]))),
        laurent(&[([0, 0, 0, 0, 0], 1)]),
    ]
    .iter()
    .fold(SparsePolynomial::zero(NV, Field::Rationals), |acc, x| op(acc.add(x)));

    let t = laurent(&[([1, 0, 0, 0, 0], 1)]);
    // B_t = N / u with N = -(Σ·t - u/m)·m
    let numerator = op(op(op(sigma.mul(&t)).sub(&op(u.mul(&m_inv)))).mul(&m)).neg();

    // w is a monomial, so 1/u = 1/w is the Laurent monomial -t1 t2 t3 t4,
    // and B_t = 1 - t·Σ·m/w.
    let w_inv = laurent(&[([0, 1, 1, 1, 1], -1)]);
    checked_zero("w * (1/w) - 1", &op(op(w.mul(&w_inv)).sub(&laurent(&[([0; NV], 1)]))), &mut log)?;
    let kernel5 = op(op(sigma.mul(&m)).mul(&w_inv)).neg();

    // N - (1 + t·L)·u = 0 certifies B_t = 1 + t·L as rational functions.
    let one_plus_tl = op(laurent(&[([0; NV], 1)]).add(&op(t.mul(&kernel5))));
    checked_zero("N - (1 + t L) u", &op(numerator.sub(&op(one_plus_tl.mul(&u)))), &mut log)?;

    if kernel5.terms().any(|(e, _)| e[0] != 0) {
        return Err(Error::Construction("kernel depends on t".into()));
    }
    let kernel = SparsePolynomial::from_terms(
        4,
        Field::Rationals,
        kernel5.terms().map(|(e, c)| (ExponentVector::new(e.as_slice()[1..].to_vec()), c.clone())),
    )?;
    debug_assert_eq!(kernel.len(), kernel5.len());
    if !kernel.constant_term().is_zero() {
        return Err(Error::Construction("kernel has a constant term".into()));
    }
    log.push(format!("kernel has {} terms", kernel.len()));
    Ok(PeriodKernel { kernel, verification_log: log })
}

/// Constant term of `a · b` without forming the product.
fn constant_term_of_product(a: &SparsePolynomial, b: &SparsePolynomial) -> BigRational {
    let mut total = BigRational::zero();
    for (e, c) in a.terms() {
        let partner = b.coefficient(&e.neg());
        if let (Some(x), Some(y)) = (c.as_rational(), partner.as_rational()) {
            if !y.is_zero() {
                total += x * y;
            }
        }
    }
    total
}

/// `c_k = (−1)^k · CT(L^k)` for `k = 0..=k_max`, as exact integers.
pub fn period_coefficients(kernel: &PeriodKernel, k_max: usize) -> Result<Vec<BigInt>> {
    let l = &kernel.kernel;
    let half = k_max.div_ceil(2);
    let mut powers = vec![SparsePolynomial::one(l.nvars(), l.field())];
    for j in 1..=half {
        let next = powers[j - 1].mul(l)?;
        powers.push(next);
    }
    (0..=k_max)
        .map(|k| {
            let a = k.div_ceil(2);
            let ct = constant_term_of_product(&powers[a], &powers[k - a]);
            if !ct.is_integer() {
                return Err(Error::Construction(format!("c_{k} = {ct} is not an integer")));
            }
            let v = ct.to_integer();
            Ok(if k % 2 == 1 { -v } else { v })
        })
        .collect()
}

fn coefficient_cache() -> &'static Mutex<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Cached `c_0..c_{count−1}`.
pub fn cached_coefficients(count: usize) -> Result<Vec<BigInt>> {
    let mut cache = coefficient_cache().lock().expect("cache poisoned");
    if cache.len() < count {
        let kernel = build_period_kernel()?;
        *cache = period_coefficients(&kernel, count.saturating_sub(1))?;
    }
    Ok(cache[..count].to_vec())
}

pub fn series_truncation(p: u64) -> Result<SeriesTruncation> {
    check_odd_prime(p)?;
    Ok(SeriesTruncation { p, coefficients: cached_coefficients(p as usize)? })
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !modular::is_prime(p) || p >= modular::MAX_MODULUS {
        return Err(Error::Domain(format!("{p} is not an odd prime below 2^32")));
    }
    Ok(())
}

/// `Σ_{k=0}^{p−1} c_k t^k mod p`.
pub fn hasse_witt(p: u64, t: u64) -> Result<u64> {
    let residues = series_truncation(p)?.residues();
    Ok(evaluate_residue_poly(&residues, t % p, p))
}

fn evaluate_residue_poly(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| modular::add_mod(modular::mul_mod(acc, x, p), c, p))
}

/// Upper parameters of the hypergeometric function attached to the classical
/// G(2,4) mirror: `4F3(1/4, 1/2, 3/4, 1/2; 1, 1, 1)`.
pub fn mirror_parameters() -> (Vec<BigRational>, Vec<BigRational>) {
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    (vec![q(1, 4), q(1, 2), q(3, 4), q(1, 2)], vec![q(1, 1), q(1, 1), q(1, 1)])
}

/// Coefficients `Π(a_i)_k / (Π(b_j)_k · k!)` for `k = 0..p−1`, reduced mod p.
pub fn hypergeometric_coefficients(upper: &[BigRational], lower: &[BigRational], p: u64) -> Result<Vec<u64>> {
    check_odd_prime(p)?;
    let field = Field::Prime(p);
    let reduce = |x: &BigRational| -> Result<u64> {
        field
            .from_rational(x)
            .map(|s| s.as_residue().expect("residue"))
            .map_err(|_| Error::Domain(format!("parameter {x} has denominator divisible by {p}")))
    };
    let ups: Vec<u64> = upper.iter().map(reduce).collect::<Result<_>>()?;
    let lows: Vec<u64> = lower.iter().map(reduce).collect::<Result<_>>()?;
    let mut coeffs = Vec::with_capacity(p as usize);
    let mut num = 1u64;
    let mut den = 1u64;
    for k in 0..p {
        if den == 0 {
            return Err(Error::Domain(format!("lower Pochhammer symbol vanishes mod {p} at k = {k}")));
        }
        coeffs.push(modular::mul_mod(num, modular::inv_mod(den, p), p));
        // advance (a)_k -> (a)_{k+1}
        for &a in &ups {
            num = modular::mul_mod(num, modular::add_mod(a, k % p, p), p);
        }
        for &b in &lows {
            den = modular::mul_mod(den, modular::add_mod(b, k % p, p), p);
        }
        den = modular::mul_mod(den, (k + 1) % p, p);
    }
    Ok(coeffs)
}

/// `Σ_{k=0}^{p−1} Π(a_i)_k / (Π(b_j)_k k!) · z^k` in 𝔽_p.
pub fn hypergeometric_truncation(upper: &[BigRational], lower: &[BigRational], p: u64, z: u64) -> Result<u64> {
    let coeffs = hypergeometric_coefficients(upper, lower, p)?;
    Ok(evaluate_residue_poly(&coeffs, z % p, p))
}

/// One candidate `(a, b)` of the truncation search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub a: u64,
    pub b: u64,
    /// First `t` at which the congruence fails, if any.
    pub first_mismatch: Option<u64>,
}

fn check_complete(p: u64, counts: &[PointCountRecord]) -> Result<Vec<u64>> {
    let mut residues = vec![None; p as usize];
    for rec in counts {
        if rec.p != p || rec.t == 0 || rec.t >= p {
            return Err(Error::Domain(format!("record for p={}, t={} does not belong to p={p}", rec.p, rec.t)));
        }
        if residues[rec.t as usize].replace(rec.count % p).is_some() {
            return Err(Error::Domain(format!("duplicate record for t={}", rec.t)));
        }
    }
    (1..p)
        .map(|t| residues[t as usize].ok_or_else(|| Error::Domain(format!("missing point count for t={t}"))))
        .collect()
}

/// Test `#X_t ≡ 1 − F(a·t^b) mod p` for every `(a, b) ∈ 𝔽_p^× × {1..p−1}`
/// against the supplied counts, with `F` the mirror hypergeometric
/// truncation. Returns the full scan; hits have `first_mismatch == None`.
pub fn truncation_scan(p: u64, counts: &[PointCountRecord]) -> Result<Vec<ScanEntry>> {
    check_odd_prime(p)?;
    let residues = check_complete(p, counts)?;
    let (upper, lower) = mirror_parameters();
    let coeffs = hypergeometric_coefficients(&upper, &lower, p)?;
    let one_minus: Vec<u64> = (0..p).map(|z| modular::sub_mod(1, evaluate_residue_poly(&coeffs, z, p), p)).collect();
    let mut scan = Vec::with_capacity(((p - 1) * (p - 1)) as usize);
    for a in 1..p {
        for b in 1..p {
            let first_mismatch = (1..p).find(|&t| {
                let z = modular::mul_mod(a, modular::pow_mod(t, b, p), p);
                one_minus[z as usize] != residues[(t - 1) as usize]
            });
            scan.push(ScanEntry { a, b, first_mismatch });
        }
    }
    Ok(scan)
}

pub fn truncation_search(p: u64, counts: &[PointCountRecord]) -> Result<Vec<(u64, u64)>> {
    Ok(truncation_scan(p, counts)?
        .into_iter()
        .filter(|e| e.first_mismatch.is_none())
        .map(|e| (e.a, e.b))
        .collect())
}

/// Residue `1 − HW_p(t)`, the value a point count must agree with mod p.
pub fn predicted_residue(p: u64, t: u64) -> Result<u64> {
    Ok(modular::sub_mod(1, hasse_witt(p, t)?, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_builds_and_has_no_constant_term() {
        let k = build_period_kernel().unwrap();
        assert!(k.kernel.constant_term().is_zero());
        assert!(k.verification_log.iter().any(|s| s.contains("N - (1 + t L) u")));
    }

    #[test]
    fn first_coefficients() {
        let k = build_period_kernel().unwrap();
        let c = period_coefficients(&k, 10).unwrap();
        let expected: Vec<BigInt> =
            [1i64, 0, 12, 0, 492, 0, 32880, 0, 2743020, 0, 257986512].iter().map(|&v| v.into()).collect();
        assert_eq!(c, expected);
    }

    #[test]
    fn hasse_witt_at_one() {
        assert_eq!(hasse_witt(5, 1).unwrap(), 0);
        assert_eq!(hasse_witt(7, 1).unwrap(), 2);
        assert_eq!(hasse_witt(11, 1).unwrap(), 8);
    }

    #[test]
    fn hypergeometric_basics() {
        let (u, l) = mirror_parameters();
        assert_eq!(hypergeometric_truncation(&u, &l, 5, 0).unwrap(), 1);
        let coeffs = hypergeometric_coefficients(&u, &l, 5).unwrap();
        assert_eq!(coeffs.len(), 5);
        assert_eq!(coeffs[1], 2);
    }

    #[test]
    fn bad_parameters_are_rejected() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert!(matches!(hypergeometric_coefficients(&[q(1, 5)], &[], 5), Err(Error::Domain(_))));
        assert!(hypergeometric_coefficients(&[q(1, 2)], &[], 2).is_err());
        // lower parameter -1 makes (b)_2 vanish
        assert!(matches!(hypergeometric_coefficients(&[q(1, 2)], &[q(-1, 1)], 7), Err(Error::Domain(_))));
    }

    #[test]
    fn incomplete_counts_are_rejected() {
        let recs = vec![PointCountRecord::new(5, 1, 296), PointCountRecord::new(5, 2, 320)];
        assert!(matches!(truncation_search(5, &recs), Err(Error::Domain(_))));
        let mut full: Vec<_> = (1..5).map(|t| PointCountRecord::new(5, t, 0)).collect();
        full.push(PointCountRecord::new(5, 1, 0));
        assert!(truncation_search(5, &full).is_err());
    }
}
