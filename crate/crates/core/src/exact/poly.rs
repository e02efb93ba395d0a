use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Field, Scalar};
use super::modular;
use crate::error::{Error, Result};

/// Integer exponents of a monomial, one per variable. Negative entries are
/// allowed (Laurent monomials).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<i32>);

impl ExponentVector {
    pub fn new(exps: Vec<i32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zeros(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut v = vec![0; nvars];
        v[var] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Exponent vector of the product of two monomials.
    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn into_vec(self) -> Vec<i32> {
        self.0
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = i32;
    fn index(&self, i: usize) -> &i32 {
        &self.0[i]
    }
}

impl std::ops::IndexMut<usize> for ExponentVector {
    fn index_mut(&mut self, i: usize) -> &mut i32 {
        &mut self.0[i]
    }
}

impl From<Vec<i32>> for ExponentVector {
    fn from(v: Vec<i32>) -> Self {
        ExponentVector(v)
    }
}

/// Graded lexicographic comparison: total degree first, then lexicographic
/// with variable 0 most significant.
pub fn grlex_cmp(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0))
}

/// Sort monomials into canonical listing order: graded lexicographic,
/// largest first.
pub fn sort_canonical(monomials: &mut [ExponentVector]) {
    monomials.sort_by(|a, b| grlex_cmp(b, a));
}

/// All exponent vectors of total degree `degree` in `nvars` nonnegative
/// variables, in canonical order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<ExponentVector> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<i32>, out: &mut Vec<ExponentVector>) {
        if pos + 1 == cur.len() {
            cur[pos] = left as i32;
            out.push(ExponentVector(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as i32;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(ExponentVector(Vec::new()));
        }
        return out;
    }
    rec(0, degree, &mut vec![0; nvars], &mut out);
    out
}

/// Sparse multivariate Laurent polynomial over a [`Field`].
///
/// Terms are kept in a map from exponent vector to nonzero coefficient, so
/// equality of polynomials is equality of term maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    nvars: usize,
    field: Field,
    terms: BTreeMap<ExponentVector, Scalar>,
}

/// Ring operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

pub fn poly_arith(a: &SparsePolynomial, b: &SparsePolynomial, op: PolyOp) -> Result<SparsePolynomial> {
    match op {
        PolyOp::Add => a.add(b),
        PolyOp::Mul => a.mul(b),
    }
}

impl SparsePolynomial {
    pub fn zero(nvars: usize, field: Field) -> Self {
        SparsePolynomial { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, field: Field, c: Scalar) -> Self {
        Self::monomial(nvars, field, ExponentVector::zeros(nvars), c)
    }

    pub fn one(nvars: usize, field: Field) -> Self {
        Self::constant(nvars, field, field.one())
    }

    pub fn monomial(nvars: usize, field: Field, exps: ExponentVector, c: Scalar) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        SparsePolynomial { nvars, field, terms }
    }

    pub fn variable(nvars: usize, field: Field, var: usize) -> Self {
        Self::monomial(nvars, field, ExponentVector::unit(nvars, var), field.one())
    }

    /// Sum of the given terms; repeated exponents are combined and zeros dropped.
    pub fn from_terms<I>(nvars: usize, field: Field, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Scalar)>,
    {
        let mut p = Self::zero(nvars, field);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Context(format!(
                    "exponent vector of length {} in {nvars} variables",
                    e.len()
                )));
            }
            field.check(&c)?;
            p.add_term(e, &c);
        }
        Ok(p)
    }

    /// Build from integer coefficients.
    pub fn from_int_terms<I>(nvars: usize, field: Field, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, i64)>,
    {
        let mut p = Self::zero(nvars, field);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(ExponentVector(e), &field.from_i64(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero polynomial, which has no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in canonical order (graded lexicographic, largest first).
    pub fn canonical_terms(&self) -> Vec<(&ExponentVector, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&ExponentVector::zeros(self.nvars))
    }

    /// Add `c · x^e` in place.
    pub fn add_term(&mut self, e: ExponentVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let field = self.field;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn compatible(&self, other: &SparsePolynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Context(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        if self.field != other.field {
            return Err(Error::Context(format!(
                "polynomials over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparsePolynomial {
        let field = self.field;
        SparsePolynomial {
            nvars: self.nvars,
            field,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparsePolynomial {
        let field = self.field;
        if c.is_zero() {
            return Self::zero(self.nvars, field);
        }
        SparsePolynomial {
            nvars: self.nvars,
            field,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), field.mul(a, c))).collect(),
        }
    }

    /// Multiply by the monomial `x^e`.
    pub fn mul_monomial(&self, e: &ExponentVector) -> SparsePolynomial {
        SparsePolynomial {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(a, c)| (a.mul(e), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        self.compatible(other)?;
        let field = self.field;
        let mut acc: std::collections::HashMap<ExponentVector, Scalar> =
            std::collections::HashMap::with_capacity(self.len() * other.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let prod = field.mul(ca, cb);
                acc.entry(ea.mul(eb))
                    .and_modify(|c| *c = field.add(c, &prod))
                    .or_insert(prod);
            }
        }
        Ok(SparsePolynomial {
            nvars: self.nvars,
            field,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, mut exp: u32) -> SparsePolynomial {
        let mut acc = Self::one(self.nvars, self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same context");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same context");
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> SparsePolynomial {
        assert!(var < self.nvars, "variable out of range");
        let field = self.field;
        let mut out = Self::zero(self.nvars, field);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, &field.mul(c, &field.from_i64(k as i64)));
        }
        out
    }

    /// Maximum total degree of a term, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degrees = self.terms.keys().map(ExponentVector::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Image under the canonical map into `target`. Only ℚ → 𝔽_p and identity
    /// maps are supported.
    pub fn change_field(&self, target: Field) -> Result<SparsePolynomial> {
        if target == self.field {
            return Ok(self.clone());
        }
        let mut out = Self::zero(self.nvars, target);
        for (e, c) in &self.terms {
            let r = c
                .as_rational()
                .ok_or_else(|| Error::Context(format!("cannot map {} into {target}", self.field)))?;
            out.add_term(e.clone(), &target.from_rational(r)?);
        }
        Ok(out)
    }

    /// Reorder or embed variables: variable `i` of `self` becomes variable
    /// `mapping[i]` of a ring with `nvars` variables.
    pub fn embed(&self, nvars: usize, mapping: &[usize]) -> SparsePolynomial {
        assert_eq!(mapping.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = vec![0; nvars];
                for (i, &target) in mapping.iter().enumerate() {
                    v[target] += e[i];
                }
                (ExponentVector(v), c.clone())
            })
            .collect();
        SparsePolynomial { nvars, field: self.field, terms }
    }

    /// Value at a point. Negative exponents require nonzero coordinates.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::Context(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let field = self.field;
        for x in point {
            field.check(x)?;
        }
        let mut total = field.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e.as_slice()) {
                if k == 0 {
                    continue;
                }
                let base = if k < 0 { field.inv(x)? } else { x.clone() };
                term = field.mul(&term, &field.pow(&base, k.unsigned_abs()));
            }
            total = field.add(&total, &term);
        }
        Ok(total)
    }

    /// Value at a point of 𝔽_p given as raw residues; nonnegative exponents only.
    pub fn evaluate_residues(&self, point: &[u64]) -> Result<u64> {
        let Field::Prime(p) = self.field else {
            return Err(Error::Context("evaluate_residues needs a prime field".into()));
        };
        let mut total = 0;
        for (e, c) in &self.terms {
            let mut term = c.as_residue().expect("prime field");
            for (&x, &k) in point.iter().zip(e.as_slice()) {
                if k < 0 {
                    return Err(Error::Domain("negative exponent in residue evaluation".into()));
                }
                term = modular::mul_mod(term, modular::pow_mod(x, k as u64, p), p);
            }
            total = modular::add_mod(total, term, p);
        }
        Ok(total)
    }

    /// Render with the given variable names, terms in canonical order.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

struct PolyDisplay<'a> {
    poly: &'a SparsePolynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.poly.canonical_terms().into_iter().enumerate() {
            let coeff = c.to_string();
            let (sign, magnitude) = match coeff.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff),
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut factors = Vec::new();
            for (v, &k) in e.as_slice().iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.names[v].clone()),
                    _ => factors.push(format!("{}^{}", self.names[v], k)),
                }
            }
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        PolyDisplay { poly: self, names: &names }.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn poly(terms: &[(&[i32], i64)]) -> SparsePolynomial {
        let n = terms[0].0.len();
        SparsePolynomial::from_int_terms(n, q(), terms.iter().map(|(e, c)| (e.to_vec(), *c)))
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = poly(&[(&[1, 0], 1), (&[0, 1], -1)]);
        let expected = poly(&[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(poly_arith(&a, &b, PolyOp::Mul).unwrap(), expected);
    }

    #[test]
    fn product_with_zero_is_empty() {
        let a = poly(&[(&[1, 0], 3), (&[0, 2], 1)]);
        let z = SparsePolynomial::zero(2, q());
        let p = a.mul(&z).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn laurent_square() {
        let a = poly(&[(&[-1, 0], 1), (&[0, 1], 1)]);
        let expected = poly(&[(&[-2, 0], 1), (&[-1, 1], 2), (&[0, 2], 1)]);
        assert_eq!(a.pow(2), expected);
    }

    #[test]
    fn constant_term_read_off() {
        let a = poly(&[(&[0, 0], 3), (&[1, -1], 5)]);
        assert_eq!(a.constant_term(), q().from_i64(3));
        let b = poly(&[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!(b.constant_term().is_zero());
    }

    #[test]
    fn mismatched_contexts_are_rejected() {
        let a = poly(&[(&[1, 0], 1)]);
        let b = poly(&[(&[1, 0, 0], 1)]);
        assert!(matches!(a.add(&b), Err(Error::Context(_))));
        let c = a.change_field(Field::prime(5).unwrap()).unwrap();
        assert!(matches!(a.mul(&c), Err(Error::Context(_))));
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = poly(&[(&[1, 0], 1), (&[0, 1], 2)]);
        let b = poly(&[(&[1, 0], -1), (&[0, 1], 1)]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&ExponentVector::new(vec![0, 1])), q().from_i64(3));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(6, 4).len(), 126);
        assert_eq!(monomials_of_degree(10, 5).len(), 2002);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
        let m = monomials_of_degree(3, 2);
        let mut sorted = m.clone();
        sort_canonical(&mut sorted);
        assert_eq!(m, sorted);
        assert_eq!(m[0].as_slice(), &[2, 0, 0]);
        assert_eq!(m.last().unwrap().as_slice(), &[0, 0, 2]);
    }

    #[test]
    fn evaluation_with_negative_exponents() {
        let a = poly(&[(&[-1, 2], 3), (&[0, 0], 1)]);
        let pt = [q().from_i64(2), q().from_i64(3)];
        let v = a.evaluate(&pt).unwrap();
        assert_eq!(v.as_rational().unwrap(), &num_rational::BigRational::new(29.into(), 2.into()));
        let f = Field::prime(7).unwrap();
        let b = a.change_field(f).unwrap();
        assert!(b.evaluate(&[f.zero(), f.one()]).is_err());
    }

    #[test]
    fn display_is_canonical() {
        let a = poly(&[(&[0, 2], -1), (&[2, 0], 1), (&[1, 1], 2)]);
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(a.display_with(&names).to_string(), "a^2 + 2*a*b - b^2");
    }
}
