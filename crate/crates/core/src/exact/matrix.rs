//! Exact sparse linear algebra: rank, quotient dimension and greedy
//! rank-extension.
//!
//! Over ℚ, rows are cleared of denominators and reduced fraction-free
//! (Bareiss, smallest-magnitude pivot per column). Over 𝔽_p the usual
//! Gaussian elimination on word-sized residues is used.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{abs_cmp, Field, Scalar};
use super::modular;
use crate::error::{Error, Result};

/// A sparse row: `(column, value)` pairs, sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(field: Field, ncols: usize) -> Self {
        SparseMatrix { field, ncols, rows: Vec::new() }
    }

    /// Build from dense integer rows.
    pub fn from_dense(field: Field, ncols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::new(field, ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::Context(format!("row of length {} in {ncols} columns", r.len())));
            }
            m.push_row(r.iter().enumerate().map(|(c, &v)| (c, field.from_i64(v))).collect())?;
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Append a row given as arbitrary `(column, value)` pairs; entries are
    /// summed per column and zeros dropped.
    pub fn push_row(&mut self, entries: Vec<(usize, Scalar)>) -> Result<()> {
        let row = normalize_row(self.field, self.ncols, entries)?;
        self.rows.push(row);
        Ok(())
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.rows[row]
            .binary_search_by_key(&col, |(c, _)| *c)
            .map(|i| self.rows[row][i].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseRow> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { field: self.field, ncols: self.rows.len(), rows: cols }
    }
}

pub fn normalize_row(field: Field, ncols: usize, entries: Vec<(usize, Scalar)>) -> Result<SparseRow> {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, v) in entries {
        if c >= ncols {
            return Err(Error::Context(format!("column {c} out of range for {ncols} columns")));
        }
        field.check(&v)?;
        if v.is_zero() {
            continue;
        }
        match acc.get_mut(&c) {
            Some(x) => *x = field.add(x, &v),
            None => {
                acc.insert(c, v);
            }
        }
    }
    Ok(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect())
}

/// Exact rank over the matrix's field.
pub fn rank(m: &SparseMatrix) -> usize {
    match m.field {
        Field::Prime(p) => {
            let mut basis = ModularEchelon::new(p);
            for row in &m.rows {
                basis.insert(residue_row(row));
            }
            basis.rank()
        }
        Field::Rationals => bareiss_rank(m.rows.iter().map(integer_row).collect()),
    }
}

/// `ambient_dim − rank(span)`: dimension of the quotient of the ambient
/// coordinate space by the row span.
pub fn quotient_dimension(ambient_dim: usize, span: &SparseMatrix) -> Result<usize> {
    if span.ncols != ambient_dim {
        return Err(Error::Context(format!(
            "span has {} columns, ambient dimension is {ambient_dim}",
            span.ncols
        )));
    }
    Ok(ambient_dim - rank(span))
}

/// Greedy maximal subset of `candidates`, scanned in order, each member of
/// which raises the rank of `base` together with the members already chosen.
pub fn independent_extension(base: &SparseMatrix, candidates: &[SparseRow]) -> Result<Vec<usize>> {
    let mut echelon = EchelonBasis::new(base.field, base.ncols);
    for row in &base.rows {
        echelon.insert_normalized(row);
    }
    let mut chosen = Vec::new();
    for (i, cand) in candidates.iter().enumerate() {
        if echelon.insert(cand.clone())? {
            chosen.push(i);
        }
    }
    Ok(chosen)
}

/// Incrementally maintained row-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    ncols: usize,
    inner: EchelonInner,
}

#[derive(Clone, Debug)]
enum EchelonInner {
    Modular(ModularEchelon),
    Integral(IntegralEchelon),
}

impl EchelonBasis {
    pub fn new(field: Field, ncols: usize) -> Self {
        let inner = match field {
            Field::Prime(p) => EchelonInner::Modular(ModularEchelon::new(p)),
            Field::Rationals => EchelonInner::Integral(IntegralEchelon::default()),
        };
        EchelonBasis { field, ncols, inner }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            EchelonInner::Modular(e) => e.rank(),
            EchelonInner::Integral(e) => e.pivots.len(),
        }
    }

    /// Add a vector; returns whether it was independent of the current span.
    pub fn insert(&mut self, entries: Vec<(usize, Scalar)>) -> Result<bool> {
        let row = normalize_row(self.field, self.ncols, entries)?;
        Ok(self.insert_normalized(&row))
    }

    fn insert_normalized(&mut self, row: &SparseRow) -> bool {
        match &mut self.inner {
            EchelonInner::Modular(e) => e.insert(residue_row(row)),
            EchelonInner::Integral(e) => e.insert(integer_row(row)),
        }
    }

    /// Whether the vector lies in the current span.
    pub fn contains(&self, entries: Vec<(usize, Scalar)>) -> Result<bool> {
        let row = normalize_row(self.field, self.ncols, entries)?;
        Ok(match &self.inner {
            EchelonInner::Modular(e) => e.reduce(residue_row(&row)).is_empty(),
            EchelonInner::Integral(e) => e.reduce(integer_row(&row)).is_empty(),
        })
    }
}

fn residue_row(row: &SparseRow) -> Vec<(usize, u64)> {
    row.iter().map(|(c, v)| (*c, v.as_residue().expect("residue"))).collect()
}

/// Scale a rational row by the lcm of its denominators.
fn integer_row(row: &SparseRow) -> Vec<(usize, BigInt)> {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.as_rational().expect("rational").denom());
    }
    row.iter()
        .map(|(c, v)| {
            let x = v.as_rational().expect("rational");
            (*c, x.numer() * (&lcm / x.denom()))
        })
        .collect()
}

#[derive(Clone, Debug)]
struct ModularEchelon {
    p: u64,
    // leading column -> row with leading coefficient 1
    pivots: HashMap<usize, Vec<(usize, u64)>>,
}

impl ModularEchelon {
    fn new(p: u64) -> Self {
        ModularEchelon { p, pivots: HashMap::new() }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut row: Vec<(usize, u64)>) -> Vec<(usize, u64)> {
        let p = self.p;
        let mut scratch = Vec::new();
        loop {
            let Some(&(lead, coef)) = row.first() else { return row };
            let Some(pivot) = self.pivots.get(&lead) else { return row };
            // row -= coef * pivot
            let factor = p - coef;
            scratch.clear();
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < pivot.len() {
                match (row.get(i), pivot.get(j)) {
                    (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                        let v = modular::add_mod(va, modular::mul_mod(factor, vb, p), p);
                        if v != 0 {
                            scratch.push((ca, v));
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                        scratch.push((ca, va));
                        i += 1;
                    }
                    (Some(_), Some(&(cb, vb))) | (None, Some(&(cb, vb))) => {
                        scratch.push((cb, modular::mul_mod(factor, vb, p)));
                        j += 1;
                    }
                    (Some(&(ca, va)), None) => {
                        scratch.push((ca, va));
                        i += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            std::mem::swap(&mut row, &mut scratch);
        }
    }

    fn insert(&mut self, row: Vec<(usize, u64)>) -> bool {
        let mut row = self.reduce(row);
        let Some(&(lead, coef)) = row.first() else { return false };
        let inv = modular::inv_mod(coef, self.p);
        for (_, v) in row.iter_mut() {
            *v = modular::mul_mod(*v, inv, self.p);
        }
        self.pivots.insert(lead, row);
        true
    }
}

/// Echelon basis over ℤ with primitive rows; ranks agree with ℚ.
#[derive(Clone, Debug, Default)]
struct IntegralEchelon {
    pivots: HashMap<usize, Vec<(usize, BigInt)>>,
}

impl IntegralEchelon {
    fn reduce(&self, mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
        loop {
            let Some((lead, coef)) = row.first().cloned() else { return row };
            let Some(pivot) = self.pivots.get(&lead) else { return row };
            let pivot_lead = &pivot[0].1;
            let g = coef.gcd(pivot_lead);
            let row_scale = pivot_lead / &g;
            let pivot_scale = &coef / &g;
            row = combine(&row, &row_scale, pivot, &pivot_scale);
            make_primitive(&mut row);
        }
    }

    fn insert(&mut self, row: Vec<(usize, BigInt)>) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        make_primitive(&mut row);
        if row[0].1.is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
        self.pivots.insert(row[0].0, row);
        true
    }
}

/// `a·x − b·y` for sparse integer rows.
fn combine(
    x: &[(usize, BigInt)],
    a: &BigInt,
    y: &[(usize, BigInt)],
    b: &BigInt,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn make_primitive(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Fraction-free Bareiss elimination on sparse integer rows. Pivot for each
/// column is the active row of smallest leading magnitude (lowest index on ties).
fn bareiss_rank(rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    let mut active: Vec<Vec<(usize, BigInt)>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    while !active.is_empty() {
        // Every active row has zeros left of `col`, so the next pivot column
        // is the smallest leading column.
        let col = active.iter().map(|r| r[0].0).min().expect("nonempty");
        let pivot_idx = active
            .iter()
            .enumerate()
            .filter(|(_, r)| r[0].0 == col)
            .min_by(|(_, a), (_, b)| abs_cmp(&a[0].1, &b[0].1))
            .map(|(i, _)| i)
            .expect("pivot exists");
        let pivot = active.swap_remove(pivot_idx);
        let pv = pivot[0].1.clone();
        let mut next = Vec::with_capacity(active.len());
        for row in active {
            let reduced = if row[0].0 == col {
                let lead = row[0].1.clone();
                combine(&row, &pv, &pivot, &lead)
            } else {
                row.into_iter().map(|(c, v)| (c, v * &pv)).collect()
            };
            let divided: Vec<(usize, BigInt)> = reduced
                .into_iter()
                .map(|(c, v)| {
                    let (q, r) = v.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    (c, q)
                })
                .filter(|(_, v)| !v.is_zero())
                .collect();
            if !divided.is_empty() {
                next.push(divided);
            }
        }
        active = next;
        prev = pv;
        rank += 1;
    }
    rank
}
