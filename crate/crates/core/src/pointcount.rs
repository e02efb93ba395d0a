//! Brute-force 𝔽_p-point counts of Grassmannian hypersurfaces.
//!
//! Points of G(r,n)(𝔽_p) are enumerated cell by cell: a Schubert cell is a
//! pivot set, and its points are the reduced row-echelon r×n matrices with
//! those pivot columns (pivots read left to right, entries right of a pivot
//! and outside the other pivot columns are free). Every point appears in
//! exactly one cell with exactly one assignment of the free entries.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{modular, Field, Scalar, SparsePolynomial};
use crate::grassmann::{all_indices, evaluate_pencil, index_to_partition, PencilSpec, PluckerIndex};

/// Enumeration is refused above this many Grassmannian points unless forced.
pub const ENUMERATION_LIMIT: u128 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertCell {
    /// Pivot columns, 1-based and increasing.
    pub pivots: PluckerIndex,
    pub dimension: usize,
    /// Free entries as (row, column), both 0-based.
    pub free_entries: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCountRecord {
    pub p: u64,
    pub t: u64,
    pub count: u64,
    pub residue: u64,
}

impl PointCountRecord {
    pub fn new(p: u64, t: u64, count: u64) -> Self {
        PointCountRecord { p, t, count, residue: count % p }
    }
}

pub fn enumerate_cells(r: usize, n: usize) -> Result<Vec<SchubertCell>> {
    if r == 0 || r >= n {
        return Err(Error::Domain(format!("G({r},{n}) needs 1 <= r <= n-1")));
    }
    Ok(all_indices(r, n)
        .into_iter()
        .map(|pivots| {
            let mut free_entries = Vec::new();
            for (row, &piv) in pivots.entries().iter().enumerate() {
                for col in piv..n {
                    // `col` is 0-based; column col+1 in 1-based terms
                    if !pivots.contains(col + 1) {
                        free_entries.push((row, col));
                    }
                }
            }
            SchubertCell { dimension: free_entries.len(), pivots, free_entries }
        })
        .collect())
}

impl SchubertCell {
    /// The partition labelling this cell; its size is the codimension.
    pub fn partition(&self, n: usize) -> crate::grassmann::Partition {
        index_to_partition(&self.pivots, self.pivots.len(), n).expect("valid pivot set")
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !modular::is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p >= modular::MAX_MODULUS {
        return Err(Error::Domain(format!("modulus {p} exceeds 2^32")));
    }
    Ok(())
}

/// `|G(r,n)(𝔽_p)| = Σ_cells p^dim`.
pub fn grassmannian_count(r: usize, n: usize, p: u64) -> Result<u128> {
    check_prime(p)?;
    let cells = enumerate_cells(r, n)?;
    let mut total: u128 = 0;
    for c in cells {
        let term = (p as u128)
            .checked_pow(c.dimension as u32)
            .ok_or_else(|| Error::Resource("point count overflows u128".into()))?;
        total = total.checked_add(term).ok_or_else(|| Error::Resource("point count overflows u128".into()))?;
    }
    Ok(total)
}

fn check_guard(r: usize, n: usize, p: u64, force: bool) -> Result<()> {
    let total = grassmannian_count(r, n, p)?;
    if total > ENUMERATION_LIMIT && !force {
        return Err(Error::Resource(format!(
            "G({r},{n})(F_{p}) has {total} points, above the limit of {ENUMERATION_LIMIT}"
        )));
    }
    Ok(())
}

/// Determinant of a small square matrix over 𝔽_p.
fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let k = m.len();
    let mut det = 1u64;
    for col in 0..k {
        let Some(piv) = (col..k).find(|&i| m[i][col] != 0) else { return 0 };
        if piv != col {
            m.swap(piv, col);
            det = modular::sub_mod(0, det, p);
        }
        det = modular::mul_mod(det, m[col][col], p);
        let inv = modular::inv_mod(m[col][col], p);
        for i in col + 1..k {
            let factor = modular::mul_mod(m[i][col], inv, p);
            if factor == 0 {
                continue;
            }
            for j in col..k {
                let sub = modular::mul_mod(factor, m[col][j], p);
                m[i][j] = modular::sub_mod(m[i][j], sub, p);
            }
        }
    }
    det
}

/// Plücker coordinates (r×r minors on increasing column sets) of an r×n matrix.
fn plucker_coordinates(matrix: &[Vec<u64>], indices: &[PluckerIndex], p: u64) -> Vec<u64> {
    indices
        .iter()
        .map(|idx| {
            let cols = idx.entries();
            if cols.len() == 2 {
                let (a, b) = (cols[0] - 1, cols[1] - 1);
                let lhs = modular::mul_mod(matrix[0][a], matrix[1][b], p);
                let rhs = modular::mul_mod(matrix[0][b], matrix[1][a], p);
                return modular::sub_mod(lhs, rhs, p);
            }
            let sub: Vec<Vec<u64>> = matrix.iter().map(|row| cols.iter().map(|&c| row[c - 1]).collect()).collect();
            det_mod(sub, p)
        })
        .collect()
}

/// Visit the Plücker coordinates of every 𝔽_p-point of one cell.
fn for_each_point(cell: &SchubertCell, n: usize, p: u64, indices: &[PluckerIndex], mut visit: impl FnMut(&[u64])) {
    let r = cell.pivots.len();
    let mut matrix = vec![vec![0u64; n]; r];
    for (row, &piv) in cell.pivots.entries().iter().enumerate() {
        matrix[row][piv - 1] = 1;
    }
    let mut digits = vec![0u64; cell.free_entries.len()];
    loop {
        for (&(row, col), &v) in cell.free_entries.iter().zip(&digits) {
            matrix[row][col] = v;
        }
        visit(&plucker_coordinates(&matrix, indices, p));
        // odometer
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return;
            }
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Number of 𝔽_p-points of G(r,n) where the polynomial (in Plücker
/// coordinates, over 𝔽_p) vanishes.
pub fn count_zeros(poly: &SparsePolynomial, r: usize, n: usize, force: bool) -> Result<u64> {
    let Field::Prime(p) = poly.field() else {
        return Err(Error::Context("point counts need a prime field".into()));
    };
    check_guard(r, n, p, force)?;
    let indices = all_indices(r, n);
    if poly.nvars() != indices.len() {
        return Err(Error::Context(format!("polynomial in {} variables for G({r},{n})", poly.nvars())));
    }
    let cells = enumerate_cells(r, n)?;
    cells
        .par_iter()
        .map(|cell| {
            let mut count = 0u64;
            let mut err = None;
            for_each_point(cell, n, p, &indices, |coords| match poly.evaluate_residues(coords) {
                Ok(0) => count += 1,
                Ok(_) => {}
                Err(e) => err = Some(e),
            });
            err.map_or(Ok(count), Err)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

fn check_parameter(p: u64, t: u64) -> Result<()> {
    check_prime(p)?;
    if t.is_multiple_of(p) {
        return Err(Error::Domain("t = 0 is excluded".into()));
    }
    if t >= p {
        return Err(Error::Domain(format!("t = {t} is not a residue in 1..{p}")));
    }
    Ok(())
}

/// Points of the pencil member at `t` over 𝔽_p, by direct substitution.
pub fn count_points(spec: &PencilSpec, p: u64, t: u64) -> Result<PointCountRecord> {
    check_parameter(p, t)?;
    let field = Field::prime(p)?;
    let f = evaluate_pencil(spec, field, &Scalar::Residue(t))?;
    let count = count_zeros(&f, spec.r, spec.n, false)?;
    Ok(PointCountRecord::new(p, t, count))
}

/// Point counts for every `t = 1, …, p−1` in one pass over G(r,n)(𝔽_p):
/// the deforming sum `S` and frozen product `P` are evaluated once per point
/// and the point is tallied for the unique `t` with `t·S + P = 0`, if any.
pub fn count_table(spec: &PencilSpec, p: u64, force: bool) -> Result<Vec<PointCountRecord>> {
    check_prime(p)?;
    check_guard(spec.r, spec.n, p, force)?;
    let field = Field::prime(p)?;
    let deform = spec.deforming_sum(field);
    let frozen = spec.frozen_product(field);
    let indices = all_indices(spec.r, spec.n);
    let cells = enumerate_cells(spec.r, spec.n)?;
    let tallies = cells
        .par_iter()
        .map(|cell| {
            let mut tally = vec![0u64; p as usize];
            for_each_point(cell, spec.n, p, &indices, |coords| {
                let s = deform.evaluate_residues(coords).expect("nonnegative exponents");
                let f = frozen.evaluate_residues(coords).expect("nonnegative exponents");
                if s == 0 {
                    if f == 0 {
                        // on every member of the pencil
                        for slot in tally.iter_mut().skip(1) {
                            *slot += 1;
                        }
                    }
                } else {
                    let t = modular::mul_mod(modular::sub_mod(0, f, p), modular::inv_mod(s, p), p);
                    tally[t as usize] += 1;
                }
            });
            tally
        })
        .reduce(
            || vec![0u64; p as usize],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok((1..p).map(|t| PointCountRecord::new(p, t, tallies[t as usize])).collect())
}

/// CSV with header `t,count,residue`, one row per record.
pub fn table_csv(records: &[PointCountRecord]) -> String {
    let mut out = String::from("t,count,residue\n");
    for rec in records {
        out.push_str(&format!("{},{},{}\n", rec.t, rec.count, rec.residue));
    }
    out
}
