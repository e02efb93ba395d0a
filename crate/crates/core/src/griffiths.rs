//! Graded pieces of Jacobian rings.
//!
//! Two formalisms are implemented, both as linear algebra in a single graded
//! slice (no Gröbner bases):
//!
//! - the bigraded Jacobian ring of a complete intersection `f_1 = … = f_c = 0`
//!   in projective space, with extra variables `y_j` and `F = Σ y_j f_j`;
//! - the generalized Jacobian ring of a hypersurface `f` in G(r,n): the
//!   Plücker coordinate ring modulo `f`, the derivatives `D^i_j f` and the
//!   diagonal differences `D^i_i f − D^{i+1}_{i+1} f`.
//!
//! Pencils are specialized at concrete values of `t` (over ℚ or modulo large
//! primes); generic behaviour is read off as the consensus of several
//! specializations.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{monomials_of_degree, EchelonBasis, ExponentVector, Field, Scalar, SparsePolynomial};
use crate::grassmann::{evaluate_pencil, plucker_relations, PencilSpec, PluckerVars};
use crate::symmetry::{invariant_monomials, SymmetryGroup};

/// Slices with more ambient monomials than this are refused.
pub const SLICE_LIMIT: u128 = 1_000_000;

/// The derivation `D^i_j = x_i ∂/∂x_j` (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivationSpec {
    pub source: usize,
    pub target: usize,
}

impl DerivationSpec {
    pub fn new(source: usize, target: usize, n: usize) -> Result<Self> {
        if !(1..=n).contains(&source) || !(1..=n).contains(&target) {
            return Err(Error::Domain(format!("D^{source}_{target} needs indices in 1..={n}")));
        }
        Ok(DerivationSpec { source, target })
    }

    /// Image of a single Plücker coordinate as `sign · variable`, if nonzero.
    fn on_variable(&self, vars: &PluckerVars, var: usize) -> Option<(i64, usize)> {
        let idx = vars.index(var);
        if !idx.contains(self.target) {
            return None;
        }
        if self.source == self.target {
            return Some((1, var));
        }
        if idx.contains(self.source) {
            return None;
        }
        let tuple: Vec<usize> =
            idx.entries().iter().map(|&k| if k == self.target { self.source } else { k }).collect();
        vars.signed_var(&tuple)
    }
}

/// Action of `D^i_j` on a polynomial in the Plücker coordinates of `vars`,
/// extended from the coordinates by the Leibniz rule.
pub fn apply_derivation(d: DerivationSpec, g: &SparsePolynomial, vars: &PluckerVars) -> Result<SparsePolynomial> {
    if g.nvars() != vars.nvars() {
        return Err(Error::Context(format!(
            "polynomial in {} variables, G({},{}) has {}",
            g.nvars(),
            vars.r(),
            vars.n(),
            vars.nvars()
        )));
    }
    if d.source > vars.n() || d.target > vars.n() || d.source == 0 || d.target == 0 {
        return Err(Error::Domain(format!("D^{}_{} on G({},{})", d.source, d.target, vars.r(), vars.n())));
    }
    let field = g.field();
    let images: Vec<Option<(i64, usize)>> = (0..vars.nvars()).map(|v| d.on_variable(vars, v)).collect();
    let mut out = SparsePolynomial::zero(g.nvars(), field);
    for (e, c) in g.terms() {
        for (v, image) in images.iter().enumerate() {
            let k = e[v];
            let Some((sign, w)) = *image else { continue };
            if k == 0 {
                continue;
            }
            let mut m = e.clone();
            m[v] -= 1;
            m[w] += 1;
            out.add_term(m, &field.mul(c, &field.from_i64(sign * k as i64)));
        }
    }
    Ok(out)
}

/// Generators of the generalized Jacobian ideal of `f`: `f`, then `D^i_j f`
/// for `i ≠ j` (row-major in `(i, j)`), then `D^i_i f − D^{i+1}_{i+1} f`.
pub fn grassmann_jacobian_generators(f: &SparsePolynomial, vars: &PluckerVars) -> Result<Vec<SparsePolynomial>> {
    if f.homogeneous_degree().is_none() {
        return Err(Error::Domain("generalized Jacobian ideal needs a nonzero homogeneous polynomial".into()));
    }
    let n = vars.n();
    let mut gens = vec![f.clone()];
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                gens.push(apply_derivation(DerivationSpec { source: i, target: j }, f, vars)?);
            }
        }
    }
    let diagonal: Vec<SparsePolynomial> = (1..=n)
        .map(|i| apply_derivation(DerivationSpec { source: i, target: i }, f, vars))
        .collect::<Result<_>>()?;
    for w in diagonal.windows(2) {
        gens.push(w[0].sub(&w[1])?);
    }
    Ok(gens)
}

/// A degree or a bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grading {
    Degree(u32),
    Bidegree([i32; 2]),
}

/// Dimensions of one graded piece of a quotient ring and how they were obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPieceReport {
    /// `(r, n)` for Grassmannian slices.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rn: Option<[usize; 2]>,
    /// Description of a complete-intersection context.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub context: Option<String>,
    pub degree: Grading,
    /// Specialized pencil parameter, when the ideal comes from a pencil.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<i64>,
    pub field: Field,
    pub ambient: usize,
    /// Rank of the Plücker-relation multiples alone.
    pub relation_rank: usize,
    /// Rank of the ideal-generator multiples alone.
    pub ideal_rank: usize,
    /// Rank of relations and generators together.
    pub span_rank: usize,
    pub quotient_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub invariant_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub survivors: Option<Vec<String>>,
    /// Wall-clock time; kept out of reproducible outputs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn check_slice_size(nvars: usize, degree: u32) -> Result<()> {
    let size = binomial(nvars as u128 + degree as u128 - 1, degree as u128);
    if size > SLICE_LIMIT {
        return Err(Error::Resource(format!(
            "degree-{degree} slice in {nvars} variables has {size} monomials (limit {SLICE_LIMIT})"
        )));
    }
    Ok(())
}

/// A graded slice of `ℚ[p_I] / (Plücker relations + ideal)` (or over 𝔽_p),
/// holding the echelon form of the span so further vectors can be tested.
#[derive(Clone, Debug)]
pub struct GradedSlice {
    vars: PluckerVars,
    degree: u32,
    field: Field,
    columns: Vec<ExponentVector>,
    position: HashMap<ExponentVector, usize>,
    echelon: EchelonBasis,
    report: GradedPieceReport,
}

impl GradedSlice {
    pub fn build(r: usize, n: usize, degree: u32, generators: &[SparsePolynomial], field: Field) -> Result<Self> {
        let start = Instant::now();
        let vars = PluckerVars::new(r, n)?;
        let nv = vars.nvars();
        for g in generators {
            if g.nvars() != nv || g.field() != field {
                return Err(Error::Context("ideal generator outside the Plücker ring of the slice".into()));
            }
            if !g.is_zero() {
                match g.homogeneous_degree() {
                    Some(d) if d >= 0 && d as u32 <= degree => {}
                    _ => {
                        return Err(Error::Domain(format!(
                            "ideal generators must be homogeneous of degree at most {degree}"
                        )))
                    }
                }
            }
        }
        check_slice_size(nv, degree)?;
        let columns = monomials_of_degree(nv, degree);
        let position: HashMap<ExponentVector, usize> =
            columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut slice = GradedSlice {
            vars,
            degree,
            field,
            position,
            echelon: EchelonBasis::new(field, columns.len()),
            report: GradedPieceReport {
                rn: Some([r, n]),
                context: None,
                degree: Grading::Degree(degree),
                t: None,
                field,
                ambient: columns.len(),
                relation_rank: 0,
                ideal_rank: 0,
                span_rank: 0,
                quotient_dim: columns.len(),
                invariant_dim: None,
                survivors: None,
                elapsed_ms: None,
            },
            columns,
        };

        for rho in plucker_relations(r, n, field)? {
            slice.insert_multiples(&rho)?;
        }
        slice.report.relation_rank = slice.echelon.rank();

        let mut ideal_only = EchelonBasis::new(field, slice.columns.len());
        for g in generators.iter().filter(|g| !g.is_zero()) {
            let gd = g.homogeneous_degree().expect("checked above") as u32;
            for m in monomials_of_degree(nv, degree - gd) {
                let row = slice.row_of(&g.mul_monomial(&m))?;
                ideal_only.insert(row.clone())?;
                slice.echelon.insert(row)?;
            }
        }
        slice.report.ideal_rank = ideal_only.rank();
        slice.report.span_rank = slice.echelon.rank();
        slice.report.quotient_dim = slice.columns.len() - slice.report.span_rank;
        slice.report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        Ok(slice)
    }

    fn insert_multiples(&mut self, g: &SparsePolynomial) -> Result<()> {
        let Some(gd) = g.homogeneous_degree() else { return Ok(()) };
        if gd as u32 > self.degree {
            return Ok(());
        }
        for m in monomials_of_degree(self.vars.nvars(), self.degree - gd as u32) {
            let row = self.row_of(&g.mul_monomial(&m))?;
            self.echelon.insert(row)?;
        }
        Ok(())
    }

    /// Coordinates of a degree-`degree` polynomial in the monomial basis.
    pub fn row_of(&self, p: &SparsePolynomial) -> Result<Vec<(usize, Scalar)>> {
        p.terms()
            .map(|(e, c)| {
                self.position
                    .get(e)
                    .map(|&col| (col, c.clone()))
                    .ok_or_else(|| Error::Domain(format!("monomial {:?} is not in the slice", e.as_slice())))
            })
            .collect()
    }

    fn monomial_row(&self, m: &ExponentVector) -> Result<Vec<(usize, Scalar)>> {
        let col = self
            .position
            .get(m)
            .ok_or_else(|| Error::Domain(format!("monomial {:?} is not in the slice", m.as_slice())))?;
        Ok(vec![(*col, self.field.one())])
    }

    pub fn report(&self) -> &GradedPieceReport {
        &self.report
    }

    pub fn into_report(self) -> GradedPieceReport {
        self.report
    }

    pub fn columns(&self) -> &[ExponentVector] {
        &self.columns
    }

    pub fn vars(&self) -> &PluckerVars {
        &self.vars
    }

    /// Whether `p` vanishes in the quotient (given the current span).
    pub fn contains(&self, p: &SparsePolynomial) -> Result<bool> {
        self.echelon.contains(self.row_of(p)?)
    }

    /// Whether the monomial vanishes in the quotient.
    pub fn contains_monomial(&self, m: &ExponentVector) -> Result<bool> {
        self.echelon.contains(self.monomial_row(m)?)
    }

    /// Greedily extend the span by the candidate monomials in the given
    /// order; returns the indices of those that were independent. The span
    /// grows by the chosen monomials.
    pub fn extend_by_monomials(&mut self, candidates: &[ExponentVector]) -> Result<Vec<usize>> {
        let mut chosen = Vec::new();
        for (i, m) in candidates.iter().enumerate() {
            let row = self.monomial_row(m)?;
            if self.echelon.insert(row)? {
                chosen.push(i);
            }
        }
        Ok(chosen)
    }

    /// Record the images of `candidates` in the quotient: the independent
    /// ones become the reported survivors.
    pub fn reduce_invariants(&mut self, candidates: &[ExponentVector]) -> Result<Vec<ExponentVector>> {
        let chosen = self.extend_by_monomials(candidates)?;
        let survivors: Vec<ExponentVector> = chosen.into_iter().map(|i| candidates[i].clone()).collect();
        let names = self.vars.names();
        self.report.invariant_dim = Some(survivors.len());
        self.report.survivors = Some(survivors.iter().map(|m| monomial_name(m, &names)).collect());
        Ok(survivors)
    }
}

/// `p13^2*p24^2` style rendering of a monomial.
pub fn monomial_name(m: &ExponentVector, names: &[String]) -> String {
    let factors: Vec<String> = m
        .as_slice()
        .iter()
        .zip(names)
        .filter(|(e, _)| **e != 0)
        .map(|(e, name)| if *e == 1 { name.clone() } else { format!("{name}^{e}") })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

/// Dimension data of `S^{r,n}_degree / (ideal)_degree`.
pub fn graded_quotient(
    r: usize,
    n: usize,
    degree: u32,
    generators: &[SparsePolynomial],
    field: Field,
) -> Result<GradedPieceReport> {
    Ok(GradedSlice::build(r, n, degree, generators, field)?.into_report())
}

/// A complete intersection `f_1 = … = f_c = 0` in projective space with
/// coordinates `x_1..x_m`, together with the auxiliary variables `y_j`.
/// Polynomials in the extended ring use variables `x_1..x_m, y_1..y_c` in
/// that order.
#[derive(Clone, Debug)]
pub struct CIJacobianContext {
    nx: usize,
    field: Field,
    polys: Vec<SparsePolynomial>,
    degrees: Vec<i32>,
    names: Vec<String>,
}

impl CIJacobianContext {
    /// `x_names` labels the `x` variables; the `y` variables are named `y1..yc`.
    pub fn new(polys: Vec<SparsePolynomial>, x_names: Vec<String>) -> Result<Self> {
        let first = polys.first().ok_or_else(|| Error::Domain("complete intersection needs equations".into()))?;
        let (nx, field) = (first.nvars(), first.field());
        if x_names.len() != nx {
            return Err(Error::Context(format!("{} names for {nx} variables", x_names.len())));
        }
        let mut degrees = Vec::with_capacity(polys.len());
        for f in &polys {
            if f.nvars() != nx || f.field() != field {
                return Err(Error::Context("equations live in different rings".into()));
            }
            match f.homogeneous_degree() {
                Some(d) if d > 0 => degrees.push(d),
                _ => return Err(Error::Domain("equations must be homogeneous of positive degree".into())),
            }
        }
        let mut names = x_names;
        names.extend((1..=polys.len()).map(|j| format!("y{j}")));
        Ok(CIJacobianContext { nx, field, polys, degrees, names })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.polys.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn lift(&self, f: &SparsePolynomial) -> SparsePolynomial {
        let mapping: Vec<usize> = (0..self.nx).collect();
        f.embed(self.nx + self.ny(), &mapping)
    }

    /// `F = Σ y_j f_j`.
    pub fn superpotential(&self) -> Result<SparsePolynomial> {
        let total = self.nx + self.ny();
        let mut acc = SparsePolynomial::zero(total, self.field);
        for (j, f) in self.polys.iter().enumerate() {
            acc = acc.add(&self.lift(f).mul_monomial(&ExponentVector::unit(total, self.nx + j)))?;
        }
        Ok(acc)
    }

    /// `f_1, …, f_c, ∂F/∂x_1, …, ∂F/∂x_m` in the extended ring.
    pub fn generators(&self) -> Result<Vec<SparsePolynomial>> {
        let f = self.superpotential()?;
        let mut gens: Vec<SparsePolynomial> = self.polys.iter().map(|p| self.lift(p)).collect();
        gens.extend((0..self.nx).map(|i| f.derivative(i)));
        Ok(gens)
    }

    /// Bidegree of a monomial under `deg x_i = (1,0)`, `deg y_j = (−d_j, 1)`.
    pub fn bidegree(&self, m: &ExponentVector) -> [i32; 2] {
        let e = m.as_slice();
        let xdeg: i32 = e[..self.nx].iter().sum();
        let ys = &e[self.nx..];
        let a = xdeg - ys.iter().zip(&self.degrees).map(|(k, d)| k * d).sum::<i32>();
        [a, ys.iter().sum()]
    }

    /// All monomials of the given bidegree, ordered by `y` part then `x` part
    /// (each canonically).
    pub fn monomials_of_bidegree(&self, bidegree: [i32; 2]) -> Result<Vec<ExponentVector>> {
        let [a, b] = bidegree;
        let mut out = Vec::new();
        if b < 0 {
            return Ok(out);
        }
        for y in monomials_of_degree(self.ny(), b as u32) {
            let ys = y.as_slice();
            let xdeg = a + ys.iter().zip(&self.degrees).map(|(k, d)| k * d).sum::<i32>();
            if xdeg < 0 {
                continue;
            }
            check_slice_size(self.nx, xdeg as u32)?;
            for x in monomials_of_degree(self.nx, xdeg as u32) {
                let mut e = x.into_vec();
                e.extend_from_slice(ys);
                out.push(ExponentVector::new(e));
            }
        }
        if out.len() as u128 > SLICE_LIMIT {
            return Err(Error::Resource(format!("bidegree slice has {} monomials", out.len())));
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        let degrees: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        format!("complete intersection of degrees ({}) in P^{}", degrees.join(","), self.nx - 1)
    }
}

/// The ℙ^{N−1} model of a hypersurface in G(r,n): the pencil member together
/// with all Plücker relations (a complete intersection for G(2,4)).
pub fn plucker_ci_context(spec: &PencilSpec, field: Field, t: &Scalar) -> Result<CIJacobianContext> {
    let vars = spec.vars()?;
    let mut polys = vec![evaluate_pencil(spec, field, t)?];
    polys.extend(plucker_relations(spec.r, spec.n, field)?);
    CIJacobianContext::new(polys, vars.names())
}

/// Dimension of the `(a, b)` piece of the bigraded Jacobian ring.
pub fn ci_bigraded_quotient(ctx: &CIJacobianContext, bidegree: [i32; 2]) -> Result<GradedPieceReport> {
    let start = Instant::now();
    let columns = ctx.monomials_of_bidegree(bidegree)?;
    let position: HashMap<&ExponentVector, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = EchelonBasis::new(ctx.field, columns.len());
    for g in ctx.generators()? {
        let Some((lead, _)) = g.terms().next() else { continue };
        let gb = ctx.bidegree(lead);
        if g.terms().any(|(e, _)| ctx.bidegree(e) != gb) {
            return Err(Error::Construction("Jacobian generator is not bihomogeneous".into()));
        }
        for m in ctx.monomials_of_bidegree([bidegree[0] - gb[0], bidegree[1] - gb[1]])? {
            let row = g
                .mul_monomial(&m)
                .terms()
                .map(|(e, c)| (position[e], c.clone()))
                .collect();
            echelon.insert(row)?;
        }
    }
    let span_rank = echelon.rank();
    Ok(GradedPieceReport {
        rn: None,
        context: Some(ctx.describe()),
        degree: Grading::Bidegree(bidegree),
        t: None,
        field: ctx.field,
        ambient: columns.len(),
        relation_rank: 0,
        ideal_rank: span_rank,
        span_rank,
        quotient_dim: columns.len() - span_rank,
        invariant_dim: None,
        survivors: None,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Reduce the pencil parameter into `field`, rejecting `t ≡ 0`.
pub fn specialize_t(field: Field, t: i64) -> Result<Scalar> {
    let s = field.from_i64(t);
    if s.is_zero() {
        return Err(Error::Domain(format!("t = {t} vanishes in {field}")));
    }
    Ok(s)
}

/// One `(t, field)` point at which a pencil is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Specialization {
    pub t: i64,
    pub field: Field,
}

/// All pairs of the given parameter values and fields, `t` varying slowest.
pub fn specializations(t_values: &[i64], fields: &[Field]) -> Vec<Specialization> {
    t_values.iter().flat_map(|&t| fields.iter().map(move |&field| Specialization { t, field })).collect()
}

/// The invariant part of a graded piece of the generalized Jacobian ring,
/// reconciled over several specializations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSubspace {
    pub dimension: usize,
    pub quotient_dim: usize,
    pub survivors: Vec<ExponentVector>,
    pub survivor_names: Vec<String>,
    /// Number of invariant monomials offered as candidates.
    pub candidates: usize,
    /// One report per specialization, in input order.
    pub reports: Vec<GradedPieceReport>,
    /// Indices into `reports` of specializations that disagree with the consensus.
    pub bad: Vec<usize>,
}

/// Report for one specialization of the pencil's generalized Jacobian ring,
/// with the invariant candidates reduced.
pub fn specialized_report(
    spec: &PencilSpec,
    degree: u32,
    candidates: &[ExponentVector],
    at: Specialization,
) -> Result<(GradedPieceReport, Vec<ExponentVector>)> {
    let start = Instant::now();
    let vars = spec.vars()?;
    let t = specialize_t(at.field, at.t)?;
    let f = evaluate_pencil(spec, at.field, &t)?;
    let gens = grassmann_jacobian_generators(&f, &vars)?;
    let mut slice = GradedSlice::build(spec.r, spec.n, degree, &gens, at.field)?;
    let survivors = slice.reduce_invariants(candidates)?;
    let mut report = slice.into_report();
    report.t = Some(at.t);
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok((report, survivors))
}

/// Dimension of the `group`-invariant part of the degree-`degree` piece of
/// the generalized Jacobian ring of the pencil, at each `(t, field)`
/// specialization. Rank can only drop at special parameters, so the
/// specializations with the smallest quotient form the consensus; the others
/// are flagged. An error is raised when no two specializations agree.
pub fn invariant_subspace(
    spec: &PencilSpec,
    group: &SymmetryGroup,
    degree: u32,
    t_values: &[i64],
    fields: &[Field],
) -> Result<InvariantSubspace> {
    if t_values.is_empty() || fields.is_empty() {
        return Err(Error::Domain("need at least one value of t and one field".into()));
    }
    let candidates = invariant_monomials(spec.r, spec.n, degree, group)?;
    let points = specializations(t_values, fields);
    let results: Vec<(GradedPieceReport, Vec<ExponentVector>)> = points
        .par_iter()
        .map(|&at| specialized_report(spec, degree, &candidates, at))
        .collect::<Result<_>>()?;

    // group identical outcomes, smallest quotient first
    let mut classes: BTreeMap<(usize, usize, Vec<ExponentVector>), Vec<usize>> = BTreeMap::new();
    for (i, (report, survivors)) in results.iter().enumerate() {
        let key = (report.quotient_dim, survivors.len(), survivors.clone());
        classes.entry(key).or_default().push(i);
    }
    let (key, members) = classes.iter().next().expect("at least one specialization");
    if results.len() > 1 && classes.values().all(|m| m.len() == 1) {
        let summary: Vec<String> = results
            .iter()
            .zip(&points)
            .map(|((r, s), at)| format!("t={} over {}: quotient {}, invariant {}", at.t, at.field, r.quotient_dim, s.len()))
            .collect();
        return Err(Error::Inconsistent(summary.join("; ")));
    }
    let bad: Vec<usize> = (0..results.len()).filter(|i| !members.contains(i)).collect();
    let names = spec.vars()?.names();
    let survivors = key.2.clone();
    Ok(InvariantSubspace {
        dimension: key.1,
        quotient_dim: key.0,
        survivor_names: survivors.iter().map(|m| monomial_name(m, &names)).collect(),
        survivors,
        candidates: candidates.len(),
        reports: results.into_iter().map(|(r, _)| r).collect(),
        bad,
    })
}
