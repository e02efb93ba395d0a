use std::collections::BTreeSet;

use super::{all_indices, PluckerVars};
use crate::error::Result;
use crate::exact::{grlex_cmp, ExponentVector, Field, SparsePolynomial};

/// Quadratic Plücker relations of G(r,n) over `field`.
///
/// For every (r−1)-subset `I` and (r+1)-subset `J` the three-term-style
/// relation `Σ_l (−1)^l p_{I,j_l} p_{J∖j_l}` is formed, where `p_{I,j}` is the
/// alternating coordinate `x_{i_1}∧…∧x_{i_{r−1}}∧x_j`. Zero relations are
/// dropped, each relation is scaled to a positive leading coefficient, and
/// exact duplicates are removed. The list is empty for r = 1 and r = n−1.
pub fn plucker_relations(r: usize, n: usize, field: Field) -> Result<Vec<SparsePolynomial>> {
    let vars = PluckerVars::new(r, n)?;
    let nv = vars.nvars();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let smaller = if r >= 2 { all_indices(r - 1, n) } else { vec![] };
    let larger = if r + 1 < n { all_indices(r + 1, n) } else { vec![] };
    for i_set in &smaller {
        for j_set in &larger {
            let mut terms: std::collections::BTreeMap<ExponentVector, i64> = Default::default();
            let js = j_set.entries();
            for (l, &jl) in js.iter().enumerate() {
                let mut left: Vec<usize> = i_set.entries().to_vec();
                left.push(jl);
                let Some((s1, v1)) = vars.signed_var(&left) else { continue };
                let rest: Vec<usize> = js.iter().copied().filter(|&x| x != jl).collect();
                let (s2, v2) = vars.signed_var(&rest).expect("subset of distinct indices");
                let sign = if l % 2 == 0 { -1 } else { 1 };
                let mut e = ExponentVector::zeros(nv);
                e[v1] += 1;
                e[v2] += 1;
                *terms.entry(e).or_insert(0) += sign * s1 * s2;
            }
            let mut terms: Vec<(ExponentVector, i64)> = terms.into_iter().filter(|(_, c)| *c != 0).collect();
            if terms.is_empty() {
                continue;
            }
            terms.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
            if terms[0].1 < 0 {
                for t in terms.iter_mut() {
                    t.1 = -t.1;
                }
            }
            if seen.insert(terms.clone()) {
                out.push(SparsePolynomial::from_int_terms(
                    nv,
                    field,
                    terms.into_iter().map(|(e, c)| (e.into_vec(), c)),
                ));
            }
        }
    }
    Ok(out)
}
