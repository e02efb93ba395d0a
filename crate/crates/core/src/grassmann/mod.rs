//! Combinatorics of the Grassmannian G(r,n) in its Plücker embedding.
//!
//! A Plücker coordinate is labelled either by a strictly increasing r-tuple
//! in `1..=n` or by a partition fitting in an `r × (n−r)` grid. Coordinates
//! are numbered in lexicographic order of their tuples, so for G(2,4) the
//! variables are `p12, p13, p14, p23, p24, p34`.

mod partition;
mod pencil;
mod relations;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use partition::{
    enumerate_arrow_partitions, enumerate_partitions, frozen_variables, index_to_partition, is_arrow_partition,
    partition_to_index, Partition,
};
pub use pencil::{build_pencil, evaluate_pencil, PencilSpec, Variant};
pub use relations::plucker_relations;

/// Strictly increasing r-tuple of indices in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PluckerIndex(Vec<usize>);

impl PluckerIndex {
    pub fn new(entries: Vec<usize>, r: usize, n: usize) -> Result<Self> {
        if entries.len() != r {
            return Err(Error::Domain(format!("{entries:?} does not have {r} entries")));
        }
        if entries.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::Domain(format!("{entries:?} has entries outside 1..={n}")));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!("{entries:?} is not strictly increasing")));
        }
        Ok(PluckerIndex(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

impl fmt::Display for PluckerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&i| i < 10) {
            write!(f, "p")?;
            for i in &self.0 {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
            write!(f, "p{{{}}}", parts.join(","))
        }
    }
}

/// All r-subsets of `1..=n` in lexicographic order.
pub fn all_indices(r: usize, n: usize) -> Vec<PluckerIndex> {
    fn rec(start: usize, r: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<PluckerIndex>) {
        if cur.len() == r {
            out.push(PluckerIndex(cur.clone()));
            return;
        }
        for i in start..=n {
            if n - i + 1 < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, r, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, r, n, &mut Vec::new(), &mut out);
    out
}

/// The Plücker coordinate ring's variable set for G(r,n).
#[derive(Clone, Debug)]
pub struct PluckerVars {
    r: usize,
    n: usize,
    indices: Vec<PluckerIndex>,
    position: HashMap<PluckerIndex, usize>,
}

impl PluckerVars {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r == 0 || r >= n {
            return Err(Error::Domain(format!("G({r},{n}) needs 1 <= r <= n-1")));
        }
        let indices = all_indices(r, n);
        let position = indices.iter().cloned().enumerate().map(|(i, idx)| (idx, i)).collect();
        Ok(PluckerVars { r, n, indices, position })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[PluckerIndex] {
        &self.indices
    }

    pub fn index(&self, var: usize) -> &PluckerIndex {
        &self.indices[var]
    }

    pub fn var(&self, idx: &PluckerIndex) -> Option<usize> {
        self.position.get(idx).copied()
    }

    /// Variable number of the coordinate with the given (increasing) entries.
    pub fn var_of(&self, entries: &[usize]) -> Option<usize> {
        self.position.get(&PluckerIndex(entries.to_vec())).copied()
    }

    /// Resolve an arbitrary ordered tuple `x_{a1} ∧ … ∧ x_{ar}` to
    /// `sign · p_I` with `I` increasing. `None` when an index repeats.
    pub fn signed_var(&self, tuple: &[usize]) -> Option<(i64, usize)> {
        let mut sorted = tuple.to_vec();
        let mut sign = 1i64;
        // insertion sort, counting transpositions
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        self.var_of(&sorted).map(|v| (sign, v))
    }

    pub fn names(&self) -> Vec<String> {
        self.indices.iter().map(|i| i.to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_order_is_lexicographic() {
        let vars = PluckerVars::new(2, 4).unwrap();
        assert_eq!(vars.names(), ["p12", "p13", "p14", "p23", "p24", "p34"]);
        assert_eq!(PluckerVars::new(2, 5).unwrap().nvars(), 10);
        assert_eq!(PluckerVars::new(3, 6).unwrap().nvars(), 20);
        assert!(PluckerVars::new(0, 3).is_err());
        assert!(PluckerVars::new(3, 3).is_err());
    }

    #[test]
    fn signed_resolution() {
        let vars = PluckerVars::new(2, 4).unwrap();
        assert_eq!(vars.signed_var(&[2, 1]), Some((-1, 0)));
        assert_eq!(vars.signed_var(&[1, 2]), Some((1, 0)));
        assert_eq!(vars.signed_var(&[3, 3]), None);
        let vars = PluckerVars::new(3, 5).unwrap();
        assert_eq!(vars.signed_var(&[3, 1, 2]), Some((1, 0)));
        assert_eq!(vars.signed_var(&[2, 1, 3]), Some((-1, 0)));
    }

    #[test]
    fn index_validation() {
        assert!(PluckerIndex::new(vec![1, 3], 2, 4).is_ok());
        assert!(PluckerIndex::new(vec![3, 1], 2, 4).is_err());
        assert!(PluckerIndex::new(vec![1, 5], 2, 4).is_err());
        assert!(PluckerIndex::new(vec![1], 2, 4).is_err());
        let big = PluckerIndex::new(vec![2, 10], 2, 10).unwrap();
        assert_eq!(big.to_string(), "p{2,10}");
    }
}
