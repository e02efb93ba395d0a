use std::fmt;

use serde::{Deserialize, Serialize};

use super::PluckerIndex;
use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts (trailing zeros trimmed).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Whether the Young diagram fits in `rows × cols`.
    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.0.len() <= rows && self.part(0) <= cols
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Lattice-path conversion. Walk from the lower-left to the upper-right
/// corner of the `r × (n−r)` grid along the diagram's boundary; the step
/// numbers of the vertical steps form the index. The i-th vertical step from
/// the bottom comes after `λ_{r−i+1}` horizontal ones, giving `λ_{r−i+1} + i`.
pub fn partition_to_index(p: &Partition, r: usize, n: usize) -> Result<PluckerIndex> {
    if r == 0 || r >= n {
        return Err(Error::Domain(format!("G({r},{n}) needs 1 <= r <= n-1")));
    }
    if !p.fits(r, n - r) {
        return Err(Error::Domain(format!("partition {p} does not fit in a {r}x{} grid", n - r)));
    }
    let entries = (1..=r).map(|i| p.part(r - i) + i).collect();
    PluckerIndex::new(entries, r, n)
}

pub fn index_to_partition(idx: &PluckerIndex, r: usize, n: usize) -> Result<Partition> {
    let idx = PluckerIndex::new(idx.entries().to_vec(), r, n)?;
    let mut parts = vec![0; r];
    for (i, &entry) in idx.entries().iter().enumerate() {
        parts[r - 1 - i] = entry - (i + 1);
    }
    Partition::new(parts)
}

/// Every partition fitting in `rows × cols`, in reverse lexicographic order
/// of parts (largest first).
pub fn enumerate_partitions(rows: usize, cols: usize) -> Vec<Partition> {
    fn rec(rows_left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rows_left == 0 {
            out.push(Partition::new(cur.clone()).expect("decreasing by construction"));
            return;
        }
        for part in (0..=max).rev() {
            cur.push(part);
            rec(rows_left - 1, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// Arrow partitions in an `r × k` grid: the empty partition, the full
/// rectangle, `j ≤ r−2` full rows plus one row of length `1..=k`, or
/// `c ∈ 1..k` full-height columns plus one column of height `0..r`.
pub fn is_arrow_partition(p: &Partition, r: usize, k: usize) -> bool {
    if !p.fits(r, k) {
        return false;
    }
    let parts = p.parts();
    if parts.is_empty() {
        return true;
    }
    if parts.len() == r && parts.iter().all(|&x| x == k) {
        return true;
    }
    // full rows then one partial (or full) row, at most r-1 nonzero rows
    if parts.len() < r {
        let (last, full) = parts.split_last().expect("nonempty");
        if *last >= 1 && full.iter().all(|&x| x == k) {
            return true;
        }
    }
    // c full-height columns plus one column of height b < r
    if parts.len() == r {
        let c = parts[r - 1];
        if (1..k).contains(&c) {
            let taller = parts.iter().take_while(|&&x| x == c + 1).count();
            if parts[taller..].iter().all(|&x| x == c) && taller < r {
                return true;
            }
        }
    }
    false
}

/// Arrow partitions of G(r,n), ordered by their Plücker index.
pub fn enumerate_arrow_partitions(r: usize, n: usize) -> Result<Vec<Partition>> {
    if r == 0 || r >= n {
        return Err(Error::Domain(format!("G({r},{n}) needs 1 <= r <= n-1")));
    }
    let k = n - r;
    let mut arrows: Vec<(PluckerIndex, Partition)> = enumerate_partitions(r, k)
        .into_iter()
        .filter(|p| is_arrow_partition(p, r, k))
        .map(|p| (partition_to_index(&p, r, n).expect("fits"), p))
        .collect();
    arrows.sort();
    Ok(arrows.into_iter().map(|(_, p)| p).collect())
}

/// The n cyclic r-tuples `(i, i+1, …, i+r−1)` mod n, each sorted, in order of
/// their starting index.
pub fn frozen_variables(r: usize, n: usize) -> Result<Vec<PluckerIndex>> {
    if r == 0 || r >= n {
        return Err(Error::Domain(format!("G({r},{n}) needs 1 <= r <= n-1")));
    }
    (1..=n)
        .map(|start| {
            let mut entries: Vec<usize> = (0..r).map(|j| (start - 1 + j) % n + 1).collect();
            entries.sort_unstable();
            PluckerIndex::new(entries, r, n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn idx(v: &[usize], r: usize, n: usize) -> PluckerIndex {
        PluckerIndex::new(v.to_vec(), r, n).unwrap()
    }

    #[test]
    fn two_plus_one_in_g25() {
        assert_eq!(partition_to_index(&part(&[2, 1]), 2, 5).unwrap(), idx(&[2, 4], 2, 5));
    }

    #[test]
    fn empty_partition_is_first_index() {
        assert_eq!(partition_to_index(&Partition::empty(), 3, 7).unwrap(), idx(&[1, 2, 3], 3, 7));
    }

    #[test]
    fn full_rectangle_in_g24() {
        assert_eq!(partition_to_index(&part(&[2, 2]), 2, 4).unwrap(), idx(&[3, 4], 2, 4));
    }

    #[test]
    fn out_of_grid_is_rejected() {
        assert!(matches!(partition_to_index(&part(&[3]), 2, 4), Err(Error::Domain(_))));
        assert!(matches!(partition_to_index(&part(&[1, 1, 1]), 2, 4), Err(Error::Domain(_))));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn arrow_counts() {
        assert_eq!(enumerate_arrow_partitions(2, 4).unwrap().len(), 6);
        let g25 = enumerate_arrow_partitions(2, 5).unwrap();
        assert_eq!(g25.len(), 9);
        assert!(!g25.contains(&part(&[3, 1])));
        assert_eq!(enumerate_arrow_partitions(3, 6).unwrap().len(), 14);
    }

    #[test]
    fn only_excess_partition_of_g25_is_p25() {
        let excess: Vec<Partition> =
            enumerate_partitions(2, 3).into_iter().filter(|p| !is_arrow_partition(p, 2, 3)).collect();
        assert_eq!(excess, vec![part(&[3, 1])]);
        assert_eq!(partition_to_index(&excess[0], 2, 5).unwrap(), idx(&[2, 5], 2, 5));
    }

    #[test]
    fn frozen_lists() {
        let f24: Vec<Vec<usize>> = frozen_variables(2, 4).unwrap().iter().map(|i| i.entries().to_vec()).collect();
        assert_eq!(f24, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]);
        let f25: Vec<Vec<usize>> = frozen_variables(2, 5).unwrap().iter().map(|i| i.entries().to_vec()).collect();
        assert_eq!(f25, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![1, 5]]);
        let f13: Vec<Vec<usize>> = frozen_variables(1, 3).unwrap().iter().map(|i| i.entries().to_vec()).collect();
        assert_eq!(f13, vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn grid_enumeration_size_is_binomial() {
        assert_eq!(enumerate_partitions(2, 2).len(), 6);
        assert_eq!(enumerate_partitions(2, 3).len(), 10);
        assert_eq!(enumerate_partitions(3, 3).len(), 20);
    }
}
