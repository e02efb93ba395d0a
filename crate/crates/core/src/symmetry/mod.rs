//! Diagonal symmetry groups of arrow pencils.
//!
//! Group elements are written additively: `a ∈ (Z/n)^n` stands for the
//! diagonal matrix `(ζ^{a_1}, …, ζ^{a_n})` with ζ a primitive n-th root of
//! unity. The big group is the lattice `L = {a : r·Σa_i ≡ 0 mod n}`; the
//! effective group is `L` modulo the scalars `(c, …, c)`.

mod snf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{monomials_of_degree, ExponentVector};
use crate::grassmann::{all_indices, PluckerIndex};

pub use snf::{describe, invariant_factors};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryGroup {
    pub n: usize,
    pub r: usize,
    /// Generators of `L`, entries in `[0, n)`.
    pub generators: Vec<Vec<u64>>,
    /// The scalar element `(1, …, 1)`.
    pub scalar: Vec<u64>,
    /// `|L|`.
    pub order_tilde: u128,
    /// `|L / scalars|`.
    pub order: u128,
    /// Invariant factors of `L` and of `L / scalars` (trivial factors dropped).
    pub tilde_factors: Vec<i64>,
    pub factors: Vec<i64>,
    indices: Vec<PluckerIndex>,
}

/// Character of a Plücker monomial: entry i counts (mod n) how often index i
/// occurs among the monomial's factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialCharacter {
    pub modulus: u64,
    pub values: Vec<u64>,
}

impl MonomialCharacter {
    pub fn add(&self, other: &MonomialCharacter) -> MonomialCharacter {
        assert_eq!(self.modulus, other.modulus);
        MonomialCharacter {
            modulus: self.modulus,
            values: self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % self.modulus).collect(),
        }
    }

    /// `⟨χ, a⟩ mod n`.
    pub fn pair(&self, element: &[u64]) -> u64 {
        let n = self.modulus;
        self.values.iter().zip(element).map(|(c, a)| c * a % n).sum::<u64>() % n
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn build_group(n: usize, r: usize) -> Result<SymmetryGroup> {
    if n < 2 || r == 0 || r >= n {
        return Err(Error::Domain(format!("need n >= 2 and 1 <= r <= n-1, got n={n}, r={r}")));
    }
    let g = gcd(r, n);
    let step = n / g;
    let nn = n as u64;
    // e_i − e_1 for i = 2..n, then (n/g)·e_1
    let mut generators = Vec::with_capacity(n);
    for i in 1..n {
        let mut v = vec![0u64; n];
        v[0] = nn - 1;
        v[i] = 1;
        generators.push(v);
    }
    let mut last = vec![0u64; n];
    last[0] = (step % n) as u64;
    generators.push(last);

    // Relation matrices in the basis above of the preimage lattice in Z^n.
    // A vector a has coordinates (Σa / (n/g), a_2, …, a_n).
    let coords = |a: &[i64]| -> Vec<i64> {
        let total: i64 = a.iter().sum();
        debug_assert_eq!(total % step as i64, 0);
        let mut c = vec![total / step as i64];
        c.extend_from_slice(&a[1..]);
        c
    };
    let mut relations: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut a = vec![0i64; n];
            a[j] = n as i64;
            coords(&a)
        })
        .collect();
    let tilde_factors: Vec<i64> = invariant_factors(&relations).into_iter().filter(|&d| d != 1).collect();
    relations.push(coords(&vec![1i64; n]));
    let factors: Vec<i64> = invariant_factors(&relations).into_iter().filter(|&d| d != 1).collect();
    if tilde_factors.contains(&0) || factors.contains(&0) {
        return Err(Error::Construction("relation lattice is not of full rank".into()));
    }
    let order_tilde: u128 = tilde_factors.iter().map(|&d| d as u128).product();
    let order: u128 = factors.iter().map(|&d| d as u128).product();
    let closed_form = (n as u128).pow(n as u32 - 1) * g as u128;
    if order_tilde != closed_form || order * n as u128 != order_tilde {
        return Err(Error::Construction(format!(
            "group orders disagree: |L| = {order_tilde}, expected {closed_form}, |H| = {order}"
        )));
    }
    Ok(SymmetryGroup {
        n,
        r,
        generators,
        scalar: vec![1; n],
        order_tilde,
        order,
        tilde_factors,
        factors,
        indices: all_indices(r, n),
    })
}

impl SymmetryGroup {
    /// Structure of the effective group, e.g. `(Z/4)^2 x Z/2`.
    pub fn structure(&self) -> String {
        describe(&self.factors)
    }

    pub fn tilde_structure(&self) -> String {
        describe(&self.tilde_factors)
    }

    /// Whether `a` lies in `L`.
    pub fn contains(&self, a: &[u64]) -> bool {
        a.len() == self.n && (self.r as u64 * a.iter().sum::<u64>()).is_multiple_of(self.n as u64)
    }

    pub fn nvars(&self) -> usize {
        self.indices.len()
    }
}

pub fn character(m: &ExponentVector, group: &SymmetryGroup) -> Result<MonomialCharacter> {
    if m.len() != group.indices.len() {
        return Err(Error::Context(format!(
            "monomial in {} variables, G({},{}) has {}",
            m.len(),
            group.r,
            group.n,
            group.indices.len()
        )));
    }
    let n = group.n as i64;
    let mut values = vec![0i64; group.n];
    for (idx, &e) in group.indices.iter().zip(m.as_slice()) {
        for &i in idx.entries() {
            values[i - 1] += e as i64;
        }
    }
    Ok(MonomialCharacter {
        modulus: group.n as u64,
        values: values.into_iter().map(|v| v.rem_euclid(n) as u64).collect(),
    })
}

/// Whether every element of `L` fixes the monomial, tested on the stored
/// generators.
pub fn is_invariant(m: &ExponentVector, group: &SymmetryGroup) -> Result<bool> {
    let chi = character(m, group)?;
    Ok(group.generators.iter().all(|g| chi.pair(g) == 0))
}

/// All invariant monomials of the given degree, in canonical order.
pub fn invariant_monomials(r: usize, n: usize, degree: u32, group: &SymmetryGroup) -> Result<Vec<ExponentVector>> {
    if (group.r, group.n) != (r, n) {
        return Err(Error::Context(format!("group is for G({},{}), not G({r},{n})", group.r, group.n)));
    }
    if degree == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    let mut out = Vec::new();
    for m in monomials_of_degree(group.nvars(), degree) {
        if is_invariant(&m, group)? {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::PluckerVars;

    fn mono(vars: &PluckerVars, factors: &[(&[usize], i32)]) -> ExponentVector {
        let mut e = ExponentVector::zeros(vars.nvars());
        for (idx, k) in factors {
            e[vars.var_of(idx).unwrap()] += k;
        }
        e
    }

    #[test]
    fn h42() {
        let g = build_group(4, 2).unwrap();
        assert_eq!(g.order_tilde, 128);
        assert_eq!(g.order, 32);
        assert_eq!(g.structure(), "(Z/4)^2 x Z/2");
        assert_eq!(g.tilde_structure(), "(Z/4)^3 x Z/2");
    }

    #[test]
    fn h52() {
        let g = build_group(5, 2).unwrap();
        assert_eq!((g.order_tilde, g.order), (625, 125));
        assert_eq!(g.structure(), "(Z/5)^3");
        assert_eq!(g.tilde_structure(), "(Z/5)^4");
    }

    #[test]
    fn h31_matches_enumeration() {
        let g = build_group(3, 1).unwrap();
        let brute = (0..27u64).filter(|k| (k % 3 + k / 3 % 3 + k / 9) % 3 == 0).count();
        assert_eq!(g.order_tilde as usize, brute);
        assert_eq!(g.order_tilde, 9);
        assert_eq!(g.order, 3);
    }

    #[test]
    fn generators_lie_in_l() {
        for (n, r) in [(4, 2), (5, 2), (6, 3), (6, 2), (7, 3)] {
            let g = build_group(n, r).unwrap();
            assert!(g.generators.iter().all(|a| g.contains(a)));
            assert!(g.contains(&g.scalar));
        }
    }

    #[test]
    fn characters() {
        let vars = PluckerVars::new(2, 4).unwrap();
        let g = build_group(4, 2).unwrap();
        let frozen = mono(&vars, &[(&[1, 2], 1), (&[2, 3], 1), (&[3, 4], 1), (&[1, 4], 1)]);
        assert_eq!(character(&frozen, &g).unwrap().values, vec![2, 2, 2, 2]);
        let p13_4 = mono(&vars, &[(&[1, 3], 4)]);
        assert_eq!(character(&p13_4, &g).unwrap().values, vec![0, 0, 0, 0]);
        let m = mono(&vars, &[(&[1, 2], 3), (&[3, 4], 1)]);
        assert_eq!(character(&m, &g).unwrap().values, vec![3, 3, 1, 1]);
    }

    #[test]
    fn invariance_examples() {
        let vars = PluckerVars::new(2, 4).unwrap();
        let g = build_group(4, 2).unwrap();
        let frozen = mono(&vars, &[(&[1, 2], 1), (&[2, 3], 1), (&[3, 4], 1), (&[1, 4], 1)]);
        assert!(is_invariant(&frozen, &g).unwrap());
        let m = mono(&vars, &[(&[1, 2], 3), (&[3, 4], 1)]);
        assert!(!is_invariant(&m, &g).unwrap());
        // the witness (1,1,0,0) ∈ L pairs to 2 mod 4
        let chi = character(&m, &g).unwrap();
        assert!(g.contains(&[1, 1, 0, 0]));
        assert_eq!(chi.pair(&[1, 1, 0, 0]), 2);
        let sq = mono(&vars, &[(&[1, 3], 2), (&[2, 4], 2)]);
        assert!(is_invariant(&sq, &g).unwrap());
    }

    #[test]
    fn no_linear_invariants() {
        let g = build_group(4, 2).unwrap();
        assert!(invariant_monomials(2, 4, 1, &g).unwrap().is_empty());
        assert!(invariant_monomials(2, 5, 1, &g).is_err());
        assert!(invariant_monomials(2, 4, 0, &g).is_err());
    }

    #[test]
    fn character_length_is_checked() {
        let g = build_group(4, 2).unwrap();
        assert!(character(&ExponentVector::zeros(5), &g).is_err());
    }
}
