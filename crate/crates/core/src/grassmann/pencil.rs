use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{enumerate_arrow_partitions, frozen_variables, partition_to_index, PluckerVars};
use crate::error::{Error, Result};
use crate::exact::{sort_canonical, ExponentVector, Field, Scalar, SparsePolynomial};

/// Which deforming terms accompany the n-th powers of the arrow variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "arrow")]
    Arrow,
    #[serde(rename = "squares")]
    Squares,
    #[serde(rename = "quads")]
    Quads,
    #[serde(rename = "squares+quads")]
    SquaresQuads,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Arrow, Variant::Squares, Variant::Quads, Variant::SquaresQuads];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Arrow => "arrow",
            Variant::Squares => "squares",
            Variant::Quads => "quads",
            Variant::SquaresQuads => "squares+quads",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown pencil variant {s:?}")))
    }
}

/// `t · (Σ deforming monomials) + (product of frozen variables)`, with
/// monomials as exponent vectors over the Plücker variables of G(r,n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilSpec {
    pub r: usize,
    pub n: usize,
    pub variant: Variant,
    pub monomials: Vec<ExponentVector>,
    pub frozen: ExponentVector,
}

const SQUARES: [[[usize; 2]; 2]; 3] = [[[1, 4], [2, 3]], [[1, 3], [2, 4]], [[1, 2], [3, 4]]];
const QUADS: [[[usize; 2]; 4]; 2] = [[[1, 3], [1, 4], [2, 3], [2, 4]], [[1, 2], [1, 3], [2, 4], [3, 4]]];

pub fn build_pencil(r: usize, n: usize, variant: Variant) -> Result<PencilSpec> {
    let vars = PluckerVars::new(r, n)?;
    if variant != Variant::Arrow && (r, n) != (2, 4) {
        return Err(Error::Domain(format!("variant {variant} is only defined on G(2,4)")));
    }
    let nv = vars.nvars();
    let mut monomials: Vec<ExponentVector> = enumerate_arrow_partitions(r, n)?
        .iter()
        .map(|p| {
            let idx = partition_to_index(p, r, n).expect("arrow partitions fit");
            let mut e = ExponentVector::zeros(nv);
            e[vars.var(&idx).expect("valid index")] = n as i32;
            e
        })
        .collect();
    let product = |factors: &[[usize; 2]]| {
        let mut e = ExponentVector::zeros(nv);
        for f in factors {
            e[vars.var_of(f).expect("G(2,4) index")] += 1;
        }
        e
    };
    if matches!(variant, Variant::Squares | Variant::SquaresQuads) {
        for sq in SQUARES {
            monomials.push(product(&[sq[0], sq[0], sq[1], sq[1]]));
        }
    }
    if matches!(variant, Variant::Quads | Variant::SquaresQuads) {
        for q in QUADS {
            monomials.push(product(&q));
        }
    }
    sort_canonical(&mut monomials);
    let mut frozen = ExponentVector::zeros(nv);
    for idx in frozen_variables(r, n)? {
        frozen[vars.var(&idx).expect("valid index")] += 1;
    }
    let spec = PencilSpec { r, n, variant, monomials, frozen };
    spec.validate()?;
    Ok(spec)
}

impl PencilSpec {
    pub fn vars(&self) -> Result<PluckerVars> {
        PluckerVars::new(self.r, self.n)
    }

    /// Check the structural invariants (used after deserialization).
    pub fn validate(&self) -> Result<()> {
        let vars = self.vars()?;
        let nv = vars.nvars();
        let degree = self.n as i32;
        for m in self.monomials.iter().chain(std::iter::once(&self.frozen)) {
            if m.len() != nv || !m.is_nonnegative() || m.degree() != degree {
                return Err(Error::Domain(format!("monomial {:?} is not of degree {degree}", m.as_slice())));
            }
        }
        let mut sorted = self.monomials.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("deforming monomials repeat".into()));
        }
        let mut expected = ExponentVector::zeros(nv);
        for idx in frozen_variables(self.r, self.n)? {
            expected[vars.var(&idx).expect("valid index")] += 1;
        }
        if expected != self.frozen {
            return Err(Error::Domain("frozen monomial is not the product of the frozen variables".into()));
        }
        Ok(())
    }

    pub fn deforming_sum(&self, field: Field) -> SparsePolynomial {
        let nv = self.frozen.len();
        let mut s = SparsePolynomial::zero(nv, field);
        for m in &self.monomials {
            s.add_term(m.clone(), &field.one());
        }
        s
    }

    pub fn frozen_product(&self, field: Field) -> SparsePolynomial {
        SparsePolynomial::monomial(self.frozen.len(), field, self.frozen.clone(), field.one())
    }
}

/// `t · (Σ deforming) + frozen product`, over the field `t` belongs to.
pub fn evaluate_pencil(spec: &PencilSpec, field: Field, t: &Scalar) -> Result<SparsePolynomial> {
    field.check(t)?;
    spec.deforming_sum(field).scale(t).add(&spec.frozen_product(field))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_g24() {
        let spec = build_pencil(2, 4, Variant::Arrow).unwrap();
        assert_eq!(spec.monomials.len(), 6);
        assert!(spec.monomials.iter().all(|m| m.as_slice().iter().filter(|&&e| e == 4).count() == 1));
        assert_eq!(spec.frozen.as_slice(), &[1, 0, 1, 1, 0, 1]);
    }

    #[test]
    fn arrow_g25() {
        let spec = build_pencil(2, 5, Variant::Arrow).unwrap();
        assert_eq!(spec.monomials.len(), 9);
        let vars = spec.vars().unwrap();
        let p25 = vars.var_of(&[2, 5]).unwrap();
        assert!(spec.monomials.iter().all(|m| m[p25] == 0));
        let names = vars.names();
        let frozen: Vec<&str> =
            (0..10).filter(|&v| spec.frozen[v] == 1).map(|v| names[v].as_str()).collect();
        assert_eq!(frozen, ["p12", "p15", "p23", "p34", "p45"]);
    }

    #[test]
    fn variant_sizes() {
        let sizes: Vec<usize> =
            Variant::ALL.iter().map(|&v| build_pencil(2, 4, v).unwrap().monomials.len()).collect();
        assert_eq!(sizes, [6, 9, 8, 11]);
        assert!(build_pencil(2, 5, Variant::Squares).is_err());
    }

    #[test]
    fn evaluation() {
        let spec = build_pencil(2, 4, Variant::Arrow).unwrap();
        let q = Field::Rationals;
        let f0 = evaluate_pencil(&spec, q, &q.zero()).unwrap();
        assert_eq!(f0, spec.frozen_product(q));
        let f5 = Field::prime(5).unwrap();
        let f1 = evaluate_pencil(&spec, f5, &f5.one()).unwrap();
        assert_eq!(f1.len(), 7);
        assert!(f1.terms().all(|(_, c)| c.is_one()));
        let sq = build_pencil(2, 4, Variant::Squares).unwrap();
        assert_eq!(evaluate_pencil(&sq, q, &q.one()).unwrap().len(), 10);
    }

    #[test]
    fn variant_parsing() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("cubes".parse::<Variant>().is_err());
    }

    #[test]
    fn validation_catches_bad_frozen() {
        let mut spec = build_pencil(2, 4, Variant::Arrow).unwrap();
        spec.frozen[0] = 2;
        spec.frozen[2] = 0;
        assert!(spec.validate().is_err());
        let mut spec = build_pencil(2, 4, Variant::Arrow).unwrap();
        spec.monomials.push(spec.monomials[0].clone());
        assert!(spec.validate().is_err());
    }
}
