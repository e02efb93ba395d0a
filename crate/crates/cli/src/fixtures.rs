//! Expected values shipped with the binary, used by `--check`.

use std::collections::BTreeMap;

use arrowpencil::grassmann::Variant;
use serde::Deserialize;

const TABLE_P5: &str = include_str!("../fixtures/table_p5.csv");
const TABLE_P7: &str = include_str!("../fixtures/table_p7.csv");
const TABLE_P11: &str = include_str!("../fixtures/table_p11.csv");
const DIMENSIONS: &str = include_str!("../fixtures/dimensions.json");

/// Expected dimensions for one `hodge` experiment.
#[derive(Clone, Debug, Deserialize)]
pub struct HodgeExpectation {
    pub rn: [usize; 2],
    pub variant: Variant,
    pub degree: u32,
    pub quotient_dim: Option<usize>,
    pub invariant_dim: Option<usize>,
    /// Complete-intersection pieces keyed by `"a,b"`.
    #[serde(default)]
    pub ci: BTreeMap<String, usize>,
}

#[derive(Debug, Deserialize)]
struct Dimensions {
    hodge: Vec<HodgeExpectation>,
    search_hits: BTreeMap<String, Vec<[u64; 2]>>,
}

fn dimensions() -> Dimensions {
    serde_json::from_str(DIMENSIONS).expect("dimensions fixture is valid JSON")
}

/// The expected CSV for the arrow pencil on G(2,4) at `p`, if shipped.
pub fn table(rn: [usize; 2], variant: Variant, p: u64) -> Option<&'static str> {
    if rn != [2, 4] || variant != Variant::Arrow {
        return None;
    }
    match p {
        5 => Some(TABLE_P5),
        7 => Some(TABLE_P7),
        11 => Some(TABLE_P11),
        _ => None,
    }
}

pub fn hodge(rn: [usize; 2], variant: Variant, degree: u32) -> Option<HodgeExpectation> {
    dimensions().hodge.into_iter().find(|e| e.rn == rn && e.variant == variant && e.degree == degree)
}

pub fn search_hits(p: u64) -> Option<Vec<(u64, u64)>> {
    dimensions().search_hits.get(&p.to_string()).map(|hits| hits.iter().map(|&[a, b]| (a, b)).collect())
}
