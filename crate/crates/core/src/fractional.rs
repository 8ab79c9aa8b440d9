//! Fractional hom(Y)-tilings: verification, the LP relaxation, and the
//! embeddings of integral tilings (directly and through blow-ups).
//!
//! A fractional hom(Y)-tiling assigns a weight in [0,1] to every incident
//! (vertex, edge) pair so that each vertex carries total load at most 1 and
//! each edge's three values, sorted a <= b <= c, satisfy c <= 3a - b. The
//! weight w(h) is the sum of all values and h_min the least nonzero value.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{BlowUp, Hypergraph, HypergraphError, Pattern};
use crate::simplex::{self, Constraint};
use crate::tiling::{verify_tiling, Tiling, TilingViolation};

#[derive(Debug, Error)]
pub enum FractionalError {
    #[error("entry ({v}, {e}) is out of range")]
    BadIndex { v: usize, e: usize },
    #[error("entry ({v}, {e}) has weight {w} outside [0,1]")]
    BadWeight { v: usize, e: usize, w: String },
    #[error("property (1) violated: vertex {v} is not incident to edge {e}")]
    NotIncident { v: usize, e: usize },
    #[error("property (2) violated: vertex {v} carries load {load} > 1")]
    Overloaded { v: usize, load: String },
    #[error("property (3) violated on edge {e}: sorted values ({a}, {b}, {c}) fail c <= 3a - b")]
    ChainViolated { e: usize, a: String, b: String, c: String },
    #[error("only 3-graphs are supported, got k = {0}")]
    NotThreeUniform(usize),
    #[error("input tiling is invalid: {0}")]
    BadTiling(#[from] TilingViolation),
    #[error(transparent)]
    Graph(#[from] HypergraphError),
    #[error("blow-up does not match the base graph: {0}")]
    BadBlowUp(String),
    #[error("lp solve failed: {0}")]
    Lp(#[from] simplex::SimplexError),
}

/// Sparse nonzero weights of a fractional hom(Y)-tiling, keyed by
/// (vertex, edge index).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FractionalTiling {
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl FractionalTiling {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds weight to a pair; zero results are dropped so the support stays
    /// exactly the nonzero pairs.
    pub fn add(&mut self, v: usize, e: usize, w: BigRational) {
        if w.is_zero() {
            return;
        }
        let slot = self.entries.entry((v, e)).or_insert_with(BigRational::zero);
        *slot += w;
        if slot.is_zero() {
            self.entries.remove(&(v, e));
        }
    }

    pub fn get(&self, v: usize, e: usize) -> BigRational {
        self.entries.get(&(v, e)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.entries.iter()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    /// Total weight w(h).
    pub fn weight(&self) -> BigRational {
        self.entries.values().fold(BigRational::zero(), |acc, w| acc + w)
    }

    /// Least nonzero value, None for the zero function.
    pub fn h_min(&self) -> Option<BigRational> {
        self.entries.values().min().cloned()
    }

    /// Per-vertex load h(v).
    pub fn load(&self, v: usize) -> BigRational {
        self.entries
            .range((v, 0)..(v + 1, 0))
            .fold(BigRational::zero(), |acc, (_, w)| acc + w)
    }
}

/// Wire format: {entries: [[v, e, "p/q"], ...], w: "p/q", h_min: "p/q"|null}.
#[derive(Debug, Serialize, Deserialize)]
pub struct FractionalJson {
    pub entries: Vec<(usize, usize, String)>,
    pub w: String,
    pub h_min: Option<String>,
}

impl From<&FractionalTiling> for FractionalJson {
    fn from(h: &FractionalTiling) -> Self {
        FractionalJson {
            entries: h.entries().map(|(&(v, e), w)| (v, e, w.to_string())).collect(),
            w: h.weight().to_string(),
            h_min: h.h_min().map(|m| m.to_string()),
        }
    }
}

/// What a successful verification reports.
#[derive(Debug, Clone)]
pub struct FractionalReport {
    pub weight: BigRational,
    pub h_min: Option<BigRational>,
}

/// Checks properties (1)-(3) exactly; the first violation is returned with
/// the offending pair.
pub fn verify_fractional(
    h: &Hypergraph,
    f: &FractionalTiling,
) -> Result<FractionalReport, FractionalError> {
    if h.k() != 3 {
        return Err(FractionalError::NotThreeUniform(h.k()));
    }
    for (&(v, e), w) in f.entries() {
        if v >= h.n() || e >= h.edge_count() {
            return Err(FractionalError::BadIndex { v, e });
        }
        if w.is_negative() || w > &BigRational::one() {
            return Err(FractionalError::BadWeight { v, e, w: w.to_string() });
        }
        if !h.edge(e).contains(&v) {
            return Err(FractionalError::NotIncident { v, e });
        }
    }
    for v in 0..h.n() {
        let load = f.load(v);
        if load > BigRational::one() {
            return Err(FractionalError::Overloaded { v, load: load.to_string() });
        }
    }
    for e in 0..h.edge_count() {
        let mut vals: Vec<BigRational> = h.edge(e).iter().map(|&v| f.get(v, e)).collect();
        vals.sort();
        let (a, b, c) = (&vals[0], &vals[1], &vals[2]);
        if c > &(a * BigRational::from(BigInt::from(3)) - b) {
            return Err(FractionalError::ChainViolated {
                e,
                a: a.to_string(),
                b: b.to_string(),
                c: c.to_string(),
            });
        }
    }
    Ok(FractionalReport { weight: f.weight(), h_min: f.h_min() })
}

/// The sorted-chain form of property (3) for one value triple: some labeling
/// u, v, w has h(u) <= h(v) <= h(w) <= 3h(u) - h(v).
pub fn chain_feasible(values: &[BigRational; 3]) -> bool {
    let mut vals = values.clone();
    vals.sort();
    vals[2] <= &vals[0] * BigRational::from(BigInt::from(3)) - &vals[1]
}

/// The linearized form: the sum of the triple is at most 4 times each value.
/// Equivalent to [`chain_feasible`]; the equivalence is itself under test.
pub fn linearized_feasible(values: &[BigRational; 3]) -> bool {
    let sum = &values[0] + &values[1] + &values[2];
    values.iter().all(|v| sum <= v * BigRational::from(BigInt::from(4)))
}

/// Samples random rational triples in [0,1]^3 (denominators up to 24) and
/// counts how often the chain form and the linearized form of property (3)
/// agree. Returns (agreements, disagreements); the forms are algebraically
/// equivalent, so any disagreement is a bug.
pub fn linearization_agreement(samples: usize, seed: u64) -> (usize, usize) {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0usize;
    let mut disagree = 0usize;
    for _ in 0..samples {
        let mut triple: [BigRational; 3] =
            [BigRational::zero(), BigRational::zero(), BigRational::zero()];
        for slot in &mut triple {
            let q: i64 = rng.gen_range(1..=24);
            let p: i64 = rng.gen_range(0..=q);
            *slot = BigRational::new(p.into(), q.into());
        }
        if chain_feasible(&triple) == linearized_feasible(&triple) {
            agree += 1;
        } else {
            disagree += 1;
        }
    }
    (agree, disagree)
}

/// Embeds an integral Y_{3,2}-tiling: each edge of a copy puts weight 1 on
/// its private vertex and 1/2 on the two shared vertices, so every copy
/// contributes 4 and h_min is 1/2.
pub fn from_integral(h: &Hypergraph, tiling: &Tiling) -> Result<FractionalTiling, FractionalError> {
    if h.k() != 3 {
        return Err(FractionalError::NotThreeUniform(h.k()));
    }
    verify_tiling(h, Pattern::y32(), tiling)?;
    let mut f = FractionalTiling::new();
    let half = BigRational::new(1.into(), 2.into());
    for copy in &tiling.copies {
        for &e in &[copy.edge_a, copy.edge_b] {
            let other = if e == copy.edge_a { copy.edge_b } else { copy.edge_a };
            for &v in h.edge(e) {
                let shared = h.edge(other).contains(&v);
                let w = if shared { half.clone() } else { BigRational::one() };
                f.add(v, e, w);
            }
        }
    }
    Ok(f)
}

/// Aggregates a Y-tiling of the 4^j blow-up of `r` down to a fractional
/// hom(Y)-tiling on `r` itself.
///
/// Per copy and per edge of the copy, the private clone receives 1/4^j and
/// the two shared clones 1/(2*4^j), all credited to the original edge the
/// clone edge projects to. The resulting weight is 2/4^j per blow-up edge
/// used, i.e. 4|tiling|/4^j in total. The least nonzero value is at least
/// 1/(2*4^j); it reaches 1/4^j whenever both edges of each copy project to
/// the same edge of `r` (at j = 0 the two projections are always distinct
/// edges, which is the plain integral embedding with h_min = 1/2).
pub fn from_blowup_tiling(
    r: &Hypergraph,
    j: u32,
    blowup: &BlowUp,
    tiling: &Tiling,
) -> Result<FractionalTiling, FractionalError> {
    if r.k() != 3 {
        return Err(FractionalError::NotThreeUniform(r.k()));
    }
    let factor = 4usize.pow(j);
    if blowup.graph.n() != r.n() * factor || blowup.clone_of.len() != blowup.graph.n() {
        return Err(FractionalError::BadBlowUp(format!(
            "expected {} vertices for the 4^{} blow-up of an {}-vertex graph, got {}",
            r.n() * factor,
            j,
            r.n(),
            blowup.graph.n()
        )));
    }
    verify_tiling(&blowup.graph, Pattern::y32(), tiling)?;

    let project = |e: usize| -> Result<usize, FractionalError> {
        let originals: Vec<usize> =
            blowup.graph.edge(e).iter().map(|&v| blowup.clone_of[v]).collect();
        r.edge_index(&originals).ok_or_else(|| {
            FractionalError::BadBlowUp(format!(
                "blow-up edge {e} projects to {originals:?}, not an edge of the base graph"
            ))
        })
    };

    let unit = BigRational::new(1.into(), BigInt::from(factor));
    let half_unit = &unit / BigRational::from(BigInt::from(2));
    let mut f = FractionalTiling::new();
    for copy in &tiling.copies {
        for &e in &[copy.edge_a, copy.edge_b] {
            let original = project(e)?;
            let other = if e == copy.edge_a { copy.edge_b } else { copy.edge_a };
            for &clone in blowup.graph.edge(e) {
                let shared = blowup.graph.edge(other).contains(&clone);
                let w = if shared { half_unit.clone() } else { unit.clone() };
                f.add(blowup.clone_of[clone], original, w);
            }
        }
    }
    Ok(f)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LpStats {
    pub variables: usize,
    pub constraints: usize,
    pub pivots: u64,
}

/// Maximizes w(h) over fractional hom(Y)-tilings of `h` by exact simplex.
///
/// Variables are the incident pairs (three per edge). Constraints: per
/// vertex, the load is at most 1; per edge and each of its vertices u,
/// h(x,e) + h(y,e) + h(z,e) <= 4 h(u,e), which linearizes the sorted-chain
/// property (3).
pub fn lp_max_weight(
    h: &Hypergraph,
) -> Result<(FractionalTiling, BigRational, LpStats), FractionalError> {
    if h.k() != 3 {
        return Err(FractionalError::NotThreeUniform(h.k()));
    }
    let m = h.edge_count();
    let nvars = 3 * m;
    if m == 0 {
        return Ok((
            FractionalTiling::new(),
            BigRational::zero(),
            LpStats { variables: 0, constraints: 0, pivots: 0 },
        ));
    }
    let one = BigRational::one();
    let four = BigRational::from(BigInt::from(4));
    let mut constraints = Vec::new();
    // vertex loads
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
    for e in 0..m {
        for (slot, &v) in h.edge(e).iter().enumerate() {
            incident[v].push(3 * e + slot);
        }
    }
    for v in 0..h.n() {
        if incident[v].is_empty() {
            continue;
        }
        constraints.push(Constraint {
            coeffs: incident[v].iter().map(|&var| (var, one.clone())).collect(),
            rhs: one.clone(),
        });
    }
    // per-edge linearized chain: sum of the triple <= 4 * each value
    for e in 0..m {
        for u in 0..3 {
            let mut coeffs = Vec::with_capacity(3);
            for slot in 0..3 {
                let c = if slot == u { &one - &four } else { one.clone() };
                coeffs.push((3 * e + slot, c));
            }
            constraints.push(Constraint { coeffs, rhs: BigRational::zero() });
        }
    }
    let objective = vec![one.clone(); nvars];
    let sol = simplex::maximize(&objective, &constraints)?;
    let mut f = FractionalTiling::new();
    for e in 0..m {
        for (slot, &v) in h.edge(e).iter().enumerate() {
            let w = sol.values[3 * e + slot].clone();
            f.add(v, e, w);
        }
    }
    let stats = LpStats { variables: nvars, constraints: constraints.len(), pivots: sol.pivots };
    Ok((f, sol.objective, stats))
}
