//! Synthetic workloads timing the dual-side computation against the
//! primal-side scan.

use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use crate::fixpoint::oracle::scan_ideal_fixpoints;
use crate::fixpoint::{FixpointError, QuotientPoset};
use crate::poset::{MonotoneMap, Poset};

/// Default cap on materialized ideals for the primal-side scan.
pub const DEFAULT_PRIMAL_BOUND: usize = 1 << 22;

/// Default cap on ideals enumerated when counting on the dual side.
pub const DEFAULT_STREAM_CAP: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// `n` elements in a single chain.
    Chain,
    /// `n` pairwise incomparable elements.
    Antichain,
    /// The product of two `n`-element chains (`n²` elements).
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Identity,
    /// Constant map onto the first element.
    Collapse,
    /// An order automorphism: pairwise transpositions on an antichain, the
    /// transpose on a grid, the identity on a chain (its only automorphism).
    Permutation,
}

#[derive(Debug, Clone, Copy)]
pub struct BenchOptions {
    pub shape: Shape,
    pub n: usize,
    pub map_kind: MapKind,
    pub primal_bound: usize,
    pub stream_cap: usize,
}

impl BenchOptions {
    pub fn new(shape: Shape, n: usize, map_kind: MapKind) -> BenchOptions {
        BenchOptions {
            shape,
            n,
            map_kind,
            primal_bound: DEFAULT_PRIMAL_BOUND,
            stream_cap: DEFAULT_STREAM_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Streaming,
    ClosedForm,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimalReport {
    /// `agree`, `disagree`, or `skipped (primal side infeasible)`.
    pub status: String,
    pub count: Option<String>,
    pub ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub shape: Shape,
    pub n: usize,
    pub map_kind: MapKind,
    pub elements: usize,
    pub classes: usize,
    pub quotient_ms: f64,
    pub components_ms: f64,
    pub quotients_agree: bool,
    pub dual_count: Option<String>,
    pub count_method: CountMethod,
    pub dual_count_ms: f64,
    pub primal: PrimalReport,
}

pub const PRIMAL_SKIPPED: &str = "skipped (primal side infeasible)";

fn padded(prefix: &str, i: usize, width: usize) -> String {
    format!("{prefix}{i:0width$}")
}

fn width_for(n: usize) -> usize {
    n.saturating_sub(1).to_string().len()
}

pub fn generate(shape: Shape, n: usize) -> Poset {
    let w = width_for(n);
    let result = match shape {
        Shape::Chain => Poset::from_index_pairs(
            (0..n).map(|i| padded("c", i, w)).collect(),
            (1..n).map(|i| (i - 1, i)),
        ),
        Shape::Antichain => {
            Poset::from_index_pairs((0..n).map(|i| padded("a", i, w)).collect(), std::iter::empty())
        }
        Shape::Grid => {
            let names = (0..n * n)
                .map(|k| format!("g{:0w$}_{:0w$}", k / n, k % n))
                .collect();
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i + 1 < n {
                        pairs.push((i * n + j, (i + 1) * n + j));
                    }
                    if j + 1 < n {
                        pairs.push((i * n + j, i * n + j + 1));
                    }
                }
            }
            Poset::from_index_pairs(names, pairs)
        }
    };
    result.expect("generated shapes are partial orders")
}

/// The map of the given kind on a poset produced by [`generate`].
pub fn map_for(shape: Shape, kind: MapKind, poset: &Poset, n: usize) -> MonotoneMap {
    let len = poset.len();
    let table: Vec<usize> = match (kind, shape) {
        (MapKind::Identity, _) | (MapKind::Permutation, Shape::Chain) => (0..len).collect(),
        (MapKind::Collapse, _) => vec![0; len],
        (MapKind::Permutation, Shape::Antichain) => (0..len)
            .map(|i| if i % 2 == 0 { (i + 1).min(len - 1) } else { i - 1 })
            .collect(),
        // names are zero-padded, so index k is row k / n, column k % n
        (MapKind::Permutation, Shape::Grid) => (0..len).map(|k| (k % n) * n + k / n).collect(),
    };
    MonotoneMap::from_indices(poset, poset, table).expect("generated maps are monotone")
}

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn run(opts: &BenchOptions) -> Result<BenchReport, FixpointError> {
    let poset = generate(opts.shape, opts.n);
    let phi = map_for(opts.shape, opts.map_kind, &poset, opts.n);

    let t = Instant::now();
    let quotient = QuotientPoset::coequalizer(&phi)?;
    let quotient_ms = ms_since(t);

    let t = Instant::now();
    let components = QuotientPoset::from_components(&phi);
    let components_ms = ms_since(t);
    let quotients_agree = components.as_ref().map(|c| *c == quotient).unwrap_or(false);

    let t = Instant::now();
    let classes = quotient.class_order();
    let (dual_count, count_method) = if classes.is_antichain() && classes.len() > 24 {
        (
            Some(BigUint::from(1u8) << classes.len()),
            CountMethod::ClosedForm,
        )
    } else {
        let seen = classes.ideals().take(opts.stream_cap.saturating_add(1)).count();
        if seen > opts.stream_cap {
            (None, CountMethod::Skipped)
        } else {
            (Some(BigUint::from(seen)), CountMethod::Streaming)
        }
    };
    let dual_count_ms = ms_since(t);

    let primal = primal_scan(&poset, &phi, opts.primal_bound, dual_count.as_ref())?;

    Ok(BenchReport {
        shape: opts.shape,
        n: opts.n,
        map_kind: opts.map_kind,
        elements: poset.len(),
        classes: quotient.len(),
        quotient_ms,
        components_ms,
        quotients_agree,
        dual_count: dual_count.map(|c| c.to_string()),
        count_method,
        dual_count_ms,
        primal,
    })
}

fn primal_scan(
    poset: &Poset,
    phi: &MonotoneMap,
    bound: usize,
    dual_count: Option<&BigUint>,
) -> Result<PrimalReport, FixpointError> {
    let skipped = PrimalReport {
        status: PRIMAL_SKIPPED.to_owned(),
        count: None,
        ms: None,
    };
    // every set of minimal elements is an ideal, so 2^minimal is a lower
    // bound on |O(P)|
    let minimal = poset.minimal_elements().len();
    if minimal >= usize::BITS as usize - 1 || (1usize << minimal) > bound {
        return Ok(skipped);
    }
    let t = Instant::now();
    let Some(fixed) = scan_ideal_fixpoints(phi, bound)? else {
        return Ok(skipped);
    };
    let ms = ms_since(t);
    let count = BigUint::from(fixed.len());
    let status = match dual_count {
        Some(d) if *d == count => "agree",
        Some(_) => "disagree",
        None => "dual side skipped",
    };
    Ok(PrimalReport {
        status: status.to_owned(),
        count: Some(count.to_string()),
        ms: Some(ms),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_identity_counts_n_plus_one() {
        let r = run(&BenchOptions::new(Shape::Chain, 50, MapKind::Identity)).unwrap();
        assert_eq!(r.dual_count.as_deref(), Some("51"));
        assert_eq!(r.primal.status, "agree");
        assert!(r.quotients_agree);
    }

    #[test]
    fn antichain_permutation_pairs_up() {
        let r = run(&BenchOptions::new(Shape::Antichain, 10, MapKind::Permutation)).unwrap();
        assert_eq!(r.classes, 5);
        assert_eq!(r.dual_count.as_deref(), Some("32"));
        assert_eq!(r.primal.count.as_deref(), Some("32"));
    }

    #[test]
    fn grid_maps() {
        let r = run(&BenchOptions::new(Shape::Grid, 3, MapKind::Permutation)).unwrap();
        assert_eq!(r.elements, 9);
        // transposition fixes the diagonal and pairs off the rest
        assert_eq!(r.classes, 6);
        assert_eq!(r.primal.status, "agree");
        let r = run(&BenchOptions::new(Shape::Grid, 3, MapKind::Collapse)).unwrap();
        assert_eq!(r.classes, 1);
        assert_eq!(r.dual_count.as_deref(), Some("2"));
    }

    #[test]
    fn odd_antichain_permutation_fixes_the_last_element() {
        let p = generate(Shape::Antichain, 5);
        let phi = map_for(Shape::Antichain, MapKind::Permutation, &p, 5);
        assert_eq!(phi.table(), &[1, 0, 3, 2, 4]);
    }
}
