//! JSON renderings of the constructions: set-family windows, Cantor trees
//! and the generators of the grid-indexed prime product.

use fixedbitset::FixedBitSet;
use serde_json::{json, Value as Json};

use prodseq_core::analysis::AnalysisConfig;
use prodseq_core::construct::families::surjection;
use prodseq_core::construct::{
    cantor_scheme, level_radius, CantorNode, CantorTree, FamilyPair, IndependentFamily, KpWindow,
};
use prodseq_core::sequences::CircleGeometric;
use prodseq_core::Value;

use crate::json::{rational_to_json, value_to_json};
use crate::LabError;

/// A window as a string of `0`/`1`, index 0 first.
pub fn bitset_to_json(b: &FixedBitSet) -> Json {
    json!((0..b.len()).map(|i| if b.contains(i) { '1' } else { '0' }).collect::<String>())
}

fn family_name(kind: IndependentFamily) -> &'static str {
    match kind {
        IndependentFamily::BinaryDigits => "binary-digits",
        IndependentFamily::PrimeResidues => "prime-residues",
    }
}

pub fn families_json(count: usize, window: usize, kind: IndependentFamily) -> Json {
    let pair = FamilyPair::new(count, window, kind);
    json!({
        "construction": "families",
        "count": count,
        "window": window,
        "t-family": family_name(kind),
        "surjection": (0..window.min(64)).map(|k| { let (a, b) = surjection(k); json!([a, b]) }).collect::<Vec<_>>(),
        "s": pair.s.iter().map(bitset_to_json).collect::<Vec<_>>(),
        "t": pair.t.iter().map(bitset_to_json).collect::<Vec<_>>(),
    })
}

fn node_json(tree: &CantorTree, level: usize, idx: usize) -> Json {
    let node: &CantorNode = &tree.levels[level][idx];
    let children: Vec<Json> = if level + 1 < tree.levels.len() {
        (0..2).map(|b| node_json(tree, level + 1, 2 * idx + b)).collect()
    } else {
        Vec::new()
    };
    json!({
        "path": node.path,
        "center": value_to_json(&node.center),
        "radius": node.radius.as_ref().map(rational_to_json),
        "mu": node.mu,
        "children": children,
    })
}

pub fn cantor_tree_json(tree: &CantorTree) -> Json {
    let c = &tree.checks;
    json!({
        "depth": tree.depth(),
        "checks": {
            "products": c.products,
            "siblings-disjoint": c.siblings_disjoint,
            "injections-extend": c.injections_extend,
            "nested": c.nested,
            "diameters": c.diameters,
            "leaves-distinct": c.leaves_distinct,
        },
        "level-radius": (0..=tree.depth()).map(|n| level_radius(tree, n).as_ref().map(rational_to_json)).collect::<Vec<_>>(),
        "root": node_json(tree, 0, 0),
    })
}

/// The scheme for `a_n = 3^(-(n+1))` on the circle.
pub fn circle_cantor_tree(depth: usize, seed: u64) -> Result<CantorTree, LabError> {
    let seq = CircleGeometric::new(1, 3)?;
    let cfg =
        AnalysisConfig::new(AnalysisConfig::power_tolerance(2, 10), (4 * depth).max(64)).with_trials(4).with_seed(seed);
    Ok(cantor_scheme(&seq, depth, &cfg)?)
}

/// `a` as a grid of coordinates `(i, j)`.
pub fn grid_json(w: &KpWindow, v: &Value) -> Json {
    let c = v.as_product().expect("window values are products");
    let d = w.depth();
    json!((0..d).map(|i| (0..d).map(|j| value_to_json(&c[w.coord(i, j)])).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn hp_json(depth: usize) -> Result<Json, LabError> {
    let w = KpWindow::new(depth)?;
    let primes: Vec<Vec<u64>> = (0..depth).map(|i| (0..depth).map(|j| w.prime(i, j)).collect()).collect();
    let gens: Vec<Json> = (0..w.active_terms()).map(|n| json!({"n": n, "value": grid_json(&w, &w.a(n))})).collect();
    Ok(json!({
        "construction": "hp",
        "depth": depth,
        "t-family": family_name(IndependentFamily::default()),
        "rows": (0..depth).map(|i| { let (a, b) = surjection(i); json!([a, b]) }).collect::<Vec<_>>(),
        "primes": primes,
        "generators": gens,
    }))
}
