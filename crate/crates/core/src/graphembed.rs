//! Basic existential formulas as edge-labelled graphs, and exact embeddings
//! of such graphs into `Qⁿ`.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactfield::FieldElem;
use crate::minkowski::{rel, Point, RelKind, RelSet};
use crate::sampling::{self, trial_rng, TrialRng};
use crate::transforms::swap_tx;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("no embedding found within budget (not a proof that none exists)")]
    NotFound,
    #[error("could not move q to a {0} pair without breaking an edge")]
    NotAchieved(RelKind),
    #[error("{from} is not contained in {to}")]
    NotASubset { from: RelSet, to: RelSet },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub a: String,
    pub b: String,
    pub label: RelSet,
}

/// A simple undirected graph with relation-set labels. The free pair is
/// `p`, `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(vertices: &[&str]) -> LabeledGraph {
        LabeledGraph { vertices: vertices.iter().map(|v| v.to_string()).collect(), edges: vec![] }
    }

    /// Adds or replaces the label between `a` and `b`.
    pub fn with_edge(mut self, a: &str, b: &str, label: RelSet) -> LabeledGraph {
        self.edges.retain(|e| !same_pair(e, a, b));
        self.edges.push(Edge { a: a.into(), b: b.into(), label });
        self
    }

    pub fn label(&self, a: &str, b: &str) -> Option<RelSet> {
        self.edges.iter().find(|e| same_pair(e, a, b)).map(|e| e.label)
    }

    /// Every edge labelled `ρ` or `ρ̄≠`.
    pub fn is_fastidious(&self, rho: RelKind) -> bool {
        let bar = (!RelSet::of(rho)).without_eq();
        self.edges.iter().all(|e| e.label == RelSet::of(rho) || e.label == bar)
    }

    /// No edge between `p` and `q`.
    pub fn is_non_requiring(&self) -> bool {
        self.label("p", "q").is_none()
    }

    /// Labels after one pass of a map on relation sets.
    pub fn map_labels(&self, f: impl Fn(RelSet) -> RelSet) -> LabeledGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { a: e.a.clone(), b: e.b.clone(), label: f(e.label) })
            .collect();
        LabeledGraph { vertices: self.vertices.clone(), edges }
    }

    /// Exchanges `x ↔ y` or `p ↔ q` in vertex names.
    fn rename(&self, swap: (&str, &str)) -> LabeledGraph {
        let r = |v: &str| {
            if v == swap.0 {
                swap.1.to_string()
            } else if v == swap.1 {
                swap.0.to_string()
            } else {
                v.to_string()
            }
        };
        let mut edges: Vec<Edge> =
            self.edges.iter().map(|e| Edge { a: r(&e.a), b: r(&e.b), label: e.label }).collect();
        edges.iter_mut().for_each(normalize);
        edges.sort_by(|e, f| (&e.a, &e.b).cmp(&(&f.a, &f.b)));
        LabeledGraph { vertices: self.vertices.clone(), edges }
    }

    fn canonical(&self) -> LabeledGraph {
        self.rename(("", ""))
    }
}

fn same_pair(e: &Edge, a: &str, b: &str) -> bool {
    (e.a == a && e.b == b) || (e.a == b && e.b == a)
}

fn normalize(e: &mut Edge) {
    if e.a > e.b {
        std::mem::swap(&mut e.a, &mut e.b);
    }
}

/// Vertex placement.
pub type Embedding = BTreeMap<String, Point>;

/// Whether `e` is injective and satisfies every label.
pub fn verify_embedding(g: &LabeledGraph, e: &Embedding) -> bool {
    let pts: Option<Vec<&Point>> = g.vertices.iter().map(|v| e.get(v)).collect();
    let Some(pts) = pts else { return false };
    let injective = pts.iter().enumerate().all(|(i, a)| pts[i + 1..].iter().all(|b| a != b));
    injective && g.edges.iter().all(|ed| ed.label.contains(rel(&e[&ed.a], &e[&ed.b])))
}

const NRF2_EDGES: [(&str, &str); 5] = [("p", "x"), ("p", "y"), ("q", "x"), ("q", "y"), ("x", "y")];

/// All 32 graphs on `p, q, x, y` with every non-`pq` edge labelled `ρ` or
/// `ρ̄≠` and no `pq` edge.
pub fn enumerate_nrf2(rho: RelKind) -> Vec<LabeledGraph> {
    let bar = (!RelSet::of(rho)).without_eq();
    (0..32u32)
        .map(|mask| {
            NRF2_EDGES.iter().enumerate().fold(
                LabeledGraph::new(&["p", "q", "x", "y"]),
                |g, (i, (a, b))| {
                    let label = if mask >> i & 1 == 1 { bar } else { RelSet::of(rho) };
                    g.with_edge(a, b, label)
                },
            )
        })
        .collect()
}

/// Orbit representatives under `x ↔ y` and `p ↔ q`.
pub fn nrf2_orbits(graphs: &[LabeledGraph]) -> Vec<LabeledGraph> {
    let mut seen: Vec<LabeledGraph> = Vec::new();
    for g in graphs {
        let images = [
            g.canonical(),
            g.rename(("x", "y")),
            g.rename(("p", "q")),
            g.rename(("x", "y")).rename(("p", "q")),
        ];
        if !seen.iter().any(|s| images.contains(s)) {
            seen.push(g.canonical());
        }
    }
    seen
}

/// Search effort for [`embed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Integer grid half-width for the exhaustive stage.
    pub grid: i64,
    /// Random restarts of the lattice stage.
    pub restarts: usize,
    /// Largest denominator in the lattice stage.
    pub max_den: i64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { grid: 2, restarts: 400, max_den: 4, seed: 0 }
    }
}

fn grid_points(n: usize, r: i64) -> Vec<Point> {
    let side: Vec<i64> = (-r..=r).collect();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|c: Vec<i64>| side.iter().map(move |&x| [c.clone(), vec![x]].concat()))
            .collect();
    }
    out.iter().map(|c| Point::ints(c)).collect()
}

fn consistent(g: &LabeledGraph, e: &Embedding, v: &str) -> bool {
    let pv = &e[v];
    e.iter().all(|(w, pw)| {
        w == v
            || (pw != pv
                && g.label(v, w).is_none_or(|l| l.contains(rel(pv, pw))))
    })
}

/// Depth-first placement on the integer grid, first vertex at the origin.
fn grid_search(g: &LabeledGraph, n: usize, r: i64) -> Option<Embedding> {
    let pts = grid_points(n, r);
    let mut e = Embedding::new();
    e.insert(g.vertices[0].clone(), Point::origin(n));
    fn go(g: &LabeledGraph, pts: &[Point], e: &mut Embedding, i: usize) -> bool {
        if i == g.vertices.len() {
            return true;
        }
        let v = g.vertices[i].clone();
        for p in pts {
            e.insert(v.clone(), p.clone());
            if consistent(g, e, &v) && go(g, pts, e, i + 1) {
                return true;
            }
        }
        e.remove(&v);
        false
    }
    go(g, &pts, &mut e, 1).then_some(e)
}

fn lattice_search(g: &LabeledGraph, n: usize, budget: &Budget) -> Option<Embedding> {
    let mut rng = trial_rng(budget.seed, "embed", 0);
    for _ in 0..budget.restarts {
        let mut e = Embedding::new();
        let mut ok = true;
        for v in &g.vertices {
            let placed = (0..50).any(|_| {
                let cand = propose(&mut rng, &e, n, budget.max_den);
                e.insert(v.clone(), cand);
                consistent(g, &e, v)
            });
            if !placed {
                ok = false;
                break;
            }
        }
        if ok {
            return Some(e);
        }
    }
    None
}

fn propose(rng: &mut TrialRng, e: &Embedding, n: usize, max_den: i64) -> Point {
    if e.is_empty() || rng.gen_bool(0.25) {
        return sampling::point(rng, n, 3, max_den);
    }
    let base = e.values().nth(rng.gen_range(0..e.len())).expect("nonempty");
    let kind = RelKind::DISTINCT[rng.gen_range(0..3)];
    base + &sampling::offset_of_kind(rng, kind, n, 3, max_den)
}

/// An exact embedding of `g` into `Qⁿ`: exhaustive on a small integer
/// grid, then seeded lattice search.
pub fn embed(g: &LabeledGraph, n: usize, budget: &Budget) -> Result<Embedding, EmbedError> {
    let found = grid_search(g, n, budget.grid).or_else(|| lattice_search(g, n, budget));
    match found {
        Some(e) if verify_embedding(g, &e) => Ok(e),
        _ => Err(EmbedError::NotFound),
    }
}

/// Moves `q` in time until `p, q` is a `want` pair with every edge intact.
pub fn perturb_pq(e: &Embedding, g: &LabeledGraph, want: RelKind) -> Result<Embedding, EmbedError> {
    let p = e.get("p").ok_or_else(|| EmbedError::UnknownVertex("p".into()))?;
    let q = e.get("q").ok_or_else(|| EmbedError::UnknownVertex("q".into()))?;
    if rel(p, q) == want {
        return Ok(e.clone());
    }
    let mut h = FieldElem::int(1);
    let half = FieldElem::frac(1, 2);
    for _ in 0..64 {
        for sign in [1, -1] {
            let t = q.time() + &(&h * &FieldElem::int(sign));
            let mut moved = e.clone();
            moved.insert("q".into(), q.with_coord(0, t));
            if rel(p, &moved["q"]) == want && verify_embedding(g, &moved) {
                return Ok(moved);
            }
        }
        h = &h * &half;
    }
    Err(EmbedError::NotAchieved(want))
}

/// Restriction to a vertex subset.
pub fn o1_induced(g: &LabeledGraph, keep: &[&str]) -> LabeledGraph {
    LabeledGraph {
        vertices: g.vertices.iter().filter(|v| keep.contains(&v.as_str())).cloned().collect(),
        edges: g
            .edges
            .iter()
            .filter(|e| keep.contains(&e.a.as_str()) && keep.contains(&e.b.as_str()))
            .cloned()
            .collect(),
    }
}

/// Replaces every label `from` by the weaker `to`.
pub fn o2_weaken(g: &LabeledGraph, from: RelSet, to: RelSet) -> Result<LabeledGraph, EmbedError> {
    if (from & !to) != RelSet::EMPTY {
        return Err(EmbedError::NotASubset { from, to });
    }
    Ok(g.map_labels(|l| if l == from { to } else { l }))
}

/// Pads every point with zeros up to dimension `n`.
pub fn o3_lift(e: &Embedding, n: usize) -> Embedding {
    e.iter().map(|(v, p)| (v.clone(), p.padded(n))).collect()
}

/// Exchanges `τ` and `σ` in labels.
pub fn o4_swap(g: &LabeledGraph) -> LabeledGraph {
    g.map_labels(RelSet::swap_time_space)
}

/// The embedding of [`o4_swap`]`(g)` obtained by exchanging time and space
/// in the plane.
pub fn o4_swap_embedding(e: &Embedding) -> Result<Embedding, EmbedError> {
    let n = e.values().next().map_or(2, Point::dim);
    let s = swap_tx(n).map_err(|err| EmbedError::Unsupported(err.to_string()))?;
    Ok(e.iter().map(|(v, p)| (v.clone(), s.apply(p))).collect())
}

/// An embedding of one nrf2 graph with a prescribed `p, q` relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairEmbedding {
    pub graph: usize,
    pub want: RelKind,
    /// Whether it came from moving `q` in a lightlike embedding.
    pub perturbed: bool,
    pub coords: Embedding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Nrf2Report {
    pub rho: RelKind,
    pub n: usize,
    pub graphs: usize,
    pub orbits: usize,
    pub embeddings: Vec<PairEmbedding>,
    /// `(graph, want)` with no embedding found.
    pub missing: Vec<(usize, RelKind)>,
    /// Count of embeddings that fail after O1–O4.
    pub transform_failures: usize,
}

impl Nrf2Report {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.transform_failures == 0
    }

    pub fn conclusion(&self) -> &'static str {
        if self.passed() {
            "every nrf2-definable relation meets τ, λ and σ"
        } else {
            "suite incomplete"
        }
    }
}

const WANTS: [RelKind; 3] = [RelKind::Lightlike, RelKind::Timelike, RelKind::Spacelike];

fn embed_with_pair(g: &LabeledGraph, n: usize, budget: &Budget) -> Vec<Result<PairEmbedding, RelKind>> {
    let lam = embed(&g.clone().with_edge("p", "q", RelSet::LAM), n, budget).ok();
    WANTS
        .iter()
        .map(|&want| {
            if let Some(e) = &lam {
                if let Ok(moved) = perturb_pq(e, g, want) {
                    return Ok(PairEmbedding { graph: 0, want, perturbed: want != RelKind::Lightlike, coords: moved });
                }
            }
            embed(&g.clone().with_edge("p", "q", RelSet::of(want)), n, budget)
                .map(|coords| PairEmbedding { graph: 0, want, perturbed: false, coords })
                .map_err(|_| want)
        })
        .collect()
}

/// Transform-then-verify for one embedding of graph `g`.
fn transforms_hold(g: &LabeledGraph, pe: &PairEmbedding) -> bool {
    let full = g.clone().with_edge("p", "q", RelSet::of(pe.want));
    let e = &pe.coords;
    let o1 = ["p", "x", "y"];
    let sub: Embedding = e.iter().filter(|(v, _)| o1.contains(&v.as_str())).map(|(v, p)| (v.clone(), p.clone())).collect();
    let weakened = full.map_labels(|l| l | RelSet::EQ);
    let n = e.values().next().map_or(2, Point::dim);
    let lifted = verify_embedding(&full, &o3_lift(e, n + 1));
    let swapped = n != 2
        || o4_swap_embedding(e).is_ok_and(|s| verify_embedding(&o4_swap(&full), &s));
    verify_embedding(&o1_induced(&full, &o1), &sub) && verify_embedding(&weakened, e) && lifted && swapped
}

/// Embeds every nrf2 graph for `rho` with each of `τ, λ, σ` between `p`
/// and `q`, then checks O1–O4 on the results.
pub fn nrf2_relation_report(rho: RelKind, n: usize, budget: &Budget) -> Nrf2Report {
    let graphs = enumerate_nrf2(rho);
    let results: Vec<Vec<Result<PairEmbedding, RelKind>>> =
        graphs.par_iter().map(|g| embed_with_pair(g, n, budget)).collect();
    let mut embeddings = Vec::new();
    let mut missing = Vec::new();
    let mut transform_failures = 0;
    for (i, rs) in results.into_iter().enumerate() {
        for r in rs {
            match r {
                Ok(mut pe) => {
                    pe.graph = i;
                    if !transforms_hold(&graphs[i], &pe) {
                        transform_failures += 1;
                    }
                    embeddings.push(pe);
                }
                Err(want) => missing.push((i, want)),
            }
        }
    }
    Nrf2Report {
        rho,
        n,
        graphs: graphs.len(),
        orbits: nrf2_orbits(&graphs).len(),
        embeddings,
        missing,
        transform_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let gs = enumerate_nrf2(RelKind::Timelike);
        assert_eq!(gs.len(), 32);
        assert!(gs.iter().all(|g| g.is_fastidious(RelKind::Timelike) && g.is_non_requiring()));
        assert_eq!(nrf2_orbits(&gs).len(), 14);
        let all_tau = gs[0].edges.iter().all(|e| e.label == RelSet::TAU);
        assert!(all_tau);
    }

    #[test]
    fn small_embeddings() {
        let chain = LabeledGraph::new(&["x", "y", "z"])
            .with_edge("x", "y", RelSet::TAU)
            .with_edge("y", "z", RelSet::TAU)
            .with_edge("x", "z", RelSet::TAU);
        let e = embed(&chain, 2, &Budget::default()).unwrap();
        assert!(verify_embedding(&chain, &e));
        let row = o4_swap(&chain);
        let e = embed(&row, 2, &Budget::default()).unwrap();
        assert!(verify_embedding(&row, &e));
        let lam = LabeledGraph::new(&["x", "y"]).with_edge("x", "y", RelSet::LAM);
        let e = embed(&lam, 2, &Budget::default()).unwrap();
        assert_eq!(rel(&e["x"], &e["y"]), RelKind::Lightlike);
    }

    #[test]
    fn perturbation_moves_q() {
        let g = LabeledGraph::new(&["p", "q"]);
        let e: Embedding = [("p".to_string(), Point::ints(&[0, 0])), ("q".to_string(), Point::ints(&[1, 1]))].into();
        for want in [RelKind::Timelike, RelKind::Spacelike, RelKind::Lightlike] {
            let m = perturb_pq(&e, &g, want).unwrap();
            assert_eq!(rel(&m["p"], &m["q"]), want);
        }
    }

    #[test]
    fn observations() {
        let e: Embedding = [("x".to_string(), Point::ints(&[0, 0])), ("y".to_string(), Point::ints(&[1, 1]))].into();
        let lifted = o3_lift(&e, 3);
        assert_eq!(lifted["y"], Point::ints(&[1, 1, 0]));
        let g = LabeledGraph::new(&["x", "y"]).with_edge("x", "y", RelSet::TAU);
        assert!(o2_weaken(&g, RelSet::TAU, RelSet::LAM).is_err());
        assert_eq!(o2_weaken(&g, RelSet::TAU, RelSet::FULL).unwrap().label("x", "y"), Some(RelSet::FULL));
    }

    #[test]
    fn nrf2_suite_in_the_plane() {
        let r = nrf2_relation_report(RelKind::Timelike, 2, &Budget::default());
        assert!(r.passed(), "{:?}", r.missing);
        assert_eq!(r.embeddings.len(), 96);
    }
}
