//! Symmetry classification of graphs under a given automorphism group.
//!
//! The central question for a bi-Cayley graph is where it falls on the
//! edge-transitivity spectrum, both under the normaliser of the
//! translation group and under the full automorphism group:
//!
//! * **arc-transitive** - one orbit on ordered edges;
//! * **half-arc-transitive** - vertex- and edge- but not arc-transitive;
//! * **semisymmetric** - regular and edge- but not vertex-transitive.
//!
//! For a normalised one-matching datum (`R = L = ∅`, `1 ∈ S`) the
//! normaliser's behaviour is decided entirely inside the group `H`:
//! the stabiliser of the vertex `1_0` in the normaliser is the set `F`
//! of maps `σ_{α,g}` (with `S^α = g^-1 S`), acting on the neighbourhood
//! `{s_1 : s ∈ S}` by `s -> g·s^α`. This module implements those
//! group-theoretic criteria ([`normaliser_prediction`],
//! [`two_arc_conditions`]) next to honest orbit computations on the
//! actual graph ([`analyze_action`], [`s_arc_transitive`]) so each can
//! be checked against the other.
//!
//! Also here: searches for regular subgroups (Cayley-graph detection),
//! metacirculant and weakly metacirculant structure, and the combined
//! [`Report`] used by the command-line interface.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::bicayley::BiCayley;
use crate::graphs::Graph;
use crate::group::{automorphisms_with, Elt, FiniteGroup, GroupAut, SetRelation};
use crate::perm::{Perm, PermGroup};
use crate::{Error, Result};

/// Largest group order for which element-by-element searches
/// (regular subgroups, metacirculant witnesses) are attempted.
pub const ELEMENT_ENUM_BOUND: u128 = 20_000;

/// Node budget for the depth-first regular-subgroup search.
const REGULAR_DFS_NODE_CAP: usize = 200_000;

// ---------------------------------------------------------------------
// Orbit analysis of a permutation group on a graph
// ---------------------------------------------------------------------

/// Disjoint-set forest over `0..n`.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn class_count(&mut self, n: usize) -> usize {
        (0..n).filter(|&i| self.find(i) == i).count()
    }
}

/// Orbit counts of a permutation group acting on a graph's vertices,
/// edges, and arcs (ordered edges).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionAnalysis {
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub arc_orbits: usize,
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    /// Edge-transitive with the group order equal to the number of
    /// edges, i.e. the action on edges is regular.
    pub edge_regular: bool,
}

/// Counts orbits of `group` on the vertices, edges, and arcs of `graph`.
///
/// The group must act on the vertex set of the graph (same degree). The
/// generators are assumed to be graph automorphisms; orbits are unions
/// under generator images, which is exact for a group action.
pub fn analyze_action(graph: &Graph, group: &PermGroup) -> ActionAnalysis {
    assert_eq!(
        graph.vertex_count(),
        group.degree(),
        "group must act on the graph's vertex set"
    );
    let gens = group.generators();
    let vertex_orbits = group.orbits().len();

    let edges = graph.edges();
    let mut edge_index: HashMap<(u32, u32), usize> = HashMap::with_capacity(edges.len());
    for (i, &e) in edges.iter().enumerate() {
        edge_index.insert(e, i);
    }
    let mut uf = UnionFind::new(edges.len());
    for p in gens {
        for (i, &(u, v)) in edges.iter().enumerate() {
            let iu = p.apply(u as usize) as u32;
            let iv = p.apply(v as usize) as u32;
            let key = (iu.min(iv), iu.max(iv));
            uf.union(i, edge_index[&key]);
        }
    }
    let edge_orbits = uf.class_count(edges.len());

    let mut arcs: Vec<(u32, u32)> = Vec::with_capacity(2 * edges.len());
    for &(u, v) in &edges {
        arcs.push((u, v));
        arcs.push((v, u));
    }
    let mut arc_index: HashMap<(u32, u32), usize> = HashMap::with_capacity(arcs.len());
    for (i, &a) in arcs.iter().enumerate() {
        arc_index.insert(a, i);
    }
    let mut uf = UnionFind::new(arcs.len());
    for p in gens {
        for (i, &(u, v)) in arcs.iter().enumerate() {
            let key = (p.apply(u as usize) as u32, p.apply(v as usize) as u32);
            uf.union(i, arc_index[&key]);
        }
    }
    let arc_orbits = uf.class_count(arcs.len());

    let edge_transitive = edge_orbits <= 1;
    ActionAnalysis {
        vertex_orbits,
        edge_orbits,
        arc_orbits,
        vertex_transitive: vertex_orbits <= 1,
        edge_transitive,
        arc_transitive: arc_orbits <= 1,
        edge_regular: edge_transitive && group.order() == edges.len() as u128,
    }
}

/// All directed paths `(v_0, ..., v_s)` with consecutive vertices
/// adjacent and `v_{i-1} != v_{i+1}` (no immediate backtracking).
pub fn s_arcs(graph: &Graph, s: usize) -> Vec<Vec<u32>> {
    assert!(s >= 1, "an s-arc needs at least one step");
    let mut out: Vec<Vec<u32>> = Vec::new();
    for (u, v) in graph.edges() {
        out.push(vec![u, v]);
        out.push(vec![v, u]);
    }
    for _ in 1..s {
        let mut next = Vec::new();
        for arc in &out {
            let last = *arc.last().expect("arcs are nonempty") as usize;
            let prev = arc[arc.len() - 2];
            for &w in graph.neighbors(last) {
                if w != prev {
                    let mut ext = arc.clone();
                    ext.push(w);
                    next.push(ext);
                }
            }
        }
        out = next;
    }
    out
}

/// True if `group` is transitive on the s-arcs of `graph` (vacuously
/// true when the graph has no s-arcs).
pub fn s_arc_transitive(graph: &Graph, group: &PermGroup, s: usize) -> bool {
    let all = s_arcs(graph, s);
    if all.is_empty() {
        return true;
    }
    let total = all.len();
    let gens = group.generators();
    let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(total);
    let mut queue = vec![all[0].clone()];
    seen.insert(all[0].clone());
    while let Some(arc) = queue.pop() {
        for p in gens {
            let img: Vec<u32> = arc.iter().map(|&v| p.apply(v as usize) as u32).collect();
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    seen.len() == total
}

// ---------------------------------------------------------------------
// The edge-transitivity spectrum
// ---------------------------------------------------------------------

/// Position of a group action on the edge-transitivity spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeTransitivity {
    /// More than one orbit on edges.
    NotEdgeTransitive,
    /// One orbit on arcs (hence on vertices and edges).
    ArcTransitive,
    /// Vertex- and edge-transitive but not arc-transitive.
    HalfArcTransitive,
    /// Edge- but not vertex-transitive on a regular graph.
    Semisymmetric,
    /// Edge- but not vertex-transitive on a non-regular graph
    /// (e.g. complete bipartite with unequal parts).
    EdgeTransitiveIrregular,
}

impl std::fmt::Display for EdgeTransitivity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EdgeTransitivity::NotEdgeTransitive => "not-edge-transitive",
            EdgeTransitivity::ArcTransitive => "arc-transitive",
            EdgeTransitivity::HalfArcTransitive => "half-arc-transitive",
            EdgeTransitivity::Semisymmetric => "semisymmetric",
            EdgeTransitivity::EdgeTransitiveIrregular => "edge-transitive-irregular",
        };
        f.write_str(s)
    }
}

/// Classifies the action of `group` on `graph` on the spectrum.
pub fn edge_transitivity_type(graph: &Graph, group: &PermGroup) -> EdgeTransitivity {
    let a = analyze_action(graph, group);
    if !a.edge_transitive {
        EdgeTransitivity::NotEdgeTransitive
    } else if a.arc_transitive {
        EdgeTransitivity::ArcTransitive
    } else if a.vertex_transitive {
        EdgeTransitivity::HalfArcTransitive
    } else if graph.regular_valency().is_some() {
        EdgeTransitivity::Semisymmetric
    } else {
        EdgeTransitivity::EdgeTransitiveIrregular
    }
}

// ---------------------------------------------------------------------
// Normaliser behaviour predicted from the group datum alone
// ---------------------------------------------------------------------

fn require_matching_free_normalized(b: &BiCayley) -> Result<()> {
    if !b.r().is_empty() || !b.l().is_empty() {
        return Err(Error::NotApplicable(
            "criterion requires R and L empty".into(),
        ));
    }
    if !b.is_normalized() {
        return Err(Error::NotApplicable(
            "criterion requires the identity in S; use normalized()".into(),
        ));
    }
    if !b.generates_group() {
        return Err(Error::Disconnected(
            "S does not generate the group, so the graph is disconnected".into(),
        ));
    }
    Ok(())
}

/// Orbits of the stabiliser `F` of `1_0` on the neighbourhood `S`,
/// acting by `s -> g·s^α` for each `σ_{α,g} ∈ F`, together with the
/// resulting prediction for the normaliser's edge behaviour.
///
/// For a connected normalised datum with `R = L = ∅` the normaliser is
/// edge-transitive in exactly two situations:
///
/// * `F` is transitive on `S` ("locally arc-transitive"); then it is
///   arc-transitive precisely when some automorphism maps `S` to
///   `S^-1` and otherwise acts semisymmetrically; or
/// * `F` has exactly two orbits of equal size on `S`, the orbit of the
///   identity `O_1` and another `O_2`, and some automorphism maps `S`
///   to `S^-1 x` for some `x ∈ O_2`; then it is half-arc-transitive.
#[derive(Clone, Debug)]
pub struct NormaliserPrediction {
    /// Orbits of `F` on `S`, the orbit containing the identity first.
    pub stabiliser_orbits: Vec<Vec<Elt>>,
    /// `F` is transitive on `S`.
    pub locally_arc_transitive: bool,
    /// An automorphism with `S^α = S^-1`, if one exists.
    pub inverting_automorphism: Option<GroupAut>,
    /// In the two-equal-orbit case, `(α, x)` with `S^α = S^-1 x` and
    /// `x` in the non-identity orbit, if such exist.
    pub half_arc_witness: Option<(GroupAut, Elt)>,
    /// Predicted behaviour of the normaliser on the graph.
    pub predicted: EdgeTransitivity,
}

/// Predicts the normaliser's edge behaviour from the group datum.
///
/// Requires `R = L = ∅`, `1 ∈ S`, and `S` generating (equivalently,
/// the graph connected); otherwise returns
/// [`Error::NotApplicable`] / [`Error::Disconnected`].
pub fn normaliser_prediction(b: &BiCayley) -> Result<NormaliserPrediction> {
    require_matching_free_normalized(b)?;
    let gr = b.group();
    let s = b.s();
    let f = b.compute_f()?;

    let pos: HashMap<Elt, usize> = s.iter().enumerate().map(|(i, &z)| (z, i)).collect();
    let mut uf = UnionFind::new(s.len());
    for m in &f {
        for (i, &z) in s.iter().enumerate() {
            let img = gr.mul(m.g, m.alpha.apply(z));
            uf.union(i, pos[&img]);
        }
    }
    let mut orbit_of: HashMap<usize, usize> = HashMap::new();
    let mut orbits: Vec<Vec<Elt>> = Vec::new();
    let identity_root = uf.find(pos[&0]);
    orbit_of.insert(identity_root, 0);
    orbits.push(Vec::new());
    for (i, &z) in s.iter().enumerate() {
        let root = uf.find(i);
        let k = *orbit_of.entry(root).or_insert_with(|| {
            orbits.push(Vec::new());
            orbits.len() - 1
        });
        orbits[k].push(z);
    }

    let locally_arc_transitive = orbits.len() == 1;
    let inverting_automorphism = automorphisms_with(gr, s, SetRelation::MapsToInverseSet)?
        .into_iter()
        .next()
        .map(|(a, _)| a);

    let mut half_arc_witness: Option<(GroupAut, Elt)> = None;
    if orbits.len() == 2 && orbits[0].len() == orbits[1].len() {
        let s_inv: Vec<Elt> = {
            let mut v: Vec<Elt> = s.iter().map(|&z| gr.inv(z)).collect();
            v.sort_unstable();
            v
        };
        let auts = gr.automorphisms()?;
        'scan: for &x in &orbits[1] {
            let mut target: Vec<Elt> = s_inv.iter().map(|&z| gr.mul(z, x)).collect();
            target.sort_unstable();
            for alpha in auts.iter() {
                if alpha.apply_set(s) == target {
                    half_arc_witness = Some((alpha.clone(), x));
                    break 'scan;
                }
            }
        }
    }

    let predicted = if locally_arc_transitive {
        if inverting_automorphism.is_some() {
            EdgeTransitivity::ArcTransitive
        } else {
            EdgeTransitivity::Semisymmetric
        }
    } else if half_arc_witness.is_some() {
        EdgeTransitivity::HalfArcTransitive
    } else {
        EdgeTransitivity::NotEdgeTransitive
    };

    Ok(NormaliserPrediction {
        stabiliser_orbits: orbits,
        locally_arc_transitive,
        inverting_automorphism,
        half_arc_witness,
        predicted,
    })
}

/// The three group-side conditions that together are equivalent to the
/// normaliser acting transitively on 2-arcs (for a connected
/// normalised datum with `R = L = ∅`):
///
/// (a) some automorphism maps `S` to `S^-1`;
/// (b) the automorphisms fixing `S ∖ {1}` setwise act transitively on
///     `S ∖ {1}`;
/// (c) some automorphism maps `S` to `s^-1 S` for some `s ∈ S ∖ {1}`.
#[derive(Clone, Debug)]
pub struct TwoArcConditions {
    pub inverting_automorphism: Option<GroupAut>,
    pub stabiliser_transitive_on_s: bool,
    pub shift_witness: Option<(Elt, GroupAut)>,
    /// All three conditions hold, predicting 2-arc-transitivity of the
    /// normaliser.
    pub predicted_two_arc_transitive: bool,
}

/// Evaluates the 2-arc-transitivity conditions for the normaliser.
pub fn two_arc_conditions(b: &BiCayley) -> Result<TwoArcConditions> {
    require_matching_free_normalized(b)?;
    let gr = b.group();
    let s = b.s();
    let s_minus: Vec<Elt> = s.iter().copied().filter(|&z| z != 0).collect();

    let inverting_automorphism = automorphisms_with(gr, s, SetRelation::MapsToInverseSet)?
        .into_iter()
        .next()
        .map(|(a, _)| a);

    let stabiliser_transitive_on_s = if s_minus.len() <= 1 {
        true
    } else {
        let fixing = automorphisms_with(gr, &s_minus, SetRelation::FixesSetwise)?;
        let pos: HashMap<Elt, usize> = s_minus.iter().enumerate().map(|(i, &z)| (z, i)).collect();
        let mut uf = UnionFind::new(s_minus.len());
        for (alpha, _) in &fixing {
            for (i, &z) in s_minus.iter().enumerate() {
                uf.union(i, pos[&alpha.apply(z)]);
            }
        }
        uf.class_count(s_minus.len()) == 1
    };

    let mut shift_witness: Option<(Elt, GroupAut)> = None;
    for &t in &s_minus {
        if let Some((alpha, _)) = automorphisms_with(gr, s, SetRelation::MapsToLeftTranslate(Some(t)))?
            .into_iter()
            .next()
        {
            shift_witness = Some((t, alpha));
            break;
        }
    }

    let predicted_two_arc_transitive = inverting_automorphism.is_some()
        && stabiliser_transitive_on_s
        && shift_witness.is_some();

    Ok(TwoArcConditions {
        inverting_automorphism,
        stabiliser_transitive_on_s,
        shift_witness,
        predicted_two_arc_transitive,
    })
}

/// Order the stabiliser of the arc `(1_0, 1_1)` in the normaliser must
/// have: the number of automorphisms fixing `S` setwise (each such `α`
/// gives the map `σ_{α,1}`, and these are exactly the normaliser
/// elements fixing both endpoints).
pub fn arc_stabiliser_size(b: &BiCayley) -> Result<usize> {
    require_matching_free_normalized(b)?;
    Ok(automorphisms_with(b.group(), b.s(), SetRelation::FixesSetwise)?.len())
}

// ---------------------------------------------------------------------
// Subgroup searches: derived subgroups and regular subgroups
// ---------------------------------------------------------------------

/// `h^-1 x h`.
fn conjugate_perm(x: &Perm, h: &Perm) -> Perm {
    h.inverse().compose(x).compose(h)
}

/// `a^-1 b^-1 a b`.
fn commutator(a: &Perm, b: &Perm) -> Perm {
    a.inverse().compose(&b.inverse()).compose(a).compose(b)
}

/// The derived (commutator) subgroup, as the normal closure of the
/// commutators of the generators.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let deg = g.degree();
    let gens = g.generators();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut dgens: Vec<Perm> = Vec::new();
    for a in gens {
        for b in gens {
            let c = commutator(a, b);
            if !c.is_identity() && seen.insert(c.images().to_vec()) {
                dgens.push(c);
            }
        }
    }
    loop {
        let d = PermGroup::from_generators(deg, &dgens);
        let mut fresh: Vec<Perm> = Vec::new();
        for h in gens {
            for x in dgens.iter() {
                let c = conjugate_perm(x, h);
                if !d.contains(&c) && seen.insert(c.images().to_vec()) {
                    fresh.push(c);
                }
            }
        }
        if fresh.is_empty() {
            return d;
        }
        dgens.extend(fresh);
    }
}

/// All elements of the group, failing if its order exceeds `bound`.
pub fn group_elements_bounded(g: &PermGroup, bound: u128) -> Result<Vec<Perm>> {
    if g.order() > bound {
        return Err(Error::BoundExceeded(format!(
            "group order {} exceeds element-enumeration bound {}",
            g.order(),
            bound
        )));
    }
    Ok(g.elements())
}

/// Histogram of element orders, as sorted `(order, count)` pairs.
pub fn element_order_histogram(g: &PermGroup) -> Result<Vec<(u128, usize)>> {
    let elems = group_elements_bounded(g, ELEMENT_ENUM_BOUND)?;
    let mut map: BTreeMap<u128, usize> = BTreeMap::new();
    for p in &elems {
        *map.entry(p.order()).or_insert(0) += 1;
    }
    Ok(map.into_iter().collect())
}

/// True if the group is cyclic (has an element whose order equals the
/// group order).
pub fn is_cyclic_group(g: &PermGroup) -> Result<bool> {
    let elems = group_elements_bounded(g, ELEMENT_ENUM_BOUND)?;
    Ok(elems.iter().any(|p| p.order() == g.order()))
}

/// Searches for a subgroup acting regularly on `0..degree` (transitive
/// with order equal to the degree). `Ok(None)` is definitive: the
/// search space was exhausted. `Err(BoundExceeded)` means the question
/// was not settled within the configured bounds.
///
/// A graph is a Cayley graph exactly when its automorphism group has
/// such a subgroup.
pub fn regular_subgroup(aut: &PermGroup) -> Result<Option<PermGroup>> {
    let n = aut.degree() as u128;
    if n == 0 || !aut.is_transitive() {
        return Ok(None);
    }
    let ord = aut.order();
    if ord % n != 0 {
        return Ok(None);
    }
    if ord == n {
        return Ok(Some(aut.clone()));
    }

    // Shortcut: walk the derived series; a member of order n that is
    // transitive is regular.
    let mut d = derived_subgroup(aut);
    let mut prev = ord;
    while d.order() > n && d.order() < prev {
        prev = d.order();
        d = derived_subgroup(&d);
    }
    if d.order() == n && d.is_transitive() {
        return Ok(Some(d));
    }

    if ord == 2 * n {
        // Every order-n subgroup has index 2; enumerate all index-2
        // subgroups exactly via homomorphisms onto the 2-element group.
        return Ok(index_two_regular(aut));
    }

    regular_dfs(aut)
}

/// Exhaustive enumeration of the index-2 subgroups of `aut`, returning
/// a transitive one of order `degree` if it exists. Complete because
/// every index-2 subgroup is the kernel of a homomorphism onto the
/// 2-element group, which factors through the elementary abelian
/// quotient by `M = (derived subgroup)·(squares)`.
fn index_two_regular(aut: &PermGroup) -> Option<PermGroup> {
    let deg = aut.degree();
    let n = deg as u128;
    let d = derived_subgroup(aut);
    let mut m_gens: Vec<Perm> = d.generators().to_vec();
    for g in aut.generators() {
        m_gens.push(g.compose(g));
    }
    let m = PermGroup::from_generators(deg, &m_gens);

    // Independent generator images modulo m.
    let mut reps: Vec<Perm> = Vec::new();
    let mut cur = m.clone();
    for g in aut.generators() {
        if !cur.contains(g) {
            reps.push(g.clone());
            let mut gens = cur.generators().to_vec();
            gens.push(g.clone());
            cur = PermGroup::from_generators(deg, &gens);
        }
    }
    debug_assert_eq!(cur.order(), aut.order());
    let r = reps.len();
    for mask in 1u32..(1u32 << r) {
        let mut k_gens: Vec<Perm> = m.generators().to_vec();
        let pivot = (0..r).find(|i| mask >> i & 1 == 1).expect("mask nonzero");
        for (i, rep) in reps.iter().enumerate() {
            if mask >> i & 1 == 0 {
                k_gens.push(rep.clone());
            } else if i != pivot {
                k_gens.push(reps[pivot].compose(rep));
            }
        }
        let k = PermGroup::from_generators(deg, &k_gens);
        debug_assert_eq!(k.order() * 2, aut.order());
        if k.order() == n && k.is_transitive() {
            return Some(k);
        }
    }
    None
}

/// Closure of a set of permutations under composition, abandoned (with
/// `None`) as soon as it exceeds `cap` elements.
fn close_under_products(start: &[Perm], cap: usize) -> Option<Vec<Perm>> {
    let mut set: HashSet<Vec<u32>> = HashSet::new();
    let mut list: Vec<Perm> = Vec::new();
    let deg = start.first().map(|p| p.degree()).unwrap_or(0);
    let id = Perm::identity(deg);
    set.insert(id.images().to_vec());
    list.push(id);
    let mut queue: Vec<Perm> = Vec::new();
    for p in start {
        if set.insert(p.images().to_vec()) {
            list.push(p.clone());
            queue.push(p.clone());
        }
    }
    while let Some(p) = queue.pop() {
        let mut i = 0;
        while i < list.len() {
            for prod in [list[i].compose(&p), p.compose(&list[i])] {
                if set.insert(prod.images().to_vec()) {
                    if list.len() + 1 > cap {
                        return None;
                    }
                    list.push(prod.clone());
                    queue.push(prod);
                }
            }
            i += 1;
        }
    }
    Some(list)
}

/// Depth-first search for a regular subgroup: enumerate the elements,
/// keep those acting without fixed points (every non-identity element
/// of a regular subgroup must), and grow subgroups by adjoining such
/// elements in increasing index order.
fn regular_dfs(aut: &PermGroup) -> Result<Option<PermGroup>> {
    let deg = aut.degree();
    let n = deg;
    let elems = group_elements_bounded(aut, ELEMENT_ENUM_BOUND)?;
    let fpf: Vec<Perm> = elems
        .into_iter()
        .filter(|p| !p.is_identity() && (0..deg).all(|v| p.apply(v) != v))
        .collect();

    struct Search {
        fpf: Vec<Perm>,
        n: usize,
        deg: usize,
        nodes: usize,
        exhausted: bool,
    }

    impl Search {
        fn admissible(&self, closure: &[Perm]) -> bool {
            if self.n % closure.len() != 0 {
                return false;
            }
            closure
                .iter()
                .all(|p| p.is_identity() || (0..self.deg).all(|v| p.apply(v) != v))
        }

        fn dfs(
            &mut self,
            current: &[Perm],
            current_set: &HashSet<Vec<u32>>,
            start: usize,
        ) -> Option<Vec<Perm>> {
            for i in start..self.fpf.len() {
                if current_set.contains(self.fpf[i].images()) {
                    continue;
                }
                if self.nodes >= REGULAR_DFS_NODE_CAP {
                    self.exhausted = false;
                    return None;
                }
                self.nodes += 1;
                let mut seed = current.to_vec();
                seed.push(self.fpf[i].clone());
                let Some(closure) = close_under_products(&seed, self.n) else {
                    continue;
                };
                if !self.admissible(&closure) {
                    continue;
                }
                if closure.len() == self.n {
                    return Some(closure);
                }
                let closure_set: HashSet<Vec<u32>> =
                    closure.iter().map(|p| p.images().to_vec()).collect();
                if let Some(found) = self.dfs(&closure, &closure_set, i + 1) {
                    return Some(found);
                }
                if !self.exhausted {
                    return None;
                }
            }
            None
        }
    }

    let mut search = Search {
        fpf,
        n,
        deg,
        nodes: 0,
        exhausted: true,
    };
    let id = Perm::identity(deg);
    let start_set: HashSet<Vec<u32>> = std::iter::once(id.images().to_vec()).collect();
    if let Some(found) = search.dfs(&[id.clone()], &start_set, 0) {
        // Order n and only fixed-point-free non-identity elements make
        // the action semiregular; with order equal to the degree the
        // single orbit covers everything, so the subgroup is regular.
        let group = PermGroup::from_generators(deg, &found);
        debug_assert_eq!(group.order(), n as u128);
        debug_assert!(group.is_transitive());
        return Ok(Some(group));
    }
    if search.exhausted {
        Ok(None)
    } else {
        Err(Error::BoundExceeded(
            "regular-subgroup search exceeded its node budget".into(),
        ))
    }
}

// ---------------------------------------------------------------------
// Metacirculant structure
// ---------------------------------------------------------------------

/// Searches for an `(m, n)`-metacirculant structure on `graph` inside
/// `aut`: an automorphism `σ` of order `n` with `⟨σ⟩` semiregular
/// (all cycles of length `n`, giving `m` orbits) and an automorphism
/// `τ` normalising `⟨σ⟩`, cyclically permuting the `m` orbits, and
/// having a vertex cycle of length exactly `m`. Returns the witness
/// pair `(σ, τ)` if one exists.
pub fn is_metacirculant(
    graph: &Graph,
    aut: &PermGroup,
    m: usize,
    n: usize,
) -> Result<Option<(Perm, Perm)>> {
    let deg = graph.vertex_count();
    if m == 0 || n == 0 || m * n != deg {
        return Err(Error::InvalidParameter(format!(
            "(m, n) = ({m}, {n}) does not factor the vertex count {deg}"
        )));
    }
    assert_eq!(deg, aut.degree(), "group must act on the graph's vertices");
    let elems = group_elements_bounded(aut, ELEMENT_ENUM_BOUND)?;
    let target_cycles = vec![n; m];
    let mut seen_groups: HashSet<Vec<Vec<u32>>> = HashSet::new();

    for sigma in &elems {
        if sigma.cycle_lengths() != target_cycles {
            continue;
        }
        // Powers of sigma; two generators of the same cyclic group give
        // the same orbits and the same normaliser condition.
        let mut powers: Vec<Vec<u32>> = Vec::with_capacity(n);
        let mut cur = Perm::identity(deg);
        for _ in 0..n {
            powers.push(cur.images().to_vec());
            cur = cur.compose(sigma);
        }
        let mut key = powers.clone();
        key.sort();
        if !seen_groups.insert(key) {
            continue;
        }
        let power_set: HashSet<Vec<u32>> = powers.into_iter().collect();

        let mut orbit_id = vec![usize::MAX; deg];
        let mut orbit_count = 0;
        for v in 0..deg {
            if orbit_id[v] != usize::MAX {
                continue;
            }
            let mut x = v;
            while orbit_id[x] == usize::MAX {
                orbit_id[x] = orbit_count;
                x = sigma.apply(x);
            }
            orbit_count += 1;
        }
        debug_assert_eq!(orbit_count, m);

        for tau in &elems {
            if !power_set.contains(conjugate_perm(sigma, tau).images()) {
                continue;
            }
            if !tau.cycle_lengths().contains(&m) {
                continue;
            }
            // Induced permutation on the orbits; well defined because
            // tau normalises <sigma>.
            let mut induced = vec![usize::MAX; m];
            for v in 0..deg {
                induced[orbit_id[v]] = orbit_id[tau.apply(v)];
            }
            let mut steps = 1;
            let mut x = induced[0];
            while x != 0 && steps <= m {
                x = induced[x];
                steps += 1;
            }
            if x == 0 && steps == m {
                return Ok(Some((sigma.clone(), tau.clone())));
            }
        }
    }
    Ok(None)
}

/// Tries every ordered factorisation `vertex count = m · n` and returns
/// the first pair admitting a metacirculant structure.
pub fn metacirculant_any(graph: &Graph, aut: &PermGroup) -> Result<Option<(usize, usize)>> {
    let deg = graph.vertex_count();
    for m in 1..=deg {
        if deg % m != 0 {
            continue;
        }
        if is_metacirculant(graph, aut, m, deg / m)?.is_some() {
            return Ok(Some((m, deg / m)));
        }
    }
    Ok(None)
}

/// True if the group has a cyclic normal subgroup with cyclic quotient.
pub fn is_metacyclic_group(g: &PermGroup) -> Result<bool> {
    let elems = group_elements_bounded(g, ELEMENT_ENUM_BOUND)?;
    let order = g.order() as usize;
    let gens = g.generators();
    let mut seen_cyclic: HashSet<Vec<Vec<u32>>> = HashSet::new();

    for x in &elems {
        let mut powers: Vec<Vec<u32>> = Vec::new();
        let mut cur = Perm::identity(g.degree());
        loop {
            powers.push(cur.images().to_vec());
            cur = cur.compose(x);
            if cur.is_identity() {
                break;
            }
        }
        let mut key = powers.clone();
        key.sort();
        if !seen_cyclic.insert(key) {
            continue;
        }
        let c_set: HashSet<Vec<u32>> = powers.into_iter().collect();
        let c_ord = c_set.len();
        if order % c_ord != 0 {
            continue;
        }
        // Normality: conjugating the generator by each group generator
        // must stay inside the cyclic subgroup.
        if !gens
            .iter()
            .all(|h| c_set.contains(conjugate_perm(x, h).images()))
        {
            continue;
        }
        // Cyclic quotient: some y with <C, y> the whole group. Since C
        // is normal, |<C, y>| = |C| * k with k the least power of y
        // falling into C.
        for y in &elems {
            let mut k = 1;
            let mut cur = y.clone();
            while !c_set.contains(cur.images()) {
                cur = cur.compose(y);
                k += 1;
            }
            if c_ord * k == order {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Searches for a metacyclic subgroup of `aut` transitive on the
/// vertices (the witness making the graph weakly metacirculant).
/// Complete over all candidates because a metacyclic group is
/// generated by a generator of its cyclic normal subgroup together
/// with one further element.
pub fn weak_metacirculant_witness(graph: &Graph, aut: &PermGroup) -> Result<Option<PermGroup>> {
    let deg = graph.vertex_count();
    assert_eq!(deg, aut.degree(), "group must act on the graph's vertices");
    if deg == 0 {
        return Ok(None);
    }
    let elems = group_elements_bounded(aut, ELEMENT_ENUM_BOUND)?;

    // One representative per cyclic subgroup.
    let mut seen_cyclic: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let mut reps: Vec<Perm> = Vec::new();
    for a in &elems {
        let mut powers: Vec<Vec<u32>> = Vec::new();
        let mut cur = Perm::identity(deg);
        loop {
            powers.push(cur.images().to_vec());
            cur = cur.compose(a);
            if cur.is_identity() {
                break;
            }
        }
        powers.sort();
        if seen_cyclic.insert(powers) {
            reps.push(a.clone());
        }
    }

    for a in &reps {
        for b in &elems {
            // Cheap transitivity precheck: orbit of 0 under {a, b}.
            let mut seen = vec![false; deg];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for img in [a.apply(v), b.apply(v)] {
                    if !seen[img] {
                        seen[img] = true;
                        count += 1;
                        stack.push(img);
                    }
                }
            }
            if count != deg {
                continue;
            }
            let candidate = PermGroup::from_generators(deg, &[a.clone(), b.clone()]);
            if is_metacyclic_group(&candidate)? {
                return Ok(Some(candidate));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------
// Combined report
// ---------------------------------------------------------------------

/// Full symmetry report for one bi-Cayley datum. Group orders are
/// serialised as strings because they can exceed what JSON numbers
/// carry exactly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub group_order: usize,
    pub vertices: usize,
    pub edges: usize,
    pub valency: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    /// No two vertices share the same neighbourhood.
    pub worthy: bool,
    /// `1 ∈ S`.
    pub normalized: bool,
    /// Number of copy-preserving stabiliser maps `σ_{α,g}`.
    pub sigma_count: usize,
    /// Number of copy-swapping maps `δ_{α,x,y}`.
    pub delta_count: usize,
    pub normaliser_order: String,
    pub normaliser_action: EdgeTransitivity,
    pub normaliser_two_arc_transitive: bool,
    /// Group-side prediction for the normaliser action; `None` when
    /// the predicting criteria do not apply (`R`/`L` nonempty, `1 ∉ S`,
    /// or disconnected).
    pub predicted_normaliser_action: Option<EdgeTransitivity>,
    pub aut_order: String,
    pub aut_action: EdgeTransitivity,
    pub aut_two_arc_transitive: bool,
    pub aut_three_arc_transitive: bool,
    /// The translation group is normal in the full automorphism group
    /// (normaliser and automorphism group coincide).
    pub translations_normal: bool,
    /// The full automorphism group acts regularly on edges.
    pub edge_regular: bool,
    /// Arc-transitive with the group order equal to the arc count.
    pub one_arc_regular: bool,
    /// 2-arc-transitive with the group order equal to the 2-arc count.
    pub two_arc_regular: bool,
    /// Whether the graph is a Cayley graph (has a regular subgroup of
    /// automorphisms); `None` when the search exceeded its bounds.
    pub cayley: Option<bool>,
    /// 4-/6-cycle counts per orbit of the full group on edges.
    pub cycle_census: Vec<CensusEntry>,
}

/// Computes the full symmetry report for a datum: graph invariants,
/// normaliser and full automorphism group with their positions on the
/// edge-transitivity spectrum, the group-side prediction, and a
/// Cayley-graph check.
pub fn classify(b: &BiCayley) -> Result<Report> {
    let graph = b.graph();
    let nrm = b.normaliser()?;
    let aut = graph.automorphism_group();

    let predicted_normaliser_action = match normaliser_prediction(b) {
        Ok(p) => Some(p.predicted),
        Err(Error::NotApplicable(_)) | Err(Error::Disconnected(_)) => None,
        Err(e) => return Err(e),
    };

    let normaliser_action = edge_transitivity_type(&graph, &nrm.group);
    let aut_analysis = analyze_action(&graph, &aut);
    let aut_action = if !aut_analysis.edge_transitive {
        EdgeTransitivity::NotEdgeTransitive
    } else if aut_analysis.arc_transitive {
        EdgeTransitivity::ArcTransitive
    } else if aut_analysis.vertex_transitive {
        EdgeTransitivity::HalfArcTransitive
    } else if graph.regular_valency().is_some() {
        EdgeTransitivity::Semisymmetric
    } else {
        EdgeTransitivity::EdgeTransitiveIrregular
    };

    let cayley = match regular_subgroup(&aut) {
        Ok(opt) => Some(opt.is_some()),
        Err(Error::BoundExceeded(_)) => None,
        Err(e) => return Err(e),
    };

    let arc_count = 2 * graph.edge_count() as u128;
    let two_arc_count = s_arcs(&graph, 2).len() as u128;
    let aut_two_arc_transitive = s_arc_transitive(&graph, &aut, 2);

    Ok(Report {
        group_order: b.group().order(),
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        valency: graph.regular_valency(),
        connected: graph.is_connected(),
        bipartite: graph.bipartition().is_some(),
        girth: graph.girth(),
        diameter: graph.diameter(),
        worthy: graph.is_worthy(),
        normalized: b.is_normalized(),
        sigma_count: nrm.sigma.len(),
        delta_count: nrm.delta.len(),
        normaliser_order: nrm.group.order().to_string(),
        normaliser_action,
        normaliser_two_arc_transitive: s_arc_transitive(&graph, &nrm.group, 2),
        predicted_normaliser_action,
        aut_order: aut.order().to_string(),
        aut_action,
        aut_two_arc_transitive,
        aut_three_arc_transitive: s_arc_transitive(&graph, &aut, 3),
        translations_normal: nrm.group.order() == aut.order(),
        edge_regular: aut_analysis.edge_regular,
        one_arc_regular: aut_analysis.arc_transitive && aut.order() == arc_count,
        two_arc_regular: aut_two_arc_transitive && aut.order() == two_arc_count,
        cayley,
        cycle_census: edge_cycle_census(&graph, &aut),
    })
}

/// Builds the right-regular permutation representation of a finite
/// group (each element acting by right multiplication on the group).
pub fn right_regular_representation(g: &FiniteGroup) -> PermGroup {
    let n = g.order();
    let gens: Vec<Perm> = g
        .generators()
        .iter()
        .map(|&x| {
            Perm::from_images((0..n).map(|h| g.mul(h, x) as u32).collect())
                .expect("right multiplication permutes the group")
        })
        .collect();
    PermGroup::from_generators(n, &gens)
}

// ---------------------------------------------------------------------
// Subgroup relations and stabilisers
// ---------------------------------------------------------------------

/// Whether `sub` is a normal subgroup of `big`. Both groups must act on
/// the same points, and `sub`'s generators must lie in `big`. It
/// suffices to conjugate each generator of `sub` by each generator of
/// `big` and test membership: conjugation by a group element is an
/// automorphism, so it maps `sub` onto a subgroup of equal (finite)
/// order, and containment of the generators forces equality.
pub fn is_normal_in(sub: &PermGroup, big: &PermGroup) -> bool {
    assert_eq!(sub.degree(), big.degree(), "groups must act on the same points");
    for b in big.generators() {
        let binv = b.inverse();
        for s in sub.generators() {
            let conj = binv.compose(s).compose(b);
            if !sub.contains(&conj) {
                return false;
            }
        }
    }
    true
}

/// Stabiliser of a vertex as a subgroup (with Schreier generators).
pub fn point_stabiliser(g: &PermGroup, v: usize) -> PermGroup {
    g.pointwise_stabiliser(&[v])
}

/// Stabiliser of the ordered pair `(u, v)`.
pub fn arc_stabiliser_group(g: &PermGroup, u: usize, v: usize) -> PermGroup {
    g.pointwise_stabiliser(&[u, v])
}

/// Setwise stabiliser of the unordered pair `{u, v}`: the arc
/// stabiliser, extended by one element swapping `u` and `v` when the
/// orbit of the ordered pair `(u, v)` contains `(v, u)`.
pub fn edge_stabiliser(g: &PermGroup, u: usize, v: usize) -> PermGroup {
    let arc_stab = g.pointwise_stabiliser(&[u, v]);
    let mut gens: Vec<Perm> = arc_stab.generators().to_vec();
    if let Some(t) = pair_transporter(g, (u, v), (v, u)) {
        gens.push(t);
    }
    PermGroup::from_generators(g.degree(), &gens)
}

/// An element of `g` mapping the ordered pair `from` to the ordered
/// pair `to`, found by an orbit sweep with a transversal. `None` when
/// the pairs are in different orbits.
pub fn pair_transporter(
    g: &PermGroup,
    from: (usize, usize),
    to: (usize, usize),
) -> Option<Perm> {
    let mut transversal: HashMap<(usize, usize), Perm> = HashMap::new();
    transversal.insert(from, Perm::identity(g.degree()));
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(pair) = queue.pop_front() {
        let reach = transversal[&pair].clone();
        if pair == to {
            return Some(reach);
        }
        for gen in g.generators() {
            let next = (gen.apply(pair.0), gen.apply(pair.1));
            if !transversal.contains_key(&next) {
                transversal.insert(next, reach.compose(gen));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Orders along the derived series `G ≥ G' ≥ G'' ≥ …`, starting with
/// `|G|` and ending at the first repeated order (a perfect group) or at
/// the trivial group. At most `max_steps` derived subgroups are taken.
pub fn derived_series_orders(g: &PermGroup, max_steps: usize) -> Vec<u128> {
    let mut orders = vec![g.order()];
    let mut current = g.clone();
    for _ in 0..max_steps {
        if current.order() == 1 {
            break;
        }
        let next = derived_subgroup(&current);
        orders.push(next.order());
        if next.order() == current.order() {
            break;
        }
        current = next;
    }
    orders
}

// ---------------------------------------------------------------------
// Cycle censuses through edges
// ---------------------------------------------------------------------

/// Cycle counts through one representative edge per edge orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    /// Lexicographically least edge of the orbit.
    pub edge: (usize, usize),
    /// Number of edges in the orbit.
    pub orbit_size: usize,
    /// Cycles of length 4 through the representative edge.
    pub four_cycles: usize,
    /// Cycles of length 6 through the representative edge.
    pub six_cycles: usize,
}

/// Counts 4- and 6-cycles through one representative edge per orbit of
/// `group` on the edges of `graph`. Within an orbit every edge lies on
/// the same number of cycles of each length, so the representative
/// speaks for the orbit.
pub fn edge_cycle_census(graph: &Graph, group: &PermGroup) -> Vec<CensusEntry> {
    let edges: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .map(|&(u, v)| (u as usize, v as usize))
        .collect();
    let index: HashMap<(usize, usize), usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let mut uf = UnionFind::new(edges.len());
    for gen in group.generators() {
        for (i, &(u, v)) in edges.iter().enumerate() {
            let (a, b) = (gen.apply(u), gen.apply(v));
            let key = (a.min(b), a.max(b));
            uf.union(i, index[&key]);
        }
    }
    let mut orbits: BTreeMap<usize, (usize, (usize, usize))> = BTreeMap::new();
    for (i, &e) in edges.iter().enumerate() {
        let root = uf.find(i);
        let entry = orbits.entry(root).or_insert((0, e));
        entry.0 += 1;
        if e < entry.1 {
            entry.1 = e;
        }
    }
    let mut out: Vec<CensusEntry> = orbits
        .values()
        .map(|&(orbit_size, (u, v))| CensusEntry {
            edge: (u, v),
            orbit_size,
            four_cycles: graph.cycles_through_edge(u, v, 4),
            six_cycles: graph.cycles_through_edge(u, v, 6),
        })
        .collect();
    out.sort_by_key(|c| c.edge);
    out
}

/// Whether every edge lies on the same number of `len`-cycles. This is
/// a necessary condition for edge-transitivity (cycle counts through an
/// edge are invariant under automorphisms), usable as a cheap screen
/// before computing automorphism groups.
pub fn cycle_census_uniform(graph: &Graph, len: usize) -> bool {
    let mut expected: Option<usize> = None;
    for (u, v) in graph.edges() {
        let c = graph.cycles_through_edge(u as usize, v as usize, len);
        match expected {
            None => expected = Some(c),
            Some(e) if e != c => return false,
            Some(_) => {}
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicayley::BiCayley;
    use std::sync::Arc;

    fn make_cyclic(n: usize) -> crate::Result<FiniteGroup> {
        FiniteGroup::make_cyclic(n)
    }

    fn make_metacyclic(na: usize, nb: usize, r: usize) -> crate::Result<FiniteGroup> {
        FiniteGroup::make_metacyclic(na, nb, r)
    }

    fn petersen_datum() -> BiCayley {
        let c5 = Arc::new(make_cyclic(5).unwrap());
        BiCayley::new(c5, &[1, 4], &[2, 3], &[0]).unwrap()
    }

    fn matching_free(order_group: Arc<crate::group::FiniteGroup>, s: &[Elt]) -> BiCayley {
        BiCayley::new(order_group, &[], &[], s).unwrap()
    }

    #[test]
    fn s_arc_transitivity_of_named_graphs() {
        // Petersen: transitive on 3-arcs but (valency 3, girth 5) not more.
        let pet = petersen_datum().graph();
        let aut = pet.automorphism_group();
        assert!(s_arc_transitive(&pet, &aut, 1));
        assert!(s_arc_transitive(&pet, &aut, 2));
        assert!(s_arc_transitive(&pet, &aut, 3));

        // Cube = K44 minus a perfect matching: 2- but not 3-arc-transitive.
        let c4 = Arc::new(make_cyclic(4).unwrap());
        let cube = matching_free(c4, &[0, 1, 3]).graph();
        let aut = cube.automorphism_group();
        assert_eq!(aut.order(), 48);
        assert!(s_arc_transitive(&cube, &aut, 2));
        assert!(!s_arc_transitive(&cube, &aut, 3));
        assert_eq!(s_arcs(&cube, 3).len(), 96);
    }

    #[test]
    fn edge_transitivity_of_small_graphs() {
        // Path on 4 vertices: middle edge in its own orbit.
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let aut = path.automorphism_group();
        assert_eq!(
            edge_transitivity_type(&path, &aut),
            EdgeTransitivity::NotEdgeTransitive
        );

        // Star K_{1,3}: edge-transitive, not vertex-transitive, irregular.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let aut = star.automorphism_group();
        assert_eq!(
            edge_transitivity_type(&star, &aut),
            EdgeTransitivity::EdgeTransitiveIrregular
        );

        // Six-cycle: arc-transitive.
        let c3 = Arc::new(make_cyclic(3).unwrap());
        let hexagon = matching_free(c3, &[0, 1]).graph();
        let aut = hexagon.automorphism_group();
        assert_eq!(
            edge_transitivity_type(&hexagon, &aut),
            EdgeTransitivity::ArcTransitive
        );
    }

    #[test]
    fn petersen_normaliser_has_two_edge_orbits() {
        let b = petersen_datum();
        let graph = b.graph();
        let nrm = b.normaliser().unwrap();
        assert_eq!(nrm.group.order(), 20);
        let analysis = analyze_action(&graph, &nrm.group);
        assert!(analysis.vertex_transitive);
        // Spokes in one orbit; the copy-swapping maps fuse the outer
        // and inner five-cycles into a second orbit.
        assert_eq!(analysis.edge_orbits, 2);
        assert_eq!(analysis.arc_orbits, 2);
        assert_eq!(
            edge_transitivity_type(&graph, &nrm.group),
            EdgeTransitivity::NotEdgeTransitive
        );
        // The matching-free criteria require R = L = ∅.
        assert!(matches!(
            normaliser_prediction(&b),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn heawood_normaliser_prediction_and_reality() {
        // Point-line incidence graph of the seven-point projective
        // plane, as a matching-free datum over the cyclic group of
        // order seven with S the quadratic residues plus zero.
        let c7 = Arc::new(make_cyclic(7).unwrap());
        let b = matching_free(c7, &[0, 1, 3]);
        let graph = b.graph();
        assert_eq!(graph.girth(), Some(6));

        let p = normaliser_prediction(&b).unwrap();
        assert!(p.locally_arc_transitive);
        assert!(p.inverting_automorphism.is_some());
        assert_eq!(p.predicted, EdgeTransitivity::ArcTransitive);

        let nrm = b.normaliser().unwrap();
        assert_eq!(nrm.sigma.len(), 3);
        assert_eq!(nrm.delta.len(), 21);
        assert_eq!(nrm.group.order(), 42);
        assert_eq!(
            edge_transitivity_type(&graph, &nrm.group),
            EdgeTransitivity::ArcTransitive
        );

        // The normaliser is sharply arc-transitive: the arc stabiliser
        // is trivial, so it cannot be 2-arc-transitive...
        assert_eq!(arc_stabiliser_size(&b).unwrap(), 1);
        let arc_stab = nrm.group.pointwise_stabiliser(&[b.v0(0), b.v1(0)]);
        assert_eq!(arc_stab.order(), 1);
        let cond = two_arc_conditions(&b).unwrap();
        assert!(cond.inverting_automorphism.is_some());
        assert!(!cond.stabiliser_transitive_on_s);
        assert!(!cond.predicted_two_arc_transitive);
        assert!(!s_arc_transitive(&graph, &nrm.group, 2));

        // ...while the full automorphism group (order 336) is.
        let aut = graph.automorphism_group();
        assert_eq!(aut.order(), 336);
        assert!(s_arc_transitive(&graph, &aut, 2));
        assert!(s_arc_transitive(&graph, &aut, 3));
    }

    #[test]
    fn complete_bipartite_and_quadrilateral_predictions() {
        // K33 over the cyclic group of order three, S the whole group.
        let c3 = Arc::new(make_cyclic(3).unwrap());
        let b = matching_free(c3, &[0, 1, 2]);
        let p = normaliser_prediction(&b).unwrap();
        assert_eq!(p.predicted, EdgeTransitivity::ArcTransitive);
        let nrm = b.normaliser().unwrap();
        assert_eq!(nrm.group.order(), 36);
        let graph = b.graph();
        assert_eq!(
            edge_transitivity_type(&graph, &nrm.group),
            EdgeTransitivity::ArcTransitive
        );
        assert!(two_arc_conditions(&b).unwrap().predicted_two_arc_transitive);
        assert!(s_arc_transitive(&graph, &nrm.group, 2));

        // Quadrilateral over the group of order two.
        let c2 = Arc::new(make_cyclic(2).unwrap());
        let b = matching_free(c2, &[0, 1]);
        let p = normaliser_prediction(&b).unwrap();
        assert_eq!(p.predicted, EdgeTransitivity::ArcTransitive);
        let graph = b.graph();
        let nrm = b.normaliser().unwrap();
        assert_eq!(nrm.group.order(), 8);
        assert!(s_arc_transitive(&graph, &nrm.group, 2));
        assert!(two_arc_conditions(&b).unwrap().predicted_two_arc_transitive);
    }

    #[test]
    fn cube_normaliser_is_not_edge_transitive() {
        // The stabiliser orbits on S = {0, 1, 3} over the cyclic group
        // of order four have sizes 1 and 2, so the normaliser cannot be
        // edge-transitive even though the full group is arc-transitive.
        let c4 = Arc::new(make_cyclic(4).unwrap());
        let b = matching_free(c4, &[0, 1, 3]);
        let p = normaliser_prediction(&b).unwrap();
        assert!(!p.locally_arc_transitive);
        assert_eq!(p.stabiliser_orbits.len(), 2);
        assert_eq!(p.stabiliser_orbits[0], vec![0]);
        assert_eq!(p.stabiliser_orbits[1], vec![1, 3]);
        assert_eq!(p.predicted, EdgeTransitivity::NotEdgeTransitive);

        let graph = b.graph();
        let nrm = b.normaliser().unwrap();
        assert_eq!(nrm.group.order(), 16);
        assert_eq!(
            edge_transitivity_type(&graph, &nrm.group),
            EdgeTransitivity::NotEdgeTransitive
        );
        assert_eq!(
            edge_transitivity_type(&graph, &graph.automorphism_group()),
            EdgeTransitivity::ArcTransitive
        );
    }

    #[test]
    fn two_arc_transitive_graph_of_order_54() {
        // Matching-free datum over the metacyclic group of order 27
        // with S = {1, a, ab, a^4 b^2}: the full automorphism group
        // has order 1296 and is 2-arc-transitive, yet the translation
        // group is not normal in it - all the edge symmetry lives
        // outside the normaliser.
        let h = Arc::new(make_metacyclic(9, 3, 4).unwrap());
        let b = matching_free(h, &[0, 3, 4, 14]);
        assert!(b.generates_group());

        let graph = b.graph();
        let nrm = b.normaliser().unwrap();
        assert_eq!(
            nrm.group.order(),
            nrm.expected_order(27),
            "normaliser order must match its census"
        );
        // The group-side prediction must agree with the orbit count of
        // the generated permutation group.
        let p = normaliser_prediction(&b).unwrap();
        assert_eq!(p.predicted, edge_transitivity_type(&graph, &nrm.group));

        let aut = graph.automorphism_group();
        assert_eq!(aut.order(), 1296);
        assert!(nrm.group.order() < aut.order(), "not normal as bi-Cayley");
        assert!(s_arc_transitive(&graph, &aut, 2));
        // 1296 < 1944 three-arcs, so 3-arc-transitivity is impossible.
        assert_eq!(s_arcs(&graph, 3).len(), 1944);
        assert!(!s_arc_transitive(&graph, &aut, 3));
    }

    #[test]
    fn half_arc_transitive_normaliser_of_order_500() {
        // Matching-free datum over the metacyclic group of order 125:
        // the stabiliser has two equal orbits on S and an automorphism
        // maps S to a right translate of its inverse, so the normaliser
        // is half-arc-transitive.
        let h = Arc::new(make_metacyclic(25, 5, 6).unwrap());
        let b = matching_free(h, &[0, 10, 27, 112]);
        assert!(b.generates_group());

        let p = normaliser_prediction(&b).unwrap();
        assert!(!p.locally_arc_transitive);
        assert_eq!(p.stabiliser_orbits.len(), 2);
        assert_eq!(p.stabiliser_orbits[0].len(), 2);
        assert_eq!(p.stabiliser_orbits[1].len(), 2);
        assert!(p.half_arc_witness.is_some());
        assert_eq!(p.predicted, EdgeTransitivity::HalfArcTransitive);

        let graph = b.graph();
        let nrm = b.normaliser().unwrap();
        assert_eq!(nrm.group.order(), nrm.expected_order(125));
        let analysis = analyze_action(&graph, &nrm.group);
        assert!(analysis.vertex_transitive);
        assert!(analysis.edge_transitive);
        assert!(!analysis.arc_transitive);
        assert_eq!(
            edge_transitivity_type(&graph, &nrm.group),
            EdgeTransitivity::HalfArcTransitive
        );
    }

    #[test]
    fn regular_subgroup_checks() {
        // The six-cycle is a Cayley graph (index-2 path).
        let c3 = Arc::new(make_cyclic(3).unwrap());
        let hexagon = matching_free(c3.clone(), &[0, 1]).graph();
        let found = regular_subgroup(&hexagon.automorphism_group()).unwrap();
        let k = found.expect("the six-cycle is a Cayley graph");
        assert_eq!(k.order(), 6);
        assert!(k.is_transitive());

        // K33 is a Cayley graph (depth-first path, index 12).
        let k33 = matching_free(c3, &[0, 1, 2]).graph();
        let found = regular_subgroup(&k33.automorphism_group()).unwrap();
        assert!(found.is_some());

        // The Petersen graph is famously not.
        let pet = petersen_datum().graph();
        let found = regular_subgroup(&pet.automorphism_group()).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn petersen_metacirculant_structure() {
        let pet = petersen_datum().graph();
        let aut = pet.automorphism_group();
        assert!(is_metacirculant(&pet, &aut, 2, 5).unwrap().is_some());
        assert!(is_metacirculant(&pet, &aut, 5, 2).unwrap().is_none());
        assert!(is_metacirculant(&pet, &aut, 1, 10).unwrap().is_none());
        assert!(is_metacirculant(&pet, &aut, 10, 1).unwrap().is_none());
        assert_eq!(metacirculant_any(&pet, &aut).unwrap(), Some((2, 5)));
        // A metacirculant witness generates a transitive metacyclic
        // group, so the graph is also weakly metacirculant.
        assert!(weak_metacirculant_witness(&pet, &aut).unwrap().is_some());

        let c3 = Arc::new(make_cyclic(3).unwrap());
        let hexagon = matching_free(c3, &[0, 1]).graph();
        let aut = hexagon.automorphism_group();
        assert_eq!(metacirculant_any(&hexagon, &aut).unwrap(), Some((1, 6)));
    }

    #[test]
    fn metacyclic_group_recognition() {
        // Dihedral group of order 12 acting on the hexagon: metacyclic.
        let c3 = Arc::new(make_cyclic(3).unwrap());
        let hexagon = matching_free(c3, &[0, 1]).graph();
        assert!(is_metacyclic_group(&hexagon.automorphism_group()).unwrap());

        // Elementary abelian group of order 8 in its regular action:
        // every quotient by a cyclic subgroup is non-cyclic.
        let xor_gen = |bit: usize| {
            Perm::from_images((0..8).map(|v| (v ^ bit) as u32).collect()).unwrap()
        };
        let ea8 = PermGroup::from_generators(8, &[xor_gen(1), xor_gen(2), xor_gen(4)]);
        assert_eq!(ea8.order(), 8);
        assert!(!is_metacyclic_group(&ea8).unwrap());

        // The alternating group on four letters is not metacyclic.
        let a4 = PermGroup::from_generators(
            4,
            &[
                Perm::from_images(vec![1, 2, 0, 3]).unwrap(),
                Perm::from_images(vec![1, 0, 3, 2]).unwrap(),
            ],
        );
        assert_eq!(a4.order(), 12);
        assert!(!is_metacyclic_group(&a4).unwrap());
    }

    #[test]
    fn order_histogram_and_cyclicity() {
        let six_cycle = Perm::from_images(vec![1, 2, 3, 4, 5, 0]).unwrap();
        let c6 = PermGroup::from_generators(6, &[six_cycle]);
        assert!(is_cyclic_group(&c6).unwrap());
        assert_eq!(
            element_order_histogram(&c6).unwrap(),
            vec![(1, 1), (2, 1), (3, 2), (6, 2)]
        );

        let pet = petersen_datum().graph();
        assert!(!is_cyclic_group(&pet.automorphism_group()).unwrap());
    }

    #[test]
    fn derived_subgroup_of_full_symmetric_action() {
        // Aut(K4) = S4; derived subgroup A4; second derived V4.
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let s4 = k4.automorphism_group();
        let a4 = derived_subgroup(&s4);
        assert_eq!(a4.order(), 12);
        let v4 = derived_subgroup(&a4);
        assert_eq!(v4.order(), 4);
        let triv = derived_subgroup(&v4);
        assert_eq!(triv.order(), 1);
    }

    #[test]
    fn classify_report_for_petersen() {
        let b = petersen_datum();
        let report = classify(&b).unwrap();
        assert_eq!(report.vertices, 10);
        assert_eq!(report.edges, 15);
        assert_eq!(report.valency, Some(3));
        assert!(report.connected);
        assert!(!report.bipartite);
        assert_eq!(report.girth, Some(5));
        assert_eq!(report.diameter, Some(2));
        assert!(report.worthy);
        assert_eq!(report.normaliser_order, "20");
        assert_eq!(report.aut_order, "120");
        assert_eq!(report.aut_action, EdgeTransitivity::ArcTransitive);
        assert_eq!(
            report.normaliser_action,
            EdgeTransitivity::NotEdgeTransitive
        );
        assert_eq!(report.predicted_normaliser_action, None);
        assert!(!report.translations_normal);
        assert_eq!(report.cayley, Some(false));
        assert!(report.aut_two_arc_transitive);
        assert!(report.aut_three_arc_transitive);
        assert!(!report.one_arc_regular);
        assert!(!report.two_arc_regular);
        // One edge orbit; each edge lies on no 4-cycle (girth 5) and on
        // four of the ten 6-cycles (60 incidences over 15 edges).
        assert_eq!(
            report.cycle_census,
            vec![CensusEntry {
                edge: (0, 1),
                orbit_size: 15,
                four_cycles: 0,
                six_cycles: 4,
            }]
        );

        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"aut_action\":\"arc-transitive\""));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back.aut_order, report.aut_order);
    }

    #[test]
    fn normality_of_subgroups() {
        // In the dihedral automorphism group of the 4-cycle the rotation
        // subgroup has index 2 and is normal; a single reflection
        // generates a non-normal C2.
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let aut = c4.automorphism_group();
        assert_eq!(aut.order(), 8);
        let rot = Perm::from_images(vec![1, 2, 3, 0]).unwrap();
        let rotations = PermGroup::from_generators(4, &[rot]);
        assert!(is_normal_in(&rotations, &aut));
        let refl = Perm::from_images(vec![0, 3, 2, 1]).unwrap();
        let tiny = PermGroup::from_generators(4, &[refl]);
        assert!(!is_normal_in(&tiny, &aut));
        assert!(is_normal_in(&aut, &aut));
    }

    #[test]
    fn stabilisers_in_the_petersen_group() {
        let b = petersen_datum();
        let graph = b.graph();
        let aut = graph.automorphism_group();
        // |Aut| = 120 acting transitively on 10 vertices, 15 edges,
        // 30 arcs: stabiliser orders 12, 8, 4 by orbit-stabiliser.
        assert_eq!(point_stabiliser(&aut, 0).order(), 12);
        let e0 = graph.edges()[0];
        let (u, v) = (e0.0 as usize, e0.1 as usize);
        assert_eq!(arc_stabiliser_group(&aut, u, v).order(), 4);
        assert_eq!(edge_stabiliser(&aut, u, v).order(), 8);
        // The transporter realises arc-transitivity.
        let e7 = graph.edges()[7];
        let (a, b2) = (e7.0 as usize, e7.1 as usize);
        let t = pair_transporter(&aut, (u, v), (a, b2)).unwrap();
        assert_eq!(t.apply(u), a);
        assert_eq!(t.apply(v), b2);
        assert!(aut.contains(&t));
        assert!(pair_transporter(&aut, (u, v), (v, u)).is_some());
    }

    #[test]
    fn derived_series_of_small_groups() {
        // Aut(K4) = Sym(4): derived series 24, 12, 4, 1.
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let s4 = k4.automorphism_group();
        assert_eq!(derived_series_orders(&s4, 10), vec![24, 12, 4, 1]);
        // A cyclic group is abelian: series stops immediately.
        let c5 = PermGroup::from_generators(5, &[Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap()]);
        assert_eq!(derived_series_orders(&c5, 10), vec![5, 1]);
        // Step cap truncates the series.
        assert_eq!(derived_series_orders(&s4, 1), vec![24, 12]);
    }

    #[test]
    fn cycle_censuses() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let aut = c4.automorphism_group();
        assert_eq!(
            edge_cycle_census(&c4, &aut),
            vec![CensusEntry {
                edge: (0, 1),
                orbit_size: 4,
                four_cycles: 1,
                six_cycles: 0,
            }]
        );
        assert!(cycle_census_uniform(&c4, 4));
        // A triangle with a pendant edge is not edge-transitive, and the
        // 3-cycle census sees it: triangle edges lie on one triangle,
        // the pendant edge on none.
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(!cycle_census_uniform(&paw, 3));
        // Under the trivial group every edge is its own orbit.
        let trivial = PermGroup::from_generators(4, &[]);
        let census = edge_cycle_census(&c4, &trivial);
        assert_eq!(census.len(), 4);
        assert!(census.iter().all(|c| c.orbit_size == 1 && c.four_cycles == 1));
    }

    #[test]
    fn prediction_matches_reality_across_examples() {
        let cases: Vec<BiCayley> = vec![
            matching_free(Arc::new(make_cyclic(2).unwrap()), &[0, 1]),
            matching_free(Arc::new(make_cyclic(3).unwrap()), &[0, 1]),
            matching_free(Arc::new(make_cyclic(3).unwrap()), &[0, 1, 2]),
            matching_free(Arc::new(make_cyclic(4).unwrap()), &[0, 1, 3]),
            matching_free(Arc::new(make_cyclic(7).unwrap()), &[0, 1, 3]),
            matching_free(Arc::new(make_cyclic(5).unwrap()), &[0, 1, 2, 3]),
            matching_free(Arc::new(make_metacyclic(9, 3, 4).unwrap()), &[0, 3, 4, 14]),
        ];
        for b in &cases {
            let graph = b.graph();
            let nrm = b.normaliser().unwrap();
            let predicted = normaliser_prediction(b).unwrap().predicted;
            let actual = edge_transitivity_type(&graph, &nrm.group);
            assert_eq!(predicted, actual, "prediction failed for {b:?}");
            let cond = two_arc_conditions(b).unwrap();
            assert_eq!(
                cond.predicted_two_arc_transitive,
                s_arc_transitive(&graph, &nrm.group, 2),
                "2-arc prediction failed for {b:?}"
            );
            // The arc stabiliser in the normaliser is the set of
            // automorphisms fixing S, realised as sigma maps.
            let stab = nrm.group.pointwise_stabiliser(&[b.v0(0), b.v1(0)]);
            assert_eq!(stab.order(), arc_stabiliser_size(b).unwrap() as u128);
        }
    }
}
