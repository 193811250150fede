//! Bi-Cayley graphs over a finite group and the automorphisms visible at
//! the group level.
//!
//! Given a group `H` and sets `R`, `L`, `S`, the bi-Cayley graph has two
//! copies of `H` as vertices (written `h0` and `h1`) and edges
//!
//! * `{h0, (x h)0}` for `x` in `R`,
//! * `{h1, (y h)1}` for `y` in `L`,
//! * `{h0, (z h)1}` for `z` in `S`,
//!
//! which is a simple undirected graph when `1 ∉ R = R^-1`,
//! `1 ∉ L = L^-1`, and `|R| = |L|`.
//!
//! The right translations `ρ_g: h_i -> (h g)_i` form a semiregular copy
//! `R(H)` of `H` in the automorphism group with the two copies as orbits.
//! The normaliser of `R(H)` in the full automorphism group is generated by
//! `R(H)` together with the copy-preserving maps
//!
//! `σ_{α,g}: h0 -> (h^α)0, h1 -> (g h^α)1`
//!
//! for automorphisms `α` of `H` with `R^α = R`, `L^α = g^-1 L g`,
//! `S^α = g^-1 S`, and the copy-swapping maps
//!
//! `δ_{α,x,y}: h0 -> (x h^α)1, h1 -> (y h^α)0`
//!
//! with `R^α = x^-1 L x`, `L^α = y^-1 R y`, `S^α = y^-1 S^-1 x`. The set
//! of `σ` maps is the stabiliser of the vertex `1_0` in the normaliser;
//! the `δ` maps, when present, are the copy-swapping part and already
//! sweep out whole `R(H)`-cosets, so the normaliser has exactly
//! `|H| |F| + |I|` elements, where `F` and `I` are the two sets above.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::graphs::Graph;
use crate::group::{Elt, FiniteGroup, GroupAut, GroupDescriptor};
use crate::perm::{Perm, PermGroup};
use crate::{Error, Result};

/// A validated bi-Cayley datum `(H, R, L, S)`.
#[derive(Clone)]
pub struct BiCayley {
    group: Arc<FiniteGroup>,
    r: Vec<Elt>,
    l: Vec<Elt>,
    s: Vec<Elt>,
}

impl std::fmt::Debug for BiCayley {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BiCayley")
            .field("order", &self.group.order())
            .field("r", &self.r)
            .field("l", &self.l)
            .field("s", &self.s)
            .finish()
    }
}

/// Copy-preserving normaliser element `σ_{α,g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaMap {
    pub alpha: GroupAut,
    pub g: Elt,
}

/// Copy-swapping normaliser element `δ_{α,x,y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMap {
    pub alpha: GroupAut,
    pub x: Elt,
    pub y: Elt,
}

/// The normaliser of `R(H)` in the automorphism group of the graph.
pub struct Normaliser {
    /// All copy-preserving maps fixing `1_0` (the group `F`).
    pub sigma: Vec<SigmaMap>,
    /// All copy-swapping maps (the coset collection `I`).
    pub delta: Vec<DeltaMap>,
    /// The normaliser as a permutation group on the `2|H|` vertices.
    pub group: PermGroup,
}

impl Normaliser {
    /// `|H| |F| + |I|`, which the permutation group order must equal.
    pub fn expected_order(&self, h_order: usize) -> u128 {
        h_order as u128 * self.sigma.len() as u128 + self.delta.len() as u128
    }
}

/// Cayley-graph realisation produced when some `δ_{α,1,1}` with
/// `α^2 = 1` exists: the graph is then the Cayley graph of the
/// semidirect product `H ⋊ <α>` with connection set `R ∪ αS`.
pub struct CayleyRealization {
    /// The group `H ⋊ <α>`, of order `2|H|`; element `(h, i) = h·t^i`
    /// has index `i·|H| + h`, with `t` the adjoined involution.
    pub group: FiniteGroup,
    /// Inverse-closed, identity-free connection set.
    pub connection: Vec<Elt>,
    /// `vertex_map[v]` is the element of the new group corresponding to
    /// bi-Cayley vertex `v`.
    pub vertex_map: Vec<usize>,
    /// The involutory automorphism used.
    pub alpha: GroupAut,
}

/// Serialisable form of a bi-Cayley datum.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BiCayleyDescriptor {
    pub group: GroupDescriptor,
    pub r: Vec<usize>,
    pub l: Vec<usize>,
    pub s: Vec<usize>,
}

impl BiCayley {
    /// Validates and normalises (sorts, deduplicates) a bi-Cayley datum.
    pub fn new(
        group: Arc<FiniteGroup>,
        r: &[Elt],
        l: &[Elt],
        s: &[Elt],
    ) -> Result<BiCayley> {
        let n = group.order();
        let mut sets = [r.to_vec(), l.to_vec(), s.to_vec()];
        for (name, set) in ["R", "L", "S"].iter().zip(sets.iter_mut()) {
            set.sort_unstable();
            set.dedup();
            if set.iter().any(|&x| x >= n) {
                return Err(Error::InvalidTriple(format!(
                    "{name} contains an element out of range for group order {n}"
                )));
            }
        }
        let [r, l, s] = sets;
        for (name, set) in [("R", &r), ("L", &l)] {
            if set.contains(&0) {
                return Err(Error::InvalidTriple(format!(
                    "{name} must not contain the identity"
                )));
            }
            let mut inv: Vec<Elt> = set.iter().map(|&x| group.inv(x)).collect();
            inv.sort_unstable();
            if inv != *set {
                return Err(Error::InvalidTriple(format!(
                    "{name} must be closed under inversion"
                )));
            }
        }
        if r.len() != l.len() {
            return Err(Error::InvalidTriple(format!(
                "|R| = {} and |L| = {} must be equal",
                r.len(),
                l.len()
            )));
        }
        Ok(BiCayley { group, r, l, s })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn r(&self) -> &[Elt] {
        &self.r
    }

    pub fn l(&self) -> &[Elt] {
        &self.l
    }

    pub fn s(&self) -> &[Elt] {
        &self.s
    }

    /// Number of graph vertices, `2|H|`.
    pub fn vertex_count(&self) -> usize {
        2 * self.group.order()
    }

    /// Vertex index of `h0`.
    pub fn v0(&self, h: Elt) -> usize {
        h
    }

    /// Vertex index of `h1`.
    pub fn v1(&self, h: Elt) -> usize {
        self.group.order() + h
    }

    /// Common degree `|R| + |S|` (equal on both copies).
    pub fn valency(&self) -> usize {
        self.r.len() + self.s.len()
    }

    /// True if `1 ∈ S` (the normalised form).
    pub fn is_normalized(&self) -> bool {
        self.s.contains(&0)
    }

    /// True if `R ∪ L ∪ S` generates the group. For data with `1 ∈ S`
    /// this is equivalent to connectedness of the graph; without `1 ∈ S`
    /// a generating datum can still give a disconnected graph.
    pub fn generates_group(&self) -> bool {
        let mut gens = Vec::new();
        gens.extend_from_slice(&self.r);
        gens.extend_from_slice(&self.l);
        gens.extend_from_slice(&self.s);
        self.group.closure(&gens).len() == self.group.order()
    }

    /// Builds the bi-Cayley graph, vertices `h0 = h`, `h1 = |H| + h`.
    pub fn graph(&self) -> Graph {
        let n = self.group.order();
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut add = |a: usize, b: usize| {
            edges.insert((a.min(b), a.max(b)));
        };
        for h in 0..n {
            for &x in &self.r {
                add(self.v0(h), self.v0(self.group.mul(x, h)));
            }
            for &y in &self.l {
                add(self.v1(h), self.v1(self.group.mul(y, h)));
            }
            for &z in &self.s {
                add(self.v0(h), self.v1(self.group.mul(z, h)));
            }
        }
        let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
        Graph::from_edges(2 * n, &edge_list)
            .expect("validated bi-Cayley data produce a simple graph")
    }

    /// The datum `(R, g L g^-1, g S)`, isomorphic via `h0 -> h0`,
    /// `h1 -> (g h)1`.
    pub fn translated(&self, g: Elt) -> Result<BiCayley> {
        let gr = &self.group;
        let l: Vec<Elt> = self
            .l
            .iter()
            .map(|&y| gr.mul(gr.mul(g, y), gr.inv(g)))
            .collect();
        let s: Vec<Elt> = self.s.iter().map(|&z| gr.mul(g, z)).collect();
        BiCayley::new(self.group.clone(), &self.r, &l, &s)
    }

    /// The datum `(R^α, L^α, S^α)`, isomorphic via `h_i -> (h^α)_i`.
    pub fn with_automorphism_applied(&self, alpha: &GroupAut) -> Result<BiCayley> {
        BiCayley::new(
            self.group.clone(),
            &alpha.apply_set(&self.r),
            &alpha.apply_set(&self.l),
            &alpha.apply_set(&self.s),
        )
    }

    /// The datum `(L, R, S^-1)`, isomorphic via swapping the two copies.
    pub fn swapped(&self) -> Result<BiCayley> {
        let s_inv: Vec<Elt> = self.s.iter().map(|&z| self.group.inv(z)).collect();
        BiCayley::new(self.group.clone(), &self.l, &self.r, &s_inv)
    }

    /// A translate with `1 ∈ S` (unchanged if already normalised).
    pub fn normalized(&self) -> Result<BiCayley> {
        if self.is_normalized() || self.s.is_empty() {
            return Ok(self.clone());
        }
        self.translated(self.group.inv(self.s[0]))
    }

    /// Permutation of the vertices by `ρ_g: h_i -> (h g)_i`.
    pub fn right_translation(&self, g: Elt) -> Perm {
        let n = self.group.order();
        let mut image = vec![0u32; 2 * n];
        for h in 0..n {
            let hg = self.group.mul(h, g);
            image[self.v0(h)] = self.v0(hg) as u32;
            image[self.v1(h)] = self.v1(hg) as u32;
        }
        Perm::from_images(image).expect("right translation is a bijection")
    }

    /// Permutation of the vertices by `σ_{α,g}`.
    pub fn sigma_perm(&self, m: &SigmaMap) -> Perm {
        let n = self.group.order();
        let mut image = vec![0u32; 2 * n];
        for h in 0..n {
            let ha = m.alpha.apply(h);
            image[self.v0(h)] = self.v0(ha) as u32;
            image[self.v1(h)] = self.v1(self.group.mul(m.g, ha)) as u32;
        }
        Perm::from_images(image).expect("sigma map is a bijection")
    }

    /// Permutation of the vertices by `δ_{α,x,y}`.
    pub fn delta_perm(&self, m: &DeltaMap) -> Perm {
        let n = self.group.order();
        let mut image = vec![0u32; 2 * n];
        for h in 0..n {
            let ha = m.alpha.apply(h);
            image[self.v0(h)] = self.v1(self.group.mul(m.x, ha)) as u32;
            image[self.v1(h)] = self.v0(self.group.mul(m.y, ha)) as u32;
        }
        Perm::from_images(image).expect("delta map is a bijection")
    }

    /// All `σ_{α,g}` with `R^α = R`, `L^α = g^-1 L g`, `S^α = g^-1 S`.
    pub fn compute_f(&self) -> Result<Vec<SigmaMap>> {
        let gr = &self.group;
        let auts = gr.automorphisms()?;
        let mut out = Vec::new();
        for alpha in auts.iter() {
            if alpha.apply_set(&self.r) != self.r {
                continue;
            }
            let s_img = alpha.apply_set(&self.s);
            let l_img = alpha.apply_set(&self.l);
            let g_candidates: Vec<Elt> = if self.s.is_empty() {
                (0..gr.order()).collect()
            } else {
                // g S^α = S forces g in S t^-1 for any fixed t in S^α.
                let t_inv = gr.inv(s_img[0]);
                let mut c: Vec<Elt> = self.s.iter().map(|&z| gr.mul(z, t_inv)).collect();
                c.sort_unstable();
                c.dedup();
                c
            };
            for g in g_candidates {
                if left_translate(gr, g, &s_img) != self.s {
                    continue;
                }
                if conjugate_set(gr, &l_img, g) != self.l {
                    continue;
                }
                out.push(SigmaMap {
                    alpha: alpha.clone(),
                    g,
                });
            }
        }
        Ok(out)
    }

    /// All `δ_{α,x,y}` with `R^α = x^-1 L x`, `L^α = y^-1 R y`,
    /// `S^α = y^-1 S^-1 x`.
    pub fn compute_i(&self) -> Result<Vec<DeltaMap>> {
        let gr = &self.group;
        let auts = gr.automorphisms()?;
        let n = gr.order();
        let s_inv: Vec<Elt> = {
            let mut v: Vec<Elt> = self.s.iter().map(|&z| gr.inv(z)).collect();
            v.sort_unstable();
            v
        };
        // Quick obstruction: an automorphism preserves element orders, and
        // conjugation does too, so R and L must have equal order multisets.
        if order_multiset(gr, &self.r) != order_multiset(gr, &self.l) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for alpha in auts.iter() {
            let r_img = alpha.apply_set(&self.r);
            let l_img = alpha.apply_set(&self.l);
            let s_img = alpha.apply_set(&self.s);
            for x in 0..n {
                // R^α = x^-1 L x, i.e. conjugating R^α by x^-1 gives L.
                if conjugate_set(gr, &r_img, x) != self.l {
                    continue;
                }
                let y_candidates: Vec<Elt> = if self.s.is_empty() {
                    (0..n).collect()
                } else {
                    // y S^α = S^-1 x: y lies in S^-1 x t^-1 for t in S^α.
                    let t_inv = gr.inv(s_img[0]);
                    let mut c: Vec<Elt> = s_inv
                        .iter()
                        .map(|&z| gr.mul(gr.mul(z, x), t_inv))
                        .collect();
                    c.sort_unstable();
                    c.dedup();
                    c
                };
                let target: Vec<Elt> = {
                    let mut v: Vec<Elt> = s_inv.iter().map(|&z| gr.mul(z, x)).collect();
                    v.sort_unstable();
                    v
                };
                for y in y_candidates {
                    if left_translate(gr, y, &s_img) != target {
                        continue;
                    }
                    if conjugate_set(gr, &l_img, y) != self.r {
                        continue;
                    }
                    out.push(DeltaMap {
                        alpha: alpha.clone(),
                        x,
                        y,
                    });
                }
            }
        }
        Ok(out)
    }

    /// The normaliser of `R(H)` in the full automorphism group, assembled
    /// from `R(H)`, the `σ` maps, and the `δ` maps.
    pub fn normaliser(&self) -> Result<Normaliser> {
        let sigma = self.compute_f()?;
        let delta = self.compute_i()?;
        let mut gens: Vec<Perm> = self
            .group
            .generators()
            .iter()
            .map(|&g| self.right_translation(g))
            .collect();
        gens.extend(sigma.iter().map(|m| self.sigma_perm(m)));
        // One copy-swapping generator suffices: for any two swapping maps
        // d, d' the composite d'∘d^-1 preserves copies, so it already lies
        // in the subgroup generated by the translations and sigma maps.
        if let Some(m) = delta.first() {
            gens.push(self.delta_perm(m));
        }
        let group = PermGroup::from_generators(self.vertex_count(), &gens);
        Ok(Normaliser {
            sigma,
            delta,
            group,
        })
    }

    /// The full automorphism group of the graph.
    pub fn full_automorphism_group(&self) -> PermGroup {
        self.graph().automorphism_group()
    }

    /// Cayley realisation via a copy-swapping `δ_{α,1,1}` with
    /// `α^2 = 1`, when one exists: the graph is the Cayley graph of
    /// `H ⋊ <α>` with connection set `R ∪ αS`. The construction is
    /// verified edge-for-edge before being returned.
    pub fn cayley_realization(&self) -> Result<Option<CayleyRealization>> {
        let delta = self.compute_i()?;
        let Some(dm) = delta
            .iter()
            .find(|d| d.x == 0 && d.y == 0 && d.alpha.compose(&d.alpha).is_identity())
        else {
            return Ok(None);
        };
        let real = self.build_semidirect_realization(&dm.alpha)?;
        // Verify: the vertex map must carry the bi-Cayley edges exactly
        // onto the Cayley edges {k, t k}.
        let bicay = self.graph();
        let cay = cayley_graph(&real.group, &real.connection)?;
        if bicay.edge_count() != cay.edge_count() {
            return Err(Error::InvalidTriple(
                "cayley realisation failed the edge-count check".into(),
            ));
        }
        for (u, v) in bicay.edges() {
            if !cay.has_edge(real.vertex_map[u as usize], real.vertex_map[v as usize]) {
                return Err(Error::InvalidTriple(
                    "cayley realisation failed the edge check".into(),
                ));
            }
        }
        Ok(Some(real))
    }

    fn build_semidirect_realization(&self, alpha: &GroupAut) -> Result<CayleyRealization> {
        let gr = &self.group;
        let n = gr.order();
        let order = 2 * n;
        if order > crate::group::MAX_ORDER {
            return Err(Error::BoundExceeded(format!(
                "cayley realisation would need a group of order {order}, above the table bound"
            )));
        }
        // Element (h, i) = h t^i at index i n + h, with t the adjoined
        // involution inducing α: (h, i)(k, j) = (h · α^i(k), i + j).
        let idx = |h: Elt, i: usize| -> usize { i * n + h };
        let mut mul = vec![0u16; order * order];
        for i in 0..2 {
            for h in 0..n {
                for j in 0..2 {
                    for k in 0..n {
                        let ak = if i == 0 { k } else { alpha.apply(k) };
                        let prod = idx(gr.mul(h, ak), (i + j) % 2);
                        mul[idx(h, i) * order + idx(k, j)] = prod as u16;
                    }
                }
            }
        }
        let mut names: Vec<String> = Vec::with_capacity(order);
        for i in 0..2 {
            for h in 0..n {
                names.push(match (h, i) {
                    (_, 0) => gr.name(h).to_string(),
                    (0, _) => "t".to_string(),
                    _ => format!("{}t", gr.name(h)),
                });
            }
        }
        let mut generators: Vec<Elt> = gr.generators().to_vec();
        generators.push(idx(0, 1));
        let group = FiniteGroup::from_parts_unchecked(order, mul, generators, names)?;
        // Connection set R ∪ αS = {(x, 0)} ∪ {(z^α, 1)}.
        let mut connection: Vec<Elt> = self.r.iter().map(|&x| idx(x, 0)).collect();
        connection.extend(self.s.iter().map(|&z| idx(alpha.apply(z), 1)));
        connection.sort_unstable();
        // Vertex map: h0 -> (h, 0), h1 -> (h^α, 1).
        let mut vertex_map = vec![0usize; 2 * n];
        for h in 0..n {
            vertex_map[self.v0(h)] = idx(h, 0);
            vertex_map[self.v1(h)] = idx(alpha.apply(h), 1);
        }
        Ok(CayleyRealization {
            group,
            connection,
            vertex_map,
            alpha: alpha.clone(),
        })
    }

    pub fn descriptor(&self) -> BiCayleyDescriptor {
        BiCayleyDescriptor {
            group: self.group.to_descriptor(),
            r: self.r.clone(),
            l: self.l.clone(),
            s: self.s.clone(),
        }
    }

    pub fn from_descriptor(d: &BiCayleyDescriptor) -> Result<BiCayley> {
        let group = Arc::new(FiniteGroup::from_descriptor(&d.group)?);
        BiCayley::new(group, &d.r, &d.l, &d.s)
    }
}

/// The Cayley graph of a group: vertices are the elements, edges
/// `{g, s g}` for `s` in the connection set, which must be inverse-closed
/// and identity-free.
pub fn cayley_graph(group: &FiniteGroup, connection: &[Elt]) -> Result<Graph> {
    let n = group.order();
    let mut conn = connection.to_vec();
    conn.sort_unstable();
    conn.dedup();
    if conn.contains(&0) {
        return Err(Error::InvalidTriple(
            "connection set must not contain the identity".into(),
        ));
    }
    let mut inv: Vec<Elt> = conn.iter().map(|&x| group.inv(x)).collect();
    inv.sort_unstable();
    if inv != conn {
        return Err(Error::InvalidTriple(
            "connection set must be closed under inversion".into(),
        ));
    }
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for g in 0..n {
        for &s in &conn {
            let sg = group.mul(s, g);
            edges.insert((g.min(sg), g.max(sg)));
        }
    }
    let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
    Graph::from_edges(n, &edge_list)
}

/// `g X g^-1`, sorted.
fn conjugate_set(gr: &FiniteGroup, set: &[Elt], g: Elt) -> Vec<Elt> {
    let gi = gr.inv(g);
    let mut out: Vec<Elt> = set.iter().map(|&x| gr.mul(gr.mul(g, x), gi)).collect();
    out.sort_unstable();
    out
}

/// `g X`, sorted.
fn left_translate(gr: &FiniteGroup, g: Elt, set: &[Elt]) -> Vec<Elt> {
    let mut out: Vec<Elt> = set.iter().map(|&x| gr.mul(g, x)).collect();
    out.sort_unstable();
    out
}

fn order_multiset(gr: &FiniteGroup, set: &[Elt]) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&x| gr.element_order(x)).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5_petersen() -> BiCayley {
        let g = Arc::new(FiniteGroup::make_cyclic(5).unwrap());
        BiCayley::new(g, &[1, 4], &[2, 3], &[0]).unwrap()
    }

    fn four_cycle() -> BiCayley {
        let g = Arc::new(FiniteGroup::make_cyclic(2).unwrap());
        BiCayley::new(g, &[], &[], &[0, 1]).unwrap()
    }

    fn perm_is_graph_automorphism(g: &Graph, p: &Perm) -> bool {
        (0..g.vertex_count()).all(|u| {
            g.neighbors(u)
                .iter()
                .all(|&v| g.has_edge(p.apply(u), p.apply(v as usize)))
        })
    }

    #[test]
    fn validation_rules() {
        let g = Arc::new(FiniteGroup::make_cyclic(6).unwrap());
        // Identity in R.
        assert!(BiCayley::new(g.clone(), &[0, 3], &[3, 0], &[0]).is_err());
        // R not inverse-closed: {1} with 1^-1 = 5.
        assert!(BiCayley::new(g.clone(), &[1], &[3], &[0]).is_err());
        // Size mismatch.
        assert!(BiCayley::new(g.clone(), &[1, 5], &[], &[0]).is_err());
        // Out of range.
        assert!(BiCayley::new(g.clone(), &[], &[], &[9]).is_err());
        // Valid datum.
        let b = BiCayley::new(g, &[1, 5], &[2, 4], &[0, 3]).unwrap();
        assert_eq!(b.valency(), 4);
        assert_eq!(b.vertex_count(), 12);
        assert!(b.is_normalized());
    }

    #[test]
    fn petersen_arises_from_a_cyclic_datum() {
        let b = c5_petersen();
        let g = b.graph();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.regular_valency(), Some(3));
        assert_eq!(g.girth(), Some(5));
        assert!(g.is_connected());
        assert_eq!(g.automorphism_group().order(), 120);
        // Explicit Petersen for comparison.
        let mut edges = Vec::new();
        for i in 0..5usize {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        let pet = Graph::from_edges(10, &edges).unwrap();
        assert!(g.is_isomorphic(&pet));
    }

    #[test]
    fn sigma_and_delta_maps_are_graph_automorphisms() {
        for b in [
            c5_petersen(),
            four_cycle(),
            {
                let g = Arc::new(FiniteGroup::make_dihedral(6).unwrap());
                BiCayley::new(g, &[6], &[6], &[0, 1]).unwrap()
            },
            {
                let g = Arc::new(FiniteGroup::make_abelian2(4, 2).unwrap());
                BiCayley::new(g, &[], &[], &[0, 2, 1]).unwrap()
            },
        ] {
            let graph = b.graph();
            let f = b.compute_f().unwrap();
            let i = b.compute_i().unwrap();
            for m in &f {
                assert!(
                    perm_is_graph_automorphism(&graph, &b.sigma_perm(m)),
                    "sigma map failed on {b:?}"
                );
            }
            for m in &i {
                assert!(
                    perm_is_graph_automorphism(&graph, &b.delta_perm(m)),
                    "delta map failed on {b:?}"
                );
            }
            for g in 0..b.group().order() {
                assert!(perm_is_graph_automorphism(&graph, &b.right_translation(g)));
            }
        }
    }

    #[test]
    fn petersen_normaliser_is_the_frobenius_group_of_order_20() {
        let b = c5_petersen();
        let f = b.compute_f().unwrap();
        let i = b.compute_i().unwrap();
        // F: only α = ±1 fix R = {1,4} setwise, both with g = 1.
        assert_eq!(f.len(), 2);
        // I: α = ±2 swap R and L; x arbitrary (abelian), y = x.
        assert_eq!(i.len(), 10);
        assert!(i.iter().all(|d| d.x == d.y));
        let norm = b.normaliser().unwrap();
        assert_eq!(norm.group.order(), 20);
        assert_eq!(norm.group.order(), norm.expected_order(5));
        assert!(norm.group.is_transitive());
        // No δ_{α,1,1} has α^2 = 1 (±2 square to ∓1 ≠ 1 mod 5), so no
        // Cayley realisation arises; Petersen is famously not Cayley.
        assert!(b.cayley_realization().unwrap().is_none());
    }

    #[test]
    fn four_cycle_normaliser_is_the_full_dihedral_group() {
        let b = four_cycle();
        let g = b.graph();
        assert_eq!(g.girth(), Some(4));
        let f = b.compute_f().unwrap();
        let i = b.compute_i().unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(i.len(), 4);
        let norm = b.normaliser().unwrap();
        assert_eq!(norm.group.order(), 8);
        assert_eq!(norm.group.order(), norm.expected_order(2));
        assert_eq!(g.automorphism_group().order(), 8);
    }

    #[test]
    fn four_cycle_cayley_realization_is_the_klein_group() {
        let b = four_cycle();
        let real = b.cayley_realization().unwrap().unwrap();
        assert_eq!(real.group.order(), 4);
        // Two commuting involutions generate C2 x C2.
        assert!(real.group.is_abelian());
        assert_eq!(real.connection.len(), 2);
        for &t in &real.connection {
            assert_eq!(real.group.element_order(t), 2);
        }
        // Vertex map is a bijection.
        let mut seen = vec![false; 4];
        for &v in &real.vertex_map {
            assert!(!seen[v]);
            seen[v] = true;
        }
    }

    #[test]
    fn normaliser_order_formula_across_examples() {
        let cases: Vec<BiCayley> = vec![
            c5_petersen(),
            four_cycle(),
            {
                let g = Arc::new(FiniteGroup::make_cyclic(7).unwrap());
                BiCayley::new(g, &[], &[], &[0, 1, 3]).unwrap()
            },
            {
                let g = Arc::new(FiniteGroup::make_dihedral(4).unwrap());
                BiCayley::new(g, &[4], &[4], &[0, 1]).unwrap()
            },
            {
                let g = Arc::new(FiniteGroup::make_abelian2(3, 3).unwrap());
                BiCayley::new(g, &[], &[], &[0, 1, 3]).unwrap()
            },
        ];
        for b in cases {
            let norm = b.normaliser().unwrap();
            assert_eq!(
                norm.group.order(),
                norm.expected_order(b.group().order()),
                "normaliser order mismatch on {b:?}"
            );
            // The normaliser is a subgroup of the full automorphism group.
            let aut = b.graph().automorphism_group();
            for g in norm.group.generators() {
                assert!(aut.contains(g), "normaliser element outside Aut on {b:?}");
            }
        }
    }

    #[test]
    fn equivalence_operations_preserve_isomorphism_class() {
        let g = Arc::new(FiniteGroup::make_dihedral(5).unwrap());
        let b = BiCayley::new(g.clone(), &[5], &[7], &[0, 1]).unwrap();
        let base = b.graph();
        // Copy swap.
        let sw = b.swapped().unwrap();
        assert_eq!(sw.r(), b.l());
        assert!(base.is_isomorphic(&sw.graph()));
        // Group automorphism.
        let auts = g.automorphisms().unwrap();
        for alpha in auts.iter().take(6) {
            let moved = b.with_automorphism_applied(alpha).unwrap();
            assert!(base.is_isomorphic(&moved.graph()));
        }
        // Translation.
        for t in [1, 3, 6] {
            let tr = b.translated(t).unwrap();
            assert!(base.is_isomorphic(&tr.graph()));
        }
    }

    #[test]
    fn generation_versus_connectivity() {
        // S = {a} over C4 generates the group, yet the graph is a perfect
        // matching: generation does not imply connectedness when 1 ∉ S.
        let g = Arc::new(FiniteGroup::make_cyclic(4).unwrap());
        let b = BiCayley::new(g.clone(), &[], &[], &[1]).unwrap();
        assert!(b.generates_group());
        assert!(!b.graph().is_connected());
        assert!(!b.is_normalized());
        // Its normalised translate has S = {1}, which does not generate.
        let nb = b.normalized().unwrap();
        assert!(nb.is_normalized());
        assert!(!nb.generates_group());
        assert!(!nb.graph().is_connected());
        // With 1 ∈ S, generation and connectedness agree.
        let conn = BiCayley::new(g.clone(), &[], &[], &[0, 1]).unwrap();
        assert!(conn.generates_group());
        assert!(conn.graph().is_connected());
        let not_gen = BiCayley::new(g, &[], &[], &[0, 2]).unwrap();
        assert!(!not_gen.generates_group());
        assert!(!not_gen.graph().is_connected());
    }

    #[test]
    fn cayley_graph_construction() {
        let g = FiniteGroup::make_cyclic(6).unwrap();
        let c6 = cayley_graph(&g, &[1, 5]).unwrap();
        assert_eq!(c6.girth(), Some(6));
        assert_eq!(c6.regular_valency(), Some(2));
        assert!(cayley_graph(&g, &[0, 1]).is_err());
        assert!(cayley_graph(&g, &[1]).is_err());
        let d4 = FiniteGroup::make_dihedral(4).unwrap();
        // {b, ba^2, a^2} generates only the Klein subgroup {1, a^2, b,
        // ba^2}: two components.
        let k = cayley_graph(&d4, &[4, 6, 2]).unwrap();
        assert_eq!(k.regular_valency(), Some(3));
        assert!(!k.is_connected());
        // {b, ba, a^2} generates all of D4.
        let c = cayley_graph(&d4, &[4, 5, 2]).unwrap();
        assert_eq!(c.regular_valency(), Some(3));
        assert!(c.is_connected());
    }

    #[test]
    fn descriptor_round_trip() {
        let b = c5_petersen();
        let d = b.descriptor();
        let json = serde_json::to_string(&d).unwrap();
        let d2: BiCayleyDescriptor = serde_json::from_str(&json).unwrap();
        let b2 = BiCayley::from_descriptor(&d2).unwrap();
        assert_eq!(b2.r(), b.r());
        assert_eq!(b2.l(), b.l());
        assert_eq!(b2.s(), b.s());
        assert!(b.graph().is_isomorphic(&b2.graph()));
    }
}
