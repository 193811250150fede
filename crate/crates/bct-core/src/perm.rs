//! Permutations on `0..n` and permutation groups via stabiliser chains.
//!
//! Permutations are stored as image vectors and composed left to right:
//! `(p * q)(x) = q(p(x))`. The [`PermGroup`] structure holds a
//! Schreier–Sims stabiliser chain, giving exact group order, membership
//! testing, orbits, and pointwise/setwise stabilisers without listing all
//! elements.

use std::collections::VecDeque;
use std::fmt;

/// A permutation of `0..n`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    image: Vec<u32>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.image)
    }
}

impl Perm {
    /// Identity permutation on `n` points.
    pub fn identity(n: usize) -> Perm {
        Perm {
            image: (0..n as u32).collect(),
        }
    }

    /// Wraps an image vector, checking it is a bijection on `0..n`.
    pub fn from_images(image: Vec<u32>) -> Option<Perm> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v as usize >= n || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Perm { image })
    }

    /// Number of points.
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Image of a point.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    /// The underlying image vector.
    pub fn images(&self) -> &[u32] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Composition applying `self` first, then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            image: self.image.iter().map(|&v| other.image[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut image = vec![0u32; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize] = i as u32;
        }
        Perm { image }
    }

    /// Multiplicative order.
    pub fn order(&self) -> u128 {
        // lcm of cycle lengths.
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord: u128 = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len: u128 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            ord = lcm_u128(ord, len);
        }
        ord
    }

    /// Sorted multiset of cycle lengths (including fixed points).
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// Cycle notation, fixed points omitted; the identity is `()`.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&x.to_string());
                first = false;
                x = self.apply(x);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    a / gcd_u128(a, b) * b
}

/// One level of a stabiliser chain: a base point and its Schreier tree.
#[derive(Clone)]
struct ChainLevel {
    base: usize,
    /// `transversal[x]` maps the base point to `x` for `x` in the orbit.
    transversal: Vec<Option<Perm>>,
    /// Strong generators for the stabiliser of the base prefix up to and
    /// including this level's predecessors.
    generators: Vec<Perm>,
}

/// A permutation group with a Schreier–Sims stabiliser chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: Vec<ChainLevel>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl PermGroup {
    /// Builds the stabiliser chain for the group generated by `gens`.
    pub fn from_generators(degree: usize, gens: &[Perm]) -> PermGroup {
        PermGroup::with_base_prefix(degree, gens, &[])
    }

    /// Builds a chain whose base starts with the given points (useful for
    /// reading off point stabilisers directly).
    pub fn with_base_prefix(degree: usize, gens: &[Perm], base_prefix: &[usize]) -> PermGroup {
        let generators: Vec<Perm> = gens
            .iter()
            .filter(|p| !p.is_identity())
            .cloned()
            .collect();
        let mut group = PermGroup {
            degree,
            generators: generators.clone(),
            chain: Vec::new(),
        };
        group.build_chain(base_prefix);
        group
    }

    fn build_chain(&mut self, base_prefix: &[usize]) {
        self.chain.clear();
        let mut level_gens = self.generators.clone();
        let mut prefix_iter = base_prefix.iter().copied();
        loop {
            // Points moved by the current stabiliser generators.
            if level_gens.is_empty() {
                break;
            }
            let base = prefix_iter
                .next()
                .or_else(|| {
                    (0..self.degree).find(|&x| level_gens.iter().any(|g| g.apply(x) != x))
                })
                .unwrap_or(usize::MAX);
            if base == usize::MAX {
                break;
            }
            // A prescribed base point may be fixed by everything; record a
            // trivial level so stabiliser prefixes stay aligned.
            let level = build_level(self.degree, base, &level_gens);
            let stab_gens = schreier_generators(&level, &level_gens);
            self.chain.push(level);
            level_gens = stab_gens;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generators the group was built from (identity dropped).
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Exact group order as the product of orbit sizes along the chain.
    pub fn order(&self) -> u128 {
        self.chain
            .iter()
            .map(|l| l.transversal.iter().filter(|t| t.is_some()).count() as u128)
            .product()
    }

    /// Membership test by sifting through the chain.
    pub fn contains(&self, p: &Perm) -> bool {
        self.sift(p).is_identity()
    }

    /// Sifts `p` through the chain, returning the residue (identity iff
    /// `p` is in the group).
    pub fn sift(&self, p: &Perm) -> Perm {
        let mut cur = p.clone();
        for level in &self.chain {
            let img = cur.apply(level.base);
            match &level.transversal[img] {
                Some(t) => cur = cur.compose(&t.inverse()),
                None => return cur,
            }
        }
        cur
    }

    /// Orbit of a point under the group.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        orbit_of(self.degree, &self.generators, x)
    }

    /// All orbits, each sorted, ordered by minimum element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if seen[x] {
                continue;
            }
            let orb = self.orbit(x);
            for &y in &orb {
                seen[y] = true;
            }
            out.push(orb);
        }
        out
    }

    /// True if the group moves every point within one orbit containing
    /// all of `0..degree`.
    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).len() == self.degree
    }

    /// Generators of the pointwise stabiliser of the given points.
    ///
    /// Rebuilds the chain with the points as base prefix and returns the
    /// strong generators below that prefix.
    pub fn pointwise_stabiliser(&self, points: &[usize]) -> PermGroup {
        let chain = PermGroup::with_base_prefix(self.degree, &self.generators, points);
        // Collect strong generators fixing every listed point.
        let mut gens: Vec<Perm> = Vec::new();
        'outer: for level in &chain.chain {
            for g in &level.generators {
                if points.iter().all(|&p| g.apply(p) == p) {
                    gens.push(g.clone());
                }
            }
            // Levels are nested; once past the prefix all generators fix
            // the points, but scanning every level stays correct.
            if false {
                break 'outer;
            }
        }
        gens.sort_unstable();
        gens.dedup();
        PermGroup::from_generators(self.degree, &gens)
    }

    /// Every element of the group, enumerated via the transversals.
    ///
    /// Only sensible for small orders; callers should check
    /// [`PermGroup::order`] first.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.chain.iter().rev() {
            let mut next = Vec::new();
            for t in level.transversal.iter().flatten() {
                for e in &out {
                    next.push(e.compose(t));
                }
            }
            out = next;
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn build_level(degree: usize, base: usize, gens: &[Perm]) -> ChainLevel {
    let mut transversal: Vec<Option<Perm>> = vec![None; degree];
    transversal[base] = Some(Perm::identity(degree));
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        let tx = transversal[x].clone().unwrap();
        for g in gens {
            let y = g.apply(x);
            if transversal[y].is_none() {
                transversal[y] = Some(tx.compose(g));
                queue.push_back(y);
            }
        }
    }
    ChainLevel {
        base,
        transversal,
        generators: gens.to_vec(),
    }
}

/// Schreier generators of the stabiliser of `level.base`, deduplicated.
fn schreier_generators(level: &ChainLevel, gens: &[Perm]) -> Vec<Perm> {
    let mut out = Vec::new();
    for (x, t) in level.transversal.iter().enumerate() {
        let Some(tx) = t else { continue };
        for g in gens {
            let y = g.apply(x);
            let ty = level.transversal[y]
                .as_ref()
                .expect("orbit is closed under generators");
            let s = tx.compose(g).compose(&ty.inverse());
            if !s.is_identity() {
                out.push(s);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    // Reduce redundancy: keep only generators that enlarge the group.
    reduce_generators(level.transversal.len(), out)
}

/// Greedy reduction: incrementally keep generators not already produced
/// by the kept set (tested with a throwaway chain).
fn reduce_generators(degree: usize, gens: Vec<Perm>) -> Vec<Perm> {
    if gens.len() <= 4 {
        return gens;
    }
    let mut kept: Vec<Perm> = Vec::new();
    let mut known: Option<PermGroup> = None;
    for g in gens {
        let inside = match &known {
            None => false,
            Some(k) => k.contains(&g),
        };
        if !inside {
            kept.push(g);
            known = Some(PermGroup::from_generators(degree, &kept));
        }
    }
    kept
}

fn orbit_of(degree: usize, gens: &[Perm], x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut orb = vec![x];
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w = g.apply(v);
            if !seen[w] {
                seen[w] = true;
                orb.push(w);
                queue.push_back(w);
            }
        }
    }
    orb.sort_unstable();
    orb
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, pairs: &[(usize, usize)]) -> Perm {
        let mut image: Vec<u32> = (0..n as u32).collect();
        for &(a, b) in pairs {
            image[a] = b as u32;
        }
        Perm::from_images(image).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        let p = cyc(3, &[(0, 1), (1, 0)]); // swap 0,1
        let q = cyc(3, &[(1, 2), (2, 1)]); // swap 1,2
        let pq = p.compose(&q);
        // x=0: p sends 0->1, q sends 1->2.
        assert_eq!(pq.apply(0), 2);
        assert_eq!(pq.apply(1), 0);
        assert_eq!(pq.apply(2), 1);
        assert_eq!(pq.order(), 3);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn cycle_string_and_order() {
        let mut image: Vec<u32> = (0..6).collect();
        image.rotate_left(1); // 6-cycle
        let p = Perm::from_images(image).unwrap();
        assert_eq!(p.cycle_string(), "(0 1 2 3 4 5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::identity(4).cycle_string(), "()");
        assert!(Perm::from_images(vec![0, 0, 1]).is_none());
    }

    #[test]
    fn symmetric_group_order() {
        // S_6 generated by a transposition and a 6-cycle.
        let n = 6;
        let mut rot: Vec<u32> = (0..n as u32).collect();
        rot.rotate_left(1);
        let c = Perm::from_images(rot).unwrap();
        let t = cyc(n, &[(0, 1), (1, 0)]);
        let g = PermGroup::from_generators(n, &[c, t]);
        assert_eq!(g.order(), 720);
        assert!(g.is_transitive());
        assert_eq!(g.orbits().len(), 1);
    }

    #[test]
    fn dihedral_as_permutation_group() {
        // D_7 on 7 points: rotation and reflection.
        let n = 7;
        let mut rot: Vec<u32> = (0..n as u32).collect();
        rot.rotate_left(1);
        let refl: Vec<u32> = (0..n as u32).map(|x| (n as u32 - x) % n as u32).collect();
        let g = PermGroup::from_generators(
            n,
            &[
                Perm::from_images(rot).unwrap(),
                Perm::from_images(refl).unwrap(),
            ],
        );
        assert_eq!(g.order(), 14);
        // Stabiliser of point 0 is generated by the reflection: order 2.
        let stab = g.pointwise_stabiliser(&[0]);
        assert_eq!(stab.order(), 2);
        // Stabiliser of 0 and 1 is trivial.
        let stab2 = g.pointwise_stabiliser(&[0, 1]);
        assert_eq!(stab2.order(), 1);
    }

    #[test]
    fn membership_and_sifting() {
        let n = 5;
        let mut rot: Vec<u32> = (0..n as u32).collect();
        rot.rotate_left(1);
        let c = Perm::from_images(rot).unwrap();
        // A_5 in its 3-cycle generators vs the full cycle + transposition.
        let g = PermGroup::from_generators(n, &[c.clone()]);
        assert_eq!(g.order(), 5);
        assert!(g.contains(&c.compose(&c)));
        let t = cyc(n, &[(0, 1), (1, 0)]);
        assert!(!g.contains(&t));
    }

    #[test]
    fn elements_enumeration_matches_order() {
        let n = 4;
        let mut rot: Vec<u32> = (0..n as u32).collect();
        rot.rotate_left(1);
        let c = Perm::from_images(rot).unwrap();
        let t = cyc(n, &[(0, 1), (1, 0)]);
        let g = PermGroup::from_generators(n, &[c, t]);
        assert_eq!(g.order(), 24);
        let elems = g.elements();
        assert_eq!(elems.len(), 24);
        for e in &elems {
            assert!(g.contains(e));
        }
    }

    #[test]
    fn trivial_and_prefix_base_groups() {
        let g = PermGroup::from_generators(5, &[Perm::identity(5)]);
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Perm::identity(5)));
        assert_eq!(g.orbits().len(), 5);
        // Base prefix on points fixed by the whole group.
        let t = cyc(4, &[(2, 3), (3, 2)]);
        let h = PermGroup::with_base_prefix(4, &[t], &[0, 1]);
        assert_eq!(h.order(), 2);
        let stab = h.pointwise_stabiliser(&[0, 1]);
        assert_eq!(stab.order(), 2);
    }
}
