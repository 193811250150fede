//! Parametrised graph families, reference constructions, and an
//! exhaustive enumeration of bi-Cayley data over a fixed host group.
//!
//! The families:
//!
//! * [`gamma_abelian`]`(m, n, λ)` — trivalent bipartite graphs over
//!   `C_{nm} × C_m` with `S = {1, x, x^λ y}`. Girth 6 for `nm² > 4`;
//!   the two smaller members are the complete bipartite graph on 3+3
//!   vertices and the cube.
//! * [`gamma_dihedral`]`(n, λ, k)` — `2k`-valent graphs over the
//!   dihedral group of order `2n`, with connection exponents derived
//!   from the geometric sums `c_i = 1 + λ² + … + λ^{2i}`.
//! * [`g_p`]`(p)` / [`h_p`]`(p)` — tetravalent graphs over the
//!   metacyclic group `⟨a, b | a^{p²} = b^p = 1, b⁻¹ab = a^{1+p}⟩` of
//!   order `p³`; the first family is half-arc-transitive and Cayley,
//!   the second half-arc-transitive and not Cayley.
//! * [`example_c28`] — hexavalent half-arc-transitive graph on 56
//!   vertices over `C₂₈`, with full automorphism group of order 168;
//!   weakly metacirculant but not metacirculant.
//! * [`example_54`] — tetravalent graph on 54 vertices whose full
//!   automorphism group (order 1296) is 2-arc-transitive and does not
//!   normalise the translation group.
//!
//! Alongside them, independent reference constructions used as oracles
//! in tests — [`lcf_graph`], [`generalized_petersen`],
//! [`tetracirculant`] — a small named [`corpus`], and
//! [`enumerate_triples`], which streams every connection triple over a
//! host group exactly once up to relabelling automorphisms and the
//! `(R, L, S) → (L, R, S⁻¹)` swap.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bicayley::{BiCayley, SigmaMap};
use crate::graphs::Graph;
use crate::group::{
    is_prime, mod_inverse, multiplicative_order, units, Elt, FiniteGroup, GroupAut,
};
use crate::{Error, Result};

// ---------------------------------------------------------------------
// Trivalent family over C_{nm} x C_m
// ---------------------------------------------------------------------

/// Parameters of one member of the abelian-host trivalent family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianFamilyParams {
    pub m: usize,
    pub n: usize,
    pub lambda: usize,
}

/// The residues `λ` making `(m, n, λ)` valid for [`gamma_abelian`]:
/// `λ = 0` when `n = 1`, otherwise the units of `Z_n` satisfying
/// `λ² − λ + 1 ≡ 0 (mod n)` (the primitive sixth roots of unity).
pub fn abelian_lambdas(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    units(n)
        .into_iter()
        .filter(|&l| (l * l + 1 - l) % n == 0)
        .collect()
}

/// Trivalent bi-Cayley graph over `H = C_{nm} × C_m` with the
/// one-matching datum `R = L = ∅`, `S = {1, x, x^λ y}`, where `x` and
/// `y` generate the two factors.
///
/// Valid parameters need `nm² ≥ 3` and `λ` drawn from
/// [`abelian_lambdas`]`(n)`. The graph is connected, bipartite, of
/// order `2nm²`.
pub fn gamma_abelian(m: usize, n: usize, lambda: usize) -> Result<BiCayley> {
    if m < 1 || n < 1 || n * m * m < 3 {
        return Err(Error::InvalidParameter(format!(
            "gamma_abelian needs m, n >= 1 with n*m^2 >= 3, got m = {m}, n = {n}"
        )));
    }
    if !abelian_lambdas(n).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "lambda = {lambda} is invalid for n = {n}: need a unit with \
             lambda^2 - lambda + 1 = 0 mod n (lambda = 0 for n = 1)"
        )));
    }
    let h = Arc::new(FiniteGroup::make_abelian2(n * m, m)?);
    // Element (i, j) = x^i y^j has index i*m + j; x^λ·y is (λ, 1 mod m).
    let s = [0, m, lambda * m + 1 % m];
    BiCayley::new(h, &[], &[], &s)
}

/// All valid parameter triples with `nm² ≤ max_nm2`, ordered by
/// `(nm², m, n, λ)`. The member for `(m, n, λ)` has `2nm²` vertices.
pub fn abelian_atlas(max_nm2: usize) -> Vec<AbelianFamilyParams> {
    let mut out = Vec::new();
    let mut m = 1usize;
    while m * m <= max_nm2 {
        for n in 1..=max_nm2 / (m * m) {
            if n * m * m < 3 {
                continue;
            }
            for lambda in abelian_lambdas(n) {
                out.push(AbelianFamilyParams { m, n, lambda });
            }
        }
        m += 1;
    }
    out.sort_by_key(|f| (f.n * f.m * f.m, f.m, f.n, f.lambda));
    out
}

// ---------------------------------------------------------------------
// 2k-valent family over the dihedral group
// ---------------------------------------------------------------------

/// Parameters of one member of the dihedral-host family, with the
/// derived exponent sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralFamilyParams {
    pub n: usize,
    pub lambda: usize,
    pub k: usize,
    /// `c_i = 1 + λ² + λ⁴ + … + λ^{2i} mod n`; validity requires
    /// `c_{k−1} = 0`, which puts the identity in the connection set.
    pub c: Vec<usize>,
    /// `d_i = λ·c_i mod n`.
    pub d: Vec<usize>,
}

/// Validates `(n, λ, k)` for [`gamma_dihedral`] and derives the
/// exponent sequences. Valid parameters need `n ≥ 5`, `k ≥ 2`, `λ` of
/// multiplicative order exactly `2k` mod `n`, `c_{k−1} ≡ 0 (mod n)`,
/// and pairwise distinct `c_i`.
pub fn dihedral_family(n: usize, lambda: usize, k: usize) -> Result<DihedralFamilyParams> {
    if n < 5 || k < 2 {
        return Err(Error::InvalidParameter(format!(
            "dihedral family needs n >= 5 and k >= 2, got n = {n}, k = {k}"
        )));
    }
    match multiplicative_order(lambda, n) {
        Some(ord) if ord == 2 * k => {}
        Some(ord) => {
            return Err(Error::InvalidParameter(format!(
                "lambda = {lambda} has multiplicative order {ord} mod {n}, need exactly 2k = {}",
                2 * k
            )));
        }
        None => {
            return Err(Error::InvalidParameter(format!(
                "lambda = {lambda} is not a unit mod {n}"
            )));
        }
    }
    let mut c = Vec::with_capacity(k);
    let mut acc = 1usize;
    let lam2 = lambda * lambda % n;
    for _ in 0..k {
        c.push(acc % n);
        acc = (acc * lam2 + 1) % n;
    }
    if c[k - 1] != 0 {
        return Err(Error::InvalidParameter(format!(
            "1 + lambda^2 + ... + lambda^(2(k-1)) = {} mod {n}, need 0 (lambda = {lambda}, k = {k})",
            c[k - 1]
        )));
    }
    let mut sorted = c.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return Err(Error::InvalidParameter(format!(
            "the exponents c_i are not pairwise distinct mod {n} (lambda = {lambda}, k = {k})"
        )));
    }
    let d = c.iter().map(|&ci| ci * lambda % n).collect();
    Ok(DihedralFamilyParams { n, lambda, k, c, d })
}

/// All `(λ, k)` pairs valid for [`gamma_dihedral`] at this `n`,
/// ascending in `λ`.
pub fn dihedral_lambdas(n: usize) -> Vec<(usize, usize)> {
    if n < 5 {
        return Vec::new();
    }
    units(n)
        .into_iter()
        .filter_map(|l| {
            let ord = multiplicative_order(l, n)?;
            if ord % 2 != 0 || ord < 4 {
                return None;
            }
            let k = ord / 2;
            dihedral_family(n, l, k).ok().map(|_| (l, k))
        })
        .collect()
}

/// `2k`-valent bi-Cayley graph over the dihedral group `D_n` with the
/// one-matching datum `S = {a^{c_i} : i < k} ∪ {b·a^{d_i} : i < k}`.
///
/// Every member is edge-transitive already under the normaliser of the
/// translations: some copy-preserving normaliser element cycles the
/// `2k` neighbours of the vertex `1₀` (see [`neighbourhood_rotation`]).
/// Members with `λ^k ≡ −1 (mod n)` are arc-transitive for even `k` and
/// semisymmetric for odd `k`; members with `k = 3` and `λ³ ≢ −1` are
/// semisymmetric with the automorphism group acting regularly on edges.
pub fn gamma_dihedral(n: usize, lambda: usize, k: usize) -> Result<BiCayley> {
    let params = dihedral_family(n, lambda, k)?;
    let h = Arc::new(FiniteGroup::make_dihedral(n)?);
    // Rotation a^j has index j, reflection b·a^j has index n + j.
    let mut s: Vec<Elt> = params.c.clone();
    s.extend(params.d.iter().map(|&di| n + di));
    BiCayley::new(h, &[], &[], &s)
}

/// A copy-preserving normaliser element fixing the vertex `1₀` and
/// cycling its whole neighbourhood in a single cycle, when one exists.
/// Its existence certifies that the normaliser of the translations is
/// transitive on the edges at `1₀`, hence edge-transitive when the
/// graph is connected.
pub fn neighbourhood_rotation(b: &BiCayley) -> Result<Option<SigmaMap>> {
    let s = b.s();
    if s.is_empty() {
        return Ok(None);
    }
    let gr = b.group();
    for m in b.compute_f()? {
        // sigma maps the neighbour z₁ of 1₀ to (g·z^α)₁.
        let step = |z: Elt| gr.mul(m.g, m.alpha.apply(z));
        let mut cur = step(s[0]);
        let mut cycle_len = 1usize;
        while cur != s[0] && cycle_len <= s.len() {
            cur = step(cur);
            cycle_len += 1;
        }
        if cycle_len == s.len() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------
// Tetravalent families over the metacyclic group of order p^3
// ---------------------------------------------------------------------

/// Parameters of the metacyclic-host tetravalent families: host
/// `⟨a, b | a^{p²} = b^p = 1, b⁻¹ab = a^{1+p}⟩` and connection set
/// `S = {1, a^u, a^v b², a^w b²}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetacyclicFamilyParams {
    pub p: usize,
    pub u: usize,
    pub v: usize,
    pub w: usize,
    /// The square root of `−1 mod p²` behind `v` and `w`, for the
    /// family that uses one.
    pub lambda: Option<usize>,
}

/// Builds the bi-Cayley graph of a metacyclic parameter set.
pub fn metacyclic_family(params: &MetacyclicFamilyParams) -> Result<BiCayley> {
    let p = params.p;
    let h = Arc::new(FiniteGroup::make_metacyclic(p * p, p, 1 + p)?);
    // Element a^i b^j has index i*p + j.
    let s = [0, params.u * p, params.v * p + 2, params.w * p + 2];
    BiCayley::new(h, &[], &[], &s)
}

/// Parameters `{1, a², a^p b², a^{2−p} b²}` for [`g_p`].
pub fn g_p_params(p: usize) -> Result<MetacyclicFamilyParams> {
    if !is_prime(p) || p < 3 {
        return Err(Error::InvalidParameter(format!(
            "g_p needs an odd prime, got {p}"
        )));
    }
    let m = p * p;
    Ok(MetacyclicFamilyParams {
        p,
        u: 2,
        v: p,
        w: (m + 2 - p) % m,
        lambda: None,
    })
}

/// Tetravalent bi-Cayley graph over the metacyclic group of order `p³`
/// with `S = {1, a², a^p b², a^{2−p} b²}` (`p` an odd prime).
/// Half-arc-transitive, and a Cayley graph.
pub fn g_p(p: usize) -> Result<BiCayley> {
    metacyclic_family(&g_p_params(p)?)
}

/// Parameters `{1, a, a^s b², a^{1−s} b²}` for [`h_p`], where `λ` is
/// the least square root of `−1 mod p²` and `s = (1 + λ − λp)/2 mod p²`.
pub fn h_p_params(p: usize) -> Result<MetacyclicFamilyParams> {
    if !is_prime(p) || p % 4 != 1 {
        return Err(Error::InvalidParameter(format!(
            "h_p needs a prime p = 1 mod 4, got {p}"
        )));
    }
    let m = p * p;
    let lambda = (2..m)
        .find(|&x| x * x % m == m - 1)
        .expect("p = 1 mod 4 guarantees a square root of -1 mod p^2");
    let inv2 = mod_inverse(2, m).expect("2 is a unit mod an odd prime power");
    let s = (1 + lambda + m - lambda * p % m) % m * inv2 % m;
    Ok(MetacyclicFamilyParams {
        p,
        u: 1,
        v: s,
        w: (m + 1 - s) % m,
        lambda: Some(lambda),
    })
}

/// Tetravalent bi-Cayley graph over the metacyclic group of order `p³`
/// with `S = {1, a, a^s b², a^{1−s} b²}` for `p ≡ 1 (mod 4)`, where
/// `2s ≡ 1 + λ − λp (mod p²)` and `λ² ≡ −1 (mod p²)`.
/// Half-arc-transitive, and not a Cayley graph.
pub fn h_p(p: usize) -> Result<BiCayley> {
    metacyclic_family(&h_p_params(p)?)
}

// ---------------------------------------------------------------------
// Two individual examples
// ---------------------------------------------------------------------

/// Hexavalent bi-Cayley graph on 56 vertices over `C₂₈`:
/// `R = {a, a²⁷}`, `L = {a¹³, a¹⁵}`, `S = {1, a, a⁶, a¹⁹}`.
///
/// Half-arc-transitive with full automorphism group of order 168. The
/// graph admits a transitive metacyclic group of automorphisms (it is
/// weakly metacirculant) but no semiregular cyclic subgroup with a
/// complementing cyclic quotient (it is not metacirculant).
pub fn example_c28() -> Result<BiCayley> {
    let h = Arc::new(FiniteGroup::make_cyclic(28)?);
    BiCayley::new(h, &[1, 27], &[13, 15], &[0, 1, 6, 19])
}

/// Tetravalent bi-Cayley graph on 54 vertices over the metacyclic
/// group `⟨a, b | a⁹ = b³ = 1, b⁻¹ab = a⁴⟩`, with
/// `S = {1, a, ab, a⁴b²}`.
///
/// Its full automorphism group has order 1296 and is 2-arc-transitive,
/// and the translation group is not normal in it: the normaliser is a
/// proper subgroup, so no amount of group-side analysis of the datum
/// sees the full symmetry.
pub fn example_54() -> Result<BiCayley> {
    let h = Arc::new(FiniteGroup::make_metacyclic(9, 3, 4)?);
    BiCayley::new(h, &[], &[], &[0, 3, 4, 14])
}

/// The Petersen graph as a bi-Cayley graph over `C₅`:
/// `R = {a, a⁴}` (outer cycle), `L = {a², a³}` (inner star),
/// `S = {1}` (spokes). The construction is verified on the spot:
/// order 10, 3-regular, girth 5, automorphism group of order 120.
pub fn petersen() -> Result<BiCayley> {
    let h = Arc::new(FiniteGroup::make_cyclic(5)?);
    let b = BiCayley::new(h, &[1, 4], &[2, 3], &[0])?;
    let g = b.graph();
    assert_eq!(g.vertex_count(), 10);
    assert_eq!(g.regular_valency(), Some(3));
    assert_eq!(g.girth(), Some(5));
    assert_eq!(g.automorphism_group().order(), 120);
    Ok(b)
}

// ---------------------------------------------------------------------
// Independent reference constructions
// ---------------------------------------------------------------------

/// Builds the cubic graph of an LCF code: `shifts.len() * repeats`
/// vertices on a Hamiltonian cycle, plus the chord `i → i + shift[i]`.
/// The shift pattern must pair up (the chord partner's shift must point
/// back), so that the result is 3-regular.
pub fn lcf_graph(shifts: &[i64], repeats: usize) -> Result<Graph> {
    let n = shifts.len() * repeats;
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "lcf_graph needs at least 3 vertices, got {} shifts * {} repeats",
            shifts.len(),
            repeats
        )));
    }
    let shift_at = |i: usize| shifts[i % shifts.len()];
    let target = |i: usize| (i as i64 + shift_at(i)).rem_euclid(n as i64) as usize;
    for i in 0..n {
        let j = target(i);
        if j == i || j == (i + 1) % n || (j + 1) % n == i {
            return Err(Error::InvalidParameter(format!(
                "lcf_graph: shift {} at vertex {i} hits the Hamiltonian cycle",
                shift_at(i)
            )));
        }
        if target(j) != i {
            return Err(Error::InvalidParameter(format!(
                "lcf_graph: chords do not pair up at vertex {i} (shift {})",
                shift_at(i)
            )));
        }
    }
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(3 * n / 2);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        let j = target(i);
        if i < j {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges)
}

/// The Heawood graph (14 vertices, girth 6), from its LCF code.
pub fn heawood_graph() -> Graph {
    lcf_graph(&[5, -5], 7).expect("the Heawood LCF code is valid")
}

/// The Pappus graph (18 vertices, girth 6), from its LCF code.
pub fn pappus_graph() -> Graph {
    lcf_graph(&[5, 7, -7, 7, -7, -5], 3).expect("the Pappus LCF code is valid")
}

/// Generalised Petersen graph: outer cycle `u_0 … u_{n−1}`, inner
/// vertices `v_j` joined as `v_j — v_{j+k}`, and spokes `u_j — v_j`.
/// Needs `n ≥ 3` and `1 ≤ k < n/2`. Outer vertex `j` has index `j`,
/// inner vertex `j` index `n + j`.
pub fn generalized_petersen(n: usize, k: usize) -> Result<Graph> {
    if n < 3 || k < 1 || 2 * k >= n {
        return Err(Error::InvalidParameter(format!(
            "generalized_petersen needs n >= 3 and 1 <= k < n/2, got ({n}, {k})"
        )));
    }
    let mut edges = Vec::with_capacity(3 * n);
    for j in 0..n {
        edges.push((j, (j + 1) % n));
        edges.push((j, n + j));
        edges.push((n + j, n + (j + k) % n));
    }
    Graph::from_edges(2 * n, &edges)
}

/// Graph on `Z_n × Z₂ × Z₂` where `(x, 0, i)` and `(y, 1, j)` are
/// adjacent exactly when `y − x mod n` lies in `sets[i][j]`. Vertex
/// `(x, s, t)` has index `s·2n + t·n + x`. All four difference sets
/// must be non-empty, with members reduced mod `n`.
///
/// With `sets[0][0] = sets[0][1]` and `sets[1][0] = sets[1][1]` the
/// vertices `(x, 0, 0)` and `(x, 0, 1)` share their entire
/// neighbourhood, so such graphs are never worthy.
pub fn tetracirculant(n: usize, sets: [&[usize]; 4]) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "tetracirculant needs n >= 1".into(),
        ));
    }
    for (idx, set) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "tetracirculant difference set S_{}{} is empty",
                idx / 2,
                idx % 2
            )));
        }
        if set.iter().any(|&d| d >= n) {
            return Err(Error::InvalidParameter(format!(
                "tetracirculant difference set S_{}{} has a member >= n = {n}",
                idx / 2,
                idx % 2
            )));
        }
    }
    let index = |x: usize, s: usize, t: usize| s * 2 * n + t * n + x;
    let mut edges = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for &d in sets[2 * i + j] {
                for x in 0..n {
                    edges.push((index(x, 0, i), index((x + d) % n, 1, j)));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(4 * n, &edges)
}

// ---------------------------------------------------------------------
// Named corpus
// ---------------------------------------------------------------------

/// A small named corpus of bi-Cayley data spanning the symmetry
/// spectrum (arc-transitive, half-arc-transitive, semisymmetric, and
/// asymmetric-on-edges members; matching-free and matched data; cyclic,
/// abelian, dihedral, and metacyclic hosts). Shared by the property
/// tests; names are unique and stable.
pub fn corpus() -> Vec<(String, BiCayley)> {
    fn datum(h: FiniteGroup, r: &[Elt], l: &[Elt], s: &[Elt]) -> BiCayley {
        BiCayley::new(Arc::new(h), r, l, s).expect("corpus data are valid")
    }
    let cyclic = |n: usize| FiniteGroup::make_cyclic(n).expect("small cyclic group");
    let must = |b: Result<BiCayley>| b.expect("corpus members are valid");
    vec![
        ("four-cycle".into(), datum(cyclic(2), &[], &[], &[0, 1])),
        ("complete-4".into(), datum(cyclic(2), &[1], &[1], &[0, 1])),
        ("hexagon".into(), datum(cyclic(3), &[], &[], &[0, 1])),
        ("prism-3".into(), datum(cyclic(3), &[1, 2], &[1, 2], &[0])),
        ("complete-bipartite-3-3".into(), must(gamma_abelian(1, 3, 2))),
        ("cube".into(), must(gamma_abelian(2, 1, 0))),
        ("petersen".into(), must(petersen())),
        ("heawood".into(), must(gamma_abelian(1, 7, 3))),
        ("pappus".into(), must(gamma_abelian(3, 1, 0))),
        (
            "moebius-kantor".into(),
            datum(cyclic(8), &[1, 7], &[3, 5], &[0]),
        ),
        (
            "desargues".into(),
            datum(cyclic(10), &[1, 9], &[3, 7], &[0]),
        ),
        ("dihedral-20".into(), must(gamma_dihedral(5, 2, 2))),
        ("dihedral-28".into(), must(gamma_dihedral(7, 3, 3))),
        ("metacyclic-54".into(), must(g_p(3))),
        ("order-54".into(), must(example_54())),
        ("c28".into(), must(example_c28())),
    ]
}

// ---------------------------------------------------------------------
// Exhaustive enumeration over a host group
// ---------------------------------------------------------------------

/// Options for [`enumerate_triples`].
#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Upper bound on the valency `|R| + |S|`.
    pub max_valency: usize,
    /// Visit only data whose union generates the host group, which for
    /// normalised data is exactly connectedness of the graph.
    pub connected_only: bool,
}

/// Tallies from an enumeration run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    /// Combinations reaching the innermost canonicity test.
    pub examined: u64,
    /// Canonical representatives passed to the visitor.
    pub visited: u64,
}

/// An inverse-closed or identity-containing subset with its bitmask.
struct SetEntry {
    mask: u64,
    elems: Vec<Elt>,
    /// Least mask in the set's orbit under the host's automorphisms.
    orbit_min: u64,
}

/// Streams every normalised bi-Cayley datum over `group` with valency
/// at most `opts.max_valency`, exactly once per equivalence class under
/// host automorphisms `(R, L, S) → (R^α, L^α, S^α)` and the swap
/// `(R, L, S) → (L, R, S⁻¹)`: the visitor sees the member whose mask
/// triple (`R`, then `L`, then `S`, as subset bitmasks) is
/// lexicographically least in its class. Normalised means `1 ∈ S`;
/// every datum with `S ≠ ∅` is a translate of such a datum.
///
/// Emission order is deterministic: ascending `|R|`, then the `R`
/// mask, the `L` mask, `|S|`, and the `S` mask.
///
/// Groups of order above 64 are rejected (`BoundExceeded`): subsets are
/// manipulated as 64-bit masks.
pub fn enumerate_triples<F>(
    group: &Arc<FiniteGroup>,
    opts: EnumerateOptions,
    mut visit: F,
) -> Result<EnumerationStats>
where
    F: FnMut(&BiCayley) -> Result<()>,
{
    let n = group.order();
    if n > 64 {
        return Err(Error::BoundExceeded(format!(
            "triple enumeration works on 64-bit subset masks, limited to group order 64, got {n}"
        )));
    }
    let auts = group.automorphisms()?;
    let apply = |a: &GroupAut, elems: &[Elt]| -> u64 {
        elems.iter().fold(0u64, |m, &x| m | 1 << a.apply(x))
    };
    let inv_mask = |a: &GroupAut, elems: &[Elt]| -> u64 {
        elems
            .iter()
            .fold(0u64, |m, &x| m | 1 << group.inv(a.apply(x)))
    };

    // Inverse-closed, identity-free R/L candidates by size.
    let max_r = opts.max_valency.saturating_sub(1).min(n.saturating_sub(1));
    let rsets: Vec<Vec<SetEntry>> = inverse_closed_subsets(group, max_r)
        .into_iter()
        .map(|mut level| {
            for e in &mut level {
                e.orbit_min = auts.iter().map(|a| apply(a, &e.elems)).min().unwrap_or(e.mask);
            }
            level.sort_by_key(|e| e.mask);
            level
        })
        .collect();

    // S candidates: subsets containing the identity, by size.
    let max_s = opts.max_valency.min(n);
    let mut ssets: Vec<Vec<SetEntry>> = (0..=max_s).map(|_| Vec::new()).collect();
    let mut choose = vec![0usize];
    loop {
        let size = choose.len();
        if size <= max_s {
            ssets[size].push(SetEntry {
                mask: choose.iter().fold(0u64, |m, &x| m | 1 << x),
                elems: choose.clone(),
                orbit_min: 0,
            });
        }
        // next combination of {0} ∪ (subset of 1..n), in element order
        if size < max_s && *choose.last().unwrap() + 1 < n {
            let next = choose.last().unwrap() + 1;
            choose.push(next);
        } else {
            loop {
                let Some(last) = choose.pop() else { break };
                if last == 0 {
                    choose.clear();
                    break;
                }
                if last + 1 < n {
                    choose.push(last + 1);
                    break;
                }
            }
            if choose.is_empty() {
                break;
            }
        }
    }
    for level in &mut ssets {
        level.sort_by_key(|e| e.mask);
    }

    let mut stats = EnumerationStats::default();
    for r in 0..=max_r {
        // The valency budget left for S, clamped to the sizes that
        // exist (the budget can exceed the group order).
        let max_s_here = (opts.max_valency - r).min(max_s);
        for rep in rsets[r].iter().filter(|e| e.mask == e.orbit_min) {
            let stab_r: Vec<&GroupAut> = auts
                .iter()
                .filter(|a| apply(a, &rep.elems) == rep.mask)
                .collect();
            for lent in &rsets[r] {
                if lent.orbit_min < rep.mask {
                    // The swapped datum reaches a smaller leading mask.
                    continue;
                }
                let mut stab_rl: Vec<&GroupAut> = Vec::new();
                let mut l_minimal = true;
                for a in &stab_r {
                    let m = apply(a, &lent.elems);
                    if m < lent.mask {
                        l_minimal = false;
                        break;
                    }
                    if m == lent.mask {
                        stab_rl.push(a);
                    }
                }
                if !l_minimal {
                    continue;
                }
                // Swap competitors share the leading mask only via an
                // automorphism carrying L onto R.
                let transporters: Vec<&GroupAut> = if lent.orbit_min == rep.mask {
                    auts.iter()
                        .filter(|a| apply(a, &lent.elems) == rep.mask)
                        .collect()
                } else {
                    Vec::new()
                };
                for s in 1..=max_s_here {
                    'sloop: for sent in &ssets[s] {
                        stats.examined += 1;
                        for a in &stab_rl {
                            if apply(a, &sent.elems) < sent.mask {
                                continue 'sloop;
                            }
                        }
                        for a in &transporters {
                            let second = apply(a, &rep.elems);
                            if second > lent.mask {
                                continue;
                            }
                            let third = inv_mask(a, &sent.elems);
                            if (second, third) < (lent.mask, sent.mask) {
                                continue 'sloop;
                            }
                        }
                        if opts.connected_only
                            && !generates_all(group, [&rep.elems, &lent.elems, &sent.elems])
                        {
                            continue;
                        }
                        let b = BiCayley::new(
                            group.clone(),
                            &rep.elems,
                            &lent.elems,
                            &sent.elems,
                        )
                        .expect("enumerated sets satisfy the datum constraints");
                        stats.visited += 1;
                        visit(&b)?;
                    }
                }
            }
        }
    }
    Ok(stats)
}

/// All inverse-closed subsets of `H ∖ {1}` of each size `0..=max_r`,
/// assembled from involutions and inverse pairs.
fn inverse_closed_subsets(group: &FiniteGroup, max_r: usize) -> Vec<Vec<SetEntry>> {
    let n = group.order();
    // Units of assembly: single involutions and {x, x⁻¹} pairs.
    let mut items: Vec<Vec<Elt>> = Vec::new();
    for x in 1..n {
        let xi = group.inv(x);
        if xi == x {
            items.push(vec![x]);
        } else if x < xi {
            items.push(vec![x, xi]);
        }
    }
    let mut levels: Vec<Vec<SetEntry>> = (0..=max_r).map(|_| Vec::new()).collect();
    let mut current: Vec<Elt> = Vec::new();
    fn rec(
        items: &[Vec<Elt>],
        from: usize,
        current: &mut Vec<Elt>,
        max_r: usize,
        levels: &mut Vec<Vec<SetEntry>>,
    ) {
        let size = current.len();
        let mut elems = current.clone();
        elems.sort_unstable();
        levels[size].push(SetEntry {
            mask: elems.iter().fold(0u64, |m, &x| m | 1 << x),
            elems,
            orbit_min: 0,
        });
        for i in from..items.len() {
            if size + items[i].len() > max_r {
                continue;
            }
            current.extend_from_slice(&items[i]);
            rec(items, i + 1, current, max_r, levels);
            current.truncate(size);
        }
    }
    rec(&items, 0, &mut current, max_r, &mut levels);
    levels
}

/// Whether the union of the given sets generates the whole group
/// (bitmask closure under left multiplication from the identity).
fn generates_all(group: &FiniteGroup, sets: [&Vec<Elt>; 3]) -> bool {
    let n = group.order();
    let mut gens: Vec<Elt> = Vec::new();
    for set in sets {
        gens.extend_from_slice(set);
    }
    let mut seen: u64 = 1;
    let mut stack: Vec<Elt> = vec![0];
    while let Some(h) = stack.pop() {
        for &g in &gens {
            let x = group.mul(g, h);
            if seen & (1 << x) == 0 {
                seen |= 1 << x;
                stack.push(x);
            }
        }
    }
    seen.count_ones() as usize == n
}
