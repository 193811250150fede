//! Finite groups represented by explicit multiplication tables.
//!
//! Every group here is a table over element indices `0..order`, with the
//! identity fixed at index 0. Constructors cover the families the rest of
//! the crate needs (cyclic, abelian of rank at most two plus a general
//! internal abelian builder, dihedral, split metacyclic), and arbitrary
//! tables can be loaded and validated. Group automorphisms are enumerated
//! either by closed form (cyclic, dihedral) or by a generator-image
//! backtracking search over the table.
//!
//! Encoding conventions, fixed across the crate:
//!
//! * cyclic `C_n`: index `i` is `a^i`;
//! * rank-2 abelian: index `i*d2 + j` is `x^i y^j`;
//! * dihedral `D_n` of order `2n`: indices `0..n` are `a^i`, indices
//!   `n..2n` are `b a^i`;
//! * metacyclic `<a, b | a^na = b^nb = 1, b^-1 a b = a^r>`: index
//!   `i*nb + j` is `a^i b^j` (row-major).

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Index of a group element in its multiplication table.
///
/// The identity is always index 0.
pub type Elt = usize;

/// Largest group order supported by the table representation.
pub const MAX_ORDER: usize = 4096;

/// Order bound for `enumerate_automorphisms` on structured groups.
pub const AUT_BOUND_STRUCTURED: usize = 2000;

/// Order bound for `enumerate_automorphisms` on table-backed groups.
pub const AUT_BOUND_TABLE: usize = 256;

/// Order bound for full-table validation in [`FiniteGroup::from_table`].
pub const TABLE_VALIDATION_BOUND: usize = 512;

/// Structure tag recording which constructor produced a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    /// Cyclic group of order `n`.
    Cyclic { n: usize },
    /// Direct product `C_d1 x C_d2`.
    Abelian2 { d1: usize, d2: usize },
    /// Dihedral group of order `2n`.
    Dihedral { n: usize },
    /// Split metacyclic group `<a, b | a^na = b^nb = 1, b^-1 a b = a^r>`.
    Metacyclic { na: usize, nb: usize, r: usize },
    /// Anything constructed directly from a multiplication table.
    Table,
}

impl Structure {
    fn tag(&self) -> &'static str {
        match self {
            Structure::Cyclic { .. } => "cyclic",
            Structure::Abelian2 { .. } => "abelian2",
            Structure::Dihedral { .. } => "dihedral",
            Structure::Metacyclic { .. } => "metacyclic",
            Structure::Table => "table",
        }
    }

    fn params(&self) -> Vec<usize> {
        match self {
            Structure::Cyclic { n } => vec![*n],
            Structure::Abelian2 { d1, d2 } => vec![*d1, *d2],
            Structure::Dihedral { n } => vec![*n],
            Structure::Metacyclic { na, nb, r } => vec![*na, *nb, *r],
            Structure::Table => vec![],
        }
    }
}

/// A finite group as an explicit multiplication table.
pub struct FiniteGroup {
    order: usize,
    /// Row-major: `mul[a * order + b]` is the index of `a * b`.
    mul: Vec<u16>,
    inv: Vec<u16>,
    structure: Structure,
    generators: Vec<Elt>,
    names: Vec<String>,
    auts: OnceLock<Arc<Vec<GroupAut>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("structure", &self.structure)
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    fn build(
        order: usize,
        mul: Vec<u16>,
        structure: Structure,
        generators: Vec<Elt>,
        names: Vec<String>,
    ) -> Result<FiniteGroup> {
        let inv = compute_inverses(order, &mul)?;
        Ok(FiniteGroup {
            order,
            mul,
            inv,
            structure,
            generators,
            names,
            auts: OnceLock::new(),
        })
    }

    /// Cyclic group `C_n`, with `a` at index 1 (for `n > 1`).
    pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
        check_order_bounds("make_cyclic", n, 1)?;
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = ((i + j) % n) as u16;
            }
        }
        let names = (0..n).map(|i| power_word("a", i)).collect();
        let generators = if n > 1 { vec![1] } else { vec![] };
        FiniteGroup::build(n, mul, Structure::Cyclic { n }, generators, names)
    }

    /// Direct product `C_d1 x C_d2`, element `(i, j) = x^i y^j` at index
    /// `i*d2 + j`.
    pub fn make_abelian2(d1: usize, d2: usize) -> Result<FiniteGroup> {
        if d1 < 1 || d2 < 1 {
            return Err(Error::InvalidParameter(format!(
                "make_abelian2 needs positive factor orders, got ({d1}, {d2})"
            )));
        }
        let g = make_abelian_inner(&[d1, d2], &["x", "y"])?;
        // Rebuild with the rank-2 structure tag; the table is identical.
        FiniteGroup::build(
            g.order,
            g.mul,
            Structure::Abelian2 { d1, d2 },
            g.generators,
            g.names,
        )
    }

    /// Direct product of cyclic groups of the given orders (any rank).
    ///
    /// Tagged as a table group: its descriptor serializes the full
    /// multiplication table.
    pub fn make_abelian(orders: &[usize]) -> Result<FiniteGroup> {
        if orders.is_empty() {
            return Err(Error::InvalidParameter(
                "make_abelian needs at least one factor".into(),
            ));
        }
        let letters: Vec<String> = (0..orders.len())
            .map(|k| match k {
                0 => "x".to_string(),
                1 => "y".to_string(),
                2 => "z".to_string(),
                3 => "w".to_string(),
                _ => format!("g{}", k + 1),
            })
            .collect();
        let letter_refs: Vec<&str> = letters.iter().map(|s| s.as_str()).collect();
        make_abelian_inner(orders, &letter_refs)
    }

    /// Dihedral group `D_n` of order `2n`, for `n >= 3`.
    ///
    /// Index `i` (for `i < n`) is the rotation `a^i`; index `n + i` is the
    /// reflection `b a^i`.
    pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "make_dihedral needs n >= 3, got {n}"
            )));
        }
        check_order_bounds("make_dihedral", 2 * n, 1)?;
        let order = 2 * n;
        let mut mul = vec![0u16; order * order];
        for i in 0..n {
            for j in 0..n {
                // a^i * a^j = a^(i+j)
                mul[i * order + j] = ((i + j) % n) as u16;
                // a^i * (b a^j) = b a^(j-i)
                mul[i * order + (n + j)] = (n + (n + j - i) % n) as u16;
                // (b a^i) * a^j = b a^(i+j)
                mul[(n + i) * order + j] = (n + (i + j) % n) as u16;
                // (b a^i) * (b a^j) = a^(j-i)
                mul[(n + i) * order + (n + j)] = ((n + j - i) % n) as u16;
            }
        }
        let mut names: Vec<String> = (0..n).map(|i| power_word("a", i)).collect();
        for i in 0..n {
            names.push(if i == 0 {
                "b".to_string()
            } else {
                format!("b{}", power_word("a", i))
            });
        }
        FiniteGroup::build(order, mul, Structure::Dihedral { n }, vec![1, n], names)
    }

    /// Split metacyclic group `<a, b | a^na = b^nb = 1, b^-1 a b = a^r>`.
    ///
    /// Requires `r^nb = 1 (mod na)` so that the presentation is consistent
    /// with a group of order `na * nb`. Element `(i, j) = a^i b^j` sits at
    /// index `i*nb + j`.
    pub fn make_metacyclic(na: usize, nb: usize, r: usize) -> Result<FiniteGroup> {
        if na < 1 || nb < 1 {
            return Err(Error::InvalidParameter(format!(
                "make_metacyclic needs positive orders, got ({na}, {nb})"
            )));
        }
        check_order_bounds("make_metacyclic", na * nb, 1)?;
        let r = r % na.max(1);
        if mod_pow(r, nb, na) != 1 % na {
            return Err(Error::InvalidParameter(format!(
                "make_metacyclic({na}, {nb}, {r}): r^nb = {} (mod {na}), expected 1; \
                 the relations are inconsistent",
                mod_pow(r, nb, na)
            )));
        }
        // The defining relation b^-1 a b = a^r moves a-powers to the left
        // through b-powers via b^j a^k = a^(k * r^(-j)) b^j, so the
        // normal-form product needs powers of r^-1 = r^(nb-1) mod na.
        let rinv = mod_pow(r, nb - 1, na);
        let mut rinv_pow = vec![0usize; nb];
        rinv_pow[0] = 1 % na;
        for j in 1..nb {
            rinv_pow[j] = rinv_pow[j - 1] * rinv % na;
        }
        let order = na * nb;
        let mut mul = vec![0u16; order * order];
        for i in 0..na {
            for j in 0..nb {
                let lhs = i * nb + j;
                for k in 0..na {
                    for l in 0..nb {
                        let rhs = k * nb + l;
                        let ai = (i + k * rinv_pow[j]) % na;
                        let bj = (j + l) % nb;
                        mul[lhs * order + rhs] = (ai * nb + bj) as u16;
                    }
                }
            }
        }
        let mut names = Vec::with_capacity(order);
        for i in 0..na {
            for j in 0..nb {
                names.push(two_letter_word("a", i, "b", j));
            }
        }
        let mut generators = Vec::new();
        if na > 1 {
            generators.push(nb); // a = (1, 0)
        }
        if nb > 1 {
            generators.push(1); // b = (0, 1)
        }
        FiniteGroup::build(
            order,
            mul,
            Structure::Metacyclic { na, nb, r },
            generators,
            names,
        )
    }

    /// Builds a group from an explicit multiplication table over indices
    /// `0..n`, validating the group axioms in full.
    ///
    /// The identity must be index 0. Orders above
    /// [`TABLE_VALIDATION_BOUND`] are rejected so that the associativity
    /// scan stays exhaustive.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty multiplication table".into()));
        }
        if n > TABLE_VALIDATION_BOUND {
            return Err(Error::BoundExceeded(format!(
                "table groups are validated exhaustively and limited to order {TABLE_VALIDATION_BOUND}, got {n}"
            )));
        }
        let mut mul = vec![0u16; n * n];
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAGroup(format!(
                        "entry ({i}, {j}) = {v} is out of range"
                    )));
                }
                mul[i * n + j] = v as u16;
            }
        }
        validate_table(n, &mul)?;
        let names = (0..n).map(|i| format!("e{i}")).collect();
        let generators = greedy_generators(n, &mul);
        FiniteGroup::build(n, mul, Structure::Table, generators, names)
    }

    /// Internal constructor for tables known correct by construction
    /// (direct and semidirect products assembled element-wise). Debug
    /// builds still validate small tables in full.
    pub(crate) fn from_parts_unchecked(
        order: usize,
        mul: Vec<u16>,
        generators: Vec<Elt>,
        names: Vec<String>,
    ) -> Result<FiniteGroup> {
        #[cfg(debug_assertions)]
        if order <= TABLE_VALIDATION_BOUND {
            validate_table(order, &mul)?;
        }
        FiniteGroup::build(order, mul, Structure::Table, generators, names)
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The identity element (always index 0).
    pub fn identity(&self) -> Elt {
        0
    }

    /// Product of two elements.
    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.mul[a * self.order + b] as Elt
    }

    /// Inverse of an element.
    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        self.inv[a] as Elt
    }

    /// Conjugate `g^-1 * a * g`.
    pub fn conj(&self, a: Elt, g: Elt) -> Elt {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, g: Elt) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// The stored generating set.
    pub fn generators(&self) -> &[Elt] {
        &self.generators
    }

    /// Word form of an element, e.g. `a^3b^2`.
    pub fn name(&self, g: Elt) -> &str {
        &self.names[g]
    }

    /// All element word forms, indexed by element.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Structure tag recording the constructor used.
    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// The stored generators with their single-word names, for parsing.
    pub fn letter_generators(&self) -> Vec<(String, Elt)> {
        self.generators
            .iter()
            .map(|&g| (self.names[g].clone(), g))
            .collect()
    }

    /// Parses an element given as a word in the generators (e.g. `a^4b^2`,
    /// `b a^-1`), an element name, or a bare index.
    pub fn parse_word(&self, word: &str) -> Result<Elt> {
        let trimmed = word.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse("empty element word".into()));
        }
        if trimmed == "1" {
            return Ok(0);
        }
        // Exact name match (covers table-group names like `e7`).
        if let Some(i) = self.names.iter().position(|n| n == trimmed) {
            return Ok(i);
        }
        // Bare index.
        if trimmed.chars().all(|c| c.is_ascii_digit()) {
            let idx: usize = trimmed
                .parse()
                .map_err(|_| Error::Parse(format!("bad element index {trimmed:?}")))?;
            if idx >= self.order {
                return Err(Error::Parse(format!(
                    "element index {idx} out of range for order {}",
                    self.order
                )));
            }
            return Ok(idx);
        }
        // General word: letters with optional integer exponents.
        let mut letters = self.letter_generators();
        letters.sort_by_key(|(name, _)| std::cmp::Reverse(name.len()));
        let bytes = trimmed.as_bytes();
        let mut pos = 0;
        let mut acc: Elt = 0;
        while pos < bytes.len() {
            let c = bytes[pos] as char;
            if c.is_whitespace() || c == '*' || c == '.' {
                pos += 1;
                continue;
            }
            if c == '1' {
                pos += 1;
                continue;
            }
            let rest = &trimmed[pos..];
            let Some((_, base)) = letters
                .iter()
                .find(|(name, _)| rest.starts_with(name.as_str()))
                .cloned()
            else {
                return Err(Error::Parse(format!(
                    "cannot parse {trimmed:?}: no generator name at {rest:?}"
                )));
            };
            pos += letters
                .iter()
                .find(|(name, _)| rest.starts_with(name.as_str()))
                .unwrap()
                .0
                .len();
            let mut exp: i64 = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let start = pos;
                if pos < bytes.len() && bytes[pos] == b'-' {
                    pos += 1;
                }
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                exp = trimmed[start..pos]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {trimmed:?}")))?;
            }
            let factor = if exp >= 0 { base } else { self.inv(base) };
            for _ in 0..exp.unsigned_abs() {
                acc = self.mul(acc, factor);
            }
        }
        Ok(acc)
    }

    /// True if every pair of elements commutes.
    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of a set of elements under multiplication, sorted.
    pub fn closure(&self, gens: &[Elt]) -> Vec<Elt> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    frontier.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Verifies the group axioms by a full table scan.
    ///
    /// Orders above [`TABLE_VALIDATION_BOUND`] are rejected rather than
    /// partially checked.
    pub fn check_axioms(&self) -> Result<()> {
        if self.order > TABLE_VALIDATION_BOUND {
            return Err(Error::BoundExceeded(format!(
                "full axiom scan is limited to order {TABLE_VALIDATION_BOUND}, got {}",
                self.order
            )));
        }
        validate_table(self.order, &self.mul)
    }

    /// The full automorphism group, cached on first computation.
    ///
    /// Automorphisms are returned in lexicographic order of their image
    /// sequences. Structured groups are bounded at order
    /// [`AUT_BOUND_STRUCTURED`], table groups at [`AUT_BOUND_TABLE`].
    pub fn automorphisms(&self) -> Result<Arc<Vec<GroupAut>>> {
        if let Some(a) = self.auts.get() {
            return Ok(a.clone());
        }
        let bound = match self.structure {
            Structure::Table => AUT_BOUND_TABLE,
            _ => AUT_BOUND_STRUCTURED,
        };
        if self.order > bound {
            return Err(Error::BoundExceeded(format!(
                "automorphism enumeration is limited to order {bound} for {} groups, got {}",
                self.structure.tag(),
                self.order
            )));
        }
        let mut auts = match &self.structure {
            Structure::Cyclic { n } => cyclic_automorphisms(*n),
            Structure::Dihedral { n } => dihedral_automorphisms(self, *n),
            _ => generic_automorphisms(self),
        };
        auts.sort_unstable();
        auts.dedup();
        Ok(self.auts.get_or_init(|| Arc::new(auts)).clone())
    }

    /// JSON-friendly descriptor; table groups carry the full table.
    pub fn to_descriptor(&self) -> GroupDescriptor {
        let table = match self.structure {
            Structure::Table => Some(
                (0..self.order)
                    .map(|i| (0..self.order).map(|j| self.mul(i, j)).collect())
                    .collect(),
            ),
            _ => None,
        };
        GroupDescriptor {
            structure: self.structure.tag().to_string(),
            params: self.structure.params(),
            order: self.order,
            generators: self.generators.clone(),
            table,
        }
    }

    /// Rebuilds a group from a descriptor produced by
    /// [`FiniteGroup::to_descriptor`].
    pub fn from_descriptor(d: &GroupDescriptor) -> Result<FiniteGroup> {
        let g = match (d.structure.as_str(), d.params.as_slice()) {
            ("cyclic", [n]) => FiniteGroup::make_cyclic(*n)?,
            ("abelian2", [d1, d2]) => FiniteGroup::make_abelian2(*d1, *d2)?,
            ("dihedral", [n]) => FiniteGroup::make_dihedral(*n)?,
            ("metacyclic", [na, nb, r]) => FiniteGroup::make_metacyclic(*na, *nb, *r)?,
            ("table", []) => {
                let table = d.table.as_ref().ok_or_else(|| {
                    Error::Parse("table descriptor is missing its multiplication table".into())
                })?;
                FiniteGroup::from_table(table.clone())?
            }
            (s, p) => {
                return Err(Error::Parse(format!(
                    "unknown group descriptor: structure {s:?} with {} params",
                    p.len()
                )))
            }
        };
        if g.order != d.order {
            return Err(Error::Parse(format!(
                "descriptor order {} does not match constructed order {}",
                d.order, g.order
            )));
        }
        Ok(g)
    }
}

/// Serialized form of a group: structure tag, parameters, and (for table
/// groups) the full multiplication table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub structure: String,
    pub params: Vec<usize>,
    pub order: usize,
    pub generators: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

/// A group automorphism, stored as the full image sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupAut {
    image: Vec<u16>,
}

impl fmt::Debug for GroupAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupAut{:?}", self.image)
    }
}

impl GroupAut {
    /// Wraps an image sequence without checking the homomorphism property.
    pub fn from_images(image: Vec<u16>) -> GroupAut {
        GroupAut { image }
    }

    /// The identity automorphism of a group of the given order.
    pub fn identity(order: usize) -> GroupAut {
        GroupAut {
            image: (0..order as u16).collect(),
        }
    }

    /// Image of one element.
    #[inline]
    pub fn apply(&self, x: Elt) -> Elt {
        self.image[x] as Elt
    }

    /// The underlying image sequence.
    pub fn images(&self) -> &[u16] {
        &self.image
    }

    /// Number of elements in the domain.
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Composition applying `self` first, then `other`.
    pub fn compose(&self, other: &GroupAut) -> GroupAut {
        GroupAut {
            image: self.image.iter().map(|&v| other.image[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupAut {
        let mut image = vec![0u16; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize] = i as u16;
        }
        GroupAut { image }
    }

    /// Multiplicative order of the automorphism.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    /// Image of a set of elements, sorted.
    pub fn apply_set(&self, set: &[Elt]) -> Vec<Elt> {
        let mut out: Vec<Elt> = set.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }

    /// Full-table check that this map is a group automorphism.
    pub fn is_automorphism(&self, g: &FiniteGroup) -> bool {
        let n = g.order();
        if self.image.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in &self.image {
            if seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if self.apply(g.mul(x, y)) != g.mul(self.apply(x), self.apply(y)) {
                    return false;
                }
            }
        }
        true
    }
}

/// The full automorphism group of `g` as explicit image sequences, in
/// lexicographic order.
pub fn enumerate_automorphisms(g: &FiniteGroup) -> Result<Vec<GroupAut>> {
    Ok(g.automorphisms()?.as_ref().clone())
}

/// Relation between a set and its image demanded by
/// [`automorphisms_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetRelation {
    /// `S^alpha = S`.
    FixesSetwise,
    /// `S^alpha = S^-1`.
    MapsToInverseSet,
    /// `S^alpha = g^-1 S` for the given `g`, or for some `g` when `None`.
    MapsToLeftTranslate(Option<Elt>),
}

/// Scans `Aut(g)` for automorphisms relating `s` to itself as requested.
///
/// Returns `(alpha, witness)` pairs; the witness is the translating
/// element `g` for [`SetRelation::MapsToLeftTranslate`] and the identity
/// otherwise. One automorphism may appear with several witnesses.
pub fn automorphisms_with(
    g: &FiniteGroup,
    s: &[Elt],
    relation: SetRelation,
) -> Result<Vec<(GroupAut, Elt)>> {
    let auts = g.automorphisms()?;
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    let target_inv: Vec<Elt> = {
        let mut v: Vec<Elt> = sorted.iter().map(|&x| g.inv(x)).collect();
        v.sort_unstable();
        v
    };
    let mut out = Vec::new();
    for alpha in auts.iter() {
        let image = alpha.apply_set(&sorted);
        match relation {
            SetRelation::FixesSetwise => {
                if image == sorted {
                    out.push((alpha.clone(), 0));
                }
            }
            SetRelation::MapsToInverseSet => {
                if image == target_inv {
                    out.push((alpha.clone(), 0));
                }
            }
            SetRelation::MapsToLeftTranslate(fixed) => {
                let candidates: Vec<Elt> = match fixed {
                    Some(t) => vec![t],
                    None => {
                        if sorted.is_empty() {
                            (0..g.order()).collect()
                        } else {
                            // g * S^alpha = S forces g into S * t^-1 for
                            // any fixed t in S^alpha.
                            let t = image[0];
                            sorted.iter().map(|&x| g.mul(x, g.inv(t))).collect()
                        }
                    }
                };
                for t in candidates {
                    let translated: Vec<Elt> = {
                        let ti = g.inv(t);
                        let mut v: Vec<Elt> = sorted.iter().map(|&x| g.mul(ti, x)).collect();
                        v.sort_unstable();
                        v
                    };
                    if image == translated {
                        out.push((alpha.clone(), t));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| (a.0.images(), a.1).cmp(&(b.0.images(), b.1)));
    out.dedup();
    Ok(out)
}

/// Euler's totient.
pub fn phi(n: usize) -> usize {
    units(n).len()
}

/// The units of `Z_n`, ascending. `units(1)` is `[0]` (the zero residue
/// represents the unit of the trivial ring).
pub fn units(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&u| gcd(u, n) == 1).collect()
}

/// Greatest common divisor.
pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Primality by trial division (fine for the orders handled here).
pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2usize;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of `a` mod `m` for a unit `a`; `None` when
/// `gcd(a, m) != 1`. The order of 0 mod 1 is 1 (trivial group).
pub fn multiplicative_order(a: usize, m: usize) -> Option<usize> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1usize;
    while x != 1 {
        x = x * (a % m) % m;
        k += 1;
    }
    Some(k)
}

/// `base^exp mod m` (with `mod 1` giving 0).
pub fn mod_pow(base: usize, exp: usize, m: usize) -> usize {
    if m == 1 {
        return 0;
    }
    let mut result = 1usize;
    let mut b = base % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result
}

/// Inverse of `a` mod `m` when it exists.
pub fn mod_inverse(a: usize, m: usize) -> Option<usize> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a as i64, m as i64);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i64) as usize)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn check_order_bounds(what: &str, order: usize, min: usize) -> Result<()> {
    if order < min {
        return Err(Error::InvalidParameter(format!(
            "{what} needs order >= {min}, got {order}"
        )));
    }
    if order > MAX_ORDER {
        return Err(Error::BoundExceeded(format!(
            "{what}: order {order} exceeds the table bound {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn compute_inverses(order: usize, mul: &[u16]) -> Result<Vec<u16>> {
    let mut inv = vec![u16::MAX; order];
    for a in 0..order {
        let mut found = None;
        for b in 0..order {
            if mul[a * order + b] == 0 {
                if mul[b * order + a] != 0 {
                    return Err(Error::NotAGroup(format!(
                        "element {a} has a right inverse {b} that is not a left inverse"
                    )));
                }
                found = Some(b as u16);
                break;
            }
        }
        inv[a] = found
            .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
    }
    Ok(inv)
}

fn validate_table(n: usize, mul: &[u16]) -> Result<()> {
    if mul.len() != n * n {
        return Err(Error::NotAGroup("table size mismatch".into()));
    }
    for (k, &v) in mul.iter().enumerate() {
        if v as usize >= n {
            return Err(Error::NotAGroup(format!(
                "entry at flat index {k} is out of range"
            )));
        }
    }
    for a in 0..n {
        if mul[a * n] as usize != a || mul[a] as usize != a {
            return Err(Error::NotAGroup(format!(
                "index 0 is not a two-sided identity at element {a}"
            )));
        }
    }
    compute_inverses(n, mul)?;
    for a in 0..n {
        for b in 0..n {
            let ab = mul[a * n + b] as usize;
            for c in 0..n {
                let bc = mul[b * n + c] as usize;
                if mul[ab * n + c] != mul[a * n + bc] {
                    return Err(Error::NotAGroup(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn greedy_generators(n: usize, mul: &[u16]) -> Vec<Elt> {
    let mulf = |a: Elt, b: Elt| mul[a * n + b] as Elt;
    let mut gens: Vec<Elt> = Vec::new();
    let mut closed = vec![false; n];
    closed[0] = true;
    let mut count = 1;
    while count < n {
        let next = (0..n).find(|&x| !closed[x]).unwrap();
        gens.push(next);
        // Re-close from scratch with the enlarged generating set.
        closed.iter_mut().for_each(|b| *b = false);
        closed[0] = true;
        count = 1;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = mulf(x, g);
                if !closed[y] {
                    closed[y] = true;
                    count += 1;
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

fn power_word(letter: &str, e: usize) -> String {
    match e {
        0 => "1".to_string(),
        1 => letter.to_string(),
        _ => format!("{letter}^{e}"),
    }
}

fn two_letter_word(l1: &str, e1: usize, l2: &str, e2: usize) -> String {
    match (e1, e2) {
        (0, 0) => "1".to_string(),
        (_, 0) => power_word(l1, e1),
        (0, _) => power_word(l2, e2),
        _ => format!("{}{}", power_word(l1, e1), power_word(l2, e2)),
    }
}

fn make_abelian_inner(orders: &[usize], letters: &[&str]) -> Result<FiniteGroup> {
    if orders.iter().any(|&d| d < 1) {
        return Err(Error::InvalidParameter(
            "abelian factor orders must be positive".into(),
        ));
    }
    let order: usize = orders.iter().product();
    check_order_bounds("make_abelian", order, 1)?;
    let k = orders.len();
    // Mixed-radix digits, last factor fastest (row-major).
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; k];
        for i in (0..k).rev() {
            d[i] = x % orders[i];
            x /= orders[i];
        }
        d
    };
    let index = |d: &[usize]| -> usize {
        let mut x = 0;
        for i in 0..k {
            x = x * orders[i] + d[i];
        }
        x
    };
    let mut mul = vec![0u16; order * order];
    for a in 0..order {
        let da = digits(a);
        for b in 0..order {
            let db = digits(b);
            let sum: Vec<usize> = (0..k).map(|i| (da[i] + db[i]) % orders[i]).collect();
            mul[a * order + b] = index(&sum) as u16;
        }
    }
    let mut names = Vec::with_capacity(order);
    for x in 0..order {
        let d = digits(x);
        let mut word = String::new();
        for i in 0..k {
            if d[i] > 0 {
                word.push_str(&power_word(letters[i], d[i]));
            }
        }
        if word.is_empty() {
            word.push('1');
        }
        names.push(word);
    }
    let mut generators = Vec::new();
    for i in 0..k {
        if orders[i] > 1 {
            let mut d = vec![0; k];
            d[i] = 1;
            generators.push(index(&d));
        }
    }
    FiniteGroup::build(order, mul, Structure::Table, generators, names)
}

fn cyclic_automorphisms(n: usize) -> Vec<GroupAut> {
    units(n)
        .into_iter()
        .map(|u| GroupAut {
            image: (0..n).map(|i| (u * i % n.max(1)) as u16).collect(),
        })
        .collect()
}

fn dihedral_automorphisms(g: &FiniteGroup, n: usize) -> Vec<GroupAut> {
    // Every automorphism of D_n (n >= 3) is a^i -> a^(u*i),
    // b a^i -> b a^(v + u*i) for a unit u and arbitrary v.
    let mut out = Vec::new();
    for u in units(n) {
        for v in 0..n {
            let mut image = vec![0u16; 2 * n];
            for i in 0..n {
                image[i] = ((u * i) % n) as u16;
                image[n + i] = (n + (v + u * i) % n) as u16;
            }
            let aut = GroupAut { image };
            debug_assert!(aut.is_automorphism(g));
            out.push(aut);
        }
    }
    out
}

/// Generator-image backtracking over the multiplication table.
///
/// Extends each candidate assignment of generator images across the
/// closure, checking consistency (which forces the homomorphism property)
/// and injectivity as it goes.
fn generic_automorphisms(g: &FiniteGroup) -> Vec<GroupAut> {
    let n = g.order();
    let gens: Vec<Elt> = if g.closure(&g.generators).len() == n {
        g.generators.clone()
    } else {
        greedy_generators(n, &g.mul)
    };
    if gens.is_empty() {
        return vec![GroupAut::identity(n)];
    }
    let orders: Vec<usize> = (0..n).map(|x| g.element_order(x)).collect();
    let mut out = Vec::new();
    // Partial image map; u16::MAX marks "unset".
    let image = vec![u16::MAX; n];
    let mut used = vec![false; n];
    let mut image0 = image;
    image0[0] = 0;
    used[0] = true;
    extend_assignment(g, &gens, &orders, 0, image0, used, &mut out);
    out
}

fn extend_assignment(
    g: &FiniteGroup,
    gens: &[Elt],
    orders: &[usize],
    idx: usize,
    image: Vec<u16>,
    used: Vec<bool>,
    out: &mut Vec<GroupAut>,
) {
    if idx == gens.len() {
        // The closure of all generators is the whole group, so the image
        // map is total, consistent, and injective: an automorphism.
        debug_assert!(image.iter().all(|&v| v != u16::MAX));
        out.push(GroupAut { image });
        return;
    }
    let target_order = orders[gens[idx]];
    for cand in 0..g.order() {
        if used[cand] || orders[cand] != target_order {
            continue;
        }
        let mut img = image.clone();
        let mut usd = used.clone();
        if assign_and_close(g, gens, idx, cand, &mut img, &mut usd) {
            extend_assignment(g, gens, orders, idx + 1, img, usd, out);
        }
    }
}

/// Sets `image[gens[idx]] = cand` and closes the partial map under
/// multiplication by the first `idx + 1` generators. Returns false on any
/// consistency or injectivity conflict.
fn assign_and_close(
    g: &FiniteGroup,
    gens: &[Elt],
    idx: usize,
    cand: Elt,
    image: &mut [u16],
    used: &mut [bool],
) -> bool {
    let gen = gens[idx];
    if image[gen] == u16::MAX {
        if used[cand] {
            return false;
        }
        image[gen] = cand as u16;
        used[cand] = true;
    } else if image[gen] as usize != cand {
        return false;
    }
    // Propagate over the known domain: for every x with an image and every
    // active generator g_j, x * g_j must map to image(x) * image(g_j).
    let active = &gens[..=idx];
    let mut frontier: Vec<Elt> = (0..g.order()).filter(|&x| image[x] != u16::MAX).collect();
    while let Some(x) = frontier.pop() {
        let ix = image[x] as Elt;
        for &gj in active {
            let igj = image[gj];
            if igj == u16::MAX {
                continue;
            }
            let y = g.mul(x, gj);
            let iy = g.mul(ix, igj as Elt);
            if image[y] == u16::MAX {
                if used[iy] {
                    return false;
                }
                image[y] = iy as u16;
                used[iy] = true;
                frontier.push(y);
            } else if image[y] as usize != iy {
                return false;
            }
        }
    }
    true
}
