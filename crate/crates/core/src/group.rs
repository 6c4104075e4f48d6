//! Finite abelian groups presented as a product of cyclic factors
//! Z_{n1} x ... x Z_{nd}, together with:
//!
//! - row-major element indexing (the order used everywhere else in the crate),
//! - subsets with a canonical text form,
//! - the affine symmetry group x -> Mx + c of Z_n^d (d <= 2) and canonical
//!   forms of subsets under it.
//!
//! Everything here is table-free and meant for small groups; the element ops
//! are O(rank) and the symmetry enumeration is a direct filter over all
//! matrices, which is fine up to Z_8^2.

use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on group order; keeps index arithmetic and bitset sizes sane.
const ORDER_LIMIT: usize = 1 << 20;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A finite abelian group Z_{n1} x ... x Z_{nd}, each modulus >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<u32>,
    order: usize,
    exponent: usize,
}

impl GroupSpec {
    pub fn new(moduli: Vec<u32>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::BadModulus(0));
        }
        let mut order: u128 = 1;
        let mut exponent: u64 = 1;
        for &m in &moduli {
            if m < 2 {
                return Err(Error::BadModulus(m));
            }
            order *= m as u128;
            exponent = exponent / gcd(exponent, m as u64) * m as u64;
        }
        if order > ORDER_LIMIT as u128 {
            return Err(Error::OrderTooLarge(order, ORDER_LIMIT));
        }
        Ok(GroupSpec {
            moduli,
            order: order as usize,
            exponent: exponent as usize,
        })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    /// Z_n x Z_n, the home of everything row-related in this crate.
    pub fn square(n: u32) -> Result<Self> {
        Self::new(vec![n, n])
    }

    /// Parses "6x6" or "6" style group literals.
    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::parse_at(0, "empty group literal"));
        }
        let mut moduli = Vec::new();
        let mut offset = 0;
        for part in s.split('x') {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse_at(
                    offset,
                    format!("expected a modulus, found {part:?}"),
                ));
            }
            let m: u32 = part
                .parse()
                .map_err(|_| Error::parse_at(offset, format!("modulus {part:?} out of range")))?;
            moduli.push(m);
            offset += part.len() + 1;
        }
        Self::new(moduli)
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The exponent: least common multiple of the moduli. This is the
    /// cardinality constraint used for zero-sum subsets throughout.
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn is_homocyclic(&self) -> bool {
        self.moduli.iter().all(|&m| m == self.moduli[0])
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    pub fn element(&self, coords: Vec<u32>) -> Result<GroupElement> {
        let e = GroupElement { coords };
        self.validate(&e)?;
        Ok(e)
    }

    pub fn validate(&self, e: &GroupElement) -> Result<()> {
        if e.coords.len() != self.rank() {
            return Err(Error::WrongRank {
                expected: self.rank(),
                got: e.coords.len(),
            });
        }
        for (&c, &m) in e.coords.iter().zip(&self.moduli) {
            if c >= m {
                return Err(Error::CoordinateRange {
                    value: c,
                    modulus: m,
                });
            }
        }
        Ok(())
    }

    /// Row-major index: (a, b) in Z_n1 x Z_n2 maps to a*n2 + b.
    pub fn element_index(&self, e: &GroupElement) -> Result<usize> {
        self.validate(e)?;
        let mut idx = 0usize;
        for (&c, &m) in e.coords.iter().zip(&self.moduli) {
            idx = idx * m as usize + c as usize;
        }
        Ok(idx)
    }

    /// Inverse of `element_index`.
    pub fn element_at(&self, index: usize) -> Result<GroupElement> {
        if index >= self.order {
            return Err(Error::IndexRange {
                index,
                order: self.order,
            });
        }
        let mut coords = vec![0u32; self.rank()];
        let mut rem = index;
        for i in (0..self.rank()).rev() {
            let m = self.moduli[i] as usize;
            coords[i] = (rem % m) as u32;
            rem /= m;
        }
        Ok(GroupElement { coords })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.validate(a)?;
        self.validate(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.validate(a)?;
        let coords = a
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Sum of a slice of elements; the identity for an empty slice.
    pub fn sum(&self, elems: &[GroupElement]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for e in elems {
            acc = self.add(&acc, e)?;
        }
        Ok(acc)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element_at(i).expect("index in range"))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// An element given by one coordinate per cyclic factor, always reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A subset of a group, stored as a membership bit vector over element
/// indices. The text form lists elements in index order, coordinates joined
/// by ',' and elements by ';' with no whitespace: `0,0;0,1;1,5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSubset {
    group: GroupSpec,
    bits: Vec<u64>,
}

impl GroupSubset {
    pub fn empty(group: &GroupSpec) -> Self {
        let words = group.order().div_ceil(64);
        GroupSubset {
            group: group.clone(),
            bits: vec![0; words],
        }
    }

    pub fn from_elements(group: &GroupSpec, elems: &[GroupElement]) -> Result<Self> {
        let mut s = Self::empty(group);
        for e in elems {
            s.insert(e)?;
        }
        Ok(s)
    }

    pub fn from_indices(group: &GroupSpec, indices: &[usize]) -> Result<Self> {
        let mut s = Self::empty(group);
        for &i in indices {
            s.insert_index(i)?;
        }
        Ok(s)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn insert(&mut self, e: &GroupElement) -> Result<bool> {
        let idx = self.group.element_index(e)?;
        Ok(self.set_bit(idx))
    }

    pub fn insert_index(&mut self, index: usize) -> Result<bool> {
        if index >= self.group.order() {
            return Err(Error::IndexRange {
                index,
                order: self.group.order(),
            });
        }
        Ok(self.set_bit(index))
    }

    fn set_bit(&mut self, idx: usize) -> bool {
        let (w, b) = (idx / 64, idx % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        idx < self.group.order() && self.bits[idx / 64] & (1 << (idx % 64)) != 0
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        match self.group.element_index(e) {
            Ok(idx) => self.contains_index(idx),
            Err(_) => false,
        }
    }

    pub fn cardinality(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cardinality());
        for idx in 0..self.group.order() {
            if self.contains_index(idx) {
                out.push(idx);
            }
        }
        out
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.indices()
            .into_iter()
            .map(|i| self.group.element_at(i).expect("index in range"))
            .collect()
    }

    /// Strict parser for the subset text form. Elements must be reduced,
    /// sorted by index, and free of duplicates; violations report the byte
    /// offset of the offending token.
    pub fn parse(group: &GroupSpec, s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::parse_at(0, "empty subset literal"));
        }
        let mut subset = Self::empty(group);
        let mut last_idx: Option<usize> = None;
        let mut offset = 0;
        for elem_tok in s.split(';') {
            let elem_start = offset;
            let mut coords = Vec::with_capacity(group.rank());
            let mut coord_off = elem_start;
            for coord_tok in elem_tok.split(',') {
                if coord_tok.is_empty() || !coord_tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::parse_at(
                        coord_off,
                        format!("expected a coordinate, found {coord_tok:?}"),
                    ));
                }
                let v: u32 = coord_tok.parse().map_err(|_| {
                    Error::parse_at(coord_off, format!("coordinate {coord_tok:?} out of range"))
                })?;
                coords.push(v);
                coord_off += coord_tok.len() + 1;
            }
            if coords.len() != group.rank() {
                return Err(Error::parse_at(
                    elem_start,
                    format!(
                        "element {elem_tok:?} has {} coordinates, group has rank {}",
                        coords.len(),
                        group.rank()
                    ),
                ));
            }
            for (&c, &m) in coords.iter().zip(group.moduli()) {
                if c >= m {
                    return Err(Error::parse_at(
                        elem_start,
                        format!("coordinate {c} out of range for modulus {m}"),
                    ));
                }
            }
            let e = GroupElement { coords };
            let idx = group.element_index(&e).expect("validated above");
            if let Some(prev) = last_idx {
                if idx <= prev {
                    return Err(Error::parse_at(
                        elem_start,
                        format!("element {elem_tok:?} out of order; elements must be strictly increasing by index"),
                    ));
                }
            }
            last_idx = Some(idx);
            subset.set_bit(idx);
            offset += elem_tok.len() + 1;
        }
        Ok(subset)
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// An affine map x -> Mx + c on Z_n^d, stored with M in row-major order.
/// Only maps with unit determinant are produced by the enumerator, so every
/// map is a bijection of the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    matrix: Vec<u32>,
    shift: Vec<u32>,
}

impl AffineMap {
    pub fn matrix(&self) -> &[u32] {
        &self.matrix
    }

    pub fn shift(&self) -> &[u32] {
        &self.shift
    }

    pub fn apply(&self, group: &GroupSpec, e: &GroupElement) -> Result<GroupElement> {
        group.validate(e)?;
        let d = group.rank();
        if self.shift.len() != d || self.matrix.len() != d * d {
            return Err(Error::WrongRank {
                expected: d,
                got: self.shift.len(),
            });
        }
        let mut coords = Vec::with_capacity(d);
        for i in 0..d {
            let m = group.moduli()[i] as u64;
            let mut acc = self.shift[i] as u64;
            for j in 0..d {
                acc += self.matrix[i * d + j] as u64 * e.coords[j] as u64;
            }
            coords.push((acc % m) as u32);
        }
        Ok(GroupElement { coords })
    }

    /// The map as a permutation of element indices.
    pub fn permutation(&self, group: &GroupSpec) -> Result<Vec<usize>> {
        let mut perm = Vec::with_capacity(group.order());
        for e in group.elements() {
            perm.push(group.element_index(&self.apply(group, &e)?)?);
        }
        Ok(perm)
    }
}

/// Enumerates the full affine symmetry group of Z_n^d (d <= 2): all maps
/// x -> Mx + c with det(M) a unit mod n. The count is |GL_d(Z_n)| * n^d;
/// for Z_6^2 that is 288 * 36 = 10368. Enumeration order is deterministic
/// (matrix entries lexicographic, then shifts lexicographic).
pub fn enumerate_affine_symmetries(group: &GroupSpec) -> Result<Vec<AffineMap>> {
    let d = group.rank();
    if d > 2 {
        return Err(Error::RankUnsupported { max: 2, got: d });
    }
    if !group.is_homocyclic() {
        return Err(Error::MixedModuli(group.to_string()));
    }
    let n = group.moduli()[0];
    let mut maps = Vec::new();
    match d {
        1 => {
            for m in 0..n {
                if gcd(m as u64, n as u64) != 1 {
                    continue;
                }
                for c in 0..n {
                    maps.push(AffineMap {
                        matrix: vec![m],
                        shift: vec![c],
                    });
                }
            }
        }
        2 => {
            for m00 in 0..n {
                for m01 in 0..n {
                    for m10 in 0..n {
                        for m11 in 0..n {
                            let det = (m00 as u64 * m11 as u64 + n as u64 * n as u64
                                - m01 as u64 * m10 as u64)
                                % n as u64;
                            if gcd(det, n as u64) != 1 {
                                continue;
                            }
                            for c0 in 0..n {
                                for c1 in 0..n {
                                    maps.push(AffineMap {
                                        matrix: vec![m00, m01, m10, m11],
                                        shift: vec![c0, c1],
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        _ => unreachable!("rank checked above"),
    }
    Ok(maps)
}

fn lex_less(a: &[usize], b: &[usize]) -> bool {
    // Ascending index lists compared lexicographically; the set reaching
    // smaller indices sooner is the smaller one.
    for (x, y) in a.iter().zip(b.iter()) {
        if x != y {
            return x < y;
        }
    }
    a.len() < b.len()
}

/// Canonical form of a subset under a list of symmetry maps: the image whose
/// sorted index list is lexicographically least. With the full affine group
/// this is a true orbit invariant; any singleton of Z_n^d canonicalizes to
/// the identity element.
pub fn canonicalize_subset(x: &GroupSubset, syms: &[AffineMap]) -> Result<GroupSubset> {
    if syms.is_empty() {
        return Err(Error::EmptySet);
    }
    let group = x.group();
    let elems = x.elements();
    let mut best: Option<Vec<usize>> = None;
    let mut image = Vec::with_capacity(elems.len());
    for map in syms {
        image.clear();
        for e in &elems {
            image.push(group.element_index(&map.apply(group, e)?)?);
        }
        image.sort_unstable();
        match &best {
            Some(b) if !lex_less(&image, b) => {}
            _ => best = Some(image.clone()),
        }
    }
    GroupSubset::from_indices(group, &best.expect("syms nonempty"))
}

/// Multiset of nonzero row sizes of a rank-2 subset: how many elements sit
/// in each first-coordinate row, sorted descending. Sums to |X|.
pub fn row_profile(x: &GroupSubset) -> Result<Vec<usize>> {
    let group = x.group();
    if group.rank() != 2 {
        return Err(Error::RankUnsupported {
            max: 2,
            got: group.rank(),
        });
    }
    let mut counts = vec![0usize; group.moduli()[0] as usize];
    for e in x.elements() {
        counts[e.coords()[0] as usize] += 1;
    }
    let mut profile: Vec<usize> = counts.into_iter().filter(|&c| c > 0).collect();
    profile.sort_unstable_by(|a, b| b.cmp(a));
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_small_groups() {
        for moduli in [vec![6, 6], vec![12], vec![2, 6], vec![12, 12], vec![3, 4]] {
            let g = GroupSpec::new(moduli).unwrap();
            for idx in 0..g.order() {
                let e = g.element_at(idx).unwrap();
                assert_eq!(g.element_index(&e).unwrap(), idx);
            }
        }
    }

    #[test]
    fn row_major_examples() {
        let g = GroupSpec::square(6).unwrap();
        let e = g.element(vec![2, 3]).unwrap();
        assert_eq!(g.element_index(&e).unwrap(), 15);
        let e = g.element(vec![5, 5]).unwrap();
        assert_eq!(g.element_index(&e).unwrap(), 35);
    }

    #[test]
    fn add_wraps_each_coordinate() {
        let g = GroupSpec::square(6).unwrap();
        let a = g.element(vec![4, 5]).unwrap();
        let b = g.element(vec![3, 3]).unwrap();
        assert_eq!(g.add(&a, &b).unwrap().coords(), &[1, 2]);
    }

    #[test]
    fn add_rejects_mismatched_rank() {
        let g = GroupSpec::square(6).unwrap();
        let a = g.element(vec![1, 1]).unwrap();
        let bad = GroupElement {
            coords: vec![1, 1, 1],
        };
        assert!(matches!(
            g.add(&a, &bad),
            Err(Error::WrongRank {
                expected: 2,
                got: 3
            })
        ));
    }

    #[test]
    fn exponent_is_lcm() {
        assert_eq!(GroupSpec::new(vec![2, 6]).unwrap().exponent(), 6);
        assert_eq!(GroupSpec::new(vec![3, 4]).unwrap().exponent(), 12);
        assert_eq!(GroupSpec::square(6).unwrap().exponent(), 6);
    }

    #[test]
    fn group_literal_round_trip() {
        for s in ["6x6", "6", "2x6", "12x12"] {
            assert_eq!(GroupSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(GroupSpec::parse("6x").is_err());
        assert!(GroupSpec::parse("0x6").is_err());
        assert!(GroupSpec::parse("").is_err());
    }

    #[test]
    fn subset_text_round_trip() {
        let g = GroupSpec::square(6).unwrap();
        let s = GroupSubset::parse(&g, "0,0;0,1;1,5").unwrap();
        assert_eq!(s.cardinality(), 3);
        assert_eq!(s.to_string(), "0,0;0,1;1,5");
        assert_eq!(s.indices(), vec![0, 1, 11]);
    }

    #[test]
    fn subset_parse_rejects_bad_tokens_with_offsets() {
        let g = GroupSpec::square(6).unwrap();
        match GroupSubset::parse(&g, "0,0;0,7") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match GroupSubset::parse(&g, "0,1;0,0") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected ordering error, got {other:?}"),
        }
        assert!(GroupSubset::parse(&g, "0,0;0,0").is_err());
        assert!(GroupSubset::parse(&g, "0, 1").is_err());
        assert!(GroupSubset::parse(&g, "").is_err());
    }

    #[test]
    fn affine_symmetry_counts() {
        // |GL_2(Z_n)| * n^2: 6*4, 48*9, 288*36.
        for (n, want) in [(2u32, 24usize), (3, 432), (6, 10368)] {
            let g = GroupSpec::square(n).unwrap();
            assert_eq!(enumerate_affine_symmetries(&g).unwrap().len(), want);
        }
    }

    #[test]
    fn affine_maps_are_bijections() {
        for n in [2u32, 3, 4] {
            let g = GroupSpec::square(n).unwrap();
            for map in enumerate_affine_symmetries(&g).unwrap() {
                let perm = map.permutation(&g).unwrap();
                let mut seen = vec![false; g.order()];
                for p in perm {
                    assert!(!seen[p]);
                    seen[p] = true;
                }
            }
        }
    }

    #[test]
    fn singleton_canonicalizes_to_identity() {
        let g = GroupSpec::square(6).unwrap();
        let syms = enumerate_affine_symmetries(&g).unwrap();
        for e in g.elements() {
            let s = GroupSubset::from_elements(&g, &[e]).unwrap();
            let c = canonicalize_subset(&s, &syms).unwrap();
            assert_eq!(c.indices(), vec![0]);
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let g = GroupSpec::square(4).unwrap();
        let syms = enumerate_affine_symmetries(&g).unwrap();
        let s = GroupSubset::parse(&g, "0,1;1,2;3,3").unwrap();
        let c1 = canonicalize_subset(&s, &syms).unwrap();
        let c2 = canonicalize_subset(&c1, &syms).unwrap();
        assert_eq!(c1, c2);
    }

    #[test]
    fn row_profile_counts_rows() {
        let g = GroupSpec::square(6).unwrap();
        // Both full rows 0 and 1: profile [6, 6].
        let mut elems = Vec::new();
        for a in 0..2 {
            for b in 0..6 {
                elems.push(g.element(vec![a, b]).unwrap());
            }
        }
        let s = GroupSubset::from_elements(&g, &elems).unwrap();
        assert_eq!(row_profile(&s).unwrap(), vec![6, 6]);
        let profile_sum: usize = row_profile(&s).unwrap().iter().sum();
        assert_eq!(profile_sum, s.cardinality());
    }

    #[test]
    fn row_profile_requires_rank_two() {
        let g = GroupSpec::cyclic(6).unwrap();
        let s = GroupSubset::parse(&g, "0;1").unwrap();
        assert!(matches!(
            row_profile(&s),
            Err(Error::RankUnsupported { max: 2, got: 1 })
        ));
    }
}
