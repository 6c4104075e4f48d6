//! k-fold sumsets over Z_m for m <= 64, restricted (distinct summands) and
//! unrestricted, plus pairwise sumsets and the small-set form classification
//! used by the Z_6 case analyses.
//!
//! Sets are u64 bitmasks, so every sumset step is a handful of shifts. The
//! restricted table keeps first-set parent links and can reconstruct one
//! witness (k distinct elements with a given sum) per reachable state.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus a `ResidueSet` can carry; one u64 word of membership bits.
pub const MAX_MODULUS: u32 = 64;

fn full_mask(m: u32) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Cyclic left rotation of the low m bits: residue v moves to (v + shift) % m.
pub(crate) fn rotl(mask: u64, shift: u32, m: u32) -> u64 {
    let s = shift % m;
    if s == 0 {
        return mask & full_mask(m);
    }
    ((mask << s) | (mask >> (m - s))) & full_mask(m)
}

/// A subset of Z_m, m <= 64. Text form: residues ascending, comma-joined,
/// e.g. `0,2,4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: u32,
    mask: u64,
}

impl ResidueSet {
    pub fn empty(modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        if modulus > MAX_MODULUS {
            return Err(Error::ModulusTooLarge {
                got: modulus,
                limit: MAX_MODULUS,
            });
        }
        Ok(ResidueSet { modulus, mask: 0 })
    }

    pub fn full(modulus: u32) -> Result<Self> {
        let mut s = Self::empty(modulus)?;
        s.mask = full_mask(modulus);
        Ok(s)
    }

    pub fn from_residues(modulus: u32, residues: &[u32]) -> Result<Self> {
        let mut s = Self::empty(modulus)?;
        for &r in residues {
            s.insert(r)?;
        }
        Ok(s)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn insert(&mut self, r: u32) -> Result<bool> {
        if r >= self.modulus {
            return Err(Error::CoordinateRange {
                value: r,
                modulus: self.modulus,
            });
        }
        let fresh = self.mask & (1 << r) == 0;
        self.mask |= 1 << r;
        Ok(fresh)
    }

    pub fn contains(&self, r: u32) -> bool {
        r < self.modulus && self.mask & (1 << r) != 0
    }

    pub fn cardinality(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn residues(&self) -> Vec<u32> {
        (0..self.modulus).filter(|&r| self.contains(r)).collect()
    }

    /// Strict parser: ascending residues, digits and commas only, duplicates
    /// and whitespace rejected with the byte offset of the bad token.
    pub fn parse(modulus: u32, s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::parse_at(0, "empty residue set literal"));
        }
        let mut set = Self::empty(modulus)?;
        let mut last: Option<u32> = None;
        let mut offset = 0;
        for tok in s.split(',') {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse_at(
                    offset,
                    format!("expected a residue, found {tok:?}"),
                ));
            }
            let r: u32 = tok
                .parse()
                .map_err(|_| Error::parse_at(offset, format!("residue {tok:?} out of range")))?;
            if r >= modulus {
                return Err(Error::parse_at(
                    offset,
                    format!("residue {r} out of range for modulus {modulus}"),
                ));
            }
            if let Some(prev) = last {
                if r <= prev {
                    return Err(Error::parse_at(
                        offset,
                        format!("residue {r} out of order; residues must be strictly increasing"),
                    ));
                }
            }
            last = Some(r);
            set.mask |= 1 << r;
            offset += tok.len() + 1;
        }
        Ok(set)
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues().iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Which of the three structural shapes a subset of Z_{2n} has. Only
/// 2-element sets can be form I; form II means all members share parity.
/// The `{a, a+3}` offset is literal and independent of the modulus, so
/// form I is only structurally meaningful over Z_6.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormClass {
    FormI,
    FormII,
    FormIII,
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormClass::FormI => "FORM_I",
            FormClass::FormII => "FORM_II",
            FormClass::FormIII => "FORM_III",
        };
        write!(f, "{s}")
    }
}

pub fn classify_form(y: &ResidueSet) -> Result<FormClass> {
    let m = y.modulus();
    if !m.is_multiple_of(2) {
        return Err(Error::OddModulus(m));
    }
    if y.is_empty() {
        return Err(Error::EmptySet);
    }
    let rs = y.residues();
    if rs.len() == 2 {
        let (a, b) = (rs[0], rs[1]);
        if (a + 3) % m == b || (b + 3) % m == a {
            return Ok(FormClass::FormI);
        }
    }
    if rs.iter().all(|r| r % 2 == rs[0] % 2) {
        Ok(FormClass::FormII)
    } else {
        Ok(FormClass::FormIII)
    }
}

/// Reachability table for sums of exactly k distinct elements of a source
/// set, 0 <= k <= kmax. Row 0 is {0}. Parent links record, for each state
/// first reached, which element completed it; following them yields strictly
/// decreasing elements, so reconstructed witnesses are distinct by
/// construction.
#[derive(Debug, Clone)]
pub struct SumsetTable {
    modulus: u32,
    kmax: usize,
    reach: Vec<u64>,
    parent: Vec<u32>,
}

const NO_PARENT: u32 = u32::MAX;

impl SumsetTable {
    /// Builds the table by one pass per element (ascending), sweeping k
    /// downward so each element contributes at most once per sum.
    pub fn build(a: &ResidueSet, kmax: usize) -> Result<Self> {
        if kmax > a.cardinality() {
            return Err(Error::Arity {
                k: kmax,
                size: a.cardinality(),
            });
        }
        let m = a.modulus();
        let mut reach = vec![0u64; kmax + 1];
        reach[0] = 1;
        let mut parent = vec![NO_PARENT; (kmax + 1) * m as usize];
        for elem in a.residues() {
            for k in (1..=kmax).rev() {
                let new = rotl(reach[k - 1], elem, m) & !reach[k];
                if new == 0 {
                    continue;
                }
                reach[k] |= new;
                let mut bits = new;
                while bits != 0 {
                    let v = bits.trailing_zeros();
                    parent[k * m as usize + v as usize] = elem;
                    bits &= bits - 1;
                }
            }
        }
        Ok(SumsetTable {
            modulus: m,
            kmax,
            reach,
            parent,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn reachable(&self, k: usize, v: u32) -> bool {
        k <= self.kmax && v < self.modulus && self.reach[k] & (1 << v) != 0
    }

    /// All values reachable as a sum of exactly k distinct elements.
    pub fn row(&self, k: usize) -> Result<ResidueSet> {
        if k > self.kmax {
            return Err(Error::Arity { k, size: self.kmax });
        }
        let mut s = ResidueSet::empty(self.modulus)?;
        s.mask = self.reach[k];
        Ok(s)
    }

    /// k distinct source elements summing to v, ascending, if (k, v) is
    /// reachable.
    pub fn witness(&self, k: usize, v: u32) -> Option<Vec<u32>> {
        if !self.reachable(k, v) {
            return None;
        }
        let m = self.modulus;
        let mut elems = Vec::with_capacity(k);
        let (mut k, mut v) = (k, v);
        while k > 0 {
            let e = self.parent[k * m as usize + v as usize];
            debug_assert_ne!(e, NO_PARENT, "reachable state has a parent");
            elems.push(e);
            v = (v + m - e) % m;
            k -= 1;
        }
        debug_assert_eq!(v, 0);
        elems.reverse();
        Some(elems)
    }
}

/// Sums of exactly k pairwise-distinct elements of A. k=0 gives {0} (the
/// empty sum), k=|A| the singleton {sum of A}; k > |A| is an arity error.
pub fn restricted_sumset(a: &ResidueSet, k: usize) -> Result<ResidueSet> {
    SumsetTable::build(a, k)?.row(k)
}

/// k distinct elements of A summing to `target`, or None when no such
/// choice exists. Witnesses are re-summed before being returned.
pub fn restricted_sumset_witness(
    a: &ResidueSet,
    k: usize,
    target: u32,
) -> Result<Option<Vec<u32>>> {
    if target >= a.modulus() {
        return Err(Error::CoordinateRange {
            value: target,
            modulus: a.modulus(),
        });
    }
    let table = SumsetTable::build(a, k)?;
    match table.witness(k, target) {
        None => Ok(None),
        Some(elems) => {
            let m = a.modulus();
            let sum = elems.iter().fold(0u64, |s, &e| (s + e as u64) % m as u64);
            let distinct = elems.windows(2).all(|w| w[0] < w[1]);
            let member = elems.iter().all(|&e| a.contains(e));
            if sum != target as u64 || !distinct || !member || elems.len() != k {
                return Err(Error::Inconsistent(format!(
                    "witness {elems:?} fails re-verification for k={k}, target={target}"
                )));
            }
            Ok(Some(elems))
        }
    }
}

/// Sums of k elements of A with repetition allowed, k >= 1.
pub fn unrestricted_sumset(a: &ResidueSet, k: usize) -> Result<ResidueSet> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if k == 0 {
        return Err(Error::Arity {
            k: 0,
            size: a.cardinality(),
        });
    }
    let m = a.modulus();
    let mut acc = a.mask();
    for _ in 1..k {
        let mut next = 0u64;
        for e in a.residues() {
            next |= rotl(acc, e, m);
        }
        acc = next;
    }
    let mut s = ResidueSet::empty(m)?;
    s.mask = acc;
    Ok(s)
}

/// {a + b : a in A, b in B}, both nonempty, over the same modulus.
pub fn pairwise_sumset(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    if a.modulus() != b.modulus() {
        return Err(Error::MixedModuli(format!(
            "{} vs {}",
            a.modulus(),
            b.modulus()
        )));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let m = a.modulus();
    let mut acc = 0u64;
    for e in a.residues() {
        acc |= rotl(b.mask(), e, m);
    }
    let mut s = ResidueSet::empty(m)?;
    s.mask = acc;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(m: u32, elems: &[u32]) -> ResidueSet {
        ResidueSet::from_residues(m, elems).unwrap()
    }

    #[test]
    fn restricted_pair_sums() {
        assert_eq!(
            restricted_sumset(&rs(6, &[0, 1, 2]), 2).unwrap(),
            rs(6, &[1, 2, 3])
        );
    }

    #[test]
    fn restricted_full_and_all_but_one() {
        let z6 = ResidueSet::full(6).unwrap();
        assert_eq!(restricted_sumset(&z6, 6).unwrap(), rs(6, &[3]));
        assert_eq!(restricted_sumset(&z6, 5).unwrap(), z6);
    }

    #[test]
    fn restricted_k_zero_is_zero_singleton() {
        assert_eq!(restricted_sumset(&rs(6, &[2, 5]), 0).unwrap(), rs(6, &[0]));
    }

    #[test]
    fn restricted_arity_error() {
        assert!(matches!(
            restricted_sumset(&rs(6, &[0, 1]), 3),
            Err(Error::Arity { k: 3, size: 2 })
        ));
    }

    #[test]
    fn unrestricted_examples() {
        assert_eq!(
            unrestricted_sumset(&rs(6, &[0, 3]), 2).unwrap(),
            rs(6, &[0, 3])
        );
        assert_eq!(unrestricted_sumset(&rs(5, &[1]), 5).unwrap(), rs(5, &[0]));
        assert_eq!(
            unrestricted_sumset(&rs(6, &[1, 2]), 3).unwrap(),
            rs(6, &[0, 3, 4, 5])
        );
        assert!(matches!(
            unrestricted_sumset(&ResidueSet::empty(6).unwrap(), 2),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn pairwise_examples() {
        assert_eq!(
            pairwise_sumset(&rs(6, &[1, 2]), &rs(6, &[4, 5])).unwrap(),
            rs(6, &[0, 1, 5])
        );
        assert!(pairwise_sumset(&rs(6, &[1]), &rs(8, &[1])).is_err());
    }

    #[test]
    fn pairwise_large_sets_hit_zero() {
        // |A| + |B| > m forces 0 in A + B; check every such pair over Z_6.
        for am in 1u64..64 {
            for bm in 1u64..64 {
                if (am.count_ones() + bm.count_ones()) <= 6 {
                    continue;
                }
                let a = ResidueSet {
                    modulus: 6,
                    mask: am,
                };
                let b = ResidueSet {
                    modulus: 6,
                    mask: bm,
                };
                assert!(pairwise_sumset(&a, &b).unwrap().contains(0));
            }
        }
    }

    #[test]
    fn form_classification() {
        assert_eq!(classify_form(&rs(6, &[1, 4])).unwrap(), FormClass::FormI);
        assert_eq!(classify_form(&rs(6, &[2, 5])).unwrap(), FormClass::FormI);
        assert_eq!(classify_form(&rs(6, &[0, 3])).unwrap(), FormClass::FormI);
        assert_eq!(
            classify_form(&rs(6, &[0, 2, 4])).unwrap(),
            FormClass::FormII
        );
        assert_eq!(
            classify_form(&rs(6, &[0, 1, 3])).unwrap(),
            FormClass::FormIII
        );
        assert!(matches!(
            classify_form(&rs(5, &[1, 4])),
            Err(Error::OddModulus(5))
        ));
        assert!(matches!(
            classify_form(&ResidueSet::empty(6).unwrap()),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn witness_round_trips() {
        let a = rs(6, &[0, 1, 2]);
        let w = restricted_sumset_witness(&a, 2, 3).unwrap().unwrap();
        assert_eq!(w, vec![1, 2]);
        assert_eq!(
            restricted_sumset_witness(&rs(6, &[0, 2, 4]), 2, 1).unwrap(),
            None
        );
    }

    #[test]
    fn witness_every_reachable_state() {
        // Every reachable (k, v) over a few sets yields a valid witness.
        for mask in [0b101101u64, 0b111111, 0b011010] {
            let a = ResidueSet { modulus: 6, mask };
            let n = a.cardinality();
            let table = SumsetTable::build(&a, n).unwrap();
            for k in 0..=n {
                for v in 0..6 {
                    if table.reachable(k, v) {
                        let w = table.witness(k, v).unwrap();
                        assert_eq!(w.len(), k);
                        assert!(w.windows(2).all(|p| p[0] < p[1]));
                        assert!(w.iter().all(|&e| a.contains(e)));
                        let sum: u32 = w.iter().sum();
                        assert_eq!(sum % 6, v);
                    } else {
                        assert!(table.witness(k, v).is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn complement_bijection_on_restricted_rows() {
        // a -> sum(A) - a maps the k-row onto the (|A|-k)-row.
        for mask in 1u64..64 {
            let a = ResidueSet { modulus: 6, mask };
            let n = a.cardinality();
            let sigma: u32 = a.residues().iter().sum::<u32>() % 6;
            for k in 0..=n {
                let row_k = restricted_sumset(&a, k).unwrap();
                let row_nk = restricted_sumset(&a, n - k).unwrap();
                for v in row_k.residues() {
                    assert!(row_nk.contains((sigma + 6 - v) % 6));
                }
            }
        }
    }

    #[test]
    fn residue_set_text_round_trip() {
        let s = ResidueSet::parse(6, "0,2,4").unwrap();
        assert_eq!(s.to_string(), "0,2,4");
        assert!(ResidueSet::parse(6, "0,2,2").is_err());
        assert!(ResidueSet::parse(6, "2,0").is_err());
        assert!(ResidueSet::parse(6, "0, 2").is_err());
        assert!(ResidueSet::parse(6, "").is_err());
        match ResidueSet::parse(6, "0,9") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
