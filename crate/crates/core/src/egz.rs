//! Constructive zero-sum guarantees on residue sequences: the 2n-1 -> n
//! subsequence theorem, the Davenport bound for Z_m, the constrained
//! length-N subsequence for half-constant sequences, zero sums of
//! acceptable length, and the lifting of per-row column data to a full
//! zero-sum witness in Z_{2n}^2.
//!
//! All searches are cardinality-constrained subset-sum dynamic programs
//! with first-set parent links; following the links visits strictly
//! decreasing positions, so every reconstructed witness has distinct
//! positions without any explicit bookkeeping.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::sumset::{rotl, ResidueSet, SumsetTable};

/// An ordered sequence of residues mod m; repetition allowed, positions
/// meaningful. Text form: values comma-joined in order, e.g. `1,1,3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSequence {
    modulus: u32,
    values: Vec<u32>,
}

impl ResidueSequence {
    pub fn new(modulus: u32, values: Vec<u32>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        for &v in &values {
            if v >= modulus {
                return Err(Error::CoordinateRange { value: v, modulus });
            }
        }
        Ok(ResidueSequence { modulus, values })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// How many times each residue occurs; indexed by residue.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.modulus as usize];
        for &v in &self.values {
            counts[v as usize] += 1;
        }
        counts
    }

    /// Strict parser: comma-separated reduced residues, order preserved,
    /// repetition fine, whitespace not.
    pub fn parse(modulus: u32, s: &str) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        if s.is_empty() {
            return Err(Error::parse_at(0, "empty sequence literal"));
        }
        let mut values = Vec::new();
        let mut offset = 0;
        for tok in s.split(',') {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse_at(
                    offset,
                    format!("expected a residue, found {tok:?}"),
                ));
            }
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::parse_at(offset, format!("residue {tok:?} out of range")))?;
            if v >= modulus {
                return Err(Error::parse_at(
                    offset,
                    format!("residue {v} out of range for modulus {modulus}"),
                ));
            }
            values.push(v);
            offset += tok.len() + 1;
        }
        Ok(ResidueSequence { modulus, values })
    }
}

impl fmt::Display for ResidueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A zero-sum subsequence: strictly increasing positions into some
/// sequence whose values there sum to 0 mod m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumSubseqWitness {
    positions: Vec<usize>,
}

impl ZeroSumSubseqWitness {
    /// Checks the claimed positions against the sequence and wraps them.
    pub fn verify(seq: &ResidueSequence, positions: Vec<usize>) -> Result<Self> {
        if !positions.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Inconsistent(format!(
                "witness positions {positions:?} not strictly increasing"
            )));
        }
        if positions.iter().any(|&p| p >= seq.len()) {
            return Err(Error::Inconsistent(format!(
                "witness position out of range in {positions:?}"
            )));
        }
        let m = seq.modulus() as u64;
        let sum = positions
            .iter()
            .fold(0u64, |s, &p| (s + seq.values()[p] as u64) % m);
        if sum != 0 {
            return Err(Error::Inconsistent(format!(
                "witness positions {positions:?} sum to {sum}, not 0"
            )));
        }
        Ok(ZeroSumSubseqWitness { positions })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn values(&self, seq: &ResidueSequence) -> Vec<u32> {
        self.positions.iter().map(|&p| seq.values()[p]).collect()
    }
}

/// Subset-sum DP over sequence positions with a cardinality bound.
/// reach(k, v) holds iff some k distinct positions have values summing to
/// v; parents record the position that first completed each state.
struct SeqTable {
    modulus: u32,
    kmax: usize,
    reach: Vec<bool>,
    parent: Vec<usize>,
}

const NO_POS: usize = usize::MAX;

impl SeqTable {
    fn build(seq: &ResidueSequence, kmax: usize) -> SeqTable {
        let m = seq.modulus() as usize;
        let mut reach = vec![false; (kmax + 1) * m];
        let mut parent = vec![NO_POS; (kmax + 1) * m];
        reach[0] = true;
        for (pos, &val) in seq.values().iter().enumerate() {
            for k in (1..=kmax).rev() {
                for src in 0..m {
                    if !reach[(k - 1) * m + src] {
                        continue;
                    }
                    let dst = (src + val as usize) % m;
                    if !reach[k * m + dst] {
                        reach[k * m + dst] = true;
                        parent[k * m + dst] = pos;
                    }
                }
            }
        }
        SeqTable {
            modulus: seq.modulus(),
            kmax,
            reach,
            parent,
        }
    }

    fn reachable(&self, k: usize, v: u32) -> bool {
        k <= self.kmax && v < self.modulus && self.reach[k * self.modulus as usize + v as usize]
    }

    fn positions(&self, seq: &ResidueSequence, k: usize, v: u32) -> Option<Vec<usize>> {
        if !self.reachable(k, v) {
            return None;
        }
        let m = self.modulus as usize;
        let mut out = Vec::with_capacity(k);
        let (mut k, mut v) = (k, v as usize);
        while k > 0 {
            let pos = self.parent[k * m + v];
            debug_assert_ne!(pos, NO_POS);
            out.push(pos);
            v = (v + m - seq.values()[pos] as usize % m) % m;
            k -= 1;
        }
        debug_assert_eq!(v, 0);
        out.reverse();
        Some(out)
    }
}

/// For a sequence of 2n-1 residues mod n, returns n positions summing to
/// 0 mod n. Existence is a theorem, so absence is an internal error.
pub fn egz_witness(seq: &ResidueSequence, n: u32) -> Result<ZeroSumSubseqWitness> {
    if seq.modulus() != n {
        return Err(Error::MixedModuli(format!(
            "sequence modulus {} vs n {}",
            seq.modulus(),
            n
        )));
    }
    let want = 2 * n as usize - 1;
    if seq.len() != want {
        return Err(Error::SequenceLength {
            want,
            got: seq.len(),
        });
    }
    let table = SeqTable::build(seq, n as usize);
    let positions = table
        .positions(seq, n as usize, 0)
        .ok_or_else(|| Error::Inconsistent(format!("no n-term zero sum in {seq}")))?;
    ZeroSumSubseqWitness::verify(seq, positions)
}

/// Nonempty zero-sum subsequence of a sequence over Z_m. Length >= m makes
/// one certain (prefix sums of the first m values repeat or hit zero, and
/// the gap is a consecutive block). Shorter inputs are searched anyway;
/// only a fruitless search is an error.
pub fn davenport_witness(seq: &ResidueSequence) -> Result<ZeroSumSubseqWitness> {
    let m = seq.modulus() as usize;
    if seq.len() >= m {
        let mut seen: Vec<Option<usize>> = vec![None; m];
        let mut acc = 0usize;
        for j in 0..m {
            acc = (acc + seq.values()[j] as usize) % m;
            if acc == 0 {
                return ZeroSumSubseqWitness::verify(seq, (0..=j).collect());
            }
            if let Some(i) = seen[acc] {
                return ZeroSumSubseqWitness::verify(seq, (i + 1..=j).collect());
            }
            seen[acc] = Some(j);
        }
        unreachable!("m prefix sums over Z_m must repeat or hit zero");
    }
    let table = SeqTable::build(seq, seq.len());
    for k in 1..=seq.len() {
        if let Some(positions) = table.positions(seq, k, 0) {
            return ZeroSumSubseqWitness::verify(seq, positions);
        }
    }
    Err(Error::NoGuarantee {
        len: seq.len(),
        modulus: seq.modulus(),
    })
}

/// For a sequence of 2N+1 residues mod N whose first N values are a
/// constant a1 and whose remaining N+1 values avoid a1 and take at least
/// two distinct values: a length-N zero-sum subsequence using at least one
/// head position and at least one tail position. Head counts are tried in
/// increasing order, so the output is deterministic.
pub fn gen_witness(seq: &ResidueSequence, n: u32) -> Result<ZeroSumSubseqWitness> {
    if seq.modulus() != n {
        return Err(Error::MixedModuli(format!(
            "sequence modulus {} vs N {}",
            seq.modulus(),
            n
        )));
    }
    let nn = n as usize;
    let want = 2 * nn + 1;
    if seq.len() != want {
        return Err(Error::SequenceLength {
            want,
            got: seq.len(),
        });
    }
    let a1 = seq.values()[0];
    if seq.values()[..nn].iter().any(|&v| v != a1) {
        return Err(Error::Hypothesis {
            clause: "first N values equal",
            detail: format!("head of {seq} is not constant"),
        });
    }
    let tail = &seq.values()[nn..];
    if let Some(p) = tail.iter().position(|&v| v == a1) {
        return Err(Error::Hypothesis {
            clause: "tail values differ from the head value",
            detail: format!("position {} repeats the head value {a1}", nn + p),
        });
    }
    if tail.iter().any(|&v| v != tail[0]) {
        // fine: at least two distinct tail values
    } else {
        return Err(Error::Hypothesis {
            clause: "tail contains two distinct values",
            detail: format!("all tail values equal {}", tail[0]),
        });
    }
    let tail_seq = ResidueSequence::new(n, tail.to_vec())?;
    let table = SeqTable::build(&tail_seq, nn - 1);
    for head_count in 1..nn {
        let tail_count = nn - head_count;
        let head_sum = (head_count as u64 * a1 as u64 % n as u64) as u32;
        let target = (n - head_sum) % n;
        if let Some(tail_pos) = table.positions(&tail_seq, tail_count, target) {
            let mut positions: Vec<usize> = (0..head_count).collect();
            positions.extend(tail_pos.into_iter().map(|p| nn + p));
            return ZeroSumSubseqWitness::verify(seq, positions);
        }
    }
    Err(Error::Inconsistent(format!(
        "no constrained length-{n} zero sum in {seq}"
    )))
}

/// Result of the acceptable-length search: either a witness whose length
/// avoids {2, 2n}, or proof by exhaustion that no such length carries a
/// zero sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AcceptableOutcome {
    Found(ZeroSumSubseqWitness),
    AbsentVerified { lengths_checked: Vec<usize> },
}

/// Over Z_{2n}: given 2n+2 nonzero values, none repeated more than 2n
/// times, searches for a zero-sum subsequence whose length is neither 2
/// nor 2n. Lengths are tried in increasing order (1, 3, 4, ..., 2n-1,
/// 2n+1, 2n+2), so the first hit is the shortest.
pub fn acceptable_length_witness(seq: &ResidueSequence) -> Result<AcceptableOutcome> {
    let m = seq.modulus();
    if !m.is_multiple_of(2) {
        return Err(Error::OddModulus(m));
    }
    let want = m as usize + 2;
    if seq.len() != want {
        return Err(Error::SequenceLength {
            want,
            got: seq.len(),
        });
    }
    if let Some(p) = seq.values().iter().position(|&v| v == 0) {
        return Err(Error::Hypothesis {
            clause: "values nonzero",
            detail: format!("position {p} holds 0"),
        });
    }
    if let Some((v, &c)) = seq
        .multiplicities()
        .iter()
        .enumerate()
        .find(|&(_, &c)| c > m as usize)
    {
        return Err(Error::Hypothesis {
            clause: "no value repeated more than 2n times",
            detail: format!("value {v} occurs {c} times"),
        });
    }
    let table = SeqTable::build(seq, seq.len());
    let lengths: Vec<usize> = (1..=seq.len())
        .filter(|&l| l != 2 && l != m as usize)
        .collect();
    for &l in &lengths {
        if let Some(positions) = table.positions(seq, l, 0) {
            return Ok(AcceptableOutcome::Found(ZeroSumSubseqWitness::verify(
                seq, positions,
            )?));
        }
    }
    Ok(AcceptableOutcome::AbsentVerified {
        lengths_checked: lengths,
    })
}

/// One row of a lifting instance: all chosen elements share the first
/// coordinate `value`; `multiplicity` of them must be picked with distinct
/// second coordinates drawn from `columns`.
#[derive(Debug, Clone)]
pub struct LiftRow {
    pub value: u32,
    pub multiplicity: usize,
    pub columns: ResidueSet,
}

/// Row data for lifting to Z_m^2 (m even in the intended use, but nothing
/// here needs it): multiplicities sum to m, each row fits its column set,
/// rows are distinct, and the weighted first-coordinate sum is 0 mod m.
#[derive(Debug, Clone)]
pub struct LiftInstance {
    modulus: u32,
    rows: Vec<LiftRow>,
}

impl LiftInstance {
    pub fn new(modulus: u32, rows: Vec<LiftRow>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        let mut total = 0usize;
        let mut weighted = 0u64;
        for row in &rows {
            if row.columns.modulus() != modulus {
                return Err(Error::MixedModuli(format!(
                    "row column modulus {} vs instance modulus {}",
                    row.columns.modulus(),
                    modulus
                )));
            }
            if row.value >= modulus {
                return Err(Error::CoordinateRange {
                    value: row.value,
                    modulus,
                });
            }
            if row.multiplicity > row.columns.cardinality() {
                return Err(Error::Hypothesis {
                    clause: "row multiplicity within its column set",
                    detail: format!(
                        "row {} wants {} of {} columns",
                        row.value,
                        row.multiplicity,
                        row.columns.cardinality()
                    ),
                });
            }
            total += row.multiplicity;
            weighted = (weighted + row.multiplicity as u64 * row.value as u64) % modulus as u64;
        }
        for i in 1..rows.len() {
            if rows[..i].iter().any(|r| r.value == rows[i].value) {
                return Err(Error::Hypothesis {
                    clause: "row values distinct",
                    detail: format!("row value {} repeats", rows[i].value),
                });
            }
        }
        if total != modulus as usize {
            return Err(Error::Hypothesis {
                clause: "multiplicities sum to the target length",
                detail: format!("multiplicities sum to {total}, want {modulus}"),
            });
        }
        if weighted != 0 {
            return Err(Error::Hypothesis {
                clause: "weighted row sum zero",
                detail: format!("sum of value*multiplicity is {weighted} mod {modulus}"),
            });
        }
        Ok(LiftInstance { modulus, rows })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rows(&self) -> &[LiftRow] {
        &self.rows
    }
}

/// Lifts row data to an explicit list of m elements of Z_m^2 summing to
/// (0, 0): per row, the restricted sumset table gives the achievable
/// column sums; a Minkowski fold over rows decides feasibility, and
/// backtracking picks per-row column sums (smallest first), then per-row
/// distinct columns. None when the fold misses 0.
pub fn lift_witness(inst: &LiftInstance) -> Result<Option<Vec<GroupElement>>> {
    let m = inst.modulus();
    let active: Vec<&LiftRow> = inst.rows().iter().filter(|r| r.multiplicity > 0).collect();
    let mut tables = Vec::with_capacity(active.len());
    let mut row_masks = Vec::with_capacity(active.len());
    for row in &active {
        let table = SumsetTable::build(&row.columns, row.multiplicity)?;
        row_masks.push(table.row(row.multiplicity)?.mask());
        tables.push(table);
    }
    // prefix[j] = column sums achievable by the first j rows together.
    let mut prefix = Vec::with_capacity(active.len() + 1);
    prefix.push(1u64);
    for &mask in &row_masks {
        let prev = *prefix.last().expect("nonempty");
        let mut next = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let c = bits.trailing_zeros();
            next |= rotl(prev, c, m);
            bits &= bits - 1;
        }
        prefix.push(next);
    }
    if prefix[active.len()] & 1 == 0 {
        return Ok(None);
    }
    let group = GroupSpec::square(m)?;
    let mut chosen_sums = vec![0u32; active.len()];
    let mut target = 0u32;
    for j in (0..active.len()).rev() {
        let mut chosen = None;
        for c in 0..m {
            if row_masks[j] & (1 << c) == 0 {
                continue;
            }
            let need = (target + m - c) % m;
            if prefix[j] & (1 << need) != 0 {
                chosen = Some(c);
                break;
            }
        }
        let c = chosen.ok_or_else(|| {
            Error::Inconsistent("fold backtracking lost a reachable state".into())
        })?;
        chosen_sums[j] = c;
        target = (target + m - c) % m;
    }
    let mut elements = Vec::with_capacity(m as usize);
    for (j, row) in active.iter().enumerate() {
        let cols = tables[j]
            .witness(row.multiplicity, chosen_sums[j])
            .ok_or_else(|| Error::Inconsistent("row table lost its witness".into()))?;
        for b in cols {
            elements.push(group.element(vec![row.value, b])?);
        }
    }
    let sum = group.sum(&elements)?;
    let mut sorted = elements.clone();
    sorted.sort();
    sorted.dedup();
    if sum != group.identity() || sorted.len() != elements.len() || elements.len() != m as usize {
        return Err(Error::Inconsistent(
            "lifted witness fails re-verification".into(),
        ));
    }
    Ok(Some(elements))
}
