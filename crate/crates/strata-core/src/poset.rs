//! The refinement poset of representation types with a fixed total dimension.
//!
//! The partial order is generated by two elementary moves applied to a type:
//! splitting one pair (d, e) into (a, e), (b, e) with a + b = d, and merging
//! two pairs with equal first component (d, e1), (d, e2) into (d, e1 + e2).
//! A type mu is below tau when a chain of such moves leads from tau to mu.

use crate::reptype::RepType;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("total dimension must be at least 1")]
    InvalidDimension,
    #[error("type {0} has total dimension {1}, not {2}")]
    NotAnElement(RepType, u64, u32),
}

/// One elementary refinement move. Split: (d, e) -> (a, e), (b, e) with
/// a >= b >= 1 and a + b = d. Merge: (d, e1), (d, e2) -> (d, e1 + e2) with
/// e1 >= e2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefinementStep {
    Split { d: u32, e: u32, a: u32, b: u32 },
    Merge { d: u32, e1: u32, e2: u32 },
}

/// All representation types of the given total dimension, in listing order.
pub fn enumerate_rt(n: u32) -> Result<Vec<RepType>, PosetError> {
    if n == 0 {
        return Err(PosetError::InvalidDimension);
    }
    // candidate pairs sorted descending by the canonical storage key, so the
    // recursion below emits canonically sorted sequences directly
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for d in 1..=n {
        for e in 1..=n / d {
            pairs.push((d, e));
        }
    }
    pairs.sort_by(|a, b| b.cmp(a));

    let mut out = Vec::new();
    let mut stack: Vec<(u32, u32)> = Vec::new();
    fn rec(
        pairs: &[(u32, u32)],
        start: usize,
        remaining: u32,
        stack: &mut Vec<(u32, u32)>,
        out: &mut Vec<RepType>,
    ) {
        if remaining == 0 {
            out.push(RepType::new(stack.clone()).expect("positive pairs"));
            return;
        }
        for idx in start..pairs.len() {
            let (d, e) = pairs[idx];
            if d * e <= remaining {
                stack.push((d, e));
                rec(pairs, idx, remaining - d * e, stack, out);
                stack.pop();
            }
        }
    }
    rec(&pairs, 0, n, &mut stack, &mut out);
    out.sort();
    Ok(out)
}

/// Embed a type of total dimension n - 1 as [(1,1)] joined with it.
pub fn embed_11(mu: &RepType) -> RepType {
    let one = RepType::new(vec![(1, 1)]).expect("valid");
    one.concat(mu)
}

/// Results of all elementary refinements of `t`, deduplicated by resulting
/// type; every step leading to a given result is retained. Sorted by result
/// in listing order.
pub fn elementary_refinements(t: &RepType) -> Vec<(RepType, Vec<RefinementStep>)> {
    let mut acc: BTreeMap<RepType, BTreeSet<RefinementStep>> = BTreeMap::new();
    // splits: one copy of (d, e) replaced by (a, e), (b, e)
    let distinct: BTreeSet<(u32, u32)> = t.pairs().iter().copied().collect();
    for &(d, e) in &distinct {
        for a in 1..d {
            let b = d - a;
            if a < b {
                continue;
            }
            let base = t.remove_one(d, e);
            let mut pairs = base.map_or_else(Vec::new, |x| x.pairs().to_vec());
            pairs.push((a, e));
            pairs.push((b, e));
            let result = RepType::new(pairs).expect("valid");
            acc.entry(result).or_default().insert(RefinementStep::Split { d, e, a, b });
        }
    }
    // merges: two pairs with equal d
    let list = t.pairs();
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            let (d1, e1) = list[i];
            let (d2, e2) = list[j];
            if d1 != d2 {
                continue;
            }
            let (hi, lo) = if e1 >= e2 { (e1, e2) } else { (e2, e1) };
            let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(list.len() - 1);
            for (k, &p) in list.iter().enumerate() {
                if k != i && k != j {
                    pairs.push(p);
                }
            }
            pairs.push((d1, e1 + e2));
            let result = RepType::new(pairs).expect("valid");
            acc.entry(result).or_default().insert(RefinementStep::Merge { d: d1, e1: hi, e2: lo });
        }
    }
    acc.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect()
}

/// Dense bit matrix.
struct BitMatrix {
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix { words, data: vec![0; n * words] }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn or_row(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words, src * self.words);
        for k in 0..self.words {
            let v = self.data[s + k];
            self.data[d + k] |= v;
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }
}

/// The full refinement poset on all types of total dimension n, with the
/// elementary refinement edges, dense reachability, and cover relation.
pub struct RtPoset {
    n: u32,
    elements: Vec<RepType>,
    index: HashMap<RepType, usize>,
    refinements: Vec<Vec<(usize, Vec<RefinementStep>)>>,
    reach: BitMatrix,
    covers: Vec<(usize, usize)>,
}

impl RtPoset {
    pub fn new(n: u32) -> Result<Self, PosetError> {
        let elements = enumerate_rt(n)?;
        let count = elements.len();
        let index: HashMap<RepType, usize> =
            elements.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let refinements: Vec<Vec<(usize, Vec<RefinementStep>)>> = elements
            .iter()
            .map(|t| {
                elementary_refinements(t)
                    .into_iter()
                    .map(|(result, steps)| (index[&result], steps))
                    .collect()
            })
            .collect();

        // refinements strictly decrease sum(d^2) + s, so ordering by that
        // value ascending is a reverse topological order of the edge DAG
        let mut order: Vec<usize> = (0..count).collect();
        let grade =
            |t: &RepType| t.sum_d_squared() + t.parts() as u64;
        order.sort_by_key(|&i| grade(&elements[i]));
        let mut reach = BitMatrix::new(count);
        for &i in &order {
            reach.set(i, i);
            let targets: Vec<usize> = refinements[i].iter().map(|&(j, _)| j).collect();
            for j in targets {
                debug_assert!(grade(&elements[j]) < grade(&elements[i]));
                reach.or_row(i, j);
            }
        }

        // covers: strict(i) minus everything reachable through an intermediate
        let mut covers = Vec::new();
        let words = reach.words;
        for i in 0..count {
            let mut strict: Vec<u64> = reach.row(i).to_vec();
            strict[i / 64] &= !(1u64 << (i % 64));
            let mut via: Vec<u64> = vec![0; words];
            for j in 0..count {
                if j != i && strict[j / 64] >> (j % 64) & 1 == 1 {
                    // union of strict-below sets; mask j's own bit per term
                    for (k, (v, &rw)) in via.iter_mut().zip(reach.row(j)).enumerate() {
                        let mut w = rw;
                        if k == j / 64 {
                            w &= !(1u64 << (j % 64));
                        }
                        *v |= w;
                    }
                }
            }
            for j in 0..count {
                if j != i
                    && strict[j / 64] >> (j % 64) & 1 == 1
                    && via[j / 64] >> (j % 64) & 1 == 0
                {
                    covers.push((i, j));
                }
            }
        }
        covers.sort();

        Ok(RtPoset { n, elements, index, refinements, reach, covers })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in listing order.
    pub fn elements(&self) -> &[RepType] {
        &self.elements
    }

    pub fn index_of(&self, t: &RepType) -> Option<usize> {
        self.index.get(t).copied()
    }

    fn require(&self, t: &RepType) -> Result<usize, PosetError> {
        self.index_of(t)
            .ok_or_else(|| PosetError::NotAnElement(t.clone(), t.total_dim(), self.n))
    }

    /// Elementary refinement targets of element i, with their steps.
    pub fn refinements_of(&self, i: usize) -> &[(usize, Vec<RefinementStep>)] {
        &self.refinements[i]
    }

    /// elements[j] is below-or-equal elements[i] (i refines to j).
    pub fn leq_idx(&self, j: usize, i: usize) -> bool {
        self.reach.get(i, j)
    }

    /// mu is below-or-equal tau in the refinement order.
    pub fn leq(&self, mu: &RepType, tau: &RepType) -> Result<bool, PosetError> {
        let jm = self.require(mu)?;
        let it = self.require(tau)?;
        Ok(self.leq_idx(jm, it))
    }

    /// Cover pairs (coarser index, finer index), sorted.
    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        self.covers.iter().filter(|&&(a, _)| a == i).map(|&(_, b)| b).collect()
    }

    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        self.covers.iter().filter(|&&(_, b)| b == i).map(|&(a, _)| a).collect()
    }

    /// Index of the unique maximal element [(n,1)].
    pub fn maximum(&self) -> usize {
        (0..self.len())
            .find(|&i| (0..self.len()).all(|j| self.leq_idx(j, i)))
            .expect("refinement posets have a top")
    }

    /// Index of the unique minimal element [(1,n)].
    pub fn minimum(&self) -> usize {
        (0..self.len())
            .find(|&i| (0..self.len()).all(|j| self.leq_idx(i, j)))
            .expect("refinement posets have a bottom")
    }

    /// Number of strict pairs (j below i, j != i), for signatures and tests.
    pub fn strict_below_count(&self, i: usize) -> usize {
        (0..self.len()).filter(|&j| j != i && self.leq_idx(j, i)).count()
    }

    pub fn strict_above_count(&self, i: usize) -> usize {
        (0..self.len()).filter(|&j| j != i && self.leq_idx(i, j)).count()
    }

    /// DOT digraph; edges run from coarser to finer along covers.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph rt_{} {{", self.n);
        let _ = writeln!(out, "  rankdir=TB;");
        for (i, t) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  {} [label=\"{}\"];", i, t);
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  {} -> {};", a, b);
        }
        out.push_str("}\n");
        out
    }

    /// JSON document with the elements, cover pairs, and strict reachability
    /// pairs; indices refer to the element list, coarser index first.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            n: u32,
            elements: Vec<String>,
            covers: &'a [(usize, usize)],
            reachability: Vec<(usize, usize)>,
        }
        let mut reachability = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.leq_idx(j, i) {
                    reachability.push((i, j));
                }
            }
        }
        let doc = Doc {
            n: self.n,
            elements: self.elements.iter().map(|t| t.to_string()).collect(),
            covers: &self.covers,
            reachability,
        };
        serde_json::to_string(&doc).expect("serializable")
    }
}
