//! Finite rational matrix groups: enumeration from generators,
//! pseudo-reflection detection, fixed subspaces, the codimension-2 test
//! over all normal pairs of subgroups, invariant bilinear forms, and the
//! left regular representation built from a multiplication table.

use crate::linalg::{Q, QMat};
use crate::matrixrep::parse_entry;
use num_traits::{One, Zero};
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("a group needs at least one generator")]
    Empty,
    #[error("generator {index} is not invertible")]
    NonInvertibleGenerator { index: usize },
    #[error("generator {index} is {rows}x{cols}, expected square matrices of one size")]
    Shape { index: usize, rows: usize, cols: usize },
    #[error("enumeration exceeded the bound {bound}")]
    BoundExceeded { bound: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("malformed group document: {0}")]
    Document(String),
}

pub const DEFAULT_GROUP_BOUND: usize = 512;
pub const DEFAULT_SUBGROUP_BOUND: usize = 4096;

/// A finite subgroup of GL_n(Q), fully enumerated, with an eager
/// multiplication table over element indices. The identity has index 0.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    n: usize,
    elements: Vec<QMat>,
    generator_indices: Vec<usize>,
    table: Vec<u16>,
    inverses: Vec<u16>,
}

impl FiniteMatrixGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[QMat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &QMat {
        &self.elements[i]
    }

    /// Indices of the input generators within the element list.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.table[i * self.elements.len() + j] as usize
    }

    pub fn inverse_idx(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }
}

/// Worklist closure of the generators. A finite set of invertible matrices
/// closed under products is a group, so inverses come for free; an infinite
/// group trips the bound instead.
pub fn enumerate_group(generators: &[QMat], bound: usize) -> Result<FiniteMatrixGroup, GroupError> {
    if generators.is_empty() {
        return Err(GroupError::Empty);
    }
    let n = generators[0].rows();
    for (index, g) in generators.iter().enumerate() {
        if g.rows() != n || g.cols() != n {
            return Err(GroupError::Shape { index, rows: g.rows(), cols: g.cols() });
        }
        if g.inverse().is_none() {
            return Err(GroupError::NonInvertibleGenerator { index });
        }
    }
    let mut index: HashMap<QMat, usize> = HashMap::new();
    let mut elements = vec![QMat::identity(n)];
    index.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        for g in generators {
            let cand = elements[head].mul(g);
            if !index.contains_key(&cand) {
                if elements.len() >= bound {
                    return Err(GroupError::BoundExceeded { bound });
                }
                index.insert(cand.clone(), elements.len());
                elements.push(cand);
            }
        }
        head += 1;
    }
    let order = elements.len();
    let generator_indices = generators.iter().map(|g| index[g]).collect();
    let mut table = vec![0u16; order * order];
    for i in 0..order {
        for j in 0..order {
            let prod = elements[i].mul(&elements[j]);
            table[i * order + j] = index[&prod] as u16;
        }
    }
    let mut inverses = vec![0u16; order];
    for i in 0..order {
        let j = (0..order)
            .find(|&j| table[i * order + j] as usize == 0)
            .expect("finite groups have inverses");
        inverses[i] = j as u16;
    }
    Ok(FiniteMatrixGroup { n, elements, generator_indices, table, inverses })
}

/// Indices of all elements fixing a hyperplane pointwise, i.e. with
/// rank(g - I) = 1.
pub fn pseudo_reflections(g: &FiniteMatrixGroup) -> Vec<usize> {
    let id = QMat::identity(g.n());
    (0..g.order()).filter(|&i| g.element(i).sub(&id).rank() == 1).collect()
}

/// Basis of the common fixed space of the listed elements. The empty set
/// fixes everything.
pub fn fixed_subspace(g: &FiniteMatrixGroup, members: &[usize]) -> Vec<Vec<Q>> {
    let n = g.n();
    if members.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![Q::zero(); n];
                v[i] = Q::one();
                v
            })
            .collect();
    }
    let id = QMat::identity(n);
    let mut rows = Vec::with_capacity(members.len() * n);
    for &m in members {
        let diff = g.element(m).sub(&id);
        for i in 0..n {
            rows.push(diff.row(i).to_vec());
        }
    }
    QMat::from_rows(rows).nullspace()
}

/// A subgroup as sorted element indices plus the generators that built it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub members: Vec<u16>,
    pub gens: Vec<u16>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&(idx as u16)).is_ok()
    }
}

fn index_closure(g: &FiniteMatrixGroup, seed: &[u16]) -> Vec<u16> {
    let order = g.order();
    let mut in_set = vec![false; order];
    let mut list: Vec<u16> = Vec::new();
    let push = |x: u16, in_set: &mut Vec<bool>, list: &mut Vec<u16>| {
        if !in_set[x as usize] {
            in_set[x as usize] = true;
            list.push(x);
        }
    };
    push(0, &mut in_set, &mut list);
    for &x in seed {
        push(x, &mut in_set, &mut list);
    }
    let mut head = 0;
    while head < list.len() {
        let a = list[head] as usize;
        // products with everything already present, in both orders
        for k in 0..list.len() {
            let b = list[k] as usize;
            let ab = g.mul_idx(a, b) as u16;
            let ba = g.mul_idx(b, a) as u16;
            push(ab, &mut in_set, &mut list);
            push(ba, &mut in_set, &mut list);
        }
        head += 1;
    }
    list.sort_unstable();
    list
}

/// Every subgroup, by extending known subgroups one generator at a time.
/// Sorted by (order, members). Errors when more than `bound` subgroups
/// appear.
pub fn subgroups(g: &FiniteMatrixGroup, bound: usize) -> Result<Vec<Subgroup>, GroupError> {
    let mut seen: HashMap<Vec<u16>, Vec<u16>> = HashMap::new();
    let trivial: Vec<u16> = vec![0];
    seen.insert(trivial.clone(), Vec::new());
    let mut queue: VecDeque<Vec<u16>> = VecDeque::new();
    queue.push_back(trivial);
    while let Some(members) = queue.pop_front() {
        let gens = seen[&members].clone();
        for x in 0..g.order() as u16 {
            if members.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = members.clone();
            seed.push(x);
            let closure = index_closure(g, &seed);
            if !seen.contains_key(&closure) {
                if seen.len() >= bound {
                    return Err(GroupError::BoundExceeded { bound });
                }
                let mut newgens = gens.clone();
                newgens.push(x);
                seen.insert(closure.clone(), newgens);
                queue.push_back(closure);
            }
        }
    }
    let mut out: Vec<Subgroup> =
        seen.into_iter().map(|(members, gens)| Subgroup { members, gens }).collect();
    out.sort_by(|a, b| (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members)));
    Ok(out)
}

/// a is normal in b; conjugating a's member set by b's recorded generators
/// suffices since the stabilizer of the set is a subgroup.
pub fn is_normal_in(g: &FiniteMatrixGroup, a: &Subgroup, b: &Subgroup) -> bool {
    if !a.members.iter().all(|&m| b.contains(m as usize)) {
        return false;
    }
    for &c in &b.gens {
        let cinv = g.inverse_idx(c as usize);
        for &m in &a.members {
            let conj = g.mul_idx(g.mul_idx(c as usize, m as usize), cinv);
            if !a.contains(conj) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct Codim2Witness {
    pub normal_subgroup: Subgroup,
    pub overgroup: Subgroup,
    pub dim_fixed_normal: usize,
    pub dim_fixed_over: usize,
}

#[derive(Clone, Debug)]
pub struct Codim2Report {
    pub holds: bool,
    pub subgroup_count: usize,
    pub witness: Option<Codim2Witness>,
}

/// True iff dim V^A - dim V^B != 1 for every pair of subgroups A normal in
/// B. The first violating pair in (order, members) order is the witness.
pub fn codim2_property(g: &FiniteMatrixGroup, bound: usize) -> Result<Codim2Report, GroupError> {
    let subs = subgroups(g, bound)?;
    let dims: Vec<usize> = subs
        .iter()
        .map(|s| {
            let members: Vec<usize> = s.members.iter().map(|&m| m as usize).collect();
            fixed_subspace(g, &members).len()
        })
        .collect();
    for (ai, a) in subs.iter().enumerate() {
        for (bi, b) in subs.iter().enumerate() {
            if ai == bi || a.members.len() == b.members.len() {
                continue;
            }
            if !is_normal_in(g, a, b) {
                continue;
            }
            if dims[ai] - dims[bi] == 1 {
                return Ok(Codim2Report {
                    holds: false,
                    subgroup_count: subs.len(),
                    witness: Some(Codim2Witness {
                        normal_subgroup: a.clone(),
                        overgroup: b.clone(),
                        dim_fixed_normal: dims[ai],
                        dim_fixed_over: dims[bi],
                    }),
                });
            }
        }
    }
    Ok(Codim2Report { holds: true, subgroup_count: subs.len(), witness: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Symmetric,
    Alternating,
}

#[derive(Clone, Debug)]
pub enum FormSearch {
    /// A nondegenerate invariant form of the requested kind.
    Found(QMat),
    /// No invariant form of the kind is nondegenerate (the solution space
    /// is zero, or nondegeneracy is impossible).
    None,
    /// The solution space is nonzero but every sampled candidate was
    /// degenerate; existence is undecided.
    Indeterminate { space_dim: usize },
}

/// Searches for a nondegenerate bilinear form B of the given symmetry with
/// g^T B g = B for every generator. For the symmetric kind the average of
/// g^T g over the group is positive definite and invariant, so the answer
/// is always Found; the alternating kind samples the solution space and
/// reports honestly when sampling is inconclusive.
pub fn preserves_form(g: &FiniteMatrixGroup, kind: FormKind) -> FormSearch {
    let n = g.n();
    if kind == FormKind::Symmetric {
        let mut avg = QMat::zero(n, n);
        for e in g.elements() {
            avg = avg.add(&e.transpose().mul(e));
        }
        debug_assert!(is_invariant(g, &avg) && !avg.det().is_zero());
        return FormSearch::Found(avg);
    }
    if n % 2 == 1 {
        // an alternating form on odd-dimensional space is always degenerate
        return FormSearch::None;
    }
    // solution space of the invariance equations within alternating matrices
    let unknowns = n * n;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for &gi in g.generator_indices() {
        let gm = g.element(gi);
        // g^T B g - B = 0, entrywise linear in B
        for p in 0..n {
            for q in 0..n {
                let mut row = vec![Q::zero(); unknowns];
                for a in 0..n {
                    for b in 0..n {
                        // coefficient of B[a][b] in (g^T B g)[p][q]
                        let coeff = gm.at(a, p).clone() * gm.at(b, q);
                        row[a * n + b] += coeff;
                    }
                }
                row[p * n + q] -= Q::one();
                rows.push(row);
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            let mut row = vec![Q::zero(); unknowns];
            row[p * n + q] += Q::one();
            row[q * n + p] += Q::one();
            rows.push(row);
        }
    }
    let basis: Vec<QMat> = QMat::from_rows(rows)
        .nullspace()
        .into_iter()
        .map(|v| QMat::from_fn(n, n, |i, j| v[i * n + j].clone()))
        .collect();
    if basis.is_empty() {
        return FormSearch::None;
    }
    let mut candidates: Vec<QMat> = basis.clone();
    for t in 1..=64i64 {
        let mut acc = QMat::zero(n, n);
        let mut w = Q::one();
        for b in &basis {
            acc = acc.add(&b.scale(&w));
            w *= Q::from_integer(t.into());
        }
        candidates.push(acc);
    }
    for cand in candidates {
        if !cand.det().is_zero() {
            assert!(is_invariant(g, &cand), "solution space candidates stay invariant");
            return FormSearch::Found(cand);
        }
    }
    FormSearch::Indeterminate { space_dim: basis.len() }
}

fn is_invariant(g: &FiniteMatrixGroup, form: &QMat) -> bool {
    g.generator_indices().iter().all(|&gi| {
        let gm = g.element(gi);
        gm.transpose().mul(form).mul(gm) == *form
    })
}

/// Left regular representation of the group described by a multiplication
/// table: element a acts on basis vectors by x -> a*x. The table is
/// validated (square, Latin, two-sided identity, associative) and
/// reindexed so the identity is element 0.
pub fn regular_rep(table: &[Vec<usize>]) -> Result<FiniteMatrixGroup, GroupError> {
    let k = table.len();
    if k == 0 {
        return Err(GroupError::InvalidTable("empty table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != k {
            return Err(GroupError::InvalidTable(format!(
                "row {} has {} entries, expected {}",
                i,
                row.len(),
                k
            )));
        }
        for &v in row {
            if v >= k {
                return Err(GroupError::InvalidTable(format!(
                    "row {} holds {}, outside 0..{}",
                    i, v, k
                )));
            }
        }
    }
    for i in 0..k {
        let mut seen_row = vec![false; k];
        let mut seen_col = vec![false; k];
        for j in 0..k {
            if seen_row[table[i][j]] {
                return Err(GroupError::InvalidTable(format!("row {} repeats a value", i)));
            }
            seen_row[table[i][j]] = true;
            if seen_col[table[j][i]] {
                return Err(GroupError::InvalidTable(format!("column {} repeats a value", i)));
            }
            seen_col[table[j][i]] = true;
        }
    }
    let e = (0..k)
        .find(|&e| (0..k).all(|j| table[e][j] == j && table[j][e] == j))
        .ok_or_else(|| GroupError::InvalidTable("no two-sided identity".into()))?;
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(GroupError::InvalidTable(format!(
                        "not associative at ({}, {}, {})",
                        a, b, c
                    )));
                }
            }
        }
    }
    // relabel so the identity is 0
    let relabel = |x: usize| -> usize {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let mut t = vec![0u16; k * k];
    for a in 0..k {
        for b in 0..k {
            t[relabel(a) * k + relabel(b)] = relabel(table[a][b]) as u16;
        }
    }
    let elements: Vec<QMat> = (0..k)
        .map(|a| {
            QMat::from_fn(k, k, |row, col| {
                if t[a * k + col] as usize == row {
                    Q::one()
                } else {
                    Q::zero()
                }
            })
        })
        .collect();
    let mut inverses = vec![0u16; k];
    for i in 0..k {
        let j = (0..k).find(|&j| t[i * k + j] == 0).expect("latin rows have inverses");
        inverses[i] = j as u16;
    }
    let generator_indices = if k == 1 { vec![0] } else { (1..k).collect() };
    Ok(FiniteMatrixGroup { n: k, elements, generator_indices, table: t, inverses })
}

/// Parses `{ "n": .., "generators": [matrix, ..] }` with the same exact
/// entry format as tuples.
pub fn group_from_json_str(s: &str) -> Result<Vec<QMat>, GroupError> {
    let doc: serde_json::Value =
        serde_json::from_str(s).map_err(|e| GroupError::Document(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| GroupError::Document("expected an object".into()))?;
    let n = obj
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| GroupError::Document("field \"n\" must be a positive integer".into()))?
        as usize;
    if n == 0 {
        return Err(GroupError::Document("field \"n\" must be a positive integer".into()));
    }
    let gens = obj
        .get("generators")
        .and_then(|v| v.as_array())
        .ok_or_else(|| GroupError::Document("field \"generators\" must be an array".into()))?;
    if gens.is_empty() {
        return Err(GroupError::Empty);
    }
    let mut out = Vec::with_capacity(gens.len());
    for (index, mat) in gens.iter().enumerate() {
        let rows = mat
            .as_array()
            .ok_or_else(|| GroupError::Document(format!("generator {} must be an array", index)))?;
        if rows.len() != n {
            return Err(GroupError::Shape { index, rows: rows.len(), cols: 0 });
        }
        let mut qrows = Vec::with_capacity(n);
        for row in rows {
            let cells = row.as_array().ok_or_else(|| {
                GroupError::Document(format!("generator {} rows must be arrays", index))
            })?;
            if cells.len() != n {
                return Err(GroupError::Shape { index, rows: n, cols: cells.len() });
            }
            let mut qrow = Vec::with_capacity(n);
            for cell in cells {
                qrow.push(parse_entry(cell).ok_or_else(|| {
                    GroupError::Document(format!("generator {} has a non-exact entry", index))
                })?);
            }
            qrows.push(qrow);
        }
        out.push(QMat::from_rows(qrows));
    }
    Ok(out)
}

/// Parses `{ "table": [[..]] }` with 0-based indices.
pub fn table_from_json_str(s: &str) -> Result<Vec<Vec<usize>>, GroupError> {
    let doc: serde_json::Value =
        serde_json::from_str(s).map_err(|e| GroupError::Document(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| GroupError::Document("expected an object".into()))?;
    let rows = obj
        .get("table")
        .and_then(|v| v.as_array())
        .ok_or_else(|| GroupError::Document("field \"table\" must be an array".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| GroupError::Document(format!("table row {} must be an array", i)))?;
        let mut r = Vec::with_capacity(cells.len());
        for cell in cells {
            let v = cell
                .as_u64()
                .ok_or_else(|| GroupError::Document("table entries must be nonnegative integers".into()))?;
            r.push(v as usize);
        }
        out.push(r);
    }
    Ok(out)
}
