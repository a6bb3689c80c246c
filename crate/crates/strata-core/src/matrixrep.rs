//! Exact classification of rational matrix tuples: the algebra they
//! generate, its trace-form radical, the closed-orbit test, and the
//! representation type of the semisimplified module. Also the five
//! invariant coordinates for pairs of 2x2 matrices and the one-torus
//! stability test.

use crate::linalg::{q_from_str, qi, Q, QMat, SpanTracker};
use crate::poly::{matrix_min_poly, QPoly};
use crate::reptype::RepType;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TupleError {
    #[error("n must be positive")]
    ZeroN,
    #[error("a tuple needs at least one matrix")]
    Empty,
    #[error("matrix {index} is {rows}x{cols}, expected {n}x{n}")]
    Shape { index: usize, rows: usize, cols: usize, n: usize },
    #[error("matrix {mat} entry ({row},{col}) is not an exact rational")]
    InexactEntry { mat: usize, row: usize, col: usize },
    #[error("conjugating matrix is not invertible")]
    NotInvertible,
    #[error("operation requires n = {expected_n}, r = {expected_r}; tuple has n = {n}, r = {r}")]
    WrongShape { expected_n: usize, expected_r: usize, n: usize, r: usize },
    #[error("malformed tuple document: {0}")]
    Document(String),
}

/// An r-tuple of n x n matrices with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTuple {
    n: usize,
    matrices: Vec<QMat>,
}

impl MatrixTuple {
    pub fn new(n: usize, matrices: Vec<QMat>) -> Result<Self, TupleError> {
        if n == 0 {
            return Err(TupleError::ZeroN);
        }
        if matrices.is_empty() {
            return Err(TupleError::Empty);
        }
        for (index, m) in matrices.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(TupleError::Shape { index, rows: m.rows(), cols: m.cols(), n });
            }
        }
        Ok(MatrixTuple { n, matrices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[QMat] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &QMat {
        &self.matrices[i]
    }

    /// The tuple (g A_1 g^-1, ..., g A_r g^-1).
    pub fn conjugate(&self, g: &QMat) -> Result<MatrixTuple, TupleError> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(TupleError::Shape { index: 0, rows: g.rows(), cols: g.cols(), n: self.n });
        }
        let ginv = g.inverse().ok_or(TupleError::NotInvertible)?;
        let matrices = self.matrices.iter().map(|a| g.mul(a).mul(&ginv)).collect();
        MatrixTuple::new(self.n, matrices)
    }

    /// Parses `{ "n": .., "r": .., "matrices": [[[entry, ..], ..], ..] }`
    /// where an entry is a JSON integer or a "p/q" string. Floating point
    /// entries are rejected.
    pub fn from_json_str(s: &str) -> Result<Self, TupleError> {
        let doc: serde_json::Value =
            serde_json::from_str(s).map_err(|e| TupleError::Document(e.to_string()))?;
        let obj = doc.as_object().ok_or_else(|| TupleError::Document("expected an object".into()))?;
        let n = obj
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| TupleError::Document("field \"n\" must be a positive integer".into()))?
            as usize;
        let r = obj
            .get("r")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| TupleError::Document("field \"r\" must be a positive integer".into()))?
            as usize;
        let mats = obj
            .get("matrices")
            .and_then(|v| v.as_array())
            .ok_or_else(|| TupleError::Document("field \"matrices\" must be an array".into()))?;
        if mats.len() != r {
            return Err(TupleError::Document(format!(
                "\"matrices\" has {} entries, expected r = {}",
                mats.len(),
                r
            )));
        }
        let mut matrices = Vec::with_capacity(r);
        for (mi, mat) in mats.iter().enumerate() {
            let rows = mat
                .as_array()
                .ok_or_else(|| TupleError::Document(format!("matrix {} must be an array of rows", mi)))?;
            if rows.len() != n {
                return Err(TupleError::Shape { index: mi, rows: rows.len(), cols: 0, n });
            }
            let mut qrows = Vec::with_capacity(n);
            for (ri, row) in rows.iter().enumerate() {
                let cells = row.as_array().ok_or_else(|| {
                    TupleError::Document(format!("matrix {} row {} must be an array", mi, ri))
                })?;
                if cells.len() != n {
                    return Err(TupleError::Shape { index: mi, rows: n, cols: cells.len(), n });
                }
                let mut qrow = Vec::with_capacity(n);
                for (ci, cell) in cells.iter().enumerate() {
                    qrow.push(parse_entry(cell).ok_or(TupleError::InexactEntry {
                        mat: mi,
                        row: ri,
                        col: ci,
                    })?);
                }
                qrows.push(qrow);
            }
            matrices.push(QMat::from_rows(qrows));
        }
        MatrixTuple::new(n, matrices)
    }
}

pub(crate) fn parse_entry(v: &serde_json::Value) -> Option<Q> {
    match v {
        // floats carry no exactness guarantee; only accept integers
        serde_json::Value::Number(num) => num.as_i64().map(qi),
        serde_json::Value::String(s) => q_from_str(s),
        _ => None,
    }
}

/// The unital algebra generated by a tuple, with one word witness per basis
/// element (generator indices whose left-to-right product is the element;
/// the identity is the empty word).
#[derive(Clone, Debug)]
pub struct EnvelopingAlgebra {
    n: usize,
    basis: Vec<QMat>,
    words: Vec<Vec<usize>>,
}

impl EnvelopingAlgebra {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QMat] {
        &self.basis
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }
}

/// Breadth-first word closure. Left multiplication by the generators
/// suffices: the resulting span contains the identity and is stable under
/// every generator, hence under all products.
pub fn algebra_closure(t: &MatrixTuple) -> EnvelopingAlgebra {
    let n = t.n();
    let mut tracker = SpanTracker::new(n * n);
    let mut basis = vec![QMat::identity(n)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    tracker.insert(basis[0].flatten());
    let mut head = 0;
    while head < basis.len() {
        for (j, g) in t.matrices().iter().enumerate() {
            let cand = g.mul(&basis[head]);
            if tracker.insert(cand.flatten()) {
                let mut w = Vec::with_capacity(words[head].len() + 1);
                w.push(j);
                w.extend_from_slice(&words[head]);
                basis.push(cand);
                words.push(w);
            }
        }
        head += 1;
    }
    EnvelopingAlgebra { n, basis, words }
}

fn trace_product(a: &QMat, b: &QMat) -> Q {
    let mut acc = Q::zero();
    for p in 0..a.rows() {
        for q in 0..a.cols() {
            acc += a.at(p, q) * b.at(q, p);
        }
    }
    acc
}

/// Basis of { x in A : trace(x y) = 0 for all y in A }, the radical of the
/// trace form. In characteristic zero this is the Jacobson radical of A.
pub fn trace_radical(a: &EnvelopingAlgebra) -> Vec<QMat> {
    let m = a.dim();
    let gram = QMat::from_fn(m, m, |i, j| trace_product(&a.basis()[i], &a.basis()[j]));
    gram.nullspace()
        .into_iter()
        .map(|coeffs| {
            let mut acc = QMat::zero(a.n(), a.n());
            for (c, b) in coeffs.iter().zip(a.basis()) {
                if !c.is_zero() {
                    acc = acc.add(&b.scale(c));
                }
            }
            acc
        })
        .collect()
}

/// True iff the orbit of the tuple under simultaneous conjugation is
/// closed, i.e. the generated algebra has zero radical.
pub fn is_semisimple(t: &MatrixTuple) -> bool {
    trace_radical(&algebra_closure(t)).is_empty()
}

#[derive(Clone, Debug)]
pub struct IsotypicBlock {
    /// Dimension of the irreducible.
    pub dim: u32,
    /// Its multiplicity in the semisimplified module.
    pub mult: u32,
    /// Central idempotent projecting onto the isotypic component, as an
    /// operator on the semisimplified module in the original coordinates.
    pub idempotent: QMat,
    /// Degree over the rationals of the block's center (1 on success).
    pub field_degree: u32,
}

#[derive(Clone, Debug)]
pub struct IsotypicDecomposition {
    pub blocks: Vec<IsotypicBlock>,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub rep_type: RepType,
    pub algebra_dim: usize,
    pub radical_dim: usize,
    /// Dimensions of the radical filtration layers, top layer first.
    pub layer_dims: Vec<usize>,
    /// Basis change whose column blocks split the module into the layers.
    pub adapted_basis: QMat,
    pub decomposition: IsotypicDecomposition,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("a simple factor does not split over the rationals; its center is cut out by {factor}")]
    NotSplitOverRationals { factor: QPoly },
}

/// Representation type of the semisimplification of Q^n over the algebra
/// generated by the tuple.
///
/// Pipeline: radical J of the generated algebra A; radical filtration
/// M > JM > J^2 M > ...; the induced action on the associated graded module
/// has kernel exactly J, so its image is A/J acting semisimply; primitive
/// central idempotents of A/J are read off by factoring the minimal
/// polynomial of a generator of the center; each idempotent cuts out one
/// isotypic component per layer, matched across layers for free.
pub fn representation_type(t: &MatrixTuple) -> Result<Classification, ClassifyError> {
    let n = t.n();
    let algebra = algebra_closure(t);
    let radical = trace_radical(&algebra);
    let algebra_dim = algebra.dim();
    let radical_dim = radical.len();

    // radical filtration; terminates since J is nilpotent
    let std_basis: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            v
        })
        .collect();
    let mut levels: Vec<Vec<Vec<Q>>> = vec![std_basis];
    loop {
        let prev = levels.last().expect("nonempty");
        let mut tracker = SpanTracker::new(n);
        let mut next = Vec::new();
        for j in &radical {
            for v in prev {
                let w = j.apply(v);
                if tracker.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        assert!(next.len() < prev.len(), "radical filtration must strictly descend");
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }

    // adapted basis: per level, a complement of the next level
    let mut p_cols: Vec<Vec<Q>> = Vec::with_capacity(n);
    let mut layer_dims = Vec::with_capacity(levels.len());
    for i in 0..levels.len() {
        let mut tracker = SpanTracker::new(n);
        if i + 1 < levels.len() {
            for v in &levels[i + 1] {
                tracker.insert(v.clone());
            }
        }
        let mut count = 0;
        for v in &levels[i] {
            if tracker.insert(v.clone()) {
                p_cols.push(v.clone());
                count += 1;
            }
        }
        layer_dims.push(count);
    }
    assert_eq!(p_cols.len(), n, "layer complements must assemble a basis");
    let p = QMat::from_cols(n, &p_cols);
    let pinv = p.inverse().expect("adapted basis is invertible");

    let mut offsets = Vec::with_capacity(layer_dims.len() + 1);
    offsets.push(0usize);
    for &d in &layer_dims {
        offsets.push(offsets.last().unwrap() + d);
    }
    // block-diagonal part of the conjugated action: the layer action
    let project = |a: &QMat| -> QMat {
        let b = pinv.mul(a).mul(&p);
        QMat::from_fn(n, n, |i, j| {
            let li = offsets.iter().rposition(|&o| o <= i).unwrap();
            let lj = offsets.iter().rposition(|&o| o <= j).unwrap();
            if li == lj {
                b.at(i, j).clone()
            } else {
                Q::zero()
            }
        })
    };

    // image of A on the graded module, i.e. A/J in matrix form
    let mut tracker = SpanTracker::new(n * n);
    let mut abar: Vec<QMat> = Vec::new();
    for b in algebra.basis() {
        let pb = project(b);
        if tracker.insert(pb.flatten()) {
            abar.push(pb);
        }
    }
    assert_eq!(abar.len(), algebra_dim - radical_dim, "graded action kernel is the radical");

    // center of A/J: solve the commutation equations within the span
    let q = abar.len();
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(q * n * n);
    for b in &abar {
        let commutators: Vec<Vec<Q>> =
            abar.iter().map(|z| z.mul(b).sub(&b.mul(z)).flatten()).collect();
        for pos in 0..n * n {
            let row: Vec<Q> = commutators.iter().map(|c| c[pos].clone()).collect();
            rows.push(row);
        }
    }
    let constraint = QMat::from_rows(rows);
    let center: Vec<QMat> = constraint
        .nullspace()
        .into_iter()
        .map(|coeffs| {
            let mut acc = QMat::zero(n, n);
            for (c, b) in coeffs.iter().zip(&abar) {
                if !c.is_zero() {
                    acc = acc.add(&b.scale(c));
                }
            }
            acc
        })
        .collect();
    let c = center.len();
    assert!(c >= 1, "a unital algebra has a nonzero center");

    // deterministic primitive element of the center: the first t whose
    // weighted combination has minimal polynomial of full degree c; fewer
    // than c^3 choices of t can fail
    let mut z = QMat::zero(n, n);
    let mut min_poly = QPoly::zero();
    let mut found = false;
    for t_val in 1..=(c as i64).pow(3) + 1 {
        let mut cand = QMat::zero(n, n);
        let mut w = Q::one();
        for zj in &center {
            cand = cand.add(&zj.scale(&w));
            w *= qi(t_val);
        }
        let mp = matrix_min_poly(&cand);
        if mp.degree() == Some(c) {
            z = cand;
            min_poly = mp;
            found = true;
            break;
        }
    }
    assert!(found, "some small weight vector generates the center");

    let factors = min_poly.factor();
    assert!(factors.iter().all(|&(_, mult)| mult == 1), "split central minimal polynomial");

    let mut blocks = Vec::with_capacity(factors.len());
    let mut pairs = Vec::with_capacity(factors.len());
    for (f, _) in &factors {
        let field_degree = f.degree().expect("nonconstant factor");
        if field_degree > 1 {
            return Err(ClassifyError::NotSplitOverRationals { factor: f.clone() });
        }
        let (g, _) = min_poly.divrem(f);
        let (one, u, _) = g.xgcd(f);
        assert_eq!(one.degree(), Some(0), "cofactor and factor are coprime");
        let h = u.mul(&g).rem(&min_poly);
        let e = h.eval_matrix(&z);
        assert_eq!(e.mul(&e), e, "central idempotent");

        let mut span = SpanTracker::new(n * n);
        let mut block_dim = 0;
        for b in &abar {
            if span.insert(e.mul(b).flatten()) {
                block_dim += 1;
            }
        }
        if block_dim % field_degree != 0 || !is_square(block_dim / field_degree) {
            return Err(ClassifyError::NotSplitOverRationals { factor: f.clone() });
        }
        let d = isqrt(block_dim / field_degree);
        let mut mult = 0usize;
        for li in 0..layer_dims.len() {
            let (lo, hi) = (offsets[li], offsets[li + 1]);
            let sub = QMat::from_fn(hi - lo, hi - lo, |i, j| e.at(lo + i, lo + j).clone());
            let rank = sub.rank();
            assert_eq!(rank % d, 0, "layer isotypic rank divisible by block dimension");
            mult += rank / d;
        }
        assert!(mult >= 1, "central idempotents act nontrivially");
        pairs.push((d as u32, mult as u32));
        blocks.push(IsotypicBlock {
            dim: d as u32,
            mult: mult as u32,
            idempotent: p.mul(&e).mul(&pinv),
            field_degree: field_degree as u32,
        });
    }

    // orthogonality and completeness of the idempotent family
    let mut sum = QMat::zero(n, n);
    for (i, bi) in blocks.iter().enumerate() {
        sum = sum.add(&bi.idempotent);
        for (j, bj) in blocks.iter().enumerate() {
            if i != j {
                assert!(bi.idempotent.mul(&bj.idempotent).is_zero(), "orthogonal idempotents");
            }
        }
    }
    assert!(sum.is_identity(), "idempotents resolve the identity");

    let rep_type = RepType::new(pairs).expect("positive block data");
    assert_eq!(rep_type.total_dim(), n as u64, "type dimension matches the module");
    Ok(Classification {
        rep_type,
        algebra_dim,
        radical_dim,
        layer_dims,
        adapted_basis: p,
        decomposition: IsotypicDecomposition { blocks },
    })
}

fn isqrt(v: usize) -> usize {
    let mut x = (v as f64).sqrt() as usize;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

fn is_square(v: usize) -> bool {
    let r = isqrt(v);
    r * r == v
}

/// The five invariant coordinates of a pair of 2x2 matrices:
/// (tr A1, tr A2, det A1, det A2, det(A1 + A2)).
pub fn n2r2_invariants(t: &MatrixTuple) -> Result<[Q; 5], TupleError> {
    if t.n() != 2 || t.r() != 2 {
        return Err(TupleError::WrongShape { expected_n: 2, expected_r: 2, n: t.n(), r: t.r() });
    }
    let a1 = t.matrix(0);
    let a2 = t.matrix(1);
    Ok([a1.trace(), a2.trace(), a1.det(), a2.det(), a1.add(a2).det()])
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HmError {
    #[error("weights ({weights}) and coordinates ({coords}) differ in length")]
    LengthMismatch { weights: usize, coords: usize },
}

/// One-torus stability: the point survives iff both a negative-weight and a
/// positive-weight coordinate are nonzero.
pub fn hm_torus_stable(weights: &[i64], coords: &[Q]) -> Result<bool, HmError> {
    if weights.len() != coords.len() {
        return Err(HmError::LengthMismatch { weights: weights.len(), coords: coords.len() });
    }
    let neg = weights.iter().zip(coords).any(|(&w, c)| w < 0 && !c.is_zero());
    let pos = weights.iter().zip(coords).any(|(&w, c)| w > 0 && !c.is_zero());
    Ok(neg && pos)
}
