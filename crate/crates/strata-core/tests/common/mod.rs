//! Shared test support: a brute-force classification oracle that never calls
//! into the algebra-closure pipeline, multiplication tables for every group
//! of order 3..12, and seeded tuple samplers.

#![allow(dead_code)]

use num_integer::Integer;
use num_traits::{One, Zero};
use strata_core::linalg::{qi, Q, QMat, SpanTracker};
use strata_core::matrixrep::MatrixTuple;
use strata_core::reptype::RepType;

pub mod oracle {
    use super::*;

    /// Characteristic polynomial coefficients, leading 1 first, by the
    /// trace-recursion method. Independent of the poly module.
    pub fn charpoly(a: &QMat) -> Vec<Q> {
        let n = a.rows();
        let mut coeffs = vec![Q::one()];
        let mut m = QMat::identity(n);
        for k in 1..=n {
            let am = a.mul(&m);
            let c = -(am.trace() / qi(k as i64));
            m = am.add(&QMat::identity(n).scale(&c));
            coeffs.push(c);
        }
        coeffs
    }

    fn divisors(x: i128) -> Vec<i128> {
        let x = x.abs();
        assert!(x > 0);
        let mut out = Vec::new();
        let mut d = 1;
        while d * d <= x {
            if x % d == 0 {
                out.push(d);
                if d != x / d {
                    out.push(x / d);
                }
            }
            d += 1;
        }
        out
    }

    /// All rational roots of the polynomial with the given coefficients
    /// (leading first), found by divisor enumeration on the integer-cleared
    /// form and verified by exact evaluation.
    pub fn rational_roots(coeffs: &[Q]) -> Vec<Q> {
        let lcm = coeffs
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<num_bigint::BigInt> =
            coeffs.iter().map(|c| (c * Q::from(lcm.clone())).numer().clone()).collect();
        let mut candidates: Vec<Q> = Vec::new();
        let lead = i128::try_from(&ints[0]).expect("oracle coefficients stay small");
        let mut tail = ints.len() - 1;
        while tail > 0 && ints[tail].is_zero() {
            tail -= 1;
        }
        if tail < ints.len() - 1 {
            candidates.push(Q::zero());
        }
        if tail > 0 {
            let c0 = i128::try_from(&ints[tail]).expect("oracle coefficients stay small");
            for p in divisors(c0) {
                for q in divisors(lead) {
                    let cand = Q::new(p.into(), q.into());
                    candidates.push(cand.clone());
                    candidates.push(-cand);
                }
            }
        }
        let eval = |x: &Q| {
            let mut acc = Q::zero();
            for c in coeffs {
                acc = acc * x + c;
            }
            acc
        };
        let mut roots: Vec<Q> = candidates.into_iter().filter(|x| eval(x).is_zero()).collect();
        roots.sort();
        roots.dedup();
        roots
    }

    /// A vector spanning a 1-dimensional common invariant subspace, if one
    /// exists. Complete: such a vector has a rational eigenvalue for every
    /// matrix, so scanning products of rational-root candidates finds it.
    pub fn common_eigvec(tuple: &[QMat]) -> Option<Vec<Q>> {
        let n = tuple[0].rows();
        let mut rootsets: Vec<Vec<Q>> = Vec::new();
        for a in tuple {
            let roots = rational_roots(&charpoly(a));
            if roots.is_empty() {
                return None;
            }
            rootsets.push(roots);
        }
        let mut idx = vec![0usize; rootsets.len()];
        loop {
            let mut rows: Vec<Vec<Q>> = Vec::new();
            for (a, (set, &i)) in tuple.iter().zip(rootsets.iter().zip(idx.iter())) {
                let lam = &set[i];
                for r in 0..n {
                    let mut row: Vec<Q> = a.row(r).to_vec();
                    row[r] = &row[r] - lam;
                    rows.push(row);
                }
            }
            let null = QMat::from_rows(rows).nullspace();
            if let Some(v) = null.into_iter().next() {
                return Some(v);
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return None;
                }
                idx[pos] += 1;
                if idx[pos] < rootsets[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Change basis so the span of `sub_basis` comes first, then return the
    /// restricted action and the quotient action.
    fn split(tuple: &[QMat], sub_basis: Vec<Vec<Q>>) -> (Vec<QMat>, Vec<QMat>) {
        let n = tuple[0].rows();
        let k = sub_basis.len();
        let mut tracker = SpanTracker::new(n);
        let mut cols: Vec<Vec<Q>> = Vec::new();
        for b in sub_basis {
            assert!(tracker.insert(b.clone()), "sub basis must be independent");
            cols.push(b);
        }
        for j in 0..n {
            let mut e = vec![Q::zero(); n];
            e[j] = Q::one();
            if tracker.insert(e.clone()) {
                cols.push(e);
            }
        }
        assert_eq!(cols.len(), n);
        let p = QMat::from_cols(n, &cols);
        let pinv = p.inverse().expect("basis change is invertible");
        let mut subs = Vec::new();
        let mut quots = Vec::new();
        for a in tuple {
            let m = pinv.mul(a).mul(&p);
            for i in k..n {
                for j in 0..k {
                    assert!(m.at(i, j).is_zero(), "claimed subspace is not invariant");
                }
            }
            subs.push(QMat::from_fn(k, k, |i, j| m.at(i, j).clone()));
            quots.push(QMat::from_fn(n - k, n - k, |i, j| m.at(k + i, k + j).clone()));
        }
        (subs, quots)
    }

    /// Composition factors of the natural module, each as the tuple of the
    /// induced actions. Submodule search covers dimension 1 and codimension 1,
    /// which is complete for modules of dimension at most 3.
    pub fn composition_factors(tuple: Vec<QMat>, out: &mut Vec<Vec<QMat>>) {
        let n = tuple[0].rows();
        if n == 1 {
            out.push(tuple);
            return;
        }
        if let Some(v) = common_eigvec(&tuple) {
            let (sub, quot) = split(&tuple, vec![v]);
            composition_factors(sub, out);
            composition_factors(quot, out);
            return;
        }
        let tr: Vec<QMat> = tuple.iter().map(|a| a.transpose()).collect();
        if let Some(w) = common_eigvec(&tr) {
            let perp = QMat::from_rows(vec![w]).nullspace();
            assert_eq!(perp.len(), n - 1);
            let (sub, quot) = split(&tuple, perp);
            composition_factors(sub, out);
            composition_factors(quot, out);
            return;
        }
        assert!(n <= 3, "oracle submodule search is only complete for n <= 3");
        out.push(tuple);
    }

    /// Dimension of the space of maps X with X R_i = S_i X for all i.
    pub fn intertwiner_space(r: &[QMat], s: &[QMat]) -> Vec<QMat> {
        assert_eq!(r.len(), s.len());
        let v = r[0].rows();
        let w = s[0].rows();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (ri, si) in r.iter().zip(s.iter()) {
            for a in 0..w {
                for b in 0..v {
                    let mut row = vec![Q::zero(); w * v];
                    for q in 0..v {
                        row[a * v + q] = &row[a * v + q] + ri.at(q, b);
                    }
                    for p in 0..w {
                        row[p * v + b] = &row[p * v + b] - si.at(a, p);
                    }
                    rows.push(row);
                }
            }
        }
        QMat::from_rows(rows)
            .nullspace()
            .into_iter()
            .map(|x| QMat::from_fn(w, v, |p, q| x[p * v + q].clone()))
            .collect()
    }

    /// Basis of the commutant of an irreducible factor.
    pub fn commutant_basis(r: &[QMat]) -> Vec<QMat> {
        intertwiner_space(r, r)
    }

    /// Dimension of the center of the algebra spanned by `basis` (assumed
    /// closed under multiplication, as a commutant always is).
    pub fn center_dim(basis: &[QMat]) -> usize {
        let delta = basis.len();
        let v = basis[0].rows();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for xj in basis {
            for a in 0..v {
                for b in 0..v {
                    let mut row = Vec::with_capacity(delta);
                    for xi in basis {
                        let lhs = xi.mul(xj);
                        let rhs = xj.mul(xi);
                        row.push(lhs.at(a, b) - rhs.at(a, b));
                    }
                    rows.push(row);
                }
            }
        }
        QMat::from_rows(rows).nullspace().len()
    }

    #[derive(Debug, Clone, PartialEq, Eq)]
    pub enum OracleOutcome {
        Type(RepType),
        NotSplit,
    }

    /// Brute-force semisimplification type. Finds composition factors by
    /// invariant-subspace search, groups them by isomorphism via intertwiner
    /// spaces, and reads off geometric dimensions from commutant data.
    pub fn oracle_type(t: &MatrixTuple) -> OracleOutcome {
        let mut fs: Vec<Vec<QMat>> = Vec::new();
        composition_factors(t.matrices().to_vec(), &mut fs);
        let mut classes: Vec<(Vec<QMat>, u32)> = Vec::new();
        'outer: for f in fs {
            for (rep, count) in classes.iter_mut() {
                if rep[0].rows() == f[0].rows() && !intertwiner_space(&f, rep).is_empty() {
                    *count += 1;
                    continue 'outer;
                }
            }
            classes.push((f, 1));
        }
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (rep, count) in classes {
            let comm = commutant_basis(&rep);
            let delta = comm.len();
            let v = rep[0].rows() as u32;
            if delta == 1 {
                pairs.push((v, count));
                continue;
            }
            if center_dim(&comm) > 1 {
                return OracleOutcome::NotSplit;
            }
            let s = (1..).find(|s| s * s >= delta).unwrap();
            assert_eq!(s * s, delta, "commutant of central type has square dimension");
            let s = s as u32;
            assert_eq!(v % s, 0);
            pairs.push((v / s, count * s));
        }
        OracleOutcome::Type(RepType::new(pairs).expect("at least one factor"))
    }

    /// Radical annihilation test used by the Artin consistency criterion:
    /// checks literally that every radical element sends every basis vector
    /// of the natural module to zero.
    pub fn radical_annihilates_module(t: &MatrixTuple) -> bool {
        use strata_core::matrixrep::{algebra_closure, trace_radical};
        let a = algebra_closure(t);
        let n = t.n();
        trace_radical(&a).iter().all(|j| {
            (0..n).all(|col| {
                let mut e = vec![Q::zero(); n];
                e[col] = Q::one();
                j.apply(&e).iter().all(|x| x.is_zero())
            })
        })
    }
}

pub mod corpus {
    use super::*;

    pub type Table = Vec<Vec<usize>>;

    pub fn cyclic(m: usize) -> Table {
        (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect()
    }

    pub fn product(a: &Table, b: &Table) -> Table {
        let (la, lb) = (a.len(), b.len());
        let mut t = vec![vec![0; la * lb]; la * lb];
        for i1 in 0..la {
            for j1 in 0..lb {
                for i2 in 0..la {
                    for j2 in 0..lb {
                        t[i1 * lb + j1][i2 * lb + j2] = a[i1][i2] * lb + b[j1][j2];
                    }
                }
            }
        }
        t
    }

    /// Dihedral group of order 2k as maps x -> s*x + t on Z_k; index t for
    /// rotations, k + t for reflections.
    pub fn dihedral(k: usize) -> Table {
        let elems: Vec<(i64, i64)> = (0..k as i64)
            .map(|t| (1, t))
            .chain((0..k as i64).map(|t| (-1, t)))
            .collect();
        let index = |s: i64, t: i64| -> usize {
            let t = t.rem_euclid(k as i64) as usize;
            if s == 1 {
                t
            } else {
                k + t
            }
        };
        elems
            .iter()
            .map(|&(s1, t1)| {
                elems.iter().map(|&(s2, t2)| index(s1 * s2, s1 * t2 + t1)).collect()
            })
            .collect()
    }

    /// Quaternion group {±1, ±i, ±j, ±k} with indices 0..8 in that order
    /// (sign bit is the low bit: 2a is the positive unit, 2a+1 its negative).
    pub fn quaternion() -> Table {
        // units: 0 = 1, 1 = i, 2 = j, 3 = k; (unit, unit) -> (sign, unit)
        let base = |a: usize, b: usize| -> (i64, usize) {
            match (a, b) {
                (0, x) => (1, x),
                (x, 0) => (1, x),
                (1, 1) | (2, 2) | (3, 3) => (-1, 0),
                (1, 2) => (1, 3),
                (2, 1) => (-1, 3),
                (2, 3) => (1, 1),
                (3, 2) => (-1, 1),
                (3, 1) => (1, 2),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            }
        };
        (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (sx, ux) = (if x % 2 == 0 { 1 } else { -1 }, x / 2);
                        let (sy, uy) = (if y % 2 == 0 { 1 } else { -1 }, y / 2);
                        let (sp, up) = base(ux, uy);
                        let sign = sx * sy * sp;
                        2 * up + if sign == 1 { 0 } else { 1 }
                    })
                    .collect()
            })
            .collect()
    }

    /// Alternating group on 4 letters from generator closure.
    pub fn alternating4() -> Table {
        let id = [0usize, 1, 2, 3];
        let g1 = [1usize, 0, 3, 2]; // (0 1)(2 3)
        let g2 = [1usize, 2, 0, 3]; // (0 1 2)
        let compose = |p: &[usize; 4], q: &[usize; 4]| -> [usize; 4] {
            [p[q[0]], p[q[1]], p[q[2]], p[q[3]]]
        };
        let mut elems = vec![id];
        let mut head = 0;
        while head < elems.len() {
            let cur = elems[head];
            head += 1;
            for g in [g1, g2] {
                let nx = compose(&g, &cur);
                if !elems.contains(&nx) {
                    elems.push(nx);
                }
            }
        }
        assert_eq!(elems.len(), 12);
        elems
            .iter()
            .map(|p| {
                elems
                    .iter()
                    .map(|q| {
                        let pq = compose(p, q);
                        elems.iter().position(|e| *e == pq).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    /// Dicyclic group of order 12: a^6 = 1, b^2 = a^3, b a b^-1 = a^-1.
    /// Element (i, j) = a^i b^j with i < 6, j < 2, index i + 6j.
    pub fn dicyclic3() -> Table {
        let index = |i: i64, j: usize| (i.rem_euclid(6) as usize) + 6 * j;
        (0..12)
            .map(|x| {
                let (i1, j1) = ((x % 6) as i64, x / 6);
                (0..12)
                    .map(|y| {
                        let (i2, j2) = ((y % 6) as i64, y / 6);
                        if j1 == 0 {
                            index(i1 + i2, j2)
                        } else if j2 == 0 {
                            index(i1 - i2, 1)
                        } else {
                            index(i1 - i2 + 3, 0)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Every group of order 3..=12 up to isomorphism, as (name, table).
    pub fn groups_3_to_12() -> Vec<(String, Table)> {
        let c = |m: usize| cyclic(m);
        let named: Vec<(&str, Table)> = vec![
            ("C3", c(3)),
            ("C4", c(4)),
            ("C2xC2", product(&c(2), &c(2))),
            ("C5", c(5)),
            ("C6", c(6)),
            ("D3", dihedral(3)),
            ("C7", c(7)),
            ("C8", c(8)),
            ("C4xC2", product(&c(4), &c(2))),
            ("C2xC2xC2", product(&product(&c(2), &c(2)), &c(2))),
            ("D4", dihedral(4)),
            ("Q8", quaternion()),
            ("C9", c(9)),
            ("C3xC3", product(&c(3), &c(3))),
            ("C10", c(10)),
            ("D5", dihedral(5)),
            ("C11", c(11)),
            ("C12", c(12)),
            ("C6xC2", product(&c(6), &c(2))),
            ("D6", dihedral(6)),
            ("A4", alternating4()),
            ("Dic3", dicyclic3()),
        ];
        named.into_iter().map(|(n, t)| (n.to_string(), t)).collect()
    }

    /// Finite symplectic subgroups used by the fixed-space criteria: the
    /// cyclic groups of order 2, 3, 4, 6 inside SL_2 and the quaternion
    /// group inside GL_4 preserving a symplectic form.
    pub fn symplectic_corpus() -> Vec<(String, Vec<QMat>)> {
        let m2 = |rows: [[i64; 2]; 2]| QMat::from_i64_rows(&[&rows[0], &rows[1]]);
        let m4 = |rows: [[i64; 4]; 4]| {
            QMat::from_i64_rows(&[&rows[0], &rows[1], &rows[2], &rows[3]])
        };
        let i_mat = m4([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]);
        let j_mat = m4([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]);
        vec![
            ("C2".into(), vec![m2([[-1, 0], [0, -1]])]),
            ("C3".into(), vec![m2([[0, -1], [1, -1]])]),
            ("C4".into(), vec![m2([[0, -1], [1, 0]])]),
            ("C6".into(), vec![m2([[1, 1], [-1, 0]])]),
            ("Q8".into(), vec![i_mat, j_mat]),
        ]
    }
}

pub mod sampling {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Uniform tuple with entries in {-2..2}.
    pub fn random_tuple(rng: &mut ChaCha8Rng, n: usize, r: usize) -> MatrixTuple {
        let mats: Vec<QMat> = (0..r)
            .map(|_| QMat::from_fn(n, n, |_, _| qi(rng.gen_range(-2..=2))))
            .collect();
        MatrixTuple::new(n, mats).unwrap()
    }

    /// Random invertible matrix with entries in {-2..2}.
    pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> QMat {
        loop {
            let g = QMat::from_fn(n, n, |_, _| qi(rng.gen_range(-2..=2)));
            if !g.det().is_zero() {
                return g;
            }
        }
    }
}
