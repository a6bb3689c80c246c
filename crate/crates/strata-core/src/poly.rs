//! Univariate polynomials over Q, exact arithmetic, and factorization into
//! rational irreducibles (small-prime Berlekamp, linear Hensel lifting,
//! subset recombination). Degrees in this crate stay small, so all steps
//! are deterministic and unoptimized.

use crate::linalg::{QMat, SpanTracker, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Dense polynomial over Q. `c[i]` is the coefficient of x^i; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    c: Vec<Q>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Q::one())
    }

    pub fn x() -> Self {
        QPoly { c: vec![Q::zero(), Q::one()] }
    }

    pub fn constant(v: Q) -> Self {
        QPoly::from_coeffs(vec![v])
    }

    pub fn from_coeffs(c: Vec<Q>) -> Self {
        let mut c = c;
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        QPoly::from_coeffs(c.iter().map(|&v| Q::from_integer(BigInt::from(v))).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn leading(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.c.len().max(other.c.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.c.len().max(other.c.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly::from_coeffs(self.c.iter().map(|v| -v.clone()).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + a * b;
                }
            }
        }
        QPoly::from_coeffs(out)
    }

    pub fn scale(&self, v: &Q) -> QPoly {
        QPoly::from_coeffs(self.c.iter().map(|a| a * v).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lc_inv = div.leading().recip();
        let mut rem = self.c.clone();
        let mut quot = vec![Q::zero(); self.c.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() * &lc_inv;
            if !f.is_zero() {
                quot[k] = f.clone();
                for (i, b) in div.c.iter().enumerate() {
                    if !b.is_zero() {
                        rem[k + i] = &rem[k + i] - &f * b;
                    }
                }
            }
            rem.pop();
        }
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    pub fn rem(&self, div: &QPoly) -> QPoly {
        self.divrem(div).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, u, v) with u·self + v·other = g, g monic.
    pub fn xgcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (QPoly::zero(), QPoly::zero(), QPoly::zero());
        }
        let lc_inv = r0.leading().recip();
        (r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv))
    }

    pub fn derivative(&self) -> QPoly {
        if self.c.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc
    }

    /// Evaluate on a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &QMat) -> QMat {
        let n = m.rows();
        let mut acc = QMat::zero(n, n);
        for v in self.c.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let d = acc.at(i, i) + v;
                acc.set(i, i, d);
            }
        }
        acc
    }

    /// Largest squarefree divisor, monic.
    pub fn squarefree_part(&self) -> QPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Monic irreducible factors with multiplicities, sorted by degree then
    /// coefficient order. Constants factor to an empty list.
    pub fn factor(&self) -> Vec<(QPoly, u32)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sf = self.squarefree_part();
        let prim = to_primitive_z(&sf);
        let mut factors: Vec<QPoly> = factor_primitive_squarefree(&prim)
            .into_iter()
            .map(|z| z_to_qpoly(&z).monic())
            .collect();
        factors.sort_by(cmp_poly);
        let mut out = Vec::new();
        for f in factors {
            let mut rest = self.clone();
            let mut mult = 0u32;
            loop {
                let (q, r) = rest.divrem(&f);
                if r.is_zero() {
                    mult += 1;
                    rest = q;
                } else {
                    break;
                }
            }
            assert!(mult > 0, "factor does not divide its source");
            out.push((f, mult));
        }
        out
    }
}

fn cmp_poly(a: &QPoly, b: &QPoly) -> Ordering {
    a.c.len().cmp(&b.c.len()).then_with(|| {
        for (x, y) in a.c.iter().zip(&b.c) {
            match x.cmp(y) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, v) in self.c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            let neg = v.is_negative();
            let a = v.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            }
            if i >= 1 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "x")?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Minimal polynomial of a square rational matrix (monic), found as the first
/// linear dependency among its powers.
pub fn matrix_min_poly(m: &QMat) -> QPoly {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut tracker = SpanTracker::new(n * n);
    let mut powers: Vec<QMat> = vec![QMat::identity(n)];
    tracker.insert(powers[0].flatten());
    loop {
        let next = powers.last().unwrap().mul(m);
        if !tracker.insert(next.flatten()) {
            // next power is a combination of the lower ones: solve for it
            let k = powers.len();
            let cols: Vec<Vec<Q>> = powers.iter().map(|p| p.flatten()).collect();
            let sys = QMat::from_cols(n * n, &cols);
            let sol = sys.solve(&next.flatten()).expect("dependency must be solvable");
            let mut coeffs: Vec<Q> = sol.into_iter().map(|v| -v).collect();
            coeffs.push(Q::one());
            debug_assert_eq!(coeffs.len(), k + 1);
            return QPoly::from_coeffs(coeffs);
        }
        powers.push(next);
    }
}

// ---------------------------------------------------------------------------
// Integer-level factorization machinery.

type ZPoly = Vec<BigInt>;

fn z_trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|v| v.is_zero()) {
        p.pop();
    }
    p
}

fn z_deg(p: &ZPoly) -> usize {
    assert!(!p.is_empty());
    p.len() - 1
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    z_trim(out)
}

fn z_content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for v in p {
        g = g.gcd(v);
    }
    g
}

fn z_primitive(p: &ZPoly) -> ZPoly {
    let c = z_content(p);
    if c.is_zero() {
        return p.clone();
    }
    let mut out: ZPoly = p.iter().map(|v| v / &c).collect();
    if out.last().is_some_and(|v| v.is_negative()) {
        for v in out.iter_mut() {
            *v = -(v.clone());
        }
    }
    out
}

/// Exact division in Z[x]; None when it does not divide.
fn z_div_exact(num: &ZPoly, den: &ZPoly) -> Option<ZPoly> {
    if num.is_empty() {
        return Some(Vec::new());
    }
    if den.is_empty() || num.len() < den.len() {
        return None;
    }
    let mut rem = num.clone();
    let mut quot = vec![BigInt::zero(); num.len() - den.len() + 1];
    let lc = den.last().unwrap();
    for k in (0..quot.len()).rev() {
        let top = rem[k + den.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        quot[k] = q.clone();
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &q * d;
        }
    }
    if rem.iter().all(|v| v.is_zero()) {
        Some(z_trim(quot))
    } else {
        None
    }
}

fn to_primitive_z(f: &QPoly) -> ZPoly {
    assert!(!f.is_zero());
    let mut denom_lcm = BigInt::one();
    for c in f.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: ZPoly = f.coeffs().iter().map(|c| c.numer() * &denom_lcm / c.denom()).collect();
    z_primitive(&z_trim(ints))
}

fn z_to_qpoly(p: &ZPoly) -> QPoly {
    QPoly::from_coeffs(p.iter().map(|v| Q::from_integer(v.clone())).collect())
}

// Arithmetic in GF(p)[x] for small primes.
#[derive(Clone, PartialEq)]
struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    fn new(p: u64, c: Vec<u64>) -> Self {
        let mut c: Vec<u64> = c.into_iter().map(|v| v % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    fn constant(p: u64, v: u64) -> Self {
        FpPoly::new(p, vec![v])
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        assert!(!self.is_zero());
        self.c.len() - 1
    }

    fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    fn sub(&self, other: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.c.len().max(other.c.len());
        FpPoly::new(p, (0..n).map(|i| (self.coeff(i) + p - other.coeff(i)) % p).collect())
    }

    fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.c.len() + other.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + (x as u128) * (y as u128)) % p;
            }
        }
        FpPoly::new(self.p, out.into_iter().map(|v| v as u64).collect())
    }

    fn divrem(&self, den: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!den.is_zero());
        let p = self.p;
        let lc_inv = mod_inverse(*den.c.last().unwrap(), p);
        let mut rem = self.c.clone();
        let dd = den.deg();
        let qlen = rem.len().saturating_sub(dd);
        let mut quot = vec![0u64; qlen];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let f = mulmod(*rem.last().unwrap(), lc_inv, p);
            if f != 0 {
                quot[k] = f;
                for (i, &d) in den.c.iter().enumerate() {
                    let sub = mulmod(f, d, p);
                    rem[k + i] = (rem[k + i] + p - sub) % p;
                }
            }
            rem.pop();
        }
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    fn rem(&self, den: &FpPoly) -> FpPoly {
        self.divrem(den).1
    }

    fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inverse(*self.c.last().unwrap(), self.p);
        FpPoly::new(self.p, self.c.iter().map(|&v| mulmod(v, inv, self.p)).collect())
    }

    fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> FpPoly {
        if self.c.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        FpPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &v)| mulmod(v, (i as u64) % self.p, self.p))
                .collect(),
        )
    }

    /// Modular inverse of self mod m; None if not coprime.
    fn inverse_mod(&self, m: &FpPoly) -> Option<FpPoly> {
        let p = self.p;
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::constant(p, 1));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() || r0.deg() != 0 {
            return None;
        }
        let inv = mod_inverse(r0.c[0], p);
        Some(FpPoly::new(p, t0.c.iter().map(|&v| mulmod(v, inv, p)).collect()).rem(m))
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible mod p");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

fn z_mod_p(f: &ZPoly, p: u64) -> FpPoly {
    let pi = BigInt::from(p);
    FpPoly::new(
        p,
        f.iter()
            .map(|v| {
                let m = v.mod_floor(&pi);
                u64::try_from(&m).expect("residue fits u64")
            })
            .collect(),
    )
}

/// x^(p^i) residues as rows; kernel of (Frobenius - id) gives the Berlekamp
/// subalgebra, whose dimension counts the irreducible factors.
fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.p;
    let d = f.deg();
    assert!(d >= 1);
    if d == 1 {
        return vec![f.monic()];
    }
    // row i = x^(i*p) mod f
    let xp = {
        // x^p mod f by repeated squaring
        let mut base = FpPoly::new(p, vec![0, 1]);
        let mut acc = FpPoly::constant(p, 1);
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(f);
            }
            base = base.mul(&base).rem(f);
            e >>= 1;
        }
        acc
    };
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(d);
    let mut cur = FpPoly::constant(p, 1);
    for i in 0..d {
        if i > 0 {
            cur = cur.mul(&xp).rem(f);
        }
        let mut row = vec![0u64; d];
        for (j, &v) in cur.c.iter().enumerate() {
            row[j] = v;
        }
        rows.push(row);
    }
    // kernel of (Q - I) acting on coefficient rows: v such that v·Q = v
    let mut mat = vec![vec![0u64; d]; d];
    for i in 0..d {
        for j in 0..d {
            // transpose so kernel vectors are right kernel
            mat[j][i] = (rows[i][j] + if i == j { p - 1 } else { 0 }) % p;
        }
    }
    let kernel = fp_kernel(&mat, p);
    let r = kernel.len();
    assert!(r >= 1);
    if r == 1 {
        return vec![f.monic()];
    }
    let mut factors = vec![f.monic()];
    'outer: for v in &kernel {
        let vp = FpPoly::new(p, v.clone());
        if !vp.is_zero() && vp.deg() == 0 {
            continue; // constants separate nothing
        }
        let mut next = Vec::new();
        for h in factors {
            if h.deg() == 1 || factors_done(&next, r) {
                next.push(h);
                continue;
            }
            let mut pieces = Vec::new();
            let vm = vp.rem(&h);
            for cval in 0..p {
                let shifted = vm.sub(&FpPoly::constant(p, cval));
                let g = h.gcd(&shifted);
                if !g.is_zero() && g.deg() > 0 {
                    pieces.push(g.monic());
                }
            }
            if pieces.is_empty() {
                next.push(h);
            } else {
                next.extend(pieces);
            }
        }
        factors = next;
        if factors.len() == r {
            break 'outer;
        }
    }
    assert_eq!(factors.len(), r, "Berlekamp refinement incomplete");
    factors.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
    factors
}

fn factors_done(acc: &[FpPoly], r: usize) -> bool {
    acc.len() >= r
}

fn fp_kernel(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut m: Vec<Vec<u64>> = mat.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(sel) = (row..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(sel, row);
        let inv = mod_inverse(m[row][col], p);
        for x in &mut m[row][col..] {
            *x = mulmod(*x, inv, p);
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i != row && other[col] != 0 {
                let f = other[col];
                for (x, &s) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = (*x + p - mulmod(f, s, p)) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut basis = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[i][free]) % p;
        }
        basis.push(v);
    }
    basis
}

const FACTOR_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Factor a primitive squarefree integer polynomial with positive leading
/// coefficient into primitive irreducibles.
fn factor_primitive_squarefree(g: &ZPoly) -> Vec<ZPoly> {
    assert!(!g.is_empty());
    let d = z_deg(g);
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![g.clone()];
    }
    let lc = g.last().unwrap().clone();
    let p = FACTOR_PRIMES
        .iter()
        .copied()
        .find(|&p| {
            let pi = BigInt::from(p);
            if (&lc % &pi).is_zero() {
                return false;
            }
            let gp = z_mod_p(g, p);
            let gg = gp.gcd(&gp.derivative());
            !gg.is_zero() && gg.deg() == 0
        })
        .expect("no usable small prime (squarefree reduction not found)");
    let modular = berlekamp(&z_mod_p(g, p).monic());
    if modular.len() == 1 {
        return vec![g.clone()];
    }
    // coefficient bound for lc * (any primitive factor), then lift past 2*bound
    let norm1: BigInt = g.iter().map(|v| v.abs()).sum();
    let bound: BigInt = (BigInt::one() << (d + 1)) * norm1 * lc.abs();
    let (lifted, modulus) = hensel_lift(g, &modular, p, &(bound * 2 + 1));
    recombine(g, lifted, &modulus)
}

/// Lift f = lc * prod(monic factors) from mod p to mod p^k >= target.
fn hensel_lift(f: &ZPoly, modular: &[FpPoly], p: u64, target: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let lc = f.last().unwrap();
    let lc_inv_p = mod_inverse(z_mod_p(&vec![lc.clone()], p).coeff(0), p);
    // fixed Bezout data mod p: s_i = (prod_{j != i} g_j)^(-1) mod g_i
    let bezout: Vec<FpPoly> = (0..modular.len())
        .map(|i| {
            let mut prod = FpPoly::constant(p, 1);
            for (j, gj) in modular.iter().enumerate() {
                if j != i {
                    prod = prod.mul(gj).rem(&modular[i]);
                }
            }
            prod.inverse_mod(&modular[i]).expect("modular factors are pairwise coprime")
        })
        .collect();
    let mut factors: Vec<ZPoly> = modular
        .iter()
        .map(|m| z_trim(m.c.iter().map(|&v| BigInt::from(v)).collect()))
        .collect();
    let mut modulus = BigInt::from(p);
    let pp = BigInt::from(p);
    while &modulus <= target {
        // error term: f - lc * prod(factors), divisible by modulus
        let mut prod: ZPoly = vec![lc.clone()];
        for fac in &factors {
            prod = z_mul(&prod, fac);
        }
        let width = f.len().max(prod.len());
        let mut err: ZPoly = (0..width)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_else(BigInt::zero);
                let b = prod.get(i).cloned().unwrap_or_else(BigInt::zero);
                a - b
            })
            .collect();
        err = z_trim(err);
        let scaled: ZPoly = err
            .iter()
            .map(|v| {
                let (q, r) = v.div_rem(&modulus);
                assert!(r.is_zero(), "Hensel invariant broken");
                q
            })
            .collect();
        let c_bar = z_mod_p(&z_trim(scaled), p);
        let c_adj = c_bar.mul(&FpPoly::constant(p, lc_inv_p));
        for (i, m) in modular.iter().enumerate() {
            let delta = c_adj.mul(&bezout[i]).rem(m);
            for (j, &dv) in delta.c.iter().enumerate() {
                factors[i][j] += &modulus * BigInt::from(dv);
            }
        }
        modulus *= &pp;
    }
    (factors, modulus)
}

fn sym_mod(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Advance a k-subset of {0..n-1} in lexicographic order; false when exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] != i + n - k {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn recombine(g: &ZPoly, pool_init: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut remaining = g.clone();
    let mut pool = pool_init;
    let mut out = Vec::new();
    'search: while !pool.is_empty() {
        let lc = remaining.last().unwrap().clone();
        for size in 1..=pool.len() {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                // candidate = primitive part of lc * prod(pool[combo]) mod p^k, symmetric lift
                let mut prod: ZPoly = vec![lc.clone()];
                for &i in &combo {
                    prod = z_mul(&prod, &pool[i]);
                    for v in prod.iter_mut() {
                        *v = v.mod_floor(modulus);
                    }
                }
                let cand = z_primitive(&z_trim(prod.iter().map(|v| sym_mod(v, modulus)).collect()));
                if !cand.is_empty() && z_deg(&cand) >= 1 {
                    if let Some(quot) = z_div_exact(&remaining, &cand) {
                        out.push(cand);
                        remaining = z_primitive(&quot);
                        for (removed, &i) in combo.iter().enumerate() {
                            pool.remove(i - removed);
                        }
                        continue 'search;
                    }
                }
                if !next_combination(&mut combo, pool.len()) {
                    break;
                }
            }
        }
        // no subset divides: remaining is irreducible
        break;
    }
    if !remaining.is_empty() && z_deg(&remaining) >= 1 {
        out.push(z_primitive(&remaining));
    }
    out
}
