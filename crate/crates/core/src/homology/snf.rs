use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A sparse integer matrix with arbitrary precision entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntegerMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        let v = self.get(i, j) + v.into();
        self.set(i, j, v);
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (k, j, v) in other.entries() {
            by_row[k].push((j, v));
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for (i, k, a) in self.entries() {
            for &(j, b) in &by_row[k] {
                out.add_to(i, j, a * b);
            }
        }
        out
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }
}

/// Invariant factors `d_1 | d_2 | …` (all positive) of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal in Smith form.
#[derive(Clone, Debug)]
pub struct SnfCertificate {
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

impl SnfCertificate {
    pub fn factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn verify(&self, m: &IntegerMatrix) -> bool {
        if self.u.mul(m).mul(&self.v) != self.d {
            return false;
        }
        if !self.u.determinant().abs().is_one() || !self.v.determinant().abs().is_one() {
            return false;
        }
        if self.d.entries().any(|(i, j, _)| i != j) {
            return false;
        }
        let f = self.factors();
        let k = f.len();
        (0..k).all(|i| self.d.get(i, i).is_positive()) && f.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

trait Entry: Clone + std::fmt::Debug {
    type Mag: Ord;
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn size(&self) -> Self::Mag;
    fn quot(&self, p: &Self) -> Self;
    /// `self - q·v`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, v: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    type Mag = u64;
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn size(&self) -> u64 {
        self.unsigned_abs()
    }
    fn quot(&self, p: &Self) -> Self {
        self / p
    }
    fn sub_mul(&self, q: &Self, v: &Self) -> Option<Self> {
        q.checked_mul(*v).and_then(|x| self.checked_sub(x))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    type Mag = num_bigint::BigUint;
    fn nil() -> Self {
        <BigInt as Zero>::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn size(&self) -> num_bigint::BigUint {
        self.magnitude().clone()
    }
    fn quot(&self, p: &Self) -> Self {
        self / p
    }
    fn sub_mul(&self, q: &Self, v: &Self) -> Option<Self> {
        Some(self - q * v)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Sparse<T> {
    rows: Vec<BTreeMap<usize, T>>,
    cols: Vec<BTreeMap<usize, T>>,
}

impl<T: Entry> Sparse<T> {
    fn set(&mut self, i: usize, j: usize, v: T) {
        if v.is_nil() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.rows[i].insert(j, v.clone());
            self.cols[j].insert(i, v);
        }
    }

    /// `row_i -= q·row_r`
    fn row_op(&mut self, i: usize, r: usize, q: &T) -> Option<()> {
        let src: Vec<(usize, T)> = self.rows[r].iter().map(|(&j, v)| (j, v.clone())).collect();
        for (j, v) in src {
            let new = self.rows[i].get(&j).cloned().unwrap_or_else(T::nil).sub_mul(q, &v)?;
            self.set(i, j, new);
        }
        Some(())
    }

    /// `col_j -= q·col_c`
    fn col_op(&mut self, j: usize, c: usize, q: &T) -> Option<()> {
        let src: Vec<(usize, T)> = self.cols[c].iter().map(|(&i, v)| (i, v.clone())).collect();
        for (i, v) in src {
            let new = self.cols[j].get(&i).cloned().unwrap_or_else(T::nil).sub_mul(q, &v)?;
            self.set(i, j, new);
        }
        Some(())
    }

    fn global_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(T::Mag, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                let m = v.size();
                if best.as_ref().is_none_or(|(bm, _, _)| m < *bm) {
                    best = Some((m, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn local_pivot(&self, r: usize, c: usize) -> Option<(usize, usize)> {
        let mut best: Option<(T::Mag, usize, usize)> = None;
        for (&j, v) in &self.rows[r] {
            if j != c {
                let m = v.size();
                if best.as_ref().is_none_or(|(bm, bi, bj)| (&m, r, j) < (bm, *bi, *bj)) {
                    best = Some((m, r, j));
                }
            }
        }
        for (&i, v) in &self.cols[c] {
            if i != r {
                let m = v.size();
                if best.as_ref().is_none_or(|(bm, bi, bj)| (&m, i, c) < (bm, *bi, *bj)) {
                    best = Some((m, i, c));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Diagonalizes by unimodular operations; returns the diagonal entries or
    /// `None` on overflow.
    fn diagonalize(mut self) -> Option<Vec<BigInt>> {
        let mut diag = Vec::new();
        while let Some((mut r, mut c)) = self.global_pivot() {
            loop {
                let p = self.rows[r][&c].clone();
                let others: Vec<(usize, T)> = self.cols[c]
                    .iter()
                    .filter(|(&i, _)| i != r)
                    .map(|(&i, v)| (i, v.clone()))
                    .collect();
                for (i, v) in others {
                    self.row_op(i, r, &v.quot(&p))?;
                }
                let others: Vec<(usize, T)> = self.rows[r]
                    .iter()
                    .filter(|(&j, _)| j != c)
                    .map(|(&j, v)| (j, v.clone()))
                    .collect();
                for (j, v) in others {
                    self.col_op(j, c, &v.quot(&p))?;
                }
                match self.local_pivot(r, c) {
                    None => {
                        diag.push(p.to_big().abs());
                        self.rows[r].clear();
                        self.cols[c].clear();
                        break;
                    }
                    Some((i, j)) => {
                        r = i;
                        c = j;
                    }
                }
            }
        }
        Some(diag)
    }
}

/// Turns a list of positive diagonal entries into a divisibility chain with
/// the same product structure.
fn divisibility_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let ones = d.iter().filter(|x| x.is_one()).count();
    d.retain(|x| !x.is_one());
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if !d[j].is_multiple_of(&d[i]) {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    let mut out = vec![BigInt::one(); ones];
    out.extend(d);
    out.sort();
    out
}

fn load<T: Entry>(m: &IntegerMatrix, conv: impl Fn(&BigInt) -> Option<T>) -> Option<Sparse<T>> {
    let mut s = Sparse {
        rows: vec![BTreeMap::new(); m.rows()],
        cols: vec![BTreeMap::new(); m.cols()],
    };
    for (i, j, v) in m.entries() {
        s.set(i, j, conv(v)?);
    }
    Some(s)
}

/// Invariant factors of `m`. Works over machine integers and restarts over
/// arbitrary precision integers if any intermediate value overflows.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let fast = load::<i64>(m, |v| v.to_i64().filter(|&x| x != i64::MIN)).and_then(Sparse::diagonalize);
    let diag = match fast {
        Some(d) => d,
        None => load::<BigInt>(m, |v| Some(v.clone()))
            .and_then(Sparse::diagonalize)
            .expect("arbitrary precision elimination cannot overflow"),
    };
    SmithForm {
        factors: divisibility_chain(diag),
    }
}

/// Smith form with explicit transforms, by dense elimination. Intended for
/// small matrices and for auditing [`smith_normal_form`].
pub fn smith_normal_form_certified(m: &IntegerMatrix) -> SnfCertificate {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_dense();
    let mut u = IntegerMatrix::identity(rows).to_dense();
    let mut v = IntegerMatrix::identity(cols).to_dense();

    fn row_sub(x: &mut [Vec<BigInt>], i: usize, r: usize, q: &BigInt) {
        let src = x[r].clone();
        for (t, s) in x[i].iter_mut().zip(&src) {
            *t -= q * s;
        }
    }
    fn col_sub(x: &mut [Vec<BigInt>], j: usize, c: usize, q: &BigInt) {
        for row in x.iter_mut() {
            let s = row[c].clone();
            row[j] -= q * s;
        }
    }

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(num_bigint::BigUint, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.as_ref().is_none_or(|(m, _, _)| x.magnitude() < m) {
                        best = Some((x.magnitude().clone(), i, j));
                    }
                }
            }
            let Some((_, i, j)) = best else {
                return SnfCertificate {
                    d: IntegerMatrix::from_dense(&a).resized(rows, cols),
                    u: IntegerMatrix::from_dense(&u).resized(rows, rows),
                    v: IntegerMatrix::from_dense(&v).resized(cols, cols),
                };
            };
            a.swap(t, i);
            u.swap(t, i);
            for row in a.iter_mut() {
                row.swap(t, j);
            }
            for row in v.iter_mut() {
                row.swap(t, j);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &p;
                    row_sub(&mut a, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &p;
                    col_sub(&mut a, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            if let Some(i) = bad {
                let minus_one = -BigInt::one();
                row_sub(&mut a, t, i, &minus_one);
                row_sub(&mut u, t, i, &minus_one);
                continue;
            }
            if p.is_negative() {
                for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                    *x = -x.clone();
                }
            }
            break;
        }
    }
    SnfCertificate {
        d: IntegerMatrix::from_dense(&a).resized(rows, cols),
        u: IntegerMatrix::from_dense(&u).resized(rows, rows),
        v: IntegerMatrix::from_dense(&v).resized(cols, cols),
    }
}

impl IntegerMatrix {
    /// Keeps entries, fixes the shape (for empty dense inputs).
    fn resized(mut self, rows: usize, cols: usize) -> Self {
        self.rows = rows;
        self.cols = cols;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(m: &IntegerMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .factors
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert!(factors(&IntegerMatrix::zeros(3, 4)).is_empty());
        assert_eq!(
            factors(&IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 3]])),
            vec![1, 6]
        );
        assert_eq!(factors(&IntegerMatrix::from_dense(&[vec![2]])), vec![2]);
        assert_eq!(
            factors(&IntegerMatrix::from_dense(&[
                vec![2, 4, 4],
                vec![-6, 6, 12],
                vec![10, -4, -16]
            ])),
            vec![2, 6, 12]
        );
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let m = IntegerMatrix::from_dense(&[vec![big, big - 1], vec![big - 2, big]]);
        let f = smith_normal_form(&m);
        let c = smith_normal_form_certified(&m);
        assert!(c.verify(&m));
        assert_eq!(f.factors, c.factors());
    }

    #[test]
    fn determinant_matches_hand_value() {
        let m = IntegerMatrix::from_dense(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.determinant(), BigInt::from(4));
    }

    proptest! {
        #[test]
        fn certified_and_sparse_agree(
            rows in 0usize..6,
            cols in 0usize..6,
            seed in proptest::collection::vec(-9i64..10, 36),
        ) {
            let dense: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let m = IntegerMatrix::from_dense(&dense).resized(rows, cols);
            let cert = smith_normal_form_certified(&m);
            prop_assert!(cert.verify(&m));
            prop_assert_eq!(smith_normal_form(&m).factors, cert.factors());
        }
    }
}
