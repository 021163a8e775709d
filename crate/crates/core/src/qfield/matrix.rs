use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentInt;
use super::poly;
use super::ratfunc::RatFunc;

/// Sparse vector over Q(q), keyed by coordinate index. Zero entries are never stored.
pub type SparseVec = BTreeMap<usize, RatFunc>;

/// `v += c * w`.
pub fn axpy(v: &mut SparseVec, c: &RatFunc, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (j, x) in w {
        let t = c * x;
        add_entry(v, *j, &t);
    }
}

pub fn add_entry(v: &mut SparseVec, j: usize, x: &RatFunc) {
    if x.is_zero() {
        return;
    }
    match v.get_mut(&j) {
        Some(e) => {
            *e += x;
            if e.is_zero() {
                v.remove(&j);
            }
        }
        None => {
            v.insert(j, x.clone());
        }
    }
}

pub fn scale_vec(v: &SparseVec, c: &RatFunc) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(j, x)| (*j, c * x)).collect()
}

/// How ranks are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RankMode {
    /// Fraction-free elimination over Z[q, q^-1].
    #[default]
    Symbolic,
    /// Integer specializations with an exact degree-bound certificate.
    Evaluation,
}

/// Dense matrix over Q(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

/// Outcome of `QMatrix::solve`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<RatFunc>),
    /// A particular solution plus a kernel basis.
    Underdetermined {
        particular: Vec<RatFunc>,
        kernel: Vec<Vec<RatFunc>>,
    },
    Inconsistent,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![RatFunc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Rows given as sparse vectors of the stated width.
    pub fn from_sparse_rows(rows: &[SparseVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r {
                assert!(*j < cols, "column index out of range");
                m.set(i, *j, x.clone());
            }
        }
        m
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_sparse_cols(cols: &[SparseVec], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c {
                assert!(*i < rows, "row index out of range");
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RatFunc) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(RatFunc::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Entrywise value at a rational point; `None` if some entry has a pole there.
    pub fn eval(&self, q: &BigRational) -> Option<Vec<Vec<BigRational>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.eval(q)).collect())
            .collect()
    }

    pub fn rank_with(&self, mode: RankMode) -> usize {
        match mode {
            RankMode::Symbolic => self.rank(),
            RankMode::Evaluation => self.rank_eval(),
        }
    }

    /// Exact rank by fraction-free elimination over the Laurent ring.
    pub fn rank(&self) -> usize {
        let mut m = self.cleared_rows();
        bareiss_rank(&mut m)
    }

    /// Exact rank from modular specializations.
    ///
    /// After clearing denominators and dividing each row by its lowest q-power,
    /// every (r+1)-minor is q^a times a polynomial of degree at most
    /// D = min(sum of the r+1 largest row widths, same for columns), with
    /// coefficients bounded by the product of the r+1 largest row 1-norms (or
    /// column 1-norms). If the rank mod p stays at most r at D+1 nonzero points
    /// for primes whose product exceeds twice that bound, every such minor is
    /// zero over Z[q]. A point of higher rank raises r and restarts the check.
    pub fn rank_eval(&self) -> usize {
        let m = self.cleared_rows();
        let full = self.rows.min(self.cols);
        if full == 0 {
            return 0;
        }
        let row_lo: Vec<i32> = m
            .iter()
            .map(|r| r.iter().filter(|x| !x.is_zero()).map(|x| x.low()).min().unwrap_or(0))
            .collect();
        let mut row_w = vec![0u64; self.rows];
        let mut row_n = vec![BigInt::zero(); self.rows];
        let mut col_lo = vec![i32::MAX; self.cols];
        let mut col_hi = vec![i32::MIN; self.cols];
        let mut col_n = vec![BigInt::zero(); self.cols];
        let (mut scol_lo, mut scol_hi) = (col_lo.clone(), col_hi.clone());
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                row_w[i] = row_w[i].max((x.high() - row_lo[i]) as u64);
                col_lo[j] = col_lo[j].min(x.low());
                col_hi[j] = col_hi[j].max(x.high());
                scol_lo[j] = scol_lo[j].min(x.low() - row_lo[i]);
                scol_hi[j] = scol_hi[j].max(x.high() - row_lo[i]);
                let n: BigInt = x.terms().map(|(_, c)| c.abs()).sum();
                row_n[i] += &n;
                col_n[j] += n;
            }
        }
        let widths = |lo: &[i32], hi: &[i32]| -> Vec<u64> {
            lo.iter().zip(hi).map(|(l, h)| if l <= h { (h - l) as u64 } else { 0 }).collect()
        };
        let desc = |mut v: Vec<u64>| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        };
        // minor widths survive monomial row scaling, so the columns before and
        // after the shift give two separate bounds
        let row_w = desc(row_w);
        let col_w = desc(widths(&col_lo, &col_hi));
        let scol_w = desc(widths(&scol_lo, &scol_hi));
        let row_bits = desc(row_n.iter().map(|n| n.bits()).collect());
        let col_bits = desc(col_n.iter().map(|n| n.bits()).collect());
        let top = |v: &[u64], k: usize| -> u64 { v.iter().take(k).sum() };

        let mut primes = ModPrimes::default();
        let mut reduced: Vec<Vec<Vec<Vec<u64>>>> = Vec::new();
        let mut r = 0usize;
        'certify: loop {
            let degree = top(&row_w, r + 1).min(top(&col_w, r + 1)).min(top(&scol_w, r + 1));
            let coeff_bits = top(&row_bits, r + 1).min(top(&col_bits, r + 1));
            let needed = (coeff_bits + 1).div_ceil(ModPrimes::BITS) as usize;
            for k in 0..needed {
                let p = primes.get(k);
                if reduced.len() <= k {
                    reduced.push(reduce_mod(&m, &row_lo, p));
                }
                for t in 1..=degree + 1 {
                    let rt = rank_mod_p(eval_mod(&reduced[k], t, p), p);
                    if rt > r {
                        r = rt;
                        if r == full {
                            return r;
                        }
                        continue 'certify;
                    }
                }
            }
            return r;
        }
    }

    /// Rows multiplied through by the lcm of their denominators.
    fn cleared_rows(&self) -> Vec<Vec<LaurentInt>> {
        (0..self.rows).map(|i| clear_denominators(self.row(i))).collect()
    }

    /// Reduced row echelon form: (matrix, pivot columns).
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut sub = Subspace::new(self.cols);
        for i in 0..self.rows {
            sub.insert(dense_to_sparse(self.row(i)));
        }
        sub.make_reduced();
        let mut rows: Vec<(usize, &SparseVec)> =
            sub.pivots.iter().map(|(c, r)| (*c, &sub.rows[*r])).collect();
        rows.sort_by_key(|x| x.0);
        let pivots = rows.iter().map(|x| x.0).collect();
        let dense: Vec<SparseVec> = rows.into_iter().map(|x| x.1.clone()).collect();
        (QMatrix::from_sparse_rows(&dense, self.cols), pivots)
    }

    /// Kernel basis, each vector denominator-free and content-free.
    pub fn kernel_basis(&self) -> Vec<Vec<RatFunc>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![RatFunc::zero(); self.cols];
                v[f] = RatFunc::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(k, f);
                }
                primitive_vector(&v)
            })
            .collect()
    }

    pub fn solve(&self, b: &[RatFunc]) -> Solution {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Solution::Inconsistent;
        }
        let mut x = vec![RatFunc::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        if pivots.len() == self.cols {
            Solution::Unique(x)
        } else {
            Solution::Underdetermined {
                particular: x,
                kernel: self.kernel_basis(),
            }
        }
    }
}

pub fn dense_to_sparse(v: &[RatFunc]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, n: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

fn poly_lcm(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let g = poly::gcd(a, b);
    poly::div_exact(&poly::mul(a, b), &g).expect("gcd divides product")
}

/// Multiply by the lcm of denominators; entries become Laurent polynomials.
pub fn clear_denominators(v: &[RatFunc]) -> Vec<LaurentInt> {
    let mut l = vec![BigInt::one()];
    for x in v {
        if !x.is_laurent() {
            l = poly_lcm(&l, x.denom().as_poly());
        }
    }
    let l = LaurentInt::from_poly(0, l);
    v.iter()
        .map(|x| {
            if x.is_zero() {
                LaurentInt::zero()
            } else if l.is_one() {
                x.numer().clone()
            } else {
                let f = l.div_exact(x.denom()).expect("lcm divisible by denominator");
                x.numer() * &f
            }
        })
        .collect()
}

/// Scalar multiple of `v` with Laurent entries whose joint polynomial gcd is 1,
/// lowest q-power 0 over all entries, and positive leading coefficient in the
/// first nonzero entry.
pub fn primitive_vector(v: &[RatFunc]) -> Vec<RatFunc> {
    let cleared = clear_denominators(v);
    let nonzero: Vec<&LaurentInt> = cleared.iter().filter(|x| !x.is_zero()).collect();
    if nonzero.is_empty() {
        return v.to_vec();
    }
    let lo = nonzero.iter().map(|x| x.low()).min().unwrap();
    let mut g: Vec<BigInt> = Vec::new();
    for x in &nonzero {
        g = poly::gcd(&g, x.as_poly());
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    let first = nonzero[0];
    let flip = first.leading_coeff().unwrap().is_negative();
    cleared
        .iter()
        .map(|x| {
            if x.is_zero() {
                return RatFunc::zero();
            }
            let q = poly::div_exact(x.as_poly(), &g).expect("gcd divides entry");
            let p = LaurentInt::from_poly(x.low() - lo, q);
            RatFunc::from_laurent(if flip { -&p } else { p })
        })
        .collect()
}

fn bareiss_rank(m: &mut [Vec<LaurentInt>]) -> usize {
    let nr = m.len();
    if nr == 0 {
        return 0;
    }
    let nc = m[0].len();
    let mut prev = LaurentInt::one();
    let mut rank = 0;
    for k in 0..nr.min(nc) {
        // smallest-width nonzero pivot keeps the minors short
        let mut best: Option<(usize, usize, u32)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if !x.is_zero() && best.is_none_or(|b| x.width() < b.2) {
                    best = Some((i, j, x.width()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap(k, pi);
        if pj != k {
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let piv = &top[k];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[k], LaurentInt::zero());
            for j in k + 1..nc {
                let a = &piv[k] * &row[j];
                let v = if lead.is_zero() { a } else { &a - &(&lead * &piv[j]) };
                row[j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = top[k][k].clone();
        rank += 1;
    }
    rank
}

/// Primes just below 2^62, found on demand.
#[derive(Default)]
struct ModPrimes(Vec<u64>);

impl ModPrimes {
    /// Every prime handed out exceeds 2^BITS.
    const BITS: u64 = 61;

    fn get(&mut self, k: usize) -> u64 {
        while self.0.len() <= k {
            let mut p = self.0.last().copied().unwrap_or((1 << 62) + 1) - 2;
            while !primal_check::miller_rabin(p) {
                p -= 2;
            }
            self.0.push(p);
        }
        self.0[k]
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Row-shifted entries as dense coefficient lists mod p, constant term first.
fn reduce_mod(m: &[Vec<LaurentInt>], row_lo: &[i32], p: u64) -> Vec<Vec<Vec<u64>>> {
    let pb = BigInt::from(p);
    m.iter()
        .zip(row_lo)
        .map(|(row, lo)| {
            row.iter()
                .map(|x| {
                    let mut c = Vec::new();
                    for (e, v) in x.terms() {
                        let k = (e - lo) as usize;
                        if c.len() <= k {
                            c.resize(k + 1, 0);
                        }
                        c[k] = v.mod_floor(&pb).try_into().expect("residue fits in u64");
                    }
                    c
                })
                .collect()
        })
        .collect()
}

fn eval_mod(m: &[Vec<Vec<u64>>], t: u64, p: u64) -> Vec<Vec<u64>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|c| c.iter().rev().fold(0, |acc, &v| (mul_mod(acc, t, p) + v) % p))
                .collect()
        })
        .collect()
}

fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let nc = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..nc {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p);
        let pivot_row = std::mem::take(&mut m[rank]);
        for row in m.iter_mut().skip(rank + 1) {
            let f = mul_mod(row[col], inv, p);
            if f == 0 {
                continue;
            }
            for j in col..nc {
                row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nr = m.len();
    if nr == 0 {
        return 0;
    }
    let nc = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut col = 0;
    while rank < nr && col < nc {
        let Some(p) = (rank..nr).find(|&i| !m[i][col].is_zero()) else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let piv = &top[rank];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[col], BigInt::zero());
            for j in col + 1..nc {
                let v = &piv[col] * &row[j] - &lead * &piv[j];
                row[j] = v.div_floor(&prev);
            }
        }
        prev = top[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// Rank of a rational matrix.
pub fn rational_rank(m: &[Vec<BigRational>]) -> usize {
    let ints = m
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    integer_rank(ints)
}

/// Span of sparse vectors in semi-echelon form: each stored row has its
/// lowest nonzero column as pivot, normalized to 1, and pivots are distinct.
///
/// Reduction proceeds in increasing column order, so callers decide which
/// coordinates become pivots by ordering the ambient basis.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivots.contains_key(&c)
    }

    /// Ambient coordinates that are not pivots: a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Remainder of `v` modulo the span; supported on free columns only.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let hit = v
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = hit else { break };
            let row = &self.rows[self.pivots[&c]];
            axpy(&mut v, &(-&x), row);
            debug_assert!(!v.contains_key(&c));
            cursor = c + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&c, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.inv();
        let row = scale_vec(&r, &inv);
        self.pivots.insert(c, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Back-substitute so that every pivot column is zero outside its own row.
    pub fn make_reduced(&mut self) {
        let order: Vec<(usize, usize)> = self.pivots.iter().rev().map(|(c, r)| (*c, *r)).collect();
        for &(c, r) in &order {
            let pivot_row = self.rows[r].clone();
            for &(c2, r2) in &order {
                if c2 >= c {
                    continue;
                }
                if let Some(x) = self.rows[r2].get(&c).cloned() {
                    axpy(&mut self.rows[r2], &(-&x), &pivot_row);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::ratfunc::qint;

    fn q(e: i32) -> RatFunc {
        RatFunc::q_pow(e)
    }

    #[test]
    fn identity_and_proportional_rows() {
        let id = QMatrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert_eq!(id.rank_eval(), 3);
        assert!(id.kernel_basis().is_empty());

        let m = QMatrix::from_rows(vec![vec![RatFunc::one(), q(1)], vec![q(1), q(2)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rank_eval(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // spanned by (q, -1)
        let v = &k[0];
        assert_eq!(v[0], -(&v[1] * &q(1)));
        assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_distinguishes_cases() {
        let m = QMatrix::from_rows(vec![vec![RatFunc::one(), q(1)], vec![q(1), q(2)]]);
        assert_eq!(m.solve(&[RatFunc::one(), RatFunc::zero()]), Solution::Inconsistent);
        match m.solve(&[RatFunc::one(), q(1)]) {
            Solution::Underdetermined { particular, kernel } => {
                assert_eq!(kernel.len(), 1);
                assert_eq!(m.mul_vec(&particular), vec![RatFunc::one(), q(1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let id = QMatrix::identity(2);
        assert_eq!(
            id.solve(&[qint(2, 1), q(3)]),
            Solution::Unique(vec![qint(2, 1), q(3)])
        );
    }

    #[test]
    fn subspace_quotient() {
        let mut s = Subspace::new(3);
        let v: SparseVec = [(0, RatFunc::one()), (2, qint(2, 1))].into_iter().collect();
        assert!(s.insert(v.clone()));
        assert!(!s.insert(scale_vec(&v, &q(5))));
        assert_eq!(s.free_columns(), vec![1, 2]);
        let w: SparseVec = [(0, RatFunc::one())].into_iter().collect();
        let r = s.reduce(w);
        assert_eq!(r.get(&2), Some(&-qint(2, 1)));
    }

    #[test]
    fn rational_function_entries() {
        // rows (1, 1/[2]) and ([2], 1) are proportional
        let a = QMatrix::from_rows(vec![
            vec![RatFunc::one(), qint(2, 1).inv()],
            vec![qint(2, 1), RatFunc::one()],
        ]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.rank_eval(), 1);
    }

    #[test]
    fn evaluation_sees_past_unlucky_primes_and_points() {
        let p = BigInt::from(ModPrimes::default().get(0));
        let lin = |c: i64| RatFunc::from(LaurentInt::from_terms([(1, BigInt::one()), (0, BigInt::from(-c))]));
        // det = p * (q-1)(q-2)(q-3): zero mod the first prime and at q = 1, 2, 3
        let a = QMatrix::from_rows(vec![
            vec![RatFunc::from(LaurentInt::monomial(p, 0)), RatFunc::zero(), RatFunc::zero()],
            vec![RatFunc::zero(), lin(1), lin(2)],
            vec![RatFunc::zero(), RatFunc::zero(), lin(3)],
        ]);
        assert_eq!(a.rank(), 3);
        assert_eq!(a.rank_eval(), 3);
        let b = QMatrix::from_rows(vec![vec![lin(1), lin(1)], vec![lin(2), lin(2)]]);
        assert_eq!(b.rank_eval(), 1);
    }
}
