//! Exact linear algebra: an incremental fraction-free (Bareiss) eliminator
//! over `i128` for rank/closure queries, with automatic escalation to
//! `BigRational` Gaussian elimination if an intermediate value would
//! overflow, and a small dense rational matrix type for module maps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer scalar for normal vectors and fraction-free elimination.
pub type Int = i128;

#[derive(Debug)]
struct Overflow;

/// Fraction-free row eliminator. Rows pushed in any order; pivot columns are
/// chosen as the first nonzero entry of the reduced row (column pivoting by
/// arrival). Intermediate entries are minors of the pushed rows, so they stay
/// bounded by the Hadamard bound instead of blowing up.
struct IntElim {
    width: usize,
    rows: Vec<Vec<Int>>,
    pivot_cols: Vec<usize>,
    pivots: Vec<Int>,
}

impl IntElim {
    fn new(width: usize) -> IntElim {
        IntElim {
            width,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Bareiss-reduce `v` against the current pivot rows.
    fn reduce(&self, v: &[Int]) -> Result<Vec<Int>, Overflow> {
        let mut v = v.to_vec();
        for k in 0..self.rows.len() {
            let pc = self.pivot_cols[k];
            let c = v[pc];
            let p = self.pivots[k];
            let prev = if k == 0 { 1 } else { self.pivots[k - 1] };
            // the rescale by p / prev is required even when c == 0, or the
            // later exact divisions lose their minor interpretation
            let row = &self.rows[k];
            for j in 0..self.width {
                let a = p.checked_mul(v[j]).ok_or(Overflow)?;
                let b = c.checked_mul(row[j]).ok_or(Overflow)?;
                v[j] = a.checked_sub(b).ok_or(Overflow)? / prev;
            }
        }
        Ok(v)
    }

    /// Push a row; returns true when it increased the rank.
    fn push(&mut self, v: &[Int]) -> Result<bool, Overflow> {
        let reduced = self.reduce(v)?;
        match reduced.iter().position(|&x| x != 0) {
            Some(pc) => {
                self.pivots.push(reduced[pc]);
                self.pivot_cols.push(pc);
                self.rows.push(reduced);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn in_span(&self, v: &[Int]) -> Result<bool, Overflow> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }
}

/// Plain Gaussian eliminator over `BigRational`; the escalation target.
struct RatElim {
    width: usize,
    rows: Vec<Vec<BigRational>>,
    pivot_cols: Vec<usize>,
}

impl RatElim {
    fn new(width: usize) -> RatElim {
        RatElim {
            width,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut [BigRational]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivot_cols) {
            if v[pc].is_zero() {
                continue;
            }
            let factor = v[pc].clone();
            for j in 0..self.width {
                let t = &row[j] * &factor;
                v[j] -= t;
            }
        }
    }

    fn push(&mut self, v: &[BigRational]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        match v.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                let inv = v[pc].clone();
                for x in v.iter_mut() {
                    *x /= &inv;
                }
                self.pivot_cols.push(pc);
                self.rows.push(v);
                true
            }
            None => false,
        }
    }

    fn in_span(&self, v: &[BigRational]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }
}

enum ElimState {
    Int(IntElim),
    Rat(RatElim),
}

/// Incremental rank/membership oracle over exact arithmetic.
pub struct Eliminator {
    width: usize,
    originals: Vec<Vec<Int>>,
    state: ElimState,
}

fn to_rat_row(v: &[Int]) -> Vec<BigRational> {
    v.iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect()
}

impl Eliminator {
    pub fn new(width: usize) -> Eliminator {
        Eliminator {
            width,
            originals: Vec::new(),
            state: ElimState::Int(IntElim::new(width)),
        }
    }

    fn escalate(&mut self) {
        let mut rat = RatElim::new(self.width);
        for row in &self.originals {
            rat.push(&to_rat_row(row));
        }
        self.state = ElimState::Rat(rat);
    }

    /// Push a row; returns true when the rank increased.
    pub fn push(&mut self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.width);
        let grew = match &mut self.state {
            ElimState::Int(int) => match int.push(v) {
                Ok(grew) => grew,
                Err(Overflow) => {
                    self.escalate();
                    match &mut self.state {
                        ElimState::Rat(rat) => rat.push(&to_rat_row(v)),
                        ElimState::Int(_) => unreachable!(),
                    }
                }
            },
            ElimState::Rat(rat) => rat.push(&to_rat_row(v)),
        };
        if grew {
            self.originals.push(v.to_vec());
        }
        grew
    }

    pub fn rank(&self) -> usize {
        self.originals.len()
    }

    pub fn in_span(&mut self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.width);
        match &self.state {
            ElimState::Int(int) => match int.in_span(v) {
                Ok(ans) => ans,
                Err(Overflow) => {
                    self.escalate();
                    match &self.state {
                        ElimState::Rat(rat) => rat.in_span(&to_rat_row(v)),
                        ElimState::Int(_) => unreachable!(),
                    }
                }
            },
            ElimState::Rat(rat) => rat.in_span(&to_rat_row(v)),
        }
    }
}

/// Rank of a set of integer rows.
pub fn int_rank(rows: &[Vec<Int>], width: usize) -> usize {
    let mut elim = Eliminator::new(width);
    for r in rows {
        elim.push(r);
    }
    elim.rank()
}

/// Dense matrix over `BigRational`, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> RatMat {
        RatMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMat {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<Int>]) -> RatMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = RatMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigRational::from_integer(BigInt::from(x));
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

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = RatMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> RatMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == RatMat::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Row-reduce in place; returns pivot columns.
    fn row_echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self[(p, j)].clone();
                self[(p, j)] = self[(r, j)].clone();
                self[(r, j)] = tmp;
            }
            let inv = self[(r, c)].clone();
            for j in 0..self.cols {
                self[(r, j)] /= &inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in 0..self.cols {
                        let t = &self[(r, j)] * &f;
                        self[(i, j)] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_echelon().len()
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.row_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![BigRational::zero(); self.cols];
            x[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[(r, free)].clone();
            }
            basis.push(x);
        }
        basis
    }

    /// A basis of the column space, as columns of the returned matrix.
    pub fn column_space_basis(&self) -> RatMat {
        let mut t = self.transpose();
        let pivots = t.row_echelon();
        let mut out = RatMat::zero(self.rows, pivots.len());
        for (k, _) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, k)] = t[(k, i)].clone();
            }
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hstack(parts: &[&RatMat]) -> RatMat {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = RatMat::zero(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            for i in 0..rows {
                for j in 0..p.cols {
                    out[(i, off + j)] = p[(i, j)].clone();
                }
            }
            off += p.cols;
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Clear denominators and divide by the content; sign fixed so the first
/// nonzero entry is positive. Returns `None` for the zero vector.
pub fn primitive_integer(v: &[BigRational]) -> Option<Vec<BigInt>> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    for x in ints.iter_mut() {
        *x /= &gcd;
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -(x.clone());
            }
        }
    }
    Some(ints)
}

/// Same canonical form for an integer vector.
pub fn canonical_int_vector(v: &[Int]) -> Option<Vec<Int>> {
    if v.iter().all(|&x| x == 0) {
        return None;
    }
    let mut g: Int = 0;
    for &x in v {
        g = gcd_int(g, x.abs());
    }
    let mut out: Vec<Int> = v.iter().map(|&x| x / g).collect();
    if let Some(&first) = out.iter().find(|&&x| x != 0) {
        if first < 0 {
            for x in out.iter_mut() {
                *x = -*x;
            }
        }
    }
    Some(out)
}

fn gcd_int(a: Int, b: Int) -> Int {
    if b == 0 {
        a
    } else {
        gcd_int(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rand_small_matrix(seed: &mut u64, rows: usize, cols: usize) -> Vec<Vec<Int>> {
        // xorshift for test data only
        let mut next = || {
            *seed ^= *seed << 13;
            *seed ^= *seed >> 7;
            *seed ^= *seed << 17;
            *seed
        };
        (0..rows)
            .map(|_| (0..cols).map(|_| (next() % 5) as Int - 2).collect())
            .collect()
    }

    #[test]
    fn eliminator_agrees_with_rational_rank() {
        let mut seed = 0x9E3779B97F4A7C15u64;
        for trial in 0..60 {
            let rows = 1 + (trial % 7);
            let cols = 1 + (trial % 9);
            let m = rand_small_matrix(&mut seed, rows, cols);
            let fast = int_rank(&m, cols);
            let slow = RatMat::from_int_rows(&m).rank();
            assert_eq!(fast, slow, "matrix {m:?}");
        }
    }

    #[test]
    fn in_span_detects_membership() {
        let mut elim = Eliminator::new(3);
        elim.push(&[1, 2, 3]);
        elim.push(&[0, 1, 1]);
        assert!(elim.in_span(&[1, 3, 4]));
        assert!(elim.in_span(&[2, 4, 6]));
        assert!(!elim.in_span(&[0, 0, 1]));
        assert_eq!(elim.rank(), 2);
        // pushing a dependent row does not grow rank
        assert!(!elim.push(&[1, 3, 4]));
        assert_eq!(elim.rank(), 2);
    }

    #[test]
    fn escalation_path_matches_int_path() {
        // force the rational fallback by feeding entries near the i128 edge
        let big: Int = i128::MAX / 2;
        let rows = vec![vec![big, 1, 0], vec![big, 0, 1], vec![0, 1, -1]];
        let mut elim = Eliminator::new(3);
        for r in &rows {
            elim.push(r);
        }
        assert_eq!(elim.rank(), 2);
        assert!(elim.in_span(&[0, 2, -2]));
    }

    #[test]
    fn kernel_basis_is_kernel() {
        let m = RatMat::from_int_rows(&[vec![1, 2, 3, 0], vec![0, 1, 1, -1]]);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 2);
        for k in &kernel {
            assert!(m.mul_vec(k).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn primitive_integer_canonical_form() {
        let v = vec![
            BigRational::new(BigInt::from(-2), BigInt::from(3)),
            BigRational::new(BigInt::from(4), BigInt::from(3)),
            BigRational::zero(),
        ];
        let p = primitive_integer(&v).unwrap();
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-2), BigInt::from(0)]);
        assert!(primitive_integer(&[BigRational::zero()]).is_none());
        assert_eq!(
            canonical_int_vector(&[0, -4, 6]).unwrap(),
            vec![0, 2, -3]
        );
    }

    #[test]
    fn column_space_basis_spans() {
        let m = RatMat::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]]);
        let b = m.column_space_basis();
        assert_eq!(b.ncols(), 2);
        assert_eq!(b.rank(), 2);
    }
}
