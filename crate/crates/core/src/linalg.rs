//! Exact linear algebra over Q via integer rows.
//!
//! Rows are cleared of denominators and kept primitive. Elimination is
//! fraction-free: a row is reduced against a pivot row by cross
//! multiplication followed by division by the content.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scale a rational row to a primitive integer row with positive leading entry.
pub fn primitive_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    make_primitive(&mut ints);
    ints
}

/// Divide by the gcd of the entries and make the first nonzero entry positive.
pub fn make_primitive(row: &mut [BigInt]) {
    let mut g = row.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return;
    }
    if row.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if !g.is_one() {
        for c in row.iter_mut() {
            *c = &*c / &g;
        }
    }
}

fn leading_column(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|c| !c.is_zero())
}

/// `row <- row * pivot[col] - pivot * row[col]`, then primitive.
fn eliminate(row: &mut [BigInt], pivot_row: &[BigInt], col: usize) {
    let a = row[col].clone();
    if a.is_zero() {
        return;
    }
    let p = &pivot_row[col];
    let g = a.gcd(p);
    let (mr, mp) = (p / &g, &a / &g);
    for (x, y) in row.iter_mut().zip(pivot_row) {
        if y.is_zero() {
            if !x.is_zero() {
                *x = &*x * &mr;
            }
        } else {
            *x = &*x * &mr - y * &mp;
        }
    }
    make_primitive(row);
}

/// Incrementally maintained row echelon form of a subspace of Q^cols.
#[derive(Debug, Clone)]
pub struct Echelon {
    cols: usize,
    /// rows sorted by pivot column; row `i` vanishes left of its pivot
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Remainder of `row` after elimination against every pivot (zero iff in span).
    pub fn reduce(&self, mut row: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        make_primitive(&mut row);
        for (pc, pr) in &self.rows {
            eliminate(&mut row, pr, *pc);
        }
        row
    }

    pub fn contains(&self, row: &[BigInt]) -> bool {
        leading_column(&self.reduce(row.to_vec())).is_none()
    }

    /// Add `row` to the span; returns whether the span grew.
    pub fn insert(&mut self, row: Vec<BigInt>) -> bool {
        let reduced = self.reduce(row);
        match leading_column(&reduced) {
            None => false,
            Some(col) => {
                let at = self.rows.partition_point(|(pc, _)| *pc < col);
                self.rows.insert(at, (col, reduced));
                true
            }
        }
    }

    pub fn insert_rational(&mut self, row: &[BigRational]) -> bool {
        self.insert(primitive_row(row))
    }

    /// Reduced echelon rows: every pivot column is zero outside its pivot row.
    pub fn reduced_rows(&self) -> Vec<(usize, Vec<BigInt>)> {
        let mut rows = self.rows.clone();
        for i in (0..rows.len()).rev() {
            let (pc, pivot) = rows[i].clone();
            for (_, row) in rows.iter_mut().take(i) {
                eliminate(row, &pivot, pc);
            }
        }
        rows
    }

    /// Basis of `{v : r . v = 0 for every row r}` as primitive integer vectors.
    pub fn orthogonal_complement(&self) -> Vec<Vec<BigInt>> {
        let rows = self.reduced_rows();
        let pivots: Vec<usize> = rows.iter().map(|(c, _)| *c).collect();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (pc, row) in &rows {
                if !row[free].is_zero() {
                    v[*pc] = -BigRational::new(row[free].clone(), row[*pc].clone());
                }
            }
            out.push(primitive_row(&v));
        }
        out
    }
}

/// Rank of a list of integer rows.
pub fn rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let mut e = Echelon::new(cols);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Right nullspace `{v : A v = 0}` of the matrix with the given rows.
pub fn nullspace(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut e = Echelon::new(cols);
    for r in rows {
        e.insert(r.clone());
    }
    e.orthogonal_complement()
}

/// Left nullspace `{c : sum c_i row_i = 0}`.
pub fn left_nullspace(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    nullspace(&transpose(rows, cols), rows.len())
}

pub fn transpose(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    (0..cols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Determinant of a square rational matrix by Bareiss elimination.
pub fn determinant(matrix: &[Vec<BigRational>]) -> BigRational {
    let size = matrix.len();
    if size == 0 {
        return BigRational::one();
    }
    let mut scale = BigRational::one();
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            assert_eq!(row.len(), size, "matrix is not square");
            let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scale *= BigRational::from_integer(lcm.clone());
            row.iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size {
        let Some(p) = (k..size).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    BigRational::from_integer(sign * &m[size - 1][size - 1]) / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn rat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect()
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(&ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]), 3), 2);
        assert_eq!(rank(&ints(&[&[0, 0], &[0, 0]]), 2), 0);
    }

    #[test]
    fn nullspace_small() {
        let ns = nullspace(&ints(&[&[1, 1, 1], &[0, 1, -1]]), 3);
        assert_eq!(ns, ints(&[&[2, -1, -1]]));
    }

    #[test]
    fn determinant_small() {
        let m = rat(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, -1, 0], &[0, 1, 0, -1]]);
        assert_eq!(determinant(&m), BigRational::from_integer((-1).into()));
        let m = rat(&[&[2, 0], &[0, 3]]);
        assert_eq!(determinant(&m), BigRational::from_integer(6.into()));
    }

    fn det_by_permutations(m: &[Vec<i64>]) -> i64 {
        fn perms(k: usize, used: &mut Vec<bool>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if acc.len() == k {
                out.push(acc.clone());
                return;
            }
            for i in 0..k {
                if !used[i] {
                    used[i] = true;
                    acc.push(i);
                    perms(k, used, acc, out);
                    acc.pop();
                    used[i] = false;
                }
            }
        }
        let k = m.len();
        let mut all = Vec::new();
        perms(k, &mut vec![false; k], &mut Vec::new(), &mut all);
        all.iter()
            .map(|p| {
                let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                sign * (0..k).map(|i| m[i][p[i]]).product::<i64>()
            })
            .sum()
    }

    proptest! {
        #[test]
        fn bareiss_matches_leibniz(entries in proptest::collection::vec(-6i64..=6, 16), size in 1usize..=4) {
            let m: Vec<Vec<i64>> = (0..size).map(|i| entries[i * 4..i * 4 + size].to_vec()).collect();
            let r: Vec<Vec<BigRational>> = m.iter()
                .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect();
            prop_assert_eq!(determinant(&r), BigRational::from_integer(det_by_permutations(&m).into()));
        }

        #[test]
        fn rank_plus_nullity(entries in proptest::collection::vec(-3i64..=3, 20)) {
            let rows: Vec<Vec<BigInt>> = entries.chunks(5).map(|c| c.iter().map(|&x| x.into()).collect()).collect();
            let r = rank(&rows, 5);
            let ns = nullspace(&rows, 5);
            prop_assert_eq!(r + ns.len(), 5);
            for v in &ns {
                for row in &rows {
                    let dot: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
