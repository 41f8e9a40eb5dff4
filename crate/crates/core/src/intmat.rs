//! Dense integer matrices and Smith normal form over `BigInt`.
//!
//! Only column operations are recorded: for `D = P·A·Q` we keep `Q` and
//! `Q⁻¹`, which is what is needed to read coordinates in `ℤⁿ / rowspan(A)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * &self[(i, j)];
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c·row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += c·col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * c;
            self[(i, dst)] += v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", r.join(" "))?;
        }
        Ok(())
    }
}

/// Finitely generated abelian group `ℤ^free_rank ⊕ ⨁ ℤ/tᵢ` with `tᵢ | tᵢ₊₁`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Smith form of an `m×n` matrix `A`: positive diagonal `d` with
/// `D = P·A·Q`, plus the column transform `Q` and its inverse.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
    cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Invariants of the cokernel `ℤⁿ / rowspan(A)`.
    pub fn cokernel(&self) -> AbelianInvariants {
        let torsion = self
            .diag
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().expect("torsion coefficient fits in u64"))
            .collect();
        AbelianInvariants {
            free_rank: self.cols - self.diag.len(),
            torsion,
        }
    }

    /// Coordinates of `v` in the diagonal basis, `v·Q`.
    pub fn coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.q.left_apply(v)
    }

    /// Is `v` in the integer row span of `A`?
    pub fn in_row_span(&self, v: &[BigInt]) -> bool {
        let y = self.coordinates(v);
        y.iter().enumerate().all(|(i, yi)| match self.diag.get(i) {
            Some(d) => yi.is_multiple_of(d),
            None => yi.is_zero(),
        })
    }

    /// Image of `v` in the cokernel: `(torsion residues, free coordinates)`,
    /// ordered like [`AbelianInvariants`].
    pub fn cokernel_image(&self, v: &[BigInt]) -> (Vec<u64>, Vec<i64>) {
        let y = self.coordinates(v);
        let mut tors = Vec::new();
        for (i, d) in self.diag.iter().enumerate() {
            if !d.is_one() {
                tors.push(y[i].mod_floor(d).to_u64().expect("residue fits"));
            }
        }
        let free = y[self.diag.len()..]
            .iter()
            .map(|c| c.to_i64().expect("free coordinate fits in i64"))
            .collect();
        (tors, free)
    }
}

fn smallest_nonzero(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in from..a.rows {
        for j in from..a.cols {
            let v = a[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().map_or(true, |(_, b)| v < *b) {
                best = Some(((i, j), v));
            }
        }
    }
    best.map(|(p, _)| p)
}

pub fn smith(input: &IntMatrix) -> Smith {
    let mut a = input.clone();
    let n = a.cols;
    let mut q = IntMatrix::identity(n);
    let mut q_inv = IntMatrix::identity(n);
    let mut t = 0;
    while t < a.rows.min(a.cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        q.swap_cols(t, pj);
        q_inv.swap_rows(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..a.rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let c = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &c);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..a.cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let c = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &c);
                q.add_col(j, t, &c);
                // (Q·E)⁻¹ = E⁻¹·Q⁻¹ with E⁻¹ adding −c·row j to row t
                q_inv.add_row(t, j, &-&c);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                // a smaller remainder sits in row/column t; promote it
                let mut best = (t, t);
                for i in t..a.rows {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t..a.cols {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                q.swap_cols(t, best.1);
                q_inv.swap_rows(t, best.1);
                continue;
            }
            let p = a[(t, t)].clone();
            let bad =
                (t + 1..a.rows).find(|&i| (t + 1..a.cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => a.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        t += 1;
    }
    let diag = (0..t).map(|i| a[(i, i)].abs()).collect();
    Smith {
        diag,
        q,
        q_inv,
        cols: n,
    }
}

/// Rank over ℚ.
pub fn rank(a: &IntMatrix) -> usize {
    smith(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inv(m: usize, rows: &[Vec<i64>]) -> AbelianInvariants {
        smith(&IntMatrix::from_rows(m, rows)).cokernel()
    }

    #[test]
    fn textbook_examples() {
        assert_eq!(
            inv(1, &[]),
            AbelianInvariants {
                free_rank: 1,
                torsion: vec![]
            }
        );
        assert_eq!(
            inv(1, &[vec![3]]),
            AbelianInvariants {
                free_rank: 0,
                torsion: vec![3]
            }
        );
        assert_eq!(
            inv(2, &[vec![2, 0], vec![0, 3]]),
            AbelianInvariants {
                free_rank: 0,
                torsion: vec![6]
            }
        );
        assert_eq!(
            inv(2, &[vec![2, 4], vec![4, 2]]),
            AbelianInvariants {
                free_rank: 0,
                torsion: vec![2, 6]
            }
        );
        assert_eq!(
            inv(3, &[vec![1, -1, 0]]),
            AbelianInvariants {
                free_rank: 2,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn row_span_membership() {
        let s = smith(&IntMatrix::from_rows(2, &[vec![2, 4], vec![4, 2]]));
        let b = |v: [i64; 2]| v.map(BigInt::from);
        assert!(s.in_row_span(&b([6, 6])));
        assert!(s.in_row_span(&b([2, 4])));
        assert!(!s.in_row_span(&b([1, 0])));
        assert!(!s.in_row_span(&b([2, 2])));
    }

    fn det3(m: &[[i64; 3]; 3]) -> i64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    proptest! {
        #[test]
        fn determinant_is_product_of_divisors(m in proptest::array::uniform3(proptest::array::uniform3(-9i64..10))) {
            let rows: Vec<Vec<i64>> = m.iter().map(|r| r.to_vec()).collect();
            let s = smith(&IntMatrix::from_rows(3, &rows));
            let d = det3(&m).abs();
            if s.rank() == 3 {
                let prod: BigInt = s.diag.iter().product();
                prop_assert_eq!(prod, BigInt::from(d));
            } else {
                prop_assert_eq!(d, 0);
            }
            for w in s.diag.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }

        #[test]
        fn transforms_are_inverse_and_rows_lie_in_span(
            rows in proptest::collection::vec(proptest::collection::vec(-6i64..7, 4), 0..5)
        ) {
            let a = IntMatrix::from_rows(4, &rows);
            let s = smith(&a);
            prop_assert_eq!(s.q.mul(&s.q_inv), IntMatrix::identity(4));
            for i in 0..a.rows() {
                prop_assert!(s.in_row_span(a.row(i)));
            }
        }
    }
}
