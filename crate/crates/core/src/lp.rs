//! Exact feasibility linear programs over the integers.
//!
//! Phase-one simplex on an integer-preserving tableau: every entry is the
//! true tableau entry times the current basis determinant, so pivots are
//! exact divisions. Arithmetic runs in checked `i128` and is redone with
//! big integers if it overflows. Bland's rule guarantees termination.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

trait Ring: Clone {
    fn from_i64(x: i64) -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
    fn sign(&self) -> Ordering;
    fn to_big(&self) -> BigInt;
}

impl Ring for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Find `x ≥ 0` with `A x = b`. Returns `None` when infeasible.
pub fn phase_one(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    match solve::<i128>(a, b) {
        Ok(x) => x,
        Err(Overflow) => solve::<BigInt>(a, b).unwrap_or_else(|_| unreachable!()),
    }
}

struct Overflow;

fn solve<T: Ring>(a: &[Vec<i64>], b: &[i64]) -> Result<Option<Vec<BigRational>>, Overflow> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if m == 0 {
        return Ok(Some(vec![BigRational::zero(); n]));
    }
    // Columns: n structural, m artificial, then the right-hand side.
    let w = n + m + 1;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let s = if b[i] < 0 { -1 } else { 1 };
        let mut row: Vec<T> = a[i].iter().map(|&x| T::from_i64(s * x)).collect();
        row.extend((0..m).map(|k| T::from_i64(i64::from(k == i))));
        row.push(T::from_i64(s * b[i]));
        t.push(row);
    }
    // Reduced costs of minimizing the sum of artificials.
    let mut z = vec![T::from_i64(0); w];
    for j in (0..n).chain(std::iter::once(w - 1)) {
        let mut s = T::from_i64(0);
        for row in t.iter() {
            s = s.sub(&row[j]).ok_or(Overflow)?;
        }
        z[j] = s;
    }
    t.push(z);
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut det = T::from_i64(1);
    while let Some(q) = (0..n).find(|&j| t[m][j].sign() == Ordering::Less) {
        // Ratio test, ties broken by the smallest basic index.
        let mut p: Option<usize> = None;
        for i in 0..m {
            if t[i][q].sign() != Ordering::Greater {
                continue;
            }
            p = Some(match p {
                None => i,
                Some(k) => {
                    let lhs = t[i][w - 1].mul(&t[k][q]).ok_or(Overflow)?;
                    let rhs = t[k][w - 1].mul(&t[i][q]).ok_or(Overflow)?;
                    match lhs.sign_cmp(&rhs) {
                        Ordering::Less => i,
                        Ordering::Equal if basis[i] < basis[k] => i,
                        _ => k,
                    }
                }
            });
        }
        let p = p.expect("phase one objective is bounded");
        let piv = t[p][q].clone();
        for i in 0..=m {
            if i == p {
                continue;
            }
            let f = t[i][q].clone();
            if f.sign() == Ordering::Equal {
                // Row scales by piv / det.
                for j in 0..w {
                    t[i][j] = t[i][j].mul(&piv).ok_or(Overflow)?.div_exact(&det);
                }
                continue;
            }
            for j in 0..w {
                let x = t[i][j].mul(&piv).ok_or(Overflow)?;
                let y = f.mul(&t[p][j]).ok_or(Overflow)?;
                t[i][j] = x.sub(&y).ok_or(Overflow)?.div_exact(&det);
            }
        }
        det = piv;
        basis[p] = q;
    }
    if t[m][w - 1].sign() != Ordering::Equal {
        return Ok(None);
    }
    let d = det.to_big();
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = BigRational::new(t[i][w - 1].to_big(), d.clone());
        }
    }
    Ok(Some(x))
}

trait SignCmp {
    fn sign_cmp(&self, o: &Self) -> Ordering;
}

impl<T: Ring> SignCmp for T {
    fn sign_cmp(&self, o: &Self) -> Ordering {
        match self.sub(o) {
            Some(d) => d.sign(),
            None => self.to_big().cmp(&o.to_big()),
        }
    }
}

/// Whether `target` is a nonnegative combination of `gens`.
pub fn in_cone(gens: &[&[i64]], target: &[i64]) -> bool {
    let d = target.len();
    let a: Vec<Vec<i64>> = (0..d).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    phase_one(&a, target).is_some()
}

/// A rational point `θ` with `f·θ ≥ 1` for every `f` in `ge1` and `e·θ = 0`
/// for every `e` in `eq0`.
pub fn feasible_point(dim: usize, ge1: &[&[i64]], eq0: &[&[i64]]) -> Option<Vec<BigRational>> {
    // θ = u − w with u, w ≥ 0, and one surplus variable per `ge1` row.
    let n = 2 * dim + ge1.len();
    let mut a = Vec::with_capacity(ge1.len() + eq0.len());
    let mut b = Vec::with_capacity(a.capacity());
    for (k, f) in ge1.iter().enumerate() {
        let mut row = vec![0; n];
        for i in 0..dim {
            row[i] = f[i];
            row[dim + i] = -f[i];
        }
        row[2 * dim + k] = -1;
        a.push(row);
        b.push(1);
    }
    for e in eq0 {
        let mut row = vec![0; n];
        for i in 0..dim {
            row[i] = e[i];
            row[dim + i] = -e[i];
        }
        a.push(row);
        b.push(0);
    }
    let x = phase_one(&a, &b)?;
    Some((0..dim).map(|i| &x[i] - &x[dim + i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dot(f: &[i64], x: &[BigRational]) -> BigRational {
        f.iter().zip(x).fold(BigRational::zero(), |s, (a, b)| s + BigRational::from_integer(BigInt::from(*a)) * b)
    }

    #[test]
    fn cone_membership() {
        let a: &[i64] = &[1, 0];
        let b: &[i64] = &[1, 1];
        assert!(in_cone(&[a, b], &[2, 1]));
        assert!(in_cone(&[a, b], &[3, 2]));
        assert!(!in_cone(&[a, b], &[0, -1]));
        assert!(!in_cone(&[a, b], &[-1, 1]));
        assert!(in_cone(&[a, b], &[0, 0]));
    }

    #[test]
    fn point_in_open_cone() {
        let f: Vec<&[i64]> = vec![&[0, 1], &[1, 1]];
        let p = feasible_point(2, &f, &[]).unwrap();
        for g in &f {
            assert!(dot(g, &p) >= BigRational::from_integer(1.into()));
        }
        let face = feasible_point(2, &[&[1, 1]], &[&[0, 1]]).unwrap();
        assert!(dot(&[0, 1], &face).is_zero());
        assert!(feasible_point(2, &[&[1, 0], &[-1, 0]], &[]).is_none());
    }

    proptest! {
        #[test]
        fn membership_matches_certificate(
            gens in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 1..6),
            lam in proptest::collection::vec(0i64..=3, 6),
        ) {
            let refs: Vec<&[i64]> = gens.iter().map(|g| g.as_slice()).collect();
            let mut t = vec![0i64; 3];
            for (g, l) in gens.iter().zip(&lam) {
                for i in 0..3 {
                    t[i] += l * g[i];
                }
            }
            prop_assert!(in_cone(&refs, &t));
            // A point strictly on the positive side of all generators.
            if let Some(p) = feasible_point(3, &refs, &[]) {
                for g in &gens {
                    prop_assert!(dot(g, &p) >= BigRational::from_integer(1.into()));
                }
            }
        }
    }
}
