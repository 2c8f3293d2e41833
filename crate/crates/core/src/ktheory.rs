//! Classes in R(G) ≅ K^G_0(C³), the Euler pairings and the twist action.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::grouplat::GroupSpec;
use crate::tautline::RClass;

/// P(ρ, σ) = χ^G(ρ ⊗ O_{C³}, σ ⊗ O_0). The first argument is free, so only
/// Hom survives and P(ρ, σ) = dim (ρ* ⊗ σ)^G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingTable {
    pub table: Vec<Vec<i64>>,
}

impl PairingTable {
    pub fn new(g: &GroupSpec) -> Self {
        let n = g.order();
        let table = (0..n)
            .map(|rho| (0..n).map(|sigma| i64::from(g.mul(g.inverse(rho), sigma) == 0)).collect())
            .collect();
        PairingTable { table }
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.table)
    }
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
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
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
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

/// χ^G(ρ ⊗ O_0, σ ⊗ O_0) computed from the Koszul resolution of O_0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactPairing {
    /// `kernel[δ]` = Σ_i (−1)^i #{S ⊆ {x,y,z}, |S| = i : weight(S) = δ}.
    kernel: Vec<i64>,
    /// Row `ρ` is the index of ρ^{-1}.
    inverse: Vec<usize>,
    mul: Vec<Vec<usize>>,
}

impl CompactPairing {
    pub fn new(g: &GroupSpec) -> Self {
        let n = g.order();
        let mut kernel = vec![0; n];
        for (delta, slot) in kernel.iter_mut().enumerate() {
            *slot = koszul_terms(g, delta).iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c } else { -c }).sum();
        }
        let inverse = (0..n).map(|a| g.inverse(a)).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| g.mul(a, b)).collect()).collect();
        CompactPairing { kernel, inverse, mul }
    }

    /// Q(ρ, σ) on basis classes.
    pub fn basis(&self, rho: usize, sigma: usize) -> i64 {
        self.kernel[self.mul[sigma][self.inverse[rho]]]
    }

    /// Bilinear extension Q(β1, β2).
    pub fn pair(&self, b1: &RClass, b2: &RClass) -> i64 {
        let mut s = 0;
        for (rho, &x) in b1.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (sigma, &y) in b2.iter().enumerate() {
                if y != 0 {
                    s += x * y * self.basis(rho, sigma);
                }
            }
        }
        s
    }
}

/// Number of subsets S of {x, y, z} with |S| = i and weight δ, for i = 0..3.
pub fn koszul_terms(g: &GroupSpec, delta: usize) -> [i64; 4] {
    let chi = g.coordinate_characters();
    let mut out = [0; 4];
    for mask in 0u32..8 {
        let w = (0..3).filter(|i| mask >> i & 1 == 1).fold(0, |acc, i| g.mul(acc, chi[i]));
        if w == delta {
            out[mask.count_ones() as usize] += 1;
        }
    }
    out
}

/// Q computed afresh for one pair; see [`CompactPairing`] for repeated use.
pub fn compact_pairing(g: &GroupSpec, b1: &RClass, b2: &RClass) -> i64 {
    CompactPairing::new(g).pair(b1, b2)
}

/// y − Q(E, y)·E.
pub fn twist_class(q: &CompactPairing, e: &RClass, y: &RClass) -> RClass {
    let k = q.pair(e, y);
    y.iter().zip(e).map(|(a, b)| a - k * b).collect()
}

/// y + Q(E, y)·E.
pub fn untwist_class(q: &CompactPairing, e: &RClass, y: &RClass) -> RClass {
    let k = q.pair(e, y);
    y.iter().zip(e).map(|(a, b)| a + k * b).collect()
}

/// c'(τ) = c(τσ^{-1}), so that ⟨θ∘σ, c⟩ = ⟨θ, c'⟩.
pub fn shift_class(g: &GroupSpec, c: &RClass, sigma: usize) -> RClass {
    let inv = g.inverse(sigma);
    (0..c.len()).map(|tau| c[g.mul(tau, inv)]).collect()
}

/// c'(τ) = −c(τ*).
pub fn dual_class(g: &GroupSpec, c: &RClass) -> RClass {
    (0..c.len()).map(|tau| -c[g.inverse(tau)]).collect()
}

/// The regular representation [R] = φ([pt]).
pub fn regular_class(g: &GroupSpec) -> RClass {
    vec![1; g.order()]
}

pub fn is_unimodular(p: &PairingTable) -> bool {
    p.determinant().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouplat::parse_group;
    use proptest::prelude::*;

    #[test]
    fn a1_koszul() {
        let g = parse_group("1/2(1,0,1)").unwrap();
        assert_eq!(koszul_terms(&g, 0), [1, 1, 1, 1]);
        assert_eq!(compact_pairing(&g, &vec![1, 0], &vec![1, 0]), 0);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 1]]), BigInt::from(1));
        assert_eq!(determinant(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]]), BigInt::from(-3));
        for s in ["1/11(1,2,8)", "1/6(1,1,4)+1/2(1,0,1)"] {
            assert!(is_unimodular(&PairingTable::new(&parse_group(s).unwrap())));
        }
    }

    fn class(n: usize) -> impl Strategy<Value = RClass> {
        proptest::collection::vec(-5i64..=5, n)
    }

    proptest! {
        #[test]
        fn skew_and_twist_inverse(a in class(11), b in class(11), s in 0usize..11) {
            let g = parse_group("1/11(1,2,8)").unwrap();
            let q = CompactPairing::new(&g);
            prop_assert_eq!(q.pair(&a, &b), -q.pair(&b, &a));
            prop_assert_eq!(q.pair(&a, &a), 0);
            prop_assert_eq!(untwist_class(&q, &a, &twist_class(&q, &a, &b)), b.clone());
            prop_assert_eq!(dual_class(&g, &dual_class(&g, &b)), b.clone());
            prop_assert_eq!(shift_class(&g, &shift_class(&g, &b, s), g.inverse(s)), b);
        }
    }
}
