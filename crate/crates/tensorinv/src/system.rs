//! The hypercube Diophantine system and its constant-term integrands.
//!
//! Columns are indexed by `i = 1..=2^k`; the binary digits `ε_1 ... ε_k` of `i - 1`
//! (most significant first) give the vertex `V_i = (1 - 2ε_1, ..., 1 - 2ε_k)` and the
//! monomial `A_i = Π_j a_j^{1 - 2ε_j}`. The paired index is `i' = 2^k + 1 - i`, for
//! which `A_{i'} = 1 / A_i`.

use crate::ellrat::{BinFactor, EllRational};
use crate::laurent::{a, x, LaurentPoly, Monomial, VarId, Q};
use crate::rat::BigRat;

/// Binary digit `ε_j` (1-based `j`, most significant first) of `i - 1` over `k` digits.
pub fn digit(i: usize, j: usize, k: usize) -> usize {
    ((i - 1) >> (k - j)) & 1
}

/// The vertex vector `V_i` with entries `±1`.
pub fn vertex(i: usize, k: usize) -> Vec<i32> {
    (1..=k).map(|j| 1 - 2 * digit(i, j, k) as i32).collect()
}

/// The paired index `i' = 2^k + 1 - i`.
pub fn partner(i: usize, k: usize) -> usize {
    (1 << k) + 1 - i
}

/// The monomial `A_i` in the standard variables `a_1..a_k`.
pub fn vertex_monomial(i: usize, k: usize) -> Monomial {
    let pairs: Vec<(VarId, i32)> = vertex(i, k)
        .iter()
        .enumerate()
        .map(|(j, &s)| (a(j + 1), s))
        .collect();
    Monomial::from_pairs(&pairs)
}

/// The `a`-variables `a_1..a_k`.
pub fn a_vars(k: usize) -> Vec<VarId> {
    (1..=k).map(a).collect()
}

/// Complete integrand `Π_i 1/(1 - x_i A_i)` whose constant term in the `a`-variables is
/// the complete generating function of the system.
pub fn complete_integrand(k: usize) -> EllRational {
    let n = 1 << k;
    let factors = (1..=n)
        .map(|i| BinFactor::simple(vertex_monomial(i, k).mul(&Monomial::var(x(i), 1))))
        .collect();
    EllRational::new(LaurentPoly::one(), factors).expect("vertex factors are non-constant")
}

/// Numerator `Π_j (1 - a_j^2)` of the invariant-theory integrand.
pub fn sdd_numerator(k: usize) -> LaurentPoly {
    (1..=k).fold(LaurentPoly::one(), |acc, j| {
        acc.mul(&LaurentPoly::one_minus(
            &BigRat::one(),
            &Monomial::var(a(j), 2),
        ))
    })
}

/// The weight-graded integrand `Π_{S ⊆ [1,k]} 1/(1 - q Π_{i∈S} a_i / Π_{j∉S} a_j)`,
/// multiplied by `Π (1 - a_j^2)` when `sdd` is set.
pub fn direct_integrand(k: usize, sdd: bool) -> EllRational {
    let n = 1 << k;
    let factors = (1..=n)
        .map(|i| BinFactor::simple(vertex_monomial(i, k).mul(&Monomial::var(Q, 1))))
        .collect();
    let num = if sdd {
        sdd_numerator(k)
    } else {
        LaurentPoly::one()
    };
    EllRational::new(num, factors).expect("vertex factors are non-constant")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_pairs_are_inverse() {
        for k in 1..=5 {
            for i in 1..=(1 << k) {
                let p = partner(i, k);
                assert_eq!(
                    vertex_monomial(i, k).mul(&vertex_monomial(p, k)),
                    Monomial::one()
                );
            }
        }
        assert_eq!(vertex(1, 3), vec![1, 1, 1]);
        assert_eq!(vertex(2, 3), vec![1, 1, -1]);
        assert_eq!(vertex(5, 3), vec![-1, 1, 1]);
    }
}
