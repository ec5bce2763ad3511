//! Divided differences and the inductive pipelines built on them.
//!
//! Each step doubles a system and then adds one equation by a constant term.
//!
//! The pipelines keep the standard labeling: after doubling a system in `x_1..x_n`,
//! variable `x_i` pairs with `x_{i+n}`, and the new equation multiplies the first half
//! by a fresh variable and divides the second half by it.

use crate::ct::ct_exact;
use crate::ellrat::{EllRational, SeriesOrder};
use crate::error::{Error, Result};
use crate::laurent::{a, x, LaurentPoly, Monomial, VarId, Q};
use crate::rat::BigRat;

/// An ordered pair of distinct variables on which a divided difference acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SwapPair {
    /// First variable.
    pub i: VarId,
    /// Second variable.
    pub j: VarId,
}

impl SwapPair {
    /// Builds the pair, rejecting `i == j`.
    pub fn new(i: VarId, j: VarId) -> Result<Self> {
        if i == j {
            return Err(Error::PreconditionViolated(
                "divided difference needs two distinct variables".into(),
            ));
        }
        Ok(SwapPair { i, j })
    }
}

fn swap_vars(f: &EllRational, i: VarId, j: VarId) -> Result<EllRational> {
    f.subst_map(&|w| {
        if w == i {
            Some((BigRat::one(), Monomial::var(j, 1)))
        } else if w == j {
            Some((BigRat::one(), Monomial::var(i, 1)))
        } else {
            None
        }
    })
}

/// Divides the numerator of `f` exactly by the polynomial `d`.
fn div_numerator(f: &EllRational, d: &LaurentPoly) -> Result<EllRational> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    let num = f.num().div_exact(d)?;
    Ok(EllRational::new(num, f.den().to_vec())?.normalize())
}

/// `(f - f|_{x_i <-> x_j}) / (x_i - x_j)`, computed exactly.
pub fn divided_difference(f: &EllRational, i: VarId, j: VarId) -> Result<EllRational> {
    let p = SwapPair::new(i, j)?;
    if !f.contains(p.i) && !f.contains(p.j) {
        return Ok(EllRational::zero());
    }
    let diff = f.sub(&swap_vars(f, p.i, p.j)?);
    let d = LaurentPoly::var(p.i).sub(&LaurentPoly::var(p.j));
    div_numerator(&diff, &d)
}

/// Applies `δ_{1,n+1} δ_{2,n+2} ... δ_{n,2n}` to a function of `x_1..x_n`.
pub fn double_system(f: &EllRational, n: usize) -> Result<EllRational> {
    let mut g = f.clone();
    for j in (1..=n).rev() {
        g = divided_difference(&g, x(j), x(j + n))?;
    }
    Ok(g)
}

/// Adds the equation `Σ r_i p_i = s`: the constant term in `fresh` of
/// `fresh^{-s} f(fresh^{r_1} x_1, ..., fresh^{r_n} x_n)`.
pub fn add_equation(
    f: &EllRational,
    r: &[i32],
    s: i32,
    fresh: VarId,
    order: &SeriesOrder,
) -> Result<EllRational> {
    add_equation_weighted(f, r, s, fresh, order, &LaurentPoly::one())
}

/// As [`add_equation`] with an extra polynomial weight in `fresh` multiplied in before
/// the constant term is taken.
pub fn add_equation_weighted(
    f: &EllRational,
    r: &[i32],
    s: i32,
    fresh: VarId,
    order: &SeriesOrder,
    weight: &LaurentPoly,
) -> Result<EllRational> {
    if f.contains(fresh) {
        return Err(Error::PreconditionViolated(
            "fresh variable already occurs".into(),
        ));
    }
    let g = f.subst_map(&|w| {
        let idx = x_index(w)?;
        let e = *r.get(idx - 1)?;
        Some((BigRat::one(), Monomial::from_pairs(&[(w, 1), (fresh, e)])))
    })?;
    let g = g.mul_poly(&weight.mul_mono(&Monomial::var(fresh, -s)));
    ct_exact(&g, fresh, order)
}

/// 1-based index `i` when `v` is the standard `x_i`.
pub fn x_index(v: VarId) -> Option<usize> {
    let i = v as usize;
    if (2..=1 + crate::laurent::STD_NX).contains(&i) {
        Some(i - 1)
    } else {
        None
    }
}

/// One progressively specialized divided difference.
///
/// For `g` free of `x_{j+n}`, computes `δ_{j,j+n} g` followed by `x_j -> q·s`,
/// `x_{j+n} -> q/s`, which equals `(g|_{x_j = q s} - g|_{x_j = q/s}) / (q s - q/s)`.
pub fn specialized_difference(g: &EllRational, xj: VarId, s: VarId) -> Result<EllRational> {
    if !g.contains(xj) {
        return Ok(EllRational::zero());
    }
    let up = g.subst_monomial(xj, &BigRat::one(), &Monomial::from_pairs(&[(Q, 1), (s, 1)]))?;
    let down = g.subst_monomial(
        xj,
        &BigRat::one(),
        &Monomial::from_pairs(&[(Q, 1), (s, -1)]),
    )?;
    let diff = up.sub(&down);
    let d = LaurentPoly::from_terms([
        (Monomial::from_pairs(&[(Q, 1), (s, 1)]), BigRat::one()),
        (
            Monomial::from_pairs(&[(Q, 1), (s, -1)]),
            BigRat::from_int(-1),
        ),
    ]);
    div_numerator(&diff, &d)
}

/// Doubling followed by the specialization `x_j -> q s`, `x_{j+n} -> q/s` of every
/// variable, done one pair at a time so the intermediate results stay small.
/// `f` must be a function of `x_1..x_n` (and possibly `q`).
pub fn double_and_specialize(f: &EllRational, n: usize, s: VarId) -> Result<EllRational> {
    let mut g = f.clone();
    for j in 1..=n {
        if !g.contains(x(j)) {
            // δ of a function free of both variables vanishes.
            return Ok(EllRational::zero());
        }
        g = specialized_difference(&g, x(j), s)?;
        if g.is_zero() {
            return Ok(g);
        }
    }
    Ok(g)
}

fn sign_vector(n: usize) -> Vec<i32> {
    (0..2 * n).map(|i| if i < n { 1 } else { -1 }).collect()
}

fn first_step(sdd: bool, order: &SeriesOrder) -> Result<EllRational> {
    let base = EllRational::from_monos(
        LaurentPoly::one(),
        &[Monomial::var(x(1), 1), Monomial::var(x(2), 1)],
    )?;
    let weight = if sdd {
        LaurentPoly::one_minus(&BigRat::one(), &Monomial::var(a(1), 2))
    } else {
        LaurentPoly::one()
    };
    add_equation_weighted(&base, &[1, -1], 0, a(1), order, &weight)
}

fn pipeline(k: usize, keep_complete: bool, sdd: bool) -> Result<EllRational> {
    if k == 0 || k > 6 {
        return Err(Error::PreconditionViolated(format!("k = {k} out of range")));
    }
    let order = SeriesOrder::standard();
    let mut f = first_step(sdd, &order)?;
    for j in 2..=k {
        let n = 1 << (j - 1);
        let weight = if sdd {
            LaurentPoly::one_minus(&BigRat::one(), &Monomial::var(a(j), 2))
        } else {
            LaurentPoly::one()
        };
        if j == k && !keep_complete {
            let g = double_and_specialize(&f, n, a(j))?;
            return ct_exact(&g.mul_poly(&weight), a(j), &order);
        }
        let doubled = double_system(&f, n)?;
        f = add_equation_weighted(&doubled, &sign_vector(n), 0, a(j), &order, &weight)?;
    }
    if keep_complete {
        Ok(f)
    } else {
        let n = 1 << k;
        f.subst_map(&|w| {
            x_index(w)
                .filter(|&i| i <= n)
                .map(|_| (BigRat::one(), Monomial::var(Q, 1)))
        })
    }
}

/// Complete generating function `F_k(x_1..x_{2^k})` of the hypercube system, or the
/// series `G_k(q)` when `keep_complete` is false.
pub fn hdd_pipeline(k: usize, keep_complete: bool) -> Result<EllRational> {
    if k >= 5 && keep_complete {
        return Err(Error::Unsupported(
            "complete generating function for k >= 5".into(),
        ));
    }
    pipeline(k, keep_complete, false)
}

/// The invariant-theory analogue of [`hdd_pipeline`] with the `(1 - a^2)` weight
/// inserted at each added equation; returns `W_k(x)` or `W_k(q)`.
pub fn sdd_pipeline(k: usize, keep_complete: bool) -> Result<EllRational> {
    if k >= 5 {
        return Err(Error::Unsupported(
            "k >= 5 goes through the orbit-reduced route".into(),
        ));
    }
    pipeline(k, keep_complete, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::VarTable;

    fn parse(s: &str) -> EllRational {
        EllRational::parse(s, VarTable::standard()).unwrap()
    }

    #[test]
    fn delta_examples() {
        let f = parse("1/(1-x1*a1*a2)");
        let d = divided_difference(&f, x(1), x(5)).unwrap();
        assert!(d.equal_as_rational(&parse("a1*a2/(1-x1*a1*a2)(1-x5*a1*a2)")));
        assert!(divided_difference(&parse("x1"), x(1), x(2))
            .unwrap()
            .equal_as_rational(&EllRational::one()));
        let sym = parse("1/(1-x1*x2)");
        assert!(divided_difference(&sym, x(1), x(2)).unwrap().is_zero());
    }

    #[test]
    fn doubling_examples() {
        let f = parse("1/(1-x1*x2)");
        let d = double_system(&f, 2).unwrap();
        let want = parse("(1-x1*x2*x3*x4)/(1-x1*x2)(1-x2*x3)(1-x1*x4)(1-x3*x4)");
        assert!(d.equal_as_rational(&want), "{d}");
        assert!(double_system(&EllRational::one(), 2).unwrap().is_zero());
    }

    #[test]
    fn add_equation_examples() {
        let order = SeriesOrder::standard();
        let f = parse("(1-x1*x2*x3*x4)/(1-x1*x2)(1-x2*x3)(1-x1*x4)(1-x3*x4)");
        let g = add_equation(&f, &[1, 1, -1, -1], 0, a(2), &order).unwrap();
        assert!(g.equal_as_rational(&parse("1/(1-x2*x3)(1-x1*x4)")), "{g}");
        assert_eq!(add_equation(&f, &[0, 0, 0, 0], 0, a(2), &order).unwrap(), f);
        let base = parse("1/(1-x1)(1-x2)");
        let h = add_equation(&base, &[1, -1], 0, a(1), &order).unwrap();
        assert!(h.equal_as_rational(&parse("1/(1-x1*x2)")));
    }

    #[test]
    fn hdd_small() {
        assert!(hdd_pipeline(1, false)
            .unwrap()
            .equal_as_rational(&parse("1/(1-q^2)")));
        assert!(hdd_pipeline(2, false)
            .unwrap()
            .equal_as_rational(&parse("1/(1-q^2)^2")));
        let f3 = hdd_pipeline(3, true).unwrap();
        let want = parse(
            "(1-x1*x2*x3*x4*x5*x6*x7*x8)/(1-x1*x8)(1-x2*x7)(1-x3*x6)(1-x4*x5)(1-x1*x4*x6*x7)(1-x2*x3*x5*x8)",
        );
        assert!(f3.equal_as_rational(&want), "{f3}");
        let g3 = hdd_pipeline(3, false).unwrap();
        assert!(
            g3.equal_as_rational(&parse("(1+q^4)/(1-q^2)^4(1-q^4)")),
            "{g3}"
        );
    }

    #[test]
    fn sdd_small() {
        assert!(sdd_pipeline(1, true)
            .unwrap()
            .equal_as_rational(&parse("(1-x2^2)/(1-x1*x2)")));
        let w2 = sdd_pipeline(2, true).unwrap();
        assert!(
            w2.equal_as_rational(&parse("(1-x2*x4-x3*x4+x4^2)/(1-x1*x4)(1-x2*x3)")),
            "{w2}"
        );
        assert!(sdd_pipeline(2, false)
            .unwrap()
            .equal_as_rational(&parse("1/(1-q^2)")));
        assert!(sdd_pipeline(3, false)
            .unwrap()
            .equal_as_rational(&parse("1/(1-q^4)")));
    }
}
