//! The reformulated system `S'_k` (`|A_1| = ... = |A_k| = |^cA_1| = d`) and the
//! coefficient collapse it allows.
//!
//! After eliminating the extra variable `a_{k+1}` the integrand is
//! `Π_{S ⊆ [2,k]} 1/((1 - q a_1 A(S))(1 - q/(a_1 A(S))))` with `A(S) = Π_{i∈S} a_i`.
//! Taking the constant term in `a_2` and in `a_1` leads to the same partial-fraction
//! coefficients `C_T`, `T ⊆ [3,k]`, so that
//! `G_k = Σ_T CT(C_T^2) + 2 Σ_{T<T'} CT(C_T C_{T'})` over `a_3..a_k`.

use rayon::prelude::*;

use crate::ct::{ct_exact_terms, ct_iter, ct_iter_terms};
use crate::ellrat::{BinFactor, EllRational, SeriesOrder};
use crate::error::{Error, Result};
use crate::laurent::{a, LaurentPoly, Monomial, VarId, Q, T};
use crate::rat::BigRat;

/// The integrand of the reformulated system after the `a_{k+1}` elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupedIntegrand {
    /// Number of sets.
    pub k: usize,
    /// Whether the invariant-theory numerator is included.
    pub sdd: bool,
    /// The integrand in `q, a_1..a_k`.
    pub f: EllRational,
}

impl GroupedIntegrand {
    /// Number of factor pairs `2^{k-1}`.
    pub fn pair_count(&self) -> usize {
        1 << (self.k - 1)
    }

    /// The variables to eliminate.
    pub fn vars(&self) -> Vec<VarId> {
        (1..=self.k).map(a).collect()
    }
}

/// `A(S)` for a bitmask over `first..=last` (bit `j` stands for `a_{first+j}`).
fn subset_monomial(mask: usize, first: usize, last: usize) -> Monomial {
    let pairs: Vec<(VarId, i32)> = (first..=last)
        .filter(|i| mask >> (i - first) & 1 == 1)
        .map(|i| (a(i), 1))
        .collect();
    Monomial::from_pairs(&pairs)
}

/// The constant-term integrand with `a_{k+1}` and `t`, before elimination.
pub fn sprime_integrand_with_t(k: usize, sdd: bool) -> Result<EllRational> {
    check_k(k)?;
    let q = Monomial::var(Q, 1);
    let ak1 = Monomial::var(a(k + 1), 1);
    let mut monos = Vec::new();
    for mask in 0..(1usize << (k - 1)) {
        let s = subset_monomial(mask, 2, k);
        monos.push(q.mul(&Monomial::var(a(1), 1)).mul(&s));
        monos.push(q.mul(&s).mul(&ak1));
    }
    let all: Vec<(VarId, i32)> = (1..=k + 1).map(|i| (a(i), -1)).chain([(T, 1)]).collect();
    monos.push(Monomial::from_pairs(&all));
    let num = if sdd {
        let mut p = LaurentPoly::one_minus(&BigRat::one(), &ak1.div(&Monomial::var(a(1), 1)));
        for i in 2..=k {
            p = p.mul(&LaurentPoly::one_minus(
                &BigRat::one(),
                &Monomial::var(a(i), -1),
            ));
        }
        p
    } else {
        LaurentPoly::one()
    };
    EllRational::from_monos(num, &monos)
}

fn check_k(k: usize) -> Result<()> {
    if !(2..=5).contains(&k) {
        return Err(Error::PreconditionViolated(format!(
            "k = {k} out of range 2..=5"
        )));
    }
    Ok(())
}

/// Builds the grouped integrand: drops the `t` factor, substitutes
/// `a_{k+1} -> t/(a_1 ... a_k)`, then sets `t = 1`.
pub fn build_sprime(k: usize, sdd: bool) -> Result<GroupedIntegrand> {
    let g = sprime_integrand_with_t(k, sdd)?;
    let tfac = g
        .den()
        .iter()
        .find(|f| f.mono.contains(T))
        .cloned()
        .ok_or_else(|| Error::PreconditionViolated("missing t factor".into()))?;
    let without = EllRational::new(
        g.num().clone(),
        g.den().iter().filter(|f| **f != tfac).cloned().collect(),
    )?;
    let val: Vec<(VarId, i32)> = (1..=k).map(|i| (a(i), -1)).chain([(T, 1)]).collect();
    let f = without.subst_monomial(a(k + 1), &BigRat::one(), &Monomial::from_pairs(&val))?;
    let f = f.subst_monomial(T, &BigRat::one(), &Monomial::one())?;
    Ok(GroupedIntegrand { k, sdd, f })
}

/// The closed form `C_T = 1/(1 - q^2) Π_{S ≠ T} 1/((1 - A(S)/A(T))(1 - q^2 A(T)/A(S)))`
/// for `T ⊆ [3,k]` given as a bitmask.
pub fn c_closed_form(k: usize, t: usize) -> Result<EllRational> {
    let at = subset_monomial(t, 3, k.max(2));
    let q2 = Monomial::var(Q, 2);
    let mut factors = vec![BinFactor::simple(q2.clone())];
    let count = if k >= 3 { 1usize << (k - 2) } else { 1 };
    for s in 0..count {
        if s == t {
            continue;
        }
        let as_ = subset_monomial(s, 3, k.max(2));
        factors.push(BinFactor::simple(as_.div(&at)));
        factors.push(BinFactor::simple(q2.mul(&at).div(&as_)));
    }
    EllRational::new(LaurentPoly::one(), factors)
}

/// Partial-fraction coefficient of the contributing factor `1 - q y A(T)` of
/// `Π_{S ⊆ [3,k]} 1/((1 - q y A(S))(1 - q/(y A(S))))` where `y = lead · v`, evaluated at
/// the root `v = 1/(q lead A(T))`.
fn side_coefficient(k: usize, t: usize, v: VarId, lead: &Monomial) -> Result<EllRational> {
    let count = if k >= 3 { 1usize << (k - 2) } else { 1 };
    let y = lead.mul(&Monomial::var(v, 1));
    let q = Monomial::var(Q, 1);
    let mut monos = Vec::new();
    for s in 0..count {
        let as_ = subset_monomial(s, 3, k.max(2));
        if s != t {
            monos.push(q.mul(&y).mul(&as_));
        }
        monos.push(q.div(&y.mul(&as_)));
    }
    let f = EllRational::from_monos(LaurentPoly::one(), &monos)?;
    let at = subset_monomial(t, 3, k.max(2));
    let root = q.mul(lead).mul(&at).inv();
    f.subst_monomial(v, &BigRat::one(), &root)
}

/// The coefficients `C_T`, `T ⊆ [3,k]` in increasing bitmask order, checked against
/// both partial-fraction sides.
pub fn ct_coefficients(gi: &GroupedIntegrand) -> Result<Vec<EllRational>> {
    if gi.sdd {
        return Err(Error::PreconditionViolated(
            "coefficients are defined for the G integrand".into(),
        ));
    }
    let k = gi.k;
    let count = if k >= 3 { 1usize << (k - 2) } else { 1 };
    let a1a = Monomial::var(a(1), 1);
    let mut out = Vec::with_capacity(count);
    for t in 0..count {
        let c = c_closed_form(k, t)?;
        if c.contains(a(1)) || c.contains(a(2)) {
            return Err(Error::AsymmetryDetected(format!(
                "C_{t} depends on a1 or a2"
            )));
        }
        let a_side = side_coefficient(k, t, a(2), &a1a)?;
        let b_side = side_coefficient(k, t, a(1), &Monomial::one())?;
        if !a_side.equal_as_rational(&c) || !b_side.equal_as_rational(&c) {
            return Err(Error::AsymmetryDetected(format!(
                "partial-fraction sides disagree for T = {t:b}"
            )));
        }
        out.push(c);
    }
    Ok(out)
}

/// One job of the `G_k` reduction: the constant term of `C_i C_j` over `a_3..a_k`.
pub fn sprime_job(cs: &[EllRational], i: usize, j: usize, k: usize) -> Result<EllRational> {
    let vars: Vec<VarId> = (3..=k).map(a).collect();
    let f = cs[i].mul(&cs[j]);
    ct_iter(&f, &vars, &SeriesOrder::standard(), None)
}

/// `G_k(q) = Σ_i CT(C_i^2) + 2 Σ_{i<j} CT(C_i C_j)`, jobs evaluated in parallel and
/// summed in job order.
pub fn sprime_g(k: usize) -> Result<EllRational> {
    let gi = build_sprime(k, false)?;
    let cs = ct_coefficients(&gi)?;
    let jobs: Vec<(usize, usize)> = (0..cs.len())
        .flat_map(|i| (i..cs.len()).map(move |j| (i, j)))
        .collect();
    let parts: Vec<Result<EllRational>> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let v = sprime_job(&cs, i, j, k)?;
            Ok(if i == j {
                v
            } else {
                v.scale(&BigRat::from_int(2))
            })
        })
        .collect();
    let parts: Vec<EllRational> = parts.into_iter().collect::<Result<_>>()?;
    Ok(EllRational::sum(parts.iter()))
}

/// `W_k(q)` as the constant term over `a_1..a_k` of the invariant-theory integrand.
pub fn sprime_w(k: usize) -> Result<EllRational> {
    let gi = build_sprime(k, true)?;
    let order = SeriesOrder::standard();
    if k == 2 {
        return ct_iter(&gi.f, &gi.vars(), &order, None);
    }
    // Eliminate a_1 first: every factor pair contains it once with opposite signs.
    // The summands are kept apart; combining them over one denominator is far larger
    // than extracting the remaining variables from each.
    let rest: Vec<VarId> = (2..=k).map(a).collect();
    let first = ct_exact_terms(&gi.f, a(1), &order)?;
    let parts: Vec<Result<Vec<EllRational>>> = first
        .par_iter()
        .map(|t| ct_iter_terms(t, &rest, &order, None))
        .collect();
    let mut all = Vec::new();
    for p in parts {
        all.extend(p?);
    }
    Ok(EllRational::sum(all.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::VarTable;

    fn parse(s: &str) -> EllRational {
        EllRational::parse(s, VarTable::standard()).unwrap()
    }

    #[test]
    fn k3_integrand_and_coefficients() {
        let gi = build_sprime(3, false).unwrap();
        let want = parse("1/(1-q*a1)(1-q/a1)(1-q*a1*a2)(1-q/a1/a2)(1-q*a1*a3)(1-q/a1/a3)(1-q*a1*a2*a3)(1-q/a1/a2/a3)");
        assert!(gi.f.equal_as_rational(&want), "{}", gi.f);
        assert_eq!(gi.pair_count(), 4);
        let cs = ct_coefficients(&gi).unwrap();
        assert!(cs[0].equal_as_rational(&parse("1/(1-q^2)(1-a3)(1-q^2/a3)")));
        assert!(cs[1].equal_as_rational(&parse("-a3/(1-a3)(1-q^2*a3)(1-q^2)")));
    }

    #[test]
    fn small_series() {
        assert!(sprime_g(2)
            .unwrap()
            .equal_as_rational(&parse("1/(1-q^2)^2")));
        assert!(sprime_g(3)
            .unwrap()
            .equal_as_rational(&parse("(1+q^4)/(1-q^2)^4(1-q^4)")));
        assert!(sprime_w(3).unwrap().equal_as_rational(&parse("1/(1-q^4)")));
        let w3 = build_sprime(3, true).unwrap();
        let num = parse("1-1/a1^2/a2/a3")
            .num()
            .mul(parse("1-1/a2").num())
            .mul(parse("1-1/a3").num());
        assert_eq!(w3.f.num(), &num);
    }
}
