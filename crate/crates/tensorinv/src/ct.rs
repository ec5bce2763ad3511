//! Constant-term extraction.
//!
//! [`ct_exact`] is an exact partial-fraction engine for Elliott rational functions.
//! For one variable `v` it orients every `v`-factor so that its monomial is SMALL,
//! splits the factors into contributing ones (positive power of `v`) and dually
//! contributing ones (negative power), and returns
//!
//! `CT_v f = L(0) + Σ_i A_i(0)`
//!
//! where `L` is the polynomial part of `f` in `v` and `A_i` is the partial-fraction
//! numerator of the i-th contributing group. `L(0)` is the `v^0` coefficient of the
//! expansion of `f` at `v = ∞`; `A_i` is computed in the quotient ring
//! `K[v] / (1 - α v^e)^r`, where every other binomial factor is invertible with an
//! inverse that is again Elliott: `(1 - x)^{-1} = (1 + x + ... + x^{n-1}) / (1 - x^n)`
//! and `x^n` is free of `v` for a suitable `n`.
//!
//! [`ct_series_oracle`] expands the input as a truncated series in a grading variable
//! and reads off the constant term directly; it is the independent check.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::ellrat::{BinFactor, EllRational, SeriesOrder};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial, VarId};
use crate::rat::BigRat;

/// A denominator factor `(1 - c*u*v^e)^r` with `u` free of `v` and `e != 0`.
#[derive(Clone, Debug)]
struct VFactor {
    c: BigRat,
    u: Monomial,
    e: i32,
    r: u32,
}

impl VFactor {
    fn flip(&self) -> VFactor {
        VFactor {
            c: self.c.clone(),
            u: self.u.clone(),
            e: -self.e,
            r: self.r,
        }
    }
}

/// The integrand split with respect to `v`.
struct Split {
    outer: Vec<BinFactor>,
    num: LaurentPoly,
    vf: Vec<VFactor>,
}

fn split(f: &EllRational, v: VarId, order: &SeriesOrder) -> Result<Split> {
    let mut num = f.num().clone();
    let mut outer = Vec::new();
    let mut vf = Vec::new();
    for fac in f.den() {
        if fac.mono.is_one() {
            return Err(Error::PoleOnBoundary(format!("{fac:?}")));
        }
        if !fac.mono.contains(v) {
            outer.push(fac.clone());
            continue;
        }
        let (c, m) = match order.is_small(&fac.mono) {
            Some(true) => (fac.coeff.clone(), fac.mono.clone()),
            _ => {
                let r = fac.mult as i32;
                num = num.mul_term(&(-&fac.coeff).pow(-r), &fac.mono.pow(-r));
                (fac.coeff.recip(), fac.mono.inv())
            }
        };
        let (e, u) = m.split(v);
        vf.push(VFactor {
            c,
            u,
            e,
            r: fac.mult,
        });
    }
    let (num, vf) = merge_common_roots(num, vf, v);
    Ok(Split { outer, num, vf })
}

/// `α^n` for the factor `1 - c u v^e`, as `(c^n, u^n)`.
fn alpha_pow(f: &VFactor, n: i32) -> (BigRat, Monomial) {
    (f.c.pow(n), f.u.pow(n))
}

/// Rewrites factors whose roots in `v` may coincide as powers of one binomial.
///
/// Two factors `1 - α v^e` and `1 - β v^f` of the same sign can only share a root when
/// `α^{L/e} = β^{L/f}` with `L = lcm(e, f)`. Such a class is lifted to
/// `(1 - α^{L/e} v^{L})` using `1/(1 - y) = (1 + y + ... + y^{m-1}) / (1 - y^m)`, which
/// leaves distinct classes with disjoint roots.
fn merge_common_roots(
    mut num: LaurentPoly,
    vf: Vec<VFactor>,
    v: VarId,
) -> (LaurentPoly, Vec<VFactor>) {
    let n = vf.len();
    let mut class: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while c[i] != i {
            c[i] = c[c[i]];
            i = c[i];
        }
        i
    }
    let mut any = false;
    for i in 0..n {
        for j in i + 1..n {
            if (vf[i].e > 0) != (vf[j].e > 0) {
                continue;
            }
            let (ei, ej) = (vf[i].e.abs(), vf[j].e.abs());
            let l = ei / crate::laurent::gcd(ei, ej) * ej;
            if alpha_pow(&vf[i], l / ei) == alpha_pow(&vf[j], l / ej) {
                let (a, b) = (find(&mut class, i), find(&mut class, j));
                if a != b {
                    class[a] = b;
                    any = true;
                }
            }
        }
    }
    if !any {
        return (num, vf);
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        let r = find(&mut class, i);
        let g = *root_of.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    let mut out = Vec::with_capacity(groups.len());
    for g in groups {
        if g.len() == 1 {
            out.push(vf[g[0]].clone());
            continue;
        }
        let l = g.iter().fold(1, |acc, &i| {
            let e = vf[i].e.abs();
            acc / crate::laurent::gcd(acc, e) * e
        });
        let sign = vf[g[0]].e.signum();
        let mut r = 0;
        for &i in &g {
            let f = &vf[i];
            let m = l / f.e.abs();
            if m > 1 {
                let y = f.u.mul(&Monomial::var(v, f.e));
                let cof = LaurentPoly::from_terms((0..m).map(|j| (y.pow(j), f.c.pow(j))));
                num = num.mul(&cof.pow(f.r));
            }
            r += f.r;
        }
        let (c, u) = alpha_pow(&vf[g[0]], l / vf[g[0]].e.abs());
        out.push(VFactor {
            c,
            u,
            e: sign * l,
            r,
        });
    }
    (num, out)
}

/// `v^0` coefficient of the expansion at `v = ∞` (the constant term of the polynomial
/// part), with `vf` oriented so that positive `e` marks the contributing factors.
fn polynomial_part_at_zero(num: &LaurentPoly, vf: &[VFactor], v: VarId) -> LaurentPoly {
    let big_e: i64 = vf
        .iter()
        .filter(|f| f.e > 0)
        .map(|f| f.e as i64 * f.r as i64)
        .sum();
    let (_, hi) = num.degree_range(v);
    let depth = hi as i64 - big_e;
    if depth < 0 || num.is_zero() {
        return LaurentPoly::zero();
    }
    let depth = depth as usize;
    // Power series in y = 1/v of the factors rewritten at infinity.
    let mut s: Vec<LaurentPoly> = vec![LaurentPoly::zero(); depth + 1];
    s[0] = LaurentPoly::one();
    let mut prefactor = LaurentPoly::one();
    for f in vf {
        let (coef, mono, step) = if f.e > 0 {
            // (1 - α v^e)^{-1} = (-α)^{-1} v^{-e} (1 - α^{-1} y^e)^{-1}
            let r = f.r as i32;
            prefactor = prefactor.mul_term(&(-&f.c).pow(-r), &f.u.pow(-r));
            (f.c.recip(), f.u.inv(), f.e as usize)
        } else {
            (f.c.clone(), f.u.clone(), (-f.e) as usize)
        };
        for _ in 0..f.r {
            for n in step..=depth {
                let add = s[n - step].mul_term(&coef, &mono);
                s[n] = s[n].add(&add);
            }
        }
    }
    let mut total = LaurentPoly::zero();
    for (n, coeff) in num.by_powers(v) {
        let idx = n as i64 - big_e;
        if idx >= 0 && (idx as usize) <= depth {
            total = total.add(&coeff.mul(&s[idx as usize]));
        }
    }
    total.mul(&prefactor)
}

/// Arithmetic in `K[v] / (1 - α v^e)^r` with elements stored as coefficient vectors of
/// length `n = e*r` over a common Elliott denominator.
struct QuotRing {
    v: VarId,
    e: i32,
    r: u32,
    n: usize,
    alpha_c: BigRat,
    alpha_u: Monomial,
    /// Coefficients of `(1 - α v^e)^r` at `v^{e k}`, `k = 0..=r`.
    pr: Vec<(BigRat, Monomial)>,
}

#[derive(Clone)]
struct RingElem {
    coeffs: Vec<LaurentPoly>,
    den: Vec<BinFactor>,
}

fn binom(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

impl QuotRing {
    fn new(v: VarId, f: &VFactor) -> Self {
        assert!(f.e > 0);
        let pr = (0..=f.r)
            .map(|k| {
                let c = &BigRat::from_int(binom(f.r, k)) * &(-&f.c).pow(k as i32);
                (c, f.u.pow(k as i32))
            })
            .collect();
        QuotRing {
            v,
            e: f.e,
            r: f.r,
            n: (f.e as usize) * (f.r as usize),
            alpha_c: f.c.clone(),
            alpha_u: f.u.clone(),
            pr,
        }
    }

    fn one(&self) -> RingElem {
        let mut coeffs = vec![LaurentPoly::zero(); self.n];
        coeffs[0] = LaurentPoly::one();
        RingElem {
            coeffs,
            den: Vec::new(),
        }
    }

    /// Reduces a map `power -> coefficient` to the canonical representative.
    fn reduce(&self, mut by_pow: HashMap<i32, LaurentPoly>) -> Vec<LaurentPoly> {
        let n = self.n as i32;
        let mut out = vec![LaurentPoly::zero(); self.n];
        if self.r == 1 {
            // v^e = α^{-1}: v^m = α^{-floor(m/e)} v^{m mod e}
            for (m, c) in by_pow {
                let qq = m.div_euclid(self.e);
                let rem = m.rem_euclid(self.e) as usize;
                let term = c.mul_term(&self.alpha_c.pow(-qq), &self.alpha_u.pow(-qq));
                out[rem] = out[rem].add(&term);
            }
            return out;
        }
        // Negative powers: 1 = -Σ_{k>=1} pr_k v^{e k} / pr_0 with pr_0 = 1.
        loop {
            let lowest = by_pow.keys().copied().filter(|&m| m < 0).min();
            let Some(m) = lowest else { break };
            let c = by_pow.remove(&m).unwrap();
            for k in 1..=self.r as usize {
                let (pc, pm) = &self.pr[k];
                let t = c.mul_term(&(-pc), pm);
                let key = m + self.e * k as i32;
                let entry = by_pow.entry(key).or_insert_with(LaurentPoly::zero);
                *entry = entry.add(&t);
            }
        }
        // High powers: v^{er} = -Σ_{k<r} pr_k v^{ek} / pr_r.
        let (lc, lm) = &self.pr[self.r as usize];
        let lc_inv = lc.recip();
        let lm_inv = lm.inv();
        loop {
            let highest = by_pow.keys().copied().filter(|&m| m >= n).max();
            let Some(m) = highest else { break };
            let c = by_pow.remove(&m).unwrap().mul_term(&(-&lc_inv), &lm_inv);
            for k in 0..self.r as usize {
                let (pc, pm) = &self.pr[k];
                let t = c.mul_term(pc, pm);
                let key = m - n + self.e * k as i32;
                let entry = by_pow.entry(key).or_insert_with(LaurentPoly::zero);
                *entry = entry.add(&t);
            }
        }
        for (m, c) in by_pow {
            out[m as usize] = out[m as usize].add(&c);
        }
        out
    }

    fn embed(&self, p: &LaurentPoly) -> RingElem {
        let mut map: HashMap<i32, LaurentPoly> = HashMap::new();
        for (m, c) in p.by_powers(self.v) {
            map.insert(m, c);
        }
        RingElem {
            coeffs: self.reduce(map),
            den: Vec::new(),
        }
    }

    fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut map: HashMap<i32, LaurentPoly> = HashMap::new();
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let entry = map.entry((i + j) as i32).or_insert_with(LaurentPoly::zero);
                *entry = entry.add(&ca.mul(cb));
            }
        }
        let mut den = a.den.clone();
        den.extend(b.den.iter().cloned());
        RingElem {
            coeffs: self.reduce(map),
            den,
        }
    }

    fn pow(&self, a: &RingElem, k: u32) -> RingElem {
        let mut result = self.one();
        for _ in 0..k {
            result = self.mul(&result, a);
        }
        result
    }

    /// Inverse of `(1 - c*u*v^f)` as a ring element.
    fn inverse_of(&self, g: &VFactor) -> Result<RingElem> {
        let f = g.e;
        let gg = crate::laurent::gcd(f.abs(), self.e);
        let nn = self.e / gg;
        let s = f / gg;
        // x = c u v^f; S = 1 + x + ... + x^{nn-1}
        let mut smap: HashMap<i32, LaurentPoly> = HashMap::new();
        for t in 0..nn {
            let term = LaurentPoly::term(g.c.pow(t), g.u.pow(t));
            let entry = smap.entry(f * t).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(&term);
        }
        let s_elem = RingElem {
            coeffs: self.reduce(smap),
            den: Vec::new(),
        };
        // ε0 = c^nn u^nn α^{-s}
        let eps_c = &g.c.pow(nn) * &self.alpha_c.pow(-s);
        let eps_m = g.u.pow(nn).mul(&self.alpha_u.pow(-s));
        let delta = BinFactor::new(eps_c.clone(), eps_m.clone(), 1);
        if eps_m.is_one() && eps_c.is_one() {
            return Err(Error::NonCoprimeDenominators(format!(
                "factor (1-{}*{:?}*v^{}) shares a root with (1-{}*{:?}*v^{})",
                g.c, g.u, g.e, self.alpha_c, self.alpha_u, self.e
            )));
        }
        if self.r == 1 {
            let mut inv = s_elem;
            inv.den.push(delta);
            return Ok(inv);
        }
        // 1 - x^nn = δ - h with h = x^nn - ε0 nilpotent; (δ - h)^{-1} = Σ_{j<r} h^j δ^{r-1-j} / δ^r
        let mut xmap: HashMap<i32, LaurentPoly> = HashMap::new();
        xmap.insert(f * nn, LaurentPoly::term(g.c.pow(nn), g.u.pow(nn)));
        let mut h = RingElem {
            coeffs: self.reduce(xmap),
            den: Vec::new(),
        };
        h.coeffs[0] = h.coeffs[0].sub(&LaurentPoly::term(eps_c.clone(), eps_m.clone()));
        let delta_poly = delta.base_poly();
        let mut acc = vec![LaurentPoly::zero(); self.n];
        let mut hpow = self.one();
        for j in 0..self.r {
            let dpow = delta_poly.pow(self.r - 1 - j);
            for (k, c) in hpow.coeffs.iter().enumerate() {
                acc[k] = acc[k].add(&c.mul(&dpow));
            }
            hpow = self.mul(&hpow, &h);
        }
        let series = RingElem {
            coeffs: acc,
            den: vec![BinFactor::new(eps_c, eps_m, self.r)],
        };
        Ok(self.mul(&s_elem, &series))
    }
}

/// Partial-fraction numerator at `v^0` of the contributing group `i`.
fn group_contribution(
    num: &LaurentPoly,
    vf: &[VFactor],
    i: usize,
    v: VarId,
) -> Result<EllRational> {
    let target = &vf[i];
    if target.e == 1 && target.r == 1 {
        // Simple pole: evaluate f * (1 - α v) at v = α^{-1}.
        let inv_c = target.c.recip();
        let inv_u = target.u.inv();
        let numv = num.subst(v, &inv_c, &inv_u);
        let mut factors = Vec::with_capacity(vf.len());
        for (j, g) in vf.iter().enumerate() {
            if j == i {
                continue;
            }
            let c = &g.c * &inv_c.pow(g.e);
            let m = g.u.mul(&inv_u.pow(g.e));
            if m.is_one() && c.is_one() {
                return Err(Error::NonCoprimeDenominators(format!(
                    "{:?} and {:?}",
                    g, target
                )));
            }
            factors.push(BinFactor::new(c, m, g.r));
        }
        return Ok(EllRational::new(numv, factors)?.normalize());
    }
    let ring = QuotRing::new(v, target);
    let mut elem = ring.embed(num);
    for (j, g) in vf.iter().enumerate() {
        if j == i {
            continue;
        }
        let inv = ring.inverse_of(g)?;
        let inv = if g.r == 1 { inv } else { ring.pow(&inv, g.r) };
        elem = ring.mul(&elem, &inv);
    }
    let c0 = elem.coeffs.swap_remove(0);
    Ok(EllRational::new(c0, elem.den)?.normalize())
}

/// Constant term in `v` returned as a list of Elliott summands (not combined).
pub fn ct_exact_terms(f: &EllRational, v: VarId, order: &SeriesOrder) -> Result<Vec<EllRational>> {
    if f.is_zero() {
        return Ok(Vec::new());
    }
    if !f.contains(v) {
        return Ok(vec![f.clone()]);
    }
    let g = f.exponent_gcd(v);
    let deflated;
    let f = if g > 1 {
        deflated = f.deflate(v, g)?;
        &deflated
    } else {
        f
    };
    let Split {
        outer,
        mut num,
        mut vf,
    } = split(f, v, order)?;
    let weight = |pos: bool| -> u64 {
        vf.iter()
            .filter(|x| (x.e > 0) == pos)
            .map(|x| (x.e.unsigned_abs() as u64) * x.r as u64)
            .sum()
    };
    let (wc, wd) = (weight(true), weight(false));
    let dual_has_fewer_groups = {
        let nc = vf.iter().filter(|x| x.e > 0).count();
        let nd = vf.len() - nc;
        nd < nc || (nd == nc && wd < wc)
    };
    if dual_has_fewer_groups {
        // CT_v f(v) = CT_v f(1/v): evaluate through the dual side.
        num = num.subst_map(&|w| {
            if w == v {
                Some((BigRat::one(), Monomial::var(v, -1)))
            } else {
                None
            }
        });
        vf = vf.iter().map(VFactor::flip).collect();
    }
    let mut terms = Vec::new();
    let l0 = polynomial_part_at_zero(&num, &vf, v);
    if !l0.is_zero() {
        terms.push(EllRational::from_poly(l0));
    }
    for i in 0..vf.len() {
        if vf[i].e > 0 {
            let t = group_contribution(&num, &vf, i, v)?;
            if !t.is_zero() {
                terms.push(t);
            }
        }
    }
    if outer.is_empty() {
        return Ok(terms);
    }
    let outer_ell = EllRational::new(LaurentPoly::one(), outer)?;
    Ok(terms.into_iter().map(|t| t.mul(&outer_ell)).collect())
}

/// Constant term of `f` in `v` under the iterated-Laurent expansion fixed by `order`.
pub fn ct_exact(f: &EllRational, v: VarId, order: &SeriesOrder) -> Result<EllRational> {
    let terms = ct_exact_terms(f, v, order)?;
    Ok(EllRational::sum(terms.iter()))
}

/// Elimination plan for [`ct_iter`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CtPlan {
    /// Variables in elimination order.
    pub order: Vec<VarId>,
    /// Free-form notes (factor counts observed when the plan was made).
    pub notes: Vec<String>,
}

impl CtPlan {
    /// A fixed elimination order; fails on duplicates.
    pub fn fixed(order: Vec<VarId>) -> Result<Self> {
        let mut seen = order.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != order.len() {
            return Err(Error::PreconditionViolated(
                "duplicate variable in plan".into(),
            ));
        }
        Ok(CtPlan {
            order,
            notes: Vec::new(),
        })
    }

    /// The plan the automatic rule would choose for `f`: repeatedly the variable that
    /// occurs in the fewest denominator factors, ties broken by rank.
    pub fn auto(f: &EllRational, vars: &[VarId], order: &SeriesOrder) -> Self {
        let mut left: Vec<VarId> = vars.to_vec();
        let mut out = Vec::new();
        let mut notes = Vec::new();
        while !left.is_empty() {
            let v = pick_var(f, &left, order);
            notes.push(format!("var {v}: {} factors", count_factors(f, v)));
            out.push(v);
            left.retain(|&w| w != v);
        }
        CtPlan { order: out, notes }
    }
}

fn count_factors(f: &EllRational, v: VarId) -> usize {
    f.den().iter().filter(|fac| fac.mono.contains(v)).count()
}

fn pick_var(f: &EllRational, vars: &[VarId], order: &SeriesOrder) -> VarId {
    *vars
        .iter()
        .min_by_key(|&&v| (count_factors(f, v), order.rank(v)))
        .expect("nonempty variable list")
}

/// Work item of the iterated extraction: a summand and the variables still to remove.
struct Item {
    f: EllRational,
    left: Vec<VarId>,
}

/// Iterated constant term over `vars`, returned as summands free of those variables.
///
/// With `plan = None` every summand independently eliminates, at each step, the
/// variable occurring in the fewest of its denominator factors (ties by rank).
/// Summands sharing the remaining variables and the denominator are merged after each
/// round.
pub fn ct_iter_terms(
    f: &EllRational,
    vars: &[VarId],
    order: &SeriesOrder,
    plan: Option<&CtPlan>,
) -> Result<Vec<EllRational>> {
    if let Some(p) = plan {
        let mut a: Vec<VarId> = p.order.clone();
        let mut b: Vec<VarId> = vars.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(Error::PreconditionViolated(
                "plan does not match the variable list".into(),
            ));
        }
    }
    let mut done: Vec<EllRational> = Vec::new();
    let mut items = vec![Item {
        f: f.clone(),
        left: vars.to_vec(),
    }];
    while !items.is_empty() {
        let next: Vec<Result<Vec<Item>>> = items
            .into_par_iter()
            .map(|it| {
                let live: Vec<VarId> = it
                    .left
                    .iter()
                    .copied()
                    .filter(|&w| it.f.contains(w))
                    .collect();
                if live.is_empty() {
                    return Ok(vec![Item {
                        f: it.f,
                        left: Vec::new(),
                    }]);
                }
                let v = match plan {
                    Some(p) => *p
                        .order
                        .iter()
                        .find(|w| live.contains(w))
                        .expect("plan covers vars"),
                    None => pick_var(&it.f, &live, order),
                };
                let rest: Vec<VarId> = live.iter().copied().filter(|&w| w != v).collect();
                let ts = ct_exact_terms(&it.f, v, order)?;
                Ok(ts
                    .into_iter()
                    .map(|t| Item {
                        f: t,
                        left: rest.clone(),
                    })
                    .collect())
            })
            .collect();
        let mut groups: HashMap<(Vec<VarId>, Vec<BinFactor>), LaurentPoly> = HashMap::new();
        let mut keys: Vec<(Vec<VarId>, Vec<BinFactor>)> = Vec::new();
        for r in next {
            for it in r? {
                if it.f.is_zero() {
                    continue;
                }
                if it.left.is_empty() {
                    done.push(it.f);
                    continue;
                }
                let key = (it.left.clone(), it.f.den().to_vec());
                match groups.get_mut(&key) {
                    Some(num) => *num = num.add(it.f.num()),
                    None => {
                        keys.push(key.clone());
                        groups.insert(key, it.f.num().clone());
                    }
                }
            }
        }
        items = keys
            .into_iter()
            .filter_map(|key| {
                let num = groups.remove(&key).expect("key present");
                if num.is_zero() {
                    return None;
                }
                let f = EllRational::new(num, key.1)
                    .expect("canonical factors")
                    .normalize();
                Some(Item { f, left: key.0 })
            })
            .collect();
    }
    Ok(done)
}

/// Iterated constant term over `vars`, combined into one normalized Elliott rational.
pub fn ct_iter(
    f: &EllRational,
    vars: &[VarId],
    order: &SeriesOrder,
    plan: Option<&CtPlan>,
) -> Result<EllRational> {
    let terms = ct_iter_terms(f, vars, order, plan)?;
    Ok(EllRational::sum(terms.iter()))
}

/// Truncated-series constant term: expands `f` in powers of `grading` up to degree `d`
/// and returns the coefficients of `grading^0..=grading^d` of the part free of every
/// variable in `elim`.
pub fn ct_series_oracle(
    f: &EllRational,
    elim: &[VarId],
    grading: VarId,
    d: usize,
) -> Result<Vec<BigRat>> {
    let d_i = d as i32;
    for fac in f.den() {
        if fac.mono.exp(grading) <= 0 {
            return Err(Error::PreconditionViolated(format!(
                "factor {fac:?} has nonpositive degree in the grading variable"
            )));
        }
    }
    // Bound on how far each eliminated exponent can move per unit of grading degree.
    let rates: Vec<Vec<f64>> = f
        .den()
        .iter()
        .map(|fac| {
            let g = fac.mono.exp(grading) as f64;
            elim.iter()
                .map(|&w| fac.mono.exp(w).abs() as f64 / g)
                .collect()
        })
        .collect();
    let nfac = f.den().len();
    // suffix_rate[t][k]: max rate over factors t.. for variable k
    let mut suffix_rate = vec![vec![0f64; elim.len()]; nfac + 1];
    for t in (0..nfac).rev() {
        for k in 0..elim.len() {
            suffix_rate[t][k] = suffix_rate[t + 1][k].max(rates[t][k]);
        }
    }
    let keep = |m: &Monomial, t: usize| -> bool {
        let qd = m.exp(grading);
        if qd > d_i {
            return false;
        }
        let budget = (d_i - qd) as f64;
        elim.iter()
            .enumerate()
            .all(|(k, &w)| (m.exp(w).abs() as f64) <= budget * suffix_rate[t][k] + 1e-9)
    };
    let mut acc: HashMap<Monomial, BigRat> = HashMap::new();
    for (m, c) in f.num().terms() {
        if keep(m, 0) {
            acc.insert(m.clone(), c.clone());
        }
    }
    for (t, fac) in f.den().iter().enumerate() {
        let g = fac.mono.exp(grading);
        let nmax = (d_i / g) as u32;
        // (1 - c m)^{-r} = Σ_n C(n+r-1, r-1) c^n m^n
        let series: Vec<(Monomial, BigRat)> = (0..=nmax)
            .map(|n| {
                let bin = binom(n + fac.mult - 1, fac.mult - 1);
                (
                    fac.mono.pow(n as i32),
                    &BigRat::from_int(bin) * &fac.coeff.pow(n as i32),
                )
            })
            .collect();
        let mut next: HashMap<Monomial, BigRat> = HashMap::new();
        for (m, c) in &acc {
            for (sm, sc) in &series {
                let nm = m.mul(sm);
                if nm.exp(grading) > d_i {
                    break;
                }
                if !keep(&nm, t + 1) {
                    continue;
                }
                let nc = c * sc;
                match next.get_mut(&nm) {
                    Some(e) => *e = &*e + &nc,
                    None => {
                        next.insert(nm, nc);
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    let mut out = vec![BigRat::zero(); d + 1];
    for (m, c) in acc {
        if elim.iter().any(|&w| m.contains(w)) {
            continue;
        }
        let (e, rest) = m.split(grading);
        if !rest.is_one() {
            return Err(Error::PreconditionViolated(format!(
                "constant term still depends on {rest:?}; only the grading variable may remain"
            )));
        }
        if e >= 0 && e <= d_i {
            out[e as usize] = &out[e as usize] + &c;
        }
    }
    Ok(out)
}
