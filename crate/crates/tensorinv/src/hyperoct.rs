//! The hyperoctahedral group `B_k` acting on hypercube vertex indices and variables.
//!
//! Summands of the asymmetric part are labelled by supports. Their orbits under `B_k`
//! reduce `G_k(q)` and `W_k(q)` to one constant term per orbit.
//!
//! A group element `(α, η)` sends the digit vector `ε` of `i - 1` to
//! `(ε_{α_1} + η_1, ..., ε_{α_k} + η_k) mod 2`. Products compose as maps:
//! `act(g·h, i) = act(g, act(h, i))`. On the `a` variables the element acts by the
//! signed permutation that carries `x_i A_i` to `x_{σ(i)} A_{σ(i)}`.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::ct::ct_iter;
use crate::divdiff::{double_and_specialize, x_index};
use crate::ellrat::{BinFactor, EllRational, SeriesOrder};
use crate::error::{Error, Result};
use crate::laurent::{a, x, LaurentPoly, Monomial, VarId, VarTable, Q};
use crate::rat::BigRat;
use crate::system::{a_vars, partner, vertex_monomial};

/// An element `(α, η)` of `B_k`; `alpha` holds a 1-based permutation of `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    /// The permutation `α_1..α_k` (1-based values).
    pub alpha: Vec<u8>,
    /// The sign flips `η_1..η_k` (0 or 1).
    pub eta: Vec<u8>,
}

impl GroupElement {
    /// Validating constructor.
    pub fn new(alpha: Vec<u8>, eta: Vec<u8>) -> Result<Self> {
        let k = alpha.len();
        let mut seen = vec![false; k];
        for &v in &alpha {
            let v = v as usize;
            if v == 0 || v > k || seen[v - 1] {
                return Err(Error::PreconditionViolated(
                    "alpha is not a permutation".into(),
                ));
            }
            seen[v - 1] = true;
        }
        if eta.len() != k || eta.iter().any(|&e| e > 1) {
            return Err(Error::PreconditionViolated(
                "eta must be a binary vector of length k".into(),
            ));
        }
        Ok(GroupElement { alpha, eta })
    }

    /// The identity of `B_k`.
    pub fn identity(k: usize) -> Self {
        GroupElement {
            alpha: (1..=k as u8).collect(),
            eta: vec![0; k],
        }
    }

    /// Rank `k` of the group the element belongs to.
    pub fn k(&self) -> usize {
        self.alpha.len()
    }

    /// All `2^k k!` elements, in a fixed order.
    pub fn all(k: usize) -> Vec<GroupElement> {
        let mut perms = Vec::new();
        permutations(&mut (1..=k as u8).collect::<Vec<_>>(), 0, &mut perms);
        perms.sort();
        let mut out = Vec::with_capacity(perms.len() << k);
        for p in &perms {
            for mask in 0..(1usize << k) {
                let eta = (0..k).map(|j| ((mask >> (k - 1 - j)) & 1) as u8).collect();
                out.push(GroupElement {
                    alpha: p.clone(),
                    eta,
                });
            }
        }
        out
    }

    /// The elements of `B_{k-1}` embedded in `B_k` as the stabilizer of the first digit.
    pub fn first_digit_stabilizer(k: usize) -> Vec<GroupElement> {
        GroupElement::all(k - 1)
            .into_iter()
            .map(|g| {
                let mut alpha = vec![1u8];
                alpha.extend(g.alpha.iter().map(|v| v + 1));
                let mut eta = vec![0u8];
                eta.extend(g.eta);
                GroupElement { alpha, eta }
            })
            .collect()
    }

    /// The product `self · other`, acting as `self` after `other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let alpha = self
            .alpha
            .iter()
            .map(|&l| other.alpha[l as usize - 1])
            .collect();
        let eta = self
            .alpha
            .iter()
            .zip(&self.eta)
            .map(|(&l, &e)| other.eta[l as usize - 1] ^ e)
            .collect();
        GroupElement { alpha, eta }
    }

    /// Applies the element to a digit vector.
    pub fn act_digits(&self, eps: &[u8]) -> Vec<u8> {
        self.alpha
            .iter()
            .zip(&self.eta)
            .map(|(&l, &e)| eps[l as usize - 1] ^ e)
            .collect()
    }

    /// The induced permutation `σ(g)` of `1..=2^k`.
    pub fn sigma(&self) -> IndexPermutation {
        let k = self.k();
        IndexPermutation {
            sigma: (1..=(1usize << k)).map(|i| act_index(self, i, k)).collect(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let al: Vec<String> = self.alpha.iter().map(|v| v.to_string()).collect();
        let et: Vec<String> = self.eta.iter().map(|v| v.to_string()).collect();
        write!(f, "(({}),({}))", al.join(","), et.join(","))
    }
}

fn permutations(v: &mut Vec<u8>, start: usize, out: &mut Vec<Vec<u8>>) {
    if start == v.len() {
        out.push(v.clone());
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations(v, start + 1, out);
        v.swap(start, i);
    }
}

/// A permutation of `1..=2^k` induced by a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexPermutation {
    /// `sigma[i-1] = σ(i)`, 1-based.
    pub sigma: Vec<usize>,
}

impl IndexPermutation {
    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.sigma[i - 1]
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &IndexPermutation) -> IndexPermutation {
        IndexPermutation {
            sigma: other.sigma.iter().map(|&j| self.sigma[j - 1]).collect(),
        }
    }

    /// True when `σ(i') = σ(i)'` for every `i`, with `i' = n + 1 - i`.
    pub fn respects_pairing(&self) -> bool {
        let n = self.sigma.len();
        (1..=n).all(|i| self.apply(n + 1 - i) == n + 1 - self.apply(i))
    }
}

/// Image of the 1-based index `i` under `g`.
pub fn act_index(g: &GroupElement, i: usize, k: usize) -> usize {
    debug_assert_eq!(g.k(), k);
    let eps: Vec<u8> = (0..k)
        .map(|j| (((i - 1) >> (k - 1 - j)) & 1) as u8)
        .collect();
    let img = g.act_digits(&eps);
    1 + img.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// Applies `g` to a function of `x_1..x_{2^k}` and `a_1..a_k`: `x_i -> x_{σ(i)}` and the
/// signed permutation of the `a` variables for which `A_i -> A_{σ(i)}`.
pub fn act_vars(g: &GroupElement, f: &EllRational, k: usize) -> Result<EllRational> {
    let n = 1usize << k;
    let sigma = g.sigma();
    // a_j -> a_l^{1-2η_l} with α_l = j.
    let mut a_img = vec![(0usize, 0u8); k];
    for (l, &j) in g.alpha.iter().enumerate() {
        a_img[j as usize - 1] = (l + 1, g.eta[l]);
    }
    let a_ids = a_vars(k);
    f.subst_map(&|w| {
        if let Some(i) = x_index(w).filter(|&i| i <= n) {
            return Some((BigRat::one(), Monomial::var(x(sigma.apply(i)), 1)));
        }
        let j = a_ids.iter().position(|&v| v == w)?;
        let (l, e) = a_img[j];
        Some((BigRat::one(), Monomial::var(a(l), 1 - 2 * e as i32)))
    })
}

/// Which decomposition of the complete generating function a support belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    /// Subsets of the first half of the indices, acted on by `B_{k-1}`.
    Half,
    /// Pair-free subsets of `1..=2^k`, acted on by `B_k`.
    Full,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Half => "half",
            Model::Full => "full",
        })
    }
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half" => Ok(Model::Half),
            "full" => Ok(Model::Full),
            _ => Err(Error::Parse(format!("unknown model {s:?}"))),
        }
    }
}

/// A summand label. Bit `i - 1` of `mask` stands for index `i`.
///
/// In the half model the mask is a subset `K` of `1..=2^{k-1}`: indices in `K` carry the
/// factor `1/(1 - x_i A_i)`, and every other `i` of the first half carries
/// `x_{i'} A_{i'}/(1 - x_{i'} A_{i'})` for its partner. In the full model the mask is a
/// subset of `1..=2^k` containing no pair `{i, i'}`; each member carries
/// `x_i A_i/(1 - x_i A_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    /// Decomposition model.
    pub model: Model,
    /// Dimension of the hypercube.
    pub k: usize,
    /// Member bitmask.
    pub mask: u64,
}

impl Support {
    /// Validating constructor.
    pub fn new(model: Model, k: usize, mask: u64) -> Result<Self> {
        if !(1..=6).contains(&k) {
            return Err(Error::PreconditionViolated(format!("k = {k} out of range")));
        }
        let n = 1usize << k;
        let width = if model == Model::Half { n / 2 } else { n };
        if width < 64 && mask >> width != 0 {
            return Err(Error::PreconditionViolated(
                "mask has bits beyond the index range".into(),
            ));
        }
        if model == Model::Full {
            for i in 1..=n / 2 {
                if mask >> (i - 1) & 1 == 1 && mask >> (partner(i, k) - 1) & 1 == 1 {
                    return Err(Error::PreconditionViolated(format!(
                        "support contains the pair {i}, {}",
                        partner(i, k)
                    )));
                }
            }
        }
        Ok(Support { model, k, mask })
    }

    /// Member indices, increasing.
    pub fn members(&self) -> Vec<usize> {
        (1..=64)
            .filter(|&i| self.mask >> (i - 1) & 1 == 1)
            .collect()
    }

    /// Image under `g` (which must fix the first digit in the half model).
    pub fn act(&self, g: &GroupElement) -> Support {
        let mut mask = 0u64;
        for i in self.members() {
            mask |= 1 << (act_index(g, i, self.k) - 1);
        }
        Support { mask, ..*self }
    }

    /// The monomial `Π x_i` over the indices whose factor carries an `x` in its numerator
    /// (for the half model: the partners of the non-members).
    pub fn marked_monomial(&self) -> Monomial {
        let idx: Vec<usize> = match self.model {
            Model::Full => self.members(),
            Model::Half => (1..=(1usize << (self.k - 1)))
                .filter(|&i| self.mask >> (i - 1) & 1 == 0)
                .map(|i| partner(i, self.k))
                .collect(),
        };
        let pairs: Vec<(VarId, i32)> = idx.into_iter().map(|i| (x(i), 1)).collect();
        Monomial::from_pairs(&pairs)
    }
}

/// One orbit of supports.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRecord {
    /// Least mask in the orbit.
    pub canonical: Support,
    /// Orbit size.
    pub size: u64,
    /// Whether the summand constant term is nonzero, once computed.
    pub contributing: Option<bool>,
    /// The summand constant term, once computed.
    pub ct_value: Option<EllRational>,
}

/// The acting group of a model.
pub fn model_group(k: usize, model: Model) -> Vec<GroupElement> {
    match model {
        Model::Half => GroupElement::first_digit_stabilizer(k),
        Model::Full => GroupElement::all(k),
    }
}

/// Number of supports of a model.
pub fn support_count(k: usize, model: Model) -> u64 {
    let h = 1u32 << (k - 1);
    match model {
        Model::Half => 1u64 << h,
        Model::Full => 3u64.pow(h),
    }
}

fn support_rank(mask: u64, k: usize, model: Model) -> u64 {
    match model {
        Model::Half => mask,
        Model::Full => {
            let h = 1usize << (k - 1);
            let mut r = 0u64;
            for i in (1..=h).rev() {
                let d = if mask >> (i - 1) & 1 == 1 {
                    1
                } else if mask >> (partner(i, k) - 1) & 1 == 1 {
                    2
                } else {
                    0
                };
                r = r * 3 + d;
            }
            r
        }
    }
}

fn support_unrank(mut r: u64, k: usize, model: Model) -> u64 {
    match model {
        Model::Half => r,
        Model::Full => {
            let h = 1usize << (k - 1);
            let mut mask = 0u64;
            for i in 1..=h {
                match r % 3 {
                    1 => mask |= 1 << (i - 1),
                    2 => mask |= 1 << (partner(i, k) - 1),
                    _ => {}
                }
                r /= 3;
            }
            mask
        }
    }
}

fn image_mask(mask: u64, table: &[u8]) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << table[i];
        m &= m - 1;
    }
    out
}

/// All orbits of supports, sorted by canonical mask; `contributing` left undetermined.
pub fn enumerate_orbits(k: usize, model: Model) -> Result<Vec<OrbitRecord>> {
    if !(1..=5).contains(&k) {
        return Err(Error::PreconditionViolated(format!("k = {k} out of range")));
    }
    let group = model_group(k, model);
    let tables: Vec<Vec<u8>> = group
        .iter()
        .map(|g| g.sigma().sigma.iter().map(|&j| (j - 1) as u8).collect())
        .collect();
    let total = support_count(k, model);
    let mut seen = vec![0u64; total.div_ceil(64) as usize];
    let mut out = Vec::new();
    let mut orbit: Vec<u64> = Vec::with_capacity(group.len());
    for r in 0..total {
        if seen[(r / 64) as usize] >> (r % 64) & 1 == 1 {
            continue;
        }
        let mask = support_unrank(r, k, model);
        orbit.clear();
        orbit.extend(tables.iter().map(|t| image_mask(mask, t)));
        orbit.sort_unstable();
        orbit.dedup();
        for &m in &orbit {
            let rr = support_rank(m, k, model);
            seen[(rr / 64) as usize] |= 1 << (rr % 64);
        }
        out.push(OrbitRecord {
            canonical: Support {
                model,
                k,
                mask: orbit[0],
            },
            size: orbit.len() as u64,
            contributing: None,
            ct_value: None,
        });
    }
    out.sort_by_key(|o| o.canonical.mask);
    Ok(out)
}

/// The integrand of a support before the constant term is taken.
/// With `specialize` every `x_i` is replaced by `q`.
pub fn summand_integrand(s: &Support, specialize: bool) -> Result<EllRational> {
    let k = s.k;
    let h = 1usize << (k - 1);
    let xv = |i: usize| {
        if specialize {
            Monomial::var(Q, 1)
        } else {
            Monomial::var(x(i), 1)
        }
    };
    let mut num = Monomial::one();
    let mut factors = Vec::new();
    let mut marked = |i: usize, num: &mut Monomial| {
        let m = xv(i).mul(&vertex_monomial(i, k));
        *num = num.mul(&m);
        factors.push(BinFactor::simple(m));
    };
    match s.model {
        Model::Half => {
            let mut plain = Vec::new();
            for i in 1..=h {
                if s.mask >> (i - 1) & 1 == 1 {
                    plain.push(BinFactor::simple(xv(i).mul(&vertex_monomial(i, k))));
                } else {
                    marked(partner(i, k), &mut num);
                }
            }
            factors.extend(plain);
        }
        Model::Full => {
            for i in s.members() {
                marked(i, &mut num);
            }
        }
    }
    EllRational::new(LaurentPoly::mono(num), factors)
}

/// Constant term in `a_1..a_k` of the support's summand, as a function of the `x`
/// variables (or of `q` when `specialize` is set).
pub fn summand_ct(s: &Support, order: &SeriesOrder, specialize: bool) -> Result<EllRational> {
    let f = summand_integrand(s, specialize)?;
    ct_iter(&f, &a_vars(s.k), order, None)
}

/// As [`summand_ct`] with the invariant-theory weight `2^{-k} Π (1 - a_j^2)(1 - a_j^{-2})`.
pub fn summand_ct_sdd(s: &Support, order: &SeriesOrder, specialize: bool) -> Result<EllRational> {
    let f = summand_integrand(s, specialize)?.mul_poly(&symmetric_sdd_weight(s.k));
    ct_iter(&f, &a_vars(s.k), order, None)
}

/// `2^{-k} Π_j (1 - a_j^2)(1 - a_j^{-2})`.
pub fn symmetric_sdd_weight(k: usize) -> LaurentPoly {
    let mut w = LaurentPoly::constant(BigRat::new(1, 1 << k));
    for j in 1..=k {
        let f = LaurentPoly::from_terms([
            (Monomial::var(a(j), 2), BigRat::from_int(-1)),
            (Monomial::one(), BigRat::from_int(2)),
            (Monomial::var(a(j), -2), BigRat::from_int(-1)),
        ]);
        w = w.mul(&f);
    }
    w
}

/// Orbit census: total orbits and contributing orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    /// Model used.
    pub model: Model,
    /// Hypercube dimension.
    pub k: usize,
    /// Number of orbits.
    pub orbits: usize,
    /// Number of orbits with a nonzero constant term.
    pub contributing: usize,
    /// Sizes of the contributing orbits, in canonical order.
    pub contributing_sizes: Vec<u64>,
}

/// Computes the constant term of every orbit representative in parallel.
pub fn fill_orbits(records: &mut [OrbitRecord], specialize: bool, sdd: bool) -> Result<()> {
    let order = SeriesOrder::standard();
    let results: Vec<Result<EllRational>> = records
        .par_iter()
        .map(|r| {
            if sdd {
                summand_ct_sdd(&r.canonical, &order, specialize)
            } else {
                summand_ct(&r.canonical, &order, specialize)
            }
        })
        .collect();
    for (r, v) in records.iter_mut().zip(results) {
        let v = v?;
        r.contributing = Some(!v.is_zero());
        r.ct_value = Some(v);
    }
    Ok(())
}

/// The census of a filled record list.
pub fn census(k: usize, model: Model, records: &[OrbitRecord]) -> Census {
    let contributing: Vec<&OrbitRecord> = records
        .iter()
        .filter(|r| r.contributing == Some(true))
        .collect();
    Census {
        model,
        k,
        orbits: records.len(),
        contributing: contributing.len(),
        contributing_sizes: contributing.iter().map(|r| r.size).collect(),
    }
}

/// `Σ m_i G_{S_i}(q)` over the orbit representatives together with the census.
/// Multiplying by `(1 - q^2)^{-2^{k-1}}` gives `G_k(q)` (see [`g_from_orbits`]).
pub fn assemble_asymmetric(
    k: usize,
    model: Model,
) -> Result<(EllRational, Census, Vec<OrbitRecord>)> {
    let mut records = enumerate_orbits(k, model)?;
    fill_orbits(&mut records, true, false)?;
    let total = weighted_sum(&records);
    Ok((total, census(k, model, &records), records))
}

fn weighted_sum(records: &[OrbitRecord]) -> EllRational {
    let parts: Vec<EllRational> = records
        .iter()
        .filter_map(|r| {
            r.ct_value
                .as_ref()
                .map(|v| v.scale(&BigRat::from_int(r.size as i64)))
        })
        .collect();
    EllRational::sum(parts.iter())
}

/// The symmetric-pair prefactor `(1 - q^2)^{-2^{k-1}}`.
pub fn pair_prefactor(k: usize) -> EllRational {
    let f = BinFactor::new(BigRat::one(), Monomial::var(Q, 2), 1 << (k - 1));
    EllRational::new(LaurentPoly::one(), vec![f]).expect("nonconstant factor")
}

/// `G_k(q)` assembled from orbit representatives.
pub fn g_from_orbits(k: usize, model: Model) -> Result<EllRational> {
    let (asym, _, _) = assemble_asymmetric(k, model)?;
    Ok(asym.mul(&pair_prefactor(k)))
}

/// `W_k(q)` assembled from orbit representatives of the symmetrized integrand: the
/// weight `2^{-k} Π (1 - a_j^2)(1 - a_j^{-2})` is invariant under `B_k`, and after
/// `x -> q` its constant term equals `W_k(q)`.
pub fn w_from_orbits(k: usize, model: Model) -> Result<EllRational> {
    let mut records = enumerate_orbits(k, model)?;
    fill_orbits(&mut records, true, true)?;
    Ok(weighted_sum(&records).mul(&pair_prefactor(k)))
}

/// `Π_{i ≤ 2^{k-1}} 1/(1 - x_i x_{i'})` over the pairs of the `k`-system.
pub fn pair_factor_product(k: usize) -> EllRational {
    let factors = (1..=(1usize << (k - 1)))
        .map(|i| BinFactor::simple(Monomial::from_pairs(&[(x(i), 1), (x(partner(i, k)), 1)])))
        .collect();
    EllRational::new(LaurentPoly::one(), factors).expect("nonconstant factors")
}

/// Weighted representatives `(m_i, R_i)` of a complete generating function.
pub type RepresentativeSet = Vec<(u64, EllRational)>;

/// Full-model representatives of the asymmetric part of `F_k(x)` with orbit sizes.
pub fn full_representatives(k: usize, sdd: bool) -> Result<RepresentativeSet> {
    let mut records = enumerate_orbits(k, Model::Full)?;
    fill_orbits(&mut records, false, sdd)?;
    Ok(records
        .into_iter()
        .filter(|r| r.contributing == Some(true))
        .map(|r| (r.size, r.ct_value.expect("filled")))
        .collect())
}

/// Applies the doubling step to one representative of the `(k-1)`-system and takes the
/// final constant term. The result is weighted by `w(s)` in the fresh variable `s`.
pub fn divdiff_term(r: &EllRational, k: usize, weight: &LaurentPoly) -> Result<EllRational> {
    let s = a(1);
    if r.contains(s) {
        return Err(Error::PreconditionViolated(
            "representative must be free of a1".into(),
        ));
    }
    let f = r.mul(&pair_factor_product(k - 1));
    let n = 1usize << (k - 1);
    let g = double_and_specialize(&f, n, s)?;
    let order = SeriesOrder::standard();
    crate::ct::ct_exact(&g.mul_poly(weight), s, &order)
}

/// `Σ m_i (δ_{1,1+n} ... δ_{n,2n} R_i Π 1/(1 - x_i x_{i'}))|_{x -> q a, q/a}|_{a^0}`.
pub fn orbit_divdiff_from(
    reps: &RepresentativeSet,
    k: usize,
    weight: &LaurentPoly,
) -> Result<EllRational> {
    let parts: Vec<Result<EllRational>> = reps
        .par_iter()
        .map(|(m, r)| Ok(divdiff_term(r, k, weight)?.scale(&BigRat::from_int(*m as i64))))
        .collect();
    let parts: Vec<EllRational> = parts.into_iter().collect::<Result<_>>()?;
    Ok(EllRational::sum(parts.iter()))
}

/// `G_k(q)` through divided differences applied to the full-model representatives of
/// the `(k-1)`-system.
pub fn orbit_divdiff_g(k: usize) -> Result<EllRational> {
    if !(2..=5).contains(&k) {
        return Err(Error::PreconditionViolated(format!("k = {k} out of range")));
    }
    let reps = full_representatives(k - 1, false)?;
    orbit_divdiff_from(&reps, k, &LaurentPoly::one())
}

/// `W_k(q)` through divided differences applied to representatives of the symmetrized
/// function `W̃_{k-1}(x)`, compressed by [`compress_representatives`].
pub fn orbit_divdiff_w(k: usize) -> Result<EllRational> {
    if !(2..=5).contains(&k) {
        return Err(Error::PreconditionViolated(format!("k = {k} out of range")));
    }
    let reps = compress_representatives(&full_representatives(k - 1, true)?);
    let weight = LaurentPoly::one_minus(&BigRat::one(), &Monomial::var(a(1), 2));
    orbit_divdiff_from(&reps, k, &weight)
}

/// Merges representatives that share a denominator into a single representative with
/// size 1 and the weighted numerator sum. The doubling route is linear, so any
/// re-choice with the same weighted sum gives the same result.
pub fn compress_representatives(reps: &RepresentativeSet) -> RepresentativeSet {
    let mut groups: HashMap<Vec<BinFactor>, LaurentPoly> = HashMap::new();
    let mut keys: Vec<Vec<BinFactor>> = Vec::new();
    for (m, r) in reps {
        let key = r.den().to_vec();
        let num = r.num().scale(&BigRat::from_int(*m as i64));
        match groups.get_mut(&key) {
            Some(acc) => *acc = acc.add(&num),
            None => {
                keys.push(key.clone());
                groups.insert(key, num);
            }
        }
    }
    keys.into_iter()
        .filter_map(|key| {
            let num = groups.remove(&key).expect("present");
            if num.is_zero() {
                None
            } else {
                Some((
                    1,
                    EllRational::new(num, key)
                        .expect("canonical factors")
                        .normalize(),
                ))
            }
        })
        .collect()
}

/// Sum over the group of the images of `Σ m_i R_i / |G|`, i.e. the orbit expansion of a
/// representative set under `B_k`.
pub fn expand_representatives(reps: &RepresentativeSet, k: usize) -> Result<EllRational> {
    let group = GroupElement::all(k);
    let order = BigRat::from_int(group.len() as i64);
    let mut parts = Vec::new();
    for (m, r) in reps {
        let c = BigRat::from_int(*m as i64) / order.clone();
        for g in &group {
            parts.push(act_vars(g, r, k)?.scale(&c));
        }
    }
    Ok(EllRational::sum(parts.iter()))
}

/// Writes one census line per orbit: `mask_hex size flag [rendered]`, with flag `1`,
/// `0` or `?`.
pub fn write_census<W: Write>(w: &mut W, records: &[OrbitRecord]) -> Result<()> {
    let table = VarTable::standard();
    for r in records {
        let flag = match r.contributing {
            Some(true) => "1",
            Some(false) => "0",
            None => "?",
        };
        match &r.ct_value {
            Some(v) => writeln!(
                w,
                "{:x} {} {} {}",
                r.canonical.mask,
                r.size,
                flag,
                v.render(table)
            )?,
            None => writeln!(w, "{:x} {} {}", r.canonical.mask, r.size, flag)?,
        }
    }
    Ok(())
}

/// Reads records written by [`write_census`].
pub fn read_census<R: BufRead>(r: R, k: usize, model: Model) -> Result<Vec<OrbitRecord>> {
    let table = VarTable::standard();
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.splitn(4, ' ');
        let bad = || Error::Parse(format!("bad census line {line:?}"));
        let mask = u64::from_str_radix(parts.next().ok_or_else(bad)?, 16).map_err(|_| bad())?;
        let size: u64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let contributing = match parts.next().ok_or_else(bad)? {
            "1" => Some(true),
            "0" => Some(false),
            "?" => None,
            _ => return Err(bad()),
        };
        let ct_value = match parts.next() {
            Some(s) => Some(EllRational::parse(s, table)?),
            None => None,
        };
        out.push(OrbitRecord {
            canonical: Support::new(model, k, mask)?,
            size,
            contributing,
            ct_value,
        });
    }
    Ok(out)
}

/// Computes the census with per-orbit constant terms, resuming from `path` when it
/// already holds some records and appending each finished batch to it.
pub fn census_with_checkpoint(
    k: usize,
    model: Model,
    specialize: bool,
    path: &Path,
    batch: usize,
) -> Result<Vec<OrbitRecord>> {
    let mut records = enumerate_orbits(k, model)?;
    let done: HashMap<u64, OrbitRecord> = if path.exists() {
        let file = std::fs::File::open(path)?;
        read_census(std::io::BufReader::new(file), k, model)?
            .into_iter()
            .filter(|r| r.contributing.is_some())
            .map(|r| (r.canonical.mask, r))
            .collect()
    } else {
        HashMap::new()
    };
    for r in records.iter_mut() {
        if let Some(d) = done.get(&r.canonical.mask) {
            r.contributing = d.contributing;
            r.ct_value = d.ct_value.clone();
        }
    }
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    let todo: Vec<usize> = (0..records.len())
        .filter(|&i| records[i].contributing.is_none())
        .collect();
    for chunk in todo.chunks(batch.max(1)) {
        let mut slice: Vec<OrbitRecord> = chunk.iter().map(|&i| records[i].clone()).collect();
        fill_orbits(&mut slice, specialize, false)?;
        write_census(&mut file, &slice)?;
        file.flush()?;
        for (&i, r) in chunk.iter().zip(slice) {
            records[i] = r;
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> EllRational {
        EllRational::parse(s, VarTable::standard()).unwrap()
    }

    #[test]
    fn sigma_example() {
        let g = GroupElement::new(vec![1, 2, 3], vec![0, 1, 0]).unwrap();
        assert_eq!(g.sigma().sigma, vec![3, 4, 1, 2, 7, 8, 5, 6]);
        let id = GroupElement::identity(3);
        assert!((1..=8).all(|i| act_index(&id, i, 3) == i));
    }

    #[test]
    fn composition_is_homomorphism() {
        for k in 1..=4 {
            let all = GroupElement::all(k);
            assert_eq!(all.len(), (1 << k) * (1..=k).product::<usize>());
            for g in all.iter().step_by(3) {
                for h in all.iter().step_by(5) {
                    let gh = g.compose(h);
                    for i in 1..=(1 << k) {
                        assert_eq!(act_index(&gh, i, k), act_index(g, act_index(h, i, k), k));
                    }
                    assert!(gh.sigma().respects_pairing());
                }
            }
        }
    }

    #[test]
    fn act_vars_moves_vertex_terms() {
        let k = 3;
        for g in GroupElement::all(k) {
            let s = g.sigma();
            for i in 1..=8 {
                let m = Monomial::var(x(i), 1).mul(&vertex_monomial(i, k));
                let f = EllRational::from_monos(LaurentPoly::one(), &[m]).unwrap();
                let img = act_vars(&g, &f, k).unwrap();
                let j = s.apply(i);
                let want = Monomial::var(x(j), 1).mul(&vertex_monomial(j, k));
                assert_eq!(
                    img,
                    EllRational::from_monos(LaurentPoly::one(), &[want]).unwrap()
                );
            }
        }
    }

    #[test]
    fn summand_examples() {
        let order = SeriesOrder::standard();
        let s = Support::new(Model::Half, 3, 0b1001).unwrap();
        let v = summand_ct(&s, &order, false).unwrap();
        assert!(
            v.equal_as_rational(&parse("x1*x4*x6*x7/(1-x1*x4*x6*x7)")),
            "{v}"
        );
        let g = GroupElement::new(vec![1, 2, 3], vec![0, 1, 0]).unwrap();
        let t = summand_ct(&s.act(&g), &order, false).unwrap();
        assert!(
            t.equal_as_rational(&parse("x2*x3*x5*x8/(1-x2*x3*x5*x8)")),
            "{t}"
        );
        assert!(act_vars(&g, &v, 3).unwrap().equal_as_rational(&t));
        let e = Support::new(Model::Full, 3, 0).unwrap();
        assert_eq!(summand_ct(&e, &order, false).unwrap(), EllRational::one());
        let one = Support::new(Model::Half, 3, 0b0001).unwrap();
        assert!(summand_ct(&one, &order, false).unwrap().is_zero());
    }

    #[test]
    fn orbit_counts_small() {
        let h3 = enumerate_orbits(3, Model::Half).unwrap();
        assert_eq!(h3.len(), 6);
        assert_eq!(h3.iter().map(|r| r.size).sum::<u64>(), 16);
        let f3 = enumerate_orbits(3, Model::Full).unwrap();
        assert_eq!(f3.len(), 9);
        assert_eq!(f3.iter().map(|r| r.size).sum::<u64>(), 81);
        assert_eq!(enumerate_orbits(4, Model::Half).unwrap().len(), 22);
        assert_eq!(enumerate_orbits(4, Model::Full).unwrap().len(), 62);
    }

    #[test]
    fn g3_from_orbits() {
        let want = parse("(1+q^4)/(1-q^2)^4(1-q^4)");
        for model in [Model::Half, Model::Full] {
            let (_, c, _) = assemble_asymmetric(3, model).unwrap();
            assert_eq!(c.contributing, 2);
            assert!(g_from_orbits(3, model).unwrap().equal_as_rational(&want));
        }
    }

    #[test]
    fn census_round_trip() {
        let (_, _, recs) = assemble_asymmetric(3, Model::Full).unwrap();
        let mut buf = Vec::new();
        write_census(&mut buf, &recs).unwrap();
        let back = read_census(std::io::Cursor::new(buf), 3, Model::Full).unwrap();
        assert_eq!(back.len(), recs.len());
        for (a, b) in back.iter().zip(&recs) {
            assert_eq!(a.canonical, b.canonical);
            assert_eq!(a.size, b.size);
            assert!(a
                .ct_value
                .as_ref()
                .unwrap()
                .equal_as_rational(b.ct_value.as_ref().unwrap()));
        }
    }
}
