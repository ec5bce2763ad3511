//! Method dispatch and verification against embedded reference values.
//!
//! Univariate results are presented over products of `(1 - q^j)^m`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::ct::ct_iter;
use crate::ellrat::{BinFactor, EllRational, SeriesOrder};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial, VarTable, Q};
use crate::rat::BigRat;
use crate::{divdiff, hyperoct, oracle, sprime, system};

/// Which generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Series {
    /// `G_k(q)`, Kronecker products of `h_{d,d}`.
    G,
    /// `W_k(q)`, invariants of `SL(2)^{⊗k}`.
    W,
}

impl Series {
    /// True for the invariant-theory series.
    pub fn sdd(self) -> bool {
        self == Series::W
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::G => "G",
            Series::W => "W",
        })
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" | "g" | "gseries" => Ok(Series::G),
            "W" | "w" | "wseries" => Ok(Series::W),
            _ => Err(Error::Parse(format!("unknown series {s:?}"))),
        }
    }
}

/// A computation method.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MethodId {
    /// Iterated constant term of the weight-graded integrand.
    Direct,
    /// Divided-difference induction.
    Divdiff,
    /// Hyperoctahedral orbit reduction.
    Orbit,
    /// Divided differences applied to orbit representatives of the previous system.
    OrbitDivdiff,
    /// The reformulated system with the coefficient collapse.
    Sprime,
    /// Brute-force counting up to `q^{2D}`.
    Oracle(usize),
}

impl MethodId {
    /// Every method that yields a closed form.
    pub const CLOSED: [MethodId; 5] = [
        MethodId::Direct,
        MethodId::Divdiff,
        MethodId::Orbit,
        MethodId::OrbitDivdiff,
        MethodId::Sprime,
    ];

    /// Whether the method supports `(series, k)`.
    pub fn supports(self, series: Series, k: usize) -> bool {
        match self {
            MethodId::Direct | MethodId::Divdiff => (1..=4).contains(&k),
            MethodId::Orbit => (2..=5).contains(&k),
            MethodId::OrbitDivdiff => match series {
                Series::G => (2..=5).contains(&k),
                Series::W => (2..=4).contains(&k),
            },
            MethodId::Sprime => (2..=5).contains(&k),
            MethodId::Oracle(_) => (1..=5).contains(&k),
        }
    }

    /// The fastest closed-form method for `(series, k)`.
    pub fn default_for(_series: Series, k: usize) -> MethodId {
        if k <= 4 {
            MethodId::Direct
        } else {
            MethodId::Orbit
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodId::Direct => f.write_str("direct"),
            MethodId::Divdiff => f.write_str("divdiff"),
            MethodId::Orbit => f.write_str("orbit"),
            MethodId::OrbitDivdiff => f.write_str("orbit-divdiff"),
            MethodId::Sprime => f.write_str("sprime"),
            MethodId::Oracle(d) => write!(f, "oracle:{d}"),
        }
    }
}

impl FromStr for MethodId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(MethodId::Direct),
            "divdiff" => Ok(MethodId::Divdiff),
            "orbit" => Ok(MethodId::Orbit),
            "orbit-divdiff" => Ok(MethodId::OrbitDivdiff),
            "sprime" => Ok(MethodId::Sprime),
            _ => match s.strip_prefix("oracle:") {
                Some(d) => d
                    .parse()
                    .map(MethodId::Oracle)
                    .map_err(|_| Error::Parse(format!("bad degree in {s:?}"))),
                None => Err(Error::Parse(format!("unknown method {s:?}"))),
            },
        }
    }
}

/// Outcome of [`compute`].
#[derive(Clone, Debug, PartialEq)]
pub enum Computed {
    /// A closed form in `q`.
    Rational(EllRational),
    /// Coefficients of `q^{2d}` for `d = 0..=D`.
    Table(Vec<u128>),
}

/// Computes `G_k(q)` or `W_k(q)` with the given method.
pub fn compute(series: Series, k: usize, method: MethodId) -> Result<Computed> {
    if !method.supports(series, k) {
        return Err(Error::Unsupported(format!(
            "method {method} does not support {series}_{k}"
        )));
    }
    let sdd = series.sdd();
    let f = match method {
        MethodId::Direct => {
            let f = system::direct_integrand(k, sdd);
            ct_iter(&f, &system::a_vars(k), &SeriesOrder::standard(), None)?
        }
        MethodId::Divdiff => {
            if sdd {
                divdiff::sdd_pipeline(k, false)?
            } else {
                divdiff::hdd_pipeline(k, false)?
            }
        }
        MethodId::Orbit => {
            if sdd {
                hyperoct::w_from_orbits(k, hyperoct::Model::Half)?
            } else {
                hyperoct::g_from_orbits(k, hyperoct::Model::Half)?
            }
        }
        MethodId::OrbitDivdiff => {
            if sdd {
                hyperoct::orbit_divdiff_w(k)?
            } else {
                hyperoct::orbit_divdiff_g(k)?
            }
        }
        MethodId::Sprime => {
            if sdd {
                sprime::sprime_w(k)?
            } else {
                sprime::sprime_g(k)?
            }
        }
        MethodId::Oracle(d) => return Ok(Computed::Table(oracle::oracle_table(k, d, sdd)?)),
    };
    Ok(Computed::Rational(f))
}

/// Exact reference values.
pub struct ReferenceData;

/// Numerator of `G_5(√q)`, coefficients of `q^0..q^44`.
pub const N5: [i64; 45] = [
    1,
    7,
    220,
    2606,
    24229,
    169840,
    951944,
    4391259,
    17128360,
    57582491,
    169556652,
    442817680,
    1036416952,
    2192191607,
    4219669696,
    7433573145,
    12041305271,
    18003453305,
    24921751416,
    32017113319,
    38243274851,
    42524815013,
    44052440432,
    42524815013,
    38243274851,
    32017113319,
    24921751416,
    18003453305,
    12041305271,
    7433573145,
    4219669696,
    2192191607,
    1036416952,
    442817680,
    169556652,
    57582491,
    17128360,
    4391259,
    951944,
    169840,
    24229,
    2606,
    220,
    7,
    1,
];

/// Denominator of `G_5(√q)` as `(j, m)` for `(1 - q^j)^m`.
pub const N5_DEN: [(i32, u32); 5] = [(1, 9), (2, 8), (3, 6), (4, 3), (5, 1)];

/// Numerator of `W_5(√q)`, coefficients of `q^0..q^54`.
pub const P5: [i64; 55] = [
    1, 0, 1, 0, 16, 9, 98, 154, 465, 915, 2042, 3794, 7263, 12688, 21198, 34323, 52205, 77068,
    108458, 147423, 191794, 241863, 292689, 342207, 386980, 421057, 443990, 451398, 443990, 421057,
    386980, 342207, 292689, 241863, 191794, 147423, 108458, 77068, 52205, 34323, 21198, 12688,
    7263, 3794, 2042, 915, 465, 154, 98, 9, 16, 0, 1, 0, 1,
];

/// Denominator of `W_5(√q)`.
pub const P5_DEN: [(i32, u32); 5] = [(2, 4), (3, 1), (4, 6), (5, 1), (6, 5)];

/// Numerator of `G_4(q)` in powers of `q^2`.
pub const N4: [i64; 11] = [1, 1, 21, 36, 74, 86, 74, 36, 21, 1, 1];

fn build(num: &[i64], den: &[(i32, u32)], step: i32) -> EllRational {
    let p = LaurentPoly::from_terms(
        num.iter()
            .enumerate()
            .map(|(e, &c)| (Monomial::var(Q, step * e as i32), BigRat::from_int(c))),
    );
    let factors = den
        .iter()
        .map(|&(j, m)| BinFactor::new(BigRat::one(), Monomial::var(Q, step * j), m))
        .collect();
    EllRational::new(p, factors).expect("reference denominators are nonconstant")
}

impl ReferenceData {
    /// The closed form of `series_k(q)`, when known.
    pub fn get(series: Series, k: usize) -> Option<EllRational> {
        Some(match (series, k) {
            (Series::G, 1) => build(&[1], &[(2, 1)], 1),
            (Series::G, 2) => build(&[1], &[(2, 2)], 1),
            (Series::G, 3) => build(&[1, 0, 0, 0, 1], &[(2, 4), (4, 1)], 1),
            (Series::G, 4) => build(&N4, &[(1, 7), (2, 4), (3, 1)], 2),
            (Series::G, 5) => build(&N5, &N5_DEN, 2),
            (Series::W, 1) => EllRational::one(),
            (Series::W, 2) => build(&[1], &[(2, 1)], 1),
            (Series::W, 3) => build(&[1], &[(4, 1)], 1),
            (Series::W, 4) => build(&[1], &[(2, 1), (4, 2), (6, 1)], 1),
            (Series::W, 5) => build(&P5, &P5_DEN, 2),
            _ => return None,
        })
    }

    /// True when the embedded `N_5` and `P_5` are palindromic of degrees 44 and 54.
    pub fn check_palindromes() -> bool {
        let pal = |v: &[i64]| v.iter().eq(v.iter().rev());
        pal(&N5) && pal(&P5) && N5.len() == 45 && P5.len() == 55
    }
}

/// A univariate result in the form `numerator / Π (1 - q^j)^{m_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presented {
    /// Whether `q^2` was replaced by `q`.
    pub sqrt: bool,
    /// Numerator coefficients of `q^0, q^1, ...` as decimal strings.
    pub numerator: Vec<String>,
    /// Denominator as `(j, m_j)` pairs.
    pub denominator: Vec<(i32, u32)>,
    /// The same data rendered in the expression grammar.
    pub text: String,
}

fn univariate(p: &LaurentPoly) -> Result<Vec<BigRat>> {
    if p.is_zero() {
        return Ok(vec![]);
    }
    if p.vars().iter().any(|&v| v != Q) || p.degree_range(Q).0 < 0 {
        return Err(Error::PreconditionViolated(
            "expected a polynomial in q".into(),
        ));
    }
    p.univariate_coeffs(Q)
        .ok_or_else(|| Error::PreconditionViolated("expected a polynomial in q".into()))
}

/// The cyclotomic polynomials `Φ_1..Φ_n` in `q`.
fn cyclotomics(n: usize) -> Vec<LaurentPoly> {
    let mut phi: Vec<LaurentPoly> = vec![LaurentPoly::zero()];
    for m in 1..=n {
        let mut p = LaurentPoly::one_minus(&BigRat::one(), &Monomial::var(Q, m as i32));
        for (d, ph) in phi.iter().enumerate().skip(1) {
            if m % d == 0 {
                p = p.div_exact(ph).expect("cyclotomic divisor");
            }
        }
        phi.push(p);
    }
    phi
}

fn divide_out(p: &mut LaurentPoly, d: &LaurentPoly) -> bool {
    match p.div_exact(d) {
        Ok(r) => {
            *p = r;
            true
        }
        Err(_) => false,
    }
}

/// Writes `f(q)` (or `f(√q)` with `deflate_to_sqrt`) as a reduced fraction whose
/// denominator is a product `Π (1 - q^j)^{m_j}`. The multiplicities are chosen from
/// the largest `j` down: each `m_j` covers what remains of the cyclotomic factor
/// `Φ_j` after the larger `j` are accounted for.
pub fn present(f: &EllRational, deflate_to_sqrt: bool) -> Result<Presented> {
    let f = if deflate_to_sqrt {
        f.deflate(Q, 2)?
    } else {
        f.clone()
    };
    if f.vars().iter().any(|&v| v != Q) {
        return Err(Error::PreconditionViolated(
            "present needs a function of q alone".into(),
        ));
    }
    let mut num = f.num().clone();
    let mut den = LaurentPoly::one();
    for fac in f.den() {
        if fac.mono.exp(Q) < 0 {
            return Err(Error::PreconditionViolated(
                "factor with negative power of q".into(),
            ));
        }
        den = den.mul(&fac.expand());
    }
    let top = den.degree_range(Q).1.max(0) as usize;
    let phi = cyclotomics(top.max(1));
    // cyclotomic multiplicities of the denominator
    let mut e = vec![0u32; top + 1];
    let mut rest = den.clone();
    for n in 1..=top {
        while divide_out(&mut rest, &phi[n]) {
            e[n] += 1;
        }
    }
    let (ok, unit) = match rest.as_constant() {
        Some(c) => (true, c),
        None => (false, BigRat::one()),
    };
    if !ok {
        // not a product of cyclotomic factors: fall back to the stored form
        let text = f.render(VarTable::standard());
        return Ok(Presented {
            sqrt: deflate_to_sqrt,
            numerator: vec![],
            denominator: vec![],
            text,
        });
    }
    num = num.scale(&unit.recip());
    for n in 1..=top {
        while e[n] > 0 && divide_out(&mut num, &phi[n]) {
            e[n] -= 1;
        }
    }
    let mut m = vec![0u32; top + 1];
    for n in (1..=top).rev() {
        let covered: u32 = (2 * n..=top).step_by(n).map(|j| m[j]).sum();
        m[n] = e[n].saturating_sub(covered);
    }
    // numerator *= Π (1-q^j)^{m_j} / Π Φ_n^{e_n}
    let mut full = LaurentPoly::one();
    for (j, &mj) in m.iter().enumerate().skip(1) {
        if mj > 0 {
            full = full
                .mul(&LaurentPoly::one_minus(&BigRat::one(), &Monomial::var(Q, j as i32)).pow(mj));
        }
    }
    let mut reduced = LaurentPoly::one();
    for (n, &en) in e.iter().enumerate().skip(1) {
        if en > 0 {
            reduced = reduced.mul(&phi[n].pow(en));
        }
    }
    let num = num.mul(&full.div_exact(&reduced)?);
    let denominator: Vec<(i32, u32)> = m
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &mj)| mj > 0)
        .map(|(j, &mj)| (j as i32, mj))
        .collect();
    let factors = denominator
        .iter()
        .map(|&(j, mj)| BinFactor::new(BigRat::one(), Monomial::var(Q, j), mj))
        .collect();
    let text = EllRational::new(num.clone(), factors)?.render(VarTable::standard());
    let numerator = univariate(&num)?.iter().map(|c| c.to_string()).collect();
    Ok(Presented {
        sqrt: deflate_to_sqrt,
        numerator,
        denominator,
        text,
    })
}

/// Numerator of `f` over the denominator `Π (1 - q^j)^{m_j}` given as `(j, m_j)` pairs,
/// after replacing `q^2` by `q` when `deflate_to_sqrt` is set. Fails unless the product
/// is a polynomial in `q`.
pub fn numerator_over(
    f: &EllRational,
    den: &[(i32, u32)],
    deflate_to_sqrt: bool,
) -> Result<Vec<BigRat>> {
    let f = if deflate_to_sqrt {
        f.deflate(Q, 2)?
    } else {
        f.clone()
    };
    let d = den.iter().fold(LaurentPoly::one(), |acc, &(j, m)| {
        acc.mul(&LaurentPoly::one_minus(&BigRat::one(), &Monomial::var(Q, j)).pow(m))
    });
    let num = f.num().mul(&d).div_exact(&f.den_poly()).map_err(|_| {
        Error::PreconditionViolated(format!(
            "the result times the denominator {den:?} is not a polynomial"
        ))
    })?;
    univariate(&num)
}

/// What a computation is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Against {
    /// The embedded reference values.
    Reference,
    /// The brute-force oracle up to `q^{2D}`.
    Oracle(usize),
    /// Another method.
    Method(MethodId),
}

impl FromStr for Against {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "reference" {
            return Ok(Against::Reference);
        }
        match s.parse::<MethodId>()? {
            MethodId::Oracle(d) => Ok(Against::Oracle(d)),
            m => Ok(Against::Method(m)),
        }
    }
}

/// Outcome of [`verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// Whether the check passed.
    pub pass: bool,
    /// Human-readable summary.
    pub detail: String,
}

fn rational(c: Computed) -> Result<EllRational> {
    match c {
        Computed::Rational(f) => Ok(f),
        Computed::Table(_) => Err(Error::Unsupported(
            "a coefficient table is not a closed form".into(),
        )),
    }
}

/// Coefficients of `q^{2d}`, `d = 0..=dmax`, of a closed form.
pub fn even_coefficients(f: &EllRational, dmax: usize) -> Result<Vec<BigRat>> {
    let s = f.series(Q, 2 * dmax)?;
    Ok(s.into_iter().step_by(2).collect())
}

/// Checks one computation against a reference, the oracle or another method.
pub fn verify(
    series: Series,
    k: usize,
    method: MethodId,
    against: Against,
) -> Result<VerifyReport> {
    let label = format!("{series}_{k} by {method}");
    match (method, against) {
        (MethodId::Oracle(d), Against::Reference) => {
            let table = match compute(series, k, method)? {
                Computed::Table(t) => t,
                Computed::Rational(_) => unreachable!("oracle yields a table"),
            };
            let reference = ReferenceData::get(series, k)
                .ok_or_else(|| Error::Unsupported(format!("no reference for {series}_{k}")))?;
            let want = even_coefficients(&reference, d)?;
            let pass = table
                .iter()
                .zip(&want)
                .all(|(a, b)| &BigRat::from_bigint(BigInt::from(*a)) == b);
            return Ok(VerifyReport {
                pass,
                detail: format!("{label} vs reference through q^{}", 2 * d),
            });
        }
        (MethodId::Oracle(_), _) => {
            return Err(Error::Unsupported(
                "oracle tables are checked against the reference only".into(),
            ));
        }
        _ => {}
    }
    let f = rational(compute(series, k, method)?)?;
    match against {
        Against::Reference => {
            let r = ReferenceData::get(series, k)
                .ok_or_else(|| Error::Unsupported(format!("no reference for {series}_{k}")))?;
            let pass = f.equal_as_rational(&r);
            Ok(VerifyReport {
                pass,
                detail: format!("{label} vs reference"),
            })
        }
        Against::Oracle(d) => {
            let rep = oracle::series_compare(&f, k, d, series.sdd())?;
            let detail = match rep.first_mismatch {
                None => format!("{label} vs oracle through q^{}", 2 * d),
                Some(deg) => format!("{label} vs oracle: first mismatch at q^{deg}"),
            };
            Ok(VerifyReport {
                pass: rep.ok(),
                detail,
            })
        }
        Against::Method(m) => {
            let g = rational(compute(series, k, m)?)?;
            Ok(VerifyReport {
                pass: f.equal_as_rational(&g),
                detail: format!("{label} vs {m}"),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> EllRational {
        EllRational::parse(s, VarTable::standard()).unwrap()
    }

    #[test]
    fn palindromes() {
        assert!(ReferenceData::check_palindromes());
        assert_eq!(N5[22], 44052440432);
        assert_eq!(P5[27], 451398);
    }

    #[test]
    fn present_examples() {
        let p = present(&parse("(1-q^8)/(1-q^2)^4(1-q^4)^2"), false).unwrap();
        assert_eq!(p.text, "(1 + q^4)/(1-q^2)^4(1-q^4)");
        let p = present(&parse("1/(1-q^2)"), false).unwrap();
        assert_eq!(p.text, "1/(1-q^2)");
        let g5 = ReferenceData::get(Series::G, 5).unwrap();
        let p = present(&g5, true).unwrap();
        assert_eq!(p.denominator, N5_DEN.to_vec());
        assert_eq!(
            p.numerator,
            N5.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        );
        assert!(EllRational::parse(&p.text, VarTable::standard())
            .unwrap()
            .equal_as_rational(&g5.deflate(Q, 2).unwrap()));
        let w5 = ReferenceData::get(Series::W, 5).unwrap();
        let num = numerator_over(&w5, &P5_DEN, true).unwrap();
        assert_eq!(
            num,
            P5.iter().map(|&c| BigRat::from_int(c)).collect::<Vec<_>>()
        );
        let g4 = present(&ReferenceData::get(Series::G, 4).unwrap(), true).unwrap();
        assert_eq!(g4.denominator, vec![(1, 7), (2, 4), (3, 1)]);
    }

    #[test]
    fn methods_parse() {
        assert_eq!("oracle:4".parse::<MethodId>().unwrap(), MethodId::Oracle(4));
        assert_eq!("sprime".parse::<MethodId>().unwrap(), MethodId::Sprime);
        assert!("bogus".parse::<MethodId>().is_err());
    }

    #[test]
    fn small_closed_forms() {
        for k in 1..=3 {
            for s in [Series::G, Series::W] {
                let r = verify(s, k, MethodId::Direct, Against::Reference).unwrap();
                assert!(r.pass, "{}", r.detail);
            }
        }
    }
}
