//! Variable registry, sparse Laurent monomials and polynomials over exact rationals.
//!
//! Variables are identified by a [`VarId`] that doubles as their rank in the series
//! order: a lower id is a "smaller" variable. Monomials store their nonzero exponents
//! sorted by id, and polynomials keep their terms sorted in graded-lexicographic order
//! so that equal polynomials have identical representations.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rat::BigRat;

/// Identifier of a registered variable; equal to its rank.
pub type VarId = u16;

/// Ordered table of variable names. The position of a name is its id and its rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, VarId>,
}

/// Number of `x` variables in the standard table.
pub const STD_NX: usize = 64;
/// Number of `a` variables in the standard table.
pub const STD_NA: usize = 16;
/// The grading variable `q` in the standard table.
pub const Q: VarId = 0;
/// The auxiliary variable `t` in the standard table.
pub const T: VarId = 1;

/// Id of `x_i` (1-based) in the standard table.
pub fn x(i: usize) -> VarId {
    assert!((1..=STD_NX).contains(&i), "x index out of range");
    (1 + i) as VarId
}

/// Id of `a_i` (1-based) in the standard table.
pub fn a(i: usize) -> VarId {
    assert!((1..=STD_NA).contains(&i), "a index out of range");
    (1 + STD_NX + i) as VarId
}

impl VarTable {
    /// Builds a table from names listed in increasing rank.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut table = VarTable {
            names: Vec::new(),
            index: HashMap::new(),
        };
        for n in names {
            table.push(n.as_ref())?;
        }
        Ok(table)
    }

    /// Parses a declared order such as `q<t<a1<a2`.
    pub fn from_order(order: &str) -> Result<Self> {
        let names: Vec<&str> = order.split('<').map(str::trim).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(Error::Parse(format!("malformed variable order `{order}`")));
        }
        Self::new(&names)
    }

    /// Registers a new variable with the next rank.
    pub fn push(&mut self, name: &str) -> Result<VarId> {
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::Parse(format!("invalid variable name `{name}`")));
        }
        if self.index.contains_key(name) {
            return Err(Error::Parse(format!("duplicate variable `{name}`")));
        }
        let id = VarId::try_from(self.names.len())
            .map_err(|_| Error::Parse("too many variables".into()))?;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    /// The standard table: `q < t < x1 < ... < x64 < a1 < ... < a16`.
    pub fn standard() -> &'static VarTable {
        static TABLE: OnceLock<VarTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            let mut names = vec!["q".to_string(), "t".to_string()];
            names.extend((1..=STD_NX).map(|i| format!("x{i}")));
            names.extend((1..=STD_NA).map(|i| format!("a{i}")));
            VarTable::new(&names).expect("standard names are valid")
        })
    }

    /// Id of a variable by name.
    pub fn id(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    /// Name of a variable.
    pub fn name(&self, id: VarId) -> &str {
        self.names
            .get(id as usize)
            .map(String::as_str)
            .unwrap_or("?")
    }

    /// Rank of a variable (equal to its id).
    pub fn rank(&self, id: VarId) -> usize {
        id as usize
    }

    /// Number of registered variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// True when no variable is registered.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Names in rank order.
    pub fn names(&self) -> &[String] {
        &self.names
    }
}

type ExpVec = SmallVec<[(VarId, i32); 6]>;

/// A Laurent monomial: sparse map from variable to nonzero exponent, sorted by id.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(ExpVec);

impl Monomial {
    /// The constant monomial 1.
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    /// The monomial `v^e`.
    pub fn var(v: VarId, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(smallvec::smallvec![(v, e)])
        }
    }

    /// Builds a monomial from (variable, exponent) pairs in any order, combining repeats.
    pub fn from_pairs(pairs: &[(VarId, i32)]) -> Self {
        let mut m = Self::one();
        for &(v, e) in pairs {
            m = m.mul(&Self::var(v, e));
        }
        m
    }

    /// Sorted (variable, exponent) pairs.
    pub fn pairs(&self) -> &[(VarId, i32)] {
        &self.0
    }

    /// True for the constant monomial.
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponent of `v` (zero when absent).
    pub fn exp(&self, v: VarId) -> i32 {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    /// True when `v` occurs.
    pub fn contains(&self, v: VarId) -> bool {
        self.exp(v) != 0
    }

    /// Sum of exponents.
    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = ExpVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Inverse monomial.
    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    /// Quotient `self / other`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    /// Integer power.
    pub fn pow(&self, n: i32) -> Monomial {
        if n == 0 {
            return Self::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * n)).collect())
    }

    /// Splits off `v`: returns its exponent and the remaining monomial.
    pub fn split(&self, v: VarId) -> (i32, Monomial) {
        match self.0.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// Variables occurring, in rank order.
    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|p| p.0)
    }

    /// The lowest-ranked occurring variable and its exponent.
    pub fn leading_var(&self) -> Option<(VarId, i32)> {
        self.0.first().copied()
    }

    /// Greatest common divisor of the exponents of all variables.
    pub fn exponent_gcd(&self) -> i32 {
        self.0.iter().fold(0, |g, p| gcd(g, p.1.abs()))
    }

    /// Renders the monomial with the names of `table`; the constant monomial renders as `1`.
    pub fn render(&self, table: &VarTable) -> String {
        if self.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    table.name(v).to_string()
                } else {
                    format!("{}^{}", table.name(v), e)
                }
            })
            .collect();
        parts.join("*")
    }
}

/// Greatest common divisor of two nonnegative integers.
pub fn gcd(mut a: i32, mut b: i32) -> i32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

impl Ord for Monomial {
    /// Graded lexicographic order: total degree first, then the exponent of the
    /// lowest-ranked variable where the two differ.
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.total_degree().cmp(&other.total_degree());
        if d != Ordering::Equal {
            return d;
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(VarTable::standard()))
    }
}

/// A sparse Laurent polynomial with exact rational coefficients.
///
/// Terms are sorted in increasing graded-lexicographic order and carry nonzero
/// coefficients; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigRat)>,
}

/// Arithmetic kinds accepted by [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    /// `p + q`
    Add,
    /// `p - q`
    Sub,
    /// `p * q`
    Mul,
    /// `-p` (the second operand is ignored)
    Neg,
}

/// Exact ring operation on two polynomials.
pub fn poly_arith(kind: ArithKind, p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    match kind {
        ArithKind::Add => p.add(q),
        ArithKind::Sub => p.sub(q),
        ArithKind::Mul => p.mul(q),
        ArithKind::Neg => p.neg(),
    }
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    /// A constant polynomial.
    pub fn constant(c: BigRat) -> Self {
        Self::term(c, Monomial::one())
    }

    /// A single term `c * m`.
    pub fn term(c: BigRat, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(m, c)],
            }
        }
    }

    /// The monomial `m` with coefficient 1.
    pub fn mono(m: Monomial) -> Self {
        Self::term(BigRat::one(), m)
    }

    /// The variable `v`.
    pub fn var(v: VarId) -> Self {
        Self::mono(Monomial::var(v, 1))
    }

    /// The binomial `1 - c*m`.
    pub fn one_minus(c: &BigRat, m: &Monomial) -> Self {
        Self::one().sub(&Self::term(c.clone(), m.clone()))
    }

    /// Builds a canonical polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRat)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, BigRat> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigRat>) -> Self {
        let mut terms: Vec<(Monomial, BigRat)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly { terms }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> &[(Monomial, BigRat)] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when there are no terms, which is the zero polynomial.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for nonzero constants and zero.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    /// The constant value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRat> {
        match self.terms.as_slice() {
            [] => Some(BigRat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// The single term when the polynomial is a monomial times a coefficient.
    pub fn as_term(&self) -> Option<(&BigRat, &Monomial)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((c, m)),
            _ => None,
        }
    }

    /// True when `v` occurs in some term.
    pub fn contains(&self, v: VarId) -> bool {
        self.terms.iter().any(|t| t.0.contains(v))
    }

    /// Sorted list of variables that occur.
    pub fn vars(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self.terms.iter().flat_map(|t| t.0.vars()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Re-canonicalizes the representation (a no-op on canonical input).
    pub fn canonicalize(&self) -> Self {
        Self::from_terms(self.terms.iter().cloned())
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((c, m)) = other.as_term() {
            return self.mul_term(c, m);
        }
        if let Some((c, m)) = self.as_term() {
            return other.mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, BigRat> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    /// Product with the term `c * m`; the order of terms is preserved.
    pub fn mul_term(&self, c: &BigRat, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    /// Product with a scalar.
    pub fn scale(&self, c: &BigRat) -> Self {
        self.mul_term(c, &Monomial::one())
    }

    /// Product with a monomial.
    pub fn mul_mono(&self, m: &Monomial) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.clone()))
                .collect(),
        }
    }

    /// Nonnegative integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Coefficient of `v^e`, as a polynomial free of `v`.
    pub fn coeff_of(&self, v: VarId, e: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) == e)
            .map(|(m, c)| (m.split(v).1, c.clone()))
            .collect();
        LaurentPoly { terms }
    }

    /// Minimum and maximum exponent of `v` over the terms (`(0, 0)` for zero).
    pub fn degree_range(&self, v: VarId) -> (i32, i32) {
        let mut it = self.terms.iter().map(|t| t.0.exp(v));
        match it.next() {
            None => (0, 0),
            Some(first) => it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))),
        }
    }

    /// Splits into coefficients by powers of `v`, sorted by exponent.
    pub fn by_powers(&self, v: VarId) -> Vec<(i32, LaurentPoly)> {
        let mut groups: HashMap<i32, Vec<(Monomial, BigRat)>> = HashMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            groups.entry(e).or_default().push((rest, c.clone()));
        }
        let mut out: Vec<(i32, LaurentPoly)> = groups
            .into_iter()
            .map(|(e, ts)| (e, LaurentPoly { terms: ts }))
            .collect();
        out.sort_unstable_by_key(|p| p.0);
        out
    }

    /// Substitutes `v -> value` where `value = c * m` is a unit free of `v`.
    pub fn subst(&self, v: VarId, c: &BigRat, m: &Monomial) -> Self {
        assert!(
            !m.contains(v),
            "substituted value must be free of the variable"
        );
        if !self.contains(v) {
            return self.clone();
        }
        Self::from_terms(self.terms.iter().map(|(mm, cc)| {
            let (e, rest) = mm.split(v);
            (rest.mul(&m.pow(e)), cc * &c.pow(e))
        }))
    }

    /// Simultaneous monomial substitution: every variable `v` with `f(v) = Some((c, m))`
    /// is replaced by `c * m`; other variables are kept.
    pub fn subst_map<F: Fn(VarId) -> Option<(BigRat, Monomial)>>(&self, f: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(mm, cc)| {
            let mut coef = cc.clone();
            let mut out = Monomial::one();
            for &(v, e) in mm.pairs() {
                match f(v) {
                    Some((c, m)) => {
                        coef = &coef * &c.pow(e);
                        out = out.mul(&m.pow(e));
                    }
                    None => out = out.mul(&Monomial::var(v, e)),
                }
            }
            (out, coef)
        }))
    }

    /// Replaces `v^g` by `v`; fails when some exponent of `v` is not a multiple of `g`.
    pub fn deflate(&self, v: VarId, g: i32) -> Option<Self> {
        assert!(g > 0);
        if g == 1 {
            return Some(self.clone());
        }
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e % g != 0 {
                return None;
            }
            terms.push((rest.mul(&Monomial::var(v, e / g)), c.clone()));
        }
        Some(Self::from_terms(terms))
    }

    /// Exact quotient `self / d`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        if d.is_zero() {
            return Err(Error::NotDivisible("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((c, m)) = d.as_term() {
            return Ok(self.mul_term(&c.recip(), &m.inv()));
        }
        if d.len() == 2 {
            // d = c0*m0 + c1*m1 = c0*m0*(1 - c*m) with c = -c1/c0, m = m1/m0
            let (m0, c0) = &d.terms[0];
            let (m1, c1) = &d.terms[1];
            let c = -(c1 / c0);
            let m = m1.div(m0);
            return match self.div_binomial(&c, &m) {
                Some(qt) => Ok(qt.mul_term(&c0.recip(), &m0.inv())),
                None => Err(Error::NotDivisible("binomial does not divide".into())),
            };
        }
        self.div_general(d)
    }

    fn div_general(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        let (lead_m, lead_c) = d.terms.last().expect("nonzero divisor");
        let low_bound = self.terms[0].0.div(&d.terms[0].0);
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigRat)> = Vec::new();
        while let Some((m, c)) = rem.terms.last().cloned() {
            let qm = m.div(lead_m);
            if qm < low_bound {
                return Err(Error::NotDivisible("nonzero remainder".into()));
            }
            let qc = &c / lead_c;
            rem = rem.sub(&d.mul_term(&qc, &qm));
            quot.push((qm, qc));
        }
        quot.reverse();
        Ok(Self::from_terms(quot))
    }

    /// Exact quotient by the binomial `1 - c*m`, or `None` when it does not divide.
    pub fn div_binomial(&self, c: &BigRat, m: &Monomial) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        assert!(!m.is_one(), "binomial must have a non-constant monomial");
        let (pivot, mp) = m.leading_var().expect("non-constant");
        // Group terms into fibers {mu * m^n}; each fiber is a univariate polynomial in m.
        let mut fibers: HashMap<Monomial, Vec<(i32, BigRat)>> = HashMap::new();
        for (mu, coef) in &self.terms {
            let e = mu.exp(pivot);
            let n = if mp > 0 {
                e.div_euclid(mp)
            } else {
                -e.div_euclid(-mp)
            };
            let rep = mu.mul(&m.pow(-n));
            fibers.entry(rep).or_default().push((n, coef.clone()));
        }
        let mut out: Vec<(Monomial, BigRat)> = Vec::new();
        for (rep, mut pts) in fibers {
            pts.sort_unstable_by_key(|p| p.0);
            let lo = pts[0].0;
            let hi = pts[pts.len() - 1].0;
            let mut idx = 0;
            let mut prev = BigRat::zero();
            for n in lo..=hi {
                let mut pn = BigRat::zero();
                if idx < pts.len() && pts[idx].0 == n {
                    pn = pts[idx].1.clone();
                    idx += 1;
                }
                let s = &pn + &(c * &prev);
                if n == hi {
                    if !s.is_zero() {
                        return None;
                    }
                } else if !s.is_zero() {
                    out.push((rep.mul(&m.pow(n)), s.clone()));
                }
                prev = s;
            }
        }
        Some(Self::from_terms(out))
    }

    /// Renders the polynomial with the names of `table`, terms in canonical order.
    pub fn render(&self, table: &VarTable) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&m.render(table));
            } else {
                s.push_str(&format!("{}*{}", abs, m.render(table)));
            }
        }
        s
    }

    /// Univariate coefficient list in `v` from degree 0 up; `None` when another
    /// variable occurs or an exponent is negative.
    pub fn univariate_coeffs(&self, v: VarId) -> Option<Vec<BigRat>> {
        let mut out: Vec<BigRat> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if !rest.is_one() || e < 0 {
                return None;
            }
            let e = e as usize;
            if out.len() <= e {
                out.resize(e + 1, BigRat::zero());
            }
            out[e] = c.clone();
        }
        Some(out)
    }

    /// Builds a univariate polynomial in `v` from coefficients of degree 0 up.
    pub fn from_univariate(v: VarId, coeffs: &[BigRat]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(v, i as i32), c.clone())),
        )
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(VarTable::standard()))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(VarTable::standard()))
    }
}

/// Exact quotient `p / d`.
pub fn poly_div_exact(p: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly> {
    p.div_exact(d)
}

/// Substitutes `v -> c*m` in `p`.
pub fn poly_subst(p: &LaurentPoly, v: VarId, c: &BigRat, m: &Monomial) -> LaurentPoly {
    p.subst(v, c, m)
}

/// Coefficient of `v^e` in `p`.
pub fn coeff_of(p: &LaurentPoly, v: VarId, e: i32) -> LaurentPoly {
    p.coeff_of(v, e)
}
