//! Elliott rational functions: a Laurent polynomial numerator over a product of
//! binomial factors `(1 - c*m)^r`, together with the series order that decides which
//! geometric expansion of each factor is legal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial, VarId, VarTable};
use crate::rat::BigRat;

/// Total order on variables used to decide the smallness of monomials.
///
/// A non-constant monomial is SMALL when the exponent of its lowest-ranked variable is
/// positive and LARGE otherwise. By default the rank of a variable is its id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeriesOrder {
    rank: Option<Arc<Vec<u32>>>,
}

impl SeriesOrder {
    /// The order in which the rank of a variable is its id.
    pub fn standard() -> Self {
        SeriesOrder { rank: None }
    }

    /// An order given by an explicit rank for each variable id.
    pub fn from_ranks(rank: Vec<u32>) -> Self {
        SeriesOrder {
            rank: Some(Arc::new(rank)),
        }
    }

    /// An order listing variables from lowest to highest rank; unlisted variables rank
    /// above all listed ones, in id order.
    pub fn from_vars(vars: &[VarId], nvars: usize) -> Self {
        let mut rank = vec![u32::MAX; nvars];
        for (r, &v) in vars.iter().enumerate() {
            rank[v as usize] = r as u32;
        }
        let mut next = vars.len() as u32;
        for r in rank.iter_mut() {
            if *r == u32::MAX {
                *r = next;
                next += 1;
            }
        }
        Self::from_ranks(rank)
    }

    /// Rank of a variable.
    pub fn rank(&self, v: VarId) -> u32 {
        match &self.rank {
            None => v as u32,
            Some(r) => r.get(v as usize).copied().unwrap_or(v as u32 + 1_000_000),
        }
    }

    /// The lowest-ranked variable of `m` and its exponent.
    pub fn leading(&self, m: &Monomial) -> Option<(VarId, i32)> {
        match &self.rank {
            None => m.leading_var(),
            Some(_) => m.pairs().iter().copied().min_by_key(|p| self.rank(p.0)),
        }
    }

    /// `Some(true)` for SMALL, `Some(false)` for LARGE, `None` for the constant monomial.
    pub fn is_small(&self, m: &Monomial) -> Option<bool> {
        self.leading(m).map(|(_, e)| e > 0)
    }
}

/// The binomial factor `(1 - coeff*mono)^mult`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinFactor {
    /// Nonzero coefficient.
    pub coeff: BigRat,
    /// Non-constant monomial.
    pub mono: Monomial,
    /// Positive multiplicity.
    pub mult: u32,
}

impl BinFactor {
    /// The factor `(1 - c*m)^r`.
    pub fn new(coeff: BigRat, mono: Monomial, mult: u32) -> Self {
        BinFactor { coeff, mono, mult }
    }

    /// The factor `1 - m`.
    pub fn simple(mono: Monomial) -> Self {
        Self::new(BigRat::one(), mono, 1)
    }

    /// The base `1 - c*m` as a polynomial.
    pub fn base_poly(&self) -> LaurentPoly {
        LaurentPoly::one_minus(&self.coeff, &self.mono)
    }

    /// The expanded power `(1 - c*m)^r`.
    pub fn expand(&self) -> LaurentPoly {
        self.base_poly().pow(self.mult)
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        self.mono
            .cmp(&other.mono)
            .then_with(|| self.coeff.cmp(&other.coeff))
    }

    fn same_base(&self, other: &Self) -> bool {
        self.mono == other.mono && self.coeff == other.coeff
    }

    /// Renders as `(1-c*m)^r`.
    pub fn render(&self, table: &VarTable) -> String {
        let neg = self.coeff.is_negative();
        let abs = self.coeff.abs();
        let body = if abs.is_one() {
            self.mono.render(table)
        } else {
            format!("{}*{}", abs, self.mono.render(table))
        };
        let sign = if neg { '+' } else { '-' };
        if self.mult == 1 {
            format!("(1{sign}{body})")
        } else {
            format!("(1{sign}{body})^{}", self.mult)
        }
    }
}

impl fmt::Debug for BinFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(VarTable::standard()))
    }
}

/// An Elliott rational function `num / Π (1 - c_i m_i)^{r_i}`.
///
/// Factors are stored merged and sorted. Each monomial is oriented to be SMALL in the
/// standard order, so equal factors are syntactically identical.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EllRational {
    num: LaurentPoly,
    den: Vec<BinFactor>,
}

impl EllRational {
    /// Zero.
    pub fn zero() -> Self {
        EllRational {
            num: LaurentPoly::zero(),
            den: Vec::new(),
        }
    }

    /// One.
    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    /// A polynomial with empty denominator.
    pub fn from_poly(p: LaurentPoly) -> Self {
        EllRational {
            num: p,
            den: Vec::new(),
        }
    }

    /// A constant.
    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// Builds `num / Π factors` in the stored form described on the type. Constant
    /// factors are folded into the numerator.
    /// No cancellation against the numerator is attempted; see [`EllRational::normalize`].
    pub fn new(num: LaurentPoly, factors: Vec<BinFactor>) -> Result<Self> {
        let mut num = num;
        let mut den: Vec<BinFactor> = Vec::with_capacity(factors.len());
        let order = SeriesOrder::standard();
        for f in factors {
            if f.mult == 0 {
                continue;
            }
            if f.coeff.is_zero() {
                continue;
            }
            if f.mono.is_one() {
                let base = &BigRat::one() - &f.coeff;
                if base.is_zero() {
                    return Err(Error::PoleCreated(format!("factor {f:?} vanishes")));
                }
                num = num.scale(&base.pow(-(f.mult as i32)));
                continue;
            }
            if order.is_small(&f.mono) == Some(false) {
                // 1 - c*m = (-c*m) * (1 - m^{-1}/c)
                let unit_c = (-&f.coeff).pow(-(f.mult as i32));
                let unit_m = f.mono.pow(-(f.mult as i32));
                num = num.mul_term(&unit_c, &unit_m);
                den.push(BinFactor::new(f.coeff.recip(), f.mono.inv(), f.mult));
            } else {
                den.push(f);
            }
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        den.sort_by(|a, b| a.key_cmp(b));
        let mut merged: Vec<BinFactor> = Vec::with_capacity(den.len());
        for f in den {
            match merged.last_mut() {
                Some(last) if last.same_base(&f) => last.mult += f.mult,
                _ => merged.push(f),
            }
        }
        Ok(EllRational { num, den: merged })
    }

    /// Builds `num / Π (1 - m_i)` with unit coefficients.
    pub fn from_monos(num: LaurentPoly, monos: &[Monomial]) -> Result<Self> {
        Self::new(
            num,
            monos.iter().map(|m| BinFactor::simple(m.clone())).collect(),
        )
    }

    /// Numerator.
    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator factors.
    pub fn den(&self) -> &[BinFactor] {
        &self.den
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Total multiplicity of the denominator.
    pub fn den_degree(&self) -> u32 {
        self.den.iter().map(|f| f.mult).sum()
    }

    /// True when `v` occurs in the numerator or in some factor.
    pub fn contains(&self, v: VarId) -> bool {
        self.num.contains(v) || self.den.iter().any(|f| f.mono.contains(v))
    }

    /// Sorted list of occurring variables.
    pub fn vars(&self) -> Vec<VarId> {
        let mut vs = self.num.vars();
        for f in &self.den {
            vs.extend(f.mono.vars());
        }
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Expanded denominator polynomial.
    pub fn den_poly(&self) -> LaurentPoly {
        self.den
            .iter()
            .fold(LaurentPoly::one(), |acc, f| acc.mul(&f.expand()))
    }

    /// Cancels every denominator factor that exactly divides the numerator.
    pub fn normalize(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        // Larger factors are tried first so that, for instance, (1-q^8)/(1-q^2)(1-q^4)
        // cancels against 1-q^4 rather than 1-q^2.
        let weight = |f: &BinFactor| {
            f.mono
                .pairs()
                .iter()
                .map(|p| p.1.unsigned_abs())
                .sum::<u32>()
        };
        let mut order: Vec<&BinFactor> = self.den.iter().collect();
        order.sort_by_key(|f| std::cmp::Reverse(weight(f)));
        for f in order {
            let mut left = f.mult;
            while left > 0 {
                match num.div_binomial(&f.coeff, &f.mono) {
                    Some(qt) => {
                        num = qt;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.push(BinFactor::new(f.coeff.clone(), f.mono.clone(), left));
            }
        }
        den.sort_by(|a, b| a.key_cmp(b));
        EllRational { num, den }
    }

    /// Product without cancellation.
    pub fn mul_raw(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let num = self.num.mul(&other.num);
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        Self::new(num, den).expect("canonical factors never vanish")
    }

    /// Normalized product.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_raw(other).normalize()
    }

    /// Product with a polynomial, without cancellation.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        EllRational {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
    }

    /// Product with a scalar.
    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        EllRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        EllRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Divides by `(1 - c*m)^r`, without cancellation.
    pub fn div_factor(&self, f: BinFactor) -> Result<Self> {
        let mut den = self.den.clone();
        den.push(f);
        Self::new(self.num.clone(), den)
    }

    /// Least common denominator of two factor lists (maximum multiplicity per base).
    fn lcd(a: &[BinFactor], b: &[BinFactor]) -> Vec<BinFactor> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].key_cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let mut f = a[i].clone();
                    f.mult = f.mult.max(b[j].mult);
                    out.push(f);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    /// The cofactor `lcd / den` expanded as a polynomial.
    fn cofactor(lcd: &[BinFactor], den: &[BinFactor]) -> LaurentPoly {
        let mut p = LaurentPoly::one();
        let mut j = 0;
        for f in lcd {
            let mut have = 0;
            while j < den.len() && den[j].key_cmp(f) == Ordering::Less {
                j += 1;
            }
            if j < den.len() && den[j].same_base(f) {
                have = den[j].mult;
            }
            if f.mult > have {
                p = p.mul(&f.base_poly().pow(f.mult - have));
            }
        }
        p
    }

    /// Sum over the least common denominator, without cancellation.
    pub fn add_raw(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if num.is_zero() {
                return Self::zero();
            }
            return EllRational {
                num,
                den: self.den.clone(),
            };
        }
        let lcd = Self::lcd(&self.den, &other.den);
        let num = self
            .num
            .mul(&Self::cofactor(&lcd, &self.den))
            .add(&other.num.mul(&Self::cofactor(&lcd, &other.den)));
        if num.is_zero() {
            return Self::zero();
        }
        EllRational { num, den: lcd }
    }

    /// Normalized sum.
    pub fn add(&self, other: &Self) -> Self {
        self.add_raw(other).normalize()
    }

    /// Normalized difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add_raw(&other.neg()).normalize()
    }

    /// Sum of many terms; terms sharing a denominator are combined first.
    pub fn sum<'a, I: IntoIterator<Item = &'a EllRational>>(terms: I) -> Self {
        let mut groups: BTreeMap<Vec<(Monomial, BigRat, u32)>, EllRational> = BTreeMap::new();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            let key: Vec<(Monomial, BigRat, u32)> = t
                .den
                .iter()
                .map(|f| (f.mono.clone(), f.coeff.clone(), f.mult))
                .collect();
            match groups.get_mut(&key) {
                Some(g) => {
                    g.num = g.num.add(&t.num);
                }
                None => {
                    groups.insert(key, t.clone());
                }
            }
        }
        let mut parts: Vec<EllRational> = groups
            .into_values()
            .filter(|g| !g.num.is_zero())
            .map(|g| g.normalize())
            .collect();
        // Pairwise reduction keeps intermediate denominators balanced.
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len().div_ceil(2));
            let mut it = parts.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            parts = next;
        }
        parts.pop().unwrap_or_else(Self::zero)
    }

    /// Substitutes `v -> c*m` (a unit free of `v`).
    pub fn subst_monomial(&self, v: VarId, c: &BigRat, m: &Monomial) -> Result<Self> {
        if m.contains(v) {
            return Err(Error::PreconditionViolated(
                "substituted value contains the variable".into(),
            ));
        }
        if !self.contains(v) {
            return Ok(self.clone());
        }
        let map = |w: VarId| {
            if w == v {
                Some((c.clone(), m.clone()))
            } else {
                None
            }
        };
        self.subst_map(&map)
    }

    /// Simultaneous monomial substitution of several variables.
    pub fn subst_map<F: Fn(VarId) -> Option<(BigRat, Monomial)>>(&self, f: &F) -> Result<Self> {
        let num = self.num.subst_map(f);
        let mut factors = Vec::with_capacity(self.den.len());
        for fac in &self.den {
            let p = LaurentPoly::term(fac.coeff.clone(), fac.mono.clone()).subst_map(f);
            let (c, m) = p.as_term().expect("image of a term is a term");
            if m.is_one() && c.is_one() {
                return Err(Error::PoleCreated(format!("factor {fac:?} becomes 1-1")));
            }
            factors.push(BinFactor::new(c.clone(), m.clone(), fac.mult));
        }
        Ok(Self::new(num, factors)?.normalize())
    }

    /// Replaces `v^g` by `v`.
    pub fn deflate(&self, v: VarId, g: i32) -> Result<Self> {
        if g <= 0 {
            return Err(Error::PreconditionViolated(
                "deflation factor must be positive".into(),
            ));
        }
        let fail =
            || Error::NotDeflatable(format!("exponent of variable {v} not a multiple of {g}"));
        let num = self.num.deflate(v, g).ok_or_else(fail)?;
        let mut factors = Vec::with_capacity(self.den.len());
        for fac in &self.den {
            let (e, rest) = fac.mono.split(v);
            if e % g != 0 {
                return Err(fail());
            }
            factors.push(BinFactor::new(
                fac.coeff.clone(),
                rest.mul(&Monomial::var(v, e / g)),
                fac.mult,
            ));
        }
        Self::new(num, factors)
    }

    /// Largest `g` such that every exponent of `v` is a multiple of `g` (0 when absent).
    pub fn exponent_gcd(&self, v: VarId) -> i32 {
        let mut g = 0;
        for (m, _) in self.num.terms() {
            g = crate::laurent::gcd(g, m.exp(v).abs());
        }
        for f in &self.den {
            g = crate::laurent::gcd(g, f.mono.exp(v).abs());
        }
        g
    }

    /// True when both sides denote the same rational function.
    pub fn equal_as_rational(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let lcd = Self::lcd(&self.den, &other.den);
        let lhs = self.num.mul(&Self::cofactor(&lcd, &self.den));
        let rhs = other.num.mul(&Self::cofactor(&lcd, &other.den));
        lhs == rhs
    }

    /// Power series coefficients of a function of the single variable `v`, degrees `0..=d`.
    pub fn series(&self, v: VarId, d: usize) -> Result<Vec<BigRat>> {
        let (lo, _) = self.num.degree_range(v);
        if self.vars().iter().any(|&w| w != v) {
            return Err(Error::PreconditionViolated(
                "series expansion needs a univariate function".into(),
            ));
        }
        if lo < 0 {
            return Err(Error::PreconditionViolated(
                "negative power in the numerator".into(),
            ));
        }
        let mut coeffs = vec![BigRat::zero(); d + 1];
        for (m, c) in self.num.terms() {
            let e = m.exp(v) as usize;
            if e <= d {
                coeffs[e] = c.clone();
            }
        }
        for f in &self.den {
            let j = f.mono.exp(v);
            if j <= 0 {
                return Err(Error::PreconditionViolated(
                    "factor without positive degree".into(),
                ));
            }
            let j = j as usize;
            for _ in 0..f.mult {
                // multiply by 1/(1 - c v^j): b[n] = a[n] + c b[n-j]
                for n in j..=d {
                    let add = &f.coeff * &coeffs[n - j];
                    coeffs[n] = &coeffs[n] + &add;
                }
            }
        }
        Ok(coeffs)
    }

    /// Renders as `(num)/(1-m1)^r1(1-m2)...`.
    pub fn render(&self, table: &VarTable) -> String {
        if self.den.is_empty() {
            return self.num.render(table);
        }
        let num = self.num.render(table);
        let num = if self.num.len() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den: String = self.den.iter().map(|f| f.render(table)).collect();
        format!("{num}/{den}")
    }

    /// Parses the textual grammar `rational := poly ("/" factor+)?`.
    pub fn parse(s: &str, table: &VarTable) -> Result<Self> {
        parse::parse_rational(s, table)
    }
}

impl fmt::Debug for EllRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(VarTable::standard()))
    }
}

impl fmt::Display for EllRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(VarTable::standard()))
    }
}

/// Normalized product.
pub fn ell_mul(f: &EllRational, g: &EllRational) -> EllRational {
    f.mul(g)
}

/// Normalized sum.
pub fn ell_add(f: &EllRational, g: &EllRational) -> EllRational {
    f.add(g)
}

/// Cancels denominator factors dividing the numerator.
pub fn normalize(f: &EllRational) -> EllRational {
    f.normalize()
}

/// Substitutes `v -> c*m`.
pub fn subst_monomial(f: &EllRational, v: VarId, c: &BigRat, m: &Monomial) -> Result<EllRational> {
    f.subst_monomial(v, c, m)
}

/// Replaces `v^g` by `v`.
pub fn deflate(f: &EllRational, v: VarId, g: i32) -> Result<EllRational> {
    f.deflate(v, g)
}

/// Rational-function equality.
pub fn equal_as_rational(f: &EllRational, g: &EllRational) -> bool {
    f.equal_as_rational(g)
}

mod parse {
    use super::*;

    struct Parser<'a> {
        s: &'a [u8],
        pos: usize,
        table: &'a VarTable,
    }

    impl<'a> Parser<'a> {
        fn err<T>(&self, what: &str) -> Result<T> {
            Err(Error::Parse(format!("{what} at offset {}", self.pos)))
        }

        fn skip_ws(&mut self) {
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.s.get(self.pos).copied()
        }

        fn peek_at(&mut self, off: usize) -> Option<u8> {
            self.skip_ws();
            let mut p = self.pos;
            let mut k = 0;
            while p < self.s.len() {
                if !self.s[p].is_ascii_whitespace() {
                    if k == off {
                        return Some(self.s[p]);
                    }
                    k += 1;
                }
                p += 1;
            }
            None
        }

        fn eat(&mut self, c: u8) -> bool {
            if self.peek() == Some(c) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn expect(&mut self, c: u8) -> Result<()> {
            if self.eat(c) {
                Ok(())
            } else {
                self.err(&format!("expected `{}`", c as char))
            }
        }

        fn integer(&mut self) -> Result<String> {
            self.skip_ws();
            let start = self.pos;
            if self.pos < self.s.len() && (self.s[self.pos] == b'-' || self.s[self.pos] == b'+') {
                self.pos += 1;
            }
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
            if txt.is_empty() || txt == "-" || txt == "+" {
                return self.err("expected integer");
            }
            Ok(txt.to_string())
        }

        fn small_int(&mut self) -> Result<i32> {
            let t = self.integer()?;
            t.parse()
                .map_err(|_| Error::Parse(format!("exponent `{t}` out of range")))
        }

        /// coeff := int ("/" int)?   (a "/" followed by "(" is not part of the coefficient)
        fn coefficient(&mut self) -> Result<BigRat> {
            let n = self.integer()?;
            let mut txt = n;
            if self.peek() == Some(b'/') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
                let d = self.integer()?;
                txt = format!("{txt}/{d}");
            }
            txt.parse::<BigRat>()
                .map_err(|e| Error::Parse(e.to_string()))
        }

        fn ident(&mut self) -> Result<VarId> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len()
                && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("");
            match self.table.id(name) {
                Some(v) => Ok(v),
                None => Err(Error::Parse(format!("unknown variable `{name}`"))),
            }
        }

        /// term := (coeff | var ("^" int)?) (("*" | "/")? (coeff | var ("^" int)?))*
        /// where "/" is only allowed before a variable.
        fn term(&mut self) -> Result<(BigRat, Monomial)> {
            let mut c = BigRat::one();
            let mut m = Monomial::one();
            let mut any = false;
            let mut divide = false;
            loop {
                match self.peek() {
                    Some(ch) if ch.is_ascii_digit() && !divide => {
                        c = &c * &self.coefficient()?;
                    }
                    Some(ch) if ch.is_ascii_alphabetic() => {
                        let v = self.ident()?;
                        let e = if self.eat(b'^') { self.small_int()? } else { 1 };
                        m = m.mul(&Monomial::var(v, if divide { -e } else { e }));
                        divide = false;
                    }
                    _ => {
                        if !any {
                            return self.err("expected term");
                        }
                        return Ok((c, m));
                    }
                }
                any = true;
                if self.peek() == Some(b'/')
                    && self.peek_at(1).is_some_and(|c| c.is_ascii_alphabetic())
                {
                    self.pos += 1;
                    divide = true;
                    continue;
                }
                if !self.eat(b'*') {
                    match self.peek() {
                        Some(ch) if ch.is_ascii_alphanumeric() => continue,
                        _ => return Ok((c, m)),
                    }
                }
            }
        }

        /// poly := ("+"|"-")? term (("+"|"-") term)*
        fn poly(&mut self) -> Result<LaurentPoly> {
            let mut terms = Vec::new();
            let mut sign = BigRat::one();
            if self.eat(b'-') {
                sign = -sign;
            } else {
                self.eat(b'+');
            }
            loop {
                let (c, m) = self.term()?;
                terms.push((m, &sign * &c));
                if self.eat(b'+') {
                    sign = BigRat::one();
                } else if self.eat(b'-') {
                    sign = -BigRat::one();
                } else {
                    break;
                }
            }
            Ok(LaurentPoly::from_terms(terms))
        }

        /// factor := "(1" ("-"|"+") term ")" ("^" int)?
        fn factor(&mut self) -> Result<BinFactor> {
            self.expect(b'(')?;
            let one = self.integer()?;
            if one != "1" {
                return self.err("denominator factor must start with `1`");
            }
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else {
                return self.err("expected `-` or `+` in factor");
            };
            let (c, m) = self.term()?;
            self.expect(b')')?;
            let r = if self.eat(b'^') { self.small_int()? } else { 1 };
            if r <= 0 {
                return self.err("factor multiplicity must be positive");
            }
            let c = if neg { c } else { -c };
            Ok(BinFactor::new(c, m, r as u32))
        }

        fn numerator(&mut self) -> Result<LaurentPoly> {
            if self.peek() == Some(b'(') {
                self.pos += 1;
                let p = self.poly()?;
                self.expect(b')')?;
                Ok(p)
            } else {
                self.poly()
            }
        }
    }

    pub(super) fn parse_rational(s: &str, table: &VarTable) -> Result<EllRational> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
            table,
        };
        let num = p.numerator()?;
        let mut factors = Vec::new();
        if p.eat(b'/') {
            while p.peek() == Some(b'(') {
                factors.push(p.factor()?);
            }
            if factors.is_empty() {
                return p.err("expected denominator factor");
            }
        }
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        EllRational::new(num, factors)
    }
}
