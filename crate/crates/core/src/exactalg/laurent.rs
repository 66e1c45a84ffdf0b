use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Where a Laurent polynomial may be specialized to an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Point {
    PlusOne,
    MinusOne,
}

/// Element of Z[v, v^-1], stored sparsely with no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^e`.
    pub fn monomial<T: Into<BigInt>>(c: T, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut out = Laurent::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&0))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Largest absolute exponent, 0 for the zero polynomial.
    pub fn max_abs_exp(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => a.abs().max(b.abs()),
            _ => 0,
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    pub fn specialize(&self, at: Point) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            match at {
                Point::PlusOne => acc += c,
                Point::MinusOne => {
                    if e.rem_euclid(2) == 0 {
                        acc += c
                    } else {
                        acc -= c
                    }
                }
            }
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Laurent::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// gcd of the integer coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division by an integer; errors if some coefficient is not divisible.
    pub fn div_int_exact(&self, d: &BigInt) -> Result<Self, ExactError> {
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(ExactError::InexactDivision);
            }
            terms.insert(*e, q);
        }
        Ok(Laurent { terms })
    }

    /// Exact quotient in Z[v, v^-1]; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Laurent) -> Result<Laurent, ExactError> {
        if d.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Laurent::zero());
        }
        if d.len() == 1 {
            let (e, c) = d.terms().next().unwrap();
            return Ok(self.div_int_exact(c)?.shift(-e));
        }
        // Both sides normalized to polynomials with a nonzero constant term;
        // the Laurent quotient is then an honest polynomial quotient.
        let sa = self.min_exp().unwrap();
        let sd = d.min_exp().unwrap();
        let a = self.shift(-sa);
        let b = d.shift(-sd);
        let q = poly_div_exact(&a, &b)?;
        Ok(q.shift(sa - sd))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        self.div_int_exact(&c).expect("content divides")
    }

    /// The bar-invariant completion `a_0 + sum_{k>0} a_{-k} (v^k + v^-k)` of the
    /// nonpositive-degree part.
    pub fn symmetric_correction(&self) -> Laurent {
        let mut out = Laurent::zero();
        for (e, c) in &self.terms {
            if *e > 0 {
                continue;
            }
            out.add_term(*e, c.clone());
            if *e < 0 {
                out.add_term(-*e, c.clone());
            }
        }
        out
    }

    /// Terms of degree `<= 0`.
    pub fn nonpositive_part(&self) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| **e <= 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }
}

fn poly_div_exact(a: &Laurent, b: &Laurent) -> Result<Laurent, ExactError> {
    let db = b.max_exp().unwrap();
    let lb = b.leading_coeff().unwrap().clone();
    let mut rem = a.clone();
    let mut q = Laurent::zero();
    while let Some(dr) = rem.max_exp() {
        if dr < db {
            return Err(ExactError::InexactDivision);
        }
        let (c, r) = rem.leading_coeff().unwrap().div_rem(&lb);
        if !r.is_zero() {
            return Err(ExactError::InexactDivision);
        }
        let t = Laurent::monomial(c, dr - db);
        rem -= &(&t * b);
        q += &t;
    }
    Ok(q)
}

/// Pseudo-remainder of `a` by `b` with both treated as polynomials in `v`.
fn pseudo_rem(a: &Laurent, b: &Laurent) -> Laurent {
    let db = b.max_exp().unwrap();
    let lb = b.leading_coeff().unwrap().clone();
    let mut r = a.clone();
    while let Some(dr) = r.max_exp() {
        if dr < db {
            break;
        }
        let lr = r.leading_coeff().unwrap().clone();
        r = &r.scale(&lb) - &b.shift(dr - db).scale(&lr);
    }
    r
}

fn strip_v(p: &Laurent) -> Laurent {
    match p.min_exp() {
        Some(e) => p.shift(-e),
        None => Laurent::zero(),
    }
}

/// Primitive gcd over Z[v] of two polynomials whose constant terms are
/// nonzero. The result has positive leading coefficient.
pub(crate) fn poly_gcd(a: &Laurent, b: &Laurent) -> Laurent {
    let (mut a, mut b) = (strip_v(a).primitive(), strip_v(b).primitive());
    if a.max_exp() < b.max_exp() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.max_exp() == Some(0) {
            return Laurent::one();
        }
        let r = strip_v(&pseudo_rem(&a, &b)).primitive();
        a = b;
        b = r;
    }
    a.primitive()
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(mut self, rhs: Laurent) -> Laurent {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Laurent::constant(c)
    }
}

impl From<BigInt> for Laurent {
    fn from(c: BigInt) -> Self {
        Laurent::constant(c)
    }
}

fn fmt_monomial(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => String::from("v"),
        _ => alloc::format!("v^{}", e),
    }
}

impl fmt::Display for Laurent {
    /// Highest degree first, e.g. `v^4 + v^2 + 2 + v^-2 + v^-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = fmt_monomial(*e);
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self)
    }
}

/// Parse the format produced by `Display`.
impl core::str::FromStr for Laurent {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ExactError::Parse(String::from(s)));
        }
        let bad = || ExactError::Parse(String::from(s));
        let mut out = Laurent::zero();
        // split into signed terms, keeping a '-' that belongs to an exponent
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut pieces = Vec::new();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-1, &piece[1..]),
                Some(b'+') => (1, &piece[1..]),
                _ => (1, piece),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff, exp) = match body.find('v') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = if pos == 0 {
                        BigInt::one()
                    } else {
                        body[..pos].parse::<BigInt>().map_err(|_| bad())?
                    };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else if let Some(x) = rest.strip_prefix('^') {
                        x.parse::<i64>().map_err(|_| bad())?
                    } else {
                        return Err(bad());
                    };
                    (c, e)
                }
            };
            out.add_term(exp, coeff * sign);
        }
        Ok(out)
    }
}
