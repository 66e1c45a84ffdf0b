use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::laurent::{poly_gcd, Laurent, Point};
use super::ExactError;

/// Element of Q(v), kept as `num / den` with `den` a polynomial with nonzero
/// constant term, coprime to `num`, primitive jointly with `num`, and with
/// positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalScalar {
    num: Laurent,
    den: Laurent,
}

impl RationalScalar {
    pub fn zero() -> Self {
        RationalScalar { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        Laurent::one().into()
    }

    pub fn new(num: Laurent, den: Laurent) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let e = den.min_exp().unwrap();
        let mut num = num.shift(-e);
        let mut den = den.shift(-e);
        if den.len() > 1 {
            let s = num.min_exp().unwrap();
            let g = poly_gcd(&num.shift(-s), &den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let c = num.content().gcd(&den.content());
        let c = if den.leading_coeff().unwrap().is_negative() { -c } else { c };
        if c != BigInt::from(1) {
            num = num.div_int_exact(&c).unwrap();
            den = den.div_int_exact(&c).unwrap();
        }
        RationalScalar { num, den }
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&Laurent> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn to_laurent(&self) -> Result<Laurent, ExactError> {
        self.as_laurent().cloned().ok_or(ExactError::NotLaurent)
    }

    pub fn bar(&self) -> Self {
        if self.is_laurent() {
            return self.num.bar().into();
        }
        Self::normalized(self.num.bar(), self.den.bar())
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    /// Order of vanishing at `v = 0`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        // den(0) != 0 by normalization
        self.num.min_exp()
    }

    /// Value at `v = 0`; `None` if there is a pole there.
    pub fn eval_at_zero(&self) -> Option<BigRational> {
        match self.valuation() {
            None => Some(BigRational::zero()),
            Some(k) if k < 0 => None,
            Some(_) => Some(BigRational::new(self.num.coeff(0), self.den.coeff(0))),
        }
    }

    /// Value at `v = +-1`; `None` if the denominator vanishes there.
    pub fn specialize(&self, at: Point) -> Option<BigRational> {
        let d = self.den.specialize(at);
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(self.num.specialize(at), d))
    }

    /// The degree `<= 0` part of the Laurent expansion at `v = 0`. Errors if
    /// one of those series coefficients is not an integer.
    pub fn nonpositive_series_part(&self) -> Result<Laurent, ExactError> {
        if self.is_laurent() {
            return Ok(self.num.nonpositive_part());
        }
        let s = self.num.min_exp().unwrap();
        if s > 0 {
            return Ok(Laurent::zero());
        }
        let n = self.num.shift(-s);
        let d0 = BigRational::from_integer(self.den.coeff(0));
        let count = (-s) as usize + 1;
        let mut t: Vec<BigRational> = Vec::with_capacity(count);
        for k in 0..count {
            let mut acc = BigRational::from_integer(n.coeff(k as i64));
            for j in 1..=k {
                let dj = self.den.coeff(j as i64);
                if !dj.is_zero() {
                    acc -= &t[k - j] * BigRational::from_integer(dj);
                }
            }
            t.push(acc / &d0);
        }
        let mut out = Laurent::zero();
        for (k, c) in t.into_iter().enumerate() {
            if !c.is_integer() {
                return Err(ExactError::NotIntegral);
            }
            out = &out + &Laurent::monomial(c.to_integer(), s + k as i64);
        }
        Ok(out)
    }

    /// Coefficients of `v^lo, ..., v^hi` in the Laurent expansion at `v = 0`.
    pub fn series_coeffs(&self, lo: i64, hi: i64) -> Vec<BigRational> {
        let width = (hi - lo + 1).max(0) as usize;
        let Some(s) = self.num.min_exp() else { return alloc::vec![BigRational::zero(); width] };
        let count = (hi - s + 1).max(0) as usize;
        let n = self.num.shift(-s);
        let d0 = BigRational::from_integer(self.den.coeff(0));
        let mut t: Vec<BigRational> = Vec::with_capacity(count);
        for k in 0..count {
            let mut acc = BigRational::from_integer(n.coeff(k as i64));
            for j in 1..=k {
                let dj = self.den.coeff(j as i64);
                if !dj.is_zero() {
                    acc -= &t[k - j] * BigRational::from_integer(dj);
                }
            }
            t.push(acc / &d0);
        }
        (lo..=hi).map(|e| if e < s { BigRational::zero() } else { t[(e - s) as usize].clone() }).collect()
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = RationalScalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for RationalScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Laurent> for RationalScalar {
    fn from(num: Laurent) -> Self {
        RationalScalar { num, den: Laurent::one() }
    }
}

impl From<i64> for RationalScalar {
    fn from(c: i64) -> Self {
        Laurent::constant(c).into()
    }
}

impl Add<&RationalScalar> for &RationalScalar {
    type Output = RationalScalar;
    fn add(self, rhs: &RationalScalar) -> RationalScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return (&self.num + &rhs.num).into();
            }
            return RationalScalar::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalScalar::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RationalScalar> for &RationalScalar {
    type Output = RationalScalar;
    fn sub(self, rhs: &RationalScalar) -> RationalScalar {
        self + &(-rhs)
    }
}

impl Mul<&RationalScalar> for &RationalScalar {
    type Output = RationalScalar;
    fn mul(self, rhs: &RationalScalar) -> RationalScalar {
        if self.is_zero() || rhs.is_zero() {
            return RationalScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return (&self.num * &rhs.num).into();
        }
        RationalScalar::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RationalScalar> for &RationalScalar {
    type Output = RationalScalar;
    /// Panics on division by zero; use `recip` for a checked inverse.
    fn div(self, rhs: &RationalScalar) -> RationalScalar {
        self * &rhs.recip().expect("division by zero in Q(v)")
    }
}

impl Neg for &RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        RationalScalar { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalScalar {
            type Output = RationalScalar;
            fn $m(self, rhs: RationalScalar) -> RationalScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        -&self
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalScalar({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> Laurent {
        s.parse().unwrap()
    }

    fn rs(n: &str, d: &str) -> RationalScalar {
        RationalScalar::new(lp(n), lp(d)).unwrap()
    }

    #[test]
    fn normalization_cancels_common_factors() {
        let x = rs("v^2 - 1", "2v - 2");
        assert_eq!(x.numerator(), &lp("v + 1"));
        assert_eq!(x.denominator(), &lp("2"));
        let y = rs("v^-1", "-v^-3 - v^-1");
        assert_eq!(y, rs("-v^2", "1 + v^2"));
        assert_eq!(rs("v^3 - v", "v - v^-1").as_laurent(), Some(&lp("v^2")));
    }

    #[test]
    fn valuation_and_value_at_zero() {
        let x = rs("v^-1 + 3", "1 + v");
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.eval_at_zero(), None);
        let y = rs("2 + v", "3 + v^2");
        assert_eq!(y.eval_at_zero(), Some(BigRational::new(2.into(), 3.into())));
    }

    #[test]
    fn series_part_of_rational_function() {
        // v^-2 / (1 - v) = v^-2 + v^-1 + 1 + v + ...
        let x = rs("v^-2", "1 - v");
        assert_eq!(x.nonpositive_series_part().unwrap(), lp("v^-2 + v^-1 + 1"));
        assert_eq!(rs("v^-1", "2 + v").nonpositive_series_part(), Err(ExactError::NotIntegral));
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::zero();
        assert_eq!(x.series_coeffs(-3, 1), alloc::vec![zero, one.clone(), one.clone(), one.clone(), one]);
        // 1 / (2 + v) = 1/2 - v/4 + ...
        let c = rs("1", "2 + v").series_coeffs(0, 1);
        assert_eq!(c[1], BigRational::new((-1).into(), 4.into()));
    }

    fn arb_laurent() -> impl Strategy<Value = Laurent> {
        proptest::collection::vec((-3i64..=3, -4i64..=4), 0..4).prop_map(Laurent::from_terms)
    }

    fn arb_rat() -> impl Strategy<Value = RationalScalar> {
        (arb_laurent(), arb_laurent())
            .prop_filter("nonzero den", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RationalScalar::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn bar_commutes_with_arithmetic(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn representation_is_canonical(n in arb_laurent(), d in arb_laurent(), k in arb_laurent()) {
            prop_assume!(!d.is_zero() && !k.is_zero());
            let a = RationalScalar::new(n.clone(), d.clone()).unwrap();
            let b = RationalScalar::new(&n * &k, &d * &k).unwrap();
            prop_assert_eq!(a.numerator(), b.numerator());
            prop_assert_eq!(a.denominator(), b.denominator());
        }
    }
}
