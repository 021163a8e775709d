use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentInt;
use super::poly;

/// Exact element of Q(q).
///
/// Canonical form: `den` has lowest exponent 0 and positive leading
/// coefficient, `num` and `den` are coprime in Z[q] (q-powers live in `num`).
/// Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RatFunc {
    num: LaurentInt,
    den: LaurentInt,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentInt::zero(),
            den: LaurentInt::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: LaurentInt::one(),
            den: LaurentInt::one(),
        }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_laurent(LaurentInt::monomial(c, 0))
    }

    pub fn q_pow(e: i32) -> Self {
        Self::from_laurent(LaurentInt::q_pow(e))
    }

    /// `c q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        Self::from_laurent(LaurentInt::monomial(c, e))
    }

    pub fn from_laurent(num: LaurentInt) -> Self {
        RatFunc {
            num,
            den: LaurentInt::one(),
        }
    }

    pub fn new(num: LaurentInt, den: LaurentInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let shift = den.low();
        let den = den.shift(-shift);
        let num = num.shift(-shift);
        if den.is_monomial() {
            // den = c: fold the integer into the numerator when possible
            let c = den.leading_coeff().unwrap().clone();
            return Self::with_integer_den(num, c);
        }
        let g = poly::gcd(num.as_poly(), den.as_poly());
        let (num, den) = if g.len() > 1 {
            (
                LaurentInt::from_poly(num.low(), poly::div_exact(num.as_poly(), &g).unwrap()),
                LaurentInt::from_poly(0, poly::div_exact(den.as_poly(), &g).unwrap()),
            )
        } else {
            (num, den)
        };
        let c = num.content().gcd(&den.content());
        let (mut num, mut den) = if c.is_one() {
            (num, den)
        } else {
            (
                LaurentInt::from_poly(num.low(), poly::scale_div(num.as_poly(), &c)),
                LaurentInt::from_poly(0, poly::scale_div(den.as_poly(), &c)),
            )
        };
        if den.leading_coeff().unwrap().is_negative() {
            num = -&num;
            den = -&den;
        }
        RatFunc { num, den }
    }

    fn with_integer_den(num: LaurentInt, c: BigInt) -> Self {
        let g = num.content().gcd(&c);
        let (mut num, mut c) = if g.is_one() {
            (num, c)
        } else {
            (
                LaurentInt::from_poly(num.low(), poly::scale_div(num.as_poly(), &g)),
                c / g,
            )
        };
        if c.is_negative() {
            num = -&num;
            c = -c;
        }
        RatFunc {
            num,
            den: LaurentInt::monomial(c, 0),
        }
    }

    pub fn numer(&self) -> &LaurentInt {
        &self.num
    }

    pub fn denom(&self) -> &LaurentInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is an integer Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentInt> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn inv(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(q) / d)
    }

    /// Value at q = 1, which exists for every quantum integer and binomial.
    pub fn at_one(&self) -> Option<BigRational> {
        let d = self.den.at_one();
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(self.num.at_one(), d))
    }

    pub fn bar(&self) -> RatFunc {
        RatFunc::new(self.num.bar(), self.den.bar())
    }

    /// `self * q^k`.
    pub fn shift(&self, k: i32) -> RatFunc {
        RatFunc {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentInt> for RatFunc {
    fn from(p: LaurentInt) -> Self {
        RatFunc::from_laurent(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_int(c)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_laurent(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_laurent(&self.num * &rhs.num);
        }
        if self.num.is_monomial() && self.den.is_one() {
            // c q^e * (n/d): only the integer c can cancel against d
            let c = self.num.leading_coeff().unwrap();
            let e = self.num.low();
            let shifted = RatFunc {
                num: rhs.num.shift(e),
                den: rhs.den.clone(),
            };
            if c.is_one() {
                return shifted;
            }
            return RatFunc::new(shifted.num.scale(c), shifted.den);
        }
        if rhs.num.is_monomial() && rhs.den.is_one() {
            return rhs * self;
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero");
        if rhs.den.is_one() && rhs.num.is_monomial() {
            let c = rhs.num.leading_coeff().unwrap();
            return RatFunc::new(
                self.num.shift(-rhs.num.low()),
                self.den.scale(c),
            );
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let paren = |p: &LaurentInt| {
                if p.terms().count() > 1 {
                    format!("({})", p)
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", paren(&self.num), paren(&self.den))
        }
    }
}

/// Quantum integer `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn qint(n: i64, d: u32) -> RatFunc {
    let d = d as i64;
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.abs();
    // q^{d(m-1)} + q^{d(m-3)} + ... + q^{-d(m-1)}
    let terms = (0..m).map(|k| (((m - 1 - 2 * k) * d) as i32, BigInt::from(sign)));
    RatFunc::from_laurent(LaurentInt::from_terms(terms))
}

/// Quantum factorial `[n]_{q^d}!`.
pub fn qfactorial(n: u32, d: u32) -> RatFunc {
    (1..=n as i64).fold(RatFunc::one(), |acc, k| &acc * &qint(k, d))
}

/// Gaussian binomial `[n choose k]_{q^d}`; `None` when `k` is out of range.
pub fn qbinomial(n: u32, k: u32, d: u32) -> Option<RatFunc> {
    if k > n {
        return None;
    }
    let mut num = RatFunc::one();
    let mut den = RatFunc::one();
    for j in 0..k {
        num = &num * &qint((n - j) as i64, d);
        den = &den * &qint((j + 1) as i64, d);
    }
    Some(&num / &den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentInt {
        LaurentInt::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(2, 1).to_string(), "q^-1 + q");
        assert!(qint(0, 3).is_zero());
        assert!(qint(1, 2).is_one());
        assert_eq!(qint(3, 2), RatFunc::from_laurent(lp(&[(-4, 1), (0, 1), (4, 1)])));
        // defining fraction, computed independently
        let frac = RatFunc::new(lp(&[(6, 1), (-6, -1)]), lp(&[(2, 1), (-2, -1)]));
        assert_eq!(qint(3, 2), frac);
        assert_eq!(qint(-2, 1), -qint(2, 1));
    }

    #[test]
    fn binomials() {
        assert!(qbinomial(5, 0, 1).unwrap().is_one());
        assert_eq!(qbinomial(2, 1, 1).unwrap(), qint(2, 1));
        let b = qbinomial(4, 2, 1).unwrap();
        assert!(b.is_laurent());
        assert_eq!(b, b.bar());
        assert_eq!(b.at_one().unwrap(), BigRational::from_integer(6.into()));
        assert!(qbinomial(2, 3, 1).is_none());
    }

    #[test]
    fn canonical_form_makes_equality_structural() {
        let a = RatFunc::new(lp(&[(0, 2), (1, 2)]), lp(&[(0, 4)]));
        let b = RatFunc::new(lp(&[(3, 1), (4, 1)]), lp(&[(3, 2)]));
        assert_eq!(a, b);
        let c = RatFunc::new(lp(&[(0, -1), (2, 1)]), lp(&[(0, 1), (1, 1)]));
        assert_eq!(c, RatFunc::from_laurent(lp(&[(0, -1), (1, 1)])));
        let d = RatFunc::new(lp(&[(0, 1)]), lp(&[(0, -1), (1, -1)]));
        assert!(d.denom().leading_coeff().unwrap().is_positive());
    }
}
