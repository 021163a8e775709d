use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly;

/// Integer Laurent polynomial in `q`.
///
/// Stored densely from the lowest exponent; the first and last stored
/// coefficients are nonzero, the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentInt {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        LaurentInt {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentInt {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, BigInt)>>(terms: I) -> Self {
        let terms: Vec<(i32, BigInt)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::normalized(low, coeffs)
    }

    fn normalized(low: i32, mut coeffs: Vec<BigInt>) -> Self {
        poly::trim(&mut coeffs);
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
        }
        LaurentInt {
            low: low.checked_add(lead_zeros as i32).expect("q-exponent overflow"),
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Single term `c q^e`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest exponent present (0 for the zero polynomial).
    pub fn high(&self) -> i32 {
        if self.is_zero() {
            0
        } else {
            self.low + self.coeffs.len() as i32 - 1
        }
    }

    /// Difference between highest and lowest exponent.
    pub fn width(&self) -> u32 {
        if self.is_zero() {
            0
        } else {
            (self.coeffs.len() - 1) as u32
        }
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        let idx = exp as i64 - self.low as i64;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentInt {
            low: self.low.checked_add(k).expect("q-exponent overflow"),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentInt {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Coefficients as an ordinary polynomial after dividing out `q^low`.
    pub(crate) fn as_poly(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub(crate) fn from_poly(low: i32, coeffs: Vec<BigInt>) -> Self {
        Self::normalized(low, coeffs)
    }

    pub fn content(&self) -> BigInt {
        poly::content(&self.coeffs)
    }

    /// Exact division; `None` unless the quotient is an integer Laurent polynomial.
    pub fn div_exact(&self, other: &LaurentInt) -> Option<LaurentInt> {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = poly::div_exact(&self.coeffs, &other.coeffs)?;
        Some(Self::normalized(self.low - other.low, q))
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        // Horner on the polynomial part, then the monomial shift.
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + BigRational::from_integer(c.clone());
        }
        let p = if self.low >= 0 {
            num_traits::pow::pow(q.clone(), self.low as usize)
        } else {
            num_traits::pow::pow(q.recip(), (-self.low) as usize)
        };
        acc * p
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |a, c| a + c)
    }

    pub fn eval_i64(&self, q: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(q)))
    }

    /// Bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentInt {
            low: -self.high(),
            coeffs,
        }
    }
}

impl Add for &LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        LaurentInt::normalized(low, coeffs)
    }
}

impl Sub for &LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        self + &(-rhs)
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        LaurentInt {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        if self.is_zero() || rhs.is_zero() {
            return LaurentInt::zero();
        }
        let low = self.low.checked_add(rhs.low).expect("q-exponent overflow");
        LaurentInt::normalized(low, poly::mul(&self.coeffs, &rhs.coeffs))
    }
}

impl fmt::Display for LaurentInt {
    /// Human-readable form such as `q^-2 + 3 + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", abs)?;
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{}", e)?,
            }
        }
        Ok(())
    }
}

impl LaurentInt {
    /// Serialized form: space separated `exponent:coefficient` pairs.
    pub fn to_pairs_string(&self) -> String {
        self.terms()
            .map(|(e, c)| format!("{}:{}", e, c))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl FromStr for LaurentInt {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut terms = Vec::new();
        for tok in s.split_whitespace() {
            let (e, c) = tok
                .split_once(':')
                .ok_or_else(|| format!("bad term {tok:?}"))?;
            let e: i32 = e.parse().map_err(|_| format!("bad exponent {e:?}"))?;
            let c: BigInt = c.parse().map_err(|_| format!("bad coefficient {c:?}"))?;
            terms.push((e, c));
        }
        Ok(LaurentInt::from_terms(terms))
    }
}

impl Serialize for LaurentInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_pairs_string())
    }
}

impl<'de> Deserialize<'de> for LaurentInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for LaurentInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentInt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.low, &self.coeffs).cmp(&(other.low, &other.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let p = LaurentInt::from_terms([(-2, 1.into()), (0, 3.into()), (2, 1.into())]);
        assert_eq!(p.to_string(), "q^-2 + 3 + q^2");
        assert_eq!(p.to_pairs_string(), "-2:1 0:3 2:1");
        assert_eq!("-2:1 0:3 2:1".parse::<LaurentInt>().unwrap(), p);
        assert_eq!(LaurentInt::from_terms([(1, (-2).into())]).to_string(), "-2q");
    }

    #[test]
    fn arithmetic_cancels() {
        let a = LaurentInt::from_terms([(-1, 1.into()), (1, 1.into())]);
        let b = &a - &a;
        assert!(b.is_zero());
        let sq = &a * &a;
        assert_eq!(sq.to_string(), "q^-2 + 2 + q^2");
        assert_eq!(sq.div_exact(&a), Some(a.clone()));
        assert_eq!(a.bar(), a);
    }
}
