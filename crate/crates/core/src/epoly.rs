//! Sparse bivariate polynomials with big-integer coefficients.
//!
//! An [`EPolynomial`] is the generating function
//! `E(M) = sum (-1)^(k-p-q) h^{p,q}(H^k_c(M)) x^p y^q`, so compact smooth
//! projective pieces contribute with nonnegative coefficients. Exponents are
//! ordinary (nonnegative); Laurent terms are refused at construction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::EpolyError;

/// Exponent pair `(p, q)` of the monomial `x^p y^q`.
pub type Exponent = (u32, u32);

/// Exact polynomial in `x`, `y` with integer coefficients.
///
/// Terms with a zero coefficient are never stored, so structural equality is
/// coefficient-wise equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EPolynomial {
    terms: BTreeMap<Exponent, BigInt>,
}

impl EPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c * x^p * y^q`.
    pub fn monomial(p: u32, q: u32, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term((p, q), c.into());
        out
    }

    /// `x`.
    pub fn x() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `y`.
    pub fn y() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// `(xy)^k`.
    pub fn xy_power(k: u32) -> Self {
        Self::monomial(k, k, 1)
    }

    /// Builds a polynomial from signed exponents, rejecting Laurent terms.
    /// Repeated exponent pairs are summed.
    pub fn from_terms<I, C>(terms: I) -> Result<Self, EpolyError>
    where
        I: IntoIterator<Item = (i64, i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (p, q, c) in terms {
            let (pp, qq) = match (u32::try_from(p), u32::try_from(q)) {
                (Ok(pp), Ok(qq)) => (pp, qq),
                _ => return Err(EpolyError::NegativeExponent { p, q }),
            };
            out.add_term((pp, qq), c.into());
        }
        Ok(out)
    }

    fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^p y^q` (zero when absent).
    pub fn coeff(&self, p: u32, q: u32) -> BigInt {
        self.terms.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Nonzero terms in `(p, q)` ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Multiplies by `(xy)^k`.
    pub fn scale_monomial(&self, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(p, q), c)| ((p + k, q + k), c.clone()))
                .collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact substitution `x = x0`, `y = y0`.
    pub fn eval(&self, x0: &BigRational, y0: &BigRational) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (&(p, q), c)| {
                let term = BigRational::from_integer(c.clone())
                    * num_traits::pow(x0.clone(), p as usize)
                    * num_traits::pow(y0.clone(), q as usize);
                acc + term
            })
    }

    /// Polynomial with `x` and `y` exchanged.
    pub fn swap_xy(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(p, q), c)| ((q, p), c.clone()))
                .collect(),
        }
    }

    /// Hodge symmetry `h^{p,q} = h^{q,p}`.
    pub fn is_xy_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(p, q), c)| self.terms.get(&(q, p)) == Some(c))
    }

    /// Largest `k` with `(xy)^k` dividing the polynomial; `None` for zero.
    pub fn xy_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|&(p, q)| p.min(q)).min()
    }

    /// Exact division by `(xy)^k`, or `None` if some term has lower degree.
    pub fn div_xy_power(&self, k: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (&(p, q), c) in &self.terms {
            if p < k || q < k {
                return None;
            }
            terms.insert((p - k, q - k), c.clone());
        }
        Some(Self { terms })
    }

    /// JSON form: array of `[p, q, "coefficient"]` in canonical order.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("EPolynomial serialization is infallible")
    }
}

/// `(1+x)^d (1+y)^d`, the E-polynomial of a `d`-dimensional complex torus.
pub fn e_abelian_variety(d: u32) -> EPolynomial {
    let mut terms = BTreeMap::new();
    let row = binomial_row(d);
    for (p, cp) in row.iter().enumerate() {
        for (q, cq) in row.iter().enumerate() {
            terms.insert((p as u32, q as u32), cp * cq);
        }
    }
    EPolynomial { terms }
}

fn binomial_row(d: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..d {
        let next = row[k as usize].clone() * BigInt::from(d - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

impl Add<&EPolynomial> for &EPolynomial {
    type Output = EPolynomial;
    fn add(self, rhs: &EPolynomial) -> EPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for EPolynomial {
    type Output = EPolynomial;
    fn add(mut self, rhs: EPolynomial) -> EPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&EPolynomial> for EPolynomial {
    fn add_assign(&mut self, rhs: &EPolynomial) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for &EPolynomial {
    type Output = EPolynomial;
    fn neg(self) -> EPolynomial {
        EPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub<&EPolynomial> for &EPolynomial {
    type Output = EPolynomial;
    fn sub(self, rhs: &EPolynomial) -> EPolynomial {
        self + &(-rhs)
    }
}

impl Mul<&EPolynomial> for &EPolynomial {
    type Output = EPolynomial;
    fn mul(self, rhs: &EPolynomial) -> EPolynomial {
        let mut out = EPolynomial::zero();
        for (&(p1, q1), c1) in &self.terms {
            for (&(p2, q2), c2) in &rhs.terms {
                out.add_term((p1 + p2, q1 + q2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for EPolynomial {
    type Output = EPolynomial;
    fn mul(self, rhs: EPolynomial) -> EPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for EPolynomial {
    fn sum<I: Iterator<Item = EPolynomial>>(iter: I) -> Self {
        iter.fold(EPolynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

/// Canonical text: terms by `(p, q)` ascending, `c*x^p*y^q` joined by ` + `.
impl fmt::Display for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(p, q), c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::with_capacity(3);
            match p {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{p}")),
            }
            match q {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{q}")),
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else {
                if c.is_negative() && (-c).is_one() {
                    f.write_str("-")?;
                } else if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for EPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&(p, q), c) in &self.terms {
            seq.serialize_element(&(p, q, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for EPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<(i64, i64, String)> = Vec::deserialize(deserializer)?;
        let mut parsed = Vec::with_capacity(raw.len());
        for (p, q, c) in raw {
            let coeff: BigInt = c
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("invalid coefficient {c:?}")))?;
            parsed.push((p, q, coeff));
        }
        EPolynomial::from_terms(parsed).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn one_plus(v: EPolynomial) -> EPolynomial {
        &EPolynomial::one() + &v
    }

    #[test]
    fn addition_cancels_and_prunes() {
        let a = &EPolynomial::one() + &EPolynomial::xy_power(1);
        let b = EPolynomial::monomial(1, 1, -1);
        let s = &a + &b;
        assert_eq!(s, EPolynomial::one());
        assert_eq!(s.len(), 1);
        assert_eq!(&a + &EPolynomial::zero(), a);
    }

    #[test]
    fn addition_by_hand() {
        let s = &one_plus(EPolynomial::x()) + &one_plus(EPolynomial::y());
        let expected = EPolynomial::from_terms([(0, 0, 2), (1, 0, 1), (0, 1, 1)]).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn multiplication_by_hand() {
        let p = &one_plus(EPolynomial::x()) * &one_plus(EPolynomial::y());
        let expected =
            EPolynomial::from_terms([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]).unwrap();
        assert_eq!(p, expected);
        assert_eq!(&p * &EPolynomial::one(), p);

        let r = &EPolynomial::xy_power(2) * &one_plus(EPolynomial::x());
        let expected = EPolynomial::from_terms([(2, 2, 1), (3, 2, 1)]).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn monomial_shift() {
        assert_eq!(
            EPolynomial::one().scale_monomial(4),
            EPolynomial::xy_power(4)
        );
        let p = e_abelian_variety(1).scale_monomial(1);
        let expected =
            EPolynomial::from_terms([(1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 1)]).unwrap();
        assert_eq!(p, expected);
        let p = e_abelian_variety(2);
        assert_eq!(p.scale_monomial(0), p);
    }

    #[test]
    fn abelian_variety_small_cases() {
        assert_eq!(e_abelian_variety(0), EPolynomial::one());
        let elliptic =
            EPolynomial::from_terms([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]).unwrap();
        assert_eq!(e_abelian_variety(1), elliptic);
        // Prym factor (1+x)^{g-1}(1+y)^{g-1} at g = 2.
        let g = 2;
        assert_eq!(e_abelian_variety(g - 1), elliptic);
        let three = e_abelian_variety(3);
        assert_eq!(three.coeff(1, 2), BigInt::from(9));
        assert_eq!(three.coeff(3, 0), BigInt::from(1));
    }

    #[test]
    fn evaluation() {
        let e = e_abelian_variety(1);
        assert_eq!(e.eval(&q(-1), &q(-1)), q(0));
        assert_eq!(EPolynomial::xy_power(4).eval(&q(1), &q(1)), q(1));
        assert_eq!(e.eval(&q(2), &q(3)), q(12));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(EPolynomial::x().eval(&half, &q(7)), half);
    }

    #[test]
    fn laurent_terms_rejected() {
        let err = EPolynomial::from_terms([(0, -1, 1)]).unwrap_err();
        assert!(matches!(err, EpolyError::NegativeExponent { p: 0, q: -1 }));
        assert!(serde_json::from_str::<EPolynomial>(r#"[[-2, 0, "3"]]"#).is_err());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(EPolynomial::zero().to_string(), "0");
        assert_eq!(EPolynomial::one().to_string(), "1");
        assert_eq!(e_abelian_variety(1).to_string(), "1 + y + x + x*y");
        let p = EPolynomial::from_terms([(4, 4, 15), (5, 4, 15), (0, 2, -1), (3, 0, -4)]).unwrap();
        assert_eq!(p.to_string(), "-y^2 + -4*x^3 + 15*x^4*y^4 + 15*x^5*y^4");
        assert_eq!(EPolynomial::constant(-7).to_string(), "-7");
    }

    #[test]
    fn json_form() {
        let p = EPolynomial::from_terms([(1, 1, 3), (0, 0, -2)]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[0,0,"-2"],[1,1,"3"]]"#);
        let back: EPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let big: EPolynomial =
            serde_json::from_str(r#"[[2,3,"123456789012345678901234567890"]]"#).unwrap();
        assert_eq!(
            big.coeff(2, 3).to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn valuation_and_division() {
        let p = e_abelian_variety(1).scale_monomial(3);
        assert_eq!(p.xy_valuation(), Some(3));
        assert_eq!(p.div_xy_power(3), Some(e_abelian_variety(1)));
        assert_eq!(p.div_xy_power(4), None);
        assert_eq!(EPolynomial::zero().xy_valuation(), None);
    }

    #[test]
    fn power_matches_repeated_product() {
        let base = one_plus(EPolynomial::x());
        let mut acc = EPolynomial::one();
        for k in 0..6 {
            assert_eq!(base.pow(k), acc);
            acc = &acc * &base;
        }
    }
}
