use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gauss::GaussRat;
use super::gcd::gcd;
use super::poly::Poly;
use super::var::Var;

/// An element of ℚ(i)(x₁,…,x_k): a reduced quotient of polynomials.
///
/// The denominator is monic and coprime to the numerator, so equal values
/// have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_ratio(p, q))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(Poly::var(v))
    }

    /// Builds `num / den`, reducing to canonical form. Panics if `den` is zero.
    pub fn ratio(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_constant() {
            let c = den.leading_coeff();
            return Scalar {
                num: num.scale(&c.inv()),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value does not depend on any indeterminate.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<GaussRat> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn conj(&self) -> Scalar {
        let num = self.num.conj();
        let den = self.den.conj();
        // conjugation may change which monomial leads the denominator
        if den.leading_coeff().is_one() {
            Scalar { num, den }
        } else {
            Scalar::ratio(num, den)
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        Scalar::ratio(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Scalar {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let e = e as u32;
        Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Real part `(s + conj s)/2` in the formal sense.
    pub fn re(&self) -> Scalar {
        &(self + &self.conj()) * &Scalar::from_ratio(1, 2)
    }

    /// Imaginary part `(s - conj s)/(2i)` in the formal sense.
    pub fn im(&self) -> Scalar {
        &(self - &self.conj())
            * &Scalar::from_gauss(GaussRat::new(
                num_rational::BigRational::from_integer(0.into()),
                num_rational::BigRational::new((-1).into(), 2.into()),
            ))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_atomic = self.num.terms().len() == 1 && {
            let (m, c) = &self.num.terms()[0];
            m.is_one() && !c.is_compound() && !c.is_negative_display()
        };
        if num_atomic {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return Scalar {
                    num,
                    den: Poly::one(),
                };
            }
            return Scalar::ratio(num, self.den.clone());
        }
        if self.den.is_one() {
            return Scalar {
                num: self.num.mul(&o.den).add(&o.num),
                den: o.den.clone(),
            };
        }
        if o.den.is_one() {
            return Scalar {
                num: o.num.mul(&self.den).add(&self.num),
                den: self.den.clone(),
            };
        }
        let g = gcd(&self.den, &o.den);
        let a = self.den.exact_div(&g).unwrap();
        let b = o.den.exact_div(&g).unwrap();
        let num = self.num.mul(&b).add(&o.num.mul(&a));
        Scalar::ratio(num, self.den.mul(&b))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar {
                num: self.num.mul(&o.num),
                den: Poly::one(),
            };
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = o.den.exact_div(&g1).unwrap();
        let n2 = o.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<GaussRat> for Scalar {
    fn from(c: GaussRat) -> Self {
        Scalar::from_gauss(c)
    }
}

impl From<Var> for Scalar {
    fn from(v: Var) -> Self {
        Scalar::var(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Scalar {
        Scalar::var(Var::holo("t"))
    }
    fn tb() -> Scalar {
        Scalar::var(Var::anti("t"))
    }

    #[test]
    fn conj_examples() {
        assert_eq!(Scalar::i().conj(), -Scalar::i());
        let d = &Scalar::one() - &(&t() * &tb());
        let s = &t() / &d;
        assert_eq!(s.conj(), &tb() / &d);
        let r = Scalar::var(Var::real("r"));
        let u = Scalar::var(Var::real("u"));
        let z = &r + &(&Scalar::i() * &u);
        assert_eq!(z.conj(), &r - &(&Scalar::i() * &u));
    }

    #[test]
    fn canonical_reduction() {
        let a = &(&t() * &t()) - &Scalar::one();
        let b = &t() - &Scalar::one();
        assert_eq!(&a / &b, &t() + &Scalar::one());
        assert!((&(&a / &b) - &(&t() + &Scalar::one())).is_zero());
        assert!(Scalar::ratio(Poly::zero(), Poly::constant(GaussRat::from_int(5))).is_zero());
        assert!(!(&t() + &tb()).is_zero());
    }

    #[test]
    fn denominator_is_monic() {
        let two_t = &Scalar::from_int(2) * &t();
        let s = &Scalar::one() / &two_t;
        assert!(s.denom().leading_coeff().is_one());
        assert_eq!(s.numer().constant_value(), Some(GaussRat::from_ratio(1, 2)));
    }
}
