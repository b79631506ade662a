//! Exact scalar primitives: p-adic valuations, base-p digit sums, the
//! Legendre factorial-valuation formula, and canonical dyadic rationals.
//!
//! Every value here is immutable after construction and every function is a
//! pure function of its inputs, so concurrent read-only sharing is safe.

use num_rational::Ratio;
use num_traits::{pow, Zero};

use crate::{Error, IntScalar, Result};

fn two<T: IntScalar>() -> T {
    T::one() + T::one()
}

/// Deterministic trial-division primality test for machine-sized `n`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // 6k +/- 1 wheel
    let mut d = 7u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 4) {
            return false;
        }
        d += 6;
    }
    true
}

/// Largest modulus actually trial-divided by [`ensure_prime`]. Beyond this,
/// primality is the caller's contract.
const PRIMALITY_CHECK_LIMIT: u64 = 1_000_000_000_000;

/// Checks that `p` is prime, by trial division for desk-scale `p`.
///
/// Values above 10^12 are accepted unchecked; every consumer in this crate
/// works with small primes, so the deterministic check always fires where it
/// matters.
pub fn ensure_prime<T: IntScalar>(p: &T) -> Result<()> {
    if *p < two() {
        return Err(Error::NotPrime(p.to_string()));
    }
    match p.to_u64() {
        Some(v) if v <= PRIMALITY_CHECK_LIMIT => {
            if is_prime_u64(v) {
                Ok(())
            } else {
                Err(Error::NotPrime(p.to_string()))
            }
        }
        _ => Ok(()),
    }
}

/// Multiplicity of `p` in a nonzero integer, by repeated exact division.
/// Caller guarantees `p >= 2` and `n != 0`.
fn multiplicity<T: IntScalar>(p: &T, n: &T) -> i64 {
    debug_assert!(!n.is_zero());
    let mut m = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

/// p-adic valuation of a nonzero integer.
///
/// The result is the exponent of `p` in the factorization of `n`. Errors on
/// `n = 0` (the valuation of zero is left undefined) and on composite `p`.
pub fn val_p_int<T: IntScalar>(p: &T, n: &T) -> Result<i64> {
    ensure_prime(p)?;
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(multiplicity(p, n))
}

/// p-adic valuation of a nonzero rational, possibly negative:
/// the valuation of the numerator minus the valuation of the denominator.
///
/// Sign is ignored; errors on `x = 0` and on composite `p`.
pub fn val_p<T: IntScalar>(p: &T, x: &Ratio<T>) -> Result<i64> {
    ensure_prime(p)?;
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(multiplicity(p, x.numer()) - multiplicity(p, x.denom()))
}

/// Sum of the base-`base` digits of a positive integer.
///
/// Any base >= 2 is accepted; primality is not required here.
pub fn digit_sum<T: IntScalar>(base: &T, n: &T) -> Result<T> {
    if *base < two() {
        return Err(Error::Domain {
            what: "digit_sum",
            requirement: "base >= 2",
            got: base.to_string(),
        });
    }
    if *n < T::one() {
        return Err(Error::Domain {
            what: "digit_sum",
            requirement: "n >= 1",
            got: n.to_string(),
        });
    }
    let mut m = n.clone();
    let mut sum = T::zero();
    while !m.is_zero() {
        let (q, r) = m.div_rem(base);
        sum = sum + r;
        m = q;
    }
    Ok(sum)
}

/// Valuation of `n!` at the prime `p` via Legendre's formula
/// `v_p(n!) = (n - s_p(n)) / (p - 1)`.
///
/// The division is exact by Legendre's theorem; an inexact division here
/// would mean a bug in [`digit_sum`] and is reported as such.
pub fn legendre_factorial_valuation<T: IntScalar>(p: &T, n: &T) -> Result<T> {
    ensure_prime(p)?;
    if *n < T::one() {
        return Err(Error::Domain {
            what: "legendre_factorial_valuation",
            requirement: "n >= 1",
            got: n.to_string(),
        });
    }
    let numerator = n.clone() - digit_sum(p, n)?;
    let divisor = p.clone() - T::one();
    let (q, r) = numerator.div_rem(&divisor);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            what: "legendre_factorial_valuation",
            numerator: numerator.to_string(),
            divisor: divisor.to_string(),
        });
    }
    Ok(q)
}

/// A dyadic rational `mantissa / 2^exponent` in canonical form.
///
/// Canonical means fully reduced: the mantissa is odd, or the exponent is
/// zero (integers, including even ones, carry exponent zero; the zero value
/// is `0 / 2^0`). Construction normalizes, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicRational<T> {
    mantissa: T,
    exponent: u64,
}

impl<T: IntScalar> DyadicRational<T> {
    /// Builds `mantissa / 2^exponent` and reduces it to canonical form.
    pub fn new(mantissa: T, exponent: u64) -> Self {
        let mut d = DyadicRational { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        DyadicRational {
            mantissa: T::zero(),
            exponent: 0,
        }
    }

    pub fn from_integer(n: T) -> Self {
        DyadicRational {
            mantissa: n,
            exponent: 0,
        }
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let two = two::<T>();
        while self.exponent > 0 {
            let (q, r) = self.mantissa.div_rem(&two);
            if !r.is_zero() {
                break;
            }
            self.mantissa = q;
            self.exponent -= 1;
        }
    }

    pub fn mantissa(&self) -> &T {
        &self.mantissa
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// The value divided by two (exponent bump plus renormalization).
    pub fn halve(&self) -> Self {
        Self::new(self.mantissa.clone(), self.exponent + 1)
    }

    pub fn mul_integer(&self, k: &T) -> Self {
        Self::new(self.mantissa.clone() * k.clone(), self.exponent)
    }

    pub fn add(&self, other: &Self) -> Self {
        let e = self.exponent.max(other.exponent);
        let lift = |d: &Self| {
            let shift = (e - d.exponent) as usize;
            d.mantissa.clone() * pow(two::<T>(), shift)
        };
        Self::new(lift(self) + lift(other), e)
    }

    /// The mantissa, if the value is an integer (exponent zero).
    pub fn as_integer(&self) -> Option<&T> {
        (self.exponent == 0).then_some(&self.mantissa)
    }

    pub fn to_rational(&self) -> Ratio<T> {
        Ratio::new(
            self.mantissa.clone(),
            pow(two::<T>(), self.exponent as usize),
        )
    }

    /// Lossless conversion from a canonical rational. Errors unless the
    /// denominator is a power of two.
    pub fn from_rational(r: &Ratio<T>) -> Result<Self> {
        let two = two::<T>();
        let mut den = r.denom().clone();
        let mut exponent = 0u64;
        loop {
            if den.is_one() {
                return Ok(Self::new(r.numer().clone(), exponent));
            }
            let (q, rem) = den.div_rem(&two);
            if !rem.is_zero() {
                return Err(Error::NotDyadic(r.to_string()));
            }
            den = q;
            exponent += 1;
        }
    }
}

impl<T: IntScalar> std::fmt::Display for DyadicRational<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}/2^{}", self.mantissa, self.exponent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, Dyadic, Int};

    #[test]
    fn valuation_of_integers() {
        assert_eq!(val_p(&int(2), &rat(8, 1)).unwrap(), 3);
        assert_eq!(val_p(&int(2), &rat(5, 1)).unwrap(), 0);
        assert_eq!(val_p_int(&int(7), &int(-343)).unwrap(), 3);
    }

    #[test]
    fn valuation_of_rationals() {
        // 15/2 = 3 * 5 / 2: one factor of 3 above, none below.
        assert_eq!(val_p(&int(3), &rat(15, 2)).unwrap(), 1);
        assert_eq!(val_p(&int(2), &rat(15, 2)).unwrap(), -1);
        assert_eq!(val_p(&int(5), &rat(-75, 8)).unwrap(), 2);
    }

    #[test]
    fn valuation_rejects_zero_and_composite_modulus() {
        assert_eq!(val_p(&int(2), &rat(0, 1)), Err(Error::ZeroValuation));
        assert!(matches!(
            val_p(&int(4), &rat(3, 1)),
            Err(Error::NotPrime(_))
        ));
        assert!(matches!(
            val_p(&int(1), &rat(3, 1)),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn small_primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime_u64(999_983));
        assert!(!is_prime_u64(999_983 * 3));
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(&int(2), &int(5)).unwrap(), int(2)); // 101
        assert_eq!(digit_sum(&int(2), &int(12)).unwrap(), int(2)); // 1100
        assert_eq!(digit_sum(&int(3), &int(2)).unwrap(), int(2)); // single digit
        assert_eq!(digit_sum(&int(10), &int(98765)).unwrap(), int(35));
    }

    #[test]
    fn digit_sum_rejects_bad_domain() {
        assert!(matches!(
            digit_sum(&int(2), &int(0)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            digit_sum(&int(1), &int(5)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn legendre_small_values() {
        assert_eq!(
            legendre_factorial_valuation(&int(2), &int(1)).unwrap(),
            int(0)
        );
        // 12! = 479001600 = 2^10 * 467775
        assert_eq!(
            legendre_factorial_valuation(&int(2), &int(12)).unwrap(),
            int(10)
        );
        // 9! = 362880 = 3^4 * 4480
        assert_eq!(
            legendre_factorial_valuation(&int(3), &int(9)).unwrap(),
            int(4)
        );
    }

    #[test]
    fn dyadic_normalization() {
        let d = Dyadic::new(int(4), 2);
        assert_eq!((d.mantissa().clone(), d.exponent()), (int(1), 0));
        let d = Dyadic::new(int(0), 7);
        assert_eq!((d.mantissa().clone(), d.exponent()), (int(0), 0));
        let d = Dyadic::new(int(6), 1);
        assert_eq!((d.mantissa().clone(), d.exponent()), (int(3), 0));
        // Even integers stay put: the exponent cannot go negative.
        let d = Dyadic::new(int(6), 0);
        assert_eq!((d.mantissa().clone(), d.exponent()), (int(6), 0));
    }

    #[test]
    fn dyadic_arithmetic() {
        let half = Dyadic::new(int(1), 1);
        let three_quarters = Dyadic::new(int(3), 2);
        let sum = half.add(&three_quarters);
        assert_eq!(sum, Dyadic::new(int(5), 2));
        assert_eq!(sum.mul_integer(&int(4)), Dyadic::from_integer(int(5)));
        assert_eq!(Dyadic::from_integer(int(7)).halve(), Dyadic::new(int(7), 1));
        assert!(Dyadic::zero().halve().is_zero());
    }

    #[test]
    fn dyadic_rational_round_trip() {
        let d = Dyadic::new(int(-11), 3);
        assert_eq!(d.to_rational(), rat(-11, 8));
        assert_eq!(Dyadic::from_rational(&d.to_rational()).unwrap(), d);
        assert!(matches!(
            Dyadic::from_rational(&rat(1, 3)),
            Err(Error::NotDyadic(_))
        ));
        assert_eq!(
            Dyadic::from_rational(&rat(10, 4)).unwrap(),
            Dyadic::new(int(5), 1)
        );
    }

    #[test]
    fn dyadic_as_integer() {
        assert_eq!(Dyadic::new(int(12), 2).as_integer(), Some(&int(3)));
        assert_eq!(Dyadic::new(int(3), 1).as_integer(), None);
        assert_eq!(Dyadic::zero().as_integer(), Some(&Int::from(0)));
    }
}
