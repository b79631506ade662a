//! Truncated formal power series over an exact field scalar.
//!
//! A [`TruncatedSeries`] of order `N` stores exactly the coefficients
//! `c_0 ..= c_N` of `sum_j c_j x^j`, densely. Invariants:
//!
//! * binary operations truncate to the minimum order of their operands and
//!   never fabricate coefficients beyond it;
//! * reading past the truncation order is a hard error (panic), not a zero;
//! * coefficients are ordinary generating-function coefficients everywhere;
//!   the factorial-scaled view exists only in [`egf_coefficients`].

use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, FieldScalar, Result};

fn scalar<C: FieldScalar>(n: usize) -> C {
    C::from_usize(n).expect("usize fits the series scalar")
}

fn scalar_i64<C: FieldScalar>(n: i64) -> C {
    C::from_i64(n).expect("i64 fits the series scalar")
}

/// A formal power series truncated at a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>, // exactly order + 1 entries
}

impl<C: FieldScalar> TruncatedSeries<C> {
    /// Builds a series from `c_0 ..= c_N`; the order is `len - 1`.
    ///
    /// Panics on an empty coefficient list (order would be negative).
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has order >= 0");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    /// `c * x^power`, truncated at `order`. Panics if `power > order`:
    /// the monomial would not be representable.
    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        assert!(power <= order, "monomial power beyond truncation order");
        let mut s = Self::zero(order);
        s.coeffs[power] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^j`. Panics past the truncation order: those
    /// coefficients are unknown, not zero.
    pub fn coeff(&self, j: usize) -> &C {
        assert!(
            j <= self.order(),
            "coefficient {j} beyond truncation order {}",
            self.order()
        );
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Copy truncated to a lower (or equal) order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|j| self.coeffs[j].clone() + other.coeffs[j].clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|j| self.coeffs[j].clone() - other.coeffs[j].clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Cauchy product, truncated at the minimum order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries { coeffs }
    }

    /// `self^k` by repeated multiplication; `self^0` is the constant 1.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient `q` with `q * other = self` up to the common truncation
    /// order. Errors when the divisor has zero constant term (a non-unit of
    /// the truncated ring).
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.coeffs[0].is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        let order = self.order().min(other.order());
        let b0 = other.coeffs[0].clone();
        let mut q: Vec<C> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for j in 1..=n {
                acc = acc - other.coeffs[j].clone() * q[n - j].clone();
            }
            q.push(acc / b0.clone());
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// Composition `self(inner)`, truncated at the common order, by Horner
    /// evaluation over the series ring. Requires `inner(0) = 0`, which is
    /// what makes the substitution well defined order-by-order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::CompositionConstantTerm);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncated(order);
        let mut acc = TruncatedSeries::zero(order);
        for k in (0..=order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// Exponential of a series with zero constant term, via the coefficient
    /// recurrence `n b_n = sum_{j=1..n} j a_j b_{n-j}` with `b_0 = 1`.
    ///
    /// The general case (nonzero constant term) is deliberately unsupported:
    /// it would need a transcendental value of the scalar.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm);
        }
        let order = self.order();
        let mut b: Vec<C> = Vec::with_capacity(order + 1);
        b.push(C::one());
        for n in 1..=order {
            let mut acc = C::zero();
            for j in 1..=n {
                acc = acc + scalar::<C>(j) * self.coeffs[j].clone() * b[n - j].clone();
            }
            b.push(acc / scalar::<C>(n));
        }
        Ok(TruncatedSeries { coeffs: b })
    }
}

impl<C: FieldScalar> Add for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn add(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries::add(self, rhs)
    }
}

impl<C: FieldScalar> Sub for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn sub(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries::sub(self, rhs)
    }
}

impl<C: FieldScalar> Mul for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn mul(self, rhs: Self) -> TruncatedSeries<C> {
        TruncatedSeries::mul(self, rhs)
    }
}

impl<C: FieldScalar> Neg for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn neg(self) -> TruncatedSeries<C> {
        TruncatedSeries::neg(self)
    }
}

/// `log(1 - x) = -sum_{j>=1} x^j / j`, truncated.
pub fn log_one_minus_x<C: FieldScalar>(order: usize) -> TruncatedSeries<C> {
    let coeffs = (0..=order)
        .map(|j| {
            if j == 0 {
                C::zero()
            } else {
                -(C::one() / scalar::<C>(j))
            }
        })
        .collect();
    TruncatedSeries::from_coeffs(coeffs)
}

/// `log(1 + x) = sum_{j>=1} (-1)^(j-1) x^j / j`, truncated.
pub fn log_one_plus_x<C: FieldScalar>(order: usize) -> TruncatedSeries<C> {
    let coeffs = (0..=order)
        .map(|j| {
            if j == 0 {
                C::zero()
            } else if j % 2 == 1 {
                C::one() / scalar::<C>(j)
            } else {
                -(C::one() / scalar::<C>(j))
            }
        })
        .collect();
    TruncatedSeries::from_coeffs(coeffs)
}

/// `e^x`, truncated. Coefficients `1 / j!`.
pub fn exp_x<C: FieldScalar>(order: usize) -> TruncatedSeries<C> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut inv_fact = C::one();
    coeffs.push(C::one());
    for j in 1..=order {
        inv_fact = inv_fact / scalar::<C>(j);
        coeffs.push(inv_fact.clone());
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// `f(x) = -2 log(1 - x) / (2 - x)`: the exponential generating function of
/// the sequence; `n! [x^n] f` is `a(n)`.
pub fn series_f<C: FieldScalar>(order: usize) -> TruncatedSeries<C> {
    let numerator = log_one_minus_x::<C>(order).scalar_mul(&scalar_i64(-2));
    let mut denom = TruncatedSeries::zero(order);
    denom.coeffs[0] = scalar_i64(2);
    if order >= 1 {
        denom.coeffs[1] = scalar_i64(-1);
    }
    numerator.div(&denom).expect("2 - x is a unit")
}

/// `g(x) = 2x / (e^x + 1)`: the exponential generating function of the
/// Genocchi numbers.
pub fn series_g<C: FieldScalar>(order: usize) -> TruncatedSeries<C> {
    let numerator = if order == 0 {
        TruncatedSeries::zero(0)
    } else {
        TruncatedSeries::monomial(scalar_i64(2), 1, order)
    };
    let denom = exp_x::<C>(order).add(&TruncatedSeries::one(order));
    numerator.div(&denom).expect("e^x + 1 is a unit")
}

/// `h(x) = log(1 - x)`, the inner series of the composition `f = -(g o h)`.
pub fn series_h<C: FieldScalar>(order: usize) -> TruncatedSeries<C> {
    log_one_minus_x(order)
}

/// The factorial-scaled coefficient view: `n! c_n` for `n = 0 ..= order`.
pub fn egf_coefficients<C: FieldScalar>(s: &TruncatedSeries<C>) -> Vec<C> {
    let mut fact = C::one();
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            if n > 0 {
                fact = fact.clone() * scalar::<C>(n);
            }
            c.clone() * fact.clone()
        })
        .collect()
}

/// Factorial-scaled coefficients of `log^k(1 + x) / k!`; entry `n` equals
/// the signed Stirling number `s(n, k)`.
pub fn log_power_coefficients<C: FieldScalar>(k: usize, order: usize) -> Result<Vec<C>> {
    if order < k {
        return Err(Error::Domain {
            what: "log_power_coefficients",
            requirement: "order >= k",
            got: format!("k = {k}, order = {order}"),
        });
    }
    let mut inv_k_fact = C::one();
    for j in 1..=k {
        inv_k_fact = inv_k_fact / scalar::<C>(j);
    }
    let scaled = log_one_plus_x::<C>(order).pow(k).scalar_mul(&inv_k_fact);
    Ok(egf_coefficients(&scaled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, Rat, Series};

    fn s(coeffs: &[Rat]) -> Series {
        Series::from_coeffs(coeffs.to_vec())
    }

    fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = s(&rats(&[(1, 1), (1, 1), (0, 1)]));
        let b = s(&rats(&[(1, 1), (-1, 1), (0, 1)]));
        assert_eq!(a.mul(&b), s(&rats(&[(1, 1), (0, 1), (-1, 1)])));
    }

    #[test]
    fn add_zero_is_identity() {
        let a = s(&rats(&[(3, 2), (-1, 5), (7, 1)]));
        assert_eq!(a.add(&Series::zero(2)), a);
    }

    #[test]
    fn cauchy_product_matches_hand_expansion() {
        // (-2 log(1-x)) * (1/(2-x)) expanded by hand through x^3.
        let a = s(&rats(&[(0, 1), (2, 1), (1, 1), (2, 3)]));
        let b = s(&rats(&[(1, 2), (1, 4), (1, 8), (1, 16)]));
        assert_eq!(a.mul(&b), s(&rats(&[(0, 1), (1, 1), (1, 1), (5, 6)])));
    }

    #[test]
    fn mul_truncates_to_min_order() {
        let a = s(&rats(&[(1, 1), (1, 1), (1, 1), (1, 1)]));
        let b = s(&rats(&[(1, 1), (1, 1)]));
        assert_eq!(a.mul(&b).order(), 1);
        assert_eq!((&a + &b).order(), 1);
    }

    #[test]
    #[should_panic(expected = "beyond truncation order")]
    fn reading_past_order_panics() {
        let a = Series::one(2);
        let _ = a.coeff(3);
    }

    #[test]
    fn division_by_one_and_geometric_series() {
        let a = s(&rats(&[(5, 3), (1, 2), (0, 1), (4, 1)]));
        assert_eq!(a.div(&Series::one(3)).unwrap(), a);
        let geom = Series::one(3).div(&s(&rats(&[(1, 1), (-1, 1), (0, 1), (0, 1)])));
        assert_eq!(geom.unwrap(), s(&rats(&[(1, 1), (1, 1), (1, 1), (1, 1)])));
    }

    #[test]
    fn division_round_trips_through_mul() {
        let a = Series::monomial(rat(2, 1), 1, 3);
        let b = s(&rats(&[(2, 1), (-1, 1), (0, 1), (0, 1)]));
        let q = a.div(&b).unwrap();
        assert_eq!(q, s(&rats(&[(0, 1), (1, 1), (1, 2), (1, 4)])));
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn division_by_non_unit_is_rejected() {
        let a = Series::one(3);
        let b = Series::monomial(rat(1, 1), 1, 3);
        assert_eq!(a.div(&b), Err(Error::NonUnitDivisor));
    }

    #[test]
    fn compose_with_identity_inner() {
        let g = series_g::<Rat>(6);
        let x = Series::monomial(rat(1, 1), 1, 6);
        assert_eq!(g.compose(&x).unwrap(), g);
    }

    #[test]
    fn compose_simple_substitution() {
        let outer = s(&rats(&[(1, 1), (1, 1), (1, 1)]));
        let inner = Series::monomial(rat(1, 1), 2, 2);
        assert_eq!(
            outer.compose(&inner).unwrap(),
            s(&rats(&[(1, 1), (0, 1), (1, 1)]))
        );
    }

    #[test]
    fn compose_requires_zero_constant_term() {
        let outer = Series::one(4);
        let inner = Series::one(4);
        assert_eq!(outer.compose(&inner), Err(Error::CompositionConstantTerm));
    }

    #[test]
    fn f_is_minus_g_composed_with_h() {
        let f = series_f::<Rat>(4);
        let composed = series_g::<Rat>(4)
            .compose(&series_h::<Rat>(4))
            .unwrap()
            .neg();
        assert_eq!(composed, f);
        assert_eq!(f, s(&rats(&[(0, 1), (1, 1), (1, 1), (5, 6), (2, 3)])));
    }

    #[test]
    fn log_and_exp_expansions() {
        assert_eq!(
            log_one_minus_x::<Rat>(3),
            s(&rats(&[(0, 1), (-1, 1), (-1, 2), (-1, 3)]))
        );
        assert_eq!(Series::zero(3).exp().unwrap(), Series::one(3));
        let e = Series::monomial(rat(1, 1), 1, 4).exp().unwrap();
        assert_eq!(e, s(&rats(&[(1, 1), (1, 1), (1, 2), (1, 6), (1, 24)])));
        assert_eq!(e, exp_x::<Rat>(4));
        assert_eq!(Series::one(3).exp(), Err(Error::ExpConstantTerm));
    }

    #[test]
    fn named_series_expansions() {
        assert_eq!(series_h::<Rat>(2), s(&rats(&[(0, 1), (-1, 1), (-1, 2)])));
        let g_egf = egf_coefficients(&series_g::<Rat>(3));
        assert_eq!(g_egf, rats(&[(0, 1), (1, 1), (-1, 1), (0, 1)]));
        let f_egf = egf_coefficients(&series_f::<Rat>(3));
        assert_eq!(f_egf, rats(&[(0, 1), (1, 1), (2, 1), (5, 1)]));
    }

    #[test]
    fn egf_view_of_constant_one() {
        let ones = egf_coefficients(&Series::one(4));
        assert_eq!(ones, rats(&[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn genocchi_egf_through_order_eight() {
        let g_egf = egf_coefficients(&series_g::<Rat>(8));
        let expected: Vec<Rat> = [0i64, 1, -1, 0, 1, 0, -3, 0, 17]
            .iter()
            .map(|&v| Rat::from_integer(int(v)))
            .collect();
        assert_eq!(g_egf, expected);
    }

    #[test]
    fn log_powers_give_stirling_numbers() {
        let k0 = log_power_coefficients::<Rat>(0, 4).unwrap();
        assert_eq!(k0, rats(&[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]));
        let k1 = log_power_coefficients::<Rat>(1, 5).unwrap();
        assert_eq!(k1[5], Rat::from_integer(int(24))); // s(5,1)
        let k2 = log_power_coefficients::<Rat>(2, 4).unwrap();
        assert_eq!(k2[4], Rat::from_integer(int(11))); // s(4,2)
        assert!(matches!(
            log_power_coefficients::<Rat>(3, 2),
            Err(Error::Domain { .. })
        ));
    }
}
