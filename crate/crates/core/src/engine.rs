//! The sequence engine: computes `a(n)` by five independent methods and
//! exposes the valuation experiments around it.
//!
//! Every method returns plain integers; the routes that pass through
//! rational or dyadic intermediates assert integrality on the way out, so a
//! non-integer result surfaces as a hard error instead of a silent
//! truncation.

use num_traits::{One, Signed, Zero};

use crate::combinatorics::{
    factorial, genocchi_checked, GenocchiAlgorithm, GenocchiSequence, StirlingFirstTable,
    StirlingSecondTable,
};
use crate::exact::{digit_sum, ensure_prime, val_p, DyadicRational};
use crate::series::{egf_coefficients, series_f};
use crate::{int, Dyadic, Error, Int, Rat, Result};

/// One of the five computation routes for `a(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodId {
    /// Dyadic iteration of `a(n) = (n/2) a(n-1) + (n-1)!`.
    Recurrence,
    /// Closed form `(n!/2^n) sum_{k=1..n} 2^k/k`.
    ClosedForm,
    /// `(-1)^(n-1) sum_k G_k s(n,k)`.
    GenocchiStirling,
    /// `(n-1)! + sum_l (-1)^(l-1) |G_{2l} s(n,2l)|`.
    Reduced,
    /// `n! [x^n]` of `-2 log(1-x) / (2-x)`.
    Egf,
}

impl MethodId {
    pub const ALL: [MethodId; 5] = [
        MethodId::Recurrence,
        MethodId::ClosedForm,
        MethodId::GenocchiStirling,
        MethodId::Reduced,
        MethodId::Egf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodId::Recurrence => "recurrence",
            MethodId::ClosedForm => "closed",
            MethodId::GenocchiStirling => "genocchi-stirling",
            MethodId::Reduced => "reduced",
            MethodId::Egf => "egf",
        }
    }
}

/// A computed value of `a(n)` with its method provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub n: usize,
    pub value: Int,
    pub method: MethodId,
}

/// One `(p, n)` data point of the valuation experiment: the p-adic valuation
/// of `sum_{k=1..n} p^k/k` against the base-p digit sum of `n`.
///
/// `holds` records whether `valuation >= digit_sum`. For `p = 2` this is a
/// theorem and a `false` row is an invariant violation; for `p > 2` rows are
/// data, and `false` rows are expected (already at `p = 3`, `n = 2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub p: Int,
    pub n: usize,
    pub valuation: i64,
    pub digit_sum: Int,
    pub holds: bool,
}

/// `a(0 ..= n_max)` by the defining recurrence, iterated in canonical dyadic
/// rationals.
///
/// Integrality of every iterate is checked structurally: the canonical
/// exponent must be zero at each step. A nonzero exponent is reported as
/// [`Error::IntegralityBroken`].
pub fn a_recurrence(n_max: usize) -> Result<Vec<SequenceRecord>> {
    let mut records = Vec::with_capacity(n_max + 1);
    records.push(SequenceRecord {
        n: 0,
        value: Int::zero(),
        method: MethodId::Recurrence,
    });
    let mut a = Dyadic::zero();
    let mut fact = Int::one(); // (n-1)! for the upcoming n
    for n in 1..=n_max {
        a = a
            .mul_integer(&int(n as i64))
            .halve()
            .add(&DyadicRational::from_integer(fact.clone()));
        let value = a
            .as_integer()
            .ok_or_else(|| Error::IntegralityBroken {
                n,
                value: a.to_string(),
            })?
            .clone();
        records.push(SequenceRecord {
            n,
            value,
            method: MethodId::Recurrence,
        });
        fact *= int(n as i64);
    }
    Ok(records)
}

/// Exact partial sum `sum_{k=1..n} 2^k / k` (empty sum for `n = 0`).
pub fn harmonic2_sum(n: usize) -> Rat {
    prime_power_harmonic_sum(&int(2), n)
}

/// Exact partial sum `sum_{k=1..n} p^k / k` for any base `p`.
pub fn prime_power_harmonic_sum(p: &Int, n: usize) -> Rat {
    let mut sum = Rat::zero();
    let mut power = Int::one();
    for k in 1..=n {
        power *= p;
        sum += Rat::new(power.clone(), int(k as i64));
    }
    sum
}

/// `a(n)` from the closed form `(n!/2^n) sum_{k=1..n} 2^k/k`, with the
/// integrality of the rational result asserted.
pub fn a_closed_form(n: usize) -> Result<SequenceRecord> {
    let scale = Rat::new(factorial::<Int>(n), Int::one() << n);
    let value = scale * harmonic2_sum(n);
    if !value.is_integer() {
        return Err(Error::IntegralityBroken {
            n,
            value: value.to_string(),
        });
    }
    Ok(SequenceRecord {
        n,
        value: value.to_integer(),
        method: MethodId::ClosedForm,
    })
}

/// `a(0 ..= n_max)` read off the exponential generating function
/// `-2 log(1-x) / (2-x)`; each `n! c_n` is asserted integral.
pub fn a_egf(n_max: usize) -> Result<Vec<SequenceRecord>> {
    egf_coefficients(&series_f::<Rat>(n_max))
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            if !c.is_integer() {
                return Err(Error::IntegralityBroken {
                    n,
                    value: c.to_string(),
                });
            }
            Ok(SequenceRecord {
                n,
                value: c.to_integer(),
                method: MethodId::Egf,
            })
        })
        .collect()
}

/// Shared Stirling and Genocchi tables, built once to a row bound and then
/// queried immutably by the table-driven methods.
pub struct Tables {
    first: StirlingFirstTable<Int>,
    second: StirlingSecondTable<Int>,
    genocchi: GenocchiSequence<Int>,
}

impl Tables {
    /// Builds all tables to `n_max`. The Genocchi sequence is computed by
    /// both algorithms and cross-checked entry-wise.
    pub fn build(n_max: usize) -> Result<Self> {
        Ok(Tables {
            first: StirlingFirstTable::new(n_max),
            second: StirlingSecondTable::new(n_max),
            genocchi: genocchi_checked(n_max)?,
        })
    }

    pub fn max_n(&self) -> usize {
        self.genocchi.max_n()
    }

    pub fn stirling_first(&self) -> &StirlingFirstTable<Int> {
        &self.first
    }

    pub fn stirling_second(&self) -> &StirlingSecondTable<Int> {
        &self.second
    }

    pub fn genocchi(&self) -> &GenocchiSequence<Int> {
        &self.genocchi
    }

    fn check_bound(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.max_n() {
            return Err(Error::OutOfRange {
                what,
                got: format!("n = {n}"),
                built: format!("n = {}", self.max_n()),
            });
        }
        Ok(())
    }

    /// `a(n) = (-1)^(n-1) sum_{k=0..n} G_k s(n,k)`.
    pub fn a_genocchi_stirling(&self, n: usize) -> Result<SequenceRecord> {
        self.check_bound("a_genocchi_stirling", n)?;
        let mut sum = Int::zero();
        for k in 0..=n {
            sum += self.genocchi.at(k) * self.first.at(n, k);
        }
        let value = if n % 2 == 1 { sum } else { -sum };
        Ok(SequenceRecord {
            n,
            value,
            method: MethodId::GenocchiStirling,
        })
    }

    /// The reduced expansion over even Genocchi indices only:
    /// `a(n) = (n-1)! + sum_{1 <= l <= n/2} (-1)^(l-1) |G_{2l} s(n,2l)|`
    /// for `n >= 1`, and `a(0) = 0` directly.
    pub fn a_reduced(&self, n: usize) -> Result<SequenceRecord> {
        self.check_bound("a_reduced", n)?;
        let value = if n == 0 {
            Int::zero()
        } else {
            let mut acc = factorial::<Int>(n - 1);
            for l in 1..=(n / 2) {
                let term = (self.genocchi.at(2 * l) * self.first.at(n, 2 * l)).abs();
                if l % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        };
        Ok(SequenceRecord {
            n,
            value,
            method: MethodId::Reduced,
        })
    }

    /// Recovers the Genocchi numbers from the sequence by Stirling
    /// inversion: `G_n = sum_{k=1..n} (-1)^(k-1) a_k S(n,k)`.
    ///
    /// The result is cross-checked entry-wise against the table Genocchi
    /// numbers; a mismatch is an invariant violation, not data.
    pub fn genocchi_from_a(&self, n_max: usize) -> Result<GenocchiSequence<Int>> {
        self.check_bound("genocchi_from_a", n_max)?;
        let a: Vec<Int> = a_recurrence(n_max)?.into_iter().map(|r| r.value).collect();
        let mut values = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut g = Int::zero();
            for (k, ak) in a.iter().enumerate().take(n + 1).skip(1) {
                let term = ak * self.second.at(n, k);
                if k % 2 == 1 {
                    g += term;
                } else {
                    g -= term;
                }
            }
            if &g != self.genocchi.at(n) {
                return Err(Error::GenocchiMismatch {
                    n,
                    left: "inversion",
                    left_value: g.to_string(),
                    right: self.genocchi.algorithm().name(),
                    right_value: self.genocchi.at(n).to_string(),
                });
            }
            values.push(g);
        }
        Ok(GenocchiSequence::from_values(
            values,
            GenocchiAlgorithm::Inversion,
        ))
    }
}

/// The 2-adic bound `v_2(sum_{k=1..n} 2^k/k) >= s_2(n)`, checked for one `n`.
///
/// This inequality is equivalent to the integrality of `a(n)` via the closed
/// form and Legendre's formula, so a failing row is an invariant violation.
pub fn check_valuation_bound(n: usize) -> Result<ScanRow> {
    if n == 0 {
        return Err(Error::Domain {
            what: "check_valuation_bound",
            requirement: "n >= 1",
            got: "0".to_string(),
        });
    }
    let two = int(2);
    let sum = harmonic2_sum(n);
    let valuation = val_p(&two, &sum)?;
    let ds = digit_sum(&two, &int(n as i64))?;
    if Int::from(valuation) < ds {
        return Err(Error::ValuationBoundBroken {
            n,
            valuation,
            digit_sum: ds.to_string(),
        });
    }
    Ok(ScanRow {
        p: two,
        n,
        valuation,
        digit_sum: ds,
        holds: true,
    })
}

/// Exact ratio `a(n) / (2 (n-1)!)`, the quantity that tends to 1.
pub fn asymptotic_ratio(n: usize) -> Result<Rat> {
    if n == 0 {
        return Err(Error::Domain {
            what: "asymptotic_ratio",
            requirement: "n >= 1",
            got: "0".to_string(),
        });
    }
    let a_n = a_recurrence(n)?.pop().expect("nonempty").value;
    Ok(Rat::new(a_n, int(2) * factorial::<Int>(n - 1)))
}

/// The valuation experiment at an arbitrary prime: one row per
/// `1 <= n <= n_max` comparing `v_p(sum_{k=1..n} p^k/k)` with `s_p(n)`.
///
/// For `p > 2` no inequality is asserted; rows that fail are data (the first
/// failure already occurs at `p = 3`, `n = 2`).
pub fn valuation_scan(p: &Int, n_max: usize) -> Result<Vec<ScanRow>> {
    ensure_prime(p)?;
    if n_max == 0 {
        return Err(Error::Domain {
            what: "valuation_scan",
            requirement: "n_max >= 1",
            got: "0".to_string(),
        });
    }
    let mut rows = Vec::with_capacity(n_max);
    let mut sum = Rat::zero();
    let mut power = Int::one();
    for n in 1..=n_max {
        power *= p;
        sum += Rat::new(power.clone(), int(n as i64));
        let valuation = val_p(p, &sum)?;
        let ds = digit_sum(p, &int(n as i64))?;
        rows.push(ScanRow {
            p: p.clone(),
            n,
            valuation,
            holds: Int::from(valuation) >= ds,
            digit_sum: ds,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    /// `a(0..=12)`, straight from the recurrence done by hand.
    pub(crate) const A_KNOWN: [i64; 13] = [
        0, 1, 2, 5, 16, 64, 312, 1812, 12288, 95616, 840960, 8254080, 89441280,
    ];

    #[test]
    fn recurrence_known_values() {
        let records = a_recurrence(12).unwrap();
        for (n, want) in A_KNOWN.iter().enumerate() {
            assert_eq!(records[n].value, int(*want), "a({n})");
            assert_eq!(records[n].n, n);
        }
        let only_zero = a_recurrence(0).unwrap();
        assert_eq!(only_zero.len(), 1);
        assert!(only_zero[0].value.is_zero());
    }

    #[test]
    fn harmonic_partial_sums() {
        assert_eq!(harmonic2_sum(0), Rat::zero());
        assert_eq!(harmonic2_sum(1), rat(2, 1));
        assert_eq!(harmonic2_sum(3), rat(20, 3));
        assert_eq!(harmonic2_sum(4), rat(32, 3));
        assert_eq!(prime_power_harmonic_sum(&int(3), 2), rat(15, 2));
    }

    #[test]
    fn closed_form_known_values() {
        assert_eq!(a_closed_form(0).unwrap().value, int(0));
        assert_eq!(a_closed_form(3).unwrap().value, int(5));
        assert_eq!(a_closed_form(4).unwrap().value, int(16));
    }

    #[test]
    fn genocchi_stirling_known_values() {
        let tables = Tables::build(12).unwrap();
        assert_eq!(tables.a_genocchi_stirling(0).unwrap().value, int(0));
        assert_eq!(tables.a_genocchi_stirling(3).unwrap().value, int(5));
        assert_eq!(tables.a_genocchi_stirling(12).unwrap().value, int(89441280));
        assert!(matches!(
            tables.a_genocchi_stirling(13),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn reduced_form_known_values() {
        let tables = Tables::build(12).unwrap();
        assert_eq!(tables.a_reduced(0).unwrap().value, int(0));
        assert_eq!(tables.a_reduced(1).unwrap().value, int(1));
        // 3! + |G_2 s(4,2)| - |G_4 s(4,4)| = 6 + 11 - 1
        assert_eq!(tables.a_reduced(4).unwrap().value, int(16));
        assert_eq!(tables.a_reduced(12).unwrap().value, int(89441280));
    }

    #[test]
    fn egf_known_values() {
        let records = a_egf(6).unwrap();
        assert_eq!(records[0].value, int(0));
        assert_eq!(records[2].value, int(2));
        assert_eq!(records[6].value, int(312));
    }

    #[test]
    fn all_methods_agree_to_twenty() {
        let n_max = 20;
        let tables = Tables::build(n_max).unwrap();
        let rec = a_recurrence(n_max).unwrap();
        let egf = a_egf(n_max).unwrap();
        for n in 0..=n_max {
            let baseline = &rec[n].value;
            assert_eq!(&a_closed_form(n).unwrap().value, baseline, "closed at {n}");
            assert_eq!(
                &tables.a_genocchi_stirling(n).unwrap().value,
                baseline,
                "genocchi-stirling at {n}"
            );
            assert_eq!(
                &tables.a_reduced(n).unwrap().value,
                baseline,
                "reduced at {n}"
            );
            assert_eq!(&egf[n].value, baseline, "egf at {n}");
        }
    }

    #[test]
    fn valuation_bound_small_cases() {
        let row = check_valuation_bound(1).unwrap();
        assert_eq!((row.valuation, row.digit_sum.clone()), (1, int(1)));
        let row = check_valuation_bound(3).unwrap();
        assert_eq!((row.valuation, row.digit_sum.clone()), (2, int(2)));
        let row = check_valuation_bound(4).unwrap();
        assert_eq!((row.valuation, row.digit_sum.clone()), (5, int(1)));
        assert!(check_valuation_bound(0).is_err());
    }

    #[test]
    fn genocchi_inversion_small() {
        let tables = Tables::build(8).unwrap();
        let g = tables.genocchi_from_a(8).unwrap();
        assert_eq!(g.algorithm(), GenocchiAlgorithm::Inversion);
        let want: Vec<Int> = [0i64, 1, -1, 0, 1, 0, -3, 0, 17]
            .iter()
            .map(|&v| int(v))
            .collect();
        assert_eq!(g.values(), &want[..]);
    }

    #[test]
    fn asymptotic_ratio_values() {
        assert_eq!(asymptotic_ratio(1).unwrap(), rat(1, 2));
        assert_eq!(asymptotic_ratio(5).unwrap(), rat(4, 3));
        assert_eq!(asymptotic_ratio(10).unwrap(), rat(840960, 725760));
        assert!(asymptotic_ratio(0).is_err());
    }

    #[test]
    fn scan_at_three_finds_the_counterexample() {
        let rows = valuation_scan(&int(3), 2).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(
            (rows[0].valuation, rows[0].digit_sum.clone(), rows[0].holds),
            (1, int(1), true)
        );
        assert_eq!(
            (rows[1].valuation, rows[1].digit_sum.clone(), rows[1].holds),
            (1, int(2), false)
        );
    }

    #[test]
    fn scan_rejects_composite_prime() {
        assert!(matches!(
            valuation_scan(&int(4), 5),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn scan_at_two_always_holds() {
        for row in valuation_scan(&int(2), 100).unwrap() {
            assert!(row.holds, "n = {}", row.n);
        }
    }

    #[test]
    fn method_names_are_stable() {
        let names: Vec<&str> = MethodId::ALL.iter().map(|m| m.name()).collect();
        assert_eq!(
            names,
            vec![
                "recurrence",
                "closed",
                "genocchi-stirling",
                "reduced",
                "egf"
            ]
        );
    }
}
