//! Cross-verification: runs every identity, bound, and structural fact this
//! crate claims, and returns a structured pass/fail report.
//!
//! A failing check never panics or aborts the suite; it records the first
//! concrete counterexample (where, expected, actual) and the remaining
//! checks still run, so one report carries maximal diagnostic information.
//! Everything here is deterministic — the sampled checks use a fixed-seed
//! generator — so repeated runs produce byte-identical reports.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use num_integer::Integer as _;

use crate::combinatorics::{
    genocchi_egf_recurrence, genocchi_seidel, orthogonality_sum, orthogonality_sum_mirror,
    stirling_transform, stirling_transform_inverse,
};
use crate::engine::{a_closed_form, a_egf, a_recurrence, valuation_scan, Tables};
use crate::exact::{val_p, DyadicRational};
use crate::series::{
    egf_coefficients, exp_x, log_one_minus_x, log_power_coefficients, series_f, series_g, series_h,
};
use crate::{int, rat, Error, Int, Rat, Series};

/// Bounds for one verification run. `n_max` and `series_order` scale the
/// sequence-method checks; the remaining bounds pin the ranges over which
/// the module invariants are stated and are independent of those two.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Methods are cross-compared for `0 <= n <= n_max`.
    pub n_max: usize,
    /// Generating-function work (EGF method and the three EGF identities)
    /// runs at this truncation order.
    pub series_order: usize,
    /// The dyadic recurrence is iterated this far checking integrality.
    pub integrality_max: usize,
    /// The 2-adic bound is checked for `1 <= n <= valuation_max`.
    pub valuation_max: usize,
    /// Orthogonality of the Stirling triangles, `0 <= k <= n <= this`.
    pub orthogonality_max: usize,
    /// First-kind rows compared against the falling-factorial expansion.
    pub falling_factorial_max: usize,
    /// Genocchi dual-algorithm agreement and structure, indices up to this.
    pub genocchi_max: usize,
    /// Genocchi recovery by Stirling inversion of the sequence, up to this.
    pub inversion_max: usize,
    /// Stirling numbers from log powers, `0 <= k <= n <= this`.
    pub log_power_max: usize,
    /// Legendre's formula against direct factorial factorization, up to this.
    pub legendre_max: usize,
    /// Envelope `|a(n)/(2(n-1)!) - 1| <= 4/n` checked on this range.
    pub asymptotic_min: usize,
    pub asymptotic_max: usize,
    /// Sampled Stirling-transform round trips: case count and length bound.
    pub transform_cases: usize,
    pub transform_len_max: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 200,
            series_order: 64,
            integrality_max: 1000,
            valuation_max: 1000,
            orthogonality_max: 40,
            falling_factorial_max: 40,
            genocchi_max: 60,
            inversion_max: 40,
            log_power_max: 30,
            legendre_max: 2000,
            asymptotic_min: 8,
            asymptotic_max: 500,
            transform_cases: 100,
            transform_len_max: 20,
        }
    }
}

/// Numerator of the asymptotic envelope `|a(n)/(2(n-1)!) - 1| <= 4/n`.
/// The observed supremum of `n |ratio - 1|` on `8 <= n <= 500` is below 1.2,
/// so 4 leaves a wide margin while staying a finite, checkable statement.
pub const ASYMPTOTIC_ENVELOPE_NUMERATOR: i64 = 4;

/// The first concrete witness of a failing check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub location: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub range: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// The full report: every check exactly once, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

type Outcome = std::result::Result<(), Counterexample>;

fn ce(location: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Outcome {
    Err(Counterexample {
        location: location.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    })
}

fn error_outcome(e: &Error) -> Outcome {
    match e {
        Error::IntegralityBroken { n, value } => {
            ce(format!("n = {n}"), "integer iterate (exponent 0)", value)
        }
        Error::ValuationBoundBroken {
            n,
            valuation,
            digit_sum,
        } => ce(
            format!("n = {n}"),
            format!("valuation >= {digit_sum}"),
            valuation,
        ),
        Error::GenocchiMismatch {
            n,
            left,
            left_value,
            right,
            right_value,
        } => ce(
            format!("n = {n}"),
            format!("{right} = {right_value}"),
            format!("{left} = {left_value}"),
        ),
        other => ce("-", "no error", other),
    }
}

fn result_outcome<T>(r: crate::Result<T>) -> Outcome {
    match r {
        Ok(_) => Ok(()),
        Err(e) => error_outcome(&e),
    }
}

struct ReportBuilder {
    checks: Vec<CheckResult>,
}

impl ReportBuilder {
    fn record(&mut self, name: &'static str, range: String, outcome: Outcome) {
        self.checks.push(CheckResult {
            name,
            range,
            passed: outcome.is_ok(),
            counterexample: outcome.err(),
        });
    }
}

/// `a(0..=12)`: the frozen reference values every method must reproduce.
const TABLE1: [i64; 13] = [
    0, 1, 2, 5, 16, 64, 312, 1812, 12288, 95616, 840960, 8254080, 89441280,
];

/// Deterministic generator for the sampled checks (SplitMix64).
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

/// Runs the full verification suite at the default invariant bounds, with
/// the method-agreement range and series order as given.
pub fn cross_verify(n_max: usize, series_order: usize) -> VerificationReport {
    cross_verify_with(VerifyConfig {
        n_max,
        series_order,
        ..VerifyConfig::default()
    })
}

/// Runs the full verification suite with explicit bounds.
pub fn cross_verify_with(cfg: VerifyConfig) -> VerificationReport {
    let mut rb = ReportBuilder { checks: Vec::new() };

    let table_rows = cfg
        .n_max
        .max(cfg.genocchi_max)
        .max(cfg.inversion_max)
        .max(cfg.orthogonality_max)
        .max(cfg.falling_factorial_max)
        .max(cfg.log_power_max)
        .max(cfg.transform_len_max)
        .max(12);
    let tables = Tables::build(table_rows);

    // Sequence methods ----------------------------------------------------

    rb.record(
        "table1",
        format!("n <= {}, all methods", cfg.n_max.min(12)),
        match &tables {
            Ok(t) => check_table1(&cfg, t),
            Err(e) => error_outcome(e),
        },
    );

    rb.record(
        "method_agreement",
        format!(
            "n <= {} (egf to {})",
            cfg.n_max,
            cfg.n_max.min(cfg.series_order)
        ),
        match &tables {
            Ok(t) => check_method_agreement(&cfg, t),
            Err(e) => error_outcome(e),
        },
    );

    rb.record(
        "recurrence_integrality",
        format!("n <= {}", cfg.integrality_max),
        result_outcome(a_recurrence(cfg.integrality_max)),
    );

    rb.record(
        "valuation_bound",
        format!("1 <= n <= {}", cfg.valuation_max),
        check_valuation_bound_range(cfg.valuation_max),
    );

    rb.record(
        "asymptotic_envelope",
        format!(
            "|a(n)/(2(n-1)!) - 1| <= {}/n, {} <= n <= {}",
            ASYMPTOTIC_ENVELOPE_NUMERATOR, cfg.asymptotic_min, cfg.asymptotic_max
        ),
        check_asymptotic_envelope(&cfg),
    );

    // Combinatorial tables -------------------------------------------------

    rb.record(
        "orthogonality",
        format!("0 <= k <= n <= {}, both orders", cfg.orthogonality_max),
        match &tables {
            Ok(t) => check_orthogonality(&cfg, t),
            Err(e) => error_outcome(e),
        },
    );

    rb.record(
        "falling_factorial",
        format!("rows n <= {}", cfg.falling_factorial_max),
        match &tables {
            Ok(t) => check_falling_factorial(&cfg, t),
            Err(e) => error_outcome(e),
        },
    );

    rb.record(
        "stirling1_structure",
        format!("rows n <= {table_rows}"),
        match &tables {
            Ok(t) => check_stirling1_structure(t),
            Err(e) => error_outcome(e),
        },
    );

    rb.record(
        "genocchi_agreement",
        format!("n <= {}", cfg.genocchi_max),
        check_genocchi_agreement(cfg.genocchi_max),
    );

    rb.record(
        "genocchi_structure",
        format!("n <= {}", cfg.genocchi_max),
        match &tables {
            Ok(t) => check_genocchi_structure(&cfg, t),
            Err(e) => error_outcome(e),
        },
    );

    rb.record(
        "genocchi_egf_match",
        format!("n <= {}", cfg.genocchi_max),
        match &tables {
            Ok(t) => check_genocchi_egf_match(&cfg, t),
            Err(e) => error_outcome(e),
        },
    );

    rb.record(
        "genocchi_inversion",
        format!("n <= {}", cfg.inversion_max),
        match &tables {
            Ok(t) => result_outcome(t.genocchi_from_a(cfg.inversion_max)),
            Err(e) => error_outcome(e),
        },
    );

    rb.record(
        "stirling_transform_roundtrip",
        format!(
            "{} sampled sequences, length <= {}",
            cfg.transform_cases, cfg.transform_len_max
        ),
        match &tables {
            Ok(t) => check_transform_roundtrip(&cfg, t),
            Err(e) => error_outcome(e),
        },
    );

    // Generating functions ---------------------------------------------------

    rb.record(
        "egf_identity_f",
        format!("(2-x) f = -2 log(1-x), order {}", cfg.series_order),
        check_egf_identity_f(cfg.series_order),
    );

    rb.record(
        "egf_identity_g",
        format!("(e^x+1) g = 2x, order {}", cfg.series_order),
        check_egf_identity_g(cfg.series_order),
    );

    rb.record(
        "egf_composition",
        format!("f = -(g o h), order {}", cfg.series_order),
        check_egf_composition(cfg.series_order),
    );

    rb.record(
        "log_power_stirling",
        format!("0 <= k <= n <= {}", cfg.log_power_max),
        match &tables {
            Ok(t) => check_log_power_stirling(&cfg, t),
            Err(e) => error_outcome(e),
        },
    );

    // Exact-arithmetic primitives -------------------------------------------

    rb.record(
        "legendre_formula",
        format!("n <= {}, p in {{2, 3, 5, 7}}", cfg.legendre_max),
        check_legendre_formula(cfg.legendre_max),
    );

    rb.record(
        "valuation_multiplicative",
        "grid of small rationals, p in {2, 3, 5}".to_string(),
        check_valuation_multiplicative(),
    );

    rb.record(
        "dyadic_roundtrip",
        "mantissa |m| <= 64, exponent <= 10".to_string(),
        check_dyadic_roundtrip(),
    );

    rb.record(
        "series_ring_laws",
        "fixed series triples, order 8".to_string(),
        check_series_ring_laws(),
    );

    VerificationReport { checks: rb.checks }
}

fn check_table1(cfg: &VerifyConfig, tables: &Tables) -> Outcome {
    let max_n = cfg.n_max.min(12);
    let egf_max = max_n.min(cfg.series_order);
    let rec = match a_recurrence(max_n) {
        Ok(v) => v,
        Err(e) => return error_outcome(&e),
    };
    let egf = match a_egf(egf_max) {
        Ok(v) => v,
        Err(e) => return error_outcome(&e),
    };
    for (n, want) in TABLE1.iter().take(max_n + 1).enumerate() {
        let want = int(*want);
        let mut candidates: Vec<(&'static str, Int)> = vec![("recurrence", rec[n].value.clone())];
        match a_closed_form(n) {
            Ok(r) => candidates.push(("closed", r.value)),
            Err(e) => return error_outcome(&e),
        }
        match tables.a_genocchi_stirling(n) {
            Ok(r) => candidates.push(("genocchi-stirling", r.value)),
            Err(e) => return error_outcome(&e),
        }
        match tables.a_reduced(n) {
            Ok(r) => candidates.push(("reduced", r.value)),
            Err(e) => return error_outcome(&e),
        }
        if n <= egf_max {
            candidates.push(("egf", egf[n].value.clone()));
        }
        for (method, got) in candidates {
            if got != want {
                return ce(format!("a({n}) by {method}"), &want, got);
            }
        }
    }
    Ok(())
}

fn check_method_agreement(cfg: &VerifyConfig, tables: &Tables) -> Outcome {
    let rec = match a_recurrence(cfg.n_max) {
        Ok(v) => v,
        Err(e) => return error_outcome(&e),
    };
    let egf_max = cfg.n_max.min(cfg.series_order);
    let egf = match a_egf(egf_max) {
        Ok(v) => v,
        Err(e) => return error_outcome(&e),
    };
    for n in 0..=cfg.n_max {
        let baseline = &rec[n].value;
        let closed = match a_closed_form(n) {
            Ok(r) => r.value,
            Err(e) => return error_outcome(&e),
        };
        if &closed != baseline {
            return ce(format!("a({n}) by closed"), baseline, closed);
        }
        let gs = match tables.a_genocchi_stirling(n) {
            Ok(r) => r.value,
            Err(e) => return error_outcome(&e),
        };
        if &gs != baseline {
            return ce(format!("a({n}) by genocchi-stirling"), baseline, gs);
        }
        let red = match tables.a_reduced(n) {
            Ok(r) => r.value,
            Err(e) => return error_outcome(&e),
        };
        if &red != baseline {
            return ce(format!("a({n}) by reduced"), baseline, red);
        }
        if n <= egf_max && &egf[n].value != baseline {
            return ce(format!("a({n}) by egf"), baseline, &egf[n].value);
        }
    }
    Ok(())
}

fn check_valuation_bound_range(max_n: usize) -> Outcome {
    if max_n == 0 {
        return Ok(());
    }
    let rows = match valuation_scan(&int(2), max_n) {
        Ok(rows) => rows,
        Err(e) => return error_outcome(&e),
    };
    for row in rows {
        if !row.holds {
            return ce(
                format!("n = {}", row.n),
                format!("valuation >= {}", row.digit_sum),
                row.valuation,
            );
        }
    }
    Ok(())
}

fn check_asymptotic_envelope(cfg: &VerifyConfig) -> Outcome {
    let rec = match a_recurrence(cfg.asymptotic_max) {
        Ok(v) => v,
        Err(e) => return error_outcome(&e),
    };
    let mut fact = Int::one(); // (n-1)! running
    for (n, record) in rec.iter().enumerate().skip(1) {
        if n >= 2 {
            fact *= int(n as i64 - 1);
        }
        if n < cfg.asymptotic_min {
            continue;
        }
        let ratio = Rat::new(record.value.clone(), int(2) * fact.clone());
        let deviation = (ratio - Rat::one()).abs();
        let envelope = rat(ASYMPTOTIC_ENVELOPE_NUMERATOR, n as i64);
        if deviation > envelope {
            return ce(
                format!("n = {n}"),
                format!("|a(n)/(2(n-1)!) - 1| <= {envelope}"),
                deviation,
            );
        }
    }
    Ok(())
}

fn check_orthogonality(cfg: &VerifyConfig, tables: &Tables) -> Outcome {
    let first = tables.stirling_first();
    let second = tables.stirling_second();
    for n in 0..=cfg.orthogonality_max {
        for k in 0..=n {
            let want = if n == k { Int::one() } else { Int::zero() };
            let forward = orthogonality_sum(first, second, n, k).expect("in range");
            if forward != want {
                return ce(
                    format!("sum s(n,i)S(i,k) at (n,k) = ({n},{k})"),
                    &want,
                    forward,
                );
            }
            let mirrored = orthogonality_sum_mirror(first, second, n, k).expect("in range");
            if mirrored != want {
                return ce(
                    format!("sum S(n,i)s(i,k) at (n,k) = ({n},{k})"),
                    &want,
                    mirrored,
                );
            }
        }
    }
    Ok(())
}

fn check_falling_factorial(cfg: &VerifyConfig, tables: &Tables) -> Outcome {
    // poly holds the coefficients of X(X-1)...(X-n+1), grown one factor at
    // a time; this is the defining identity, independent of the recurrence.
    let mut poly = vec![Int::one()];
    for n in 0..=cfg.falling_factorial_max {
        if n > 0 {
            let c = int(n as i64 - 1);
            let mut next = vec![Int::zero(); poly.len() + 1];
            for (d, coeff) in poly.iter().enumerate() {
                next[d + 1] += coeff;
                next[d] -= coeff * &c;
            }
            poly = next;
        }
        let row = tables.stirling_first().row(n);
        if row != poly.as_slice() {
            return ce(
                format!("row n = {n}"),
                format!("{poly:?}"),
                format!("{row:?}"),
            );
        }
    }
    Ok(())
}

fn check_stirling1_structure(tables: &Tables) -> Outcome {
    let first = tables.stirling_first();
    let mut fact = Int::one(); // (n-1)! running
    for n in 0..=first.max_n() {
        if n >= 2 {
            fact *= int(n as i64 - 1);
        }
        for k in 0..=n {
            let sign_ok = if (n + k) % 2 == 0 {
                !first.at(n, k).is_negative()
            } else {
                !first.at(n, k).is_positive()
            };
            if !sign_ok {
                return ce(
                    format!("(n,k) = ({n},{k})"),
                    format!(
                        "sign (-1)^(n+k) = {}",
                        if (n + k) % 2 == 0 { 1 } else { -1 }
                    ),
                    first.at(n, k),
                );
            }
        }
        if n >= 1 {
            let want = if n % 2 == 1 {
                fact.clone()
            } else {
                -fact.clone()
            };
            if first.at(n, 1) != &want {
                return ce(format!("s({n},1)"), want, first.at(n, 1));
            }
        }
    }
    Ok(())
}

fn check_genocchi_agreement(max_n: usize) -> Outcome {
    let egf = match genocchi_egf_recurrence::<Int>(max_n) {
        Ok(g) => g,
        Err(e) => return error_outcome(&e),
    };
    let seidel = genocchi_seidel::<Int>(max_n);
    for n in 0..=max_n {
        let (a, b) = (egf.get(n).expect("built"), seidel.get(n).expect("built"));
        if a != b {
            return ce(
                format!("G_{n}"),
                format!("egf-recurrence = {a}"),
                format!("seidel = {b}"),
            );
        }
    }
    Ok(())
}

fn check_genocchi_structure(cfg: &VerifyConfig, tables: &Tables) -> Outcome {
    let g = tables.genocchi();
    if !g.at(0).is_zero() {
        return ce("G_0", 0, g.at(0));
    }
    if cfg.genocchi_max >= 1 && !g.at(1).is_one() {
        return ce("G_1", 1, g.at(1));
    }
    for n in (3..=cfg.genocchi_max).step_by(2) {
        if !g.at(n).is_zero() {
            return ce(format!("G_{n} (odd index)"), 0, g.at(n));
        }
    }
    for l in 1..=(cfg.genocchi_max / 2) {
        let want = if l % 2 == 0 { int(1) } else { int(-1) };
        if g.at(2 * l).signum() != want {
            return ce(format!("sgn G_{}", 2 * l), want, g.at(2 * l).signum());
        }
    }
    Ok(())
}

fn check_genocchi_egf_match(cfg: &VerifyConfig, tables: &Tables) -> Outcome {
    let coeffs = egf_coefficients(&series_g::<Rat>(cfg.genocchi_max));
    for (n, c) in coeffs.iter().enumerate() {
        let want = Rat::from_integer(tables.genocchi().at(n).clone());
        if c != &want {
            return ce(format!("n! [x^n] g at n = {n}"), want, c);
        }
    }
    Ok(())
}

fn check_transform_roundtrip(cfg: &VerifyConfig, tables: &Tables) -> Outcome {
    let mut rng = SplitMix64(0x5EED_CAFE_F00D_BEEF);
    for case in 0..cfg.transform_cases {
        let len = 1 + (rng.next() as usize) % cfg.transform_len_max;
        let u: Vec<Int> = (0..len).map(|_| int(rng.in_range(-100, 100))).collect();
        let v = stirling_transform(&u, tables.stirling_second());
        let back = stirling_transform_inverse(&v, tables.stirling_first());
        if back != u {
            return ce(
                format!("case {case}: inverse(forward(u))"),
                format!("{u:?}"),
                format!("{back:?}"),
            );
        }
        let w = stirling_transform_inverse(&u, tables.stirling_first());
        let forth = stirling_transform(&w, tables.stirling_second());
        if forth != u {
            return ce(
                format!("case {case}: forward(inverse(u))"),
                format!("{u:?}"),
                format!("{forth:?}"),
            );
        }
    }
    Ok(())
}

fn check_egf_identity_f(order: usize) -> Outcome {
    let f = series_f::<Rat>(order);
    let mut coeffs = vec![Rat::zero(); order + 1];
    coeffs[0] = rat(2, 1);
    if order >= 1 {
        coeffs[1] = rat(-1, 1);
    }
    let two_minus_x = Series::from_coeffs(coeffs);
    let lhs = two_minus_x.mul(&f);
    let rhs = log_one_minus_x::<Rat>(order).scalar_mul(&rat(-2, 1));
    series_equal("(2-x) f", &lhs, "-2 log(1-x)", &rhs)
}

fn check_egf_identity_g(order: usize) -> Outcome {
    let g = series_g::<Rat>(order);
    let lhs = exp_x::<Rat>(order).add(&Series::one(order)).mul(&g);
    let rhs = if order == 0 {
        Series::zero(0)
    } else {
        Series::monomial(rat(2, 1), 1, order)
    };
    series_equal("(e^x+1) g", &lhs, "2x", &rhs)
}

fn check_egf_composition(order: usize) -> Outcome {
    let f = series_f::<Rat>(order);
    let composed = series_g::<Rat>(order)
        .compose(&series_h::<Rat>(order))
        .expect("h(0) = 0")
        .neg();
    series_equal("-(g o h)", &composed, "f", &f)
}

fn series_equal(lhs_name: &str, lhs: &Series, rhs_name: &str, rhs: &Series) -> Outcome {
    for j in 0..=lhs.order().min(rhs.order()) {
        if lhs.coeff(j) != rhs.coeff(j) {
            return ce(
                format!("[x^{j}] of {lhs_name} vs {rhs_name}"),
                rhs.coeff(j),
                lhs.coeff(j),
            );
        }
    }
    Ok(())
}

fn check_log_power_stirling(cfg: &VerifyConfig, tables: &Tables) -> Outcome {
    let max = cfg.log_power_max;
    for k in 0..=max {
        let coeffs = match log_power_coefficients::<Rat>(k, max) {
            Ok(c) => c,
            Err(e) => return error_outcome(&e),
        };
        for (n, c) in coeffs.iter().enumerate() {
            let want = if k <= n {
                Rat::from_integer(tables.stirling_first().at(n, k).clone())
            } else {
                Rat::zero()
            };
            if c != &want {
                return ce(format!("n! [x^n] log^{k}(1+x)/{k}! at n = {n}"), want, c);
            }
        }
    }
    Ok(())
}

fn check_legendre_formula(max_n: usize) -> Outcome {
    use crate::exact::legendre_factorial_valuation;
    for p in [2i64, 3, 5, 7] {
        let p = int(p);
        let mut fact = Int::one();
        for n in 1..=max_n {
            fact *= int(n as i64);
            // direct construction: count factors of p in n! itself
            let direct = val_p(&p, &Rat::from_integer(fact.clone())).expect("n! != 0");
            let formula = match legendre_factorial_valuation(&p, &int(n as i64)) {
                Ok(v) => v,
                Err(e) => return error_outcome(&e),
            };
            if Int::from(direct) != formula {
                return ce(
                    format!("v_{p}({n}!)"),
                    format!("{direct} (direct factorization)"),
                    format!("{formula} (Legendre)"),
                );
            }
        }
    }
    Ok(())
}

fn check_valuation_multiplicative() -> Outcome {
    let mut values = Vec::new();
    for num in -9i64..=9 {
        if num == 0 {
            continue;
        }
        for den in 1i64..=6 {
            values.push(rat(num, den));
        }
    }
    for p in [2i64, 3, 5] {
        let p = int(p);
        for x in &values {
            for y in &values {
                let lhs = val_p(&p, &(x * y)).expect("nonzero");
                let rhs = val_p(&p, x).expect("nonzero") + val_p(&p, y).expect("nonzero");
                if lhs != rhs {
                    return ce(
                        format!("v_{p}({x} * {y})"),
                        format!("{rhs} (sum of valuations)"),
                        lhs,
                    );
                }
            }
        }
    }
    Ok(())
}

fn check_dyadic_roundtrip() -> Outcome {
    for m in -64i64..=64 {
        for e in 0u64..=10 {
            let d = DyadicRational::new(int(m), e);
            let canonical = d.exponent() == 0 || d.mantissa().is_odd();
            if !canonical {
                return ce(
                    format!("normalize({m}, {e})"),
                    "odd mantissa or exponent 0",
                    &d,
                );
            }
            let back = match DyadicRational::from_rational(&d.to_rational()) {
                Ok(b) => b,
                Err(e) => return error_outcome(&e),
            };
            if back != d {
                return ce(format!("round trip of ({m}, {e})"), &d, back);
            }
        }
    }
    Ok(())
}

fn check_series_ring_laws() -> Outcome {
    let order = 8;
    let build = |pattern: &[(i64, i64)]| -> Series {
        Series::from_coeffs(
            (0..=order)
                .map(|j| {
                    let (n, d) = pattern[j % pattern.len()];
                    rat(n + j as i64, d)
                })
                .collect(),
        )
    };
    let a = build(&[(3, 2), (-1, 3), (5, 1), (0, 1)]);
    let b = build(&[(1, 5), (2, 1), (-3, 4)]);
    let c = build(&[(-2, 7), (1, 1), (4, 3), (1, 2), (0, 1)]);

    let pairs: [(&str, Series, Series); 5] = [
        ("a+b = b+a", a.add(&b), b.add(&a)),
        ("(a+b)+c = a+(b+c)", a.add(&b).add(&c), a.add(&b.add(&c))),
        ("a*b = b*a", a.mul(&b), b.mul(&a)),
        ("(a*b)*c = a*(b*c)", a.mul(&b).mul(&c), a.mul(&b.mul(&c))),
        (
            "a*(b+c) = a*b + a*c",
            a.mul(&b.add(&c)),
            a.mul(&b).add(&a.mul(&c)),
        ),
    ];
    for (law, lhs, rhs) in &pairs {
        if lhs != rhs {
            return ce(law.to_string(), format!("{rhs:?}"), format!("{lhs:?}"));
        }
    }

    // b has nonzero constant term, so division must round-trip both ways.
    let quotient = a.div(&b).expect("unit divisor");
    if quotient.mul(&b) != a {
        return ce(
            "(a/b)*b = a",
            format!("{a:?}"),
            format!("{:?}", quotient.mul(&b)),
        );
    }
    let product = a.mul(&b);
    match product.div(&b) {
        Ok(back) if back == a => Ok(()),
        Ok(back) => ce("(a*b)/b = a", format!("{a:?}"), format!("{back:?}")),
        Err(e) => error_outcome(&e),
    }
}
