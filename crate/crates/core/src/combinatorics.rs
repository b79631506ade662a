//! Factorials, binomials, Stirling numbers of both kinds, Genocchi numbers
//! by two independent algorithms, and the Stirling inversion transform.
//!
//! The triangles are memoized row tables: built once to a row count, then
//! queried immutably. Growth is append-only via `extend_to`, so a table
//! built to row `N` answers every query with `n <= N` without recomputation.

use crate::{Error, IntScalar, Result};

/// Exact `n!` by iterated multiplication.
pub fn factorial<T: IntScalar>(n: usize) -> T {
    let mut acc = T::one();
    for k in 2..=n {
        acc = acc * T::from_usize(k).expect("factorial argument fits the scalar");
    }
    acc
}

/// Prefix list `0!, 1!, ..., n!`.
pub fn factorials<T: IntScalar>(n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    for k in 1..=n {
        let next = out[k - 1].clone() * T::from_usize(k).expect("factorial argument fits");
        out.push(next);
    }
    out
}

/// Pascal's triangle cache of binomial coefficients.
pub struct PascalTriangle<T> {
    rows: Vec<Vec<T>>,
}

impl<T: IntScalar> PascalTriangle<T> {
    pub fn new(max_n: usize) -> Self {
        let mut t = PascalTriangle { rows: Vec::new() };
        t.extend_to(max_n);
        t
    }

    pub fn extend_to(&mut self, max_n: usize) {
        if self.rows.is_empty() {
            self.rows.push(vec![T::one()]);
        }
        while self.rows.len() <= max_n {
            let prev = self.rows.last().unwrap();
            let n = prev.len();
            let mut row = Vec::with_capacity(n + 1);
            row.push(T::one());
            for k in 1..n {
                row.push(prev[k - 1].clone() + prev[k].clone());
            }
            row.push(T::one());
            self.rows.push(row);
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`; zero for `k > n`. Panics if row `n` was never built.
    pub fn choose(&self, n: usize, k: usize) -> T {
        if k > n {
            return T::zero();
        }
        self.rows[n][k].clone()
    }
}

fn check_triangle_query(what: &'static str, built: usize, n: usize, k: usize) -> Result<()> {
    if n > built {
        return Err(Error::OutOfRange {
            what,
            got: format!("n = {n}"),
            built: format!("row {built}"),
        });
    }
    if k > n {
        return Err(Error::OutOfRange {
            what,
            got: format!("k = {k}"),
            built: format!("n = {n}"),
        });
    }
    Ok(())
}

/// Signed Stirling numbers of the first kind, `s(n, k)`: the coefficients of
/// the falling factorial `X(X-1)...(X-n+1) = sum_k s(n,k) X^k`.
///
/// Built row-by-row from `s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k)`.
pub struct StirlingFirstTable<T> {
    rows: Vec<Vec<T>>,
}

impl<T: IntScalar> StirlingFirstTable<T> {
    pub fn new(max_n: usize) -> Self {
        let mut t = StirlingFirstTable { rows: Vec::new() };
        t.extend_to(max_n);
        t
    }

    pub fn extend_to(&mut self, max_n: usize) {
        if self.rows.is_empty() {
            self.rows.push(vec![T::one()]);
        }
        while self.rows.len() <= max_n {
            let prev = self.rows.last().unwrap();
            let n = prev.len(); // building row n
            let factor = T::from_usize(n - 1).expect("row index fits");
            let mut row = Vec::with_capacity(n + 1);
            row.push(T::zero());
            for k in 1..=n {
                let carry = prev[k - 1].clone();
                let scaled = if k < n {
                    factor.clone() * prev[k].clone()
                } else {
                    T::zero()
                };
                row.push(carry - scaled);
            }
            self.rows.push(row);
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `s(n, k)` with the contract bounds checked.
    pub fn get(&self, n: usize, k: usize) -> Result<&T> {
        check_triangle_query("stirling1", self.max_n(), n, k)?;
        Ok(&self.rows[n][k])
    }

    /// Row `n` as a slice, entries `k = 0..=n`.
    pub fn row(&self, n: usize) -> &[T] {
        &self.rows[n]
    }

    pub(crate) fn at(&self, n: usize, k: usize) -> &T {
        &self.rows[n][k]
    }
}

/// Stirling numbers of the second kind, `S(n, k)`: the set-partition counts
/// expanding `X^n` over falling factorials.
///
/// Built row-by-row from `S(n,k) = S(n-1,k-1) + k S(n-1,k)`.
pub struct StirlingSecondTable<T> {
    rows: Vec<Vec<T>>,
}

impl<T: IntScalar> StirlingSecondTable<T> {
    pub fn new(max_n: usize) -> Self {
        let mut t = StirlingSecondTable { rows: Vec::new() };
        t.extend_to(max_n);
        t
    }

    pub fn extend_to(&mut self, max_n: usize) {
        if self.rows.is_empty() {
            self.rows.push(vec![T::one()]);
        }
        while self.rows.len() <= max_n {
            let prev = self.rows.last().unwrap();
            let n = prev.len();
            let mut row = Vec::with_capacity(n + 1);
            row.push(T::zero());
            for k in 1..=n {
                let carry = prev[k - 1].clone();
                let scaled = if k < n {
                    T::from_usize(k).expect("column index fits") * prev[k].clone()
                } else {
                    T::zero()
                };
                row.push(carry + scaled);
            }
            self.rows.push(row);
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&T> {
        check_triangle_query("stirling2", self.max_n(), n, k)?;
        Ok(&self.rows[n][k])
    }

    pub fn row(&self, n: usize) -> &[T] {
        &self.rows[n]
    }

    pub(crate) fn at(&self, n: usize, k: usize) -> &T {
        &self.rows[n][k]
    }
}

/// Signed Stirling number of the first kind as a one-off query.
pub fn stirling1<T: IntScalar>(n: usize, k: usize) -> Result<T> {
    StirlingFirstTable::new(n).get(n, k).cloned()
}

/// Stirling number of the second kind as a one-off query.
pub fn stirling2<T: IntScalar>(n: usize, k: usize) -> Result<T> {
    StirlingSecondTable::new(n).get(n, k).cloned()
}

/// Which algorithm produced a [`GenocchiSequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenocchiAlgorithm {
    /// Coefficient recurrence read off `(e^x + 1) G(x) = 2x`, with the
    /// halving step asserted exact at every index.
    EgfRecurrence,
    /// Boustrophedon (Seidel triangle) recurrence, additions only.
    Seidel,
    /// Stirling inversion of an integer sequence (see the engine).
    Inversion,
}

impl GenocchiAlgorithm {
    pub fn name(self) -> &'static str {
        match self {
            GenocchiAlgorithm::EgfRecurrence => "egf-recurrence",
            GenocchiAlgorithm::Seidel => "seidel",
            GenocchiAlgorithm::Inversion => "inversion",
        }
    }
}

/// Genocchi numbers `G_0 ..= G_n`, tagged with the producing algorithm.
///
/// Structural facts, asserted by the verification suite: `G_0 = 0`, `G_1 = 1`,
/// `G_k = 0` for odd `k >= 3`, and `sgn(G_{2l}) = (-1)^l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenocchiSequence<T> {
    values: Vec<T>,
    algorithm: GenocchiAlgorithm,
}

impl<T: IntScalar> GenocchiSequence<T> {
    pub(crate) fn from_values(values: Vec<T>, algorithm: GenocchiAlgorithm) -> Self {
        GenocchiSequence { values, algorithm }
    }

    pub fn algorithm(&self) -> GenocchiAlgorithm {
        self.algorithm
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&T> {
        self.values.get(n).ok_or_else(|| Error::OutOfRange {
            what: "genocchi",
            got: format!("n = {n}"),
            built: format!("n = {}", self.max_n()),
        })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub(crate) fn at(&self, n: usize) -> &T {
        &self.values[n]
    }
}

/// Genocchi numbers from the generating-function recurrence.
///
/// Expanding `(e^x + 1) G(x) = 2x` coefficient-wise gives
/// `2 G_n = c_n - sum_{k<n} C(n,k) G_k` with `c_1 = 2` and `c_n = 0`
/// otherwise. The halving is exact precisely because the Genocchi numbers
/// are integers; an odd right-hand side is reported as a broken invariant.
pub fn genocchi_egf_recurrence<T: IntScalar>(n_max: usize) -> Result<GenocchiSequence<T>> {
    let pascal = PascalTriangle::<T>::new(n_max);
    let two = T::one() + T::one();
    let mut g: Vec<T> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let c = if n == 1 { two.clone() } else { T::zero() };
        let mut rhs = c;
        for (k, gk) in g.iter().enumerate() {
            rhs = rhs - pascal.choose(n, k) * gk.clone();
        }
        let (q, r) = rhs.div_rem(&two);
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                what: "genocchi_egf_recurrence",
                numerator: rhs.to_string(),
                divisor: "2".to_string(),
            });
        }
        g.push(q);
    }
    Ok(GenocchiSequence::from_values(
        g,
        GenocchiAlgorithm::EgfRecurrence,
    ))
}

/// Genocchi numbers from the Seidel boustrophedon triangle.
///
/// Rows are filled in alternating directions using additions only:
///
/// ```text
/// row 1 (->):   1                        s(1,1)
/// row 2 (<-):   1                        s(2,k) = s(2,k+1) + s(1,k)
/// row 3 (->):   1  1                     s(3,k) = s(3,k-1) + s(2,k)
/// row 4 (<-):   2  1
/// row 5 (->):   2  3  3
/// ...
/// ```
///
/// The last entry of odd row `2m - 1` is `|G_{2m}|`; signs `(-1)^m` and the
/// odd-index zeros are applied afterwards. Independent of binomials and of
/// any rational arithmetic, which makes it the oracle for
/// [`genocchi_egf_recurrence`].
pub fn genocchi_seidel<T: IntScalar>(n_max: usize) -> GenocchiSequence<T> {
    let mut values = vec![T::zero(); n_max + 1];
    if n_max >= 1 {
        values[1] = T::one();
    }
    if n_max >= 2 {
        values[2] = -T::one(); // |G_2| = s(1,1) = 1, sign (-1)^1
    }

    // prev holds odd row 2m-1, of width m; its last entry is |G_{2m}|.
    let mut prev: Vec<T> = vec![T::one()];
    while 2 * prev.len() + 2 <= n_max {
        let m = prev.len();
        // Row 2m, filled right to left: s(2m,k) = s(2m,k+1) + s(2m-1,k).
        let mut even = vec![T::zero(); m];
        for i in (0..m).rev() {
            let right = if i + 1 < m {
                even[i + 1].clone()
            } else {
                T::zero()
            };
            even[i] = right + prev[i].clone();
        }
        // Row 2m+1, filled left to right: s(2m+1,k) = s(2m+1,k-1) + s(2m,k).
        let mut odd = vec![T::zero(); m + 1];
        for i in 0..=m {
            let left = if i > 0 { odd[i - 1].clone() } else { T::zero() };
            let above = if i < m { even[i].clone() } else { T::zero() };
            odd[i] = left + above;
        }
        let idx = 2 * m + 2;
        let unsigned = odd[m].clone();
        values[idx] = if (m + 1).is_multiple_of(2) {
            unsigned
        } else {
            -unsigned
        };
        prev = odd;
    }

    GenocchiSequence::from_values(values, GenocchiAlgorithm::Seidel)
}

/// Both Genocchi algorithms, cross-checked entry-wise.
pub fn genocchi_checked<T: IntScalar>(n_max: usize) -> Result<GenocchiSequence<T>> {
    let egf = genocchi_egf_recurrence::<T>(n_max)?;
    let seidel = genocchi_seidel::<T>(n_max);
    for n in 0..=n_max {
        if egf.at(n) != seidel.at(n) {
            return Err(Error::GenocchiMismatch {
                n,
                left: "egf-recurrence",
                left_value: egf.at(n).to_string(),
                right: "seidel",
                right_value: seidel.at(n).to_string(),
            });
        }
    }
    Ok(egf)
}

/// `sum_{i=k..n} s(n,i) S(i,k)`; equals the Kronecker delta.
pub fn orthogonality_sum<T: IntScalar>(
    first: &StirlingFirstTable<T>,
    second: &StirlingSecondTable<T>,
    n: usize,
    k: usize,
) -> Result<T> {
    check_triangle_query("orthogonality_sum", first.max_n().min(second.max_n()), n, k)?;
    let mut sum = T::zero();
    for i in k..=n {
        sum = sum + first.at(n, i).clone() * second.at(i, k).clone();
    }
    Ok(sum)
}

/// `sum_{i=k..n} S(n,i) s(i,k)`, the mirrored order; also the delta.
pub fn orthogonality_sum_mirror<T: IntScalar>(
    first: &StirlingFirstTable<T>,
    second: &StirlingSecondTable<T>,
    n: usize,
    k: usize,
) -> Result<T> {
    check_triangle_query("orthogonality_sum", first.max_n().min(second.max_n()), n, k)?;
    let mut sum = T::zero();
    for i in k..=n {
        sum = sum + second.at(n, i).clone() * first.at(i, k).clone();
    }
    Ok(sum)
}

/// Forward Stirling transform: `v_n = sum_{k<=n} u_k S(n,k)`.
///
/// The table must be built to at least `u.len() - 1` rows.
pub fn stirling_transform<T: IntScalar>(u: &[T], second: &StirlingSecondTable<T>) -> Vec<T> {
    assert!(
        u.is_empty() || second.max_n() >= u.len() - 1,
        "second-kind table too small for the input sequence"
    );
    (0..u.len())
        .map(|n| {
            let mut v = T::zero();
            for (k, uk) in u.iter().take(n + 1).enumerate() {
                v = v + uk.clone() * second.at(n, k).clone();
            }
            v
        })
        .collect()
}

/// Inverse Stirling transform: `u_n = sum_{k<=n} v_k s(n,k)`.
///
/// Composes with [`stirling_transform`] to the identity in both orders, by
/// the orthogonality of the two Stirling triangles.
pub fn stirling_transform_inverse<T: IntScalar>(v: &[T], first: &StirlingFirstTable<T>) -> Vec<T> {
    assert!(
        v.is_empty() || first.max_n() >= v.len() - 1,
        "first-kind table too small for the input sequence"
    );
    (0..v.len())
        .map(|n| {
            let mut u = T::zero();
            for (k, vk) in v.iter().take(n + 1).enumerate() {
                u = u + vk.clone() * first.at(n, k).clone();
            }
            u
        })
        .collect()
}
