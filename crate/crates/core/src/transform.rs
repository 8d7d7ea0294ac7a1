//! The transformation coefficients `p_F(n,k,j)`: closed formula through local
//! h-polynomials, the `k`-recurrence, the subdivision operator `E_F` and its
//! h-side conjugate `D_{F,n}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numbers::binomial;
use crate::poly::{self, Polynomial, Rational};
use crate::triangles::{derive, triangle_barycentric, DerivedTriangles, FTriangle, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("row n = {n} exceeds the triangle size {d}")]
    RowOutOfRange { n: usize, d: usize },
    #[error("k = {k} must satisfy k <= n = {n}")]
    KOutOfRange { n: usize, k: usize },
    #[error("h-vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial of degree {degree} exceeds the available size {limit}")]
    DegreeOverflow { degree: usize, limit: usize },
    #[error("boundary of sigma_0 is undefined")]
    EmptyBoundary,
    #[error("coefficient table failed validation: {0:?}")]
    Validation(Vec<Violation>),
    #[error("two evaluation routes disagree: {first} vs {second}")]
    RouteMismatch {
        first: Polynomial,
        second: Polynomial,
    },
}

fn check_nk(f: &FTriangle, n: usize, k: usize) -> Result<(), TransformError> {
    if n > f.d {
        return Err(TransformError::RowOutOfRange { n, d: f.d });
    }
    if k > n {
        return Err(TransformError::KOutOfRange { n, k });
    }
    Ok(())
}

fn big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Linear extension of `x^m -> interior[m]`.
pub fn apply_subdivision_operator(
    interior: &[Polynomial],
    p: &Polynomial,
) -> Result<Polynomial, TransformError> {
    if let Some(degree) = p.degree() {
        if degree >= interior.len() {
            return Err(TransformError::DegreeOverflow {
                degree,
                limit: interior.len() - 1,
            });
        }
    }
    Ok(p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| interior[m].scale(c))
        .sum())
}

/// `E_F`, sending `x^n` to `f°_F(sigma_n, x)`.
pub fn operator_e(f: &FTriangle, p: &Polynomial) -> Result<Polynomial, TransformError> {
    apply_subdivision_operator(&derive(f).f_interior, p)
}

/// `p_{F,n,k}(x) = sum_r l_r(x) sum_i C(n-k,i) C(k,r-i) x^(k-r+i)`.
pub fn p_poly_formula(f: &FTriangle, n: usize, k: usize) -> Result<Polynomial, TransformError> {
    check_nk(f, n, k)?;
    Ok(p_formula_from(&derive(f), n, k))
}

fn p_formula_from(der: &DerivedTriangles, n: usize, k: usize) -> Polynomial {
    (0..=n)
        .filter(|&r| !der.local_h[r].is_zero())
        .map(|r| &der.local_h[r] * &lemma_identity_rhs(n, k, r))
        .sum()
}

/// Right-hand side of the binomial identity used by the closed formula:
/// `sum_i C(n-k,i) C(k,r-i) x^(k-r+i)`.
pub fn lemma_identity_rhs(n: usize, k: usize, r: usize) -> Polynomial {
    let (n, k, r) = (n as i64, k as i64, r as i64);
    (0..=r)
        .filter(|&i| k - r + i >= 0)
        .map(|i| {
            let c = binomial(n - k, i) * binomial(k, r - i);
            Polynomial::monomial(big(c), (k - r + i) as usize)
        })
        .sum()
}

/// Left-hand side: `sum_m C(m,r) C(n-k,m-k) x^(m-r) (1-x)^(n-m)`.
pub fn lemma_identity_lhs(n: usize, k: usize, r: usize) -> Polynomial {
    let one_minus_x = Polynomial::from_ints(&[1, -1]);
    (r.max(k)..=n)
        .map(|m| {
            let c = binomial(m as i64, r as i64) * binomial((n - k) as i64, m as i64 - k as i64);
            one_minus_x.pow(n - m).shift(m - r).scale(&big(c))
        })
        .sum()
}

/// All rows `p_{F,m,k}`, `0 <= k <= m <= n`, by
/// `p_{m,k} = p_{m,k-1} + (x-1) p_{m-1,k-1}` seeded with `p_{m,0} = h_F(sigma_m)`.
pub fn p_rows_recurrence(f: &FTriangle, n: usize) -> Result<Vec<Vec<Polynomial>>, TransformError> {
    check_nk(f, n, 0)?;
    Ok(p_rows_from(&derive(f), n))
}

fn p_rows_from(der: &DerivedTriangles, n: usize) -> Vec<Vec<Polynomial>> {
    let x_minus_one = Polynomial::from_ints(&[-1, 1]);
    let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut row = Vec::with_capacity(m + 1);
        row.push(der.h[m].clone());
        for k in 1..=m {
            let next = &row[k - 1] + &(&x_minus_one * &rows[m - 1][k - 1]);
            row.push(next);
        }
        rows.push(row);
    }
    rows
}

pub fn p_poly_recurrence(f: &FTriangle, n: usize, k: usize) -> Result<Polynomial, TransformError> {
    check_nk(f, n, k)?;
    Ok(p_rows_from(&derive(f), n).swap_remove(n).swap_remove(k))
}

/// The matrix `p_F(n,k,j)` for one `n`, with its polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffTable {
    pub triangle: String,
    pub n: usize,
    /// `p_{F,n,k}(x)` for `k = 0..=n`.
    pub polys: Vec<Polynomial>,
    /// `h_F(sigma_{n+1}) - h_F(boundary of sigma_{n+1})`, present when `n < d`.
    /// May have negative coefficients.
    pub boundary_difference: Option<Polynomial>,
}

impl CoeffTable {
    pub fn entry(&self, k: usize, j: usize) -> Rational {
        self.polys[k].coeff(j)
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        self.polys.iter().map(|p| p.padded(self.n + 1)).collect()
    }

    /// `sum_k hvec[k] p_{F,n,k}(x)`.
    pub fn apply(&self, hvec: &[Rational]) -> Result<Polynomial, TransformError> {
        if hvec.len() != self.n + 1 {
            return Err(TransformError::LengthMismatch {
                expected: self.n + 1,
                got: hvec.len(),
            });
        }
        Ok(hvec
            .iter()
            .zip(&self.polys)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, p)| p.scale(c))
            .sum())
    }

    /// Header `n,k,j,p`, rows in `(k, j)` order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,j,p\n");
        for k in 0..=self.n {
            for j in 0..=self.n {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    self.n,
                    k,
                    j,
                    poly::rational_to_string(&self.entry(k, j))
                ));
            }
        }
        out
    }
}

/// Table plus every invariant violation found; never fails on bad input.
#[derive(Debug, Clone, Serialize)]
pub struct CoeffAudit {
    pub table: CoeffTable,
    pub violations: Vec<Violation>,
}

impl CoeffAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn audit_coeff_table(f: &FTriangle, n: usize) -> Result<CoeffAudit, TransformError> {
    check_nk(f, n, 0)?;
    let der = derive(f);
    let polys = p_rows_from(&der, n).swap_remove(n);
    let mut violations = Vec::new();
    let mut flag = |check: &str, detail: String| {
        violations.push(Violation {
            check: check.into(),
            row: Some(n),
            detail,
        });
    };

    for (k, p) in polys.iter().enumerate() {
        if !p.is_integral() || !p.is_nonnegative() || !p.fits_window(n) {
            flag("nonnegative_integer", format!("p_{{{n},{k}}} = {p}"));
        }
        let formula = p_formula_from(&der, n, k);
        if &formula != p {
            flag(
                "formula_agreement",
                format!("k = {k}: recurrence {p} vs formula {formula}"),
            );
        }
        let mirrored = poly::reverse(p, n).ok();
        if mirrored.as_ref() != Some(&polys[n - k]) {
            flag(
                "symmetry",
                format!("x^n p_{{{n},{k}}}(1/x) differs from p_{{{n},{}}}", n - k),
            );
        }
    }

    let facets = der.h[n].sum_coeffs();
    for (k, p) in polys.iter().enumerate() {
        if p.sum_coeffs() != facets {
            flag(
                "row_sum",
                format!("row {k} sums to {}, expected {facets}", p.sum_coeffs()),
            );
        }
    }
    if polys[0] != der.h[n] {
        flag(
            "first_row",
            format!("p_{{{n},0}} = {} but h row is {}", polys[0], der.h[n]),
        );
    }

    // Independent f-side route for the boundary of sigma_{n+1}.
    let columns: Polynomial = polys.iter().cloned().sum();
    let boundary_f =
        &Polynomial::binomial_power(1, 1, n + 1) - &Polynomial::monomial(Rational::one(), n + 1);
    match apply_subdivision_operator(&der.f_interior, &boundary_f) {
        Ok(fb) => {
            let hb = poly::h_from_f(&fb, n).expect("boundary has dimension n-1");
            if hb != columns {
                flag(
                    "column_sum",
                    format!("columns sum to {columns}, boundary h is {hb}"),
                );
            }
        }
        Err(e) => flag("column_sum", e.to_string()),
    }

    let degrees: Vec<Option<usize>> = polys.iter().map(|p| p.degree()).collect();
    if degrees.windows(2).any(|w| w[0] > w[1]) {
        flag("degree_monotone", format!("degrees {degrees:?}"));
    }

    let boundary_difference = (n < f.d).then(|| &der.h[n + 1] - &columns);
    let table = CoeffTable {
        triangle: f.name.clone(),
        n,
        polys,
        boundary_difference,
    };
    Ok(CoeffAudit { table, violations })
}

/// Builds and validates the table for row `n`.
pub fn coeff_table(f: &FTriangle, n: usize) -> Result<CoeffTable, TransformError> {
    let audit = audit_coeff_table(f, n)?;
    if audit.passed() {
        Ok(audit.table)
    } else {
        Err(TransformError::Validation(audit.violations))
    }
}

/// Unvalidated table straight from the recurrence.
pub fn coeff_table_unchecked(f: &FTriangle, n: usize) -> Result<CoeffTable, TransformError> {
    check_nk(f, n, 0)?;
    let der = derive(f);
    let polys = p_rows_from(&der, n).swap_remove(n);
    let boundary_difference = (n < f.d).then(|| {
        let columns: Polynomial = polys.iter().cloned().sum();
        &der.h[n + 1] - &columns
    });
    Ok(CoeffTable {
        triangle: f.name.clone(),
        n,
        polys,
        boundary_difference,
    })
}

/// `h_F(Delta, x) = sum_k hvec[k] p_{F,n,k}(x)`.
pub fn apply_h(f: &FTriangle, hvec: &[Rational], n: usize) -> Result<Polynomial, TransformError> {
    if hvec.len() != n + 1 {
        return Err(TransformError::LengthMismatch {
            expected: n + 1,
            got: hvec.len(),
        });
    }
    coeff_table_unchecked(f, n)?.apply(hvec)
}

/// `D_{F,n}(h)`, evaluated through the coefficient table and through
/// `h -> f -> E_F -> h`; the two must agree.
pub fn operator_d(f: &FTriangle, h: &Polynomial, n: usize) -> Result<Polynomial, TransformError> {
    check_nk(f, n, 0)?;
    if !h.fits_window(n) {
        return Err(TransformError::DegreeOverflow {
            degree: h.degree().unwrap_or(0),
            limit: n,
        });
    }
    let table = coeff_table_unchecked(f, n)?;
    let by_table = table.apply(&h.padded(n + 1))?;
    let f_side = poly::f_from_h(h, n).expect("window checked");
    let by_conjugation =
        poly::h_from_f(&operator_e(f, &f_side)?, n).expect("E preserves the window");
    if by_table != by_conjugation {
        return Err(TransformError::RouteMismatch {
            first: by_table,
            second: by_conjugation,
        });
    }
    Ok(by_table)
}

/// `h_F(boundary of sigma_n, x) = sum_{k<n} p_{F,n-1,k}(x)`.
pub fn boundary_h(f: &FTriangle, n: usize) -> Result<Polynomial, TransformError> {
    if n == 0 {
        return Err(TransformError::EmptyBoundary);
    }
    check_nk(f, n, 0)?;
    Ok(coeff_table_unchecked(f, n - 1)?.polys.into_iter().sum())
}

/// `x * sum_{i<k} p_{n-1,i} + sum_{i=k}^{n} p_{n-1,i}`, with
/// `p_{n-1,n} := h_F(sigma_n) - h_F(boundary of sigma_n)`; equals `p_{F,n,k}`.
pub fn long_recurrence(f: &FTriangle, n: usize, k: usize) -> Result<Polynomial, TransformError> {
    check_nk(f, n, k)?;
    if n == 0 {
        return Ok(derive(f).h[0].clone());
    }
    let prev = coeff_table_unchecked(f, n - 1)?;
    let mut row = prev.polys.clone();
    row.push(prev.boundary_difference.expect("n - 1 < d"));
    let low: Polynomial = row[..k].iter().cloned().sum();
    let high: Polynomial = row[k..].iter().cloned().sum();
    Ok(&low.shift(1) + &high)
}

/// Compares, through `x^M`, the series `sum_m (sum_i h_i m^i (m+1)^(n-i)) x^m`
/// with `h(sd(Delta), x) / (1-x)^(n+1)`, the numerator coming from the
/// barycentric coefficient table.
pub fn sd_power_series_check(hvec: &[Rational], n: usize, order: usize) -> bool {
    if hvec.len() != n + 1 {
        return false;
    }
    let numerator = match apply_h(&triangle_barycentric(n), hvec, n) {
        Ok(p) => p,
        Err(_) => return false,
    };
    (0..=order).all(|m| {
        let lhs: Rational = hvec
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let mi = num_traits::pow(BigInt::from(m), i);
                let mi1 = num_traits::pow(BigInt::from(m + 1), n - i);
                h * big(mi * mi1)
            })
            .fold(Rational::zero(), |a, b| a + b);
        let rhs: Rational = (0..=m)
            .map(|j| numerator.coeff(j) * big(binomial((m - j + n) as i64, n as i64)))
            .fold(Rational::zero(), |a, b| a + b);
        lhs == rhs
    })
}
