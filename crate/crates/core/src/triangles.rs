//! f-triangles of uniform triangulations, their derived h / interior /
//! local triangles, identity validation, and the catalog of concrete
//! triangulation families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numbers::{binomial, factorial, stirling2_table};
use crate::poly::{self, Polynomial, Rational};
use crate::transform;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("row {row} has {len} entries, expected {expected}")]
    RowShape {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry f({i},{j}) = {value} is negative")]
    NegativeEntry { i: usize, j: usize, value: BigInt },
    #[error("triangle has no rows")]
    Empty,
    #[error("triangle sizes differ: {inner} vs {outer}")]
    SizeMismatch { inner: usize, outer: usize },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("unknown catalog triangle {0:?}")]
    UnknownCatalog(String),
    #[error("row {row} does not come out integral: {detail}")]
    NonIntegral { row: usize, detail: String },
    #[error("row {row} is beyond the triangle size {d}")]
    RowOutOfRange { row: usize, d: usize },
}

/// Triangular array `f(i, j)`, `0 <= i <= j <= d`: the number of `(i-1)`-faces
/// in the triangulation of any `(j-1)`-simplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FTriangle {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    pub d: usize,
    #[serde(with = "int_rows")]
    rows: Vec<Vec<BigInt>>,
}

impl FTriangle {
    /// Checks shape and sign only; the triangle identities are left to
    /// [`validate`] so that broken input can still be inspected.
    pub fn new(
        name: impl Into<String>,
        params: BTreeMap<String, i64>,
        rows: Vec<Vec<BigInt>>,
    ) -> Result<Self, TriangleError> {
        if rows.is_empty() {
            return Err(TriangleError::Empty);
        }
        for (j, row) in rows.iter().enumerate() {
            if row.len() != j + 1 {
                return Err(TriangleError::RowShape {
                    row: j,
                    len: row.len(),
                    expected: j + 1,
                });
            }
            if let Some((i, v)) = row.iter().enumerate().find(|(_, v)| v.is_negative()) {
                return Err(TriangleError::NegativeEntry {
                    i,
                    j,
                    value: v.clone(),
                });
            }
        }
        Ok(FTriangle {
            name: name.into(),
            params,
            d: rows.len() - 1,
            rows,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let raw: FTriangle = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if raw.rows.len() != raw.d + 1 {
            return Err(format!("d = {} but {} rows given", raw.d, raw.rows.len()));
        }
        FTriangle::new(raw.name, raw.params, raw.rows).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("triangle serializes")
    }

    pub fn size(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[j][i]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.rows[j][i]
    }

    /// `f_F(sigma_n, x)`.
    pub fn f_poly(&self, n: usize) -> Polynomial {
        Polynomial::from_bigints(&self.rows[n])
    }

    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).copied()
    }

    pub fn check_row(&self, n: usize) -> Result<(), TriangleError> {
        if n > self.d {
            Err(TriangleError::RowOutOfRange { row: n, d: self.d })
        } else {
            Ok(())
        }
    }

    fn from_polys(
        name: &str,
        params: BTreeMap<String, i64>,
        polys: &[Polynomial],
    ) -> Result<Self, TriangleError> {
        let rows = polys
            .iter()
            .enumerate()
            .map(|(n, p)| {
                let ints = p.to_bigints().ok_or_else(|| TriangleError::NonIntegral {
                    row: n,
                    detail: p.to_string(),
                })?;
                let mut row = ints;
                row.resize(n + 1, BigInt::zero());
                Ok(row)
            })
            .collect::<Result<Vec<_>, TriangleError>>()?;
        FTriangle::new(name, params, rows)
    }
}

mod int_rows {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let json: Vec<Vec<serde_json::Number>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| serde_json::Number::from_str(&v.to_string()).expect("integer literal"))
                    .collect()
            })
            .collect();
        json.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let raw: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        let text = match v {
                            serde_json::Value::Number(n) => n.to_string(),
                            serde_json::Value::String(s) => s,
                            other => return Err(D::Error::custom(format!("bad entry {other}"))),
                        };
                        BigInt::from_str(text.trim()).map_err(|_| {
                            D::Error::custom(format!("entry {text:?} is not an integer"))
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

/// h, interior-f, interior-h and local-h triangles, stored as row polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedTriangles {
    pub h: Vec<Polynomial>,
    pub f_interior: Vec<Polynomial>,
    pub h_interior: Vec<Polynomial>,
    pub local_h: Vec<Polynomial>,
}

impl DerivedTriangles {
    pub fn d(&self) -> usize {
        self.h.len() - 1
    }
}

/// Row-by-row derivation; total even for triangles that are not feasible.
pub fn derive(f: &FTriangle) -> DerivedTriangles {
    let d = f.d;
    let h: Vec<Polynomial> = (0..=d)
        .map(|n| poly::h_from_f(&f.f_poly(n), n).expect("row n has degree <= n"))
        .collect();
    let h_interior: Vec<Polynomial> = h
        .iter()
        .enumerate()
        .map(|(n, p)| poly::reverse(p, n).expect("window"))
        .collect();
    let f_interior: Vec<Polynomial> = h_interior
        .iter()
        .enumerate()
        .map(|(n, p)| poly::f_from_h(p, n).expect("window"))
        .collect();
    let local_h = (0..=d).map(|n| local_from_h(&h, n)).collect();
    DerivedTriangles {
        h,
        f_interior,
        h_interior,
        local_h,
    }
}

// sum_k (-1)^(n-k) C(n,k) h_k
fn local_from_h(h: &[Polynomial], n: usize) -> Polynomial {
    (0..=n)
        .map(|k| {
            let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
            let c = Rational::from_integer(binomial(n as i64, k as i64) * sign);
            h[k].scale(&c)
        })
        .sum()
}

/// Interior face counts by carrier inclusion-exclusion,
/// `f°(sigma_n) = sum_m (-1)^(n-m) C(n,m) f(sigma_m)`. This inverts
/// `f(sigma_n) = sum_m C(n,m) f°(sigma_m)` and does not go through h.
pub fn interior_by_carriers(f: &FTriangle, n: usize) -> Polynomial {
    (0..=n)
        .map(|m| {
            let sign = if (n - m).is_multiple_of(2) { 1 } else { -1 };
            f.f_poly(m)
                .scale(&Rational::from_integer(binomial(n as i64, m as i64) * sign))
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub row: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub strict: bool,
    pub rows_checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(f: &FTriangle, strict: bool) -> ValidationReport {
    let derived = derive(f);
    let mut violations = Vec::new();
    let mut flag = |check: &str, row: Option<usize>, detail: String| {
        violations.push(Violation {
            check: check.to_string(),
            row,
            detail,
        });
    };

    for n in 0..=f.d {
        if !f.entry(0, n).is_one() {
            flag(
                "empty_face",
                Some(n),
                format!("f(0,{n}) = {}", f.entry(0, n)),
            );
        }
        let h = &derived.h[n];
        let f_row = f.f_poly(n);
        if poly::f_from_h(h, n).ok().as_ref() != Some(&f_row) {
            flag(
                "f_h_round_trip",
                Some(n),
                format!("h row {n} does not map back to f"),
            );
        }
        if poly::reverse(&derived.h_interior[n], n).ok().as_ref() != Some(h) {
            flag(
                "interior_h_reversal",
                Some(n),
                "interior h is not the reversed h row".into(),
            );
        }
        for (label, row) in [
            ("h", h),
            ("interior f", &derived.f_interior[n]),
            ("interior h", &derived.h_interior[n]),
        ] {
            if !row.is_integral() {
                flag(
                    "integrality",
                    Some(n),
                    format!("{label} row {n} = {row} is not integral"),
                );
            }
        }

        let carried = interior_by_carriers(f, n);
        let sign = if n % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        if poly::involution_i(&carried) != f_row.scale(&sign) {
            flag(
                "interior_reciprocity",
                Some(n),
                format!(
                    "interior counts {carried} at -1-x differ from (-1)^{n} f(sigma_{n}) = {}",
                    f_row.scale(&sign)
                ),
            );
        }
        if carried != derived.f_interior[n] {
            flag(
                "interior_f_consistency",
                Some(n),
                format!(
                    "carrier count {carried} vs h-route {}",
                    derived.f_interior[n]
                ),
            );
        }
        if n >= 1 && h.coeff(n - 1) != carried.coeff(1) {
            flag(
                "interior_vertex_count",
                Some(n),
                format!(
                    "h_{} = {} but {} interior vertices",
                    n - 1,
                    h.coeff(n - 1),
                    carried.coeff(1)
                ),
            );
        }
        let rebuilt: Polynomial = (0..=n)
            .map(|k| {
                derived.local_h[k].scale(&Rational::from_integer(binomial(n as i64, k as i64)))
            })
            .sum();
        if &rebuilt != h {
            flag(
                "local_h_inversion",
                Some(n),
                "sum_k C(n,k) l_k differs from h".into(),
            );
        }

        if strict {
            for i in 0..=n {
                if f.entry(i, n) < &binomial(n as i64, i as i64) {
                    flag(
                        "refines_simplex",
                        Some(n),
                        format!("f({i},{n}) = {} < C({n},{i})", f.entry(i, n)),
                    );
                }
            }
            if n >= 1 && !f.entry(1, 1).is_one() {
                flag("refines_simplex", Some(1), "f(1,1) must be 1".into());
            }
            let local = &derived.local_h[n];
            if !local.is_symmetric(n) {
                flag(
                    "local_h_symmetry",
                    Some(n),
                    format!("l(sigma_{n}) = {local} is not symmetric"),
                );
            }
            if let Some((i, c)) = local.first_negative() {
                flag("local_h_nonnegative", Some(n), format!("l({i},{n}) = {c}"));
            }
        }
    }
    ValidationReport {
        strict,
        rows_checked: f.d + 1,
        violations,
    }
}

pub fn triangle_trivial(d: usize) -> FTriangle {
    let rows = (0..=d)
        .map(|n| (0..=n).map(|i| binomial(n as i64, i as i64)).collect())
        .collect();
    FTriangle::new("trivial", BTreeMap::new(), rows).expect("binomial rows")
}

/// Assembles total counts from interior counts: `f(sigma_n) = sum_m C(n,m) f°(sigma_m)`.
fn totals_from_interior(interior: &[Polynomial]) -> Vec<Polynomial> {
    (0..interior.len())
        .map(|n| {
            (0..=n)
                .map(|m| interior[m].scale(&Rational::from_integer(binomial(n as i64, m as i64))))
                .sum()
        })
        .collect()
}

pub fn triangle_barycentric(d: usize) -> FTriangle {
    let stirling = stirling2_table(d);
    let interior: Vec<Polynomial> = (0..=d)
        .map(|n| {
            let coeffs: Vec<BigInt> = (0..=n)
                .map(|k| factorial(k as u64) * &stirling[n][k])
                .collect();
            Polynomial::from_bigints(&coeffs)
        })
        .collect();
    FTriangle::from_polys(
        "barycentric",
        BTreeMap::new(),
        &totals_from_interior(&interior),
    )
    .expect("barycentric counts are integral")
}

/// `h(esd_r(sigma_n)) = ((1 + x + ... + x^(r-1))^n)^<r,0>`, converted back to f.
pub fn triangle_edgewise(r: usize, d: usize) -> Result<FTriangle, TriangleError> {
    if r == 0 {
        return Err(TriangleError::Parameters(
            "edgewise subdivision needs r >= 1".into(),
        ));
    }
    let base = Polynomial::geometric(r);
    let mut power = Polynomial::one();
    let mut f_rows = Vec::with_capacity(d + 1);
    for n in 0..=d {
        if n > 0 {
            power = &power * &base;
        }
        let h = poly::r_section(&power, r, 0).expect("r >= 1");
        f_rows.push(poly::f_from_h(&h, n).expect("section degree <= n"));
    }
    let params = BTreeMap::from([("r".to_string(), r as i64)]);
    let tri = FTriangle::from_polys("edgewise", params, &f_rows)?;
    Ok(tri)
}

/// Triangulates every cell of `inner` by `outer`:
/// `f(sigma_n) = E_outer(f_inner(sigma_n))`.
pub fn compose(inner: &FTriangle, outer: &FTriangle) -> Result<FTriangle, TriangleError> {
    if inner.d != outer.d {
        return Err(TriangleError::SizeMismatch {
            inner: inner.d,
            outer: outer.d,
        });
    }
    let outer_interior = derive(outer).f_interior;
    let rows: Vec<Polynomial> = (0..=inner.d)
        .map(|n| transform::apply_subdivision_operator(&outer_interior, &inner.f_poly(n)))
        .collect::<Result<_, _>>()
        .map_err(|e| TriangleError::Parameters(e.to_string()))?;
    let name = format!("{}∘{}", outer.name, inner.name);
    let mut params = BTreeMap::new();
    for (k, v) in inner.params.iter().chain(outer.params.iter()) {
        params.insert(k.clone(), *v);
    }
    FTriangle::from_polys(&name, params, &rows)
}

/// The r-fold edgewise subdivision of the barycentric subdivision.
pub fn triangle_colored_barycentric(r: usize, d: usize) -> Result<FTriangle, TriangleError> {
    let mut tri = compose(&triangle_barycentric(d), &triangle_edgewise(r, d)?)?;
    tri.name = "colored".into();
    tri.params = BTreeMap::from([("r".to_string(), r as i64)]);
    Ok(tri)
}

/// Same face numbers as the 2-colored barycentric subdivision; only the
/// f-data is provided.
pub fn triangle_interval(d: usize) -> FTriangle {
    let mut tri = triangle_colored_barycentric(2, d).expect("r = 2 is valid");
    tri.name = "interval".into();
    tri
}

/// Edgewise subdivision on faces of dimension `<= s`, then one interior
/// vertex coned over the boundary of each higher face.
pub fn triangle_sdrs(r: usize, s: usize, d: usize) -> Result<FTriangle, TriangleError> {
    if s < 1 || s >= r {
        return Err(TriangleError::Parameters(format!(
            "need 1 <= s < r, got r = {r}, s = {s}"
        )));
    }
    let edgewise = triangle_edgewise(r, d)?;
    let mut totals: Vec<Polynomial> = Vec::with_capacity(d + 1);
    let mut interior: Vec<Polynomial> = Vec::with_capacity(d + 1);
    for n in 0..=d {
        if n <= s + 1 {
            totals.push(edgewise.f_poly(n));
            interior.push(interior_by_carriers(&edgewise, n));
        } else {
            let boundary: Polynomial = (0..n)
                .map(|i| interior[i].scale(&Rational::from_integer(binomial(n as i64, i as i64))))
                .sum();
            interior.push(boundary.shift(1));
            totals.push(&boundary * &Polynomial::from_ints(&[1, 1]));
        }
    }
    let params = BTreeMap::from([("r".to_string(), r as i64), ("s".to_string(), s as i64)]);
    FTriangle::from_polys("sdrs", params, &totals)
}

/// Catalog entries, rebuildable at any size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Catalog {
    Trivial,
    Barycentric,
    Edgewise { r: usize },
    Colored { r: usize },
    Interval,
    Sdrs { r: usize, s: usize },
}

impl Catalog {
    pub fn build(&self, d: usize) -> Result<FTriangle, TriangleError> {
        match *self {
            Catalog::Trivial => Ok(triangle_trivial(d)),
            Catalog::Barycentric => Ok(triangle_barycentric(d)),
            Catalog::Edgewise { r } => triangle_edgewise(r, d),
            Catalog::Colored { r } => triangle_colored_barycentric(r, d),
            Catalog::Interval => Ok(triangle_interval(d)),
            Catalog::Sdrs { r, s } => triangle_sdrs(r, s, d),
        }
    }

    /// Builds from a catalog name plus optional `r`, `s`.
    pub fn parse(name: &str, r: Option<usize>, s: Option<usize>) -> Result<Self, TriangleError> {
        let need_r =
            || r.ok_or_else(|| TriangleError::Parameters(format!("catalog {name:?} needs r")));
        Ok(match name {
            "trivial" => Catalog::Trivial,
            "barycentric" | "sd" => Catalog::Barycentric,
            "edgewise" | "esd" => Catalog::Edgewise { r: need_r()? },
            "colored" => Catalog::Colored { r: need_r()? },
            "interval" => Catalog::Interval,
            "sdrs" => Catalog::Sdrs {
                r: need_r()?,
                s: s.ok_or_else(|| TriangleError::Parameters("catalog \"sdrs\" needs s".into()))?,
            },
            other => return Err(TriangleError::UnknownCatalog(other.to_string())),
        })
    }

    /// Recovers the catalog entry a triangle was built from, if any.
    pub fn of(tri: &FTriangle) -> Option<Self> {
        let r = tri.param("r").and_then(|v| usize::try_from(v).ok());
        let s = tri.param("s").and_then(|v| usize::try_from(v).ok());
        Catalog::parse(&tri.name, r, s).ok()
    }

    /// Rebuilds `tri` at a larger size when it is a catalog triangle.
    pub fn extend(tri: &FTriangle, d: usize) -> Option<FTriangle> {
        if d <= tri.d {
            return Some(tri.clone());
        }
        Catalog::of(tri).and_then(|c| c.build(d).ok())
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Catalog::Trivial => write!(f, "trivial"),
            Catalog::Barycentric => write!(f, "barycentric"),
            Catalog::Edgewise { r } => write!(f, "edgewise(r={r})"),
            Catalog::Colored { r } => write!(f, "colored(r={r})"),
            Catalog::Interval => write!(f, "interval"),
            Catalog::Sdrs { r, s } => write!(f, "sdrs(r={r},s={s})"),
        }
    }
}
