//! Frozen reference values, each cross-checked by an independent route.

use num_bigint::BigInt;
use unitri::colored::{a_plus, ascent_word_poly, eulerian, q_table, DEFAULT_MAX_PERMS};
use unitri::poly::Polynomial;
use unitri::rootcert::{is_real_rooted, Verdict};
use unitri::scomplex::{
    extract_triangle, local_h, subdivide, SimplicialComplex, DEFAULT_MAX_FACES,
};
use unitri::transform::{boundary_h, coeff_table};
use unitri::triangles::{derive, triangle_edgewise, Catalog};

fn p(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}

fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
    v.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn frozen() -> Vec<(Catalog, Vec<Vec<BigInt>>, Polynomial, Polynomial)> {
    vec![
        (
            Catalog::Barycentric,
            rows(&[
                &[1],
                &[1, 1],
                &[1, 3, 2],
                &[1, 7, 12, 6],
                &[1, 15, 50, 60, 24],
            ]),
            p(&[1, 11, 11, 1]),
            p(&[0, 1, 7, 1]),
        ),
        (
            Catalog::Edgewise { r: 3 },
            rows(&[
                &[1],
                &[1, 1],
                &[1, 4, 3],
                &[1, 10, 18, 9],
                &[1, 20, 64, 72, 27],
            ]),
            p(&[1, 16, 10]),
            p(&[0, 0, 6]),
        ),
        (
            Catalog::Colored { r: 2 },
            rows(&[
                &[1],
                &[1, 1],
                &[1, 5, 4],
                &[1, 19, 42, 24],
                &[1, 65, 304, 432, 192],
            ]),
            p(&[1, 61, 115, 15]),
            p(&[0, 15, 87, 15]),
        ),
        (
            Catalog::Sdrs { r: 3, s: 1 },
            rows(&[
                &[1],
                &[1, 1],
                &[1, 4, 3],
                &[1, 10, 18, 9],
                &[1, 21, 74, 90, 36],
            ]),
            p(&[1, 17, 17, 1]),
            p(&[0, 1, 13, 1]),
        ),
    ]
}

#[test]
fn catalog_rows_are_frozen() {
    for (cat, want, h4, l4) in frozen() {
        let t = cat.build(4).unwrap();
        assert_eq!(t.rows(), &want[..], "{cat}");
        let der = derive(&t);
        assert_eq!(der.h[4], h4, "{cat}");
        assert_eq!(der.local_h[4], l4, "{cat}");
    }
}

#[test]
fn catalog_rows_match_explicit_subdivisions() {
    for (cat, want, _, l4) in frozen() {
        let sub = subdivide(&SimplicialComplex::simplex(4), cat, DEFAULT_MAX_FACES).unwrap();
        assert_eq!(extract_triangle(&sub).unwrap().rows(), &want[..], "{cat}");
        assert_eq!(local_h(&sub).unwrap(), l4, "{cat}");
    }
}

#[test]
fn interval_is_two_colored() {
    let a = Catalog::Interval.build(6).unwrap();
    let b = Catalog::Colored { r: 2 }.build(6).unwrap();
    assert_eq!(a.rows(), b.rows());
}

#[test]
fn edgewise_two_boundary_polynomial() {
    let t = triangle_edgewise(2, 5).unwrap();
    let hb = boundary_h(&t, 5).unwrap();
    assert_eq!(hb, p(&[1, 11, 16, 11, 1]));
    let cert = is_real_rooted(&hb);
    assert_eq!(cert.verdict, Verdict::NotRealRooted);
    // the witness is a factor of the input
    let w = cert.witness.unwrap();
    assert!(hb.div_rem(&w).unwrap().1.is_zero());
}

#[test]
fn colored_table_against_permutations() {
    let t = Catalog::Colored { r: 2 }.build(3).unwrap();
    let table = coeff_table(&t, 3).unwrap();
    let want = [
        p(&[1, 16, 7]),
        p(&[0, 14, 10]),
        p(&[0, 10, 14]),
        p(&[0, 7, 16, 1]),
    ];
    assert_eq!(table.polys, want);
    let q = q_table(3, 2, DEFAULT_MAX_PERMS).unwrap();
    for (k, row) in q.iter().enumerate() {
        let ints: Vec<i64> = row.iter().map(|&c| c as i64).collect();
        assert_eq!(p(&ints), want[k], "k = {k}");
    }
    assert_eq!(a_plus(3, 2), want[0]);
}

#[test]
fn sdrs_table_is_frozen() {
    let t = Catalog::Sdrs { r: 3, s: 1 }.build(3).unwrap();
    let table = coeff_table(&t, 3).unwrap();
    assert_eq!(
        table.polys,
        [
            p(&[1, 7, 1]),
            p(&[0, 6, 3]),
            p(&[0, 3, 6]),
            p(&[0, 1, 7, 1])
        ]
    );
}

#[test]
fn ascent_words_are_edgewise_rows() {
    for r in 1..=4 {
        let der = derive(&triangle_edgewise(r, 5).unwrap());
        for n in 0..=4 {
            assert_eq!(ascent_word_poly(n, r), der.h[n + 1], "n = {n}, r = {r}");
        }
    }
    assert_eq!(ascent_word_poly(3, 3), p(&[1, 16, 10]));
}

#[test]
fn eulerian_values() {
    assert_eq!(eulerian(5), p(&[1, 26, 66, 26, 1]));
    assert_eq!(
        eulerian(12).sum_coeffs(),
        unitri::Rational::from_integer(479_001_600.into())
    );
}
