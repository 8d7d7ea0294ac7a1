//! Explicit simplicial complexes and subdivisions with carrier tracking.
//!
//! These constructions are deliberately naive; they exist to count faces
//! directly and cross-check the formula-side triangles.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::poly::{self, Polynomial, Rational};
use crate::triangles::{Catalog, FTriangle};

pub const DEFAULT_MAX_FACES: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("facet {inner:?} is contained in facet {outer:?}")]
    NotMaximal {
        inner: Vec<String>,
        outer: Vec<String>,
    },
    #[error("face count {estimate} exceeds the cap {cap}")]
    TooManyFaces { estimate: u64, cap: u64 },
    #[error("base complex is not a simplex")]
    NotSimplex,
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("malformed complex JSON: {0}")]
    Json(String),
}

pub type Face = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Face>,
}

/// All subsets of a sorted face, including the empty one.
fn subsets(face: &[usize]) -> impl Iterator<Item = Face> + '_ {
    (0u64..1 << face.len()).map(move |mask| {
        face.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

fn union(a: &[usize], b: &[usize]) -> Face {
    let set: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    set.into_iter().collect()
}

fn drop_non_maximal(mut facets: Vec<Face>) -> Vec<Face> {
    for f in &mut facets {
        f.sort_unstable();
        f.dedup();
    }
    facets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    facets.dedup();
    let mut kept: Vec<Face> = Vec::new();
    for f in facets {
        if !kept.iter().any(|k| is_subset(&f, k)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// Facets are given as vertex indices; none may contain another.
    pub fn new(labels: Vec<String>, facets: Vec<Face>) -> Result<Self, ComplexError> {
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(ComplexError::DuplicateLabel(l.clone()));
            }
        }
        let mut facets: Vec<Face> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        for f in &facets {
            if let Some(&v) = f.iter().find(|&&v| v >= labels.len()) {
                return Err(ComplexError::UnknownVertex(v));
            }
        }
        facets.sort();
        facets.dedup();
        for (i, a) in facets.iter().enumerate() {
            for (j, b) in facets.iter().enumerate() {
                if i != j && is_subset(a, b) {
                    let names = |f: &Face| f.iter().map(|&v| labels[v].clone()).collect();
                    return Err(ComplexError::NotMaximal {
                        inner: names(a),
                        outer: names(b),
                    });
                }
            }
        }
        Ok(SimplicialComplex { labels, facets })
    }

    /// Any list of faces; the maximal ones become the facets.
    pub fn from_faces(labels: Vec<String>, faces: Vec<Face>) -> Result<Self, ComplexError> {
        Self::new(labels, drop_non_maximal(faces))
    }

    /// The full simplex on `n` vertices (dimension `n - 1`).
    pub fn simplex(n: usize) -> Self {
        let facets = if n == 0 {
            vec![]
        } else {
            vec![(0..n).collect()]
        };
        SimplicialComplex {
            labels: (1..=n).map(|i| i.to_string()).collect(),
            facets,
        }
    }

    /// The boundary of the simplex on `n` vertices.
    pub fn simplex_boundary(n: usize) -> Self {
        let facets = (0..n)
            .rev()
            .map(|skip| (0..n).filter(|&v| v != skip).collect())
            .collect();
        SimplicialComplex::from_faces((1..=n).map(|i| i.to_string()).collect(), facets)
            .expect("valid boundary")
    }

    /// Two triangles sharing an edge.
    pub fn two_triangles() -> Self {
        SimplicialComplex::new(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            vec![vec![0, 1, 2], vec![1, 2, 3]],
        )
        .expect("valid complex")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Largest face size (dimension + 1).
    pub fn max_face_size(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn dim(&self) -> isize {
        self.max_face_size() as isize - 1
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].len() == self.labels.len()
    }

    /// Upper bound on the number of faces, empty face included.
    pub fn face_bound(&self) -> u64 {
        1 + self
            .facets
            .iter()
            .map(|f| 1u64.checked_shl(f.len() as u32).unwrap_or(u64::MAX))
            .fold(0u64, u64::saturating_add)
    }

    pub fn faces_capped(&self, cap: u64) -> Result<BTreeSet<Face>, ComplexError> {
        let estimate = self.face_bound();
        if estimate > cap {
            return Err(ComplexError::TooManyFaces { estimate, cap });
        }
        let mut faces = BTreeSet::new();
        faces.insert(Vec::new());
        for f in &self.facets {
            faces.extend(subsets(f));
        }
        Ok(faces)
    }

    /// Every face, the empty face included.
    pub fn faces(&self) -> BTreeSet<Face> {
        self.faces_capped(u64::MAX).expect("no cap")
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        face.is_empty() || self.facets.iter().any(|f| is_subset(face, f))
    }

    /// `f[i]` counts faces with `i` vertices, so `f[0] = 1`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.max_face_size() + 1];
        for face in self.faces() {
            f[face.len()] += 1;
        }
        f
    }

    pub fn f_poly(&self) -> Polynomial {
        counts_poly(&self.f_vector())
    }

    pub fn h_poly(&self) -> Polynomial {
        poly::h_from_f(&self.f_poly(), self.max_face_size()).expect("degree fits")
    }

    /// Coefficients of the h-polynomial, padded to length `dim + 2`.
    pub fn h_vector(&self) -> Vec<Rational> {
        self.h_poly().padded(self.max_face_size() + 1)
    }

    pub fn label_face(&self, face: &[usize]) -> Vec<String> {
        face.iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Indices for labels.
    pub fn resolve(&self, labels: &[String]) -> Result<Face, ComplexError> {
        let mut face = labels
            .iter()
            .map(|l| {
                self.labels
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| ComplexError::UnknownLabel(l.clone()))
            })
            .collect::<Result<Face, _>>()?;
        face.sort_unstable();
        Ok(face)
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::json!({
            "vertices": self.labels,
            "facets": self.facets.iter().map(|f| self.label_face(f)).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    /// Reads `{"vertices": [...], "facets": [[...]]}`; labels may be strings or integers.
    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: Vec<Value>,
            facets: Vec<Vec<Value>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        let label = |v: &Value| -> Result<String, ComplexError> {
            match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                other => Err(ComplexError::Json(format!("bad vertex label {other}"))),
            }
        };
        let labels = raw
            .vertices
            .iter()
            .map(label)
            .collect::<Result<Vec<_>, _>>()?;
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let facets = raw
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|v| {
                        let l = label(v)?;
                        index
                            .get(l.as_str())
                            .copied()
                            .ok_or(ComplexError::UnknownLabel(l))
                    })
                    .collect::<Result<Face, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(labels, facets)
    }
}

fn counts_poly(counts: &[u64]) -> Polynomial {
    Polynomial::new(
        counts
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect(),
    )
}

/// A triangulation of `base` with the carrier of each vertex of `total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub base: SimplicialComplex,
    pub total: SimplicialComplex,
    carrier: Vec<Face>,
}

impl Subdivision {
    pub fn new(
        base: SimplicialComplex,
        total: SimplicialComplex,
        carrier: Vec<Face>,
    ) -> Result<Self, ComplexError> {
        if carrier.len() != total.num_vertices() {
            return Err(ComplexError::Parameters(
                "one carrier per vertex required".into(),
            ));
        }
        let s = Subdivision {
            base,
            total,
            carrier,
        };
        for facet in s.total.facets() {
            let c = s.carrier_of(facet);
            if !s.base.contains_face(&c) {
                return Err(ComplexError::Parameters(format!(
                    "carrier {:?} is not a face of the base",
                    s.base.label_face(&c)
                )));
            }
        }
        Ok(s)
    }

    /// The identity subdivision.
    pub fn trivial(base: &SimplicialComplex) -> Self {
        let carrier = (0..base.num_vertices()).map(|v| vec![v]).collect();
        Subdivision {
            base: base.clone(),
            total: base.clone(),
            carrier,
        }
    }

    pub fn vertex_carrier(&self, v: usize) -> &[usize] {
        &self.carrier[v]
    }

    /// Union of the vertex carriers.
    pub fn carrier_of(&self, face: &[usize]) -> Face {
        face.iter()
            .fold(Vec::new(), |acc, &v| union(&acc, &self.carrier[v]))
    }

    /// Face counts of `total` grouped by exact carrier, indexed by face size.
    pub fn counts_by_carrier(&self) -> BTreeMap<Face, Vec<u64>> {
        let width = self.total.max_face_size() + 1;
        let mut out: BTreeMap<Face, Vec<u64>> = BTreeMap::new();
        for face in self.total.faces() {
            let c = self.carrier_of(&face);
            out.entry(c).or_insert_with(|| vec![0; width])[face.len()] += 1;
        }
        out
    }

    /// f-vector of the restriction to a base face (faces carried inside it).
    pub fn restriction_f_vector(&self, face: &[usize]) -> Vec<u64> {
        restriction_from(&self.counts_by_carrier(), face)
    }

    /// Faces carried by exactly `face`.
    pub fn interior_f_vector(&self, face: &[usize]) -> Vec<u64> {
        let width = self.total.max_face_size() + 1;
        let mut v = self
            .counts_by_carrier()
            .get(face)
            .cloned()
            .unwrap_or_else(|| vec![0; width]);
        v.truncate(face.len() + 1);
        v.resize(face.len() + 1, 0);
        v
    }

    /// Total, base and carriers as labels.
    pub fn to_json_value(&self) -> Value {
        let carriers: BTreeMap<String, Vec<String>> = (0..self.total.num_vertices())
            .map(|v| {
                (
                    self.total.labels()[v].clone(),
                    self.base.label_face(&self.carrier[v]),
                )
            })
            .collect();
        let mut obj = self.total.to_json_value();
        obj["carriers"] = serde_json::to_value(carriers).expect("serializable");
        obj["base"] = self.base.to_json_value();
        obj
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }
}

fn restriction_from(counts: &BTreeMap<Face, Vec<u64>>, face: &[usize]) -> Vec<u64> {
    let mut out = vec![0u64; face.len() + 1];
    for (c, v) in counts {
        if is_subset(c, face) {
            for (i, &x) in v.iter().enumerate().take(face.len() + 1) {
                out[i] += x;
            }
        }
    }
    out
}

fn check_cap(estimate: u64, cap: u64) -> Result<(), ComplexError> {
    if estimate > cap {
        Err(ComplexError::TooManyFaces { estimate, cap })
    } else {
        Ok(())
    }
}

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).fold(1u64, |a, b| a.saturating_mul(b))
}

fn pow_u64(b: usize, e: usize) -> u64 {
    (b as u64).saturating_pow(e as u32)
}

/// `sum over facets F of (subdivided facets of F) * 2^|F|`.
fn estimate(base: &SimplicialComplex, per_facet: impl Fn(usize) -> u64) -> u64 {
    base.facets()
        .iter()
        .map(|f| per_facet(f.len()).saturating_mul(1u64 << f.len().min(63)))
        .fold(1, u64::saturating_add)
}

fn brace(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

pub fn barycentric_subdivide(base: &SimplicialComplex) -> Result<Subdivision, ComplexError> {
    barycentric_subdivide_capped(base, DEFAULT_MAX_FACES)
}

/// Vertices are the nonempty faces of `base`; faces are chains.
pub fn barycentric_subdivide_capped(
    base: &SimplicialComplex,
    cap: u64,
) -> Result<Subdivision, ComplexError> {
    check_cap(estimate(base, factorial_u64), cap)?;
    let mut vertices: Vec<Face> = base.faces().into_iter().filter(|f| !f.is_empty()).collect();
    vertices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<&Face, usize> = vertices.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut facets = Vec::new();
    for facet in base.facets() {
        for order in permutations(facet) {
            let chain = (1..=order.len())
                .map(|k| {
                    let mut prefix = order[..k].to_vec();
                    prefix.sort_unstable();
                    index[&prefix]
                })
                .collect();
            facets.push(chain);
        }
    }
    let labels = vertices
        .iter()
        .map(|f| brace(&base.label_face(f)))
        .collect();
    let total = SimplicialComplex::from_faces(labels, facets)?;
    Subdivision::new(base.clone(), total, vertices)
}

/// Weak compositions of `r` into `m` parts.
fn compositions(r: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if r == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=r).rev() {
        for mut rest in compositions(r - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Maximal cliques (Bron–Kerbosch with pivoting).
fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn bk(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
            .expect("nonempty");
        let mut p = p;
        for v in p.clone() {
            if adj[pivot][v] {
                continue;
            }
            r.push(v);
            let np = p.iter().copied().filter(|&u| adj[v][u]).collect();
            let nx = x.iter().copied().filter(|&u| adj[v][u]).collect();
            bk(adj, r, np, nx, out);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    bk(
        adj,
        &mut Vec::new(),
        (0..adj.len()).collect(),
        Vec::new(),
        &mut out,
    );
    out
}

/// Vertex registry shared by the explicit constructions.
struct Builder<'a> {
    base: &'a SimplicialComplex,
    labels: Vec<String>,
    carriers: Vec<Face>,
    index: HashMap<String, usize>,
    facets: Vec<Face>,
}

impl<'a> Builder<'a> {
    fn new(base: &'a SimplicialComplex) -> Self {
        Builder {
            base,
            labels: Vec::new(),
            carriers: Vec::new(),
            index: HashMap::new(),
            facets: Vec::new(),
        }
    }

    fn vertex(&mut self, label: String, carrier: Face) -> usize {
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        self.carriers.push(carrier);
        i
    }

    /// Facets of the `r`-fold edgewise subdivision of the base face `face`.
    fn edgewise_face(&mut self, face: &[usize], r: usize) -> Vec<Face> {
        let m = face.len();
        let comps = compositions(r, m);
        let prefix: Vec<Vec<usize>> = comps
            .iter()
            .map(|c| {
                c.iter()
                    .scan(0, |s, &x| {
                        *s += x;
                        Some(*s)
                    })
                    .collect()
            })
            .collect();
        let step = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(x, y)| x >= y && x - y <= 1);
        let adj: Vec<Vec<bool>> = (0..comps.len())
            .map(|i| {
                (0..comps.len())
                    .map(|j| {
                        i != j && (step(&prefix[i], &prefix[j]) || step(&prefix[j], &prefix[i]))
                    })
                    .collect()
            })
            .collect();
        let ids: Vec<usize> = comps
            .iter()
            .map(|c| {
                let mut full = vec![0usize; self.base.num_vertices()];
                for (&v, &x) in face.iter().zip(c) {
                    full[v] = x;
                }
                let label = format!(
                    "({})",
                    full.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                let support = face
                    .iter()
                    .zip(c)
                    .filter(|(_, &x)| x > 0)
                    .map(|(&v, _)| v)
                    .collect();
                self.vertex(label, support)
            })
            .collect();
        maximal_cliques(&adj)
            .into_iter()
            .map(|q| {
                let mut f: Face = q.into_iter().map(|i| ids[i]).collect();
                f.sort_unstable();
                f
            })
            .collect()
    }

    fn finish(self) -> Result<Subdivision, ComplexError> {
        let total = SimplicialComplex::from_faces(self.labels, self.facets)?;
        Subdivision::new(self.base.clone(), total, self.carriers)
    }
}

pub fn edgewise_subdivide(base: &SimplicialComplex, r: usize) -> Result<Subdivision, ComplexError> {
    edgewise_subdivide_capped(base, r, DEFAULT_MAX_FACES)
}

/// Vertices are maps `V -> N` summing to `r` with support in `base`; faces
/// are sets whose prefix-sum vectors differ pairwise by a 0/1 vector.
pub fn edgewise_subdivide_capped(
    base: &SimplicialComplex,
    r: usize,
    cap: u64,
) -> Result<Subdivision, ComplexError> {
    if r == 0 {
        return Err(ComplexError::Parameters("r must be at least 1".into()));
    }
    check_cap(estimate(base, |m| pow_u64(r, m.saturating_sub(1))), cap)?;
    let mut b = Builder::new(base);
    for facet in base.facets() {
        let cells = b.edgewise_face(facet, r);
        b.facets.extend(cells);
    }
    b.finish()
}

fn sdrs_facet_count(r: usize, s: usize, m: usize) -> u64 {
    if m <= s + 1 {
        pow_u64(r, m.saturating_sub(1))
    } else {
        (m as u64).saturating_mul(sdrs_facet_count(r, s, m - 1))
    }
}

pub fn sdrs_subdivide(
    base: &SimplicialComplex,
    r: usize,
    s: usize,
) -> Result<Subdivision, ComplexError> {
    sdrs_subdivide_capped(base, r, s, DEFAULT_MAX_FACES)
}

/// Edgewise subdivision of the `s`-skeleton, then coning each higher face
/// from a new interior vertex, in order of dimension.
pub fn sdrs_subdivide_capped(
    base: &SimplicialComplex,
    r: usize,
    s: usize,
    cap: u64,
) -> Result<Subdivision, ComplexError> {
    if s < 1 || s >= r {
        return Err(ComplexError::Parameters(format!(
            "need 1 <= s < r, got r = {r}, s = {s}"
        )));
    }
    check_cap(estimate(base, |m| sdrs_facet_count(r, s, m)), cap)?;
    let mut faces: Vec<Face> = base.faces().into_iter().filter(|f| !f.is_empty()).collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut b = Builder::new(base);
    let mut cells: HashMap<Face, Vec<Face>> = HashMap::new();
    for face in faces {
        let subdivided = if face.len() <= s + 1 {
            b.edgewise_face(&face, r)
        } else {
            let apex = b.vertex(brace(&base.label_face(&face)), face.clone());
            let mut out = Vec::new();
            for skip in 0..face.len() {
                let side: Face = face
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                for cell in &cells[&side] {
                    let mut c = cell.clone();
                    c.push(apex);
                    c.sort_unstable();
                    out.push(c);
                }
            }
            out
        };
        cells.insert(face, subdivided);
    }
    for facet in base.facets() {
        let fc = cells[facet].clone();
        b.facets.extend(fc);
    }
    b.finish()
}

/// `outer` subdivides `inner.total`; the result subdivides `inner.base`.
pub fn compose_subdivisions(
    inner: &Subdivision,
    outer: &Subdivision,
) -> Result<Subdivision, ComplexError> {
    if outer.base != inner.total {
        return Err(ComplexError::Parameters(
            "outer must subdivide the inner total complex".into(),
        ));
    }
    let carrier = (0..outer.total.num_vertices())
        .map(|v| inner.carrier_of(outer.vertex_carrier(v)))
        .collect();
    Subdivision::new(inner.base.clone(), outer.total.clone(), carrier)
}

/// `esd_r(sd(base))`.
pub fn colored_barycentric_subdivide_capped(
    base: &SimplicialComplex,
    r: usize,
    cap: u64,
) -> Result<Subdivision, ComplexError> {
    check_cap(
        estimate(base, |m| {
            factorial_u64(m).saturating_mul(pow_u64(r, m.saturating_sub(1)))
        }),
        cap,
    )?;
    let sd = barycentric_subdivide_capped(base, cap)?;
    let esd = edgewise_subdivide_capped(&sd.total, r, cap)?;
    compose_subdivisions(&sd, &esd)
}

pub fn colored_barycentric_subdivide(
    base: &SimplicialComplex,
    r: usize,
) -> Result<Subdivision, ComplexError> {
    colored_barycentric_subdivide_capped(base, r, DEFAULT_MAX_FACES)
}

/// The explicit construction behind a catalog entry.
pub fn subdivide(
    base: &SimplicialComplex,
    catalog: Catalog,
    cap: u64,
) -> Result<Subdivision, ComplexError> {
    check_cap(base.face_bound(), cap)?;
    match catalog {
        Catalog::Trivial => Ok(Subdivision::trivial(base)),
        Catalog::Barycentric => barycentric_subdivide_capped(base, cap),
        Catalog::Edgewise { r } => edgewise_subdivide_capped(base, r, cap),
        Catalog::Colored { r } => colored_barycentric_subdivide_capped(base, r, cap),
        Catalog::Interval => colored_barycentric_subdivide_capped(base, 2, cap),
        Catalog::Sdrs { r, s } => sdrs_subdivide_capped(base, r, s, cap),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformityMismatch {
    pub face: Vec<String>,
    pub expected: Vec<String>,
    pub found: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformityReport {
    pub faces_checked: usize,
    pub mismatches: Vec<UniformityMismatch>,
}

impl UniformityReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the restriction to every nonempty base face with the triangle row
/// of matching size.
pub fn uniformity_check(
    sub: &Subdivision,
    tri: &FTriangle,
) -> Result<UniformityReport, ComplexError> {
    if sub.base.max_face_size() > tri.d {
        return Err(ComplexError::Parameters(format!(
            "triangle of size {} is too small for base dimension {}",
            tri.d,
            sub.base.dim()
        )));
    }
    let counts = sub.counts_by_carrier();
    let faces: Vec<Face> = sub
        .base
        .faces()
        .into_iter()
        .filter(|f| !f.is_empty())
        .collect();
    let mut mismatches = Vec::new();
    for face in &faces {
        let found = restriction_from(&counts, face);
        let row = &tri.rows()[face.len()];
        let matches =
            found.len() == row.len() && found.iter().zip(row).all(|(a, b)| &BigInt::from(*a) == b);
        if !matches {
            mismatches.push(UniformityMismatch {
                face: sub.base.label_face(face),
                expected: row.iter().map(|x| x.to_string()).collect(),
                found,
            });
        }
    }
    Ok(UniformityReport {
        faces_checked: faces.len(),
        mismatches,
    })
}

/// Reads off the f-triangle of a subdivided simplex by direct counting,
/// using the initial faces `{1..j}`.
pub fn extract_triangle(sub: &Subdivision) -> Result<FTriangle, ComplexError> {
    if !sub.base.is_simplex() {
        return Err(ComplexError::NotSimplex);
    }
    let counts = sub.counts_by_carrier();
    let n = sub.base.num_vertices();
    let rows = (0..=n)
        .map(|j| {
            let face: Face = (0..j).collect();
            restriction_from(&counts, &face)
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect();
    FTriangle::new("extracted", BTreeMap::new(), rows)
        .map_err(|e| ComplexError::Parameters(e.to_string()))
}

/// Faces whose carrier is the whole simplex, indexed by size.
pub fn interior_face_counts(sub: &Subdivision) -> Result<Vec<u64>, ComplexError> {
    if !sub.base.is_simplex() {
        return Err(ComplexError::NotSimplex);
    }
    let all: Face = (0..sub.base.num_vertices()).collect();
    Ok(sub.interior_f_vector(&all))
}

/// `sum over F of (-1)^(n - |F|) h(restriction to F)`.
pub fn local_h(sub: &Subdivision) -> Result<Polynomial, ComplexError> {
    if !sub.base.is_simplex() {
        return Err(ComplexError::NotSimplex);
    }
    let n = sub.base.num_vertices();
    let counts = sub.counts_by_carrier();
    let all: Face = (0..n).collect();
    let mut total = Polynomial::zero();
    for face in subsets(&all) {
        let f = counts_poly(&restriction_from(&counts, &face));
        let h = poly::h_from_f(&f, face.len()).expect("degree fits");
        if (n - face.len()).is_multiple_of(2) {
            total = &total + &h;
        } else {
            total = &total - &h;
        }
    }
    Ok(total)
}

/// `total` minus the faces of a subcomplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeComplex {
    pub total: SimplicialComplex,
    pub removed: BTreeSet<Face>,
    /// Window for the h-polynomial.
    pub n: usize,
}

impl RelativeComplex {
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.n + 1];
        for face in self.total.faces() {
            if !self.removed.contains(&face) {
                f[face.len()] += 1;
            }
        }
        f
    }

    pub fn f_poly(&self) -> Polynomial {
        counts_poly(&self.f_vector())
    }

    pub fn h_poly(&self) -> Polynomial {
        poly::h_from_f(&self.f_poly(), self.n).expect("degree fits")
    }
}

/// The codimension-one faces of the base simplex in lexicographic order:
/// the `i`-th omits vertex `n - 1 - i`.
pub fn simplex_facets_lex(n: usize) -> Vec<Face> {
    (0..n)
        .rev()
        .map(|skip| (0..n).filter(|&v| v != skip).collect())
        .collect()
}

/// Removes every face carried inside one of `chosen` (base faces).
pub fn gamma_with_facets(
    sub: &Subdivision,
    chosen: &[Face],
) -> Result<RelativeComplex, ComplexError> {
    if !sub.base.is_simplex() {
        return Err(ComplexError::NotSimplex);
    }
    let removed = sub
        .total
        .faces()
        .into_iter()
        .filter(|g| {
            let c = sub.carrier_of(g);
            chosen.iter().any(|f| is_subset(&c, f))
        })
        .collect();
    Ok(RelativeComplex {
        total: sub.total.clone(),
        removed,
        n: sub.base.num_vertices(),
    })
}

/// `Gamma_{n,k}` for the lexicographically first `k` facets.
pub fn gamma_nk(sub: &Subdivision, k: usize) -> Result<RelativeComplex, ComplexError> {
    let n = sub.base.num_vertices();
    if k > n {
        return Err(ComplexError::Parameters(format!("k = {k} exceeds n = {n}")));
    }
    gamma_with_facets(sub, &simplex_facets_lex(n)[..k])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelativeSymmetryReport {
    pub chosen: Vec<Vec<String>>,
    pub reversed: Polynomial,
    pub complement: Polynomial,
    pub holds: bool,
}

/// Checks `x^n h(Delta/Gamma, 1/x) = h(Delta/Gamma_bar, x)`, with `Gamma`
/// the chosen facets and `Gamma_bar` the remaining ones.
pub fn relative_symmetry_check(
    sub: &Subdivision,
    chosen: &[Face],
) -> Result<RelativeSymmetryReport, ComplexError> {
    let n = sub.base.num_vertices();
    let rest: Vec<Face> = simplex_facets_lex(n)
        .into_iter()
        .filter(|f| !chosen.contains(f))
        .collect();
    let h_gamma = gamma_with_facets(sub, chosen)?.h_poly();
    let h_bar = gamma_with_facets(sub, &rest)?.h_poly();
    let reversed = poly::reverse(&h_gamma, n).expect("degree fits");
    Ok(RelativeSymmetryReport {
        chosen: chosen.iter().map(|f| sub.base.label_face(f)).collect(),
        holds: reversed == h_bar,
        reversed,
        complement: h_bar,
    })
}

/// `f_{j-1}(total) = sum_m f_{m-1}(base) f°(j, m)`, the interior counts read
/// from the triangle.
pub fn face_count_identity(sub: &Subdivision, tri: &FTriangle) -> bool {
    let der = crate::triangles::derive(tri);
    let base_f = sub.base.f_vector();
    let lhs = sub.total.f_vector();
    let width = lhs.len().max(base_f.len());
    (0..width).all(|j| {
        let rhs: Rational = base_f
            .iter()
            .enumerate()
            .filter(|&(m, _)| m <= tri.d)
            .map(|(m, &c)| der.f_interior[m].coeff(j) * Rational::from_integer(c.into()))
            .fold(Rational::zero(), |a, b| a + b);
        rhs == Rational::from_integer(lhs.get(j).copied().unwrap_or(0).into())
    })
}

/// Converts a nonnegative integral rational vector to `u64` when possible.
pub fn to_counts(v: &[Rational]) -> Option<Vec<u64>> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                x.to_integer().to_u64()
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform;
    use crate::triangles::{
        triangle_barycentric, triangle_colored_barycentric, triangle_edgewise, triangle_sdrs,
        triangle_trivial,
    };

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn simplex_and_boundary_vectors() {
        let s3 = SimplicialComplex::simplex(3);
        assert_eq!(s3.f_vector(), vec![1, 3, 3, 1]);
        assert_eq!(s3.h_poly(), p(&[1]));
        let b3 = SimplicialComplex::simplex_boundary(3);
        assert_eq!(b3.f_vector(), vec![1, 3, 3]);
        assert_eq!(b3.h_poly(), p(&[1, 1, 1]));
        let tt = SimplicialComplex::two_triangles();
        assert_eq!(tt.f_vector(), vec![1, 4, 5, 2]);
        assert_eq!(tt.h_poly(), p(&[1, 1]));
        assert_eq!(SimplicialComplex::simplex(0).f_vector(), vec![1]);
    }

    #[test]
    fn rejects_non_maximal_facets() {
        let err = SimplicialComplex::new(vec!["a".into(), "b".into()], vec![vec![0], vec![0, 1]]);
        assert!(matches!(err, Err(ComplexError::NotMaximal { .. })));
        assert!(SimplicialComplex::new(vec!["a".into()], vec![vec![3]]).is_err());
    }

    #[test]
    fn json_round_trip_with_integer_labels() {
        let k = SimplicialComplex::from_json(r#"{"vertices":[1,2,"x"],"facets":[[1,2],[2,"x"]]}"#)
            .unwrap();
        assert_eq!(k.f_vector(), vec![1, 3, 2]);
        let again = SimplicialComplex::from_json(&k.to_json()).unwrap();
        assert_eq!(again, k);
        assert!(SimplicialComplex::from_json(r#"{"vertices":[1],"facets":[[2]]}"#).is_err());
    }

    #[test]
    fn barycentric_examples() {
        let sd2 = barycentric_subdivide(&SimplicialComplex::simplex(2)).unwrap();
        assert_eq!(sd2.total.f_vector(), vec![1, 3, 2]);
        let sd3 = barycentric_subdivide(&SimplicialComplex::simplex(3)).unwrap();
        assert_eq!(sd3.total.h_poly(), p(&[1, 4, 1]));
        for n in 1..=5 {
            let sd = barycentric_subdivide(&SimplicialComplex::simplex(n)).unwrap();
            assert!(uniformity_check(&sd, &triangle_barycentric(n))
                .unwrap()
                .passed());
        }
        let sdb = barycentric_subdivide(&SimplicialComplex::simplex_boundary(4)).unwrap();
        assert!(uniformity_check(&sdb, &triangle_barycentric(4))
            .unwrap()
            .passed());
        assert_eq!(interior_face_counts(&sd2).unwrap(), vec![0, 1, 2]);
        assert_eq!(local_h(&sd2).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn edgewise_examples() {
        let e = edgewise_subdivide(&SimplicialComplex::simplex(3), 4).unwrap();
        assert_eq!(e.total.facets().len(), 16);
        assert_eq!(e.total.f_vector(), vec![1, 15, 30, 16]);
        assert_eq!(interior_face_counts(&e).unwrap()[1], 3);
        assert_eq!(local_h(&e).unwrap(), p(&[0, 3, 3]));
        let one = edgewise_subdivide(&SimplicialComplex::simplex_boundary(4), 1).unwrap();
        assert_eq!(
            one.total.f_vector(),
            SimplicialComplex::simplex_boundary(4).f_vector()
        );
        for n in 1..=4 {
            for r in 1..=4 {
                let e = edgewise_subdivide(&SimplicialComplex::simplex(n), r).unwrap();
                let t = triangle_edgewise(r, n).unwrap();
                assert_eq!(
                    extract_triangle(&e).unwrap().rows(),
                    t.rows(),
                    "n = {n}, r = {r}"
                );
            }
        }
        for r in 1..=4 {
            for base in [
                SimplicialComplex::two_triangles(),
                SimplicialComplex::simplex_boundary(4),
            ] {
                let e = edgewise_subdivide(&base, r).unwrap();
                assert!(uniformity_check(&e, &triangle_edgewise(r, 3).unwrap())
                    .unwrap()
                    .passed());
            }
        }
    }

    #[test]
    fn uniformity_mutation_is_located() {
        let e = edgewise_subdivide(&SimplicialComplex::simplex(3), 2).unwrap();
        let mut t = triangle_edgewise(2, 3).unwrap();
        *t.entry_mut(1, 2) += 1;
        let rep = uniformity_check(&e, &t).unwrap();
        assert!(!rep.passed());
        assert!(rep.mismatches.iter().all(|m| m.face.len() == 2));
        assert_eq!(rep.mismatches.len(), 3);
    }

    #[test]
    fn sdrs_examples() {
        let s3 = SimplicialComplex::simplex(3);
        assert_eq!(
            sdrs_subdivide(&s3, 4, 2).unwrap().total.f_vector(),
            edgewise_subdivide(&s3, 4).unwrap().total.f_vector()
        );
        for n in 1..=4 {
            let s = SimplicialComplex::simplex(n);
            assert_eq!(
                sdrs_subdivide(&s, 2, 1).unwrap().total.f_vector(),
                barycentric_subdivide(&s).unwrap().total.f_vector()
            );
            let sub = sdrs_subdivide(&s, 3, 1).unwrap();
            assert_eq!(
                extract_triangle(&sub).unwrap().rows(),
                triangle_sdrs(3, 1, n).unwrap().rows()
            );
        }
        assert!(sdrs_subdivide(&s3, 2, 2).is_err());
    }

    #[test]
    fn colored_matches_triangle() {
        for r in 1..=3 {
            for n in 1..=3 {
                let sub = colored_barycentric_subdivide(&SimplicialComplex::simplex(n), r).unwrap();
                let t = triangle_colored_barycentric(r, n).unwrap();
                assert_eq!(
                    extract_triangle(&sub).unwrap().rows(),
                    t.rows(),
                    "r = {r}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn gamma_table() {
        let e = edgewise_subdivide(&SimplicialComplex::simplex(3), 4).unwrap();
        let expected = [
            p(&[1, 15, 30, 16]),
            p(&[0, 10, 26, 16]),
            p(&[0, 6, 22, 16]),
            p(&[0, 3, 18, 16]),
        ];
        let t = triangle_edgewise(4, 3).unwrap();
        for (k, want) in expected.iter().enumerate() {
            let g = gamma_nk(&e, k).unwrap();
            assert_eq!(&g.f_poly(), want, "k = {k}");
            assert_eq!(g.h_poly(), transform::p_poly_formula(&t, 3, k).unwrap());
        }
        assert!(gamma_nk(&e, 4).is_err());
        // choice independence
        let other = gamma_with_facets(&e, &[vec![1, 2]]).unwrap();
        assert_eq!(other.h_poly(), gamma_nk(&e, 1).unwrap().h_poly());
    }

    #[test]
    fn relative_symmetry() {
        let e = edgewise_subdivide(&SimplicialComplex::simplex(3), 4).unwrap();
        assert!(relative_symmetry_check(&e, &[vec![0, 1]]).unwrap().holds);
        let all = simplex_facets_lex(3);
        let rep = relative_symmetry_check(&e, &all).unwrap();
        assert!(rep.holds);
        let der = crate::triangles::derive(&triangle_edgewise(4, 3).unwrap());
        assert_eq!(rep.reversed, der.h[3]);
        let triv = Subdivision::trivial(&SimplicialComplex::simplex(3));
        assert!(relative_symmetry_check(&triv, &all[..2]).unwrap().holds);
        assert_eq!(interior_face_counts(&triv).unwrap(), vec![0, 0, 0, 1]);
        assert!(uniformity_check(&triv, &triangle_trivial(3))
            .unwrap()
            .passed());
    }

    #[test]
    fn face_count_identity_on_non_simplices() {
        for base in [
            SimplicialComplex::two_triangles(),
            SimplicialComplex::simplex_boundary(4),
        ] {
            assert!(face_count_identity(
                &barycentric_subdivide(&base).unwrap(),
                &triangle_barycentric(3)
            ));
            assert!(face_count_identity(
                &edgewise_subdivide(&base, 3).unwrap(),
                &triangle_edgewise(3, 3).unwrap()
            ));
        }
    }

    #[test]
    fn caps_are_enforced() {
        let big = SimplicialComplex::simplex(8);
        assert!(matches!(
            barycentric_subdivide_capped(&big, 1000),
            Err(ComplexError::TooManyFaces { .. })
        ));
    }

    #[test]
    fn subdivision_json_has_carriers() {
        let sd = barycentric_subdivide(&SimplicialComplex::simplex(2)).unwrap();
        let v: Value = serde_json::from_str(&sd.to_json()).unwrap();
        assert_eq!(v["carriers"]["{1,2}"], serde_json::json!(["1", "2"]));
        assert_eq!(v["facets"].as_array().unwrap().len(), 2);
    }
}
