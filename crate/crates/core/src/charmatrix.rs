//! Characteristic matrices: one column per facet, `n` rows.
//!
//! An `Int` matrix describes an omnioriented quasitoric manifold; the signs of
//! each column carry the facet orientations. A `Mod2` matrix describes a small
//! cover. A matrix is valid when the columns of the `n` facets at every vertex
//! form a basis of `Z^n` (resp. `Z_2^n`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{SimplexProduct, Vertex};
use crate::serde_int::Int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Ring {
    #[serde(rename = "INT")]
    Int,
    #[serde(rename = "MOD2")]
    Mod2,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Int => "INT",
            Ring::Mod2 => "MOD2",
        })
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "INT" => Ok(Ring::Int),
            "MOD2" => Ok(Ring::Mod2),
            other => Err(Error::Parse(format!("unknown ring {other:?}, expected INT or MOD2"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharMatrix {
    ring: Ring,
    polytope: SimplexProduct,
    rows: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub failing_vertex: Option<Vertex>,
    /// Determinant at the failing vertex.
    #[serde(with = "crate::serde_int::option")]
    pub determinant: Option<BigInt>,
}

/// How the column of a factor's last facet reaches into the fiber rows of a
/// block matrix (the `J_j` and `1_{k-1}` blocks).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberLink {
    None,
    /// A single 1 in the given fiber row (zero-based).
    Row(usize),
    /// 1 in every fiber row.
    AllOnes,
}

impl CharMatrix {
    pub fn new(polytope: SimplexProduct, ring: Ring, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let (n, m) = (polytope.dim(), polytope.num_facets());
        if rows.len() != n || rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "polytope {polytope} needs a {n}x{m} matrix, got {} rows of lengths {:?}",
                rows.len(),
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        if ring == Ring::Mod2 && rows.iter().flatten().any(|v| !(v.is_zero() || v.is_one())) {
            return Err(Error::InvalidMatrix("MOD2 entries must be 0 or 1".into()));
        }
        Ok(Self { ring, polytope, rows })
    }

    pub fn from_i64(polytope: SimplexProduct, ring: Ring, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        Self::new(polytope, ring, rows)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn polytope(&self) -> &SimplexProduct {
        &self.polytope
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.polytope.num_facets()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    /// Square submatrix on the given columns.
    pub fn columns(&self, cols: &[usize]) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect()
    }

    /// Determinant of the vertex's columns in facet order (`0`/`1` over MOD2).
    pub fn vertex_determinant(&self, v: &Vertex) -> BigInt {
        let sub = self.columns(&self.polytope.vertex_facets(v));
        match self.ring {
            Ring::Int => linalg::det_bareiss(sub),
            Ring::Mod2 => BigInt::from(linalg::det_gf2(&linalg::to_gf2(&sub)) as u8),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        for v in self.polytope.vertices() {
            let d = self.vertex_determinant(&v);
            let ok = match self.ring {
                Ring::Int => d.abs().is_one(),
                Ring::Mod2 => d.is_odd(),
            };
            if !ok {
                return ValidationReport { valid: false, failing_vertex: Some(v), determinant: Some(d) };
            }
        }
        ValidationReport { valid: true, failing_vertex: None, determinant: None }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    /// Every column sums to 1.
    pub fn is_special(&self) -> Result<bool> {
        if self.ring != Ring::Int {
            return Err(Error::RingMismatch { expected: Ring::Int, found: self.ring });
        }
        Ok((0..self.num_cols()).all(|j| self.column_sum(j).is_one()))
    }

    pub fn column_sum(&self, j: usize) -> BigInt {
        self.rows.iter().map(|r| &r[j]).sum()
    }

    pub fn mod2_reduce(&self) -> Result<CharMatrix> {
        if self.ring != Ring::Int {
            return Err(Error::RingMismatch { expected: Ring::Int, found: self.ring });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| if v.is_odd() { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        CharMatrix::new(self.polytope.clone(), Ring::Mod2, rows)
    }

    /// Whether `g·self = other` for some invertible `g` over `Z_2`.
    ///
    /// `g` is forced by the columns at a vertex where `self` is a basis, so it
    /// is solved for directly and then checked on all columns.
    pub fn equivalent_mod2(&self, other: &CharMatrix) -> Result<bool> {
        for m in [self, other] {
            if m.ring != Ring::Mod2 {
                return Err(Error::RingMismatch { expected: Ring::Mod2, found: m.ring });
            }
        }
        if self.polytope != other.polytope {
            return Err(Error::DimensionMismatch(format!(
                "cannot compare matrices on {} and {}",
                self.polytope, other.polytope
            )));
        }
        let mine = linalg::to_gf2(&self.rows);
        let theirs = linalg::to_gf2(&other.rows);
        let vertex = std::iter::once(self.polytope.last_vertex())
            .chain(self.polytope.vertices())
            .find(|v| self.vertex_determinant(v).is_odd());
        let Some(vertex) = vertex else {
            return Err(Error::InvalidMatrix("no vertex of the first matrix carries a basis".into()));
        };
        let cols = self.polytope.vertex_facets(&vertex);
        let a = linalg::select_columns(&mine, &cols);
        let b = linalg::select_columns(&theirs, &cols);
        if !linalg::det_gf2(&b) {
            return Ok(false);
        }
        let a_inv = linalg::inverse_gf2(&a).expect("basis columns are invertible");
        let g = linalg::mul_gf2(&b, &a_inv);
        Ok(linalg::mul_gf2(&g, &mine) == theirs)
    }

    /// Text form: `n m ring` then `n` rows of `m` integers.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.num_rows(), self.num_cols(), self.ring);
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(BigInt::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str, polytope: SimplexProduct) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("header must be `n m ring`, got {header:?}")));
        }
        let n: usize = fields[0].parse().map_err(|_| Error::Parse(format!("bad row count {:?}", fields[0])))?;
        let m: usize = fields[1].parse().map_err(|_| Error::Parse(format!("bad column count {:?}", fields[1])))?;
        let ring: Ring = fields[2].parse()?;
        let mut rows = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<BigInt>().map_err(|_| Error::Parse(format!("row {}: bad entry {t:?}", i + 1))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != m {
                return Err(Error::Parse(format!("row {} has {} entries, header says {m}", i + 1, row.len())));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse(format!("found {} rows, header says {n}", rows.len())));
        }
        CharMatrix::new(polytope, ring, rows)
    }

    /// Entries as `i64` where they fit, for reports.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.rows.iter().map(|r| r.iter().map(ToPrimitive::to_i64).collect()).collect()
    }
}

impl fmt::Display for CharMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Serialized as `{dims, ring, rows}`.
impl Serialize for CharMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Row<'a>(&'a [BigInt]);
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for v in self.0 {
                    seq.serialize_element(&Int(v))?;
                }
                seq.end()
            }
        }
        let rows: Vec<Row> = self.rows.iter().map(|r| Row(r)).collect();
        let mut st = s.serialize_struct("CharMatrix", 3)?;
        st.serialize_field("dims", self.polytope.factor_dims())?;
        st.serialize_field("ring", &self.ring)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// `1̃_j`: length `j`, entries `-1` at even (one-based) positions, `1` elsewhere.
pub fn alternating_ones(len: usize) -> Vec<i64> {
    (0..len).map(|i| if i % 2 == 1 { -1 } else { 1 }).collect()
}

/// Block matrix on `Δ^{p_1} × … × Δ^{p_s} × Δ^{fiber}`.
///
/// Factor `i` gets `I_{p_i}` on its first `p_i` facets and a ones column
/// (`1` or, when `signed`, `1̃`) on its last facet, with `links[i]` placing
/// entries of that column in the fiber rows. The fiber factor gets
/// `I_{fiber}` followed by a ones column.
pub fn block_matrix(parts: &[usize], fiber: usize, links: &[FiberLink], signed: bool) -> Result<CharMatrix> {
    if parts.iter().any(|&p| p == 0) || fiber == 0 {
        return Err(Error::InvalidArgument("block sizes must be positive".into()));
    }
    if links.len() != parts.len() {
        return Err(Error::InvalidArgument("one fiber link per part is required".into()));
    }
    let mut dims = parts.to_vec();
    dims.push(fiber);
    let polytope = SimplexProduct::new(&dims)?;
    let (n, m) = (polytope.dim(), polytope.num_facets());
    let ring = if signed { Ring::Int } else { Ring::Mod2 };
    let ones = |len| if signed { alternating_ones(len) } else { vec![1; len] };
    let mut rows = vec![vec![0i64; m]; n];
    let fiber_row0 = n - fiber;
    let mut row0 = 0;
    let mut blocks: Vec<(usize, Option<FiberLink>)> = parts.iter().zip(links).map(|(&p, &l)| (p, Some(l))).collect();
    blocks.push((fiber, None));
    for (factor, &(size, link)) in blocks.iter().enumerate() {
        let cols = polytope.factor_facets(factor);
        for t in 0..size {
            rows[row0 + t][cols.start + t] = 1;
        }
        let last = cols.end - 1;
        for (t, v) in ones(size).into_iter().enumerate() {
            rows[row0 + t][last] = v;
        }
        match link {
            Some(FiberLink::Row(r)) => {
                if r >= fiber {
                    return Err(Error::InvalidArgument(format!("fiber row {r} out of range")));
                }
                rows[fiber_row0 + r][last] = 1;
            }
            Some(FiberLink::AllOnes) => {
                for r in 0..fiber {
                    rows[fiber_row0 + r][last] = 1;
                }
            }
            Some(FiberLink::None) | None => {}
        }
        row0 += size;
    }
    CharMatrix::from_i64(polytope, ring, &rows)
}

/// `Λ₂^{(2,0,…,0)}` on `Δ² × Δ^{4l+3}`.
pub fn lambda2_stong_type_a(l: usize) -> CharMatrix {
    block_matrix(&[2], 4 * l + 3, &[FiberLink::Row(0)], true).expect("fixed block shape")
}

/// `Λ₂^{(4,2,0,…,0)}` on `Δ⁴ × Δ² × Δ^{8l+5}`.
pub fn lambda2_stong_type_b(l: usize) -> CharMatrix {
    block_matrix(&[4, 2], 8 * l + 5, &[FiberLink::Row(0), FiberLink::Row(1)], true).expect("fixed block shape")
}

/// The 7-dimensional example on `Δ⁴ × Δ³`.
pub fn lambda2_n7() -> CharMatrix {
    let rows = vec![
        vec![1, 0, 0, 0, 1, 0, 0, 0, 0],
        vec![0, 1, 0, 0, -1, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 1, 0, 0, 0, 0],
        vec![0, 0, 0, 1, -1, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 1, 0, 0, 1],
        vec![0, 0, 0, 0, 0, 0, 1, 0, -1],
        vec![0, 0, 0, 0, 0, 0, 0, 1, 1],
    ];
    CharMatrix::from_i64(SimplexProduct::new(&[4, 3]).unwrap(), Ring::Int, &rows).unwrap()
}

// Shared shape of the 8- and 12-dimensional examples on `Δ³ × Δ^k`.
fn delta3_times_simplex(k: usize) -> CharMatrix {
    let polytope = SimplexProduct::new(&[3, k]).unwrap();
    let (n, m) = (polytope.dim(), polytope.num_facets());
    let mut rows = vec![vec![0i64; m]; n];
    for (i, v) in [1, -1, 1, -1, 1].into_iter().enumerate() {
        rows[i][3] = v;
    }
    for i in 0..3 {
        rows[i][i] = 1;
    }
    for (t, v) in alternating_ones(k).into_iter().enumerate() {
        rows[3 + t][4 + t] = 1;
        rows[3 + t][m - 1] = v;
    }
    CharMatrix::from_i64(polytope, Ring::Int, &rows).unwrap()
}

/// The 8-dimensional example on `Δ³ × Δ⁵`.
pub fn lambda2_n8() -> CharMatrix {
    delta3_times_simplex(5)
}

/// The 12-dimensional example on `Δ³ × Δ⁹`.
pub fn lambda2_n12() -> CharMatrix {
    delta3_times_simplex(9)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn n7_matches_displayed_rows() {
        let m = lambda2_n7();
        assert_eq!(m.rows()[4], ints(&[0, 0, 0, 0, 1, 1, 0, 0, 1]));
        assert!(m.validate().valid);
        assert!(m.is_special().unwrap());
    }

    #[test]
    fn n8_and_n12_match_displayed_rows() {
        let m = lambda2_n8();
        assert_eq!(m.rows()[3], ints(&[0, 0, 0, -1, 1, 0, 0, 0, 0, 1]));
        assert_eq!(m.rows()[4], ints(&[0, 0, 0, 1, 0, 1, 0, 0, 0, -1]));
        assert_eq!(m.rows()[7], ints(&[0, 0, 0, 0, 0, 0, 0, 0, 1, 1]));
        let m = lambda2_n12();
        assert_eq!((m.num_rows(), m.num_cols()), (12, 14));
        assert_eq!(m.column(13), ints(&[0, 0, 0, 1, -1, 1, -1, 1, -1, 1, -1, 1]));
        assert_eq!(m.column(3), ints(&[1, -1, 1, -1, 1, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn type_a_block_shape() {
        let m = lambda2_stong_type_a(0);
        assert_eq!(m.polytope().factor_dims(), &[2, 3]);
        assert_eq!(m.num_cols(), 7);
        assert_eq!(m.column(2), ints(&[1, -1, 1, 0, 0]));
        assert_eq!(m.column(6), ints(&[0, 0, 1, -1, 1]));
        let m = lambda2_stong_type_a(1);
        assert_eq!(m.polytope().factor_dims(), &[2, 7]);
    }

    #[test]
    fn type_b_block_shape() {
        let m = lambda2_stong_type_b(0);
        assert_eq!(m.polytope().factor_dims(), &[4, 2, 5]);
        assert_eq!(m.column(4), ints(&[1, -1, 1, -1, 0, 0, 1, 0, 0, 0, 0]));
        assert_eq!(m.column(7), ints(&[0, 0, 0, 0, 1, -1, 0, 1, 0, 0, 0]));
    }

    #[test]
    fn named_constructors_are_valid_and_special() {
        for m in [
            lambda2_stong_type_a(0),
            lambda2_stong_type_a(1),
            lambda2_stong_type_b(0),
            lambda2_n7(),
            lambda2_n8(),
            lambda2_n12(),
        ] {
            assert!(m.validate().valid, "{}", m.polytope());
            assert!(m.is_special().unwrap(), "{}", m.polytope());
        }
    }

    #[test]
    fn zero_column_is_reported() {
        let p = SimplexProduct::new(&[1, 1]).unwrap();
        let m = CharMatrix::from_i64(p, Ring::Int, &[vec![1, 1, 0, 0], vec![0, 0, 0, 1]]).unwrap();
        let report = m.validate();
        assert!(!report.valid);
        let v = report.failing_vertex.unwrap();
        assert!(m.polytope().vertex_facets(&v).contains(&2));
        assert_eq!(report.determinant, Some(BigInt::zero()));
    }

    #[test]
    fn special_condition_on_interval() {
        let p = SimplexProduct::new(&[1]).unwrap();
        let m = CharMatrix::from_i64(p.clone(), Ring::Int, &[vec![1, -1]]).unwrap();
        assert!(m.validate().valid);
        assert!(!m.is_special().unwrap());
        let m = CharMatrix::from_i64(p, Ring::Mod2, &[vec![1, 1]]).unwrap();
        assert!(matches!(m.is_special(), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn mod2_reduction() {
        let red = lambda2_n7().mod2_reduce().unwrap();
        assert_eq!(red.ring(), Ring::Mod2);
        for (a, b) in lambda2_n7().rows().iter().flatten().zip(red.rows().iter().flatten()) {
            assert_eq!(b, &BigInt::from(a.is_odd() as u8));
        }
        assert!(red.validate().valid);

        let p = SimplexProduct::new(&[1, 1]).unwrap();
        let plain = CharMatrix::from_i64(p, Ring::Int, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        assert_eq!(plain.mod2_reduce().unwrap().rows(), plain.rows());
    }

    #[test]
    fn type_a_reduces_to_the_unsigned_block() {
        let red = lambda2_stong_type_a(0).mod2_reduce().unwrap();
        let expected = block_matrix(&[2], 3, &[FiberLink::Row(0)], false).unwrap();
        assert_eq!(red, expected);
    }

    #[test]
    fn mod2_equivalence() {
        let a = lambda2_n8().mod2_reduce().unwrap();
        assert!(a.equivalent_mod2(&a).unwrap());

        // rows permuted and added: still equivalent
        let mut rows = a.rows().to_vec();
        rows.swap(0, 5);
        let r1 = rows[1].clone();
        for (x, y) in rows[2].iter_mut().zip(&r1) {
            *x = (&*x + y) % 2;
        }
        let b = CharMatrix::new(a.polytope().clone(), Ring::Mod2, rows).unwrap();
        assert!(a.equivalent_mod2(&b).unwrap());
        assert!(b.equivalent_mod2(&a).unwrap());

        // a column that breaks validity
        let mut rows = a.rows().to_vec();
        for r in rows.iter_mut() {
            r[9] = r[0].clone();
        }
        let c = CharMatrix::new(a.polytope().clone(), Ring::Mod2, rows).unwrap();
        assert!(!c.validate().valid);
        assert!(!a.equivalent_mod2(&c).unwrap());
    }

    #[test]
    fn text_format() {
        let m = lambda2_n7();
        let text = m.to_text();
        assert!(text.starts_with("7 9 INT\n1 0 0 0 1 0 0 0 0\n"));
        let back = CharMatrix::parse_text(&text, m.polytope().clone()).unwrap();
        assert_eq!(back, m);

        let p = SimplexProduct::new(&[1]).unwrap();
        assert!(matches!(CharMatrix::parse_text("", p.clone()), Err(Error::Parse(_))));
        assert!(matches!(CharMatrix::parse_text("1 2 INT\n1 x\n", p.clone()), Err(Error::Parse(_))));
        assert!(matches!(CharMatrix::parse_text("1 2 REAL\n1 1\n", p.clone()), Err(Error::Parse(_))));
        assert!(matches!(CharMatrix::parse_text("1 3 INT\n1 1 1\n", p.clone()), Err(Error::DimensionMismatch(_))));
        assert!(matches!(CharMatrix::parse_text("1 2 MOD2\n1 2\n", p), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let p = SimplexProduct::new(&[2]).unwrap();
        assert!(matches!(
            CharMatrix::from_i64(p, Ring::Int, &[vec![1, 0, 1]]),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
