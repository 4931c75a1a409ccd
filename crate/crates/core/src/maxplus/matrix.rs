use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::scalar::ExtReal;

/// Why a Kleene star does not exist or cannot be attempted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("matrix is {rows}x{cols}; the star is defined for square matrices only")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry ({row},{col}) is +inf; the star operates on max-plus matrices")]
    PosInfEntry { row: usize, col: usize },
    #[error("precedence graph has a positive-weight circuit through node {node}")]
    PositiveCircuit { node: usize },
}

#[derive(Clone, Debug, Error)]
#[error("bad matrix literal: {reason}")]
pub struct MatrixParseError {
    pub reason: String,
}

/// Dense matrix over the extended reals with max-plus semantics.
///
/// Stored row-major. Whether a matrix is read as max-plus (`ℝ_max`, no
/// `+∞` entries) or min-plus (`ℝ_min`, no `−∞` entries) is a property of
/// the context; [`MaxPlusMatrix::first_pos_inf`] and
/// [`MaxPlusMatrix::first_neg_inf`] support validating either claim.
#[derive(Clone, PartialEq, Eq)]
pub struct MaxPlusMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExtReal>,
}

impl MaxPlusMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExtReal>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self { rows, cols, entries }
    }

    /// `ℰ`: all entries `−∞`, the neutral element of `⊕`.
    pub fn eps(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![ExtReal::NegInf; rows * cols])
    }

    /// `𝒯`: all entries `+∞`, the neutral element of `⊞`.
    pub fn top(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![ExtReal::PosInf; rows * cols])
    }

    /// `E_⊗`: `0` on the diagonal, `−∞` elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::eps(n, n);
        for i in 0..n {
            m.set(i, i, ExtReal::finite(0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExtReal) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> ExtReal {
        self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: ExtReal) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[ExtReal] {
        &self.entries
    }

    /// First `+∞` coordinate, if any (violates an `ℝ_max` claim).
    pub fn first_pos_inf(&self) -> Option<(usize, usize)> {
        self.position(|e| e == ExtReal::PosInf)
    }

    /// First `−∞` coordinate, if any (violates an `ℝ_min` claim).
    pub fn first_neg_inf(&self) -> Option<(usize, usize)> {
        self.position(|e| e == ExtReal::NegInf)
    }

    fn position(&self, pred: impl Fn(ExtReal) -> bool) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|&e| pred(e))
            .map(|idx| (idx / self.cols, idx % self.cols))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(ExtReal, ExtReal) -> ExtReal) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "entrywise op on {}x{} and {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::new(self.rows, self.cols, entries)
    }

    /// Entrywise `⊕` (max).
    pub fn oplus(&self, other: &Self) -> Self {
        self.zip_with(other, ExtReal::oplus)
    }

    /// Entrywise `⊞` (min).
    pub fn dplus(&self, other: &Self) -> Self {
        self.zip_with(other, ExtReal::dplus)
    }

    /// Max-plus product: `(A ⊗ C)_{ih} = ⊕_k A_{ik} ⊗ C_{kh}`.
    pub fn otimes(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "product of {}x{} and {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::eps(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == ExtReal::NegInf {
                    continue;
                }
                for h in 0..other.cols {
                    let cand = aik.otimes(other.get(k, h));
                    let cur = out.get(i, h);
                    if cand > cur {
                        out.set(i, h, cand);
                    }
                }
            }
        }
        out
    }

    /// Min-plus product: `(A ⊠ C)_{ih} = ⊞_k A_{ik} ⊠ C_{kh}`.
    pub fn dtimes(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "product of {}x{} and {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::top(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == ExtReal::PosInf {
                    continue;
                }
                for h in 0..other.cols {
                    let cand = aik.dtimes(other.get(k, h));
                    let cur = out.get(i, h);
                    if cand < cur {
                        out.set(i, h, cand);
                    }
                }
            }
        }
        out
    }

    /// Conjugate `A♯ = −A⊤` (infinities swap).
    pub fn sharp(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| -self.get(j, i))
    }

    /// `r`-th max-plus power of a square matrix; `A⁰ = E_⊗`.
    pub fn pow(&self, r: usize) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Self::identity(self.rows);
        for _ in 0..r {
            acc = acc.otimes(self);
        }
        acc
    }

    /// Partial order `A ⪯ B`, i.e. `A ⊕ B = B`.
    pub fn le(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(*b, tol))
    }

    /// Kleene star `A* = ⊕_{i≥0} A^i` by a Floyd–Warshall sweep, O(n³).
    ///
    /// Requires a square `ℝ_max` matrix. Fails with a witness node when
    /// the precedence graph has a positive-weight circuit; the diagonal
    /// after the sweep carries exactly the maximal circuit weights, so
    /// positivity is read off there.
    pub fn kleene_star(&self) -> Result<Self, StarError> {
        if self.rows != self.cols {
            return Err(StarError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if let Some((row, col)) = self.first_pos_inf() {
            return Err(StarError::PosInfEntry { row, col });
        }
        let n = self.rows;
        // Raw IEEE sweep: with +inf excluded, -inf + x = -inf is exact and
        // no NaN can form.
        let mut d: Vec<f64> = self.entries.iter().map(|e| e.to_raw()).collect();
        for k in 0..n {
            for i in 0..n {
                let dik = d[i * n + k];
                if dik == f64::NEG_INFINITY {
                    continue;
                }
                for j in 0..n {
                    let cand = dik + d[k * n + j];
                    d[i * n + j] = d[i * n + j].max(cand);
                }
            }
        }
        for i in 0..n {
            if d[i * n + i] > 0.0 {
                return Err(StarError::PositiveCircuit { node: i });
            }
        }
        // A^0 contributes the zero diagonal.
        for i in 0..n {
            d[i * n + i] = 0.0;
        }
        Ok(Self::new(n, n, d.into_iter().map(ExtReal::from_raw).collect()))
    }

    /// Whether the precedence graph of `A` has no positive-weight circuit.
    ///
    /// Panics if the matrix is not a square `ℝ_max` matrix.
    pub fn in_gamma(&self) -> bool {
        match self.kleene_star() {
            Ok(_) => true,
            Err(StarError::PositiveCircuit { .. }) => false,
            Err(e) => panic!("in_gamma: {e}"),
        }
    }

    /// Copy `block` into `self` with its top-left corner at `(row, col)`.
    pub fn paste(&mut self, row: usize, col: usize, block: &Self) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j));
            }
        }
    }

    /// Extract the `rows`×`cols` block whose top-left corner is `(row, col)`.
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        assert!(row + rows <= self.rows && col + cols <= self.cols);
        Self::from_fn(rows, cols, |i, j| self.get(row + i, col + j))
    }
}

impl Index<(usize, usize)> for MaxPlusMatrix {
    type Output = ExtReal;

    fn index(&self, (row, col): (usize, usize)) -> &ExtReal {
        &self.entries[row * self.cols + col]
    }
}

/// The four blocks of `[[a, b], [c, d]]*`.
#[derive(Clone, Debug)]
pub struct BlockStar {
    pub m11: MaxPlusMatrix,
    pub m12: MaxPlusMatrix,
    pub m21: MaxPlusMatrix,
    pub m22: MaxPlusMatrix,
}

/// Star of a 2×2 block matrix without assembling it:
///
/// ```text
/// [a b]*   [ a*(a*bd*ca*)*a*    a*bd*(d*ca*bd*)*  ]
/// [c d]  = [ d*ca*(a*bd*ca*)*   d*(d*ca*bd*)*d*   ]
/// ```
///
/// Any failing sub-star propagates its error.
pub fn block_star(
    a: &MaxPlusMatrix,
    b: &MaxPlusMatrix,
    c: &MaxPlusMatrix,
    d: &MaxPlusMatrix,
) -> Result<BlockStar, StarError> {
    assert_eq!(a.rows(), a.cols());
    assert_eq!(d.rows(), d.cols());
    assert_eq!((b.rows(), b.cols()), (a.rows(), d.rows()));
    assert_eq!((c.rows(), c.cols()), (d.rows(), a.rows()));
    let astar = a.kleene_star()?;
    let dstar = d.kleene_star()?;
    let upper = astar.otimes(b).otimes(&dstar); // a*bd*
    let lower = dstar.otimes(c).otimes(&astar); // d*ca*
    let estar = upper.otimes(&lower).kleene_star()?; // (a*bd*ca*)*
    let fstar = lower.otimes(&upper).kleene_star()?; // (d*ca*bd*)*
    Ok(BlockStar {
        m11: astar.otimes(&estar).otimes(&astar),
        m12: upper.otimes(&fstar),
        m21: lower.otimes(&estar),
        m22: dstar.otimes(&fstar).otimes(&dstar),
    })
}

impl fmt::Display for MaxPlusMatrix {
    /// Literal format: rows separated by `;`, entries by `,`,
    /// infinities as `-inf` / `+inf`. Example: `0,-inf;3,0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MaxPlusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MaxPlusMatrix[{}x{}](\"{}\")", self.rows, self.cols, self)
    }
}

impl FromStr for MaxPlusMatrix {
    type Err = MatrixParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut rows: Vec<Vec<ExtReal>> = Vec::new();
        for (i, line) in s.split(';').enumerate() {
            let mut row = Vec::new();
            for (j, tok) in line.split(',').enumerate() {
                let entry = tok.parse::<ExtReal>().map_err(|_| MatrixParseError {
                    reason: format!("row {}, entry {}: cannot parse {tok:?}", i + 1, j + 1),
                })?;
                row.push(entry);
            }
            rows.push(row);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixParseError { reason: "ragged rows".into() });
        }
        let nrows = rows.len();
        Ok(Self::new(nrows, cols, rows.into_iter().flatten().collect()))
    }
}

impl Serialize for MaxPlusMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MaxPlusMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
