//! Finite relative cell complexes `(X, Y)`, their cochains, relative
//! cohomology over `Z` and `Z/m`, and the product with the unit interval.
//!
//! Cochains carry one value per cell of `X`. A cochain is relative when it
//! vanishes on every cell of `Y`; the coboundary preserves this because `Y`
//! is closed under the boundary.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, QMatrix, ZMatrix, Q};

/// Highest cell dimension accepted. Products with the interval of 8-dimensional
/// complexes need one more.
pub const MAX_CELL_DIM: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Mod(u64),
}

/// `pi_7(S^7)`.
pub const PI7_S7: Coefficients = Coefficients::Integers;
/// `pi_8(S^7)`.
pub const PI8_S7: Coefficients = Coefficients::Mod(2);

impl Coefficients {
    pub fn modulus(self) -> Result<Self> {
        match self {
            Coefficients::Mod(m) if m < 2 || m > 1 << 32 => {
                Err(Error::Argument(format!("modulus {m} must lie in 2..=2^32")))
            }
            c => Ok(c),
        }
    }

    pub fn reduce(self, v: &BigInt) -> BigInt {
        match self {
            Coefficients::Integers => v.clone(),
            Coefficients::Mod(m) => v.mod_floor(&BigInt::from(m)),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// A finitely generated abelian group `Z^r + Z/d_1 + ... + Z/d_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupDescriptor {
    pub fn zero() -> Self {
        GroupDescriptor { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic summands, which for `F_p`-vector spaces is the dimension.
    pub fn summands(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// A finite CW pair. `boundary[k]` is the `cells[k-1] x cells[k]` incidence
/// matrix for `k >= 1`; `boundary[0]` is an empty placeholder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CWPairComplex {
    cells: Vec<usize>,
    boundary: Vec<ZMatrix>,
    sub: Vec<Vec<bool>>,
}

impl CWPairComplex {
    pub fn new(cells: Vec<usize>, boundary: Vec<ZMatrix>, sub: Vec<Vec<bool>>) -> Result<Self> {
        if cells.is_empty() || cells.len() > MAX_CELL_DIM + 1 {
            return Err(Error::Validation(format!("need between 1 and {} dimensions", MAX_CELL_DIM + 1)));
        }
        if boundary.len() != cells.len() || sub.len() != cells.len() {
            return Err(Error::Validation("cells, boundary and sub lists differ in length".into()));
        }
        for k in 1..cells.len() {
            let b = &boundary[k];
            if b.rows() != cells[k - 1] || b.cols() != cells[k] {
                return Err(Error::Validation(format!(
                    "boundary {k} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    cells[k - 1],
                    cells[k]
                )));
            }
        }
        for (k, flags) in sub.iter().enumerate() {
            if flags.len() != cells[k] {
                return Err(Error::Validation(format!("sub flags in dimension {k} have length {}", flags.len())));
            }
        }
        for k in 2..cells.len() {
            if cells[k - 2] > 0 && cells[k] > 0 && !(&boundary[k - 1] * &boundary[k]).is_zero() {
                return Err(Error::Validation(format!("boundary {} composed with boundary {k} is nonzero", k - 1)));
            }
        }
        for k in 1..cells.len() {
            for j in 0..cells[k] {
                if !sub[k][j] {
                    continue;
                }
                if let Some(i) = (0..cells[k - 1]).find(|&i| !boundary[k][(i, j)].is_zero() && !sub[k - 1][i]) {
                    return Err(Error::Validation(format!(
                        "subcomplex cell {j} in dimension {k} has cell {i} of dimension {} in its boundary outside the subcomplex",
                        k - 1
                    )));
                }
            }
        }
        Ok(CWPairComplex { cells, boundary, sub })
    }

    /// A complex with `Y` empty.
    pub fn absolute(cells: Vec<usize>, boundary: Vec<ZMatrix>) -> Result<Self> {
        let sub = cells.iter().map(|&n| vec![false; n]).collect();
        Self::new(cells, boundary, sub)
    }

    pub fn point() -> Self {
        Self::absolute(vec![1], vec![ZMatrix::zeros(0, 1)]).expect("valid")
    }

    /// Two vertices `0`, `1` and an edge with boundary `1 - 0`.
    pub fn interval() -> Self {
        Self::absolute(vec![2, 1], vec![ZMatrix::zeros(0, 2), ZMatrix::from_i64(2, 1, &[-1, 1])]).expect("valid")
    }

    /// `S^n` with one 0-cell and one n-cell.
    pub fn sphere(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_CELL_DIM {
            return Err(Error::Argument(format!("sphere dimension {n} out of range")));
        }
        let mut cells = vec![0; n + 1];
        cells[0] = 1;
        cells[n] = 1;
        let boundary = (0..=n).map(|k| if k == 0 { ZMatrix::zeros(0, 1) } else { ZMatrix::zeros(cells[k - 1], cells[k]) }).collect();
        Self::absolute(cells, boundary)
    }

    /// `(D^n, S^{n-1})` with the boundary sphere built from one 0-cell and one
    /// `(n-1)`-cell, and the top cell attached by a degree-one map.
    pub fn disk_rel_boundary(n: usize) -> Result<Self> {
        if n < 2 || n > MAX_CELL_DIM {
            return Err(Error::Argument(format!("disk dimension {n} out of range")));
        }
        let mut cells = vec![0; n + 1];
        cells[0] = 1;
        cells[n - 1] = 1;
        cells[n] = 1;
        let mut boundary: Vec<ZMatrix> =
            (0..=n).map(|k| if k == 0 { ZMatrix::zeros(0, 1) } else { ZMatrix::zeros(cells[k - 1], cells[k]) }).collect();
        boundary[n] = ZMatrix::from_i64(1, 1, &[1]);
        let mut sub: Vec<Vec<bool>> = cells.iter().map(|&c| vec![false; c]).collect();
        sub[0][0] = true;
        sub[n - 1][0] = true;
        Self::new(cells, boundary, sub)
    }

    pub fn top_dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn cell_count(&self, k: usize) -> usize {
        self.cells.get(k).copied().unwrap_or(0)
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().sum()
    }

    pub fn boundary(&self, k: usize) -> &ZMatrix {
        &self.boundary[k]
    }

    pub fn in_sub(&self, k: usize, cell: usize) -> bool {
        self.sub[k][cell]
    }

    pub fn sub_flags(&self) -> &[Vec<bool>] {
        &self.sub
    }

    /// Indices of `k`-cells outside the subcomplex.
    pub fn relative_cells(&self, k: usize) -> Vec<usize> {
        match self.sub.get(k) {
            Some(flags) => (0..flags.len()).filter(|&i| !flags[i]).collect(),
            None => Vec::new(),
        }
    }

    /// The same cells and boundaries with a different subcomplex.
    pub fn with_sub(&self, sub: Vec<Vec<bool>>) -> Result<Self> {
        Self::new(self.cells.clone(), self.boundary.clone(), sub)
    }

    /// Matrix of `delta : C^k(X, Y) -> C^{k+1}(X, Y)` on relative cells.
    pub fn relative_coboundary_matrix(&self, k: usize) -> ZMatrix {
        let rows = self.relative_cells(k + 1);
        let cols = self.relative_cells(k);
        if k + 1 > self.top_dim() {
            return ZMatrix::zeros(0, cols.len());
        }
        self.boundary[k + 1].transpose().submatrix(&rows, &cols)
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_complex(text)
    }

    /// Text form accepted by [`CWPairComplex::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let counts: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("cells: {}\n", counts.join(" ")));
        for k in 1..self.cells.len() {
            let b = &self.boundary[k];
            if b.entries().is_empty() || b.is_zero() {
                continue;
            }
            let vals: Vec<String> = b.entries().iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("boundary {k}: {}\n", vals.join(" ")));
        }
        for (k, flags) in self.sub.iter().enumerate() {
            if flags.iter().any(|&f| f) {
                let bits: Vec<&str> = flags.iter().map(|&f| if f { "1" } else { "0" }).collect();
                out.push_str(&format!("sub {k}: {}\n", bits.join(" ")));
            }
        }
        out
    }
}

/// Parse the text format:
///
/// ```text
/// # comment
/// cells: 1 0 0 0 0 0 0 1 1
/// boundary 8: 1
/// sub 0: 1
/// sub 7: 1
/// ```
///
/// `boundary k` lists the `cells[k-1] x cells[k]` matrix in row-major order
/// and defaults to zero; `sub k` lists one flag per `k`-cell and defaults to
/// all zeros.
fn parse_complex(text: &str) -> Result<CWPairComplex> {
    let mut cells: Option<Vec<usize>> = None;
    let mut boundaries: Vec<(usize, usize, Vec<BigInt>)> = Vec::new();
    let mut subs: Vec<(usize, usize, Vec<bool>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, body) = line.split_once(':').ok_or_else(|| err(format!("expected `key: values`, found `{line}`")))?;
        let mut head_words = head.split_whitespace();
        let key = head_words.next().unwrap_or("");
        let degree = head_words
            .next()
            .map(|w| w.parse::<usize>().map_err(|_| err(format!("bad dimension `{w}`"))))
            .transpose()?;
        if head_words.next().is_some() {
            return Err(err(format!("unexpected text in `{head}`")));
        }
        let values = body.split_whitespace();
        match (key, degree) {
            ("cells", None) => {
                if cells.is_some() {
                    return Err(err("cells given twice".into()));
                }
                let counts = values
                    .map(|w| w.parse::<usize>().map_err(|_| err(format!("bad cell count `{w}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if counts.is_empty() || counts.len() > MAX_CELL_DIM + 1 {
                    return Err(err(format!("need between 1 and {} cell counts", MAX_CELL_DIM + 1)));
                }
                cells = Some(counts);
            }
            ("boundary", Some(k)) => {
                let vals = values
                    .map(|w| w.parse::<BigInt>().map_err(|_| err(format!("bad integer `{w}`"))))
                    .collect::<Result<Vec<_>>>()?;
                boundaries.push((line_no, k, vals));
            }
            ("sub", Some(k)) => {
                let flags = values
                    .map(|w| match w {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        _ => Err(err(format!("bad flag `{w}`"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                subs.push((line_no, k, flags));
            }
            _ => return Err(err(format!("unknown key `{head}`"))),
        }
    }
    let cells = cells.ok_or(Error::Parse { line: 0, message: "missing `cells:` line".into() })?;
    let mut boundary: Vec<ZMatrix> = (0..cells.len())
        .map(|k| if k == 0 { ZMatrix::zeros(0, cells[0]) } else { ZMatrix::zeros(cells[k - 1], cells[k]) })
        .collect();
    let mut seen_boundary = vec![false; cells.len()];
    for (line, k, vals) in boundaries {
        if k == 0 || k >= cells.len() {
            return Err(Error::Parse { line, message: format!("boundary dimension {k} out of range") });
        }
        if std::mem::replace(&mut seen_boundary[k], true) {
            return Err(Error::Parse { line, message: format!("boundary {k} given twice") });
        }
        let (r, c) = (cells[k - 1], cells[k]);
        if vals.len() != r * c {
            return Err(Error::Parse { line, message: format!("boundary {k} needs {} entries, found {}", r * c, vals.len()) });
        }
        boundary[k] = ZMatrix::from_row_major(r, c, vals);
    }
    let mut sub: Vec<Vec<bool>> = cells.iter().map(|&n| vec![false; n]).collect();
    let mut seen_sub = vec![false; cells.len()];
    for (line, k, flags) in subs {
        if k >= cells.len() {
            return Err(Error::Parse { line, message: format!("sub dimension {k} out of range") });
        }
        if std::mem::replace(&mut seen_sub[k], true) {
            return Err(Error::Parse { line, message: format!("sub {k} given twice") });
        }
        if flags.len() != cells[k] {
            return Err(Error::Parse { line, message: format!("sub {k} needs {} flags, found {}", cells[k], flags.len()) });
        }
        sub[k] = flags;
    }
    CWPairComplex::new(cells, boundary, sub)
}

/// A cochain of degree `degree`, one value per `degree`-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coefficients: Coefficients,
    pub values: Vec<BigInt>,
}

impl Cochain {
    pub fn new(degree: usize, coefficients: Coefficients, values: Vec<BigInt>) -> Result<Self> {
        let coefficients = coefficients.modulus()?;
        let values = values.iter().map(|v| coefficients.reduce(v)).collect();
        Ok(Cochain { degree, coefficients, values })
    }

    pub fn zero(complex: &CWPairComplex, degree: usize, coefficients: Coefficients) -> Self {
        Cochain { degree, coefficients, values: vec![BigInt::zero(); complex.cell_count(degree)] }
    }

    pub fn from_i64(degree: usize, coefficients: Coefficients, values: &[i64]) -> Result<Self> {
        Self::new(degree, coefficients, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_relative(&self, complex: &CWPairComplex) -> bool {
        self.values.iter().enumerate().all(|(i, v)| v.is_zero() || !complex.in_sub(self.degree, i))
    }

    fn check(&self, complex: &CWPairComplex) -> Result<()> {
        if self.degree > complex.top_dim() {
            return Err(Error::DegreeOutOfRange { degree: self.degree, top: complex.top_dim() });
        }
        if self.values.len() != complex.cell_count(self.degree) {
            return Err(Error::DimensionMismatch { left: self.values.len(), right: complex.cell_count(self.degree) });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Cochain, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Cochain> {
        if self.degree != other.degree || self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch { left: self.values.len(), right: other.values.len() });
        }
        if self.coefficients != other.coefficients {
            return Err(Error::Argument(format!("coefficients {} and {} differ", self.coefficients, other.coefficients)));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| self.coefficients.reduce(&f(a, b))).collect();
        Ok(Cochain { degree: self.degree, coefficients: self.coefficients, values })
    }

    pub fn scale(&self, s: i64) -> Cochain {
        let s = BigInt::from(s);
        let values = self.values.iter().map(|v| self.coefficients.reduce(&(v * &s))).collect();
        Cochain { degree: self.degree, coefficients: self.coefficients, values }
    }
}

/// `(delta c)(tau) = sum_sigma [d tau : sigma] c(sigma)`. The coboundary of a
/// top-degree cochain is the empty cochain one degree up.
pub fn coboundary(c: &Cochain, complex: &CWPairComplex) -> Result<Cochain> {
    c.check(complex)?;
    let k = c.degree;
    if k == complex.top_dim() {
        return Ok(Cochain { degree: k + 1, coefficients: c.coefficients, values: Vec::new() });
    }
    let values = complex.boundary(k + 1).transpose().apply(&c.values);
    Cochain::new(k + 1, c.coefficients, values)
}

fn nontrivial(factors: impl IntoIterator<Item = BigInt>) -> impl Iterator<Item = BigInt> {
    factors.into_iter().filter(|d| !d.is_one())
}

/// `H^k(X, Y; coefficients)` from the Smith normal forms of the relative
/// coboundary matrices, with `Z/m` handled by universal coefficients:
/// `H^k(;Z/m) = H^k(;Z) (x) Z/m + Tor(H^{k+1}(;Z), Z/m)`.
pub fn relative_cohomology(complex: &CWPairComplex, k: usize, coefficients: Coefficients) -> Result<GroupDescriptor> {
    let coefficients = coefficients.modulus()?;
    if k > complex.top_dim() {
        return Ok(GroupDescriptor::zero());
    }
    let n_k = complex.relative_cells(k).len();
    let into = invariant_factors(&complex.relative_coboundary_matrix(k));
    let from = if k == 0 { Vec::new() } else { invariant_factors(&complex.relative_coboundary_matrix(k - 1)) };
    let free_rank = n_k - into.len() - from.len();
    let torsion_k: Vec<BigInt> = nontrivial(from).collect();
    match coefficients {
        Coefficients::Integers => Ok(GroupDescriptor { free_rank, torsion: torsion_k }),
        Coefficients::Mod(m) => {
            let m = BigInt::from(m);
            let mut torsion: Vec<BigInt> = vec![m.clone(); free_rank];
            torsion.extend(torsion_k.iter().map(|d| d.gcd(&m)));
            torsion.extend(nontrivial(into).map(|d| d.gcd(&m)));
            torsion.retain(|d| !d.is_one());
            torsion.sort();
            Ok(GroupDescriptor { free_rank: 0, torsion })
        }
    }
}

/// Rank over `F_p` by elimination on residues.
pub fn rank_mod_p(m: &ZMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].mod_floor(&pb).to_u64().expect("residue fits")).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p_row) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p_row);
        let inv = mod_inverse(rows[rank][c], p);
        for r in 0..rows.len() {
            if r == rank || rows[r][c] == 0 {
                continue;
            }
            let f = rows[r][c] * inv % p;
            for j in c..m.cols() {
                let sub = f * rows[rank][j] % p;
                rows[r][j] = (rows[r][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut e, mut base, mut acc) = (p - 2, a % p, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// `dim H^k(X, Y; F_p)` as kernel dimension minus image dimension.
pub fn cohomology_dim_mod_p(complex: &CWPairComplex, k: usize, p: u64) -> usize {
    if k > complex.top_dim() {
        return 0;
    }
    let n_k = complex.relative_cells(k).len();
    let kernel = n_k - rank_mod_p(&complex.relative_coboundary_matrix(k), p);
    let image = if k == 0 { 0 } else { rank_mod_p(&complex.relative_coboundary_matrix(k - 1), p) };
    kernel - image
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntervalGenerator {
    /// The 1-cell, dual to `I`.
    Bar,
    /// The vertex `0`.
    Zero,
    /// The vertex `1`.
    One,
}

impl IntervalGenerator {
    pub fn degree(self) -> usize {
        match self {
            IntervalGenerator::Bar => 1,
            _ => 0,
        }
    }
}

/// `X x I` with its cell bookkeeping. In dimension `k` the cells are listed
/// as `X_k x 0`, then `X_k x 1`, then `X_{k-1} x I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalProduct {
    base_cells: Vec<usize>,
    /// The pair `(X x I, (Y x I) u (X x dI))`.
    pub complex: CWPairComplex,
    /// The subcomplex `Y x I` alone.
    pub side: Vec<Vec<bool>>,
}

impl IntervalProduct {
    pub fn base_count(&self, k: usize) -> usize {
        self.base_cells.get(k).copied().unwrap_or(0)
    }

    /// Index in `(X x I)_{k + deg gen}` of `sigma x gen` for `sigma` in `X_k`.
    pub fn index(&self, k: usize, sigma: usize, generator: IntervalGenerator) -> usize {
        match generator {
            IntervalGenerator::Zero => sigma,
            IntervalGenerator::One => self.base_count(k) + sigma,
            IntervalGenerator::Bar => 2 * self.base_count(k + 1) + sigma,
        }
    }

    /// The pair `(X x I, Y x I)`, in which obstruction cocycles of a homotopy live.
    pub fn side_pair(&self) -> CWPairComplex {
        self.complex.with_sub(self.side.clone()).expect("Y x I is a subcomplex")
    }
}

/// The product cell structure with
/// `d(sigma x I) = d sigma x I + (-1)^{dim sigma} (sigma x 1 - sigma x 0)`.
pub fn product_with_interval(x: &CWPairComplex) -> Result<IntervalProduct> {
    let top = x.top_dim() + 1;
    if top > MAX_CELL_DIM {
        return Err(Error::Validation(format!("product would have dimension {top}, above {MAX_CELL_DIM}")));
    }
    let n = |k: usize| x.cell_count(k);
    let cells: Vec<usize> = (0..=top).map(|k| 2 * n(k) + if k == 0 { 0 } else { n(k - 1) }).collect();
    let mut boundary = vec![ZMatrix::zeros(0, cells[0])];
    for k in 1..=top {
        let mut b = ZMatrix::zeros(cells[k - 1], cells[k]);
        // sigma x 0 and sigma x 1 for sigma in X_k
        if k <= x.top_dim() {
            for s in 0..n(k) {
                for t in 0..n(k - 1) {
                    let v = &x.boundary(k)[(t, s)];
                    if !v.is_zero() {
                        b[(t, s)] = v.clone();
                        b[(n(k - 1) + t, n(k) + s)] = v.clone();
                    }
                }
            }
        }
        // sigma x I for sigma in X_{k-1}
        let sign = if (k - 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        for s in 0..n(k - 1) {
            let col = 2 * n(k) + s;
            if k >= 2 {
                for t in 0..n(k - 2) {
                    let v = &x.boundary(k - 1)[(t, s)];
                    if !v.is_zero() {
                        b[(2 * n(k - 1) + t, col)] = v.clone();
                    }
                }
            }
            b[(n(k - 1) + s, col)] = sign.clone();
            b[(s, col)] = -sign.clone();
        }
        boundary.push(b);
    }
    let mut sub = Vec::with_capacity(top + 1);
    let mut side = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let bar = |flags: &mut Vec<bool>| {
            if k >= 1 {
                flags.extend((0..n(k - 1)).map(|s| x.in_sub(k - 1, s)));
            }
        };
        let ends: Vec<bool> = (0..n(k)).map(|s| k <= x.top_dim() && x.in_sub(k, s)).collect();
        let mut f = vec![true; 2 * n(k)];
        bar(&mut f);
        sub.push(f);
        let mut g = [ends.clone(), ends].concat();
        bar(&mut g);
        side.push(g);
    }
    let complex = CWPairComplex::new(cells, boundary, sub)?;
    Ok(IntervalProduct { base_cells: x.cells().to_vec(), complex, side })
}

/// `c x gen`, supported on the cells `sigma x gen`.
pub fn cross_with_interval(c: &Cochain, generator: IntervalGenerator, product: &IntervalProduct) -> Result<Cochain> {
    let k = c.degree;
    if c.values.len() != product.base_count(k) {
        return Err(Error::DimensionMismatch { left: c.values.len(), right: product.base_count(k) });
    }
    let degree = k + generator.degree();
    let mut values = vec![BigInt::zero(); product.complex.cell_count(degree)];
    for (sigma, v) in c.values.iter().enumerate() {
        values[product.index(k, sigma, generator)] = v.clone();
    }
    Cochain::new(degree, c.coefficients, values)
}

/// Solve `d x I = o_hat - o0 x 0 - o1 x 1` for the degree-`k` cochain `d`.
///
/// When `o_hat`, `o0`, `o1` are cocycles this forces
/// `delta d = (-1)^{k+1} (o0 - o1)`, which is `o0 - o1` when `k` is odd.
pub fn difference_cochain(o_hat: &Cochain, o0: &Cochain, o1: &Cochain, product: &IntervalProduct) -> Result<Cochain> {
    if o_hat.degree == 0 {
        return Err(Error::Argument("o_hat must have positive degree".into()));
    }
    if o0.degree != o_hat.degree || o1.degree != o_hat.degree {
        return Err(Error::Argument("o_hat, o0 and o1 must share a degree".into()));
    }
    let e = o_hat
        .try_sub(&cross_with_interval(o0, IntervalGenerator::Zero, product)?)?
        .try_sub(&cross_with_interval(o1, IntervalGenerator::One, product)?)?;
    let k = o_hat.degree - 1;
    let n = product.base_count(o_hat.degree);
    if let Some(i) = (0..2 * n).find(|&i| !e.values[i].is_zero()) {
        let end = if i < n { "0" } else { "1" };
        return Err(Error::Residue(format!("nonzero on cell {} x {end}", i % n)));
    }
    let values: Vec<BigInt> = (0..product.base_count(k)).map(|s| e.values[product.index(k, s, IntervalGenerator::Bar)].clone()).collect();
    if let Some(s) = (0..values.len()).find(|&s| !values[s].is_zero() && product.side[k + 1][product.index(k, s, IntervalGenerator::Bar)]) {
        return Err(Error::Residue(format!("nonzero on cell {s} x I inside Y x I")));
    }
    Cochain::new(k, o_hat.coefficients, values)
}

/// A primitive integer basis of the kernel of `m`.
pub fn integer_kernel(m: &ZMatrix) -> Vec<Vec<BigInt>> {
    let q = QMatrix::from_fn(m.rows(), m.cols(), |i, j| Q::from_integer(m[(i, j)].clone()));
    q.nullspace()
        .into_iter()
        .map(|v| {
            let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ints.into_iter().map(|x| x / &g).collect()
        })
        .collect()
}

/// A random integer cocycle of degree `k` on `complex`, vanishing on the subcomplex.
pub fn random_relative_cocycle(complex: &CWPairComplex, k: usize, rng: &mut impl Rng) -> Cochain {
    let rel = complex.relative_cells(k);
    let mut values = vec![BigInt::zero(); complex.cell_count(k)];
    for v in integer_kernel(&complex.relative_coboundary_matrix(k)) {
        let f = BigInt::from(rng.gen_range(-3i64..=3));
        for (slot, x) in rel.iter().zip(v) {
            values[*slot] += &f * x;
        }
    }
    Cochain { degree: k, coefficients: Coefficients::Integers, values }
}

/// A random relative integer cochain of degree `k` with small entries.
pub fn random_relative_cochain(complex: &CWPairComplex, k: usize, rng: &mut impl Rng) -> Cochain {
    let values = (0..complex.cell_count(k))
        .map(|i| if complex.in_sub(k, i) { BigInt::zero() } else { BigInt::from(rng.gen_range(-5i64..=5)) })
        .collect();
    Cochain { degree: k, coefficients: Coefficients::Integers, values }
}

/// A random cell complex with at most `max_cells` cells in dimensions
/// `0..=top`, satisfying `d d = 0`, with a random subcomplex closed under the
/// boundary.
pub fn random_complex(max_cells: usize, top: usize, rng: &mut impl Rng) -> CWPairComplex {
    let top = top.min(MAX_CELL_DIM);
    let budget = max_cells.max(top + 1);
    let mut cells = vec![1usize; top + 1];
    for _ in 0..rng.gen_range(0..=budget - (top + 1)) {
        let k = rng.gen_range(0..=top);
        cells[k] += 1;
    }
    let mut boundary = vec![ZMatrix::zeros(0, cells[0])];
    for k in 1..=top {
        let (r, c) = (cells[k - 1], cells[k]);
        let mut b = ZMatrix::zeros(r, c);
        if k == 1 {
            for j in 0..c {
                let u = rng.gen_range(0..r);
                let v = rng.gen_range(0..r);
                if u != v {
                    b[(u, j)] = BigInt::from(-1);
                    b[(v, j)] = BigInt::from(1);
                }
            }
        } else {
            let kernel = integer_kernel(&boundary[k - 1]);
            for j in 0..c {
                for v in &kernel {
                    if rng.gen_bool(0.4) {
                        let f = BigInt::from(rng.gen_range(-2i64..=2));
                        for i in 0..r {
                            b[(i, j)] += &f * &v[i];
                        }
                    }
                }
            }
        }
        boundary.push(b);
    }
    let mut sub: Vec<Vec<bool>> = cells.iter().map(|&n| (0..n).map(|_| rng.gen_bool(0.25)).collect()).collect();
    for k in (1..=top).rev() {
        for j in 0..cells[k] {
            if sub[k][j] {
                for i in 0..cells[k - 1] {
                    if !boundary[k][(i, j)].is_zero() {
                        sub[k - 1][i] = true;
                    }
                }
            }
        }
    }
    CWPairComplex::new(cells, boundary, sub).expect("construction satisfies the invariants")
}

/// Randomly permute the cells of each dimension; cohomology is unchanged.
pub fn shuffle_cells(x: &CWPairComplex, rng: &mut impl Rng) -> CWPairComplex {
    let perms: Vec<Vec<usize>> = x
        .cells()
        .iter()
        .map(|&n| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let boundary = (0..x.cells().len())
        .map(|k| if k == 0 { x.boundary(0).clone() } else { x.boundary(k).submatrix(&perms[k - 1], &perms[k]) })
        .collect();
    let sub = perms.iter().enumerate().map(|(k, p)| p.iter().map(|&i| x.in_sub(k, i)).collect()).collect();
    CWPairComplex::new(x.cells().to_vec(), boundary, sub).expect("relabeling preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn interval_generators() {
        let i = CWPairComplex::interval();
        let zero = Cochain::from_i64(0, Coefficients::Integers, &[1, 0]).unwrap();
        let one = Cochain::from_i64(0, Coefficients::Integers, &[0, 1]).unwrap();
        assert_eq!(coboundary(&zero, &i).unwrap().values, vec![z(-1)]);
        assert_eq!(coboundary(&one, &i).unwrap().values, vec![z(1)]);
    }

    #[test]
    fn point_times_interval_is_interval() {
        let p = product_with_interval(&CWPairComplex::point()).unwrap();
        assert_eq!(p.complex.cells(), CWPairComplex::interval().cells());
        assert_eq!(p.complex.boundary(1), CWPairComplex::interval().boundary(1));
    }

    #[test]
    fn basic_cohomology() {
        let pt = CWPairComplex::point();
        assert_eq!(relative_cohomology(&pt, 0, Coefficients::Integers).unwrap(), GroupDescriptor { free_rank: 1, torsion: vec![] });
        let d8 = CWPairComplex::disk_rel_boundary(8).unwrap();
        assert_eq!(relative_cohomology(&d8, 8, PI8_S7).unwrap().to_string(), "Z/2");
        assert_eq!(relative_cohomology(&d8, 7, PI8_S7).unwrap().to_string(), "0");
        let s7 = CWPairComplex::sphere(7).unwrap();
        assert_eq!(relative_cohomology(&s7, 7, PI7_S7).unwrap().to_string(), "Z");
    }

    #[test]
    fn projective_plane_torsion() {
        // RP^2: one cell per dimension, boundaries 0 and 2.
        let rp2 = CWPairComplex::absolute(
            vec![1, 1, 1],
            vec![ZMatrix::zeros(0, 1), ZMatrix::from_i64(1, 1, &[0]), ZMatrix::from_i64(1, 1, &[2])],
        )
        .unwrap();
        assert_eq!(relative_cohomology(&rp2, 1, Coefficients::Integers).unwrap().to_string(), "0");
        assert_eq!(relative_cohomology(&rp2, 2, Coefficients::Integers).unwrap().to_string(), "Z/2");
        assert_eq!(relative_cohomology(&rp2, 1, Coefficients::Mod(2)).unwrap().to_string(), "Z/2");
        assert_eq!(relative_cohomology(&rp2, 2, Coefficients::Mod(3)).unwrap().to_string(), "0");
        assert_eq!(relative_cohomology(&rp2, 2, Coefficients::Mod(4)).unwrap().to_string(), "Z/2");
    }

    #[test]
    fn validation_rejects_bad_complexes() {
        let bad = CWPairComplex::absolute(
            vec![1, 1, 1],
            vec![ZMatrix::zeros(0, 1), ZMatrix::from_i64(1, 1, &[1]), ZMatrix::from_i64(1, 1, &[1])],
        );
        assert!(matches!(bad, Err(Error::Validation(_))));
        let not_closed = CWPairComplex::new(
            vec![2, 1],
            vec![ZMatrix::zeros(0, 2), ZMatrix::from_i64(2, 1, &[-1, 1])],
            vec![vec![false, false], vec![true]],
        );
        assert!(matches!(not_closed, Err(Error::Validation(_))));
    }

    #[test]
    fn parse_roundtrip_and_errors() {
        let d8 = CWPairComplex::disk_rel_boundary(8).unwrap();
        assert_eq!(CWPairComplex::parse(&d8.to_text()).unwrap(), d8);
        assert!(matches!(CWPairComplex::parse("cells: 1 1\nboundary 1: 1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(CWPairComplex::parse("bogus: 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(CWPairComplex::parse("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn mod_p_rank() {
        let m = ZMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        assert_eq!(rank_mod_p(&m, 2), 0);
        assert_eq!(rank_mod_p(&m, 3), 2);
        assert_eq!(rank_mod_p(&m, 5), 2);
    }
}
