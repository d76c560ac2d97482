//! Presentations of one-parameter persistence modules on a fixed
//! birth/death grid, and their reduction to Schubert cells.
//!
//! A presentation is an invertible matrix A whose column j expresses the
//! death generator of degree d_j in the birth generators of degrees b_i.
//! Right multiplication by invertible upper-triangular matrices does not
//! change the module, and each orbit contains exactly one matrix in the
//! U_w⁺ pattern for a unique permutation w.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::{rational_from_json, rational_to_json};
use crate::linalg::Matrix;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PersistenceError {
    #[error("births and deaths differ in length ({births} vs {deaths})")]
    LengthMismatch { births: usize, deaths: usize },
    #[error("birth grades must be strictly increasing")]
    NonStrictBirths,
    #[error("death grades must be strictly increasing")]
    NonStrictDeaths,
    #[error("last birth {last_birth} is not below first death {first_death}")]
    NotSeparated { last_birth: i64, first_death: i64 },
    #[error(
        "presentation matrix is {rows}x{cols}; only square presentations are supported \
         (pad with death generators distant enough to make it square)"
    )]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix size {size} does not match grid size {grid}")]
    SizeMismatch { size: usize, grid: usize },
    #[error("singular presentation")]
    Singular,
    #[error("rank invariant needs s <= t, got s = {s}, t = {t}")]
    InvalidGrades { s: i64, t: i64 },
    #[error("invalid presentation JSON: {0}")]
    Json(String),
}

/// Birth grades b₁ < ⋯ < b_n and death grades d₁ < ⋯ < d_n with b_n < d₁.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BirthDeathGrid {
    births: Vec<i64>,
    deaths: Vec<i64>,
}

impl BirthDeathGrid {
    pub fn new(births: Vec<i64>, deaths: Vec<i64>) -> Result<Self, PersistenceError> {
        if births.len() != deaths.len() {
            return Err(PersistenceError::LengthMismatch {
                births: births.len(),
                deaths: deaths.len(),
            });
        }
        if births.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PersistenceError::NonStrictBirths);
        }
        if deaths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PersistenceError::NonStrictDeaths);
        }
        if let (Some(&last_birth), Some(&first_death)) = (births.last(), deaths.first()) {
            if last_birth >= first_death {
                return Err(PersistenceError::NotSeparated {
                    last_birth,
                    first_death,
                });
            }
        }
        Ok(Self { births, deaths })
    }

    /// b = (0, …, n−1), d = (n, …, 2n−1).
    pub fn standard(n: usize) -> Self {
        let n = n as i64;
        Self {
            births: (0..n).collect(),
            deaths: (n..2 * n).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.births.len()
    }

    pub fn births(&self) -> &[i64] {
        &self.births
    }

    pub fn deaths(&self) -> &[i64] {
        &self.deaths
    }

    /// The bars {(b_{w(i)}, d_i)}, in order of death index.
    pub fn bars_of(&self, w: &Permutation) -> PersistenceDiagram {
        PersistenceDiagram {
            bars: (1..=self.size())
                .map(|i| (self.births[w.apply(i) - 1], self.deaths[i - 1]))
                .collect(),
        }
    }
}

/// A multiset of (birth, death) bars.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PersistenceDiagram {
    bars: Vec<(i64, i64)>,
}

impl PersistenceDiagram {
    /// Bars are kept in the given order; equality is up to order.
    pub fn new(bars: Vec<(i64, i64)>) -> Option<Self> {
        bars.iter().all(|&(b, d)| b < d).then_some(Self { bars })
    }

    pub fn bars(&self) -> &[(i64, i64)] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Bars sorted by death then birth; the canonical comparison form.
    pub fn sorted(&self) -> Vec<(i64, i64)> {
        let mut bars = self.bars.clone();
        bars.sort_by_key(|&(b, d)| (d, b));
        bars
    }

    pub fn same_multiset(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

/// An invertible square presentation matrix on a validated grid.
#[derive(Clone, PartialEq, Eq)]
pub struct PresentationMatrix {
    entries: Matrix,
    grid: BirthDeathGrid,
}

impl PresentationMatrix {
    pub fn new(entries: Matrix, grid: BirthDeathGrid) -> Result<Self, PersistenceError> {
        if !entries.is_square() {
            return Err(PersistenceError::NotSquare {
                rows: entries.rows(),
                cols: entries.cols(),
            });
        }
        if entries.rows() != grid.size() {
            return Err(PersistenceError::SizeMismatch {
                size: entries.rows(),
                grid: grid.size(),
            });
        }
        if !entries.is_invertible() {
            return Err(PersistenceError::Singular);
        }
        Ok(Self { entries, grid })
    }

    /// The presentation on the standard grid.
    pub fn on_standard_grid(entries: Matrix) -> Result<Self, PersistenceError> {
        let n = entries.rows();
        Self::new(entries, BirthDeathGrid::standard(n))
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn grid(&self) -> &BirthDeathGrid {
        &self.grid
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    /// A·B with B supplied by the caller; `None` if B is not invertible
    /// upper triangular of the right size.
    pub fn gauge(&self, b: &Matrix) -> Option<Self> {
        if b.rows() != self.size() || !b.is_upper_triangular() || !b.is_invertible() {
            return None;
        }
        Some(Self {
            entries: self.entries.mul(b),
            grid: self.grid.clone(),
        })
    }

    pub fn to_json(&self) -> Value {
        let matrix: Vec<Vec<Value>> = self
            .entries
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(rational_to_json).collect())
            .collect();
        json!({
            "births": self.grid.births,
            "deaths": self.grid.deaths,
            "matrix": matrix,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, PersistenceError> {
        let bad = |m: &str| PersistenceError::Json(m.to_string());
        let grades = |key: &str| -> Result<Vec<i64>, PersistenceError> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("missing \"{key}\" array")))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| bad(&format!("\"{key}\" must hold integers")))
                })
                .collect()
        };
        let grid = BirthDeathGrid::new(grades("births")?, grades("deaths")?)?;
        let rows = v
            .get("matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"matrix\" array"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("matrix rows must be arrays"))?
                    .iter()
                    .map(|x| {
                        rational_from_json(x)
                            .ok_or_else(|| bad("entries must be integers or \"p/q\" strings"))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(PersistenceError::NotSquare {
                rows: rows.len(),
                cols: r.len(),
            });
        }
        let entries = Matrix::from_rows(rows).ok_or_else(|| bad("ragged matrix"))?;
        Self::new(entries, grid)
    }
}

impl fmt::Debug for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} on {:?}", self.entries, self.grid)
    }
}

/// Which of the three cell shapes to test against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternVariant {
    /// ξ_{w(j),j} = 1 and ξ_{i,k} = 0 for k > w⁻¹(i).
    Base,
    /// Base plus ξ_{jk} = 0 for j > w(k).
    Plus,
    /// Base plus ξ_{jk} = 0 for j < w(k).
    Minus,
}

/// The matrix shape U_w, U_w⁺ or U_w⁻ for a permutation w ∈ S_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPattern {
    pub perm: Permutation,
    pub n: usize,
    pub variant: PatternVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    One,
    Zero,
    Free,
}

impl CellPattern {
    pub fn new(perm: Permutation, n: usize, variant: PatternVariant) -> Self {
        assert!(perm.degree() <= n, "pattern permutation must lie in S_n");
        Self { perm, n, variant }
    }

    /// Classifies entry (i, k), both 1-indexed.
    fn slot(&self, i: usize, k: usize) -> Slot {
        let wk = self.perm.apply(k);
        if i == wk {
            return Slot::One;
        }
        if k > self.perm.inverse().apply(i) {
            return Slot::Zero;
        }
        match self.variant {
            PatternVariant::Plus if i > wk => Slot::Zero,
            PatternVariant::Minus if i < wk => Slot::Zero,
            _ => Slot::Free,
        }
    }

    /// Unconstrained entries, 1-indexed, row-major.
    pub fn free_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for k in 1..=self.n {
                if self.slot(i, k) == Slot::Free {
                    out.push((i, k));
                }
            }
        }
        out
    }

    pub fn conforms(&self, m: &Matrix) -> bool {
        if m.rows() != self.n || m.cols() != self.n {
            return false;
        }
        (1..=self.n).all(|i| {
            (1..=self.n).all(|k| {
                let x = &m[(i - 1, k - 1)];
                match self.slot(i, k) {
                    Slot::One => x.is_one(),
                    Slot::Zero => x.is_zero(),
                    Slot::Free => true,
                }
            })
        })
    }
}

/// Output of [`reduce_to_cell`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReduction {
    pub perm: Permutation,
    pub canonical: PresentationMatrix,
}

/// Column-reduces A by upper-triangular operations into the U_w⁺ shape.
///
/// Left to right, each column is reduced until its lowest nonzero row is
/// not the pivot row of an earlier column, its pivot is scaled to 1, and
/// the pivot row is cleared in every later column.
pub fn reduce_to_cell(a: &PresentationMatrix) -> Result<CellReduction, PersistenceError> {
    let n = a.size();
    let mut m = a.entries.clone();
    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; n];
    let mut pivots = Vec::with_capacity(n);

    for j in 0..n {
        let low = loop {
            let low = (0..n)
                .rev()
                .find(|&r| !m[(r, j)].is_zero())
                .ok_or(PersistenceError::Singular)?;
            match pivot_col_of_row[low] {
                None => break low,
                Some(k) => {
                    let factor = &m[(low, j)] / &m[(low, k)];
                    add_column_multiple(&mut m, j, k, &factor);
                }
            }
        };
        let scale = m[(low, j)].clone();
        for r in 0..n {
            let v = &m[(r, j)] / &scale;
            m[(r, j)] = v;
        }
        for l in j + 1..n {
            let factor = m[(low, l)].clone();
            if !factor.is_zero() {
                add_column_multiple(&mut m, l, j, &factor);
            }
        }
        pivot_col_of_row[low] = Some(j);
        pivots.push(low + 1);
    }

    let perm = Permutation::from_one_line(&pivots).expect("pivot rows are distinct");
    Ok(CellReduction {
        perm,
        canonical: PresentationMatrix {
            entries: m,
            grid: a.grid.clone(),
        },
    })
}

/// column[target] -= factor * column[source]
fn add_column_multiple(m: &mut Matrix, target: usize, source: usize, factor: &BigRational) {
    for r in 0..m.rows() {
        let delta = factor * &m[(r, source)];
        if !delta.is_zero() {
            m[(r, target)] -= delta;
        }
    }
}

/// True iff rank of A on rows i..n, columns 1..j equals d_w(i, j) for all
/// (i, j). These ranks are unchanged by upper-triangular column operations.
pub fn cell_rank_check(a: &PresentationMatrix, w: &Permutation) -> bool {
    let n = a.size();
    if w.degree() > n {
        return false;
    }
    let table = w.rank_table_in(n.max(1));
    (1..=n).all(|i| (1..=n).all(|j| a.entries.block(i - 1, n, 0, j).rank() == table.get(i, j)))
}

/// Interval decomposition: the bars (b_{w(i)}, d_i) of the reduced cell.
pub fn interval_decomposition(
    a: &PresentationMatrix,
) -> Result<PersistenceDiagram, PersistenceError> {
    let cell = reduce_to_cell(a)?;
    Ok(a.grid.bars_of(&cell.perm))
}

/// Rank of the structure map M_s → M_t of the presented module.
///
/// In degree t, M_t is the span of the birth generators born by t modulo the
/// columns of A whose death is at most t. The image of M_s is the span of
/// the generators born by s, so the rank is
/// rank[E_s | K_t] − rank K_t.
pub fn rank_invariant(a: &PresentationMatrix, s: i64, t: i64) -> Result<usize, PersistenceError> {
    if s > t {
        return Err(PersistenceError::InvalidGrades { s, t });
    }
    let n = a.size();
    let grid = &a.grid;
    let dead: Vec<usize> = (0..n).filter(|&j| grid.deaths[j] <= t).collect();
    let born_by_s: Vec<usize> = (0..n).filter(|&i| grid.births[i] <= s).collect();
    let born_by_t: Vec<usize> = (0..n).filter(|&i| grid.births[i] <= t).collect();

    // Restrict to generators alive in degree t. Under separation a
    // nonempty `dead` forces every birth to be at most t.
    let restrict = |m: &Matrix| -> Matrix {
        let mut out = Matrix::zeros(born_by_t.len(), m.cols());
        for (r, &i) in born_by_t.iter().enumerate() {
            for c in 0..m.cols() {
                out[(r, c)] = m[(i, c)].clone();
            }
        }
        out
    };
    let relations = restrict(&a.entries.select_columns(&dead));
    let mut inclusion = Matrix::zeros(n, born_by_s.len());
    for (c, &i) in born_by_s.iter().enumerate() {
        inclusion[(i, c)] = BigRational::one();
    }
    let inclusion = restrict(&inclusion);
    Ok(inclusion.hcat(&relations).rank() - relations.rank())
}

/// Multiplicity of every bar (b_j, d_i) recovered from the rank invariant
/// by inclusion–exclusion, returned as a diagram sorted by death.
pub fn diagram_from_rank_invariant(
    a: &PresentationMatrix,
) -> Result<PersistenceDiagram, PersistenceError> {
    let grid = &a.grid;
    let r = |s: i64, t: i64| rank_invariant(a, s, t).map(|x| x as i64);
    let mut bars = Vec::new();
    for &d in &grid.deaths {
        for &b in &grid.births {
            let mult = r(b, d - 1)? - r(b - 1, d - 1)? - r(b, d)? + r(b - 1, d)?;
            assert!(mult >= 0, "negative bar multiplicity at ({b}, {d})");
            bars.extend(std::iter::repeat_n((b, d), mult as usize));
        }
    }
    Ok(PersistenceDiagram { bars })
}

/// Deterministic invertible matrix with entries in −3..=3 on the standard
/// grid, resampled until nonsingular.
pub fn random_presentation(n: usize, seed: u64) -> PresentationMatrix {
    assert!(n >= 1, "presentations need at least one generator");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let m = Matrix::from_integers(&rows).expect("rectangular");
        if let Ok(p) = PresentationMatrix::on_standard_grid(m) {
            return p;
        }
    }
}

/// Deterministic invertible upper-triangular matrix with small rational
/// entries, used to move within a presentation's orbit.
pub fn random_upper_triangular(n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let num: i64 = if i == j {
                let v: i64 = rng.gen_range(1..=3);
                if rng.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            } else {
                rng.gen_range(-3..=3)
            };
            let den: i64 = rng.gen_range(1..=3);
            b[(i, j)] = BigRational::new(num.into(), den.into());
        }
    }
    b
}
