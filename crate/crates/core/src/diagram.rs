//! Products of persistence diagrams on a fixed birth/death grid.
//!
//! The diagram class D_w is identified with the Schubert class σ_{w∨}, so
//! D_v · D_w is computed as σ_{v∨} · σ_{w∨} and every resulting σ_u is read
//! back as D_{u∨}. D_{w₀} is the identity.
//!
//! Finite mode dualizes everything in S_n for n the grid size. In stable
//! mode inputs are dualized in S_n, but each output σ_u is dualized in the
//! smallest symmetric group containing u, so z₁² = 𝔖_{312} reads back as
//! D̂_{132}. Stable sums carry labels only; their terms may not fit the grid.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::{integer_from_json, integer_to_json};
use crate::perm::{PermError, Permutation};
use crate::persistence::{BirthDeathGrid, PersistenceDiagram, PersistenceError};
use crate::schubert::{self, Mode, SchubertError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("cannot multiply a {left} class by a {right} class")]
    ModeMismatch { left: Mode, right: Mode },
    #[error("closure enumeration is only defined in finite mode")]
    StableClosure,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Schubert(#[from] SchubertError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

/// The class D_w (finite) or D̂_w (stable) on a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramClass {
    perm: Permutation,
    grid: BirthDeathGrid,
    stable: bool,
}

impl DiagramClass {
    pub fn finite(perm: Permutation, grid: BirthDeathGrid) -> Result<Self, DiagramError> {
        perm.in_degree(grid.size())?;
        Ok(Self {
            perm,
            grid,
            stable: false,
        })
    }

    pub fn stable(perm: Permutation, grid: BirthDeathGrid) -> Result<Self, DiagramError> {
        perm.in_degree(grid.size())?;
        Ok(Self {
            perm,
            grid,
            stable: true,
        })
    }

    pub fn new(perm: Permutation, grid: BirthDeathGrid, mode: Mode) -> Result<Self, DiagramError> {
        match mode {
            Mode::Stable => Self::stable(perm, grid),
            Mode::Finite(n) if n == grid.size() => Self::finite(perm, grid),
            Mode::Finite(n) => Err(DiagramError::GridMismatch(format!(
                "finite({n}) class on a grid of size {}",
                grid.size()
            ))),
        }
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn grid(&self) -> &BirthDeathGrid {
        &self.grid
    }

    pub fn mode(&self) -> Mode {
        if self.stable {
            Mode::Stable
        } else {
            Mode::Finite(self.grid.size())
        }
    }

    /// The bars of the open cell D°_w: {(b_{w(i)}, d_i)}.
    pub fn bars(&self) -> PersistenceDiagram {
        self.grid.bars_of(&self.perm)
    }

    /// The Schubert class σ_{w∨} this diagram stands for.
    pub fn schubert_label(&self) -> Permutation {
        self.perm
            .dual(self.grid.size())
            .expect("checked on construction")
    }
}

/// Recovers w from a diagram whose births and deaths are exactly the grid's.
pub fn class_from_pairs(
    bars: &PersistenceDiagram,
    grid: &BirthDeathGrid,
) -> Result<DiagramClass, DiagramError> {
    let n = grid.size();
    if bars.len() != n {
        return Err(DiagramError::GridMismatch(format!(
            "{} bars for a grid of size {n}",
            bars.len()
        )));
    }
    let mut images = vec![0usize; n];
    let mut birth_used = vec![false; n];
    for &(b, d) in bars.bars() {
        let i =
            grid.deaths().iter().position(|&x| x == d).ok_or_else(|| {
                DiagramError::GridMismatch(format!("death {d} is not on the grid"))
            })?;
        let j =
            grid.births().iter().position(|&x| x == b).ok_or_else(|| {
                DiagramError::GridMismatch(format!("birth {b} is not on the grid"))
            })?;
        if images[i] != 0 || birth_used[j] {
            return Err(DiagramError::GridMismatch(format!(
                "bar ({b}, {d}) reuses a grid point"
            )));
        }
        images[i] = j + 1;
        birth_used[j] = true;
    }
    DiagramClass::finite(Permutation::from_one_line(&images)?, grid.clone())
}

/// The diagrams D°_u for every u ≤ w in Bruhat order.
pub fn enumerate_closure(class: &DiagramClass) -> Result<Vec<PersistenceDiagram>, DiagramError> {
    if class.stable {
        return Err(DiagramError::StableClosure);
    }
    Ok(class
        .perm
        .lower_interval()
        .iter()
        .map(|u| class.grid.bars_of(u))
        .collect())
}

/// An integer combination of diagram classes sharing one grid and mode.
#[derive(Clone, PartialEq, Eq)]
pub struct DiagramSum {
    grid: BirthDeathGrid,
    mode: Mode,
    terms: BTreeMap<Permutation, BigInt>,
}

impl DiagramSum {
    pub fn zero(grid: BirthDeathGrid, mode: Mode) -> Self {
        Self {
            grid,
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_class(class: &DiagramClass) -> Self {
        let mut s = Self::zero(class.grid.clone(), class.mode());
        s.terms.insert(class.perm.clone(), BigInt::one());
        s
    }

    pub fn from_terms(
        grid: BirthDeathGrid,
        mode: Mode,
        terms: impl IntoIterator<Item = (Permutation, BigInt)>,
    ) -> Self {
        let mut s = Self::zero(grid, mode);
        for (w, c) in terms {
            *s.terms.entry(w).or_default() += c;
        }
        s.terms.retain(|_, c| !c.is_zero());
        s
    }

    pub fn grid(&self) -> &BirthDeathGrid {
        &self.grid
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Permutation) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    fn label(&self, w: &Permutation) -> String {
        let (prefix, line) = match self.mode {
            Mode::Finite(n) => ("D", w.one_line_in(n)),
            Mode::Stable => ("D^", w.one_line()),
        };
        let line: Vec<String> = line.iter().map(ToString::to_string).collect();
        format!("{prefix}[{}]", line.join(" "))
    }

    pub fn to_json(&self) -> Value {
        let n = self.mode.degree();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let perm = match n {
                    Some(n) => w.one_line_in(n),
                    None => w.one_line(),
                };
                json!({"perm": perm, "coeff": integer_to_json(c)})
            })
            .collect();
        json!({
            "mode": if n.is_some() { "finite" } else { "stable" },
            "n": n,
            "terms": terms,
            "grid": {"births": self.grid.births(), "deaths": self.grid.deaths()},
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, DiagramError> {
        let bad = |m: &str| DiagramError::Json(m.to_string());
        let grid = grid_from_json(v.get("grid").ok_or_else(|| bad("missing \"grid\""))?)?;
        let mode = match v.get("mode").and_then(Value::as_str) {
            Some("stable") => Mode::Stable,
            Some("finite") => {
                let n = v
                    .get("n")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("finite mode needs \"n\""))?;
                if n as usize != grid.size() {
                    return Err(DiagramError::GridMismatch(format!(
                        "n = {n} but the grid has size {}",
                        grid.size()
                    )));
                }
                Mode::Finite(n as usize)
            }
            _ => return Err(bad("\"mode\" must be \"finite\" or \"stable\"")),
        };
        let mut terms = Vec::new();
        for t in v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\""))?
        {
            let perm = perm_from_json(t.get("perm").ok_or_else(|| bad("term without \"perm\""))?)?;
            if let Mode::Finite(n) = mode {
                perm.in_degree(n)?;
            }
            let c = t
                .get("coeff")
                .and_then(integer_from_json)
                .ok_or_else(|| bad("term without integer \"coeff\""))?;
            terms.push((perm, c));
        }
        Ok(Self::from_terms(grid, mode, terms))
    }
}

impl fmt::Display for DiagramSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}", self.label(w))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiagramSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.mode, self)
    }
}

/// D_v · D_w through the identification D_w ↔ σ_{w∨}.
pub fn diagram_product(
    left: &DiagramClass,
    right: &DiagramClass,
) -> Result<DiagramSum, DiagramError> {
    if left.grid != right.grid {
        return Err(DiagramError::GridMismatch(
            "diagram classes live on different grids".to_string(),
        ));
    }
    let mode = left.mode();
    if mode != right.mode() {
        return Err(DiagramError::ModeMismatch {
            left: mode,
            right: right.mode(),
        });
    }
    let n = left.grid.size();
    let classes = schubert::product(&left.schubert_label(), &right.schubert_label(), mode)?;
    let mut terms = Vec::with_capacity(classes.len());
    for (u, c) in classes.terms() {
        let m = match mode {
            Mode::Finite(_) => n,
            Mode::Stable => u.degree().max(1),
        };
        terms.push((u.dual(m)?, c.clone()));
    }
    Ok(DiagramSum::from_terms(left.grid.clone(), mode, terms))
}

/// One "[b,d)" line per bar, ordered by death index.
pub fn render_class(class: &DiagramClass) -> String {
    class
        .bars()
        .bars()
        .iter()
        .map(|(b, d)| format!("[{b},{d})"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Each term becomes a block headed by its coefficient and label, followed
/// by its bars in finite mode; blocks are separated by a `+` line. Stable
/// sums render headers only. The zero sum renders as `0`.
pub fn render_barcode(sum: &DiagramSum) -> String {
    if sum.is_zero() {
        return "0".to_string();
    }
    let blocks: Vec<String> = sum
        .terms
        .iter()
        .map(|(w, c)| {
            let mut lines = Vec::new();
            if c.is_one() {
                lines.push(sum.label(w));
            } else {
                lines.push(format!("{c} {}", sum.label(w)));
            }
            if let Mode::Finite(_) = sum.mode {
                lines.extend(
                    sum.grid
                        .bars_of(w)
                        .bars()
                        .iter()
                        .map(|(b, d)| format!("[{b},{d})")),
                );
            }
            lines.join("\n")
        })
        .collect();
    blocks.join("\n+\n")
}

fn perm_from_json(v: &Value) -> Result<Permutation, DiagramError> {
    let values: Vec<usize> = v
        .as_array()
        .and_then(|a| a.iter().map(|x| x.as_u64().map(|x| x as usize)).collect())
        .ok_or_else(|| {
            DiagramError::Json("\"perm\" must be an array of positive integers".into())
        })?;
    Ok(Permutation::from_one_line(&values)?)
}

fn grid_from_json(v: &Value) -> Result<BirthDeathGrid, DiagramError> {
    let grades = |key: &str| -> Result<Vec<i64>, DiagramError> {
        v.get(key)
            .and_then(Value::as_array)
            .and_then(|a| a.iter().map(Value::as_i64).collect())
            .ok_or_else(|| DiagramError::Json(format!("\"{key}\" must be an array of integers")))
    };
    Ok(BirthDeathGrid::new(grades("births")?, grades("deaths")?)?)
}

/// Input for a diagram product:
/// `{"mode": "finite"|"stable", "left": CLASS, "right": CLASS}` where
/// `CLASS = {"perm": [...], "births": [...], "deaths": [...]}`.
/// `mode` defaults to finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRequest {
    pub left: DiagramClass,
    pub right: DiagramClass,
}

impl ProductRequest {
    pub fn from_json(v: &Value) -> Result<Self, DiagramError> {
        let stable = match v.get("mode").and_then(Value::as_str) {
            None | Some("finite") => false,
            Some("stable") => true,
            Some(other) => return Err(DiagramError::Json(format!("unknown mode {other:?}"))),
        };
        let class = |key: &str| -> Result<DiagramClass, DiagramError> {
            let c = v
                .get(key)
                .ok_or_else(|| DiagramError::Json(format!("missing \"{key}\" class")))?;
            let perm = perm_from_json(
                c.get("perm")
                    .ok_or_else(|| DiagramError::Json(format!("\"{key}\" has no \"perm\"")))?,
            )?;
            let grid = grid_from_json(c)?;
            if perm.degree() > grid.size() {
                return Err(DiagramError::GridMismatch(format!(
                    "permutation {perm} does not fit a grid of size {}",
                    grid.size()
                )));
            }
            if stable {
                DiagramClass::stable(perm, grid)
            } else {
                DiagramClass::finite(perm, grid)
            }
        };
        Ok(Self {
            left: class("left")?,
            right: class("right")?,
        })
    }

    pub fn to_json(&self) -> Value {
        let class = |c: &DiagramClass| {
            json!({
                "perm": c.perm.one_line_in(c.grid.size()),
                "births": c.grid.births(),
                "deaths": c.grid.deaths(),
            })
        };
        json!({
            "mode": if self.left.stable { "stable" } else { "finite" },
            "left": class(&self.left),
            "right": class(&self.right),
        })
    }

    pub fn evaluate(&self) -> Result<DiagramSum, DiagramError> {
        diagram_product(&self.left, &self.right)
    }
}
