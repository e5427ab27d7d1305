//! Rectangular tableaux on `[a] x [b]` with alphabet `[g]`.
//!
//! Coordinates are 1-based pairs `(x, y)` with `x` the column and `y` the
//! row; box `(1,1)` sits at the top left (English convention). Entries
//! strictly increase rightward and downward. A tableau is a *k-uniform
//! displacement tableau* when equal symbols only occur on boxes with equal
//! `x - y` residue mod k.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::splitting::{magnitude, mu_alpha, Alpha, BNParams};

/// Grid dimensions: `a` columns by `b` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid {
    pub a: i64,
    pub b: i64,
}

impl Grid {
    pub fn new(a: i64, b: i64) -> Result<Self, Error> {
        if a < 1 || b < 1 {
            return Err(Error::InvalidParams(format!(
                "grid dimensions must be positive, got {a} x {b}"
            )));
        }
        Ok(Grid { a, b })
    }

    pub fn area(&self) -> i64 {
        self.a * self.b
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        1 <= x && x <= self.a && 1 <= y && y <= self.b
    }
}

/// A strictly increasing filling of `[a] x [b]` by symbols in `[1, g]`.
///
/// Serializes as `{"a":3,"b":2,"g":6,"rows":[[1,2,4],[4,5,6]]}` with rows
/// listed top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTableau", into = "RawTableau")]
pub struct Tableau {
    grid: Grid,
    g: i64,
    cells: Vec<i64>, // row-major
}

#[derive(Serialize, Deserialize)]
struct RawTableau {
    a: i64,
    b: i64,
    g: i64,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<RawTableau> for Tableau {
    type Error = Error;
    fn try_from(raw: RawTableau) -> Result<Self, Error> {
        let t = Tableau::from_rows(raw.g, raw.rows)?;
        if t.grid.a != raw.a || t.grid.b != raw.b {
            return Err(Error::InvalidTableau(format!(
                "declared shape {}x{} does not match rows ({}x{})",
                raw.a, raw.b, t.grid.a, t.grid.b
            )));
        }
        Ok(t)
    }
}

impl From<Tableau> for RawTableau {
    fn from(t: Tableau) -> RawTableau {
        RawTableau {
            a: t.grid.a,
            b: t.grid.b,
            g: t.g,
            rows: t.rows(),
        }
    }
}

impl Tableau {
    /// Build and validate a tableau from its rows (top to bottom).
    pub fn from_rows(g: i64, rows: Vec<Vec<i64>>) -> Result<Self, Error> {
        let b = rows.len() as i64;
        if b == 0 {
            return Err(Error::InvalidTableau("no rows".into()));
        }
        let a = rows[0].len() as i64;
        if a == 0 {
            return Err(Error::InvalidTableau("empty first row".into()));
        }
        if rows.iter().any(|r| r.len() as i64 != a) {
            return Err(Error::InvalidTableau("ragged rows".into()));
        }
        let grid = Grid::new(a, b)?;
        let cells: Vec<i64> = rows.into_iter().flatten().collect();
        let t = Tableau { grid, g, cells };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), Error> {
        let (a, b) = (self.grid.a, self.grid.b);
        for y in 1..=b {
            for x in 1..=a {
                let v = self.get(x, y);
                if v < 1 || v > self.g {
                    return Err(Error::InvalidTableau(format!(
                        "entry {v} at ({x},{y}) outside alphabet [1,{}]",
                        self.g
                    )));
                }
                if x < a && self.get(x + 1, y) <= v {
                    return Err(Error::InvalidTableau(format!(
                        "row not strictly increasing at ({x},{y})"
                    )));
                }
                if y < b && self.get(x, y + 1) <= v {
                    return Err(Error::InvalidTableau(format!(
                        "column not strictly increasing at ({x},{y})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Column count.
    pub fn width(&self) -> i64 {
        self.grid.a
    }

    /// Row count.
    pub fn height(&self) -> i64 {
        self.grid.b
    }

    /// Alphabet size.
    pub fn alphabet(&self) -> i64 {
        self.g
    }

    /// Entry at 1-based box (x, y).
    pub fn get(&self, x: i64, y: i64) -> i64 {
        debug_assert!(self.grid.contains(x, y), "({x},{y}) outside {:?}", self.grid);
        self.cells[((y - 1) * self.grid.a + (x - 1)) as usize]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.cells
            .chunks(self.grid.a as usize)
            .map(|c| c.to_vec())
            .collect()
    }

    /// Whether equal symbols only occur at equal `x - y` residues mod k.
    pub fn is_k_uniform(&self, k: i64) -> bool {
        debug_assert!(k >= 2);
        let mut residue: BTreeMap<i64, i64> = BTreeMap::new();
        for y in 1..=self.grid.b {
            for x in 1..=self.grid.a {
                let r = (x - y).rem_euclid(k);
                match residue.insert(self.get(x, y), r) {
                    Some(prev) if prev != r => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// The set of distinct symbols, in increasing order.
    pub fn symbols(&self) -> BTreeSet<i64> {
        self.cells.iter().copied().collect()
    }

    pub fn distinct_symbol_count(&self) -> i64 {
        self.symbols().len() as i64
    }

    /// The transpose tableau on `[b] x [a]`: `t^T(x,y) = t(y,x)`.
    pub fn transpose(&self) -> Tableau {
        let rows = (1..=self.grid.a)
            .map(|y| (1..=self.grid.b).map(|x| self.get(y, x)).collect())
            .collect();
        Tableau::from_rows(self.g, rows).expect("transpose preserves validity")
    }

    /// The rotated tableau: `t_R(x,y) = g + 1 - t(a+1-x, b+1-y)`.
    pub fn rotate(&self) -> Tableau {
        let (a, b) = (self.grid.a, self.grid.b);
        let rows = (1..=b)
            .map(|y| {
                (1..=a)
                    .map(|x| self.g + 1 - self.get(a + 1 - x, b + 1 - y))
                    .collect()
            })
            .collect();
        Tableau::from_rows(self.g, rows).expect("rotation preserves validity")
    }

    /// Admissible scrollar indices for this shape: `1 <= alpha <= min(a, k-1)`
    /// with `alpha >= k - b` or `alpha = a`.
    pub fn admissible_scrollar_alpha(&self, k: i64, alpha: i64) -> bool {
        alpha >= 1
            && alpha <= self.grid.a.min(k - 1)
            && (alpha >= k - self.grid.b || alpha == self.grid.a)
    }

    /// Whether this tableau is scrollar of type `alpha`: equal symbols occur
    /// exactly at translates by `(l*alpha, l*(alpha-k))`, with the boundary
    /// inequalities in the edge cases `alpha = a` and `alpha = k - b`.
    pub fn is_scrollar(&self, k: i64, alpha: i64) -> Result<bool, Error> {
        let (a, b) = (self.grid.a, self.grid.b);
        if !self.admissible_scrollar_alpha(k, alpha) {
            return Err(Error::InvalidAlpha {
                alpha,
                min: 1,
                max: a.min(k - 1),
            });
        }
        let dy = k - alpha;
        // Condition (1), "if": each box agrees with its translate.
        for y in 1..=b {
            for x in 1..=a {
                if x + alpha <= a && y - dy >= 1 && self.get(x, y) != self.get(x + alpha, y - dy) {
                    return Ok(false);
                }
            }
        }
        // Condition (1), "only if": occurrences of one symbol form a single
        // translate chain.
        let mut boxes: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
        for y in 1..=b {
            for x in 1..=a {
                boxes.entry(self.get(x, y)).or_default().push((x, y));
            }
        }
        for occ in boxes.values_mut() {
            occ.sort_unstable();
            for w in occ.windows(2) {
                if w[1].0 - w[0].0 != alpha || w[0].1 - w[1].1 != dy {
                    return Ok(false);
                }
            }
        }
        // Condition (2): alpha = a.
        if alpha == a {
            for y in (k - a + 1).max(1)..=b {
                if y + a - k >= 1 && self.get(1, y) <= self.get(a, y + a - k) {
                    return Ok(false);
                }
            }
        }
        // Condition (3): alpha = k - b.
        if alpha == k - b {
            for x in (k - b + 1).max(1)..=a {
                if x + b - k >= 1 && self.get(x, 1) <= self.get(x + b - k, b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All admissible alpha for which `is_scrollar` holds.
    pub fn scrollar_types(&self, k: i64) -> Vec<i64> {
        (1..=self.grid.a.min(k - 1))
            .filter(|&alpha| self.admissible_scrollar_alpha(k, alpha))
            .filter(|&alpha| self.is_scrollar(k, alpha).unwrap_or(false))
            .collect()
    }

    /// Whether some box has `t(x,y+1) = t(x,y) + 1` with `k <= t(x,y) <= g-k`.
    pub fn has_vertical_steps(&self, k: i64) -> bool {
        for y in 1..self.grid.b {
            for x in 1..=self.grid.a {
                let v = self.get(x, y);
                if self.get(x, y + 1) == v + 1 && k <= v && v <= self.g - k {
                    return true;
                }
            }
        }
        false
    }
}

/// Construct a scrollar tableau of type `alpha` on `[r+1] x [g-d+r]` with
/// alphabet `[g]`, or `None` when `g < |mu_alpha|` (no such tableau exists).
///
/// The filling puts the first `alpha` columns row-major at the bottom of the
/// alphabet and the remaining fundamental boxes (the last `k - alpha` rows
/// past column `alpha`) at the top, filled row-major in column blocks of
/// width `alpha`; all other boxes are translates. Packing the tail at the
/// top of the alphabet keeps unit vertical jumps above `g - k`, so for
/// `alpha > 1` the result has no vertical steps.
pub fn generate_scrollar(params: &BNParams, alpha: Alpha) -> Result<Option<Tableau>, Error> {
    let a = params.grid_width();
    let b = params.grid_height();
    let g = params.g();
    let k = params.k();
    let al = alpha.get();
    let size = magnitude(&mu_alpha(params, alpha));
    if g < size {
        return Ok(None);
    }
    let dy = k - al; // tail height; b >= dy by the alpha range
    let mut cells = vec![0i64; (a * b) as usize];
    let idx = |x: i64, y: i64| ((y - 1) * a + (x - 1)) as usize;

    for y in 1..=b {
        for x in 1..=al.min(a) {
            cells[idx(x, y)] = (y - 1) * al + x;
        }
    }
    let tail_rows = dy.min(b);
    let mut v = g - (a - al) * tail_rows;
    let mut block = al + 1;
    while block <= a {
        let w = al.min(a - block + 1);
        for y in (b - tail_rows + 1)..=b {
            for x in block..block + w {
                v += 1;
                cells[idx(x, y)] = v;
            }
        }
        block += al;
    }
    if a > al {
        debug_assert_eq!(v, g, "tail block must end at the top of the alphabet");
    }
    for x in (al + 1)..=a {
        for y in 1..=(b - tail_rows) {
            cells[idx(x, y)] = cells[idx(x - al, y + tail_rows)];
        }
    }

    let rows = cells
        .chunks(a as usize)
        .map(|c| c.to_vec())
        .collect::<Vec<_>>();
    let t = Tableau::from_rows(g, rows)
        .map_err(|e| Error::Internal(format!("scrollar construction produced {e}")))?;
    if !t.is_k_uniform(k) {
        return Err(Error::Internal("scrollar construction is not k-uniform".into()));
    }
    if !t.is_scrollar(k, al)? {
        return Err(Error::Internal("scrollar construction failed its own check".into()));
    }
    if al > 1 && t.has_vertical_steps(k) {
        return Err(Error::Internal("scrollar construction has vertical steps".into()));
    }
    if t.distinct_symbol_count() != size {
        return Err(Error::Internal(format!(
            "scrollar construction has {} distinct symbols, expected {size}",
            t.distinct_symbol_count()
        )));
    }
    Ok(Some(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::SplittingType;

    fn fig5_t() -> Tableau {
        Tableau::from_rows(6, vec![vec![1, 2, 4], vec![4, 5, 6]]).unwrap()
    }
    fn fig5_tp() -> Tableau {
        Tableau::from_rows(6, vec![vec![1, 3, 5], vec![2, 4, 6]]).unwrap()
    }
    fn fig5_ts() -> Tableau {
        Tableau::from_rows(6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(fig5_t().check().is_ok());
        assert!(Tableau::from_rows(6, vec![vec![2, 1], vec![3, 4]]).is_err());
        assert!(Tableau::from_rows(6, vec![vec![1, 2], vec![1, 3]]).is_err());
        assert!(Tableau::from_rows(3, vec![vec![1, 2], vec![3, 4]]).is_err());
        assert!(Tableau::from_rows(6, vec![vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn uniformity() {
        assert!(fig5_t().is_k_uniform(3));
        assert!(!fig5_t().is_k_uniform(2));
        // Injective tableaux are k-uniform for every k.
        for k in 2..=7 {
            assert!(fig5_ts().is_k_uniform(k));
        }
    }

    #[test]
    fn symbols_and_counts() {
        let t = fig5_t();
        assert_eq!(t.symbols().into_iter().collect::<Vec<_>>(), vec![1, 2, 4, 5, 6]);
        assert_eq!(t.distinct_symbol_count(), 5);
        assert_eq!(fig5_ts().distinct_symbol_count(), 6);
    }

    #[test]
    fn transpose_examples() {
        let t = Tableau::from_rows(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(t.transpose().rows(), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(fig5_t().transpose().transpose(), fig5_t());
    }

    #[test]
    fn rotate_examples() {
        let t = fig5_t();
        assert_eq!(t.rotate().rows(), vec![vec![1, 2, 3], vec![3, 5, 6]]);
        assert_eq!(t.rotate().rotate(), t);
        let single = Tableau::from_rows(9, vec![vec![4]]).unwrap();
        assert_eq!(single.rotate().rows(), vec![vec![6]]);
    }

    #[test]
    fn scrollar_figure5() {
        let t = fig5_t();
        assert!(t.is_scrollar(3, 2).unwrap());
        assert!(!t.is_scrollar(3, 1).unwrap());
        assert_eq!(t.scrollar_types(3), vec![2]);

        let tp = fig5_tp();
        assert!(tp.is_scrollar(3, 1).unwrap());
        assert!(!tp.is_scrollar(3, 2).unwrap());
        assert_eq!(tp.scrollar_types(3), vec![1]);

        let ts = fig5_ts();
        assert!(!ts.is_scrollar(3, 1).unwrap());
        assert!(!ts.is_scrollar(3, 2).unwrap());
        assert!(ts.scrollar_types(3).is_empty());

        assert!(matches!(
            t.is_scrollar(3, 3),
            Err(Error::InvalidAlpha { .. })
        ));
    }

    #[test]
    fn vertical_steps() {
        // 3 directly above 4 with 3 in [k, g-k] = [3, 5].
        let t = Tableau::from_rows(8, vec![vec![1, 3], vec![2, 4]]).unwrap();
        assert!(t.has_vertical_steps(3));
        // Out of the middle window: same shape, bigger k.
        assert!(!t.has_vertical_steps(4));
        let row = Tableau::from_rows(8, vec![vec![1, 2, 3]]).unwrap();
        assert!(!row.has_vertical_steps(3));
    }

    #[test]
    fn generate_small_scrollar() {
        let p = BNParams::new(5, 1, 4, 3).unwrap();
        let a2 = Alpha::new(&p, 2).unwrap();
        let t = generate_scrollar(&p, a2).unwrap().unwrap();
        assert_eq!((t.width(), t.height()), (2, 2));
        assert!(t.is_scrollar(3, 2).unwrap());
        assert_eq!(t.distinct_symbol_count(), 4);
        assert_eq!(
            t.distinct_symbol_count(),
            magnitude(&mu_alpha(&p, a2))
        );

        // g below the magnitude: no tableau.
        let p = BNParams::new(4, 3, 4, 5).unwrap();
        let a4 = Alpha::new(&p, 4).unwrap();
        assert_eq!(magnitude(&mu_alpha(&p, a4)), 12);
        assert!(generate_scrollar(&p, a4).unwrap().is_none());
    }

    #[test]
    fn serde_matches_spec_shape() {
        let t = fig5_t();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"a":3,"b":2,"g":6,"rows":[[1,2,4],[4,5,6]]}"#);
        let back: Tableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Tableau>(
            r#"{"a":3,"b":2,"g":6,"rows":[[1,2,4],[4,5,3]]}"#
        )
        .is_err());
        let _ = SplittingType::new(vec![0, 0]).unwrap();
    }
}
