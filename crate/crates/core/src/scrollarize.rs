//! The hook statistic, admissible paths, and scrollarization.
//!
//! For a k-uniform displacement tableau t and a box (x,y) with x+y >= k, the
//! k-1 largest symbols at or before (x,y) in its row and column form a hook
//! anchored at (x,y); `stat` returns its width. An admissible path of type
//! alpha walks from (alpha, k-alpha) to the bottom-right corner, stepping
//! right only onto statistic <= alpha and down only onto statistic >= alpha.
//! Replaying such a path turns any k-uniform displacement tableau into a
//! scrollar one whose torus contains the original tableau's torus.

use serde::Serialize;

use crate::error::Error;
use crate::tableau::Tableau;

/// The statistic values of one tableau; boxes with x+y < k are undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatGrid {
    a: i64,
    b: i64,
    k: i64,
    values: Vec<Option<i64>>,
}

impl StatGrid {
    pub fn get(&self, x: i64, y: i64) -> Option<i64> {
        if 1 <= x && x <= self.a && 1 <= y && y <= self.b {
            self.values[((y - 1) * self.a + (x - 1)) as usize]
        } else {
            None
        }
    }

    /// Boxes with a defined statistic, row-major.
    pub fn defined(&self) -> impl Iterator<Item = (i64, i64, i64)> + '_ {
        let a = self.a;
        self.values.iter().enumerate().filter_map(move |(i, v)| {
            v.map(|s| ((i as i64) % a + 1, (i as i64) / a + 1, s))
        })
    }
}

/// Hook width at (x,y): among the symbols at or above (x,y) in column x and
/// at or before it in row y, the k-1 largest form a hook with corner (x,y);
/// the width counts its boxes in row y.
pub fn stat(t: &Tableau, k: i64, x: i64, y: i64) -> Result<i64, Error> {
    if !t.is_k_uniform(k) {
        return Err(Error::NotKUniform { k });
    }
    if !t.grid().contains(x, y) {
        return Err(Error::GridMismatch(format!(
            "({x},{y}) outside the {}x{} grid",
            t.width(),
            t.height()
        )));
    }
    stat_unchecked(t, k, x, y)
}

fn stat_unchecked(t: &Tableau, k: i64, x: i64, y: i64) -> Result<i64, Error> {
    if x + y < k {
        return Err(Error::Undefined { x, y, k });
    }
    // Both arms decrease away from the corner, so the k-1 largest symbols
    // are found by a two-pointer merge. The corner sits in the row arm.
    let mut width = 0; // boxes taken from row y, corner included
    let mut height = 0; // boxes taken strictly above in column x
    for _ in 0..(k - 1) {
        let row_next = (x - width >= 1).then(|| t.get(x - width, y));
        let col_next = (y - height - 1 >= 1).then(|| t.get(x, y - height - 1));
        match (row_next, col_next) {
            (Some(rv), Some(cv)) if rv == cv => {
                return Err(Error::Internal(format!(
                    "ambiguous hook at ({x},{y}): symbol {rv} repeats within the k-1 window"
                )));
            }
            (Some(rv), Some(cv)) => {
                if rv > cv {
                    width += 1;
                } else {
                    height += 1;
                }
            }
            (Some(_), None) => width += 1,
            (None, Some(_)) => height += 1,
            (None, None) => {
                return Err(Error::Internal(format!(
                    "hook at ({x},{y}) ran out of boxes"
                )))
            }
        }
    }
    debug_assert_eq!(width + height, k - 1);
    Ok(width)
}

/// The statistic at every defined box.
pub fn stat_grid(t: &Tableau, k: i64) -> Result<StatGrid, Error> {
    if !t.is_k_uniform(k) {
        return Err(Error::NotKUniform { k });
    }
    let (a, b) = (t.width(), t.height());
    let mut values = Vec::with_capacity((a * b) as usize);
    for y in 1..=b {
        for x in 1..=a {
            values.push(if x + y >= k {
                Some(stat_unchecked(t, k, x, y)?)
            } else {
                None
            });
        }
    }
    Ok(StatGrid { a, b, k, values })
}

/// A monotone path of boxes from `(alpha, k-alpha)` to `(a,b)` whose
/// right-steps land on statistic <= alpha and down-steps on >= alpha.
/// Serializes as `{"type":3,"boxes":[[3,2],[3,3],[4,3],[4,4]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissiblePath {
    #[serde(rename = "type")]
    pub path_type: i64,
    pub boxes: Vec<(i64, i64)>,
}

impl AdmissiblePath {
    /// Step string, one of 'D' or 'R' per move.
    pub fn steps(&self) -> Vec<Step> {
        self.boxes
            .windows(2)
            .map(|w| if w[1].0 > w[0].0 { Step::Right } else { Step::Down })
            .collect()
    }
}

/// One move of an admissible path. `Down` sorts before `Right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Step {
    Down,
    Right,
}

/// Every admissible path of the tableau, sorted lexicographically by step
/// string with down-steps first.
pub fn admissible_paths(t: &Tableau, k: i64) -> Result<Vec<AdmissiblePath>, Error> {
    let (a, b) = (t.width(), t.height());
    if a + b < k {
        return Err(Error::GridTooSmall { sum: a + b, k });
    }
    let sg = stat_grid(t, k)?;
    let mut out = Vec::new();
    for alpha in 1.max(k - b)..=a.min(k - 1) {
        let mut boxes = vec![(alpha, k - alpha)];
        dfs(&sg, alpha, a, b, &mut boxes, &mut out);
    }
    Ok(out)
}

fn dfs(
    sg: &StatGrid,
    alpha: i64,
    a: i64,
    b: i64,
    boxes: &mut Vec<(i64, i64)>,
    out: &mut Vec<AdmissiblePath>,
) {
    let (x, y) = *boxes.last().unwrap();
    if (x, y) == (a, b) {
        out.push(AdmissiblePath {
            path_type: alpha,
            boxes: boxes.clone(),
        });
        return;
    }
    // Down first keeps the output in D-before-R lexicographic order.
    if y + 1 <= b && sg.get(x, y + 1).is_some_and(|s| s >= alpha) {
        boxes.push((x, y + 1));
        dfs(sg, alpha, a, b, boxes, out);
        boxes.pop();
    }
    if x + 1 <= a && sg.get(x + 1, y).is_some_and(|s| s <= alpha) {
        boxes.push((x + 1, y));
        dfs(sg, alpha, a, b, boxes, out);
        boxes.pop();
    }
}

/// Scrollarize a k-uniform displacement tableau: returns a scrollar tableau
/// on the same grid whose torus contains the input's, together with the
/// admissible path that drove the construction (`None` in the trivial case
/// a+b <= k, where the input is already scrollar of type a).
///
/// Among the admissible paths, the one taking right-steps as early as
/// possible is replayed; any admissible path would do, but the choice fixes
/// the output.
pub fn scrollarize_certified(
    t: &Tableau,
    k: i64,
) -> Result<(Tableau, Option<AdmissiblePath>), Error> {
    if !t.is_k_uniform(k) {
        return Err(Error::NotKUniform { k });
    }
    let (a, b) = (t.width(), t.height());
    if a + b <= k {
        return Ok((t.clone(), None));
    }
    let paths = admissible_paths(t, k)?;
    let path = paths
        .into_iter()
        .min_by(|p, q| {
            let ps = p.steps();
            let qs = q.steps();
            // Right before down: reversed Ord on the step enum.
            ps.iter()
                .zip(&qs)
                .map(|(x, y)| y.cmp(x))
                .find(|c| c.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .ok_or_else(|| Error::Internal("no admissible path found".into()))?;
    let alpha = path.path_type;
    let dy = k - alpha;

    // Replay: start from the corner subgrid [alpha] x [k-alpha] of t and
    // extend along the path one row or column at a time.
    let mut cur: Vec<Vec<i64>> = (1..=dy)
        .map(|y| (1..=alpha).map(|x| t.get(x, y)).collect())
        .collect();
    for w in path.boxes.windows(2) {
        let (px, _py) = w[0];
        let (x, y) = w[1];
        if x > px {
            // New column x on the current [x-1] x [y] grid: the top copies
            // the box alpha left and k-alpha down, the last k-alpha rows
            // keep the input's entries.
            let new_col: Vec<i64> = (1..=y)
                .map(|yy| {
                    if yy <= y - dy {
                        cur[(yy + dy - 1) as usize][(x - alpha - 1) as usize]
                    } else {
                        t.get(x, yy)
                    }
                })
                .collect();
            for (row, v) in cur.iter_mut().zip(new_col) {
                row.push(v);
            }
        } else {
            // New row y on the current [x] x [y-1] grid.
            let mut row = Vec::with_capacity(x as usize);
            for xx in 1..=x {
                row.push(if xx <= x - alpha {
                    cur[(y - dy - 1) as usize][(xx + alpha - 1) as usize]
                } else {
                    t.get(xx, y)
                });
            }
            cur.push(row);
        }
    }
    let out = Tableau::from_rows(t.alphabet(), cur)
        .map_err(|e| Error::Internal(format!("scrollarization produced {e}")))?;
    Ok((out, Some(path)))
}

/// `scrollarize_certified` without the path certificate.
pub fn scrollarize(t: &Tableau, k: i64) -> Result<Tableau, Error> {
    scrollarize_certified(t, k).map(|(t, _)| t)
}

#[cfg(test)]
mod tests {
    use super::*;

    // The working 5-uniform example on [4]x[4].
    fn fig6() -> Tableau {
        Tableau::from_rows(
            16,
            vec![
                vec![1, 2, 3, 9],
                vec![4, 6, 7, 10],
                vec![5, 8, 11, 13],
                vec![12, 14, 15, 16],
            ],
        )
        .unwrap()
    }

    #[test]
    fn stat_figure6_boxes() {
        let t = fig6();
        assert_eq!(stat(&t, 5, 4, 1).unwrap(), 4);
        assert_eq!(stat(&t, 5, 2, 3).unwrap(), 2);
        assert_eq!(stat(&t, 5, 4, 3).unwrap(), 2);
        assert_eq!(stat(&t, 5, 1, 4).unwrap(), 1);
        assert_eq!(stat(&t, 5, 3, 2).unwrap(), 3);
        assert_eq!(stat(&t, 5, 3, 4).unwrap(), 3);
        assert!(matches!(
            stat(&t, 5, 2, 2),
            Err(Error::Undefined { .. })
        ));
    }

    #[test]
    fn stat_grid_figure6() {
        let sg = stat_grid(&fig6(), 5).unwrap();
        let want = [
            ((4, 1), 4),
            ((3, 2), 3),
            ((4, 2), 3),
            ((2, 3), 2),
            ((3, 3), 3),
            ((4, 3), 2),
            ((1, 4), 1),
            ((2, 4), 2),
            ((3, 4), 3),
            ((4, 4), 3),
        ];
        let got: Vec<((i64, i64), i64)> =
            sg.defined().map(|(x, y, s)| ((x, y), s)).collect();
        assert_eq!(got.len(), 10);
        for (bx, s) in want {
            assert_eq!(sg.get(bx.0, bx.1), Some(s), "box {bx:?}");
        }
        assert_eq!(sg.get(1, 1), None);
        assert_eq!(sg.get(3, 1), None);
    }

    #[test]
    fn stat_corner_anchor() {
        // S_t(alpha, k-alpha) = alpha on any k-uniform tableau.
        let t = fig6();
        for alpha in 1..=4i64 {
            let (x, y) = (alpha, 5 - alpha);
            if x <= 4 && y <= 4 && y >= 1 {
                assert_eq!(stat(&t, 5, x, y).unwrap(), alpha);
            }
        }
    }

    #[test]
    fn paths_figure7() {
        let t = fig6();
        let paths = admissible_paths(&t, 5).unwrap();
        assert_eq!(paths.len(), 2);
        assert!(paths.iter().all(|p| p.path_type == 3));
        // Sorted D-before-R: the all-down-then-right path comes first.
        assert_eq!(paths[0].boxes, vec![(3, 2), (3, 3), (3, 4), (4, 4)]);
        assert_eq!(paths[1].boxes, vec![(3, 2), (3, 3), (4, 3), (4, 4)]);
    }

    #[test]
    fn trivial_path_when_grid_is_tight() {
        // a+b = k: the single box (a,b) is the whole path.
        let t = Tableau::from_rows(9, vec![vec![2, 4, 7], vec![3, 5, 8]]).unwrap();
        let paths = admissible_paths(&t, 5).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].boxes, vec![(3, 2)]);
        assert_eq!(paths[0].path_type, 3);
        assert!(matches!(
            admissible_paths(&t, 6),
            Err(Error::GridTooSmall { .. })
        ));
    }

    #[test]
    fn scrollarize_figure8() {
        let t = fig6();
        let (out, path) = scrollarize_certified(&t, 5).unwrap();
        assert_eq!(
            out.rows(),
            vec![
                vec![1, 2, 3, 5],
                vec![4, 6, 7, 10],
                vec![5, 8, 11, 13],
                vec![10, 14, 15, 16],
            ]
        );
        let path = path.unwrap();
        assert_eq!(path.path_type, 3);
        assert_eq!(path.boxes, vec![(3, 2), (3, 3), (4, 3), (4, 4)]);
        assert!(out.is_k_uniform(5));
        assert!(out.is_scrollar(5, 3).unwrap());
    }

    #[test]
    fn scrollarize_trivial_base() {
        let t = Tableau::from_rows(9, vec![vec![2, 4, 7], vec![3, 5, 8]]).unwrap();
        let (out, path) = scrollarize_certified(&t, 6).unwrap();
        assert_eq!(out, t);
        assert!(path.is_none());
    }

    #[test]
    fn path_serialization() {
        let p = AdmissiblePath {
            path_type: 3,
            boxes: vec![(3, 2), (3, 3), (4, 3), (4, 4)],
        };
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"type":3,"boxes":[[3,2],[3,3],[4,3],[4,4]]}"#
        );
    }
}
