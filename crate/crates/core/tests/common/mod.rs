//! Shared worked examples: the 7x5 scrollar pair, the 4x4 working tableau,
//! and the 3x2 trio.

use kgonal::{BNParams, Tableau};

/// Scrollar tableau of type 3 for k = 5 on [7]x[5], alphabet [26].
pub fn scroll_7x5() -> Tableau {
    Tableau::from_rows(
        26,
        vec![
            vec![1, 2, 4, 5, 10, 11, 12],
            vec![3, 7, 8, 9, 13, 16, 18],
            vec![5, 10, 11, 12, 15, 17, 20],
            vec![9, 13, 16, 18, 19, 22, 23],
            vec![12, 15, 17, 20, 21, 24, 26],
        ],
    )
    .unwrap()
}

/// Its rotation: 180 degrees then complement in g + 1 = 27.
pub fn scroll_7x5_rotated() -> Tableau {
    Tableau::from_rows(
        26,
        vec![
            vec![1, 3, 6, 7, 10, 12, 15],
            vec![4, 5, 8, 9, 11, 14, 18],
            vec![7, 10, 12, 15, 16, 17, 22],
            vec![9, 11, 14, 18, 19, 20, 24],
            vec![15, 16, 17, 22, 23, 25, 26],
        ],
    )
    .unwrap()
}

/// Scrollar tableau of type 3 for k = 5 with no vertical steps, on [7]x[5]
/// with alphabet [23] (tight: every symbol is used).
pub fn no_vertical_steps_7x5() -> Tableau {
    Tableau::from_rows(
        23,
        vec![
            vec![1, 2, 3, 7, 8, 9, 13],
            vec![4, 5, 6, 10, 11, 12, 16],
            vec![7, 8, 9, 13, 14, 15, 19],
            vec![10, 11, 12, 16, 17, 18, 22],
            vec![13, 14, 15, 19, 20, 21, 23],
        ],
    )
    .unwrap()
}

/// The 5-uniform working example on [4]x[4], alphabet [16].
pub fn working_4x4() -> Tableau {
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

/// Scrollarization of `working_4x4` along the right-early admissible path.
pub fn working_4x4_scrollarized() -> Tableau {
    Tableau::from_rows(
        16,
        vec![
            vec![1, 2, 3, 5],
            vec![4, 6, 7, 10],
            vec![5, 8, 11, 13],
            vec![10, 14, 15, 16],
        ],
    )
    .unwrap()
}

/// The 3-uniform trio on [3]x[2], alphabet [6]: scrollar of type 2,
/// scrollar of type 1, and not scrollar.
pub fn trio() -> (Tableau, Tableau, Tableau) {
    (
        Tableau::from_rows(6, vec![vec![1, 2, 4], vec![4, 5, 6]]).unwrap(),
        Tableau::from_rows(6, vec![vec![1, 3, 5], vec![2, 4, 6]]).unwrap(),
        Tableau::from_rows(6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap(),
    )
}

/// The instance whose grid is [3]x[2] with alphabet [6] and k = 3.
pub fn trio_params() -> BNParams {
    BNParams::new(6, 2, 6, 3).unwrap()
}
