//! Enumeration cross-checked against an independent filter-everything
//! oracle, on every small-grid instance of the default sweep.
//!
//! The oracle below generates all g^(a*b) fillings and filters them with
//! checks written from the definitions, without touching the library's
//! tableau type or enumerator internals.

use kgonal::*;

/// Raw validity: entries in [1, g], strictly increasing along rows and
/// columns.
fn oracle_valid(rows: &[Vec<i64>], g: i64) -> bool {
    let b = rows.len();
    let a = rows[0].len();
    for y in 0..b {
        for x in 0..a {
            let v = rows[y][x];
            if v < 1 || v > g {
                return false;
            }
            if x + 1 < a && rows[y][x + 1] <= v {
                return false;
            }
            if y + 1 < b && rows[y + 1][x] <= v {
                return false;
            }
        }
    }
    true
}

/// Raw congruence: every pair of equal symbols has equal x - y mod k.
fn oracle_uniform(rows: &[Vec<i64>], k: i64) -> bool {
    let b = rows.len();
    let a = rows[0].len();
    for y1 in 0..b {
        for x1 in 0..a {
            for y2 in 0..b {
                for x2 in 0..a {
                    if rows[y1][x1] == rows[y2][x2] {
                        let d1 = (x1 as i64 - y1 as i64).rem_euclid(k);
                        let d2 = (x2 as i64 - y2 as i64).rem_euclid(k);
                        if d1 != d2 {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Every filling of the a x b grid by symbols in [1, g], filtered.
fn oracle_enumerate(a: i64, b: i64, g: i64, k: i64) -> Vec<Vec<Vec<i64>>> {
    let n = (a * b) as usize;
    let mut out = Vec::new();
    let mut counter = vec![1i64; n];
    loop {
        let rows: Vec<Vec<i64>> = counter
            .chunks(a as usize)
            .map(|c| c.to_vec())
            .collect();
        if oracle_valid(&rows, g) && oracle_uniform(&rows, k) {
            out.push(rows);
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            counter[i] += 1;
            if counter[i] <= g {
                break;
            }
            counter[i] = 1;
            i += 1;
        }
    }
}

#[test]
fn enumerator_matches_oracle_on_small_grids() {
    let manifest = SweepManifest::default_sweep();
    let mut checked = 0;
    for p in &manifest.instances {
        if p.grid_width() * p.grid_height() > 4 {
            continue;
        }
        let got: Vec<Vec<Vec<i64>>> = enumerate_tableaux(p).map(|t| t.rows()).collect();
        let mut sorted = got.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), got.len(), "{p}: duplicates or disorder");
        let want = oracle_enumerate(p.grid_width(), p.grid_height(), p.g(), p.k());
        assert_eq!(sorted, want, "{p}");
        checked += 1;
    }
    assert!(checked > 50, "only {checked} instances had area <= 4");
}

#[test]
fn single_box_instances() {
    // One box: exactly g tableaux, each torus of dimension g - 1.
    let p = BNParams::new(5, 0, 4, 3).unwrap();
    assert_eq!((p.grid_width(), p.grid_height()), (1, 1));
    assert_eq!(enumerate_tableaux(&p).count(), 5);
    let tori = all_tori(&p).unwrap();
    assert_eq!(tori.len(), 5);
    assert!(tori.iter().all(|u| u.dimension() == 4));
    // Every single-box torus is maximal.
    assert_eq!(maximal_tori(&p).unwrap().len(), 5);
}

#[test]
fn torus_counts_are_stable() {
    // Frozen from the oracle pipeline. On the [2]x[2] grid with alphabet
    // [5] there are 10 tableaux (all injective, since the two possible
    // repeat boxes clash mod 3), all with distinct 4-symbol constraint
    // maps, so every torus is maximal.
    let p = BNParams::new(5, 1, 4, 3).unwrap();
    let tabs = enumerate_tableaux(&p).count();
    let tori = all_tori(&p).unwrap();
    let maxi = maximal_tori(&p).unwrap();
    assert_eq!(
        (tabs, tori.len(), maxi.len()),
        (10, 10, 10),
        "(5,1,4,3) enumeration profile changed"
    );

    // On [2]x[3] with alphabet [6]: 5 standard fillings plus 6 with the
    // single congruence-compatible repeat t(2,1) = t(1,3).
    let p = BNParams::new(6, 1, 4, 3).unwrap();
    let tabs = enumerate_tableaux(&p).count();
    let tori = all_tori(&p).unwrap();
    let maxi = maximal_tori(&p).unwrap();
    assert_eq!(
        (tabs, tori.len(), maxi.len()),
        (11, 10, 7),
        "(6,1,4,3) enumeration profile changed"
    );
}
