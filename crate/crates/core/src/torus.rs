//! Coordinate subtori of `Pic^d` of a k-gonal chain of loops.
//!
//! The chain enters only through its torsion profile (0 on the outer loops,
//! k on the middle ones) and the break-divisor coordinates `xi_j`. A
//! k-uniform displacement tableau t cuts out the torus
//! `T(t) = { D : xi_{t(x,y)}(D) = y - x (mod k) }`, so a torus is recorded
//! as its residue-constraint map on coordinates. Residues are normalized to
//! `[0, k)`, which makes torus equality a plain map comparison.

use std::collections::BTreeMap;

use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::splitting::BNParams;
use crate::tableau::Tableau;

/// Per-loop torsion orders: 0 for loops j < k or j > g-k+1, k otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionProfile {
    taus: Vec<i64>,
}

impl TorsionProfile {
    pub fn taus(&self) -> &[i64] {
        &self.taus
    }
}

/// The standing torsion profile of the k-gonal chain of g loops.
pub fn torsion_profile(g: i64, k: i64) -> Result<TorsionProfile, Error> {
    if g < 1 || k < 2 {
        return Err(Error::InvalidParams(format!(
            "need g >= 1 and k >= 2, got g = {g}, k = {k}"
        )));
    }
    let taus = (1..=g)
        .map(|i| if i < k || i > g - k + 1 { 0 } else { k })
        .collect();
    Ok(TorsionProfile { taus })
}

/// A coordinate subtorus of `Pic^d`, encoded as residue constraints
/// `symbol -> residue mod k` on the break-divisor coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorusClass {
    ambient: BNParams,
    constraints: BTreeMap<i64, i64>,
}

impl TorusClass {
    /// A torus with no constraints: all of `Pic^d`.
    pub fn unconstrained(ambient: BNParams) -> Self {
        TorusClass {
            ambient,
            constraints: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> &BNParams {
        &self.ambient
    }

    pub fn constraints(&self) -> &BTreeMap<i64, i64> {
        &self.constraints
    }

    /// `g` minus the number of constrained coordinates.
    pub fn dimension(&self) -> i64 {
        self.ambient.g() - self.constraints.len() as i64
    }
}

impl Serialize for TorusClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TorusClass", 3)?;
        st.serialize_field("constraints", &self.constraints)?;
        st.serialize_field("g", &self.ambient.g())?;
        st.serialize_field("k", &self.ambient.k())?;
        st.end()
    }
}

/// The torus cut out by a tableau: each symbol `j = t(x,y)` is constrained
/// to `xi_j = y - x (mod k)`, well defined by k-uniformity.
pub fn torus_of(t: &Tableau, params: &BNParams) -> Result<TorusClass, Error> {
    if t.width() != params.grid_width() || t.height() != params.grid_height() {
        return Err(Error::GridMismatch(format!(
            "tableau is {}x{}, instance wants {}x{}",
            t.width(),
            t.height(),
            params.grid_width(),
            params.grid_height()
        )));
    }
    if t.alphabet() != params.g() {
        return Err(Error::GridMismatch(format!(
            "tableau alphabet {} differs from g = {}",
            t.alphabet(),
            params.g()
        )));
    }
    let k = params.k();
    if !t.is_k_uniform(k) {
        return Err(Error::NotKUniform { k });
    }
    let mut constraints = BTreeMap::new();
    for y in 1..=t.height() {
        for x in 1..=t.width() {
            constraints.insert(t.get(x, y), (y - x).rem_euclid(k));
        }
    }
    Ok(TorusClass {
        ambient: *params,
        constraints,
    })
}

/// Whether `inner` is contained in `outer`: every constraint of `outer` is
/// also a constraint of `inner`, with the same residue. Both tori must live
/// in the same ambient `Pic^d`.
pub fn contains(inner: &TorusClass, outer: &TorusClass) -> bool {
    assert_eq!(
        inner.ambient, outer.ambient,
        "containment needs a common ambient instance"
    );
    outer
        .constraints
        .iter()
        .all(|(j, r)| inner.constraints.get(j) == Some(r))
}

/// Equality of constraint maps over the same ambient.
pub fn torus_equal(u: &TorusClass, v: &TorusClass) -> bool {
    u == v
}

/// Break-divisor coordinates of a divisor class of the stated degree.
/// Serializes with exact rational strings: `{"xi":["1/2","3"],"d":4}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorCoords {
    xi: Vec<Rational64>,
    degree: i64,
}

impl DivisorCoords {
    pub fn new(xi: Vec<Rational64>, degree: i64) -> Self {
        DivisorCoords { xi, degree }
    }

    pub fn xi(&self) -> &[Rational64] {
        &self.xi
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Coordinate of loop j (1-based).
    pub fn coord(&self, j: i64) -> Rational64 {
        self.xi[(j - 1) as usize]
    }
}

impl Serialize for DivisorCoords {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self
            .xi
            .iter()
            .map(|q| {
                if q.is_integer() {
                    q.to_integer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            })
            .collect();
        let mut st = s.serialize_struct("DivisorCoords", 2)?;
        st.serialize_field("xi", &strings)?;
        st.serialize_field("d", &self.degree)?;
        st.end()
    }
}

/// Whether the divisor class satisfies every residue constraint of the
/// torus: `xi_j - c` must be an integer multiple of k. The congruence is
/// applied uniformly, including coordinates on torsion-0 loops.
pub fn membership(div: &DivisorCoords, u: &TorusClass) -> Result<bool, Error> {
    if div.degree != u.ambient.d() {
        return Err(Error::DegreeMismatch {
            got: div.degree,
            want: u.ambient.d(),
        });
    }
    if div.xi.len() as i64 != u.ambient.g() {
        return Err(Error::GridMismatch(format!(
            "{} coordinates for genus {}",
            div.xi.len(),
            u.ambient.g()
        )));
    }
    let k = u.ambient.k();
    Ok(u.constraints.iter().all(|(&j, &c)| {
        let diff = div.coord(j) - Rational64::from_integer(c);
        diff.is_integer() && diff.to_integer().rem_euclid(k) == 0
    }))
}

/// A deterministic-in-seed divisor class in general position on the torus:
/// constrained coordinates take their exact residue, the rest take
/// non-integer rationals with denominator coprime to k, so the point misses
/// every coordinate subtorus that does not contain this one.
pub fn sample_general(u: &TorusClass, seed: u64) -> DivisorCoords {
    let k = u.ambient.k();
    let den = (2..).find(|q| num_integer::gcd(*q, k) == 1).unwrap();
    let mut rng = StdRng::seed_from_u64(seed);
    let xi = (1..=u.ambient.g())
        .map(|j| match u.constraints.get(&j) {
            Some(&c) => Rational64::from_integer(c),
            None => {
                let whole = rng.gen_range(0..k);
                let frac = rng.gen_range(1..den);
                Rational64::new(whole * den + frac, den)
            }
        })
        .collect();
    DivisorCoords::new(xi, u.ambient.d())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::Tableau;

    fn trigonal() -> BNParams {
        BNParams::new(5, 1, 4, 3).unwrap()
    }

    // The 3x2 Figure-5 tableaux with alphabet [6] live on the instance
    // (g,r,d,k) = (6,2,6,3), whose grid is [3]x[2].
    fn fig5_params() -> BNParams {
        BNParams::new(6, 2, 6, 3).unwrap()
    }
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
    fn torsion_profiles() {
        assert_eq!(torsion_profile(6, 3).unwrap().taus(), &[0, 0, 3, 3, 0, 0]);
        assert_eq!(torsion_profile(2, 4).unwrap().taus(), &[0, 0]);
        assert_eq!(
            torsion_profile(8, 3).unwrap().taus(),
            &[0, 0, 3, 3, 3, 3, 0, 0]
        );
    }

    #[test]
    fn torus_of_figure5() {
        let p = fig5_params();
        let u = torus_of(&fig5_t(), &p).unwrap();
        let want: BTreeMap<i64, i64> =
            [(1, 0), (2, 2), (4, 1), (5, 0), (6, 2)].into_iter().collect();
        assert_eq!(u.constraints(), &want);
        assert_eq!(u.dimension(), 1);
    }

    #[test]
    fn torus_of_checks_preconditions() {
        let p = trigonal();
        assert!(matches!(
            torus_of(&fig5_t(), &p),
            Err(Error::GridMismatch(_))
        ));
        let bad = Tableau::from_rows(6, vec![vec![1, 2, 4], vec![4, 5, 6]]).unwrap();
        assert!(matches!(
            torus_of(&bad, &BNParams::new(6, 2, 6, 2).unwrap()),
            Err(Error::NotKUniform { .. })
        ));
    }

    #[test]
    fn containment_figure5() {
        let p = fig5_params();
        let t = torus_of(&fig5_t(), &p).unwrap();
        let tp = torus_of(&fig5_tp(), &p).unwrap();
        let ts = torus_of(&fig5_ts(), &p).unwrap();
        assert!(contains(&ts, &t)); // T(t*) inside T(t)
        assert!(contains(&ts, &ts));
        assert!(!contains(&tp, &t)); // symbol 4: residue 1 in t, 0 in t'
        assert!(!contains(&t, &ts));
    }

    #[test]
    fn single_box_torus() {
        let p = BNParams::new(4, 0, 3, 2).unwrap(); // grid [1]x[1]
        let t = Tableau::from_rows(4, vec![vec![3]]).unwrap();
        let u = torus_of(&t, &p).unwrap();
        assert_eq!(u.constraints().len(), 1);
        assert_eq!(u.constraints()[&3], 0);
        assert_eq!(u.dimension(), 3);
        assert_eq!(TorusClass::unconstrained(p).dimension(), 4);
    }

    #[test]
    fn membership_and_sampling() {
        let p = fig5_params();
        let t = torus_of(&fig5_t(), &p).unwrap();
        let ts = torus_of(&fig5_ts(), &p).unwrap();
        let d = sample_general(&t, 17);
        assert_eq!(sample_general(&t, 17), d);
        assert_ne!(sample_general(&t, 18), d);
        assert!(membership(&d, &t).unwrap());

        // A divisor on T(t*) lies on T(t) as well.
        let ds = sample_general(&ts, 3);
        assert!(membership(&ds, &ts).unwrap());
        assert!(membership(&ds, &t).unwrap());

        // Perturbing one constrained coordinate off the lattice breaks it.
        let mut xi = d.xi().to_vec();
        xi[0] += Rational64::new(1, 2);
        let bad = DivisorCoords::new(xi, d.degree());
        assert!(!membership(&bad, &t).unwrap());

        // Residue shifted by a full multiple of k still satisfies it.
        let mut xi = d.xi().to_vec();
        xi[0] += Rational64::from_integer(2 * p.k());
        let shifted = DivisorCoords::new(xi, d.degree());
        assert!(membership(&shifted, &t).unwrap());

        assert!(matches!(
            membership(&DivisorCoords::new(d.xi().to_vec(), 9), &t),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn serialization_shapes() {
        let p = fig5_params();
        let u = torus_of(&fig5_ts(), &p).unwrap();
        let v: serde_json::Value = serde_json::to_value(&u).unwrap();
        assert_eq!(v["g"], 6);
        assert_eq!(v["k"], 3);
        assert_eq!(v["constraints"]["4"], 1);

        let d = DivisorCoords::new(
            vec![Rational64::new(1, 2), Rational64::from_integer(3)],
            4,
        );
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"xi":["1/2","3"],"d":4}"#
        );
    }
}
