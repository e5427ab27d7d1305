//! Splitting-type arithmetic.
//!
//! A splitting type is a nondecreasing integer vector `(mu_1, ..., mu_k)`,
//! i.e. a partition with possibly negative parts. This module provides the
//! dominance order at fixed entry sum, the magnitude statistic, twisted
//! section counts, the balanced types `mu_alpha` with exactly `alpha`
//! nonnegative entries, and the Brill-Noether numbers `rho` and `rho_k`.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A nondecreasing integer vector of length k >= 2.
///
/// Constructors sort, so a `SplittingType` is always in canonical
/// (nondecreasing) form. Serializes as a plain JSON array, e.g. `[-2,-2,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SplittingType {
    entries: Vec<i64>,
}

impl SplittingType {
    pub fn new(mut entries: Vec<i64>) -> Result<Self, Error> {
        if entries.len() < 2 {
            return Err(Error::InvalidParams(format!(
                "a splitting type needs at least 2 entries, got {}",
                entries.len()
            )));
        }
        entries.sort_unstable();
        Ok(SplittingType { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// The bundle rank k.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Number of nonnegative entries.
    pub fn nonnegative_count(&self) -> i64 {
        self.entries.iter().filter(|&&e| e >= 0).count() as i64
    }
}

impl TryFrom<Vec<i64>> for SplittingType {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self, Error> {
        SplittingType::new(v)
    }
}

impl From<SplittingType> for Vec<i64> {
    fn from(mu: SplittingType) -> Vec<i64> {
        mu.entries
    }
}

impl std::fmt::Display for SplittingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of a dominance comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Compare two splitting types in the dominance order.
///
/// `mu <= lam` iff every prefix sum of `mu` is at most the corresponding
/// prefix sum of `lam`. Only defined for equal lengths and equal entry sums.
pub fn compare_dominance(mu: &SplittingType, lam: &SplittingType) -> Result<Dominance, Error> {
    if mu.len() != lam.len() {
        return Err(Error::LengthMismatch {
            left: mu.len(),
            right: lam.len(),
        });
    }
    if mu.sum() != lam.sum() {
        return Err(Error::SumMismatch {
            left: mu.sum(),
            right: lam.sum(),
        });
    }
    let mut le = true;
    let mut ge = true;
    let mut pm = 0i64;
    let mut pl = 0i64;
    for (a, b) in mu.entries().iter().zip(lam.entries()) {
        pm += a;
        pl += b;
        if pm > pl {
            le = false;
        }
        if pm < pl {
            ge = false;
        }
    }
    Ok(match (le, ge) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Less,
        (false, true) => Dominance::Greater,
        (false, false) => Dominance::Incomparable,
    })
}

/// The magnitude `|mu| = sum_{i<j} max(0, mu_j - mu_i - 1)`, the expected
/// codimension of the splitting-type stratum.
pub fn magnitude(mu: &SplittingType) -> i64 {
    let e = mu.entries();
    let mut total = 0i64;
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            total += 0.max(e[j] - e[i] - 1);
        }
    }
    total
}

/// Global sections after twisting by m: `sum_i max(0, mu_i + m + 1)`.
pub fn h0_twist(mu: &SplittingType, m: i64) -> i64 {
    mu.entries().iter().map(|&e| 0.max(e + m + 1)).sum()
}

/// Degree of the line bundle with this pushforward: `g + k - 1 + sum(mu)`.
pub fn degree_of(mu: &SplittingType, g: i64) -> i64 {
    g + mu.len() as i64 - 1 + mu.sum()
}

/// The Brill-Noether number `rho(g,r,d) = g - (r+1)(g-d+r)`.
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

/// A problem instance: genus g, rank r, degree d, gonality k, with r > d - g.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct BNParams {
    g: i64,
    r: i64,
    d: i64,
    k: i64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    g: i64,
    r: i64,
    d: i64,
    k: i64,
}

impl TryFrom<RawParams> for BNParams {
    type Error = Error;
    fn try_from(p: RawParams) -> Result<Self, Error> {
        BNParams::new(p.g, p.r, p.d, p.k)
    }
}

impl From<BNParams> for RawParams {
    fn from(p: BNParams) -> RawParams {
        RawParams {
            g: p.g,
            r: p.r,
            d: p.d,
            k: p.k,
        }
    }
}

impl BNParams {
    pub fn new(g: i64, r: i64, d: i64, k: i64) -> Result<Self, Error> {
        if g < 1 {
            return Err(Error::InvalidParams(format!("genus g = {g} must be positive")));
        }
        if r < 0 {
            return Err(Error::InvalidParams(format!("rank r = {r} must be nonnegative")));
        }
        if d < 1 {
            return Err(Error::InvalidParams(format!("degree d = {d} must be positive")));
        }
        if k < 2 {
            return Err(Error::InvalidParams(format!("gonality k = {k} must be at least 2")));
        }
        if r <= d - g {
            return Err(Error::InvalidParams(format!(
                "need r > d - g, got r = {r}, d - g = {}",
                d - g
            )));
        }
        Ok(BNParams { g, r, d, k })
    }

    pub fn g(&self) -> i64 {
        self.g
    }
    pub fn r(&self) -> i64 {
        self.r
    }
    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn k(&self) -> i64 {
        self.k
    }

    /// Width of the tableau grid: r + 1 columns.
    pub fn grid_width(&self) -> i64 {
        self.r + 1
    }

    /// Height of the tableau grid: g - d + r rows (positive since r > d - g).
    pub fn grid_height(&self) -> i64 {
        self.g - self.d + self.r
    }

    /// Entry sum shared by all splitting types of this instance: d + 1 - g - k.
    pub fn target_sum(&self) -> i64 {
        self.d + 1 - self.g - self.k
    }

    /// Largest index for which `mu_alpha` is defined: min(r+1, k-1).
    pub fn alpha_max(&self) -> i64 {
        (self.r + 1).min(self.k - 1)
    }
}

impl std::fmt::Display for BNParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(g={}, r={}, d={}, k={})", self.g, self.r, self.d, self.k)
    }
}

/// An index 1 <= alpha <= min(r+1, k-1) for a fixed instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alpha(i64);

impl Alpha {
    pub fn new(params: &BNParams, value: i64) -> Result<Self, Error> {
        let max = params.alpha_max();
        if value < 1 || value > max {
            return Err(Error::InvalidAlpha {
                alpha: value,
                min: 1,
                max,
            });
        }
        Ok(Alpha(value))
    }

    pub fn get(&self) -> i64 {
        self.0
    }
}

/// The indices alpha for which `mu_alpha` is maximal: those in
/// `[1, min(r+1, k-1)]` with `alpha >= k - (g-d+r)` or `alpha = r+1`.
pub fn valid_alphas(params: &BNParams) -> Vec<Alpha> {
    let threshold = params.k - params.grid_height();
    (1..=params.alpha_max())
        .filter(|&a| a >= threshold || a == params.r + 1)
        .map(Alpha)
        .collect()
}

/// `rho_k(g,r,d) = max_alpha rho(g,alpha-1,d) - (r+1-alpha)k`, the maximum
/// taken over `valid_alphas` (excluded indices are dominated and do not
/// change the maximum).
pub fn rho_k(params: &BNParams) -> i64 {
    valid_alphas(params)
        .iter()
        .map(|a| expected_dim(params, *a))
        .max()
        .expect("valid_alphas is nonempty: alpha = min(r+1, k-1) always qualifies")
}

/// The most balanced splitting type with exactly `alpha` nonnegative entries.
///
/// With `r+1 = q*alpha + beta` and `g-d+r = q'(k-alpha) + beta'`, the entries
/// are `beta'` copies of `-q'-2`, then `k-alpha-beta'` copies of `-q'-1`,
/// then `alpha-beta` copies of `q-1`, then `beta` copies of `q`.
pub fn mu_alpha(params: &BNParams, alpha: Alpha) -> SplittingType {
    let a = alpha.get();
    let k = params.k;
    let (q, beta) = div_mod(params.r + 1, a);
    let (qp, betap) = div_mod(params.grid_height(), k - a);
    let mut entries = Vec::with_capacity(k as usize);
    for i in 1..=k {
        entries.push(if i <= betap {
            -qp - 2
        } else if i <= k - a {
            -qp - 1
        } else if i <= k - beta {
            q - 1
        } else {
            q
        });
    }
    SplittingType::new(entries).expect("k >= 2")
}

fn div_mod(n: i64, m: i64) -> (i64, i64) {
    debug_assert!(m > 0);
    (n.div_euclid(m), n.rem_euclid(m))
}

/// Expected dimension of the stratum: `g - |mu_alpha|`. Equals
/// `rho(g, alpha-1, d) - (r+1-alpha)k`.
pub fn expected_dim(params: &BNParams, alpha: Alpha) -> i64 {
    params.g - magnitude(&mu_alpha(params, alpha))
}

/// Repeatedly move a unit of degree from the largest ascent to just below
/// the smallest ascent until `sum_i max(0, mu_i + 1) = r + 1`.
///
/// Each move increases the type in dominance order and lowers the section
/// count by exactly one, so the result dominates the input.
pub fn balance_reduce(mu: &SplittingType, r: i64) -> Result<SplittingType, Error> {
    let target = r + 1;
    let mut h = h0_twist(mu, 0);
    if h < target {
        return Err(Error::AlreadyBelow { h, target });
    }
    let mut e = mu.entries().to_vec();
    while h > target {
        // j = smallest ascent, j' = largest ascent (1-based positions).
        let j = match (1..e.len()).find(|&i| e[i] > e[i - 1]) {
            Some(i) => i,
            None => {
                return Err(Error::Internal(
                    "section count exceeds target but the type is constant".into(),
                ))
            }
        };
        let jp = (1..e.len()).rfind(|&i| e[i] > e[i - 1]).unwrap();
        if j == jp && e[j] - e[j - 1] < 2 {
            return Err(Error::Internal(
                "single ascent of gap one: the reduction move does not apply".into(),
            ));
        }
        e[j - 1] += 1;
        e[jp] -= 1;
        let next = SplittingType::new(e)?;
        let hn = h0_twist(&next, 0);
        if hn != h - 1 {
            return Err(Error::Internal(format!(
                "reduction move changed the section count from {h} to {hn}"
            )));
        }
        h = hn;
        e = next.entries.clone();
        debug_assert!(e.windows(2).all(|w| w[0] <= w[1]));
    }
    SplittingType::new(e)
}

/// Enumerate every splitting type of length k with the given entry sum and
/// `sum_i max(0, mu_i + 1) = h0`, in lexicographic order.
///
/// The search box is finite: with the section count pinned, a type with `a`
/// nonnegative entries has nonnegative block summing to `h0 - a` and
/// negative block (entries <= -1) summing to `sum - (h0 - a)`.
pub fn enumerate_types_with_h0(k: i64, sum: i64, h0: i64) -> Vec<SplittingType> {
    let mut out = Vec::new();
    if h0 < 1 {
        return out;
    }
    for a in 1..=k.min(h0) {
        let nonneg_sum = h0 - a; // entries >= 0 summing to this
        if nonneg_sum < 0 {
            continue;
        }
        let neg_len = k - a;
        let neg_sum = sum - nonneg_sum;
        let negs: Vec<Vec<i64>> = if neg_len == 0 {
            if neg_sum == 0 {
                vec![vec![]]
            } else {
                continue;
            }
        } else {
            nondecreasing_with_max(neg_len, neg_sum, -1)
        };
        if negs.is_empty() {
            continue;
        }
        let nonnegs = nondecreasing_with_min(a, nonneg_sum, 0);
        for nv in &negs {
            for pv in &nonnegs {
                let mut e = nv.clone();
                e.extend_from_slice(pv);
                out.push(SplittingType::new(e).expect("k >= 2 in callers"));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Nondecreasing integer sequences of length `len`, each entry >= `min`,
/// with the given sum.
fn nondecreasing_with_min(len: i64, sum: i64, min: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len as usize);
    rec_min(len, sum, min, &mut cur, &mut out);
    out
}

fn rec_min(len: i64, sum: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if len == 0 {
        if sum == 0 {
            out.push(cur.clone());
        }
        return;
    }
    // Remaining entries are all >= v, so v can be at most sum/len.
    let mut v = lo;
    while v * len <= sum {
        cur.push(v);
        rec_min(len - 1, sum - v, v, cur, out);
        cur.pop();
        v += 1;
    }
}

/// Nondecreasing integer sequences of length `len`, each entry <= `max`,
/// with the given sum.
fn nondecreasing_with_max(len: i64, sum: i64, max: i64) -> Vec<Vec<i64>> {
    // Mirror: entries e_i <= max correspond to max - e_i >= 0 reversed.
    let mirrored = nondecreasing_with_min(len, max * len - sum, 0);
    mirrored
        .into_iter()
        .map(|v| v.into_iter().rev().map(|x| max - x).collect())
        .collect()
}

/// Decide maximality by brute force over the finite candidate box.
///
/// A type with section count above r+1 is dominated by its reduction, so it
/// is never maximal; at section count exactly r+1 we search the enumerated
/// fixed-sum candidates for a strictly dominating one.
pub fn is_maximal(mu: &SplittingType, params: &BNParams) -> Result<bool, Error> {
    if mu.len() as i64 != params.k {
        return Err(Error::LengthMismatch {
            left: mu.len(),
            right: params.k as usize,
        });
    }
    if mu.sum() != params.target_sum() {
        return Err(Error::PreconditionViolated(format!(
            "entry sum {} differs from d+1-g-k = {}",
            mu.sum(),
            params.target_sum()
        )));
    }
    let h = h0_twist(mu, 0);
    if h < params.r + 1 {
        return Err(Error::PreconditionViolated(format!(
            "section count {h} is below r+1 = {}",
            params.r + 1
        )));
    }
    if h > params.r + 1 {
        // balance_reduce yields a strictly dominating type of count r+1.
        return Ok(false);
    }
    for lam in enumerate_types_with_h0(params.k, params.target_sum(), params.r + 1) {
        if lam != *mu && compare_dominance(mu, &lam)? == Dominance::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All maximal splitting types: `mu_alpha` for alpha in `valid_alphas`,
/// sorted by alpha. Pairwise incomparable.
pub fn maximal_splitting_types(params: &BNParams) -> Vec<SplittingType> {
    valid_alphas(params)
        .into_iter()
        .map(|a| mu_alpha(params, a))
        .collect()
}
