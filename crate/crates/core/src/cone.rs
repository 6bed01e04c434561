//! Rational polyhedral cones, their duals, and the Hilbert basis of the dual
//! semigroup `σ∨ ∩ Z^n`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{adjugate, determinant, IntegerMatrix};
use crate::util::{combinations, gcd_i64};

/// Largest accepted ray coordinate magnitude.
pub const MAX_COORDINATE: i64 = 1 << 31;

/// Upper bound on lattice points visited by a single box enumeration.
pub const ENUMERATION_LIMIT: u128 = 1 << 24;

/// An integer vector: a ray generator, or the exponent `m` of a character
/// `χ^m`. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Dot product, accumulated in 128 bits.
    pub fn pairing(&self, other: &LatticePoint) -> i128 {
        pairing(&self.0, &other.0)
    }

    pub fn checked_add(&self, other: &LatticePoint) -> Result<LatticePoint> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(LatticePoint)
    }

    pub fn checked_sub(&self, other: &LatticePoint) -> Result<LatticePoint> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()
            .map(LatticePoint)
    }

    /// `self + k·other`, checked.
    pub fn add_scaled(&self, k: i128, other: &LatticePoint) -> Result<LatticePoint> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                let v = a as i128 + k.checked_mul(b as i128).ok_or(Error::Overflow)?;
                i64::try_from(v).map_err(|_| Error::Overflow)
            })
            .collect::<Result<_>>()
            .map(LatticePoint)
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(v: &[i64]) -> Self {
        LatticePoint(v.to_vec())
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

fn pairing(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Divide out the gcd of the coordinates.
pub fn primitive(v: &[i64]) -> Result<LatticePoint> {
    let g = v.iter().fold(0, |g, &x| gcd_i64(g, x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(LatticePoint(v.iter().map(|&x| x / g).collect()))
}

/// A strongly convex rational polyhedral cone given by primitive ray
/// generators in canonical (lexicographic) order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<LatticePoint>,
    simplicial: bool,
    full: bool,
}

impl Cone {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// The matrix whose `i`-th row is the `i`-th ray.
    pub fn ray_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(&self.rays.iter().map(|r| r.0.clone()).collect::<Vec<_>>())
            .unwrap_or_else(|_| IntegerMatrix::zeros(0, self.dim))
    }

    /// Whether `m` lies in the dual cone: `⟨m, u⟩ ≥ 0` for every ray `u`.
    pub fn dual_contains(&self, m: &LatticePoint) -> bool {
        self.rays.iter().all(|u| m.pairing(u) >= 0)
    }

    fn require_simplicial_full(&self) -> Result<()> {
        if !self.full {
            return Err(Error::UnsupportedCone("cone is not full-dimensional"));
        }
        if !self.simplicial {
            return Err(Error::UnsupportedCone("cone is not simplicial"));
        }
        Ok(())
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{:?}", self.rays)
    }
}

/// Validate and canonicalize a list of ray vectors in `Z^dim`.
///
/// Rays are primitivized, duplicate directions are collapsed, and the
/// result is sorted lexicographically.
pub fn make_cone<R: AsRef<[i64]>>(rays: &[R], dim: usize) -> Result<Cone> {
    let mut prim = Vec::with_capacity(rays.len());
    for (i, r) in rays.iter().enumerate() {
        let r = r.as_ref();
        if r.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.len(),
            });
        }
        if let Some(&value) = r.iter().find(|x| x.unsigned_abs() > MAX_COORDINATE as u64) {
            return Err(Error::CoordinateOutOfRange { ray: i, value });
        }
        prim.push(primitive(r)?);
    }
    prim.sort();
    prim.dedup();

    let matrix = IntegerMatrix::from_rows(&prim.iter().map(|r| r.0.clone()).collect::<Vec<_>>())?;
    let rank = if prim.is_empty() { 0 } else { matrix.rank() };
    let simplicial = rank == prim.len();
    if !simplicial {
        if let Some(ray) = opposite_ray(&prim) {
            return Err(Error::NotStronglyConvex { ray });
        }
    }
    Ok(Cone {
        dim,
        rays: prim,
        simplicial,
        full: rank == dim,
    })
}

/// Index of a ray `v_i` with `-v_i ∈ cone(v_j : j ≠ i)`, if one exists.
///
/// A cone contains a line iff some nonzero nonnegative combination of rays
/// vanishes. The support of an extreme such combination is a circuit, and
/// removing any element of a circuit leaves an independent set, so it is
/// enough to test `-v_i` against linearly independent subsets of the other
/// rays, solving each system exactly by Cramer's rule.
fn opposite_ray(rays: &[LatticePoint]) -> Option<usize> {
    let dim = rays.first()?.dim();
    for (i, target) in rays.iter().enumerate() {
        let others: Vec<usize> = (0..rays.len()).filter(|&j| j != i).collect();
        for k in 1..=dim.min(others.len()) {
            for subset in combinations(others.len(), k) {
                let cols: Vec<&LatticePoint> = subset.iter().map(|&s| &rays[others[s]]).collect();
                if in_independent_cone(&cols, target, dim) {
                    return Some(i);
                }
            }
        }
    }
    None
}

/// Whether `-target` is a nonnegative combination of the given vectors,
/// provided they are linearly independent (otherwise false).
fn in_independent_cone(cols: &[&LatticePoint], target: &LatticePoint, dim: usize) -> bool {
    let k = cols.len();
    for row_set in combinations(dim, k) {
        let square = |replace: Option<usize>| {
            let mut entries = Vec::with_capacity(k * k);
            for &r in &row_set {
                for (c, col) in cols.iter().enumerate() {
                    let x = if replace == Some(c) { -target.0[r] } else { col.0[r] };
                    entries.push(BigInt::from(x));
                }
            }
            IntegerMatrix::new(k, k, entries).expect("square shape")
        };
        let det = determinant(&square(None)).expect("square");
        if det.is_zero() {
            continue;
        }
        let numerators: Vec<BigInt> = (0..k)
            .map(|c| determinant(&square(Some(c))).expect("square"))
            .collect();
        if numerators.iter().any(|x| x.is_negative() != det.is_negative() && !x.is_zero()) {
            return false;
        }
        // x_c = numerators[c] / det; check the remaining coordinates too
        return (0..dim).all(|r| {
            let lhs: BigInt = cols
                .iter()
                .zip(&numerators)
                .map(|(col, x)| BigInt::from(col.0[r]) * x)
                .sum();
            lhs == -BigInt::from(target.0[r]) * &det
        });
    }
    false
}

/// Dual rays paired with the rays of a simplicial full cone: `duals[i]`
/// vanishes on every ray except ray `i`, where it pairs positively.
fn paired_dual_rays(c: &Cone) -> Result<Vec<LatticePoint>> {
    c.require_simplicial_full()?;
    let a = c.ray_matrix();
    let det = determinant(&a)?;
    let adj = adjugate(&a)?;
    let flip = det.is_negative();
    (0..c.dim)
        .map(|j| {
            let col: Vec<i64> = (0..c.dim)
                .map(|i| {
                    let x = if flip { -adj[(i, j)].clone() } else { adj[(i, j)].clone() };
                    x.to_i64().ok_or(Error::Overflow)
                })
                .collect::<Result<_>>()?;
            primitive(&col)
        })
        .collect()
}

/// The dual cone `σ∨` of a simplicial full cone.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    let duals = paired_dual_rays(c)?;
    let mut rays = duals;
    rays.sort();
    Ok(Cone {
        dim: c.dim,
        rays,
        simplicial: true,
        full: true,
    })
}

/// The semigroup `σ∨ ∩ Z^n` of a simplicial full cone, presented by its
/// Hilbert basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupData {
    cone: Cone,
    dual_rays: Vec<LatticePoint>,
    dual_heights: Vec<i64>,
    fundamental_points: Vec<LatticePoint>,
    hilbert_basis: Vec<LatticePoint>,
    pairing_table: Vec<Vec<i64>>,
}

impl SemigroupData {
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn dim(&self) -> usize {
        self.cone.dim
    }

    /// Primitive generators of `σ∨`, in ray order: `dual_rays()[i]` pairs
    /// to zero with every ray of `σ` except ray `i`.
    pub fn dual_rays(&self) -> &[LatticePoint] {
        &self.dual_rays
    }

    /// `⟨dual_rays()[i], rays()[i]⟩`, always positive.
    pub fn dual_heights(&self) -> &[i64] {
        &self.dual_heights
    }

    /// Lattice points of the half-open parallelotope
    /// `{Σ t_i w_i : 0 ≤ t_i < 1}` on the dual rays, sorted. Always contains 0.
    pub fn fundamental_points(&self) -> &[LatticePoint] {
        &self.fundamental_points
    }

    /// Sorted Hilbert basis.
    pub fn hilbert_basis(&self) -> &[LatticePoint] {
        &self.hilbert_basis
    }

    /// `pairing_table()[h][ρ] = ⟨hilbert_basis()[h], rays()[ρ]⟩`.
    pub fn pairing_table(&self) -> &[Vec<i64>] {
        &self.pairing_table
    }

    /// Whether `m ∈ σ∨ ∩ Z^n`.
    pub fn contains(&self, m: &LatticePoint) -> bool {
        m.dim() == self.dim() && self.cone.dual_contains(m)
    }

    /// Valuation of `χ^m` along the prime divisor of ray `ray`.
    pub fn valuation(&self, m: &LatticePoint, ray: usize) -> i128 {
        m.pairing(&self.cone.rays[ray])
    }

    pub(crate) fn check_dim(&self, m: &LatticePoint) -> Result<()> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.dim(),
            });
        }
        Ok(())
    }
}

/// Hilbert basis of `σ∨ ∩ Z^n` for a simplicial full cone `σ`.
///
/// Candidates are the lattice points of the half-open fundamental
/// parallelotope of the dual rays together with the dual rays themselves;
/// the irreducible ones form the basis.
pub fn hilbert_basis(c: &Cone) -> Result<SemigroupData> {
    let dual_rays = paired_dual_rays(c)?;
    let dual_heights: Vec<i64> = dual_rays
        .iter()
        .zip(&c.rays)
        .map(|(w, u)| i64::try_from(w.pairing(u)).map_err(|_| Error::Overflow))
        .collect::<Result<_>>()?;

    let fundamental_points = enumerate_parallelotope(c, &dual_rays, &dual_heights)?;

    let mut candidates: Vec<LatticePoint> = fundamental_points
        .iter()
        .filter(|p| !p.is_zero())
        .cloned()
        .chain(dual_rays.iter().cloned())
        .collect();
    candidates.sort();
    candidates.dedup();

    let hilbert_basis: Vec<LatticePoint> = candidates
        .iter()
        .filter(|h| {
            !candidates.iter().any(|g| {
                g != *h && h.checked_sub(g).is_ok_and(|d| c.dual_contains(&d))
            })
        })
        .cloned()
        .collect();

    let pairing_table = hilbert_basis
        .iter()
        .map(|h| {
            c.rays
                .iter()
                .map(|u| i64::try_from(h.pairing(u)).map_err(|_| Error::Overflow))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    Ok(SemigroupData {
        cone: c.clone(),
        dual_rays,
        dual_heights,
        fundamental_points,
        hilbert_basis,
        pairing_table,
    })
}

/// Lattice points `m` with `0 ≤ ⟨m, u_i⟩ < h_i` for every ray `u_i`, found by
/// scanning the integer bounding box of the parallelotope's vertices.
fn enumerate_parallelotope(
    c: &Cone,
    dual_rays: &[LatticePoint],
    heights: &[i64],
) -> Result<Vec<LatticePoint>> {
    let n = c.dim;
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for w in dual_rays {
        for k in 0..n {
            let x = w.0[k];
            if x < 0 {
                lo[k] = lo[k].checked_add(x).ok_or(Error::Overflow)?;
            } else {
                hi[k] = hi[k].checked_add(x).ok_or(Error::Overflow)?;
            }
        }
    }
    let volume = lo
        .iter()
        .zip(&hi)
        .try_fold(1u128, |acc, (&l, &h)| acc.checked_mul((h as i128 - l as i128 + 1) as u128))
        .unwrap_or(u128::MAX);
    if volume > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            points: volume,
            limit: ENUMERATION_LIMIT,
        });
    }

    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let inside = c
            .rays
            .iter()
            .zip(heights)
            .all(|(u, &h)| (0..h as i128).contains(&pairing(&cur, &u.0)));
        if inside {
            out.push(LatticePoint(cur.clone()));
        }
        // odometer, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return Ok(out);
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
        }
    }
}

/// Write `m` as a nonnegative integer combination of the Hilbert basis.
///
/// Returns the coefficient vector aligned with
/// [`SemigroupData::hilbert_basis`], or `None` if `m ∉ σ∨ ∩ Z^n`.
pub fn semigroup_member(m: &LatticePoint, s: &SemigroupData) -> Result<Option<Vec<u64>>> {
    s.check_dim(m)?;
    if !s.contains(m) {
        return Ok(None);
    }
    let mut coeffs = vec![0u64; s.hilbert_basis.len()];
    Ok(decompose(m, s, &mut coeffs)?.then_some(coeffs))
}

/// Depth-first search over the Hilbert basis in lexicographic order, pruned
/// as soon as a remainder pairs negatively with some ray.
fn decompose(m: &LatticePoint, s: &SemigroupData, coeffs: &mut [u64]) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    for (i, h) in s.hilbert_basis.iter().enumerate() {
        let rest = m.checked_sub(h)?;
        if !s.cone.dual_contains(&rest) {
            continue;
        }
        coeffs[i] += 1;
        if decompose(&rest, s, coeffs)? {
            return Ok(true);
        }
        coeffs[i] -= 1;
    }
    Ok(false)
}
