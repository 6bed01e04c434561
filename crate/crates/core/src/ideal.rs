//! Torus-invariant ideals of `k[σ∨ ∩ Z^n]` as monomial ideals, with symbolic
//! powers, ordinary powers, and containment checks.
//!
//! A monomial ideal is an upward-closed subset of the semigroup `S`,
//! recorded by its minimal generators. The prime `P_ρ` of ray `u_ρ` has
//! divisorial valuation `m ↦ ⟨m, u_ρ⟩`, so the symbolic power
//! `(P_1^(b_1) ∩ … ∩ P_r^(b_r))^(E)` is the set of monomials with
//! `⟨m, u_i⟩ ≥ E·b_i` for every component.
//!
//! Generator search for threshold ideals. Write any `m ∈ S` uniquely as
//! `m = f + Σ k_j w_j` with `f` in the half-open fundamental parallelotope of
//! the dual rays `w_j` and `k_j ≥ 0`. If `⟨m, u_j⟩ ≥ T_j + c_j`, where
//! `c_j = ⟨w_j, u_j⟩`, then `m - w_j` still meets every threshold, so minimal
//! generators satisfy `T_j ≤ ⟨m, u_j⟩ < T_j + c_j` for every ray. Each `f`
//! yields exactly one lattice point in that window, so the candidate list has
//! one entry per fundamental point and is complete.

use alloc::vec::Vec;

use crate::class_group::DivisorClass;
use crate::cone::{LatticePoint, SemigroupData};
use crate::error::{Error, Result};

/// A monomial ideal of the semigroup ring, by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal<'s> {
    semigroup: &'s SemigroupData,
    generators: Vec<LatticePoint>,
}

impl<'s> MonomialIdeal<'s> {
    /// The ideal generated by `generators`, which must lie in the semigroup.
    pub fn from_generators(semigroup: &'s SemigroupData, generators: Vec<LatticePoint>) -> Result<Self> {
        for g in &generators {
            semigroup.check_dim(g)?;
            if !semigroup.contains(g) {
                return Err(Error::UnsupportedCone("generator lies outside the semigroup"));
            }
        }
        Ok(MonomialIdeal {
            semigroup,
            generators: minimalize(semigroup, generators),
        })
    }

    pub fn semigroup(&self) -> &'s SemigroupData {
        self.semigroup
    }

    /// Minimal generators, sorted lexicographically.
    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// `m ∈ I`, assuming matching dimension.
    pub fn contains(&self, m: &LatticePoint) -> bool {
        self.generators.iter().any(|g| {
            m.checked_sub(g)
                .is_ok_and(|d| self.semigroup.cone().dual_contains(&d))
        })
    }
}

/// `q = P_1^(b_1) ∩ … ∩ P_r^(b_r)` over the rays of the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureHeightOneIdeal<'s> {
    semigroup: &'s SemigroupData,
    components: Vec<(usize, u64)>,
}

impl<'s> PureHeightOneIdeal<'s> {
    /// Components are `(ray index, multiplicity)` pairs; they are stored
    /// sorted by ray.
    pub fn new(semigroup: &'s SemigroupData, mut components: Vec<(usize, u64)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidExponent("number of components"));
        }
        let rays = semigroup.cone().num_rays();
        components.sort();
        for (i, &(ray, b)) in components.iter().enumerate() {
            if ray >= rays {
                return Err(Error::InvalidRayIndex { index: ray, rays });
            }
            if b == 0 {
                return Err(Error::InvalidExponent("component multiplicity"));
            }
            if i > 0 && components[i - 1].0 == ray {
                return Err(Error::InvalidRayIndex { index: ray, rays });
            }
        }
        Ok(PureHeightOneIdeal {
            semigroup,
            components,
        })
    }

    /// The prime `P_ρ` itself.
    pub fn prime(semigroup: &'s SemigroupData, ray: usize) -> Result<Self> {
        Self::new(semigroup, vec![(ray, 1)])
    }

    pub fn semigroup(&self) -> &'s SemigroupData {
        self.semigroup
    }

    pub fn components(&self) -> &[(usize, u64)] {
        &self.components
    }

    /// `[q] = Σ b_i [P_i]` in the divisor group.
    pub fn divisor_class(&self) -> DivisorClass {
        let mut coefficients = vec![0i64; self.semigroup.cone().num_rays()];
        for &(ray, b) in &self.components {
            coefficients[ray] = i64::try_from(b).unwrap_or(i64::MAX);
        }
        DivisorClass::new(coefficients)
    }

    /// Valuation thresholds of `q^(E)`, one per ray (0 for unconstrained rays).
    fn thresholds(&self, e: u64) -> Result<Vec<i128>> {
        let mut t = vec![0i128; self.semigroup.cone().num_rays()];
        for &(ray, b) in &self.components {
            t[ray] = (e as i128).checked_mul(b as i128).ok_or(Error::Overflow)?;
        }
        Ok(t)
    }
}

/// Keep the elements not reachable from another element by a semigroup
/// translate. Output is sorted and deduplicated.
fn minimalize(s: &SemigroupData, mut gens: Vec<LatticePoint>) -> Vec<LatticePoint> {
    gens.sort();
    gens.dedup();
    let cone = s.cone();
    gens.iter()
        .filter(|g| {
            !gens.iter().any(|h| {
                h != *g && g.checked_sub(h).is_ok_and(|d| cone.dual_contains(&d))
            })
        })
        .cloned()
        .collect()
}

/// Minimal generators of `{m ∈ S : ⟨m, u_j⟩ ≥ thresholds[j] for all j}`.
fn threshold_generators(s: &SemigroupData, thresholds: &[i128]) -> Result<Vec<LatticePoint>> {
    let rays = s.cone().rays();
    let mut candidates = Vec::with_capacity(s.fundamental_points().len());
    for f in s.fundamental_points() {
        let mut m = f.clone();
        for (j, ((u, w), &c)) in rays.iter().zip(s.dual_rays()).zip(s.dual_heights()).enumerate() {
            let deficit = thresholds[j] - f.pairing(u);
            if deficit > 0 {
                let k = (deficit + c as i128 - 1) / c as i128;
                m = m.add_scaled(k, w)?;
            }
        }
        candidates.push(m);
    }
    Ok(minimalize(s, candidates))
}

/// The prime ideal of ray `ray`: Hilbert basis elements of positive
/// valuation, minimalized.
pub fn ray_prime(s: &SemigroupData, ray: usize) -> Result<MonomialIdeal<'_>> {
    let rays = s.cone().num_rays();
    if ray >= rays {
        return Err(Error::InvalidRayIndex { index: ray, rays });
    }
    let gens = s
        .hilbert_basis()
        .iter()
        .zip(s.pairing_table())
        .filter(|(_, pairings)| pairings[ray] >= 1)
        .map(|(h, _)| h.clone())
        .collect();
    Ok(MonomialIdeal {
        semigroup: s,
        generators: minimalize(s, gens),
    })
}

/// `q^(E) = P_1^(E·b_1) ∩ … ∩ P_r^(E·b_r)`, computed from valuation
/// thresholds.
pub fn symbolic_power<'s>(q: &PureHeightOneIdeal<'s>, e: u64) -> Result<MonomialIdeal<'s>> {
    if e == 0 {
        return Err(Error::InvalidExponent("symbolic power exponent"));
    }
    let gens = threshold_generators(q.semigroup, &q.thresholds(e)?)?;
    Ok(MonomialIdeal {
        semigroup: q.semigroup,
        generators: gens,
    })
}

/// `I^a`: minimal elements among `a`-fold sums of generators.
pub fn ordinary_power<'s>(ideal: &MonomialIdeal<'s>, a: u64) -> Result<MonomialIdeal<'s>> {
    if a == 0 {
        return Err(Error::InvalidExponent("ordinary power exponent"));
    }
    let mut power = ideal.clone();
    for _ in 1..a {
        power = product(&power, ideal)?;
    }
    Ok(power)
}

fn product<'s>(lhs: &MonomialIdeal<'s>, rhs: &MonomialIdeal<'s>) -> Result<MonomialIdeal<'s>> {
    let mut sums = Vec::with_capacity(lhs.generators.len() * rhs.generators.len());
    for g in &lhs.generators {
        for h in &rhs.generators {
            sums.push(g.checked_add(h)?);
        }
    }
    Ok(MonomialIdeal {
        semigroup: lhs.semigroup,
        generators: minimalize(lhs.semigroup, sums),
    })
}

/// Whether `m` lies in `I`, i.e. `m - g ∈ S` for some generator `g`.
pub fn ideal_member(m: &LatticePoint, ideal: &MonomialIdeal<'_>) -> Result<bool> {
    ideal.semigroup.check_dim(m)?;
    Ok(ideal.contains(m))
}

/// `I_1 ∩ … ∩ I_k`, computed from generators and membership only.
///
/// A minimal generator `m` of the intersection has `⟨m, u_j⟩ < c_j + M_j`
/// for every ray, where `M_j` bounds `⟨g, u_j⟩` over all generators `g` of
/// all the ideals: past that, `m - w_j` stays in every `I_k`. The window is
/// swept as `f + Σ k_j w_j` over fundamental points `f`.
pub fn intersect<'s>(ideals: &[&MonomialIdeal<'s>]) -> Result<MonomialIdeal<'s>> {
    let Some(first) = ideals.first() else {
        return Err(Error::InvalidExponent("number of ideals"));
    };
    let s = first.semigroup;
    if ideals.iter().any(|i| !core::ptr::eq(i.semigroup, s) && i.semigroup != s) {
        return Err(Error::ContextMismatch);
    }
    let rays = s.cone().rays();
    let n = rays.len();
    let max_pairing: Vec<i128> = (0..n)
        .map(|j| {
            ideals
                .iter()
                .flat_map(|i| &i.generators)
                .map(|g| g.pairing(&rays[j]))
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut candidates = Vec::new();
    for f in s.fundamental_points() {
        // k_j ranges over 0..=limit[j]
        let limits: Vec<i128> = (0..n)
            .map(|j| {
                let c = s.dual_heights()[j] as i128;
                (c + max_pairing[j] - 1 - f.pairing(&rays[j])).div_euclid(c)
            })
            .collect();
        if limits.iter().any(|&l| l < 0) {
            continue;
        }
        let mut ks = vec![0i128; n];
        'sweep: loop {
            let mut m = f.clone();
            for (k, w) in ks.iter().zip(s.dual_rays()) {
                m = m.add_scaled(*k, w)?;
            }
            if ideals.iter().all(|i| i.contains(&m)) {
                candidates.push(m);
            }
            let mut j = n;
            loop {
                if j == 0 {
                    break 'sweep;
                }
                j -= 1;
                if ks[j] < limits[j] {
                    ks[j] += 1;
                    continue 'sweep;
                }
                ks[j] = 0;
            }
        }
    }
    Ok(MonomialIdeal {
        semigroup: s,
        generators: minimalize(s, candidates),
    })
}

/// Exactly one minimal generator.
pub fn is_principal(ideal: &MonomialIdeal<'_>) -> bool {
    ideal.generators.len() == 1
}

/// Outcome of `q^(D·a) ⊆ q^a` at one level `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVerdict {
    pub a: u64,
    /// Minimal generators of `q^(D·a)`.
    pub symbolic_generators: Vec<LatticePoint>,
    pub ordinary_generator_count: usize,
    /// Generators of `q^(D·a)` outside `q^a`, sorted.
    pub counterexamples: Vec<LatticePoint>,
}

impl LevelVerdict {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentReport {
    pub multiplier: u64,
    pub levels: Vec<LevelVerdict>,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(LevelVerdict::passed)
    }

    /// Smallest failing level and its least counterexample.
    pub fn first_failure(&self) -> Option<(u64, &LatticePoint)> {
        self.levels
            .iter()
            .find_map(|l| l.counterexamples.first().map(|p| (l.a, p)))
    }
}

/// Check `q^(D·a) ⊆ q^a` for `a = 1..=a_max`.
///
/// Only generators of the symbolic power are tested: ideals are closed
/// under semigroup translation, so generator containment gives ideal
/// containment.
pub fn verify_containment(q: &PureHeightOneIdeal<'_>, d: u64, a_max: u64) -> Result<ContainmentReport> {
    let levels = containment_levels(q, d, a_max, false)?;
    Ok(ContainmentReport {
        multiplier: d,
        levels,
    })
}

fn containment_levels(
    q: &PureHeightOneIdeal<'_>,
    d: u64,
    a_max: u64,
    stop_at_failure: bool,
) -> Result<Vec<LevelVerdict>> {
    if d == 0 {
        return Err(Error::InvalidExponent("multiplier D"));
    }
    if a_max == 0 {
        return Err(Error::InvalidExponent("a_max"));
    }
    let base = symbolic_power(q, 1)?;
    let mut ordinary = base.clone();
    let mut levels = Vec::new();
    for a in 1..=a_max {
        if a > 1 {
            ordinary = product(&ordinary, &base)?;
        }
        let level = d.checked_mul(a).ok_or(Error::Overflow)?;
        let symbolic = symbolic_power(q, level)?;
        let counterexamples: Vec<LatticePoint> = symbolic
            .generators
            .iter()
            .filter(|g| !ordinary.contains(g))
            .cloned()
            .collect();
        let failed = !counterexamples.is_empty();
        levels.push(LevelVerdict {
            a,
            symbolic_generators: symbolic.generators,
            ordinary_generator_count: ordinary.generators.len(),
            counterexamples,
        });
        if failed && stop_at_failure {
            break;
        }
    }
    Ok(levels)
}

/// A level `a` and a monomial in `q^(D·a)` but not in `q^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessWitness {
    pub a: u64,
    pub point: LatticePoint,
}

/// The smallest `a ≤ a_max` at which `q^(D·a) ⊄ q^a`, with the least
/// offending generator. `None` only says no failure occurs up to `a_max`.
pub fn find_sharpness_witness(
    q: &PureHeightOneIdeal<'_>,
    d_candidate: u64,
    a_max: u64,
) -> Result<Option<SharpnessWitness>> {
    let levels = containment_levels(q, d_candidate, a_max, true)?;
    Ok(levels.into_iter().find_map(|l| {
        l.counterexamples.into_iter().next().map(|point| SharpnessWitness { a: l.a, point })
    }))
}
