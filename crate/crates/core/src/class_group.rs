//! The class group `Cl(U_σ)` as the cokernel of `φ: Z^n → Z^r`,
//! `m ↦ (⟨m, u_ρ⟩)_ρ`, together with orders and exponents.
//!
//! Convention: with `A` the `r×n` ray matrix, `φ(m) = A·m` and
//! `Cl = Z^r / A·Z^n`. If `U·A·V = S` is the Smith form, `d ↦ U·d` carries the
//! image of `φ` onto `S·Z^n`, so the class of `d` is read off as the residues
//! of `U·d` modulo the invariant factors plus the coordinates past the rank.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::linalg::{determinant, smith_normal_form, IntegerMatrix};

/// Cardinality of a group or order of an element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupOrder {
    Finite(BigUint),
    Infinite,
}

impl GroupOrder {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl From<u64> for GroupOrder {
    fn from(n: u64) -> Self {
        GroupOrder::Finite(BigUint::from(n))
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// Change of coordinates from ray coefficients to canonical class
/// coordinates: one row of `U` per nontrivial factor and per free summand.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Projection {
    generators: usize,
    torsion_rows: Vec<Vec<BigInt>>,
    free_rows: Vec<Vec<BigInt>>,
}

/// A finitely generated abelian group `Z/s_1 ⊕ … ⊕ Z/s_k ⊕ Z^f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    invariant_factors: Vec<BigUint>,
    free_rank: usize,
    projection: Option<Projection>,
}

impl AbelianGroupPresentation {
    /// Group with the given invariant factors (divisibility order, factors
    /// of 1 dropped) and free rank, without a ray-coordinate projection.
    pub fn from_invariants(factors: &[u64], free_rank: usize) -> Self {
        let mut invariant_factors: Vec<BigUint> =
            factors.iter().filter(|&&s| s != 1).map(|&s| BigUint::from(s)).collect();
        invariant_factors.sort();
        AbelianGroupPresentation {
            invariant_factors,
            free_rank,
            projection: None,
        }
    }

    pub fn trivial() -> Self {
        Self::from_invariants(&[], 0)
    }

    /// Invariant factors `≥ 2`, each dividing the next.
    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() + self.free_rank <= 1
    }

    /// Number of ray coefficients a [`DivisorClass`] must carry, if this
    /// presentation came from a cone.
    pub fn num_generators(&self) -> Option<usize> {
        self.projection.as_ref().map(|p| p.generators)
    }
}

impl fmt::Display for AbelianGroupPresentation {
    /// `0`, `Z/4`, `(Z/2)^2`, `Z/2 x Z/4`, `Z`, `Z/3 x Z^2`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let s = &self.invariant_factors[i];
            let run = self.invariant_factors[i..].iter().take_while(|t| *t == s).count();
            parts.push(if run == 1 {
                format!("Z/{s}")
            } else {
                format!("(Z/{s})^{run}")
            });
            i += run;
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" x "))
    }
}

/// Element `b_1[P_1] + … + b_r[P_r]` of the free group on the torus-invariant
/// prime divisors, indexed by the cone's rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub coefficients: Vec<i64>,
}

impl DivisorClass {
    pub fn new(coefficients: Vec<i64>) -> Self {
        DivisorClass { coefficients }
    }

    /// The divisor `[P_ray]`.
    pub fn prime(num_rays: usize, ray: usize) -> Self {
        let mut coefficients = vec![0; num_rays];
        coefficients[ray] = 1;
        DivisorClass { coefficients }
    }
}

/// Canonical coordinates of a class: residues in `[0, s_i)` for each
/// invariant factor, then signed free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassResidue {
    pub torsion: Vec<BigUint>,
    pub free: Vec<BigInt>,
}

impl ClassResidue {
    pub fn is_identity(&self) -> bool {
        self.torsion.iter().all(Zero::is_zero) && self.free.iter().all(Zero::is_zero)
    }
}

/// The `r×n` matrix of `φ`: row `i` is the `i`-th ray generator.
pub fn presentation_matrix(c: &Cone) -> Result<IntegerMatrix> {
    if !c.is_full() {
        return Err(Error::UnsupportedCone(
            "class group presentation needs rays spanning the ambient space",
        ));
    }
    Ok(c.ray_matrix())
}

/// `Cl(U_σ) = coker(φ)` for a full cone.
pub fn class_group_of(c: &Cone) -> Result<AbelianGroupPresentation> {
    let a = presentation_matrix(c)?;
    let snf = smith_normal_form(&a);
    let rank = snf.rank();
    let r = a.nrows();

    let mut invariant_factors = Vec::new();
    let mut torsion_rows = Vec::new();
    for (i, s) in snf.invariant_factors.iter().take(rank).enumerate() {
        if s.is_one() {
            continue;
        }
        invariant_factors.push(s.magnitude().clone());
        torsion_rows.push(snf.u.row(i).to_vec());
    }
    let free_rows: Vec<Vec<BigInt>> = (rank..r).map(|i| snf.u.row(i).to_vec()).collect();
    Ok(AbelianGroupPresentation {
        invariant_factors,
        free_rank: r - rank,
        projection: Some(Projection {
            generators: r,
            torsion_rows,
            free_rows,
        }),
    })
}

/// Product of the invariant factors, or infinite when the free rank is
/// positive.
pub fn group_order(g: &AbelianGroupPresentation) -> GroupOrder {
    if !g.is_finite() {
        return GroupOrder::Infinite;
    }
    GroupOrder::Finite(g.invariant_factors.iter().product())
}

/// Least `D ≥ 1` with `D·Cl = 0`: the last invariant factor, or infinite.
pub fn group_exponent(g: &AbelianGroupPresentation) -> GroupOrder {
    if !g.is_finite() {
        return GroupOrder::Infinite;
    }
    GroupOrder::Finite(
        g.invariant_factors
            .iter()
            .fold(BigUint::one(), |acc, s| acc.lcm(s)),
    )
}

/// `|det(A_G)|` for a simplicial full cone, checked against the order of the
/// class group computed through the Smith form.
pub fn det_multiplier(c: &Cone) -> Result<BigUint> {
    if !c.is_simplicial() || !c.is_full() {
        return Err(Error::UnsupportedCone(
            "determinant multiplier needs a simplicial full cone",
        ));
    }
    let det = determinant(&c.ray_matrix())?.magnitude().clone();
    let order = group_order(&class_group_of(c)?);
    assert_eq!(
        order,
        GroupOrder::Finite(det.clone()),
        "class group order disagrees with |det| for {c:?}"
    );
    Ok(det)
}

/// Image of `d` in the cokernel, in canonical coordinates.
pub fn class_of(d: &DivisorClass, g: &AbelianGroupPresentation) -> Result<ClassResidue> {
    let Some(p) = &g.projection else {
        return Err(Error::UnsupportedCone(
            "group presentation carries no ray coordinates",
        ));
    };
    let expected = g.num_generators().unwrap_or(0);
    if d.coefficients.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: d.coefficients.len(),
        });
    }
    let coeffs: Vec<BigInt> = d.coefficients.iter().map(|&x| BigInt::from(x)).collect();
    let dot = |row: &[BigInt]| -> BigInt { row.iter().zip(&coeffs).map(|(a, b)| a * b).sum() };

    let torsion = p
        .torsion_rows
        .iter()
        .zip(&g.invariant_factors)
        .map(|(row, s)| {
            let s = BigInt::from_biguint(Sign::Plus, s.clone());
            dot(row).mod_floor(&s).magnitude().clone()
        })
        .collect();
    let free = p.free_rows.iter().map(|row| dot(row)).collect();
    Ok(ClassResidue { torsion, free })
}

/// Least `D ≥ 1` with `D·[d] = 0`, or infinite when `[d]` has a nonzero free
/// coordinate. On torsion coordinate `y mod s` the order is `s / gcd(y, s)`.
pub fn order_of_class(d: &DivisorClass, g: &AbelianGroupPresentation) -> Result<GroupOrder> {
    let residue = class_of(d, g)?;
    if residue.free.iter().any(|x| !x.is_zero()) {
        return Ok(GroupOrder::Infinite);
    }
    let order = residue
        .torsion
        .iter()
        .zip(&g.invariant_factors)
        .fold(BigUint::one(), |acc, (y, s)| acc.lcm(&(s / y.gcd(s))));
    Ok(GroupOrder::Finite(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::prelude::rust_2021::*;
    use crate::cone::make_cone;

    fn factors(g: &AbelianGroupPresentation) -> Vec<u64> {
        g.invariant_factors()
            .iter()
            .map(|s| u64::try_from(s).unwrap())
            .collect()
    }

    fn a1() -> Cone {
        make_cone(&[[1, 0], [1, 2]], 2).unwrap()
    }

    fn square() -> Cone {
        make_cone(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]], 3).unwrap()
    }

    /// Independent image test: is `d = A·m` for some small integer `m`?
    fn in_image_brute(c: &Cone, d: &[i64], radius: i64) -> bool {
        let n = c.dim();
        let mut m = vec![-radius; n];
        loop {
            if c
                .rays()
                .iter()
                .zip(d)
                .all(|(u, &di)| u.coords().iter().zip(&m).map(|(a, b)| a * b).sum::<i64>() == di)
            {
                return true;
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return false;
                }
                k -= 1;
                if m[k] < radius {
                    m[k] += 1;
                    break;
                }
                m[k] = -radius;
            }
        }
    }

    /// Order by iterating multiples, the slow route.
    fn order_by_iteration(c: &Cone, d: &DivisorClass, limit: i64) -> Option<i64> {
        (1..=limit).find(|&k| {
            let kd: Vec<i64> = d.coefficients.iter().map(|x| k * x).collect();
            in_image_brute(c, &kd, 40)
        })
    }

    #[test]
    fn presentation_matrix_examples() {
        assert_eq!(
            presentation_matrix(&a1()).unwrap(),
            IntegerMatrix::from_rows(&[[1, 0], [1, 2]]).unwrap()
        );
        let orthant = make_cone(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3).unwrap();
        // canonical order lists (0,0,1) first, so rows are the identity reversed
        let m = presentation_matrix(&orthant).unwrap();
        assert_eq!(m, IntegerMatrix::from_rows(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]]).unwrap());
        assert_eq!(smith_normal_form(&m).invariant_factors, vec![BigInt::one(); 3]);
        assert_eq!(
            presentation_matrix(&square()).unwrap(),
            IntegerMatrix::from_rows(&[[0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 1]]).unwrap()
        );
        let flat = make_cone(&[[1, 0, 0], [0, 1, 0]], 3).unwrap();
        assert!(presentation_matrix(&flat).is_err());
    }

    #[test]
    fn class_group_examples() {
        let g = class_group_of(&a1()).unwrap();
        assert_eq!(factors(&g), vec![2]);
        assert_eq!(g.free_rank(), 0);

        for n in 1..=10i64 {
            let c = make_cone(&[[1, 0], [1, n + 1]], 2).unwrap();
            let g = class_group_of(&c).unwrap();
            assert_eq!(factors(&g), vec![(n + 1) as u64]);
            assert!(g.is_cyclic());
        }

        let g = class_group_of(&square()).unwrap();
        assert!(factors(&g).is_empty());
        assert_eq!(g.free_rank(), 1);
        assert_eq!(group_order(&g), GroupOrder::Infinite);
        assert_eq!(g.to_string(), "Z");
    }

    #[test]
    fn order_and_exponent() {
        assert_eq!(group_order(&AbelianGroupPresentation::from_invariants(&[2], 0)), 2.into());
        assert_eq!(group_order(&AbelianGroupPresentation::trivial()), 1.into());
        let klein = AbelianGroupPresentation::from_invariants(&[2, 2], 0);
        assert_eq!(group_order(&klein), 4.into());
        assert_eq!(group_exponent(&klein), 2.into());
        assert_eq!(klein.to_string(), "(Z/2)^2");
        assert_eq!(group_exponent(&AbelianGroupPresentation::from_invariants(&[4], 0)), 4.into());
        assert_eq!(group_exponent(&AbelianGroupPresentation::trivial()), 1.into());
        assert_eq!(AbelianGroupPresentation::trivial().to_string(), "0");
        assert_eq!(
            AbelianGroupPresentation::from_invariants(&[2, 4], 2).to_string(),
            "Z/2 x Z/4 x Z^2"
        );
    }

    #[test]
    fn det_multiplier_examples() {
        assert_eq!(det_multiplier(&a1()).unwrap(), BigUint::from(2u32));
        let smooth = make_cone(&[[1, 1], [0, 1]], 2).unwrap();
        assert_eq!(det_multiplier(&smooth).unwrap(), BigUint::from(1u32));
        let c = make_cone(&[[1, 0, 0], [0, 1, 0], [1, 1, 2]], 3).unwrap();
        assert_eq!(det_multiplier(&c).unwrap(), BigUint::from(2u32));
        assert_eq!(factors(&class_group_of(&c).unwrap()), vec![2]);
        assert!(det_multiplier(&square()).is_err());
    }

    #[test]
    fn class_of_a1() {
        let g = class_group_of(&a1()).unwrap();
        assert!(class_of(&DivisorClass::new(vec![0, 0]), &g).unwrap().is_identity());
        assert!(!in_image_brute(&a1(), &[1, 0], 20));
        assert!(!class_of(&DivisorClass::new(vec![1, 0]), &g).unwrap().is_identity());
        assert!(in_image_brute(&a1(), &[2, 0], 20));
        assert!(class_of(&DivisorClass::new(vec![2, 0]), &g).unwrap().is_identity());
        assert!(class_of(&DivisorClass::new(vec![1]), &g).is_err());
    }

    #[test]
    fn order_of_class_examples() {
        let g = class_group_of(&a1()).unwrap();
        assert_eq!(order_of_class(&DivisorClass::new(vec![0, 0]), &g).unwrap(), 1.into());
        assert_eq!(order_of_class(&DivisorClass::prime(2, 0), &g).unwrap(), 2.into());

        // square-base cone: Cl = Z and [P_1] generates the free part
        let sq = square();
        let g = class_group_of(&sq).unwrap();
        let d = DivisorClass::prime(4, 0);
        assert!(!class_of(&d, &g).unwrap().free.iter().all(Zero::is_zero));
        assert_eq!(order_of_class(&d, &g).unwrap(), GroupOrder::Infinite);
        // div(χ^m) for m = (1,0,0) is [P_3] + [P_4]
        let principal = DivisorClass::new(vec![0, 0, 1, 1]);
        assert!(in_image_brute(&sq, &principal.coefficients, 3));
        assert!(class_of(&principal, &g).unwrap().is_identity());
    }

    #[test]
    fn order_of_class_matches_iteration() {
        let cones = [
            make_cone(&[[1, 0], [1, 6]], 2).unwrap(),
            make_cone(&[[2, 1, 0], [0, 2, 1], [1, 0, 2]], 3).unwrap(),
            make_cone(&[[1, 0, 0], [0, 1, 0], [1, 2, 4]], 3).unwrap(),
        ];
        for c in &cones {
            let g = class_group_of(c).unwrap();
            let exponent = group_exponent(&g);
            let r = c.num_rays();
            let mut samples = Vec::new();
            for i in 0..r {
                samples.push(DivisorClass::prime(r, i));
            }
            samples.push(DivisorClass::new((0..r as i64).map(|i| i + 1).collect()));
            samples.push(DivisorClass::new((0..r as i64).map(|i| 2 - i).collect()));
            for d in samples {
                let fast = order_of_class(&d, &g).unwrap();
                let slow = order_by_iteration(c, &d, 20).unwrap();
                assert_eq!(fast, GroupOrder::from(slow as u64), "{c:?} {d:?}");
                let (Some(o), Some(e)) = (fast.finite(), exponent.finite()) else {
                    unreachable!();
                };
                assert!((e % o).is_zero());
            }
        }
    }

    #[test]
    fn class_of_is_homomorphism() {
        let c = make_cone(&[[2, 1, 0], [0, 2, 1], [1, 0, 2]], 3).unwrap();
        let g = class_group_of(&c).unwrap();
        let d1 = DivisorClass::new(vec![1, 4, -2]);
        let d2 = DivisorClass::new(vec![3, -1, 5]);
        let sum = DivisorClass::new(vec![4, 3, 3]);
        let (r1, r2, rs) = (
            class_of(&d1, &g).unwrap(),
            class_of(&d2, &g).unwrap(),
            class_of(&sum, &g).unwrap(),
        );
        for ((a, b), (c, s)) in r1.torsion.iter().zip(&r2.torsion).zip(rs.torsion.iter().zip(g.invariant_factors())) {
            assert_eq!((a + b) % s, *c);
        }
    }
}
