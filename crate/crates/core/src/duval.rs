//! Catalog of du Val (ADE) surface singularities over `C`: local equation,
//! class group of the complete local ring, and the optimal uniform
//! multiplier, which is the exponent of the class group.

use alloc::string::String;
use core::fmt;

use num_bigint::BigUint;

use crate::class_group::{class_group_of, group_exponent, AbelianGroupPresentation, GroupOrder};
use crate::cone::make_cone;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuValRecord {
    pub family: Family,
    pub n: u32,
    pub local_equation: String,
    pub group: AbelianGroupPresentation,
    pub d_min: BigUint,
}

/// Catalog entry for type `family_n`.
pub fn lookup(family: Family, n: u32) -> Result<DuValRecord> {
    let not_found = Error::NotInCatalog {
        family: family.letter(),
        n,
    };
    let (local_equation, group) = match (family, n) {
        (Family::A, n) if n >= 1 => {
            let order = u64::from(n) + 1;
            (format!("xz - y^{order}"), AbelianGroupPresentation::from_invariants(&[order], 0))
        }
        (Family::D, n) if n >= 4 => {
            let equation = format!("x^2 + yz^2 - z^{}", n - 1);
            let factors: &[u64] = if n % 2 == 0 { &[2, 2] } else { &[4] };
            (equation, AbelianGroupPresentation::from_invariants(factors, 0))
        }
        (Family::E, 6) => ("x^4 + y^3 + z^2".into(), AbelianGroupPresentation::from_invariants(&[3], 0)),
        (Family::E, 7) => ("x^3y + y^3 + z^2".into(), AbelianGroupPresentation::from_invariants(&[2], 0)),
        (Family::E, 8) => ("x^5 + y^3 + z^2".into(), AbelianGroupPresentation::trivial()),
        _ => return Err(not_found),
    };
    let GroupOrder::Finite(d_min) = group_exponent(&group) else {
        unreachable!("catalog groups are finite");
    };
    Ok(DuValRecord {
        family,
        n,
        local_equation,
        group,
        d_min,
    })
}

/// Compare the `A_n` entry with the class group of the toric model
/// `Cone((1,0), (1,n+1))`, whose semigroup ring is `k[x,y,z]/(xz - y^{n+1})`.
pub fn cross_check_an(n: u32) -> Result<bool> {
    let record = lookup(Family::A, n)?;
    let cone = make_cone(&[[1, 0], [1, i64::from(n) + 1]], 2)?;
    let toric = class_group_of(&cone)?;
    Ok(toric.is_cyclic()
        && toric.free_rank() == 0
        && toric.invariant_factors() == record.group.invariant_factors())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::prelude::rust_2021::*;
    use crate::class_group::group_order;

    #[test]
    fn lookup_examples() {
        let a3 = lookup(Family::A, 3).unwrap();
        assert_eq!(a3.group.to_string(), "Z/4");
        assert_eq!(a3.d_min, BigUint::from(4u32));
        assert_eq!(a3.local_equation, "xz - y^4");

        let d5 = lookup(Family::D, 5).unwrap();
        assert_eq!(d5.group.to_string(), "Z/4");
        assert_eq!(d5.d_min, BigUint::from(4u32));
        assert_eq!(d5.local_equation, "x^2 + yz^2 - z^4");

        let e8 = lookup(Family::E, 8).unwrap();
        assert!(e8.group.is_trivial());
        assert_eq!(e8.d_min, BigUint::from(1u32));
    }

    #[test]
    fn out_of_catalog() {
        for (f, n) in [(Family::A, 0), (Family::D, 3), (Family::E, 5), (Family::E, 9)] {
            assert_eq!(
                lookup(f, n),
                Err(Error::NotInCatalog { family: f.letter(), n })
            );
        }
        assert!(cross_check_an(0).is_err());
    }

    #[test]
    fn d_family_parity() {
        for n in 4..=12 {
            let r = lookup(Family::D, n).unwrap();
            let factors: Vec<u64> = r.group.invariant_factors().iter().map(|s| u64::try_from(s).unwrap()).collect();
            if n % 2 == 0 {
                assert_eq!(factors, vec![2, 2]);
                assert_eq!(r.d_min, BigUint::from(2u32));
            } else {
                assert_eq!(factors, vec![4]);
                assert_eq!(r.d_min, BigUint::from(4u32));
            }
        }
    }

    #[test]
    fn d_min_is_order_iff_cyclic() {
        let mut records = vec![];
        for n in 1..=6 {
            records.push(lookup(Family::A, n).unwrap());
        }
        for n in 4..=9 {
            records.push(lookup(Family::D, n).unwrap());
        }
        for n in 6..=8 {
            records.push(lookup(Family::E, n).unwrap());
        }
        for r in records {
            assert_eq!(GroupOrder::Finite(r.d_min.clone()), group_exponent(&r.group));
            let order_matches = group_order(&r.group) == GroupOrder::Finite(r.d_min.clone());
            assert_eq!(order_matches, r.group.is_cyclic(), "{}{}", r.family, r.n);
        }
    }

    #[test]
    fn cross_check_examples() {
        for n in [1, 4, 9] {
            assert!(cross_check_an(n).unwrap());
        }
    }
}
