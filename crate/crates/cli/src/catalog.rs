//! Named small semigroups with their involutive automorphisms.

use kannappan_core::algebra::enumerate_involutions;
use kannappan_core::{FiniteSemigroup, InvolutiveAutomorphism};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown catalog entry {0:?}")]
pub struct UnknownName(pub String);

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub semigroup: FiniteSemigroup,
    pub involutions: Vec<InvolutiveAutomorphism>,
}

impl CatalogEntry {
    fn build(name: String, semigroup: FiniteSemigroup) -> Self {
        let involutions = enumerate_involutions(&semigroup);
        CatalogEntry {
            name,
            semigroup,
            involutions,
        }
    }

    /// `x ↦ n − x` on `Zn`, the coordinate swap on `TruncSqK`, otherwise the
    /// first nontrivial involution if any, else the identity.
    pub fn preferred_involution(&self) -> InvolutiveAutomorphism {
        self.involutions
            .iter()
            .find(|s| !s.is_identity())
            .cloned()
            .unwrap_or_else(|| InvolutiveAutomorphism::identity(self.semigroup.len()))
    }

    pub fn identity_involution(&self) -> InvolutiveAutomorphism {
        InvolutiveAutomorphism::identity(self.semigroup.len())
    }
}

pub fn cyclic(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(n, |x, y| (x + y) % n).expect("cyclic group table")
}

/// `{0, …, k−1}` with `x ⊕ y = min(x + y, k − 1)`.
pub fn truncated(k: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(k, |x, y| (x + y).min(k - 1)).expect("truncated addition table")
}

pub fn left_zero(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(n, |x, _| x).expect("left-zero table")
}

/// `xy = 0` for all `x, y`.
pub fn null(n: usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(n, |_, _| 0).expect("null table")
}

fn make(family: &str, k: usize) -> Option<FiniteSemigroup> {
    Some(match family {
        "Z" if (1..=6).contains(&k) => cyclic(k),
        "Trunc" if (1..=4).contains(&k) => truncated(k),
        "TruncSq" if (1..=4).contains(&k) => truncated(k).product(&truncated(k)),
        "LeftZero" if (1..=3).contains(&k) => left_zero(k),
        "Null" if (1..=3).contains(&k) => null(k),
        _ => return None,
    })
}

const FAMILIES: [(&str, usize); 5] = [
    ("Z", 6),
    ("Trunc", 4),
    ("TruncSq", 4),
    ("LeftZero", 3),
    ("Null", 3),
];

/// All catalog names in canonical order.
pub fn names() -> Vec<String> {
    FAMILIES
        .iter()
        .flat_map(|&(f, max)| (1..=max).map(move |k| format!("{f}{k}")))
        .collect()
}

pub fn lookup(name: &str) -> Result<CatalogEntry, UnknownName> {
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| UnknownName(name.into()))?;
    let (family, digits) = name.split_at(split);
    let k: usize = digits.parse().map_err(|_| UnknownName(name.into()))?;
    let s = make(family, k).ok_or_else(|| UnknownName(name.into()))?;
    Ok(CatalogEntry::build(name.into(), s))
}

pub fn all() -> Vec<CatalogEntry> {
    names()
        .iter()
        .map(|n| lookup(n).expect("catalog name"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z3_has_identity_and_negation() {
        let e = lookup("Z3").unwrap();
        let mut perms: Vec<Vec<usize>> = e
            .involutions
            .iter()
            .map(|s| s.as_slice().to_vec())
            .collect();
        perms.sort();
        assert_eq!(perms, vec![vec![0, 1, 2], vec![0, 2, 1]]);
        assert_eq!(e.preferred_involution().as_slice(), &[0, 2, 1]);
    }

    #[test]
    fn trunc4_only_identity() {
        let e = lookup("Trunc4").unwrap();
        assert_eq!(e.involutions.len(), 1);
        assert!(e.involutions[0].is_identity());
        assert_eq!(e.semigroup.identity(), Some(0));
    }

    #[test]
    fn left_zero_has_transposition() {
        let e = lookup("LeftZero2").unwrap();
        assert_eq!(e.involutions.len(), 2);
        assert_eq!(e.semigroup.identity(), None);
    }

    #[test]
    fn trunc_square_contains_swap() {
        let e = lookup("TruncSq4").unwrap();
        let swap: Vec<usize> = (0..16).map(|i| (i % 4) * 4 + i / 4).collect();
        assert!(e
            .involutions
            .iter()
            .any(|s| s.as_slice() == swap.as_slice()));
        assert_eq!(e.preferred_involution().as_slice(), swap.as_slice());
    }

    #[test]
    fn unknown_names() {
        for bad in ["Z7", "Foo2", "Trunc", "TruncSq5", ""] {
            assert!(lookup(bad).is_err(), "{bad}");
        }
        assert_eq!(names().len(), 20);
    }
}
