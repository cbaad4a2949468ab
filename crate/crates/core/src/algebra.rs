//! Finite semigroup kernel.
//!
//! Elements are the dense indices `0..n`; a semigroup is its Cayley table.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("table is empty")]
    Empty,
    #[error("table row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("table entry ({0}, {1}) is out of range")]
    OutOfRangeEntry(usize, usize),
    #[error("operation is not associative ({} violating triples, first {:?})", .0.len(), .0.first())]
    NotAssociative(Vec<(usize, usize, usize)>),
    #[error("element {0} is not a two-sided identity")]
    NotAnIdentity(usize),
    #[error("element index {0} is out of range")]
    OutOfRange(usize),
    #[error("map is not a bijection")]
    NotABijection,
    #[error("map is not involutive at {0}")]
    NotInvolutive(usize),
    #[error("map does not preserve the product at ({0}, {1})")]
    NotAnAutomorphism(usize, usize),
}

/// Outcome of an associativity scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Associativity {
    Valid,
    /// Every `(x, y, z)` with `(xy)z != x(yz)`, sorted lexicographically.
    Violations(Vec<(usize, usize, usize)>),
}

impl Associativity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Associativity::Valid)
    }
}

fn check_shape(table: &[Vec<usize>]) -> Result<usize, AlgebraError> {
    let n = table.len();
    if n == 0 {
        return Err(AlgebraError::Empty);
    }
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(AlgebraError::NotSquare {
                row: x,
                len: row.len(),
                n,
            });
        }
        if let Some(y) = row.iter().position(|&v| v >= n) {
            return Err(AlgebraError::OutOfRangeEntry(x, y));
        }
    }
    Ok(n)
}

/// Scans all `n³` triples and reports every associativity violation.
pub fn verify_associativity(table: &[Vec<usize>]) -> Result<Associativity, AlgebraError> {
    let n = check_shape(table)?;
    let mut bad = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let xy = table[x][y];
            for z in 0..n {
                if table[xy][z] != table[x][table[y][z]] {
                    bad.push((x, y, z));
                }
            }
        }
    }
    Ok(if bad.is_empty() {
        Associativity::Valid
    } else {
        Associativity::Violations(bad)
    })
}

/// A finite semigroup on `{0, …, n−1}` stored as a row-major Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    n: usize,
    table: Vec<usize>,
    identity: Option<usize>,
}

impl FiniteSemigroup {
    /// Validates range and associativity, then detects the identity.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        match verify_associativity(&table)? {
            Associativity::Valid => {}
            Associativity::Violations(v) => return Err(AlgebraError::NotAssociative(v)),
        }
        let n = table.len();
        let mut s = FiniteSemigroup {
            n,
            table: table.into_iter().flatten().collect(),
            identity: None,
        };
        s.identity = find_identity(&s);
        Ok(s)
    }

    /// Builds the table from a closure; the closure must stay inside `0..n`.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, AlgebraError> {
        let table = (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect();
        Self::new(table)
    }

    /// Like [`FiniteSemigroup::new`] but also checks a declared identity.
    pub fn with_declared_identity(table: Vec<Vec<usize>>, e: usize) -> Result<Self, AlgebraError> {
        let s = Self::new(table)?;
        if e >= s.n {
            return Err(AlgebraError::OutOfRange(e));
        }
        if s.identity != Some(e) {
            return Err(AlgebraError::NotAnIdentity(e));
        }
        Ok(s)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.table.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// `x^k` for `k ≥ 1`.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1, "powers start at 1");
        (1..k).fold(x, |acc, _| self.op(acc, x))
    }

    /// Direct product with componentwise multiplication; `(a, b)` has index
    /// `a * other.len() + b`.
    pub fn product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let m = other.n;
        let n = self.n * m;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (x / m, x % m);
                let (c, d) = (y / m, y % m);
                table.push(self.op(a, c) * m + other.op(b, d));
            }
        }
        let identity = match (self.identity, other.identity) {
            (Some(e), Some(f)) => Some(e * m + f),
            _ => None,
        };
        FiniteSemigroup { n, table, identity }
    }
}

/// The unique two-sided identity, if any.
pub fn find_identity(s: &FiniteSemigroup) -> Option<usize> {
    (0..s.n).find(|&e| (0..s.n).all(|x| s.op(e, x) == x && s.op(x, e) == x))
}

/// Index and period of an element: the minimal `(i, p)` with `x^(i+p) = x^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementCycle {
    pub index: usize,
    pub period: usize,
}

pub fn index_period(s: &FiniteSemigroup, x: usize) -> ElementCycle {
    // seen[v] = k means v = x^k (first occurrence)
    let mut seen = vec![0usize; s.n];
    let mut cur = x;
    let mut k = 1;
    loop {
        if seen[cur] != 0 {
            return ElementCycle {
                index: seen[cur],
                period: k - seen[cur],
            };
        }
        seen[cur] = k;
        cur = s.op(cur, x);
        k += 1;
    }
}

/// A permutation `σ` with `σ∘σ = id` and `σ(xy) = σ(x)σ(y)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvolutiveAutomorphism {
    perm: Vec<usize>,
}

impl InvolutiveAutomorphism {
    pub fn new(s: &FiniteSemigroup, perm: Vec<usize>) -> Result<Self, AlgebraError> {
        check_involution(s, &perm)?;
        Ok(InvolutiveAutomorphism { perm })
    }

    pub fn identity(n: usize) -> Self {
        InvolutiveAutomorphism {
            perm: (0..n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// Checks the three involutive-automorphism invariants of `perm` on `s`.
pub fn check_involution(s: &FiniteSemigroup, perm: &[usize]) -> Result<(), AlgebraError> {
    let n = s.len();
    if perm.len() != n {
        return Err(AlgebraError::NotABijection);
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n {
            return Err(AlgebraError::OutOfRange(p));
        }
        if hit[p] {
            return Err(AlgebraError::NotABijection);
        }
        hit[p] = true;
    }
    if let Some(x) = (0..n).find(|&x| perm[perm[x]] != x) {
        return Err(AlgebraError::NotInvolutive(x));
    }
    for x in 0..n {
        for y in 0..n {
            if perm[s.op(x, y)] != s.op(perm[x], perm[y]) {
                return Err(AlgebraError::NotAnAutomorphism(x, y));
            }
        }
    }
    Ok(())
}

const SCAN_LIMIT: usize = 7;

/// All involutive automorphisms of `s`, in lexicographic order of the
/// permutation. The identity is always included.
pub fn enumerate_involutions(s: &FiniteSemigroup) -> Vec<InvolutiveAutomorphism> {
    if s.len() <= SCAN_LIMIT {
        scan_involutions(s)
    } else {
        backtrack_involutions(s)
    }
}

fn scan_involutions(s: &FiniteSemigroup) -> Vec<InvolutiveAutomorphism> {
    let mut perm: Vec<usize> = (0..s.len()).collect();
    let mut out = Vec::new();
    loop {
        if check_involution(s, &perm).is_ok() {
            out.push(InvolutiveAutomorphism { perm: perm.clone() });
        }
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

const FREE: usize = usize::MAX;

fn backtrack_involutions(s: &FiniteSemigroup) -> Vec<InvolutiveAutomorphism> {
    let mut out = Vec::new();
    let perm = vec![FREE; s.len()];
    descend(s, perm, &mut out);
    out
}

// Positions and images coincide for an involution under construction: a
// pair x <-> y is always assigned together, so "image y used" is the same
// as "position y assigned".
fn descend(s: &FiniteSemigroup, perm: Vec<usize>, out: &mut Vec<InvolutiveAutomorphism>) {
    let Some(x) = perm.iter().position(|&p| p == FREE) else {
        debug_assert!(check_involution(s, &perm).is_ok());
        out.push(InvolutiveAutomorphism { perm });
        return;
    };
    for y in x..s.len() {
        if perm[y] != FREE {
            continue;
        }
        let mut next = perm.clone();
        next[x] = y;
        next[y] = x;
        if propagate(s, &mut next) {
            descend(s, next, out);
        }
    }
}

/// Forces `σ(ab) = σ(a)σ(b)` wherever both factors are assigned; returns
/// false on a conflict.
fn propagate(s: &FiniteSemigroup, perm: &mut [usize]) -> bool {
    let n = s.len();
    loop {
        let mut changed = false;
        for a in 0..n {
            if perm[a] == FREE {
                continue;
            }
            for b in 0..n {
                if perm[b] == FREE {
                    continue;
                }
                let ab = s.op(a, b);
                let want = s.op(perm[a], perm[b]);
                if perm[ab] == FREE {
                    if perm[want] != FREE {
                        return false;
                    }
                    perm[ab] = want;
                    perm[want] = ab;
                    changed = true;
                } else if perm[ab] != want {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(n, |x, y| (x + y) % n).unwrap()
    }

    fn trunc(k: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(k, |x, y| (x + y).min(k - 1)).unwrap()
    }

    fn left_zero(n: usize) -> FiniteSemigroup {
        FiniteSemigroup::from_fn(n, |x, _| x).unwrap()
    }

    #[test]
    fn associativity_examples() {
        let z3: Vec<Vec<usize>> = (0..3)
            .map(|x| (0..3).map(|y| (x + y) % 3).collect())
            .collect();
        assert_eq!(verify_associativity(&z3).unwrap(), Associativity::Valid);

        let bad = vec![vec![0, 0], vec![1, 0]];
        match verify_associativity(&bad).unwrap() {
            Associativity::Violations(v) => {
                assert!(v.contains(&(1, 1, 1)));
                let mut sorted = v.clone();
                sorted.sort();
                assert_eq!(v, sorted);
            }
            Associativity::Valid => panic!("expected violations"),
        }

        let t4: Vec<Vec<usize>> = (0..4)
            .map(|x| (0..4).map(|y| (x + y).min(3)).collect())
            .collect();
        assert!(verify_associativity(&t4).unwrap().is_valid());
    }

    #[test]
    fn out_of_range_entry() {
        let t = vec![vec![0, 2], vec![1, 0]];
        assert_eq!(
            verify_associativity(&t),
            Err(AlgebraError::OutOfRangeEntry(0, 1))
        );
    }

    #[test]
    fn identities() {
        assert_eq!(cyclic(3).identity(), Some(0));
        assert_eq!(left_zero(2).identity(), None);
        assert_eq!(trunc(4).identity(), Some(0));
        let t: Vec<Vec<usize>> = (0..3)
            .map(|x| (0..3).map(|y| (x + y) % 3).collect())
            .collect();
        assert_eq!(
            FiniteSemigroup::with_declared_identity(t.clone(), 1),
            Err(AlgebraError::NotAnIdentity(1))
        );
        assert!(FiniteSemigroup::with_declared_identity(t, 0).is_ok());
    }

    #[test]
    fn index_and_period() {
        assert_eq!(
            index_period(&cyclic(3), 1),
            ElementCycle {
                index: 1,
                period: 3
            }
        );
        assert_eq!(
            index_period(&trunc(4), 1),
            ElementCycle {
                index: 3,
                period: 1
            }
        );
        for x in 0..2 {
            assert_eq!(
                index_period(&left_zero(2), x),
                ElementCycle {
                    index: 1,
                    period: 1
                }
            );
        }
    }

    #[test]
    fn involutions_small() {
        let z3 = enumerate_involutions(&cyclic(3));
        let perms: Vec<&[usize]> = z3.iter().map(|s| s.as_slice()).collect();
        assert_eq!(perms, vec![&[0, 1, 2][..], &[0, 2, 1][..]]);

        let t4 = enumerate_involutions(&trunc(4));
        assert_eq!(t4.len(), 1);
        assert!(t4[0].is_identity());

        let lz = enumerate_involutions(&left_zero(2));
        assert_eq!(lz.len(), 2);
    }

    #[test]
    fn involutions_of_truncated_square_include_swap() {
        let t4 = trunc(4);
        let sq = t4.product(&t4);
        assert_eq!(sq.identity(), Some(0));
        let invs = enumerate_involutions(&sq);
        let swap: Vec<usize> = (0..16).map(|i| (i % 4) * 4 + i / 4).collect();
        assert!(invs.iter().any(|s| s.as_slice() == swap.as_slice()));
        assert!(invs[0].is_identity());
        for s in &invs {
            check_involution(&sq, s.as_slice()).unwrap();
        }
    }

    #[test]
    fn backtracking_matches_scan() {
        for s in [
            cyclic(5),
            cyclic(6),
            trunc(4),
            left_zero(3),
            trunc(3).product(&cyclic(2)),
        ] {
            assert_eq!(scan_involutions(&s), backtrack_involutions(&s));
        }
    }

    #[test]
    fn product_is_associative() {
        let p = cyclic(2).product(&trunc(3));
        let rows = p.to_rows();
        assert!(verify_associativity(&rows).unwrap().is_valid());
        assert_eq!(p.identity(), find_identity(&p));
    }
}
