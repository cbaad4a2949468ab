//! Exact arithmetic on `{0} ∪ {roots of unity}`.
//!
//! Every value of an exponential on a finite semigroup lives in this set,
//! so exponentials are stored exactly and compared without tolerances.

use core::cmp::Ordering;
use core::f64::consts::PI;
use core::fmt;
use core::ops::Mul;

use crate::C64;

/// `Zero`, or `e^{2πi·num/den}` with `0 ≤ num < den` and `gcd(num, den) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootValue {
    Zero,
    Root { num: u32, den: u32 },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl RootValue {
    pub const ONE: RootValue = RootValue::Root { num: 0, den: 1 };

    /// `e^{2πi·j/k}` in lowest terms; `k` must be positive.
    pub fn root(j: i64, k: u32) -> RootValue {
        assert!(k > 0, "root order must be positive");
        let k64 = i64::from(k);
        let j = j.rem_euclid(k64) as u64;
        let g = gcd(j, u64::from(k));
        RootValue::Root {
            num: (j / g) as u32,
            den: (u64::from(k) / g) as u32,
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, RootValue::Zero)
    }

    /// Multiplicative order of a root; `None` for zero.
    pub fn order(self) -> Option<u32> {
        match self {
            RootValue::Zero => None,
            RootValue::Root { den, .. } => Some(den),
        }
    }

    pub fn pow(self, k: u32) -> RootValue {
        match self {
            RootValue::Zero if k == 0 => RootValue::ONE,
            RootValue::Zero => RootValue::Zero,
            RootValue::Root { num, den } => RootValue::root(
                ((u64::from(num) * u64::from(k)) % u64::from(den)) as i64,
                den,
            ),
        }
    }

    /// Complex embedding. Quarter turns are produced exactly.
    pub fn to_complex(self) -> C64 {
        match self {
            RootValue::Zero => C64::new(0.0, 0.0),
            RootValue::Root { num, den } => {
                if (4 * num) % den == 0 {
                    match (4 * num) / den {
                        0 => C64::new(1.0, 0.0),
                        1 => C64::new(0.0, 1.0),
                        2 => C64::new(-1.0, 0.0),
                        _ => C64::new(0.0, -1.0),
                    }
                } else {
                    C64::from_polar(1.0, 2.0 * PI * f64::from(num) / f64::from(den))
                }
            }
        }
    }
}

impl PartialOrd for RootValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Zero first, then roots by increasing angle in `[0, 2π)`.
impl Ord for RootValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (RootValue::Zero, RootValue::Zero) => Ordering::Equal,
            (RootValue::Zero, _) => Ordering::Less,
            (_, RootValue::Zero) => Ordering::Greater,
            (RootValue::Root { num: a, den: b }, RootValue::Root { num: c, den: d }) => {
                (u64::from(a) * u64::from(d)).cmp(&(u64::from(c) * u64::from(b)))
            }
        }
    }
}

impl Mul for RootValue {
    type Output = RootValue;

    fn mul(self, other: RootValue) -> RootValue {
        match (self, other) {
            (RootValue::Root { num: a, den: b }, RootValue::Root { num: c, den: d }) => {
                let l = lcm(u64::from(b), u64::from(d));
                let j = u64::from(a) * (l / u64::from(b)) + u64::from(c) * (l / u64::from(d));
                RootValue::root((j % l) as i64, l as u32)
            }
            _ => RootValue::Zero,
        }
    }
}

impl fmt::Display for RootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RootValue::Zero => f.write_str("0"),
            RootValue::Root { num: 0, .. } => f.write_str("1"),
            RootValue::Root { num, den } => write!(f, "e({num}/{den})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation_and_product() {
        assert_eq!(RootValue::root(2, 4), RootValue::root(1, 2));
        assert_eq!(RootValue::root(-1, 3), RootValue::root(2, 3));
        assert_eq!(RootValue::root(3, 3), RootValue::ONE);
        let w = RootValue::root(1, 3);
        assert_eq!(w * w * w, RootValue::ONE);
        assert_eq!(
            RootValue::root(1, 2) * RootValue::root(1, 3),
            RootValue::root(5, 6)
        );
        assert_eq!(w * RootValue::Zero, RootValue::Zero);
        assert_eq!(w.pow(3), RootValue::ONE);
    }

    #[test]
    fn embedding_precision() {
        for k in 1..=12u32 {
            for j in 0..k {
                let z = RootValue::root(i64::from(j), k).to_complex();
                let expect = C64::from_polar(1.0, 2.0 * PI * f64::from(j) / f64::from(k));
                assert!((z - expect).norm() < 1e-15);
            }
        }
        assert_eq!(RootValue::root(1, 4).to_complex(), C64::new(0.0, 1.0));
    }

    #[test]
    fn ordering() {
        let mut v = [
            RootValue::root(2, 3),
            RootValue::ONE,
            RootValue::Zero,
            RootValue::root(1, 2),
        ];
        v.sort();
        assert_eq!(
            v,
            [
                RootValue::Zero,
                RootValue::ONE,
                RootValue::root(1, 2),
                RootValue::root(2, 3)
            ]
        );
    }
}
