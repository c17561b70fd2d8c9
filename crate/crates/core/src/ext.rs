//! Integers extended by `-inf` and `+inf`.

use std::fmt;

/// Values of projective dimension, depth and friends.
///
/// Variant order gives the total order `NegInf < Fin(n) < PosInf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    pub const ZERO: ExtInt = ExtInt::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(n) => Some(n),
            _ => None,
        }
    }

    /// Adds an integer offset; infinities absorb.
    pub fn offset(self, n: i64) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(v + n),
            other => other,
        }
    }

    /// Sup of a possibly empty family; the empty sup is `NegInf`.
    pub fn sup<I: IntoIterator<Item = ExtInt>>(it: I) -> ExtInt {
        it.into_iter().fold(ExtInt::NegInf, ExtInt::max)
    }

    /// Inf of a possibly empty family; the empty inf is `PosInf`.
    pub fn inf<I: IntoIterator<Item = ExtInt>>(it: I) -> ExtInt {
        it.into_iter().fold(ExtInt::PosInf, ExtInt::min)
    }
}

impl std::ops::Neg for ExtInt {
    type Output = ExtInt;

    fn neg(self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::PosInf => ExtInt::NegInf,
            ExtInt::Fin(v) => ExtInt::Fin(-v),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::PosInf => write!(f, "inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_extremes() {
        assert!(ExtInt::NegInf < ExtInt::Fin(-100));
        assert!(ExtInt::Fin(100) < ExtInt::PosInf);
        assert_eq!(ExtInt::sup([]), ExtInt::NegInf);
        assert_eq!(ExtInt::inf([]), ExtInt::PosInf);
        assert_eq!(ExtInt::sup([1.into(), 3.into(), ExtInt::NegInf]), ExtInt::Fin(3));
        assert_eq!(ExtInt::NegInf.offset(5), ExtInt::NegInf);
        assert_eq!(-ExtInt::Fin(2), ExtInt::Fin(-2));
    }
}
