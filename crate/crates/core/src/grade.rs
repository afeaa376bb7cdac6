//! Exact membership grades on a finite chain `{0, 1/D, ..., 1}`.
//!
//! A [`Grade`] only stores its numerator; the denominator lives on the
//! [`GradeChain`] shared by every set of a space. Comparisons between grades of
//! the same chain are therefore plain integer comparisons.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported denominator. Grades are stored in a byte.
pub const MAX_DENOMINATOR: u32 = u8::MAX as u32;

/// A grade `k/D`, stored as the numerator `k`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[repr(transparent)]
pub struct Grade(u8);

impl Grade {
    pub const ZERO: Grade = Grade(0);

    /// A grade from a raw numerator, without checking it against a chain.
    pub const fn raw(numerator: u8) -> Grade {
        Grade(numerator)
    }

    /// Raw numerator. Only meaningful together with the owning chain.
    pub const fn numerator(self) -> u8 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub const fn is_positive(self) -> bool {
        self.0 > 0
    }
}

/// The chain `{k/D : 0 <= k <= D}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GradeChain {
    denominator: u8,
}

impl GradeChain {
    pub fn new(denominator: u32) -> Result<Self> {
        if denominator == 0 || denominator > MAX_DENOMINATOR {
            return Err(Error::InvalidDenominator(denominator));
        }
        Ok(GradeChain {
            denominator: denominator as u8,
        })
    }

    pub const fn denominator(self) -> u32 {
        self.denominator as u32
    }

    /// Number of values in the chain, `D + 1`.
    pub const fn len(self) -> usize {
        self.denominator as usize + 1
    }

    pub const fn is_empty(self) -> bool {
        false
    }

    pub const fn bottom(self) -> Grade {
        Grade(0)
    }

    pub const fn top(self) -> Grade {
        Grade(self.denominator)
    }

    pub const fn is_top(self, grade: Grade) -> bool {
        grade.0 == self.denominator
    }

    pub const fn contains(self, grade: Grade) -> bool {
        grade.0 <= self.denominator
    }

    /// The grade `k/D`.
    pub fn grade(self, numerator: u32) -> Result<Grade> {
        if numerator > self.denominator() {
            return Err(Error::GradeOffChain {
                value: format!("{numerator}/{}", self.denominator),
                denominator: self.denominator(),
            });
        }
        Ok(Grade(numerator as u8))
    }

    /// The grade equal to the rational `num/den`, if it lies on the chain.
    pub fn from_ratio(self, num: u64, den: u64) -> Result<Grade> {
        let off_chain = || Error::GradeOffChain {
            value: format!("{num}/{den}"),
            denominator: self.denominator(),
        };
        if den == 0 || num > den {
            return Err(off_chain());
        }
        let scaled = num * u64::from(self.denominator);
        if !scaled.is_multiple_of(den) {
            return Err(off_chain());
        }
        Ok(Grade((scaled / den) as u8))
    }

    /// `1 - g`, which stays on the chain.
    pub const fn complement(self, grade: Grade) -> Grade {
        Grade(self.denominator - grade.0)
    }

    /// All chain values in increasing order.
    pub fn values(self) -> impl DoubleEndedIterator<Item = Grade> + Clone {
        (0..=self.denominator).map(Grade)
    }

    /// Non-zero chain values in increasing order.
    pub fn positive_values(self) -> impl DoubleEndedIterator<Item = Grade> + Clone {
        (1..=self.denominator).map(Grade)
    }

    /// Canonical `"k/D"` text form.
    pub fn format(self, grade: Grade) -> String {
        format!("{}/{}", grade.0, self.denominator)
    }

    /// Parses `"k/m"`. Any denominator is accepted as long as the value is
    /// exactly representable on this chain, so `"2/4"` is `1/2` on `D = 2`.
    pub fn parse(self, text: &str) -> Result<Grade> {
        let malformed = || Error::MalformedGrade(text.to_string());
        let (num, den) = text.trim().split_once('/').ok_or_else(malformed)?;
        let num: u64 = num.trim().parse().map_err(|_| malformed())?;
        let den: u64 = den.trim().parse().map_err(|_| malformed())?;
        self.from_ratio(num, den)
    }

    /// The grade as an `f64`, for display only.
    pub fn to_f64(self, grade: Grade) -> f64 {
        f64::from(grade.0) / f64::from(self.denominator)
    }
}

impl fmt::Display for GradeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_{}", self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_bounds() {
        assert!(GradeChain::new(0).is_err());
        assert!(GradeChain::new(256).is_err());
        let chain = GradeChain::new(4).unwrap();
        assert_eq!(chain.len(), 5);
        assert_eq!(chain.values().count(), 5);
        assert_eq!(chain.positive_values().count(), 4);
        assert!(chain.is_top(chain.top()));
        assert!(chain.bottom().is_zero());
    }

    #[test]
    fn parse_and_format() {
        let chain = GradeChain::new(2).unwrap();
        assert_eq!(chain.parse("1/2").unwrap(), chain.grade(1).unwrap());
        assert_eq!(chain.parse("2/4").unwrap(), chain.grade(1).unwrap());
        assert_eq!(chain.parse(" 1 / 1 ").unwrap(), chain.top());
        assert_eq!(chain.format(chain.top()), "2/2");
        assert!(matches!(
            chain.parse("1/3"),
            Err(Error::GradeOffChain { .. })
        ));
        assert!(matches!(
            chain.parse("3/2"),
            Err(Error::GradeOffChain { .. })
        ));
        assert!(matches!(chain.parse("0.5"), Err(Error::MalformedGrade(_))));
        assert!(matches!(
            chain.parse("1/0"),
            Err(Error::GradeOffChain { .. })
        ));
    }

    #[test]
    fn complement_is_involutive() {
        let chain = GradeChain::new(3).unwrap();
        for g in chain.values() {
            assert_eq!(chain.complement(chain.complement(g)), g);
        }
        assert_eq!(chain.complement(chain.bottom()), chain.top());
    }
}
