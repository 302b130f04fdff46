use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

/// Degree in Z/2.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn from_bit(bit: u8) -> Option<Parity> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// (-1)^self
    pub fn sign(self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn sum<'a>(ps: impl IntoIterator<Item = &'a Parity>) -> Parity {
        ps.into_iter().fold(Parity::Even, |a, &b| a + b)
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Mul for Parity {
    type Output = Parity;

    fn mul(self, rhs: Parity) -> Parity {
        if self.is_odd() && rhs.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        p.bit()
    }
}

impl TryFrom<u8> for Parity {
    type Error = String;

    fn try_from(v: u8) -> Result<Parity, String> {
        Parity::from_bit(v).ok_or_else(|| format!("parity must be 0 or 1, got {v}"))
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_arithmetic() {
        use Parity::*;
        assert_eq!(Odd + Odd, Even);
        assert_eq!(Odd + Even, Odd);
        assert_eq!(Odd * Odd, Odd);
        assert_eq!(Odd * Even, Even);
        assert_eq!(Odd.sign(), -1);
        assert_eq!(Parity::sum(&[Odd, Odd, Odd]), Odd);
    }
}
