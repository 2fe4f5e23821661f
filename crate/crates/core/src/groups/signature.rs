use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_rational::Ratio;

use crate::{Error, Result};

/// Signature `(g; n; m₁, …, m_l)` of a cofinite Fuchsian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    genus: u32,
    cusps: u32,
    orders: Vec<u32>,
}

impl Signature {
    /// Validates `mᵢ ≥ 2` and `2g - 2 + n + Σ(1 - 1/mᵢ) > 0`; sorts the orders.
    pub fn new(genus: u32, cusps: u32, mut orders: Vec<u32>) -> Result<Self> {
        if let Some(m) = orders.iter().find(|m| **m < 2) {
            return Err(Error::InvalidSignature(format!("cone order {m} < 2")));
        }
        orders.sort_unstable();
        let sig = Self { genus, cusps, orders };
        if sig.euler_characteristic() <= Ratio::from_integer(0) {
            return Err(Error::InvalidSignature(format!(
                "2g - 2 + n + Σ(1 - 1/m) = {} is not positive",
                sig.euler_characteristic()
            )));
        }
        Ok(sig)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn cusps(&self) -> u32 {
        self.cusps
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Number of cone points `l`.
    pub fn cone_points(&self) -> usize {
        self.orders.len()
    }

    /// `2g - 2 + n + Σ(1 - 1/mᵢ)` as an exact rational.
    pub fn euler_characteristic(&self) -> Ratio<i64> {
        let base = Ratio::from_integer(2 * i64::from(self.genus) - 2 + i64::from(self.cusps));
        self.orders
            .iter()
            .fold(base, |acc, &m| acc + Ratio::new(i64::from(m) - 1, i64::from(m)))
    }

    /// Area in units of `π`: `|X| / π = 2 (2g - 2 + n + Σ(1 - 1/mᵢ))`.
    pub fn area_over_pi(&self) -> Ratio<i64> {
        self.euler_characteristic() * 2
    }

    pub fn area(&self) -> f64 {
        let r = self.area_over_pi();
        PI * (*r.numer() as f64) / (*r.denom() as f64)
    }
}

impl core::fmt::Display for Signature {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({};{};", self.genus, self.cusps)?;
        if self.orders.is_empty() {
            write!(f, "-")?;
        }
        for (i, m) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn validation() {
        assert!(Signature::new(0, 0, vec![2, 3, 6]).is_err());
        assert!(Signature::new(0, 0, vec![2, 3, 7]).is_ok());
        assert!(Signature::new(1, 0, vec![]).is_err());
        assert!(Signature::new(0, 3, vec![]).is_ok());
        assert!(Signature::new(0, 1, vec![1, 2]).is_err());
    }

    #[test]
    fn sorted_and_displayed() {
        let s = Signature::new(0, 1, vec![3, 2, 2]).unwrap();
        assert_eq!(s.orders(), &[2, 2, 3]);
        assert_eq!(alloc::format!("{s}"), "(0;1;2,2,3)");
        assert_eq!(alloc::format!("{}", Signature::new(1, 1, vec![]).unwrap()), "(1;1;-)");
    }
}
