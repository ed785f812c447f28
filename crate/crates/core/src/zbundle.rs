//! Principal Z2-bundles modeled as vectors over F2.
//!
//! Each space declares a finite list of generator names; a class is a subset of
//! them, stored as a bitmask. Tensor product of bundles is XOR.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MotiveError, Result};
use crate::motive::Motive;
use crate::registry::{Registry, SpaceId};

pub const MAX_GENERATORS: usize = 64;

/// Coordinates of a class over a space's generators; bit `i` is generator `i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BundleBits(pub u64);

impl BundleBits {
    pub const ZERO: BundleBits = BundleBits(0);

    pub fn basis(i: usize) -> Self {
        debug_assert!(i < MAX_GENERATORS);
        BundleBits(1 << i)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn tensor(self, other: Self) -> Self {
        BundleBits(self.0 ^ other.0)
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub fn ones(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_GENERATORS).filter(move |i| bits >> i & 1 == 1)
    }

    pub fn shifted(self, by: usize) -> Self {
        if by >= MAX_GENERATORS {
            debug_assert!(self.is_zero());
            return BundleBits::ZERO;
        }
        BundleBits(self.0 << by)
    }
}

impl fmt::Debug for BundleBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

/// An F2-linear map between generator spaces, stored by columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct F2Matrix {
    /// `columns[j]` is the image of source-side basis vector `j`.
    pub columns: Vec<BundleBits>,
}

impl F2Matrix {
    pub fn apply(&self, v: BundleBits) -> Option<BundleBits> {
        let mut out = BundleBits::ZERO;
        for j in v.ones() {
            out = out.tensor(*self.columns.get(j)?);
        }
        Some(out)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &F2Matrix) -> Option<F2Matrix> {
        inner
            .columns
            .iter()
            .map(|c| self.apply(*c))
            .collect::<Option<Vec<_>>>()
            .map(|columns| F2Matrix { columns })
    }
}

/// The modeled subgroup of Z2(X): a space plus its ordered generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpace {
    pub space: SpaceId,
    pub generators: Vec<String>,
}

impl BundleSpace {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn class_of(&self, names: &[impl AsRef<str>]) -> Result<BundleClass> {
        let mut bits = BundleBits::ZERO;
        for name in names {
            let name = name.as_ref();
            let i = self
                .generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| MotiveError::unknown("bundle generator", format!("{}.{name}", self.space)))?;
            bits = bits.tensor(BundleBits::basis(i));
        }
        Ok(BundleClass::new(self.space.clone(), bits))
    }

    pub fn names_of(&self, bits: BundleBits) -> Vec<&str> {
        bits.ones()
            .map(|i| self.generators.get(i).map(String::as_str).unwrap_or("?"))
            .collect()
    }
}

/// Isomorphism class of a principal Z2-bundle on a registered space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BundleClass {
    pub space: SpaceId,
    pub bits: BundleBits,
}

impl BundleClass {
    pub fn new(space: SpaceId, bits: BundleBits) -> Self {
        Self { space, bits }
    }

    /// The trivial bundle `X × Z2`.
    pub fn trivial(space: SpaceId) -> Self {
        Self::new(space, BundleBits::ZERO)
    }

    pub fn is_trivial(&self) -> bool {
        self.bits.is_zero()
    }
}

/// `[P ⊗ Q]`.
pub fn bundle_tensor(p: &BundleClass, q: &BundleClass) -> Result<BundleClass> {
    if p.space != q.space {
        return Err(MotiveError::SpaceMismatch {
            left: p.space.to_string(),
            right: q.space.to_string(),
        });
    }
    Ok(BundleClass::new(p.space.clone(), p.bits.tensor(q.bits)))
}

/// `Υ(P)` as a unit of the group ring; `Υ(0) = 1`.
pub fn upsilon(p: &BundleClass) -> Motive {
    Motive::upsilon(p.space.clone(), p.bits)
}

/// A line bundle with a trivialization of its square, recorded with its class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareRootDatum {
    pub space: String,
    pub line_bundle: String,
    pub trivialization: String,
    #[serde(default)]
    pub class: Vec<String>,
    /// Other `(line bundle, trivialization)` pairs differing by a global square.
    #[serde(default)]
    pub equivalent: Vec<(String, String)>,
}

/// Looks up the class recorded for `(line bundle, trivialization)` on `space`.
pub fn from_square_root(reg: &Registry, space: &str, line_bundle: &str, trivialization: &str) -> Result<BundleClass> {
    let datum = reg
        .square_roots()
        .iter()
        .find(|d| {
            d.space == space
                && ((d.line_bundle == line_bundle && d.trivialization == trivialization)
                    || d.equivalent
                        .iter()
                        .any(|(l, t)| l == line_bundle && t == trivialization))
        })
        .ok_or_else(|| MotiveError::UnknownDatum {
            line_bundle: line_bundle.to_string(),
            trivialization: trivialization.to_string(),
        })?;
    reg.bundle_space(space)?.class_of(&datum.class)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> SpaceId {
        SpaceId::from("X")
    }

    #[test]
    fn tensor_with_trivial_is_identity() {
        let p = BundleClass::new(space(), BundleBits(0b101));
        let o = BundleClass::trivial(space());
        assert_eq!(bundle_tensor(&p, &o).unwrap(), p);
    }

    #[test]
    fn tensor_is_self_inverse() {
        let p = BundleClass::new(space(), BundleBits(0b1101));
        assert!(bundle_tensor(&p, &p).unwrap().is_trivial());
    }

    #[test]
    fn basis_addition() {
        let e1 = BundleClass::new(space(), BundleBits::basis(0));
        let e2 = BundleClass::new(space(), BundleBits::basis(1));
        assert_eq!(bundle_tensor(&e1, &e2).unwrap().bits, BundleBits(0b11));
    }

    #[test]
    fn tensor_across_spaces_fails() {
        let p = BundleClass::trivial(space());
        let q = BundleClass::trivial(SpaceId::from("Y"));
        assert!(matches!(bundle_tensor(&p, &q), Err(MotiveError::SpaceMismatch { .. })));
    }

    #[test]
    fn matrix_apply_and_compose() {
        let m = F2Matrix {
            columns: vec![BundleBits(0b01), BundleBits(0b11)],
        };
        assert_eq!(m.apply(BundleBits(0b11)), Some(BundleBits(0b10)));
        let id = F2Matrix {
            columns: vec![BundleBits(0b01), BundleBits(0b10)],
        };
        assert_eq!(m.compose(&id), Some(m.clone()));
        assert_eq!(m.apply(BundleBits(0b100)), None);
    }
}
