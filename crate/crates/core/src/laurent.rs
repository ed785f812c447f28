//! Laurent polynomials in `L^(1/2)` with arbitrary-precision integer coefficients.
//!
//! An exponent key `k` stands for `L^(k/2)`. Multiplication adds keys, which is
//! the `⊙` law `L^(m/2) ⊙ L^(n/2) = L^((m+n)/2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfLaurent {
    coeffs: BTreeMap<i64, BigInt>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `c · L^(k/2)`.
    pub fn monomial(half_exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(half_exp, c);
        }
        Self { coeffs }
    }

    /// `L^(k/2)`.
    pub fn l_half_pow(half_exp: i64) -> Self {
        Self::monomial(half_exp, 1)
    }

    /// `L^n` for integer `n`.
    pub fn l_pow(n: i64) -> Self {
        Self::monomial(2 * n, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `(L - 1)^n` for `n >= 0`.
    pub fn l_minus_one_pow(n: u32) -> Self {
        let base = Self::l_pow(1) - Self::one();
        (0..n).fold(Self::one(), |acc, _| &acc * &base)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// True when every exponent is an integer power of `L`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.keys().all(|k| k % 2 == 0)
    }

    pub fn coeff(&self, half_exp: i64) -> BigInt {
        self.coeffs.get(&half_exp).cloned().unwrap_or_default()
    }

    /// `(half_exp, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiply by `L^(k/2)`.
    pub fn shift(&self, half_exp: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (k + half_exp, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub(crate) fn add_term(&mut self, half_exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(half_exp).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&half_exp);
        }
    }

    /// Builds from raw pairs, summing duplicates and dropping zeros.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, &c.into());
        }
        out
    }

    /// Image of `L^(1/2) ↦ -1`-style substitution used by the forgetful map:
    /// `L^(k/2)` goes to `L^(k/2)` for even `k` and to `-L^((k-1)/2)` for odd `k`.
    pub(crate) fn forget_half_powers(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.terms() {
            if k.rem_euclid(2) == 0 {
                out.add_term(k, c);
            } else {
                out.add_term(k - 1, &-c);
            }
        }
        out
    }
}

impl Add<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for HalfLaurent {
    type Output = HalfLaurent;
    fn add(mut self, rhs: HalfLaurent) -> HalfLaurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, rhs: &HalfLaurent) {
        for (k, c) in rhs.terms() {
            self.add_term(k, c);
        }
    }
}

impl SubAssign<&HalfLaurent> for HalfLaurent {
    fn sub_assign(&mut self, rhs: &HalfLaurent) {
        for (k, c) in rhs.terms() {
            self.add_term(k, &-c);
        }
    }
}

impl Sub<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for HalfLaurent {
    type Output = HalfLaurent;
    fn sub(mut self, rhs: HalfLaurent) -> HalfLaurent {
        self -= &rhs;
        self
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        -&self
    }
}

impl Mul<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: HalfLaurent) -> HalfLaurent {
        &self * &rhs
    }
}

/// Renders `L^(k/2)` with the fixed conventions: `1`, `L`, `L^3`, `L^-1`, `L^(1/2)`, `L^(-3/2)`.
pub fn render_l_power(half_exp: i64) -> Option<String> {
    match half_exp {
        0 => None,
        2 => Some("L".to_string()),
        k if k % 2 == 0 => Some(format!("L^{}", k / 2)),
        k => Some(format!("L^({k}/2)")),
    }
}

impl fmt::Display for HalfLaurent {
    /// Highest power first, e.g. `L - 1` or `-L^(1/2) + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match render_l_power(k) {
                None => write!(f, "{abs}")?,
                Some(p) if abs.is_one() => f.write_str(&p)?,
                Some(p) => write!(f, "{abs}*{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfLaurent({self})")
    }
}
