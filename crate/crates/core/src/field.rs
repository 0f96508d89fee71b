//! Arithmetic in the binary extension field F_{2^m}.
//!
//! Elements live in the polynomial basis: bit `i` of a [`FieldElem`] is the
//! coefficient of `α^i`, where `α` is a root of the context's modulus.
//! Addition is XOR. For `m ≤ 8` multiplication and inversion go through
//! precomputed tables; larger fields fall back to shift-and-add.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

const TABLE_DEGREE: u32 = 8;

/// Low-weight irreducible polynomials of degree 1..=8, bit `i` = coefficient of `x^i`.
const DEFAULT_MODULI: [u32; 8] = [
    0b11,        // x + 1
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b1_0011,    // x^4 + x + 1
    0b10_0101,   // x^5 + x^2 + 1
    0b100_0011,  // x^6 + x + 1
    0b1000_0011, // x^7 + x + 1
    0x11b,       // x^8 + x^4 + x^3 + x + 1
];

/// An element of F_{2^m} as a bit vector in the polynomial basis.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Raw bit pattern; not checked against any context.
    pub const fn from_bits_unchecked(bits: u32) -> Self {
        FieldElem(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::Add for FieldElem {
    type Output = FieldElem;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElem) -> FieldElem {
        FieldElem(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElem) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field F_{2^m} together with its irreducible modulus.
#[derive(Clone)]
pub struct FieldCtx {
    m: u32,
    modulus: u32,
    mul_table: Option<Box<[u16]>>,
    inv_table: Option<Box<[u16]>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("m", &self.m)
            .field("modulus", &self.modulus_bit_string())
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// The field of degree `m` with the built-in default modulus.
    pub fn new(m: u32) -> Result<Self> {
        match m {
            1..=8 => Self::with_modulus(DEFAULT_MODULI[m as usize - 1]),
            _ => Err(Error::InvalidModulus(format!(
                "no built-in modulus for m = {m}; supply one explicitly"
            ))),
        }
    }

    /// The default modulus for degree `m`, if one is built in.
    pub fn default_modulus(m: u32) -> Option<u32> {
        DEFAULT_MODULI.get((m as usize).wrapping_sub(1)).copied()
    }

    /// Builds the field from a modulus given as a bit mask (bit `i` = coefficient of `x^i`).
    pub fn with_modulus(modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let m = 31 - modulus.leading_zeros();
        if m > MAX_DEGREE {
            return Err(Error::InvalidModulus(format!(
                "degree {m} exceeds the supported maximum {MAX_DEGREE}"
            )));
        }
        if modulus & 1 == 0 {
            return Err(Error::InvalidModulus(
                "constant term must be nonzero".into(),
            ));
        }
        if !is_irreducible(modulus) {
            return Err(Error::InvalidModulus(format!(
                "{} is reducible over F_2",
                bits_to_string(modulus, m + 1)
            )));
        }
        let mut ctx = FieldCtx {
            m,
            modulus,
            mul_table: None,
            inv_table: None,
        };
        if m <= TABLE_DEGREE {
            let q = 1usize << m;
            let mut mul = vec![0u16; q * q];
            let mut inv = vec![0u16; q];
            for a in 0..q {
                for b in 0..q {
                    let p = ctx.mul_slow(a as u32, b as u32);
                    mul[a * q + b] = p as u16;
                    if p == 1 {
                        inv[a] = b as u16;
                    }
                }
            }
            ctx.mul_table = Some(mul.into_boxed_slice());
            ctx.inv_table = Some(inv.into_boxed_slice());
        }
        Ok(ctx)
    }

    /// Parses a modulus written constant-term first, e.g. `"1101"` for `x^3 + x + 1`.
    pub fn from_bit_string(bits: &str) -> Result<Self> {
        Self::with_modulus(parse_bit_string(bits)?)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of field elements, `2^m`.
    pub fn order(&self) -> u32 {
        1 << self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The modulus as a constant-term-first bit string of length `m + 1`.
    pub fn modulus_bit_string(&self) -> String {
        bits_to_string(self.modulus, self.m + 1)
    }

    /// Wraps raw bits, rejecting values with bits at or above position `m`.
    pub fn elem(&self, bits: u32) -> Result<FieldElem> {
        if bits >> self.m != 0 {
            return Err(Error::Dimension(format!(
                "field element {bits:#b} has more than m = {} bits",
                self.m
            )));
        }
        Ok(FieldElem(bits))
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 >> self.m == 0
    }

    /// All field elements in increasing bit-value order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order()).map(FieldElem)
    }

    /// All nonzero field elements in increasing bit-value order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.order()).map(FieldElem)
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.mul_table {
            Some(t) => FieldElem(t[((a.0 as usize) << self.m) | b.0 as usize] as u32),
            None => FieldElem(self.mul_slow(a.0, b.0)),
        }
    }

    /// Multiplication with operand validation.
    pub fn checked_mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        self.elem(a.0)?;
        self.elem(b.0)?;
        Ok(self.mul(a, b))
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        self.elem(a.0)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.inv_table {
            Some(t) => FieldElem(t[a.0 as usize] as u32),
            None => self.pow(a, (self.order() - 2) as u64),
        })
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let mut a = a as u64;
        let mut b = b as u64;
        let top = 1u64 << self.m;
        let modulus = self.modulus as u64;
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= modulus;
            }
        }
        acc as u32
    }
}

/// Parses a constant-term-first bit string into a bit mask.
pub fn parse_bit_string(bits: &str) -> Result<u32> {
    let bits = bits.trim();
    if bits.is_empty() || bits.len() > 32 {
        return Err(Error::InvalidModulus(format!("bad bit string {bits:?}")));
    }
    let mut out = 0u32;
    for (i, ch) in bits.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => out |= 1 << i,
            _ => return Err(Error::InvalidModulus(format!("bad bit string {bits:?}"))),
        }
    }
    Ok(out)
}

fn bits_to_string(bits: u32, len: u32) -> String {
    (0..len)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Trial division by every polynomial of degree `1..=m/2`.
fn is_irreducible(p: u32) -> bool {
    let m = degree(p as u64);
    for d in 1..=m / 2 {
        for low in 0u64..(1 << d) {
            let divisor = (1u64 << d) | low;
            if poly_rem(p as u64, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(bits: u32) -> FieldElem {
        FieldElem(bits)
    }

    #[test]
    fn prime_field() {
        let f = FieldCtx::new(1).unwrap();
        assert_eq!(f.mul(e(1), e(1)), e(1));
        assert_eq!(f.inv(e(1)).unwrap(), e(1));
    }

    #[test]
    fn gf4_by_hand() {
        let f = FieldCtx::new(2).unwrap();
        // α = 0b10, α + 1 = 0b11
        assert_eq!(f.mul(e(0b10), e(0b10)), e(0b11));
        assert_eq!(f.mul(e(0b10), e(0b11)), e(1));
        assert_eq!(f.inv(e(0b10)).unwrap(), e(0b11));
        assert_eq!(f.inv(e(0b11)).unwrap(), e(0b10));
    }

    #[test]
    fn errors() {
        let f = FieldCtx::new(2).unwrap();
        assert_eq!(f.inv(FieldElem::ZERO), Err(Error::DivisionByZero));
        assert!(matches!(
            f.checked_mul(e(4), e(1)),
            Err(Error::Dimension(_))
        ));
        assert!(FieldCtx::with_modulus(0b101).is_err()); // x^2 + 1 = (x+1)^2
        assert!(FieldCtx::with_modulus(0b110).is_err()); // zero constant term
        assert!(FieldCtx::from_bit_string("1x1").is_err());
    }

    #[test]
    fn builtin_moduli_are_irreducible() {
        for m in 1..=8 {
            let f = FieldCtx::new(m).unwrap();
            assert_eq!(f.m(), m);
        }
        assert_eq!(FieldCtx::new(3).unwrap().modulus_bit_string(), "1101");
        assert_eq!(FieldCtx::from_bit_string("111").unwrap().modulus(), 0b111);
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        for m in 1..=3 {
            let f = FieldCtx::new(m).unwrap();
            let all: Vec<_> = f.elements().collect();
            for &a in &all {
                for &b in &all {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &all {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_exhaustive() {
        for m in 1..=8 {
            let f = FieldCtx::new(m).unwrap();
            for a in f.units() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE, "m={m} a={a}");
            }
        }
    }

    #[test]
    fn table_matches_shift_and_add() {
        // degree-9 field uses the slow path throughout
        let big = FieldCtx::with_modulus(0b10_0001_0001).unwrap(); // x^9 + x^4 + 1
        assert!(big.mul_table.is_none());
        let a = e(0b1_0110_1101);
        assert_eq!(big.mul(a, big.inv(a).unwrap()), FieldElem::ONE);
        let f = FieldCtx::new(8).unwrap();
        for a in (0..256).step_by(7) {
            for b in (0..256).step_by(5) {
                assert_eq!(f.mul(e(a), e(b)).0, f.mul_slow(a, b));
            }
        }
    }
}
