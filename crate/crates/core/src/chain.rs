//! The chain ring K = F_{2^m}[x]/(x^{2^s} + 1).
//!
//! Since x^{2^s} + 1 = (x+1)^{2^s} in characteristic 2, every element has a
//! unique expansion `Σ h_j (x+1)^j` with `j < 2^s`. [`KPoly`] stores exactly
//! these (x+1)-adic coefficients; products are power-series products in
//! `y = x + 1` truncated at `y^{2^s}`. The monomial basis is derived on demand.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Largest supported `s` (length `2^s`).
pub const MAX_S: u32 = 10;

/// `C(n, k) mod 2` by Lucas: odd iff the bits of `k` are contained in those of `n`.
#[inline]
pub fn binom_mod2(n: usize, k: usize) -> bool {
    k <= n && (k & !n) == 0
}

/// An element of K as its (x+1)-adic coefficient sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KPoly {
    coeffs: Vec<FieldElem>,
}

impl std::fmt::Debug for KPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KPoly{:?}", self.coeffs)
    }
}

impl KPoly {
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    pub fn coeff(&self, j: usize) -> FieldElem {
        self.coeffs.get(j).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        !self.coeff(0).is_zero()
    }

    /// Least `j` with a nonzero coefficient; `2^s` for zero.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    /// Index of the highest nonzero (x+1)-adic coefficient.
    pub fn adic_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }
}

/// Standard (monomial) coefficients to (x+1)-adic ones.
///
/// The change of basis is the Pascal matrix mod 2, which is an involution, so
/// the same routine serves both directions.
fn pascal_transform(p: &[FieldElem]) -> Vec<FieldElem> {
    let n = p.len();
    let mut out = vec![FieldElem::ZERO; n];
    for (i, &c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // x^i = Σ_{l ⊆ i} (x+1)^l and (x+1)^i = Σ_{l ⊆ i} x^l
        let mut l = i;
        loop {
            out[l] += c;
            if l == 0 {
                break;
            }
            l = (l - 1) & i;
        }
    }
    out
}

/// Direction for [`convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    StandardToAdic,
    AdicToStandard,
}

/// Change of basis between monomial and (x+1)-adic coefficients; input length must be a power of two.
pub fn convert(p: &[FieldElem], _direction: Basis) -> Result<Vec<FieldElem>> {
    if !p.len().is_power_of_two() {
        return Err(Error::Dimension(format!(
            "coefficient sequence of length {} is not 2^s",
            p.len()
        )));
    }
    Ok(pascal_transform(p))
}

/// Coefficients of `Σ_{j<r} h_j (x+1)^j x^{k-j}` modulo `(x+1)^r`, with `r = h.len()`,
/// evaluated by the binomial double sum `Σ_ℓ Σ_{j≤ℓ} h_j C(k-j, ℓ-j) (x+1)^ℓ`.
pub fn shift_expand(h: &[FieldElem], k: usize) -> Result<Vec<FieldElem>> {
    let r = h.len();
    if k < r {
        return Err(Error::Parameter(format!(
            "shift exponent {k} below length {r}"
        )));
    }
    Ok((0..r)
        .map(|l| {
            (0..=l)
                .filter(|&j| binom_mod2(k - j, l - j))
                .fold(FieldElem::ZERO, |acc, j| acc + h[j])
        })
        .collect())
}

/// Arithmetic context for K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRing {
    field: FieldCtx,
    s: u32,
}

impl ChainRing {
    pub fn new(field: FieldCtx, s: u32) -> Result<Self> {
        if !(1..=MAX_S).contains(&s) {
            return Err(Error::Parameter(format!("s = {s} outside 1..={MAX_S}")));
        }
        Ok(ChainRing { field, s })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// The code length `2^s`, also the nilpotency index of `x + 1`.
    pub fn n(&self) -> usize {
        1 << self.s
    }

    fn check(&self, f: &KPoly) -> Result<()> {
        if f.len() != self.n() {
            return Err(Error::Dimension(format!(
                "KPoly of length {} in a ring of length {}",
                f.len(),
                self.n()
            )));
        }
        Ok(())
    }

    pub fn zero(&self) -> KPoly {
        KPoly {
            coeffs: vec![FieldElem::ZERO; self.n()],
        }
    }

    pub fn one(&self) -> KPoly {
        self.constant(FieldElem::ONE)
    }

    pub fn constant(&self, c: FieldElem) -> KPoly {
        let mut p = self.zero();
        p.coeffs[0] = c;
        p
    }

    /// `(x+1)^k`, zero once `k ≥ 2^s`.
    pub fn y_pow(&self, k: usize) -> KPoly {
        let mut p = self.zero();
        if k < self.n() {
            p.coeffs[k] = FieldElem::ONE;
        }
        p
    }

    /// `x^k`; exponents reduce mod `2^s` since `x^{2^s} = 1`.
    pub fn x_pow(&self, k: usize) -> KPoly {
        let k = k % self.n();
        KPoly {
            coeffs: (0..self.n())
                .map(|l| {
                    if binom_mod2(k, l) {
                        FieldElem::ONE
                    } else {
                        FieldElem::ZERO
                    }
                })
                .collect(),
        }
    }

    /// Zero-pads or truncates adic coefficients to length `2^s`.
    pub fn from_adic_padded(&self, coeffs: &[FieldElem]) -> KPoly {
        let mut p = self.zero();
        for (d, &c) in p.coeffs.iter_mut().zip(coeffs) {
            *d = c;
        }
        p
    }

    pub fn from_adic(&self, coeffs: Vec<FieldElem>) -> Result<KPoly> {
        let p = KPoly { coeffs };
        self.check(&p)?;
        if let Some(bad) = p.coeffs.iter().find(|c| !self.field.contains(**c)) {
            return Err(Error::Dimension(format!(
                "coefficient {bad} outside the field"
            )));
        }
        Ok(p)
    }

    pub fn from_standard(&self, coeffs: &[FieldElem]) -> Result<KPoly> {
        if coeffs.len() != self.n() {
            return Err(Error::Dimension(format!(
                "{} standard coefficients for length {}",
                coeffs.len(),
                self.n()
            )));
        }
        self.from_adic(pascal_transform(coeffs))
    }

    pub fn to_standard(&self, f: &KPoly) -> Vec<FieldElem> {
        pascal_transform(&f.coeffs)
    }

    pub fn add(&self, f: &KPoly, g: &KPoly) -> KPoly {
        debug_assert_eq!(f.len(), g.len());
        KPoly {
            coeffs: f
                .coeffs
                .iter()
                .zip(&g.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: FieldElem, f: &KPoly) -> KPoly {
        KPoly {
            coeffs: f.coeffs.iter().map(|&a| self.field.mul(c, a)).collect(),
        }
    }

    /// Multiplication by `(x+1)^k`.
    pub fn shift_up(&self, f: &KPoly, k: usize) -> KPoly {
        let mut p = self.zero();
        for j in 0..self.n().saturating_sub(k) {
            p.coeffs[j + k] = f.coeffs[j];
        }
        p
    }

    /// Reduction modulo `(x+1)^r`.
    pub fn truncate(&self, f: &KPoly, r: usize) -> KPoly {
        let mut p = f.clone();
        for c in p.coeffs.iter_mut().skip(r) {
            *c = FieldElem::ZERO;
        }
        p
    }

    pub fn try_mul(&self, f: &KPoly, g: &KPoly) -> Result<KPoly> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.mul(f, g))
    }

    pub fn mul(&self, f: &KPoly, g: &KPoly) -> KPoly {
        debug_assert!(f.len() == self.n() && g.len() == self.n());
        let n = self.n();
        let mut out = vec![FieldElem::ZERO; n];
        let gdeg = match g.adic_degree() {
            Some(d) => d,
            None => return self.zero(),
        };
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..=gdeg.min(n - 1 - i) {
                let b = g.coeffs[j];
                if !b.is_zero() {
                    out[i + j] += self.field.mul(a, b);
                }
            }
        }
        KPoly { coeffs: out }
    }

    /// Valuation (with sentinel `2^s` for zero) and the unit flag.
    pub fn val_unit(&self, f: &KPoly) -> (usize, bool) {
        let v = f.valuation();
        (v, v == 0)
    }

    /// Splits `f = (x+1)^v · w` with `w` a unit; `w` is `f` shifted down and zero-padded.
    /// Returns `None` for zero.
    pub fn unit_part(&self, f: &KPoly) -> Option<(usize, KPoly)> {
        let v = f.valuation();
        if v == self.n() {
            return None;
        }
        Some((v, self.from_adic_padded(&f.coeffs[v..])))
    }

    /// Inverse of a unit by Newton iteration `g ← f·g²`, doubling precision each step.
    pub fn inv_unit(&self, f: &KPoly) -> Result<KPoly> {
        self.check(f)?;
        if !f.is_unit() {
            return Err(Error::NotInvertible);
        }
        let mut g = self.constant(self.field.inv(f.coeff(0))?);
        let mut precision = 1;
        while precision < self.n() {
            g = self.mul(f, &self.mul(&g, &g));
            precision *= 2;
        }
        Ok(g)
    }

    /// `f(x^{-1})`, using `x^{-1} = x^{2^s - 1}`.
    pub fn sub_inverse(&self, f: &KPoly) -> KPoly {
        let n = self.n();
        let std = self.to_standard(f);
        let mut out = vec![FieldElem::ZERO; n];
        for (i, c) in std.into_iter().enumerate() {
            out[(n - i) % n] = c;
        }
        KPoly {
            coeffs: pascal_transform(&out),
        }
    }

    /// Degree of the monomial representative with exponents below `2^s`.
    pub fn degree(&self, f: &KPoly) -> Result<usize> {
        self.to_standard(f)
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(Error::UndefinedDegree)
    }

    /// The reciprocal `x^{deg f} f(x^{-1})`.
    pub fn recip(&self, f: &KPoly) -> Result<KPoly> {
        let std = self.to_standard(f);
        let deg = std
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(Error::UndefinedDegree)?;
        let mut out = vec![FieldElem::ZERO; self.n()];
        for i in 0..=deg {
            out[deg - i] = std[i];
        }
        Ok(KPoly {
            coeffs: pascal_transform(&out),
        })
    }

    /// Every element of K, zero first, in increasing lexicographic order of adic coefficients.
    /// Intended for tiny rings only.
    pub fn all_elements(&self) -> Vec<KPoly> {
        self.all_below(self.n())
    }

    /// Every element of the form `Σ_{j<r} h_j (x+1)^j`.
    pub fn all_below(&self, r: usize) -> Vec<KPoly> {
        let q = self.field.order();
        let mut out = vec![self.zero()];
        for j in (0..r.min(self.n())).rev() {
            let mut next = Vec::with_capacity(out.len() * q as usize);
            for c in self.field.elements() {
                for p in &out {
                    let mut p = p.clone();
                    p.coeffs[j] = c;
                    next.push(p);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Units of the form `Σ_{j<r} h_j (x+1)^j`.
    pub fn units_below(&self, r: usize) -> Vec<KPoly> {
        self.all_below(r)
            .into_iter()
            .filter(|p| p.is_unit())
            .collect()
    }
}
