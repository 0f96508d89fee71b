//! The code ambient ring R = R₃[x]/(x^{2^s} + 1) with R₃ = F_{2^m}[u]/(u³).
//!
//! An element is a triple of [`KPoly`] parts `p0 + u·p1 + u²·p2`. For linear
//! algebra it is flattened to a vector of length `3·2^s` in monomial
//! coordinates: index `part·2^s + i` holds the coefficient of `u^part x^i`.

use crate::chain::{ChainRing, KPoly};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingPoly {
    pub p0: KPoly,
    pub p1: KPoly,
    pub p2: KPoly,
}

impl RingPoly {
    pub fn parts(&self) -> [&KPoly; 3] {
        [&self.p0, &self.p1, &self.p2]
    }

    pub fn is_zero(&self) -> bool {
        self.parts().iter().all(|p| p.is_zero())
    }
}

/// Arithmetic context for R.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeRing {
    k: ChainRing,
}

impl CodeRing {
    pub fn new(field: FieldCtx, s: u32) -> Result<Self> {
        Ok(CodeRing {
            k: ChainRing::new(field, s)?,
        })
    }

    pub fn from_chain(k: ChainRing) -> Self {
        CodeRing { k }
    }

    pub fn chain(&self) -> &ChainRing {
        &self.k
    }

    pub fn field(&self) -> &FieldCtx {
        self.k.field()
    }

    pub fn s(&self) -> u32 {
        self.k.s()
    }

    pub fn n(&self) -> usize {
        self.k.n()
    }

    /// Length of the flattened coordinate vector, `3·2^s`.
    pub fn dim(&self) -> usize {
        3 * self.n()
    }

    pub fn zero(&self) -> RingPoly {
        self.new_poly(self.k.zero(), self.k.zero(), self.k.zero())
    }

    pub fn one(&self) -> RingPoly {
        self.new_poly(self.k.one(), self.k.zero(), self.k.zero())
    }

    pub fn new_poly(&self, p0: KPoly, p1: KPoly, p2: KPoly) -> RingPoly {
        RingPoly { p0, p1, p2 }
    }

    /// Checks that all three parts have length `2^s`.
    pub fn check(&self, f: &RingPoly) -> Result<()> {
        for (i, p) in f.parts().iter().enumerate() {
            if p.len() != self.n() {
                return Err(Error::Dimension(format!(
                    "u^{i} part has length {}, expected {}",
                    p.len(),
                    self.n()
                )));
            }
        }
        Ok(())
    }

    /// `u^i · f` embedded as a ring element (`i ≤ 2`).
    pub fn u_pow_times(&self, i: usize, f: &KPoly) -> RingPoly {
        let z = self.k.zero();
        match i {
            0 => self.new_poly(f.clone(), z.clone(), z),
            1 => self.new_poly(z.clone(), f.clone(), z),
            2 => self.new_poly(z.clone(), z, f.clone()),
            _ => self.zero(),
        }
    }

    pub fn add(&self, f: &RingPoly, g: &RingPoly) -> RingPoly {
        self.new_poly(
            self.k.add(&f.p0, &g.p0),
            self.k.add(&f.p1, &g.p1),
            self.k.add(&f.p2, &g.p2),
        )
    }

    pub fn try_mul(&self, f: &RingPoly, g: &RingPoly) -> Result<RingPoly> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.mul(f, g))
    }

    pub fn mul(&self, f: &RingPoly, g: &RingPoly) -> RingPoly {
        let k = &self.k;
        let p0 = k.mul(&f.p0, &g.p0);
        let p1 = k.add(&k.mul(&f.p0, &g.p1), &k.mul(&f.p1, &g.p0));
        let p2 = k.add(
            &k.add(&k.mul(&f.p0, &g.p2), &k.mul(&f.p1, &g.p1)),
            &k.mul(&f.p2, &g.p0),
        );
        self.new_poly(p0, p1, p2)
    }

    /// Reduction modulo `u`.
    pub fn mu(&self, f: &RingPoly) -> KPoly {
        f.p0.clone()
    }

    /// Flattens to monomial coordinates.
    pub fn to_vector(&self, f: &RingPoly) -> Vec<FieldElem> {
        f.parts()
            .iter()
            .flat_map(|p| self.k.to_standard(p))
            .collect()
    }

    pub fn from_vector(&self, v: &[FieldElem]) -> Result<RingPoly> {
        let n = self.n();
        if v.len() != 3 * n {
            return Err(Error::Dimension(format!(
                "vector of length {} for R of dimension {}",
                v.len(),
                3 * n
            )));
        }
        Ok(self.new_poly(
            self.k.from_standard(&v[..n])?,
            self.k.from_standard(&v[n..2 * n])?,
            self.k.from_standard(&v[2 * n..])?,
        ))
    }

    /// Reciprocal `x^{deg f} f(x^{-1})`, with `deg f` the largest monomial
    /// exponent occurring in any part.
    pub fn recip(&self, f: &RingPoly) -> Result<RingPoly> {
        self.from_vector(&recip_vector(self.n(), &self.to_vector(f))?)
    }
}

/// Reciprocal on flattened monomial coordinates.
pub fn recip_vector(n: usize, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let deg = (0..n)
        .rev()
        .find(|&i| (0..3).any(|p| !v[p * n + i].is_zero()))
        .ok_or(Error::UndefinedDegree)?;
    let mut out = vec![FieldElem::ZERO; 3 * n];
    for p in 0..3 {
        for i in 0..=deg {
            out[p * n + deg - i] = v[p * n + i];
        }
    }
    Ok(out)
}

/// Multiplication by `x` on flattened coordinates (cyclic shift in each part).
pub fn x_times_vector(n: usize, v: &[FieldElem]) -> Vec<FieldElem> {
    let mut out = vec![FieldElem::ZERO; v.len()];
    for p in 0..3 {
        for i in 0..n {
            out[p * n + (i + 1) % n] = v[p * n + i];
        }
    }
    out
}

/// Multiplication by `u` on flattened coordinates.
pub fn u_times_vector(n: usize, v: &[FieldElem]) -> Vec<FieldElem> {
    let mut out = vec![FieldElem::ZERO; v.len()];
    out[n..].copy_from_slice(&v[..2 * n]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(m: u32, s: u32) -> CodeRing {
        CodeRing::new(FieldCtx::new(m).unwrap(), s).unwrap()
    }

    fn arb_poly(m: u32, s: u32) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..(1 << m), 3usize << s)
    }

    fn poly(r: &CodeRing, bits: &[u32]) -> RingPoly {
        let v: Vec<_> = bits
            .iter()
            .map(|&b| FieldElem::from_bits_unchecked(b))
            .collect();
        r.from_vector(&v).unwrap()
    }

    #[test]
    fn nilpotency_examples() {
        let r = ring(1, 3);
        let k = r.chain();
        let u = r.u_pow_times(1, &k.one());
        let u2 = r.u_pow_times(2, &k.one());
        assert!(r.mul(&u, &u2).is_zero());
        let g = r.u_pow_times(1, &k.y_pow(4));
        assert!(r.mul(&g, &g).is_zero());
        let f = r.add(
            &r.u_pow_times(0, &k.y_pow(4)),
            &r.u_pow_times(2, &k.x_pow(3)),
        );
        assert!(r.mul(&f, &g).is_zero());
        assert!(r.try_mul(&f, &ring(1, 2).one()).is_err());
    }

    #[test]
    fn mu_examples() {
        let r = ring(1, 3);
        let k = r.chain();
        assert!(r.mu(&r.u_pow_times(1, &k.x_pow(2))).is_zero());
        let f = r.add(&r.u_pow_times(0, &k.y_pow(4)), &r.u_pow_times(1, &k.one()));
        assert_eq!(r.mu(&f), k.y_pow(4));
        assert_eq!(r.mu(&r.one()), k.one());
    }

    #[test]
    fn vector_shifts_match_ring_products() {
        let r = ring(2, 2);
        let k = r.chain();
        let f = poly(&r, &[1, 2, 0, 3, 0, 1, 1, 0, 2, 0, 0, 1]);
        let x = r.u_pow_times(0, &k.x_pow(1));
        let u = r.u_pow_times(1, &k.one());
        assert_eq!(
            r.from_vector(&x_times_vector(4, &r.to_vector(&f))).unwrap(),
            r.mul(&x, &f)
        );
        assert_eq!(
            r.from_vector(&u_times_vector(4, &r.to_vector(&f))).unwrap(),
            r.mul(&u, &f)
        );
    }

    proptest! {
        #[test]
        fn product_is_commutative_and_associative(a in arb_poly(2, 2), b in arb_poly(2, 2), c in arb_poly(2, 2)) {
            let r = ring(2, 2);
            let (a, b, c) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        }

        #[test]
        fn product_is_commutative_s3(a in arb_poly(1, 3), b in arb_poly(1, 3)) {
            let r = ring(1, 3);
            let (a, b) = (poly(&r, &a), poly(&r, &b));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        }
    }
}
