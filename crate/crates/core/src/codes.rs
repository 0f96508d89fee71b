//! Canonical generators of the eight types of cyclic codes of length `2^s`
//! over R₃, their closed-form structure degrees `L, U, V, W`, and the
//! torsion profile each type implies.
//!
//! Throughout, `y = x + 1`, `n = 2^s`, and a zero `h_i` makes its exponent
//! `t_i` irrelevant (the term vanishes), so inequalities on `t_i` are only
//! enforced for nonzero `h_i`.

use serde::{Deserialize, Serialize};

use crate::chain::{ChainRing, KPoly};
use crate::error::{Error, Result};
use crate::ring::{CodeRing, RingPoly};

/// Parameters of a code in one of the eight canonical forms.
///
/// One record serves all types; the type tag says which slots are used:
///
/// | type | generators                                                        | slots |
/// |------|-------------------------------------------------------------------|-------|
/// | 1    | `⟨1⟩` (a = 0) or `⟨0⟩` (a = n)                                     | a |
/// | 2    | `u²y^τ`                                                            | c = τ |
/// | 3    | `u y^δ + u² y^t h`                                                 | a = δ, t1 = t, h1 = h |
/// | 4    | type 3 plus `u² y^ω`                                               | a = δ, t1 = t, h1 = h, c = ω |
/// | 5    | `y^a + u y^{t1} h1 + u² y^{t2} h2`                                 | a, t1, h1, t2, h2 |
/// | 6    | type 5 plus `u² y^c`                                               | + c |
/// | 7    | type 5 plus `u y^b + u² y^{t3} h3`                                 | + b, t3, h3 |
/// | 8    | type 7 plus `u² y^c`                                               | + c |
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    pub type_tag: u8,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub c: Option<usize>,
    pub t1: Option<usize>,
    pub t2: Option<usize>,
    pub t3: Option<usize>,
    pub h1: Option<KPoly>,
    pub h2: Option<KPoly>,
    pub h3: Option<KPoly>,
}

impl CodeSpec {
    fn empty(type_tag: u8) -> Self {
        CodeSpec {
            type_tag,
            a: None,
            b: None,
            c: None,
            t1: None,
            t2: None,
            t3: None,
            h1: None,
            h2: None,
            h3: None,
        }
    }

    /// `⟨1⟩`.
    pub fn whole() -> Self {
        CodeSpec {
            a: Some(0),
            ..Self::empty(1)
        }
    }

    /// `⟨0⟩`; `n` is the code length.
    pub fn zero(n: usize) -> Self {
        CodeSpec {
            a: Some(n),
            ..Self::empty(1)
        }
    }

    pub fn type2(tau: usize) -> Self {
        CodeSpec {
            c: Some(tau),
            ..Self::empty(2)
        }
    }

    pub fn type3(delta: usize, t: usize, h: KPoly) -> Self {
        CodeSpec {
            a: Some(delta),
            t1: Some(t),
            h1: Some(h),
            ..Self::empty(3)
        }
    }

    pub fn type4(delta: usize, t: usize, h: KPoly, omega: usize) -> Self {
        CodeSpec {
            type_tag: 4,
            c: Some(omega),
            ..Self::type3(delta, t, h)
        }
    }

    pub fn type5(a: usize, t1: usize, h1: KPoly, t2: usize, h2: KPoly) -> Self {
        CodeSpec {
            a: Some(a),
            t1: Some(t1),
            h1: Some(h1),
            t2: Some(t2),
            h2: Some(h2),
            ..Self::empty(5)
        }
    }

    pub fn type6(a: usize, t1: usize, h1: KPoly, t2: usize, h2: KPoly, c: usize) -> Self {
        CodeSpec {
            type_tag: 6,
            c: Some(c),
            ..Self::type5(a, t1, h1, t2, h2)
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn type7(
        a: usize,
        t1: usize,
        h1: KPoly,
        t2: usize,
        h2: KPoly,
        b: usize,
        t3: usize,
        h3: KPoly,
    ) -> Self {
        CodeSpec {
            type_tag: 7,
            b: Some(b),
            t3: Some(t3),
            h3: Some(h3),
            ..Self::type5(a, t1, h1, t2, h2)
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn type8(
        a: usize,
        t1: usize,
        h1: KPoly,
        t2: usize,
        h2: KPoly,
        b: usize,
        t3: usize,
        h3: KPoly,
        c: usize,
    ) -> Self {
        CodeSpec {
            type_tag: 8,
            c: Some(c),
            ..Self::type7(a, t1, h1, t2, h2, b, t3, h3)
        }
    }

    fn param(&self, name: &'static str, v: Option<usize>) -> Result<usize> {
        v.ok_or_else(|| Error::Validation {
            type_tag: self.type_tag,
            constraint: format!("parameter {name} present"),
        })
    }

    fn poly<'a>(&self, name: &'static str, v: &'a Option<KPoly>) -> Result<&'a KPoly> {
        v.as_ref().ok_or_else(|| Error::Validation {
            type_tag: self.type_tag,
            constraint: format!("parameter {name} present"),
        })
    }

    fn fail(&self, constraint: impl Into<String>) -> Error {
        Error::Validation {
            type_tag: self.type_tag,
            constraint: constraint.into(),
        }
    }
}

/// Closed-form structure degrees; entries are `None` when the type does not define them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructDegrees {
    pub l: Option<usize>,
    pub u: Option<usize>,
    pub v: Option<usize>,
    pub w: Option<usize>,
}

/// `(T0, T1, T2)`: `Tor_i(C) = ⟨(x+1)^{T_i}⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorsionProfile {
    pub t0: usize,
    pub t1: usize,
    pub t2: usize,
}

/// A closed-form value together with the case of its formula that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluated {
    pub value: usize,
    pub branch: String,
}

fn min_of(xs: &[i64]) -> usize {
    let v = *xs.iter().min().expect("nonempty");
    debug_assert!(v >= 0);
    v.max(0) as usize
}

/// Largest `k ≤ 2^s` with `(x+1)^k | f`; the zero polynomial gives `2^s`.
pub fn divisibility(f: &KPoly) -> usize {
    f.valuation()
}

/// `L = min{k : u²y^k ∈ ⟨u y^δ + u² y^t h⟩}`.
pub fn struct_l(n: usize, delta: usize, t: usize, h_nonzero: bool) -> usize {
    if h_nonzero {
        min_of(&[delta as i64, n as i64 - delta as i64 + t as i64])
    } else {
        delta
    }
}

/// `U = min{k : u y^k + u² g ∈ ⟨y^a + u y^{t1} h1 + ...⟩}`.
pub fn struct_u(n: usize, a: usize, t1: usize, h1_nonzero: bool) -> usize {
    if h1_nonzero {
        min_of(&[a as i64, n as i64 - a as i64 + t1 as i64])
    } else {
        a
    }
}

/// `V = min{k : u²y^k ∈ ⟨y^a + u y^{t1} h1 + u² y^{t2} h2⟩}` in closed form.
pub fn struct_v(
    k: &ChainRing,
    a: usize,
    t1: usize,
    h1: &KPoly,
    t2: usize,
    h2: &KPoly,
) -> Result<Evaluated> {
    let n = k.n() as i64;
    let (a_, t1_, t2_) = (a as i64, t1 as i64, t2 as i64);
    let ev = |value, branch: &str| Evaluated {
        value,
        branch: branch.to_string(),
    };
    let alpha1 = || -> Result<i64> {
        // h1 - h2 h1^{-1}
        let q = k.mul(h2, &k.inv_unit(h1)?);
        Ok(divisibility(&k.add(h1, &q)) as i64)
    };
    Ok(match (h1.is_zero(), h2.is_zero()) {
        (true, true) => ev(a, "V1"),
        (true, false) => ev(min_of(&[a_, n - a_ + t2_]), "V2"),
        (false, h2_zero) => {
            let degenerate = 2 * t1_ == a_ + t2_;
            if a_ <= n - a_ + t1_ {
                if h2_zero {
                    ev(min_of(&[a_, n - 2 * a_ + 2 * t1_]), "V3")
                } else if !degenerate {
                    ev(min_of(&[a_, n - a_ + t2_, n - 2 * a_ + 2 * t1_]), "V4")
                } else {
                    ev(min_of(&[a_, n - a_ + t2_ + alpha1()?]), "V5")
                }
            } else if h2_zero {
                ev(t1, "V6")
            } else if !degenerate {
                ev(min_of(&[t1_, a_ + t2_ - t1_]), "V7")
            } else {
                ev(min_of(&[n + t1_ - a_, t1_ + alpha1()?]), "V8")
            }
        }
    })
}

/// `W = min{k : u²y^k ∈ ⟨y^a + u y^{t1} h1 + u² y^{t2} h2, u y^b + u² y^{t3} h3⟩}` in closed form.
///
/// Expects `b < U ≤ a` and, for nonzero `h1`, `t1 < b`.
#[allow(clippy::too_many_arguments)]
pub fn struct_w(
    k: &ChainRing,
    a: usize,
    b: usize,
    t1: usize,
    h1: &KPoly,
    t2: usize,
    h2: &KPoly,
    t3: usize,
    h3: &KPoly,
) -> Evaluated {
    let n = k.n() as i64;
    let (a_, b_, t1_, t2_, t3_) = (a as i64, b as i64, t1 as i64, t2 as i64, t3 as i64);
    let ev = |value, branch: String| Evaluated { value, branch };
    match (h1.is_zero(), h2.is_zero(), h3.is_zero()) {
        (true, true, true) => ev(b, "W1".into()),
        (true, true, false) => ev(min_of(&[b_, a_ - b_ + t3_]), "W2".into()),
        (true, false, true) => ev(min_of(&[n - a_ + t2_, b_]), "W3".into()),
        (true, false, false) => ev(min_of(&[n - a_ + t2_, b_, a_ - b_ + t3_]), "W4".into()),
        (false, true, true) => ev(t1, "W5".into()),
        (false, false, true) => ev(min_of(&[n - a_ + t2_, t1_]), "W6".into()),
        (false, _, false) => {
            let base3 = n - a_ + t1_ - b_ + t3_;
            let (beta3, b3) = if h2.is_zero() {
                (base3, 1)
            } else if t2_ != t1_ - b_ + t3_ {
                (base3.min(n - a_ + t2_), 2)
            } else {
                // h2 - h1 h3
                let alpha3 = divisibility(&k.add(h2, &k.mul(h1, h3))) as i64;
                (base3 + alpha3, 3)
            };
            let (beta4, b4) = if t1_ != a_ - b_ + t3_ {
                (t1_.min(a_ - b_ + t3_), 1)
            } else {
                let alpha4 = divisibility(&k.add(h1, h3)) as i64;
                (t1_ + alpha4, 2)
            };
            ev(
                min_of(&[beta3, beta4, b_, n - b_ + t3_]),
                format!("W7/beta3.{b3}/beta4.{b4}"),
            )
        }
    }
}

fn nonzero(h: &KPoly) -> bool {
    !h.is_zero()
}

/// Structure degrees of a validated-shape spec (slots must be present for its type).
pub fn struct_degrees(k: &ChainRing, spec: &CodeSpec) -> Result<StructDegrees> {
    let n = k.n();
    let mut out = StructDegrees::default();
    match spec.type_tag {
        3 | 4 => {
            let h = spec.poly("h", &spec.h1)?;
            out.l = Some(struct_l(
                n,
                spec.param("delta", spec.a)?,
                spec.param("t", spec.t1)?,
                nonzero(h),
            ));
        }
        5..=8 => {
            let a = spec.param("a", spec.a)?;
            let t1 = spec.param("t1", spec.t1)?;
            let t2 = spec.param("t2", spec.t2)?;
            let h1 = spec.poly("h1", &spec.h1)?;
            let h2 = spec.poly("h2", &spec.h2)?;
            out.u = Some(struct_u(n, a, t1, nonzero(h1)));
            if spec.type_tag <= 6 {
                out.v = Some(struct_v(k, a, t1, h1, t2, h2)?.value);
            } else {
                let b = spec.param("b", spec.b)?;
                let t3 = spec.param("t3", spec.t3)?;
                let h3 = spec.poly("h3", &spec.h3)?;
                out.w = Some(struct_w(k, a, b, t1, h1, t2, h2, t3, h3).value);
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Checks the spec's slots and inequality chain against the ring.
pub fn validate(k: &ChainRing, spec: &CodeSpec) -> Result<()> {
    let n = k.n();
    for h in [&spec.h1, &spec.h2, &spec.h3].into_iter().flatten() {
        if h.len() != n {
            return Err(Error::Dimension(format!(
                "h of length {} for 2^s = {n}",
                h.len()
            )));
        }
        if !h.is_zero() && !h.is_unit() {
            return Err(spec.fail("h_i is zero or a unit"));
        }
    }
    let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(spec.fail(what)) };
    match spec.type_tag {
        1 => {
            let a = spec.param("a", spec.a)?;
            need(
                a == 0 || a == n,
                "a = 0 (whole ring) or a = 2^s (zero code)",
            )
        }
        2 => need(spec.param("tau", spec.c)? < n, "tau <= 2^s - 1"),
        3 | 4 => {
            let delta = spec.param("delta", spec.a)?;
            let t = spec.param("t", spec.t1)?;
            let h = spec.poly("h", &spec.h1)?;
            need(delta < n, "delta <= 2^s - 1")?;
            let l = struct_l(n, delta, t, nonzero(h));
            need(l <= delta, "L <= delta")?;
            if spec.type_tag == 3 {
                need(!nonzero(h) || t < l, "t < L")
            } else {
                let omega = spec.param("omega", spec.c)?;
                need(omega < l, "omega < L")?;
                need(!nonzero(h) || t < omega, "t < omega")
            }
        }
        5..=8 => {
            let a = spec.param("a", spec.a)?;
            let t1 = spec.param("t1", spec.t1)?;
            let t2 = spec.param("t2", spec.t2)?;
            let h1 = spec.poly("h1", &spec.h1)?;
            let h2 = spec.poly("h2", &spec.h2)?;
            need(a < n, "a <= 2^s - 1")?;
            need(a >= 1 || spec.type_tag != 5, "1 <= a")?;
            let u = struct_u(n, a, t1, nonzero(h1));
            match spec.type_tag {
                5 | 6 => {
                    need(!nonzero(h1) || t1 < u, "t1 < U")?;
                    let v = struct_v(k, a, t1, h1, t2, h2)?.value;
                    need(v <= a, "V <= a")?;
                    if spec.type_tag == 5 {
                        need(!nonzero(h2) || t2 < v, "t2 < V")
                    } else {
                        let c = spec.param("c", spec.c)?;
                        need(c < v, "c < V")?;
                        need(!nonzero(h2) || t2 < c, "t2 < c")
                    }
                }
                _ => {
                    let b = spec.param("b", spec.b)?;
                    let t3 = spec.param("t3", spec.t3)?;
                    let h3 = spec.poly("h3", &spec.h3)?;
                    need(u <= a, "U <= a")?;
                    need(b < u, "b < U")?;
                    need(!nonzero(h1) || t1 < b, "t1 < b")?;
                    let w = struct_w(k, a, b, t1, h1, t2, h2, t3, h3).value;
                    need(!nonzero(h2) || t2 < w, "t2 < W")?;
                    need(!nonzero(h3) || t3 < w, "t3 < W")?;
                    if spec.type_tag == 8 {
                        let c = spec.param("c", spec.c)?;
                        need(w < u, "W < U")?;
                        need(c < w, "c < W")?;
                    }
                    Ok(())
                }
            }
        }
        t => Err(Error::Validation {
            type_tag: t,
            constraint: "type tag in 1..=8".into(),
        }),
    }
}

/// Validates the spec and emits its canonical generators.
pub fn code_make(r: &CodeRing, spec: &CodeSpec) -> Result<Vec<RingPoly>> {
    let k = r.chain();
    validate(k, spec)?;
    Ok(generators_unchecked(r, spec))
}

/// The generators a spec describes, without checking the inequality chain.
///
/// Used by the exhaustive sweep, which relaxes the chains to plain bounds.
pub fn generators_unchecked(r: &CodeRing, spec: &CodeSpec) -> Vec<RingPoly> {
    let k = r.chain();
    let n = k.n();
    let zero = k.zero();
    let term = |t: Option<usize>, h: &Option<KPoly>| -> KPoly {
        match h {
            Some(h) if !h.is_zero() => k.shift_up(h, t.unwrap_or(0)),
            _ => zero.clone(),
        }
    };
    let u2_pow = |e: usize| r.u_pow_times(2, &k.y_pow(e));
    match spec.type_tag {
        1 => {
            if spec.a == Some(0) {
                vec![r.one()]
            } else {
                vec![]
            }
        }
        2 => vec![u2_pow(spec.c.unwrap_or(n))],
        3 | 4 => {
            let g = r.new_poly(
                zero.clone(),
                k.y_pow(spec.a.unwrap_or(n)),
                term(spec.t1, &spec.h1),
            );
            let mut gens = vec![g];
            if spec.type_tag == 4 {
                gens.push(u2_pow(spec.c.unwrap_or(n)));
            }
            gens
        }
        _ => {
            let g1 = r.new_poly(
                k.y_pow(spec.a.unwrap_or(n)),
                term(spec.t1, &spec.h1),
                term(spec.t2, &spec.h2),
            );
            let mut gens = vec![g1];
            if matches!(spec.type_tag, 7 | 8) {
                gens.push(r.new_poly(
                    zero.clone(),
                    k.y_pow(spec.b.unwrap_or(n)),
                    term(spec.t3, &spec.h3),
                ));
            }
            if matches!(spec.type_tag, 6 | 8) {
                gens.push(u2_pow(spec.c.unwrap_or(n)));
            }
            gens
        }
    }
}

/// Torsion degrees implied by the type table.
pub fn torsion_profile(k: &ChainRing, spec: &CodeSpec) -> Result<TorsionProfile> {
    let n = k.n();
    let d = struct_degrees(k, spec)?;
    let p = |t0, t1, t2| TorsionProfile { t0, t1, t2 };
    let get = |v: Option<usize>, name| spec.param(name, v);
    Ok(match spec.type_tag {
        1 => {
            let a = get(spec.a, "a")?;
            p(a, a, a)
        }
        2 => p(n, n, get(spec.c, "tau")?),
        3 => p(n, get(spec.a, "delta")?, d.l.unwrap_or(n)),
        4 => p(n, get(spec.a, "delta")?, get(spec.c, "omega")?),
        5 => p(get(spec.a, "a")?, d.u.unwrap_or(n), d.v.unwrap_or(n)),
        6 => p(get(spec.a, "a")?, d.u.unwrap_or(n), get(spec.c, "c")?),
        7 => p(get(spec.a, "a")?, get(spec.b, "b")?, d.w.unwrap_or(n)),
        8 => p(get(spec.a, "a")?, get(spec.b, "b")?, get(spec.c, "c")?),
        t => {
            return Err(Error::Validation {
                type_tag: t,
                constraint: "type tag in 1..=8".into(),
            })
        }
    })
}
