//! Brute-force cross-checks of the closed forms against ideal spans.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::KPoly;
use crate::codes::{
    code_make, generators_unchecked, struct_degrees, struct_v, struct_w, torsion_profile, validate,
    CodeSpec, StructDegrees, TorsionProfile,
};
use crate::duality::{
    dual_via_annihilator, dual_via_dot_product, is_self_dual, span_build, torsion_from_span,
    torsion_profile_of_span, IdealSpan,
};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::ring::{CodeRing, RingPoly};

/// Default cap on the number of parameter tuples the exhaustive sweep may visit.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Cap on draws for [`branch_covering_sample`].
pub const SAMPLE_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub self_dual: bool,
    pub degrees_span: StructDegrees,
    pub degrees_formula: StructDegrees,
    pub torsion_span: TorsionProfile,
    pub torsion_formula: TorsionProfile,
    pub discrepancies: Vec<String>,
}

impl OracleReport {
    pub fn consistent(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn min_member(r: &CodeRing, span: &IdealSpan, part: usize) -> usize {
    let k = r.chain();
    (0..r.n())
        .find(|&e| span.contains(r, &r.u_pow_times(part, &k.y_pow(e))))
        .unwrap_or(r.n())
}

/// `min{k : u²(x+1)^k ∈ ⟨gens⟩}` by membership.
pub fn span_min_u2(r: &CodeRing, gens: &[RingPoly]) -> usize {
    min_member(r, &span_build(r, gens), 2)
}

/// `min{k : u(x+1)^k + u²g ∈ ⟨gens⟩ for some g}` by membership modulo `u²R`.
pub fn span_min_u1(r: &CodeRing, gens: &[RingPoly]) -> usize {
    let mut with_u2 = gens.to_vec();
    with_u2.push(r.u_pow_times(2, &r.chain().one()));
    min_member(r, &span_build(r, &with_u2), 1)
}

/// Structure degrees read off spans of the generator prefixes that define them.
pub fn span_degrees(r: &CodeRing, spec: &CodeSpec) -> StructDegrees {
    let gens = generators_unchecked(r, spec);
    let mut out = StructDegrees::default();
    match spec.type_tag {
        3 | 4 => out.l = Some(span_min_u2(r, &gens[..1])),
        5 | 6 => {
            out.u = Some(span_min_u1(r, &gens[..1]));
            out.v = Some(span_min_u2(r, &gens[..1]));
        }
        7 | 8 => {
            out.u = Some(span_min_u1(r, &gens[..1]));
            out.w = Some(span_min_u2(r, &gens[..2]));
        }
        _ => {}
    }
    out
}

/// Compares closed-form degrees and torsion with their span values and tests self-duality.
pub fn oracle_check(r: &CodeRing, spec: &CodeSpec) -> Result<OracleReport> {
    let k = r.chain();
    let gens = code_make(r, spec)?;
    let span = span_build(r, &gens);
    let degrees_formula = struct_degrees(k, spec)?;
    let degrees_span = span_degrees(r, spec);
    let torsion_formula = torsion_profile(k, spec)?;
    let torsion_span = torsion_profile_of_span(&span);
    let mut discrepancies = Vec::new();
    for (name, f, s) in [
        ("L", degrees_formula.l, degrees_span.l),
        ("U", degrees_formula.u, degrees_span.u),
        ("V", degrees_formula.v, degrees_span.v),
        ("W", degrees_formula.w, degrees_span.w),
    ] {
        if f != s {
            discrepancies.push(format!("{name}: formula {f:?}, span {s:?}"));
        }
    }
    if torsion_formula != torsion_span {
        discrepancies.push(format!(
            "torsion: formula {torsion_formula:?}, span {torsion_span:?}"
        ));
    }
    let p = torsion_span;
    if !(p.t0 >= p.t1 && p.t1 >= p.t2) {
        discrepancies.push(format!("torsion not decreasing: {p:?}"));
    }
    Ok(OracleReport {
        self_dual: is_self_dual(r, &span)?,
        degrees_span,
        degrees_formula,
        torsion_span,
        torsion_formula,
        discrepancies,
    })
}

/// Both dual routes agree, `T_i(C⊥) = 2^s − T_{2−i}(C)` and `dim C + dim C⊥ = 3·2^s`.
pub fn dual_consistency_of_span(r: &CodeRing, span: &IdealSpan) -> bool {
    let a = dual_via_annihilator(r, span);
    let b = dual_via_dot_product(r, span);
    let n = r.n();
    a == b
        && span.dim() + a.dim() == r.dim()
        && (0..3).all(|i| torsion_from_span(&a, i) == n - torsion_from_span(span, 2 - i))
}

pub fn oracle_dual_consistency(r: &CodeRing, spec: &CodeSpec) -> Result<bool> {
    let gens = code_make(r, spec)?;
    Ok(dual_consistency_of_span(r, &span_build(r, &gens)))
}

/// Number of parameter tuples the exhaustive sweep visits.
pub fn exhaustive_size(r: &CodeRing) -> u128 {
    let n = r.n() as u128;
    let kk = (r.field().order() as u128).pow(r.n() as u32);
    // optional u² generator: n exponents or absent
    let c_opts = n + 1;
    let type1 = 2;
    let type2 = n;
    let type34 = n * kk * c_opts;
    let second = 1 + n * kk;
    let type58 = n * kk * kk * second * c_opts;
    type1 + type2 + type34 + type58
}

/// Every self-dual ideal of R, by brute force over a relaxed parameterization.
///
/// The first generator is `(x+1)^a + u f₁ + u² f₂` (or `u(x+1)^δ + u² f`) with
/// `f_i` ranging over all of K, followed by an optional `u(x+1)^b + u² f₃` and
/// an optional `u²(x+1)^c`. No inequality chain is imposed, so the sweep is a
/// superset of the canonical forms and does not depend on any closed form.
pub fn oracle_exhaustive(r: &CodeRing, budget: u128) -> Result<Vec<IdealSpan>> {
    let needed = exhaustive_size(r);
    if needed > budget {
        return Err(Error::Budget {
            needed,
            limit: budget,
        });
    }
    let k = r.chain();
    let n = r.n();
    let all = k.all_elements();
    let zero = k.zero();
    let u2 = |e: usize| r.u_pow_times(2, &k.y_pow(e));
    let with_tail = |mut gens: Vec<RingPoly>, c: usize| {
        if c < n {
            gens.push(u2(c));
        }
        gens
    };

    let mut spans: HashSet<IdealSpan> = HashSet::new();
    spans.insert(span_build(r, &[r.one()]));
    spans.insert(span_build(r, &[]));
    for tau in 0..n {
        spans.insert(span_build(r, &[u2(tau)]));
    }
    for delta in 0..n {
        for f in &all {
            let g = r.new_poly(zero.clone(), k.y_pow(delta), f.clone());
            for c in 0..=n {
                spans.insert(span_build(r, &with_tail(vec![g.clone()], c)));
            }
        }
    }
    let mut seconds: Vec<Option<RingPoly>> = vec![None];
    for b in 0..n {
        for f in &all {
            seconds.push(Some(r.new_poly(zero.clone(), k.y_pow(b), f.clone())));
        }
    }
    let firsts: Vec<RingPoly> = (0..n)
        .flat_map(|a| {
            let all = &all;
            all.iter().flat_map(move |f1| {
                all.iter()
                    .map(move |f2| r.new_poly(k.y_pow(a), f1.clone(), f2.clone()))
            })
        })
        .collect();
    let found: HashSet<IdealSpan> = firsts
        .par_iter()
        .fold(HashSet::new, |mut acc, g1| {
            for g2 in &seconds {
                for c in 0..=n {
                    let mut gens = vec![g1.clone()];
                    gens.extend(g2.clone());
                    acc.insert(span_build(r, &with_tail(gens, c)));
                }
            }
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    spans.extend(found);

    let mut out = Vec::new();
    for span in spans {
        if is_self_dual(r, &span)? {
            out.push(span);
        }
    }
    out.sort_by(|a, b| a.basis().entries().cmp(b.basis().entries()));
    Ok(out)
}

/// Case label of the closed form a spec exercises, e.g. `"V5"` or `"W7/beta3.3/beta4.1"`.
pub fn branch_label(r: &CodeRing, spec: &CodeSpec) -> Result<String> {
    let k = r.chain();
    let z = k.zero();
    let get = |h: &Option<KPoly>| h.clone().unwrap_or_else(|| z.clone());
    let slot = |v: Option<usize>| v.unwrap_or(0);
    Ok(match spec.type_tag {
        3 | 4 => if get(&spec.h1).is_zero() { "L1" } else { "L2" }.to_string(),
        5 | 6 => {
            struct_v(
                k,
                slot(spec.a),
                slot(spec.t1),
                &get(&spec.h1),
                slot(spec.t2),
                &get(&spec.h2),
            )?
            .branch
        }
        7 | 8 => {
            struct_w(
                k,
                slot(spec.a),
                slot(spec.b),
                slot(spec.t1),
                &get(&spec.h1),
                slot(spec.t2),
                &get(&spec.h2),
                slot(spec.t3),
                &get(&spec.h3),
            )
            .branch
        }
        t => format!("T{t}"),
    })
}

/// Labels a branch-covering sample must contain.
pub fn required_branches() -> Vec<&'static str> {
    vec![
        "L1", "L2", "V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8", "W1", "W2", "W3", "W4", "W5",
        "W6", "W7", "beta3.1", "beta3.2", "beta3.3", "beta4.1", "beta4.2",
    ]
}

/// The labels from [`required_branches`] that `label` hits.
pub fn branch_tags(label: &str) -> Vec<String> {
    let mut parts = label.split('/');
    let head = parts.next().unwrap_or_default().to_string();
    std::iter::once(head)
        .chain(parts.map(str::to_string))
        .collect()
}

fn random_unit(r: &CodeRing, rng: &mut impl Rng) -> KPoly {
    let f = r.field();
    let q = f.order();
    let mut c: Vec<FieldElem> = (0..r.n())
        .map(|_| FieldElem::from_bits_unchecked(rng.gen_range(0..q)))
        .collect();
    c[0] = FieldElem::from_bits_unchecked(rng.gen_range(1..q));
    r.chain().from_adic_padded(&c)
}

fn random_elem(r: &CodeRing, rng: &mut impl Rng) -> KPoly {
    let q = r.field().order();
    let c: Vec<FieldElem> = (0..r.n())
        .map(|_| FieldElem::from_bits_unchecked(rng.gen_range(0..q)))
        .collect();
    r.chain().from_adic_padded(&c)
}

fn maybe_unit(r: &CodeRing, rng: &mut impl Rng) -> KPoly {
    if rng.gen_bool(0.3) {
        r.chain().zero()
    } else {
        random_unit(r, rng)
    }
}

/// A unit agreeing with `base` to order `j`; unit again when `base` is.
fn perturb(r: &CodeRing, rng: &mut impl Rng, base: &KPoly) -> KPoly {
    let k = r.chain();
    if rng.gen_bool(0.25) {
        return base.clone();
    }
    let j = rng.gen_range(1..r.n());
    k.add(base, &k.shift_up(&random_elem(r, rng), j))
}

/// One random spec of type 1..=8 (possibly invalid), with the degenerate
/// equalities and α-cancellations planted often enough to be reached.
pub fn random_spec(r: &CodeRing, rng: &mut impl Rng) -> CodeSpec {
    let k = r.chain();
    let n = r.n();
    let ty: u8 = match rng.gen_range(0..20) {
        0 => 1,
        1 => 2,
        2 | 3 => 3,
        4 | 5 => 4,
        6..=9 => 5,
        10 | 11 => 6,
        12..=16 => 7,
        _ => 8,
    };
    match ty {
        1 => {
            if rng.gen_bool(0.5) {
                CodeSpec::whole()
            } else {
                CodeSpec::zero(n)
            }
        }
        2 => CodeSpec::type2(rng.gen_range(0..n)),
        3 | 4 => {
            let delta = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            let h = maybe_unit(r, rng);
            if ty == 3 {
                CodeSpec::type3(delta, t, h)
            } else {
                CodeSpec::type4(delta, t, h, rng.gen_range(0..n))
            }
        }
        5 | 6 => {
            let a = rng.gen_range(1..n);
            let t1 = rng.gen_range(0..n);
            let h1 = maybe_unit(r, rng);
            // 2t1 = a + t2 makes α₁ relevant
            let t2 = if rng.gen_bool(0.4) && 2 * t1 >= a {
                2 * t1 - a
            } else {
                rng.gen_range(0..n)
            };
            let h2 = if !h1.is_zero() && rng.gen_bool(0.5) {
                // h2 h1^{-1} = h1 + (x+1)^j r  ⇒  α₁ ≥ j
                k.mul(&h1, &perturb(r, rng, &h1))
            } else {
                maybe_unit(r, rng)
            };
            if ty == 5 {
                CodeSpec::type5(a, t1, h1, t2, h2)
            } else {
                let c = rng.gen_range(0..n);
                CodeSpec::type6(a, t1, h1, t2, h2, c)
            }
        }
        _ => {
            let a = rng.gen_range(1..n);
            let b = rng.gen_range(0..n);
            let t1 = rng.gen_range(0..n);
            let t3 = rng.gen_range(0..n);
            let h1 = maybe_unit(r, rng);
            let h3 = if !h1.is_zero() && rng.gen_bool(0.4) {
                perturb(r, rng, &h1)
            } else {
                maybe_unit(r, rng)
            };
            let t2 = if rng.gen_bool(0.4) && t1 + t3 >= b {
                t1 + t3 - b
            } else {
                rng.gen_range(0..n)
            };
            let h2 = if !h1.is_zero() && !h3.is_zero() && rng.gen_bool(0.4) {
                let p = k.mul(&h1, &h3);
                if rng.gen_bool(0.3) {
                    p
                } else {
                    k.add(&p, &k.shift_up(&random_elem(r, rng), rng.gen_range(1..n)))
                }
            } else {
                maybe_unit(r, rng)
            };
            if ty == 7 {
                CodeSpec::type7(a, t1, h1, t2, h2, b, t3, h3)
            } else {
                let c = rng.gen_range(0..n);
                CodeSpec::type8(a, t1, h1, t2, h2, b, t3, h3, c)
            }
        }
    }
}

/// Draws valid specs until every required branch is hit and at least `min_count`
/// specs are kept, or [`SAMPLE_CAP`] draws are spent.
///
/// Returns the kept specs and the required labels that were never reached.
pub fn branch_covering_sample(
    r: &CodeRing,
    rng: &mut impl Rng,
    min_count: usize,
) -> Result<(Vec<CodeSpec>, Vec<String>)> {
    let required: BTreeSet<String> = required_branches().into_iter().map(String::from).collect();
    let mut hit: BTreeSet<String> = BTreeSet::new();
    let mut fresh_per_label: BTreeSet<String> = BTreeSet::new();
    let mut kept = Vec::new();
    for _ in 0..SAMPLE_CAP {
        if kept.len() >= min_count && required.is_subset(&hit) {
            break;
        }
        let spec = random_spec(r, rng);
        if validate(r.chain(), &spec).is_err() {
            continue;
        }
        let label = branch_label(r, &spec)?;
        let tags = branch_tags(&label);
        let new_branch = tags
            .iter()
            .any(|t| required.contains(t) && !hit.contains(t));
        // keep every spec that opens a branch, then fill up with the rest
        if new_branch || kept.len() < min_count || fresh_per_label.insert(label) {
            kept.push(spec);
        }
        hit.extend(tags);
    }
    let missing = required.difference(&hit).cloned().collect();
    Ok((kept, missing))
}
