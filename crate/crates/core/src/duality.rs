//! Ideal spans, annihilators and duals as exact linear algebra over F_{2^m}.
//!
//! An ideal is stored as the RREF basis of its F_{2^m}-row space in the
//! flattened monomial coordinates of [`CodeRing::to_vector`]. Because the
//! reduction is deterministic, two spans are the same ideal exactly when
//! their bases are equal.

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::{rref_kernel, GfMatrix};
use crate::ring::{recip_vector, u_times_vector, x_times_vector, CodeRing, RingPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealSpan {
    s: u32,
    m: u32,
    basis: GfMatrix,
    pivots: Vec<usize>,
}

impl IdealSpan {
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        1 << self.s
    }

    /// Dimension over F_{2^m}.
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &GfMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after reduction by the basis; zero iff `v` is in the span.
    pub fn reduce(&self, r: &CodeRing, v: &[FieldElem]) -> Vec<FieldElem> {
        let f = r.field();
        let mut v = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            for (e, &b) in v.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    *e += f.mul(c, b);
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, r: &CodeRing, v: &[FieldElem]) -> bool {
        self.reduce(r, v).iter().all(|e| e.is_zero())
    }

    pub fn contains(&self, r: &CodeRing, f: &RingPoly) -> bool {
        self.contains_vector(r, &r.to_vector(f))
    }

    /// Basis rows as ring elements.
    pub fn elements(&self, r: &CodeRing) -> Vec<RingPoly> {
        self.basis
            .row_vecs()
            .iter()
            .map(|v| r.from_vector(v).expect("basis row length is 3·2^s"))
            .collect()
    }
}

fn from_rows(r: &CodeRing, rows: Vec<Vec<FieldElem>>) -> IdealSpan {
    let mut basis = GfMatrix::from_rows(r.dim(), &rows).expect("rows of length 3·2^s");
    let pivots = basis.rref(r.field());
    IdealSpan {
        s: r.s(),
        m: r.field().m(),
        basis,
        pivots,
    }
}

/// Row space of `{x^i u^j v}` for the given coordinate vectors.
fn ideal_of_vectors(r: &CodeRing, vs: impl IntoIterator<Item = Vec<FieldElem>>) -> IdealSpan {
    let n = r.n();
    let mut rows = Vec::new();
    for v in vs {
        if v.iter().all(|e| e.is_zero()) {
            continue;
        }
        let mut ui = v;
        for _ in 0..3 {
            if ui.iter().all(|e| e.is_zero()) {
                break;
            }
            let mut xi = ui.clone();
            for _ in 0..n {
                let next = x_times_vector(n, &xi);
                rows.push(xi);
                xi = next;
            }
            ui = u_times_vector(n, &ui);
        }
    }
    from_rows(r, rows)
}

/// The ideal generated by `gens`; an empty list gives the zero ideal.
pub fn span_build(r: &CodeRing, gens: &[RingPoly]) -> IdealSpan {
    ideal_of_vectors(r, gens.iter().map(|g| r.to_vector(g)))
}

/// `T_i` with `Tor_i(C) = ⟨(x+1)^{T_i}⟩`.
///
/// The RREF rows whose pivot lies in part `i` project onto a basis of
/// `Tor_i`, and the ideal `⟨(x+1)^T⟩` of K has dimension `2^s − T`.
pub fn torsion_from_span(span: &IdealSpan, i: usize) -> usize {
    let n = span.n();
    let count = span.pivots.iter().filter(|&&p| p / n == i).count();
    n - count
}

pub fn torsion_profile_of_span(span: &IdealSpan) -> crate::codes::TorsionProfile {
    crate::codes::TorsionProfile {
        t0: torsion_from_span(span, 0),
        t1: torsion_from_span(span, 1),
        t2: torsion_from_span(span, 2),
    }
}

/// `{c : c·d = 0 for all d ∈ C}` as the kernel of the stacked multiplication maps.
pub fn annihilator_span(r: &CodeRing, span: &IdealSpan) -> IdealSpan {
    let n = r.n();
    let dim = r.dim();
    let mut stacked = GfMatrix::zeros(0, dim);
    // column j of the map c ↦ c·d is (u^p x^i)·d for j = p·n + i
    for d in span.basis.row_vecs() {
        let mut images = Vec::with_capacity(dim);
        let mut up = d;
        for _ in 0..3 {
            let mut xi = up.clone();
            for _ in 0..n {
                let next = x_times_vector(n, &xi);
                images.push(xi);
                xi = next;
            }
            up = u_times_vector(n, &up);
        }
        for out in 0..dim {
            let row: Vec<FieldElem> = images.iter().map(|img| img[out]).collect();
            if row.iter().any(|e| !e.is_zero()) {
                stacked.push_row(&row);
            }
        }
        // keep the system small between generators
        if stacked.rows() > dim {
            stacked.rref(r.field());
        }
    }
    let (_, kernel) = rref_kernel(r.field(), &stacked);
    from_rows(r, kernel)
}

/// `C⊥` via the reciprocal image of the annihilator.
pub fn dual_via_annihilator(r: &CodeRing, span: &IdealSpan) -> IdealSpan {
    let ann = annihilator_span(r, span);
    let n = r.n();
    ideal_of_vectors(
        r,
        ann.basis
            .row_vecs()
            .into_iter()
            .map(|v| recip_vector(n, &v).expect("basis rows are nonzero")),
    )
}

/// `C⊥` as the orthogonal complement under the R₃-valued dot product.
///
/// Each basis row `d` contributes the three F-linear equations given by the
/// u⁰, u¹ and u² components of `Σ_j c_j d_j`.
pub fn dual_via_dot_product(r: &CodeRing, span: &IdealSpan) -> IdealSpan {
    let n = r.n();
    let mut eqs = GfMatrix::zeros(0, r.dim());
    for d in span.basis.row_vecs() {
        let part = |p: usize| &d[p * n..(p + 1) * n];
        for deg in 0..3 {
            let mut row = vec![FieldElem::ZERO; r.dim()];
            // coefficient of c_p[j] in the u^deg component is d_{deg-p}[j]
            for p in 0..=deg {
                row[p * n..(p + 1) * n].copy_from_slice(part(deg - p));
            }
            if row.iter().any(|e| !e.is_zero()) {
                eqs.push_row(&row);
            }
        }
    }
    let (_, kernel) = rref_kernel(r.field(), &eqs);
    from_rows(r, kernel)
}

/// `C⊥`, computed both ways; disagreement is an [`Error::Inconsistent`].
pub fn dual_span(r: &CodeRing, span: &IdealSpan) -> Result<IdealSpan> {
    let a = dual_via_annihilator(r, span);
    let b = dual_via_dot_product(r, span);
    if a != b {
        return Err(Error::Inconsistent(format!(
            "annihilator dual has dimension {}, dot-product dual has dimension {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(a)
}

/// `C = C⊥`.
pub fn is_self_dual(r: &CodeRing, span: &IdealSpan) -> Result<bool> {
    // a self-dual code has exactly half the dimension
    if 2 * span.dim() != r.dim() {
        return Ok(false);
    }
    Ok(&dual_span(r, span)? == span)
}
