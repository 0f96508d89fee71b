//! Binomial matrices over F_2, the three families of self-dual codes and
//! their closed-form counts.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{binom_mod2, ChainRing, KPoly};
use crate::codes::CodeSpec;
use crate::duality::{span_build, IdealSpan};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::{rref_kernel, solve_affine, AffineSolution, GfMatrix};
use crate::ring::{CodeRing, RingPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BinomKind {
    T,
    M,
    N,
    K,
}

/// `T(a+b, b)` or one of its specializations `M(a)`, `N(a, t)`, `K(a, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomMatrix {
    pub kind: BinomKind,
    pub a_plus_b: usize,
    pub b: usize,
    pub matrix: GfMatrix,
}

/// The `b×b` matrix with entry `(i, j) = C(a−j, i−j) mod 2` below the diagonal, `a = a_plus_b − b`.
pub fn build_t(a_plus_b: usize, b: usize) -> Result<BinomMatrix> {
    if b < 1 || a_plus_b < 2 * b {
        return Err(Error::Parameter(format!(
            "T({a_plus_b}, {b}) needs a = a_plus_b - b >= b >= 1"
        )));
    }
    let a = a_plus_b - b;
    let mut matrix = GfMatrix::zeros(b, b);
    for i in 0..b {
        for j in 0..i {
            if binom_mod2(a - j, i - j) {
                matrix[(i, j)] = FieldElem::ONE;
            }
        }
    }
    Ok(BinomMatrix {
        kind: BinomKind::T,
        a_plus_b,
        b,
        matrix,
    })
}

fn tagged(kind: BinomKind, t: Result<BinomMatrix>) -> Result<BinomMatrix> {
    t.map(|m| BinomMatrix { kind, ..m })
}

/// `M(a) = T(2^s, 2^s − a)`.
pub fn build_m(s: u32, a: usize) -> Result<BinomMatrix> {
    let n = 1usize << s;
    if a >= n {
        return Err(Error::Parameter(format!("M({a}) needs a < 2^s")));
    }
    tagged(BinomKind::M, build_t(n, n - a))
}

/// `N(a, t) = T(a + 2^{s−1} − 2t, 2^{s−1} − t)`.
pub fn build_n(s: u32, a: usize, t: usize) -> Result<BinomMatrix> {
    let half = 1usize << (s - 1);
    if t >= half || a + half < 2 * t {
        return Err(Error::Parameter(format!("N({a}, {t}) out of range")));
    }
    tagged(BinomKind::N, build_t(a + half - 2 * t, half - t))
}

/// `K(a, t) = T(2^s − 2t, 2^s − a − t)`.
pub fn build_k(s: u32, a: usize, t: usize) -> Result<BinomMatrix> {
    let n = 1usize << s;
    if a + t >= n {
        return Err(Error::Parameter(format!("K({a}, {t}) needs a + t < 2^s")));
    }
    tagged(BinomKind::K, build_t(n - 2 * t, n - a - t))
}

/// `⌈(b+1)/2⌉`, the nullity of `T(a+b, b)` in characteristic 2 when `a + b` is even.
///
/// For odd `a + b` the nullity is `b/2`; `M` and `K` always have even `a + b`.
pub fn nullity_t(b: usize) -> usize {
    (b + 2) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Type4,
    H1Zero,
    H1Unit,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Type4 => "type4",
            Family::H1Zero => "h1zero",
            Family::H1Unit => "h1unit",
        }
    }
}

/// Enumeration coordinates: `a` and kernel index `k` for the `h₁ = 0`
/// family, the full `(a, t₁, t₂, k)` for the unit family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub a: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t2: Option<usize>,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualCode {
    pub spec: CodeSpec,
    pub family: Family,
    pub cell: Option<Cell>,
    pub generators: Vec<RingPoly>,
}

/// `⟨u(x+1)^{2^{s−1}}, u²⟩`.
pub fn selfdual_type4(k: &ChainRing) -> CodeSpec {
    CodeSpec::type4(k.n() / 2, 0, k.zero(), 0)
}

fn type4_code(r: &CodeRing) -> SelfDualCode {
    let k = r.chain();
    SelfDualCode {
        spec: selfdual_type4(k),
        family: Family::Type4,
        cell: None,
        generators: vec![
            r.u_pow_times(1, &k.y_pow(r.n() / 2)),
            r.u_pow_times(2, &k.one()),
        ],
    }
}

fn split_unit(k: &ChainRing, f: &KPoly) -> (usize, KPoly) {
    k.unit_part(f).unwrap_or((0, k.zero()))
}

fn kernel_solutions(r: &CodeRing, m: &GfMatrix) -> Vec<Vec<FieldElem>> {
    let (_, kernel) = rref_kernel(r.field(), m);
    AffineSolution {
        particular: vec![FieldElem::ZERO; m.cols()],
        kernel,
    }
    .all_solutions(r.field())
}

/// `⟨(x+1)^a + u²h, u(x+1)^{2^{s−1}}, u²(x+1)^{2^s−a}⟩` for every `h` in the kernel of `M(a)`.
pub fn enumerate_h1_zero(r: &CodeRing, a: usize) -> Result<Vec<SelfDualCode>> {
    let k = r.chain();
    let n = r.n();
    if a < n / 2 || a >= n {
        return Err(Error::Parameter(format!(
            "a = {a} outside {}..={}",
            n / 2,
            n - 1
        )));
    }
    let m = build_m(r.s(), a)?;
    Ok(kernel_solutions(r, &m.matrix)
        .into_iter()
        .enumerate()
        .map(|(i, h)| {
            let h = k.from_adic_padded(&h);
            let (t2, h2) = split_unit(k, &h);
            let zero = k.zero();
            let spec = if a == n / 2 {
                CodeSpec::type5(a, 0, zero, t2, h2)
            } else if h.is_unit() {
                CodeSpec::type7(a, 0, zero.clone(), t2, h2, n / 2, 0, zero)
            } else {
                CodeSpec::type8(a, 0, zero.clone(), t2, h2, n / 2, 0, zero, n - a)
            };
            SelfDualCode {
                spec,
                family: Family::H1Zero,
                cell: Some(Cell {
                    a,
                    t1: None,
                    t2: None,
                    k: i + 1,
                }),
                generators: vec![
                    r.new_poly(k.y_pow(a), k.zero(), h),
                    r.u_pow_times(1, &k.y_pow(n / 2)),
                    r.u_pow_times(2, &k.y_pow(n - a)),
                ],
            }
        })
        .collect())
}

fn pow_q(q: u32, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// `N = Σ_{a=2^{s−1}}^{2^s−1} (2^m)^{⌈(2^s−a+1)/2⌉}`.
pub fn count_n(s: u32, m: u32) -> BigUint {
    let n = 1usize << s;
    let q = 1u32 << m;
    (n / 2..n).map(|a| pow_q(q, nullity_t(n - a))).sum()
}

/// Adic coefficients of `(x+1)^{2t₁−a−t₂} x^{a−t₁} h₁² mod (x+1)^{2^s−a−t₂}`.
pub fn c_vector(
    k: &ChainRing,
    a: usize,
    t1: usize,
    t2: usize,
    h1: &KPoly,
) -> Result<Vec<FieldElem>> {
    let n = k.n();
    if 2 * t1 <= a + t2 || a + t2 >= n || !h1.is_unit() || h1.len() != n {
        return Err(Error::Parameter(format!(
            "c_vector needs 2t1 > a + t2, a + t2 < 2^s and a unit h1 (a={a}, t1={t1}, t2={t2})"
        )));
    }
    let sq = k.mul(h1, h1);
    let prod = k.shift_up(&k.mul(&k.x_pow(a - t1), &sq), 2 * t1 - a - t2);
    Ok(prod.coeffs()[..n - a - t2].to_vec())
}

/// `(x+1)^{2^{s−1}+t₁−a} x^{a−t₁} h₁(x^{-1}) mod (x+1)^{2^s−a}`.
pub fn h3_generator(k: &ChainRing, a: usize, t1: usize, h1: &KPoly) -> Result<KPoly> {
    let n = k.n();
    let half = n / 2;
    if a < half || a > half + t1 || a >= n || !h1.is_unit() || h1.len() != n {
        return Err(Error::Parameter(format!(
            "h3_generator needs 2^(s-1) <= a <= 2^(s-1) + t1 and a unit h1 (a={a}, t1={t1})"
        )));
    }
    let base = k.mul(&k.x_pow(a - t1), &k.sub_inverse(h1));
    Ok(k.truncate(&k.shift_up(&base, half + t1 - a), n - a))
}

/// Cells `(a, t₁, t₂)` with `2^{s−1} ≤ a ≤ 2^{s−1}+t₁`, `t₁ < 2^{s−1}`, `2t₁ > a+t₂`.
pub fn h1_unit_cells(s: u32) -> Vec<(usize, usize, usize)> {
    let n = 1usize << s;
    let half = n / 2;
    let mut cells = Vec::new();
    for a in half..n {
        for t1 in a.saturating_sub(half)..half {
            for t2 in 0..n - a {
                if 2 * t1 > a + t2 {
                    cells.push((a, t1, t2));
                }
            }
        }
    }
    cells
}

/// Unit solutions `h₁` of `N(a, t₁)·h₁ = 0`, lexicographic; position + 1 is the index `k`.
pub fn h1_solutions(r: &CodeRing, a: usize, t1: usize) -> Result<Vec<KPoly>> {
    let nm = build_n(r.s(), a, t1)?;
    Ok(kernel_solutions(r, &nm.matrix)
        .into_iter()
        .filter(|v| !v[0].is_zero())
        .map(|v| r.chain().from_adic_padded(&v))
        .collect())
}

/// Counting data for one `(a, t₁, t₂, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub a: usize,
    pub t1: usize,
    pub t2: usize,
    pub k: usize,
    /// `K(a, t₂) b = c` is consistent.
    pub delta: bool,
    /// The system with its first column deleted is consistent.
    pub delta_prime: bool,
    pub n1: BigUint,
    pub n2: BigUint,
    pub tau: BigInt,
    /// Solutions with `b₀ ≠ 0` actually found.
    pub enumerated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub s: u32,
    pub m: u32,
    pub count_type4: u32,
    pub count_n: BigUint,
    pub count_nprime: BigUint,
    pub cells: Vec<CellReport>,
}

impl CountReport {
    pub fn total(&self) -> BigUint {
        BigUint::from(self.count_type4) + &self.count_n + &self.count_nprime
    }
}

struct CellOutput {
    report: CellReport,
    codes: Vec<SelfDualCode>,
}

fn solve_cell(
    r: &CodeRing,
    (a, t1, t2): (usize, usize, usize),
    k_index: usize,
    h1: &KPoly,
    emit: bool,
) -> Result<CellOutput> {
    let kr = r.chain();
    let n = r.n();
    let q = r.field().order();
    let len = n - a - t2;
    let c = c_vector(kr, a, t1, t2, h1)?;
    let km = build_k(r.s(), a, t2)?;
    let solution = solve_affine(r.field(), &km.matrix, &c)?;
    let reduced = km.matrix.without_first_column();
    let delta = solution.is_some();
    let delta_prime = solve_affine(r.field(), &reduced, &c)?.is_some();
    let n1 = if delta {
        pow_q(q, nullity_t(len))
    } else {
        BigUint::default()
    };
    let n2 = if delta_prime {
        pow_q(q, len.div_ceil(2))
    } else {
        BigUint::default()
    };
    let tau = BigInt::from(n1.clone()) - BigInt::from(n2.clone());

    let mut codes = Vec::new();
    let mut enumerated = 0;
    if let Some(sol) = solution {
        let h3gen = h3_generator(kr, a, t1, h1)?;
        let (t3, h3) = split_unit(kr, &h3gen);
        for b in sol.all_solutions(r.field()) {
            if b[0].is_zero() {
                continue;
            }
            enumerated += 1;
            if !emit {
                continue;
            }
            let h2 = kr.from_adic_padded(&b);
            let spec = if a == n / 2 {
                CodeSpec::type5(a, t1, h1.clone(), t2, h2.clone())
            } else if t2 == 0 {
                CodeSpec::type7(a, t1, h1.clone(), t2, h2.clone(), n / 2, t3, h3.clone())
            } else {
                CodeSpec::type8(
                    a,
                    t1,
                    h1.clone(),
                    t2,
                    h2.clone(),
                    n / 2,
                    t3,
                    h3.clone(),
                    n - a,
                )
            };
            let generators = vec![
                r.new_poly(kr.y_pow(a), kr.shift_up(h1, t1), kr.shift_up(&h2, t2)),
                r.new_poly(kr.zero(), kr.y_pow(n / 2), h3gen.clone()),
                r.u_pow_times(2, &kr.y_pow(n - a)),
            ];
            codes.push(SelfDualCode {
                spec,
                family: Family::H1Unit,
                cell: Some(Cell {
                    a,
                    t1: Some(t1),
                    t2: Some(t2),
                    k: k_index,
                }),
                generators,
            });
        }
    }
    Ok(CellOutput {
        report: CellReport {
            a,
            t1,
            t2,
            k: k_index,
            delta,
            delta_prime,
            n1,
            n2,
            tau,
            enumerated,
        },
        codes,
    })
}

fn run_h1_unit(r: &CodeRing, emit: bool) -> Result<Vec<CellOutput>> {
    if r.s() < 2 {
        return Ok(Vec::new());
    }
    let jobs: Vec<((usize, usize, usize), usize, KPoly)> = h1_unit_cells(r.s())
        .into_iter()
        .map(|(a, t1, t2)| {
            h1_solutions(r, a, t1).map(|hs| {
                hs.into_iter()
                    .enumerate()
                    .map(move |(i, h1)| ((a, t1, t2), i + 1, h1))
                    .collect::<Vec<_>>()
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    jobs.par_iter()
        .map(|(cell, k_index, h1)| solve_cell(r, *cell, *k_index, h1, emit))
        .collect()
}

/// Every self-dual code with a unit `h₁`, with the per-cell counting data.
pub fn enumerate_h1_unit(r: &CodeRing) -> Result<(Vec<SelfDualCode>, Vec<CellReport>)> {
    let mut codes = Vec::new();
    let mut reports = Vec::new();
    for out in run_h1_unit(r, true)? {
        codes.extend(out.codes);
        reports.push(out.report);
    }
    Ok((codes, reports))
}

/// `N′ = Σ τ` over all cells and `h₁` solutions, with the per-cell breakdown.
pub fn count_nprime(r: &CodeRing) -> Result<CountReport> {
    let cells: Vec<CellReport> = run_h1_unit(r, false)?
        .into_iter()
        .map(|o| o.report)
        .collect();
    let sum: BigInt = cells.iter().map(|c| c.tau.clone()).sum();
    let count_nprime = sum
        .to_biguint()
        .ok_or_else(|| Error::Inconsistent("negative N' from the tau formula".into()))?;
    Ok(CountReport {
        s: r.s(),
        m: r.field().m(),
        count_type4: 1,
        count_n: count_n(r.s(), r.field().m()),
        count_nprime,
        cells,
    })
}

/// Upper bound on the work of `enumerate_all`: `1 + N` plus, for every cell,
/// the number of `h₁` candidates times the nullity bound on `h₂` solutions.
///
/// Returns as soon as the running total passes `limit`.
pub fn enumeration_bound(r: &CodeRing, limit: &BigUint) -> Result<BigUint> {
    let q = r.field().order();
    let n = r.n();
    let mut total = BigUint::from(1u32) + count_n(r.s(), r.field().m());
    if &total > limit || r.s() < 2 {
        return Ok(total);
    }
    let mut last = None;
    let mut h1_count = BigUint::default();
    for (a, t1, t2) in h1_unit_cells(r.s()) {
        if last != Some((a, t1)) {
            let nm = build_n(r.s(), a, t1)?;
            let (_, kernel) = rref_kernel(r.field(), &nm.matrix);
            h1_count = pow_q(q, kernel.len());
            last = Some((a, t1));
        }
        total += &h1_count * pow_q(q, nullity_t(n - a - t2));
        if &total > limit {
            break;
        }
    }
    Ok(total)
}

/// `Error::Budget` when [`enumeration_bound`] exceeds `budget`.
pub fn check_enumeration_budget(r: &CodeRing, budget: u64) -> Result<()> {
    let limit = BigUint::from(budget);
    let bound = enumeration_bound(r, &limit)?;
    if bound > limit {
        return Err(Error::Budget {
            needed: u128::try_from(&bound).unwrap_or(u128::MAX),
            limit: budget as u128,
        });
    }
    Ok(())
}

/// All self-dual codes: the type-4 code, the `h₁ = 0` family and the unit family.
///
/// Codes are deduplicated by their canonical generators and the total is
/// checked against `1 + N + N′`.
pub fn enumerate_all(r: &CodeRing) -> Result<(Vec<SelfDualCode>, CountReport)> {
    let n = r.n();
    let mut codes = vec![type4_code(r)];
    let zero_family: Vec<Vec<SelfDualCode>> = (n / 2..n)
        .into_par_iter()
        .map(|a| enumerate_h1_zero(r, a))
        .collect::<Result<_>>()?;
    codes.extend(zero_family.into_iter().flatten());
    let (unit_codes, cells) = enumerate_h1_unit(r)?;
    codes.extend(unit_codes);

    let mut seen = HashSet::new();
    codes.retain(|c| seen.insert(c.generators.clone()));

    let sum: BigInt = cells.iter().map(|c| c.tau.clone()).sum();
    let report = CountReport {
        s: r.s(),
        m: r.field().m(),
        count_type4: 1,
        count_n: count_n(r.s(), r.field().m()),
        count_nprime: sum.to_biguint().unwrap_or_default(),
        cells,
    };
    if report.total() != BigUint::from(codes.len()) {
        return Err(Error::Inconsistent(format!(
            "enumerated {} codes but 1 + N + N' = {}",
            codes.len(),
            report.total()
        )));
    }
    Ok((codes, report))
}

/// Spans of the given codes; an error if two of them generate the same ideal.
pub fn distinct_spans(r: &CodeRing, codes: &[SelfDualCode]) -> Result<Vec<IdealSpan>> {
    let spans: Vec<IdealSpan> = codes
        .par_iter()
        .map(|c| span_build(r, &c.generators))
        .collect();
    let mut seen = HashSet::new();
    for (i, s) in spans.iter().enumerate() {
        if !seen.insert(s) {
            return Err(Error::Inconsistent(format!(
                "code {i} repeats an earlier span"
            )));
        }
    }
    Ok(spans)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{annihilator_span, is_self_dual};
    use crate::field::FieldCtx;

    fn ring(m: u32, s: u32) -> CodeRing {
        CodeRing::new(FieldCtx::new(m).unwrap(), s).unwrap()
    }

    fn bits(m: &GfMatrix) -> Vec<Vec<u32>> {
        m.row_vecs()
            .iter()
            .map(|r| r.iter().map(|e| e.bits()).collect())
            .collect()
    }

    fn adic(k: &ChainRing, b: &[u32]) -> KPoly {
        k.from_adic_padded(
            &b.iter()
                .map(|&x| FieldElem::from_bits_unchecked(x))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn t_matrix_examples() {
        assert_eq!(bits(&build_t(2, 1).unwrap().matrix), vec![vec![0]]);
        assert_eq!(
            bits(&build_t(8, 4).unwrap().matrix),
            vec![
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 1, 0, 0]
            ]
        );
        assert_eq!(
            bits(&build_k(3, 5, 0).unwrap().matrix),
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 0]]
        );
        assert_eq!(
            build_k(3, 4, 0).unwrap().matrix,
            build_t(8, 4).unwrap().matrix
        );
        assert!(build_t(3, 2).is_err());
        assert!(build_t(4, 0).is_err());
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(nullity_t(1), 1);
        assert_eq!(nullity_t(4), 3);
    }

    #[test]
    fn nullity_drops_for_odd_a_plus_b() {
        let f = FieldCtx::new(1).unwrap();
        for (a, b) in [(3, 2), (5, 4), (7, 2)] {
            let t = build_t(a + b, b).unwrap();
            assert_eq!(rref_kernel(&f, &t.matrix).1.len(), b / 2);
        }
    }

    #[test]
    fn count_n_examples() {
        assert_eq!(count_n(3, 1), BigUint::from(18u32));
        assert_eq!(count_n(2, 1), BigUint::from(6u32));
        assert_eq!(count_n(3, 2), BigUint::from(100u32));
    }

    #[test]
    fn c_vector_examples() {
        let k = ChainRing::new(FieldCtx::new(1).unwrap(), 3).unwrap();
        let one = k.one();
        let ints = |v: Vec<FieldElem>| v.iter().map(|e| e.bits()).collect::<Vec<_>>();
        assert_eq!(ints(c_vector(&k, 4, 3, 0, &one).unwrap()), [0, 0, 1, 1]);
        assert_eq!(ints(c_vector(&k, 4, 3, 1, &one).unwrap()), [0, 1, 1]);
        assert_eq!(ints(c_vector(&k, 5, 3, 0, &one).unwrap()), [0, 1, 0]);
        assert!(c_vector(&k, 4, 2, 0, &one).is_err());
    }

    #[test]
    fn h3_generator_examples() {
        let k = ChainRing::new(FieldCtx::new(1).unwrap(), 3).unwrap();
        let one = k.one();
        assert_eq!(h3_generator(&k, 4, 3, &one).unwrap(), k.y_pow(3));
        assert_eq!(h3_generator(&k, 5, 3, &one).unwrap(), k.y_pow(2));
        assert!(h3_generator(&k, 7, 1, &one).is_err());
    }

    #[test]
    fn h1_zero_examples() {
        let r = ring(1, 3);
        let k = r.chain();
        let hs = |a| -> Vec<KPoly> {
            enumerate_h1_zero(&r, a)
                .unwrap()
                .into_iter()
                .map(|c| c.generators[0].p2.clone())
                .collect()
        };
        assert_eq!(hs(4).len(), 8);
        assert!(hs(4).iter().all(|h| h.coeff(1).is_zero()));
        assert_eq!(hs(7), vec![k.zero(), k.one()]);
        assert_eq!(
            hs(6),
            vec![k.zero(), adic(k, &[0, 1]), adic(k, &[1]), adic(k, &[1, 1])]
        );
        assert!(enumerate_h1_zero(&r, 3).is_err());
    }

    #[test]
    fn h1_unit_example_cells() {
        let r = ring(1, 3);
        let k = r.chain();
        let (codes, reports) = enumerate_h1_unit(&r).unwrap();
        let h2_of = |a, t2| {
            let mut v: Vec<KPoly> = codes
                .iter()
                .filter(|c| c.cell.unwrap().a == a && c.cell.unwrap().t2 == Some(t2))
                .map(|c| c.spec.h2.clone().unwrap())
                .collect();
            v.sort();
            v
        };
        let sorted = |mut v: Vec<KPoly>| {
            v.sort();
            v
        };
        let want = |rows: &[&[u32]]| sorted(rows.iter().map(|b| adic(k, b)).collect());
        assert_eq!(
            h2_of(4, 0),
            want(&[&[1, 1], &[1, 1, 0, 1], &[1, 1, 1], &[1, 1, 1, 1]])
        );
        assert_eq!(h2_of(5, 0), want(&[&[1], &[1, 1], &[1, 1, 1], &[1, 0, 1]]));
        // K(4,1) = T(6,3) is consistent against c = (0,1,1): b0 = 1, b1 and b2 free
        assert_eq!(h2_of(4, 1), want(&[&[1], &[1, 0, 1], &[1, 1], &[1, 1, 1]]));
        assert_eq!(codes.len(), 12);
        let cell = |a, t1, t2| {
            reports
                .iter()
                .find(|c| (c.a, c.t1, c.t2) == (a, t1, t2))
                .unwrap()
        };
        assert_eq!(cell(4, 3, 0).tau, BigInt::from(4));
        assert_eq!(cell(4, 3, 1).tau, BigInt::from(4));
        assert_eq!(cell(5, 3, 0).tau, BigInt::from(4));
    }

    #[test]
    fn cell_431_needs_the_a_minus_t_binomials() {
        // with first-column binomials C(a, i) instead of C(a - t2, i) the system is inconsistent
        let f = FieldCtx::new(1).unwrap();
        let wrong = build_t(7, 3).unwrap().matrix;
        let c: Vec<FieldElem> = [0, 1, 1]
            .iter()
            .map(|&b| FieldElem::from_bits_unchecked(b))
            .collect();
        assert!(solve_affine(&f, &wrong, &c).unwrap().is_none());
        let right = build_k(3, 4, 1).unwrap().matrix;
        assert!(solve_affine(&f, &right, &c).unwrap().is_some());
    }

    #[test]
    fn totals() {
        for (s, want) in [(1u32, 3usize), (2, 7), (3, 31)] {
            let r = ring(1, s);
            let (codes, report) = enumerate_all(&r).unwrap();
            assert_eq!(codes.len(), want, "s={s}");
            assert_eq!(report.total(), BigUint::from(want));
        }
        let r = ring(1, 2);
        assert!(enumerate_h1_unit(&r).unwrap().0.is_empty());
        assert_eq!(count_nprime(&r).unwrap().count_nprime, BigUint::default());
    }

    #[test]
    fn equality_cells_contribute_nothing() {
        // the cells with 2t1 = a + t2 sit just outside the strict range
        for (s, m) in [(3u32, 1u32), (3, 2), (4, 1)] {
            let r = ring(m, s);
            let k = r.chain();
            let n = r.n();
            for a in n / 2..n {
                for t1 in a.saturating_sub(n / 2)..n / 2 {
                    if 2 * t1 < a || 2 * t1 - a >= n - a {
                        continue;
                    }
                    let t2 = 2 * t1 - a;
                    for h1 in h1_solutions(&r, a, t1).unwrap() {
                        // c0 is the unit a0² here, against a zero first row
                        let sq = k.mul(&k.x_pow(a - t1), &k.mul(&h1, &h1));
                        let c: Vec<FieldElem> = sq.coeffs()[..n - a - t2].to_vec();
                        let km = build_k(s, a, t2).unwrap();
                        assert!(solve_affine(r.field(), &km.matrix, &c).unwrap().is_none());
                        assert!(
                            solve_affine(r.field(), &km.matrix.without_first_column(), &c)
                                .unwrap()
                                .is_none()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn enumerated_codes_satisfy_the_reciprocity_conditions() {
        for (s, m) in [(3u32, 1u32), (3, 2), (4, 1)] {
            let r = ring(m, s);
            let k = r.chain();
            let n = r.n();
            for code in enumerate_h1_unit(&r).unwrap().0 {
                let cell = code.cell.unwrap();
                let (a, t1, t2) = (cell.a, cell.t1.unwrap(), cell.t2.unwrap());
                let h1 = code.spec.h1.clone().unwrap();
                let h2 = code.spec.h2.clone().unwrap();
                // h1 = x^{a-t1} h1(x^{-1}) mod (x+1)^{n/2-t1}
                let rhs = k.mul(&k.x_pow(a - t1), &k.sub_inverse(&h1));
                assert_eq!(k.truncate(&h1, n / 2 - t1), k.truncate(&rhs, n / 2 - t1));
                // h2 = x^{a-t2} h2(x^{-1}) + (x+1)^{2t1-a-t2} x^{a-t1} h1² mod (x+1)^{n-t2-a}
                let sq = k.shift_up(&k.mul(&k.x_pow(a - t1), &k.mul(&h1, &h1)), 2 * t1 - a - t2);
                let rhs = k.add(&k.mul(&k.x_pow(a - t2), &k.sub_inverse(&h2)), &sq);
                assert_eq!(k.truncate(&h2, n - a - t2), k.truncate(&rhs, n - a - t2));
            }
        }
    }

    #[test]
    fn annihilator_matches_the_f_construction() {
        let r = ring(1, 3);
        let k = r.chain();
        let n = r.n();
        for code in enumerate_h1_unit(&r).unwrap().0 {
            let cell = code.cell.unwrap();
            let (a, t1, t2) = (cell.a, cell.t1.unwrap(), cell.t2.unwrap());
            let h1 = code.spec.h1.clone().unwrap();
            let h2 = code.spec.h2.clone().unwrap();
            let f = k.add(&h2, &k.shift_up(&k.mul(&h1, &h1), 2 * t1 - a - t2));
            let d = vec![
                r.new_poly(k.y_pow(a), k.shift_up(&h1, t1), k.shift_up(&f, t2)),
                r.new_poly(k.zero(), k.y_pow(n / 2), k.shift_up(&h1, n / 2 + t1 - a)),
                r.u_pow_times(2, &k.y_pow(n - a)),
            ];
            let c = span_build(&r, &code.generators);
            assert_eq!(span_build(&r, &d), annihilator_span(&r, &c));
        }
    }

    #[test]
    fn emitted_codes_are_self_dual_and_distinct() {
        let r = ring(1, 3);
        let (codes, _) = enumerate_all(&r).unwrap();
        let spans = distinct_spans(&r, &codes).unwrap();
        for s in &spans {
            assert!(is_self_dual(&r, s).unwrap());
        }
    }

    #[test]
    fn h1_zero_kernel_satisfies_the_scalar_identity() {
        for (s, m) in [(3u32, 1u32), (3, 2), (4, 1)] {
            let r = ring(m, s);
            let n = r.n();
            for a in n / 2..n {
                for code in enumerate_h1_zero(&r, a).unwrap() {
                    let h = &code.generators[0].p2;
                    for l in 0..n - a {
                        let mut sum = FieldElem::ZERO;
                        for j in 0..=l {
                            if binom_mod2(a - j, l - j) {
                                sum += h.coeff(j);
                            }
                        }
                        assert_eq!(sum, h.coeff(l));
                    }
                }
            }
        }
    }
}
