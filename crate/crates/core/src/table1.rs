//! The printed classification for `s = 3, m = 1`, compared span by span
//! against the enumeration.

use serde::Serialize;

use crate::duality::{is_self_dual, span_build, IdealSpan};
use crate::error::Result;
use crate::field::FieldCtx;
use crate::ring::{CodeRing, RingPoly};
use crate::selfdual::{enumerate_all, Family, SelfDualCode};

/// Exponents of `(x+1)` in the u⁰, u¹ and u² parts of one generator.
type Gen = [&'static [usize]; 3];

pub struct PrintedRow {
    pub family: Family,
    pub type_tag: u8,
    pub generators: &'static [Gen],
}

const fn row(family: Family, type_tag: u8, generators: &'static [Gen]) -> PrintedRow {
    PrintedRow {
        family,
        type_tag,
        generators,
    }
}

use Family::{H1Unit, H1Zero, Type4};

/// Rows in printed order.
pub const PRINTED: &[PrintedRow] = &[
    row(Type4, 4, &[[&[], &[4], &[]], [&[], &[], &[0]]]),
    row(H1Zero, 5, &[[&[4], &[], &[]]]),
    row(H1Zero, 5, &[[&[4], &[], &[0]]]),
    row(H1Zero, 5, &[[&[4], &[], &[2]]]),
    row(H1Zero, 5, &[[&[4], &[], &[3]]]),
    row(H1Zero, 5, &[[&[4], &[], &[0, 2]]]),
    row(H1Zero, 5, &[[&[4], &[], &[0, 3]]]),
    row(H1Zero, 5, &[[&[4], &[], &[2, 3]]]),
    row(H1Zero, 5, &[[&[4], &[], &[0, 1, 3]]]),
    row(
        H1Zero,
        7,
        &[[&[6], &[], &[0]], [&[], &[4], &[]], [&[], &[], &[2]]],
    ),
    row(
        H1Zero,
        7,
        &[[&[7], &[], &[0]], [&[], &[4], &[]], [&[], &[], &[1]]],
    ),
    row(
        H1Zero,
        8,
        &[[&[5], &[], &[]], [&[], &[4], &[]], [&[], &[], &[3]]],
    ),
    row(
        H1Zero,
        8,
        &[[&[5], &[], &[1]], [&[], &[4], &[]], [&[], &[], &[3]]],
    ),
    row(
        H1Zero,
        8,
        &[[&[5], &[], &[2]], [&[], &[4], &[]], [&[], &[], &[3]]],
    ),
    row(
        H1Zero,
        8,
        &[[&[5], &[], &[1, 2]], [&[], &[4], &[]], [&[], &[], &[3]]],
    ),
    row(
        H1Zero,
        8,
        &[[&[6], &[], &[]], [&[], &[4], &[]], [&[], &[], &[2]]],
    ),
    row(
        H1Zero,
        8,
        &[[&[5], &[], &[1]], [&[], &[4], &[]], [&[], &[], &[2]]],
    ),
    row(
        H1Zero,
        8,
        &[[&[6], &[], &[0, 1]], [&[], &[4], &[]], [&[], &[], &[2]]],
    ),
    row(
        H1Zero,
        8,
        &[[&[7], &[], &[]], [&[], &[4], &[]], [&[], &[], &[1]]],
    ),
    row(H1Unit, 7, &[[&[4], &[3], &[0, 1]]]),
    row(H1Unit, 7, &[[&[4], &[3], &[0, 1, 2]]]),
    row(H1Unit, 7, &[[&[4], &[3], &[0, 1, 3]]]),
    row(H1Unit, 7, &[[&[4], &[3], &[0, 1, 2, 3]]]),
    row(
        H1Unit,
        7,
        &[[&[5], &[3], &[0]], [&[4], &[], &[2]], [&[], &[], &[3]]],
    ),
    row(
        H1Unit,
        7,
        &[[&[5], &[3], &[0, 1]], [&[4], &[], &[2]], [&[], &[], &[3]]],
    ),
    row(
        H1Unit,
        7,
        &[[&[5], &[3], &[0, 2]], [&[4], &[], &[2]], [&[], &[], &[3]]],
    ),
    row(
        H1Unit,
        7,
        &[
            [&[5], &[3], &[0, 1, 2]],
            [&[4], &[], &[2]],
            [&[], &[], &[3]],
        ],
    ),
];

pub const PRINTED_COUNTS: (usize, usize, usize) = (1, 18, 8);

fn build(r: &CodeRing, gens: &[Gen]) -> Vec<RingPoly> {
    let k = r.chain();
    let part = |exps: &[usize]| {
        exps.iter()
            .fold(k.zero(), |acc, &e| k.add(&acc, &k.y_pow(e)))
    };
    gens.iter()
        .map(|g| r.new_poly(part(g[0]), part(g[1]), part(g[2])))
        .collect()
}

/// Generators of a printed row.
pub fn printed_generators(r: &CodeRing, row: &PrintedRow) -> Vec<RingPoly> {
    build(r, row.generators)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TableDiff {
    /// Same ideal, different type label.
    Label {
        row: usize,
        printed: u8,
        computed: u8,
    },
    /// Same ideal, listed under a different `h₁` group.
    Group {
        row: usize,
        printed: Family,
        computed: Family,
    },
    /// The row matches a code once the leading term of a later generator gets a `u` factor.
    MissingU { row: usize, code: usize },
    /// The row matches a code once the leading exponent is changed.
    LeadingExponent {
        row: usize,
        printed: usize,
        corrected: usize,
        code: usize,
    },
    /// No enumerated code has this span.
    Unmatched { row: usize, self_dual: bool },
    /// An enumerated code no row accounts for.
    Missing { code: usize },
}

pub struct Table1Report {
    pub ring: CodeRing,
    pub codes: Vec<SelfDualCode>,
    pub counts: (usize, usize, usize),
    pub verified: usize,
    pub diffs: Vec<TableDiff>,
}

impl Table1Report {
    pub fn counts_match(&self) -> bool {
        self.counts == PRINTED_COUNTS
    }

    pub fn all_verified(&self) -> bool {
        self.verified == self.codes.len()
    }
}

fn with_u(r: &CodeRing, gens: &[RingPoly]) -> Vec<RingPoly> {
    let k = r.chain();
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            if i > 0 && !g.p0.is_zero() {
                r.new_poly(k.zero(), k.add(&g.p0, &g.p1), g.p2.clone())
            } else {
                g.clone()
            }
        })
        .collect()
}

fn with_leading(r: &CodeRing, gens: &[RingPoly], from: usize, to: usize) -> Vec<RingPoly> {
    let k = r.chain();
    let mut out = gens.to_vec();
    let p0 = k.add(&out[0].p0, &k.add(&k.y_pow(from), &k.y_pow(to)));
    out[0] = r.new_poly(p0, out[0].p1.clone(), out[0].p2.clone());
    out
}

fn find(spans: &[IdealSpan], taken: &[bool], span: &IdealSpan) -> Option<usize> {
    spans
        .iter()
        .enumerate()
        .position(|(i, s)| !taken[i] && s == span)
}

/// Enumerates `s = 3, m = 1`, verifies every code and diffs against [`PRINTED`].
pub fn compare() -> Result<Table1Report> {
    let r = CodeRing::new(FieldCtx::new(1)?, 3)?;
    let (codes, _) = enumerate_all(&r)?;
    let spans: Vec<IdealSpan> = codes
        .iter()
        .map(|c| span_build(&r, &c.generators))
        .collect();
    let mut verified = 0;
    for s in &spans {
        if is_self_dual(&r, s)? {
            verified += 1;
        }
    }
    let family_count = |f: Family| codes.iter().filter(|c| c.family == f).count();
    let counts = (
        family_count(Type4),
        family_count(H1Zero),
        family_count(H1Unit),
    );

    let mut taken = vec![false; codes.len()];
    let mut diffs = Vec::new();
    let mut unmatched = Vec::new();
    for (i, row) in PRINTED.iter().enumerate() {
        let gens = printed_generators(&r, row);
        let span = span_build(&r, &gens);
        match find(&spans, &taken, &span) {
            Some(j) => {
                taken[j] = true;
                if codes[j].spec.type_tag != row.type_tag {
                    diffs.push(TableDiff::Label {
                        row: i,
                        printed: row.type_tag,
                        computed: codes[j].spec.type_tag,
                    });
                }
                if codes[j].family != row.family {
                    diffs.push(TableDiff::Group {
                        row: i,
                        printed: row.family,
                        computed: codes[j].family,
                    });
                }
            }
            None => unmatched.push((i, gens, span)),
        }
    }

    let n = r.n();
    for (i, gens, span) in unmatched {
        let fixed_u = with_u(&r, &gens);
        if let Some(j) = find(&spans, &taken, &span_build(&r, &fixed_u)) {
            taken[j] = true;
            diffs.push(TableDiff::MissingU { row: i, code: j });
            continue;
        }
        let lead = gens[0].p0.valuation();
        let repaired = (n / 2..n).filter(|&a| a != lead).find_map(|a| {
            let span = span_build(&r, &with_leading(&r, &gens, lead, a));
            find(&spans, &taken, &span).map(|j| (a, j))
        });
        if let Some((a, j)) = repaired {
            taken[j] = true;
            diffs.push(TableDiff::LeadingExponent {
                row: i,
                printed: lead,
                corrected: a,
                code: j,
            });
            continue;
        }
        diffs.push(TableDiff::Unmatched {
            row: i,
            self_dual: is_self_dual(&r, &span)?,
        });
    }
    for (j, t) in taken.iter().enumerate() {
        if !t {
            diffs.push(TableDiff::Missing { code: j });
        }
    }
    Ok(Table1Report {
        ring: r,
        codes,
        counts,
        verified,
        diffs,
    })
}
