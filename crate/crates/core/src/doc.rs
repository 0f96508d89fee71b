//! Serialized forms of enumerated codes: JSON lines, CSV and a plain-text table.

use serde::{Deserialize, Serialize};

use crate::chain::KPoly;
use crate::error::{Error, Result};
use crate::field::{parse_bit_string, FieldCtx, FieldElem};
use crate::ring::{CodeRing, RingPoly};
use crate::selfdual::{Cell, Family, SelfDualCode};

pub const SCHEMA_VERSION: u32 = 1;

/// One generator; each part lists `(x+1)`-adic coefficients as field-element bit values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub u0: Vec<u32>,
    pub u1: Vec<u32>,
    pub u2: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDocument {
    pub schema: u32,
    pub s: u32,
    pub m: u32,
    /// Field modulus as a bit string, constant term first.
    pub modulus: String,
    pub generators: Vec<GeneratorRecord>,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none", default)]
    pub type_tag: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cell: Option<Cell>,
}

fn bits(p: &KPoly) -> Vec<u32> {
    p.coeffs().iter().map(|c| c.bits()).collect()
}

impl CodeDocument {
    pub fn from_generators(r: &CodeRing, gens: &[RingPoly]) -> Self {
        CodeDocument {
            schema: SCHEMA_VERSION,
            s: r.s(),
            m: r.field().m(),
            modulus: r.field().modulus_bit_string(),
            generators: gens
                .iter()
                .map(|g| GeneratorRecord {
                    u0: bits(&g.p0),
                    u1: bits(&g.p1),
                    u2: bits(&g.p2),
                })
                .collect(),
            type_tag: None,
            family: None,
            cell: None,
        }
    }

    pub fn from_code(r: &CodeRing, code: &SelfDualCode) -> Self {
        CodeDocument {
            type_tag: Some(code.spec.type_tag),
            family: Some(code.family),
            cell: code.cell,
            ..Self::from_generators(r, &code.generators)
        }
    }

    /// The ring the document lives in, after checking schema and modulus.
    pub fn ring(&self) -> Result<CodeRing> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema {}", self.schema)));
        }
        let field = FieldCtx::with_modulus(parse_bit_string(&self.modulus)?)?;
        if field.m() != self.m {
            return Err(Error::Parse(format!(
                "modulus {} has degree {}, document says m = {}",
                self.modulus,
                field.m(),
                self.m
            )));
        }
        CodeRing::new(field, self.s)
    }

    pub fn generators(&self, r: &CodeRing) -> Result<Vec<RingPoly>> {
        let k = r.chain();
        let part = |v: &[u32]| -> Result<KPoly> {
            let coeffs = v
                .iter()
                .map(|&b| r.field().elem(b))
                .collect::<Result<Vec<FieldElem>>>()?;
            k.from_adic(coeffs)
        };
        self.generators
            .iter()
            .map(|g| Ok(r.new_poly(part(&g.u0)?, part(&g.u1)?, part(&g.u2)?)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn parse(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub const CSV_HEADER: &str = "family,type,a,t1,t2,k,generators";

fn hex_part(p: &KPoly, m: u32) -> String {
    let width = m.div_ceil(4) as usize;
    p.coeffs()
        .iter()
        .map(|c| format!("{:0width$x}", c.bits()))
        .collect()
}

/// One CSV row; generators are `u0:u1:u2` hex strings joined by `;`.
pub fn csv_row(r: &CodeRing, code: &SelfDualCode) -> String {
    let m = r.field().m();
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    let cell = code.cell;
    let gens: Vec<String> = code
        .generators
        .iter()
        .map(|g| {
            format!(
                "{}:{}:{}",
                hex_part(&g.p0, m),
                hex_part(&g.p1, m),
                hex_part(&g.p2, m)
            )
        })
        .collect();
    format!(
        "{},{},{},{},{},{},{}",
        code.family.name(),
        code.spec.type_tag,
        opt(cell.map(|c| c.a)),
        opt(cell.and_then(|c| c.t1)),
        opt(cell.and_then(|c| c.t2)),
        opt(cell.map(|c| c.k)),
        gens.join(";")
    )
}

fn y_power(j: usize) -> String {
    match j {
        0 => "1".into(),
        1 => "(x+1)".into(),
        _ => format!("(x+1)^{j}"),
    }
}

/// `Σ c_j (x+1)^j` as text, plus whether it is a single term.
pub fn render_kpoly(p: &KPoly) -> (String, bool) {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            if *c == FieldElem::ONE {
                y_power(j)
            } else if j == 0 {
                format!("{{{}}}", c.bits())
            } else {
                format!("{{{}}}{}", c.bits(), y_power(j))
            }
        })
        .collect();
    match terms.len() {
        0 => ("0".into(), true),
        1 => (terms[0].clone(), true),
        _ => (terms.join(" + "), false),
    }
}

pub fn render_ring_poly(g: &RingPoly) -> String {
    let mut out = Vec::new();
    for (i, p) in g.parts().iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let (body, single) = render_kpoly(p);
        let u = ["", "u", "u^2"][i];
        out.push(match (i, single, body.as_str()) {
            (0, _, _) => body,
            (_, _, "1") => u.to_string(),
            (_, true, _) => format!("{u}{body}"),
            _ => format!("{u}({body})"),
        });
    }
    if out.is_empty() {
        "0".into()
    } else {
        out.join(" + ")
    }
}

pub fn render_code(gens: &[RingPoly]) -> String {
    let inner: Vec<String> = gens.iter().map(render_ring_poly).collect();
    format!("<{}>", inner.join(", "))
}

/// Two-column text table grouped by family.
pub fn render_table(codes: &[SelfDualCode]) -> String {
    let mut out = String::new();
    let mut last = None;
    for code in codes {
        if last != Some(code.family) {
            let title = match code.family {
                Family::Type4 => "--",
                Family::H1Zero => "h1(x) = 0",
                Family::H1Unit => "h1(x) unit",
            };
            out.push_str(&format!("== {title} ==\n"));
            last = Some(code.family);
        }
        out.push_str(&format!(
            "Type {} | {}\n",
            code.spec.type_tag,
            render_code(&code.generators)
        ));
    }
    out
}
