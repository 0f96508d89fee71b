//! Self-dual cyclic codes of length `2^s` over `F_{2^m}[u]/⟨u³⟩`.

pub mod chain;
pub mod cli;
pub mod codes;
pub mod doc;
pub mod duality;
pub mod error;
pub mod field;
pub mod linalg;
pub mod oracle;
pub mod ring;
pub mod selfdual;
pub mod table1;

pub use chain::{ChainRing, KPoly};
pub use codes::{CodeSpec, TorsionProfile};
pub use duality::IdealSpan;
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use linalg::GfMatrix;
pub use ring::{CodeRing, RingPoly};
