//! Full operation tables as CSV or JSON documents.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::nearfield::DicksonNearfield;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableOp {
    Add,
    /// The field product of `F_{q^n}`.
    Mul,
    /// The nearfield product.
    Circle,
}

impl FromStr for TableOp {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "add" => Ok(TableOp::Add),
            "mul" => Ok(TableOp::Mul),
            "circle" => Ok(TableOp::Circle),
            other => Err(format!(
                "unknown operation `{other}` (expected add, mul or circle)"
            )),
        }
    }
}

impl TableOp {
    pub fn name(self) -> &'static str {
        match self {
            TableOp::Add => "add",
            TableOp::Mul => "mul",
            TableOp::Circle => "circle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!(
                "unknown table format `{other}` (expected csv or json)"
            )),
        }
    }
}

#[derive(Serialize)]
struct TableDocument<'a> {
    field: &'a FieldSpec,
    q: u64,
    n: u32,
    op: TableOp,
    elements: Vec<u32>,
    table: Vec<Vec<u32>>,
}

/// The `N x N` table of `op`, rows and columns in ascending code order.
pub fn cayley_matrix(nf: &DicksonNearfield, op: TableOp) -> Vec<Vec<u32>> {
    let field = nf.field();
    field
        .elements()
        .map(|a| {
            field
                .elements()
                .map(|b| apply(nf, op, a, b).code())
                .collect()
        })
        .collect()
}

fn apply(nf: &DicksonNearfield, op: TableOp, a: FieldElement, b: FieldElement) -> FieldElement {
    match op {
        TableOp::Add => nf.field().add(a, b),
        TableOp::Mul => nf.field().mul(a, b),
        TableOp::Circle => nf.circle(a, b),
    }
}

/// Renders the table of `op`. The CSV header row is the operation name
/// followed by the column codes; each row starts with its own code.
pub fn export_cayley(
    nf: &DicksonNearfield,
    op: TableOp,
    format: TableFormat,
    export_cap: u32,
) -> Result<String> {
    if nf.order() > export_cap {
        return Err(Error::CapExceeded {
            what: "Cayley table export",
            size: nf.order() as u64,
            cap: export_cap as u64,
        });
    }
    let matrix = cayley_matrix(nf, op);
    let elements: Vec<u32> = nf.field().elements().map(|e| e.code()).collect();
    match format {
        TableFormat::Csv => {
            let mut out = String::new();
            out.push_str(op.name());
            for c in &elements {
                write!(out, ",{c}").unwrap();
            }
            out.push('\n');
            for (row, cells) in elements.iter().zip(&matrix) {
                write!(out, "{row}").unwrap();
                for c in cells {
                    write!(out, ",{c}").unwrap();
                }
                out.push('\n');
            }
            Ok(out)
        }
        TableFormat::Json => {
            let doc = TableDocument {
                field: nf.field().spec(),
                q: nf.pair().q(),
                n: nf.pair().n(),
                op,
                elements,
                table: matrix,
            };
            let mut s = serde_json::to_string(&doc).expect("table document serializes");
            s.push('\n');
            Ok(s)
        }
    }
}
