//! On-disk store for exact ideal pieces, one canonical JSON file per key.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Piece, QuotientContext};
use crate::klr::Monomial;
use crate::linalg::{Echelon, ExactEchelon, Field};
use crate::quiver::{RootSpec, Seq, WeightSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, PartialEq)]
struct Column {
    word: Vec<u8>,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    schema_version: u32,
    nu: RootSpec,
    lambda: WeightSpec,
    bottom: Seq,
    top: Seq,
    degree: i64,
    columns: Vec<Column>,
    rows_tried: usize,
    rref: Vec<Vec<(usize, String)>>,
}

fn tag(labels: impl Iterator<Item = String>) -> String {
    labels.map(|s| s.replace('-', "m")).collect::<Vec<_>>().join(".")
}

pub(crate) fn file_name(ctx: &QuotientContext, bottom: &Seq, top: &Seq, d: i64) -> String {
    let nu = tag(ctx.root.iter().map(|(v, m)| format!("{}x{}", v.0, m)));
    let lam = tag(ctx.weight.iter().map(|(v, m)| format!("{}x{}", v.0, m)));
    let b = tag(bottom.labels().into_iter().map(|v| v.to_string()));
    let t = tag(top.labels().into_iter().map(|v| v.to_string()));
    format!("nu{nu}_l{lam}_b{b}_t{t}_d{}.json", d.to_string().replace('-', "m"))
}

fn columns_of(cols: &[Monomial]) -> Vec<Column> {
    cols.iter().map(|m| Column { word: m.word().to_vec(), exps: m.exps().to_vec() }).collect()
}

fn parse_q(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            (q != BigInt::from(0)).then(|| BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub(crate) fn path(dir: &Path, ctx: &QuotientContext, bottom: &Seq, top: &Seq, d: i64) -> PathBuf {
    dir.join(file_name(ctx, bottom, top, d))
}

/// A stored piece, or `None` when missing, unreadable, stale or for a different key.
pub(crate) fn load(
    dir: &Path,
    ctx: &QuotientContext,
    bottom: &Seq,
    top: &Seq,
    d: i64,
    columns: &[Monomial],
) -> Option<Piece> {
    let text = fs::read_to_string(path(dir, ctx, bottom, top, d)).ok()?;
    let e: Entry = serde_json::from_str(&text).ok()?;
    if e.schema_version != SCHEMA_VERSION
        || e.nu != ctx.root
        || e.lambda != ctx.weight
        || &e.bottom != bottom
        || &e.top != top
        || e.degree != d
        || e.columns != columns_of(columns)
    {
        return None;
    }
    let mut rows = Vec::with_capacity(e.rref.len());
    for r in &e.rref {
        let mut row = Vec::with_capacity(r.len());
        for (k, c) in r {
            if *k >= columns.len() {
                return None;
            }
            row.push((*k, parse_q(c)?));
        }
        rows.push(row);
    }
    let mut p = Piece::new(columns.to_vec(), Field::Exact);
    p.echelon = Echelon::Exact(ExactEchelon::from_rref(columns.len(), &rows));
    p.rows_tried = e.rows_tried;
    Some(p)
}

pub(crate) fn store(dir: &Path, ctx: &QuotientContext, bottom: &Seq, top: &Seq, d: i64, p: &Piece) -> std::io::Result<()> {
    let Echelon::Exact(ech) = &p.echelon else { return Ok(()) };
    let rref = ech
        .rref()
        .into_iter()
        .map(|r| r.into_iter().map(|(k, c)| (k, format!("{}/{}", c.numer(), c.denom()))).collect())
        .collect();
    let entry = Entry {
        schema_version: SCHEMA_VERSION,
        nu: ctx.root.clone(),
        lambda: ctx.weight.clone(),
        bottom: bottom.clone(),
        top: top.clone(),
        degree: d,
        columns: columns_of(&p.columns),
        rows_tried: p.rows_tried,
        rref,
    };
    fs::create_dir_all(dir)?;
    let target = path(dir, ctx, bottom, top, d);
    // write then rename so concurrent readers never see a partial file
    let tmp = target.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(serde_json::to_string(&entry).expect("cache entry serializes").as_bytes())?;
    f.write_all(b"\n")?;
    drop(f);
    fs::rename(tmp, target)
}
