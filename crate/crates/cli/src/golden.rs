//! Published tables, checked in as CSV. Every row carries a `source` column
//! naming the table it was transcribed from; nothing here is recomputed.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;

/// A golden table: integer columns keyed by their header, plus provenance.
#[derive(Clone, Debug)]
pub struct GoldenTable {
    pub id: &'static str,
    /// How the key columns index the table.
    pub note: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<GoldenRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub values: BTreeMap<String, BigInt>,
    pub source: String,
}

impl GoldenRow {
    pub fn get(&self, col: &str) -> &BigInt {
        &self.values[col]
    }

    pub fn usize(&self, col: &str) -> usize {
        usize::try_from(self.get(col)).expect("small key")
    }
}

const FILES: &[(&str, &str, &str)] = &[
    (
        "mobius",
        "n; coefficient of x^x_degree y^y_degree for two copies",
        include_str!("../golden/mobius.csv"),
    ),
    (
        "vertices",
        "ell copies, n coordinates",
        include_str!("../golden/vertices.csv"),
    ),
    (
        "regions",
        "ell copies, n coordinates",
        include_str!("../golden/regions.csv"),
    ),
    (
        "bounded_regions",
        "ell copies, n coordinates",
        include_str!("../golden/bounded_regions.csv"),
    ),
    (
        "face_numbers",
        "ell copies, n coordinates, face dimension",
        include_str!("../golden/face_numbers.csv"),
    ),
    (
        "diagonal_counts",
        "permutahedron of [n]",
        include_str!("../golden/diagonal_counts.csv"),
    ),
    (
        "bigraded",
        "n; dimensions of the σ and τ faces",
        include_str!("../golden/bigraded.csv"),
    ),
];

pub fn table_ids() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(id, _, _)| *id)
}

pub fn load(id: &str) -> Result<GoldenTable> {
    let &(id, note, text) = FILES
        .iter()
        .find(|(i, _, _)| *i == id)
        .ok_or_else(|| anyhow!("no golden table {id:?}"))?;
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers: Vec<String> = rdr.headers()?.iter().map(String::from).collect();
    if headers.last().map(String::as_str) != Some("source") {
        bail!("golden table {id} has no provenance column");
    }
    let columns = headers[..headers.len() - 1].to_vec();
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let mut values = BTreeMap::new();
        for (h, v) in columns.iter().zip(rec.iter()) {
            let x: BigInt = v.parse().with_context(|| format!("{id}: {h} = {v:?}"))?;
            values.insert(h.clone(), x);
        }
        rows.push(GoldenRow {
            values,
            source: rec[columns.len()].to_string(),
        });
    }
    Ok(GoldenTable {
        id,
        note,
        columns,
        rows,
    })
}

impl GoldenTable {
    /// Rows whose key columns equal the given values.
    pub fn select<'a>(
        &'a self,
        key: &'a [(&'a str, i64)],
    ) -> impl Iterator<Item = &'a GoldenRow> + 'a {
        self.rows
            .iter()
            .filter(move |r| key.iter().all(|(c, v)| r.get(c) == &BigInt::from(*v)))
    }

    /// The single value of `col` at `key`.
    pub fn value(&self, key: &[(&str, i64)], col: &str) -> Result<BigInt> {
        let hits: Vec<&GoldenRow> = self.select(key).collect();
        match hits[..] {
            [r] => Ok(r.get(col).clone()),
            _ => bail!("{}: {} rows match {:?}", self.id, hits.len(), key),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_tables_parse() {
        for id in table_ids() {
            let t = load(id).unwrap();
            assert!(!t.rows.is_empty());
            assert!(t.rows.iter().all(|r| !r.source.is_empty()));
        }
        let v = load("vertices").unwrap();
        assert_eq!(
            v.value(&[("ell", 3), ("n", 3)], "vertices").unwrap(),
            BigInt::from(21)
        );
    }
}
