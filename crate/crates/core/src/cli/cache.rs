//! Optional on-disk cache of computed tables.
//!
//! One file per `(module, parameter)`: a header line
//! `#circfib-cache<TAB>version=V<TAB>key=K<TAB>rows=R` followed by `R` TSV
//! records. Files are written to a temporary name and renamed into place.
//! Unreadable, stale or malformed entries are logged and recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::{debug, warn};

use super::output::{escape, split_tsv};
use crate::error::{Error, Result};
use crate::group::{self, Group, GroupElement};
use crate::wheels::{TaxonomyTable, WheelTree};

/// Bumped whenever a stored table's layout or meaning changes.
pub const CACHE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "-1");

const MAGIC: &str = "#circfib-cache";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, module: &str, param: &str) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{module}-{param}.tsv")))
    }

    pub fn store(&self, module: &str, param: &str, rows: &[Vec<String>]) -> Result<()> {
        let Some(path) = self.path(module, param) else {
            return Ok(());
        };
        let dir = self.dir.as_ref().expect("path implies dir");
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        fs::create_dir_all(dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        let mut text = format!(
            "{MAGIC}\tversion={CACHE_VERSION}\tkey={module}/{param}\trows={}\n",
            rows.len()
        );
        for row in rows {
            let cells: Vec<String> = row.iter().map(|c| escape(c)).collect();
            text.push_str(&cells.join("\t"));
            text.push('\n');
        }
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.persist(&path).map_err(|e| io(e.error))?;
        debug!("cached {module}/{param} at {}", path.display());
        Ok(())
    }

    /// `None` on a miss, with a warning if an entry existed but was unusable.
    pub fn load(&self, module: &str, param: &str) -> Option<Vec<Vec<String>>> {
        let path = self.path(module, param)?;
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                warn!("ignoring unreadable cache entry {}: {e}", path.display());
                return None;
            }
        };
        match parse_entry(&text, module, param) {
            Ok(rows) => Some(rows),
            Err(why) => {
                warn!("ignoring cache entry {}: {why}", path.display());
                None
            }
        }
    }

    /// `load` followed by `decode`; a decode error counts as corruption.
    fn fetch<T>(
        &self,
        module: &str,
        param: &str,
        decode: impl Fn(&[Vec<String>]) -> Result<T>,
        compute: impl FnOnce() -> Result<T>,
        encode: impl Fn(&T) -> Vec<Vec<String>>,
    ) -> Result<T> {
        if let Some(rows) = self.load(module, param) {
            match decode(&rows) {
                Ok(v) => return Ok(v),
                Err(e) => warn!("ignoring cache entry {module}/{param}: {e}"),
            }
        }
        let value = compute()?;
        if self.dir.is_some() {
            if let Err(e) = self.store(module, param, &encode(&value)) {
                warn!("could not write cache entry {module}/{param}: {e}");
            }
        }
        Ok(value)
    }

    /// The elements of the group for `l`, in enumeration order.
    pub fn enumeration(&self, ell: usize, max_ell: usize) -> Result<Vec<GroupElement>> {
        self.fetch(
            "group",
            &format!("l{ell}"),
            |rows| decode_elements(rows, ell),
            || group::enumerate_bounded(ell, max_ell),
            |els| els.iter().map(|u| vec![u.to_string()]).collect(),
        )
    }

    pub fn group(&self, ell: usize, max_ell: usize) -> Result<Group> {
        Ok(Group::from_elements(ell, self.enumeration(ell, max_ell)?))
    }

    /// Addition table over indices into [`Cache::enumeration`].
    pub fn cayley_table(&self, ell: usize, max_ell: usize) -> Result<Vec<Vec<usize>>> {
        self.fetch(
            "cayley",
            &format!("l{ell}"),
            decode_square,
            || Ok(self.group(ell, max_ell)?.cayley_table()),
            |t| {
                t.iter()
                    .map(|r| r.iter().map(usize::to_string).collect())
                    .collect()
            },
        )
    }

    pub fn taxonomy(&self, ell: usize, max_ell: usize) -> Result<TaxonomyTable> {
        self.fetch(
            "taxonomy",
            &format!("l{ell}"),
            |rows| decode_taxonomy(rows, ell),
            || TaxonomyTable::build(ell, max_ell),
            |t| {
                t.trees()
                    .iter()
                    .zip(t.images())
                    .map(|(tree, u)| {
                        vec![
                            tree.spokes().to_string(),
                            tree.rims().to_string(),
                            u.to_string(),
                        ]
                    })
                    .collect()
            },
        )
    }
}

fn parse_entry(
    text: &str,
    module: &str,
    param: &str,
) -> std::result::Result<Vec<Vec<String>>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let fields: Vec<&str> = header.split('\t').collect();
    let [magic, version, key, rows] = fields.as_slice() else {
        return Err("malformed header".into());
    };
    if *magic != MAGIC {
        return Err("not a cache file".into());
    }
    if version.strip_prefix("version=") != Some(CACHE_VERSION) {
        return Err(format!("stale {version}, want {CACHE_VERSION}"));
    }
    if key.strip_prefix("key=") != Some(&format!("{module}/{param}")) {
        return Err(format!("key mismatch: {key}"));
    }
    let count: usize = rows
        .strip_prefix("rows=")
        .and_then(|r| r.parse().ok())
        .ok_or("malformed row count")?;
    let body: Vec<Vec<String>> = lines
        .map(split_tsv)
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    if body.len() != count {
        return Err(format!("{} rows, header says {count}", body.len()));
    }
    Ok(body)
}

fn decode_elements(rows: &[Vec<String>], ell: usize) -> Result<Vec<GroupElement>> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let [word] = row.as_slice() else {
            return Err(Error::Cache("expected one field".into()));
        };
        let u = GroupElement::new(word.parse()?)?;
        if u.ell() != ell {
            return Err(Error::Cache(format!("{u} has the wrong length")));
        }
        out.push(u);
    }
    if out.windows(2).any(|w| w[0].word() >= w[1].word()) {
        return Err(Error::Cache("elements out of order".into()));
    }
    Ok(out)
}

fn decode_square(rows: &[Vec<String>]) -> Result<Vec<Vec<usize>>> {
    let n = rows.len();
    rows.iter()
        .map(|row| {
            if row.len() != n {
                return Err(Error::Cache("table is not square".into()));
            }
            row.iter()
                .map(|c| match c.parse::<usize>() {
                    Ok(i) if i < n => Ok(i),
                    _ => Err(Error::Cache(format!("bad index {c:?}"))),
                })
                .collect()
        })
        .collect()
}

fn decode_taxonomy(rows: &[Vec<String>], ell: usize) -> Result<TaxonomyTable> {
    let pairs = rows
        .iter()
        .map(|row| {
            let [spokes, rims, word] = row.as_slice() else {
                return Err(Error::Cache("expected three fields".into()));
            };
            let bad = |_| Error::Cache(format!("bad bitmask in {row:?}"));
            let tree = WheelTree::new(
                ell,
                spokes.parse().map_err(bad)?,
                rims.parse().map_err(bad)?,
            )?;
            let u = GroupElement::new(word.parse()?)?;
            if u.ell() != ell {
                return Err(Error::Cache(format!("{u} has the wrong length")));
            }
            Ok((tree, u))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TaxonomyTable::from_pairs(ell, pairs))
}
