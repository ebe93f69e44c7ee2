//! Line-oriented catalog files.
//!
//! One JSON object per line, LF-terminated: a header record carrying the
//! search bounds and tool version, then one record per integral ratio sorted
//! by id. Record fields are always written in the order
//! `id, a, b, tag, d, bounds`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::classify::{Family, Tag};
use crate::error::{Error, Result};
use crate::ratio::{normalize, FactorialParams};
use crate::step::StepFunction;

pub const FORMAT: &str = "factorial-ratio-catalog";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bounds {
    pub max_terms: usize,
    pub max_entry: u64,
    pub max_sum: u64,
}

/// An integral, primitive ratio with `L = K + 1` found by the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: u32,
    pub params: FactorialParams,
    pub tag: Tag,
    /// Hypergeometric degree `d = |α|`.
    pub degree: usize,
    pub step: StepFunction,
    /// Smallest search bounds that reach this entry.
    pub bounds: Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub bounds: Bounds,
    pub entries: Vec<CatalogEntry>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: String,
    bounds: Bounds,
    records: usize,
    sporadic: usize,
}

#[derive(Serialize, Deserialize)]
struct Record {
    id: u32,
    a: Vec<u64>,
    b: Vec<u64>,
    tag: String,
    d: usize,
    bounds: Bounds,
}

pub(crate) fn parse_tag(s: &str) -> Option<Tag> {
    let (name, rest) = s.split_once('(')?;
    let inner = rest.strip_suffix(')')?;
    let nums: Vec<u64> = inner
        .split(',')
        .map(|t| t.trim().parse().ok())
        .collect::<Option<_>>()?;
    match (name, nums.as_slice()) {
        ("Sporadic", [id]) => Some(Tag::Sporadic(u32::try_from(*id).ok()?)),
        ("Family1", &[x, y]) => Some(Tag::Family(Family::One { x, y })),
        ("Family2", &[x, y]) => Some(Tag::Family(Family::Two { x, y })),
        ("Family3", &[x, y]) => Some(Tag::Family(Family::Three { x, y })),
        _ => None,
    }
}

impl Catalog {
    pub fn sporadic_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.tag, Tag::Sporadic(_)))
            .count()
    }

    pub fn sporadics(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.tag, Tag::Sporadic(_)))
    }

    /// The full file contents: header line plus one line per entry.
    pub fn to_text(&self) -> String {
        let header = Header {
            format: FORMAT.to_string(),
            version: VERSION.to_string(),
            bounds: self.bounds,
            records: self.entries.len(),
            sporadic: self.sporadic_count(),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for e in &self.entries {
            let rec = Record {
                id: e.id,
                a: e.params.a().to_vec(),
                b: e.params.b().to_vec(),
                tag: e.tag.to_string(),
                d: e.degree,
                bounds: e.bounds,
            };
            out.push_str(&serde_json::to_string(&rec).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    /// Parses a catalog file. The step-function form is recomputed from the parameters.
    pub fn parse(text: &str) -> Result<Catalog> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, message: String| Error::CatalogParse {
            line: line + 1,
            message,
        };
        let (hl, header_line) = lines.next().ok_or_else(|| err(0, "empty catalog".into()))?;
        let header: Header =
            serde_json::from_str(header_line).map_err(|e| err(hl, format!("bad header: {e}")))?;
        if header.format != FORMAT {
            return Err(err(hl, format!("unknown format {:?}", header.format)));
        }
        let mut entries = Vec::new();
        for (i, line) in lines {
            let rec: Record = serde_json::from_str(line).map_err(|e| err(i, e.to_string()))?;
            let params = normalize(&rec.a, &rec.b).map_err(|e| err(i, e.to_string()))?;
            let tag =
                parse_tag(&rec.tag).ok_or_else(|| err(i, format!("bad tag {:?}", rec.tag)))?;
            let step = crate::classify::phi_map(&params);
            entries.push(CatalogEntry {
                id: rec.id,
                params,
                tag,
                degree: rec.d,
                step,
                bounds: rec.bounds,
            });
        }
        if entries.len() != header.records {
            return Err(err(
                hl,
                format!(
                    "header says {} records, found {}",
                    header.records,
                    entries.len()
                ),
            ));
        }
        Ok(Catalog {
            bounds: header.bounds,
            entries,
        })
    }
}

/// Primitive sporadic ratios by id, consulted by `classify`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SporadicCatalog {
    entries: Vec<(u32, FactorialParams)>,
}

static BUILTIN: OnceLock<SporadicCatalog> = OnceLock::new();

/// Sporadic records of a search at the stabilizing bounds, generated by `fratio search`.
const BUILTIN_TEXT: &str = include_str!("../data/sporadic.jsonl");

impl SporadicCatalog {
    pub fn from_catalog(c: &Catalog) -> Self {
        let entries = c
            .entries
            .iter()
            .filter_map(|e| match e.tag {
                Tag::Sporadic(id) => Some((id, e.params.clone())),
                _ => None,
            })
            .collect();
        SporadicCatalog { entries }
    }

    /// The snapshot shipped with the library.
    pub fn builtin() -> &'static SporadicCatalog {
        BUILTIN.get_or_init(|| {
            let c = Catalog::parse(BUILTIN_TEXT).expect("bundled catalog parses");
            SporadicCatalog::from_catalog(&c)
        })
    }

    pub fn lookup(&self, p: &FactorialParams) -> Option<u32> {
        self.entries.iter().find(|(_, q)| q == p).map(|(id, _)| *id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &FactorialParams)> {
        self.entries.iter().map(|(id, p)| (*id, p))
    }
}
