//! Exhaustive search over canonical primitive parameters with `L = K + 1`.
//!
//! Numerator tuples are enumerated in a fixed order and dealt round-robin to
//! shards. Each shard walks every denominator partition of the numerator sum,
//! rejects by scanning the jump points of `f` from the left, and returns its
//! hits. Hits are merged and sorted by `(K, a, b)`, so the catalog does not
//! depend on the shard count.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::catalog::{Bounds, Catalog, CatalogEntry};
use crate::classify::{is_integral, match_family, phi_map, Family, Tag};
use crate::error::{Error, Result};
use crate::ratio::{first_negative, FactorialParams};
use crate::spectrum::spectrum_of;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_terms: usize,
    pub max_entry: u64,
    pub max_sum: u64,
    pub shards: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_terms: 4,
            max_entry: 30,
            max_sum: 60,
            shards: 1,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::InvalidConfig("max_terms must be at least 1".into()));
        }
        if self.max_entry == 0 {
            return Err(Error::InvalidConfig("max_entry must be at least 1".into()));
        }
        if self.max_entry > self.max_sum {
            return Err(Error::InvalidConfig(
                "max_entry must not exceed max_sum".into(),
            ));
        }
        if self.shards == 0 {
            return Err(Error::InvalidConfig("shards must be at least 1".into()));
        }
        // the jump-point scan keeps at most 16 cursors
        if 2 * self.max_terms + 1 > 16 {
            return Err(Error::InvalidConfig("max_terms must be at most 7".into()));
        }
        Ok(())
    }

    pub fn bounds(&self) -> Bounds {
        Bounds {
            max_terms: self.max_terms,
            max_entry: self.max_entry,
            max_sum: self.max_sum,
        }
    }
}

/// Nonincreasing `len`-tuples with entries in `1..=max_part` and sum at most `max_sum`.
fn numerator_tuples(len: usize, max_part: u64, max_sum: u64) -> Vec<Vec<u64>> {
    fn rec(len: usize, max_part: u64, budget: u64, buf: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if buf.len() == len {
            out.push(buf.clone());
            return;
        }
        let slots = (len - buf.len()) as u64;
        // leave at least 1 for each later slot
        let hi = max_part.min(budget.saturating_sub(slots - 1));
        for x in 1..=hi {
            buf.push(x);
            rec(len, x, budget - x, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    rec(
        len,
        max_part,
        max_sum,
        &mut Vec::with_capacity(len),
        &mut out,
    );
    out
}

/// Calls `visit` with every nonincreasing `parts`-tuple of entries in
/// `1..=max_part` summing to `total` and avoiding `excluded`.
fn for_each_partition(
    total: u64,
    parts: usize,
    max_part: u64,
    excluded: &[u64],
    buf: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]),
) {
    if parts == 0 {
        if total == 0 {
            visit(buf);
        }
        return;
    }
    let p = parts as u64;
    if total < p || total > p * max_part {
        return;
    }
    if parts == 1 {
        if total <= max_part && !excluded.contains(&total) {
            buf.push(total);
            visit(buf);
            buf.pop();
        }
        return;
    }
    let hi = max_part.min(total - (p - 1));
    // the largest part is at least total / parts
    let lo = total.div_ceil(p);
    for x in (lo..=hi).rev() {
        if excluded.contains(&x) {
            continue;
        }
        buf.push(x);
        for_each_partition(total - x, parts - 1, x, excluded, buf, visit);
        buf.pop();
    }
}

fn tuple_gcd(a: &[u64], b: &[u64]) -> u64 {
    a.iter().chain(b).fold(0, |g, &x| g.gcd(&x))
}

/// All numerator tuples in enumeration order.
fn numerators(cfg: &SearchConfig) -> Vec<Vec<u64>> {
    (1..=cfg.max_terms)
        .flat_map(|k| numerator_tuples(k, cfg.max_entry, cfg.max_sum))
        .collect()
}

fn denominators_for(a: &[u64], cfg: &SearchConfig, max_part: u64, visit: &mut dyn FnMut(&[u64])) {
    let total: u64 = a.iter().sum();
    let mut buf = Vec::with_capacity(a.len() + 1);
    for_each_partition(
        total,
        a.len() + 1,
        max_part.min(cfg.max_entry),
        a,
        &mut buf,
        &mut |b| {
            if tuple_gcd(a, b) == 1 {
                visit(b);
            }
        },
    );
}

/// Every canonical, balanced, primitive pair with `K ≤ max_terms`, `L = K + 1`,
/// entries at most `max_entry` and `Σa ≤ max_sum`, each exactly once.
pub fn enumerate_candidates(cfg: &SearchConfig) -> impl Iterator<Item = FactorialParams> + '_ {
    numerators(cfg).into_iter().flat_map(move |a| {
        let mut bs = Vec::new();
        denominators_for(&a, cfg, cfg.max_entry, &mut |b| bs.push(b.to_vec()));
        bs.into_iter()
            .map(move |b| FactorialParams::from_canonical(a.clone(), b))
    })
}

/// Integral candidates of one shard, unsorted.
///
/// Denominators are capped below `max(a)`: if the largest entry sits in `b`
/// then `f(1 / max) < 0`, the first jump point, so those candidates would be
/// rejected before anything else is evaluated.
fn shard_hits(cfg: &SearchConfig, numerators: &[Vec<u64>], shard: usize) -> Vec<FactorialParams> {
    let mut hits = Vec::new();
    for a in numerators.iter().skip(shard).step_by(cfg.shards) {
        let cap = a[0] - 1;
        denominators_for(a, cfg, cap, &mut |b| {
            if first_negative(a, b).is_none() {
                hits.push(FactorialParams::from_canonical(a.clone(), b.to_vec()));
            }
        });
    }
    hits
}

fn sort_hits(hits: &mut [FactorialParams]) {
    hits.sort_by(|p, q| (p.k(), p.a(), p.b()).cmp(&(q.k(), q.a(), q.b())));
}

/// Turns sorted hits into catalog entries: families first by pattern, the
/// rest numbered as sporadic in the same order.
fn build_catalog(cfg: &SearchConfig, hits: Vec<FactorialParams>) -> Catalog {
    let mut sporadic = 0u32;
    let entries = hits
        .into_iter()
        .enumerate()
        .map(|(i, params)| {
            let tag = match match_family(&params).first() {
                Some(&fam) => Tag::Family(fam),
                None => {
                    sporadic += 1;
                    Tag::Sporadic(sporadic)
                }
            };
            let degree = spectrum_of(&params).map(|s| s.degree()).unwrap_or(0);
            let bounds = Bounds {
                max_terms: params.k(),
                max_entry: params.max_entry(),
                max_sum: params.numerator_sum(),
            };
            CatalogEntry {
                id: i as u32 + 1,
                step: phi_map(&params),
                params,
                tag,
                degree,
                bounds,
            }
        })
        .collect();
    Catalog {
        bounds: cfg.bounds(),
        entries,
    }
}

/// Runs the search with `cfg.shards` worker threads.
pub fn run_search(cfg: &SearchConfig) -> Result<Catalog> {
    cfg.validate()?;
    let nums = numerators(cfg);
    let mut hits: Vec<FactorialParams> = if cfg.shards == 1 {
        shard_hits(cfg, &nums, 0)
    } else {
        let nums = &nums;
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..cfg.shards)
                .map(|s| scope.spawn(move || shard_hits(cfg, nums, s)))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("search shard panicked"))
                .collect()
        })
    };
    sort_hits(&mut hits);
    Ok(build_catalog(cfg, hits))
}

#[derive(Serialize, Deserialize)]
struct ShardFile {
    config: SearchConfig,
    shard: usize,
    hits: Vec<(Vec<u64>, Vec<u64>)>,
}

fn shard_path(dir: &Path, cfg: &SearchConfig, shard: usize) -> PathBuf {
    dir.join(format!(
        "shard-k{}-e{}-s{}-{}-of-{}.json",
        cfg.max_terms, cfg.max_entry, cfg.max_sum, shard, cfg.shards
    ))
}

/// Like [`run_search`], but each finished shard is written to `dir` and
/// shards already present there are loaded instead of recomputed.
pub fn run_search_checkpointed(cfg: &SearchConfig, dir: &Path) -> io::Result<Catalog> {
    cfg.validate()
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    fs::create_dir_all(dir)?;
    let nums = numerators(cfg);
    let load = |shard: usize| -> Option<Vec<FactorialParams>> {
        let text = fs::read_to_string(shard_path(dir, cfg, shard)).ok()?;
        let file: ShardFile = serde_json::from_str(&text).ok()?;
        if file.config != *cfg || file.shard != shard {
            return None;
        }
        Some(
            file.hits
                .into_iter()
                .map(|(a, b)| FactorialParams::from_canonical(a, b))
                .collect(),
        )
    };
    let results: Vec<io::Result<Vec<FactorialParams>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..cfg.shards)
            .map(|s| {
                let nums = &nums;
                scope.spawn(move || {
                    if let Some(hits) = load(s) {
                        return Ok(hits);
                    }
                    let hits = shard_hits(cfg, nums, s);
                    let file = ShardFile {
                        config: *cfg,
                        shard: s,
                        hits: hits
                            .iter()
                            .map(|p| (p.a().to_vec(), p.b().to_vec()))
                            .collect(),
                    };
                    let tmp = shard_path(dir, cfg, s).with_extension("tmp");
                    fs::write(&tmp, serde_json::to_string(&file)?)?;
                    fs::rename(&tmp, shard_path(dir, cfg, s))?;
                    Ok(hits)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search shard panicked"))
            .collect()
    });
    let mut hits = Vec::new();
    for r in results {
        hits.extend(r?);
    }
    sort_hits(&mut hits);
    Ok(build_catalog(cfg, hits))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SporadicSummary {
    pub id: u32,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub bounds: Bounds,
    pub total: usize,
    pub family1: usize,
    pub family2: usize,
    pub family3: usize,
    pub sporadic: usize,
    pub sporadics: Vec<SporadicSummary>,
    /// Entries that fail re-verification. Nonempty means a bug.
    pub unclassified: Vec<String>,
}

/// Counts by tag, lists the sporadics, and re-verifies every entry.
pub fn completeness_report(catalog: &Catalog) -> CompletenessReport {
    let mut counts = [0usize; 3];
    let mut sporadics = Vec::new();
    let mut unclassified = Vec::new();
    for e in &catalog.entries {
        let p = &e.params;
        let sound = is_integral(p).is_ok() && p.gcd() == 1 && p.excess() == 1;
        let tag_ok = match e.tag {
            Tag::Family(fam) => {
                counts[fam.index() as usize - 1] += 1;
                match_family(p).contains(&fam)
            }
            Tag::Sporadic(id) => {
                sporadics.push(SporadicSummary {
                    id,
                    a: p.a().to_vec(),
                    b: p.b().to_vec(),
                    d: e.degree,
                });
                match_family(p).is_empty()
            }
            Tag::NotIntegral => false,
        };
        if !sound || !tag_ok {
            unclassified.push(format!("{} {}", p, e.tag));
        }
    }
    CompletenessReport {
        bounds: catalog.bounds,
        total: catalog.entries.len(),
        family1: counts[0],
        family2: counts[1],
        family3: counts[2],
        sporadic: sporadics.len(),
        sporadics,
        unclassified,
    }
}

/// Family members reachable within `cfg`, for cross-checking a catalog.
pub fn family_members(cfg: &SearchConfig) -> Vec<Family> {
    let mut out = Vec::new();
    let n = cfg.max_sum;
    for x in 1..=n {
        for y in 1..=n {
            if x.gcd(&y) != 1 {
                continue;
            }
            let mut cands = vec![Family::One { x, y }, Family::Three { x, y }];
            if x > y {
                cands.push(Family::Two { x, y });
            }
            for fam in cands {
                let p = fam.params();
                if p.k() <= cfg.max_terms
                    && p.max_entry() <= cfg.max_entry
                    && p.numerator_sum() <= cfg.max_sum
                    && p.gcd() == 1
                {
                    out.push(fam);
                }
            }
        }
    }
    out
}
