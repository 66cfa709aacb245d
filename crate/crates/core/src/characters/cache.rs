//! On-disk cache of irreducible characters and expression decompositions.
//!
//! One file per record under `<dir>/v<SCHEMA>/`, named by the SHA-256 of its
//! key. Records are written to a temporary file and renamed into place, so
//! concurrent writers of the same (deterministic) record never expose a
//! partial file. Bumping [`SCHEMA`] invalidates everything.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use sha2::{Digest, Sha256};

use super::{decompose, expr, weyl_character, Character, IrrepLabel, WeightedModuleDescriptor};
use crate::error::{Error, Result};

pub const SCHEMA: u32 = 1;
pub const ENV_VAR: &str = "UNICURVE_CACHE_DIR";
const MAGIC: &str = "unicurve-cache";

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Debug)]
pub struct DecompositionCache {
    dir: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl DecompositionCache {
    /// Open (creating if needed) a cache rooted at `dir`.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().join(format!("v{SCHEMA}"));
        fs::create_dir_all(&dir).map_err(|source| Error::Cache {
            path: dir.clone(),
            source,
        })?;
        Ok(DecompositionCache {
            dir,
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
        })
    }

    /// Cache named by the environment, if set.
    pub fn from_env() -> Option<Result<Self>> {
        std::env::var_os(ENV_VAR).map(Self::open)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!(
            "{}.rec",
            hex::encode(Sha256::digest(key.as_bytes()))
        ))
    }

    fn load(&self, key: &str) -> Result<Option<(PathBuf, Vec<String>)>> {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(Error::Cache { path, source }),
        };
        let mut lines = text.lines();
        let bad = |msg: &str| Error::CacheFormat {
            path: path.clone(),
            msg: msg.to_string(),
        };
        if lines.next() != Some(&format!("{MAGIC} {SCHEMA}")) {
            return Err(bad("missing or wrong header"));
        }
        if lines.next() != Some(&format!("key {key}")) {
            return Err(bad("key mismatch"));
        }
        let body: Vec<String> = lines.map(str::to_string).collect();
        if body.last().map(String::as_str) != Some("end") {
            return Err(bad("truncated record"));
        }
        Ok(Some((path, body[..body.len() - 1].to_vec())))
    }

    fn store(&self, key: &str, body: &[String]) -> Result<()> {
        let path = self.path_for(key);
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut text = format!("{MAGIC} {SCHEMA}\nkey {key}\n");
        for line in body {
            text.push_str(line);
            text.push('\n');
        }
        text.push_str("end\n");
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        };
        write().map_err(|source| {
            let _ = fs::remove_file(&tmp);
            Error::Cache { path, source }
        })
    }

    /// Character of the irreducible `V_λ` at genus `g`.
    pub fn character(&self, g: usize, partition: &[u32]) -> Result<Character> {
        let key = format!("character g={g} {partition:?}");
        if let Some((path, body)) = self.load(&key)? {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return parse_character(g, &body).map_err(|msg| Error::CacheFormat { path, msg });
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let c = weyl_character(g, partition)?;
        self.store(&key, &format_character(&c))?;
        Ok(c)
    }

    /// Decomposition of a character expression at genus `g`.
    pub fn descriptor(&self, g: usize, expression: &str) -> Result<WeightedModuleDescriptor> {
        let key = format!("descriptor g={g} {}", expression.trim());
        if let Some((path, body)) = self.load(&key)? {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return parse_descriptor(&body).map_err(|msg| Error::CacheFormat { path, msg });
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let d = decompose(g, &expr::evaluate(g, expression)?)?;
        self.store(&key, &format_descriptor(&d))?;
        Ok(d)
    }
}

fn format_character(c: &Character) -> Vec<String> {
    let mut out = vec![match c.weight() {
        Some(w) => format!("weight {w}"),
        None => "weight mixed".to_string(),
    }];
    for (exp, coeff) in c.terms() {
        let e: Vec<String> = exp.iter().map(ToString::to_string).collect();
        out.push(format!("term {} {coeff}", e.join(",")));
    }
    out
}

fn parse_character(g: usize, body: &[String]) -> std::result::Result<Character, String> {
    let (first, rest) = body.split_first().ok_or("empty character record")?;
    let weight = match first.strip_prefix("weight ").ok_or("missing weight line")? {
        "mixed" => None,
        w => Some(w.parse::<i32>().map_err(|e| e.to_string())?),
    };
    let mut terms = BTreeMap::new();
    for line in rest {
        let mut parts = line
            .strip_prefix("term ")
            .ok_or("expected a term line")?
            .split(' ');
        let exp = parts.next().ok_or("missing exponent")?;
        let coeff: i64 = parts
            .next()
            .ok_or("missing coefficient")?
            .parse()
            .map_err(|e: std::num::ParseIntError| e.to_string())?;
        let exp: Vec<i32> = if exp.is_empty() {
            Vec::new()
        } else {
            exp.split(',')
                .map(str::parse)
                .collect::<std::result::Result<_, std::num::ParseIntError>>()
                .map_err(|e| e.to_string())?
        };
        if exp.len() != g {
            return Err(format!("exponent of length {} at genus {g}", exp.len()));
        }
        terms.insert(exp, coeff);
    }
    Ok(Character::from_terms(g, terms, weight))
}

fn format_descriptor(d: &WeightedModuleDescriptor) -> Vec<String> {
    d.iter()
        .map(|(l, m)| {
            let p: Vec<String> = l.partition().iter().map(ToString::to_string).collect();
            format!("irrep [{}] {} {m}", p.join(","), l.twist())
        })
        .collect()
}

fn parse_descriptor(body: &[String]) -> std::result::Result<WeightedModuleDescriptor, String> {
    let mut d = WeightedModuleDescriptor::new();
    for line in body {
        let rest = line
            .strip_prefix("irrep [")
            .ok_or("expected an irrep line")?;
        let (p, rest) = rest.split_once("] ").ok_or("unterminated partition")?;
        let (twist, mult) = rest.split_once(' ').ok_or("missing multiplicity")?;
        let partition: Vec<u32> = if p.is_empty() {
            Vec::new()
        } else {
            p.split(',')
                .map(str::parse)
                .collect::<std::result::Result<_, std::num::ParseIntError>>()
                .map_err(|e| e.to_string())?
        };
        let twist: i32 = twist
            .parse()
            .map_err(|e: std::num::ParseIntError| e.to_string())?;
        let mult: u64 = mult
            .parse()
            .map_err(|e: std::num::ParseIntError| e.to_string())?;
        d = d.with(
            IrrepLabel::new(partition, twist).map_err(|e| e.to_string())?,
            mult,
        );
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_and_counts_hits() {
        let tmp = tempfile::tempdir().unwrap();
        let cache = DecompositionCache::open(tmp.path()).unwrap();
        let fresh = cache.character(3, &[1, 1, 1]).unwrap();
        let again = cache.character(3, &[1, 1, 1]).unwrap();
        assert_eq!(fresh, again);
        assert_eq!((cache.misses(), cache.hits()), (1, 1));

        let d = cache.descriptor(4, "Λ2(std) - trivial").unwrap();
        let reopened = DecompositionCache::open(tmp.path()).unwrap();
        assert_eq!(reopened.descriptor(4, "Λ2(std) - trivial").unwrap(), d);
        assert_eq!(reopened.hits(), 1);
        assert_eq!(d.dimension(4).unwrap(), 27);
    }

    #[test]
    fn corrupt_records_are_reported_with_path() {
        let tmp = tempfile::tempdir().unwrap();
        let cache = DecompositionCache::open(tmp.path()).unwrap();
        cache.descriptor(3, "std").unwrap();
        let path = cache.path_for("descriptor g=3 std");
        fs::write(&path, "garbage\n").unwrap();
        match cache.descriptor(3, "std") {
            Err(Error::CacheFormat { path: p, .. }) => assert_eq!(p, path),
            other => panic!("expected a format error, got {other:?}"),
        }
    }

    #[test]
    fn unwritable_directory_is_an_error() {
        let tmp = tempfile::tempdir().unwrap();
        let file = tmp.path().join("plain-file");
        fs::write(&file, "").unwrap();
        assert!(matches!(
            DecompositionCache::open(&file),
            Err(Error::Cache { .. })
        ));
    }
}
