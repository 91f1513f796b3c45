//! Catalog cache under `SPECTREX_CACHE_DIR`, keyed by family, order, kind and engine version.

use std::path::PathBuf;

use spectrex_core::search::{CatalogKind, ExtremalCatalog};
use spectrex_core::{graph6, ProblemSpec};

const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

fn dir() -> Option<PathBuf> {
    std::env::var_os("SPECTREX_CACHE_DIR")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

fn key(kind: CatalogKind, spec: &ProblemSpec, n: usize, tol: f64) -> String {
    let f: String = graph6::encode(spec.forbidden())
        .bytes()
        .map(|b| format!("{b:02x}"))
        .collect();
    let a = spec.excess().map_or("u".to_string(), |a| a.to_string());
    let mut key = format!("{}-{f}-k{}-r{}-a{a}-n{n}", kind.as_str(), spec.k(), spec.r());
    if kind == CatalogKind::Spectral {
        key.push_str(&format!("-tol{tol:e}"));
    }
    format!("{key}-v{ENGINE_VERSION}.json")
}

pub fn lookup(kind: CatalogKind, spec: &ProblemSpec, n: usize, tol: f64) -> Option<ExtremalCatalog> {
    let path = dir()?.join(key(kind, spec, n, tol));
    let cat = ExtremalCatalog::read(&path).ok()?;
    (cat.n == n && cat.kind == kind && cat.family == spec.descriptor()).then_some(cat)
}

pub fn store(cat: &ExtremalCatalog, spec: &ProblemSpec, tol: f64) {
    let Some(dir) = dir() else { return };
    let path = dir.join(key(cat.kind, spec, cat.n, tol));
    let written = std::fs::create_dir_all(&dir).and_then(|_| std::fs::write(&path, cat.to_json() + "\n"));
    if let Err(e) = written {
        eprintln!("warning: could not write cache entry {}: {e}", path.display());
    }
}
