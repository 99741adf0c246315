//! Resolving `catalog:NAME` references and structure files.

use std::path::PathBuf;

use modlat::format::parse_document;
use modlat::{catalog, AlgebraProfile, Document, FinitePoset, Structure, UpsetAlgebra};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("`{path}`: {source}")]
    File { path: String, source: modlat::Error },
    #[error(transparent)]
    Core(#[from] modlat::Error),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;

pub const CATALOG_PREFIX: &str = "catalog:";

/// Loads `catalog:NAME` from the built-in catalog; anything else is a file path.
pub fn load_document(src: &str) -> CliResult<Document> {
    if let Some(name) = src.strip_prefix(CATALOG_PREFIX) {
        let e = catalog::get(name)?;
        return Ok(Document {
            name: e.name.to_string(),
            structure: e.structure.clone(),
        });
    }
    let text = std::fs::read_to_string(src).map_err(|source| CliError::Io {
        path: src.into(),
        source,
    })?;
    parse_document(&text).map_err(|source| CliError::File {
        path: src.into(),
        source,
    })
}

pub fn load_poset(src: &str) -> CliResult<(String, FinitePoset)> {
    let doc = load_document(src)?;
    let p = doc.poset().clone();
    Ok((doc.name, p))
}

/// The algebra a reference denotes. Posets stand for their upset algebras.
pub fn load_profile(src: &str) -> CliResult<AlgebraProfile> {
    let doc = load_document(src)?;
    match doc.structure {
        Structure::Lattice(l) => Ok(AlgebraProfile::new(doc.name, l)),
        Structure::Poset(p) => Ok(UpsetAlgebra::new(&p)?.profile(format!("Up({})", doc.name))),
    }
}

/// A comma-separated list of references.
pub fn load_family(list: &str) -> CliResult<Vec<AlgebraProfile>> {
    let refs: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if refs.is_empty() {
        return Err(CliError::Usage("empty family".into()));
    }
    refs.into_iter().map(load_profile).collect()
}
