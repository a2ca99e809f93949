use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use skein_core::catalog;
use skein_core::{BraidWord, LinkDiagram};

use crate::Failure;

/// A parsed link together with how it was named on the command line.
#[derive(Debug, Clone)]
pub struct NamedLink {
    pub label: String,
    pub diagram: LinkDiagram,
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct LinkSpec {
    /// Name of a built-in link (see `skein catalog`).
    #[arg(long = "catalog", value_name = "NAME")]
    pub catalog: Vec<String>,
    /// Braid word, e.g. "strands=3; 1 -2 1".
    #[arg(long = "braid", value_name = "WORD")]
    pub braid: Vec<String>,
    /// Diagram JSON or a braid word in a file.
    #[arg(long = "file", value_name = "PATH")]
    pub file: Vec<PathBuf>,
}

impl LinkSpec {
    pub fn count(&self) -> usize {
        self.catalog.len() + self.braid.len() + self.file.len()
    }

    /// All given links: catalog names, then braids, then files.
    pub fn resolve_all(&self) -> Result<Vec<NamedLink>, Failure> {
        let mut out = Vec::with_capacity(self.count());
        for name in &self.catalog {
            out.push(from_catalog(name)?);
        }
        for word in &self.braid {
            out.push(from_braid(word, word.trim())?);
        }
        for path in &self.file {
            out.push(from_file(path)?);
        }
        Ok(out)
    }

    /// Exactly one link.
    pub fn resolve_one(&self) -> Result<NamedLink, Failure> {
        match self.count() {
            1 => Ok(self.resolve_all()?.remove(0)),
            0 => Err(Failure::usage("give one of --catalog, --braid or --file")),
            n => Err(Failure::usage(format!("expected one link, got {n}"))),
        }
    }
}

pub fn from_catalog(name: &str) -> Result<NamedLink, Failure> {
    let entry = catalog::lookup(name)
        .ok_or_else(|| Failure::usage(format!("unknown catalog link {name:?}")))?;
    Ok(NamedLink {
        label: entry.name.to_string(),
        diagram: entry.diagram(),
    })
}

fn from_braid(word: &str, label: &str) -> Result<NamedLink, Failure> {
    let braid =
        BraidWord::parse(word).map_err(|e| Failure::usage(format!("braid {word:?}: {e}")))?;
    Ok(NamedLink {
        label: label.to_string(),
        diagram: braid.close(),
    })
}

fn from_file(path: &Path) -> Result<NamedLink, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let label = path.display().to_string();
    if text.trim_start().starts_with('{') {
        let diagram = LinkDiagram::from_json_str(&text)
            .map_err(|e| Failure::usage(format!("{label}: {e}")))?;
        Ok(NamedLink { label, diagram })
    } else {
        let mut link = from_braid(text.trim(), &label)?;
        link.label = label;
        Ok(link)
    }
}

/// One braid per nonempty line; `#` starts a comment line.
pub fn from_stdin() -> Result<Vec<NamedLink>, Failure> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| from_braid(l, l))
        .collect()
}
