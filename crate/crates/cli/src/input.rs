use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use adicol::format::{self, Format};
use adicol::{Colouring, Digraph, UndirectedGraph};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::commands::Failure;

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Reads inputs and records a content digest for each.
#[derive(Default)]
pub struct Inputs {
    digests: Vec<InputDigest>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl Inputs {
    pub fn digests(&self) -> &[InputDigest] {
        &self.digests
    }

    /// `None` and `-` read stdin.
    pub fn read(&mut self, path: Option<&Path>) -> Result<(String, String), Failure> {
        let (name, text) = match path.filter(|p| p.as_os_str() != "-") {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Failure::Input(format!("cannot read {}: {e}", p.display())))?;
                (p.display().to_string(), text)
            }
            None => {
                let mut text = String::new();
                std::io::stdin()
                    .read_to_string(&mut text)
                    .map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
                ("-".to_string(), text)
            }
        };
        self.digests.push(InputDigest { path: name.clone(), sha256: hex(&Sha256::digest(text.as_bytes())) });
        Ok((name, text))
    }

    /// An ODG or mat digraph with its role map.
    pub fn digraph(&mut self, path: Option<&Path>) -> Result<(Digraph, BTreeMap<String, usize>), Failure> {
        let (name, text) = self.read(path)?;
        format::parse_digraph(&text).map_err(|e| Failure::Input(format!("{name}: {e}")))
    }

    pub fn ugraph(&mut self, path: &Path) -> Result<UndirectedGraph, Failure> {
        let (name, text) = self.read(Some(path))?;
        format::parse_ug(&text).map_err(|e| Failure::Input(format!("{name}: {e}")))
    }

    pub fn colouring(&mut self, path: &Path) -> Result<Colouring, Failure> {
        let (name, text) = self.read(Some(path))?;
        format::parse_col(&text).map_err(|e| Failure::Input(format!("{name}: {e}")))
    }

    pub fn format_of(text: &str, name: &str) -> Result<Format, Failure> {
        format::detect(text).map_err(|e| Failure::Input(format!("{name}: {e}")))
    }
}
