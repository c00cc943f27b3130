//! Resolving family parameters and sub-blocks from flags or a family file.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use pptfarm::tensor::{read_matrix, DEFAULT_TOL};
use pptfarm::{BlockPair, FamilyParams};

use crate::{Failure, FamilyArgs};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    n: usize,
    #[serde(rename = "d_A")]
    d_a: usize,
    #[serde(rename = "d_B")]
    d_b: usize,
    #[serde(default)]
    q: Option<f64>,
    blocks: BlockSource,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum BlockSource {
    Named(String),
    Files { a: PathBuf, b: PathBuf },
}

pub struct Family {
    pub params: FamilyParams,
    pub blocks: BlockPair,
    /// `"canonical"` or `"files"`.
    pub origin: &'static str,
    /// Mixing weight stored in a family file, if any.
    pub file_q: Option<f64>,
}

fn required(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Input(format!("missing {flag} (or pass --family FILE)")))
}

fn load_pair(params: &FamilyParams, a: &Path, b: &Path) -> Result<BlockPair, Failure> {
    let a = read_matrix(a)?;
    let b = read_matrix(b)?;
    Ok(BlockPair::new(params, a, b, DEFAULT_TOL)?)
}

/// Parameters at `q = 0` plus the sub-blocks; callers set `q` themselves.
pub fn resolve(args: &FamilyArgs) -> Result<Family, Failure> {
    if let Some(path) = &args.family {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let file: FamilyFile = serde_json::from_str(&text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let params = FamilyParams::new(file.n, file.d_a, file.d_b, 0.0)?;
        params.check_capacity()?;
        let base = path.parent().unwrap_or(Path::new("."));
        let (blocks, origin) = match &file.blocks {
            BlockSource::Named(name) if name == "canonical" => (BlockPair::canonical(&params)?, "canonical"),
            BlockSource::Named(other) => {
                return Err(Failure::Input(format!("unknown block source {other:?}")));
            }
            BlockSource::Files { a, b } => (load_pair(&params, &base.join(a), &base.join(b))?, "files"),
        };
        return Ok(Family {
            params,
            blocks,
            origin,
            file_q: file.q,
        });
    }

    let n = required(args.n, "-n/--parties")?;
    let d_a = required(args.d_a, "--dA")?;
    let d_b = required(args.d_b, "--dB")?;
    let params = FamilyParams::new(n, d_a, d_b, 0.0)?;
    params.check_capacity()?;
    let (blocks, origin) = match args.blocks.as_str() {
        "canonical" => (BlockPair::canonical(&params)?, "canonical"),
        spec => {
            let (a, b) = spec.split_once(',').ok_or_else(|| {
                Failure::Input(format!("--blocks expects `canonical` or A_PATH,B_PATH, got {spec:?}"))
            })?;
            (load_pair(&params, Path::new(a), Path::new(b))?, "files")
        }
    };
    Ok(Family {
        params,
        blocks,
        origin,
        file_q: None,
    })
}
