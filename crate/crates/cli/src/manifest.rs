use crate::Failure;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::ffi::OsString;
use std::io::Read;
use std::path::Path;
use std::time::Duration;

#[derive(Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

/// Files read during a run, in order, with their digests.
#[derive(Debug, Default)]
pub struct Inputs {
    hashes: Vec<InputHash>,
}

impl Inputs {
    /// Reads a UTF-8 input file (`-` for stdin) and records its hash.
    pub fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let limit = freeclt::wire::MAX_INPUT_BYTES as u64;
        let mut bytes = Vec::new();
        let shown = path.display().to_string();
        let io = |e: std::io::Error| Failure::Io(format!("cannot read {shown}: {e}"));
        if shown == "-" {
            std::io::stdin().lock().take(limit + 1).read_to_end(&mut bytes).map_err(io)?;
        } else {
            std::fs::File::open(path).map_err(io)?.take(limit + 1).read_to_end(&mut bytes).map_err(io)?;
        }
        if bytes.len() as u64 > limit {
            return Err(freeclt::Error::Schema {
                field: "$".into(),
                message: format!("{shown} exceeds {limit} bytes"),
            }
            .into());
        }
        self.hashes.push(InputHash {
            path: shown.clone(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).map_err(|_| {
            freeclt::Error::Schema {
                field: "$".into(),
                message: format!("{shown} is not UTF-8"),
            }
            .into()
        })
    }
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    tool: &'static str,
    version: &'static str,
    argv: Vec<String>,
    inputs: Vec<InputHash>,
    seed: Option<u64>,
    exit_code: i32,
    wall_time_ms: f64,
}

impl Manifest {
    pub fn new(argv: &[OsString], inputs: Inputs, seed: Option<u64>, exit_code: i32, elapsed: Duration) -> Self {
        Manifest {
            tool: "freeclt",
            version: env!("CARGO_PKG_VERSION"),
            argv: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
            inputs: inputs.hashes,
            seed,
            exit_code,
            wall_time_ms: elapsed.as_secs_f64() * 1e3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }
}
