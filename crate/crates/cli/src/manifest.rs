//! Run manifests: what was run, on which inputs, and what it wrote.
//!
//! The digest covers the subcommand, input hashes, parameters, bounds, output
//! format and tool version. Paths are left out so that moving the inputs does
//! not change it. Two runs with the same digest write the same bytes.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::commands::{Artifact, Command};
use crate::Format;

pub const MANIFEST_SCHEMA: &str = "cubulate.run-manifest/v1";
pub const CERTIFY_SCHEMA: &str = "cubulate.certify-report/v1";

/// Parameters treated as search bounds rather than problem data.
const BOUND_KEYS: [&str; 5] = ["i_max", "k_max", "k", "j", "node_budget"];

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub role: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDigest {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestCore {
    pub subcommand: String,
    pub inputs: Vec<InputDigest>,
    pub params: Value,
    pub bounds: Value,
    pub format: Format,
    pub version: String,
}

impl ManifestCore {
    pub fn new(cmd: &Command, format: Format) -> Result<Self> {
        let mut inputs = Vec::new();
        if let Some(path) = cmd.complex_path() {
            let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
            inputs.push(InputDigest { role: "complex".into(), sha256: sha256_hex(&bytes) });
        }
        let Value::Object(mut all) = serde_json::to_value(cmd)? else {
            bail!("command did not serialize to an object");
        };
        all.remove("subcommand");
        all.remove("complex");
        let mut bounds = Map::new();
        for key in BOUND_KEYS {
            if let Some(v) = all.remove(key) {
                bounds.insert(key.into(), v);
            }
        }
        Ok(Self {
            subcommand: cmd.name().into(),
            inputs,
            params: Value::Object(all),
            bounds: Value::Object(bounds),
            format,
            version: env!("CARGO_PKG_VERSION").into(),
        })
    }

    pub fn digest(&self) -> String {
        sha256_hex(&serde_json::to_vec(self).expect("manifest core serializes"))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: String,
    #[serde(flatten)]
    pub core: ManifestCore,
    pub manifest_digest: String,
    /// The command as run, with absolute input paths, for `certify`.
    pub command: Command,
    pub outputs: Vec<OutputDigest>,
}

pub fn manifest_path(artifact: &Path) -> PathBuf {
    let mut name = artifact.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Renders an artifact in the requested format with the digest embedded.
pub fn render(art: &Artifact, format: Format, digest: &str) -> Result<String> {
    match format {
        Format::Json => {
            let mut v = art.value.clone();
            v["manifest_digest"] = json!(digest);
            Ok(serde_json::to_string_pretty(&v)? + "\n")
        }
        Format::Csv => match &art.csv {
            Some(csv) => Ok(format!("# manifest_digest={digest}\n{csv}")),
            None => bail!("--format csv is not available for this subcommand"),
        },
        Format::Dot => match &art.dot {
            Some(dot) => Ok(format!("// manifest_digest={digest}\n{dot}")),
            None => bail!("--format dot is not available for this subcommand"),
        },
    }
}

/// Runs `cmd` and returns the manifest core and rendered artifact.
pub fn produce(cmd: &Command, format: Format) -> Result<(ManifestCore, Artifact, String)> {
    let core = ManifestCore::new(cmd, format)?;
    let art = crate::commands::run(cmd)?;
    let text = render(&art, format, &core.digest())?;
    Ok((core, art, text))
}

pub fn write_manifest(core: ManifestCore, cmd: &Command, out: &Path, text: &str) -> Result<()> {
    let manifest = RunManifest {
        schema: MANIFEST_SCHEMA.into(),
        manifest_digest: core.digest(),
        core,
        command: cmd.clone(),
        outputs: vec![OutputDigest { path: out.to_path_buf(), sha256: sha256_hex(text.as_bytes()) }],
    };
    let path = manifest_path(out);
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")
        .with_context(|| format!("cannot write {}", path.display()))
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub schema: &'static str,
    pub artifact: PathBuf,
    pub manifest_digest: String,
    pub inputs_match: bool,
    pub digest_match: bool,
    pub bytes_match: bool,
    pub reproduced: bool,
}

/// Re-runs the command recorded next to `artifact` and compares the result
/// byte for byte with the file on disk.
pub fn certify(artifact: &Path, manifest: Option<&Path>) -> Result<CertifyReport> {
    let mpath = manifest.map(Path::to_path_buf).unwrap_or_else(|| manifest_path(artifact));
    let text = std::fs::read_to_string(&mpath).with_context(|| format!("cannot read {}", mpath.display()))?;
    let recorded: RunManifest = serde_json::from_str(&text).with_context(|| format!("in {}", mpath.display()))?;
    if recorded.schema != MANIFEST_SCHEMA {
        bail!("unsupported manifest schema `{}`", recorded.schema);
    }
    let on_disk = std::fs::read(artifact).with_context(|| format!("cannot read {}", artifact.display()))?;

    let fresh_core = ManifestCore::new(&recorded.command, recorded.core.format)?;
    let inputs_match = fresh_core.inputs == recorded.core.inputs;
    let digest_match = fresh_core.digest() == recorded.manifest_digest && recorded.core.digest() == recorded.manifest_digest;
    let (_, _, regenerated) = produce(&recorded.command, recorded.core.format)?;
    let recorded_sha = recorded.outputs.first().map(|o| o.sha256.as_str());
    let bytes_match = regenerated.as_bytes() == on_disk.as_slice() && recorded_sha == Some(&sha256_hex(&on_disk));
    Ok(CertifyReport {
        schema: CERTIFY_SCHEMA,
        artifact: artifact.to_path_buf(),
        manifest_digest: recorded.manifest_digest,
        inputs_match,
        digest_match,
        bytes_match,
        reproduced: inputs_match && digest_match && bytes_match,
    })
}
