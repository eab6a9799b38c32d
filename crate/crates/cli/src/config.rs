//! TOML run configuration. Every key is optional; command-line flags win.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use stylemeter::harness::{EndpointConfig, RetryPolicy};

use crate::Invalid;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub corpus: CorpusSection,
    #[serde(default)]
    pub annotation: AnnotationSection,
    #[serde(default)]
    pub compare: CompareSection,
    #[serde(default)]
    pub readability: ReadabilitySection,
    #[serde(default)]
    pub completion: CompletionSection,
    pub endpoint: Option<EndpointSection>,
    #[serde(default)]
    pub ablation: AblationSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSection {
    pub inputs: Option<Vec<PathBuf>>,
    pub min_words: Option<usize>,
    pub cue_words: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnotationSection {
    pub mode: Option<String>,
    pub conllu: Option<PathBuf>,
    pub concreteness: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSection {
    pub anchor: Option<String>,
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadabilitySection {
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompletionSection {
    pub client: Option<String>,
    pub variants: Option<Vec<String>>,
    pub seed: Option<u64>,
    pub strip_repeated_cue: Option<bool>,
}

/// Endpoint keys; the API key itself is only ever read from `api_key_env`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndpointSection {
    pub base_url: Option<String>,
    pub model: Option<String>,
    pub api_key_env: Option<String>,
    pub max_parallel: Option<usize>,
    pub timeout_secs: Option<u64>,
    pub max_attempts: Option<u32>,
    pub backoff_ms: Option<u64>,
    pub max_backoff_ms: Option<u64>,
}

impl EndpointSection {
    pub fn to_endpoint(&self) -> EndpointConfig {
        let d = EndpointConfig::default();
        let r = RetryPolicy::default();
        EndpointConfig {
            base_url: self.base_url.clone().unwrap_or(d.base_url),
            model: self.model.clone().unwrap_or(d.model),
            api_key_env: self.api_key_env.clone().or(d.api_key_env),
            max_parallel: self.max_parallel.unwrap_or(d.max_parallel),
            timeout_secs: self.timeout_secs.unwrap_or(d.timeout_secs),
            retry: RetryPolicy {
                max_attempts: self.max_attempts.unwrap_or(r.max_attempts),
                backoff_ms: self.backoff_ms.unwrap_or(r.backoff_ms),
                max_backoff_ms: self.max_backoff_ms.unwrap_or(r.max_backoff_ms),
            },
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AblationSection {
    pub cue_lengths: Option<Vec<usize>>,
    pub min_words: Option<usize>,
    pub variants: Option<Vec<String>>,
    pub platform: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            anyhow::Error::new(e).context(format!("cannot read config {}", path.display()))
        })?;
        toml::from_str(&text).map_err(|e| Invalid(format!("config {}: {e}", path.display())).into())
    }
}
