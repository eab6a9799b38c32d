//! Prompt rendering, completion clients and resumable completion runs.

pub mod client;
pub mod http;
pub mod prompt;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Author, Corpus, Instance, PromptVariant, SplitInstance};
pub use client::{
    complete_with_retry, CompletionClient, CompletionError, CompletionRequest, EchoClient,
    ErrorClass, RetryPolicy, ShuffleClient,
};
pub use http::{parse_response, EndpointConfig, HttpClient};
pub use prompt::{platform_noun, render_prompt, PromptTemplate};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("the els_ses prompt needs an SES value")]
    MissingSes,
    #[error("the {0} prompt takes no SES value")]
    UnexpectedSes(PromptVariant),
    #[error("environment variable {0} with the API key is not set")]
    MissingApiKey(String),
    #[error("invalid endpoint configuration: {0}")]
    Config(String),
    #[error("split {0} has no matching corpus instance")]
    UnknownInstance(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} line {line}: {message}")]
    Store {
        path: String,
        line: usize,
        message: String,
    },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionRecord {
    pub instance_id: String,
    pub variant: PromptVariant,
    pub model: String,
    pub cue_text: String,
    pub completion_text: String,
    pub reference_text: String,
    /// RFC 3339, UTC.
    pub timestamp: String,
    pub attempts: u32,
    /// True when a repeated cue was stripped from the completion.
    #[serde(default)]
    pub normalized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub instance_id: String,
    pub variant: PromptVariant,
    pub model: String,
    pub class: ErrorClass,
    pub message: String,
    pub attempts: u32,
    pub timestamp: String,
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

/// Removes a leading copy of the cue from a completion, if present.
pub fn strip_repeated_cue(completion: &str, cue: &str) -> Option<String> {
    let rest = completion.trim_start().strip_prefix(cue.trim())?;
    let rest = rest.trim_start();
    (!rest.is_empty()).then(|| rest.to_string())
}

/// Renders, completes and records one request.
pub fn complete(
    request: &CompletionRequest,
    client: &dyn CompletionClient,
    policy: &RetryPolicy,
) -> Result<CompletionRecord, FailureRecord> {
    let (outcome, attempts) = complete_with_retry(client, request, policy);
    match outcome {
        Ok(completion_text) => Ok(CompletionRecord {
            instance_id: request.instance_id.clone(),
            variant: request.variant,
            model: client.identity().to_string(),
            cue_text: request.cue_text.clone(),
            completion_text,
            reference_text: request.reference_text.clone(),
            timestamp: now(),
            attempts,
            normalized: false,
        }),
        Err(e) => Err(FailureRecord {
            instance_id: request.instance_id.clone(),
            variant: request.variant,
            model: client.identity().to_string(),
            class: e.class,
            message: e.message,
            attempts,
            timestamp: now(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub max_parallel: usize,
    pub retry: RetryPolicy,
    /// Strip a repeated cue from completions. Off by default.
    pub strip_repeated_cue: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            max_parallel: 4,
            retry: RetryPolicy::default(),
            strip_repeated_cue: false,
        }
    }
}

/// Files backing a resumable run.
#[derive(Debug, Clone)]
pub struct ExperimentStore {
    pub dir: PathBuf,
}

impl ExperimentStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn records_path(&self) -> PathBuf {
        self.dir.join("records.jsonl")
    }

    pub fn failures_path(&self) -> PathBuf {
        self.dir.join("failures.jsonl")
    }

    /// Completed records; a torn final line from an interrupted run is ignored.
    pub fn load_records(&self) -> Result<Vec<CompletionRecord>, HarnessError> {
        let path = self.records_path();
        if !path.exists() {
            return Ok(Vec::new());
        }
        let content = fs::read_to_string(&path).map_err(io_err(&path))?;
        let lines: Vec<&str> = content.lines().collect();
        let mut out = Vec::new();
        for (i, line) in lines.iter().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str(line) {
                Ok(r) => out.push(r),
                Err(_) if i + 1 == lines.len() && !content.ends_with('\n') => {}
                Err(e) => {
                    return Err(HarnessError::Store {
                        path: path.display().to_string(),
                        line: i + 1,
                        message: e.to_string(),
                    })
                }
            }
        }
        Ok(out)
    }
}

fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<(), HarnessError> {
    let tmp = path.with_extension("jsonl.tmp");
    let mut out = BufWriter::new(File::create(&tmp).map_err(io_err(&tmp))?);
    for item in items {
        serde_json::to_writer(&mut out, item).map_err(|e| io_err(&tmp)(e.into()))?;
        out.write_all(b"\n").map_err(io_err(&tmp))?;
    }
    out.flush().map_err(io_err(&tmp))?;
    drop(out);
    fs::rename(&tmp, path).map_err(io_err(path))
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentOutput {
    /// Sorted by (instance_id, variant).
    pub records: Vec<CompletionRecord>,
    /// Sorted by (instance_id, variant).
    pub failures: Vec<FailureRecord>,
    /// Requests issued by this call, resumed pairs excluded.
    pub requests: usize,
}

/// Builds the request for every split × variant pair, in (instance_id, variant) order.
pub fn build_requests(
    corpus: &Corpus,
    splits: &[SplitInstance],
    variants: &[PromptVariant],
) -> Result<Vec<CompletionRequest>, HarnessError> {
    let by_id: HashMap<&str, &Instance> = corpus.iter().map(|i| (i.id.as_str(), i)).collect();
    let mut out = Vec::with_capacity(splits.len() * variants.len());
    for split in splits {
        let inst = by_id
            .get(split.instance_id.as_str())
            .ok_or_else(|| HarnessError::UnknownInstance(split.instance_id.clone()))?;
        for &variant in variants {
            let ses = (variant == PromptVariant::ElsSes).then_some(inst.ses);
            let template = PromptTemplate::new(variant, inst.platform, ses);
            out.push(CompletionRequest {
                instance_id: split.instance_id.clone(),
                variant,
                prompt: render_prompt(&template, &split.cue_text)?,
                cue_text: split.cue_text.clone(),
                reference_text: split.reference_text.clone(),
            });
        }
    }
    out.sort_by(|a, b| (&a.instance_id, a.variant).cmp(&(&b.instance_id, b.variant)));
    Ok(out)
}

/// Completes every split × variant pair with a bounded worker pool.
///
/// With a store, finished pairs found there are skipped, each new record is
/// appended as it arrives, and at the end the record file is rewritten sorted
/// and the failure manifest replaced. Failures never abort the run.
pub fn run_experiment(
    corpus: &Corpus,
    splits: &[SplitInstance],
    variants: &[PromptVariant],
    client: &dyn CompletionClient,
    config: &ExperimentConfig,
    store: Option<&ExperimentStore>,
) -> Result<ExperimentOutput, HarnessError> {
    if config.max_parallel == 0 {
        return Err(HarnessError::Config(
            "max_parallel must be at least 1".into(),
        ));
    }
    let requests = build_requests(corpus, splits, variants)?;
    let mut records = match store {
        Some(s) => {
            fs::create_dir_all(&s.dir).map_err(io_err(&s.dir))?;
            s.load_records()?
        }
        None => Vec::new(),
    };
    if let Some(other) = records.iter().find(|r| r.model != client.identity()) {
        return Err(HarnessError::Config(format!(
            "store already holds completions from model {:?}, not {:?}",
            other.model,
            client.identity()
        )));
    }
    let done: HashSet<(String, PromptVariant)> = records
        .iter()
        .map(|r| (r.instance_id.clone(), r.variant))
        .collect();
    let pending: Vec<&CompletionRequest> = requests
        .iter()
        .filter(|r| !done.contains(&(r.instance_id.clone(), r.variant)))
        .collect();

    let mut appender = match store {
        Some(s) => {
            let path = s.records_path();
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&path)
                .map_err(io_err(&path))?;
            // finish a torn line so appended records start cleanly
            let len = f.metadata().map_err(io_err(&path))?.len();
            if len > 0 && !fs::read(&path).map_err(io_err(&path))?.ends_with(b"\n") {
                f.write_all(b"\n").map_err(io_err(&path))?;
            }
            Some((f, path))
        }
        None => None,
    };

    let mut failures = Vec::new();
    let next = AtomicUsize::new(0);
    let workers = config.max_parallel.min(pending.len()).max(1);
    let (tx, rx) = mpsc::channel();
    let mut write_error = None;
    thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let (next, pending) = (&next, &pending);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(req) = pending.get(i) else { break };
                let mut outcome = complete(req, client, &config.retry);
                if let (Ok(rec), true) = (&mut outcome, config.strip_repeated_cue) {
                    if let Some(stripped) = strip_repeated_cue(&rec.completion_text, &rec.cue_text)
                    {
                        rec.completion_text = stripped;
                        rec.normalized = true;
                    }
                }
                if tx.send(outcome).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for outcome in rx {
            match outcome {
                Ok(rec) => {
                    if let Some((f, path)) = appender.as_mut() {
                        let line = serde_json::to_string(&rec).expect("records serialize") + "\n";
                        if let Err(e) = f.write_all(line.as_bytes()).and_then(|_| f.flush()) {
                            write_error.get_or_insert(io_err(path)(e));
                        }
                    }
                    records.push(rec);
                }
                Err(fail) => failures.push(fail),
            }
        }
    });
    if let Some(e) = write_error {
        return Err(e);
    }
    drop(appender);

    records.sort_by(|a, b| (&a.instance_id, a.variant).cmp(&(&b.instance_id, b.variant)));
    failures.sort_by(|a, b| (&a.instance_id, a.variant).cmp(&(&b.instance_id, b.variant)));
    if let Some(s) = store {
        write_jsonl(&s.records_path(), &records)?;
        write_jsonl(&s.failures_path(), &failures)?;
    }
    Ok(ExperimentOutput {
        records,
        failures,
        requests: pending.len(),
    })
}

/// Id of the model-authored instance derived from a record.
pub fn derived_id(instance_id: &str, variant: PromptVariant) -> String {
    format!("{instance_id}#{variant}")
}

/// Model-authored instances, one per record, inheriting platform and SES
/// from their source instance.
pub fn completion_corpus(
    corpus: &Corpus,
    records: &[CompletionRecord],
) -> Result<Corpus, HarnessError> {
    let by_id: HashMap<&str, &Instance> = corpus.iter().map(|i| (i.id.as_str(), i)).collect();
    let instances = records
        .iter()
        .map(|r| {
            let src = by_id
                .get(r.instance_id.as_str())
                .ok_or_else(|| HarnessError::UnknownInstance(r.instance_id.clone()))?;
            Ok(Instance {
                id: derived_id(&r.instance_id, r.variant),
                platform: src.platform,
                ses: src.ses,
                author: Author::Model(r.model.clone()),
                prompt_variant: Some(r.variant),
                text: r.completion_text.clone(),
            })
        })
        .collect::<Result<_, HarnessError>>()?;
    Ok(Corpus::new(instances))
}

/// Human instances holding only the held-out continuation of each split.
pub fn reference_corpus(corpus: &Corpus, splits: &[SplitInstance]) -> Result<Corpus, HarnessError> {
    let by_id: HashMap<&str, &Instance> = corpus.iter().map(|i| (i.id.as_str(), i)).collect();
    let instances = splits
        .iter()
        .map(|s| {
            let src = by_id
                .get(s.instance_id.as_str())
                .ok_or_else(|| HarnessError::UnknownInstance(s.instance_id.clone()))?;
            Ok(Instance {
                text: s.reference_text.clone(),
                ..(*src).clone()
            })
        })
        .collect::<Result<_, HarnessError>>()?;
    Ok(Corpus::new(instances))
}

/// Counts of records per variant, for progress summaries.
pub fn records_per_variant(records: &[CompletionRecord]) -> BTreeMap<PromptVariant, usize> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry(r.variant).or_insert(0) += 1;
    }
    out
}
