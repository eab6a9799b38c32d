use std::fmt;
use std::thread;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::PromptVariant;

/// One prompt to complete, with the held-out text the mocks draw on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionRequest {
    pub instance_id: String,
    pub variant: PromptVariant,
    pub prompt: String,
    pub cue_text: String,
    pub reference_text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorClass {
    /// Credentials rejected; never retried.
    Auth,
    /// Rate limiting, server errors and dropped connections.
    Transient,
    Timeout,
    /// The response could not be read as a chat completion.
    Malformed,
    /// Any other refusal by the endpoint.
    Rejected,
}

impl ErrorClass {
    pub fn is_retryable(self) -> bool {
        matches!(self, ErrorClass::Transient | ErrorClass::Timeout)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionError {
    pub class: ErrorClass,
    pub message: String,
}

impl CompletionError {
    pub fn new(class: ErrorClass, message: impl Into<String>) -> Self {
        Self {
            class,
            message: message.into(),
        }
    }
}

impl fmt::Display for CompletionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.class, self.message)
    }
}

impl std::error::Error for CompletionError {}

pub trait CompletionClient: Send + Sync {
    /// Model name recorded as the author of every completion.
    fn identity(&self) -> &str;

    fn complete(&self, request: &CompletionRequest) -> Result<String, CompletionError>;
}

/// Returns the reference continuation unchanged.
#[derive(Debug, Clone, Default)]
pub struct EchoClient;

impl CompletionClient for EchoClient {
    fn identity(&self) -> &str {
        "echo"
    }

    fn complete(&self, request: &CompletionRequest) -> Result<String, CompletionError> {
        Ok(request.reference_text.clone())
    }
}

/// Returns the reference words in a random order fixed by the seed, the
/// instance and the variant.
#[derive(Debug, Clone)]
pub struct ShuffleClient {
    pub seed: u64,
}

impl ShuffleClient {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }
}

/// FNV-1a, used so request seeds do not depend on the std hasher.
fn fnv1a(parts: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for part in parts {
        for b in part.bytes().chain([0xff]) {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

impl CompletionClient for ShuffleClient {
    fn identity(&self) -> &str {
        "shuffle"
    }

    fn complete(&self, request: &CompletionRequest) -> Result<String, CompletionError> {
        let mut words: Vec<&str> = request.reference_text.split_whitespace().collect();
        let seed = self.seed ^ fnv1a(&[&request.instance_id, request.variant.as_str()]);
        words.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Ok(words.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetryPolicy {
    /// Total tries per request, including the first.
    pub max_attempts: u32,
    /// Wait before the second try; doubled after each further failure.
    pub backoff_ms: u64,
    pub max_backoff_ms: u64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self {
            max_attempts: 5,
            backoff_ms: 1000,
            max_backoff_ms: 30_000,
        }
    }
}

impl RetryPolicy {
    pub fn delay(&self, failures: u32) -> Duration {
        let factor = 1u64
            .checked_shl(failures.saturating_sub(1))
            .unwrap_or(u64::MAX);
        Duration::from_millis(
            self.backoff_ms
                .saturating_mul(factor)
                .min(self.max_backoff_ms),
        )
    }
}

/// Calls `client` until it succeeds, fails terminally, or the policy runs out.
/// Returns the outcome with the number of attempts made.
pub fn complete_with_retry(
    client: &dyn CompletionClient,
    request: &CompletionRequest,
    policy: &RetryPolicy,
) -> (Result<String, CompletionError>, u32) {
    let max = policy.max_attempts.max(1);
    let mut attempt = 0;
    loop {
        attempt += 1;
        match client.complete(request) {
            Ok(text) if text.is_empty() => {
                return (
                    Err(CompletionError::new(
                        ErrorClass::Malformed,
                        "empty completion",
                    )),
                    attempt,
                );
            }
            Ok(text) => return (Ok(text), attempt),
            Err(e) if e.class.is_retryable() && attempt < max => {
                thread::sleep(policy.delay(attempt))
            }
            Err(e) => return (Err(e), attempt),
        }
    }
}
