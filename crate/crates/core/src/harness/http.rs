use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::client::{
    CompletionClient, CompletionError, CompletionRequest, ErrorClass, RetryPolicy,
};
use super::HarnessError;

/// Where and how to reach a chat-completion endpoint. Holds the name of the
/// environment variable with the API key, never the key itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EndpointConfig {
    /// Base URL; requests go to `{base_url}/chat/completions`.
    pub base_url: String,
    pub model: String,
    pub api_key_env: Option<String>,
    pub max_parallel: usize,
    pub timeout_secs: u64,
    pub retry: RetryPolicy,
}

impl Default for EndpointConfig {
    fn default() -> Self {
        Self {
            base_url: "http://localhost:8000/v1".into(),
            model: String::new(),
            api_key_env: None,
            max_parallel: 4,
            timeout_secs: 120,
            retry: RetryPolicy::default(),
        }
    }
}

impl EndpointConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.max_parallel == 0 {
            return Err(HarnessError::Config(
                "max_parallel must be at least 1".into(),
            ));
        }
        if self.model.trim().is_empty() {
            return Err(HarnessError::Config("endpoint model name is empty".into()));
        }
        if !(self.base_url.starts_with("http://") || self.base_url.starts_with("https://")) {
            return Err(HarnessError::Config(format!(
                "base_url {:?} is not an http(s) URL",
                self.base_url
            )));
        }
        Ok(())
    }
}

/// Client for OpenAI-style `/chat/completions` endpoints. Sends no sampling
/// parameters, so the endpoint's defaults apply.
pub struct HttpClient {
    agent: ureq::Agent,
    url: String,
    model: String,
    api_key: Option<String>,
}

const EXCERPT_CHARS: usize = 200;

fn excerpt(body: &str) -> String {
    body.chars().take(EXCERPT_CHARS).collect()
}

impl HttpClient {
    /// Builds a client, reading the API key from the configured environment variable.
    pub fn new(config: &EndpointConfig) -> Result<Self, HarnessError> {
        config.validate()?;
        let api_key = match &config.api_key_env {
            Some(var) => {
                Some(std::env::var(var).map_err(|_| HarnessError::MissingApiKey(var.clone()))?)
            }
            None => None,
        };
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(config.timeout_secs)))
            .http_status_as_error(false)
            .build()
            .into();
        Ok(Self {
            agent,
            url: format!("{}/chat/completions", config.base_url.trim_end_matches('/')),
            model: config.model.clone(),
            api_key,
        })
    }

    pub fn request_body(&self, prompt: &str) -> Value {
        json!({"model": self.model, "messages": [{"role": "user", "content": prompt}]})
    }
}

/// Extracts the first choice's message content.
pub fn parse_response(body: &str) -> Result<String, CompletionError> {
    let malformed = |why: &str| {
        CompletionError::new(ErrorClass::Malformed, format!("{why}: {}", excerpt(body)))
    };
    let v: Value = serde_json::from_str(body).map_err(|_| malformed("response is not JSON"))?;
    let content = v
        .pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .ok_or_else(|| malformed("no choices[0].message.content"))?;
    if content.is_empty() {
        return Err(malformed("empty completion"));
    }
    Ok(content.to_string())
}

fn classify_status(status: u16) -> ErrorClass {
    match status {
        401 | 403 => ErrorClass::Auth,
        408 | 409 | 425 | 429 => ErrorClass::Transient,
        s if s >= 500 => ErrorClass::Transient,
        _ => ErrorClass::Rejected,
    }
}

fn classify_transport(e: &ureq::Error) -> ErrorClass {
    match e {
        ureq::Error::Timeout(_) => ErrorClass::Timeout,
        ureq::Error::Io(_)
        | ureq::Error::ConnectionFailed
        | ureq::Error::HostNotFound
        | ureq::Error::Protocol(_)
        | ureq::Error::BodyStalled => ErrorClass::Transient,
        _ => ErrorClass::Rejected,
    }
}

impl CompletionClient for HttpClient {
    fn identity(&self) -> &str {
        &self.model
    }

    fn complete(&self, request: &CompletionRequest) -> Result<String, CompletionError> {
        let body = self.request_body(&request.prompt).to_string();
        let mut req = self
            .agent
            .post(&self.url)
            .header("Content-Type", "application/json");
        if let Some(key) = &self.api_key {
            req = req.header("Authorization", format!("Bearer {key}"));
        }
        let mut resp = req
            .send(body)
            .map_err(|e| CompletionError::new(classify_transport(&e), e.to_string()))?;
        let status = resp.status().as_u16();
        let text = resp
            .body_mut()
            .read_to_string()
            .map_err(|e| CompletionError::new(classify_transport(&e), e.to_string()))?;
        if status != 200 {
            return Err(CompletionError::new(
                classify_status(status),
                format!("HTTP {status}: {}", excerpt(&text)),
            ));
        }
        parse_response(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_first_choice() {
        let body = r#"{"choices":[{"message":{"role":"assistant","content":"hi there"}},{"message":{"content":"no"}}]}"#;
        assert_eq!(parse_response(body).unwrap(), "hi there");
        for bad in [
            "not json",
            r#"{"choices":[]}"#,
            r#"{"choices":[{"message":{"content":""}}]}"#,
        ] {
            assert_eq!(
                parse_response(bad).unwrap_err().class,
                ErrorClass::Malformed
            );
        }
    }

    #[test]
    fn status_classes() {
        assert_eq!(classify_status(401), ErrorClass::Auth);
        assert_eq!(classify_status(429), ErrorClass::Transient);
        assert_eq!(classify_status(503), ErrorClass::Transient);
        assert_eq!(classify_status(400), ErrorClass::Rejected);
    }

    #[test]
    fn body_has_no_sampling_parameters() {
        let c = HttpClient::new(&EndpointConfig {
            model: "m".into(),
            ..Default::default()
        })
        .unwrap();
        let body = c.request_body("hello");
        assert_eq!(
            body,
            json!({"model": "m", "messages": [{"role": "user", "content": "hello"}]})
        );
        assert_eq!(c.url, "http://localhost:8000/v1/chat/completions");
    }

    #[test]
    fn missing_key_variable_is_an_error() {
        let cfg = EndpointConfig {
            model: "m".into(),
            api_key_env: Some("STYLEMETER_TEST_KEY_THAT_IS_NOT_SET".into()),
            ..Default::default()
        };
        assert!(matches!(
            HttpClient::new(&cfg),
            Err(HarnessError::MissingApiKey(_))
        ));
        let cfg = EndpointConfig {
            model: "m".into(),
            max_parallel: 0,
            ..Default::default()
        };
        assert!(matches!(
            HttpClient::new(&cfg),
            Err(HarnessError::Config(_))
        ));
    }
}
