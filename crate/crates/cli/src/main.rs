mod commands;
mod config;
mod reference;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// A problem with the inputs or configuration rather than the environment.
#[derive(Debug)]
pub struct Invalid(pub String);

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

#[derive(Debug, Parser)]
#[command(
    name = "stylemeter",
    version,
    about = "Stylistic profiling of SES-stratified corpora and model completions"
)]
pub struct Cli {
    /// TOML run configuration; flags override its keys
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate corpora, apply the length filter and optionally split into cue and reference
    Ingest(IngestArgs),
    /// Compute the 94 features and 7 readability scores for every instance
    Profile(ProfileArgs),
    /// Test lower vs upper human text per feature and plot ratios to the anchor group
    Compare(CompareArgs),
    /// Tabulate mean readability scores per group
    Readability(ReadabilityArgs),
    /// Generate completions for every instance and prompt variant
    Complete(CompleteArgs),
    /// Measure distance to human text across cue lengths
    Ablate(AblateArgs),
    /// Print the command and configuration reference as Markdown
    Reference,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Corpus JSONL file; repeat to concatenate several
    #[arg(long = "input", value_name = "FILE")]
    pub inputs: Vec<PathBuf>,
    /// Drop instances with fewer words [config: corpus.min_words, default 0]
    #[arg(long)]
    pub min_words: Option<usize>,
    /// Also write cue/reference splits at this many words [config: corpus.cue_words]
    #[arg(long)]
    pub cue_words: Option<usize>,
    /// Output directory [config: output.dir, default out]
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Corpus JSONL file; repeat to concatenate several
    #[arg(long = "input", value_name = "FILE")]
    pub inputs: Vec<PathBuf>,
    /// builtin (tokenize and tag here) or conllu [config: annotation.mode, default builtin]
    #[arg(long)]
    pub annotation: Option<String>,
    /// CoNLL-U annotations, one document per instance [config: annotation.conllu]
    #[arg(long, value_name = "FILE")]
    pub conllu: Option<PathBuf>,
    /// Concreteness norms, word<TAB>rating [config: annotation.concreteness, default bundled seed list]
    #[arg(long, value_name = "FILE")]
    pub concreteness: Option<PathBuf>,
    /// Feature matrix CSV [default: <output.dir>/features.csv]
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Feature matrix CSV written by `profile` [default: <output.dir>/features.csv]
    #[arg(long, value_name = "FILE")]
    pub features: Option<PathBuf>,
    /// Anchor group as ses/author[/variant] [config: compare.anchor, default lower/human]
    #[arg(long)]
    pub anchor: Option<String>,
    /// Family-wise significance level [config: compare.alpha, default 0.01]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Output directory [config: output.dir, default out]
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReadabilityArgs {
    /// Feature matrix CSV written by `profile` [default: <output.dir>/features.csv]
    #[arg(long, value_name = "FILE")]
    pub features: Option<PathBuf>,
    /// Uncorrected significance level for stars [config: readability.alpha, default 0.05]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Output directory [config: output.dir, default out]
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct EndpointArgs {
    /// echo, shuffle or http [config: completion.client]
    #[arg(long)]
    pub client: Option<String>,
    /// Seed for the shuffle client [config: completion.seed, default 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Model name sent to the endpoint [config: endpoint.model]
    #[arg(long)]
    pub model: Option<String>,
    /// Endpoint base URL; requests go to <base-url>/chat/completions [config: endpoint.base_url]
    #[arg(long)]
    pub base_url: Option<String>,
    /// Environment variable holding the API key [config: endpoint.api_key_env]
    #[arg(long, value_name = "VAR")]
    pub api_key_env: Option<String>,
    /// Concurrent requests [config: endpoint.max_parallel, default 4]
    #[arg(long)]
    pub max_parallel: Option<usize>,
    /// Strip a repeated cue from completions [config: completion.strip_repeated_cue, default off]
    #[arg(long)]
    pub strip_repeated_cue: bool,
}

#[derive(Debug, Args)]
pub struct CompleteArgs {
    /// Human corpus JSONL file; repeat to concatenate several
    #[arg(long = "input", value_name = "FILE")]
    pub inputs: Vec<PathBuf>,
    /// Cue length in words [config: corpus.cue_words, default 25]
    #[arg(long)]
    pub cue_words: Option<usize>,
    /// Prompt variants, comma separated [config: completion.variants, default imp,els,els_ses]
    #[arg(long, value_delimiter = ',')]
    pub variants: Vec<String>,
    #[command(flatten)]
    pub endpoint: EndpointArgs,
    /// Output directory; also the resumable record store [config: output.dir, default out]
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AblateArgs {
    /// Human corpus JSONL file; repeat to concatenate several
    #[arg(long = "input", value_name = "FILE")]
    pub inputs: Vec<PathBuf>,
    /// Cue lengths, comma separated [config: ablation.cue_lengths, default 20,40,60,80]
    #[arg(long, value_delimiter = ',')]
    pub cue_lengths: Vec<usize>,
    /// Minimum words per instance [config: ablation.min_words, default 100]
    #[arg(long)]
    pub min_words: Option<usize>,
    /// Prompt variants, comma separated [config: ablation.variants, default els_ses]
    #[arg(long, value_delimiter = ',')]
    pub variants: Vec<String>,
    /// Keep only this platform [config: ablation.platform]
    #[arg(long)]
    pub platform: Option<String>,
    /// Completion client; without one, existing stores under <out>/cue<N> are read
    #[command(flatten)]
    pub endpoint: EndpointArgs,
    /// Output directory [config: output.dir, default out]
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

/// 1 for bad inputs or configuration, 2 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    use stylemeter::{
        annotate::AnnotateError, corpus::CorpusError, features::FeatureError, harness::HarnessError,
    };
    use stylemeter::{stats::StatsError, surface::SurfaceError};
    for cause in err.chain() {
        let invalid = cause.is::<Invalid>()
            || cause.is::<StatsError>()
            || matches!(cause.downcast_ref::<CorpusError>(), Some(e) if !matches!(e, CorpusError::Io { .. }))
            || matches!(
                cause.downcast_ref::<FeatureError>(),
                Some(
                    FeatureError::Csv(_)
                        | FeatureError::UnknownColumn(_)
                        | FeatureError::MissingAnnotation(_)
                )
            )
            || matches!(cause.downcast_ref::<AnnotateError>(), Some(e) if !matches!(e, AnnotateError::Io { .. }))
            || matches!(
                cause.downcast_ref::<SurfaceError>(),
                Some(SurfaceError::Lexicon { .. })
            )
            || matches!(
                cause.downcast_ref::<HarnessError>(),
                Some(
                    HarnessError::MissingSes
                        | HarnessError::UnexpectedSes(_)
                        | HarnessError::Config(_)
                        | HarnessError::MissingApiKey(_)
                        | HarnessError::UnknownInstance(_)
                )
            );
        if invalid {
            return 1;
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
