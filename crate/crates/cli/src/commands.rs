use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use stylemeter::annotate::{check_instance_ids, load_conllu};
use stylemeter::corpus::{
    ablation_splits, filter_min_words, load_corpus, split_for_prompting, word_count, Corpus,
    CorpusFormat, Platform, PromptVariant, SplitInstance, DEFAULT_ABLATION_CUE_LENGTHS,
    DEFAULT_ABLATION_MIN_WORDS,
};
use stylemeter::features::{FeatureMatrix, GroupKey, GroupLabel, Profiler};
use stylemeter::harness::{
    completion_corpus, reference_corpus, run_experiment, CompletionClient, EchoClient,
    EndpointConfig, ExperimentConfig, ExperimentOutput, ExperimentStore, HttpClient, ShuffleClient,
};
use stylemeter::report::{
    ablation_csv, ablation_svg, build_ablation, build_comparison, build_readability,
    forest_plot_spec, forest_svg, COMPARISON_ALPHA, READABILITY_ALPHA,
};
use stylemeter::surface::ConcretenessLexicon;

use crate::config::RunConfig;
use crate::{
    AblateArgs, Cli, Command, CompareArgs, CompleteArgs, EndpointArgs, IngestArgs, Invalid,
    ProfileArgs, ReadabilityArgs,
};

const DEFAULT_CUE_WORDS: usize = 25;

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Invalid(msg.into()).into()
}

pub fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Ingest(a) => ingest(&cfg, a),
        Command::Profile(a) => profile(&cfg, a),
        Command::Compare(a) => compare(&cfg, a),
        Command::Readability(a) => readability(&cfg, a),
        Command::Complete(a) => complete(&cfg, a),
        Command::Ablate(a) => ablate(&cfg, a),
        Command::Reference => {
            print!("{}", crate::reference::markdown());
            Ok(())
        }
    }
}

fn out_dir(cfg: &RunConfig, flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| cfg.output.dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)
            .with_context(|| format!("cannot create {}", parent.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn check_alpha(alpha: f64, key: &str) -> Result<f64> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(alpha)
    } else {
        Err(invalid(format!("{key} must lie in (0, 1), got {alpha}")))
    }
}

/// Loads and concatenates the corpora named by flags, else by the config.
fn load_inputs(cfg: &RunConfig, flags: &[PathBuf]) -> Result<Corpus> {
    let paths: Vec<PathBuf> = if flags.is_empty() {
        cfg.corpus.inputs.clone().unwrap_or_default()
    } else {
        flags.to_vec()
    };
    if paths.is_empty() {
        return Err(invalid(
            "no input corpus; pass --input or set corpus.inputs",
        ));
    }
    let mut instances = Vec::new();
    let mut seen = HashSet::new();
    for path in &paths {
        let corpus = load_corpus(path, CorpusFormat::Jsonl)
            .with_context(|| format!("loading {}", path.display()))?;
        for inst in corpus.instances {
            if !seen.insert(inst.id.clone()) {
                return Err(invalid(format!(
                    "instance id {} appears in more than one input",
                    inst.id
                )));
            }
            instances.push(inst);
        }
    }
    Ok(Corpus::new(instances))
}

fn group_summary(corpus: &Corpus) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for inst in corpus {
        let key = GroupKey::of(inst);
        *out.entry(format!("{} {}", key.platform, key.label()))
            .or_insert(0) += 1;
    }
    out
}

fn ingest(cfg: &RunConfig, a: IngestArgs) -> Result<()> {
    let corpus = load_inputs(cfg, &a.inputs)?;
    let min_words = a.min_words.or(cfg.corpus.min_words).unwrap_or(0);
    let kept = filter_min_words(&corpus, min_words);
    let dir = out_dir(cfg, a.out);
    fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let path = dir.join("corpus.jsonl");
    kept.write_jsonl(&path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    println!(
        "{} of {} instances kept (min_words {min_words}) -> {}",
        kept.len(),
        corpus.len(),
        path.display()
    );
    for (group, n) in group_summary(&kept) {
        println!("  {group}: {n}");
    }
    if let Some(cue) = a.cue_words.or(cfg.corpus.cue_words) {
        let splits: Vec<SplitInstance> = kept
            .iter()
            .map(|i| split_for_prompting(i, cue))
            .collect::<Result<_, _>>()?;
        let mut text = String::new();
        for s in &splits {
            text.push_str(&serde_json::to_string(s)?);
            text.push('\n');
        }
        write(&dir.join("splits.jsonl"), &text)?;
        println!(
            "{} splits at {cue} words -> {}",
            splits.len(),
            dir.join("splits.jsonl").display()
        );
    }
    Ok(())
}

fn load_lexicon(cfg: &RunConfig, flag: Option<PathBuf>) -> Result<Option<ConcretenessLexicon>> {
    match flag.or_else(|| cfg.annotation.concreteness.clone()) {
        Some(path) => Ok(Some(ConcretenessLexicon::load(&path)?)),
        None => Ok(None),
    }
}

fn profile(cfg: &RunConfig, a: ProfileArgs) -> Result<()> {
    let corpus = load_inputs(cfg, &a.inputs)?;
    let mode = a
        .annotation
        .or_else(|| cfg.annotation.mode.clone())
        .unwrap_or_else(|| "builtin".into());
    let lexicon = load_lexicon(cfg, a.concreteness)?;
    let profiler = match &lexicon {
        Some(lex) => Profiler::new(lex),
        None => Profiler::default(),
    };
    let matrix = match mode.as_str() {
        "builtin" => profiler.profile_corpus(&corpus, None)?,
        "conllu" => {
            let path = a
                .conllu
                .or_else(|| cfg.annotation.conllu.clone())
                .ok_or_else(|| {
                    invalid("annotation mode conllu needs --conllu or annotation.conllu")
                })?;
            let docs = load_conllu(&path)?;
            check_instance_ids(&docs, &corpus)?;
            profiler.profile_corpus(&corpus, Some(&docs))?
        }
        other => {
            return Err(invalid(format!(
                "unknown annotation mode {other:?}; use builtin or conllu"
            )))
        }
    };
    let path = a
        .out
        .unwrap_or_else(|| out_dir(cfg, None).join("features.csv"));
    write(&path, &matrix.to_csv_string())?;
    println!("{} rows -> {}", matrix.len(), path.display());
    Ok(())
}

fn read_matrix(cfg: &RunConfig, flag: Option<PathBuf>) -> Result<FeatureMatrix> {
    let path = flag.unwrap_or_else(|| out_dir(cfg, None).join("features.csv"));
    let file = fs::File::open(&path).with_context(|| format!("cannot open {}", path.display()))?;
    FeatureMatrix::read_csv(file).with_context(|| format!("reading {}", path.display()))
}

fn compare(cfg: &RunConfig, a: CompareArgs) -> Result<()> {
    let alpha = check_alpha(
        a.alpha.or(cfg.compare.alpha).unwrap_or(COMPARISON_ALPHA),
        "compare.alpha",
    )?;
    let anchor_text = a
        .anchor
        .or_else(|| cfg.compare.anchor.clone())
        .unwrap_or_else(|| "lower/human".into());
    let anchor: GroupLabel = anchor_text.parse().map_err(invalid)?;
    let matrix = read_matrix(cfg, a.features)?;
    if matrix.is_empty() {
        return Err(invalid("feature matrix has no rows"));
    }
    let dir = out_dir(cfg, a.out);
    for platform in matrix.platforms() {
        let sub = matrix.for_platform(platform);
        let report = build_comparison(&sub, platform, &anchor, alpha)
            .with_context(|| format!("comparing {platform}"))?;
        let spec = forest_plot_spec(&report);
        write(
            &dir.join(format!("comparison_{platform}.csv")),
            &report.to_csv(),
        )?;
        write(
            &dir.join(format!("forest_{platform}.svg")),
            &forest_svg(&spec),
        )?;
        write(
            &dir.join(format!("forest_{platform}_omitted.csv")),
            &spec.omitted_csv(),
        )?;
        let sig = report.significant();
        println!(
            "{platform}: {} of {} features significant at alpha {alpha}",
            sig.len(),
            report.rows.len()
        );
        for f in sig {
            println!("  {f}");
        }
    }
    Ok(())
}

fn readability(cfg: &RunConfig, a: ReadabilityArgs) -> Result<()> {
    let alpha = check_alpha(
        a.alpha
            .or(cfg.readability.alpha)
            .unwrap_or(READABILITY_ALPHA),
        "readability.alpha",
    )?;
    let matrix = read_matrix(cfg, a.features)?;
    if matrix.is_empty() {
        return Err(invalid("feature matrix has no rows"));
    }
    let dir = out_dir(cfg, a.out);
    for platform in matrix.platforms() {
        let table = build_readability(&matrix.for_platform(platform), platform, alpha)?;
        write(
            &dir.join(format!("readability_{platform}.csv")),
            &table.to_csv(),
        )?;
        write(
            &dir.join(format!("readability_{platform}.txt")),
            &table.to_text(),
        )?;
        println!("{platform}\n{}", table.to_text());
    }
    Ok(())
}

fn parse_variants(
    flags: &[String],
    config: Option<&Vec<String>>,
    default: &[PromptVariant],
) -> Result<Vec<PromptVariant>> {
    let names: Vec<String> = if !flags.is_empty() {
        flags.to_vec()
    } else {
        config.cloned().unwrap_or_default()
    };
    if names.is_empty() {
        return Ok(default.to_vec());
    }
    let mut out: Vec<PromptVariant> = names
        .iter()
        .map(|n| n.trim().parse().map_err(invalid))
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn endpoint_config(cfg: &RunConfig, a: &EndpointArgs) -> EndpointConfig {
    let mut ep = cfg.endpoint.clone().unwrap_or_default().to_endpoint();
    if let Some(v) = &a.model {
        ep.model = v.clone();
    }
    if let Some(v) = &a.base_url {
        ep.base_url = v.clone();
    }
    if let Some(v) = &a.api_key_env {
        ep.api_key_env = Some(v.clone());
    }
    if let Some(v) = a.max_parallel {
        ep.max_parallel = v;
    }
    ep
}

/// The configured client, or `None` when no client was named.
fn build_client(
    cfg: &RunConfig,
    a: &EndpointArgs,
) -> Result<Option<(Box<dyn CompletionClient>, ExperimentConfig)>> {
    let Some(kind) = a.client.clone().or_else(|| cfg.completion.client.clone()) else {
        return Ok(None);
    };
    let ep = endpoint_config(cfg, a);
    if ep.max_parallel == 0 {
        return Err(invalid("max_parallel must be at least 1"));
    }
    let client: Box<dyn CompletionClient> = match kind.as_str() {
        "echo" => Box::new(EchoClient),
        "shuffle" => Box::new(ShuffleClient::new(
            a.seed.or(cfg.completion.seed).unwrap_or(0),
        )),
        "http" => Box::new(HttpClient::new(&ep)?),
        other => {
            return Err(invalid(format!(
                "unknown client {other:?}; use echo, shuffle or http"
            )))
        }
    };
    let exp = ExperimentConfig {
        max_parallel: ep.max_parallel,
        retry: ep.retry,
        strip_repeated_cue: a.strip_repeated_cue
            || cfg.completion.strip_repeated_cue.unwrap_or(false),
    };
    Ok(Some((client, exp)))
}

fn humans(corpus: &Corpus) -> Corpus {
    Corpus::new(
        corpus
            .iter()
            .filter(|i| i.author.is_human())
            .cloned()
            .collect(),
    )
}

fn report_failures(out: &ExperimentOutput, store: &ExperimentStore) -> Result<()> {
    if out.failures.is_empty() {
        return Ok(());
    }
    let first = &out.failures[0];
    bail!(
        "{} request(s) failed (first: {} {} {:?}: {}); see {}; rerun to retry them",
        out.failures.len(),
        first.instance_id,
        first.variant,
        first.class,
        first.message,
        store.failures_path().display()
    )
}

fn complete(cfg: &RunConfig, a: CompleteArgs) -> Result<()> {
    let corpus = humans(&load_inputs(cfg, &a.inputs)?);
    let cue = a
        .cue_words
        .or(cfg.corpus.cue_words)
        .unwrap_or(DEFAULT_CUE_WORDS);
    if cue == 0 {
        return Err(invalid("cue_words must be at least 1"));
    }
    let variants = parse_variants(
        &a.variants,
        cfg.completion.variants.as_ref(),
        &PromptVariant::ALL,
    )?;
    let (client, exp) = build_client(cfg, &a.endpoint)?
        .ok_or_else(|| invalid("no completion client; pass --client or set completion.client"))?;
    let kept = Corpus::new(
        corpus
            .iter()
            .filter(|i| word_count(&i.text) > cue)
            .cloned()
            .collect(),
    );
    if kept.len() < corpus.len() {
        eprintln!(
            "skipping {} instance(s) with at most {cue} words",
            corpus.len() - kept.len()
        );
    }
    let splits: Vec<SplitInstance> = kept
        .iter()
        .map(|i| split_for_prompting(i, cue))
        .collect::<Result<_, _>>()?;
    let dir = out_dir(cfg, a.out);
    let store = ExperimentStore::new(&dir);
    let out = run_experiment(
        &kept,
        &splits,
        &variants,
        client.as_ref(),
        &exp,
        Some(&store),
    )?;
    completion_corpus(&kept, &out.records)?.write_jsonl(&dir.join("completions.jsonl"))?;
    reference_corpus(&kept, &splits)?.write_jsonl(&dir.join("references.jsonl"))?;
    println!(
        "{} completions from {} ({} new requests) -> {}",
        out.records.len(),
        client.identity(),
        out.requests,
        dir.display()
    );
    report_failures(&out, &store)
}

fn ablate(cfg: &RunConfig, a: AblateArgs) -> Result<()> {
    let mut corpus = humans(&load_inputs(cfg, &a.inputs)?);
    if let Some(p) = a.platform.or_else(|| cfg.ablation.platform.clone()) {
        let platform: Platform = p.parse().map_err(invalid)?;
        corpus = Corpus::new(
            corpus
                .iter()
                .filter(|i| i.platform == platform)
                .cloned()
                .collect(),
        );
    }
    let cues: Vec<usize> = if !a.cue_lengths.is_empty() {
        a.cue_lengths.clone()
    } else {
        cfg.ablation
            .cue_lengths
            .clone()
            .unwrap_or_else(|| DEFAULT_ABLATION_CUE_LENGTHS.to_vec())
    };
    let min_words = a
        .min_words
        .or(cfg.ablation.min_words)
        .unwrap_or(DEFAULT_ABLATION_MIN_WORDS);
    let variants = parse_variants(
        &a.variants,
        cfg.ablation.variants.as_ref(),
        &[PromptVariant::ElsSes],
    )?;
    let splits = ablation_splits(&corpus, &cues, min_words)?;
    if splits.values().next().is_none_or(|s| s.is_empty()) {
        return Err(invalid(format!(
            "no instances with at least {min_words} words"
        )));
    }
    let kept = filter_min_words(&corpus, min_words);
    let client = build_client(cfg, &a.endpoint)?;
    let dir = out_dir(cfg, a.out);
    let profiler = Profiler::default();
    let mut references = BTreeMap::new();
    let mut completions = BTreeMap::new();
    let mut model = None;
    for (&cue, cue_splits) in &splits {
        let store = ExperimentStore::new(dir.join(format!("cue{cue}")));
        let records = match &client {
            Some((c, exp)) => {
                let out =
                    run_experiment(&kept, cue_splits, &variants, c.as_ref(), exp, Some(&store))?;
                report_failures(&out, &store)?;
                out.records
            }
            None => {
                if !store.records_path().exists() {
                    return Err(invalid(format!(
                        "no completions for cue length {cue} (expected {}); pass --client to generate them",
                        store.records_path().display()
                    )));
                }
                store.load_records()?
            }
        };
        let name = records
            .first()
            .map(|r| r.model.clone())
            .ok_or_else(|| invalid(format!("store for cue length {cue} is empty")))?;
        if model.get_or_insert_with(|| name.clone()) != &name {
            return Err(invalid(format!(
                "cue length {cue} holds completions from {name}, others from {}",
                model.unwrap()
            )));
        }
        references.insert(
            cue,
            profiler.profile_corpus(&reference_corpus(&kept, cue_splits)?, None)?,
        );
        completions.insert(
            cue,
            profiler.profile_corpus(&completion_corpus(&kept, &records)?, None)?,
        );
    }
    let model = model.expect("at least one cue length");
    let rows = build_ablation(&references, &completions, &model, &variants)?;
    write(&dir.join("ablation.csv"), &ablation_csv(&rows))?;
    write(
        &dir.join("ablation.svg"),
        &ablation_svg(
            &rows,
            &format!("{model}: distance to human text by cue length"),
        ),
    )?;
    for r in &rows {
        println!(
            "cue {:>3} {:<5} {:<7} {:.4}",
            r.cue_words, r.ses, r.variant, r.log_ratio
        );
    }
    Ok(())
}
