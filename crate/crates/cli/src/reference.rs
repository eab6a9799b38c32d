//! Markdown reference generated from the argument definitions.

use clap::CommandFactory;

use crate::Cli;

const CONFIG_KEYS: &str = r#"## Configuration file

Pass `--config FILE` with any subset of these keys. A flag given on the
command line overrides the matching key. Unknown keys are rejected.

```toml
[corpus]
inputs = ["corpus.jsonl"]   # used when no --input is given
min_words = 0               # ingest
cue_words = 25              # ingest, complete

[annotation]
mode = "builtin"            # builtin | conllu
conllu = "corpus.conllu"
concreteness = "norms.tsv"  # word<TAB>rating, ratings in [1, 5]

[compare]
anchor = "lower/human"      # ses/author[/variant]
alpha = 0.01                # Holm-corrected, per platform

[readability]
alpha = 0.05                # uncorrected

[completion]
client = "http"             # echo | shuffle | http
variants = ["imp", "els", "els_ses"]
seed = 0                    # shuffle client
strip_repeated_cue = false

[endpoint]
base_url = "http://localhost:8000/v1"
model = "my-model"
api_key_env = "OPENAI_API_KEY"  # name of the variable, never the key
max_parallel = 4
timeout_secs = 120
max_attempts = 5
backoff_ms = 1000
max_backoff_ms = 30000

[ablation]
cue_lengths = [20, 40, 60, 80]
min_words = 100
variants = ["els_ses"]
platform = "reddit"

[output]
dir = "out"
```

## Exit codes

| code | meaning |
|------|---------|
| 0 | success |
| 1 | invalid input, arguments or configuration |
| 2 | runtime failure: I/O, endpoint errors, failed completions |
"#;

pub fn markdown() -> String {
    let mut cmd = Cli::command();
    let mut out = String::from("# stylemeter command reference\n\n");
    out.push_str("Generated by `stylemeter reference`.\n\n");
    out.push_str(&format!("```text\n{}```\n\n", cmd.render_long_help()));
    for sub in cmd.get_subcommands_mut() {
        let name = sub.get_name().to_string();
        if name == "help" {
            continue;
        }
        let mut sub = sub.clone().bin_name(format!("stylemeter {name}"));
        out.push_str(&format!(
            "## stylemeter {name}\n\n```text\n{}```\n\n",
            sub.render_long_help()
        ));
    }
    out.push_str(CONFIG_KEYS);
    out
}
